//! Schnorr signatures over a prime-order subgroup of `Z_p*`.
//!
//! The group is described by `(p, q, g)` where `p` and `q` are prime,
//! `q | p - 1`, and `g` generates the order-`q` subgroup. A long-term key
//! pair is `(x, y)` with `y = g^x mod p`.
//!
//! Signing a message `M`:
//!
//! 1. pick a fresh nonce `δ` with `1 ≤ δ < q` and compute `r = g^δ mod p`
//! 2. compute the challenge `e = h(M || r)`
//! 3. compute the response `s = (x·e + δ) mod q`
//!
//! Verification recomputes the commitment as `r' = g^s · y^(-e) mod p`
//! (the inverse taken with the extended Euclidean algorithm), derives
//! `e' = h(M || r')`, and accepts iff `e' = e`. For an honest signature
//! `r' = r` exactly, since `g^s · y^(-e) = g^(xe+δ) · g^(-xe) = g^δ`.
//!
//! `h` is pluggable through [`HashConfig`]: a SHA-256 based production
//! hash, and a tiny arithmetic test hash that keeps worked examples
//! checkable by hand. The challenge `e` is kept unreduced; only `s` is
//! reduced mod `q`.
//!
//! All functions here are pure; the caller owns the random source.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Upper bound on (p, q) candidate pairs tried by [`gen_params`].
const PARAM_SEARCH_ATTEMPTS: u64 = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchnorrError {
    #[error("invalid group parameters: {0}")]
    InvalidParams(&'static str),
    #[error("invalid key: {0}")]
    InvalidKey(&'static str),
    #[error("parameter search exhausted after {0} candidates")]
    ParameterSearchExhausted(u64),
    #[error("invalid signature encoding: {0}")]
    InvalidSignatureEncoding(String),
}

/// Group parameters `(p, q, g)` for a prime-order subgroup of `Z_p*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchnorrParams {
    /// Prime modulus.
    pub p: BigUint,
    /// Prime order of the subgroup generated by `g`; divides `p - 1`.
    pub q: BigUint,
    /// Generator of the order-`q` subgroup, `g != 1`.
    pub g: BigUint,
}

impl SchnorrParams {
    /// Builds and validates a parameter set.
    pub fn new(p: BigUint, q: BigUint, g: BigUint) -> Result<Self, SchnorrError> {
        let params = Self { p, q, g };
        params.validate()?;
        Ok(params)
    }

    /// Checks primality of `p` and `q`, `q | p - 1`, and that `g`
    /// generates a subgroup of order `q`.
    pub fn validate(&self) -> Result<(), SchnorrError> {
        if !is_probable_prime(&self.p) {
            return Err(SchnorrError::InvalidParams("p is not prime"));
        }
        if !is_probable_prime(&self.q) {
            return Err(SchnorrError::InvalidParams("q is not prime"));
        }
        let p_minus_1 = &self.p - 1u32;
        if !(&p_minus_1 % &self.q).is_zero() {
            return Err(SchnorrError::InvalidParams("q does not divide p - 1"));
        }
        if self.g <= BigUint::one() || self.g >= self.p {
            return Err(SchnorrError::InvalidParams("g out of range [2, p-1]"));
        }
        if !self.g.modpow(&self.q, &self.p).is_one() {
            return Err(SchnorrError::InvalidParams("g^q mod p != 1"));
        }
        Ok(())
    }

    /// The small hand-checkable test group (p=23, q=11, g=2).
    pub fn test_small() -> Self {
        Self {
            p: BigUint::from(23u32),
            q: BigUint::from(11u32),
            g: BigUint::from(2u32),
        }
    }

    /// Production-size group: the 2048-bit MODP group from RFC 3526
    /// (group 14). `p` is a safe prime, so `q = (p - 1) / 2` is prime and
    /// `g = 2` generates the order-`q` subgroup of quadratic residues.
    pub fn rfc3526_2048() -> Self {
        const P_HEX: &str = "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1\
                             29024E088A67CC74020BBEA63B139B22514A08798E3404DD\
                             EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245\
                             E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED\
                             EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3D\
                             C2007CB8A163BF0598DA48361C55D39A69163FA8FD24CF5F\
                             83655D23DCA3AD961C62F356208552BB9ED529077096966D\
                             670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B\
                             E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9\
                             DE2BCBF6955817183995497CEA956AE515D2261898FA0510\
                             15728E5A8AACAA68FFFFFFFFFFFFFFFF";
        let p = BigUint::parse_bytes(P_HEX.as_bytes(), 16).expect("static hex");
        let q = (&p - 1u32) >> 1;
        Self {
            p,
            q,
            g: BigUint::from(2u32),
        }
    }
}

/// Long-term key pair: secret exponent `x` and public value `y = g^x mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchnorrKeyPair {
    pub x: BigUint,
    pub y: BigUint,
}

impl SchnorrKeyPair {
    /// Derives the public key from a secret in `[1, q-1]`.
    pub fn from_secret(params: &SchnorrParams, x: BigUint) -> Result<Self, SchnorrError> {
        if x.is_zero() || x >= params.q {
            return Err(SchnorrError::InvalidKey("x out of range [1, q-1]"));
        }
        let y = params.g.modpow(&x, &params.p);
        Ok(Self { x, y })
    }
}

/// A signature pair `(e, s)`.
///
/// `e` is the unreduced challenge integer; `s` lies in `[0, q-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub e: BigUint,
    pub s: BigUint,
}

impl Signature {
    /// Canonical wire form: lowercase hex of `e`, a colon, lowercase hex
    /// of `s`, no leading zeros (zero encodes as `"0"`). Example: `7:8`.
    pub fn to_wire(&self) -> String {
        format!("{}:{}", self.e.to_str_radix(16), self.s.to_str_radix(16))
    }

    /// Parses the canonical wire form. Non-canonical input (uppercase
    /// hex, leading zeros, missing colon) is rejected.
    pub fn from_wire(text: &str) -> Result<Self, SchnorrError> {
        let bad = || SchnorrError::InvalidSignatureEncoding(text.to_string());
        let (e_hex, s_hex) = text.split_once(':').ok_or_else(bad)?;
        let e = parse_canonical_hex(e_hex).ok_or_else(bad)?;
        let s = parse_canonical_hex(s_hex).ok_or_else(bad)?;
        Ok(Self { e, s })
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_wire())
    }
}

fn parse_canonical_hex(text: &str) -> Option<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return None;
    }
    if text.len() > 1 && text.starts_with('0') {
        return None;
    }
    BigUint::parse_bytes(text.as_bytes(), 16)
}

/// Challenge hash `h(M || r)` selection.
///
/// `Production` is SHA-256 over the canonical encoding of `(M, r)`,
/// interpreted as a big-endian integer and left unreduced. `Test` is
/// `(int(M) + r) mod q` where `int(M)` reads the message bytes as a
/// big-endian integer — small enough to recompute by hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HashConfig {
    Production,
    Test,
}

impl HashConfig {
    /// Computes the challenge `e = h(M || r)`.
    pub fn challenge(&self, params: &SchnorrParams, message: &[u8], commitment: &BigUint) -> BigUint {
        match self {
            HashConfig::Production => {
                let digest = Sha256::digest(commitment_encoding(message, commitment));
                BigUint::from_bytes_be(&digest)
            }
            HashConfig::Test => {
                (BigUint::from_bytes_be(message) + commitment) % &params.q
            }
        }
    }
}

/// Canonical encoding of `M || r`: 8-byte big-endian length of `M`, then
/// `M`, then `r` as a minimal-length big-endian byte string.
fn commitment_encoding(message: &[u8], commitment: &BigUint) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + message.len() + 32);
    out.extend_from_slice(&(message.len() as u64).to_be_bytes());
    out.extend_from_slice(message);
    out.extend_from_slice(&commitment.to_bytes_be());
    out
}

/// Length-prefixed field concatenation: each field is emitted as its
/// 8-byte big-endian length followed by its bytes. This is the canonical
/// encoding used for every signed multi-field payload in the protocol.
pub fn encode_fields(fields: &[&[u8]]) -> Vec<u8> {
    let mut out = Vec::new();
    for field in fields {
        out.extend_from_slice(&(field.len() as u64).to_be_bytes());
        out.extend_from_slice(field);
    }
    out
}

/// Inverse of [`encode_fields`]; returns `None` on truncated input or
/// trailing garbage.
pub fn decode_fields(bytes: &[u8]) -> Option<Vec<Vec<u8>>> {
    let mut fields = Vec::new();
    let mut rest = bytes;
    while !rest.is_empty() {
        if rest.len() < 8 {
            return None;
        }
        let len = u64::from_be_bytes(rest[..8].try_into().unwrap()) as usize;
        rest = &rest[8..];
        if rest.len() < len {
            return None;
        }
        fields.push(rest[..len].to_vec());
        rest = &rest[len..];
    }
    Some(fields)
}

/// Generates a fresh `(p, q, g)` with `q` of `q_bits` and `p` of `p_bits`,
/// deterministically for a fixed seed.
pub fn gen_params(q_bits: u64, p_bits: u64, seed: u64) -> Result<SchnorrParams, SchnorrError> {
    if q_bits < 8 || q_bits >= p_bits {
        return Err(SchnorrError::InvalidParams("need 8 <= q_bits < p_bits"));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let width = p_bits - q_bits;
    let mut attempts = 0u64;
    while attempts < PARAM_SEARCH_ATTEMPTS {
        attempts += 1;
        let q = random_odd_with_bits(&mut rng, q_bits);
        if !is_probable_prime(&q) {
            continue;
        }
        // With q fixed, search even cofactors m so p = q*m + 1 is prime.
        let cofactor_tries = if width == 1 { 1 } else { 4096 };
        for _ in 0..cofactor_tries {
            attempts += 1;
            let cofactor = if width == 1 {
                BigUint::from(2u32)
            } else {
                let mut m = random_odd_with_bits(&mut rng, width);
                m.set_bit(0, false);
                m
            };
            let p: BigUint = &q * &cofactor + 1u32;
            if p.bits() != p_bits || !is_probable_prime(&p) {
                continue;
            }
            let exponent = (&p - 1u32) / &q;
            for h in 2u32.. {
                let g = BigUint::from(h).modpow(&exponent, &p);
                if !g.is_one() {
                    return SchnorrParams::new(p, q, g);
                }
            }
        }
    }
    Err(SchnorrError::ParameterSearchExhausted(attempts))
}

fn random_odd_with_bits(rng: &mut ChaCha20Rng, bits: u64) -> BigUint {
    let nbytes = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; nbytes];
    rng.fill_bytes(&mut buf);
    let mut n = BigUint::from_bytes_be(&buf) >> (nbytes as u64 * 8 - bits);
    n.set_bit(bits - 1, true);
    n.set_bit(0, true);
    n
}

/// Generates a key pair, rejection-sampling `x` from `[1, q-1]`.
pub fn keygen(params: &SchnorrParams, rng: &mut impl RngCore) -> SchnorrKeyPair {
    let x = sample_range(rng, &BigUint::one(), &params.q);
    let y = params.g.modpow(&x, &params.p);
    SchnorrKeyPair { x, y }
}

/// Uniform sample from `[lo, hi)` by rejection from `bits(hi)` random bits.
pub fn sample_range(rng: &mut impl RngCore, lo: &BigUint, hi: &BigUint) -> BigUint {
    assert!(lo < hi, "empty sampling range");
    let bits = hi.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let shift = nbytes as u64 * 8 - bits;
    loop {
        let mut buf = vec![0u8; nbytes];
        rng.fill_bytes(&mut buf);
        let candidate = BigUint::from_bytes_be(&buf) >> shift;
        if &candidate >= lo && &candidate < hi {
            return candidate;
        }
    }
}

/// Signs `message` under secret key `x`, drawing the nonce `δ` from `rng`.
///
/// The nonce is discarded after use; only `(e, s)` leaves this function.
pub fn sign(
    params: &SchnorrParams,
    x: &BigUint,
    message: &[u8],
    hash: HashConfig,
    rng: &mut impl RngCore,
) -> Signature {
    let nonce = sample_range(rng, &BigUint::one(), &params.q);
    sign_with_nonce(params, x, message, hash, &nonce).0
}

/// Signing with an explicit nonce, returning the commitment `r = g^δ mod p`
/// alongside the signature. Worked examples and the instrumented
/// `r' = r` check need both; production callers use [`sign`].
pub fn sign_with_nonce(
    params: &SchnorrParams,
    x: &BigUint,
    message: &[u8],
    hash: HashConfig,
    nonce: &BigUint,
) -> (Signature, BigUint) {
    assert!(!x.is_zero() && x < &params.q, "secret key out of range");
    assert!(!nonce.is_zero() && nonce < &params.q, "nonce out of range");
    let commitment = params.g.modpow(nonce, &params.p);
    let e = hash.challenge(params, message, &commitment);
    let s = (x * &e + nonce) % &params.q;
    (Signature { e, s }, commitment)
}

/// Verifies `sig` over `message` under public key `y`. All failure modes
/// (out-of-range values, non-invertible `y`, challenge mismatch) reject.
pub fn verify(
    params: &SchnorrParams,
    y: &BigUint,
    message: &[u8],
    sig: &Signature,
    hash: HashConfig,
) -> bool {
    if sig.s >= params.q {
        return false;
    }
    let Some(commitment) = recompute_commitment(params, y, sig) else {
        return false;
    };
    hash.challenge(params, message, &commitment) == sig.e
}

/// The verification commitment `r' = g^s · y^(-e) mod p`, with `y^(-e)`
/// computed as `(y^(-1))^e` via the extended Euclidean inverse.
pub fn recompute_commitment(
    params: &SchnorrParams,
    y: &BigUint,
    sig: &Signature,
) -> Option<BigUint> {
    if y.is_zero() || y >= &params.p {
        return None;
    }
    let y_inv = mod_inverse(y, &params.p)?;
    let g_s = params.g.modpow(&sig.s, &params.p);
    let y_neg_e = y_inv.modpow(&sig.e, &params.p);
    Some(g_s * y_neg_e % &params.p)
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from_biguint(Sign::Plus, a.clone());
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let quotient = &r0 / &r1;
        let r2 = &r0 - &quotient * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &quotient * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if !r0.is_one() {
        return None; // not coprime
    }
    Some(t0.mod_floor(&m).to_biguint().expect("mod_floor is non-negative"))
}

/// Miller–Rabin with a fixed base set; deterministic.
fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &b in &BASES {
        let b = BigUint::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let trailing = n_minus_1.trailing_zeros().unwrap_or(0);
    let odd_part = &n_minus_1 >> trailing;
    'bases: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&odd_part, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..trailing {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SchnorrParams {
        SchnorrParams::test_small()
    }

    #[test]
    fn small_test_group_passes_invariants() {
        // 2^11 mod 23 = 1 and 22 = 2 * 11.
        assert!(small().validate().is_ok());
    }

    #[test]
    fn trivial_generator_rejected() {
        let err = SchnorrParams::new(23u32.into(), 11u32.into(), 1u32.into()).unwrap_err();
        assert_eq!(err, SchnorrError::InvalidParams("g out of range [2, p-1]"));
    }

    #[test]
    fn composite_modulus_rejected() {
        let err = SchnorrParams::new(24u32.into(), 11u32.into(), 2u32.into()).unwrap_err();
        assert_eq!(err, SchnorrError::InvalidParams("p is not prime"));
    }

    #[test]
    fn keygen_worked_example() {
        // x = 7 gives y = 2^7 mod 23 = 13.
        let pair = SchnorrKeyPair::from_secret(&small(), 7u32.into()).unwrap();
        assert_eq!(pair.y, BigUint::from(13u32));
    }

    #[test]
    fn exponent_one_gives_generator() {
        let pair = SchnorrKeyPair::from_secret(&small(), 1u32.into()).unwrap();
        assert_eq!(pair.y, small().g);
    }

    #[test]
    fn keypair_invariants_across_seeds() {
        let params = small();
        for seed in 0..1000u64 {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let pair = keygen(&params, &mut rng);
            assert!(!pair.x.is_zero() && pair.x < params.q);
            assert_eq!(params.g.modpow(&pair.x, &params.p), pair.y);
        }
    }

    #[test]
    fn signing_worked_example() {
        // x = 7, M = 0x41, δ = 3: r = 8, e = (65 + 8) mod 11 = 7,
        // s = (7*7 + 3) mod 11 = 8.
        let params = small();
        let (sig, r) = sign_with_nonce(
            &params,
            &7u32.into(),
            &[0x41],
            HashConfig::Test,
            &3u32.into(),
        );
        assert_eq!(r, BigUint::from(8u32));
        assert_eq!(sig, Signature { e: 7u32.into(), s: 8u32.into() });
    }

    #[test]
    fn nonce_one_commits_to_generator() {
        let params = small();
        let (_, r) = sign_with_nonce(&params, &7u32.into(), b"m", HashConfig::Test, &1u32.into());
        assert_eq!(r, params.g);
    }

    #[test]
    fn verification_worked_example() {
        // r' = 2^8 * 13^(-7) mod 23 = 3 * 18 = 8, e' = 7: accept.
        let params = small();
        let sig = Signature { e: 7u32.into(), s: 8u32.into() };
        let r_prime = recompute_commitment(&params, &13u32.into(), &sig).unwrap();
        assert_eq!(r_prime, BigUint::from(8u32));
        assert!(verify(&params, &13u32.into(), &[0x41], &sig, HashConfig::Test));
    }

    #[test]
    fn tampered_response_rejected() {
        // s = 9 gives r' = 6 * 18 mod 23 = 16 and e' = 81 mod 11 = 4 != 7.
        let params = small();
        let sig = Signature { e: 7u32.into(), s: 9u32.into() };
        let r_prime = recompute_commitment(&params, &13u32.into(), &sig).unwrap();
        assert_eq!(r_prime, BigUint::from(16u32));
        assert!(!verify(&params, &13u32.into(), &[0x41], &sig, HashConfig::Test));
    }

    #[test]
    fn out_of_range_response_rejected_not_error() {
        let params = small();
        let sig = Signature { e: 7u32.into(), s: 11u32.into() };
        assert!(!verify(&params, &13u32.into(), &[0x41], &sig, HashConfig::Test));
    }

    #[test]
    fn wrong_public_key_rejected() {
        let params = small();
        let signer = SchnorrKeyPair::from_secret(&params, 7u32.into()).unwrap();
        let other = SchnorrKeyPair::from_secret(&params, 4u32.into()).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        for i in 0..100u32 {
            let msg = format!("message-{i}");
            let sig = sign(&params, &signer.x, msg.as_bytes(), HashConfig::Test, &mut rng);
            assert!(verify(&params, &signer.y, msg.as_bytes(), &sig, HashConfig::Test));
            assert!(!verify(&params, &other.y, msg.as_bytes(), &sig, HashConfig::Test));
        }
    }

    #[test]
    fn signatures_are_deterministic_per_seed() {
        let params = small();
        let sign_with_seed = |seed| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            sign(&params, &7u32.into(), b"determinism", HashConfig::Test, &mut rng)
        };
        assert_eq!(sign_with_seed(5), sign_with_seed(5));
        assert_ne!(sign_with_seed(5), sign_with_seed(6));
    }

    #[test]
    fn response_collisions_bounded_across_nonces() {
        // Enumerate every nonce pair for a fixed (x, M); distinct nonces
        // must give distinct s with probability >= 1 - 1/q.
        let params = small();
        let x = BigUint::from(7u32);
        let responses: Vec<BigUint> = (1u32..11)
            .map(|d| sign_with_nonce(&params, &x, &[0x41], HashConfig::Test, &d.into()).0.s)
            .collect();
        let mut pairs = 0u32;
        let mut collisions = 0u32;
        for i in 0..responses.len() {
            for j in i + 1..responses.len() {
                pairs += 1;
                if responses[i] == responses[j] {
                    collisions += 1;
                }
            }
        }
        assert!(f64::from(collisions) / f64::from(pairs) <= 1.0 / 11.0);
    }

    #[test]
    fn wire_roundtrip_and_canonical_form() {
        let sig = Signature { e: 7u32.into(), s: 8u32.into() };
        assert_eq!(sig.to_wire(), "7:8");
        assert_eq!(Signature::from_wire("7:8").unwrap(), sig);
        let zero = Signature { e: BigUint::zero(), s: BigUint::zero() };
        assert_eq!(zero.to_wire(), "0:0");
        for bad in ["", "7", "7:", ":8", "07:8", "7:B", "7:8:9", "7 :8"] {
            assert!(Signature::from_wire(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn field_encoding_roundtrip() {
        let fields: &[&[u8]] = &[b"alpha", b"", b"\x00\xff"];
        let encoded = encode_fields(fields);
        let decoded = decode_fields(&encoded).unwrap();
        assert_eq!(decoded, fields.iter().map(|f| f.to_vec()).collect::<Vec<_>>());
        assert!(decode_fields(&encoded[..encoded.len() - 1]).is_none());
    }

    #[test]
    fn gen_params_is_deterministic_and_valid() {
        let a = gen_params(12, 28, 77).unwrap();
        let b = gen_params(12, 28, 77).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().is_ok());
        assert_eq!(a.q.bits(), 12);
        assert_eq!(a.p.bits(), 28);
        assert_ne!(a, gen_params(12, 28, 78).unwrap());
    }

    #[test]
    fn gen_params_rejects_bad_sizes() {
        assert!(gen_params(7, 32, 1).is_err());
        assert!(gen_params(32, 32, 1).is_err());
    }

    #[test]
    fn production_group_passes_invariants() {
        let params = SchnorrParams::rfc3526_2048();
        assert!(params.validate().is_ok());
        assert_eq!(params.p.bits(), 2048);
        assert!(params.q.bits() >= 256);
    }

    #[test]
    fn bit_flips_reject_under_production_hash() {
        let params = small();
        let pair = SchnorrKeyPair::from_secret(&params, 7u32.into()).unwrap();
        let message = b"a message carried end to end".to_vec();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let sig = sign(&params, &pair.x, &message, HashConfig::Production, &mut rng);
        assert!(verify(&params, &pair.y, &message, &sig, HashConfig::Production));

        let mut flips = 0;
        for bit in 0..message.len() * 8 {
            let mut tampered = message.clone();
            tampered[bit / 8] ^= 1 << (bit % 8);
            assert!(!verify(&params, &pair.y, &tampered, &sig, HashConfig::Production));
            flips += 1;
        }
        for bit in 0..sig.e.bits() {
            let mut e = sig.e.clone();
            e.set_bit(bit, !e.bit(bit));
            let tampered = Signature { e, s: sig.s.clone() };
            assert!(!verify(&params, &pair.y, &message, &tampered, HashConfig::Production));
            flips += 1;
        }
        for bit in 0..4 {
            let mut s = sig.s.clone();
            s.set_bit(bit, !s.bit(bit));
            let tampered = Signature { e: sig.e.clone(), s };
            if tampered.s == sig.s {
                continue;
            }
            assert!(!verify(&params, &pair.y, &message, &tampered, HashConfig::Production));
            flips += 1;
        }
        assert!(flips >= 256);
    }

    #[test]
    fn mod_inverse_matches_small_cases() {
        let inv = mod_inverse(&13u32.into(), &23u32.into()).unwrap();
        assert_eq!(inv, BigUint::from(16u32));
        assert!(mod_inverse(&6u32.into(), &9u32.into()).is_none());
    }
}
