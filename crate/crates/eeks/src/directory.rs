//! Local and root key servers.
//!
//! The root node is the single source of truth: all mutations (publish,
//! revoke) execute there. Local nodes are read-through caches that pull
//! the root's state on a periodic check-in; between syncs they may serve
//! stale records, which is a documented property of the architecture, not
//! a bug. Record versions increase strictly on every mutation and
//! revocation is terminal — re-keying a revoked identity creates a new
//! version with a new key.
//!
//! Nodes are plain values: `&`/`&mut` gives the readers-writer contract,
//! and callers that share a node across threads wrap it in `RwLock`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DirectoryError {
    #[error("identity not found: {0}")]
    NotFound(String),
    #[error("identity already revoked: {0}")]
    AlreadyRevoked(String),
    #[error("identity {0} is active under a different key; revoke before re-keying")]
    ActiveKeyConflict(String),
    #[error("revoked identity {0} requires a new key")]
    RevokedIdentityRequiresNewKey(String),
    #[error("writes must go to the root node")]
    NotRoot,
    #[error("root unreachable; serving stale records")]
    RootUnreachable,
    #[error("malformed snapshot line {0}: {1}")]
    MalformedSnapshot(usize, String),
    #[error("snapshot io: {0}")]
    SnapshotIo(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    Local,
    Root,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyStatus {
    Active,
    Revoked,
}

impl fmt::Display for KeyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyStatus::Active => "active",
            KeyStatus::Revoked => "revoked",
        })
    }
}

/// One identity's published key with its version history position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyRecord {
    pub identity: String,
    pub public_key: BigUint,
    pub status: KeyStatus,
    pub version: u64,
    pub updated_at: u64,
}

/// A key server node. Locals hold a (possibly stale) copy of root state.
#[derive(Debug, Clone)]
pub struct DirectoryNode {
    pub role: NodeRole,
    store: BTreeMap<String, KeyRecord>,
    pub last_sync: u64,
    /// Set when a check-in failed and the node keeps serving stale data.
    pub degraded: bool,
}

impl DirectoryNode {
    pub fn new_root() -> Self {
        Self { role: NodeRole::Root, store: BTreeMap::new(), last_sync: 0, degraded: false }
    }

    pub fn new_local() -> Self {
        Self { role: NodeRole::Local, store: BTreeMap::new(), last_sync: 0, degraded: false }
    }

    /// Publishes `public_key` for `identity` at the root.
    ///
    /// Re-publishing the identical active key is an idempotent no-op.
    /// An active identity cannot silently switch keys, and a revoked
    /// identity can only come back with a fresh key.
    pub fn publish(
        &mut self,
        identity: &str,
        public_key: BigUint,
        now: u64,
    ) -> Result<KeyRecord, DirectoryError> {
        if self.role != NodeRole::Root {
            return Err(DirectoryError::NotRoot);
        }
        let record = match self.store.get(identity) {
            None => KeyRecord {
                identity: identity.to_string(),
                public_key,
                status: KeyStatus::Active,
                version: 1,
                updated_at: now,
            },
            Some(existing) => match existing.status {
                KeyStatus::Active if existing.public_key == public_key => existing.clone(),
                KeyStatus::Active => {
                    return Err(DirectoryError::ActiveKeyConflict(identity.to_string()))
                }
                KeyStatus::Revoked if existing.public_key == public_key => {
                    return Err(DirectoryError::RevokedIdentityRequiresNewKey(
                        identity.to_string(),
                    ))
                }
                KeyStatus::Revoked => KeyRecord {
                    identity: identity.to_string(),
                    public_key,
                    status: KeyStatus::Active,
                    version: existing.version + 1,
                    updated_at: now,
                },
            },
        };
        self.store.insert(identity.to_string(), record.clone());
        Ok(record)
    }

    /// Returns the node's current record for `identity`. Locals may serve
    /// data that is stale up to one sync interval.
    pub fn lookup(&self, identity: &str) -> Result<&KeyRecord, DirectoryError> {
        self.store
            .get(identity)
            .ok_or_else(|| DirectoryError::NotFound(identity.to_string()))
    }

    /// Marks `identity` revoked at the root. Terminal: the version is
    /// bumped and the record never returns to active.
    pub fn revoke(&mut self, identity: &str, now: u64) -> Result<KeyRecord, DirectoryError> {
        if self.role != NodeRole::Root {
            return Err(DirectoryError::NotRoot);
        }
        let record = self
            .store
            .get_mut(identity)
            .ok_or_else(|| DirectoryError::NotFound(identity.to_string()))?;
        if record.status == KeyStatus::Revoked {
            return Err(DirectoryError::AlreadyRevoked(identity.to_string()));
        }
        record.status = KeyStatus::Revoked;
        record.version += 1;
        record.updated_at = now;
        Ok(record.clone())
    }

    /// Periodic check-in: adopt every upstream record with a higher
    /// version. `None` models an unreachable root; the local flips to
    /// degraded mode and keeps serving its stale store.
    pub fn sync_from(
        &mut self,
        root: Option<&DirectoryNode>,
        now: u64,
    ) -> Result<usize, DirectoryError> {
        let Some(root) = root else {
            self.degraded = true;
            return Err(DirectoryError::RootUnreachable);
        };
        let updated = self.apply_records(root.records().cloned());
        self.last_sync = now;
        self.degraded = false;
        Ok(updated)
    }

    /// Merges records fetched over the wire; keeps the higher version.
    pub fn apply_records(&mut self, records: impl IntoIterator<Item = KeyRecord>) -> usize {
        let mut updated = 0;
        for record in records {
            let newer = self
                .store
                .get(&record.identity)
                .map_or(true, |existing| record.version > existing.version);
            if newer {
                self.store.insert(record.identity.clone(), record);
                updated += 1;
            }
        }
        updated
    }

    pub fn records(&self) -> impl Iterator<Item = &KeyRecord> {
        self.store.values()
    }

    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.is_empty()
    }

    /// Snapshot format: one record per line,
    /// `identity,hex key,status,version,timestamp`.
    pub fn snapshot_to_string(&self) -> String {
        let mut out = String::new();
        for record in self.store.values() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                record.identity,
                record.public_key.to_str_radix(16),
                record.status,
                record.version,
                record.updated_at
            ));
        }
        out
    }

    pub fn parse_snapshot(role: NodeRole, text: &str) -> Result<Self, DirectoryError> {
        let mut node = match role {
            NodeRole::Root => Self::new_root(),
            NodeRole::Local => Self::new_local(),
        };
        for (index, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| DirectoryError::MalformedSnapshot(index + 1, msg.to_string());
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 5 {
                return Err(bad("expected 5 comma-separated fields"));
            }
            let public_key = BigUint::parse_bytes(parts[1].as_bytes(), 16)
                .ok_or_else(|| bad("bad key hex"))?;
            let status = match parts[2] {
                "active" => KeyStatus::Active,
                "revoked" => KeyStatus::Revoked,
                _ => return Err(bad("bad status")),
            };
            let version = parts[3].parse().map_err(|_| bad("bad version"))?;
            let updated_at = parts[4].parse().map_err(|_| bad("bad timestamp"))?;
            node.store.insert(
                parts[0].to_string(),
                KeyRecord {
                    identity: parts[0].to_string(),
                    public_key,
                    status,
                    version,
                    updated_at,
                },
            );
        }
        Ok(node)
    }

    /// Atomic snapshot write: temp file in the same directory, then rename.
    pub fn save_snapshot(&self, path: &Path) -> Result<(), DirectoryError> {
        let io_err = |e: std::io::Error| DirectoryError::SnapshotIo(e.to_string());
        let tmp = path.with_extension("tmp");
        let mut file = std::fs::File::create(&tmp).map_err(io_err)?;
        file.write_all(self.snapshot_to_string().as_bytes()).map_err(io_err)?;
        file.sync_all().map_err(io_err)?;
        std::fs::rename(&tmp, path).map_err(io_err)
    }

    pub fn load_snapshot(role: NodeRole, path: &Path) -> Result<Self, DirectoryError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DirectoryError::SnapshotIo(e.to_string()))?;
        Self::parse_snapshot(role, &text)
    }
}
