//! Version-control adapters.
//!
//! Mining, blame, and SZZ tracing are all written against the [`Vcs`] trait,
//! so another system can be slotted in behind it. Two adapters ship here:
//! [`git::GitCliRepo`] reads local Git repositories through the `git` binary,
//! and [`mem::MemRepo`] is a deterministic in-memory store used to build
//! synthetic histories.

pub mod git;
pub mod mem;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VcsError {
    #[error("repository not found at `{0}`")]
    RepoNotFound(String),
    #[error("branch `{0}` not found")]
    BranchNotFound(String),
    #[error("vcs backend error: {0}")]
    Backend(String),
}

/// Commit identity and metadata, independent of any backend.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommitMeta {
    pub hash: String,
    pub parents: Vec<String>,
    pub author_name: String,
    pub author_email: String,
    /// Author timestamp, seconds since the epoch (UTC).
    pub timestamp: i64,
    pub message: String,
}

/// How a path changed relative to the commit's first parent. Renames are
/// reported as a delete plus an add; see [`crate::mine::ChangeKind`] for the
/// record-level enum that reserves a renamed variant for richer adapters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawChangeKind {
    Added,
    Modified,
    Deleted,
}

/// Read access to one repository. All queries are immutable, so adapters are
/// safe to share across threads when `Sync`.
pub trait Vcs {
    /// First-parent linearized history of `branch`, oldest first.
    fn branch_commits(&self, branch: &str) -> Result<Vec<CommitMeta>, VcsError>;

    /// Paths changed by `commit` relative to its first parent (all paths in
    /// the tree for a root commit), in a stable order.
    fn changed_paths(&self, commit: &str) -> Result<Vec<(String, RawChangeKind)>, VcsError>;

    /// File content at `commit`, or `None` when the path does not exist there.
    fn read_file(&self, commit: &str, path: &str) -> Result<Option<Vec<u8>>, VcsError>;
}
