//! In-memory repository with deterministic hashes.
//!
//! Commits are appended through [`MemRepo::commit`]; each stores a full tree
//! snapshot, so reads need no replay. Fixture generators lean on this to
//! plant histories with known ground truth, and it doubles as the reference
//! adapter for the [`Vcs`] boundary.

use std::collections::BTreeMap;

use super::{CommitMeta, RawChangeKind, Vcs, VcsError};

#[derive(Debug, Clone)]
struct MemCommit {
    meta: CommitMeta,
    /// path -> blob index into `MemRepo::blobs`.
    snapshot: BTreeMap<String, usize>,
    changes: Vec<(String, RawChangeKind)>,
}

/// A single-branch in-memory repository.
#[derive(Debug, Clone, Default)]
pub struct MemRepo {
    branch: String,
    commits: Vec<MemCommit>,
    blobs: Vec<Vec<u8>>,
}

impl MemRepo {
    pub fn new() -> Self {
        Self::with_branch("main")
    }

    pub fn with_branch(branch: &str) -> Self {
        Self {
            branch: branch.to_string(),
            commits: Vec::new(),
            blobs: Vec::new(),
        }
    }

    /// Appends a commit writing `writes` and removing `deletes`, returning
    /// its hash. Writing identical content is not a change, mirroring
    /// snapshot-based systems.
    pub fn commit(
        &mut self,
        author: &str,
        email: &str,
        timestamp: i64,
        message: &str,
        writes: &[(&str, &[u8])],
        deletes: &[&str],
    ) -> String {
        let mut snapshot = self
            .commits
            .last()
            .map(|c| c.snapshot.clone())
            .unwrap_or_default();
        let mut changes = Vec::new();

        for (path, content) in writes {
            let existing = snapshot.get(*path).map(|&i| self.blobs[i].as_slice());
            let kind = match existing {
                None => RawChangeKind::Added,
                Some(old) if old == *content => continue,
                Some(_) => RawChangeKind::Modified,
            };
            self.blobs.push(content.to_vec());
            snapshot.insert(path.to_string(), self.blobs.len() - 1);
            changes.push((path.to_string(), kind));
        }
        for path in deletes {
            if snapshot.remove(*path).is_some() {
                changes.push((path.to_string(), RawChangeKind::Deleted));
            }
        }
        changes.sort_by(|a, b| a.0.cmp(&b.0));

        let hash = format!("c{:04}", self.commits.len());
        let parents = self
            .commits
            .last()
            .map(|c| vec![c.meta.hash.clone()])
            .unwrap_or_default();
        self.commits.push(MemCommit {
            meta: CommitMeta {
                hash: hash.clone(),
                parents,
                author_name: author.to_string(),
                author_email: email.to_string(),
                timestamp,
                message: message.to_string(),
            },
            snapshot,
            changes,
        });
        hash
    }

    fn find(&self, commit: &str) -> Result<&MemCommit, VcsError> {
        self.commits
            .iter()
            .find(|c| c.meta.hash == commit)
            .ok_or_else(|| VcsError::Backend(format!("unknown commit `{commit}`")))
    }
}

impl Vcs for MemRepo {
    fn branch_commits(&self, branch: &str) -> Result<Vec<CommitMeta>, VcsError> {
        if branch != self.branch && branch != "HEAD" {
            return Err(VcsError::BranchNotFound(branch.to_string()));
        }
        Ok(self.commits.iter().map(|c| c.meta.clone()).collect())
    }

    fn changed_paths(&self, commit: &str) -> Result<Vec<(String, RawChangeKind)>, VcsError> {
        Ok(self.find(commit)?.changes.clone())
    }

    fn read_file(&self, commit: &str, path: &str) -> Result<Option<Vec<u8>>, VcsError> {
        let commit = self.find(commit)?;
        Ok(commit
            .snapshot
            .get(path)
            .map(|&i| self.blobs[i].clone()))
    }
}
