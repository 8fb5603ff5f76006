//! Commit-level just-in-time defect prediction for repositories that mix
//! textual code with node-and-edge visual code (Max/MSP patches).
//!
//! The pipeline mines version-control history, labels defect-inducing commits
//! with textual SZZ and SZZ-VC, extracts process/textual/visual change
//! metrics, and trains, evaluates, and ranks defect prediction models:
//!
//! - [`patch`] — Max/MSP patch parsing and graph diffing
//! - [`vcs`] — version-control adapters (git CLI, in-memory)
//! - [`mine`] — history walking, file classification, blame
//! - [`label`] — defect-fix identification and SZZ tracing
//! - [`metrics`] — the 20 commit-level features
//! - [`prep`] — time-aware split, AutoSpearman, SMOTE
//! - [`learn`] — the six classifier families
//! - [`eval`] — AUC/MCC scoring, Wilcoxon, Cliff's delta, NPSK ranking
//! - [`report`] — file-type distributions and group comparison
//! - [`pipeline`] — stage orchestration and artifact persistence

pub mod eval;
pub mod label;
pub mod learn;
pub mod metrics;
pub mod mine;
pub mod patch;
pub mod pipeline;
pub mod prep;
pub mod report;
pub mod vcs;
