//! Searches and reports built on top of the sequence families.

mod baseline;
mod pairs;
mod report;
mod search;
mod sweep;
mod targets;

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::corr::CorrError;
use crate::rsl::RslError;
use crate::sequence::SequenceError;

pub use baseline::{monte_carlo_baseline, BaselineResult};
pub use pairs::{report_pairs, PairConstruction, PairParams};
pub use report::{rows_to_csv, rows_to_json, CSV_HEADER};
pub use search::{
    best_shift_by, objective_value, pair_shift_search, pair_shift_search_with, shift_search,
    Objective, PairGrid, PairShiftSearch, ShiftSearch, MAX_SEARCH_LEN, PRODUCT_GRID_MAX_LEN,
};
pub use sweep::{convergence_sweep, parse_sizes, SweepRow};
pub use targets::{
    cubic_real_roots, cubic_root, eval_cubic, format_cubic, named_target, shipped_targets,
    AsymptoticTarget, RootSelector, TargetDefinition,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Corr(#[from] CorrError),
    #[error(transparent)]
    Rsl(#[from] RslError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

impl AnalysisError {
    /// Process exit status for this error: 3 when a claimed property failed
    /// to certify, 2 for everything rejected as invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Certification(_)
            | AnalysisError::Rsl(RslError::NotGolay | RslError::CompositionFailed) => 3,
            _ => 2,
        }
    }
}
