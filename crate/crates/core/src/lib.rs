//! Optimal subgroup discovery for numeric target variables.
//!
//! The crate finds conjunctive descriptions of data subsets whose target
//! values are high and coherent. Objectives combine coverage, the shift of the
//! median and a correction for the dispersion around the median; a best-first
//! branch-and-bound search over closed conjunctions is driven by tight
//! optimistic estimators, including a linear-time estimator for
//! dispersion-corrected objectives.
//!
//! ```
//! use subdisc::prelude::*;
//!
//! let table = DataTable::new(
//!     "y",
//!     vec![1.0, 2.0, 3.0, 4.0],
//!     vec![Attribute {
//!         name: "x".into(),
//!         column: AttributeColumn::Numeric(vec![Some(1.0), Some(2.0), Some(3.0), Some(4.0)]),
//!     }],
//! )?;
//! let pool = build_propositions(&table, 1, Binning::EqualFrequency)?;
//! let objective = Objective::new(ObjectiveKind::DccMds, GlobalStats::from_targets(table.target())?)?;
//! let (results, trace) = run_search(&table, &pool, &objective, SearchConfig::default())?;
//! assert_eq!(results[0].description, "x >= 3");
//! assert!(trace.complete);
//! # Ok::<(), subdisc::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod evalstats;
pub mod fixtures;
pub mod lang;
mod numeric;
pub mod objectives;
pub mod report;
pub mod rowset;
pub mod search;
pub mod selfcheck;
pub mod stats;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bounds::{
        brute_force_estimate, median_sequence_estimate_general, median_sequence_estimate_linear,
        top_sequence_estimate, EstimatorKind,
    };
    pub use crate::dataset::{
        build_propositions, load_csv, Attribute, AttributeColumn, Binning, DataTable, KindHint,
        PropositionPool,
    };
    pub use crate::error::{Error, Result};
    pub use crate::evalstats::{chebyshev_epsilon, lcb_score, GlobalLcb, SubgroupReport};
    pub use crate::lang::{closure, refine_ccj, refine_cnj, Conjunction};
    pub use crate::objectives::{GlobalStats, Objective, ObjectiveKind};
    pub use crate::rowset::RowSet;
    pub use crate::search::{run_search, snapshot, Language, Search, SearchConfig};
    pub use crate::stats::{build_sorted, SortedTargets};
}
