//! Frobenius and Artin-Schelter decisions on finite data, and the AS-regularity test
//! through the Ext-algebra.

pub mod frobenius;
pub mod regular;
pub mod verdict;

pub use frobenius::{is_frobenius, FrobeniusReport};
pub use regular::{as_condition, as_condition_left, as_regular_pipeline, Finiteness, PipelineOptions, PipelineReport, Regularity};
pub use verdict::{Outcome, Verdict};
