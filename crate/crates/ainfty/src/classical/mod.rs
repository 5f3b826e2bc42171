//! Classical Koszul duality for algebras generated in one bidegree, and the grading twist.

pub mod quadratic;
pub mod twist;

pub use quadratic::{
    indecomposables, is_koszul, is_koszul_presentation, on_koszul_diagonal, quadratic_dual, quadratic_part, KoszulReport, KoszulVerdict,
    QuadraticPresentation,
};
pub use twist::{grading_twist, twist_degree, twist_module};
