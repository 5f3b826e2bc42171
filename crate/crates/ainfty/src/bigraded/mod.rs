//! Bigraded spaces, homogeneous maps, shifts, duals, tensors and homology.

pub mod bidegree;
pub mod homology;
pub mod space;

pub use bidegree::{even, koszul_sign, Bidegree};
pub use homology::{homology, Homology, HomologyBlock};
pub use space::{dual_label, tensor_differential, BigradedSpace, GradedMap};
