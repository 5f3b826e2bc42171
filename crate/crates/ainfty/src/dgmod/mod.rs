//! DG modules over truncated DG algebras, minimal semifree resolutions, Ext and RHom,
//! homology algebras and homotopy transfer.

pub mod ext;
pub mod hom;
pub mod homology;
pub mod module;
pub mod resolution;
pub mod symmetry;
pub mod transfer;

pub use resolution::{generator_spread, minimal_semifree_resolution, resolve_trivial, EpsilonCheck, GeneratorKind, LedgerEntry, SemifreeResolution, Stage};
pub use module::{DGModule, ModuleReport, Realized, SemifreeModule};
pub use ext::{ext_of_trivial_module, ExtReport};
pub use hom::{hom_complex, hom_from_semifree, rhom_from_resolution, rhom_k_A, HomComplex, RHomTable, TrustWindow};
pub use homology::{homology_algebra, ChainHomology, Class, HomologyAlgebra};
pub use transfer::{transfer_ainf, Transfer};
pub use symmetry::{rhom_k_A_any, rhom_symmetry, SymmetryReport};
