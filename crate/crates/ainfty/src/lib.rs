pub mod ainf;
pub mod barcobar;
pub mod bigraded;
pub mod classical;
pub mod dgmod;
pub mod error;
pub mod ringprops;
pub mod exactla;

pub use error::{Error, Result};
