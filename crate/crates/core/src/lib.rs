//! Factorisations of distributive laws between tensoring (co)monads on
//! finite-dimensional vector spaces, the duplicial objects they act on, and
//! the Hochschild and cyclic homology of those objects, all with exact
//! arithmetic.

pub mod admissible;
pub mod algcore;
pub mod bimodreal;
pub mod distfact;
pub mod duplicial;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod funcat;
pub mod homology;
pub mod report;

pub use error::{Error, Result, Witness};
pub use report::{AxiomCheck, Report};
