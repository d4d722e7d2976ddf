//! Bigraded cohomology and Hodge filtration of complements of complex
//! coordinate subspace arrangements, with explicit cycle resolvents,
//! logarithmic Čech cocycles and the resulting Cauchy-type integral kernels.

pub mod cech;
pub mod cellular;
pub mod checks;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod resolvent;
pub mod rk;
pub mod table;

pub use complex::{parse_complex, FaceSet, SimplicialComplex};
pub use error::{Error, Result};
pub use linalg::Coefficients;
pub use table::BigradedTable;
