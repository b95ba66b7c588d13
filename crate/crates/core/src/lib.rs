//! Colored permutation statistics, lattice-point slices of dilated cubes and
//! the identities connecting them.

pub mod bijections;
pub mod closedform;
pub mod error;
pub mod lattice;
pub mod permstats;
pub mod poly;
pub mod series;
pub mod suite;
pub mod table;
pub mod tableaux;
pub mod verdict;

pub use error::{Error, Result};
pub use permstats::{ColoredPermutation, Statistic};
pub use poly::{IntPolynomial, RatPolynomial};
pub use verdict::{Verdict, Witness};
