//! Binary extended double shuffle systems and their elimination over GF(2).
//!
//! The crate builds, for a weight `k`, the mod-2 reduction of the extended
//! double shuffle relations among multiple zeta symbols, eliminates the
//! resulting sparse system with a conflict-driven forward elimination, and
//! reads dimensions, relation bases and reduced forms off the pivot sequence.

pub mod algebra;
pub mod analysis;
pub mod config;
pub mod elimination;
pub mod error;
pub mod index;
pub mod relations;
pub mod system;

pub use error::{Error, Result};
pub use index::{ColumnTable, MultIndex, Word};
pub use relations::{Family, PairFamily};
pub use system::{Gf2Combination, LinearSystem, Row};
