//! Analysis of symmetric fractional factorial designs with a prime number
//! of levels.

pub mod cli;
pub mod cyclotomic;
pub mod design;
pub mod error;
pub mod fixtures;
pub mod indicator;
pub mod isomorphism;
pub mod linalg;
pub mod permutation;
pub mod regularity;

pub use cyclotomic::{CycInt, CycRational};
pub use design::{DefiningEquation, Design};
pub use error::{Error, ParseErrorKind, Result};
pub use indicator::{Gwlp, IndicatorTable};
pub use isomorphism::{is_isomorphic, IsoBudget, IsoOutcome, IsoWitness};
pub use permutation::{LevelPerm, PermPolynomial};
pub use regularity::{regularity_check, LatinSquare, RegularityReport};
