//! Exact computations for Kac–Moody root data: roots and multiplicities,
//! Weyl group combinatorics, truncated character series, Hall–Littlewood
//! functions and Satake transforms.

pub mod characters;
pub mod cli;
pub mod datum;
pub mod error;
pub mod gcm;
pub mod hall_littlewood;
pub mod linalg;
pub mod poly;
pub mod roots;
pub mod satake;
pub mod selftest;
pub mod series;
pub mod weyl;

pub use datum::{DatumSpec, RootDatum};
pub use error::{Error, Result};
pub use gcm::{classify, symmetrize, validate_gcm, GcmClass, GeneralizedCartanMatrix, Symmetrizer};
pub use poly::TPoly;
