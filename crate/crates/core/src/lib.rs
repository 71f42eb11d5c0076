//! Exact computations with Brauer classes on curves over finite and `p`-adic
//! fields: residues and local invariants of symbol algebras, smoothness and
//! intersection certificates for plane curves, elliptic-curve divisors,
//! truncated-exponential lifting identities, and Tate-curve torsion.

pub mod algebra;
pub mod brauer;
pub mod certify;
pub mod curves;
pub mod error;
pub mod ss_lift;
pub mod tate;

pub use error::{Error, Result};
