//! Exact arithmetic: integers, rationals, finite fields, the cyclotomic
//! local ring, and univariate / ternary polynomial calculus.

pub mod abelian;
pub mod cyclotomic;
pub mod dlog;
pub mod fp;
pub mod gf;
pub mod integers;
pub mod poly;
pub mod ring;
pub mod ternary;

pub use abelian::{FiniteAbelianGroup, Qz};
pub use cyclotomic::{Cyc, CyclotomicRing};
pub use dlog::{dlog, power_residue_order};
pub use fp::PrimeField;
pub use gf::{build_ext_field, embed, restrict, ExtField, FieldDescriptor, Gf};
pub use integers::{IntegerRing, RationalField};
pub use poly::PolyRing;
pub use ring::{Domain, Field, FiniteField, Ring};
pub use ternary::{Monomial, TernaryForm};
