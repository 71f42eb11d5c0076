//! Ring descriptors.
//!
//! Rings are values that carry their own context (a modulus, a defining
//! polynomial, a prime) and act on plain element values. This keeps
//! elements cheap to store in polynomials and points while letting a single
//! generic routine (a resultant, a gcd, a root finder) run over every
//! coefficient domain the crate uses.

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;

pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// An integral domain with exact division.
pub trait Domain: Ring {
    /// `a / b` when `b` divides `a`, `None` otherwise (and for `b = 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

pub trait Field: Domain {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn characteristic(&self) -> u64;
}

pub trait FiniteField: Field {
    /// Number of elements.
    fn order(&self) -> u128;

    /// Degree over the prime field.
    fn degree(&self) -> u32;

    /// Canonical integer encoding, a bijection onto `0..order()`.
    fn index_of(&self, a: &Self::Elem) -> u128;

    fn from_index(&self, i: u128) -> Self::Elem;

    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let i = (u128::from(rng.next_u64()) << 64 | u128::from(rng.next_u64())) % self.order();
        self.from_index(i)
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, u128::from(self.characteristic()))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.from_index(i)))
    }
}
