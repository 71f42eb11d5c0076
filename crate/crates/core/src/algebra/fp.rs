//! Prime fields `F_p` with word-size elements.

use crate::error::{Error, Result};

use super::integers::{is_prime, mul_mod, pow_mod};
use super::ring::{Domain, Field, FiniteField, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_i128(&self, n: i128) -> u64 {
        n.rem_euclid(i128::from(self.p)) as u64
    }

    /// Lift to the symmetric range `(-p/2, p/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }

    /// Square root by exhaustive Tonelli-Shanks.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if pow_mod(a, u128::from((p - 1) / 2), p) != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p)
            .find(|&z| pow_mod(z, u128::from((p - 1) / 2), p) == p - 1)
            .expect("non-residue exists");
        let mut m = s;
        let mut c = pow_mod(z, u128::from(q), p);
        let mut t = pow_mod(a, u128::from(q), p);
        let mut r = pow_mod(a, u128::from((q + 1) / 2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1u128 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(r)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = u128::from(*a) + u128::from(*b);
        (s % u128::from(self.p)) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.from_i128(i128::from(n))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn pow(&self, a: &u64, e: u128) -> u64 {
        pow_mod(*a, e, self.p)
    }
}

impl Domain for PrimeField {
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, u128::from(self.p - 2), self.p))
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u128 {
        u128::from(self.p)
    }
    fn degree(&self) -> u32 {
        1
    }
    fn index_of(&self, a: &u64) -> u128 {
        u128::from(*a)
    }
    fn from_index(&self, i: u128) -> u64 {
        (i % u128::from(self.p)) as u64
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite() {
        assert_eq!(PrimeField::new(21), Err(Error::InvalidPrime(21)));
    }

    #[test]
    fn big_prime_arithmetic() {
        let f = PrimeField::new(447_692_787_897_013).unwrap();
        let a = 123_456_789_012_345;
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), 1);
        assert_eq!(f.add(&f.neg(&a), &a), 0);
    }

    #[test]
    fn square_roots() {
        let f = PrimeField::new(97).unwrap();
        for a in 1..97u64 {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(&r, &r), a);
            }
        }
        assert!(PrimeField::new(7).unwrap().sqrt(6).is_none());
    }
}
