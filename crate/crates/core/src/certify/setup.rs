//! Integer data of the worked pair of cubics: the elimination resultant in
//! `y` and its separability modulo primes.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::fp::PrimeField;
use crate::algebra::integers::{is_prime, reduce_big, IntegerRing};
use crate::algebra::poly::PolyRing;
use crate::algebra::ring::Ring;
use crate::algebra::ternary::TernaryForm;
use crate::error::{Error, Result};

pub type IntTerms = [([u32; 3], i64)];

/// `y^2 z + y z^2 - x^3 - x^2 z + 7 x z^2 - 5 z^3`.
pub const EXAMPLE_F1: [([u32; 3], i64); 6] =
    [([0, 2, 1], 1), ([0, 1, 2], 1), ([3, 0, 0], -1), ([2, 0, 1], -1), ([1, 0, 2], 7), ([0, 0, 3], -5)];
/// `x^2 z - y^3 + 26 z^3`.
pub const EXAMPLE_F2: [([u32; 3], i64); 3] = [([2, 0, 1], 1), ([0, 3, 0], -1), ([0, 0, 3], 26)];
pub const EXAMPLE_P0: [i64; 3] = [-1, 3, 1];
pub const EXAMPLE_P1: [i64; 3] = [1, 0, 1];

/// The degree-9 resultant with the root `y = 3` split off: the stated value
/// is `(y - 3)` times this octic, coefficients from the constant term up.
pub const STATED_OCTIC: [i64; 9] = [9585, 3209, 1084, -587, -196, -66, 9, 3, 1];

/// Primes at which the resultant is expected to be inseparable.
pub const STATED_EXCLUSIONS: [u64; 6] = [2, 3, 37, 97, 29723, 447692787897013];
pub const EXTRA_TEST_PRIMES: [u64; 2] = [29723, 447692787897013];

pub fn int_form(d: u32, terms: &IntTerms) -> Result<TernaryForm<BigInt>> {
    TernaryForm::from_terms(&IntegerRing, d, terms.iter().map(|(m, c)| (*m, BigInt::from(*c))))
}

pub fn example_forms() -> (TernaryForm<BigInt>, TernaryForm<BigInt>) {
    (int_form(3, &EXAMPLE_F1).expect("cubic"), int_form(3, &EXAMPLE_F2).expect("cubic"))
}

/// `Res_x(F1(x, y, 1), F2(x, y, 1))` as a polynomial in `y` over `Z`.
pub fn elimination_resultant(f1: &TernaryForm<BigInt>, f2: &TernaryForm<BigInt>) -> Result<Vec<BigInt>> {
    let zy = PolyRing::new(IntegerRing);
    let zyx = PolyRing::new(zy.clone());
    let a = zyx.from_coeffs(f1.to_x_over_y(&IntegerRing));
    let b = zyx.from_coeffs(f2.to_x_over_y(&IntegerRing));
    Ok(zy.trim(zyx.resultant(&a, &b)?))
}

pub fn stated_product() -> Vec<BigInt> {
    let zy = PolyRing::new(IntegerRing);
    let linear = vec![BigInt::from(-3), BigInt::from(1)];
    let octic: Vec<BigInt> = STATED_OCTIC.iter().map(|c| BigInt::from(*c)).collect();
    zy.mul(&linear, &octic)
}

pub fn eval_int(f: &[BigInt], y: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

/// Separable over `F_p`, with no drop in degree.
pub fn separable_mod(f: &[BigInt], p: u64) -> Result<bool> {
    let fp = PrimeField::new(p)?;
    let pr = PolyRing::new(fp);
    let red = pr.from_coeffs(f.iter().map(|c| reduce_big(c, p)).collect());
    if red.len() != f.len() {
        return Ok(false);
    }
    Ok(pr.is_separable(&red))
}

#[derive(Clone, Debug)]
pub struct SeparabilityScan {
    pub tested: usize,
    pub inseparable: Vec<u64>,
}

impl SeparabilityScan {
    pub fn to_json(&self) -> Value {
        json!({ "primes_tested": self.tested, "inseparable_at": self.inseparable })
    }
}

/// Primes below `bound` together with `extra`, in increasing order.
pub fn test_primes(bound: u64, extra: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = (2..bound).filter(|n| is_prime(*n)).collect();
    out.extend(extra.iter().copied().filter(|p| *p >= bound));
    out.sort_unstable();
    out.dedup();
    out
}

pub fn separability_scan(f: &[BigInt], primes: &[u64]) -> Result<SeparabilityScan> {
    let mut inseparable = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if !separable_mod(f, p)? {
            inseparable.push(p);
        }
    }
    Ok(SeparabilityScan { tested: primes.len(), inseparable })
}

pub fn poly_strings(f: &[BigInt]) -> Vec<String> {
    f.iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integers::RationalField;
    use num_rational::BigRational;

    fn int_poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|c| BigInt::from(*c)).collect()
    }

    #[test]
    fn resultant_against_pointwise_determinants() {
        let (f1, f2) = example_forms();
        let res = elimination_resultant(&f1, &f2).unwrap();
        assert_eq!(res.len(), 10);
        // Oracle: specialize y first, then a Euclidean resultant over Q.
        let q = PolyRing::new(RationalField);
        for y in -6i64..=6 {
            let yb = BigInt::from(y);
            let spec = |f: &TernaryForm<BigInt>| -> Vec<BigRational> {
                q.from_coeffs(f.to_x_over_y(&IntegerRing).iter().map(|c| BigRational::from_integer(eval_int(c, &yb))).collect())
            };
            let direct = q.resultant_euclid(&spec(&f1), &spec(&f2)).unwrap();
            assert_eq!(BigRational::from_integer(eval_int(&res, &yb)), direct, "y = {y}");
        }
        assert_eq!(res.iter().map(|c| -c).collect::<Vec<_>>(), stated_product());
        // y = 3 is the y-coordinate of the common point (-1 : 3 : 1).
        assert!(eval_int(&res, &BigInt::from(3)).is_zero());
    }

    #[test]
    fn separability_mod_small_primes() {
        let f = int_poly(&[1, 0, 1]);
        assert!(!separable_mod(&f, 2).unwrap());
        assert!(separable_mod(&f, 3).unwrap());
        // leading coefficient vanishing mod p counts as inseparable
        assert!(!separable_mod(&int_poly(&[1, 1, 5]), 5).unwrap());
        assert_eq!(test_primes(12, &[29723]), vec![2, 3, 5, 7, 11, 29723]);
    }
}
