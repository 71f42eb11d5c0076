//! Integer `q`-series `s_r(q) = sum n^r q^n / (1 - q^n)` and the Weierstrass
//! coefficients of the Tate curve `y^2 + xy = x^3 + a4(q) x + a6(q)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `c_1 q + ... + c_N q^N`, truncated at precision `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesZ {
    coeffs: Vec<BigInt>,
}

impl PowerSeriesZ {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`, `1 <= n <= N`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.precision(), o.precision(), "series precisions differ");
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn canonical_string(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// `s_r(q)` to precision `n`, by expanding each `q^k / (1 - q^k)` as a geometric series.
pub fn sigma_series(r: u32, n: usize) -> Result<PowerSeriesZ> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidInput("sigma_series needs r >= 1 and N >= 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); n];
    for k in 1..=n {
        let w = BigInt::from(k).pow(r);
        for j in (k..=n).step_by(k) {
            coeffs[j - 1] += &w;
        }
    }
    Ok(PowerSeriesZ { coeffs })
}

/// `a4 = -5 s_3` and `a6 = -(5 s_3 + 7 s_5) / 12`, each `a6` coefficient
/// checked for exact divisibility.
pub fn tate_coefficients(n: usize) -> Result<(PowerSeriesZ, PowerSeriesZ)> {
    let s3 = sigma_series(3, n)?;
    let s5 = sigma_series(5, n)?;
    let a4 = s3.scale(-5);
    let num = s3.scale(5).add(&s5.scale(7));
    let twelve = BigInt::from(12);
    let mut coeffs = Vec::with_capacity(n);
    for (i, c) in num.coeffs.iter().enumerate() {
        let (q, r) = c.div_rem(&twelve);
        if !r.is_zero() {
            return Err(Error::IntegralityViolation(format!("a6 coefficient of q^{} is {c}/12", i + 1)));
        }
        coeffs.push(-q);
    }
    Ok((a4, PowerSeriesZ { coeffs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integers::{divisors, gcd_u128};
    use proptest::prelude::*;

    fn sigma_oracle(r: u32, n: u128) -> BigInt {
        divisors(n).into_iter().map(|d| BigInt::from(d).pow(r)).sum()
    }

    #[test]
    fn small_values() {
        let s3 = sigma_series(3, 5).unwrap();
        assert_eq!(s3.coeffs(), [1, 9, 28, 73, 126].map(BigInt::from));
        let s1 = sigma_series(1, 5).unwrap();
        assert_eq!(s1.coeffs(), [1, 3, 4, 7, 6].map(BigInt::from));
        let (a4, a6) = tate_coefficients(50).unwrap();
        assert_eq!(&a4.coeffs()[..3], [-5, -45, -140].map(BigInt::from));
        assert_eq!(a6.coeff(1), &BigInt::from(-1));
        for n in 1..=30u128 {
            assert_eq!(a4.coeff(n as usize), &(sigma_oracle(3, n) * -5));
        }
        assert!(sigma_series(0, 3).is_err());
    }

    proptest! {
        #[test]
        fn sigma_is_multiplicative(a in 1u128..40, b in 1u128..40, r in 1u32..6) {
            prop_assume!(gcd_u128(a, b) == 1);
            let s = sigma_series(r, (a * b) as usize).unwrap();
            prop_assert_eq!(s.coeff((a * b) as usize), &(s.coeff(a as usize) * s.coeff(b as usize)));
            prop_assert_eq!(s.coeff(a as usize), &sigma_oracle(r, a));
        }
    }
}
