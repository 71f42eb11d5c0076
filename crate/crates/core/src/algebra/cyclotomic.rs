//! The local ring `Z_(p)[zeta]` for a primitive `p^2`-th root of unity `zeta`.
//!
//! Elements are `(a_0 + a_1 X + ... + a_{N-1} X^{N-1}) / den` with
//! `N = p(p-1)`, integer numerators, and a positive denominator prime to `p`,
//! reduced modulo `Phi_{p^2}(X) = 1 + X^p + ... + X^{(p-1)p}`. The
//! representation is kept in lowest terms, so `p`-integrality is exactly the
//! condition `p ∤ den`, which is checked after every operation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integers::{reduce_big, valuation_big, RationalField};
use super::poly::PolyRing;
use super::ring::{Domain, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Canonical text form `a_0,a_1,...,a_{N-1}/den`, used for fingerprints.
    pub fn canonical_string(&self) -> String {
        let nums: Vec<String> = self.num.iter().map(|c| c.to_string()).collect();
        format!("{}/{}", nums.join(","), self.den)
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*z^{i}") })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "({body})")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicRing {
    p: u64,
    n: usize,
}

impl CyclotomicRing {
    pub fn new(p: u64) -> Self {
        assert!(super::integers::is_prime(p), "cyclotomic ring needs a prime");
        Self { p, n: (p * (p - 1)) as usize }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Dimension `p(p-1)` of the power basis.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// The chosen primitive `p^2`-th root of unity.
    pub fn zeta2(&self) -> Cyc {
        let mut num = vec![BigInt::zero(); self.n];
        num[1] = BigInt::one();
        Cyc { num, den: BigInt::one() }
    }

    pub fn from_bigint(&self, c: BigInt) -> Cyc {
        let mut num = vec![BigInt::zero(); self.n];
        num[0] = c;
        Cyc { num, den: BigInt::one() }
    }

    /// A rational with denominator prime to `p`; `None` otherwise.
    pub fn from_rational(&self, q: &BigRational) -> Option<Cyc> {
        let mut num = vec![BigInt::zero(); self.n];
        num[0] = q.numer().clone();
        self.make(num, q.denom().clone())
    }

    fn make(&self, mut num: Vec<BigInt>, mut den: BigInt) -> Option<Cyc> {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        if (&den % BigInt::from(self.p)).is_zero() {
            return None;
        }
        Some(Cyc { num, den })
    }

    fn normalize(&self, num: Vec<BigInt>, den: BigInt) -> Cyc {
        self.make(num, den)
            .unwrap_or_else(|| panic!("integrality violation: ring operation produced a p-adic denominator"))
    }

    /// Reduce a numerator polynomial of any length modulo `Phi_{p^2}`.
    fn reduce_poly(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n;
        let p = self.p as usize;
        for k in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            // X^k = X^{k-n} X^n and X^n = -(1 + X^p + ... + X^{(p-2)p})
            for i in 0..p - 1 {
                v[k - n + i * p] -= &c;
            }
        }
        v.truncate(n);
        v.resize(n, BigInt::zero());
        v
    }

    /// Element from a numerator polynomial (any degree) over a common denominator.
    pub fn from_poly(&self, num: Vec<BigInt>, den: BigInt) -> Option<Cyc> {
        let r = self.reduce_poly(num);
        self.make(r, den)
    }

    fn to_rational_poly(&self, a: &Cyc) -> Vec<BigRational> {
        let qp = PolyRing::new(RationalField);
        qp.from_coeffs(a.num.iter().map(|c| BigRational::new(c.clone(), a.den.clone())).collect())
    }

    fn phi(&self) -> Vec<BigRational> {
        let p = self.p as usize;
        let mut v = vec![BigRational::zero(); self.n + 1];
        for i in 0..p {
            v[i * p] = BigRational::one();
        }
        v
    }

    /// Inverse over `Q(zeta)` as (numerators, common denominator), not yet
    /// checked for integrality.
    fn inv_over_q(&self, a: &Cyc) -> Option<(Vec<BigInt>, BigInt)> {
        let qp = PolyRing::new(RationalField);
        let s = qp.inv_mod(&self.to_rational_poly(a), &self.phi())?;
        let den = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = s.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(self.n, BigInt::zero());
        Some((num, den))
    }

    /// Inverse, or `None` for non-units of the local ring.
    pub fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if self.is_zero(a) {
            return None;
        }
        let (num, den) = self.inv_over_q(a)?;
        self.make(num, den)
    }

    /// `x / b` for every `x`, sharing one inversion of `b`; `None` if some
    /// quotient is not `p`-integral.
    pub fn div_exact_all(&self, xs: &[Cyc], b: &Cyc) -> Option<Vec<Cyc>> {
        if self.is_zero(b) {
            return None;
        }
        if b.num[1..].iter().all(Zero::is_zero) {
            return xs.iter().map(|a| self.div_exact(a, b)).collect();
        }
        let inv = self.inv_over_q(b)?;
        let mut out = Vec::with_capacity(xs.len());
        for a in xs {
            let mut prod = vec![BigInt::zero(); 2 * self.n - 1];
            for (i, x) in a.num.iter().enumerate() {
                for (j, y) in inv.0.iter().enumerate() {
                    if !x.is_zero() && !y.is_zero() {
                        prod[i + j] += x * y;
                    }
                }
            }
            let r = self.reduce_poly(prod);
            out.push(self.make(r, &a.den * &inv.1)?);
        }
        Some(out)
    }

    /// Image in the residue field `F_p` (reduction modulo `lambda_2`, where `zeta -> 1`).
    pub fn residue(&self, a: &Cyc) -> u64 {
        let s: BigInt = a.num.iter().sum();
        let fp = super::fp::PrimeField::new(self.p).expect("prime");
        fp.div(&reduce_big(&s, self.p), &reduce_big(&a.den, self.p)).expect("p-unit denominator")
    }

    /// Norm to `Q`, up to the unit `den^{-N}` and sign: `Res(Phi_{p^2}, numerator)`.
    pub fn numerator_norm(&self, a: &Cyc) -> BigInt {
        let qp = PolyRing::new(RationalField);
        let num = qp.from_coeffs(a.num.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        let r = qp.resultant_euclid(&self.phi(), &num).expect("phi is nonzero");
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    /// `lambda_2`-adic valuation; `None` stands for `+infinity`. The basis
    /// `lambda_2^i`, `i < N`, has pairwise distinct valuations modulo `N = v(p)`,
    /// so `v(sum b_i lambda_2^i) = min(N v_p(b_i) + i)`.
    pub fn valuation(&self, a: &Cyc) -> Option<u64> {
        let e = self.n as u64;
        self.integral_lambda2_coordinates(a)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| e * valuation_big(c, self.p) + i as u64)
            .min()
    }

    /// Numerator coordinates in the `lambda_2` power basis (integer Taylor shift `X = 1 + Y`).
    fn integral_lambda2_coordinates(&self, a: &Cyc) -> Vec<BigInt> {
        let mut c = a.num.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        c
    }

    /// Coordinates of `a` in the basis `1, lambda_2, ..., lambda_2^{N-1}`,
    /// obtained by the substitution `X = 1 + Y`.
    pub fn lambda2_coordinates(&self, a: &Cyc) -> Vec<BigRational> {
        let qp = PolyRing::new(RationalField);
        let shift = qp.from_coeffs(vec![BigRational::one(), BigRational::one()]);
        let mut v = qp.compose(&self.to_rational_poly(a), &shift);
        v.resize(self.n, BigRational::zero());
        v
    }

    /// Apply `zeta -> zeta^k` for `k` prime to `p`.
    pub fn galois(&self, a: &Cyc, k: u64) -> Cyc {
        let m = (self.p * self.p) as usize;
        let mut v = vec![BigInt::zero(); m];
        for (i, c) in a.num.iter().enumerate() {
            v[(i * k as usize) % m] += c;
        }
        let r = self.reduce_poly(v);
        self.normalize(r, a.den.clone())
    }
}

impl Ring for CyclotomicRing {
    type Elem = Cyc;

    fn zero(&self) -> Cyc {
        self.from_bigint(BigInt::zero())
    }
    fn one(&self) -> Cyc {
        self.from_bigint(BigInt::one())
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return self.normalize(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        self.normalize(num, &a.den * &b.den)
    }
    fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut prod = vec![BigInt::zero(); 2 * self.n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let r = self.reduce_poly(prod);
        self.normalize(r, &a.den * &b.den)
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { num: a.num.iter().map(|c| -c).collect(), den: a.den.clone() }
    }
    fn from_i64(&self, n: i64) -> Cyc {
        self.from_bigint(BigInt::from(n))
    }
    fn is_zero(&self, a: &Cyc) -> bool {
        a.num.iter().all(Zero::is_zero)
    }
}

impl Domain for CyclotomicRing {
    fn div_exact(&self, a: &Cyc, b: &Cyc) -> Option<Cyc> {
        if self.is_zero(b) {
            return None;
        }
        if self.is_zero(a) {
            return Some(self.zero());
        }
        // Division by a rational integer needs no inversion.
        if b.num[1..].iter().all(Zero::is_zero) {
            let num = a.num.iter().map(|c| c * &b.den).collect();
            return self.make(num, &a.den * &b.num[0]);
        }
        let inv = self.inv_over_q(b)?;
        // Multiply over Q first; only the product has to be p-integral.
        let mut prod = vec![BigInt::zero(); 2 * self.n - 1];
        for (i, x) in a.num.iter().enumerate() {
            for (j, y) in inv.0.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let r = self.reduce_poly(prod);
        self.make(r, &a.den * &inv.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // the norm is a product of all conjugates, each of the same valuation
    fn oracle_valuation(r: &CyclotomicRing, a: &Cyc) -> Option<u64> {
        (!r.is_zero(a)).then(|| valuation_big(&r.numerator_norm(a), r.p()))
    }

    #[test]
    fn valuation_examples() {
        for p in [3u64, 5] {
            let r = CyclotomicRing::new(p);
            let z2 = r.zeta2();
            let l2 = r.sub(&z2, &r.one());
            let lam = r.sub(&r.pow(&z2, u128::from(p)), &r.one());
            assert_eq!(r.valuation(&l2), Some(1));
            assert_eq!(r.valuation(&r.from_i64(p as i64)), Some(p * (p - 1)));
            assert_eq!(r.valuation(&lam), Some(p));
            assert_eq!(r.valuation(&r.zero()), None);
            assert_eq!(r.valuation(&r.from_i64(2)), Some(0));
        }
    }

    #[test]
    fn zeta_has_order_p_squared() {
        let r = CyclotomicRing::new(3);
        let z = r.zeta2();
        assert!(r.is_one(&r.pow(&z, 9)));
        assert!(!r.is_one(&r.pow(&z, 3)));
    }

    #[test]
    fn division_respects_integrality() {
        let r = CyclotomicRing::new(3);
        let l2 = r.sub(&r.zeta2(), &r.one());
        let three = r.from_i64(3);
        // 3 / lambda_2^6 is a unit; 1 / lambda_2 is not integral.
        let unit = r.div_exact(&three, &r.pow(&l2, 6)).unwrap();
        assert_eq!(r.valuation(&unit), Some(0));
        assert_eq!(r.div_exact(&r.one(), &l2), None);
        assert_eq!(r.div_exact(&r.one(), &three), None);
        assert_eq!(r.residue(&r.from_rational(&BigRational::new(1.into(), 2.into())).unwrap()), 2);
    }

    fn arb_elem(p: u64) -> impl Strategy<Value = Cyc> {
        let n = (p * (p - 1)) as usize;
        (proptest::collection::vec(-20i64..20, n), 1i64..5).prop_map(move |(v, d)| {
            let r = CyclotomicRing::new(p);
            let den = if d % p as i64 == 0 { d + 1 } else { d };
            r.from_poly(v.into_iter().map(BigInt::from).collect(), BigInt::from(den)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn valuation_is_additive(a in arb_elem(3), b in arb_elem(3)) {
            let r = CyclotomicRing::new(3);
            let va = r.valuation(&a);
            let vb = r.valuation(&b);
            let vab = r.valuation(&r.mul(&a, &b));
            match (va, vb) {
                (Some(x), Some(y)) => prop_assert_eq!(vab, Some(x + y)),
                _ => prop_assert_eq!(vab, None),
            }
            if let (Some(x), Some(y), Some(s)) = (va, vb, r.valuation(&r.add(&a, &b))) {
                prop_assert!(s >= x.min(y));
            }
        }

        #[test]
        fn basis_valuation_matches_norm_oracle(a in arb_elem(3)) {
            let r = CyclotomicRing::new(3);
            prop_assert_eq!(r.valuation(&a), oracle_valuation(&r, &a));
        }
    }
}
