//! Homogeneous polynomials in `x, y, z`.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};

use super::poly::PolyRing;
use super::ring::Ring;

/// Exponent triple `(e_x, e_y, e_z)`.
pub type Monomial = [u32; 3];

/// A homogeneous form of fixed degree with a sparse monomial map and no
/// stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm<E> {
    degree: u32,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> TernaryForm<E> {
    pub fn zero(degree: u32) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    /// Build from `(monomial, coefficient)` pairs, summing repeats and
    /// dropping zeros. Every monomial must have total degree `degree`.
    pub fn from_terms<R: Ring<Elem = E>>(r: &R, degree: u32, terms: impl IntoIterator<Item = (Monomial, E)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (mono, c) in terms {
            if mono.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!("monomial {mono:?} is not of degree {degree}")));
            }
            out.add_term(r, mono, c);
        }
        Ok(out)
    }

    fn add_term<R: Ring<Elem = E>>(&mut self, r: &R, mono: Monomial, c: E) {
        let next = match self.terms.get(&mono) {
            Some(old) => r.add(old, &c),
            None => c,
        };
        if r.is_zero(&next) {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, next);
        }
    }

    /// `a x + b y + c z`.
    pub fn linear<R: Ring<Elem = E>>(r: &R, a: E, b: E, c: E) -> Self {
        Self::from_terms(r, 1, [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)]).expect("degree 1")
    }

    pub fn constant<R: Ring<Elem = E>>(r: &R, c: E) -> Self {
        Self::from_terms(r, 0, [([0, 0, 0], c)]).expect("degree 0")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, mono: Monomial) -> E {
        self.terms.get(&mono).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn map<S: Ring>(&self, s: &S, f: impl Fn(&E) -> S::Elem) -> TernaryForm<S::Elem> {
        TernaryForm::from_terms(s, self.degree, self.terms.iter().map(|(m, c)| (*m, f(c)))).expect("same degree")
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(r, *m, c.clone());
        }
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        self.map(r, |c| r.neg(c))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        self.add(r, &other.neg(r))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, c: &E) -> Self {
        self.map(r, |a| r.mul(a, c))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(r, [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], r.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, e: u32) -> Self {
        let mut acc = Self::constant(r, r.one());
        for _ in 0..e {
            acc = acc.mul(r, self);
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, pt: &[E; 3]) -> E {
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if m[i] > 0 {
                    t = r.mul(&t, &r.pow(&pt[i], u128::from(m[i])));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative in variable `var` (0 = x, 1 = y, 2 = z).
    pub fn partial<R: Ring<Elem = E>>(&self, r: &R, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[var] -= 1;
            out.add_term(r, m2, r.mul(&r.from_i64(i64::from(m[var])), c));
        }
        out
    }

    pub fn gradient<R: Ring<Elem = E>>(&self, r: &R) -> [Self; 3] {
        [self.partial(r, 0), self.partial(r, 1), self.partial(r, 2)]
    }

    /// Determinant of the matrix of second partials; degree `3(d - 2)`.
    pub fn hessian<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let g = self.gradient(r);
        let h: Vec<Vec<Self>> = (0..3).map(|i| (0..3).map(|j| g[i].partial(r, j)).collect()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| h[1][a].mul(r, &h[2][b]).sub(r, &h[1][c].mul(r, &h[2][d]));
        let t0 = h[0][0].mul(r, &minor(1, 2, 2, 1));
        let t1 = h[0][1].mul(r, &minor(0, 2, 2, 0));
        let t2 = h[0][2].mul(r, &minor(0, 1, 1, 0));
        let det = t0.sub(r, &t1).add(r, &t2);
        if det.is_zero() {
            Self::zero(3 * self.degree.saturating_sub(2))
        } else {
            det
        }
    }

    /// `F(A v)`, where row `i` of `a` gives the linear form substituted for variable `i`.
    pub fn substitute<R: Ring<Elem = E>>(&self, r: &R, a: &[[E; 3]; 3]) -> Self {
        let lins: Vec<Self> = a.iter().map(|row| Self::linear(r, row[0].clone(), row[1].clone(), row[2].clone())).collect();
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.terms {
            let t = lins[0].pow(r, m[0]).mul(r, &lins[1].pow(r, m[1])).mul(r, &lins[2].pow(r, m[2]));
            out = out.add(r, &t.scale(r, c));
        }
        out
    }

    /// Restriction to the parametrized line `P + t R`, as a univariate
    /// polynomial in `t`.
    pub fn restrict_to_line<R: Ring<Elem = E>>(&self, r: &R, p: &[E; 3], dir: &[E; 3]) -> Vec<E> {
        let pr = PolyRing::new(r.clone());
        let lin: Vec<Vec<E>> = (0..3).map(|i| pr.from_coeffs(vec![p[i].clone(), dir[i].clone()])).collect();
        let mut acc = pr.zero();
        for (m, c) in &self.terms {
            let mut t = pr.constant(c.clone());
            for i in 0..3 {
                t = pr.mul(&t, &pr.pow(&lin[i], u128::from(m[i])));
            }
            acc = pr.add(&acc, &t);
        }
        acc
    }

    /// Dehomogenize at `z = 1` as a polynomial in `x` whose coefficients are
    /// polynomials in `y`.
    pub fn to_x_over_y<R: Ring<Elem = E>>(&self, r: &R) -> Vec<Vec<E>> {
        let pr = PolyRing::new(r.clone());
        let mut out: Vec<Vec<E>> = vec![Vec::new(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            let add = pr.monomial(c.clone(), m[1] as usize);
            out[m[0] as usize] = pr.add(&out[m[0] as usize], &add);
        }
        while out.last().is_some_and(|v| v.is_empty()) {
            out.pop();
        }
        out
    }

    /// Binary form obtained by setting variable `var` to zero, as a
    /// univariate polynomial in the first remaining variable (the second set to 1).
    pub fn restrict_to_coordinate_line<R: Ring<Elem = E>>(&self, r: &R, var: usize) -> Vec<E> {
        let pr = PolyRing::new(r.clone());
        let (a, _) = match var {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut acc = pr.zero();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                acc = pr.add(&acc, &pr.monomial(c.clone(), m[a] as usize));
            }
        }
        acc
    }

    /// JSON monomial list: `[[[e_x, e_y, e_z], "coefficient"], ...]`.
    pub fn to_json(&self, fmt_coeff: impl Fn(&E) -> String) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| Value::Array(vec![serde_json::json!([m[0], m[1], m[2]]), Value::String(fmt_coeff(c))]))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fp::PrimeField;
    use crate::algebra::integers::IntegerRing;
    use crate::algebra::ring::Field;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn zform(terms: &[([u32; 3], i64)]) -> TernaryForm<BigInt> {
        let d = terms[0].0.iter().sum();
        TernaryForm::from_terms(&IntegerRing, d, terms.iter().map(|(m, c)| (*m, BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn fermat_cubic_hessian() {
        let f = zform(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        assert_eq!(f.hessian(&IntegerRing), zform(&[([1, 1, 1], 216)]));
    }

    #[test]
    fn quadratic_hessian_is_constant() {
        let f = zform(&[([2, 0, 0], 1), ([0, 1, 1], 3)]);
        let h = f.hessian(&IntegerRing);
        assert_eq!(h.degree(), 0);
        assert_eq!(h, zform(&[([0, 0, 0], -18)]));
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = TernaryForm::from_terms(&IntegerRing, 2, [([1, 0, 0], BigInt::from(1))]);
        assert!(r.is_err());
    }

    fn det3(f: &PrimeField, a: &[[u64; 3]; 3]) -> u64 {
        let m = |x: u64, y: u64| f.mul(&x, &y);
        let t0 = m(a[0][0], f.sub(&m(a[1][1], a[2][2]), &m(a[1][2], a[2][1])));
        let t1 = m(a[0][1], f.sub(&m(a[1][0], a[2][2]), &m(a[1][2], a[2][0])));
        let t2 = m(a[0][2], f.sub(&m(a[1][0], a[2][1]), &m(a[1][1], a[2][0])));
        f.add(&f.sub(&t0, &t1), &t2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn hessian_covariance(coeffs in proptest::collection::vec(0u64..11, 10), a in proptest::collection::vec(0u64..11, 9)) {
            let f = PrimeField::new(11).unwrap();
            let monos: Vec<[u32; 3]> = (0..=3u32).flat_map(|i| (0..=3 - i).map(move |j| [i, j, 3 - i - j])).collect();
            let form = TernaryForm::from_terms(&f, 3, monos.into_iter().zip(coeffs)).unwrap();
            let mat = [[a[0], a[1], a[2]], [a[3], a[4], a[5]], [a[6], a[7], a[8]]];
            let det = det3(&f, &mat);
            prop_assume!(f.inv(&det).is_some());
            let lhs = form.substitute(&f, &mat).hessian(&f);
            let rhs = form.hessian(&f).substitute(&f, &mat).scale(&f, &f.mul(&det, &det));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
