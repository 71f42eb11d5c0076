//! Dense univariate polynomials over a ring descriptor.
//!
//! Elements are coefficient vectors, lowest degree first, with trailing
//! zeros trimmed, so structural equality is polynomial equality.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::ring::{Domain, Field, FiniteField, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn trim(&self, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn from_coeffs(&self, v: Vec<R::Elem>) -> Vec<R::Elem> {
        self.trim(v)
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.trim(vec![c])
    }

    pub fn x(&self) -> Vec<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.trim(v)
    }

    /// `None` for the zero polynomial.
    pub fn deg(&self, f: &[R::Elem]) -> Option<usize> {
        f.len().checked_sub(1)
    }

    pub fn lc(&self, f: &[R::Elem]) -> R::Elem {
        f.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn coeff(&self, f: &[R::Elem], k: usize) -> R::Elem {
        f.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, f: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        self.trim(f.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn map<S: Ring>(&self, other: &PolyRing<S>, f: &[R::Elem], h: impl Fn(&R::Elem) -> S::Elem) -> Vec<S::Elem> {
        other.trim(f.iter().map(h).collect())
    }

    pub fn eval(&self, f: &[R::Elem], x: &R::Elem) -> R::Elem {
        let b = &self.base;
        f.iter().rev().fold(b.zero(), |acc, c| b.add(&b.mul(&acc, x), c))
    }

    pub fn derivative(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        let b = &self.base;
        self.trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| b.mul(&b.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// `f(g(x))` by Horner.
    pub fn compose(&self, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
        f.iter()
            .rev()
            .fold(Vec::new(), |acc, c| self.add(&self.mul(&acc, &g.to_vec()), &self.constant(c.clone())))
    }

    pub fn mul_x_pow(&self, f: &[R::Elem], k: usize) -> Vec<R::Elem> {
        if f.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend_from_slice(f);
        v
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let r = &self.base;
        self.trim(
            (0..n)
                .map(|i| match (a.get(i), b.get(i)) {
                    (Some(x), Some(y)) => r.add(x, y),
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let r = &self.base;
        let mut out = vec![r.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(x, y));
            }
        }
        self.trim(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
}

impl<R: Domain> PolyRing<R> {
    /// Division by a divisor whose leading coefficient divides every step;
    /// `None` when the remainder is nonzero or a step is inexact.
    fn div_exact_poly(&self, a: &[R::Elem], b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let db = self.deg(b)?;
        let r = &self.base;
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return rem.is_empty().then(Vec::new);
        }
        let lb = self.lc(b);
        let mut q = vec![r.zero(); rem.len() - db];
        while let Some(dr) = self.deg(&rem) {
            if dr < db {
                return None;
            }
            let c = r.div_exact(&self.lc(&rem), &lb)?;
            let k = dr - db;
            for (i, bi) in b.iter().enumerate() {
                rem[i + k] = r.sub(&rem[i + k], &r.mul(&c, bi));
            }
            q[k] = c;
            rem = self.trim(rem);
        }
        Some(self.trim(q))
    }

    /// Sylvester-matrix resultant, rows of `f` first, determinant by
    /// fraction-free elimination.
    pub fn resultant(&self, f: &[R::Elem], g: &[R::Elem]) -> Result<R::Elem> {
        let r = &self.base;
        match (self.deg(f), self.deg(g)) {
            (None, None) => Err(Error::Undefined),
            (None, Some(0)) | (Some(0), None) => Ok(r.one()),
            (None, Some(_)) | (Some(_), None) => Ok(r.zero()),
            (Some(m), Some(n)) => {
                let size = m + n;
                let mut mat = vec![vec![r.zero(); size]; size];
                for i in 0..n {
                    for (k, c) in f.iter().rev().enumerate() {
                        mat[i][i + k] = c.clone();
                    }
                }
                for i in 0..m {
                    for (k, c) in g.iter().rev().enumerate() {
                        mat[n + i][i + k] = c.clone();
                    }
                }
                Ok(bareiss_det(r, mat))
            }
        }
    }
}

/// Determinant of a square matrix over an integral domain.
pub fn bareiss_det<R: Domain>(r: &R, mut a: Vec<Vec<R::Elem>>) -> R::Elem {
    let n = a.len();
    if n == 0 {
        return r.one();
    }
    let mut negate = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return r.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = r.sub(&r.mul(&a[i][j], &a[k][k]), &r.mul(&a[i][k], &a[k][j]));
                a[i][j] = r.div_exact(&num, &prev).expect("fraction-free elimination is exact");
            }
            a[i][k] = r.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        r.neg(&d)
    } else {
        d
    }
}

impl<R: Domain> Domain for PolyRing<R> {
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div_exact_poly(a, b)
    }
}

impl<R: Field> PolyRing<R> {
    pub fn divrem(&self, a: &[R::Elem], b: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>) {
        let db = self.deg(b).expect("division by zero polynomial");
        let r = &self.base;
        let inv = r.inv(&self.lc(b)).expect("nonzero leading coefficient");
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut q = vec![r.zero(); rem.len() - db];
        while let Some(dr) = self.deg(&rem) {
            if dr < db {
                break;
            }
            let c = r.mul(&self.lc(&rem), &inv);
            let k = dr - db;
            for (i, bi) in b.iter().enumerate() {
                rem[i + k] = r.sub(&rem[i + k], &r.mul(&c, bi));
            }
            // Leading term cancels exactly; drop it even if arithmetic left a stray zero.
            rem.truncate(dr);
            rem = self.trim(rem);
            q[k] = c;
        }
        (self.trim(q), rem)
    }

    pub fn rem(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        self.divrem(a, b).1
    }

    pub fn monic(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        match f.last() {
            None => Vec::new(),
            Some(l) => self.scale(f, &self.base.inv(l).expect("nonzero")),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[R::Elem], b: &[R::Elem]) -> (Vec<R::Elem>, Vec<R::Elem>, Vec<R::Elem>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (self.one(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(l).expect("nonzero");
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    /// Inverse of `a` modulo `m`, if coprime.
    pub fn inv_mod(&self, a: &[R::Elem], m: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let (g, s, _) = self.ext_gcd(a, m);
        (g.len() == 1).then(|| self.rem(&s, m))
    }

    pub fn mulmod(&self, a: &[R::Elem], b: &[R::Elem], m: &[R::Elem]) -> Vec<R::Elem> {
        self.rem(&self.mul(&a.to_vec(), &b.to_vec()), m)
    }

    pub fn powmod(&self, a: &[R::Elem], mut e: u128, m: &[R::Elem]) -> Vec<R::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Resultant by the Euclidean remainder sequence; agrees with
    /// [`PolyRing::resultant`] and is much faster over fields.
    pub fn resultant_euclid(&self, f: &[R::Elem], g: &[R::Elem]) -> Result<R::Elem> {
        let r = &self.base;
        match (self.deg(f), self.deg(g)) {
            (None, None) => return Err(Error::Undefined),
            (None, Some(0)) | (Some(0), None) => return Ok(r.one()),
            (None, Some(_)) | (Some(_), None) => return Ok(r.zero()),
            _ => {}
        }
        let (mut f, mut g) = (f.to_vec(), g.to_vec());
        let mut acc = r.one();
        loop {
            let m = self.deg(&f).unwrap();
            let n = self.deg(&g).unwrap();
            if n == 0 {
                return Ok(r.mul(&acc, &r.pow(&g[0], m as u128)));
            }
            let rem = self.rem(&f, &g);
            let Some(dr) = self.deg(&rem) else {
                return Ok(r.zero());
            };
            if (m * n) % 2 == 1 {
                acc = r.neg(&acc);
            }
            acc = r.mul(&acc, &r.pow(&self.lc(&g), (m - dr) as u128));
            f = g;
            g = rem;
        }
    }

    pub fn is_separable(&self, f: &[R::Elem]) -> bool {
        self.gcd(f, &self.derivative(f)).len() == 1
    }

    pub fn squarefree_part(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        let g = self.gcd(f, &self.derivative(f));
        if g.len() <= 1 {
            return self.monic(f);
        }
        if self.derivative(f).is_empty() {
            // Inseparable in characteristic p; callers on finite fields use
            // `radical` instead.
            return self.monic(f);
        }
        self.monic(&self.div_exact_poly_field(f, &g))
    }

    pub fn div_exact_poly_field(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    /// Multiplicity of `x0` as a root of `f` (`f` nonzero).
    pub fn root_multiplicity(&self, f: &[R::Elem], x0: &R::Elem) -> usize {
        let lin = self.from_coeffs(vec![self.base.neg(x0), self.base.one()]);
        let mut g = f.to_vec();
        let mut k = 0;
        loop {
            let (q, r) = self.divrem(&g, &lin);
            if !r.is_empty() || g.is_empty() {
                return k;
            }
            g = q;
            k += 1;
        }
    }
}

impl<R: FiniteField> PolyRing<R> {
    /// `x^(Q^k) mod f` where `Q` is the base field order.
    pub fn frobenius_power_of_x(&self, f: &[R::Elem], k: u32) -> Vec<R::Elem> {
        let q = self.base.order();
        let mut h = self.rem(&self.x(), f);
        for _ in 0..k {
            h = self.powmod(&h, q, f);
        }
        h
    }

    /// True iff `f` has a root in the degree-`m` extension of the base field.
    pub fn has_root_in_extension(&self, f: &[R::Elem], m: u32) -> bool {
        match self.deg(f) {
            None => true,
            Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let h = self.frobenius_power_of_x(f, m);
                self.gcd(f, &self.sub(&h, &self.x())).len() > 1
            }
        }
    }

    /// Distinct-degree factorization of the squarefree part of a nonzero
    /// polynomial: `(k, product of the monic degree-k irreducible factors)`.
    pub fn distinct_degree(&self, f: &[R::Elem]) -> Vec<(u32, Vec<R::Elem>)> {
        let mut f = self.radical(f);
        let mut out = Vec::new();
        let mut h = self.rem(&self.x(), &f);
        let mut k = 0u32;
        while self.deg(&f).unwrap_or(0) >= 2 * (k as usize + 1) {
            k += 1;
            h = self.powmod(&h, self.base.order(), &f);
            let g = self.gcd(&f, &self.sub(&h, &self.x()));
            if g.len() > 1 {
                f = self.div_exact_poly_field(&f, &g);
                h = self.rem(&h, &f);
                out.push((k, g));
            }
        }
        if let Some(d) = self.deg(&f) {
            if d > 0 {
                out.push((d as u32, self.monic(&f)));
            }
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self, f: &[R::Elem]) -> Vec<R::Elem> {
        let f = self.monic(f);
        if self.deg(&f).unwrap_or(0) == 0 {
            return f;
        }
        let d = self.derivative(&f);
        if d.is_empty() {
            // f = g(x^p) = h(x)^p with h obtained by p-th roots of coefficients.
            let p = self.base.characteristic() as usize;
            let root_exp = self.base.order() / u128::from(self.base.characteristic());
            let h: Vec<R::Elem> = f.iter().step_by(p).map(|c| self.base.pow(c, root_exp)).collect();
            return self.radical(&self.trim(h));
        }
        let g = self.gcd(&f, &d);
        if g.len() == 1 {
            return f;
        }
        let cofactor = self.div_exact_poly_field(&f, &g);
        // lcm of radical(g) and cofactor
        let rg = self.radical(&g);
        let common = self.gcd(&rg, &cofactor);
        self.monic(&self.mul(&self.div_exact_poly_field(&rg, &common), &cofactor))
    }

    /// All distinct roots in the base field, sorted by field index.
    pub fn roots(&self, f: &[R::Elem], seed: u64) -> Vec<R::Elem> {
        if self.deg(f).unwrap_or(0) == 0 {
            return Vec::new();
        }
        let h = self.frobenius_power_of_x(f, 1);
        let g = self.gcd(f, &self.sub(&h, &self.x()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        self.split_linear(&g, &mut rng, &mut out);
        out.sort_by_key(|r| self.base.index_of(r));
        out
    }

    /// Roots with multiplicities, sorted by field index.
    pub fn roots_with_multiplicity(&self, f: &[R::Elem], seed: u64) -> Vec<(R::Elem, usize)> {
        self.roots(f, seed)
            .into_iter()
            .map(|r| {
                let k = self.root_multiplicity(f, &r);
                (r, k)
            })
            .collect()
    }

    fn split_linear(&self, g: &[R::Elem], rng: &mut dyn RngCore, out: &mut Vec<R::Elem>) {
        match self.deg(g) {
            None | Some(0) => {}
            Some(1) => {
                let m = self.monic(g);
                out.push(self.base.neg(&m[0]));
            }
            Some(d) => loop {
                let a = self.base.random(rng);
                let t = self.from_coeffs(vec![a, self.base.one()]);
                let s = if self.base.characteristic() == 2 {
                    let mut acc = self.rem(&t, g);
                    let mut cur = acc.clone();
                    for _ in 1..self.base.degree() {
                        cur = self.mulmod(&cur, &cur, g);
                        acc = self.add(&acc, &cur);
                    }
                    acc
                } else {
                    let e = (self.base.order() - 1) / 2;
                    self.sub(&self.powmod(&t, e, g), &self.one())
                };
                let h = self.gcd(g, &s);
                let dh = self.deg(&h).unwrap_or(0);
                if dh > 0 && dh < d {
                    let other = self.div_exact_poly_field(g, &h);
                    self.split_linear(&h, rng, out);
                    self.split_linear(&other, rng, out);
                    return;
                }
            },
        }
    }
}
