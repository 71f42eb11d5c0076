//! Finite fields `F_{p^m}` as `F_p[x]/(g)` with a canonical modulus.
//!
//! The modulus for `(p, m)` is the first monic irreducible polynomial of
//! degree `m` when monic polynomials are enumerated by the integer whose
//! base-`p` digits are their lower coefficients (constant term least
//! significant). Descriptors are memoized in a process-wide table, so two
//! calls with the same `(p, m)` share one descriptor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

use super::fp::PrimeField;
use super::integers::{gcd, is_prime, prime_divisors};
use super::poly::PolyRing;
use super::ring::{Domain, Field, FiniteField, Ring};

/// Largest field order accepted by [`build_ext_field`].
pub const MAX_FIELD_ORDER: u128 = 1 << 48;

/// An element of `F_{p^m}`: coefficients of its representative, low degree first, length `m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub Vec<u64>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

#[derive(Debug)]
struct Inner {
    fp: PrimeField,
    m: u32,
    modulus: Vec<u64>,
    order: u128,
    generator: OnceLock<Gf>,
}

#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p(), self.m())
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.m() == other.m()
    }
}
impl Eq for ExtField {}

impl std::hash::Hash for ExtField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p(), self.m()).hash(state);
    }
}

/// Serializable descriptor `{p, m, defining_poly}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: u32,
    /// Coefficients of the monic defining polynomial, low degree first.
    pub defining_poly: Vec<u64>,
}

fn field_table() -> &'static Mutex<HashMap<(u64, u32), ExtField>> {
    static TABLE: OnceLock<Mutex<HashMap<(u64, u32), ExtField>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible(fp: PrimeField, f: &[u64]) -> bool {
    let pr = PolyRing::new(fp);
    let Some(n) = pr.deg(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let n = n as u32;
    let x = pr.x();
    for r in prime_divisors(u128::from(n)) {
        let h = pr.frobenius_power_of_x(f, n / r as u32);
        if pr.gcd(f, &pr.sub(&h, &x)).len() > 1 {
            return false;
        }
    }
    let h = pr.frobenius_power_of_x(f, n);
    pr.rem(&pr.sub(&h, &x), f).is_empty()
}

fn first_irreducible(fp: PrimeField, m: u32) -> Vec<u64> {
    let p = fp.p();
    let mut idx: u128 = 0;
    loop {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut t = idx;
        for _ in 0..m {
            f.push((t % u128::from(p)) as u64);
            t /= u128::from(p);
        }
        f.push(1);
        if is_irreducible(fp, &f) {
            return f;
        }
        idx += 1;
    }
}

/// The canonical degree-`m` extension of `F_p`.
pub fn build_ext_field(p: u64, m: u32) -> Result<ExtField> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    let order = u128::from(p)
        .checked_pow(m)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::Unsupported(format!("field F_{p}^{m} exceeds the configured size cap 2^48")))?;
    if let Some(f) = field_table().lock().expect("field table").get(&(p, m)) {
        return Ok(f.clone());
    }
    let fp = PrimeField::new(p)?;
    let modulus = first_irreducible(fp, m);
    let field = ExtField(Arc::new(Inner { fp, m, modulus, order, generator: OnceLock::new() }));
    let mut table = field_table().lock().expect("field table");
    Ok(table.entry((p, m)).or_insert(field).clone())
}

impl ExtField {
    pub fn p(&self) -> u64 {
        self.0.fp.p()
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn prime_field(&self) -> PrimeField {
        self.0.fp
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p(), m: self.m(), defining_poly: self.0.modulus.clone() }
    }

    pub fn from_u64(&self, c: u64) -> Gf {
        let mut v = vec![0; self.m() as usize];
        v[0] = c % self.p();
        Gf(v)
    }

    /// The class of `x`, a root of the defining polynomial.
    pub fn alpha(&self) -> Gf {
        if self.m() == 1 {
            return self.from_u64(self.p() - self.0.modulus[0] % self.p());
        }
        let mut v = vec![0; self.m() as usize];
        v[1] = 1;
        Gf(v)
    }

    pub fn from_poly(&self, coeffs: &[u64]) -> Gf {
        let pr = PolyRing::new(self.0.fp);
        let r = pr.rem(&pr.from_coeffs(coeffs.to_vec()), &self.0.modulus);
        let mut v = vec![0; self.m() as usize];
        v[..r.len()].copy_from_slice(&r);
        Gf(v)
    }

    /// Element of the prime subfield, if it lies there.
    pub fn as_prime(&self, a: &Gf) -> Option<u64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    /// A fixed generator of the multiplicative group (least index).
    pub fn generator(&self) -> Gf {
        self.0
            .generator
            .get_or_init(|| {
                let n = self.order() - 1;
                let primes = prime_divisors(n);
                (1..self.order())
                    .map(|i| self.from_index(i))
                    .find(|g| primes.iter().all(|&r| !self.is_one(&self.pow(g, n / r))))
                    .expect("cyclic multiplicative group")
            })
            .clone()
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: &Gf) -> Result<u128> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let mut n = self.order() - 1;
        for r in prime_divisors(n) {
            while n % r == 0 && self.is_one(&self.pow(a, n / r)) {
                n /= r;
            }
        }
        Ok(n)
    }

    /// A primitive `d`-th root of unity: `generator^((q-1)/d)`.
    pub fn primitive_root_of_unity(&self, d: u64) -> Result<Gf> {
        let n = self.order() - 1;
        if d == 0 || n % u128::from(d) != 0 {
            return Err(Error::NoRootsOfUnity { d, q: self.order() });
        }
        Ok(self.pow(&self.generator(), n / u128::from(d)))
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: &Gf) -> u64 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.m() {
            cur = self.frobenius(&cur);
            acc = self.add(&acc, &cur);
        }
        self.as_prime(&acc).expect("trace lies in the prime field")
    }

    /// Relative norm to the subfield of degree `k` (`k | m`).
    pub fn norm_to(&self, a: &Gf, k: u32) -> Gf {
        let qk = u128::from(self.p()).pow(k);
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.m() / k {
            cur = self.pow(&cur, qk);
            acc = self.mul(&acc, &cur);
        }
        acc
    }
}

impl Ring for ExtField {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf(vec![0; self.m() as usize])
    }
    fn one(&self) -> Gf {
        self.from_u64(1)
    }
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let fp = &self.0.fp;
        Gf(a.0.iter().zip(&b.0).map(|(x, y)| fp.add(x, y)).collect())
    }
    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        let fp = &self.0.fp;
        Gf(a.0.iter().zip(&b.0).map(|(x, y)| fp.sub(x, y)).collect())
    }
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        let m = self.m() as usize;
        let p = self.p();
        if m == 1 {
            return Gf(vec![self.0.fp.mul(&a.0[0], &b.0[0])]);
        }
        let mut prod = vec![0u128; 2 * m - 1];
        let pp = u128::from(p);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u128::from(x) * u128::from(y)) % pp;
            }
        }
        let g = &self.0.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let t = c * u128::from(g[i]) % pp;
                prod[k - m + i] = (prod[k - m + i] + pp - t) % pp;
            }
        }
        Gf(prod[..m].iter().map(|&c| c as u64).collect())
    }
    fn neg(&self, a: &Gf) -> Gf {
        let fp = &self.0.fp;
        Gf(a.0.iter().map(|x| fp.neg(x)).collect())
    }
    fn from_i64(&self, n: i64) -> Gf {
        self.from_u64(self.0.fp.from_i64(n))
    }
    fn is_zero(&self, a: &Gf) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn is_one(&self, a: &Gf) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }
}

impl Domain for ExtField {
    fn div_exact(&self, a: &Gf, b: &Gf) -> Option<Gf> {
        self.div(a, b)
    }
}

impl Field for ExtField {
    fn inv(&self, a: &Gf) -> Option<Gf> {
        if self.is_zero(a) {
            return None;
        }
        if self.m() == 1 {
            return self.0.fp.inv(&a.0[0]).map(|c| Gf(vec![c]));
        }
        let pr = PolyRing::new(self.0.fp);
        let s = pr.inv_mod(&pr.from_coeffs(a.0.clone()), &self.0.modulus)?;
        Some(self.from_poly(&s))
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u128 {
        self.0.order
    }
    fn degree(&self) -> u32 {
        self.m()
    }
    fn index_of(&self, a: &Gf) -> u128 {
        a.0.iter().rev().fold(0u128, |acc, &c| acc * u128::from(self.p()) + u128::from(c))
    }
    fn from_index(&self, mut i: u128) -> Gf {
        let p = u128::from(self.p());
        Gf((0..self.m())
            .map(|_| {
                let c = (i % p) as u64;
                i /= p;
                c
            })
            .collect())
    }
}

fn embedding_table() -> &'static Mutex<HashMap<(u64, u32, u32), Gf>> {
    static TABLE: OnceLock<Mutex<HashMap<(u64, u32, u32), Gf>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Image in `big` of the generator class `x` of `small`: the least-index root
/// of the defining polynomial of `small`. Requires `small.m() | big.m()`.
pub fn embedding_root(small: &ExtField, big: &ExtField) -> Result<Gf> {
    if small.p() != big.p() || big.m() % small.m() != 0 {
        return Err(Error::InvalidInput(format!("no embedding {small:?} -> {big:?}")));
    }
    let key = (small.p(), small.m(), big.m());
    if let Some(r) = embedding_table().lock().expect("embedding table").get(&key) {
        return Ok(r.clone());
    }
    let root = if small.m() == 1 {
        big.zero()
    } else {
        let pr = PolyRing::new(big.clone());
        let g: Vec<Gf> = small.modulus().iter().map(|&c| big.from_u64(c)).collect();
        pr.roots(&pr.from_coeffs(g), 0x5eed)
            .into_iter()
            .next()
            .expect("defining polynomial splits in the larger field")
    };
    embedding_table().lock().expect("embedding table").insert(key, root.clone());
    Ok(root)
}

/// Map an element of `small` into `big` along the canonical embedding.
pub fn embed(small: &ExtField, big: &ExtField, a: &Gf) -> Result<Gf> {
    if small == big {
        return Ok(a.clone());
    }
    if small.m() == 1 {
        if big.p() != small.p() {
            return Err(Error::InvalidInput("characteristic mismatch".into()));
        }
        return Ok(big.from_u64(a.0[0]));
    }
    let alpha = embedding_root(small, big)?;
    let mut acc = big.zero();
    for c in a.0.iter().rev() {
        acc = big.add(&big.mul(&acc, &alpha), &big.from_u64(*c));
    }
    Ok(acc)
}

/// Preimage of `b` under the canonical embedding `small -> big`, or `None`
/// when `b` does not lie in the image.
pub fn restrict(small: &ExtField, big: &ExtField, b: &Gf) -> Result<Option<Gf>> {
    if small == big {
        return Ok(Some(b.clone()));
    }
    if small.m() == 1 {
        return Ok(big.as_prime(b).map(|c| small.from_u64(c)));
    }
    let alpha = embedding_root(small, big)?;
    let k = small.m() as usize;
    let n = big.m() as usize;
    let fp = big.prime_field();
    // Columns are alpha^j; solve sum c_j alpha^j = b over F_p.
    let mut cols = Vec::with_capacity(k);
    let mut pw = big.one();
    for _ in 0..k {
        cols.push(pw.clone());
        pw = big.mul(&pw, &alpha);
    }
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r: Vec<u64> = cols.iter().map(|c| c.0[i]).collect();
            r.push(b.0[i]);
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(r) = (pivot_row..n).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(r, pivot_row);
        let inv = fp.inv(&rows[pivot_row][col]).expect("nonzero pivot");
        for x in rows[pivot_row].iter_mut() {
            *x = fp.mul(x, &inv);
        }
        for r2 in 0..n {
            if r2 != pivot_row && rows[r2][col] != 0 {
                let f = rows[r2][col];
                for c2 in 0..=k {
                    let t = fp.mul(&f, &rows[pivot_row][c2]);
                    rows[r2][c2] = fp.sub(&rows[r2][c2], &t);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| r[k] != 0) {
        return Ok(None);
    }
    let mut sol = vec![0u64; k];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][k];
    }
    Ok(Some(Gf(sol)))
}

/// Smallest `k` with `a` in the degree-`k` subfield of `field`.
pub fn element_degree(field: &ExtField, a: &Gf) -> u32 {
    let mut cur = a.clone();
    for k in 1..=field.m() {
        cur = field.frobenius(&cur);
        if field.m() % k == 0 && cur == *a {
            return k;
        }
    }
    field.m()
}

/// Degree of the compositum of two extensions (their lcm).
pub fn common_degree(a: u32, b: u32) -> u32 {
    (u64::from(a) / gcd(u64::from(a), u64::from(b)) * u64::from(b)) as u32
}

/// Every root of a nonzero polynomial over `base` in the algebraic closure,
/// grouped by the field `F_{p^{eK}}` generated over `base = F_{p^e}`, where
/// `K` runs over the degrees of the irreducible factors.
pub fn all_roots(base: &ExtField, f: &[Gf]) -> Result<Vec<(ExtField, Vec<Gf>)>> {
    let pr = PolyRing::new(base.clone());
    let mut out = Vec::new();
    for (k, g) in pr.distinct_degree(f) {
        let big = build_ext_field(base.p(), base.m() * k)?;
        let bpr = PolyRing::new(big.clone());
        let mut coeffs = Vec::with_capacity(g.len());
        for c in &g {
            coeffs.push(embed(base, &big, c)?);
        }
        let roots = bpr.roots(&bpr.from_coeffs(coeffs), 0xC0FFEE ^ u64::from(k));
        out.push((big, roots));
    }
    Ok(out)
}

/// Map a polynomial over `small` coefficient-wise into `big`.
pub fn embed_poly(small: &ExtField, big: &ExtField, f: &[Gf]) -> Result<Vec<Gf>> {
    let mut out = Vec::with_capacity(f.len());
    for c in f {
        out.push(embed(small, big, c)?);
    }
    Ok(PolyRing::new(big.clone()).from_coeffs(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(build_ext_field(7, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(build_ext_field(7, 2).unwrap().modulus(), &[1, 0, 1]);
        let f = build_ext_field(19, 3).unwrap();
        assert_eq!(f.order() - 1, 6858);
        assert!(is_irreducible(PrimeField::new(19).unwrap(), f.modulus()));
        assert_eq!(build_ext_field(9, 1).unwrap_err(), Error::InvalidPrime(9));
    }

    #[test]
    fn x2_plus_1_splits_over_f49() {
        let f = build_ext_field(7, 2).unwrap();
        let pr = PolyRing::new(f.clone());
        let g = pr.from_coeffs(vec![f.one(), f.zero(), f.one()]);
        assert_eq!(pr.roots(&g, 1).len(), 2);
    }

    #[test]
    fn generator_has_full_order() {
        for (p, m) in [(2, 4), (3, 3), (19, 1), (5, 2)] {
            let f = build_ext_field(p, m).unwrap();
            assert_eq!(f.mult_order(&f.generator()).unwrap(), f.order() - 1);
        }
    }

    #[test]
    fn embedding_round_trip() {
        let small = build_ext_field(3, 2).unwrap();
        let big = build_ext_field(3, 4).unwrap();
        for a in small.elements() {
            let b = embed(&small, &big, &a).unwrap();
            assert_eq!(restrict(&small, &big, &b).unwrap(), Some(a.clone()));
            for c in small.elements().take(5) {
                let bc = embed(&small, &big, &c).unwrap();
                assert_eq!(embed(&small, &big, &small.mul(&a, &c)).unwrap(), big.mul(&b, &bc));
            }
        }
        let outside = big.alpha();
        assert_eq!(restrict(&small, &big, &outside).unwrap(), None);
        assert_eq!(element_degree(&big, &outside), 4);
    }
}
