//! Sparse polynomials in a fixed set of six variables over `Z_(p)[zeta]`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::cyclotomic::{Cyc, CyclotomicRing};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

pub const NVARS: usize = 6;
pub const VAR_NAMES: [&str; NVARS] = ["X0", "X1", "Y0", "Y1", "Z0", "W"];

pub const X0: usize = 0;
pub const X1: usize = 1;
pub const Y0: usize = 2;
pub const Y1: usize = 3;
pub const Z0: usize = 4;
/// Formal indeterminate standing for the function `f` in lift equations.
pub const W: usize = 5;

pub type Mono = [u32; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloPoly {
    terms: BTreeMap<Mono, Cyc>,
}

impl CycloPoly {
    pub fn terms(&self) -> &BTreeMap<Mono, Cyc> {
        &self.terms
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Mono) -> Option<&Cyc> {
        self.terms.get(m)
    }
}

pub fn mono_string(m: &Mono) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { VAR_NAMES[i].to_string() } else { format!("{}^{}", VAR_NAMES[i], e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug)]
pub struct CycloPolyRing {
    pub base: CyclotomicRing,
}

impl CycloPolyRing {
    pub fn new(base: CyclotomicRing) -> Self {
        Self { base }
    }

    fn insert(&self, terms: &mut BTreeMap<Mono, Cyc>, m: Mono, c: Cyc) {
        match terms.get_mut(&m) {
            Some(v) => {
                *v = self.base.add(v, &c);
                if self.base.is_zero(v) {
                    terms.remove(&m);
                }
            }
            None => {
                if !self.base.is_zero(&c) {
                    terms.insert(m, c);
                }
            }
        }
    }

    pub fn constant(&self, c: Cyc) -> CycloPoly {
        let mut terms = BTreeMap::new();
        self.insert(&mut terms, [0; NVARS], c);
        CycloPoly { terms }
    }

    pub fn var(&self, i: usize) -> CycloPoly {
        let mut m = [0; NVARS];
        m[i] = 1;
        CycloPoly { terms: BTreeMap::from([(m, self.base.one())]) }
    }

    /// `sum_k coeffs[k] x^k`, by Horner's rule.
    pub fn eval_univariate(&self, coeffs: &[Cyc], x: &CycloPoly) -> CycloPoly {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.constant(c.clone()));
        }
        acc
    }

    /// Univariate coefficient list of a polynomial in the single variable `var`.
    pub fn as_univariate(&self, f: &CycloPoly, var: usize) -> Result<Vec<Cyc>> {
        let mut out = vec![self.base.zero(); f.degree_in(var) as usize + 1];
        for (m, c) in &f.terms {
            if m.iter().enumerate().any(|(i, e)| i != var && *e > 0) {
                return Err(Error::InvalidInput(format!("not univariate in {}", VAR_NAMES[var])));
            }
            out[m[var] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn scale(&self, f: &CycloPoly, c: &Cyc) -> CycloPoly {
        let mut terms = BTreeMap::new();
        for (m, a) in &f.terms {
            self.insert(&mut terms, *m, self.base.mul(a, c));
        }
        CycloPoly { terms }
    }

    /// Coefficient-wise exact division by a scalar.
    pub fn div_scalar(&self, f: &CycloPoly, b: &Cyc, what: &str) -> Result<CycloPoly> {
        let (monos, coeffs): (Vec<Mono>, Vec<Cyc>) = f.terms.iter().map(|(m, c)| (*m, c.clone())).unzip();
        let q = self
            .base
            .div_exact_all(&coeffs, b)
            .ok_or_else(|| Error::IntegralityViolation(format!("{what} is not divisible in the local ring")))?;
        Ok(CycloPoly { terms: monos.into_iter().zip(q).collect() })
    }

    /// Substitute `subs[i]` for variable `i` (or keep it when `None`).
    pub fn compose(&self, f: &CycloPoly, subs: &[Option<&CycloPoly>; NVARS]) -> CycloPoly {
        let mut cache: HashMap<(usize, u32), CycloPoly> = HashMap::new();
        let mut acc = self.zero();
        for (m, c) in &f.terms {
            let mut keep = [0u32; NVARS];
            let mut term = self.constant(c.clone());
            for i in 0..NVARS {
                if m[i] == 0 {
                    continue;
                }
                match subs[i] {
                    None => keep[i] = m[i],
                    Some(s) => {
                        let pw = cache.entry((i, m[i])).or_insert_with(|| self.pow(s, u128::from(m[i]))).clone();
                        term = self.mul(&term, &pw);
                    }
                }
            }
            let shift = CycloPoly { terms: BTreeMap::from([(keep, self.base.one())]) };
            acc = self.add(&acc, &self.mul(&term, &shift));
        }
        acc
    }

    /// Least `lambda_2`-adic valuation of a coefficient, with its monomial.
    pub fn min_valuation(&self, f: &CycloPoly) -> Option<(Mono, u64)> {
        let mut best: Option<(Mono, u64)> = None;
        for (m, c) in &f.terms {
            let v = self.base.valuation(c).expect("stored coefficients are nonzero");
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((*m, v));
            }
        }
        best
    }

    /// First monomial, in term order, whose coefficient has valuation below `bound`.
    pub fn first_below(&self, f: &CycloPoly, bound: u64) -> Option<(Mono, u64)> {
        f.terms.iter().find_map(|(m, c)| {
            let v = self.base.valuation(c).expect("nonzero");
            (v < bound).then_some((*m, v))
        })
    }

    /// Image modulo `lambda_2`, a polynomial over `F_p`.
    pub fn reduce(&self, f: &CycloPoly) -> BTreeMap<Mono, u64> {
        f.terms
            .iter()
            .filter_map(|(m, c)| {
                let r = self.base.residue(c);
                (r != 0).then_some((*m, r))
            })
            .collect()
    }

    pub fn canonical_string(&self, f: &CycloPoly) -> String {
        let parts: Vec<String> = f.terms.iter().map(|(m, c)| format!("{}:{}", mono_string(m), c.canonical_string())).collect();
        parts.join(";")
    }
}

impl Ring for CycloPolyRing {
    type Elem = CycloPoly;

    fn zero(&self) -> CycloPoly {
        CycloPoly { terms: BTreeMap::new() }
    }

    fn one(&self) -> CycloPoly {
        self.constant(self.base.one())
    }

    fn add(&self, a: &CycloPoly, b: &CycloPoly) -> CycloPoly {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            self.insert(&mut terms, *m, c.clone());
        }
        CycloPoly { terms }
    }

    fn sub(&self, a: &CycloPoly, b: &CycloPoly) -> CycloPoly {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &CycloPoly, b: &CycloPoly) -> CycloPoly {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut m = *ma;
                for i in 0..NVARS {
                    m[i] += mb[i];
                }
                self.insert(&mut terms, m, self.base.mul(ca, cb));
            }
        }
        CycloPoly { terms }
    }

    fn neg(&self, a: &CycloPoly) -> CycloPoly {
        CycloPoly { terms: a.terms.iter().map(|(m, c)| (*m, self.base.neg(c))).collect() }
    }

    fn from_i64(&self, n: i64) -> CycloPoly {
        self.constant(self.base.from_i64(n))
    }

    fn is_zero(&self, a: &CycloPoly) -> bool {
        a.terms.is_empty()
    }
}
