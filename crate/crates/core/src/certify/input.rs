//! TOML input files for the pipelines.
//!
//! Ternary forms are lists of `[e_x, e_y, e_z, coefficient]` rows; points are
//! integer triples `[x, y, z]`.

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::integers::IntegerRing;
use crate::algebra::ternary::TernaryForm;
use crate::curves::plane::PlaneCurve;
use crate::error::{Error, Result};

pub type FormRows = Vec<[i64; 4]>;

pub fn parse<T: DeserializeOwned>(s: &str) -> Result<T> {
    toml::from_str(s).map_err(|e| Error::InvalidInput(e.message().to_string()))
}

/// Integer form from monomial rows; the degree is read off the first row.
pub fn form_from_rows(rows: &[[i64; 4]]) -> Result<TernaryForm<BigInt>> {
    let first = rows.first().ok_or_else(|| Error::InvalidInput("empty form".into()))?;
    let exps = |r: &[i64; 4]| -> Result<[u32; 3]> {
        let mut out = [0u32; 3];
        for i in 0..3 {
            out[i] = u32::try_from(r[i]).map_err(|_| Error::InvalidInput(format!("bad exponent in {r:?}")))?;
        }
        Ok(out)
    };
    let degree = exps(first)?.iter().sum();
    let mut terms = Vec::with_capacity(rows.len());
    for r in rows {
        terms.push((exps(r)?, BigInt::from(r[3])));
    }
    TernaryForm::from_terms(&IntegerRing, degree, terms)
}

pub fn curve_from_rows(p: u64, rows: &[[i64; 4]]) -> Result<PlaneCurve> {
    PlaneCurve::reduce(p, &form_from_rows(rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoncyclicInput {
    pub p: u64,
    pub d: u64,
    pub f1: FormRows,
    pub f2: FormRows,
    pub p0: [i64; 3],
    pub p1: [i64; 3],
    /// Unit that is not a `d`-th power; the least such residue if absent.
    #[serde(default)]
    pub u: Option<u64>,
    /// Also compute all local invariants of `(f2, u)` on `C1`.
    #[serde(default)]
    pub invariant_vector: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodredInput {
    pub p: u64,
    pub n: u64,
    /// A smooth plane cubic; a pseudorandom Weierstrass cubic from the seed if absent.
    #[serde(default)]
    pub cubic: Option<FormRows>,
    /// Origin of the group law (a rational flex); the first flex if absent.
    #[serde(default)]
    pub origin: Option<[i64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndecInput {
    #[serde(alias = "q")]
    pub p: u64,
    pub cubic: FormRows,
    #[serde(default)]
    pub origin: Option<[i64; 3]>,
    pub m_max: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TateInput {
    pub p: u64,
    /// `q = p^a` times a unit; only the trivial unit is supported.
    pub a: u64,
    pub m: u64,
    #[serde(default = "default_precision")]
    pub precision: usize,
}

fn default_precision() -> usize {
    30
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsVerifyInput {
    pub p: u64,
    /// Run the slower experimental identities as well.
    #[serde(default)]
    pub deep: bool,
    /// Perturb one stored constant to check that the suite can fail.
    #[serde(default)]
    pub mutation: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        let s = "p = 19\nd = 3\nf1 = [[0,2,1,1],[3,0,0,-1]]\nf2 = [[2,0,1,1]]\np0 = [-1,3,1]\np1 = [1,0,1]\n";
        let inp: NoncyclicInput = parse(s).unwrap();
        assert_eq!(inp.u, None);
        assert_eq!(form_from_rows(&inp.f1).unwrap().degree(), 3);
        assert!(parse::<NoncyclicInput>(&format!("{s}extra = 1\n")).is_err());
        assert!(form_from_rows(&[[1, 0, 0, 1], [2, 0, 0, 1]]).is_err());
        assert!(form_from_rows(&[[-1, 0, 0, 1]]).is_err());
        let t: TateInput = parse("p = 5\na = 1\nm = 25\n").unwrap();
        assert_eq!(t.precision, 30);
        let i: IndecInput = parse("q = 3\ncubic = [[3,0,0,1]]\nm_max = 6\n").unwrap();
        assert_eq!(i.p, 3);
    }
}
