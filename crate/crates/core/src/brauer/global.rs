//! Brauer classes over the function field of a curve, recorded by their
//! local invariants at closed points.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::algebra::abelian::Qz;
use crate::algebra::gf::{embed, Gf};
use crate::algebra::integers::gcd_u128;
use crate::curves::divisor::{Divisor, LineProductFunction};
use crate::curves::plane::PlaneCurve;
use crate::curves::point::ClosedPoint;
use crate::error::{Error, Result};

use super::local::{nakayama_index, symbol_invariant, UnramCharacter};

/// Finitely supported map from closed points to `Q/Z`. Zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantVector {
    entries: BTreeMap<ClosedPoint, Qz>,
}

impl InvariantVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (ClosedPoint, Qz)>) -> Self {
        let mut v = Self::new();
        for (p, a) in entries {
            v.add_at(p, a);
        }
        v
    }

    pub fn add_at(&mut self, p: ClosedPoint, a: Qz) {
        let cur = self.get(&p);
        let s = cur.add(&a);
        if s.is_zero() {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, s);
        }
    }

    pub fn get(&self, p: &ClosedPoint) -> Qz {
        self.entries.get(p).copied().unwrap_or_else(Qz::zero)
    }

    pub fn entries(&self) -> &BTreeMap<ClosedPoint, Qz> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, a) in &other.entries {
            out.add_at(p.clone(), *a);
        }
        out
    }

    pub fn scale(&self, k: i128) -> Self {
        Self::from_entries(self.entries.iter().map(|(p, a)| (p.clone(), a.mul_int(k))))
    }

    pub fn sum(&self) -> Qz {
        self.entries.values().fold(Qz::zero(), |acc, a| acc.add(a))
    }

    /// Restriction to an extension in which every support point has local degree `n`.
    pub fn restrict_local_degree(&self, n: u64) -> Self {
        self.scale(i128::from(n))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (p, a) in &self.entries {
            m.insert(p.key(), json!(a.to_string()));
        }
        Value::Object(m)
    }
}

/// Index of a class over a global field: lcm of the orders of its local invariants.
pub fn class_index(v: &InvariantVector) -> u128 {
    v.entries().values().fold(1u128, |acc, a| acc / gcd_u128(acc, a.order()) * a.order())
}

/// `(alpha, chi)` with `beta = alpha + δπ ∪ chi`; `alpha` is recorded by its
/// invariants over the extension cut out by `chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPair {
    pub alpha_restricted: InvariantVector,
    pub chi: UnramCharacter,
}

impl WittPair {
    pub fn index(&self) -> u128 {
        nakayama_index(self.chi.order, class_index(&self.alpha_restricted))
    }
}

/// `sum_i (f_i, g_i)_zeta` of degree `d`, with `zeta` in the prime field.
#[derive(Clone, Debug)]
pub struct SymbolClassSpec {
    pub d: u64,
    pub zeta: Gf,
    pub pairs: Vec<(LineProductFunction, LineProductFunction)>,
}

impl SymbolClassSpec {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.d,
            "zeta": self.zeta.0[0].to_string(),
            "pairs": self.pairs.iter().map(|(f, g)| json!([f.to_json(), g.to_json()])).collect::<Vec<_>>(),
        })
    }
}

/// Local invariants of a sum of symbol algebras at every closed point.
/// Fails with `ReciprocityViolation` if they do not sum to zero.
pub fn invariant_vector(spec: &SymbolClassSpec, curve: &PlaneCurve) -> Result<InvariantVector> {
    let base = curve.base_field();
    if base.mult_order(&spec.zeta)? != u128::from(spec.d) {
        return Err(Error::BadRoot(spec.d));
    }
    let mut support = BTreeSet::new();
    for (f, g) in &spec.pairs {
        support.extend(f.support(curve)?);
        support.extend(g.support(curve)?);
    }
    let mut out = InvariantVector::new();
    for pt in support {
        let kp = pt.residue_field();
        let zeta = embed(base, kp, &spec.zeta)?;
        for (f, g) in &spec.pairs {
            let a = f.laurent_at_closed(curve, &pt)?;
            let b = g.laurent_at_closed(curve, &pt)?;
            out.add_at(pt.clone(), symbol_invariant(&a, &b, &zeta, spec.d)?);
        }
    }
    let s = out.sum();
    if !s.is_zero() {
        return Err(Error::ReciprocityViolation(format!("sum {s} over {} points", out.entries().len())));
    }
    Ok(out)
}

/// Pairing of an unramified character with a divisor: `sum n_z deg(z) chi(Frob)`.
pub fn cft_pair(chi: &UnramCharacter, d: &Divisor) -> Qz {
    d.iter().fold(Qz::zero(), |acc, (p, n)| acc.add(&chi.value.mul_int(i128::from(*n) * i128::from(p.degree()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;
    use crate::algebra::ternary::TernaryForm;
    use crate::curves::elliptic::tests::c1;
    use crate::curves::elliptic::{line_through, tangent_line};
    use crate::curves::point::ProjPoint;

    #[test]
    fn index_and_pairing() {
        let p = ClosedPoint::from_point(&ProjPoint::from_ints(7, [0, 1, 0]).unwrap()).unwrap();
        let q = ClosedPoint::from_point(&ProjPoint::from_ints(7, [1, 0, 1]).unwrap()).unwrap();
        assert_eq!(class_index(&InvariantVector::new()), 1);
        let v = InvariantVector::from_entries([(p.clone(), Qz::new(1, 3)), (q.clone(), Qz::new(2, 3))]);
        assert_eq!(v.sum(), Qz::zero());
        assert_eq!(class_index(&v), 3);
        assert!(v.restrict_local_degree(3).is_zero());
        let chi = UnramCharacter::new(5, 1).unwrap();
        assert_eq!(cft_pair(&chi, &vec![(p.clone(), 1)]), Qz::new(1, 5));
        assert_eq!(cft_pair(&chi, &vec![(p.clone(), 1), (q, -1)]), Qz::zero());
        assert_eq!(cft_pair(&chi, &Vec::new()), Qz::zero());
        let w = WittPair { alpha_restricted: v, chi: UnramCharacter::new(3, 1).unwrap() };
        assert_eq!(w.index(), 9);
    }

    #[test]
    fn symbol_class_on_a_cubic() {
        let e = c1(19);
        let c = e.curve();
        let f = c.base_field().clone();
        let zeta = f.from_u64(7);
        let p1 = ProjPoint::from_ints(19, [1, 0, 1]).unwrap();
        let o = e.origin().clone();
        // tangent(P1) / tangent(O) has divisor 3[P1] - 3[O]
        let h = LineProductFunction::ratio(&f, tangent_line(c, &p1), tangent_line(c, &o)).unwrap();
        let u = LineProductFunction::constant(&f, f.from_u64(2)).unwrap();
        let spec = SymbolClassSpec { d: 3, zeta: zeta.clone(), pairs: vec![(h.clone(), u.clone())] };
        let v = invariant_vector(&spec, c).unwrap();
        // a cube times a constant: every invariant is 3 * (something) = 0
        assert!(v.is_zero());
        let q = ProjPoint::from_ints(19, [-1, 3, 1]).unwrap();
        let g = LineProductFunction::ratio(&f, line_through(&p1, &q), TernaryForm::linear(&f, f.zero(), f.zero(), f.one())).unwrap();
        let spec = SymbolClassSpec { d: 3, zeta, pairs: vec![(g, u.clone()), (h, u)] };
        let v = invariant_vector(&spec, c).unwrap();
        assert_eq!(v.sum(), Qz::zero());
        // div(g) = P1 + Q + R - 3 O and (pi, 2) has invariant 2/3 over F_19
        assert_eq!(class_index(&v), 3);
        assert!(v.get(&ClosedPoint::from_point(&o).unwrap()).is_zero());
        let one = LineProductFunction::one(&f);
        let spec = SymbolClassSpec { d: 3, zeta: f.from_u64(7), pairs: vec![(spec.pairs[0].0.clone(), one)] };
        assert!(invariant_vector(&spec, c).unwrap().is_zero());
    }
}
