//! Functions on a cubic given as products of forms, Miller's construction
//! of a function with prescribed principal divisor, and the search for
//! three closed points of equal degree with principal differences.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::algebra::gf::{build_ext_field, common_degree, embed, ExtField, Gf};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::ternary::TernaryForm;
use crate::error::{Error, Result};

use super::elliptic::{line_through, tangent_line, CubicModel};
use super::local::{form_order, LaurentData};
use super::plane::{enumerate_points, PlaneCurve};
use super::point::{format_elem, ClosedPoint, ProjPoint};

/// `c * prod G_i^{e_i}` over `F_{p^M}` with `sum e_i deg G_i = 0`, a rational
/// function on the plane restricted to a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProductFunction {
    field: ExtField,
    scalar: Gf,
    factors: Vec<(TernaryForm<Gf>, i64)>,
}

impl LineProductFunction {
    pub fn constant(field: &ExtField, c: Gf) -> Result<Self> {
        if field.is_zero(&c) {
            return Err(Error::ZeroElement);
        }
        Ok(Self { field: field.clone(), scalar: c, factors: Vec::new() })
    }

    pub fn one(field: &ExtField) -> Self {
        Self { field: field.clone(), scalar: field.one(), factors: Vec::new() }
    }

    pub fn from_factors(field: &ExtField, scalar: Gf, factors: Vec<(TernaryForm<Gf>, i64)>) -> Result<Self> {
        let mut out = Self::constant(field, scalar)?;
        for (g, e) in factors {
            out.push(g, e);
        }
        let balance = out.degree_balance();
        if balance != 0 {
            return Err(Error::DegreeNonzero(balance));
        }
        Ok(out)
    }

    /// `num / den` for two forms of equal degree.
    pub fn ratio(field: &ExtField, num: TernaryForm<Gf>, den: TernaryForm<Gf>) -> Result<Self> {
        Self::from_factors(field, field.one(), vec![(num, 1), (den, -1)])
    }

    fn push(&mut self, g: TernaryForm<Gf>, e: i64) {
        if e == 0 || g.degree() == 0 {
            if g.degree() == 0 && e != 0 {
                let c = g.coeff(&self.field, [0, 0, 0]);
                let ce = if e > 0 { self.field.pow(&c, e as u128) } else { self.field.inv(&self.field.pow(&c, (-e) as u128)).expect("nonzero") };
                self.scalar = self.field.mul(&self.scalar, &ce);
            }
            return;
        }
        if let Some(i) = self.factors.iter().position(|(h, _)| *h == g) {
            self.factors[i].1 += e;
            if self.factors[i].1 == 0 {
                self.factors.remove(i);
            }
        } else {
            self.factors.push((g, e));
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn scalar(&self) -> &Gf {
        &self.scalar
    }

    pub fn factors(&self) -> &[(TernaryForm<Gf>, i64)] {
        &self.factors
    }

    pub fn degree_balance(&self) -> i64 {
        self.factors.iter().map(|(g, e)| i64::from(g.degree()) * e).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn embed_into(&self, big: &ExtField) -> Result<Self> {
        let s = embed(&self.field, big, &self.scalar)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for (g, e) in &self.factors {
            let mut terms = Vec::new();
            for (m, c) in g.terms() {
                terms.push((*m, embed(&self.field, big, c)?));
            }
            factors.push((TernaryForm::from_terms(big, g.degree(), terms)?, *e));
        }
        Ok(Self { field: big.clone(), scalar: s, factors })
    }

    fn to_common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.field == other.field {
            return Ok((self.clone(), other.clone()));
        }
        let big = build_ext_field(self.field.p(), common_degree(self.field.m(), other.field.m()))?;
        Ok((self.embed_into(&big)?, other.embed_into(&big)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.to_common(other)?;
        a.scalar = a.field.mul(&a.scalar, &b.scalar);
        for (g, e) in b.factors {
            a.push(g, e);
        }
        Ok(a)
    }

    pub fn pow(&self, k: i64) -> Self {
        let f = &self.field;
        let s = f.pow(&self.scalar, u128::from(k.unsigned_abs()));
        let scalar = if k < 0 { f.inv(&s).expect("nonzero") } else { s };
        let factors = if k == 0 { Vec::new() } else { self.factors.iter().map(|(g, e)| (g.clone(), e * k)).collect() };
        Self { field: f.clone(), scalar, factors }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn scale(&self, c: &Gf) -> Self {
        let mut out = self.clone();
        out.scalar = self.field.mul(&self.scalar, c);
        out
    }

    /// Valuation and leading coefficient at a geometric point, over the
    /// compositum of the point's field and the function's field.
    pub fn laurent_at(&self, curve: &PlaneCurve, pt: &ProjPoint) -> Result<LaurentData> {
        let k = common_degree(self.field.m(), pt.field().m());
        let big = build_ext_field(self.field.p(), k)?;
        let me = if self.field == big { self.clone() } else { self.embed_into(&big)? };
        let q = if *pt.field() == big { pt.clone() } else { pt.embed_into(&big)? };
        let mut acc = LaurentData::new(&big, 0, me.scalar.clone())?;
        for (g, e) in &me.factors {
            let (v, lead) = form_order(curve, &q, g)?;
            let ld = LaurentData::new(&big, i64::from(v), lead)?;
            let ld = if *e > 0 { ld } else { ld.inv() };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&ld);
            }
        }
        Ok(acc)
    }

    /// Laurent data at a closed point, with the leading coefficient in `kappa(P)`.
    pub fn laurent_at_closed(&self, curve: &PlaneCurve, pt: &ClosedPoint) -> Result<LaurentData> {
        self.laurent_at(curve, pt.representative())?.restrict_to(pt.residue_field())
    }

    /// Closed points of the curve where some factor vanishes: the support of
    /// the divisor of the function (possibly with cancellation).
    pub fn support(&self, curve: &PlaneCurve) -> Result<Vec<ClosedPoint>> {
        let mut set = BTreeSet::new();
        for (g, _) in &self.factors {
            for cp in form_zeros(curve, &self.field, g)? {
                set.insert(cp);
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Value at a point where the function is a unit.
    pub fn eval(&self, curve: &PlaneCurve, pt: &ProjPoint) -> Result<Option<Gf>> {
        let ld = self.laurent_at(curve, pt)?;
        Ok((ld.valuation == 0).then_some(ld.unit))
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "field_degree": f.m(),
            "scalar": format_elem(f, &self.scalar),
            "factors": self.factors.iter().map(|(g, e)| json!({
                "form": g.to_json(|c| format_elem(f, c)),
                "exponent": e,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Closed points where a form vanishes on the curve. Lines are handled over
/// any field; higher-degree forms must have prime-field coefficients.
pub fn form_zeros(curve: &PlaneCurve, field: &ExtField, g: &TernaryForm<Gf>) -> Result<Vec<ClosedPoint>> {
    let mut out = BTreeSet::new();
    if g.degree() == 1 {
        let l = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|m| g.coeff(field, m));
        let e: [[Gf; 3]; 3] = [
            [field.one(), field.zero(), field.zero()],
            [field.zero(), field.one(), field.zero()],
            [field.zero(), field.zero(), field.one()],
        ];
        // two distinct points on the line
        let mut on_line = Vec::new();
        for v in &e {
            let r = [
                field.sub(&field.mul(&l[1], &v[2]), &field.mul(&l[2], &v[1])),
                field.sub(&field.mul(&l[2], &v[0]), &field.mul(&l[0], &v[2])),
                field.sub(&field.mul(&l[0], &v[1]), &field.mul(&l[1], &v[0])),
            ];
            if r.iter().all(|c| field.is_zero(c)) {
                continue;
            }
            let pt = ProjPoint::new(field, r)?;
            if !on_line.contains(&pt) {
                on_line.push(pt);
            }
        }
        let (a, b) = (&on_line[0], &on_line[1]);
        let form = curve.form_over(field);
        let restricted = form.restrict_to_line(field, a.coords(), b.coords());
        if restricted.is_empty() {
            return Err(Error::Indeterminate("line is a component of the curve".into()));
        }
        if restricted.len() <= curve.degree() as usize {
            out.insert(ClosedPoint::from_point(b)?);
        }
        for (big, roots) in crate::algebra::gf::all_roots(field, &restricted)? {
            let (a2, b2) = (a.embed_into(&big)?, b.embed_into(&big)?);
            for t in roots {
                let c = [0, 1, 2].map(|i| big.add(&a2.coords()[i], &big.mul(&t, &b2.coords()[i])));
                out.insert(ClosedPoint::from_point(&ProjPoint::new(&big, c)?)?);
            }
        }
        return Ok(out.into_iter().collect());
    }
    if field.m() != 1 {
        return Err(Error::Unsupported("zeros of nonlinear forms over extension fields".into()));
    }
    let h = PlaneCurve::new(curve.p(), g.map(&crate::algebra::fp::PrimeField::new(curve.p())?, |c| c.0[0]))?;
    let report = super::plane::normal_crossings_profile(curve, &h)?;
    Ok(report.points.into_iter().map(|i| i.point).collect())
}

/// A formal sum of closed points.
pub type Divisor = Vec<(ClosedPoint, i64)>;

pub fn divisor_degree(d: &Divisor) -> i64 {
    d.iter().map(|(p, n)| n * i64::from(p.degree())).sum()
}

/// Geometric points of a divisor over `F_{p^M}` with merged coefficients.
pub fn geometric_support(d: &Divisor, big: &ExtField) -> Result<BTreeMap<[u128; 3], (ProjPoint, i64)>> {
    let mut out: BTreeMap<[u128; 3], (ProjPoint, i64)> = BTreeMap::new();
    for (p, n) in d {
        for q in p.geometric_points(big)? {
            let e = out.entry(q.sort_key()).or_insert((q, 0));
            e.1 += n;
        }
    }
    out.retain(|_, (_, n)| *n != 0);
    Ok(out)
}

/// A function whose divisor on `E` is exactly `D`, normalized to have
/// leading coefficient 1 at the origin with respect to its rational local
/// parameter.
pub fn function_with_divisor(e: &CubicModel, d: &Divisor) -> Result<LineProductFunction> {
    let deg = divisor_degree(d);
    if deg != 0 {
        return Err(Error::DegreeNonzero(deg));
    }
    let m = d.iter().fold(1, |acc, (p, _)| common_degree(acc, p.degree()));
    let big = build_ext_field(e.p(), m)?;
    let support = geometric_support(d, &big)?;
    let o = e.origin_in(&big);
    let mut sum = o.clone();
    for (pt, n) in support.values() {
        sum = e.add(&sum, &e.mul(pt, i128::from(*n))?)?;
    }
    if sum != o {
        return Err(Error::NotPrincipal);
    }
    let v_o = tangent_line(e.curve(), &o);
    let vertical = |r: &ProjPoint| if *r == o { v_o.clone() } else { line_through(&o, r) };
    let mut g = LineProductFunction::one(&big);
    let mut s = o.clone();
    for (t, n) in support.values() {
        if *t == o {
            continue;
        }
        let step_pt = if *n > 0 { t.clone() } else { e.neg(t)? };
        for _ in 0..n.unsigned_abs() {
            // div(l / v) = [S] + [T] - [S+T] - [O]
            let l = if s == step_pt { tangent_line(e.curve(), &s) } else { line_through(&s, &step_pt) };
            let r = e.add(&s, &step_pt)?;
            g.push(l, 1);
            g.push(vertical(&r), -1);
            if *n < 0 {
                // [-T] - [O] = -([T] - [O]) + div(v_T / v_O)
                g.push(vertical(t), -1);
                g.push(v_o.clone(), 1);
            }
            s = r;
        }
    }
    debug_assert_eq!(s, o);
    let lead = g.laurent_at(e.curve(), &o)?;
    let g = g.scale(&big.inv(&lead.unit).expect("unit"));
    for (pt, n) in support.values() {
        let v = g.laurent_at(e.curve(), pt)?.valuation;
        if v != *n {
            return Err(Error::Indeterminate(format!("valuation audit failed at {pt:?}: {v} != {n}")));
        }
    }
    if !support.contains_key(&o.sort_key()) && g.laurent_at(e.curve(), &o)?.valuation != 0 {
        return Err(Error::Indeterminate("valuation audit failed at the origin".into()));
    }
    Ok(g)
}

/// All closed points of exact degree `m`, in canonical order.
pub fn closed_points_of_degree(c: &PlaneCurve, m: u32, budget: u128) -> Result<Vec<ClosedPoint>> {
    let mut set = BTreeSet::new();
    for pt in enumerate_points(c, m, budget)? {
        if pt.min_degree() == m {
            set.insert(ClosedPoint::from_point(&pt)?);
        }
    }
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct SplitTriple {
    pub m: u32,
    pub p_inf: ClosedPoint,
    pub p1: ClosedPoint,
    pub p2: ClosedPoint,
    /// Common trace of the three points in `E(F_q)`.
    pub trace: ProjPoint,
    /// `div(f1) = [P1] - [P_inf]`, `div(f2) = [P2] - [P_inf]`.
    pub f1: LineProductFunction,
    pub f2: LineProductFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub m: u32,
    pub closed_points: usize,
    pub pigeonhole: bool,
}

#[derive(Clone, Debug)]
pub struct SplitSearch {
    pub triple: Option<SplitTriple>,
    pub counts: Vec<CountRow>,
    pub base_group_order: u128,
}

impl SplitSearch {
    pub fn counts_json(&self) -> Value {
        json!(self
            .counts
            .iter()
            .map(|r| json!({ "m": r.m, "closed_points": r.closed_points, "exceeds_twice_group_order": r.pigeonhole }))
            .collect::<Vec<_>>())
    }
}

/// Smallest `m <= m_max` accepted by `allow` with three distinct closed
/// points of degree `m` having equal traces; ties broken by canonical order.
pub fn find_split_triple(e: &CubicModel, m_max: u32, budget: u128, allow: impl Fn(u32) -> bool) -> Result<SplitSearch> {
    let n1 = e.base_count();
    let mut counts = Vec::new();
    for m in 1..=m_max {
        if !allow(m) {
            continue;
        }
        let pts = closed_points_of_degree(e.curve(), m, budget)?;
        counts.push(CountRow { m, closed_points: pts.len(), pigeonhole: pts.len() as u128 > 2 * n1 });
        let mut buckets: BTreeMap<[u128; 3], Vec<ClosedPoint>> = BTreeMap::new();
        let mut hit = None;
        for cp in pts {
            let t = e.trace_to_base(cp.representative())?;
            let b = buckets.entry(t.sort_key()).or_default();
            b.push(cp);
            if b.len() == 3 {
                hit = Some((t, b.clone()));
                break;
            }
        }
        if let Some((trace, b)) = hit {
            let (p_inf, p1, p2) = (b[0].clone(), b[1].clone(), b[2].clone());
            let f1 = function_with_divisor(e, &vec![(p1.clone(), 1), (p_inf.clone(), -1)])?;
            let f2 = function_with_divisor(e, &vec![(p2.clone(), 1), (p_inf.clone(), -1)])?;
            let triple = SplitTriple { m, p_inf, p1, p2, trace, f1, f2 };
            return Ok(SplitSearch { triple: Some(triple), counts, base_group_order: n1 });
        }
    }
    Ok(SplitSearch { triple: None, counts, base_group_order: n1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::elliptic::tests::{c1, cubic};
    use rand::{Rng, SeedableRng};

    fn cp(p: u64, xyz: [i64; 3]) -> ClosedPoint {
        ClosedPoint::from_point(&ProjPoint::from_ints(p, xyz).unwrap()).unwrap()
    }

    #[test]
    fn flex_divisor_is_a_ratio_of_tangents() {
        let e = c1(19);
        let p1 = cp(19, [1, 0, 1]);
        let inf = cp(19, [0, 1, 0]);
        let g = function_with_divisor(&e, &vec![(p1.clone(), 3), (inf.clone(), -3)]).unwrap();
        let f = build_ext_field(19, 1).unwrap();
        let h = LineProductFunction::ratio(&f, tangent_line(e.curve(), p1.representative()), tangent_line(e.curve(), inf.representative())).unwrap();
        let pts = enumerate_points(e.curve(), 1, 1 << 20).unwrap();
        let mut ratio = None;
        for pt in &pts {
            if let (Some(a), Some(b)) = (g.eval(e.curve(), pt).unwrap(), h.eval(e.curve(), pt).unwrap()) {
                let r = f.div(&a, &b).unwrap();
                assert_eq!(*ratio.get_or_insert(r.clone()), r);
            }
        }
        assert!(function_with_divisor(&e, &vec![]).unwrap().is_constant());
        assert_eq!(function_with_divisor(&e, &vec![(p1.clone(), 1), (inf.clone(), -1)]).unwrap_err(), Error::NotPrincipal);
        assert_eq!(function_with_divisor(&e, &vec![(p1, 1)]).unwrap_err(), Error::DegreeNonzero(1));
    }

    #[test]
    fn random_audit_off_support() {
        let e = c1(11);
        let rational = enumerate_points(e.curve(), 1, 1 << 20).unwrap();
        let quad = closed_points_of_degree(e.curve(), 2, 1 << 20).unwrap();
        let all = enumerate_points(e.curve(), 2, 1 << 20).unwrap();
        let o = ClosedPoint::from_point(e.origin()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..4 {
            let a = &rational[rng.gen_range(0..rational.len())];
            let b = &rational[rng.gen_range(0..rational.len())];
            let s = e.neg(&e.add(a, b).unwrap()).unwrap();
            // [A] + [B] + [-(A+B)] - 3[O]
            let chord: Divisor =
                [a, b, &s].iter().map(|x| (ClosedPoint::from_point(x).unwrap(), 1)).chain([(o.clone(), -3)]).collect();
            // [Q] - [Tr Q] - [O] for a degree-2 point Q
            let q = quad[rng.gen_range(0..quad.len())].clone();
            let t = ClosedPoint::from_point(&e.trace_to_base(q.representative()).unwrap()).unwrap();
            let orbit: Divisor = vec![(q, 1), (t, -1), (o.clone(), -1)];
            for d in [chord, orbit] {
                let g = function_with_divisor(&e, &d).unwrap();
                let big = build_ext_field(11, 2).unwrap();
                let support = geometric_support(&d, &big).unwrap();
                for _ in 0..20 {
                    let x = &all[rng.gen_range(0..all.len())];
                    let want = support.get(&x.sort_key()).map(|v| v.1).unwrap_or(0);
                    assert_eq!(g.laurent_at(e.curve(), x).unwrap().valuation, want);
                }
            }
        }
    }

    #[test]
    fn vertical_chord() {
        let e = c1(19);
        let p = ProjPoint::from_ints(19, [-1, 3, 1]).unwrap();
        let np = e.neg(&p).unwrap();
        let o = ClosedPoint::from_point(e.origin()).unwrap();
        let d = vec![(ClosedPoint::from_point(&p).unwrap(), 1), (ClosedPoint::from_point(&np).unwrap(), 1), (o, -2)];
        let g = function_with_divisor(&e, &d).unwrap();
        let f = build_ext_field(19, 1).unwrap();
        let line = line_through(&p, e.origin());
        let h = LineProductFunction::ratio(&f, line, tangent_line(e.curve(), e.origin())).unwrap();
        let q = enumerate_points(e.curve(), 1, 1 << 20).unwrap();
        let vals: BTreeSet<Gf> = q
            .iter()
            .filter_map(|pt| match (g.eval(e.curve(), pt).unwrap(), h.eval(e.curve(), pt).unwrap()) {
                (Some(a), Some(b)) => Some(f.div(&a, &b).unwrap()),
                _ => None,
            })
            .collect();
        assert_eq!(vals.len(), 1);
    }

    #[test]
    fn split_triple_over_f3() {
        // y^2 z + y z^2 = x^3 - x z^2 over F_3
        let c = cubic(3, &[([0, 2, 1], 1), ([0, 1, 2], 1), ([3, 0, 0], -1), ([1, 0, 2], 1)]);
        let e = CubicModel::new(c, ProjPoint::from_ints(3, [0, 1, 0]).unwrap()).unwrap();
        assert!(find_split_triple(&e, 0, 1 << 30, |_| true).unwrap().triple.is_none());
        let s = find_split_triple(&e, 6, 1 << 30, |m| m % 3 != 0).unwrap();
        let t = s.triple.expect("triple");
        assert!(t.m <= 6);
        for p in [&t.p_inf, &t.p1, &t.p2] {
            assert_eq!(p.degree(), t.m);
            assert_eq!(e.trace_to_base(p.representative()).unwrap(), t.trace);
        }
        assert!(t.p_inf != t.p1 && t.p1 != t.p2 && t.p_inf != t.p2);
        // brute-force oracle: no smaller admissible m has three equal traces
        for row in &s.counts[..s.counts.len() - 1] {
            let pts = closed_points_of_degree(e.curve(), row.m, 1 << 30).unwrap();
            let mut h: BTreeMap<_, usize> = BTreeMap::new();
            for p in &pts {
                *h.entry(e.trace_to_base(p.representative()).unwrap().sort_key()).or_default() += 1;
            }
            assert!(h.values().all(|&k| k < 3));
        }
    }
}
