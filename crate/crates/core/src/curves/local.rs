//! Local expansions of a plane curve at a smooth point and the Laurent
//! data (valuation, leading coefficient) of forms restricted to it.

use serde_json::{json, Value};

use crate::algebra::gf::{embed, restrict, ExtField, Gf};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::ternary::TernaryForm;
use crate::error::{Error, Result};

use super::plane::PlaneCurve;
use super::point::{format_elem, ProjPoint};

/// Power series over a finite field truncated to `prec` coefficients.
#[derive(Clone, Debug)]
pub struct SeriesRing {
    field: ExtField,
    prec: usize,
}

impl SeriesRing {
    pub fn new(field: ExtField, prec: usize) -> Self {
        Self { field, prec: prec.max(1) }
    }

    pub fn constant(&self, c: Gf) -> Vec<Gf> {
        let mut v = vec![self.field.zero(); self.prec];
        v[0] = c;
        v
    }

    /// `c + t`.
    pub fn shifted_t(&self, c: Gf) -> Vec<Gf> {
        let mut v = self.constant(c);
        if self.prec > 1 {
            v[1] = self.field.one();
        }
        v
    }
}

impl Ring for SeriesRing {
    type Elem = Vec<Gf>;

    fn zero(&self) -> Vec<Gf> {
        vec![self.field.zero(); self.prec]
    }

    fn one(&self) -> Vec<Gf> {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Vec<Gf>, b: &Vec<Gf>) -> Vec<Gf> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<Gf>, b: &Vec<Gf>) -> Vec<Gf> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    fn mul(&self, a: &Vec<Gf>, b: &Vec<Gf>) -> Vec<Gf> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.prec - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        out
    }

    fn neg(&self, a: &Vec<Gf>) -> Vec<Gf> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    fn from_i64(&self, n: i64) -> Vec<Gf> {
        self.constant(self.field.from_i64(n))
    }
}

/// Homogeneous coordinates of the curve near a smooth point `P`, as power
/// series in a local parameter `t`.
///
/// With `c` the chart of `P` (its first coordinate equal to 1) and `a`, `b`
/// the other two coordinates, the parameter is `t = X_a - P_a` when
/// `dF/dX_b (P) != 0`, and `t = X_b - P_b` otherwise.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub point: ProjPoint,
    pub param_index: usize,
    pub coords: [Vec<Gf>; 3],
}

pub fn local_expansion(curve: &PlaneCurve, pt: &ProjPoint, prec: usize) -> Result<LocalExpansion> {
    if !curve.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    let f = pt.field().clone();
    let grad = curve.gradient_at(pt);
    if grad.iter().all(|g| f.is_zero(g)) {
        return Err(Error::SingularPoint);
    }
    let c = pt.chart();
    let others: Vec<usize> = (0..3).filter(|&i| i != c).collect();
    let (a, b) = if !f.is_zero(&grad[others[1]]) { (others[0], others[1]) } else { (others[1], others[0]) };
    let denom = f.inv(&grad[b]).expect("nonzero partial");
    let sr = SeriesRing::new(f.clone(), prec);
    let form = curve.form_over(&f).map(&sr, |x| sr.constant(x.clone()));
    let mut coords: [Vec<Gf>; 3] = [sr.zero(), sr.zero(), sr.zero()];
    coords[c] = sr.one();
    coords[a] = sr.shifted_t(pt.coords()[a].clone());
    coords[b] = sr.constant(pt.coords()[b].clone());
    for k in 1..sr.prec {
        let e = form.eval(&sr, &coords);
        let ck = f.neg(&f.mul(&e[k], &denom));
        coords[b][k] = ck;
    }
    debug_assert!(form.eval(&sr, &coords).iter().all(|x| f.is_zero(x)));
    Ok(LocalExpansion { point: pt.clone(), param_index: a, coords })
}

/// Order of vanishing along the curve at `pt`, and leading coefficient, of a
/// form with coefficients in the field of `pt`.
pub fn form_order(curve: &PlaneCurve, pt: &ProjPoint, g: &TernaryForm<Gf>) -> Result<(u32, Gf)> {
    let f = pt.field();
    let prec = (g.degree() * curve.degree()) as usize + 1;
    let exp = local_expansion(curve, pt, prec)?;
    let sr = SeriesRing::new(f.clone(), prec);
    let gs = g.map(&sr, |x| sr.constant(x.clone()));
    let val = gs.eval(&sr, &exp.coords);
    match val.iter().position(|x| !f.is_zero(x)) {
        Some(k) => Ok((k as u32, val[k].clone())),
        None => Err(Error::Indeterminate(format!("form vanishes to order {prec} at {pt:?}"))),
    }
}

/// Valuation and leading coefficient of an element of a completed function
/// field, with respect to a fixed local parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentData {
    pub field: ExtField,
    pub valuation: i64,
    pub unit: Gf,
}

impl LaurentData {
    pub fn new(field: &ExtField, valuation: i64, unit: Gf) -> Result<Self> {
        if field.is_zero(&unit) {
            return Err(Error::ZeroElement);
        }
        Ok(Self { field: field.clone(), valuation, unit })
    }

    pub fn unit(field: &ExtField, u: Gf) -> Result<Self> {
        Self::new(field, 0, u)
    }

    pub fn uniformizer(field: &ExtField) -> Self {
        Self { field: field.clone(), valuation: 1, unit: field.one() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            field: self.field.clone(),
            valuation: self.valuation + other.valuation,
            unit: self.field.mul(&self.unit, &other.unit),
        }
    }

    pub fn inv(&self) -> Self {
        Self { field: self.field.clone(), valuation: -self.valuation, unit: self.field.inv(&self.unit).expect("unit") }
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), valuation: self.valuation, unit: self.field.neg(&self.unit) }
    }

    /// Re-express the leading coefficient in a subfield containing it.
    pub fn restrict_to(&self, small: &ExtField) -> Result<Self> {
        let u = restrict(small, &self.field, &self.unit)?
            .ok_or_else(|| Error::Indeterminate("leading coefficient is not in the residue field".into()))?;
        Ok(Self { field: small.clone(), valuation: self.valuation, unit: u })
    }

    pub fn embed_into(&self, big: &ExtField) -> Result<Self> {
        Ok(Self { field: big.clone(), valuation: self.valuation, unit: embed(&self.field, big, &self.unit)? })
    }

    pub fn to_json(&self) -> Value {
        json!({ "valuation": self.valuation, "unit": format_elem(&self.field, &self.unit) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::build_ext_field;
    use crate::algebra::ternary::TernaryForm;

    fn weierstrass(p: u64) -> PlaneCurve {
        // y^2 z = x^3 + x z^2 + z^3
        let fp = crate::algebra::fp::PrimeField::new(p).unwrap();
        let form = TernaryForm::from_terms(&fp, 3, [([0, 2, 1], 1), ([3, 0, 0], p - 1), ([1, 0, 2], p - 1), ([0, 0, 3], p - 1)]).unwrap();
        PlaneCurve::new(p, form).unwrap()
    }

    #[test]
    fn orders_at_the_flex_at_infinity() {
        let c = weierstrass(11);
        let f = build_ext_field(11, 1).unwrap();
        let o = ProjPoint::from_ints(11, [0, 1, 0]).unwrap();
        let x = TernaryForm::linear(&f, f.one(), f.zero(), f.zero());
        let z = TernaryForm::linear(&f, f.zero(), f.zero(), f.one());
        let y = TernaryForm::linear(&f, f.zero(), f.one(), f.zero());
        assert_eq!(form_order(&c, &o, &x).unwrap().0, 1);
        assert_eq!(form_order(&c, &o, &z).unwrap().0, 3);
        assert_eq!(form_order(&c, &o, &y).unwrap(), (0, f.one()));
        // x^2 z vanishes to order 5
        let x2z = x.mul(&f, &x).mul(&f, &z);
        assert_eq!(form_order(&c, &o, &x2z).unwrap().0, 5);
    }

    #[test]
    fn expansion_satisfies_the_equation() {
        let c = weierstrass(7);
        let f = build_ext_field(7, 1).unwrap();
        for pt in crate::curves::plane::enumerate_points(&c, 1, 1 << 20).unwrap() {
            let e = local_expansion(&c, &pt, 8).unwrap();
            let sr = SeriesRing::new(f.clone(), 8);
            let g = c.form_over(&f).map(&sr, |x| sr.constant(x.clone()));
            assert!(g.eval(&sr, &e.coords).iter().all(|x| f.is_zero(x)));
        }
    }
}
