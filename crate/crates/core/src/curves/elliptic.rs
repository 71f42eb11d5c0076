//! Smooth plane cubics with a flex origin: the chord-tangent group law,
//! group structure, and traces of points down to the base field.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::gf::{build_ext_field, common_degree, ExtField, Gf};
use crate::algebra::integers::{factorize, gcd_u128};
use crate::algebra::ring::Ring;
use crate::algebra::ternary::TernaryForm;
use crate::error::{Error, Result};

use super::plane::{certify_smooth, enumerate_points, second_point_on_line, tangent_and_flex, PlaneCurve, DEFAULT_BUDGET};
use super::point::ProjPoint;

/// A smooth plane cubic with a rational flex `O` as origin.
#[derive(Clone, Debug)]
pub struct CubicModel {
    curve: PlaneCurve,
    origin: ProjPoint,
    base_count: u128,
}

impl CubicModel {
    pub fn new(curve: PlaneCurve, origin: ProjPoint) -> Result<Self> {
        if curve.degree() != 3 {
            return Err(Error::InvalidInput(format!("expected a cubic, got degree {}", curve.degree())));
        }
        if origin.field().m() != 1 {
            return Err(Error::InvalidInput("origin must be rational over the base field".into()));
        }
        if !certify_smooth(&curve)?.is_smooth() {
            return Err(Error::SingularPoint);
        }
        let t = tangent_and_flex(&curve, &origin)?;
        if !t.is_flex {
            return Err(Error::InvalidInput("origin is not a flex".into()));
        }
        let base_count = enumerate_points(&curve, 1, DEFAULT_BUDGET)?.len() as u128;
        Ok(Self { curve, origin, base_count })
    }

    /// Use the first rational flex in enumeration order as origin.
    pub fn with_first_flex(curve: PlaneCurve) -> Result<Self> {
        let pts = enumerate_points(&curve, 1, DEFAULT_BUDGET)?;
        for pt in pts {
            if tangent_and_flex(&curve, &pt).map(|t| t.is_flex).unwrap_or(false) {
                return Self::new(curve, pt);
            }
        }
        Err(Error::InvalidInput("no rational flex".into()))
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn p(&self) -> u64 {
        self.curve.p()
    }

    pub fn base_count(&self) -> u128 {
        self.base_count
    }

    pub fn origin_in(&self, field: &ExtField) -> ProjPoint {
        self.origin.embed_into(field).expect("prime field embeds everywhere")
    }

    pub fn origin(&self) -> &ProjPoint {
        &self.origin
    }

    /// Tangent line at the origin.
    pub fn origin_tangent(&self, field: &ExtField) -> TernaryForm<Gf> {
        tangent_line(&self.curve, &self.origin_in(field))
    }

    /// `|E(F_{p^m})|` from the base count through the Frobenius trace recurrence.
    pub fn group_order(&self, m: u32) -> u128 {
        let p = i128::from(self.p());
        let a = p + 1 - self.base_count as i128;
        let (mut s0, mut s1) = (2i128, a);
        for _ in 1..m {
            let s2 = a * s1 - p * s0;
            s0 = s1;
            s1 = s2;
        }
        (p.pow(m) + 1 - s1) as u128
    }

    fn check(&self, pt: &ProjPoint) -> Result<()> {
        if self.curve.contains(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// Bring two points to a common field.
    pub fn common(&self, a: &ProjPoint, b: &ProjPoint) -> Result<(ProjPoint, ProjPoint)> {
        if a.field() == b.field() {
            return Ok((a.clone(), b.clone()));
        }
        let k = common_degree(a.field().m(), b.field().m());
        let f = build_ext_field(self.p(), k)?;
        Ok((a.embed_into(&f)?, b.embed_into(&f)?))
    }

    /// Third intersection of the line through `a` and `b` (the tangent if equal).
    pub fn third_point(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
        self.check(a)?;
        self.check(b)?;
        let (a, b) = self.common(a, b)?;
        let f = a.field().clone();
        let form = self.curve.form_over(&f);
        let pa = a.coords();
        let (dir, c_lo, c_hi) = if a == b {
            let grad = self.curve.gradient_at(&a);
            let r = second_point_on_line(&f, &grad, pa);
            let g = form.restrict_to_line(&f, pa, &r);
            (r, coeff(&f, &g, 2), coeff(&f, &g, 3))
        } else {
            let g = form.restrict_to_line(&f, pa, b.coords());
            (b.coords().clone(), coeff(&f, &g, 1), coeff(&f, &g, 2))
        };
        // F(sA + tR) = s t^2 (c_lo s + c_hi t) up to the known roots: third root at (c_hi : -c_lo).
        let coords = [0, 1, 2].map(|i| f.sub(&f.mul(&c_hi, &pa[i]), &f.mul(&c_lo, &dir[i])));
        ProjPoint::new(&f, coords)
    }

    pub fn neg(&self, a: &ProjPoint) -> Result<ProjPoint> {
        let o = self.origin_in(a.field());
        self.third_point(&o, a)
    }

    pub fn add(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
        let r = self.third_point(a, b)?;
        let o = self.origin_in(r.field());
        self.third_point(&o, &r)
    }

    pub fn sub(&self, a: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
        self.add(a, &self.neg(b)?)
    }

    pub fn is_origin(&self, a: &ProjPoint) -> bool {
        *a == self.origin_in(a.field())
    }

    pub fn mul(&self, a: &ProjPoint, n: i128) -> Result<ProjPoint> {
        self.check(a)?;
        let mut base = if n < 0 { self.neg(a)? } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.origin_in(a.field());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Order of a point, by descent from the group order of its field.
    pub fn point_order(&self, a: &ProjPoint) -> Result<u128> {
        let n = self.group_order(a.field().m());
        self.order_dividing(a, n)
    }

    fn order_dividing(&self, a: &ProjPoint, n: u128) -> Result<u128> {
        let mut ord = n;
        for (q, _) in factorize(n) {
            while ord % q == 0 && self.is_origin(&self.mul(a, (ord / q) as i128)?) {
                ord /= q;
            }
        }
        debug_assert!(self.is_origin(&self.mul(a, ord as i128)?));
        Ok(ord)
    }

    /// `sum_{i<m} Frob^i(P)`, a point over the base field.
    pub fn trace_to_base(&self, a: &ProjPoint) -> Result<ProjPoint> {
        self.check(a)?;
        let mut acc = self.origin_in(a.field());
        let mut cur = a.clone();
        for _ in 0..a.field().m() {
            acc = self.add(&acc, &cur)?;
            cur = cur.frobenius();
        }
        let base = build_ext_field(self.p(), 1)?;
        Ok(acc.restrict_to(&base)?.expect("trace is fixed by Frobenius"))
    }

    pub fn to_json(&self) -> Value {
        json!({ "curve": self.curve.to_json(), "origin": self.origin.coordinate_strings() })
    }
}

fn coeff(f: &ExtField, g: &[Gf], k: usize) -> Gf {
    g.get(k).cloned().unwrap_or_else(|| f.zero())
}

/// Tangent line at a smooth point, normalized with leading coefficient 1.
pub fn tangent_line(curve: &PlaneCurve, pt: &ProjPoint) -> TernaryForm<Gf> {
    let f = pt.field();
    normalized_line(f, &curve.gradient_at(pt))
}

/// The line `a x + b y + c z` scaled so its first nonzero coefficient is 1.
pub fn normalized_line(f: &ExtField, abc: &[Gf; 3]) -> TernaryForm<Gf> {
    let p = ProjPoint::new(f, abc.clone()).expect("nonzero line");
    let [a, b, c] = p.coords().clone();
    TernaryForm::linear(f, a, b, c)
}

/// The line through two distinct points.
pub fn line_through(a: &ProjPoint, b: &ProjPoint) -> TernaryForm<Gf> {
    let f = a.field();
    let (u, v) = (a.coords(), b.coords());
    let cross = [
        f.sub(&f.mul(&u[1], &v[2]), &f.mul(&u[2], &v[1])),
        f.sub(&f.mul(&u[2], &v[0]), &f.mul(&u[0], &v[2])),
        f.sub(&f.mul(&u[0], &v[1]), &f.mul(&u[1], &v[0])),
    ];
    normalized_line(f, &cross)
}

/// Invariant factors `(a, b)`, `a | b`, of `E(F_{p^m})`, with the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: u128,
    pub a: u128,
    pub b: u128,
}

impl GroupStructure {
    /// `|E[n]| = gcd(n, a) gcd(n, b)`.
    pub fn torsion_count(&self, n: u128) -> u128 {
        gcd_u128(n, self.a) * gcd_u128(n, self.b)
    }
}

/// Group order by enumeration and invariant factors from the exponent.
pub fn ec_order_and_structure(e: &CubicModel, m: u32, budget: u128) -> Result<(GroupStructure, Vec<(ProjPoint, u128)>)> {
    let pts = enumerate_points(e.curve(), m, budget)?;
    let n = pts.len() as u128;
    let mut exponent = 1u128;
    let mut orders = Vec::with_capacity(pts.len());
    for pt in pts {
        let o = e.order_dividing(&pt, n)?;
        exponent = num_integer::lcm(exponent, o);
        orders.push((pt, o));
    }
    let gs = GroupStructure { order: n, a: n / exponent, b: exponent };
    debug_assert_eq!(gs.b % gs.a, 0);
    Ok((gs, orders))
}

/// Number of points killed by `n`, counted directly.
pub fn count_torsion(orders: &[(ProjPoint, u128)], n: u128) -> u128 {
    orders.iter().filter(|(_, o)| n % o == 0).count() as u128
}

/// Histogram of point orders.
pub fn order_histogram(orders: &[(ProjPoint, u128)]) -> BTreeMap<u128, usize> {
    let mut h = BTreeMap::new();
    for (_, o) in orders {
        *h.entry(*o).or_insert(0) += 1;
    }
    h
}
