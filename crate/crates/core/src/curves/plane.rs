//! Plane projective curves over prime fields: point enumeration,
//! smoothness certificates, intersection profiles, tangents and flexes.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::gf::{all_roots, build_ext_field, embed, embed_poly, ExtField, Gf};
use crate::algebra::integers::reduce_big;
use crate::algebra::poly::PolyRing;
use crate::algebra::ring::{FiniteField, Ring};
use crate::algebra::ternary::TernaryForm;
use crate::error::{Error, Result};

use super::point::{format_elem, ClosedPoint, ProjPoint};

/// Default cap on the enumeration size `q^{2m}`.
pub const DEFAULT_BUDGET: u128 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    base: ExtField,
    form: TernaryForm<u64>,
}

impl PlaneCurve {
    pub fn new(p: u64, form: TernaryForm<u64>) -> Result<Self> {
        let base = build_ext_field(p, 1)?;
        if form.is_zero() {
            return Err(Error::InvalidInput("the zero form does not define a curve".into()));
        }
        if form.terms().values().any(|&c| c >= p) {
            return Err(Error::InvalidInput("coefficients must be reduced mod p".into()));
        }
        Ok(Self { base, form })
    }

    /// Reduction mod `p` of an integral form.
    pub fn reduce(p: u64, form: &TernaryForm<BigInt>) -> Result<Self> {
        let fp = crate::algebra::fp::PrimeField::new(p)?;
        let reduced = form.map(&fp, |c| reduce_big(c, p));
        Self::new(p, reduced)
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn base_field(&self) -> &ExtField {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn form(&self) -> &TernaryForm<u64> {
        &self.form
    }

    pub fn form_over(&self, field: &ExtField) -> TernaryForm<Gf> {
        self.form.map(field, |&c| field.from_u64(c))
    }

    pub fn contains(&self, pt: &ProjPoint) -> bool {
        let f = pt.field();
        f.is_zero(&self.form_over(f).eval(f, pt.coords()))
    }

    pub fn gradient_at(&self, pt: &ProjPoint) -> [Gf; 3] {
        let f = pt.field();
        self.form_over(f).gradient(f).map(|g| g.eval(f, pt.coords()))
    }

    pub fn is_singular_at(&self, pt: &ProjPoint) -> bool {
        let f = pt.field();
        self.contains(pt) && self.gradient_at(pt).iter().all(|c| f.is_zero(c))
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p(), "degree": self.degree(), "form": self.form.to_json(|c| c.to_string()) })
    }
}

/// All `F_{p^m}`-points of `C`, sorted by normalized coordinates.
pub fn enumerate_points(c: &PlaneCurve, m: u32, budget: u128) -> Result<Vec<ProjPoint>> {
    let q = u128::from(c.p()).checked_pow(m).unwrap_or(u128::MAX);
    let required = q.saturating_mul(q);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let f = build_ext_field(c.p(), m)?;
    let form = c.form_over(&f);
    let pr = PolyRing::new(f.clone());
    let mut out = Vec::new();
    let zero = f.zero();
    let one = f.one();
    // (1:0:0)
    let e0 = ProjPoint::new(&f, [one.clone(), zero.clone(), zero.clone()])?;
    if c.contains(&e0) {
        out.push(e0);
    }
    // (x:1:0)
    let line = form.restrict_to_line(&f, &[zero.clone(), one.clone(), zero.clone()], &[one.clone(), zero.clone(), zero.clone()]);
    let xs: Vec<Gf> = if line.is_empty() { f.elements().collect() } else { pr.roots(&line, 11) };
    for x in xs {
        out.push(ProjPoint::new(&f, [x, one.clone(), zero.clone()])?);
    }
    // (x:y:1)
    for x in f.elements() {
        let g = form.restrict_to_line(&f, &[x.clone(), zero.clone(), one.clone()], &[zero.clone(), one.clone(), zero.clone()]);
        let ys: Vec<Gf> = if g.is_empty() { f.elements().collect() } else { pr.roots(&g, 13) };
        for y in ys {
            out.push(ProjPoint::new(&f, [x.clone(), y, one.clone()])?);
        }
    }
    out.sort_by_key(|p| p.sort_key());
    Ok(out)
}

/// Number of points of `P^2(F_{p^m})`, `q^2 + q + 1`.
pub fn projective_plane_count(p: u64, m: u32) -> u128 {
    let q = u128::from(p).pow(m);
    q * q + q + 1
}

/// A linear change of coordinates `v = A v'` with `A = [[1,0,0],[t,1,0],[s,0,1]]`
/// over `F_{p^e}`, chosen so that `(1:0:0)` avoids the transformed curves.
#[derive(Clone, Debug)]
pub struct Shear {
    pub field: ExtField,
    pub t: Gf,
    pub s: Gf,
}

impl Shear {
    fn matrix(&self) -> [[Gf; 3]; 3] {
        let f = &self.field;
        [
            [f.one(), f.zero(), f.zero()],
            [self.t.clone(), f.one(), f.zero()],
            [self.s.clone(), f.zero(), f.one()],
        ]
    }

    pub fn apply(&self, form: &TernaryForm<Gf>) -> TernaryForm<Gf> {
        form.substitute(&self.field, &self.matrix())
    }

    /// Original coordinates of a point given in sheared coordinates.
    pub fn unshear(&self, pt: &ProjPoint) -> Result<ProjPoint> {
        let big = pt.field();
        let t = embed(&self.field, big, &self.t)?;
        let s = embed(&self.field, big, &self.s)?;
        let [x, y, z] = pt.coords().clone();
        let y2 = big.add(&y, &big.mul(&t, &x));
        let z2 = big.add(&z, &big.mul(&s, &x));
        ProjPoint::new(big, [x, y2, z2])
    }

    pub fn to_json(&self) -> Value {
        json!({ "field_degree": self.field.m(), "t": format_elem(&self.field, &self.t), "s": format_elem(&self.field, &self.s) })
    }

    /// Shears over `F_{p^e}` in index order, growing `e` until candidates exist.
    fn candidates(p: u64, forms: &[&TernaryForm<u64>]) -> Result<Vec<Shear>> {
        let max_deg = forms.iter().map(|f| f.degree()).max().unwrap_or(1);
        let mut e = 1;
        loop {
            let field = build_ext_field(p, e)?;
            let mut out = Vec::new();
            let q = field.order();
            for i in 0..q * q {
                let t = field.from_index(i % q);
                let s = field.from_index(i / q);
                let pt = [field.one(), t.clone(), s.clone()];
                let ok = forms.iter().all(|f| {
                    let g = f.map(&field, |&c| field.from_u64(c));
                    !field.is_zero(&g.eval(&field, &pt))
                });
                if ok {
                    out.push(Shear { field: field.clone(), t, s });
                }
                if out.len() >= 64 {
                    break;
                }
            }
            if !out.is_empty() || q > u128::from(max_deg) * 4 {
                return Ok(out);
            }
            e += 1;
        }
    }
}

/// Evidence that a plane curve is smooth over the algebraic closure.
#[derive(Clone, Debug)]
pub struct SmoothCertificate {
    pub shear: Shear,
    /// Degrees in `y` of `Res_x(f, f_x)`, `Res_x(f, f_y)`, `Res_x(f, f_z)` (`None` if zero).
    pub resultant_degrees: Vec<Option<usize>>,
    /// Degree of their gcd: the candidate singular `y`-coordinates.
    pub candidate_gcd_degree: usize,
    pub candidates_checked: usize,
    /// Degree of the gcd of the form and its partials on the line `z' = 0`.
    pub infinity_gcd_degree: usize,
    pub degree_bound: u32,
}

impl SmoothCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "shear": self.shear.to_json(),
            "resultant_degrees": self.resultant_degrees,
            "candidate_gcd_degree": self.candidate_gcd_degree,
            "candidates_checked": self.candidates_checked,
            "infinity_gcd_degree": self.infinity_gcd_degree,
            "singular_point_degree_bound": self.degree_bound,
            "geometrically_connected": "recorded: smooth plane curves are connected, hence irreducible",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Smoothness {
    Smooth(SmoothCertificate),
    /// A singular closed point, when one was located.
    Singular { point: Option<ClosedPoint>, note: String },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth(_))
    }
}

fn y_polys(f: &ExtField, form: &TernaryForm<Gf>) -> Vec<Vec<Gf>> {
    form.to_x_over_y(f)
}

/// Least-degree root of a nonzero polynomial over `base`, in its own field.
fn some_root(base: &ExtField, h: &[Gf]) -> Result<(ExtField, Gf)> {
    let groups = all_roots(base, h)?;
    let (field, roots) = groups.into_iter().find(|(_, r)| !r.is_empty()).expect("positive degree");
    Ok((field, roots[0].clone()))
}

/// Certify that `C` is smooth, or return a singular closed point.
pub fn certify_smooth(c: &PlaneCurve) -> Result<Smoothness> {
    certify_smooth_with_budget(c, DEFAULT_BUDGET)
}

pub fn certify_smooth_with_budget(c: &PlaneCurve, budget: u128) -> Result<Smoothness> {
    let d = c.degree();
    let shear = Shear::candidates(c.p(), &[c.form()])?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unsupported("no coordinate change avoids the curve".into()))?;
    let b = shear.field.clone();
    let form = shear.apply(&c.form_over(&b));
    let grad = form.gradient(&b);
    let pr = PolyRing::new(b.clone());
    let zero = b.zero();
    let one = b.one();

    // Points (x:1:0) on the line z' = 0.
    let on_line = |g: &TernaryForm<Gf>| g.restrict_to_line(&b, &[zero.clone(), one.clone(), zero.clone()], &[one.clone(), zero.clone(), zero.clone()]);
    let mut h_inf = on_line(&form);
    for g in &grad {
        h_inf = pr.gcd(&h_inf, &on_line(g));
    }
    let infinity_gcd_degree = pr.deg(&h_inf).unwrap_or(0);
    if infinity_gcd_degree > 0 {
        let (l, x0) = some_root(&b, &h_inf)?;
        let pt = ProjPoint::new(&l, [x0, l.one(), l.zero()])?;
        let pt = shear.unshear(&pt)?;
        return Ok(Smoothness::Singular { point: Some(ClosedPoint::from_point(&pt)?), note: "singular point on the line at infinity".into() });
    }

    // Affine chart z' = 1, eliminating x.
    let ypr = PolyRing::new(pr.clone());
    let f = y_polys(&b, &form);
    let partials: Vec<Vec<Vec<Gf>>> = grad.iter().map(|g| y_polys(&b, g)).collect();
    let mut resultant_degrees = Vec::new();
    let mut g: Vec<Gf> = Vec::new();
    for fi in &partials {
        if fi.is_empty() {
            resultant_degrees.push(None);
            continue;
        }
        let r = ypr.resultant(&f, fi)?;
        resultant_degrees.push(pr.deg(&r));
        g = pr.gcd(&g, &r);
    }
    if g.is_empty() {
        return Ok(fallback_singular(c, d, budget));
    }
    let mut checked = 0;
    if pr.deg(&g).unwrap_or(0) > 0 {
        for (l, ys) in all_roots(&b, &g)? {
            let lpr = PolyRing::new(l.clone());
            for y0 in ys {
                checked += 1;
                let spec = |poly: &Vec<Vec<Gf>>| -> Result<Vec<Gf>> {
                    let coeffs: Result<Vec<Gf>> = poly
                        .iter()
                        .map(|cy| {
                            let cl = embed_poly(&b, &l, cy)?;
                            Ok(lpr.eval(&cl, &y0))
                        })
                        .collect();
                    Ok(lpr.from_coeffs(coeffs?))
                };
                let mut h = spec(&f)?;
                for fi in &partials {
                    h = lpr.gcd(&h, &spec(fi)?);
                }
                if lpr.deg(&h).unwrap_or(0) > 0 {
                    let (l2, x0) = some_root(&l, &h)?;
                    let y0b = embed(&l, &l2, &y0)?;
                    let pt = ProjPoint::new(&l2, [x0, y0b, l2.one()])?;
                    let pt = shear.unshear(&pt)?;
                    return Ok(Smoothness::Singular { point: Some(ClosedPoint::from_point(&pt)?), note: "affine singular point".into() });
                }
            }
        }
    }
    Ok(Smoothness::Smooth(SmoothCertificate {
        shear,
        resultant_degrees,
        candidate_gcd_degree: pr.deg(&g).unwrap_or(0),
        candidates_checked: checked,
        infinity_gcd_degree,
        degree_bound: (d.saturating_sub(1)).pow(2),
    }))
}

/// The curve has a multiple or common component; look for a singular point
/// by enumeration within the budget.
fn fallback_singular(c: &PlaneCurve, d: u32, budget: u128) -> Smoothness {
    for k in 1..=(d.saturating_sub(1)).pow(2).max(1) {
        let Ok(points) = enumerate_points(c, k, budget) else { break };
        if let Some(pt) = points.iter().find(|pt| c.is_singular_at(pt)) {
            if let Ok(cp) = ClosedPoint::from_point(pt) {
                return Smoothness::Singular { point: Some(cp), note: "curve has a repeated component".into() };
            }
        }
    }
    Smoothness::Singular { point: None, note: "elimination resultants vanish identically: repeated component".into() }
}

#[derive(Clone, Debug)]
pub struct Intersection {
    pub point: ClosedPoint,
    pub multiplicity: u32,
    /// Tangent lines of the two curves at the point are distinct.
    pub transversal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingVerdict {
    NormalCrossings,
    Fail,
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub points: Vec<Intersection>,
    pub shear: Shear,
    /// Degree of `Res_x(f_1, f_2)` in `y` in the sheared coordinates.
    pub elimination_degree: usize,
    /// The elimination resultant, homogenized, is squarefree.
    pub elimination_squarefree: bool,
    pub bezout_number: u32,
    pub verdict: CrossingVerdict,
}

impl IntersectionReport {
    pub fn find(&self, pt: &ClosedPoint) -> Option<&Intersection> {
        self.points.iter().find(|i| &i.point == pt)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points.iter().map(|i| json!({
                "point": i.point.key(),
                "degree": i.point.degree(),
                "multiplicity": i.multiplicity,
                "transversal": i.transversal,
            })).collect::<Vec<_>>(),
            "shear": self.shear.to_json(),
            "elimination_degree": self.elimination_degree,
            "elimination_squarefree": self.elimination_squarefree,
            "bezout_number": self.bezout_number,
            "verdict": match self.verdict { CrossingVerdict::NormalCrossings => "NORMAL_CROSSINGS", CrossingVerdict::Fail => "FAIL" },
        })
    }
}

fn cross_is_zero(f: &ExtField, a: &[Gf; 3], b: &[Gf; 3]) -> bool {
    let c0 = f.sub(&f.mul(&a[1], &b[2]), &f.mul(&a[2], &b[1]));
    let c1 = f.sub(&f.mul(&a[2], &b[0]), &f.mul(&a[0], &b[2]));
    let c2 = f.sub(&f.mul(&a[0], &b[1]), &f.mul(&a[1], &b[0]));
    f.is_zero(&c0) && f.is_zero(&c1) && f.is_zero(&c2)
}

/// Intersection points of two plane curves with multiplicities.
pub fn normal_crossings_profile(c1: &PlaneCurve, c2: &PlaneCurve) -> Result<IntersectionReport> {
    if c1.p() != c2.p() {
        return Err(Error::InvalidInput("curves over different fields".into()));
    }
    let bezout = c1.degree() * c2.degree();
    'shear: for shear in Shear::candidates(c1.p(), &[c1.form(), c2.form()])? {
        let b = shear.field.clone();
        let pr = PolyRing::new(b.clone());
        let ypr = PolyRing::new(pr.clone());
        let g1 = shear.apply(&c1.form_over(&b));
        let g2 = shear.apply(&c2.form_over(&b));
        let r = ypr.resultant(&g1.to_x_over_y(&b), &g2.to_x_over_y(&b))?;
        if r.is_empty() {
            return Err(Error::NotProper);
        }
        let deg_r = pr.deg(&r).unwrap_or(0);
        let mult_inf = bezout as usize - deg_r;
        let mut found: Vec<(ProjPoint, u32)> = Vec::new();
        // Points on z' = 0 other than (1:0:0).
        if mult_inf > 0 {
            let (zero, one) = (b.zero(), b.one());
            let on_line = |g: &TernaryForm<Gf>| g.restrict_to_line(&b, &[zero.clone(), one.clone(), zero.clone()], &[one.clone(), zero.clone(), zero.clone()]);
            let h = pr.gcd(&on_line(&g1), &on_line(&g2));
            let rad = pr.radical(&h);
            if pr.deg(&rad) != Some(1) {
                continue 'shear;
            }
            let x0 = b.neg(&rad[0]);
            found.push((ProjPoint::new(&b, [x0, b.one(), b.zero()])?, mult_inf as u32));
        }
        let f1 = g1.to_x_over_y(&b);
        let f2 = g2.to_x_over_y(&b);
        for (l, ys) in all_roots(&b, &r)? {
            let lpr = PolyRing::new(l.clone());
            let r_l = embed_poly(&b, &l, &r)?;
            for y0 in ys {
                let spec = |poly: &Vec<Vec<Gf>>| -> Result<Vec<Gf>> {
                    let coeffs: Result<Vec<Gf>> = poly.iter().map(|cy| Ok(lpr.eval(&embed_poly(&b, &l, cy)?, &y0))).collect();
                    Ok(lpr.from_coeffs(coeffs?))
                };
                let h = lpr.gcd(&spec(&f1)?, &spec(&f2)?);
                let rad = lpr.radical(&h);
                if lpr.deg(&rad) != Some(1) {
                    continue 'shear;
                }
                let x0 = l.neg(&rad[0]);
                let mu = lpr.root_multiplicity(&r_l, &y0) as u32;
                found.push((ProjPoint::new(&l, [x0, y0.clone(), l.one()])?, mu));
            }
        }
        let mut points: Vec<Intersection> = Vec::new();
        for (pt, mu) in found {
            let orig = shear.unshear(&pt)?;
            let cp = ClosedPoint::from_point(&orig)?;
            if points.iter().any(|i| i.point == cp) {
                continue;
            }
            let rep = cp.representative();
            let transversal = !cross_is_zero(rep.field(), &c1.gradient_at(rep), &c2.gradient_at(rep));
            points.push(Intersection { point: cp, multiplicity: mu, transversal });
        }
        points.sort_by(|a, b| a.point.cmp(&b.point));
        let total: u32 = points.iter().map(|i| i.multiplicity * i.point.degree()).sum();
        assert_eq!(total, bezout, "intersection count must match the Bezout number");
        let squarefree = pr.is_separable(&r) && mult_inf <= 1;
        let all_simple = points.iter().all(|i| i.multiplicity == 1);
        let verdict = if all_simple && squarefree { CrossingVerdict::NormalCrossings } else { CrossingVerdict::Fail };
        return Ok(IntersectionReport {
            points,
            shear,
            elimination_degree: deg_r,
            elimination_squarefree: squarefree,
            bezout_number: bezout,
            verdict,
        });
    }
    Err(Error::Unsupported("no projection center separates the intersection points".into()))
}

#[derive(Clone, Debug)]
pub struct TangentInfo {
    pub tangent: TernaryForm<Gf>,
    /// Order of vanishing of the curve along the tangent line at the point;
    /// `u32::MAX` when the line is a component.
    pub contact: u32,
    pub is_flex: bool,
    /// Hessian test, available in characteristic other than 2 and 3.
    pub hessian_vanishes: Option<bool>,
}

/// A point on the line `{l = 0}` different from `pt`.
pub fn second_point_on_line(f: &ExtField, l: &[Gf; 3], pt: &[Gf; 3]) -> [Gf; 3] {
    let basis = [[f.one(), f.zero(), f.zero()], [f.zero(), f.one(), f.zero()], [f.zero(), f.zero(), f.one()]];
    for e in &basis {
        // l x e lies on the line l = 0
        let r = [
            f.sub(&f.mul(&l[1], &e[2]), &f.mul(&l[2], &e[1])),
            f.sub(&f.mul(&l[2], &e[0]), &f.mul(&l[0], &e[2])),
            f.sub(&f.mul(&l[0], &e[1]), &f.mul(&l[1], &e[0])),
        ];
        if r.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        if !cross_is_zero(f, &r, pt) {
            return r;
        }
    }
    unreachable!("a projective line has at least two points")
}

/// Order of vanishing at `t = 0` of a univariate polynomial (`None` if zero).
pub fn order_at_zero(f: &ExtField, g: &[Gf]) -> Option<u32> {
    g.iter().position(|c| !f.is_zero(c)).map(|i| i as u32)
}

pub fn tangent_and_flex(c: &PlaneCurve, pt: &ProjPoint) -> Result<TangentInfo> {
    if !c.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    let f = pt.field();
    let grad = c.gradient_at(pt);
    if grad.iter().all(|g| f.is_zero(g)) {
        return Err(Error::SingularPoint);
    }
    let tangent = TernaryForm::linear(f, grad[0].clone(), grad[1].clone(), grad[2].clone());
    let dir = second_point_on_line(f, &grad, pt.coords());
    let form = c.form_over(f);
    let restricted = form.restrict_to_line(f, pt.coords(), &dir);
    let contact = order_at_zero(f, &restricted).unwrap_or(u32::MAX);
    let hessian_vanishes = if c.p() == 2 || c.p() == 3 || c.degree() < 2 {
        None
    } else {
        Some(f.is_zero(&form.hessian(f).eval(f, pt.coords())))
    };
    let is_flex = contact >= 3;
    if let Some(h) = hessian_vanishes {
        assert_eq!(h, is_flex, "Hessian test disagrees with tangent contact");
    }
    Ok(TangentInfo { tangent, contact, is_flex, hessian_vanishes })
}
