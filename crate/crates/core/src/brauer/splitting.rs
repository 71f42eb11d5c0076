//! Decomposition of closed points in cyclic covers: Kummer covers `y^d = g`
//! and the two Artin-Schreier-Witt layers `x^p - x = f`,
//! `y^p - y - c(x^p, -x) = 1/f`.

use serde_json::{json, Value};

use crate::algebra::dlog::power_residue_order;
use crate::algebra::gf::{all_roots, embed, ExtField, Gf};
use crate::algebra::ring::{Field, FiniteField, Ring};
use crate::curves::divisor::LineProductFunction;
use crate::curves::plane::PlaneCurve;
use crate::curves::point::{format_elem, ClosedPoint};
use crate::error::{Error, Result};

use super::local::gcd_with_valuation;

/// Ramification index, residue degree and number of places above a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplittingDatum {
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl SplittingDatum {
    pub fn degree(&self) -> u64 {
        self.e * self.f * self.g
    }

    pub fn label(&self) -> &'static str {
        match (self.e, self.f, self.g) {
            (1, 1, _) => "split",
            (1, _, 1) => "inert",
            (_, 1, 1) => "totally_ramified",
            _ => "mixed",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "e": self.e, "f": self.f, "g": self.g, "type": self.label() })
    }
}

/// Splitting of `P` in `k(C)(g^(1/d))`, assuming that extension has degree `d`.
pub fn kummer_splitting(curve: &PlaneCurve, pt: &ClosedPoint, g: &LineProductFunction, d: u64) -> Result<SplittingDatum> {
    let kp = pt.residue_field();
    if d == 0 || (kp.order() - 1) % u128::from(d) != 0 {
        return Err(Error::NoRootsOfUnity { d, q: kp.order() });
    }
    let ld = g.laurent_at_closed(curve, pt)?;
    let g0 = gcd_with_valuation(d, ld.valuation);
    let e = d / g0;
    let f = power_residue_order(kp, &ld.unit, g0)?;
    Ok(SplittingDatum { e, f, g: d / (e * f) })
}

/// `c(X, Y) = (X^p + Y^p - (X + Y)^p) / p` evaluated in characteristic `p`.
pub fn witt_carry(field: &ExtField, x: &Gf, y: &Gf) -> Gf {
    let p = field.p();
    let fact = |n: u64| (1..=n).fold(field.one(), |acc, k| field.mul(&acc, &field.from_u64(k)));
    // binom(p, i) / p = (p-1)! / (i! (p-i)!) and (p-1)! = -1 mod p
    let mut acc = field.zero();
    for i in 1..p {
        let denom = field.mul(&fact(i), &fact(p - i));
        let c = field.inv(&denom).expect("factorials below p are units");
        let term = field.mul(&field.pow(x, u128::from(i)), &field.pow(y, u128::from(p - i)));
        acc = field.add(&acc, &field.mul(&c, &term));
    }
    acc
}

/// One place of an Artin-Schreier-Witt layer, with the reason for its splitting type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AswPlace {
    pub label: String,
    pub datum: SplittingDatum,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AswReport {
    pub point: ClosedPoint,
    pub layer: u8,
    pub valuation: i64,
    pub places: Vec<AswPlace>,
}

impl AswReport {
    /// The common datum when all places behave alike.
    pub fn uniform(&self) -> Option<SplittingDatum> {
        let first = self.places.first()?.datum;
        self.places.iter().all(|w| w.datum == first).then_some(first)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.key(),
            "layer": self.layer,
            "valuation": self.valuation,
            "places": self.places.iter().map(|w| json!({
                "place": w.label,
                "splitting": w.datum.to_json(),
                "reason": w.reason,
            })).collect::<Vec<_>>(),
        })
    }
}

fn as_datum(p: u64, totally_ramified: bool, split: bool) -> SplittingDatum {
    if totally_ramified {
        SplittingDatum { e: p, f: 1, g: 1 }
    } else if split {
        SplittingDatum { e: 1, f: 1, g: p }
    } else {
        SplittingDatum { e: 1, f: p, g: 1 }
    }
}

/// A single Artin-Schreier place: pole order `n > 0` of the right side.
fn pole_place(p: u64, label: String, n: i64) -> Result<AswPlace> {
    if n % p as i64 == 0 {
        return Err(Error::NotReduced(n));
    }
    Ok(AswPlace { label, datum: as_datum(p, true, false), reason: format!("pole order {n} prime to p") })
}

/// Splitting of `P` in layer 1 (`x^p - x = f`) or, for `layer = 2`, of every
/// place of layer 1 above `P` in `y^p - y - c(x^p, -x) = 1/f`.
pub fn asw_splitting(curve: &PlaneCurve, pt: &ClosedPoint, f: &LineProductFunction, layer: u8) -> Result<AswReport> {
    let p = curve.p();
    let kp = pt.residue_field();
    let ld = f.laurent_at_closed(curve, pt)?;
    let v = ld.valuation;
    let mut places = Vec::new();
    match layer {
        1 => {
            if v > 0 {
                places.push(AswPlace { label: "P".into(), datum: as_datum(p, false, true), reason: "f(P) = 0, trace 0".into() });
            } else if v == 0 {
                let t = kp.trace(&ld.unit);
                places.push(AswPlace {
                    label: "P".into(),
                    datum: as_datum(p, false, t == 0),
                    reason: format!("absolute trace of f(P) is {t}"),
                });
            } else {
                places.push(pole_place(p, "P".into(), -v)?);
            }
        }
        2 => {
            if v > 0 {
                // p rational places x = a, where 1/f has a pole of order v
                for a in 0..p {
                    places.push(pole_place(p, format!("x={a}"), v)?);
                }
            } else if v == 0 {
                // x^p - x - u splits over kappa_w, which has degree 1 or p over kappa(P)
                let minus = kp.neg(&ld.unit);
                let mut poly = vec![kp.zero(); p as usize + 1];
                poly[0] = minus;
                poly[1] = kp.neg(&kp.one());
                poly[p as usize] = kp.one();
                let uinv = kp.inv(&ld.unit).expect("unit");
                for (kw, roots) in all_roots(kp, &poly)? {
                    let uw = embed(kp, &kw, &uinv)?;
                    let mut seen_orbits: Vec<Gf> = Vec::new();
                    for a in roots {
                        // conjugate roots give the same place of layer 1
                        if seen_orbits.iter().any(|b| conjugate_over(kp, &kw, &a, b)) {
                            continue;
                        }
                        seen_orbits.push(a.clone());
                        let r = kw.add(&uw, &witt_carry(&kw, &kw.pow(&a, u128::from(p)), &kw.neg(&a)));
                        let t = kw.trace(&r);
                        places.push(AswPlace {
                            label: format!("x={}", format_elem(&kw, &a)),
                            datum: as_datum(p, false, t == 0),
                            reason: format!("absolute trace of residue is {t}"),
                        });
                    }
                }
            } else {
                // one totally ramified place with v_w(x) = v; the carry term has
                // pole order -v (p^2 - p + 1) and dominates 1/f
                let n = -v;
                let pole = n * (p as i64 * p as i64 - p as i64 + 1);
                if n % p as i64 == 0 {
                    return Err(Error::NotReduced(n));
                }
                places.push(pole_place(p, "w".into(), pole)?);
            }
        }
        other => return Err(Error::InvalidInput(format!("layer must be 1 or 2, got {other}"))),
    }
    Ok(AswReport { point: pt.clone(), layer, valuation: v, places })
}

fn conjugate_over(small: &ExtField, big: &ExtField, a: &Gf, b: &Gf) -> bool {
    let q = small.order();
    let mut cur = a.clone();
    for _ in 0..(big.m() / small.m()) {
        if cur == *b {
            return true;
        }
        cur = big.pow(&cur, q);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::build_ext_field;
    use crate::algebra::ternary::TernaryForm;
    use crate::curves::elliptic::tangent_line;
    use crate::curves::elliptic::tests::{c1, cubic};
    use crate::curves::point::ProjPoint;
    use proptest::prelude::*;

    fn cp(p: u64, xyz: [i64; 3]) -> ClosedPoint {
        ClosedPoint::from_point(&ProjPoint::from_ints(p, xyz).unwrap()).unwrap()
    }

    #[test]
    fn kummer_examples() {
        let e = c1(19);
        let c = e.curve();
        let f = c.base_field().clone();
        let p1 = ProjPoint::from_ints(19, [1, 0, 1]).unwrap();
        let o = e.origin().clone();
        let p0 = cp(19, [-1, 3, 1]);
        let h = LineProductFunction::ratio(&f, tangent_line(c, &p1), tangent_line(c, &o)).unwrap();
        let h0 = h.laurent_at_closed(c, &p0).unwrap();
        let h = h.scale(&f.inv(&h0.unit).unwrap());
        assert_eq!(kummer_splitting(c, &p0, &h, 3).unwrap(), SplittingDatum { e: 1, f: 1, g: 3 });
        // h vanishes to order 3 at P1, so P1 is unramified
        assert_eq!(kummer_splitting(c, &cp(19, [1, 0, 1]), &h, 3).unwrap().e, 1);
        let z = TernaryForm::linear(&f, f.zero(), f.zero(), f.one());
        let l = crate::curves::elliptic::line_through(&ProjPoint::from_ints(19, [-1, 3, 1]).unwrap(), &p1);
        let g = LineProductFunction::ratio(&f, l, z).unwrap();
        assert_eq!(kummer_splitting(c, &p0, &g, 3).unwrap(), SplittingDatum { e: 3, f: 1, g: 1 });
        let one = LineProductFunction::one(&f);
        assert_eq!(kummer_splitting(c, &p0, &one, 3).unwrap(), SplittingDatum { e: 1, f: 1, g: 3 });
        let two = LineProductFunction::constant(&f, f.from_u64(2)).unwrap();
        assert_eq!(kummer_splitting(c, &p0, &two, 3).unwrap(), SplittingDatum { e: 1, f: 3, g: 1 });
    }

    #[test]
    fn carry_polynomial() {
        // c(X, Y) = -XY for p = 2 and -(X^2 Y + X Y^2) for p = 3
        let f3 = build_ext_field(3, 1).unwrap();
        let (x, y) = (f3.from_u64(1), f3.from_u64(2));
        assert_eq!(witt_carry(&f3, &x, &y), f3.neg(&f3.add(&f3.mul(&f3.mul(&x, &x), &y), &f3.mul(&x, &f3.mul(&y, &y)))));
        let f2 = build_ext_field(2, 1).unwrap();
        assert_eq!(witt_carry(&f2, &f2.one(), &f2.one()), f2.one());
        // integer oracle for p = 5: (X^5 + Y^5 - (X + Y)^5) / 5 at X = 2, Y = 3
        let f5 = build_ext_field(5, 1).unwrap();
        let exact = (2i64.pow(5) + 3i64.pow(5) - 5i64.pow(5)) / 5;
        assert_eq!(witt_carry(&f5, &f5.from_u64(2), &f5.from_u64(3)), f5.from_i64(exact));
    }

    #[test]
    fn artin_schreier_layers() {
        // y^2 z = x^3 + z^3 over F_5 with the function x / z
        let c = cubic(5, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([0, 0, 3], -1)]);
        let f = c.base_field().clone();
        let x = TernaryForm::linear(&f, f.one(), f.zero(), f.zero());
        let z = TernaryForm::linear(&f, f.zero(), f.zero(), f.one());
        let g = LineProductFunction::ratio(&f, x, z).unwrap();
        // x/z vanishes at (0:1:1) and has a pole of order 2 at (0:1:0)
        let zero = asw_splitting(&c, &cp(5, [0, 1, 1]), &g, 1).unwrap();
        assert_eq!(zero.valuation, 1);
        assert_eq!(zero.uniform().unwrap().label(), "split");
        let above = asw_splitting(&c, &cp(5, [0, 1, 1]), &g, 2).unwrap();
        assert_eq!(above.places.len(), 5);
        assert_eq!(above.uniform().unwrap().label(), "totally_ramified");
        let inf = asw_splitting(&c, &cp(5, [0, 1, 0]), &g, 1).unwrap();
        assert_eq!(inf.valuation, -2);
        assert_eq!(inf.uniform().unwrap(), SplittingDatum { e: 5, f: 1, g: 1 });
        assert_eq!(asw_splitting(&c, &cp(5, [0, 1, 0]), &g, 2).unwrap().uniform().unwrap().label(), "totally_ramified");
        // unit values: the trace decides
        let pt = cp(5, [2, 2, 1]);
        let r = asw_splitting(&c, &pt, &g, 1).unwrap();
        assert_eq!(r.valuation, 0);
        assert_eq!(r.uniform().unwrap().label(), "inert");
        let l2 = asw_splitting(&c, &pt, &g, 2).unwrap();
        assert_eq!(l2.places.len(), 1);
        assert_eq!(l2.places[0].datum.degree(), 5);
    }

    #[test]
    fn pole_orders_divisible_by_p_are_rejected() {
        // (x/z)^3 has a pole of order 6 at the flex (0:1:0)
        let c = cubic(3, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], -1), ([0, 0, 3], -1)]);
        let f = c.base_field().clone();
        let x = TernaryForm::linear(&f, f.one(), f.zero(), f.zero());
        let z = TernaryForm::linear(&f, f.zero(), f.zero(), f.one());
        let g = LineProductFunction::ratio(&f, x, z).unwrap().pow(3);
        assert_eq!(asw_splitting(&c, &cp(3, [0, 1, 0]), &g, 1), Err(Error::NotReduced(6)));
    }

    proptest! {
        #[test]
        fn kummer_degrees_multiply_out(a in 0u64..19, b in 1u64..19, d in prop::sample::select(vec![2u64, 3, 6, 9, 18])) {
            let e = c1(19);
            let c = e.curve();
            let f = c.base_field().clone();
            let num = TernaryForm::linear(&f, f.from_u64(a), f.one(), f.from_u64(b));
            let den = TernaryForm::linear(&f, f.one(), f.from_u64(b), f.from_u64(a));
            let g = LineProductFunction::ratio(&f, num.clone(), den.clone()).unwrap();
            if let Ok(zs) = crate::curves::divisor::form_zeros(c, &f, &num) {
                for pt in zs {
                    if let Ok(s) = kummer_splitting(c, &pt, &g, d) {
                        prop_assert_eq!(s.degree(), d);
                    }
                }
            }
        }

        #[test]
        fn asw_split_at_zeros(a in 0u64..5, b in 1u64..5) {
            let c = cubic(5, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([0, 0, 3], -1)]);
            let f = c.base_field().clone();
            let num = TernaryForm::linear(&f, f.one(), f.from_u64(a), f.from_u64(b));
            let den = TernaryForm::linear(&f, f.zero(), f.zero(), f.one());
            let g = LineProductFunction::ratio(&f, num.clone(), den).unwrap();
            for pt in crate::curves::divisor::form_zeros(&c, &f, &num).unwrap() {
                let ld = g.laurent_at_closed(&c, &pt).unwrap();
                let r = asw_splitting(&c, &pt, &g, 1).unwrap();
                if ld.valuation > 0 {
                    prop_assert_eq!(r.uniform().unwrap().label(), "split");
                }
                prop_assert_eq!(r.places.iter().map(|w| w.datum.degree()).collect::<Vec<_>>(), vec![5]);
            }
        }
    }
}
