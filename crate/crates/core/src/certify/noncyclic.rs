//! Lower bound `mn` for the index of `(f1, h) + (f2, u)` on the degeneration
//! `F1 F2 = p z^(2d)`, from the residue along `C1` and one local invariant.

use serde_json::{json, Value};

use crate::algebra::dlog::power_residue_order;
use crate::algebra::fp::PrimeField;
use crate::algebra::gf::ExtField;
use crate::algebra::integers::is_prime;
use crate::algebra::poly::PolyRing;
use crate::algebra::ring::{Field, Ring};
use crate::algebra::ternary::TernaryForm;
use crate::brauer::{invariant_vector, kummer_splitting, symbol_invariant, SymbolClassSpec};
use crate::curves::divisor::{function_with_divisor, LineProductFunction};
use crate::curves::elliptic::{tangent_line, CubicModel};
use crate::curves::local::LaurentData;
use crate::curves::plane::{certify_smooth_with_budget, normal_crossings_profile, tangent_and_flex, CrossingVerdict, PlaneCurve, Smoothness};
use crate::curves::point::{ClosedPoint, ProjPoint};
use crate::error::Error;

use super::input::{curve_from_rows, NoncyclicInput};
use super::setup::{EXAMPLE_F1, EXAMPLE_F2, EXAMPLE_P0, EXAMPLE_P1};
use super::{finalize, get_u128, Certificate, Halt, Pipeline, RunOptions, Step};

pub fn certify(input: &NoncyclicInput, opts: &RunOptions) -> Certificate {
    let mut cert = Certificate::new(Pipeline::Noncyclic, input);
    let outcome = body(&mut cert, input, opts);
    finalize(cert, outcome)
}

/// The point where a binary form `c L^d` on `z = 0` vanishes, if it has that shape.
pub fn multiple_line_at_infinity(c: &PlaneCurve, d: u64) -> Option<ProjPoint> {
    let p = c.p();
    let fp = PrimeField::new(p).ok()?;
    let pr = PolyRing::new(fp);
    let b = c.form().restrict_to_coordinate_line(&fp, 2);
    let d_us = d as usize;
    match pr.deg(&b)? {
        0 => ProjPoint::from_ints(p, [1, 0, 0]).ok(),
        k if k == d_us => {
            let lc = b[d_us];
            let r = fp.neg(&fp.div(&b[d_us - 1], &fp.mul(&fp.from_i64(d as i64), &lc))?);
            let lin = vec![fp.neg(&r), fp.one()];
            let expect = pr.scale(&pr.pow(&lin, u128::from(d)), &lc);
            (expect == b).then(|| ProjPoint::from_ints(p, [r as i64, 1, 0]).ok()).flatten()
        }
        _ => None,
    }
}

fn smooth_witness(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth(c) => c.to_json(),
        Smoothness::Singular { point, note } => json!({ "singular_point": point.as_ref().map(|p| p.key()), "note": note }),
    }
}

fn pt_json(pt: &ProjPoint) -> Value {
    json!(pt.coordinate_strings())
}

fn z_line(f: &ExtField) -> TernaryForm<crate::algebra::gf::Gf> {
    TernaryForm::linear(f, f.zero(), f.zero(), f.one())
}

fn body(cert: &mut Certificate, input: &NoncyclicInput, opts: &RunOptions) -> Step<()> {
    let (p, d) = (input.p, input.d);
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p).into());
    }
    cert.require(
        "roots_of_unity_in_base",
        d > 1 && (p - 1) % d == 0,
        json!({ "p": p, "d": d, "p_minus_1_mod_d": if d > 0 { (p - 1) % d } else { 0 } }),
        "NO_PRIMITIVE_ROOT",
    )?;
    if d != 3 {
        return Err(Error::Unsupported(format!("the tangent-line construction of h needs d = 3, got d = {d}")).into());
    }

    // (i) each form meets z = 0 in one point with multiplicity d
    let c1 = curve_from_rows(p, &input.f1)?;
    let c2 = curve_from_rows(p, &input.f2)?;
    for (name, c) in [("c1", &c1), ("c2", &c2)] {
        if u64::from(c.degree()) != d {
            return Err(Error::InvalidInput(format!("{name} has degree {}, expected {d}", c.degree())).into());
        }
    }
    let inf1 = multiple_line_at_infinity(&c1, d);
    let inf2 = multiple_line_at_infinity(&c2, d);
    let witness = json!({ "infinity_1": inf1.as_ref().map(pt_json), "infinity_2": inf2.as_ref().map(pt_json) });
    cert.require("boundary_is_dth_power_of_line", inf1.is_some() && inf2.is_some(), witness.clone(), "SETUP_VIOLATION")?;
    let (inf1, inf2) = (inf1.expect("checked"), inf2.expect("checked"));
    cert.require("boundary_points_distinct", inf1 != inf2, witness, "SETUP_VIOLATION")?;

    // (ii) smooth reductions with normal crossings through P0
    for (name, c) in [("c1_smooth", &c1), ("c2_smooth", &c2)] {
        let s = certify_smooth_with_budget(c, opts.budget)?;
        cert.require(name, s.is_smooth(), smooth_witness(&s), "SETUP_VIOLATION")?;
    }
    let report = normal_crossings_profile(&c1, &c2)?;
    cert.require("normal_crossings", report.verdict == CrossingVerdict::NormalCrossings, report.to_json(), "SETUP_VIOLATION")?;
    let p0 = ProjPoint::from_ints(p, input.p0)?;
    let cp0 = ClosedPoint::from_point(&p0)?;
    let transversal = report.find(&cp0).is_some_and(|i| i.multiplicity == 1 && i.transversal);
    cert.require(
        "p0_rational_common_point",
        c1.contains(&p0) && c2.contains(&p0) && transversal,
        json!({ "p0": pt_json(&p0), "on_c1": c1.contains(&p0), "on_c2": c2.contains(&p0), "transversal": transversal }),
        "SETUP_VIOLATION",
    )?;

    // (iii) P1 - inf1 is a nontrivial d-torsion class
    let p1 = ProjPoint::from_ints(p, input.p1)?;
    if !c1.contains(&p1) {
        return Err(Halt::Violation { code: "SETUP_VIOLATION", check: "p1_on_c1".into(), detail: pt_json(&p1) });
    }
    let t_inf = tangent_and_flex(&c1, &inf1)?;
    cert.require("infinity_1_is_flex", t_inf.is_flex, json!({ "contact": t_inf.contact }), "SETUP_VIOLATION")?;
    let t1 = tangent_and_flex(&c1, &p1)?;
    let e = CubicModel::new(c1.clone(), inf1.clone())?;
    let ord = e.point_order(&p1)?;
    cert.require(
        "p1_flex",
        t1.is_flex,
        json!({ "contact": t1.contact, "hessian_vanishes": t1.hessian_vanishes }),
        "SETUP_VIOLATION",
    )?;
    cert.require("p1_order", ord == u128::from(d), json!({ "order": ord.to_string(), "origin": pt_json(&inf1) }), "SETUP_VIOLATION")?;
    if let Some(hv) = t1.hessian_vanishes {
        cert.check("hessian_agrees_with_order", hv == (ord == 3), json!({ "hessian_vanishes": hv, "order": ord.to_string() }));
    }

    // (iv) h = T_P1 / T_inf1, normalized at P0
    let base = c1.base_field().clone();
    let (tp1, tinf) = (tangent_line(&c1, &p1), tangent_line(&c1, &inf1));
    let hits = |l: &TernaryForm<_>| base.is_zero(&l.eval(&base, p0.coords()));
    if hits(&tp1) || hits(&tinf) {
        return Err(Halt::Violation {
            code: "TANGENT_THROUGH_P0",
            check: "h_normalization".into(),
            detail: json!({ "tangent_at_p1": hits(&tp1), "tangent_at_infinity_1": hits(&tinf) }),
        });
    }
    let raw = LineProductFunction::ratio(&base, tp1, tinf)?;
    let at_p0 = raw.laurent_at(&c1, &p0)?;
    let h = raw.scale(&base.inv(&at_p0.unit).expect("unit at P0"));
    let h_p0 = h.eval(&c1, &p0)?;
    cert.check("h_equals_one_at_p0", h_p0.as_ref().is_some_and(|v| base.is_one(v)), json!({ "value": h_p0.map(|v| v.0[0].to_string()) }));
    let (v1, vinf) = (h.laurent_at(&c1, &p1)?.valuation, h.laurent_at(&c1, &inf1)?.valuation);
    cert.check("h_divisor", v1 == d as i64 && vinf == -(d as i64), json!({ "v_p1": v1, "v_infinity_1": vinf }));
    let split = kummer_splitting(&c1, &cp0, &h, d)?;
    cert.check("p0_splits_in_kummer_cover", split.label() == "split", split.to_json());
    let not_power = match function_with_divisor(&e, &vec![(ClosedPoint::from_point(&p1)?, 1), (ClosedPoint::from_point(&inf1)?, -1)]) {
        Err(Error::NotPrincipal) => true,
        Ok(_) => false,
        Err(other) => return Err(other.into()),
    };
    cert.check(
        "h_not_dth_power",
        not_power,
        json!({ "reason": "div(h) = d([P1] - [inf1]) and [P1] - [inf1] is not principal", "principal": !not_power }),
    );
    // d is prime here, so a non-d-th power has order exactly d
    let m = d;

    // (v) the unit u
    let fb = &base;
    let (u, n) = match input.u {
        Some(u) => {
            let ue = fb.from_u64(u % p);
            if fb.is_zero(&ue) {
                return Err(Error::InvalidInput("u must be a unit mod p".into()).into());
            }
            (u % p, power_residue_order(fb, &ue, d)?)
        }
        None => {
            let mut found = None;
            for u in 2..p {
                if power_residue_order(fb, &fb.from_u64(u), d)? == d {
                    found = Some((u, d));
                    break;
                }
            }
            found.ok_or_else(|| Error::InvalidInput("no non-d-th-power unit".into()))?
        }
    };
    cert.check("u_not_dth_power", n > 1, json!({ "u": u, "order_mod_dth_powers": n }));

    // (vi) invariant of (f2, u) at P0 on C1
    let zeta = fb.primitive_root_of_unity(d)?;
    let f2 = LineProductFunction::from_factors(fb, fb.one(), vec![(c2.form_over(fb), 1), (z_line(fb), -(d as i64))])?;
    let f2_p0 = f2.laurent_at(&c1, &p0)?;
    cert.check("f2_uniformizer_at_p0", f2_p0.valuation == 1, f2_p0.to_json());
    let u_ld = LaurentData::unit(fb, fb.from_u64(u))?;
    let inv = symbol_invariant(&f2_p0, &u_ld, &zeta, d)?;
    cert.check(
        "invariant_order_at_p0",
        inv.order() == u128::from(n),
        json!({ "invariant": inv.to_string(), "order": inv.order().to_string(), "zeta": zeta.0[0].to_string() }),
    );
    if input.invariant_vector {
        let spec = SymbolClassSpec { d, zeta: zeta.clone(), pairs: vec![(f2.clone(), LineProductFunction::constant(fb, fb.from_u64(u))?)] };
        let iv = invariant_vector(&spec, &c1)?;
        cert.record("reciprocity_on_c1", iv.sum().is_zero(), json!({ "sum": iv.sum().to_string() }));
        cert.set("invariants_on_c1", iv.to_json());
    }

    // (vii) the bound
    cert.set("p", json!(p));
    cert.set("d", json!(d));
    cert.set("period", json!(d));
    cert.set("m", json!(m));
    cert.set("n", json!(n));
    cert.set("u", json!(u));
    cert.set("index_lower_bound", json!(m * n));
    cert.set("h", h.to_json());
    cert.set("infinity_1", pt_json(&inf1));
    cert.set("infinity_2", pt_json(&inf2));
    cert.set("invariant_at_p0", json!(inv.to_string()));
    cert.cite(
        "principal_mod_d",
        "on the regular model F1 F2 = pi z^(2d), div(F1/z^d) = [C1] + d^2 [inf1] - d^2 [inf2] and symmetrically for F2",
    );
    cert.cite(
        "lift_of_h",
        "a nontrivial class in Pic(C1)[d] lifts to Pic of the model, giving h with div(h) = dE, h(P0) = 1 and restriction to C1 not a d-th power",
    );
    cert.cite(
        "index_of_tame_class",
        "for beta = alpha + (pi) cup chi over a complete discretely valued field, ind(beta) = |chi| ind(alpha restricted to the field of chi)",
    );
    cert.cite("index_over_global_field", "over a global field the index of a class is the lcm of the orders of its local invariants");
    Ok(())
}

pub(super) fn conclude(v: &Value) -> Option<String> {
    let (m, n, d) = (get_u128(v, "m")?, get_u128(v, "n")?, get_u128(v, "d")?);
    if get_u128(v, "index_lower_bound")? != m * n || !super::cited(v, "lift_of_h") || !super::cited(v, "index_of_tame_class") {
        return None;
    }
    if !super::check_passed(v, "h_not_dth_power") || !super::check_passed(v, "invariant_order_at_p0") {
        return None;
    }
    if m * n > d && is_prime(d as u64) {
        Some(format!("beta has period {d} and index divisible by {}, so it is not Z/{d}-cyclic", m * n))
    } else {
        Some(format!("beta has period {d} and index divisible by {}", m * n))
    }
}

/// The worked pair of cubics reduced at `p`.
pub fn example_input(p: u64) -> NoncyclicInput {
    let rows = |t: &[([u32; 3], i64)]| t.iter().map(|(m, c)| [i64::from(m[0]), i64::from(m[1]), i64::from(m[2]), *c]).collect();
    NoncyclicInput { p, d: 3, f1: rows(&EXAMPLE_F1), f2: rows(&EXAMPLE_F2), p0: EXAMPLE_P0, p1: EXAMPLE_P1, u: None, invariant_vector: true }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_at_19() {
        let c = certify(&example_input(19), &RunOptions::default());
        let v = c.to_json();
        assert_eq!(c.failure, None, "{v}");
        assert_eq!(c.exit_code(), 0);
        assert_eq!(v["computed"]["index_lower_bound"], 9);
        assert!(c.conclusion.as_ref().unwrap().contains("not Z/3-cyclic"));
        super::super::audit(&v).unwrap();
        // byte-stable
        assert_eq!(c.canonical(), certify(&example_input(19), &RunOptions::default()).canonical());
    }

    #[test]
    fn excluded_primes() {
        let c = certify(&example_input(5), &RunOptions::default());
        assert_eq!(c.failure.as_ref().unwrap().code, "NO_PRIMITIVE_ROOT");
        for p in [7, 13] {
            let c = certify(&example_input(p), &RunOptions::default());
            let f = c.failure.as_ref().unwrap();
            assert_eq!((f.code.as_str(), c.exit_code()), ("SETUP_VIOLATION", 1));
            assert!(f.check.ends_with("_smooth"), "{}", f.check);
        }
        let c = certify(&example_input(37), &RunOptions::default());
        assert_eq!(c.failure.as_ref().unwrap().check, "normal_crossings");
        let mut bad = example_input(19);
        bad.p0 = [1, 0, 1];
        assert_eq!(certify(&bad, &RunOptions::default()).failure.unwrap().check, "p0_rational_common_point");
    }

    #[test]
    fn boundary_shape() {
        let c = curve_from_rows(19, &[[0, 2, 1, 1], [3, 0, 0, 1], [1, 1, 1, 1]]).unwrap();
        assert_eq!(multiple_line_at_infinity(&c, 3), ProjPoint::from_ints(19, [0, 1, 0]).ok());
        // (x - 2y)^3 on z = 0
        let c = curve_from_rows(19, &[[3, 0, 0, 1], [2, 1, 0, -6], [1, 2, 0, 12], [0, 3, 0, -8], [0, 0, 3, 1]]).unwrap();
        assert_eq!(multiple_line_at_infinity(&c, 3), ProjPoint::from_ints(19, [2, 1, 0]).ok());
        let c = curve_from_rows(19, &[[3, 0, 0, 1], [0, 3, 0, 1], [0, 0, 3, 1]]).unwrap();
        assert_eq!(multiple_line_at_infinity(&c, 3), None);
    }
}
