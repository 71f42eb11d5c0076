//! Index bounds for `beta = psi ∪ δh + chi ∪ δπ` of period `p^2`, where `chi`
//! is the Artin-Schreier-Witt character attached to `f = f1 f2` and
//! `h = f1 / f2` for a split triple `P_inf, P1, P2` on the special fiber.

use serde_json::{json, Value};

use crate::algebra::integers::is_prime;
use crate::brauer::{asw_splitting, class_index, nakayama_index, unram_cup_invariant, AswReport, InvariantVector, UnramCharacter};
use crate::curves::divisor::{find_split_triple, LineProductFunction};
use crate::curves::elliptic::CubicModel;
use crate::curves::local::LaurentData;
use crate::curves::plane::{certify_smooth_with_budget, PlaneCurve};
use crate::curves::point::{ClosedPoint, ProjPoint};
use crate::error::{Error, Result};

use super::input::{curve_from_rows, IndecInput};
use super::{finalize, get_u128, Certificate, Pipeline, RunOptions, Step};

pub fn certify(input: &IndecInput, opts: &RunOptions) -> Certificate {
    let mut cert = Certificate::new(Pipeline::Indec, input);
    let outcome = body(&mut cert, input, opts);
    finalize(cert, outcome)
}

/// Splitting type of `x^p - x = f` at `P` read off directly from the
/// valuation and residue of `f`: zero or trace-zero residue splits, a pole of
/// order prime to `p` ramifies totally, otherwise inert.
pub fn layer_one_criterion(p: u64, ld: &LaurentData) -> &'static str {
    if ld.valuation > 0 {
        "split"
    } else if ld.valuation < 0 {
        if ld.valuation % p as i64 != 0 {
            "totally_ramified"
        } else {
            "unreduced"
        }
    } else if ld.field.trace(&ld.unit) == 0 {
        "split"
    } else {
        "inert"
    }
}

/// Local degree of the two layers together at each place above the point.
fn tower_local_degrees(l1: &AswReport, l2: &AswReport) -> Option<(u64, u64)> {
    let d1 = l1.uniform()?;
    let d2 = l2.uniform()?;
    Some((d1.e * d1.f, d2.e * d2.f))
}

fn body(cert: &mut Certificate, input: &IndecInput, opts: &RunOptions) -> Step<()> {
    let p = input.p;
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p).into());
    }
    if p == 2 {
        return Err(Error::Unsupported("the Artin-Schreier-Witt construction needs p odd".into()).into());
    }
    let c: PlaneCurve = curve_from_rows(p, &input.cubic)?;
    if c.degree() != 3 {
        return Err(Error::Unsupported(format!("only genus one special fibers are supported, got degree {}", c.degree())).into());
    }
    let s = certify_smooth_with_budget(&c, opts.budget)?;
    cert.require("special_fiber_smooth", s.is_smooth(), json!(s.is_smooth()), "SETUP_VIOLATION")?;
    let e = match input.origin {
        Some(o) => CubicModel::new(c, ProjPoint::from_ints(p, o)?)?,
        None => CubicModel::with_first_flex(c)?,
    };
    let curve = e.curve().clone();

    // (1) three closed points of degree m prime to p with principal differences
    let search = find_split_triple(&e, input.m_max, opts.budget, |m| m % p as u32 != 0)?;
    cert.set("closed_point_counts", search.counts_json());
    let t = search.triple.ok_or(Error::SearchExhausted(input.m_max))?;
    let m = t.m;
    cert.set("m", json!(m));
    cert.set(
        "triple",
        json!({ "p_inf": t.p_inf.key(), "p1": t.p1.key(), "p2": t.p2.key(), "common_trace": t.trace.coordinate_strings() }),
    );
    cert.check("m_prime_to_p", m % p as u32 != 0, json!({ "m": m, "p": p }));

    // (2) f = f1 f2 and h = f1 / f2
    let f = t.f1.mul(&t.f2)?;
    let h = t.f1.mul(&t.f2.inv())?;
    let pts: [(&str, &ClosedPoint); 3] = [("P1", &t.p1), ("P2", &t.p2), ("P_inf", &t.p_inf)];
    let vals = |g: &LineProductFunction| -> Result<Vec<i64>> { pts.iter().map(|(_, q)| Ok(g.laurent_at_closed(&curve, q)?.valuation)).collect() };
    let (vf1, vf2, vf, vh) = (vals(&t.f1)?, vals(&t.f2)?, vals(&f)?, vals(&h)?);
    cert.check(
        "divisors",
        vf1 == [1, 0, -1] && vf2 == [0, 1, -1] && vf == [1, 1, -2] && vh == [1, -1, 0],
        json!({ "points": ["P1", "P2", "P_inf"], "f1": vf1, "f2": vf2, "f": vf, "h": vh }),
    );
    cert.set("f", f.to_json());

    // (3) Artin-Schreier-Witt table
    let mut table = Vec::new();
    let mut local_degrees = Vec::new();
    for (name, q) in pts {
        let l1 = asw_splitting(&curve, q, &f, 1)?;
        let l2 = asw_splitting(&curve, q, &f, 2)?;
        let ld = f.laurent_at_closed(&curve, q)?;
        let expected = layer_one_criterion(p, &ld);
        let got1 = l1.uniform().map(|d| d.label()).unwrap_or("mixed");
        let got2 = l2.uniform().map(|d| d.label()).unwrap_or("mixed");
        cert.check(&format!("layer1_criterion_{name}"), got1 == expected, json!({ "table": got1, "criterion": expected }));
        match name {
            "P_inf" => {
                cert.check("layer1_ramified_at_P_inf", got1 == "totally_ramified", json!(got1));
            }
            _ => {
                cert.check(&format!("layer1_split_at_{name}"), got1 == "split", json!(got1));
                // every layer-one place above a zero of f sees a simple pole of 1/f
                cert.check(&format!("layer2_ramified_above_{name}"), got2 == "totally_ramified" && l2.places.len() as u64 == p, json!(got2));
            }
        }
        table.push(json!({ "point": name, "layer1": l1.to_json(), "layer2": l2.to_json() }));
        local_degrees.push(tower_local_degrees(&l1, &l2));
    }
    cert.set("asw_table", json!(table));

    // (4) alpha = psi ∪ δh with psi unramified of order p^2
    let p2 = u128::from(p) * u128::from(p);
    let psi = UnramCharacter::new(p2, 1)?;
    let mut alpha = InvariantVector::new();
    for (_, q) in &pts[..2] {
        let ld = h.laurent_at_closed(&curve, q)?;
        alpha.add_at((*q).clone(), unram_cup_invariant(&psi, &ld, u64::from(q.degree())));
    }
    let ord = |q: &ClosedPoint, v: &InvariantVector| v.get(q).order();
    cert.check(
        "alpha_orders",
        ord(&t.p1, &alpha) == p2 && ord(&t.p2, &alpha) == p2 && ord(&t.p_inf, &alpha) == 1,
        alpha.to_json(),
    );
    cert.check("alpha_reciprocity", alpha.sum().is_zero(), json!(alpha.sum().to_string()));

    // (5) restriction to the field of chi multiplies each invariant by the local degree
    let restricted = |v: &InvariantVector, use_layer2: bool| -> InvariantVector {
        InvariantVector::from_entries(pts[..2].iter().zip(&local_degrees).map(|((_, q), ld)| {
            let (d1, d2) = ld.expect("uniform splitting");
            let k = if use_layer2 { d1 * d2 } else { d1 };
            ((*q).clone(), v.get(q).mul_int(i128::from(k)))
        }))
    };
    let alpha_res = restricted(&alpha, true);
    let ind_alpha_res = class_index(&alpha_res);
    cert.check(
        "restricted_orders",
        ord(&t.p1, &alpha_res) == u128::from(p) && ord(&t.p2, &alpha_res) == u128::from(p),
        json!({ "local_degrees": local_degrees.iter().map(|d| d.map(|(a, b)| a * b)).collect::<Vec<_>>(), "invariants": alpha_res.to_json() }),
    );
    let ind_beta = nakayama_index(p2, ind_alpha_res);

    // p beta = p psi ∪ δh + p chi ∪ δπ, where p chi cuts out the first layer only
    let p_alpha = InvariantVector::from_entries(alpha.entries().iter().map(|(q, a)| (q.clone(), a.mul_int(i128::from(p)))));
    let p_alpha_res = restricted(&p_alpha, false);
    let ind_p_beta = nakayama_index(u128::from(p), class_index(&p_alpha_res));
    cert.check(
        "p_alpha_restricted_orders",
        p_alpha_res.entries().values().all(|a| a.order() == u128::from(p)) && p_alpha_res.entries().len() == 2,
        p_alpha_res.to_json(),
    );

    let p3 = p2 * u128::from(p);
    cert.set("p", json!(p));
    cert.set("period", json!(p2.to_string()));
    cert.set("alpha_restricted_index", json!(ind_alpha_res.to_string()));
    cert.set("index_lower_bound", json!(ind_beta.to_string()));
    cert.set("index_upper_bound", json!(p3.to_string()));
    cert.set("p_beta_index_lower_bound", json!(ind_p_beta.to_string()));
    cert.set("p_beta_index_upper_bound", json!(p2.to_string()));
    cert.cite(
        "index_of_tame_class",
        "for beta = alpha + (pi) cup chi over a complete discretely valued field, ind(beta) = |chi| ind(alpha restricted to the field of chi)",
    );
    cert.cite(
        "lift_splitting",
        "over the local ring of the model at P_i, the degree-p layer splits P_i into p horizontal divisors, each totally ramified in the second layer",
    );
    cert.cite(
        "index_upper_bound",
        "the compositum of the unramified degree-p extension of K and the degree-p^2 cover splits beta, so ind(beta) <= p^3, and likewise ind(p beta) <= p^2",
    );
    cert.cite("indecomposability", "if beta has period p^r and ind(p beta) = ind(beta) / p, then beta is indecomposable");
    Ok(())
}

pub(super) fn conclude(v: &Value) -> Option<String> {
    let p = get_u128(v, "p")?;
    let (lo, hi) = (get_u128(v, "index_lower_bound")?, get_u128(v, "index_upper_bound")?);
    let (plo, phi) = (get_u128(v, "p_beta_index_lower_bound")?, get_u128(v, "p_beta_index_upper_bound")?);
    if !super::cited(v, "index_upper_bound") || !super::cited(v, "indecomposability") {
        return None;
    }
    let p3 = p * p * p;
    if lo != p3 || hi != p3 || plo != p * p || phi != p * p {
        return None;
    }
    Some(format!("beta has period {} and index {p3}; ind(p beta) = {} = ind(beta)/{p}, so beta is indecomposable", p * p, p * p))
}
