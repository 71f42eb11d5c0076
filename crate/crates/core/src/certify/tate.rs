//! `Br(E_q)[m]` for a Tate curve with a cyclicity certificate per element order.

use serde_json::{json, Value};

use crate::tate::{certify_all, tate_coefficients, BrauerTorsion, TateFieldDesc};

use super::input::TateInput;
use super::{finalize, get_u128, sha256_hex, Certificate, Pipeline, RunOptions, Step};

pub fn certify(input: &TateInput, opts: &RunOptions) -> Certificate {
    let mut cert = Certificate::new(Pipeline::Tate, input);
    let outcome = body(&mut cert, input, opts);
    finalize(cert, outcome)
}

fn body(cert: &mut Certificate, input: &TateInput, opts: &RunOptions) -> Step<()> {
    let k = TateFieldDesc::new(input.p, input.a, true)?;
    if input.m == 0 {
        return Err(crate::error::Error::InvalidInput("m must be positive".into()).into());
    }
    let tor = BrauerTorsion::new(k, u128::from(input.m))?;
    let structure = tor.structure();

    let (a4, a6) = tate_coefficients(input.precision.max(1))?;
    let lead = |s: &crate::tate::PowerSeriesZ, n: usize| s.coeffs().get(n).map(|c| c.to_string());
    cert.check(
        "weierstrass_series_leading_terms",
        lead(&a4, 0).as_deref() == Some("-5") && lead(&a6, 0).as_deref() == Some("-1"),
        json!({ "a4_q": lead(&a4, 0), "a6_q": lead(&a6, 0) }),
    );
    cert.set(
        "series_fingerprints",
        json!({
            "precision": input.precision,
            "a4": sha256_hex(&a4.canonical_string()),
            "a6": sha256_hex(&a6.canonical_string()),
        }),
    );

    let order = structure.order();
    let m = tor.m;

    let sum = certify_all(&tor, k.mu_order(), opts.budget)?;
    let samples_ok = sum.samples.iter().all(|c| c.check(&tor));
    cert.check("certificates_recheck", samples_ok, json!(sum.samples.len()));
    cert.check("elements_enumerated", sum.elements == order, json!(order.to_string()));
    cert.record(
        "every_element_certified",
        sum.elements == order && sum.inconclusive == 0,
        json!({ "elements": sum.elements.to_string(), "cyclic": sum.cyclic.to_string(), "inconclusive": sum.inconclusive.to_string() }),
    );

    cert.set("p", json!(k.p));
    cert.set("a", json!(k.a));
    cert.set("m", json!(m.to_string()));
    cert.set("mu_order", json!(k.mu_order()));
    cert.set("structure", json!(structure.to_string()));
    cert.set("invariant_factors", json!(structure.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>()));
    cert.set("cyclic_elements", json!(sum.cyclic.to_string()));
    cert.set("samples", json!(sum.samples.iter().map(|c| c.to_json()).collect::<Vec<_>>()));
    cert.cite("tate_uniformization", "E_q(K) = K^x / q^Z as a rigid analytic group");
    cert.cite(
        "tate_curve_brauer_group",
        "Br(E_q) = Br(K) + H^1(K, Z/m) paired against K^x/q^Z, so Br(E_q)[m] = Z/m + Hom(K^x/q^Z, Q/Z)[m]",
    );
    cert.cite(
        "cyclic_splitting",
        "a class (chi, b) is split by the cyclic extension cut out by any order-m character chi~ with (m/|chi|) chi~ = chi",
    );
    Ok(())
}

pub(super) fn conclude(v: &Value) -> Option<String> {
    let m = get_u128(v, "m")?;
    let s = v["computed"]["structure"].as_str()?;
    if !super::cited(v, "cyclic_splitting") {
        return None;
    }
    if super::check_passed(v, "every_element_certified") {
        Some(format!("Br(E_q)[{m}] = {s} and every element is cyclic"))
    } else {
        let c = get_u128(v, "cyclic_elements")?;
        Some(format!("Br(E_q)[{m}] = {s}; {c} elements are certified cyclic, the rest are inconclusive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: u64, a: u64, m: u64) -> Certificate {
        certify(&TateInput { p, a, m, precision: 12 }, &RunOptions::default())
    }

    #[test]
    fn q5_examples() {
        for m in [25u64, 3, 4, 1] {
            let c = run(5, 1, m);
            assert_eq!(c.exit_code(), 0, "{}", c.to_json());
            super::super::audit(&c.to_json()).unwrap();
        }
        assert_eq!(run(5, 1, 1).conclusion.unwrap(), "Br(E_q)[1] = 0 and every element is cyclic");
        assert_eq!(run(2, 1, 3).failure.unwrap().code, "UNSUPPORTED");
        assert_eq!(run(5, 0, 3).failure.unwrap().code, "INVALID_INPUT");
    }
}
