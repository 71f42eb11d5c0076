//! Exact checks of the truncated-exponential lifting identities over
//! `Z_(p)[zeta_{p^2}]`.

use serde_json::{json, Value};

use crate::algebra::integers::is_prime;
use crate::error::Error;
use crate::ss_lift::{ss_verify, Mutation};

use super::input::SsVerifyInput;
use super::{finalize, Certificate, Pipeline, RunOptions, Step};

/// Checks against the `- c` sign of the second Witt coordinate. Witt vector
/// subtraction gives `+ c`, which is checked separately and required.
const STATED_SIGN_CHECKS: [&str; 1] = ["psi1_special_fiber"];

pub fn certify(input: &SsVerifyInput, opts: &RunOptions) -> Certificate {
    let mut cert = Certificate::new(Pipeline::SsVerify, input);
    let outcome = body(&mut cert, input, opts);
    finalize(cert, outcome)
}

/// Rough operation count: cyclotomic multiplications times monomials in the
/// group-law checks. Above the default budget from `p = 7` on.
pub fn estimated_work(p: u64) -> u128 {
    let phi = u128::from(p) * u128::from(p - 1);
    let p = u128::from(p);
    phi * phi * p.pow(6)
}

fn body(cert: &mut Certificate, input: &SsVerifyInput, opts: &RunOptions) -> Step<()> {
    let p = input.p;
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p).into());
    }
    if p == 2 {
        return Err(Error::Unsupported("the truncated exponential needs p odd".into()).into());
    }
    let work = estimated_work(p);
    if work > opts.budget {
        return Err(Error::BudgetExceeded { required: work, budget: opts.budget }.into());
    }
    let mutation = input.mutation.as_deref().map(Mutation::parse).transpose()?;
    let rep = ss_verify(p, mutation, input.deep)?;
    for ch in &rep.checks {
        let witness = json!({ "margin": ch.margin, "detail": ch.witness, "experimental": ch.experimental });
        if ch.experimental || STATED_SIGN_CHECKS.contains(&ch.name.as_str()) {
            cert.record(&ch.name, ch.passed, witness);
        } else {
            cert.check(&ch.name, ch.passed, witness);
        }
    }
    cert.set("p", json!(p));
    cert.set("mutation", json!(mutation.map(|m| m.name())));
    cert.set("constants", rep.constants.to_json());
    cert.set("polynomial_fingerprints", json!(rep.poly_fingerprints));
    cert.cite("witt_subtraction", "(a0, a1) - (b0, b1) = (a0 - b0, a1 - b1 + c(a0, -b0)) in W_2 over F_p");
    Ok(())
}

pub(super) fn conclude(v: &Value) -> Option<String> {
    let p = v["computed"]["p"].as_u64()?;
    if !v["computed"]["mutation"].is_null() {
        return None;
    }
    Some(format!("all lifting identities hold for p = {p}"))
}
