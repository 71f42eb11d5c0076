//! `Br(X)[n]` for a curve with good reduction `E`, computed two ways.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::integers::is_prime;
use crate::brauer::good_reduction_brauer_structure;
use crate::curves::elliptic::CubicModel;
use crate::curves::plane::{certify_smooth_with_budget, PlaneCurve, Smoothness};
use crate::curves::point::ProjPoint;
use crate::error::{Error, Result};

use super::input::{curve_from_rows, FormRows, GoodredInput};
use super::{finalize, Certificate, Pipeline, RunOptions, Step};

pub fn certify(input: &GoodredInput, opts: &RunOptions) -> Certificate {
    let mut cert = Certificate::new(Pipeline::Goodred, input);
    let outcome = body(&mut cert, input, opts);
    finalize(cert, outcome)
}

/// Rows of `y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3`.
pub fn weierstrass_rows(a: [i64; 5]) -> FormRows {
    let [a1, a2, a3, a4, a6] = a;
    vec![[0, 2, 1, 1], [1, 1, 1, a1], [0, 1, 2, a3], [3, 0, 0, -1], [2, 0, 1, -a2], [1, 0, 2, -a4], [0, 0, 3, -a6]]
}

/// A smooth Weierstrass cubic over `F_p` drawn from `rng`, with origin `(0:1:0)`.
pub fn random_smooth_cubic(p: u64, rng: &mut impl Rng) -> Result<(FormRows, CubicModel)> {
    for _ in 0..1000 {
        let a: [i64; 5] = std::array::from_fn(|_| rng.gen_range(0..p) as i64);
        let rows = weierstrass_rows(a);
        let c = curve_from_rows(p, &rows)?;
        if certify_smooth_with_budget(&c, u128::MAX)?.is_smooth() {
            let e = CubicModel::new(c, ProjPoint::from_ints(p, [0, 1, 0])?)?;
            return Ok((rows, e));
        }
    }
    Err(Error::Indeterminate("no smooth cubic in 1000 draws".into()))
}

fn body(cert: &mut Certificate, input: &GoodredInput, opts: &RunOptions) -> Step<()> {
    let (p, n) = (input.p, input.n);
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p).into());
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()).into());
    }
    if n % p == 0 {
        return Err(Error::TameOnly { p, n }.into());
    }
    let (rows, c): (FormRows, PlaneCurve) = match &input.cubic {
        Some(rows) => (rows.clone(), curve_from_rows(p, rows)?),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let (rows, e) = random_smooth_cubic(p, &mut rng)?;
            (rows, e.curve().clone())
        }
    };
    if c.degree() != 3 {
        return Err(Error::InvalidInput(format!("expected a cubic, got degree {}", c.degree())).into());
    }
    let s = certify_smooth_with_budget(&c, opts.budget)?;
    let witness = match &s {
        Smoothness::Smooth(w) => w.to_json(),
        Smoothness::Singular { point, note } => json!({ "singular_point": point.as_ref().map(|p| p.key()), "note": note }),
    };
    cert.require("special_fiber_smooth", s.is_smooth(), witness, "SETUP_VIOLATION")?;
    let e = match input.origin {
        Some(o) => CubicModel::new(c, ProjPoint::from_ints(p, o)?)?,
        None => CubicModel::with_first_flex(c)?,
    };
    let r = good_reduction_brauer_structure(&e, n, opts.budget)?;
    cert.check("routes_agree", r.agree(), json!({ "by_formula": r.by_formula.to_json(), "by_counting": r.by_counting.to_json() }));
    cert.check("order_consistent", r.order_consistent(), json!({ "order": r.by_formula.order().to_string() }));
    cert.set("p", json!(p));
    cert.set("n", json!(n));
    cert.set("cubic", json!(rows));
    cert.set("origin", json!(e.origin().coordinate_strings()));
    cert.set("report", r.to_json());
    cert.set("structure", json!(r.by_formula.to_string()));
    // each generator is (pi) cup chi~ with chi~ of the listed order
    cert.set(
        "cyclic_presentation",
        json!({
            "uniformizer": "pi",
            "character_orders": r.by_formula.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        }),
    );
    cert.cite(
        "torsion_structure",
        "for X with good reduction E over a p-adic field and p not dividing n, Br(X)[n] = Z/n + Hom(E(k)/n, Z/n)",
    );
    cert.cite(
        "cyclic_presentation",
        "for p not dividing n every class in Br(X)[n] is (pi) cup chi for a character chi of order dividing n",
    );
    Ok(())
}

pub(super) fn conclude(v: &Value) -> Option<String> {
    if !super::check_passed(v, "routes_agree") || !super::cited(v, "cyclic_presentation") {
        return None;
    }
    let n = super::get_u128(v, "n")?;
    let s = v["computed"]["structure"].as_str()?;
    Some(format!("Br(X)[{n}] = {s} and every element is cyclic"))
}
