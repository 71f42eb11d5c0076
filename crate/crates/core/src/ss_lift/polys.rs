//! Truncated exponentials `F`, `G`, the isogeny `Psi = (Psi_0, Psi_1)`,
//! the comultiplication polynomials and the Witt carry `c(X, Y)` over `Z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::cyclotomic::Cyc;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

use super::constants::SSConstants;
use super::cpoly::{CycloPoly, CycloPolyRing, X0, X1, Y0, Y1};

/// `sum_{k<p} (c T)^k / k!` as a coefficient list.
pub fn truncated_exp(c: &SSConstants, a: &Cyc) -> Vec<Cyc> {
    let r = &c.ring;
    let mut out = Vec::with_capacity(c.p as usize);
    let mut fact = BigInt::one();
    let mut ak = r.one();
    for k in 0..c.p {
        if k > 0 {
            fact *= BigInt::from(k);
            ak = r.mul(&ak, a);
        }
        let inv = r.from_rational(&BigRational::new(BigInt::one(), fact.clone())).expect("k! is prime to p for k < p");
        out.push(r.mul(&ak, &inv));
    }
    out
}

pub fn truncated_exp_polys(c: &SSConstants) -> (Vec<Cyc>, Vec<Cyc>) {
    (truncated_exp(c, &c.eta), truncated_exp(c, &c.eta_tilde))
}

/// `Psi_1 = numerator / (lambda T_0 + 1)`, the denominator kept as a formal unit.
#[derive(Clone, Debug)]
pub struct FormalFraction {
    pub numerator: CycloPoly,
    pub unit: &'static str,
    pub unit_power: u32,
}

#[derive(Clone, Debug)]
pub struct IsogenyPolys {
    pub f: Vec<Cyc>,
    pub g: Vec<Cyc>,
    /// Coefficients of `Psi_0(T)`.
    pub psi0: Vec<Cyc>,
    pub psi1: FormalFraction,
    pub lambda0_f: CycloPoly,
    pub lambda1_f: CycloPoly,
    pub lambda0_g: CycloPoly,
    pub lambda1_g: CycloPoly,
    pub c_poly: BTreeMap<(u32, u32), BigInt>,
}

/// `((l T + 1)^p - 1) / l^p`.
pub fn psi0_coeffs(c: &SSConstants, l: &Cyc) -> Result<Vec<Cyc>> {
    let r = &c.ring;
    let p = c.p;
    let mut nums = vec![r.zero()];
    let mut binom = BigInt::one();
    let mut lk = r.one();
    for k in 1..=p {
        binom = binom * BigInt::from(p - k + 1) / BigInt::from(k);
        lk = r.mul(&lk, l);
        nums.push(r.mul(&r.from_bigint(binom.clone()), &lk));
    }
    r.div_exact_all(&nums, &r.pow(l, u128::from(p)))
        .ok_or_else(|| Error::IntegralityViolation("Psi_0 coefficient".into()))
}

/// `l x y + x + y`.
pub fn lambda0(pr: &CycloPolyRing, l: &Cyc, x: &CycloPoly, y: &CycloPoly) -> CycloPoly {
    pr.add(&pr.scale(&pr.mul(x, y), l), &pr.add(x, y))
}

/// `l X1 Y1 + X1 E(Y0) + E(X0) Y1 + (E(X0) E(Y0) - E(l X0 Y0 + X0 + Y0)) / l`
/// for a truncated exponential `E`, evaluated at polynomial arguments.
pub fn lambda1(pr: &CycloPolyRing, l: &Cyc, e: &[Cyc], args: [&CycloPoly; 4]) -> Result<CycloPoly> {
    let [x0, x1, y0, y1] = args;
    let ex = pr.eval_univariate(e, x0);
    let ey = pr.eval_univariate(e, y0);
    let es = pr.eval_univariate(e, &lambda0(pr, l, x0, y0));
    let carry = pr.div_scalar(&pr.sub(&pr.mul(&ex, &ey), &es), l, "E(X0)E(Y0) - E(Lambda_0)")?;
    let mut acc = pr.scale(&pr.mul(x1, y1), l);
    acc = pr.add(&acc, &pr.mul(x1, &ey));
    acc = pr.add(&acc, &pr.mul(&ex, y1));
    Ok(pr.add(&acc, &carry))
}

/// Numerator of `Psi_1`: `((l T1 + F(T0))^p - (l T0 + 1) G(Psi_0(T0))) / l^p`.
pub fn psi1_numerator(pr: &CycloPolyRing, c: &SSConstants, f: &[Cyc], g: &[Cyc], psi0: &[Cyc], t0: &CycloPoly, t1: &CycloPoly) -> Result<CycloPoly> {
    let u1 = pr.add(&pr.scale(t1, &c.lambda), &pr.eval_univariate(f, t0));
    let u0 = pr.add(&pr.scale(t0, &c.lambda), &pr.one());
    let second = pr.mul(&u0, &pr.eval_univariate(g, &pr.eval_univariate(psi0, t0)));
    let diff = pr.sub(&pr.pow(&u1, u128::from(c.p)), &second);
    pr.div_scalar(&diff, &c.ring.pow(&c.lambda, u128::from(c.p)), "Psi_1 numerator")
}

/// `c(X, Y) = (X^p + Y^p - (X + Y)^p) / p` over `Z`, keyed by `(deg_X, deg_Y)`.
pub fn c_poly(p: u64) -> Result<BTreeMap<(u32, u32), BigInt>> {
    let mut out = BTreeMap::new();
    let pb = BigInt::from(p);
    let mut binom = BigInt::one();
    for i in 1..p {
        binom = binom * BigInt::from(p - i + 1) / BigInt::from(i);
        let (q, rem) = (-&binom).div_rem(&pb);
        if !rem.is_zero() {
            return Err(Error::IntegralityViolation(format!("binomial({p},{i}) is not divisible by p")));
        }
        out.insert((i as u32, (p - i) as u32), q);
    }
    Ok(out)
}

pub fn isogeny_polys(c: &SSConstants) -> Result<IsogenyPolys> {
    let pr = CycloPolyRing::new(c.ring.clone());
    let (f, g) = truncated_exp_polys(c);
    let psi0 = psi0_coeffs(c, &c.lambda)?;
    let (x0, x1, y0, y1) = (pr.var(X0), pr.var(X1), pr.var(Y0), pr.var(Y1));
    let lp = c.ring.pow(&c.lambda, u128::from(c.p));
    let psi1 = FormalFraction {
        numerator: psi1_numerator(&pr, c, &f, &g, &psi0, &x0, &x1)?,
        unit: "lambda*X0 + 1",
        unit_power: 1,
    };
    Ok(IsogenyPolys {
        lambda0_f: lambda0(&pr, &c.lambda, &x0, &y0),
        lambda1_f: lambda1(&pr, &c.lambda, &f, [&x0, &x1, &y0, &y1])?,
        lambda0_g: lambda0(&pr, &lp, &x0, &y0),
        lambda1_g: lambda1(&pr, &lp, &g, [&x0, &x1, &y0, &y1])?,
        c_poly: c_poly(c.p)?,
        f,
        g,
        psi0,
        psi1,
    })
}
