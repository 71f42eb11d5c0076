//! The constants `zeta_2, zeta, lambda_2, lambda, eta, eta~` in `Z_(p)[zeta_2]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::cyclotomic::{Cyc, CyclotomicRing};
use crate::algebra::integers::is_prime;
use crate::algebra::ring::{Domain, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSConstants {
    pub p: u64,
    pub ring: CyclotomicRing,
    pub zeta2: Cyc,
    pub zeta: Cyc,
    pub lambda2: Cyc,
    pub lambda: Cyc,
    pub eta: Cyc,
    pub eta_tilde: Cyc,
}

/// A deliberate corruption of one stored constant by `+lambda_2`, used to
/// check that the verifications can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mutation {
    Eta,
    EtaTilde,
    Lambda,
    Lambda2,
    Zeta,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [Mutation::Eta, Mutation::EtaTilde, Mutation::Lambda, Mutation::Lambda2, Mutation::Zeta];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::Eta => "eta",
            Mutation::EtaTilde => "eta_tilde",
            Mutation::Lambda => "lambda",
            Mutation::Lambda2 => "lambda2",
            Mutation::Zeta => "zeta",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown mutation {s:?}")))
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// `sum_{k=1}^{p-1} (-1)^(k-1) x^k / k`.
pub fn truncated_log(ring: &CyclotomicRing, x: &Cyc) -> Cyc {
    let p = ring.p();
    let mut acc = ring.zero();
    let mut xk = ring.one();
    for k in 1..p {
        xk = ring.mul(&xk, x);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = ring.from_rational(&BigRational::new(BigInt::from(sign), BigInt::from(k))).expect("k < p");
        acc = ring.add(&acc, &ring.mul(&c, &xk));
    }
    acc
}

/// `(lambda^(p-1) / p) (p eta - lambda)`.
pub fn eta_tilde_of(ring: &CyclotomicRing, lambda: &Cyc, eta: &Cyc) -> Result<Cyc> {
    let p = ring.from_i64(ring.p() as i64);
    let u = ring
        .div_exact(&ring.pow(lambda, u128::from(ring.p() - 1)), &p)
        .ok_or_else(|| Error::IntegralityViolation("lambda^(p-1) / p".into()))?;
    Ok(ring.mul(&u, &ring.sub(&ring.mul(&p, eta), lambda)))
}

pub fn build_constants(p: u64) -> Result<SSConstants> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if p == 2 {
        return Err(Error::Unsupported("the lifting constants are only built for odd p".into()));
    }
    let ring = CyclotomicRing::new(p);
    let zeta2 = ring.zeta2();
    let zeta = ring.pow(&zeta2, u128::from(p));
    let lambda2 = ring.sub(&zeta2, &ring.one());
    let lambda = ring.sub(&zeta, &ring.one());
    let eta = truncated_log(&ring, &lambda2);
    let eta_tilde = eta_tilde_of(&ring, &lambda, &eta)?;
    Ok(SSConstants { p, ring, zeta2, zeta, lambda2, lambda, eta, eta_tilde })
}

impl SSConstants {
    pub fn mutate(&self, m: Mutation) -> Self {
        let r = &self.ring;
        let mut out = self.clone();
        let slot = match m {
            Mutation::Eta => &mut out.eta,
            Mutation::EtaTilde => &mut out.eta_tilde,
            Mutation::Lambda => &mut out.lambda,
            Mutation::Lambda2 => &mut out.lambda2,
            Mutation::Zeta => &mut out.zeta,
        };
        *slot = r.add(slot, &self.lambda2);
        out
    }

    fn named(&self) -> [(&'static str, &Cyc); 6] {
        [
            ("zeta2", &self.zeta2),
            ("zeta", &self.zeta),
            ("lambda2", &self.lambda2),
            ("lambda", &self.lambda),
            ("eta", &self.eta),
            ("eta_tilde", &self.eta_tilde),
        ]
    }

    /// SHA-256 of the canonical coefficient serialization of each constant.
    pub fn fingerprints(&self) -> BTreeMap<String, String> {
        self.named().iter().map(|(n, c)| (n.to_string(), fingerprint(&c.canonical_string()))).collect()
    }

    pub fn valuations(&self) -> BTreeMap<String, Option<u64>> {
        self.named().iter().map(|(n, c)| (n.to_string(), self.ring.valuation(c))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "fingerprints": self.fingerprints(),
            "valuations": self.valuations().into_iter().map(|(k, v)| (k, json!(v))).collect::<BTreeMap<_, _>>(),
        })
    }
}

pub fn fingerprint(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_three() {
        let c = build_constants(3).unwrap();
        let r = &c.ring;
        // eta = lambda_2 - lambda_2^2 / 2
        let half = r.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        let expect = r.sub(&c.lambda2, &r.mul(&half, &r.mul(&c.lambda2, &c.lambda2)));
        assert_eq!(c.eta, expect);
        assert_eq!(r.valuation(&c.lambda), Some(3));
        assert_eq!(r.valuation(&c.eta), Some(1));
        assert_eq!(r.valuation(&c.eta_tilde), Some(3));
        assert_eq!(build_constants(2), Err(Error::Unsupported("the lifting constants are only built for odd p".into())));
        assert_eq!(build_constants(9), Err(Error::InvalidPrime(9)));
    }

    #[test]
    fn lambda_power_over_p_is_a_unit() {
        for p in [3u64, 5] {
            let c = build_constants(p).unwrap();
            let r = &c.ring;
            let lp = r.pow(&c.lambda, u128::from(p - 1));
            assert_eq!(r.valuation(&lp), r.valuation(&r.from_i64(p as i64)));
            assert_eq!(r.valuation(&lp), Some(p * (p - 1)));
        }
    }

    #[test]
    fn mutations_change_one_constant() {
        let c = build_constants(3).unwrap();
        for m in Mutation::ALL {
            let d = c.mutate(m);
            let changed = c.named().iter().zip(d.named().iter()).filter(|(a, b)| a.1 != b.1).count();
            assert_eq!(changed, 1, "{m}");
            assert_eq!(Mutation::parse(m.name()).unwrap(), m);
        }
    }
}
