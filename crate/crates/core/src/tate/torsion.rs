//! `Br(E_q)[m]` for a Tate curve over `Q_p` with `q = p^a`, modelled as
//! `Hom(Q_p^x / q^Z, Q/Z)[m] + Z/m`, and cyclicity certificates.
//!
//! Characters of `Q_p^x = p^Z x mu_{p-1} x (1 + pZ_p)` killed by `m` are
//! stored as `(x, y, z)` with `chi(p) = x/m`, `chi(g) = y/gcd(m, p-1)` for a
//! generator `g` of `mu_{p-1}`, and `chi(1 + p) = z/p^v`, `p^v || m`.

use serde_json::{json, Value};

use crate::algebra::abelian::FiniteAbelianGroup;
use crate::algebra::integers::{gcd_u128, is_prime, valuation_u128};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateFieldDesc {
    pub p: u64,
    /// `v_p(q) >= 1`.
    pub a: u64,
}

impl TateFieldDesc {
    pub fn new(p: u64, a: u64, trivial_unit: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if p == 2 {
            return Err(Error::Unsupported("Q_2 has a non-procyclic unit group".into()));
        }
        if a == 0 {
            return Err(Error::InvalidInput("|q| < 1 needs v_p(q) >= 1".into()));
        }
        if !trivial_unit {
            return Err(Error::Unsupported("q must be a power of p".into()));
        }
        Ok(Self { p, a })
    }

    /// `|mu(Q_p)|`.
    pub fn mu_order(&self) -> u64 {
        self.p - 1
    }
}

pub type Character = [u128; 3];

/// An element `(chi, b)` of `Hom(Q_p^x / q^Z, Q/Z)[m] + Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BrElement {
    pub chi: Character,
    pub b: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerTorsion {
    pub field: TateFieldDesc,
    pub m: u128,
    /// Moduli of the three character coordinates.
    pub moduli: [u128; 3],
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd_u128(a, b) * b
}

impl BrauerTorsion {
    pub fn new(field: TateFieldDesc, m: u128) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        let p = u128::from(field.p);
        let pv = p.pow(valuation_u128(m, p));
        Ok(Self { field, m, moduli: [m, gcd_u128(m, p - 1), pv] })
    }

    pub fn structure(&self) -> FiniteAbelianGroup {
        let [m, g, pv] = self.moduli;
        FiniteAbelianGroup::from_cyclic(&[gcd_u128(m, u128::from(self.field.a)), g, pv, m])
    }

    pub fn character_order(&self, chi: &Character) -> u128 {
        self.moduli.iter().zip(chi).map(|(&n, &c)| n / gcd_u128(n, c % n)).fold(1, lcm)
    }

    pub fn kills_q(&self, chi: &Character) -> bool {
        (u128::from(self.field.a) % self.m) * chi[0] % self.m == 0
    }

    pub fn element_order(&self, el: &BrElement) -> u128 {
        lcm(self.character_order(&el.chi), self.m / gcd_u128(self.m, el.b))
    }

    pub fn validate(&self, el: &BrElement) -> Result<()> {
        if el.chi.iter().zip(&self.moduli).any(|(c, n)| c >= n) || el.b >= self.m {
            return Err(Error::BadElement(format!("coordinates out of range for m = {}", self.m)));
        }
        if !self.kills_q(&el.chi) {
            return Err(Error::BadElement("character does not vanish on q".into()));
        }
        Ok(())
    }

    /// The characters of `Q_p^x / q^Z` killed by `m`.
    pub fn q_characters(&self) -> Vec<Character> {
        let [m, g, pv] = self.moduli;
        let step = m / gcd_u128(m, u128::from(self.field.a));
        let mut out = Vec::new();
        for x in (0..m).step_by(step as usize) {
            for y in 0..g {
                for z in 0..pv {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = BrElement> + '_ {
        self.q_characters().into_iter().flat_map(move |chi| (0..self.m).map(move |b| BrElement { chi, b }))
    }
}

/// `Br(E_q)[m]` as an abstract group.
pub fn brauer_torsion_structure(k: &TateFieldDesc, m: u128) -> Result<FiniteAbelianGroup> {
    Ok(BrauerTorsion::new(*k, m)?.structure())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicityVerdict {
    /// `chi = multiplier * splitting_character`, and the splitting character has order `m`:
    /// its cyclic extension of degree `m` splits the class.
    Cyclic { splitting_character: Character, multiplier: u128 },
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicityCertificate {
    pub m: u128,
    pub mu_order: u64,
    pub element: BrElement,
    pub element_order: u128,
    pub verdict: CyclicityVerdict,
}

impl CyclicityCertificate {
    pub fn is_cyclic(&self) -> bool {
        matches!(self.verdict, CyclicityVerdict::Cyclic { .. })
    }

    /// Recompute the defining relations of a cyclic verdict.
    pub fn check(&self, tor: &BrauerTorsion) -> bool {
        match &self.verdict {
            CyclicityVerdict::Cyclic { splitting_character: s, multiplier: t } => {
                tor.character_order(s) == tor.m
                    && (0..3).all(|i| t % tor.moduli[i] * s[i] % tor.moduli[i] == self.element.chi[i])
            }
            CyclicityVerdict::Inconclusive(_) => true,
        }
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            CyclicityVerdict::Cyclic { splitting_character, multiplier } => json!({
                "status": "CYCLIC",
                "splitting_character": splitting_character.map(|c| c.to_string()),
                "multiplier": multiplier.to_string(),
                "splitting_degree": self.m.to_string(),
            }),
            CyclicityVerdict::Inconclusive(why) => json!({ "status": "INCONCLUSIVE", "reason": why }),
        };
        json!({
            "element": {
                "character": self.element.chi.map(|c| c.to_string()),
                "constant": self.element.b.to_string(),
            },
            "element_order": self.element_order.to_string(),
            "mu_order": self.mu_order,
            "verdict": verdict,
        })
    }
}

/// All `u mod n` with `t u = c mod n`.
fn divide_in_cyclic(t: u128, c: u128, n: u128) -> Vec<u128> {
    let g = gcd_u128(t % n, n);
    let g = if g == 0 { n } else { g };
    if c % g != 0 {
        return Vec::new();
    }
    let n1 = n / g;
    let u0 = if n1 == 1 { 0 } else { (c / g) % n1 * inverse_mod((t / g) % n1, n1) % n1 };
    (0..g).map(|k| u0 + k * n1).collect()
}

fn inverse_mod(a: u128, n: u128) -> u128 {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(n as i128) as u128
}

/// Search for an order-`m` character `chi~` of `Q_p^x` with `(m / ord chi) chi~ = chi`
/// when `m` is prime or prime to `|mu(K)|`.
pub fn cyclicity_certificate(tor: &BrauerTorsion, mu_order: u64, el: &BrElement) -> Result<CyclicityCertificate> {
    tor.validate(el)?;
    let m = tor.m;
    let element_order = tor.element_order(el);
    let mut cert = CyclicityCertificate {
        m,
        mu_order,
        element: *el,
        element_order,
        verdict: CyclicityVerdict::Inconclusive(String::new()),
    };
    let prime = m <= u128::from(u64::MAX) && is_prime(m as u64);
    if !prime && gcd_u128(m, u128::from(mu_order)) != 1 {
        cert.verdict = CyclicityVerdict::Inconclusive(format!("m = {m} is not prime and shares a factor with |mu(K)| = {mu_order}"));
        return Ok(cert);
    }
    let t = m / tor.character_order(&el.chi);
    let sols: Vec<Vec<u128>> = (0..3).map(|i| divide_in_cyclic(t, el.chi[i], tor.moduli[i])).collect();
    for &x in &sols[0] {
        for &y in &sols[1] {
            for &z in &sols[2] {
                let s = [x, y, z];
                if tor.character_order(&s) == m {
                    cert.verdict = CyclicityVerdict::Cyclic { splitting_character: s, multiplier: t };
                    return Ok(cert);
                }
            }
        }
    }
    cert.verdict = CyclicityVerdict::Inconclusive("no order-m character divides the element's character".into());
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicitySummary {
    pub elements: u128,
    pub cyclic: u128,
    pub inconclusive: u128,
    /// One certificate per element order, for the smallest element of that order.
    pub samples: Vec<CyclicityCertificate>,
}

/// Certify every element of `Br(E_q)[m]`; certificates depend on `chi` only,
/// so the search runs once per character.
pub fn certify_all(tor: &BrauerTorsion, mu_order: u64, budget: u128) -> Result<CyclicitySummary> {
    let total = tor.structure().order();
    if total > budget {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let mut sum = CyclicitySummary { elements: 0, cyclic: 0, inconclusive: 0, samples: Vec::new() };
    for chi in tor.q_characters() {
        let base = cyclicity_certificate(tor, mu_order, &BrElement { chi, b: 0 })?;
        for b in 0..tor.m {
            let el = BrElement { chi, b };
            let cert = CyclicityCertificate { element: el, element_order: tor.element_order(&el), ..base.clone() };
            sum.elements += 1;
            if cert.is_cyclic() && cert.check(tor) {
                sum.cyclic += 1;
            } else {
                sum.inconclusive += 1;
            }
            if !sum.samples.iter().any(|s| s.element_order == cert.element_order) {
                sum.samples.push(cert);
            }
        }
    }
    sum.samples.sort_by_key(|c| c.element_order);
    Ok(sum)
}
