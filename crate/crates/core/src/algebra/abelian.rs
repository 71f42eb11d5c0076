//! Finite abelian groups in invariant-factor form, and `Q/Z` fractions.

use std::fmt;

use serde_json::{json, Value};

use super::integers::{factorize, gcd_u128};

/// `Z/d_1 x ... x Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u128>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    /// Normal form of a product of cyclic groups of the given orders (0 is rejected).
    pub fn from_cyclic(orders: &[u128]) -> Self {
        // gather prime powers per prime, then stack them into invariant factors
        let mut per_prime: Vec<(u128, Vec<u128>)> = Vec::new();
        for &n in orders {
            assert!(n > 0, "cyclic factor of order 0");
            for (q, e) in factorize(n) {
                let pe = q.pow(e);
                match per_prime.iter_mut().find(|(r, _)| *r == q) {
                    Some((_, v)) => v.push(pe),
                    None => per_prime.push((q, vec![pe])),
                }
            }
        }
        let k = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u128; k];
        for (_, mut v) in per_prime {
            v.sort_unstable_by(|a, b| b.cmp(a));
            for (i, pe) in v.into_iter().enumerate() {
                factors[k - 1 - i] *= pe;
            }
        }
        factors.retain(|&d| d > 1);
        Self { factors }
    }

    /// Recover a group from the function `k -> |H[k]|` for the divisors of `n`,
    /// given that `H` is killed by `n`.
    pub fn from_torsion_counts(n: u128, count: impl Fn(u128) -> u128) -> Self {
        let mut cyclic = Vec::new();
        for (q, e) in factorize(n) {
            // ranks[j] = number of factors whose q-part is at least q^j
            let mut prev = 1u128;
            let mut ranks = Vec::new();
            for j in 1..=e {
                let c = count(q.pow(j));
                let ratio = c / prev;
                let mut r = 0;
                let mut t = ratio;
                while t > 1 {
                    t /= q;
                    r += 1;
                }
                ranks.push(r);
                prev = c;
            }
            for j in 0..ranks.len() {
                let next = ranks.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(ranks[j] - next) {
                    cyclic.push(q.pow(j as u32 + 1));
                }
            }
        }
        Self::from_cyclic(&cyclic)
    }

    pub fn factors(&self) -> &[u128] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u128 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// `H[k]`.
    pub fn torsion(&self, k: u128) -> Self {
        Self::from_cyclic(&self.factors.iter().map(|&d| gcd_u128(d, k)).collect::<Vec<_>>())
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut v = self.factors.clone();
        v.extend_from_slice(&other.factors);
        Self::from_cyclic(&v)
    }

    /// Order of an element given by coordinates in the invariant-factor basis.
    pub fn element_order(&self, coords: &[u128]) -> u128 {
        self.factors
            .iter()
            .zip(coords)
            .map(|(&d, &c)| d / gcd_u128(d, c % d))
            .fold(1, |acc, o| acc / gcd_u128(acc, o) * o)
    }

    pub fn to_json(&self) -> Value {
        json!(self.factors.iter().map(|d| d.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An element `a/n` of `Q/Z`, stored reduced with `0 <= a < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qz {
    num: u128,
    den: u128,
}

impl Qz {
    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn new(a: i128, n: u128) -> Self {
        assert!(n > 0, "denominator must be positive");
        let a = a.rem_euclid(n as i128) as u128;
        let g = gcd_u128(a, n);
        Self { num: a / g, den: n / g }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    /// Additive order.
    pub fn order(&self) -> u128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let l = self.den / gcd_u128(self.den, o.den) * o.den;
        let a = self.num * (l / self.den) + o.num * (l / o.den);
        Self::new((a % l) as i128, l)
    }

    pub fn neg(&self) -> Self {
        Self::new(-(self.num as i128), self.den)
    }

    pub fn mul_int(&self, k: i128) -> Self {
        let a = (self.num as i128).rem_euclid(self.den as i128) * k.rem_euclid(self.den as i128);
        Self::new(a, self.den)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        assert_eq!(FiniteAbelianGroup::from_cyclic(&[2, 3]).factors(), &[6]);
        assert_eq!(FiniteAbelianGroup::from_cyclic(&[4, 6, 1]).factors(), &[2, 12]);
        assert!(FiniteAbelianGroup::from_cyclic(&[1, 1]).is_trivial());
        let g = FiniteAbelianGroup::from_cyclic(&[2, 12, 5]);
        let h = FiniteAbelianGroup::from_torsion_counts(g.exponent(), |k| g.torsion(k).order());
        assert_eq!(g, h);
        assert_eq!(g.factors(), &[2, 60]);
        assert_eq!(g.element_order(&[1, 3]), 20);
    }

    #[test]
    fn fractions() {
        let a = Qz::new(2, 3);
        assert_eq!(a.add(&Qz::new(1, 3)), Qz::zero());
        assert_eq!(a.neg(), Qz::new(1, 3));
        assert_eq!(Qz::new(1, 9).mul_int(3), Qz::new(1, 3));
        assert_eq!(Qz::new(-1, 4).to_string(), "3/4");
        assert_eq!(Qz::new(1, 2).add(&Qz::new(1, 3)).to_string(), "5/6");
    }
}
