//! `n`-torsion of the Brauer group of a curve over a local field with good
//! reduction `E`, for `n` prime to the residue characteristic:
//! `Br(X)[n] = Z/n + Hom(E(F_q)/n, Z/n)`.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::algebra::abelian::FiniteAbelianGroup;
use crate::algebra::integers::{divisors, gcd_u128};
use crate::curves::elliptic::{ec_order_and_structure, CubicModel, GroupStructure};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodReductionReport {
    pub n: u64,
    pub curve_group: GroupStructure,
    /// From the invariant factors of `E(F_q)`.
    pub by_formula: FiniteAbelianGroup,
    /// From counting `k`-torsion of `E(F_q)/nE(F_q)` with the group law.
    pub by_counting: FiniteAbelianGroup,
}

impl GoodReductionReport {
    pub fn agree(&self) -> bool {
        self.by_formula == self.by_counting
    }

    /// `|Br(X)[n]| = n |E(F_q)[n]|`.
    pub fn order_consistent(&self) -> bool {
        self.by_formula.order() == u128::from(self.n) * self.curve_group.torsion_count(u128::from(self.n))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "curve_group": {
                "order": self.curve_group.order.to_string(),
                "invariant_factors": [self.curve_group.a.to_string(), self.curve_group.b.to_string()],
            },
            "invariant_factors": self.by_formula.to_json(),
            "invariant_factors_by_counting": self.by_counting.to_json(),
            "structure": self.by_formula.to_string(),
            "routes_agree": self.agree(),
            "order_consistent": self.order_consistent(),
            "sample_class": {
                "form": "delta_n(pi) cup chi",
                "uniformizer": "pi",
                "character": "unramified, Frobenius -> 1/n",
                "character_order": self.n,
            },
        })
    }
}

pub fn good_reduction_brauer_structure(e: &CubicModel, n: u64, budget: u128) -> Result<GoodReductionReport> {
    let p = e.p();
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n % p == 0 {
        return Err(Error::TameOnly { p, n });
    }
    let (gs, orders) = ec_order_and_structure(e, 1, budget)?;
    let nn = u128::from(n);
    let by_formula = FiniteAbelianGroup::from_cyclic(&[nn, gcd_u128(nn, gs.a), gcd_u128(nn, gs.b)]);

    // E/nE by brute force: |(E/nE)[k]| = #{P : kP in nE} / |nE|
    let pts: Vec<_> = orders.into_iter().map(|(pt, _)| pt).collect();
    let mut n_e = HashSet::new();
    for pt in &pts {
        n_e.insert(e.mul(pt, i128::from(n))?.sort_key());
    }
    let mut counts = Vec::new();
    for k in divisors(nn) {
        let mut c = 0u128;
        for pt in &pts {
            if n_e.contains(&e.mul(pt, k as i128)?.sort_key()) {
                c += 1;
            }
        }
        counts.push((k, c / n_e.len() as u128));
    }
    let quotient = FiniteAbelianGroup::from_torsion_counts(nn, |k| counts.iter().find(|(j, _)| *j == k).map(|(_, c)| *c).expect("divisor"));
    // a group killed by n is isomorphic to its Z/n-dual
    let by_counting = quotient.product(&FiniteAbelianGroup::from_cyclic(&[nn]));
    Ok(GoodReductionReport { n, curve_group: gs, by_formula, by_counting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::elliptic::tests::{c1, cubic};

    #[test]
    fn structures() {
        let e = c1(19);
        let r = good_reduction_brauer_structure(&e, 1, 1 << 20).unwrap();
        assert!(r.by_formula.is_trivial());
        assert!(r.agree());
        for n in [2u64, 3, 4, 6, 9] {
            let r = good_reduction_brauer_structure(&e, n, 1 << 20).unwrap();
            assert!(r.agree(), "n = {n}: {} vs {}", r.by_formula, r.by_counting);
            assert!(r.order_consistent());
        }
        assert_eq!(good_reduction_brauer_structure(&e, 19, 1 << 20), Err(Error::TameOnly { p: 19, n: 19 }));
        // y^2 z = x^3 - x z^2 over F_5 has full 2-torsion: E = Z/2 x Z/4
        let e = CubicModel::with_first_flex(cubic(5, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([1, 0, 2], 1)])).unwrap();
        let r = good_reduction_brauer_structure(&e, 2, 1 << 20).unwrap();
        assert_eq!((r.curve_group.a, r.curve_group.b), (2, 4));
        assert_eq!(r.by_formula.factors(), &[2, 2, 2]);
        assert!(r.agree());
    }
}
