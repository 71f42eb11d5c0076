//! Discrete logarithms and power-residue orders in finite fields.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::gf::{ExtField, Gf};
use super::integers::gcd_u128;
use super::ring::{Field, FiniteField, Ring};

/// Smallest `e >= 0` with `g^e = x`, or `None` when `x` is not in `<g>`.
/// Baby-step giant-step over the cyclic group generated by `g`.
pub fn dlog(field: &ExtField, g: &Gf, x: &Gf) -> Result<Option<u128>> {
    if field.is_zero(g) || field.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    let n = field.mult_order(g)?;
    // x lies in <g> iff x^n = 1 (unique subgroup of each order in a cyclic group).
    if !field.is_one(&field.pow(x, n)) {
        return Ok(None);
    }
    let m = (n as f64).sqrt().ceil() as u128 + 1;
    let mut baby: HashMap<Gf, u128> = HashMap::with_capacity(m as usize);
    let mut cur = field.one();
    for j in 0..m {
        baby.entry(cur.clone()).or_insert(j);
        cur = field.mul(&cur, g);
    }
    let giant = field.inv(&field.pow(g, m)).expect("g is a unit");
    let mut y = x.clone();
    for i in 0..=m {
        if let Some(&j) = baby.get(&y) {
            return Ok(Some((i * m + j) % n));
        }
        y = field.mul(&y, &giant);
    }
    Ok(None)
}

/// Order of the class of `u` in `F_q^x / (F_q^x)^d` (requires `d | q - 1`).
pub fn power_residue_order(field: &ExtField, u: &Gf, d: u64) -> Result<u64> {
    let n = field.order() - 1;
    let d128 = u128::from(d);
    if d == 0 || n % d128 != 0 {
        return Err(Error::NoRootsOfUnity { d, q: field.order() });
    }
    let e = dlog(field, &field.generator(), u)?.expect("generator spans the unit group");
    Ok((d128 / gcd_u128(d128, e % d128)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::build_ext_field;
    use crate::algebra::integers::divisors;

    #[test]
    fn worked_examples() {
        let f = build_ext_field(19, 1).unwrap();
        assert_eq!(dlog(&f, &f.from_u64(2), &f.from_u64(7)).unwrap(), Some(6));
        assert_eq!(dlog(&f, &f.from_u64(5), &f.one()).unwrap(), Some(0));
        // 7 has order 3 in F_19; 2 is outside <7>
        assert_eq!(dlog(&f, &f.from_u64(7), &f.from_u64(2)).unwrap(), None);
        assert_eq!(dlog(&f, &f.zero(), &f.one()), Err(Error::ZeroElement));
        assert_eq!(power_residue_order(&f, &f.from_u64(2), 3).unwrap(), 3);
        assert_eq!(power_residue_order(&f, &f.from_u64(8), 3).unwrap(), 1);
        assert_eq!(power_residue_order(&f, &f.one(), 3).unwrap(), 1);
        assert!(matches!(power_residue_order(&f, &f.from_u64(2), 5), Err(Error::NoRootsOfUnity { .. })));
    }

    #[test]
    fn residue_order_matches_exponent_test() {
        let f = build_ext_field(5, 2).unwrap();
        let n = f.order() - 1;
        for d in [2u64, 3, 4, 6, 8, 12, 24] {
            for u in f.elements().skip(1) {
                let brute = divisors(u128::from(d))
                    .into_iter()
                    .find(|&e| f.is_one(&f.pow(&u, e * n / u128::from(d))))
                    .unwrap();
                assert_eq!(u128::from(power_residue_order(&f, &u, d).unwrap()), brute);
            }
        }
    }
}
