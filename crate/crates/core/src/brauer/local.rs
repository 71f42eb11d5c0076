//! Tame symbols and Hasse invariants over local fields with finite residue field.

use serde_json::{json, Value};

use crate::algebra::abelian::Qz;
use crate::algebra::dlog::{dlog, power_residue_order};
use crate::algebra::gf::{ExtField, Gf};
use crate::algebra::integers::gcd_u128;
use crate::algebra::ring::{Field, FiniteField, Ring};
use crate::curves::local::LaurentData;
use crate::error::{Error, Result};

/// Sign and normalization used for residues and invariants; stamped into certificates.
pub const RESIDUE_CONVENTION: &str =
    "residue(a,b) = (-1)^(v(a)v(b)) * a^v(b) / b^v(a) mod P; inv_P(a,b) = k/d where zeta_d^k = residue^((|k(P)|-1)/d)";

fn check_roots(field: &ExtField, d: u64) -> Result<u128> {
    let n = field.order() - 1;
    if d == 0 || n % u128::from(d) != 0 {
        return Err(Error::NoRootsOfUnity { d, q: field.order() });
    }
    Ok(n / u128::from(d))
}

/// The tame symbol of `a` and `b`, an element of the residue field whose class
/// modulo `d`-th powers is the residue of `(a, b)`.
pub fn tame_residue(a: &LaurentData, b: &LaurentData, d: u64) -> Result<Gf> {
    let f = &a.field;
    if b.field != *f {
        return Err(Error::InvalidInput("Laurent data over different residue fields".into()));
    }
    check_roots(f, d)?;
    let (va, vb) = (a.valuation, b.valuation);
    let pow = |x: &Gf, e: i64| -> Gf {
        let y = f.pow(x, u128::from(e.unsigned_abs()));
        if e < 0 {
            f.inv(&y).expect("unit")
        } else {
            y
        }
    };
    let mut r = f.mul(&pow(&a.unit, vb), &pow(&b.unit, -va));
    if (va * vb) % 2 != 0 {
        r = f.neg(&r);
    }
    Ok(r)
}

/// Order of the residue class in `k^x / (k^x)^d`.
pub fn residue_order(a: &LaurentData, b: &LaurentData, d: u64) -> Result<u64> {
    let r = tame_residue(a, b, d)?;
    power_residue_order(&a.field, &r, d)
}

/// Local invariant `k/d` of the symbol algebra `(a, b)_zeta`.
pub fn symbol_invariant(a: &LaurentData, b: &LaurentData, zeta: &Gf, d: u64) -> Result<Qz> {
    let f = &a.field;
    let e = check_roots(f, d)?;
    if f.mult_order(zeta)? != u128::from(d) {
        return Err(Error::BadRoot(d));
    }
    let r = f.pow(&tame_residue(a, b, d)?, e);
    let k = dlog(f, zeta, &r)?.ok_or_else(|| Error::Indeterminate("power residue outside <zeta>".into()))?;
    Ok(Qz::new(k as i128, u128::from(d)))
}

/// A character of the absolute Galois group of the constant field, given by
/// its value `a/n` on Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnramCharacter {
    pub order: u128,
    pub value: Qz,
}

impl UnramCharacter {
    pub fn new(order: u128, a: i128) -> Result<Self> {
        let value = Qz::new(a, order);
        if value.order() != order {
            return Err(Error::BadElement(format!("{a}/{order} does not have order {order}")));
        }
        Ok(Self { order, value })
    }

    /// Restriction to the unramified extension of degree `k`.
    pub fn restrict(&self, k: u128) -> Self {
        let value = self.value.mul_int(k as i128);
        Self { order: value.order(), value }
    }

    pub fn to_json(&self) -> Value {
        json!({ "order": self.order.to_string(), "frobenius_value": self.value.to_string() })
    }
}

/// Invariant of `chi ∪ δh` at a point of residue degree `deg_scale`, `chi`
/// pulled back from the constant field.
pub fn unram_cup_invariant(chi: &UnramCharacter, h: &LaurentData, deg_scale: u64) -> Qz {
    chi.value.mul_int(i128::from(h.valuation) * i128::from(deg_scale))
}

/// Index of a class split by an unramified character of order `chi_order`
/// after restriction: `|chi| * ind(alpha restricted)`.
pub fn nakayama_index(chi_order: u128, ind_restricted: u128) -> u128 {
    chi_order * ind_restricted
}

/// `gcd(d, |v|)`, equal to `d` when `v = 0`.
pub(crate) fn gcd_with_valuation(d: u64, v: i64) -> u64 {
    gcd_u128(u128::from(d), u128::from(v.unsigned_abs())) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::build_ext_field;
    use proptest::prelude::*;

    fn ld(f: &ExtField, v: i64, u: u64) -> LaurentData {
        LaurentData::new(f, v, f.from_u64(u)).unwrap()
    }

    #[test]
    fn residues_and_invariants() {
        let f = build_ext_field(19, 1).unwrap();
        let pi = LaurentData::uniformizer(&f);
        assert_eq!(tame_residue(&pi, &ld(&f, 0, 2), 3).unwrap(), f.from_u64(10));
        assert_eq!(tame_residue(&pi, &pi, 3).unwrap(), f.from_i64(-1));
        assert_eq!(tame_residue(&ld(&f, 0, 5), &ld(&f, 0, 2), 3).unwrap(), f.one());
        let zeta = f.from_u64(7);
        assert_eq!(symbol_invariant(&pi, &ld(&f, 0, 2), &zeta, 3).unwrap(), Qz::new(2, 3));
        assert_eq!(symbol_invariant(&pi, &ld(&f, 0, 8), &zeta, 3).unwrap(), Qz::zero());
        assert_eq!(symbol_invariant(&ld(&f, 0, 3), &ld(&f, 0, 2), &zeta, 3).unwrap(), Qz::zero());
        assert_eq!(symbol_invariant(&pi, &ld(&f, 0, 2), &f.one(), 3), Err(Error::BadRoot(3)));
    }

    #[test]
    fn unramified_cups() {
        let p = 3u128;
        let chi = UnramCharacter::new(p * p, 1).unwrap();
        let f = build_ext_field(3, 1).unwrap();
        let h = LaurentData::uniformizer(&f);
        let inv = unram_cup_invariant(&chi, &h, 2);
        assert_eq!(inv, Qz::new(2, 9));
        assert_eq!(inv.order(), 9);
        assert!(unram_cup_invariant(&chi, &LaurentData::unit(&f, f.one()).unwrap(), 2).is_zero());
        assert!(unram_cup_invariant(&UnramCharacter::new(4, 1).unwrap().restrict(4), &h, 1).is_zero());
        assert_eq!(nakayama_index(3, 3), 9);
        assert_eq!(nakayama_index(1, 7), 7);
        assert_eq!(nakayama_index(9, 3), 27);
    }

    proptest! {
        #[test]
        fn bilinear_and_antisymmetric(va in -4i64..5, vb in -4i64..5, vc in -4i64..5, ua in 1u64..31, ub in 1u64..31, uc in 1u64..31) {
            let f = build_ext_field(31, 1).unwrap();
            let zeta = f.primitive_root_of_unity(5).unwrap();
            let (a, b, c) = (ld(&f, va, ua), ld(&f, vb, ub), ld(&f, vc, uc));
            let ab = symbol_invariant(&a, &b, &zeta, 5).unwrap();
            let cb = symbol_invariant(&c, &b, &zeta, 5).unwrap();
            prop_assert_eq!(symbol_invariant(&a.mul(&c), &b, &zeta, 5).unwrap(), ab.add(&cb));
            prop_assert_eq!(ab.add(&symbol_invariant(&b, &a, &zeta, 5).unwrap()), Qz::zero());
            prop_assert!(symbol_invariant(&a, &a.neg(), &zeta, 5).unwrap().is_zero());
            // orders do not depend on the sign convention
            let flipped = tame_residue(&a, &b, 5).unwrap();
            let alt = f.neg(&flipped);
            prop_assert_eq!(
                power_residue_order(&f, &flipped, 5).unwrap(),
                power_residue_order(&f, &alt, 5).unwrap()
            );
        }
    }
}
