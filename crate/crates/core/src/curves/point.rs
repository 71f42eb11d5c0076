//! Projective points over finite fields and their Frobenius orbits.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::gf::{build_ext_field, element_degree, embed, restrict, ExtField, Gf};
use crate::algebra::ring::{Field, FiniteField, Ring};
use crate::error::{Error, Result};

/// A point of `P^2` over `F_{p^m}`, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: ExtField,
    coords: [Gf; 3],
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}:{:?}:{:?})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl ProjPoint {
    pub fn new(field: &ExtField, coords: [Gf; 3]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or_else(|| Error::InvalidInput("(0:0:0) is not a projective point".into()))?;
        let inv = field.inv(lead).expect("nonzero");
        let coords = coords.map(|c| field.mul(&c, &inv));
        Ok(Self { field: field.clone(), coords })
    }

    /// Point over `F_p` from integer coordinates (reduced mod `p`).
    pub fn from_ints(p: u64, xyz: [i64; 3]) -> Result<Self> {
        let f = build_ext_field(p, 1)?;
        Self::new(&f, xyz.map(|c| f.from_i64(c)))
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coords(&self) -> &[Gf; 3] {
        &self.coords
    }

    /// Index of the first coordinate equal to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| !self.field.is_zero(c)).expect("nonzero point")
    }

    pub fn sort_key(&self) -> [u128; 3] {
        let f = &self.field;
        [f.index_of(&self.coords[0]), f.index_of(&self.coords[1]), f.index_of(&self.coords[2])]
    }

    pub fn frobenius(&self) -> Self {
        Self { field: self.field.clone(), coords: self.coords.clone().map(|c| self.field.frobenius(&c)) }
    }

    /// Least `k` such that the point is defined over `F_{p^k}`.
    pub fn min_degree(&self) -> u32 {
        let mut k = 1;
        for c in &self.coords {
            k = crate::algebra::gf::common_degree(k, element_degree(&self.field, c));
        }
        k
    }

    pub fn embed_into(&self, big: &ExtField) -> Result<Self> {
        let coords = [
            embed(&self.field, big, &self.coords[0])?,
            embed(&self.field, big, &self.coords[1])?,
            embed(&self.field, big, &self.coords[2])?,
        ];
        Ok(Self { field: big.clone(), coords })
    }

    /// The same point expressed over a subfield, if it is defined there.
    pub fn restrict_to(&self, small: &ExtField) -> Result<Option<Self>> {
        let mut out = Vec::with_capacity(3);
        for c in &self.coords {
            match restrict(small, &self.field, c)? {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        let coords: [Gf; 3] = out.try_into().expect("three coordinates");
        Ok(Some(Self { field: small.clone(), coords }))
    }

    /// Coordinates as strings: residues for prime fields, coefficient lists otherwise.
    pub fn coordinate_strings(&self) -> [String; 3] {
        self.coords.clone().map(|c| format_elem(&self.field, &c))
    }
}

pub fn format_elem(field: &ExtField, a: &Gf) -> String {
    if field.m() == 1 {
        a.0[0].to_string()
    } else {
        let parts: Vec<String> = a.0.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// A closed point of `P^2_{F_p}`: a Frobenius orbit of geometric points,
/// stored by its least member, expressed over its own residue field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedPoint {
    rep: ProjPoint,
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.rep.sort_key()).cmp(&(other.degree(), other.rep.sort_key()))
    }
}

impl ClosedPoint {
    /// The closed point under a geometric point.
    pub fn from_point(pt: &ProjPoint) -> Result<Self> {
        let k = pt.min_degree();
        let kf = build_ext_field(pt.field().p(), k)?;
        let own = pt.restrict_to(&kf)?.expect("point is defined over its minimal field");
        let mut best = own.clone();
        let mut cur = own;
        for _ in 1..k {
            cur = cur.frobenius();
            if cur.sort_key() < best.sort_key() {
                best = cur.clone();
            }
        }
        Ok(Self { rep: best })
    }

    pub fn degree(&self) -> u32 {
        self.rep.field().m()
    }

    /// Residue field `F_{p^deg}`.
    pub fn residue_field(&self) -> &ExtField {
        self.rep.field()
    }

    pub fn representative(&self) -> &ProjPoint {
        &self.rep
    }

    /// All conjugates over a field containing the residue field.
    pub fn geometric_points(&self, big: &ExtField) -> Result<Vec<ProjPoint>> {
        let first = self.rep.embed_into(big)?;
        let mut out = vec![first.clone()];
        let mut cur = first;
        for _ in 1..self.degree() {
            cur = cur.frobenius();
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Canonical text key, e.g. `(18:3:1)` for a rational point or
    /// `deg2(1:[0,1]:[2,0])` in general.
    pub fn key(&self) -> String {
        let c = self.rep.coordinate_strings();
        let body = format!("({}:{}:{})", c[0], c[1], c[2]);
        if self.degree() == 1 {
            body
        } else {
            format!("deg{}{}", self.degree(), body)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "representative": self.rep.coordinate_strings(),
            "field": self.residue_field().descriptor(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_orbits() {
        let p = ProjPoint::from_ints(19, [-2, 6, 2]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(19, [1, -3, -1]).unwrap());
        let f = build_ext_field(3, 2).unwrap();
        let a = f.alpha();
        let pt = ProjPoint::new(&f, [f.one(), a.clone(), f.zero()]).unwrap();
        let cp = ClosedPoint::from_point(&pt).unwrap();
        assert_eq!(cp.degree(), 2);
        assert_eq!(ClosedPoint::from_point(&pt.frobenius()).unwrap(), cp);
        let big = build_ext_field(3, 4).unwrap();
        let geo = cp.geometric_points(&big).unwrap();
        assert_eq!(geo.len(), 2);
        assert_eq!(ClosedPoint::from_point(&geo[1]).unwrap(), cp);
        let rational = ProjPoint::new(&f, [f.one(), f.from_u64(2), f.zero()]).unwrap();
        assert_eq!(ClosedPoint::from_point(&rational).unwrap().key(), "(1:2:0)");
    }
}
