//! Finite linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::words::PackedWord;

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, omitting `q` when it is 1.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A finite map from basis elements to nonzero coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of vectors. Iteration follows the basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord>(BTreeMap<B, Scalar>);

pub type Element = LinComb<PackedWord>;
pub type Tensor2 = LinComb<(PackedWord, PackedWord)>;
pub type Tensor3 = LinComb<(PackedWord, PackedWord, PackedWord)>;

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(Scalar::one(), b)
    }

    pub fn term(c: Scalar, b: B) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.0.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, Scalar> {
        self.0.keys()
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (b, d) in other.iter() {
            self.add_term(b.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(b, d)| (b.clone(), c * d)).collect())
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_assign_scaled(c, &f(b));
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_assign_scaled(&Scalar::one(), rhs);
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_assign_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        LinComb(self.0.iter().map(|(b, c)| (b.clone(), -c)).collect())
    }
}

/// Text rendering of a basis element inside a linear combination.
pub trait BasisDisplay {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl BasisDisplay for PackedWord {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl BasisDisplay for (PackedWord, PackedWord) {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}", self.0, self.1)
    }
}

impl BasisDisplay for (PackedWord, PackedWord, PackedWord) {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}(x){}", self.0, self.1, self.2)
    }
}

/// `c1*[..] + c2*[..] - c3*[..]`; the zero combination prints as `0`.
impl<B: Ord + BasisDisplay> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.0.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{}*", format_scalar(c))?,
                (0, true) => write!(f, "-{}*", format_scalar(&c.abs()))?,
                (_, false) => write!(f, " + {}*", format_scalar(c))?,
                (_, true) => write!(f, " - {}*", format_scalar(&c.abs()))?,
            }
            b.fmt_basis(f)?;
        }
        Ok(())
    }
}

/// Basis elements that serialize as a list of tensor legs.
pub trait BasisLegs {
    fn legs(&self) -> Vec<&PackedWord>;
}

impl BasisLegs for PackedWord {
    fn legs(&self) -> Vec<&PackedWord> {
        vec![self]
    }
}

impl BasisLegs for (PackedWord, PackedWord) {
    fn legs(&self) -> Vec<&PackedWord> {
        vec![&self.0, &self.1]
    }
}

impl BasisLegs for (PackedWord, PackedWord, PackedWord) {
    fn legs(&self) -> Vec<&PackedWord> {
        vec![&self.0, &self.1, &self.2]
    }
}

struct TermRef<'a, B>(&'a B, &'a Scalar);

impl<B: BasisLegs> Serialize for TermRef<'_, B> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Term", 2)?;
        st.serialize_field("coeff", &format_scalar(self.1))?;
        st.serialize_field("legs", &self.0.legs())?;
        st.end()
    }
}

/// Serialized as a list of `{"coeff": "p/q", "legs": [[..], ..]}` in basis order.
impl<B: Ord + BasisLegs> Serialize for LinComb<B> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (b, c) in &self.0 {
            seq.serialize_element(&TermRef(b, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn add_and_scale() {
        let a = Element::term(scalar(2), p(&[1]));
        let b = Element::term(scalar(3), p(&[1]));
        assert_eq!(&a + &b, Element::term(scalar(5), p(&[1])));
        let x = &Element::basis(p(&[1, 1])) + &Element::term(scalar(4), p(&[0]));
        assert!((&x + &x.scale(&scalar(-1))).is_zero());
        assert!(x.scale(&scalar(0)).is_zero());
        assert!((&x - &x).is_zero());
        assert_eq!(-&(-&x), x);
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut e = Element::basis(p(&[1]));
        e.add_term(p(&[1]), scalar(-1));
        assert!(e.is_zero());
        e.add_term(p(&[0]), scalar(0));
        assert_eq!(e.len(), 0);
    }

    #[test]
    fn display_formats() {
        assert_eq!(Element::zero().to_string(), "0");
        assert_eq!(Element::term(scalar(-1), p(&[1])).to_string(), "-1*[1]");
        let e: Element = [
            (p(&[1, 1]), scalar(-1)),
            (p(&[1, 0]), scalar(2)),
            (p(&[]), BigRational::new(3.into(), 4.into())),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.to_string(), "3/4*[] + 2*[1,0] - 1*[1,1]");
        let t = Tensor2::term(scalar(2), (p(&[1]), p(&[0])));
        assert_eq!(t.to_string(), "2*[1](x)[0]");
        let t3 = Tensor3::basis((p(&[]), p(&[1]), p(&[])));
        assert_eq!(t3.to_string(), "1*[](x)[1](x)[]");
    }
}
