use std::fmt::Debug;
use std::hash::Hash;

use super::field::{FieldElement, GaloisField};

/// A commutative ring with identity, passed explicitly to every operation.
///
/// Elements carry no reference to their ring; the ring value is the context
/// that knows how to add and multiply them.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the structure map `Z -> R`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: i128) -> Self::Elem;

    /// Multiplicative inverse, or `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^e` for a signed exponent; `None` if `e < 0` and `a` is not a unit.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {}

/// A complete-local-style ring with a residue map onto a finite field.
///
/// Finite fields are local rings with precision one whose residue map is the
/// identity; truncated unramified rings `O / l^N` are the other instance.
pub trait LocalRing: Ring {
    fn residue_field(&self) -> &GaloisField;
    fn reduce(&self, a: &Self::Elem) -> FieldElement;
    /// Coordinate-wise lift of a residue.
    fn lift(&self, a: FieldElement) -> Self::Elem;
    /// Exponent `N` such that `l^N = 0` in the ring.
    fn precision(&self) -> u32;
}
