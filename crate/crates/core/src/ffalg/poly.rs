//! Dense univariate polynomials over a [`Ring`], lowest degree first.

use serde::Serialize;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// A dense polynomial. The coefficient list never ends in a zero, so the zero
/// polynomial is the empty list and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Poly { coeffs: vec![ring.zero(), ring.one()] }
    }

    /// `X - a`
    pub fn linear<R: Ring<Elem = E>>(ring: &R, a: &E) -> Self {
        Poly { coeffs: vec![ring.neg(a), ring.one()] }
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots<'a, R, I>(ring: &R, roots: I) -> Self
    where
        R: Ring<Elem = E>,
        I: IntoIterator<Item = &'a E>,
        E: 'a,
    {
        roots.into_iter().fold(Self::one(ring), |acc, r| acc.mul(&Self::linear(ring, r), ring))
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, i: usize, ring: &R) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_monic<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.leading().is_some_and(|c| ring.is_one(c))
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ring.add(&self.coeff(i, ring), &other.coeff(i, ring))).collect();
        Self::new(ring, coeffs)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.add(&other.neg(ring), ring)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        Self::new(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Self::new(ring, out)
    }

    pub fn pow<R: Ring<Elem = E>>(&self, mut e: u64, ring: &R) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring);
            }
        }
        acc
    }

    /// Division with remainder by a divisor whose leading coefficient is a unit.
    pub fn checked_div_rem<R: Ring<Elem = E>>(&self, divisor: &Self, ring: &R) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or_else(|| Error::Invalid("division by the zero polynomial".into()))?;
        let lead_inv = ring.inv(lead).ok_or_else(|| Error::NotUnit("leading coefficient of the divisor".into()))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![ring.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = ring.mul(&rem[k + dd], &lead_inv);
            if ring.is_zero(&c) {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = ring.sub(&rem[k + i], &ring.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(ring, quot), Self::new(ring, rem)))
    }

    /// Panics if the divisor is zero or its leading coefficient is not a unit.
    pub fn div_rem<R: Ring<Elem = E>>(&self, divisor: &Self, ring: &R) -> (Self, Self) {
        self.checked_div_rem(divisor, ring).expect("divisor with unit leading coefficient")
    }

    pub fn rem<R: Ring<Elem = E>>(&self, divisor: &Self, ring: &R) -> Self {
        self.div_rem(divisor, ring).1
    }

    pub fn divides<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> bool {
        other.rem(self, ring).is_zero()
    }

    pub fn eval<R: Ring<Elem = E>>(&self, x: &E, ring: &R) -> E {
        self.coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod<R: Ring<Elem = E>>(&self, mut e: u64, modulus: &Self, ring: &R) -> Self {
        let mut base = self.rem(modulus, ring);
        let mut acc = Self::one(ring).rem(modulus, ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring).rem(modulus, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring).rem(modulus, ring);
            }
        }
        acc
    }

    /// `P(c X)`.
    pub fn scale_variable<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        let mut power = ring.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(ring.mul(a, &power));
            power = ring.mul(&power, c);
        }
        Self::new(ring, coeffs)
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| ring.mul(c, &ring.from_int(i as i128))).collect();
        Self::new(ring, coeffs)
    }

    /// Divides by the leading coefficient; `None` if it is not a unit.
    pub fn monic<R: Ring<Elem = E>>(&self, ring: &R) -> Option<Self> {
        let lead = self.leading()?;
        let inv = ring.inv(lead)?;
        Some(self.scale(&inv, ring))
    }

    pub fn map<F, R2>(&self, target: &R2, f: F) -> Poly<R2::Elem>
    where
        R2: Ring,
        F: Fn(&E) -> R2::Elem,
    {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field);
            a = b;
            b = r;
        }
        a.monic(field).unwrap_or_else(Self::zero)
    }

    /// `(g, s, t)` with `s * self + t * other = g`, `g` the monic gcd.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, field);
            let s2 = s0.sub(&q.mul(&s1, field), field);
            let t2 = t0.sub(&q.mul(&t1, field), field);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().and_then(|c| field.inv(c)) {
            Some(inv) => (r0.scale(&inv, field), s0.scale(&inv, field), t0.scale(&inv, field)),
            None => (Self::zero(), s0, t0),
        }
    }
}
