//! Truncated unramified local rings `W(k)/l^N`, modelled as
//! `(Z/l^N)[X] / (f)` for a monic lift `f` of the residue field modulus.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{FieldElement, GaloisField, MAX_DEGREE};
use super::ring::{LocalRing, Ring};
use crate::error::{Error, Result};

/// Serializable `{l, m, N, modulus?}` description of a truncated local ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalRingSpec {
    pub l: u64,
    #[serde(default = "one_usize")]
    pub m: usize,
    #[serde(rename = "N")]
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_usize() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LocalElement(Vec<u64>);

impl LocalElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

struct LocalData {
    residue: GaloisField,
    precision: u32,
    /// `l^N`
    modulus_int: u64,
}

#[derive(Clone)]
pub struct TruncatedLocalRing(Arc<LocalData>);

impl PartialEq for TruncatedLocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.precision == other.0.precision && self.0.residue == other.0.residue
    }
}

impl Eq for TruncatedLocalRing {}

impl fmt::Debug for TruncatedLocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({:?})/{}^{}", self.0.residue, self.0.residue.characteristic(), self.0.precision)
    }
}

impl TruncatedLocalRing {
    pub fn new(residue: &GaloisField, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let l = residue.characteristic();
        let modulus_int = l
            .checked_pow(precision)
            .filter(|&v| v < (1u64 << 62))
            .ok_or_else(|| Error::InvalidRing(format!("{l}^{precision} is too large")))?;
        Ok(Self(Arc::new(LocalData { residue: residue.clone(), precision, modulus_int })))
    }

    pub fn from_spec(spec: &LocalRingSpec) -> Result<Self> {
        let residue = GaloisField::from_parts(spec.l, spec.m, spec.modulus.clone())?;
        Self::new(&residue, spec.precision)
    }

    pub fn spec(&self) -> LocalRingSpec {
        let r = &self.0.residue;
        LocalRingSpec {
            l: r.characteristic(),
            m: r.degree(),
            precision: self.0.precision,
            modulus: (r.degree() > 1).then(|| r.modulus().to_vec()),
        }
    }

    /// `l^N`, the characteristic of the ring.
    pub fn modulus_int(&self) -> u64 {
        self.0.modulus_int
    }

    fn m(&self) -> usize {
        self.0.residue.degree()
    }

    /// Element from integer coordinates in the power basis, reduced mod `l^N`.
    pub fn element(&self, coords: &[i64]) -> Result<LocalElement> {
        if coords.len() > self.m() {
            return Err(Error::OutOfRange(format!("{} coordinates for residue degree {}", coords.len(), self.m())));
        }
        let modulus = self.0.modulus_int as i128;
        let mut v = vec![0u64; self.m()];
        for (slot, &c) in v.iter_mut().zip(coords) {
            *slot = (c as i128).rem_euclid(modulus) as u64;
        }
        Ok(LocalElement(v))
    }

    /// `l`-adic valuation, `None` for zero.
    pub fn valuation(&self, a: &LocalElement) -> Option<u32> {
        let l = self.0.residue.characteristic();
        a.0.iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut v = 0;
                let mut c = c;
                while c % l == 0 {
                    c /= l;
                    v += 1;
                }
                v
            })
            .min()
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0.modulus_int as u128) as u64
    }
}

impl Ring for TruncatedLocalRing {
    type Elem = LocalElement;

    fn zero(&self) -> LocalElement {
        LocalElement(vec![0; self.m()])
    }

    fn one(&self) -> LocalElement {
        let mut v = vec![0; self.m()];
        v[0] = 1 % self.0.modulus_int;
        LocalElement(v)
    }

    fn add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let md = self.0.modulus_int;
        LocalElement(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % md).collect())
    }

    fn neg(&self, a: &LocalElement) -> LocalElement {
        let md = self.0.modulus_int;
        LocalElement(a.0.iter().map(|&x| (md - x) % md).collect())
    }

    fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let m = self.m();
        let md = self.0.modulus_int;
        if m == 1 {
            return LocalElement(vec![self.mulmod(a.0[0], b.0[0])]);
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + self.mulmod(a.0[i], b.0[j])) % md;
            }
        }
        let f = self.0.residue.modulus();
        for k in (m..(2 * m - 1)).rev() {
            let c = prod[k];
            prod[k] = 0;
            if c == 0 {
                continue;
            }
            for i in 0..m {
                if f[i] != 0 {
                    let t = self.mulmod(c, f[i]);
                    prod[k - m + i] = (prod[k - m + i] + md - t) % md;
                }
            }
        }
        LocalElement(prod[..m].to_vec())
    }

    fn from_int(&self, v: i128) -> LocalElement {
        let mut out = vec![0; self.m()];
        out[0] = v.rem_euclid(self.0.modulus_int as i128) as u64;
        LocalElement(out)
    }

    fn inv(&self, a: &LocalElement) -> Option<LocalElement> {
        let r = self.reduce(a);
        let r_inv = self.0.residue.inv(&r)?;
        // Newton iteration x <- x (2 - a x) doubles the precision each step.
        let mut x = self.lift(r_inv);
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.0.precision {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            prec *= 2;
        }
        debug_assert!(self.is_one(&self.mul(a, &x)));
        Some(x)
    }

    fn is_unit(&self, a: &LocalElement) -> bool {
        self.reduce(a).index() != 0
    }
}

impl LocalRing for TruncatedLocalRing {
    fn residue_field(&self) -> &GaloisField {
        &self.0.residue
    }

    fn reduce(&self, a: &LocalElement) -> FieldElement {
        let l = self.0.residue.characteristic();
        let coords: Vec<i64> = a.0.iter().map(|&c| (c % l) as i64).collect();
        self.0.residue.from_coords(&coords).expect("coordinate count matches residue degree")
    }

    fn lift(&self, a: FieldElement) -> LocalElement {
        LocalElement(self.0.residue.coords(a))
    }

    fn precision(&self) -> u32 {
        self.0.precision
    }
}
