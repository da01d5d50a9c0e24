//! Finite fields `GF(l^m)` for odd primes `l`.
//!
//! An element is stored as the integer `c_0 + c_1 l + ... + c_{m-1} l^{m-1}`
//! packing its coordinates in the power basis of `GF(l)[X] / (modulus)`.
//! The packed value doubles as the canonical ordering of the field.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ring::{Field, LocalRing, Ring};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;
/// Fields up to this order get discrete-log multiplication tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Serializable description `{l, m, modulus}` of a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub l: u64,
    pub m: usize,
    /// Monic modulus of degree `m`, lowest degree first.
    pub modulus: Vec<u64>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Packed index in the canonical ordering.
    pub fn index(self) -> u64 {
        self.0
    }
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

struct FieldData {
    l: u64,
    m: usize,
    modulus: Vec<u64>,
    order: u64,
    pow_l: Vec<u64>,
    tables: Option<LogTables>,
}

#[derive(Clone)]
pub struct GaloisField(Arc<FieldData>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.l == other.0.l && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.l)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.l, self.0.m, self.0.modulus)
        }
    }
}

pub(crate) fn is_odd_prime(l: u64) -> bool {
    if l < 3 || l.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= l {
        if l.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

impl GaloisField {
    /// The prime field `GF(l)`.
    pub fn prime(l: u64) -> Result<Self> {
        if !is_odd_prime(l) {
            return Err(Error::InvalidField(format!("{l} is not an odd prime")));
        }
        if l >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {l} too large")));
        }
        Ok(Self::build(l, vec![0, 1]))
    }

    /// `GF(l^m)` with the lexicographically least irreducible modulus, comparing
    /// coefficient lists lowest degree first.
    pub fn with_degree(l: u64, m: usize) -> Result<Self> {
        let base = Self::prime(l)?;
        if m == 1 {
            return Ok(base);
        }
        check_order(l, m)?;
        let total = l.pow(m as u32);
        for idx in 0..total {
            let mut modulus = vec![0u64; m + 1];
            let mut rest = idx;
            for i in (0..m).rev() {
                modulus[i] = rest % l;
                rest /= l;
            }
            modulus[m] = 1;
            if modulus[0] != 0 && is_irreducible_mod_prime(&base, &modulus) {
                return Ok(Self::build(l, modulus));
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {m} over GF({l})")))
    }

    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let base = Self::prime(spec.l)?;
        if spec.m == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        check_order(spec.l, spec.m)?;
        if spec.modulus.len() != spec.m + 1 || spec.modulus[spec.m] != 1 {
            return Err(Error::InvalidField(format!("modulus must be monic of degree {}", spec.m)));
        }
        if spec.modulus.iter().any(|&c| c >= spec.l) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0, l)".into()));
        }
        if spec.m == 1 {
            // every monic linear polynomial gives the prime field; normalize to X
            return Ok(base);
        }
        if !is_irreducible_mod_prime(&base, &spec.modulus) {
            return Err(Error::InvalidField(format!("modulus {:?} is reducible over GF({})", spec.modulus, spec.l)));
        }
        Ok(Self::build(spec.l, spec.modulus.clone()))
    }

    /// Parses `{l, m, modulus?}`; a missing modulus selects the default one.
    pub fn from_parts(l: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        match modulus {
            Some(modulus) => Self::new(&FieldSpec { l, m, modulus }),
            None => Self::with_degree(l, m),
        }
    }

    fn build(l: u64, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        let mut pow_l = Vec::with_capacity(m + 1);
        let mut p = 1u64;
        for _ in 0..=m {
            pow_l.push(p);
            p = p.saturating_mul(l);
        }
        let order = pow_l[m];
        let mut data = FieldData { l, m, modulus, order, pow_l, tables: None };
        if m > 1 && order <= TABLE_LIMIT {
            let field = GaloisField(Arc::new(data));
            let tables = field.build_tables();
            data = Arc::try_unwrap(field.0).ok().expect("unique during construction");
            data.tables = Some(tables);
        }
        GaloisField(Arc::new(data))
    }

    fn build_tables(&self) -> LogTables {
        let q = self.0.order;
        let g = self.find_generator();
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElement(1);
        for i in 0..(q - 1) {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        LogTables { log, exp }
    }

    fn find_generator(&self) -> FieldElement {
        let q = self.0.order;
        let factors = prime_factors(q - 1);
        for idx in 1..q {
            let x = FieldElement(idx);
            if factors.iter().all(|&p| self.pow_slow(x, (q - 1) / p) != FieldElement(1)) {
                return x;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        match &self.0.tables {
            Some(t) => FieldElement(t.exp[1 % t.exp.len()]),
            None => self.find_generator(),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { l: self.0.l, m: self.0.m, modulus: self.0.modulus.clone() }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.l
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.0.order {
            Ok(FieldElement(index))
        } else {
            Err(Error::OutOfRange(format!("{index} is not an element of {self:?}")))
        }
    }

    /// Element with the given power-basis coordinates (reduced mod `l`).
    pub fn from_coords(&self, coords: &[i64]) -> Result<FieldElement> {
        if coords.len() > self.0.m {
            return Err(Error::OutOfRange(format!("{} coordinates for a degree-{} field", coords.len(), self.0.m)));
        }
        let l = self.0.l as i64;
        let packed = coords.iter().enumerate().map(|(i, &c)| c.rem_euclid(l) as u64 * self.0.pow_l[i]).sum();
        Ok(FieldElement(packed))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let mut d = [0u64; MAX_DEGREE];
        self.digits(a.0, &mut d);
        d[..self.0.m].to_vec()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.order).map(FieldElement)
    }

    /// Whether `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: FieldElement) -> bool {
        a.0 < self.0.l
    }

    #[inline]
    fn digits(&self, mut a: u64, out: &mut [u64; MAX_DEGREE]) {
        let l = self.0.l;
        for d in out.iter_mut().take(self.0.m) {
            *d = a % l;
            a /= l;
        }
    }

    #[inline]
    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().zip(&self.0.pow_l).map(|(c, p)| c * p).sum()
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (l, m) = (self.0.l, self.0.m);
        if m == 1 {
            return FieldElement(((a.0 as u128 * b.0 as u128) % l as u128) as u64);
        }
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.digits(a.0, &mut da);
        self.digits(b.0, &mut db);
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += da[i] as u128 * db[j] as u128;
            }
        }
        let l128 = l as u128;
        for k in (m..(2 * m - 1)).rev() {
            let c = prod[k] % l128;
            prod[k] = 0;
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let md = self.0.modulus[i] as u128;
                if md != 0 {
                    prod[k - m + i] += c * (l128 - md);
                }
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..m {
            out[i] = (prod[i] % l128) as u64;
        }
        FieldElement(self.pack(&out[..m]))
    }

    fn pow_slow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add_elems(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let l = self.0.l;
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= l { s - l } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for p in self.0.pow_l.iter().take(self.0.m) {
            let s = (x % l + y % l) % l;
            out += s * p;
            x /= l;
            y /= l;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg_elem(&self, a: FieldElement) -> FieldElement {
        let l = self.0.l;
        if self.0.m == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { l - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u64;
        for p in self.0.pow_l.iter().take(self.0.m) {
            let d = x % l;
            out += ((l - d) % l) * p;
            x /= l;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn mul_elems(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        match &self.0.tables {
            Some(t) => {
                let n = t.exp.len();
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[if s >= n { s - n } else { s }])
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv_elem(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        match &self.0.tables {
            Some(t) => {
                let n = t.exp.len();
                let lg = t.log[a.0 as usize] as usize;
                Some(FieldElement(t.exp[(n - lg) % n]))
            }
            None => Some(self.pow_slow(a, self.0.order - 2)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let mut ord = self.0.order - 1;
        for p in prime_factors(ord) {
            while ord.is_multiple_of(p) && self.pow_slow(a, ord / p) == FieldElement(1) {
                ord /= p;
            }
        }
        Some(ord)
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.0 == 0 || self.pow_slow(a, (self.0.order - 1) / 2) == FieldElement(1)
    }

    pub fn format_elem(&self, a: FieldElement) -> String {
        if self.0.m == 1 {
            a.0.to_string()
        } else {
            format!("{:?}", self.coords(a))
        }
    }
}

fn check_order(l: u64, m: usize) -> Result<()> {
    if m > MAX_DEGREE {
        return Err(Error::InvalidField(format!("degree {m} exceeds {MAX_DEGREE}")));
    }
    match l.checked_pow(m as u32) {
        Some(q) if q < (1u64 << 62) => Ok(()),
        _ => Err(Error::InvalidField(format!("GF({l}^{m}) is too large"))),
    }
}

/// Rabin's test over the prime field: `f | X^{l^m} - X` and
/// `gcd(f, X^{l^{m/p}} - X) = 1` for every prime `p | m`.
fn is_irreducible_mod_prime(base: &GaloisField, modulus: &[u64]) -> bool {
    let m = modulus.len() - 1;
    let coeffs = modulus.iter().map(|&c| FieldElement(c)).collect();
    let f = Poly::new(base, coeffs);
    let x = Poly::x(base);
    // frob[d] = X^{l^d} mod f
    let mut frob = vec![x.rem(&f, base)];
    for d in 1..=m {
        let prev = &frob[d - 1];
        frob.push(prev.pow_mod(base.characteristic(), &f, base));
    }
    if !frob[m].sub(&x, base).rem(&f, base).is_zero() {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|p| {
        let d = m / p as usize;
        let g = f.gcd(&frob[d].sub(&x, base), base);
        g.degree() == Some(0)
    })
}

impl Ring for GaloisField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_elems(*a, *b)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.neg_elem(*a)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.mul_elems(*a, *b)
    }

    fn from_int(&self, v: i128) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.l as i128) as u64)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inv_elem(*a)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }
}

impl Field for GaloisField {}

impl LocalRing for GaloisField {
    fn residue_field(&self) -> &GaloisField {
        self
    }

    fn reduce(&self, a: &FieldElement) -> FieldElement {
        *a
    }

    fn lift(&self, a: FieldElement) -> FieldElement {
        a
    }

    fn precision(&self) -> u32 {
        1
    }
}
