//! Root finding, splitting fields and generalized eigenprojectors.

use std::collections::BTreeSet;

use super::field::{FieldElement, GaloisField};
use super::matrix::Matrix;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

type FPoly = Poly<FieldElement>;

/// Degrees of the irreducible factors of `f` (distinct-degree factorization).
pub fn factor_degrees(f: &FPoly, field: &GaloisField) -> BTreeSet<usize> {
    let mut degrees = BTreeSet::new();
    let Some(f) = f.monic(field) else {
        return degrees;
    };
    let q = field.order();
    let x = Poly::x(field);
    let mut rest = f;
    let mut h = x.clone();
    let mut i = 0;
    while rest.degree().is_some_and(|d| d > 0) {
        i += 1;
        if 2 * i > rest.degree().unwrap() {
            degrees.insert(rest.degree().unwrap());
            break;
        }
        h = h.pow_mod(q, &rest, field);
        let mut g = rest.gcd(&h.sub(&x, field), field);
        if g.degree().is_some_and(|d| d > 0) {
            degrees.insert(i);
            while g.degree().is_some_and(|d| d > 0) {
                rest = rest.div_rem(&g, field).0;
                g = rest.gcd(&g, field);
            }
            h = h.rem(&rest, field);
        }
    }
    degrees
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Smallest `d` such that every polynomial splits over the degree-`d`
/// extension of `field`.
pub fn split_degree<'a, I>(field: &GaloisField, polys: I) -> usize
where
    I: IntoIterator<Item = &'a FPoly>,
{
    polys.into_iter().flat_map(|p| factor_degrees(p, field)).fold(1, lcm)
}

/// The field of degree `m * d` over `GF(l)` in which the characteristic
/// polynomial of every given matrix splits. Returns `field` itself when no
/// extension is needed.
pub fn ensure_split(elements: &[Matrix<FieldElement>], field: &GaloisField) -> Result<GaloisField> {
    let mut polys = BTreeSet::new();
    for g in elements {
        polys.insert(g.char_poly(field)?.into_coeffs());
    }
    let polys: Vec<FPoly> = polys.into_iter().map(|c| Poly::new(field, c)).collect();
    let d = split_degree(field, &polys);
    if d == 1 {
        Ok(field.clone())
    } else {
        GaloisField::with_degree(field.characteristic(), field.degree() * d)
    }
}

/// Distinct roots of a squarefree polynomial that splits into linear factors.
fn split_linear(f: &FPoly, field: &GaloisField, out: &mut Vec<FieldElement>) {
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = f.monic(field).expect("nonzero");
            out.push(field.neg(&m.coeff(0, field)));
        }
        Some(d) => {
            let e = (field.order() - 1) / 2;
            for idx in 0..field.order() {
                let delta = field.element(idx).expect("index below order");
                let shifted = Poly::new(field, vec![delta, field.one()]);
                let t = shifted.pow_mod(e, f, field).sub(&Poly::one(field), field);
                let g = f.gcd(&t, field);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < d {
                    split_linear(&g, field, out);
                    split_linear(&f.div_rem(&g, field).0, field, out);
                    return;
                }
            }
            unreachable!("a separating shift always exists for distinct roots");
        }
    }
}

/// Roots of `f` in `field` with multiplicities, in canonical element order.
pub fn roots_with_multiplicity(f: &FPoly, field: &GaloisField) -> Vec<(FieldElement, usize)> {
    let Some(mf) = f.monic(field) else {
        return Vec::new();
    };
    let x = Poly::x(field);
    let frob = x.pow_mod(field.order(), &mf, field);
    let g = mf.gcd(&frob.sub(&x, field), field);
    let mut roots = Vec::new();
    split_linear(&g, field, &mut roots);
    roots.sort();
    roots.into_iter().map(|r| (r, multiplicity(&mf, &r, field))).collect()
}

/// Exponent of `(X - a)` in `f`.
pub fn multiplicity(f: &FPoly, a: &FieldElement, field: &GaloisField) -> usize {
    let lin = Poly::linear(field, a);
    let mut rest = f.clone();
    let mut k = 0;
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&lin, field);
        if !r.is_zero() {
            break;
        }
        rest = q;
        k += 1;
    }
    k
}

/// Eigenvalues of a square matrix in `field`, with algebraic multiplicity.
pub fn char_poly_roots(m: &Matrix<FieldElement>, field: &GaloisField) -> Result<Vec<(FieldElement, usize)>> {
    Ok(roots_with_multiplicity(&m.char_poly(field)?, field))
}

/// `e = f(g)` with `f = 1 mod (X - alpha)^a` and `f = 0 mod h`, where
/// `char_poly(g) = (X - alpha)^a h` and `h(alpha) != 0`.
pub fn generalized_eigenprojector(
    g: &Matrix<FieldElement>,
    alpha: &FieldElement,
    field: &GaloisField,
) -> Result<Matrix<FieldElement>> {
    let cp = g.char_poly(field)?;
    let a = multiplicity(&cp, alpha, field);
    if a == 0 {
        return Err(Error::NotEigenvalue(field.format_elem(*alpha)));
    }
    let pa = Poly::linear(field, alpha).pow(a as u64, field);
    let h = cp.div_rem(&pa, field).0;
    let (one, s, _) = h.ext_gcd(&pa, field);
    debug_assert!(one.is_monic(field) && one.degree() == Some(0));
    let f = s.mul(&h, field).rem(&cp, field);
    Ok(g.eval_poly(&f, field))
}

/// A field homomorphism `base -> ext` sending the residue class of `X` to the
/// smallest root of the base modulus in `ext`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    base: GaloisField,
    ext: GaloisField,
    powers: Vec<FieldElement>,
}

impl FieldEmbedding {
    pub fn base(&self) -> &GaloisField {
        &self.base
    }

    pub fn ext(&self) -> &GaloisField {
        &self.ext
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        let ext = &self.ext;
        self.base
            .coords(a)
            .iter()
            .zip(&self.powers)
            .fold(ext.zero(), |acc, (&c, p)| ext.add(&acc, &ext.mul(&ext.from_int(c as i128), p)))
    }
}

pub fn field_embedding(base: &GaloisField, ext: &GaloisField) -> Result<FieldEmbedding> {
    if base.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
        return Err(Error::InvalidField(format!("{base:?} does not embed in {ext:?}")));
    }
    let root = if base.degree() == 1 {
        ext.zero()
    } else {
        let f = Poly::new(ext, base.modulus().iter().map(|&c| ext.from_int(c as i128)).collect());
        roots_with_multiplicity(&f, ext).first().map(|r| r.0).ok_or(Error::NotSplit)?
    };
    let powers = (0..base.degree()).map(|i| ext.pow(&root, i as u64)).collect();
    Ok(FieldEmbedding { base: base.clone(), ext: ext.clone(), powers })
}

pub fn embed_matrix(m: &Matrix<FieldElement>, emb: &FieldEmbedding) -> Matrix<FieldElement> {
    m.map::<GaloisField>(|&a| emb.map(a))
}
