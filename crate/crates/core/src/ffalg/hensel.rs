//! Hensel factorization of monic polynomials over `W(k)/l^N`.

use super::eigen::multiplicity;
use super::field::FieldElement;
use super::local::{LocalElement, TruncatedLocalRing};
use super::poly::Poly;
use super::ring::LocalRing;
use crate::error::{Error, Result};

type LPoly = Poly<LocalElement>;

fn reduce_poly(p: &LPoly, ring: &TruncatedLocalRing) -> Poly<FieldElement> {
    p.map(ring.residue_field(), |c| ring.reduce(c))
}

fn lift_poly(p: &Poly<FieldElement>, ring: &TruncatedLocalRing) -> LPoly {
    p.map(ring, |&c| ring.lift(c))
}

/// Splits a monic `P` as `Q * R` with `R` monic, `R = (X - alpha_bar)^k` and
/// `Q(alpha_bar) != 0` modulo the maximal ideal. Returns `(R, Q)`.
pub fn hensel_factor(p: &LPoly, alpha_bar: FieldElement, ring: &TruncatedLocalRing) -> Result<(LPoly, LPoly)> {
    if !p.is_monic(ring) {
        return Err(Error::Hensel("polynomial is not monic".into()));
    }
    let k = ring.residue_field();
    let pbar = reduce_poly(p, ring);
    let mult = multiplicity(&pbar, &alpha_bar, k);
    if mult == 0 {
        return Err(Error::Hensel(format!("{} is not a root of the reduction", k.format_elem(alpha_bar))));
    }
    if Some(mult) == p.degree() {
        return Ok((p.clone(), Poly::one(ring)));
    }
    let rbar = Poly::linear(k, &alpha_bar).pow(mult as u64, k);
    let qbar = pbar.div_rem(&rbar, k).0;
    let (one, sbar, tbar) = qbar.ext_gcd(&rbar, k);
    debug_assert_eq!(one, Poly::one(k));

    // s g + t h = 1 with g = Q, h = R monic (quadratic lifting step)
    let (mut g, mut h) = (lift_poly(&qbar, ring), lift_poly(&rbar, ring));
    let (mut s, mut t) = (lift_poly(&sbar, ring), lift_poly(&tbar, ring));
    let one = Poly::one(ring);
    let mut steps = 0;
    loop {
        let e = p.sub(&g.mul(&h, ring), ring);
        if e.is_zero() {
            break;
        }
        steps += 1;
        if steps > 64 {
            return Err(Error::Hensel("lifting did not converge".into()));
        }
        let (q, r) = s.mul(&e, ring).div_rem(&h, ring);
        let g2 = g.add(&t.mul(&e, ring), ring).add(&q.mul(&g, ring), ring);
        let h2 = h.add(&r, ring);
        let b = s.mul(&g2, ring).add(&t.mul(&h2, ring), ring).sub(&one, ring);
        let (c, d) = s.mul(&b, ring).div_rem(&h2, ring);
        s = s.sub(&d, ring);
        t = t.sub(&t.mul(&b, ring), ring).sub(&c.mul(&g2, ring), ring);
        g = g2;
        h = h2;
    }
    debug_assert!(h.is_monic(ring));
    Ok((h, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field::GaloisField;
    use crate::ffalg::ring::Ring;

    fn lp(r: &TruncatedLocalRing, c: &[i128]) -> LPoly {
        Poly::new(r, c.iter().map(|&x| r.from_int(x)).collect())
    }

    #[test]
    fn already_split() {
        let k = GaloisField::prime(5).unwrap();
        let r = TruncatedLocalRing::new(&k, 3).unwrap();
        let p = lp(&r, &[2, -3, 1]);
        let (rr, qq) = hensel_factor(&p, k.one(), &r).unwrap();
        assert_eq!(rr, lp(&r, &[-1, 1]));
        assert_eq!(qq, lp(&r, &[-2, 1]));
    }

    #[test]
    fn square_root_of_two_mod_343() {
        let k = GaloisField::prime(7).unwrap();
        let r = TruncatedLocalRing::new(&k, 3).unwrap();
        let p = lp(&r, &[-2, 0, 1]);
        let (rr, qq) = hensel_factor(&p, k.from_int(3), &r).unwrap();
        assert_eq!(rr, lp(&r, &[-108, 1]));
        assert_eq!(qq, lp(&r, &[-235, 1]));
    }

    #[test]
    fn no_coprime_part() {
        let k = GaloisField::prime(3).unwrap();
        let r = TruncatedLocalRing::new(&k, 4).unwrap();
        // (X - 1 - 3)(X - 1 + 3) reduces to (X - 1)^2
        let p = lp(&r, &[-8, -2, 1]);
        let (rr, qq) = hensel_factor(&p, k.one(), &r).unwrap();
        assert_eq!(rr, p);
        assert_eq!(qq, Poly::one(&r));
    }

    #[test]
    fn errors() {
        let k = GaloisField::prime(5).unwrap();
        let r = TruncatedLocalRing::new(&k, 2).unwrap();
        assert!(hensel_factor(&lp(&r, &[2, -3, 1]), k.from_int(4), &r).is_err());
        assert!(hensel_factor(&lp(&r, &[2, -3, 2]), k.one(), &r).is_err());
    }
}
