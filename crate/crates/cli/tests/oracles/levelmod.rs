//! Direct checks of a pair `(Phi, Sigma)` with `Phi Sigma Phi^-1 = Sigma^q`.

use adequacy_core::ffalg::{FieldElement, GaloisField, Matrix, Poly, Ring};

type FMatrix = Matrix<FieldElement>;

#[derive(Clone, Copy, Debug, Default)]
pub struct Verdict {
    pub relation: bool,
    pub flag: bool,
    pub chain: bool,
    pub pol: bool,
}

/// Coordinates of `v` in the column basis `cols`, if `v` lies in its span.
fn coordinates(cols: &[Vec<FieldElement>], v: &[FieldElement], k: &GaloisField) -> Option<Vec<FieldElement>> {
    let n = v.len();
    let d = cols.len();
    let aug = Matrix::from_fn(n, d + 1, |r, c| if c < d { cols[c][r] } else { v[r] });
    let (rref, pivots) = aug.rref(k);
    if pivots.contains(&d) {
        return None;
    }
    let mut x = vec![k.zero(); d];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = *rref.get(i, d);
    }
    Some(x)
}

/// Characteristic polynomial of `phi` restricted to `ker nil^i`, for `i = 0..`
/// until the kernel is everything.
fn restricted_char_polys(phi: &FMatrix, nil: &FMatrix, k: &GaloisField) -> Option<Vec<Poly<FieldElement>>> {
    let n = phi.rows();
    let mut out = vec![Poly::one(k)];
    let mut power = Matrix::identity(k, n);
    loop {
        power = power.mul(nil, k);
        let basis = power.kernel(k);
        let d = basis.len();
        let images: Vec<Vec<FieldElement>> =
            basis.iter().map(|b| coordinates(&basis, &phi.mul_vec(b, k), k)).collect::<Option<_>>()?;
        let m = Matrix::from_fn(d, d, |r, c| images[c][r]);
        out.push(m.char_poly(k).ok()?);
        if d == n {
            return Some(out);
        }
    }
}

fn split_roots(p: &Poly<FieldElement>, base: &GaloisField) -> (GaloisField, Vec<FieldElement>) {
    let n = p.degree().expect("nonzero");
    assert_eq!(base.degree(), 1, "prime fields only");
    for m in 1..=n.max(1) {
        let ext = GaloisField::with_degree(base.characteristic(), m * base.degree()).expect("field");
        let lifted = p.map(&ext, |c| ext.from_int(base.coords(*c)[0] as i128));
        let mut roots = Vec::new();
        let mut rest = lifted.clone();
        for a in ext.elements() {
            loop {
                let (quo, rem) = rest.div_rem(&Poly::linear(&ext, &a), &ext);
                if !rem.is_zero() {
                    break;
                }
                roots.push(a);
                rest = quo;
            }
        }
        if roots.len() == n {
            return (ext, roots);
        }
    }
    panic!("degree {n} polynomial does not split in degree <= {n}");
}

fn permutations_of(items: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Whether some ordering of the roots cuts into strings `a, qa, q^2 a, ...` of the given lengths.
pub fn in_pol(p: &Poly<FieldElement>, parts: &[usize], q: u64, base: &GaloisField) -> bool {
    let (ext, roots) = split_roots(p, base);
    let qq = ext.from_int(q as i128);
    permutations_of(&roots).iter().any(|order| {
        let mut start = 0;
        parts.iter().all(|&len| {
            let seg = &order[start..start + len];
            start += len;
            seg.windows(2).all(|w| w[1] == ext.mul(&w[0], &qq))
        })
    })
}

/// The four constraints, recomputed from the matrices alone.
pub fn verify(phi: &FMatrix, sigma: &FMatrix, parts: &[usize], q: u64, k: &GaloisField) -> Verdict {
    let n = phi.rows();
    let relation = phi.mul(sigma, k) == sigma.pow(q, k).mul(phi, k) && phi.is_invertible(k);
    let nil = sigma.sub(&Matrix::identity(k, n), k);
    let mut flag = true;
    let mut power = Matrix::identity(k, n);
    for _ in 0..n {
        power = power.mul(&nil, k);
        let basis = power.kernel(k);
        flag &= basis.iter().all(|b| coordinates(&basis, &phi.mul_vec(b, k), k).is_some());
    }
    let chain = match restricted_char_polys(phi, &nil, k) {
        Some(cum) => {
            let quotients: Vec<Poly<FieldElement>> = cum
                .windows(2)
                .map(|w| {
                    let (quo, rem) = w[1].div_rem(&w[0], k);
                    assert!(rem.is_zero(), "restricted char polys are nested");
                    quo
                })
                .collect();
            let qq = k.from_int(q as i128);
            quotients.windows(2).all(|w| {
                let scaled = w[0].scale_variable(&qq, k);
                scaled.div_rem(&w[1], k).1.is_zero()
            })
        }
        None => false,
    };
    let pol = in_pol(&phi.char_poly(k).expect("square"), parts, q, k);
    Verdict { relation, flag, chain, pol }
}
