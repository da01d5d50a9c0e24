//! `H^1` from the cocycle identity imposed on every pair of group elements.

use adequacy_core::ffalg::{EchelonForm, FieldElement, GaloisField, Matrix, Ring};

/// `dim Z^1 - dim B^1`, where `Z^1` solves `f(gh) = f(g) + g f(h)` for all
/// `g, h`. `actions[i]` is the matrix of element `i`; `mul(i, j)` the index of
/// the product.
pub fn naive_h1(k: &GaloisField, actions: &[Matrix<FieldElement>], mul: impl Fn(usize, usize) -> usize) -> usize {
    let order = actions.len();
    let d = actions[0].rows();
    let unknowns = order * d;
    let mut ech = EchelonForm::new(unknowns);
    for g in 0..order {
        for h in 0..order {
            let gh = mul(g, h);
            for i in 0..d {
                let mut row = vec![k.zero(); unknowns];
                row[gh * d + i] = k.add(&row[gh * d + i], &k.one());
                row[g * d + i] = k.sub(&row[g * d + i], &k.one());
                for j in 0..d {
                    let c = &mut row[h * d + j];
                    *c = k.sub(c, actions[g].get(i, j));
                }
                ech.insert(row, k);
            }
        }
    }
    let z1 = unknowns - ech.rank();

    let mut fixed = EchelonForm::new(d);
    for a in actions {
        let shifted = a.sub(&Matrix::identity(k, d), k);
        for r in 0..d {
            fixed.insert(shifted.row(r).to_vec(), k);
        }
    }
    let b1 = fixed.rank();
    z1 - b1
}

/// Dimension of the invariants, from every element rather than generators.
pub fn naive_h0(k: &GaloisField, actions: &[Matrix<FieldElement>]) -> usize {
    let d = actions[0].rows();
    let mut ech = EchelonForm::new(d);
    for a in actions {
        let shifted = a.sub(&Matrix::identity(k, d), k);
        for r in 0..d {
            ech.insert(shifted.row(r).to_vec(), k);
        }
    }
    d - ech.rank()
}
