//! Parahoric invariants of `Ind_Q(chi_1 ∘ det, ..., chi_r ∘ det)` with basis
//! indexed by `[W_Q \ S_n / W_P]`, and the diagonal action of `X^i` and `V^j`.

use crate::error::{Error, Result};
use crate::ffalg::{Matrix, Ring};

use super::combinat::{minimal_double_coset_reps, subsets, Composition, DoubleCosetRep, TwoPartComposition};
use super::pj::elementary_symmetric;

#[derive(Clone, Debug)]
pub struct IwahoriModel<R: Ring> {
    ring: R,
    q: Composition,
    p: TwoPartComposition,
    chars: Vec<R::Elem>,
    reps: Vec<DoubleCosetRep>,
}

/// Basis `phi_w`, one for each minimal double coset representative `w`.
pub fn build_iwahori_model<R: Ring>(
    q: &Composition,
    chars: &[R::Elem],
    p: &TwoPartComposition,
    ring: &R,
) -> Result<IwahoriModel<R>> {
    if chars.len() != q.parts().len() {
        return Err(Error::Dimension(format!("{} characters for {} blocks", chars.len(), q.parts().len())));
    }
    for (i, c) in chars.iter().enumerate() {
        if !ring.is_unit(c) {
            return Err(Error::NotUnit(format!("chi[{}]", i + 1)));
        }
        if chars[..i].contains(c) {
            return Err(Error::Invalid("characters must be distinct".into()));
        }
    }
    let reps = minimal_double_coset_reps(q, p)?;
    Ok(IwahoriModel { ring: ring.clone(), q: q.clone(), p: *p, chars: chars.to_vec(), reps })
}

impl<R: Ring> IwahoriModel<R> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[DoubleCosetRep] {
        &self.reps
    }

    /// `chi_1` repeated `m_1` times, ..., `chi_r` repeated `m_r` times.
    pub fn psi_string(&self) -> Vec<R::Elem> {
        self.q.parts().iter().zip(&self.chars).flat_map(|(&m, c)| std::iter::repeat_n(c.clone(), m)).collect()
    }

    /// `X^i(phi_w) = psi_{w(i)}` for `i = 1..n`.
    pub fn x_eigenvalues(&self, basis: usize) -> Vec<R::Elem> {
        let psi = self.psi_string();
        self.reps[basis].w.iter().map(|&wi| psi[wi - 1].clone()).collect()
    }

    pub fn x_operator(&self, i: usize) -> Matrix<R::Elem> {
        let diag: Vec<R::Elem> = (0..self.dim()).map(|b| self.x_eigenvalues(b)[i - 1].clone()).collect();
        Matrix::diagonal(&self.ring, &diag)
    }

    /// `V^j = sum_{J ⊆ {n1+1..n}, |J| = j} prod_{i in J} X^i`.
    pub fn v_operator(&self, j: usize) -> Matrix<R::Elem> {
        let r = &self.ring;
        let d = self.dim();
        let x: Vec<Matrix<R::Elem>> = (1..=self.p.n()).map(|i| self.x_operator(i)).collect();
        let mut acc = Matrix::zero(r, d, d);
        for jj in subsets(self.p.n2, j) {
            let term = jj.iter().fold(Matrix::identity(r, d), |m, &i| m.mul(&x[self.p.n1 + i - 1], r));
            acc = acc.add(&term, r);
        }
        acc
    }

    /// `e_j` of the multiset with `n2^i` copies of `chi_i`.
    pub fn v_eigenvalue(&self, basis: usize, j: usize) -> R::Elem {
        let rep = &self.reps[basis];
        let vals: Vec<R::Elem> = rep
            .refinement
            .iter()
            .zip(&self.chars)
            .flat_map(|(&(_, n2i), c)| std::iter::repeat_n(c.clone(), n2i))
            .collect();
        elementary_symmetric(&vals, &self.ring)[j].clone()
    }

    /// Diagonal of `V^j` in basis order.
    pub fn spectrum(&self, j: usize) -> Vec<R::Elem> {
        (0..self.dim()).map(|b| self.v_eigenvalue(b, j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::GaloisField;

    #[test]
    fn operator_and_eigenvalue_agree() {
        let k = GaloisField::prime(11).unwrap();
        let q = Composition::new(vec![2, 1, 2]).unwrap();
        let p = TwoPartComposition::new(2, 3).unwrap();
        let chars = [k.from_int(2), k.from_int(3), k.from_int(7)];
        let m = build_iwahori_model(&q, &chars, &p, &k).unwrap();
        for j in 1..=3 {
            let v = m.v_operator(j);
            let diag: Vec<_> = (0..m.dim()).map(|b| *v.get(b, b)).collect();
            assert_eq!(diag, m.spectrum(j));
            assert_eq!(v, Matrix::diagonal(&k, &diag));
        }
    }

    #[test]
    fn rejects_repeated_characters() {
        let k = GaloisField::prime(5).unwrap();
        let q = Composition::new(vec![1, 1]).unwrap();
        let p = TwoPartComposition::new(1, 1).unwrap();
        assert!(build_iwahori_model(&q, &[k.one(), k.one()], &p, &k).is_err());
        assert!(build_iwahori_model(&q, &[k.one(), k.zero()], &p, &k).is_err());
    }
}
