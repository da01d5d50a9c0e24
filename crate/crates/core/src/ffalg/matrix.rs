//! Dense row-major matrices, division-free characteristic polynomials, and
//! Gaussian elimination over fields.

use serde::Serialize;

use super::poly::Poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::scalar(ring, n, ring.one())
    }

    pub fn scalar<R: Ring<Elem = E>>(ring: &R, n: usize, c: E) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, entries: &[E]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn into_data(self) -> Vec<E> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<R2: Ring>(&self, f: impl Fn(&E) -> R2::Elem) -> Matrix<R2::Elem> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| ring.neg(a)).collect() }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| ring.mul(a, c)).collect() }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![ring.zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let a = &self.data[i * k + t];
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..m {
                    let slot = &mut data[i * m + j];
                    *slot = ring.add(slot, &ring.mul(a, &other.data[t * m + j]));
                }
            }
        }
        Matrix { rows: n, cols: m, data }
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, v: &[E], ring: &R) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b))))
            .collect()
    }

    pub fn pow<R: Ring<Elem = E>>(&self, mut e: u64, ring: &R) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(ring, self.rows);
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

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.rows.min(self.cols)).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i)))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly<R: Ring<Elem = E>>(&self, f: &Poly<E>, ring: &R) -> Self {
        let n = self.rows;
        let mut acc = Self::zero(ring, n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self, ring).add(&Self::scalar(ring, n, c.clone()), ring);
        }
        acc
    }

    /// `det(X I - M)`, computed division-free (Berkowitz), so it is valid over
    /// any commutative ring.
    pub fn char_poly<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Poly<E>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("characteristic polynomial of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        // coefficients, highest degree first
        let mut c: Vec<E> = vec![ring.one()];
        for r in 0..n {
            // border the leading r x r block M with column S, row R, corner a
            let mut t = Vec::with_capacity(r + 2);
            t.push(ring.one());
            t.push(ring.neg(self.get(r, r)));
            let mut v: Vec<E> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rs = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(r, j), &v[j])));
                t.push(ring.neg(&rs));
                v = (0..r)
                    .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(i, j), &v[j]))))
                    .collect();
            }
            let next: Vec<E> = (0..r + 2)
                .map(|i| (0..=i.min(r)).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&t[i - j], &c[j]))))
                .collect();
            c = next;
        }
        c.reverse();
        Ok(Poly::new(ring, c))
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !field.is_zero(m.get(i, col))) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = field.inv(m.get(row, col)).expect("nonzero pivot");
            for j in col..m.cols {
                let v = field.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in col..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    pub fn det<F: Field<Elem = E>>(&self, field: &F) -> Result<E> {
        let cp = self.char_poly(field)?;
        let c0 = cp.coeff(0, field);
        Ok(if self.rows.is_multiple_of(2) { c0 } else { field.neg(&c0) })
    }
}

/// Row space maintained in reduced echelon form under one-row-at-a-time
/// insertion. Sparse rows stay cheap to reduce because pivot rows are zero in
/// every other pivot column.
#[derive(Clone, Debug)]
pub struct EchelonForm<E> {
    cols: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> EchelonForm<E> {
    pub fn new(cols: usize) -> Self {
        EchelonForm { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current basis in place.
    pub fn reduce<F: Field<Elem = E>>(&self, row: &mut [E], field: &F) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, mut row: Vec<E>, field: &F) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        self.reduce(&mut row, field);
        let Some(c) = row.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&row[c]).expect("nonzero pivot");
        for x in row.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in self.rows.iter_mut() {
            if field.is_zero(&r[c]) {
                continue;
            }
            let f = r[c].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, row);
        true
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn into_subspace(self) -> SubspaceBasis<E> {
        SubspaceBasis { ambient: self.cols, basis: self.rows }
    }
}

/// A subspace of `k^d` stored as the rows of its reduced echelon basis, so
/// equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubspaceBasis<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> SubspaceBasis<E> {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, basis: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        SubspaceBasis { ambient, basis }
    }

    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let data: Vec<E> = vectors
            .iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length"))
            .flat_map(|v| v.iter().cloned())
            .collect();
        let m = Matrix::from_vec(vectors.len(), ambient, data).expect("consistent shape");
        let (r, pivots) = m.rref(field);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Self::span(field, self.ambient, &vs).dim() == self.dim()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(field, v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(field, self.ambient, &vs)
    }

    /// Linear functionals (as row vectors) whose common kernel is this subspace.
    pub fn annihilator<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        if self.basis.is_empty() {
            return Self::full(field, self.ambient).basis;
        }
        let m = Matrix::from_vec(
            self.basis.len(),
            self.ambient,
            self.basis.iter().flat_map(|v| v.iter().cloned()).collect(),
        )
        .expect("consistent shape");
        m.kernel(field)
    }

    /// Vectors of `self` killed by every functional in `functionals`.
    pub fn restrict_to_kernel<F: Field<Elem = E>>(&self, field: &F, functionals: &[Vec<E>]) -> Self {
        if self.basis.is_empty() || functionals.is_empty() {
            return self.clone();
        }
        // (functional_i . basis_j) c_j = 0
        let m = Matrix::from_fn(functionals.len(), self.basis.len(), |i, j| {
            functionals[i]
                .iter()
                .zip(&self.basis[j])
                .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        });
        let coeffs = m.kernel(field);
        let vectors: Vec<Vec<E>> = coeffs
            .iter()
            .map(|c| {
                (0..self.ambient)
                    .map(|k| {
                        c.iter()
                            .zip(&self.basis)
                            .fold(field.zero(), |acc, (cj, bj)| field.add(&acc, &field.mul(cj, &bj[k])))
                    })
                    .collect()
            })
            .collect();
        Self::span(field, self.ambient, &vectors)
    }

    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.restrict_to_kernel(field, &other.annihilator(field))
    }

    /// `M . self`.
    pub fn image<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        let vs: Vec<Vec<E>> = self.basis.iter().map(|v| m.mul_vec(v, field)).collect();
        Self::span(field, m.rows(), &vs)
    }
}
