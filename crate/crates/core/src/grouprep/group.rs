//! Finite groups stored by full enumeration, for matrix groups in `GL_n(k)`
//! and for subgroups of `G_n(k) = (GL_n x GL_1) x| {1, j}`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::{FieldElement, GaloisField, Matrix, Ring};

/// Default closure cap.
pub const DEFAULT_CAP: usize = 2_000_000;

pub trait GroupLaw: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// A group law whose elements carry an `n x n` matrix part over a finite
/// field and act on `Lie GL_n`.
pub trait MatrixLaw: GroupLaw {
    fn field(&self) -> &GaloisField;
    fn n(&self) -> usize;
    fn matrix_part<'a>(&self, a: &'a Self::Elem) -> &'a Matrix<FieldElement>;
    /// Whether `a` lies in the identity component (always true for `GL_n`).
    fn is_connected(&self, a: &Self::Elem) -> bool;
    /// Matrix of `a` acting on `ad V = M_n(k)` in the basis `E_ij`, row-major.
    fn ad_matrix(&self, a: &Self::Elem) -> Matrix<FieldElement>;
}

/// `A -> sign * g A^t? g^{-1}` on elementary matrices.
fn conjugation_matrix(field: &GaloisField, g: &Matrix<FieldElement>, transpose: bool) -> Matrix<FieldElement> {
    let n = g.rows();
    let ginv = g.inverse(field).expect("group elements are invertible");
    Matrix::from_fn(n * n, n * n, |row, col| {
        let (a, b) = (row / n, row % n);
        let (i, j) = (col / n, col % n);
        if transpose {
            // E_ij -> -g E_ji g^{-1}
            field.neg(&field.mul(g.get(a, j), ginv.get(i, b)))
        } else {
            field.mul(g.get(a, i), ginv.get(j, b))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlLaw {
    field: GaloisField,
    n: usize,
}

impl GlLaw {
    pub fn new(field: &GaloisField, n: usize) -> Self {
        GlLaw { field: field.clone(), n }
    }
}

impl GroupLaw for GlLaw {
    type Elem = Matrix<FieldElement>;

    fn identity(&self) -> Self::Elem {
        Matrix::identity(&self.field, self.n)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b, &self.field)
    }
}

impl MatrixLaw for GlLaw {
    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn n(&self) -> usize {
        self.n
    }

    fn matrix_part<'a>(&self, a: &'a Self::Elem) -> &'a Matrix<FieldElement> {
        a
    }

    fn is_connected(&self, _: &Self::Elem) -> bool {
        true
    }

    fn ad_matrix(&self, a: &Self::Elem) -> Matrix<FieldElement> {
        conjugation_matrix(&self.field, a, false)
    }
}

/// `(g, mu) j^eps` in `G_n(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GnElement {
    pub g: Matrix<FieldElement>,
    pub mu: FieldElement,
    pub eps: u8,
}

impl GnElement {
    pub fn new(field: &GaloisField, g: Matrix<FieldElement>, mu: FieldElement, eps: u8) -> Result<Self> {
        if !g.is_invertible(field) {
            return Err(Error::Singular);
        }
        if field.is_zero(&mu) {
            return Err(Error::NotUnit("mu".into()));
        }
        if eps > 1 {
            return Err(Error::Invalid(format!("eps must be 0 or 1, got {eps}")));
        }
        Ok(GnElement { g, mu, eps })
    }

    /// The element `j`.
    pub fn j(field: &GaloisField, n: usize) -> Self {
        GnElement { g: Matrix::identity(field, n), mu: field.one(), eps: 1 }
    }
}

/// `((g1, mu1) j^e1) ((g2, mu2) j^e2)`, using `j (g, mu) j^{-1} = (mu g^{-t}, mu)`.
pub fn gn_multiply(field: &GaloisField, a: &GnElement, b: &GnElement) -> Result<GnElement> {
    if a.g.rows() != b.g.rows() {
        return Err(Error::Dimension("elements of different rank".into()));
    }
    let c = if a.eps == 0 { b.g.clone() } else { b.g.inverse(field)?.transpose().scale(&b.mu, field) };
    Ok(GnElement { g: a.g.mul(&c, field), mu: field.mul(&a.mu, &b.mu), eps: a.eps ^ b.eps })
}

/// Similitude character: `(g, mu) -> mu`, `j -> -1`.
pub fn nu(field: &GaloisField, a: &GnElement) -> FieldElement {
    if a.eps == 0 {
        a.mu
    } else {
        field.neg(&a.mu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnLaw {
    field: GaloisField,
    n: usize,
}

impl GnLaw {
    pub fn new(field: &GaloisField, n: usize) -> Self {
        GnLaw { field: field.clone(), n }
    }
}

impl GroupLaw for GnLaw {
    type Elem = GnElement;

    fn identity(&self) -> GnElement {
        GnElement { g: Matrix::identity(&self.field, self.n), mu: self.field.one(), eps: 0 }
    }

    fn mul(&self, a: &GnElement, b: &GnElement) -> GnElement {
        gn_multiply(&self.field, a, b).expect("elements of one group")
    }
}

impl MatrixLaw for GnLaw {
    fn field(&self) -> &GaloisField {
        &self.field
    }

    fn n(&self) -> usize {
        self.n
    }

    fn matrix_part<'a>(&self, a: &'a GnElement) -> &'a Matrix<FieldElement> {
        &a.g
    }

    fn is_connected(&self, a: &GnElement) -> bool {
        a.eps == 0
    }

    fn ad_matrix(&self, a: &GnElement) -> Matrix<FieldElement> {
        conjugation_matrix(&self.field, &a.g, a.eps == 1)
    }
}

/// A finite group given by generators, closed breadth-first.
///
/// Elements are numbered in discovery order starting from the identity at 0;
/// the discovery edges form a spanning tree of the right Cayley graph.
#[derive(Clone, Debug)]
pub struct FiniteGroup<L: GroupLaw> {
    law: L,
    elements: Vec<L::Elem>,
    index: HashMap<L::Elem, usize>,
    generators: Vec<L::Elem>,
    /// `right[i * s_count + s] = index(elements[i] * generators[s])`
    right: Vec<usize>,
    /// `(parent, generator)` with `elements[i] = elements[parent] * generators[generator]`
    parent: Vec<Option<(usize, usize)>>,
}

impl<L: GroupLaw> FiniteGroup<L> {
    /// Closes the generators (sorted and deduplicated first) under products.
    pub fn close(law: L, generators: Vec<L::Elem>, cap: usize) -> Result<Self> {
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        let s = generators.len();
        let id = law.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut right = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let y = law.mul(&elements[i], g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= cap {
                            return Err(Error::ClosureOverflow { cap });
                        }
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push(Some((i, k)));
                        queue.push_back(j);
                        j
                    }
                };
                debug_assert_eq!(right.len(), i * s + k);
                right.push(j);
            }
        }
        Ok(FiniteGroup { law, elements, index, generators, right, parent })
    }

    pub fn law(&self) -> &L {
        &self.law
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[L::Elem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &L::Elem {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &L::Elem) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn generators(&self) -> &[L::Elem] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Index of `elements[i] * generators[s]`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.right[i * self.generators.len() + s]
    }

    pub fn tree_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index[&self.law.mul(&self.elements[i], &self.elements[j])]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        // x^{-1} = x^{ord(x) - 1}
        let mut prev = 0;
        let mut cur = i;
        while cur != 0 {
            prev = cur;
            cur = self.mul_index(cur, i);
        }
        prev
    }

    /// Generator word (as generator positions) spelling `elements[i]` along the tree.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent[i] {
            w.push(s);
            i = p;
        }
        w.reverse();
        w
    }

    /// Conjugacy classes under conjugation by this group's generators, as
    /// sorted index lists ordered by their smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gen_idx: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        let gen_inv: Vec<usize> = gen_idx.iter().map(|&g| self.inverse_index(g)).collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (&s, &si) in gen_idx.iter().zip(&gen_inv) {
                    let y = self.mul_index(self.mul_index(si, x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

pub type GroupOverField = FiniteGroup<GlLaw>;

impl FiniteGroup<GlLaw> {
    /// The subgroup of `GL_n(field)` generated by `generators`.
    pub fn generate(field: &GaloisField, n: usize, generators: Vec<Matrix<FieldElement>>, cap: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::Dimension(format!("generator {i} is not {n}x{n}")));
            }
            if !g.is_invertible(field) {
                return Err(Error::NonInvertibleGenerator(i));
            }
        }
        Self::close(GlLaw::new(field, n), generators, cap)
    }
}

/// A finite subgroup `G` of `G_n(k)` together with `G^0 = G ∩ G_n^0(k)`.
#[derive(Clone, Debug)]
pub struct GnGroup {
    group: FiniteGroup<GnLaw>,
    connected: FiniteGroup<GnLaw>,
}

impl GnGroup {
    pub fn generate(field: &GaloisField, n: usize, generators: Vec<GnElement>, cap: usize) -> Result<Self> {
        for (i, a) in generators.iter().enumerate() {
            if a.g.rows() != n || a.g.cols() != n {
                return Err(Error::Dimension(format!("generator {i} is not {n}x{n}")));
            }
            if !a.g.is_invertible(field) || field.is_zero(&a.mu) || a.eps > 1 {
                return Err(Error::NonInvertibleGenerator(i));
            }
        }
        let law = GnLaw::new(field, n);
        let group = FiniteGroup::close(law.clone(), generators, cap)?;
        // Schreier generators for the index <= 2 subgroup with transversal {1, t}
        let t = group.elements().iter().position(|a| a.eps == 1);
        let mut schreier = Vec::new();
        let reps: Vec<usize> = std::iter::once(0).chain(t).collect();
        for &r in &reps {
            for s in 0..group.generator_count() {
                let rs = group.right_mul(r, s);
                let coset_rep = if group.element(rs).eps == 0 { 0 } else { t.unwrap() };
                let inv = group.inverse_index(coset_rep);
                schreier.push(group.element(group.mul_index(rs, inv)).clone());
            }
        }
        let connected = FiniteGroup::close(law, schreier, cap)?;
        debug_assert_eq!(connected.order(), group.elements().iter().filter(|a| a.eps == 0).count());
        Ok(GnGroup { group, connected })
    }

    pub fn group(&self) -> &FiniteGroup<GnLaw> {
        &self.group
    }

    /// `G^0`, closed from Schreier generators.
    pub fn connected(&self) -> &FiniteGroup<GnLaw> {
        &self.connected
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Which kind of subgroup a check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gl,
    Gn,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &GaloisField, n: usize, v: &[i128]) -> Matrix<FieldElement> {
        Matrix::from_vec(n, n, v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(GroupOverField::generate(&f, 2, vec![], DEFAULT_CAP).unwrap().order(), 1);
        let c = GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[3, 0, 0, 1])], DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), 6);
        let sl2 =
            GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[1, 1, 0, 1]), mat(&f, 2, &[0, -1, 1, 0])], DEFAULT_CAP)
                .unwrap();
        assert_eq!(sl2.order(), 7 * (49 - 1));
        assert!(matches!(
            GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[1, 1, 0, 1]), mat(&f, 2, &[0, -1, 1, 0])], 100),
            Err(Error::ClosureOverflow { cap: 100 })
        ));
        assert_eq!(
            GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[1, 2, 2, 4])], DEFAULT_CAP).unwrap_err(),
            Error::NonInvertibleGenerator(0)
        );
    }

    #[test]
    fn tree_words_spell_elements() {
        let f = GaloisField::prime(5).unwrap();
        let g =
            GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[1, 1, 0, 1]), mat(&f, 2, &[2, 0, 0, 1])], DEFAULT_CAP)
                .unwrap();
        for i in 0..g.order() {
            let prod = g.word(i).iter().fold(Matrix::identity(&f, 2), |acc, &s| acc.mul(&g.generators()[s], &f));
            assert_eq!(&prod, g.element(i));
            let inv = g.inverse_index(i);
            assert_eq!(g.mul_index(i, inv), 0);
        }
        let sizes: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
        assert_eq!(sizes, g.order());
    }

    #[test]
    fn gn_relations() {
        let f = GaloisField::prime(7).unwrap();
        let j = GnElement::j(&f, 2);
        let id = GnLaw::new(&f, 2).identity();
        assert_eq!(gn_multiply(&f, &j, &j).unwrap(), id);
        let x = GnElement::new(&f, mat(&f, 2, &[1, 2, 3, 4]), f.from_int(3), 0).unwrap();
        let jxj = gn_multiply(&f, &gn_multiply(&f, &j, &x).unwrap(), &j).unwrap();
        let expected = x.g.inverse(&f).unwrap().transpose().scale(&x.mu, &f);
        assert_eq!(jxj, GnElement { g: expected, mu: x.mu, eps: 0 });
        assert_eq!(gn_multiply(&f, &id, &x).unwrap(), x);
        assert_eq!(nu(&f, &id), f.one());
        assert_eq!(nu(&f, &j), f.from_int(-1));
        let xj = gn_multiply(&f, &x, &j).unwrap();
        assert_eq!(nu(&f, &xj), f.neg(&x.mu));
    }

    #[test]
    fn j_acts_on_lie_algebra_by_minus_transpose() {
        let f = GaloisField::prime(7).unwrap();
        let law = GnLaw::new(&f, 2);
        let ad = law.ad_matrix(&GnElement::j(&f, 2));
        // E_12 is basis vector 1; -E_21 has coordinate -1 at position 2
        let col = ad.column(1);
        assert_eq!(col, vec![f.zero(), f.zero(), f.from_int(-1), f.zero()]);
    }

    #[test]
    fn connected_component_of_gn_group() {
        let f = GaloisField::prime(5).unwrap();
        let gens = vec![
            GnElement::new(&f, mat(&f, 2, &[1, 1, 0, 1]), f.one(), 0).unwrap(),
            GnElement::new(&f, mat(&f, 2, &[0, -1, 1, 0]), f.one(), 0).unwrap(),
            GnElement::j(&f, 2),
        ];
        let g = GnGroup::generate(&f, 2, gens, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2 * 120);
        assert_eq!(g.connected().order(), 120);
        assert!(g.connected().elements().iter().all(|a| a.eps == 0 && a.mu == f.one()));
    }
}
