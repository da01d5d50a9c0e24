//! Linear actions of enumerated groups: the natural module, `ad V`, `ad^0 V`
//! and the trivial module.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::group::{FiniteGroup, GroupLaw, MatrixLaw};
use crate::error::{Error, Result};
use crate::ffalg::{FieldElement, FieldEmbedding, GaloisField, Matrix, Ring, SubspaceBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Natural,
    Ad,
    Ad0,
    Trivial,
}

impl ModuleKind {
    pub fn dim(self, n: usize) -> usize {
        match self {
            ModuleKind::Natural => n,
            ModuleKind::Ad => n * n,
            ModuleKind::Ad0 => n * n - 1,
            ModuleKind::Trivial => 1,
        }
    }
}

/// Basis of the module as endomorphisms of `V` (for `Ad`/`Ad0`): `E_ij` for
/// `ad V`; off-diagonal `E_ij` in row-major order then `E_ii - E_{i+1,i+1}`
/// for `ad^0 V`.
pub fn lie_basis(kind: ModuleKind, n: usize, field: &GaloisField) -> Vec<Matrix<FieldElement>> {
    let unit = |i: usize, j: usize| {
        let mut m = Matrix::zero(field, n, n);
        m.set(i, j, field.one());
        m
    };
    match kind {
        ModuleKind::Ad => (0..n * n).map(|k| unit(k / n, k % n)).collect(),
        ModuleKind::Ad0 => {
            let mut out: Vec<_> = (0..n * n).filter(|k| k / n != k % n).map(|k| unit(k / n, k % n)).collect();
            for i in 0..n - 1 {
                out.push(unit(i, i).sub(&unit(i + 1, i + 1), field));
            }
            out
        }
        _ => panic!("{kind:?} is not a Lie algebra module"),
    }
}

/// `ad^0 V` coordinates of a trace-zero matrix given as an `n^2` vector.
fn ad0_coords(v: &[FieldElement], n: usize, field: &GaloisField) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = (0..n * n).filter(|k| k / n != k % n).map(|k| v[k]).collect();
    let mut acc = field.zero();
    for i in 0..n - 1 {
        acc = field.add(&acc, &v[i * n + i]);
        out.push(acc);
    }
    out
}

/// Matrix of `a` on the module of the given kind.
pub fn element_action<L: MatrixLaw>(law: &L, a: &L::Elem, kind: ModuleKind) -> Matrix<FieldElement> {
    let field = law.field();
    let n = law.n();
    match kind {
        ModuleKind::Trivial => Matrix::identity(field, 1),
        ModuleKind::Natural => law.matrix_part(a).clone(),
        ModuleKind::Ad => law.ad_matrix(a),
        ModuleKind::Ad0 => {
            let ad = law.ad_matrix(a);
            let basis = lie_basis(ModuleKind::Ad0, n, field);
            let cols: Vec<Vec<FieldElement>> =
                basis.iter().map(|b| ad0_coords(&ad.mul_vec(b.data(), field), n, field)).collect();
            let d = n * n - 1;
            Matrix::from_fn(d, d, |i, j| cols[j][i])
        }
    }
}

/// A `k[G]`-module given by the action matrices of the group's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    pub kind: ModuleKind,
    pub field: GaloisField,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<Matrix<FieldElement>>,
}

impl ModuleAction {
    pub fn trivial(field: &GaloisField, n: usize, generator_count: usize) -> Self {
        ModuleAction {
            kind: ModuleKind::Trivial,
            field: field.clone(),
            n,
            dim: 1,
            generators: vec![Matrix::identity(field, 1); generator_count],
        }
    }

    /// The same module after extension of scalars.
    pub fn extend(&self, emb: &FieldEmbedding) -> Self {
        ModuleAction {
            kind: self.kind,
            field: emb.ext().clone(),
            n: self.n,
            dim: self.dim,
            generators: self.generators.iter().map(|g| crate::ffalg::embed_matrix(g, emb)).collect(),
        }
    }

    /// Action of an arbitrary element, multiplied out along its tree word.
    pub fn action_along_word<L: GroupLaw>(&self, group: &FiniteGroup<L>, i: usize) -> Matrix<FieldElement> {
        group
            .word(i)
            .iter()
            .fold(Matrix::identity(&self.field, self.dim), |acc, &s| acc.mul(&self.generators[s], &self.field))
    }

    /// Action matrices of every element, indexed like the group.
    pub fn all_actions<L: GroupLaw>(&self, group: &FiniteGroup<L>) -> Vec<Matrix<FieldElement>> {
        let mut out: Vec<Matrix<FieldElement>> = Vec::with_capacity(group.order());
        out.push(Matrix::identity(&self.field, self.dim));
        for i in 1..group.order() {
            let (p, s) = group.tree_parent(i).expect("non-identity elements have parents");
            let m = out[p].mul(&self.generators[s], &self.field);
            out.push(m);
        }
        out
    }

    /// Checks that the generator matrices are invertible and that the action
    /// extends to a homomorphism: for `samples` seeded random elements the
    /// directly computed matrix agrees with the product along the tree word,
    /// and products of random pairs act as products.
    pub fn verify<L: MatrixLaw>(&self, group: &FiniteGroup<L>, samples: usize, seed: u64) -> Result<()> {
        if self.generators.len() != group.generator_count() {
            return Err(Error::Dimension("one action matrix per generator".into()));
        }
        if let Some(i) = self.generators.iter().position(|g| !g.is_invertible(&self.field)) {
            return Err(Error::NonInvertibleGenerator(i));
        }
        if self.field != *group.law().field() {
            // extended modules are checked through the relations only
            return self.verify_relations(group, samples, seed);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let i = rng.gen_range(0..group.order());
            let direct = element_action(group.law(), group.element(i), self.kind);
            if direct != self.action_along_word(group, i) {
                return Err(Error::Invalid(format!("action of element {i} is inconsistent")));
            }
        }
        self.verify_relations(group, samples, seed)
    }

    fn verify_relations<L: GroupLaw>(&self, group: &FiniteGroup<L>, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..samples {
            let a = rng.gen_range(0..group.order());
            let b = rng.gen_range(0..group.order());
            let ab = group.mul_index(a, b);
            let lhs = self.action_along_word(group, ab);
            let rhs = self.action_along_word(group, a).mul(&self.action_along_word(group, b), &self.field);
            if lhs != rhs {
                return Err(Error::Invalid(format!("action fails on the product of {a} and {b}")));
            }
        }
        Ok(())
    }
}

/// `ad V` or `ad^0 V` (or the natural/trivial module) of a matrix group.
pub fn ad_action<L: MatrixLaw>(group: &FiniteGroup<L>, kind: ModuleKind) -> Result<ModuleAction> {
    let law = group.law();
    let field = law.field();
    let n = law.n();
    let has_j = group.elements().iter().any(|a| !law.is_connected(a));
    if kind == ModuleKind::Ad0 && has_j && n.is_multiple_of(field.characteristic() as usize) {
        return Err(Error::Invalid("ad^0 V in characteristic dividing n for a G_n subgroup; use ad V".into()));
    }
    if kind == ModuleKind::Natural && has_j {
        return Err(Error::Invalid("the natural module is defined on GL_n only".into()));
    }
    if kind == ModuleKind::Trivial {
        return Ok(ModuleAction::trivial(field, n, group.generator_count()));
    }
    let generators = group.generators().iter().map(|g| element_action(law, g, kind)).collect();
    Ok(ModuleAction { kind, field: field.clone(), n, dim: kind.dim(n), generators })
}

/// `H^0(G, M)`: common kernel of `s - 1` over the generators.
pub fn fixed_points(module: &ModuleAction) -> SubspaceBasis<FieldElement> {
    let f = &module.field;
    let d = module.dim;
    let mut space = SubspaceBasis::full(f, d);
    for s in &module.generators {
        let a = s.sub(&Matrix::identity(f, d), f);
        let rows: Vec<Vec<FieldElement>> = (0..d).map(|i| a.row(i).to_vec()).collect();
        space = space.restrict_to_kernel(f, &rows);
    }
    space
}

/// Largest subspace of `u` stable under every generator, by iterating
/// `M -> M ∩ s M` to a fixed point.
pub fn largest_invariant_subspace(
    module: &ModuleAction,
    u: &SubspaceBasis<FieldElement>,
) -> SubspaceBasis<FieldElement> {
    let f = &module.field;
    let mut m = u.clone();
    loop {
        let mut next = m.clone();
        for s in &module.generators {
            if next.is_zero() {
                break;
            }
            next = next.intersect(f, &m.image(f, s));
        }
        if next.dim() == m.dim() {
            return m;
        }
        m = next;
    }
}

/// Smallest submodule containing the given vectors.
pub fn spin(module: &ModuleAction, vectors: &[Vec<FieldElement>]) -> SubspaceBasis<FieldElement> {
    let f = &module.field;
    let mut space = SubspaceBasis::span(f, module.dim, vectors);
    loop {
        let mut next = space.clone();
        for s in &module.generators {
            next = next.sum(f, &space.image(f, s));
        }
        if next.dim() == space.dim() {
            return space;
        }
        space = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::group::{GroupOverField, DEFAULT_CAP};

    fn mat(f: &GaloisField, n: usize, v: &[i128]) -> Matrix<FieldElement> {
        Matrix::from_vec(n, n, v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    fn vecf(f: &GaloisField, v: &[i128]) -> Vec<FieldElement> {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    fn gl2_f7() -> GroupOverField {
        let f = GaloisField::prime(7).unwrap();
        GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[3, 0, 0, 1]), mat(&f, 2, &[-1, 1, -1, 0])], DEFAULT_CAP)
            .unwrap()
    }

    #[test]
    fn trivial_group_ad0() {
        let f = GaloisField::prime(7).unwrap();
        let g = GroupOverField::generate(&f, 2, vec![], DEFAULT_CAP).unwrap();
        let m = ad_action(&g, ModuleKind::Ad0).unwrap();
        assert_eq!(m.dim, 3);
        assert!(m.generators.is_empty());
        assert_eq!(fixed_points(&m).dim(), 3);
    }

    #[test]
    fn diagonal_conjugation_scales_e12() {
        let f = GaloisField::prime(7).unwrap();
        let law = crate::grouprep::group::GlLaw::new(&f, 2);
        let a = element_action(&law, &mat(&f, 2, &[2, 0, 0, 1]), ModuleKind::Ad);
        assert_eq!(a.mul_vec(&vecf(&f, &[0, 1, 0, 0]), &f), vecf(&f, &[0, 2, 0, 0]));
    }

    #[test]
    fn gl2_fixed_points() {
        let g = gl2_f7();
        assert_eq!(g.order(), 48 * 42);
        assert_eq!(fixed_points(&ad_action(&g, ModuleKind::Ad).unwrap()).dim(), 1);
        assert_eq!(fixed_points(&ad_action(&g, ModuleKind::Ad0).unwrap()).dim(), 0);
        for kind in [ModuleKind::Ad, ModuleKind::Ad0, ModuleKind::Natural] {
            ad_action(&g, kind).unwrap().verify(&g, 20, 7).unwrap();
        }
    }

    #[test]
    fn largest_invariant_subspace_examples() {
        let f = GaloisField::prime(7).unwrap();
        let g = GroupOverField::generate(&f, 2, vec![mat(&f, 2, &[2, 0, 0, 1])], DEFAULT_CAP).unwrap();
        let m = ad_action(&g, ModuleKind::Ad).unwrap();
        let full = SubspaceBasis::full(&f, 4);
        assert_eq!(largest_invariant_subspace(&m, &full), full);
        let zero = SubspaceBasis::zero(4);
        assert_eq!(largest_invariant_subspace(&m, &zero), zero);
        // span(E11, E12) is already stable: E12 is an eigenvector
        let u = SubspaceBasis::span(&f, 4, &[vecf(&f, &[1, 0, 0, 0]), vecf(&f, &[0, 1, 0, 0])]);
        assert_eq!(largest_invariant_subspace(&m, &u), u);
        // E12 + E21 is moved to 2 E12 + 4 E21, leaving only E11
        let u = SubspaceBasis::span(&f, 4, &[vecf(&f, &[1, 0, 0, 0]), vecf(&f, &[0, 1, 1, 0])]);
        let e11 = SubspaceBasis::span(&f, 4, &[vecf(&f, &[1, 0, 0, 0])]);
        assert_eq!(largest_invariant_subspace(&m, &u), e11);
    }
}
