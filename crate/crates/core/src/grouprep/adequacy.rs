//! The big and adequate conditions.
//!
//! Condition 4 asks that every irreducible submodule `W` of `ad^0 V` (or
//! `ad V`) pair nontrivially with some eigenprojector: `tr(e_{g,a} w) != 0`
//! for some `w` in `W`. With `U` the common kernel of the functionals
//! `w -> tr(e_{g,a} w)`, an irreducible `W` fails exactly when `W ⊆ U`, and
//! then `W` lies in the largest invariant subspace `N` of `U`. So the
//! condition holds iff `N = 0`.
//!
//! Only one `g` per conjugacy class is needed: conjugating `g` by `h` moves
//! the kernel of its functional to `h` times that kernel, and `N` is the
//! intersection of all translates anyway.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cohomology::h1_dimension;
use super::group::{FiniteGroup, GnGroup, GroupOverField, MatrixLaw, Variant};
use super::module::{ad_action, fixed_points, largest_invariant_subspace, lie_basis, spin, ModuleAction, ModuleKind};
use crate::error::{Error, Result};
use crate::ffalg::{
    char_poly_roots, embed_matrix, ensure_split, field_embedding, generalized_eigenprojector, EchelonForm,
    FieldElement, FieldSpec, GaloisField, Matrix, Ring, SubspaceBasis,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Big,
    Adequate,
}

/// An admissible `(g, alpha)` with a nonzero trace functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    /// Index of `g` in the full group.
    pub element: usize,
    pub eigenvalue: FieldElement,
    pub multiplicity: usize,
    /// `w -> tr(e_{g, alpha} w)` in the module basis.
    pub functional: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct Condition4 {
    pub holds: bool,
    /// Field containing all eigenvalues of the searched elements.
    pub split_field: GaloisField,
    pub pairs: Vec<EigenPair>,
    /// Largest invariant subspace inside the common kernel, over `split_field`.
    pub invariant: SubspaceBasis<FieldElement>,
}

/// Condition 4 for `group` acting on `module`, with `g` ranging over
/// `search` (a subgroup of `group` with the same law).
pub fn condition4<L: MatrixLaw>(
    group: &FiniteGroup<L>,
    search: &FiniteGroup<L>,
    module: &ModuleAction,
    mode: Mode,
    require_semisimple: bool,
) -> Result<Condition4> {
    if !matches!(module.kind, ModuleKind::Ad | ModuleKind::Ad0) {
        return Err(Error::Invalid(format!("condition 4 needs ad V or ad^0 V, got {:?}", module.kind)));
    }
    let law = group.law();
    let base = law.field();
    let n = law.n();
    let reps: Vec<usize> = search.conjugacy_classes().iter().map(|c| c[0]).collect();
    let rep_mats: Vec<Matrix<FieldElement>> =
        reps.iter().map(|&i| law.matrix_part(search.element(i)).clone()).collect();
    let ext = ensure_split(&rep_mats, base)?;
    let emb = field_embedding(base, &ext)?;
    let module = if ext == *base { module.clone() } else { module.extend(&emb) };
    let basis = lie_basis(module.kind, n, &ext);

    let per_rep: Vec<Result<Vec<EigenPair>>> = reps
        .par_iter()
        .zip(rep_mats.par_iter())
        .map(|(&i, g)| {
            let g = embed_matrix(g, &emb);
            let element = group.index_of(search.element(i)).expect("search group lies in the group");
            let mut out = Vec::new();
            for (alpha, mult) in char_poly_roots(&g, &ext)? {
                if mode == Mode::Big && mult != 1 {
                    continue;
                }
                let e = generalized_eigenprojector(&g, &alpha, &ext)?;
                if require_semisimple {
                    let shifted = g.sub(&Matrix::scalar(&ext, n, alpha), &ext);
                    if !shifted.mul(&e, &ext).is_zero(&ext) {
                        continue;
                    }
                }
                let functional: Vec<FieldElement> = basis.iter().map(|b| e.mul(b, &ext).trace(&ext)).collect();
                if functional.iter().any(|x| !ext.is_zero(x)) {
                    out.push(EigenPair { element, eigenvalue: alpha, multiplicity: mult, functional });
                }
            }
            Ok(out)
        })
        .collect();
    let mut pairs = Vec::new();
    for r in per_rep {
        pairs.extend(r?);
    }
    pairs.sort_by_key(|p| (p.element, p.eigenvalue));

    let functionals: Vec<Vec<FieldElement>> = pairs.iter().map(|p| p.functional.clone()).collect();
    let u = SubspaceBasis::full(&ext, module.dim).restrict_to_kernel(&ext, &functionals);
    let invariant = largest_invariant_subspace(&module, &u);
    Ok(Condition4 { holds: invariant.is_zero(), split_field: ext, pairs, invariant })
}

/// Absolute irreducibility of the natural module, by three routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    /// Whether the group spans `M_n(k)` (Burnside); this decides the answer.
    pub absolutely_irreducible: bool,
    pub span_dim: usize,
    pub centralizer_dim: usize,
    /// Whether every standard basis vector spins up to `V`.
    pub basis_vectors_generate: bool,
}

pub fn irreducibility<L: MatrixLaw>(group: &FiniteGroup<L>) -> Irreducibility {
    let law = group.law();
    let f = law.field();
    let n = law.n();
    let mut span = EchelonForm::new(n * n);
    for a in group.elements() {
        span.insert(law.matrix_part(a).data().to_vec(), f);
        if span.rank() == n * n {
            break;
        }
    }
    // X g - g X = 0 for every generator, X unknown (n^2 unknowns)
    let mut eqs = EchelonForm::new(n * n);
    for s in group.generators() {
        let g = law.matrix_part(s);
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![f.zero(); n * n];
                for k in 0..n {
                    // (X g)_{rc} = sum_k X_{rk} g_{kc};  (g X)_{rc} = sum_k g_{rk} X_{kc}
                    row[r * n + k] = f.add(&row[r * n + k], g.get(k, c));
                    row[k * n + c] = f.sub(&row[k * n + c], g.get(r, k));
                }
                eqs.insert(row, f);
            }
        }
    }
    let natural = ModuleAction {
        kind: ModuleKind::Natural,
        field: f.clone(),
        n,
        dim: n,
        generators: group.generators().iter().map(|s| law.matrix_part(s).clone()).collect(),
    };
    let basis_vectors_generate = (0..n).all(|i| {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        spin(&natural, &[v]).dim() == n
    });
    let span_dim = span.rank();
    Irreducibility {
        absolutely_irreducible: span_dim == n * n,
        span_dim,
        centralizer_dim: n * n - eqs.rank(),
        basis_vectors_generate,
    }
}

pub fn is_absolutely_irreducible<L: MatrixLaw>(group: &FiniteGroup<L>) -> bool {
    irreducibility(group).absolutely_irreducible
}

/// A group the four conditions can be checked on.
pub trait AdequacyTarget: Sync {
    type Law: MatrixLaw;
    fn variant(&self) -> Variant;
    fn full(&self) -> &FiniteGroup<Self::Law>;
    /// `G` itself for `GL_n`, `G^0` for `G_n`.
    fn connected(&self) -> &FiniteGroup<Self::Law>;
}

impl AdequacyTarget for GroupOverField {
    type Law = super::group::GlLaw;

    fn variant(&self) -> Variant {
        Variant::Gl
    }

    fn full(&self) -> &FiniteGroup<Self::Law> {
        self
    }

    fn connected(&self) -> &FiniteGroup<Self::Law> {
        self
    }
}

impl AdequacyTarget for GnGroup {
    type Law = super::group::GnLaw;

    fn variant(&self) -> Variant {
        Variant::Gn
    }

    fn full(&self) -> &FiniteGroup<Self::Law> {
        self.group()
    }

    fn connected(&self) -> &FiniteGroup<Self::Law> {
        GnGroup::connected(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub h0: bool,
    pub h1_triv: bool,
    pub h1_ad: bool,
    pub cond4: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub module: usize,
    pub h0: usize,
    pub h1_triv: usize,
    pub h1_ad: usize,
    /// Dimension of the largest invariant subspace on which every functional vanishes.
    pub invariant_subspace: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub element: usize,
    /// Coordinates of the eigenvalue in the split field.
    pub eigenvalue: Vec<u64>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub split_field: FieldSpec,
    /// Pairs `(g, alpha)` whose functionals cut out the common kernel.
    pub pairs: Vec<PairWitness>,
    /// On failure, a basis of a nonzero invariant subspace killed by every functional.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_subspace: Option<Vec<Vec<Vec<u64>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyReport {
    pub mode: Mode,
    pub variant: Variant,
    pub require_semisimple: bool,
    pub conditions: Conditions,
    pub verdict: bool,
    /// Names of the conditions that fail, in order.
    pub failed: Vec<String>,
    pub witnesses: Witnesses,
    pub dims: Dims,
    pub order: usize,
    pub irreducibility: Irreducibility,
}

pub fn check<T: AdequacyTarget>(target: &T, mode: Mode, require_semisimple: bool) -> Result<AdequacyReport> {
    let g = target.full();
    let g0 = target.connected();
    let kind = match target.variant() {
        Variant::Gl => ModuleKind::Ad0,
        Variant::Gn => ModuleKind::Ad,
    };
    let module = ad_action(g, kind)?;
    let field = g.law().field();
    let trivial = ModuleAction::trivial(field, g.law().n(), g0.generator_count());

    let ((h0, h1_triv), (h1_ad, cond4)) = rayon::join(
        || (fixed_points(&module).dim(), h1_dimension(g0, &trivial)),
        || (h1_dimension(g, &module), condition4(g, g0, &module, mode, require_semisimple)),
    );
    let cond4 = cond4?;
    let conditions = Conditions { h0: h0 == 0, h1_triv: h1_triv == 0, h1_ad: h1_ad == 0, cond4: cond4.holds };
    let failed: Vec<String> = [
        ("h0", conditions.h0),
        ("h1_triv", conditions.h1_triv),
        ("h1_ad", conditions.h1_ad),
        ("cond4", conditions.cond4),
    ]
    .iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| name.to_string())
    .collect();
    let ext = &cond4.split_field;
    let witnesses = Witnesses {
        split_field: ext.spec(),
        pairs: cond4
            .pairs
            .iter()
            .map(|p| PairWitness {
                element: p.element,
                eigenvalue: ext.coords(p.eigenvalue),
                multiplicity: p.multiplicity,
            })
            .collect(),
        invariant_subspace: (!cond4.holds)
            .then(|| cond4.invariant.basis().iter().map(|v| v.iter().map(|&x| ext.coords(x)).collect()).collect()),
    };
    Ok(AdequacyReport {
        mode,
        variant: target.variant(),
        require_semisimple,
        verdict: failed.is_empty(),
        conditions,
        failed,
        witnesses,
        dims: Dims { module: module.dim, h0, h1_triv, h1_ad, invariant_subspace: cond4.invariant.dim() },
        order: g.order(),
        irreducibility: irreducibility(g0),
    })
}

pub fn check_adequate<T: AdequacyTarget>(target: &T, require_semisimple: bool) -> Result<AdequacyReport> {
    check(target, Mode::Adequate, require_semisimple)
}

/// Multiplicity-one eigenvalues act semisimply on their eigenline, so the
/// semisimplicity flag has no effect here.
pub fn check_big<T: AdequacyTarget>(target: &T) -> Result<AdequacyReport> {
    check(target, Mode::Big, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::group::DEFAULT_CAP;

    fn mat(f: &GaloisField, v: &[i128]) -> Matrix<FieldElement> {
        Matrix::from_vec(2, 2, v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    fn group(l: u64, gens: &[&[i128]]) -> GroupOverField {
        let f = GaloisField::prime(l).unwrap();
        GroupOverField::generate(&f, 2, gens.iter().map(|g| mat(&f, g)).collect(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn trivial_group_fails_condition4() {
        let g = group(7, &[]);
        let m = ad_action(&g, ModuleKind::Ad0).unwrap();
        let c = condition4(&g, &g, &m, Mode::Adequate, true).unwrap();
        assert!(!c.holds);
        assert_eq!(c.invariant.dim(), 3);
        assert!(!check_big(&g).unwrap().verdict);
    }

    #[test]
    fn gl2_f7_is_big_and_adequate() {
        let g = group(7, &[&[3, 0, 0, 1], &[-1, 1, -1, 0]]);
        for ss in [true, false] {
            let r = check_adequate(&g, ss).unwrap();
            assert!(r.verdict, "{r:?}");
        }
        assert!(check_big(&g).unwrap().verdict);
        assert!(is_absolutely_irreducible(&g));
    }

    #[test]
    fn scalars_fail_h0() {
        let g = group(7, &[&[3, 0, 0, 3]]);
        let r = check_adequate(&g, true).unwrap();
        assert!(!r.verdict);
        assert!(r.failed.contains(&"h0".to_string()));
        assert!(!r.irreducibility.absolutely_irreducible);
    }

    #[test]
    fn sl2_f3_fails_h1_trivial() {
        let g = group(3, &[&[1, 1, 0, 1], &[0, -1, 1, 0]]);
        let r = check_adequate(&g, true).unwrap();
        assert_eq!(r.dims.h1_triv, 1);
        assert!(r.failed.contains(&"h1_triv".to_string()));
    }

    #[test]
    fn irreducibility_routes() {
        let sl2 = group(7, &[&[1, 1, 0, 1], &[0, -1, 1, 0]]);
        let i = irreducibility(&sl2);
        assert!(i.absolutely_irreducible && i.centralizer_dim == 1 && i.basis_vectors_generate);
        let borel = group(7, &[&[3, 0, 0, 1], &[1, 1, 0, 1]]);
        assert!(!is_absolutely_irreducible(&borel));
        assert!(!is_absolutely_irreducible(&group(7, &[&[2, 0, 0, 2]])));
        // preserves the line through e1 + e2 while each basis vector spins to V
        let swap = group(7, &[&[0, 1, 1, 0]]);
        let i = irreducibility(&swap);
        assert!(!i.absolutely_irreducible);
        assert!(i.basis_vectors_generate);
        // irreducible over GF(7) but not absolutely: rotation of order 4
        let rot = group(7, &[&[0, -1, 1, 0]]);
        let i = irreducibility(&rot);
        assert!(!i.absolutely_irreducible);
        assert_eq!(i.centralizer_dim, 2);
    }
}
