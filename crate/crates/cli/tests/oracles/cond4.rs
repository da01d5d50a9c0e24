//! Condition 4 by enumerating every irreducible submodule and every group element.

use std::collections::{HashMap, HashSet};

use adequacy_core::ffalg::{
    embed_matrix, ensure_split, field_embedding, EchelonForm, FieldElement, GaloisField, Matrix, Ring, SubspaceBasis,
};
use adequacy_core::grouprep::{lie_basis, FiniteGroup, MatrixLaw, ModuleAction};
use adequacy_core::Mode;

use super::{for_each_projective_point, projective_count};

type FMatrix = Matrix<FieldElement>;

struct Eigen {
    multiplicity: usize,
    semisimple: bool,
    projector: FMatrix,
}

/// Eigenvalues found by testing every field element; the projector onto the
/// generalized eigenspace along the image of `(g - a)^n`.
fn eigen_data(g: &FMatrix, k: &GaloisField) -> Vec<Eigen> {
    let n = g.rows();
    k.elements()
        .filter_map(|a| {
            let shifted = g.sub(&Matrix::scalar(k, n, a), k);
            let big = shifted.pow(n as u64, k);
            let kernel = big.kernel(k);
            if kernel.is_empty() {
                return None;
            }
            let image = SubspaceBasis::full(k, n).image(k, &big);
            let cols: Vec<&Vec<FieldElement>> = kernel.iter().chain(image.basis()).collect();
            let b = Matrix::from_fn(n, n, |r, c| cols[c][r]);
            let diag: Vec<FieldElement> = (0..n).map(|i| if i < kernel.len() { k.one() } else { k.zero() }).collect();
            let projector = b.mul(&Matrix::diagonal(k, &diag), k).mul(&b.inverse(k).expect("adapted basis"), k);
            Some(Eigen { multiplicity: kernel.len(), semisimple: shifted.kernel(k).len() == kernel.len(), projector })
        })
        .collect()
}

/// Reduced echelon basis of the submodule generated by `v`.
fn spin(gens: &[FMatrix], v: &[FieldElement], k: &GaloisField) -> Vec<Vec<FieldElement>> {
    let mut ech = EchelonForm::new(v.len());
    let mut queue = vec![v.to_vec()];
    while let Some(x) = queue.pop() {
        if ech.insert(x.clone(), k) {
            queue.extend(gens.iter().map(|g| g.mul_vec(&x, k)));
        }
    }
    ech.rows().to_vec()
}

/// Whether every irreducible submodule of `module` (over a splitting field)
/// pairs nontrivially with `tr(e_{g,a} .)` for some admissible `(g, a)` with
/// `g` in `search`.
pub fn brute_force<L: MatrixLaw>(
    search: &FiniteGroup<L>,
    module: &ModuleAction,
    mode: Mode,
    require_semisimple: bool,
) -> bool {
    let law = search.law();
    let base = &module.field;
    let mats: Vec<FMatrix> = search.elements().iter().map(|a| law.matrix_part(a).clone()).collect();
    let ext = ensure_split(&mats, base).expect("splitting field");
    let emb = field_embedding(base, &ext).expect("embedding");
    let gens: Vec<FMatrix> = module.generators.iter().map(|g| embed_matrix(g, &emb)).collect();
    let basis = lie_basis(module.kind, module.n, &ext);

    let mut functionals: HashSet<Vec<FieldElement>> = HashSet::new();
    for m in &mats {
        let g = embed_matrix(m, &emb);
        for e in eigen_data(&g, &ext) {
            if mode == Mode::Big && e.multiplicity != 1 {
                continue;
            }
            if require_semisimple && !e.semisimple {
                continue;
            }
            let f: Vec<FieldElement> = basis.iter().map(|b| e.projector.mul(b, &ext).trace(&ext)).collect();
            if f.iter().any(|x| !ext.is_zero(x)) {
                functionals.insert(f);
            }
        }
    }

    let d = module.dim;
    let mut by_module: HashMap<Vec<Vec<FieldElement>>, u64> = HashMap::new();
    for_each_projective_point(&ext, d, |v| {
        *by_module.entry(spin(&gens, v, &ext)).or_default() += 1;
    });
    let order = ext.order();
    let irreducible: Vec<&Vec<Vec<FieldElement>>> =
        by_module.iter().filter(|(w, &count)| count == projective_count(order, w.len())).map(|(w, _)| w).collect();
    let pairs_with = |w: &Vec<Vec<FieldElement>>| {
        functionals.iter().any(|f| {
            w.iter().any(|v| {
                let dot = f.iter().zip(v).fold(ext.zero(), |acc, (a, b)| ext.add(&acc, &ext.mul(a, b)));
                !ext.is_zero(&dot)
            })
        })
    };
    irreducible.iter().all(|w| pairs_with(w))
}
