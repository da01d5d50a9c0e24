//! First cohomology by solving the cocycle relations on a spanning tree of
//! the Cayley graph.

use super::group::{FiniteGroup, GroupLaw};
use super::module::{fixed_points, ModuleAction};
use crate::ffalg::{EchelonForm, FieldElement, Matrix, Ring};

/// `dim Z^1(G, M)`.
///
/// The unknowns are the values `phi(s)` on the generators. Along the tree,
/// `phi(x s) = phi(x) + x phi(s)` expresses every `phi(x)` linearly in them;
/// each non-tree edge `x -> x s` contributes the `d` equations saying the two
/// expressions for `phi(x s)` agree.
pub fn cocycle_dimension<L: GroupLaw>(group: &FiniteGroup<L>, module: &ModuleAction) -> usize {
    let f = &module.field;
    let d = module.dim;
    let s_count = group.generator_count();
    let unknowns = d * s_count;
    if unknowns == 0 {
        return 0;
    }
    let actions = module.all_actions(group);
    // phi(x) as a d x unknowns matrix
    let mut phi: Vec<Option<Matrix<FieldElement>>> = vec![None; group.order()];
    phi[0] = Some(Matrix::zero(f, d, unknowns));
    let mut echelon = EchelonForm::new(unknowns);
    // expression for phi(x s) derived from phi(x)
    let step = |px: &Matrix<FieldElement>, x: usize, s: usize| {
        let mut out = px.clone();
        let a = &actions[x];
        for r in 0..d {
            for c in 0..d {
                let col = s * d + c;
                let v = f.add(out.get(r, col), a.get(r, c));
                out.set(r, col, v);
            }
        }
        out
    };
    for x in 0..group.order() {
        let px = phi[x].clone().expect("breadth-first order visits parents first");
        for s in 0..s_count {
            let y = group.right_mul(x, s);
            let candidate = step(&px, x, s);
            if group.tree_parent(y) == Some((x, s)) {
                phi[y] = Some(candidate);
            } else {
                let py = phi[y].as_ref().expect("targets of non-tree edges are already reached");
                let diff = candidate.sub(py, f);
                for r in 0..d {
                    if echelon.rank() == unknowns {
                        break;
                    }
                    let row = diff.row(r).to_vec();
                    if row.iter().any(|v| !f.is_zero(v)) {
                        echelon.insert(row, f);
                    }
                }
            }
        }
    }
    unknowns - echelon.rank()
}

/// `dim H^1(G, M) = dim Z^1 - (dim M - dim H^0)`.
pub fn h1_dimension<L: GroupLaw>(group: &FiniteGroup<L>, module: &ModuleAction) -> usize {
    let z1 = cocycle_dimension(group, module);
    let b1 = module.dim - fixed_points(module).dim();
    z1 - b1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::GaloisField;
    use crate::grouprep::group::{GroupOverField, DEFAULT_CAP};
    use crate::grouprep::module::{ad_action, ModuleKind};

    fn mat(f: &GaloisField, v: &[i128]) -> Matrix<FieldElement> {
        Matrix::from_vec(2, 2, v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn trivial_group_has_no_cohomology() {
        let f = GaloisField::prime(5).unwrap();
        let g = GroupOverField::generate(&f, 2, vec![], DEFAULT_CAP).unwrap();
        assert_eq!(h1_dimension(&g, &ad_action(&g, ModuleKind::Ad0).unwrap()), 0);
        assert_eq!(h1_dimension(&g, &ModuleAction::trivial(&f, 2, 0)), 0);
    }

    #[test]
    fn cyclic_of_order_l_on_trivial_module() {
        let f = GaloisField::prime(5).unwrap();
        let g = GroupOverField::generate(&f, 2, vec![mat(&f, &[1, 1, 0, 1])], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(h1_dimension(&g, &ModuleAction::trivial(&f, 2, 1)), 1);
        // redundant generators do not change the answer
        let g2 =
            GroupOverField::generate(&f, 2, vec![mat(&f, &[1, 1, 0, 1]), mat(&f, &[1, 2, 0, 1])], DEFAULT_CAP).unwrap();
        assert_eq!(h1_dimension(&g2, &ModuleAction::trivial(&f, 2, 2)), 1);
    }

    #[test]
    fn sl2_f3_abelianization() {
        let f = GaloisField::prime(3).unwrap();
        let g = GroupOverField::generate(&f, 2, vec![mat(&f, &[1, 1, 0, 1]), mat(&f, &[0, -1, 1, 0])], DEFAULT_CAP)
            .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(h1_dimension(&g, &ModuleAction::trivial(&f, 2, 2)), 1);
    }
}
