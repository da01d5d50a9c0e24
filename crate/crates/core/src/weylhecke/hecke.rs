//! Eigenvalues of the operators `V^j` on parahoric invariants of
//! `chi_1 x ... x chi_s x St_2(psi_1) x ... x St_2(psi_t)`, and the spherical
//! projector built from Hensel factors of `P_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffalg::{
    hensel_factor, multiplicity, FieldElement, LocalElement, LocalRing, Poly, Ring, TruncatedLocalRing,
};

use super::combinat::{binomial, subsets, Composition, Refinement};
use super::pj::{elementary_symmetric, pj_polynomial, PjMode};

type LPoly = Poly<LocalElement>;

/// Unramified characters `chi_1..chi_s` and Steinberg twists `psi_1..psi_t`,
/// given by their values at a uniformizer, with `s + 2t = n1 + n2`.
#[derive(Clone, Debug)]
pub struct HeckeScenario {
    pub ring: TruncatedLocalRing,
    pub q: LocalElement,
    pub sqrt_q: LocalElement,
    pub n1: usize,
    pub n2: usize,
    pub chi: Vec<LocalElement>,
    pub psi: Vec<LocalElement>,
    pub alpha_bar: Option<FieldElement>,
}

impl HeckeScenario {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ring: TruncatedLocalRing,
        q: LocalElement,
        sqrt_q: LocalElement,
        n1: usize,
        n2: usize,
        chi: Vec<LocalElement>,
        psi: Vec<LocalElement>,
        alpha_bar: Option<FieldElement>,
    ) -> Result<Self> {
        if n2 == 0 {
            return Err(Error::Invalid("n2 must be at least 1".into()));
        }
        if chi.len() + 2 * psi.len() != n1 + n2 {
            return Err(Error::Dimension(format!("s + 2t = {} but n1 + n2 = {}", chi.len() + 2 * psi.len(), n1 + n2)));
        }
        if ring.mul(&sqrt_q, &sqrt_q) != q {
            return Err(Error::Invalid("sqrt_q does not square to q".into()));
        }
        if !ring.is_unit(&q) {
            return Err(Error::NotUnit("q".into()));
        }
        for (name, vals) in [("chi", &chi), ("psi", &psi)] {
            if let Some(i) = vals.iter().position(|v| !ring.is_unit(v)) {
                return Err(Error::NotUnit(format!("{name}[{}]", i + 1)));
            }
        }
        Ok(HeckeScenario { ring, q, sqrt_q, n1, n2, chi, psi, alpha_bar })
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn s(&self) -> usize {
        self.chi.len()
    }

    pub fn t(&self) -> usize {
        self.psi.len()
    }

    fn sqrt_pow(&self, e: i64) -> LocalElement {
        self.ring.pow_signed(&self.sqrt_q, e).expect("q is a unit")
    }

    /// Frobenius eigenvalues of `r(pi)^vee(1 - n)`: `q^{(n-1)/2} chi_a`,
    /// and `q^{(n-1)/2} psi_b`, `q^{(n-3)/2} psi_b` for each Steinberg block.
    pub fn frobenius_roots(&self) -> Vec<LocalElement> {
        let r = &self.ring;
        let n = self.n() as i64;
        let a = self.sqrt_pow(n - 1);
        let b = self.sqrt_pow(n - 3);
        let mut out: Vec<LocalElement> = self.chi.iter().map(|c| r.mul(&a, c)).collect();
        for p in &self.psi {
            out.push(r.mul(&a, p));
            out.push(r.mul(&b, p));
        }
        out
    }

    pub fn frobenius_polynomial(&self) -> LPoly {
        Poly::from_roots(&self.ring, self.frobenius_roots().iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenLine {
    /// `S ⊆ {1..s}` of size `n2 - t`, 1-based.
    pub subset: Vec<usize>,
    /// `values[j - 1]` is the eigenvalue of `V^j`.
    pub values: Vec<LocalElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenLineTable {
    pub n2: usize,
    pub lines: Vec<EigenLine>,
}

impl EigenLineTable {
    /// Eigenvalues of `V^j` over all lines, in line order.
    pub fn spectrum(&self, j: usize) -> Vec<LocalElement> {
        self.lines.iter().map(|l| l.values[j - 1].clone()).collect()
    }

    pub fn char_poly(&self, j: usize, ring: &TruncatedLocalRing) -> LPoly {
        Poly::from_roots(ring, self.spectrum(j).iter())
    }
}

/// `v^j = q^{j(n-j)/2} sum_{J1 ⊆ S, J2 ⊆ {1..t}, |J1|+|J2| = j} prod chi prod psi`
/// for each `S` of size `n2 - t`, in lexicographic order of `S`.
pub fn eigenline_table(sc: &HeckeScenario) -> EigenLineTable {
    let (n, t) = (sc.n(), sc.t());
    let r = &sc.ring;
    let lines = if sc.n2 < t {
        Vec::new()
    } else {
        subsets(sc.s(), sc.n2 - t)
            .into_iter()
            .map(|subset| {
                let mut vals: Vec<LocalElement> = subset.iter().map(|&a| sc.chi[a - 1].clone()).collect();
                vals.extend(sc.psi.iter().cloned());
                let e = elementary_symmetric(&vals, r);
                let values = (1..=sc.n2).map(|j| r.mul(&sc.sqrt_pow((j * (n - j)) as i64), &e[j])).collect();
                EigenLine { subset, values }
            })
            .collect()
    };
    debug_assert_eq!(lines.len(), if sc.n2 < t { 0 } else { binomial(n - 2 * t, sc.n2 - t) });
    EigenLineTable { n2: sc.n2, lines }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectorFactor {
    pub j: usize,
    /// `C(n2, j) alpha_bar^j`
    pub target: FieldElement,
    pub p_j: LPoly,
    pub q_j: LPoly,
    pub r_j: LPoly,
    pub k_j: usize,
}

/// `pr = prod_j Q_j(V^j)` with `P_j = Q_j R_j` and `R_j ≡ (X - C(n2,j) alpha_bar^j)^{k_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalProjector {
    pub alpha_bar: FieldElement,
    pub frobenius: LPoly,
    pub factors: Vec<ProjectorFactor>,
}

pub fn spherical_projector(sc: &HeckeScenario) -> Result<SphericalProjector> {
    let r = &sc.ring;
    let k = r.residue_field();
    let alpha_bar = sc.alpha_bar.ok_or_else(|| Error::Invalid("alpha_bar is required".into()))?;
    if !k.is_one(&r.reduce(&sc.q)) || !k.is_one(&r.reduce(&sc.sqrt_q)) {
        return Err(Error::Invalid("the projector needs q ≡ 1 and sqrt_q ≡ 1 modulo the maximal ideal".into()));
    }
    let frobenius = sc.frobenius_polynomial();
    let fbar = frobenius.map(k, |c| r.reduce(c));
    let mult = multiplicity(&fbar, &alpha_bar, k);
    if mult != sc.n2 {
        return Err(Error::Invalid(format!(
            "alpha_bar has multiplicity {mult} in the Frobenius polynomial, expected n2 = {}",
            sc.n2
        )));
    }
    let factors = (1..=sc.n2)
        .map(|j| {
            let p_j = pj_polynomial(&frobenius, sc.n2, j, &sc.q, PjMode::Generic, r)?;
            let target = k.mul(&k.from_int(binomial(sc.n2, j) as i128), &k.pow(&alpha_bar, j as u64));
            let (r_j, q_j) = hensel_factor(&p_j, target, r)?;
            let k_j = r_j.degree().unwrap_or(0);
            Ok(ProjectorFactor { j, target, p_j, q_j, r_j, k_j })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SphericalProjector { alpha_bar, frobenius, factors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineOutcome {
    pub subset: Vec<usize>,
    /// `prod_j Q_j(v^j)`
    pub scalar: LocalElement,
    pub survives: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionResult {
    pub lines: Vec<LineOutcome>,
    /// Indices into `lines` of the surviving lines.
    pub surviving: Vec<usize>,
}

/// A line survives when every `v^j` reduces to `C(n2, j) alpha_bar^j`.
pub fn apply_projector(
    table: &EigenLineTable,
    proj: &SphericalProjector,
    ring: &TruncatedLocalRing,
) -> ProjectionResult {
    let lines: Vec<LineOutcome> = table
        .lines
        .iter()
        .map(|line| {
            let mut scalar = ring.one();
            let mut survives = true;
            for f in &proj.factors {
                let v = &line.values[f.j - 1];
                scalar = ring.mul(&scalar, &f.q_j.eval(v, ring));
                survives &= ring.reduce(v) == f.target;
            }
            LineOutcome { subset: line.subset.clone(), scalar, survives }
        })
        .collect();
    let surviving = lines.iter().enumerate().filter(|(_, l)| l.survives).map(|(i, _)| i).collect();
    ProjectionResult { lines, surviving }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSplit {
    /// 1-based indices of values not congruent to `alpha_bar`.
    pub s_indices: Vec<usize>,
    /// 1-based indices of values congruent to `alpha_bar`.
    pub psi_indices: Vec<usize>,
}

pub fn ramified_block_split(values: &[LocalElement], alpha_bar: FieldElement, ring: &TruncatedLocalRing) -> BlockSplit {
    let (psi, s): (Vec<usize>, Vec<usize>) =
        (1..=values.len()).partition(|&i| ring.reduce(&values[i - 1]) == alpha_bar);
    BlockSplit { s_indices: s, psi_indices: psi }
}

/// For `t = 0`: groups the `chi` by residue class (classes in order of first
/// appearance, the class of `alpha_bar` last) and reads a line `S` as the
/// refinement `n2^i = #{a in S : chi_a in class i}`.
pub fn residual_refinement(sc: &HeckeScenario, subset: &[usize]) -> Result<(Composition, Refinement)> {
    if sc.t() != 0 {
        return Err(Error::Invalid("residual refinements are defined for t = 0".into()));
    }
    let r = &sc.ring;
    let mut classes: Vec<FieldElement> = Vec::new();
    for c in &sc.chi {
        let cb = r.reduce(c);
        if !classes.contains(&cb) {
            classes.push(cb);
        }
    }
    if let Some(a) = sc.alpha_bar {
        if let Some(pos) = classes.iter().position(|&c| c == a) {
            let c = classes.remove(pos);
            classes.push(c);
        }
    }
    let class_of = |a: usize| classes.iter().position(|&c| c == r.reduce(&sc.chi[a - 1])).expect("class present");
    let mut m = vec![0; classes.len()];
    let mut m2 = vec![0; classes.len()];
    for a in 1..=sc.s() {
        m[class_of(a)] += 1;
    }
    for &a in subset {
        if a == 0 || a > sc.s() {
            return Err(Error::OutOfRange(format!("index {a} outside 1..{}", sc.s())));
        }
        m2[class_of(a)] += 1;
    }
    let refinement = m.iter().zip(&m2).map(|(&a, &b)| (a - b, b)).collect();
    Ok((Composition::new(m)?, refinement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::GaloisField;

    fn ring(l: u64, n: u32) -> TruncatedLocalRing {
        TruncatedLocalRing::new(&GaloisField::prime(l).unwrap(), n).unwrap()
    }

    fn ints(r: &TruncatedLocalRing, v: &[i128]) -> Vec<LocalElement> {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    #[test]
    fn two_characters() {
        let r = ring(101, 1);
        let (a, b, c) = (r.from_int(5), r.from_int(7), r.from_int(10));
        let sc =
            HeckeScenario::new(r.clone(), r.from_int(100), c.clone(), 1, 1, vec![a.clone(), b.clone()], vec![], None)
                .unwrap();
        let t = eigenline_table(&sc);
        assert_eq!(t.spectrum(1), vec![r.mul(&c, &a), r.mul(&c, &b)]);
    }

    #[test]
    fn one_steinberg_block() {
        let r = ring(101, 1);
        let sqrt = r.from_int(3);
        let q = r.from_int(9);
        let chi = ints(&r, &[5, 7]);
        let psi = ints(&r, &[11]);
        let sc = HeckeScenario::new(r.clone(), q, sqrt.clone(), 2, 2, chi, psi, None).unwrap();
        let t = eigenline_table(&sc);
        assert_eq!(t.lines.len(), 2);
        assert_eq!(t.lines[0].subset, vec![1]);
        // q^{3/2} (a + p)
        assert_eq!(t.lines[0].values[0], r.from_int(27 * 16));
        // q^{2} a p
        assert_eq!(t.lines[0].values[1], r.from_int(81 * 55));
    }

    #[test]
    fn validation() {
        let r = ring(7, 2);
        let one = r.one();
        assert!(HeckeScenario::new(r.clone(), one.clone(), one.clone(), 1, 1, ints(&r, &[1]), vec![], None).is_err());
        assert!(HeckeScenario::new(r.clone(), one.clone(), one.clone(), 1, 1, ints(&r, &[1, 7]), vec![], None).is_err());
        assert!(
            HeckeScenario::new(r.clone(), one.clone(), r.from_int(2), 1, 1, ints(&r, &[1, 2]), vec![], None).is_err()
        );
    }

    #[test]
    fn projector_n2_example() {
        let r = ring(7, 3);
        let k = r.residue_field().clone();
        let chi = ints(&r, &[8, 2]);
        let one = r.one();
        let sc = HeckeScenario::new(r.clone(), one.clone(), one, 1, 1, chi, vec![], Some(k.one())).unwrap();
        let pr = spherical_projector(&sc).unwrap();
        assert_eq!(pr.factors.len(), 1);
        assert_eq!(pr.factors[0].q_j, Poly::linear(&r, &r.from_int(2)));
        assert_eq!(pr.factors[0].k_j, 1);
        let out = apply_projector(&eigenline_table(&sc), &pr, &r);
        assert_eq!(out.surviving, vec![0]);
        assert!(r.is_unit(&out.lines[0].scalar));
        assert!(!r.is_unit(&out.lines[1].scalar));
    }

    #[test]
    fn block_split() {
        let r = ring(7, 3);
        let vals = ints(&r, &[8, 2, 1, 9]);
        let split = ramified_block_split(&vals, r.residue_field().one(), &r);
        assert_eq!(split.psi_indices, vec![1, 3]);
        assert_eq!(split.s_indices, vec![2, 4]);
    }
}
