//! Matrix pairs `(Phi, Sigma)` with `Phi Sigma Phi^{-1} = Sigma^q` and `Sigma`
//! unipotent of Jordan type `sigma`, together with the constraints they
//! impose on the characteristic polynomial of `Phi`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffalg::{
    ensure_split, field_embedding, roots_with_multiplicity, EchelonForm, FieldElement, GaloisField, Matrix, Poly, Ring,
};

type FMatrix = Matrix<FieldElement>;
type FPoly = Poly<FieldElement>;

/// Attempts at a random invertible combination before giving up.
const SAMPLE_ATTEMPTS: usize = 4096;

/// Jordan type of a nilpotent matrix, as a partition of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NilpotentType(Vec<usize>);

impl NilpotentType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(NilpotentType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// `N(sigma)`: Jordan blocks with ones on the superdiagonal.
    pub fn nilpotent(&self, field: &GaloisField) -> FMatrix {
        let n = self.n();
        let mut m = Matrix::zero(field, n, n);
        let mut start = 0;
        for &b in &self.0 {
            for i in start..start + b - 1 {
                m.set(i, i + 1, field.one());
            }
            start += b;
        }
        m
    }

    /// `1 + N(sigma)`.
    pub fn unipotent(&self, field: &GaloisField) -> FMatrix {
        Matrix::identity(field, self.n()).add(&self.nilpotent(field), field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationPair {
    field: GaloisField,
    phi: FMatrix,
    sigma: FMatrix,
    q: u64,
}

impl CommutationPair {
    /// Checks that `Phi` is invertible and `Phi Sigma = Sigma^q Phi`.
    pub fn new(field: &GaloisField, phi: FMatrix, sigma: FMatrix, q: u64) -> Result<Self> {
        if !phi.is_square() || phi.rows() != sigma.rows() || !sigma.is_square() {
            return Err(Error::Dimension("Phi and Sigma must be square of the same size".into()));
        }
        if !phi.is_invertible(field) {
            return Err(Error::Singular);
        }
        if phi.mul(&sigma, field) != sigma.pow(q, field).mul(&phi, field) {
            return Err(Error::Invalid("Phi Sigma Phi^-1 != Sigma^q".into()));
        }
        Ok(CommutationPair { field: field.clone(), phi, sigma, q })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn phi(&self) -> &FMatrix {
        &self.phi
    }

    pub fn sigma(&self) -> &FMatrix {
        &self.sigma
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Basis of the solutions of `Phi Sigma = Sigma^q Phi`, in echelon order.
fn solution_space(sigma: &FMatrix, q: u64, field: &GaloisField) -> Vec<FMatrix> {
    let n = sigma.rows();
    let sq = sigma.pow(q, field);
    let cols: Vec<Vec<FieldElement>> = (0..n * n)
        .map(|idx| {
            let mut e = Matrix::zero(field, n, n);
            e.set(idx / n, idx % n, field.one());
            e.mul(sigma, field).sub(&sq.mul(&e, field), field).into_data()
        })
        .collect();
    let lin = Matrix::from_fn(n * n, n * n, |r, c| cols[c][r]);
    lin.kernel(field).into_iter().map(|v| Matrix::from_vec(n, n, v).expect("n^2 entries")).collect()
}

fn check_q(q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::Invalid("q must be at least 1".into()));
    }
    Ok(())
}

/// `Sigma = 1 + N(sigma)` and `Phi` chosen deterministically: the identity
/// when `Sigma^q = Sigma`, else the first invertible solution in echelon
/// order, else a seeded random unit combination of the solution basis.
pub fn build_pair(sigma: &NilpotentType, q: u64, field: &GaloisField) -> Result<CommutationPair> {
    check_q(q)?;
    let s = sigma.unipotent(field);
    if s.pow(q, field) == s {
        return CommutationPair::new(field, Matrix::identity(field, s.rows()), s, q);
    }
    let basis = solution_space(&s, q, field);
    if let Some(phi) = basis.iter().find(|b| b.is_invertible(field)) {
        return CommutationPair::new(field, phi.clone(), s, q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let phi = random_solution(&basis, field, &mut rng)?;
    CommutationPair::new(field, phi, s, q)
}

fn random_solution(basis: &[FMatrix], field: &GaloisField, rng: &mut ChaCha8Rng) -> Result<FMatrix> {
    let Some(first) = basis.first() else {
        return Err(Error::NoInvertibleSolution);
    };
    let order = field.order();
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut phi = Matrix::zero(field, first.rows(), first.cols());
        for b in basis {
            let c = field.element(rng.gen_range(1..order)).expect("index below field order");
            phi = phi.add(&b.scale(&c, field), field);
        }
        if phi.is_invertible(field) {
            return Ok(phi);
        }
    }
    Err(Error::NoInvertibleSolution)
}

/// A random pair for `sigma`: `Phi` is a random unit combination of the
/// solution basis, drawn from `rng`.
pub fn sample_pair(
    sigma: &NilpotentType,
    q: u64,
    field: &GaloisField,
    rng: &mut ChaCha8Rng,
) -> Result<CommutationPair> {
    check_q(q)?;
    let s = sigma.unipotent(field);
    let phi = random_solution(&solution_space(&s, q, field), field, rng)?;
    CommutationPair::new(field, phi, s, q)
}

fn nilpotent_part(sigma: &FMatrix, field: &GaloisField) -> Result<FMatrix> {
    let n = sigma.rows();
    let nil = sigma.sub(&Matrix::identity(field, n), field);
    if !nil.pow(n as u64, field).is_zero(field) {
        return Err(Error::NotUnipotent);
    }
    Ok(nil)
}

/// `ker N^1 ⊆ ker N^2 ⊆ ... ⊆ V` together with a basis of `V` adapted to it:
/// `blocks[i]` lists the basis vectors added at step `i + 1`.
fn adapted_flag(nil: &FMatrix, field: &GaloisField) -> Vec<Vec<Vec<FieldElement>>> {
    let n = nil.rows();
    let mut ech = EchelonForm::new(n);
    let mut blocks = Vec::new();
    let mut power = nil.clone();
    while ech.rank() < n {
        let mut added = Vec::new();
        for v in power.kernel(field) {
            if ech.insert(v.clone(), field) {
                added.push(v);
            }
        }
        blocks.push(added);
        power = power.mul(nil, field);
    }
    blocks
}

/// `Phi (ker N^i) ⊆ ker N^i` for every `i`.
pub fn stabilizes_flag(pair: &CommutationPair) -> Result<bool> {
    let f = &pair.field;
    let nil = nilpotent_part(&pair.sigma, f)?;
    let n = nil.rows();
    let mut power = Matrix::identity(f, n);
    for _ in 0..n {
        power = power.mul(&nil, f);
        for v in power.kernel(f) {
            let image = pair.phi.mul_vec(&v, f);
            if power.mul_vec(&image, f).iter().any(|x| !f.is_zero(x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Characteristic polynomials of `Phi` on `ker N^i / ker N^{i-1}`, `i = 1, 2, ...`.
pub fn quotient_char_polys(pair: &CommutationPair) -> Result<Vec<FPoly>> {
    let f = &pair.field;
    let nil = nilpotent_part(&pair.sigma, f)?;
    let n = nil.rows();
    let blocks = adapted_flag(&nil, f);
    let basis: Vec<&Vec<FieldElement>> = blocks.iter().flatten().collect();
    let b = Matrix::from_fn(n, n, |r, c| basis[c][r]);
    let m = b.inverse(f)?.mul(&pair.phi, f).mul(&b, f);
    let mut out = Vec::new();
    let mut start = 0;
    for blk in &blocks {
        let d = blk.len();
        for c in start..start + d {
            if (start + d..n).any(|r| !f.is_zero(m.get(r, c))) {
                return Err(Error::Invalid("Phi does not preserve the kernel flag of N".into()));
            }
        }
        let sub = Matrix::from_fn(d, d, |r, c| *m.get(start + r, start + c));
        out.push(sub.char_poly(f)?);
        start += d;
    }
    Ok(out)
}

/// `cha(Phi | ker N^{i+1}/ker N^i)(X)` divides `cha(Phi | ker N^i/ker N^{i-1})(qX)` for all `i`.
pub fn verify_divisibility_chain(pair: &CommutationPair, q: u64) -> Result<bool> {
    let f = &pair.field;
    let polys = quotient_char_polys(pair)?;
    let qq = f.from_int(q as i128);
    Ok(polys.windows(2).all(|w| w[1].divides(&w[0].scale_variable(&qq, f), f)))
}

/// Whether the roots of `p` split into strings `{a, qa, ..., q^{k-1} a}` with
/// lengths the parts of `sigma`. The root multiset is taken literally.
pub fn pol_sigma_q_member(p: &FPoly, sigma: &NilpotentType, q: u64, field: &GaloisField) -> Result<bool> {
    let deg = p.degree().ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if deg != sigma.n() {
        return Err(Error::Dimension(format!("degree {deg} but sigma has size {}", sigma.n())));
    }
    let roots = roots_with_multiplicity(p, field);
    if roots.iter().map(|r| r.1).sum::<usize>() != deg {
        return Err(Error::NotSplit);
    }
    let qq = field.from_int(q as i128);
    let mut avail: Vec<(FieldElement, usize)> = roots;

    fn search(parts: &[usize], avail: &mut Vec<(FieldElement, usize)>, qq: &FieldElement, field: &GaloisField) -> bool {
        let Some((&len, rest)) = parts.split_first() else {
            return true;
        };
        for start in 0..avail.len() {
            if avail[start].1 == 0 {
                continue;
            }
            let mut taken = Vec::with_capacity(len);
            let mut x = avail[start].0;
            let mut ok = true;
            for _ in 0..len {
                match avail.iter().position(|(r, c)| *r == x && *c > 0) {
                    Some(i) => {
                        avail[i].1 -= 1;
                        taken.push(i);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
                x = field.mul(&x, qq);
            }
            if ok && search(rest, avail, qq, field) {
                return true;
            }
            for i in taken {
                avail[i].1 += 1;
            }
        }
        false
    }

    Ok(search(sigma.parts(), &mut avail, &qq, field))
}

/// `pol_sigma_q_member` after extending `field` until `p` splits.
pub fn pol_sigma_q_member_split(p: &FPoly, sigma: &NilpotentType, q: u64, field: &GaloisField) -> Result<bool> {
    let deg = p.degree().ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    let companion = Matrix::from_fn(deg, deg, |r, c| {
        if c + 1 == deg {
            field.neg(&p.coeff(r, field))
        } else if r == c + 1 {
            field.one()
        } else {
            field.zero()
        }
    });
    let monic = p.monic(field).ok_or(Error::NotSplit)?;
    let ext = ensure_split(&[companion], field)?;
    if ext == *field {
        return pol_sigma_q_member(&monic, sigma, q, field);
    }
    let emb = field_embedding(field, &ext)?;
    let lifted = monic.map(&ext, |&c| emb.map(c));
    pol_sigma_q_member(&lifted, sigma, q, &ext)
}

/// Partition from the rank profile of `N = Sigma - 1`.
pub fn jordan_type(sigma: &FMatrix, field: &GaloisField) -> Result<NilpotentType> {
    if !sigma.is_square() {
        return Err(Error::Dimension("Sigma must be square".into()));
    }
    let nil = nilpotent_part(sigma, field)?;
    let n = nil.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(field, n);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(&nil, field);
        ranks.push(power.rank(field));
    }
    // Number of blocks of size >= i is rank N^{i-1} - rank N^i.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (i, &c) in at_least.iter().enumerate() {
        let next = at_least.get(i + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(i + 1, c - next));
    }
    parts.reverse();
    NilpotentType::new(parts)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub relation: bool,
    pub flag_stable: bool,
    pub divisibility_chain: bool,
    pub pol_member: bool,
}

impl PairCheck {
    pub fn all(&self) -> bool {
        self.relation && self.flag_stable && self.divisibility_chain && self.pol_member
    }
}

/// Re-verifies every constraint on a pair.
pub fn check_pair(pair: &CommutationPair, sigma: &NilpotentType) -> Result<PairCheck> {
    let f = &pair.field;
    let relation = pair.phi.mul(&pair.sigma, f) == pair.sigma.pow(pair.q, f).mul(&pair.phi, f);
    let cha = pair.phi.char_poly(f)?;
    Ok(PairCheck {
        relation,
        flag_stable: stabilizes_flag(pair)?,
        divisibility_chain: verify_divisibility_chain(pair, pair.q)?,
        pol_member: pol_sigma_q_member_split(&cha, sigma, pair.q, f)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelmodSummary {
    pub n: usize,
    pub sigma: NilpotentType,
    pub q: u64,
    pub field: u64,
    pub samples: usize,
    pub seed: u64,
    pub relation: usize,
    pub flag_stable: usize,
    pub divisibility_chain: usize,
    pub pol_member: usize,
    pub all_passed: bool,
    /// Characteristic polynomial of `Phi` for the deterministic pair, lowest degree first.
    pub first_char_poly: Vec<FieldElement>,
}

/// Seed for sample `i` of a batch.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

/// Draws `samples` pairs in parallel (sample `i` uses `sample_seed(seed, i)`)
/// and counts how many satisfy each constraint.
pub fn run_samples(
    sigma: &NilpotentType,
    q: u64,
    field: &GaloisField,
    samples: usize,
    seed: u64,
) -> Result<LevelmodSummary> {
    let base = build_pair(sigma, q, field)?;
    let checks: Vec<PairCheck> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, i));
            let pair = sample_pair(sigma, q, field, &mut rng)?;
            check_pair(&pair, sigma)
        })
        .collect::<Result<_>>()?;
    let count = |f: fn(&PairCheck) -> bool| checks.iter().filter(|c| f(c)).count();
    Ok(LevelmodSummary {
        n: sigma.n(),
        sigma: sigma.clone(),
        q,
        field: field.order(),
        samples,
        seed,
        relation: count(|c| c.relation),
        flag_stable: count(|c| c.flag_stable),
        divisibility_chain: count(|c| c.divisibility_chain),
        pol_member: count(|c| c.pol_member),
        all_passed: checks.iter().all(PairCheck::all),
        first_char_poly: base.phi.char_poly(field)?.into_coeffs(),
    })
}
