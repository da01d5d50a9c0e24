//! Compositions, permutations and minimal double coset representatives in
//! `W_Q \ S_n / W_P`.
//!
//! Index sets and permutations are 1-based: a permutation is stored in
//! one-line notation, `w[i - 1] = w(i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered positive parts `(m_1, ..., m_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Blocks `M_i` as 1-based index ranges.
    pub fn blocks(&self) -> Vec<std::ops::RangeInclusive<usize>> {
        let mut start = 1;
        self.0
            .iter()
            .map(|&m| {
                let r = start..=start + m - 1;
                start += m;
                r
            })
            .collect()
    }

    /// Block containing position `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks().iter().position(|b| b.contains(&i)).expect("position within n")
    }
}

/// `n = n_1 + n_2` with `n_2 >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoPartComposition {
    pub n1: usize,
    pub n2: usize,
}

impl TwoPartComposition {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n2 == 0 {
            return Err(Error::Invalid("n2 must be at least 1".into()));
        }
        Ok(TwoPartComposition { n1, n2 })
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// As a composition, dropping an empty first part.
    pub fn as_composition(&self) -> Composition {
        let parts = if self.n1 == 0 { vec![self.n2] } else { vec![self.n1, self.n2] };
        Composition(parts)
    }
}

/// Per-block split `m_i = n_1^i + n_2^i`.
pub type Refinement = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosetRep {
    pub w: Vec<usize>,
    pub refinement: Refinement,
}

/// Number of inversions.
pub fn length(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

pub fn inverse(w: &[usize]) -> Vec<usize> {
    let mut out = vec![0; w.len()];
    for (i, &wi) in w.iter().enumerate() {
        out[wi - 1] = i + 1;
    }
    out
}

pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len()];
    w.iter().all(|&x| x >= 1 && x <= w.len() && !std::mem::replace(&mut seen[x - 1], true))
}

fn order_preserving_on_blocks(w: &[usize], comp: &Composition) -> bool {
    comp.blocks().iter().all(|b| {
        let vals: Vec<usize> = b.clone().map(|i| w[i - 1]).collect();
        vals.windows(2).all(|p| p[0] < p[1])
    })
}

/// Minimal length in `W_Q w W_P`: `w` is increasing on each block of `P`
/// and `w^{-1}` is increasing on each block of `Q`.
pub fn is_minimal(w: &[usize], q: &Composition, p: &TwoPartComposition) -> bool {
    order_preserving_on_blocks(w, &p.as_composition()) && order_preserving_on_blocks(&inverse(w), q)
}

fn check_sizes(q: &Composition, p: &TwoPartComposition) -> Result<()> {
    if q.n() != p.n() {
        return Err(Error::Dimension(format!("Q has size {} but P has size {}", q.n(), p.n())));
    }
    Ok(())
}

/// `m_i = #(M_i ∩ w N_1) + #(M_i ∩ w N_2)`.
pub fn coset_to_refinement(w: &[usize], q: &Composition, p: &TwoPartComposition) -> Result<Refinement> {
    check_sizes(q, p)?;
    if w.len() != q.n() || !is_permutation(w) {
        return Err(Error::Invalid(format!("{w:?} is not a permutation of 1..{}", q.n())));
    }
    Ok(q.blocks()
        .iter()
        .map(|b| {
            let n1 = w[..p.n1].iter().filter(|x| b.contains(x)).count();
            let n2 = w[p.n1..].iter().filter(|x| b.contains(x)).count();
            (n1, n2)
        })
        .collect())
}

/// All refinements, ordered lexicographically on `(n_2^1, ..., n_2^r)`.
pub fn refinements(q: &Composition, p: &TwoPartComposition) -> Result<Vec<Refinement>> {
    check_sizes(q, p)?;
    fn go(parts: &[usize], left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match parts.split_first() {
            None => {
                if left == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&m, rest)) => {
                let rest_cap: usize = rest.iter().sum();
                for k in 0..=m.min(left) {
                    if left - k <= rest_cap {
                        acc.push(k);
                        go(rest, left - k, acc, out);
                        acc.pop();
                    }
                }
            }
        }
    }
    let mut n2s = Vec::new();
    go(q.parts(), p.n2, &mut Vec::new(), &mut n2s);
    Ok(n2s.into_iter().map(|v| q.parts().iter().zip(v).map(|(&m, k)| (m - k, k)).collect()).collect())
}

/// The minimal representative with the given refinement: in each block the
/// first `n_1^i` positions receive `N_1`, the last `n_2^i` receive `N_2`.
pub fn refinement_to_rep(refinement: &Refinement, q: &Composition, p: &TwoPartComposition) -> Result<Vec<usize>> {
    check_sizes(q, p)?;
    let ok = refinement.len() == q.parts().len()
        && refinement.iter().zip(q.parts()).all(|(&(a, b), &m)| a + b == m)
        && refinement.iter().map(|r| r.0).sum::<usize>() == p.n1;
    if !ok {
        return Err(Error::Invalid(format!("{refinement:?} is not a refinement of {:?}", q.parts())));
    }
    let mut to_n1 = Vec::new();
    let mut to_n2 = Vec::new();
    for (b, &(a, _)) in q.blocks().into_iter().zip(refinement) {
        let vals: Vec<usize> = b.collect();
        to_n1.extend_from_slice(&vals[..a]);
        to_n2.extend_from_slice(&vals[a..]);
    }
    to_n1.extend(to_n2);
    Ok(to_n1)
}

/// One minimal-length representative per double coset.
pub fn minimal_double_coset_reps(q: &Composition, p: &TwoPartComposition) -> Result<Vec<DoubleCosetRep>> {
    refinements(q, p)?
        .into_iter()
        .map(|r| Ok(DoubleCosetRep { w: refinement_to_rep(&r, q, p)?, refinement: r }))
        .collect()
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return Vec::new();
    }
    (0..1usize << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut cur = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(cur);
                    cur = 1;
                } else {
                    cur += 1;
                }
            }
            parts.push(cur);
            Composition(parts)
        })
        .collect()
}

/// Partitions of `n` (weakly decreasing), in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=left.min(max)).rev() {
            acc.push(k);
            go(left - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
