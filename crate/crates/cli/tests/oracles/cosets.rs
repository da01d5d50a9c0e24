//! Double cosets `W_Q \ S_n / W_P` by enumerating all of `S_n`.

use std::collections::HashMap;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut w: Vec<usize> = (1..=n).collect();
    loop {
        out.push(w.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).expect("successor exists");
        w.swap(i, j);
        w[i + 1..].reverse();
    }
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// Pairs `(i, i+1)` (1-based) lying in one block of `parts`.
fn block_adjacent(parts: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = 1;
    for &m in parts {
        out.extend(start..start + m.saturating_sub(1));
        start += m;
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// The unique shortest element of every double coset, sorted.
/// `W_Q` acts on values (left), `W_P` on positions (right).
pub fn minimal_reps(q: &[usize], p: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = q.iter().sum();
    let perms = permutations(n);
    let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..perms.len()).collect();
    let left = block_adjacent(q);
    let right = block_adjacent(p);
    for (i, w) in perms.iter().enumerate() {
        for &s in &left {
            let u: Vec<usize> = w
                .iter()
                .map(|&x| {
                    if x == s {
                        s + 1
                    } else if x == s + 1 {
                        s
                    } else {
                        x
                    }
                })
                .collect();
            let (a, b) = (find(&mut parent, i), find(&mut parent, index[&u]));
            parent[a] = b;
        }
        for &s in &right {
            let mut u = w.clone();
            u.swap(s - 1, s);
            let (a, b) = (find(&mut parent, i), find(&mut parent, index[&u]));
            parent[a] = b;
        }
    }
    let mut best: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (i, w) in perms.iter().enumerate() {
        let root = find(&mut parent, i);
        best.entry(root).or_default().push((inversions(w), i));
    }
    let mut reps: Vec<Vec<usize>> = best
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            assert!(members.len() == 1 || members[0].0 < members[1].0, "shortest element is unique");
            perms[members[0].1].clone()
        })
        .collect();
    reps.sort();
    reps
}

/// Number of tables `(n1^i, n2^i)` with `n1^i + n2^i = m_i` and `sum n2^i = n2`.
pub fn refinement_count(q: &[usize], n2: usize) -> usize {
    let mut ways = vec![0usize; n2 + 1];
    ways[0] = 1;
    for &m in q {
        let mut next = vec![0usize; n2 + 1];
        for (t, &w) in ways.iter().enumerate() {
            for take in 0..=m.min(n2 - t) {
                next[t + take] += w;
            }
        }
        ways = next;
    }
    ways[n2]
}
