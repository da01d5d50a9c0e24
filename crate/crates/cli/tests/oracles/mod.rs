//! Brute-force reference implementations used by the acceptance suite.

pub mod cocycles;
pub mod cond4;
pub mod cosets;
pub mod levelmod;

use adequacy_core::ffalg::{FieldElement, GaloisField};

/// Calls `f` on every nonzero vector of `k^d` whose first nonzero entry is 1.
pub fn for_each_projective_point(k: &GaloisField, d: usize, mut f: impl FnMut(&[FieldElement])) {
    let elems: Vec<FieldElement> = k.elements().collect();
    let zero = elems[0];
    let one = k.element(1).expect("fields have a one");
    for lead in 0..d {
        let free = d - lead - 1;
        let mut digits = vec![0usize; free];
        let mut v = vec![zero; d];
        v[lead] = one;
        loop {
            for (i, &dg) in digits.iter().enumerate() {
                v[lead + 1 + i] = elems[dg];
            }
            f(&v);
            let mut pos = 0;
            while pos < free {
                digits[pos] += 1;
                if digits[pos] < elems.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
}

/// Number of points of the projective space of `k^d`.
pub fn projective_count(order: u64, d: usize) -> u64 {
    (0..d as u32).map(|i| order.pow(i)).sum()
}
