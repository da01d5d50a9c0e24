//! The polynomials `P_j` attached to `(P, n_2, j, q)`.
//!
//! For monic `P` of degree `n` with roots `alpha_1, ..., alpha_n`,
//! `P_j(X) = prod_S (X - q^{j(1-j)/2} e_j(alpha_S))` over the `n_2`-subsets `S`.
//! The coefficients are integer polynomials in the coefficients of `P`; the
//! generic mode computes those integer formulas once per `(n, n_2, j)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::ffalg::{Poly, Ring};

use super::combinat::{binomial, subsets};

/// `e_0, ..., e_len` of a list of ring elements.
pub fn elementary_symmetric<R: Ring>(values: &[R::Elem], ring: &R) -> Vec<R::Elem> {
    let mut e = vec![ring.one()];
    for v in values {
        e.push(ring.zero());
        for i in (1..e.len()).rev() {
            let t = ring.mul(&e[i - 1], v);
            e[i] = ring.add(&e[i], &t);
        }
    }
    e
}

/// How `pj_polynomial` obtains the roots of `P`.
#[derive(Clone, Copy, Debug)]
pub enum PjMode<'a, E> {
    /// Use the given roots directly; they must multiply out to `P`.
    Split(&'a [E]),
    /// Use the universal formula in the coefficients of `P`.
    Generic,
}

type Partition = Vec<usize>;
type MonomialExpansion = BTreeMap<Partition, i128>;

/// `P_j` coefficients as integer polynomials in `e_1, ..., e_n` of the roots.
#[derive(Clone, Debug)]
pub struct PjFormula {
    n: usize,
    n2: usize,
    j: usize,
    /// `terms[k]`: `E_k(y) = sum c * prod_i e_{lambda_i}` with `y_S = e_j(alpha_S)`.
    terms: Vec<Vec<(Vec<usize>, i128)>>,
}

fn overflow() -> Error {
    Error::Overflow
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let max = lambda.iter().copied().max().unwrap_or(0);
    (1..=max).map(|i| lambda.iter().filter(|&&p| p >= i).count()).collect()
}

/// `f * e_k` in the monomial symmetric basis on `n` variables.
fn mul_elementary(f: &MonomialExpansion, k: usize, n: usize) -> Result<MonomialExpansion> {
    let positions: Vec<Vec<usize>> = subsets(n, k);
    let mut targets = std::collections::BTreeSet::new();
    for mu in f.keys() {
        for pos in &positions {
            let mut nu = mu.clone();
            for &p in pos {
                nu[p - 1] += 1;
            }
            targets.insert(sorted_desc(nu));
        }
    }
    let mut out = MonomialExpansion::new();
    for nu in targets {
        let mut c: i128 = 0;
        for pos in &positions {
            if pos.iter().all(|&p| nu[p - 1] > 0) {
                let mut mu = nu.clone();
                for &p in pos {
                    mu[p - 1] -= 1;
                }
                if let Some(a) = f.get(&sorted_desc(mu)) {
                    c = c.checked_add(*a).ok_or_else(overflow)?;
                }
            }
        }
        if c != 0 {
            out.insert(nu, c);
        }
    }
    Ok(out)
}

impl PjFormula {
    pub fn new(n: usize, n2: usize, j: usize) -> Result<Self> {
        if n2 == 0 || n2 > n || j == 0 || j > n2 {
            return Err(Error::OutOfRange(format!("need 1 <= j <= n2 <= n, got n={n}, n2={n2}, j={j}")));
        }
        let big_n = binomial(n, n2);
        // Each variable occurs in C(n-1, n2-1) of the factors (1 + y_S).
        let bound = binomial(n - 1, n2 - 1);
        let base = bound + 1;
        let size = base
            .checked_pow(n as u32)
            .filter(|&s| s <= 1 << 26)
            .ok_or_else(|| Error::OutOfRange(format!("P_j formula for n={n}, n2={n2} is too large")))?;
        let stride: Vec<usize> = (0..n).map(|a| base.pow(a as u32)).collect();

        let mut dense = vec![0i128; size];
        dense[0] = 1;
        let mut top = 0usize;
        for s in subsets(n, n2) {
            let offsets: Vec<usize> =
                subsets(n2, j).iter().map(|jj| jj.iter().map(|&i| stride[s[i - 1] - 1]).sum()).collect();
            let max_off = *offsets.iter().max().expect("j <= n2");
            for idx in (0..=top).rev() {
                let a = dense[idx];
                if a == 0 {
                    continue;
                }
                for &off in &offsets {
                    let t = &mut dense[idx + off];
                    *t = t.checked_add(a).ok_or_else(overflow)?;
                }
            }
            top += max_off;
        }

        let mut by_k: Vec<MonomialExpansion> = vec![MonomialExpansion::new(); big_n + 1];
        for (idx, &a) in dense.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let exps: Vec<usize> = (0..n).map(|v| idx / stride[v] % base).collect();
            if exps.windows(2).all(|w| w[0] >= w[1]) {
                let deg: usize = exps.iter().sum();
                by_k[deg / j].insert(exps, a);
            }
        }

        let mut memo: HashMap<Vec<usize>, MonomialExpansion> = HashMap::new();
        let mut terms = Vec::with_capacity(big_n + 1);
        for mut f in by_k {
            let mut out = Vec::new();
            while let Some((lambda, &c)) = f.iter().next_back() {
                let lambda = lambda.clone();
                let e_parts = conjugate(&lambda);
                if !memo.contains_key(&e_parts) {
                    let mut g = MonomialExpansion::new();
                    g.insert(vec![0; n], 1);
                    for &p in &e_parts {
                        g = mul_elementary(&g, p, n)?;
                    }
                    memo.insert(e_parts.clone(), g);
                }
                for (mu, b) in &memo[&e_parts] {
                    let prod = b.checked_mul(c).ok_or_else(overflow)?;
                    let entry = f.entry(mu.clone()).or_insert(0);
                    *entry = entry.checked_sub(prod).ok_or_else(overflow)?;
                    if *entry == 0 {
                        f.remove(mu);
                    }
                }
                debug_assert!(!f.contains_key(&lambda));
                out.push((e_parts, c));
            }
            out.sort();
            terms.push(out);
        }
        Ok(PjFormula { n, n2, j, terms })
    }

    /// Shared instance for `(n, n2, j)`.
    pub fn cached(n: usize, n2: usize, j: usize) -> Result<Arc<Self>> {
        type Cache = Mutex<HashMap<(usize, usize, usize), Arc<PjFormula>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("formula cache").get(&(n, n2, j)) {
            return Ok(f.clone());
        }
        let f = Arc::new(PjFormula::new(n, n2, j)?);
        cache.lock().expect("formula cache").insert((n, n2, j), f.clone());
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// `deg P_j = C(n, n2)`.
    pub fn degree(&self) -> usize {
        self.terms.len() - 1
    }

    /// Integer coefficients of `E_k(y)` in the elementary basis.
    pub fn terms(&self, k: usize) -> &[(Vec<usize>, i128)] {
        &self.terms[k]
    }

    pub fn apply<R: Ring>(&self, p: &Poly<R::Elem>, q: &R::Elem, ring: &R) -> Result<Poly<R::Elem>> {
        if p.degree() != Some(self.n) || !p.is_monic(ring) {
            return Err(Error::Invalid(format!("P must be monic of degree {}", self.n)));
        }
        let c = scalar(q, self.j, ring)?;
        // e_i of the roots is (-1)^i times the coefficient of X^{n-i}.
        let e: Vec<R::Elem> = (0..=self.n)
            .map(|i| {
                let a = p.coeff(self.n - i, ring);
                if i % 2 == 1 {
                    ring.neg(&a)
                } else {
                    a
                }
            })
            .collect();
        let big_n = self.degree();
        let mut coeffs = vec![ring.zero(); big_n + 1];
        let minus_c = ring.neg(&c);
        for (k, terms) in self.terms.iter().enumerate() {
            let mut s = ring.zero();
            for (parts, coef) in terms {
                let mon = parts.iter().fold(ring.from_int(*coef), |acc, &i| ring.mul(&acc, &e[i]));
                s = ring.add(&s, &mon);
            }
            coeffs[big_n - k] = ring.mul(&s, &ring.pow(&minus_c, k as u64));
        }
        Ok(Poly::new(ring, coeffs))
    }
}

/// `q^{j(1-j)/2}`, or an error when `q` is not a unit.
fn scalar<R: Ring>(q: &R::Elem, j: usize, ring: &R) -> Result<R::Elem> {
    let exp = (j as i64) * (1 - j as i64) / 2;
    ring.pow_signed(q, exp).ok_or_else(|| Error::NotUnit("q".into()))
}

/// `prod_S (X - q^{j(1-j)/2} e_j(alpha_S))` from explicit roots.
pub fn pj_from_roots<R: Ring>(roots: &[R::Elem], n2: usize, j: usize, q: &R::Elem, ring: &R) -> Result<Poly<R::Elem>> {
    let n = roots.len();
    if n2 == 0 || n2 > n || j == 0 || j > n2 {
        return Err(Error::OutOfRange(format!("need 1 <= j <= n2 <= n, got n={n}, n2={n2}, j={j}")));
    }
    let c = scalar(q, j, ring)?;
    let values: Vec<R::Elem> = subsets(n, n2)
        .iter()
        .map(|s| {
            let sub: Vec<R::Elem> = s.iter().map(|&i| roots[i - 1].clone()).collect();
            ring.mul(&c, &elementary_symmetric(&sub, ring)[j])
        })
        .collect();
    Ok(Poly::from_roots(ring, values.iter()))
}

pub fn pj_polynomial<R: Ring>(
    p: &Poly<R::Elem>,
    n2: usize,
    j: usize,
    q: &R::Elem,
    mode: PjMode<'_, R::Elem>,
    ring: &R,
) -> Result<Poly<R::Elem>> {
    match mode {
        PjMode::Split(roots) => {
            if Poly::from_roots(ring, roots.iter()) != *p {
                return Err(Error::Invalid("roots do not multiply out to P".into()));
            }
            pj_from_roots(roots, n2, j, q, ring)
        }
        PjMode::Generic => {
            let n = p.degree().ok_or_else(|| Error::Invalid("P is zero".into()))?;
            PjFormula::cached(n, n2, j)?.apply(p, q, ring)
        }
    }
}

/// `P_j` over the integers, coefficients lowest degree first. Over `Z` the
/// factor `q^{j(1-j)/2}` exists only for `j = 1` or `q = ±1`. With `roots`
/// given, the split mode is used and the roots must multiply out to `P`.
pub fn pj_integer(p: &[i128], n2: usize, j: usize, q: i128, roots: Option<&[i128]>) -> Result<Vec<i128>> {
    let n = p.len().checked_sub(1).ok_or_else(|| Error::Invalid("P is zero".into()))?;
    if p[n] != 1 {
        return Err(Error::Invalid("P must be monic".into()));
    }
    let exp = (j as i64) * (1 - j as i64) / 2;
    let c: i128 = match (exp, q) {
        (0, _) => 1,
        (_, 1) => 1,
        (e, -1) => {
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => return Err(Error::NotUnit("q".into())),
    };
    let add = |a: i128, b: i128| a.checked_add(b).ok_or(Error::Overflow);
    let mul = |a: i128, b: i128| a.checked_mul(b).ok_or(Error::Overflow);
    let from_roots = |rs: &[i128]| -> Result<Vec<i128>> {
        let mut out = vec![1i128];
        for &r in rs {
            let mut next = vec![0i128; out.len() + 1];
            for (i, &a) in out.iter().enumerate() {
                next[i + 1] = add(next[i + 1], a)?;
                next[i] = add(next[i], mul(-r, a)?)?;
            }
            out = next;
        }
        Ok(out)
    };
    match roots {
        Some(rs) => {
            if from_roots(rs)? != p {
                return Err(Error::Invalid("roots do not multiply out to P".into()));
            }
            if n2 == 0 || n2 > n || j == 0 || j > n2 {
                return Err(Error::OutOfRange(format!("need 1 <= j <= n2 <= n, got n={n}, n2={n2}, j={j}")));
            }
            let mut values = Vec::new();
            for s in subsets(n, n2) {
                let mut e = 0i128;
                for jj in subsets(n2, j) {
                    let mut prod = 1i128;
                    for &i in &jj {
                        prod = mul(prod, rs[s[i - 1] - 1])?;
                    }
                    e = add(e, prod)?;
                }
                values.push(mul(c, e)?);
            }
            from_roots(&values)
        }
        None => {
            let f = PjFormula::cached(n, n2, j)?;
            let e: Vec<i128> = (0..=n).map(|i| if i % 2 == 1 { -p[n - i] } else { p[n - i] }).collect();
            let big_n = f.degree();
            let mut coeffs = vec![0i128; big_n + 1];
            let mut minus_c_pow = 1i128;
            for k in 0..=big_n {
                let mut s = 0i128;
                for (parts, coef) in f.terms(k) {
                    let mut mon = *coef;
                    for &i in parts {
                        mon = mul(mon, e[i])?;
                    }
                    s = add(s, mon)?;
                }
                coeffs[big_n - k] = mul(s, minus_c_pow)?;
                minus_c_pow = mul(minus_c_pow, -c)?;
            }
            Ok(coeffs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{GaloisField, TruncatedLocalRing};

    fn ints(r: &GaloisField, c: &[i128]) -> Poly<crate::ffalg::FieldElement> {
        Poly::new(r, c.iter().map(|&x| r.from_int(x)).collect())
    }

    #[test]
    fn small_formulas() {
        // n = 2, n2 = 1, j = 1: P_1 = P.
        let f = PjFormula::new(2, 1, 1).unwrap();
        assert_eq!(f.terms(1), &[(vec![1], 1)]);
        assert_eq!(f.terms(2), &[(vec![2], 1)]);
        // n = 3, n2 = 2, j = 1: y_S = alpha_a + alpha_b, E_1(y) = 2 e_1.
        let f = PjFormula::new(3, 2, 1).unwrap();
        assert_eq!(f.terms(1), &[(vec![1], 2)]);
        // E_3(y) = (e1 - a)(e1 - b)(e1 - c) = e1 e2 - e3.
        assert_eq!(f.terms(3), &[(vec![2, 1], 1), (vec![3], -1)]);
    }

    #[test]
    fn cubic_example() {
        let k = GaloisField::prime(101).unwrap();
        let p = ints(&k, &[-6, 11, -6, 1]);
        let expected = ints(&k, &[-36, 36, -11, 1]);
        let one = k.one();
        let g = pj_polynomial(&p, 2, 2, &one, PjMode::Generic, &k).unwrap();
        assert_eq!(g, expected);
        let roots = [k.from_int(1), k.from_int(2), k.from_int(3)];
        let s = pj_polynomial(&p, 2, 2, &one, PjMode::Split(&roots), &k).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn integer_cubic() {
        let p = [-6, 11, -6, 1];
        let expected = vec![-36, 36, -11, 1];
        assert_eq!(pj_integer(&p, 2, 2, 1, None).unwrap(), expected);
        assert_eq!(pj_integer(&p, 2, 2, 1, Some(&[1, 2, 3])).unwrap(), expected);
        assert!(pj_integer(&p, 2, 2, 1, Some(&[1, 2, 4])).is_err());
        assert_eq!(pj_integer(&p, 2, 2, 2, None), Err(Error::NotUnit("q".into())));
        assert_eq!(pj_integer(&p, 1, 1, 5, None).unwrap(), p.to_vec());
    }

    #[test]
    fn non_unit_q_is_rejected() {
        let k = GaloisField::prime(7).unwrap();
        let r = TruncatedLocalRing::new(&k, 2).unwrap();
        let p = Poly::from_roots(&r, [r.from_int(1), r.from_int(2)].iter());
        assert!(matches!(pj_polynomial(&p, 2, 2, &r.from_int(7), PjMode::Generic, &r), Err(Error::NotUnit(_))));
        assert!(pj_polynomial(&p, 2, 1, &r.from_int(7), PjMode::Generic, &r).is_ok());
    }

    #[test]
    fn split_mode_checks_roots() {
        let k = GaloisField::prime(7).unwrap();
        let p = ints(&k, &[2, -3, 1]);
        let bad = [k.from_int(1), k.from_int(3)];
        assert!(pj_polynomial(&p, 1, 1, &k.one(), PjMode::Split(&bad), &k).is_err());
    }
}
