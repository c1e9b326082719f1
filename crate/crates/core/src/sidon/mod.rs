//! Sidon sets and Singer perfect difference sets.
//!
//! A set is Sidon when `x − y = z − w` with all four in the set forces
//! `x = y` or `x = z`, i.e. every nonzero ordered difference occurs at most
//! once. In groups with 2-torsion this is stricter than the unordered
//! version: `{0, 1} ⊂ Z/2` is not Sidon.

pub mod field;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSubset;
use field::{prime_power, GaloisField};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SidonVerdict<T> {
    pub is_sidon: bool,
    /// `(x, y, z, w)` with `x − y = z − w`, `x ≠ y` and `x ≠ z`.
    pub violation: Option<[T; 4]>,
}

/// Sidon test on a subset of a finite group. Violations are reported as
/// element indices.
pub fn is_sidon(a: &GroupSubset) -> SidonVerdict<usize> {
    let g = a.group();
    let mut seen = vec![None; g.order()];
    for &x in a.members() {
        for &y in a.members() {
            if x == y {
                continue;
            }
            let d = g.sub_index(x, y);
            if let Some((x0, y0)) = seen[d] {
                return SidonVerdict { is_sidon: false, violation: Some([x0, y0, x, y]) };
            }
            seen[d] = Some((x, y));
        }
    }
    SidonVerdict { is_sidon: true, violation: None }
}

/// Sidon test on a finite set of integers, viewed inside `Z`.
pub fn is_sidon_integers(set: &[i64]) -> SidonVerdict<i64> {
    let distinct: BTreeSet<i64> = set.iter().copied().collect();
    let mut seen: HashMap<i64, (i64, i64)> = HashMap::new();
    for &x in &distinct {
        for &y in &distinct {
            if x == y {
                continue;
            }
            if let Some(&(x0, y0)) = seen.get(&(x - y)) {
                return SidonVerdict { is_sidon: false, violation: Some([x0, y0, x, y]) };
            }
            seen.insert(x - y, (x, y));
        }
    }
    SidonVerdict { is_sidon: true, violation: None }
}

/// True iff every `d ∈ {1, …, n − 1}` is `x − y mod n` for exactly one
/// ordered pair from `set`. Repeated residues make the answer false.
pub fn is_perfect_difference_set(set: &[u64], n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut counts = vec![0u32; n as usize];
    for (i, &x) in set.iter().enumerate() {
        for (j, &y) in set.iter().enumerate() {
            if i != j {
                counts[((x % n + n - y % n) % n) as usize] += 1;
            }
        }
    }
    counts[0] == 0 && counts[1..].iter().all(|&c| c == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSetReport {
    pub q: u64,
    /// `q² + q + 1`.
    pub modulus: u64,
    pub set: Vec<u64>,
    /// Outcome of [`is_perfect_difference_set`] on the constructed set.
    pub lambda_check: bool,
}

/// Largest `q` accepted by [`singer_difference_set`].
pub const MAX_SINGER_Q: u64 = 32;

/// Singer's construction: with `g` a generator of `GF(q³)^×`, the exponents
/// `i mod (q² + q + 1)` for which `g^i` lies in the `GF(q)`-span of `{1, g}`.
pub fn singer_difference_set(q: u64) -> Result<DifferenceSetReport> {
    let (p, e) = prime_power(q).ok_or(Error::UnsupportedPrimePower(q))?;
    if q > MAX_SINGER_Q {
        return Err(Error::UnsupportedPrimePower(q));
    }
    let field = GaloisField::new(p as u32, 3 * e as usize);
    let g = field.least_primitive();
    let order = field.size() - 1;
    let n = q * q + q + 1;

    let mut log = vec![usize::MAX; field.size()];
    let mut power = field.one();
    for i in 0..order {
        log[field.code(&power)] = i;
        power = field.mul(&power, &g);
    }
    // GF(q) inside GF(q³): zero and the powers of g^n.
    let g_n = field.pow(&g, n);
    let mut subfield = vec![field.zero()];
    let mut x = field.one();
    for _ in 0..q - 1 {
        subfield.push(x.clone());
        x = field.mul(&x, &g_n);
    }

    let mut residues = BTreeSet::new();
    for a in &subfield {
        for b in &subfield {
            let v = field.add(a, &field.mul(b, &g));
            if !v.is_zero() {
                residues.insert(log[field.code(&v)] as u64 % n);
            }
        }
    }
    let set: Vec<u64> = residues.into_iter().collect();
    let lambda_check = is_perfect_difference_set(&set, n);
    Ok(DifferenceSetReport { q, modulus: n, set, lambda_check })
}
