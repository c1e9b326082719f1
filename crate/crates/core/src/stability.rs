//! The k-order property and exact stability indices.
//!
//! `A` has the k-order property when there are `a, b ∈ G^k` with
//! `a_i + b_j ∈ A ⇔ i ≤ j`. The search below is complete: it returns a
//! witness whenever one exists. Translating `(a, b)` to `(a + t, b − t)`
//! preserves every sum, so `b_1` is pinned to the identity. Variables are
//! assigned in the order `a_1, b_2, a_2, b_3, …, b_k, a_k`, candidates in
//! increasing index order, and every constraint is checked as soon as both
//! of its endpoints are known. The first witness found is therefore the
//! lexicographically least one under that order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupSubset};

/// Vectors `a, b ∈ G^k` certifying the k-order property of some subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderWitness {
    pub a: Vec<GroupElement>,
    pub b: Vec<GroupElement>,
}

impl OrderWitness {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    fn from_indices(g: &FiniteAbelianGroup, a: &[usize], b: &[usize]) -> Self {
        Self {
            a: a.iter().map(|&i| g.element_at(i)).collect(),
            b: b.iter().map(|&i| g.element_at(i)).collect(),
        }
    }

    fn indices(&self, g: &FiniteAbelianGroup) -> Option<(Vec<usize>, Vec<usize>)> {
        let a = self.a.iter().map(|x| g.index_of(x).ok()).collect::<Option<Vec<_>>>()?;
        let b = self.b.iter().map(|x| g.index_of(x).ok()).collect::<Option<Vec<_>>>()?;
        Some((a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub subset: GroupSubset,
    /// Largest k with the k-order property; 0 only for the empty set.
    pub max_order: usize,
    /// `max_order + 1`: the least l such that the subset is l-stable.
    pub stability_index: usize,
    pub witness: Option<OrderWitness>,
}

/// True iff `w` is nonempty, well formed for `A`'s group, and
/// `a_i + b_j ∈ A ⇔ i ≤ j` for all `k²` pairs.
pub fn verify_witness(a_set: &GroupSubset, w: &OrderWitness) -> bool {
    let g = a_set.group();
    if w.a.is_empty() || w.a.len() != w.b.len() {
        return false;
    }
    let Some((a, b)) = w.indices(g) else {
        return false;
    };
    first_violation(a_set, &a, &b).is_none()
}

fn first_violation(a_set: &GroupSubset, a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    let g = a_set.group();
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            if a_set.contains(g.add_index(ai, bj)) != (i <= j) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `min(|A|, |G| − |A| + 1)`: the `a_i + b_k` are distinct members and the
/// `a_k + b_j` (`j < k`) are distinct non-members.
pub fn order_cap(a_set: &GroupSubset) -> usize {
    let n = a_set.group().order();
    a_set.len().min(n - a_set.len() + 1)
}

/// Groups at least this large fan the choice of `a_1` out over threads.
const PARALLEL_THRESHOLD: usize = 32;

struct Search<'s> {
    g: &'s FiniteAbelianGroup,
    set: &'s GroupSubset,
    k: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    used_a: Vec<bool>,
    used_b: Vec<bool>,
}

impl<'s> Search<'s> {
    fn new(set: &'s GroupSubset, k: usize) -> Self {
        let g = set.group();
        let n = g.order();
        let mut used_b = vec![false; n];
        used_b[0] = true;
        Self {
            g,
            set,
            k,
            a: Vec::with_capacity(k),
            b: vec![0],
            used_a: vec![false; n],
            used_b,
        }
    }

    /// Tries `a_i := x` where `i = self.a.len() + 1`, then continues.
    fn try_a(&mut self, x: usize) -> bool {
        if self.used_a[x] {
            return false;
        }
        let i = self.a.len();
        // b_0..b_i are assigned; a_i + b_j ∈ A iff j ≥ i.
        for (j, &bj) in self.b.iter().enumerate() {
            if self.set.contains(self.g.add_index(x, bj)) != (j == i) {
                return false;
            }
        }
        self.a.push(x);
        self.used_a[x] = true;
        if self.a.len() == self.k || self.assign_b() {
            return true;
        }
        self.used_a[x] = false;
        self.a.pop();
        false
    }

    fn assign_a(&mut self) -> bool {
        (0..self.g.order()).any(|x| self.try_a(x))
    }

    fn assign_b(&mut self) -> bool {
        for y in 0..self.g.order() {
            if self.used_b[y] {
                continue;
            }
            // Every assigned a_i has i < j, so a_i + b_j must lie in A.
            if !self.a.iter().all(|&ai| self.set.contains(self.g.add_index(ai, y))) {
                continue;
            }
            self.b.push(y);
            self.used_b[y] = true;
            if self.assign_a() {
                return true;
            }
            self.used_b[y] = false;
            self.b.pop();
        }
        false
    }
}

fn search(set: &GroupSubset, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if k == 0 || k > order_cap(set) {
        return None;
    }
    let g = set.group();
    let run = |x: usize| {
        let mut s = Search::new(set, k);
        s.try_a(x).then_some((s.a, s.b))
    };
    // a_1 + b_1 = a_1 must lie in A.
    if g.order() >= PARALLEL_THRESHOLD {
        set.members().par_iter().find_map_first(|&x| run(x))
    } else {
        set.members().iter().find_map(|&x| run(x))
    }
}

/// Decides the k-order property, returning the lexicographically least
/// witness (with `b_1 = 0`) when one exists.
pub fn find_order_witness(a_set: &GroupSubset, k: usize) -> Result<Option<OrderWitness>> {
    if k == 0 {
        return Err(Error::Precondition("order property needs k ≥ 1".into()));
    }
    Ok(search(a_set, k).map(|(a, b)| OrderWitness::from_indices(a_set.group(), &a, &b)))
}

pub fn has_order_property(a_set: &GroupSubset, k: usize) -> bool {
    k == 0 || search(a_set, k).is_some()
}

/// Exact stability index. Searches `k = 1, 2, …` and stops at the first k
/// without a witness; monotonicity of the order property makes that exact.
pub fn stability_index(a_set: &GroupSubset) -> StabilityReport {
    stability_index_up_to(a_set, None).0
}

/// As [`stability_index`], but searches no further than `max_k`. The flag is
/// set when a `max_k`-order witness exists and larger orders were not
/// examined, in which case the reported index is only a lower bound.
pub fn stability_index_up_to(a_set: &GroupSubset, max_k: Option<usize>) -> (StabilityReport, bool) {
    let cap = order_cap(a_set);
    let limit = max_k.map_or(cap, |m| m.min(cap));
    let mut best = None;
    for k in 1..=limit {
        match search(a_set, k) {
            Some(w) => best = Some(w),
            None => break,
        }
    }
    let max_order = best.as_ref().map_or(0, |(a, _)| a.len());
    let truncated = max_order == limit && limit < cap;
    let report = StabilityReport {
        subset: a_set.clone(),
        max_order,
        stability_index: max_order + 1,
        witness: best.map(|(a, b)| OrderWitness::from_indices(a_set.group(), &a, &b)),
    };
    (report, truncated)
}

/// An order-property witness over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerWitness {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl IntegerWitness {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Checks the biconditional against a finite set of integers.
    pub fn certifies(&self, set: &[i64]) -> bool {
        self.a.iter().enumerate().all(|(i, &ai)| {
            self.b.iter().enumerate().all(|(j, &bj)| set.contains(&(ai + bj)) == (i <= j))
        })
    }

    /// Reduces the witness modulo `n`, as a witness over `Z/n`.
    pub fn reduce(&self, g: &FiniteAbelianGroup) -> Result<OrderWitness> {
        let [n] = g.moduli()[..] else {
            return Err(Error::Precondition("integer witnesses reduce into cyclic groups only".into()));
        };
        let n = n as i64;
        let to = |v: &[i64]| v.iter().map(|&x| g.element_at(x.rem_euclid(n) as usize)).collect();
        Ok(OrderWitness { a: to(&self.a), b: to(&self.b) })
    }
}

/// The arithmetic progression `{x, x + d, …, x + (r − 1)d}`.
pub fn arithmetic_progression(x: i64, d: i64, r: usize) -> Vec<i64> {
    (0..r as i64).map(|i| x + i * d).collect()
}

/// `a_i = x − i·d`, `b_i = i·d`: certifies the r-order property of the
/// progression of length `r`, since `a_i + b_j = x + (j − i)d`.
pub fn ap_witness(x: i64, d: i64, r: usize) -> Result<IntegerWitness> {
    if d == 0 {
        return Err(Error::Precondition("progression step must be nonzero".into()));
    }
    if r == 0 {
        return Err(Error::Precondition("progression length must be at least 1".into()));
    }
    let idx = 1..=r as i64;
    Ok(IntegerWitness { a: idx.clone().map(|i| x - i * d).collect(), b: idx.map(|i| i * d).collect() })
}

/// Given an `(N + 1)`-order witness for `⋃ parts`, finds some `q` and a
/// `targets[q]`-order witness for `parts[q]`.
///
/// Edge `ij` (`1 ≤ i < j ≤ N`) gets the least `q` with `a_{i+1} + b_j ∈ parts[q]`;
/// a monochromatic clique `s_1 < ⋯ < s_{t+1}` in colour `q` (with `t = targets[q]`)
/// yields `a'_i = a_{s_i + 1}`, `b'_i = b_{s_{i+1}}`. Colours are tried in
/// increasing order and cliques are found by exhaustive search, so the call
/// fails only if no colour has a large enough clique, which cannot happen
/// once `N ≥ r(targets[0] + 1, …, targets[m−1] + 1)`.
pub fn extract_subwitness(
    parts: &[GroupSubset],
    targets: &[usize],
    w: &OrderWitness,
) -> Result<(usize, OrderWitness)> {
    if parts.is_empty() || parts.len() != targets.len() {
        return Err(Error::Precondition("need one target per part, and at least one part".into()));
    }
    if targets.contains(&0) {
        return Err(Error::Precondition("targets must be at least 1".into()));
    }
    let mut union = parts[0].clone();
    for p in &parts[1..] {
        union = union.union(p)?;
    }
    let g = union.group();
    let (a, b) = w.indices(g).ok_or_else(|| Error::InvalidWitness("elements outside the group".into()))?;
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidWitness("a and b must have the same nonzero length".into()));
    }
    if let Some((i, j)) = first_violation(&union, &a, &b) {
        return Err(Error::InvalidWitness(format!("pair ({}, {}) breaks the biconditional", i + 1, j + 1)));
    }

    // Vertices 0..n stand for 1..=N; colour[i][j] for i < j.
    let n = a.len() - 1;
    let mut colour = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = g.add_index(a[i + 1], b[j]);
            colour[i][j] = parts.iter().position(|p| p.contains(s)).expect("sum lies in the union");
        }
    }

    for (q, &t) in targets.iter().enumerate() {
        let mut clique = Vec::with_capacity(t + 1);
        if find_clique(&colour, q, t + 1, &mut clique) {
            let a2: Vec<usize> = (0..t).map(|i| a[clique[i] + 1]).collect();
            let b2: Vec<usize> = (0..t).map(|i| b[clique[i + 1]]).collect();
            debug_assert!(first_violation(&parts[q], &a2, &b2).is_none());
            return Ok((q, OrderWitness::from_indices(g, &a2, &b2)));
        }
    }
    Err(Error::NoMonochromaticClique { vertices: n })
}

fn find_clique(colour: &[Vec<usize>], q: usize, size: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == size {
        return true;
    }
    let start = clique.last().map_or(0, |&v| v + 1);
    for v in start..colour.len() {
        if clique.iter().all(|&u| colour[u][v] == q) {
            clique.push(v);
            if find_clique(colour, q, size, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> GroupSubset {
        GroupSubset::new(&z(n), xs.iter().copied()).unwrap()
    }

    /// Enumerates all `(a, b) ∈ G^k × G^k` with no normalization.
    fn brute_force_has_order(s: &GroupSubset, k: usize) -> bool {
        let n = s.group().order();
        let total = n.pow(2 * k as u32);
        (0..total).any(|mut code| {
            let mut v = Vec::with_capacity(2 * k);
            for _ in 0..2 * k {
                v.push(code % n);
                code /= n;
            }
            first_violation(s, &v[..k], &v[k..]).is_none()
        })
    }

    #[test]
    fn witness_verification() {
        let g = z(9);
        let a_set = set(9, &[0, 1, 2]);
        let w = ap_witness(0, 1, 3).unwrap().reduce(&g).unwrap();
        // a = (−1, −2, −3), b = (1, 2, 3); sums j − i.
        assert!(verify_witness(&a_set, &w));

        let single = OrderWitness { a: vec![g.element_at(2)], b: vec![g.identity()] };
        assert!(verify_witness(&a_set, &single));
        assert!(!verify_witness(&GroupSubset::empty(&g), &single));

        let mut flipped = w.clone();
        flipped.b[2] = g.element_at(4);
        assert!(!verify_witness(&a_set, &flipped));
    }

    #[test]
    fn lemma_on_empty_set_and_cosets() {
        let g = z(12);
        let empty = GroupSubset::empty(&g);
        assert_eq!(find_order_witness(&empty, 1).unwrap(), None);
        let coset = set(12, &[1, 5, 9]);
        assert!(find_order_witness(&coset, 1).unwrap().is_some());
        assert_eq!(find_order_witness(&coset, 2).unwrap(), None);
        assert!(find_order_witness(&coset, 0).is_err());
    }

    #[test]
    fn sidon_set_in_z7() {
        let a_set = set(7, &[1, 2, 4]);
        assert!(!brute_force_has_order(&a_set, 3));
        assert!(brute_force_has_order(&a_set, 2));
        assert_eq!(find_order_witness(&a_set, 3).unwrap(), None);
        let w = find_order_witness(&a_set, 2).unwrap().unwrap();
        assert!(verify_witness(&a_set, &w));
    }

    #[test]
    fn search_agrees_with_brute_force() {
        for n in 2..=5 {
            let g = z(n);
            for bits in 0..1u64 << n {
                let s = GroupSubset::from_bits(&g, bits);
                for k in 1..=2 {
                    assert_eq!(has_order_property(&s, k), brute_force_has_order(&s, k), "{s} in Z/{n}, k={k}");
                }
            }
        }
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        for bits in 0..16 {
            let s = GroupSubset::from_bits(&g, bits);
            for k in 1..=3 {
                assert_eq!(has_order_property(&s, k), brute_force_has_order(&s, k));
            }
        }
    }

    #[test]
    fn stability_index_examples() {
        let g = z(10);
        let r = stability_index(&GroupSubset::empty(&g));
        assert_eq!((r.max_order, r.stability_index, r.witness), (0, 1, None));

        // {0,2,4,6,8} with the identity removed.
        let s = set(10, &[2, 4, 6, 8]);
        assert!(brute_force_has_order(&s, 2));
        let r = stability_index(&s);
        assert_eq!(r.stability_index, 3);
        assert!(verify_witness(&s, r.witness.as_ref().unwrap()));

        let r = stability_index(&GroupSubset::full(&g));
        assert_eq!(r.stability_index, 2);
    }

    #[test]
    fn returned_witness_is_lexicographically_first() {
        let s = set(7, &[1, 2, 4]);
        let w = find_order_witness(&s, 2).unwrap().unwrap();
        let g = s.group();
        let idx: Vec<usize> = [&w.a[0], &w.b[1], &w.a[1]].iter().map(|x| g.index_of(x).unwrap()).collect();
        assert_eq!(w.b[0], g.identity());
        // Oracle: scan (a1, b2, a2) in lexicographic order with b1 = 0.
        let first = (0..7usize)
            .flat_map(|a1| (0..7usize).flat_map(move |b2| (0..7usize).map(move |a2| [a1, b2, a2])))
            .find(|v| first_violation(&s, &[v[0], v[2]], &[0, v[1]]).is_none())
            .unwrap();
        assert_eq!(idx, first);
    }

    #[test]
    fn ap_witness_construction() {
        let w = ap_witness(0, 1, 3).unwrap();
        assert_eq!(w.a, vec![-1, -2, -3]);
        assert_eq!(w.b, vec![1, 2, 3]);
        assert!(w.certifies(&arithmetic_progression(0, 1, 3)));
        assert!(ap_witness(5, 0, 3).is_err());
        assert!(ap_witness(5, 1, 0).is_err());

        let w = ap_witness(1, 3, 4).unwrap();
        let ap = arithmetic_progression(1, 3, 4);
        assert_eq!(ap, vec![1, 4, 7, 10]);
        assert!(w.certifies(&ap));
        for n in [40, 41, 64] {
            let g = z(n);
            let s = GroupSubset::new(&g, ap.iter().map(|&x| x as usize)).unwrap();
            assert!(verify_witness(&s, &w.reduce(&g).unwrap()));
        }
    }

    #[test]
    fn extraction_single_colour() {
        let g = z(30);
        let ap = set(30, &[3, 4, 5, 6, 7, 8]);
        let k = 4;
        let w = find_order_witness(&ap, k + 2).unwrap().unwrap();
        let (q, w2) = extract_subwitness(std::slice::from_ref(&ap), &[k], &w).unwrap();
        assert_eq!(q, 0);
        assert_eq!(w2.k(), k);
        assert!(verify_witness(&ap, &w2));
        let _ = g;
    }

    #[test]
    fn extraction_rejects_bad_witness() {
        let ap = set(30, &[3, 4, 5, 6, 7, 8]);
        let mut w = find_order_witness(&ap, 6).unwrap().unwrap();
        w.b[5] = ap.group().element_at(29);
        assert!(matches!(extract_subwitness(std::slice::from_ref(&ap), &[4], &w), Err(Error::InvalidWitness(_))));
        let w = find_order_witness(&ap, 3).unwrap().unwrap();
        assert!(matches!(extract_subwitness(&[ap], &[4], &w), Err(Error::NoMonochromaticClique { .. })));
    }
}
