//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are addressed either by residue vectors or by a mixed-radix
//! index in `[0, order)`, with the first factor most significant, so that
//! index order coincides with lexicographic order of residue tuples. The
//! dual group is identified with the group itself: the character with
//! exponent vector `c` sends `x` to `exp(2πi Σ c_j x_j / n_j)`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    moduli: Vec<usize>,
    order: usize,
    /// `strides[i]` is the index weight of coordinate `i`.
    strides: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Parse("a group needs at least one factor".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::Parse(format!("cyclic factor Z/{bad} must have order at least 2")));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Parse("group order overflows".into()))?;
        let mut strides = vec![1; moduli.len()];
        for i in (0..moduli.len() - 1).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(Self { moduli, order, strides })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Parses `Z/12` or `Z/2xZ/3xZ/4` (case-insensitive).
    pub fn parse(spec: &str) -> Result<Self> {
        let lower = spec.trim().to_ascii_lowercase();
        let moduli = lower
            .split('x')
            .map(|factor| {
                let factor = factor.trim();
                let n = factor
                    .strip_prefix("z/")
                    .ok_or_else(|| Error::Parse(format!("bad cyclic factor {factor:?} in {spec:?}")))?;
                n.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad modulus {n:?} in {spec:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.rank()] }
    }

    pub fn element(&self, residues: Vec<usize>) -> Result<GroupElement> {
        let x = GroupElement { residues };
        self.check(&x)?;
        Ok(x)
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.residues.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: x.residues.len() });
        }
        if x.residues.iter().zip(&self.moduli).any(|(&r, &n)| r >= n) {
            return Err(Error::InvalidElement(format!("{x}")));
        }
        Ok(())
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!(index < self.order);
        let residues = self
            .strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &n)| (index / s) % n)
            .collect();
        GroupElement { residues }
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        Ok(x.residues.iter().zip(&self.strides).map(|(&r, &s)| r * s).sum())
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let residues = x
            .residues
            .iter()
            .zip(&y.residues)
            .zip(&self.moduli)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let residues = x.residues.iter().zip(&self.moduli).map(|(&a, &n)| (n - a) % n).collect();
        Ok(GroupElement { residues })
    }

    /// Sum of two elements given by index.
    #[inline]
    pub fn add_index(&self, x: usize, y: usize) -> usize {
        if let [n] = self.moduli[..] {
            let s = x + y;
            return if s >= n { s - n } else { s };
        }
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.moduli) {
            let r = (x / s) % n + (y / s) % n;
            out += if r >= n { r - n } else { r } * s;
        }
        out
    }

    #[inline]
    pub fn neg_index(&self, x: usize) -> usize {
        if let [n] = self.moduli[..] {
            return (n - x) % n;
        }
        self.strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &n)| ((n - (x / s) % n) % n) * s)
            .sum()
    }

    #[inline]
    pub fn sub_index(&self, x: usize, y: usize) -> usize {
        self.add_index(x, self.neg_index(y))
    }

    /// `u·x` for an integer multiplier.
    pub fn scale_index(&self, u: usize, x: usize) -> usize {
        self.strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &n)| (((x / s) % n) * (u % n) % n) * s)
            .sum()
    }

    pub fn character(&self, exponents: Vec<usize>) -> Result<Character> {
        self.check(&GroupElement { residues: exponents.clone() })?;
        Ok(Character { exponents })
    }

    pub fn character_at(&self, index: usize) -> Character {
        Character { exponents: self.element_at(index).residues }
    }

    fn phase_denominator(&self) -> usize {
        self.moduli.iter().fold(1, |l, &n| lcm(l, n))
    }

    /// Numerator `t` of the phase `χ_c(x) = exp(2πi t / L)`, `L` the lcm of the moduli.
    fn phase(&self, lcm: usize, c: &[usize], x: &[usize]) -> usize {
        c.iter()
            .zip(x)
            .zip(&self.moduli)
            .map(|((&cj, &xj), &n)| (cj * xj % n) * (lcm / n))
            .sum::<usize>()
            % lcm
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z/{n}")?;
        }
        Ok(())
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub residues: Vec<usize>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [r] = self.residues[..] {
            return write!(f, "{r}");
        }
        f.write_str("(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Componentwise sum of two elements.
pub fn element_add(g: &FiniteAbelianGroup, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    g.add(x, y)
}

/// A subset `A ⊆ G`, stored as a sorted list of element indices plus a
/// membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: FiniteAbelianGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl GroupSubset {
    pub fn new(group: &FiniteAbelianGroup, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; group.order()];
        for i in indices {
            if i >= group.order() {
                return Err(Error::InvalidElement(format!("index {i} in {group}")));
            }
            mask[i] = true;
        }
        Ok(Self::from_mask(group, mask))
    }

    fn from_mask(group: &FiniteAbelianGroup, mask: Vec<bool>) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Self { group: group.clone(), members, mask }
    }

    pub fn from_elements(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> Result<Self> {
        let indices = elements.iter().map(|x| group.index_of(x)).collect::<Result<Vec<_>>>()?;
        Self::new(group, indices)
    }

    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        Self::from_mask(group, vec![false; group.order()])
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        Self::from_mask(group, vec![true; group.order()])
    }

    /// Subset whose members are the set bits of `bits` (bit `i` ↔ index `i`).
    pub fn from_bits(group: &FiniteAbelianGroup, bits: u64) -> Self {
        debug_assert!(group.order() <= 64);
        Self::from_mask(group, (0..group.order()).map(|i| bits >> i & 1 == 1).collect())
    }

    /// Parses `1,2,4` (element indices) or `(0,1),(1,2)` (residue tuples).
    /// Surrounding braces are optional; an empty literal is the empty set.
    pub fn parse(group: &FiniteAbelianGroup, literal: &str) -> Result<Self> {
        let body = literal.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Self::empty(group));
        }
        if body.starts_with('(') {
            let mut elements = Vec::new();
            let mut rest = body;
            while !rest.is_empty() {
                let open = rest
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("expected '(' in {literal:?}")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {literal:?}")))?;
                let residues = open[..close]
                    .split(',')
                    .map(|r| r.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad residue {r:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                elements.push(group.element(residues)?);
                rest = open[close + 1..].trim_start();
                rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
            }
            return Self::from_elements(group, &elements);
        }
        let indices = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element index {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, indices)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members.iter().map(|&i| self.group.element_at(i)).collect()
    }

    pub fn translate(&self, t: usize) -> Self {
        let g = &self.group;
        Self::new(g, self.members.iter().map(|&x| g.add_index(x, t))).expect("translate stays in the group")
    }

    pub fn negate(&self) -> Self {
        let g = &self.group;
        Self::new(g, self.members.iter().map(|&x| g.neg_index(x))).expect("negation stays in the group")
    }

    /// Image under `x ↦ u·x`.
    pub fn scale(&self, u: usize) -> Self {
        let g = &self.group;
        Self::new(g, self.members.iter().map(|&x| g.scale_index(u, x))).expect("scaling stays in the group")
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(&self.group, self.mask.iter().map(|m| !m).collect())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self::from_mask(&self.group, self.mask.iter().zip(&other.mask).map(|(a, b)| *a || *b).collect()))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self::from_mask(&self.group, self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect()))
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// A character of `G`, indexed by an exponent vector in the same modulus lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub exponents: Vec<usize>,
}

impl Character {
    pub fn eval(&self, g: &FiniteAbelianGroup, x: &GroupElement) -> Result<Complex64> {
        g.check(x)?;
        let lcm = g.phase_denominator();
        let t = g.phase(lcm, &self.exponents, &x.residues);
        Ok(Complex64::from_polar(1.0, TAU * t as f64 / lcm as f64))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }
}

/// Roots of unity `exp(2πi t/L)` for the phase denominator `L` of a group.
struct PhaseTable {
    lcm: usize,
    twiddles: Vec<Complex64>,
}

impl PhaseTable {
    fn new(g: &FiniteAbelianGroup) -> Self {
        let lcm = g.phase_denominator();
        let twiddles = (0..lcm).map(|t| Complex64::from_polar(1.0, TAU * t as f64 / lcm as f64)).collect();
        Self { lcm, twiddles }
    }
}

/// `Σ_{x∈A} χ(x)`.
pub fn character_sum(a: &GroupSubset, chi: &Character) -> Result<Complex64> {
    let g = a.group();
    g.check(&GroupElement { residues: chi.exponents.clone() })?;
    let table = PhaseTable::new(g);
    Ok(sum_with_table(g, &table, &chi.exponents, a))
}

fn sum_with_table(g: &FiniteAbelianGroup, table: &PhaseTable, c: &[usize], a: &GroupSubset) -> Complex64 {
    a.members()
        .iter()
        .map(|&x| table.twiddles[g.phase(table.lcm, c, &g.element_at(x).residues)])
        .sum()
}

/// `|Σ_{x∈A} χ(x)|` for every character, in character-index order.
pub fn dft_magnitudes(a: &GroupSubset) -> Vec<f64> {
    let g = a.group();
    let table = PhaseTable::new(g);
    let residues: Vec<Vec<usize>> = a.members().iter().map(|&x| g.element_at(x).residues).collect();
    (0..g.order())
        .map(|ci| {
            let c = g.element_at(ci).residues;
            residues
                .iter()
                .map(|x| table.twiddles[g.phase(table.lcm, &c, x)])
                .sum::<Complex64>()
                .norm()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetStructure {
    pub subgroup: GroupSubset,
    pub representative: GroupElement,
}

/// Recognizes `A = a + H`. Succeeds iff `A` is nonempty and `A + A − A ⊆ A`,
/// which for finite `A` is the same as `H = A − min A` being closed under
/// addition. The representative is the least member of `A`.
pub fn coset_test(a: &GroupSubset) -> Option<CosetStructure> {
    let &rep = a.members().first()?;
    let g = a.group();
    let h = GroupSubset::new(g, a.members().iter().map(|&x| g.sub_index(x, rep))).ok()?;
    for &x in h.members() {
        for &y in h.members() {
            if !h.contains(g.add_index(x, y)) {
                return None;
            }
        }
    }
    Some(CosetStructure { subgroup: h, representative: g.element_at(rep) })
}
