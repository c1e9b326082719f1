//! Exact multicolour Ramsey bounds and the stability chain for sets with a
//! `(k, s)`-representation.
//!
//! Multinomial coefficients are assembled from their prime factorisation
//! (Legendre's formula), so no division of huge integers is needed and every
//! value is exact.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `(s + 1)^k` accepted by [`representation_stability_bound`].
pub const MAX_CELLS: u64 = 1 << 16;

/// Largest multinomial top `k₁ + ⋯ + k_m` evaluated exactly.
pub const MAX_FACTORIAL: u64 = 1 << 24;

/// Largest exponent for which `2^E` is materialised.
pub const MAX_MATERIALISED_EXPONENT: u64 = 1 << 20;

/// An exact bound, or only its derivation when it is too large to hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigBound {
    #[serde(serialize_with = "serialize_opt_big")]
    pub value: Option<BigUint>,
    pub expression: String,
}

fn serialize_opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

impl BigBound {
    fn exact(value: BigUint, expression: String) -> Self {
        Self { value: Some(value), expression }
    }

    /// Bit length of the value, if materialised.
    pub fn bits(&self) -> Option<u64> {
        self.value.as_ref().map(BigUint::bits)
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Exponent of `p` in `n!`.
fn legendre(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n > 0 {
        n /= p;
        e += n;
    }
    e
}

fn product_tree(mut factors: Vec<BigUint>) -> BigUint {
    if factors.is_empty() {
        return BigUint::one();
    }
    while factors.len() > 1 {
        factors = factors
            .par_chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    factors.pop().expect("non-empty")
}

/// `(k₁ + ⋯ + k_m)! / (k₁! ⋯ k_m!)`, exactly.
pub fn multinomial(ks: &[u64]) -> Result<BigUint> {
    let n = ks.iter().try_fold(0u64, |acc, &k| acc.checked_add(k));
    let n = match n {
        Some(n) if n <= MAX_FACTORIAL => n,
        _ => {
            return Err(Error::GuardExceeded { expression: multinomial_expression(ks) });
        }
    };
    let factors = primes_up_to(n)
        .into_par_iter()
        .filter_map(|p| {
            let e = legendre(n, p) - ks.iter().map(|&k| legendre(k, p)).sum::<u64>();
            (e > 0).then(|| BigUint::from(p).pow(e as u32))
        })
        .collect();
    Ok(product_tree(factors))
}

fn multinomial_expression(ks: &[u64]) -> String {
    let total: u128 = ks.iter().map(|&k| k as u128).sum();
    // Group equal parts as k!^c, in order of first appearance.
    let mut groups: Vec<(u64, usize)> = Vec::new();
    for &k in ks {
        match groups.iter_mut().find(|(v, _)| *v == k) {
            Some(g) => g.1 += 1,
            None => groups.push((k, 1)),
        }
    }
    let denom: Vec<String> =
        groups.iter().map(|&(k, c)| if c == 1 { format!("{k}!") } else { format!("{k}!^{c}") }).collect();
    format!("{total}!/({})", denom.join("*"))
}

/// Upper bound for `r(k₁ + 1, …, k_m + 1)` by the multinomial coefficient.
/// For a single colour `r(k + 1) = k + 1` is returned instead, since the
/// formula degenerates to 1 there.
pub fn multinomial_ramsey_bound(ks: &[u64]) -> Result<BigBound> {
    if ks.is_empty() {
        return Err(Error::Precondition("at least one colour is required".into()));
    }
    if ks.contains(&0) {
        return Err(Error::Precondition("clique sizes must be at least 1".into()));
    }
    if let [k] = ks {
        return Ok(BigBound::exact(BigUint::from(*k) + 1u32, format!("{k}+1")));
    }
    Ok(BigBound::exact(multinomial(ks)?, multinomial_expression(ks)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationBound {
    pub k: u64,
    pub s: u64,
    /// `r(s+3, …, s+3) + 2` with `k` colours.
    pub inner: BigBound,
    /// `r(inner + 1, …)` with `(s+1)^k` colours, plus 2.
    pub exact_chain: BigBound,
    /// `2^(k^(7ks))`.
    pub simplified: BigBound,
    /// Whether `exact_chain ≤ simplified` holds, decided exactly.
    pub chain_within_simplified: bool,
    /// Set for `k = 1`, where the simplified form is not an upper bound.
    pub flagged: bool,
}

/// `k^(7ks)`, or `None` when it does not fit in 128 bits.
fn simplified_exponent(k: u64, s: u64) -> Option<u128> {
    let e = 7u32.checked_mul(k.try_into().ok()?)?.checked_mul(s.try_into().ok()?)?;
    (k as u128).checked_pow(e)
}

/// The exact chain `r(inner, …, inner) + 2` over `(s+1)^k` colours with
/// `inner = r(s+3, …, s+3) + 2` over `k` colours, and the simplified
/// `2^(k^(7ks))`.
pub fn representation_stability_bound(k: u64, s: u64) -> Result<RepresentationBound> {
    if k == 0 || s == 0 {
        return Err(Error::Precondition("k and s must be at least 1".into()));
    }
    let cells = (s + 1).checked_pow(k.try_into().unwrap_or(u32::MAX)).filter(|&c| c <= MAX_CELLS);
    let Some(cells) = cells else {
        return Err(Error::GuardExceeded { expression: format!("r(({s}+1)^{k} colours of r({k} colours of {})+2)+2", s + 3) });
    };

    let inner_parts = vec![s + 2; k as usize];
    let inner_r = multinomial_ramsey_bound(&inner_parts)?;
    let inner_value = inner_r.value.clone().expect("exact") + 2u32;
    let inner = BigBound::exact(inner_value.clone(), format!("{} + 2", inner_r.expression));

    let part = (&inner_value - 1u32).to_u64().filter(|&p| p.saturating_mul(cells) <= MAX_FACTORIAL);
    let Some(part) = part else {
        return Err(Error::GuardExceeded {
            expression: format!("{cells} colours of ({}) - 1", inner.expression),
        });
    };
    let outer_parts = vec![part; cells as usize];
    let outer_r = multinomial_ramsey_bound(&outer_parts)?;
    let chain_value = outer_r.value.clone().expect("exact") + 2u32;
    let exact_chain = BigBound::exact(chain_value.clone(), format!("{} + 2", outer_r.expression));

    let exponent = simplified_exponent(k, s);
    let simplified = match exponent {
        Some(e) if e <= MAX_MATERIALISED_EXPONENT as u128 => {
            BigBound::exact(BigUint::one() << e as u64, format!("2^({k}^{})", 7 * k * s))
        }
        _ => BigBound { value: None, expression: format!("2^({k}^{})", 7 * k * s) },
    };
    // chain ≤ 2^E iff bits(chain) ≤ E, or chain = 2^E exactly.
    let bits = chain_value.bits() as u128;
    let chain_within_simplified = match exponent {
        None => true,
        Some(e) => bits <= e || (bits == e + 1 && chain_value.count_ones() == 1),
    };
    Ok(RepresentationBound { k, s, inner, exact_chain, simplified, chain_within_simplified, flagged: k == 1 })
}
