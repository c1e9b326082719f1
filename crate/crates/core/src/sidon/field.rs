//! Small finite fields `GF(p^d) = GF(p)[x]/(f)`, with `f` the least monic
//! irreducible polynomial of degree `d` under the ordering of coefficient
//! codes `c_0 + c_1 p + ⋯ + c_{d−1} p^{d−1}`.

use serde::Serialize;

/// Coefficients `c_0, …, c_{d−1}` of a residue modulo `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    pub coefficients: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    degree: usize,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u32>,
}

impl GaloisField {
    /// `GF(p^degree)` for a prime `p`. The caller guarantees primality.
    pub fn new(p: u32, degree: usize) -> Self {
        assert!(p >= 2 && degree >= 1);
        let modulus = least_irreducible(p, degree);
        Self { p, degree, modulus }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.degree as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coefficients: vec![0; self.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_code(1)
    }

    pub fn from_code(&self, mut code: usize) -> FieldElement {
        let p = self.p as usize;
        let coefficients = (0..self.degree)
            .map(|_| {
                let c = (code % p) as u32;
                code /= p;
                c
            })
            .collect();
        FieldElement { coefficients }
    }

    pub fn code(&self, x: &FieldElement) -> usize {
        x.coefficients.iter().rev().fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(|c| self.from_code(c))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let coefficients = x.coefficients.iter().zip(&y.coefficients).map(|(a, b)| (a + b) % self.p).collect();
        FieldElement { coefficients }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement { coefficients: x.coefficients.iter().map(|a| (self.p - a) % self.p).collect() }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let product = poly_mul(self.p, &x.coefficients, &y.coefficients);
        let mut r = poly_rem(self.p, &product, &self.modulus);
        r.resize(self.degree, 0);
        FieldElement { coefficients: r }
    }

    /// Scalar multiple by an element of the prime field.
    pub fn scale(&self, c: u32, x: &FieldElement) -> FieldElement {
        FieldElement { coefficients: x.coefficients.iter().map(|a| a * c % self.p).collect() }
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `x^{|F| − 2}`; `None` for zero.
    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        Some(self.pow(x, self.size() as u64 - 2))
    }

    /// True iff `x` generates the multiplicative group.
    pub fn is_primitive(&self, x: &FieldElement) -> bool {
        let order = self.size() as u64 - 1;
        !x.is_zero() && prime_factors(order).into_iter().all(|r| self.pow(x, order / r) != self.one())
    }

    /// The primitive element of least code.
    pub fn least_primitive(&self) -> FieldElement {
        self.elements().find(|x| self.is_primitive(x)).expect("multiplicative group is cyclic")
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((p, e))` when `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let [p] = prime_factors(q)[..] else {
        return None;
    };
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Some((p, e))
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_mul(p: u32, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    out
}

/// Remainder of `x` modulo a monic polynomial `m`.
fn poly_rem(p: u32, x: &[u32], m: &[u32]) -> Vec<u32> {
    let d = m.len() - 1;
    let mut r = x.to_vec();
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - d + i;
            r[idx] = (r[idx] + (p - c) * mi) % p;
        }
    }
    r.truncate(d.max(1));
    trim(r)
}

fn monic_with_code(p: u32, degree: usize, mut code: usize) -> Vec<u32> {
    let mut f: Vec<u32> = (0..degree)
        .map(|_| {
            let c = (code % p as usize) as u32;
            code /= p as usize;
            c
        })
        .collect();
    f.push(1);
    f
}

fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let degree = f.len() - 1;
    (1..=degree / 2).all(|m| {
        (0..(p as usize).pow(m as u32)).all(|code| {
            let g = monic_with_code(p, m, code);
            poly_rem(p, f, &g).iter().any(|&c| c != 0)
        })
    })
}

fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    (0..(p as usize).pow(degree as u32))
        .map(|code| monic_with_code(p, degree, code))
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}
