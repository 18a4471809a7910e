//! Hilbert-series bookkeeping and degreewise subalgebra spans.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{span_basis, Matrix};
use crate::poly::{monomials_of_degree, Exponent, MultiPoly};

/// Coefficients of `1 / (1 - t^step)^n` up to degree `max_degree`.
fn inverse_power_series(step: u32, n: usize, max_degree: u32) -> Vec<i64> {
    let mut out = vec![0i64; max_degree as usize + 1];
    let mut k = 0u64;
    while (k * step as u64) <= max_degree as u64 {
        // binom(k + n - 1, n - 1)
        let mut c: i64 = 1;
        for i in 1..n as u64 {
            c = c * (k + i) as i64 / i as i64;
        }
        out[(k * step as u64) as usize] = c;
        k += 1;
    }
    out
}

fn truncated_product(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Expands `numerator / (1 - t^p)^n` up to `max_degree`.
pub fn expand_over_frobenius(numerator: &[i64], p: u32, n: usize, max_degree: u32) -> Vec<i64> {
    truncated_product(numerator, &inverse_power_series(p, n, max_degree), max_degree as usize + 1)
}

/// `H(t) * (1 - t^p)^n`, truncated at the length of `hilbert`, with
/// trailing zeros removed.
pub fn numerator_over_frobenius(hilbert: &[u64], p: u32, n: usize) -> Vec<i64> {
    let len = hilbert.len();
    let mut factor = vec![0i64; len];
    if len > 0 {
        factor[0] = 1;
    }
    // (1 - t^p)^n
    for _ in 0..n {
        let prev = factor.clone();
        for d in p as usize..len {
            factor[d] -= prev[d - p as usize];
        }
    }
    let h: Vec<i64> = hilbert.iter().map(|&x| x as i64).collect();
    let mut out = truncated_product(&h, &factor, len);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Palindromic test on a numerator, ignoring leading and trailing zeros.
/// Only conclusive when the truncation degree exceeds the numerator's true
/// degree.
pub fn is_palindromic(numerator: &[i64]) -> bool {
    let start = numerator.iter().position(|&c| c != 0);
    let end = numerator.iter().rposition(|&c| c != 0);
    match (start, end) {
        (Some(s), Some(e)) => {
            let core = &numerator[s..=e];
            core.iter().eq(core.iter().rev())
        }
        _ => true,
    }
}

/// Result of the palindromic numerator check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PalindromeCheck {
    pub numerator: Vec<i64>,
    pub palindromic: bool,
    /// The numerator ended strictly below the truncation degree, so the
    /// reading is not distorted by truncation.
    pub conclusive: bool,
}

pub fn palindrome_check(hilbert: &[u64], p: u32, n: usize) -> PalindromeCheck {
    let numerator = numerator_over_frobenius(hilbert, p, n);
    let conclusive = numerator.len() + (p as usize) < hilbert.len();
    PalindromeCheck { palindromic: is_palindromic(&numerator), numerator, conclusive }
}

/// Greedy factorisation `H(t) = prod 1/(1 - t^{d_i})` up to the truncation
/// degree. Returns the generator degrees when the series matches a
/// polynomial ring, `None` otherwise.
pub fn polynomial_ring_degrees(hilbert: &[u64]) -> Option<Vec<u32>> {
    let len = hilbert.len();
    if len == 0 || hilbert[0] != 1 {
        return None;
    }
    let mut cur: Vec<i64> = hilbert.iter().map(|&x| x as i64).collect();
    let mut degrees = Vec::new();
    loop {
        let Some(d) = (1..len).find(|&d| cur[d] != 0) else {
            return Some(degrees);
        };
        if cur[d] < 0 {
            return None;
        }
        // multiply by (1 - t^d)
        for i in (d..len).rev() {
            cur[i] -= cur[i - d];
        }
        degrees.push(d as u32);
    }
}

/// Rank of P over its center, `p^n / |B|` or `p^n / N(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank {
    pub numerator: u64,
    pub denominator: u64,
    /// False when the value rests on an unverified freeness hypothesis or
    /// is non-integral.
    pub exact: bool,
}

impl Rank {
    pub fn new(numerator: u64, denominator: u64, hypothesis_verified: bool) -> Self {
        let g = gcd(numerator, denominator.max(1));
        let (a, b) = (numerator / g, denominator.max(1) / g);
        Self { numerator: a, denominator: b, exact: hypothesis_verified && b == 1 }
    }

    pub fn as_integer(&self) -> Option<u64> {
        (self.denominator == 1).then_some(self.numerator)
    }
}

impl std::fmt::Display for Rank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)?;
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)?;
        }
        if !self.exact {
            f.write_str(" (free-module hypothesis unverified)")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degreewise coordinate space of homogeneous polynomials of one degree.
pub struct DegreeSpace {
    pub monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl DegreeSpace {
    pub fn new(n: usize, d: u32) -> Self {
        let monomials = monomials_of_degree(n, d);
        let index = monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Self { monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn coords(&self, f: &MultiPoly) -> Vec<u32> {
        let mut v = vec![0u32; self.monomials.len()];
        for (e, c) in f.terms() {
            v[self.index[e]] = c;
        }
        v
    }

    pub fn poly(&self, v: &[u32], p: u32, n: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(p, n);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                out = &out + &MultiPoly::monomial(self.monomials[i].clone(), c as i64, p);
            }
        }
        out
    }
}

/// RREF bases of `S_d` for `d = 0..=max_degree`, where `S` is the subalgebra
/// generated by the given homogeneous polynomials:
/// `S_d = span{ g * s : g a generator, s in S_{d - deg g} }`.
pub fn subalgebra_span(
    generators: &[MultiPoly],
    p: u32,
    n: usize,
    max_degree: u32,
) -> Result<Vec<Vec<MultiPoly>>> {
    let mut gens = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        match g.homogeneous_degree() {
            None => return Err(Error::Invalid(format!("generator {g} is not homogeneous"))),
            Some(0) => {}
            Some(d) => gens.push((d, g.clone())),
        }
    }
    let mut levels: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(p, n)]];
    for d in 1..=max_degree {
        let space = DegreeSpace::new(n, d);
        let mut vectors = Vec::new();
        for (e, g) in &gens {
            if *e > d {
                continue;
            }
            for s in &levels[(d - e) as usize] {
                vectors.push(space.coords(&g.try_mul(s)?));
            }
        }
        let basis = span_basis(p, space.dim(), &vectors);
        levels.push(basis.iter().map(|v| space.poly(v, p, n)).collect());
    }
    Ok(levels)
}

/// Dimensions of the subalgebra generated by `generators`, degree by degree.
pub fn subalgebra_dims(generators: &[MultiPoly], p: u32, n: usize, max_degree: u32) -> Result<Vec<u64>> {
    Ok(subalgebra_span(generators, p, n, max_degree)?.iter().map(|l| l.len() as u64).collect())
}

/// Drops generators that lie in the subalgebra generated by the others of
/// strictly lower degree (plus earlier ones of equal degree), checked up to
/// `max_degree`.
pub fn reduce_generators(generators: &[MultiPoly], p: u32, n: usize, max_degree: u32) -> Result<Vec<MultiPoly>> {
    let mut sorted: Vec<MultiPoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by_key(|g| (g.total_degree(), std::cmp::Reverse(g.clone())));
    let mut kept: Vec<MultiPoly> = Vec::new();
    for g in sorted {
        let d = g.homogeneous_degree().unwrap_or(u32::MAX);
        if d > max_degree {
            kept.push(g);
            continue;
        }
        let span = subalgebra_span(&kept, p, n, d)?;
        let space = DegreeSpace::new(n, d);
        let mut vectors: Vec<Vec<u32>> = span[d as usize].iter().map(|s| space.coords(s)).collect();
        let before = crate::linalg::span_dim(p, space.dim(), &vectors);
        vectors.push(space.coords(&g));
        if crate::linalg::span_dim(p, space.dim(), &vectors) > before {
            kept.push(g);
        }
    }
    Ok(kept)
}

/// True when every vector of `candidates` lies in the row space of `basis`.
pub fn contained_in(p: u32, len: usize, basis: &[Vec<u32>], candidates: &[Vec<u32>]) -> bool {
    let r = Matrix::from_rows(p, &pad(basis, len)).rank();
    let mut all = basis.to_vec();
    all.extend_from_slice(candidates);
    Matrix::from_rows(p, &pad(&all, len)).rank() == r
}

fn pad(rows: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
    if rows.is_empty() {
        vec![vec![0; len]]
    } else {
        rows.to_vec()
    }
}
