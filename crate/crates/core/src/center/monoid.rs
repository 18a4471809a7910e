//! Monoid engine for skew-symmetric brackets `{x_i, x_j} = c_ij x_i x_j`.
//!
//! A monomial `x^v` is central iff `c v = 0 (mod p)`. The central exponents
//! form a monoid that is a disjoint union of translates `b + pN^n` over the
//! box set `B` of kernel vectors lifted to `[0, p)^n`.

use serde::Serialize;

use super::oracle::Caps;
use super::series::{expand_over_frobenius, Rank};
use super::{CenterReport, Engine};
use crate::error::{Error, Result};
use crate::field;
use crate::poly::MultiPoly;
use crate::structure::{from_skew_matrix, SkewMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidData {
    pub c: SkewMatrix,
    pub kernel_basis: Vec<Vec<u32>>,
    /// Box representatives, sorted lexicographically; contains 0.
    pub box_set: Vec<Vec<u32>>,
    /// Indices (0-based) where some box element is nonzero.
    pub support: Vec<usize>,
    /// Complement of `support`.
    pub zero_indices: Vec<usize>,
    /// Indicator vector of `support`.
    pub indicator: Vec<u32>,
}

impl MonoidData {
    pub fn p(&self) -> u32 {
        self.c.p()
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    /// `c v = 0 (mod p)`.
    pub fn in_kernel(&self, v: &[u32]) -> bool {
        let p = self.p();
        let n = self.n();
        (0..n).all(|i| (0..n).fold(0u32, |acc, j| field::add(acc, field::mul(self.c.get(i, j), v[j] % p, p), p)) == 0)
    }
}

/// Computes the kernel of `c` mod p and enumerates the box set.
pub fn skew_monoid(c: &SkewMatrix) -> Result<MonoidData> {
    skew_monoid_capped(c, &Caps::default())
}

pub fn skew_monoid_capped(c: &SkewMatrix, caps: &Caps) -> Result<MonoidData> {
    let p = c.p();
    let n = c.n();
    let kernel_basis = c.to_matrix().nullspace();
    let k = kernel_basis.len() as u32;
    let size = (p as u64).checked_pow(k);
    if size.is_none_or(|s| s > caps.kernel) {
        return Err(Error::SearchSpaceTooLarge { size: format!("{p}^{k}"), cap: caps.kernel });
    }
    let size = size.expect("checked above");
    let mut box_set = Vec::with_capacity(size as usize);
    for mut code in 0..size {
        let mut v = vec![0u32; n];
        for b in &kernel_basis {
            let coef = (code % p as u64) as u32;
            code /= p as u64;
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field::add(*x, field::mul(coef, y, p), p);
            }
        }
        box_set.push(v);
    }
    box_set.sort();
    box_set.dedup();
    let support: Vec<usize> = (0..n).filter(|&i| box_set.iter().any(|b| b[i] != 0)).collect();
    let zero_indices = (0..n).filter(|i| !support.contains(i)).collect();
    let mut indicator = vec![0u32; n];
    for &i in &support {
        indicator[i] = 1;
    }
    Ok(MonoidData { c: c.clone(), kernel_basis, box_set, support, zero_indices, indicator })
}

fn monomial(e: &[u32], p: u32) -> MultiPoly {
    MultiPoly::monomial(e.to_vec(), 1, p)
}

/// Generators `x_i^p` and `x^b` for nonzero `b` in the box set, each checked
/// central against the bracket. Dimensions come from [`hilbert_skew`].
pub fn center_generators_skew(m: &MonoidData, max_degree: u32) -> Result<CenterReport> {
    let p = m.p();
    let n = m.n();
    let ps = from_skew_matrix(&m.c)?;
    let mut generators = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = p;
        generators.push(monomial(&e, p));
    }
    for b in m.box_set.iter().filter(|b| b.iter().any(|&x| x != 0)) {
        generators.push(monomial(b, p));
    }
    for g in &generators {
        if !super::is_central(&ps, g)? {
            return Err(Error::Invalid(format!("monoid generator {g} is not central")));
        }
    }
    let series = hilbert_skew(m, max_degree);
    Ok(CenterReport {
        engine: Engine::Monoid,
        generators,
        hilbert: series.hilbert,
        basis: Vec::new(),
        max_degree,
        filtered: false,
    })
}

/// Stanley's criterion: Gorenstein iff the box set has a componentwise
/// maximum. Returns the maximum as witness.
pub fn gorenstein_skew(m: &MonoidData) -> (bool, Option<Vec<u32>>) {
    let best = m
        .box_set
        .iter()
        .find(|cand| m.box_set.iter().all(|b| b.iter().zip(cand.iter()).all(|(x, y)| x <= y)));
    match best {
        Some(w) => (true, Some(w.clone())),
        None => (false, None),
    }
}

/// First box element (lex order) whose support components are all nonzero.
pub fn find_beta(m: &MonoidData) -> Option<Vec<u32>> {
    m.box_set.iter().find(|b| m.support.iter().all(|&i| b[i] != 0)).cloned()
}

/// When a full-support `beta` exists: Gorenstein iff the indicator vector of
/// the support lies in the monoid. `None` when no such `beta` exists.
pub fn gorenstein_via_support_indicator(m: &MonoidData) -> Option<bool> {
    find_beta(m)?;
    Some(m.in_kernel(&m.indicator))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SkewClass {
    /// Center is `k[x1^p, x2^p, x3^p]`.
    Case1,
    /// `c ~ [[0,a,0],[-a,0,0],[0,0,0]]`.
    Case2a,
    /// `c ~ [[0,a,-a],[-a,0,0],[a,0,0]]`.
    Case2b,
    /// `c ~` circulant; the unimodular case.
    Case2c,
    NotGorenstein,
}

impl std::fmt::Display for SkewClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SkewClass::Case1 => "Case1",
            SkewClass::Case2a => "Case2a",
            SkewClass::Case2b => "Case2b",
            SkewClass::Case2c => "Case2c",
            SkewClass::NotGorenstein => "NotGorenstein",
        })
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn matches_form(c: &SkewMatrix, form: impl Fn(u32, u32) -> [u32; 3]) -> bool {
    let p = c.p();
    PERMS3.iter().any(|perm| {
        let q = c.permuted(perm);
        let a = q.get(0, 1);
        q.upper() == form(a, p)
    })
}

/// Permutation-similarity classification of 3x3 skew matrices for p > 3.
/// Forms are tested in the order Case1, Case2c, Case2a, Case2b so the zero
/// matrix (unimodular) lands in Case2c.
pub fn classify_skew3(c: &SkewMatrix) -> Result<SkewClass> {
    if c.n() != 3 {
        return Err(Error::WrongArity { expected: 3, got: c.n() });
    }
    if c.p() <= 3 {
        return Err(Error::SmallCharacteristic(c.p()));
    }
    let m = skew_monoid(c)?;
    if m.box_set.len() == 1 {
        return Ok(SkewClass::Case1);
    }
    if matches_form(c, |a, p| [a, field::neg(a, p), a]) {
        debug_assert!(c.row_sums().iter().all(|&s| s == 0));
        return Ok(SkewClass::Case2c);
    }
    if matches_form(c, |a, _| [a, 0, 0]) {
        return Ok(SkewClass::Case2a);
    }
    if matches_form(c, |a, p| [a, field::neg(a, p), 0]) {
        return Ok(SkewClass::Case2b);
    }
    Ok(SkewClass::NotGorenstein)
}

/// Hilbert data of a skew center: numerator `sum_{b in B} t^|b|` over
/// `(1 - t^p)^n`, its expansion, and the rank `p^n / |B|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewSeries {
    pub numerator: Vec<i64>,
    pub hilbert: Vec<u64>,
    pub rank: Rank,
}

pub fn hilbert_skew(m: &MonoidData, max_degree: u32) -> SkewSeries {
    let p = m.p();
    let n = m.n();
    let top = m.box_set.iter().map(|b| b.iter().sum::<u32>()).max().unwrap_or(0) as usize;
    let mut numerator = vec![0i64; top + 1];
    for b in &m.box_set {
        numerator[b.iter().sum::<u32>() as usize] += 1;
    }
    let hilbert = expand_over_frobenius(&numerator, p, n, max_degree).into_iter().map(|x| x as u64).collect();
    let pn = (p as u64).pow(n as u32);
    let rank = Rank::new(pn, m.box_set.len() as u64, true);
    SkewSeries { numerator, hilbert, rank }
}
