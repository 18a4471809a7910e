//! Poisson normal elements, log-ozone derivations and the log-ozone group.
//!
//! `f` is normal when `{x_i, f} = w_i f` for every generator; then
//! `delta_f(x_i) = w_i`. For a bracket homogeneous of degree `k` the
//! multipliers `w_i` are homogeneous of degree `k - 1`, so normal elements of
//! a fixed degree are found exactly as the nonzero vectors of
//! `ker(L_1 - w_1) ∩ ... ∩ ker(L_n - w_n)`, with `L_i = {x_i, -}` and `w_i`
//! running over the finite space of multipliers.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::center::oracle::{self, check_degree_bound, degreewise_kernel, is_graded_bracket, kernel_on, Caps};
use crate::center::series::{numerator_over_frobenius, DegreeSpace, Rank};
use crate::center::{monoid, CenterReport, Engine};
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::field;
use crate::linalg::{span_basis, Matrix};
use crate::poly::{divides, monomials_up_to, Exponent, MultiPoly};
use crate::structure::{BracketDegree, PoissonStructure, Provenance};
use crate::unipoly::squarefree;

/// `{x_i, f}` lies in `fA` for every generator.
pub fn is_poisson_normal(ps: &PoissonStructure, f: &MultiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    for i in 0..ps.n() {
        let b = ps.bracket_with_generator(i, f)?;
        if divides(f, &b)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `delta_f = f^{-1} {-, f}` on generators.
pub fn log_ozone_derivation(ps: &PoissonStructure, f: &MultiPoly) -> Result<Derivation> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut images = Vec::with_capacity(ps.n());
    for i in 0..ps.n() {
        let b = ps.bracket_with_generator(i, f)?;
        images.push(divides(f, &b)?.ok_or(Error::NotNormal)?);
    }
    Derivation::new(images)
}

/// All normal elements sharing one log-ozone derivation within one search
/// space: every nonzero vector in the span of `basis` is normal with
/// derivation `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalClass {
    /// Degree for homogeneous searches, filtration level otherwise.
    pub degree: u32,
    pub delta: Derivation,
    pub basis: Vec<MultiPoly>,
}

/// Search space for normal elements and their multipliers.
struct SearchSpace {
    p: u32,
    n: usize,
    domain: Vec<Exponent>,
    multipliers: Vec<Exponent>,
    /// `{x_i, -}` as matrices `domain -> target`.
    brackets: Vec<Matrix>,
    /// Multiplication by each multiplier monomial.
    mults: Vec<Matrix>,
}

impl SearchSpace {
    fn new(ps: &PoissonStructure, domain: Vec<Exponent>, multipliers: Vec<Exponent>) -> Result<Self> {
        let (p, n) = (ps.p(), ps.n());
        let mut target: HashMap<Exponent, usize> = HashMap::new();
        let intern = |e: &Exponent, target: &mut HashMap<Exponent, usize>| {
            let next = target.len();
            *target.entry(e.clone()).or_insert(next)
        };
        let mut bracket_cols: Vec<Vec<Vec<(usize, u32)>>> = vec![Vec::new(); n];
        let mut mult_cols: Vec<Vec<Vec<(usize, u32)>>> = vec![Vec::new(); multipliers.len()];
        for e in &domain {
            let m = MultiPoly::monomial(e.clone(), 1, p);
            for (i, cols) in bracket_cols.iter_mut().enumerate() {
                let img = ps.bracket_with_generator(i, &m)?;
                cols.push(img.terms().map(|(t, c)| (intern(t, &mut target), c)).collect());
            }
            for (k, w) in multipliers.iter().enumerate() {
                let prod: Exponent = e.iter().zip(w).map(|(a, b)| a + b).collect();
                mult_cols[k].push(vec![(intern(&prod, &mut target), 1)]);
            }
        }
        let rows = target.len().max(1);
        let build = |cols: &Vec<Vec<(usize, u32)>>| {
            let mut m = Matrix::zeros(p, rows, domain.len());
            for (j, col) in cols.iter().enumerate() {
                for &(r, c) in col {
                    m.set(r, j, c);
                }
            }
            m
        };
        let brackets = bracket_cols.iter().map(build).collect();
        let mults = mult_cols.iter().map(build).collect();
        Ok(Self { p, n, domain, multipliers, brackets, mults })
    }

    fn multiplier_poly(&self, coeffs: &[u32]) -> MultiPoly {
        MultiPoly::from_terms(
            self.p,
            self.n,
            self.multipliers.iter().zip(coeffs).filter(|(_, &c)| c != 0).map(|(e, &c)| (e.clone(), c as i64)),
        )
    }

    fn operator(&self, i: usize, coeffs: &[u32]) -> Matrix {
        let mut m = self.brackets[i].clone();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let scaled = scale_matrix(&self.mults[k], c);
                m = m.sub(&scaled);
            }
        }
        m
    }

    /// Depth-first search over multiplier tuples, intersecting kernels.
    fn search(&self, caps: &Caps) -> Result<Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>)>> {
        let m = self.multipliers.len() as u32;
        let per_slot = (self.p as u64).checked_pow(m).filter(|&s| s <= caps.candidates).ok_or_else(|| {
            Error::SearchSpaceTooLarge { size: format!("{}^{}", self.p, m), cap: caps.candidates }
        })?;
        let ident: Vec<Vec<u32>> =
            (0..self.domain.len()).map(|j| (0..self.domain.len()).map(|i| u32::from(i == j)).collect()).collect();
        let mut out = Vec::new();
        self.dfs(0, ident, Vec::new(), per_slot, &mut out);
        Ok(out)
    }

    fn dfs(
        &self,
        i: usize,
        basis: Vec<Vec<u32>>,
        chosen: Vec<Vec<u32>>,
        per_slot: u64,
        out: &mut Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>)>,
    ) {
        if i == self.n {
            out.push((chosen, basis));
            return;
        }
        let b = Matrix::from_columns(self.p, self.domain.len(), &basis);
        let m = self.multipliers.len();
        for code in 0..per_slot {
            let coeffs = decode(code, self.p, m);
            let restricted = self.operator(i, &coeffs).mul(&b);
            let null = restricted.nullspace();
            if null.is_empty() {
                continue;
            }
            let sub: Vec<Vec<u32>> = null.iter().map(|k| b.mul_vec(k)).collect();
            let mut next = chosen.clone();
            next.push(coeffs);
            self.dfs(i + 1, sub, next, per_slot, out);
        }
    }
}

fn scale_matrix(m: &Matrix, c: u32) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v != 0 {
                out.set(i, j, field::mul(v, c, m.p()));
            }
        }
    }
    out
}

fn decode(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for x in v.iter_mut() {
        *x = (code % p as u64) as u32;
        code /= p as u64;
    }
    v
}

/// Multiplier monomials: degree `k - 1` for a bracket homogeneous of degree
/// `k`, all monomials of degree below the top bracket degree otherwise.
fn multiplier_monomials(ps: &PoissonStructure) -> Vec<Exponent> {
    let n = ps.n();
    match ps.bracket_degree() {
        BracketDegree::Trivial => Vec::new(),
        BracketDegree::Homogeneous(0) => Vec::new(),
        BracketDegree::Homogeneous(k) => crate::poly::monomials_of_degree(n, k - 1),
        BracketDegree::Inhomogeneous { max } => monomials_up_to(n, max.saturating_sub(1)),
    }
}

/// Finds every class of normal elements of degree `1..=dmax` (homogeneous
/// brackets) or in the filtration piece `F_dmax` (inhomogeneous brackets).
pub fn normal_classes(ps: &PoissonStructure, dmax: u32, caps: &Caps) -> Result<Vec<NormalClass>> {
    check_degree_bound(dmax)?;
    let (p, n) = (ps.p(), ps.n());
    let graded = is_graded_bracket(ps);
    let degrees: Vec<u32> = if graded { (1..=dmax).collect() } else { vec![dmax] };
    let mults = multiplier_monomials(ps);
    let mut classes = Vec::new();
    for d in degrees {
        let domain = oracle::domain_for(n, d, graded);
        if domain.len() > caps.columns {
            return Err(Error::CapExceeded { what: format!("search space of dimension {}", domain.len()), cap: caps.columns as u64 });
        }
        if ps.is_trivial() {
            let basis = domain.iter().map(|e| MultiPoly::monomial(e.clone(), 1, p)).collect();
            classes.push(NormalClass { degree: d, delta: Derivation::zero(p, n), basis });
            continue;
        }
        let space = SearchSpace::new(ps, domain, mults.clone())?;
        for (ws, basis) in space.search(caps)? {
            let images = ws.iter().map(|c| space.multiplier_poly(c)).collect();
            let delta = Derivation::new(images)?;
            let rows = span_basis(p, space.domain.len(), &basis);
            let basis = rows
                .iter()
                .map(|v| {
                    MultiPoly::from_terms(
                        p,
                        n,
                        v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (space.domain[i].clone(), c as i64)),
                    )
                })
                .collect();
            classes.push(NormalClass { degree: d, delta, basis });
        }
    }
    Ok(classes)
}

/// Every normal element up to scaling (leading coefficient 1), paired with
/// its derivation, in deterministic order. Fails when the number of
/// elements exceeds `caps.candidates`.
pub fn enumerate_normal(ps: &PoissonStructure, dmax: u32, caps: &Caps) -> Result<Vec<(MultiPoly, Derivation)>> {
    let p = ps.p() as u64;
    let classes = normal_classes(ps, dmax, caps)?;
    let total: u64 = classes
        .iter()
        .map(|c| (p.checked_pow(c.basis.len() as u32).unwrap_or(u64::MAX) - 1) / (p - 1))
        .fold(0u64, |a, b| a.saturating_add(b));
    if total > caps.candidates {
        return Err(Error::SearchSpaceTooLarge { size: total.to_string(), cap: caps.candidates });
    }
    let mut out = Vec::new();
    for class in &classes {
        let k = class.basis.len();
        // projective enumeration: first nonzero coefficient is 1
        for lead in 0..k {
            let free = (k - lead - 1) as u32;
            for code in 0..p.pow(free) {
                let tail = decode(code, ps.p(), free as usize);
                let mut f = class.basis[lead].clone();
                for (j, &c) in tail.iter().enumerate() {
                    if c != 0 {
                        f = &f + &class.basis[lead + 1 + j].scale(c);
                    }
                }
                out.push((f.monic(), class.delta.clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The F_p-span of the log-ozone derivations found up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LozGroup {
    p: u32,
    n: usize,
    /// Independent derivations spanning the group.
    pub basis: Vec<Derivation>,
    /// Normal element realising each basis derivation.
    pub basis_representatives: Vec<MultiPoly>,
    /// Canonically sorted elements; empty when the order exceeds the cap.
    pub elements: Vec<Derivation>,
    /// Coordinates of each element in `basis`.
    pub coordinates: Vec<Vec<u32>>,
    pub search_bound: u32,
    /// The search is degree-bounded, so this is a verified subgroup.
    pub lower_bound: bool,
}

impl LozGroup {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `log_p |G|`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.basis.len() as u32)
    }

    /// The trivial group.
    pub fn trivial(p: u32, n: usize) -> Self {
        Self {
            p,
            n,
            basis: Vec::new(),
            basis_representatives: Vec::new(),
            elements: vec![Derivation::zero(p, n)],
            coordinates: vec![Vec::new()],
            search_bound: 0,
            lower_bound: true,
        }
    }

    /// Normal element with derivation `elements[k]`: the product of basis
    /// representatives raised to the element's coordinates.
    pub fn representative(&self, k: usize) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(self.p, self.n);
        for (rep, &c) in self.basis_representatives.iter().zip(&self.coordinates[k]) {
            acc = acc.try_mul(&rep.pow(c)?)?;
        }
        Ok(acc)
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.elements.binary_search(d).is_ok()
    }

    /// Membership by linear algebra, without relying on the element list.
    pub fn spans(&self, d: &Derivation) -> Result<bool> {
        let coords = derivation_coords(&self.basis, d)?;
        Ok(coords.is_some())
    }
}

/// Coordinates of `d` in the span of `basis`, if it lies there.
fn derivation_coords(basis: &[Derivation], d: &Derivation) -> Result<Option<Vec<u32>>> {
    let Some(first) = basis.first() else {
        return Ok(d.is_zero().then(Vec::new));
    };
    let p = first.p();
    let (index, len) = derivation_index(basis.iter().chain(std::iter::once(d)));
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| flatten(b, &index, len)).collect();
    let target = flatten(d, &index, len);
    let mut all = cols.clone();
    all.push(target);
    let m = Matrix::from_columns(p, len.max(1), &all);
    let null = m.nullspace();
    // a relation with nonzero last coefficient expresses d in the basis
    for v in null {
        let last = *v.last().expect("nonempty");
        if last != 0 {
            let inv = field::neg(field::inv(last, p)?, p);
            return Ok(Some(v[..basis.len()].iter().map(|&x| field::mul(x, inv, p)).collect()));
        }
    }
    Ok(None)
}

fn derivation_index<'a>(ds: impl Iterator<Item = &'a Derivation>) -> (BTreeMap<(usize, Exponent), usize>, usize) {
    let mut keys = BTreeMap::new();
    for d in ds {
        for (i, img) in d.images().iter().enumerate() {
            for (e, _) in img.terms() {
                keys.entry((i, e.clone())).or_insert(0usize);
            }
        }
    }
    let len = keys.len();
    for (k, v) in keys.values_mut().enumerate() {
        *v = k;
    }
    (keys, len)
}

fn flatten(d: &Derivation, index: &BTreeMap<(usize, Exponent), usize>, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for (i, img) in d.images().iter().enumerate() {
        for (e, c) in img.terms() {
            v[index[&(i, e.clone())]] = c;
        }
    }
    v
}

/// Closes the derivations of all normal classes up to degree `dmax` under
/// F_p-linear combination.
pub fn log_ozone_group(ps: &PoissonStructure, dmax: u32, caps: &Caps) -> Result<LozGroup> {
    let classes = normal_classes(ps, dmax, caps)?;
    let mut candidates: Vec<(&Derivation, &MultiPoly)> =
        classes.iter().map(|c| (&c.delta, c.basis.first().expect("classes are nonempty"))).collect();
    // prefer low-degree representatives with few terms
    candidates.sort_by(|a, b| {
        (a.1.total_degree(), a.1.len(), std::cmp::Reverse(a.1.leading_term().map(|t| t.0.clone())), a.0).cmp(&(
            b.1.total_degree(),
            b.1.len(),
            std::cmp::Reverse(b.1.leading_term().map(|t| t.0.clone())),
            b.0,
        ))
    });
    let mut basis: Vec<Derivation> = Vec::new();
    let mut reps: Vec<MultiPoly> = Vec::new();
    for (d, f) in candidates {
        if d.is_zero() || derivation_coords(&basis, d)?.is_some() {
            continue;
        }
        basis.push(d.clone());
        reps.push(f.monic());
    }
    let (p, n) = (ps.p(), ps.n());
    let order = (p as u64).checked_pow(basis.len() as u32).filter(|&o| o <= caps.candidates).ok_or_else(|| {
        Error::SearchSpaceTooLarge { size: format!("{p}^{}", basis.len()), cap: caps.candidates }
    })?;
    let mut elems: Vec<(Derivation, Vec<u32>)> = (0..order)
        .map(|code| {
            let coeffs = decode(code, p, basis.len());
            let mut acc = Derivation::zero(p, n);
            for (b, &c) in basis.iter().zip(&coeffs) {
                if c != 0 {
                    acc = acc.try_add(&b.scale(c)).expect("same ring");
                }
            }
            (acc, coeffs)
        })
        .collect();
    elems.sort();
    let (elements, coordinates) = elems.into_iter().unzip();
    Ok(LozGroup { p, n, basis, basis_representatives: reps, elements, coordinates, search_bound: dmax, lower_bound: true })
}

/// Degreewise intersection of the kernels of all derivations in the group.
pub fn c_loz(ps: &PoissonStructure, group: &LozGroup, max_degree: u32, caps: &Caps) -> Result<CenterReport> {
    let graded = is_graded_bracket(ps);
    degreewise_kernel(ps.p(), ps.n(), max_degree, graded, caps, Engine::CLoz, |m| {
        group.basis.iter().map(|d| d.apply(m)).collect()
    })
}

fn linear_matrices(group: &LozGroup) -> Result<Vec<Matrix>> {
    group.elements.iter().map(|d| d.linear_matrix()).collect()
}

/// Every element acts on A_1 with squarefree minimal polynomial, i.e. is
/// diagonalizable over the algebraic closure.
pub fn is_inferable(group: &LozGroup) -> Result<bool> {
    for m in linear_matrices(group)? {
        if !squarefree(&m.minimal_polynomial())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No nonzero element acts nilpotently on A_1.
pub fn is_quasi_inferable(group: &LozGroup) -> Result<bool> {
    let n = group.n() as u32;
    for (d, m) in group.elements.iter().zip(linear_matrices(group)?) {
        if !d.is_zero() && m.pow(n).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A homogeneous relation `sum_k f_k = 0` with `f_k` nonzero in distinct
/// eigenspaces `A_delta = {f : {x_i, f} = delta(x_i) f}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: u32,
    pub parts: Vec<(Derivation, MultiPoly)>,
}

impl Relation {
    pub fn sum(&self) -> MultiPoly {
        let (p, n) = (self.parts[0].1.p(), self.parts[0].1.n());
        self.parts.iter().fold(MultiPoly::zero(p, n), |acc, (_, f)| &acc + f)
    }
}

/// Searches degrees `1..=max_degree` for a failure of directness of
/// `sum_delta A_delta` over the group elements. `None` is not a proof of
/// decomposability.
pub fn decomposable_witness(
    ps: &PoissonStructure,
    group: &LozGroup,
    max_degree: u32,
    caps: &Caps,
) -> Result<Option<Relation>> {
    check_degree_bound(max_degree)?;
    if !is_graded_bracket(ps) {
        return Err(Error::NotGraded);
    }
    let (p, n) = (ps.p(), ps.n());
    for d in 1..=max_degree {
        let space = DegreeSpace::new(n, d);
        if space.dim() > caps.columns {
            return Err(Error::CapExceeded { what: format!("degree-{d} space"), cap: caps.columns as u64 });
        }
        let mut pieces: Vec<(usize, Vec<u32>)> = Vec::new();
        for (k, delta) in group.elements.iter().enumerate() {
            let eig = kernel_on(p, n, &space.monomials, |m| {
                (0..n)
                    .map(|i| ps.bracket_with_generator(i, m)?.try_sub(&delta.image(i).try_mul(m)?))
                    .collect()
            })?;
            pieces.extend(eig.iter().map(|f| (k, space.coords(f))));
        }
        if pieces.is_empty() {
            continue;
        }
        let cols: Vec<Vec<u32>> = pieces.iter().map(|(_, v)| v.clone()).collect();
        let null = Matrix::from_columns(p, space.dim(), &cols).nullspace();
        let Some(rel) = null.first() else {
            continue;
        };
        let mut parts: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for ((k, v), &c) in pieces.iter().zip(rel) {
            if c == 0 {
                continue;
            }
            let acc = parts.entry(*k).or_insert_with(|| vec![0; space.dim()]);
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = field::add(*a, field::mul(c, x, p), p);
            }
        }
        let parts = parts
            .into_iter()
            .map(|(k, v)| (group.elements[k].clone(), space.poly(&v, p, n)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        return Ok(Some(Relation { degree: d, parts }));
    }
    Ok(None)
}

/// Measured quantities behind the characterisation of skew-symmetric
/// structures by `|loz| = rank` together with inferability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCharacterisation {
    pub group_order: u64,
    pub inferable: Option<bool>,
    pub quasi_inferable: Option<bool>,
    pub rank: Rank,
    /// `|G| = rank` and inferable.
    pub condition_b: bool,
    /// For skew inputs: whether condition (b) holds as it must.
    pub consistent_with_skew: Option<bool>,
}

/// Rank of P over its center: `p^n / |B|` for skew inputs, otherwise
/// `p^n / N(1)` from the oracle's Hilbert numerator (flagged inexact).
pub fn rank_over_center(ps: &PoissonStructure, max_degree: u32, caps: &Caps) -> Result<Rank> {
    let pn = (ps.p() as u64).pow(ps.n() as u32);
    if let Provenance::Skew(c) = ps.provenance() {
        let m = monoid::skew_monoid_capped(c, caps)?;
        return Ok(Rank::new(pn, m.box_set.len() as u64, true));
    }
    let report = oracle::center_oracle(ps, max_degree, caps)?;
    let num = numerator_over_frobenius(&report.hilbert, ps.p(), ps.n());
    let at_one: i64 = num.iter().sum();
    if at_one <= 0 {
        return Err(Error::Invalid("Hilbert numerator does not evaluate to a positive integer".into()));
    }
    Ok(Rank::new(pn, at_one as u64, false))
}

pub fn characterise_group(ps: &PoissonStructure, dmax: u32, max_degree: u32, caps: &Caps) -> Result<GroupCharacterisation> {
    let group = log_ozone_group(ps, dmax, caps)?;
    let inferable = is_inferable(&group).ok();
    let quasi_inferable = is_quasi_inferable(&group).ok();
    let rank = rank_over_center(ps, max_degree, caps)?;
    let condition_b = rank.as_integer() == Some(group.order()) && inferable == Some(true);
    let consistent_with_skew = matches!(ps.provenance(), Provenance::Skew(_)).then_some(condition_b);
    Ok(GroupCharacterisation { group_order: group.order(), inferable, quasi_inferable, rank, condition_b, consistent_with_skew })
}
