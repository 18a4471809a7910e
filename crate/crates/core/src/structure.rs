//! Poisson brackets on k[x_1, ..., x_n].
//!
//! A structure is determined by the generator brackets `{x_i, x_j}`; the
//! bracket of arbitrary polynomials is the biderivation expansion
//! `{f, g} = sum_{i<j} (f_i g_j - f_j g_i) {x_i, x_j}`.

use crate::deriv::{self, Derivation};
use crate::error::{Error, Result};
use crate::field;
use crate::linalg::Matrix;
use crate::poly::{default_names, MultiPoly};

/// Skew-symmetric matrix with zero diagonal over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewMatrix {
    p: u32,
    entries: Vec<Vec<u32>>,
}

impl SkewMatrix {
    pub fn new(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let p = field::check_prime(p as u64)?;
        let n = rows.len();
        let mut entries = vec![vec![0u32; n]; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSkewSymmetric);
            }
            for (j, &v) in row.iter().enumerate() {
                entries[i][j] = field::reduce(v, p);
            }
        }
        for i in 0..n {
            if entries[i][i] != 0 {
                return Err(Error::NotSkewSymmetric);
            }
            for j in 0..i {
                if field::add(entries[i][j], entries[j][i], p) != 0 {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        Ok(Self { p, entries })
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Self { p, entries: vec![vec![0; n]; n] }
    }

    /// Builds the matrix from its strictly upper-triangular entries, listed
    /// row by row.
    pub fn from_upper(p: u32, n: usize, upper: &[u32]) -> Self {
        let mut m = Self::zero(p, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.entries[i][j] = upper[k] % p;
                m.entries[j][i] = field::neg(upper[k] % p, p);
                k += 1;
            }
        }
        m
    }

    /// The 3x3 circulant `[[0,a,-a],[-a,0,a],[a,-a,0]]`.
    pub fn circulant3(p: u32, a: i64) -> Self {
        let a = field::reduce(a, p);
        Self::from_upper(p, 3, &[a, field::neg(a, p), a])
    }

    /// Every skew matrix of size `n` over F_p, ordered by upper-triangular
    /// encoding.
    pub fn enumerate(p: u32, n: usize) -> Vec<SkewMatrix> {
        let slots = n * n.saturating_sub(1) / 2;
        let total = (p as u64).pow(slots as u32);
        (0..total)
            .map(|mut code| {
                let mut upper = vec![0u32; slots];
                for k in (0..slots).rev() {
                    upper[k] = (code % p as u64) as u32;
                    code /= p as u64;
                }
                Self::from_upper(p, n, &upper)
            })
            .collect()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn upper(&self) -> Vec<u32> {
        let n = self.n();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.entries[i][j]).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().fold(0, |a, &b| field::add(a, b, self.p))).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.p, &self.entries)
    }

    /// Simultaneous row/column permutation: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut out = Self::zero(self.p, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i][j] = self.entries[perm[i]][perm[j]];
            }
        }
        out
    }

    /// Entries as signed representatives, for display.
    pub fn signed_rows(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|r| r.iter().map(|&v| field::signed(v, self.p)).collect()).collect()
    }
}

/// How a structure was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Skew(SkewMatrix),
    Potential(MultiPoly),
    Ore { base: Box<PoissonStructure>, alpha: Derivation, beta: Derivation },
    Explicit,
    Tensor(Box<PoissonStructure>, Box<PoissonStructure>),
    Twist { base: Box<PoissonStructure>, delta: Derivation },
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Skew(_) => "skew",
            Provenance::Potential(_) => "potential",
            Provenance::Ore { .. } => "ore",
            Provenance::Explicit => "explicit",
            Provenance::Tensor(..) => "tensor",
            Provenance::Twist { .. } => "twist",
        }
    }
}

/// Degree behaviour of the generator brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketDegree {
    /// All brackets vanish.
    Trivial,
    /// Every nonzero `{x_i, x_j}` is homogeneous of this degree.
    Homogeneous(u32),
    /// Mixed degrees; only the total-degree filtration is respected.
    Inhomogeneous { max: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    p: u32,
    n: usize,
    /// Full antisymmetric table, `table[i][j] = {x_i, x_j}`.
    table: Vec<Vec<MultiPoly>>,
    provenance: Provenance,
    graded: bool,
    names: Vec<String>,
}

impl PoissonStructure {
    fn build(p: u32, n: usize, upper: Vec<(usize, usize, MultiPoly)>, provenance: Provenance) -> Self {
        let mut table = vec![vec![MultiPoly::zero(p, n); n]; n];
        for (i, j, h) in upper {
            table[j][i] = -&h;
            table[i][j] = h;
        }
        let graded = table
            .iter()
            .flatten()
            .all(|h| h.is_zero() || h.homogeneous_degree() == Some(2));
        Self { p, n, table, provenance, graded, names: default_names(n) }
    }

    fn checked(self) -> Result<Self> {
        match self.jacobi_violation() {
            Some((i, j, k)) => Err(Error::JacobiViolation(i + 1, j + 1, k + 1)),
            None => Ok(self),
        }
    }

    /// The zero bracket on `n` variables.
    pub fn trivial(p: u32, n: usize) -> Result<Self> {
        let p = field::check_prime(p as u64)?;
        Ok(Self::build(p, n, Vec::new(), Provenance::Explicit))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::WrongArity { expected: self.n, got: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    /// `{x_i, x_j}` for 0-based indices.
    pub fn generator_bracket(&self, i: usize, j: usize) -> &MultiPoly {
        &self.table[i][j]
    }

    /// Upper-triangular entries `(i, j, {x_i, x_j})` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, &self.table[i][j])))
    }

    pub fn is_trivial(&self) -> bool {
        self.pairs().all(|(_, _, h)| h.is_zero())
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(i, self.p, self.n).expect("index in range")
    }

    pub fn skew_matrix(&self) -> Option<&SkewMatrix> {
        match &self.provenance {
            Provenance::Skew(c) => Some(c),
            _ => None,
        }
    }

    pub fn potential(&self) -> Option<&MultiPoly> {
        match &self.provenance {
            Provenance::Potential(o) => Some(o),
            _ => None,
        }
    }

    pub fn bracket_degree(&self) -> BracketDegree {
        let degs: Vec<u32> = self
            .pairs()
            .filter(|(_, _, h)| !h.is_zero())
            .map(|(_, _, h)| h.homogeneous_degree().unwrap_or(u32::MAX))
            .collect();
        if degs.is_empty() {
            return BracketDegree::Trivial;
        }
        if degs[0] != u32::MAX && degs.iter().all(|&d| d == degs[0]) {
            return BracketDegree::Homogeneous(degs[0]);
        }
        let max = self.pairs().filter_map(|(_, _, h)| h.total_degree()).max().unwrap_or(0);
        BracketDegree::Inhomogeneous { max }
    }

    fn same_ring(&self, f: &MultiPoly) -> Result<()> {
        if f.p() != self.p || f.n() != self.n {
            return Err(Error::ModulusMismatch(format!(
                "structure (p={}, n={}) vs polynomial (p={}, n={})",
                self.p,
                self.n,
                f.p(),
                f.n()
            )));
        }
        Ok(())
    }

    /// `{x_i, f} = sum_j (df/dx_j) {x_i, x_j}`.
    pub fn bracket_with_generator(&self, i: usize, f: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(f)?;
        let mut acc = MultiPoly::zero(self.p, self.n);
        for j in 0..self.n {
            if self.table[i][j].is_zero() {
                continue;
            }
            let fj = f.partial_derivative(j)?;
            if fj.is_zero() {
                continue;
            }
            acc = acc.try_add(&fj.try_mul(&self.table[i][j])?)?;
        }
        Ok(acc)
    }

    /// The bracket of two arbitrary polynomials.
    pub fn bracket(&self, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(f)?;
        self.same_ring(g)?;
        let fd: Vec<MultiPoly> = (0..self.n).map(|i| f.partial_derivative(i)).collect::<Result<_>>()?;
        let gd: Vec<MultiPoly> = (0..self.n).map(|i| g.partial_derivative(i)).collect::<Result<_>>()?;
        let mut acc = MultiPoly::zero(self.p, self.n);
        for (i, j, h) in self.pairs() {
            if h.is_zero() {
                continue;
            }
            let coef = fd[i].try_mul(&gd[j])?.try_sub(&fd[j].try_mul(&gd[i])?)?;
            if coef.is_zero() {
                continue;
            }
            acc = acc.try_add(&coef.try_mul(h)?)?;
        }
        Ok(acc)
    }

    /// First generator triple `(i, j, k)` (0-based, `i < j < k`) on which the
    /// Jacobi cyclic sum is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.jacobi_sum(i, j, k).expect("table entries share the ring");
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `{x_i,{x_j,x_k}} + {x_j,{x_k,x_i}} + {x_k,{x_i,x_j}}`.
    pub fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> Result<MultiPoly> {
        let a = self.bracket_with_generator(i, &self.table[j][k])?;
        let b = self.bracket_with_generator(j, &self.table[k][i])?;
        let c = self.bracket_with_generator(k, &self.table[i][j])?;
        a.try_add(&b)?.try_add(&c)
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }
}

/// `{x_i, x_j} = c_ij x_i x_j`.
pub fn from_skew_matrix(c: &SkewMatrix) -> Result<PoissonStructure> {
    let (p, n) = (c.p(), c.n());
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            upper.push((i, j, MultiPoly::monomial(e, c.get(i, j) as i64, p)));
        }
    }
    PoissonStructure::build(p, n, upper, Provenance::Skew(c.clone())).checked()
}

/// Jacobian structure of a potential in three variables:
/// `{x1,x2} = dW/dx3`, `{x2,x3} = dW/dx1`, `{x3,x1} = dW/dx2`.
pub fn from_potential(omega: &MultiPoly) -> Result<PoissonStructure> {
    if omega.n() != 3 {
        return Err(Error::WrongArity { expected: 3, got: omega.n() });
    }
    field::check_prime(omega.p() as u64)?;
    let d1 = omega.partial_derivative(0)?;
    let d2 = omega.partial_derivative(1)?;
    let d3 = omega.partial_derivative(2)?;
    let upper = vec![(0, 1, d3), (1, 2, d1), (0, 2, -&d2)];
    PoissonStructure::build(omega.p(), 3, upper, Provenance::Potential(omega.clone())).checked()
}

/// Explicit generator brackets `(i, j, {x_i, x_j})` with 0-based indices;
/// pairs may be given in either order. Jacobi is verified.
pub fn explicit(p: u32, n: usize, pairs: &[(usize, usize, MultiPoly)]) -> Result<PoissonStructure> {
    explicit_unchecked(p, n, pairs)?.checked()
}

/// Like [`explicit`] but defers the Jacobi check to the caller.
pub fn explicit_unchecked(p: u32, n: usize, pairs: &[(usize, usize, MultiPoly)]) -> Result<PoissonStructure> {
    let p = field::check_prime(p as u64)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut upper = Vec::new();
    for (i, j, h) in pairs {
        let (i, j) = (*i, *j);
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        if i == j {
            return Err(Error::Invalid(format!("bracket pair ({}, {}) is diagonal", i + 1, j + 1)));
        }
        if h.p() != p || h.n() != n {
            return Err(Error::ModulusMismatch(format!("bracket value for ({}, {})", i + 1, j + 1)));
        }
        let key = (i.min(j), i.max(j));
        if !seen.insert(key) {
            return Err(Error::Invalid(format!("bracket pair ({}, {}) given twice", key.0 + 1, key.1 + 1)));
        }
        let h = if i < j { h.clone() } else { -h };
        upper.push((key.0, key.1, h));
    }
    Ok(PoissonStructure::build(p, n, upper, Provenance::Explicit))
}

/// The Ore extension `A[t; alpha, beta]` with `{a, t} = alpha(a) t + beta(a)`;
/// `t` becomes the last variable.
pub fn from_ore(base: &PoissonStructure, alpha: &Derivation, beta: &Derivation) -> Result<PoissonStructure> {
    let (p, n) = (base.p(), base.n());
    for d in [alpha, beta] {
        if d.n() != n || d.p() != p {
            return Err(Error::ArityMismatch { expected: n, got: d.n() });
        }
    }
    if !deriv::is_poisson_derivation(base, alpha)? {
        return Err(Error::NotPoissonDerivation);
    }
    if !deriv::is_alpha_derivation(base, alpha, beta)? {
        return Err(Error::NotAlphaDerivation);
    }
    let m = n + 1;
    let t = MultiPoly::var(n, p, m)?;
    let mut upper = Vec::new();
    for (i, j, h) in base.pairs() {
        upper.push((i, j, h.embed(m, 0)));
    }
    for i in 0..n {
        let a = alpha.image(i).embed(m, 0);
        let b = beta.image(i).embed(m, 0);
        upper.push((i, n, a.try_mul(&t)?.try_add(&b)?));
    }
    let mut names = base.names().to_vec();
    names.push(fresh_name(&names, m));
    let prov = Provenance::Ore { base: Box::new(base.clone()), alpha: alpha.clone(), beta: beta.clone() };
    PoissonStructure::build(p, m, upper, prov).checked()?.with_names(names)
}

fn fresh_name(existing: &[String], index: usize) -> String {
    let cand = format!("x{index}");
    if existing.contains(&cand) {
        format!("t{index}")
    } else {
        cand
    }
}

/// Tensor product; variables of `b` follow those of `a`.
pub fn tensor(a: &PoissonStructure, b: &PoissonStructure) -> Result<PoissonStructure> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch(format!("p={} vs p={}", a.p(), b.p())));
    }
    let m = a.n() + b.n();
    let mut upper = Vec::new();
    for (i, j, h) in a.pairs() {
        upper.push((i, j, h.embed(m, 0)));
    }
    for (i, j, h) in b.pairs() {
        upper.push((i + a.n(), j + a.n(), h.embed(m, a.n())));
    }
    let mut names: Vec<String> = a.names().iter().chain(b.names()).cloned().collect();
    let unique = names.iter().collect::<std::collections::BTreeSet<_>>().len() == names.len();
    if !unique {
        names = default_names(m);
    }
    let prov = Provenance::Tensor(Box::new(a.clone()), Box::new(b.clone()));
    PoissonStructure::build(a.p(), m, upper, prov).checked()?.with_names(names)
}

/// Twist by a graded degree-0 Poisson derivation:
/// `{x_i, x_j}' = {x_i, x_j} + x_i delta(x_j) - x_j delta(x_i)`.
pub fn twist(base: &PoissonStructure, delta: &Derivation) -> Result<PoissonStructure> {
    if !base.is_graded() {
        return Err(Error::NotGraded);
    }
    if delta.n() != base.n() || delta.p() != base.p() {
        return Err(Error::ArityMismatch { expected: base.n(), got: delta.n() });
    }
    if !delta.is_graded_degree_zero() {
        return Err(Error::NotGradedDegreeZero);
    }
    if !deriv::is_poisson_derivation(base, delta)? {
        return Err(Error::NotPoissonDerivation);
    }
    let mut upper = Vec::new();
    for (i, j, h) in base.pairs() {
        let xi = base.var(i);
        let xj = base.var(j);
        let v = h
            .try_add(&xi.try_mul(delta.image(j))?)?
            .try_sub(&xj.try_mul(delta.image(i))?)?;
        upper.push((i, j, v));
    }
    let prov = Provenance::Twist { base: Box::new(base.clone()), delta: delta.clone() };
    PoissonStructure::build(base.p(), base.n(), upper, prov).checked()?.with_names(base.names().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
        parse(s, n, p).unwrap()
    }

    #[test]
    fn skew_constructor() {
        let z = from_skew_matrix(&SkewMatrix::zero(5, 2)).unwrap();
        assert!(z.is_trivial());
        let c = SkewMatrix::new(5, &[vec![0, 2], vec![-2, 0]]).unwrap();
        let pc = from_skew_matrix(&c).unwrap();
        assert_eq!(pc.generator_bracket(0, 1), &pp("2x1x2", 2, 5));
        assert!(pc.is_graded());
        let circ = from_skew_matrix(&SkewMatrix::circulant3(5, 1)).unwrap();
        assert!(circ.check_jacobi());
        assert_eq!(SkewMatrix::new(5, &[vec![0, 1], vec![1, 0]]), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn potential_constructor() {
        let p = from_potential(&pp("x1^3 + x2^2x3", 3, 5)).unwrap();
        assert_eq!(p.generator_bracket(0, 1), &pp("x2^2", 3, 5));
        assert_eq!(p.generator_bracket(1, 2), &pp("3x1^2", 3, 5));
        assert_eq!(p.generator_bracket(2, 0), &pp("2x2x3", 3, 5));

        let q = from_potential(&pp("x1x2(x1+x2)", 3, 5)).unwrap();
        assert!(q.generator_bracket(0, 1).is_zero());
        assert_eq!(q.generator_bracket(1, 2), &pp("2x1x2 + x2^2", 3, 5));
        assert_eq!(q.generator_bracket(2, 0), &pp("x1^2 + 2x1x2", 3, 5));

        assert!(from_potential(&MultiPoly::zero(5, 3)).unwrap().is_trivial());
        assert_eq!(from_potential(&pp("x1", 2, 5)), Err(Error::WrongArity { expected: 3, got: 2 }));
    }

    #[test]
    fn ore_constructor() {
        let line = PoissonStructure::trivial(5, 1).unwrap();
        let zero = Derivation::zero(5, 1);
        let beta = Derivation::new(vec![pp("x1^2", 1, 5)]).unwrap();
        let jordan = from_ore(&line, &zero, &beta).unwrap();
        assert_eq!(jordan.generator_bracket(0, 1), &pp("x1^2", 2, 5));

        let plane = PoissonStructure::trivial(5, 2).unwrap();
        let z2 = Derivation::zero(5, 2);
        let flat = from_ore(&plane, &z2, &z2).unwrap();
        assert!(flat.is_trivial() && flat.n() == 3);

        let beta = Derivation::new(vec![pp("-(x1^2 + 2x1x2)", 2, 5), pp("2x1x2 + x2^2", 2, 5)]).unwrap();
        let ore = from_ore(&plane, &z2, &beta).unwrap();
        let pot = from_potential(&pp("x1^2x2 + x1x2^2", 3, 5)).unwrap();
        for (i, j, h) in pot.pairs() {
            assert_eq!(ore.generator_bracket(i, j), h);
        }
    }

    #[test]
    fn ore_alpha_condition_follows_jacobi() {
        // base {x1,x2} = c x1x2, alpha = (x1, 0), beta = (0, 1): Jacobi on
        // (x1, x2, t) holds exactly for c = -1.
        for (c, ok) in [(-1i64, true), (1, false)] {
            let base = from_skew_matrix(&SkewMatrix::new(5, &[vec![0, c], vec![-c, 0]]).unwrap()).unwrap();
            let alpha = Derivation::new(vec![pp("x1", 2, 5), MultiPoly::zero(5, 2)]).unwrap();
            let beta = Derivation::new(vec![MultiPoly::zero(5, 2), pp("1", 2, 5)]).unwrap();
            let got = from_ore(&base, &alpha, &beta);
            assert_eq!(got.is_ok(), ok, "c = {c}");
            if !ok {
                assert_eq!(got, Err(Error::NotAlphaDerivation));
            }
        }
    }

    #[test]
    fn tensor_constructor() {
        let t = PoissonStructure::trivial(5, 1).unwrap();
        assert!(tensor(&t, &t).unwrap().is_trivial());
        let c = SkewMatrix::new(5, &[vec![0, 3], vec![-3, 0]]).unwrap();
        let pc = from_skew_matrix(&c).unwrap();
        let pt = tensor(&pc, &t).unwrap();
        assert_eq!(pt.generator_bracket(0, 1), &pp("3x1x2", 3, 5));
        assert!(pt.generator_bracket(0, 2).is_zero() && pt.generator_bracket(1, 2).is_zero());
        let j = explicit(5, 2, &[(0, 1, pp("x1^2", 2, 5))]).unwrap();
        let jj = tensor(&j, &j).unwrap();
        assert_eq!(jj.generator_bracket(2, 3), &pp("x3^2", 4, 5));
        assert!(tensor(&pc, &PoissonStructure::trivial(7, 1).unwrap()).is_err());
    }

    #[test]
    fn bracket_examples() {
        let pc = from_skew_matrix(&SkewMatrix::new(7, &[vec![0, 3], vec![-3, 0]]).unwrap()).unwrap();
        let f = pp("x1^2x2^3", 2, 7);
        // {x1, x1^i x2^j} = j c x1^{i+1} x2^j
        assert_eq!(pc.bracket(&pc.var(0), &f).unwrap(), pp("9x1^3x2^3", 2, 7));
        assert!(pc.bracket(&f, &f).unwrap().is_zero());

        // {x1,x2} = c x1^2, {x2,x3} = (2c+1) x1x3, {x3,x1} = 0 with c = 2, p = 7
        let s = explicit(7, 3, &[(0, 1, pp("2x1^2", 3, 7)), (1, 2, pp("5x1x3", 3, 7))]).unwrap();
        let m = pp("x1^2x2^3x3", 3, 7);
        assert_eq!(s.bracket(&s.var(0), &m).unwrap(), pp("6x1^4x2^2x3", 3, 7));
    }

    #[test]
    fn jacobi_violation_detected() {
        // {x1,x2} = x3^2, {x3,x1} = x1x2: cyclic sum on (1,2,3) is -x2x3^2
        let bad = explicit_unchecked(5, 3, &[(0, 1, pp("x3^2", 3, 5)), (2, 0, pp("x1x2", 3, 5))]).unwrap();
        assert!(!bad.check_jacobi());
        assert_eq!(bad.jacobi_sum(0, 1, 2).unwrap(), pp("-x2x3^2", 3, 5));
        assert_eq!(
            explicit(5, 3, &[(0, 1, pp("x3^2", 3, 5)), (2, 0, pp("x1x2", 3, 5))]),
            Err(Error::JacobiViolation(1, 2, 3))
        );
        // the table {x1,x2} = x1, {x1,x3} = x1 is a genuine Poisson structure
        let fine = explicit(5, 3, &[(0, 1, pp("x1", 3, 5)), (0, 2, pp("x1", 3, 5))]).unwrap();
        assert!(fine.check_jacobi());
    }

    #[test]
    fn twist_examples() {
        let c = SkewMatrix::new(7, &[vec![0, 3, 0], vec![-3, 0, 0], vec![0, 0, 0]]).unwrap();
        let pc = from_skew_matrix(&c).unwrap();
        assert_eq!(twist(&pc, &Derivation::zero(7, 3)).unwrap().generator_bracket(0, 1), pc.generator_bracket(0, 1));
        let e = deriv::euler(&pc);
        let te = twist(&pc, &e).unwrap();
        for (i, j, h) in pc.pairs() {
            assert_eq!(te.generator_bracket(i, j), h);
        }
        // phi/3 = (x1, -x2, 0) since a = 3 gives phi = (3x1, -3x2, 0)
        let d = Derivation::new(vec![pp("x1", 3, 7), pp("-x2", 3, 7), MultiPoly::zero(7, 3)]).unwrap();
        let tw = twist(&pc, &d).unwrap();
        let circ = from_skew_matrix(&SkewMatrix::circulant3(7, 1)).unwrap();
        for (i, j, h) in circ.pairs() {
            assert_eq!(tw.generator_bracket(i, j), h);
        }
    }

    #[test]
    fn bracket_degree_classification() {
        assert_eq!(PoissonStructure::trivial(3, 2).unwrap().bracket_degree(), BracketDegree::Trivial);
        let j = explicit(5, 2, &[(0, 1, pp("x1^2", 2, 5))]).unwrap();
        assert_eq!(j.bracket_degree(), BracketDegree::Homogeneous(2));
        let cubic = explicit(5, 2, &[(0, 1, pp("x1^3 + x2^3", 2, 5))]).unwrap();
        assert_eq!(cubic.bracket_degree(), BracketDegree::Homogeneous(3));
        assert!(!cubic.is_graded());
        let mixed = explicit(5, 2, &[(0, 1, pp("x1 + x1^2", 2, 5))]).unwrap();
        assert_eq!(mixed.bracket_degree(), BracketDegree::Inhomogeneous { max: 2 });
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(SkewMatrix::enumerate(3, 3).len(), 27);
        assert_eq!(SkewMatrix::enumerate(5, 3).len(), 125);
        assert_eq!(SkewMatrix::enumerate(3, 2).len(), 3);
    }
}
