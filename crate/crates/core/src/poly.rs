//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic with `x1` most significant and the leading term is the
//! last entry. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field;

/// Default cap on total degree for checked multiplication.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    p: u32,
    n: usize,
    terms: BTreeMap<Exponent, u32>,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl MultiPoly {
    pub fn zero(p: u32, n: usize) -> Self {
        Self { p, n, terms: BTreeMap::new() }
    }

    pub fn one(p: u32, n: usize) -> Self {
        Self::constant(1, p, n)
    }

    pub fn constant(c: i64, p: u32, n: usize) -> Self {
        Self::monomial(vec![0; n], c, p)
    }

    /// The monomial `c * x^exp`.
    pub fn monomial(exp: Exponent, c: i64, p: u32) -> Self {
        let n = exp.len();
        let mut out = Self::zero(p, n);
        let c = field::reduce(c, p);
        if c != 0 {
            out.terms.insert(exp, c);
        }
        out
    }

    /// The variable `x_{i+1}` (indices are 0-based).
    pub fn var(i: usize, p: u32, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut e = vec![0; n];
        e[i] = 1;
        Ok(Self::monomial(e, 1, p))
    }

    pub fn from_terms<I>(p: u32, n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        let mut out = Self::zero(p, n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length mismatch");
            out.add_term(e, field::reduce(c, p));
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = field::add(*v, c, p);
                if *v == 0 {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, u32)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coeff(&self, e: &[u32]) -> u32 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| total(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total(e) == 0)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, u32)> {
        self.terms.iter().next_back().map(|(e, c)| (e, *c))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::ModulusMismatch(format!(
                "(p={}, n={}) vs (p={}, n={})",
                self.p, self.n, other.p, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), field::neg(*c, self.p));
        }
        Ok(out)
    }

    /// Product with the default degree cap.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_DEGREE_CAP)
    }

    pub fn mul_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        self.check_ring(other)?;
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            if a + b > cap {
                return Err(Error::DegreeOverflow { degree: a + b, cap });
            }
        }
        let p = self.p;
        let mut out = Self::zero(p, self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, field::mul(*ca, *cb, p));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        let mut out = Self::zero(self.p, self.n);
        if c == 0 {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), field::mul(*v, c, self.p));
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        let mut out = Self::zero(self.p, self.n);
        for (t, c) in &self.terms {
            let s: Exponent = t.iter().zip(e).map(|(a, b)| a + b).collect();
            out.terms.insert(s, *c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.p, self.n);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative in `x_{i+1}`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let p = self.p;
        let mut out = Self::zero(p, self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = (e[i] as u64 % p as u64) as u32;
            let v = field::mul(*c, k, p);
            if v == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.terms.insert(d, v);
        }
        Ok(out)
    }

    /// Exact division test: `Some(q)` with `self = q * divisor` when the
    /// divisor divides `self`, `None` otherwise.
    pub fn divide_by(&self, divisor: &Self) -> Result<Option<Self>> {
        divides(divisor, self)
    }

    /// Rescales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(field::inv(c, self.p).expect("nonzero leading coefficient")),
        }
    }

    pub fn homogeneous_components(&self) -> Vec<(u32, MultiPoly)> {
        homogeneous_components(self)
    }

    /// Re-embeds into `n_new` variables, placing `x_{i+1}` at `x_{offset+i+1}`.
    pub fn embed(&self, n_new: usize, offset: usize) -> Self {
        assert!(offset + self.n <= n_new, "embedding does not fit");
        let mut out = Self::zero(self.p, n_new);
        for (e, c) in &self.terms {
            let mut f = vec![0; n_new];
            f[offset..offset + self.n].copy_from_slice(e);
            out.terms.insert(f, *c);
        }
        out
    }

    /// Drops the variables outside `offset..offset+n_new`; every term must
    /// avoid them.
    pub fn restrict(&self, n_new: usize, offset: usize) -> Option<Self> {
        let mut out = Self::zero(self.p, n_new);
        for (e, c) in &self.terms {
            let outside = e
                .iter()
                .enumerate()
                .any(|(i, v)| *v != 0 && !(offset..offset + n_new).contains(&i));
            if outside {
                return None;
            }
            out.terms.insert(e[offset..offset + n_new].to_vec(), *c);
        }
        Some(out)
    }

    /// Renders with the given variable names; the leading term comes first.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            let s = match (factors.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => factors.join("*"),
                (false, c) => format!("{}*{}", c, factors.join("*")),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Default variable names `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.n)))
    }
}

/// Exact product; fails on mismatched rings or degree overflow.
pub fn poly_mul(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    f.try_mul(g)
}

pub fn partial_derivative(f: &MultiPoly, i: usize) -> Result<MultiPoly> {
    f.partial_derivative(i)
}

/// Decides whether `f` divides `g` by lex division with the single divisor
/// `f`; `{f}` is a Groebner basis of `(f)`, so a zero remainder is exact.
pub fn divides(f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    f.check_ring(g)?;
    let Some((lf, cf)) = f.leading_term() else {
        return Err(Error::ZeroDivisor);
    };
    let lf = lf.clone();
    let p = f.p;
    let inv_cf = field::inv(cf, p)?;
    let mut rem = g.clone();
    let mut quot = MultiPoly::zero(p, f.n);
    while let Some((lr, cr)) = rem.leading_term() {
        if lr.iter().zip(&lf).any(|(a, b)| a < b) {
            return Ok(None);
        }
        let e: Exponent = lr.iter().zip(&lf).map(|(a, b)| a - b).collect();
        let c = field::mul(cr, inv_cf, p);
        quot.add_term(e.clone(), c);
        rem = rem.try_sub(&f.shift(&e).scale(c))?;
    }
    Ok(Some(quot))
}

pub fn homogeneous_components(f: &MultiPoly) -> Vec<(u32, MultiPoly)> {
    let mut by_degree: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    for (e, c) in &f.terms {
        by_degree
            .entry(total(e))
            .or_insert_with(|| MultiPoly::zero(f.p, f.n))
            .terms
            .insert(e.clone(), *c);
    }
    by_degree.into_iter().collect()
}

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// lex order (so `x1^d` comes first).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    // binom(d + n - 1, n - 1)
    let k = (n - 1) as u64;
    let mut acc: u64 = 1;
    for i in 1..=k {
        acc = acc * (d as u64 + i) / i;
    }
    acc
}

/// Monomials of total degree at most `d`, grouped by increasing degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

fn expect_ok<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("polynomial operator failed: {e}"),
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        expect_ok(self.try_add(rhs))
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        expect_ok(self.try_sub(rhs))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        expect_ok(self.try_mul(rhs))
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(self.p - 1)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

// --- text parsing -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, names: &[String]) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("integer literal too large: {lit}")))?;
                out.push(Tok::Num(v));
            }
            _ => {
                // longest variable name matching at this position
                let rest: String = chars[i..].iter().collect();
                let best = names
                    .iter()
                    .enumerate()
                    .filter(|(_, nm)| !nm.is_empty() && rest.starts_with(nm.as_str()))
                    .max_by_key(|(_, nm)| nm.len());
                match best {
                    Some((idx, nm)) => {
                        out.push(Tok::Var(idx));
                        i += nm.chars().count();
                    }
                    None => {
                        return Err(Error::Parse(format!(
                            "unexpected input at '{}'",
                            rest.chars().take(12).collect::<String>()
                        )))
                    }
                }
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    p: u32,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.p, self.n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.next() else {
                        return Err(Error::Parse("expected an integer after '/'".into()));
                    };
                    let d = (d % self.p as u64) as u32;
                    let inv = field::inv(d, self.p)
                        .map_err(|_| Error::Parse(format!("division by {d} which is 0 mod {}", self.p)))?;
                    acc = acc.scale(inv);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.next() else {
                return Err(Error::Parse("expected an integer exponent after '^'".into()));
            };
            let e = u32::try_from(e)
                .ok()
                .filter(|e| *e <= DEFAULT_DEGREE_CAP)
                .ok_or(Error::DegreeOverflow { degree: u32::MAX, cap: DEFAULT_DEGREE_CAP })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(MultiPoly::constant((v % self.p as u64) as i64, self.p, self.n)),
            Some(Tok::Var(i)) => MultiPoly::var(i, self.p, self.n),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            Some(Tok::Minus) => Ok(-&self.atom()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial over the named variables; coefficients are reduced
/// mod `p` and `a/b` coefficients are read as `a * b^-1`.
pub fn parse_poly(s: &str, names: &[String], p: u32) -> Result<MultiPoly> {
    let toks = tokenize(s, names)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser { toks: &toks, pos: 0, p, n: names.len() };
    let out = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input after token {}", parser.pos)));
    }
    Ok(out)
}

/// Parses with the default names `x1..xn`.
pub fn parse(s: &str, n: usize, p: u32) -> Result<MultiPoly> {
    parse_poly(s, &default_names(n), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
        parse(s, n, p).unwrap()
    }

    #[test]
    fn product_examples() {
        let x1 = pp("x1", 2, 5);
        assert!(poly_mul(&x1, &MultiPoly::zero(5, 2)).unwrap().is_zero());
        let s = pp("x1 + x2", 2, 2);
        assert_eq!(&s * &s, pp("x1^2 + x2^2", 2, 2));
        assert_eq!(&x1 * &pp("x2^2", 2, 5), pp("x1*x2^2", 2, 5));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = pp("x1", 2, 5);
        let b = pp("x1", 2, 7);
        assert!(matches!(poly_mul(&a, &b), Err(Error::ModulusMismatch(_))));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(pp("x1^3", 1, 5).partial_derivative(0).unwrap(), pp("3*x1^2", 1, 5));
        assert!(pp("x1^3", 1, 3).partial_derivative(0).unwrap().is_zero());
        assert_eq!(pp("x1^2*x2", 2, 5).partial_derivative(1).unwrap(), pp("x1^2", 2, 5));
        assert_eq!(
            pp("x1", 2, 5).partial_derivative(2),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn divides_examples() {
        let x1 = pp("x1", 2, 5);
        let q = divides(&x1, &pp("x1^2 + 2x1x2", 2, 5)).unwrap().unwrap();
        assert_eq!(q, pp("x1 + 2*x2", 2, 5));
        let g = pp("x1 + x2^3", 2, 5);
        assert_eq!(divides(&g, &MultiPoly::zero(5, 2)).unwrap(), Some(MultiPoly::zero(5, 2)));
        assert_eq!(divides(&x1, &pp("x2^2", 2, 5)).unwrap(), None);
        assert_eq!(divides(&MultiPoly::zero(5, 2), &x1), Err(Error::ZeroDivisor));
    }

    #[test]
    fn components() {
        assert_eq!(
            homogeneous_components(&pp("x1^2 + x1x2", 2, 5)),
            vec![(2, pp("x1^2 + x1*x2", 2, 5))]
        );
        assert_eq!(
            homogeneous_components(&pp("x1 + x1^3", 2, 5)),
            vec![(1, pp("x1", 2, 5)), (3, pp("x1^3", 2, 5))]
        );
        assert!(homogeneous_components(&MultiPoly::zero(5, 2)).is_empty());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = pp("x1^3 + 2*x2^2*x3", 3, 5);
        assert_eq!(f.to_string(), "x1^3 + 2*x2^2*x3");
        assert_eq!(pp(&f.to_string(), 3, 5), f);
        // negative and fractional coefficients reduce mod p
        assert_eq!(pp("-x1", 1, 5), pp("4x1", 1, 5));
        assert_eq!(pp("1/3*x1", 1, 5), pp("2*x1", 1, 5));
        assert_eq!(pp("x1(x1+x2)", 2, 5), pp("x1^2 + x1x2", 2, 5));
        assert!(parse("x1 + y", 2, 5).is_err());
        assert!(parse("", 2, 5).is_err());
        assert!(parse("x1/5", 2, 5).is_err());
    }

    #[test]
    fn custom_names_prefer_longest_match() {
        let names: Vec<String> = (1..=11).map(|i| format!("x{i}")).collect();
        let f = parse_poly("x11*x1", &names, 7).unwrap();
        let mut e = vec![0; 11];
        e[0] = 1;
        e[10] = 1;
        assert_eq!(f, MultiPoly::monomial(e, 1, 7));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        for n in 1..4 {
            for d in 0..6 {
                assert_eq!(monomials_of_degree(n, d).len() as u64, count_monomials(n, d));
            }
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = pp("x1^40", 1, 5);
        assert_eq!(f.try_mul(&f), Err(Error::DegreeOverflow { degree: 80, cap: 64 }));
    }

    fn arb_poly(n: usize, p: u32, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0..=max_deg, n), 0..p as i64), 0..5).prop_map(
            move |ts| {
                let ts = ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg);
                MultiPoly::from_terms(p, n, ts)
            },
        )
    }

    /// Brute force: try every quotient with coefficients in F_p supported on
    /// monomials of degree <= deg g - deg f.
    fn naive_divides(f: &MultiPoly, g: &MultiPoly) -> bool {
        if g.is_zero() {
            return true;
        }
        let (Some(df), Some(dg)) = (f.total_degree(), g.total_degree()) else {
            return false;
        };
        if dg < df {
            return false;
        }
        let mons = monomials_up_to(f.n(), dg - df);
        let p = f.p() as u64;
        let total = p.pow(mons.len() as u32);
        (0..total).any(|mut code| {
            let mut q = MultiPoly::zero(f.p(), f.n());
            for m in &mons {
                q.add_term(m.clone(), (code % p) as u32);
                code /= p;
            }
            &q * f == *g
        })
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(
            f in arb_poly(3, 5, 3), g in arb_poly(3, 5, 3), h in arb_poly(3, 5, 3)
        ) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn leibniz(f in arb_poly(3, 5, 3), g in arb_poly(3, 5, 3), i in 0usize..3) {
            let lhs = (&f * &g).partial_derivative(i).unwrap();
            let rhs = &(&f.partial_derivative(i).unwrap() * &g) + &(&f * &g.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frobenius_kills_derivatives(f in arb_poly(2, 3, 2), i in 0usize..2) {
            let fp = f.pow(3).unwrap();
            prop_assert!(fp.partial_derivative(i).unwrap().is_zero());
        }

        #[test]
        fn divides_returns_exact_quotient(f in arb_poly(3, 5, 2), q in arb_poly(3, 5, 2)) {
            prop_assume!(!f.is_zero());
            let g = &f * &q;
            let got = divides(&f, &g).unwrap();
            prop_assert!(got.is_some());
            prop_assert_eq!(&f * &got.unwrap(), g);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn divides_agrees_with_naive_oracle(f in arb_poly(2, 3, 1), g in arb_poly(2, 3, 2)) {
            prop_assume!(!f.is_zero());
            let fast = divides(&f, &g).unwrap();
            prop_assert_eq!(fast.is_some(), naive_divides(&f, &g));
            if let Some(q) = fast {
                prop_assert_eq!(&f * &q, g);
            }
        }
    }
}
