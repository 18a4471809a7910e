//! Dense univariate polynomials over F_p, used for minimal polynomials and
//! Hilbert-series numerators.

use std::fmt;

use crate::error::{Error, Result};
use crate::field;

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn new(p: u32, coeffs: Vec<i64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field::reduce(c, p)).collect();
        Self::from_residues(p, coeffs)
    }

    pub fn from_residues(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field::mul(c, (i as u64 % p as u64) as u32, p))
            .collect();
        Self::from_residues(p, c)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = field::inv(lc, self.p).expect("nonzero leading coefficient");
                let c = self.coeffs.iter().map(|&c| field::mul(c, inv, self.p)).collect();
                Self::from_residues(self.p, c)
            }
        }
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &Self) -> Result<Self> {
        let Some(dd) = d.degree() else {
            return Err(Error::ZeroDivisor);
        };
        let p = self.p;
        let inv = field::inv(d.coeffs[dd], p)?;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let c = field::mul(r[top], inv, p);
            if c != 0 {
                let shift = top - dd;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] = field::sub(r[shift + i], field::mul(c, dc, p), p);
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok(Self::from_residues(p, r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field::add(out[i + j], field::mul(a, b, p), p);
            }
        }
        Self::from_residues(p, out)
    }
}

/// True iff `gcd(m, m')` is constant. A nonconstant `m` with `m' = 0` is a
/// p-th power and therefore not squarefree.
pub fn squarefree(m: &UniPoly) -> Result<bool> {
    let Some(deg) = m.degree() else {
        return Err(Error::ZeroInput);
    };
    if deg == 0 {
        return Ok(true);
    }
    let d = m.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(m.gcd(&d).degree() == Some(0))
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}
