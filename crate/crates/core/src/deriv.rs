//! Derivations of k[x_1, ..., x_n], stored by their generator images.

use std::fmt;

use crate::error::{Error, Result};
use crate::field;
use crate::linalg::Matrix;
use crate::poly::{default_names, MultiPoly};
use crate::structure::{PoissonStructure, Provenance};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    p: u32,
    n: usize,
    images: Vec<MultiPoly>,
}

impl Derivation {
    /// Builds from generator images; all images must share one ring.
    pub fn new(images: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = images.first() else {
            return Err(Error::Invalid("a derivation needs at least one generator".into()));
        };
        let (p, n) = (first.p(), first.n());
        if n != images.len() {
            return Err(Error::ArityMismatch { expected: n, got: images.len() });
        }
        if images.iter().any(|f| f.p() != p || f.n() != n) {
            return Err(Error::ModulusMismatch("derivation images".into()));
        }
        Ok(Self { p, n, images })
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Self { p, n, images: vec![MultiPoly::zero(p, n); n] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, i: usize) -> &MultiPoly {
        &self.images[i]
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(MultiPoly::is_zero)
    }

    /// Every image is zero or homogeneous of degree 1.
    pub fn is_graded_degree_zero(&self) -> bool {
        self.images.iter().all(|f| f.is_zero() || f.homogeneous_degree() == Some(1))
    }

    /// Leibniz extension: `d(f) = sum_i (df/dx_i) d(x_i)`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.n() != self.n || f.p() != self.p {
            return Err(Error::ArityMismatch { expected: self.n, got: f.n() });
        }
        let mut acc = MultiPoly::zero(self.p, self.n);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let fi = f.partial_derivative(i)?;
            if !fi.is_zero() {
                acc = acc.try_add(&fi.try_mul(img)?)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: u32) -> Self {
        Self { p: self.p, n: self.n, images: self.images.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::ArityMismatch { expected: self.n, got: other.n });
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Self { p: self.p, n: self.n, images })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(self.p - 1))
    }

    /// Matrix on A_1: column j holds the coefficients of `d(x_j)`.
    pub fn linear_matrix(&self) -> Result<Matrix> {
        if !self.is_graded_degree_zero() {
            return Err(Error::NotGradedDegreeZero);
        }
        let mut m = Matrix::zeros(self.p, self.n, self.n);
        for (j, img) in self.images.iter().enumerate() {
            for (e, c) in img.terms() {
                let i = e.iter().position(|&k| k == 1).expect("degree-1 term");
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(i, f)| format!("{} -> {}", names[i], f.fmt_with(names))).collect();
        parts.join(", ")
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.n)))
    }
}

pub fn apply(d: &Derivation, f: &MultiPoly) -> Result<MultiPoly> {
    d.apply(f)
}

/// The Euler derivation `x_i -> x_i`.
pub fn euler(ps: &PoissonStructure) -> Derivation {
    Derivation { p: ps.p(), n: ps.n(), images: (0..ps.n()).map(|i| ps.var(i)).collect() }
}

/// Modular derivation with `phi(x_i) = sum_j d/dx_j {x_i, x_j}`, the
/// divergence of the Hamiltonian vector field of `x_i`. For a skew matrix
/// this gives `phi(x_i) = (sum_j c_ij) x_i`.
pub fn modular_derivation(ps: &PoissonStructure) -> Derivation {
    let (p, n) = (ps.p(), ps.n());
    let images = (0..n)
        .map(|i| {
            let mut acc = MultiPoly::zero(p, n);
            for j in 0..n {
                let h = ps.generator_bracket(i, j);
                if !h.is_zero() {
                    acc = &acc + &h.partial_derivative(j).expect("index in range");
                }
            }
            acc
        })
        .collect();
    Derivation { p, n, images }
}

/// Skew shortcut for the modular derivation: `(row sum of c) * x_i`.
pub fn modular_derivation_skew(ps: &PoissonStructure) -> Option<Derivation> {
    let Provenance::Skew(c) = ps.provenance() else {
        return None;
    };
    let images = c.row_sums().into_iter().enumerate().map(|(i, s)| ps.var(i).scale(s)).collect();
    Some(Derivation { p: ps.p(), n: ps.n(), images })
}

pub fn is_unimodular(ps: &PoissonStructure) -> bool {
    if let Provenance::Skew(c) = ps.provenance() {
        return c.row_sums().iter().all(|&s| s == 0);
    }
    modular_derivation(ps).is_zero()
}

/// `div(d) = sum_i d(d(x_i))/dx_i`.
pub fn divergence(d: &Derivation) -> MultiPoly {
    let mut acc = MultiPoly::zero(d.p, d.n);
    for (i, img) in d.images.iter().enumerate() {
        acc = &acc + &img.partial_derivative(i).expect("index in range");
    }
    acc
}

fn check_arity(ps: &PoissonStructure, d: &Derivation) -> Result<()> {
    if d.n != ps.n() || d.p != ps.p() {
        return Err(Error::ArityMismatch { expected: ps.n(), got: d.n });
    }
    Ok(())
}

/// `d({x_i, x_j}) = {d(x_i), x_j} + {x_i, d(x_j)}` for all generator pairs.
pub fn is_poisson_derivation(ps: &PoissonStructure, d: &Derivation) -> Result<bool> {
    check_arity(ps, d)?;
    for (i, j, h) in ps.pairs() {
        let lhs = d.apply(h)?;
        let rhs = ps
            .bracket(d.image(i), &ps.var(j))?
            .try_add(&ps.bracket(&ps.var(i), d.image(j))?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition on `beta` for `A[t; alpha, beta]` with `{a, t} = alpha(a) t + beta(a)`
/// to satisfy Jacobi:
/// `beta({a,b}) = {beta(a), b} + {a, beta(b)} + beta(a) alpha(b) - alpha(a) beta(b)`.
pub fn is_alpha_derivation(ps: &PoissonStructure, alpha: &Derivation, beta: &Derivation) -> Result<bool> {
    check_arity(ps, alpha)?;
    check_arity(ps, beta)?;
    for i in 0..ps.n() {
        for j in i + 1..ps.n() {
            let h = ps.generator_bracket(i, j);
            let lhs = beta.apply(h)?;
            let rhs = ps
                .bracket(beta.image(i), &ps.var(j))?
                .try_add(&ps.bracket(&ps.var(i), beta.image(j))?)?
                .try_add(&beta.image(i).try_mul(alpha.image(j))?)?
                .try_sub(&alpha.image(i).try_mul(beta.image(j))?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `phi / 3`; rejects characteristic 3.
pub fn modular_third(ps: &PoissonStructure) -> Result<Derivation> {
    if ps.p() == 3 {
        return Err(Error::SmallCharacteristic(3));
    }
    let inv3 = field::inv(3, ps.p())?;
    Ok(modular_derivation(ps).scale(inv3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::structure::{explicit, from_potential, from_skew_matrix, SkewMatrix};

    fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
        parse(s, n, p).unwrap()
    }

    fn jordan(p: u32) -> PoissonStructure {
        explicit(p, 2, &[(0, 1, pp("x1^2", 2, p))]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let ps = PoissonStructure::trivial(5, 2).unwrap();
        let e = euler(&ps);
        assert!(e.apply(&pp("3", 2, 5)).unwrap().is_zero());
        assert_eq!(e.apply(&pp("x1^2x2", 2, 5)).unwrap(), pp("3x1^2x2", 2, 5));
        let d = Derivation::new(vec![MultiPoly::zero(5, 2), pp("-x1", 2, 5)]).unwrap();
        assert_eq!(d.apply(&pp("x1x2", 2, 5)).unwrap(), pp("-x1^2", 2, 5));
        assert!(matches!(d.apply(&pp("x1", 3, 5)), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn euler_examples() {
        let line = PoissonStructure::trivial(5, 1).unwrap();
        assert_eq!(euler(&line).images(), &[pp("x1", 1, 5)]);
        assert!(euler(&line).apply(&pp("x1^5", 1, 5)).unwrap().is_zero());
        let j = jordan(5);
        assert!(is_poisson_derivation(&j, &euler(&j)).unwrap());
    }

    #[test]
    fn modular_examples() {
        let c = SkewMatrix::new(7, &[vec![0, 1, 2], vec![-1, 0, 4], vec![-2, -4, 0]]).unwrap();
        let pc = from_skew_matrix(&c).unwrap();
        let phi = modular_derivation(&pc);
        assert_eq!(phi, modular_derivation_skew(&pc).unwrap());
        assert_eq!(phi.image(0), &pp("3x1", 3, 7));
        assert_eq!(phi.image(1), &pp("3x2", 3, 7));
        assert_eq!(phi.image(2), &pp("-6x3", 3, 7));

        // {x1,x2} = x1^2: phi(x2) = d/dx1 {x2,x1} = -2x1
        let phi = modular_derivation(&jordan(5));
        assert!(phi.image(0).is_zero());
        assert_eq!(phi.image(1), &pp("-2x1", 2, 5));

        let pot = from_potential(&pp("x1^2x3 + x1x2^2", 3, 5)).unwrap();
        assert!(modular_derivation(&pot).is_zero());
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&from_skew_matrix(&SkewMatrix::circulant3(5, 2)).unwrap()));
        let c = SkewMatrix::new(5, &[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(!is_unimodular(&from_skew_matrix(&c).unwrap()));
        assert!(is_unimodular(&PoissonStructure::trivial(5, 3).unwrap()));
    }

    #[test]
    fn divergence_examples() {
        let ps = PoissonStructure::trivial(5, 3).unwrap();
        assert_eq!(divergence(&euler(&ps)), pp("3", 3, 5));
        let d = Derivation::new(vec![MultiPoly::zero(5, 3), MultiPoly::zero(5, 3), pp("x1 + 2x2", 3, 5)]).unwrap();
        assert!(divergence(&d).is_zero());
        assert!(divergence(&Derivation::zero(5, 3)).is_zero());
    }

    #[test]
    fn poisson_derivation_examples() {
        let pot = from_potential(&pp("x1x2(x1+x2)", 3, 5)).unwrap();
        let d = Derivation::new(vec![MultiPoly::zero(5, 3), MultiPoly::zero(5, 3), pp("x1 + 2x2", 3, 5)]).unwrap();
        assert!(is_poisson_derivation(&pot, &d).unwrap());

        let pc = from_skew_matrix(&SkewMatrix::new(5, &[vec![0, 1], vec![-1, 0]]).unwrap()).unwrap();
        let bad = Derivation::new(vec![pp("x2", 2, 5), MultiPoly::zero(5, 2)]).unwrap();
        assert!(!is_poisson_derivation(&pc, &bad).unwrap());
    }

    #[test]
    fn linear_matrix_layout() {
        let d = Derivation::new(vec![MultiPoly::zero(5, 2), pp("-x1", 2, 5)]).unwrap();
        let m = d.linear_matrix().unwrap();
        assert_eq!(m.get(0, 1), 4);
        assert_eq!(m.get(1, 1), 0);
        let nonlinear = Derivation::new(vec![pp("x1^2", 2, 5), MultiPoly::zero(5, 2)]).unwrap();
        assert_eq!(nonlinear.linear_matrix(), Err(Error::NotGradedDegreeZero));
    }

    #[test]
    fn third_of_phi_rejects_p3() {
        assert_eq!(modular_third(&jordan(3)), Err(Error::SmallCharacteristic(3)));
        assert!(modular_third(&jordan(5)).is_ok());
    }
}
