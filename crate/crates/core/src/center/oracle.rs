//! Center oracle: in each degree, the kernel of `f -> ({x_1, f}, ..., {x_n, f})`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{CenterReport, Engine};
use crate::error::{Error, Result};
use crate::linalg::{span_basis, span_dim, Matrix};
use crate::poly::{monomials_of_degree, monomials_up_to, Exponent, MultiPoly};
use crate::structure::{BracketDegree, PoissonStructure};

/// Hard ceiling on any requested degree bound.
pub const MAX_DEGREE_BOUND: u32 = 64;

/// Resource limits shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of matrix columns (domain dimension) per solve.
    pub columns: usize,
    /// Maximum size of an enumerated search space.
    pub candidates: u64,
    /// Maximum number of kernel vectors materialised by the monoid engine.
    pub kernel: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self { columns: 5000, candidates: 10_000_000, kernel: 1_000_000 }
    }
}

pub fn check_degree_bound(bound: u32) -> Result<()> {
    if bound > MAX_DEGREE_BOUND {
        return Err(Error::DegreeBoundTooLarge { bound, cap: MAX_DEGREE_BOUND });
    }
    Ok(())
}

/// Kernel of a family of linear maps on the span of `domain`. `images`
/// returns the image of one monomial under every map in the family.
pub(crate) fn kernel_on<F>(p: u32, n: usize, domain: &[Exponent], images: F) -> Result<Vec<MultiPoly>>
where
    F: Fn(&MultiPoly) -> Result<Vec<MultiPoly>>,
{
    let mut rows: HashMap<(usize, Exponent), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, u32)> = Vec::new();
    for (col, e) in domain.iter().enumerate() {
        let m = MultiPoly::monomial(e.clone(), 1, p);
        for (k, img) in images(&m)?.into_iter().enumerate() {
            for (t, c) in img.terms() {
                let next = rows.len();
                let r = *rows.entry((k, t.clone())).or_insert(next);
                entries.push((r, col, c));
            }
        }
    }
    let mut mat = Matrix::zeros(p, rows.len().max(1), domain.len());
    for (r, c, v) in entries {
        mat.set(r, c, v);
    }
    Ok(mat
        .nullspace()
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(
                p,
                n,
                v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (domain[i].clone(), c as i64)),
            )
        })
        .collect())
}

/// True iff `{x_i, f} = 0` for every generator.
pub fn is_central(ps: &PoissonStructure, f: &MultiPoly) -> Result<bool> {
    for i in 0..ps.n() {
        if !ps.bracket_with_generator(i, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the degree-`d` piece can be solved on its own.
pub(crate) fn is_graded_bracket(ps: &PoissonStructure) -> bool {
    !matches!(ps.bracket_degree(), BracketDegree::Inhomogeneous { .. })
}

/// Domain monomials for degree `d`: `A_d` for homogeneous brackets, the
/// filtration piece `F_d` otherwise.
pub(crate) fn domain_for(n: usize, d: u32, graded: bool) -> Vec<Exponent> {
    if graded {
        monomials_of_degree(n, d)
    } else {
        monomials_up_to(n, d)
    }
}

/// Degreewise kernel of a family of operators; shared by the center and
/// C_loz computations.
pub(crate) fn degreewise_kernel<F>(
    p: u32,
    n: usize,
    max_degree: u32,
    graded: bool,
    caps: &Caps,
    engine: Engine,
    images: F,
) -> Result<CenterReport>
where
    F: Fn(&MultiPoly) -> Result<Vec<MultiPoly>> + Sync,
{
    check_degree_bound(max_degree)?;
    let widest = domain_for(n, max_degree, graded).len();
    if widest > caps.columns {
        return Err(Error::CapExceeded { what: format!("matrix with {widest} columns"), cap: caps.columns as u64 });
    }
    let basis: Vec<Vec<MultiPoly>> = (0..=max_degree)
        .into_par_iter()
        .map(|d| kernel_on(p, n, &domain_for(n, d, graded), &images))
        .collect::<Result<_>>()?;
    let hilbert: Vec<u64> = if graded {
        basis.iter().map(|b| b.len() as u64).collect()
    } else {
        let dims: Vec<u64> = basis.iter().map(|b| b.len() as u64).collect();
        (0..dims.len()).map(|d| if d == 0 { dims[0] } else { dims[d] - dims[d - 1] }).collect()
    };
    let generators = pick_generators(p, n, &basis, graded)?;
    Ok(CenterReport { engine, generators, hilbert, basis, max_degree, filtered: !graded })
}

/// Chooses algebra generators degree by degree: a basis element is kept when
/// it is not already a combination of products of earlier choices.
fn pick_generators(p: u32, n: usize, basis: &[Vec<MultiPoly>], graded: bool) -> Result<Vec<MultiPoly>> {
    let mut gens: Vec<(u32, MultiPoly)> = Vec::new();
    // span[d]: basis of the part of the generated subalgebra in piece d
    let mut span: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(p, n)]];
    for (d, level) in basis.iter().enumerate().skip(1) {
        let d = d as u32;
        let domain = domain_for(n, d, graded);
        let index: HashMap<&Exponent, usize> = domain.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let coords = |f: &MultiPoly| {
            let mut v = vec![0u32; domain.len()];
            for (e, c) in f.terms() {
                v[index[e]] = c;
            }
            v
        };
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        for (e, g) in &gens {
            if *e <= d {
                for s in &span[(d - e) as usize] {
                    vectors.push(coords(&g.try_mul(s)?));
                }
            }
        }
        if !graded {
            vectors.extend(span[d as usize - 1].iter().map(&coords));
        }
        let mut dim = span_dim(p, domain.len(), &vectors);
        for z in level {
            vectors.push(coords(z));
            let nd = span_dim(p, domain.len(), &vectors);
            if nd > dim {
                dim = nd;
                gens.push((d, z.monic()));
            } else {
                vectors.pop();
            }
        }
        let reduced = span_basis(p, domain.len(), &vectors);
        span.push(
            reduced
                .iter()
                .map(|v| {
                    MultiPoly::from_terms(
                        p,
                        n,
                        v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (domain[i].clone(), c as i64)),
                    )
                })
                .collect(),
        );
    }
    Ok(gens.into_iter().map(|(_, g)| g).collect())
}

/// Center of `ps` degree by degree up to `max_degree`. Homogeneous brackets
/// are solved one degree at a time; inhomogeneous ones on each filtration
/// piece, reporting the associated graded dimensions.
pub fn center_oracle(ps: &PoissonStructure, max_degree: u32, caps: &Caps) -> Result<CenterReport> {
    let graded = is_graded_bracket(ps);
    let n = ps.n();
    degreewise_kernel(ps.p(), n, max_degree, graded, caps, Engine::Oracle, |m| {
        (0..n).map(|i| ps.bracket_with_generator(i, m)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{count_monomials, parse};
    use crate::structure::{explicit, from_potential, from_skew_matrix, SkewMatrix};

    fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
        parse(s, n, p).unwrap()
    }

    #[test]
    fn jordan_plane_center() {
        let j = explicit(3, 2, &[(0, 1, pp("x1^2", 2, 3))]).unwrap();
        let r = center_oracle(&j, 9, &Caps::default()).unwrap();
        assert_eq!(r.hilbert, vec![1, 0, 0, 2, 0, 0, 3, 0, 0, 4]);
        assert_eq!(r.generators, vec![pp("x1^3", 2, 3), pp("x2^3", 2, 3)]);
    }

    #[test]
    fn potential_center_at_p3() {
        let s = from_potential(&pp("x1x2(x1+x2)", 3, 3)).unwrap();
        let r = center_oracle(&s, 3, &Caps::default()).unwrap();
        assert_eq!(r.hilbert[3], 5);
        let mut got = r.basis[3].clone();
        got.sort();
        let mut want: Vec<MultiPoly> =
            ["x1^3", "x2^3", "x3^3", "x1^2x2", "x1x2^2"].iter().map(|s| pp(s, 3, 3)).collect();
        want.sort();
        let space = super::super::series::DegreeSpace::new(3, 3);
        let a: Vec<Vec<u32>> = got.iter().map(|f| space.coords(f)).collect();
        let b: Vec<Vec<u32>> = want.iter().map(|f| space.coords(f)).collect();
        assert!(super::super::series::contained_in(3, 10, &a, &b));
    }

    #[test]
    fn trivial_center_is_everything() {
        let t = PoissonStructure::trivial(5, 3).unwrap();
        let r = center_oracle(&t, 4, &Caps::default()).unwrap();
        for d in 0..=4 {
            assert_eq!(r.hilbert[d as usize], count_monomials(3, d));
        }
        assert_eq!(r.generators.len(), 3);
    }

    #[test]
    fn is_central_examples() {
        let s = from_potential(&pp("x1x2(x1+x2)", 3, 5)).unwrap();
        assert!(is_central(&s, &pp("x1^2x2 + x1x2^2", 3, 5)).unwrap());
        assert!(is_central(&s, &pp("x2^5", 3, 5)).unwrap());
        assert!(!is_central(&s, &pp("x3", 3, 5)).unwrap());
    }

    #[test]
    fn filtered_center_of_inhomogeneous_bracket() {
        // {x1, x2} = x1: center is k[x1^p, x2^p]... up to the filtration
        let s = explicit(3, 2, &[(0, 1, pp("x1 + x1^2", 2, 3))]).unwrap();
        let r = center_oracle(&s, 6, &Caps::default()).unwrap();
        assert!(r.filtered);
        assert_eq!(r.hilbert[0], 1);
        for z in r.basis.last().unwrap() {
            assert!(is_central(&s, z).unwrap());
        }
    }

    #[test]
    fn caps_are_enforced() {
        let t = from_skew_matrix(&SkewMatrix::zero(5, 3)).unwrap();
        let tight = Caps { columns: 10, ..Caps::default() };
        assert!(matches!(center_oracle(&t, 6, &tight), Err(Error::CapExceeded { .. })));
        assert!(matches!(center_oracle(&t, 65, &Caps::default()), Err(Error::DegreeBoundTooLarge { .. })));
    }
}
