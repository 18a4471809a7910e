//! Cubic potentials in three variables in normal form, their expected
//! centers, the divergence identity and the twist-to-potential pipeline.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::center::oracle::{center_oracle, Caps};
use crate::center::series::{palindrome_check, subalgebra_dims, PalindromeCheck};
use crate::deriv::{self, Derivation};
use crate::error::{Error, Result};
use crate::field;
use crate::loz::{is_poisson_normal, log_ozone_derivation};
use crate::poly::MultiPoly;
use crate::structure::{from_potential, twist, PoissonStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FormId {
    Cube,
    SquareLine,
    ThreeLines,
    TwoLinesDouble,
    LineConic1,
    LineConic2,
    Irr1,
    Irr2,
    Elliptic(u32),
}

impl FormId {
    pub const FIXED: [FormId; 8] = [
        FormId::Cube,
        FormId::SquareLine,
        FormId::ThreeLines,
        FormId::TwoLinesDouble,
        FormId::LineConic1,
        FormId::LineConic2,
        FormId::Irr1,
        FormId::Irr2,
    ];

    /// Product of linear forms (the first six normal forms).
    pub fn reducible(self) -> bool {
        !matches!(self, FormId::Irr1 | FormId::Irr2 | FormId::Elliptic(_))
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::Elliptic(l) => write!(f, "Elliptic({l})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("elliptic") {
            let arg = rest.trim_start_matches([':', '(']).trim_end_matches(')');
            return arg
                .parse()
                .map(FormId::Elliptic)
                .map_err(|_| Error::Parse(format!("bad elliptic parameter in {t:?}")));
        }
        FormId::FIXED
            .into_iter()
            .find(|id| id.to_string().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::Parse(format!("unknown catalog form {t:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialForm {
    pub id: FormId,
    pub omega: MultiPoly,
    pub reducible: bool,
    pub expected_center_gens: Vec<MultiPoly>,
}

impl PotentialForm {
    pub fn p(&self) -> u32 {
        self.omega.p()
    }

    pub fn structure(&self) -> Result<PoissonStructure> {
        from_potential(&self.omega)
    }
}

fn check_characteristic(p: u32) -> Result<()> {
    field::check_prime(p as u64)?;
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    Ok(())
}

fn mono(e: [u32; 3], c: u32, p: u32) -> MultiPoly {
    MultiPoly::monomial(e.to_vec(), c as i64, p)
}

fn sum(p: u32, terms: &[([u32; 3], u32)]) -> MultiPoly {
    terms.iter().fold(MultiPoly::zero(p, 3), |acc, &(e, c)| &acc + &mono(e, c, p))
}

/// `lambda^3 = -1` makes the elliptic form singular.
pub fn elliptic_parameter_valid(lambda: u32, p: u32) -> bool {
    let l = lambda % p;
    field::add(field::pow(l, 3, p), 1, p) != 0
}

/// The form with the given id, or an error for a singular elliptic parameter.
pub fn potential_form(id: FormId, p: u32) -> Result<PotentialForm> {
    check_characteristic(p)?;
    let omega = match id {
        FormId::Cube => sum(p, &[([3, 0, 0], 1)]),
        FormId::SquareLine => sum(p, &[([2, 1, 0], 1)]),
        FormId::ThreeLines => sum(p, &[([1, 1, 1], 2)]),
        FormId::TwoLinesDouble => sum(p, &[([2, 1, 0], 1), ([1, 2, 0], 1)]),
        FormId::LineConic1 => sum(p, &[([3, 0, 0], 1), ([2, 1, 0], 1), ([1, 1, 1], 1)]),
        FormId::LineConic2 => sum(p, &[([2, 0, 1], 1), ([1, 2, 0], 1)]),
        FormId::Irr1 => sum(p, &[([3, 0, 0], 1), ([0, 2, 1], 1)]),
        FormId::Irr2 => sum(p, &[([3, 0, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], 1)]),
        FormId::Elliptic(lambda) => {
            if lambda >= p || !elliptic_parameter_valid(lambda, p) {
                return Err(Error::Invalid(format!("elliptic parameter {lambda} is not allowed mod {p}")));
            }
            let third = field::inv(3, p)?;
            sum(p, &[([3, 0, 0], third), ([0, 3, 0], third), ([0, 0, 3], third), ([1, 1, 1], lambda)])
        }
    };
    let x = |i: usize| MultiPoly::var(i, p, 3).expect("three variables");
    let frob = |i: usize| x(i).pow(p).expect("degree within cap");
    let expected_center_gens = if id == FormId::Cube {
        vec![x(0), frob(1), frob(2)]
    } else {
        vec![frob(0), frob(1), frob(2), omega.monic()]
    };
    Ok(PotentialForm { id, reducible: id.reducible(), omega, expected_center_gens })
}

/// The eight fixed forms followed by every admissible elliptic parameter.
pub fn potential_catalog(p: u32) -> Result<Vec<PotentialForm>> {
    check_characteristic(p)?;
    let ids = FormId::FIXED
        .into_iter()
        .chain((0..p).filter(|&l| elliptic_parameter_valid(l, p)).map(FormId::Elliptic));
    ids.map(|id| potential_form(id, p)).collect()
}

/// Oracle Hilbert function against the subalgebra spanned by a proposed
/// generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterComparison {
    pub oracle: Vec<u64>,
    pub expected: Vec<u64>,
    pub generators_central: bool,
    pub matches: bool,
}

/// Compares the center of `ps` with the subalgebra generated by `gens`, up
/// to degree `max_degree`.
pub fn compare_center(
    ps: &PoissonStructure,
    gens: &[MultiPoly],
    max_degree: u32,
    caps: &Caps,
) -> Result<CenterComparison> {
    let oracle = center_oracle(ps, max_degree, caps)?.hilbert;
    let expected = subalgebra_dims(gens, ps.p(), ps.n(), max_degree)?;
    let mut generators_central = true;
    for g in gens {
        generators_central &= crate::center::is_central(ps, g)?;
    }
    let matches = generators_central && oracle == expected;
    Ok(CenterComparison { oracle, expected, generators_central, matches })
}

pub fn verify_expected_center(form: &PotentialForm, max_degree: u32, caps: &Caps) -> Result<bool> {
    Ok(compare_center(&form.structure()?, &form.expected_center_gens, max_degree, caps)?.matches)
}

/// Verifies every form of the catalog in parallel, in catalog order.
pub fn verify_catalog(forms: &[PotentialForm], max_degree: u32, caps: &Caps) -> Result<Vec<(FormId, bool)>> {
    forms.par_iter().map(|f| Ok((f.id, verify_expected_center(f, max_degree, caps)?))).collect()
}

/// Palindromicity of the oracle Hilbert numerator over `(1 - t^p)^3`.
pub fn center_palindrome(ps: &PoissonStructure, max_degree: u32, caps: &Caps) -> Result<PalindromeCheck> {
    let h = center_oracle(ps, max_degree, caps)?.hilbert;
    Ok(palindrome_check(&h, ps.p(), ps.n()))
}

/// `d(omega) = div(d) omega` for a Poisson derivation `d` of a potential
/// structure.
pub fn verify_div_identity(ps: &PoissonStructure, d: &Derivation) -> Result<bool> {
    let omega = ps.potential().ok_or(Error::NotPotential)?;
    if ps.p() <= 3 {
        return Err(Error::SmallCharacteristic(ps.p()));
    }
    if !deriv::is_poisson_derivation(ps, d)? {
        return Err(Error::NotPoissonDerivation);
    }
    Ok(d.apply(omega)? == deriv::divergence(d).try_mul(omega)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub omega: MultiPoly,
    pub modular: Derivation,
    pub twisted: PoissonStructure,
    pub verified: bool,
}

/// Twists a non-unimodular graded 3-variable structure by a third of its
/// modular derivation and recovers the potential of the (unimodular) twist
/// from `3 omega = x1 h23 + x2 h31 + x3 h12`. Verified means: the twist is
/// unimodular and equals the potential structure of `omega`, and `omega` is
/// normal in the input with log-ozone derivation equal to the modular one.
pub fn modular_potential_pipeline(ps: &PoissonStructure) -> Result<PipelineResult> {
    if ps.n() != 3 {
        return Err(Error::WrongArity { expected: 3, got: ps.n() });
    }
    let p = ps.p();
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    if !ps.is_graded() {
        return Err(Error::NotGraded);
    }
    if deriv::is_unimodular(ps) {
        return Err(Error::AlreadyUnimodular);
    }
    let modular = deriv::modular_derivation(ps);
    let twisted = twist(ps, &deriv::modular_third(ps)?)?;
    let h = |i: usize, j: usize| twisted.generator_bracket(i, j).clone();
    let sum = ps
        .var(0)
        .try_mul(&h(1, 2))?
        .try_add(&ps.var(1).try_mul(&h(2, 0))?)?
        .try_add(&ps.var(2).try_mul(&h(0, 1))?)?;
    let omega = sum.scale(field::inv(3, p)?);
    let mut verified = deriv::is_unimodular(&twisted) && !omega.is_zero();
    if verified {
        let from_omega = from_potential(&omega)?;
        verified = (0..3).all(|i| (0..3).all(|j| from_omega.generator_bracket(i, j) == twisted.generator_bracket(i, j)))
            && is_poisson_normal(ps, &omega)?
            && log_ozone_derivation(ps, &omega)? == modular;
    }
    Ok(PipelineResult { omega, modular, twisted, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::euler;
    use crate::poly::parse;
    use crate::structure::{explicit, from_skew_matrix, SkewMatrix};

    fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
        parse(s, n, p).unwrap()
    }

    #[test]
    fn catalog_shape() {
        let c = potential_catalog(5).unwrap();
        // lambda = 4 is the only cube root of -1 mod 5
        assert_eq!(c.len(), 12);
        assert_eq!(c.iter().filter(|f| f.reducible).count(), 6);
        assert_eq!(c[0].expected_center_gens, vec![pp("x1", 3, 5), pp("x2^5", 3, 5), pp("x3^5", 3, 5)]);
        let seven = potential_form(FormId::ThreeLines, 7).unwrap();
        assert_eq!(seven.expected_center_gens[3], pp("x1x2x3", 3, 7));
        assert_eq!(potential_catalog(3), Err(Error::SmallCharacteristic(3)));
        assert!(potential_form(FormId::Elliptic(4), 5).is_err());
        for f in &c {
            assert_eq!(f.omega.homogeneous_degree(), Some(3));
            assert!(deriv::is_unimodular(&f.structure().unwrap()));
        }
    }

    #[test]
    fn form_ids_round_trip() {
        for id in FormId::FIXED.into_iter().chain([FormId::Elliptic(2)]) {
            assert_eq!(id.to_string().parse::<FormId>().unwrap(), id);
        }
        assert_eq!("elliptic:3".parse::<FormId>().unwrap(), FormId::Elliptic(3));
        assert!("Quartic".parse::<FormId>().is_err());
    }

    #[test]
    fn expected_centers_small() {
        let caps = Caps::default();
        for id in [FormId::Cube, FormId::Irr1] {
            assert!(verify_expected_center(&potential_form(id, 5).unwrap(), 10, &caps).unwrap(), "{id}");
        }
    }

    #[test]
    fn characteristic_three_counterexample() {
        let caps = Caps::default();
        let s = from_potential(&pp("x1^2x2 + x1x2^2", 3, 3)).unwrap();
        let naive: Vec<MultiPoly> = ["x1^3", "x2^3", "x3^3", "x1^2x2 + x1x2^2"].iter().map(|g| pp(g, 3, 3)).collect();
        assert!(!compare_center(&s, &naive, 12, &caps).unwrap().matches);
        let right: Vec<MultiPoly> = ["x1^3", "x2^3", "x3^3", "x1^2x2", "x1x2^2"].iter().map(|g| pp(g, 3, 3)).collect();
        assert!(compare_center(&s, &right, 12, &caps).unwrap().matches);
        let pal = center_palindrome(&s, 15, &caps).unwrap();
        assert_eq!(pal.numerator, vec![1, 0, 0, 2]);
        assert!(!pal.palindromic);
    }

    #[test]
    fn div_identity_examples() {
        let s = from_potential(&pp("x1x2(x1+x2)", 3, 5)).unwrap();
        assert!(verify_div_identity(&s, &euler(&s)).unwrap());
        assert!(verify_div_identity(&s, &Derivation::zero(5, 3)).unwrap());
        let d = log_ozone_derivation(&s, &pp("x1", 3, 5)).unwrap();
        assert!(verify_div_identity(&s, &d).unwrap());
        let bogus = Derivation::new(vec![pp("x2", 3, 5), MultiPoly::zero(5, 3), MultiPoly::zero(5, 3)]).unwrap();
        assert_eq!(verify_div_identity(&s, &bogus), Err(Error::NotPoissonDerivation));
    }

    #[test]
    fn pipeline_examples() {
        let a = 2;
        let c = SkewMatrix::new(5, &[vec![0, a, 0], vec![-a, 0, 0], vec![0, 0, 0]]).unwrap();
        let r = modular_potential_pipeline(&from_skew_matrix(&c).unwrap()).unwrap();
        let third = field::inv(3, 5).unwrap();
        assert_eq!(r.omega, pp("x1x2x3", 3, 5).scale(field::mul(a as u32, third, 5)));
        assert!(r.verified);

        let jordan = explicit(5, 3, &[(0, 1, pp("x1^2", 3, 5))]).unwrap();
        let r = modular_potential_pipeline(&jordan).unwrap();
        assert_eq!(r.omega.monic(), pp("x1^2x3", 3, 5));
        assert!(r.verified);

        let unimodular = potential_form(FormId::Irr1, 5).unwrap().structure().unwrap();
        assert_eq!(modular_potential_pipeline(&unimodular), Err(Error::AlreadyUnimodular));
    }
}
