//! JSON descriptions of Poisson structures and derivations.
//!
//! ```json
//! {"schema": 1, "p": 3, "bracket": {"kind": "skew", "matrix": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]}}
//! ```
//!
//! Bracket kinds: `skew` (integer matrix), `potential` (a cubic in three
//! variables), `explicit` (1-based generator index pairs with polynomial
//! values) and `ore` (a base algebra extended by one variable). Polynomials
//! are strings over the names in `vars`, `x1..xn` by default. `schema`
//! defaults to 1 when absent; unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::field;
use crate::poly::{default_names, parse_poly, MultiPoly};
use crate::structure::{self, PoissonStructure, Provenance, SkewMatrix};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub bracket: BracketSpec,
}

/// Base of an Ore extension; `p` may be omitted and must otherwise agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseAlgebra {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub bracket: BracketSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    /// 1-based generator indices.
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BracketSpec {
    Skew {
        matrix: Vec<Vec<i64>>,
    },
    Potential {
        omega: String,
    },
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        pairs: Vec<PairSpec>,
        /// Skip the Jacobi check (for negative fixtures).
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        unchecked: bool,
    },
    Ore {
        base: Box<BaseAlgebra>,
        /// Images of the base generators, polynomials in the base variables.
        alpha: Vec<String>,
        beta: Vec<String>,
    },
}

fn arity(spec: &BracketSpec, names: Option<&[String]>) -> Result<usize> {
    match spec {
        BracketSpec::Skew { matrix } => Ok(matrix.len()),
        BracketSpec::Potential { .. } => Ok(3),
        BracketSpec::Explicit { n, .. } => match (n, names) {
            (Some(n), _) => Ok(*n),
            (None, Some(v)) => Ok(v.len()),
            (None, None) => Err(Error::Parse("explicit bracket needs \"n\" or \"vars\"".into())),
        },
        BracketSpec::Ore { base, .. } => Ok(arity(&base.bracket, base.vars.as_deref())? + 1),
    }
}

fn build(spec: &BracketSpec, p: u32, names: Option<Vec<String>>) -> Result<PoissonStructure> {
    let n = arity(spec, names.as_deref())?;
    let names = match names {
        Some(v) if v.len() != n => return Err(Error::ArityMismatch { expected: n, got: v.len() }),
        Some(v) => v,
        None => default_names(n),
    };
    let parse = |s: &str| parse_poly(s, &names, p);
    let ps = match spec {
        BracketSpec::Skew { matrix } => structure::from_skew_matrix(&SkewMatrix::new(p, matrix)?)?,
        BracketSpec::Potential { omega } => structure::from_potential(&parse(omega)?)?,
        BracketSpec::Explicit { pairs, unchecked, .. } => {
            let mut table = Vec::with_capacity(pairs.len());
            for b in pairs {
                if b.i == 0 || b.j == 0 {
                    return Err(Error::Parse("generator indices are 1-based".into()));
                }
                table.push((b.i - 1, b.j - 1, parse(&b.value)?));
            }
            if *unchecked {
                structure::explicit_unchecked(p, n, &table)?
            } else {
                structure::explicit(p, n, &table)?
            }
        }
        BracketSpec::Ore { base, alpha, beta } => {
            if let Some(q) = base.p {
                if q != p as u64 {
                    return Err(Error::ModulusMismatch(format!("ore base over F_{q} inside F_{p}")));
                }
            }
            let base_names = base.vars.clone().unwrap_or_else(|| names[..n - 1].to_vec());
            let base = build(&base.bracket, p, Some(base_names))?;
            let alpha = derivation_from_strings(&base, alpha)?;
            let beta = derivation_from_strings(&base, beta)?;
            structure::from_ore(&base, &alpha, &beta)?
        }
    };
    ps.with_names(names)
}

impl AlgebraFile {
    pub fn to_structure(&self) -> Result<PoissonStructure> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema version {}", self.schema)));
        }
        let p = field::check_prime(self.p)?;
        build(&self.bracket, p, self.vars.clone())
    }

    pub fn from_structure(ps: &PoissonStructure) -> Self {
        let names = ps.names().to_vec();
        let vars = (names != default_names(ps.n())).then(|| names.clone());
        AlgebraFile { schema: SCHEMA_VERSION, p: ps.p() as u64, vars, bracket: spec_of(ps, &names) }
    }
}

fn spec_of(ps: &PoissonStructure, names: &[String]) -> BracketSpec {
    match ps.provenance() {
        Provenance::Skew(c) => BracketSpec::Skew { matrix: c.signed_rows() },
        Provenance::Potential(omega) => BracketSpec::Potential { omega: omega.fmt_with(names) },
        Provenance::Ore { base, alpha, beta } => {
            let base_names = base.names().to_vec();
            BracketSpec::Ore {
                base: Box::new(BaseAlgebra {
                    p: None,
                    vars: (base_names != default_names(base.n())).then(|| base_names.clone()),
                    bracket: spec_of(base, &base_names),
                }),
                alpha: alpha.images().iter().map(|f| f.fmt_with(&base_names)).collect(),
                beta: beta.images().iter().map(|f| f.fmt_with(&base_names)).collect(),
            }
        }
        _ => BracketSpec::Explicit {
            n: Some(ps.n()),
            pairs: ps
                .pairs()
                .filter(|(_, _, h)| !h.is_zero())
                .map(|(i, j, h)| PairSpec { i: i + 1, j: j + 1, value: h.fmt_with(names) })
                .collect(),
            unchecked: !ps.check_jacobi(),
        },
    }
}

pub fn parse_algebra(json: &str) -> Result<PoissonStructure> {
    let file: AlgebraFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_structure()
}

pub fn algebra_to_json(ps: &PoissonStructure) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_structure(ps)).expect("serializable")
}

/// Images of the generators, written over the structure's variable names.
pub fn derivation_from_strings(ps: &PoissonStructure, images: &[String]) -> Result<Derivation> {
    if images.len() != ps.n() {
        return Err(Error::ArityMismatch { expected: ps.n(), got: images.len() });
    }
    let polys = images.iter().map(|s| parse_poly(s, ps.names(), ps.p())).collect::<Result<Vec<_>>>()?;
    Derivation::new(polys)
}

pub fn derivation_to_strings(d: &Derivation, names: &[String]) -> Vec<String> {
    d.images().iter().map(|f| f.fmt_with(names)).collect()
}

pub fn poly_string(f: &MultiPoly, ps: &PoissonStructure) -> String {
    f.fmt_with(ps.names())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn skew_round_trip() {
        let json = r#"{"schema": 1, "p": 3, "bracket": {"kind": "skew", "matrix": [[0,1,-1],[-1,0,1],[1,-1,0]]}}"#;
        let ps = parse_algebra(json).unwrap();
        assert_eq!(ps.skew_matrix().unwrap().upper(), vec![1, 2, 1]);
        assert_eq!(parse_algebra(&algebra_to_json(&ps)).unwrap(), ps);
    }

    #[test]
    fn explicit_and_names() {
        let json = r#"{"p": 5, "vars": ["x", "y"],
            "bracket": {"kind": "explicit", "pairs": [{"i": 1, "j": 2, "value": "x^2"}]}}"#;
        let ps = parse_algebra(json).unwrap();
        assert_eq!(ps.generator_bracket(0, 1), &parse("x1^2", 2, 5).unwrap());
        assert_eq!(parse_algebra(&algebra_to_json(&ps)).unwrap(), ps);
    }

    #[test]
    fn potential_and_ore() {
        let ps = parse_algebra(r#"{"schema":1,"p":5,"bracket":{"kind":"potential","omega":"x1^2x2"}}"#).unwrap();
        assert_eq!(ps.potential(), Some(&parse("x1^2x2", 3, 5).unwrap()));
        let ore = r#"{"schema":1,"p":5,"bracket":{"kind":"ore",
            "base":{"bracket":{"kind":"explicit","n":2,"pairs":[]}},"alpha":["x1","x2"],"beta":["0","0"]}}"#;
        let ps = parse_algebra(ore).unwrap();
        assert_eq!(ps.n(), 3);
        assert_eq!(parse_algebra(&algebra_to_json(&ps)).unwrap(), ps);
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = r#"{"schema":1,"p":5,"extra":0,"bracket":{"kind":"potential","omega":"x1^3"}}"#;
        assert!(matches!(parse_algebra(unknown), Err(Error::Parse(_))));
        let unknown_inner = r#"{"schema":1,"p":5,"bracket":{"kind":"potential","omega":"x1^3","n":3}}"#;
        assert!(matches!(parse_algebra(unknown_inner), Err(Error::Parse(_))));
        let version = r#"{"schema":2,"p":5,"bracket":{"kind":"potential","omega":"x1^3"}}"#;
        assert!(matches!(parse_algebra(version), Err(Error::Parse(_))));
        let modulus = r#"{"schema":1,"p":6,"bracket":{"kind":"potential","omega":"x1^3"}}"#;
        assert_eq!(parse_algebra(modulus), Err(Error::NonPrimeModulus(6)));
        let base_p = r#"{"schema":1,"p":5,"bracket":{"kind":"ore",
            "base":{"p":3,"bracket":{"kind":"explicit","n":1,"pairs":[]}},"alpha":["0"],"beta":["x1^2"]}}"#;
        assert!(matches!(parse_algebra(base_p), Err(Error::ModulusMismatch(_))));
        let jacobi = r#"{"schema":1,"p":5,"bracket":{"kind":"explicit","n":3,"pairs":[
            {"i":1,"j":2,"value":"x3^2"},{"i":3,"j":1,"value":"x1x2"}]}}"#;
        assert!(matches!(parse_algebra(jacobi), Err(Error::JacobiViolation(..))));
    }
}
