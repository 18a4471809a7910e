//! Command-line front end. `run` parses arguments, dispatches to the engines
//! and writes a deterministic text or JSON report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, potential_catalog, potential_form, FormId};
use crate::center::oracle::{center_oracle, check_degree_bound, Caps};
use crate::center::series::{palindrome_check, polynomial_ring_degrees};
use crate::center::{self, CenterReport, SkewClass};
use crate::deriv;
use crate::error::{Error, Result};
use crate::field;
use crate::fixtures::{run_fixtures, Ctx};
use crate::io::{self, algebra_to_json, derivation_to_strings};
use crate::loz;
use crate::structure::{from_skew_matrix, PoissonStructure, SkewMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    /// Monoid engine for skew brackets, oracle otherwise.
    Auto,
    Monoid,
    Oracle,
    /// Both engines, compared degreewise (skew brackets only).
    Both,
}

/// Route for the skew-bracket Gorenstein test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GorensteinRoute {
    /// A box element dominating all others componentwise.
    Stanley,
    /// The support-indicator criterion, when a full-support element exists.
    Support,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "poisson", version, about = "Centers, Gorenstein tests and log-ozone groups of polynomial Poisson algebras over F_p")]
pub struct Cli {
    /// Prime characteristic (commands without an algebra file; must match the file otherwise).
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum matrix width per linear solve.
    #[arg(long, global = true)]
    pub cap_columns: Option<usize>,
    /// Maximum size of any enumerated search space.
    #[arg(long, global = true)]
    pub cap_candidates: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degreewise center: Hilbert function and generators.
    Center(CenterArgs),
    /// Gorenstein test of the center.
    Gorenstein(GorensteinArgs),
    /// Normal elements, log-ozone group and structural predicates.
    Loz(LozArgs),
    /// Classify 3x3 skew matrices up to permutation (p > 3).
    #[command(name = "classify-skew3")]
    ClassifySkew3(ClassifyArgs),
    /// Cubic potentials in three variables.
    Catalog(CatalogArgs),
    /// Exhaustive scan over skew matrices.
    Survey(SurveyArgs),
    /// Replay the reference fixture table.
    #[command(name = "verify-fixtures")]
    VerifyFixtures,
}

#[derive(Debug, Args)]
pub struct CenterArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Degree bound (default 2p).
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
    pub engine: EngineChoice,
}

#[derive(Debug, Args)]
pub struct GorensteinArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Degree bound for the Hilbert-series test on non-skew input (default 5p).
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = GorensteinRoute::Both)]
    pub via: GorensteinRoute,
}

#[derive(Debug, Args)]
pub struct LozArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Degree bound for the normal-element search.
    #[arg(long, default_value_t = 3)]
    pub normal_degree: u32,
    /// Degree bound for C_loz and the decomposability search (default 2p).
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Also evaluate inferability, quasi-inferability and decomposability.
    #[arg(long)]
    pub predicates: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Upper-triangular entries c12,c13,c23.
    #[arg(long, conflicts_with = "all", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Classify every matrix over F_p.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Form id, e.g. ThreeLines or Elliptic(2).
    #[arg(long)]
    pub form: Option<String>,
    /// Compare each center with the expected generators.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 12)]
    pub max_degree: u32,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

/// Report plus exit status.
struct Outcome {
    json: Value,
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, status: EXIT_OK }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::Invalid(e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable") + "\n",
                Format::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            o.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn caps(cli: &Cli) -> Caps {
    let mut c = Caps::default();
    if let Some(v) = cli.cap_columns {
        c.columns = v;
    }
    if let Some(v) = cli.cap_candidates {
        c.candidates = v;
    }
    c
}

fn global_p(cli: &Cli) -> Result<u32> {
    let p = cli.p.ok_or_else(|| Error::Invalid("--p is required for this command".into()))?;
    field::check_prime(p)
}

fn load(cli: &Cli, path: &PathBuf) -> Result<PoissonStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let ps = io::parse_algebra(&text)?;
    if let Some(p) = cli.p {
        if p != ps.p() as u64 {
            return Err(Error::ModulusMismatch(format!("--p {p} but the algebra is over F_{}", ps.p())));
        }
    }
    Ok(ps)
}

fn bounded(d: Option<u32>, default: u32) -> Result<u32> {
    let d = d.unwrap_or(default);
    check_degree_bound(d)?;
    Ok(d)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Center(a) => cmd_center(cli, a),
        Command::Gorenstein(a) => cmd_gorenstein(cli, a),
        Command::Loz(a) => cmd_loz(cli, a),
        Command::ClassifySkew3(a) => cmd_classify(cli, a),
        Command::Catalog(a) => cmd_catalog(cli, a),
        Command::Survey(a) => cmd_survey(cli, a),
        Command::VerifyFixtures => cmd_verify(cli),
    }
}

fn poly_list(ps: &PoissonStructure, fs: &[crate::poly::MultiPoly]) -> Vec<String> {
    fs.iter().map(|f| io::poly_string(f, ps)).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// A command's JSON report and its text rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when two computations of the same quantity disagreed.
    pub consistent: bool,
}

impl Report {
    fn outcome(self) -> Outcome {
        let status = if self.consistent { EXIT_OK } else { EXIT_VERIFICATION };
        Outcome { json: self.json, text: self.text, status }
    }
}

/// 1-based index list for reports.
fn one_based(ix: &[usize]) -> Vec<usize> {
    ix.iter().map(|i| i + 1).collect()
}

fn cmd_center(cli: &Cli, a: &CenterArgs) -> Result<Outcome> {
    let ps = load(cli, &a.algebra)?;
    Ok(center_report(&ps, a.max_degree, a.engine, &caps(cli))?.outcome())
}

/// Center report; `max_degree` defaults to `2p`.
pub fn center_report(ps: &PoissonStructure, max_degree: Option<u32>, engine: EngineChoice, caps: &Caps) -> Result<Report> {
    let d = bounded(max_degree, 2 * ps.p())?;
    let skew = ps.skew_matrix().cloned();
    let mut consistent = true;
    let (report, extra): (CenterReport, Value) = match (engine, skew) {
        (EngineChoice::Monoid | EngineChoice::Both, None) => {
            return Err(Error::Invalid("the monoid engine needs a skew bracket".into()))
        }
        (EngineChoice::Monoid | EngineChoice::Auto | EngineChoice::Both, Some(c)) => {
            let m = center::monoid::skew_monoid_capped(&c, caps)?;
            let series = center::hilbert_skew(&m, d);
            let r = center::center_generators_skew(&m, d)?;
            let mut extra = json!({
                "B": m.box_set,
                "I": one_based(&m.support),
                "numerator": series.numerator,
                "rank": series.rank.to_string(),
            });
            if engine == EngineChoice::Both {
                let oracle = center_oracle(ps, d, caps)?.hilbert;
                consistent = oracle == r.hilbert;
                let m = extra.as_object_mut().expect("object");
                m.insert("oracle_hilbert".into(), json!(oracle));
                m.insert("engines_agree".into(), json!(consistent));
            }
            (r, extra)
        }
        _ => (center_oracle(ps, d, caps)?, Value::Null),
    };
    let gens = poly_list(ps, &report.generators);
    let label = if engine == EngineChoice::Both { "both".to_string() } else { report.engine.to_string() };
    let mut j = json!({
        "schema": 1,
        "command": "center",
        "engine": label,
        "max_degree": d,
        "hilbert": report.hilbert,
        "generators": gens,
        "filtered": report.filtered,
    });
    if let Value::Object(m) = extra {
        j.as_object_mut().expect("object").extend(m);
    }
    let mut text = format!(
        "engine: {label}\nmax degree: {d}\nhilbert: [{}]\ngenerators: {}\n",
        join(&report.hilbert),
        gens.join(", ")
    );
    if report.filtered {
        text.push_str("note: dimensions of the associated graded (inhomogeneous bracket)\n");
    }
    if let Some(r) = j.get("rank") {
        text.push_str(&format!("rank over center: {}\n", r.as_str().unwrap_or_default()));
    }
    if engine == EngineChoice::Both {
        text.push_str(&format!("engines agree: {consistent}\n"));
    }
    Ok(Report { json: j, text, consistent })
}

fn cmd_gorenstein(cli: &Cli, a: &GorensteinArgs) -> Result<Outcome> {
    let ps = load(cli, &a.algebra)?;
    Ok(gorenstein_report(&ps, a.max_degree, a.via, &caps(cli))?.outcome())
}

/// Gorenstein report: the monoid test for skew brackets, otherwise the
/// palindrome necessary condition up to `max_degree` (default `5p`).
pub fn gorenstein_report(
    ps: &PoissonStructure,
    max_degree: Option<u32>,
    via: GorensteinRoute,
    caps: &Caps,
) -> Result<Report> {
    if let Some(c) = ps.skew_matrix() {
        let m = center::monoid::skew_monoid_capped(c, caps)?;
        let (stanley, witness) = center::gorenstein_skew(&m);
        let beta = center::find_beta(&m);
        let support = center::gorenstein_via_support_indicator(&m);
        // the support route is silent when no full-support element exists
        let agree = support.is_none_or(|v| v == stanley);
        let (verdict, witness) = match via {
            GorensteinRoute::Support => (support, None),
            _ => (Some(stanley), witness),
        };
        let mut j = json!({
            "schema": 1,
            "command": "gorenstein",
            "method": "monoid",
            "via": format!("{via:?}").to_lowercase(),
            "gorenstein": verdict,
            "witness": witness,
            "B": m.box_set,
            "I": one_based(&m.support),
            "full_support_beta": beta,
        });
        let opt = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
        let mut text = format!(
            "method: monoid ({})\ngorenstein: {}\nwitness: {}\nB: {:?}\nI: {:?}\nfull-support beta: {}\n",
            format!("{via:?}").to_lowercase(),
            opt(verdict),
            witness.map_or("none".into(), |w| format!("{w:?}")),
            m.box_set,
            one_based(&m.support),
            beta.map_or("none".into(), |b| format!("{b:?}")),
        );
        if via == GorensteinRoute::Both {
            let obj = j.as_object_mut().expect("object");
            obj.insert("support_indicator_verdict".into(), json!(support));
            obj.insert("routes_agree".into(), json!(agree));
            text.push_str(&format!("support-indicator verdict: {}\nroutes agree: {agree}\n", opt(support)));
        }
        return Ok(Report { json: j, text, consistent: via != GorensteinRoute::Both || agree });
    }
    let d = bounded(max_degree, 5 * ps.p())?;
    let h = center_oracle(ps, d, caps)?.hilbert;
    let check = palindrome_check(&h, ps.p(), ps.n());
    // a palindromic numerator is necessary, not sufficient
    let verdict = (!check.palindromic && check.conclusive).then_some(false);
    let j = json!({
        "schema": 1,
        "command": "gorenstein",
        "method": "palindrome",
        "gorenstein": verdict,
        "numerator": check.numerator,
        "palindromic": check.palindromic,
        "conclusive": check.conclusive,
        "hilbert": h,
    });
    let text = format!(
        "method: palindrome (necessary condition)\nnumerator over (1-t^p)^n: [{}]\npalindromic: {}\nconclusive: {}\ngorenstein: {}\n",
        join(&check.numerator),
        check.palindromic,
        check.conclusive,
        verdict.map_or("undetermined".into(), |v| v.to_string()),
    );
    Ok(Report { json: j, text, consistent: true })
}

#[derive(Serialize)]
struct NormalJson {
    f: String,
    images: Vec<String>,
}

fn cmd_loz(cli: &Cli, a: &LozArgs) -> Result<Outcome> {
    let ps = load(cli, &a.algebra)?;
    Ok(loz_report(&ps, a.normal_degree, a.max_degree, a.predicates, &caps(cli))?.outcome())
}

/// Log-ozone report over normal elements of degree `<= normal_degree`;
/// `max_degree` (default `2p`) bounds the subalgebra and relation search.
pub fn loz_report(
    ps: &PoissonStructure,
    normal_degree: u32,
    max_degree: Option<u32>,
    predicates: bool,
    caps: &Caps,
) -> Result<Report> {
    check_degree_bound(normal_degree)?;
    let d = bounded(max_degree, 2 * ps.p())?;
    let group = loz::log_ozone_group(ps, normal_degree, caps)?;
    let names = ps.names();
    let gens: Vec<NormalJson> = group
        .basis
        .iter()
        .zip(&group.basis_representatives)
        .map(|(dlt, f)| NormalJson { f: f.fmt_with(names), images: derivation_to_strings(dlt, names) })
        .collect();
    let c = loz::c_loz(ps, &group, d, caps)?;
    let (mut inferable, mut quasi, mut witness) = (None, None, Value::Null);
    if predicates {
        inferable = loz::is_inferable(&group).ok();
        quasi = loz::is_quasi_inferable(&group).ok();
        match loz::decomposable_witness(ps, &group, d, caps) {
            Ok(Some(rel)) => {
                let parts: Vec<NormalJson> = rel
                    .parts
                    .iter()
                    .map(|(dl, f)| NormalJson { f: f.fmt_with(names), images: derivation_to_strings(dl, names) })
                    .collect();
                witness = json!({"degree": rel.degree, "parts": parts});
            }
            Ok(None) | Err(Error::NotGraded) => {}
            Err(e) => return Err(e),
        }
    }
    let j = json!({
        "schema": 1,
        "command": "loz",
        "order": group.order(),
        "lower_bound": group.lower_bound,
        "search_bound": group.search_bound,
        "generators": gens,
        "inferable": inferable,
        "quasi_inferable": quasi,
        "decomposable_witness": witness,
        "c_loz_hilbert": c.hilbert,
    });
    let opt = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
    let mut text = format!("order: {} (verified subgroup, normal degree <= {})\n", group.order(), normal_degree);
    for g in &gens {
        text.push_str(&format!("generator: delta_{{{}}} = ({})\n", g.f, g.images.join(", ")));
    }
    text.push_str(&format!("c_loz hilbert: [{}]\n", join(&c.hilbert)));
    if predicates {
        text.push_str(&format!("inferable: {}\nquasi-inferable: {}\n", opt(inferable), opt(quasi)));
        let w = witness.get("parts").and_then(|p| p.as_array()).map(|parts| {
            parts
                .iter()
                .filter_map(|x| x.get("f").and_then(|f| f.as_str()))
                .map(|f| format!("({f})"))
                .collect::<Vec<_>>()
                .join(" + ")
        });
        text.push_str(&format!("decomposability relation: {}\n", w.map_or("none found".into(), |w| format!("{w} = 0"))));
    }
    Ok(Report { json: j, text, consistent: true })
}

fn parse_upper(s: &str, p: u32) -> Result<SkewMatrix> {
    let vals: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))))
        .collect::<Result<_>>()?;
    if vals.len() != 3 {
        return Err(Error::Parse("expected three entries c12,c13,c23".into()));
    }
    let u: Vec<u32> = vals.iter().map(|&v| field::reduce(v, p)).collect();
    Ok(SkewMatrix::from_upper(p, 3, &u))
}

#[derive(Serialize)]
struct ClassRow {
    upper: Vec<u32>,
    class: SkewClass,
    gorenstein: bool,
    unimodular: bool,
    box_size: usize,
}

fn classify_row(c: &SkewMatrix) -> Result<ClassRow> {
    let m = center::skew_monoid(c)?;
    Ok(ClassRow {
        upper: c.upper(),
        class: center::classify_skew3(c)?,
        gorenstein: center::gorenstein_skew(&m).0,
        unimodular: c.row_sums().iter().all(|&s| s == 0),
        box_size: m.box_set.len(),
    })
}

fn cmd_classify(cli: &Cli, a: &ClassifyArgs) -> Result<Outcome> {
    let p = global_p(cli)?;
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    let matrices = match (&a.matrix, a.all) {
        (Some(s), _) => vec![parse_upper(s, p)?],
        (None, true) => {
            let count = (p as u64).pow(3);
            if count > caps(cli).candidates {
                return Err(Error::CapExceeded { what: format!("{count} matrices"), cap: caps(cli).candidates });
            }
            SkewMatrix::enumerate(p, 3)
        }
        (None, false) => return Err(Error::Invalid("give --matrix or --all".into())),
    };
    let rows: Vec<ClassRow> = matrices.par_iter().map(classify_row).collect::<Result<_>>()?;
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for r in &rows {
        *counts.entry(r.class.to_string()).or_default() += 1;
    }
    let gorenstein_agrees = rows.iter().all(|r| r.gorenstein == (r.class != SkewClass::NotGorenstein));
    let unimodular_agrees = rows.iter().all(|r| (r.class == SkewClass::Case2c) == r.unimodular);
    let status = if gorenstein_agrees && unimodular_agrees { EXIT_OK } else { EXIT_VERIFICATION };
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{:?} class={} gorenstein={} unimodular={} |B|={}\n",
            r.upper, r.class, r.gorenstein, r.unimodular, r.box_size
        ));
    }
    if a.all {
        for (k, v) in &counts {
            text.push_str(&format!("count {k}: {v}\n"));
        }
    }
    text.push_str(&format!(
        "gorenstein matches class membership: {gorenstein_agrees}\nCase2c matches unimodular: {unimodular_agrees}\n"
    ));
    let j = json!({
        "schema": 1,
        "command": "classify-skew3",
        "p": p,
        "matrices": rows,
        "counts": counts,
        "gorenstein_matches_class": gorenstein_agrees,
        "case2c_matches_unimodular": unimodular_agrees,
    });
    Ok(Outcome { json: j, text, status })
}

fn cmd_catalog(cli: &Cli, a: &CatalogArgs) -> Result<Outcome> {
    let p = global_p(cli)?;
    check_degree_bound(a.max_degree)?;
    let caps = caps(cli);
    let forms = match &a.form {
        Some(id) => vec![potential_form(id.parse::<FormId>()?, p)?],
        None => potential_catalog(p)?,
    };
    if a.form.is_some() && !a.verify {
        // the structure itself, consumable by the other commands
        let body = algebra_to_json(&forms[0].structure()?);
        let v: Value = serde_json::from_str(&body).expect("valid json");
        return Ok(Outcome::ok(v, body + "\n"));
    }
    let verdicts: Vec<Option<bool>> = if a.verify {
        catalog::verify_catalog(&forms, a.max_degree, &caps)?.into_iter().map(|(_, ok)| Some(ok)).collect()
    } else {
        vec![None; forms.len()]
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    for (f, v) in forms.iter().zip(&verdicts) {
        let gens: Vec<String> = f.expected_center_gens.iter().map(|g| g.to_string()).collect();
        entries.push(json!({
            "id": f.id.to_string(),
            "omega": f.omega.to_string(),
            "reducible": f.reducible,
            "expected_center_gens": gens,
            "verified": v,
        }));
        text.push_str(&format!(
            "{:<16} omega = {:<40} reducible={:<5} center = k[{}]{}\n",
            f.id.to_string(),
            f.omega.to_string(),
            f.reducible,
            gens.join(", "),
            v.map_or(String::new(), |ok| format!(" verified={ok}"))
        ));
    }
    let all_ok = verdicts.iter().all(|v| v.unwrap_or(true));
    let j = json!({"schema": 1, "command": "catalog", "p": p, "max_degree": a.verify.then_some(a.max_degree), "forms": entries});
    Ok(Outcome { json: j, text, status: if all_ok { EXIT_OK } else { EXIT_VERIFICATION } })
}

#[derive(Serialize)]
struct SurveyRow {
    upper: Vec<u32>,
    box_size: usize,
    gorenstein: bool,
    support_indicator_verdict: Option<bool>,
    unimodular: bool,
    loz_order: u64,
    /// Hilbert function (to degree 2np) is that of a polynomial ring.
    regular_center: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<SkewClass>,
}

fn survey_row(c: &SkewMatrix, caps: &Caps) -> Result<SurveyRow> {
    let m = center::monoid::skew_monoid_capped(c, caps)?;
    let ps = from_skew_matrix(c)?;
    let class = (c.n() == 3 && c.p() > 3).then(|| center::classify_skew3(c)).transpose()?;
    Ok(SurveyRow {
        upper: c.upper(),
        box_size: m.box_set.len(),
        gorenstein: center::gorenstein_skew(&m).0,
        support_indicator_verdict: center::gorenstein_via_support_indicator(&m),
        unimodular: deriv::is_unimodular(&ps),
        loz_order: loz::log_ozone_group(&ps, 1, caps)?.order(),
        regular_center: polynomial_ring_degrees(&center::hilbert_skew(&m, 2 * c.n() as u32 * c.p()).hilbert).is_some(),
        class,
    })
}

fn cmd_survey(cli: &Cli, a: &SurveyArgs) -> Result<Outcome> {
    let p = global_p(cli)?;
    let caps = caps(cli);
    let slots = (a.n * a.n.saturating_sub(1) / 2) as u32;
    let count = (p as u64).checked_pow(slots).filter(|&c| c <= caps.candidates).ok_or_else(|| Error::CapExceeded {
        what: format!("{p}^{slots} matrices"),
        cap: caps.candidates,
    })?;
    let matrices = SkewMatrix::enumerate(p, a.n);
    debug_assert_eq!(matrices.len() as u64, count);
    let rows: Vec<SurveyRow> = matrices.par_iter().map(|c| survey_row(c, &caps)).collect::<Result<_>>()?;
    let gorenstein = rows.iter().filter(|r| r.gorenstein).count();
    let unimodular = rows.iter().filter(|r| r.unimodular).count();
    let unimodular_not_gorenstein = rows.iter().filter(|r| r.unimodular && !r.gorenstein).count();
    let routes_disagree = rows
        .iter()
        .filter(|r| r.support_indicator_verdict.is_some_and(|v| v != r.gorenstein))
        .count();
    let regular = rows.iter().filter(|r| r.regular_center).count();
    let mut classes: BTreeMap<String, u64> = BTreeMap::new();
    for r in &rows {
        if let Some(c) = r.class {
            *classes.entry(c.to_string()).or_default() += 1;
        }
    }
    let mut text = String::from("upper | |B| | gorenstein | support route | unimodular | loz order\n");
    for r in &rows {
        text.push_str(&format!(
            "{:?} | {} | {} | {} | {} | {}\n",
            r.upper,
            r.box_size,
            r.gorenstein,
            r.support_indicator_verdict.map_or("n/a".into(), |v| v.to_string()),
            r.unimodular,
            r.loz_order
        ));
    }
    text.push_str(&format!(
        "matrices: {}\ngorenstein: {gorenstein}\nunimodular: {unimodular}\nunimodular but not gorenstein: {unimodular_not_gorenstein}\nroute disagreements: {routes_disagree}\nregular centers: {regular}\n",
        rows.len()
    ));
    for (k, v) in &classes {
        text.push_str(&format!("class {k}: {v}\n"));
    }
    let j = json!({
        "schema": 1,
        "command": "survey",
        "p": p,
        "n": a.n,
        "matrices": rows,
        "summary": {
            "count": rows.len(),
            "gorenstein": gorenstein,
            "unimodular": unimodular,
            "unimodular_not_gorenstein": unimodular_not_gorenstein,
            "route_disagreements": routes_disagree,
            "regular_centers": regular,
            "classes": classes,
        },
    });
    let status = if unimodular_not_gorenstein == 0 && routes_disagree == 0 { EXIT_OK } else { EXIT_VERIFICATION };
    Ok(Outcome { json: j, text, status })
}

fn cmd_verify(cli: &Cli) -> Result<Outcome> {
    let results = run_fixtures(&Ctx { caps: caps(cli), seed: cli.seed });
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
    }
    text.push_str(&format!("{} fixtures, {} failed\n", results.len(), failed));
    let j = json!({"schema": 1, "command": "verify-fixtures", "seed": cli.seed, "results": results, "failed": failed});
    Ok(Outcome { json: j, text, status: if failed == 0 { EXIT_OK } else { EXIT_VERIFICATION } })
}
