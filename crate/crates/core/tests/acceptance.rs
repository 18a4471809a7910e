//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails unless the set of failing criteria is exactly `KNOWN_FAILURES`.
//!
//! Every comparison is exact: integer and F_p quantities, tolerance 0.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poisson_core::catalog::{
    center_palindrome, potential_catalog, potential_form, verify_expected_center, FormId,
};
use poisson_core::center::oracle::center_oracle;
use poisson_core::center::series::{expand_over_frobenius, subalgebra_dims, DegreeSpace};
use poisson_core::center::{self, Caps, SkewClass};
use poisson_core::deriv::{self, Derivation};
use poisson_core::fixtures::{
    four_by_four_p3, jordan_line, jordan_plane, non_gorenstein_p3, quadratic_family, random_poly, skew_plane,
    split_skew, three_concurrent_lines,
};
use poisson_core::loz::{self, log_ozone_group};
use poisson_core::poly::{parse, MultiPoly};
use poisson_core::structure::{self, from_potential, from_skew_matrix, PoissonStructure, SkewMatrix};

/// Exact reproduction everywhere.
const TOLERANCE: u64 = 0;
const SEED: u64 = 0x5EED_2026;
const PROPERTY_CASES: usize = 1000;
/// 1: the p = 3 circulant has box set {0, (1,1,1), (2,2,2)}.
/// 6: for x1^2 x2 the center also contains x1^a x2^b with a = 2b mod p,
/// e.g. x1 x2^3 at p = 5, so the four expected generators fall short.
const KNOWN_FAILURES: &[u32] = &[1, 6];

fn pp(s: &str, n: usize, p: u32) -> MultiPoly {
    parse(s, n, p).unwrap()
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn criterion_1() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    let circ = center::skew_monoid(&SkewMatrix::circulant3(3, 1)).unwrap();
    let bad = center::skew_monoid(&non_gorenstein_p3()).unwrap();
    let want_circ = vec![vec![0, 0, 0], vec![1, 1, 1]];
    let want_bad = vec![vec![0, 0, 0], vec![1, 1, 2], vec![2, 2, 1]];
    if circ.box_set != want_circ {
        ok = false;
        notes.push(format!("circulant B = {:?}, expected {want_circ:?}", circ.box_set));
    }
    if bad.box_set != want_bad {
        ok = false;
        notes.push(format!("second B = {:?}", bad.box_set));
    }
    let verdicts = (center::gorenstein_skew(&circ).0, center::gorenstein_skew(&bad).0);
    if verdicts != (true, false) {
        ok = false;
        notes.push(format!("verdicts {verdicts:?}"));
    }
    let g1 = center::center_generators_skew(&circ, 9).unwrap().generators;
    let g2 = center::center_generators_skew(&bad, 9).unwrap().generators;
    let has = |gs: &[MultiPoly], s: &str| gs.contains(&pp(s, 3, 3));
    if !(has(&g1, "x1x2x3") && has(&g2, "x1x2x3^2") && has(&g2, "x1^2x2^2x3")) {
        ok = false;
        notes.push("missing generators".into());
    }
    verdict(ok, if notes.is_empty() { "box sets, verdicts and generators exact".into() } else { notes.join("; ") })
}

fn criterion_2() -> Verdict {
    let caps = Caps::default();
    let mut checked = 0;
    for p in [3u32, 5] {
        for c in SkewMatrix::enumerate(p, 3) {
            let d = 2 * p;
            let oracle = center_oracle(&from_skew_matrix(&c).unwrap(), d, &caps).unwrap().hilbert;
            let monoid = center::hilbert_skew(&center::skew_monoid(&c).unwrap(), d).hilbert;
            let diff: u64 = oracle.iter().zip(&monoid).map(|(a, b)| a.abs_diff(*b)).sum();
            if diff > TOLERANCE || oracle.len() != monoid.len() {
                return verdict(false, format!("p = {p}, upper {:?}: oracle {oracle:?} vs monoid {monoid:?}", c.upper()));
            }
            checked += 1;
        }
    }
    verdict(checked == 27 + 125, format!("{checked} matrices agree to degree 2p"))
}

fn criterion_3() -> Verdict {
    let mut unimodular = 0;
    for p in [3u32, 5] {
        for c in SkewMatrix::enumerate(p, 3) {
            if deriv::is_unimodular(&from_skew_matrix(&c).unwrap()) {
                unimodular += 1;
                if !center::gorenstein_skew(&center::skew_monoid(&c).unwrap()).0 {
                    return verdict(false, format!("unimodular {:?} over F_{p} not Gorenstein", c.upper()));
                }
            }
        }
    }
    verdict(true, format!("{unimodular} unimodular matrices, all Gorenstein"))
}

fn criterion_4() -> Verdict {
    let mut gor = 0;
    for c in SkewMatrix::enumerate(5, 3) {
        let class = center::classify_skew3(&c).unwrap();
        let g = center::gorenstein_skew(&center::skew_monoid(&c).unwrap()).0;
        let unimodular = deriv::is_unimodular(&from_skew_matrix(&c).unwrap());
        if g != (class != SkewClass::NotGorenstein) || (class == SkewClass::Case2c) != unimodular {
            return verdict(false, format!("{:?}: class {class}, gorenstein {g}, unimodular {unimodular}", c.upper()));
        }
        gor += usize::from(g);
    }
    verdict(true, format!("125 matrices, {gor} Gorenstein, all in the listed cases"))
}

fn criterion_5() -> Verdict {
    let mut compared = 0;
    for p in [3u32, 5] {
        for c in SkewMatrix::enumerate(p, 3) {
            let m = center::skew_monoid(&c).unwrap();
            if let Some(v) = center::gorenstein_via_support_indicator(&m) {
                compared += 1;
                if v != center::gorenstein_skew(&m).0 {
                    return verdict(false, format!("routes disagree on {:?} over F_{p}", c.upper()));
                }
            }
        }
    }
    let m = center::skew_monoid(&four_by_four_p3()).unwrap();
    let want: Vec<Vec<u32>> = [
        [0, 0, 0, 0],
        [0, 1, 2, 2],
        [0, 2, 1, 1],
        [1, 0, 2, 1],
        [1, 1, 1, 0],
        [1, 2, 0, 2],
        [2, 0, 1, 2],
        [2, 1, 0, 1],
        [2, 2, 2, 0],
    ]
    .iter()
    .map(|r| r.to_vec())
    .collect();
    let ok = m.box_set == want && center::find_beta(&m).is_none();
    verdict(ok, format!("{compared} matrices with a full-support beta agree; 4x4 box set exact, no beta"))
}

fn criterion_6() -> Verdict {
    let caps = Caps::default();
    let forms = potential_catalog(5).unwrap();
    let mut failed = Vec::new();
    for f in &forms {
        if !verify_expected_center(f, 12, &caps).unwrap() {
            failed.push(f.id.to_string());
        }
    }
    verdict(failed.is_empty(), format!("{} forms at D = 12; mismatches: {failed:?}", forms.len()))
}

fn criterion_7() -> Verdict {
    let caps = Caps::default();
    let s = three_concurrent_lines(3);
    let r = center_oracle(&s, 12, &caps).unwrap();
    let space = DegreeSpace::new(3, 3);
    let got: Vec<Vec<u32>> = r.basis[3].iter().map(|f| space.coords(f)).collect();
    let want: Vec<Vec<u32>> =
        ["x1^3", "x2^3", "x3^3", "x1^2x2", "x1x2^2"].iter().map(|g| space.coords(&pp(g, 3, 3))).collect();
    let same_span = poisson_core::center::series::contained_in(3, space.dim(), &got, &want)
        && poisson_core::center::series::contained_in(3, space.dim(), &want, &got);
    let series: Vec<u64> = expand_over_frobenius(&[1, 0, 0, 2], 3, 3, 12).into_iter().map(|x| x as u64).collect();
    let pal = center_palindrome(&s, 12, &caps).unwrap();
    let ok = r.hilbert[3] == 5 && same_span && r.hilbert == series && !pal.palindromic && pal.conclusive;
    verdict(ok, format!("hilbert {:?}, numerator {:?}, palindromic {}", r.hilbert, pal.numerator, pal.palindromic))
}

fn criterion_8() -> Verdict {
    let caps = Caps::default();
    let p = 5;
    let plane = log_ozone_group(&skew_plane(p, 2), 1, &caps).unwrap().order();
    let j = jordan_plane(p);
    let jg = log_ozone_group(&j, 1, &caps).unwrap();
    let c = loz::c_loz(&j, &jg, 2 * p, &caps).unwrap().hilbert;
    let expected_c = subalgebra_dims(&[pp("x1", 2, p), pp("x2^5", 2, p)], p, 2, 2 * p).unwrap();
    let ids = [FormId::SquareLine, FormId::ThreeLines, FormId::TwoLinesDouble, FormId::LineConic1, FormId::LineConic2];
    let orders: Vec<u64> = ids
        .iter()
        .map(|&id| log_ozone_group(&potential_form(id, p).unwrap().structure().unwrap(), 3, &caps).unwrap().order())
        .collect();
    let ok = plane == 25 && jg.order() == 5 && c == expected_c && orders == vec![5, 25, 25, 5, 5];
    verdict(ok, format!("plane {plane}, jordan {}, reducible potentials {orders:?}", jg.order()))
}

fn non_unimodular_graded_fixtures() -> Vec<(String, PoissonStructure)> {
    let mut out = vec![
        ("split skew".to_string(), from_skew_matrix(&split_skew(5, 2)).unwrap()),
        ("jordan plane x line".to_string(), jordan_line(5)),
    ];
    for c in 0..5 {
        out.push((format!("quadratic family c = {c}"), quadratic_family(5, c)));
    }
    for m in SkewMatrix::enumerate(5, 3) {
        let s = from_skew_matrix(&m).unwrap();
        if !deriv::is_unimodular(&s) {
            out.push((format!("skew {:?}", m.upper()), s));
        }
    }
    out
}

fn criterion_9() -> Verdict {
    let caps = Caps::default();
    for f in potential_catalog(5).unwrap() {
        let g = log_ozone_group(&f.structure().unwrap(), 3, &caps).unwrap();
        let expect_trivial = f.id == FormId::Cube || !f.reducible;
        if (g.order() == 1) != expect_trivial {
            return verdict(false, format!("{}: order {}", f.id, g.order()));
        }
    }
    let fixtures = non_unimodular_graded_fixtures();
    for (name, s) in &fixtures {
        let g = log_ozone_group(s, 3, &caps).unwrap();
        if !g.spans(&deriv::modular_derivation(s)).unwrap() {
            return verdict(false, format!("modular derivation of {name} outside the group"));
        }
    }
    verdict(true, format!("catalog groups as expected; modular derivation in the group for {} fixtures", fixtures.len()))
}

/// Structures from every constructor, for the bracket identities.
fn constructor_pool(rng: &mut ChaCha8Rng) -> Vec<PoissonStructure> {
    let mut pool = Vec::new();
    for _ in 0..6 {
        let p = *[3u32, 5, 7].choose(rng).unwrap();
        let upper: Vec<u32> = (0..3).map(|_| rng.gen_range(0..p)).collect();
        pool.push(from_skew_matrix(&SkewMatrix::from_upper(p, 3, &upper)).unwrap());
        let omega = random_poly(rng, p, 3, 3, 4);
        if !omega.is_zero() {
            pool.push(from_potential(&omega).unwrap());
        }
    }
    pool.push(jordan_plane(5));
    pool.push(quadratic_family(7, 3));
    let line = PoissonStructure::trivial(5, 1).unwrap();
    let beta = Derivation::new(vec![pp("x1^2 + 2x1", 1, 5)]).unwrap();
    pool.push(structure::from_ore(&line, &Derivation::zero(5, 1), &beta).unwrap());
    let plane = PoissonStructure::trivial(5, 2).unwrap();
    let beta = Derivation::new(vec![pp("-x1^2 - 2x1x2", 2, 5), pp("2x1x2 + x2^2", 2, 5)]).unwrap();
    pool.push(structure::from_ore(&plane, &Derivation::zero(5, 2), &beta).unwrap());
    pool.push(structure::tensor(&jordan_plane(5), &skew_plane(5, 3)).unwrap());
    let j3 = jordan_line(5);
    pool.push(structure::twist(&j3, &deriv::modular_third(&j3).unwrap()).unwrap());
    pool
}

fn bracket_identities(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let pool = constructor_pool(rng);
    for case in 0..PROPERTY_CASES {
        let s = pool.choose(rng).unwrap();
        let (p, n) = (s.p(), s.n());
        let f = random_poly(rng, p, n, 3, 3);
        let g = random_poly(rng, p, n, 3, 3);
        let h = random_poly(rng, p, n, 3, 3);
        let br = |a: &MultiPoly, b: &MultiPoly| s.bracket(a, b).unwrap();
        let anti = (&br(&f, &g) + &br(&g, &f)).is_zero();
        let leibniz = br(&f, &(&g * &h)) == &(&br(&f, &g) * &h) + &(&g * &br(&f, &h));
        let jacobi = (&(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g))).is_zero();
        if !(anti && leibniz && jacobi) {
            return Err(format!("case {case} ({}): f = {f}, g = {g}, h = {h}", s.provenance().tag()));
        }
    }
    Ok(PROPERTY_CASES)
}

fn normal_pool(caps: &Caps) -> Vec<(PoissonStructure, Vec<(MultiPoly, Derivation)>)> {
    let three = potential_form(FormId::ThreeLines, 5).unwrap().structure().unwrap();
    [(skew_plane(5, 2), 2), (jordan_plane(5), 2), (three_concurrent_lines(5), 2), (three, 2)]
        .into_iter()
        .map(|(s, d)| {
            let found = loz::enumerate_normal(&s, d, caps).unwrap();
            (s, found)
        })
        .collect()
}

fn logarithmic_derivations(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<usize, String> {
    let pool = normal_pool(caps);
    for case in 0..PROPERTY_CASES {
        let (s, found) = pool.choose(rng).unwrap();
        let (f, df) = found.choose(rng).unwrap();
        let (g, dg) = found.choose(rng).unwrap();
        let dfg = loz::log_ozone_derivation(s, &(f * g)).map_err(|e| e.to_string())?;
        if dfg != df.try_add(dg).unwrap() {
            return Err(format!("case {case}: delta of {f} * {g}"));
        }
        let fp = f.pow(s.p()).unwrap();
        if !loz::log_ozone_derivation(s, &fp).unwrap().is_zero() {
            return Err(format!("case {case}: delta of {f}^p nonzero"));
        }
    }
    Ok(PROPERTY_CASES)
}

fn divergence_identity(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<usize, String> {
    let mut pool = Vec::new();
    for f in potential_catalog(5).unwrap() {
        let s = f.structure().unwrap();
        let g = log_ozone_group(&s, 3, caps).unwrap();
        let mut ds = vec![deriv::euler(&s)];
        ds.extend(g.elements.iter().cloned());
        pool.push((f, s, ds));
    }
    let mut exhaustive = 0;
    for (f, s, ds) in &pool {
        for d in ds {
            if d.apply(&f.omega).unwrap() != deriv::divergence(d).try_mul(&f.omega).unwrap() {
                return Err(format!("{}: {d}", f.id));
            }
            let _ = s;
            exhaustive += 1;
        }
    }
    for case in 0..PROPERTY_CASES {
        let (f, s, ds) = pool.choose(rng).unwrap();
        let mut d = Derivation::zero(5, 3);
        for base in ds {
            d = d.try_add(&base.scale(rng.gen_range(0..5))).unwrap();
        }
        if !poisson_core::catalog::verify_div_identity(s, &d).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: {} with {d}", f.id));
        }
    }
    Ok(exhaustive + PROPERTY_CASES)
}

fn commuting_normals(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<usize, String> {
    let pool = normal_pool(caps);
    for case in 0..PROPERTY_CASES {
        let (s, found) = pool.choose(rng).unwrap();
        let (f, df) = found.choose(rng).unwrap();
        let (g, dg) = found.choose(rng).unwrap();
        let fg = f * g;
        let b = s.bracket(f, g).unwrap();
        // {f, g} = q f g for a scalar q
        let proportional = b.is_zero() || {
            let (e, c) = fg.leading_term().unwrap();
            let q = poisson_core::field::mul(b.coeff(e), poisson_core::field::inv(c, s.p()).unwrap(), s.p());
            b == fg.scale(q)
        };
        let (a, m) = (df.linear_matrix().unwrap(), dg.linear_matrix().unwrap());
        if !proportional || a.mul(&m) != m.mul(&a) {
            return Err(format!("case {case}: f = {f}, g = {g}"));
        }
    }
    Ok(PROPERTY_CASES)
}

fn criterion_10() -> Verdict {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let suites: [(&str, Result<usize, String>); 4] = [
        ("bracket identities", bracket_identities(&mut rng)),
        ("logarithmic derivations", logarithmic_derivations(&mut rng, &caps)),
        ("divergence identity", divergence_identity(&mut rng, &caps)),
        ("commuting normal elements", commuting_normals(&mut rng, &caps)),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, r) in suites {
        match r {
            Ok(n) => parts.push(format!("{name}: {n} cases")),
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    verdict(ok, format!("seed {SEED:#x}; {}", parts.join(", ")))
}

fn criterion_11() -> Verdict {
    let caps = Caps::default();
    let s = three_concurrent_lines(5);
    let g = log_ozone_group(&s, 3, &caps).unwrap();
    let rel = loz::decomposable_witness(&s, &g, 3, &caps).unwrap();
    let relation_ok = rel.as_ref().is_some_and(|r| {
        r.sum().is_zero()
            && r.parts.len() >= 2
            && r.parts.iter().all(|(d, f)| loz::log_ozone_derivation(&s, f).as_ref() == Ok(d))
    });
    let flags_want = [(false, false), (true, true), (false, false), (true, true), (false, false)];
    let ids = [FormId::SquareLine, FormId::ThreeLines, FormId::TwoLinesDouble, FormId::LineConic1, FormId::LineConic2];
    let mut flags = Vec::new();
    for id in ids {
        let g = log_ozone_group(&potential_form(id, 5).unwrap().structure().unwrap(), 3, &caps).unwrap();
        flags.push((loz::is_inferable(&g).unwrap(), loz::is_quasi_inferable(&g).unwrap()));
    }
    let mut skew_ok = 0;
    let mut skew_total = 0;
    let mut skew_fixtures = vec![skew_plane(5, 2), skew_plane(5, 0)];
    skew_fixtures.extend(SkewMatrix::enumerate(5, 3).iter().map(|c| from_skew_matrix(c).unwrap()));
    for s in &skew_fixtures {
        let r = loz::characterise_group(s, 1, 10, &caps).unwrap();
        skew_total += 1;
        if r.condition_b && r.rank.as_integer() == Some(r.group_order) && r.inferable == Some(true) {
            skew_ok += 1;
        }
    }
    let j = loz::characterise_group(&jordan_plane(5), 1, 15, &caps).unwrap();
    let jordan_ok = j.rank.as_integer().is_some_and(|r| j.group_order < r) && !j.condition_b;
    let ok = relation_ok && flags == flags_want && skew_ok == skew_total && jordan_ok;
    verdict(
        ok,
        format!(
            "relation found: {relation_ok}; flags {flags:?}; skew |G| = rank and inferable {skew_ok}/{skew_total}; jordan |G| = {} < {}",
            j.group_order, j.rank
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Verdict); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failing = BTreeSet::new();
    for (k, run) in criteria {
        let v = run();
        println!("{} criterion {k}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        if !v.ok {
            failing.insert(k);
        }
    }
    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().copied().collect();
    assert_eq!(failing, known, "failing criteria differ from the documented set");
}
