//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs without the libtest harness.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{lam, mono, q};
use weylpol::bruhat::{akin_signature, arrow_pairs, ArrowPair};
use weylpol::shift::{reduced, term_set, weight_vector, DegreeVector, ShiftMatrix};
use weylpol::symtensor::{apply_elementary, apply_weyl, diagonal_reduction_factor, SymTensor};
use weylpol::verify::{self, tau_n3, SuiteReport, Verdict, VerifyConfig, AKIN_N3};
use weylpol::verma::{vs_amplitude, VermaTriple};
use weylpol::zelevinsky::zel_amplitude;
use weylpol::Q;

const SEED: u64 = 42;

struct Outcome {
    ok: bool,
    detail: String,
}

fn verdicts<'a>(reports: &'a BTreeMap<String, (SuiteReport, Duration)>, suite: &str) -> &'a [Verdict] {
    &reports[suite].0.verdicts
}

fn find<'a>(vs: &'a [Verdict], name: &str) -> &'a Verdict {
    vs.iter().find(|v| v.name == name).unwrap_or_else(|| panic!("missing verdict {name}"))
}

/// All named verdicts pass with at least `min` cases each.
fn require(vs: &[Verdict], names: &[(&str, usize)]) -> Outcome {
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for &(name, min) in names {
        let v = find(vs, name);
        parts.push(format!("{name}={}", v.cases));
        if !v.passed || v.cases < min {
            bad.push(format!(
                "{name}: passed={} cases={} (min {min}) {}",
                v.passed,
                v.cases,
                v.detail.clone().unwrap_or_default()
            ));
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { parts.join(", ") } else { bad.join("; ") } }
}

fn within(o: Outcome, took: Duration, limit: Duration) -> Outcome {
    let ok = o.ok && took <= limit;
    Outcome { ok, detail: format!("{} [{:.2}s ≤ {}s]", o.detail, took.as_secs_f64(), limit.as_secs()) }
}

fn fixtures(reports: &BTreeMap<String, (SuiteReport, Duration)>) -> Outcome {
    let mut bad: Vec<&str> = Vec::new();
    let mut check = |ok: bool, what: &'static str| {
        if !ok {
            bad.push(what);
        }
    };

    let t = SymTensor::<Q>::from_monomial(mono(&[&[1, 1, 1], &[1, 0, 0], &[1, 1, 0]]));
    let mut d13 = SymTensor::zero(3, 3);
    d13.add_term(mono(&[&[2, 1, 1], &[1, 0, 0], &[0, 1, 0]]), q(1));
    d13.add_term(mono(&[&[1, 2, 1], &[1, 0, 0], &[1, 0, 0]]), q(1));
    check(apply_elementary(1, 3, &t) == d13, "D13 example");
    check(apply_elementary(1, 1, &t) == t.scale(&q(3)), "D11 example");

    let s1 = ShiftMatrix::from_terms(3, &[(1, 2, 1), (1, 3, 2), (3, 2, 3)]);
    check(weight_vector(&s1) == vec![3, -4, 1], "weight vector (3,-4,1)");

    let s2 = ShiftMatrix::from_rows(&[vec![2, 1], vec![1, 0]]).unwrap();
    let scalar_ok = (1..=6u32).all(|a1| {
        let x = SymTensor::<Q>::from_monomial(mono(&[&[a1, 0], &[1, 1]]));
        let f = diagonal_reduction_factor(&s2, &DegreeVector::new(vec![a1 as i64, 2]));
        let binom = i64::from((a1 - 1) * a1.saturating_sub(2) / 2);
        f == binom && apply_weyl(&s2, &x) == apply_weyl(&reduced(&s2), &x).scale(&q(f))
    });
    check(scalar_ok, "scalar relation C(a1−1, 2)");

    check(
        term_set(3, 1, 3, 1).unwrap()
            == vec![ShiftMatrix::unit(3, 3, 1), ShiftMatrix::from_terms(3, &[(2, 1, 1), (3, 2, 1)])],
        "TERM(1,3,1)",
    );
    let want: Vec<ArrowPair> = [7, 8, 3, 4, 5, 6, 2, 1].iter().map(|&k| tau_n3(k)).collect();
    check(arrow_pairs(3) == want, "N=3 arrow list");
    let sg = akin_signature(3).unwrap();
    check((1..=8).map(|k| sg.sign(&tau_n3(k)).unwrap()).collect::<Vec<_>>() == AKIN_N3, "N=3 signature row");
    check(find(verdicts(reports, "complex"), "n3_blocks_match_doty_verma").passed, "N=3 differential table");

    let tau3 = tau_n3(3);
    check(zel_amplitude(&ShiftMatrix::unit(3, 3, 1), &tau3).unwrap() == -1, "τ3 amplitude −1");
    check(zel_amplitude(&ShiftMatrix::from_terms(3, &[(2, 1, 1), (3, 2, 1)]), &tau3).unwrap() == 1, "τ3 amplitude +1");
    let vt = VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap();
    check(vs_amplitude(&ShiftMatrix::unit(3, 3, 1), &vt).unwrap() == q(-1), "τ3 Verma amplitude");

    let a = ArrowPair::new(common::perm("2341"), 2, 4).unwrap();
    let amp = |t: &[(usize, usize, u32)]| zel_amplitude(&ShiftMatrix::from_terms(4, t), &a).unwrap();
    let c = amp(&[(4, 2, 2)]);
    check(amp(&[(3, 2, 2), (4, 3, 2)]) == 4 && amp(&[(3, 2, 1), (4, 3, 1), (4, 2, 1)]) == -2, "(4,−2,c) leading pair");
    check(find(verdicts(reports, "complex"), "arrow_2341_c_is_4").passed, "c = 4");
    let vsv = verdicts(reports, "vs");
    check(find(vsv, "erratum_2_4_2_computed_coefficient_singular").passed, "computed c singular");
    check(find(vsv, "erratum_2_4_2_printed_coefficient_rejected").passed, "printed 2 rejected");

    let ok = bad.is_empty();
    Outcome {
        ok,
        detail: if ok { format!("all fixtures reproduced; c={c} (printed 2 rejected)") } else { bad.join(", ") },
    }
}

fn main() {
    let cfg = VerifyConfig { seed: SEED, n: None };
    let total = Instant::now();
    let mut reports = BTreeMap::new();
    for s in verify::SUITES {
        let start = Instant::now();
        let r = verify::run_one(s, &cfg).expect("suite runs");
        reports.insert(s.to_string(), (r, start.elapsed()));
    }
    let first_pass = total.elapsed();
    let took = |s: &str| reports[s].1;
    let min = |m: u64| Duration::from_secs(60 * m);

    let mut rows: Vec<(u32, &str, Outcome)> = Vec::new();
    rows.push((
        1,
        "combinatorial = differential action",
        within(
            require(verdicts(&reports, "equivalence"), &[("combinatorial_equals_differential", 200)]),
            took("equivalence"),
            min(1),
        ),
    ));
    let rec = verdicts(&reports, "recurrences");
    rows.push((
        2,
        "product recurrences and reduction factor",
        within(
            require(
                rec,
                &[
                    ("left_mul_offdiagonal", 200),
                    ("right_mul_offdiagonal", 200),
                    ("left_mul_diagonal", 200),
                    ("right_mul_diagonal", 200),
                    ("diagonal_reduction_factor", 100),
                ],
            ),
            took("recurrences"),
            min(1),
        ),
    ));
    let n4_pairs: usize = (1..=4).map(|n: usize| n.pow(4)).sum();
    rows.push((
        3,
        "commutation relations and Capelli homomorphism, N ≤ 4",
        require(rec, &[("elementary_commutation_on_tensors", n4_pairs), ("capelli_lie_homomorphism", n4_pairs)]),
    ));
    rows.push((4, "worked-example fixtures", fixtures(&reports)));
    rows.push((
        5,
        "square property for N = 2, 3, 4",
        within(
            require(
                verdicts(&reports, "signatures"),
                &[("square_property_n2", 0), ("square_property_n3", 4), ("square_property_n4", 63)],
            ),
            took("signatures"),
            min(1),
        ),
    ));
    let cx = verdicts(&reports, "complex");
    rows.push((
        6,
        "d∘d = 0 (N=3, M∈{2,3}; N=4 (2,1,1,0))",
        within(require(cx, &[("dd_zero", 21)]), took("complex"), min(5)),
    ));
    rows.push((
        7,
        "homology of partitions and Euler characteristic",
        within(require(cx, &[("partition_homology", 70), ("euler_characteristic", 91)]), took("complex"), min(5)),
    ));
    let grid = 3 * verify::vs_grid().len();
    rows.push((
        8,
        "Verma–Shapovalov grid",
        within(
            require(
                vsv(&reports),
                &[
                    ("weight_check", grid),
                    ("coefficient_identities", grid),
                    ("singular_check", grid),
                    ("negative_control", grid),
                ],
            ),
            took("vs"),
            min(5),
        ),
    ));
    let pb = verdicts(&reports, "pbw");
    rows.push((
        9,
        "PBW leading coefficients and Shapovalov normalization",
        within(
            require(
                pb,
                &[
                    ("leading_coefficient_lex", 50),
                    ("leading_coefficient_reverse", 50),
                    ("shapovalov_coefficient_lex", verify::vs_grid().len()),
                    ("shapovalov_coefficient_reverse", verify::vs_grid().len()),
                ],
            ),
            took("pbw"),
            min(2),
        ),
    ));

    let again = verify::run("all", &cfg).expect("suite runs");
    let first: Vec<SuiteReport> = verify::SUITES.iter().map(|s| reports[*s].0.clone()).collect();
    let same = serde_json::to_string(&first).unwrap() == serde_json::to_string(&again).unwrap();
    let all_pass = first.iter().all(SuiteReport::passed);
    rows.push((
        10,
        "verify --suite all deterministic and fast",
        Outcome {
            ok: same && all_pass && first_pass <= min(15),
            detail: format!(
                "identical reports across runs: {same}; all verdicts pass: {all_pass}; {:.2}s",
                first_pass.as_secs_f64()
            ),
        },
    ));

    let mut failed = 0;
    for (k, what, o) in &rows {
        println!("criterion {k:>2} {}: {what} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} passed, {failed} failed", rows.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn vsv(reports: &BTreeMap<String, (SuiteReport, Duration)>) -> &[Verdict] {
    verdicts(reports, "vs")
}
