//! Acceptance battery: one test per criterion, each printing a single
//! pass/fail line. Every check is exact (zero tolerance); a failing
//! criterion prints its first counterexample.

use rpq_virasoro::brackets::{n_bracket_bosonic, Gen, SuperPrefactor};
use rpq_virasoro::config::RunConfig;
use rpq_virasoro::deformation::{preset, PRESET_NAMES};
use rpq_virasoro::operators::GradedOperator;
use rpq_virasoro::poly::{Ctx, SubstTarget};
use rpq_virasoro::report::{IdentityReport, Verdict};
use rpq_virasoro::scalar::Scalar;
use rpq_virasoro::suites::run_suites;

fn run(preset_name: &str, suites: &[&str]) -> Vec<IdentityReport> {
    let suites_json = suites
        .iter()
        .map(|s| format!("\"{s}\""))
        .collect::<Vec<_>>()
        .join(", ");
    let cfg = RunConfig::from_json(&format!(
        r#"{{ "deformation": {{ "preset": "{preset_name}" }}, "suites": [{suites_json}] }}"#
    ))
    .unwrap();
    run_suites(&cfg).unwrap()
}

fn verdict_line(criterion: &str, ok: bool) {
    println!(
        "criterion {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn first_failure(reports: &[IdentityReport]) -> String {
    reports
        .iter()
        .find(|r| r.verdict.is_fail())
        .map(|r| {
            format!(
                "{} {:?}: {}",
                r.identity_id,
                r.indices,
                r.counterexample
                    .as_ref()
                    .map(|c| format!("{} | lhs = {} | rhs = {}", c.location, c.lhs, c.rhs))
                    .unwrap_or_else(|| "no counterexample rendering".into())
            )
        })
        .unwrap_or_default()
}

/// 1. Deformed-number suite: tau form on [-6, 6], [0] = 0, classical
/// limit through the tau polynomial. Must pass for all five presets.
#[test]
fn criterion_01_deformed_numbers() {
    let mut ok = true;
    for name in PRESET_NAMES {
        let reports = run(name, &["tau-identities"]);
        ok &= reports.iter().all(|r| !r.verdict.is_fail());
        // classical limit [n] -> n at p = q = 1 for every n in [-6, 6],
        // via the tau polynomial form (no pole: [n] = scale (tau1^n - tau2^n)
        // with [-k] = -(tau1 tau2)^-k [k])
        let d = preset(name).unwrap();
        let tau = d.tau().unwrap();
        let classical = [
            SubstTarget::value_i64(1),
            SubstTarget::value_i64(1),
            SubstTarget::Power("c", 1),
        ];
        for n in -6..=6i64 {
            let k = n.abs();
            let mut poly = Scalar::zero(Ctx::Pqc);
            for i in 0..k {
                poly = &poly + &(&tau.pow1(k - 1 - i) * &tau.pow2(i));
            }
            let mut value = &d.bracket_number(1).unwrap() * &poly;
            if n < 0 {
                value = (&tau.pow1(n) * &tau.pow2(n)).mul_ref(&value).neg_ref();
            }
            let got = value.substitute(Ctx::Pqc, &classical).unwrap();
            let expect = Scalar::from_int(Ctx::Pqc, n);
            if got != expect {
                ok = false;
                eprintln!("{name}: classical limit fails at n = {n}: {got}");
            }
        }
    }
    verdict_line("01 deformed-number suite", ok);
    assert!(ok);
}

/// 2. theta-structure: [G_m1, G_m2] = 0 and G compose G = 0 for all
/// m in [-4, 4]^2. Must pass.
#[test]
fn criterion_02_theta_structure() {
    let mut ok = true;
    for name in PRESET_NAMES {
        let reports = run(name, &["crochet3"]);
        assert_eq!(reports.len(), 81, "{name}: expected the full 9x9 grid");
        if reports.iter().any(|r| r.verdict.is_fail()) {
            ok = false;
            eprintln!("{name}: {}", first_failure(&reports));
        }
    }
    verdict_line("02 theta-structure suite", ok);
    assert!(ok);
}

/// 3. Binary bracket closure on window 8 for m1, m2 in [-3, 3]:
/// Jagannathan-Srinivasa and Arik-Coon are must-pass on every
/// non-degenerate cell.
#[test]
fn criterion_03_binary_brackets_js_and_ac() {
    let mut ok = true;
    for name in ["jagannathan-srinivasa", "arik-coon"] {
        let reports = run(name, &["crochet1", "crochet2"]);
        let failures: Vec<&IdentityReport> =
            reports.iter().filter(|r| r.verdict.is_fail()).collect();
        if !failures.is_empty() {
            ok = false;
            eprintln!(
                "{name}: {} non-degenerate cells fail; first: {}",
                failures.len(),
                first_failure(&reports)
            );
        }
    }
    verdict_line("03 binary bracket suite (JS, AC must-pass)", ok);
    assert!(
        ok,
        "weighted binary brackets do not close on the basis window for every \
         non-degenerate cell; see the counterexamples above"
    );
}

/// 4. sigma-derivation verdict table: must run and be deterministic for
/// every preset (verdict-only; the rule provably holds only when tau1 = 1).
#[test]
fn criterion_04_sigma_derivation_table() {
    let mut ok = true;
    for name in PRESET_NAMES {
        let a = run(name, &["sigma-derivation"]);
        let b = run(name, &["sigma-derivation"]);
        let ser_a = serde_json::to_string(&a).unwrap();
        let ser_b = serde_json::to_string(&b).unwrap();
        if a.len() != 81 || ser_a != ser_b {
            ok = false;
        }
        let passes = a.iter().filter(|r| r.verdict.is_pass()).count();
        println!("  sigma-derivation {name}: {passes}/81 pairs satisfy the rule");
        // the one-sided twisted Leibniz rule holds exactly for Arik-Coon
        if name == "arik-coon" && passes != 81 {
            ok = false;
        }
    }
    verdict_line("04 sigma-derivation verdict table", ok);
    assert!(ok);
}

/// 5. n-bracket oracle: brute force vs closed forms at n = 3 per preset;
/// verdicts recorded, every mismatch carries its first counterexample.
#[test]
fn criterion_05_n_bracket_oracle() {
    let mut ok = true;
    for name in PRESET_NAMES {
        for suite in ["rcom1-vs-rnb1", "rcom2-vs-rnb2"] {
            let reports = run(name, &[suite]);
            let expected = if suite == "rcom1-vs-rnb1" { 60 } else { 120 };
            if reports.len() != expected {
                ok = false;
                eprintln!("{name}/{suite}: expected {expected} cells, got {}", reports.len());
            }
            for r in &reports {
                if r.verdict.is_fail() && r.counterexample.is_none() {
                    ok = false;
                    eprintln!("{name}/{suite}: fail without counterexample at {:?}", r.indices);
                }
            }
            let fails = reports.iter().filter(|r| r.verdict.is_fail()).count();
            println!("  {name}/{suite}: {fails}/{} mismatches (each with a counterexample)", reports.len());
        }
    }
    verdict_line("05 n-bracket oracle suite", ok);
    assert!(ok);
}

/// 6. Antisymmetry of the bosonic permutation sum under every adjacent
/// transposition, n = 3 and n = 4, exact. Must pass.
#[test]
fn criterion_06_antisymmetry() {
    let mut ok = true;
    for name in PRESET_NAMES {
        let d = preset(name).unwrap();
        for ms in [vec![2i64, 1, -1], vec![1, 0, -2]] {
            for k in 0..ms.len() - 1 {
                let mut swapped = ms.clone();
                swapped.swap(k, k + 1);
                let a = n_bracket_bosonic(&d, &ms).unwrap();
                let b = n_bracket_bosonic(&d, &swapped).unwrap();
                let sum = a.add(&b).unwrap();
                if !sum.is_zero_on_window(&d, 4).unwrap() {
                    ok = false;
                    eprintln!("{name}: n=3 transposition at {k} fails for {ms:?}");
                }
            }
        }
        for ms in [vec![2i64, 1, 0, -1]] {
            for k in 0..ms.len() - 1 {
                let mut swapped = ms.clone();
                swapped.swap(k, k + 1);
                let a = n_bracket_bosonic(&d, &ms).unwrap();
                let b = n_bracket_bosonic(&d, &swapped).unwrap();
                let sum = a.add(&b).unwrap();
                if !sum.is_zero_on_window(&d, 4).unwrap() {
                    ok = false;
                    eprintln!("{name}: n=4 transposition at {k} fails for {ms:?}");
                }
            }
        }
    }
    verdict_line("06 antisymmetry of the permutation sum", ok);
    assert!(ok);
}

/// 7. Virasoro 2n internal consistency: the general bracket matches the
/// explicit 4-bracket instance cell by cell, the central part is exactly
/// antisymmetric, and the 6-bracket instance reproduces the general
/// formula. Must pass.
#[test]
fn criterion_07_virasoro_2n() {
    let mut ok = true;
    for name in ["jagannathan-srinivasa", "arik-coon"] {
        let reports = run(name, &["virasoro-2n"]);
        if reports.iter().any(|r| r.verdict.is_fail()) {
            ok = false;
            eprintln!("{name}: {}", first_failure(&reports));
        }
    }
    verdict_line("07 Virasoro 2n-bracket consistency", ok);
    assert!(ok);
}

/// 8. Super Jacobi verdict table for all triples over [-2, 2]:
/// deterministic, with skips only on degenerate weights. Verdict-only.
#[test]
fn criterion_08_super_jacobi_table() {
    let mut ok = true;
    for name in ["jagannathan-srinivasa", "arik-coon"] {
        let a = run(name, &["super-jacobi"]);
        let b = run(name, &["super-jacobi"]);
        if serde_json::to_string(&a).unwrap() != serde_json::to_string(&b).unwrap() {
            ok = false;
            eprintln!("{name}: nondeterministic table");
        }
        if a.len() != 1000 {
            ok = false;
            eprintln!("{name}: expected 1000 triples, got {}", a.len());
        }
        let pass = a.iter().filter(|r| r.verdict.is_pass()).count();
        let fail = a.iter().filter(|r| r.verdict.is_fail()).count();
        let skip = a.len() - pass - fail;
        println!("  super-jacobi {name}: pass={pass} fail={fail} skipped={skip}");
    }
    verdict_line("08 super Jacobi verdict table", ok);
    assert!(ok);
}

/// 9. Toy model: structural commutation (a) and substitution consistency
/// (e) are must-pass; the printed product/commutator/n-bracket claims
/// (b, c, d) are recorded verdicts.
#[test]
fn criterion_09_toy_model() {
    let mut ok = true;
    // (a) + (c): multiplication operators commute, structurally
    let reports = run("jagannathan-srinivasa", &["scrto", "scrgo"]);
    for r in &reports {
        if r.must_pass && r.verdict.is_fail() {
            ok = false;
            eprintln!("structural commutation failed at {:?}", r.indices);
        }
    }
    let collapse_fail = reports
        .iter()
        .filter(|r| r.identity_id.ends_with("rhs-collapse") && r.verdict.is_fail())
        .count();
    println!("  scrto/scrgo right-hand sides failing to collapse to zero: {collapse_fail}");
    // (b) product grid with exact verdicts
    let prod = run("jagannathan-srinivasa", &["rpqprod"]);
    assert_eq!(prod.len(), 882);
    for r in &prod {
        if r.verdict.is_fail() && r.counterexample.is_none() {
            ok = false;
        }
    }
    // (d) n-bracket closed forms
    let nb = run("jagannathan-srinivasa", &["toy-nbracket"]);
    assert_eq!(nb.len(), 240);
    // (e) specializations are must-pass
    for suite in ["ac-specialization", "js-specialization"] {
        let reports = run("jagannathan-srinivasa", &[suite]);
        if reports.iter().any(|r| r.verdict.is_fail()) {
            ok = false;
            eprintln!("{suite}: {}", first_failure(&reports));
        }
    }
    verdict_line("09 toy-model suite", ok);
    assert!(ok);
}

/// 10. Bell polynomials: recurrence vs exponential-series oracle through
/// k = 8, exact. Must pass.
#[test]
fn criterion_10_bell() {
    let reports = run("jagannathan-srinivasa", &["bell"]);
    let ok = reports.len() == 9 && reports.iter().all(|r| r.verdict.is_pass());
    verdict_line("10 Bell polynomial suite", ok);
    assert!(ok, "{}", first_failure(&reports));
}

/// 11. Dictionary verdict grid with full renderings, deterministic.
/// Verdict-only.
#[test]
fn criterion_11_dictionary() {
    let mut ok = true;
    let a = run("jagannathan-srinivasa", &["dictionary"]);
    let b = run("jagannathan-srinivasa", &["dictionary"]);
    if serde_json::to_string(&a).unwrap() != serde_json::to_string(&b).unwrap() {
        ok = false;
    }
    // grid: gamma x a x b x m x n x {bosonic, mixed} = 2*2*2*4*4*2
    if a.len() != 256 {
        ok = false;
        eprintln!("expected 256 dictionary cells, got {}", a.len());
    }
    for r in &a {
        if r.verdict.is_fail() {
            let c = r.counterexample.as_ref();
            if c.is_none() || c.unwrap().lhs.is_empty() || c.unwrap().rhs.is_empty() {
                ok = false;
                eprintln!("dictionary fail without full rendering at {:?}", r.indices);
            }
        }
    }
    let fails = a.iter().filter(|r| r.verdict.is_fail()).count();
    println!("  dictionary: {fails}/{} cells mismatch under the documented marker semantics", a.len());
    verdict_line("11 dictionary suite", ok);
    assert!(ok);
}

/// 12 (library half): same config gives byte-identical suite output; the
/// process-level contract is exercised in the CLI test.
#[test]
fn criterion_12_report_determinism() {
    let cfg = RunConfig::from_json(
        r#"{ "deformation": { "preset": "arik-coon" },
             "suites": ["tau-identities", "crochet1", "witt3", "bell"] }"#,
    )
    .unwrap();
    let a = run_suites(&cfg).unwrap();
    let b = run_suites(&cfg).unwrap();
    let ok = serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap();
    verdict_line("12 report determinism (library)", ok);
    assert!(ok);
}

/// The zero operator versus structural identities used across suites:
/// composing a fermionic generator with itself is zero on the window, and
/// the identity operator composes neutrally.
#[test]
fn operator_interface_sanity() {
    let d = preset("jagannathan-srinivasa").unwrap();
    let g = GradedOperator::g_op(0);
    assert!(g.compose(&g).is_zero_on_window(&d, 4).unwrap());
    let _ = SuperPrefactor::NegativeShift.label();
    let _ = Gen::L(0).label();
}
