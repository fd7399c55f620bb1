//! Acceptance gate: one test per shipping criterion, so the suite output
//! reads as a pass/fail checklist. Every tolerance, evaluation budget, and
//! time limit asserted here is part of the library's published contract;
//! loosening one is an interface change, not a test fix.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use std::cmp::Ordering;

use catalankit::cdf::{make_builtin, moment_check, BUILTIN_NAMES};
use catalankit::constants::{catalan_partial_sum, catalan_reference, CATALAN};
use catalankit::lerch::{derive_closed_form, lerch_series};
use catalankit::quadrature::atan_over_x;
use catalankit::representations::registry::{
    builtin_registry, quadrant_identity_value, run_case, CaseReport, Tolerance, VerificationCase,
};
use catalankit::representations::EngineParams;

/// Reference value of the target constant, shortest round-tripping double.
const G: f64 = 0.915965594177219;

fn case(name: &str) -> VerificationCase {
    builtin_registry()
        .into_iter()
        .find(|c| c.name() == name)
        .unwrap_or_else(|| panic!("registry is missing case {name}"))
}

fn run_named(name: &str, params: &EngineParams) -> (CaseReport, Duration) {
    let c = case(name);
    let start = Instant::now();
    let report = run_case(&c, params);
    (report, start.elapsed())
}

fn value_of(report: &CaseReport) -> f64 {
    report
        .result
        .as_ref()
        .unwrap_or_else(|e| panic!("case {} failed to evaluate: {e}", report.name))
        .value
}

#[test]
fn criterion_01_closed_forms_match_the_exact_table() {
    let table: [&[i64]; 8] = [
        &[1, -1],
        &[1, -6, 1],
        &[1, -23, 23, -1],
        &[1, -76, 230, -76, 1],
        &[1, -237, 1682, -1682, 237, -1],
        &[1, -722, 10543, -23548, 10543, -722, 1],
        &[1, -2179, 60657, -259723, 259723, -60657, 2179, -1],
        &[1, -6552, 331612, -2485288, 4675014, -2485288, 331612, -6552, 1],
    ];
    let start = Instant::now();
    for (idx, expected) in table.iter().enumerate() {
        let n = idx as u32 + 1;
        let form = derive_closed_form(n);
        let coeffs = form.integer_coeffs();
        let want: Vec<BigInt> = expected.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(coeffs, want, "numerator for n={n}");
        assert_eq!(*form.scale(), BigInt::from(2u8).pow(n), "scale for n={n}");
        assert_eq!(form.pole_order(), n + 1, "pole order for n={n}");
    }
    assert!(
        start.elapsed() < Duration::from_secs(1),
        "derivation must be instant, took {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_02_single_integrals_hit_nine_digits() {
    let params = EngineParams::default();
    for name in [
        "single_uniform_linear",
        "single_cauchy",
        "single_arcsine",
        "single_normal",
    ] {
        let (report, elapsed) = run_named(name, &params);
        let value = value_of(&report);
        assert!(
            (value - G).abs() <= 1e-9,
            "{name}: |{value} - {G}| > 1e-9"
        );
        let evals = report.result.as_ref().unwrap().evaluations;
        assert!(evals <= 1_000_000, "{name}: {evals} evaluations");
        assert!(
            elapsed < Duration::from_secs(1),
            "{name} took {elapsed:?}"
        );
        assert!(report.pass, "{name} must pass its registry tolerance");
    }
}

#[test]
fn criterion_03_double_integrals_hit_eight_digits() {
    let params = EngineParams::default();
    let doubles: Vec<String> = builtin_registry()
        .iter()
        .filter(|c| c.name().starts_with("double_"))
        .map(|c| c.name().to_string())
        .collect();
    assert_eq!(doubles.len(), 11, "published double-integral suite");
    for name in &doubles {
        let (report, elapsed) = run_named(name, &params);
        let value = value_of(&report);
        assert!(
            (value - G).abs() <= 1e-8,
            "{name}: |{value} - {G}| > 1e-8"
        );
        assert!(
            elapsed < Duration::from_secs(10),
            "{name} took {elapsed:?}"
        );
        assert!(report.pass, "{name} must pass its registry tolerance");
    }
}

#[test]
fn criterion_04_log_kernel_integral_hits_nine_digits() {
    let (report, _) = run_named("entry16", &EngineParams::default());
    let value = value_of(&report);
    assert!((value - G).abs() <= 1e-9, "entry16: {value}");
    assert!(report.pass);
}

#[test]
fn criterion_05_side_identities_hold() {
    let params = EngineParams::default();
    let q = quadrant_identity_value();

    let (zero, _) = run_named("side_zero_full", &params);
    assert!(value_of(&zero).abs() <= 1e-8, "odd integrand must vanish");

    let (quadrant, _) = run_named("side_quadrant", &params);
    assert!(
        (value_of(&quadrant) - q).abs() <= 1e-8,
        "positive-quadrant value {} vs {q}",
        value_of(&quadrant)
    );

    let (arctan_sq, _) = run_named("side_arctan_sq", &params);
    assert!(
        (value_of(&arctan_sq) + q).abs() <= 1e-8,
        "negative-side value {} vs {}",
        value_of(&arctan_sq),
        -q
    );
    assert!(zero.pass && quadrant.pass && arctan_sq.pass);
}

#[test]
fn criterion_06_triple_integral_hits_six_digits() {
    let (report, elapsed) = run_named("dim3", &EngineParams::default());
    let value = value_of(&report);
    assert!((value - G).abs() <= 1e-6, "dim3: {value}");
    assert!(elapsed < Duration::from_secs(60), "dim3 took {elapsed:?}");
    assert!(report.pass);
}

#[test]
fn criterion_07_high_dimensions_are_reproducible_within_standard_errors() {
    let params = EngineParams::default();
    assert_eq!(params.seed, 1, "fixed default seed");
    assert_eq!(params.qmc_randomizations, 16, "fixed randomization count");

    for (name, cap) in [
        ("dim4", 1e-3),
        ("dim5", 1e-3),
        ("dim6", 1e-3),
        ("dim10", 1e-2),
    ] {
        let c = case(name);
        match c.tolerance() {
            Tolerance::StdErr { factor, cap: got } => {
                assert_eq!(factor, 4.0, "{name} factor");
                assert_eq!(got, cap, "{name} cap");
            }
            other => panic!("{name} should use a standard-error tolerance, got {other:?}"),
        }

        let first = run_case(&c, &params);
        let r = first.result.as_ref().unwrap();
        let se = r.error_estimate;
        assert!(
            (r.value - G).abs() <= 4.0 * se,
            "{name}: |{} - {G}| > 4 * {se:e}",
            r.value
        );
        assert!(se <= cap, "{name}: standard error {se:e} above cap {cap:e}");
        assert!(first.pass);

        let second = run_case(&c, &params);
        let r2 = second.result.as_ref().unwrap();
        assert_eq!(
            r.value.to_bits(),
            r2.value.to_bits(),
            "{name}: value must be bit-reproducible"
        );
        assert_eq!(
            r.error_estimate.to_bits(),
            r2.error_estimate.to_bits(),
            "{name}: error estimate must be bit-reproducible"
        );
    }
}

#[test]
fn criterion_08_moment_identity_holds_on_the_grid() {
    for name in BUILTIN_NAMES {
        let cdf = make_builtin(name, &[]).unwrap();
        for a in [0.5, 1.0, 2.0, std::f64::consts::PI] {
            for n in 0..=5u32 {
                let (measured, exact) = moment_check(&cdf, a, n)
                    .unwrap_or_else(|e| panic!("{name} a={a} n={n}: {e}"));
                assert!(
                    (measured - exact).abs() <= 1e-9,
                    "{name} a={a} n={n}: {measured} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn criterion_09_series_and_closed_forms_agree_pointwise() {
    // arctan(x)/x is half the s = 1 transcendent at z = -x^2
    for j in 0..100 {
        let x = -0.99 + 0.02 * f64::from(j);
        let series = 0.5 * lerch_series(-x * x, 1.0, 0.5, 1e-14).unwrap();
        let direct = atan_over_x(x);
        assert!(
            (series - direct).abs() <= 1e-12,
            "x={x}: {series} vs {direct}"
        );
    }
    // the s = 0 transcendent is the geometric sum 1/(1+t)
    for j in 0..100 {
        let t = 0.01 * f64::from(j);
        let series = lerch_series(-t, 0.0, 0.5, 1e-14).unwrap();
        let direct = 1.0 / (1.0 + t);
        assert!(
            (series - direct).abs() <= 1e-12,
            "t={t}: {series} vs {direct}"
        );
    }
    // closed forms against the defining series across the open unit interval
    for n in 0..=8u32 {
        let form = derive_closed_form(n);
        for k in 1..=9 {
            let z = 0.1 * f64::from(k);
            let closed = form.eval(z).unwrap();
            let tol = (closed.abs() * 1e-13).max(1e-15);
            let series = lerch_series(-z, -f64::from(n), 0.5, tol).unwrap();
            let rel = (series - closed).abs() / closed.abs();
            assert!(rel <= 1e-12, "n={n} z={z}: relative error {rel:e}");
        }
    }
}

#[test]
fn criterion_10_numerator_rows_are_palindromic() {
    for n in 0..=32u32 {
        let coeffs = derive_closed_form(n).integer_coeffs();
        assert_eq!(coeffs.len() as u32, n + 1);
        for (j, c) in coeffs.iter().enumerate() {
            let mirrored = &coeffs[n as usize - j];
            let signed = if n % 2 == 0 {
                mirrored.clone()
            } else {
                -mirrored.clone()
            };
            assert_eq!(*c, signed, "n={n} j={j}");
        }
    }
}

#[test]
fn criterion_11_reference_value_is_self_consistent() {
    let computed = catalan_reference();
    let stored = CATALAN.value();
    assert!(
        computed.sub(&stored).abs_le_pow10(28),
        "series acceleration must agree with the stored constant to 1e-28"
    );
    // alternating partial sums bracket the limit: odd term counts overshoot
    for terms in [1u64, 2, 5, 6, 99, 100, 1001, 1002] {
        let partial = catalan_partial_sum(terms);
        let expected = if terms % 2 == 1 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        assert_eq!(
            partial.cmp_value(&stored),
            expected,
            "partial sum with {terms} terms on the wrong side"
        );
    }
}
