//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every tolerance here is pinned; the oracles are closed-form
//! gamma-function expressions, classical-calculus limits, and exact
//! structural facts (bitwise zeros), never the implementation under test.

use std::process::Command;

use fracrule::{
    frac_derivative, gamma, hadamard_decompose, hadamard_g2, holder_estimate, leibniz_defect,
    modified_chain_residual, remainder_vanishing_check, scale_property_residual,
    theorem_chain_residual, weierstrass, Grid, SampledFunction, Verdict, VerdictConfig,
    WeierstrassParams,
};
use fracrule::{convergence_study, FractionalOrder, OperatorKind, OperatorSpec};

fn rl(alpha: f64) -> OperatorSpec {
    OperatorSpec::new(
        OperatorKind::RiemannLiouvilleGl,
        FractionalOrder::new(alpha).unwrap(),
        0.0,
    )
}

fn jumarie(alpha: f64) -> OperatorSpec {
    OperatorSpec::new(
        OperatorKind::JumarieShiftedGl,
        FractionalOrder::new(alpha).unwrap(),
        0.0,
    )
}

fn unit_grid(n: usize) -> Grid {
    Grid::new(0.0, 1.0 / (n - 1) as f64, n).unwrap()
}

/// Closed-form power rule D^α x^p = Γ(p+1)/Γ(p+1−α)·x^(p−α) with base 0.
fn power_rule(p: f64, alpha: f64, x: f64) -> f64 {
    gamma(p + 1.0).unwrap() / gamma(p + 1.0 - alpha).unwrap() * x.powf(p - alpha)
}

fn sup_error_from_quarter(d: &SampledFunction, exact: impl Fn(f64) -> f64) -> f64 {
    let grid = d.grid();
    let mut worst = 0.0f64;
    for i in 0..grid.len() {
        let x = grid.point(i);
        if x >= 0.25 {
            worst = worst.max((d.value(i) - exact(x)).abs());
        }
    }
    worst
}

#[test]
fn criterion_01_power_rule_oracle() {
    for &p in &[1.0, 2.0, 0.5] {
        for &alpha in &[0.3, 0.5, 0.7] {
            let mut errors = Vec::new();
            for n in [4001usize, 8001] {
                let grid = unit_grid(n);
                let f = SampledFunction::sample(|x| x.powf(p), grid, "x^p").unwrap();
                let d = frac_derivative(&f, &rl(alpha)).unwrap();
                errors.push(sup_error_from_quarter(&d, |x| power_rule(p, alpha, x)));
            }
            assert!(
                errors[0] <= 0.02,
                "p = {p}, alpha = {alpha}: sup error {} > 0.02",
                errors[0]
            );
            let order = (errors[0] / errors[1]).log2();
            assert!(
                order >= 0.9,
                "p = {p}, alpha = {alpha}: observed order {order} < 0.9 ({errors:?})"
            );
        }
    }
    println!("criterion 01 (power-rule oracle, 9 combinations): PASS");
}

#[test]
fn criterion_02_leibniz_violation_dichotomy() {
    let ladder = [4e-3, 2e-3, 1e-3];
    let cfg = VerdictConfig::default();
    let runner = |alpha: f64| {
        convergence_study("leibniz_defect", &ladder, &cfg, |h| {
            let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
            let f = SampledFunction::sample(|x| x, grid, "x").unwrap();
            leibniz_defect(&f, &f, &rl(alpha))
        })
        .unwrap()
    };

    let fractional = runner(0.5);
    assert_eq!(fractional.report.verdict, Verdict::Persists);
    // Closed form: [Γ(3)/Γ(2.5) − 2/Γ(1.5)]·x^1.5 = −0.7522527780636751·x^1.5.
    let limit = -0.752_252_778_063_675_1;
    let at_one = fractional.finest.value_at(1.0).unwrap();
    assert!(
        ((at_one - limit) / limit).abs() <= 0.02,
        "defect at x = 1: {at_one} vs {limit}"
    );

    let classical = runner(1.0);
    assert_eq!(classical.report.verdict, Verdict::Vanishes);
    assert!(
        classical.report.observed_order >= 0.9,
        "alpha = 1 order {}",
        classical.report.observed_order
    );
    println!(
        "criterion 02 (Leibniz defect): PASS — alpha 0.5 persists at {at_one:.7}, alpha 1 vanishes with order {:.3}",
        classical.report.observed_order
    );
}

#[test]
fn criterion_03_constant_annihilation() {
    let n = 4001;
    let grid = unit_grid(n);
    let ones = SampledFunction::sample(|_| 1.0, grid, "1").unwrap();

    for &alpha in &[0.3, 0.5, 0.7, 1.0] {
        let d = frac_derivative(&ones, &jumarie(alpha)).unwrap();
        assert!(
            d.values().iter().all(|v| v.to_bits() == 0.0f64.to_bits()),
            "Jumarie of 1 not bitwise zero at alpha = {alpha}"
        );
    }

    let d_rl = frac_derivative(&ones, &rl(0.5)).unwrap();
    let inv_gamma_half = 1.0 / gamma(0.5).unwrap();
    for i in 0..n {
        let x = grid.point(i);
        if x >= 0.25 {
            let exact = inv_gamma_half * x.powf(-0.5);
            let rel = ((d_rl.value(i) - exact) / exact).abs();
            assert!(rel <= 0.02, "RL of 1 at x = {x}: relative error {rel}");
        }
    }
    println!("criterion 03 (constant annihilation + RL of constant): PASS");
}

#[test]
fn criterion_04_theorem_reduction_at_classical_order() {
    let ladder = [4e-3, 2e-3, 1e-3];
    let cfg = VerdictConfig::default();
    let study = convergence_study("theorem_chain", &ladder, &cfg, |h| {
        let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
        let w = SampledFunction::sample(|x| x * x, grid, "x^2").unwrap();
        theorem_chain_residual(f64::sin, f64::cos, &w, &rl(1.0), 0.5)
    })
    .unwrap();
    assert_eq!(study.report.verdict, Verdict::Vanishes);
    assert!(
        study.report.observed_order >= 0.9,
        "order {}",
        study.report.observed_order
    );

    // Identity outer function: residual bitwise 0 for every operator and α.
    let grid = unit_grid(801);
    let params = WeierstrassParams::new(0.5, 2.0, 40).unwrap();
    let rough = SampledFunction::sample(|x| weierstrass(&params, x), grid, "W").unwrap();
    let smooth = SampledFunction::sample(|x| x * x, grid, "x^2").unwrap();
    for w in [&rough, &smooth] {
        for &alpha in &[0.3, 0.5, 0.7, 1.0] {
            for spec in [rl(alpha), jumarie(alpha)] {
                let report = theorem_chain_residual(|t| t, |_| 1.0, w, &spec, 0.5).unwrap();
                assert!(
                    report
                        .residual
                        .values()
                        .iter()
                        .all(|v| v.to_bits() == 0.0f64.to_bits()),
                    "identity outer function left a nonzero residual ({:?}, alpha {alpha})",
                    spec.kind
                );
            }
        }
    }
    println!(
        "criterion 04 (chain rule at alpha = 1, identity exactness): PASS — order {:.3}",
        study.report.observed_order
    );
}

#[test]
fn criterion_05_remainder_vanishing() {
    let ladder = [4e-3, 2e-3, 1e-3];
    let cfg = VerdictConfig::default();

    // Classical order: f = cos, w = id, x0 = 0.5.
    let classical = convergence_study("remainder_vanishing", &ladder, &cfg, |h| {
        let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
        let w = SampledFunction::sample(|x| x, grid, "x").unwrap();
        remainder_vanishing_check(|t| -t.cos(), &w, &rl(1.0), 0.5, 32)
    })
    .unwrap();
    assert_eq!(classical.report.verdict, Verdict::Vanishes);
    assert!(
        classical.report.observed_order >= 0.5,
        "alpha = 1 order {}",
        classical.report.observed_order
    );

    // Fractional order on a quadratic: remainder is x², and its half
    // derivative at the origin is exactly zero at every step.
    let fractional = convergence_study("remainder_vanishing", &ladder, &cfg, |h| {
        let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
        let w = SampledFunction::sample(|x| x, grid, "x").unwrap();
        remainder_vanishing_check(|_| 2.0, &w, &rl(0.5), 0.0, 32)
    })
    .unwrap();
    assert_eq!(fractional.report.verdict, Verdict::Vanishes);
    assert!(fractional.report.observed_order >= 0.5);
    assert!(fractional.report.norms.iter().all(|n| *n == 0.0));
    println!(
        "criterion 05 (remainder vanishing): PASS — classical order {:.3}, fractional norms {:?}",
        classical.report.observed_order, fractional.report.norms
    );
}

#[test]
fn criterion_06_scale_property() {
    let ladder = [4e-3, 2e-3, 1e-3];
    let cfg = VerdictConfig::default();
    for &alpha in &[0.5, 1.0] {
        for &lambda in &[2.0, 4.0] {
            let study = convergence_study("scale_property", &ladder, &cfg, |h| {
                let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
                scale_property_residual(|x| x, lambda, &rl(alpha), &grid)
            })
            .unwrap();
            assert_eq!(
                study.report.verdict,
                Verdict::Vanishes,
                "alpha {alpha} lambda {lambda}: norms {:?}",
                study.report.norms
            );
            assert!(
                study.report.observed_order >= 0.9,
                "alpha {alpha} lambda {lambda}: order {}",
                study.report.observed_order
            );
        }
    }

    // λ = 1 must be bitwise exact.
    let grid = unit_grid(1001);
    let report = scale_property_residual(|x| x, 1.0, &rl(0.5), &grid).unwrap();
    assert!(report
        .residual
        .values()
        .iter()
        .all(|v| v.to_bits() == 0.0f64.to_bits()));
    println!("criterion 06 (scale property): PASS — residuals at the determinism floor");
}

#[test]
fn criterion_07_modified_chain_rule() {
    // Smooth-side oracle: f(x) = x^0.5, λ = 4 under the Jumarie operator.
    // f(4x) = 2√x and D^0.5(2√x) = 2Γ(1.5) = 1.7724538509055159, constant.
    let n = 8001;
    let grid = unit_grid(n);
    let spec = jumarie(0.5);
    let report = modified_chain_residual(|x| x.sqrt(), 4.0, &spec, &grid).unwrap();
    let target = 2.0 * gamma(1.5).unwrap();
    assert!((target - 1.772_453_850_905_515_9).abs() < 1e-12);

    let lhs = frac_derivative(
        &SampledFunction::sample(|x| (4.0 * x).sqrt(), grid, "2sqrt(x)").unwrap(),
        &spec,
    )
    .unwrap();
    let dilated = Grid::new(0.0, 4.0 * grid.h(), n).unwrap();
    let rhs_derivative = frac_derivative(
        &SampledFunction::sample(|x| x.sqrt(), dilated, "sqrt").unwrap(),
        &spec,
    )
    .unwrap();
    let lambda_pow = 4.0f64.powf(0.5);
    let burn_in = report.burn_in;
    for i in burn_in..n {
        let lhs_rel = ((lhs.value(i) - target) / target).abs();
        let rhs_rel = ((lambda_pow * rhs_derivative.value(i) - target) / target).abs();
        assert!(
            lhs_rel <= 0.01 && rhs_rel <= 0.01,
            "index {i}: lhs {} rhs {} target {target}",
            lhs.value(i),
            lambda_pow * rhs_derivative.value(i)
        );
    }
    assert!(
        report.sup_norm <= 1e-12,
        "modified chain residual sup {}",
        report.sup_norm
    );

    // Rough-side: f = Weierstrass(0.5, 2, 40), λ = 2, convergence verdict.
    let params = WeierstrassParams::new(0.5, 2.0, 40).unwrap();
    let study = convergence_study(
        "modified_chain",
        &[4e-3, 2e-3, 1e-3],
        &VerdictConfig::default(),
        |h| {
            let grid = fracrule::conforming_grid(0.0, 1.0, h)?;
            modified_chain_residual(|x| weierstrass(&params, x), 2.0, &jumarie(0.5), &grid)
        },
    )
    .unwrap();
    assert_eq!(study.report.verdict, Verdict::Vanishes);
    assert!(
        study.report.observed_order >= 0.3,
        "rough-input order {}",
        study.report.observed_order
    );
    println!(
        "criterion 07 (modified chain rule): PASS — smooth side at {target:.7}, rough side {:?}",
        study.report.norms
    );
}

#[test]
fn criterion_08_holder_estimator() {
    let started = std::time::Instant::now();

    // Weierstrass with exponent 0.5 sampled at n = 2^14 over [0, 2π].
    let params = WeierstrassParams::new(0.5, 2.0, 40).unwrap();
    let n = 1 << 14;
    let h = 2.0 * std::f64::consts::PI / (n - 1) as f64;
    let grid = Grid::new(0.0, h, n).unwrap();
    let w = SampledFunction::sample(|x| weierstrass(&params, x), grid, "W").unwrap();
    let estimate = holder_estimate(&w, 12).unwrap();
    assert!(
        (estimate.exponent_hat - 0.5).abs() <= 0.1,
        "Weierstrass exponent {} (r² {})",
        estimate.exponent_hat,
        estimate.r_squared
    );
    assert!(
        estimate.r_squared >= 0.95,
        "Weierstrass fit r² {}",
        estimate.r_squared
    );

    // Lipschitz line.
    let grid = unit_grid(4097);
    let line = SampledFunction::sample(|x| x, grid, "x").unwrap();
    let est_line = holder_estimate(&line, 8).unwrap();
    assert!(
        (est_line.exponent_hat - 1.0).abs() <= 0.05,
        "line exponent {}",
        est_line.exponent_hat
    );

    // Square root.
    let root = SampledFunction::sample(|x| x.sqrt(), grid, "sqrt").unwrap();
    let est_root = holder_estimate(&root, 8).unwrap();
    assert!(
        (est_root.exponent_hat - 0.5).abs() <= 0.05,
        "sqrt exponent {}",
        est_root.exponent_hat
    );

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "pair scans took {elapsed:?}");
    println!(
        "criterion 08 (Holder estimator): PASS — W {:.3} (r² {:.4}), line {:.3}, sqrt {:.3}, {elapsed:?}",
        estimate.exponent_hat, estimate.r_squared, est_line.exponent_hat, est_root.exponent_hat
    );
}

#[test]
fn criterion_09_hadamard_identity() {
    let grid = Grid::new(0.0, 0.01, 101).unwrap();
    let t0 = 0.3;
    let dec = hadamard_decompose(f64::cos, |t| -t.sin(), |t| -t.cos(), t0, grid, 32).unwrap();
    let residual = dec.max_reconstruction_residual(f64::cos);
    assert!(residual <= 1e-10, "reconstruction residual {residual}");

    let g2_at_t0 = hadamard_g2(|t| -t.cos(), t0, t0, 32).unwrap();
    let half_curvature = -t0.cos() / 2.0;
    assert!(
        (g2_at_t0 - half_curvature).abs() <= 1e-12,
        "g2(t0) = {g2_at_t0} vs {half_curvature}"
    );
    println!(
        "criterion 09 (Hadamard identity): PASS — reconstruction {residual:.2e}, coincidence {:.2e}",
        (g2_at_t0 - half_curvature).abs()
    );
}

#[test]
fn criterion_10_cli_determinism_across_threads() {
    let bin = env!("CARGO_BIN_EXE_fracrule");
    let dir = std::env::temp_dir().join("fracrule-acceptance-determinism");
    std::fs::create_dir_all(&dir).unwrap();

    let mut digests = Vec::new();
    let mut contents = Vec::new();
    for (run, threads) in [(0, "1"), (1, "1"), (2, "4"), (3, "4")] {
        let out = dir.join(format!("run{run}.json"));
        let status = Command::new(bin)
            .args([
                "verify-leibniz",
                "--alpha",
                "0.5",
                "--op",
                "rl",
                "--f",
                "power:1",
                "--g",
                "power:1",
                "--grid",
                "0:0.001:1001",
                "--json",
            ])
            .arg(&out)
            .env("FRACRULE_THREADS", threads)
            .status()
            .expect("binary runs");
        assert!(status.success(), "run {run} failed");
        let payload: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        digests.push(
            payload["metadata"]["content_digest"]
                .as_str()
                .unwrap()
                .to_owned(),
        );
        contents.push(serde_json::to_string(&payload["content"]).unwrap());
    }
    assert!(
        digests.iter().all(|d| d == &digests[0]),
        "digests differ: {digests:?}"
    );
    assert!(contents.iter().all(|c| c == &contents[0]));
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "criterion 10 (bitwise determinism across runs and FRACRULE_THREADS): PASS — {}",
        digests[0]
    );
}
