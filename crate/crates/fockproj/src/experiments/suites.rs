//! Desk-scale verification suites: each runs a deterministic grid, emits a
//! machine-readable report with one pass/fail assertion per check, and a
//! flat table for plotting.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::grids::{concordance_grid, problem_with_c};
use super::sweep::{
    eq14_ratio_curve, prop10_slope_experiment, prop12_slope_experiment, stirling_limit_check,
    SweepConfig,
};
use crate::boundedness::{rat, schur_feasibility, Rational};
use crate::fockspace::{
    kernel_sphere_average, ml_circle_integral_ln, radial_moment, weighted_kernel_integral,
    SpaceParams,
};

/// One checked statement: `passed` is the verdict, `measured` and `bound`
/// carry the numbers behind it.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub bound: f64,
    pub detail: String,
}

impl Assertion {
    fn leq(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Assertion {
            name: name.into(),
            passed: measured.is_finite() && measured <= bound,
            measured,
            bound,
            detail: String::new(),
        }
    }

    fn holds(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Assertion {
            name: name.into(),
            passed,
            measured: if passed { 1.0 } else { 0.0 },
            bound: 1.0,
            detail: detail.into(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Flat numeric table (stringified cells) for CSV emission.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub tables: Vec<Table>,
}

impl SuiteReport {
    fn new(suite: &str, assertions: Vec<Assertion>, tables: Vec<Table>) -> Self {
        let passed = assertions.iter().all(|a| a.passed);
        SuiteReport {
            suite: suite.into(),
            passed,
            assertions,
            tables,
        }
    }
}

/// Suite selector; `All` runs every suite in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SuiteId {
    Lemma8,
    Lemma15,
    Eq14,
    Prop10,
    Prop12,
    Eq27,
    Stirling,
    Schur,
    All,
}

impl SuiteId {
    pub fn singles() -> [SuiteId; 8] {
        [
            SuiteId::Lemma8,
            SuiteId::Lemma15,
            SuiteId::Eq14,
            SuiteId::Prop10,
            SuiteId::Prop12,
            SuiteId::Eq27,
            SuiteId::Stirling,
            SuiteId::Schur,
        ]
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lemma8" => Ok(SuiteId::Lemma8),
            "lemma15" => Ok(SuiteId::Lemma15),
            "eq14" => Ok(SuiteId::Eq14),
            "prop10" => Ok(SuiteId::Prop10),
            "prop12" => Ok(SuiteId::Prop12),
            "eq27" => Ok(SuiteId::Eq27),
            "stirling" => Ok(SuiteId::Stirling),
            "schur" => Ok(SuiteId::Schur),
            "all" => Ok(SuiteId::All),
            other => Err(format!(
                "unknown suite {other:?}; expected one of lemma8, lemma15, eq14, prop10, prop12, eq27, stirling, schur, all"
            )),
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteId::Lemma8 => "lemma8",
            SuiteId::Lemma15 => "lemma15",
            SuiteId::Eq14 => "eq14",
            SuiteId::Prop10 => "prop10",
            SuiteId::Prop12 => "prop12",
            SuiteId::Eq27 => "eq27",
            SuiteId::Stirling => "stirling",
            SuiteId::Schur => "schur",
            SuiteId::All => "all",
        };
        f.write_str(s)
    }
}

/// Tunables shared by the suites; the defaults reproduce the published
/// desk-scale grids.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuiteOptions {
    /// Degree ceiling for the growth sweeps (necessity suite).
    pub k_max_necessity: u64,
    /// Degree ceiling for the borderline slope fits.
    pub k_max_slope: u64,
    /// Relative tolerance of the nested kernel quadratures.
    pub quad_rel_tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            k_max_necessity: 500,
            k_max_slope: 400,
            quad_rel_tol: 1e-6,
        }
    }
}

/// Runs one suite (or all of them, for `SuiteId::All`).
pub fn run_suites(id: SuiteId, opts: &SuiteOptions) -> Vec<SuiteReport> {
    match id {
        SuiteId::Lemma8 => vec![lemma8_suite()],
        SuiteId::Lemma15 => vec![lemma15_suite(opts)],
        SuiteId::Eq14 => vec![eq14_suite(opts)],
        SuiteId::Prop10 => vec![prop10_suite(opts)],
        SuiteId::Prop12 => vec![prop12_suite(opts)],
        SuiteId::Eq27 => vec![eq27_suite(opts)],
        SuiteId::Stirling => vec![stirling_suite()],
        SuiteId::Schur => vec![schur_suite()],
        SuiteId::All => SuiteId::singles()
            .into_iter()
            .flat_map(|s| run_suites(s, opts))
            .collect(),
    }
}

/// Envelope convergence of the radial moments
/// `int t^rho exp(Bt - At^2) dt` against `B^rho exp(B^2/4A)`:
/// the ratio drifts < 5% between B = 20 and B = 40 (8% for rho < 0).
pub fn lemma8_suite() -> SuiteReport {
    let rhos = [-0.5f64, 0.0, 1.0, 2.5];
    let a_coefs = [0.5f64, 1.0, 2.0];
    let bs = [10.0f64, 20.0, 40.0];
    let cases: Vec<(f64, f64)> = rhos
        .iter()
        .flat_map(|&r| a_coefs.iter().map(move |&a| (r, a)))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(rho, a)| {
            let ratios: Vec<f64> = bs
                .iter()
                .map(|&b| {
                    radial_moment(rho, a, b)
                        .expect("grid values are in the valid domain")
                        .ratio_to_envelope()
                        .expect("B > 0 has an envelope")
                })
                .collect();
            (rho, a, ratios)
        })
        .collect();

    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    for (rho, a, ratios) in &results {
        let drift = (ratios[2] / ratios[1] - 1.0).abs();
        let bound = if *rho < 0.0 { 0.08 } else { 0.05 };
        assertions.push(
            Assertion::leq(
                format!("radial moment ratio drift, rho={rho}, A={a}, B: 20 -> 40"),
                drift,
                bound,
            )
            .with_detail(format!("ratios at B=10,20,40: {ratios:?}")),
        );
        for (b, r) in bs.iter().zip(ratios) {
            rows.push(vec![
                rho.to_string(),
                a.to_string(),
                b.to_string(),
                format!("{r:.9e}"),
            ]);
        }
    }
    // the rho = 2.5, A = 1 ratio converges to the Laplace constant
    // (2A)^(-rho) sqrt(pi/A)
    let limit = 2.0f64.powf(-2.5) * PI.sqrt();
    let last = results
        .iter()
        .find(|(r, a, _)| *r == 2.5 && *a == 1.0)
        .map(|(_, _, ratios)| ratios[2])
        .unwrap();
    assertions.push(
        Assertion::leq(
            "radial moment ratio at rho=2.5, A=1, B=40 near the Laplace constant",
            (last / limit - 1.0).abs(),
            0.05,
        )
        .with_detail(format!("ratio {last:.6}, constant {limit:.6}")),
    );

    SuiteReport::new(
        "lemma8",
        assertions,
        vec![Table {
            name: "radial_moment_ratios".into(),
            columns: vec!["rho".into(), "A".into(), "B".into(), "ratio_to_envelope".into()],
            rows,
        }],
    )
}

/// Circle-integral and sphere-average envelope convergence: the normalized
/// `int |E^{(n-1)}(R e^{i theta})| d theta` against
/// `R^((m-1)n - m/2) exp(R^m)`, and the full sphere average against
/// `(r|y|)^(m/2-n) exp(beta r^m |y|^m)`.
pub fn lemma15_suite(opts: &SuiteOptions) -> SuiteReport {
    let tol = opts.quad_rel_tol;
    let circle_grid: Vec<(f64, u32)> = [0.75f64, 1.0, 1.5]
        .iter()
        .flat_map(|&m| [1u32, 2].iter().map(move |&n| (m, n)))
        .collect();
    let rs = [10.0f64, 20.0, 40.0];
    let circle: Vec<_> = circle_grid
        .par_iter()
        .map(|&(m, n)| {
            let ratios: Vec<f64> = rs
                .iter()
                .map(|&r| {
                    let ln_i = ml_circle_integral_ln(m, n - 1, r, tol)
                        .expect("circle integral on the grid");
                    let ln_env = ((m - 1.0) * n as f64 - m / 2.0) * r.ln() + r.powf(m);
                    (ln_i - ln_env).exp()
                })
                .collect();
            (m, n, ratios)
        })
        .collect();

    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    for (m, n, ratios) in &circle {
        let drift = (ratios[2] / ratios[1] - 1.0).abs();
        assertions.push(
            Assertion::leq(
                format!("circle integral ratio drift, m={m}, n={n}, R: 20 -> 40"),
                drift,
                0.10,
            )
            .with_detail(format!("ratios at R=10,20,40: {ratios:?}")),
        );
        for (r, ratio) in rs.iter().zip(ratios) {
            rows.push(vec![
                m.to_string(),
                n.to_string(),
                r.to_string(),
                format!("{ratio:.9e}"),
            ]);
        }
    }

    // m = 1, n = 1: the circle integral is 2 pi I_0(R); compare against the
    // modified-Bessel large-argument form e^R/sqrt(2 pi R) (1 + 1/8R + 9/128R^2)
    let r = 40.0f64;
    let ln_i = ml_circle_integral_ln(1.0, 0, r, tol).unwrap();
    let bessel_asym = (2.0 * PI) * (1.0 + 1.0 / (8.0 * r) + 9.0 / (128.0 * r * r))
        / (2.0 * PI * r).sqrt();
    let ln_want = r + bessel_asym.ln();
    assertions.push(
        Assertion::leq(
            "m=1, n=1 circle integral matches the Bessel asymptote at R=40",
            ((ln_i - ln_want).exp() - 1.0).abs(),
            0.02,
        )
        .with_detail(format!("ln I = {ln_i:.9}, Bessel form {ln_want:.9}")),
    );

    // sphere averages: m = 0.75, n = 1 and m = 1.5, n = 2
    let sphere_cases: [(f64, u32, [f64; 3]); 2] =
        [(0.75, 1, [10.0, 20.0, 40.0]), (1.5, 2, [8.0, 16.0, 32.0])];
    for (m, n, prods) in sphere_cases {
        let space = SpaceParams::new(1.0, m, n).unwrap();
        let ratios: Vec<f64> = prods
            .iter()
            .map(|&prod| {
                let r = prod.sqrt();
                kernel_sphere_average(r, prod / r, &space, tol)
                    .expect("sphere average on the grid")
                    .ratio_to_envelope()
                    .unwrap()
            })
            .collect();
        let drift = (ratios[2] / ratios[1] - 1.0).abs();
        assertions.push(
            Assertion::leq(
                format!(
                    "sphere average ratio drift, m={m}, n={n}, r|y|: {} -> {}",
                    prods[1], prods[2]
                ),
                drift,
                0.10,
            )
            .with_detail(format!("ratios at r|y|={prods:?}: {ratios:?}")),
        );
        for (prod, ratio) in prods.iter().zip(&ratios) {
            rows.push(vec![
                m.to_string(),
                n.to_string(),
                format!("sphere:{prod}"),
                format!("{ratio:.9e}"),
            ]);
        }
    }

    SuiteReport::new(
        "lemma15",
        assertions,
        vec![Table {
            name: "kernel_average_ratios".into(),
            columns: vec!["m".into(), "n".into(), "R".into(), "ratio_to_envelope".into()],
            rows,
        }],
    )
}

/// Necessity-experiment concordance: every `c < 1` grid instance produces a
/// diverging growth curve under the `t_min` rule; no `c > 1` instance does,
/// and their necessity quadratic is positive at the minimizer.
pub fn eq14_suite(opts: &SuiteOptions) -> SuiteReport {
    let grid = concordance_grid();
    let config = SweepConfig::new(
        super::sweep::NuFamily::SingleAxis,
        super::sweep::LambdaRule::TMin,
        opts.k_max_necessity,
        2,
    );
    let one = Rational::one();
    let results: Vec<_> = grid
        .par_iter()
        .map(|prob| {
            let below = prob.c_value() < one;
            let report = eq14_ratio_curve(prob, &config).expect("grid instances are sweepable");
            let lhs_at_tmin_positive = prob.necessity_lhs(&prob.t_min()).is_positive();
            (prob.clone(), below, report, lhs_at_tmin_positive)
        })
        .collect();

    let mut rows = Vec::new();
    let mut below_failures = Vec::new();
    let mut above_failures = Vec::new();
    let mut n_below = 0usize;
    let mut n_above = 0usize;
    for (prob, below, report, lhs_pos) in &results {
        rows.push(vec![
            prob.to_string(),
            prob.c_value().to_f64().unwrap().to_string(),
            format!("{:.6e}", report.fit.k_coef),
            format!("{:.3}", report.quartile_gap),
            report.diverged.to_string(),
        ]);
        if *below {
            n_below += 1;
            if !(report.diverged && report.fit.k_coef > 0.0) {
                below_failures.push(format!(
                    "{prob}: diverged={}, k_coef={:.3e}, gap={:.2}",
                    report.diverged, report.fit.k_coef, report.quartile_gap
                ));
            }
        } else {
            n_above += 1;
            if report.diverged || !lhs_pos {
                above_failures.push(format!(
                    "{prob}: diverged={}, necessity quadratic positive at t_min: {lhs_pos}",
                    report.diverged
                ));
            }
        }
    }

    let mut assertions = vec![
        Assertion::holds(
            format!("all {n_below} instances below the critical ratio diverge with positive linear rate"),
            below_failures.is_empty(),
            below_failures.join("; "),
        ),
        Assertion::holds(
            format!("no instance above the critical ratio trips the divergence flag ({n_above} checked)"),
            above_failures.is_empty(),
            above_failures.join("; "),
        ),
    ];

    // lambda = 0 on the self-adjoint instance: the curve is identically 0
    let prob = crate::boundedness::ProjectionProblem::new(
        rat(1, 1), rat(1, 1), rat(1, 1), rat(2, 1), rat(2, 1), rat(1, 1), 1,
    )
    .unwrap();
    let id_config = SweepConfig::new(
        super::sweep::NuFamily::SingleAxis,
        super::sweep::LambdaRule::Fixed(0.0),
        128,
        1,
    );
    let id_report = eq14_ratio_curve(&prob, &id_config).unwrap();
    let max_abs = id_report.l_values.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    assertions.push(Assertion::leq(
        "identity instance (lambda = 0, p = q = 2, alpha = beta = gamma) has a flat curve",
        max_abs,
        1e-9,
    ));

    SuiteReport::new(
        "eq14",
        assertions,
        vec![Table {
            name: "necessity_curves".into(),
            columns: vec![
                "problem".into(),
                "c".into(),
                "k_coef".into(),
                "quartile_gap".into(),
                "diverged".into(),
            ],
            rows,
        }],
    )
}

/// Borderline diagonal-family slope fits against the closed form
/// `a = (m-2) n (q-p) / (2 m p q)`.
pub fn prop10_suite(opts: &SuiteOptions) -> SuiteReport {
    // (m, n, p, q) borderline instances
    let cases: [((i64, i64), u32, i64, i64); 6] = [
        ((1, 1), 1, 4, 2),
        ((1, 2), 1, 3, 2),
        ((3, 2), 2, 2, 3),
        ((3, 1), 1, 2, 4),
        ((1, 1), 2, 3, 3),
        ((2, 1), 1, 4, 2),
    ];
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(m, n, p, q)| {
            let prob = problem_with_c(&Rational::one(), &rat(p, 1), &rat(q, 1), &rat(m.0, m.1), n);
            let expected = prob.slope_constant().unwrap().to_f64().unwrap();
            let report = prop10_slope_experiment(&prob, opts.k_max_slope)
                .expect("borderline instances fit");
            (m, n, p, q, expected, report)
        })
        .collect();

    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    for (m, n, p, q, expected, report) in &results {
        let fitted = report.fit.ln_k_coef;
        let name = format!("diagonal slope m={}/{}, n={n}, p={p}, q={q}", m.0, m.1);
        if expected.abs() >= 0.02 {
            assertions.push(
                Assertion::leq(
                    format!("{name}: fitted within 10% of {expected:.5}"),
                    (fitted / expected - 1.0).abs(),
                    0.10,
                )
                .with_detail(format!("fitted {fitted:.5}")),
            );
        } else {
            assertions.push(
                Assertion::leq(format!("{name}: slope cancels"), fitted.abs(), 1e-3)
                    .with_detail(format!("expected {expected:.1e}")),
            );
        }
        rows.push(vec![
            format!("{}/{}", m.0, m.1),
            n.to_string(),
            p.to_string(),
            q.to_string(),
            format!("{expected:.6e}"),
            format!("{fitted:.6e}"),
            format!("{:.3e}", report.fit.k_coef),
        ]);
    }

    SuiteReport::new(
        "prop10",
        assertions,
        vec![Table {
            name: "diagonal_slopes".into(),
            columns: vec![
                "m".into(),
                "n".into(),
                "p".into(),
                "q".into(),
                "expected_a".into(),
                "fitted_a".into(),
                "k_coef".into(),
            ],
            rows,
        }],
    )
}

/// Single-axis slope experiments: only the sign is asserted, matching
/// `sign(((2n-1) m - 2n)(q - p))`; magnitudes are recorded.
pub fn prop12_suite(opts: &SuiteOptions) -> SuiteReport {
    let cases: [((i64, i64), u32, i64, i64); 5] = [
        ((9, 5), 2, 2, 3),
        ((1, 2), 1, 2, 3),
        ((3, 1), 1, 3, 2),
        ((3, 2), 2, 3, 3),
        ((4, 3), 2, 2, 3),
    ];
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(m, n, p, q)| {
            let m_rat = rat(m.0, m.1);
            let prob = problem_with_c(&Rational::one(), &rat(p, 1), &rat(q, 1), &m_rat, n);
            let sign_factor = (&m_rat * rat(2 * n as i64 - 1, 1) - rat(2 * n as i64, 1))
                * (rat(q, 1) - rat(p, 1));
            let report = prop12_slope_experiment(&prob, opts.k_max_slope)
                .expect("borderline instances fit");
            (m, n, p, q, sign_factor, report)
        })
        .collect();

    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    for (m, n, p, q, sign_factor, report) in &results {
        let fitted = report.fit.ln_k_coef;
        let name = format!("single-axis slope m={}/{}, n={n}, p={p}, q={q}", m.0, m.1);
        if sign_factor.is_zero() {
            assertions.push(Assertion::leq(format!("{name}: slope cancels"), fitted.abs(), 1e-3));
        } else if sign_factor.is_positive() {
            assertions.push(Assertion::holds(
                format!("{name}: positive slope (obstruction regime)"),
                fitted > 1e-3,
                format!("fitted {fitted:.5}"),
            ));
        } else {
            assertions.push(Assertion::holds(
                format!("{name}: negative slope"),
                fitted < -1e-3,
                format!("fitted {fitted:.5}"),
            ));
        }
        rows.push(vec![
            format!("{}/{}", m.0, m.1),
            n.to_string(),
            p.to_string(),
            q.to_string(),
            format!("{fitted:.6e}"),
        ]);
    }

    SuiteReport::new(
        "prop12",
        assertions,
        vec![Table {
            name: "single_axis_slopes".into(),
            columns: vec!["m".into(), "n".into(), "p".into(), "q".into(), "fitted_a".into()],
            rows,
        }],
    )
}

/// The mapping-bound integral: the weighted kernel integral with
/// `C = beta/2` against `exp(beta |z|^(2m) / 2)`, plus the symbolic
/// exponent identity `2(m/2 - n) + 2n - m = 0`.
pub fn eq27_suite(opts: &SuiteOptions) -> SuiteReport {
    let tol = opts.quad_rel_tol;
    let mut assertions = Vec::new();

    // exact exponent identity over a rational m-grid and n = 1..3
    let mut identity_ok = true;
    for m in [rat(1, 2), rat(3, 4), rat(1, 1), rat(4, 3), rat(3, 2), rat(2, 1), rat(7, 3)] {
        for n in 1..=3i64 {
            let lhs = rat(2, 1) * (&m / rat(2, 1) - rat(n, 1)) + rat(2 * n, 1) - &m;
            if !lhs.is_zero() {
                identity_ok = false;
            }
        }
    }
    assertions.push(Assertion::holds(
        "exponent identity 2(m/2 - n) + 2n - m = 0 (exact rationals)",
        identity_ok,
        "",
    ));

    // ratio tables: octave drift on the (m, n) grid, plus two fixed rows
    struct Case {
        m: f64,
        n: u32,
        beta: f64,
        zs: Vec<f64>,
        gate: Option<f64>,
    }
    let mut cases = Vec::new();
    for &(m, z0) in &[(0.75f64, 8.0f64), (1.0, 5.0), (1.5, 4.0)] {
        for &n in &[1u32, 2] {
            cases.push(Case { m, n, beta: 1.0, zs: vec![z0, 2.0 * z0], gate: Some(0.10) });
        }
    }
    cases.push(Case { m: 1.0, n: 1, beta: 2.0, zs: vec![3.0, 5.0, 8.0], gate: Some(0.10) });
    cases.push(Case { m: 0.6, n: 1, beta: 1.0, zs: vec![4.0, 6.0, 9.0], gate: None });

    let results: Vec<_> = cases
        .par_iter()
        .map(|case| {
            let space = SpaceParams::new(case.beta, case.m, case.n).unwrap();
            let ratios: Vec<f64> = case
                .zs
                .iter()
                .map(|&z| {
                    weighted_kernel_integral(z, &space, case.beta / 2.0, tol)
                        .expect("grid integrals converge")
                        .ratio_to_envelope()
                        .unwrap()
                })
                .collect();
            ratios
        })
        .collect();

    let mut rows = Vec::new();
    for (case, ratios) in cases.iter().zip(&results) {
        let k = ratios.len();
        let drift = (ratios[k - 1] / ratios[k - 2] - 1.0).abs();
        let name = format!(
            "weighted kernel integral ratio, m={}, n={}, beta={}, |z|: {} -> {}",
            case.m,
            case.n,
            case.beta,
            case.zs[k - 2],
            case.zs[k - 1]
        );
        match case.gate {
            Some(g) => assertions.push(
                Assertion::leq(name, drift, g).with_detail(format!("ratios {ratios:?}")),
            ),
            None => assertions.push(Assertion::holds(
                format!("{name} stays bounded"),
                ratios.iter().all(|r| r.is_finite() && *r > 0.0),
                format!("ratios {ratios:?}, drift {drift:.3}"),
            )),
        }
        for (z, r) in case.zs.iter().zip(ratios) {
            rows.push(vec![
                case.m.to_string(),
                case.n.to_string(),
                case.beta.to_string(),
                z.to_string(),
                format!("{r:.9e}"),
            ]);
        }
    }

    SuiteReport::new(
        "eq27",
        assertions,
        vec![Table {
            name: "mapping_bound_ratios".into(),
            columns: vec!["m".into(), "n".into(), "beta".into(), "z".into(), "ratio_to_envelope".into()],
            rows,
        }],
    )
}

/// The normalized Gamma growth limit `Gamma(rho k + sigma)^(1/rho k)/k -> rho/e`.
///
/// The 2%-at-k=200 gate over the full grid rho in {1/2, 1, 5/2} x sigma in
/// {-1, 0, 1} is enforced as stated. Three combinations converge more
/// slowly than that (the finite-k deviation scales like
/// `(sigma - 1/2) ln(rho k)/(rho k)`, which at k = 200 exceeds 2% for
/// (1/2, -1), (1/2, +1) and (1, -1), entering the gate only around
/// k ~ 1000); the suite reports them as failures rather than widening the
/// gate.
pub fn stirling_suite() -> SuiteReport {
    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    for &rho in &[0.5f64, 1.0, 2.5] {
        for &sigma in &[-1.0f64, 0.0, 1.0] {
            let k = 200u64;
            let v = stirling_limit_check(rho, sigma, k).unwrap();
            let limit = rho / std::f64::consts::E;
            let rel = (v / limit - 1.0).abs();
            assertions.push(
                Assertion::leq(
                    format!("stirling rho={rho}, sigma={sigma}, k={k}: within 2% of rho/e"),
                    rel,
                    0.02,
                )
                .with_detail(format!("value {v:.8}, limit {limit:.8}")),
            );
            rows.push(vec![
                rho.to_string(),
                sigma.to_string(),
                k.to_string(),
                format!("{v:.10}"),
                format!("{limit:.10}"),
                format!("{rel:.3e}"),
            ]);
        }
    }
    // slower-k spot checks
    let v = stirling_limit_check(2.5, -1.0, 400).unwrap();
    assertions.push(Assertion::leq(
        "stirling rho=2.5, sigma=-1, k=400: within 1%",
        (v / (2.5 / std::f64::consts::E) - 1.0).abs(),
        0.01,
    ));
    let d100 = (stirling_limit_check(1.0, 1.0, 100).unwrap() * std::f64::consts::E - 1.0).abs();
    let d800 = (stirling_limit_check(1.0, 1.0, 800).unwrap() * std::f64::consts::E - 1.0).abs();
    assertions.push(Assertion::holds(
        "factorial growth k!^(1/k)/k approaches 1/e at the classical rate",
        d800 < d100 / 4.0,
        format!("deviation {d100:.4e} at k=100 vs {d800:.4e} at k=800"),
    ));

    SuiteReport::new(
        "stirling",
        assertions,
        vec![Table {
            name: "stirling_limit".into(),
            columns: vec![
                "rho".into(),
                "sigma".into(),
                "k".into(),
                "value".into(),
                "limit".into(),
                "rel_dev".into(),
            ],
            rows,
        }],
    )
}

/// Exact-rational Schur-test ledger: `x = 1/p` feasible on the diagonal for
/// any `c >= 1`; `x = 1/q` feasible for `p > q`, `c > 1`; infeasible for
/// `p > q`, `c = 1`.
pub fn schur_suite() -> SuiteReport {
    let mut assertions = Vec::new();
    let mut rows = Vec::new();
    let one = Rational::one();

    let diag = [rat(2, 1), rat(3, 1), rat(7, 2), rat(5, 1)];
    let cs = [rat(1, 1), rat(9, 8), rat(2, 1)];
    for p in &diag {
        for c in &cs {
            let w = schur_feasibility(p, p, c).unwrap();
            let ok = w.feasible && w.x == Some(&one / p);
            assertions.push(Assertion::holds(
                format!("diagonal p = q = {p}, c = {c}: feasible at x = 1/p"),
                ok,
                format!("x = {:?}", w.x),
            ));
            rows.push(vec![p.to_string(), p.to_string(), c.to_string(), w.feasible.to_string()]);
        }
    }

    let off = [(rat(3, 1), rat(2, 1)), (rat(4, 1), rat(2, 1)), (rat(7, 2), rat(3, 2)), (rat(4, 1), rat(3, 1))];
    for (p, q) in &off {
        for c in [rat(9, 8), rat(3, 2), rat(2, 1)] {
            let w = schur_feasibility(p, q, &c).unwrap();
            let ok = w.feasible && w.x == Some(&one / q);
            assertions.push(Assertion::holds(
                format!("p = {p} > q = {q}, c = {c}: feasible at x = 1/q"),
                ok,
                format!("x = {:?}", w.x),
            ));
            rows.push(vec![p.to_string(), q.to_string(), c.to_string(), w.feasible.to_string()]);
        }
        let w = schur_feasibility(p, q, &one).unwrap();
        assertions.push(Assertion::holds(
            format!("p = {p} > q = {q}, c = 1: infeasible"),
            !w.feasible && w.x.is_none(),
            String::new(),
        ));
        rows.push(vec![p.to_string(), q.to_string(), "1".into(), w.feasible.to_string()]);
    }

    SuiteReport::new(
        "schur",
        assertions,
        vec![Table {
            name: "schur_feasibility".into(),
            columns: vec!["p".into(), "q".into(), "c".into(), "feasible".into()],
            rows,
        }],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::singles() {
            let s = id.to_string();
            assert_eq!(SuiteId::from_str(&s).unwrap(), id);
        }
        assert!(SuiteId::from_str("nope").is_err());
    }

    #[test]
    fn schur_suite_passes() {
        let r = schur_suite();
        assert!(r.passed, "failures: {:?}", r.assertions.iter().filter(|a| !a.passed).collect::<Vec<_>>());
    }

    #[test]
    fn stirling_suite_reports_known_slow_combinations() {
        let r = stirling_suite();
        let failed: Vec<&str> = r
            .assertions
            .iter()
            .filter(|a| !a.passed)
            .map(|a| a.name.as_str())
            .collect();
        // exactly the three slow-converging grid points fail the 2% gate
        assert_eq!(failed.len(), 3, "failed: {failed:?}");
        for name in &failed {
            assert!(
                name.contains("rho=0.5, sigma=-1")
                    || name.contains("rho=0.5, sigma=1")
                    || name.contains("rho=1, sigma=-1"),
                "unexpected failure {name}"
            );
        }
        assert!(!r.passed);
    }

    #[test]
    fn lemma8_suite_passes() {
        let r = lemma8_suite();
        assert!(r.passed, "failures: {:?}", r.assertions.iter().filter(|a| !a.passed).collect::<Vec<_>>());
    }

    #[test]
    fn threshold_monotone() {
        // the open-case threshold 2n/(2n-1) sits in (1, 2] and decreases
        use crate::boundedness::open_case_threshold;
        let mut prev = rat(3, 1);
        for n in 1..=6 {
            let t = open_case_threshold(n);
            assert!(t > rat(1, 1) && t <= rat(2, 1) && t < prev);
            prev = t;
        }
    }
}
