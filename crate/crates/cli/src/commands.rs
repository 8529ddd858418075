//! Implementations of the five subcommands. Exit-code contract: 0 all-pass,
//! 1 any verification failure, 2 usage or parse errors.

use crate::pool;
use crate::spec_file::FunctionSpec;
use bergman_core::bounds::{self, BoundReport, C2Mode, C2Params};
use bergman_core::counterexample::{
    build_function, build_schedule, smooth_variant, AmplitudeRule, CounterexampleFunction,
};
use bergman_core::disc::RadialFourierFunction;
use bergman_core::error::Error as CoreError;
use bergman_core::{projection, suites};
use clap::{Args, ValueEnum};
use num_complex::Complex64 as C64;

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Records,
    Table,
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

/// Parse "a,b,c" or "start:stop:step" into a value list; "" is the empty grid.
fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{text}' must be start:stop:step"));
        }
        let start: f64 = parts[0].parse().map_err(|_| format!("bad number '{}'", parts[0]))?;
        let stop: f64 = parts[1].parse().map_err(|_| format!("bad number '{}'", parts[1]))?;
        let step: f64 = parts[2].parse().map_err(|_| format!("bad number '{}'", parts[2]))?;
        if step <= 0.0 || stop < start {
            return Err(format!("range '{text}' must have step > 0 and stop >= start"));
        }
        let mut values = Vec::new();
        let mut k = 0u32;
        loop {
            let v = start + step * k as f64;
            if v > stop + 1e-12 {
                break;
            }
            values.push(v);
            k += 1;
        }
        Ok(values)
    } else {
        text.split(',')
            .map(|t| {
                if t.trim() == "inf" {
                    Ok(f64::INFINITY)
                } else {
                    t.trim().parse().map_err(|_| format!("bad number '{t}'"))
                }
            })
            .collect()
    }
}

fn parse_complex_list(text: &str) -> Result<Vec<C64>, String> {
    text.split(',')
        .map(|token| {
            let t = token.trim().trim_end_matches('i');
            if token.trim().ends_with('i') {
                // forms: "bi", "a+bi", "a-bi"
                if let Some(pos) = t.rfind(['+', '-']).filter(|&p| p > 0) {
                    let re: f64 = t[..pos].parse().map_err(|_| format!("bad complex '{token}'"))?;
                    let im: f64 = t[pos..].parse().map_err(|_| format!("bad complex '{token}'"))?;
                    Ok(C64::new(re, im))
                } else {
                    let im: f64 = t.parse().map_err(|_| format!("bad complex '{token}'"))?;
                    Ok(C64::new(0.0, im))
                }
            } else {
                let re: f64 = token.trim().parse().map_err(|_| format!("bad complex '{token}'"))?;
                Ok(C64::new(re, 0.0))
            }
        })
        .collect()
}

// ---------------------------------------------------------------- constants

#[derive(Args)]
pub struct ConstantsArgs {
    /// Sharp kernel-mean constant Γ(p-1)/Γ(p/2)² at this p.
    #[arg(long, value_name = "P")]
    lemma1: Option<f64>,
    /// C1(s, m, k).
    #[arg(long, num_args = 3, value_names = ["S", "M", "K"])]
    c1: Option<Vec<f64>>,
    /// The m=k=j=1, u=0 recipe value π/sin(π/p) at this p.
    #[arg(long, value_name = "P")]
    c2_special: Option<f64>,
    /// C2(p, m, k, j, u) by grid search.
    #[arg(long, num_args = 5, value_names = ["P", "M", "K", "J", "U"])]
    c2: Option<Vec<f64>>,
    /// Evaluate --c2 at a fixed split point instead of searching.
    #[arg(long, num_args = 2, value_names = ["A", "B"], requires = "c2")]
    point: Option<Vec<f64>>,
    /// C3(s, n-k, j-k, u).
    #[arg(long, num_args = 4, value_names = ["S", "D", "JD", "U"])]
    c3: Option<Vec<f64>>,
}

pub fn run_constants(args: ConstantsArgs) -> i32 {
    let mut printed = false;
    if let Some(p) = args.lemma1 {
        match bounds::lemma1_sharp_constant(p) {
            Ok(v) => println!("constant=lemma1_sharp p={p:e} value={v:e} branch=closed-form"),
            Err(e) => return usage_error(&e.to_string()),
        }
        printed = true;
    }
    if let Some(v) = args.c1 {
        match bounds::c1_constant_detailed(v[0], v[1], v[2]) {
            Ok((value, branch)) => println!(
                "constant=c1 s={:e} m={:e} k={:e} value={value:e} branch={}",
                v[0],
                v[1],
                v[2],
                branch.label()
            ),
            Err(e) => return usage_error(&e.to_string()),
        }
        printed = true;
    }
    if let Some(p) = args.c2_special {
        match bounds::c2_special_case(p) {
            Ok(value) => println!("constant=c2_special p={p:e} value={value:e} branch=closed-form"),
            Err(e) => return usage_error(&e.to_string()),
        }
        printed = true;
    }
    if let Some(v) = args.c2 {
        let params = match C2Params::new(v[0], v[1], v[2], v[3], v[4]) {
            Ok(params) => params,
            Err(e) => return usage_error(&e.to_string()),
        };
        let (mode, label) = match &args.point {
            Some(ab) => (C2Mode::Fixed { a: ab[0], b: ab[1] }, "fixed-point"),
            None => (C2Mode::default(), "grid"),
        };
        match bounds::c2_constant(&params, mode) {
            Ok(value) => println!(
                "constant=c2 p={:e} m={:e} k={:e} j={:e} u={:e} value={value:e} branch={label}",
                v[0], v[1], v[2], v[3], v[4]
            ),
            Err(e) => return usage_error(&e.to_string()),
        }
        printed = true;
    }
    if let Some(v) = args.c3 {
        let d = v[1] as u32;
        if v[1] < 0.0 || v[1].fract() != 0.0 {
            return usage_error("C3 derivative gap d = n - k must be a non-negative integer");
        }
        match bounds::c3_constant(v[0], d, v[2], v[3]) {
            Ok(value) => println!(
                "constant=c3 s={:e} d={:e} jd={:e} u={:e} value={value:e} branch=grid",
                v[0], v[1], v[2], v[3]
            ),
            Err(e) => return usage_error(&e.to_string()),
        }
        printed = true;
    }
    if !printed {
        return usage_error("constants: pick at least one of --lemma1/--c1/--c2-special/--c2/--c3");
    }
    EXIT_PASS
}

// ------------------------------------------------------------------- verify

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite name, comma list, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Overrides the lemma1 p grid (comma list).
    #[arg(long)]
    p: Option<String>,
    /// Overrides the lemma1 r grid (comma list or start:stop:step).
    #[arg(long)]
    r: Option<String>,
    /// Worker count; default from BERGMAN_JOBS, else 1.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Records)]
    format: OutputFormat,
    /// Override the relative pass slack on every report.
    #[arg(long)]
    slack: Option<f64>,
}

pub fn run_verify(args: VerifyArgs) -> i32 {
    let known: Vec<&str> = suites::SUITES.iter().map(|s| s.name).collect();
    let selected: Vec<String> = if args.suite == "all" {
        known.iter().map(|s| s.to_string()).collect()
    } else {
        args.suite.split(',').map(|s| s.trim().to_string()).collect()
    };
    for name in &selected {
        if !known.contains(&name.as_str()) {
            return usage_error(&format!("unknown suite '{name}'; expected one of {known:?} or all"));
        }
    }
    let p_grid = match args.p.as_deref().map(parse_grid).transpose() {
        Ok(grid) => grid,
        Err(e) => return usage_error(&e),
    };
    let r_grid = match args.r.as_deref().map(parse_grid).transpose() {
        Ok(grid) => grid,
        Err(e) => return usage_error(&e),
    };
    let seed = args.seed;

    let jobs = args.jobs.unwrap_or_else(pool::default_jobs);
    let outcome: Vec<Result<Vec<BoundReport>, CoreError>> =
        pool::parallel_map(&selected, jobs, |name| {
            if name == "lemma1" && (p_grid.is_some() || r_grid.is_some()) {
                let p_default = vec![1.5, 2.0, 3.0, 4.0, 6.0];
                let r_default: Vec<f64> = (1..=18).map(|i| 0.05 * i as f64).collect();
                suites::lemma1_suite(
                    p_grid.as_deref().unwrap_or(&p_default),
                    r_grid.as_deref().unwrap_or(&r_default),
                )
            } else {
                suites::run_suite(name, seed)
            }
        });

    let mut all_reports: Vec<(String, Vec<BoundReport>)> = Vec::new();
    for (name, result) in selected.iter().zip(outcome) {
        match result {
            Ok(mut reports) => {
                if let Some(slack) = args.slack {
                    for report in &mut reports {
                        report.slack = slack;
                        report.pass = report.lhs <= report.rhs * (1.0 + slack) + f64::MIN_POSITIVE;
                    }
                }
                all_reports.push((name.clone(), reports));
            }
            Err(e) => return usage_error(&format!("suite {name}: {e}")),
        }
    }

    let mut checks = 0usize;
    let mut failed = 0usize;
    let mut max_quad_err = 0.0f64;
    for (name, reports) in &all_reports {
        for report in reports {
            checks += 1;
            if !report.pass {
                failed += 1;
            }
            max_quad_err = max_quad_err.max(report.quadrature_error);
            match args.format {
                OutputFormat::Records => println!("suite={name} {}", report.record_line()),
                OutputFormat::Table => println!(
                    "{:<12} {:<28} {:>14} {:>14} {:>14} {}",
                    name,
                    report.theorem,
                    format!("{:.6e}", report.lhs),
                    format!("{:.6e}", report.rhs),
                    format!("{:.6e}", report.margin()),
                    if report.pass { "pass" } else { "FAIL" }
                ),
            }
        }
    }
    println!("summary checks={checks} failed={failed} max_quad_err={max_quad_err:e}");
    if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

// ------------------------------------------------------------------ project

#[derive(Args)]
pub struct ProjectArgs {
    /// Function-spec file (JSON).
    #[arg(long)]
    spec: std::path::PathBuf,
    /// Evaluate the projection at these points (comma list, e.g. 0.2,0.1+0.3i).
    #[arg(long)]
    z: Option<String>,
    /// Cross-check against the kernel-quadrature oracle.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    oracle: bool,
    /// Oracle disagreement threshold.
    #[arg(long, default_value_t = 1e-7)]
    tolerance: f64,
}

pub fn run_project(args: ProjectArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(text) => text,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.spec.display())),
    };
    let function = match FunctionSpec::parse(&text).and_then(FunctionSpec::into_function) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let points = match args.z.as_deref().map(parse_complex_list).transpose() {
        Ok(points) => points.unwrap_or_else(|| {
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.3, 0.0),
                C64::new(0.0, 0.5),
                C64::new(-0.4, 0.2),
                C64::new(0.5, -0.5),
            ]
        }),
        Err(e) => return usage_error(&e),
    };

    let result = match projection::project_fourier(&function) {
        Ok(result) => result,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    println!("normalization k={:e}", result.normalization_constant_used);
    for (n, coeff) in result.analytic.coeffs.iter().enumerate() {
        println!("coefficient n={n} re={:e} im={:e}", coeff.re, coeff.im);
    }

    let mut failed = false;
    if args.oracle {
        let mut max_residual = 0.0f64;
        for &z in &points {
            let spectral = result.analytic.eval(z);
            match projection::project_quadrature(&function, z) {
                Ok(kernel) => {
                    let residual = (spectral - kernel).norm();
                    max_residual = max_residual.max(residual);
                    let flagged = residual > args.tolerance;
                    failed |= flagged;
                    println!(
                        "oracle z={:e}{:+e}i spectral_re={:e} spectral_im={:e} kernel_re={:e} kernel_im={:e} residual={:e} pass={}",
                        z.re, z.im, spectral.re, spectral.im, kernel.re, kernel.im, residual, !flagged
                    );
                }
                Err(e) => return usage_error(&format!("oracle point {z}: {e}")),
            }
        }
        println!("summary max_residual={max_residual:e} pass={}", !failed);
    } else if args.z.is_some() {
        for &z in &points {
            let v = result.analytic.eval(z);
            println!("value z={:e}{:+e}i re={:e} im={:e}", z.re, z.im, v.re, v.im);
        }
    }
    if failed {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

// ----------------------------------------------------------- counterexample

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Indicator,
    Smooth,
}

#[derive(Args)]
pub struct CounterexampleArgs {
    /// Schedule depth N.
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Amplitude rule: "harmonic" or a JSON file with an array of numbers.
    #[arg(long, default_value = "harmonic")]
    rule: String,
    #[arg(long, value_enum, default_value_t = Kind::Indicator)]
    kind: Kind,
    /// Plateau fraction for the smooth variant.
    #[arg(long, default_value_t = 0.9)]
    plateau: f64,
    /// Report partial sums up to this depth (default: the schedule depth).
    #[arg(long)]
    report_depth: Option<usize>,
}

pub fn run_counterexample(args: CounterexampleArgs) -> i32 {
    let rule = if args.rule == "harmonic" {
        AmplitudeRule::Harmonic
    } else {
        match std::fs::read_to_string(&args.rule)
            .map_err(|e| format!("cannot read {}: {e}", args.rule))
            .and_then(|text| {
                serde_json::from_str::<Vec<f64>>(&text).map_err(|e| format!("amplitude file: {e}"))
            }) {
            Ok(values) => AmplitudeRule::Custom(values),
            Err(e) => return usage_error(&e),
        }
    };

    let schedule = match build_schedule(args.depth) {
        Ok(schedule) => schedule,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let function: CounterexampleFunction = match args.kind {
        Kind::Indicator => match build_function(schedule, &rule) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
        },
        Kind::Smooth => match smooth_variant(schedule, &rule, args.plateau) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
        },
    };

    for step in function.schedule.steps() {
        println!(
            "schedule step={} mode={} radius={:e} neg_log_radius={:e} mass={:e} enforced={}",
            step.index,
            step.mode,
            step.radius_hi(),
            step.neg_log_hi,
            step.mass,
            step.enforced_monotonicity
        );
    }

    let coefficients = function.projection_coefficients();
    for row in &coefficients.rows {
        println!(
            "coefficient step={} mode={} amplitude={:e} magnitude_lower={:e} magnitude_upper={:e} quarter_bound={:e}",
            row.index, row.mode, row.amplitude, row.magnitude_lower, row.magnitude_upper,
            row.quarter_bound
        );
    }

    let report_depth = args.report_depth.unwrap_or(args.depth).min(args.depth);
    let divergence = match function.divergence_report(report_depth) {
        Ok(report) => report,
        Err(e) => return usage_error(&e.to_string()),
    };
    for (i, (s, e)) in divergence
        .partial_sums
        .iter()
        .zip(&divergence.envelope)
        .enumerate()
    {
        println!("partial_sum n={} s={:e} envelope={:e}", i + 1, s, e);
    }

    for (annulus, sup) in function.sup_profile() {
        println!("decay annulus={annulus} sup={sup:e}");
    }
    for i in 0..=56 {
        let r = 1.0 - 10f64.powf(-(i as f64) / 4.0);
        println!("decay_radius r={:e} sup={:e}", r, function.sup_at_radius(r));
    }

    println!(
        "summary depth={} mass_max_dev={:e} divergence_certified={} final_sum={:e}",
        function.depth(),
        function.schedule.mass_certificate(),
        divergence.certified,
        divergence.final_sum()
    );
    if divergence.certified {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

// -------------------------------------------------------------------- sweep

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepCheck {
    Prn,
    Bpn,
    Weighted,
    Sobolev,
    Split,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    check: SweepCheck,
    /// Function-spec file; a built-in two-mode demo function by default.
    #[arg(long)]
    spec: Option<std::path::PathBuf>,
    #[arg(long, default_value = "2")]
    p: String,
    #[arg(long, default_value = "2")]
    s: String,
    #[arg(long, default_value = "1")]
    n: String,
    #[arg(long, default_value = "0")]
    k: String,
    #[arg(long, default_value = "0.5")]
    r: String,
    #[arg(long, default_value = "2")]
    j: String,
    #[arg(long, default_value = "0")]
    u: String,
    #[arg(long)]
    jobs: Option<usize>,
}

fn default_demo_function() -> RadialFourierFunction {
    FunctionSpec::parse(
        r#"{"kind": "annulus-mode", "modes": [
            {"n": 2, "lo": 0.25, "hi": 0.75, "re": 1.0},
            {"n": 3, "lo": 0.1, "hi": 0.9, "re": 0.5, "im": 0.25}
        ]}"#,
    )
    .and_then(FunctionSpec::into_function)
    .expect("built-in demo spec is valid")
}

pub fn run_sweep(args: SweepArgs) -> i32 {
    let function = match &args.spec {
        None => default_demo_function(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(text) => text,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            match FunctionSpec::parse(&text).and_then(FunctionSpec::into_function) {
                Ok(f) => f,
                Err(e) => return usage_error(&e),
            }
        }
    };

    let grids: Vec<Vec<f64>> = match [&args.p, &args.s, &args.n, &args.k, &args.r, &args.j, &args.u]
        .iter()
        .map(|text| parse_grid(text))
        .collect()
    {
        Ok(grids) => grids,
        Err(e) => return usage_error(&e),
    };
    let [p_grid, s_grid, n_grid, k_grid, r_grid, j_grid, u_grid]: [Vec<f64>; 7] =
        grids.try_into().unwrap();

    // Fixed nested order keeps the tuple stream deterministic.
    let mut tuples = Vec::new();
    for &p in &p_grid {
        for &s in &s_grid {
            for &n in &n_grid {
                for &k in &k_grid {
                    for &r in &r_grid {
                        for &j in &j_grid {
                            for &u in &u_grid {
                                tuples.push((p, s, n, k, r, j, u));
                            }
                        }
                    }
                }
            }
        }
    }

    let circle = function.circle_restriction(0.5);
    let check = args.check;
    let jobs = args.jobs.unwrap_or_else(pool::default_jobs);
    let lines: Vec<(bool, String)> = pool::parallel_map(&tuples, jobs, |&(p, s, n, k, r, j, u)| {
        let n_int = n as u32;
        let k_int = k as u32;
        let result = match check {
            SweepCheck::Prn => bounds::check_prn_bound(&circle, p, n_int, k_int, r),
            SweepCheck::Bpn => bounds::check_bpn_bound(&function, p, n_int, k_int, r),
            SweepCheck::Weighted => {
                bounds::check_weighted_norm(&function, p, s, n_int, k_int, j, u)
            }
            SweepCheck::Sobolev => bounds::check_sobolev_corollary(&function, p, n_int),
            SweepCheck::Split => {
                bounds::check_derivative_split_corollary(&function, p, n_int, k_int)
            }
        };
        match result {
            Ok(report) => (!report.pass, report.record_line()),
            Err(CoreError::Constraint(msg)) | Err(CoreError::Domain(msg)) => (
                false,
                format!(
                    "check=sweep p={p:e} s={s:e} n={n:e} k={k:e} r={r:e} j={j:e} u={u:e} skipped=true constraint={msg:?}"
                ),
            ),
            Err(e) => (true, format!("check=sweep error={:?}", e.to_string())),
        }
    });

    let mut failed = 0usize;
    for (fail, line) in &lines {
        if *fail {
            failed += 1;
        }
        println!("{line}");
    }
    println!("summary checks={} failed={failed}", lines.len());
    if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}
