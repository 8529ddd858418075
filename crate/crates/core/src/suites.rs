//! Seeded verification suites.
//!
//! Every suite draws its cases from a ChaCha stream seeded from the caller's
//! seed, evaluates the relevant checks, and returns plain `BoundReport`s in a
//! deterministic order. The CLI and the acceptance tests share these
//! functions, so a suite passing here is exactly the acceptance statement.

use crate::bounds::{
    self, check_bpn_bound, check_c2_lemma, check_derivative_split_corollary, check_prn_bound,
    check_sobolev_corollary, check_weighted_norm, lipschitz_growth_probe, BoundReport, C2Mode,
    C2Params,
};
use crate::counterexample::{build_function, build_schedule, smooth_variant, AmplitudeRule};
use crate::disc::{Mode, RadialFourierFunction, RadialProfile, TrigPoly};
use crate::error::Result;
use crate::projection;
use crate::quad;
use crate::special::{self, HypergeomArgs};
use num_complex::Complex64 as C64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PI: f64 = std::f64::consts::PI;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(stream))
}

fn c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Flags failures whose margin cannot be explained by quadrature error.
fn annotate_genuine_violations(reports: &mut [BoundReport]) {
    for report in reports {
        if !report.pass && report.note.is_none() {
            let excess = report.lhs - report.rhs;
            if excess > 1e3 * report.quadrature_error.max(1e-300) {
                report.note = Some(
                    "violation exceeds quadrature estimate; counterexample to the stated bound"
                        .into(),
                );
            }
        }
    }
}

/// Random band-limited circle function with a handful of modes.
fn random_trig_poly(rng: &mut ChaCha8Rng, band: usize) -> TrigPoly {
    let mut poly = TrigPoly::zero(band);
    let count = rng.gen_range(2..=6);
    for _ in 0..count {
        let n = rng.gen_range(-(band as i64)..=(band as i64));
        poly.set_coeff(n, c64(rng));
    }
    poly
}

/// Random disc function; `support_cap` < 1 restricts every profile to
/// [0, support_cap] so right-hand sides with strong weights stay finite.
fn random_disc_function(rng: &mut ChaCha8Rng, support_cap: f64) -> RadialFourierFunction {
    let count = rng.gen_range(2..=4);
    let mut modes: Vec<Mode> = Vec::new();
    for _ in 0..count {
        let n = loop {
            let n = rng.gen_range(-4i64..=5);
            if !modes.iter().any(|m| m.n == n) {
                break n;
            }
        };
        let profile = match rng.gen_range(0..4) {
            0 => {
                let terms = (0..rng.gen_range(1..=3))
                    .map(|_| (rng.gen_range(0..=6u32), c64(rng)))
                    .collect();
                if support_cap < 1.0 {
                    // Restrict by an indicator instead: keep it piecewise.
                    let edges = vec![0.0, support_cap * rng.gen_range(0.6..1.0)];
                    RadialProfile::PiecewiseConstant {
                        edges,
                        values: vec![c64(rng)],
                    }
                } else {
                    RadialProfile::Polynomial { terms }
                }
            }
            1 | 2 => {
                let segments = rng.gen_range(1..=3);
                let mut edges: Vec<f64> = (0..=segments)
                    .map(|_| rng.gen_range(0.0..support_cap))
                    .collect();
                edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
                edges.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
                while edges.len() < 2 {
                    edges.push(edges.last().unwrap() + 0.1);
                }
                let values = (0..edges.len() - 1).map(|_| c64(rng)).collect();
                RadialProfile::PiecewiseConstant { edges, values }
            }
            _ => {
                let lo = rng.gen_range(0.0..0.4 * support_cap);
                let hi = rng.gen_range(lo + 0.2 * support_cap..support_cap);
                let width = hi - lo;
                RadialProfile::Bump {
                    lo,
                    plateau_lo: lo + 0.25 * width,
                    plateau_hi: hi - 0.25 * width,
                    hi,
                    amplitude: c64(rng),
                }
            }
        };
        modes.push(Mode { n, profile });
    }
    RadialFourierFunction::new(modes).expect("generated modes are distinct and valid")
}

/// Identity suite for the hypergeometric engine: Euler transformation,
/// Euler integral, Kummer's quadratic transformation, the reflection
/// formula, and the monotone approach to the Gauss value.
pub fn hypergeometric_suite(seed: u64, draws: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    let tol = 1e-12;

    // Euler transformation against the direct series.
    let mut rng = rng_for(seed, 1);
    for i in 0..draws {
        let (a, b, c, x) = loop {
            let a = rng.gen_range(-1.5..2.0f64);
            let b = rng.gen_range(-1.5..2.0f64);
            let c = a + b + rng.gen_range(0.2..2.5f64);
            let x = rng.gen_range(0.0..0.95f64);
            if (c - c.round()).abs() > 1e-3 || c > 0.5 {
                break (a, b, c, x);
            }
        };
        let direct = special::hyp2f1(HypergeomArgs::new(a, b, c, x)?, tol)?;
        let transformed = special::euler_transform(HypergeomArgs::new(a, b, c, x)?, tol)?;
        reports.push(BoundReport::evaluate(
            "hyp_euler_transform",
            vec![("i", i as f64), ("a", a), ("b", b), ("c", c), ("x", x)],
            (direct - transformed).abs(),
            1e-9 * (1.0 + direct.abs()),
            tol,
        ));
    }

    // Euler integral representation against the series.
    let mut rng = rng_for(seed, 2);
    for i in 0..draws {
        let a = rng.gen_range(-2.0..2.5);
        let b = rng.gen_range(0.1..2.5);
        let c = b + rng.gen_range(0.1..2.5);
        let x = rng.gen_range(0.0..0.9);
        let args = HypergeomArgs::new(a, b, c, x)?;
        let series = special::hyp2f1(args, tol)?;
        let integral = special::euler_integral_2f1(args)?;
        reports.push(BoundReport::evaluate(
            "hyp_euler_integral",
            vec![("i", i as f64), ("a", a), ("b", b), ("c", c), ("x", x)],
            (series - integral).abs() / series.abs().max(1e-300),
            1e-8,
            tol,
        ));
    }

    // Kummer's quadratic transformation, both sides independent.
    let mut rng = rng_for(seed, 3);
    for i in 0..draws {
        let a = rng.gen_range(-1.5..2.0);
        let b = rng.gen_range(0.1..2.5);
        let z = rng.gen_range(0.0..0.8);
        let (lhs, rhs) = special::kummer_quadratic(a, b, z, tol)?;
        reports.push(BoundReport::evaluate(
            "hyp_kummer",
            vec![("i", i as f64), ("a", a), ("b", b), ("z", z)],
            (lhs - rhs).abs() / lhs.abs().max(1e-300),
            1e-9,
            tol,
        ));
    }

    // Reflection formula grid; anchors pi/sin(pi/p).
    for i in 1..20 {
        let t = i as f64 / 20.0;
        let product = (special::log_gamma(t)? + special::log_gamma(1.0 - t)?).exp();
        let reflected = PI / (PI * t).sin();
        reports.push(BoundReport::evaluate(
            "gamma_reflection",
            vec![("t", t)],
            (product - reflected).abs() / reflected,
            1e-12,
            0.0,
        ));
    }

    // Positive-term series approach the Gauss value from below.
    let mut rng = rng_for(seed, 4);
    for i in 0..20 {
        let a = rng.gen_range(0.1..1.5);
        let b = rng.gen_range(0.1..1.5);
        let c = a + b + rng.gen_range(1.5..3.0);
        let at_one = special::hyp2f1_at_one(a, b, c)?;
        let mut worst_drop = 0.0f64;
        let mut worst_overshoot = 0.0f64;
        let mut last = 0.0;
        for &x in &[1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6, 1.0 - 1e-7] {
            let v = special::hyp2f1(HypergeomArgs::new(a, b, c, x)?, 1e-9)?;
            worst_drop = worst_drop.max(last - v);
            worst_overshoot = worst_overshoot.max(v - at_one);
            last = v;
        }
        reports.push(BoundReport::evaluate(
            "hyp_gauss_value",
            vec![("i", i as f64), ("a", a), ("b", b), ("c", c)],
            worst_drop.max(worst_overshoot / at_one.abs().max(1.0)),
            1e-9,
            1e-9,
        ));
    }
    Ok(reports)
}

/// Kernel-mean identity and sharpness suite.
pub fn lemma1_suite(p_values: &[f64], r_values: &[f64]) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for &p in p_values {
        for &r in r_values {
            let closed = bounds::lemma1_closed_form(p, r)?;
            let oracle = bounds::lemma1_quadrature(p, r, 4096);
            reports.push(BoundReport::evaluate(
                "lemma1_identity",
                vec![("p", p), ("r", r)],
                (closed - oracle).abs() / oracle.abs(),
                1e-9,
                1e-12 * oracle.abs(),
            ));
            if p == 2.0 {
                let exact = 1.0 / ((1.0 - r) * (1.0 + r));
                reports.push(
                    BoundReport::evaluate(
                        "lemma1_identity",
                        vec![("p", p), ("r", r)],
                        (closed - exact).abs() / exact,
                        1e-12,
                        0.0,
                    )
                    .with_note("p = 2 exact form 1/(1-r^2)"),
                );
            }
        }
    }
    // Sharpness: the ratio to (1-r^2)^{1-p} climbs monotonically to the
    // constant and sits within 2% of it at x = 1 - 1e-6 for p >= 2.
    for &p in p_values {
        if p <= 1.0 {
            continue;
        }
        let constant = bounds::lemma1_sharp_constant(p)?;
        let mut xs: Vec<f64> = r_values.iter().map(|r| r * r).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut worst_drop = 0.0f64;
        let mut worst_excess = 0.0f64;
        let mut last = f64::NEG_INFINITY;
        for &x in &xs {
            let ratio = bounds::lemma1_ratio(p, x)?;
            worst_drop = worst_drop.max(last - ratio);
            worst_excess = worst_excess.max(ratio - constant);
            last = ratio;
        }
        reports.push(BoundReport::evaluate(
            "lemma1_sharpness",
            vec![("p", p), ("facet", 0.0)],
            worst_drop.max(worst_excess),
            1e-10,
            1e-11,
        ));
        if p >= 2.0 {
            let near = bounds::lemma1_ratio(p, 1.0 - 1e-6)?;
            reports.push(BoundReport::evaluate(
                "lemma1_sharpness",
                vec![("p", p), ("facet", 1.0)],
                (constant - near) / constant,
                0.02,
                1e-9,
            ));
        }
    }
    Ok(reports)
}

/// C₁ suite: the closed form, the bound property on a geometric x grid, and
/// the sharpness of the closed-form branch.
pub fn c1_suite(seed: u64, draws: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    let closed = bounds::c1_constant(0.5, 1.0, 1.0)?;
    reports.push(BoundReport::evaluate(
        "c1_bound",
        vec![("s", 0.5), ("m", 1.0), ("k", 1.0)],
        (closed - PI).abs() / PI,
        1e-12,
        0.0,
    ));

    let mut rng = rng_for(seed, 10);
    for i in 0..draws {
        let s = rng.gen_range(-2.0..0.9);
        let m = rng.gen_range((1.0 - s) + 0.3..(1.0 - s) + 2.5);
        let k = rng.gen_range(-0.9..2.5);
        let (c1, branch) = bounds::c1_constant_detailed(s, m, k)?;
        // 50 x values, log-spaced in 1-x down to 1e-6, plus x = 0.
        let mut worst_ratio = 0.0f64;
        for idx in 0..50 {
            let x = if idx == 0 {
                0.0
            } else {
                1.0 - 10f64.powf(-(idx as f64) * 6.0 / 49.0)
            };
            let integral = quad::tanh_sinh_01(
                |y, omy| {
                    let one_minus_xy = (1.0 - x) + x * omy;
                    omy.powf(-s) * one_minus_xy.powf(-m) * y.powf(k)
                },
                1e-11,
            )
            .value;
            let envelope = (1.0 - x).powf(1.0 - s - m);
            worst_ratio = worst_ratio.max(integral / envelope);
        }
        reports.push(BoundReport::evaluate(
            "c1_bound",
            vec![("i", i as f64), ("s", s), ("m", m), ("k", k)],
            worst_ratio,
            c1,
            1e-9 * c1,
        ));
        if branch == bounds::Branch::ClosedForm {
            reports.push(BoundReport::evaluate(
                "c1_sharpness",
                vec![("i", i as f64), ("s", s), ("m", m), ("k", k)],
                0.95 * c1,
                worst_ratio,
                1e-9 * c1,
            ));
        }
    }
    Ok(reports)
}

/// C₂ suite: the reflection-formula special cases, grid-vs-recipe, and the
/// lemma's norm inequality on random profiles.
pub fn c2_suite(seed: u64, draws: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for &p in &[1.5, 2.0, 4.0] {
        let recipe = bounds::c2_special_case(p)?;
        let reflected = PI / (PI / p).sin();
        reports.push(BoundReport::evaluate(
            "c2_special",
            vec![("p", p)],
            (recipe - reflected).abs() / reflected,
            1e-10,
            0.0,
        ));
        let params = C2Params::new(p, 1.0, 1.0, 1.0, 0.0)?;
        let grid = bounds::c2_constant(&params, C2Mode::default())?;
        reports.push(BoundReport::evaluate(
            "c2_special",
            vec![("p", p), ("grid", 1.0)],
            grid,
            reflected * (1.0 + 1e-6),
            0.0,
        ));
    }

    let mut rng = rng_for(seed, 20);
    for i in 0..draws {
        let p: f64 = rng.gen_range(1.2..3.0);
        let m: f64 = rng.gen_range(0.4..2.2);
        let k = rng.gen_range(-0.5..2.0);
        let j = rng.gen_range(-0.5..2.0);
        let u_lo = (1.0 - m * p).max(-1.5) + 0.05;
        let u = rng.gen_range(u_lo..0.9f64.max(u_lo + 0.01));
        let params = C2Params::new(p, m, k, j, u)?;
        let c2 = bounds::c2_constant(
            &params,
            C2Mode::GridSearch {
                resolution: 12,
                refinements: 1,
            },
        )?;
        // Compact support keeps both norms finite when w >= 1, and keeps the
        // intermediate g(x)^p representable when (m-1) p approaches the
        // exponent budget of f64 at the deepest quadrature nodes.
        let cap = if params.weight_w() >= 1.0 || (m - 1.0) * p > 0.9 {
            0.85
        } else {
            1.0
        };
        // Piecewise-polynomial inputs: step profiles or plain polynomials
        // (the latter only when the full-support norms stay finite).
        let profile = if cap < 1.0 || rng.gen_range(0..2) == 0 {
            let segments = rng.gen_range(2..=4);
            let mut edges: Vec<f64> = (0..=segments).map(|_| rng.gen_range(0.0..cap)).collect();
            edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
            edges.dedup_by(|a, b| (*a - *b).abs() < 1e-2);
            while edges.len() < 2 {
                edges.push(edges[0] + 0.3);
            }
            let values = (0..edges.len() - 1)
                .map(|_| C64::new(rng.gen_range(0.05..1.5), 0.0))
                .collect();
            RadialProfile::PiecewiseConstant { edges, values }
        } else {
            let terms = (0..rng.gen_range(1..=3))
                .map(|_| (rng.gen_range(0..=5u32), C64::new(rng.gen_range(0.05..1.0), 0.0)))
                .collect();
            RadialProfile::Polynomial { terms }
        };
        let mut report = check_c2_lemma(&params, &profile, c2)?;
        report.params.insert(0, ("i", i as f64));
        reports.push(report);
    }
    Ok(reports)
}

/// C₃ suite: the d = 0 estimate against 2π/sin(π/s) and the end-of-section
/// chain against its displayed Γ-product form.
pub fn c3_suite() -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    for &s in &[1.5, 2.0, 3.0] {
        let c3 = bounds::c3_constant_with(s, 0, 1.0, 0.0, C2Mode::default())?;
        reports.push(
            BoundReport::evaluate(
                "c3_estimate",
                vec![("s", s), ("d", 0.0)],
                c3,
                2.0 * PI / (PI / s).sin(),
                0.0,
            )
            .with_note("displayed argument pi*s read as pi/s, matching the corollary constant"),
        );
    }
    // Closing chain at p = 2, n = 1: the definitional composition evaluated
    // through the split points b = 1/p, a = -n + 1/(pq) stays below the
    // displayed Gamma-product form.
    let (p, n) = (2.0f64, 1u32);
    let q = p / (p - 1.0);
    let params = C2Params::new(p, n as f64 + 1.0, n as f64 + 1.0, 1.0, 0.0)?;
    let c2 = bounds::c2_constant(
        &params,
        C2Mode::Fixed {
            a: -(n as f64) + 1.0 / (p * q),
            b: 1.0 / p,
        },
    )?;
    let composed = bounds::derivative_gamma_factor(n, 0) * c2;
    let lg = |x: f64| special::log_gamma(x).unwrap();
    let displayed = 2.0
        * ((lg(n as f64 + 1.0) + lg(n as f64 + 2.0) + lg(1.0 / p)
            - lg(1.0 + n as f64 / 2.0))
            + (lg(1.0 / q) + lg(1.0 / p)) / p
            + (lg(n as f64 * q + 1.0 / q) - lg(n as f64 * q + 1.0)) / q)
            .exp();
    reports.push(BoundReport::evaluate(
        "c3_estimate",
        vec![("p", p), ("n", n as f64)],
        composed,
        displayed,
        0.0,
    ));
    Ok(reports)
}

/// Projection suite: normalization, idempotence on monomials, and the
/// spectral-versus-kernel oracle equivalence on random functions.
pub fn projection_suite(seed: u64, functions: usize, points: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();

    let one = RadialFourierFunction::new(vec![Mode {
        n: 0,
        profile: RadialProfile::Polynomial {
            terms: vec![(0, C64::new(1.0, 0.0))],
        },
    }])?;
    let p1 = projection::project_fourier(&one)?;
    reports.push(BoundReport::evaluate(
        "projection_idempotent",
        vec![("k", 0.0)],
        (p1.analytic.coeffs[0] - C64::new(1.0, 0.0)).norm(),
        1e-12,
        0.0,
    ));

    for k in 1..=20i64 {
        let monomial = RadialFourierFunction::new(vec![Mode {
            n: k,
            profile: RadialProfile::Polynomial {
                terms: vec![(k as u32, C64::new(1.0, 0.0))],
            },
        }])?;
        let result = projection::project_fourier(&monomial)?;
        let mut worst = 0.0f64;
        for (j, coeff) in result.analytic.coeffs.iter().enumerate() {
            let expected = if j == k as usize { 1.0 } else { 0.0 };
            worst = worst.max((coeff - C64::new(expected, 0.0)).norm());
        }
        reports.push(BoundReport::evaluate(
            "projection_idempotent",
            vec![("k", k as f64)],
            worst,
            1e-10,
            0.0,
        ));
    }

    let mut rng = rng_for(seed, 30);
    for i in 0..functions {
        let f = random_disc_function(&mut rng, 1.0);
        let spectral = projection::project_fourier(&f)?.analytic;
        let mut worst = 0.0f64;
        let mut worst_quad = 0.0f64;
        for _ in 0..points {
            let radius = 0.8 * rng.gen_range(0.0f64..1.0).sqrt();
            let angle = rng.gen_range(0.0..2.0 * PI);
            let z = C64::from_polar(radius, angle);
            let direct = projection::project_quadrature(&f, z)?;
            worst = worst.max((spectral.eval(z) - direct).norm());
            worst_quad = worst_quad.max(1e-12);
        }
        reports.push(BoundReport::evaluate(
            "projection_oracle",
            vec![("i", i as f64), ("modes", f.modes().len() as f64)],
            worst,
            1e-7,
            worst_quad,
        ));
    }
    Ok(reports)
}

/// Boundary-operator bound suite over random trig polynomials.
pub fn prn_suite(seed: u64, cases: usize) -> Result<Vec<BoundReport>> {
    let mut rng = rng_for(seed, 40);
    let mut reports = Vec::new();
    let p_choices = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let r_choices = [0.3, 0.7, 0.95];
    for i in 0..cases {
        let f = random_trig_poly(&mut rng, 8);
        let p = p_choices[rng.gen_range(0..p_choices.len())];
        let n = rng.gen_range(0..=3u32);
        let k = rng.gen_range(0..=n);
        let r = r_choices[rng.gen_range(0..r_choices.len())];
        let mut report = check_prn_bound(&f, p, n, k, r)?;
        report.params.insert(0, ("i", i as f64));
        reports.push(report);
    }
    annotate_genuine_violations(&mut reports);
    Ok(reports)
}

/// Projection-derivative bound suite over random disc functions.
pub fn bpn_suite(seed: u64, cases: usize) -> Result<Vec<BoundReport>> {
    let mut rng = rng_for(seed, 50);
    let mut reports = Vec::new();
    let p_choices = [1.5, 2.0, 3.0];
    let r_choices = [0.3, 0.7, 0.95];
    for i in 0..cases {
        let f = random_disc_function(&mut rng, 1.0);
        let p = p_choices[rng.gen_range(0..p_choices.len())];
        let n = rng.gen_range(0..=3u32);
        let k = rng.gen_range(0..=n);
        let r = r_choices[rng.gen_range(0..r_choices.len())];
        let mut report = check_bpn_bound(&f, p, n, k, r)?;
        report.params.insert(0, ("i", i as f64));
        reports.push(report);
    }
    annotate_genuine_violations(&mut reports);
    Ok(reports)
}

/// Weighted-norm bound suite; draws keep both sides integrable.
pub fn weighted_suite(seed: u64, cases: usize) -> Result<Vec<BoundReport>> {
    let mut rng = rng_for(seed, 60);
    let mut reports = Vec::new();
    let p_choices = [1.5, 2.0, 3.0];
    for i in 0..cases {
        let p = p_choices[rng.gen_range(0..p_choices.len())];
        let s = rng.gen_range(1.3..3.0);
        let n = rng.gen_range(0..=2u32);
        let k = rng.gen_range(0..=n);
        let d = (n - k) as f64;
        let j = rng.gen_range(k as f64 - 0.9 + 0.05..k as f64 + 2.0);
        // Mostly w < 1 draws; 30% take w >= 1 with compactly supported input.
        let strong_weight = d > 0.0 && rng.gen_range(0..10) < 3;
        let (u, cap) = if strong_weight {
            let lo = (1.0 - d * s).max(1.0 - (d + 1.0) * s + 0.05);
            (rng.gen_range(lo..0.95), 0.85)
        } else {
            let hi = (1.0 - d * s).min(0.9);
            let lo = (1.0 - (d + 1.0) * s + 0.05).min(hi - 0.5);
            (rng.gen_range(lo..hi), 1.0)
        };
        let f = random_disc_function(&mut rng, cap);
        let mut report = check_weighted_norm(&f, p, s, n, k, j, u)?;
        report.params.insert(0, ("i", i as f64));
        reports.push(report);
    }
    annotate_genuine_violations(&mut reports);
    Ok(reports)
}

/// The two corollaries: Sobolev-style bound and the split-order variant.
pub fn sobolev_suite(seed: u64, draws_per_cell: usize) -> Result<Vec<BoundReport>> {
    let mut rng = rng_for(seed, 70);
    let mut reports = Vec::new();
    for &p in &[1.5, 2.0, 3.0] {
        for n in 0..=2u32 {
            for i in 0..draws_per_cell {
                let f = random_disc_function(&mut rng, 1.0);
                let mut report = check_sobolev_corollary(&f, p, n)?;
                report.params.insert(0, ("i", i as f64));
                reports.push(report);
            }
        }
    }
    for &p in &[1.5, 2.0] {
        for &(n, k) in &[(1u32, 0u32), (1, 1), (2, 1)] {
            for i in 0..draws_per_cell {
                let f = random_disc_function(&mut rng, 0.85);
                let mut report = check_derivative_split_corollary(&f, p, n, k)?;
                report.params.insert(0, ("i", i as f64));
                reports.push(report);
            }
        }
    }
    annotate_genuine_violations(&mut reports);
    Ok(reports)
}

/// Schedule and divergence certificates for the boundary counterexample.
pub fn counterexample_suite(depth: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    let schedule = build_schedule(depth)?;

    let b1_expected = 1.0 / 2.0f64.sqrt();
    let b1 = schedule.steps()[0].radius_hi();
    reports.push(BoundReport::evaluate(
        "schedule_certificate",
        vec![("step", 1.0)],
        (b1 - b1_expected).abs(),
        1e-12,
        0.0,
    ));
    if depth >= 2 {
        let step2 = &schedule.steps()[1];
        let m2 = step2.mode.to_f64().unwrap();
        // Closed-form recurrence value: b_2^5 = 2^{-5/2} + 5/16.
        let b2_expected = (2.0f64.powf(-2.5) + 5.0 / 16.0).powf(0.2);
        reports.push(BoundReport::evaluate(
            "schedule_certificate",
            vec![("step", 2.0), ("mode", m2)],
            (step2.radius_hi() - b2_expected).abs() + (m2 - 3.0).abs(),
            1e-4,
            0.0,
        ));
    }
    reports.push(BoundReport::evaluate(
        "schedule_certificate",
        vec![("depth", depth as f64), ("facet", 0.0)],
        schedule.mass_certificate(),
        1e-12,
        0.0,
    ));
    let (below, above) = schedule.minimality_margins();
    reports.push(BoundReport::evaluate(
        "schedule_certificate",
        vec![("depth", depth as f64), ("facet", 1.0)],
        below.max(-above).max(0.0),
        1e-9,
        1e-12,
    ));

    let f = build_function(schedule, &AmplitudeRule::Harmonic)?;
    let coefficients = f.projection_coefficients();
    let worst_half = coefficients
        .rows
        .iter()
        .map(|row| (row.magnitude_lower - row.amplitude / 2.0).abs())
        .fold(0.0, f64::max);
    reports.push(BoundReport::evaluate(
        "divergence_certificate",
        vec![("depth", depth as f64), ("facet", 0.0)],
        worst_half,
        1e-12,
        0.0,
    ));

    let divergence = f.divergence_report(depth)?;
    let mut worst_envelope_gap = 0.0f64;
    let mut harmonic = 0.0;
    for (i, s) in divergence.partial_sums.iter().enumerate() {
        harmonic += 1.0 / (i + 1) as f64;
        worst_envelope_gap = worst_envelope_gap.max(harmonic / 16.0 - s);
    }
    reports.push(BoundReport::evaluate(
        "divergence_certificate",
        vec![("depth", depth as f64), ("facet", 1.0)],
        worst_envelope_gap,
        0.0,
        1e-15,
    ));

    let profile = f.sup_profile();
    let monotone = profile.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-15);
    let final_sup = profile.last().map(|&(_, v)| v).unwrap_or(1.0);
    reports.push(
        BoundReport::evaluate(
            "divergence_certificate",
            vec![("depth", depth as f64), ("facet", 2.0)],
            if monotone { final_sup } else { 1.0 },
            0.1,
            0.0,
        )
        .with_note("boundary decay: sup profile nonincreasing and below 0.1"),
    );
    Ok(reports)
}

/// Plateau-mass and coefficient certificates for the smooth variant.
pub fn smooth_variant_suite(depth: usize) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    let f = smooth_variant(build_schedule(depth)?, &AmplitudeRule::Harmonic, 0.9)?;
    let coefficients = f.projection_coefficients();
    let mut worst_ratio_deficit = 0.0f64;
    let mut worst_quarter_deficit = 0.0f64;
    for row in &coefficients.rows {
        worst_ratio_deficit =
            worst_ratio_deficit.max(0.5 * row.magnitude_upper - row.magnitude_lower);
        worst_quarter_deficit =
            worst_quarter_deficit.max(row.quarter_bound - row.magnitude_lower);
    }
    reports.push(BoundReport::evaluate(
        "smooth_variant",
        vec![("depth", depth as f64), ("facet", 0.0)],
        worst_ratio_deficit,
        0.0,
        1e-15,
    ));
    reports.push(BoundReport::evaluate(
        "smooth_variant",
        vec![("depth", depth as f64), ("facet", 1.0)],
        worst_quarter_deficit,
        0.0,
        1e-15,
    ));
    Ok(reports)
}

/// Growth-probe suite: the model with known exponent, the constant function,
/// and the extremal-kernel demonstration.
pub fn lipschitz_suite() -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();

    // Model (1-z)^{alpha-1}, truncated far beyond the probe radii. With
    // p = 2 the derivative means grow like (1-r)^{alpha-3/2}, so the probe
    // hypothesis holds with alpha' = alpha - 1/2 and the fitted exponent
    // should land at 1 - alpha' = 3/2 - alpha.
    let alpha = 0.8;
    let terms = 20_000usize;
    let mut coeff = 1.0f64;
    let mut modes = Vec::with_capacity(terms);
    for jj in 0..terms {
        modes.push(Mode {
            n: jj as i64,
            profile: RadialProfile::Polynomial {
                terms: vec![(jj as u32, C64::new(coeff, 0.0))],
            },
        });
        coeff *= (1.0 - alpha + jj as f64) / (jj as f64 + 1.0);
    }
    let model = RadialFourierFunction::new(modes)?;
    let probe = lipschitz_growth_probe(&model, 2.0, 1, alpha - 0.5)?;
    reports.push(
        BoundReport::evaluate(
            "lipschitz_probe",
            vec![("alpha", alpha - 0.5), ("n", 1.0)],
            (probe.fitted_exponent - probe.ceiling).abs(),
            0.1,
            0.0,
        )
        .with_note(probe.note),
    );

    let one = RadialFourierFunction::new(vec![Mode {
        n: 0,
        profile: RadialProfile::Polynomial {
            terms: vec![(0, C64::new(1.0, 0.0))],
        },
    }])?;
    let flat = lipschitz_growth_probe(&one, 2.0, 0, 0.5)?;
    reports.push(BoundReport::evaluate(
        "lipschitz_probe",
        vec![("alpha", 0.5), ("n", 0.0)],
        flat.fitted_exponent.abs(),
        0.02,
        0.0,
    ));

    // Extremal-kernel demonstration: F = 1 + z/2, g = |F|^2 F (p = 4), and
    // the kernel growth probed in the exponent s/(p-1) = 2 for s = 6.
    let g = RadialFourierFunction::new(vec![
        Mode {
            n: -1,
            profile: RadialProfile::Polynomial {
                terms: vec![(1, C64::new(0.5, 0.0))],
            },
        },
        Mode {
            n: 0,
            profile: RadialProfile::Polynomial {
                terms: vec![(0, C64::new(1.0, 0.0)), (2, C64::new(0.5, 0.0))],
            },
        },
        Mode {
            n: 1,
            profile: RadialProfile::Polynomial {
                terms: vec![(1, C64::new(1.0, 0.0)), (3, C64::new(0.125, 0.0))],
            },
        },
        Mode {
            n: 2,
            profile: RadialProfile::Polynomial {
                terms: vec![(2, C64::new(0.25, 0.0))],
            },
        },
    ])?;
    let demo = lipschitz_growth_probe(&g, 2.0, 1, 0.9)?;
    reports.push(
        BoundReport::evaluate(
            "lipschitz_probe",
            vec![("alpha", 0.9), ("n", 1.0)],
            demo.fitted_exponent,
            demo.ceiling + 0.1,
            0.0,
        )
        .with_note("extremal-kernel demonstration: polynomial F, g = |F|^2 F"),
    );
    // Higher-order variant of the same demonstration: the second derivative
    // of the projected kernel stays bounded for polynomial data.
    let demo2 = lipschitz_growth_probe(&g, 2.0, 2, 0.9)?;
    reports.push(
        BoundReport::evaluate(
            "lipschitz_probe",
            vec![("alpha", 0.9), ("n", 2.0)],
            demo2.fitted_exponent,
            demo2.ceiling + 0.1,
            0.0,
        )
        .with_note("extremal-kernel demonstration, second derivative"),
    );
    Ok(reports)
}

/// Suite registry: name, tags covered, and the runner.
pub struct SuiteSpec {
    pub name: &'static str,
    pub tags: &'static [&'static str],
}

pub const SUITES: &[SuiteSpec] = &[
    SuiteSpec {
        name: "hypergeometric",
        tags: &[
            "hyp_euler_transform",
            "hyp_euler_integral",
            "hyp_kummer",
            "hyp_gauss_value",
            "gamma_reflection",
        ],
    },
    SuiteSpec {
        name: "lemma1",
        tags: &["lemma1_identity", "lemma1_sharpness"],
    },
    SuiteSpec {
        name: "constants",
        tags: &["c1_bound", "c1_sharpness", "c2_special", "c2_lemma", "c3_estimate"],
    },
    SuiteSpec {
        name: "projection",
        tags: &["projection_oracle", "projection_idempotent"],
    },
    SuiteSpec {
        name: "prn",
        tags: &["prn_bound"],
    },
    SuiteSpec {
        name: "bpn",
        tags: &["bpn_bound"],
    },
    SuiteSpec {
        name: "weighted",
        tags: &["weighted_norm"],
    },
    SuiteSpec {
        name: "sobolev",
        tags: &["sobolev_corollary", "derivative_split_corollary"],
    },
    SuiteSpec {
        name: "counterexample",
        tags: &["schedule_certificate", "divergence_certificate"],
    },
    SuiteSpec {
        name: "smooth",
        tags: &["smooth_variant"],
    },
    SuiteSpec {
        name: "lipschitz",
        tags: &["lipschitz_probe"],
    },
];

/// Standard scale of each suite (the acceptance-criteria sizes).
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<BoundReport>> {
    match name {
        "hypergeometric" => hypergeometric_suite(seed, 200),
        "lemma1" => {
            let r_values: Vec<f64> = (1..=18).map(|i| 0.05 * i as f64).collect();
            lemma1_suite(&[1.5, 2.0, 3.0, 4.0, 6.0], &r_values)
        }
        "constants" => {
            let mut reports = c1_suite(seed, 50)?;
            reports.extend(c2_suite(seed, 30)?);
            reports.extend(c3_suite()?);
            Ok(reports)
        }
        "projection" => projection_suite(seed, 50, 20),
        "prn" => prn_suite(seed, 100),
        "bpn" => bpn_suite(seed, 100),
        "weighted" => weighted_suite(seed, 100),
        "sobolev" => sobolev_suite(seed, 4),
        "counterexample" => counterexample_suite(200),
        "smooth" => smooth_variant_suite(50),
        "lipschitz" => lipschitz_suite(),
        other => Err(crate::error::Error::Domain(format!(
            "unknown suite '{other}'; expected one of {:?} or 'all'",
            SUITES.iter().map(|s| s.name).collect::<Vec<_>>()
        ))),
    }
}
