//! Numerical verification of the theorem-level inequalities.
//!
//! Each check evaluates both sides of one inequality instance at full
//! quadrature precision and returns a `BoundReport`. A failing report should
//! first be read against its quadrature-error estimate; only a violation well
//! beyond that estimate would point at the theorem itself.

use crate::bounds::constants::{c3_constant_with, derivative_gamma_factor, C2Mode, C2Params};
use crate::bounds::report::BoundReport;
use crate::disc::{
    twisted_derivative, AnalyticFunction, CircleFunction, RadialFourierFunction,
    RadialProfile, TrigPoly, WeightedRadialMeasure,
};
use crate::error::{Error, Result};
use crate::projection::{self, prn_operator};
use crate::quad;

/// Grid used for the C₂/C₃ constants inside checks; any feasible value is a
/// valid constant, so a coarse seeded search is enough (and much cheaper).
const CHECK_C2_MODE: C2Mode = C2Mode::GridSearch {
    resolution: 8,
    refinements: 0,
};

/// M_p of a coefficient-form circle function with an error estimate.
/// p = 2 goes through Parseval exactly; other p sample the grid twice.
/// |g|^p has kinks at the zeros of g, so the trapezoid error here is
/// algebraic, not spectral; the fine/coarse difference tracks it.
pub fn poly_mean(poly: &TrigPoly, p: f64) -> Result<(f64, f64)> {
    if p == 2.0 {
        let value = poly
            .modes()
            .map(|(_, c)| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        return Ok((value, 0.0));
    }
    let m = (8 * poly.band() + 8).max(512);
    let fine = crate::disc::mean_of_samples(&poly.sample(m), p)?;
    let coarse = crate::disc::mean_of_samples(&poly.sample(m / 2), p)?;
    Ok((fine, (fine - coarse).abs()))
}

/// M_p(r, g) for an analytic function, same dispatch as `poly_mean`.
pub fn analytic_mean(g: &AnalyticFunction, r: f64, p: f64) -> Result<(f64, f64)> {
    if p == 2.0 {
        return Ok((g.m2(r), 0.0));
    }
    poly_mean(&g.circle_poly(r), p)
}

fn validate_exponent(p: f64) -> Result<()> {
    if p == f64::INFINITY || p >= 1.0 {
        Ok(())
    } else {
        Err(Error::Constraint(format!(
            "theorem hypotheses need 1 <= p <= inf, got {p}"
        )))
    }
}

/// Boundary-operator bound: ||P_r^(n) f||_p against the Sobolev seminorm of
/// the twisted input,
/// Γ(n+1-k)Γ(n+2-k)/Γ((n+2-k)/2)² r^{n-k} (1-r²)^{k-n-1} ||d^k/dθ^k (f e^{-inθ})||_p.
pub fn check_prn_bound(f: &TrigPoly, p: f64, n: u32, k: u32, r: f64) -> Result<BoundReport> {
    validate_exponent(p)?;
    if k > n {
        return Err(Error::Constraint(format!("need k <= n, got k = {k}, n = {n}")));
    }
    if !(0.0 < r && r < 1.0) {
        return Err(Error::Domain(format!("radius {r} outside (0, 1)")));
    }
    let image = match prn_operator(&CircleFunction::Poly(f.clone()), r, n)? {
        CircleFunction::Poly(poly) => poly,
        CircleFunction::Samples(_) => unreachable!("coefficient input stays in coefficient form"),
    };
    let (lhs, lhs_err) = poly_mean(&image, p)?;
    let (sobolev, rhs_err) = poly_mean(&twisted_derivative(f, n as i64, k), p)?;
    let factor = derivative_gamma_factor(n, k)
        * r.powi((n - k) as i32)
        * ((1.0 - r) * (1.0 + r)).powi(k as i32 - n as i32 - 1);
    let rhs = factor * sobolev;
    Ok(BoundReport::evaluate(
        "prn_bound",
        vec![
            ("p", p),
            ("n", n as f64),
            ("k", k as f64),
            ("r", r),
        ],
        lhs,
        rhs,
        lhs_err + factor * rhs_err,
    ))
}

/// Derivative-of-projection bound:
/// M_p(r, (P f)^{(n)}) <= 2 Γ... r^{-k} ∫ ρ^{n+1-k} M_p(d^k(e^{-inθ}f), ρ) (1-r²ρ²)^{k-n-1} dρ.
pub fn check_bpn_bound(
    f: &RadialFourierFunction,
    p: f64,
    n: u32,
    k: u32,
    r: f64,
) -> Result<BoundReport> {
    validate_exponent(p)?;
    if k > n {
        return Err(Error::Constraint(format!("need k <= n, got k = {k}, n = {n}")));
    }
    if !(0.0 < r && r < 1.0) {
        return Err(Error::Domain(format!("radius {r} outside (0, 1)")));
    }
    let derivative = projection::project_fourier(f)?.analytic.derivative(n);
    let (lhs, lhs_err) = analytic_mean(&derivative, r, p)?;

    let integrand = |rho: f64| -> f64 {
        let circle = f.circle_restriction(rho);
        let mean = poly_mean(&twisted_derivative(&circle, n as i64, k), p)
            .map(|(v, _)| v)
            .unwrap_or(0.0);
        rho.powi((n + 1 - k) as i32) * mean * (1.0 - r * r * rho * rho).powi(k as i32 - n as i32 - 1)
    };
    let integral = quad::gauss_composite(&integrand, 0.0, 1.0, &f.radial_breakpoints(), 32);
    let factor = 2.0 * derivative_gamma_factor(n, k) * r.powi(-(k as i32));
    Ok(BoundReport::evaluate(
        "bpn_bound",
        vec![
            ("p", p),
            ("n", n as f64),
            ("k", k as f64),
            ("r", r),
        ],
        lhs,
        rhs_value(factor, integral.value),
        lhs_err + factor * integral.error_estimate,
    ))
}

fn rhs_value(factor: f64, integral: f64) -> f64 {
    factor * integral
}

/// Weighted-norm bound with the composed constant C₃(s, n-k, j-k, u).
///
/// When w = u + (n-k) s reaches 1 and the input has full radial support, the
/// right-hand side is a divergent integral: the inequality holds vacuously
/// and the report says so instead of failing.
pub fn check_weighted_norm(
    f: &RadialFourierFunction,
    p: f64,
    s: f64,
    n: u32,
    k: u32,
    j: f64,
    u: f64,
) -> Result<BoundReport> {
    validate_exponent(p)?;
    if k > n {
        return Err(Error::Constraint(format!("need k <= n, got k = {k}, n = {n}")));
    }
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Constraint(format!("need 1 < s < inf, got {s}")));
    }
    if !(j - k as f64 > -1.0) {
        return Err(Error::Constraint(format!(
            "need j - k > -1, got j = {j}, k = {k}"
        )));
    }
    let d = (n - k) as f64;
    if !(u > 1.0 - (d + 1.0) * s && u < 1.0) {
        return Err(Error::Constraint(format!(
            "need 1 - (n+1-k) s = {} < u < 1, got {u}",
            1.0 - (d + 1.0) * s
        )));
    }
    let w = u + d * s;
    let params = vec![
        ("p", p),
        ("s", s),
        ("n", n as f64),
        ("k", k as f64),
        ("j", j),
        ("u", u),
    ];

    let derivative = projection::project_fourier(f)?.analytic.derivative(n);
    let breaks = f.radial_breakpoints();
    let lhs_measure = WeightedRadialMeasure::on_interval_with_breakpoints(j, u, 0.0, 1.0, &breaks)?;
    let (lhs_s, lhs_est) = lhs_measure.integrate_with_estimate(|r| {
        analytic_mean(&derivative, r, p).map(|(v, _)| v).unwrap_or(0.0).powf(s)
    });
    let lhs = lhs_s.powf(1.0 / s);

    let support_hi = f.support_hi();
    let rhs_measure = if w < 1.0 {
        WeightedRadialMeasure::on_interval_with_breakpoints(d + 1.0, w, 0.0, 1.0, &breaks)?
    } else if support_hi < 1.0 {
        WeightedRadialMeasure::on_interval_with_breakpoints(d + 1.0, w, 0.0, support_hi, &breaks)?
    } else {
        // Full-support input with w >= 1: the right-hand side is +infinity.
        return Ok(BoundReport::evaluate("weighted_norm", params, lhs, f64::INFINITY, 0.0)
            .with_note("rhs integral divergent (w >= 1 with full radial support)"));
    };
    let (rhs_s, rhs_est) = rhs_measure.integrate_with_estimate(|rho| {
        let circle = f.circle_restriction(rho);
        poly_mean(&twisted_derivative(&circle, n as i64, k), p)
            .map(|(v, _)| v)
            .unwrap_or(0.0)
            .powf(s)
    });
    let constant = c3_constant_with(s, n - k, j - k as f64, u, CHECK_C2_MODE)?;
    let rhs = constant * rhs_s.powf(1.0 / s);

    // d(x^(1/s)) = x^(1/s) dx / (s x)
    let quad_err = lhs * lhs_est / (s * lhs_s.max(1e-300))
        + rhs * rhs_est / (s * rhs_s.max(1e-300));
    Ok(BoundReport::evaluate("weighted_norm", params, lhs, rhs, quad_err))
}

/// The Sobolev-style corollary with the explicit constant:
/// ||P(f)^{(n)}||_{L^p(r^n dA)} <= (2π/sin(π/p)) ||d^n/dθ^n (e^{-inθ} f)||_{L^p(dA)}.
pub fn check_sobolev_corollary(f: &RadialFourierFunction, p: f64, n: u32) -> Result<BoundReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Constraint(format!("corollary needs 1 < p < inf, got {p}")));
    }
    let derivative = projection::project_fourier(f)?.analytic.derivative(n);
    let breaks = f.radial_breakpoints();
    // Both sides of dA = 2π r dr dθ / (2π) carry the same angular
    // normalization, so only the radial factors r^{n+1} and r remain.
    let lhs_measure =
        WeightedRadialMeasure::on_interval_with_breakpoints(n as f64 + 1.0, 0.0, 0.0, 1.0, &breaks)?;
    let (lhs_p, lhs_est) = lhs_measure.integrate_with_estimate(|r| {
        analytic_mean(&derivative, r, p).map(|(v, _)| v).unwrap_or(0.0).powf(p)
    });
    let lhs = lhs_p.powf(1.0 / p);

    let rhs_measure = WeightedRadialMeasure::on_interval_with_breakpoints(1.0, 0.0, 0.0, 1.0, &breaks)?;
    let (rhs_p, rhs_est) = rhs_measure.integrate_with_estimate(|rho| {
        let circle = f.circle_restriction(rho);
        poly_mean(&twisted_derivative(&circle, n as i64, n), p)
            .map(|(v, _)| v)
            .unwrap_or(0.0)
            .powf(p)
    });
    let constant = 2.0 * std::f64::consts::PI / (std::f64::consts::PI / p).sin();
    let rhs = constant * rhs_p.powf(1.0 / p);
    let quad_err = lhs * lhs_est / (p * lhs_p.max(1e-300))
        + rhs * rhs_est / (p * rhs_p.max(1e-300));
    Ok(BoundReport::evaluate(
        "sobolev_corollary",
        vec![("p", p), ("n", n as f64)],
        lhs,
        rhs,
        quad_err,
    ))
}

/// The split-order corollary:
/// ||P(f)^{(n+k)}||_{L^p(r^k dA)} <= C₃(p,n,1,0) ||d^k/dθ^k(e^{-i(n+k)θ} f)||_{L^p(r^n (1-r)^{-np} dA)}.
pub fn check_derivative_split_corollary(
    f: &RadialFourierFunction,
    p: f64,
    n: u32,
    k: u32,
) -> Result<BoundReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Constraint(format!("corollary needs 1 < p < inf, got {p}")));
    }
    let total = n + k;
    let derivative = projection::project_fourier(f)?.analytic.derivative(total);
    let breaks = f.radial_breakpoints();
    let lhs_measure =
        WeightedRadialMeasure::on_interval_with_breakpoints(k as f64 + 1.0, 0.0, 0.0, 1.0, &breaks)?;
    let (lhs_p, lhs_est) = lhs_measure.integrate_with_estimate(|r| {
        analytic_mean(&derivative, r, p).map(|(v, _)| v).unwrap_or(0.0).powf(p)
    });
    let lhs = lhs_p.powf(1.0 / p);

    let w = n as f64 * p;
    let support_hi = f.support_hi();
    let params = vec![("p", p), ("n", n as f64), ("k", k as f64)];
    let rhs_measure = if w < 1.0 {
        WeightedRadialMeasure::on_interval_with_breakpoints(n as f64 + 1.0, w, 0.0, 1.0, &breaks)?
    } else if support_hi < 1.0 {
        WeightedRadialMeasure::on_interval_with_breakpoints(n as f64 + 1.0, w, 0.0, support_hi, &breaks)?
    } else {
        return Ok(
            BoundReport::evaluate("derivative_split_corollary", params, lhs, f64::INFINITY, 0.0)
                .with_note("rhs integral divergent (np >= 1 with full radial support)"),
        );
    };
    let (rhs_p, rhs_est) = rhs_measure.integrate_with_estimate(|rho| {
        let circle = f.circle_restriction(rho);
        poly_mean(&twisted_derivative(&circle, total as i64, k), p)
            .map(|(v, _)| v)
            .unwrap_or(0.0)
            .powf(p)
    });
    let constant = c3_constant_with(p, n, 1.0, 0.0, CHECK_C2_MODE)?;
    let rhs = constant * rhs_p.powf(1.0 / p);
    let quad_err = lhs * lhs_est / (p * lhs_p.max(1e-300))
        + rhs * rhs_est / (p * rhs_p.max(1e-300));
    Ok(BoundReport::evaluate(
        "derivative_split_corollary",
        params,
        lhs,
        rhs,
        quad_err,
    ))
}

/// The C₂ lemma itself on a concrete profile: with
/// g(x) = ∫ f(y) (1-xy)^{-m} y^k dy, check ||g||_{L^p(x^j (1-x)^{-u})} <= C₂ ||f||_{L^p(x^k (1-x)^{-w})}.
pub fn check_c2_lemma(
    params: &C2Params,
    profile: &RadialProfile,
    c2_value: f64,
) -> Result<BoundReport> {
    let C2Params { p, m, k, j, u } = *params;
    let w = params.weight_w();
    let f_at = |y: f64| profile.eval(y).re.abs();

    // Integrate segment-wise between the profile's breakpoints: tanh-sinh
    // where an endpoint is delicate (y^k at 0, the (1-xy)^{-m} transition at
    // y = 1 as x -> 1), plain Gauss panels elsewhere.
    let mut segment_edges = vec![0.0, 1.0];
    segment_edges.extend(profile.breakpoints());
    segment_edges.retain(|t| (0.0..=1.0).contains(t));
    segment_edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    segment_edges.dedup();
    let g_at = move |x: f64| -> f64 {
        let mut total = 0.0;
        for pair in segment_edges.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let integrand_plain = |y: f64| {
                let one_minus_xy = (1.0 - x) + x * (1.0 - y);
                f_at(y) * one_minus_xy.powf(-m) * y.powf(k)
            };
            let delicate_at_zero = lo == 0.0 && k < 0.0;
            let delicate_at_one = hi == 1.0;
            total += if delicate_at_zero || delicate_at_one {
                quad::tanh_sinh(
                    |y, y_minus_lo, hi_minus_y| {
                        let one_minus_y = (1.0 - hi) + hi_minus_y;
                        let one_minus_xy = (1.0 - x) + x * one_minus_y;
                        // y itself can round onto the endpoint; the offset is
                        // the accurate quantity for the y^k factor.
                        let ypow = if lo == 0.0 {
                            y_minus_lo.powf(k)
                        } else {
                            y.powf(k)
                        };
                        f_at(y) * one_minus_xy.powf(-m) * ypow
                    },
                    lo,
                    hi,
                    1e-9,
                )
                .value
            } else {
                quad::gauss_panel(&integrand_plain, lo, hi, 32)
            };
        }
        total
    };

    let lhs_measure = WeightedRadialMeasure::new(j, u)?;
    let (lhs_p, lhs_est) = lhs_measure.integrate_with_estimate(|x| g_at(x).powf(p));
    let lhs = lhs_p.powf(1.0 / p);

    let (support_lo, support_hi) = profile.support();
    let rhs_measure = if w < 1.0 {
        WeightedRadialMeasure::with_breakpoints(k, w, &profile.breakpoints())?
    } else if support_hi < 1.0 {
        WeightedRadialMeasure::on_interval_with_breakpoints(
            k,
            w,
            support_lo.min(0.0_f64.max(support_lo)),
            support_hi,
            &profile.breakpoints(),
        )?
    } else {
        return Err(Error::Constraint(
            "C2 lemma check needs w < 1 or a compactly supported profile".into(),
        ));
    };
    let (rhs_p, rhs_est) = rhs_measure.integrate_with_estimate(|y| f_at(y).powf(p));
    let rhs = c2_value * rhs_p.powf(1.0 / p);
    let quad_err = lhs * lhs_est / (p * lhs_p.max(1e-300))
        + rhs * rhs_est / (p * rhs_p.max(1e-300));
    Ok(BoundReport::evaluate(
        "c2_lemma",
        vec![("p", p), ("m", m), ("k", k), ("j", j), ("u", u)],
        lhs,
        rhs,
        quad_err,
    ))
}

/// Result of the asymptotic-growth probe. This is a slope fit, not an
/// inequality certificate; the underlying statement is a big-O claim.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    /// Fitted beta in M_p(r, (P f)^{(n)}) ~ C (1-r)^{-beta}.
    pub fitted_exponent: f64,
    /// The growth ceiling 1 - alpha predicted for the derivative means.
    pub ceiling: f64,
    /// Heuristic verdict: fitted exponent below ceiling + 0.1.
    pub consistent: bool,
    pub radius_range: (f64, f64),
    pub note: &'static str,
}

/// Fits the growth exponent of M_p(r, (P f)^{(n)}) on r in [0.9, 0.999] by
/// least squares in log-log coordinates.
pub fn lipschitz_growth_probe(
    f: &RadialFourierFunction,
    p: f64,
    n: u32,
    alpha: f64,
) -> Result<GrowthReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let derivative = projection::project_fourier(f)?.analytic.derivative(n);
    let (lo, hi) = (0.9f64, 0.999f64);
    let count = 12;
    let mut xs = Vec::with_capacity(count);
    let mut ys = Vec::with_capacity(count);
    for i in 0..count {
        let t = i as f64 / (count - 1) as f64;
        // Log-spaced distances 1 - r between 0.1 and 0.001.
        let one_minus_r = (1.0 - lo) * ((1.0 - hi) / (1.0 - lo)).powf(t);
        let r = 1.0 - one_minus_r;
        let (mean, _) = analytic_mean(&derivative, r, p)?;
        if !(mean > 0.0) {
            return Err(Error::Construction(format!(
                "growth fit needs positive means, got {mean} at r = {r}"
            )));
        }
        xs.push(one_minus_r.ln());
        ys.push(mean.ln());
    }
    let n_pts = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n_pts;
    let y_mean = ys.iter().sum::<f64>() / n_pts;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let var: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    let slope = cov / var;
    let fitted = -slope;
    let ceiling = 1.0 - alpha;
    Ok(GrowthReport {
        fitted_exponent: fitted,
        ceiling,
        consistent: fitted <= ceiling + 0.1,
        radius_range: (lo, hi),
        note: "asymptotic probe: least-squares slope, not an inequality certificate",
    })
}
