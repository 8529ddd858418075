//! The sharp constants behind every bound: the kernel-mean constant
//! Γ(p-1)/Γ(p/2)², the one-variable constant C₁, the two-exponent constant C₂
//! with its four-inequality feasibility region, and the composed constant C₃.

use crate::error::{Error, Result};
use crate::special::{self, HypergeomArgs};

const HYP_TOL: f64 = 1e-11;

/// Γ(n+1-k) Γ(n+2-k) / Γ((n+2-k)/2)², the prefactor shared by the derivative
/// bounds. For n = k it collapses to 1.
pub fn derivative_gamma_factor(n: u32, k: u32) -> f64 {
    assert!(k <= n);
    if n == k {
        return 1.0;
    }
    let d = (n - k) as f64;
    (special::log_gamma(d + 1.0).unwrap() + special::log_gamma(d + 2.0).unwrap()
        - 2.0 * special::log_gamma((d + 2.0) / 2.0).unwrap())
    .exp()
}

/// Closed form of the kernel mean (1/2π) ∫ |1 - r e^{iθ}|^{-p} dθ:
/// (1-r²)^{1-p} ₂F₁(1 - p/2, 1 - p/2; 1; r²).
pub fn lemma1_closed_form(p: f64, r: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("kernel mean needs p > 1, got {p}")));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} outside [0, 1)")));
    }
    let one_minus_x = (1.0 - r) * (1.0 + r);
    let f = lemma1_ratio(p, r * r)?;
    Ok(one_minus_x.powf(1.0 - p) * f)
}

/// The mean divided by (1-r²)^{1-p}, as a function of x = r²; nondecreasing
/// in x and bounded by the sharp constant.
pub fn lemma1_ratio(p: f64, x: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("kernel mean needs p > 1, got {p}")));
    }
    let a = 1.0 - p / 2.0;
    special::hyp2f1(HypergeomArgs::new(a, a, 1.0, x)?, HYP_TOL)
}

/// Trapezoid evaluation of the same mean; the independent oracle for the
/// closed form. Spectrally accurate since the integrand is smooth and 2π-periodic.
pub fn lemma1_quadrature(p: f64, r: f64, nodes: usize) -> f64 {
    let m = nodes.max(16);
    let sum: f64 = (0..m)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let d2 = (1.0 - r * theta.cos()).powi(2) + (r * theta.sin()).powi(2);
            d2.powf(-p / 2.0)
        })
        .sum();
    sum / m as f64
}

/// The sharp limit Γ(p-1)/Γ(p/2)² of the kernel-mean ratio as r -> 1.
pub fn lemma1_sharp_constant(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("sharp constant needs p > 1, got {p}")));
    }
    Ok((special::log_gamma(p - 1.0)? - 2.0 * special::log_gamma(p / 2.0)?).exp())
}

/// Which formula produced a constant; surfaced in CLI output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    ClosedForm,
    GridMaximum,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::ClosedForm => "closed-form",
            Branch::GridMaximum => "grid",
        }
    }
}

/// C₁(s, m, k) = Γ(k+1)Γ(1-s)/Γ(2+k-s) · max_{x in [0,1]} ₂F₁(2+k-s-m, 1-s; 2+k-s; x),
/// the smallest constant with
/// ∫_0^1 (1-y)^{-s} (1-xy)^{-m} y^k dy <= C₁ (1-x)^{1-s-m}.
pub fn c1_constant(s: f64, m: f64, k: f64) -> Result<f64> {
    Ok(c1_constant_detailed(s, m, k)?.0)
}

pub fn c1_constant_detailed(s: f64, m: f64, k: f64) -> Result<(f64, Branch)> {
    if !(s < 1.0 && m + s > 1.0 && k > -1.0) {
        return Err(Error::Domain(format!(
            "C1 needs s < 1, m + s > 1, k > -1; got s = {s}, m = {m}, k = {k}"
        )));
    }
    // When the series parameters are all positive the hypergeometric factor
    // increases on [0, 1] and the maximum sits at x = 1, where the Gauss
    // value collapses the whole expression to Γ(s+m-1)Γ(1-s)/Γ(m).
    if 2.0 + k > s + m && 2.0 + k > s {
        let value = (special::log_gamma(s + m - 1.0)? + special::log_gamma(1.0 - s)?
            - special::log_gamma(m)?)
        .exp();
        return Ok((value, Branch::ClosedForm));
    }
    let prefactor = (special::log_gamma(k + 1.0)? + special::log_gamma(1.0 - s)?
        - special::log_gamma(2.0 + k - s)?)
    .exp();
    let max = max_hyp_on_unit_interval(2.0 + k - s - m, 1.0 - s, 2.0 + k - s)?;
    Ok((prefactor * max, Branch::GridMaximum))
}

/// Dense-grid maximum of x -> ₂F₁(a, b; c; x) over [0, 1] with two local
/// refinement passes. The caller guarantees convergence at x = 1.
fn max_hyp_on_unit_interval(a: f64, b: f64, c: f64) -> Result<f64> {
    let eval = |x: f64| -> Result<f64> {
        if x >= 1.0 {
            special::hyp2f1_at_one(a, b, c)
        } else {
            special::hyp2f1(HypergeomArgs::new(a, b, c, x)?, 1e-9)
        }
    };
    let coarse = 32usize;
    let mut best_x = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=coarse {
        let x = i as f64 / coarse as f64;
        let v = eval(x)?;
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let mut lo = (best_x - 1.0 / coarse as f64).max(0.0);
    let mut hi = (best_x + 1.0 / coarse as f64).min(1.0);
    for _ in 0..2 {
        let fine = 16usize;
        let mut local_best_x = best_x;
        for i in 0..=fine {
            let x = lo + (hi - lo) * i as f64 / fine as f64;
            let v = eval(x)?;
            if v > best {
                best = v;
                local_best_x = x;
            }
        }
        let step = (hi - lo) / fine as f64;
        lo = (local_best_x - step).max(0.0);
        hi = (local_best_x + step).min(1.0);
        best_x = local_best_x;
    }
    Ok(best)
}

/// Parameter set of the C₂ lemma. `w = u + (m-1) p` is derived, and the
/// search variables (a, b) must satisfy the four feasibility inequalities.
#[derive(Debug, Clone, Copy)]
pub struct C2Params {
    pub p: f64,
    pub m: f64,
    pub k: f64,
    pub j: f64,
    pub u: f64,
}

impl C2Params {
    pub fn new(p: f64, m: f64, k: f64, j: f64, u: f64) -> Result<Self> {
        if !(p > 1.0) {
            return Err(Error::Domain(format!("C2 needs p > 1, got {p}")));
        }
        if !(m > 0.0) {
            return Err(Error::Domain(format!("C2 needs m > 0, got {m}")));
        }
        if !(k > -1.0 && j > -1.0) {
            return Err(Error::Domain(format!("C2 needs k, j > -1, got {k}, {j}")));
        }
        if !(u < 1.0) {
            return Err(Error::Domain(format!("C2 needs u < 1, got {u}")));
        }
        if !(u > 1.0 - m * p) {
            return Err(Error::Domain(format!(
                "C2 needs u > 1 - m p = {}, got {u}",
                1.0 - m * p
            )));
        }
        Ok(Self { p, m, k, j, u })
    }

    pub fn conjugate(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    pub fn weight_w(&self) -> f64 {
        self.u + (self.m - 1.0) * self.p
    }

    /// The open interval of admissible a for a given b in (0, m).
    pub fn a_interval(&self, b: f64) -> (f64, f64) {
        let q = self.conjugate();
        let lo = (1.0 - self.m - self.u / self.p).max(1.0 / q - (self.m - b));
        let hi = (1.0 / q).min(1.0 - self.u / self.p - self.m + b);
        (lo, hi)
    }

    /// Errors name the first violated feasibility inequality.
    pub fn check_feasible(&self, a: f64, b: f64) -> Result<()> {
        let q = self.conjugate();
        if !(0.0 < b && b < self.m) {
            return Err(Error::Constraint(format!(
                "need 0 < b < m, got b = {b}, m = {}",
                self.m
            )));
        }
        if !(1.0 - self.m - self.u / self.p < a) {
            return Err(Error::Constraint(format!(
                "feasibility (i): 1 - m - u/p = {} must be < a = {a}",
                1.0 - self.m - self.u / self.p
            )));
        }
        if !(1.0 / q - (self.m - b) < a) {
            return Err(Error::Constraint(format!(
                "feasibility (ii): 1/q - (m - b) = {} must be < a = {a}",
                1.0 / q - (self.m - b)
            )));
        }
        if !(a < 1.0 / q) {
            return Err(Error::Constraint(format!(
                "feasibility (iii): a = {a} must be < 1/q = {}",
                1.0 / q
            )));
        }
        if !(a < 1.0 - self.u / self.p - self.m + b) {
            return Err(Error::Constraint(format!(
                "feasibility (iv): a = {a} must be < 1 - u/p - m + b = {}",
                1.0 - self.u / self.p - self.m + b
            )));
        }
        Ok(())
    }

    /// The Hölder-split product C₁(aq, (m-b)q, k)^{1/q} C₁(ap+(m-b)p+u-p/q, bp, j)^{1/p}.
    pub fn objective(&self, a: f64, b: f64) -> Result<f64> {
        let q = self.conjugate();
        let first = c1_constant(a * q, (self.m - b) * q, self.k)?;
        let second = c1_constant(
            a * self.p + (self.m - b) * self.p + self.u - self.p / q,
            b * self.p,
            self.j,
        )?;
        Ok(first.powf(1.0 / q) * second.powf(1.0 / self.p))
    }
}

/// How to pick the split point (a, b) of the C₂ product.
#[derive(Debug, Clone, Copy)]
pub enum C2Mode {
    /// Evaluate at one feasible pair.
    Fixed { a: f64, b: f64 },
    /// Minimize over a feasibility-clustered grid; the result is an upper
    /// bound on the true infimum and a valid constant for the lemma.
    GridSearch { resolution: usize, refinements: usize },
}

impl Default for C2Mode {
    fn default() -> Self {
        C2Mode::GridSearch {
            resolution: 60,
            refinements: 1,
        }
    }
}

/// Points clustered toward both ends of (lo, hi).
fn clustered_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let alpha: f64 = 3.0;
    let scale = alpha.tanh();
    (1..n)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / n as f64;
            let mid = 0.5 * (lo + hi);
            mid + 0.5 * (hi - lo) * (alpha * t).tanh() / scale
        })
        .collect()
}

pub fn c2_constant(params: &C2Params, mode: C2Mode) -> Result<f64> {
    match mode {
        C2Mode::Fixed { a, b } => {
            params.check_feasible(a, b)?;
            params.objective(a, b)
        }
        C2Mode::GridSearch {
            resolution,
            refinements,
        } => c2_grid_search(params, resolution, refinements),
    }
}

fn c2_grid_search(params: &C2Params, resolution: usize, refinements: usize) -> Result<f64> {
    // Seed with the split points the closed-form special cases use, when
    // feasible: b = 1/p with a = 1/(pq) and its m-shifted variant.
    let q = params.conjugate();
    let mut candidates = vec![
        (1.0 / (params.p * q), 1.0 / params.p),
        (1.0 - params.m + 1.0 / (params.p * q), 1.0 / params.p),
    ];
    for b in clustered_points(0.0, params.m, resolution) {
        let (a_lo, a_hi) = params.a_interval(b);
        if a_lo >= a_hi {
            continue;
        }
        for a in clustered_points(a_lo, a_hi, resolution) {
            candidates.push((a, b));
        }
    }

    // Near-boundary grid points can trip the strict feasibility checks
    // through rounding; they are skipped, not fatal.
    fn consider(
        params: &C2Params,
        a: f64,
        b: f64,
        best: &mut f64,
        best_ab: &mut Option<(f64, f64)>,
    ) {
        if params.check_feasible(a, b).is_err() {
            return;
        }
        if let Ok(value) = params.objective(a, b) {
            if value < *best {
                *best = value;
                *best_ab = Some((a, b));
            }
        }
    }

    let mut best = f64::INFINITY;
    let mut best_ab = None;
    for (a, b) in candidates {
        consider(params, a, b, &mut best, &mut best_ab);
    }

    for _ in 0..refinements {
        let Some((a0, b0)) = best_ab else { break };
        let db = params.m / resolution as f64 * 2.0;
        let b_lo = (b0 - db).max(0.0);
        let b_hi = (b0 + db).min(params.m);
        // Around the incumbent, a uniform local grid in both variables.
        let mut local = Vec::new();
        for bi in 0..=resolution {
            let b = b_lo + (b_hi - b_lo) * bi as f64 / resolution as f64;
            let (a_lo, a_hi) = params.a_interval(b);
            if a_lo >= a_hi {
                continue;
            }
            let da = (a_hi - a_lo) / resolution as f64 * 2.0;
            let a_center = a0.clamp(a_lo, a_hi);
            let a_from = (a_center - da).max(a_lo);
            let a_to = (a_center + da).min(a_hi);
            for ai in 0..=resolution {
                local.push((a_from + (a_to - a_from) * ai as f64 / resolution as f64, b));
            }
        }
        for (a, b) in local {
            consider(params, a, b, &mut best, &mut best_ab);
        }
    }

    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Constraint(
            "no feasible (a, b) found in the C2 search region".into(),
        ))
    }
}

/// The recipe value at m = k = j = 1, u = 0 with a = 1/(pq), b = 1/p,
/// which the reflection formula collapses to π/sin(π/p).
pub fn c2_special_case(p: f64) -> Result<f64> {
    let params = C2Params::new(p, 1.0, 1.0, 1.0, 0.0)?;
    let q = params.conjugate();
    c2_constant(
        &params,
        C2Mode::Fixed {
            a: 1.0 / (p * q),
            b: 1.0 / p,
        },
    )
}

/// C₃(s, n-k, j-k, u) = Γ(n+1-k)Γ(n+2-k)/Γ((n+2-k)/2)² · C₂(s, n-k+1, n-k+1, j-k, u).
pub fn c3_constant(s: f64, n_minus_k: u32, j_minus_k: f64, u: f64) -> Result<f64> {
    c3_constant_with(s, n_minus_k, j_minus_k, u, C2Mode::default())
}

pub fn c3_constant_with(
    s: f64,
    n_minus_k: u32,
    j_minus_k: f64,
    u: f64,
    mode: C2Mode,
) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("C3 needs 1 < s < inf, got {s}")));
    }
    let d = n_minus_k as f64;
    if !(u > 1.0 - (d + 1.0) * s && u < 1.0) {
        return Err(Error::Domain(format!(
            "C3 needs 1 - (n-k+1) s = {} < u < 1, got {u}",
            1.0 - (d + 1.0) * s
        )));
    }
    let prefactor = derivative_gamma_factor(n_minus_k, 0);
    let params = C2Params::new(s, d + 1.0, d + 1.0, j_minus_k, u)?;
    Ok(prefactor * c2_constant(&params, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn kernel_mean_p2_is_exact() {
        let v = lemma1_closed_form(2.0, 0.6).unwrap();
        assert!((v - 1.0 / (1.0 - 0.36)).abs() < 1e-13, "got {v}");
        assert_eq!(lemma1_closed_form(3.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn kernel_mean_matches_quadrature_oracle() {
        for &p in &[1.5, 2.0, 3.0, 4.0, 6.0] {
            for &r in &[0.1, 0.5, 0.95] {
                let closed = lemma1_closed_form(p, r).unwrap();
                let quad = lemma1_quadrature(p, r, 4096);
                assert!(
                    ((closed - quad) / quad).abs() < 1e-9,
                    "p = {p}, r = {r}: closed {closed} vs quadrature {quad}"
                );
            }
        }
    }

    #[test]
    fn kernel_mean_p4_known_form() {
        // For p = 4 the mean is (1 + r^2) / (1 - r^2)^3.
        let r: f64 = 0.5;
        let v = lemma1_closed_form(4.0, r).unwrap();
        let known = (1.0 + r * r) / (1.0 - r * r).powi(3);
        assert!((v - known).abs() < 1e-12 * known);
    }

    #[test]
    fn sharp_constant_values() {
        assert!((lemma1_sharp_constant(4.0).unwrap() - 2.0).abs() < 1e-13);
        assert!((lemma1_sharp_constant(2.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((lemma1_sharp_constant(3.0).unwrap() - 4.0 / PI).abs() < 1e-13);
    }

    #[test]
    fn sharp_constant_is_the_ratio_limit() {
        // The ratio at x = 1 - 1e-6 sits within 2% of the constant for p >= 2.
        for &p in &[2.0, 3.0, 4.0] {
            let limit = lemma1_sharp_constant(p).unwrap();
            let ratio = lemma1_ratio(p, 1.0 - 1e-6).unwrap();
            assert!(ratio <= limit * (1.0 + 1e-12), "p = {p}: {ratio} > {limit}");
            assert!(
                (limit - ratio) / limit < 0.02,
                "p = {p}: ratio {ratio} too far from {limit}"
            );
        }
    }

    #[test]
    fn c1_closed_form_cases() {
        // (s, m, k) = (1/2, 1, 1): Γ(1/2)Γ(1/2)/Γ(1) = π.
        let (v, branch) = c1_constant_detailed(0.5, 1.0, 1.0).unwrap();
        assert_eq!(branch, Branch::ClosedForm);
        assert!((v - PI).abs() < 1e-12, "got {v}");
        // (s, m, k) = (0, 2, 0): Γ(1)Γ(1)/Γ(2) = 1.
        let v = c1_constant(0.0, 2.0, 0.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn c1_bound_property_spot_check() {
        // Integral oracle: I(x) <= C1 (1-x)^(1-s-m) across a small x grid.
        let (s, m, k) = (0.5, 1.0, 1.0);
        let c1 = c1_constant(s, m, k).unwrap();
        for i in 0..10 {
            let x = i as f64 / 10.0;
            let integral = quad::tanh_sinh_01(
                |y, omy| omy.powf(-s) * (1.0 - x * y).powf(-m) * y.powf(k),
                1e-11,
            )
            .value;
            let envelope = c1 * (1.0 - x).powf(1.0 - s - m);
            assert!(
                integral <= envelope * (1.0 + 1e-9),
                "x = {x}: {integral} > {envelope}"
            );
        }
    }

    #[test]
    fn c1_grid_branch_still_bounds() {
        // Force the grid branch with 2 + k <= s + m.
        let (s, m, k) = (0.6, 2.5, 0.0);
        let (c1, branch) = c1_constant_detailed(s, m, k).unwrap();
        assert_eq!(branch, Branch::GridMaximum);
        for i in 0..8 {
            let x = i as f64 / 8.0;
            let integral = quad::tanh_sinh_01(
                |y, omy| omy.powf(-s) * (1.0 - x * y).powf(-m) * y.powf(k),
                1e-11,
            )
            .value;
            let envelope = c1 * (1.0 - x).powf(1.0 - s - m);
            assert!(
                integral <= envelope * (1.0 + 1e-8),
                "x = {x}: {integral} > {envelope}"
            );
        }
    }

    #[test]
    fn c2_recipe_reproduces_reflection_value() {
        for &p in &[1.5, 2.0, 4.0] {
            let v = c2_special_case(p).unwrap();
            let expected = PI / (PI / p).sin();
            assert!(
                ((v - expected) / expected).abs() < 1e-10,
                "p = {p}: {v} vs {expected}"
            );
        }
    }

    #[test]
    fn c2_grid_search_does_not_exceed_recipe() {
        let params = C2Params::new(2.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let grid = c2_constant(&params, C2Mode::default()).unwrap();
        assert!(grid <= PI * (1.0 + 1e-6), "grid {grid} vs {PI}");
    }

    #[test]
    fn c2_feasibility_errors_name_the_inequality() {
        let params = C2Params::new(2.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(params.check_feasible(0.25, 0.5).is_ok());
        let err = params.check_feasible(0.6, 0.5).unwrap_err();
        assert!(err.to_string().contains("feasibility"), "got {err}");
        assert!(c2_constant(
            &params,
            C2Mode::Fixed { a: 0.9, b: 0.5 }
        )
        .is_err());
    }

    #[test]
    fn c3_composition() {
        // d = 0 prefactor is 1, so C3(s, 0, 1, 0) <= pi/sin(pi/s) via the recipe.
        let v = c3_constant(2.0, 0, 1.0, 0.0).unwrap();
        assert!(v <= PI * (1.0 + 1e-9), "got {v}");
        assert!(v >= PI * (1.0 - 1e-6), "got {v}");
        assert_eq!(derivative_gamma_factor(3, 3), 1.0);
        // d = 2: Γ(3)Γ(4)/Γ(2)^2 = 12, and d = 1: Γ(2)Γ(3)/Γ(3/2)^2 = 8/pi.
        let d2 = derivative_gamma_factor(2, 0);
        assert!((d2 - 12.0).abs() < 1e-12, "{d2}");
        let d1 = derivative_gamma_factor(1, 0);
        assert!((d1 - 8.0 / PI).abs() < 1e-13, "{d1}");
    }
}
