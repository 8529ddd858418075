//! Real-argument gamma and Gauss hypergeometric functions.
//!
//! Everything downstream (sharp constants, kernel means, projection bounds)
//! reduces to `ln Γ` and to ₂F₁ on the real interval [0, 1], so this module
//! carries the full set of identities used elsewhere: the Euler integral
//! representation, the Euler transformation, Kummer's quadratic
//! transformation, and the Gauss value at the argument 1.

use crate::error::{Error, Result};
use crate::quad;

/// Tolerance for treating a float as an integer when testing for poles.
const INTEGER_TOL: f64 = 1e-12;
/// Hard cap on hypergeometric series length.
const MAX_TERMS: usize = 1_000_000;

// Lanczos coefficients (g = 10.900511), the same set statrs uses.
const LANCZOS_R: f64 = 10.900511;
const LANCZOS_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452223455184457816472122518527279025978;
const LN_PI: f64 = 1.1447298858494001741434273513530587116472948129153;

fn lanczos_sum(x: f64) -> f64 {
    // Valid for x >= 0.5; callers reflect first.
    let mut s = LANCZOS_DK[0];
    for (i, dk) in LANCZOS_DK.iter().enumerate().skip(1) {
        s += dk / (x + i as f64 - 1.0);
    }
    s
}

/// sin(pi x) with argument reduction, accurate for large |x|.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r is in [-1, 1] and x = 2k + r, so sin(pi x) = sin(pi r).
    (std::f64::consts::PI * r).sin()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < INTEGER_TOL && x.round() <= 0.0
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        let s = {
            let mut s = LANCZOS_DK[0];
            for (i, dk) in LANCZOS_DK.iter().enumerate().skip(1) {
                s += dk / (i as f64 - x);
            }
            s
        };
        Ok(LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).ln())
    } else {
        Ok(lanczos_sum(x).ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln())
    }
}

/// (ln |Γ(x)|, sign of Γ(x)) for any real x away from the poles.
pub fn log_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((log_gamma(x)?, 1.0));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    // Reflection: Γ(x) Γ(1-x) = pi / sin(pi x), and 1 - x > 1 here.
    let s = sin_pi(x);
    let ln_abs = LN_PI - s.abs().ln() - log_gamma(1.0 - x)?;
    Ok((ln_abs, s.signum()))
}

/// Γ(x) itself, sign included. Overflows to ±inf past x ≈ 171.6.
pub fn gamma(x: f64) -> Result<f64> {
    let (ln_abs, sign) = log_gamma_signed(x)?;
    Ok(sign * ln_abs.exp())
}

/// Parameters of ₂F₁(a, b; c; x) restricted to the real slice this crate uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
}

impl HypergeomArgs {
    /// Validates that c avoids the poles and x lies in [0, 1], with x = 1
    /// allowed only when c - a - b > 0.
    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::Domain(format!(
                "c = {c} is a non-positive integer (within {INTEGER_TOL:e})"
            )));
        }
        if !(0.0..1.0).contains(&x) {
            if x == 1.0 {
                if c - a - b <= 0.0 {
                    return Err(Error::Domain(format!(
                        "x = 1 requires c - a - b > 0, got {}",
                        c - a - b
                    )));
                }
            } else {
                return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
            }
        }
        Ok(Self { a, b, c, x })
    }

    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }
}

/// Number of terms after which the series terminates exactly, if it does.
fn terminating_length(a: f64, b: f64) -> Option<usize> {
    let len = |t: f64| -> Option<usize> {
        if t <= 0.0 && t == t.round() && t >= -1e6 {
            Some((-t) as usize + 1)
        } else {
            None
        }
    };
    match (len(a), len(b)) {
        (Some(p), Some(q)) => Some(p.min(q)),
        (Some(p), None) => Some(p),
        (None, Some(q)) => Some(q),
        (None, None) => None,
    }
}

/// Plain power series for ₂F₁ with the geometric tail-bound stopping rule.
pub(crate) fn gauss_series(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut prev_ratio = f64::INFINITY;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let factor = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        term *= factor;
        if term == 0.0 {
            return Ok(sum); // series terminated exactly
        }
        sum += term;
        let ratio = factor.abs();
        if ratio < 1.0 && prev_ratio < 1.0 {
            let tail = term.abs() / (1.0 - ratio);
            if tail < tol * sum.abs().max(1.0) {
                return Ok(sum);
            }
        }
        prev_ratio = ratio;
    }
    Err(Error::Convergence {
        terms: MAX_TERMS,
        last_term: term,
    })
}

/// ₂F₁(a, b; c; x) for the validated argument range.
///
/// Near x = 1 with c - a - b > 0 the direct series and the Euler-transformed
/// series trade places in cost (the direct tail decays like N^{-(c-a-b)}, the
/// transformed one needs ~1/(1-x) terms), so the cheaper route is estimated
/// and taken.
pub fn hyp2f1(args: HypergeomArgs, tol: f64) -> Result<f64> {
    let HypergeomArgs { a, b, c, x } = args;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive: {tol}")));
    }
    if x == 1.0 {
        return hyp2f1_at_one(a, b, c);
    }
    let excess = c - a - b;
    if x > 0.9 && excess > 0.0 {
        let direct_cost = match terminating_length(a, b) {
            Some(len) => len as f64,
            None => tol.powf(-1.0 / excess).min(1e18),
        };
        let transformed_cost = 40.0 / (1.0 - x);
        if transformed_cost < direct_cost {
            let transformed = gauss_series(c - a, c - b, c, x, tol)?;
            return Ok((1.0 - x).powf(excess) * transformed);
        }
    }
    gauss_series(a, b, c, x, tol)
}

/// Gauss's value ₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)).
pub fn hyp2f1_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("c = {c} is a non-positive integer")));
    }
    let excess = c - a - b;
    if excess <= 0.0 {
        return Err(Error::Domain(format!(
            "value at 1 requires c - a - b > 0, got {excess}"
        )));
    }
    let (ln_c, sign_c) = log_gamma_signed(c)?;
    let (ln_e, sign_e) = log_gamma_signed(excess)?;
    // Poles of the denominator gammas are reported, not silently sent to 0.
    let (ln_ca, sign_ca) = log_gamma_signed(c - a)?;
    let (ln_cb, sign_cb) = log_gamma_signed(c - b)?;
    let sign = sign_c * sign_e * sign_ca * sign_cb;
    Ok(sign * (ln_c + ln_e - ln_ca - ln_cb).exp())
}

/// Euler integral representation of ₂F₁, evaluated by tanh-sinh quadrature.
///
/// Independent of the series route; used as its oracle. Requires c > b > 0.
pub fn euler_integral_2f1(args: HypergeomArgs) -> Result<f64> {
    let HypergeomArgs { a, b, c, x } = args;
    if !(c > b && b > 0.0) {
        return Err(Error::Domain(format!(
            "Euler integral requires c > b > 0, got b = {b}, c = {c}"
        )));
    }
    if x == 1.0 && c - a - b <= 0.0 {
        return Err(Error::Domain(
            "Euler integral at x = 1 requires c - a - b > 0".into(),
        ));
    }
    let prefactor = (log_gamma(c)? - log_gamma(b)? - log_gamma(c - b)?).exp();
    let integral = quad::tanh_sinh_01(
        |t, one_minus_t| {
            // 1 - x t written to stay accurate as t -> 1.
            let one_minus_xt = (1.0 - x) + x * one_minus_t;
            t.powf(b - 1.0) * one_minus_t.powf(c - b - 1.0) * one_minus_xt.powf(-a)
        },
        1e-12,
    );
    Ok(prefactor * integral.value)
}

/// Euler's transformation: (1-x)^{c-a-b} ₂F₁(c-a, c-b; c; x).
///
/// Contract: equals ₂F₁(a, b; c; x) within combined tolerances.
pub fn euler_transform(args: HypergeomArgs, tol: f64) -> Result<f64> {
    let HypergeomArgs { a, b, c, x } = args;
    if x == 1.0 {
        return hyp2f1_at_one(a, b, c);
    }
    let transformed = gauss_series(c - a, c - b, c, x, tol)?;
    Ok((1.0 - x).powf(c - a - b) * transformed)
}

/// Both sides of Kummer's quadratic transformation
/// ₂F₁(a, b; 2b; 4z/(1+z)²) = (1+z)^{2a} ₂F₁(a, a+1/2-b; b+1/2; z²),
/// each evaluated independently.
pub fn kummer_quadratic(a: f64, b: f64, z: f64, tol: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!(
            "Kummer transformation evaluated on z in [0, 1), got {z}"
        )));
    }
    if is_nonpositive_integer(2.0 * b) || is_nonpositive_integer(b + 0.5) {
        return Err(Error::Domain(format!(
            "parameters 2b = {} and b + 1/2 = {} must avoid non-positive integers",
            2.0 * b,
            b + 0.5
        )));
    }
    let w = 4.0 * z / ((1.0 + z) * (1.0 + z));
    if w >= 1.0 {
        return Err(Error::Convergence {
            terms: 0,
            last_term: w,
        });
    }
    let lhs = hyp2f1(HypergeomArgs::new(a, b, 2.0 * b, w)?, tol)?;
    let rhs = (1.0 + z).powf(2.0 * a) * hyp2f1(HypergeomArgs::new(a, a + 0.5 - b, b + 0.5, z * z)?, tol)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn log_gamma_factorials() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(5.0).unwrap() - 24.0f64.ln()).abs() < 1e-14);
        assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_half_matches_integral_oracle() {
        // Γ(1/2) = ∫_0^∞ t^{-1/2} e^{-t} dt, split at t = 1; the tail beyond
        // t = 60 is below 1e-27.
        let head = quad::tanh_sinh_01(|t, _| t.powf(-0.5) * (-t).exp(), 1e-13);
        let tail = quad::tanh_sinh(|t, _, _| t.powf(-0.5) * (-t).exp(), 1.0, 60.0, 1e-13);
        let oracle = head.value + tail.value;
        let computed = log_gamma(0.5).unwrap().exp();
        assert!(
            (computed - oracle).abs() / oracle < 1e-12,
            "Γ(1/2): {computed} vs oracle {oracle}"
        );
    }

    #[test]
    fn log_gamma_accuracy_grid() {
        // Relative error of exp(ln Γ) against the recurrence Γ(x+1) = x Γ(x),
        // walked down from a reference point.
        for &x in &[1e-3, 0.02, 0.3, 1.7, 4.5, 11.25, 33.0, 50.0] {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!(
                (lhs - rhs).abs() < 1e-13 * lhs.abs().max(1.0),
                "recurrence failed at {x}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn reflection_formula_grid() {
        // Γ(t) Γ(1-t) = pi / sin(pi t); anchors the pi/sin(pi/p) constants.
        let mut t = 0.05;
        while t < 1.0 {
            let lhs = (log_gamma(t).unwrap() + log_gamma(1.0 - t).unwrap()).exp();
            let rhs = PI / (PI * t).sin();
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-12,
                "reflection at t = {t}: {lhs} vs {rhs}"
            );
            t += 0.05;
        }
    }

    #[test]
    fn signed_gamma_negative_arguments() {
        // Γ(-0.5) = -2 sqrt(pi), Γ(-1.5) = 4 sqrt(pi) / 3.
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((gamma(-1.5).unwrap() - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
        assert!(matches!(log_gamma_signed(-3.0), Err(Error::Pole(_))));
    }

    #[test]
    fn hyp2f1_geometric_series() {
        // ₂F₁(1, 1; 1; x) = 1/(1-x)
        let v = hyp2f1(HypergeomArgs::new(1.0, 1.0, 1.0, 0.5).unwrap(), 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn hyp2f1_at_zero_is_one() {
        let v = hyp2f1(HypergeomArgs::new(0.3, -2.2, 1.7, 0.0).unwrap(), 1e-13).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn hyp2f1_gauss_value() {
        // ₂F₁(1/2, 1/2; 2; 1) = Γ(2)Γ(1) / Γ(3/2)^2 = 4/pi
        let v = hyp2f1(HypergeomArgs::new(0.5, 0.5, 2.0, 1.0).unwrap(), 1e-13).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-13, "got {v}");
        let w = hyp2f1_at_one(0.5, 0.5, 2.0).unwrap();
        assert!((w - 4.0 / PI).abs() < 1e-13);
    }

    #[test]
    fn hyp2f1_at_one_trivial_a_zero() {
        let v = hyp2f1_at_one(0.0, 0.7, 1.9).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hyp2f1_at_one_quarter_quarter_one() {
        // Γ(1)Γ(1/2)/Γ(3/4)^2, cross-checked by the Euler integral at x = 1:
        // the two Γ(1/4) factors cancel and only the Beta integral remains.
        let expected = (log_gamma(0.5).unwrap() - 2.0 * log_gamma(0.75).unwrap()).exp();
        let beta = quad::tanh_sinh_01(|t, omt| t.powf(-0.75) * omt.powf(-0.5), 1e-13);
        let prefactor = (log_gamma(1.0).unwrap()
            - log_gamma(0.25).unwrap()
            - log_gamma(0.75).unwrap())
        .exp();
        let oracle = prefactor * beta.value;
        let v = hyp2f1_at_one(0.25, 0.25, 1.0).unwrap();
        assert!((v - expected).abs() < 1e-13);
        assert!(
            ((v - oracle) / oracle).abs() < 1e-10,
            "value {v} vs integral oracle {oracle}"
        );
    }

    #[test]
    fn hyp2f1_at_one_rejects_nonpositive_excess() {
        assert!(hyp2f1_at_one(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn euler_integral_log_case() {
        // ₂F₁(1, 1; 2; x) = -ln(1-x)/x
        let v = euler_integral_2f1(HypergeomArgs::new(1.0, 1.0, 2.0, 0.5).unwrap()).unwrap();
        let expected = -(0.5f64.ln()) / 0.5;
        assert!((v - expected).abs() < 1e-11, "got {v}, want {expected}");
    }

    #[test]
    fn euler_integral_at_zero_is_beta_normalized() {
        let v = euler_integral_2f1(HypergeomArgs::new(1.3, 0.7, 2.4, 0.0).unwrap()).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn euler_integral_agrees_with_series() {
        let args = HypergeomArgs::new(2.0, 1.0, 3.0, 0.25).unwrap();
        let series = hyp2f1(args, 1e-13).unwrap();
        let integral = euler_integral_2f1(args).unwrap();
        assert!(
            ((series - integral) / series).abs() < 1e-10,
            "series {series} vs integral {integral}"
        );
    }

    #[test]
    fn euler_transform_identity_cases() {
        // Transform of the geometric case keeps 1/(1-x).
        let v = euler_transform(HypergeomArgs::new(1.0, 1.0, 1.0, 0.3).unwrap(), 1e-13).unwrap();
        assert!((v - 1.0 / 0.7).abs() < 1e-12);

        let args = HypergeomArgs::new(0.7, 0.2, 1.5, 0.9).unwrap();
        let direct = gauss_series(0.7, 0.2, 1.5, 0.9, 1e-13).unwrap();
        let transformed = euler_transform(args, 1e-13).unwrap();
        assert!(
            ((direct - transformed) / direct).abs() < 1e-10,
            "{direct} vs {transformed}"
        );

        let at_zero = euler_transform(HypergeomArgs::new(1.1, -0.4, 2.0, 0.0).unwrap(), 1e-13).unwrap();
        assert_eq!(at_zero, 1.0);
    }

    #[test]
    fn kummer_transformation_cases() {
        let (l, r) = kummer_quadratic(0.8, 1.3, 0.0, 1e-13).unwrap();
        assert_eq!((l, r), (1.0, 1.0));

        let (l, r) = kummer_quadratic(1.0, 0.5, 0.4, 1e-13).unwrap();
        assert!(((l - r) / l).abs() < 1e-10, "lhs {l} rhs {r}");

        // The step used inside the closed-form kernel-mean derivation:
        // (a, b) = (p/2, 1/2) at z = r.
        let p = 3.0;
        let (l, r) = kummer_quadratic(p / 2.0, 0.5, 0.35, 1e-13).unwrap();
        assert!(((l - r) / l).abs() < 1e-10, "lhs {l} rhs {r}");
    }

    #[test]
    fn near_one_evaluation_picks_feasible_route() {
        // c - a - b = 2, x extremely close to 1: the direct series is the
        // only affordable route and must still meet a coarse tolerance.
        let args = HypergeomArgs::new(-0.5, -0.5, 1.0, 1.0 - 1e-6).unwrap();
        let v = hyp2f1(args, 1e-9).unwrap();
        let limit = hyp2f1_at_one(-0.5, -0.5, 1.0).unwrap();
        assert!(v < limit);
        assert!((v - limit).abs() / limit < 0.01, "v {v} limit {limit}");
    }

    #[test]
    fn monotone_approach_to_gauss_value() {
        // Positive-term series: values increase in x toward the x = 1 value.
        let (a, b) = (0.6, 0.9);
        let c = a + b + 2.0;
        let at_one = hyp2f1_at_one(a, b, c).unwrap();
        let mut last = 0.0;
        for &x in &[1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6, 1.0 - 1e-7] {
            let v = hyp2f1(HypergeomArgs::new(a, b, c, x).unwrap(), 1e-9).unwrap();
            assert!(v > last, "not increasing at x = {x}");
            assert!(v <= at_one * (1.0 + 1e-9), "overshoot at x = {x}");
            last = v;
        }
    }

    #[test]
    fn args_validation() {
        assert!(HypergeomArgs::new(1.0, 1.0, 0.0, 0.5).is_err());
        assert!(HypergeomArgs::new(1.0, 1.0, -3.0 + 1e-13, 0.5).is_err());
        assert!(HypergeomArgs::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(HypergeomArgs::new(1.0, 1.0, 1.0, -0.2).is_err());
        assert!(HypergeomArgs::new(0.5, 0.5, 2.0, 1.0).is_ok());
    }
}
