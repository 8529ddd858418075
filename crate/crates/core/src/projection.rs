//! The Bergman projection and its derivatives, computed two independent ways.
//!
//! `project_fourier` uses the mode-wise radial formula: the z^n Taylor
//! coefficient of P f is 2 (n+1) ∫_0^1 a_n(ρ) ρ^{n+1} dρ. `project_quadrature`
//! integrates the reproducing kernel directly over the disc and serves as the
//! oracle for the spectral route. `prn_operator` is the auxiliary boundary
//! operator behind the derivative bounds; `derivative_via_prn` stitches it
//! back into d^n/dz^n (P f) through the layered radial representation.

use crate::disc::{
    AnalyticFunction, CircleFunction, RadialFourierFunction, RadialProfile,
    TrigPoly,
};
use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64 as C64;

/// The normalization constant K in coefficient_n = K (n+1) ∫ a_n ρ^{n+1} dρ.
///
/// K = 2 is forced by P(1) = 1: with a_0 ≡ 1 the radial integral is 1/2 and
/// the (n+1) factor is 1. The kernel-quadrature oracle pins the same value.
pub const FOURIER_NORMALIZATION: f64 = 2.0;

/// Radius beyond which the kernel quadrature is considered ill-conditioned.
pub const MAX_KERNEL_RADIUS: f64 = 0.95;

/// Output of the spectral projection, with its audit trail.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    pub analytic: AnalyticFunction,
    pub normalization_constant_used: f64,
    /// (mode n, ∫_0^1 a_n(ρ) ρ^{n+1} dρ) for each non-negative input mode.
    pub radial_integrals: Vec<(i64, C64)>,
}

/// ∫_0^1 a(ρ) ρ^{n+1} dρ for one profile; exact for the piecewise-constant
/// and polynomial kinds, composite Gauss for the rest.
fn profile_moment(profile: &RadialProfile, n: i64) -> C64 {
    let power = n + 1;
    match profile {
        RadialProfile::PiecewiseConstant { edges, values } => {
            // exp(p ln e) keeps relative accuracy for the huge exponents the
            // deep counterexample annuli produce; powi degrades linearly in p.
            let pw = |e: f64| {
                if e <= 0.0 {
                    0.0
                } else if power < 64 {
                    e.powi(power as i32 + 1)
                } else {
                    ((power as f64 + 1.0) * e.ln()).exp()
                }
            };
            let mut sum = C64::new(0.0, 0.0);
            for (i, v) in values.iter().enumerate() {
                sum += v * ((pw(edges[i + 1]) - pw(edges[i])) / (power as f64 + 1.0));
            }
            sum
        }
        RadialProfile::Polynomial { terms } => terms
            .iter()
            .map(|&(k, c)| c / (power as f64 + 1.0 + k as f64))
            .sum(),
        _ => {
            let breaks = profile.breakpoints();
            let re = quad::gauss_composite(
                &|r: f64| profile.eval(r).re * r.powi(power as i32),
                0.0,
                1.0,
                &breaks,
                32,
            );
            let im = quad::gauss_composite(
                &|r: f64| profile.eval(r).im * r.powi(power as i32),
                0.0,
                1.0,
                &breaks,
                32,
            );
            C64::new(re.value, im.value)
        }
    }
}

/// Bergman projection through the radial-Fourier formula.
///
/// Negative modes are annihilated; mode n >= 0 feeds only the z^n coefficient.
pub fn project_fourier(f: &RadialFourierFunction) -> Result<ProjectionResult> {
    let max_mode = f.modes().iter().map(|m| m.n).max().unwrap_or(-1);
    let degree = max_mode.max(0) as usize;
    let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
    let mut radial_integrals = Vec::new();
    for mode in f.modes() {
        if mode.n < 0 {
            continue;
        }
        let moment = profile_moment(&mode.profile, mode.n);
        radial_integrals.push((mode.n, moment));
        coeffs[mode.n as usize] =
            FOURIER_NORMALIZATION * (mode.n as f64 + 1.0) * moment;
    }
    Ok(ProjectionResult {
        analytic: AnalyticFunction::new(coeffs),
        normalization_constant_used: FOURIER_NORMALIZATION,
        radial_integrals,
    })
}

/// (1/π) ∬_D f(w) conj(w)^n / (1 - conj(w) z)^{2+n} dA(w) by tensor-product
/// quadrature: trapezoid in the angle, Gauss panels split at profile
/// breakpoints in the radius.
///
/// The angular count is sized so the aliased kernel modes |z|^(M - band)
/// sit far below the oracle tolerances.
fn kernel_integral(f: &RadialFourierFunction, z: C64, n: u32) -> Result<C64> {
    if z.norm() > MAX_KERNEL_RADIUS {
        return Err(Error::Domain(format!(
            "kernel quadrature restricted to |z| <= {MAX_KERNEL_RADIUS}, got {}",
            z.norm()
        )));
    }
    let band = f.band();
    let kernel_modes = (-27.6 / z.norm().max(0.5).ln()).ceil() as usize; // |z|^k < 1e-12
    let m = (4 * band + 4).max(2 * band + kernel_modes + 8);
    let mut breaks = f.radial_breakpoints();
    breaks.push(0.5); // keep panels short even for smooth profiles

    let radial = |rho: f64| -> C64 {
        let circle = f.circle_restriction(rho);
        let samples = circle.sample(m);
        let mut sum = C64::new(0.0, 0.0);
        for (j, &value) in samples.iter().enumerate() {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let wbar = C64::from_polar(rho, -phi);
            let denom = (C64::new(1.0, 0.0) - wbar * z).powi(-(2 + n as i32));
            sum += value * wbar.powu(n) * denom;
        }
        sum * (2.0 * std::f64::consts::PI / m as f64) * rho
    };

    let integral = gauss_composite_c64(&radial, 0.0, 1.0, &breaks, 24);
    Ok(integral / std::f64::consts::PI)
}

/// Complex-valued composite Gauss rule over [a, b] split at breakpoints.
fn gauss_composite_c64<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    interior_breaks: &[f64],
    n: usize,
) -> C64 {
    let mut edges = vec![a];
    for &t in interior_breaks {
        if t > a && t < b {
            edges.push(t);
        }
    }
    edges.push(b);
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());
    edges.dedup();

    let (nodes, weights) = quad::gauss_legendre(n);
    let mut sum = C64::new(0.0, 0.0);
    for pair in edges.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        for (x, w) in nodes.iter().zip(&weights) {
            sum += f(mid + half * x) * (w * half);
        }
    }
    sum
}

/// Direct kernel evaluation of (P f)(z); the oracle for `project_fourier`.
pub fn project_quadrature(f: &RadialFourierFunction, z: C64) -> Result<C64> {
    kernel_integral(f, z, 0)
}

/// d^n/dz^n (P f)(z) through the differentiated kernel.
pub fn bp_derivative(f: &RadialFourierFunction, n: u32, z: C64) -> Result<C64> {
    let mut factorial = 1.0;
    for i in 2..=(n as u64 + 1) {
        factorial *= i as f64;
    }
    Ok(factorial * kernel_integral(f, z, n)?)
}

/// Rising factorial (k+1)(k+2)...(k+n+1), the mode weight of P_r^{(n)}.
fn kernel_mode_weight(k: u64, n: u32) -> f64 {
    let mut w = 1.0;
    for i in 1..=(n as u64 + 1) {
        w *= (k + i) as f64;
    }
    w
}

/// The boundary operator P_r^{(n)} applied to a circle function.
///
/// In coefficient form the kernel acts mode-wise and exactly:
/// output mode k >= 0 is (k+1)...(k+n+1) r^{n+k} a_{n+k}. Sample input falls
/// back to the discrete convolution of the defining integral.
pub fn prn_operator(f: &CircleFunction, r: f64, n: u32) -> Result<CircleFunction> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("P_r^(n) needs r in [0, 1), got {r}")));
    }
    match f {
        CircleFunction::Poly(poly) => {
            let band = poly.band() as i64;
            let out_band = (band - n as i64).max(0) as usize;
            let mut out = TrigPoly::zero(out_band);
            for k in 0..=(band - n as i64).max(-1) {
                let a = poly.coeff(k + n as i64);
                let weight = kernel_mode_weight(k as u64, n) * r.powi(n as i32 + k as i32);
                out.set_coeff(k, a * weight);
            }
            Ok(CircleFunction::Poly(out))
        }
        CircleFunction::Samples(values) => Ok(CircleFunction::Samples(prn_convolution(
            values, r, n,
        ))),
    }
}

/// Direct discrete convolution of the P_r^{(n)} kernel over the sample grid;
/// independent of the coefficient route and used as its oracle.
pub fn prn_convolution(values: &[C64], r: f64, n: u32) -> Vec<C64> {
    let m = values.len();
    let mut factorial = 1.0;
    for i in 2..=(n as u64 + 1) {
        factorial *= i as f64;
    }
    (0..m)
        .map(|l| {
            let theta = 2.0 * std::f64::consts::PI * l as f64 / m as f64;
            let mut sum = C64::new(0.0, 0.0);
            for (j, &value) in values.iter().enumerate() {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let kernel = (C64::new(1.0, 0.0)
                    - C64::from_polar(r, theta - phi))
                .powi(-(2 + n as i32));
                sum += value * C64::from_polar(r.powi(n as i32), -(n as f64) * phi) * kernel;
            }
            sum * factorial / m as f64
        })
        .collect()
}

/// d^n/dz^n (P f)(z) through the layered representation
/// 2 ∫_0^1 ρ r^{-n} P_{rρ}^{(n)} f_ρ(e^{iθ}) dρ.
///
/// The r^{-n} prefactor cancels the r^n inside the operator mode weights, so
/// the two are combined analytically and z = 0 costs nothing.
pub fn derivative_via_prn(f: &RadialFourierFunction, n: u32, z: C64) -> Result<C64> {
    let r = z.norm();
    if r > MAX_KERNEL_RADIUS {
        return Err(Error::Domain(format!(
            "layered derivative restricted to |z| <= {MAX_KERNEL_RADIUS}, got {r}"
        )));
    }
    let theta = if r == 0.0 { 0.0 } else { z.arg() };
    let breaks = f.radial_breakpoints();

    let layered = |rho: f64| -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for mode in f.modes() {
            if mode.n < n as i64 {
                continue;
            }
            let k = (mode.n - n as i64) as u64;
            let weight = kernel_mode_weight(k, n)
                * r.powi(k as i32)
                * rho.powi(mode.n as i32 + 1);
            sum += mode.profile.eval(rho)
                * weight
                * C64::from_polar(1.0, k as f64 * theta);
        }
        sum
    };

    let re = quad::gauss_composite(&|rho| layered(rho).re, 0.0, 1.0, &breaks, 32);
    let im = quad::gauss_composite(&|rho| layered(rho).im, 0.0, 1.0, &breaks, 32);
    Ok(2.0 * C64::new(re.value, im.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::Mode;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn constant_one() -> RadialFourierFunction {
        RadialFourierFunction::new(vec![Mode {
            n: 0,
            profile: RadialProfile::Polynomial {
                terms: vec![(0, c(1.0, 0.0))],
            },
        }])
        .unwrap()
    }

    fn monomial(k: i64) -> RadialFourierFunction {
        // z^k as a disc function: mode k with profile r^k.
        RadialFourierFunction::new(vec![Mode {
            n: k,
            profile: RadialProfile::Polynomial {
                terms: vec![(k.unsigned_abs() as u32, c(1.0, 0.0))],
            },
        }])
        .unwrap()
    }

    fn annulus_mode() -> RadialFourierFunction {
        // chi_{[1/2, 1)}(r) e^{i theta}
        RadialFourierFunction::new(vec![Mode {
            n: 1,
            profile: RadialProfile::PiecewiseConstant {
                edges: vec![0.5, 1.0],
                values: vec![c(1.0, 0.0)],
            },
        }])
        .unwrap()
    }

    #[test]
    fn projection_fixes_constants() {
        let result = project_fourier(&constant_one()).unwrap();
        assert_eq!(result.normalization_constant_used, 2.0);
        assert!((result.analytic.coeffs[0] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_kills_conjugate_z() {
        // conj(z) has mode -1 with profile r; no non-negative modes survive.
        let f = RadialFourierFunction::new(vec![Mode {
            n: -1,
            profile: RadialProfile::Polynomial {
                terms: vec![(1, c(1.0, 0.0))],
            },
        }])
        .unwrap();
        let result = project_fourier(&f).unwrap();
        assert!(result.analytic.coeffs.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn projection_annulus_coefficient() {
        // 2 * 2 * int_{1/2}^1 r^2 dr = 4 * 7/24 = 7/6
        let result = project_fourier(&annulus_mode()).unwrap();
        assert!((result.analytic.coeffs[1] - c(7.0 / 6.0, 0.0)).norm() < 1e-15);
        // Audit invariant: coefficient = K (n+1) integral.
        let (n, moment) = result.radial_integrals[0];
        assert_eq!(n, 1);
        assert!(
            (result.analytic.coeffs[1] - moment * 2.0 * 2.0).norm() < 1e-15
        );
    }

    #[test]
    fn quadrature_fixes_constants_and_monomials() {
        let one = project_quadrature(&constant_one(), c(0.3, 0.0)).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-10, "got {one}");

        let z2 = project_quadrature(&monomial(2), c(0.5, 0.0)).unwrap();
        assert!((z2 - c(0.25, 0.0)).norm() < 1e-10, "got {z2}");
    }

    #[test]
    fn quadrature_agrees_with_fourier_on_annulus() {
        let f = annulus_mode();
        let z = c(0.2, 0.0);
        let spectral = project_fourier(&f).unwrap().analytic.eval(z);
        let direct = project_quadrature(&f, z).unwrap();
        assert!(
            (spectral - direct).norm() < 1e-8,
            "spectral {spectral} vs kernel {direct}"
        );
        assert!((direct - c(7.0 / 6.0 * 0.2, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn quadrature_rejects_outer_radius() {
        assert!(project_quadrature(&constant_one(), c(0.97, 0.0)).is_err());
    }

    #[test]
    fn idempotent_on_monomials() {
        for k in 0..=20 {
            let result = project_fourier(&monomial(k)).unwrap();
            for (j, coeff) in result.analytic.coeffs.iter().enumerate() {
                let expected = if j == k as usize { 1.0 } else { 0.0 };
                assert!(
                    (coeff - c(expected, 0.0)).norm() < 1e-10,
                    "P(z^{k}) coefficient {j} = {coeff}"
                );
            }
        }
    }

    #[test]
    fn projection_is_linear_and_mode_separated() {
        let f = annulus_mode();
        let g = monomial(3);
        let combined = RadialFourierFunction::new(vec![
            Mode {
                n: 1,
                profile: RadialProfile::PiecewiseConstant {
                    edges: vec![0.5, 1.0],
                    values: vec![c(2.0, 1.0)],
                },
            },
            Mode {
                n: 3,
                profile: RadialProfile::Polynomial {
                    terms: vec![(3, c(-0.5, 0.0))],
                },
            },
        ])
        .unwrap();
        let pf = project_fourier(&f).unwrap().analytic;
        let pg = project_fourier(&g).unwrap().analytic;
        let pc = project_fourier(&combined).unwrap().analytic;
        // alpha = 2 + i on mode 1, beta = -1/2 on mode 3.
        assert!((pc.coeffs[1] - pf.coeffs[1] * c(2.0, 1.0)).norm() < 1e-12);
        assert!((pc.coeffs[3] - pg.coeffs[3] * (-0.5)).norm() < 1e-12);
        assert!(pc.coeffs[0].norm() < 1e-15);
        assert!(pc.coeffs[2].norm() < 1e-15);
    }

    #[test]
    fn bp_derivative_basic_cases() {
        let zero = bp_derivative(&constant_one(), 1, c(0.4, 0.1)).unwrap();
        assert!(zero.norm() < 1e-10, "got {zero}");

        let d1 = bp_derivative(&monomial(3), 1, c(0.5, 0.0)).unwrap();
        assert!((d1 - c(0.75, 0.0)).norm() < 1e-9, "got {d1}");

        let at0 = bp_derivative(&annulus_mode(), 1, c(0.0, 0.0)).unwrap();
        assert!((at0 - c(7.0 / 6.0, 0.0)).norm() < 1e-9, "got {at0}");
    }

    #[test]
    fn bp_derivative_matches_finite_differences() {
        let f = annulus_mode();
        let z = c(0.3, 0.2);
        let h = 1e-4;
        let fd = (project_quadrature(&f, z + c(h, 0.0)).unwrap()
            - project_quadrature(&f, z - c(h, 0.0)).unwrap())
            / (2.0 * h);
        let exact = bp_derivative(&f, 1, z).unwrap();
        assert!((fd - exact).norm() < 1e-5, "fd {fd} vs kernel {exact}");
    }

    #[test]
    fn prn_multiplies_modes_by_kernel_weights() {
        // n = 0, f = e^{i m phi}: output (m+1) r^m e^{i m theta}.
        let r = 0.6;
        for m in 0..4i64 {
            let f = CircleFunction::Poly(TrigPoly::single_mode(m, c(1.0, 0.0)));
            let out = prn_operator(&f, r, 0).unwrap();
            if let CircleFunction::Poly(poly) = out {
                let expected = (m as f64 + 1.0) * r.powi(m as i32);
                assert!(
                    (poly.coeff(m) - c(expected, 0.0)).norm() < 1e-13,
                    "mode {m}"
                );
            } else {
                panic!("expected coefficient output");
            }
        }
    }

    #[test]
    fn prn_annihilates_unmatched_modes() {
        let f = CircleFunction::Poly(TrigPoly::single_mode(-1, c(1.0, 0.0)));
        if let CircleFunction::Poly(out) = prn_operator(&f, 0.5, 0).unwrap() {
            assert!((0..=out.band() as i64).all(|k| out.coeff(k).norm() < 1e-15));
        }
        // n = 1 on a constant: the twisted mode -1 has no match.
        let one = CircleFunction::Poly(TrigPoly::single_mode(0, c(1.0, 0.0)));
        if let CircleFunction::Poly(out) = prn_operator(&one, 0.5, 1).unwrap() {
            assert!((0..=out.band() as i64).all(|k| out.coeff(k).norm() < 1e-15));
        }
    }

    #[test]
    fn prn_coefficient_route_matches_convolution() {
        let mut poly = TrigPoly::zero(3);
        poly.set_coeff(-2, c(0.2, 0.1));
        poly.set_coeff(0, c(1.0, 0.0));
        poly.set_coeff(2, c(-0.4, 0.7));
        poly.set_coeff(3, c(0.3, 0.0));
        for &n in &[0u32, 1, 2] {
            let via_coeffs = match prn_operator(&CircleFunction::Poly(poly.clone()), 0.55, n).unwrap() {
                CircleFunction::Poly(p) => p,
                _ => unreachable!(),
            };
            let m = 128;
            let direct = prn_convolution(&poly.sample(m), 0.55, n);
            for (l, &value) in direct.iter().enumerate().take(8) {
                let theta = 2.0 * std::f64::consts::PI * l as f64 / m as f64;
                let spectral = via_coeffs.eval(theta);
                assert!(
                    (spectral - value).norm() < 1e-10,
                    "n = {n}, sample {l}: {spectral} vs {value}"
                );
            }
        }
    }

    #[test]
    fn prn_rejects_radius_one() {
        let f = CircleFunction::Poly(TrigPoly::single_mode(0, c(1.0, 0.0)));
        assert!(prn_operator(&f, 1.0, 0).is_err());
    }

    #[test]
    fn layered_derivative_cases() {
        let v = derivative_via_prn(&constant_one(), 0, c(0.4, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-10, "got {v}");

        // Second derivative of z^2 is 2, everywhere.
        let v = derivative_via_prn(&monomial(2), 2, c(0.3, 0.0)).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-9, "got {v}");

        let layered = derivative_via_prn(&annulus_mode(), 0, c(0.2, 0.0)).unwrap();
        let direct = project_quadrature(&annulus_mode(), c(0.2, 0.0)).unwrap();
        assert!(
            (layered - direct).norm() < 1e-7,
            "layered {layered} vs kernel {direct}"
        );
        let kernel = bp_derivative(&annulus_mode(), 1, c(0.25, 0.15)).unwrap();
        let layered = derivative_via_prn(&annulus_mode(), 1, c(0.25, 0.15)).unwrap();
        assert!(
            (layered - kernel).norm() < 1e-7,
            "layered {layered} vs kernel {kernel}"
        );
    }
}
