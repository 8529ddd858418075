//! Quadrature rules used throughout the crate.
//!
//! Two rules cover every integral here: tanh-sinh (double-exponential) for
//! integrands with endpoint singularities like t^{b-1} or (1-t)^{-u}, and
//! Gauss-Legendre panels for integrands that are smooth between breakpoints.
//!
//! The tanh-sinh routines hand the integrand its distance to each endpoint
//! alongside the abscissa itself. Near the endpoints that distance underflows
//! any expression of the form `1.0 - x`, and singular factors such as
//! `(1-x).powf(-u)` must be computed from it directly.

/// Value plus a crude error estimate (difference of the last two levels).
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

const MAX_LEVEL: u32 = 12;
/// Endpoint distances below this are discarded; keeps x^(p) finite for p > -1.
const MIN_ENDPOINT_DISTANCE: f64 = 1e-280;

/// Logistic 1/(1 + e^{2y}); the distance from tanh(y)'s image to +1, halved.
fn endpoint_distance(y: f64) -> f64 {
    1.0 / (1.0 + (2.0 * y).exp())
}

/// Tanh-sinh quadrature of f over [a, b].
///
/// The integrand receives `(x, x - a, b - x)`; the two distances stay
/// accurate down to ~1e-280 even when `x` itself has rounded to an endpoint.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64) -> QuadResult
where
    F: Fn(f64, f64, f64) -> f64,
{
    if a == b {
        return QuadResult {
            value: 0.0,
            error_estimate: 0.0,
        };
    }
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let width = b - a;

    let mut h = 1.0f64;
    let mut previous = f64::NAN;
    let mut estimate = f64::NAN;

    for level in 0..=MAX_LEVEL {
        let mut sum = 0.0;
        // k = 0: y = 0, sech^2(0) = 1, weight density pi/2.
        sum += std::f64::consts::FRAC_PI_2 * f(mid, 0.5 * width, 0.5 * width);

        let mut k = 1u64;
        loop {
            let t = k as f64 * h;
            let y = std::f64::consts::FRAC_PI_2 * t.sinh();
            let d_far = endpoint_distance(y); // distance fraction at the +1 side
            if d_far < MIN_ENDPOINT_DISTANCE {
                break;
            }
            let d_near = endpoint_distance(-y);
            // sech^2(y) = 4 d(y) d(-y)
            let weight = 4.0 * d_far * d_near * std::f64::consts::FRAC_PI_2 * t.cosh();

            // +t maps toward b, -t toward a.
            let x_hi = mid + half * (1.0 - 2.0 * d_far);
            let x_lo = mid - half * (1.0 - 2.0 * d_far);
            sum += weight * f(x_hi, width * d_near, width * d_far);
            sum += weight * f(x_lo, width * d_far, width * d_near);

            k += 1;
            if k > 20_000 {
                break;
            }
        }

        let value = sum * h * half;
        if level > 0 {
            estimate = (value - previous).abs();
            if estimate <= rel_tol * value.abs().max(1e-300) && level >= 3 {
                return QuadResult {
                    value,
                    error_estimate: estimate,
                };
            }
        }
        previous = value;
        h *= 0.5;
    }

    QuadResult {
        value: previous,
        error_estimate: estimate,
    }
}

/// Tanh-sinh on [0, 1] with the integrand given `(t, 1 - t)`.
pub fn tanh_sinh_01<F>(f: F, rel_tol: f64) -> QuadResult
where
    F: Fn(f64, f64) -> f64,
{
    tanh_sinh(|_, t, one_minus_t| f(t, one_minus_t), 0.0, 1.0, rel_tol)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; standard construction.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate a smooth function over [a, b] with an n-point Gauss rule.
pub fn gauss_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Composite Gauss rule split at the given breakpoints inside [a, b].
///
/// Returns the integral and an error estimate from comparing against a
/// lower-order pass on the same panels.
pub fn gauss_composite<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    interior_breaks: &[f64],
    n: usize,
) -> QuadResult {
    let mut edges = vec![a];
    for &t in interior_breaks {
        if t > a && t < b {
            edges.push(t);
        }
    }
    edges.push(b);
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());
    edges.dedup();

    let mut hi_order = 0.0;
    let mut lo_order = 0.0;
    for pair in edges.windows(2) {
        hi_order += gauss_panel(f, pair[0], pair[1], n);
        lo_order += gauss_panel(f, pair[0], pair[1], n / 2 + 1);
    }
    QuadResult {
        value: hi_order,
        error_estimate: (hi_order - lo_order).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_polynomial() {
        let r = tanh_sinh_01(|t, _| t * t, 1e-12);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12, "got {}", r.value);
    }

    #[test]
    fn tanh_sinh_both_endpoints_singular() {
        // Beta(1/2, 1/2) = pi
        let r = tanh_sinh_01(|t, omt| 1.0 / (t * omt).sqrt(), 1e-12);
        assert!(
            (r.value - std::f64::consts::PI).abs() < 1e-10,
            "got {}",
            r.value
        );
    }

    #[test]
    fn tanh_sinh_strong_endpoint_weight() {
        // int_0^1 (1-t)^(-0.9) dt = 10
        let r = tanh_sinh_01(|_, omt| omt.powf(-0.9), 1e-12);
        assert!((r.value - 10.0).abs() < 1e-8, "got {}", r.value);
    }

    #[test]
    fn tanh_sinh_general_interval() {
        let r = tanh_sinh(|x, _, _| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_degree_exactness() {
        // n-point rule is exact through degree 2n-1.
        let (nodes, weights) = gauss_legendre(8);
        let integral: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(14))
            .sum();
        assert!((integral - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_composite_splits_at_kinks() {
        // |x - 1/2| integrated over [0,1] = 1/4; a kink defeats a single panel.
        let f = |x: f64| (x - 0.5).abs();
        let r = gauss_composite(&f, 0.0, 1.0, &[0.5], 16);
        assert!((r.value - 0.25).abs() < 1e-15);
    }
}
