//! Functions on circles and on the unit disc.
//!
//! A `TrigPoly` is a band-limited function on one circle, stored as Fourier
//! coefficients a_n for |n| <= band. A `RadialFourierFunction` is a function
//! on the disc written as finitely many modes n with radial profiles a_n(r).
//! An `AnalyticFunction` holds Taylor coefficients and is what the projection
//! produces. `WeightedRadialMeasure` carries the quadrature for integrals
//! against (1-r)^{-u} r^j dr.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Default angular sample count; enough that every band-limited function in
/// the test corpus is resolved with a wide no-aliasing margin.
pub const DEFAULT_ANGULAR_SAMPLES: usize = 1024;

/// Band-limited circle function in coefficient form, a_n for n in [-band, band].
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    band: usize,
    coeffs: Vec<C64>,
}

impl TrigPoly {
    pub fn zero(band: usize) -> Self {
        Self {
            band,
            coeffs: vec![C64::new(0.0, 0.0); 2 * band + 1],
        }
    }

    /// Coefficients listed from n = -band to n = +band.
    pub fn from_coeffs(band: usize, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != 2 * band + 1 {
            return Err(Error::Construction(format!(
                "expected {} coefficients for band {}, got {}",
                2 * band + 1,
                band,
                coeffs.len()
            )));
        }
        Ok(Self { band, coeffs })
    }

    /// A single mode e^{i n theta} with the given amplitude.
    pub fn single_mode(n: i64, amplitude: C64) -> Self {
        let band = n.unsigned_abs() as usize;
        let mut poly = Self::zero(band);
        poly.set_coeff(n, amplitude);
        poly
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn coeff(&self, n: i64) -> C64 {
        if n.unsigned_abs() as usize > self.band {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.band as i64) as usize]
        }
    }

    pub fn set_coeff(&mut self, n: i64, value: C64) {
        let idx = n + self.band as i64;
        assert!(
            (0..self.coeffs.len() as i64).contains(&idx),
            "mode {n} outside band {}",
            self.band
        );
        self.coeffs[idx as usize] = value;
    }

    /// (n, a_n) pairs from -band to band.
    pub fn modes(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let band = self.band as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - band, c))
    }

    pub fn eval(&self, theta: f64) -> C64 {
        let w = C64::from_polar(1.0, theta);
        let mut phase = w.powi(-(self.band as i32));
        let mut sum = C64::new(0.0, 0.0);
        for &c in &self.coeffs {
            sum += c * phase;
            phase *= w;
        }
        sum
    }

    /// Values on the uniform grid theta_j = 2 pi j / m.
    pub fn sample(&self, m: usize) -> Vec<C64> {
        (0..m)
            .map(|j| self.eval(2.0 * std::f64::consts::PI * j as f64 / m as f64))
            .collect()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            band: self.band,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

/// A circle function in whichever of the two forms it is currently known.
#[derive(Debug, Clone)]
pub enum CircleFunction {
    Poly(TrigPoly),
    Samples(Vec<C64>),
}

impl CircleFunction {
    /// Uniform samples, producing at least `4 band + 4` points for
    /// coefficient input so a later DFT round-trip cannot alias.
    pub fn samples(&self, minimum: usize) -> Vec<C64> {
        match self {
            CircleFunction::Samples(values) => values.clone(),
            CircleFunction::Poly(poly) => {
                let m = minimum.max(4 * poly.band() + 4);
                poly.sample(m)
            }
        }
    }
}

impl From<TrigPoly> for CircleFunction {
    fn from(poly: TrigPoly) -> Self {
        CircleFunction::Poly(poly)
    }
}

/// DFT of a sample vector: a_n = (1/M) sum_j f_j e^{-i n theta_j}, |n| <= band.
///
/// Exact for trig polynomials of degree <= band once M >= 2 band + 2.
pub fn fourier_coefficients(samples: &[C64], band: usize) -> Result<TrigPoly> {
    let m = samples.len();
    if m == 0 || band > m / 2 - 1 {
        return Err(Error::Aliasing { band, samples: m });
    }
    let mut poly = TrigPoly::zero(band);
    for n in -(band as i64)..=(band as i64) {
        let mut sum = C64::new(0.0, 0.0);
        for (j, &f) in samples.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (n as f64) * (j as f64) / m as f64;
            sum += f * C64::from_polar(1.0, angle);
        }
        poly.set_coeff(n, sum / m as f64);
    }
    Ok(poly)
}

/// Integral mean M_p over the sample grid: ((1/M) sum |f_j|^p)^(1/p),
/// or the grid maximum for p = infinity.
pub fn integral_mean(f: &CircleFunction, p: f64) -> Result<f64> {
    let samples = f.samples(DEFAULT_ANGULAR_SAMPLES);
    if samples.is_empty() {
        return Err(Error::Domain("empty sample set".into()));
    }
    mean_of_samples(&samples, p)
}

pub fn mean_of_samples(samples: &[C64], p: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("empty sample set".into()));
    }
    if p == f64::INFINITY {
        return Ok(samples.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    if !(p > 0.0) {
        return Err(Error::Domain(format!("mean exponent must be positive: {p}")));
    }
    let sum: f64 = samples.iter().map(|z| z.norm().powf(p)).sum();
    Ok((sum / samples.len() as f64).powf(1.0 / p))
}

/// Spectral theta-derivative of order k: a_n -> (i n)^k a_n.
pub fn theta_derivative(f: &TrigPoly, k: u32) -> TrigPoly {
    let mut out = f.clone();
    for n in -(f.band() as i64)..=(f.band() as i64) {
        let factor = C64::new(0.0, n as f64).powu(k);
        out.set_coeff(n, f.coeff(n) * factor);
    }
    out
}

/// Multiplication by e^{-i n theta}: shifts every mode index down by n.
pub fn twist(f: &TrigPoly, n: i64) -> TrigPoly {
    let band = f.band() as i64 + n.abs();
    let mut out = TrigPoly::zero(band as usize);
    for (m, c) in f.modes() {
        out.set_coeff(m - n, c);
    }
    out
}

/// d^k/dtheta^k [ e^{-i n theta} f ], the twisted derivative every bound
/// statement uses on the right-hand side.
pub fn twisted_derivative(f: &TrigPoly, n: i64, k: u32) -> TrigPoly {
    theta_derivative(&twist(f, n), k)
}

/// One radial profile a_n(r) on [0, 1).
#[derive(Debug, Clone)]
pub enum RadialProfile {
    /// values[i] on [edges[i], edges[i+1]); zero outside [edges[0], edges[last]).
    PiecewiseConstant { edges: Vec<f64>, values: Vec<C64> },
    /// Sparse polynomial sum c_k r^k.
    Polynomial { terms: Vec<(u32, C64)> },
    /// C-infinity bump: 0 outside (lo, hi), amplitude on [plateau_lo, plateau_hi],
    /// exp(-1/t)-style ramps in between.
    Bump {
        lo: f64,
        plateau_lo: f64,
        plateau_hi: f64,
        hi: f64,
        amplitude: C64,
    },
    /// Piecewise-linear interpolation through (nodes, values); zero outside.
    Sampled { nodes: Vec<f64>, values: Vec<C64> },
}

fn mollifier_ramp(s: f64) -> f64 {
    // Smooth 0 -> 1 transition on [0, 1].
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let e0 = (-1.0 / s).exp();
        let e1 = (-1.0 / (1.0 - s)).exp();
        e0 / (e0 + e1)
    }
}

impl RadialProfile {
    pub fn validate(&self) -> Result<()> {
        match self {
            RadialProfile::PiecewiseConstant { edges, values } => {
                if edges.len() != values.len() + 1 || values.is_empty() {
                    return Err(Error::Construction(
                        "piecewise-constant profile needs edges.len() == values.len() + 1".into(),
                    ));
                }
                if !edges.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Construction("breakpoints must be strictly increasing".into()));
                }
                if edges[0] < 0.0 || *edges.last().unwrap() > 1.0 {
                    return Err(Error::Construction("breakpoints must lie in [0, 1]".into()));
                }
            }
            RadialProfile::Polynomial { terms } => {
                if terms.iter().any(|(_, c)| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(Error::Construction("polynomial coefficients must be finite".into()));
                }
            }
            RadialProfile::Bump {
                lo,
                plateau_lo,
                plateau_hi,
                hi,
                ..
            } => {
                if !(0.0 <= *lo
                    && lo < plateau_lo
                    && plateau_lo <= plateau_hi
                    && plateau_hi < hi
                    && *hi <= 1.0)
                {
                    return Err(Error::Construction(
                        "bump needs 0 <= lo < plateau_lo <= plateau_hi < hi <= 1".into(),
                    ));
                }
            }
            RadialProfile::Sampled { nodes, values } => {
                if nodes.len() != values.len() || nodes.len() < 2 {
                    return Err(Error::Construction("sampled profile needs matching nodes/values, >= 2".into()));
                }
                if !nodes.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Construction("sample nodes must be strictly increasing".into()));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, r: f64) -> C64 {
        match self {
            RadialProfile::PiecewiseConstant { edges, values } => {
                if r < edges[0] || r >= *edges.last().unwrap() {
                    return C64::new(0.0, 0.0);
                }
                // Index of the segment [edges[i], edges[i+1]) containing r.
                let i = edges.partition_point(|&e| e <= r) - 1;
                values[i.min(values.len() - 1)]
            }
            RadialProfile::Polynomial { terms } => terms
                .iter()
                .map(|&(k, c)| c * r.powi(k as i32))
                .sum(),
            RadialProfile::Bump {
                lo,
                plateau_lo,
                plateau_hi,
                hi,
                amplitude,
            } => {
                let shape = if r <= *lo || r >= *hi {
                    0.0
                } else if r < *plateau_lo {
                    mollifier_ramp((r - lo) / (plateau_lo - lo))
                } else if r <= *plateau_hi {
                    1.0
                } else {
                    mollifier_ramp((hi - r) / (hi - plateau_hi))
                };
                amplitude * shape
            }
            RadialProfile::Sampled { nodes, values } => {
                if r < nodes[0] || r > *nodes.last().unwrap() {
                    return C64::new(0.0, 0.0);
                }
                let i = nodes.partition_point(|&t| t <= r).clamp(1, nodes.len() - 1);
                let (t0, t1) = (nodes[i - 1], nodes[i]);
                let frac = (r - t0) / (t1 - t0);
                values[i - 1] * (1.0 - frac) + values[i] * frac
            }
        }
    }

    /// Radii where the profile is not smooth; quadrature panels split here.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            RadialProfile::PiecewiseConstant { edges, .. } => edges.clone(),
            RadialProfile::Polynomial { .. } => Vec::new(),
            RadialProfile::Bump {
                lo,
                plateau_lo,
                plateau_hi,
                hi,
                ..
            } => vec![*lo, *plateau_lo, *plateau_hi, *hi],
            RadialProfile::Sampled { nodes, .. } => nodes.clone(),
        }
    }

    /// Closure of the set where the profile can be nonzero, within [0, 1].
    pub fn support(&self) -> (f64, f64) {
        match self {
            RadialProfile::PiecewiseConstant { edges, .. } => (edges[0], *edges.last().unwrap()),
            RadialProfile::Polynomial { terms } => {
                if terms.is_empty() {
                    (0.0, 0.0)
                } else {
                    (0.0, 1.0)
                }
            }
            RadialProfile::Bump { lo, hi, .. } => (*lo, *hi),
            RadialProfile::Sampled { nodes, .. } => (nodes[0], *nodes.last().unwrap()),
        }
    }
}

/// One Fourier mode of a disc function: index n with radial profile a_n(r).
#[derive(Debug, Clone)]
pub struct Mode {
    pub n: i64,
    pub profile: RadialProfile,
}

/// A disc function written as finitely many modes, f(r e^{i theta}) =
/// sum_n a_n(r) e^{i n theta}. Bounded profiles keep it in L^1 of the disc.
#[derive(Debug, Clone)]
pub struct RadialFourierFunction {
    modes: Vec<Mode>,
}

impl RadialFourierFunction {
    pub fn new(mut modes: Vec<Mode>) -> Result<Self> {
        for mode in &modes {
            mode.profile.validate()?;
        }
        modes.sort_by_key(|m| m.n);
        if modes.windows(2).any(|w| w[0].n == w[1].n) {
            return Err(Error::Construction("duplicate mode index".into()));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn band(&self) -> usize {
        self.modes.iter().map(|m| m.n.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn eval(&self, r: f64, theta: f64) -> C64 {
        self.modes
            .iter()
            .map(|m| m.profile.eval(r) * C64::from_polar(1.0, m.n as f64 * theta))
            .sum()
    }

    /// The restriction f_r as a band-limited circle function.
    pub fn circle_restriction(&self, r: f64) -> TrigPoly {
        let mut poly = TrigPoly::zero(self.band());
        for mode in &self.modes {
            poly.set_coeff(mode.n, mode.profile.eval(r));
        }
        poly
    }

    /// Union of all profile breakpoints, sorted and deduplicated.
    pub fn radial_breakpoints(&self) -> Vec<f64> {
        let mut breaks: Vec<f64> = self.modes.iter().flat_map(|m| m.profile.breakpoints()).collect();
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        breaks
    }

    /// Largest radius up to which any profile is supported.
    pub fn support_hi(&self) -> f64 {
        self.modes.iter().map(|m| m.profile.support().1).fold(0.0, f64::max)
    }
}

/// Taylor coefficients of a disc-analytic function.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction {
    pub coeffs: Vec<C64>,
}

impl AnalyticFunction {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            sum = sum * z + c;
        }
        sum
    }

    /// n-th complex derivative, as Taylor coefficients.
    pub fn derivative(&self, n: u32) -> AnalyticFunction {
        let n = n as usize;
        if n >= self.coeffs.len() {
            return AnalyticFunction::new(vec![C64::new(0.0, 0.0)]);
        }
        let coeffs = (n..self.coeffs.len())
            .map(|j| {
                let mut factor = 1.0;
                for i in 0..n {
                    factor *= (j - i) as f64;
                }
                self.coeffs[j] * factor
            })
            .collect();
        AnalyticFunction::new(coeffs)
    }

    /// Exact M_2 via the coefficient identity M_2(r, f)^2 = sum |c_k|^2 r^{2k}.
    pub fn m2(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm_sqr() * r.powi(2 * k as i32))
            .sum::<f64>()
            .sqrt()
    }

    /// The circle restriction at radius r, coefficient k = c_k r^k.
    pub fn circle_poly(&self, r: f64) -> TrigPoly {
        let band = self.degree();
        let mut poly = TrigPoly::zero(band);
        for (k, &c) in self.coeffs.iter().enumerate() {
            poly.set_coeff(k as i64, c * r.powi(k as i32));
        }
        poly
    }

    /// M_p(r, f) by angular sampling (p = 2 could use `m2` instead).
    pub fn integral_mean(&self, r: f64, p: f64) -> Result<f64> {
        integral_mean(&CircleFunction::Poly(self.circle_poly(r)), p)
    }
}

/// Quadrature against (1-r)^{-u} r^j dr on [lo, hi], breakpoint-aware.
///
/// Tanh-sinh panels absorb the (1-r)^{-u} endpoint weight; the weight is
/// folded into the stored node weights so integration is a dot product.
#[derive(Debug, Clone)]
pub struct WeightedRadialMeasure {
    pub j: f64,
    pub u: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Weights of the embedded half-resolution rule (nonzero on even tanh-sinh
    /// indices); the fine/coarse difference is the error estimate.
    coarse_weights: Vec<f64>,
}

/// Fixed tanh-sinh level for measure construction (~2 * 6 * 2^5 nodes/panel).
const MEASURE_LEVEL_H: f64 = 1.0 / 32.0;
const MEASURE_MIN_DISTANCE: f64 = 1e-280;

impl WeightedRadialMeasure {
    pub fn new(j: f64, u: f64) -> Result<Self> {
        Self::with_breakpoints(j, u, &[])
    }

    /// Splits [0, 1] at the interior breakpoints so piecewise profiles are
    /// integrated panel-exactly.
    pub fn with_breakpoints(j: f64, u: f64, interior: &[f64]) -> Result<Self> {
        Self::on_interval_with_breakpoints(j, u, 0.0, 1.0, interior)
    }

    /// Measure restricted to [lo, hi]; hi < 1 lifts the u < 1 requirement
    /// because the weight is then bounded on the interval.
    pub fn on_interval(j: f64, u: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::on_interval_with_breakpoints(j, u, lo, hi, &[])
    }

    pub fn on_interval_with_breakpoints(
        j: f64,
        u: f64,
        lo: f64,
        hi: f64,
        interior: &[f64],
    ) -> Result<Self> {
        if j <= -1.0 {
            return Err(Error::Domain(format!("radial weight needs j > -1, got {j}")));
        }
        if hi >= 1.0 && u >= 1.0 {
            return Err(Error::NonIntegrable(u));
        }
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::Domain(format!("bad radial interval [{lo}, {hi}]")));
        }
        let mut edges = vec![lo];
        for &t in interior {
            if t > lo && t < hi {
                edges.push(t);
            }
        }
        edges.push(hi);
        edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
        edges.dedup();

        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut coarse_weights = Vec::new();
        for pair in edges.windows(2) {
            push_panel(&mut nodes, &mut weights, &mut coarse_weights, pair[0], pair[1], j, u);
        }
        Ok(Self {
            j,
            u,
            nodes,
            weights,
            coarse_weights,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * g(r))
            .sum()
    }

    /// Integral plus the fine-vs-embedded-coarse difference as error estimate.
    pub fn integrate_with_estimate<F: Fn(f64) -> f64>(&self, g: F) -> (f64, f64) {
        let mut fine = 0.0;
        let mut coarse = 0.0;
        for i in 0..self.nodes.len() {
            let v = g(self.nodes[i]);
            fine += self.weights[i] * v;
            coarse += self.coarse_weights[i] * v;
        }
        (fine, (fine - coarse).abs())
    }
}

fn push_panel(
    nodes: &mut Vec<f64>,
    weights: &mut Vec<f64>,
    coarse_weights: &mut Vec<f64>,
    a: f64,
    b: f64,
    j: f64,
    u: f64,
) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let width = b - a;
    let h = MEASURE_LEVEL_H;

    // The weight (1-r)^{-u} r^j is evaluated from endpoint distances so the
    // upper-endpoint singularity at r = 1 keeps full precision. A node at a
    // doubled step size belongs to the embedded coarse rule with twice the
    // weight (same abscissa, h doubled).
    let mut push = |r: f64, one_minus_r: f64, ts_weight: f64, on_coarse: bool| {
        if r <= 0.0 {
            return; // r^j with j < 0 would blow up; measure gives it zero mass
        }
        let w = ts_weight * one_minus_r.powf(-u) * r.powf(j);
        if w.is_finite() {
            nodes.push(r);
            weights.push(w);
            coarse_weights.push(if on_coarse { 2.0 * w } else { 0.0 });
        }
    };

    let center_weight = std::f64::consts::FRAC_PI_2 * h * half;
    push(mid, (1.0 - b) + half, center_weight, true);

    let mut k = 1u64;
    loop {
        let t = k as f64 * h;
        let y = std::f64::consts::FRAC_PI_2 * t.sinh();
        let d_far = 1.0 / (1.0 + (2.0 * y).exp());
        if d_far < MEASURE_MIN_DISTANCE {
            break;
        }
        let d_near = 1.0 - d_far;
        let ts_weight =
            4.0 * d_far * d_near * std::f64::consts::FRAC_PI_2 * t.cosh() * h * half;
        let r_hi = mid + half * (d_near - d_far);
        let r_lo = mid - half * (d_near - d_far);
        let on_coarse = k.is_multiple_of(2);
        // 1 - r at the two symmetric nodes, accurate when b is 1.
        push(r_hi, (1.0 - b) + width * d_far, ts_weight, on_coarse);
        push(r_lo, (1.0 - b) + width * d_near, ts_weight, on_coarse);
        k += 1;
        if k > 4000 {
            break;
        }
    }
}

/// Integral of g against the measure; the spec-level entry point.
pub fn radial_integrate<F: Fn(f64) -> f64>(g: F, measure: &WeightedRadialMeasure) -> f64 {
    measure.integrate(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn fourier_picks_out_single_mode() {
        let samples = TrigPoly::single_mode(3, c(1.0, 0.0)).sample(64);
        let poly = fourier_coefficients(&samples, 8).unwrap();
        for n in -8i64..=8 {
            let expected = if n == 3 { 1.0 } else { 0.0 };
            assert!(
                (poly.coeff(n) - c(expected, 0.0)).norm() < 1e-13,
                "coefficient {n}"
            );
        }
    }

    #[test]
    fn fourier_constant_plus_negative_mode() {
        let mut f = TrigPoly::zero(1);
        f.set_coeff(0, c(2.0, 0.0));
        f.set_coeff(-1, c(1.0, 0.0));
        let poly = fourier_coefficients(&f.sample(32), 2).unwrap();
        assert!((poly.coeff(0) - c(2.0, 0.0)).norm() < 1e-13);
        assert!((poly.coeff(-1) - c(1.0, 0.0)).norm() < 1e-13);
        assert!(poly.coeff(1).norm() < 1e-13);
    }

    #[test]
    fn fourier_poisson_kernel_modes() {
        // |1 - 0.5 e^{i theta}|^{-2} has a_n = 0.5^{|n|} / (1 - 0.25).
        let m = 256;
        let samples: Vec<C64> = (0..m)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let w = c(1.0, 0.0) - 0.5 * C64::from_polar(1.0, theta);
                c(1.0 / w.norm_sqr(), 0.0)
            })
            .collect();
        let poly = fourier_coefficients(&samples, 10).unwrap();
        for n in -10i64..=10 {
            let expected = 0.5f64.powi(n.unsigned_abs() as i32) / 0.75;
            assert!(
                (poly.coeff(n).re - expected).abs() < 1e-12,
                "mode {n}: {} vs {expected}",
                poly.coeff(n).re
            );
            // Independent oracle: Gauss quadrature of the defining integral.
            let oracle = quad::gauss_panel(
                &|theta: f64| {
                    let w = c(1.0, 0.0) - 0.5 * C64::from_polar(1.0, theta);
                    (theta * n as f64).cos() / w.norm_sqr()
                },
                0.0,
                2.0 * std::f64::consts::PI,
                64,
            ) / (2.0 * std::f64::consts::PI);
            assert!((oracle - expected).abs() < 1e-10, "oracle mode {n}");
        }
    }

    #[test]
    fn aliasing_is_rejected() {
        let samples = vec![c(1.0, 0.0); 16];
        assert!(matches!(
            fourier_coefficients(&samples, 8),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn mean_of_unimodular_mode_is_one() {
        let f = CircleFunction::Poly(TrigPoly::single_mode(5, c(1.0, 0.0)));
        for &p in &[0.5, 1.0, 2.0, 3.7, f64::INFINITY] {
            assert!((integral_mean(&f, p).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn mean_of_scaled_mode_is_radius() {
        // samples of z on the circle of radius r: single mode with |a_1| = r.
        let f = CircleFunction::Poly(TrigPoly::single_mode(1, c(0.37, 0.0)));
        assert!((integral_mean(&f, 2.0).unwrap() - 0.37).abs() < 1e-13);
    }

    #[test]
    fn mean_matches_parseval_for_two_modes() {
        let mut poly = TrigPoly::zero(1);
        poly.set_coeff(0, c(1.0, 0.0));
        poly.set_coeff(1, c(1.0, 0.0));
        let m2 = integral_mean(&CircleFunction::Poly(poly), 2.0).unwrap();
        assert!((m2 - 2.0f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn mean_rejects_bad_exponent_and_empty() {
        let f = CircleFunction::Samples(vec![]);
        assert!(integral_mean(&f, 2.0).is_err());
        let g = CircleFunction::Poly(TrigPoly::single_mode(0, c(1.0, 0.0)));
        assert!(integral_mean(&g, 0.0).is_err());
    }

    #[test]
    fn theta_derivative_eigenmode() {
        let f = TrigPoly::single_mode(2, c(1.0, 0.0));
        assert_eq!(theta_derivative(&f, 0), f);
        let df = theta_derivative(&f, 1);
        assert!((df.coeff(2) - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn theta_derivative_cosine_twice() {
        // cos = (e^{i t} + e^{-i t})/2; second derivative is -cos.
        let mut f = TrigPoly::zero(1);
        f.set_coeff(1, c(0.5, 0.0));
        f.set_coeff(-1, c(0.5, 0.0));
        let ddf = theta_derivative(&f, 2);
        assert!((ddf.coeff(1) + c(0.5, 0.0)).norm() < 1e-15);
        assert!((ddf.coeff(-1) + c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn twist_moves_modes() {
        let f = TrigPoly::single_mode(4, c(1.0, 0.0));
        let t = twist(&f, 4);
        assert!((t.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        let one = TrigPoly::single_mode(0, c(1.0, 0.0));
        let t1 = twist(&one, 3);
        assert!((t1.coeff(-3) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn twisted_derivative_leibniz_expansion() {
        // d^k/dtheta^k (e^{-i n t} f) = sum_j C(k,j) (-i n)^{k-j} e^{-i n t} f^{(j)}
        let mut f = TrigPoly::zero(3);
        f.set_coeff(-2, c(0.3, -0.1));
        f.set_coeff(1, c(1.0, 0.5));
        f.set_coeff(3, c(-0.7, 0.2));
        let (n, k) = (2i64, 3u32);
        let direct = twisted_derivative(&f, n, k);

        let mut expansion = TrigPoly::zero(direct.band());
        let binom = [1.0, 3.0, 3.0, 1.0];
        for j in 0..=k {
            let factor = C64::new(0.0, -(n as f64)).powu(k - j) * binom[j as usize];
            let term = twist(&theta_derivative(&f, j), n);
            for (m, cval) in term.modes() {
                expansion.set_coeff(m, expansion.coeff(m) + factor * cval);
            }
        }
        for m in -(direct.band() as i64)..=(direct.band() as i64) {
            assert!(
                (direct.coeff(m) - expansion.coeff(m)).norm() < 1e-10,
                "mode {m}"
            );
        }
    }

    #[test]
    fn twisted_derivative_pointwise_binomial_bound() {
        // |d^k/dt^k (e^{-int} f)| <= sum_j C(k,j) n^{k-j} |f^{(j)}| pointwise.
        let mut f = TrigPoly::zero(4);
        f.set_coeff(-3, c(0.4, 0.2));
        f.set_coeff(0, c(-1.0, 0.3));
        f.set_coeff(2, c(0.8, -0.6));
        f.set_coeff(4, c(0.1, 0.1));
        let (n, k) = (3i64, 2u32);
        let lhs = twisted_derivative(&f, n, k);
        let binom = [1.0, 2.0, 1.0];
        for j in 0..32 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 32.0;
            let bound: f64 = (0..=k)
                .map(|i| {
                    binom[i as usize]
                        * (n as f64).powi((k - i) as i32)
                        * theta_derivative(&f, i).eval(theta).norm()
                })
                .sum();
            assert!(
                lhs.eval(theta).norm() <= bound + 1e-12,
                "theta = {theta}: {} > {bound}",
                lhs.eval(theta).norm()
            );
        }
    }

    #[test]
    fn twisted_derivative_matches_finite_differences() {
        // Five-point stencil on sample values of e^{-i n t} f.
        let mut f = TrigPoly::zero(2);
        f.set_coeff(0, c(0.4, 0.0));
        f.set_coeff(2, c(1.0, -0.3));
        let n = 1i64;
        let g = |t: f64| f.eval(t) * C64::from_polar(1.0, -(n as f64) * t);
        let h = 1e-3;
        let t0 = 0.9;
        let stencil = (-g(t0 + 2.0 * h) + 8.0 * g(t0 + h) - 8.0 * g(t0 - h) + g(t0 - 2.0 * h))
            / (12.0 * h);
        let spectral = twisted_derivative(&f, n, 1).eval(t0);
        assert!((stencil - spectral).norm() < 1e-9, "{stencil} vs {spectral}");
    }

    #[test]
    fn radial_measure_basic_values() {
        // g = 1 against r dr -> 1/2
        let m = WeightedRadialMeasure::new(1.0, 0.0).unwrap();
        assert!((radial_integrate(|_| 1.0, &m) - 0.5).abs() < 1e-12);
        // g = 1 against (1-r)^{-1/2} dr -> 2
        let m = WeightedRadialMeasure::new(0.0, 0.5).unwrap();
        assert!((radial_integrate(|_| 1.0, &m) - 2.0).abs() < 1e-10);
        // g = r^2 against r dr -> 1/4
        let m = WeightedRadialMeasure::new(1.0, 0.0).unwrap();
        assert!((radial_integrate(|r| r * r, &m) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn radial_measure_polynomial_accuracy() {
        // Degree-20 polynomial against a genuinely singular weight.
        let m = WeightedRadialMeasure::new(0.5, 0.75).unwrap();
        let computed = radial_integrate(|r| r.powi(20), &m);
        // Exact value: B(21.5, 0.25) = Γ(21.5)Γ(0.25)/Γ(21.75)
        let exact = (crate::special::log_gamma(21.5).unwrap()
            + crate::special::log_gamma(0.25).unwrap()
            - crate::special::log_gamma(21.75).unwrap())
        .exp();
        assert!(
            ((computed - exact) / exact).abs() < 1e-9,
            "{computed} vs {exact}"
        );
    }

    #[test]
    fn radial_measure_rejects_bad_weights() {
        assert!(matches!(
            WeightedRadialMeasure::new(0.0, 1.0),
            Err(Error::NonIntegrable(_))
        ));
        assert!(WeightedRadialMeasure::new(-1.0, 0.0).is_err());
        // On a sub-interval away from 1 the strong weight is fine.
        assert!(WeightedRadialMeasure::on_interval(0.0, 2.0, 0.0, 0.9).is_ok());
    }

    #[test]
    fn radial_measure_splits_at_breakpoints() {
        // Indicator of [1/2, 1) against r dr: exact value 3/8.
        let m = WeightedRadialMeasure::with_breakpoints(1.0, 0.0, &[0.5]).unwrap();
        let v = radial_integrate(|r| if r >= 0.5 { 1.0 } else { 0.0 }, &m);
        assert!((v - 0.375).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn piecewise_profile_eval_and_support() {
        let profile = RadialProfile::PiecewiseConstant {
            edges: vec![0.5, 1.0],
            values: vec![c(2.0, 0.0)],
        };
        profile.validate().unwrap();
        assert_eq!(profile.eval(0.3), c(0.0, 0.0));
        assert_eq!(profile.eval(0.5), c(2.0, 0.0));
        assert_eq!(profile.eval(0.999), c(2.0, 0.0));
        assert_eq!(profile.support(), (0.5, 1.0));
    }

    #[test]
    fn bump_profile_shape() {
        let profile = RadialProfile::Bump {
            lo: 0.2,
            plateau_lo: 0.4,
            plateau_hi: 0.6,
            hi: 0.8,
            amplitude: c(3.0, 0.0),
        };
        profile.validate().unwrap();
        assert_eq!(profile.eval(0.1).re, 0.0);
        assert_eq!(profile.eval(0.5).re, 3.0);
        assert_eq!(profile.eval(0.9).re, 0.0);
        let ramp_val = profile.eval(0.3).re;
        assert!(ramp_val > 0.0 && ramp_val < 3.0);
        // Symmetric ramps.
        assert!((profile.eval(0.3).re - profile.eval(0.7).re).abs() < 1e-12);
    }

    #[test]
    fn analytic_function_means_and_derivatives() {
        // f(z) = 1 + 2z^2
        let f = AnalyticFunction::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        let df = f.derivative(1);
        assert_eq!(df.coeffs, vec![c(0.0, 0.0), c(4.0, 0.0)]);
        let d3 = f.derivative(3);
        assert_eq!(d3.coeffs, vec![c(0.0, 0.0)]);

        let r = 0.6;
        let m2 = f.m2(r);
        let sampled = f.integral_mean(r, 2.0).unwrap();
        assert!((m2 - sampled).abs() < 1e-12, "{m2} vs {sampled}");
    }

    #[test]
    fn radial_fourier_restriction() {
        let f = RadialFourierFunction::new(vec![
            Mode {
                n: 1,
                profile: RadialProfile::Polynomial {
                    terms: vec![(1, c(1.0, 0.0))],
                },
            },
            Mode {
                n: -2,
                profile: RadialProfile::PiecewiseConstant {
                    edges: vec![0.0, 0.5],
                    values: vec![c(1.0, 0.0)],
                },
            },
        ])
        .unwrap();
        let at_03 = f.circle_restriction(0.3);
        assert!((at_03.coeff(1) - c(0.3, 0.0)).norm() < 1e-15);
        assert!((at_03.coeff(-2) - c(1.0, 0.0)).norm() < 1e-15);
        let at_07 = f.circle_restriction(0.7);
        assert!(at_07.coeff(-2).norm() < 1e-15);
        assert!((f.support_hi() - 1.0).abs() < 1e-15);
    }
}
