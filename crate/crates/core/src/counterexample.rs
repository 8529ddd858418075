//! The boundary counterexample: a bounded disc function, vanishing at the
//! boundary under the harmonic amplitude rule, whose projection has
//! non-square-summable Taylor coefficients.
//!
//! The construction picks radii b_0 < b_1 < ... < 1 and modes m_1 < m_2 < ...
//! so every annulus carries monomial mass ∫ (m+1) r^{m+1} dr >= 1/4. The
//! recurrence squeezes 1 - b_n like 0.42^n while m_n grows like 2.4^n, so
//! radii collide in f64 near depth 45 and modes overflow u64 around depth 55.
//! The schedule therefore stores lambda_n = -ln b_n (healthy in f64 to depth
//! ~700) and modes as big integers; every mass is evaluated through
//! exp(-(m+2) lambda) closed forms. Materializing a `RadialFourierFunction`
//! is possible exactly as deep as f64 radii remain strictly increasing.

use crate::disc::{Mode, RadialFourierFunction, RadialProfile};
use crate::error::{Error, Result};
use crate::projection::FOURIER_NORMALIZATION;
#[cfg(test)]
use crate::quad;
use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use num_traits::{One, ToPrimitive, Zero};

/// One annulus of the schedule, in log-radius coordinates.
#[derive(Debug, Clone)]
pub struct ScheduleStep {
    /// 1-based step index.
    pub index: usize,
    /// Mode m_n carried by this annulus.
    pub mode: BigUint,
    /// -ln b_{n-1}; +inf for the first step (b_0 = 0).
    pub neg_log_lo: f64,
    /// -ln b_n.
    pub neg_log_hi: f64,
    /// mu_n re-evaluated from the closed form; 1/4 by construction.
    pub mass: f64,
    /// True if the mode had to be bumped to keep the sequence increasing.
    pub enforced_monotonicity: bool,
}

impl ScheduleStep {
    /// Outer radius b_n (saturates toward 1.0 in f64 at depth ~45).
    pub fn radius_hi(&self) -> f64 {
        (-self.neg_log_hi).exp()
    }

    pub fn radius_lo(&self) -> f64 {
        if self.neg_log_lo.is_infinite() {
            0.0
        } else {
            (-self.neg_log_lo).exp()
        }
    }
}

/// Mass ∫_{b_lo}^{b_hi} (m+1) r^{m+1} dr evaluated as
/// ((m+1)/(m+2)) (e^{-(m+2) lambda_hi} - e^{-(m+2) lambda_lo}).
fn annulus_mass(mode: f64, neg_log_lo: f64, neg_log_hi: f64) -> f64 {
    let power = mode + 2.0;
    let hi = (-power * neg_log_hi).exp();
    let lo = if neg_log_lo.is_infinite() {
        0.0
    } else {
        (-power * neg_log_lo).exp()
    };
    (mode + 1.0) / power * (hi - lo)
}

/// Remaining mass from radius e^{-lambda} to 1 for mode k:
/// ((k+1)/(k+2)) (1 - e^{-(k+1) lambda}). Increasing in k.
fn tail_mass(k: f64, lambda: f64) -> f64 {
    (k + 1.0) / (k + 2.0) * (1.0 - (-(k + 1.0) * lambda).exp())
}

/// Radii and modes with the per-annulus 1/4-mass certificate.
#[derive(Debug, Clone)]
pub struct BreakpointSchedule {
    steps: Vec<ScheduleStep>,
}

impl BreakpointSchedule {
    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Worst deviation of the re-evaluated masses from 1/4.
    pub fn mass_certificate(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| (s.mass - 0.25).abs())
            .fold(0.0, f64::max)
    }

    /// Margins of the "smallest such k" condition per step n >= 2:
    /// tail_mass(m_n - 1) < 1/2 <= tail_mass(m_n), returned as
    /// (max over steps of tail(m-1) - 1/2, min over steps of tail(m) - 1/2).
    /// Steps where monotonicity enforcement fired are skipped (minimality
    /// does not hold there by construction).
    pub fn minimality_margins(&self) -> (f64, f64) {
        let mut below = f64::NEG_INFINITY;
        let mut above = f64::INFINITY;
        for pair in self.steps.windows(2) {
            let step = &pair[1];
            if step.enforced_monotonicity {
                continue;
            }
            let lambda = pair[0].neg_log_hi;
            let m = step.mode.to_f64().unwrap_or(f64::INFINITY);
            if m >= 1.0 {
                below = below.max(tail_mass(m - 1.0, lambda) - 0.5);
            }
            above = above.min(tail_mass(m, lambda) - 0.5);
        }
        (below, above)
    }

    /// The annulus index j(r) containing radius r, if any.
    pub fn annulus_of(&self, r: f64) -> Option<usize> {
        if !(0.0..1.0).contains(&r) {
            return None;
        }
        let lambda = -r.ln();
        // r in [b_{n-1}, b_n) means lambda in (lambda_n, lambda_{n-1}].
        self.steps
            .iter()
            .position(|s| lambda > s.neg_log_hi && lambda <= s.neg_log_lo)
    }
}

/// Builds the schedule to the requested depth.
///
/// Base step: b_1 = 1/sqrt(2), m_1 = 0, mass exactly 1/4. Each later step
/// takes the smallest k with tail_mass(k) >= 1/2 (bumped to m_{n-1} + 1 if
/// needed, with a flag), then solves
/// ∫_{b_n}^{b} (k+1) r^{k+1} dr = 1/4 in closed form for b_{n+1}.
pub fn build_schedule(depth: usize) -> Result<BreakpointSchedule> {
    if depth < 1 {
        return Err(Error::Domain("schedule depth must be >= 1".into()));
    }
    let mut steps = Vec::with_capacity(depth);
    let lambda1 = 0.5 * std::f64::consts::LN_2; // -ln(1/sqrt 2)
    steps.push(ScheduleStep {
        index: 1,
        mode: BigUint::zero(),
        neg_log_lo: f64::INFINITY,
        neg_log_hi: lambda1,
        mass: annulus_mass(0.0, f64::INFINITY, lambda1),
        enforced_monotonicity: false,
    });

    let mut lambda = lambda1;
    let mut prev_mode = BigUint::zero();
    for n in 2..=depth {
        let k_min = smallest_half_mass_mode(lambda);
        let candidate = &prev_mode + 1u32;
        let (mode, enforced) = if k_min > candidate {
            (k_min, false)
        } else {
            (candidate.clone(), k_min < candidate)
        };
        let kf = mode.to_f64().unwrap_or(f64::INFINITY);
        if !kf.is_finite() {
            return Err(Error::Capacity {
                achieved: n - 1,
                requested: depth,
            });
        }
        // b_{n}^{k+2} = b_{n-1}^{k+2} + (k+2)/(4(k+1))
        let power = kf + 2.0;
        let base = (-power * lambda).exp() + power / (4.0 * (kf + 1.0));
        let next_lambda = -base.ln() / power;
        if !(next_lambda > 0.0) || !next_lambda.is_finite() || next_lambda >= lambda {
            return Err(Error::Capacity {
                achieved: n - 1,
                requested: depth,
            });
        }
        steps.push(ScheduleStep {
            index: n,
            mode: mode.clone(),
            neg_log_lo: lambda,
            neg_log_hi: next_lambda,
            mass: annulus_mass(kf, lambda, next_lambda),
            enforced_monotonicity: enforced,
        });
        prev_mode = mode;
        lambda = next_lambda;
    }
    Ok(BreakpointSchedule { steps })
}

/// Smallest k >= 0 with tail_mass(k, lambda) >= 1/2, by doubling plus
/// binary search. Beyond 2^53 adjacent k are indistinguishable in f64 and
/// the result is the boundary of the numerically-satisfied region.
fn smallest_half_mass_mode(lambda: f64) -> BigUint {
    let satisfied = |k: &BigUint| tail_mass(k.to_f64().unwrap_or(f64::INFINITY), lambda) >= 0.5;
    let mut hi = BigUint::one();
    while !satisfied(&hi) {
        hi = &hi * 2u32;
    }
    let mut lo = BigUint::zero();
    while lo < hi {
        let mid = (&lo + &hi) / 2u32;
        if satisfied(&mid) {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    lo
}

/// Amplitude sequence c_1, c_2, ... for the counterexample.
#[derive(Debug, Clone)]
pub enum AmplitudeRule {
    /// c_n = 1/sqrt(n): bounded, vanishing, sum of squares = harmonic series.
    Harmonic,
    /// Explicit prefix, validated against the divergence certificate.
    Custom(Vec<f64>),
}

/// Custom sequences whose fitted square decay is steeper than n^(-gamma)
/// with gamma above this are rejected: their square sum converges by
/// p-series comparison.
const DIVERGENCE_DECAY_LIMIT: f64 = 1.05;

impl AmplitudeRule {
    pub fn amplitude(&self, n: usize) -> f64 {
        match self {
            AmplitudeRule::Harmonic => 1.0 / (n as f64).sqrt(),
            AmplitudeRule::Custom(values) => values.get(n - 1).copied().unwrap_or(0.0),
        }
    }

    /// Bounded with divergent square sum. For custom prefixes the
    /// certificate fits c_n^2 ~ C n^(-gamma) on the prefix and rejects
    /// gamma > 1 (square sum convergent by p-series comparison); zeros are
    /// rejected outright since nothing divergent can be certified from them.
    pub fn validate(&self, depth: usize) -> Result<()> {
        match self {
            AmplitudeRule::Harmonic => Ok(()),
            AmplitudeRule::Custom(values) => {
                if values.len() < depth {
                    return Err(Error::Domain(format!(
                        "custom amplitude rule supplies {} values for depth {depth}",
                        values.len()
                    )));
                }
                let mut xs = Vec::with_capacity(depth);
                let mut ys = Vec::with_capacity(depth);
                for (i, &c) in values.iter().enumerate().take(depth) {
                    if !c.is_finite() {
                        return Err(Error::Domain(format!("amplitude {} not finite", i + 1)));
                    }
                    if c == 0.0 {
                        return Err(Error::Construction(format!(
                            "divergence certificate failed: c_{} = 0; \
                             a vanishing prefix cannot certify sum |c_n|^2 = inf",
                            i + 1
                        )));
                    }
                    xs.push(((i + 1) as f64).ln());
                    ys.push((c * c).ln());
                }
                let n_pts = xs.len() as f64;
                let x_mean = xs.iter().sum::<f64>() / n_pts;
                let y_mean = ys.iter().sum::<f64>() / n_pts;
                let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
                let var: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
                let gamma = if var > 0.0 { -cov / var } else { 0.0 };
                if gamma > DIVERGENCE_DECAY_LIMIT {
                    return Err(Error::Construction(format!(
                        "divergence certificate failed: fitted |c_n|^2 decay exponent {gamma:.3} > 1; \
                         sum |c_n|^2 converges by p-series comparison"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Radial profile kind of the counterexample modes.
#[derive(Debug, Clone)]
pub enum ProfileKind {
    /// c_j times the indicator of [b_{j-1}, b_j).
    Indicator,
    /// C-infinity bumps; per-annulus plateau edges stored in log-radius
    /// coordinates, adapted so the plateau keeps at least half the mass.
    SmoothBump {
        /// (neg_log at the plateau's outer edge, neg_log at its inner edge).
        plateaus: Vec<(f64, f64)>,
        /// Final per-annulus plateau fractions after adaptation.
        fractions: Vec<f64>,
    },
}

/// The bounded function whose projection escapes square-summability.
#[derive(Debug, Clone)]
pub struct CounterexampleFunction {
    pub schedule: BreakpointSchedule,
    pub amplitudes: Vec<f64>,
    pub kind: ProfileKind,
}

/// Assembles the function f = sum_j c_j chi_{[b_{j-1}, b_j)}(r) e^{i m_j theta}.
pub fn build_function(
    schedule: BreakpointSchedule,
    rule: &AmplitudeRule,
) -> Result<CounterexampleFunction> {
    rule.validate(schedule.depth())?;
    let amplitudes = (1..=schedule.depth()).map(|n| rule.amplitude(n)).collect();
    Ok(CounterexampleFunction {
        schedule,
        amplitudes,
        kind: ProfileKind::Indicator,
    })
}

/// The smooth variant: each indicator becomes a bump supported in the open
/// annulus, equal to 1 on a central plateau. The plateau is the central
/// `plateau_fraction` of the annulus in log-radius coordinates, widened
/// per annulus until it retains at least half the annulus mass.
pub fn smooth_variant(
    schedule: BreakpointSchedule,
    rule: &AmplitudeRule,
    plateau_fraction: f64,
) -> Result<CounterexampleFunction> {
    if !(0.0 < plateau_fraction && plateau_fraction < 1.0) {
        return Err(Error::Domain(format!(
            "plateau fraction must lie in (0, 1), got {plateau_fraction}"
        )));
    }
    rule.validate(schedule.depth())?;
    let mut plateaus = Vec::with_capacity(schedule.depth());
    let mut fractions = Vec::with_capacity(schedule.depth());
    for step in schedule.steps() {
        let mode = step.mode.to_f64().unwrap_or(f64::INFINITY);
        // The first annulus starts at b_0 = 0 (lambda = inf); take its inner
        // plateau edge as the central fraction in plain radius instead.
        let lambda_lo_edge = if step.neg_log_lo.is_infinite() {
            f64::INFINITY
        } else {
            step.neg_log_lo
        };
        let mut fraction = plateau_fraction;
        let mut placed = None;
        for _ in 0..60 {
            let (pl_outer, pl_inner) =
                plateau_edges(lambda_lo_edge, step.neg_log_hi, step.radius_hi(), fraction);
            let plateau_mass = annulus_mass(mode, pl_inner, pl_outer);
            if plateau_mass >= 0.5 * step.mass {
                placed = Some((pl_outer, pl_inner, fraction));
                break;
            }
            fraction = 1.0 - 0.5 * (1.0 - fraction);
        }
        let Some((pl_outer, pl_inner, used)) = placed else {
            return Err(Error::Construction(format!(
                "plateau for annulus {} cannot reach half mass within (0, 1)",
                step.index
            )));
        };
        plateaus.push((pl_outer, pl_inner));
        fractions.push(used);
    }
    let amplitudes = (1..=schedule.depth()).map(|n| rule.amplitude(n)).collect();
    Ok(CounterexampleFunction {
        schedule,
        amplitudes,
        kind: ProfileKind::SmoothBump { plateaus, fractions },
    })
}

/// Plateau edges in lambda coordinates: the central `fraction` of the
/// annulus (lambda_hi, lambda_lo), with the unbounded first annulus handled
/// in radius space.
fn plateau_edges(lambda_lo: f64, lambda_hi: f64, radius_hi: f64, fraction: f64) -> (f64, f64) {
    if lambda_lo.is_infinite() {
        let margin = 0.5 * (1.0 - fraction) * radius_hi;
        // Inner edge at margin, outer edge at radius_hi - margin.
        (-(radius_hi - margin).ln(), -margin.ln())
    } else {
        let margin = 0.5 * (1.0 - fraction) * (lambda_lo - lambda_hi);
        (lambda_hi + margin, lambda_lo - margin)
    }
}

impl CounterexampleFunction {
    pub fn depth(&self) -> usize {
        self.schedule.depth()
    }

    /// sup over the closed annulus of |f|, per annulus: |c_j| for both kinds
    /// (the bump attains its plateau). Under the harmonic rule this sequence
    /// is strictly decreasing toward 0, which is the boundary-vanishing
    /// statement in per-annulus form.
    pub fn sup_profile(&self) -> Vec<(usize, f64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1, c.abs()))
            .collect()
    }

    /// M_infinity(r, f) on a radius grid; steps through |c_{j(r)}|.
    pub fn sup_at_radius(&self, r: f64) -> f64 {
        match self.schedule.annulus_of(r) {
            None => 0.0,
            Some(i) => match &self.kind {
                ProfileKind::Indicator => self.amplitudes[i].abs(),
                ProfileKind::SmoothBump { plateaus, .. } => {
                    let lambda = -r.ln();
                    let (pl_outer, pl_inner) = plateaus[i];
                    if lambda >= pl_outer && lambda <= pl_inner {
                        self.amplitudes[i].abs()
                    } else {
                        // Inside a ramp; bounded by the plateau value.
                        let step = &self.schedule.steps()[i];
                        let shape = ramp_shape(lambda, step, pl_outer, pl_inner);
                        self.amplitudes[i].abs() * shape
                    }
                }
            },
        }
    }

    /// Per-annulus projected-coefficient data; exact for the indicator kind,
    /// certified bounds for the smooth kind.
    pub fn projection_coefficients(&self) -> CoefficientReport {
        let rows = self
            .schedule
            .steps()
            .iter()
            .zip(&self.amplitudes)
            .map(|(step, &c)| {
                let mode = step.mode.to_f64().unwrap_or(f64::INFINITY);
                let (mass_lo, mass_hi) = match &self.kind {
                    ProfileKind::Indicator => (step.mass, step.mass),
                    ProfileKind::SmoothBump { plateaus, .. } => {
                        let (pl_outer, pl_inner) = plateaus[step.index - 1];
                        // The bump dominates the plateau indicator and is
                        // dominated by the annulus indicator.
                        (annulus_mass(mode, pl_inner, pl_outer), step.mass)
                    }
                };
                CoefficientRow {
                    index: step.index,
                    mode: step.mode.clone(),
                    amplitude: c,
                    magnitude_lower: FOURIER_NORMALIZATION * c.abs() * mass_lo,
                    magnitude_upper: FOURIER_NORMALIZATION * c.abs() * mass_hi,
                    quarter_bound: c.abs() / 4.0,
                }
            })
            .collect();
        CoefficientReport {
            rows,
            normalization: FOURIER_NORMALIZATION,
        }
    }

    /// Partial sums S_N of |coefficient|^2 against the divergent envelope
    /// sum |c_n|^2 / 16. For the smooth kind the sums use the certified
    /// coefficient lower bounds.
    pub fn divergence_report(&self, depth: usize) -> Result<DivergenceReport> {
        if depth > self.depth() {
            return Err(Error::Domain(format!(
                "report depth {depth} exceeds schedule depth {}",
                self.depth()
            )));
        }
        let coefficients = self.projection_coefficients();
        let mut partial_sums = Vec::with_capacity(depth);
        let mut envelope = Vec::with_capacity(depth);
        let mut s = 0.0;
        let mut e = 0.0;
        for row in coefficients.rows.iter().take(depth) {
            s += row.magnitude_lower * row.magnitude_lower;
            e += row.amplitude * row.amplitude / 16.0;
            partial_sums.push(s);
            envelope.push(e);
        }
        let certified = partial_sums
            .iter()
            .zip(&envelope)
            .all(|(s, e)| s + 1e-15 >= *e);
        Ok(DivergenceReport {
            partial_sums,
            envelope,
            certified,
        })
    }

    /// Materializes the representable prefix as a generic disc function.
    /// Errors once consecutive radii stop being strictly increasing in f64.
    pub fn to_radial_fourier(&self) -> Result<RadialFourierFunction> {
        let mut modes = Vec::with_capacity(self.depth());
        for (step, &c) in self.schedule.steps().iter().zip(&self.amplitudes) {
            let lo = step.radius_lo();
            let hi = step.radius_hi();
            if !(lo < hi && hi < 1.0) {
                return Err(Error::Capacity {
                    achieved: step.index - 1,
                    requested: self.depth(),
                });
            }
            let n = step.mode.to_i64().ok_or(Error::Capacity {
                achieved: step.index - 1,
                requested: self.depth(),
            })?;
            let amplitude = C64::new(c, 0.0);
            let profile = match &self.kind {
                ProfileKind::Indicator => RadialProfile::PiecewiseConstant {
                    edges: vec![lo, hi],
                    values: vec![amplitude],
                },
                ProfileKind::SmoothBump { plateaus, .. } => {
                    let (pl_outer, pl_inner) = plateaus[step.index - 1];
                    RadialProfile::Bump {
                        lo,
                        plateau_lo: (-pl_inner).exp(),
                        plateau_hi: (-pl_outer).exp(),
                        hi,
                        amplitude,
                    }
                }
            };
            modes.push(Mode { n, profile });
        }
        RadialFourierFunction::new(modes)
    }
}

fn ramp_shape(lambda: f64, step: &ScheduleStep, pl_outer: f64, pl_inner: f64) -> f64 {
    // Smooth 0 -> 1 in lambda across each ramp; only used for display and
    // only evaluated on representable annuli.
    let edge = |t: f64| {
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            let e0 = (-1.0 / t).exp();
            let e1 = (-1.0 / (1.0 - t)).exp();
            e0 / (e0 + e1)
        }
    };
    if lambda < pl_outer {
        // Between plateau and outer radius b_n.
        edge((lambda - step.neg_log_hi) / (pl_outer - step.neg_log_hi))
    } else if step.neg_log_lo.is_infinite() {
        edge((step.neg_log_lo.min(1e308) - lambda) / 1e308)
    } else {
        edge((step.neg_log_lo - lambda) / (step.neg_log_lo - pl_inner))
    }
}

/// One projected Taylor coefficient of the counterexample.
#[derive(Debug, Clone)]
pub struct CoefficientRow {
    pub index: usize,
    pub mode: BigUint,
    pub amplitude: f64,
    /// Certified |coefficient| lower bound (exact for the indicator kind).
    pub magnitude_lower: f64,
    /// Certified upper bound (equals the lower bound for indicators).
    pub magnitude_upper: f64,
    /// The coarse certificate |coefficient| >= c_n/4, guaranteed whenever the
    /// plateau keeps half the annulus mass; the indicator kind achieves c_n/2.
    pub quarter_bound: f64,
}

#[derive(Debug, Clone)]
pub struct CoefficientReport {
    pub rows: Vec<CoefficientRow>,
    pub normalization: f64,
}

#[derive(Debug, Clone)]
pub struct DivergenceReport {
    pub partial_sums: Vec<f64>,
    pub envelope: Vec<f64>,
    /// True when every partial sum dominates the envelope.
    pub certified: bool,
}

impl DivergenceReport {
    pub fn final_sum(&self) -> f64 {
        *self.partial_sums.last().unwrap_or(&0.0)
    }
}
