//! Function-spec files: a self-describing JSON record that parses into a
//! `RadialFourierFunction`. Parse errors carry line/column positions.

use bergman_core::disc::{Mode, RadialFourierFunction, RadialProfile};
use num_complex::Complex64 as C64;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// Radially constant modes: f(r e^{it}) = sum a_n e^{int}.
    TrigPoly { modes: Vec<CoefficientEntry> },
    /// Indicator annuli (or general piecewise-constant profiles) per mode.
    AnnulusMode { modes: Vec<AnnulusEntry> },
    /// Smooth bumps with a central plateau fraction per mode.
    BumpMode { modes: Vec<BumpEntry> },
    /// Taylor coefficients of an analytic function.
    Taylor { coefficients: Vec<ComplexEntry> },
    /// Radially sampled profiles, linearly interpolated.
    Sampled { modes: Vec<SampledEntry> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientEntry {
    pub n: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusEntry {
    pub n: i64,
    /// Single annulus [lo, hi) ...
    #[serde(default)]
    pub lo: Option<f64>,
    #[serde(default)]
    pub hi: Option<f64>,
    #[serde(default)]
    pub re: Option<f64>,
    #[serde(default)]
    pub im: f64,
    /// ... or a general breakpoint/value list.
    #[serde(default)]
    pub breakpoints: Option<Vec<f64>>,
    #[serde(default)]
    pub values: Option<Vec<ComplexEntry>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpEntry {
    pub n: i64,
    pub lo: f64,
    pub hi: f64,
    /// Fraction of the annulus covered by the plateau, in (0, 1).
    pub plateau: f64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledEntry {
    pub n: i64,
    pub nodes: Vec<f64>,
    pub values: Vec<ComplexEntry>,
}

/// [re, im] pair.
pub type ComplexEntry = [f64; 2];

impl FunctionSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| {
            if e.line() > 0 {
                format!("spec parse error at line {} column {}: {e}", e.line(), e.column())
            } else {
                format!("spec parse error: {e}")
            }
        })
    }

    pub fn into_function(self) -> Result<RadialFourierFunction, String> {
        let modes = match self {
            FunctionSpec::TrigPoly { modes } => modes
                .into_iter()
                .map(|entry| Mode {
                    n: entry.n,
                    profile: RadialProfile::Polynomial {
                        terms: vec![(0, C64::new(entry.re, entry.im))],
                    },
                })
                .collect(),
            FunctionSpec::AnnulusMode { modes } => modes
                .into_iter()
                .map(|entry| {
                    let profile = match (entry.breakpoints, entry.values) {
                        (Some(edges), Some(values)) => RadialProfile::PiecewiseConstant {
                            edges,
                            values: values.iter().map(|[re, im]| C64::new(*re, *im)).collect(),
                        },
                        (None, None) => {
                            let lo = entry.lo.ok_or("annulus mode needs lo/hi or breakpoints/values")?;
                            let hi = entry.hi.ok_or("annulus mode needs lo/hi or breakpoints/values")?;
                            let re = entry.re.ok_or("annulus mode needs an amplitude re")?;
                            RadialProfile::PiecewiseConstant {
                                edges: vec![lo, hi],
                                values: vec![C64::new(re, entry.im)],
                            }
                        }
                        _ => return Err("field breakpoints requires values and vice versa".to_string()),
                    };
                    Ok(Mode { n: entry.n, profile })
                })
                .collect::<Result<Vec<_>, String>>()?,
            FunctionSpec::BumpMode { modes } => modes
                .into_iter()
                .map(|entry| {
                    if !(0.0 < entry.plateau && entry.plateau < 1.0) {
                        return Err(format!("plateau fraction {} outside (0, 1)", entry.plateau));
                    }
                    let margin = 0.5 * (1.0 - entry.plateau) * (entry.hi - entry.lo);
                    Ok(Mode {
                        n: entry.n,
                        profile: RadialProfile::Bump {
                            lo: entry.lo,
                            plateau_lo: entry.lo + margin,
                            plateau_hi: entry.hi - margin,
                            hi: entry.hi,
                            amplitude: C64::new(entry.re, entry.im),
                        },
                    })
                })
                .collect::<Result<Vec<_>, String>>()?,
            FunctionSpec::Taylor { coefficients } => coefficients
                .into_iter()
                .enumerate()
                .map(|(k, [re, im])| Mode {
                    n: k as i64,
                    profile: RadialProfile::Polynomial {
                        terms: vec![(k as u32, C64::new(re, im))],
                    },
                })
                .collect(),
            FunctionSpec::Sampled { modes } => modes
                .into_iter()
                .map(|entry| Mode {
                    n: entry.n,
                    profile: RadialProfile::Sampled {
                        nodes: entry.nodes,
                        values: entry.values.iter().map(|[re, im]| C64::new(*re, *im)).collect(),
                    },
                })
                .collect(),
        };
        RadialFourierFunction::new(modes).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_spec_round_trip() {
        let text = r#"{"kind": "annulus-mode", "modes": [{"n": 1, "lo": 0.5, "hi": 1.0, "re": 1.0}]}"#;
        let f = FunctionSpec::parse(text).unwrap().into_function().unwrap();
        assert_eq!(f.modes().len(), 1);
        assert_eq!(f.modes()[0].n, 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        // Unclosed array: a syntax error with a tracked position.
        let err = FunctionSpec::parse("{\"kind\": \"taylor\",\n  \"coefficients\": [[1.0, 0.0]").unwrap_err();
        assert!(err.contains("line 2"), "{err}");
        let unknown = FunctionSpec::parse(r#"{"kind": "taylor", "coefficients": [], "extra": 1}"#).unwrap_err();
        assert!(unknown.contains("extra"), "{unknown}");
    }

    #[test]
    fn taylor_spec_becomes_monomial_profiles() {
        let text = r#"{"kind": "taylor", "coefficients": [[1.0, 0.0], [0.0, 0.5]]}"#;
        let f = FunctionSpec::parse(text).unwrap().into_function().unwrap();
        assert_eq!(f.modes().len(), 2);
        let at = f.eval(0.5, 0.0);
        assert!((at - C64::new(1.0, 0.25)).norm() < 1e-15);
    }
}
