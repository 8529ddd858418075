//! One theorem check = one `BoundReport`: the two sides, the margin, the
//! parameters, and a quadrature-error estimate, serializable as a single
//! stable-order record line.

/// Relative slack separating quadrature noise from genuine violations.
pub const EPS_REPORT: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Which theorem or identity this instance checks.
    pub theorem: &'static str,
    /// Parameter record in stable order.
    pub params: Vec<(&'static str, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    /// Estimated quadrature error in the dominated side.
    pub quadrature_error: f64,
    /// The relative slack that `pass` was decided with.
    pub slack: f64,
    /// Branch taken, typo flags, or divergence notes.
    pub note: Option<String>,
}

impl BoundReport {
    /// Pass iff lhs <= rhs (1 + slack), with the default report slack.
    pub fn evaluate(
        theorem: &'static str,
        params: Vec<(&'static str, f64)>,
        lhs: f64,
        rhs: f64,
        quadrature_error: f64,
    ) -> Self {
        let pass = lhs <= rhs * (1.0 + EPS_REPORT) + f64::MIN_POSITIVE;
        Self {
            theorem,
            params,
            lhs,
            rhs,
            pass,
            quadrature_error,
            slack: EPS_REPORT,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    /// One self-describing line, keys in fixed order, floats in round-trip
    /// scientific notation. Diff-able across runs.
    pub fn record_line(&self) -> String {
        use std::fmt::Write;
        let mut line = format!("check={}", self.theorem);
        for (name, value) in &self.params {
            let _ = write!(line, " {name}={value:e}");
        }
        let _ = write!(
            line,
            " lhs={:e} rhs={:e} margin={:e} quad_err={:e} slack={:e} pass={}",
            self.lhs,
            self.rhs,
            self.margin(),
            self.quadrature_error,
            self.slack,
            self.pass
        );
        if let Some(note) = &self.note {
            let _ = write!(line, " note={:?}", note);
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule_uses_relative_slack() {
        let ok = BoundReport::evaluate("t", vec![], 1.0 + 0.5e-7, 1.0, 0.0);
        assert!(ok.pass);
        let bad = BoundReport::evaluate("t", vec![], 1.0 + 2e-7, 1.0, 0.0);
        assert!(!bad.pass);
        // Zero-vs-zero passes.
        assert!(BoundReport::evaluate("t", vec![], 0.0, 0.0, 0.0).pass);
    }

    #[test]
    fn record_line_is_stable() {
        let report = BoundReport::evaluate(
            "demo",
            vec![("p", 2.0), ("r", 0.5)],
            1.0,
            2.0,
            1e-12,
        );
        let line = report.record_line();
        assert_eq!(
            line,
            "check=demo p=2e0 r=5e-1 lhs=1e0 rhs=2e0 margin=1e0 quad_err=1e-12 slack=1e-7 pass=true"
        );
    }
}
