//! Fixed-precision rendering shared by every report.

use penner_core::poly::IntPolynomial;
use penner_core::roots::minimal_polynomial;
use penner_core::RootApproximation;

/// Degree cap for printing an exact minimal polynomial.
pub const MAX_MINPOLY_DEGREE: usize = 16;

/// `x` to 10 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (9 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Short scientific form for error radii and gaps.
pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// Minimal polynomial of a certified root of `p`, when small enough to print.
pub fn minpoly(p: &IntPolynomial, root: &RootApproximation) -> Option<String> {
    minimal_polynomial(p, root, MAX_MINPOLY_DEGREE).map(|f| f.to_string())
}

/// Aligned `label  value` lines.
pub struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn row(&mut self, label: &str, value: impl Into<String>) -> &mut Self {
        self.rows.push((label.to_string(), value.into()));
        self
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|(l, v)| format!("{l:<width$}  {v}\n"))
            .collect()
    }
}
