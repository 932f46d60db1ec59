//! Common interface for the univariate laws handled by the crate.

/// A probability law on the line (Lebesgue) or on the integers (counting).
pub trait Law {
    /// `E f(X)`. `kinks` lists points where `f` fails to be smooth so that
    /// quadrature-backed implementations can split there.
    fn expect(&self, f: &dyn Fn(f64) -> f64, kinks: &[f64]) -> f64;

    fn mean(&self) -> f64 {
        self.expect(&|x| x, &[])
    }

    /// Essential supremum of the density with respect to the reference measure.
    fn max_density(&self) -> f64;

    fn variance(&self) -> f64 {
        let mu = self.mean();
        self.expect(&|x| (x - mu) * (x - mu), &[])
    }

    /// `E|X - EX|^p`.
    fn central_abs_moment(&self, p: f64) -> f64 {
        let mu = self.mean();
        self.expect(&|x| (x - mu).abs().powf(p), &[mu])
    }
}

/// One piece `lo < x < hi` on which `log f(x) = log_at_anchor + slope * (x - anchor)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearPiece {
    pub lo: f64,
    pub hi: f64,
    pub anchor: f64,
    pub log_at_anchor: f64,
    pub slope: f64,
}

impl LogLinearPiece {
    pub fn log_density(&self, x: f64) -> f64 {
        self.log_at_anchor + self.slope * (x - self.anchor)
    }

    pub fn density(&self, x: f64) -> f64 {
        self.log_density(x).exp()
    }
}

/// Continuous laws whose density is log-linear on finitely many intervals
/// and zero elsewhere.
pub trait PiecewiseLogLinear: Law {
    /// Pieces in increasing order with disjoint interiors.
    fn pieces(&self) -> Vec<LogLinearPiece>;
}
