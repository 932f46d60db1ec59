//! Continuous asymmetric Laplace laws and interval geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::{Law, LogLinearPiece, PiecewiseLogLinear};
use crate::quad::{integrate_with_points, QuadOptions};

/// Asymmetric Laplace law with left scale `lambda1`, right scale `lambda2`
/// and mode `mode`:
///
/// `f(x) = exp(-(mode - x)/lambda1) / (lambda1 + lambda2)` for `x <= mode`,
/// `f(x) = exp(-(x - mode)/lambda2) / (lambda1 + lambda2)` for `x > mode`.
///
/// A zero scale removes the corresponding half line (`lambda1 = 0` keeps
/// `[mode, inf)`, `lambda2 = 0` keeps `(-inf, mode]`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymLaplaceC {
    pub lambda1: f64,
    pub lambda2: f64,
    pub mode: f64,
}

impl AsymLaplaceC {
    pub fn new(lambda1: f64, lambda2: f64, mode: f64) -> Result<Self> {
        let ok = lambda1 >= 0.0
            && lambda2 >= 0.0
            && lambda1 + lambda2 > 0.0
            && lambda1.is_finite()
            && lambda2.is_finite()
            && mode.is_finite();
        if !ok {
            return Err(Error::InvalidParameters(format!(
                "asymmetric Laplace needs lambda1, lambda2 >= 0 with positive sum (got {lambda1}, {lambda2}, mode {mode})"
            )));
        }
        Ok(AsymLaplaceC { lambda1, lambda2, mode })
    }

    /// Mean-zero member with maximum density `max` and right scale
    /// `lambda2 in [0, 1/max]`.
    pub fn mean_zero(max: f64, lambda2: f64) -> Result<Self> {
        if !(max > 0.0) {
            return Err(Error::InvalidParameters(format!("maximum must be positive, got {max}")));
        }
        let total = 1.0 / max;
        if lambda2 < 0.0 || lambda2 > total * (1.0 + 1e-15) {
            return Err(Error::OutOfRange(format!("lambda2 = {lambda2} outside [0, {total}]")));
        }
        let lambda2 = lambda2.min(total);
        let lambda1 = (total - lambda2).max(0.0);
        Self::new(lambda1, lambda2, lambda1 - lambda2)
    }

    /// Exponential law with rate `max` started at `start`.
    pub fn exponential(max: f64, start: f64) -> Result<Self> {
        Self::new(0.0, 1.0 / max, start)
    }

    pub fn max_value(&self) -> f64 {
        1.0 / (self.lambda1 + self.lambda2)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let y = x - self.mode;
        let m = self.max_value();
        if y < 0.0 {
            if self.lambda1 == 0.0 { 0.0 } else { m * (y / self.lambda1).exp() }
        } else if y > 0.0 {
            if self.lambda2 == 0.0 { 0.0 } else { m * (-y / self.lambda2).exp() }
        } else {
            m
        }
    }

    /// `E exp(t X)`, defined for `-1/lambda1 < t < 1/lambda2`. The location
    /// enters as the factor `exp(t * mode)`.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        let left = 1.0 + t * self.lambda1;
        let right = 1.0 - t * self.lambda2;
        if !(left > 0.0 && right > 0.0) {
            return Err(Error::Domain(format!(
                "mgf argument {t} outside (-1/{}, 1/{})",
                self.lambda1, self.lambda2
            )));
        }
        Ok((t * self.mode).exp() / (left * right))
    }

    /// `(mean, variance) = (mode + lambda2 - lambda1, lambda1^2 + lambda2^2)`.
    pub fn mean_var(&self) -> (f64, f64) {
        (
            self.mode + self.lambda2 - self.lambda1,
            self.lambda1 * self.lambda1 + self.lambda2 * self.lambda2,
        )
    }

    /// `{pdf > t} = (mode - lambda1 L, mode + lambda2 L)` with `L = log(M/t)`.
    pub fn superlevel_set(&self, t: f64) -> Result<Interval> {
        let m = self.max_value();
        if !(t > 0.0 && t < m) {
            return Err(Error::Domain(format!("level {t} must lie in (0, {m})")));
        }
        let level = (m / t).ln();
        Ok(Interval::new(self.mode - self.lambda1 * level, self.mode + self.lambda2 * level))
    }

    /// Measure of `[-a, a]^c` intersected with `{pdf > t}`; the law must be mean zero.
    pub fn tail_superlevel_measure(&self, a: f64, t: f64) -> Result<f64> {
        let (mean, _) = self.mean_var();
        if mean.abs() > 1e-9 * (self.lambda1 + self.lambda2) {
            return Err(Error::Domain(format!("law must be mean-centered, mean is {mean}")));
        }
        if a < 0.0 {
            return Err(Error::Domain(format!("half-width {a} must be nonnegative")));
        }
        let set = self.superlevel_set(t)?;
        let half = 0.5 * set.measure();
        let inside = if a == 0.0 || half == 0.0 {
            0.0
        } else {
            interval_overlap(a, half, set.center())
        };
        Ok((set.measure() - inside).max(0.0))
    }
}

impl Law for AsymLaplaceC {
    fn expect(&self, f: &dyn Fn(f64) -> f64, kinks: &[f64]) -> f64 {
        let opts = QuadOptions::precise();
        let m = self.max_value();
        let mut total = 0.0;
        // Each half line is integrated in units of its own scale against e^{-v}.
        if self.lambda1 > 0.0 {
            let l = self.lambda1;
            let breaks: Vec<f64> = kinks.iter().filter(|&&k| k < self.mode).map(|&k| (self.mode - k) / l).collect();
            let q = integrate_with_points(|v| f(self.mode - l * v) * (-v).exp(), 0.0, f64::INFINITY, &breaks, opts);
            total += m * l * q.value;
        }
        if self.lambda2 > 0.0 {
            let l = self.lambda2;
            let breaks: Vec<f64> = kinks.iter().filter(|&&k| k > self.mode).map(|&k| (k - self.mode) / l).collect();
            let q = integrate_with_points(|v| f(self.mode + l * v) * (-v).exp(), 0.0, f64::INFINITY, &breaks, opts);
            total += m * l * q.value;
        }
        total
    }

    fn mean(&self) -> f64 {
        self.mean_var().0
    }

    fn variance(&self) -> f64 {
        self.mean_var().1
    }

    fn max_density(&self) -> f64 {
        self.max_value()
    }
}

impl PiecewiseLogLinear for AsymLaplaceC {
    fn pieces(&self) -> Vec<LogLinearPiece> {
        let log_max = self.max_value().ln();
        let mut out = Vec::with_capacity(2);
        if self.lambda1 > 0.0 {
            out.push(LogLinearPiece {
                lo: f64::NEG_INFINITY,
                hi: self.mode,
                anchor: self.mode,
                log_at_anchor: log_max,
                slope: 1.0 / self.lambda1,
            });
        }
        if self.lambda2 > 0.0 {
            out.push(LogLinearPiece {
                lo: self.mode,
                hi: f64::INFINITY,
                anchor: self.mode,
                log_at_anchor: log_max,
                slope: -1.0 / self.lambda2,
            });
        }
        out
    }
}

/// Closed interval `[lo, hi]`; `lo == hi` encodes the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Interval { lo, hi }
    }

    pub fn empty_at(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn measure(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if hi <= lo { Interval::empty_at(lo) } else { Interval { lo, hi } }
    }
}

/// `|[-a, a] ∩ [x - b, x + b]|` for `a, b > 0`.
pub fn interval_overlap(a: f64, b: f64, x: f64) -> f64 {
    let d = x.abs();
    let gap = (b - a).abs();
    if d <= gap {
        2.0 * a.min(b)
    } else if d <= a + b {
        a + b - d
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    fn quad_moment(d: &AsymLaplaceC, g: impl Fn(f64) -> f64) -> f64 {
        let fx = |x: f64| g(x) * d.pdf(x);
        crate::quad::integrate_with_points(fx, f64::NEG_INFINITY, f64::INFINITY, &[d.mode], QuadOptions::precise()).value
    }

    /// Measure of `{pdf > t}` by scanning a grid and bisecting each transition.
    fn scan_measure(f: impl Fn(f64) -> f64, t: f64, lo: f64, hi: f64) -> f64 {
        let n = 20_000;
        let h = (hi - lo) / n as f64;
        let above = |x: f64| f(x) > t;
        let refine = |mut a: f64, mut b: f64| {
            let start = above(a);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if above(m) == start { a = m } else { b = m }
            }
            0.5 * (a + b)
        };
        let mut total = 0.0;
        let mut run_start = if above(lo) { Some(lo) } else { None };
        for i in 0..n {
            let (a, b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            if above(a) != above(b) {
                let x = refine(a, b);
                match run_start.take() {
                    Some(s) => total += x - s,
                    None => run_start = Some(x),
                }
            }
        }
        if let Some(s) = run_start {
            total += hi - s;
        }
        total
    }

    #[test]
    fn pdf_examples() {
        let d = AsymLaplaceC::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(d.pdf(0.0), 0.5);
        let e = AsymLaplaceC::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(e.pdf(-1.0), 0.0);
        assert_eq!(e.pdf(0.0), 1.0);
        let r = AsymLaplaceC::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(r.pdf(1e-9), 0.0);
        let a = AsymLaplaceC::new(1.0, 2.0, 0.0).unwrap();
        assert!((a.pdf(2.0) - (-1f64).exp() / 3.0).abs() < 1e-15);
        assert!((a.pdf(2.0) - 0.122_626).abs() < 1e-6);
        assert!((quad_moment(&a, |_| 1.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_degenerate_scales() {
        assert!(AsymLaplaceC::new(0.0, 0.0, 0.0).is_err());
        assert!(AsymLaplaceC::new(-1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn mgf_examples() {
        let d = AsymLaplaceC::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(d.mgf(0.0).unwrap(), 1.0);
        assert!(matches!(d.mgf(1.0), Err(Error::Domain(_))));
        assert!(matches!(d.mgf(-1.0), Err(Error::Domain(_))));
        let a = AsymLaplaceC::new(1.0, 2.0, 0.0).unwrap();
        let oracle = quad_moment(&a, |x| (0.1 * x).exp());
        let closed = a.mgf(0.1).unwrap();
        assert!((closed - 1.0 / (1.1 * 0.8)).abs() < 1e-14);
        assert!((closed - oracle).abs() < 1e-8, "{closed} vs {oracle}");
    }

    #[test]
    fn mgf_second_derivative_gives_second_moment() {
        let a = AsymLaplaceC::new(0.7, 1.3, 0.0).unwrap();
        let h = 1e-3;
        let d2 = (a.mgf(h).unwrap() - 2.0 * a.mgf(0.0).unwrap() + a.mgf(-h).unwrap()) / (h * h);
        let (m, v) = a.mean_var();
        assert!((d2 - (m * m + v)).abs() < 1e-5);
    }

    #[test]
    fn mean_var_examples() {
        assert_eq!(AsymLaplaceC::new(1.0, 1.0, 0.0).unwrap().mean_var(), (0.0, 2.0));
        assert_eq!(AsymLaplaceC::new(0.0, 1.0, 0.0).unwrap().mean_var(), (1.0, 1.0));
        let d = AsymLaplaceC::new(1.0, 2.0, 5.0).unwrap();
        assert_eq!(d.mean_var(), (6.0, 5.0));
        let mean = quad_moment(&d, |x| x);
        let var = quad_moment(&d, |x| (x - mean).powi(2));
        assert!((mean - 6.0).abs() < 1e-9 && (var - 5.0).abs() < 1e-8);
    }

    #[test]
    fn law_expectation_matches_closed_form() {
        let d = AsymLaplaceC::new(0.4, 2.5, -1.0).unwrap();
        let (mean, var) = d.mean_var();
        assert!((d.expect(&|_| 1.0, &[]) - 1.0).abs() < 1e-12);
        assert!((d.expect(&|x| x, &[]) - mean).abs() < 1e-10);
        assert!((d.expect(&|x| (x - mean).powi(2), &[]) - var).abs() < 1e-9);
    }

    #[test]
    fn superlevel_examples() {
        let d = AsymLaplaceC::new(1.0, 1.0, 0.0).unwrap();
        let s = d.superlevel_set((-1f64).exp() / 2.0).unwrap();
        assert!((s.lo + 1.0).abs() < 1e-15 && (s.hi - 1.0).abs() < 1e-15);
        let near = d.superlevel_set(0.5 * (1.0 - 1e-15)).unwrap();
        assert!(near.measure() < 1e-14 && near.center().abs() < 1e-14);
        assert!(d.superlevel_set(0.5).is_err());
        assert!(d.superlevel_set(0.0).is_err());

        for &(l1, l2, m) in &[(1.0, 2.0, 0.3), (0.0, 0.5, -1.0), (3.0, 0.0, 2.0), (0.2, 0.7, 0.0)] {
            let d = AsymLaplaceC::new(l1, l2, m).unwrap();
            let t = d.max_value() / std::f64::consts::E;
            let s = d.superlevel_set(t).unwrap();
            assert!((s.measure() - 1.0 / d.max_value()).abs() < 1e-12);
            let scan = scan_measure(|x| d.pdf(x), t, m - 20.0, m + 20.0);
            assert!((scan - 1.0 / d.max_value()).abs() < 1e-6, "{scan}");
        }
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(interval_overlap(1.0, 1.0, 0.0), 2.0);
        assert_eq!(interval_overlap(1.0, 2.0, 3.0), 0.0);
        assert_eq!(interval_overlap(1.0, 2.0, 2.0), 1.0);
        let direct = Interval::new(-1.0, 1.0).intersect(&Interval::new(0.0, 4.0)).measure();
        assert_eq!(direct, 1.0);
    }

    #[test]
    fn tail_measure_examples() {
        let d = AsymLaplaceC::mean_zero(0.8, 0.3).unwrap();
        let t = 0.2;
        let full = (1.0 / 0.8) * (0.8f64 / t).ln();
        assert!((d.tail_superlevel_measure(0.0, t).unwrap() - full).abs() < 1e-13);

        let sym = AsymLaplaceC::mean_zero(0.8, 0.5 / 0.8).unwrap();
        assert_eq!(sym.tail_superlevel_measure(100.0, t).unwrap(), 0.0);

        let expo = AsymLaplaceC::mean_zero(1.0, 1.0).unwrap();
        assert_eq!(expo.mode, -1.0);
        let t = (-2f64).exp();
        let value = expo.tail_superlevel_measure(0.5, t).unwrap();
        let scan = scan_measure(|x| if x.abs() > 0.5 { expo.pdf(x) } else { 0.0 }, t, -30.0, 30.0);
        assert!((value - scan).abs() < 1e-6, "{value} vs {scan}");
        assert!((value - 1.0).abs() < 1e-12);

        let shifted = AsymLaplaceC::new(1.0, 1.0, 0.5).unwrap();
        assert!(shifted.tail_superlevel_measure(0.5, 0.1).is_err());
    }

    #[test]
    fn normalization_by_quadrature() {
        for &(l1, l2) in &[(0.0, 1.0), (1.0, 0.0), (0.3, 7.0), (10.0, 10.0), (0.01, 4.0)] {
            let d = AsymLaplaceC::new(l1, l2, 1.5).unwrap();
            let total = integrate(|x| d.pdf(x), f64::NEG_INFINITY, 1.5, QuadOptions::precise()).value
                + integrate(|x| d.pdf(x), 1.5, f64::INFINITY, QuadOptions::precise()).value;
            assert!((total - 1.0).abs() < 1e-8, "{l1} {l2}: {total}");
        }
    }
}
