//! Orlicz norms, subfactorials and the sharp absolute-central-moment bounds.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::law::Law;
use crate::quad::{integrate, integrate_with_points, QuadOptions};

/// A Young function: strictly increasing, convex, vanishing at zero.
#[derive(Clone)]
pub struct YoungFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    descriptor: String,
    pub strictly_increasing: bool,
    pub convex: bool,
    pub zero_at_zero: bool,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction")
            .field("descriptor", &self.descriptor)
            .field("strictly_increasing", &self.strictly_increasing)
            .field("convex", &self.convex)
            .field("zero_at_zero", &self.zero_at_zero)
            .finish()
    }
}

impl YoungFunction {
    /// Wraps `eval`, recording the sampled finite-difference checks on `[0, 10]`.
    pub fn new(descriptor: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let n = 2000;
        let h = 10.0 / n as f64;
        let values: Vec<f64> = (0..=n).map(|i| eval(i as f64 * h)).collect();
        let zero_at_zero = values[0] == 0.0;
        let strictly_increasing = values.windows(2).all(|w| w[1] > w[0]);
        let convex = values.windows(3).all(|w| {
            let scale = w[0].abs().max(w[2].abs()).max(1.0);
            w[2] - 2.0 * w[1] + w[0] >= -1e-12 * scale
        });
        YoungFunction {
            eval: Arc::new(eval),
            descriptor: descriptor.into(),
            strictly_increasing,
            convex,
            zero_at_zero,
        }
    }

    /// `x -> x^p`, `p >= 1`.
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::Domain(format!("power Young function needs p >= 1, got {p}")));
        }
        Ok(Self::new(format!("p={p}"), move |x: f64| x.powf(p)))
    }

    pub fn is_valid(&self) -> bool {
        self.strictly_increasing && self.convex && self.zero_at_zero
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }
}

const MAX_ITER: usize = 200;

fn orlicz_norm_about(w: &dyn Law, center: f64, psi: &YoungFunction, tol: f64) -> Result<f64> {
    if !psi.is_valid() {
        return Err(Error::InvalidParameters(format!("`{}` is not a Young function", psi.descriptor())));
    }
    let spread = w.expect(&|x| (x - center).abs(), &[center]);
    if spread == 0.0 {
        return Ok(0.0);
    }
    let level = |t: f64| w.expect(&|x| psi.eval((x - center).abs() / t), &[center]);
    let mut checked: Vec<(f64, f64)> = Vec::new();
    let mut record = |t: f64, v: f64| -> Result<()> {
        // The map t -> E psi(|W|/t) is non-increasing; flag any evaluated pair that disagrees.
        for &(s, u) in &checked {
            let violated = (s < t && u < v - 1e-9 * v.abs().max(1.0)) || (s > t && u > v + 1e-9 * u.abs().max(1.0));
            if violated {
                return Err(Error::Numerical(format!("E psi(|W|/t) increased between t={s} and t={t}")));
            }
        }
        checked.push((t, v));
        Ok(())
    };

    let mut hi = 1.0;
    let mut at_hi = level(hi);
    record(hi, at_hi)?;
    let mut doublings = 0;
    while !(at_hi <= 1.0) {
        hi *= 2.0;
        at_hi = level(hi);
        record(hi, at_hi)?;
        doublings += 1;
        if doublings > 1100 {
            return Err(Error::Divergence);
        }
    }
    let mut lo = hi / 2.0;
    let mut at_lo = level(lo);
    record(lo, at_lo)?;
    let mut halvings = 0;
    while at_lo <= 1.0 {
        hi = lo;
        at_hi = at_lo;
        lo /= 2.0;
        at_lo = level(lo);
        record(lo, at_lo)?;
        halvings += 1;
        if halvings > 1100 {
            return Err(Error::Numerical("norm underflows".into()));
        }
    }
    for _ in 0..MAX_ITER {
        if (at_hi - 1.0).abs() <= tol {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = level(mid);
        record(mid, v)?;
        if v <= 1.0 {
            hi = mid;
            at_hi = v;
        } else {
            lo = mid;
        }
    }
    if (at_hi - 1.0).abs() <= tol {
        Ok(hi)
    } else {
        Err(Error::Numerical(format!(
            "bisection stopped at t={hi} with E psi(|W|/t) = {at_hi} (tolerance {tol})"
        )))
    }
}

/// `inf { t > 0 : E psi(|W| / t) <= 1 }` by bisection.
pub fn orlicz_norm(w: &dyn Law, psi: &YoungFunction, tol: f64) -> Result<f64> {
    orlicz_norm_about(w, 0.0, psi, tol)
}

/// Orlicz norm of `W - E W`.
pub fn orlicz_norm_centered(w: &dyn Law, psi: &YoungFunction, tol: f64) -> Result<f64> {
    orlicz_norm_about(w, w.mean(), psi, tol)
}

/// Number of derangements of `n` elements, `!n = n !(n-1) + (-1)^n`.
pub fn subfactorial(n: u32) -> Result<u64> {
    if n > 20 {
        return Err(Error::Overflow(format!("!{n} exceeds 64-bit range")));
    }
    let mut d: u64 = 1;
    for k in 1..=n as u64 {
        d = if k % 2 == 0 { k * d + 1 } else { k * d - 1 };
    }
    Ok(d)
}

/// `∫_0^∞ (x - 1)^n e^{-x} dx` by quadrature.
pub fn subfactorial_integral(n: u32) -> f64 {
    let nf = n as i32;
    integrate_with_points(|x: f64| (x - 1.0).powi(nf) * (-x).exp(), 0.0, f64::INFINITY, &[1.0], QuadOptions::precise())
        .value
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Lower and upper bounds for `M^p(X) E|X - EX|^p` over log-concave `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcmBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `lower = 1/(2^p (p+1))`, `upper = Γ(1+p)/e + ∫_0^1 (1-x)^p e^{-x} dx`.
pub fn acm_bounds(p: f64) -> Result<AcmBounds> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("moment order must be at least 1, got {p}")));
    }
    let lower = 1.0 / (2f64.powf(p) * (p + 1.0));
    let gamma_term = if p.fract() == 0.0 && p <= 170.0 { factorial(p as u32) } else { gamma(1.0 + p) };
    let tail = integrate(|x: f64| (1.0 - x).powf(p) * (-x).exp(), 0.0, 1.0, QuadOptions::precise()).value;
    Ok(AcmBounds { lower, upper: gamma_term / std::f64::consts::E + tail })
}

/// Upper bound for integer `n` via derangements: `n!/e + (-1)^n (!n - n!/e)`,
/// which is exactly `!n` for even `n`.
pub fn acm_upper_integer(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("moment order must be at least 1".into()));
    }
    let d = subfactorial(n)? as f64;
    if n % 2 == 0 {
        Ok(d)
    } else {
        Ok(2.0 * factorial(n) / std::f64::consts::E - d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuous::AsymLaplaceC;
    use crate::logconcave::{DiscretePMF, GridDensity};
    use std::f64::consts::E;

    /// Derangement count by enumerating permutations.
    fn derangements(n: usize) -> u64 {
        fn go(pos: usize, n: usize, used: &mut Vec<bool>) -> u64 {
            if pos == n {
                return 1;
            }
            let mut c = 0;
            for v in 0..n {
                if !used[v] && v != pos {
                    used[v] = true;
                    c += go(pos + 1, n, used);
                    used[v] = false;
                }
            }
            c
        }
        go(0, n, &mut vec![false; n])
    }

    #[test]
    fn subfactorial_values() {
        assert_eq!(subfactorial(0).unwrap(), 1);
        assert_eq!(subfactorial(2).unwrap(), 1);
        assert_eq!(subfactorial(3).unwrap(), 2);
        assert_eq!(subfactorial(4).unwrap(), 9);
        for n in 1..=8 {
            assert_eq!(subfactorial(n).unwrap(), derangements(n as usize));
        }
        assert_eq!(subfactorial(20).unwrap(), 895_014_631_192_902_121);
        assert!(matches!(subfactorial(21), Err(Error::Overflow(_))));
    }

    #[test]
    fn subfactorial_integral_agrees() {
        for n in 0..=12 {
            let exact = subfactorial(n).unwrap() as f64;
            let q = subfactorial_integral(n);
            assert!((q - exact).abs() <= 1e-9 * exact.max(1.0), "n={n}: {q} vs {exact}");
        }
    }

    #[test]
    fn acm_bound_examples() {
        let b2 = acm_bounds(2.0).unwrap();
        assert!((b2.lower - 1.0 / 12.0).abs() < 1e-16 && (b2.upper - 1.0).abs() < 1e-12);
        let b4 = acm_bounds(4.0).unwrap();
        assert!((b4.lower - 1.0 / 80.0).abs() < 1e-16 && (b4.upper - 9.0).abs() < 1e-11);
        let b3 = acm_bounds(3.0).unwrap();
        assert!((b3.lower - 1.0 / 32.0).abs() < 1e-16);
        let oracle = integrate_with_points(|x: f64| (x - 1.0).abs().powi(3) * (-x).exp(), 0.0, f64::INFINITY, &[1.0], QuadOptions::precise()).value;
        assert!((b3.upper - oracle).abs() < 1e-10);
        assert!((b3.upper - (12.0 / E - 2.0)).abs() < 1e-12);
        assert!(acm_bounds(0.5).is_err());
    }

    #[test]
    fn integer_route_agrees() {
        for n in 1..=12u32 {
            let q = acm_bounds(n as f64).unwrap().upper;
            let i = acm_upper_integer(n).unwrap();
            assert!((q - i).abs() <= 1e-10 * i.max(1.0), "n={n}");
            if n % 2 == 0 {
                assert_eq!(i, subfactorial(n).unwrap() as f64);
            }
        }
    }

    #[test]
    fn young_function_validation() {
        assert!(YoungFunction::power(1.0).unwrap().is_valid());
        assert!(YoungFunction::power(3.5).unwrap().is_valid());
        assert!(YoungFunction::power(0.5).is_err());
        assert!(YoungFunction::new("exp", |x: f64| x.exp_m1()).is_valid());
        assert!(!YoungFunction::new("sqrt", |x: f64| x.sqrt()).is_valid());
        assert!(!YoungFunction::new("shifted", |x: f64| x + 1.0).is_valid());
    }

    #[test]
    fn norm_examples() {
        let psi = YoungFunction::power(1.0).unwrap();
        assert_eq!(orlicz_norm(&DiscretePMF::point_mass(0), &psi, 1e-12).unwrap(), 0.0);

        let expo = AsymLaplaceC::exponential(1.0, -1.0).unwrap();
        let centered = orlicz_norm(&expo, &psi, 1e-12).unwrap();
        assert!((centered - 2.0 / E).abs() < 1e-9, "{centered}");

        let u = GridDensity::uniform(-0.5, 0.5).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0, 4.0] {
            let psi = YoungFunction::power(p).unwrap();
            let norm = orlicz_norm(&u, &psi, 1e-12).unwrap();
            let exact = (1.0 / (2f64.powf(p) * (p + 1.0))).powf(1.0 / p);
            assert!((norm - exact).abs() < 1e-10, "p={p}");
        }
    }

    #[test]
    fn norm_of_pmf_matches_moment() {
        let g = DiscretePMF::new(-2, vec![0.1, 0.3, 0.4, 0.2]).unwrap();
        let psi = YoungFunction::power(3.0).unwrap();
        let norm = orlicz_norm_centered(&g, &psi, 1e-13).unwrap();
        let m = g.moments(3.0).sigma_p.powf(1.0 / 3.0);
        assert!((norm - m).abs() < 1e-10);
    }

    #[test]
    fn homogeneity() {
        let f = crate::logconcave::gen_logconcave_c(5, &Default::default()).unwrap();
        let psi = YoungFunction::new("exp2", |x: f64| (x * x).exp_m1());
        let base = orlicz_norm(&f, &psi, 1e-12).unwrap();
        for c in [0.25, 3.0] {
            let scaled = orlicz_norm(&f.scaled(c).unwrap(), &psi, 1e-12).unwrap();
            assert!((scaled - c * base).abs() < 1e-6 * c * base);
        }
    }

    #[test]
    fn divergent_expectation_is_reported() {
        struct Heavy;
        impl Law for Heavy {
            fn expect(&self, _f: &dyn Fn(f64) -> f64, _k: &[f64]) -> f64 {
                f64::INFINITY
            }
            fn mean(&self) -> f64 {
                0.0
            }
            fn max_density(&self) -> f64 {
                1.0
            }
        }
        let psi = YoungFunction::power(2.0).unwrap();
        assert_eq!(orlicz_norm(&Heavy, &psi, 1e-9), Err(Error::Divergence));
    }
}
