//! Discrete asymmetric Laplace laws on the integers and the closed forms
//! for their variance and fourth central moment at fixed maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::Law;
use crate::logconcave::DiscretePMF;

/// Two-sided geometric law
/// `P(X = n) = C p^(mode - n)` for `n <= mode`, `C q^(n - mode)` for `n >= mode`,
/// with `C = (1-p)(1-q)/(1-pq)`.
///
/// `p = 0` gives a geometric law started at the mode, `q = 0` its
/// reflection, `p = q = 0` the point mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymLaplaceD {
    pub p: f64,
    pub q: f64,
    pub mode: i64,
}

const RATIO_SLACK: f64 = 1e-12;

fn unit_ratio(name: &str, r: f64) -> Result<f64> {
    if r.is_finite() && (-RATIO_SLACK..1.0).contains(&r) {
        Ok(r.max(0.0))
    } else {
        Err(Error::OutOfRange(format!("{name} = {r} outside [0, 1)")))
    }
}

impl AsymLaplaceD {
    pub fn new(p: f64, q: f64, mode: i64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) || !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameters(format!("p, q must lie in [0, 1), got {p}, {q}")));
        }
        Ok(AsymLaplaceD { p, q, mode })
    }

    pub fn geometric(q: f64, start: i64) -> Result<Self> {
        Self::new(0.0, q, start)
    }

    pub fn normalizer(&self) -> f64 {
        (1.0 - self.p) * (1.0 - self.q) / (1.0 - self.p * self.q)
    }

    pub fn pmf(&self, n: i64) -> f64 {
        let c = self.normalizer();
        let k = n - self.mode;
        if k == 0 {
            c
        } else if k < 0 {
            c * self.p.powi((-k) as i32)
        } else {
            c * self.q.powi(k as i32)
        }
    }

    /// `(mean, variance) = (mode + (q-p)/((1-q)(1-p)), p/(1-p)^2 + q/(1-q)^2)`.
    pub fn mean_var(&self) -> (f64, f64) {
        let (p, q) = (self.p, self.q);
        let mean = self.mode as f64 + (q - p) / ((1.0 - q) * (1.0 - p));
        let var = p / ((1.0 - p) * (1.0 - p)) + q / ((1.0 - q) * (1.0 - q));
        (mean, var)
    }

    /// Truncated rendering with omitted mass (also fourth-moment weighted)
    /// below `1e-16`.
    pub fn to_pmf(&self) -> DiscretePMF {
        let (mean, _) = self.mean_var();
        let shift = (mean - self.mode as f64).abs() + 1.0;
        let reach = |r: f64| -> i64 {
            if r == 0.0 {
                return 0;
            }
            let mut k: i64 = 1;
            loop {
                let kf = k as f64;
                let bound = r.powf(kf) * (kf + shift).powi(4) * 24.0 / (1.0 - r).powi(5);
                if bound < 1e-16 || k > 200_000 {
                    return k;
                }
                k += 1;
            }
        };
        let left = reach(self.p);
        let right = reach(self.q);
        let offset = self.mode - left;
        let weights = (offset..=self.mode + right).map(|n| self.pmf(n)).collect();
        DiscretePMF::new_unchecked(offset, weights)
    }
}

impl Law for AsymLaplaceD {
    /// Sums outward from the mode until the ratio power drops below `1e-18`
    /// and the current term is negligible against the running total.
    fn expect(&self, f: &dyn Fn(f64) -> f64, _kinks: &[f64]) -> f64 {
        let c = self.normalizer();
        let mut total = c * f(self.mode as f64);
        for (r, dir) in [(self.p, -1i64), (self.q, 1)] {
            let mut w = 1.0;
            let mut k: i64 = 1;
            while r > 0.0 && k <= 100_000_000 {
                w *= r;
                let term = c * w * f((self.mode + dir * k) as f64);
                total += term;
                if w < 1e-18 && term.abs() <= 1e-18 * total.abs() {
                    break;
                }
                k += 1;
            }
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
        self.normalizer()
    }
}

/// Solves `pmf(0) = g0` and `mean = mu` for the mode-zero asymmetric Laplace law:
/// `p = (1 - g0(mu+1)) / (1 - g0(mu-1))`, `q = (1 + g0(mu-1)) / (1 + g0(mu+1))`.
pub fn solve_pq(g0: f64, mu: f64) -> Result<AsymLaplaceD> {
    if !(g0 > 0.0 && g0 <= 1.0) || !mu.is_finite() {
        return Err(Error::OutOfRange(format!("need g0 in (0, 1] and finite mean, got {g0}, {mu}")));
    }
    let p_den = 1.0 - g0 * (mu - 1.0);
    let q_den = 1.0 + g0 * (mu + 1.0);
    if !(p_den > 0.0 && q_den > 0.0) {
        return Err(Error::OutOfRange(format!("(g0, mu) = ({g0}, {mu}) admits no asymmetric Laplace law")));
    }
    let p = unit_ratio("p", (1.0 - g0 * (mu + 1.0)) / p_den)?;
    let q = unit_ratio("q", (1.0 + g0 * (mu - 1.0)) / q_den)?;
    Ok(AsymLaplaceD { p, q, mode: 0 })
}

fn check_branch(max: f64, q: f64) -> Result<()> {
    if !(max > 0.0 && max <= 1.0) {
        return Err(Error::OutOfRange(format!("maximum {max} outside (0, 1]")));
    }
    let top = (1.0 - max) / (1.0 + max);
    if !(q >= 0.0 && q <= top + 1e-15) {
        return Err(Error::OutOfRange(format!("q = {q} outside [0, {top}]")));
    }
    Ok(())
}

/// Left ratio of the mode-zero law with maximum `max` and right ratio `q`.
pub fn p_for_max(max: f64, q: f64) -> Result<f64> {
    check_branch(max, q)?;
    Ok(((1.0 - q - max) / (1.0 - q - max * q)).max(0.0))
}

/// Variance along the fixed-maximum branch:
/// `1/M^2 - (1+q)/(M(1-q)) + 2q/(1-q)^2`.
pub fn variance_reparam(max: f64, q: f64) -> Result<f64> {
    check_branch(max, q)?;
    let m = max;
    Ok(1.0 / (m * m) - (1.0 + q) / (m * (1.0 - q)) + 2.0 * q / ((1.0 - q) * (1.0 - q)))
}

/// Fourth central moment along the fixed-maximum branch.
pub fn sigma4_closed(max: f64, q: f64) -> Result<f64> {
    check_branch(max, q)?;
    let m = max;
    let w = 1.0 - q;
    let c0 = w.powi(4);
    let c1 = w.powi(3) * (1.0 + q);
    let c2 = w * w * (1.0 + 4.0 * q + q * q);
    let c3 = 1.0 + 22.0 * q - 22.0 * q.powi(3) - q.powi(4);
    let c4 = 1.0 + 10.0 * q + q * q;
    let num = 9.0 * c0 - 18.0 * c1 * m + 10.0 * c2 * m * m - c3 * m.powi(3) + 2.0 * q * c4 * m.powi(4);
    Ok((num / (m.powi(4) * c0)).max(0.0))
}

/// `d/dq` of [`sigma4_closed`].
pub fn sigma4_derivative(max: f64, q: f64) -> Result<f64> {
    check_branch(max, q)?;
    let m = max;
    let w = 1.0 - q;
    // -18 k0 + 30 k1 M - 13 k2 M^2 + k3 M^3 with k0 = w^3, k1 = w^2 (1+q),
    // k2 = 1 + 33q/13 - 33q^2/13 - q^3, k3 = 1 + 23q + 23q^2 + q^3, factored
    // through its root so the sign is exact near q = (1-M)/(1+M).
    let root = q * (1.0 + m) - (1.0 - m);
    let rest = m * m * (q * q + 22.0 * q + 1.0) - 12.0 * m * (1.0 - q) * (1.0 + q) + 18.0 * w * w;
    let num = root * rest;
    Ok(2.0 * num / (m.powi(3) * w.powi(5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::law::Law;

    /// Direct series sums of `pmf`, `n pmf`, `(n-mu)^k pmf`.
    fn series(d: &AsymLaplaceD, k: i32) -> (f64, f64, f64) {
        let terms = 20_000i64;
        let range = (d.mode - terms)..=(d.mode + terms);
        let mass: f64 = range.clone().map(|n| d.pmf(n)).sum();
        let mean: f64 = range.clone().map(|n| n as f64 * d.pmf(n)).sum();
        let central: f64 = range.map(|n| (n as f64 - mean).powi(k) * d.pmf(n)).sum();
        (mass, mean, central)
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(AsymLaplaceD::new(0.0, 0.0, 0).unwrap().pmf(0), 1.0);
        assert_eq!(AsymLaplaceD::new(0.0, 0.5, 0).unwrap().pmf(2), 0.125);
        let d = AsymLaplaceD::new(1.0 / 3.0, 0.5, 0).unwrap();
        assert!((d.pmf(0) - 0.4).abs() < 1e-15);
        assert!((series(&d, 2).0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mean_var_examples() {
        let d = AsymLaplaceD::new(0.0, 0.5, 0).unwrap();
        let (m, v) = d.mean_var();
        let (_, sm, sv) = series(&d, 2);
        assert_eq!((m, v), (1.0, 2.0));
        assert!((sm - 1.0).abs() < 1e-12 && (sv - 2.0).abs() < 1e-12);

        let s = AsymLaplaceD::new(0.3, 0.3, 4).unwrap().mean_var();
        assert_eq!(s.0, 4.0);
        assert!((s.1 - 0.6 / 0.49).abs() < 1e-15);

        let d = AsymLaplaceD::new(1.0 / 3.0, 0.5, 0).unwrap();
        let (m, v) = d.mean_var();
        let (_, sm, sv) = series(&d, 2);
        assert!((m - 0.5).abs() < 1e-15 && (v - 2.75).abs() < 1e-14);
        assert!((sm - m).abs() < 1e-12 && (sv - v).abs() < 1e-12);
    }

    #[test]
    fn solve_pq_examples() {
        assert_eq!(solve_pq(1.0, 0.0).unwrap(), AsymLaplaceD { p: 0.0, q: 0.0, mode: 0 });
        for &g0 in &[0.1, 0.37, 0.5, 0.9] {
            let d = solve_pq(g0, 0.0).unwrap();
            let expected = (1.0 - g0) / (1.0 + g0);
            assert!((d.p - expected).abs() < 1e-15 && (d.q - expected).abs() < 1e-15);
            assert!((d.normalizer() - g0).abs() < 1e-15);
        }
        let d = solve_pq(0.5, 1.0).unwrap();
        assert_eq!((d.p, d.q), (0.0, 0.5));
        assert_eq!(d.mean_var().0, 1.0);

        assert!(matches!(solve_pq(0.5, 5.0), Err(Error::OutOfRange(_))));
        assert!(solve_pq(0.0, 0.0).is_err());
    }

    #[test]
    fn variance_reparam_examples() {
        for &m in &[0.1, 0.5, 0.9, 1.0] {
            assert!((variance_reparam(m, 0.0).unwrap() - (1.0 - m) / (m * m)).abs() < 1e-13);
        }
        assert_eq!(variance_reparam(1.0, 0.0).unwrap(), 0.0);
        let v = variance_reparam(0.5, 1.0 / 3.0).unwrap();
        let d = AsymLaplaceD::new(1.0 / 3.0, 1.0 / 3.0, 0).unwrap();
        assert!((v - 1.5).abs() < 1e-13 && (v - d.mean_var().1).abs() < 1e-13);
        assert!(variance_reparam(0.5, 0.4).is_err());
    }

    #[test]
    fn variance_reparam_matches_direct_variance() {
        for i in 1..20 {
            let m = i as f64 / 20.0;
            let top = (1.0 - m) / (1.0 + m);
            for j in 0..=10 {
                let q = top * j as f64 / 10.0;
                let p = p_for_max(m, q).unwrap();
                let d = AsymLaplaceD::new(p, q, 0).unwrap();
                assert!((d.normalizer() - m).abs() < 1e-13);
                let v = variance_reparam(m, q).unwrap();
                assert!((v - d.mean_var().1).abs() < 1e-12 * v.max(1.0), "M={m} q={q}");
            }
        }
    }

    #[test]
    fn sigma4_examples() {
        for &m in &[0.2f64, 0.5, 0.8] {
            let expect = (9.0 - 18.0 * m + 10.0 * m * m - m.powi(3)) / m.powi(4);
            assert!((sigma4_closed(m, 0.0).unwrap() - expect).abs() < 1e-12 * expect);
        }
        assert_eq!(sigma4_closed(1.0, 0.0).unwrap(), 0.0);
        assert!((sigma4_closed(0.5, 0.0).unwrap() - 38.0).abs() < 1e-12);
        let geo = AsymLaplaceD::new(0.5, 0.0, 0).unwrap();
        assert!((series(&geo, 4).2 - 38.0).abs() < 1e-10);
    }

    #[test]
    fn sigma4_derivative_examples() {
        for &m in &[0.1, 0.5, 0.75] {
            let root = (1.0 - m) / (1.0 + m);
            assert!(sigma4_derivative(m, root).unwrap().abs() < 1e-9);
        }
        assert!(sigma4_derivative(0.5, 0.0).unwrap() < 0.0);
        let h = 1e-6;
        let fd = (sigma4_closed(0.5, 0.1 + h).unwrap() - sigma4_closed(0.5, 0.1 - h).unwrap()) / (2.0 * h);
        let d = sigma4_derivative(0.5, 0.1).unwrap();
        assert!(((d - fd) / d).abs() < 1e-6, "{d} vs {fd}");
    }

    #[test]
    fn geometric_identities() {
        for i in 1..=99 {
            let m = i as f64 / 100.0;
            assert!((m * m * variance_reparam(m, 0.0).unwrap() + m - 1.0).abs() < 1e-14);
            let s4 = sigma4_closed(m, 0.0).unwrap();
            assert!((m.powi(4) * s4 + m * (m * m - 10.0 * m + 18.0) - 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn truncated_rendering_is_faithful() {
        let d = AsymLaplaceD::new(0.6, 0.95, -3).unwrap();
        let pmf = d.to_pmf();
        let (mean, var) = d.mean_var();
        assert!((pmf.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((pmf.mean() - mean).abs() < 1e-10);
        assert!((pmf.variance() - var).abs() < 1e-9);
    }
}
