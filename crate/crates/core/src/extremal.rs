//! Asymmetric Laplace majorants: for a log-concave law and a point, the
//! asymmetric Laplace law with the same mean and the same density value at
//! that point (attained there as its mode) dominates it in convex order.

use crate::continuous::AsymLaplaceC;
use crate::discrete::{solve_pq, AsymLaplaceD};
use crate::error::{Error, Result};
use crate::law::Law;
use crate::logconcave::{DiscretePMF, GridDensity};
use crate::orders::{certify_order, certify_order_pmf_al, OrderCertificate};

const SCALE_SLACK: f64 = 1e-12;

fn density_at(f: &GridDensity, t: f64) -> Result<f64> {
    let (lo, hi) = f.support();
    if !(t >= lo && t <= hi) {
        return Err(Error::Domain(format!("point {t} lies outside the support [{lo}, {hi}]")));
    }
    let ft = f.pdf(t);
    if !(ft > 0.0) {
        return Err(Error::UnboundedMajorant(t));
    }
    Ok(ft)
}

fn scale(name: &str, v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -SCALE_SLACK {
        Ok(0.0)
    } else {
        Err(Error::NotLogConcave(format!("{name} = {v} is negative, the input cannot be log-concave")))
    }
}

/// Majorant with mode `t`:
/// `lambda2 = (1/f(t) + mu - t)/2`, `lambda1 = (1/f(t) - mu + t)/2`.
pub fn majorant_c(f: &GridDensity, t: f64) -> Result<AsymLaplaceC> {
    let ft = density_at(f, t)?;
    let shift = f.mean() - t;
    let lambda2 = scale("lambda2", 0.5 * (1.0 / ft + shift))?;
    let lambda1 = scale("lambda1", 0.5 * (1.0 / ft - shift))?;
    AsymLaplaceC::new(lambda1, lambda2, t)
}

/// The same majorant found the long way: along `lambda1 + lambda2 = 1/f(t)`
/// the mean of the mode-`t` law grows continuously from `t - 1/f(t)` to
/// `t + 1/f(t)`, so bisecting on `lambda2` with the mean computed by
/// quadrature locates the member whose mean is `E f`.
pub fn majorant_c_bisection(f: &GridDensity, t: f64) -> Result<AsymLaplaceC> {
    let ft = density_at(f, t)?;
    let total = 1.0 / ft;
    let target = f.mean();
    let mean_at = |s: f64| -> Result<f64> { Ok(AsymLaplaceC::new(total - s, s, t)?.expect(&|x| x, &[])) };
    let (mut lo, mut hi) = (0.0, total);
    if mean_at(lo)? > target + SCALE_SLACK * total || mean_at(hi)? < target - SCALE_SLACK * total {
        return Err(Error::NotLogConcave(format!("mean {target} is farther than 1/f(t) = {total} from {t}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mean_at(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    AsymLaplaceC::new((total - s).max(0.0), s, t)
}

/// Discrete majorant with mode `n`: `solve_pq(g(n), mu - n)` moved to `n`.
pub fn majorant_d(g: &DiscretePMF, n: i64) -> Result<AsymLaplaceD> {
    let gn = g.pmf(n);
    if !(gn > 0.0) {
        return Err(Error::UnboundedMajorant(n as f64));
    }
    let d = solve_pq(gn, g.mean() - n as f64)?;
    Ok(AsymLaplaceD { mode: n, ..d })
}

/// Convex-order certificate for `f ≺_cx majorant_c(f, t)`.
pub fn certify_majorant_c(f: &GridDensity, t: f64, tol: f64) -> Result<(AsymLaplaceC, OrderCertificate)> {
    let m = majorant_c(f, t)?;
    let cert = certify_order(f, &m, 2, tol);
    Ok((m, cert))
}

/// Convex-order certificate for `g ≺_cx majorant_d(g, n)`.
pub fn certify_majorant_d(g: &DiscretePMF, n: i64, tol: f64) -> Result<(AsymLaplaceD, OrderCertificate)> {
    let m = majorant_d(g, n)?;
    let cert = certify_order_pmf_al(g, &m, 2, tol);
    Ok((m, cert))
}
