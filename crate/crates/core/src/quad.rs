//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Intervals are kept in a max-heap keyed by their local error estimate and
//! the worst one is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol * |value|)`. Infinite end points are handled by the
//! substitution `x = a + u / (1 - u)` (and its mirror) on `[0, 1)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-8, max_intervals: 4000 }
    }
}

impl QuadOptions {
    /// Tighter settings used by oracles that compare against closed forms.
    pub fn precise() -> Self {
        QuadOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 20_000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

fn segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let (value, error) = gk15(f, a, b);
    Segment { a, b, value, error }
}

/// Integrates `f` over the finite partition given by `points` (sorted,
/// at least two entries). Every partition cell starts as its own segment,
/// which is how callers communicate kinks and jumps of the integrand.
pub fn integrate_partition<F: Fn(f64) -> f64>(f: F, points: &[f64], opts: QuadOptions) -> Quad {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(segment(&f, w[0], w[1]));
        }
    }
    if heap.is_empty() {
        return Quad { value: 0.0, error: 0.0, converged: true };
    }
    let totals = |heap: &BinaryHeap<Segment>| {
        heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut value, mut error) = totals(&heap);
    while error > opts.abs_tol.max(opts.rel_tol * value.abs()) {
        if heap.len() >= opts.max_intervals {
            return Quad { value, error, converged: false };
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            heap.push(Segment { error: 0.0, ..worst });
            let (v, e) = totals(&heap);
            value = v;
            error = e;
            continue;
        }
        let left = segment(&f, worst.a, mid);
        let right = segment(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Refresh the running sums periodically to stop drift.
        if heap.len() % 64 == 0 {
            let (v, e) = totals(&heap);
            value = v;
            error = e;
        }
    }
    let (value, error) = totals(&heap);
    Quad { value, error, converged: true }
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Quad {
    integrate_with_points(f, a, b, &[], opts)
}

/// Integrates over `[a, b]` (either end may be infinite) with additional
/// interior break points.
pub fn integrate_with_points<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    opts: QuadOptions,
) -> Quad {
    with_points(&f, a, b, breaks, opts)
}

fn with_points(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], opts: QuadOptions) -> Quad {
    if !(b > a) {
        return Quad { value: 0.0, error: 0.0, converged: true };
    }
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b && x.is_finite()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    match (a.is_finite(), b.is_finite()) {
        (true, true) => {
            let mut all = Vec::with_capacity(pts.len() + 2);
            all.push(a);
            all.extend_from_slice(&pts);
            all.push(b);
            integrate_partition(f, &all, opts)
        }
        (true, false) => {
            // x = a + u/(1-u); break points map to u = d/(1+d).
            let g = |u: f64| {
                if u >= 1.0 {
                    return 0.0;
                }
                let w = 1.0 - u;
                let v = f(a + u / w) / (w * w);
                if v.is_finite() { v } else { 0.0 }
            };
            let mut all = vec![0.0];
            all.extend(pts.iter().map(|&x| {
                let d = x - a;
                d / (1.0 + d)
            }));
            all.push(1.0);
            integrate_partition(g, &all, opts)
        }
        (false, true) => {
            let g = |u: f64| {
                if u >= 1.0 {
                    return 0.0;
                }
                let w = 1.0 - u;
                let v = f(b - u / w) / (w * w);
                if v.is_finite() { v } else { 0.0 }
            };
            let mut all = vec![0.0];
            let mut mapped: Vec<f64> = pts
                .iter()
                .map(|&x| {
                    let d = b - x;
                    d / (1.0 + d)
                })
                .collect();
            mapped.sort_by(f64::total_cmp);
            all.extend(mapped);
            all.push(1.0);
            integrate_partition(g, &all, opts)
        }
        (false, false) => {
            let split = pts.first().copied().unwrap_or(0.0);
            let left = with_points(f, f64::NEG_INFINITY, split, &pts, opts);
            let right = with_points(f, split, f64::INFINITY, &pts, opts);
            Quad {
                value: left.value + right.value,
                error: left.error + right.error,
                converged: left.converged && right.converged,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x.powi(6) - 3.0 * x * x + 1.0, -1.0, 2.0, QuadOptions::default());
        let exact = (2f64.powi(7) + 1.0) / 7.0 - (8.0 + 1.0) + 3.0;
        assert!((q.value - exact).abs() < 1e-13);
    }

    #[test]
    fn gaussian_over_real_line() {
        let q = integrate(|x| (-x * x).exp(), f64::NEG_INFINITY, f64::INFINITY, QuadOptions::precise());
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12, "{}", q.value);
    }

    #[test]
    fn kink_via_break_point() {
        let q = integrate_with_points(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], QuadOptions::default());
        assert!((q.value - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn exponential_tail() {
        let q = integrate(|x: f64| (-x).exp(), 2.0, f64::INFINITY, QuadOptions::precise());
        assert!((q.value - (-2f64).exp()).abs() < 1e-14);
    }
}
