//! Density crossings and stochastic orders.
//!
//! For `φ = g2 - g1`, a crossing pattern records where `φ` changes sign.
//! If `φ` has exactly `n` sign changes `x_1 < ... < x_n` with
//! `φ(x) Π (x - x_k) >= 0` and `∫ x^k φ = 0` for `k < n`, then
//! `∫ f φ >= 0` for every `f` whose `(n-2)`-th derivative is convex
//! (non-decreasing `f` when `n = 1`), i.e. `X1 ≺_n X2`. The certificate
//! path checks exactly these hypotheses; the empirical banks evaluate a
//! fixed finite family of test functions and can only falsify.

use serde::{Deserialize, Serialize};

use crate::discrete::AsymLaplaceD;
use crate::error::{Error, Result};
use crate::law::{Law, LogLinearPiece, PiecewiseLogLinear};
use crate::logconcave::DiscretePMF;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
            Sign::Zero => Sign::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingPattern {
    /// Strictly increasing sign-change locations of `g2 - g1`.
    pub crossings: Vec<f64>,
    /// Sign of `g2 - g1` left of the first crossing; `Zero` if it never leaves the dead band.
    pub initial_sign: Sign,
    /// `sup |g2 - g1|` seen during the scan.
    pub max_abs: f64,
}

impl CrossingPattern {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    /// Sign to the right of the last crossing.
    pub fn final_sign(&self) -> Sign {
        if self.crossings.len() % 2 == 0 { self.initial_sign } else { self.initial_sign.flip() }
    }

    pub fn is_identical(&self) -> bool {
        self.initial_sign == Sign::Zero
    }

    /// `φ(x) Π (x - x_k) >= 0` holds iff the rightmost run is non-negative.
    pub fn has_karlin_orientation(&self) -> bool {
        self.final_sign() == Sign::Positive
    }
}

/// A run of constant sign of `φ` with its supremum magnitude.
#[derive(Debug, Clone, Copy)]
struct Run {
    lo: f64,
    hi: f64,
    sign: Sign,
    mag: f64,
}

fn piece_covering(pieces: &[LogLinearPiece], a: f64, b: f64) -> Option<LogLinearPiece> {
    pieces.iter().copied().find(|p| p.lo <= a && p.hi >= b)
}

fn pattern_from_runs(runs: &[Run], eps: Option<f64>) -> CrossingPattern {
    let max_abs = runs.iter().map(|r| r.mag).fold(0.0, f64::max);
    let eps = eps.unwrap_or(1e-12 * max_abs);
    let mut crossings = Vec::new();
    let mut initial_sign = Sign::Zero;
    let mut last: Option<Run> = None;
    for run in runs.iter().filter(|r| r.sign != Sign::Zero && r.mag > eps) {
        match last {
            None => initial_sign = run.sign,
            Some(prev) if prev.sign != run.sign => {
                let at = if prev.hi >= run.lo { run.lo } else { 0.5 * (prev.hi + run.lo) };
                crossings.push(at);
            }
            _ => {}
        }
        last = Some(*run);
    }
    CrossingPattern { crossings, initial_sign, max_abs }
}

/// Sign changes of `g2 - g1` for piecewise log-linear densities.
///
/// On every cell of the merged break points both densities are single
/// exponentials (or zero), so `log g2 - log g1` is affine there and the
/// sign structure and crossing locations are obtained in closed form.
/// Values with `|φ| <= eps` (default `1e-12 max|φ|`) are treated as zero.
pub fn crossing_pattern(g1: &dyn PiecewiseLogLinear, g2: &dyn PiecewiseLogLinear, eps: Option<f64>) -> CrossingPattern {
    let p1 = g1.pieces();
    let p2 = g2.pieces();
    let mut breaks: Vec<f64> = p1
        .iter()
        .chain(&p2)
        .flat_map(|p| [p.lo, p.hi])
        .filter(|x| x.is_finite())
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut cells = Vec::with_capacity(breaks.len() + 1);
    let mut prev = f64::NEG_INFINITY;
    for &b in &breaks {
        cells.push((prev, b));
        prev = b;
    }
    cells.push((prev, f64::INFINITY));

    let mut runs = Vec::new();
    for (a, b) in cells {
        let f1 = piece_covering(&p1, a, b);
        let f2 = piece_covering(&p2, a, b);
        let phi = |x: f64| f2.map_or(0.0, |p| p.density(x)) - f1.map_or(0.0, |p| p.density(x));
        let sup_on = |lo: f64, hi: f64, extra: &[f64]| -> f64 {
            [lo, hi]
                .iter()
                .chain(extra)
                .filter(|x| x.is_finite() && **x >= lo && **x <= hi)
                .map(|&x| phi(x).abs())
                .fold(0.0, f64::max)
        };
        match (f1, f2) {
            (None, None) => {}
            (Some(_), None) | (None, Some(_)) => {
                let sign = if f2.is_some() { Sign::Positive } else { Sign::Negative };
                // A single exponential is monotone, so its sup sits at an end.
                runs.push(Run { lo: a, hi: b, sign, mag: sup_on(a, b, &[]) });
            }
            (Some(q1), Some(q2)) => {
                // log g2 - log g1 = c0 + c1 x on the cell.
                let c1 = q2.slope - q1.slope;
                let c0 = (q2.log_at_anchor - q2.slope * q2.anchor) - (q1.log_at_anchor - q1.slope * q1.anchor);
                // Critical points of φ: slope2 g2 = slope1 g1.
                let mut critical = Vec::new();
                if c1 != 0.0 && q1.slope != 0.0 && q2.slope != 0.0 && q1.slope / q2.slope > 0.0 {
                    critical.push(((q1.slope / q2.slope).ln() - c0) / c1);
                }
                let sign_at = |x: f64| Sign::of(c0 + c1 * x);
                let root = if c1 != 0.0 { Some(-c0 / c1) } else { None };
                match root.filter(|r| *r > a && *r < b) {
                    Some(r) => {
                        let (left, right) = if c1 > 0.0 {
                            (Sign::Negative, Sign::Positive)
                        } else {
                            (Sign::Positive, Sign::Negative)
                        };
                        runs.push(Run { lo: a, hi: r, sign: left, mag: sup_on(a, r, &critical) });
                        runs.push(Run { lo: r, hi: b, sign: right, mag: sup_on(r, b, &critical) });
                    }
                    None => {
                        let probe = match (a.is_finite(), b.is_finite()) {
                            (true, true) => 0.5 * (a + b),
                            (true, false) => a + 1.0,
                            (false, true) => b - 1.0,
                            (false, false) => 0.0,
                        };
                        let sign = if c1 == 0.0 { Sign::of(c0) } else { sign_at(probe) };
                        runs.push(Run { lo: a, hi: b, sign, mag: sup_on(a, b, &critical) });
                    }
                }
            }
        }
    }
    pattern_from_runs(&runs, eps)
}

/// Sign changes of `g2 - g1` on the integers. A crossing between the last
/// point of one sign and the first point of the next is reported at their midpoint.
pub fn crossing_pattern_pmf(g1: &DiscretePMF, g2: &DiscretePMF, eps: Option<f64>) -> CrossingPattern {
    let lo = g1.offset().min(g2.offset());
    let hi = (*g1.support().end()).max(*g2.support().end());
    integer_pattern(|n| g2.pmf(n) - g1.pmf(n), lo, hi, eps)
}

/// Crossing pattern of `d - g` for an asymmetric Laplace `d`. Outside the
/// support of `g` the difference is `d > 0`, so one extra point on each
/// side of the window fixes the outer signs.
pub fn crossing_pattern_pmf_al(g: &DiscretePMF, d: &AsymLaplaceD, eps: Option<f64>) -> CrossingPattern {
    let lo = g.offset().min(d.mode) - 1;
    let hi = (*g.support().end()).max(d.mode) + 1;
    integer_pattern(|n| d.pmf(n) - g.pmf(n), lo, hi, eps)
}

fn integer_pattern(phi: impl Fn(i64) -> f64, lo: i64, hi: i64, eps: Option<f64>) -> CrossingPattern {
    let runs: Vec<Run> = (lo..=hi)
        .map(|n| {
            let v = phi(n);
            let x = n as f64;
            Run { lo: x, hi: x, sign: Sign::of(v), mag: v.abs() }
        })
        .collect();
    pattern_from_runs(&runs, eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub order_n: usize,
    pub crossings: CrossingPattern,
    /// `(k, |E Z2^k - E Z1^k|)` for the standardized variable `Z = (X - c)/s`,
    /// `c = E X1`, `s` the larger standard deviation.
    pub matched_moments: Vec<(usize, f64)>,
    pub verdict: Verdict,
    /// Largest test-bank violation, when the bank was consulted.
    pub bank_violation: Option<f64>,
}

/// Test-function families for the empirical checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderClass {
    /// Non-decreasing functions (`≺_1`).
    Increasing,
    /// Convex functions (`≺_cx`).
    Convex,
    /// Non-decreasing convex functions (`≺_icx`).
    IncreasingConvex,
    /// Functions with non-negative `n`-th distributional derivative, `n <= 4`.
    NthDerivative(u32),
}

impl OrderClass {
    /// Bank matching `≺_n`, if one exists.
    pub fn for_order(n: usize) -> Option<OrderClass> {
        match n {
            1 => Some(OrderClass::Increasing),
            2 => Some(OrderClass::Convex),
            3 | 4 => Some(OrderClass::NthDerivative(n as u32)),
            _ => None,
        }
    }
}

/// One member of a bank, in standardized coordinates `z`.
pub struct TestFunction {
    pub name: String,
    /// Kink location in `z`, if any.
    pub kink: Option<f64>,
    pub f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

fn tf(name: String, kink: Option<f64>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> TestFunction {
    TestFunction { name, kink, f: Box::new(f) }
}

const THRESHOLDS: [f64; 17] = [-4.0, -3.5, -3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
const RATES: [f64; 2] = [0.25, 0.5];

/// The fixed test bank for a class, as functions of the standardized `z`:
///
/// * increasing: `±`-free monotone members `z`, `tanh((z-a)/w)` for
///   `w in {1, 0.1}`, `(z-a)_+`, `-(a-z)_+`, `e^{rz}`, `-e^{-rz}`;
/// * convex: `±z`, `z^2`, `|z-a|`, `(z-a)_+`, `(a-z)_+`, `e^{±rz}`;
/// * increasing convex: `z`, `(z-a)_+`, `e^{rz}`;
/// * `n = 3`: `±z`, `±z^2`, `z^3`, `(z-a)_+^2`, `-(a-z)_+^2`, `e^{rz}`;
/// * `n = 4`: `±z`, `±z^2`, `±z^3`, `z^4`, `(z-a)_+^3`, `(a-z)_+^3`, `e^{±rz}`;
///
/// with `a` on the half-integer grid in `[-4, 4]` and `r in {1/4, 1/2}`.
pub fn test_bank(class: OrderClass) -> Result<Vec<TestFunction>> {
    let mut bank = Vec::new();
    let signed_powers = |bank: &mut Vec<TestFunction>, upto: i32| {
        for k in 1..=upto {
            bank.push(tf(format!("z^{k}"), None, move |z: f64| z.powi(k)));
            bank.push(tf(format!("-z^{k}"), None, move |z: f64| -z.powi(k)));
        }
    };
    match class {
        OrderClass::Increasing | OrderClass::NthDerivative(1) => {
            bank.push(tf("z".into(), None, |z| z));
            for &a in &THRESHOLDS {
                for &w in &[1.0, 0.1] {
                    bank.push(tf(format!("tanh((z-{a})/{w})"), None, move |z: f64| ((z - a) / w).tanh()));
                }
                bank.push(tf(format!("(z-{a})+"), Some(a), move |z: f64| (z - a).max(0.0)));
                bank.push(tf(format!("-({a}-z)+"), Some(a), move |z: f64| -(a - z).max(0.0)));
            }
            for &r in &RATES {
                bank.push(tf(format!("exp({r}z)"), None, move |z: f64| (r * z).exp()));
                bank.push(tf(format!("-exp(-{r}z)"), None, move |z: f64| -(-r * z).exp()));
            }
        }
        OrderClass::Convex | OrderClass::NthDerivative(2) => {
            signed_powers(&mut bank, 1);
            bank.push(tf("z^2".into(), None, |z| z * z));
            for &a in &THRESHOLDS {
                bank.push(tf(format!("|z-{a}|"), Some(a), move |z: f64| (z - a).abs()));
                bank.push(tf(format!("(z-{a})+"), Some(a), move |z: f64| (z - a).max(0.0)));
                bank.push(tf(format!("({a}-z)+"), Some(a), move |z: f64| (a - z).max(0.0)));
            }
            for &r in &RATES {
                bank.push(tf(format!("exp({r}z)"), None, move |z: f64| (r * z).exp()));
                bank.push(tf(format!("exp(-{r}z)"), None, move |z: f64| (-r * z).exp()));
            }
        }
        OrderClass::IncreasingConvex => {
            bank.push(tf("z".into(), None, |z| z));
            for &a in &THRESHOLDS {
                bank.push(tf(format!("(z-{a})+"), Some(a), move |z: f64| (z - a).max(0.0)));
            }
            for &r in &RATES {
                bank.push(tf(format!("exp({r}z)"), None, move |z: f64| (r * z).exp()));
            }
        }
        OrderClass::NthDerivative(3) => {
            signed_powers(&mut bank, 2);
            bank.push(tf("z^3".into(), None, |z| z.powi(3)));
            for &a in &THRESHOLDS {
                bank.push(tf(format!("(z-{a})+^2"), Some(a), move |z: f64| (z - a).max(0.0).powi(2)));
                bank.push(tf(format!("-({a}-z)+^2"), Some(a), move |z: f64| -(a - z).max(0.0).powi(2)));
            }
            for &r in &RATES {
                bank.push(tf(format!("exp({r}z)"), None, move |z: f64| (r * z).exp()));
            }
        }
        OrderClass::NthDerivative(4) => {
            signed_powers(&mut bank, 3);
            bank.push(tf("z^4".into(), None, |z| z.powi(4)));
            for &a in &THRESHOLDS {
                bank.push(tf(format!("(z-{a})+^3"), Some(a), move |z: f64| (z - a).max(0.0).powi(3)));
                bank.push(tf(format!("({a}-z)+^3"), Some(a), move |z: f64| (a - z).max(0.0).powi(3)));
            }
            for &r in &RATES {
                bank.push(tf(format!("exp({r}z)"), None, move |z: f64| (r * z).exp()));
                bank.push(tf(format!("exp(-{r}z)"), None, move |z: f64| (-r * z).exp()));
            }
        }
        OrderClass::NthDerivative(n) => {
            return Err(Error::InvalidParameters(format!("no test bank for order {n}")));
        }
    }
    Ok(bank)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub class: OrderClass,
    pub evaluated: usize,
    /// `max_f (E f(X1) - E f(X2))`, floored at zero.
    pub max_violation: f64,
    pub worst: Option<String>,
}

impl EmpiricalReport {
    pub fn consistent(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

/// Centre and scale shared by the bank: `c = E X1`, `s` the larger
/// standard deviation (one if both vanish).
fn standardization(l1: &dyn Law, l2: &dyn Law) -> (f64, f64) {
    let c = l1.mean();
    let s = l1.variance().max(l2.variance()).sqrt();
    (c, if s > 0.0 { s } else { 1.0 })
}

/// Evaluates the class bank on both laws; a positive `E f(X1) - E f(X2)`
/// is a witness against `X1 ≺ X2`.
pub fn empirical_order_check(l1: &dyn Law, l2: &dyn Law, class: OrderClass) -> Result<EmpiricalReport> {
    let bank = test_bank(class)?;
    let (c, s) = standardization(l1, l2);
    let mut max_violation = 0.0;
    let mut worst = None;
    for t in &bank {
        let kinks: Vec<f64> = t.kink.map(|a| vec![c + s * a]).unwrap_or_default();
        let g = |x: f64| (t.f)((x - c) / s);
        let gap = l1.expect(&g, &kinks) - l2.expect(&g, &kinks);
        if gap > max_violation {
            max_violation = gap;
            worst = Some(t.name.clone());
        }
    }
    Ok(EmpiricalReport { class, evaluated: bank.len(), max_violation, worst })
}

fn certify_from(pattern: CrossingPattern, l1: &dyn Law, l2: &dyn Law, n: usize, tol: f64) -> OrderCertificate {
    let (c, s) = standardization(l1, l2);
    let matched_moments: Vec<(usize, f64)> = (0..n)
        .map(|k| {
            let g = |x: f64| ((x - c) / s).powi(k as i32);
            (k, (l2.expect(&g, &[]) - l1.expect(&g, &[])).abs())
        })
        .collect();
    let moments_ok = matched_moments.iter().all(|&(_, d)| d <= tol);
    let shape_ok = pattern.is_identical() || (pattern.count() == n && pattern.has_karlin_orientation());
    if n >= 1 && moments_ok && shape_ok {
        return OrderCertificate { order_n: n, crossings: pattern, matched_moments, verdict: Verdict::Certified, bank_violation: None };
    }
    let report = OrderClass::for_order(n).and_then(|class| empirical_order_check(l1, l2, class).ok());
    let bank_violation = report.as_ref().map(|r| r.max_violation);
    let verdict = match bank_violation {
        Some(v) if v > tol => Verdict::Refuted,
        _ => Verdict::Inconclusive,
    };
    OrderCertificate { order_n: n, crossings: pattern, matched_moments, verdict, bank_violation }
}

/// Certifies `X1 ≺_n X2` from the crossing pattern of `g2 - g1` and the
/// matched moments of order `< n`; otherwise tries to refute with the bank.
pub fn certify_order(g1: &dyn PiecewiseLogLinear, g2: &dyn PiecewiseLogLinear, n: usize, tol: f64) -> OrderCertificate {
    let pattern = crossing_pattern(g1, g2, None);
    certify_from(pattern, g1, g2, n, tol)
}

pub fn certify_order_pmf(g1: &DiscretePMF, g2: &DiscretePMF, n: usize, tol: f64) -> OrderCertificate {
    let pattern = crossing_pattern_pmf(g1, g2, None);
    certify_from(pattern, g1, g2, n, tol)
}

/// As [`certify_order_pmf`] with the untruncated asymmetric Laplace law as `X2`.
pub fn certify_order_pmf_al(g: &DiscretePMF, d: &AsymLaplaceD, n: usize, tol: f64) -> OrderCertificate {
    let pattern = crossing_pattern_pmf_al(g, d, None);
    certify_from(pattern, g, d, n, tol)
}

/// Polynomial with coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }
}

/// Interpolating polynomial of degree `< nodes.len()` through `(x_k, f(x_k))`,
/// built from Newton divided differences.
pub fn lagrange_interpolant(f: impl Fn(f64) -> f64, nodes: &[f64]) -> Result<Polynomial> {
    if nodes.is_empty() {
        return Err(Error::InvalidParameters("need at least one node".into()));
    }
    for (i, &a) in nodes.iter().enumerate() {
        if let Some(&b) = nodes[i + 1..].iter().find(|&&b| b == a) {
            return Err(Error::DuplicateNodes(b));
        }
    }
    let n = nodes.len();
    let mut dd: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form into monomial coefficients.
    let mut coeffs = vec![0.0; n];
    for k in (0..n).rev() {
        for j in (1..n).rev() {
            coeffs[j] = coeffs[j - 1] - nodes[k] * coeffs[j];
        }
        coeffs[0] = dd[k] - nodes[k] * coeffs[0];
    }
    Ok(Polynomial { coeffs })
}
