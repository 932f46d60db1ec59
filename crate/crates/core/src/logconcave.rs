//! Generic log-concave models: piecewise log-linear densities on the line
//! and finitely supported probability sequences on the integers, with
//! validators, seeded generators, moments and the CSV file formats.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::continuous::AsymLaplaceC;
use crate::error::{Error, Result};
use crate::law::{Law, LogLinearPiece, PiecewiseLogLinear};
use crate::quad::{integrate_partition, QuadOptions};

const SLOPE_TOL: f64 = 1e-12;

/// Mean, variance and `p`-th absolute central moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub var: f64,
    pub sigma_p: f64,
}

/// Density that is exp-linear between consecutive knots and zero outside
/// `[knots[0], knots[k]]`. Construction normalizes the total mass to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDensity {
    knots: Vec<f64>,
    logvals: Vec<f64>,
}

/// `∫_0^1 exp(a + (b - a) s) ds`, stable for nearly equal end values.
fn mean_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
        return 0.0;
    }
    let hi = a.max(b);
    let d = (a - b).abs();
    if d < 1e-8 {
        hi.exp() * (1.0 - 0.5 * d)
    } else {
        hi.exp() * (-(-d).exp_m1()) / d
    }
}

impl GridDensity {
    pub fn new(knots: Vec<f64>, logvals: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != logvals.len() {
            return Err(Error::Malformed(format!(
                "need at least two knots with matching log-values (got {} knots, {} values)",
                knots.len(),
                logvals.len()
            )));
        }
        if knots.iter().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("knots must be finite".into()));
        }
        if let Some(w) = knots.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::Malformed(format!("knots must be strictly increasing ({} then {})", w[0], w[1])));
        }
        let last = logvals.len() - 1;
        for (i, &v) in logvals.iter().enumerate() {
            let edge = i == 0 || i == last;
            if v.is_nan() || v == f64::INFINITY || (v == f64::NEG_INFINITY && !edge) {
                return Err(Error::Malformed(format!("log-density value {v} not allowed at knot {i}")));
            }
        }
        let mut density = GridDensity { knots, logvals };
        let mass = density.raw_mass();
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Malformed(format!("density has total mass {mass}")));
        }
        let shift = mass.ln();
        density.logvals.iter_mut().for_each(|v| *v -= shift);
        Ok(density)
    }

    /// Samples `log_f` at the given knots.
    pub fn from_log_fn(knots: Vec<f64>, log_f: impl Fn(f64) -> f64) -> Result<Self> {
        let logvals = knots.iter().map(|&x| log_f(x)).collect();
        Self::new(knots, logvals)
    }

    /// Uniform law on `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo, hi], vec![0.0, 0.0])
    }

    /// Exact rendering of an asymmetric Laplace law restricted to a window
    /// that drops less than `1e-12` of the mass on either side.
    pub fn from_asym_laplace(d: &AsymLaplaceC) -> Result<Self> {
        let reach = 32.0;
        let mut knots = Vec::with_capacity(3);
        if d.lambda1 > 0.0 {
            knots.push(d.mode - reach * d.lambda1);
        }
        knots.push(d.mode);
        if d.lambda2 > 0.0 {
            knots.push(d.mode + reach * d.lambda2);
        }
        let log_max = d.max_value().ln();
        let logvals = knots
            .iter()
            .map(|&x| {
                let y = x - d.mode;
                if y < 0.0 {
                    log_max + y / d.lambda1
                } else if y > 0.0 {
                    log_max - y / d.lambda2
                } else {
                    log_max
                }
            })
            .collect();
        Self::new(knots, logvals)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn logvals(&self) -> &[f64] {
        &self.logvals
    }

    pub fn support(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().expect("at least two knots"))
    }

    fn raw_mass(&self) -> f64 {
        self.knots
            .windows(2)
            .zip(self.logvals.windows(2))
            .map(|(x, v)| (x[1] - x[0]) * mean_exp(v[0], v[1]))
            .sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.raw_mass()
    }

    /// Successive log-slopes; `±inf` next to a `-inf` end value.
    pub fn slopes(&self) -> Vec<f64> {
        self.knots
            .windows(2)
            .zip(self.logvals.windows(2))
            .map(|(x, v)| (v[1] - v[0]) / (x[1] - x[0]))
            .collect()
    }

    pub fn log_pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x >= lo && x <= hi) {
            return f64::NEG_INFINITY;
        }
        let i = self.knots.partition_point(|&k| k <= x);
        if i == 0 {
            return self.logvals[0];
        }
        if i == self.knots.len() {
            return self.logvals[i - 1];
        }
        let (x0, x1) = (self.knots[i - 1], self.knots[i]);
        let (v0, v1) = (self.logvals[i - 1], self.logvals[i]);
        if x == x0 {
            return v0;
        }
        if v0 == f64::NEG_INFINITY || v1 == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let s = (x - x0) / (x1 - x0);
        v0 + s * (v1 - v0)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.log_pdf(x).exp()
    }

    /// Law of `c X` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameters(format!("scale factor {c} must be positive")));
        }
        let knots = self.knots.iter().map(|x| x * c).collect();
        Self::new(knots, self.logvals.clone())
    }

    /// Law of `X + shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        GridDensity {
            knots: self.knots.iter().map(|x| x + shift).collect(),
            logvals: self.logvals.clone(),
        }
    }

    /// Rescaled copy with maximum density one.
    pub fn with_unit_max(&self) -> Result<Self> {
        self.scaled(self.max_density())
    }

    pub fn moments(&self, p: f64) -> Moments {
        moments_c(self, p)
    }

    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Malformed(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["x", "logf"] {
            return Err(Error::Malformed(format!("expected header `x,logf`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut knots = Vec::new();
        let mut logvals = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Malformed(e.to_string()))?;
            let x: f64 = parse_field(&rec, 0, line)?;
            let v: f64 = parse_field(&rec, 1, line)?;
            knots.push(x);
            logvals.push(v);
        }
        Self::new(knots, logvals)
    }

    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Malformed(e.to_string());
        wtr.write_record(["x", "logf"]).map_err(io)?;
        for (x, v) in self.knots.iter().zip(&self.logvals) {
            wtr.write_record([fmt_f64(*x), fmt_f64(*v)]).map_err(io)?;
        }
        wtr.flush().map_err(|e| Error::Malformed(e.to_string()))
    }
}

fn fmt_f64(x: f64) -> String {
    if x == f64::NEG_INFINITY { "-inf".to_string() } else { format!("{x:?}") }
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec
        .get(i)
        .ok_or_else(|| Error::Malformed(format!("row {}: missing column {}", line + 1, i + 1)))?;
    raw.parse::<T>()
        .map_err(|_| Error::Malformed(format!("row {}: cannot parse `{raw}`", line + 1)))
}

impl Law for GridDensity {
    fn expect(&self, f: &dyn Fn(f64) -> f64, kinks: &[f64]) -> f64 {
        let (lo, hi) = self.support();
        let mut points = self.knots.clone();
        points.extend(kinks.iter().copied().filter(|&k| k > lo && k < hi));
        points.sort_by(f64::total_cmp);
        points.dedup();
        integrate_partition(|x| f(x) * self.pdf(x), &points, QuadOptions::precise()).value
    }

    fn max_density(&self) -> f64 {
        self.logvals.iter().copied().fold(f64::NEG_INFINITY, f64::max).exp()
    }
}

impl PiecewiseLogLinear for GridDensity {
    fn pieces(&self) -> Vec<LogLinearPiece> {
        self.knots
            .windows(2)
            .zip(self.logvals.windows(2))
            .filter(|(_, v)| v[0] > f64::NEG_INFINITY && v[1] > f64::NEG_INFINITY)
            .map(|(x, v)| LogLinearPiece {
                lo: x[0],
                hi: x[1],
                anchor: x[0],
                log_at_anchor: v[0],
                slope: (v[1] - v[0]) / (x[1] - x[0]),
            })
            .collect()
    }
}

/// Finitely supported probability sequence on `offset, offset + 1, ...`.
/// Construction normalizes the weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePMF {
    offset: i64,
    weights: Vec<f64>,
}

impl DiscretePMF {
    pub fn new(offset: i64, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Malformed("empty probability sequence".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Malformed(format!("weight {w} at position {i} is not a nonnegative number")));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Malformed("weights sum to zero".into()));
        }
        Ok(Self::new_unchecked(offset, weights.into_iter().map(|w| w / total).collect()))
    }

    pub(crate) fn new_unchecked(offset: i64, weights: Vec<f64>) -> Self {
        DiscretePMF { offset, weights }
    }

    pub fn point_mass(n: i64) -> Self {
        DiscretePMF { offset: n, weights: vec![1.0] }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integer support `offset ..= offset + len - 1`.
    pub fn support(&self) -> std::ops::RangeInclusive<i64> {
        self.offset..=self.offset + self.weights.len() as i64 - 1
    }

    pub fn pmf(&self, n: i64) -> f64 {
        let i = n - self.offset;
        if i < 0 || i >= self.weights.len() as i64 { 0.0 } else { self.weights[i as usize] }
    }

    /// Smallest integer at which the maximum weight is attained.
    pub fn mode(&self) -> i64 {
        let mut best = 0;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > self.weights[best] {
                best = i;
            }
        }
        self.offset + best as i64
    }

    pub fn moments(&self, p: f64) -> Moments {
        moments_d(self, p)
    }

    pub fn shifted(&self, by: i64) -> Self {
        DiscretePMF { offset: self.offset + by, weights: self.weights.clone() }
    }

    pub fn reflected(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        DiscretePMF { offset: -(self.offset + self.weights.len() as i64 - 1), weights }
    }

    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Malformed(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["n", "p"] {
            return Err(Error::Malformed(format!("expected header `n,p`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut rows: Vec<(i64, f64)> = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Malformed(e.to_string()))?;
            let n: i64 = parse_field(&rec, 0, line)?;
            let w: f64 = parse_field(&rec, 1, line)?;
            if w < 0.0 {
                return Err(Error::Malformed(format!("row {}: negative weight {w}", line + 1)));
            }
            if let Some(&(prev, _)) = rows.last() {
                if n <= prev {
                    return Err(Error::Malformed(format!("row {}: support points must increase", line + 1)));
                }
            }
            rows.push((n, w));
        }
        let (first, last) = match (rows.first(), rows.last()) {
            (Some(a), Some(b)) => (a.0, b.0),
            _ => return Err(Error::Malformed("no rows".into())),
        };
        let mut weights = vec![0.0; (last - first + 1) as usize];
        for (n, w) in rows {
            weights[(n - first) as usize] = w;
        }
        Self::new(first, weights)
    }

    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Malformed(e.to_string());
        wtr.write_record(["n", "p"]).map_err(io)?;
        for (n, w) in self.support().zip(&self.weights) {
            wtr.write_record([n.to_string(), format!("{w:?}")]).map_err(io)?;
        }
        wtr.flush().map_err(|e| Error::Malformed(e.to_string()))
    }
}

impl Law for DiscretePMF {
    fn expect(&self, f: &dyn Fn(f64) -> f64, _kinks: &[f64]) -> f64 {
        self.support().zip(&self.weights).map(|(n, &w)| w * f(n as f64)).sum()
    }

    fn max_density(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }
}

/// A density read from one of the two CSV formats.
#[derive(Debug, Clone)]
pub enum LoadedDensity {
    Grid(GridDensity),
    Pmf(DiscretePMF),
}

/// Reads either format, dispatching on the header line.
pub fn load_csv(text: &str) -> Result<LoadedDensity> {
    let header: String = text.lines().next().unwrap_or("").chars().filter(|c| !c.is_whitespace()).collect();
    match header.as_str() {
        "x,logf" => GridDensity::from_csv(text.as_bytes()).map(LoadedDensity::Grid),
        "n,p" => DiscretePMF::from_csv(text.as_bytes()).map(LoadedDensity::Pmf),
        other => Err(Error::Malformed(format!("unrecognised header `{other}`; expected `x,logf` or `n,p`"))),
    }
}

/// Slopes must be non-increasing up to an absolute `1e-12`.
pub fn is_logconcave_c(f: &GridDensity) -> bool {
    f.slopes().windows(2).all(|s| s[1] <= s[0] + SLOPE_TOL)
}

/// Contiguous positive support and `w[i]^2 >= w[i-1] w[i+1]`.
pub fn is_logconcave_d(g: &DiscretePMF) -> bool {
    let w = g.weights();
    let first = w.iter().position(|&x| x > 0.0);
    let last = w.iter().rposition(|&x| x > 0.0);
    let (first, last) = match (first, last) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    let core = &w[first..=last];
    if core.iter().any(|&x| x <= 0.0) {
        return false;
    }
    core.windows(3).all(|t| t[1] * t[1] >= t[0] * t[2] * (1.0 - 1e-12))
}

pub fn moments_c(f: &GridDensity, p: f64) -> Moments {
    let mean = f.expect(&|x| x, &[]);
    let var = f.expect(&|x| (x - mean) * (x - mean), &[]);
    let sigma_p = if p == 2.0 { var } else { f.expect(&|x| (x - mean).abs().powf(p), &[mean]) };
    Moments { mean, var, sigma_p }
}

pub fn moments_d(g: &DiscretePMF, p: f64) -> Moments {
    let mean = g.expect(&|x| x, &[]);
    let var = g.expect(&|x| (x - mean) * (x - mean), &[]);
    let sigma_p = g.expect(&|x| (x - mean).abs().powf(p), &[]);
    Moments { mean, var, sigma_p }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousGenConfig {
    pub knot_count: usize,
    pub domain: (f64, f64),
    pub slope_scale: f64,
}

impl Default for ContinuousGenConfig {
    fn default() -> Self {
        ContinuousGenConfig { knot_count: 48, domain: (-3.0, 3.0), slope_scale: 4.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteGenConfig {
    pub support_len: usize,
    pub concavity_scale: f64,
}

impl Default for DiscreteGenConfig {
    fn default() -> Self {
        DiscreteGenConfig { support_len: 40, concavity_scale: 1.0 }
    }
}

/// Non-increasing slope sequence with a random overall shape: mixed signs,
/// all negative (decreasing density) or all positive, at a random scale.
fn concave_slopes(rng: &mut ChaCha8Rng, count: usize, scale: f64) -> Vec<f64> {
    let magnitude = scale * 10f64.powf(rng.random_range(-2.0..0.5));
    let shape = rng.random_range(0..4);
    let mut slopes: Vec<f64> = (0..count)
        .map(|_| {
            let u: f64 = rng.random_range(-1.0..1.0);
            match shape {
                0 => -magnitude * u.abs(),
                1 => magnitude * u.abs(),
                _ => magnitude * u,
            }
        })
        .collect();
    slopes.sort_by(|a, b| b.total_cmp(a));
    slopes
}

/// Random log-concave grid density: concave piecewise-linear potential on
/// sorted random knots, exponentiated and normalized.
pub fn gen_logconcave_c(seed: u64, config: &ContinuousGenConfig) -> Result<GridDensity> {
    let k = config.knot_count;
    if k < 2 {
        return Err(Error::InvalidParameters(format!("knot_count must be at least 2, got {k}")));
    }
    let (lo, hi) = config.domain;
    if !(hi > lo) {
        return Err(Error::InvalidParameters(format!("empty domain ({lo}, {hi})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut knots: Vec<f64> = (0..k - 2).map(|_| rng.random_range(lo..hi)).collect();
    knots.push(lo);
    knots.push(hi);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let slopes = concave_slopes(&mut rng, knots.len() - 1, config.slope_scale / (hi - lo));
    let mut logvals = Vec::with_capacity(knots.len());
    logvals.push(0.0);
    for (i, s) in slopes.iter().enumerate() {
        let next = logvals[i] + s * (knots[i + 1] - knots[i]);
        logvals.push(next);
    }
    let top = logvals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    logvals.iter_mut().for_each(|v| *v -= top);
    GridDensity::new(knots, logvals)
}

/// Random log-concave probability sequence of (at most) `support_len`
/// points; negligible end weights are trimmed so the support stays contiguous.
pub fn gen_logconcave_d(seed: u64, config: &DiscreteGenConfig) -> Result<DiscretePMF> {
    let len = config.support_len;
    if len == 0 {
        return Err(Error::InvalidParameters("support_len must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slopes = concave_slopes(&mut rng, len.saturating_sub(1), config.concavity_scale);
    let mut logw = Vec::with_capacity(len);
    logw.push(0.0);
    for s in &slopes {
        let next = logw[logw.len() - 1] + s;
        logw.push(next);
    }
    let top = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let first = logw.iter().position(|&v| v - top > -600.0).unwrap_or(0);
    let last = logw.iter().rposition(|&v| v - top > -600.0).unwrap_or(len - 1);
    let offset = rng.random_range(-20..=20) + first as i64;
    let weights = logw[first..=last].iter().map(|v| (v - top).exp()).collect();
    DiscretePMF::new(offset, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Midpoint Riemann sum of `g(x) f(x)` on a fine uniform grid.
    fn riemann(f: &GridDensity, g: impl Fn(f64) -> f64, n: usize) -> f64 {
        let (lo, hi) = f.support();
        let h = (hi - lo) / n as f64;
        (0..n).map(|i| lo + (i as f64 + 0.5) * h).map(|x| g(x) * f.pdf(x) * h).sum()
    }

    fn triangle() -> GridDensity {
        GridDensity::new(vec![-1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn logconcavity_checks_continuous() {
        assert!(is_logconcave_c(&GridDensity::uniform(-0.5, 0.5).unwrap()));
        assert!(is_logconcave_c(&triangle()));
        let valley = GridDensity::new(vec![-1.0, 0.0, 1.0], vec![0.0, -1.0, 0.0]).unwrap();
        assert!(!is_logconcave_c(&valley));
        let edge = GridDensity::new(vec![-1.0, 0.0, 1.0], vec![f64::NEG_INFINITY, 0.0, -1.0]).unwrap();
        assert!(is_logconcave_c(&edge));
    }

    #[test]
    fn logconcavity_checks_discrete() {
        let geo = crate::discrete::AsymLaplaceD::geometric(0.7, 0).unwrap().to_pmf();
        assert!(is_logconcave_d(&geo));
        assert!(!is_logconcave_d(&DiscretePMF::new(0, vec![1.0, 0.0, 1.0]).unwrap()));
        assert!(is_logconcave_d(&DiscretePMF::new(0, vec![1.0, 3.0, 2.0]).unwrap()));
        assert!(!is_logconcave_d(&DiscretePMF::new(0, vec![3.0, 1.0, 3.0]).unwrap()));
    }

    #[test]
    fn structural_validation() {
        assert!(GridDensity::new(vec![0.0], vec![0.0]).is_err());
        assert!(GridDensity::new(vec![0.0, 0.0], vec![0.0, 0.0]).is_err());
        assert!(GridDensity::new(vec![0.0, 1.0, 2.0], vec![0.0, f64::NEG_INFINITY, 0.0]).is_err());
        assert!(DiscretePMF::new(0, vec![0.5, -0.1]).is_err());
        assert!(DiscretePMF::new(0, vec![]).is_err());
    }

    #[test]
    fn normalization_and_max() {
        let f = triangle();
        assert!((f.total_mass() - 1.0).abs() < 1e-14);
        let e = std::f64::consts::E;
        let c = 2.0 * (e - 1.0);
        assert!((f.max_density() - e / c).abs() < 1e-14);
        assert!((riemann(&f, |_| 1.0, 200_000) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn uniform_moments() {
        let u = GridDensity::uniform(-0.5, 0.5).unwrap();
        let m = u.moments(2.0);
        assert!(m.mean.abs() < 1e-15);
        assert!((m.var - 1.0 / 12.0).abs() < 1e-15 && (m.sigma_p - 1.0 / 12.0).abs() < 1e-15);
        for p in [1.0, 1.5, 3.0, 4.0] {
            let s = u.moments(p).sigma_p;
            assert!((s - 1.0 / (2f64.powf(p) * (p + 1.0))).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn triangle_moments_match_riemann() {
        let f = triangle().shifted(0.25);
        let m = f.moments(3.0);
        let mean = riemann(&f, |x| x, 400_000);
        let var = riemann(&f, |x| (x - mean).powi(2), 400_000);
        let s3 = riemann(&f, |x| (x - mean).abs().powi(3), 400_000);
        assert!((m.mean - mean).abs() < 1e-7);
        assert!((m.var - var).abs() < 1e-7);
        assert!((m.sigma_p - s3).abs() < 1e-7);
    }

    #[test]
    fn translation_equivariance() {
        let f = gen_logconcave_c(7, &ContinuousGenConfig::default()).unwrap();
        let g = f.shifted(3.5);
        let (a, b) = (f.moments(1.5), g.moments(1.5));
        assert!((b.mean - a.mean - 3.5).abs() < 1e-10);
        assert!((b.var - a.var).abs() < 1e-10);
        assert!((b.sigma_p - a.sigma_p).abs() < 1e-10);
    }

    #[test]
    fn discrete_moments() {
        let m = DiscretePMF::point_mass(4).moments(3.0);
        assert_eq!((m.mean, m.var, m.sigma_p), (4.0, 0.0, 0.0));
        let fair = DiscretePMF::new(0, vec![0.5, 0.5]).unwrap();
        for p in [1.0, 2.0, 3.5] {
            let m = fair.moments(p);
            assert_eq!(m.mean, 0.5);
            assert_eq!(m.var, 0.25);
            assert!((m.sigma_p - 0.5f64.powf(p)).abs() < 1e-15);
        }
        let d = crate::discrete::AsymLaplaceD::geometric(0.4, 2).unwrap();
        let (mean, var) = d.mean_var();
        let m = d.to_pmf().moments(2.0);
        assert!((m.mean - mean).abs() < 1e-10 && (m.var - var).abs() < 1e-10);
    }

    #[test]
    fn generators_are_deterministic_and_valid() {
        let cfg = ContinuousGenConfig::default();
        assert_eq!(gen_logconcave_c(11, &cfg).unwrap(), gen_logconcave_c(11, &cfg).unwrap());
        let dcfg = DiscreteGenConfig::default();
        assert_eq!(gen_logconcave_d(11, &dcfg).unwrap(), gen_logconcave_d(11, &dcfg).unwrap());
        for seed in 0..1000 {
            let f = gen_logconcave_c(seed, &cfg).unwrap();
            assert!(is_logconcave_c(&f), "seed {seed}");
            let mass = crate::quad::integrate_partition(|x| f.pdf(x), f.knots(), QuadOptions::precise()).value;
            assert!((mass - 1.0).abs() < 1e-10, "seed {seed}: {mass}");
            let g = gen_logconcave_d(seed, &dcfg).unwrap();
            assert!(is_logconcave_d(&g), "seed {seed}");
            assert!((g.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(gen_logconcave_c(0, &ContinuousGenConfig { knot_count: 1, ..cfg }).is_err());
    }

    #[test]
    fn max_is_attained_at_a_knot() {
        let f = gen_logconcave_c(3, &ContinuousGenConfig { knot_count: 200, ..Default::default() }).unwrap();
        let (lo, hi) = f.support();
        let scan = (0..=100_000).map(|i| f.pdf(lo + (hi - lo) * i as f64 / 1e5)).fold(0.0, f64::max);
        assert!(scan <= f.max_density() * (1.0 + 1e-12));
        assert!(f.knots().iter().any(|&x| f.pdf(x) == f.max_density()));
    }

    #[test]
    fn csv_round_trip_and_rejections() {
        let f = triangle();
        let mut buf = Vec::new();
        f.to_csv(&mut buf).unwrap();
        let back = GridDensity::from_csv(buf.as_slice()).unwrap();
        assert_eq!(back.knots(), f.knots());
        for (a, b) in back.logvals().iter().zip(f.logvals()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(GridDensity::from_csv("x,logf\n0,0\n-1,0\n".as_bytes()).is_err());
        assert!(GridDensity::from_csv("x,y\n0,0\n1,0\n".as_bytes()).is_err());
        assert!(DiscretePMF::from_csv("n,p\n0,0.5\n1,-0.5\n".as_bytes()).is_err());
        assert!(DiscretePMF::from_csv("n,p\n1,0.5\n0,0.5\n".as_bytes()).is_err());
        let g = DiscretePMF::from_csv("n,p\n-1,1\n0,2\n1,1\n".as_bytes()).unwrap();
        assert_eq!(g.offset(), -1);
        assert_eq!(g.weights(), &[0.25, 0.5, 0.25]);
        assert!(matches!(load_csv("n,p\n0,1\n").unwrap(), LoadedDensity::Pmf(_)));
        assert!(matches!(load_csv("x, logf\n0,-inf\n1,0\n2,-1\n").unwrap(), LoadedDensity::Grid(_)));
        assert!(load_csv("a,b\n").is_err());
    }
}
