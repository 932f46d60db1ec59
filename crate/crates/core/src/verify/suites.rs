use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{InequalityReport, Tolerances};
use crate::continuous::{interval_overlap, AsymLaplaceC, Interval};
use crate::discrete::{solve_pq, AsymLaplaceD};
use crate::error::{Error, Result};
use crate::extremal::{certify_majorant_c, certify_majorant_d};
use crate::law::Law;
use crate::logconcave::{
    gen_logconcave_c, gen_logconcave_d, ContinuousGenConfig, DiscreteGenConfig, DiscretePMF, GridDensity,
};
use crate::orders::{certify_order, empirical_order_check, OrderCertificate, OrderClass, Verdict};
use crate::orlicz::{acm_bounds, orlicz_norm_centered, YoungFunction};

const MAX_KNOTS: usize = 256;
const MAX_SUPPORT: usize = 200;
const NORM_TOL: f64 = 1e-11;
const MOMENT_TOL: f64 = 1e-8;

/// Exponents used by the Orlicz and moment suites.
pub const P_LIST: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    VariancePoint,
    OrliczSandwich,
    Acm,
    DiscreteVariancePoint,
    DiscreteMax,
    OrderMachinery,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::VariancePoint,
        Suite::OrliczSandwich,
        Suite::Acm,
        Suite::DiscreteVariancePoint,
        Suite::DiscreteMax,
        Suite::OrderMachinery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::VariancePoint => "variance-point",
            Suite::OrliczSandwich => "orlicz-sandwich",
            Suite::Acm => "acm",
            Suite::DiscreteVariancePoint => "discrete-variance-point",
            Suite::DiscreteMax => "discrete-max",
            Suite::OrderMachinery => "order-machinery",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::OrliczSandwich => 200,
            Suite::OrderMachinery => 500,
            _ => 1000,
        }
    }

    pub fn run(self, trials: usize, seed: u64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
        match self {
            Suite::VariancePoint => suite_variance_point(trials, seed, tol),
            Suite::OrliczSandwich => suite_orlicz_sandwich(trials, seed, &P_LIST, tol),
            Suite::Acm => suite_acm(trials, seed, &P_LIST, tol),
            Suite::DiscreteVariancePoint => suite_discrete_variance_point(trials, seed, tol),
            Suite::DiscreteMax => suite_discrete_max(trials, seed, tol),
            Suite::OrderMachinery => suite_order_machinery(trials, seed, tol),
        }
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap_or(0) as u64 + 1
    }
}

/// Per-instance seeds drawn from one stream, so instance `i` only depends on `(seed, i)`.
fn instance_seeds(suite: Suite, seed: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.salt());
    (0..n).map(|_| rng.random()).collect()
}

fn par_records<T: Sync>(items: &[T], f: impl Fn(usize, &T) -> Result<Vec<InequalityReport>> + Sync) -> Result<Vec<InequalityReport>> {
    let chunks: Vec<Vec<InequalityReport>> =
        items.par_iter().enumerate().map(|(i, item)| f(i, item)).collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Random generator settings for one continuous instance.
fn random_config_c(rng: &mut ChaCha8Rng) -> ContinuousGenConfig {
    let left = rng.random_range(0.25..4.0);
    let right = rng.random_range(0.25..4.0);
    ContinuousGenConfig {
        knot_count: rng.random_range(3..=64usize).min(MAX_KNOTS),
        domain: (-left, right),
        slope_scale: rng.random_range(0.5..12.0),
    }
}

fn random_density_c(seed: u64) -> Result<GridDensity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = random_config_c(&mut rng);
    gen_logconcave_c(rng.random(), &cfg)
}

fn random_pmf(seed: u64) -> Result<DiscretePMF> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = DiscreteGenConfig {
        support_len: rng.random_range(1..=60usize).min(MAX_SUPPORT),
        concavity_scale: rng.random_range(0.02..2.0),
    };
    gen_logconcave_d(rng.random(), &cfg)
}

fn variance_point_record(tol: &Tolerances, instance: String, var: f64, mean: f64, ft: f64, t: f64, eq: Option<bool>) -> InequalityReport {
    let rhs = 1.0 / (ft * ft) + (mean - t) * (mean - t);
    InequalityReport::new(Suite::VariancePoint.name(), instance, 2.0 * var, rhs, tol, eq)
}

/// `2 Var(X) <= 1/f(t)^2 + (EX - t)^2` on random densities (eleven interior
/// points each) and on asymmetric Laplace laws at and away from the mode.
pub fn suite_variance_point(trials: usize, seed: u64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    let laplace = AsymLaplaceC::new(1.0, 1.0, 0.0)?;
    let (m, v) = laplace.mean_var();
    out.push(variance_point_record(tol, "laplace l1=1 l2=1 t=0".into(), v, m, laplace.pdf(0.0), 0.0, Some(true)));
    let u = GridDensity::uniform(0.0, 1.0)?;
    let mu = u.moments(2.0);
    out.push(variance_point_record(tol, "uniform[0,1] t=0.5".into(), mu.var, mu.mean, u.pdf(0.5), 0.5, Some(false)));

    let seeds = instance_seeds(Suite::VariancePoint, seed, trials);
    out.extend(par_records(&seeds, |i, &s| {
        let f = random_density_c(s)?;
        let m = f.moments(2.0);
        let (lo, hi) = f.support();
        Ok((1..=11)
            .map(|j| {
                let t = lo + (hi - lo) * j as f64 / 12.0;
                let inst = format!("grid#{i} seed={s} knots={} t={t:.6}", f.knots().len());
                variance_point_record(tol, inst, m.var, m.mean, f.pdf(t), t, Some(false))
            })
            .collect())
    })?);

    let al_seeds = instance_seeds(Suite::VariancePoint, seed ^ 0xA5A5, trials.min(200));
    out.extend(par_records(&al_seeds, |i, &s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut scale = || -> f64 { if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.05..3.0) } };
        let (l1, l2) = (scale(), scale().max(0.05));
        let mode = rng.random_range(-2.0..2.0);
        let d = AsymLaplaceC::new(l1, l2, mode)?;
        let (m, v) = d.mean_var();
        let mut recs = vec![variance_point_record(tol, format!("al#{i} l1={l1} l2={l2} t=mode"), v, m, d.pdf(mode), mode, Some(true))];
        for (step, scale) in [(-0.5, l1), (0.5, l2)] {
            if scale > 0.0 {
                let t = mode + step * scale;
                recs.push(variance_point_record(tol, format!("al#{i} l1={l1} l2={l2} t=mode{step:+}l"), v, m, d.pdf(t), t, Some(false)));
            }
        }
        Ok(recs)
    })?);
    Ok(out)
}

/// `||U||_p <= ||X - EX||_p <= ||Z - EZ||_p` for `psi(x) = x^p` and random
/// `X` rescaled to maximum density one; `U` is uniform on an interval of
/// length one and `Z` a rate-one exponential.
pub fn suite_orlicz_sandwich(trials: usize, seed: u64, p_list: &[f64], tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let name = Suite::OrliczSandwich.name();
    let u = GridDensity::uniform(-0.5, 0.5)?;
    let z = AsymLaplaceC::exponential(1.0, 0.0)?;
    let psis: Vec<YoungFunction> = p_list.iter().map(|&p| YoungFunction::power(p)).collect::<Result<_>>()?;
    let bounds: Vec<(f64, f64)> = psis
        .iter()
        .map(|psi| Ok((orlicz_norm_centered(&u, psi, NORM_TOL)?, orlicz_norm_centered(&z, psi, NORM_TOL)?)))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let u_shift = GridDensity::uniform(2.0, 3.0)?;
    let z_shift = AsymLaplaceC::exponential(1.0, -3.0)?;
    for ((&p, psi), &(nu, nz)) in p_list.iter().zip(&psis).zip(&bounds) {
        let x = orlicz_norm_centered(&u_shift, psi, NORM_TOL)?;
        out.push(InequalityReport::new(name, format!("X=uniform[2,3] p={p} lower"), nu, x, tol, Some(true)));
        let x = orlicz_norm_centered(&z_shift, psi, NORM_TOL)?;
        out.push(InequalityReport::new(name, format!("X=exp(1)-3 p={p} upper"), x, nz, tol, Some(true)));
    }
    let constants = [(2.0, 1.0 / 12.0, 1.0), (4.0, 1.0 / 80.0, 9.0)];
    for (p, lower, upper) in constants {
        if let Some(k) = p_list.iter().position(|&q| q == p) {
            let (nu, nz) = bounds[k];
            out.push(InequalityReport::new(name, format!("constant lower p={p}"), lower, nu.powf(p), tol, Some(true)));
            out.push(InequalityReport::new(name, format!("constant upper p={p}"), nz.powf(p), upper, tol, Some(true)));
        }
    }

    let seeds = instance_seeds(Suite::OrliczSandwich, seed, trials);
    out.extend(par_records(&seeds, |i, &s| {
        let x = random_density_c(s)?.with_unit_max()?;
        let mut recs = Vec::with_capacity(2 * psis.len());
        for ((&p, psi), &(nu, nz)) in p_list.iter().zip(&psis).zip(&bounds) {
            let nx = orlicz_norm_centered(&x, psi, NORM_TOL)?;
            recs.push(InequalityReport::new(name, format!("grid#{i} seed={s} p={p} lower"), nu, nx, tol, None));
            recs.push(InequalityReport::new(name, format!("grid#{i} seed={s} p={p} upper"), nx, nz, tol, None));
        }
        Ok(recs)
    })?);
    Ok(out)
}

/// `lower(p) <= M^p E|X - EX|^p <= upper(p)`, with the uniform and the
/// exponential attaining the two ends.
pub fn suite_acm(trials: usize, seed: u64, p_list: &[f64], tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let name = Suite::Acm.name();
    let bounds: Vec<_> = p_list.iter().map(|&p| acm_bounds(p)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let u = GridDensity::uniform(-1.0, 3.0)?;
    let z = AsymLaplaceC::exponential(2.0, 1.0)?;
    for (&p, b) in p_list.iter().zip(&bounds) {
        let su = u.max_density().powf(p) * u.moments(p).sigma_p;
        out.push(InequalityReport::new(name, format!("uniform[-1,3] p={p} lower"), b.lower, su, tol, Some(true)));
        out.push(InequalityReport::new(name, format!("uniform[-1,3] p={p} upper"), su, b.upper, tol, Some(false)));
        let sz = z.max_density().powf(p) * z.central_abs_moment(p);
        out.push(InequalityReport::new(name, format!("exp(2)+1 p={p} upper"), sz, b.upper, tol, Some(true)));
        out.push(InequalityReport::new(name, format!("exp(2)+1 p={p} lower"), b.lower, sz, tol, Some(false)));
    }

    let seeds = instance_seeds(Suite::Acm, seed, trials);
    out.extend(par_records(&seeds, |i, &s| {
        let f = random_density_c(s)?;
        let m = f.max_density();
        let mut recs = Vec::with_capacity(2 * p_list.len());
        for (&p, b) in p_list.iter().zip(&bounds) {
            let v = m.powf(p) * f.moments(p).sigma_p;
            recs.push(InequalityReport::new(name, format!("grid#{i} seed={s} p={p} lower"), b.lower, v, tol, None));
            recs.push(InequalityReport::new(name, format!("grid#{i} seed={s} p={p} upper"), v, b.upper, tol, None));
        }
        Ok(recs)
    })?);
    Ok(out)
}

fn discrete_point_record(tol: &Tolerances, inst: String, g: &DiscretePMF, mean: f64, var: f64, n: i64, eq: Option<bool>) -> InequalityReport {
    let gn = g.pmf(n);
    let d = mean - n as f64;
    InequalityReport::new(Suite::DiscreteVariancePoint.name(), inst, 2.0 * var, 1.0 / (gn * gn) - 1.0 + d * d, tol, eq)
}

/// Records for every support point of `g`, the nearest-integer bound,
/// and the integer-mean sharpening when the mean is an integer.
fn discrete_point_records(tol: &Tolerances, label: &str, g: &DiscretePMF, eq_at: impl Fn(i64) -> Option<bool>) -> Vec<InequalityReport> {
    let name = Suite::DiscreteVariancePoint.name();
    let m = g.moments(2.0);
    let mut recs: Vec<InequalityReport> = g
        .support()
        .filter(|&n| g.pmf(n) > 0.0)
        .map(|n| discrete_point_record(tol, format!("{label} n={n}"), g, m.mean, m.var, n, eq_at(n)))
        .collect();
    let nearest = m.mean.round();
    let pn = g.pmf(nearest as i64);
    recs.push(InequalityReport::new(name, format!("{label} nearest-integer"), pn * pn, 1.0 / (0.75 + 2.0 * m.var), tol, None));
    if (m.mean - nearest).abs() <= 1e-12 * m.mean.abs().max(1.0) {
        recs.push(InequalityReport::new(name, format!("{label} integer-mean"), pn * pn, 1.0 / (1.0 + 2.0 * m.var), tol, None));
    }
    recs
}

/// Symmetrization `w_k = g(c + k) g(c - k)` about the mode `c`; log-concave with mean zero.
fn symmetrized(g: &DiscretePMF) -> Result<DiscretePMF> {
    let c = g.mode();
    let reach = (c - g.offset()).min(*g.support().end() - c);
    let weights = (-reach..=reach).map(|k| g.pmf(c + k) * g.pmf(c - k)).collect();
    DiscretePMF::new(-reach, weights)
}

/// `2 Var(Y) <= 1/P(Y=n)^2 - 1 + (EY - n)^2` at every support point.
pub fn suite_discrete_variance_point(trials: usize, seed: u64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let seeds = instance_seeds(Suite::DiscreteVariancePoint, seed, trials);
    let mut out = par_records(&seeds, |i, &s| {
        let g = random_pmf(s)?;
        let single = g.weights().len() == 1;
        let mut recs = discrete_point_records(tol, &format!("pmf#{i} seed={s}"), &g, |_| Some(single));
        if i % 5 == 0 {
            let sym = symmetrized(&g)?;
            let single = sym.weights().len() == 1;
            recs.extend(discrete_point_records(tol, &format!("sym#{i} seed={s}"), &sym, |_| Some(single)));
        }
        Ok(recs)
    })?;

    let al_seeds = instance_seeds(Suite::DiscreteVariancePoint, seed ^ 0xA5A5, trials.min(200));
    out.extend(par_records(&al_seeds, |i, &s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let g0: f64 = rng.random_range(0.05..1.0);
        let reach = (1.0 / g0 - 1.0) * 0.999;
        let mu = if reach > 0.0 { rng.random_range(-reach..=reach) } else { 0.0 };
        let mode = rng.random_range(-10..=10);
        let d = AsymLaplaceD { mode, ..solve_pq(g0, mu)? };
        let g = d.to_pmf();
        let label = format!("al#{i} p={:.6} q={:.6} mode={mode}", d.p, d.q);
        let m = g.moments(2.0);
        let mut recs = vec![discrete_point_record(tol, format!("{label} n=mode"), &g, m.mean, m.var, mode, Some(true))];
        for n in [mode - 1, mode + 1] {
            if g.pmf(n) > 0.0 {
                recs.push(discrete_point_record(tol, format!("{label} n={n}"), &g, m.mean, m.var, n, Some(false)));
            }
        }
        Ok(recs)
    })?);
    Ok(out)
}

fn discrete_max_records(tol: &Tolerances, label: &str, g: &DiscretePMF, eq: Option<bool>) -> Vec<InequalityReport> {
    let name = Suite::DiscreteMax.name();
    let m = g.max_density();
    let mo = g.moments(4.0);
    vec![
        InequalityReport::new(name, format!("{label} variance"), m * m * mo.var + m, 1.0, tol, eq),
        InequalityReport::new(
            name,
            format!("{label} fourth"),
            m.powi(4) * mo.sigma_p + m * (m * m - 10.0 * m + 18.0),
            9.0,
            tol,
            eq,
        ),
    ]
}

/// `M^2 Var + M <= 1` and `M^4 σ_4 + M(M^2 - 10M + 18) <= 9`, sharp exactly
/// on geometric laws up to translation and reflection.
pub fn suite_discrete_max(trials: usize, seed: u64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let mut out = discrete_max_records(tol, "point-mass", &DiscretePMF::point_mass(3), Some(true));
    for k in 1..=9 {
        let q = k as f64 / 10.0;
        for (label, d) in [
            ("geometric", AsymLaplaceD::geometric(q, 0)?),
            ("reflected-geometric", AsymLaplaceD::new(q, 0.0, 0)?),
            ("translated-geometric", AsymLaplaceD::geometric(q, 7)?),
        ] {
            out.extend(discrete_max_records(tol, &format!("{label} q={q}"), &d.to_pmf(), Some(true)));
        }
        let nudged = AsymLaplaceD::new(1e-3, q, 0)?;
        out.extend(discrete_max_records(tol, &format!("perturbed-geometric p=0.001 q={q}"), &nudged.to_pmf(), Some(false)));
    }

    let seeds = instance_seeds(Suite::DiscreteMax, seed, trials);
    out.extend(par_records(&seeds, |i, &s| {
        let g = random_pmf(s)?;
        let single = g.weights().len() == 1;
        Ok(discrete_max_records(tol, &format!("pmf#{i} seed={s}"), &g, Some(single)))
    })?);

    let al_seeds = instance_seeds(Suite::DiscreteMax, seed ^ 0xA5A5, trials.min(100));
    out.extend(par_records(&al_seeds, |i, &s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let d = AsymLaplaceD::new(rng.random_range(0.05..0.95), rng.random_range(0.05..0.95), rng.random_range(-5..=5))?;
        Ok(discrete_max_records(tol, &format!("al#{i} p={:.6} q={:.6}", d.p, d.q), &d.to_pmf(), Some(false)))
    })?);
    Ok(out)
}

fn soundness_record(tol: &Tolerances, inst: String, cert: &OrderCertificate, l1: &dyn Law, l2: &dyn Law) -> Result<InequalityReport> {
    let name = Suite::OrderMachinery.name();
    if cert.verdict != Verdict::Certified {
        // A construction that should certify but does not is reported as a unit violation.
        return Ok(InequalityReport::new(name, format!("{inst} verdict={:?}", cert.verdict), 1.0, 0.0, tol, None));
    }
    let class = OrderClass::for_order(cert.order_n)
        .ok_or_else(|| Error::InvalidParameters(format!("no bank for order {}", cert.order_n)))?;
    let report = empirical_order_check(l1, l2, class)?;
    Ok(InequalityReport::new(name, format!("{inst} soundness"), report.max_violation, 0.0, tol, None))
}

/// Tail measure of the level set as a function of the right scale along the mean-zero family.
fn lattice_records(tol: &Tolerances, max: f64, a: f64, level: f64) -> Result<Vec<InequalityReport>> {
    let name = Suite::OrderMachinery.name();
    let t = level * max;
    let values: Vec<f64> = (0..=100)
        .map(|j| AsymLaplaceC::mean_zero(max, j as f64 / (100.0 * max))?.tail_superlevel_measure(a, t))
        .collect::<Result<_>>()?;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let maxv = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let label = format!("lattice M={max} a={a} t={t}");
    Ok(vec![
        InequalityReport::new(name, format!("{label} min-at-balanced"), values[50], min, tol, Some(true)),
        InequalityReport::new(name, format!("{label} max-at-end"), maxv, values[0], tol, Some(true)),
        InequalityReport::new(name, format!("{label} ends-agree"), values[100], values[0], tol, Some(true)),
    ])
}

/// Certificate soundness against the test banks, equality rigidity for the
/// majorant pairs, the level-set extremality lattice and the overlap formula.
pub fn suite_order_machinery(trials: usize, seed: u64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let name = Suite::OrderMachinery.name();
    let seeds = instance_seeds(Suite::OrderMachinery, seed, trials);
    let mut out = par_records(&seeds, |i, &s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        match i % 3 {
            0 => {
                let f = random_density_c(rng.random())?;
                let (lo, hi) = f.support();
                let t = lo + (hi - lo) * rng.random_range(0.05..0.95);
                let (m, cert) = certify_majorant_c(&f, t, MOMENT_TOL)?;
                let inst = format!("majorant-c#{i} seed={s} t={t:.6}");
                let gap = m.expect(&|x| (x - t) * (x - t), &[t]) - f.expect(&|x| (x - t) * (x - t), &[t]);
                Ok(vec![
                    soundness_record(tol, inst.clone(), &cert, &f, &m)?,
                    InequalityReport::new(name, format!("{inst} rigidity"), 0.0, gap, tol, Some(false)),
                ])
            }
            1 => {
                let f = random_density_c(rng.random())?;
                let shift = f.variance().sqrt() * rng.random_range(0.05..1.0);
                let g = f.shifted(shift);
                let cert = certify_order(&f, &g, 1, MOMENT_TOL);
                Ok(vec![soundness_record(tol, format!("shift#{i} seed={s} by={shift:.6}"), &cert, &f, &g)?])
            }
            _ => {
                let g = random_pmf(rng.random())?;
                // Points far in the tail give ratios near one, which makes every bank sum long.
                let peak = g.max_density();
                let support: Vec<i64> = g.support().filter(|&n| g.pmf(n) >= 1e-4 * peak).collect();
                let n = support[rng.random_range(0..support.len())];
                let (m, cert) = certify_majorant_d(&g, n, MOMENT_TOL)?;
                let inst = format!("majorant-d#{i} seed={s} n={n}");
                if cert.crossings.is_identical() {
                    // Asymmetric Laplace inputs are their own majorant.
                    return Ok(vec![soundness_record(tol, inst, &cert, &g, &m)?]);
                }
                let gap = m.variance() - g.variance();
                Ok(vec![
                    soundness_record(tol, inst.clone(), &cert, &g, &m)?,
                    InequalityReport::new(name, format!("{inst} rigidity"), 0.0, gap, tol, Some(false)),
                ])
            }
        }
    })?;

    let mut cells = Vec::new();
    for &max in &[0.5, 1.0, 2.0] {
        for &a in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            for &level in &[0.02, 0.1, 0.3, 0.6, 0.9] {
                cells.push((max, a, level));
            }
        }
    }
    out.extend(par_records(&cells, |_, &(max, a, level)| lattice_records(tol, max, a, level))?);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x0E);
    for k in 0..trials.max(1000) {
        // Dyadic inputs keep every operation exact.
        let a = rng.random_range(1..=512) as f64 / 64.0;
        let b = rng.random_range(1..=512) as f64 / 64.0;
        let x = rng.random_range(-1024..=1024) as f64 / 64.0;
        let direct = Interval::new(-a, a).intersect(&Interval::new(x - b, x + b)).measure();
        let formula = interval_overlap(a, b, x);
        out.push(InequalityReport::new(name, format!("overlap#{k} a={a} b={b} x={x}"), (formula - direct).abs(), 0.0, tol, Some(true)));
    }
    Ok(out)
}
