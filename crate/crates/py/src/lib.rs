//! Python bindings: distribution families, generators, majorants, Orlicz
//! norms, moment bounds and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use logconcave::discrete::{sigma4_closed, solve_pq, variance_reparam};
use logconcave::extremal::{certify_majorant_c, certify_majorant_d, majorant_c, majorant_d};
use logconcave::logconcave::{gen_logconcave_c, gen_logconcave_d, is_logconcave_c, is_logconcave_d};
use logconcave::verify::{run_suites, Suite, Tolerances};
use logconcave::{
    interval_overlap, AsymLaplaceC, AsymLaplaceD, ContinuousGenConfig, DiscreteGenConfig, DiscretePMF, Error,
    GridDensity, Law, YoungFunction,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "AsymLaplaceC", module = "logconcave_py", frozen, skip_from_py_object)]
struct PyAsymLaplaceC {
    inner: AsymLaplaceC,
}

#[pymethods]
impl PyAsymLaplaceC {
    #[new]
    #[pyo3(signature = (lambda1, lambda2, mode = 0.0))]
    fn new(lambda1: f64, lambda2: f64, mode: f64) -> PyResult<Self> {
        Ok(PyAsymLaplaceC { inner: AsymLaplaceC::new(lambda1, lambda2, mode).map_err(err)? })
    }

    /// Mean-zero member with the given maximum density and right scale.
    #[staticmethod]
    fn mean_zero(max: f64, lambda2: f64) -> PyResult<Self> {
        Ok(PyAsymLaplaceC { inner: AsymLaplaceC::mean_zero(max, lambda2).map_err(err)? })
    }

    #[getter]
    fn lambda1(&self) -> f64 {
        self.inner.lambda1
    }

    #[getter]
    fn lambda2(&self) -> f64 {
        self.inner.lambda2
    }

    #[getter]
    fn mode(&self) -> f64 {
        self.inner.mode
    }

    fn max_value(&self) -> f64 {
        self.inner.max_value()
    }

    fn pdf(&self, x: f64) -> f64 {
        self.inner.pdf(x)
    }

    fn mgf(&self, t: f64) -> PyResult<f64> {
        self.inner.mgf(t).map_err(err)
    }

    fn mean_var(&self) -> (f64, f64) {
        self.inner.mean_var()
    }

    fn central_abs_moment(&self, p: f64) -> f64 {
        self.inner.central_abs_moment(p)
    }

    fn superlevel_set(&self, t: f64) -> PyResult<(f64, f64)> {
        let s = self.inner.superlevel_set(t).map_err(err)?;
        Ok((s.lo, s.hi))
    }

    fn tail_superlevel_measure(&self, a: f64, t: f64) -> PyResult<f64> {
        self.inner.tail_superlevel_measure(a, t).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("AsymLaplaceC(lambda1={}, lambda2={}, mode={})", self.inner.lambda1, self.inner.lambda2, self.inner.mode)
    }
}

#[pyclass(name = "AsymLaplaceD", module = "logconcave_py", frozen, skip_from_py_object)]
struct PyAsymLaplaceD {
    inner: AsymLaplaceD,
}

#[pymethods]
impl PyAsymLaplaceD {
    #[new]
    #[pyo3(signature = (p, q, mode = 0))]
    fn new(p: f64, q: f64, mode: i64) -> PyResult<Self> {
        Ok(PyAsymLaplaceD { inner: AsymLaplaceD::new(p, q, mode).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q
    }

    #[getter]
    fn mode(&self) -> i64 {
        self.inner.mode
    }

    fn normalizer(&self) -> f64 {
        self.inner.normalizer()
    }

    fn pmf(&self, n: i64) -> f64 {
        self.inner.pmf(n)
    }

    fn mean_var(&self) -> (f64, f64) {
        self.inner.mean_var()
    }

    fn to_pmf(&self) -> PyDiscretePMF {
        PyDiscretePMF { inner: self.inner.to_pmf() }
    }

    fn __repr__(&self) -> String {
        format!("AsymLaplaceD(p={}, q={}, mode={})", self.inner.p, self.inner.q, self.inner.mode)
    }
}

#[pyclass(name = "GridDensity", module = "logconcave_py", frozen, skip_from_py_object)]
struct PyGridDensity {
    inner: GridDensity,
}

#[pymethods]
impl PyGridDensity {
    /// Piecewise log-linear density through `(knots, logvals)`, normalized.
    #[new]
    fn new(knots: Vec<f64>, logvals: Vec<f64>) -> PyResult<Self> {
        Ok(PyGridDensity { inner: GridDensity::new(knots, logvals).map_err(err)? })
    }

    #[staticmethod]
    fn uniform(lo: f64, hi: f64) -> PyResult<Self> {
        Ok(PyGridDensity { inner: GridDensity::uniform(lo, hi).map_err(err)? })
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(PyGridDensity { inner: GridDensity::from_csv(text.as_bytes()).map_err(err)? })
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner.to_csv(&mut buf).map_err(err)?;
        String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn knots(&self) -> Vec<f64> {
        self.inner.knots().to_vec()
    }

    fn logvals(&self) -> Vec<f64> {
        self.inner.logvals().to_vec()
    }

    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    fn pdf(&self, x: f64) -> f64 {
        self.inner.pdf(x)
    }

    fn max_density(&self) -> f64 {
        self.inner.max_density()
    }

    /// `(mean, variance, E|X - EX|^p)`.
    #[pyo3(signature = (p = 2.0))]
    fn moments(&self, p: f64) -> (f64, f64, f64) {
        let m = self.inner.moments(p);
        (m.mean, m.var, m.sigma_p)
    }

    fn with_unit_max(&self) -> PyResult<Self> {
        Ok(PyGridDensity { inner: self.inner.with_unit_max().map_err(err)? })
    }

    fn is_logconcave(&self) -> bool {
        is_logconcave_c(&self.inner)
    }

    fn __repr__(&self) -> String {
        let (lo, hi) = self.inner.support();
        format!("GridDensity(knots={}, support=[{lo}, {hi}])", self.inner.knots().len())
    }
}

#[pyclass(name = "DiscretePMF", module = "logconcave_py", frozen, skip_from_py_object)]
struct PyDiscretePMF {
    inner: DiscretePMF,
}

#[pymethods]
impl PyDiscretePMF {
    #[new]
    fn new(offset: i64, weights: Vec<f64>) -> PyResult<Self> {
        Ok(PyDiscretePMF { inner: DiscretePMF::new(offset, weights).map_err(err)? })
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(PyDiscretePMF { inner: DiscretePMF::from_csv(text.as_bytes()).map_err(err)? })
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        self.inner.to_csv(&mut buf).map_err(err)?;
        String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn offset(&self) -> i64 {
        self.inner.offset()
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    fn pmf(&self, n: i64) -> f64 {
        self.inner.pmf(n)
    }

    fn max_density(&self) -> f64 {
        self.inner.max_density()
    }

    #[pyo3(signature = (p = 2.0))]
    fn moments(&self, p: f64) -> (f64, f64, f64) {
        let m = self.inner.moments(p);
        (m.mean, m.var, m.sigma_p)
    }

    fn is_logconcave(&self) -> bool {
        is_logconcave_d(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("DiscretePMF(offset={}, len={})", self.inner.offset(), self.inner.weights().len())
    }
}

#[pyfunction]
#[pyo3(name = "solve_pq")]
fn py_solve_pq(g0: f64, mu: f64) -> PyResult<PyAsymLaplaceD> {
    Ok(PyAsymLaplaceD { inner: solve_pq(g0, mu).map_err(err)? })
}

#[pyfunction]
#[pyo3(name = "gen_logconcave_c", signature = (seed, knot_count = 48, lo = -3.0, hi = 3.0, slope_scale = 4.0))]
fn py_gen_c(seed: u64, knot_count: usize, lo: f64, hi: f64, slope_scale: f64) -> PyResult<PyGridDensity> {
    let cfg = ContinuousGenConfig { knot_count, domain: (lo, hi), slope_scale };
    Ok(PyGridDensity { inner: gen_logconcave_c(seed, &cfg).map_err(err)? })
}

#[pyfunction]
#[pyo3(name = "gen_logconcave_d", signature = (seed, support_len = 40, concavity_scale = 1.0))]
fn py_gen_d(seed: u64, support_len: usize, concavity_scale: f64) -> PyResult<PyDiscretePMF> {
    let cfg = DiscreteGenConfig { support_len, concavity_scale };
    Ok(PyDiscretePMF { inner: gen_logconcave_d(seed, &cfg).map_err(err)? })
}

#[pyfunction]
#[pyo3(name = "majorant_c")]
fn py_majorant_c(f: &PyGridDensity, t: f64) -> PyResult<PyAsymLaplaceC> {
    Ok(PyAsymLaplaceC { inner: majorant_c(&f.inner, t).map_err(err)? })
}

#[pyfunction]
#[pyo3(name = "majorant_d")]
fn py_majorant_d(g: &PyDiscretePMF, n: i64) -> PyResult<PyAsymLaplaceD> {
    Ok(PyAsymLaplaceD { inner: majorant_d(&g.inner, n).map_err(err)? })
}

/// Convex-order verdict (`certified`, `refuted`, `inconclusive`) for a
/// density or pmf against its majorant at `point`.
#[pyfunction]
#[pyo3(signature = (law, point, tol = 1e-8))]
fn certify_majorant(law: &Bound<'_, PyAny>, point: f64, tol: f64) -> PyResult<String> {
    let verdict = if let Ok(f) = law.extract::<PyRef<'_, PyGridDensity>>() {
        certify_majorant_c(&f.inner, point, tol).map_err(err)?.1.verdict
    } else if let Ok(g) = law.extract::<PyRef<'_, PyDiscretePMF>>() {
        if point.fract() != 0.0 {
            return Err(PyValueError::new_err(format!("pmf point must be an integer, got {point}")));
        }
        certify_majorant_d(&g.inner, point as i64, tol).map_err(err)?.1.verdict
    } else {
        return Err(PyValueError::new_err("expected a GridDensity or a DiscretePMF"));
    };
    Ok(format!("{verdict:?}").to_lowercase())
}

/// Centered Orlicz norm for `psi(x) = x^p`.
#[pyfunction]
#[pyo3(signature = (law, p, tol = 1e-11))]
fn orlicz_norm_centered(law: &Bound<'_, PyAny>, p: f64, tol: f64) -> PyResult<f64> {
    let psi = YoungFunction::power(p).map_err(err)?;
    if let Ok(f) = law.extract::<PyRef<'_, PyGridDensity>>() {
        logconcave::orlicz_norm_centered(&f.inner, &psi, tol).map_err(err)
    } else if let Ok(g) = law.extract::<PyRef<'_, PyDiscretePMF>>() {
        logconcave::orlicz_norm_centered(&g.inner, &psi, tol).map_err(err)
    } else if let Ok(d) = law.extract::<PyRef<'_, PyAsymLaplaceC>>() {
        logconcave::orlicz_norm_centered(&d.inner, &psi, tol).map_err(err)
    } else {
        Err(PyValueError::new_err("expected a GridDensity, DiscretePMF or AsymLaplaceC"))
    }
}

/// `(lower, upper)` bounds on `M^p E|X - EX|^p`.
#[pyfunction]
fn acm_bounds(p: f64) -> PyResult<(f64, f64)> {
    let b = logconcave::acm_bounds(p).map_err(err)?;
    Ok((b.lower, b.upper))
}

#[pyfunction]
fn subfactorial(n: u32) -> PyResult<u64> {
    logconcave::subfactorial(n).map_err(err)
}

#[pyfunction]
#[pyo3(name = "sigma4_closed")]
fn py_sigma4_closed(max: f64, q: f64) -> PyResult<f64> {
    sigma4_closed(max, q).map_err(err)
}

#[pyfunction]
#[pyo3(name = "variance_reparam")]
fn py_variance_reparam(max: f64, q: f64) -> PyResult<f64> {
    variance_reparam(max, q).map_err(err)
}

#[pyfunction]
#[pyo3(name = "interval_overlap")]
fn py_interval_overlap(a: f64, b: f64, x: f64) -> f64 {
    interval_overlap(a, b, x)
}

/// Runs a suite (or `"all"`) and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suite, trials = None, seed = 20240601, tol = 1e-7))]
fn run_suite(py: Python<'_>, suite: &str, trials: Option<usize>, seed: u64, tol: f64) -> PyResult<String> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::parse(suite).ok_or_else(|| PyValueError::new_err(format!("unknown suite `{suite}`")))?]
    };
    let tol = Tolerances { num_tol: tol, ..Tolerances::default() };
    let report = py.detach(|| run_suites(&suites, trials, seed, tol, true)).map_err(err)?;
    report.to_json().map_err(err)
}

#[pymodule]
fn logconcave_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAsymLaplaceC>()?;
    m.add_class::<PyAsymLaplaceD>()?;
    m.add_class::<PyGridDensity>()?;
    m.add_class::<PyDiscretePMF>()?;
    m.add_function(wrap_pyfunction!(py_solve_pq, m)?)?;
    m.add_function(wrap_pyfunction!(py_gen_c, m)?)?;
    m.add_function(wrap_pyfunction!(py_gen_d, m)?)?;
    m.add_function(wrap_pyfunction!(py_majorant_c, m)?)?;
    m.add_function(wrap_pyfunction!(py_majorant_d, m)?)?;
    m.add_function(wrap_pyfunction!(certify_majorant, m)?)?;
    m.add_function(wrap_pyfunction!(orlicz_norm_centered, m)?)?;
    m.add_function(wrap_pyfunction!(acm_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(subfactorial, m)?)?;
    m.add_function(wrap_pyfunction!(py_sigma4_closed, m)?)?;
    m.add_function(wrap_pyfunction!(py_variance_reparam, m)?)?;
    m.add_function(wrap_pyfunction!(py_interval_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
