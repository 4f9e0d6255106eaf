//! Python bindings for the skill-relevance contract model and the
//! wage-differential regressions.

// The pyfunction macro expansion in pyo3 0.22 trips this lint on every `?`.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use skillrel_core::dataset::{self, Gender, Group, NationRecord};
use skillrel_core::econometrics::{self, RegressionResult, Transform};
use skillrel_core::plot::{self as core_plot, PlotSpec};
use skillrel_core::solver::{self, SolverConfig};
use skillrel_core::{model, statics};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(token: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    token.parse().map_err(value_error)
}

fn nations(data_csv: Option<&str>) -> PyResult<Vec<NationRecord>> {
    match data_csv {
        None => Ok(dataset::canonical_nations()),
        Some(text) => dataset::load_nations(text.as_bytes()).map_err(value_error),
    }
}

#[pyclass(name = "GameParameters", frozen, module = "skillrel")]
#[derive(Clone)]
struct PyGameParameters(skillrel_core::GameParameters);

#[pymethods]
impl PyGameParameters {
    #[new]
    #[pyo3(signature = (s0, s1, w0 = 0.0, m = 0.0))]
    fn new(s0: f64, s1: f64, w0: f64, m: f64) -> PyResult<Self> {
        skillrel_core::GameParameters::new(s0, s1, w0, m).map(Self).map_err(value_error)
    }

    #[getter]
    fn s0(&self) -> f64 {
        self.0.s0()
    }

    #[getter]
    fn s1(&self) -> f64 {
        self.0.s1()
    }

    #[getter]
    fn w0(&self) -> f64 {
        self.0.w0()
    }

    #[getter]
    fn m(&self) -> f64 {
        self.0.m()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta()
    }

    /// Effort maximizing host utility at wage differential `dw`.
    fn optimal_effort(&self, dw: f64) -> PyResult<f64> {
        model::optimal_effort(&self.0, dw).map_err(value_error)
    }

    fn principal_objective(&self, dw: f64) -> PyResult<f64> {
        solver::principal_objective(&self.0, dw).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("GameParameters(s0={}, s1={}, w0={}, m={})", self.0.s0(), self.0.s1(), self.0.w0(), self.0.m())
    }
}

#[pyclass(name = "SpneSolution", frozen, get_all, module = "skillrel")]
#[derive(Clone)]
struct PySpneSolution {
    wage_differential: f64,
    effort: f64,
    agent_utility_host: f64,
    agent_utility_home: f64,
    principal_profit: f64,
    soc_agent: f64,
    soc_principal: f64,
    ir_slack: f64,
}

impl From<skillrel_core::SpneSolution> for PySpneSolution {
    fn from(s: skillrel_core::SpneSolution) -> Self {
        Self {
            wage_differential: s.wage_differential,
            effort: s.effort,
            agent_utility_host: s.agent_utility_host,
            agent_utility_home: s.agent_utility_home,
            principal_profit: s.principal_profit,
            soc_agent: s.soc_agent,
            soc_principal: s.soc_principal,
            ir_slack: s.ir_slack,
        }
    }
}

#[pymethods]
impl PySpneSolution {
    fn __repr__(&self) -> String {
        format!("SpneSolution(wage_differential={}, effort={})", self.wage_differential, self.effort)
    }
}

#[pyclass(name = "RegressionResult", frozen, get_all, module = "skillrel")]
#[derive(Clone)]
struct PyRegressionResult {
    group: String,
    gender: String,
    label: String,
    n: usize,
    slope: f64,
    intercept: f64,
    r2: f64,
    adj_r2: f64,
    se: f64,
    t: f64,
    p: f64,
    stars: String,
}

impl From<&RegressionResult> for PyRegressionResult {
    fn from(r: &RegressionResult) -> Self {
        Self {
            group: r.group.to_string(),
            gender: r.gender.to_string(),
            label: r.label(),
            n: r.n,
            slope: r.slope,
            intercept: r.intercept,
            r2: r.r2,
            adj_r2: r.adj_r2,
            se: r.se_slope,
            t: r.t,
            p: r.p,
            stars: r.stars.clone(),
        }
    }
}

#[pymethods]
impl PyRegressionResult {
    fn __repr__(&self) -> String {
        format!("RegressionResult({}: slope={}, r2={}, p={:e})", self.label, self.slope, self.r2, self.p)
    }
}

/// Closed-form equilibrium `Δw* = s0·s1/(s0 - s1)`.
#[pyfunction]
fn spne_closed_form(params: &PyGameParameters) -> PyResult<PySpneSolution> {
    model::spne_closed_form(&params.0).map(Into::into).map_err(value_error)
}

/// Equilibrium by nested golden-section search.
#[pyfunction]
#[pyo3(signature = (params, tolerance = 1e-9, max_iterations = 500))]
fn backward_induction(params: &PyGameParameters, tolerance: f64, max_iterations: usize) -> PyResult<PySpneSolution> {
    let cfg = SolverConfig { tolerance, max_iterations, ..SolverConfig::default() };
    solver::backward_induction(&params.0, &cfg).map(Into::into).map_err(value_error)
}

#[pyfunction]
fn spne_wage_differential(s0: f64, s1: f64) -> PyResult<f64> {
    model::spne_wage_differential(s0, s1).map_err(value_error)
}

/// Analytic partials of `Δw*` beside their central differences.
#[pyfunction]
#[pyo3(signature = (s0, s1, step = None))]
fn verify_statics<'py>(py: Python<'py>, s0: f64, s1: f64, step: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let h = step.unwrap_or_else(|| statics::default_step(s0, s1));
    let r = statics::verify_statics(s0, s1, h).map_err(value_error)?;
    let d = PyDict::new_bound(py);
    d.set_item("d_dw_ds1", r.d_dw_ds1)?;
    d.set_item("d_dw_ds0", r.d_dw_ds0)?;
    d.set_item("d_dw_ddelta", r.d_dw_ddelta)?;
    d.set_item("fd_ds1", r.fd_ds1)?;
    d.set_item("fd_ds0", r.fd_ds0)?;
    d.set_item("fd_ddelta", r.fd_ddelta)?;
    d.set_item("max_rel_error", r.max_rel_error)?;
    d.set_item("step", h)?;
    d.set_item("signs_hold", r.signs_hold())?;
    Ok(d)
}

/// The embedded nations table in the ingestion CSV schema.
#[pyfunction]
fn canonical_nations_csv() -> String {
    dataset::nations_to_csv(&dataset::canonical_nations())
}

/// Validates a nations CSV and returns it normalized.
#[pyfunction]
fn normalize_nations_csv(text: &str) -> PyResult<String> {
    Ok(dataset::nations_to_csv(&nations(Some(text))?))
}

/// Pair observations of one cell in the pairs CSV schema.
#[pyfunction]
#[pyo3(signature = (group = "ALL", gender = "total", data_csv = None))]
fn pairs_csv(group: &str, gender: &str, data_csv: Option<&str>) -> PyResult<String> {
    let pairs = econometrics::cell_pairs(&nations(data_csv)?, parse(group)?, parse(gender)?).map_err(value_error)?;
    Ok(dataset::pairs_to_csv(&pairs))
}

/// Simple OLS with intercept; returns slope, intercept, r2, adj_r2, se, t, p.
#[pyfunction]
fn ols<'py>(py: Python<'py>, xs: Vec<f64>, ys: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let fit = econometrics::ols_simple(&xs, &ys).map_err(value_error)?;
    let d = PyDict::new_bound(py);
    d.set_item("n", fit.n)?;
    d.set_item("slope", fit.slope)?;
    d.set_item("intercept", fit.intercept)?;
    d.set_item("r2", fit.r2)?;
    d.set_item("adj_r2", fit.adj_r2)?;
    d.set_item("se", fit.se_slope)?;
    d.set_item("t", fit.t)?;
    d.set_item("p", fit.p)?;
    Ok(d)
}

/// All 18 group × gender regressions.
#[pyfunction]
#[pyo3(signature = (transform = "none", data_csv = None))]
fn run_table2(transform: &str, data_csv: Option<&str>) -> PyResult<Vec<PyRegressionResult>> {
    let rows = econometrics::run_table2(&nations(data_csv)?, parse::<Transform>(transform)?).map_err(value_error)?;
    Ok(rows.iter().map(Into::into).collect())
}

/// The regression table in the table CSV schema.
#[pyfunction]
#[pyo3(signature = (transform = "none", data_csv = None))]
fn table2_csv(transform: &str, data_csv: Option<&str>) -> PyResult<String> {
    let rows = econometrics::run_table2(&nations(data_csv)?, parse::<Transform>(transform)?).map_err(value_error)?;
    Ok(econometrics::table_to_csv(&rows))
}

/// Hypothesis verdicts as a JSON document.
#[pyfunction]
#[pyo3(signature = (transform = "none", data_csv = None))]
fn evaluate_hypotheses_json(transform: &str, data_csv: Option<&str>) -> PyResult<String> {
    let rows = econometrics::run_table2(&nations(data_csv)?, parse::<Transform>(transform)?).map_err(value_error)?;
    let report = econometrics::evaluate_hypotheses(&rows).map_err(value_error)?;
    serde_json::to_string_pretty(&report).map_err(value_error)
}

/// SVG scatter plot of one cell with its trendline.
#[pyfunction]
#[pyo3(signature = (group = "ALL", gender = "total", width = 800, height = 600, data_csv = None))]
fn plot_svg(group: &str, gender: &str, width: u32, height: u32, data_csv: Option<&str>) -> PyResult<String> {
    let (group, gender): (Group, Gender) = (parse(group)?, parse(gender)?);
    let pairs = econometrics::cell_pairs(&nations(data_csv)?, group, gender).map_err(value_error)?;
    let result = econometrics::regress_pairs(&pairs, group, gender, Transform::None).map_err(value_error)?;
    let spec = PlotSpec::new(&pairs, &result, width, height).map_err(value_error)?;
    Ok(core_plot::render_svg(&spec))
}

/// `(slope, intercept)` carried by a rendered SVG, if any.
#[pyfunction]
fn trendline_from_svg(svg: &str) -> Option<(f64, f64)> {
    core_plot::trendline_from_svg(svg)
}

#[pymodule]
pub fn skillrel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGameParameters>()?;
    m.add_class::<PySpneSolution>()?;
    m.add_class::<PyRegressionResult>()?;
    m.add_function(wrap_pyfunction!(spne_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(backward_induction, m)?)?;
    m.add_function(wrap_pyfunction!(spne_wage_differential, m)?)?;
    m.add_function(wrap_pyfunction!(verify_statics, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_nations_csv, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_nations_csv, m)?)?;
    m.add_function(wrap_pyfunction!(pairs_csv, m)?)?;
    m.add_function(wrap_pyfunction!(ols, m)?)?;
    m.add_function(wrap_pyfunction!(run_table2, m)?)?;
    m.add_function(wrap_pyfunction!(table2_csv, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_hypotheses_json, m)?)?;
    m.add_function(wrap_pyfunction!(plot_svg, m)?)?;
    m.add_function(wrap_pyfunction!(trendline_from_svg, m)?)?;
    Ok(())
}
