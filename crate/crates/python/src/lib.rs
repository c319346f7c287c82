//! Python bindings for the diffpuiseux solver.
//!
//! Exposes expression parsing, polygon rendering, exact residual evaluation
//! and the full solve pipeline (returning the JSON report).

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use diffpuiseux::numfield::{AlgNum, NumberField};
use diffpuiseux::parse::parse_diffpoly;
use diffpuiseux::polygon::build_polygon;
use diffpuiseux::rat::{parse_frac, to_frac_string};
use diffpuiseux::render::{render_ascii, render_svg};
use diffpuiseux::report::{run, PolygonFormat, ProblemSpec};
use diffpuiseux::series::{PuiseuxSeries, PuiseuxTerm};
use diffpuiseux::Error;

fn to_py_err(e: Error) -> PyErr {
    match &e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A differential polynomial F(x, y0, ..., yn) with exact coefficients.
#[pyclass(name = "DiffPoly", frozen)]
struct PyDiffPoly {
    inner: diffpuiseux::DiffPoly,
}

#[pymethods]
impl PyDiffPoly {
    /// Parse an expression such as "x*y0*y2 - x*y1^2 + y0*y1".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDiffPoly {
            inner: parse_diffpoly(text).map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DiffPoly({:?})", self.inner.to_string())
    }

    /// min x-exponent as "p/q".
    fn order(&self) -> Option<String> {
        self.inner.order().map(|r| to_frac_string(&r))
    }

    /// Total degree in the derivative variables.
    fn ydeg(&self) -> u32 {
        self.inner.ydeg()
    }

    /// Highest derivative index appearing in the equation.
    fn derivative_order(&self) -> usize {
        self.inner.order_n()
    }

    /// Common denominator of the x-exponents.
    fn nu(&self) -> u64 {
        self.inner.nu()
    }

    /// ASCII drawing of the Newton polygon.
    #[pyo3(signature = (strict = true))]
    fn polygon_ascii(&self, strict: bool) -> PyResult<String> {
        let view = build_polygon(&self.inner, strict).map_err(to_py_err)?;
        Ok(render_ascii(&view))
    }

    /// SVG drawing of the Newton polygon.
    #[pyo3(signature = (strict = true))]
    fn polygon_svg(&self, strict: bool) -> PyResult<String> {
        let view = build_polygon(&self.inner, strict).map_err(to_py_err)?;
        Ok(render_svg(&view))
    }

    /// Exact residual F(psi, psi', ...) of a rational-coefficient series
    /// given as (coeff, exponent) fraction-string pairs; returns the residual
    /// in the same shape. An empty result certifies an exact solution.
    fn residual(&self, terms: Vec<(String, String)>) -> PyResult<Vec<(String, String)>> {
        let field = NumberField::rationals();
        let mut parsed = Vec::with_capacity(terms.len());
        for (coeff, exp) in &terms {
            let c = parse_frac(coeff).ok_or_else(|| {
                PyValueError::new_err(format!("malformed coefficient '{}'", coeff))
            })?;
            let e = parse_frac(exp)
                .ok_or_else(|| PyValueError::new_err(format!("malformed exponent '{}'", exp)))?;
            parsed.push(PuiseuxTerm {
                coeff: AlgNum::from_rat(field.clone(), c),
                exp: e,
            });
        }
        let psi = PuiseuxSeries::new(field, parsed, None);
        let res = self.inner.evaluate_exact(&psi).map_err(to_py_err)?;
        Ok(res
            .terms()
            .iter()
            .map(|t| {
                let coeff = match t.coeff.as_rat() {
                    Some(r) => to_frac_string(&r),
                    None => t.coeff.to_string(),
                };
                (coeff, to_frac_string(&t.exp))
            })
            .collect())
    }
}

/// Solve a polynomial ODE in Puiseux series and return the JSON report.
#[pyfunction]
#[pyo3(signature = (
    expr,
    max_exponent = "10",
    max_level = 32,
    max_nodes = 10000,
    allow_negative_inclinations = false,
    params = None,
    verify_to = None,
    polygon = None,
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    expr: &str,
    max_exponent: &str,
    max_level: u32,
    max_nodes: usize,
    allow_negative_inclinations: bool,
    params: Option<HashMap<String, String>>,
    verify_to: Option<&str>,
    polygon: Option<&str>,
) -> PyResult<String> {
    let mut spec = ProblemSpec::from_source(expr).map_err(to_py_err)?;
    spec.budget.max_exponent = parse_frac(max_exponent).ok_or_else(|| {
        PyValueError::new_err(format!("malformed max_exponent '{}'", max_exponent))
    })?;
    spec.budget.max_level = max_level;
    spec.budget.max_nodes = max_nodes;
    spec.strict_b = !allow_negative_inclinations;
    if let Some(params) = params {
        let mut entries: Vec<(String, String)> = params.into_iter().collect();
        entries.sort();
        for (name, value) in entries {
            spec.parse_param(&format!("{}={}", name, value))
                .map_err(to_py_err)?;
        }
    }
    spec.verify_to = match verify_to {
        Some(s) => Some(
            parse_frac(s)
                .ok_or_else(|| PyValueError::new_err(format!("malformed verify_to '{}'", s)))?,
        ),
        None => None,
    };
    spec.polygon = match polygon {
        Some("ascii") => Some(PolygonFormat::Ascii),
        Some("svg") => Some(PolygonFormat::Svg),
        Some(other) => {
            return Err(PyValueError::new_err(format!(
                "polygon must be 'ascii' or 'svg', got '{}'",
                other
            )))
        }
        None => None,
    };
    let report = run(&spec).map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Human-readable report, same solver as `solve`.
#[pyfunction]
#[pyo3(signature = (expr, max_exponent = "10"))]
fn solve_text(expr: &str, max_exponent: &str) -> PyResult<String> {
    let mut spec = ProblemSpec::from_source(expr).map_err(to_py_err)?;
    spec.budget.max_exponent = parse_frac(max_exponent).ok_or_else(|| {
        PyValueError::new_err(format!("malformed max_exponent '{}'", max_exponent))
    })?;
    let report = run(&spec).map_err(to_py_err)?;
    Ok(report.to_text())
}

#[pymodule]
fn diffpuiseux_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiffPoly>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_text, m)?)?;
    Ok(())
}
