//! Python bindings for the tropcurve library.
//!
//! Rationals cross the boundary as "p/q" strings and the bundle/fan/divisor
//! layer uses the same JSON documents as the command-line tools, so Python
//! callers can share files with them directly.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use num::BigRational;
use serde_json::Value;

use tropcurve::balance;
use tropcurve::fanbundle::{self, CurveClassData};
use tropcurve::json;
use tropcurve::newton::{self, Ends};
use tropcurve::puiseux::PuiseuxSeries as RsSeries;
use tropcurve::troppoly::{self, LaurentPolynomialK, TropicalPolynomial as RsTropical};

fn core_err(e: tropcurve::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_q(text: &str) -> PyResult<BigRational> {
    json::parse_rational(text).map_err(core_err)
}

fn parse_point(coords: Vec<String>) -> PyResult<Vec<BigRational>> {
    coords.iter().map(|c| parse_q(c)).collect()
}

fn parse_doc(text: &str, what: &str) -> PyResult<Value> {
    serde_json::from_str(text)
        .map_err(|e| PyValueError::new_err(format!("{what}: invalid JSON: {e}")))
}

/// A finite Puiseux series in the uniformizer t with rational exponents.
#[pyclass(frozen, from_py_object, name = "PuiseuxSeries")]
#[derive(Clone)]
struct PySeries {
    inner: RsSeries,
}

#[pymethods]
impl PySeries {
    /// Builds a series from (exponent, coefficient) rational string pairs.
    #[new]
    fn new(terms: Vec<(String, String)>) -> PyResult<Self> {
        let parsed = terms
            .iter()
            .map(|(e, c)| Ok((parse_q(e)?, parse_q(c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySeries {
            inner: RsSeries::from_terms(parsed),
        })
    }

    #[staticmethod]
    fn zero() -> Self {
        PySeries {
            inner: RsSeries::zero(),
        }
    }

    #[staticmethod]
    fn constant(c: &str) -> PyResult<Self> {
        Ok(PySeries {
            inner: RsSeries::constant(parse_q(c)?),
        })
    }

    #[staticmethod]
    fn term(exp: &str, coeff: &str) -> PyResult<Self> {
        Ok(PySeries {
            inner: RsSeries::term(parse_q(exp)?, parse_q(coeff)?),
        })
    }

    /// The minimum exponent, or None for the zero series.
    fn val(&self) -> Option<String> {
        self.inner
            .val()
            .finite()
            .map(|v| json::rational_to_string(&v))
    }

    fn leading_coefficient(&self) -> Option<String> {
        self.inner
            .leading_coefficient()
            .map(|c| json::rational_to_string(&c))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn terms(&self) -> Vec<(String, String)> {
        self.inner
            .terms()
            .map(|(e, c)| (json::rational_to_string(e), json::rational_to_string(c)))
            .collect()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> Self {
        PySeries {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> Self {
        PySeries {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> Self {
        PySeries {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> Self {
        PySeries {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        if self.inner.is_zero() {
            return "PuiseuxSeries(0)".to_string();
        }
        let body: Vec<String> = self
            .inner
            .terms()
            .map(|(e, c)| format!("({c})*t^({e})"))
            .collect();
        format!("PuiseuxSeries({})", body.join(" + "))
    }
}

/// A Laurent polynomial with Puiseux-series coefficients.
#[pyclass(frozen, name = "LaurentPolynomial")]
struct PyLaurent {
    inner: LaurentPolynomialK,
}

#[pymethods]
impl PyLaurent {
    #[new]
    fn new(vars: usize, terms: Vec<(Vec<i64>, PySeries)>) -> PyResult<Self> {
        let terms = terms.into_iter().map(|(e, c)| (e, c.inner));
        Ok(PyLaurent {
            inner: LaurentPolynomialK::new(vars, terms).map_err(core_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLaurent {
            inner: json::laurent_from_value(&parse_doc(text, "polynomial")?)
                .map_err(core_err)?,
        })
    }

    fn to_json(&self) -> String {
        json::laurent_to_value(&self.inner).to_string()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn support(&self) -> Vec<Vec<i64>> {
        self.inner.support()
    }

    /// Componentwise negated coefficient valuations as a tropical polynomial.
    fn tropicalize(&self) -> PyResult<PyTropical> {
        Ok(PyTropical {
            inner: troppoly::tropicalize(&self.inner).map_err(core_err)?,
        })
    }

    /// Tropical curve through the origin; requires equal coefficient valuations.
    fn conical_tropicalization(&self) -> PyResult<PyCurve> {
        Ok(PyCurve {
            inner: newton::conical_tropicalization(&self.inner).map_err(core_err)?,
        })
    }

    /// Tropical curve dual to the regular subdivision of the Newton polygon.
    fn dual_tropicalization(&self) -> PyResult<PyCurve> {
        Ok(PyCurve {
            inner: newton::dual_tropicalization(&self.inner).map_err(core_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "LaurentPolynomial(vars={}, terms={})",
            self.inner.dimension(),
            self.inner.support().len()
        )
    }
}

/// A max-plus polynomial: the pointwise maximum of affine pieces.
#[pyclass(frozen, name = "TropicalPolynomial")]
struct PyTropical {
    inner: RsTropical,
}

#[pymethods]
impl PyTropical {
    #[new]
    fn new(vars: usize, pieces: Vec<(Vec<i64>, String)>) -> PyResult<Self> {
        let pieces = pieces
            .iter()
            .map(|(a, c)| Ok((a.clone(), parse_q(c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyTropical {
            inner: RsTropical::new(vars, pieces).map_err(core_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyTropical {
            inner: json::troppoly_from_value(&parse_doc(text, "tropical polynomial")?)
                .map_err(core_err)?,
        })
    }

    fn to_json(&self) -> String {
        json::troppoly_to_value(&self.inner).to_string()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn pieces(&self) -> Vec<(Vec<i64>, String)> {
        self.inner
            .pieces()
            .iter()
            .map(|p| (p.exponent.clone(), json::rational_to_string(&p.constant)))
            .collect()
    }

    /// The maximum value and the indices of all pieces attaining it.
    fn eval(&self, x: Vec<String>) -> PyResult<(String, Vec<usize>)> {
        let (value, argmax) = self.inner.eval(&parse_point(x)?).map_err(core_err)?;
        Ok((json::rational_to_string(&value), argmax))
    }

    /// True when at least two pieces attain the maximum at x.
    fn on_corner_locus(&self, x: Vec<String>) -> PyResult<bool> {
        self.inner.on_corner_locus(&parse_point(x)?).map_err(core_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "TropicalPolynomial(vars={}, pieces={})",
            self.inner.dimension(),
            self.inner.pieces().len()
        )
    }
}

/// A weighted rational polyhedral curve: vertices, bounded edges, and rays.
#[pyclass(frozen, name = "TropicalCurve")]
struct PyCurve {
    inner: newton::TropicalCurve,
}

#[pymethods]
impl PyCurve {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCurve {
            inner: json::curve_from_value(&parse_doc(text, "curve")?).map_err(core_err)?,
        })
    }

    fn to_json(&self) -> String {
        json::curve_to_value(&self.inner).to_string()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner
            .vertices()
            .iter()
            .map(|v| v.iter().map(json::rational_to_string).collect())
            .collect()
    }

    /// Edges as (vertex indices, primitive direction, weight) triples; rays
    /// carry one index, bounded edges two.
    fn edges(&self) -> Vec<(Vec<usize>, Vec<i64>, u64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                let ends = match e.ends {
                    Ends::Ray(v) => vec![v],
                    Ends::Bounded(a, b) => vec![a, b],
                };
                (ends, e.direction.clone(), e.weight)
            })
            .collect()
    }

    fn contains(&self, x: Vec<String>) -> PyResult<bool> {
        self.inner.contains(&parse_point(x)?).map_err(core_err)
    }

    /// Per-vertex defect vectors: {vertex index: (defect, balanced)}.
    fn local_balance(&self) -> std::collections::BTreeMap<usize, (Vec<i64>, bool)> {
        balance::local_balance(&self.inner)
            .into_iter()
            .map(|(i, d)| (i, (d.coords().to_vec(), d.balanced())))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "TropicalCurve(vertices={}, edges={})",
            self.inner.vertices().len(),
            self.inner.edges().len()
        )
    }
}

/// Negated coordinatewise valuations of a torus point over the Puiseux field.
#[pyfunction]
fn val_map(coords: Vec<PySeries>) -> PyResult<Vec<String>> {
    let coords: Vec<RsSeries> = coords.into_iter().map(|c| c.inner).collect();
    let image = troppoly::val_map(&coords).map_err(core_err)?;
    Ok(image.iter().map(json::rational_to_string).collect())
}

/// Divides a nonzero integer vector by the gcd of its entries.
#[pyfunction]
fn primitive(v: Vec<i64>) -> PyResult<Vec<i64>> {
    Ok(fanbundle::primitive(&v).map_err(core_err)?.coords().to_vec())
}

/// Defect of the bundle balancing condition as (coordinates, balanced).
/// bundle, fan, and weights are JSON documents in the CLI schemas.
#[pyfunction]
fn bundle_balance(
    bundle: &str,
    fan: &str,
    weights: &str,
    beta: Vec<i64>,
) -> PyResult<(Vec<i64>, bool)> {
    let b = json::bundle_from_value(&parse_doc(bundle, "bundle")?).map_err(core_err)?;
    let f = json::fan_from_value(&parse_doc(fan, "fan")?).map_err(core_err)?;
    let w = json::weights_from_value(&parse_doc(weights, "weights")?).map_err(core_err)?;
    let defect = balance::bundle_balance(&w, &b, &f, &CurveClassData::new(beta))
        .map_err(core_err)?;
    Ok((defect.coords().to_vec(), defect.balanced()))
}

/// All weight functions with entries in [0, bound] satisfying the bundle
/// balancing condition, as JSON documents in enumeration order.
#[pyfunction]
fn solve_weights(bundle: &str, fan: &str, beta: Vec<i64>, bound: u64) -> PyResult<Vec<String>> {
    let b = json::bundle_from_value(&parse_doc(bundle, "bundle")?).map_err(core_err)?;
    let f = json::fan_from_value(&parse_doc(fan, "fan")?).map_err(core_err)?;
    let found = balance::solve_weights(&b, &f, &CurveClassData::new(beta), bound)
        .map_err(core_err)?;
    Ok(found
        .iter()
        .map(|w| json::weights_to_value(w).to_string())
        .collect())
}

/// Normal form of a divisor class modulo the bundle relations, as JSON.
#[pyfunction]
fn reduce_divisor(divisor: &str, bundle: &str, fan: &str) -> PyResult<String> {
    let d = json::divisor_from_value(&parse_doc(divisor, "divisor")?).map_err(core_err)?;
    let b = json::bundle_from_value(&parse_doc(bundle, "bundle")?).map_err(core_err)?;
    let f = json::fan_from_value(&parse_doc(fan, "fan")?).map_err(core_err)?;
    let normal = fanbundle::reduce(&d, &b, &f).map_err(core_err)?;
    Ok(json::divisor_to_value(&normal).to_string())
}

#[pymodule]
fn tropcurve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyTropical>()?;
    m.add_class::<PyCurve>()?;
    m.add_function(wrap_pyfunction!(val_map, m)?)?;
    m.add_function(wrap_pyfunction!(primitive, m)?)?;
    m.add_function(wrap_pyfunction!(bundle_balance, m)?)?;
    m.add_function(wrap_pyfunction!(solve_weights, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_divisor, m)?)?;
    Ok(())
}
