//! Python module `overpar`.
//!
//! Coefficients cross the boundary as `fractions.Fraction`, counts as `int`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyKeyError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::overpar::identities::closed_form_entry;
use ::overpar::{Error, ExprTag, Perturbation, Rational, SepConfig, Variant};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnknownIdentity(id) => PyKeyError::new_err(format!("unknown identity `{id}`")),
        Error::PreconditionViolated(m) => PyValueError::new_err(m),
        Error::ZeroDivision | Error::ZeroFactor { .. } => PyZeroDivisionError::new_err(e.to_string()),
        other => PyArithmeticError::new_err(other.to_string()),
    }
}

fn family(s: &str) -> PyResult<SepConfig> {
    s.parse().map_err(PyValueError::new_err)
}

fn variant(s: &str) -> PyResult<Variant> {
    s.parse().map_err(|e: String| PyValueError::new_err(e))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.numer().clone(), r.denom().clone()))
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyZeroDivisionError::new_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Truncated Laurent series with exact rational coefficients.
#[pyclass(name = "LaurentSeries", module = "overpar", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PySeries(::overpar::LaurentSeries);

#[pymethods]
impl PySeries {
    /// Coefficients of q^vmin, q^(vmin+1), ...; known up to the end of the list.
    #[new]
    fn new(vmin: i64, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = coeffs.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        Ok(PySeries(::overpar::LaurentSeries::from_coeffs(vmin, c)))
    }

    #[getter]
    fn vmin(&self) -> i64 {
        self.0.vmin()
    }

    #[getter]
    fn trunc(&self) -> i64 {
        self.0.trunc()
    }

    fn valuation(&self) -> Option<i64> {
        self.0.valuation()
    }

    fn coefficient<'py>(&self, py: Python<'py>, k: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.coefficient(k).map_err(to_py)?)
    }

    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        (self.0.vmin()..self.0.trunc()).map(|k| self.coefficient(py, k)).collect()
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(PySeries).map_err(to_py)
    }

    fn substitute_sign(&self) -> Self {
        PySeries(self.0.substitute_sign())
    }

    fn substitute_power(&self, m: i64) -> PyResult<Self> {
        if m < 1 {
            return Err(PyValueError::new_err("power must be positive"));
        }
        Ok(PySeries(self.0.substitute_power(m)))
    }

    fn __add__(&self, other: &PySeries) -> Self {
        PySeries(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &PySeries) -> Self {
        PySeries(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &PySeries) -> Self {
        PySeries(self.0.mul(&other.0))
    }

    fn __truediv__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.div(&other.0).map(PySeries).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        PySeries(self.0.neg())
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("LaurentSeries(vmin={}, trunc={})", self.0.vmin(), self.0.trunc())
    }
}

/// Outcome of comparing one registry entry.
#[pyclass(name = "CheckReport", module = "overpar", frozen, get_all)]
pub struct PyReport {
    id: String,
    order: i64,
    passed: bool,
    /// Exponent of the first disagreement.
    mismatch_exponent: Option<i64>,
    /// Component index, for entries that compare several series.
    mismatch_component: Option<usize>,
    /// Coefficient per expression tag at the mismatch, as `p/q` strings.
    mismatch_values: Option<Vec<(String, String)>>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        match self.mismatch_exponent {
            None => format!("CheckReport({} order {}: pass)", self.id, self.order),
            Some(k) => format!("CheckReport({} order {}: FAIL at q^{k})", self.id, self.order),
        }
    }

    fn __bool__(&self) -> bool {
        self.passed
    }
}

/// Compare every expression of a registry entry below q^order.
///
/// `perturb=("closed", k)` adds q^k to that expression first.
#[pyfunction]
#[pyo3(signature = (id, order=None, perturb=None))]
fn check(id: &str, order: Option<i64>, perturb: Option<(String, i64)>) -> PyResult<PyReport> {
    let entry = ::overpar::lookup(id).map_err(to_py)?;
    let p = match perturb {
        Some((tag, k)) => Some(Perturbation::new(tag.parse::<ExprTag>().map_err(PyValueError::new_err)?, k)),
        None => None,
    };
    let r = ::overpar::check_with(id, order.unwrap_or(entry.default_order), p.as_ref()).map_err(to_py)?;
    let m = r.mismatch.as_ref();
    Ok(PyReport {
        passed: r.passed(),
        id: r.id.clone(),
        order: r.order,
        mismatch_exponent: m.map(|m| m.exponent),
        mismatch_component: m.and_then(|m| m.component),
        mismatch_values: m.map(|m| m.values.clone().into_iter().collect()),
    })
}

/// Registry entries as dicts with id, description, anchor, min_order, default_order, tags.
#[pyfunction]
fn registry(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    ::overpar::registry()
        .iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("id", &e.id)?;
            d.set_item("description", &e.description)?;
            d.set_item("anchor", &e.anchor)?;
            d.set_item("min_order", e.min_order)?;
            d.set_item("default_order", e.default_order)?;
            d.set_item("tags", e.tags().iter().map(|t| t.name()).collect::<Vec<_>>())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn count_sep(family_name: &str, variant_name: &str, n: u64) -> PyResult<num_bigint::BigUint> {
    Ok(::overpar::count_sep(&family(family_name)?, variant(variant_name)?, n))
}

#[pyfunction]
fn count_overpartitions(n: u64) -> num_bigint::BigUint {
    ::overpar::count_overpartitions(n)
}

#[pyfunction]
fn series_sep(family_name: &str, variant_name: &str, trunc: i64) -> PyResult<PySeries> {
    Ok(PySeries(::overpar::series_sep(&family(family_name)?, variant(variant_name)?, trunc)))
}

/// Members of total n, each a list of (size, overlined) pairs.
#[pyfunction]
fn enumerate_sep(family_name: &str, variant_name: &str, n: u64) -> PyResult<Vec<Vec<(u64, bool)>>> {
    Ok(::overpar::enumerate_sep(&family(family_name)?, variant(variant_name)?, n)
        .into_iter()
        .map(|p| p.parts.into_iter().map(|x| (x.size, x.overlined)).collect())
        .collect())
}

/// The registered closed form of a family, exact below q^order.
#[pyfunction]
fn closed_form(family_name: &str, variant_name: &str, order: i64) -> PyResult<PySeries> {
    let (cfg, v) = (family(family_name)?, variant(variant_name)?);
    let entry = closed_form_entry(&cfg, v)
        .ok_or_else(|| PyKeyError::new_err(format!("no closed form is registered for {v} {cfg}")))?;
    let expr = entry.expression(ExprTag::Closed).expect("entry has a closed form");
    expr.evaluate(0, order).map(PySeries).map_err(to_py)
}

#[pymodule(name = "overpar")]
fn overpar_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(registry, m)?)?;
    m.add_function(wrap_pyfunction!(count_sep, m)?)?;
    m.add_function(wrap_pyfunction!(count_overpartitions, m)?)?;
    m.add_function(wrap_pyfunction!(series_sep, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sep, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    Ok(())
}
