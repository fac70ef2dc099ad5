use std::collections::BTreeSet;

use compmonoid_core::bijections::{self, BarsDots};
use compmonoid_core::monoid;
use compmonoid_core::verify::{self, Params};
use compmonoid_core::{series, Error};
use num_bigint::BigInt;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownIdentity { .. } | Error::UnknownOracle { .. } => {
            PyKeyError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

fn params(text: Option<&str>) -> PyResult<Params> {
    text.map_or(Ok(Params::default()), parse)
}

/// A finite sequence of positive parts.
#[pyclass(frozen, eq, hash, ord, skip_from_py_object, name = "Composition")]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyComposition(compmonoid_core::Composition);

#[pymethods]
impl PyComposition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        compmonoid_core::Composition::new(parts)
            .map(Self)
            .map_err(py_err)
    }

    /// Parses "(1,2,1)"; "()" is the empty composition.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse(text).map(Self)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u64 {
        self.0.weight()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0.concat(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Composition({})", self.0)
    }
}

/// A quotient of integer polynomials, e.g. "1,-1 / 1,-3,1".
#[pyclass(frozen, skip_from_py_object, name = "RationalGF")]
#[derive(Clone)]
struct PyRationalGF(series::RationalGF);

#[pymethods]
impl PyRationalGF {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(Self)
    }

    #[staticmethod]
    fn from_coeffs(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> PyResult<Self> {
        series::RationalGF::new(
            series::Polynomial::new(numerator),
            series::Polynomial::new(denominator),
        )
        .map(Self)
        .map_err(py_err)
    }

    /// Coefficients `c_0..c_order`.
    fn expand(&self, order: usize) -> PyResult<Vec<BigInt>> {
        self.0
            .expand(order)
            .map(|s| s.into_coeffs())
            .map_err(py_err)
    }

    /// `1 / (1 - self)`.
    fn geometric_inverse(&self) -> PyResult<Self> {
        self.0.geometric_inverse().map(Self).map_err(py_err)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalGF('{}')", self.0)
    }
}

/// A submonoid of compositions, e.g. "parts=1,2; prefix=(1); mod=3".
#[pyclass(frozen, skip_from_py_object, name = "SubmonoidSpec")]
#[derive(Clone)]
struct PySubmonoidSpec(monoid::SubmonoidSpec);

#[pymethods]
impl PySubmonoidSpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(Self)
    }

    fn __contains__(&self, word: Vec<u32>) -> bool {
        self.0.contains(&word)
    }

    /// Irreducible counts `p_0..p_W` in monoid weight.
    fn prime_counts(&self, max_weight: u64) -> Vec<BigInt> {
        monoid::count_census(&self.0, max_weight).primes.counts
    }

    /// Member counts `m_0..m_W` in monoid weight.
    fn member_counts(&self, max_weight: u64) -> Vec<BigInt> {
        monoid::count_census(&self.0, max_weight).members
    }

    /// Irreducible words of each monoid weight up to `max_weight`.
    fn primes(&self, max_weight: u64) -> Vec<Vec<PyComposition>> {
        let table = monoid::irreducibles(&self.0, max_weight);
        (0..=max_weight)
            .map(|n| {
                table
                    .words_of_weight(n)
                    .unwrap_or_default()
                    .iter()
                    .cloned()
                    .map(PyComposition)
                    .collect()
            })
            .collect()
    }

    /// The factorization of a member into irreducibles.
    fn factor(&self, word: Vec<u32>) -> PyResult<Vec<PyComposition>> {
        monoid::factor_unique(&self.0, &word)
            .map(|f| f.into_iter().map(PyComposition).collect())
            .map_err(py_err)
    }

    fn count_factorizations(&self, word: Vec<u32>) -> PyResult<BigInt> {
        monoid::count_factorizations(&self.0, &word).map_err(py_err)
    }

    /// `(free, free_up_to, counterexample)` for words up to `max_weight`.
    fn is_free_up_to(&self, max_weight: u64) -> PyResult<(bool, u64, Option<String>)> {
        let v = monoid::is_free_up_to(&self.0, max_weight).map_err(py_err)?;
        Ok((
            v.is_free(),
            v.free_up_to,
            v.counterexample.map(|c| c.to_string()),
        ))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SubmonoidSpec('{}')", self.0)
    }
}

/// Outcome of checking one identity.
#[pyclass(frozen, get_all, name = "Report")]
struct PyReport {
    name: String,
    order: usize,
    passed: bool,
    text: String,
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __str__(&self) -> String {
        self.text.clone()
    }
}

impl From<verify::Report> for PyReport {
    fn from(r: verify::Report) -> Self {
        PyReport {
            name: r.name(),
            order: r.order,
            passed: r.passed,
            text: r.to_string(),
        }
    }
}

#[pyfunction]
fn fibonacci(n: usize) -> BigInt {
    series::fibonacci(n)
}

#[pyfunction]
fn lucas(n: usize) -> BigInt {
    series::lucas(n)
}

/// Compositions of `n` with parts from a predicate such as "1,2" or "odd".
#[pyfunction]
#[pyo3(signature = (n, parts = "all"))]
fn compositions(n: u32, parts: &str) -> PyResult<Vec<PyComposition>> {
    let allowed: compmonoid_core::PartPredicate = parse(parts)?;
    Ok(compmonoid_core::enumerate_compositions(n, &allowed)
        .map(PyComposition)
        .collect())
}

/// Sum over compositions of `n` of the product of `u(part)`.
#[pyfunction]
#[pyo3(signature = (n, weight, params = vec![]))]
fn weighted_sum(n: u32, weight: &str, params: Vec<u32>) -> PyResult<BigInt> {
    let u = compmonoid_core::make_weight(weight, &params).map_err(py_err)?;
    Ok(compmonoid_core::weighted_sum(n, &u))
}

#[pyfunction]
#[pyo3(signature = (id, params = None, order = 40))]
fn verify_identity(id: &str, params: Option<&str>, order: usize) -> PyResult<PyReport> {
    verify::verify_identity(id, self::params(params)?, order)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (order = 40))]
fn verify_all(py: Python<'_>, order: usize) -> PyResult<Vec<PyReport>> {
    let reports = py.detach(|| verify::verify_all(order)).map_err(py_err)?;
    Ok(reports.into_iter().map(Into::into).collect())
}

/// Coefficients `0..=order` of a registered identity's closed form.
#[pyfunction]
#[pyo3(signature = (id, order, params = None))]
fn expand_identity(id: &str, order: usize, params: Option<&str>) -> PyResult<Vec<BigInt>> {
    let record = verify::identity(id, self::params(params)?).map_err(py_err)?;
    record
        .closed_form
        .expand(order)
        .map(|s| s.into_coeffs())
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (name, length, param = None))]
fn oracle_sequence(name: &str, length: usize, param: Option<u32>) -> PyResult<Vec<BigInt>> {
    verify::oracle_sequence(name, param, length).map_err(py_err)
}

#[pyfunction]
fn dyck_count(n: usize, height: usize) -> BigInt {
    verify::dyck_count(n, height)
}

#[pyfunction]
fn odd_from_fib(c: &PyComposition) -> PyResult<PyComposition> {
    bijections::odd_from_fib(&c.0)
        .map(PyComposition)
        .map_err(py_err)
}

#[pyfunction]
fn fib_from_odd(c: &PyComposition) -> PyResult<PyComposition> {
    bijections::fib_from_odd(&c.0)
        .map(PyComposition)
        .map_err(py_err)
}

#[pyfunction]
fn two_part_bijection(p: u32, q: u32, c: &PyComposition) -> PyResult<PyComposition> {
    bijections::two_part_bijection(p, q, &c.0)
        .map(PyComposition)
        .map_err(py_err)
}

#[pyfunction]
fn two_part_inverse(p: u32, q: u32, c: &PyComposition) -> PyResult<PyComposition> {
    bijections::two_part_inverse(p, q, &c.0)
        .map(PyComposition)
        .map_err(py_err)
}

/// Decodes a bars-and-dots string such as ".o|o.|o|..o".
#[pyfunction]
fn bars_dots_decode(text: &str) -> PyResult<PyComposition> {
    let b: BarsDots = parse(text)?;
    Ok(PyComposition(bijections::bars_dots_decode(&b)))
}

#[pyfunction]
fn bars_dots_encode(c: &PyComposition) -> PyResult<String> {
    bijections::bars_dots_encode(&c.0)
        .map(|b| b.to_string())
        .map_err(py_err)
}

#[pyfunction]
fn subset_prime(n: usize, subset: BTreeSet<usize>) -> PyResult<PyComposition> {
    bijections::subset_prime_construction(n, &subset)
        .map(PyComposition)
        .map_err(py_err)
}

#[pyfunction]
fn subset_prime_inverse(c: &PyComposition) -> PyResult<(usize, BTreeSet<usize>)> {
    bijections::subset_prime_inverse(&c.0).map_err(py_err)
}

#[pymodule]
fn compmonoid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComposition>()?;
    m.add_class::<PyRationalGF>()?;
    m.add_class::<PySubmonoidSpec>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(fibonacci, m)?)?;
    m.add_function(wrap_pyfunction!(lucas, m)?)?;
    m.add_function(wrap_pyfunction!(compositions, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(expand_identity, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_count, m)?)?;
    m.add_function(wrap_pyfunction!(odd_from_fib, m)?)?;
    m.add_function(wrap_pyfunction!(fib_from_odd, m)?)?;
    m.add_function(wrap_pyfunction!(two_part_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(two_part_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(bars_dots_decode, m)?)?;
    m.add_function(wrap_pyfunction!(bars_dots_encode, m)?)?;
    m.add_function(wrap_pyfunction!(subset_prime, m)?)?;
    m.add_function(wrap_pyfunction!(subset_prime_inverse, m)?)?;
    Ok(())
}
