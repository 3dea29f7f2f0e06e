//! Python bindings for the qrank laboratory: exact series as an opaque
//! `Series` class, rank coefficients, identity verification, cusp tables,
//! the valence budget, and the numeric check suite.

use std::str::FromStr;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use num_complex::Complex64;
use qrank_core::catalog;
use qrank_core::error::QError;
use qrank_core::fps::{FracSeries, Rat};
use qrank_core::modgroup::{thm13_budget, CongGroup};
use qrank_core::numerics::{run_suite, CheckKind, DEFAULT_TAUS, DEFAULT_TOL};
use qrank_core::rank;

fn qerr(e: QError) -> PyErr {
    match e {
        QError::BadDescriptor(_) | QError::Parse(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// An exact truncated series in q^{1/D} over a cyclotomic field.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Series {
    inner: FracSeries,
}

#[pymethods]
impl Series {
    /// Build a catalog series by name.
    #[staticmethod]
    fn from_name(name: &str, trunc: i64) -> PyResult<Series> {
        Ok(Series { inner: catalog::build_series(name, trunc).map_err(qerr)? })
    }

    /// Parse the exact text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Series> {
        Ok(Series { inner: FracSeries::from_text(text).map_err(qerr)? })
    }

    fn __add__(&self, other: &Series) -> Series {
        Series { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Series) -> Series {
        Series { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Series) -> Series {
        Series { inner: self.inner.mul(&other.inner) }
    }

    fn inv(&self) -> PyResult<Series> {
        Ok(Series { inner: self.inner.inv().map_err(qerr)? })
    }

    /// Exact coefficient of q^{num/den}, rendered as the dense power-basis
    /// vector of rationals.
    #[pyo3(signature = (num, den = 1))]
    fn coeff(&self, num: i64, den: i64) -> PyResult<Vec<String>> {
        if den == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let c = self.inner.coeff(Rat::new(num, den)).map_err(qerr)?;
        Ok(c.coeffs_dense().iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect())
    }

    /// Integer coefficient of q^n (errors when it is not a plain integer).
    fn coeff_int(&self, n: i64) -> PyResult<i64> {
        let c = self.inner.coeff_int(n).map_err(qerr)?;
        let r = c
            .as_rational()
            .ok_or_else(|| PyRuntimeError::new_err("coefficient is not rational"))?;
        if !r.is_integer() {
            return Err(PyRuntimeError::new_err("coefficient is not an integer"));
        }
        use num_traits::ToPrimitive;
        r.to_integer()
            .to_i64()
            .ok_or_else(|| PyRuntimeError::new_err("coefficient exceeds i64"))
    }

    /// Extract the residue class e = r (mod c) and divide exponents by c.
    fn dissect(&self, c: i64, r: i64) -> PyResult<Series> {
        Ok(Series { inner: self.inner.dissect(c, r).map_err(qerr)? })
    }

    fn text(&self) -> String {
        self.inner.to_text()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn trunc(&self) -> (i64, i64) {
        let t = self.inner.trunc_q();
        (*t.numer(), *t.denom())
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(L={}, D={}, {} terms, window q^({}))",
            self.inner.order(),
            self.inner.den(),
            self.inner.num_terms(),
            self.inner.trunc_q()
        )
    }
}

/// M_d(m, n): the rank count of overpartitions of n.
#[pyfunction]
fn rank_coeff(d: u64, m: i64, n: i64) -> PyResult<i64> {
    if n < 0 {
        return Err(PyValueError::new_err("n must be nonnegative"));
    }
    Ok(rank::rank_coeff(d, m, n))
}

/// M_d(r, k, n): the rank count restricted to m = r (mod k).
#[pyfunction]
fn rank_coeff_mod(d: u64, r: i64, k: i64, n: i64) -> PyResult<i64> {
    if n < 0 || k < 1 || r < 0 || r >= k {
        return Err(PyValueError::new_err("need n >= 0 and 0 <= r < k"));
    }
    Ok(rank::rank_coeff_mod(d, r, k, n))
}

/// The overpartition count pbar(n).
#[pyfunction]
fn overpartition_count(n: i64) -> PyResult<i64> {
    if n < 0 {
        return Err(PyValueError::new_err("n must be nonnegative"));
    }
    Ok(rank::overpartition_count(n))
}

/// Names available to `Series.from_name`.
#[pyfunction]
fn series_names() -> Vec<(String, String)> {
    catalog::SERIES_NAMES
        .iter()
        .map(|(n, d)| (n.to_string(), d.to_string()))
        .collect()
}

/// Run an exact identity checker; returns (pass, report_text).
#[pyfunction]
#[pyo3(signature = (name, trunc = None))]
fn verify(name: &str, trunc: Option<i64>) -> PyResult<(bool, String)> {
    let id = rank::IdentityName::from_str(name).map_err(qerr)?;
    let trunc = trunc.unwrap_or_else(|| id.default_trunc());
    let report = rank::verify_identity(id, trunc).map_err(qerr)?;
    Ok((report.pass, report.describe()))
}

/// Identity names understood by `verify`.
#[pyfunction]
fn identity_names() -> Vec<String> {
    rank::IdentityName::ALL.iter().map(|n| n.tag().to_string()).collect()
}

/// Complete set of inequivalent cusps with widths for
/// Gamma_0(n0) ∩ Gamma_1(n1) ∩ Gamma^0(nup).
#[pyfunction]
#[pyo3(signature = (n0, n1, nup = 1))]
fn cusps(n0: i64, n1: i64, nup: i64) -> PyResult<Vec<(String, i64)>> {
    if n0 < 1 || n1 < 1 || nup < 1 {
        return Err(PyValueError::new_err("levels must be positive"));
    }
    let g = CongGroup::new(n0, n1, nup);
    Ok(g.cusp_set().into_iter().map(|(c, w)| (c.label(), w)).collect())
}

/// The valence budget report of the 3-dissection identity.
#[pyfunction]
fn budget_thm13() -> PyResult<String> {
    Ok(thm13_budget().map_err(qerr)?.describe())
}

/// Run the numeric transformation suite; returns
/// (kind, params, residual, pass) per check.
#[pyfunction]
#[pyo3(signature = (kind = None, tol = DEFAULT_TOL, tau = None))]
fn numcheck(
    kind: Option<&str>,
    tol: f64,
    tau: Option<(f64, f64)>,
) -> PyResult<Vec<(String, String, f64, bool)>> {
    let filter = match kind {
        Some(k) => Some(CheckKind::from_str(k).map_err(qerr)?),
        None => None,
    };
    let taus: Vec<Complex64> = match tau {
        Some((re, im)) => vec![Complex64::new(re, im)],
        None => DEFAULT_TAUS.to_vec(),
    };
    let reports = run_suite(filter, &taus, tol).map_err(qerr)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.kind.tag().to_string(), r.params, r.residual, r.pass))
        .collect())
}

/// Kinds understood by `numcheck`.
#[pyfunction]
fn check_kinds() -> Vec<String> {
    CheckKind::ALL.iter().map(|k| k.tag().to_string()).collect()
}

#[pymodule]
fn qrank(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(rank_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(rank_coeff_mod, m)?)?;
    m.add_function(wrap_pyfunction!(overpartition_count, m)?)?;
    m.add_function(wrap_pyfunction!(series_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identity_names, m)?)?;
    m.add_function(wrap_pyfunction!(cusps, m)?)?;
    m.add_function(wrap_pyfunction!(budget_thm13, m)?)?;
    m.add_function(wrap_pyfunction!(numcheck, m)?)?;
    m.add_function(wrap_pyfunction!(check_kinds, m)?)?;
    Ok(())
}
