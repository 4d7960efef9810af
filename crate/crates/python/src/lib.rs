//! Python bindings: curve constants, code parameters, Delta(m) and the GV
//! test. Errors from the core crate surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hermitian_eaqecc as core;
use hermitian_eaqecc::{Algorithm, GvQuery};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn algorithm(name: &str) -> PyResult<Algorithm> {
    match name {
        "baseline" => Ok(Algorithm::Baseline),
        "optimized" => Ok(Algorithm::Optimized),
        other => Err(PyValueError::new_err(format!(
            "unknown algorithm {other:?}, expected \"baseline\" or \"optimized\""
        ))),
    }
}

/// The Hermitian curve over GF(q^2).
#[pyclass(name = "Curve", module = "pyeaqecc", frozen)]
struct Curve {
    ctx: core::CurveCtx,
}

#[pymethods]
impl Curve {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        Ok(Self {
            ctx: core::CurveCtx::from_q(q).map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.ctx.q()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.ctx.n()
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.ctx.genus()
    }

    #[getter]
    fn m_star(&self) -> u64 {
        self.ctx.m_star()
    }

    #[getter]
    fn max_m(&self) -> u64 {
        self.ctx.max_m()
    }

    /// Dimension of L(mQ).
    fn ell(&self, m: i64) -> u64 {
        self.ctx.ell(m)
    }

    fn m_perp(&self, m: i64) -> PyResult<i64> {
        self.ctx.m_perp(m).map_err(err)
    }

    /// Delta(m) and the method that produced it.
    #[pyo3(signature = (m, algorithm = "optimized"))]
    fn delta(&self, m: i64, algorithm: &str) -> PyResult<(u64, &'static str)> {
        let r = core::delta_with(&self.ctx, m, self::algorithm(algorithm)?).map_err(err)?;
        Ok((r.delta, r.method.as_str()))
    }

    /// Pole orders of the triangular basis Phi(m).
    #[pyo3(signature = (m, algorithm = "optimized"))]
    fn phi_orders(&self, m: i64, algorithm: &str) -> PyResult<Vec<u64>> {
        let b = core::phi_basis(&self.ctx, m, self::algorithm(algorithm)?).map_err(err)?;
        Ok(b.orders())
    }

    /// Tab-separated table of Phi(m), one row per basis monomial.
    #[pyo3(signature = (m, algorithm = "baseline"))]
    fn phi_table(&self, m: i64, algorithm: &str) -> PyResult<String> {
        let b = core::phi_basis(&self.ctx, m, self::algorithm(algorithm)?).map_err(err)?;
        Ok(b.render_table())
    }

    fn params(&self, m: i64) -> PyResult<Params> {
        core::eaqecc_params(&self.ctx, m).map(Params).map_err(err)
    }

    /// Parameters for every m in `[min_m, max_m]`, the full range by default.
    #[pyo3(signature = (min_m = 0, max_m = None))]
    fn sweep(&self, min_m: i64, max_m: Option<i64>) -> PyResult<Vec<Params>> {
        let hi = max_m.unwrap_or(self.ctx.max_m() as i64);
        let codes = core::params_sweep(&self.ctx, min_m, hi).map_err(err)?;
        Ok(codes.into_iter().map(Params).collect())
    }

    /// `(c_min, c_max)` over which every produced code exceeds GV, or None.
    fn gv_range(&self) -> PyResult<Option<(u64, u64)>> {
        let codes = core::params_sweep(&self.ctx, 0, self.ctx.max_m() as i64).map_err(err)?;
        Ok(core::gv_exceeding_range(&codes))
    }

    /// Delta(m) by explicit rank computations over GF(q^2).
    fn delta_oracle(&self, m: i64) -> PyResult<usize> {
        core::oracle::delta_oracle(&self.ctx, m).map_err(err)
    }

    /// c(m) by explicit rank computations over GF(q^2).
    fn c_oracle(&self, m: i64) -> PyResult<usize> {
        core::oracle::c_oracle(&self.ctx, m).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Curve(q={})", self.ctx.q())
    }
}

/// Parameters `[[n, K, d; c]]_q` of the code from C(m).
#[pyclass(name = "Params", module = "pyeaqecc", frozen)]
struct Params(core::EaqeccParams);

#[pymethods]
impl Params {
    #[getter]
    fn q(&self) -> u64 {
        self.0.q
    }

    #[getter]
    fn m(&self) -> i64 {
        self.0.m
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n
    }

    #[getter]
    fn k_classical(&self) -> u64 {
        self.0.k_classical
    }

    #[getter(K)]
    fn k_logical(&self) -> u64 {
        self.0.k_logical
    }

    #[getter]
    fn d_lb(&self) -> u64 {
        self.0.d_lb
    }

    #[getter]
    fn c(&self) -> u64 {
        self.0.c
    }

    #[getter]
    fn delta(&self) -> u64 {
        self.0.delta
    }

    #[getter]
    fn singleton_defect(&self) -> i64 {
        self.0.singleton_defect
    }

    #[getter]
    fn exceeds_gv(&self) -> bool {
        self.0.exceeds_gv
    }

    #[getter]
    fn flags(&self) -> Vec<&'static str> {
        self.0.flags.names()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Params(m={}, {})", self.0.m, self.0)
    }
}

/// Whether the GV inequality holds at `(n, k, d, c)` over GF(q).
#[pyfunction]
fn gv_holds(q: u64, n: u64, k: u64, d: u64, c: u64) -> PyResult<bool> {
    core::gv_holds(&GvQuery { n, k, d, c }, q).map_err(err)
}

/// Upper bound on subtractions in one full run of the algorithm.
#[pyfunction]
fn reduction_bound(q: u64) -> usize {
    core::reduction_bound(q)
}

#[pymodule]
fn pyeaqecc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_class::<Params>()?;
    m.add_function(wrap_pyfunction!(gv_holds, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_bound, m)?)?;
    Ok(())
}
