//! Python bindings. Reports are returned as plain dicts and lists.

use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use imprim::cherednik as ch;
use imprim::cycfield::{parse_cyc, zeta, CycNum};
use imprim::refgroup::{self, Which};
use imprim::seminormal::{self, HeckeParams};
use imprim::tableaux::{multipartitions, MultiPartition};

fn err(e: imprim::Error) -> PyErr {
    match e {
        imprim::Error::DivisionByZero | imprim::Error::NonInvertible(_) => PyArithmeticError::new_err(e.to_string()),
        e if e.is_degenerate_input() => PyValueError::new_err(format!("{}: {e}", e.kind())),
        e => PyRuntimeError::new_err(format!("{}: {e}", e.kind())),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An element of a cyclotomic field `Q(ζ_N)`.
#[pyclass(name = "Cyc", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCyc(CycNum);

#[pymethods]
impl PyCyc {
    /// Parses `"p/q"`, `"zN"`, `"zN^k"` or `"p/q*zN^k"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_cyc(text).map(PyCyc).map_err(err)
    }

    /// `ζ_n^k`.
    #[staticmethod]
    fn zeta(n: u32, k: i64) -> Self {
        PyCyc(zeta(n, k))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyCyc).map_err(err)
    }

    fn __add__(&self, o: &Self) -> Self {
        PyCyc(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyCyc(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyCyc(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyCyc(&self.0 * &o.0.inv().map_err(err)?))
    }

    fn __neg__(&self) -> Self {
        PyCyc(-&self.0)
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(e).map(PyCyc).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyc('{}')", self.0)
    }
}

/// The group `G(r,p,n)`.
#[pyclass(name = "GroupParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroupParams(refgroup::GroupParams);

#[pymethods]
impl PyGroupParams {
    #[new]
    fn new(r: u32, p: u32, n: usize) -> PyResult<Self> {
        refgroup::GroupParams::new(r, p, n).map(PyGroupParams).map_err(err)
    }

    #[getter]
    fn r(&self) -> u32 {
        self.0.r
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.d()
    }

    /// `|G(r,1,n)|`.
    fn full_order(&self) -> u128 {
        self.0.full_order()
    }

    /// `|G(r,p,n)|`.
    fn order(&self) -> u128 {
        self.0.order(Which::Subgroup)
    }

    /// Generators of `G(r,p,n)` (or of `G(r,1,n)` with `full=True`).
    #[pyo3(signature = (full = false))]
    fn generators<'py>(&self, py: Python<'py>, full: bool) -> PyResult<Bound<'py, PyAny>> {
        let which = if full { Which::Full } else { Which::Subgroup };
        to_py(py, &refgroup::generators(self.0, which).map_err(err)?)
    }

    /// Multipartitions labelling the simple `H_{r,1,n}`-modules.
    fn shapes(&self) -> PyResult<Vec<Vec<Vec<usize>>>> {
        let gp = self.0;
        Ok(multipartitions(gp.r as usize, gp.p as usize, gp.n)
            .map_err(err)?
            .into_iter()
            .map(|s| s.components().to_vec())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("GroupParams(r={}, p={}, n={})", self.0.r, self.0.p, self.0.n)
    }
}

fn shape_of(gp: refgroup::GroupParams, comps: Vec<Vec<usize>>) -> PyResult<MultiPartition> {
    let shape = MultiPartition::new(gp.p as usize, comps).map_err(err)?;
    if shape.r() != gp.r as usize || shape.n() != gp.n {
        return Err(PyValueError::new_err(format!("shape {shape} does not fit G({}, {}, {})", gp.r, gp.p, gp.n)));
    }
    Ok(shape)
}

/// Parameters `q`, `v_0, …, v_{d-1}` of the Hecke algebra `H_{r,1,n}`.
#[pyclass(name = "HeckeParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyHeckeParams(HeckeParams);

#[pymethods]
impl PyHeckeParams {
    /// Without `q` and `v` the defaults are `q = 2` and odd primes for `v`.
    #[new]
    #[pyo3(signature = (gp, q = None, v = None))]
    fn new(gp: &PyGroupParams, q: Option<&str>, v: Option<Vec<String>>) -> PyResult<Self> {
        let default = HeckeParams::default_for(gp.0).map_err(err)?;
        let q = match q {
            Some(s) => parse_cyc(s).map_err(err)?,
            None => default.q,
        };
        let v = match v {
            Some(list) => list.iter().map(|s| parse_cyc(s)).collect::<imprim::Result<_>>().map_err(err)?,
            None => default.v,
        };
        HeckeParams::new(gp.0, q, v, zeta(gp.0.p, 1)).map(PyHeckeParams).map_err(err)
    }

    /// `q = 1`, `v_j = ζ_r^j`: the group algebra of `G(r,1,n)`.
    #[staticmethod]
    fn group_specialization(gp: &PyGroupParams) -> PyResult<Self> {
        HeckeParams::group_specialization(gp.0).map(PyHeckeParams).map_err(err)
    }

    #[getter]
    fn q(&self) -> PyCyc {
        PyCyc(self.0.q.clone())
    }

    /// The parameters `u_1, …, u_r` of the relation `Π (T_1 - u_j) = 0`.
    #[getter]
    fn u(&self) -> Vec<PyCyc> {
        self.0.u.iter().cloned().map(PyCyc).collect()
    }

    fn as_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }
}

/// A simple `H_{r,1,n}`-module in the seminormal basis.
#[pyclass(name = "Rep", frozen)]
struct PyRep(seminormal::Rep);

#[pymethods]
impl PyRep {
    #[new]
    fn new(shape: Vec<Vec<usize>>, params: &PyHeckeParams) -> PyResult<Self> {
        let shape = shape_of(params.0.gp, shape)?;
        seminormal::build_rep(&shape, &params.0).map(PyRep).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn shape(&self) -> String {
        self.0.shape.to_string()
    }

    /// Image of `T_i` (`1 <= i <= n`) as rows of field elements.
    fn matrix(&self, i: usize) -> PyResult<Vec<Vec<PyCyc>>> {
        if i == 0 || i > self.0.n() {
            return Err(PyValueError::new_err(format!("generator index {i} out of range 1..={}", self.0.n())));
        }
        let m = self.0.t(i);
        Ok((0..m.rows()).map(|a| (0..m.cols()).map(|b| PyCyc(m.get(a, b).clone())).collect()).collect())
    }

    fn verify_relations<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &seminormal::verify_relations(&self.0))
    }

    /// Checks that relabelling tableaux by the shift intertwines `^τV(shift λ)` and `V(λ)`.
    fn verify_tau_shift(&self) -> PyResult<bool> {
        imprim::clifford::verify_tau_shift_inverse(&self.0.shape, &self.0.params).map(|_| true).map_err(err)
    }

    /// Clifford decomposition of the restriction to `H_{r,p,n}`.
    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = imprim::clifford::decompose_restriction(&self.0).map_err(err)?.without_projectors();
        to_py(py, &report)
    }
}

/// Dunkl parameters `k_{H,j}` for the two hyperplane orbits.
#[pyclass(name = "KTable", frozen, from_py_object)]
#[derive(Clone)]
struct PyKTable(ch::KTable);

#[pymethods]
impl PyKTable {
    /// Interior coordinate values `k_1, …, k_{r-1}` and the difference value `k_1`.
    #[new]
    fn new(gp: &PyGroupParams, coordinate: Vec<String>, difference: &str) -> PyResult<Self> {
        let parse = |s: &str| parse_cyc(s).map_err(err);
        let coord = coordinate.iter().map(|s| parse(s)).collect::<PyResult<_>>()?;
        ch::KTable::new(gp.0, coord, parse(difference)?).map(PyKTable).map_err(err)
    }

    #[staticmethod]
    fn generic(gp: &PyGroupParams) -> Self {
        PyKTable(ch::KTable::generic(gp.0))
    }

    /// A table periodic modulo `d = r/p`.
    #[staticmethod]
    fn tau_compatible(gp: &PyGroupParams) -> Self {
        PyKTable(ch::KTable::tau_compatible_default(gp.0))
    }

    #[staticmethod]
    fn from_json(text: &str, gp: &PyGroupParams) -> PyResult<Self> {
        ch::KTable::from_json(text, gp.0).map(PyKTable).map_err(err)
    }

    fn tau_compatibility<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &ch::check_tau_compatibility(&self.0).map_err(err)?)
    }

    /// Applies the Dunkl operator `T_y` to a monomial `x^exps` (unit coefficient).
    fn dunkl_monomial(&self, y: usize, exps: Vec<u32>) -> PyResult<Vec<(Vec<u32>, PyCyc)>> {
        if exps.len() != self.0.gp.n || y >= self.0.gp.n {
            return Err(PyValueError::new_err("index or exponent vector does not match n"));
        }
        let f = ch::Poly::monomial(CycNum::one(), exps);
        let g = ch::dunkl_apply(y, &f, &self.0).map_err(err)?;
        Ok(g.terms().map(|(e, c)| (e.clone(), PyCyc(c.clone()))).collect())
    }

    fn as_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }
}

#[pyfunction]
fn verify_relations_all<'py>(py: Python<'py>, params: &PyHeckeParams) -> PyResult<Bound<'py, PyAny>> {
    let reps = seminormal::build_all(&params.0).map_err(err)?;
    let reports: Vec<_> = reps.iter().map(seminormal::verify_relations).collect();
    to_py(py, &reports)
}

#[pyfunction]
fn smash_census<'py>(py: Python<'py>, params: &PyHeckeParams) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &imprim::clifford::smash_product_census(&params.0).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (params, cap = imprim::heckespan::DEFAULT_BASIS_CAP))]
fn fixed_subspace<'py>(py: Python<'py>, params: &PyHeckeParams, cap: u128) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &imprim::heckespan::fixed_subspace_check(&params.0, cap).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (k, degree = 3))]
fn dunkl_commutation<'py>(py: Python<'py>, k: &PyKTable, degree: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &ch::verify_commutation(&k.0, degree).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (k, pbw_degree = 1))]
fn tau_fixed_cherednik<'py>(py: Python<'py>, k: &PyKTable, pbw_degree: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &ch::verify_thm_3_4(&k.0, pbw_degree).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (shape, gp, max_degree = 2))]
fn graded_restriction<'py>(
    py: Python<'py>,
    shape: Vec<Vec<usize>>,
    gp: &PyGroupParams,
    max_degree: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let shape = shape_of(gp.0, shape)?;
    to_py(py, &ch::graded_restriction(&shape, gp.0, max_degree).map_err(err)?)
}

#[pyfunction]
fn fake_degrees<'py>(py: Python<'py>, gp: &PyGroupParams) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &ch::fake_degree_table(gp.0).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (n, max_degree = 2))]
fn bn_dn_table<'py>(py: Python<'py>, n: usize, max_degree: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &ch::bn_dn_table(n, max_degree).map_err(err)?)
}

#[pymodule]
fn pyimprim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCyc>()?;
    m.add_class::<PyGroupParams>()?;
    m.add_class::<PyHeckeParams>()?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyKTable>()?;
    m.add_function(wrap_pyfunction!(verify_relations_all, m)?)?;
    m.add_function(wrap_pyfunction!(smash_census, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_subspace, m)?)?;
    m.add_function(wrap_pyfunction!(dunkl_commutation, m)?)?;
    m.add_function(wrap_pyfunction!(tau_fixed_cherednik, m)?)?;
    m.add_function(wrap_pyfunction!(graded_restriction, m)?)?;
    m.add_function(wrap_pyfunction!(fake_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(bn_dn_table, m)?)?;
    Ok(())
}
