//! Python bindings: matrices over GF(p), class descriptors, representatives,
//! enumeration, counting and the oracle cross-check.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spclass::classify::{self, ClassDescriptor, SymplecticPair};
use spclass::enumerate::{self, EnumSpec};
use spclass::ffield::Fp;
use spclass::fmatrix::{mat_arith, Mat, MatOp, MatValue};
use spclass::{forms, json, oracle, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Square or rectangular matrix over GF(p).
#[pyclass(name = "Matrix", module = "spclass", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyMatrix {
    inner: Mat,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(p: u64, rows: Vec<Vec<i64>>) -> PyResult<Self> {
        let field = Fp::new(p).map_err(err)?;
        Ok(PyMatrix { inner: Mat::from_rows(field, &rows).map_err(err)? })
    }

    #[staticmethod]
    fn identity(p: u64, n: usize) -> PyResult<Self> {
        Ok(PyMatrix { inner: Mat::identity(Fp::new(p).map_err(err)?, n) })
    }

    /// The standard alternating form `(0 I; -I 0)`.
    #[staticmethod]
    fn standard_j(p: u64, n: usize) -> PyResult<Self> {
        let inner = forms::standard_j(Fp::new(p).map_err(err)?, n).map_err(err)?;
        Ok(PyMatrix { inner })
    }

    /// Reads the `p`, `rows cols`, rows text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMatrix { inner: Mat::parse_text(text).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn to_list(&self) -> Vec<Vec<u32>> {
        self.inner.to_rows()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn transpose(&self) -> Self {
        PyMatrix { inner: self.inner.transpose() }
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(PyMatrix { inner: self.inner.inverse().map_err(err)? })
    }

    fn det(&self) -> PyResult<u32> {
        self.inner.det().map_err(err)
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Lowest-first coefficients.
    fn charpoly(&self) -> Vec<u32> {
        self.inner.charpoly().coeffs().to_vec()
    }

    fn minpoly(&self) -> Vec<u32> {
        self.inner.minpoly().coeffs().to_vec()
    }

    /// Whether `self · a · selfᵀ = a` for the alternating nondegenerate `a`.
    fn is_symplectic(&self, a: PyRef<'_, PyMatrix>) -> PyResult<bool> {
        forms::is_symplectic(&self.inner, &a.inner).map_err(err)
    }

    fn __matmul__(&self, other: PyRef<'_, PyMatrix>) -> PyResult<Self> {
        match mat_arith(&self.inner, &other.inner, MatOp::Mul).map_err(err)? {
            MatValue::Mat(inner) => Ok(PyMatrix { inner }),
            _ => unreachable!("product is a matrix"),
        }
    }

    fn __repr__(&self) -> String {
        format!("Matrix(p={}, rows={:?})", self.inner.field().p(), self.inner.to_rows())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Semisimple class invariant of Sp(2m, p).
#[pyclass(name = "Descriptor", module = "spclass", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyDescriptor {
    inner: ClassDescriptor,
}

#[pymethods]
impl PyDescriptor {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyDescriptor { inner: json::descriptor_from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> String {
        json::descriptor_to_json(&self.inner)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    fn feasible(&self) -> bool {
        classify::feasible(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Descriptor({})", self.inner)
    }
}

/// A matrix X with an alternating form A it preserves.
#[pyclass(name = "SymplecticPair", module = "spclass", skip_from_py_object, frozen)]
#[derive(Clone)]
pub struct PySymplecticPair {
    inner: SymplecticPair,
}

#[pymethods]
impl PySymplecticPair {
    #[new]
    fn new(x: PyRef<'_, PyMatrix>, a: PyRef<'_, PyMatrix>) -> PyResult<Self> {
        let inner = SymplecticPair::new(x.inner.clone(), a.inner.clone()).map_err(err)?;
        Ok(PySymplecticPair { inner })
    }

    #[getter]
    fn x(&self) -> PyMatrix {
        PyMatrix { inner: self.inner.x.clone() }
    }

    #[getter]
    fn a(&self) -> PyMatrix {
        PyMatrix { inner: self.inner.a.clone() }
    }

    #[getter]
    fn descriptor(&self) -> PyDescriptor {
        PyDescriptor { inner: self.inner.descriptor.clone() }
    }

    fn to_json(&self) -> String {
        json::pair_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("SymplecticPair({})", self.inner.descriptor)
    }
}

#[pyfunction]
fn descriptor_of(x: PyRef<'_, PyMatrix>) -> PyResult<PyDescriptor> {
    Ok(PyDescriptor { inner: classify::descriptor_of(&x.inner).map_err(err)? })
}

#[pyfunction]
fn assemble_rep(d: PyRef<'_, PyDescriptor>) -> PyResult<PySymplecticPair> {
    Ok(PySymplecticPair { inner: classify::assemble_rep(&d.inner).map_err(err)? })
}

#[pyfunction]
fn sp_conjugate_test(p1: PyRef<'_, PySymplecticPair>, p2: PyRef<'_, PySymplecticPair>) -> PyResult<bool> {
    classify::sp_conjugate_test(&p1.inner, &p2.inner).map_err(err)
}

#[pyfunction]
fn count_classes(m: usize, p: u64) -> PyResult<u128> {
    enumerate::count_classes(EnumSpec::new(m, p).map_err(err)?).map_err(err)
}

#[pyfunction]
fn enumerate_descriptors(m: usize, p: u64) -> PyResult<Vec<PyDescriptor>> {
    let it = enumerate::enumerate_descriptors(EnumSpec::new(m, p).map_err(err)?).map_err(err)?;
    Ok(it.map(|inner| PyDescriptor { inner }).collect())
}

/// Oracle report as a JSON string.
#[pyfunction]
fn crosscheck(m: usize, p: u64) -> PyResult<String> {
    Ok(oracle::crosscheck(m, p).map_err(err)?.to_json())
}

/// S with `S a Sᵀ = J`.
#[pyfunction]
fn darboux(a: PyRef<'_, PyMatrix>) -> PyResult<PyMatrix> {
    Ok(PyMatrix { inner: forms::darboux(&a.inner).map_err(err)? })
}

/// Basis of the alternating forms preserved by `x`.
#[pyfunction]
fn invariant_form_space(x: PyRef<'_, PyMatrix>) -> PyResult<Vec<PyMatrix>> {
    let space = forms::invariant_form_space(&x.inner).map_err(err)?;
    Ok(space.basis.into_iter().map(|inner| PyMatrix { inner }).collect())
}

#[pymodule]
#[pyo3(name = "spclass")]
fn spclass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyDescriptor>()?;
    m.add_class::<PySymplecticPair>()?;
    m.add_function(wrap_pyfunction!(descriptor_of, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_rep, m)?)?;
    m.add_function(wrap_pyfunction!(sp_conjugate_test, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_descriptors, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(darboux, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_form_space, m)?)?;
    Ok(())
}
