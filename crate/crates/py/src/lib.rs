//! Python bindings: lattices, discriminant forms, isometries, enumeration and the table
//! verifiers.

use latticeforge::discform::{
    discriminant_form, forms_isomorphic, milgram_signature, FiniteQuadraticForm,
};
use latticeforge::enumerate::{count_vectors, list_vectors, minimum, root_report, EnumQuery};
use latticeforge::glue::{primitive_extension, GlueData};
use latticeforge::isom::{
    discriminant_action, extend_to_lambda, invariant_coinvariant, spinor_norm, ActionKind,
    Isometry as CoreIsometry,
};
use latticeforge::lattice::{direct_sum, Lattice as CoreLattice};
use latticeforge::paperdata;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: latticeforge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn rows(m: &latticeforge::exactalg::IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

#[pyclass(frozen, skip_from_py_object, module = "latticeforge_py")]
#[derive(Clone)]
struct Lattice {
    inner: CoreLattice,
}

#[pymethods]
impl Lattice {
    /// A lattice from its Gram matrix.
    #[new]
    fn new(gram: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = latticeforge::exactalg::IntMatrix::from_rows(gram).map_err(err)?;
        Ok(Lattice {
            inner: CoreLattice::new(m).map_err(err)?,
        })
    }

    /// A builtin fixture name (`FG_phi35`, `OG10`, …) or a lattice expression (`U + E8(-1)^2`).
    #[staticmethod]
    fn parse(expr: &str) -> PyResult<Self> {
        Ok(Lattice {
            inner: paperdata::builtin(expr).map_err(err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn signature(&self) -> (usize, usize) {
        self.inner.signature()
    }

    #[getter]
    fn det(&self) -> BigInt {
        self.inner.det()
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<BigInt>> {
        rows(self.inner.gram())
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn is_definite(&self) -> bool {
        self.inner.is_definite()
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(
            py,
            &serde_json::to_value(self.inner.invariants()).expect("serializable"),
        )
    }

    fn discriminant_form(&self) -> PyResult<DiscriminantForm> {
        if self.inner.rank() == 0 {
            return Ok(DiscriminantForm {
                inner: FiniteQuadraticForm::trivial(),
            });
        }
        Ok(DiscriminantForm {
            inner: discriminant_form(&self.inner).map_err(err)?.0,
        })
    }

    fn rescale(&self, k: i64) -> PyResult<Self> {
        Ok(Lattice {
            inner: self.inner.rescale(k).map_err(err)?,
        })
    }

    fn __add__(&self, other: &Lattice) -> PyResult<Self> {
        Ok(Lattice {
            inner: direct_sum(&[self.inner.clone(), other.inner.clone()]).map_err(err)?,
        })
    }

    fn __neg__(&self) -> Self {
        Lattice {
            inner: self.inner.neg(),
        }
    }

    /// Number of vectors `v` with `v² = norm`, `(v, w) = k` for each `(w, k)` in `dot`, and
    /// `div(v) = div` if given.
    #[pyo3(signature = (norm, dot = vec![], div = None))]
    fn count_vectors(
        &self,
        py: Python<'_>,
        norm: i64,
        dot: Vec<(Vec<BigInt>, i64)>,
        div: Option<i64>,
    ) -> PyResult<u64> {
        let q = self.query(norm, dot, div);
        py.detach(|| count_vectors(&q)).map_err(err)
    }

    #[pyo3(signature = (norm, dot = vec![], div = None))]
    fn list_vectors(
        &self,
        py: Python<'_>,
        norm: i64,
        dot: Vec<(Vec<BigInt>, i64)>,
        div: Option<i64>,
    ) -> PyResult<Vec<Vec<BigInt>>> {
        let q = self.query(norm, dot, div);
        py.detach(|| list_vectors(&q)).map_err(err)
    }

    fn minimum(&self) -> PyResult<BigInt> {
        minimum(&self.inner).map_err(err)
    }

    /// `(short roots, long roots)`: vectors with `v² = 2`, and with `v² = 6` and divisibility 3,
    /// after negating a negative definite lattice.
    fn root_report(&self) -> PyResult<(u64, u64)> {
        let r = root_report(&self.inner, None).map_err(err)?;
        Ok((r.short_roots, r.long_roots))
    }

    fn to_json(&self) -> String {
        latticeforge::lattice::lattice_to_json(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Lattice({})", self.inner.invariants())
    }
}

impl Lattice {
    fn query(&self, norm: i64, dot: Vec<(Vec<BigInt>, i64)>, div: Option<i64>) -> EnumQuery {
        let mut q = EnumQuery::new(self.inner.clone(), norm);
        for (w, k) in dot {
            q = q.dot(w, k);
        }
        if let Some(d) = div {
            q = q.div(d);
        }
        q
    }
}

#[pyclass(frozen, skip_from_py_object, module = "latticeforge_py")]
#[derive(Clone)]
struct DiscriminantForm {
    inner: FiniteQuadraticForm,
}

#[pymethods]
impl DiscriminantForm {
    #[getter]
    fn order(&self) -> u128 {
        self.inner.order()
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<u64> {
        self.inner.elementary_divisors()
    }

    fn milgram_signature(&self) -> PyResult<u8> {
        milgram_signature(&self.inner).map_err(err)
    }

    fn negated(&self) -> Self {
        DiscriminantForm {
            inner: self.inner.negated(),
        }
    }

    fn is_isomorphic(&self, py: Python<'_>, other: &DiscriminantForm) -> PyResult<bool> {
        py.detach(|| forms_isomorphic(&self.inner, &other.inner))
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DiscriminantForm({})", self.inner)
    }
}

#[pyclass(frozen, module = "latticeforge_py")]
struct Isometry {
    inner: CoreIsometry,
}

#[pymethods]
impl Isometry {
    /// `matrix` has the image of the `j`-th basis vector in column `j`.
    #[new]
    fn new(lattice: &Lattice, matrix: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = latticeforge::exactalg::IntMatrix::from_rows(matrix).map_err(err)?;
        Ok(Isometry {
            inner: CoreIsometry::new(lattice.inner.clone(), m).map_err(err)?,
        })
    }

    /// `None` for infinite order.
    fn order(&self) -> Option<u32> {
        self.inner.order()
    }

    fn spinor_norm(&self) -> i8 {
        spinor_norm(&self.inner)
    }

    fn invariant_lattice(&self) -> PyResult<Lattice> {
        let p = invariant_coinvariant(&self.inner).map_err(err)?;
        sub_lattice(&p.invariant)
    }

    fn coinvariant_lattice(&self) -> PyResult<Lattice> {
        let p = invariant_coinvariant(&self.inner).map_err(err)?;
        sub_lattice(&p.coinvariant)
    }

    /// `"id"`, `"-id"` or `"other"`.
    fn discriminant_action(&self) -> PyResult<&'static str> {
        Ok(match discriminant_action(&self.inner).map_err(err)?.kind {
            ActionKind::Identity => "id",
            ActionKind::MinusIdentity => "-id",
            ActionKind::Other => "other",
        })
    }

    fn extend_to_lambda(&self) -> PyResult<Isometry> {
        Ok(Isometry {
            inner: extend_to_lambda(&self.inner).map_err(err)?,
        })
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        rows(self.inner.matrix())
    }
}

fn sub_lattice(s: &latticeforge::glue::Sublattice) -> PyResult<Lattice> {
    if s.rank() == 0 {
        return Ok(Lattice {
            inner: CoreLattice::zero(),
        });
    }
    Ok(Lattice {
        inner: s.lattice().map_err(err)?,
    })
}

/// The overlattice of `a ⊕ b` along a full anti-isometry of discriminant forms, if one exists.
#[pyfunction]
fn glue(a: &Lattice, b: &Lattice) -> PyResult<Option<Lattice>> {
    let Some(g) = GlueData::full(a.inner.clone(), b.inner.clone(), 100_000).map_err(err)? else {
        return Ok(None);
    };
    Ok(Some(Lattice {
        inner: primitive_extension(&g).map_err(err)?.lattice,
    }))
}

#[pyfunction]
fn builtin_names() -> Vec<String> {
    paperdata::builtin_names()
}

/// `[(d, number of sublattices, admissible)]` for `d ≤ d_max`.
#[pyfunction]
fn labeling_search(a: &Lattice, eta: Vec<BigInt>, d_max: u64) -> PyResult<Vec<(u64, usize, bool)>> {
    let ls = paperdata::labeling_search(&a.inner, &eta, d_max).map_err(err)?;
    Ok(ls
        .into_iter()
        .map(|l| (l.d, l.witnesses.len(), l.admissible))
        .collect())
}

#[pyfunction]
fn k3_association(t: &Lattice) -> PyResult<(bool, String)> {
    let v = paperdata::k3_association_verdict(&t.inner).map_err(err)?;
    Ok((v.associated, v.reason))
}

/// Per-row verdicts for `"lambda_p"`, `"cubic"` or `"lsv"`, as a dict.
#[pyfunction]
fn verify<'py>(py: Python<'py>, table: &str) -> PyResult<Bound<'py, PyAny>> {
    let rep = py.detach(|| match table {
        "lambda_p" => Some(paperdata::verify_lambda_p()),
        "cubic" => Some(paperdata::verify_cubic_tables()),
        "lsv" => Some(paperdata::verify_lsv_table()),
        _ => None,
    });
    let rep = rep.ok_or_else(|| PyValueError::new_err(format!("unknown table `{table}`")))?;
    json_to_py(py, &rep.to_json())
}

#[pymodule]
fn latticeforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lattice>()?;
    m.add_class::<DiscriminantForm>()?;
    m.add_class::<Isometry>()?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(labeling_search, m)?)?;
    m.add_function(wrap_pyfunction!(k3_association, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
