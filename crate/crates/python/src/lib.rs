//! Python bindings: groups and subsets as classes, the analyses as functions.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stabring::bounds;
use stabring::fourier::{self, constants::ConstantsTable, interval};
use stabring::group::{self, FiniteAbelianGroup, GroupSubset};
use stabring::{halfgraph, sidon, stability};

fn value_error(e: stabring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Group", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGroup(FiniteAbelianGroup);

#[pymethods]
impl PyGroup {
    /// `Group("Z/2xZ/4")`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        FiniteAbelianGroup::parse(spec).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        FiniteAbelianGroup::cyclic(n).map(Self).map_err(value_error)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn moduli(&self) -> Vec<usize> {
        self.0.moduli().to_vec()
    }

    /// Residues of the element with the given index.
    fn element(&self, index: usize) -> PyResult<Vec<usize>> {
        if index >= self.0.order() {
            return Err(PyValueError::new_err(format!("index {index} is outside the group")));
        }
        Ok(self.0.element_at(index).residues)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.0)
    }
}

#[pyclass(name = "Subset", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySubset(GroupSubset);

#[pymethods]
impl PySubset {
    /// `Subset(group, [element indices])`.
    #[new]
    fn new(group: PyRef<'_, PyGroup>, members: Vec<usize>) -> PyResult<Self> {
        GroupSubset::new(&group.0, members).map(Self).map_err(value_error)
    }

    /// `Subset.parse(group, "1,2,4")`, also `"{}"` and `"(0,1),(1,1)"`.
    #[staticmethod]
    fn parse(group: PyRef<'_, PyGroup>, literal: &str) -> PyResult<Self> {
        GroupSubset::parse(&group.0, literal).map(Self).map_err(value_error)
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup(self.0.group().clone())
    }

    #[getter]
    fn members(&self) -> Vec<usize> {
        self.0.members().to_vec()
    }

    fn translate(&self, t: usize) -> PyResult<Self> {
        if t >= self.0.group().order() {
            return Err(PyValueError::new_err(format!("index {t} is outside the group")));
        }
        Ok(Self(self.0.translate(t)))
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn union(&self, other: &Self) -> PyResult<Self> {
        self.0.union(&other.0).map(Self).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, index: usize) -> bool {
        index < self.0.group().order() && self.0.contains(index)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Subset('{}', '{}')", self.0.group(), self.0)
    }
}

#[pyclass(name = "StabilityResult", frozen, get_all)]
struct PyStability {
    max_order: usize,
    stability_index: usize,
    /// Witness vectors as element labels.
    witness_a: Vec<String>,
    witness_b: Vec<String>,
}

/// Exact stability index with the lexicographically least witness.
#[pyfunction]
fn stability_index(a: &PySubset) -> PyStability {
    let r = stability::stability_index(&a.0);
    let (witness_a, witness_b) = r.witness.map_or((vec![], vec![]), |w| {
        (w.a.iter().map(ToString::to_string).collect(), w.b.iter().map(ToString::to_string).collect())
    });
    PyStability { max_order: r.max_order, stability_index: r.stability_index, witness_a, witness_b }
}

#[pyfunction]
fn has_order_property(a: &PySubset, k: usize) -> bool {
    stability::has_order_property(&a.0, k)
}

#[pyfunction]
fn bg_norm(a: &PySubset) -> f64 {
    fourier::bg_norm(&a.0).norm
}

#[pyfunction]
fn dft_magnitudes(a: &PySubset) -> Vec<f64> {
    group::dft_magnitudes(&a.0)
}

/// `(subgroup members, representative index)` if the set is a coset.
#[pyfunction]
fn coset_test(a: &PySubset) -> PyResult<Option<(Vec<usize>, usize)>> {
    group::coset_test(&a.0)
        .map(|c| Ok((c.subgroup.members().to_vec(), a.0.group().index_of(&c.representative).map_err(value_error)?)))
        .transpose()
}

#[pyfunction]
fn is_sidon(a: &PySubset) -> bool {
    sidon::is_sidon(&a.0).is_sidon
}

/// `(modulus, set)` for Singer's perfect difference set of order `q`.
#[pyfunction]
fn singer_difference_set(q: u64) -> PyResult<(u64, Vec<u64>)> {
    let d = sidon::singer_difference_set(q).map_err(value_error)?;
    Ok((d.modulus, d.set))
}

#[pyfunction]
fn singer_norm_closed_form(q: u64) -> PyResult<f64> {
    fourier::singer_norm_closed_form(q).map_err(value_error)
}

/// Closed-form singular values of the `k × k` half-graph matrix, descending.
#[pyfunction]
fn half_graph_singular_values(k: usize) -> PyResult<Vec<f64>> {
    halfgraph::closed_form_spectrum(k).map(|s| s.singular_values_closed).map_err(value_error)
}

#[pyfunction]
fn trace_norm(k: usize) -> PyResult<f64> {
    halfgraph::closed_form_spectrum(k).map(|s| s.trace_norm).map_err(value_error)
}

#[pyfunction]
fn trace_norm_lower_bound(k: usize) -> PyResult<f64> {
    halfgraph::trace_norm_lower_bound(k).map_err(value_error)
}

#[pyclass(name = "TheoremCheck", frozen, get_all)]
struct PyTheoremCheck {
    norm: f64,
    max_order: usize,
    stability_index: usize,
    trace_norm: f64,
    trace_norm_ceiling: f64,
    stability_bound: f64,
    trace_norm_ok: bool,
    theorem_ok: bool,
}

/// Both inequalities linking the norm of `A` to its stability index.
#[pyfunction]
fn theorem_check(a: &PySubset) -> PyTheoremCheck {
    let c = halfgraph::theorem_inequality_check(&a.0);
    PyTheoremCheck {
        norm: c.norm,
        max_order: c.max_order,
        stability_index: c.stability_index,
        trace_norm: c.trace_norm,
        trace_norm_ceiling: c.trace_norm_ceiling,
        stability_bound: c.stability_bound,
        trace_norm_ok: c.trace_norm_ok,
        theorem_ok: c.theorem_ok,
    }
}

#[pyfunction]
fn multinomial_ramsey_bound(ks: Vec<u64>) -> PyResult<BigUint> {
    let b = bounds::multinomial_ramsey_bound(&ks).map_err(value_error)?;
    Ok(b.value.expect("multinomial bounds are always exact"))
}

#[pyclass(name = "RepresentationBound", frozen, get_all)]
struct PyRepresentation {
    inner: BigUint,
    exact_chain: BigUint,
    /// `None` when `2^(k^(7ks))` is too large to hold.
    simplified: Option<BigUint>,
    simplified_expression: String,
    chain_within_simplified: bool,
    flagged: bool,
}

#[pyfunction]
fn representation_stability_bound(k: u64, s: u64) -> PyResult<PyRepresentation> {
    let r = bounds::representation_stability_bound(k, s).map_err(value_error)?;
    Ok(PyRepresentation {
        inner: r.inner.value.expect("exact"),
        exact_chain: r.exact_chain.value.expect("exact"),
        simplified: r.simplified.value,
        simplified_expression: r.simplified.expression,
        chain_within_simplified: r.chain_within_simplified,
        flagged: r.flagged,
    })
}

/// `(c0, c1, c1 / c0)`.
#[pyfunction]
fn constants() -> (f64, f64, f64) {
    let t = ConstantsTable::compute();
    (t.c0, t.c1, t.c1_over_c0)
}

#[pyfunction]
fn interval_norm(k: u64) -> PyResult<f64> {
    interval::interval_norm_quadrature(k).map_err(value_error)
}

/// `(value, error bound)` of the series for the interval norm.
#[pyfunction]
#[pyo3(signature = (k, tol = 1e-9))]
fn szego_series(k: u64, tol: f64) -> PyResult<(f64, f64)> {
    interval::szego_series(k, tol).map(|s| (s.value, s.error_bound)).map_err(value_error)
}

#[pymodule]
fn stabring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySubset>()?;
    m.add_class::<PyStability>()?;
    m.add_class::<PyTheoremCheck>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(stability_index, m)?)?;
    m.add_function(wrap_pyfunction!(has_order_property, m)?)?;
    m.add_function(wrap_pyfunction!(bg_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dft_magnitudes, m)?)?;
    m.add_function(wrap_pyfunction!(coset_test, m)?)?;
    m.add_function(wrap_pyfunction!(is_sidon, m)?)?;
    m.add_function(wrap_pyfunction!(singer_difference_set, m)?)?;
    m.add_function(wrap_pyfunction!(singer_norm_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(half_graph_singular_values, m)?)?;
    m.add_function(wrap_pyfunction!(trace_norm, m)?)?;
    m.add_function(wrap_pyfunction!(trace_norm_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_check, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial_ramsey_bound, m)?)?;
    m.add_function(wrap_pyfunction!(representation_stability_bound, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(interval_norm, m)?)?;
    m.add_function(wrap_pyfunction!(szego_series, m)?)?;
    Ok(())
}
