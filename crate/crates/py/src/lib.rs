//! Python bindings for the invariant calculators.
//!
//! Rationals cross the boundary as `fractions.Fraction`; bundles, orbifold
//! signatures and line V-bundles are thin wrapper classes around the core
//! types. Everything is exact integer/rational arithmetic.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;

use parhiggs::components::{
    self, count_components, enumerate_invariant_classes, family_counts, CountMode, InvariantClass,
};
use parhiggs::higgs::{
    cayley_partner, classify_minimum_sp4, minima_decomposition_sp2n, morse_index_case_b,
    toledo_and_bound, MinimumCase, SpHiggsData,
};
use parhiggs::spectral::{
    compatibility_multiplicity, hitchin_base_dim, hitchin_fiber_components, prym_data,
    spectral_cover_data,
};
use parhiggs::vgeom::{
    euler_characteristic, mv_alternating_check, picard_component_count, sqrt_solutions,
    z2_cohomology_ranks, zm_cohomology_z2_ranks,
};
use parhiggs::{LineVBundle, OrbifoldSignature, ParabolicBundleData, PointWeights, Rat};

fn core_err(e: parhiggs::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<CountMode> {
    mode.parse::<CountMode>().map_err(PyValueError::new_err)
}

/// Parabolic bundle data: rank, degree, and per-point sorted
/// `(num, den, mult)` weight triples.
#[pyclass(name = "ParabolicBundle", skip_from_py_object)]
#[derive(Clone)]
struct PyBundle {
    inner: ParabolicBundleData,
}

#[pymethods]
impl PyBundle {
    #[new]
    fn new(rank: u32, degree: i64, points: Vec<Vec<(i64, i64, u32)>>) -> PyResult<Self> {
        let points = points
            .iter()
            .map(|p| PointWeights::from_triples(p))
            .collect::<parhiggs::Result<Vec<_>>>()
            .map_err(core_err)?;
        Ok(PyBundle {
            inner: ParabolicBundleData::new(rank, degree, points).map_err(core_err)?,
        })
    }

    /// Parabolic line bundle from a degree and one (num, den) weight per
    /// point.
    #[staticmethod]
    fn line(degree: i64, weights: Vec<(i64, i64)>) -> PyResult<Self> {
        let points: Vec<Vec<(i64, i64, u32)>> =
            weights.iter().map(|&(n, d)| vec![(n, d, 1)]).collect();
        Self::new(1, degree, points)
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    fn points(&self) -> Vec<Vec<(i64, i64, u32)>> {
        self.inner
            .points()
            .iter()
            .map(|p| {
                p.entries()
                    .iter()
                    .map(|e| (e.weight.numer(), e.weight.denom(), e.multiplicity))
                    .collect()
            })
            .collect()
    }

    fn pardeg(&self) -> Rat {
        self.inner.pardeg()
    }

    fn slope(&self) -> Rat {
        self.inner.par_slope()
    }

    fn dual(&self) -> Self {
        PyBundle {
            inner: self.inner.dual(),
        }
    }

    fn direct_sum(&self, other: &PyBundle) -> PyResult<Self> {
        Ok(PyBundle {
            inner: self.inner.direct_sum(&other.inner).map_err(core_err)?,
        })
    }

    fn tensor_line(&self, line: &PyBundle) -> PyResult<Self> {
        Ok(PyBundle {
            inner: self.inner.tensor_line(&line.inner).map_err(core_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyBundle {
            inner: serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    fn __eq__(&self, other: &PyBundle) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "ParabolicBundle(rank={}, degree={}, points={:?})",
            self.inner.rank(),
            self.inner.degree(),
            self.points()
        )
    }
}

/// Orbifold signature: genus plus the isotropy orders of the marked points.
#[pyclass(name = "Signature", skip_from_py_object)]
#[derive(Clone)]
struct PySignature {
    inner: OrbifoldSignature,
}

#[pymethods]
impl PySignature {
    #[new]
    fn new(genus: u32, orders: Vec<u32>) -> PyResult<Self> {
        Ok(PySignature {
            inner: OrbifoldSignature::new(genus, orders).map_err(core_err)?,
        })
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    #[getter]
    fn orders(&self) -> Vec<u32> {
        self.inner.orders().to_vec()
    }

    #[getter]
    fn num_even(&self) -> usize {
        self.inner.num_even()
    }

    fn log_canonical_degree(&self) -> i64 {
        self.inner.log_canonical_degree()
    }

    fn __repr__(&self) -> String {
        format!(
            "Signature(genus={}, orders={:?})",
            self.inner.genus(),
            self.inner.orders()
        )
    }
}

/// Line V-bundle: background degree and isotropy exponents.
#[pyclass(name = "LineBundle", skip_from_py_object)]
#[derive(Clone)]
struct PyLineBundle {
    inner: LineVBundle,
}

#[pymethods]
impl PyLineBundle {
    #[new]
    fn new(degree: i64, isotropy: Vec<u32>) -> Self {
        PyLineBundle {
            inner: LineVBundle::new(degree, isotropy),
        }
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    #[getter]
    fn isotropy(&self) -> Vec<u32> {
        self.inner.isotropy().to_vec()
    }

    fn v_degree(&self, sig: &PySignature) -> PyResult<Rat> {
        self.inner.v_degree(&sig.inner).map_err(core_err)
    }

    fn tensor(&self, other: &PyLineBundle, sig: &PySignature) -> PyResult<Self> {
        Ok(PyLineBundle {
            inner: self
                .inner
                .tensor(&other.inner, &sig.inner)
                .map_err(core_err)?,
        })
    }

    fn inverse(&self, sig: &PySignature) -> PyResult<Self> {
        Ok(PyLineBundle {
            inner: self.inner.inverse(&sig.inner).map_err(core_err)?,
        })
    }

    fn euler_characteristic(&self, sig: &PySignature) -> PyResult<i64> {
        euler_characteristic(&self.inner, &sig.inner).map_err(core_err)
    }

    fn to_parabolic_line(&self, sig: &PySignature) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: self.inner.to_parabolic_line(&sig.inner).map_err(core_err)?,
        })
    }

    fn __eq__(&self, other: &PyLineBundle) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "LineBundle(degree={}, isotropy={:?})",
            self.inner.degree(),
            self.inner.isotropy()
        )
    }
}

/// Parabolic Sp(2n,R)-Higgs triple data.
#[pyclass(name = "SpHiggs", skip_from_py_object)]
#[derive(Clone)]
struct PySpHiggs {
    inner: SpHiggsData,
}

#[pymethods]
impl PySpHiggs {
    #[new]
    fn new(
        n: u32,
        bundle: &PyBundle,
        sig: &PySignature,
        beta: bool,
        gamma: bool,
    ) -> PyResult<Self> {
        Ok(PySpHiggs {
            inner: SpHiggsData::new(n, bundle.inner.clone(), sig.inner.clone(), beta, gamma)
                .map_err(core_err)?,
        })
    }

    /// `(toledo, bound, maximal)`.
    fn toledo(&self) -> PyResult<(Rat, Rat, bool)> {
        let report = toledo_and_bound(&self.inner).map_err(core_err)?;
        Ok((report.toledo, report.bound, report.maximal))
    }

    /// `(is_minimum, case, index)` with case one of `"type-1"`, `"type-2"`,
    /// `"not-minimum"`.
    fn classify_minimum(&self) -> PyResult<(bool, String, Option<Rat>)> {
        let verdict = classify_minimum_sp4(&self.inner).map_err(core_err)?;
        let case = match verdict.case {
            MinimumCase::Type1BetaZero => "type-1",
            MinimumCase::Type2Decomposition { .. } => "type-2",
            MinimumCase::NotMinimum => "not-minimum",
        };
        Ok((verdict.is_minimum, case.to_string(), verdict.index))
    }

    fn cayley_partner(&self, l0: &PyLineBundle) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: cayley_partner(&self.inner, &l0.inner).map_err(core_err)?,
        })
    }
}

/// `(rk H^1, rk H^2)` of the Z2 V-cohomology.
#[pyfunction]
fn cohomology_ranks(sig: &PySignature) -> PyResult<(u32, u32)> {
    z2_cohomology_ranks(&sig.inner).map_err(core_err)
}

/// `(h0, h1, h2)` of the cyclic group of order m with Z2 coefficients.
#[pyfunction]
fn cyclic_cohomology_ranks(m: u32) -> (u32, u32, u32) {
    zm_cohomology_z2_ranks(m)
}

/// True iff the Mayer-Vietoris alternating sum vanishes for the signature.
#[pyfunction]
fn mayer_vietoris_exact(sig: &PySignature) -> PyResult<bool> {
    Ok(mv_alternating_check(&sig.inner).map_err(core_err)?.exact)
}

/// Component count of the V-Picard group.
#[pyfunction]
fn picard_components(sig: &PySignature) -> PyResult<u128> {
    picard_component_count(&sig.inner).map_err(core_err)
}

/// Number of square roots of the degree-`target_degree` trivial-isotropy
/// class (default: the log-canonical class).
#[pyfunction]
#[pyo3(signature = (sig, target_degree=None))]
fn sqrt_count(sig: &PySignature, target_degree: Option<i64>) -> PyResult<u128> {
    let degree = target_degree.unwrap_or_else(|| sig.inner.log_canonical_degree());
    let target = LineVBundle::new(degree, vec![0; sig.inner.num_points()]);
    sqrt_solutions(&target, &sig.inner)
        .map_err(core_err)?
        .total()
        .map_err(core_err)
}

/// Spectral cover numerics as a dict.
#[pyfunction]
fn spectral_cover<'py>(
    py: Python<'py>,
    sig: &PySignature,
    n: u32,
    twist_degree: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let cover = spectral_cover_data(&sig.inner, n, twist_degree).map_err(core_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("rank", cover.rank)?;
    dict.set_item("twist_degree", cover.twist_degree)?;
    dict.set_item("branch_degree", cover.branch_degree)?;
    dict.set_item("spectral_genus", cover.spectral_genus)?;
    dict.set_item(
        "spectral_orders",
        cover.spectral_signature.orders().to_vec(),
    )?;
    dict.set_item("regularity_assumed", cover.regularity_assumed)?;
    Ok(dict.into_any())
}

/// Dimension of the Hitchin base.
#[pyfunction]
#[pyo3(signature = (g, s, n, strong=false))]
fn hitchin_base_dimension(g: u32, s: u32, n: u32, strong: bool) -> PyResult<i64> {
    hitchin_base_dim(g, s, n, strong).map_err(core_err)
}

/// Component count of the regular Hitchin fiber.
#[pyfunction]
fn hitchin_fiber_component_count(sig: &PySignature, n: u32) -> PyResult<u128> {
    hitchin_fiber_components(&sig.inner, n).map_err(core_err)
}

/// `(dimension, components)` of the Prym of the degree-2 cover.
#[pyfunction]
fn prym(sig: &PySignature, twist_degree: i64) -> PyResult<(u32, u128)> {
    let data = prym_data(&sig.inner, twist_degree).map_err(core_err)?;
    Ok((data.dimension, data.component_count))
}

/// How many ordered lifts share one unordered weight tuple.
#[pyfunction]
fn lift_multiplicity(weights: Vec<Rat>) -> u128 {
    compatibility_multiplicity(&weights)
}

/// Morse index `2g - 2 + s - pardeg_v` of the decomposed rank-2 branch.
#[pyfunction]
fn morse_index(g: u32, s: u32, pardeg_v: Rat) -> PyResult<Rat> {
    morse_index_case_b(g, s, pardeg_v).map_err(core_err)
}

/// Summand degrees of the decomposed minima for rank n >= 3.
#[pyfunction]
fn minima_decomposition(n: u32, g: u32, s: u32) -> PyResult<Vec<Rat>> {
    minima_decomposition_sp2n(n, g, s).map_err(core_err)
}

/// Closed-form connected-component count.
#[pyfunction]
#[pyo3(signature = (sig, n, mode="weight-type"))]
fn component_count(sig: &PySignature, n: u32, mode: &str) -> PyResult<u128> {
    count_components(&sig.inner, n, parse_mode(mode)?).map_err(core_err)
}

/// Per-family counts `(uv, dw, sqrt)` in weight-type mode.
#[pyfunction]
fn component_families(sig: &PySignature, n: u32) -> PyResult<(u128, u128, u128)> {
    let f = family_counts(&sig.inner, n).map_err(core_err)?;
    Ok((f.uv, f.dw, f.sqrt))
}

/// Materialized invariant classes as `(family, data...)` tuples:
/// `("uv", u_bits, v_bits)`, `("dw", d, w)` or `("sqrt", carries, label)`.
#[pyfunction]
#[pyo3(signature = (sig, n, mode="weight-type"))]
fn invariant_classes<'py>(
    py: Python<'py>,
    sig: &PySignature,
    n: u32,
    mode: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    use pyo3::IntoPyObjectExt;
    let classes =
        enumerate_invariant_classes(&sig.inner, n, parse_mode(mode)?).map_err(core_err)?;
    classes
        .into_iter()
        .map(|c| match c {
            InvariantClass::UV { u, v, .. } => ("uv", u, v).into_bound_py_any(py),
            InvariantClass::DW { d, w } => ("dw", d, w).into_bound_py_any(py),
            InvariantClass::SqrtKD {
                carries,
                jacobian_label,
            } => ("sqrt", carries, jacobian_label).into_bound_py_any(py),
        })
        .collect()
}

/// True iff at every point some enumerator is coprime to the order.
#[pyfunction]
fn non_reduced(enumerators: Vec<Vec<u32>>, orders: Vec<u32>) -> PyResult<bool> {
    components::is_non_reduced(&enumerators, &orders).map_err(core_err)
}

#[pymodule]
fn parhiggs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyBundle>()?;
    m.add_class::<PySignature>()?;
    m.add_class::<PyLineBundle>()?;
    m.add_class::<PySpHiggs>()?;
    m.add_function(wrap_pyfunction!(cohomology_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_cohomology_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(mayer_vietoris_exact, m)?)?;
    m.add_function(wrap_pyfunction!(picard_components, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_count, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_cover, m)?)?;
    m.add_function(wrap_pyfunction!(hitchin_base_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(hitchin_fiber_component_count, m)?)?;
    m.add_function(wrap_pyfunction!(prym, m)?)?;
    m.add_function(wrap_pyfunction!(lift_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(morse_index, m)?)?;
    m.add_function(wrap_pyfunction!(minima_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(component_count, m)?)?;
    m.add_function(wrap_pyfunction!(component_families, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_classes, m)?)?;
    m.add_function(wrap_pyfunction!(non_reduced, m)?)?;
    Ok(())
}
