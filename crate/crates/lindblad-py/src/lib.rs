//! Python bindings for the Lindblad construction library.
//!
//! Exposes the spec type plus the main pipeline operations — one-step maps,
//! amplified segments, the end-to-end simulation with certified diamond
//! intervals, the counting model and the dilation experiments — as plain
//! functions over a `Spec` class.  Matrices cross the boundary as nested
//! lists of Python complex numbers; everything heavier stays in Rust.
//!
//!     from lindblad_py import Spec, simulate
//!     spec = Spec.amplitude_damping()
//!     res = simulate(spec, t=0.6931, eps=0.05)
//!     assert res["diamond_lower"] <= 0.05

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lindblad_core::channels::{diamond_bounds, exact_evolution, lindblad_superop};
use lindblad_core::dilation::{build_j, fig1_evolve, min_delta_scan};
use lindblad_core::lcu::{m_delta_kraus, m_delta_lcu};
use lindblad_core::numerics::ComplexMatrix;
use lindblad_core::oaa::{self, segment_algebra, SimLimits};
use lindblad_core::pauli::{amplitude_damping, parse_spec, random_state, serialize_spec};
use lindblad_core::resource;
use lindblad_core::LindbladSpec;

type PyMatrix = Vec<Vec<Complex64>>;

fn mat_out(m: &ComplexMatrix) -> PyMatrix {
    (0..m.rows).map(|i| (0..m.cols).map(|j| m[(i, j)]).collect()).collect()
}

fn mat_in(rows: PyMatrix) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square and non-empty"));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// A Lindblad generator: Hamiltonian and jump operators as weighted Pauli
/// strings on 1–3 qubits.
#[pyclass]
#[derive(Clone)]
struct Spec {
    inner: LindbladSpec,
}

#[pymethods]
impl Spec {
    /// Parse the JSON spec format: `{"n": …, "H": [terms], "L": [[terms]…]}`,
    /// term = `{"beta": …, "pauli": "XZ…", "phase": …}`.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        parse_spec(json)
            .map(|inner| Spec { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// The single-qubit amplitude-damping channel generator, rate 1.
    #[staticmethod]
    fn amplitude_damping() -> Self {
        Spec { inner: amplitude_damping() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    /// Number of jump operators.
    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// Hilbert-space dimension 2^n.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn pauli_norm(&self) -> f64 {
        self.inner.pauli_norm()
    }

    fn ops_norm(&self) -> f64 {
        self.inner.ops_norm()
    }

    fn local_norm(&self) -> f64 {
        self.inner.local_norm()
    }

    fn to_json(&self) -> String {
        serialize_spec(&self.inner)
    }

    fn hamiltonian(&self) -> PyMatrix {
        mat_out(&self.inner.hamiltonian_matrix())
    }

    fn jumps(&self) -> Vec<PyMatrix> {
        self.inner.jump_matrices().iter().map(mat_out).collect()
    }

    /// The generator as a superoperator matrix on column-stacked states.
    fn generator(&self) -> PyMatrix {
        mat_out(&lindblad_superop(&self.inner).matrix)
    }

    fn __repr__(&self) -> String {
        format!("Spec(n={}, m={}, pauli_norm={})", self.inner.n, self.inner.m(), self.inner.pauli_norm())
    }
}

/// (standard-LCU, weak-measurement) success probabilities at δ.
#[pyfunction]
fn success_probabilities(delta: f64) -> (f64, f64) {
    (1.0 / (1.0 + delta.sqrt()).powi(2), 1.0 / (1.0 + delta))
}

/// The δ with p(δ)^r = 1/4 for this spec.
#[pyfunction]
fn solve_delta(spec: &Spec, r: usize) -> PyResult<f64> {
    oaa::solve_delta(&spec.inner, r).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Kraus operators of the one-step map M_δ.
#[pyfunction]
fn m_delta(spec: &Spec, delta: f64) -> Vec<PyMatrix> {
    m_delta_kraus(&spec.inner, delta).operators.iter().map(mat_out).collect()
}

/// ‖Σ A_j†A_j − I‖ for the one-step map.
#[pyfunction]
fn m_delta_tp_defect(spec: &Spec, delta: f64) -> f64 {
    m_delta_kraus(&spec.inner, delta).tp_defect()
}

/// Certified diamond interval of M_δ − e^{Lδ}.
#[pyfunction]
fn m_delta_error(spec: &Spec, delta: f64) -> (f64, f64) {
    let diff = m_delta_kraus(&spec.inner, delta)
        .to_superop()
        .sub(&exact_evolution(&spec.inner, delta));
    diamond_bounds(&diff)
}

/// e^{Lt} as a superoperator matrix.
#[pyfunction]
fn exact_map(spec: &Spec, t: f64) -> PyMatrix {
    mat_out(&exact_evolution(&spec.inner, t).matrix)
}

/// Evolve a density matrix: e^{Lt}[ρ].
#[pyfunction]
fn evolve_density(spec: &Spec, t: f64, rho: PyMatrix) -> PyResult<PyMatrix> {
    let rho = mat_in(rho)?;
    if rho.rows != spec.inner.dim() {
        return Err(PyValueError::new_err("density matrix dimension mismatch"));
    }
    Ok(mat_out(&exact_evolution(&spec.inner, t).apply(&rho)))
}

/// ‖F|Ψ⟩ − |Φ⟩‖ for the r-slot amplified segment at this δ, on a seeded
/// random input state.
#[pyfunction]
#[pyo3(signature = (spec, r, delta, seed=0))]
fn oaa_distance(spec: &Spec, r: usize, delta: f64, seed: u64) -> PyResult<f64> {
    if r < 1 {
        return Err(PyValueError::new_err("r must be ≥ 1"));
    }
    let lcu = m_delta_lcu(&spec.inner, delta);
    let alg = segment_algebra(&lcu, r, None, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_state(&mut rng, spec.inner.dim());
    Ok(oaa::oaa_distance(&alg, &psi))
}

/// (δ, defect, bound r(δΛ)²) of the r-slot segment with δ = solve_delta(r).
#[pyfunction]
fn segment_defect(spec: &Spec, r: usize) -> PyResult<(f64, f64, f64)> {
    let delta = oaa::solve_delta(&spec.inner, r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let lcu = m_delta_lcu(&spec.inner, delta);
    let alg = segment_algebra(&lcu, r, None, None);
    let d = spec.inner.dim();
    let defect = alg.mg.sub(&ComplexMatrix::identity(d)).spectral_norm();
    let bound = r as f64 * (delta * spec.inner.pauli_norm()).powi(2);
    Ok((delta, defect, bound))
}

/// End-to-end segmented simulation.  Returns a dict with the chosen segment
/// parameters, the certified diamond interval against e^{Lt}, and the
/// composed channel matrix.
#[pyfunction]
fn simulate<'py>(py: Python<'py>, spec: &Spec, t: f64, eps: f64) -> PyResult<Bound<'py, PyDict>> {
    let res = oaa::simulate(&spec.inner, t, eps, SimLimits::default())
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let out = PyDict::new_bound(py);
    out.set_item("segments", res.segments)?;
    out.set_item("r", res.r)?;
    out.set_item("delta", res.delta)?;
    out.set_item("per_segment_upper", res.per_segment_upper)?;
    out.set_item("diamond_lower", res.lower_vs_exact)?;
    out.set_item("diamond_upper", res.upper_vs_exact)?;
    out.set_item("channel", mat_out(&res.channel.matrix))?;
    Ok(out)
}

/// Smallest Poisson(3/2)-tail cutoff h with tail ≤ eps.
#[pyfunction]
fn poisson_h(eps: f64) -> usize {
    resource::poisson_h(eps)
}

/// Gate-count report from the counting model.
#[pyfunction]
fn cost<'py>(py: Python<'py>, spec: &Spec, t: f64, eps: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = resource::cost_report(&spec.inner, t, eps);
    let out = PyDict::new_bound(py);
    out.set_item("r", c.r)?;
    out.set_item("h", c.h)?;
    out.set_item("q_dim", c.q_dim)?;
    out.set_item("segments", c.segments)?;
    out.set_item("register_bits_a", c.register_bits_a)?;
    out.set_item("register_bits_b", c.register_bits_b)?;
    out.set_item("register_bits_c", c.register_bits_c)?;
    out.set_item("multi_u_occurrences", c.multi_u_occurrences)?;
    out.set_item("gate_count", c.gate_count)?;
    out.set_item("truncation_eps", c.truncation_eps)?;
    Ok(out)
}

/// Certified diamond interval of the N-stage reset-rotate-trace
/// discretization against e^{Lt}.
#[pyfunction]
fn fig1_error(spec: &Spec, t: f64, n: usize) -> PyResult<(f64, f64)> {
    if n < 1 {
        return Err(PyValueError::new_err("n must be ≥ 1"));
    }
    let dil = build_j(&spec.inner);
    let diff = fig1_evolve(&dil, t, n).sub(&exact_evolution(&spec.inner, t));
    Ok(diamond_bounds(&diff))
}

/// Smallest passing interaction angle for the N-stage ε-precision check, as
/// (delta_star, total_time), or None if no δ passes.
#[pyfunction]
#[pyo3(signature = (spec, t, n, eps, hint=None))]
fn min_delta(spec: &Spec, t: f64, n: usize, eps: f64, hint: Option<f64>) -> Option<(f64, f64)> {
    let dil = build_j(&spec.inner);
    min_delta_scan(&dil, &spec.inner, t, n, eps, hint).map(|s| (s.delta_star, s.total_time))
}

#[pymodule]
fn lindblad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", lindblad_core::VERSION)?;
    m.add_class::<Spec>()?;
    m.add_function(wrap_pyfunction!(success_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(solve_delta, m)?)?;
    m.add_function(wrap_pyfunction!(m_delta, m)?)?;
    m.add_function(wrap_pyfunction!(m_delta_tp_defect, m)?)?;
    m.add_function(wrap_pyfunction!(m_delta_error, m)?)?;
    m.add_function(wrap_pyfunction!(exact_map, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_density, m)?)?;
    m.add_function(wrap_pyfunction!(oaa_distance, m)?)?;
    m.add_function(wrap_pyfunction!(segment_defect, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_h, m)?)?;
    m.add_function(wrap_pyfunction!(cost, m)?)?;
    m.add_function(wrap_pyfunction!(fig1_error, m)?)?;
    m.add_function(wrap_pyfunction!(min_delta, m)?)?;
    Ok(())
}
