//! Pauli-string algebra and the Lindbladian specification format.
//!
//! A specification lists H and jump operators L_1..L_m, each as
//! Σ_k β_k e^{iθ_k} V_k with β_k ≥ 0 and V_k an n-fold Pauli tensor product.
//! Three norms are derived from it:
//!
//!   ‖L‖_pauli = Σ_k β_0k + Σ_j (Σ_k β_jk)²
//!   ‖L‖_ops   = ‖H‖ + Σ_j ‖L_j‖²
//!   ‖L‖_local = Σ_k ‖β_0k V_0k‖ + Σ_j ‖L_j‖²   (one H_j per Pauli term)
//!
//! Phases are carried as an exact quarter-turn count plus a residual angle so
//! that products of phased Pauli strings stay exact in the common case.

use crate::numerics::{C64, ComplexMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const PHASE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, z, z, one],
            Pauli::X => [z, one, one, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [one, z, z, -one],
        };
        ComplexMatrix { rows: 2, cols: 2, data: entries.to_vec() }
    }

    /// (product letter, quarter-turn phase of a·b as i^q).
    fn times(self, other: Pauli) -> (Pauli, u8) {
        use Pauli::*;
        match (self, other) {
            (I, b) => (b, 0),
            (a, I) => (a, 0),
            (a, b) if a == b => (I, 0),
            // cyclic: XY = iZ, YZ = iX, ZX = iY; reversed products pick up −i
            (X, Y) => (Z, 1),
            (Y, Z) => (X, 1),
            (Z, X) => (Y, 1),
            (Y, X) => (Z, 3),
            (Z, Y) => (X, 3),
            (X, Z) => (Y, 3),
            _ => unreachable!(),
        }
    }
}

/// Phased n-qubit Pauli tensor product e^{iθ}·i^q·(P_1⊗…⊗P_n).
///
/// The scalar is split into an exact quarter-turn count `quarter` ∈ {0,1,2,3}
/// and a residual angle `theta`; the phase reported by [`phase`] is their sum
/// reduced to [0, 2π).
#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    pub letters: Vec<Pauli>,
    pub quarter: u8,
    pub theta: f64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { letters: vec![Pauli::I; n], quarter: 0, theta: 0.0 }
    }

    pub fn new(letters: Vec<Pauli>, phase: f64) -> Self {
        let mut p = PauliString { letters, quarter: 0, theta: 0.0 };
        p.add_phase(phase);
        p
    }

    pub fn parse(word: &str, phase: f64) -> Option<Self> {
        let letters: Option<Vec<Pauli>> = word.chars().map(Pauli::from_char).collect();
        Some(Self::new(letters?, phase))
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// Total phase angle in [0, 2π).
    pub fn phase(&self) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let raw = self.quarter as f64 * std::f64::consts::FRAC_PI_2 + self.theta;
        raw.rem_euclid(two_pi)
    }

    /// Add a real phase angle, splitting off exact multiples of π/2.
    pub fn add_phase(&mut self, angle: f64) {
        let quarter_turns = (angle / std::f64::consts::FRAC_PI_2).round();
        let residue = angle - quarter_turns * std::f64::consts::FRAC_PI_2;
        if residue.abs() <= PHASE_TOL {
            let q = (quarter_turns as i64).rem_euclid(4) as u8;
            self.quarter = (self.quarter + q) % 4;
        } else {
            self.theta += angle;
            let two_pi = 2.0 * std::f64::consts::PI;
            self.theta = self.theta.rem_euclid(two_pi);
        }
    }

    pub fn add_quarters(&mut self, q: u8) {
        self.quarter = (self.quarter + q % 4) % 4;
    }

    pub fn phase_scalar(&self) -> C64 {
        let q = match self.quarter {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        q * Complex64::from_polar(1.0, self.theta)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(1);
        for &p in &self.letters {
            m = m.kron(&p.matrix());
        }
        m.scale(self.phase_scalar())
    }

    /// Exact product of phased Pauli strings.
    pub fn multiply(&self, other: &Self) -> Result<Self, SpecError> {
        if self.n() != other.n() {
            return Err(SpecError::MismatchedQubitCount { left: self.n(), right: other.n() });
        }
        let mut letters = Vec::with_capacity(self.n());
        let mut quarter = (self.quarter + other.quarter) % 4;
        for (&a, &b) in self.letters.iter().zip(&other.letters) {
            let (c, q) = a.times(b);
            letters.push(c);
            quarter = (quarter + q) % 4;
        }
        let mut out = PauliString { letters, quarter, theta: 0.0 };
        out.add_phase(self.theta + other.theta);
        Ok(out)
    }

    /// Adjoint: conjugate the scalar; the letters are self-adjoint.
    pub fn dagger(&self) -> Self {
        PauliString {
            letters: self.letters.clone(),
            quarter: (4 - self.quarter % 4) % 4,
            theta: (-self.theta).rem_euclid(2.0 * std::f64::consts::PI),
        }
    }

    pub fn is_unphased(&self) -> bool {
        self.quarter == 0 && self.theta.abs() <= PHASE_TOL
    }

    /// Phase is 0 or π, i.e. the scalar is ±1 (a real multiple keeps a
    /// Hermitian Pauli term Hermitian).
    pub fn is_real_signed(&self) -> bool {
        self.quarter % 2 == 0 && self.theta.abs() <= PHASE_TOL
    }

    pub fn word(&self) -> String {
        self.letters.iter().map(|p| p.to_char()).collect()
    }
}

/// Σ_k β_k·(phased Pauli), β_k ≥ 0.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearCombinationOfPaulis {
    pub terms: Vec<(f64, PauliString)>,
}

impl LinearCombinationOfPaulis {
    pub fn n(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.n())
    }

    pub fn to_matrix(&self, n: usize) -> ComplexMatrix {
        let d = 1usize << n;
        let mut m = ComplexMatrix::zeros(d, d);
        for (beta, p) in &self.terms {
            m = m.add(&p.to_matrix().scale_re(*beta));
        }
        m
    }

    /// Σ_k β_k.
    pub fn beta_sum(&self) -> f64 {
        self.terms.iter().map(|(b, _)| b).sum()
    }

    /// Drop β = 0 terms.
    pub fn canonicalize(&self) -> Self {
        LinearCombinationOfPaulis {
            terms: self.terms.iter().filter(|(b, _)| *b != 0.0).cloned().collect(),
        }
    }
}

/// H plus jump operators L_1..L_m over n qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct LindbladSpec {
    pub n: usize,
    pub hamiltonian: LinearCombinationOfPaulis,
    pub jumps: Vec<LinearCombinationOfPaulis>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("negative beta {beta} in row {row}, term {term}")]
    NegativeBeta { row: String, term: usize, beta: f64 },
    #[error("non-Hermitian H: ‖H − H†‖ = {defect:.3e}")]
    NonHermitianH { defect: f64 },
    #[error("inconsistent n: pauli word '{word}' has length {found}, spec declares n = {expected}")]
    InconsistentN { word: String, found: usize, expected: usize },
    #[error("invalid pauli word '{word}': letters must be in IXYZ")]
    BadPauliWord { word: String },
    #[error("empty jump operator L_{index}")]
    EmptyJump { index: usize },
    #[error("mismatched qubit counts: {left} vs {right}")]
    MismatchedQubitCount { left: usize, right: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    beta: f64,
    pauli: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    phase: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    n: usize,
    #[serde(rename = "H")]
    h: Vec<TermDoc>,
    #[serde(rename = "L")]
    l: Vec<Vec<TermDoc>>,
}

fn term_from_doc(doc: &TermDoc, row: &str, index: usize, n: usize) -> Result<(f64, PauliString), SpecError> {
    if doc.beta < 0.0 {
        return Err(SpecError::NegativeBeta { row: row.to_string(), term: index, beta: doc.beta });
    }
    let p = PauliString::parse(&doc.pauli, doc.phase)
        .ok_or_else(|| SpecError::BadPauliWord { word: doc.pauli.clone() })?;
    if p.n() != n {
        return Err(SpecError::InconsistentN { word: doc.pauli.clone(), found: p.n(), expected: n });
    }
    Ok((doc.beta, p))
}

/// Parse a UTF-8 spec document (JSON syntax, see the repo README for the
/// grammar) into a validated [`LindbladSpec`].
pub fn parse_spec(text: &str) -> Result<LindbladSpec, SpecError> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.n == 0 || doc.n > 12 {
        return Err(SpecError::Invalid(format!("n = {} out of supported range 1..=12", doc.n)));
    }
    let mut hamiltonian = LinearCombinationOfPaulis::default();
    for (k, t) in doc.h.iter().enumerate() {
        hamiltonian.terms.push(term_from_doc(t, "H", k, doc.n)?);
    }
    let mut jumps = Vec::new();
    for (j, row) in doc.l.iter().enumerate() {
        if row.is_empty() {
            return Err(SpecError::EmptyJump { index: j + 1 });
        }
        let mut lcp = LinearCombinationOfPaulis::default();
        for (k, t) in row.iter().enumerate() {
            lcp.terms.push(term_from_doc(t, &format!("L_{}", j + 1), k, doc.n)?);
        }
        jumps.push(lcp);
    }
    let spec = LindbladSpec { n: doc.n, hamiltonian, jumps };
    let h = spec.hamiltonian_matrix();
    let defect = h.sub(&h.adjoint()).spectral_norm();
    if defect > 1e-10 {
        return Err(SpecError::NonHermitianH { defect });
    }
    Ok(spec)
}

/// Serialize back to the spec document format (round-trips through
/// [`parse_spec`] to the identical value).
pub fn serialize_spec(spec: &LindbladSpec) -> String {
    let doc = SpecDoc {
        n: spec.n,
        h: spec
            .hamiltonian
            .terms
            .iter()
            .map(|(b, p)| TermDoc { beta: *b, pauli: p.word(), phase: p.phase() })
            .collect(),
        l: spec
            .jumps
            .iter()
            .map(|row| {
                row.terms
                    .iter()
                    .map(|(b, p)| TermDoc { beta: *b, pauli: p.word(), phase: p.phase() })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("spec serialization cannot fail")
}

impl LindbladSpec {
    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    pub fn m(&self) -> usize {
        self.jumps.len()
    }

    /// Max term count over all rows, after dropping β = 0 terms.
    pub fn q(&self) -> usize {
        let h = self.hamiltonian.canonicalize().terms.len();
        self.jumps
            .iter()
            .map(|row| row.canonicalize().terms.len())
            .chain(std::iter::once(h))
            .max()
            .unwrap_or(0)
    }

    pub fn canonicalize(&self) -> Self {
        LindbladSpec {
            n: self.n,
            hamiltonian: self.hamiltonian.canonicalize(),
            jumps: self.jumps.iter().map(|j| j.canonicalize()).collect(),
        }
    }

    pub fn hamiltonian_matrix(&self) -> ComplexMatrix {
        self.hamiltonian.to_matrix(self.n)
    }

    pub fn jump_matrices(&self) -> Vec<ComplexMatrix> {
        self.jumps.iter().map(|j| j.to_matrix(self.n)).collect()
    }

    /// Σ_k β_0k + Σ_j (Σ_k β_jk)².
    pub fn pauli_norm(&self) -> f64 {
        let c0 = self.hamiltonian.beta_sum();
        let jumps: f64 = self.jumps.iter().map(|j| j.beta_sum().powi(2)).sum();
        c0 + jumps
    }

    /// ‖H‖ + Σ_j ‖L_j‖² from dense matrices.
    pub fn ops_norm(&self) -> f64 {
        let h = self.hamiltonian_matrix().spectral_norm();
        let jumps: f64 = self.jump_matrices().iter().map(|l| l.spectral_norm().powi(2)).sum();
        h + jumps
    }

    /// Σ_j ‖H_j‖ + Σ_j ‖L_j‖² with one H_j per Pauli term of H; a phased
    /// Pauli times β has spectral norm β.
    pub fn local_norm(&self) -> f64 {
        let h: f64 = self.hamiltonian.terms.iter().map(|(b, _)| b).sum();
        let jumps: f64 = self.jump_matrices().iter().map(|l| l.spectral_norm().powi(2)).sum();
        h + jumps
    }

    /// Σ_k β_0k.
    pub fn c0(&self) -> f64 {
        self.hamiltonian.beta_sum()
    }

    /// c_j = Σ_k β_jk for j = 1..m.
    pub fn jump_beta_sums(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j.beta_sum()).collect()
    }
}

/// The amplitude-damping spec: H = 0, L₁ = (X + iY)/2 = |0⟩⟨1|.
pub fn amplitude_damping() -> LindbladSpec {
    parse_spec(
        r#"{"n":1,"H":[],"L":[[{"beta":0.5,"pauli":"X"},{"beta":0.5,"pauli":"Y","phase":1.5707963267948966}]]}"#,
    )
    .expect("builtin spec is valid")
}

/// Seeded random spec: n ∈ 1..=n_max, m ∈ 0..=m_max jumps, 1..=q_max terms
/// per row.  H terms get phase 0 or π (real signs keep H Hermitian); jump
/// terms get arbitrary phases.
pub fn random_spec<R: rand::Rng>(rng: &mut R, n_max: usize, m_max: usize, q_max: usize) -> LindbladSpec {
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(0..=m_max);
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let word = |rng: &mut R| -> Vec<Pauli> {
        (0..n).map(|_| letters[rng.gen_range(0..4)]).collect()
    };
    let mut hamiltonian = LinearCombinationOfPaulis::default();
    let hq = rng.gen_range(0..=q_max.min(2));
    for _ in 0..hq {
        let phase = if rng.gen_bool(0.5) { 0.0 } else { std::f64::consts::PI };
        hamiltonian
            .terms
            .push((rng.gen_range(0.05..0.6), PauliString::new(word(rng), phase)));
    }
    let mut jumps = Vec::new();
    for _ in 0..m {
        let q = rng.gen_range(1..=q_max);
        let mut row = LinearCombinationOfPaulis::default();
        for _ in 0..q {
            let phase = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
            row.terms.push((rng.gen_range(0.05..0.6), PauliString::new(word(rng), phase)));
        }
        jumps.push(row);
    }
    let spec = LindbladSpec { n, hamiltonian, jumps };
    if spec.pauli_norm() == 0.0 {
        // degenerate draw; retry
        return random_spec(rng, n_max, m_max, q_max);
    }
    spec
}

/// Haar-ish random unit vector of dimension d.
pub fn random_state<R: rand::Rng>(rng: &mut R, d: usize) -> crate::numerics::StateVector {
    let amps: Vec<C64> = (0..d)
        .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    crate::numerics::StateVector::new(amps).normalized()
}

/// Rescale all β so that ops_norm becomes `target` (H terms scale linearly,
/// jump terms by the square root, since ops_norm is ‖H‖ + Σ‖L_j‖²).
pub fn rescale_ops(spec: &LindbladSpec, target: f64) -> LindbladSpec {
    let cur = spec.ops_norm();
    assert!(cur > 0.0);
    let c = target / cur;
    let mut out = spec.clone();
    for t in &mut out.hamiltonian.terms {
        t.0 *= c;
    }
    for row in &mut out.jumps {
        for t in &mut row.terms {
            t.0 *= c.sqrt();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multiply_matches_dense_unphased() {
        for a in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            for b in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
                let pa = PauliString { letters: vec![a], quarter: 0, theta: 0.0 };
                let pb = PauliString { letters: vec![b], quarter: 0, theta: 0.0 };
                let prod = pa.multiply(&pb).unwrap();
                let want = pa.to_matrix().matmul(&pb.to_matrix());
                assert!(prod.to_matrix().sub(&want).max_abs() < 1e-14, "{a:?}·{b:?}");
            }
        }
    }

    #[test]
    fn multiply_matches_dense_random_phased() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ps = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for _ in 0..100 {
            let mk = |rng: &mut ChaCha8Rng| {
                let letters = (0..3).map(|_| ps[rng.gen_range(0..4)]).collect();
                PauliString::new(letters, rng.gen::<f64>() * 6.0)
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let prod = a.multiply(&b).unwrap();
            let want = a.to_matrix().matmul(&b.to_matrix());
            assert!(prod.to_matrix().sub(&want).max_abs() < 1e-12);
        }
    }

    #[test]
    fn named_products() {
        // X·Y = iZ
        let x = PauliString::parse("X", 0.0).unwrap();
        let y = PauliString::parse("Y", 0.0).unwrap();
        let xy = x.multiply(&y).unwrap();
        assert_eq!(xy.word(), "Z");
        assert_eq!(xy.quarter, 1);
        // P·P = I
        for w in ["X", "Y", "Z", "I"] {
            let p = PauliString::parse(w, 0.0).unwrap();
            let pp = p.multiply(&p).unwrap();
            assert_eq!(pp.word(), "I");
            assert!(pp.is_unphased());
        }
        // (e^{iθ}X)†·(e^{iφ}Z) = e^{i(φ−θ)}(XZ) = e^{i(φ−θ)}·(−i)Y
        let theta = 0.7;
        let phi = 1.9;
        let a = PauliString::parse("X", theta).unwrap();
        let b = PauliString::parse("Z", phi).unwrap();
        let prod = a.dagger().multiply(&b).unwrap();
        assert_eq!(prod.word(), "Y");
        let want_phase = (phi - theta - std::f64::consts::FRAC_PI_2)
            .rem_euclid(2.0 * std::f64::consts::PI);
        assert!((prod.phase() - want_phase).abs() < 1e-12);
    }

    #[test]
    fn pauli_strings_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let ps = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        for _ in 0..10 {
            let letters = (0..2).map(|_| ps[rng.gen_range(0..4)]).collect();
            let p = PauliString::new(letters, rng.gen::<f64>() * 6.0);
            let m = p.to_matrix();
            assert!(m.adjoint().matmul(&m).sub(&ComplexMatrix::identity(4)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn parse_amplitude_damping() {
        let text = r#"{"n":1,"H":[{"beta":0.5,"pauli":"Z"}],"L":[[{"beta":0.5,"pauli":"X"},{"beta":0.5,"pauli":"Y","phase":1.5707963268}]]}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.n, 1);
        assert_eq!(spec.m(), 1);
        assert_eq!(spec.q(), 2);
        // L₁ = (X + iY)/2 = |0⟩⟨1|
        let l = spec.jump_matrices().remove(0);
        assert!((l[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-9);
        assert!(l[(0, 0)].norm() < 1e-9 && l[(1, 0)].norm() < 1e-9 && l[(1, 1)].norm() < 1e-9);
        assert!((spec.pauli_norm() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn parse_rejects_negative_beta() {
        let text = r#"{"n":1,"H":[],"L":[[{"beta":-0.5,"pauli":"X"}]]}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(err, SpecError::NegativeBeta { .. }), "{err}");
    }

    #[test]
    fn parse_rejects_non_hermitian_h() {
        let text = r#"{"n":1,"H":[{"beta":1.0,"pauli":"X","phase":1.5707963268}],"L":[]}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(err, SpecError::NonHermitianH { .. }), "{err}");
    }

    #[test]
    fn parse_reports_syntax_position() {
        let err = parse_spec("{\n  \"n\": 1,\n  bogus\n}").unwrap_err();
        match err {
            SpecError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn parse_rejects_inconsistent_n() {
        let text = r#"{"n":2,"H":[],"L":[[{"beta":1.0,"pauli":"X"}]]}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(err, SpecError::InconsistentN { .. }), "{err}");
    }

    #[test]
    fn roundtrip_identity() {
        let text = r#"{"n":2,"H":[{"beta":0.25,"pauli":"ZI"},{"beta":0.5,"pauli":"XX","phase":3.141592653589793}],"L":[[{"beta":0.5,"pauli":"XI"},{"beta":0.25,"pauli":"YZ","phase":0.7}]]}"#;
        let spec = parse_spec(text).unwrap();
        let spec2 = parse_spec(&serialize_spec(&spec)).unwrap();
        assert_eq!(spec.n, spec2.n);
        assert_eq!(spec.hamiltonian.terms.len(), spec2.hamiltonian.terms.len());
        for (a, b) in spec.hamiltonian.terms.iter().zip(&spec2.hamiltonian.terms) {
            assert!((a.0 - b.0).abs() < 1e-15);
            assert_eq!(a.1.word(), b.1.word());
            assert!((a.1.phase() - b.1.phase()).abs() < 1e-12);
        }
        let m1 = spec.jumps[0].to_matrix(2);
        let m2 = spec2.jumps[0].to_matrix(2);
        assert!(m1.sub(&m2).max_abs() < 1e-12);
    }

    #[test]
    fn lcp_to_matrix_cases() {
        // lowering operator
        let spec = amplitude_damping();
        let l = spec.jumps[0].to_matrix(1);
        assert!((l[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        // empty → zero
        let empty = LinearCombinationOfPaulis::default();
        assert!(empty.to_matrix(1).max_abs() == 0.0);
        // identity on 2 qubits
        let one = LinearCombinationOfPaulis {
            terms: vec![(1.0, PauliString::identity(2))],
        };
        assert!(one.to_matrix(2).sub(&ComplexMatrix::identity(4)).max_abs() < 1e-15);
    }

    #[test]
    fn norms() {
        let spec = parse_spec(
            r#"{"n":1,"H":[{"beta":0.5,"pauli":"Z"}],"L":[[{"beta":0.5,"pauli":"X"},{"beta":0.5,"pauli":"Y","phase":1.5707963268}]]}"#,
        )
        .unwrap();
        assert!((spec.pauli_norm() - 1.5).abs() < 1e-12);
        assert!((spec.ops_norm() - 1.5).abs() < 1e-9); // ‖Z/2‖ + ‖σ₋‖² = 0.5 + 1
        let ad = amplitude_damping();
        assert!((ad.ops_norm() - 1.0).abs() < 1e-9);
        let h_only = parse_spec(r#"{"n":1,"H":[{"beta":0.5,"pauli":"Z"}],"L":[]}"#).unwrap();
        assert!((h_only.ops_norm() - 0.5).abs() < 1e-10);
        assert!((h_only.pauli_norm() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn canonicalize_drops_zero_beta() {
        let text = r#"{"n":1,"H":[{"beta":0.0,"pauli":"Z"},{"beta":0.3,"pauli":"X"}],"L":[[{"beta":1.0,"pauli":"Z"},{"beta":0.0,"pauli":"X"}]]}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.hamiltonian.terms.len(), 2);
        assert_eq!(spec.q(), 1);
        let canon = spec.canonicalize();
        assert_eq!(canon.hamiltonian.terms.len(), 1);
        assert_eq!(canon.jumps[0].terms.len(), 1);
    }
}
