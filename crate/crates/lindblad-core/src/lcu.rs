//! The channel-LCU construction: M_δ, per-Kraus LCU rows, |μ⟩, and W.
//!
//! For a spec with H = Σβ_0k V_0k and L_j = Σβ_jk V_jk the one-step map is
//!
//!   A_0 = I − (δ/2)Σ_j L_j†L_j − iδH,    A_j = √δ L_j  (j ≥ 1),
//!
//! and each A_j is written as Σ_k α_jk U_jk with α_jk ≥ 0 and U_jk a phased
//! Pauli product: row j ≥ 1 takes (√δ·β_jk, V_jk) and row 0 takes
//! {(1, I)} ∪ {((δ/2)β_jkβ_jl, −V_jk†V_jl)} ∪ {(δβ_0k, −iV_0k)}, all scalar
//! phases folded into the unitary.  With s_j = Σ_k α_jk and p = 1/Σ_j s_j²,
//! the gadget W = (B̂†⊗I)·(multi-U)·(B̂⊗I) applied to |0⟩|μ⟩|ψ⟩, |μ⟩ ∝ Σs_j|j⟩,
//! leaves √p Σ_j|j⟩A_j|ψ⟩ in the indicator-0 block.
//!
//! Standard LCU on a Stinespring dilation would instead succeed with
//! probability 1/(Σ_jk α_jk)²; the per-row grouping is what buys the channel
//! construction its 1/(1+δ) vs 1/(1+√δ)² advantage.

use crate::channels::KrausChannel;
use crate::numerics::{unitary_from_first_column, C64, ComplexMatrix, StateVector};
use crate::pauli::{LindbladSpec, PauliString};

/// Per-Kraus LCU rows with their exact coefficient sums.
#[derive(Clone, Debug)]
pub struct ChannelLCU {
    pub dim: usize,
    /// rows[j] = [(α_jk, U_jk)]; j = 0 is the A_0 row.
    pub rows: Vec<Vec<(f64, ComplexMatrix)>>,
    /// s_j = Σ_k α_jk, summed in row order (exact per the construction).
    pub s: Vec<f64>,
    /// c_j = Σ_k β_jk from the spec (c_0 for H).
    pub c: Vec<f64>,
    /// p = 1/Σ_j s_j².
    pub p: f64,
}

impl ChannelLCU {
    /// Σ_k α_jk U_jk, which must reproduce A_j.
    pub fn row_sum(&self, j: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (a, u) in &self.rows[j] {
            m = m.add(&u.scale_re(*a));
        }
        m
    }

    pub fn kraus(&self) -> KrausChannel {
        KrausChannel { operators: (0..self.rows.len()).map(|j| self.row_sum(j)).collect() }
    }

    pub fn q_dim(&self) -> usize {
        self.rows.iter().map(|r| r.len()).max().unwrap()
    }

    pub fn m_dim(&self) -> usize {
        self.rows.len()
    }
}

/// M_δ Kraus operators directly from dense matrices.
pub fn m_delta_kraus(spec: &LindbladSpec, delta: f64) -> KrausChannel {
    assert!(delta > 0.0);
    let d = spec.dim();
    let h = spec.hamiltonian_matrix();
    let jumps = spec.jump_matrices();
    let mut a0 = ComplexMatrix::identity(d).add(&h.scale(C64::new(0.0, -delta)));
    for l in &jumps {
        a0 = a0.add(&l.adjoint().matmul(l).scale_re(-delta / 2.0));
    }
    let mut ops = vec![a0];
    for l in &jumps {
        ops.push(l.scale_re(delta.sqrt()));
    }
    KrausChannel { operators: ops }
}

/// The per-Kraus LCU rows of M_δ with all phases folded into the unitaries.
pub fn m_delta_lcu(spec: &LindbladSpec, delta: f64) -> ChannelLCU {
    assert!(delta > 0.0);
    let d = spec.dim();
    let spec = spec.canonicalize();
    let mut rows: Vec<Vec<(f64, ComplexMatrix)>> = Vec::with_capacity(spec.m() + 1);

    let mut row0: Vec<(f64, ComplexMatrix)> = vec![(1.0, ComplexMatrix::identity(d))];
    for jump in &spec.jumps {
        for (bk, vk) in &jump.terms {
            for (bl, vl) in &jump.terms {
                // −V_jk† V_jl
                let mut u = vk.dagger().multiply(vl).expect("same n");
                u.add_quarters(2);
                row0.push((delta / 2.0 * bk * bl, u.to_matrix()));
            }
        }
    }
    for (b0k, v0k) in &spec.hamiltonian.terms {
        // −iV_0k
        let mut u: PauliString = v0k.clone();
        u.add_quarters(3);
        row0.push((delta * b0k, u.to_matrix()));
    }
    rows.push(row0);
    for jump in &spec.jumps {
        rows.push(
            jump.terms
                .iter()
                .map(|(b, v)| (delta.sqrt() * b, v.to_matrix()))
                .collect(),
        );
    }

    let s: Vec<f64> = rows.iter().map(|r| r.iter().map(|(a, _)| a).sum()).collect();
    let mut c = vec![spec.c0()];
    c.extend(spec.jump_beta_sums());
    let p = 1.0 / s.iter().map(|x| x * x).sum::<f64>();
    ChannelLCU { dim: d, rows, s, c, p }
}

/// |μ⟩ = Σ_j s_j|j⟩ / √(Σ_j s_j²), normalized over all j including 0.
pub fn mu_state(s: &[f64]) -> StateVector {
    assert!(s.iter().all(|&x| x >= 0.0));
    let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(norm > 0.0, "mu_state needs some s_j > 0");
    StateVector::new(s.iter().map(|&x| C64::new(x / norm, 0.0)).collect())
}

/// The W gadget with its factor matrices; ancilla index z = k·m_dim + j
/// (indicator k slow, purifier j fast).
#[derive(Clone, Debug)]
pub struct LcuGadget {
    pub q_dim: usize,
    pub m_dim: usize,
    pub d: usize,
    /// Padded rows, each of length q_dim (padding α = 0, U = I).
    pub rows: Vec<Vec<(f64, ComplexMatrix)>>,
    pub multi_b: ComplexMatrix,
    pub multi_u: ComplexMatrix,
    pub w: ComplexMatrix,
    pub mu: StateVector,
    pub s: Vec<f64>,
    pub p: f64,
}

fn padded_rows(lcu: &ChannelLCU) -> Vec<Vec<(f64, ComplexMatrix)>> {
    let q_dim = lcu.q_dim();
    let d = lcu.dim;
    lcu.rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            while row.len() < q_dim {
                row.push((0.0, ComplexMatrix::identity(d)));
            }
            row
        })
        .collect()
}

/// Block-diagonal (in j) unitary with block-j first column (√(α_jk/s_j))_k.
pub fn build_multi_b(lcu: &ChannelLCU) -> ComplexMatrix {
    let q_dim = lcu.q_dim();
    let m_dim = lcu.m_dim();
    let padded = padded_rows(lcu);
    let mut b = ComplexMatrix::zeros(q_dim * m_dim, q_dim * m_dim);
    for j in 0..m_dim {
        let block = if lcu.s[j] > 0.0 {
            let col: Vec<C64> = (0..q_dim)
                .map(|k| C64::new((padded[j][k].0 / lcu.s[j]).sqrt(), 0.0))
                .collect();
            unitary_from_first_column(&StateVector::new(col).normalized())
        } else {
            ComplexMatrix::identity(q_dim)
        };
        for k in 0..q_dim {
            for kp in 0..q_dim {
                b[(k * m_dim + j, kp * m_dim + j)] = block[(k, kp)];
            }
        }
    }
    b
}

/// multi-U|k⟩|j⟩|ψ⟩ = |k⟩|j⟩U_jk|ψ⟩, block-diagonal over z = k·m_dim + j.
pub fn build_multi_u(lcu: &ChannelLCU) -> ComplexMatrix {
    let q_dim = lcu.q_dim();
    let m_dim = lcu.m_dim();
    let d = lcu.dim;
    let padded = padded_rows(lcu);
    let mut full = ComplexMatrix::zeros(q_dim * m_dim * d, q_dim * m_dim * d);
    let id = ComplexMatrix::identity(d);
    for k in 0..q_dim {
        for j in 0..m_dim {
            let u = &padded[j][k].1;
            let defect = u.adjoint().matmul(u).sub(&id).max_abs();
            assert!(defect < 1e-10, "non-unitary U_{{{j},{k}}}: defect {defect:.2e}");
            let z = k * m_dim + j;
            for a in 0..d {
                for bb in 0..d {
                    full[(z * d + a, z * d + bb)] = u[(a, bb)];
                }
            }
        }
    }
    full
}

pub fn build_gadget(lcu: &ChannelLCU) -> LcuGadget {
    let b = build_multi_b(lcu);
    let u = build_multi_u(lcu);
    let id = ComplexMatrix::identity(lcu.dim);
    let w = b.adjoint().kron(&id).matmul(&u).matmul(&b.kron(&id));
    LcuGadget {
        q_dim: lcu.q_dim(),
        m_dim: lcu.m_dim(),
        d: lcu.dim,
        rows: padded_rows(lcu),
        multi_b: b,
        multi_u: u,
        w,
        mu: mu_state(&lcu.s),
        s: lcu.s.clone(),
        p: lcu.p,
    }
}

impl LcuGadget {
    /// The per-slot ancilla input |0⟩|μ⟩: a0[0·m_dim + j] = μ_j.
    pub fn ancilla_input(&self) -> StateVector {
        let mut a = vec![C64::new(0.0, 0.0); self.q_dim * self.m_dim];
        for j in 0..self.m_dim {
            a[j] = self.mu.amplitudes[j];
        }
        StateVector::new(a)
    }
}

/// Apply W to |0⟩|μ⟩|ψ⟩ and return (indicator-0 block, p).  The block is a
/// vector over purifier⊗system of norm² = p·‖Σ_j|j⟩A_j|ψ⟩‖² and equals
/// √p Σ_j|j⟩A_j|ψ⟩.
pub fn apply_w(gadget: &LcuGadget, psi: &StateVector) -> (StateVector, f64) {
    assert!((psi.norm() - 1.0).abs() < 1e-10);
    assert_eq!(psi.dim(), gadget.d);
    let input = gadget.ancilla_input().tensor(psi);
    let out = gadget.w.apply(&input.amplitudes);
    // indicator-0 block: z = 0·m_dim + j, i.e. the first m_dim·d amplitudes
    let block = out[..gadget.m_dim * gadget.d].to_vec();
    (StateVector::new(block), gadget.p)
}

/// Standard-LCU success probability 1/(Σ_k α_k)².
pub fn standard_lcu_success(alphas: &[f64]) -> f64 {
    assert!(alphas.iter().all(|&a| a >= 0.0));
    let s: f64 = alphas.iter().sum();
    1.0 / (s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{amplitude_damping, parse_spec, random_spec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn m_delta_kraus_amplitude_damping() {
        let spec = amplitude_damping();
        let ch = m_delta_kraus(&spec, 0.25);
        // A_0 = diag(1, 0.875), A_1 = 0.5|0⟩⟨1|
        let a0 = &ch.operators[0];
        assert!((a0[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((a0[(1, 1)] - C64::new(0.875, 0.0)).norm() < 1e-12);
        assert!(a0[(0, 1)].norm() < 1e-12 && a0[(1, 0)].norm() < 1e-12);
        assert!((ch.operators[1][(0, 1)] - C64::new(0.5, 0.0)).norm() < 1e-12);
        // tp_defect ≤ δ² for ops_norm = 1
        assert!(ch.tp_defect() <= 0.0625 + 1e-12);
        assert!((ch.tp_defect() - (0.875f64.powi(2) + 0.25 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn m_delta_kraus_small_delta_limit() {
        let spec = amplitude_damping();
        let ch = m_delta_kraus(&spec, 1e-8);
        assert!(ch.operators[0].sub(&ComplexMatrix::identity(2)).max_abs() < 1e-7);
        assert!(ch.operators[1].max_abs() < 1e-3);
        assert!(ch.tp_defect() < 1e-10);
    }

    #[test]
    fn lcu_rows_reconstruct_kraus() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let spec = random_spec(&mut rng, 2, 2, 3);
            for &delta in &[0.1, 0.03] {
                let lcu = m_delta_lcu(&spec, delta);
                let direct = m_delta_kraus(&spec, delta);
                for j in 0..lcu.m_dim() {
                    assert!(lcu.row_sum(j).sub(&direct.operators[j]).max_abs() < 1e-10);
                }
                // s_j = Σα_jk by construction; p matches the closed form
                let sum_sq: f64 = lcu.s.iter().map(|x| x * x).sum();
                assert!((lcu.p * sum_sq - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lcu_s_formulas() {
        // amplitude damping δ = 0.25: c = (0, 1), s = (1.125, 0.5), p = 0.65979…
        let lcu = m_delta_lcu(&amplitude_damping(), 0.25);
        assert!((lcu.c[0] - 0.0).abs() < 1e-15);
        assert!((lcu.c[1] - 1.0).abs() < 1e-15);
        assert!((lcu.s[0] - 1.125).abs() < 1e-14);
        assert!((lcu.s[1] - 0.5).abs() < 1e-14);
        assert!((lcu.p - 1.0 / (1.125f64.powi(2) + 0.25)).abs() < 1e-14);
        // H-only spec: s_0 = 1 + δc_0
        let h_only = parse_spec(r#"{"n":1,"H":[{"beta":0.5,"pauli":"Z"}],"L":[]}"#).unwrap();
        let lcu = m_delta_lcu(&h_only, 0.1);
        assert_eq!(lcu.rows.len(), 1);
        assert!((lcu.s[0] - (1.0 + 0.1 * 0.5)).abs() < 1e-14);
    }

    #[test]
    fn mu_state_examples() {
        let mu = mu_state(&[3.0, 4.0]);
        assert!((mu.amplitudes[0].re - 0.6).abs() < 1e-15);
        assert!((mu.amplitudes[1].re - 0.8).abs() < 1e-15);
        assert_eq!(mu_state(&[2.0]).amplitudes[0], C64::new(1.0, 0.0));
        let mu = mu_state(&[1.125, 0.5]);
        assert!((mu.amplitudes[0].re - 0.9138).abs() < 1e-4);
        assert!((mu.amplitudes[1].re - 0.4061).abs() < 1e-4);
    }

    #[test]
    fn multi_b_blocks_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..5 {
            let spec = random_spec(&mut rng, 2, 2, 3);
            let lcu = m_delta_lcu(&spec, 0.2);
            let b = build_multi_b(&lcu);
            let q = b.rows;
            assert!(b.adjoint().matmul(&b).sub(&ComplexMatrix::identity(q)).max_abs() < 1e-12);
            // first column of block j prepares √(α_jk/s_j)
            let padded = padded_rows(&lcu);
            for j in 0..lcu.m_dim() {
                for k in 0..lcu.q_dim() {
                    let want = (padded[j][k].0 / lcu.s[j]).sqrt();
                    let got = b[(k * lcu.m_dim() + j, j)];
                    assert!((got - C64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gadget_w_factorization() {
        let lcu = m_delta_lcu(&amplitude_damping(), 0.25);
        let g = build_gadget(&lcu);
        // W is unitary
        let n = g.w.rows;
        assert!(g.w.adjoint().matmul(&g.w).sub(&ComplexMatrix::identity(n)).max_abs() < 1e-12);
        // multi-U with all padding = I keeps unitarity
        assert!(g.multi_u.adjoint().matmul(&g.multi_u).sub(&ComplexMatrix::identity(n)).max_abs() < 1e-12);
    }

    #[test]
    fn apply_w_matches_kraus() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..8 {
            let spec = random_spec(&mut rng, 2, 2, 3);
            let delta = 0.1;
            let lcu = m_delta_lcu(&spec, delta);
            let g = build_gadget(&lcu);
            let kraus = m_delta_kraus(&spec, delta);
            let psi = crate::pauli::random_state(&mut rng, spec.dim());
            let (block, p) = apply_w(&g, &psi);
            // want √p Σ_j |j⟩ A_j|ψ⟩
            let mut want = vec![C64::new(0.0, 0.0); g.m_dim * g.d];
            for (j, a) in kraus.operators.iter().enumerate() {
                let out = a.apply(&psi.amplitudes);
                for (i, z) in out.into_iter().enumerate() {
                    want[j * g.d + i] = z * p.sqrt();
                }
            }
            let diff: f64 = block
                .amplitudes
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff < 1e-9, "block-encoding reconstruction mismatch: {diff:.2e}");
        }
    }

    #[test]
    fn p_series_matches_pauli_norm() {
        // 1/p − 1 = 2δ·pauli_norm + O(δ²)
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..5 {
            let spec = random_spec(&mut rng, 2, 2, 3);
            let lambda = spec.pauli_norm();
            let mut pts = Vec::new();
            for &delta in &[1e-3, 3e-3, 1e-2] {
                let lcu = m_delta_lcu(&spec, delta);
                pts.push((delta, 1.0 / lcu.p - 1.0));
            }
            let (slope, _) = crate::numerics::slope_fit(&pts);
            assert!((slope - 1.0).abs() < 0.02, "slope {slope}");
            let coeff = pts[0].1 / pts[0].0;
            assert!((coeff - 2.0 * lambda).abs() <= 0.05 * 2.0 * lambda, "coeff {coeff} vs 2Λ = {}", 2.0 * lambda);
        }
    }

    #[test]
    fn standard_vs_new_success() {
        assert!((standard_lcu_success(&[1.0]) - 1.0).abs() < 1e-15);
        // δ = 0.25 comparison: standard 1/(1+√δ)² = 4/9, new 1/(1+δ) = 0.8
        let delta: f64 = 0.25;
        let std_p = standard_lcu_success(&[1.0, delta.sqrt()]);
        assert!((std_p - 4.0 / 9.0).abs() < 1e-12);
        let new_p = 1.0 / ((1.0f64).powi(2) + delta.sqrt().powi(2));
        assert!((new_p - 0.8).abs() < 1e-12);
    }
}
