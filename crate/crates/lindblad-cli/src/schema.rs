//! `--schema`: fixed report columns per subcommand, for downstream plotting
//! without parsing ambiguity.

use crate::Cmd;

pub fn describe(cmd: Cmd) -> String {
    let (name, cols): (&str, &[(&str, &str)]) = match cmd {
        Cmd::Norms => (
            "norms",
            &[
                ("n", "qubit count"),
                ("m", "number of jump operators"),
                ("q", "longest canonicalized Pauli row"),
                ("pauli_norm", "Σβ_0k + Σ_j (Σ_k β_jk)²"),
                ("ops_norm", "‖H‖ + Σ_j ‖L_j‖²"),
                ("local_norm", "Σβ_0k + Σ_j ‖L_j‖²"),
                ("c0", "Σβ_0k"),
                ("diamond_lower", "certified lower diamond bound of the generator"),
                ("diamond_upper", "certified upper diamond bound of the generator"),
                ("pass", "local ≤ pauli, ops ≤ pauli and lower ≤ 2·ops within chain_tol"),
            ],
        ),
        Cmd::Lemma1 => (
            "lemma1",
            &[
                ("delta", "time-step δ"),
                ("p", "success parameter 1/(Σ_j s_j)²"),
                ("worst_error", "max over sampled states of ‖block − √p Σ_j |j⟩A_j ψ‖"),
                ("tol", "gating tolerance"),
                ("pass", "worst_error ≤ tol"),
            ],
        ),
        Cmd::StdVsNew => (
            "std-vs-new",
            &[
                ("delta", "time-step δ"),
                ("standard", "standard-LCU success 1/(1+√δ)²"),
                ("new", "weak-measurement success 1/(1+δ)"),
                ("pass", "new > standard"),
            ],
        ),
        Cmd::MdeltaSweep => (
            "mdelta-sweep",
            &[
                ("delta", "time-step δ"),
                ("diamond_lower", "certified lower diamond bound of M_δ − e^{Lδ}"),
                ("diamond_upper", "certified upper diamond bound"),
                ("bound", "2(δ·ops_norm)²"),
                ("slope", "log-log slope of diamond_lower over the grid"),
                ("pass", "lower ≤ bound and slope within 2 ± slope_window"),
            ],
        ),
        Cmd::FirstorderSweep => (
            "firstorder-sweep",
            &[
                ("delta", "time-step δ"),
                ("diamond_lower", "certified lower diamond bound of e^{δL} − (1+δL)"),
                ("diamond_upper", "certified upper diamond bound"),
                ("literal_bound", "(δ·ops_norm)² — recorded, not gating"),
                ("literal_pass", "lower ≤ literal_bound"),
                ("corrected_bound", "(2δ·ops_norm)² — gating"),
                ("slope", "log-log slope of diamond_lower over the grid"),
                ("pass", "lower ≤ corrected_bound and slope within 2 ± slope_window"),
            ],
        ),
        Cmd::OaaSweep => (
            "oaa-sweep",
            &[
                ("schedule", "asymptotic (δ = ln2/(rΛ)) or solve_delta (p^r = 1/4)"),
                ("r", "iteration count"),
                ("delta", "per-slot δ"),
                ("distance", "‖F|Ψ⟩ − |Φ⟩‖ on a seeded random input"),
                ("slope", "log-log slope of distance vs r for this schedule"),
                ("pass", "asymptotic slope within −1 ± slope_window (solve_delta rows informational)"),
            ],
        ),
        Cmd::SegmentDefect => (
            "segment-defect",
            &[
                ("r", "slot count"),
                ("delta", "solve_delta(r)"),
                ("defect", "‖Σ_ĵ Â_ĵ†Â_ĵ − I‖"),
                ("bound", "r(δ·pauli_norm)²"),
                ("defect_times_r", "defect·r"),
                ("pass", "defect ≤ bound"),
            ],
        ),
        Cmd::Simulate => (
            "simulate",
            &[
                ("t", "evolution time"),
                ("eps", "target diamond precision"),
                ("segments", "⌈t·pauli_norm/ln2⌉"),
                ("r", "per-segment iteration count chosen by doubling"),
                ("delta", "per-slot δ = t_seg/r"),
                ("per_segment_upper", "certified per-segment diamond upper bound"),
                ("diamond_lower", "certified lower diamond bound of N − e^{Lt}"),
                ("diamond_upper", "certified upper diamond bound of N − e^{Lt}"),
                ("pass", "diamond_lower ≤ eps"),
            ],
        ),
        Cmd::Truncation => (
            "truncation",
            &[
                ("r", "slot count"),
                ("h", "Hamming-weight cutoff"),
                ("discarded_mass", "binomial tail of the not-00 per-slot probability"),
                ("diamond_upper_vs_untruncated", "Choi trace-norm bound on the channel gap"),
                ("pass", "gap non-increasing in h; gap ≈ 0 at h = r"),
            ],
        ),
        Cmd::Cost => (
            "cost",
            &[
                ("r", "per-segment iteration count (2h)"),
                ("h", "weight cutoff from the Poisson tail at eps/(2·segments)"),
                ("q", "longest canonicalized Pauli row"),
                ("m", "number of jump operators"),
                ("n", "qubit count"),
                ("q_dim", "indicator alphabet size 1 + q + mq²"),
                ("segments", "⌈t·pauli_norm/ln2⌉"),
                ("register_bits_a", "slot-position register, ⌈log₂(r+1)⌉·h"),
                ("register_bits_b", "indicator register, ⌈log₂ q_dim⌉·h"),
                ("register_bits_c", "purifier register, ⌈log₂(m+1)⌉·h"),
                ("multi_u_occurrences", "multiplexed-U blocks per segment"),
                ("gate_count", "total elementary blocks"),
                ("truncation_eps", "eps share assigned to truncation"),
                ("c_u", "unit cost of one multiplexed-U block"),
                ("pass", "always true; informational report"),
            ],
        ),
        Cmd::Fig1Sweep => (
            "fig1-sweep",
            &[
                ("n", "stage count"),
                ("diamond_lower", "certified lower diamond bound vs e^{Lt}"),
                ("diamond_upper", "certified upper diamond bound vs e^{Lt}"),
                ("slope", "log-log slope of diamond_upper vs n"),
                ("pass", "monotone decrease and slope ≤ slope_max"),
            ],
        ),
        Cmd::LowerBoundScan => (
            "lower-bound-scan",
            &[
                ("n", "stage count"),
                ("delta_star", "smallest certified-passing interaction angle"),
                ("total_time", "n·delta_star"),
                ("fail_bracket", "largest certified-failing δ below delta_star"),
                ("slope_total_time", "log-log slope of total_time vs n (expect 1/2)"),
                ("slope_delta_star", "log-log slope of delta_star vs n (expect −1/2)"),
                ("pass", "both slopes within their windows (needs ≥ 3 grid points)"),
            ],
        ),
        Cmd::LocalApprox => (
            "local-approx",
            &[
                ("delta", "interaction angle"),
                ("distance", "trace-norm distance of the reset step to e^{−iGδ}"),
                ("slope", "log-log slope of distance vs δ (expect 2)"),
                ("pass", "slope within 2 ± slope_window"),
            ],
        ),
    };
    let mut out = format!("subcommand: {name}\ncolumns:\n");
    for (c, d) in cols {
        out.push_str(&format!("  {c}: {d}\n"));
    }
    out
}
