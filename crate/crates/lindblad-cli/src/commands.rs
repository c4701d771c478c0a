//! The thirteen experiment subcommands.
//!
//! Each one binds library calls to a fixed-column report: every measured
//! value appears next to the bound it is compared against and a `pass`
//! column.  Sweep points that do not depend on each other are dispatched to
//! the rayon pool sized by `--jobs`; rows are emitted in grid order, never in
//! completion order, and all randomness flows from `--seed` through
//! per-point ChaCha streams, so a config reproduces its report byte for byte.

use crate::report::{num, Report};
use lindblad_core::channels::{diamond_bounds, exact_evolution, first_order_map, lindblad_superop};
use lindblad_core::dilation::{build_j, fig1_evolve, local_approx_compare, min_delta_scan};
use lindblad_core::lcu::{apply_w, build_gadget, m_delta_kraus, m_delta_lcu};
use lindblad_core::numerics::slope_fit;
use lindblad_core::oaa::{
    extract_channel, oaa_distance, plan_segment, segment_algebra, simulate, solve_delta, OaaError,
    SimLimits, LN2,
};
use lindblad_core::pauli::{parse_spec, random_state};
use lindblad_core::resource::{cost_report, discarded_mass};
use lindblad_core::{ComplexMatrix, LindbladSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::path::PathBuf;

pub enum CliError {
    Config(String),
    Assert(String),
}

/// Resolved flag values shared by every subcommand.
pub struct Opts {
    pub spec: Option<PathBuf>,
    pub t: Option<f64>,
    pub eps: Option<f64>,
    pub r: Option<usize>,
    pub n_grid: Vec<usize>,
    pub delta_grid: Vec<f64>,
    pub seed: u64,
}

impl Opts {
    fn load_spec(&self) -> Result<LindbladSpec, CliError> {
        let path = self
            .spec
            .as_ref()
            .ok_or_else(|| CliError::Config("--spec is required for this subcommand".into()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        parse_spec(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn delta_grid_or(&self, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let g = if self.delta_grid.is_empty() { default.to_vec() } else { self.delta_grid.clone() };
        if g.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
            return Err(CliError::Config("--delta-grid entries must be positive and finite".into()));
        }
        Ok(g)
    }

    fn n_grid_or(&self, default: &[usize]) -> Result<Vec<usize>, CliError> {
        let g = if self.n_grid.is_empty() { default.to_vec() } else { self.n_grid.clone() };
        if g.iter().any(|&n| n == 0) {
            return Err(CliError::Config("--n-grid entries must be ≥ 1".into()));
        }
        Ok(g)
    }

    fn require_t(&self) -> Result<f64, CliError> {
        match self.t {
            Some(t) if t >= 0.0 && t.is_finite() => Ok(t),
            Some(_) => Err(CliError::Config("--t must be finite and ≥ 0".into())),
            None => Err(CliError::Config("--t is required for this subcommand".into())),
        }
    }

    fn require_eps(&self) -> Result<f64, CliError> {
        match self.eps {
            Some(e) if e > 0.0 && e.is_finite() => Ok(e),
            Some(_) => Err(CliError::Config("--eps must be finite and > 0".into())),
            None => Err(CliError::Config("--eps is required for this subcommand".into())),
        }
    }

    fn record_spec(&self, rep: &mut Report) {
        if let Some(p) = &self.spec {
            rep.config.push(("spec".into(), p.display().to_string()));
        }
        rep.config.push(("seed".into(), self.seed.to_string()));
    }
}

fn record_grid_f(rep: &mut Report, name: &str, grid: &[f64]) {
    let s: Vec<String> = grid.iter().map(|d| d.to_string()).collect();
    rep.config.push((name.into(), s.join(",")));
}

fn record_grid_u(rep: &mut Report, name: &str, grid: &[usize]) {
    let s: Vec<String> = grid.iter().map(|n| n.to_string()).collect();
    rep.config.push((name.into(), s.join(",")));
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

/// Norm chain for one spec: Λ_local ≤ Λ, ops ≤ Λ, and the diamond bounds of
/// the generator sit below 2·ops (the commutator/dissipator triangle bound).
pub fn run_norms(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let mut rep = Report::new(
        "norms",
        vec![
            "n", "m", "q", "pauli_norm", "ops_norm", "local_norm", "c0", "diamond_lower",
            "diamond_upper", "pass",
        ],
    );
    opts.record_spec(&mut rep);
    let chain_tol = 1e-6;
    rep.tolerances.push(("chain_tol", chain_tol));
    let gen = lindblad_superop(&spec);
    let (lo, hi) = diamond_bounds(&gen);
    let pauli = spec.pauli_norm();
    let ops = spec.ops_norm();
    let local = spec.local_norm();
    let pass = ops <= pauli + chain_tol && local <= pauli + chain_tol && lo <= 2.0 * ops + chain_tol;
    rep.push_row(vec![
        json!(spec.n),
        json!(spec.m()),
        json!(spec.q()),
        num(pauli),
        num(ops),
        num(local),
        num(spec.c0()),
        num(lo),
        num(hi),
        json!(pass),
    ]);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// lemma1
// ---------------------------------------------------------------------------

/// The LCU gadget's indicator-0 block against √p Σ_j |j⟩A_j|ψ⟩ on seeded
/// random inputs, per δ.
pub fn run_lemma1(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let grid = opts.delta_grid_or(&[0.1, 0.05])?;
    let mut rep = Report::new("lemma1", vec!["delta", "p", "worst_error", "tol", "pass"]);
    opts.record_spec(&mut rep);
    record_grid_f(&mut rep, "delta-grid", &grid);
    let tol = 1e-9;
    rep.tolerances.push(("reconstruction_tol", tol));
    let seed = opts.seed;
    let rows: Vec<(f64, f64)> = grid
        .par_iter()
        .enumerate()
        .map(|(idx, &delta)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1000 * idx as u64));
            let lcu = m_delta_lcu(&spec, delta);
            let gadget = build_gadget(&lcu);
            let kraus = m_delta_kraus(&spec, delta);
            let mut worst = 0.0f64;
            for _ in 0..10 {
                let psi = random_state(&mut rng, spec.dim());
                let (block, p) = apply_w(&gadget, &psi);
                let mut err2 = 0.0;
                for (j, a) in kraus.operators.iter().enumerate() {
                    for (i, z) in a.apply(&psi.amplitudes).into_iter().enumerate() {
                        err2 += (block.amplitudes[j * gadget.d + i] - z * p.sqrt()).norm_sqr();
                    }
                }
                worst = worst.max(err2.sqrt());
            }
            (lcu.p, worst)
        })
        .collect();
    for (&delta, (p, worst)) in grid.iter().zip(rows) {
        rep.push_row(vec![num(delta), num(p), num(worst), num(tol), json!(worst <= tol)]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// std-vs-new
// ---------------------------------------------------------------------------

/// Success-probability table: standard LCU 1/(1+√δ)² vs the weak-measurement
/// route 1/(1+δ).
pub fn run_std_vs_new(opts: &Opts) -> Result<Report, CliError> {
    let grid = opts.delta_grid_or(&[0.04, 0.25, 0.64])?;
    let mut rep = Report::new("std-vs-new", vec!["delta", "standard", "new", "pass"]);
    record_grid_f(&mut rep, "delta-grid", &grid);
    for &delta in &grid {
        let standard = 1.0 / (1.0 + delta.sqrt()).powi(2);
        let new = 1.0 / (1.0 + delta);
        rep.push_row(vec![num(delta), num(standard), num(new), json!(new > standard)]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// mdelta-sweep / firstorder-sweep
// ---------------------------------------------------------------------------

/// M_δ − e^{Lδ}: per-δ diamond interval against 2(δ·ops)², plus the fitted
/// log-log slope (expected 2).
pub fn run_mdelta_sweep(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let grid = opts.delta_grid_or(&[0.2, 0.1, 0.05, 0.025])?;
    let mut rep = Report::new(
        "mdelta-sweep",
        vec!["delta", "diamond_lower", "diamond_upper", "bound", "slope", "pass"],
    );
    opts.record_spec(&mut rep);
    record_grid_f(&mut rep, "delta-grid", &grid);
    let slope_window = 0.15;
    rep.tolerances.push(("slope_window", slope_window));
    rep.tolerances.push(("bound_margin", 1e-9));
    let ops = spec.ops_norm();
    let points: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&delta| {
            let diff = m_delta_kraus(&spec, delta).to_superop().sub(&exact_evolution(&spec, delta));
            diamond_bounds(&diff)
        })
        .collect();
    let fit: Vec<(f64, f64)> = grid.iter().zip(&points).map(|(&d, &(lo, _))| (d, lo)).collect();
    let slope = if fit.iter().all(|&(_, y)| y > 0.0) { slope_fit(&fit).0 } else { f64::NAN };
    let slope_ok = (slope - 2.0).abs() <= slope_window;
    for (&delta, &(lo, hi)) in grid.iter().zip(&points) {
        let bound = 2.0 * (delta * ops).powi(2);
        rep.push_row(vec![
            num(delta),
            num(lo),
            num(hi),
            num(bound),
            num(slope),
            json!(lo <= bound + 1e-9 && slope_ok),
        ]);
    }
    Ok(rep)
}

/// e^{δL} − (1 + δL): the literal (δ·ops)² bound is evaluated and recorded
/// but only the corrected (2δ·ops)² bound and the slope gate the run.
pub fn run_firstorder_sweep(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let grid = opts.delta_grid_or(&[0.2, 0.1, 0.05, 0.025])?;
    let mut rep = Report::new(
        "firstorder-sweep",
        vec![
            "delta", "diamond_lower", "diamond_upper", "literal_bound", "literal_pass",
            "corrected_bound", "slope", "pass",
        ],
    );
    opts.record_spec(&mut rep);
    record_grid_f(&mut rep, "delta-grid", &grid);
    let slope_window = 0.15;
    rep.tolerances.push(("slope_window", slope_window));
    rep.tolerances.push(("bound_margin", 1e-9));
    let ops = spec.ops_norm();
    let points: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&delta| {
            let diff = exact_evolution(&spec, delta).sub(&first_order_map(&spec, delta));
            diamond_bounds(&diff)
        })
        .collect();
    let fit: Vec<(f64, f64)> = grid.iter().zip(&points).map(|(&d, &(lo, _))| (d, lo)).collect();
    let slope = if fit.iter().all(|&(_, y)| y > 0.0) { slope_fit(&fit).0 } else { f64::NAN };
    let slope_ok = (slope - 2.0).abs() <= slope_window;
    for (&delta, &(lo, hi)) in grid.iter().zip(&points) {
        let literal = (delta * ops).powi(2);
        let corrected = (2.0 * delta * ops).powi(2);
        rep.push_row(vec![
            num(delta),
            num(lo),
            num(hi),
            num(literal),
            json!(lo <= literal + 1e-9),
            num(corrected),
            num(slope),
            json!(lo <= corrected + 1e-9 && slope_ok),
        ]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// oaa-sweep
// ---------------------------------------------------------------------------

/// ‖F|Ψ⟩ − |Φ⟩‖ against r, for both δ schedules: the asymptotic ln2/(rΛ)
/// schedule (which gates the −1 slope) and the exact-p^r = 1/4 solve_delta
/// schedule (steeper at small r; recorded, not gated).
pub fn run_oaa_sweep(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let rs = opts.n_grid_or(&[2, 4, 8])?;
    let lambda = spec.pauli_norm();
    if lambda <= 0.0 {
        return Err(CliError::Config("spec has zero pauli_norm".into()));
    }
    let mut rep = Report::new("oaa-sweep", vec!["schedule", "r", "delta", "distance", "slope", "pass"]);
    opts.record_spec(&mut rep);
    record_grid_u(&mut rep, "n-grid", &rs);
    let slope_window = 0.2;
    rep.tolerances.push(("slope_window", slope_window));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let psi = random_state(&mut rng, spec.dim());
    for (name, gated) in [("asymptotic", true), ("solve_delta", false)] {
        let mut pts = Vec::new();
        for &r in &rs {
            let delta = if gated {
                LN2 / (r as f64 * lambda)
            } else {
                solve_delta(&spec, r).map_err(|e| CliError::Config(e.to_string()))?
            };
            let lcu = m_delta_lcu(&spec, delta);
            let alg = segment_algebra(&lcu, r, None, None);
            pts.push((r, delta, oaa_distance(&alg, &psi)));
        }
        let fit: Vec<(f64, f64)> = pts.iter().map(|&(r, _, d)| (r as f64, d)).collect();
        let slope = if fit.iter().all(|&(_, y)| y > 0.0) { slope_fit(&fit).0 } else { f64::NAN };
        let pass = !gated || (slope - (-1.0)).abs() <= slope_window;
        for (r, delta, dist) in pts {
            rep.push_row(vec![
                json!(name),
                json!(r),
                num(delta),
                num(dist),
                num(slope),
                json!(pass),
            ]);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// segment-defect
// ---------------------------------------------------------------------------

/// r-slot TP defect ‖Σ Â†Â − I‖ with δ = solve_delta(r), against r(δΛ)².
pub fn run_segment_defect(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let rs = opts.n_grid_or(&[2, 4, 8, 16])?;
    let lambda = spec.pauli_norm();
    if lambda <= 0.0 {
        return Err(CliError::Config("spec has zero pauli_norm".into()));
    }
    let mut rep = Report::new(
        "segment-defect",
        vec!["r", "delta", "defect", "bound", "defect_times_r", "pass"],
    );
    opts.record_spec(&mut rep);
    record_grid_u(&mut rep, "n-grid", &rs);
    rep.tolerances.push(("bound_margin", 1e-12));
    for &r in &rs {
        let delta = solve_delta(&spec, r).map_err(|e| CliError::Config(e.to_string()))?;
        let lcu = m_delta_lcu(&spec, delta);
        let alg = segment_algebra(&lcu, r, None, None);
        let d = spec.dim();
        let defect = alg.mg.sub(&ComplexMatrix::identity(d)).spectral_norm();
        let bound = r as f64 * (delta * lambda).powi(2);
        rep.push_row(vec![
            json!(r),
            num(delta),
            num(defect),
            num(bound),
            num(defect * r as f64),
            json!(defect <= bound + 1e-12),
        ]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// End-to-end pipeline: segmented, amplified, diluted evolution with a
/// certified diamond interval against e^{Lt}.
pub fn run_simulate(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let t = opts.require_t()?;
    let eps = opts.require_eps()?;
    let mut rep = Report::new(
        "simulate",
        vec![
            "t", "eps", "segments", "r", "delta", "per_segment_upper", "diamond_lower",
            "diamond_upper", "pass",
        ],
    );
    opts.record_spec(&mut rep);
    rep.config.push(("t".into(), t.to_string()));
    rep.config.push(("eps".into(), eps.to_string()));
    rep.tolerances.push(("eps", eps));
    let res = simulate(&spec, t, eps, SimLimits::default()).map_err(|e| match e {
        OaaError::LimitsExceeded(_) | OaaError::BadR(_) => CliError::Config(e.to_string()),
        other => CliError::Assert(other.to_string()),
    })?;
    rep.push_row(vec![
        num(t),
        num(eps),
        json!(res.segments),
        json!(res.r),
        num(res.delta),
        num(res.per_segment_upper),
        num(res.lower_vs_exact),
        num(res.upper_vs_exact),
        json!(res.lower_vs_exact <= eps),
    ]);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// truncation
// ---------------------------------------------------------------------------

/// Hamming-weight truncation of the ancilla register: discarded amplitude
/// mass and the diamond gap to the untruncated segment channel, per cutoff h.
pub fn run_truncation(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let r = opts.r.unwrap_or(4);
    if r < 1 || r > 8 {
        return Err(CliError::Config("--r must be in 1..=8 for truncation".into()));
    }
    if spec.pauli_norm() <= 0.0 {
        return Err(CliError::Config("spec has zero pauli_norm".into()));
    }
    let mut rep = Report::new(
        "truncation",
        vec!["r", "h", "discarded_mass", "diamond_upper_vs_untruncated", "pass"],
    );
    opts.record_spec(&mut rep);
    rep.config.push(("r".into(), r.to_string()));
    let monotone_margin = 1e-12;
    let exact_tol = 1e-9;
    rep.tolerances.push(("monotone_margin", monotone_margin));
    rep.tolerances.push(("exact_tol", exact_tol));
    let (plan, lcu) = plan_segment(&spec, r).map_err(|e| CliError::Config(e.to_string()))?;
    let full = extract_channel(&lcu, r, None);
    let mut prev = f64::INFINITY;
    for h in 0..=r {
        let truncated = extract_channel(&lcu, r, Some(h));
        let gap = truncated.sub(&full).to_choi().trace_norm();
        let mass = discarded_mass(&plan, lcu.s[0], h);
        let pass = gap <= prev + monotone_margin && (h < r || gap <= exact_tol);
        rep.push_row(vec![json!(r), json!(h), num(mass), num(gap), json!(pass)]);
        prev = gap;
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// cost
// ---------------------------------------------------------------------------

/// Gate-count realization of the counting model for (spec, t, eps).
pub fn run_cost(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let t = opts.require_t()?;
    let eps = opts.require_eps()?;
    let mut rep = Report::new(
        "cost",
        vec![
            "r", "h", "q", "m", "n", "q_dim", "segments", "register_bits_a", "register_bits_b",
            "register_bits_c", "multi_u_occurrences", "gate_count", "truncation_eps", "c_u", "pass",
        ],
    );
    opts.record_spec(&mut rep);
    rep.config.push(("t".into(), t.to_string()));
    rep.config.push(("eps".into(), eps.to_string()));
    let c = cost_report(&spec, t, eps);
    rep.push_row(vec![
        json!(c.r),
        json!(c.h),
        json!(c.q),
        json!(c.m),
        json!(c.n),
        json!(c.q_dim),
        json!(c.segments),
        json!(c.register_bits_a),
        json!(c.register_bits_b),
        json!(c.register_bits_c),
        json!(c.multi_u_occurrences),
        json!(c.gate_count),
        num(c.truncation_eps),
        json!(c.c_u),
        json!(c.gate_count > 0),
    ]);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// fig1-sweep
// ---------------------------------------------------------------------------

/// Reset–rotate–trace discretization: channel-level diamond error against N,
/// gated on monotone convergence at least as fast as √(t³/N).
pub fn run_fig1_sweep(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let t = opts.t.unwrap_or(LN2);
    if !(t > 0.0) {
        return Err(CliError::Config("--t must be > 0 for fig1-sweep".into()));
    }
    let ns = opts.n_grid_or(&[16, 64, 256, 1024])?;
    let mut rep = Report::new("fig1-sweep", vec!["n", "diamond_lower", "diamond_upper", "slope", "pass"]);
    opts.record_spec(&mut rep);
    rep.config.push(("t".into(), t.to_string()));
    record_grid_u(&mut rep, "n-grid", &ns);
    rep.tolerances.push(("slope_max", -0.4));
    let dil = build_j(&spec);
    let exact = exact_evolution(&spec, t);
    let points: Vec<(f64, f64)> = ns
        .par_iter()
        .map(|&n| diamond_bounds(&fig1_evolve(&dil, t, n).sub(&exact)))
        .collect();
    let fit: Vec<(f64, f64)> = ns.iter().zip(&points).map(|(&n, &(_, hi))| (n as f64, hi)).collect();
    let slope = if fit.iter().all(|&(_, y)| y > 0.0) { slope_fit(&fit).0 } else { f64::NAN };
    let slope_ok = slope <= -0.4;
    let mut prev = f64::INFINITY;
    for (&n, &(lo, hi)) in ns.iter().zip(&points) {
        let monotone = hi < prev;
        prev = hi;
        rep.push_row(vec![json!(n), num(lo), num(hi), num(slope), json!(monotone && slope_ok)]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// lower-bound-scan
// ---------------------------------------------------------------------------

/// Smallest interaction angle δ* passing the N-stage ε-precision check; the
/// scan chains each δ* as a √(N_prev/N)-scaled hint for the next N.  Gates
/// on total time N·δ* ~ √N and δ* ~ 1/√N.
pub fn run_lower_bound_scan(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let t = opts.t.unwrap_or(LN2);
    if !(t > 0.0) {
        return Err(CliError::Config("--t must be > 0 for lower-bound-scan".into()));
    }
    let eps = opts.eps.unwrap_or(0.25);
    let ns = opts.n_grid_or(&[4, 8, 16, 32, 64, 128, 256])?;
    let mut rep = Report::new(
        "lower-bound-scan",
        vec!["n", "delta_star", "total_time", "fail_bracket", "slope_total_time", "slope_delta_star", "pass"],
    );
    opts.record_spec(&mut rep);
    rep.config.push(("t".into(), t.to_string()));
    rep.config.push(("eps".into(), eps.to_string()));
    record_grid_u(&mut rep, "n-grid", &ns);
    let slope_window = 0.1;
    rep.tolerances.push(("slope_window", slope_window));
    let dil = build_j(&spec);
    let mut scans = Vec::new();
    let mut hint: Option<f64> = None;
    let mut prev_n: Option<usize> = None;
    for &n in &ns {
        let seeded = match (hint, prev_n) {
            (Some(h), Some(pn)) => Some(h * (pn as f64 / n as f64).sqrt()),
            _ => None,
        };
        let scan = min_delta_scan(&dil, &spec, t, n, eps, seeded)
            .ok_or_else(|| CliError::Assert(format!("no passing δ found at N = {n}")))?;
        hint = Some(scan.delta_star);
        prev_n = Some(n);
        scans.push(scan);
    }
    let fit_t: Vec<(f64, f64)> =
        ns.iter().zip(&scans).map(|(&n, s)| (n as f64, s.total_time)).collect();
    let fit_d: Vec<(f64, f64)> =
        ns.iter().zip(&scans).map(|(&n, s)| (n as f64, s.delta_star)).collect();
    let slope_t = slope_fit(&fit_t).0;
    let slope_d = slope_fit(&fit_d).0;
    let slopes_ok = ns.len() < 3
        || ((slope_t - 0.5).abs() <= slope_window && (slope_d - (-0.5)).abs() <= slope_window);
    for (&n, s) in ns.iter().zip(&scans) {
        rep.push_row(vec![
            json!(n),
            num(s.delta_star),
            num(s.total_time),
            num(s.fail_bracket),
            num(slope_t),
            num(slope_d),
            json!(slopes_ok),
        ]);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// local-approx
// ---------------------------------------------------------------------------

/// One reset step with the normalized joint dilation Hamiltonian vs e^{−iGδ}
/// with G its system block: distance per δ and the fitted slope (expected 2).
pub fn run_local_approx(opts: &Opts) -> Result<Report, CliError> {
    let spec = opts.load_spec()?;
    let grid = opts.delta_grid_or(&[0.2, 0.1, 0.05, 0.025])?;
    let mut rep = Report::new("local-approx", vec!["delta", "distance", "slope", "pass"]);
    opts.record_spec(&mut rep);
    record_grid_f(&mut rep, "delta-grid", &grid);
    let slope_window = 0.3;
    rep.tolerances.push(("slope_window", slope_window));
    let dil = build_j(&spec);
    // J alone has a zero system block; probe the full joint Hamiltonian
    let mut h_joint = dil.j.clone();
    let d = dil.system_dim;
    for i in 0..d {
        for jj in 0..d {
            h_joint[(i, jj)] += dil.h_sys[(i, jj)];
        }
    }
    let hn = h_joint.spectral_norm();
    if hn <= 0.0 {
        return Err(CliError::Config("spec gives a zero joint Hamiltonian".into()));
    }
    let h_joint = h_joint.scale_re(1.0 / hn);
    let points: Vec<f64> = grid
        .par_iter()
        .map(|&delta| local_approx_compare(&h_joint, dil.ancilla_dim, dil.system_dim, delta).0)
        .collect();
    let fit: Vec<(f64, f64)> = grid.iter().zip(&points).map(|(&g, &y)| (g, y)).collect();
    let slope = if fit.iter().all(|&(_, y)| y > 0.0) { slope_fit(&fit).0 } else { f64::NAN };
    let pass = (slope - 2.0).abs() <= slope_window;
    for (&delta, &dist) in grid.iter().zip(&points) {
        rep.push_row(vec![num(delta), num(dist), num(slope), json!(pass)]);
    }
    Ok(rep)
}
