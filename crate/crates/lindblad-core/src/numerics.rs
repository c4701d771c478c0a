//! Dense complex matrix kernel.
//!
//! Everything is double precision and row-major.  Eigen-decomposition of
//! Hermitian matrices is done by cyclic complex Jacobi; singular values come
//! from the eigenvalues of the Gram matrix M†M; e^M is scaling-and-squaring
//! over a truncated Taylor series (scale until ‖M/2^s‖ ≤ 1/2, sum terms until
//! the term norm drops below tol·2^{−s}, square s times).  Dimensions stay at
//! desk scale (≤ a few hundred), where these simple kernels are accurate to
//! ~1e-12 relative.

use num_complex::Complex64;
use std::fmt;

pub type C64 = Complex64;

/// Dense rows×cols complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            for j in 0..self.cols.min(8) {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// (a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l].
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.
    /// Returns (eigenvalues ascending, unitary V with eigenvectors as columns).
    pub fn hermitian_eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        // enforce exact Hermiticity so rotations stay consistent
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            }
            a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        }
        let mut v = ComplexMatrix::identity(n);
        let scale = a.frobenius_norm().max(1e-300);
        let tol = 1e-14 * scale;
        for _sweep in 0..100 {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let b = a[(p, q)];
                    let babs = b.norm();
                    if babs <= 1e-300 {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let phase = b / babs; // e^{iφ}
                    let tau = (aqq - app) / (2.0 * babs);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // U = diag(1, e^{-iφ}) · [[c, s], [−s, c]] on columns (p,q)
                    let u_pp = C64::new(c, 0.0);
                    let u_pq = C64::new(s, 0.0);
                    let u_qp = phase.conj() * (-s);
                    let u_qq = phase.conj() * c;
                    // columns: A ← A·U, V ← V·U
                    for i in 0..n {
                        let x = a[(i, p)];
                        let y = a[(i, q)];
                        a[(i, p)] = x * u_pp + y * u_qp;
                        a[(i, q)] = x * u_pq + y * u_qq;
                        let vx = v[(i, p)];
                        let vy = v[(i, q)];
                        v[(i, p)] = vx * u_pp + vy * u_qp;
                        v[(i, q)] = vx * u_pq + vy * u_qq;
                    }
                    // rows: A ← U†·A
                    for j in 0..n {
                        let x = a[(p, j)];
                        let y = a[(q, j)];
                        a[(p, j)] = u_pp.conj() * x + u_qp.conj() * y;
                        a[(q, j)] = u_pq.conj() * x + u_qq.conj() * y;
                    }
                }
            }
        }
        let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re, i)).collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let vals: Vec<f64> = pairs.iter().map(|&(w, _)| w).collect();
        let vecs = ComplexMatrix::from_fn(n, n, |i, j| v[(i, pairs[j].1)]);
        (vals, vecs)
    }

    /// Singular values (descending) via the Gram matrix M†M.
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.adjoint().matmul(self);
        let (vals, _) = gram.hermitian_eigen();
        let mut svs: Vec<f64> = vals.iter().map(|&w| w.max(0.0).sqrt()).collect();
        svs.reverse();
        svs
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        self.singular_values().iter().sum()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// e^M by scaling-and-squaring with a truncated Taylor series.
    pub fn expm(&self, tol: f64) -> Self {
        assert!(self.is_square(), "expm needs a square matrix");
        let n = self.rows;
        let norm = self.spectral_norm();
        let mut s: u32 = 0;
        let mut scaled_norm = norm;
        while scaled_norm > 0.5 {
            s += 1;
            scaled_norm /= 2.0;
        }
        let m = self.scale_re(1.0 / (1u64 << s) as f64);
        let mut sum = ComplexMatrix::identity(n);
        let mut term = ComplexMatrix::identity(n);
        let term_tol = tol / (1u64 << s) as f64;
        for k in 1..200 {
            term = term.matmul(&m).scale_re(1.0 / k as f64);
            sum = sum.add(&term);
            if term.frobenius_norm() < term_tol {
                break;
            }
        }
        for _ in 0..s {
            sum = sum.matmul(&sum);
        }
        sum
    }

    /// Partial trace: `dims` factor the Hilbert space; the factors listed in
    /// `keep` survive (in their original order), the rest are traced out.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        assert_eq!(self.rows, total, "partial_trace dimension mismatch");
        assert_eq!(self.cols, total, "partial_trace dimension mismatch");
        let kept: Vec<usize> = keep.to_vec();
        let kept_dim: usize = kept.iter().map(|&k| dims[k]).product();
        let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
        let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();
        let compose = |digits: &[usize]| -> usize {
            let mut x = 0;
            for i in 0..dims.len() {
                x = x * dims[i] + digits[i];
            }
            x
        };
        let kept_index = |digits: &[usize]| -> usize {
            let mut x = 0;
            for &k in &kept {
                x = x * dims[k] + digits[k];
            }
            x
        };
        let mut out = Self::zeros(kept_dim, kept_dim);
        for a in 0..kept_dim {
            // decode a into kept digits
            let mut ka = vec![0usize; dims.len()];
            {
                let mut x = a;
                for &k in kept.iter().rev() {
                    ka[k] = x % dims[k];
                    x /= dims[k];
                }
            }
            for b in 0..kept_dim {
                let mut kb = vec![0usize; dims.len()];
                {
                    let mut x = b;
                    for &k in kept.iter().rev() {
                        kb[k] = x % dims[k];
                        x /= dims[k];
                    }
                }
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..traced_dim {
                    let mut td = vec![0usize; dims.len()];
                    {
                        let mut x = t;
                        for &k in traced.iter().rev() {
                            td[k] = x % dims[k];
                            x /= dims[k];
                        }
                    }
                    let mut ra = ka.clone();
                    let mut rb = kb.clone();
                    for &k in &traced {
                        ra[k] = td[k];
                        rb[k] = td[k];
                    }
                    acc += self[(compose(&ra), compose(&rb))];
                }
                debug_assert_eq!(kept_index(&ka), a);
                debug_assert_eq!(kept_index(&kb), b);
                out[(a, b)] = acc;
            }
        }
        out
    }
}

/// Complex state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        StateVector { amplitudes: self.amplitudes.iter().map(|z| z / n).collect() }
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn sub(&self, other: &Self) -> Self {
        StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        StateVector { amplitudes: self.amplitudes.iter().map(|z| z * c).collect() }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector { amplitudes }
    }

    /// |ψ⟩⟨ψ| as a dense matrix.
    pub fn projector(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }
}

/// Unitary whose first column is the given unit vector, via one Householder
/// reflection times a phase.
pub fn unitary_from_first_column(v: &StateVector) -> ComplexMatrix {
    let n = v.dim();
    assert!(
        (v.norm() - 1.0).abs() <= 1e-10,
        "unitary_from_first_column needs a unit vector"
    );
    let v0 = v.amplitudes[0];
    // β = −e^{i arg(v0)}; then H = I − 2uu†/u†u with u = v − βe0 maps v ↦ βe0,
    // so He0 = β̄v and U = H·diag(β,1,…,1) has first column exactly v.
    let beta = if v0.norm() > 1e-15 { -(v0 / v0.norm()) } else { C64::new(-1.0, 0.0) };
    let mut u: Vec<C64> = v.amplitudes.clone();
    u[0] -= beta;
    let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if uu < 1e-30 {
        // v already ±e0 up to phase
        let mut m = ComplexMatrix::identity(n);
        m[(0, 0)] = v0;
        return m;
    }
    let mut h = ComplexMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] -= u[i] * u[j].conj() * (2.0 / uu);
        }
    }
    for i in 0..n {
        h[(i, 0)] = h[(i, 0)] * beta;
    }
    h
}

/// Least-squares line through (log x, log y).
pub fn slope_fit(points: &[(f64, f64)]) -> (f64, f64) {
    assert!(points.len() >= 3, "slope_fit needs at least 3 points");
    assert!(
        points.iter().all(|&(x, y)| x > 0.0 && y > 0.0),
        "slope_fit needs positive data"
    );
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        })
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(2, &mut rng);
        let c = random_matrix(2, &mut rng);
        let d = random_matrix(2, &mut rng);
        let lhs = a.kron(&b).matmul(&c.kron(&d));
        let rhs = a.matmul(&c).kron(&b.matmul(&d));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn kron_scalar() {
        let c = ComplexMatrix::from_fn(1, 1, |_, _| C64::new(2.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_matrix(3, &mut rng);
        assert!(c.kron(&m).sub(&m.scale(C64::new(2.0, 1.0))).max_abs() < 1e-15);
    }

    #[test]
    fn eigen_recovers_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3, 5, 8] {
            let m = random_matrix(n, &mut rng);
            let h = m.add(&m.adjoint());
            let (vals, v) = h.hermitian_eigen();
            // H V = V diag(vals)
            let hv = h.matmul(&v);
            let vd = v.matmul(&ComplexMatrix::from_fn(n, n, |i, j| {
                if i == j { C64::new(vals[i], 0.0) } else { C64::new(0.0, 0.0) }
            }));
            assert!(hv.sub(&vd).max_abs() < 1e-10, "n={n}");
            let vv = v.adjoint().matmul(&v);
            assert!(vv.sub(&ComplexMatrix::identity(n)).max_abs() < 1e-11);
        }
    }

    #[test]
    fn trace_and_spectral_norms() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                C64::new(if i == 0 { 3.0 } else { -4.0 }, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!((m.trace_norm() - 7.0).abs() < 1e-10);
        assert!((m.spectral_norm() - 4.0).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_matrix(4, &mut rng);
        let h = random_matrix(4, &mut rng);
        let u = h.sub(&h.adjoint()).expm(1e-13); // exp of skew-Hermitian is unitary
        let t1 = m.trace_norm();
        let t2 = u.matmul(&m).trace_norm();
        assert!((t1 - t2).abs() < 1e-9);
    }

    #[test]
    fn expm_basics() {
        let z = ComplexMatrix::zeros(3, 3);
        assert!(z.expm(1e-12).sub(&ComplexMatrix::identity(3)).max_abs() < 1e-14);
        // expm(−iπX/2) = −iX
        let x = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i != j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        });
        let e = x.scale(C64::new(0.0, -std::f64::consts::FRAC_PI_2)).expm(1e-13);
        let target = x.scale(C64::new(0.0, -1.0));
        assert!(e.sub(&target).max_abs() < 1e-12);
        // diagonal case
        let d = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j { C64::new(i as f64 + 0.5, -0.3) } else { C64::new(0.0, 0.0) }
        });
        let ed = d.expm(1e-13);
        for i in 0..2 {
            let want = d[(i, i)].exp();
            assert!((ed[(i, i)] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn expm_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(4, &mut rng);
        let prod = m.expm(1e-12).matmul(&m.scale_re(-1.0).expm(1e-12));
        assert!(prod.sub(&ComplexMatrix::identity(4)).max_abs() < 1e-9);
    }

    #[test]
    fn partial_trace_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = {
            let m = random_matrix(2, &mut rng);
            m.matmul(&m.adjoint())
        };
        let sigma = {
            let m = random_matrix(3, &mut rng);
            m.matmul(&m.adjoint())
        };
        let joint = rho.kron(&sigma);
        let red = joint.partial_trace(&[2, 3], &[0]);
        let want = rho.scale(sigma.trace());
        assert!(red.sub(&want).max_abs() < 1e-12);
        // trace everything
        let all = joint.partial_trace(&[2, 3], &[]);
        assert!((all[(0, 0)] - joint.trace()).norm() < 1e-12);
        // Bell state
        let bell = StateVector::new(vec![
            C64::new(1.0 / 2f64.sqrt(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0 / 2f64.sqrt(), 0.0),
        ]);
        let red = bell.projector().partial_trace(&[2, 2], &[0]);
        assert!(red.sub(&ComplexMatrix::identity(2).scale_re(0.5)).max_abs() < 1e-12);
        // trace preservation
        let red = joint.partial_trace(&[2, 3], &[1]);
        assert!((red.trace() - joint.trace()).norm() < 1e-12);
    }

    #[test]
    fn householder_first_column() {
        let e0 = StateVector::basis(4, 0);
        let u = unitary_from_first_column(&e0);
        assert!(u.sub(&ComplexMatrix::identity(4)).max_abs() < 1e-12);

        let half = StateVector::new(vec![
            C64::new(1.0 / 2f64.sqrt(), 0.0),
            C64::new(1.0 / 2f64.sqrt(), 0.0),
        ]);
        let u = unitary_from_first_column(&half);
        assert!(u.adjoint().matmul(&u).sub(&ComplexMatrix::identity(2)).max_abs() < 1e-12);
        for i in 0..2 {
            assert!((u[(i, 0)] - half.amplitudes[i]).norm() < 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = StateVector::new(
            (0..8)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect(),
        )
        .normalized();
        let u = unitary_from_first_column(&v);
        assert!(u.adjoint().matmul(&u).sub(&ComplexMatrix::identity(8)).max_abs() < 1e-12);
        for i in 0..8 {
            assert!((u[(i, 0)] - v.amplitudes[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn slope_fit_powers() {
        let quad: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, (k * k) as f64)).collect();
        let (s, _) = slope_fit(&quad);
        assert!((s - 2.0).abs() < 1e-9);
        let flat: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 4.2)).collect();
        let (s, _) = slope_fit(&flat);
        assert!(s.abs() < 1e-9);
        let inv_sqrt: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 3.0 / (k as f64).sqrt())).collect();
        let (s, i) = slope_fit(&inv_sqrt);
        assert!((s + 0.5).abs() < 1e-9);
        assert!((i.exp() - 3.0).abs() < 1e-9);
    }
}
