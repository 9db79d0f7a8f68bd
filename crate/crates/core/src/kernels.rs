//! Dense linear-algebra kernels: the minimal right singular vector of a tall
//! matrix and the finite eigenvalues of the arrowhead pencil whose spectrum
//! holds the zeros of a barycentric sum.
//!
//! Both kernels switch to real arithmetic when every input has a zero
//! imaginary part, so real problems produce exactly-real results and exact
//! conjugate pairs.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative step size below which a root whose Newton-Aberth steps have
/// stopped shrinking is taken to have reached its rounding floor.
const STALL: f64 = 1e-9;

/// Eigenvalues of magnitude above this are treated as infinite.
pub const INFINITE_EIGENVALUE_CUTOFF: f64 = 1e14;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(|z| z.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Unit vector `w` minimizing `‖A w‖₂`: the right singular vector belonging
/// to the smallest singular value.
///
/// The phase is fixed so that the first entry of largest modulus is real and
/// positive.
pub fn min_singular_vector(a: &DenseMatrix) -> Result<Vec<Complex64>> {
    if a.cols == 0 || a.rows < a.cols {
        return Err(Error::InvalidMatrix(format!(
            "need rows >= cols >= 1, got {}x{}",
            a.rows, a.cols
        )));
    }
    if a.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }

    // every vector is optimal for a zero matrix; take the last basis vector,
    // which is what an SVD returning V = I would give
    if a.data.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        let mut w = vec![Complex64::new(0.0, 0.0); a.cols];
        w[a.cols - 1] = Complex64::new(1.0, 0.0);
        return Ok(w);
    }

    let mut w: Vec<Complex64> = if a.is_real() {
        let m = Mat::<f64>::from_fn(a.rows, a.cols, |i, j| a.get(i, j).re);
        let svd = m
            .thin_svd()
            .map_err(|e| Error::KernelFailure(format!("SVD: {e:?}")))?;
        let k = argmin(svd.S().column_vector().iter().copied());
        let v = svd.V();
        (0..a.cols).map(|i| Complex64::new(v[(i, k)], 0.0)).collect()
    } else {
        let m = Mat::<Complex64>::from_fn(a.rows, a.cols, |i, j| a.get(i, j));
        let svd = m
            .thin_svd()
            .map_err(|e| Error::KernelFailure(format!("SVD: {e:?}")))?;
        let k = argmin(svd.S().column_vector().iter().map(|s| s.re));
        let v = svd.V();
        (0..a.cols).map(|i| v[(i, k)]).collect()
    };

    normalize_phase(&mut w);
    Ok(w)
}

fn argmin(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::INFINITY);
    for (k, s) in values.enumerate() {
        // ties go to the later index: faer sorts singular values nonincreasingly
        if s <= best.1 {
            best = (k, s);
        }
    }
    best.0
}

fn normalize_phase(w: &mut [Complex64]) {
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut pivot = 0;
    let mut pivot_abs = -1.0;
    for (k, z) in w.iter().enumerate() {
        if z.norm() > pivot_abs {
            pivot = k;
            pivot_abs = z.norm();
        }
    }
    if pivot_abs <= 0.0 || norm == 0.0 {
        return;
    }
    let pz = w[pivot];
    let rot = if pz.im == 0.0 {
        Complex64::new(pz.re.signum() / norm, 0.0)
    } else {
        pz.conj() / (pivot_abs * norm)
    };
    for z in w.iter_mut() {
        *z *= rot;
    }
    w[pivot].im = 0.0;
}

/// Finite eigenvalues of the `(m+1)×(m+1)` arrowhead pencil
///
/// ```text
/// B = [ 0  top_row ]      E = [ 0  0 ]
///     [ 1  diag(d) ]          [ 0  I ]
/// ```
///
/// which are the roots of `Σ top_row[j] / (x - d[j]) = 0`.
///
/// The pencil is the bordered problem `x u = D u + 1 c`, `top_rowᵀ u = 0`.
/// Its infinite eigenvalues are removed exactly: a Householder reflector maps
/// the constraint onto the first coordinate, the first equation is solved
/// for `c`, and the finite spectrum is that of the remaining
/// `(m-1)×(m-1)` matrix, computed by a standard Hessenberg QR eigensolver
/// and then polished against the sum itself.
/// When the border is (numerically) orthogonal to the constraint the degree
/// drops and the reduction is repeated on the smaller bordered problem.
pub fn arrowhead_pencil_eigenvalues(
    diag: &[Complex64],
    top_row: &[Complex64],
) -> Result<Vec<Complex64>> {
    let m = diag.len();
    if top_row.len() != m {
        return Err(Error::InvalidMatrix(format!(
            "diag has {m} entries, top row {}",
            top_row.len()
        )));
    }
    if m < 2 {
        return Err(Error::InvalidMatrix("pencil needs m >= 2".into()));
    }
    let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
    if !diag.iter().all(finite) || !top_row.iter().all(finite) {
        return Err(Error::InvalidMatrix("non-finite pencil entry".into()));
    }

    let zero = Complex64::new(0.0, 0.0);
    let mut a = Square::from_fn(m, |i, j| if i == j { diag[i] } else { zero });
    let mut b = vec![Complex64::new(1.0, 0.0); m];
    let mut g = top_row.to_vec();
    let reduced = loop {
        let n = b.len();
        if n <= 1 {
            return Ok(Vec::new());
        }
        let Some(h) = Householder::annihilating(&g) else {
            // no constraint left: degenerate sum, nothing meaningful to report
            return Ok(Vec::new());
        };
        h.apply_both_sides(&mut a);
        h.apply(&mut b);
        let pivot = b[0];
        let b_norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let row: Vec<Complex64> = (1..n).map(|j| a.get(0, j)).collect();
        if pivot.norm() > f64::EPSILON * b_norm {
            break Square::from_fn(n - 1, |i, j| {
                a.get(i + 1, j + 1) - b[i + 1] * row[j] / pivot
            });
        }
        // the border is orthogonal to the constraint: one more infinite
        // eigenvalue, and the first row becomes the new constraint
        a = Square::from_fn(n - 1, |i, j| a.get(i + 1, j + 1));
        b.remove(0);
        g = row;
    };

    let values: Vec<Complex64> = reduced
        .eigenvalues()?
        .into_iter()
        .filter(|z| finite(z) && z.norm() <= INFINITE_EIGENVALUE_CUTOFF)
        .collect();
    Ok(polish(values, diag, top_row))
}

/// Simultaneous (Aberth) refinement of the roots of `Σ t_j / (x - d_j)`.
///
/// The reduced eigenproblem is only accurate to `eps·‖M‖` in absolute terms,
/// which scrambles roots packed against a diagonal entry (branch points on the
/// boundary produce such geometric clusters). The roots are those of the
/// numerator polynomial `n(x) = Σ t_j Π_{i≠j} (x - d_i)`, whose logarithmic
/// derivative is evaluated with the term of the nearest diagonal entry
/// multiplied out, which keeps it accurate right up to that entry. Aberth's
/// repulsion term keeps clustered roots apart. If the iteration produces
/// anything non-finite the unpolished values are returned.
fn polish(values: Vec<Complex64>, diag: &[Complex64], top_row: &[Complex64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    // n'/n at x, or None when x sits on a diagonal entry.
    let log_derivative = |x: Complex64| -> Option<Complex64> {
        let near = (0..diag.len()).min_by(|&a, &b| (diag[a] - x).norm().total_cmp(&(diag[b] - x).norm()))?;
        let h = x - diag[near];
        if h == zero {
            return None;
        }
        let (mut sum, mut slope, mut poles) = (zero, zero, zero);
        for (j, (d, t)) in diag.iter().zip(top_row).enumerate() {
            if j != near {
                let c = (x - d).inv();
                sum += t * c;
                slope -= t * c * c;
                poles += c;
            }
        }
        // q(x) = t_near + h·sum = n(x) / Π_{j≠near}(x - d_j)
        let q = top_row[near] + h * sum;
        let dq = sum + h * slope;
        (q != zero).then(|| dq / q + poles)
    };
    let mut x = values.clone();
    let mut done = vec![false; x.len()];
    let mut last_step = vec![f64::INFINITY; x.len()];
    for _ in 0..100 {
        let mut next = x.clone();
        for k in 0..x.len() {
            if done[k] {
                continue;
            }
            let Some(ratio) = log_derivative(x[k]) else {
                done[k] = true;
                continue;
            };
            let repulsion: Complex64 = x
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, xi)| (x[k] - xi).inv())
                .sum();
            let newton = ratio.inv();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            next[k] = x[k] - step;
            let size = step.norm();
            // converged, or stalled at the rounding floor of the evaluation
            if size <= 4.0 * f64::EPSILON * x[k].norm() || (size >= 0.5 * last_step[k] && size <= STALL * x[k].norm()) {
                done[k] = true;
            }
            last_step[k] = size;
        }
        if next.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return values;
        }
        x = next;
        if done.iter().all(|&d| d) {
            break;
        }
    }
    x
}

/// Row-major square complex matrix used by the pencil reduction.
struct Square {
    n: usize,
    data: Vec<Complex64>,
}

impl Square {
    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let n = self.n;
        if n == 0 {
            return Ok(Vec::new());
        }
        let fail = |e| Error::KernelFailure(format!("eigenvalues: {e:?}"));
        if self.data.iter().all(|z| z.im == 0.0) {
            Mat::<f64>::from_fn(n, n, |i, j| self.get(i, j).re)
                .eigenvalues()
                .map_err(fail)
        } else {
            Mat::<Complex64>::from_fn(n, n, |i, j| self.get(i, j))
                .eigenvalues()
                .map_err(fail)
        }
    }
}

/// Reflector `H = I - τ v vᴴ` with `H conj(g) ∝ e₁`, so that `gᵀ H y = 0`
/// exactly when `y₁ = 0`. Real input gives a real reflector.
struct Householder {
    v: Vec<Complex64>,
    tau: f64,
}

impl Householder {
    fn annihilating(g: &[Complex64]) -> Option<Self> {
        let mut v: Vec<Complex64> = g.iter().map(|z| z.conj()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        let phase = if v[0].im == 0.0 {
            Complex64::new(if v[0].re < 0.0 { -1.0 } else { 1.0 }, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        v[0] += phase * norm;
        let vv = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        Some(Self { v, tau: 2.0 / vv })
    }

    /// `x ← H x`.
    fn apply(&self, x: &mut [Complex64]) {
        let dot: Complex64 = self.v.iter().zip(x.iter()).map(|(v, x)| v.conj() * x).sum();
        let k = dot * self.tau;
        for (x, v) in x.iter_mut().zip(&self.v) {
            *x -= v * k;
        }
    }

    /// `A ← H A H` (`H` is Hermitian and unitary).
    fn apply_both_sides(&self, a: &mut Square) {
        let n = a.n;
        // H A: every column gets the reflector
        for j in 0..n {
            let dot: Complex64 = (0..n).map(|i| self.v[i].conj() * a.data[i * n + j]).sum();
            let k = dot * self.tau;
            for i in 0..n {
                a.data[i * n + j] -= self.v[i] * k;
            }
        }
        // (H A) H: every row gets it from the right
        for i in 0..n {
            let row = &mut a.data[i * n..(i + 1) * n];
            let dot: Complex64 = row.iter().zip(&self.v).map(|(x, v)| x * v).sum();
            let k = dot * self.tau;
            for (x, v) in row.iter_mut().zip(&self.v) {
                *x -= k * v.conj();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn all_ones_has_antisymmetric_null_vector() {
        let a = DenseMatrix::from_fn(5, 2, |_, _| c(1.0));
        let w = min_singular_vector(&a).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w[0] - c(s)).norm() < 1e-15, "{w:?}");
        assert!((w[1] + c(s)).norm() < 1e-15, "{w:?}");
    }

    #[test]
    fn single_column_gives_unit_scalar() {
        let a = DenseMatrix::from_real_rows(&[&[1.0], &[2.0], &[3.0]]).unwrap();
        let w = min_singular_vector(&a).unwrap();
        assert_eq!(w.len(), 1);
        assert!((w[0] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_picks_smaller_singular_value() {
        let a = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        let w = min_singular_vector(&a).unwrap();
        assert!((w[0] - c(1.0)).norm() < 1e-15 && w[1].norm() < 1e-15, "{w:?}");
    }

    #[test]
    fn complex_phase_is_normalized() {
        let i = Complex64::i();
        let a = DenseMatrix::from_fn(4, 2, |r, j| if j == 0 { c(1.0 + r as f64) } else { i * (1.0 + r as f64) });
        let w = min_singular_vector(&a).unwrap();
        let av = a.mul_vec(&w);
        assert!(av.iter().all(|z| z.norm() < 1e-13));
        let k = if w[0].norm() >= w[1].norm() { 0 } else { 1 };
        assert!(w[k].re > 0.0 && w[k].im == 0.0);
    }

    #[test]
    fn rejects_wide_and_nonfinite() {
        let wide = DenseMatrix::from_fn(1, 2, |_, _| c(1.0));
        assert!(matches!(min_singular_vector(&wide), Err(Error::InvalidMatrix(_))));
        let bad = DenseMatrix::from_fn(2, 1, |i, _| c(if i == 0 { f64::NAN } else { 1.0 }));
        assert!(matches!(min_singular_vector(&bad), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn arrowhead_single_zero() {
        let ev = arrowhead_pencil_eigenvalues(&[c(-1.0), c(1.0)], &[c(1.0), c(1.0)]).unwrap();
        assert_eq!(ev.len(), 1, "{ev:?}");
        assert!(ev[0].norm() < 1e-14);
    }

    #[test]
    fn arrowhead_no_finite_zeros() {
        let ev = arrowhead_pencil_eigenvalues(&[c(-1.0), c(1.0)], &[c(1.0), c(-1.0)]).unwrap();
        assert!(ev.is_empty(), "{ev:?}");
    }

    #[test]
    fn arrowhead_midpoint_zero() {
        let ev = arrowhead_pencil_eigenvalues(&[c(0.0), c(2.0)], &[c(1.0), c(1.0)]).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn arrowhead_complex_input() {
        // 1/(x-i) + 1/(x+i) = 2x/(x^2+1) has its zero at 0
        let i = Complex64::i();
        let ev = arrowhead_pencil_eigenvalues(&[i, -i], &[c(1.0), c(1.0) + 0.0 * i]).unwrap();
        assert_eq!(ev.len(), 1);
        assert!(ev[0].norm() < 1e-14);
        // 1/(x-i) + 2/(x+1): zero at (i*2... ) -> x + 1 + 2x - 2i = 0 -> x = (2i - 1)/3
        let ev = arrowhead_pencil_eigenvalues(&[i, c(-1.0)], &[c(1.0), Complex64::new(2.0, 1e-300)]).unwrap();
        let expected = Complex64::new(-1.0 / 3.0, 2.0 / 3.0);
        assert_eq!(sorted_re(ev.clone()).len(), 1);
        assert!((ev[0] - expected).norm() < 1e-14, "{ev:?}");
    }

    #[test]
    fn arrowhead_resolves_geometric_cluster() {
        // diagonal entries crowding 1 from above, roots interlaced between
        // them; the border is the partial-fraction expansion of
        // Π(x - r) / Π(x - d), so the roots are known exactly
        let d: Vec<f64> = (0..14).map(|j| 1.0 + 0.1f64.powi(j)).collect();
        let r: Vec<f64> = (0..13).map(|j| 1.0 + 0.5 * 0.1f64.powi(j) + 0.5 * 0.1f64.powi(j + 1)).collect();
        let top: Vec<Complex64> = (0..d.len())
            .map(|j| {
                let num: f64 = r.iter().map(|ri| d[j] - ri).product();
                let den: f64 = (0..d.len()).filter(|&i| i != j).map(|i| d[j] - d[i]).product();
                c(num / den)
            })
            .collect();
        let diag: Vec<Complex64> = d.iter().map(|&x| c(x)).collect();
        let got = sorted_re(arrowhead_pencil_eigenvalues(&diag, &top).unwrap());
        assert_eq!(got.len(), r.len());
        let mut want = r.clone();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            // accuracy relative to the distance from the cluster point
            assert!((g - c(*w)).norm() <= 1e-9 * (w - 1.0), "{g} vs {w}");
        }
    }

    #[test]
    fn arrowhead_rejects_short_input() {
        assert!(arrowhead_pencil_eigenvalues(&[c(0.0)], &[c(1.0)]).is_err());
        assert!(arrowhead_pencil_eigenvalues(&[c(0.0), c(1.0)], &[c(1.0)]).is_err());
    }
}
