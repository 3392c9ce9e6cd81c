//! Dense complex linear algebra: matrices, state vectors, partial traces and
//! a cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Subsystem indexing is mixed-radix with subsystem 0 as the most significant
//! digit, so `|s_0 s_1 ... s_{n-1}>` lives at `((s_0 * d_1 + s_1) * d_2 + ...)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest Hilbert-space dimension (product of subsystem dimensions) accepted.
pub const DIM_CAP: usize = 1 << 20;

/// Largest number of stored entries in a dense matrix.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 24;

const HERMITIAN_TOL: f64 = 1e-10;
const NEG_EIG_TOL: f64 = 1e-8;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// `|v><v|` for an arbitrary (not necessarily normalized) vector.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(M^2)` for a Hermitian matrix, i.e. the sum of squared moduli.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    fn hermitized(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Pure state on a register of subsystems with the given local dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl StateVector {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let total = checked_dim(&dims)?;
        if amps.len() != total {
            return Err(Error::shape(format!(
                "{} amplitudes for dimensions {dims:?} (expected {total})",
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Validation(format!(
                "state vector squared norm {norm} differs from 1"
            )));
        }
        Ok(StateVector { dims, amps })
    }

    /// Rescales `amps` to unit norm before constructing.
    pub fn normalized(dims: Vec<usize>, mut amps: Vec<C64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Validation("zero vector cannot be normalized".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(dims, amps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn projector(&self) -> Result<ComplexMatrix> {
        let n = self.amps.len();
        if n.saturating_mul(n) > MAX_MATRIX_ENTRIES {
            return Err(Error::Size {
                what: "projector entries",
                got: n.saturating_mul(n),
                cap: MAX_MATRIX_ENTRIES,
            });
        }
        Ok(ComplexMatrix::outer(&self.amps))
    }
}

/// Eigenpairs of a Hermitian matrix, values ascending, eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }

    /// `V diag(f(values)) V^dagger`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn column(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn checked_dim(dims: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &d in dims {
        if d == 0 {
            return Err(Error::shape("subsystem of dimension 0"));
        }
        total = total.checked_mul(d).ok_or(Error::Size {
            what: "dimension product",
            got: usize::MAX,
            cap: DIM_CAP,
        })?;
        if total > DIM_CAP {
            return Err(Error::Size {
                what: "dimension product",
                got: total,
                cap: DIM_CAP,
            });
        }
    }
    Ok(total)
}

/// Tensor product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DIM_CAP)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    let side = rows.max(cols);
    if side > cap {
        return Err(Error::Size {
            what: "kron dimension",
            got: side,
            cap,
        });
    }
    if rows.saturating_mul(cols) > MAX_MATRIX_ENTRIES {
        return Err(Error::Size {
            what: "kron entries",
            got: rows.saturating_mul(cols),
            cap: MAX_MATRIX_ENTRIES,
        });
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
    }))
}

/// Splits every full basis index into (kept index, traced index).
struct IndexSplit {
    kept: Vec<usize>,
    traced: Vec<usize>,
    kept_dim: usize,
    traced_dim: usize,
}

fn split_indices(dims: &[usize], keep: &[usize]) -> Result<IndexSplit> {
    let total = checked_dim(dims)?;
    let mut is_kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::shape(format!(
                "subsystem {k} out of range for {} subsystems",
                dims.len()
            )));
        }
        is_kept[k] = true;
    }
    let kept_dim: usize = dims.iter().zip(&is_kept).filter(|(_, &k)| k).map(|(d, _)| d).product();
    let traced_dim = total / kept_dim;
    let mut kept = vec![0; total];
    let mut traced = vec![0; total];
    let mut digits = vec![0usize; dims.len()];
    for idx in 0..total {
        let (mut ki, mut ti) = (0, 0);
        for (s, &d) in dims.iter().enumerate() {
            if is_kept[s] {
                ki = ki * d + digits[s];
            } else {
                ti = ti * d + digits[s];
            }
        }
        kept[idx] = ki;
        traced[idx] = ti;
        // increment the mixed-radix counter, last subsystem fastest
        for s in (0..dims.len()).rev() {
            digits[s] += 1;
            if digits[s] < dims[s] {
                break;
            }
            digits[s] = 0;
        }
    }
    Ok(IndexSplit {
        kept,
        traced,
        kept_dim,
        traced_dim,
    })
}

fn check_reduced_size(kept_dim: usize) -> Result<()> {
    if kept_dim.saturating_mul(kept_dim) > MAX_MATRIX_ENTRIES {
        return Err(Error::Size {
            what: "reduced matrix entries",
            got: kept_dim.saturating_mul(kept_dim),
            cap: MAX_MATRIX_ENTRIES,
        });
    }
    Ok(())
}

/// Partial trace of `rho` over every subsystem not listed in `keep`.
///
/// The kept subsystems stay in their original order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total = checked_dim(dims)?;
    if !rho.is_square() || rho.rows() != total {
        return Err(Error::shape(format!(
            "{}x{} matrix for dimensions {dims:?}",
            rho.rows(),
            rho.cols()
        )));
    }
    let split = split_indices(dims, keep)?;
    check_reduced_size(split.kept_dim)?;
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); split.traced_dim];
    for full in 0..total {
        groups[split.traced[full]].push((split.kept[full], full));
    }
    let mut out = ComplexMatrix::zeros(split.kept_dim, split.kept_dim);
    for group in &groups {
        for &(ki, fi) in group {
            for &(kj, fj) in group {
                out[(ki, kj)] += rho[(fi, fj)];
            }
        }
    }
    Ok(out)
}

/// Reduced density matrix of the (possibly unnormalized) pure vector `amps`.
///
/// Equivalent to `partial_trace(|amps><amps|, dims, keep)` without forming
/// the full projector.
pub fn reduce_pure(amps: &[C64], dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total = checked_dim(dims)?;
    if amps.len() != total {
        return Err(Error::shape(format!(
            "{} amplitudes for dimensions {dims:?}",
            amps.len()
        )));
    }
    let split = split_indices(dims, keep)?;
    check_reduced_size(split.kept_dim)?;
    // psi as a kept_dim x traced_dim matrix; rho = Psi Psi^dagger
    let mut psi = vec![ZERO; total];
    for full in 0..total {
        psi[split.kept[full] * split.traced_dim + split.traced[full]] = amps[full];
    }
    let (kd, td) = (split.kept_dim, split.traced_dim);
    let mut out = ComplexMatrix::zeros(kd, kd);
    for i in 0..kd {
        let ri = &psi[i * td..(i + 1) * td];
        for j in i..kd {
            let rj = &psi[j * td..(j + 1) * td];
            let z: C64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    Ok(out)
}

/// `(Tr rho_A)^2 - Tr rho_A^2` of an unnormalized pure state, summed from the
/// 2x2 minors of the amplitude matrix. Unlike the purity route this keeps full
/// relative accuracy near product states, where the square root of the
/// result would otherwise amplify roundoff to about `1e-8`.
pub fn pure_minor_entropy(amps: &[C64], dims: &[usize], keep: &[usize]) -> Result<f64> {
    let total = checked_dim(dims)?;
    if amps.len() != total {
        return Err(Error::shape(format!(
            "{} amplitudes for dimensions {dims:?}",
            amps.len()
        )));
    }
    let split = split_indices(dims, keep)?;
    let (kd, td) = (split.kept_dim, split.traced_dim);
    let mut psi = vec![ZERO; total];
    for full in 0..total {
        psi[split.kept[full] * td + split.traced[full]] = amps[full];
    }
    let mut sum = 0.0;
    for i in 0..kd {
        for k in i + 1..kd {
            let (ri, rk) = (&psi[i * td..(i + 1) * td], &psi[k * td..(k + 1) * td]);
            for j in 0..td {
                for l in j + 1..td {
                    sum += (ri[j] * rk[l] - ri[l] * rk[j]).norm_sqr();
                }
            }
        }
    }
    Ok(2.0 * sum)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::shape(format!(
            "eigendecomposition of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::domain(format!(
            "matrix is not Hermitian (max |H - H^dagger| = {defect:.3e})"
        )));
    }
    let n = h.rows();
    let mut a = h.hermitized();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.purity().sqrt().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Unitary `[J_pp, J_qp, J_pq, J_qq]` that diagonalizes the Hermitian 2x2
/// block `[[app, apq], [conj(apq), aqq]]` as `J^dagger A J`.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> Option<[C64; 4]> {
    let g = apq.norm();
    if g < 1e-300 {
        return None;
    }
    let phase_c = (apq / g).conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    Some([C64::new(c, 0.0), -phase_c * s, C64::new(s, 0.0), phase_c * c])
}

/// Right-multiplies columns `p`, `q` of `m` by the rotation.
fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, [jpp, jqp, jpq, jqq]: [C64; 4]) {
    for k in 0..m.rows() {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * jpp + mkq * jqp;
        m[(k, q)] = mkp * jpq + mkq * jqq;
    }
}

/// One Jacobi rotation zeroing `a[p][q]`; accumulates the rotation into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let Some(j) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, a[(p, q)]) else {
        return;
    };
    let [jpp, jqp, jpq, jqq] = j;
    rotate_columns(a, p, q, j);
    for k in 0..a.cols() {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    rotate_columns(v, p, q, j);
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Small singular values come out with absolute accuracy near machine
/// epsilon times the largest one, unlike square roots of Gram eigenvalues.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut b = m.clone();
    let n = b.cols();
    let col_dot = |b: &ComplexMatrix, p: usize, q: usize| -> C64 {
        (0..b.rows()).map(|k| b[(k, p)].conj() * b[(k, q)]).sum()
    };
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = col_dot(&b, p, p).re;
                let beta = col_dot(&b, q, q).re;
                let gamma = col_dot(&b, p, q);
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                if let Some(j) = jacobi_rotation(alpha, beta, gamma) {
                    rotate_columns(&mut b, p, q, j);
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|p| col_dot(&b, p, p).re.max(0.0).sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues down to `-1e-8` are treated as roundoff and clamped to zero.
pub fn psd_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(rho)?;
    if let Some(&min) = eig.values.first() {
        if min < -NEG_EIG_TOL {
            return Err(Error::domain(format!(
                "matrix is not positive semidefinite (eigenvalue {min:.3e})"
            )));
        }
    }
    // eigenvalues at roundoff level are zero; their square roots would not be
    let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 64.0 * f64::EPSILON * scale;
    Ok(eig.map_values(|x| if x <= floor { 0.0 } else { x.sqrt() }))
}

/// `sigma_y (x) sigma_y`, real anti-diagonal `(-1, 1, 1, -1)`.
pub fn sigma_yy() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 3)] = -ONE;
    m[(1, 2)] = ONE;
    m[(2, 1)] = ONE;
    m[(3, 0)] = -ONE;
    m
}

fn check_two_qubit_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::domain(format!(
            "two-qubit density matrix expected, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::domain(format!("density matrix trace is {tr}")));
    }
    Ok(())
}

/// Descending eigenvalues of `sqrt(sqrt(rho) rho_tilde sqrt(rho))` for a
/// two-qubit density matrix, where `rho_tilde` is the spin-flipped state.
///
/// With `R = sqrt(rho)` and `Y = sigma_y (x) sigma_y`, `sqrt(rho_tilde) =
/// Y conj(R) Y`, so the values are the singular values of `R^T Y R`. Eigenvalues
/// of `rho` below `1e-13` are treated as exact zeros before taking the root.
pub fn wootters_lambdas(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    check_two_qubit_density(rho)?;
    let eig = hermitian_eig(rho)?;
    if eig.values[0] < -NEG_EIG_TOL {
        return Err(Error::domain(format!(
            "density matrix has negative eigenvalue {:.3e}",
            eig.values[0]
        )));
    }
    let root = eig.map_values(|x| if x < 1e-13 { 0.0 } else { x.sqrt() });
    let yy = sigma_yy();
    let b = root.conj().adjoint().matmul(&yy)?.matmul(&root)?;
    let sv = singular_values(&b);
    let mut zeta = [0.0; 4];
    zeta.copy_from_slice(&sv);
    Ok(zeta)
}

/// Same quantity as [`wootters_lambdas`], computed literally as square roots of
/// the eigenvalues of the Hermitian product `sqrt(rho) rho_tilde sqrt(rho)`.
///
/// Less accurate for rank-deficient states (roundoff of order `1e-16` in a zero
/// eigenvalue becomes `1e-8` after the root); kept as an independent route.
pub fn wootters_lambdas_hermitian(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    check_two_qubit_density(rho)?;
    let yy = sigma_yy();
    let flipped = yy.matmul(&rho.conj())?.matmul(&yy)?;
    let root = psd_sqrt(rho)?;
    let m = root.matmul(&flipped)?.matmul(&root)?.hermitized();
    let eig = hermitian_eig(&m)?;
    let mut zeta = [0.0; 4];
    for (z, &mu) in zeta.iter_mut().zip(eig.values.iter().rev()) {
        *z = mu.max(0.0).sqrt();
    }
    Ok(zeta)
}
