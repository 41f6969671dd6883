//! Dense complex linear algebra used throughout the crate.
//!
//! Rank decisions are relative: a singular value counts as zero when it is
//! below `tol_rank` times the largest singular value of the matrix.

use nalgebra::{Complex, DMatrix, DVector, Schur, SymmetricEigen, SVD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::weights::WeightVector;

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff for rank decisions.
    pub tol_rank: f64,
    /// Bound on the orthoscalar residual of an accepted certificate.
    pub tol_residual: f64,
    /// Eigenvalue clustering radius (relative to the matrix norm).
    pub tol_eig: f64,
    pub tol_pd: f64,
    pub tol_hermitian: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_rank: 1e-9,
            tol_residual: 1e-8,
            tol_eig: 1e-7,
            tol_pd: 1e-12,
            tol_hermitian: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("tol_rank", self.tol_rank),
            ("tol_residual", self.tol_residual),
            ("tol_eig", self.tol_eig),
            ("tol_pd", self.tol_pd),
            ("tol_hermitian", self.tol_hermitian),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v}")));
            }
        }
        Ok(())
    }

    pub fn with_residual(mut self, tol_residual: f64) -> Self {
        self.tol_residual = tol_residual;
        self
    }
}

pub fn is_finite_matrix(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(m: &ComplexMatrix, what: &'static str) -> Result<()> {
    if is_finite_matrix(m) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Full SVD of `m` padded with zero rows to at least square shape, so that
/// the returned right singular vectors span the whole domain.
fn padded_svd(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let (rows, cols) = m.shape();
    let padded = if rows < cols {
        let mut p = ComplexMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    (svd.singular_values.iter().copied().collect(), v_t)
}

fn rank_cutoff(singular_values: &[f64], tol_rank: f64) -> f64 {
    let largest = singular_values.iter().copied().fold(0.0, f64::max);
    tol_rank * largest
}

/// Orthonormal basis of the numerical null space of `m`.
pub fn kernel_basis(m: &ComplexMatrix, tol: &ToleranceConfig) -> Vec<ComplexVector> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols).map(|j| unit_vector(cols, j)).collect();
    }
    let (sv, v_t) = padded_svd(m);
    let cutoff = rank_cutoff(&sv, tol.tol_rank);
    let largest = sv.iter().copied().fold(0.0, f64::max);
    sv.iter()
        .enumerate()
        .filter(|&(_, &s)| largest == 0.0 || s <= cutoff)
        .map(|(j, _)| v_t.row(j).adjoint())
        .collect()
}

/// Numerical rank with the relative cutoff.
pub fn numerical_rank(m: &ComplexMatrix, tol: &ToleranceConfig) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv: Vec<f64> = m.singular_values().iter().copied().collect();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    let cutoff = rank_cutoff(&sv, tol.tol_rank);
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis (standard inner product) of the column space of `m`.
pub fn column_space(m: &ComplexMatrix, tol: &ToleranceConfig) -> ComplexMatrix {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return ComplexMatrix::zeros(n, 0);
    }
    let svd = SVD::new(m.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return ComplexMatrix::zeros(n, 0);
    }
    let cutoff = rank_cutoff(&sv, tol.tol_rank);
    let keep: Vec<usize> = (0..sv.len()).filter(|&j| sv[j] > cutoff).collect();
    ComplexMatrix::from_fn(n, keep.len(), |i, k| u[(i, keep[k])])
}

pub fn unit_vector(n: usize, j: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[j] = c64(1.0, 0.0);
    v
}

pub fn columns_to_matrix(n: usize, vectors: &[ComplexVector]) -> ComplexMatrix {
    if vectors.is_empty() {
        return ComplexMatrix::zeros(n, 0);
    }
    ComplexMatrix::from_columns(vectors)
}

pub fn matrix_columns(m: &ComplexMatrix) -> Vec<ComplexVector> {
    m.column_iter().map(|c| c.into_owned()).collect()
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Hermitian positive-definite matrix defining `<u, v> = v* G u`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(ComplexMatrix);

impl GramMatrix {
    pub fn new(matrix: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidGram("not square".into()));
        }
        ensure_finite(&matrix, "Gram matrix")?;
        let skew = frobenius(&(&matrix - matrix.adjoint()));
        if skew > tol.tol_hermitian * frobenius(&matrix).max(1.0) {
            return Err(Error::InvalidGram(format!("not Hermitian (skew part {skew:e})")));
        }
        let hermitian = (&matrix + matrix.adjoint()).scale(0.5);
        if hermitian.nrows() > 0 {
            let smallest = SymmetricEigen::new(hermitian.clone())
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            if smallest <= tol.tol_pd {
                return Err(Error::InvalidGram(format!(
                    "not positive definite (smallest eigenvalue {smallest:e})"
                )));
            }
        }
        Ok(Self(hermitian))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n, n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inner(&self, u: &ComplexVector, v: &ComplexVector) -> C64 {
        (v.adjoint() * &self.0 * u)[(0, 0)]
    }

    /// Pull the inner product back along `r`: `<u, v>' = <r u, r v>`.
    pub fn pullback(&self, r: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        if r.nrows() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map has {} rows, Gram matrix has size {}",
                r.nrows(),
                self.dim()
            )));
        }
        Self::new(r.adjoint() * &self.0 * r, tol)
    }
}

/// Columns spanning `span(basis)` that are orthonormal for `g`.
pub fn g_orthonormal_basis(g: &GramMatrix, basis: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    if basis.ncols() == 0 {
        return Ok(ComplexMatrix::zeros(basis.nrows(), 0));
    }
    let small = basis.adjoint() * g.matrix() * basis;
    if numerical_rank(&small, tol) < basis.ncols() {
        return Err(Error::DependentBasis);
    }
    let small = (&small + small.adjoint()).scale(0.5);
    let chol = small.cholesky().ok_or(Error::DependentBasis)?;
    // basis * L^{-*}
    let l_adj = chol.l().adjoint();
    let inv = l_adj.try_inverse().ok_or(Error::DependentBasis)?;
    Ok(basis * inv)
}

/// Orthogonal projection onto `span(basis)` for the inner product `g`:
/// `P = B (B* G B)^{-1} B* G`.
pub fn g_projection(g: &GramMatrix, basis: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    let n = g.dim();
    if basis.nrows() != n {
        return Err(Error::ShapeMismatch(format!(
            "basis vectors have length {}, Gram matrix has size {n}",
            basis.nrows()
        )));
    }
    if basis.ncols() == 0 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let small = basis.adjoint() * g.matrix() * basis;
    if numerical_rank(&small, tol) < basis.ncols() {
        return Err(Error::DependentBasis);
    }
    let inv = small.try_inverse().ok_or(Error::DependentBasis)?;
    Ok(basis * inv * basis.adjoint() * g.matrix())
}

/// Frobenius norm of `Σ a_k P_k − a_0 I`.
pub fn residual_orthoscalar(projections: &[ComplexMatrix], character: &WeightVector<f64>) -> Result<f64> {
    if projections.len() != character.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} projections but character has {} tail entries",
            projections.len(),
            character.len()
        )));
    }
    let n = projections.first().map_or(0, |p| p.nrows());
    if projections.iter().any(|p| p.nrows() != n || p.ncols() != n) {
        return Err(Error::ShapeMismatch("projections differ in size".into()));
    }
    let mut acc = ComplexMatrix::identity(n, n).scale(-character.head);
    for (p, &a) in projections.iter().zip(&character.tail) {
        acc += p.scale(a);
    }
    Ok(frobenius(&acc))
}

/// Traces `tr(P_{i1} ... P_{ik})` over all words of length `1..=max_len`,
/// in lexicographic order of the index words. A similarity invariant of the
/// tuple, hence a unitary-equivalence fingerprint of orthoscalar systems.
pub fn word_trace_invariants(projections: &[ComplexMatrix], max_len: usize) -> Vec<C64> {
    let n = projections.len();
    let dim = projections.first().map_or(0, |p| p.nrows());
    let mut out = Vec::new();
    let mut layer: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(dim, dim)];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for prefix in &layer {
            for p in projections {
                let prod = prefix * p;
                out.push(prod.trace());
                next.push(prod);
            }
        }
        layer = next;
    }
    out
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &ComplexMatrix) -> Option<Vec<C64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000)?;
    schur.eigenvalues().map(|v| v.iter().copied().collect())
}

/// Number of single-linkage clusters of `values` at radius `radius`.
pub fn cluster_count(values: &[C64], radius: f64) -> usize {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian sample.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let qr = random_matrix(n, n, rng).qr();
    qr.q()
}

/// Random invertible matrix with condition number bounded by construction:
/// `U diag(s) V` with singular values in `[0.5, 2]`.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let v = random_unitary(n, rng);
    let s = ComplexMatrix::from_diagonal(&ComplexVector::from_fn(n, |_, _| c64(rng.random_range(0.5..2.0), 0.0)));
    u * s * v
}
