//! Systems of subspaces `L = (V; V1, ..., Vn)` and their linear-category
//! toolkit: Hom spaces, brick and indecomposability verdicts, isomorphism
//! search, direct sums and the operator quintuple construction.
//!
//! Subspaces are stored as basis matrices (columns span the subspace, an
//! empty column set is the zero subspace). Subspace order is significant.

use crate::error::{Error, Result};
use crate::numerics::{
    c64, cluster_count, column_space, eigenvalues, ensure_finite, frobenius, g_projection, kernel_basis, kron,
    numerical_rank, random_complex, seeded_rng, ComplexMatrix, GramMatrix, ToleranceConfig,
};
use crate::weights::WeightVector;

/// Attempts made by [`find_isomorphism`] before giving up.
pub const ISOMORPHISM_BUDGET: usize = 32;
/// Default number of random endomorphisms sampled by [`is_indecomposable`].
pub const DEFAULT_TRIALS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceSystem {
    ambient_dim: usize,
    subspaces: Vec<ComplexMatrix>,
    gram: Option<GramMatrix>,
}

impl SubspaceSystem {
    pub fn new(ambient_dim: usize, subspaces: Vec<ComplexMatrix>, tol: &ToleranceConfig) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::InvalidSystem("a system needs at least one subspace".into()));
        }
        for (i, b) in subspaces.iter().enumerate() {
            if b.nrows() != ambient_dim {
                return Err(Error::InvalidSystem(format!(
                    "subspace {} has vectors of length {}, expected {ambient_dim}",
                    i + 1,
                    b.nrows()
                )));
            }
            ensure_finite(b, "subspace basis")?;
            if b.ncols() > 0 && numerical_rank(b, tol) < b.ncols() {
                return Err(Error::InvalidSystem(format!(
                    "basis of subspace {} is linearly dependent",
                    i + 1
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            subspaces,
            gram: None,
        })
    }

    /// Convenience constructor from real basis vectors.
    pub fn from_real(ambient_dim: usize, subspaces: &[&[&[f64]]]) -> Result<Self> {
        let bases = subspaces
            .iter()
            .map(|vectors| real_basis(ambient_dim, vectors))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, bases, &ToleranceConfig::default())
    }

    pub fn with_gram(mut self, gram: GramMatrix) -> Result<Self> {
        if gram.dim() != self.ambient_dim {
            return Err(Error::InvalidGram(format!(
                "Gram matrix has size {}, ambient dimension is {}",
                gram.dim(),
                self.ambient_dim
            )));
        }
        self.gram = Some(gram);
        Ok(self)
    }

    pub fn without_gram(mut self) -> Self {
        self.gram = None;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn count(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspaces(&self) -> &[ComplexMatrix] {
        &self.subspaces
    }

    /// Basis matrix of subspace `i` (zero-based).
    pub fn basis(&self, i: usize) -> &ComplexMatrix {
        &self.subspaces[i]
    }

    pub fn gram(&self) -> Option<&GramMatrix> {
        self.gram.as_ref()
    }

    /// Projections onto the subspaces, orthogonal for the attached Gram
    /// matrix (or the standard inner product when none is attached).
    pub fn projections(&self, tol: &ToleranceConfig) -> Result<Vec<ComplexMatrix>> {
        let identity;
        let g = match &self.gram {
            Some(g) => g,
            None => {
                identity = GramMatrix::identity(self.ambient_dim);
                &identity
            }
        };
        self.subspaces.iter().map(|b| g_projection(g, b, tol)).collect()
    }

    /// Reorders subspaces: entry `k` of the result is subspace `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            subspaces: order.iter().map(|&i| self.subspaces[i].clone()).collect(),
            gram: self.gram.clone(),
        }
    }

    /// Image of the system under an invertible map `r` (new bases `r B_i`).
    /// Any attached Gram matrix is dropped.
    pub fn transformed(&self, r: &ComplexMatrix) -> Result<Self> {
        if r.ncols() != self.ambient_dim || !r.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "map is {}x{}, ambient dimension is {}",
                r.nrows(),
                r.ncols(),
                self.ambient_dim
            )));
        }
        let bases = self.subspaces.iter().map(|b| r * b).collect();
        Self::new(self.ambient_dim, bases, &ToleranceConfig::default())
    }
}

pub fn real_basis(ambient_dim: usize, vectors: &[&[f64]]) -> Result<ComplexMatrix> {
    if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
        return Err(Error::InvalidSystem(format!(
            "vector of length {} in a space of dimension {ambient_dim}",
            v.len()
        )));
    }
    Ok(ComplexMatrix::from_fn(ambient_dim, vectors.len(), |i, j| {
        c64(vectors[j][i], 0.0)
    }))
}

/// `(dim V; dim V1, ..., dim Vn)`.
pub fn dimension_vector(l: &SubspaceSystem) -> WeightVector<i64> {
    WeightVector {
        head: l.ambient_dim as i64,
        tail: l.subspaces.iter().map(|b| b.ncols() as i64).collect(),
    }
}

/// Basis of `Hom(L, M) = { R : R(V_i) ⊆ M_i for all i }`.
///
/// Each containment is the linear constraint `W_i* R B_i = 0` where `W_i` is
/// an orthonormal basis of the standard orthogonal complement of `M_i`
/// (equivalent to `(I − Π_i) R B_i = 0`). The constraints are vectorized
/// column-major and solved with [`kernel_basis`].
pub fn hom_space(l: &SubspaceSystem, m: &SubspaceSystem, tol: &ToleranceConfig) -> Result<Vec<ComplexMatrix>> {
    if l.count() != m.count() {
        return Err(Error::CountMismatch(l.count(), m.count()));
    }
    let (rows, cols) = (m.ambient_dim, l.ambient_dim);
    if rows == 0 || cols == 0 {
        return Ok(Vec::new());
    }
    let mut blocks = Vec::new();
    for (b, target) in l.subspaces.iter().zip(&m.subspaces) {
        if b.ncols() == 0 {
            continue;
        }
        let complement = orthogonal_complement(target, rows, tol);
        if complement.ncols() == 0 {
            continue;
        }
        blocks.push(kron(&b.transpose(), &complement.adjoint()));
    }
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut system = ComplexMatrix::zeros(total, rows * cols);
    let mut offset = 0;
    for block in &blocks {
        system
            .view_mut((offset, 0), (block.nrows(), block.ncols()))
            .copy_from(block);
        offset += block.nrows();
    }
    Ok(kernel_basis(&system, tol)
        .into_iter()
        .map(|v| ComplexMatrix::from_column_slice(rows, cols, v.as_slice()))
        .collect())
}

/// Orthonormal basis of the standard orthogonal complement of `span(basis)`.
pub fn orthogonal_complement(basis: &ComplexMatrix, n: usize, tol: &ToleranceConfig) -> ComplexMatrix {
    if basis.ncols() == 0 {
        return ComplexMatrix::identity(n, n);
    }
    let q = column_space(basis, tol);
    let k = kernel_basis(&q.adjoint(), tol);
    crate::numerics::columns_to_matrix(n, &k)
}

/// `End(L) = C·I`.
pub fn is_brick(l: &SubspaceSystem, tol: &ToleranceConfig) -> bool {
    l.ambient_dim >= 1 && hom_space(l, l, tol).map(|h| h.len() == 1).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indecomposability {
    Decomposable,
    ProbablyIndecomposable,
}

/// Randomized indecomposability test.
///
/// `End(L)` is local exactly when every element has a single eigenvalue, so a
/// random element with two eigenvalue clusters exhibits a nontrivial
/// idempotent (the spectral projection of one cluster). Bricks short-circuit.
pub fn is_indecomposable(l: &SubspaceSystem, trials: usize, seed: u64, tol: &ToleranceConfig) -> Indecomposability {
    let end = match hom_space(l, l, tol) {
        Ok(e) => e,
        Err(_) => return Indecomposability::Decomposable,
    };
    if end.len() <= 1 {
        return Indecomposability::ProbablyIndecomposable;
    }
    let n = l.ambient_dim;
    let mut rng = seeded_rng(seed);
    for _ in 0..trials.max(1) {
        let mut e = ComplexMatrix::zeros(n, n);
        for basis in &end {
            e += basis * random_complex(&mut rng);
        }
        let scale = frobenius(&e);
        if scale == 0.0 {
            continue;
        }
        let e = e.unscale(scale);
        if let Some(eig) = eigenvalues(&e) {
            if cluster_count(&eig, tol.tol_eig) >= 2 {
                return Indecomposability::Decomposable;
            }
        }
    }
    Indecomposability::ProbablyIndecomposable
}

/// Ratio `σ_min / σ_max` above which a random Hom element counts as invertible.
const INVERTIBILITY_RATIO: f64 = 1e-8;

/// Searches `Hom(L, M)` for an invertible element.
pub fn find_isomorphism(
    l: &SubspaceSystem,
    m: &SubspaceSystem,
    seed: u64,
    tol: &ToleranceConfig,
) -> Option<ComplexMatrix> {
    if dimension_vector(l) != dimension_vector(m) {
        return None;
    }
    let hom = hom_space(l, m, tol).ok()?;
    if hom.is_empty() {
        return None;
    }
    let n = l.ambient_dim;
    let mut rng = seeded_rng(seed);
    for attempt in 0..ISOMORPHISM_BUDGET {
        let r = if hom.len() == 1 && attempt == 0 {
            hom[0].clone()
        } else {
            let mut r = ComplexMatrix::zeros(n, n);
            for h in &hom {
                r += h * random_complex(&mut rng);
            }
            r
        };
        let sv = r.singular_values();
        let (lo, hi) = sv
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
        if hi > 0.0 && lo / hi > INVERTIBILITY_RATIO {
            return Some(r.unscale(hi));
        }
    }
    None
}

/// `L ⊕ M` with block-embedded bases.
pub fn direct_sum(l: &SubspaceSystem, m: &SubspaceSystem) -> Result<SubspaceSystem> {
    if l.count() != m.count() {
        return Err(Error::CountMismatch(l.count(), m.count()));
    }
    let (p, q) = (l.ambient_dim, m.ambient_dim);
    let bases = l
        .subspaces
        .iter()
        .zip(&m.subspaces)
        .map(|(a, b)| {
            let mut s = ComplexMatrix::zeros(p + q, a.ncols() + b.ncols());
            s.view_mut((0, 0), (p, a.ncols())).copy_from(a);
            s.view_mut((p, a.ncols()), (q, b.ncols())).copy_from(b);
            s
        })
        .collect();
    SubspaceSystem::new(p + q, bases, &ToleranceConfig::default())
}

/// `L_{A,B} = (E ⊕ E; (x,0), (0,x), (x,x), (x,Ax), (x,Bx))`.
pub fn operator_quintuple(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<SubspaceSystem> {
    if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "operators are {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let n = a.nrows();
    let id = ComplexMatrix::identity(n, n);
    let zero = ComplexMatrix::zeros(n, n);
    let graph = |top: &ComplexMatrix, bottom: &ComplexMatrix| {
        let mut s = ComplexMatrix::zeros(2 * n, n);
        s.view_mut((0, 0), (n, n)).copy_from(top);
        s.view_mut((n, 0), (n, n)).copy_from(bottom);
        s
    };
    let bases = vec![
        graph(&id, &zero),
        graph(&zero, &id),
        graph(&id, &id),
        graph(&id, a),
        graph(&id, b),
    ];
    SubspaceSystem::new(2 * n, bases, &ToleranceConfig::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    AddZero,
    AddFull,
    /// Append a copy of subspace `k` (one-based).
    DuplicateAt(usize),
}

pub fn extend_system(l: &SubspaceSystem, kind: Extension) -> Result<SubspaceSystem> {
    let n = l.ambient_dim;
    let extra = match kind {
        Extension::AddZero => ComplexMatrix::zeros(n, 0),
        Extension::AddFull => ComplexMatrix::identity(n, n),
        Extension::DuplicateAt(k) => {
            if k == 0 || k > l.count() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    count: l.count(),
                });
            }
            l.subspaces[k - 1].clone()
        }
    };
    let mut out = l.clone();
    out.subspaces.push(extra);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random_invertible;

    fn triple() -> SubspaceSystem {
        SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]]]).unwrap()
    }

    fn pair() -> SubspaceSystem {
        SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]]]).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn dimension_vectors() {
        assert_eq!(
            dimension_vector(&triple()),
            WeightVector::new(2, vec![1, 1, 1]).unwrap()
        );
        let l = SubspaceSystem::from_real(1, &[&[], &[], &[], &[&[1.0]]]).unwrap();
        assert_eq!(dimension_vector(&l), WeightVector::new(1, vec![0, 0, 0, 1]).unwrap());
        assert!(SubspaceSystem::new(2, vec![], &tol()).is_err());
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(SubspaceSystem::from_real(2, &[&[&[1.0, 0.0, 0.0]]]).is_err());
        assert!(SubspaceSystem::from_real(2, &[&[&[1.0, 1.0], &[2.0, 2.0]]]).is_err());
        assert!(SubspaceSystem::from_real(1, &[&[&[f64::NAN]]]).is_err());
    }

    #[test]
    fn hom_of_triple_is_scalars() {
        let h = hom_space(&triple(), &triple(), &tol()).unwrap();
        assert_eq!(h.len(), 1);
        let r = &h[0];
        let ratio = r[(0, 0)];
        assert!(frobenius(&(r - ComplexMatrix::identity(2, 2) * ratio)) < 1e-12);
    }

    #[test]
    fn hom_of_coordinate_pair_is_diagonal() {
        let h = hom_space(&pair(), &pair(), &tol()).unwrap();
        assert_eq!(h.len(), 2);
        for r in h {
            assert!(r[(0, 1)].norm() < 1e-12 && r[(1, 0)].norm() < 1e-12);
        }
    }

    #[test]
    fn brick_verdicts() {
        assert!(is_brick(&triple(), &tol()));
        assert!(!is_brick(&pair(), &tol()));
        let s34 = extend_system(&triple(), Extension::DuplicateAt(3)).unwrap();
        assert!(is_brick(&s34, &tol()));
    }

    #[test]
    fn indecomposability_verdicts() {
        let t = tol();
        assert_eq!(
            is_indecomposable(&triple(), 16, 1, &t),
            Indecomposability::ProbablyIndecomposable
        );
        assert_eq!(is_indecomposable(&pair(), 16, 1, &t), Indecomposability::Decomposable);
        let full = SubspaceSystem::from_real(1, &[&[&[1.0]]]).unwrap();
        let zero = SubspaceSystem::from_real(1, &[&[]]).unwrap();
        let sum = direct_sum(&full, &zero).unwrap();
        assert_eq!(is_indecomposable(&sum, 16, 2, &t), Indecomposability::Decomposable);
        let doubled = direct_sum(&triple(), &triple()).unwrap();
        assert_eq!(is_indecomposable(&doubled, 16, 3, &t), Indecomposability::Decomposable);
    }

    #[test]
    fn direct_sum_embeds_blocks() {
        let full = SubspaceSystem::from_real(1, &[&[&[1.0]]]).unwrap();
        let zero = SubspaceSystem::from_real(1, &[&[]]).unwrap();
        let sum = direct_sum(&full, &zero).unwrap();
        let expected = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]]]).unwrap();
        assert_eq!(sum, expected);
        assert!(matches!(
            direct_sum(&pair(), &triple()),
            Err(Error::CountMismatch(2, 3))
        ));
    }

    #[test]
    fn isomorphism_between_relabeled_triples() {
        let t = tol();
        let other = SubspaceSystem::from_real(2, &[&[&[0.0, 1.0]], &[&[1.0, 0.0]], &[&[1.0, -1.0]]]).unwrap();
        let r = find_isomorphism(&triple(), &other, 7, &t).expect("isomorphic");
        for i in 0..3 {
            let image = &r * triple().basis(i);
            let target = other.basis(i);
            let stacked = ComplexMatrix::from_columns(&[image.column(0).into_owned(), target.column(0).into_owned()]);
            assert!(stacked.determinant().norm() < 1e-10);
        }
        assert!(find_isomorphism(&triple(), &triple(), 1, &t).is_some());
        assert!(find_isomorphism(&triple(), &pair(), 1, &t).is_none());
    }

    #[test]
    fn quintuple_shapes_and_brickness() {
        let t = tol();
        let zero = ComplexMatrix::zeros(1, 1);
        let l = operator_quintuple(&zero, &zero).unwrap();
        assert_eq!(dimension_vector(&l), WeightVector::new(2, vec![1; 5]).unwrap());
        // 1x1 operators always have scalar commutant, so the quintuple is brick
        assert!(is_brick(&l, &t));
        let two = operator_quintuple(&ComplexMatrix::zeros(2, 2), &ComplexMatrix::zeros(2, 2)).unwrap();
        assert!(!is_brick(&two, &t));
        let a = ComplexMatrix::from_row_slice(2, 2, &[c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., 0.)]);
        let b = a.transpose();
        assert!(is_brick(&operator_quintuple(&a, &b).unwrap(), &t));
        assert!(operator_quintuple(&a, &zero).is_err());
    }

    #[test]
    fn extensions() {
        let full = SubspaceSystem::from_real(1, &[&[&[1.0]]]).unwrap();
        let z = extend_system(&full, Extension::AddZero).unwrap();
        assert_eq!(dimension_vector(&z).tail, vec![1, 0]);
        let line = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]]]).unwrap();
        let f = extend_system(&line, Extension::AddFull).unwrap();
        assert_eq!(dimension_vector(&f).tail, vec![1, 2]);
        assert!(matches!(
            extend_system(&line, Extension::DuplicateAt(2)),
            Err(Error::IndexOutOfRange { index: 2, count: 1 })
        ));
    }

    #[test]
    fn hom_dimension_invariant_under_basis_change() {
        let t = tol();
        let mut rng = seeded_rng(11);
        let l = triple();
        let m = extend_system(&pair(), Extension::AddFull).unwrap();
        for _ in 0..5 {
            let p = random_invertible(2, &mut rng);
            let q = random_invertible(2, &mut rng);
            assert_eq!(
                hom_space(&l, &m, &t).unwrap().len(),
                hom_space(&l.transformed(&p).unwrap(), &m.transformed(&q).unwrap(), &t)
                    .unwrap()
                    .len()
            );
        }
    }
}
