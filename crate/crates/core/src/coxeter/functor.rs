//! Coxeter functors on unitarized systems.

use crate::error::{Error, Result};
use crate::numerics::{
    columns_to_matrix, g_orthonormal_basis, kernel_basis, numerical_rank, residual_orthoscalar, ComplexMatrix,
    GramMatrix, ToleranceConfig,
};
use crate::systems::{dimension_vector, SubspaceSystem};
use crate::weights::{Weight, WeightVector};

use super::{c_bullet, c_circle, CoxeterWord, Letter};

/// A system with an inner product under which it is orthoscalar with the
/// stored character.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarizedSystem {
    system: SubspaceSystem,
    character: WeightVector<f64>,
    residual: f64,
}

impl UnitarizedSystem {
    /// Checks the certificate. The system must carry a Gram matrix.
    pub fn new(system: SubspaceSystem, character: WeightVector<f64>, tol: &ToleranceConfig) -> Result<Self> {
        if system.gram().is_none() {
            return Err(Error::InvalidGram("unitarized system needs a Gram matrix".into()));
        }
        if character.len() != system.count() {
            return Err(Error::CountMismatch(system.count(), character.len()));
        }
        for (i, (a, b)) in character.tail.iter().zip(system.subspaces()).enumerate() {
            if b.ncols() > 0 && !a.is_positive() {
                return Err(Error::NonpositiveWeight(format!(
                    "weight {} = {a} on a nonzero subspace",
                    i + 1
                )));
            }
        }
        let residual = residual_orthoscalar(&system.projections(tol)?, &character)?;
        if residual.is_nan() || residual > tol.tol_residual {
            return Err(Error::NotOrthoscalar(residual));
        }
        Ok(Self {
            system,
            character,
            residual,
        })
    }

    pub fn system(&self) -> &SubspaceSystem {
        &self.system
    }

    pub fn gram(&self) -> &GramMatrix {
        self.system.gram().expect("gram present by construction")
    }

    pub fn character(&self) -> &WeightVector<f64> {
        &self.character
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn dimension(&self) -> WeightVector<i64> {
        dimension_vector(&self.system)
    }

    pub fn into_parts(self) -> (SubspaceSystem, WeightVector<f64>, f64) {
        (self.system, self.character, self.residual)
    }
}

/// Replaces every subspace by its orthogonal complement. Dimensions change by
/// [`c_bullet`], the character by [`c_circle`].
pub fn functor_bullet(s: &UnitarizedSystem, tol: &ToleranceConfig) -> Result<UnitarizedSystem> {
    let character = c_circle(&s.character);
    if !character.head.is_positive() {
        return Err(Error::NonpositiveHead(character.head));
    }
    let n = s.system.ambient_dim();
    let g = s.gram();
    let complements = s
        .system
        .subspaces()
        .iter()
        .map(|b| {
            if b.ncols() == 0 {
                return ComplexMatrix::identity(n, n);
            }
            let constraint = b.adjoint() * g.matrix();
            columns_to_matrix(n, &kernel_basis(&constraint, tol))
        })
        .collect();
    let system = SubspaceSystem::new(n, complements, tol)?.with_gram(g.clone())?;
    UnitarizedSystem::new(system, character, tol)
}

/// Weighted-kernel functor. Dimensions change by [`c_circle`], the character
/// by [`c_bullet`]. The output carries the standard inner product.
pub fn functor_circle(s: &UnitarizedSystem, tol: &ToleranceConfig) -> Result<UnitarizedSystem> {
    let d = s.dimension();
    let new_dim = d.tail_sum() - d.head;
    if new_dim <= 0 {
        return Err(Error::Annihilated);
    }
    let chi = &s.character;
    let a0 = chi.head;
    if !a0.is_positive() {
        return Err(Error::NonpositiveWeight(format!("head weight {a0}")));
    }
    let n = s.system.ambient_dim();
    let g = s.gram();
    let mut blocks = Vec::new();
    for (b, &a) in s.system.subspaces().iter().zip(&chi.tail) {
        let u = g_orthonormal_basis(g, b, tol)?;
        blocks.push(u.scale((a / a0).sqrt()));
    }
    let total: usize = blocks.iter().map(|u| u.ncols()).sum();
    let mut gamma = ComplexMatrix::zeros(n, total);
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut offset = 0;
    for u in &blocks {
        gamma.columns_mut(offset, u.ncols()).copy_from(u);
        offsets.push(offset);
        offset += u.ncols();
    }
    if numerical_rank(&gamma, tol) < n {
        return Err(Error::NotSpanning);
    }
    for (i, (b, &a)) in s.system.subspaces().iter().zip(&chi.tail).enumerate() {
        if b.ncols() > 0 && !(a0 - a).is_positive() {
            return Err(Error::NonpositiveWeight(format!(
                "head minus weight {} is {}",
                i + 1,
                a0 - a
            )));
        }
    }
    let kernel = kernel_basis(&gamma, tol);
    let w = columns_to_matrix(total, &kernel);
    let k = w.ncols();
    let subspaces = blocks
        .iter()
        .zip(&offsets)
        .map(|(u, &off)| w.rows(off, u.ncols()).adjoint())
        .collect();
    let system = SubspaceSystem::new(k, subspaces, tol)?.with_gram(GramMatrix::identity(k))?;
    UnitarizedSystem::new(system, c_bullet(chi), tol)
}

/// Circle then bullet.
pub fn functor_plus(s: &UnitarizedSystem, tol: &ToleranceConfig) -> Result<UnitarizedSystem> {
    functor_bullet(&functor_circle(s, tol)?, tol)
}

/// Bullet then circle.
pub fn functor_minus(s: &UnitarizedSystem, tol: &ToleranceConfig) -> Result<UnitarizedSystem> {
    functor_circle(&functor_bullet(s, tol)?, tol)
}

/// Applies the functor for each dimension letter, left to right.
pub fn apply_functor_word(s: &UnitarizedSystem, word: &CoxeterWord, tol: &ToleranceConfig) -> Result<UnitarizedSystem> {
    let mut current = s.clone();
    for letter in &word.letters {
        current = match letter {
            Letter::Circle => functor_circle(&current, tol)?,
            Letter::Bullet => functor_bullet(&current, tol)?,
        };
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::apply_word;
    use crate::numerics::{c64, word_trace_invariants};
    use crate::systems::is_brick;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn worked_lines() -> UnitarizedSystem {
        let g = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c64(0.75, 0.0), c64(-0.25, 0.0), c64(-0.25, 0.0), c64(0.75, 0.0)],
        );
        let l = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]]])
            .unwrap()
            .with_gram(GramMatrix::new(g, &tol()).unwrap())
            .unwrap();
        UnitarizedSystem::new(l, WeightVector::new(1.0, vec![0.75, 0.75, 0.5]).unwrap(), &tol()).unwrap()
    }

    fn point_at_fourth(chi: WeightVector<f64>) -> UnitarizedSystem {
        let l = SubspaceSystem::from_real(1, &[&[], &[], &[], &[&[1.0]]])
            .unwrap()
            .with_gram(GramMatrix::identity(1))
            .unwrap();
        UnitarizedSystem::new(l, chi, &tol()).unwrap()
    }

    fn traces_close(a: &UnitarizedSystem, b: &UnitarizedSystem) -> bool {
        let ta = word_trace_invariants(&a.system().projections(&tol()).unwrap(), 4);
        let tb = word_trace_invariants(&b.system().projections(&tol()).unwrap(), 4);
        ta.len() == tb.len() && ta.iter().zip(&tb).all(|(x, y)| (x - y).norm() < 1e-9)
    }

    #[test]
    fn certificate_is_checked() {
        let l = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]]]).unwrap();
        let chi = WeightVector::new(1.0, vec![0.75, 0.75, 0.5]).unwrap();
        assert!(matches!(
            UnitarizedSystem::new(l.clone(), chi.clone(), &tol()),
            Err(Error::InvalidGram(_))
        ));
        let l = l.with_gram(GramMatrix::identity(2)).unwrap();
        assert!(matches!(
            UnitarizedSystem::new(l, chi, &tol()),
            Err(Error::NotOrthoscalar(_))
        ));
    }

    #[test]
    fn bullet_on_worked_lines() {
        let s = worked_lines();
        let t = functor_bullet(&s, &tol()).unwrap();
        assert_eq!(t.character().to_vec(), vec![1.0, 0.75, 0.75, 0.5]);
        assert!(t.residual() < 1e-10);
        assert_eq!(t.dimension(), c_bullet(&s.dimension()));
        assert!(traces_close(&functor_bullet(&t, &tol()).unwrap(), &s));
    }

    #[test]
    fn bullet_rejects_nonpositive_head() {
        let l = SubspaceSystem::from_real(1, &[&[&[1.0]]])
            .unwrap()
            .with_gram(GramMatrix::identity(1))
            .unwrap();
        let s = UnitarizedSystem::new(l, WeightVector::new(1.0, vec![1.0]).unwrap(), &tol()).unwrap();
        assert!(matches!(functor_bullet(&s, &tol()), Err(Error::NonpositiveHead(_))));
    }

    #[test]
    fn circle_annihilates_a_point() {
        let s = point_at_fourth(WeightVector::new(1.0, vec![0.3, 0.4, 0.5, 1.0]).unwrap());
        assert_eq!(functor_circle(&s, &tol()), Err(Error::Annihilated));
    }

    #[test]
    fn circle_on_three_full_lines() {
        let (a1, a2, a3) = (0.3, 0.5, 0.9);
        let s_val = a1 + a2 + a3;
        let l = SubspaceSystem::from_real(1, &[&[&[1.0]], &[&[1.0]], &[&[1.0]], &[]])
            .unwrap()
            .with_gram(GramMatrix::identity(1))
            .unwrap();
        let s = UnitarizedSystem::new(l, WeightVector::new(s_val, vec![a1, a2, a3, 7.0]).unwrap(), &tol()).unwrap();
        let t = functor_circle(&s, &tol()).unwrap();
        assert_eq!(t.dimension().to_vec(), vec![2, 1, 1, 1, 0]);
        assert!(is_brick(t.system(), &tol()));
        assert!(t.residual() < 1e-10);
        assert_eq!(t.character().tail[..3], [s_val - a1, s_val - a2, s_val - a3]);
    }

    #[test]
    fn circle_needs_positive_differences() {
        let l = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 0.0]]])
            .unwrap()
            .with_gram(GramMatrix::identity(2))
            .unwrap();
        let s = UnitarizedSystem::new(l, WeightVector::new(1.0, vec![0.5, 1.0, 0.5]).unwrap(), &tol()).unwrap();
        assert!(matches!(functor_circle(&s, &tol()), Err(Error::NonpositiveWeight(_))));
    }

    #[test]
    fn minus_from_a_point() {
        let chi = WeightVector::new(1.0, vec![0.3, 0.4, 0.5, 1.0]).unwrap();
        let s = point_at_fourth(chi.clone());
        let t = functor_minus(&s, &tol()).unwrap();
        assert_eq!(t.dimension(), apply_word(&CoxeterWord::pairs(1), &s.dimension()));
        assert_eq!(t.dimension().to_vec(), vec![2, 1, 1, 1, 0]);
        assert!(is_brick(t.system(), &tol()));
        assert!(t.residual() < 1e-10);
        assert_eq!(t.character(), &c_bullet(&c_circle(&chi)));
        let back = functor_plus(&t, &tol()).unwrap();
        assert!(traces_close(&back, &s));
    }

    #[test]
    fn functor_word_chain_stays_certified() {
        let chi = WeightVector::new(1.0, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let s = point_at_fourth(chi);
        let word = CoxeterWord::pairs(6);
        let t = apply_functor_word(&s, &word, &tol()).unwrap();
        assert_eq!(t.dimension(), apply_word(&word, &s.dimension()));
        assert!(is_brick(t.system(), &tol()));
        assert!(t.residual() < 1e-8);
    }
}
