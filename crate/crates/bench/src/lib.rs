//! Fixtures shared by the benches.

use orthoscalar_core::numerics::{random_matrix, seeded_rng};
use orthoscalar_core::unitarize::discrete_model;
use orthoscalar_core::{
    canonical_character, discrete_dimension, is_brick, DiscreteFamily, GramMatrix, SubspaceSystem, ToleranceConfig,
    UnitarizedSystem, WeightVector,
};

/// A brick system of `count` random lines in `C^n`.
pub fn random_lines(n: usize, count: usize, seed: u64) -> SubspaceSystem {
    let tol = ToleranceConfig::default();
    let mut rng = seeded_rng(seed);
    loop {
        let bases = (0..count).map(|_| random_matrix(n, 1, &mut rng)).collect();
        let l = SubspaceSystem::new(n, bases, &tol).expect("random lines are valid");
        if is_brick(&l, &tol) {
            return l;
        }
    }
}

/// `(C; 0, 0, 0, C)` with a character that keeps every minus step valid.
pub fn point_at_fourth() -> UnitarizedSystem {
    let l = SubspaceSystem::from_real(1, &[&[], &[], &[], &[&[1.0]]])
        .and_then(|l| l.with_gram(GramMatrix::identity(1)))
        .expect("point system");
    let chi = WeightVector::new(1.0, vec![0.3, 0.4, 0.5, 1.0]).expect("four weights");
    UnitarizedSystem::new(l, chi, &ToleranceConfig::default()).expect("orthoscalar point")
}

/// Model system of the D4 family `(2m+1, -1)` at the fourth position.
pub fn discrete_quadruple(m: i64) -> (SubspaceSystem, WeightVector<f64>) {
    let tol = ToleranceConfig::default();
    let d = discrete_dimension(&DiscreteFamily::d4(4, 2 * m + 1, -1).expect("valid label")).expect("dimension");
    let chi = canonical_character(&d).expect("discrete root").to_f64();
    let s = discrete_model(&d, &chi, &tol).expect("model");
    (s.system().clone().without_gram(), chi)
}
