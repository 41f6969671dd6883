//! Unitarization: certificates, admissibility of characters and the
//! end-to-end construction of inner products for brick quadruples.
//!
//! Every construction builds an orthoscalar model isomorphic to the input,
//! finds an isomorphism `R` from the input to the model and pulls the model's
//! Gram matrix back, `G = R* G_model R`.

use num_rational::Rational64;

use crate::coxeter::{apply_functor_word, character_at_base, family_chain, UnitarizedSystem};
use crate::error::{Error, Result};
use crate::knr::{degenerate_gram, knr_mu, knr_projections, knr_solve, projection_image, sort_weights, KnrParameters};
use crate::numerics::{
    c64, g_projection, numerical_rank, residual_orthoscalar, ComplexMatrix, GramMatrix, ToleranceConfig,
};
use crate::roots::{
    coincident_pair, continuous_parameter, def_form, degenerate_system, recognize_discrete, ContinuousParameter,
    FamilyKind, MINIMAL_IMAGINARY_ROOT,
};
use crate::systems::{dimension_vector, find_isomorphism, is_brick, SubspaceSystem};
use crate::weights::{Weight, WeightVector};

/// Relative miss tolerated between the input parameter and the solved model.
const MODEL_MU_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoscalarCertificate {
    pub gram: GramMatrix,
    pub character: WeightVector<f64>,
    pub residual: f64,
}

impl OrthoscalarCertificate {
    pub fn is_accepted(&self, tol: &ToleranceConfig) -> bool {
        self.residual <= tol.tol_residual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub failed_conditions: Vec<String>,
}

impl AdmissibilityVerdict {
    fn from_checks(checks: Vec<(String, bool)>) -> Self {
        let failed_conditions: Vec<String> = checks.into_iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
        Self {
            admissible: failed_conditions.is_empty(),
            failed_conditions,
        }
    }

    fn to_result(&self) -> Result<()> {
        if self.admissible {
            Ok(())
        } else {
            Err(Error::InadmissibleCharacter(self.failed_conditions.join("; ")))
        }
    }
}

/// Residual of `Σ a_i P_i = a_0 I` for the `g`-orthogonal projections. Never
/// rejects a large residual.
pub fn verify_orthoscalar(
    l: &SubspaceSystem,
    g: &GramMatrix,
    chi: &WeightVector<f64>,
    tol: &ToleranceConfig,
) -> Result<OrthoscalarCertificate> {
    if g.dim() != l.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "Gram matrix has size {}, ambient dimension is {}",
            g.dim(),
            l.ambient_dim()
        )));
    }
    let projections = l
        .subspaces()
        .iter()
        .map(|b| g_projection(g, b, tol))
        .collect::<Result<Vec<_>>>()?;
    let residual = residual_orthoscalar(&projections, chi)?;
    Ok(OrthoscalarCertificate {
        gram: g.clone(),
        character: chi.clone(),
        residual,
    })
}

/// Inner product and character for a brick system of lines: `G = T⁻¹` with
/// `T` the sum of the standard projections, head 1 and tail
/// `v_i* G v_i / v_i* v_i`.
pub fn unitarize_lines(l: &SubspaceSystem, tol: &ToleranceConfig) -> Result<OrthoscalarCertificate> {
    if l.subspaces().iter().any(|b| b.ncols() != 1) {
        return Err(Error::NotLines);
    }
    if !is_brick(l, tol) {
        return Err(Error::NotBrick);
    }
    let n = l.ambient_dim();
    let t = l.subspaces().iter().fold(ComplexMatrix::zeros(n, n), |acc, v| {
        let norm = (v.adjoint() * v)[(0, 0)];
        acc + (v * v.adjoint()) / norm
    });
    if numerical_rank(&t, tol) < n {
        return Err(Error::SingularSum);
    }
    let t_inv = t.try_inverse().ok_or(Error::SingularSum)?;
    let gram = GramMatrix::new((&t_inv + t_inv.adjoint()).scale(0.5), tol)?;
    let tail = l
        .subspaces()
        .iter()
        .map(|v| (v.adjoint() * gram.matrix() * v)[(0, 0)].re / (v.adjoint() * v)[(0, 0)].re)
        .collect();
    let chi = WeightVector::new(1.0, tail)?;
    let cert = verify_orthoscalar(l, &gram, &chi, tol)?;
    if !cert.is_accepted(tol) {
        return Err(Error::SolverFailed(format!(
            "line construction residual {:e}",
            cert.residual
        )));
    }
    Ok(cert)
}

/// The small systems with tabulated characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmallShape {
    /// Ambient `C`; `full[i]` marks subspace `i` as `C` (otherwise zero).
    Point { full: Vec<bool> },
    /// Three pairwise distinct lines in `C²`.
    LineTriple,
}

impl SmallShape {
    pub fn detect(l: &SubspaceSystem, tol: &ToleranceConfig) -> Result<Self> {
        let d = dimension_vector(l);
        if d.head == 1 && (1..=4).contains(&d.len()) {
            return Ok(SmallShape::Point {
                full: d.tail.iter().map(|&x| x == 1).collect(),
            });
        }
        if d.to_vec() == [2, 1, 1, 1] && is_brick(l, tol) {
            return Ok(SmallShape::LineTriple);
        }
        Err(Error::UnknownShape)
    }
}

fn label_index(i: usize) -> String {
    format!("a{}", i + 1)
}

/// Evaluates the tabulated conditions for a small system.
pub fn admissible_small<T: Weight>(shape: &SmallShape, chi: &WeightVector<T>) -> Result<AdmissibilityVerdict> {
    let mut checks = Vec::new();
    match shape {
        SmallShape::Point { full } => {
            if full.is_empty() || full.len() > 4 {
                return Err(Error::UnknownShape);
            }
            if full.len() != chi.len() {
                return Err(Error::CountMismatch(full.len(), chi.len()));
            }
            let sum = chi
                .tail
                .iter()
                .zip(full)
                .filter(|(_, &f)| f)
                .fold(T::zero(), |acc, (a, _)| acc + a.clone());
            let names: Vec<String> = (0..full.len()).filter(|&i| full[i]).map(label_index).collect();
            let rhs = if names.is_empty() {
                "0".to_string()
            } else {
                names.join(" + ")
            };
            checks.push((format!("a0 = {rhs}"), chi.head.approx_eq(&sum)));
            for (i, a) in chi.tail.iter().enumerate() {
                checks.push((format!("{} > 0", label_index(i)), a.is_positive()));
            }
        }
        SmallShape::LineTriple => {
            if chi.len() != 3 {
                return Err(Error::CountMismatch(3, chi.len()));
            }
            for (i, a) in chi.tail.iter().enumerate() {
                checks.push((format!("{} > 0", label_index(i)), a.is_positive()));
                checks.push((
                    format!("{} < a0", label_index(i)),
                    (chi.head.clone() - a.clone()).is_positive(),
                ));
            }
            let two_a0 = chi.head.clone() + chi.head.clone();
            checks.push(("2a0 = a1 + a2 + a3".into(), two_a0.approx_eq(&chi.tail_sum())));
        }
    }
    Ok(AdmissibilityVerdict::from_checks(checks))
}

fn validity_checks<T: Weight>(chi: &WeightVector<T>, checks: &mut Vec<(String, bool)>) {
    checks.push(("a0 >= 0".into(), chi.head.is_nonnegative()));
    for (i, a) in chi.tail.iter().enumerate() {
        checks.push((format!("{} > 0", label_index(i)), a.is_positive()));
    }
}

/// Conditions for the discrete families, with the distinguished subspace of
/// a D4 family detected from `d`. Equalities are exact on rationals.
pub fn admissible_discrete<T: Weight>(d: &WeightVector<i64>, chi: &WeightVector<T>) -> Result<AdmissibilityVerdict> {
    let family = recognize_discrete(d).ok_or_else(|| Error::NotDiscreteRoot(d.to_string()))?;
    if chi.len() != 4 {
        return Err(Error::NotQuadruple(chi.len()));
    }
    let def = def_form(chi)?;
    let k = &|n: i64| T::from_int(n) * def.clone();
    let a0 = &chi.head;
    let s = family.size_param;
    let mut checks = Vec::new();
    validity_checks(chi, &mut checks);

    // per-index inequality, its label, then the equality as (lhs, rhs, label)
    type Ineq<'a, T> = Box<dyn Fn(&T) -> T + 'a>;
    let (ineq, ineq_label, lhs, rhs, eq_label): (Ineq<T>, String, T, T, String) = match family.kind {
        FamilyKind::D4 { variant } => {
            let av = chi.tail[variant - 1].clone();
            let v = variant;
            let m = family.m();
            match (family.label_sign, s % 2 == 1) {
                (-1, true) => (
                    Box::new(move |a: &T| k(m) + a.clone()),
                    format!("{m}*def + a_i > 0"),
                    k(m),
                    av - a0.clone(),
                    format!("{m}*def = a{v} - a0"),
                ),
                (1, true) => (
                    Box::new(move |a: &T| a.clone() - k(m)),
                    format!("a_i - {m}*def > 0"),
                    k(m + 1) + av - a0.clone(),
                    T::zero(),
                    format!("{}*def + a{v} - a0 = 0", m + 1),
                ),
                (-1, false) => (
                    Box::new(move |a: &T| k(m - 1) + a0.clone() - a.clone()),
                    format!("{}*def + a0 - a_i > 0", m - 1),
                    k(m) + av,
                    T::zero(),
                    format!("{m}*def + a{v} = 0"),
                ),
                _ => (
                    Box::new(move |a: &T| a0.clone() - a.clone() - k(m)),
                    format!("a0 - a_i - {m}*def > 0"),
                    k(m),
                    av,
                    format!("{m}*def = a{v}"),
                ),
            }
        }
        FamilyKind::D0 => {
            let big_m = family.m();
            let m = big_m / 2;
            match (family.label_sign, big_m % 2 == 0) {
                (-2, true) => (
                    Box::new(move |a: &T| k(m) + a.clone()),
                    format!("{m}*def + a_i > 0"),
                    k(2 * m) + a0.clone(),
                    T::zero(),
                    format!("{}*def + a0 = 0", 2 * m),
                ),
                (-2, false) => (
                    Box::new(move |a: &T| k(m) + a0.clone() - a.clone()),
                    format!("{m}*def + a0 - a_i > 0"),
                    k(2 * m + 1) + a0.clone(),
                    T::zero(),
                    format!("{}*def + a0 = 0", 2 * m + 1),
                ),
                (_, true) => (
                    Box::new(move |a: &T| a.clone() - k(m)),
                    format!("a_i - {m}*def > 0"),
                    a0.clone() - k(2 * m + 1),
                    T::zero(),
                    format!("a0 - {}*def = 0", 2 * m + 1),
                ),
                // the chain gives (m+1)*def here, one more than the printed m*def
                (_, false) => (
                    Box::new(move |a: &T| a0.clone() - a.clone() - k(m + 1)),
                    format!("a0 - a_i - {}*def > 0", m + 1),
                    a0.clone() - k(2 * m + 2),
                    T::zero(),
                    format!("a0 - {}*def = 0", 2 * m + 2),
                ),
            }
        }
    };
    for (i, a) in chi.tail.iter().enumerate() {
        checks.push((format!("{ineq_label} (i = {})", i + 1), ineq(a).is_positive()));
    }
    checks.push((eq_label, lhs.approx_eq(&rhs)));
    Ok(AdmissibilityVerdict::from_checks(checks))
}

/// Conditions for the `(2;1,1,1,1)` family: nondegenerate systems, or the
/// degenerate system whose subspaces `i` and `j` (1-based) coincide.
pub fn admissible_continuous<T: Weight>(
    chi: &WeightVector<T>,
    degenerate: Option<(usize, usize)>,
) -> Result<AdmissibilityVerdict> {
    if chi.len() != 4 {
        return Err(Error::NotQuadruple(chi.len()));
    }
    let sum = chi.tail_sum();
    let two = |x: &T| x.clone() + x.clone();
    let a = |k: usize| chi.tail[k - 1].clone();
    let mut checks = vec![("2a0 = a1 + a2 + a3 + a4".to_string(), two(&chi.head).approx_eq(&sum))];
    match degenerate {
        None => {
            for i in 1..=4 {
                checks.push((
                    format!("2a{i} < a1 + a2 + a3 + a4"),
                    (sum.clone() - two(&a(i))).is_positive(),
                ));
                checks.push((format!("a{i} > 0"), a(i).is_positive()));
                checks.push((format!("a{i} < a0"), (chi.head.clone() - a(i)).is_positive()));
            }
        }
        Some((i, j)) => {
            if !(1 <= i && i < j && j <= 4) {
                return Err(Error::InvalidIndices(i, j));
            }
            let free: Vec<usize> = (1..=4).filter(|&k| k != i && k != j).collect();
            let (k, l) = (free[0], free[1]);
            let merged = a(i) + a(j);
            checks.push((
                format!("a{k} + a{l} > a{i} + a{j}"),
                (a(k) + a(l) - merged.clone()).is_positive(),
            ));
            checks.push((
                format!("a{k} < a{l} + a{i} + a{j}"),
                (a(l) + merged.clone() - a(k)).is_positive(),
            ));
            checks.push((
                format!("a{l} < a{k} + a{i} + a{j}"),
                (a(k) + merged - a(l)).is_positive(),
            ));
            for m in 1..=4 {
                checks.push((format!("a{m} > 0"), a(m).is_positive()));
            }
        }
    }
    Ok(AdmissibilityVerdict::from_checks(checks))
}

/// `(2 − def(d)/d0; 1, 1, 1, 1)`.
pub fn canonical_character(d: &WeightVector<i64>) -> Result<WeightVector<Rational64>> {
    recognize_discrete(d).ok_or_else(|| Error::NotDiscreteRoot(d.to_string()))?;
    let def = def_form(d)?;
    let gamma = Rational64::from_integer(2) - Rational64::new(def, d.head);
    WeightVector::new(gamma, vec![Rational64::from_integer(1); 4])
}

/// Orthoscalar model of a discrete family: the one-dimensional base system
/// carried along the family chain by the functors.
pub fn discrete_model(
    d: &WeightVector<i64>,
    chi: &WeightVector<f64>,
    tol: &ToleranceConfig,
) -> Result<UnitarizedSystem> {
    let family = recognize_discrete(d).ok_or_else(|| Error::NotDiscreteRoot(d.to_string()))?;
    admissible_discrete(d, chi)?.to_result()?;
    let (base_dim, word) = family_chain(&family)?;
    let base_chi = character_at_base(&word, chi);
    let bases = base_dim
        .tail
        .iter()
        .map(|&k| ComplexMatrix::from_element(1, k as usize, c64(1.0, 0.0)))
        .collect();
    let base = SubspaceSystem::new(1, bases, tol)?.with_gram(GramMatrix::identity(1))?;
    let base = UnitarizedSystem::new(base, base_chi, tol)?;
    apply_functor_word(&base, &word, tol)
}

/// Orthoscalar model of a `(2;1,1,1,1)` system with the lines of `l` in the
/// same coincidence pattern (and the same parameter when nondegenerate).
pub fn continuous_model(l: &SubspaceSystem, chi: &WeightVector<f64>, tol: &ToleranceConfig) -> Result<SubspaceSystem> {
    if let Some(pair) = coincident_pair(l)? {
        let cert = degenerate_gram(chi, pair, tol)?;
        return degenerate_system(pair.0, pair.1)?.with_gram(cert.gram);
    }
    admissible_continuous(chi, None)?.to_result()?;
    let (_, order) = sort_weights([0, 1, 2, 3].map(|i| chi.tail[i] / chi.head));
    let mu = match continuous_parameter(&l.permuted(&order))? {
        ContinuousParameter::Mu(mu) => mu,
        ContinuousParameter::Degenerate { pair } => {
            return Err(Error::SolverFailed(format!("unexpected coincidence {pair:?}")))
        }
    };
    let (lambda, x) = knr_solve(chi, mu)?;
    let params = KnrParameters::from_character(chi, lambda, x)?;
    let model_mu = knr_mu(&params)?;
    if (model_mu - mu).norm() > MODEL_MU_TOL * mu.norm().max(1.0) {
        return Err(Error::SolverFailed(format!(
            "model parameter {model_mu} misses {mu} (only approached in the limit)"
        )));
    }
    let lines = knr_projections(&params).iter().map(projection_image).collect();
    SubspaceSystem::new(2, lines, tol)?.with_gram(GramMatrix::identity(2))
}

fn transport(
    l: &SubspaceSystem,
    model: &SubspaceSystem,
    chi: &WeightVector<f64>,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<OrthoscalarCertificate> {
    let r = find_isomorphism(l, model, seed, tol).ok_or(Error::NoIsomorphism)?;
    let g_model = model
        .gram()
        .ok_or_else(|| Error::InvalidGram("model without Gram matrix".into()))?;
    let gram = g_model.pullback(&r, tol)?;
    let cert = verify_orthoscalar(l, &gram, chi, tol)?;
    if !cert.is_accepted(tol) {
        return Err(Error::SolverFailed(format!("transported residual {:e}", cert.residual)));
    }
    Ok(cert)
}

/// Inner product on the space of a brick quadruple making it orthoscalar
/// with `chi`. `seed` drives the isomorphism search only.
pub fn unitarize_quadruple(
    l: &SubspaceSystem,
    chi: &WeightVector<f64>,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<OrthoscalarCertificate> {
    tol.validate()?;
    if l.count() != 4 {
        return Err(Error::NotQuadruple(l.count()));
    }
    if chi.len() != 4 {
        return Err(Error::CountMismatch(l.count(), chi.len()));
    }
    if !is_brick(l, tol) {
        return Err(Error::NotBrick);
    }
    let d = dimension_vector(l);
    let model = if d.to_vec() == MINIMAL_IMAGINARY_ROOT {
        continuous_model(l, chi, tol)?
    } else {
        discrete_model(&d, chi, tol)?.into_parts().0
    };
    transport(l, &model, chi, seed, tol)
}
