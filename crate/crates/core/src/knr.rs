//! Explicit rank-one solutions of `a1 P1 + a2 P2 + a3 P3 + a4 P4 = I` in `C²`.
//!
//! Weights are normalized to `a0 = 1`, `Σ a_i = 2` and sorted increasingly;
//! the sort order is kept so results can be reported in the caller's order.
//! With `A = (a4−a1)/2`, `B = (a4+a1)/2`, `C = (a3−a2)/2`, `D = (a3+a2)/2`
//! the solutions are indexed by `A ≤ λ < min(B, D)` and an angle `x`.
//!
//! At `λ = A > 0` the ellipse below collapses to its centre, which is then
//! attained for every `x`. With all weights equal (`A = C = 0`) the formulas
//! are read after cancelling the common factor `λ`; at `λ = 0` they give
//! `P1 + P4 = P2 + P3 = I` and `μ = (1 + cos x)/2` sweeps the segment `(0, 1)`.
//!
//! The cross-ratio parameter of the four image lines (taken in sorted order)
//! traces the ellipse `μ = c + α cos x − iβ sin x`, where
//! `c = ½ − AC/(2λ²)`, `s = √((λ²−A²)(λ²−C²))`,
//! `r = √((B+λ)(D+λ)/((B−λ)(D−λ)))`, `α = s(r + 1/r)/(4λ²)` and
//! `β = s(r − 1/r)/(4λ²)`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numerics::{c64, frobenius, ComplexMatrix, GramMatrix, ToleranceConfig, C64};
use crate::roots::degenerate_system;
use crate::unitarize::{admissible_continuous, verify_orthoscalar, OrthoscalarCertificate};
use crate::weights::{WeightVector, FLOAT_EQ_TOL};

/// Tolerance on `Σ a_i = 2` for normalized weights.
const SUM_TOL: f64 = 1e-9;
/// Projections closer than this (Frobenius) have the same image.
const DISTINCT_TOL: f64 = 1e-9;
/// Target accuracy of [`knr_solve`].
pub const SOLVE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnrParameters {
    weights: [f64; 4],
    permutation: [usize; 4],
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    lambda: f64,
    x: f64,
}

pub(crate) fn sort_weights(weights: [f64; 4]) -> ([f64; 4], [usize; 4]) {
    let mut perm = [0, 1, 2, 3];
    perm.sort_by(|&i, &j| weights[i].total_cmp(&weights[j]));
    (perm.map(|i| weights[i]), perm)
}

fn check_weights(weights: &[f64; 4]) -> Result<()> {
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite("weights"));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 2.0).abs() > SUM_TOL {
        return Err(Error::ParameterOutOfRange(format!("weights sum to {sum}, expected 2")));
    }
    if let Some(w) = weights.iter().find(|&&w| w <= FLOAT_EQ_TOL || w >= 1.0 - FLOAT_EQ_TOL) {
        return Err(Error::ParameterOutOfRange(format!("weight {w} outside (0, 1)")));
    }
    Ok(())
}

fn abcd(sorted: &[f64; 4]) -> (f64, f64, f64, f64) {
    let [a1, a2, a3, a4] = *sorted;
    ((a4 - a1) / 2.0, (a4 + a1) / 2.0, (a3 - a2) / 2.0, (a3 + a2) / 2.0)
}

fn sqrt_clamped(v: f64) -> f64 {
    v.max(0.0).sqrt()
}

impl KnrParameters {
    /// `weights` in the caller's order, normalized so that they sum to 2.
    pub fn new(weights: [f64; 4], lambda: f64, x: f64) -> Result<Self> {
        check_weights(&weights)?;
        if !lambda.is_finite() || !x.is_finite() {
            return Err(Error::NonFinite("lambda or x"));
        }
        let (sorted, permutation) = sort_weights(weights);
        let (a, b, c, d) = abcd(&sorted);
        let upper = b.min(d);
        if !(lambda >= a && lambda < upper) {
            return Err(Error::ParameterOutOfRange(format!(
                "lambda = {lambda} outside [{a}, {upper})"
            )));
        }
        Ok(Self {
            weights: sorted,
            permutation,
            a,
            b,
            c,
            d,
            lambda,
            x: x.rem_euclid(TAU),
        })
    }

    /// Normalizes a character with `2 a0 = Σ a_i` to `a0 = 1`.
    pub fn from_character(chi: &WeightVector<f64>, lambda: f64, x: f64) -> Result<Self> {
        Self::new(normalized_weights(chi)?, lambda, x)
    }

    /// Sorted weights.
    pub fn weights(&self) -> [f64; 4] {
        self.weights
    }

    /// Entry `k` of the sorted weights is entry `permutation[k]` of the input.
    pub fn permutation(&self) -> [usize; 4] {
        self.permutation
    }

    /// `(A, B, C, D)`.
    pub fn abcd(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

fn normalized_weights(chi: &WeightVector<f64>) -> Result<[f64; 4]> {
    if chi.len() != 4 {
        return Err(Error::NotQuadruple(chi.len()));
    }
    if chi.head <= FLOAT_EQ_TOL {
        return Err(Error::ParameterOutOfRange(format!(
            "head weight {} must be positive",
            chi.head
        )));
    }
    Ok([0, 1, 2, 3].map(|i| chi.tail[i] / chi.head))
}

/// `P1..P4` for the sorted weights.
pub fn knr_projections_sorted(p: &KnrParameters) -> [ComplexMatrix; 4] {
    let [a1, a2, a3, a4] = p.weights;
    let (a, b, c, d, l) = (p.a, p.b, p.c, p.d, p.lambda);
    let s1 = sqrt_clamped((l * l - a * a) * (b * b - l * l));
    let s2 = sqrt_clamped((d * d - l * l) * (l * l - c * c));
    let e = C64::from_polar(1.0, p.x);
    let r = |v: f64| c64(v, 0.0);
    let m = |entries: [C64; 4], scale: f64| ComplexMatrix::from_row_slice(2, 2, &entries).unscale(scale);
    if l == 0.0 {
        // equal weights, limit λ → 0
        return [
            m([r(1.0), r(1.0), r(1.0), r(1.0)], 2.0),
            m([r(1.0), e, e.conj(), r(1.0)], 2.0),
            m([r(1.0), -e, -e.conj(), r(1.0)], 2.0),
            m([r(1.0), r(-1.0), r(-1.0), r(1.0)], 2.0),
        ];
    }
    [
        m(
            [r((l - a) * (l + b)), r(s1), r(s1), r(-(l + a) * (l - b))],
            2.0 * a1 * l,
        ),
        m(
            [r(-(l - d) * (l + c)), e * s2, e.conj() * s2, r((l + d) * (l - c))],
            2.0 * a2 * l,
        ),
        m(
            [r(-(l - d) * (l - c)), -e * s2, -e.conj() * s2, r((l + d) * (l + c))],
            2.0 * a3 * l,
        ),
        m(
            [r((l + a) * (l + b)), r(-s1), r(-s1), r(-(l - a) * (l - b))],
            2.0 * a4 * l,
        ),
    ]
}

/// `P1..P4` in the caller's original weight order.
pub fn knr_projections(p: &KnrParameters) -> [ComplexMatrix; 4] {
    let sorted = knr_projections_sorted(p);
    let mut out: [ComplexMatrix; 4] = std::array::from_fn(|_| ComplexMatrix::zeros(2, 2));
    for (k, proj) in sorted.into_iter().enumerate() {
        out[p.permutation[k]] = proj;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnrEllipse {
    pub center: C64,
    pub semi_real: f64,
    /// Signed: the curve is `center + semi_real cos x + i semi_imag sin x`.
    pub semi_imag: f64,
}

impl KnrEllipse {
    pub fn point(&self, x: f64) -> C64 {
        self.center + c64(self.semi_real * x.cos(), self.semi_imag * x.sin())
    }
}

fn ellipse_raw(a: f64, b: f64, c: f64, d: f64, l: f64) -> KnrEllipse {
    if l == 0.0 {
        // only reachable with A = C = 0, B = D = 1/2
        return KnrEllipse {
            center: c64(0.5, 0.0),
            semi_real: 0.5,
            semi_imag: 0.0,
        };
    }
    let l2 = l * l;
    let center = 0.5 - a * c / (2.0 * l2);
    let s = sqrt_clamped((l2 - a * a) * (l2 - c * c));
    let r = ((b + l) * (d + l) / ((b - l) * (d - l))).sqrt();
    let k = s / (4.0 * l2);
    KnrEllipse {
        center: c64(center, 0.0),
        semi_real: k * (r + 1.0 / r),
        semi_imag: -k * (r - 1.0 / r),
    }
}

/// Ellipse traced by the parameter at fixed `λ`; weights are normalized to
/// sum 2 and may be given in any order.
pub fn knr_ellipse(weights: [f64; 4], lambda: f64) -> Result<KnrEllipse> {
    let p = KnrParameters::new(weights, lambda, 0.0)?;
    Ok(ellipse_raw(p.a, p.b, p.c, p.d, p.lambda))
}

/// Cross-ratio parameter of the image lines in sorted weight order.
pub fn knr_mu(p: &KnrParameters) -> Result<C64> {
    let projections = knr_projections_sorted(p);
    for i in 0..4 {
        for j in (i + 1)..4 {
            if frobenius(&(&projections[i] - &projections[j])) <= DISTINCT_TOL {
                return Err(Error::DegenerateConfiguration);
            }
        }
    }
    Ok(ellipse_raw(p.a, p.b, p.c, p.d, p.lambda).point(p.x))
}

/// Unit-scaled image vector of a rank-one projection.
pub fn projection_image(p: &ComplexMatrix) -> ComplexMatrix {
    let j = (0..p.ncols())
        .max_by(|&i, &k| p.column(i).norm().total_cmp(&p.column(k).norm()))
        .unwrap_or(0);
    let col = p.column(j).into_owned();
    let n = col.norm();
    ComplexMatrix::from_column_slice(p.nrows(), 1, col.unscale(n).as_slice())
}

fn angle_on(e: &KnrEllipse, mu: C64) -> f64 {
    if e.semi_real == 0.0 {
        return 0.0;
    }
    let cos = (mu.re - e.center.re) / e.semi_real;
    if e.semi_imag == 0.0 {
        return cos.clamp(-1.0, 1.0).acos();
    }
    let sin = mu.im / e.semi_imag;
    sin.atan2(cos).rem_euclid(TAU)
}

/// Finds `(λ, x)` with `knr_mu(λ, x) = mu` for the character `chi`
/// (normalized internally). The scalar
/// `E(λ) = ((Re μ − c)/α)² + (Im μ / β)² − 1` is positive near `λ = A`
/// and tends to −1 at the right end; its first sign change is bisected.
pub fn knr_solve(chi: &WeightVector<f64>, mu: C64) -> Result<(f64, f64)> {
    if chi.len() != 4 {
        return Err(Error::NotQuadruple(chi.len()));
    }
    if !(mu.re.is_finite() && mu.im.is_finite()) {
        return Err(Error::NonFinite("mu"));
    }
    if mu.norm() <= FLOAT_EQ_TOL || (mu - 1.0).norm() <= FLOAT_EQ_TOL {
        return Err(Error::ForbiddenMu(format!("{mu}")));
    }
    let verdict = admissible_continuous(chi, None)?;
    if !verdict.admissible {
        return Err(Error::InadmissibleCharacter(verdict.failed_conditions.join("; ")));
    }
    let (sorted, _) = sort_weights(normalized_weights(chi)?);
    let (a, b, c, d) = abcd(&sorted);
    let hi = b.min(d);
    let span = hi - a;
    let at = |t: f64| a + span * t;
    let energy = |l: f64| {
        let e = ellipse_raw(a, b, c, d, l);
        let u = (mu.re - e.center.re) / e.semi_real;
        let v = mu.im / e.semi_imag;
        let val = u * u + v * v - 1.0;
        if val.is_nan() {
            f64::INFINITY
        } else {
            val
        }
    };
    let miss = |l: f64| {
        let e = ellipse_raw(a, b, c, d, l);
        let x = angle_on(&e, mu);
        ((e.point(x) - mu).norm(), x)
    };

    // the collapsed ellipse at λ = A is attained exactly
    let (err, x) = miss(a);
    if err < SOLVE_TOL {
        return Ok((a, x));
    }

    let mut grid: Vec<f64> = (0..=44).map(|k| 10f64.powf(-13.0 + k as f64 * 0.25)).collect();
    grid.extend((1..100).map(|k| k as f64 / 100.0));
    grid.extend((0..=44).rev().map(|k| 1.0 - 10f64.powf(-13.0 + k as f64 * 0.25)));
    grid.retain(|&t| t > 0.0 && t < 1.0 && at(t) > a && at(t) < hi);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let values: Vec<f64> = grid.iter().map(|&t| energy(at(t))).collect();
    let bracket = (0..grid.len().saturating_sub(1)).find(|&k| values[k] > 0.0 && values[k + 1] <= 0.0);
    let Some(k) = bracket else {
        return Err(Error::SolverFailed(format!("no bracket for mu = {mu}")));
    };
    let (mut lo, mut up) = (at(grid[k]), at(grid[k + 1]));
    for _ in 0..200 {
        let mid = 0.5 * (lo + up);
        if mid <= lo || mid >= up {
            break;
        }
        if energy(mid) > 0.0 {
            lo = mid;
        } else {
            up = mid;
        }
    }
    let best = [lo, up]
        .into_iter()
        .map(|l| (l, miss(l)))
        .min_by(|p, q| p.1 .0.total_cmp(&q.1 .0))
        .expect("two candidates");
    let (lambda, (err, x)) = best;
    if err >= SOLVE_TOL {
        return Err(Error::SolverFailed(format!("residual {err:e} at lambda = {lambda}")));
    }
    Ok((lambda, x))
}

/// Bloch vector of a rank-one projection as a `2×2` matrix.
fn bloch_projection(n: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c64(0.5 * (1.0 + n[2]), 0.0),
            c64(0.5 * n[0], -0.5 * n[1]),
            c64(0.5 * n[0], 0.5 * n[1]),
            c64(0.5 * (1.0 - n[2]), 0.0),
        ],
    )
}

/// Three lines whose projections satisfy `w1 P1 + w2 P2 + w3 P3 = ((w1+w2+w3)/2) I`:
/// the weighted Bloch vectors close into a planar triangle.
pub fn triangle_lines(w: [f64; 3]) -> Result<[ComplexMatrix; 3]> {
    let [w1, w2, w3] = w;
    let cos = (w3 * w3 - w1 * w1 - w2 * w2) / (2.0 * w1 * w2);
    if cos.is_nan() || cos.abs() >= 1.0 {
        return Err(Error::InadmissibleCharacter(format!(
            "sides {w1}, {w2}, {w3} do not form a triangle"
        )));
    }
    let sin = (1.0 - cos * cos).sqrt();
    let n1 = [0.0, 0.0, 1.0];
    let n2 = [sin, 0.0, cos];
    let n3 = [0, 1, 2].map(|k| -(w1 * n1[k] + w2 * n2[k]) / w3);
    Ok([n1, n2, n3].map(|n| projection_image(&bloch_projection(n))))
}

/// Gram matrix on `degenerate_system(i, j)` making it orthoscalar with `chi`.
pub fn degenerate_gram(
    chi: &WeightVector<f64>,
    pair: (usize, usize),
    tol: &ToleranceConfig,
) -> Result<OrthoscalarCertificate> {
    let (i, j) = pair;
    let model = degenerate_system(i, j)?;
    let verdict = admissible_continuous(chi, Some(pair))?;
    if !verdict.admissible {
        return Err(Error::InadmissibleCharacter(verdict.failed_conditions.join("; ")));
    }
    let free: Vec<usize> = (1..=4).filter(|&k| k != i && k != j).collect();
    let (k, l) = (free[0], free[1]);
    let a = |m: usize| chi.tail[m - 1];
    let [uk, ul, um] = triangle_lines([a(k), a(l), a(i) + a(j)])?;
    // u_m = α u_k + β u_l, then R = [α u_k, β u_l] sends e1, e2, e1+e2 to the lines
    let frame = ComplexMatrix::from_columns(&[uk.column(0), ul.column(0)]);
    let coeffs = frame.clone().lu().solve(&um).ok_or(Error::DegenerateConfiguration)?;
    let r = ComplexMatrix::from_columns(&[uk.column(0) * coeffs[(0, 0)], ul.column(0) * coeffs[(1, 0)]]);
    let gram = GramMatrix::identity(2).pullback(&r, tol)?;
    verify_orthoscalar(&model, &gram, chi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::residual_orthoscalar;
    use crate::roots::{continuous_parameter, ContinuousParameter};
    use crate::systems::{is_brick, SubspaceSystem};
    use std::f64::consts::FRAC_PI_2;

    fn lines_system(projections: &[ComplexMatrix]) -> SubspaceSystem {
        SubspaceSystem::new(
            2,
            projections.iter().map(projection_image).collect(),
            &ToleranceConfig::default(),
        )
        .unwrap()
    }

    fn sum_residual(p: &KnrParameters) -> f64 {
        let chi = WeightVector::new(1.0, p.weights().to_vec()).unwrap();
        residual_orthoscalar(&knr_projections_sorted(p), &chi).unwrap()
    }

    #[test]
    fn projections_of_the_worked_weights() {
        let p = KnrParameters::new([0.4, 0.5, 0.5, 0.6], 0.3, FRAC_PI_2).unwrap();
        assert_eq!(p.abcd(), ((0.6 - 0.4) / 2.0, (0.6 + 0.4) / 2.0, 0.0, 0.5));
        assert!(sum_residual(&p) < 1e-12);
        for q in knr_projections(&p) {
            assert!(frobenius(&(&q * &q - &q)) < 1e-12);
            assert!(frobenius(&(&q - q.adjoint())) < 1e-12);
        }
    }

    #[test]
    fn equal_weights_allow_zero_a() {
        let p = KnrParameters::new([0.5; 4], 0.2, 1.0).unwrap();
        assert!(sum_residual(&p) < 1e-12);
        let e = knr_ellipse([0.5; 4], 0.3).unwrap();
        assert_eq!(e.center, c64(0.5, 0.0));
    }

    #[test]
    fn lambda_range_is_half_open() {
        let w = [0.4, 0.5, 0.5, 0.6];
        let (a, b, _, d) = KnrParameters::new(w, 0.3, 0.0).unwrap().abcd();
        assert!(KnrParameters::new(w, a, 0.0).is_ok());
        assert!(matches!(
            KnrParameters::new(w, a - 1e-9, 0.0),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            KnrParameters::new(w, b.min(d), 0.0),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(KnrParameters::new([0.4, 0.5, 0.5, 0.7], 0.3, 0.0).is_err());
    }

    #[test]
    fn original_order_is_restored() {
        let p = KnrParameters::new([0.6, 0.4, 0.5, 0.5], 0.3, 0.7).unwrap();
        assert_eq!(p.permutation(), [1, 2, 3, 0]);
        let chi = WeightVector::new(1.0, vec![0.6, 0.4, 0.5, 0.5]).unwrap();
        assert!(residual_orthoscalar(&knr_projections(&p), &chi).unwrap() < 1e-12);
    }

    #[test]
    fn mu_matches_cross_ratio() {
        for (w, l, x) in [
            ([0.4, 0.5, 0.5, 0.6], 0.3, 0.0),
            ([0.3, 0.45, 0.55, 0.7], 0.25, 2.5),
            ([0.5; 4], 0.2, 4.0),
        ] {
            let p = KnrParameters::new(w, l, x).unwrap();
            let mu = knr_mu(&p).unwrap();
            let l = lines_system(&knr_projections_sorted(&p));
            assert!(is_brick(&l, &ToleranceConfig::default()));
            match continuous_parameter(&l).unwrap() {
                ContinuousParameter::Mu(m) => assert!((m - mu).norm() < 1e-9, "{m} vs {mu}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn ellipse_reproduces_mu_and_contracts() {
        let w = [0.4, 0.5, 0.5, 0.6];
        let e = knr_ellipse(w, 0.3).unwrap();
        for x in [0.0, FRAC_PI_2, std::f64::consts::PI, 3.0 * FRAC_PI_2] {
            let mu = knr_mu(&KnrParameters::new(w, 0.3, x).unwrap()).unwrap();
            assert!((e.point(x) - mu).norm() < 1e-10);
        }
        let near = knr_ellipse(w, 0.1 + 1e-9).unwrap();
        assert!(near.semi_real.abs() < 1e-3 && near.semi_imag.abs() < 1e-3);
        assert!((near.center - 0.5).norm() < 1e-6);
        let far = knr_ellipse(w, 0.5 - 1e-9).unwrap();
        assert!(far.semi_real > 1e3);
    }

    #[test]
    fn solve_round_trip() {
        let chi = WeightVector::new(1.0, vec![0.4, 0.5, 0.5, 0.6]).unwrap();
        let mu = c64(0.5, 0.3);
        let (l, x) = knr_solve(&chi, mu).unwrap();
        let back = knr_mu(&KnrParameters::from_character(&chi, l, x).unwrap()).unwrap();
        assert!((back - mu).norm() < 1e-6);
        let real = c64(2.0, 0.0);
        let eq = WeightVector::new(2.0, vec![1.0; 4]).unwrap();
        let (l, x) = knr_solve(&eq, real).unwrap();
        assert!((knr_mu(&KnrParameters::from_character(&eq, l, x).unwrap()).unwrap() - real).norm() < 1e-9);
    }

    #[test]
    fn solve_errors() {
        let chi = WeightVector::new(1.0, vec![0.4, 0.5, 0.5, 0.6]).unwrap();
        assert!(matches!(knr_solve(&chi, c64(0.0, 0.0)), Err(Error::ForbiddenMu(_))));
        assert!(matches!(knr_solve(&chi, c64(1.0, 0.0)), Err(Error::ForbiddenMu(_))));
        let bad = WeightVector::new(1.0, vec![0.1, 0.2, 0.3, 1.4]).unwrap();
        assert!(matches!(
            knr_solve(&bad, c64(0.5, 0.5)),
            Err(Error::InadmissibleCharacter(_))
        ));
    }

    #[test]
    fn contraction_point_at_lower_endpoint() {
        let w = [0.4, 0.5, 0.5, 0.6];
        let chi = WeightVector::new(1.0, w.to_vec()).unwrap();
        let (l, x) = knr_solve(&chi, c64(0.5, 0.0)).unwrap();
        assert!((l - 0.1).abs() < 1e-15);
        let p = KnrParameters::from_character(&chi, l, x).unwrap();
        assert!(sum_residual(&p) < 1e-12);
        assert!((knr_mu(&p).unwrap() - 0.5).norm() < 1e-12);
        assert!(is_brick(
            &lines_system(&knr_projections_sorted(&p)),
            &ToleranceConfig::default()
        ));
    }

    #[test]
    fn equal_weights_reach_the_unit_segment() {
        let eq = WeightVector::new(2.0, vec![1.0; 4]).unwrap();
        for re in [0.5, 0.3, 0.999] {
            let mu = c64(re, 0.0);
            let (l, x) = knr_solve(&eq, mu).unwrap();
            assert_eq!(l, 0.0);
            let p = KnrParameters::from_character(&eq, l, x).unwrap();
            assert!(sum_residual(&p) < 1e-12);
            let sys = lines_system(&knr_projections_sorted(&p));
            match continuous_parameter(&sys).unwrap() {
                ContinuousParameter::Mu(m) => assert!((m - mu).norm() < 1e-12, "{m} vs {mu}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn degenerate_triangle() {
        let tol = ToleranceConfig::default();
        let chi = WeightVector::new(1.0, vec![0.6, 0.6, 0.4, 0.4]).unwrap();
        let cert = degenerate_gram(&chi, (3, 4), &tol).unwrap();
        assert!(cert.residual < 1e-10);
        let bad = WeightVector::new(1.0, vec![0.2, 0.2, 0.8, 0.8]).unwrap();
        assert!(matches!(
            degenerate_gram(&bad, (3, 4), &tol),
            Err(Error::InadmissibleCharacter(_))
        ));
    }

    #[test]
    fn triangle_obeys_law_of_cosines() {
        let w = [0.6, 0.6, 0.8];
        let lines = triangle_lines(w).unwrap();
        let chi = WeightVector::new(1.0, w.to_vec()).unwrap();
        let l = SubspaceSystem::new(2, lines.to_vec(), &ToleranceConfig::default()).unwrap();
        let res = residual_orthoscalar(&l.projections(&ToleranceConfig::default()).unwrap(), &chi).unwrap();
        assert!(res < 1e-12);
        // |<u1,u2>|² = (1 + n1·n2)/2 with n1·n2 = cos θ
        let overlap = (lines[0].adjoint() * &lines[1])[(0, 0)].norm_sqr();
        let cos = (w[2] * w[2] - w[0] * w[0] - w[1] * w[1]) / (2.0 * w[0] * w[1]);
        assert!((overlap - (1.0 + cos) / 2.0).abs() < 1e-12);
    }
}
