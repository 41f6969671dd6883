//! Root data for quadruples of subspaces: the Tits form, the deficiency,
//! the labeled discrete families of real roots, and the continuous family
//! `S_μ` with its degenerate members `S_{i,j}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{c64, ComplexMatrix, ToleranceConfig, C64};
use crate::systems::{dimension_vector, SubspaceSystem};
use crate::weights::{Weight, WeightVector};

fn require_quadruple<T>(w: &WeightVector<T>) -> Result<()> {
    if w.tail.len() == 4 {
        Ok(())
    } else {
        Err(Error::NotQuadruple(w.tail.len()))
    }
}

/// `T(d) = Σ d_i² + d_0² − d_0 Σ d_i` for quadruple dimensions.
pub fn tits_form(d: &WeightVector<i64>) -> Result<i64> {
    require_quadruple(d)?;
    let sum: i64 = d.tail.iter().sum();
    let squares: i64 = d.tail.iter().map(|x| x * x).sum();
    Ok(squares + d.head * d.head - d.head * sum)
}

/// `2 w_0 − Σ w_i`.
pub fn def_form<T: Weight>(w: &WeightVector<T>) -> Result<T> {
    require_quadruple(w)?;
    Ok(w.head.clone() + w.head.clone() - w.tail_sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootTag {
    RealRoot,
    ImaginaryRoot,
    NotRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootClass {
    pub tag: RootTag,
    pub tits_value: i64,
    /// Set only for the minimal imaginary root `σ = (2;1,1,1,1)`.
    pub minimal: bool,
}

pub const MINIMAL_IMAGINARY_ROOT: [i64; 5] = [2, 1, 1, 1, 1];

pub fn classify_root(d: &WeightVector<i64>) -> Result<RootClass> {
    let tits_value = tits_form(d)?;
    let tag = match tits_value {
        1 => RootTag::RealRoot,
        0 => RootTag::ImaginaryRoot,
        _ => RootTag::NotRoot,
    };
    let minimal = tag == RootTag::ImaginaryRoot && d.to_vec() == MINIMAL_IMAGINARY_ROOT;
    Ok(RootClass {
        tag,
        tits_value,
        minimal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Three equal tail entries; the odd one sits at `variant` (1-based).
    D4 { variant: usize },
    /// Four equal tail entries.
    D0,
}

/// A labeled discrete family `D(size_param, label_sign)`.
///
/// The label sign is the printed deficiency label (`±1` for D4, `±2` for D0),
/// which is the negative of [`def_form`] of the dimension. For D0 with sign
/// `+2` the first argument is cosmetic: both `2m` and `2m+1` name the
/// dimension `(2m+1; m+1, m+1, m+1, m+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteFamily {
    pub kind: FamilyKind,
    pub size_param: i64,
    pub label_sign: i64,
}

impl DiscreteFamily {
    pub fn new(kind: FamilyKind, size_param: i64, label_sign: i64) -> Result<Self> {
        let f = Self {
            kind,
            size_param,
            label_sign,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn d4(variant: usize, size_param: i64, label_sign: i64) -> Result<Self> {
        Self::new(FamilyKind::D4 { variant }, size_param, label_sign)
    }

    pub fn d0(size_param: i64, label_sign: i64) -> Result<Self> {
        Self::new(FamilyKind::D0, size_param, label_sign)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidLabel(format!("{self}: {why}")));
        if self.size_param < 1 {
            return bad("size parameter must be at least 1");
        }
        match self.kind {
            FamilyKind::D4 { variant } => {
                if !(1..=4).contains(&variant) {
                    return bad("D4 variant must be in 1..=4");
                }
                if self.label_sign != 1 && self.label_sign != -1 {
                    return bad("D4 label sign must be +1 or -1");
                }
            }
            FamilyKind::D0 => {
                if self.label_sign != 2 && self.label_sign != -2 {
                    return bad("D0 label sign must be +2 or -2");
                }
                if self.label_sign == -2 && self.size_param % 2 == 0 {
                    return bad("D0 with sign -2 needs an odd size parameter");
                }
            }
        }
        Ok(())
    }

    /// The `m` of the printed label.
    pub fn m(&self) -> i64 {
        self.size_param / 2
    }

    /// Distinguished (odd) tail position, zero-based, for D4 families.
    pub fn distinguished(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::D4 { variant } => Some(variant - 1),
            FamilyKind::D0 => None,
        }
    }
}

impl fmt::Display for DiscreteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::D4 { variant } => write!(f, "D{variant}({}, {})", self.size_param, self.label_sign),
            FamilyKind::D0 => write!(f, "D0({}, {})", self.size_param, self.label_sign),
        }
    }
}

pub fn discrete_dimension(f: &DiscreteFamily) -> Result<WeightVector<i64>> {
    f.validate()?;
    let s = f.size_param;
    let m = f.m();
    let odd = s % 2 == 1;
    let (head, common, special) = match (f.kind, f.label_sign, odd) {
        (FamilyKind::D4 { .. }, -1, true) => (s, m, m + 1),
        (FamilyKind::D4 { .. }, 1, true) => (s, m + 1, m),
        (FamilyKind::D4 { .. }, -1, false) => (s, m, m - 1),
        (FamilyKind::D4 { .. }, 1, false) => (s, m, m + 1),
        (FamilyKind::D0, -2, _) => (s, m, m),
        (FamilyKind::D0, 2, _) => (2 * m + 1, m + 1, m + 1),
        _ => unreachable!("validated label"),
    };
    let mut tail = vec![common; 4];
    if let Some(pos) = f.distinguished() {
        tail[pos] = special;
    }
    WeightVector::new(head, tail)
}

/// Inverse of [`discrete_dimension`]: the family whose dimension is `d`.
pub fn recognize_discrete(d: &WeightVector<i64>) -> Option<DiscreteFamily> {
    if d.tail.len() != 4 || !d.is_valid_dimension() || d.head < 1 {
        return None;
    }
    let h = d.head;
    let t = &d.tail;
    if t.iter().all(|&x| x == t[0]) {
        let p = t[0];
        return if h == 2 * p + 1 {
            DiscreteFamily::d0(h, -2).ok()
        } else if h == 2 * p - 1 {
            DiscreteFamily::d0(h, 2).ok()
        } else {
            None
        };
    }
    // exactly one entry differs from the other three
    let odd_pos = (0..4).find(|&i| {
        let others: Vec<i64> = (0..4).filter(|&j| j != i).map(|j| t[j]).collect();
        others.iter().all(|&x| x == others[0]) && t[i] != others[0]
    })?;
    let p = t[(odd_pos + 1) % 4];
    let q = t[odd_pos];
    let variant = odd_pos + 1;
    let sign = if h % 2 == 1 {
        let m = (h - 1) / 2;
        match (p - m, q - m) {
            (0, 1) => -1,
            (1, 0) => 1,
            _ => return None,
        }
    } else {
        let m = h / 2;
        match (p - m, q - m) {
            (0, -1) => -1,
            (0, 1) => 1,
            _ => return None,
        }
    };
    DiscreteFamily::d4(variant, h, sign).ok()
}

/// `S_μ = (⟨e1, e2⟩; ⟨e1⟩, ⟨e2⟩, ⟨e1 + μ e2⟩, ⟨e1 + e2⟩)`.
pub fn continuous_system(mu: C64) -> Result<SubspaceSystem> {
    if !(mu.re.is_finite() && mu.im.is_finite()) {
        return Err(Error::NonFinite("mu"));
    }
    if mu.norm() == 0.0 || (mu - c64(1.0, 0.0)).norm() == 0.0 {
        return Err(Error::DegenerateParameter(format!("{mu}")));
    }
    let line = |a: C64, b: C64| ComplexMatrix::from_column_slice(2, 1, &[a, b]);
    let one = c64(1.0, 0.0);
    let zero = c64(0.0, 0.0);
    SubspaceSystem::new(
        2,
        vec![line(one, zero), line(zero, one), line(one, mu), line(one, one)],
        &ToleranceConfig::default(),
    )
}

/// `S_{i,j}`: subspaces `i` and `j` (1-based) both equal `⟨e1 + e2⟩`, the
/// remaining two positions carry `⟨e1⟩` and `⟨e2⟩` in increasing order.
pub fn degenerate_system(i: usize, j: usize) -> Result<SubspaceSystem> {
    if !(1 <= i && i < j && j <= 4) {
        return Err(Error::InvalidIndices(i, j));
    }
    let one = c64(1.0, 0.0);
    let zero = c64(0.0, 0.0);
    let line = |a: C64, b: C64| ComplexMatrix::from_column_slice(2, 1, &[a, b]);
    let mut rest = [line(one, zero), line(zero, one)].into_iter();
    let bases = (1..=4)
        .map(|k| {
            if k == i || k == j {
                line(one, one)
            } else {
                rest.next().expect("two free positions")
            }
        })
        .collect();
    SubspaceSystem::new(2, bases, &ToleranceConfig::default())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContinuousParameter {
    Mu(C64),
    /// `V3` coincides with another subspace; `pair` is the coinciding pair
    /// (1-based, increasing).
    Degenerate {
        pair: (usize, usize),
    },
}

/// Relative determinant below which two lines in `C²` count as equal.
const LINE_COINCIDENCE_TOL: f64 = 1e-9;

fn line_vector(l: &SubspaceSystem, i: usize) -> [C64; 2] {
    let b = l.basis(i);
    [b[(0, 0)], b[(1, 0)]]
}

fn lines_coincide(u: [C64; 2], v: [C64; 2]) -> bool {
    let det = u[0] * v[1] - u[1] * v[0];
    let scale = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt() * (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    det.norm() <= LINE_COINCIDENCE_TOL * scale
}

fn require_sigma(l: &SubspaceSystem) -> Result<()> {
    let d = dimension_vector(l);
    if d.to_vec() != MINIMAL_IMAGINARY_ROOT {
        return Err(Error::WrongDimension(d.to_string()));
    }
    Ok(())
}

/// First coinciding pair of lines in a `(2;1,1,1,1)` system, if any.
pub fn coincident_pair(l: &SubspaceSystem) -> Result<Option<(usize, usize)>> {
    require_sigma(l)?;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if lines_coincide(line_vector(l, i), line_vector(l, j)) {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// Recovers `μ` by sending `V1 → ⟨e1⟩`, `V2 → ⟨e2⟩`, `V4 → ⟨e1+e2⟩` and
/// reading `V3 = ⟨e1 + μ e2⟩`.
pub fn continuous_parameter(l: &SubspaceSystem) -> Result<ContinuousParameter> {
    require_sigma(l)?;
    let [v1, v2, v3, v4] = [0, 1, 2, 3].map(|i| line_vector(l, i));
    if lines_coincide(v1, v2) || lines_coincide(v1, v4) || lines_coincide(v2, v4) {
        return Err(Error::CoincidentAnchors);
    }
    for (k, v) in [(1, v1), (2, v2), (4, v4)] {
        if lines_coincide(v3, v) {
            let pair = if k < 3 { (k, 3) } else { (3, k) };
            return Ok(ContinuousParameter::Degenerate { pair });
        }
    }
    // v4 = α v1 + β v2
    let det = v1[0] * v2[1] - v1[1] * v2[0];
    let alpha = (v4[0] * v2[1] - v4[1] * v2[0]) / det;
    let beta = (v1[0] * v4[1] - v1[1] * v4[0]) / det;
    // v3 = γ v1 + δ v2, and in the frame (α v1, β v2) its coordinates are (γ/α, δ/β)
    let gamma = (v3[0] * v2[1] - v3[1] * v2[0]) / det;
    let delta = (v1[0] * v3[1] - v1[1] * v3[0]) / det;
    Ok(ContinuousParameter::Mu((delta / beta) / (gamma / alpha)))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::numerics::{random_complex, random_invertible, seeded_rng};
    use crate::systems::is_brick;
    use proptest::prelude::*;

    fn wv(v: &[i64]) -> WeightVector<i64> {
        WeightVector::from_slice(v).unwrap()
    }

    #[test]
    fn tits_examples() {
        assert_eq!(tits_form(&wv(&[2, 1, 1, 1, 1])).unwrap(), 0);
        assert_eq!(tits_form(&wv(&[3, 1, 1, 1, 2])).unwrap(), 1);
        assert_eq!(tits_form(&wv(&[1, 0, 0, 0, 0])).unwrap(), 1);
        assert_eq!(tits_form(&wv(&[2, 1, 1, 1])), Err(Error::NotQuadruple(3)));
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(def_form(&wv(&[1, 0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(def_form(&wv(&[1, 0, 0, 0, 0])).unwrap(), 2);
        assert_eq!(def_form(&wv(&[2, 1, 1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn classification_examples() {
        let c = classify_root(&wv(&[2, 1, 1, 1, 1])).unwrap();
        assert_eq!((c.tag, c.minimal), (RootTag::ImaginaryRoot, true));
        let c = classify_root(&wv(&[4, 2, 2, 2, 2])).unwrap();
        assert_eq!((c.tag, c.minimal), (RootTag::ImaginaryRoot, false));
        assert_eq!(classify_root(&wv(&[3, 1, 1, 1, 2])).unwrap().tag, RootTag::RealRoot);
        assert_eq!(classify_root(&wv(&[2, 2, 0, 0, 0])).unwrap().tag, RootTag::NotRoot);
    }

    #[test]
    fn family_table() {
        let d = |f: DiscreteFamily| discrete_dimension(&f).unwrap().to_vec();
        assert_eq!(d(DiscreteFamily::d4(4, 3, -1).unwrap()), vec![3, 1, 1, 1, 2]);
        assert_eq!(d(DiscreteFamily::d4(4, 2, -1).unwrap()), vec![2, 1, 1, 1, 0]);
        assert_eq!(d(DiscreteFamily::d0(1, -2).unwrap()), vec![1, 0, 0, 0, 0]);
        assert_eq!(d(DiscreteFamily::d4(2, 3, 1).unwrap()), vec![3, 2, 1, 2, 2]);
        assert_eq!(d(DiscreteFamily::d4(1, 4, 1).unwrap()), vec![4, 3, 2, 2, 2]);
        // printed label D0(2m, 2) and the odd form D0(2m+1, 2) agree
        assert_eq!(d(DiscreteFamily::d0(4, 2).unwrap()), vec![5, 3, 3, 3, 3]);
        assert_eq!(d(DiscreteFamily::d0(5, 2).unwrap()), vec![5, 3, 3, 3, 3]);
        assert!(DiscreteFamily::d4(5, 3, 1).is_err());
        assert!(DiscreteFamily::d4(1, 3, 2).is_err());
        assert!(DiscreteFamily::d0(2, -2).is_err());
        assert!(DiscreteFamily::d0(0, 2).is_err());
    }

    #[test]
    fn label_sign_is_opposite_of_def_form() {
        for m in 1..=6 {
            for f in all_families(m) {
                let d = discrete_dimension(&f).unwrap();
                assert_eq!(def_form(&d).unwrap(), -f.label_sign, "{f}");
            }
        }
    }

    pub(crate) fn all_families(m: i64) -> Vec<DiscreteFamily> {
        let mut out = Vec::new();
        for variant in 1..=4 {
            for sign in [-1, 1] {
                out.push(DiscreteFamily::d4(variant, 2 * m + 1, sign).unwrap());
                out.push(DiscreteFamily::d4(variant, 2 * m, sign).unwrap());
            }
        }
        out.push(DiscreteFamily::d0(2 * m + 1, -2).unwrap());
        out.push(DiscreteFamily::d0(2 * m + 1, 2).unwrap());
        out
    }

    #[test]
    fn families_are_real_roots_and_recognized() {
        for m in 1..=20 {
            for f in all_families(m) {
                let d = discrete_dimension(&f).unwrap();
                assert_eq!(classify_root(&d).unwrap().tag, RootTag::RealRoot, "{f} -> {d}");
                let back = recognize_discrete(&d).expect("recognized");
                assert_eq!(discrete_dimension(&back).unwrap(), d);
            }
        }
        assert!(recognize_discrete(&wv(&[2, 1, 1, 1, 1])).is_none());
    }

    #[test]
    fn continuous_family() {
        let s = continuous_system(c64(2.0, 0.0)).unwrap();
        assert_eq!(s.basis(2)[(1, 0)], c64(2.0, 0.0));
        assert!(matches!(
            continuous_system(c64(0.0, 0.0)),
            Err(Error::DegenerateParameter(_))
        ));
        assert!(matches!(
            continuous_system(c64(1.0, 0.0)),
            Err(Error::DegenerateParameter(_))
        ));
        assert!(is_brick(
            &continuous_system(c64(-1.0, 0.0)).unwrap(),
            &ToleranceConfig::default()
        ));
    }

    #[test]
    fn degenerate_family() {
        let s34 = degenerate_system(3, 4).unwrap();
        let expected =
            SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]], &[&[1.0, 1.0]]]).unwrap();
        assert_eq!(s34, expected);
        assert!(is_brick(&s34, &ToleranceConfig::default()));
        assert_eq!(dimension_vector(&s34).to_vec(), MINIMAL_IMAGINARY_ROOT);
        assert!(matches!(degenerate_system(4, 3), Err(Error::InvalidIndices(4, 3))));
        assert!(matches!(degenerate_system(0, 3), Err(Error::InvalidIndices(0, 3))));
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let s = degenerate_system(i, j).unwrap();
            assert_eq!(coincident_pair(&s).unwrap(), Some((i, j)));
            assert!(is_brick(&s, &ToleranceConfig::default()));
        }
    }

    #[test]
    fn parameter_round_trip_and_degenerate() {
        let p = continuous_parameter(&continuous_system(c64(2.0, 0.0)).unwrap()).unwrap();
        assert_eq!(p, ContinuousParameter::Mu(c64(2.0, 0.0)));
        let p = continuous_parameter(&degenerate_system(3, 4).unwrap()).unwrap();
        assert_eq!(p, ContinuousParameter::Degenerate { pair: (3, 4) });
        assert_eq!(
            continuous_parameter(&degenerate_system(1, 2).unwrap()),
            Err(Error::CoincidentAnchors)
        );
        let triple = SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]]]).unwrap();
        assert!(matches!(continuous_parameter(&triple), Err(Error::WrongDimension(_))));
    }

    #[test]
    fn parameter_is_isomorphism_invariant() {
        let mut rng = seeded_rng(5);
        let mu = c64(2.0, 1.0);
        let s = continuous_system(mu).unwrap();
        for _ in 0..10 {
            let r = random_invertible(2, &mut rng);
            match continuous_parameter(&s.transformed(&r).unwrap()).unwrap() {
                ContinuousParameter::Mu(got) => assert!((got - mu).norm() < 1e-10),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn parameter_round_trip_random() {
        let mut rng = seeded_rng(9);
        for _ in 0..100 {
            let mu = random_complex(&mut rng) * 2.0;
            if mu.norm() < 1e-3 || (mu - c64(1.0, 0.0)).norm() < 1e-3 {
                continue;
            }
            match continuous_parameter(&continuous_system(mu).unwrap()).unwrap() {
                ContinuousParameter::Mu(got) => assert!((got - mu).norm() < 1e-10),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn forms_are_permutation_invariant(
            head in 0i64..30,
            tail in proptest::collection::vec(0i64..30, 4),
            perm in Just([0usize, 1, 2, 3]).prop_shuffle(),
        ) {
            let d = WeightVector::new(head, tail).unwrap();
            let p = d.permuted(&perm);
            prop_assert_eq!(tits_form(&d).unwrap(), tits_form(&p).unwrap());
            prop_assert_eq!(def_form(&d).unwrap(), def_form(&p).unwrap());
        }
    }
}
