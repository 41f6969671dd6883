//! Weight vectors `(w0; w1, ..., wn)`.
//!
//! The same container carries generalized dimensions (integer entries) and
//! characters of orthoscalar relations (real or rational entries). Arithmetic
//! is generic over [`Weight`], which also fixes how equalities and strict
//! inequalities are decided: exactly for integers and rationals, with an
//! absolute tolerance of [`FLOAT_EQ_TOL`] for floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute tolerance for equality (and strictness) tests on float weights.
pub const FLOAT_EQ_TOL: f64 = 1e-12;

pub trait Weight:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
{
    fn from_int(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Equality with zero under the type's comparison policy.
    fn is_zero_weight(&self) -> bool;
    /// Strict positivity under the type's comparison policy.
    fn is_positive(&self) -> bool;

    fn is_nonnegative(&self) -> bool {
        self.is_positive() || self.is_zero_weight()
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero_weight()
    }
    fn is_finite_weight(&self) -> bool {
        true
    }
}

impl Weight for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero_weight(&self) -> bool {
        self.abs() <= FLOAT_EQ_TOL
    }
    fn is_positive(&self) -> bool {
        *self > FLOAT_EQ_TOL
    }
    fn is_finite_weight(&self) -> bool {
        self.is_finite()
    }
}

impl Weight for i64 {
    fn from_int(v: i64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn is_zero_weight(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
}

impl Weight for Rational64 {
    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero_weight(&self) -> bool {
        self.is_zero()
    }
    fn is_positive(&self) -> bool {
        *self > Rational64::zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T = f64> {
    pub head: T,
    pub tail: Vec<T>,
}

impl<T: Weight> WeightVector<T> {
    pub fn new(head: T, tail: Vec<T>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::InvalidWeights("tail must be nonempty".into()));
        }
        if !head.is_finite_weight() || tail.iter().any(|w| !w.is_finite_weight()) {
            return Err(Error::NonFinite("weight vector"));
        }
        Ok(Self { head, tail })
    }

    /// Build from a flat slice `[w0, w1, ..., wn]`.
    pub fn from_slice(values: &[T]) -> Result<Self> {
        match values.split_first() {
            Some((head, tail)) => Self::new(head.clone(), tail.to_vec()),
            None => Err(Error::InvalidWeights("empty weight vector".into())),
        }
    }

    /// Number of tail entries (the number of subspaces).
    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn tail_sum(&self) -> T {
        self.tail.iter().cloned().fold(T::zero(), |acc, w| acc + w)
    }

    pub fn to_vec(&self) -> Vec<T> {
        std::iter::once(self.head.clone())
            .chain(self.tail.iter().cloned())
            .collect()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> WeightVector<U> {
        WeightVector {
            head: f(&self.head),
            tail: self.tail.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> WeightVector<f64> {
        self.map(Weight::to_f64)
    }

    pub fn scaled(&self, factor: T) -> Self {
        self.map(|w| w.clone() * factor.clone())
    }

    /// Entry-wise equality under the type's comparison policy.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.head.approx_eq(&other.head)
            && self.tail.iter().zip(&other.tail).all(|(a, b)| a.approx_eq(b))
    }

    /// Valid character: `w0 >= 0` and every tail entry strictly positive.
    pub fn is_valid_character(&self) -> bool {
        self.head.is_nonnegative() && self.tail.iter().all(Weight::is_positive)
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        WeightVector {
            head: self.head.clone(),
            tail: order.iter().map(|&i| self.tail[i].clone()).collect(),
        }
    }
}

impl WeightVector<i64> {
    /// Checks the dimension-vector invariants: nonnegative entries, tail <= head.
    pub fn is_valid_dimension(&self) -> bool {
        self.head >= 0 && self.tail.iter().all(|&d| d >= 0 && d <= self.head)
    }

    pub fn to_rational(&self) -> WeightVector<Rational64> {
        self.map(|&v| Rational64::from_integer(v))
    }
}

impl<T: fmt::Display> fmt::Display for WeightVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.head)?;
        for (i, w) in self.tail.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {w}")?;
        }
        write!(f, ")")
    }
}

fn parse_entries<T, F>(s: &str, parse: F) -> Result<WeightVector<T>>
where
    T: Weight,
    F: Fn(&str) -> Option<T>,
{
    let cleaned: String = s
        .chars()
        .map(|c| if c == ';' { ',' } else { c })
        .filter(|c| !matches!(c, '(' | ')'))
        .collect();
    let values = cleaned
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse(t).ok_or_else(|| Error::InvalidWeights(format!("cannot parse entry {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    WeightVector::from_slice(&values)
}

fn parse_fraction(t: &str) -> Option<(f64, f64)> {
    match t.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((t.parse().ok()?, 1.0)),
    }
}

/// Accepts `"a0,a1,...,an"`, `"(a0; a1, ..., an)"` and fractions such as `5/3`.
impl FromStr for WeightVector<f64> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_entries(s, |t| {
            let (n, d) = parse_fraction(t)?;
            (d != 0.0).then(|| n / d)
        })
    }
}

impl FromStr for WeightVector<Rational64> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_entries(s, |t| {
            if let Ok(r) = t.parse::<Rational64>() {
                return Some(r);
            }
            // decimal literal such as 0.25
            let (int, frac) = t.split_once('.')?;
            let neg = int.trim_start().starts_with('-');
            let scale = 10i64.checked_pow(frac.len() as u32)?;
            let int_part: i64 = if int.is_empty() || int == "-" {
                0
            } else {
                int.parse().ok()?
            };
            let frac_part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
            let numer = int_part.abs() * scale + frac_part;
            Some(Rational64::new(if neg { -numer } else { numer }, scale))
        })
    }
}

impl FromStr for WeightVector<i64> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_entries(s, |t| t.parse().ok())
    }
}
