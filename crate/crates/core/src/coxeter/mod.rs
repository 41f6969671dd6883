//! Coxeter maps on weight vectors and their words.
//!
//! Words apply left to right: the first letter acts first. So the pair word
//! `[Bullet, Circle]` sends `d` to `c_circle(c_bullet(d))`, and two such pairs
//! take `(1;0,0,0,1)` to `(3;1,1,1,2)`.
//!
//! A dimension letter and its functor change the character by the *other*
//! map: the bullet functor transforms dimensions by [`c_bullet`] and
//! characters by [`c_circle`], and vice versa. [`CoxeterWord::dual`] swaps
//! letters accordingly.

mod functor;

pub use functor::{apply_functor_word, functor_bullet, functor_circle, functor_minus, functor_plus, UnitarizedSystem};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::roots::{def_form, discrete_dimension, DiscreteFamily, FamilyKind};
use crate::weights::{Weight, WeightVector};

/// `(Σ w_i − w_0; w_1, ..., w_n)`.
pub fn c_circle<T: Weight>(w: &WeightVector<T>) -> WeightVector<T> {
    WeightVector {
        head: w.tail_sum() - w.head.clone(),
        tail: w.tail.clone(),
    }
}

/// `(w_0; w_0 − w_1, ..., w_0 − w_n)`.
pub fn c_bullet<T: Weight>(w: &WeightVector<T>) -> WeightVector<T> {
    WeightVector {
        head: w.head.clone(),
        tail: w.tail.iter().map(|x| w.head.clone() - x.clone()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Circle,
    Bullet,
}

impl Letter {
    pub fn dual(self) -> Self {
        match self {
            Letter::Circle => Letter::Bullet,
            Letter::Bullet => Letter::Circle,
        }
    }

    pub fn apply<T: Weight>(self, w: &WeightVector<T>) -> WeightVector<T> {
        match self {
            Letter::Circle => c_circle(w),
            Letter::Bullet => c_bullet(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoxeterWord {
    pub letters: Vec<Letter>,
}

impl CoxeterWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// `(Bullet, Circle)^k`.
    pub fn pairs(k: usize) -> Self {
        Self::new([Letter::Bullet, Letter::Circle].repeat(k))
    }

    pub fn then(mut self, letter: Letter) -> Self {
        self.letters.push(letter);
        self
    }

    pub fn preceded_by(mut self, letter: Letter) -> Self {
        self.letters.insert(0, letter);
        self
    }

    pub fn dual(&self) -> Self {
        Self::new(self.letters.iter().map(|l| l.dual()).collect())
    }

    /// The inverse word (each letter is an involution).
    pub fn reversed(&self) -> Self {
        Self::new(self.letters.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::Circle => "o",
                Letter::Bullet => "b",
            })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Parses `o`/`b` letters; `+` expands to `o b` and `-` to `b o`.
/// Whitespace and commas are ignored.
impl FromStr for CoxeterWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                'o' | 'O' => letters.push(Letter::Circle),
                'b' | 'B' => letters.push(Letter::Bullet),
                '+' => letters.extend([Letter::Circle, Letter::Bullet]),
                '-' => letters.extend([Letter::Bullet, Letter::Circle]),
                c if c.is_whitespace() || c == ',' => {}
                other => return Err(Error::InvalidLabel(format!("unknown word letter {other:?}"))),
            }
        }
        Ok(Self::new(letters))
    }
}

pub fn apply_word<T: Weight>(word: &CoxeterWord, w: &WeightVector<T>) -> WeightVector<T> {
    word.letters.iter().fold(w.clone(), |acc, l| l.apply(&acc))
}

/// The six composites with closed forms in terms of the deficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `(ċc̊)^{2m}`
    EvenPair(usize),
    /// `(ċc̊)^{2m} ċ`
    EvenPairThenBullet(usize),
    /// `(ċc̊)^{2m+1}`
    OddPair(usize),
    /// `(ċc̊)^{2m+1} ċ`
    OddPairThenBullet(usize),
    /// `c̊ (ċc̊)^{2m}`
    CircleEvenPair(usize),
    /// `c̊ (ċc̊)^{2m+1}`
    CircleOddPair(usize),
}

impl ClosedForm {
    pub fn word(self) -> CoxeterWord {
        match self {
            ClosedForm::EvenPair(m) => CoxeterWord::pairs(2 * m),
            ClosedForm::EvenPairThenBullet(m) => CoxeterWord::pairs(2 * m).then(Letter::Bullet),
            ClosedForm::OddPair(m) => CoxeterWord::pairs(2 * m + 1),
            ClosedForm::OddPairThenBullet(m) => CoxeterWord::pairs(2 * m + 1).then(Letter::Bullet),
            ClosedForm::CircleEvenPair(m) => CoxeterWord::pairs(2 * m).preceded_by(Letter::Circle),
            ClosedForm::CircleOddPair(m) => CoxeterWord::pairs(2 * m + 1).preceded_by(Letter::Circle),
        }
    }

    pub fn all(m: usize) -> [ClosedForm; 6] {
        [
            ClosedForm::EvenPair(m),
            ClosedForm::EvenPairThenBullet(m),
            ClosedForm::OddPair(m),
            ClosedForm::OddPairThenBullet(m),
            ClosedForm::CircleEvenPair(m),
            ClosedForm::CircleOddPair(m),
        ]
    }
}

/// Evaluates a composite through its closed form instead of letter by letter.
pub fn closed_form_iterate<T: Weight>(variant: ClosedForm, w: &WeightVector<T>) -> Result<WeightVector<T>> {
    if w.len() != 4 {
        return Err(Error::NotQuadruple(w.len()));
    }
    let def = def_form(w)?;
    let a0 = w.head.clone();
    let k = |n: usize| T::from_int(n as i64) * def.clone();
    let (head, tail): (T, Vec<T>) = match variant {
        ClosedForm::EvenPair(m) => (k(2 * m) + a0.clone(), w.tail.iter().map(|a| k(m) + a.clone()).collect()),
        ClosedForm::EvenPairThenBullet(m) => (
            k(2 * m) + a0.clone(),
            w.tail.iter().map(|a| k(m) + a0.clone() - a.clone()).collect(),
        ),
        ClosedForm::OddPair(m) => (
            k(2 * m + 1) + a0.clone(),
            w.tail.iter().map(|a| k(m) + a0.clone() - a.clone()).collect(),
        ),
        ClosedForm::OddPairThenBullet(m) => (
            k(2 * m + 1) + a0.clone(),
            w.tail.iter().map(|a| k(m + 1) + a.clone()).collect(),
        ),
        ClosedForm::CircleEvenPair(m) => (
            a0.clone() - k(2 * m + 1),
            w.tail.iter().map(|a| a.clone() - k(m)).collect(),
        ),
        ClosedForm::CircleOddPair(m) => (
            a0.clone() - k(2 * m + 2),
            w.tail.iter().map(|a| a0.clone() - a.clone() - k(m + 1)).collect(),
        ),
    };
    Ok(WeightVector { head, tail })
}

/// One-dimensional base of a discrete family and the dimension word that
/// carries it onto the family's dimension.
pub fn family_chain(f: &DiscreteFamily) -> Result<(WeightVector<i64>, CoxeterWord)> {
    let _ = discrete_dimension(f)?;
    let s = f.size_param as usize;
    let m = s / 2;
    match f.kind {
        FamilyKind::D4 { variant } => {
            let mut tail = vec![0; 4];
            tail[variant - 1] = 1;
            let base = WeightVector::new(1, tail)?;
            let pairs = if s % 2 == 1 { 2 * m } else { 2 * m - 1 };
            let word = CoxeterWord::pairs(pairs);
            let word = if f.label_sign == 1 {
                word.then(Letter::Bullet)
            } else {
                word
            };
            Ok((base, word))
        }
        FamilyKind::D0 => {
            let base = WeightVector::new(1, vec![0; 4])?;
            let word = CoxeterWord::pairs(m);
            let word = if f.label_sign == 2 {
                word.then(Letter::Bullet)
            } else {
                word
            };
            Ok((base, word))
        }
    }
}

/// Character at the base of the chain for a dimension word: undoes the dual
/// word on `chi`.
pub fn character_at_base<T: Weight>(dimension_word: &CoxeterWord, chi: &WeightVector<T>) -> WeightVector<T> {
    apply_word(&dimension_word.dual().reversed(), chi)
}
