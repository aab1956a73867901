//! Words in the generators `alpha = [[1,1],[0,1]]` and `beta = [[1,0],[1,1]]`
//! of the modular group, with exact traces, fixed points and multipliers.
//!
//! A word acts as a Möbius map with its rightmost letter applied first, so
//! its matrix is the left-to-right product of the letter matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::surd::QuadSurd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Alpha,
    Beta,
}

impl Letter {
    pub fn swapped(self) -> Self {
        match self {
            Letter::Alpha => Letter::Beta,
            Letter::Beta => Letter::Alpha,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Alpha => 'a',
            Letter::Beta => 'b',
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::Alpha => Mat2::from_i64(1, 1, 0, 1),
            Letter::Beta => Mat2::from_i64(1, 0, 1, 1),
        }
    }

    /// `alpha(z) = z + 1`, `beta(z) = z / (z + 1)`.
    pub fn apply(self, x: &QuadSurd) -> Option<QuadSurd> {
        x.apply_mobius(&self.matrix().rows())
    }

    pub fn apply_inverse(self, x: &QuadSurd) -> Option<QuadSurd> {
        x.apply_mobius(&self.matrix().inverse().rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn rows(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl TraceClass {
    pub fn of_trace(t: &BigInt) -> Self {
        let two = BigInt::from(2);
        let abs = t.abs();
        if abs > two {
            TraceClass::Hyperbolic
        } else if abs == two {
            TraceClass::Parabolic
        } else {
            TraceClass::Elliptic
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceClass::Elliptic => "elliptic",
            TraceClass::Parabolic => "parabolic",
            TraceClass::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointPair {
    /// Repelling fixed point.
    pub minus: QuadSurd,
    /// Attracting fixed point.
    pub plus: QuadSurd,
}

/// `lambda` is the larger eigenvalue of the word matrix, `mu = lambda^2` the
/// derivative of the word at its repelling fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    pub lambda: QuadSurd,
    pub mu: QuadSurd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
    matrix: Mat2,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidInput("empty word".into()));
        }
        let matrix = letters
            .iter()
            .fold(Mat2::identity(), |m, l| m.mul(&l.matrix()));
        Ok(Self { letters, matrix })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }

    pub fn class(&self) -> TraceClass {
        TraceClass::of_trace(&self.trace())
    }

    pub fn alpha_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::Alpha).count()
    }

    pub fn swapped(&self) -> Word {
        Word::new(self.letters.iter().map(|l| l.swapped()).collect()).expect("nonempty")
    }

    pub fn rotated(&self, k: usize) -> Word {
        let mut v = self.letters.clone();
        let n = v.len();
        v.rotate_left(k % n);
        Word::new(v).expect("nonempty")
    }

    /// Least cyclic rotation with `alpha < beta`.
    pub fn canonical_rotation(&self) -> Word {
        let n = self.len();
        let best = (0..n)
            .min_by(|&i, &j| {
                let a = self.letters[i..].iter().chain(&self.letters[..i]);
                let b = self.letters[j..].iter().chain(&self.letters[..j]);
                a.cmp(b)
            })
            .unwrap_or(0);
        self.rotated(best)
    }

    pub fn is_cyclic_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.canonical_rotation().letters == other.canonical_rotation().letters
    }

    fn require_hyperbolic(&self) -> Result<()> {
        let has_alpha = self.letters.contains(&Letter::Alpha);
        let has_beta = self.letters.contains(&Letter::Beta);
        if !(has_alpha && has_beta) {
            return Err(Error::NotHyperbolic {
                word: self.to_string(),
                class: "parabolic",
            });
        }
        match self.class() {
            TraceClass::Hyperbolic => Ok(()),
            c => Err(Error::NotHyperbolic {
                word: self.to_string(),
                class: c.name(),
            }),
        }
    }

    /// Fixed points `((a - d) -+ sqrt(t^2 - 4)) / (2c)`.
    pub fn fixed_points(&self) -> Result<FixedPointPair> {
        self.require_hyperbolic()?;
        let m = &self.matrix;
        let t = self.trace();
        let disc = &t * &t - BigInt::from(4);
        let two_c = BigInt::from(2) * &m.c;
        let amd = &m.a - &m.d;
        let minus = QuadSurd::new(amd.clone(), -BigInt::one(), disc.clone(), two_c.clone())?;
        let plus = QuadSurd::new(amd, BigInt::one(), disc, two_c)?;
        Ok(FixedPointPair { minus, plus })
    }

    pub fn multiplier(&self) -> Result<Multiplier> {
        self.require_hyperbolic()?;
        let t = self.trace();
        let disc = &t * &t - BigInt::from(4);
        let lambda = QuadSurd::new(t.clone(), BigInt::one(), disc.clone(), 2.into())?;
        let mu = QuadSurd::new(&t * &t - BigInt::from(2), t, disc, 2.into())?;
        Ok(Multiplier { lambda, mu })
    }

    /// Exact image of `x`; `None` means infinity.
    pub fn apply(&self, x: &QuadSurd) -> Option<QuadSurd> {
        x.apply_mobius(&self.matrix.rows())
    }

    /// Derivative `1 / (c x + d)^2` of the word at `x`.
    pub fn derivative_at(&self, x: &QuadSurd) -> Option<QuadSurd> {
        let lin = x
            .checked_mul(&QuadSurd::from_int(self.matrix.c.clone()))?
            .checked_add(&QuadSurd::from_int(self.matrix.d.clone()))?;
        lin.checked_mul(&lin)?.recip()
    }

    /// Periodic cycle through a fixed point: the point itself, then its images
    /// under the right-hand suffixes of the word, rightmost letter first.
    pub fn orbit_cycle(&self, start: &QuadSurd) -> Result<Vec<QuadSurd>> {
        let mut out = Vec::with_capacity(self.len());
        let mut x = start.clone();
        for l in self.letters.iter().rev() {
            out.push(x.clone());
            x = l
                .apply(&x)
                .ok_or_else(|| Error::Pole("cycle passes through infinity".into()))?;
        }
        if x != *start {
            return Err(Error::InvalidInput(format!("{start} is not fixed by {self}")));
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `a`/`b` or the Greek letters.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a' | 'A' | 'α' => Ok(Letter::Alpha),
                'b' | 'B' | 'β' => Ok(Letter::Beta),
                other => Err(Error::Parse(format!("unexpected letter `{other}` in word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}
