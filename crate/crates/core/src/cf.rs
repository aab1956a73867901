//! Continued fractions, the Minkowski question-mark correspondence with
//! binary expansions, and endpoint extraction for bi-infinite
//! alpha/beta sequences with a position marker.
//!
//! The question-mark map sends `[a0; a1, a2, ...]` to the binary angle
//! with `a0` ones, then `a1` zeros, then `a2` ones, and so on. Decoding goes
//! through run lengths of the bit string.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::surd::QuadSurd;
use crate::word::{Letter, Mat2};
use crate::{Error, Result};

/// Eventually periodic continued fraction `[head; (period)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    head: Vec<u64>,
    period: Vec<u64>,
}

fn primitive<T: PartialEq + Clone>(v: &mut Vec<T>) {
    let n = v.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| v[i] == v[i - d]) {
            v.truncate(d);
            return;
        }
    }
}

impl ContinuedFraction {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if head.is_empty() && period.is_empty() {
            return Err(Error::InvalidInput("empty continued fraction".into()));
        }
        if head.iter().skip(1).any(|&a| a == 0) || period.contains(&0) {
            return Err(Error::InvalidInput(
                "partial quotients after the first must be positive".into(),
            ));
        }
        let mut cf = Self { head, period };
        cf.normalize();
        Ok(cf)
    }

    pub fn finite(terms: Vec<u64>) -> Result<Self> {
        Self::new(terms, Vec::new())
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    fn normalize(&mut self) {
        if self.period.is_empty() {
            let n = self.head.len();
            if n >= 2 && self.head[n - 1] == 1 {
                self.head.pop();
                *self.head.last_mut().expect("n >= 2") += 1;
            }
            return;
        }
        primitive(&mut self.period);
        while let (Some(&h), Some(&p)) = (self.head.last(), self.period.last()) {
            if h != p {
                break;
            }
            self.head.pop();
            self.period.rotate_right(1);
        }
    }

    /// Partial quotient `a_i`.
    pub fn term(&self, i: usize) -> Option<u64> {
        if i < self.head.len() {
            return Some(self.head[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(self.period[(i - self.head.len()) % self.period.len()])
    }

    /// Exact value: rational when finite, a quadratic irrational otherwise.
    pub fn eval(&self) -> QuadSurd {
        let head = convergent_matrix(&self.head);
        if self.period.is_empty() {
            return QuadSurd::from_ratio(head.a, head.c).expect("nonzero denominator");
        }
        let p = convergent_matrix(&self.period);
        // positive root of c y^2 + (d - a) y - b = 0
        let amd = &p.a - &p.d;
        let disc = &amd * &amd + BigInt::from(4) * &p.b * &p.c;
        let y = QuadSurd::new(amd, BigInt::one(), disc, BigInt::from(2) * &p.c)
            .expect("period matrix has c > 0");
        y.apply_mobius(&head.rows()).expect("tail is positive")
    }

    pub fn to_f64(&self) -> f64 {
        self.eval().to_f64()
    }
}

fn convergent_matrix(terms: &[u64]) -> Mat2 {
    terms.iter().fold(Mat2::identity(), |m, &a| {
        m.mul(&Mat2 {
            a: a.into(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        })
    })
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.head.iter().map(u64::to_string).collect();
        if !self.period.is_empty() {
            let p: Vec<String> = self.period.iter().map(u64::to_string).collect();
            parts.push(format!("({})", p.join(",")));
        }
        match parts.split_first() {
            Some((first, rest)) if !rest.is_empty() && !self.head.is_empty() => {
                write!(f, "{};{}", first, rest.join(","))
            }
            _ => write!(f, "{}", parts.join(",")),
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// `0;1,(2,1)` style: the first term, then terms after `;`, with an
    /// optional final parenthesised period.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '[' && *c != ']')
            .collect();
        let bad = || Error::Parse(format!("malformed continued fraction `{s}`"));
        let (pre, per) = match cleaned.find('(') {
            Some(i) => {
                let close = cleaned.rfind(')').ok_or_else(bad)?;
                if close != cleaned.len() - 1 || close < i {
                    return Err(bad());
                }
                (&cleaned[..i], Some(&cleaned[i + 1..close]))
            }
            None => (cleaned.as_str(), None),
        };
        let parse_list = |t: &str| -> Result<Vec<u64>> {
            t.split([',', ';'])
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        let head = parse_list(pre)?;
        let period = match per {
            Some(p) => {
                let v = parse_list(p)?;
                if v.is_empty() {
                    return Err(bad());
                }
                v
            }
            None => Vec::new(),
        };
        ContinuedFraction::new(head, period)
    }
}

/// Eventually periodic binary expansion `0.pre(period)` of a number in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryAngle {
    pre: Vec<bool>,
    period: Vec<bool>,
}

impl BinaryAngle {
    /// The period may not be all ones, except for the angle 1 itself,
    /// which is stored as `0.(1)`.
    pub fn new(pre: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("binary angle needs a period".into()));
        }
        let mut a = Self { pre, period };
        a.normalize();
        Ok(a)
    }

    pub fn one() -> Self {
        Self {
            pre: Vec::new(),
            period: vec![true],
        }
    }

    pub fn zero() -> Self {
        Self {
            pre: Vec::new(),
            period: vec![false],
        }
    }

    pub fn pre(&self) -> &[bool] {
        &self.pre
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn is_one(&self) -> bool {
        self.pre.is_empty() && self.period == [true]
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.period == [false]
    }

    fn normalize(&mut self) {
        primitive(&mut self.period);
        if self.period.iter().all(|&b| b) {
            match self.pre.iter().rposition(|&b| !b) {
                None => {
                    *self = Self::one();
                    return;
                }
                Some(k) => {
                    self.pre.truncate(k + 1);
                    self.pre[k] = true;
                    self.period = vec![false];
                }
            }
        }
        while let (Some(&h), Some(&p)) = (self.pre.last(), self.period.last()) {
            if h != p {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn value(&self) -> BigRational {
        let two = BigInt::from(2);
        let to_int = |bits: &[bool]| {
            bits.iter()
                .fold(BigInt::zero(), |acc, &b| acc * 2 + if b { 1 } else { 0 })
        };
        let m = self.pre.len() as u32;
        let l = self.period.len() as u32;
        let pre = BigRational::new(to_int(&self.pre), two.pow(m));
        let per = BigRational::new(to_int(&self.period), two.pow(l) - 1);
        pre + per / BigRational::from_integer(two.pow(m))
    }

    pub fn from_rational(x: &BigRational) -> Result<Self> {
        if x.is_negative() || x > &BigRational::one() {
            return Err(Error::Domain(format!("{x} is outside [0,1]")));
        }
        if x.is_one() {
            return Ok(Self::one());
        }
        let den = x.denom().clone();
        let mut rem = x.numer().clone();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        let mut bits = Vec::new();
        loop {
            if let Some(&start) = seen.get(&rem) {
                let period = bits.split_off(start);
                return Self::new(bits, period);
            }
            seen.insert(rem.clone(), bits.len());
            rem *= 2;
            if rem >= den {
                rem -= &den;
                bits.push(true);
            } else {
                bits.push(false);
            }
        }
    }
}

impl fmt::Display for BinaryAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "0.{}({})", s(&self.pre), s(&self.period))
    }
}

impl FromStr for BinaryAngle {
    type Err = Error;

    /// `0.1(011)`; a missing period means trailing zeros.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed binary angle `{s}`"));
        let t = s.trim();
        let body = t
            .strip_prefix("0.")
            .or_else(|| t.strip_prefix('.'))
            .ok_or_else(bad)?;
        let bits = |u: &str| -> Result<Vec<bool>> {
            u.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect()
        };
        let (pre, period) = match body.find('(') {
            Some(i) => {
                let rest = body[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                (bits(&body[..i])?, bits(rest)?)
            }
            None => (bits(body)?, vec![false]),
        };
        if period.is_empty() {
            return Err(bad());
        }
        BinaryAngle::new(pre, period)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tail {
    /// The run after the head never ends.
    Infinite,
    Periodic(Vec<u64>),
}

/// Run lengths of an eventually periodic bit string, ones first: a leading
/// zero produces a zero-length initial run.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RunCode {
    head: Vec<u64>,
    tail: Tail,
}

fn runs_from_start(bits: &[bool]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut current = true;
    let mut count = 0u64;
    for &b in bits {
        if b == current {
            count += 1;
        } else {
            out.push(count);
            current = b;
            count = 1;
        }
    }
    out.push(count);
    out
}

fn run_lengths(bits: &[bool]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for (i, &b) in bits.iter().enumerate() {
        if i > 0 && b == bits[i - 1] {
            *out.last_mut().expect("nonempty") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

fn decode_runs(pre: &[bool], period: &[bool]) -> RunCode {
    let m = pre.len();
    let l = period.len();
    let bit = |i: usize| if i < m { pre[i] } else { period[(i - m) % l] };
    if period.iter().all(|&b| b == period[0]) {
        let mut seq = pre.to_vec();
        seq.push(period[0]);
        let mut runs = runs_from_start(&seq);
        runs.pop();
        return RunCode {
            head: runs,
            tail: Tail::Infinite,
        };
    }
    let j = (m + 1..=m + l)
        .find(|&j| bit(j) != bit(j - 1))
        .expect("mixed period changes digit");
    let head_bits: Vec<bool> = (0..j).map(bit).collect();
    let o = (j - m) % l;
    let rotated: Vec<bool> = period[o..].iter().chain(&period[..o]).copied().collect();
    RunCode {
        head: runs_from_start(&head_bits),
        tail: Tail::Periodic(run_lengths(&rotated)),
    }
}

fn digit_bits(terms: &[u64], first_index: usize) -> Vec<bool> {
    let mut out = Vec::new();
    for (k, &a) in terms.iter().enumerate() {
        let one = (first_index + k) % 2 == 0;
        out.extend(std::iter::repeat_n(one, a as usize));
    }
    out
}

/// Minkowski question-mark map on continued fractions.
pub fn question_mark(cf: &ContinuedFraction) -> BinaryAngle {
    let pre = digit_bits(&cf.head, 0);
    if cf.period.is_empty() {
        let last_is_one = (cf.head.len() - 1) % 2 == 0;
        return BinaryAngle::new(pre, vec![!last_is_one]).expect("nonempty period");
    }
    let mut terms = cf.period.clone();
    if terms.len() % 2 == 1 {
        terms.extend_from_slice(&cf.period);
    }
    let period = digit_bits(&terms, cf.head.len());
    BinaryAngle::new(pre, period).expect("nonempty period")
}

/// Inverse question-mark map on `(0,1)`.
pub fn question_mark_inverse(angle: &BinaryAngle) -> Result<ContinuedFraction> {
    if angle.is_zero() || angle.is_one() {
        return Err(Error::DegenerateEndpoint(angle.to_string()));
    }
    let rc = decode_runs(&angle.pre, &angle.period);
    match rc.tail {
        Tail::Infinite => ContinuedFraction::finite(rc.head),
        Tail::Periodic(p) => ContinuedFraction::new(rc.head, p),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EndpointValue {
    NegInfinity,
    Zero,
    Infinity,
    Finite(QuadSurd),
}

impl EndpointValue {
    /// Point of the real projective line; `None` is infinity.
    pub fn projective(&self) -> Option<QuadSurd> {
        match self {
            EndpointValue::NegInfinity | EndpointValue::Infinity => None,
            EndpointValue::Zero => Some(QuadSurd::from_int(0)),
            EndpointValue::Finite(x) => Some(x.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            EndpointValue::NegInfinity => f64::NEG_INFINITY,
            EndpointValue::Zero => 0.0,
            EndpointValue::Infinity => f64::INFINITY,
            EndpointValue::Finite(x) => x.to_f64(),
        }
    }
}

impl fmt::Display for EndpointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndpointValue::NegInfinity => f.write_str("-inf"),
            EndpointValue::Zero => f.write_str("0"),
            EndpointValue::Infinity => f.write_str("inf"),
            EndpointValue::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// `truncated` marks an infinite run after a nonzero prefix: the expansion
/// is cut at that entry and read as a finite continued fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct Endpoints {
    pub minus: EndpointValue,
    pub plus: EndpointValue,
    pub minus_truncated: bool,
    pub plus_truncated: bool,
}

/// Bi-infinite eventually periodic alpha/beta sequence with a marker:
/// `...(left_period)(left_period) left_pre | right_pre (right_period)(right_period)...`.
/// Left words are stored in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolSequence {
    left_period: Vec<Letter>,
    left_pre: Vec<Letter>,
    right_pre: Vec<Letter>,
    right_period: Vec<Letter>,
}

impl SymbolSequence {
    pub fn new(
        left_period: Vec<Letter>,
        left_pre: Vec<Letter>,
        right_pre: Vec<Letter>,
        right_period: Vec<Letter>,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::InvalidInput("sequence periods must be nonempty".into()));
        }
        let mut s = Self {
            left_period,
            left_pre,
            right_pre,
            right_period,
        };
        s.normalize();
        Ok(s)
    }

    /// `...WWW | WWW...`
    pub fn periodic(word: &[Letter]) -> Result<Self> {
        Self::new(word.to_vec(), Vec::new(), Vec::new(), word.to_vec())
    }

    pub fn left_period(&self) -> &[Letter] {
        &self.left_period
    }
    pub fn left_pre(&self) -> &[Letter] {
        &self.left_pre
    }
    pub fn right_pre(&self) -> &[Letter] {
        &self.right_pre
    }
    pub fn right_period(&self) -> &[Letter] {
        &self.right_period
    }

    fn normalize(&mut self) {
        primitive(&mut self.left_period);
        primitive(&mut self.right_period);
        while !self.left_pre.is_empty() && self.left_pre[0] == self.left_period[0] {
            self.left_pre.remove(0);
            self.left_period.rotate_left(1);
        }
        while let (Some(&h), Some(&p)) = (self.right_pre.last(), self.right_period.last()) {
            if h != p {
                break;
            }
            self.right_pre.pop();
            self.right_period.rotate_right(1);
        }
    }

    /// `g_k` for `k >= 0`, read leftwards from the marker.
    pub fn left_letter(&self, k: usize) -> Letter {
        let m = self.left_pre.len();
        if k < m {
            self.left_pre[m - 1 - k]
        } else {
            let l = self.left_period.len();
            self.left_period[l - 1 - (k - m) % l]
        }
    }

    /// `g_{-k}` for `k >= 1`, read rightwards from the marker.
    pub fn right_letter(&self, k: usize) -> Letter {
        assert!(k >= 1, "right letters are indexed from 1");
        let i = k - 1;
        let m = self.right_pre.len();
        if i < m {
            self.right_pre[i]
        } else {
            self.right_period[(i - m) % self.right_period.len()]
        }
    }

    fn left_bits(&self) -> (Vec<bool>, Vec<bool>) {
        let bits = |v: &[Letter]| -> Vec<bool> {
            v.iter().rev().map(|&l| l == Letter::Alpha).collect()
        };
        (bits(&self.left_pre), bits(&self.left_period))
    }

    fn right_bits(&self) -> (Vec<bool>, Vec<bool>) {
        let bits =
            |v: &[Letter]| -> Vec<bool> { v.iter().map(|&l| l == Letter::Alpha).collect() };
        (bits(&self.right_pre), bits(&self.right_period))
    }

    /// The `m_i` (left) runs as a continued-fraction code.
    pub fn left_runs(&self) -> (Vec<u64>, Option<Vec<u64>>) {
        let (pre, per) = self.left_bits();
        split_code(decode_runs(&pre, &per))
    }

    /// The `n_i` (right) runs.
    pub fn right_runs(&self) -> (Vec<u64>, Option<Vec<u64>>) {
        let (pre, per) = self.right_bits();
        split_code(decode_runs(&pre, &per))
    }

    pub fn endpoints(&self) -> Endpoints {
        let (lp, lper) = self.left_bits();
        let (rp, rper) = self.right_bits();
        let (m, mt) = code_value(decode_runs(&lp, &lper));
        let (p, pt) = code_value(decode_runs(&rp, &rper));
        let minus = match m {
            EndpointValue::Infinity => EndpointValue::NegInfinity,
            EndpointValue::Finite(x) => EndpointValue::Finite(x.negated()),
            other => other,
        };
        Endpoints {
            minus,
            plus: p,
            minus_truncated: mt,
            plus_truncated: pt,
        }
    }

    /// Move the marker one place left, past `g_0`.
    pub fn shift(&self) -> SymbolSequence {
        let g0 = self.left_letter(0);
        let mut s = self.clone();
        if s.left_pre.pop().is_none() {
            s.left_period.rotate_right(1);
        }
        s.right_pre.insert(0, g0);
        s.normalize();
        s
    }

    /// Move the marker one place right; inverse of [`SymbolSequence::shift`].
    pub fn shift_right(&self) -> SymbolSequence {
        let mut s = self.clone();
        let g = if s.right_pre.is_empty() {
            let g = s.right_period[0];
            s.right_period.rotate_left(1);
            g
        } else {
            s.right_pre.remove(0)
        };
        s.left_pre.push(g);
        s.normalize();
        s
    }

    /// `g_0^{-1} g_1^{-1} ... g_n^{-1}(z0)`, which tends to `x_minus`.
    pub fn ifs_limit(&self, n: usize, z0: Complex64) -> Complex64 {
        let mut z = z0;
        for k in (0..=n).rev() {
            z = match self.left_letter(k) {
                Letter::Alpha => z - 1.0,
                Letter::Beta => z / (1.0 - z),
            };
        }
        z
    }

    /// `g_{-1} g_{-2} ... g_{-n}(z0)`, which tends to `x_plus`.
    pub fn ifs_limit_plus(&self, n: usize, z0: Complex64) -> Complex64 {
        let mut z = z0;
        for k in (1..=n).rev() {
            z = match self.right_letter(k) {
                Letter::Alpha => z + 1.0,
                Letter::Beta => z / (z + 1.0),
            };
        }
        z
    }
}

fn split_code(rc: RunCode) -> (Vec<u64>, Option<Vec<u64>>) {
    match rc.tail {
        Tail::Infinite => (rc.head, None),
        Tail::Periodic(p) => (rc.head, Some(p)),
    }
}

fn code_value(rc: RunCode) -> (EndpointValue, bool) {
    match rc.tail {
        Tail::Infinite => {
            if rc.head.is_empty() {
                (EndpointValue::Infinity, false)
            } else if rc.head == [0] {
                (EndpointValue::Zero, false)
            } else {
                let cf = ContinuedFraction::finite(rc.head).expect("valid runs");
                (EndpointValue::Finite(cf.eval()), true)
            }
        }
        Tail::Periodic(p) => {
            let cf = ContinuedFraction::new(rc.head, p).expect("valid runs");
            (EndpointValue::Finite(cf.eval()), false)
        }
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[Letter]| v.iter().map(|l| l.as_char()).collect::<String>();
        write!(
            f,
            "...({}){}|{}({})...",
            s(&self.left_period),
            s(&self.left_pre),
            s(&self.right_pre),
            s(&self.right_period)
        )
    }
}
