//! Exact real quadratic surds `(p + q*sqrt(D)) / r` over big integers.
//!
//! Values are kept canonical: `r > 0`, `gcd(p, q, r) = 1`, `D` squarefree
//! (or `D = 1` and `q = 0` for rationals). Squarefree reduction is complete
//! for radicands below 2^127 whose cofactor after trial division is at most
//! two primes; past that the reduction may leave a square factor in `D`,
//! which only matters for equality of representations, not of values.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

const TRIAL_LIMIT_SMALL: u128 = 1 << 21;
const TRIAL_LIMIT_BIG: u64 = 10_000;

/// Split `n > 0` as `k^2 * s`. The flag is false when `s` may still carry
/// a square factor (trial division gave up before `cbrt` of the cofactor).
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt, bool) {
    assert!(n.is_positive(), "squarefree_split needs a positive integer");
    if let Some(small) = n.to_u128() {
        let (k, s, done) = split_u128(small);
        return (BigInt::from(k), BigInt::from(s), done);
    }
    let mut m = n.clone();
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut i = 2u64;
    let mut done = false;
    loop {
        let bi = BigInt::from(i);
        if &bi * &bi * &bi > m {
            done = true;
            break;
        }
        if i > TRIAL_LIMIT_BIG {
            break;
        }
        let mut e = 0u32;
        while (&m % &bi).is_zero() {
            m /= &bi;
            e += 1;
        }
        if e > 0 {
            k *= bi.pow(e / 2);
            if e % 2 == 1 {
                s *= &bi;
            }
        }
        i += if i == 2 { 1 } else { 2 };
    }
    let root = m.sqrt();
    if &root * &root == m {
        k *= root;
    } else {
        s *= m;
    }
    (k, s, done)
}

fn split_u128(mut m: u128) -> (u128, u128, bool) {
    let mut k = 1u128;
    let mut s = 1u128;
    let mut i = 2u128;
    let mut done = false;
    loop {
        if i * i * i > m {
            done = true;
            break;
        }
        if i > TRIAL_LIMIT_SMALL {
            break;
        }
        let mut e = 0u32;
        while m % i == 0 {
            m /= i;
            e += 1;
        }
        if e > 0 {
            k *= i.pow(e / 2);
            if e % 2 == 1 {
                s *= i;
            }
        }
        i += if i == 2 { 1 } else { 2 };
    }
    let root = m.sqrt();
    if root * root == m {
        k *= root;
    } else {
        s *= m;
    }
    (k, s, done)
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

impl QuadSurd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidInput("surd denominator is zero".into()));
        }
        if !q.is_zero() && d.is_negative() {
            return Err(Error::InvalidInput("negative radicand".into()));
        }
        Ok(Self::normalized(p, q, d, r))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::normalized(n.into(), BigInt::zero(), BigInt::one(), BigInt::one())
    }

    pub fn from_ratio(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self> {
        Self::new(n.into(), BigInt::zero(), BigInt::one(), m.into())
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::normalized(x.numer().clone(), BigInt::zero(), BigInt::one(), x.denom().clone())
    }

    /// `sqrt(n)` for `n >= 0`.
    pub fn sqrt_of(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(BigInt::zero(), BigInt::one(), n.into(), BigInt::one())
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut d: BigInt, mut r: BigInt) -> Self {
        if q.is_zero() || d.is_zero() {
            q = BigInt::zero();
            d = BigInt::one();
        } else {
            let (k, s, _) = squarefree_split(&d);
            q *= k;
            d = s;
            if d.is_one() {
                p += &q;
                q = BigInt::zero();
            }
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Self { p, q, d, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.p.clone(), self.r.clone()))
    }

    pub fn conjugate(&self) -> Self {
        Self {
            p: self.p.clone(),
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }

    /// Bring `other` over to this surd's radicand, if the two radicands
    /// generate the same field.
    fn aligned(&self, other: &Self) -> Option<(BigInt, Self)> {
        if self.is_rational() {
            return Some((other.d.clone(), other.clone()));
        }
        if other.is_rational() || other.d == self.d {
            return Some((self.d.clone(), other.clone()));
        }
        // sqrt(D2) = sqrt(D1*D2) / D1 * sqrt(D1)
        let root = perfect_sqrt(&(&self.d * &other.d))?;
        let q = &other.q * root;
        let r = &other.r * &self.d;
        Some((
            self.d.clone(),
            Self {
                p: &other.p * &self.d,
                q,
                d: self.d.clone(),
                r,
            },
        ))
    }

    fn combine(&self, other: &Self) -> Option<(BigInt, Self, Self)> {
        let (d, o) = self.aligned(other)?;
        let mut s = self.clone();
        if s.is_rational() {
            s.d = d.clone();
        }
        let mut o = o;
        if o.is_rational() {
            o.d = d.clone();
        }
        Some((d, s, o))
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let (d, a, b) = self.combine(other)?;
        Some(Self::normalized(
            &a.p * &b.r + &b.p * &a.r,
            &a.q * &b.r + &b.q * &a.r,
            d,
            &a.r * &b.r,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let (d, a, b) = self.combine(other)?;
        Some(Self::normalized(
            &a.p * &b.p + &a.q * &b.q * &d,
            &a.p * &b.q + &b.p * &a.q,
            d,
            &a.r * &b.r,
        ))
    }

    pub fn negated(&self) -> Self {
        Self {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
            r: self.r.clone(),
        }
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(Self::normalized(
            &self.r * &self.p,
            -&self.r * &self.q,
            self.d.clone(),
            norm,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.checked_mul(&other.recip()?)
    }

    pub fn signum(&self) -> Ordering {
        let sp = self.p.sign();
        let sq = self.q.sign();
        match (sp, sq) {
            (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
            (s, Sign::NoSign) | (Sign::NoSign, s) => sign_ord(s),
            (a, b) if a == b => sign_ord(a),
            (a, b) => {
                let pp = &self.p * &self.p;
                let qq = &self.q * &self.q * &self.d;
                match pp.cmp(&qq) {
                    Ordering::Greater => sign_ord(a),
                    Ordering::Less => sign_ord(b),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// Nearest-ish double; when `p` and `q*sqrt(D)` nearly cancel the value
    /// is rewritten as `(p^2 - q^2 D) / (r (p - q sqrt(D)))`.
    pub fn to_f64(&self) -> f64 {
        let r = big_to_f64(&self.r);
        if self.q.is_zero() {
            return ratio_to_f64(&self.p, &self.r);
        }
        let rad = big_to_f64(&self.d).sqrt();
        let opposite = self.p.sign() != self.q.sign() && !self.p.is_zero();
        if opposite {
            let norm = &self.p * &self.p - &self.q * &self.q * &self.d;
            let den = (big_to_f64(&self.p) - big_to_f64(&self.q) * rad) * r;
            big_to_f64(&norm) / den
        } else {
            (big_to_f64(&self.p) + big_to_f64(&self.q) * rad) / r
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let s = if self.q.is_zero() {
            BigInt::zero()
        } else {
            let sq = &self.q * &self.q * &self.d;
            let root = sq.sqrt();
            let exact = &root * &root == sq;
            if self.q.is_positive() {
                root
            } else if exact {
                -root
            } else {
                -root - 1
            }
        };
        (&self.p + s).div_floor(&self.r)
    }

    /// Image under `z -> (a z + b)/(c z + d)`; `None` if the image is infinity.
    pub fn apply_mobius(&self, m: &[[BigInt; 2]; 2]) -> Option<Self> {
        let num = self
            .checked_mul(&Self::from_int(m[0][0].clone()))?
            .checked_add(&Self::from_int(m[0][1].clone()))?;
        let den = self
            .checked_mul(&Self::from_int(m[1][0].clone()))?
            .checked_add(&Self::from_int(m[1][1].clone()))?;
        num.checked_div(&den)
    }

    /// Exact rendering, e.g. `(1+2*sqrt(3))/1`.
    pub fn exact_string(&self) -> String {
        if self.q.is_zero() {
            return format!("({})/{}", self.p, self.r);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        format!(
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

fn sign_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

pub(crate) fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    BigRational::new(n.clone(), d.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Some(diff) => diff.is_zero(),
            None => false,
        }
    }
}

impl QuadSurd {
    /// Exact comparison, also across different quadratic fields: with
    /// `other = y0 + y1` split into rational and surd parts, compare
    /// `s = self - y0` with `y1`, squaring once when their signs differ.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Some(d) = self.checked_sub(other) {
            return d.signum();
        }
        let y0 = QuadSurd::from_rational(&BigRational::new(other.p.clone(), other.r.clone()));
        let y1 = other.checked_sub(&y0).expect("same field");
        let s = self.checked_sub(&y0).expect("rational shift");
        // sign of s - y1
        let a = s.signum();
        let b = y1.signum().reverse();
        if a == b || b == Ordering::Equal {
            return a;
        }
        if a == Ordering::Equal {
            return b;
        }
        let ss = s.checked_mul(&s).expect("same field");
        let yy = y1.checked_mul(&y1).expect("rational square");
        match ss.checked_sub(&yy).expect("rational shift").signum() {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

/// # Panics
/// The ring operations panic when two operands live in different quadratic
/// fields; use the `checked_*` methods when that can happen.
impl crate::ring::Ring for QuadSurd {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn from_int(n: &BigInt) -> Self {
        QuadSurd::from_int(n.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("surds from different fields")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("surds from different fields")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("surds from different fields")
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn is_zero(&self) -> bool {
        QuadSurd::is_zero(self)
    }
}

impl crate::ring::ExactDiv for QuadSurd {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, d: i64, r: i64) -> QuadSurd {
        QuadSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap()
    }

    #[test]
    fn squarefree_reduction() {
        let x = s(0, 1, 12, 1);
        assert_eq!(x.radicand(), &BigInt::from(3));
        assert_eq!(x.q(), &BigInt::from(2));
        let y = s(1, 1, 49, 1);
        assert!(y.is_rational());
        assert_eq!(y.to_rational().unwrap(), BigRational::from_integer(8.into()));
    }

    #[test]
    fn squarefree_split_large() {
        let p = BigInt::from(1_000_003u64);
        let n = &p * &p * BigInt::from(7) * BigInt::from(2u64).pow(90);
        let (k, s, done) = squarefree_split(&n);
        assert!(done);
        assert_eq!(s, BigInt::from(7));
        assert_eq!(&k * &k * &s, n);
    }

    #[test]
    fn gcd_normal_form() {
        let x = s(2, 4, 3, 6);
        assert_eq!((x.p(), x.q(), x.r()), (&1.into(), &2.into(), &3.into()));
        let y = s(1, 1, 3, -2);
        assert_eq!(y.r(), &BigInt::from(2));
        assert_eq!(y.p(), &BigInt::from(-1));
    }

    #[test]
    fn sign_of_nearly_cancelling_value() {
        // 1351/780 is a convergent of sqrt(3) from above
        let x = s(1351, -780, 3, 1);
        assert_eq!(x.signum(), Ordering::Greater);
        let y = s(-1351, 780, 3, 1);
        assert_eq!(y.signum(), Ordering::Less);
        let v = x.to_f64();
        assert!(v > 0.0 && (v - (1351.0 - 780.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((v - 1.0 / (1351.0 + 780.0 * 3f64.sqrt())).abs() / v < 1e-14);
    }

    #[test]
    fn field_arithmetic() {
        let g = s(1, 1, 5, 2);
        // golden ratio: g^2 = g + 1
        assert_eq!(g.checked_mul(&g).unwrap(), g.checked_add(&QuadSurd::from_int(1)).unwrap());
        let inv = g.recip().unwrap();
        assert_eq!(inv, g.checked_sub(&QuadSurd::from_int(1)).unwrap());
        assert!(QuadSurd::from_int(0).recip().is_none());
    }

    #[test]
    fn mixed_radicands() {
        let a = s(0, 1, 3, 1);
        let b = QuadSurd {
            p: 0.into(),
            q: 1.into(),
            d: 12.into(),
            r: 1.into(),
        };
        assert_eq!(a.checked_mul(&QuadSurd::from_int(2)).unwrap(), b);
        assert!(a.checked_add(&s(0, 1, 5, 1)).is_none());
    }

    #[test]
    fn exact_string_form() {
        assert_eq!(s(1, 2, 3, 1).exact_string(), "(1+2*sqrt(3))/1");
        assert_eq!(s(1, -1, 3, 1).exact_string(), "(1-1*sqrt(3))/1");
        assert_eq!(s(3, 0, 1, 4).exact_string(), "(3)/4");
    }

    #[test]
    fn floor_matches_float() {
        for (p, q, d, r) in [(1, 1, 5, 2), (-1, 1, 5, 2), (0, -1, 2, 1), (7, -4, 3, 1), (-3, 0, 1, 2)] {
            let x = s(p, q, d, r);
            assert_eq!(x.floor(), BigInt::from(x.to_f64().floor() as i64), "{x}");
        }
    }

    #[test]
    fn mobius_image() {
        let x = s(-1, 1, 3, 1);
        let m = [[1.into(), 1.into()], [0.into(), 1.into()]];
        assert_eq!(x.apply_mobius(&m).unwrap(), s(0, 1, 3, 1));
        let pole = [[1.into(), 0.into()], [1.into(), 1.into()]];
        assert!(QuadSurd::from_int(-1).apply_mobius(&pole).is_none());
    }

    #[test]
    fn compares_across_fields() {
        let s = |p: i64, q: i64, d: i64, r: i64| {
            QuadSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap()
        };
        // sqrt 3 - 1 = 0.732 > sqrt 2 / 2 = 0.707
        assert!(s(-1, 1, 3, 1) > s(0, 1, 2, 2));
        // 3 - sqrt 2 = 1.586 < sqrt 3 = 1.732
        assert!(s(3, -1, 2, 1) < s(0, 1, 3, 1));
        // -sqrt 5 < -sqrt 3 < 0 < sqrt 2
        assert!(s(0, -1, 5, 1) < s(0, -1, 3, 1));
        assert!(s(0, -1, 3, 1) < QuadSurd::from_int(0));
        assert_eq!(s(1, 1, 2, 1).partial_cmp(&s(1, 1, 2, 1)), Some(Ordering::Equal));
    }
}
