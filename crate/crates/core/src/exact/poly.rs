//! Sparse polynomials over `Z` in the variables `U, V, d`, and the ring
//! `Z[U, V, d][s]/(s^2 - 3)` built on top of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{self, ExactDiv};

pub const U: usize = 0;
pub const V: usize = 1;
pub const D: usize = 2;

pub const VAR_NAMES: [&str; 3] = ["U", "V", "d"];

pub type Monomial = [u32; 3];

/// Graded lex with `U > V > d`: larger total degree first.
pub fn grlex_cmp<const N: usize>(a: &[u32; N], b: &[u32; N]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct BigPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(1, e)
    }

    pub fn monomial(c: impl Into<BigInt>, e: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Monomial) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: usize, k: u32) -> BigPoly {
        BigPoly::from_terms(self.terms.iter().filter(|(e, _)| e[var] == k).map(|(e, c)| {
            let mut e = *e;
            e[var] = 0;
            (e, c.clone())
        }))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn scale(&self, k: &BigInt) -> BigPoly {
        if k.is_zero() {
            return BigPoly::zero();
        }
        BigPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn add(&self, rhs: &BigPoly) -> BigPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &BigPoly) -> BigPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn neg(&self) -> BigPoly {
        BigPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &BigPoly) -> BigPoly {
        let mut out = BigPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact division in `Z[U, V, d]`, by repeatedly cancelling the leading
    /// term. `None` when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &BigPoly) -> Option<BigPoly> {
        let (le, lc) = rhs.leading_term()?;
        let (le, lc) = (*le, lc.clone());
        let mut rem = self.clone();
        let mut quot = BigPoly::zero();
        while let Some((e, c)) = rem.leading_term() {
            if (0..3).any(|i| e[i] < le[i]) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qe = [e[0] - le[0], e[1] - le[1], e[2] - le[2]];
            let t = BigPoly::monomial(qc, qe);
            rem = rem.sub(&t.mul(rhs));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn pow(&self, e: u32) -> BigPoly {
        ring::Ring::pow(self, e)
    }

    /// Evaluate in any ring, variables in the order `U, V, d`.
    pub fn eval<R: ring::Ring>(&self, vals: &[R; 3]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = R::from_int(c);
            for (v, &k) in vals.iter().zip(e.iter()) {
                if k > 0 {
                    t = t.mul(&v.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Content-free check used by the certificate: every coefficient
    /// divisible by `k`.
    pub fn divisible_by_int(&self, k: &BigInt) -> bool {
        self.terms.values().all(|c| (c % k).is_zero())
    }
}

impl ring::Ring for BigPoly {
    fn zero() -> Self {
        BigPoly::zero()
    }
    fn one() -> Self {
        BigPoly::constant(1)
    }
    fn from_int(n: &BigInt) -> Self {
        BigPoly::constant(n.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        BigPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BigPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BigPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        BigPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl ExactDiv for BigPoly {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
}

/// Render `(exponents, coefficient)` pairs in graded lex order.
pub(crate) fn format_terms<const N: usize>(
    mut terms: Vec<([u32; N], BigInt)>,
    names: &[&str; N],
) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let vars: Vec<String> = e
            .iter()
            .zip(names.iter())
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
            .collect();
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}

impl fmt::Display for BigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        f.write_str(&format_terms(terms, &VAR_NAMES))
    }
}

/// `p + q s` with `s^2 = 3`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct RingElem {
    pub p: BigPoly,
    pub q: BigPoly,
}

impl RingElem {
    pub fn new(p: BigPoly, q: BigPoly) -> Self {
        Self { p, q }
    }

    pub fn rational(p: BigPoly) -> Self {
        Self { p, q: BigPoly::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigPoly::constant(1))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        ring::Ring::pow(self, e)
    }

    /// The symbol `s` itself.
    pub fn s() -> Self {
        Self::new(BigPoly::zero(), BigPoly::constant(1))
    }

    /// `s -> -s`.
    pub fn conj(&self) -> Self {
        Self::new(self.p.clone(), self.q.neg())
    }

    /// `(p + qs)(p - qs) = p^2 - 3 q^2`.
    pub fn norm(&self) -> BigPoly {
        self.p.mul(&self.p).sub(&self.q.mul(&self.q).scale(&BigInt::from(3)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.p.scale(k), self.q.scale(k))
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        match (self.p.degree_in(var), self.q.degree_in(var)) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        Self::new(self.p.coeff_in(var, k), self.q.coeff_in(var, k))
    }

    pub fn div_int(&self, k: &BigInt) -> Option<Self> {
        let kp = BigPoly::constant(k.clone());
        Some(Self::new(self.p.div_exact(&kp)?, self.q.div_exact(&kp)?))
    }

    /// Terms in the variables `U, V, d, s`.
    pub fn terms4(&self) -> Vec<([u32; 4], BigInt)> {
        let lift = |p: &BigPoly, s: u32| {
            p.terms()
                .map(move |(e, c)| ([e[0], e[1], e[2], s], c.clone()))
                .collect::<Vec<_>>()
        };
        let mut t = lift(&self.p, 0);
        t.extend(lift(&self.q, 1));
        t
    }
}

impl ring::Ring for RingElem {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::rational(BigPoly::constant(1))
    }
    fn from_int(n: &BigInt) -> Self {
        Self::rational(BigPoly::constant(n.clone()))
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(self.p.add(&rhs.p), self.q.add(&rhs.q))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.p.sub(&rhs.p), self.q.sub(&rhs.q))
    }
    fn mul(&self, rhs: &Self) -> Self {
        let qq = self.q.mul(&rhs.q).scale(&BigInt::from(3));
        Self::new(
            self.p.mul(&rhs.p).add(&qq),
            self.p.mul(&rhs.q).add(&self.q.mul(&rhs.p)),
        )
    }
    fn neg(&self) -> Self {
        Self::new(self.p.neg(), self.q.neg())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl ExactDiv for RingElem {
    /// Multiply by the conjugate and divide both parts by the norm.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.q.is_zero() {
            return Some(Self::new(self.p.div_exact(&rhs.p)?, self.q.div_exact(&rhs.p)?));
        }
        let n = rhs.norm();
        let t = ring::Ring::mul(self, &rhs.conj());
        Some(Self::new(t.p.div_exact(&n)?, t.q.div_exact(&n)?))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms4(), &["U", "V", "d", "s"]))
    }
}

macro_rules! ring_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                ring::Ring::add(&self, &rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                ring::Ring::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                ring::Ring::mul(&self, &rhs)
            }
        }
        impl std::ops::Mul<i64> for $t {
            type Output = $t;
            fn mul(self, rhs: i64) -> $t {
                ring::Ring::mul(&self, &<$t as ring::Ring>::from_int(&BigInt::from(rhs)))
            }
        }
        impl std::ops::Add<i64> for $t {
            type Output = $t;
            fn add(self, rhs: i64) -> $t {
                ring::Ring::add(&self, &<$t as ring::Ring>::from_int(&BigInt::from(rhs)))
            }
        }
        impl std::ops::Sub<i64> for $t {
            type Output = $t;
            fn sub(self, rhs: i64) -> $t {
                ring::Ring::sub(&self, &<$t as ring::Ring>::from_int(&BigInt::from(rhs)))
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                ring::Ring::neg(&self)
            }
        }
    };
}

ring_ops!(BigPoly);
ring_ops!(RingElem);

impl From<BigPoly> for RingElem {
    fn from(p: BigPoly) -> Self {
        RingElem::rational(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> BigPoly {
        BigPoly::var(U)
    }
    fn d() -> BigPoly {
        BigPoly::var(D)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = u().add(&d()).add(&BigPoly::constant(1));
        let b = u().sub(&BigPoly::constant(2).mul(&d()));
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(ab.scale(&BigInt::from(2)).div_exact(&BigPoly::constant(3)), None);
    }

    #[test]
    fn grlex_display() {
        let p = BigPoly::from_terms([
            ([1, 0, 0], BigInt::from(-8)),
            ([2, 2, 0], BigInt::from(2)),
            ([4, 0, 0], BigInt::from(1)),
            ([0, 0, 0], BigInt::from(1)),
            ([0, 1, 1], BigInt::from(-1)),
        ]);
        assert_eq!(p.to_string(), "U^4 + 2*U^2*V^2 - V*d - 8*U + 1");
        assert_eq!(BigPoly::zero().to_string(), "0");
    }

    #[test]
    fn ring_elem_reduces_s_squared() {
        let s = RingElem::s();
        assert_eq!(ring::Ring::mul(&s, &s), <RingElem as ring::Ring>::from_int(&BigInt::from(3)));
        let x = RingElem::new(u(), d());
        assert_eq!(ring::Ring::mul(&x, &x.conj()), RingElem::rational(x.norm()));
        assert_eq!(x.to_string(), "d*s + U");
    }

    #[test]
    fn ring_elem_division() {
        let x = RingElem::new(u().add(&BigPoly::constant(1)), d());
        let y = RingElem::new(BigPoly::constant(2), BigPoly::constant(1));
        let xy = ring::Ring::mul(&x, &y);
        assert_eq!(xy.exact_div(&y), Some(x.clone()));
        assert_eq!(xy.exact_div(&x), Some(y));
    }
}
