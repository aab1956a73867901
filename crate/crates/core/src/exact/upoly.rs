//! Dense univariate polynomials over `Q` with Sturm-chain root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::format_terms;
use crate::{Error, Result};

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

/// Real-root data for a nonzero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootCount {
    pub distinct: usize,
    /// Counted with multiplicity.
    pub total: usize,
    /// `gcd(p, p')`, monic; constant when `p` is squarefree.
    pub repeated_factor: UPoly,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &UPoly) -> (UPoly, UPoly) {
        let db = rhs.degree().expect("division by the zero polynomial");
        let lead = rhs.coeffs[db].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
        while rem.len() > db && !rem.is_empty() {
            let k = rem.len() - 1 - db;
            let c = rem.last().unwrap() / &lead;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => UPoly::default(),
        }
    }

    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p, p', -rem(p, p'), ...` until the remainder vanishes.
    pub fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(r.scale(&rat(-1)));
        }
        chain.pop();
        chain
    }

    fn sign_at_pos_inf(&self) -> i32 {
        self.leading().map_or(0, |l| if l.is_positive() { 1 } else { -1 })
    }

    fn sign_at_neg_inf(&self) -> i32 {
        let s = self.sign_at_pos_inf();
        if self.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Distinct real roots, via the Sturm chain.
    pub fn count_distinct_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial has no root count".into()));
        }
        let chain = self.sturm_chain();
        let at_neg = variations(chain.iter().map(|p| p.sign_at_neg_inf()));
        let at_pos = variations(chain.iter().map(|p| p.sign_at_pos_inf()));
        Ok(at_neg - at_pos)
    }

    /// Distinct and multiplicity-counted real roots. The total is the sum
    /// of distinct counts over `p, gcd(p, p'), gcd(g, g'), ...`.
    pub fn count_real_roots(&self) -> Result<RootCount> {
        let distinct = self.count_distinct_real_roots()?;
        let repeated_factor = self.gcd(&self.derivative());
        let mut total = distinct;
        let mut g = repeated_factor.clone();
        while g.degree().is_some_and(|d| d > 0) {
            total += g.count_distinct_real_roots()?;
            g = g.gcd(&g.derivative());
        }
        Ok(RootCount {
            distinct,
            total,
            repeated_factor,
        })
    }

    /// `1 + max |c_i / c_n|`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().cloned().unwrap_or_else(BigRational::one);
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_default();
        m + BigRational::one()
    }

    /// Count real roots by scanning the grid `k/denom` over the Cauchy
    /// interval: exact zeros plus strict sign changes between nonzero
    /// samples not separated by a zero. Agrees with the Sturm count when
    /// roots are at least `1/denom` apart and simple roots lie off-grid or
    /// on it.
    pub fn sampled_root_count(&self, denom: u64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero polynomial has no root count".into()));
        }
        let n = self.degree().unwrap();
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let big_n = BigInt::from(denom);
        let pows: Vec<BigInt> = (0..=n).map(|i| num_traits::pow(big_n.clone(), i)).collect();
        let bound = (self.cauchy_bound().ceil().to_integer() * &big_n)
            .try_into()
            .map_err(|_| Error::InvalidInput("root bound too large to sample".into()))?;
        let bound: i64 = bound;
        let mut count = 0;
        let mut last_sign = 0i32;
        let mut zero_since = false;
        for k in -bound..=bound {
            let kb = BigInt::from(k);
            // denom^n p(k/denom) by homogeneous Horner.
            let mut acc = ints[n].clone();
            for i in (0..n).rev() {
                acc = acc * &kb + &ints[i] * &pows[n - i];
            }
            let s = if acc.is_zero() {
                0
            } else if acc.is_positive() {
                1
            } else {
                -1
            };
            if s == 0 {
                count += 1;
                zero_since = true;
            } else {
                if last_sign != 0 && s != last_sign && !zero_since {
                    count += 1;
                }
                last_sign = s;
                zero_since = false;
            }
        }
        Ok(count)
    }

    /// The root of a degree-one polynomial.
    pub fn linear_root(&self) -> Option<BigRational> {
        (self.degree() == Some(1)).then(|| -&self.coeffs[0] / &self.coeffs[1])
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let integral = self.coeffs.iter().all(|c| c.is_integer());
        if integral {
            let terms = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| ([i as u32], c.to_integer()))
                .collect();
            return f.write_str(&format_terms(terms, &["U"]));
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*U"),
                _ => format!("({c})*U^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_products() {
        // (U - 1)(U + 2)(U^2 + 1)
        let p = UPoly::from_ints(&[-1, 1])
            .mul(&UPoly::from_ints(&[2, 1]))
            .mul(&UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(p.count_distinct_real_roots().unwrap(), 2);
        assert_eq!(p.sampled_root_count(100).unwrap(), 2);
        // (U - 1)^3 (U + 1)
        let q = UPoly::from_ints(&[-1, 1])
            .mul(&UPoly::from_ints(&[-1, 1]))
            .mul(&UPoly::from_ints(&[-1, 1]))
            .mul(&UPoly::from_ints(&[1, 1]));
        let c = q.count_real_roots().unwrap();
        assert_eq!((c.distinct, c.total), (2, 4));
        assert_eq!(c.repeated_factor, UPoly::from_ints(&[1, -2, 1]));
        assert!(UPoly::default().count_real_roots().is_err());
    }

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[3, 0, -2, 5, 1]);
        let b = UPoly::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_ints(&[64, 64, 96, 40, 25]).to_string(), "25*U^4 + 40*U^3 + 96*U^2 + 64*U + 64");
    }
}
