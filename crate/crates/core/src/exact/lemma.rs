//! The lifted-circle intersection argument, step by step.
//!
//! The circle `(X - 4)^2 + (Y + d)^2 = 9 + d^2` through `1` and `7` is
//! lifted along `W -> W + 1/W` (`W = U + iV`). Its images under rotation by
//! `+-2 pi/3` meet only at `W = -1` when `d^2 <= 3`; this is certified by
//! the resultant in `V`, whose non-trivial factor `Q(U)` has no real root
//! for `0 <= d^2 < 3` because its discriminant does not vanish there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{bareiss_det, sylvester_matrix};
use super::poly::{BigPoly, RingElem, D, U, V};
use super::upoly::UPoly;
use crate::surd::QuadSurd;
use crate::{Error, Result};

/// `2304 = 2^8 3^2`, the constant in `P = 2304 (d^2 + 9)(U + 1)^4 Q`.
pub const P_CONSTANT: i64 = 2304;
/// `143327232 = 2^16 3^7`, up to sign the constant in `Res_U(Q, Q')`.
pub const DISCRIMINANT_CONSTANT: i64 = 143_327_232;
/// Sample values of `d^2` in `(0, 3)` at which `Q` is root-counted, as
/// `(numerator, denominator)`.
pub const SAMPLE_D2: [(i64, i64); 6] = [(0, 1), (1, 2), (1, 1), (2, 1), (5, 2), (14, 5)];

fn u() -> BigPoly {
    BigPoly::var(U)
}
fn v() -> BigPoly {
    BigPoly::var(V)
}
fn d() -> BigPoly {
    BigPoly::var(D)
}
fn c(n: i64) -> BigPoly {
    BigPoly::constant(n)
}
fn s() -> RingElem {
    RingElem::s()
}
fn re(p: BigPoly) -> RingElem {
    RingElem::rational(p)
}

fn rho() -> BigPoly {
    u() * u() + v() * v()
}

/// `rho (rho - 8U + 7) + 2dV(rho - 1) + 2U^2 - 2V^2 - 8U + 1`, as displayed.
pub fn displayed_eq1() -> BigPoly {
    rho() * (rho() - u() * 8 + 7) + d() * v() * (rho() - 1) * 2 + u() * u() * 2
        - v() * v() * 2
        - u() * 8
        + 1
}

/// Substitute `X = U (rho + 1)/rho`, `Y = V (rho - 1)/rho` into the circle,
/// clear `rho^2`, and divide out the common factor `rho`.
pub fn lifted_circle() -> Result<BigPoly> {
    let x = u() * (rho() + 1) - rho() * 4;
    let y = v() * (rho() - 1) + d() * rho();
    let raw = x.clone() * x + y.clone() * y - (d() * d() + 9) * rho() * rho();
    raw.div_exact(&rho())
        .ok_or_else(|| Error::Inexact("lifted circle is not divisible by U^2 + V^2".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Rotation through `+2 pi/3`: substitute `U -> -U/2 + sV/2`,
    /// `V -> -sU/2 - V/2`.
    Plus,
    Minus,
}

fn uv_degree(p: &BigPoly) -> u32 {
    p.terms().map(|(e, _)| e[U] + e[V]).max().unwrap_or(0)
}

/// Rotate a curve `eq(U, V) = 0` in `Z[U, V, d][s]`. The halves are cleared
/// by weighting each term of `(U, V)`-degree `k` with `2^(m - k)` and
/// dividing by `2^m` at the end, `m` the top degree.
pub fn rotate_curve(eq: &RingElem, dir: Direction) -> Result<RingElem> {
    let sg = match dir {
        Direction::Plus => s(),
        Direction::Minus => -s(),
    };
    // 2U and 2V after substitution
    let x = -re(u()) + sg.clone() * re(v());
    let y = -(sg * re(u())) - re(v());
    let m = uv_degree(&eq.p).max(uv_degree(&eq.q));
    let mut acc = RingElem::zero();
    for (part, coef) in [(&eq.p, RingElem::one()), (&eq.q, s())] {
        for (e, k) in part.terms() {
            let weight = BigInt::one() << (m - e[U] - e[V]);
            let mono = x.pow(e[U]) * y.pow(e[V]) * re(d().pow(e[D]));
            acc = acc + mono.scale(&(k * weight)) * coef.clone();
        }
    }
    acc.div_int(&(BigInt::one() << m))
        .ok_or_else(|| Error::Inexact("rotated curve has non-integral coefficients".into()))
}

/// The rotated curve as printed:
/// `rho(rho + 4(U - sV) + 7) - d(sU + V)(rho - 1) - U^2 + V^2 - 2sUV + 4(U - sV) + 1`.
pub fn displayed_eq2() -> RingElem {
    let r = re(rho());
    let uu = re(u());
    let vv = re(v());
    let lin = uu.clone() - s() * vv.clone();
    r.clone() * (r.clone() + lin.clone() * 4 + 7)
        - re(d()) * (s() * uu.clone() + vv.clone()) * (r - 1)
        - uu.clone() * uu.clone()
        + vv.clone() * vv.clone()
        - s() * uu * vv * 2
        + lin * 4
        + 1
}

/// A curve of degree at most four in `V`, coefficients in `Z[U, d][s]`;
/// `coeffs[j]` is the coefficient of `V^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticInV {
    pub coeffs: [RingElem; 5],
}

impl QuarticInV {
    pub fn from_curve(eq: &RingElem) -> Result<Self> {
        if eq.degree_in(V).unwrap_or(0) > 4 {
            return Err(Error::Precondition("curve has degree > 4 in V".into()));
        }
        Ok(Self {
            coeffs: std::array::from_fn(|j| eq.coeff_in(V, j as u32)),
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: std::array::from_fn(|j| self.coeffs[j].conj()),
        }
    }

    /// Leading coefficient first, as the Sylvester matrix wants.
    pub fn descending(&self) -> Vec<RingElem> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

/// The printed `a_0, ..., a_4`.
pub fn displayed_a() -> QuarticInV {
    let uu = || re(u());
    let dd = || re(d());
    let a4 = RingElem::one();
    let a3 = -(s() * 4) - dd();
    let a2 = uu() * uu() * 2 + (-(dd() * s()) + 4) * uu() + 8;
    let a1 = (-(s() * 4) - dd()) * uu() * uu() - s() * uu() * 2 + (dd() - s() * 4);
    let a0 = uu().pow(4)
        + (-(dd() * s()) + 4) * uu().pow(3)
        + uu() * uu() * 6
        + (dd() * s() + 4) * uu()
        + 1;
    QuarticInV {
        coeffs: [a0, a1, a2, a3, a4],
    }
}

/// Determinant of the 8x8 Sylvester matrix in `V`.
pub fn sylvester_resultant(a: &QuarticInV, b: &QuarticInV) -> Result<RingElem> {
    bareiss_det(sylvester_matrix(&a.descending(), &b.descending()))
}

/// `(d^2 + 25)U^4 + 40U^3 + (96 - 12d^2)U^2 + (64 + 16d^2)U + 64`.
pub fn displayed_q() -> BigPoly {
    let d2 = d() * d();
    (d2.clone() + 25) * u().pow(4) + u().pow(3) * 40 + (c(96) - d2.clone() * 12) * u() * u()
        + (d2 * 16 + 64) * u()
        + 64
}

/// `2304 (d^2 + 9)(U + 1)^4 Q(U)`.
pub fn p_factored() -> BigPoly {
    (d() * d() + 9) * (u() + 1).pow(4) * displayed_q() * P_CONSTANT
}

/// `Res_U(Q, Q')` by a 7x7 Sylvester determinant over `Z[d]`.
pub fn q_discriminant() -> Result<BigPoly> {
    let q = displayed_q();
    let coeffs: Vec<BigPoly> = (0..=4).rev().map(|k| q.coeff_in(U, k)).collect();
    let deriv: Vec<BigPoly> = (1..=4)
        .rev()
        .map(|k| q.coeff_in(U, k) * (k as i64))
        .collect();
    bareiss_det(sylvester_matrix(&coeffs, &deriv))
}

/// `-143327232 d^4 (d^2 + 25)(d^2 - 3)(d^2 + 24)^2`.
pub fn displayed_discriminant() -> BigPoly {
    let d2 = || d() * d();
    d().pow(4) * (d2() + 25) * (d2() - 3) * (d2() + 24).pow(2) * (-DISCRIMINANT_CONSTANT)
}

/// `Q` with `d^2` replaced by an exact rational.
pub fn q_specialize(d2: &BigRational) -> Result<UPoly> {
    if d2.is_negative() {
        return Err(Error::Precondition(format!("d^2 = {d2} is negative")));
    }
    let q = displayed_q();
    let mut coeffs = vec![BigRational::zero(); 5];
    for (e, k) in q.terms() {
        if e[D] % 2 == 1 {
            return Err(Error::Inexact("Q has an odd power of d".into()));
        }
        coeffs[e[U] as usize] += BigRational::from_integer(k.clone()) * num_traits::pow(d2.clone(), (e[D] / 2) as usize);
    }
    Ok(UPoly::new(coeffs))
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

/// `U^2 (5U + 4)^2 + 80 (U + 2/5)^2 + 256/5`.
pub fn q_sos_form() -> UPoly {
    let sq = |p: &UPoly| p.mul(p);
    let a = UPoly::from_ints(&[0, 1]).mul(&UPoly::from_ints(&[4, 5]));
    let b = UPoly::new(vec![rat(2, 5), rat(1, 1)]);
    sq(&a).add(&sq(&b).scale(&rat(80, 1))).add(&UPoly::new(vec![rat(256, 5)]))
}

/// `(U + 1)^2 (28U^2 - 16U + 64)`.
pub fn q_boundary_factored() -> UPoly {
    let l = UPoly::from_ints(&[1, 1]);
    l.mul(&l).mul(&UPoly::from_ints(&[64, -16, 28]))
}

#[derive(Clone, Debug, Default)]
pub struct CertificateOptions {
    /// Add one to `a_j` before forming the resultant, leaving every earlier
    /// step untouched.
    pub perturb_a: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub checks: Vec<CheckResult>,
    /// Named polynomials in graded lex order, `U > V > d > s`.
    pub polynomials: Vec<(&'static str, String)>,
    /// Rational repeated root of `Q` at `d^2 = 3`, if found.
    pub boundary_repeated_root: Option<BigRational>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Recorder(Vec<CheckResult>);

impl Recorder {
    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckResult {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Run every step of the intersection argument and record each identity.
/// Only genuine arithmetic failures (inexact divisions) return `Err`.
pub fn lemma9_certificate(opts: &CertificateOptions) -> Result<Certificate> {
    let mut rec = Recorder(Vec::new());
    let mut polys = Vec::new();

    let eq1 = lifted_circle()?;
    rec.check(
        "lifted circle equals displayed equation",
        eq1 == displayed_eq1(),
        "raw substitution divided by U^2 + V^2",
    );
    let w = QuadSurd::new(7.into(), 3.into(), 5.into(), 2.into())?;
    let on_curve = eq1.eval(&[w.clone(), QuadSurd::from_int(0), QuadSurd::from_int(5)]);
    rec.check(
        "lift of Z = 7 lies on the lifted circle",
        on_curve.is_zero(),
        format!("residual at W = {} is {}", w.exact_string(), on_curve.exact_string()),
    );
    let flipped = eq1.eval(&[re(u()), -re(v()), -re(d())]);
    rec.check(
        "d -> -d equals V -> -V",
        flipped.p == eq1,
        "complex-conjugate circle",
    );
    polys.push(("eq1", eq1.to_string()));

    let eq1r = RingElem::rational(eq1.clone());
    let eq2 = rotate_curve(&eq1r, Direction::Plus)?;
    let eq3 = rotate_curve(&eq1r, Direction::Minus)?;
    rec.check("rotation by +2pi/3 equals displayed curve", eq2 == displayed_eq2(), "");
    rec.check("rotation by -2pi/3 is the s-conjugate", eq3 == eq2.conj(), "");
    let thrice = rotate_curve(&rotate_curve(&eq2, Direction::Plus)?, Direction::Plus)?;
    rec.check("three rotations return the original curve", thrice == eq1r, "");
    polys.push(("eq2", eq2.to_string()));
    polys.push(("eq3", eq3.to_string()));

    let a = QuarticInV::from_curve(&eq2)?;
    let shown = displayed_a();
    for j in (0..5).rev() {
        polys.push((A_NAMES[j], a.coeffs[j].to_string()));
    }
    let mismatched: Vec<usize> = (0..5).filter(|&j| a.coeffs[j] != shown.coeffs[j]).collect();
    rec.check(
        "coefficients a_j match the displayed list",
        mismatched.is_empty(),
        if mismatched.is_empty() {
            String::new()
        } else {
            format!("mismatch at a_{mismatched:?}")
        },
    );

    let mut a_in = a.clone();
    if let Some(j) = opts.perturb_a {
        let j = j.min(4);
        a_in.coeffs[j] = a_in.coeffs[j].clone() + 1;
    }
    let b_in = a.conj();
    let p = sylvester_resultant(&a_in, &b_in)?;
    let expected = p_factored();
    rec.check(
        "resultant factors as 2304 (d^2 + 9)(U + 1)^4 Q(U)",
        p.q.is_zero() && p.p == expected,
        if p.q.is_zero() {
            format!("{} terms", p.p.len())
        } else {
            "resultant has a nonzero s-part".to_string()
        },
    );
    polys.push(("P", p.to_string()));
    polys.push(("Q", displayed_q().to_string()));

    let disc = q_discriminant()?;
    let shown_disc = displayed_discriminant();
    let lead_negative = disc.leading_term().is_some_and(|(_, k)| k.is_negative());
    rec.check(
        "Res_U(Q, Q') equals the displayed factorization",
        disc == shown_disc,
        "",
    );
    rec.check("discriminant has negative leading coefficient", lead_negative, "");
    rec.check(
        "143327232 = 2^16 3^7",
        BigInt::from(DISCRIMINANT_CONSTANT) == (BigInt::one() << 16) * BigInt::from(3).pow(7),
        "",
    );
    polys.push(("Res_U(Q, Q')", disc.to_string()));

    for (n, m) in SAMPLE_D2 {
        let d2 = rat(n, m);
        let qd = q_specialize(&d2)?;
        let count = qd.count_real_roots()?;
        rec.check(
            "Q has no real root at sample d^2",
            count.total == 0,
            format!("d^2 = {d2}: {} real roots", count.total),
        );
    }

    let q0 = q_specialize(&rat(0, 1))?;
    rec.check("Q at d = 0 equals its sum-of-squares form", q0 == q_sos_form(), q0.to_string());

    let q3 = q_specialize(&rat(3, 1))?;
    let boundary = q3.count_real_roots()?;
    let root = boundary.repeated_factor.linear_root();
    rec.check(
        "Q at d^2 = 3 factors as (U + 1)^2 (28U^2 - 16U + 64)",
        q3 == q_boundary_factored(),
        q3.to_string(),
    );
    rec.check(
        "Q at d^2 = 3 has the single real root U = -1, repeated",
        boundary.distinct == 1 && boundary.total == 2 && root == Some(rat(-1, 1)),
        format!("distinct {}, with multiplicity {}", boundary.distinct, boundary.total),
    );

    Ok(Certificate {
        checks: rec.0,
        polynomials: polys,
        boundary_repeated_root: root,
    })
}

const A_NAMES: [&str; 5] = ["a0", "a1", "a2", "a3", "a4"];
