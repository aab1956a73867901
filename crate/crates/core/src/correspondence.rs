//! The correspondence `F_a = J_a o Cov`, where `Cov` is the deleted
//! covering correspondence `W^2 + ZW + Z^2 = 3` of `Q(Z) = Z^3 - 3Z` and
//! `J_a` is the Möbius involution fixing `1` and `a`.
//!
//! Membership in the standard fundamental domain of `Cov` is decided in the
//! lifted coordinate `Z = w + 1/w`, `|w| >= 1`, where the domain is the open
//! sector `|arg w| < pi/3` and the two branches of `Cov` are the rotations
//! of `w` by `e^{+-2 pi i/3}`.

use num_complex::Complex64;

use crate::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Beyond this modulus `w = Z` to double precision.
const HUGE: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn value(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance on the Riemann sphere.
    pub fn chordal_distance(self, other: SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parameter {
    a: Complex64,
    b: Complex64,
}

impl Parameter {
    pub fn new(a: Complex64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite parameter {a}")));
        }
        if a == Complex64::new(1.0, 0.0) {
            return Err(Error::SingularParameter("1 (the correspondence is undefined)".into()));
        }
        Ok(Self {
            a,
            b: (a - 7.0) / (a - 1.0),
        })
    }

    /// Inverse of `b = (a - 7)/(a - 1)`.
    pub fn from_b(b: Complex64) -> Result<Self> {
        if b == Complex64::new(1.0, 0.0) {
            return Err(Error::SingularParameter("b = 1 corresponds to a = infinity".into()));
        }
        Self::new((b - 7.0) / (b - 1.0))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

/// The two `W` with `W^2 + ZW + Z^2 = 3`.
pub fn cov_branches(z: SpherePoint) -> (SpherePoint, SpherePoint) {
    match z {
        SpherePoint::Infinity => (SpherePoint::Infinity, SpherePoint::Infinity),
        SpherePoint::Finite(z) => {
            let s = (12.0 - 3.0 * z * z).sqrt();
            (((-z + s) / 2.0).into(), ((-z - s) / 2.0).into())
        }
    }
}

/// `J_a(Z) = ((1+a)Z - 2a) / (2Z - (1+a))`.
pub fn j_involution(p: &Parameter, z: SpherePoint) -> SpherePoint {
    let a = p.a;
    let pole = (1.0 + a) / 2.0;
    match z {
        SpherePoint::Infinity => pole.into(),
        SpherePoint::Finite(z) => {
            let den = 2.0 * z - (1.0 + a);
            if den == Complex64::new(0.0, 0.0) {
                return SpherePoint::Infinity;
            }
            if z.norm() > 1.0 {
                // divide through by Z to keep precision for large Z
                let inv = 1.0 / z;
                (((1.0 + a) - 2.0 * a * inv) / (2.0 - (1.0 + a) * inv)).into()
            } else {
                (((1.0 + a) * z - 2.0 * a) / den).into()
            }
        }
    }
}

/// Root `w` of `w + 1/w = Z` with `|w| >= 1`.
pub fn lift(z: Complex64) -> Complex64 {
    if z.norm() > HUGE {
        return z;
    }
    let mut s = (z * z - 4.0).sqrt();
    if (z.conj() * s).re < 0.0 {
        s = -s;
    }
    (z + s) / 2.0
}

fn in_sector(w: Complex64) -> bool {
    w.re > 0.0 && w.im.abs() < SQRT3 * w.re
}

/// Open standard fundamental domain of `Cov`; boundary points, including
/// the parabolic point `Z = 1`, and infinity are outside.
pub fn in_delta_cov(z: SpherePoint) -> bool {
    match z {
        SpherePoint::Infinity => false,
        SpherePoint::Finite(z) => in_sector(lift(z)),
    }
}

/// Standard fundamental domain of `J_a`: the exterior of the circle through
/// `1` and `a` centred on the real axis. When `Re a = 1` the circle is the
/// line `Re Z = 1` and the domain is taken to be `Re Z < 1`.
pub fn in_delta_j(p: &Parameter, z: SpherePoint) -> bool {
    let a = p.a;
    let z = match z {
        SpherePoint::Infinity => return true,
        SpherePoint::Finite(z) => z,
    };
    if a.re == 1.0 {
        return z.re < 1.0;
    }
    let c = (a.norm_sqr() - 1.0) / (2.0 * (a.re - 1.0));
    (z - c).norm() > (1.0 - c).abs()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FStep {
    Escaped,
    Point(SpherePoint),
}

/// Points this close to the parabolic fixed point `Z = 1` are treated as
/// the fixed point itself. It sits on the boundary of the domain of `Cov`,
/// so an orbit that lands on it exactly (as the critical orbit does for
/// `a = 4`) would otherwise be pushed across by rounding.
pub const PARABOLIC_SNAP: f64 = 1e-12;

fn at_parabolic(z: Complex64) -> bool {
    (z - 1.0).norm() < PARABOLIC_SNAP
}

/// The 2-to-1 map `f_a` on the complement of the domain of `Cov`.
pub fn f_map(p: &Parameter, z: SpherePoint) -> FStep {
    if z.value().is_some_and(at_parabolic) {
        return FStep::Point(Complex64::new(1.0, 0.0).into());
    }
    if in_delta_cov(z) {
        return FStep::Escaped;
    }
    let w = match z {
        SpherePoint::Infinity => SpherePoint::Infinity,
        SpherePoint::Finite(_) => {
            let (w1, w2) = cov_branches(z);
            match (in_delta_cov(w1), in_delta_cov(w2)) {
                (true, false) => w1,
                (false, true) => w2,
                (both, _) => {
                    let re = |w: SpherePoint| w.value().map_or(f64::INFINITY, |v| lift(v).re);
                    log::debug!(
                        "branch tie at Z = {:?} (both in domain: {both}); using larger lift",
                        z
                    );
                    if re(w1) >= re(w2) {
                        w1
                    } else {
                        w2
                    }
                }
            }
        }
    };
    FStep::Point(j_involution(p, w))
}

const ROT_CW: Complex64 = Complex64::new(-0.5, -SQRT3 / 2.0);
const ROT_CCW: Complex64 = Complex64::new(-0.5, SQRT3 / 2.0);

/// One step of `f_a` through the lift, with a single square root; agrees
/// with [`f_map`] away from the boundary of the domain.
#[inline]
pub fn f_step_lifted(p: &Parameter, z: Complex64) -> Option<Complex64> {
    if at_parabolic(z) {
        return Some(Complex64::new(1.0, 0.0));
    }
    let w = lift(z);
    if in_sector(w) {
        return None;
    }
    let w = if w.im >= 0.0 { w * ROT_CW } else { w * ROT_CCW };
    let big_w = if w.norm() > HUGE { w } else { w + 1.0 / w };
    match j_involution(p, big_w.into()) {
        SpherePoint::Finite(v) => Some(v),
        SpherePoint::Infinity => Some(Complex64::new(f64::INFINITY, 0.0)),
    }
}

/// Escape time of `z` under `f_a`: first `n < max_iter` with `f^n(z)` in the
/// domain of `Cov`, and the last point computed.
pub fn escape_time(p: &Parameter, z: Complex64, max_iter: u32) -> (Option<u32>, Complex64) {
    let mut z = z;
    for n in 0..max_iter {
        if !z.re.is_finite() || !z.im.is_finite() {
            // infinity maps to the pole of J_a
            z = (1.0 + p.a) / 2.0;
            continue;
        }
        match f_step_lifted(p, z) {
            None => return (Some(n), z),
            Some(next) => z = next,
        }
    }
    (None, z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitResult {
    pub points: Vec<SpherePoint>,
    pub escape_index: Option<usize>,
}

pub fn orbit(p: &Parameter, z: SpherePoint, n_max: usize) -> Result<OrbitResult> {
    if n_max == 0 {
        return Err(Error::Precondition("orbit needs n_max >= 1".into()));
    }
    let mut points = vec![z];
    let mut cur = z;
    for n in 0..n_max {
        match f_map(p, cur) {
            FStep::Escaped => {
                return Ok(OrbitResult {
                    points,
                    escape_index: Some(n),
                })
            }
            FStep::Point(next) => {
                if n + 1 < n_max {
                    points.push(next);
                }
                cur = next;
            }
        }
    }
    Ok(OrbitResult {
        points,
        escape_index: None,
    })
}

/// Critical value `v_a = J_a(2) = 2/(3 - a)`.
pub fn critical_value(p: &Parameter) -> SpherePoint {
    j_involution(p, Complex64::new(2.0, 0.0).into())
}

/// Left side minus right side of
/// `((az+1)/(z+1))^2 + ((az+1)/(z+1))((aw-1)/(w-1)) + ((aw-1)/(w-1))^2 = 3`.
pub fn relation_residual(p: &Parameter, z: Complex64, w: Complex64) -> Complex64 {
    let a = p.a;
    let x = (a * z + 1.0) / (z + 1.0);
    let y = (a * w - 1.0) / (w - 1.0);
    x * x + x * y + y * y - 3.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointData {
    /// Fixed point in the `z` coordinate, `Z = (az + 1)/(z + 1)`.
    pub z0: Complex64,
    pub big_z0: Complex64,
    pub zeta: Complex64,
    /// `None` where `zeta = -1` and `E` has a pole.
    pub e: Option<Complex64>,
}

/// The non-parabolic fixed point `z0 = -sqrt((7 - a)/(3(a + 1)))`, with the
/// principal root, so `z0 < 0` for real `a` in `(-1, 7)`, and its multiplier.
pub fn alpha_fixed_point(p: &Parameter) -> Result<FixedPointData> {
    let a = p.a;
    if a == Complex64::new(-1.0, 0.0) {
        return Err(Error::SingularParameter("-1".into()));
    }
    let z0 = -((7.0 - a) / (3.0 * (a + 1.0))).sqrt();
    let big_z0 = (a * z0 + 1.0) / (z0 + 1.0);
    let n = a * a - 2.0 * a - 11.0;
    let m = (a + 1.0) * (7.0 - a);
    let den = n - m * z0;
    if den.norm() == 0.0 {
        return Err(Error::Pole(format!("multiplier is infinite at a = {a}")));
    }
    let zeta = (n + m * z0) / den;
    let e = (n.norm() != 0.0).then(|| m * z0 / n);
    Ok(FixedPointData {
        z0,
        big_z0,
        zeta,
        e,
    })
}

pub fn multiplier_zeta(p: &Parameter) -> Result<Complex64> {
    alpha_fixed_point(p).map(|d| d.zeta)
}

/// `E = b(4 - b)/(2 + 2b - b^2) * sqrt(b/(b - 4))` with the principal root,
/// which is `-z0`; then `zeta = (1 + E)/(1 - E)`.
pub fn e_value_b(b: Complex64) -> Result<Complex64> {
    let den = 2.0 + 2.0 * b - b * b;
    if den.norm() == 0.0 {
        return Err(Error::Pole(format!("2 + 2b - b^2 vanishes at b = {b}")));
    }
    if b == Complex64::new(4.0, 0.0) {
        return Err(Error::Pole("b = 4".into()));
    }
    Ok(b * (4.0 - b) / den * (b / (b - 4.0)).sqrt())
}

/// `chi(z) = log|(z + i)/(z - i)| / 2` on the upper half-plane.
pub fn green_chi(z: Complex64) -> Result<f64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    let i = Complex64::i();
    if z == i {
        return Err(Error::Pole("chi is infinite at z = i".into()));
    }
    Ok(0.5 * ((z + i) / (z - i)).norm().ln())
}
