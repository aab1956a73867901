//! Necessary conditions on the multiplier of the non-parabolic fixed point:
//! Yoccoz-type tangent discs in the log-multiplier plane, the practical
//! bound `Re tau < 5 nu^2 log(1/nu + 1)`, the absolute bound
//! `|zeta| <= (3 + sqrt 5)/2`, and parameter/dynamical lune membership.
//!
//! These are exclusion tests only: failing one shows a parameter is outside
//! the connectedness locus, passing all of them shows nothing.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::correspondence::{
    alpha_fixed_point, cov_branches, j_involution, Parameter, SpherePoint,
};
use crate::sturmian::RotationNumber;
use crate::{Error, Result};

/// `(3 + sqrt 5)/2`, the sharp bound for `|zeta|`.
pub const ABS_BOUND: f64 = 2.618_033_988_749_895;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YoccozDisc {
    pub rotation: RotationNumber,
    pub radius: f64,
    /// Radius taken from the exact multiplier of `a^(q-1) b`.
    pub sharpened: bool,
}

impl YoccozDisc {
    /// Tangency point `2 pi i p/q` on the imaginary axis.
    pub fn tangency(&self) -> Complex64 {
        Complex64::new(0.0, TAU * self.rotation.to_f64())
    }

    pub fn center(&self) -> Complex64 {
        self.tangency() + self.radius
    }

    pub fn contains(&self, tau: Complex64) -> bool {
        tau.re >= (tau - self.tangency()).norm_sqr() / (2.0 * self.radius)
    }
}

/// `2p log(ceil(q/p) + 1)/q^2` with `p` the minority count.
pub fn disc_radius(r: RotationNumber) -> f64 {
    let p = r.minority();
    let q = r.q();
    let pf = p as f64;
    let qf = q as f64;
    2.0 * pf * ((q.div_ceil(p) + 1) as f64).ln() / (qf * qf)
}

/// `log mu(a^(q-1) b)/q^2 = 2 log(((q+1) + sqrt(q^2 + 2q - 3))/2)/q^2`.
pub fn sharpened_radius(q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::Precondition(format!("sharpened radius needs q >= 2, got {q}")));
    }
    let qf = q as f64;
    let lambda = ((qf + 1.0) + (qf * qf + 2.0 * qf - 3.0).sqrt()) / 2.0;
    Ok(2.0 * lambda.ln() / (qf * qf))
}

/// Whether `tau` lies in the closed disc tangent to the imaginary axis at
/// `2 pi i p/q` with radius [`disc_radius`].
pub fn in_disc(tau: Complex64, r: RotationNumber) -> bool {
    YoccozDisc {
        rotation: r,
        radius: disc_radius(r),
        sharpened: false,
    }
    .contains(tau)
}

/// Principal `tau = log|zeta| + i Arg zeta`.
pub fn log_multiplier(zeta: Complex64) -> Complex64 {
    Complex64::new(zeta.norm().ln(), zeta.arg())
}

/// `Re tau < factor * nu^2 log(1/nu + 1)` with `nu = Arg zeta / 2 pi`.
/// Requires `0 < Arg zeta < pi`; conjugate first otherwise.
pub fn cor2_admissible(zeta: Complex64, factor: f64) -> Result<bool> {
    let arg = zeta.arg();
    if !(arg > 0.0 && arg < PI) {
        return Err(Error::Domain(format!(
            "Arg zeta = {arg} is outside (0, pi); conjugate first"
        )));
    }
    let nu = arg / TAU;
    Ok(zeta.norm().ln() < factor * nu * nu * (1.0 / nu + 1.0).ln())
}

pub const COR2_FACTOR: f64 = 5.0;
pub const COR2_FACTOR_SHARP: f64 = 4.0;

pub fn abs_bound_ok(zeta: Complex64) -> bool {
    zeta.norm() <= ABS_BOUND
}

/// Discs for every `p/q <= 1/2` with `q <= q_max`, plus `1/16`; the `1/q`
/// discs use [`sharpened_radius`]. Sorted by `q`, then `p`.
pub fn disc_atlas(q_max: u64) -> Result<Vec<YoccozDisc>> {
    if q_max < 2 {
        return Err(Error::Precondition(format!("q_max must be >= 2, got {q_max}")));
    }
    let mut out = Vec::new();
    let mut push = |p: u64, q: u64| -> Result<()> {
        let rotation = RotationNumber::new(p, q)?;
        let (radius, sharpened) = if p == 1 {
            (sharpened_radius(q)?, true)
        } else {
            (disc_radius(rotation), false)
        };
        out.push(YoccozDisc {
            rotation,
            radius,
            sharpened,
        });
        Ok(())
    };
    for q in 2..=q_max {
        for p in 1..=q / 2 {
            if num_integer::gcd(p, q) == 1 {
                push(p, q)?;
            }
        }
    }
    if q_max < 16 {
        push(1, 16)?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParameterVerdict {
    pub zeta: Complex64,
    pub tau: Complex64,
    pub abs_ok: bool,
    /// `None` when `zeta` is real and the test does not apply.
    pub cor2_ok: Option<bool>,
}

impl ParameterVerdict {
    pub fn excluded(&self) -> bool {
        !self.abs_ok || self.cor2_ok == Some(false)
    }
}

/// Apply the multiplier conditions to `a`, conjugating `zeta` into the
/// upper half-plane first.
pub fn test_parameter(p: &Parameter, factor: f64) -> Result<ParameterVerdict> {
    let zeta = alpha_fixed_point(p)?.zeta;
    let upper = if zeta.im < 0.0 { zeta.conj() } else { zeta };
    let cor2_ok = cor2_admissible(upper, factor).ok();
    Ok(ParameterVerdict {
        zeta,
        tau: log_multiplier(upper),
        abs_ok: abs_bound_ok(zeta),
        cor2_ok,
    })
}

/// Parameter lune bounded by arcs through `1` and `7` with tangents at
/// `+-theta` at `1`: the intersection of the discs centred at `4 -+ di`
/// of radius `sqrt(9 + d^2)`, `d = 3 cot theta`. Compared in squared form
/// so the vertex `a = 7` lands exactly on the boundary.
pub fn param_lune_contains(theta: f64, a: Complex64) -> Result<bool> {
    if !(PI / 12.0..=PI / 2.0).contains(&theta) {
        return Err(Error::Precondition(format!(
            "lune angle {theta} outside [pi/12, pi/2]"
        )));
    }
    let d = 3.0 / theta.tan();
    let r2 = 9.0 + d * d;
    let x = a.re - 4.0;
    let lower = x * x + (a.im + d) * (a.im + d);
    let upper = x * x + (a.im - d) * (a.im - d);
    Ok(lower <= r2 && upper <= r2)
}

/// `z = (a - 1)(Z - 1)/(a - Z)`: sends `1` to `0`, `a` to infinity and the
/// dynamical lune to the sector `|arg z| < alpha`.
pub fn to_sector_coordinate(a: Complex64, z: SpherePoint) -> SpherePoint {
    match z {
        SpherePoint::Infinity => SpherePoint::Finite(-(a - 1.0)),
        SpherePoint::Finite(big) => {
            let den = a - big;
            if den.norm() == 0.0 {
                SpherePoint::Infinity
            } else {
                SpherePoint::Finite((a - 1.0) * (big - 1.0) / den)
            }
        }
    }
}

/// Inverse of [`to_sector_coordinate`].
pub fn from_sector_coordinate(a: Complex64, z: SpherePoint) -> SpherePoint {
    match z {
        SpherePoint::Infinity => SpherePoint::Finite(a),
        SpherePoint::Finite(z) => {
            let den = z + (a - 1.0);
            if den.norm() == 0.0 {
                SpherePoint::Infinity
            } else {
                SpherePoint::Finite((a * z + (a - 1.0)) / den)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynLuneReport {
    pub alpha: f64,
    pub samples: usize,
    pub images: usize,
    /// Images with `|arg z| > alpha + margin`, other than the vertex `0`.
    pub violations: usize,
    /// Images landing on the vertex `z = 0` (the parabolic point).
    pub vertex_hits: usize,
    /// Largest `|arg z| - alpha` over images away from the vertex.
    pub max_excess: f64,
    pub worst_sample: Option<Complex64>,
    pub worst_image: Option<Complex64>,
}

/// Angular slack for images near the vertex, where `Z - 1` loses digits.
pub const DEFAULT_MARGIN: f64 = 1e-8;

/// Distance from the vertex below which an image counts as the point `1`.
pub const VERTEX_TOL: f64 = 1e-12;

/// Boundary-heavy samples of the closed sector `|arg z| <= alpha`: 30% on
/// each ray, 40% inside, radii log-spaced over `[1e-6, 1e6]`, plus both
/// vertices.
pub fn sector_samples(alpha: f64, n: usize) -> Vec<SpherePoint> {
    let n_ray = (3 * n) / 10;
    let n_in = n.saturating_sub(2 * n_ray + 2);
    let radius = |k: usize, m: usize| {
        let t = (k as f64 + 0.5) / m.max(1) as f64;
        10f64.powf(-6.0 + 12.0 * t)
    };
    let mut out = Vec::with_capacity(n);
    out.push(SpherePoint::Finite(Complex64::new(0.0, 0.0)));
    out.push(SpherePoint::Infinity);
    for k in 0..n_ray {
        let r = radius(k, n_ray);
        out.push(Complex64::from_polar(r, alpha).into());
        out.push(Complex64::from_polar(r, -alpha).into());
    }
    // interior: a grid of radii times angles
    let n_ang = ((n_in as f64).sqrt().ceil() as usize).max(1);
    let n_rad = n_in.div_ceil(n_ang).max(1);
    'grid: for i in 0..n_rad {
        for j in 0..n_ang {
            if out.len() >= n.max(2) {
                break 'grid;
            }
            let phi = -alpha + 2.0 * alpha * (j as f64 + 0.5) / n_ang as f64;
            out.push(Complex64::from_polar(radius(i, n_rad), phi).into());
        }
    }
    out
}

fn check_images(a: Complex64, p: &Parameter, alpha: f64, margin: f64, s: SpherePoint) -> Vec<(f64, Complex64)> {
    let big = from_sector_coordinate(a, s);
    let (w1, w2) = cov_branches(big);
    [w1, w2]
        .into_iter()
        .map(|w| {
            let img = to_sector_coordinate(a, j_involution(p, w));
            match img {
                SpherePoint::Infinity => (f64::INFINITY, Complex64::new(f64::INFINITY, 0.0)),
                SpherePoint::Finite(z) if z.norm() < VERTEX_TOL => (f64::NEG_INFINITY, z),
                SpherePoint::Finite(z) => (z.arg().abs() - alpha - margin, z),
            }
        })
        .collect()
}

fn run_lune(alpha: f64, a: Complex64, n_samples: usize, margin: f64) -> Result<DynLuneReport> {
    let p = Parameter::new(a)?;
    let samples = sector_samples(alpha, n_samples);
    let per_sample: Vec<Vec<(f64, Complex64)>> = samples
        .par_iter()
        .map(|&s| check_images(a, &p, alpha, margin, s))
        .collect();
    let mut report = DynLuneReport {
        alpha,
        samples: samples.len(),
        images: 0,
        violations: 0,
        vertex_hits: 0,
        max_excess: f64::NEG_INFINITY,
        worst_sample: None,
        worst_image: None,
    };
    for (s, imgs) in samples.iter().zip(per_sample) {
        for (excess, z) in imgs {
            report.images += 1;
            if excess == f64::NEG_INFINITY {
                report.vertex_hits += 1;
                continue;
            }
            if excess > 0.0 {
                report.violations += 1;
            }
            if excess > report.max_excess {
                report.max_excess = excess;
                report.worst_sample = s.value().or(Some(Complex64::new(f64::INFINITY, 0.0)));
                report.worst_image = Some(z);
            }
        }
    }
    Ok(report)
}

/// Sampling check that both branches of `F_a` map the closed lune of angle
/// `alpha` into the open lune together with the parabolic point, in the
/// sector coordinate. Requires `pi/3 <= alpha <= pi/2` and `a` in the
/// parameter lune of angle `alpha` or `a = 7`.
pub fn dyn_lune_check(alpha: f64, a: Complex64, n_samples: usize, margin: f64) -> Result<DynLuneReport> {
    if !(PI / 3.0 - 1e-12..=PI / 2.0).contains(&alpha) {
        return Err(Error::Precondition(format!(
            "lune angle {alpha} outside [pi/3, pi/2]"
        )));
    }
    if a != Complex64::new(7.0, 0.0) && !param_lune_contains(alpha, a)? {
        return Err(Error::Precondition(format!(
            "a = {a} is outside the parameter lune of angle {alpha}"
        )));
    }
    run_lune(alpha, a, n_samples, margin)
}

/// Same sampling without the preconditions, for probing angles below
/// `pi/3` where containment is expected to fail.
pub fn dyn_lune_probe(alpha: f64, a: Complex64, n_samples: usize, margin: f64) -> Result<DynLuneReport> {
    if !(alpha > 0.0 && alpha <= PI / 2.0) {
        return Err(Error::Precondition(format!("probe angle {alpha} outside (0, pi/2]")));
    }
    run_lune(alpha, a, n_samples, margin)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcSample {
    pub t: f64,
    pub a: Complex64,
    pub e: Complex64,
    pub verdict: ParameterVerdict,
}

/// Parameters `b = it` for `n` log-spaced `t` in `[t_min, t_max]`.
pub fn arc_exclusion_scan(t_min: f64, t_max: f64, n: usize, factor: f64) -> Result<Vec<ArcSample>> {
    if !(t_min > 0.0 && t_max > t_min && n >= 2) {
        return Err(Error::Precondition(format!(
            "need 0 < t_min < t_max and n >= 2, got [{t_min}, {t_max}], n = {n}"
        )));
    }
    (0..n)
        .into_par_iter()
        .map(|k| {
            let t = t_min * (t_max / t_min).powf(k as f64 / (n - 1) as f64);
            let b = Complex64::new(0.0, t);
            let p = Parameter::from_b(b)?;
            let e = crate::correspondence::e_value_b(b)?;
            Ok(ArcSample {
                t,
                a: p.a(),
                e,
                verdict: test_parameter(&p, factor)?,
            })
        })
        .collect()
}
