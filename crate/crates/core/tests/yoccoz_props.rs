mod common;

use std::f64::consts::{PI, TAU};

use modmat::sturmian::RotationNumber;
use modmat::yoccoz::*;
use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;

fn rotations(q_max: u64) -> impl Iterator<Item = RotationNumber> {
    (2..=q_max).flat_map(|q| {
        (1..q)
            .filter(move |p| p.gcd(&q) == 1)
            .map(move |p| RotationNumber::new(p, q).unwrap())
    })
}

#[test]
fn radius_is_mirror_symmetric() {
    for r in rotations(50) {
        assert_eq!(disc_radius(r).to_bits(), disc_radius(r.mirror()).to_bits(), "{r}");
    }
}

#[test]
fn disc_membership_is_conjugation_invariant() {
    let mut rng = common::rng();
    let all: Vec<RotationNumber> = rotations(12).collect();
    let mut tested = 0;
    for _ in 0..10_000 {
        let r = all[rng.gen_range(0..all.len())];
        let tau = Complex64::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
        let t = Complex64::new(0.0, TAU * r.to_f64());
        let slack = tau.re - (tau - t).norm_sqr() / (2.0 * disc_radius(r));
        if slack.abs() < 1e-9 {
            continue;
        }
        let mirrored = tau.conj() + Complex64::new(0.0, TAU);
        assert_eq!(in_disc(tau, r), in_disc(mirrored, r.mirror()), "tau = {tau}, {r}");
        tested += 1;
    }
    assert!(tested > 9_900);
}

/// The practical bound excludes everything the absolute bound excludes
/// only while `Arg zeta` stays below about `0.3888 * 2 pi = 2.443`, where
/// `5 nu^2 log(1/nu + 1)` reaches `log((3 + sqrt 5)/2)`.
#[test]
fn absolute_bound_failure_implies_practical_failure_below_crossover() {
    let mut rng = common::rng();
    for _ in 0..10_000 {
        let arg = rng.gen_range(1e-6..2.4);
        let modulus = rng.gen_range(2.62..50.0);
        let zeta = Complex64::from_polar(modulus, arg);
        assert!(!abs_bound_ok(zeta));
        assert_eq!(cor2_admissible(zeta, COR2_FACTOR).unwrap(), false, "zeta = {zeta}");
    }
}

/// Past the crossover the implication fails: `|zeta| = 3` at `Arg zeta = 3`
/// breaks the absolute bound but passes the practical one.
#[test]
fn absolute_bound_failure_does_not_imply_practical_failure_near_pi() {
    let zeta = Complex64::from_polar(3.0, 3.0);
    assert!(!abs_bound_ok(zeta));
    assert!(cor2_admissible(zeta, COR2_FACTOR).unwrap());
    let mut rng = common::rng();
    let mut counterexamples = 0;
    for _ in 0..10_000 {
        let zeta = Complex64::from_polar(rng.gen_range(2.62..4.0), rng.gen_range(2.5..PI));
        if cor2_admissible(zeta, COR2_FACTOR).unwrap() {
            counterexamples += 1;
        }
    }
    assert!(counterexamples > 0);
}

#[test]
fn lunes_are_nested() {
    let thetas = [PI / 12.0, PI / 6.0, PI / 4.0, PI / 3.0, 5.0 * PI / 12.0, PI / 2.0];
    let n = 512;
    let mut inside = vec![0usize; thetas.len()];
    for j in 0..n {
        for i in 0..n {
            let a = Complex64::new(
                0.5 + 7.0 * i as f64 / (n - 1) as f64,
                -3.5 + 7.0 * j as f64 / (n - 1) as f64,
            );
            let member: Vec<bool> = thetas.iter().map(|&t| param_lune_contains(t, a).unwrap()).collect();
            for k in 1..thetas.len() {
                assert!(!member[k - 1] || member[k], "a = {a}, theta {}", thetas[k - 1]);
            }
            for (k, m) in member.iter().enumerate() {
                inside[k] += *m as usize;
            }
        }
    }
    assert!(inside.windows(2).all(|w| w[0] < w[1]), "{inside:?}");
}
