//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line with its
//! wall time and panics on failure. Lines go straight to stderr so they show
//! without `--nocapture`.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use modmat::cf::{question_mark, question_mark_inverse, BinaryAngle, ContinuedFraction, EndpointValue, SymbolSequence};
use modmat::correspondence::{alpha_fixed_point, e_value_b, multiplier_zeta, Parameter};
use modmat::exact::{lemma9_certificate, q_boundary_factored, q_specialize, CertificateOptions, UPoly};
use modmat::render::{csv_string, mandel_field, ppm_bytes, GridSpec, Palette};
use modmat::sturmian::{multiplier_bounds, t_word, RotationNumber};
use modmat::surd::QuadSurd;
use modmat::word::{Letter, Word};
use modmat::yoccoz::{
    arc_exclusion_scan, disc_atlas, disc_radius, dyn_lune_check, dyn_lune_probe, in_disc, log_multiplier,
    sharpened_radius, COR2_FACTOR, DEFAULT_MARGIN,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;

const EXAMPLE_BUDGET: Duration = Duration::from_millis(1);
const BOUNDS_BUDGET: Duration = Duration::from_secs(5);
const LEMMA_BUDGET: Duration = Duration::from_secs(10);
const RENDER_BUDGET: Duration = Duration::from_secs(30);

const ZETA_4_TOL: f64 = 1e-12;
const ZETA_TOL: f64 = 1e-10;
const E_ABS: f64 = 0.563171;
const E_ARG: f64 = 0.0749062;
const E_TOL: f64 = 1e-5;
const ZETA_ABS: f64 = 3.54691;
const ZETA_ABS_TOL: f64 = 1e-4;
const ATLAS_TOL: f64 = 1e-12;
const IFS_TOL: f64 = 1e-8;
const IFS_DEPTH: usize = 60;

/// Minimum speedup on two threads counted as near-linear.
const TWO_THREAD_SPEEDUP: f64 = 1.6;

fn criterion(id: u32, name: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match (outcome, budget) {
        (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
        (o, _) => o,
    };
    match outcome {
        Ok(note) => report(format!("PASS [{id:02}] {name} ({elapsed:.2?}) {note}")),
        Err(why) => {
            report(format!("FAIL [{id:02}] {name} ({elapsed:.2?}) {why}"));
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn report(line: String) {
    let _ = writeln!(std::io::stderr().lock(), "{}", line.trim_end());
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadSurd {
    QuadSurd::new(p.into(), q.into(), d.into(), r.into()).unwrap()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn c01_example_word_exact() {
    // Warm up allocations so the budget measures the arithmetic.
    let _ = Word::from_str("aab").unwrap().fixed_points();
    criterion(1, "example word aab exact", Some(EXAMPLE_BUDGET), || {
        let w = Word::from_str("aab").map_err(|e| e.to_string())?;
        let rows = w.matrix().rows();
        let want = [[3, 2], [1, 1]].map(|r| r.map(BigInt::from));
        ensure(rows == want, || format!("matrix {rows:?}"))?;
        let fp = w.fixed_points().map_err(|e| e.to_string())?;
        ensure(fp.minus == surd(1, -1, 3, 1), || format!("x- = {}", fp.minus))?;
        ensure(fp.plus == surd(1, 1, 3, 1), || format!("x+ = {}", fp.plus))?;
        let p = w.orbit_cycle(&fp.minus).map_err(|e| e.to_string())?;
        let want_p = vec![surd(1, -1, 3, 1), surd(-1, -1, 3, 1), surd(0, -1, 3, 1)];
        ensure(p == want_p, || format!("P cycle {p:?}"))?;
        let q = w.orbit_cycle(&fp.plus).map_err(|e| e.to_string())?;
        let want_q = vec![surd(1, 1, 3, 1), surd(-1, 1, 3, 1), surd(0, 1, 3, 1)];
        ensure(q == want_q, || format!("Q cycle {q:?}"))?;
        Ok(String::new())
    });
}

#[test]
fn c02_question_mark_triple() {
    criterion(2, "question mark triple", None, || {
        for (s, n) in [("0;(1,2)", 3), ("1;(1,2)", 5), ("2;(1,2)", 6)] {
            let cf = ContinuedFraction::from_str(s).map_err(|e| e.to_string())?;
            let want = BigRational::new(n.into(), 7.into());
            let got = question_mark(&cf).value();
            ensure(got == want, || format!("?([{s}]) = {got}"))?;
            let angle = BinaryAngle::from_rational(&want).map_err(|e| e.to_string())?;
            let back = question_mark_inverse(&angle).map_err(|e| e.to_string())?;
            ensure(back == cf, || format!("?^-1({want}) = {back}"))?;
        }
        Ok(String::new())
    });
}

#[test]
fn c03_multiplier_bounds() {
    criterion(3, "multiplier bounds", Some(BOUNDS_BUDGET), || {
        let mut checked = 0;
        for q in 2..=20u64 {
            for p in 1..q {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let r = RotationNumber::new(p, q).map_err(|e| e.to_string())?;
                let mu = t_word(r).word.multiplier().map_err(|e| e.to_string())?.mu;
                let (lo, hi) = multiplier_bounds(r);
                ensure(QuadSurd::from_int(lo.clone()) < mu && mu < QuadSurd::from_int(hi.clone()), || {
                    format!("{r}: mu = {mu} not in ({lo}, {hi})")
                })?;
                checked += 1;
            }
        }
        let mut rng = common::rng();
        for _ in 0..200 {
            let r: u32 = rng.gen_range(2..=6);
            let s: u32 = rng.gen_range(1..=6);
            let mut letters = Vec::new();
            for _ in 0..s {
                let run = if rng.gen_bool(0.5) { r - 1 } else { r };
                letters.extend(std::iter::repeat_n(Letter::Alpha, run as usize));
                letters.push(Letter::Beta);
            }
            let w = Word::new(letters).map_err(|e| e.to_string())?;
            let mu = w.multiplier().map_err(|e| e.to_string())?.mu;
            let lo = QuadSurd::from_int(BigInt::from(r).pow(2 * s));
            let hi = QuadSurd::from_int(BigInt::from(r + 2).pow(2 * s));
            ensure(lo < mu && mu < hi, || format!("{w}: mu = {mu}"))?;
        }
        Ok(format!("{checked} rotation numbers, 200 block words"))
    });
}

#[test]
fn c04_zeta_constants() {
    criterion(4, "zeta constants", None, || {
        let zeta = |a: f64| -> Result<Complex64, String> {
            let p = Parameter::new(Complex64::new(a, 0.0)).map_err(|e| e.to_string())?;
            multiplier_zeta(&p).map_err(|e| e.to_string())
        };
        let z4 = zeta(4.0)?;
        let want = Complex64::new(-(3.0 + 5f64.sqrt()) / 2.0, 0.0);
        ensure((z4 - want).norm() < ZETA_4_TOL, || format!("zeta(4) = {z4}"))?;
        let z = zeta(1.0 + 2.0 * 3f64.sqrt())?;
        ensure((z + 1.0).norm() < ZETA_TOL, || format!("zeta(1 + 2 sqrt 3) = {z}"))?;
        let z7 = zeta(7.0)?;
        ensure((z7 - 1.0).norm() < ZETA_TOL, || format!("zeta(7) = {z7}"))?;
        Ok(String::new())
    });
}

#[test]
fn c05_numerics_at_b_i() {
    criterion(5, "E and zeta at b = i", None, || {
        let b = Complex64::new(0.0, 1.0);
        let p = Parameter::from_b(b).map_err(|e| e.to_string())?;
        ensure((p.a() - Complex64::new(4.0, 3.0)).norm() < 1e-14, || format!("a = {}", p.a()))?;
        let fp = alpha_fixed_point(&p).map_err(|e| e.to_string())?;
        let e = fp.e.ok_or("E has a pole")?;
        let e_b = e_value_b(b).map_err(|e| e.to_string())?;
        ensure((e - e_b).norm() < 1e-12, || format!("E = {e} vs E(b) = {e_b}"))?;
        ensure((e.norm() - E_ABS).abs() < E_TOL, || format!("|E| = {}", e.norm()))?;
        ensure((e.arg() - E_ARG).abs() < E_TOL, || format!("arg E = {}", e.arg()))?;
        let za = fp.zeta.norm();
        ensure((za - ZETA_ABS).abs() < ZETA_ABS_TOL, || format!("|zeta| = {za}"))?;
        Ok(format!("|E| = {:.7}, arg E = {:.8}, |zeta| = {za:.6}", e.norm(), e.arg()))
    });
}

#[test]
fn c06_exact_intersection_lemma() {
    criterion(6, "exact resultant chain", Some(LEMMA_BUDGET), || {
        let cert = lemma9_certificate(&CertificateOptions::default()).map_err(|e| e.to_string())?;
        if let Some(f) = cert.first_failure() {
            return Err(format!("{}: {}", f.name, f.detail));
        }
        for needle in [
            "resultant factors as 2304",
            "Res_U(Q, Q') equals the displayed factorization",
            "Q at d = 0 equals its sum-of-squares form",
            "Q at d^2 = 3 factors as",
        ] {
            ensure(cert.checks.iter().any(|c| c.name.contains(needle) && c.passed), || {
                format!("missing check `{needle}`")
            })?;
        }
        Ok(format!("{} checks", cert.checks.len()))
    });
}

#[test]
fn c07_sturm_root_counts() {
    criterion(7, "Sturm root counts", None, || {
        for (n, m) in [(0, 1), (1, 2), (1, 1), (2, 1), (5, 2), (14, 5)] {
            let d2 = BigRational::new(n.into(), m.into());
            let q = q_specialize(&d2).map_err(|e| e.to_string())?;
            let roots = q.count_distinct_real_roots().map_err(|e| e.to_string())?;
            ensure(roots == 0, || format!("{roots} real roots at d^2 = {d2}"))?;
        }
        let q = q_specialize(&BigRational::from_integer(3.into())).map_err(|e| e.to_string())?;
        ensure(q == q_boundary_factored(), || format!("Q at d^2 = 3 is {q}"))?;
        let count = q.count_real_roots().map_err(|e| e.to_string())?;
        ensure(count.distinct == 1 && count.total == 2, || {
            format!("{} distinct, {} total", count.distinct, count.total)
        })?;
        ensure(count.repeated_factor == UPoly::from_ints(&[1, 1]), || {
            format!("repeated factor {}", count.repeated_factor)
        })?;
        ensure(q.eval(&BigRational::from_integer((-1).into())) == BigRational::from_integer(0.into()), || {
            "U = -1 is not a root".into()
        })?;
        Ok(String::new())
    });
}

#[test]
fn c08_yoccoz_atlas() {
    criterion(8, "Yoccoz disc atlas", None, || {
        let atlas = disc_atlas(8).map_err(|e| e.to_string())?;
        let mut expected = Vec::new();
        for q in 2..=8u64 {
            for p in 1..=q / 2 {
                if p.gcd(&q) == 1 {
                    expected.push((p, q));
                }
            }
        }
        expected.push((1, 16));
        let got: Vec<(u64, u64)> = atlas.iter().map(|d| (d.rotation.p(), d.rotation.q())).collect();
        ensure(got == expected, || format!("atlas rotations {got:?}"))?;
        for d in &atlas {
            let (p, q) = (d.rotation.p(), d.rotation.q());
            let qf = q as f64;
            let want = if p == 1 {
                // Logarithm of the exact multiplier of a^(q-1) b.
                let mut letters = vec![Letter::Alpha; q as usize - 1];
                letters.push(Letter::Beta);
                let mu = Word::new(letters).unwrap().multiplier().unwrap().mu.to_f64();
                mu.ln() / (qf * qf)
            } else {
                let m = p.min(q - p) as f64;
                2.0 * m * ((qf / m).ceil() + 1.0).ln() / (qf * qf)
            };
            ensure((d.radius - want).abs() < ATLAS_TOL, || format!("{p}/{q}: {} vs {want}", d.radius))?;
        }
        for q in 2..=50u64 {
            let r = RotationNumber::new(1, q).unwrap();
            let s = sharpened_radius(q).map_err(|e| e.to_string())?;
            ensure(s < disc_radius(r), || format!("q = {q}: {s} >= {}", disc_radius(r)))?;
        }
        let p = Parameter::new(Complex64::new(4.0, 0.0)).map_err(|e| e.to_string())?;
        let zeta = multiplier_zeta(&p).map_err(|e| e.to_string())?;
        let upper = if zeta.im < 0.0 { zeta.conj() } else { zeta };
        let tau = log_multiplier(upper);
        ensure(in_disc(tau, RotationNumber::new(1, 2).unwrap()), || format!("tau(4) = {tau}"))?;
        Ok(format!("{} discs", atlas.len()))
    });
}

#[test]
fn c09_arc_exclusion() {
    criterion(9, "arc exclusion on b = it", None, || {
        let scan = arc_exclusion_scan(0.05, 20.0, 100, COR2_FACTOR).map_err(|e| e.to_string())?;
        ensure(scan.len() == 100, || format!("{} samples", scan.len()))?;
        let kept: Vec<f64> = scan.iter().filter(|s| !s.verdict.excluded()).map(|s| s.t).collect();
        ensure(kept.is_empty(), || format!("not excluded at t = {kept:?}"))?;
        Ok(String::new())
    });
}

#[test]
fn c10_render_sanity() {
    criterion(10, "parameter render", Some(RENDER_BUDGET), || {
        let grid = GridSpec::square(Complex64::new(4.0, 0.0), 3.2, 128, 1000).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let field = in_pool(1, || mandel_field(grid));
        let single = start.elapsed();
        let at = |a: Complex64| {
            let s = grid.pixel_size();
            let i = ((a.re - grid.center.re) / s + grid.width as f64 / 2.0).round() as u32;
            let j = (grid.height as f64 / 2.0 - (a.im - grid.center.im) / s).round() as u32;
            (i, j)
        };
        for a in [4.0, 5.0] {
            let (i, j) = at(Complex64::new(a, 0.0));
            let px = field.get(i, j);
            ensure(px.escape_index.is_none(), || format!("a = {a} escaped at {:?}", px.escape_index))?;
        }
        let (i, j) = at(Complex64::new(1.1, 0.0));
        ensure((grid.point(i, j).re - 1.1).abs() < 1e-9, || format!("pixel {i},{j} is {}", grid.point(i, j)))?;
        ensure(field.get(i, j).escape_index.is_some(), || "a = 1.1 did not escape".into())?;
        for j in 1..grid.height {
            for i in 0..grid.width {
                let (a, b) = (field.get(i, j), field.get(i, grid.height - j));
                ensure(a.escape_index == b.escape_index && a.flag == b.flag, || {
                    format!("asymmetric at ({i}, {j})")
                })?;
            }
        }
        let palette = Palette::default();
        let again = mandel_field(grid);
        let bytes = ppm_bytes(&field, &palette).map_err(|e| e.to_string())?;
        ensure(bytes == ppm_bytes(&again, &palette).map_err(|e| e.to_string())?, || "PPM differs".into())?;
        ensure(csv_string(&field) == csv_string(&again), || "CSV differs".into())?;

        let cpus = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let scaling = if cpus >= 2 {
            let start = Instant::now();
            let _ = in_pool(2, || mandel_field(grid));
            let speedup = single.as_secs_f64() / start.elapsed().as_secs_f64();
            ensure(speedup >= TWO_THREAD_SPEEDUP, || format!("2-thread speedup {speedup:.2}"))?;
            format!("2-thread speedup {speedup:.2}")
        } else {
            "thread scaling not measured: 1 CPU available".to_string()
        };
        Ok(format!("single-thread {single:.2?}; {scaling}"))
    });
}

#[test]
fn c11_ifs_convergence() {
    criterion(11, "IFS convergence", None, || {
        let mut rng = common::rng();
        let mut word = |lo: usize, hi: usize, mixed: bool| loop {
            let len = rng.gen_range(lo..=hi);
            let w: Vec<Letter> = (0..len)
                .map(|_| if rng.gen_bool(0.5) { Letter::Alpha } else { Letter::Beta })
                .collect();
            if !mixed || (w.contains(&Letter::Alpha) && w.contains(&Letter::Beta)) {
                break w;
            }
        };
        let mut worst = 0f64;
        for _ in 0..50 {
            let left_period = word(2, 6, true);
            let left_pre = word(0, 5, false);
            let right_pre = word(0, 5, false);
            let right_period = word(2, 6, true);
            let s = SymbolSequence::new(left_period, left_pre, right_pre, right_period)
                .map_err(|e| e.to_string())?;
            let e = s.endpoints();
            let x = match e.minus {
                EndpointValue::Finite(x) if !e.minus_truncated => x.to_f64(),
                other => return Err(format!("{s:?}: x- = {other:?}")),
            };
            let g = s.ifs_limit(IFS_DEPTH, Complex64::new(0.0, 1.0));
            let err = (g - x).norm();
            worst = worst.max(err);
            ensure(err < IFS_TOL, || format!("{s:?}: |G - x-| = {err:e}"))?;
        }
        Ok(format!("worst {worst:.1e}"))
    });
}

#[test]
fn c12_dynamical_lune() {
    criterion(12, "dynamical lune", None, || {
        let inside = dyn_lune_check(PI / 3.0, Complex64::new(4.0, 0.0), 10_000, DEFAULT_MARGIN)
            .map_err(|e| e.to_string())?;
        ensure(inside.violations == 0, || {
            format!("{} violations, max excess {:e}", inside.violations, inside.max_excess)
        })?;
        let probe = dyn_lune_probe(PI / 3.0 - 0.05, Complex64::new(7.0, 0.0), 10_000, DEFAULT_MARGIN)
            .map_err(|e| e.to_string())?;
        ensure(probe.violations > 0, || "no violations at the narrowed angle".into())?;
        Ok(format!("{} images checked; probe found {} violations", inside.images, probe.violations))
    });
}
