//! Subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use modmat::cf::{question_mark, question_mark_inverse, BinaryAngle, ContinuedFraction};
use modmat::correspondence::{alpha_fixed_point, orbit, Parameter, SpherePoint};
use modmat::exact::{lemma9_certificate, CertificateOptions};
use modmat::render::{export_csv, limit_field, limit_plus_field, mandel_field, write_image, EscapeField, GridSpec, Palette};
use modmat::sturmian::{block_structure, multiplier_bounds, t_word, BlockKind, RotationNumber};
use modmat::word::Word;
use modmat::yoccoz::{
    disc_atlas, dyn_lune_check, dyn_lune_probe, param_lune_contains, test_parameter, ABS_BOUND, COR2_FACTOR,
    COR2_FACTOR_SHARP,
};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::num::{cx, exact, int, num, Cx, Exact, Num};
use crate::{Command, LimitArgs, LuneArgs, MandelArgs, RenderArgs, VerifyArgs, YoccozArgs};

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Lib(#[from] modmat::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 3,
            _ => 2,
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Word(a) => word(&a.letters, a.json),
        Command::Minkowski(a) => minkowski(a.cf.as_deref(), a.binary.as_deref()),
        Command::Sturmian(a) => sturmian(a.p, a.q, a.json),
        Command::Zeta(a) => zeta(a.a),
        Command::Orbit(a) => orbit_csv(a.a, a.z, a.n),
        Command::Yoccoz(a) => yoccoz(&a),
        Command::Lune(a) => lune(&a),
        Command::Mandel(a) => mandel(&a),
        Command::Limit(a) => limit(&a),
        Command::VerifyLemma9(a) => verify(&a),
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let s = serde_json::to_string_pretty(value).expect("output types serialize");
    println!("{s}");
    Ok(())
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Outcome {
    let s = serde_json::to_string_pretty(value).expect("output types serialize");
    fs::write(path, s + "\n").map_err(|source| Failure::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Serialize)]
struct WordOut {
    word: String,
    matrix: [[Num; 2]; 2],
    trace: Num,
    class: &'static str,
    x_minus: Option<Exact>,
    x_plus: Option<Exact>,
    multiplier: Option<Exact>,
}

fn word(letters: &str, json: bool) -> Outcome {
    let w = Word::from_str(letters)?;
    let fp = w.fixed_points().ok();
    let mu = w.multiplier().ok().map(|m| m.mu);
    let surd = |x: &modmat::surd::QuadSurd| exact(x.exact_string(), x.to_f64());
    let rows = w.matrix().rows();
    let out = WordOut {
        word: w.to_string(),
        matrix: rows.clone().map(|r| r.map(int)),
        trace: int(w.trace()),
        class: w.class().name(),
        x_minus: fp.as_ref().map(|f| surd(&f.minus)),
        x_plus: fp.as_ref().map(|f| surd(&f.plus)),
        multiplier: mu.as_ref().map(surd),
    };
    if json {
        return print_json(&out);
    }
    println!("word        {}", out.word);
    println!("matrix      [[{}, {}], [{}, {}]]", rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
    println!("trace       {} ({})", w.trace(), out.class);
    if let Some(f) = fp {
        println!("x_minus     {} = {}", f.minus, f.minus.to_f64());
        println!("x_plus      {} = {}", f.plus, f.plus.to_f64());
    }
    if let Some(m) = mu {
        println!("multiplier  {} = {}", m, m.to_f64());
    }
    Ok(())
}

#[derive(Serialize)]
struct MinkowskiOut {
    cf: String,
    binary: String,
    x: Exact,
    angle: Exact,
}

fn minkowski(cf: Option<&str>, binary: Option<&str>) -> Outcome {
    let (cf, angle) = match (cf, binary) {
        (Some(s), _) => {
            let cf = ContinuedFraction::from_str(s)?;
            let angle = question_mark(&cf);
            (cf, angle)
        }
        (None, Some(s)) => {
            let angle = BinaryAngle::from_str(s)?;
            (question_mark_inverse(&angle)?, angle)
        }
        (None, None) => return Err(Failure::Usage("one of --cf or --binary is required".into())),
    };
    let x = cf.eval();
    let v = angle.value();
    let v_f64 = v.to_f64().unwrap_or(f64::NAN);
    print_json(&MinkowskiOut {
        cf: cf.to_string(),
        binary: angle.to_string(),
        x: exact(x.exact_string(), x.to_f64()),
        angle: exact(v.to_string(), v_f64),
    })
}

#[derive(Serialize)]
struct BlocksOut {
    majority: char,
    r: u64,
    s: u64,
    short: usize,
    long: usize,
}

#[derive(Serialize)]
struct SturmianOut {
    p: u64,
    q: u64,
    word: String,
    blocks: Option<BlocksOut>,
    trace: Num,
    multiplier: Exact,
    lower_bound: Num,
    upper_bound: Num,
}

fn sturmian(p: u64, q: u64, json: bool) -> Outcome {
    let r = RotationNumber::new(p, q)?;
    let t = t_word(r);
    let mu = t.word.multiplier()?.mu;
    let (lo, hi) = multiplier_bounds(r);
    let blocks = block_structure(t.word.letters()).ok().map(|b| BlocksOut {
        majority: b.majority.as_char(),
        r: b.r,
        s: b.s,
        short: b.count(BlockKind::Short),
        long: b.count(BlockKind::Long),
    });
    let out = SturmianOut {
        p: r.p(),
        q: r.q(),
        word: t.word.to_string(),
        blocks,
        trace: int(t.word.trace()),
        multiplier: exact(mu.exact_string(), mu.to_f64()),
        lower_bound: int(&lo),
        upper_bound: int(&hi),
    };
    if json {
        return print_json(&out);
    }
    println!("rotation    {r}");
    println!("word        {}", out.word);
    if let Some(b) = &out.blocks {
        println!(
            "blocks      r = {}, s = {}, majority {}, {} short, {} long",
            b.r, b.s, b.majority, b.short, b.long
        );
    }
    println!("multiplier  {} = {}", mu, mu.to_f64());
    println!("bounds      {lo} < mu < {hi}");
    Ok(())
}

#[derive(Serialize)]
struct ZetaOut {
    a: Cx,
    z0: Cx,
    #[serde(rename = "Z0")]
    big_z0: Cx,
    zeta: Cx,
    #[serde(rename = "E")]
    e: Option<Cx>,
    abs_zeta: Option<Num>,
    arg_zeta: Option<Num>,
    log_zeta: Cx,
}

fn zeta(a: Complex64) -> Outcome {
    let p = Parameter::new(a)?;
    let fp = alpha_fixed_point(&p)?;
    print_json(&ZetaOut {
        a: cx(a),
        z0: cx(fp.z0),
        big_z0: cx(fp.big_z0),
        zeta: cx(fp.zeta),
        e: fp.e.map(cx),
        abs_zeta: num(fp.zeta.norm()),
        arg_zeta: num(fp.zeta.arg()),
        log_zeta: cx(fp.zeta.ln()),
    })
}

fn orbit_csv(a: Complex64, z: Complex64, n: usize) -> Outcome {
    let p = Parameter::new(a)?;
    let o = orbit(&p, SpherePoint::Finite(z), n)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let io = |source| Failure::Io {
        path: "<stdout>".into(),
        source,
    };
    writeln!(w, "n,re,im").map_err(io)?;
    for (k, pt) in o.points.iter().enumerate() {
        let (re, im) = match pt {
            SpherePoint::Finite(c) => (format!("{:.16e}", c.re), format!("{:.16e}", c.im)),
            SpherePoint::Infinity => ("inf".into(), "inf".into()),
        };
        writeln!(w, "{k},{re},{im}").map_err(io)?;
    }
    match o.escape_index {
        Some(k) => log::info!("orbit entered the escape domain at step {k}"),
        None => log::info!("no escape within {n} steps"),
    }
    Ok(())
}

#[derive(Serialize)]
struct DiscOut {
    p: u64,
    q: u64,
    radius: Option<Num>,
    center: Cx,
    tangency: Cx,
    sharpened: bool,
}

#[derive(Serialize)]
struct VerdictOut {
    a: Cx,
    zeta: Cx,
    abs_zeta: Option<Num>,
    abs_bound: Option<Num>,
    abs_ok: bool,
    factor: Option<Num>,
    disc_ok: Option<bool>,
    excluded: bool,
    verdict: String,
}

fn yoccoz(args: &YoccozArgs) -> Outcome {
    if let Some(a) = args.test_a {
        let factor = if args.sharp { COR2_FACTOR_SHARP } else { COR2_FACTOR };
        let v = test_parameter(&Parameter::new(a)?, factor)?;
        let abs = v.zeta.norm();
        let verdict = if !v.abs_ok {
            format!("excluded: |zeta|={abs:.5} > {ABS_BOUND:.5}")
        } else if v.cor2_ok == Some(false) {
            format!("excluded: log zeta = {:.5}{:+.5}i outside the factor-{factor} disc region", v.tau.re, v.tau.im)
        } else {
            format!("not excluded: |zeta|={abs:.5}")
        };
        println!("{verdict}");
        let out = VerdictOut {
            a: cx(a),
            zeta: cx(v.zeta),
            abs_zeta: num(abs),
            abs_bound: num(ABS_BOUND),
            abs_ok: v.abs_ok,
            factor: num(factor),
            disc_ok: v.cor2_ok,
            excluded: v.excluded(),
            verdict,
        };
        if let Some(path) = &args.json {
            write_json(&out, path)?;
        }
        return Ok(());
    }
    let discs: Vec<DiscOut> = disc_atlas(args.qmax)?
        .into_iter()
        .map(|d| DiscOut {
            p: d.rotation.p(),
            q: d.rotation.q(),
            radius: num(d.radius),
            center: cx(d.center()),
            tangency: cx(d.tangency()),
            sharpened: d.sharpened,
        })
        .collect();
    match &args.json {
        Some(path) => write_json(&discs, path),
        None => print_json(&discs),
    }
}

#[derive(Serialize)]
struct ParamLuneOut {
    theta: Option<Num>,
    a: Cx,
    contains: bool,
}

#[derive(Serialize)]
struct DynLuneOut {
    alpha: Option<Num>,
    a: Cx,
    margin: Option<Num>,
    samples: usize,
    images: usize,
    violations: usize,
    vertex_hits: usize,
    max_excess: Option<Num>,
    worst_sample: Option<Cx>,
    worst_image: Option<Cx>,
    probe: bool,
}

fn lune(args: &LuneArgs) -> Outcome {
    if !args.dynamic {
        let theta = args
            .theta
            .ok_or_else(|| Failure::Usage("--theta is required without --dyn".into()))?;
        let contains = param_lune_contains(theta, args.a)?;
        return print_json(&ParamLuneOut {
            theta: num(theta),
            a: cx(args.a),
            contains,
        });
    }
    let alpha = args
        .alpha
        .ok_or_else(|| Failure::Usage("--alpha is required with --dyn".into()))?;
    if !args.probe && alpha < std::f64::consts::FRAC_PI_3 - 1e-12 {
        return Err(Failure::Usage(format!(
            "lune angle {alpha} is below pi/3 = {}; pass --probe to sample it anyway",
            std::f64::consts::FRAC_PI_3
        )));
    }
    let report = if args.probe {
        dyn_lune_probe(alpha, args.a, args.samples, args.margin)?
    } else {
        dyn_lune_check(alpha, args.a, args.samples, args.margin)?
    };
    print_json(&DynLuneOut {
        alpha: num(alpha),
        a: cx(args.a),
        margin: num(args.margin),
        samples: report.samples,
        images: report.images,
        violations: report.violations,
        vertex_hits: report.vertex_hits,
        max_excess: num(report.max_excess),
        worst_sample: report.worst_sample.map(cx),
        worst_image: report.worst_image.map(cx),
        probe: args.probe,
    })?;
    if report.violations > 0 && !args.probe {
        return Err(Failure::Verification(format!(
            "{} images leave the lune of angle {alpha}",
            report.violations
        )));
    }
    Ok(())
}

/// Cap the worker pool at `MM_THREADS` when set.
fn init_threads() -> Outcome {
    let Ok(raw) = std::env::var("MM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("MM_THREADS must be a positive integer, got `{raw}`")))?;
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.min(avail))
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the worker pool: {e}")))
}

fn render(args: &RenderArgs, default_center: Complex64, build: impl FnOnce(GridSpec) -> EscapeField) -> Outcome {
    init_threads()?;
    let center = args.center.unwrap_or(default_center);
    let grid = GridSpec::square(center, args.radius, args.px, args.max_iter)?;
    let field = build(grid);
    write_image(&field, &Palette::default(), &args.out)?;
    if let Some(csv) = &args.csv {
        export_csv(&field, csv)?;
    }
    log::info!(
        "{} of {} pixels escaped; wrote {}",
        field.escaped_count(),
        grid.len(),
        args.out.display()
    );
    Ok(())
}

fn mandel(args: &MandelArgs) -> Outcome {
    render(&args.render, Complex64::new(4.0, 0.0), mandel_field)
}

fn limit(args: &LimitArgs) -> Outcome {
    let p = Parameter::new(args.a)?;
    let plus = args.plus;
    render(&args.render, Complex64::new(0.0, 0.0), |g| {
        if plus {
            limit_plus_field(&p, g)
        } else {
            limit_field(&p, g)
        }
    })
}

#[derive(Serialize)]
struct CheckOut {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct ReportOut {
    passed: bool,
    checks: Vec<CheckOut>,
    polynomials: Vec<PolyOut>,
    boundary_repeated_root: Option<String>,
}

#[derive(Serialize)]
struct PolyOut {
    name: &'static str,
    value: String,
}

fn verify(args: &VerifyArgs) -> Outcome {
    if let Some(j) = args.perturb {
        if j > 4 {
            return Err(Failure::Usage(format!("--perturb takes 0..=4, got {j}")));
        }
    }
    let cert = lemma9_certificate(&CertificateOptions { perturb_a: args.perturb })?;
    for c in &cert.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("{mark} {}", c.name);
    }
    let passed = cert.passed();
    println!("{}", if passed { "PASS all identities hold" } else { "FAIL" });
    if let Some(path) = &args.json {
        write_json(
            &ReportOut {
                passed,
                checks: cert
                    .checks
                    .iter()
                    .map(|c| CheckOut {
                        name: c.name,
                        passed: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect(),
                polynomials: cert
                    .polynomials
                    .iter()
                    .map(|(name, value)| PolyOut {
                        name,
                        value: value.clone(),
                    })
                    .collect(),
                boundary_repeated_root: cert.boundary_repeated_root.as_ref().map(|r| r.to_string()),
            },
            path,
        )?;
    }
    match cert.first_failure() {
        None => Ok(()),
        Some(f) => Err(Failure::Verification(format!("{}: {}", f.name, f.detail))),
    }
}
