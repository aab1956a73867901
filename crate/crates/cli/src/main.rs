//! `modmat` command-line front end.

mod commands;
mod num;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::num::parse_complex;

/// Modular matings toolkit: word algebra, continued fractions, Sturmian
/// words, the correspondence family, Yoccoz discs, lunes, escape-time
/// renders and exact verification.
#[derive(Parser, Debug)]
#[command(name = "modmat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Matrix, trace class, fixed points and multiplier of an alpha/beta word
    Word(WordArgs),
    /// Minkowski question-mark map between continued fractions and binary angles
    Minkowski(MinkowskiArgs),
    /// Sturmian word of rotation number p/q with block structure and multiplier
    Sturmian(SturmianArgs),
    /// Fixed point, multiplier and E-value of the correspondence at a
    Zeta(ZetaArgs),
    /// CSV of the forward orbit of Z under f_a
    Orbit(OrbitArgs),
    /// Yoccoz disc atlas, or the multiplier exclusion test at a parameter
    Yoccoz(YoccozArgs),
    /// Parameter lune membership, or the sampled dynamical lune check
    Lune(LuneArgs),
    /// Escape-time render of the parameter plane
    Mandel(MandelArgs),
    /// Escape-time render of the limit set in the dynamical plane
    Limit(LimitArgs),
    /// Re-verify the exact intersection lemma by resultants
    #[command(name = "verify-lemma9")]
    VerifyLemma9(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct WordArgs {
    /// Letters over {a, b}; the rightmost letter acts first
    #[arg(long)]
    pub letters: String,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct MinkowskiArgs {
    /// Continued fraction such as "0;1,(2,1)"; parentheses mark the period
    #[arg(long)]
    pub cf: Option<String>,
    /// Binary angle such as "0.(011)"; parentheses mark the period
    #[arg(long)]
    pub binary: Option<String>,
}

#[derive(Args, Debug)]
pub struct SturmianArgs {
    /// Numerator, the number of alphas
    #[arg(long)]
    pub p: u64,
    /// Denominator, the word length
    #[arg(long)]
    pub q: u64,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// Parameter a as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Parameter a as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Starting point Z as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Maximum number of points
    #[arg(long, default_value_t = 100)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct YoccozArgs {
    /// Largest denominator in the disc atlas
    #[arg(long, default_value_t = 8)]
    pub qmax: u64,
    /// Write the atlas JSON to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Test the parameter a against the multiplier conditions instead
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "A")]
    pub test_a: Option<Complex64>,
    /// Use the sharpened factor 4 in the disc corollary instead of 5
    #[arg(long)]
    pub sharp: bool,
}

#[derive(Args, Debug)]
pub struct LuneArgs {
    /// Parameter lune angle in radians
    #[arg(long)]
    pub theta: Option<f64>,
    /// Parameter a as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Run the sampled dynamical lune check instead
    #[arg(long = "dyn")]
    pub dynamic: bool,
    /// Dynamical lune angle in radians
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Number of sample points in the closed lune
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Angular slack before an image counts as a violation
    #[arg(long, default_value_t = modmat::yoccoz::DEFAULT_MARGIN)]
    pub margin: f64,
    /// Allow angles and parameters outside the theorem's range and report
    /// violations without failing
    #[arg(long)]
    pub probe: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Image centre as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub center: Option<Complex64>,
    /// Half-width of the square view
    #[arg(long)]
    pub radius: f64,
    /// Width and height in pixels
    #[arg(long, default_value_t = 800)]
    pub px: u32,
    /// Iteration budget per pixel
    #[arg(long, default_value_t = modmat::render::DEFAULT_MAX_ITER)]
    pub max_iter: u32,
    /// Output PPM file
    #[arg(long)]
    pub out: PathBuf,
    /// Also write per-pixel escape data as CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MandelArgs {
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Parameter a as x+yi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Render the mirrored limit set J_a(Lambda_-) instead
    #[arg(long)]
    pub plus: bool,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Write the full report as JSON to this file
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Add one to the coefficient a_J before the resultant (checker self-test)
    #[arg(long, value_name = "J")]
    pub perturb: Option<usize>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
