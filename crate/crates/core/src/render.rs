//! Escape-time fields for the parameter plane and the dynamical plane,
//! with PPM and CSV output.
//!
//! A pixel escapes when its orbit enters the standard fundamental domain
//! of `Cov`; the region flag records which side of the standard `J_a`
//! circle the escaping point landed on, giving two tones per escape band.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::correspondence::{critical_value, escape_time, in_delta_j, j_involution, Parameter, SpherePoint};
use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub center: Complex64,
    pub half_width: f64,
    pub width: u32,
    pub height: u32,
    pub max_iter: u32,
}

impl GridSpec {
    pub fn new(center: Complex64, half_width: f64, width: u32, height: u32, max_iter: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!("grid {width}x{height} is empty")));
        }
        if max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be >= 1".into()));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidInput(format!("half-width {half_width} must be positive")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidInput("grid center must be finite".into()));
        }
        Ok(Self {
            center,
            half_width,
            width,
            height,
            max_iter,
        })
    }

    pub fn square(center: Complex64, half_width: f64, px: u32, max_iter: u32) -> Result<Self> {
        Self::new(center, half_width, px, px, max_iter)
    }

    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.width as f64
    }

    /// `center + ((i - w/2) s, (h/2 - j) s)`; row `j` and row `h - j` are
    /// mirror images.
    pub fn point(&self, i: u32, j: u32) -> Complex64 {
        let s = self.pixel_size();
        let x = (i as f64 - self.width as f64 / 2.0) * s;
        let y = (self.height as f64 / 2.0 - j as f64) * s;
        self.center + Complex64::new(x, y)
    }

    pub fn len(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionFlag {
    InDeltaJ,
    OutDeltaJ,
    /// The parameter `a = 1`, where the family degenerates.
    Undefined,
}

impl RegionFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionFlag::InDeltaJ => "in",
            RegionFlag::OutDeltaJ => "out",
            RegionFlag::Undefined => "undefined",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "in" => Some(RegionFlag::InDeltaJ),
            "out" => Some(RegionFlag::OutDeltaJ),
            "undefined" => Some(RegionFlag::Undefined),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pixel {
    pub escape_index: Option<u32>,
    pub last_point: Complex64,
    pub flag: RegionFlag,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EscapeField {
    pub grid: GridSpec,
    /// Row-major, row 0 at the top.
    pub pixels: Vec<Pixel>,
}

impl EscapeField {
    pub fn get(&self, i: u32, j: u32) -> &Pixel {
        &self.pixels[j as usize * self.grid.width as usize + i as usize]
    }

    pub fn escaped_count(&self) -> usize {
        self.pixels.iter().filter(|p| p.escape_index.is_some()).count()
    }
}

fn classify(p: &Parameter, start: Complex64, max_iter: u32) -> Pixel {
    let (escape_index, last_point) = escape_time(p, start, max_iter);
    let flag = if in_delta_j(p, SpherePoint::from(last_point)) {
        RegionFlag::InDeltaJ
    } else {
        RegionFlag::OutDeltaJ
    };
    Pixel {
        escape_index,
        last_point,
        flag,
    }
}

const UNDEFINED: Pixel = Pixel {
    escape_index: None,
    last_point: Complex64::new(f64::NAN, f64::NAN),
    flag: RegionFlag::Undefined,
};

fn sphere_to_c(z: SpherePoint) -> Complex64 {
    z.value().unwrap_or(Complex64::new(f64::INFINITY, 0.0))
}

fn build(grid: GridSpec, f: impl Fn(Complex64) -> Pixel + Sync) -> EscapeField {
    let w = grid.width as usize;
    let pixels = (0..grid.len())
        .into_par_iter()
        .map(|k| f(grid.point((k % w) as u32, (k / w) as u32)))
        .collect();
    EscapeField { grid, pixels }
}

/// Escape time of the critical value `J_a(2)` for each parameter pixel.
pub fn mandel_field(grid: GridSpec) -> EscapeField {
    build(grid, |a| match Parameter::new(a) {
        Ok(p) => classify(&p, sphere_to_c(critical_value(&p)), grid.max_iter),
        Err(_) => UNDEFINED,
    })
}

/// Escape time of each point; never escaping approximates the backwards
/// limit set.
pub fn limit_field(p: &Parameter, grid: GridSpec) -> EscapeField {
    build(grid, |z| classify(p, z, grid.max_iter))
}

/// The forwards limit set, drawn as the `J_a`-image of the backwards one:
/// pixel `Z` takes the escape data of `J_a(Z)`.
pub fn limit_plus_field(p: &Parameter, grid: GridSpec) -> EscapeField {
    build(grid, |z| classify(p, sphere_to_c(j_involution(p, z.into())), grid.max_iter))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    /// Colours for escape bands landing inside and outside `Delta_J`;
    /// both lists have the same length, the palette period.
    pub inside: Vec<[u8; 3]>,
    pub outside: Vec<[u8; 3]>,
    pub undefined: [u8; 3],
}

impl Default for Palette {
    /// Warm tones inside `Delta_J`, cool tones outside, eight bands each.
    fn default() -> Self {
        let ramp = |base: [f64; 3]| -> Vec<[u8; 3]> {
            (0..8)
                .map(|k| {
                    let t = 0.45 + 0.55 * (k as f64 / 7.0);
                    base.map(|c| (c * t * 255.0).round() as u8)
                })
                .collect()
        };
        Self {
            inside: ramp([1.0, 0.62, 0.2]),
            outside: ramp([0.25, 0.55, 1.0]),
            undefined: [128, 128, 128],
        }
    }
}

impl Palette {
    pub fn period(&self) -> usize {
        self.inside.len()
    }

    pub fn color(&self, px: &Pixel) -> [u8; 3] {
        match (px.flag, px.escape_index) {
            (RegionFlag::Undefined, _) => self.undefined,
            (_, None) => [0, 0, 0],
            (RegionFlag::InDeltaJ, Some(n)) => self.inside[n as usize % self.inside.len()],
            (RegionFlag::OutDeltaJ, Some(n)) => self.outside[n as usize % self.outside.len()],
        }
    }
}

/// Binary PPM bytes: header `P6\n<w> <h>\n255\n` then RGB rows.
pub fn ppm_bytes(field: &EscapeField, palette: &Palette) -> Result<Vec<u8>> {
    if palette.inside.is_empty() || palette.inside.len() != palette.outside.len() {
        return Err(Error::InvalidInput("palette lists must be nonempty and equal length".into()));
    }
    let header = format!("P6\n{} {}\n255\n", field.grid.width, field.grid.height);
    let mut out = Vec::with_capacity(header.len() + 3 * field.pixels.len());
    out.extend_from_slice(header.as_bytes());
    for px in &field.pixels {
        out.extend_from_slice(&palette.color(px));
    }
    Ok(out)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn write_image(field: &EscapeField, palette: &Palette, path: &Path) -> Result<()> {
    let bytes = ppm_bytes(field, palette)?;
    fs::write(path, bytes).map_err(io_err(path))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsvRow {
    pub coord: Complex64,
    pub escape_index: Option<u32>,
    pub flag: RegionFlag,
}

pub const CSV_HEADER: &str = "re,im,n,flag";

impl EscapeField {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        let w = self.grid.width as usize;
        self.pixels
            .iter()
            .enumerate()
            .map(|(k, px)| CsvRow {
                coord: self.grid.point((k % w) as u32, (k / w) as u32),
                escape_index: px.escape_index,
                flag: px.flag,
            })
            .collect()
    }
}

/// One row per pixel; `n = -1` for no escape. Floats use the shortest
/// representation that parses back to the same value.
pub fn csv_string(field: &EscapeField) -> String {
    let mut s = String::with_capacity(32 * field.pixels.len());
    s.push_str(CSV_HEADER);
    s.push('\n');
    for row in field.csv_rows() {
        let n = row.escape_index.map_or(-1, i64::from);
        let _ = writeln!(s, "{},{},{},{}", row.coord.re, row.coord.im, n, row.flag.as_str());
    }
    s
}

pub fn export_csv(field: &EscapeField, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path).map_err(io_err(path))?;
    f.write_all(csv_string(field).as_bytes()).map_err(io_err(path))
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::Parse(format!("expected header `{CSV_HEADER}`, got {other:?}")));
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, line)| {
            let bad = || Error::Parse(format!("line {}: `{line}`", k + 2));
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(bad());
            }
            let re: f64 = cols[0].parse().map_err(|_| bad())?;
            let im: f64 = cols[1].parse().map_err(|_| bad())?;
            let n: i64 = cols[2].parse().map_err(|_| bad())?;
            let escape_index = match n {
                -1 => None,
                n => Some(u32::try_from(n).map_err(|_| bad())?),
            };
            let flag = RegionFlag::parse(cols[3]).ok_or_else(bad)?;
            Ok(CsvRow {
                coord: Complex64::new(re, im),
                escape_index,
                flag,
            })
        })
        .collect()
}

pub fn import_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_geometry() {
        let g = GridSpec::square(c(4.0, 0.0), 2.0, 4, 10).unwrap();
        assert_eq!(g.point(2, 2), c(4.0, 0.0));
        assert_eq!(g.point(0, 0), c(2.0, 2.0));
        assert_eq!(g.point(1, 3), g.point(1, 1).conj());
        assert!(GridSpec::square(c(0.0, 0.0), 1.0, 0, 10).is_err());
        assert!(GridSpec::square(c(0.0, 0.0), 1.0, 4, 0).is_err());
    }

    #[test]
    fn mandel_sample_pixels() {
        let one = |a: Complex64, it: u32| {
            let g = GridSpec::square(a, 1e-9, 1, it).unwrap();
            // a 1x1 grid samples center + (-w/2 s, h/2 s)
            let g = GridSpec { center: a - c(-g.pixel_size() / 2.0, g.pixel_size() / 2.0), ..g };
            assert!((g.point(0, 0) - a).norm() < 1e-15);
            *mandel_field(g).get(0, 0)
        };
        assert_eq!(one(c(4.0, 0.0), 2000).escape_index, None);
        assert_eq!(one(c(5.0, 0.0), 2000).escape_index, None);
        let p = one(c(1.1, 0.0), 2000);
        let direct = escape_time(&Parameter::new(c(1.1, 0.0)).unwrap(), c(2.0 / 1.9, 0.0), 2000).0;
        assert!(p.escape_index.is_some());
        assert_eq!(p.escape_index, direct);
        let u = one(c(1.0, 0.0), 10);
        assert_eq!(u.flag, RegionFlag::Undefined);
    }

    #[test]
    fn limit_sample_points() {
        let p = Parameter::new(c(4.0, 0.0)).unwrap();
        assert_eq!(escape_time(&p, c(10.0, 0.0), 100).0, Some(0));
        assert_eq!(escape_time(&p, c(1.0, 0.0), 100).0, None);
    }

    #[test]
    fn ppm_layout() {
        let g = GridSpec::square(c(0.0, 0.0), 1.0, 16, 5).unwrap();
        let field = EscapeField {
            grid: g,
            pixels: vec![
                Pixel {
                    escape_index: None,
                    last_point: c(0.0, 0.0),
                    flag: RegionFlag::OutDeltaJ
                };
                256
            ],
        };
        let bytes = ppm_bytes(&field, &Palette::default()).unwrap();
        let header = b"P6\n16 16\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len(), header.len() + 768);
        assert!(bytes[header.len()..].iter().all(|&b| b == 0));
    }

    #[test]
    fn palette_separates_regions() {
        let pal = Palette::default();
        let mk = |flag, n| Pixel {
            escape_index: Some(n),
            last_point: c(0.0, 0.0),
            flag,
        };
        for n in 0..20 {
            assert_ne!(pal.color(&mk(RegionFlag::InDeltaJ, n)), pal.color(&mk(RegionFlag::OutDeltaJ, n)));
        }
        assert_eq!(pal.color(&mk(RegionFlag::InDeltaJ, 3)), pal.color(&mk(RegionFlag::InDeltaJ, 11)));
    }

    #[test]
    fn csv_round_trip() {
        let p = Parameter::new(c(4.5, 0.3)).unwrap();
        let g = GridSpec::square(c(0.3, -0.1), 3.7, 9, 50).unwrap();
        let field = limit_field(&p, g);
        let text = csv_string(&field);
        assert!(text.starts_with("re,im,n,flag\n"));
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows.len(), 81);
        assert_eq!(rows, field.csv_rows());
        assert!(parse_csv("x,y\n").is_err());
        assert!(parse_csv("re,im,n,flag\n1,2,3\n").is_err());
    }
}
