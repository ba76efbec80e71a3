//! Grid scans of threshold expressions over the (alpha, beta) plane.
//!
//! Cells are evaluated in parallel into a row-major matrix (rows indexed by
//! beta, columns by alpha). Sign changes between neighbouring cells are then
//! refined by bisection along each row, then each column.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::epidemics::epidemic_threshold_product;
use crate::error::{Error, Result};
use crate::lseries::{Family, LSeries};
use crate::roots::bisect;
use crate::thresholds::{directed_separated_margin, liouville, psi_bipartite, Phase};

pub const SCHEMA_VERSION: u32 = 1;

/// Offset above the convergence floor used by default windows.
pub const DEFAULT_DELTA: f64 = 0.05;

/// Default target for epidemic scans, `T_mf T_fm = 0.5`.
pub const DEFAULT_EPIDEMIC_TARGET: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
}

impl Window {
    pub fn new(alpha: (f64, f64), beta: (f64, f64)) -> Result<Self> {
        for (lo, hi) in [alpha, beta] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "scan window [{lo}, {hi}] is empty"
                )));
            }
        }
        Ok(Window { alpha, beta })
    }

    /// Intersection with `alpha > floor.0`, `beta > floor.1`; `None` when
    /// nothing is left.
    pub fn clip(&self, floor: (f64, f64)) -> Option<Window> {
        let a = (self.alpha.0.max(floor.0), self.alpha.1);
        let b = (self.beta.0.max(floor.1), self.beta.1);
        (a.0 < a.1 && b.0 < b.1).then_some(Window { alpha: a, beta: b })
    }
}

/// The expressions that can be scanned.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanFormula {
    /// Bipartite Liouville condition.
    Bipthr,
    /// Directed separated Liouville condition.
    Dirthr,
    /// Liouville epidemic level set: `target - product`.
    EpidLiouv { target: f64 },
    /// Liouville / Moebius bipartite condition.
    Mixthr,
    /// Bipartite Psi for arbitrary families.
    Psi { l1: Family, l2: Family },
    /// Directed separated margin for arbitrary families.
    Direct { l1: Family, l2: Family },
    /// Epidemic level set `target - product` for arbitrary families.
    Epid { l1: Family, l2: Family, target: f64 },
}

impl ScanFormula {
    pub const TAGS: [&'static str; 7] = [
        "bipthr",
        "dirthr",
        "epidliouv",
        "mixthr",
        "psi",
        "direct",
        "epid",
    ];

    /// Builds a formula from its tag; family bindings only matter for the
    /// generic tags.
    pub fn from_tag(tag: &str, l1: Family, l2: Family, target: Option<f64>) -> Result<Self> {
        let target = target.unwrap_or(DEFAULT_EPIDEMIC_TARGET);
        Ok(match tag {
            "bipthr" => ScanFormula::Bipthr,
            "dirthr" => ScanFormula::Dirthr,
            "epidliouv" => ScanFormula::EpidLiouv { target },
            "mixthr" => ScanFormula::Mixthr,
            "psi" => ScanFormula::Psi { l1, l2 },
            "direct" => ScanFormula::Direct { l1, l2 },
            "epid" => ScanFormula::Epid { l1, l2, target },
            other => {
                return Err(Error::Parse(format!(
                    "unknown scan formula '{other}' (expected one of {})",
                    Self::TAGS.join(", ")
                )))
            }
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ScanFormula::Bipthr => "bipthr",
            ScanFormula::Dirthr => "dirthr",
            ScanFormula::EpidLiouv { .. } => "epidliouv",
            ScanFormula::Mixthr => "mixthr",
            ScanFormula::Psi { .. } => "psi",
            ScanFormula::Direct { .. } => "direct",
            ScanFormula::Epid { .. } => "epid",
        }
    }

    fn families(&self) -> Result<(LSeries, LSeries)> {
        Ok(match self {
            ScanFormula::Bipthr | ScanFormula::Dirthr | ScanFormula::EpidLiouv { .. } => {
                (LSeries::liouville(), LSeries::liouville())
            }
            ScanFormula::Mixthr => (LSeries::liouville(), LSeries::mobius()),
            ScanFormula::Psi { l1, l2 }
            | ScanFormula::Direct { l1, l2 }
            | ScanFormula::Epid { l1, l2, .. } => (l1.series()?, l2.series()?),
        })
    }

    /// Number of units each argument is shifted down by inside the formula.
    fn shift(&self) -> f64 {
        match self {
            ScanFormula::Dirthr | ScanFormula::Direct { .. } => 1.0,
            _ => 2.0,
        }
    }

    /// Lowest `(alpha, beta)` at which every series argument converges.
    pub fn convergence_floor(&self) -> Result<(f64, f64)> {
        let (l1, l2) = self.families()?;
        Ok((l1.sigma_a() + self.shift(), l2.sigma_a() + self.shift()))
    }

    /// `[floor + 0.05, floor + 3]` on both axes.
    pub fn default_window(&self) -> Result<Window> {
        let (fa, fb) = self.convergence_floor()?;
        Window::new(
            (fa + DEFAULT_DELTA, fa + 3.0),
            (fb + DEFAULT_DELTA, fb + 3.0),
        )
    }

    /// Margin at one point; positive means supercritical.
    pub fn margin(&self, alpha: f64, beta: f64) -> Result<f64> {
        match self {
            ScanFormula::Bipthr => liouville::bipthr(alpha, beta),
            ScanFormula::Dirthr => liouville::dirthr(alpha, beta),
            ScanFormula::EpidLiouv { target } => {
                Ok(target - liouville::epid_liouville(alpha, beta)?)
            }
            ScanFormula::Mixthr => liouville::mixthr(alpha, beta),
            ScanFormula::Psi { .. } => {
                let (l1, l2) = self.families()?;
                Ok(psi_bipartite(&l1, alpha, &l2, beta)?.margin)
            }
            ScanFormula::Direct { .. } => {
                let (l1, l2) = self.families()?;
                Ok(directed_separated_margin(&l1, alpha, &l2, beta)?.margin)
            }
            ScanFormula::Epid { target, .. } => {
                let (l1, l2) = self.families()?;
                Ok(target - epidemic_threshold_product(&l1, alpha, &l2, beta)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseScanResult {
    pub formula: String,
    pub window: Window,
    pub clipped_window: Window,
    pub tol: f64,
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    /// `margin[j][i]` at `(alpha_grid[i], beta_grid[j])`; `None` outside the
    /// convergence region.
    pub margin: Vec<Vec<Option<f64>>>,
    pub zero_curve: Vec<(f64, f64)>,
}

impl PhaseScanResult {
    pub fn phase(&self, i: usize, j: usize) -> Phase {
        match self.margin[j][i] {
            Some(m) => Phase::of(m),
            None => Phase::Outside,
        }
    }

    pub fn count(&self, phase: Phase) -> usize {
        (0..self.beta_grid.len())
            .flat_map(|j| (0..self.alpha_grid.len()).map(move |i| (i, j)))
            .filter(|&(i, j)| self.phase(i, j) == phase)
            .count()
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Scans a formula; `window` defaults to the formula's default window.
pub fn scan(
    formula: &ScanFormula,
    window: Option<Window>,
    resolution: usize,
    tol: f64,
) -> Result<PhaseScanResult> {
    let window = match window {
        Some(w) => w,
        None => formula.default_window()?,
    };
    let floor = formula.convergence_floor()?;
    let f = |a: f64, b: f64| formula.margin(a, b);
    let mut res = scan_fn(&f, floor, window, resolution, tol)?;
    res.formula = formula.tag().to_string();
    Ok(res)
}

/// Scans an arbitrary margin function; points with `alpha <= floor.0` or
/// `beta <= floor.1` are marked outside without being evaluated.
pub fn scan_fn<F>(
    f: &F,
    floor: (f64, f64),
    window: Window,
    resolution: usize,
    tol: f64,
) -> Result<PhaseScanResult>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be at least 2 per axis, got {resolution}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let clipped = window.clip(floor).ok_or_else(|| {
        Error::EmptyWindow(format!(
            "window alpha in [{}, {}], beta in [{}, {}] needs alpha > {}, beta > {}",
            window.alpha.0, window.alpha.1, window.beta.0, window.beta.1, floor.0, floor.1
        ))
    })?;
    let alpha_grid = linspace(window.alpha.0, window.alpha.1, resolution);
    let beta_grid = linspace(window.beta.0, window.beta.1, resolution);
    let inside = |a: f64, b: f64| a > floor.0 && b > floor.1;

    let cells: Vec<Option<f64>> = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (alpha_grid[idx % resolution], beta_grid[idx / resolution]);
            if !inside(a, b) {
                return Ok(None);
            }
            match f(a, b) {
                Ok(m) if m.is_finite() => Ok(Some(m)),
                Ok(_) | Err(Error::Domain { .. }) | Err(Error::DegenerateDenominator(_)) => {
                    Ok(None)
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let margin: Vec<Vec<Option<f64>>> = cells.chunks(resolution).map(|r| r.to_vec()).collect();

    // one bisection task per grid line: rows (fixed beta) then columns
    let lines: Vec<(bool, usize)> = (0..resolution)
        .map(|j| (true, j))
        .chain((0..resolution).map(|i| (false, i)))
        .collect();
    let per_line: Vec<Vec<(f64, f64)>> = lines
        .par_iter()
        .map(|&(is_row, k)| {
            let mut pts = Vec::new();
            for t in 0..resolution - 1 {
                let (c0, c1, x0, x1) = if is_row {
                    (
                        margin[k][t],
                        margin[k][t + 1],
                        alpha_grid[t],
                        alpha_grid[t + 1],
                    )
                } else {
                    (
                        margin[t][k],
                        margin[t + 1][k],
                        beta_grid[t],
                        beta_grid[t + 1],
                    )
                };
                let point = |x: f64| {
                    if is_row {
                        (x, beta_grid[k])
                    } else {
                        (alpha_grid[k], x)
                    }
                };
                let (Some(m0), Some(m1)) = (c0, c1) else {
                    continue;
                };
                if m0 == 0.0 {
                    if is_row {
                        pts.push(point(x0));
                    }
                    continue;
                }
                if is_row && t + 1 == resolution - 1 && m1 == 0.0 {
                    pts.push(point(x1));
                }
                if m0.signum() == m1.signum() || m1 == 0.0 {
                    continue;
                }
                let g = |x: f64| {
                    let (a, b) = point(x);
                    f(a, b)
                };
                if let Ok(x) = bisect(g, x0, x1, 0.0, Some(tol)) {
                    let (a, b) = point(x);
                    if matches!(f(a, b), Ok(v) if v.abs() <= tol) {
                        pts.push((a, b));
                    }
                }
            }
            pts
        })
        .collect();

    Ok(PhaseScanResult {
        formula: String::new(),
        window,
        clipped_window: clipped,
        tol,
        alpha_grid,
        beta_grid,
        margin,
        zero_curve: per_line.into_iter().flatten().collect(),
    })
}

/// `<tag>_<resolution>.csv`.
pub fn default_filename(tag: &str, resolution: usize) -> String {
    format!("{tag}_{resolution}.csv")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown export format '{other}'"))),
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Companion path holding the zero curve: `<path>.curve.csv`.
pub fn curve_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".curve.csv");
    PathBuf::from(s)
}

pub fn to_csv(result: &PhaseScanResult) -> (String, String) {
    let mut grid = String::from("alpha,beta,margin,phase\n");
    for (j, &b) in result.beta_grid.iter().enumerate() {
        for (i, &a) in result.alpha_grid.iter().enumerate() {
            let m = result.margin[j][i].map(num).unwrap_or_default();
            let _ = writeln!(
                grid,
                "{},{},{},{}",
                num(a),
                num(b),
                m,
                result.phase(i, j).label()
            );
        }
    }
    let mut curve = String::from("alpha,beta\n");
    for &(a, b) in &result.zero_curve {
        let _ = writeln!(curve, "{},{}", num(a), num(b));
    }
    (grid, curve)
}

#[derive(Serialize, Deserialize)]
struct JsonCell {
    alpha: f64,
    beta: f64,
    margin: Option<f64>,
    phase: Phase,
}

#[derive(Serialize, Deserialize)]
struct JsonExport {
    schema_version: u32,
    formula: String,
    window: Window,
    clipped_window: Window,
    tol: f64,
    alpha_grid: Vec<f64>,
    beta_grid: Vec<f64>,
    cells: Vec<JsonCell>,
    zero_curve: Vec<(f64, f64)>,
}

pub fn to_json(result: &PhaseScanResult) -> serde_json::Value {
    let mut cells = Vec::with_capacity(result.alpha_grid.len() * result.beta_grid.len());
    for (j, &beta) in result.beta_grid.iter().enumerate() {
        for (i, &alpha) in result.alpha_grid.iter().enumerate() {
            cells.push(JsonCell {
                alpha,
                beta,
                margin: result.margin[j][i],
                phase: result.phase(i, j),
            });
        }
    }
    serde_json::to_value(JsonExport {
        schema_version: SCHEMA_VERSION,
        formula: result.formula.clone(),
        window: result.window,
        clipped_window: result.clipped_window,
        tol: result.tol,
        alpha_grid: result.alpha_grid.clone(),
        beta_grid: result.beta_grid.clone(),
        cells,
        zero_curve: result.zero_curve.clone(),
    })
    .expect("scan results serialize")
}

/// Writes the scan; returns the paths written.
pub fn export(result: &PhaseScanResult, path: &Path, format: ExportFormat) -> Result<Vec<PathBuf>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    match format {
        ExportFormat::Csv => {
            let (grid, curve) = to_csv(result);
            let cpath = curve_path(path);
            fs::write(path, grid)?;
            fs::write(&cpath, curve)?;
            Ok(vec![path.to_path_buf(), cpath])
        }
        ExportFormat::Json => {
            fs::write(path, serde_json::to_string_pretty(&to_json(result))?)?;
            Ok(vec![path.to_path_buf()])
        }
    }
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: '{s}' is not a number")))
}

/// Reads a CSV export (and its curve companion when present) back into grid
/// form. Formula, window and tolerance are not part of the CSV and come back
/// empty or inferred from the grid.
pub fn import_csv(path: &Path) -> Result<PhaseScanResult> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("alpha,beta,margin,phase") {
        return Err(Error::Parse(format!(
            "{}: header must be alpha,beta,margin,phase",
            path.display()
        )));
    }
    let mut rows: Vec<(f64, f64, Option<f64>)> = Vec::new();
    for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(Error::Parse(format!("line {}: expected 4 fields", n + 2)));
        }
        let m = if f[2].trim().is_empty() {
            None
        } else {
            Some(parse_f64(f[2], n + 2)?)
        };
        rows.push((parse_f64(f[0], n + 2)?, parse_f64(f[1], n + 2)?, m));
    }
    let mut alpha_grid: Vec<f64> = Vec::new();
    for r in &rows {
        if alpha_grid.contains(&r.0) {
            break;
        }
        alpha_grid.push(r.0);
    }
    let na = alpha_grid.len();
    if na == 0 || !rows.len().is_multiple_of(na) {
        return Err(Error::Parse(format!(
            "{}: rows do not form a grid",
            path.display()
        )));
    }
    let beta_grid: Vec<f64> = rows.iter().step_by(na).map(|r| r.1).collect();
    let margin = rows
        .chunks(na)
        .map(|c| c.iter().map(|r| r.2).collect())
        .collect();

    let mut zero_curve = Vec::new();
    let cpath = curve_path(path);
    if cpath.exists() {
        let ctext = fs::read_to_string(&cpath)?;
        for (n, line) in ctext.lines().enumerate().skip(1) {
            if let Some((a, b)) = line.split_once(',') {
                zero_curve.push((parse_f64(a, n + 1)?, parse_f64(b, n + 1)?));
            }
        }
    }
    let window = Window {
        alpha: (alpha_grid[0], alpha_grid[na - 1]),
        beta: (beta_grid[0], *beta_grid.last().unwrap_or(&beta_grid[0])),
    };
    Ok(PhaseScanResult {
        formula: String::new(),
        window,
        clipped_window: window,
        tol: f64::NAN,
        alpha_grid,
        beta_grid,
        margin,
        zero_curve,
    })
}
