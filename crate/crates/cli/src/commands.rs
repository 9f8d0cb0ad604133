use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use yb_core::lattice::{transfer_evolve, write_trajectory_csv, DriftReport, Site, StaircaseState};
use yb_core::maps::{sample_pair, MapId};
use yb_core::maps3::{discriminant_relative, leaf_embed_3x3, LeafParams3};
use yb_core::matrix::char_poly_coeffs;
use yb_core::verify::{sample_rng, unix_timestamp, verify_map, MAX_TRIES};
use yb_core::{re, CMatrix, Error, C64};

use crate::config::{CliTolerances, Settings};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Config = 2,
    Degenerate = 3,
}

/// A failure that ends the run before any report is written.
#[derive(Debug)]
pub struct Abort {
    pub exit: Exit,
    pub message: String,
}

impl Abort {
    pub fn config(message: impl Into<String>) -> Self {
        Abort {
            exit: Exit::Config,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
}

impl ErrorRecord {
    fn from_error(e: &Error) -> Self {
        ErrorRecord {
            kind: e.kind().to_string(),
            message: e.to_string(),
            step: match e {
                Error::PoleEncountered { step, .. } => Some(*step),
                _ => None,
            },
        }
    }
}

fn exit_for(e: &Error) -> Exit {
    if e.is_degeneracy() {
        Exit::Degenerate
    } else if matches!(e, Error::DimensionMismatch(_) | Error::UnknownMap(_)) {
        Exit::Config
    } else {
        Exit::Fail
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Abort> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Abort::config(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Abort::config(format!("cannot write to stdout: {e}"))),
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, report: &T) -> Result<(), Abort> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    write_output(out, &text)
}

fn map_of(s: &Settings) -> MapId {
    s.map.expect("map is validated for this command")
}

pub fn verify(s: &Settings) -> Result<Exit, Abort> {
    let map = map_of(s);
    log::info!("verify {map}: {} samples, seed {}", s.samples, s.seed);
    let report = verify_map(map, s.samples, s.seed, &s.tolerances.core());
    for c in &report.checks {
        log::info!("{:<13} {:.3e} (tol {:.0e}) {}", c.name, c.value, c.tolerance, if c.passed { "ok" } else { "FAIL" });
    }
    write_json(s.out.as_deref(), &report)?;
    Ok(if report.passed { Exit::Pass } else { Exit::Fail })
}

#[derive(Serialize)]
struct EvaluateReport<'a> {
    schema: &'static str,
    command: &'static str,
    map: MapId,
    x: &'a [C64],
    alpha: &'a [C64],
    y: &'a [C64],
    beta: &'a [C64],
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Vec<C64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<Vec<C64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorRecord>,
    timestamp: u64,
}

pub fn evaluate(s: &Settings) -> Result<Exit, Abort> {
    let map = map_of(s);
    let inp = s.evaluate.as_ref().expect("evaluate input is validated");
    let result = map.apply(&inp.x, &inp.alpha, &inp.y, &inp.beta);
    let (u, v, error, exit) = match result {
        Ok((u, v)) => (Some(u), Some(v), None, Exit::Pass),
        Err(e) => (None, None, Some(ErrorRecord::from_error(&e)), exit_for(&e)),
    };
    let report = EvaluateReport {
        schema: SCHEMA,
        command: "evaluate",
        map,
        x: &inp.x,
        alpha: &inp.alpha,
        y: &inp.y,
        beta: &inp.beta,
        u,
        v,
        error,
        timestamp: unix_timestamp(),
    };
    write_json(s.out.as_deref(), &report)?;
    Ok(exit)
}

#[derive(Serialize)]
struct LatticeReport {
    schema: &'static str,
    command: &'static str,
    map: MapId,
    seed: u64,
    steps: usize,
    cap: usize,
    initial: Vec<Site>,
    tolerances: CliTolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    drift: Option<DriftReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trajectory_csv: Option<PathBuf>,
    passed: bool,
    timestamp: u64,
}

fn initial_sites(s: &Settings, map: MapId) -> Result<Vec<Site>, Abort> {
    if let Some(sites) = &s.sites {
        return Ok(sites.clone());
    }
    let (x, a, y, b, _) = sample_pair(map, &mut sample_rng(s.seed, 100, 0), MAX_TRIES).ok_or_else(|| Abort {
        exit: Exit::Degenerate,
        message: format!("no admissible initial data for '{map}' after {MAX_TRIES} draws"),
    })?;
    Ok(vec![Site { coords: x, params: a }, Site { coords: y, params: b }])
}

pub fn lattice(s: &Settings) -> Result<Exit, Abort> {
    let map = map_of(s);
    let initial = initial_sites(s, map)?;
    let state = StaircaseState::new(map, initial.clone()).map_err(|e| Abort::config(e.to_string()))?;
    let csv_path = s
        .trajectory
        .clone()
        .or_else(|| s.out.as_ref().map(|p| p.with_extension("csv")));
    let tol = s.tolerances.drift;
    let (drift, error, passed, exit) = match transfer_evolve(&state, s.steps, s.cap) {
        Ok(ev) => {
            if let Some(p) = &csv_path {
                let f = std::fs::File::create(p).map_err(|e| Abort::config(format!("cannot write {}: {e}", p.display())))?;
                write_trajectory_csv(std::io::BufWriter::new(f), &ev.trajectory)
                    .map_err(|e| Abort::config(format!("cannot write {}: {e}", p.display())))?;
            }
            let r = ev.report;
            let worst = [Some(r.max_coeff_drift), r.j1_drift, r.j2_drift]
                .into_iter()
                .flatten()
                .fold(0.0, f64::max);
            let ok = worst <= tol;
            log::info!("lattice {map}: {} steps, worst drift {worst:.3e}, slope {:.3e}", r.steps, r.drift_slope);
            (Some(r), None, ok, if ok { Exit::Pass } else { Exit::Fail })
        }
        Err(e) => (None, Some(ErrorRecord::from_error(&e)), false, exit_for(&e)),
    };
    let report = LatticeReport {
        schema: SCHEMA,
        command: "lattice",
        map,
        seed: s.seed,
        steps: s.steps,
        cap: s.cap,
        initial,
        tolerances: s.tolerances,
        drift,
        error: error.clone(),
        trajectory_csv: if error.is_none() { csv_path } else { None },
        passed,
        timestamp: unix_timestamp(),
    };
    write_json(s.out.as_deref(), &report)?;
    Ok(exit)
}

pub const SURFACE_CSV_HEADER: &str = "alpha0,alpha1,alpha2,residual";

#[derive(Serialize)]
struct SurfaceReport {
    schema: &'static str,
    command: &'static str,
    seed: u64,
    rows: usize,
    max_residual: f64,
    tolerances: CliTolerances,
    passed: bool,
    timestamp: u64,
}

fn scan_leaves(s: &Settings) -> Vec<LeafParams3> {
    let g = &s.surface;
    let mut leaves: Vec<LeafParams3> = Vec::new();
    leaves.extend(g.boussinesq.iter().map(|&a| LeafParams3::boussinesq(re(a))));
    leaves.extend(g.gv.iter().map(|&a| LeafParams3::gv(re(a))));
    for &c1 in &g.c1 {
        leaves.extend(g.c2.iter().map(|&c2| LeafParams3::new(re(c1), re(c2))));
    }
    leaves
}

/// Casimirs `(f₀, f₁, f₂)` of random points on each requested leaf, with the
/// relative discriminant residual. Labels are real, so the Casimirs are real up
/// to rounding and only their real parts are written.
pub fn surface_scan(s: &Settings) -> Result<Exit, Abort> {
    let per_leaf = s.surface.points_per_leaf.unwrap_or(1);
    let mut csv = format!("{SURFACE_CSV_HEADER}\n");
    let (mut rows, mut worst) = (0usize, 0.0_f64);
    for leaf in scan_leaves(s) {
        for _ in 0..per_leaf {
            let x = MapId::Yb3.sample_point(&[leaf.c1, leaf.c2], &mut sample_rng(s.seed, 200, rows));
            let m = leaf_embed_3x3(&x, &leaf).map_err(|e| Abort {
                exit: exit_for(&e),
                message: e.to_string(),
            })?;
            let f = char_poly_coeffs(&m, &CMatrix::identity(3)).coeffs;
            let r = discriminant_relative(f[0], f[1], f[2]);
            worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
            csv.push_str(&format!("{},{},{},{:e}\n", f[0].re, f[1].re, f[2].re, r));
            rows += 1;
        }
    }
    let passed = worst <= s.tolerances.surface;
    let report = SurfaceReport {
        schema: SCHEMA,
        command: "surface-scan",
        seed: s.seed,
        rows,
        max_residual: worst,
        tolerances: s.tolerances,
        passed,
        timestamp: unix_timestamp(),
    };
    match &s.out {
        Some(p) => {
            write_output(Some(p), &csv)?;
            write_json(None, &report)?;
        }
        None => {
            write_output(None, &csv)?;
            eprintln!("{}", serde_json::to_string(&report).expect("reports serialize"));
        }
    }
    Ok(if passed { Exit::Pass } else { Exit::Fail })
}
