//! Transfer dynamics on periodic staircases: monodromy matrices, their
//! spectral invariants, and the two integrals of the Adler–Yamilov-type map.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MapId;
use crate::matrix::{char_poly_coeffs, re, CMatrix, C64};
use crate::refactor::SAMPLED_ZETAS;
use crate::sklyanin::{singular_values, Observable};

/// Coordinates and parameters of one lattice site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub coords: Vec<C64>,
    pub params: Vec<C64>,
}

/// A periodic staircase: `sites[0]` is the horizontal (carried) variable
/// `x`, and `sites[1..]` are the `m` vertical variables `y₁, …, y_m` of one
/// period. The monodromy is `L(y_m) ⋯ L(y₁) L(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaircaseState {
    pub map: MapId,
    pub sites: Vec<Site>,
}

impl StaircaseState {
    pub fn new(map: MapId, sites: Vec<Site>) -> Result<Self> {
        if sites.len() < 2 {
            return Err(Error::DimensionMismatch("a staircase needs at least two sites".into()));
        }
        for s in &sites {
            if s.coords.len() != map.coord_dim() || s.params.len() != map.param_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "site does not match map '{map}' ({} coordinates, {} parameters)",
                    map.coord_dim(),
                    map.param_dim()
                )));
            }
        }
        Ok(StaircaseState { map, sites })
    }

    pub fn period(&self) -> usize {
        self.sites.len() - 1
    }
}

/// Ordered product of the site Lax matrices at `ζ`.
pub fn monodromy(state: &StaircaseState, zeta: C64) -> Result<CMatrix> {
    let mut acc: Option<CMatrix> = None;
    for s in &state.sites {
        let l = state.map.lax(&s.coords, &s.params, zeta)?;
        acc = Some(match acc {
            None => l,
            Some(m) => l * m,
        });
    }
    Ok(acc.expect("non-empty staircase"))
}

/// Characteristic-polynomial coefficients of the monodromy at each sampled `ζ`.
pub fn spectral_invariants(state: &StaircaseState) -> Result<Vec<Vec<C64>>> {
    Ok(spectrum(state)?.coeffs)
}

/// Monodromy coefficients together with `‖M(ζ)‖_∞` at each sampled `ζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub coeffs: Vec<Vec<C64>>,
    pub norms: Vec<f64>,
}

pub fn spectrum(state: &StaircaseState) -> Result<Spectrum> {
    let mut out = Spectrum {
        coeffs: Vec::new(),
        norms: Vec::new(),
    };
    for &z in SAMPLED_ZETAS.iter() {
        let m = monodromy(state, z)?;
        out.coeffs.push(char_poly_coeffs(&m, &CMatrix::identity(m.rows())).coeffs);
        out.norms.push(m.norm_inf());
    }
    Ok(out)
}

/// Largest change of a monodromy coefficient, each measured against its
/// natural size: `f_k` of an n×n matrix is a sum of products of `n - k`
/// entries, so it is compared with `1 + ‖M‖^(n-k)` (the larger norm of the two
/// states). Dividing by `|f_k|` alone would report cancellation, not drift.
pub fn coeff_drift(now: &Spectrum, reference: &Spectrum) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, (a, b)) in now.coeffs.iter().zip(&reference.coeffs).enumerate() {
        let norm = now.norms[i].max(reference.norms[i]);
        let n = a.len() as i32;
        for (k, (p, q)) in a.iter().zip(b).enumerate() {
            worst = worst.max((p - q).norm() / (1.0 + norm.powi(n - k as i32)));
        }
    }
    worst
}

/// One transfer step: the carrier is pushed through every vertical site.
pub fn transfer_step(state: &StaircaseState) -> Result<StaircaseState> {
    let map = state.map;
    let carrier = &state.sites[0];
    let mut cur = carrier.coords.clone();
    let mut verticals = Vec::with_capacity(state.period());
    for s in &state.sites[1..] {
        let (u, v) = map.apply(&cur, &carrier.params, &s.coords, &s.params)?;
        verticals.push(Site {
            coords: v,
            params: s.params.clone(),
        });
        cur = u;
    }
    let mut sites = vec![Site {
        coords: cur,
        params: carrier.params.clone(),
    }];
    sites.extend(verticals);
    Ok(StaircaseState { map, sites })
}

/// `(J₁, J₂)` for the Adler–Yamilov-type map with `ᾱ = (α₁, α₂, α₃)`, `β̄ = (β₁, β₂, β₃)`.
pub fn integrals_ay(x: &[C64], y: &[C64], alpha: &[C64], beta: &[C64]) -> Result<(C64, C64)> {
    let (a1, a2, a3) = (alpha[0], alpha[1], alpha[2]);
    let (b1, b2, b3) = (beta[0], beta[1], beta[2]);
    if a3.norm() == 0.0 || b3.norm() == 0.0 {
        return Err(Error::PoleError("alpha3 or beta3 vanishes".into()));
    }
    let (x1, x2, y1, y2) = (x[0], x[1], y[0], y[1]);
    let j1 = a1 * b1 / a3 * x1 * x2 + a1 * b1 / b3 * y1 * y2;
    let j2 = x2 * y1 + x1 * y2 + a1 * b1 / (a3 * b3) * (a2 + x1 * x2) * (b2 + y1 * y2);
    Ok((j1, j2))
}

/// `J₁, J₂` as observables on `(x₁, x₂, y₁, y₂)` with exact gradients.
pub fn ay_integral_observables(alpha: &[C64], beta: &[C64]) -> (Observable, Observable) {
    let (a1, a2, a3) = (alpha[0], alpha[1], alpha[2]);
    let (b1, b2, b3) = (beta[0], beta[1], beta[2]);
    let (k1, k2, k) = (a1 * b1 / a3, a1 * b1 / b3, a1 * b1 / (a3 * b3));
    let j1 = Observable::new(4, move |p| k1 * p[0] * p[1] + k2 * p[2] * p[3])
        .with_gradient(move |p| vec![k1 * p[1], k1 * p[0], k2 * p[3], k2 * p[2]]);
    let j2 = Observable::new(4, move |p| p[1] * p[2] + p[0] * p[3] + k * (a2 + p[0] * p[1]) * (b2 + p[2] * p[3]))
        .with_gradient(move |p| {
            let (sx, sy) = (a2 + p[0] * p[1], b2 + p[2] * p[3]);
            vec![
                p[3] + k * p[1] * sy,
                p[2] + k * p[0] * sy,
                p[1] + k * p[3] * sx,
                p[0] + k * p[2] * sx,
            ]
        });
    (j1, j2)
}

/// `σ₂/σ₁` of the 4×2 gradient matrix `[∇J₁ ∇J₂]`.
pub fn ay_independence_ratio(x: &[C64], y: &[C64], alpha: &[C64], beta: &[C64]) -> f64 {
    let (j1, j2) = ay_integral_observables(alpha, beta);
    let p = [x[0], x[1], y[0], y[1]];
    let (g1, g2) = (j1.gradient(&p), j2.gradient(&p));
    let m = CMatrix::from_fn(4, 2, |i, j| if j == 0 { g1[i] } else { g2[i] });
    let s = singular_values(&m);
    if s[0] == 0.0 {
        0.0
    } else {
        s[1] / s[0]
    }
}

/// Full trajectories are kept only up to this many steps by default.
pub const DEFAULT_TRAJECTORY_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    /// Largest change of any monodromy coefficient at any sampled `ζ`, see [`coeff_drift`].
    pub max_coeff_drift: f64,
    /// Largest relative change of `J₁` (1-periodic Adler–Yamilov staircases only).
    pub j1_drift: Option<f64>,
    pub j2_drift: Option<f64>,
    pub steps: usize,
    /// Least-squares slope of the per-step coefficient drift against the step index.
    pub drift_slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evolution {
    /// States `0..=min(steps, cap)`.
    pub trajectory: Vec<StaircaseState>,
    pub report: DriftReport,
}

fn ay_js(state: &StaircaseState) -> Result<Option<(C64, C64)>> {
    if state.map != MapId::Ay || state.period() != 1 {
        return Ok(None);
    }
    let (x, y) = (&state.sites[0], &state.sites[1]);
    integrals_ay(&x.coords, &y.coords, &x.params, &y.params).map(Some)
}

/// Applies [`transfer_step`] `steps` times, tracking invariant drift.
pub fn transfer_evolve(state: &StaircaseState, steps: usize, cap: usize) -> Result<Evolution> {
    let spec0 = spectrum(state)?;
    let js0 = ay_js(state)?;
    let mut trajectory = vec![state.clone()];
    let mut cur = state.clone();
    let (mut max_drift, mut j1d, mut j2d): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for k in 1..=steps {
        let fail = |e: Error| Error::PoleEncountered {
            step: k,
            reason: e.to_string(),
        };
        cur = transfer_step(&cur).map_err(fail)?;
        let d = coeff_drift(&spectrum(&cur).map_err(fail)?, &spec0);
        if !d.is_finite() {
            return Err(fail(Error::PoleError("non-finite monodromy".into())));
        }
        max_drift = max_drift.max(d);
        sxy += k as f64 * d;
        sxx += (k * k) as f64;
        if let (Some((a, b)), Some((p, q))) = (js0, ay_js(&cur).map_err(fail)?) {
            j1d = j1d.max((p - a).norm() / (1.0 + a.norm()));
            j2d = j2d.max((q - b).norm() / (1.0 + b.norm()));
        }
        if k <= cap {
            trajectory.push(cur.clone());
        }
    }
    let drift_slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    log::info!("transfer_evolve: {steps} steps, max drift {max_drift:.3e}, slope {drift_slope:.3e}");
    Ok(Evolution {
        trajectory,
        report: DriftReport {
            max_coeff_drift: max_drift,
            j1_drift: js0.map(|_| j1d),
            j2_drift: js0.map(|_| j2d),
            steps,
            drift_slope,
        },
    })
}

pub const TRAJECTORY_CSV_HEADER: &str = "step,site,coord,re,im";

/// One row per (step, site, coordinate).
pub fn write_trajectory_csv<W: Write>(mut w: W, trajectory: &[StaircaseState]) -> std::io::Result<()> {
    writeln!(w, "{TRAJECTORY_CSV_HEADER}")?;
    for (step, st) in trajectory.iter().enumerate() {
        let names = st.map.coord_names();
        for (i, s) in st.sites.iter().enumerate() {
            for (name, z) in names.iter().zip(&s.coords) {
                writeln!(w, "{step},{i},{name},{:e},{:e}", z.re, z.im)?;
            }
        }
    }
    Ok(())
}

/// Coefficients `(t₀, t₁, t₂)` of `tr M(ζ) = t₀ + t₁ζ + t₂ζ²` for a 1-periodic staircase.
pub fn trace_coefficients(state: &StaircaseState) -> Result<[C64; 3]> {
    let t = |z: f64| -> Result<C64> { Ok(monodromy(state, re(z))?.trace()) };
    let (t0, t1, tm) = (t(0.0)?, t(1.0)?, t(-1.0)?);
    Ok([t0, (t1 - tm) / 2.0, (t1 + tm) / 2.0 - t0])
}
