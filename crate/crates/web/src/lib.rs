//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Three operations: evolve an Adler–Yamilov staircase and watch its
//! integrals, draw a slice of the leaf discriminant surface, and measure the
//! Yang–Baxter residual of every shipped map.

use wasm_bindgen::prelude::*;
use yb_core::lattice::{transfer_evolve, Site, StaircaseState};
use yb_core::maps::{sample_yb_triple, MapId, ALL_MAPS};
use yb_core::maps3::{discriminant_surface, LeafParams3};
use yb_core::verify::{sample_rng, MAX_TRIES};
use yb_core::{re, C64};

fn reals(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| re(x)).collect()
}

#[wasm_bindgen]
pub struct AyOrbit {
    points: Vec<f64>,
    j1_drift: f64,
    j2_drift: f64,
}

#[wasm_bindgen]
impl AyOrbit {
    /// `(x₁, x₂)` of the carried site at every step, flattened.
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn j1_drift(&self) -> f64 {
        self.j1_drift
    }

    #[wasm_bindgen(getter)]
    pub fn j2_drift(&self) -> f64 {
        self.j2_drift
    }
}

/// Evolves the 1-periodic staircase `(x, y)` for `steps` transfer steps.
#[wasm_bindgen]
pub fn ay_orbit(x: Vec<f64>, alpha: Vec<f64>, y: Vec<f64>, beta: Vec<f64>, steps: usize) -> Result<AyOrbit, JsError> {
    let sites = vec![
        Site {
            coords: reals(&x),
            params: reals(&alpha),
        },
        Site {
            coords: reals(&y),
            params: reals(&beta),
        },
    ];
    let state = StaircaseState::new(MapId::Ay, sites)?;
    let ev = transfer_evolve(&state, steps, steps)?;
    let points = ev
        .trajectory
        .iter()
        .flat_map(|s| s.sites[0].coords.iter().map(|z| z.re))
        .collect();
    Ok(AyOrbit {
        points,
        j1_drift: ev.report.j1_drift.unwrap_or(0.0),
        j2_drift: ev.report.j2_drift.unwrap_or(0.0),
    })
}

/// The surface polynomial on an `n × n` grid of `(a₀, a₁) ∈ [-w, w]²` at fixed
/// `a₂`, row-major with `a₁` decreasing down the rows.
#[wasm_bindgen]
pub fn discriminant_slice(a2: f64, w: f64, n: usize) -> Vec<f64> {
    let at = |k: usize| if n < 2 { 0.0 } else { -w + 2.0 * w * k as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        let a1 = at(n - 1 - row);
        for col in 0..n {
            out.push(discriminant_surface(re(at(col)), re(a1), re(a2)).re);
        }
    }
    out
}

/// Where the Boussinesq and GV curves cross the slice at `a₂`, as
/// `[a₀, a₁]` pairs in that order.
#[wasm_bindgen]
pub fn curve_points(a2: f64) -> Vec<f64> {
    let b = LeafParams3::boussinesq(re(a2 / 3.0)).casimirs();
    let g = LeafParams3::gv(re(a2)).casimirs();
    vec![b[0].re, b[1].re, g[0].re, g[1].re]
}

#[wasm_bindgen]
pub fn map_ids() -> Vec<String> {
    ALL_MAPS.iter().map(|m| m.to_string()).collect()
}

/// Largest Yang–Baxter residual over `samples` random triples for each map
/// in [`map_ids`] order; `NaN` where no admissible triple was found.
#[wasm_bindgen]
pub fn yb_residuals(seed: u64, samples: usize) -> Vec<f64> {
    ALL_MAPS
        .iter()
        .map(|&map| {
            let mut worst: f64 = 0.0;
            for i in 0..samples {
                match sample_yb_triple(map, &mut sample_rng(seed, 1, i), MAX_TRIES) {
                    Some((_, _, s, _)) => worst = worst.max(s.residual),
                    None => return f64::NAN,
                }
            }
            worst
        })
        .collect()
}
