//! Registry of the shipped maps, addressable by string id, with uniform
//! access to evaluation, Lax matrices, reduced brackets and sampling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps2::{self, Case};
use crate::maps3::{self, LeafParams3};
use crate::matrix::{c, CMatrix, C64};
use crate::refactor::SAMPLED_ZETAS;
use crate::sklyanin::{canonical, PoissonStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapId {
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2")]
    Case2,
    #[serde(rename = "ay")]
    Ay,
    #[serde(rename = "yb3")]
    Yb3,
    #[serde(rename = "boussinesq")]
    Boussinesq,
    #[serde(rename = "gv")]
    Gv,
    #[serde(rename = "gv-vector")]
    GvVector,
}

pub const ALL_MAPS: [MapId; 7] = [
    MapId::Case1,
    MapId::Case2,
    MapId::Ay,
    MapId::Yb3,
    MapId::Boussinesq,
    MapId::Gv,
    MapId::GvVector,
];

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_MAPS
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMap(s.to_string()))
    }
}

/// Intermediate values beyond this magnitude make a random sample inadmissible.
pub const ADMISSIBLE_BOUND: f64 = 1e2;
/// Minimum magnitude for parameters and coordinates that appear in denominators.
pub const SAMPLE_FLOOR: f64 = 0.3;

fn unit<R: Rng>(rng: &mut R) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn away_from_zero<R: Rng>(rng: &mut R) -> C64 {
    loop {
        let z = unit(rng);
        if z.norm() >= SAMPLE_FLOOR {
            return z;
        }
    }
}

fn check_len(v: &[C64], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("{what}: expected {n} values, got {}", v.len())));
    }
    Ok(())
}

pub type MapOutput = (Vec<C64>, Vec<C64>);

impl MapId {
    pub fn as_str(self) -> &'static str {
        match self {
            MapId::Case1 => "case1",
            MapId::Case2 => "case2",
            MapId::Ay => "ay",
            MapId::Yb3 => "yb3",
            MapId::Boussinesq => "boussinesq",
            MapId::Gv => "gv",
            MapId::GvVector => "gv-vector",
        }
    }

    pub fn coord_dim(self) -> usize {
        match self {
            MapId::Case1 | MapId::Case2 | MapId::Ay => 2,
            _ => 4,
        }
    }

    pub fn param_dim(self) -> usize {
        match self {
            MapId::Case1 | MapId::Case2 => 4,
            MapId::Ay => 3,
            MapId::Yb3 => 2,
            MapId::Boussinesq | MapId::Gv | MapId::GvVector => 1,
        }
    }

    pub fn coord_names(self) -> &'static [&'static str] {
        match self {
            MapId::Case1 | MapId::Case2 | MapId::Ay => &["x1", "x2"],
            MapId::GvVector => &["xi1", "xi2", "eta1", "eta2"],
            _ => &["x1", "x2", "X1", "X2"],
        }
    }

    fn leaf3(self, a: &[C64]) -> LeafParams3 {
        match self {
            MapId::Boussinesq => LeafParams3::boussinesq(a[0]),
            MapId::Gv => LeafParams3::gv(a[0]),
            _ => LeafParams3::new(a[0], a[1]),
        }
    }

    fn check(self, x: &[C64], a: &[C64]) -> Result<()> {
        check_len(x, self.coord_dim(), "coordinates")?;
        check_len(a, self.param_dim(), "parameters")
    }

    /// `(x, y) ↦ (u, v)` with parameters `a` on the first slot and `b` on the second.
    pub fn apply(self, x: &[C64], a: &[C64], y: &[C64], b: &[C64]) -> Result<MapOutput> {
        self.check(x, a)?;
        self.check(y, b)?;
        let out = match self {
            MapId::Case1 => to_vecs(maps2::case_map(Case::I, x, a, y, b)?),
            MapId::Case2 => to_vecs(maps2::case_map(Case::II, x, a, y, b)?),
            MapId::Ay => to_vecs(maps2::adler_yamilov_general(x, a, y, b)?),
            MapId::Yb3 => to_vecs(maps3::map_3x3(x, a, y, b)?),
            MapId::Boussinesq => to_vecs(maps3::boussinesq_map(x, a[0], y, b[0])?),
            MapId::Gv => to_vecs(maps3::gv_map(x, a[0], y, b[0])?),
            MapId::GvVector => to_vecs(maps3::gv_vector_map(x, a[0], y, b[0])?),
        };
        if out.0.iter().chain(&out.1).any(|z| !z.is_finite()) {
            return Err(Error::PoleError("non-finite map value".into()));
        }
        Ok(out)
    }

    /// The strong Lax matrix `L(x; a)` at spectral parameter `ζ`.
    pub fn lax(self, x: &[C64], a: &[C64], zeta: C64) -> Result<CMatrix> {
        self.check(x, a)?;
        match self {
            MapId::Case1 => Case::I.lax(x, a, zeta),
            MapId::Case2 => Case::II.lax(x, a, zeta),
            MapId::Ay => maps2::ay_lax(x, a, zeta),
            MapId::Yb3 | MapId::Boussinesq | MapId::Gv => maps3::lax3(x, &self.leaf3(a), zeta),
            MapId::GvVector => maps3::gv_vector_lax(x, a[0], zeta),
        }
    }

    /// Reduced bracket on one factor; `None` where no closed form is shipped.
    pub fn structure(self, a: &[C64]) -> Option<PoissonStructure> {
        match self {
            MapId::Case1 => Case::I.bracket(a).ok(),
            MapId::Case2 => Case::II.bracket(a).ok(),
            MapId::Ay => maps2::ay_bracket(a).ok(),
            MapId::Yb3 | MapId::Boussinesq | MapId::Gv => Some(canonical(2)),
            MapId::GvVector => None,
        }
    }

    /// Casimir levels the Lax matrix is expected to carry, as `(f₀, …)`.
    pub fn casimir_levels(self, a: &[C64]) -> Option<Vec<C64>> {
        match self {
            MapId::Case1 | MapId::Case2 => Some(vec![a[2], a[3]]),
            MapId::Yb3 | MapId::Boussinesq | MapId::Gv => Some(self.leaf3(a).casimirs().to_vec()),
            _ => None,
        }
    }

    /// Leading matrix of the pencil, used to compute Casimirs of `L(x; a) = X - ζK`.
    pub fn leading(self, a: &[C64]) -> Result<CMatrix> {
        match self {
            MapId::Case1 => Case::I.leading(a),
            MapId::Case2 => Case::II.leading(a),
            _ => Ok(CMatrix::identity(3)),
        }
    }

    pub fn sample_params<R: Rng>(self, rng: &mut R) -> Vec<C64> {
        match self {
            MapId::Case1 => vec![away_from_zero(rng), away_from_zero(rng), unit(rng), unit(rng)],
            MapId::Case2 => vec![away_from_zero(rng), unit(rng), unit(rng), unit(rng)],
            MapId::Ay => vec![away_from_zero(rng), unit(rng), away_from_zero(rng)],
            MapId::Yb3 => vec![unit(rng), unit(rng)],
            MapId::Boussinesq | MapId::Gv | MapId::GvVector => vec![away_from_zero(rng)],
        }
    }

    /// A random point in the domain of the embedding for parameters `a`.
    pub fn sample_point<R: Rng>(self, a: &[C64], rng: &mut R) -> Vec<C64> {
        loop {
            let p: Vec<C64> = match self {
                MapId::Case1 => vec![unit(rng), away_from_zero(rng)],
                MapId::Case2 | MapId::Ay => vec![unit(rng), unit(rng)],
                MapId::Yb3 | MapId::Boussinesq | MapId::Gv => {
                    vec![unit(rng), unit(rng), away_from_zero(rng), away_from_zero(rng)]
                }
                MapId::GvVector => (0..4).map(|_| unit(rng)).collect(),
            };
            let ok = match self {
                MapId::Case2 => (a[0] * p[1] - a[1] * p[0]).norm() >= SAMPLE_FLOOR,
                MapId::GvVector => (p[0] * p[2] + p[1] * p[3] + 1.0).norm() >= SAMPLE_FLOOR,
                _ => true,
            };
            if ok {
                return p;
            }
        }
    }

    /// `max_ζ ‖L(u;a)L(v;b) - L(y;b)L(x;a)‖_∞ / (1 + ‖L(y;b)‖‖L(x;a)‖)`.
    pub fn lax_residual(self, x: &[C64], a: &[C64], y: &[C64], b: &[C64], u: &[C64], v: &[C64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in SAMPLED_ZETAS.iter() {
            let (lx, ly) = (self.lax(x, a, z)?, self.lax(y, b, z)?);
            let lhs = self.lax(u, a, z)? * self.lax(v, b, z)?;
            let rhs = &ly * &lx;
            worst = worst.max((lhs - rhs).norm_inf() / (1.0 + ly.norm_inf() * lx.norm_inf()));
        }
        Ok(worst)
    }
}

fn to_vecs<const N: usize>((u, v): ([C64; N], [C64; N])) -> MapOutput {
    (u.to_vec(), v.to_vec())
}

fn max_mag(vs: &[&[C64]]) -> f64 {
    vs.iter().flat_map(|v| v.iter()).map(|z| z.norm()).fold(0.0, f64::max)
}

/// Outcome of comparing `R₂₃R₁₃R₁₂` with `R₁₂R₁₃R₂₃` on one triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YbSample {
    /// `‖left - right‖_∞ / (1 + largest magnitude met along either composition)`.
    pub residual: f64,
    pub max_magnitude: f64,
}

type Triple = [Vec<C64>; 3];

/// Evaluates both sides of the Yang–Baxter equation on `(x, y, z)` with parameters `(a, b, g)`.
pub fn yb_residual(map: MapId, state: &Triple, params: &Triple) -> Result<YbSample> {
    let [a, b, g] = params;
    let r12 = |s: &Triple| -> Result<Triple> {
        let (u, v) = map.apply(&s[0], a, &s[1], b)?;
        Ok([u, v, s[2].clone()])
    };
    let r13 = |s: &Triple| -> Result<Triple> {
        let (u, v) = map.apply(&s[0], a, &s[2], g)?;
        Ok([u, s[1].clone(), v])
    };
    let r23 = |s: &Triple| -> Result<Triple> {
        let (u, v) = map.apply(&s[1], b, &s[2], g)?;
        Ok([s[0].clone(), u, v])
    };
    let l1 = r12(state)?;
    let l2 = r13(&l1)?;
    let left = r23(&l2)?;
    let q1 = r23(state)?;
    let q2 = r13(&q1)?;
    let right = r12(&q2)?;
    let mut mag: f64 = 0.0;
    for t in [state, &l1, &l2, &left, &q1, &q2, &right] {
        mag = mag.max(max_mag(&[&t[0], &t[1], &t[2]]));
    }
    let diff = (0..3)
        .flat_map(|i| left[i].iter().zip(&right[i]).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max);
    Ok(YbSample {
        residual: diff / (1.0 + mag),
        max_magnitude: mag,
    })
}

/// Draws parameters and points for a triple, rejecting draws whose
/// compositions fail or leave [`ADMISSIBLE_BOUND`]. Returns the sample and
/// the number of rejected draws.
pub fn sample_yb_triple<R: Rng>(map: MapId, rng: &mut R, max_tries: usize) -> Option<(Triple, Triple, YbSample, usize)> {
    for attempt in 0..max_tries {
        let params = [map.sample_params(rng), map.sample_params(rng), map.sample_params(rng)];
        let state = [
            map.sample_point(&params[0], rng),
            map.sample_point(&params[1], rng),
            map.sample_point(&params[2], rng),
        ];
        if let Ok(s) = yb_residual(map, &state, &params) {
            if s.max_magnitude <= ADMISSIBLE_BOUND {
                return Some((state, params, s, attempt));
            }
        }
    }
    None
}

/// Draws one admissible pair `((x, a), (y, b))` whose image stays within [`ADMISSIBLE_BOUND`].
pub fn sample_pair<R: Rng>(map: MapId, rng: &mut R, max_tries: usize) -> Option<(Vec<C64>, Vec<C64>, Vec<C64>, Vec<C64>, usize)> {
    for attempt in 0..max_tries {
        let (a, b) = (map.sample_params(rng), map.sample_params(rng));
        let (x, y) = (map.sample_point(&a, rng), map.sample_point(&b, rng));
        if let Ok((u, v)) = map.apply(&x, &a, &y, &b) {
            if max_mag(&[&u, &v]) <= ADMISSIBLE_BOUND {
                return Some((x, a, y, b, attempt));
            }
        }
    }
    None
}
