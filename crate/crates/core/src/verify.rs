//! Randomized property suites for the shipped maps, producing
//! machine-readable reports. Samples are independent and run in parallel;
//! sample `i` always draws from stream `i` of the seeded generator, so
//! reports depend only on `(map, samples, seed, tolerances)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ay_independence_ratio, ay_integral_observables, integrals_ay};
use crate::maps::{sample_pair, sample_yb_triple, MapId};
use crate::maps2::{case_invert, Case};
use crate::matrix::{c, char_poly_coeffs, CMatrix, CommutingFamily, FamilyKind, C64};
use crate::sklyanin::{bracket, poisson_map_check_adaptive, PoissonStructure, POISSON_FD_STEP};

/// Draw attempts per sample before giving up on finding an admissible one.
pub const MAX_TRIES: usize = 1000;
/// Poisson checks use at most this many samples.
pub const POISSON_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub yang_baxter: f64,
    pub lax: f64,
    pub poisson: f64,
    pub casimir: f64,
    pub strong_lax: f64,
    pub integrals: f64,
    pub involution: f64,
    /// Lower bound on `σ₂/σ₁` of the integral gradients.
    pub independence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            yang_baxter: 1e-9,
            lax: 1e-10,
            poisson: 1e-6,
            casimir: 1e-10,
            strong_lax: 1e-8,
            integrals: 1e-10,
            involution: 1e-9,
            independence: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> std::result::Result<(), String> {
        let all = [
            ("yang_baxter", self.yang_baxter),
            ("lax", self.lax),
            ("poisson", self.poisson),
            ("casimir", self.casimir),
            ("strong_lax", self.strong_lax),
            ("integrals", self.integrals),
            ("involution", self.involution),
            ("independence", self.independence),
        ];
        for (name, v) in all {
            if !(v > 0.0) {
                return Err(format!("tolerance '{name}' must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Pass when the largest observed residual is at most the tolerance.
    Max,
    /// Pass when the smallest observed value is at least the tolerance.
    Min,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub statistic: Statistic,
    pub value: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Random draws discarded as inadmissible (near a pole or outside the domain).
    pub rejected: usize,
    /// Admissible samples on which the check itself raised an error.
    pub errors: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub command: String,
    pub map: MapId,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub timestamp: u64,
}

pub fn unix_timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Generator for sample `index` of check `check`.
pub fn sample_rng(seed: u64, check: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ check.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index as u64);
    rng
}

enum Outcome {
    Value(f64, usize),
    Error(Error, usize),
    NoSample,
}

fn run_check<F>(name: &str, statistic: Statistic, tolerance: f64, samples: usize, seed: u64, check_id: u64, f: F) -> CheckResult
where
    F: Fn(&mut ChaCha8Rng) -> Outcome + Sync,
{
    let outcomes: Vec<Outcome> = (0..samples)
        .into_par_iter()
        .map(|i| f(&mut sample_rng(seed, check_id, i)))
        .collect();
    let mut value = match statistic {
        Statistic::Max => 0.0,
        Statistic::Min => f64::INFINITY,
    };
    let (mut rejected, mut errors, mut first_error, mut missing) = (0, 0, None, 0);
    for o in outcomes {
        match o {
            Outcome::Value(v, r) => {
                rejected += r;
                value = match statistic {
                    Statistic::Max => f64::max(value, if v.is_nan() { f64::INFINITY } else { v }),
                    Statistic::Min => f64::min(value, if v.is_nan() { 0.0 } else { v }),
                };
            }
            Outcome::Error(e, r) => {
                rejected += r;
                errors += 1;
                first_error.get_or_insert_with(|| format!("{}: {e}", e.kind()));
            }
            Outcome::NoSample => {
                rejected += MAX_TRIES;
                missing += 1;
            }
        }
    }
    let within = match statistic {
        Statistic::Max => value <= tolerance,
        Statistic::Min => value >= tolerance,
    };
    let passed = within && errors == 0 && missing == 0;
    if missing > 0 {
        first_error.get_or_insert_with(|| format!("{missing} samples found no admissible draw"));
    }
    CheckResult {
        name: name.to_string(),
        statistic,
        value,
        tolerance,
        samples,
        rejected,
        errors,
        passed,
        first_error,
    }
}

fn concat(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().chain(b).copied().collect()
}

/// Pushforward check of the product bracket under one map application.
pub fn map_poisson_residual(map: MapId, x: &[C64], a: &[C64], y: &[C64], b: &[C64]) -> Result<f64> {
    let (ja, jb) = match (map.structure(a), map.structure(b)) {
        (Some(ja), Some(jb)) => (ja, jb),
        _ => return Err(Error::DimensionMismatch(format!("no reduced bracket for '{map}'"))),
    };
    let j: PoissonStructure = ja.product(&jb);
    let k = map.coord_dim();
    let (a, b) = (a.to_vec(), b.to_vec());
    let f = move |p: &[C64]| -> Result<Vec<C64>> {
        let (u, v) = map.apply(&p[..k], &a, &p[k..], &b)?;
        Ok(concat(&u, &v))
    };
    poisson_map_check_adaptive(f, &j, &j, &concat(x, y), POISSON_FD_STEP).map(|(r, _)| r)
}

/// Relative deviation of the Casimirs of `L(u; a)` from the levels fixed by `a`.
pub fn map_casimir_residual(map: MapId, u: &[C64], a: &[C64]) -> Result<f64> {
    let Some(levels) = map.casimir_levels(a) else {
        return Err(Error::DimensionMismatch(format!("no Casimir levels for '{map}'")));
    };
    let zero = c(0.0, 0.0);
    let f = char_poly_coeffs(&map.lax(u, a, zero)?, &map.leading(a)?).coeffs;
    Ok(levels
        .iter()
        .zip(&f)
        .map(|(l, v)| (v - l).norm() / (1.0 + l.norm()))
        .fold(0.0, f64::max))
}

/// Runs every suite applicable to `map`.
pub fn verify_map(map: MapId, samples: usize, seed: u64, tol: &Tolerances) -> VerifyReport {
    let mut checks = Vec::new();
    checks.push(run_check("yang_baxter", Statistic::Max, tol.yang_baxter, samples, seed, 1, |rng| {
        match sample_yb_triple(map, rng, MAX_TRIES) {
            Some((_, _, s, r)) => Outcome::Value(s.residual, r),
            None => Outcome::NoSample,
        }
    }));
    let with_pair = |rng: &mut ChaCha8Rng, g: &dyn Fn(&[C64], &[C64], &[C64], &[C64]) -> Result<f64>| match sample_pair(map, rng, MAX_TRIES) {
        Some((x, a, y, b, r)) => match g(&x, &a, &y, &b) {
            Ok(v) => Outcome::Value(v, r),
            Err(e) => Outcome::Error(e, r),
        },
        None => Outcome::NoSample,
    };
    checks.push(run_check("lax", Statistic::Max, tol.lax, samples, seed, 2, |rng| {
        with_pair(rng, &|x, a, y, b| {
            let (u, v) = map.apply(x, a, y, b)?;
            map.lax_residual(x, a, y, b, &u, &v)
        })
    }));
    if map.structure(&map.sample_params(&mut sample_rng(seed, 0, 0))).is_some() {
        checks.push(run_check("poisson", Statistic::Max, tol.poisson, samples.min(POISSON_SAMPLES), seed, 3, |rng| {
            with_pair(rng, &|x, a, y, b| map_poisson_residual(map, x, a, y, b))
        }));
    }
    if map.casimir_levels(&map.sample_params(&mut sample_rng(seed, 0, 0))).is_some() {
        checks.push(run_check("casimir", Statistic::Max, tol.casimir, samples, seed, 4, |rng| {
            with_pair(rng, &|x, a, y, b| {
                let (u, v) = map.apply(x, a, y, b)?;
                Ok(map_casimir_residual(map, &u, a)?.max(map_casimir_residual(map, &v, b)?))
            })
        }));
    }
    if let Some(case) = match map {
        MapId::Case1 => Some(Case::I),
        MapId::Case2 => Some(Case::II),
        _ => None,
    } {
        checks.push(run_check("strong_lax", Statistic::Max, tol.strong_lax, samples, seed, 5, |rng| {
            with_pair(rng, &|x, a, y, b| {
                let (u, v) = map.apply(x, a, y, b)?;
                let (v2, x2) = case_invert(case, &u, a, y, b)?;
                let scale = 1.0 + x.iter().chain(&v).map(|z| z.norm()).fold(0.0, f64::max);
                let d = (0..2).map(|i| (v2[i] - v[i]).norm().max((x2[i] - x[i]).norm())).fold(0.0, f64::max);
                Ok(d / scale)
            })
        }));
    }
    if map == MapId::Ay {
        checks.push(run_check("integrals", Statistic::Max, tol.integrals, samples, seed, 6, |rng| {
            with_pair(rng, &|x, a, y, b| {
                let (u, v) = map.apply(x, a, y, b)?;
                let (j1, j2) = integrals_ay(x, y, a, b)?;
                let (k1, k2) = integrals_ay(&u, &v, a, b)?;
                Ok(((k1 - j1).norm() / (1.0 + j1.norm())).max((k2 - j2).norm() / (1.0 + j2.norm())))
            })
        }));
        checks.push(run_check("involution", Statistic::Max, tol.involution, samples, seed, 7, |rng| {
            with_pair(rng, &|x, a, y, b| {
                let j = map.structure(a).unwrap().product(&map.structure(b).unwrap());
                let (j1, j2) = ay_integral_observables(a, b);
                Ok(bracket(&j, &j1, &j2, &concat(x, y))?.norm())
            })
        }));
        checks.push(run_check("independence", Statistic::Min, tol.independence, samples, seed, 8, |rng| {
            with_pair(rng, &|x, a, y, b| Ok(ay_independence_ratio(x, y, a, b)))
        }));
    }
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        schema: "1".into(),
        command: "verify".into(),
        map,
        seed,
        samples,
        tolerances: *tol,
        checks,
        passed,
        timestamp: unix_timestamp(),
    }
}

/// A random admissible re-factorization instance: entries of `X, Y` from the
/// unit complex square, commuting `K_α, K_β` from the given family.
#[derive(Debug, Clone)]
pub struct RefactorInstance {
    pub x: CMatrix,
    pub y: CMatrix,
    pub ka: CMatrix,
    pub kb: CMatrix,
}

/// Instances whose denominator condition estimate exceeds this are redrawn.
pub const MAX_DENOMINATOR_CONDITION: f64 = 1e6;

pub fn sample_refactor_instance<R: Rng>(rng: &mut R, n: usize, kind: FamilyKind) -> RefactorInstance {
    let fam = CommutingFamily::new(kind, n).expect("family");
    let mut unit = |rng: &mut R| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    loop {
        let x = CMatrix::from_fn(n, n, |_, _| unit(rng));
        let y = CMatrix::from_fn(n, n, |_, _| unit(rng));
        let draw = |rng: &mut R, unit: &mut dyn FnMut(&mut R) -> C64| -> Vec<C64> {
            (0..fam.param_count())
                .map(|_| loop {
                    let z = unit(rng);
                    if z.norm() >= 0.3 {
                        break z;
                    }
                })
                .collect()
        };
        let pa = draw(rng, &mut unit);
        let pb = draw(rng, &mut unit);
        let (Ok(ka), Ok(kb)) = (fam.eval(&pa), fam.eval(&pb)) else { continue };
        let Ok(rec) = crate::refactor::Recurrence::build(&x, &y, &ka, &kb) else { continue };
        match rec.denominator.condition_estimate() {
            Ok(k) if k <= MAX_DENOMINATOR_CONDITION => return RefactorInstance { x, y, ka, kb },
            _ => continue,
        }
    }
}
