//! Re-factorization of binomial products `(Y - ζB)(X - ζA) = (U - ζA)(V - ζB)`
//! under conservation of the Casimirs of each factor.
//!
//! Two solvers are provided: the closed 2×2 form built from the matrices
//! `Π¹, Π²`, and the general n×n form obtained from the Cayley–Hamilton
//! theorem through the recurrences `M_i = M_1 M_{i-1} + N_{i-1}`,
//! `N_i = N_1 M_{i-1}`. Each successful call reports its own Lax residual and
//! Casimir drift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c, char_poly_coeffs, re, CMatrix, Lu, C64};

/// Spectral parameters at which polynomial identities in ζ are checked.
pub const SAMPLED_ZETAS: [C64; 6] = [
    C64::new(0.0, 0.0),
    C64::new(1.0, 0.0),
    C64::new(-1.0, 0.0),
    C64::new(0.0, 1.0),
    C64::new(0.0, -1.0),
    C64::new(2.0, 0.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefactorConfig {
    /// Bound on `lax_residual / (1 + ‖Y‖‖X‖)`.
    pub tol_lax: f64,
    /// Bound on the relative Casimir drift.
    pub tol_cas: f64,
    /// `‖AB - BA‖ > commute_tol (1 + ‖A‖‖B‖)` is rejected as non-commuting.
    pub commute_tol: f64,
}

impl Default for RefactorConfig {
    fn default() -> Self {
        RefactorConfig {
            tol_lax: 1e-9,
            tol_cas: 1e-9,
            commute_tol: 0.0,
        }
    }
}

impl RefactorConfig {
    /// Computes residuals but never rejects on them.
    pub fn unchecked() -> Self {
        RefactorConfig {
            tol_lax: f64::INFINITY,
            tol_cas: f64::INFINITY,
            commute_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefactorResult {
    pub u: CMatrix,
    pub v: CMatrix,
    /// `max_ζ ‖(U-ζA)(V-ζB) - (Y-ζB)(X-ζA)‖_∞` over [`SAMPLED_ZETAS`].
    pub lax_residual: f64,
    /// Largest relative deviation of `f_i(U;A)` from `f_i(X;A)` and `f_i(V;B)` from `f_i(Y;B)`.
    pub casimir_drift: f64,
}

/// `max_ζ ‖(U - ζA)(V - ζB) - (Y - ζB)(X - ζA)‖_∞`.
pub fn lax_residual(u: &CMatrix, v: &CMatrix, x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix) -> f64 {
    SAMPLED_ZETAS
        .iter()
        .map(|&z| {
            let lhs = (u - &a.scale(z)) * (v - &b.scale(z));
            let rhs = (y - &b.scale(z)) * (x - &a.scale(z));
            (lhs - rhs).norm_inf()
        })
        .fold(0.0, f64::max)
}

/// Relative Casimir drift of `(U, V)` against `(X, Y)`.
pub fn casimir_drift(u: &CMatrix, v: &CMatrix, x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix) -> f64 {
    let n = x.rows() + 1;
    let du = char_poly_coeffs(u, a).relative_drift(&char_poly_coeffs(x, a), n);
    let dv = char_poly_coeffs(v, b).relative_drift(&char_poly_coeffs(y, b), n);
    du.max(dv)
}

fn check_commuting(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<()> {
    let comm = a.commutator(b).norm_inf();
    if comm > tol * (1.0 + a.norm_inf() * b.norm_inf()) {
        return Err(Error::NonCommuting(comm));
    }
    Ok(())
}

fn require_same_square(ms: &[&CMatrix], n: Option<usize>) -> Result<usize> {
    let dim = n.unwrap_or_else(|| ms[0].rows());
    for m in ms {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim}x{dim} matrices, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(dim)
}

fn finish(u: CMatrix, v: CMatrix, x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix, cfg: &RefactorConfig) -> Result<RefactorResult> {
    let lax = lax_residual(&u, &v, x, y, a, b);
    let cas = casimir_drift(&u, &v, x, y, a, b);
    let scale = 1.0 + y.norm_inf() * x.norm_inf();
    if !(lax <= cfg.tol_lax * scale) {
        return Err(Error::ResidualTooLarge {
            what: "lax",
            residual: lax / scale,
            tolerance: cfg.tol_lax,
        });
    }
    if !(cas <= cfg.tol_cas) {
        return Err(Error::ResidualTooLarge {
            what: "casimir",
            residual: cas,
            tolerance: cfg.tol_cas,
        });
    }
    Ok(RefactorResult {
        u,
        v,
        lax_residual: lax,
        casimir_drift: cas,
    })
}

/// `(Π¹, Π²) = (f₂(X;A)(YA + BX) - f₁(X;A)AB,  f₂(X;A)YX - f₀(X;A)AB)`.
pub fn pi_matrices(x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    require_same_square(&[x, y, a, b], Some(2))?;
    let f = char_poly_coeffs(x, a).coeffs;
    let ab = a * b;
    let pi1 = (y * a + b * x).scale(f[2]) - ab.scale(f[1]);
    let pi2 = (y * x).scale(f[2]) - ab.scale(f[0]);
    Ok((pi1, pi2))
}

/// Closed-form 2×2 re-factorization with default tolerances.
pub fn refactor_2x2(x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix) -> Result<RefactorResult> {
    refactor_2x2_with(x, y, a, b, &RefactorConfig::default())
}

/// `U = Π² (Π¹)^-1 A`, `V = A^-1 (YA + BX - UB)`.
pub fn refactor_2x2_with(x: &CMatrix, y: &CMatrix, a: &CMatrix, b: &CMatrix, cfg: &RefactorConfig) -> Result<RefactorResult> {
    require_same_square(&[x, y, a, b], Some(2))?;
    check_commuting(a, b, cfg.commute_tol)?;
    let a_inv = a.inverse()?;
    b.inverse()?;
    let (pi1, pi2) = pi_matrices(x, y, a, b)?;
    let pi1_inv = pi1.inverse().map_err(|_| Error::DegeneratePi(pi1.det().map(|d| d.norm()).unwrap_or(0.0)))?;
    let u = &pi2 * &pi1_inv * a;
    let v = &a_inv * &(y * a + b * x - &u * b);
    finish(u, v, x, y, a, b, cfg)
}

/// The matrices `M_0..M_n`, `N_0..N_n` of the power recurrence together with
/// the denominator `Σ_{i=1}^n (-1)^i f_i(X;α) M_{i-1}`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub m: Vec<CMatrix>,
    pub n: Vec<CMatrix>,
    pub f: Vec<C64>,
    pub denominator: CMatrix,
    pub numerator: CMatrix,
}

impl Recurrence {
    pub fn build(x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> Result<Recurrence> {
        let n = require_same_square(&[x, y, ka, kb], None)?;
        let id = CMatrix::identity(n);
        let kba_inv = kb.inverse()? * ka.inverse()?;
        let m1 = (y * ka + kb * x) * &kba_inv;
        let n1 = -&(y * x * &kba_inv);
        let mut m = vec![id.clone(), m1.clone()];
        let mut nn = vec![CMatrix::zeros(n, n), n1.clone()];
        for i in 2..=n {
            let mi = &m1 * &m[i - 1] + &nn[i - 1];
            let ni = &n1 * &m[i - 1];
            m.push(mi);
            nn.push(ni);
        }
        let f = char_poly_coeffs(x, ka).coeffs;
        let mut denominator = CMatrix::zeros(n, n);
        let mut numerator = id.scale(-f[0]);
        for i in 1..=n {
            let s = if i % 2 == 0 { f[i] } else { -f[i] };
            denominator += &m[i - 1].scale(s);
            numerator = numerator - nn[i - 1].scale(s);
        }
        Ok(Recurrence {
            m,
            n: nn,
            f,
            denominator,
            numerator,
        })
    }
}

/// General n×n re-factorization with default tolerances.
pub fn refactor_nxn(x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> Result<RefactorResult> {
    refactor_nxn_with(x, y, ka, kb, &RefactorConfig::default())
}

/// `U = (-f₀I - Σ(-1)^i f_i N_{i-1}) (Σ(-1)^i f_i M_{i-1})^-1 K_α`,
/// `V = K_α^-1 (Y K_α + K_β X - U K_β)`.
pub fn refactor_nxn_with(x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix, cfg: &RefactorConfig) -> Result<RefactorResult> {
    require_same_square(&[x, y, ka, kb], None)?;
    check_commuting(ka, kb, cfg.commute_tol)?;
    let ka_inv = ka.inverse()?;
    let rec = Recurrence::build(x, y, ka, kb)?;
    let den = &rec.denominator;
    let det = den.det()?;
    if det.norm() <= den.singularity_threshold() || !det.norm().is_finite() {
        return Err(Error::DegenerateDenominator(det.norm()));
    }
    let lu = Lu::factor(den).ok_or(Error::DegenerateDenominator(det.norm()))?;
    let den_inv = lu.solve(&CMatrix::identity(x.rows()));
    log::debug!(
        "refactor_nxn: denominator condition estimate {:.3e}",
        den.norm_1() * den_inv.norm_1()
    );
    let u = &rec.numerator * &den_inv * ka;
    let v = &ka_inv * &(y * ka + kb * x - &u * kb);
    finish(u, v, x, y, ka, kb, cfg)
}

/// `‖Σ_{i=1}^n (-1)^i f_i(X;α) Ũ^i + f₀(X;α) I‖_∞` with `Ũ = U K_α^-1`.
pub fn cayley_hamilton_residual(u: &CMatrix, x: &CMatrix, ka: &CMatrix) -> Result<f64> {
    let n = x.rows();
    let f = char_poly_coeffs(x, ka).coeffs;
    let ut = u * &ka.inverse()?;
    let mut acc = CMatrix::identity(n).scale(f[0]);
    let mut power = CMatrix::identity(n);
    for (i, fi) in f.iter().enumerate().skip(1) {
        power = &power * &ut;
        let s = if i % 2 == 0 { *fi } else { -*fi };
        acc += &power.scale(s);
    }
    Ok(acc.norm_inf())
}

/// Residuals of `UV = YX` and `U K_β + K_α V = Y K_α + K_β X`.
pub fn system_residuals(u: &CMatrix, v: &CMatrix, x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> (f64, f64) {
    let r1 = (u * v - y * x).norm_inf();
    let r2 = (u * kb + ka * v - y * ka - kb * x).norm_inf();
    (r1, r2)
}

/// Largest `‖Ũ^k - (Ũ M_{k-1} + N_{k-1})‖_∞` for `k = 1..=n`.
pub fn power_recurrence_residual(u: &CMatrix, x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> Result<f64> {
    let rec = Recurrence::build(x, y, ka, kb)?;
    let ut = u * &ka.inverse()?;
    let mut power = CMatrix::identity(x.rows());
    let mut worst: f64 = 0.0;
    for k in 1..=x.rows() {
        power = &power * &ut;
        let predicted = &ut * &rec.m[k - 1] + &rec.n[k - 1];
        worst = worst.max((&power - &predicted).norm_inf());
    }
    Ok(worst)
}

/// Coefficient tolerance for [`similarity_check`].
pub const SIMILARITY_TOL: f64 = 1e-8;

/// Checks that `U K_α^-1 ~ K_α^-1 X` and `K_β^-1 V ~ Y K_β^-1` through their
/// characteristic polynomials. Only meaningful when `det(U K_β - Y K_α) ≠ 0`.
pub fn similarity_check(u: &CMatrix, v: &CMatrix, x: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> Result<bool> {
    let n = require_same_square(&[u, v, x, y, ka, kb], None)?;
    let gap = u * kb - y * ka;
    let d = gap.det()?;
    let scale = (u.max_abs() * kb.max_abs() + y.max_abs() * ka.max_abs()).powi(n as i32);
    if d.norm() <= crate::matrix::SINGULAR_EPS * scale {
        return Err(Error::DegenerateSimilarity(d.norm()));
    }
    let ka_inv = ka.inverse()?;
    let kb_inv = kb.inverse()?;
    let id = CMatrix::identity(n);
    let p = |m: &CMatrix| char_poly_coeffs(m, &id);
    let left = p(&(u * &ka_inv)).relative_drift(&p(&(&ka_inv * x)), n + 1);
    let right = p(&(&kb_inv * v)).relative_drift(&p(&(y * &kb_inv)), n + 1);
    Ok(left <= SIMILARITY_TOL && right <= SIMILARITY_TOL)
}

/// Recovers `(V, X)` from `(U, Y)` for a solution of the re-factorization,
/// using `K_β^-1 V = G^-1 Y K_β^-1 G` and `K_α^-1 X = G^-1 U K_α^-1 G` with
/// `G = U K_β - Y K_α`.
pub fn invert_refactor(u: &CMatrix, y: &CMatrix, ka: &CMatrix, kb: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    require_same_square(&[u, y, ka, kb], None)?;
    let g = u * kb - y * ka;
    let g_inv = g
        .inverse()
        .map_err(|_| Error::DegenerateSimilarity(g.det().map(|d| d.norm()).unwrap_or(0.0)))?;
    let v = kb * &g_inv * y * kb.inverse()? * &g;
    let x = ka * &g_inv * u * ka.inverse()? * &g;
    Ok((v, x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub initial_distance: f64,
    pub final_distance: f64,
    pub final_residual: f64,
    pub iterations: usize,
}

/// Perturbs a triple of leaf points and runs damped Gauss–Newton on
/// `L(x̂₁)L(x̂₂)L(x̂₃) = L(x₁)L(x₂)L(x₃)` (sampled at [`SAMPLED_ZETAS`]) to see
/// whether the descent returns to the original triple.
///
/// `lax(coords, params, ζ)` must parametrize the leaf, so that every trial
/// point keeps its Casimir levels.
pub fn triple_uniqueness_probe<F>(lax: F, triple: [&[C64]; 3], params: [&[C64]; 3], perturbation: f64, seed: u64) -> Result<UniquenessReport>
where
    F: Fn(&[C64], &[C64], C64) -> Result<CMatrix>,
{
    let sizes: Vec<usize> = triple.iter().map(|t| t.len()).collect();
    let original: Vec<C64> = triple.iter().flat_map(|t| t.iter().copied()).collect();
    let split = |z: &[C64]| -> [Vec<C64>; 3] {
        let (a, rest) = z.split_at(sizes[0]);
        let (b, cc) = rest.split_at(sizes[1]);
        [a.to_vec(), b.to_vec(), cc.to_vec()]
    };
    let product = |z: &[C64]| -> Result<Vec<C64>> {
        let parts = split(z);
        let mut out = Vec::new();
        for &zeta in SAMPLED_ZETAS.iter() {
            let m = lax(&parts[0], params[0], zeta)? * lax(&parts[1], params[1], zeta)? * lax(&parts[2], params[2], zeta)?;
            out.extend_from_slice(m.as_slice());
        }
        Ok(out)
    };
    let target = product(&original)?;
    let residual = |z: &[C64]| -> Result<Vec<C64>> {
        Ok(product(z)?.iter().zip(&target).map(|(p, t)| p - t).collect())
    };
    let dist = |z: &[C64]| z.iter().zip(&original).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let rnorm = |r: &[C64]| r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z: Vec<C64> = original
        .iter()
        .map(|&o| o + c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * perturbation)
        .collect();
    let initial_distance = dist(&z);
    let mut r = residual(&z)?;
    let mut iterations = 0;
    let dim = z.len();
    let mut damping = 1e-12;
    while iterations < 60 && rnorm(&r) > 1e-15 * (1.0 + rnorm(&target)) {
        iterations += 1;
        // Holomorphic residual, so a real central difference gives the complex Jacobian.
        let mut jac = CMatrix::zeros(r.len(), dim);
        for k in 0..dim {
            let h = 1e-7 * (1.0 + z[k].norm());
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[k] += h;
            zm[k] -= h;
            let (rp, rm) = (residual(&zp)?, residual(&zm)?);
            for i in 0..r.len() {
                jac[(i, k)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let jh = CMatrix::from_fn(dim, r.len(), |i, j| jac[(j, i)].conj());
        let rhs = CMatrix::from_fn(r.len(), 1, |i, _| -r[i]);
        let mut normal = &jh * &jac;
        let g = &jh * &rhs;
        let base = normal.max_abs();
        for i in 0..dim {
            normal[(i, i)] += re(damping * base);
        }
        let Some(lu) = Lu::factor(&normal) else { break };
        let step = lu.solve(&g);
        let trial: Vec<C64> = z.iter().enumerate().map(|(i, zi)| zi + step[(i, 0)]).collect();
        let rt = residual(&trial)?;
        if rnorm(&rt) < rnorm(&r) {
            z = trial;
            r = rt;
            damping = (damping * 0.1).max(1e-15);
        } else {
            damping *= 100.0;
            if damping > 1e6 {
                break;
            }
        }
    }
    Ok(UniquenessReport {
        initial_distance,
        final_distance: dist(&z),
        final_residual: rnorm(&r),
        iterations,
    })
}
