//! Poisson structures given as point-dependent antisymmetric matrices,
//! scalar observables, brackets, Casimir checks and a finite-difference
//! Poisson-map test.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{c, re, CMatrix, C64};

type StructureFn = dyn Fn(&[C64]) -> CMatrix + Send + Sync;
type ScalarFn = dyn Fn(&[C64]) -> C64 + Send + Sync;
type GradFn = dyn Fn(&[C64]) -> Vec<C64> + Send + Sync;

/// Holomorphic Poisson structure `p ↦ J(p)` on `ℂ^dim`.
#[derive(Clone)]
pub struct PoissonStructure {
    dim: usize,
    upper: Arc<StructureFn>,
}

impl fmt::Debug for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoissonStructure(dim = {})", self.dim)
    }
}

impl PoissonStructure {
    /// Builds a structure from a function whose strictly upper triangle is
    /// used; the lower triangle is filled in as its negative, so the result
    /// is antisymmetric by construction.
    pub fn from_upper(dim: usize, upper: impl Fn(&[C64]) -> CMatrix + Send + Sync + 'static) -> Self {
        PoissonStructure {
            dim,
            upper: Arc::new(upper),
        }
    }

    /// A point-independent structure.
    pub fn constant(j: CMatrix) -> Self {
        let dim = j.rows();
        PoissonStructure::from_upper(dim, move |_| j.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &[C64]) -> CMatrix {
        assert_eq!(p.len(), self.dim, "point dimension");
        let raw = (self.upper)(p);
        let mut j = CMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for s in (r + 1)..self.dim {
                j[(r, s)] = raw[(r, s)];
                j[(s, r)] = -raw[(r, s)];
            }
        }
        j
    }

    /// Direct sum `J₁ ⊕ J₂` on `ℂ^{d₁} × ℂ^{d₂}`; cross brackets vanish.
    pub fn product(&self, other: &PoissonStructure) -> PoissonStructure {
        let (a, b) = (self.clone(), other.clone());
        let (da, db) = (a.dim, b.dim);
        PoissonStructure::from_upper(da + db, move |p| {
            let ja = a.eval(&p[..da]);
            let jb = b.eval(&p[da..]);
            CMatrix::from_fn(da + db, da + db, |i, j| match (i < da, j < da) {
                (true, true) => ja[(i, j)],
                (false, false) => jb[(i - da, j - da)],
                _ => re(0.0),
            })
        })
    }
}

/// `{x_ij, x_kl} = x_kj a_il - x_il a_kj` for row-major coordinates of an n×n `X`.
pub fn sklyanin_entry(x: &CMatrix, a: &CMatrix, r: usize, s: usize) -> C64 {
    let n = x.rows();
    let (i, j) = (r / n, r % n);
    let (k, l) = (s / n, s % n);
    x[(k, j)] * a[(i, l)] - x[(i, l)] * a[(k, j)]
}

/// Sklyanin structure of the pencil `X - ζA` on the n² entries of `X`.
pub fn sklyanin_nxn(a: &CMatrix) -> PoissonStructure {
    let a = a.clone();
    let n = a.rows();
    PoissonStructure::from_upper(n * n, move |p| {
        let x = CMatrix::from_vec(n, n, p.to_vec()).expect("n*n coordinates");
        CMatrix::from_fn(n * n, n * n, |r, s| sklyanin_entry(&x, &a, r, s))
    })
}

/// Structure on `(x₁, x₂, x₃, x₄)`, the row-major entries of a 2×2 `X`.
pub fn sklyanin_2x2(a: &CMatrix) -> PoissonStructure {
    assert_eq!((a.rows(), a.cols()), (2, 2), "leading matrix must be 2x2");
    sklyanin_nxn(a)
}

/// Structure on the nine entries of a 3×3 `X` with leading matrix `I`.
pub fn sklyanin_3x3_identity() -> PoissonStructure {
    sklyanin_nxn(&CMatrix::identity(3))
}

/// The 9×9 array as commonly printed for the 3×3 case, row by row.
///
/// It agrees with [`sklyanin_3x3_identity`] up to the placement of
/// `x_ij` versus `x_ji` in a few entries (it is not antisymmetric). Both have
/// generic rank six, and the sixth-order minors of this array are the ones
/// used in [`crate::maps3::minors`].
pub fn skl3_displayed(x: &CMatrix) -> CMatrix {
    let g = |i: usize, j: usize| x[(i - 1, j - 1)];
    let z = re(0.0);
    CMatrix::from_rows(&[
        [z, -g(1, 2), -g(1, 3), g(1, 2), z, z, g(1, 3), z, z],
        [g(2, 1), z, z, g(2, 2) - g(1, 1), -g(1, 2), -g(1, 3), g(2, 3), z, z],
        [g(3, 1), z, z, g(3, 2), z, z, g(3, 3) - g(1, 1), -g(1, 2), -g(1, 3)],
        [-g(2, 1), g(1, 1) - g(2, 2), -g(2, 3), z, g(1, 2), z, z, g(1, 3), z],
        [z, g(2, 1), z, -g(2, 1), z, -g(2, 3), z, g(2, 3), z],
        [z, g(3, 1), z, z, g(3, 2), z, -g(2, 1), g(3, 3) - g(2, 2), -g(2, 3)],
        [-g(3, 1), -g(3, 2), g(1, 1) - g(3, 3), z, z, g(1, 2), z, z, g(1, 3)],
        [z, z, g(2, 1), -g(3, 1), -g(3, 2), g(2, 2) - g(3, 3), z, z, g(2, 3)],
        [z, z, g(3, 1), z, z, g(3, 2), -g(3, 1), -g(3, 2), z],
    ])
}

/// `{x₁, x₂} = -α₁x₂` (diagonal leading matrix).
pub fn case1_bracket(alpha1: C64) -> PoissonStructure {
    PoissonStructure::from_upper(2, move |p| CMatrix::from_rows(&[[re(0.0), -alpha1 * p[1]], [re(0.0), re(0.0)]]))
}

/// `{x₁, x₂} = α₂x₁ - α₁x₂` (Jordan leading matrix).
pub fn case2_bracket(alpha1: C64, alpha2: C64) -> PoissonStructure {
    PoissonStructure::from_upper(2, move |p| {
        CMatrix::from_rows(&[[re(0.0), alpha2 * p[0] - alpha1 * p[1]], [re(0.0), re(0.0)]])
    })
}

/// Constant bracket `{x₁, x₂} = k`.
pub fn constant_bracket_2(k: C64) -> PoissonStructure {
    PoissonStructure::constant(CMatrix::from_rows(&[[re(0.0), k], [-k, re(0.0)]]))
}

/// Canonical structure `{x_i, X_j} = δ_ij` on `(x₁, …, x_m, X₁, …, X_m)`.
pub fn canonical(m: usize) -> PoissonStructure {
    PoissonStructure::constant(CMatrix::from_fn(2 * m, 2 * m, |i, j| {
        if j == i + m {
            re(1.0)
        } else if i == j + m {
            re(-1.0)
        } else {
            re(0.0)
        }
    }))
}

/// A scalar function on `ℂ^dim`, optionally with an exact gradient.
#[derive(Clone)]
pub struct Observable {
    dim: usize,
    f: Arc<ScalarFn>,
    grad: Option<Arc<GradFn>>,
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Observable(dim = {}, exact_grad = {})", self.dim, self.grad.is_some())
    }
}

impl Observable {
    pub fn new(dim: usize, f: impl Fn(&[C64]) -> C64 + Send + Sync + 'static) -> Self {
        Observable {
            dim,
            f: Arc::new(f),
            grad: None,
        }
    }

    pub fn with_gradient(self, grad: impl Fn(&[C64]) -> Vec<C64> + Send + Sync + 'static) -> Self {
        Observable {
            grad: Some(Arc::new(grad)),
            ..self
        }
    }

    /// The coordinate function `p ↦ p_k`.
    pub fn coordinate(dim: usize, k: usize) -> Self {
        Observable::new(dim, move |p| p[k]).with_gradient(move |_| {
            let mut g = vec![re(0.0); dim];
            g[k] = re(1.0);
            g
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn has_exact_gradient(&self) -> bool {
        self.grad.is_some()
    }

    pub fn eval(&self, p: &[C64]) -> C64 {
        (self.f)(p)
    }

    /// Exact gradient when available, otherwise central differences with
    /// step `1e-6 (1 + |p_k|)`.
    pub fn gradient(&self, p: &[C64]) -> Vec<C64> {
        match &self.grad {
            Some(g) => g(p),
            None => self.fd_gradient(p),
        }
    }

    pub fn fd_gradient(&self, p: &[C64]) -> Vec<C64> {
        (0..p.len())
            .map(|k| {
                let h = 1e-6 * (1.0 + p[k].norm());
                let mut q = p.to_vec();
                q[k] = p[k] + h;
                let fp = self.eval(&q);
                q[k] = p[k] - h;
                let fm = self.eval(&q);
                (fp - fm) / (2.0 * h)
            })
            .collect()
    }
}

fn check_dims(j: &PoissonStructure, fs: &[&Observable], p: &[C64]) -> Result<()> {
    for f in fs {
        if f.dim != j.dim {
            return Err(Error::DimensionMismatch(format!(
                "observable on C^{} against structure on C^{}",
                f.dim, j.dim
            )));
        }
    }
    if p.len() != j.dim {
        return Err(Error::DimensionMismatch(format!("point of length {} for C^{}", p.len(), j.dim)));
    }
    Ok(())
}

/// `{f, g}(p) = ∇f(p)ᵀ J(p) ∇g(p)`.
pub fn bracket(j: &PoissonStructure, f: &Observable, g: &Observable, p: &[C64]) -> Result<C64> {
    check_dims(j, &[f, g], p)?;
    let jm = j.eval(p);
    let df = f.gradient(p);
    let dg = g.gradient(p);
    let mut acc = re(0.0);
    for r in 0..j.dim {
        if df[r] == re(0.0) {
            continue;
        }
        for s in 0..j.dim {
            acc += df[r] * jm[(r, s)] * dg[s];
        }
    }
    Ok(acc)
}

/// `max_{p, k} |{f, x_k}(p)|` over the given points.
pub fn casimir_check_at(j: &PoissonStructure, f: &Observable, points: &[Vec<C64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        check_dims(j, &[f], p)?;
        let jm = j.eval(p);
        let df = f.gradient(p);
        for k in 0..j.dim {
            let v: C64 = (0..j.dim).map(|r| df[r] * jm[(r, k)]).sum();
            worst = worst.max(v.norm());
        }
    }
    Ok(worst)
}

/// [`casimir_check_at`] over `samples` points drawn from the complex square `[-1, 1]²` per coordinate.
pub fn casimir_check(j: &PoissonStructure, f: &Observable, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<C64>> = (0..samples)
        .map(|_| (0..j.dim).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
        .collect();
    casimir_check_at(j, f, &points)
}

/// Weights `w_k` of the eighth-order central stencil
/// `F'(p) ≈ Σ_k w_k [F(p + kδ) - F(p - kδ)] / δ`.
pub const CENTRAL_WEIGHTS: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Central-difference Jacobian of `F: ℂ^k → ℂ^m` at `p` using
/// [`CENTRAL_WEIGHTS`], with per-coordinate step `δ = h (1 + |p_k|)`.
pub fn fd_jacobian<F>(f: &F, p: &[C64], h: f64) -> Result<CMatrix>
where
    F: Fn(&[C64]) -> Result<Vec<C64>>,
{
    let m = f(p)?.len();
    let mut jac = CMatrix::zeros(m, p.len());
    for k in 0..p.len() {
        let step = h * (1.0 + p[k].norm());
        let at = |t: f64| -> Result<Vec<C64>> {
            let mut q = p.to_vec();
            q[k] = p[k] + t * step;
            f(&q)
        };
        for (j, w) in CENTRAL_WEIGHTS.iter().enumerate() {
            let t = (j + 1) as f64;
            let (plus, minus) = (at(t)?, at(-t)?);
            for i in 0..m {
                jac[(i, k)] += (plus[i] - minus[i]) * (w / step);
            }
        }
    }
    Ok(jac)
}

/// Default finite-difference step for [`poisson_map_check`].
pub const POISSON_FD_STEP: f64 = 1e-3;
/// Below this level residuals are treated as roundoff and not compared under halving.
pub const POISSON_NOISE_FLOOR: f64 = 1e-9;

fn pushforward_residual<F>(f: &F, source: &PoissonStructure, target: &PoissonStructure, p: &[C64], h: f64) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<Vec<C64>>,
{
    let df = fd_jacobian(f, p, h)?;
    let image = f(p)?;
    if df.rows() != target.dim() || p.len() != source.dim() {
        return Err(Error::DimensionMismatch("map does not fit the given structures".into()));
    }
    let lhs = &df * &source.eval(p) * df.transpose();
    Ok((lhs - target.eval(&image)).norm_inf())
}

/// `‖DF(p) J_source(p) DF(p)ᵀ - J_target(F(p))‖_∞`, with `DF` from central
/// differences at step `h`. Raises `StepTooLarge` if the residuals at `h` and
/// `h/2` differ by more than a factor of ten above the noise floor.
pub fn poisson_map_check<F>(f: F, source: &PoissonStructure, target: &PoissonStructure, p: &[C64], h: f64) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<Vec<C64>>,
{
    let coarse = pushforward_residual(&f, source, target, p, h)?;
    let fine = pushforward_residual(&f, source, target, p, h / 2.0)?;
    let (lo, hi) = if coarse < fine { (coarse, fine) } else { (fine, coarse) };
    if hi > POISSON_NOISE_FLOOR && hi > 10.0 * lo.max(POISSON_NOISE_FLOOR) {
        return Err(Error::StepTooLarge { coarse, fine });
    }
    Ok(coarse)
}

/// Step refinements tried by [`poisson_map_check_adaptive`].
pub const POISSON_MAX_REFINEMENTS: usize = 12;

/// Runs [`poisson_map_check`] from step `h`, halving it while the result is
/// unstable under halving. Returns the residual and the step used.
pub fn poisson_map_check_adaptive<F>(f: F, source: &PoissonStructure, target: &PoissonStructure, p: &[C64], h: f64) -> Result<(f64, f64)>
where
    F: Fn(&[C64]) -> Result<Vec<C64>>,
{
    let mut step = h;
    let mut last = None;
    for _ in 0..=POISSON_MAX_REFINEMENTS {
        match poisson_map_check(&f, source, target, p, step) {
            Ok(r) => return Ok((r, step)),
            Err(e @ Error::StepTooLarge { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        step /= 2.0;
    }
    Err(last.expect("at least one attempt"))
}

/// Largest cyclic sum `Σ_m J_im ∂_m J_jk + J_jm ∂_m J_ki + J_km ∂_m J_ij`
/// over all index triples, with derivatives by central differences.
pub fn jacobi_residual(j: &PoissonStructure, p: &[C64]) -> f64 {
    let d = j.dim();
    let jm = j.eval(p);
    let derivs: Vec<CMatrix> = (0..d)
        .map(|m| {
            let h = 1e-5 * (1.0 + p[m].norm());
            let mut q = p.to_vec();
            q[m] = p[m] + h;
            let jp = j.eval(&q);
            q[m] = p[m] - h;
            let jn = j.eval(&q);
            (jp - jn).scale(re(1.0 / (2.0 * h)))
        })
        .collect();
    let term = |a: usize, b: usize, cc: usize| -> C64 { (0..d).map(|m| jm[(a, m)] * derivs[m][(b, cc)]).sum() };
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            for cc in 0..d {
                let s = term(a, b, cc) + term(b, cc, a) + term(cc, a, b);
                worst = worst.max(s.norm());
            }
        }
    }
    worst
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let dm = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)]);
    let mut s: Vec<f64> = dm.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Default relative threshold for [`numerical_rank`].
pub const RANK_REL_TOL: f64 = 1e-8;

/// Number of singular values at or above `rel_tol · σ_max`.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v >= rel_tol * top).count()
}
