//! Four-dimensional symplectic leaves of 3×3 binomial matrices with leading
//! matrix `I`, and the Yang–Baxter maps they carry.
//!
//! Points are `(x₁, x₂, X₁, X₂)` in canonical coordinates and leaves are
//! labelled by `(c₁, c₂)`. The map parameters `(α₁, α₂)` are the same pair:
//! `f₂ = 3α₁`, `f₁ = 3(α₁² - α₂²)`, `f₀ = (α₁ - 2α₂)(α₁ + α₂)²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{re, CMatrix, C64};
use crate::refactor::{refactor_nxn_with, RefactorConfig};
use crate::sklyanin::PoissonStructure;

/// Entries below this magnitude count as zero denominators.
pub const POLE_EPS: f64 = 1e-14;

fn pole(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= POLE_EPS || !v.is_finite() {
        return Err(Error::PoleError(format!("{what} vanishes")));
    }
    Ok(v)
}

fn domain(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= POLE_EPS || !v.is_finite() {
        return Err(Error::DomainError(format!("{what} vanishes")));
    }
    Ok(v)
}

fn coords4(x: &[C64]) -> Result<[C64; 4]> {
    x.try_into()
        .map_err(|_| Error::DimensionMismatch(format!("expected 4 coordinates, got {}", x.len())))
}

fn params2(p: &[C64]) -> Result<[C64; 2]> {
    p.try_into()
        .map_err(|_| Error::DimensionMismatch(format!("expected 2 parameters, got {}", p.len())))
}

/// `(x₁₁, x₃₁, x₃₂)` making the rank of the 3×3 Sklyanin structure drop to four.
pub fn minors_solution(x12: C64, x13: C64, x21: C64, x22: C64, x23: C64, x33: C64) -> Result<(C64, C64, C64)> {
    let x13 = domain(x13, "x13")?;
    let x23 = domain(x23, "x23")?;
    let x11 = x13 * x21 / x23 + x22 - x12 * x23 / x13;
    let k = x12 * x23 + x13 * (x33 - x22);
    let x31 = x21 * k / (x13 * x23);
    let x32 = x12 * k / (x13 * x13);
    Ok((x11, x31, x32))
}

/// Fills `x₁₁, x₃₁, x₃₂` of `x` from [`minors_solution`].
pub fn complete_minors(x: &CMatrix) -> Result<CMatrix> {
    let g = |i: usize, j: usize| x[(i - 1, j - 1)];
    let (x11, x31, x32) = minors_solution(g(1, 2), g(1, 3), g(2, 1), g(2, 2), g(2, 3), g(3, 3))?;
    let mut out = x.clone();
    out[(0, 0)] = x11;
    out[(2, 0)] = x31;
    out[(2, 1)] = x32;
    Ok(out)
}

/// Row/column index sets (1-based) of the three sixth-order minors in [`minors`].
pub const MINOR_INDICES: [([usize; 6], [usize; 6]); 3] = [
    ([1, 2, 3, 4, 5, 6], [3, 4, 6, 7, 8, 9]),
    ([1, 2, 3, 4, 6, 7], [3, 4, 5, 6, 8, 9]),
    ([1, 2, 3, 5, 6, 9], [1, 2, 3, 5, 6, 9]),
];

/// The three sixth-order minors `m₁, m₂, m₃` in factored form.
pub fn minors(x: &CMatrix) -> [C64; 3] {
    let g = |i: usize, j: usize| x[(i - 1, j - 1)];
    let sq = |v: C64| -(v * v);
    [
        sq(g(2, 1) * g(1, 3).powi(2) - g(1, 1) * g(2, 3) * g(1, 3) + g(2, 2) * g(2, 3) * g(1, 3) - g(1, 2) * g(2, 3).powi(2)),
        sq(g(2, 3) * g(1, 2).powi(2) - g(1, 3) * g(2, 2) * g(1, 2) + g(1, 3) * g(3, 3) * g(1, 2) - g(1, 3).powi(2) * g(3, 2)),
        sq(g(1, 2) * g(2, 3) * g(3, 1) - g(1, 3) * g(2, 1) * g(3, 2)),
    ]
}

/// `4α₀α₂³ - α₁²α₂² + 4α₁³ - 18α₀α₁α₂ + 27α₀²`.
pub fn discriminant_surface(a0: C64, a1: C64, a2: C64) -> C64 {
    4.0 * a0 * a2.powi(3) - a1 * a1 * a2 * a2 + 4.0 * a1.powi(3) - 18.0 * a0 * a1 * a2 + 27.0 * a0 * a0
}

/// [`discriminant_surface`] divided by the sum of the magnitudes of its terms.
pub fn discriminant_relative(a0: C64, a1: C64, a2: C64) -> f64 {
    let scale = 4.0 * (a0 * a2.powi(3)).norm()
        + (a1 * a1 * a2 * a2).norm()
        + 4.0 * a1.powi(3).norm()
        + 18.0 * (a0 * a1 * a2).norm()
        + 27.0 * (a0 * a0).norm();
    let v = discriminant_surface(a0, a1, a2).norm();
    if scale == 0.0 {
        v
    } else {
        v / scale
    }
}

/// Casimirs `(f₀, f₁, f₂)` on the constraint set, as rational functions of
/// `x₁₂, x₁₃, x₂₁, x₂₂, x₂₃, x₃₃`.
pub fn constrained_casimirs(x12: C64, x13: C64, x21: C64, x22: C64, x23: C64, x33: C64) -> Result<[C64; 3]> {
    let x13 = domain(x13, "x13")?;
    let x23 = domain(x23, "x23")?;
    let d = x13 * x22 - x12 * x23;
    let f0 = d * d * (x21 * x13 * x13 + x23 * x33 * x13 + x12 * x23 * x23) / (x13.powi(3) * x23);
    let f1 = d * (2.0 * x21 * x13 * x13 + x23 * (x22 + 2.0 * x33) * x13 + x12 * x23 * x23) / (x13 * x13 * x23);
    let f2 = x13 * x21 / x23 + 2.0 * x22 - x12 * x23 / x13 + x33;
    Ok([f0, f1, f2])
}

/// Bracket of the leaf on `(x₁₂, x₁₃, x₂₁, x₂₃)`:
/// `{x₁₂, x₂₁} = x₁₂x₂₃/x₁₃ - x₁₃x₂₁/x₂₃`, `{x₁₂, x₂₃} = -x₁₃`, `{x₁₃, x₂₁} = x₂₃`,
/// all others zero. Needs `x₁₃, x₂₃ ≠ 0`.
pub fn reduced_bracket_3x3() -> PoissonStructure {
    PoissonStructure::from_upper(4, |p| {
        let (x12, x13, x21, x23) = (p[0], p[1], p[2], p[3]);
        let z = re(0.0);
        CMatrix::from_rows(&[
            [z, z, x12 * x23 / x13 - x13 * x21 / x23, -x13],
            [z, z, x23, z],
            [z, z, z, z],
            [z, z, z, z],
        ])
    })
}

/// Coefficients `Ω` of the leaf's symplectic form `ω = Σ_{i<j} Ω_ij dp_i ∧ dp_j`
/// on `(x₁₂, x₁₃, x₂₁, x₂₃)`. With this convention `Ω J = -I` for the bracket `J`.
pub fn reduced_symplectic_form(p: &[C64]) -> Result<CMatrix> {
    let [x12, x13, x21, x23] = coords4(p)?;
    let x13 = domain(x13, "x13")?;
    let x23 = domain(x23, "x23")?;
    let z = re(0.0);
    let a = 1.0 / x23;
    let b = 1.0 / x13;
    let c = x12 / (x13 * x13) - x21 / (x23 * x23);
    Ok(CMatrix::from_rows(&[
        [z, z, z, -b],
        [z, z, a, c],
        [z, -a, z, z],
        [b, -c, z, z],
    ]))
}

/// `(x₁₂, x₁₃, x₂₁, x₂₃) = (-x₂X₁, X₁, -x₁X₂, X₂)`.
pub fn canonical_to_reduced(x: &[C64]) -> Result<[C64; 4]> {
    let [x1, x2, big1, big2] = coords4(x)?;
    Ok([-x2 * big1, big1, -x1 * big2, big2])
}

/// Sign choice for `c₂ = ±⅓√(f₂² - 3f₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Leaf labels `(c₁, c₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafParams3 {
    pub c1: C64,
    pub c2: C64,
}

impl LeafParams3 {
    pub fn new(c1: C64, c2: C64) -> Self {
        LeafParams3 { c1, c2 }
    }

    /// Labels of the leaf with `f₁ = level1`, `f₂ = level2`: `c₁ = f₂/3`, `c₂ = ±⅓√(f₂² - 3f₁)`.
    pub fn from_levels(level1: C64, level2: C64, branch: Branch) -> Self {
        let root = (level2 * level2 - 3.0 * level1).sqrt() / 3.0;
        let c2 = match branch {
            Branch::Plus => root,
            Branch::Minus => -root,
        };
        LeafParams3 { c1: level2 / 3.0, c2 }
    }

    /// `(f₀, f₁, f₂) = ((c₁ - 2c₂)(c₁ + c₂)², 3(c₁² - c₂²), 3c₁)`.
    pub fn casimirs(&self) -> [C64; 3] {
        let (c1, c2) = (self.c1, self.c2);
        [(c1 - 2.0 * c2) * (c1 + c2) * (c1 + c2), 3.0 * (c1 * c1 - c2 * c2), 3.0 * c1]
    }

    pub fn boussinesq(alpha: C64) -> Self {
        LeafParams3::new(alpha, re(0.0))
    }

    pub fn gv(alpha: C64) -> Self {
        LeafParams3::new(alpha / 3.0, 2.0 * alpha / 3.0)
    }
}

/// A leaf point `(x₁, x₂, X₁, X₂)` with its labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafPoint3 {
    pub coords: [C64; 4],
    pub params: LeafParams3,
}

/// The leaf matrix `L'`.
pub fn leaf_embed_3x3(x: &[C64], params: &LeafParams3) -> Result<CMatrix> {
    let [x1, x2, big1, big2] = coords4(x)?;
    domain(big1, "X1")?;
    domain(big2, "X2")?;
    Ok(leaf_matrix(x1, x2, big1, big2, params))
}

fn leaf_matrix(x1: C64, x2: C64, big1: C64, big2: C64, p: &LeafParams3) -> CMatrix {
    let (c1, c2) = (p.c1, p.c2);
    let s = x1 * big1 + x2 * big2;
    CMatrix::from_rows(&[
        [c1 + c2 - x1 * big1, -big1 * x2, big1],
        [-x1 * big2, c1 + c2 - x2 * big2, big2],
        [-x1 * (s - 3.0 * c2), -x2 * (s - 3.0 * c2), c1 - 2.0 * c2 + s],
    ])
}

/// Strong Lax matrix `L'(x; c) - ζI`.
pub fn lax3(x: &[C64], params: &LeafParams3, zeta: C64) -> Result<CMatrix> {
    let [x1, x2, big1, big2] = coords4(x)?;
    Ok(leaf_matrix(x1, x2, big1, big2, params) - CMatrix::identity(3).scale(zeta))
}

/// Reads `(x₁, x₂, X₁, X₂) = (-L₂₁/L₂₃, -L₁₂/L₁₃, L₁₃, L₂₃)`.
pub fn extract_coords(l: &CMatrix) -> Result<[C64; 4]> {
    let big1 = pole(l[(0, 2)], "entry (1,3)")?;
    let big2 = pole(l[(1, 2)], "entry (2,3)")?;
    Ok([-l[(1, 0)] / big2, -l[(0, 1)] / big1, big1, big2])
}

fn leaf_params(p: &[C64]) -> Result<LeafParams3> {
    let [a1, a2] = params2(p)?;
    Ok(LeafParams3::new(a1, a2))
}

/// The explicit map on `ℂ⁴ × ℂ⁴` with parameters `α = (α₁, α₂)`, `β = (β₁, β₂)`.
///
/// `v` uses `D = 2α₂ - α₁ + β₁ + β₂ + y·X - x·X`; `u` uses the companion
/// denominator `D_u = 2α₂ - α₁ + β₁ + β₂ + x·Y - y·Y`. Both reduce to the
/// same value only on special configurations; the pair is what agrees with
/// the generic Cayley–Hamilton solver.
pub fn map_3x3(x: &[C64], alpha: &[C64], y: &[C64], beta: &[C64]) -> Result<([C64; 4], [C64; 4])> {
    let [x1, x2, xx1, xx2] = coords4(x)?;
    let [y1, y2, yy1, yy2] = coords4(y)?;
    let [a1, a2] = params2(alpha)?;
    let [b1, b2] = params2(beta)?;
    let base = 2.0 * a2 - a1 + b1 + b2;
    let d = pole(base + y1 * xx1 + y2 * xx2 - x1 * xx1 - x2 * xx2, "D")?;
    let du = pole(base + x1 * yy1 + x2 * yy2 - y1 * yy1 - y2 * yy2, "D_u")?;
    let ku = (a1 - b1 - 2.0 * (a2 - b2)) / du;
    let kv = (a1 - b1 + a2 - b2) / d;
    let (u1, u2) = (y1 - ku * (x1 - y1), y2 - ku * (x2 - y2));
    let (v1, v2) = (x1 + kv * (x1 - y1), x2 + kv * (x2 - y2));
    let w1 = pole(u1 - v1, "u1 - v1")?;
    let w2 = pole(u2 - v2, "u2 - v2")?;
    let uu1 = ((x1 - v1) * xx1 + (y1 - v1) * yy1) / w1;
    let uu2 = ((x2 - v2) * xx2 + (y2 - v2) * yy2) / w2;
    let vv1 = ((x1 - u1) * xx1 + (y1 - u1) * yy1) / -w1;
    let vv2 = ((x2 - u2) * xx2 + (y2 - u2) * yy2) / -w2;
    Ok(([u1, u2, uu1, uu2], [v1, v2, vv1, vv2]))
}

/// The same map computed by embedding, the generic n×n re-factorization with
/// `K_α = K_β = I`, and coordinate extraction.
pub fn map_3x3_oracle(x: &[C64], alpha: &[C64], y: &[C64], beta: &[C64]) -> Result<([C64; 4], [C64; 4])> {
    map_3x3_oracle_with(x, alpha, y, beta, &RefactorConfig::default())
}

pub fn map_3x3_oracle_with(
    x: &[C64],
    alpha: &[C64],
    y: &[C64],
    beta: &[C64],
    cfg: &RefactorConfig,
) -> Result<([C64; 4], [C64; 4])> {
    let (pa, pb) = (leaf_params(alpha)?, leaf_params(beta)?);
    let xm = leaf_embed_3x3(x, &pa)?;
    let ym = leaf_embed_3x3(y, &pb)?;
    let id = CMatrix::identity(3);
    let r = refactor_nxn_with(&xm, &ym, &id, &id, cfg)?;
    Ok((extract_coords(&r.u)?, extract_coords(&r.v)?))
}

pub fn boussinesq_map(x: &[C64], alpha: C64, y: &[C64], beta: C64) -> Result<([C64; 4], [C64; 4])> {
    map_3x3(x, &[alpha, re(0.0)], y, &[beta, re(0.0)])
}

pub fn gv_map(x: &[C64], alpha: C64, y: &[C64], beta: C64) -> Result<([C64; 4], [C64; 4])> {
    let (a, b) = (LeafParams3::gv(alpha), LeafParams3::gv(beta));
    map_3x3(x, &[a.c1, a.c2], y, &[b.c1, b.c2])
}

/// `L_GV(x; α) - ζI`.
pub fn l_gv(x: &[C64], alpha: C64, zeta: C64) -> Result<CMatrix> {
    lax3(x, &LeafParams3::gv(alpha), zeta)
}

/// Vectors `ξ = (ξ₁, ξ₂, 1)`, `η = (η₁, η₂, 1)` in the affine chart, with parameter `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GvVector {
    pub xi: [C64; 2],
    pub eta: [C64; 2],
    pub lambda: C64,
}

fn dot3(a: &[C64; 3], b: &[C64; 3]) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `B(ξ, η; λ) - ζI = λ(2 ξ⊗η/(ξ,η) - I) - ζI` for full 3-vectors.
pub fn gv_b_matrix(xi: &[C64; 3], eta: &[C64; 3], lambda: C64, zeta: C64) -> Result<CMatrix> {
    let ip = domain(dot3(xi, eta), "(xi, eta)")?;
    Ok(CMatrix::from_fn(3, 3, |i, j| {
        let delta = if i == j { re(1.0) } else { re(0.0) };
        lambda * (2.0 * xi[i] * eta[j] / ip - delta) - zeta * delta
    }))
}

/// `A(ξ, η; λ) = I + 2λ/(ζ - λ) · ξ⊗η/(ξ,η)`.
pub fn gv_a_matrix(xi: &[C64; 3], eta: &[C64; 3], lambda: C64, zeta: C64) -> Result<CMatrix> {
    let ip = domain(dot3(xi, eta), "(xi, eta)")?;
    let k = 2.0 * lambda / pole(zeta - lambda, "zeta - lambda")?;
    Ok(CMatrix::from_fn(3, 3, |i, j| {
        let delta = if i == j { re(1.0) } else { re(0.0) };
        delta + k * xi[i] * eta[j] / ip
    }))
}

impl GvVector {
    pub fn xi3(&self) -> [C64; 3] {
        [self.xi[0], self.xi[1], re(1.0)]
    }

    pub fn eta3(&self) -> [C64; 3] {
        [self.eta[0], self.eta[1], re(1.0)]
    }

    /// `(ξ₁, ξ₂, η₁, η₂)`.
    pub fn coords(&self) -> [C64; 4] {
        [self.xi[0], self.xi[1], self.eta[0], self.eta[1]]
    }

    pub fn from_coords(c: &[C64], lambda: C64) -> Result<Self> {
        let [a, b, cc, d] = coords4(c)?;
        Ok(GvVector {
            xi: [a, b],
            eta: [cc, d],
            lambda,
        })
    }
}

/// `x_i = -η_i`, `X_i = 2λξ_i/(ξ₁η₁ + ξ₂η₂ + 1)`; then `B(ξ, η; λ) = L_GV(x; -λ)`.
pub fn gv_transform(g: &GvVector) -> Result<[C64; 4]> {
    let s = domain(g.xi[0] * g.eta[0] + g.xi[1] * g.eta[1] + 1.0, "xi1 eta1 + xi2 eta2 + 1")?;
    let k = 2.0 * g.lambda / s;
    Ok([-g.eta[0], -g.eta[1], k * g.xi[0], k * g.xi[1]])
}

/// Inverse of [`gv_transform`]: `η_i = -x_i`, `ξ_i = X_i/(2λ + x₁X₁ + x₂X₂)`.
pub fn gv_transform_inverse(x: &[C64], lambda: C64) -> Result<GvVector> {
    let [x1, x2, xx1, xx2] = coords4(x)?;
    let den = pole(2.0 * lambda + x1 * xx1 + x2 * xx2, "2 lambda + x.X")?;
    Ok(GvVector {
        xi: [xx1 / den, xx2 / den],
        eta: [-x1, -x2],
        lambda,
    })
}

/// The vector form of the GV map, conjugated through [`gv_transform`].
pub fn gv_vector_map(g: &[C64], lambda: C64, h: &[C64], mu: C64) -> Result<([C64; 4], [C64; 4])> {
    let x = gv_transform(&GvVector::from_coords(g, lambda)?)?;
    let y = gv_transform(&GvVector::from_coords(h, mu)?)?;
    let (u, v) = gv_map(&x, -lambda, &y, -mu)?;
    Ok((gv_transform_inverse(&u, lambda)?.coords(), gv_transform_inverse(&v, mu)?.coords()))
}

/// `B(ξ, η; λ) - ζI` on the affine chart.
pub fn gv_vector_lax(g: &[C64], lambda: C64, zeta: C64) -> Result<CMatrix> {
    let v = GvVector::from_coords(g, lambda)?;
    gv_b_matrix(&v.xi3(), &v.eta3(), lambda, zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, char_poly_coeffs};
    use crate::sklyanin::{numerical_rank, skl3_displayed, sklyanin_3x3_identity, RANK_REL_TOL};

    fn sample_x() -> [C64; 4] {
        [c(0.3, -0.2), c(-0.6, 0.4), c(0.9, 0.1), c(-0.5, 0.7)]
    }

    #[test]
    fn minors_solution_on_diagonal_data() {
        let (x11, x31, x32) = minors_solution(re(0.0), re(0.7), re(0.0), re(1.5), re(-0.3), re(1.5)).unwrap();
        assert!((x11 - 1.5).norm() < 1e-15);
        assert_eq!(x31, re(0.0));
        assert_eq!(x32, re(0.0));
        assert!(matches!(
            minors_solution(re(0.0), re(0.0), re(0.0), re(1.5), re(-0.3), re(1.5)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn factored_minors_match_determinants() {
        let x = CMatrix::from_rows(&[
            [c(0.3, 0.1), c(-0.2, 0.5), c(0.7, -0.1)],
            [c(0.4, -0.3), c(1.1, 0.2), c(-0.6, 0.4)],
            [c(0.2, 0.9), c(-0.8, 0.1), c(0.5, -0.5)],
        ]);
        let d = skl3_displayed(&x);
        let m = minors(&x);
        for (k, (rows, cols)) in MINOR_INDICES.iter().enumerate() {
            let r: Vec<usize> = rows.iter().map(|i| i - 1).collect();
            let cc: Vec<usize> = cols.iter().map(|i| i - 1).collect();
            let det = d.select(&r, &cc).det().unwrap();
            assert!((det - m[k]).norm() < 1e-12 * (1.0 + m[k].norm()), "minor {k}");
        }
        let done = complete_minors(&x).unwrap();
        for v in minors(&done) {
            assert!(v.norm() < 1e-12);
        }
        assert_eq!(numerical_rank(&sklyanin_3x3_identity().eval(done.as_slice()), RANK_REL_TOL), 4);
    }

    #[test]
    fn surface_examples() {
        let a = re(2.0);
        assert_eq!(discriminant_surface(a.powi(3), 3.0 * a * a, 3.0 * a), re(0.0));
        let a = re(1.0);
        assert_eq!(discriminant_surface(-a.powi(3), -a * a, a), re(0.0));
        assert_eq!(discriminant_surface(re(0.0), re(0.0), re(0.0)), re(0.0));
    }

    #[test]
    fn leaf_embedding_casimirs() {
        let p = LeafParams3::new(c(0.7, 0.2), c(-0.4, 0.3));
        let m = leaf_embed_3x3(&[re(0.0), re(0.0), re(1.0), re(2.0)], &p).unwrap();
        assert_eq!(m[(0, 0)], p.c1 + p.c2);
        assert_eq!(m[(1, 1)], p.c1 + p.c2);
        assert_eq!(m[(2, 2)], p.c1 - 2.0 * p.c2);
        assert_eq!(m[(2, 0)], re(0.0));
        assert_eq!(m[(2, 1)], re(0.0));
        let m = leaf_embed_3x3(&sample_x(), &p).unwrap();
        let f = char_poly_coeffs(&m, &CMatrix::identity(3)).coeffs;
        let g = p.casimirs();
        for i in 0..3 {
            assert!((f[i] - g[i]).norm() < 1e-12);
        }
        assert!((m.trace() - 3.0 * p.c1).norm() < 1e-14);
        assert!(discriminant_relative(g[0], g[1], g[2]) < 1e-14);
        let q = LeafParams3::from_levels(g[1], g[2], Branch::Plus);
        let r = LeafParams3::from_levels(g[1], g[2], Branch::Minus);
        assert!((q.c1 - p.c1).norm() < 1e-14);
        assert!((q.c2 - p.c2).norm() < 1e-14 || (r.c2 - p.c2).norm() < 1e-14);
    }

    #[test]
    fn displayed_casimirs_agree_on_constraint_set() {
        let x = CMatrix::from_rows(&[
            [re(0.0), c(-0.2, 0.5), c(0.7, -0.1)],
            [c(0.4, -0.3), c(1.1, 0.2), c(-0.6, 0.4)],
            [re(0.0), re(0.0), c(0.5, -0.5)],
        ]);
        let m = complete_minors(&x).unwrap();
        let f = char_poly_coeffs(&m, &CMatrix::identity(3)).coeffs;
        let g = |i: usize, j: usize| m[(i - 1, j - 1)];
        let h = constrained_casimirs(g(1, 2), g(1, 3), g(2, 1), g(2, 2), g(2, 3), g(3, 3)).unwrap();
        for i in 0..3 {
            assert!((f[i] - h[i]).norm() < 1e-12 * (1.0 + f[i].norm()));
        }
        assert!(discriminant_relative(h[0], h[1], h[2]) < 1e-12);
    }

    #[test]
    fn closed_form_agrees_with_generic_solver() {
        let x = sample_x();
        let y = [c(-0.4, 0.3), c(0.8, 0.2), c(0.6, -0.9), c(0.3, 0.5)];
        let (a, b) = ([c(0.7, 0.2), c(-0.4, 0.3)], [c(-0.3, 0.6), c(0.5, -0.2)]);
        let (u, v) = map_3x3(&x, &a, &y, &b).unwrap();
        let (uo, vo) = map_3x3_oracle(&x, &a, &y, &b).unwrap();
        for i in 0..4 {
            assert!((u[i] - uo[i]).norm() < 1e-9, "u{i}");
            assert!((v[i] - vo[i]).norm() < 1e-9, "v{i}");
        }
    }

    #[test]
    fn equal_parameters_swap() {
        let x = sample_x();
        let y = [c(-0.4, 0.3), c(0.8, 0.2), c(0.6, -0.9), c(0.3, 0.5)];
        let a = [c(0.7, 0.2), c(-0.4, 0.3)];
        let (u, v) = map_3x3(&x, &a, &y, &a).unwrap();
        for i in 0..4 {
            assert!((u[i] - y[i]).norm() < 1e-14);
            assert!((v[i] - x[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn special_curves() {
        let a = c(0.8, -0.3);
        let bq = LeafParams3::boussinesq(a).casimirs();
        assert!((bq[0] - a.powi(3)).norm() < 1e-14);
        assert!((bq[1] - 3.0 * a * a).norm() < 1e-14);
        assert!((bq[2] - 3.0 * a).norm() < 1e-14);
        let gv = LeafParams3::gv(a).casimirs();
        assert!((gv[0] + a.powi(3)).norm() < 1e-14);
        assert!((gv[1] + a * a).norm() < 1e-14);
        assert!((gv[2] - a).norm() < 1e-14);
    }

    #[test]
    fn gv_transform_examples() {
        let lam = c(0.7, 0.1);
        let g = GvVector {
            xi: [re(0.0), re(0.0)],
            eta: [re(0.0), re(0.0)],
            lambda: lam,
        };
        let x = gv_transform(&g).unwrap();
        assert!(x.iter().all(|v| *v == re(0.0)));
        let zeta = c(0.3, 0.4);
        let b = gv_b_matrix(&g.xi3(), &g.eta3(), lam, zeta).unwrap();
        let expect = CMatrix::diag(&[-lam - zeta, -lam - zeta, lam - zeta]);
        assert!((&b - &expect).max_abs() < 1e-15);
        assert!((l_gv(&x, -lam, zeta).unwrap() - expect).max_abs() < 1e-15);

        let g = GvVector {
            xi: [c(0.3, 0.2), c(-0.5, 0.1)],
            eta: [c(0.9, -0.4), c(0.2, 0.6)],
            lambda: lam,
        };
        let x = gv_transform(&g).unwrap();
        let b = gv_b_matrix(&g.xi3(), &g.eta3(), lam, zeta).unwrap();
        assert!((b - l_gv(&x, -lam, zeta).unwrap()).max_abs() < 1e-14);
        let back = gv_transform_inverse(&x, lam).unwrap();
        for i in 0..2 {
            assert!((back.xi[i] - g.xi[i]).norm() < 1e-14);
            assert!((back.eta[i] - g.eta[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn gv_vector_map_keeps_the_vector_lax_equation() {
        let (lam, mu) = (c(0.7, 0.1), c(-0.4, 0.5));
        let g = [c(0.3, 0.2), c(-0.5, 0.1), c(0.9, -0.4), c(0.2, 0.6)];
        let h = [c(-0.2, 0.4), c(0.6, -0.3), c(0.1, 0.8), c(-0.7, 0.2)];
        let (u, v) = gv_vector_map(&g, lam, &h, mu).unwrap();
        for z in crate::refactor::SAMPLED_ZETAS {
            let lhs = gv_vector_lax(&u, lam, z).unwrap() * gv_vector_lax(&v, mu, z).unwrap();
            let rhs = gv_vector_lax(&h, mu, z).unwrap() * gv_vector_lax(&g, lam, z).unwrap();
            assert!((lhs - rhs).norm_inf() < 1e-10);
        }
    }
}
