//! Yang–Baxter maps with 2×2 Lax matrices: the two symplectic-leaf cases
//! (diagonal and Jordan leading matrices) and the generalized Adler–Yamilov
//! map obtained in the degenerate limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{char_poly_coeffs, re, CMatrix, CommutingFamily, FamilyKind, C64};
use crate::refactor::{invert_refactor, refactor_2x2_with, RefactorConfig};

/// Leading-matrix family of a 2×2 leaf map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `K₁(α₁, α₂) = diag(α₁, α₂)`.
    I,
    /// `K₂(α₁, α₂) = [[α₁, α₂], [0, α₁]]`.
    II,
}

/// A point `(x₁, x₂)` on the leaf fixed by `ᾱ = (α₁, α₂, α₃, α₄)`: the
/// leading matrix is `K(α₁, α₂)`, and `f₀ = α₃`, `f₁ = α₄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafPoint2 {
    pub coords: [C64; 2],
    pub params: [C64; 4],
}

/// Entries below this magnitude count as zero denominators.
pub const POLE_EPS: f64 = 1e-14;

fn nonzero(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= POLE_EPS || !v.is_finite() {
        return Err(Error::DomainError(format!("{what} vanishes")));
    }
    Ok(v)
}

fn params4(p: &[C64]) -> Result<[C64; 4]> {
    p.try_into()
        .map_err(|_| Error::DimensionMismatch(format!("expected 4 parameters, got {}", p.len())))
}

fn coords2(x: &[C64]) -> Result<[C64; 2]> {
    x.try_into()
        .map_err(|_| Error::DimensionMismatch(format!("expected 2 coordinates, got {}", x.len())))
}

impl Case {
    pub fn family(self) -> CommutingFamily {
        let kind = match self {
            Case::I => FamilyKind::DiagonalI,
            Case::II => FamilyKind::JordanII,
        };
        CommutingFamily::new(kind, 2).expect("2x2 family")
    }

    pub fn leading(self, params: &[C64]) -> Result<CMatrix> {
        let p = params4(params)?;
        self.family().eval(&p[..2])
    }

    /// The leaf matrix `L'` with first row `(x₁, x₂)`.
    pub fn embed(self, x: &[C64], params: &[C64]) -> Result<CMatrix> {
        let [x1, x2] = coords2(x)?;
        let [a1, a2, a3, a4] = params4(params)?;
        let (x3, x4) = match self {
            Case::I => {
                let d = nonzero(a1 * x2, "alpha1 * x2")?;
                ((x1 * (a4 - a2 * x1) - a1 * a3) / d, (a4 - a2 * x1) / nonzero(a1, "alpha1")?)
            }
            Case::II => {
                let d = nonzero(a1 * x2 - a2 * x1, "alpha1 * x2 - alpha2 * x1")?;
                ((a4 * x1 - a1 * (x1 * x1 + a3)) / d, (a2 * a3 - a4 * x2 + a1 * x1 * x2) / -d)
            }
        };
        Ok(CMatrix::from_rows(&[[x1, x2], [x3, x4]]))
    }

    /// Strong Lax matrix `L'(x; ᾱ) - ζK(α₁, α₂)`.
    pub fn lax(self, x: &[C64], params: &[C64], zeta: C64) -> Result<CMatrix> {
        Ok(self.embed(x, params)? - self.leading(params)?.scale(zeta))
    }

    /// Reduced bracket on `(x₁, x₂)`.
    pub fn bracket(self, params: &[C64]) -> Result<crate::sklyanin::PoissonStructure> {
        let p = params4(params)?;
        Ok(match self {
            Case::I => crate::sklyanin::case1_bracket(p[0]),
            Case::II => crate::sklyanin::case2_bracket(p[0], p[1]),
        })
    }
}

pub fn case1_embed(x1: C64, x2: C64, params: &[C64]) -> Result<CMatrix> {
    Case::I.embed(&[x1, x2], params)
}

pub fn case2_embed(x1: C64, x2: C64, params: &[C64]) -> Result<CMatrix> {
    Case::II.embed(&[x1, x2], params)
}

/// Relative bound on `‖L'(u) - U‖` when reading coordinates back from `U`.
pub const LEAF_TOL: f64 = 1e-8;

fn project(m: &CMatrix) -> [C64; 2] {
    [m[(0, 0)], m[(0, 1)]]
}

fn check_on_leaf(case: Case, m: &CMatrix, params: &[C64]) -> Result<[C64; 2]> {
    let p = project(m);
    let back = case.embed(&p, params).map_err(|e| match e {
        Error::DomainError(s) => Error::PoleError(s),
        other => other,
    })?;
    let dev = (&back - m).max_abs() / (1.0 + m.max_abs());
    if !(dev <= LEAF_TOL) {
        return Err(Error::ResidualTooLarge {
            what: "leaf",
            residual: dev,
            tolerance: LEAF_TOL,
        });
    }
    Ok(p)
}

/// Embed both points, re-factorize, and read off the first rows.
pub fn case_map(case: Case, x: &[C64], alpha: &[C64], y: &[C64], beta: &[C64]) -> Result<([C64; 2], [C64; 2])> {
    case_map_with(case, x, alpha, y, beta, &RefactorConfig::default())
}

pub fn case_map_with(
    case: Case,
    x: &[C64],
    alpha: &[C64],
    y: &[C64],
    beta: &[C64],
    cfg: &RefactorConfig,
) -> Result<([C64; 2], [C64; 2])> {
    let xm = case.embed(x, alpha)?;
    let ym = case.embed(y, beta)?;
    let r = refactor_2x2_with(&xm, &ym, &case.leading(alpha)?, &case.leading(beta)?, cfg)?;
    let u = check_on_leaf(case, &r.u, alpha)?;
    let v = check_on_leaf(case, &r.v, beta)?;
    Ok((u, v))
}

/// Recovers `(v, x)` from `(u, y)` through the strong Lax equation.
pub fn case_invert(case: Case, u: &[C64], alpha: &[C64], y: &[C64], beta: &[C64]) -> Result<([C64; 2], [C64; 2])> {
    let um = case.embed(u, alpha)?;
    let ym = case.embed(y, beta)?;
    let (v, x) = invert_refactor(&um, &ym, &case.leading(alpha)?, &case.leading(beta)?)?;
    Ok((project(&v), project(&x)))
}

/// `f₀, f₁` of the pencil `L'(x; ᾱ) - ζK`, which should equal `α₃, α₄`.
pub fn case_casimirs(case: Case, x: &[C64], params: &[C64]) -> Result<(C64, C64)> {
    let f = char_poly_coeffs(&case.embed(x, params)?, &case.leading(params)?).coeffs;
    Ok((f[0], f[1]))
}

fn params3(p: &[C64]) -> Result<[C64; 3]> {
    p.try_into()
        .map_err(|_| Error::DimensionMismatch(format!("expected 3 parameters, got {}", p.len())))
}

fn pole(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= POLE_EPS || !v.is_finite() {
        return Err(Error::PoleError(format!("{what} vanishes")));
    }
    Ok(v)
}

/// `M(x; ᾱ) = [[α₁(α₂ + x₁x₂)/α₃ - α₁ζ, x₁], [x₂, α₃/α₁]]`.
pub fn ay_lax(x: &[C64], params: &[C64], zeta: C64) -> Result<CMatrix> {
    let [x1, x2] = coords2(x)?;
    let [a1, a2, a3] = params3(params)?;
    let a1 = pole(a1, "alpha1")?;
    let a3 = pole(a3, "alpha3")?;
    Ok(CMatrix::from_rows(&[[a1 * (a2 + x1 * x2) / a3 - a1 * zeta, x1], [x2, a3 / a1]]))
}

/// The generalized Adler–Yamilov map with parameters `ᾱ = (α₁, α₂, α₃)`, `β̄ = (β₁, β₂, β₃)`.
pub fn adler_yamilov_general(x: &[C64], alpha: &[C64], y: &[C64], beta: &[C64]) -> Result<([C64; 2], [C64; 2])> {
    let [x1, x2] = coords2(x)?;
    let [y1, y2] = coords2(y)?;
    let [a1, a2, a3] = params3(alpha)?;
    let [b1, b2, b3] = params3(beta)?;
    for (v, n) in [(a1, "alpha1"), (b1, "beta1"), (a3, "alpha3"), (b3, "beta3")] {
        pole(v, n)?;
    }
    let q = a1 * b1 * (a2 * b3 - a3 * b2) / pole(a3 * b3 + a1 * b1 * x1 * y2, "alpha3 beta3 + alpha1 beta1 x1 y2")?;
    let u = [b1 / (a1 * b3) * (a3 * y1 - q * x1), a1 / b1 * y2];
    let v = [b1 / a1 * x1, a1 / (b1 * a3) * (b3 * x2 + q * y2)];
    Ok((u, v))
}

/// `{x₁, x₂} = α₃`.
pub fn ay_bracket(params: &[C64]) -> Result<crate::sklyanin::PoissonStructure> {
    Ok(crate::sklyanin::constant_bracket_2(params3(params)?[2]))
}

/// Leaf matrix of the pencil `X - ζ diag(α₁, ε)` whose limit as `ε → 0` is `M`.
pub fn ay_eps_leaf(x: &[C64], params: &[C64], eps: f64) -> Result<CMatrix> {
    let [x1, x2] = coords2(x)?;
    let [a1, a2, a3] = params3(params)?;
    let rad = a3 * a3 - 4.0 * a1 * eps * (a2 + x1 * x2);
    if rad.im == 0.0 && rad.re <= 0.0 {
        return Err(Error::BranchCut { re: rad.re, im: rad.im });
    }
    let s = rad.sqrt();
    // (α₃ - s)/(2ε) rationalised, so small ε does not cancel.
    let p = a3 + s;
    if p.norm() < POLE_EPS {
        return Err(Error::PoleError("alpha3 + sqrt(radicand) vanishes".into()));
    }
    Ok(CMatrix::from_rows(&[[2.0 * a1 * (a2 + x1 * x2) / p, x1], [x2, p / (2.0 * pole(a1, "alpha1")?)]]))
}

/// `max_{ζ ∈ {0, 1}} ‖L_ε(ζ) - M(ζ)‖_∞`.
pub fn ay_limit_probe(x: &[C64], params: &[C64], eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::DomainError(format!("eps must be positive, got {eps}")));
    }
    let leaf = ay_eps_leaf(x, params, eps)?;
    let k = CMatrix::diag(&[params3(params)?[0], re(eps)]);
    let mut worst: f64 = 0.0;
    for zeta in [re(0.0), re(1.0)] {
        let d = (&leaf - &k.scale(zeta)) - ay_lax(x, params, zeta)?;
        worst = worst.max(d.norm_inf());
    }
    Ok(worst)
}

/// Observed orders `log₂(d(ε)/d(ε/2))` for each `ε` in the list.
pub fn ay_limit_orders(x: &[C64], params: &[C64], eps: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    eps.iter()
        .map(|&e| {
            let d = ay_limit_probe(x, params, e)?;
            let dh = ay_limit_probe(x, params, e / 2.0)?;
            Ok((e, d, (d / dh).log2()))
        })
        .collect()
}
