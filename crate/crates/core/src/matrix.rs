//! Small dense complex matrices, binomial pencils `X - ζA`, the Casimir
//! coefficients of `det(X - ζA)` and the commuting parameter families `K(α)`.
//!
//! Sign convention for the Casimir coefficients (used everywhere in the crate):
//!
//! ```text
//! det(X - ζA) = Σ_{i=0}^{n} (-1)^i f_i ζ^i,   f_0 = det X,  f_n = det A.
//! ```

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative singularity threshold: `|det M| <= SINGULAR_EPS * ‖M‖^n` is singular.
pub const SINGULAR_EPS: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major data; fails if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let cl = rows.first().map(|row| row.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * cl);
        for row in rows {
            assert_eq!(row.as_ref().len(), cl, "ragged matrix literal");
            data.extend_from_slice(row.as_ref());
        }
        CMatrix {
            rows: r,
            cols: cl,
            data,
        }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let converted: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.as_ref().iter().map(|&x| re(x)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_1(&self) -> f64 {
        self.transpose().norm_inf()
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    /// Sub-matrix built from the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> CMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn pow(&self, k: u32) -> CMatrix {
        let mut out = CMatrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// Determinant: cofactor expansion for n <= 3, LU with partial pivoting above.
    pub fn det(&self) -> Result<C64> {
        let n = self.require_square("det")?;
        let m = |i: usize, j: usize| self[(i, j)];
        Ok(match n {
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => Lu::factor(self).map(|lu| lu.det()).unwrap_or(re(0.0)),
        })
    }

    /// Singularity threshold `SINGULAR_EPS * ‖M‖^n` with `‖·‖` the largest entry modulus.
    pub fn singularity_threshold(&self) -> f64 {
        SINGULAR_EPS * self.max_abs().powi(self.rows as i32)
    }

    pub fn is_singular(&self) -> Result<bool> {
        let d = self.det()?;
        Ok(d.norm() <= self.singularity_threshold() || !d.norm().is_finite())
    }

    /// Inverse via LU; raises `SingularMatrix` when `|det| <= 1e-12 ‖M‖^n`.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.require_square("inverse")?;
        let d = self.det()?;
        let threshold = self.singularity_threshold();
        if d.norm() <= threshold || !d.norm().is_finite() {
            return Err(Error::SingularMatrix {
                det: d.norm(),
                threshold,
            });
        }
        let lu = Lu::factor(self).ok_or(Error::SingularMatrix {
            det: d.norm(),
            threshold,
        })?;
        Ok(lu.solve(&CMatrix::identity(n)))
    }

    /// Cheap 1-norm condition estimate `‖M‖_1 ‖M^-1‖_1`.
    pub fn condition_estimate(&self) -> Result<f64> {
        Ok(self.norm_1() * self.inverse()?.norm_1())
    }
}

/// LU decomposition with partial pivoting, `PA = LU`.
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Returns `None` when an exactly zero pivot is met.
    pub fn factor(a: &CMatrix) -> Option<Lu> {
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))?;
            if lu[(p, k)].norm() == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(p * n + j, k * n + j);
                }
                perm.swap(p, k);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Some(Lu { lu, perm, sign })
    }

    pub fn det(&self) -> C64 {
        (0..self.lu.rows).fold(re(self.sign), |acc, i| acc * self.lu[(i, i)])
    }

    /// Solves `A Z = B` column by column.
    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let n = self.lu.rows;
        let mut out = CMatrix::zeros(n, b.cols);
        for col in 0..b.cols {
            let mut y: Vec<C64> = (0..n).map(|i| b[(self.perm[i], col)]).collect();
            for i in 0..n {
                for k in 0..i {
                    let t = self.lu[(i, k)] * y[k];
                    y[i] -= t;
                }
            }
            for i in (0..n).rev() {
                for k in (i + 1)..n {
                    let t = self.lu[(i, k)] * y[k];
                    y[i] -= t;
                }
                y[i] /= self.lu[(i, i)];
            }
            for i in 0..n {
                out[(i, col)] = y[i];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(re(-1.0))
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: &CMatrix) -> CMatrix {
                (&self).$f(rhs)
            }
        }
        impl $tr<CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                self.$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>11.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire format shared by every module and the CLI:
/// `{"rows": n, "cols": n, "re": [...], "im": [...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            re: self.data.iter().map(|z| z.re).collect(),
            im: self.data.iter().map(|z| z.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        if m.re.len() != m.rows * m.cols || m.im.len() != m.re.len() {
            return Err(serde::de::Error::custom(format!(
                "matrix {}x{} needs {} re and im entries, got {} and {}",
                m.rows,
                m.cols,
                m.rows * m.cols,
                m.re.len(),
                m.im.len()
            )));
        }
        let data: Vec<C64> = m.re.iter().zip(&m.im).map(|(&a, &b)| c(a, b)).collect();
        let out = CMatrix::from_vec(m.rows, m.cols, data).map_err(serde::de::Error::custom)?;
        if !out.is_finite() {
            return Err(serde::de::Error::custom("matrix entries must be finite"));
        }
        Ok(out)
    }
}

/// Complex vector wire format `{"re": [...], "im": [...]}`; `im` may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CVecJson {
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl CVecJson {
    pub fn from_slice(v: &[C64]) -> Self {
        CVecJson {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_vec(&self) -> Result<Vec<C64>> {
        if !self.im.is_empty() && self.im.len() != self.re.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} real and {} imaginary parts",
                self.re.len(),
                self.im.len()
            )));
        }
        Ok(self
            .re
            .iter()
            .enumerate()
            .map(|(k, &r)| c(r, self.im.get(k).copied().unwrap_or(0.0)))
            .collect())
    }
}

/// The first-degree matrix polynomial `point - ζ·leading`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinomialPencil {
    pub point: CMatrix,
    pub leading: CMatrix,
}

impl BinomialPencil {
    pub fn new(point: CMatrix, leading: CMatrix) -> Result<Self> {
        if !point.is_square() || point.rows() != leading.rows() || point.cols() != leading.cols()
        {
            return Err(Error::DimensionMismatch(format!(
                "pencil needs square matrices of equal size, got {}x{} and {}x{}",
                point.rows(),
                point.cols(),
                leading.rows(),
                leading.cols()
            )));
        }
        Ok(BinomialPencil { point, leading })
    }

    pub fn dim(&self) -> usize {
        self.point.rows()
    }

    pub fn eval(&self, zeta: C64) -> CMatrix {
        &self.point - &self.leading.scale(zeta)
    }

    pub fn char_poly(&self) -> CharPolyCoeffs {
        char_poly_coeffs(&self.point, &self.leading)
    }
}

/// `L(ζ) = point - ζ·leading`.
pub fn pencil_eval(p: &BinomialPencil, zeta: C64) -> CMatrix {
    p.eval(zeta)
}

/// Casimir vector `(f_0, …, f_n)` of a pencil.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoeffs {
    pub coeffs: Vec<C64>,
}

impl CharPolyCoeffs {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ (-1)^i f_i ζ^i`, which equals `det(X - ζA)`.
    pub fn eval(&self, zeta: C64) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(re(0.0), |acc, (i, &f)| {
                let signed = if i % 2 == 0 { f } else { -f };
                acc * zeta + signed
            })
    }

    /// Largest relative deviation `|f_i - g_i| / (1 + |g_i|)` over the first `upto` coefficients.
    pub fn relative_drift(&self, reference: &CharPolyCoeffs, upto: usize) -> f64 {
        self.coeffs
            .iter()
            .zip(&reference.coeffs)
            .take(upto)
            .map(|(a, b)| (a - b).norm() / (1.0 + b.norm()))
            .fold(0.0, f64::max)
    }
}

/// Coefficients `f_i` with `det(X - ζA) = Σ (-1)^i f_i ζ^i`.
///
/// For `n <= 3` the coefficients are the exact column-mixing expansion
/// `f_k = Σ_{|S|=k} det(X with columns S replaced by those of A)`; larger
/// sizes use Leverrier–Faddeev on `A^-1 X`, or interpolation at roots of
/// unity when `A` is singular.
pub fn char_poly_coeffs(x: &CMatrix, a: &CMatrix) -> CharPolyCoeffs {
    let n = x.rows();
    assert!(x.is_square() && a.rows() == n && a.cols() == n, "pencil must be square");
    if n <= 3 {
        return CharPolyCoeffs {
            coeffs: mixed_column_expansion(x, a),
        };
    }
    match a.inverse() {
        Ok(a_inv) => leverrier_faddeev(x, a, &a_inv),
        Err(_) => roots_of_unity_interpolation(x, a),
    }
}

fn mixed_column_expansion(x: &CMatrix, a: &CMatrix) -> Vec<C64> {
    let n = x.rows();
    let mut coeffs = vec![re(0.0); n + 1];
    for mask in 0u32..(1 << n) {
        let mixed = CMatrix::from_fn(n, n, |i, j| if mask & (1 << j) != 0 { a[(i, j)] } else { x[(i, j)] });
        coeffs[mask.count_ones() as usize] += mixed.det().expect("square");
    }
    coeffs
}

fn leverrier_faddeev(x: &CMatrix, a: &CMatrix, a_inv: &CMatrix) -> CharPolyCoeffs {
    let n = x.rows();
    let b = a_inv * x;
    // det(μI - B) = Σ c_k μ^k with c_n = 1.
    let mut c_desc = vec![re(0.0); n + 1];
    c_desc[n] = re(1.0);
    let mut m = CMatrix::identity(n);
    for k in 1..=n {
        let bm = &b * &m;
        let ck = -bm.trace() / (k as f64);
        c_desc[n - k] = ck;
        m = &bm + &CMatrix::identity(n).scale(ck);
    }
    let det_a = a.det().expect("square");
    let coeffs = (0..=n)
        .map(|k| {
            let sign = if (n + k).is_multiple_of(2) { 1.0 } else { -1.0 };
            det_a * c_desc[k] * sign
        })
        .collect();
    CharPolyCoeffs { coeffs }
}

fn roots_of_unity_interpolation(x: &CMatrix, a: &CMatrix) -> CharPolyCoeffs {
    let n = x.rows();
    let m = n + 1;
    let samples: Vec<(C64, C64)> = (0..m)
        .map(|j| {
            let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
            (w, (x - &a.scale(w)).det().expect("square"))
        })
        .collect();
    let coeffs = (0..=n)
        .map(|k| {
            let ck: C64 = samples.iter().map(|(w, d)| d * w.powi(-(k as i32))).sum::<C64>() / m as f64;
            if k % 2 == 0 {
                ck
            } else {
                -ck
            }
        })
        .collect();
    CharPolyCoeffs { coeffs }
}

/// Families of pairwise commuting invertible matrices `α ↦ K(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `diag(α_1, …, α_n)`.
    DiagonalI,
    /// `α_1 I + α_2 N` with `N` the nilpotent shift (`[[α1, α2], [0, α1]]` for n = 2).
    JordanII,
    /// `[[α1, -α2], [α2, α1]]`, only for n = 2.
    RotationIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingFamily {
    pub kind: FamilyKind,
    pub dim: usize,
}

impl CommutingFamily {
    pub fn new(kind: FamilyKind, dim: usize) -> Result<Self> {
        if dim == 0 || (kind == FamilyKind::RotationIII && dim != 2) {
            return Err(Error::DimensionMismatch(format!("{kind:?} family is not defined for n = {dim}")));
        }
        Ok(CommutingFamily { kind, dim })
    }

    pub fn param_count(&self) -> usize {
        match self.kind {
            FamilyKind::DiagonalI => self.dim,
            FamilyKind::JordanII | FamilyKind::RotationIII => 2,
        }
    }

    pub fn eval(&self, alpha: &[C64]) -> Result<CMatrix> {
        if alpha.len() != self.param_count() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} family expects {} parameters, got {}",
                self.kind,
                self.param_count(),
                alpha.len()
            )));
        }
        let zero = re(0.0);
        match self.kind {
            FamilyKind::DiagonalI => {
                if alpha.contains(&zero) {
                    return Err(Error::SingularParameter("diagonal entries must be nonzero".into()));
                }
                Ok(CMatrix::diag(alpha))
            }
            FamilyKind::JordanII => {
                if alpha[0] == zero {
                    return Err(Error::SingularParameter("alpha_1 must be nonzero".into()));
                }
                Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
                    if i == j {
                        alpha[0]
                    } else if j == i + 1 {
                        alpha[1]
                    } else {
                        zero
                    }
                }))
            }
            FamilyKind::RotationIII => {
                if alpha[0] * alpha[0] + alpha[1] * alpha[1] == zero {
                    return Err(Error::SingularParameter("alpha_1^2 + alpha_2^2 must be nonzero".into()));
                }
                Ok(CMatrix::from_rows(&[[alpha[0], -alpha[1]], [alpha[1], alpha[0]]]))
            }
        }
    }
}

/// Evaluates a commuting family.
pub fn family_eval(fam: &CommutingFamily, alpha: &[C64]) -> Result<CMatrix> {
    fam.eval(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: f64, b: f64, cc: f64, d: f64) -> CMatrix {
        CMatrix::from_real_rows(&[[a, b], [cc, d]])
    }

    #[test]
    fn pencil_eval_examples() {
        let i2 = CMatrix::identity(2);
        let p = BinomialPencil::new(i2.clone(), i2.clone()).unwrap();
        assert_eq!(p.eval(re(0.0)), i2);
        assert_eq!(p.eval(re(1.0)), CMatrix::zeros(2, 2));
        let p = BinomialPencil::new(m2(1.0, 2.0, 3.0, 4.0), CMatrix::diag(&[re(1.0), re(2.0)])).unwrap();
        assert_eq!(p.eval(re(2.0)), m2(-1.0, 2.0, 3.0, 0.0));
    }

    #[test]
    fn char_poly_small_examples() {
        let i2 = CMatrix::identity(2);
        assert_eq!(char_poly_coeffs(&i2, &i2).coeffs, vec![re(1.0), re(2.0), re(1.0)]);
        let f = char_poly_coeffs(&m2(1.0, 2.0, 3.0, 4.0), &CMatrix::diag(&[re(1.0), re(2.0)]));
        assert_eq!(f.coeffs, vec![re(-2.0), re(6.0), re(2.0)]);
    }

    #[test]
    fn char_poly_boussinesq_block() {
        // α on the diagonal plus a rank-one nilpotent part: all eigenvalues equal α.
        let al = 1.7;
        let x = CMatrix::from_real_rows(&[[al, 0.0, 0.3], [0.0, al, -0.4], [0.0, 0.0, al]]);
        let f = char_poly_coeffs(&x, &CMatrix::identity(3));
        let expect = [al.powi(3), 3.0 * al * al, 3.0 * al, 1.0];
        for (got, want) in f.coeffs.iter().zip(expect) {
            assert!((got - re(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn char_poly_general_n_matches_interpolation_and_sign_convention() {
        let x = CMatrix::from_fn(5, 5, |i, j| c((i * 3 + j) as f64 * 0.1 - 0.7, (i as f64 - j as f64) * 0.05));
        let a = CMatrix::from_fn(5, 5, |i, j| if i == j { c(1.0 + i as f64 * 0.2, 0.1) } else { c(0.01 * (i + j) as f64, 0.0) });
        let lf = char_poly_coeffs(&x, &a);
        let interp = roots_of_unity_interpolation(&x, &a);
        for (p, q) in lf.coeffs.iter().zip(&interp.coeffs) {
            assert!((p - q).norm() < 1e-10 * (1.0 + q.norm()));
        }
        for zeta in [re(0.0), re(1.5), c(0.3, -0.7)] {
            let direct = (&x - &a.scale(zeta)).det().unwrap();
            assert!((lf.eval(zeta) - direct).norm() < 1e-10 * (1.0 + direct.norm()));
        }
        assert!((lf.coeffs[5] - a.det().unwrap()).norm() < 1e-12);
        assert!((lf.coeffs[0] - x.det().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn det_and_inverse_examples() {
        assert_eq!(CMatrix::identity(3).det().unwrap(), re(1.0));
        assert_eq!(m2(1.0, 2.0, 3.0, 4.0).det().unwrap(), re(-2.0));
        let inv = CMatrix::diag(&[re(2.0), re(4.0)]).inverse().unwrap();
        assert_eq!(inv, CMatrix::diag(&[re(0.5), re(0.25)]));
        assert!(matches!(m2(1.0, 2.0, 2.0, 4.0).inverse(), Err(Error::SingularMatrix { .. })));
        assert!(matches!(CMatrix::zeros(3, 3).inverse(), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn lu_det_matches_cofactor_for_4x4() {
        let m = CMatrix::from_fn(4, 4, |i, j| c(((i + 1) * (j + 2)) as f64 % 7.0 - 3.0, 0.1 * i as f64));
        let via_lu = Lu::factor(&m).unwrap().det();
        // Laplace expansion along the first row.
        let mut laplace = re(0.0);
        for j in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&k| k != j).collect();
            let minor = m.select(&[1, 2, 3], &cols).det().unwrap();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            laplace += m[(0, j)] * minor * sign;
        }
        assert!((via_lu - laplace).norm() < 1e-12 * (1.0 + laplace.norm()));
    }

    #[test]
    fn families_commute_and_reject_singular_parameters() {
        let diag = CommutingFamily::new(FamilyKind::DiagonalI, 2).unwrap();
        assert_eq!(diag.eval(&[re(1.0), re(1.0)]).unwrap(), CMatrix::identity(2));
        let jordan = CommutingFamily::new(FamilyKind::JordanII, 2).unwrap();
        assert_eq!(jordan.eval(&[re(1.0), re(0.0)]).unwrap(), CMatrix::identity(2));
        let a = diag.eval(&[re(2.0), re(3.0)]).unwrap();
        let b = diag.eval(&[re(5.0), re(7.0)]).unwrap();
        assert_eq!(&a * &b, &b * &a);
        assert!(matches!(diag.eval(&[re(0.0), re(1.0)]), Err(Error::SingularParameter(_))));
        assert!(matches!(jordan.eval(&[re(0.0), re(1.0)]), Err(Error::SingularParameter(_))));
        let rot = CommutingFamily::new(FamilyKind::RotationIII, 2).unwrap();
        assert!(matches!(rot.eval(&[re(1.0), c(0.0, 1.0)]), Err(Error::SingularParameter(_))));
        assert!(CommutingFamily::new(FamilyKind::RotationIII, 3).is_err());
    }

    #[test]
    fn matrix_json_wire_format() {
        let m = CMatrix::from_rows(&[[c(1.0, 0.5), re(2.0)], [re(3.0), c(0.0, -1.0)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"re":[1.0,2.0,3.0,0.0],"im":[0.5,0.0,0.0,-1.0]}"#);
        let back: CMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CMatrix>(r#"{"rows":2,"cols":2,"re":[1,2,3],"im":[0,0,0]}"#).is_err());
    }
}
