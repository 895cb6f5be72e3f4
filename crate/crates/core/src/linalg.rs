//! Small dense complex matrices and the relation verifiers.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{graph_of_default, TwoVertexShape};
use crate::poly::RealPolynomial;
use crate::reps::{is_degenerate, Representation};
use crate::surface::{p_hat, q_h, r_h_pair, SurfaceParams};

/// Relative tolerance of the hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense `n x n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch(0, 1));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, bad.len()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// `max |a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..self.n {
            for j in i..self.n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Real diagonal entries when every off-diagonal entry is exactly zero.
    pub fn real_diagonal(&self) -> Option<Vec<f64>> {
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if (i != j && a.norm() != 0.0) || (i == j && a.im != 0.0) {
                    return None;
                }
            }
        }
        Some((0..self.n).map(|i| self.get(i, i).re).collect())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        same_dim(self, rhs)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        same_dim(self, rhs)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.n == b.n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a.n, b.n))
    }
}

// The operator impls panic on dimension mismatch; use the `checked_*`
// methods on unvalidated input.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix dimensions must agree")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix dimensions must agree")
    }
}

/// A validated hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Validates finiteness and `a_ij = conj(a_ji)` to `HERMITIAN_TOL`
    /// relative to `max(1, max |a_ij|)`. Input is never symmetrized.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.n == 0 {
            return Err(Error::DimensionMismatch(0, 1));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = m.hermitian_deviation();
        if dev > HERMITIAN_TOL * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is hermitian by construction.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diag(diag))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }
}

impl TryFrom<ComplexMatrix> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl AsRef<ComplexMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// `AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// Evaluates `p(X)` by Horner's scheme.
pub fn apply_poly(p: &RealPolynomial, x: &HermitianMatrix) -> HermitianMatrix {
    let n = x.dim();
    let id = ComplexMatrix::identity(n);
    let mut acc = ComplexMatrix::zeros(n);
    for &a in p.coeffs().iter().rev() {
        acc = &(&acc * x.as_matrix()) + &id.scale_real(a);
    }
    HermitianMatrix::new_unchecked(acc)
}

/// `Z = [X, Y] / (i hbar)`, hermitian whenever `X` and `Y` are.
pub fn z_from_xy(hbar: f64, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<HermitianMatrix> {
    let c = commutator(x.as_matrix(), y.as_matrix())?;
    Ok(HermitianMatrix::new_unchecked(c.scale(-I / hbar)))
}

/// The symmetric ordering `T(X, Y^2) = (Y^2 p'(X) + p'(X) Y^2) / 2`.
pub fn t_ordering(
    params: &SurfaceParams,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<HermitianMatrix> {
    same_dim(x.as_matrix(), y.as_matrix())?;
    let y2 = y.as_matrix() * y.as_matrix();
    let dpx = apply_poly(params.dp(), x);
    let t = &(&y2 * dpx.as_matrix()) + &(dpx.as_matrix() * &y2);
    Ok(HermitianMatrix::new_unchecked(t.scale_real(0.5)))
}

/// Frobenius residuals of a candidate triple against the three relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub res_xy: f64,
    pub res_yz: f64,
    pub res_zx: f64,
    /// Largest Frobenius norm of any relation side, floored at 1.
    pub norm_scale: f64,
    /// The three residuals divided by `norm_scale`.
    pub relative: [f64; 3],
}

impl ResidualReport {
    fn from_sides(sides: [(ComplexMatrix, ComplexMatrix); 3]) -> Self {
        let norm_scale = sides
            .iter()
            .flat_map(|(l, r)| [l.frobenius_norm(), r.frobenius_norm()])
            .fold(1.0_f64, f64::max);
        let res = sides.map(|(l, r)| (&l - &r).frobenius_norm());
        Self {
            res_xy: res[0],
            res_yz: res[1],
            res_zx: res[2],
            norm_scale,
            relative: res.map(|r| r / norm_scale),
        }
    }

    pub fn max_relative(&self) -> f64 {
        self.relative.iter().copied().fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max_relative() <= tol
    }
}

/// Right-hand sides `p(X)p'(X) + T(X, Y^2)` and `2Y^3 + Y p(X) + p(X) Y`.
fn relation_rhs(
    params: &SurfaceParams,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let px = apply_poly(params.p(), x);
    let dpx = apply_poly(params.dp(), x);
    let t = t_ordering(params, x, y)?;
    let yz_rhs = &(px.as_matrix() * dpx.as_matrix()) + t.as_matrix();

    let ym = y.as_matrix();
    let y3 = &(ym * ym) * ym;
    let zx_rhs = &(&y3.scale_real(2.0) + &(ym * px.as_matrix())) + &(px.as_matrix() * ym);
    Ok((yz_rhs, zx_rhs))
}

/// Residuals of `[X,Y] = i hbar Z`, `[Y,Z] = i hbar (p(X)p'(X) + T)` and
/// `[Z,X] = i hbar (2Y^3 + Y p(X) + p(X) Y)`.
pub fn relation_residuals(
    params: &SurfaceParams,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
) -> Result<ResidualReport> {
    let (xm, ym, zm) = (x.as_matrix(), y.as_matrix(), z.as_matrix());
    same_dim(xm, ym)?;
    same_dim(xm, zm)?;
    let ih = I * params.hbar();
    let (yz_rhs, zx_rhs) = relation_rhs(params, x, y)?;
    Ok(ResidualReport::from_sides([
        (commutator(xm, ym)?, zm.scale(ih)),
        (commutator(ym, zm)?, yz_rhs.scale(ih)),
        (commutator(zm, xm)?, zx_rhs.scale(ih)),
    ]))
}

/// Residuals of the relations with `Z` eliminated:
/// `[[X,Y],Y] = hbar^2 (p(X)p'(X) + T)` and `[[Y,X],X] = hbar^2 (2Y^3 + Y p(X) + p(X) Y)`.
///
/// `res_xy` is identically zero. Dividing `res_yz` and `res_zx` by `hbar`
/// gives the residuals of [`relation_residuals`] with `Z = [X,Y]/(i hbar)`.
pub fn reduced_residuals(
    params: &SurfaceParams,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<ResidualReport> {
    let (xm, ym) = (x.as_matrix(), y.as_matrix());
    same_dim(xm, ym)?;
    let h2 = params.hbar() * params.hbar();
    let (yz_rhs, zx_rhs) = relation_rhs(params, x, y)?;
    let xy = commutator(xm, ym)?;
    let yx = xy.scale_real(-1.0);
    let zero = ComplexMatrix::zeros(xm.dim());
    Ok(ResidualReport::from_sides([
        (zero.clone(), zero),
        (commutator(&xy, ym)?, yz_rhs.scale_real(h2)),
        (commutator(&yx, xm)?, zx_rhs.scale_real(h2)),
    ]))
}

/// Residual of the matrix-element equations at one index pair `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbEntry {
    pub i: usize,
    pub j: usize,
    /// `sum_k (q(x_i,x_j) - 2x_k) y_ik y_kj - hbar^2 delta_ij p(x_i) p'(x_j)`.
    pub a: Complex64,
    /// `2 hbar^2 sum_{k,l} y_ik y_kl y_lj - r(x_i,x_j) y_ij`.
    pub b: Complex64,
}

/// Matrix-element residuals for diagonal `X = diag(xs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbResiduals {
    pub entries: Vec<AbEntry>,
    /// Largest magnitude of any term entering the sums, floored at 1.
    pub scale: f64,
}

impl AbResiduals {
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0, |m, e| m.max(e.a.norm()).max(e.b.norm()))
    }

    pub fn vanishes(&self, tol: f64) -> bool {
        self.max_abs() <= tol * self.scale
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&AbEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }
}

/// Evaluates the element-wise equations directly from the scalar kernels.
pub fn ab_equation_residuals(params: &SurfaceParams, xs: &[f64], y: &HermitianMatrix) -> Result<AbResiduals> {
    let n = xs.len();
    if y.dim() != n {
        return Err(Error::DimensionMismatch(n, y.dim()));
    }
    let h2 = params.hbar() * params.hbar();
    let mut entries = Vec::with_capacity(n * (n + 1) / 2);
    let mut scale = 1.0_f64;
    for i in 0..n {
        for j in i..n {
            let q = q_h(params, xs[i], xs[j]);
            let mut a = Complex64::new(0.0, 0.0);
            for (k, &xk) in xs.iter().enumerate() {
                let term = y.get(i, k) * y.get(k, j) * (q - 2.0 * xk);
                scale = scale.max(term.norm());
                a += term;
            }
            if i == j {
                let d = h2 * params.p_at(xs[i]) * params.dp_at(xs[j]);
                scale = scale.max(d.abs());
                a -= d;
            }
            let mut cube = Complex64::new(0.0, 0.0);
            for k in 0..n {
                for l in 0..n {
                    cube += y.get(i, k) * y.get(k, l) * y.get(l, j);
                }
            }
            let lhs = cube * (2.0 * h2);
            let rhs = y.get(i, j) * r_h_pair(params, xs[i], xs[j]);
            scale = scale.max(lhs.norm()).max(rhs.norm());
            entries.push(AbEntry {
                i,
                j,
                a,
                b: lhs - rhs,
            });
        }
    }
    Ok(AbResiduals { entries, scale })
}

/// Consistency check of the symmetric ordering symbol against `t_ordering`
/// for diagonal `X`: entry `(i,j)` equals `p_hat(x_i, x_j) (Y^2)_ij`.
pub fn t_ordering_symbol(params: &SurfaceParams, xs: &[f64], y: &HermitianMatrix) -> ComplexMatrix {
    let y2 = y.as_matrix() * y.as_matrix();
    ComplexMatrix::from_fn(xs.len(), |i, j| y2.get(i, j) * p_hat(params, xs[i], xs[j]))
}

/// Unitary equivalence of two-dimensional non-degenerate representations by
/// the closed-form classification.
///
/// Both representations must belong to the same algebra (identical
/// parameters). For `X = diag(x, -x)` the verdict depends only on the graph
/// type, `|x|` and, for the type with nonzero diagonal in `Y`, on `y`. Other
/// two-dimensional shapes are decided by [`equivalence_2d_search`].
pub fn equivalence_2d(a: &Representation, b: &Representation) -> Result<bool> {
    let (xa, xb) = check_pair(a, b)?;
    let antisym = |x: &[f64]| (x[0] + x[1]).abs() <= 1e-12 * x[0].abs().max(1.0);
    if !(antisym(&xa) && antisym(&xb)) {
        return equivalence_2d_search(a, b, crate::DEFAULT_TOL);
    }
    let (ta, tb) = (
        TwoVertexShape::of(&graph_of_default(&a.y)),
        TwoVertexShape::of(&graph_of_default(&b.y)),
    );
    if ta != tb {
        return Ok(false);
    }
    let close = |u: f64, v: f64| (u - v).abs() <= crate::DEFAULT_TOL * u.abs().max(v.abs()).max(1.0);
    let same_x = close(xa[0].abs(), xb[0].abs());
    Ok(match ta {
        TwoVertexShape::TypeI => same_x,
        TwoVertexShape::TypeII => same_x && close(a.y.get(0, 0).re, b.y.get(0, 0).re),
        _ => return equivalence_2d_search(a, b, crate::DEFAULT_TOL),
    })
}

fn check_pair(a: &Representation, b: &Representation) -> Result<(Vec<f64>, Vec<f64>)> {
    for r in [a, b] {
        if r.dim() != 2 {
            return Err(Error::DimensionMismatch(r.dim(), 2));
        }
        if is_degenerate(r, crate::DEFAULT_TOL) {
            return Err(Error::Constraint("representation is degenerate (Z = 0)".into()));
        }
    }
    let (pa, pb) = (a.params.raw(), b.params.raw());
    let rel = |u: f64, v: f64| (u - v).abs() <= 1e-12 * u.abs().max(v.abs());
    if pa.g != pb.g || !rel(pa.alpha, pb.alpha) || !rel(pa.c, pb.c) || !rel(pa.hbar, pb.hbar) {
        return Err(Error::IncompatibleParams(
            "representations of different algebras".into(),
        ));
    }
    let xa = a.x_diag();
    let xb = b.x_diag();
    if xa[0] == xa[1] || xb[0] == xb[1] {
        return Err(Error::Constraint("X must have distinct diagonal entries".into()));
    }
    Ok((xa, xb))
}

/// Unitary equivalence by explicit search over the unitaries that keep a
/// diagonal `X` with distinct entries diagonal: a permutation followed by a
/// diagonal phase. The phase is solved from the off-diagonal entry of `Y`
/// and the candidate `U` is checked on all three generators.
pub fn equivalence_2d_search(a: &Representation, b: &Representation, tol: f64) -> Result<bool> {
    check_pair(a, b)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let perms = [
        ComplexMatrix::identity(2),
        ComplexMatrix::from_rows(vec![vec![zero, one], vec![one, zero]])?,
    ];
    let scale = [&a.x, &a.y, &a.z, &b.x, &b.y, &b.z]
        .iter()
        .map(|m| m.frobenius_norm())
        .fold(1.0_f64, f64::max);
    for p in &perms {
        let py = &(p * a.y.as_matrix()) * p;
        let (src, dst) = (py.get(0, 1), b.y.get(0, 1));
        let phi = if src.norm() > 0.0 && dst.norm() > 0.0 {
            dst.arg() - src.arg()
        } else {
            0.0
        };
        let d = ComplexMatrix::from_real_diag(&[1.0, 1.0]);
        let mut d = d;
        d.set(1, 1, Complex64::from_polar(1.0, -phi));
        let u = &d * p;
        let ud = u.adjoint();
        let conj = |m: &HermitianMatrix| &(&u * m.as_matrix()) * &ud;
        let ok = [(&a.x, &b.x), (&a.y, &b.y), (&a.z, &b.z)]
            .iter()
            .all(|(m, target)| (&conj(m) - target.as_matrix()).frobenius_norm() <= tol * scale);
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}
