//! Explicit representations: one-dimensional, the two two-dimensional
//! families, the three-dimensional string, and rescaling between algebras.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{graph_of, MatrixGraph, TwoVertexShape};
use crate::linalg::{relation_residuals, z_from_xy, ComplexMatrix, HermitianMatrix, ResidualReport};
use crate::poly::RealPolynomial;
use crate::rootfind::{self, Bracket};
use crate::surface::{f_3d, f_3d_in_u, f_type_i, r_3d, SurfaceParams};
use crate::DEFAULT_TOL;

/// Family a representation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    OneDim,
    TypeI,
    TypeII,
    ThreeDimString,
    Custom,
}

impl std::fmt::Display for RepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RepKind::OneDim => "one_dim",
            RepKind::TypeI => "type_i",
            RepKind::TypeII => "type_ii",
            RepKind::ThreeDimString => "three_dim_string",
            RepKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Branch data recorded by the constructors.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RepMeta {
    #[serde(default)]
    pub x_hat: Option<f64>,
    #[serde(default)]
    pub thetas: Vec<f64>,
    #[serde(default)]
    pub y_sign: Option<i8>,
}

/// A triple `(X, Y, Z)` with diagonal `X` and `Z = [X, Y] / (i hbar)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub(crate) params: SurfaceParams,
    pub(crate) x: HermitianMatrix,
    pub(crate) y: HermitianMatrix,
    pub(crate) z: HermitianMatrix,
    pub(crate) kind: RepKind,
    pub(crate) meta: RepMeta,
}

impl Representation {
    /// Builds `X = diag(xs)` and derives `Z` from `X` and `Y`.
    pub fn new(
        params: SurfaceParams,
        xs: &[f64],
        y: HermitianMatrix,
        kind: RepKind,
        meta: RepMeta,
    ) -> Result<Self> {
        if xs.len() != y.dim() {
            return Err(Error::DimensionMismatch(xs.len(), y.dim()));
        }
        if xs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let x = HermitianMatrix::from_real_diag(xs);
        let z = z_from_xy(params.hbar(), &x, &y)?;
        Ok(Self {
            params,
            x,
            y,
            z,
            kind,
            meta,
        })
    }

    /// Like [`new`](Self::new) but takes `X` as a matrix, which must be diagonal.
    pub fn from_matrices(
        params: SurfaceParams,
        x: &HermitianMatrix,
        y: HermitianMatrix,
        kind: RepKind,
        meta: RepMeta,
    ) -> Result<Self> {
        let xs = x.as_matrix().real_diagonal().ok_or(Error::NotDiagonal)?;
        Self::new(params, &xs, y, kind, meta)
    }

    pub fn params(&self) -> &SurfaceParams {
        &self.params
    }

    pub fn x(&self) -> &HermitianMatrix {
        &self.x
    }

    pub fn y(&self) -> &HermitianMatrix {
        &self.y
    }

    pub fn z(&self) -> &HermitianMatrix {
        &self.z
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn meta(&self) -> &RepMeta {
        &self.meta
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn x_diag(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.x.get(i, i).re).collect()
    }

    pub fn residuals(&self) -> Result<ResidualReport> {
        relation_residuals(&self.params, &self.x, &self.y, &self.z)
    }

    /// Sparsity graph of `Y` with the default relative cutoff.
    pub fn graph(&self) -> MatrixGraph {
        crate::graphs::graph_of_default(&self.y)
    }
}

/// `||Z|| <= tol * max(1, ||Y|| ||X||)`.
pub fn is_degenerate(rep: &Representation, tol: f64) -> bool {
    let scale = (rep.y.frobenius_norm() * rep.x.frobenius_norm()).max(1.0);
    rep.z.frobenius_norm() <= tol * scale
}

fn herm(m: ComplexMatrix) -> Result<HermitianMatrix> {
    HermitianMatrix::new(m)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// The one-dimensional representation at `x`: `y = sqrt(-p(x))` when
/// `p(x) <= 0`, otherwise `y = 0` provided `x` is a critical point of `p`.
pub fn one_dim_rep_at(params: &SurfaceParams, x: f64) -> Result<Representation> {
    let p = params.p_at(x);
    let y = if p <= 0.0 {
        (-p).sqrt()
    } else {
        let dp = params.dp_at(x);
        let scale =
            params.dp().max_abs_coeff() * x.abs().max(1.0).powi(params.dp().degree().unwrap_or(0) as i32);
        if dp.abs() > DEFAULT_TOL * scale.max(1.0) {
            return Err(Error::Constraint(format!(
                "no one-dimensional representation at x = {x}: p(x) > 0 and p'(x) != 0"
            )));
        }
        0.0
    };
    Representation::new(
        params.clone(),
        &[x],
        HermitianMatrix::from_real_diag(&[y]),
        RepKind::OneDim,
        RepMeta {
            x_hat: Some(x),
            thetas: Vec::new(),
            y_sign: Some(1),
        },
    )
}

/// Catalogue of one-dimensional representations at the integer points
/// `0..=g` and at every real root of `p` and `p'` in `[-g-1, g+1]`.
pub fn one_dim_reps(params: &SurfaceParams) -> Result<Vec<Representation>> {
    let g = params.g() as f64;
    let (lo, hi) = (-g - 1.0, g + 1.0);
    let mut xs: Vec<f64> = (0..=params.g()).map(f64::from).collect();
    for poly in [params.p(), params.dp()] {
        for r in rootfind::real_roots(poly, lo, hi, rootfind::DEFAULT_TOL)? {
            xs.push(r.value);
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    let roots_of_p: Vec<f64> = rootfind::real_roots(params.p(), lo, hi, rootfind::DEFAULT_TOL)?
        .into_iter()
        .map(|r| r.value)
        .collect();
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        if roots_of_p
            .iter()
            .any(|r| (r - x).abs() <= 1e-12 * x.abs().max(1.0))
        {
            // y = 0 up to the rounding of p at its own root.
            out.push(Representation::new(
                params.clone(),
                &[x],
                HermitianMatrix::zeros(1),
                RepKind::OneDim,
                RepMeta {
                    x_hat: Some(x),
                    thetas: Vec::new(),
                    y_sign: Some(1),
                },
            )?);
            continue;
        }
        if let Ok(rep) = one_dim_rep_at(params, x) {
            out.push(rep);
        }
    }
    Ok(out)
}

/// Simple positive roots of `2p(x) + x p'(x) - 4x^2/hbar^2`, ascending.
pub fn type_i_roots(params: &SurfaceParams) -> Result<Vec<f64>> {
    Ok(type_i_brackets(params, 0.0)?
        .into_iter()
        .filter_map(|b| refine_type_i(params, &b).ok())
        .filter(|&x| x > 0.0)
        .collect())
}

/// Sign-change brackets in `x > lo` for the Type I polynomial, found on
/// its even part in `t = x^2`.
fn type_i_brackets(params: &SurfaceParams, lo: f64) -> Result<Vec<Bracket>> {
    let f = f_type_i(params);
    let ft = f.even_part_in_square();
    let t_hi = ft.fujiwara_bound().max(1.0) * 1.5 + lo * lo;
    let f_x = |x: f64| f.eval(x);
    let mut out = Vec::new();
    for b in rootfind::isolate_real_roots(&ft, lo * lo, t_hi)? {
        if b.multiple || !b.has_sign_change() || b.hi <= lo * lo {
            continue;
        }
        let (xl, xh) = (b.lo.max(0.0).sqrt(), b.hi.sqrt());
        if let Ok(bx) = Bracket::new(xl.max(lo), xh, f_x) {
            out.push(bx);
        }
    }
    Ok(out)
}

fn refine_type_i(params: &SurfaceParams, b: &Bracket) -> Result<f64> {
    let f = f_type_i(params);
    rootfind::refine(b, |x| f.eval(x), rootfind::DEFAULT_TOL)
}

/// Type I representation at the smallest simple root above `g - 1`.
pub fn construct_type_i(params: &SurfaceParams, theta: f64) -> Result<Representation> {
    let lo = f64::from(params.g() - 1);
    let brackets = type_i_brackets(params, lo)?;
    let Some(b) = brackets.first() else {
        let msg = format!(
            "no real root of 2p(x) + x p'(x) - 4x^2/hbar^2 above {lo} (g = {}, hbar = {})",
            params.g(),
            params.hbar()
        );
        return Err(if params.g() >= 2 {
            Error::Existence(msg)
        } else {
            Error::Domain(msg)
        });
    };
    let x_hat = refine_type_i(params, b)?;
    construct_type_i_at(params, x_hat, theta)
}

/// Type I representation at a given root `x_hat` (either sign).
///
/// `X = diag(x_hat, -x_hat)` and `Y` has off-diagonal entry
/// `z = e^{i theta} sqrt(2 x_hat^2 - hbar^2 p(x_hat)) / hbar`.
pub fn construct_type_i_at(params: &SurfaceParams, x_hat: f64, theta: f64) -> Result<Representation> {
    if x_hat == 0.0 || !x_hat.is_finite() {
        return Err(Error::Constraint("x_hat must be finite and nonzero".into()));
    }
    let h = params.hbar();
    let f = f_type_i(params);
    let scale = f
        .coeffs()
        .iter()
        .enumerate()
        .fold(1.0_f64, |m, (k, a)| m.max((a * x_hat.powi(k as i32)).abs()));
    if f.eval(x_hat).abs() > DEFAULT_TOL * scale {
        return Err(Error::Constraint(format!(
            "2p(x_hat) + x_hat p'(x_hat) - 4 x_hat^2/hbar^2 = 0 fails at x_hat = {x_hat}"
        )));
    }
    let radicand = 2.0 * x_hat * x_hat - h * h * params.p_at(x_hat);
    if !(radicand > 0.0) {
        return Err(Error::Constraint(format!(
            "2 x_hat^2 - hbar^2 p(x_hat) > 0 fails ({radicand})"
        )));
    }
    let z = Complex64::from_polar(radicand.sqrt() / h, theta);
    let y = herm(ComplexMatrix::from_rows(vec![
        vec![zero(), z],
        vec![z.conj(), zero()],
    ])?)?;
    Representation::new(
        params.clone(),
        &[x_hat, -x_hat],
        y,
        RepKind::TypeI,
        RepMeta {
            x_hat: Some(x_hat),
            thetas: vec![theta],
            y_sign: None,
        },
    )
}

/// `hbar = sqrt(-2 x_hat / p'(x_hat))` after checking the Type II gates.
fn type_ii_hbar(params: &SurfaceParams, x_hat: f64) -> Result<f64> {
    if x_hat == 0.0 || !x_hat.is_finite() {
        return Err(Error::Constraint("x_hat must be finite and nonzero".into()));
    }
    let (p, dp) = (params.p_at(x_hat), params.dp_at(x_hat));
    if !(x_hat * dp < 0.0) {
        return Err(Error::Constraint(format!(
            "x_hat p'(x_hat) < 0 fails (p'({x_hat}) = {dp})"
        )));
    }
    let gap = 2.0 * p - x_hat * dp;
    if !(gap < 0.0) {
        return Err(Error::Constraint(format!(
            "2p(x_hat) - x_hat p'(x_hat) < 0 fails ({gap})"
        )));
    }
    Ok((-2.0 * x_hat / dp).sqrt())
}

/// Type II representation with `hbar` derived from `x_hat`.
///
/// Requires `x_hat p'(x_hat) < 0` (for positive `x_hat` this is
/// `p'(x_hat) < 0`) and `2p(x_hat) - x_hat p'(x_hat) < 0`. Returns the
/// derived `hbar` with the representation.
pub fn construct_type_ii(
    g: u32,
    alpha: f64,
    c: f64,
    x_hat: f64,
    theta: f64,
    sign: i8,
) -> Result<(f64, Representation)> {
    let probe = SurfaceParams::new(g, alpha, c, 1.0)?;
    let h = type_ii_hbar(&probe, x_hat)?;
    let params = probe.with_hbar(h)?;
    let rep = build_type_ii(&params, x_hat, theta, sign)?;
    Ok((h, rep))
}

/// Type II representation for given `hbar`; `x_hat` must satisfy
/// `2 x_hat + hbar^2 p'(x_hat) = 0` to `DEFAULT_TOL`.
pub fn construct_type_ii_at(
    params: &SurfaceParams,
    x_hat: f64,
    theta: f64,
    sign: i8,
) -> Result<Representation> {
    let h = type_ii_hbar(params, x_hat)?;
    if (h - params.hbar()).abs() > DEFAULT_TOL * params.hbar() {
        return Err(Error::Constraint(format!(
            "2 x_hat + hbar^2 p'(x_hat) = 0 fails: x_hat = {x_hat} requires hbar = {h}"
        )));
    }
    build_type_ii(params, x_hat, theta, sign)
}

fn build_type_ii(params: &SurfaceParams, x_hat: f64, theta: f64, sign: i8) -> Result<Representation> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!(
            "sign must be +1 or -1, got {sign}"
        )));
    }
    let h = params.hbar();
    let (x2, hp) = (x_hat * x_hat, h * h * params.p_at(x_hat));
    let (ry, rz) = (3.0 * x2 - hp, -x2 - hp);
    if !(ry > 0.0) {
        return Err(Error::Constraint(format!(
            "3 x_hat^2 - hbar^2 p(x_hat) > 0 fails ({ry})"
        )));
    }
    if !(rz > 0.0) {
        return Err(Error::Constraint(format!(
            "-x_hat^2 - hbar^2 p(x_hat) > 0 fails ({rz})"
        )));
    }
    let y = f64::from(sign) * ry.sqrt() / (2.0 * h);
    let z = Complex64::from_polar(rz.sqrt() / (2.0 * h), theta);
    let yd = Complex64::new(y, 0.0);
    let ym = herm(ComplexMatrix::from_rows(vec![vec![yd, z], vec![z.conj(), yd]])?)?;
    Representation::new(
        params.clone(),
        &[x_hat, -x_hat],
        ym,
        RepKind::TypeII,
        RepMeta {
            x_hat: Some(x_hat),
            thetas: vec![theta],
            y_sign: Some(sign),
        },
    )
}

/// Positive `x_hat` admitting a Type II representation at the given `hbar`:
/// roots of `2x + hbar^2 p'(x)` passing both gates, ascending.
pub fn type_ii_points(params: &SurfaceParams) -> Result<Vec<f64>> {
    let h2 = params.hbar() * params.hbar();
    // (2x + hbar^2 p'(x)) / x is even; solve it in t = x^2.
    let dp_over_x = RealPolynomial::new(params.dp().coeffs()[1..].to_vec());
    let q = &RealPolynomial::constant(2.0) + &dp_over_x.scale(h2);
    let qt = q.even_part_in_square();
    let t_hi = qt.fujiwara_bound().max(1.0) * 1.5;
    let mut out = Vec::new();
    for r in rootfind::real_roots(&qt, 0.0, t_hi, rootfind::DEFAULT_TOL)? {
        if r.multiple || r.value <= 0.0 {
            continue;
        }
        let x = r.value.sqrt();
        if type_ii_hbar(params, x).is_ok() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Positive roots `u = 1/hbar^2` of the three-dimensional condition at `x`.
fn three_d_u_roots(params: &SurfaceParams, x: f64) -> Result<Vec<f64>> {
    let q = RealPolynomial::new(f_3d_in_u(params, x).to_vec());
    let hi = q.fujiwara_bound().max(1.0) * 1.5;
    Ok(rootfind::real_roots(&q, 0.0, hi, rootfind::DEFAULT_TOL)?
        .into_iter()
        .filter(|r| !r.multiple && r.value > 0.0)
        .map(|r| r.value)
        .collect())
}

/// Three-dimensional string representation at `x_hat = g - 1`, with `hbar`
/// derived from the condition, which is quadratic in `u = 1/hbar^2`.
pub fn construct_3d_string(
    g: u32,
    alpha: f64,
    c: f64,
    theta1: f64,
    theta2: f64,
) -> Result<(f64, Representation)> {
    if g < 2 {
        return Err(Error::Domain(format!(
            "the three-dimensional string needs g >= 2, got {g}"
        )));
    }
    let probe = SurfaceParams::new(g, alpha, c, 1.0)?;
    let x_hat = f64::from(g - 1);
    let us = three_d_u_roots(&probe, x_hat)?;
    if us.is_empty() {
        return Err(Error::Existence(format!(
            "no positive root u = 1/hbar^2 of the three-dimensional condition at x = {x_hat}"
        )));
    }
    let mut last_err = None;
    for u in us {
        let params = probe.with_hbar(1.0 / u.sqrt())?;
        match build_3d(&params, x_hat, theta1, theta2) {
            Ok(rep) => return Ok((params.hbar(), rep)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Existence("no admissible hbar".into())))
}

/// Three-dimensional string representation at an arbitrary `x_hat` and the
/// given `hbar`; the full condition and both positivity gates are checked.
pub fn construct_3d_string_at(
    params: &SurfaceParams,
    x_hat: f64,
    theta1: f64,
    theta2: f64,
) -> Result<Representation> {
    if x_hat == 0.0 || !x_hat.is_finite() {
        return Err(Error::Constraint("x_hat must be finite and nonzero".into()));
    }
    let [c0, c1, c2] = f_3d_in_u(params, x_hat);
    let u = 1.0 / (params.hbar() * params.hbar());
    let scale = c0.abs().max((c1 * u).abs()).max((c2 * u * u).abs()).max(1e-300);
    let f = f_3d(params, x_hat);
    if f.abs() > DEFAULT_TOL * scale {
        return Err(Error::Constraint(format!(
            "three-dimensional condition f(x_hat) = 0 fails at x_hat = {x_hat} ({f})"
        )));
    }
    build_3d(params, x_hat, theta1, theta2)
}

fn build_3d(params: &SurfaceParams, x_hat: f64, theta1: f64, theta2: f64) -> Result<Representation> {
    let r = r_3d(params, x_hat);
    if !(r > 0.0) {
        return Err(Error::Constraint(format!(
            "x_hat^2/(4 hbar^2) - (p(0) + p(x_hat))/4 > 0 fails ({r})"
        )));
    }
    let h = params.hbar();
    let rad = x_hat * x_hat - h * h * (params.p_at(x_hat) + params.p_at(0.0));
    if !(rad > 0.0) {
        return Err(Error::Constraint(format!(
            "x_hat^2 - hbar^2 (p(x_hat) + p(0)) > 0 fails ({rad})"
        )));
    }
    let m = rad.sqrt() / (2.0 * h);
    let z1 = Complex64::from_polar(m, theta1);
    let z2 = Complex64::from_polar(m, theta2);
    let y = herm(ComplexMatrix::from_rows(vec![
        vec![zero(), z1, z2],
        vec![z1.conj(), zero(), zero()],
        vec![z2.conj(), zero(), zero()],
    ])?)?;
    Representation::new(
        params.clone(),
        &[0.0, x_hat, -x_hat],
        y,
        RepKind::ThreeDimString,
        RepMeta {
            x_hat: Some(x_hat),
            thetas: vec![theta1, theta2],
            y_sign: None,
        },
    )
}

/// Block-diagonal sum of two representations of the same algebra.
pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.params != b.params {
        return Err(Error::IncompatibleParams(
            "direct sum of different algebras".into(),
        ));
    }
    let (na, n) = (a.dim(), a.dim() + b.dim());
    let y = ComplexMatrix::from_fn(n, |i, j| match (i < na, j < na) {
        (true, true) => a.y.get(i, j),
        (false, false) => b.y.get(i - na, j - na),
        _ => zero(),
    });
    let xs: Vec<f64> = a.x_diag().into_iter().chain(b.x_diag()).collect();
    Representation::new(
        a.params.clone(),
        &xs,
        herm(y)?,
        RepKind::Custom,
        RepMeta::default(),
    )
}

/// Carries a representation of `C^g_hbar(alpha, c)` to the algebra with
/// `(alpha2, c2)`, which must have the same ratio `alpha / sqrt(c)`.
///
/// With `lambda = sqrt(alpha / alpha2)`: `hbar2 = lambda hbar`, `X` is kept,
/// `Y -> Y / lambda`, and so `Z -> Z / lambda^2`.
pub fn transport(rep: &Representation, alpha2: f64, c2: f64) -> Result<Representation> {
    let p1 = &rep.params;
    if !(alpha2 > 0.0 && c2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha2 = {alpha2} and c2 = {c2} must be positive"
        )));
    }
    let (r1, r2) = (p1.ratio(), alpha2 / c2.sqrt());
    if (r1 - r2).abs() > 1e-12 * r1.abs().max(r2.abs()) {
        return Err(Error::IncompatibleParams(format!(
            "alpha/sqrt(c) differs: {r1} vs {r2}"
        )));
    }
    let lambda = (p1.alpha() / alpha2).sqrt();
    let params = SurfaceParams::new(p1.g(), alpha2, c2, p1.hbar() * lambda)?;
    let y = HermitianMatrix::new(rep.y.as_matrix().scale_real(1.0 / lambda))?;
    Representation::new(params, &rep.x_diag(), y, rep.kind, rep.meta.clone())
}

/// Irreducibility verdict from the graph and the spectrum of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Undetermined,
}

impl std::fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Irreducibility::Irreducible => "irreducible",
            Irreducibility::Reducible => "reducible",
            Irreducibility::Undetermined => "undetermined",
        })
    }
}

fn distinct(xs: &[f64], tol: f64) -> bool {
    let scale = xs.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| (a - b).abs() > tol * scale))
}

/// Matches a representation against the known families and decides
/// reducibility where the graph criterion applies.
///
/// A named family is reported only when the relations hold to `tol` and
/// the graph and the recovered parameters fit the family.
pub fn classify(rep: &Representation, tol: f64) -> Result<(RepKind, Irreducibility)> {
    let xs = rep.x.as_matrix().real_diagonal().ok_or(Error::NotDiagonal)?;
    let g = graph_of(&rep.y, tol * rep.y.as_matrix().max_abs());
    let irr = if !g.is_connected() {
        Irreducibility::Reducible
    } else if distinct(&xs, tol) {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Undetermined
    };
    let satisfied = rep.residuals()?.within(tol);
    let kind = if !satisfied {
        RepKind::Custom
    } else {
        match xs.len() {
            1 => RepKind::OneDim,
            2 => classify_2d(rep, &xs, &g, tol),
            3 => classify_3d(rep, &xs, &g, tol),
            _ => RepKind::Custom,
        }
    };
    Ok((kind, irr))
}

fn classify_2d(rep: &Representation, xs: &[f64], g: &MatrixGraph, tol: f64) -> RepKind {
    let x = xs[0];
    if x == 0.0 || (xs[0] + xs[1]).abs() > tol * x.abs() {
        return RepKind::Custom;
    }
    let params = &rep.params;
    match TwoVertexShape::of(g) {
        TwoVertexShape::TypeI => {
            let f = f_type_i(params);
            let scale = f.max_abs_coeff() * x.abs().max(1.0).powi(f.degree().unwrap_or(0) as i32);
            if f.eval(x).abs() <= tol * scale {
                RepKind::TypeI
            } else {
                RepKind::Custom
            }
        }
        TwoVertexShape::TypeII => {
            let same_diag = (rep.y.get(0, 0) - rep.y.get(1, 1)).norm() <= tol * rep.y.as_matrix().max_abs();
            let h2 = params.hbar() * params.hbar();
            let cond = 2.0 * x + h2 * params.dp_at(x);
            let scale = (2.0 * x).abs().max((h2 * params.dp_at(x)).abs());
            if same_diag && cond.abs() <= tol * scale {
                RepKind::TypeII
            } else {
                RepKind::Custom
            }
        }
        _ => RepKind::Custom,
    }
}

fn classify_3d(rep: &Representation, xs: &[f64], g: &MatrixGraph, tol: f64) -> RepKind {
    let Some(center) = xs.iter().position(|&x| x == 0.0) else {
        return RepKind::Custom;
    };
    let leaves: Vec<usize> = (0..3).filter(|&i| i != center).collect();
    let (a, b) = (leaves[0], leaves[1]);
    let x = xs[a];
    let is_star = g.loop_count() == 0 && g.has_edge(center, a) && g.has_edge(center, b) && !g.has_edge(a, b);
    let mirrored = x != 0.0 && (x + xs[b]).abs() <= tol * x.abs();
    let same_mod = (rep.y.get(center, a).norm() - rep.y.get(center, b).norm()).abs()
        <= tol * rep.y.as_matrix().max_abs();
    if is_star && mirrored && same_mod {
        RepKind::ThreeDimString
    } else {
        RepKind::Custom
    }
}

/// Phases in `[0, 2 pi)`, used to normalize user input.
pub fn wrap_phase(theta: f64) -> f64 {
    theta.rem_euclid(2.0 * PI)
}
