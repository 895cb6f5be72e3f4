//! The defining polynomials of the genus-g level-set surfaces and the scalar
//! kernels that appear in the matrix-element equations.
//!
//! With `G(t) = prod_{k=1..g} (t - k^2)` and `M = max_{0 <= t <= g^2+1} G(t)`,
//! the surface is the zero set of
//! `C(x, y, z) = (p(x) + y^2)^2 / 2 + z^2 / 2 - c / 2`, where
//! `p(x) = alpha * G(x^2) - sqrt(c)` and `0 < alpha < 2 sqrt(c) / M`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::rootfind;

/// Validated parameters `(g, alpha, c, hbar)` of the algebra.
///
/// The defining polynomial `p` and its derivative are cached at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SurfaceParams {
    g: u32,
    alpha: f64,
    c: f64,
    hbar: f64,
    p: RealPolynomial,
    dp: RealPolynomial,
}

/// Plain, unvalidated parameter record (the JSON shape).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub g: u32,
    pub alpha: f64,
    pub c: f64,
    pub hbar: f64,
}

impl TryFrom<RawParams> for SurfaceParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        SurfaceParams::new(r.g, r.alpha, r.c, r.hbar)
    }
}

impl From<SurfaceParams> for RawParams {
    fn from(p: SurfaceParams) -> Self {
        p.raw()
    }
}

impl SurfaceParams {
    /// Validates `g >= 1`, `c > 0`, `hbar > 0` and `0 < alpha < 2 sqrt(c) / M(g)`.
    pub fn new(g: u32, alpha: f64, c: f64, hbar: f64) -> Result<Self> {
        validate_family(g, alpha, c)?;
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar = {hbar} must be positive")));
        }
        let p = build_p(g, alpha, c)?;
        let dp = p.derivative();
        Ok(Self {
            g,
            alpha,
            c,
            hbar,
            p,
            dp,
        })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn raw(&self) -> RawParams {
        RawParams {
            g: self.g,
            alpha: self.alpha,
            c: self.c,
            hbar: self.hbar,
        }
    }

    /// The same surface with a different deformation parameter.
    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar = {hbar} must be positive")));
        }
        Ok(Self { hbar, ..self.clone() })
    }

    /// `p(x)`.
    pub fn p(&self) -> &RealPolynomial {
        &self.p
    }

    /// `p'(x)`.
    pub fn dp(&self) -> &RealPolynomial {
        &self.dp
    }

    pub fn p_at(&self, x: f64) -> f64 {
        self.p.eval(x)
    }

    pub fn dp_at(&self, x: f64) -> f64 {
        self.dp.eval(x)
    }

    /// `alpha / sqrt(c)`, the essential parameter up to rescaling of hbar.
    pub fn ratio(&self) -> f64 {
        self.alpha / self.c.sqrt()
    }
}

/// Checks the family parameters `(g, alpha, c)` without a deformation parameter.
pub fn validate_family(g: u32, alpha: f64, c: f64) -> Result<()> {
    if g < 1 {
        return Err(Error::InvalidGenus(g as i64));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    let upper = alpha_upper_bound(g, c)?;
    if !(alpha > 0.0 && alpha < upper) {
        return Err(Error::AlphaOutOfRange { alpha, upper });
    }
    Ok(())
}

/// `2 sqrt(c) / M(g)`, the supremum of admissible `alpha`.
pub fn alpha_upper_bound(g: u32, c: f64) -> Result<f64> {
    Ok(2.0 * c.sqrt() / max_g(g)?)
}

/// `G(t) = prod_{k=1..g} (t - k^2)`.
pub fn build_g(g: u32) -> Result<RealPolynomial> {
    if g < 1 {
        return Err(Error::InvalidGenus(g as i64));
    }
    let squares: Vec<f64> = (1..=g).map(|k| (k * k) as f64).collect();
    Ok(RealPolynomial::from_roots(&squares))
}

/// `G(t)` evaluated exactly at an integer point.
pub fn g_exact(g: u32, t: i64) -> BigInt {
    (1..=g as i64).fold(BigInt::one(), |acc, k| acc * BigInt::from(t - k * k))
}

/// `M = max_{0 <= t <= g^2+1} G(t)`, from the endpoints and every critical
/// point of `G` inside the interval.
pub fn max_g(g: u32) -> Result<f64> {
    let poly = build_g(g)?;
    let hi = (g * g + 1) as f64;
    let mut best = poly.eval(0.0).max(poly.eval(hi));
    let dg = poly.derivative();
    if dg.degree().unwrap_or(0) >= 1 {
        for root in rootfind::real_roots(&dg, 0.0, hi, rootfind::DEFAULT_TOL)? {
            if (0.0..=hi).contains(&root.value) {
                best = best.max(poly.eval(root.value));
            }
        }
    }
    Ok(best)
}

/// `p(x) = alpha G(x^2) - sqrt(c)`. The alpha range is not checked here.
pub fn build_p(g: u32, alpha: f64, c: f64) -> Result<RealPolynomial> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    let gp = build_g(g)?.compose_square().scale(alpha);
    Ok(&gp - &RealPolynomial::constant(c.sqrt()))
}

/// Closed form `p'(k) = (-1)^(g-k) alpha (g+k)! (g-k)! / k` for `k = 1..g`.
pub fn dp_at_integer(g: u32, alpha: f64, k: u32) -> Result<f64> {
    if k < 1 || k > g {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..={g}")));
    }
    let num = factorial(g + k) * factorial(g - k);
    let value = alpha * num.to_f64().unwrap_or(f64::INFINITY) / k as f64;
    Ok(if (g - k) % 2 == 1 { -value } else { value })
}

/// `n!` in arbitrary precision.
pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Symbol of the symmetric ordering: `(p'(x) + p'(y)) / 2`.
pub fn p_hat(params: &SurfaceParams, x: f64, y: f64) -> f64 {
    0.5 * (params.dp_at(x) + params.dp_at(y))
}

/// `q(x, y) = x + y - hbar^2 p_hat(x, y)`.
pub fn q_h(params: &SurfaceParams, x: f64, y: f64) -> f64 {
    let h2 = params.hbar * params.hbar;
    x + y - h2 * p_hat(params, x, y)
}

/// `r(x, y) = (x - y)^2 - hbar^2 (p(x) + p(y))`.
pub fn r_h_pair(params: &SurfaceParams, x: f64, y: f64) -> f64 {
    let h2 = params.hbar * params.hbar;
    (x - y).powi(2) - h2 * (params.p_at(x) + params.p_at(y))
}

/// `2 p(x) + x p'(x) - 4 x^2 / hbar^2`, whose roots give the two-dimensional
/// representations with off-diagonal `Y`.
pub fn f_type_i(params: &SurfaceParams) -> RealPolynomial {
    let two_p = params.p.scale(2.0);
    let x_dp = &RealPolynomial::x() * &params.dp;
    let quad = RealPolynomial::new(vec![0.0, 0.0, -4.0 / (params.hbar * params.hbar)]);
    &(&two_p + &x_dp) + &quad
}

/// `(2x/hbar^2 - p'(x)) (x^2/hbar^2 - p(0) - p(x)) - 4 p(x) p'(x)`.
pub fn f_3d(params: &SurfaceParams, x: f64) -> f64 {
    let u = 1.0 / (params.hbar * params.hbar);
    let (p, dp, p0) = (params.p_at(x), params.dp_at(x), params.p_at(0.0));
    (2.0 * x * u - dp) * (x * x * u - p0 - p) - 4.0 * p * dp
}

/// Coefficients `[c0, c1, c2]` of `f_3d` as a quadratic in `u = 1/hbar^2`:
/// `2x^3 u^2 - (2x (p(0) + p(x)) + x^2 p'(x)) u + p'(x) (p(0) - 3 p(x))`.
pub fn f_3d_in_u(params: &SurfaceParams, x: f64) -> [f64; 3] {
    let (p, dp, p0) = (params.p_at(x), params.dp_at(x), params.p_at(0.0));
    [
        dp * (p0 - 3.0 * p),
        -(2.0 * x * (p0 + p) + x * x * dp),
        2.0 * x.powi(3),
    ]
}

/// `x^2 / (4 hbar^2) - (p(0) + p(x)) / 4`.
pub fn r_3d(params: &SurfaceParams, x: f64) -> f64 {
    let h2 = params.hbar * params.hbar;
    x * x / (4.0 * h2) - 0.25 * (params.p_at(0.0) + params.p_at(x))
}

/// `C(x, y, z) = (p(x) + y^2)^2 / 2 + z^2 / 2 - c / 2`.
pub fn level_set_c(params: &SurfaceParams, x: f64, y: f64, z: f64) -> f64 {
    let s = params.p_at(x) + y * y;
    0.5 * s * s + 0.5 * z * z - 0.5 * params.c
}

/// Lower bounds on `M` together with the computed maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MBoundsReport {
    pub g: u32,
    pub m: f64,
    /// `G(g^2 + 1)`, exact.
    #[serde(serialize_with = "as_decimal")]
    pub g_at_endpoint: BigInt,
    /// `(2g - 1)! / g`, exact.
    #[serde(serialize_with = "as_decimal")]
    pub factorial_bound: BigUint,
    /// `(g!)^2`, exact.
    #[serde(serialize_with = "as_decimal")]
    pub square_bound: BigUint,
    pub holds_factorial: bool,
    pub holds_square: bool,
}

fn as_decimal<S: serde::Serializer, T: std::fmt::Display>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn check_m_bounds(g: u32) -> Result<MBoundsReport> {
    let m = max_g(g)?;
    let endpoint = g_exact(g, (g * g + 1) as i64);
    let factorial_bound = factorial(2 * g - 1) / g;
    let square_bound = factorial(g).pow(2);
    let holds = |bound: &BigUint| {
        let b = BigInt::from(bound.clone());
        // M >= G(g^2+1) by definition, so an exact endpoint comparison suffices
        // when it succeeds; otherwise compare the numeric maximum.
        endpoint >= b || m >= bound.to_f64().unwrap_or(f64::INFINITY)
    };
    Ok(MBoundsReport {
        g,
        m,
        holds_factorial: holds(&factorial_bound),
        holds_square: holds(&square_bound),
        g_at_endpoint: endpoint,
        factorial_bound,
        square_bound,
    })
}

/// The two inequalities `p(0) + 3 sqrt(c) > 0` and `p(0) - sqrt(c) < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PZeroReport {
    pub p0: f64,
    /// `(-1)^g alpha (g!)^2 - sqrt(c)`.
    pub p0_closed_form: f64,
    /// `p(0) + 3 sqrt(c)`; must be positive.
    pub upper_margin: f64,
    /// `sqrt(c) - p(0)`; must be positive.
    pub lower_margin: f64,
    pub holds: bool,
}

pub fn check_p_zero(params: &SurfaceParams) -> PZeroReport {
    let sc = params.c.sqrt();
    let p0 = params.p_at(0.0);
    let g_fact_sq = factorial(params.g).pow(2).to_f64().unwrap_or(f64::INFINITY);
    let sign = if params.g.is_multiple_of(2) { 1.0 } else { -1.0 };
    let upper_margin = p0 + 3.0 * sc;
    let lower_margin = sc - p0;
    PZeroReport {
        p0,
        p0_closed_form: sign * params.alpha * g_fact_sq - sc,
        upper_margin,
        lower_margin,
        holds: upper_margin > 0.0 && lower_margin > 0.0,
    }
}
