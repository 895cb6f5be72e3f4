//! Real-root isolation by Sturm sequences and bracketed refinement.
//!
//! Isolation counts distinct roots with a Sturm chain and splits intervals
//! by bisection until every piece holds a single root. The chain is built in
//! floating point; every member is rescaled to unit max-coefficient and
//! division residue below a relative threshold is treated as zero. When the
//! chain's counts contradict a dense sign scan (cancellation), isolation
//! falls back to the sign scan.

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;

/// Default absolute tolerance on bracket width.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_REFINE_ITER: usize = 400;
const REMAINDER_REL_TOL: f64 = 1e-10;

/// An interval known to contain one real root.
///
/// For a simple root (`multiple == false`) the endpoint values have strictly
/// opposite signs. A bracket flagged `multiple` encloses a root shared with
/// the derivative; for even multiplicity its endpoint values have the same
/// sign and it cannot be refined by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub multiple: bool,
}

impl Bracket {
    /// Builds a sign-change bracket for `f` on `[lo, hi]`.
    pub fn new(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::DegenerateInterval { lo, hi });
        }
        let (f_lo, f_hi) = (f(lo), f(hi));
        if !(f_lo * f_hi < 0.0) {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Self {
            lo,
            hi,
            f_lo,
            f_hi,
            multiple: false,
        })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn has_sign_change(&self) -> bool {
        self.f_lo * self.f_hi < 0.0
    }
}

/// Sturm chain of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<RealPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &RealPolynomial) -> Self {
        let mut chain = vec![normalize(p)];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(normalize(&d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1], REMAINDER_REL_TOL);
            if r.is_zero() {
                break;
            }
            chain.push(-normalize(&r));
        }
        Self { chain }
    }

    /// The last chain member when it is not constant: a scalar multiple of
    /// `gcd(p, p')`, whose roots are the multiple roots of `p`.
    pub fn gcd_part(&self) -> Option<&RealPolynomial> {
        let last = self.chain.last()?;
        (self.chain.len() >= 2 && last.degree().unwrap_or(0) >= 1).then_some(last)
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of sign changes of the chain evaluated at `x` (zeros skipped).
    pub fn variations(&self, x: f64) -> usize {
        let mut count = 0;
        let mut last = 0.0_f64;
        for q in &self.chain {
            let v = q.eval(x);
            if v == 0.0 {
                continue;
            }
            if last != 0.0 && (v < 0.0) != (last < 0.0) {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`; negative values signal
    /// floating-point breakdown of the chain.
    pub fn count(&self, a: f64, b: f64) -> i64 {
        self.variations(a) as i64 - self.variations(b) as i64
    }
}

fn normalize(p: &RealPolynomial) -> RealPolynomial {
    let m = p.max_abs_coeff();
    if m == 0.0 {
        p.clone()
    } else {
        p.scale(1.0 / m)
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Counts sign changes of `p` on a uniform grid of `steps` cells over `[lo, hi]`.
pub fn sign_scan_count(p: &RealPolynomial, lo: f64, hi: f64, steps: usize) -> usize {
    sign_scan_brackets(p, lo, hi, steps).len()
}

fn sign_scan_brackets(p: &RealPolynomial, lo: f64, hi: f64, steps: usize) -> Vec<Bracket> {
    let h = (hi - lo) / steps as f64;
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = p.eval(a);
    for i in 1..=steps {
        let b = if i == steps { hi } else { lo + h * i as f64 };
        let fb = p.eval(b);
        // Grid points where p vanishes exactly are skipped over.
        if fb == 0.0 {
            continue;
        }
        if fa != 0.0 && sign(fa) != sign(fb) {
            out.push(Bracket {
                lo: a,
                hi: b,
                f_lo: fa,
                f_hi: fb,
                multiple: false,
            });
        }
        a = b;
        fa = fb;
    }
    out
}

/// Isolates every distinct real root of `p` in `[lo, hi]`.
///
/// Returns disjoint brackets sorted by position. Roots shared with `p'` are
/// flagged `multiple`.
pub fn isolate_real_roots(p: &RealPolynomial, lo: f64, hi: f64) -> Result<Vec<Bracket>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::DegenerateInterval { lo, hi });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }

    // Roots sitting exactly on an endpoint are pulled inside by widening.
    let nudge = |x: f64| 1e-12 * (1.0 + x.abs());
    let lo = if p.eval(lo) == 0.0 { lo - nudge(lo) } else { lo };
    let hi = if p.eval(hi) == 0.0 { hi + nudge(hi) } else { hi };

    let sturm = SturmSequence::new(p);
    let multi = sturm.gcd_part().map(SturmSequence::new);
    let total = sturm.count(lo, hi);

    let deg = p.degree().unwrap_or(0);
    let scan = sign_scan_count(p, lo, hi, 64 * (deg + 1));
    if total < 0 || (total as usize) < scan {
        return Ok(sign_scan_brackets(p, lo, hi, 4096 * (deg + 1))
            .into_iter()
            .map(|b| flag_multiplicity(multi.as_ref(), b))
            .collect());
    }

    let min_width = 1e-13 * (1.0 + lo.abs().max(hi.abs()));
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n <= 0 {
            continue;
        }
        if n == 1 || b - a <= min_width {
            out.push(finalize(p, &sturm, multi.as_ref(), a, b, n > 1));
            continue;
        }
        let mut mid = 0.5 * (a + b);
        if p.eval(mid) == 0.0 {
            mid += 1e-3 * (b - a);
        }
        let left = sturm.count(a, mid);
        let right = n - left;
        stack.push((mid, b, right));
        stack.push((a, mid, left));
    }
    out.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    Ok(out)
}

fn finalize(
    p: &RealPolynomial,
    sturm: &SturmSequence,
    multi: Option<&SturmSequence>,
    a: f64,
    b: f64,
    cluster: bool,
) -> Bracket {
    let bracket = Bracket {
        lo: a,
        hi: b,
        f_lo: p.eval(a),
        f_hi: p.eval(b),
        multiple: cluster,
    };
    if cluster {
        return bracket;
    }
    if bracket.has_sign_change() {
        return flag_multiplicity(multi, bracket);
    }
    // One root without a sign change: even multiplicity. Shrink it.
    let (mut lo, mut hi) = (a, b);
    let tol = 1e-10 * (1.0 + a.abs().max(b.abs()));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sturm.count(lo, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Bracket {
        lo,
        hi,
        f_lo: p.eval(lo),
        f_hi: p.eval(hi),
        multiple: true,
    }
}

/// Flags a bracket as multiple when it holds a root of `gcd(p, p')`.
fn flag_multiplicity(multi: Option<&SturmSequence>, b: Bracket) -> Bracket {
    let multiple = b.multiple || multi.is_some_and(|s| s.count(b.lo, b.hi) >= 1);
    Bracket { multiple, ..b }
}

/// Refines a sign-change bracket of `f` until its width is at most `tol`.
///
/// Alternates secant steps with bisection whenever a secant step fails to
/// halve the bracket; iterates never leave the bracket.
pub fn refine(b: &Bracket, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    if !(b.lo < b.hi) {
        return Err(Error::DegenerateInterval { lo: b.lo, hi: b.hi });
    }
    let (mut lo, mut hi) = (b.lo, b.hi);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if sign(flo) == sign(fhi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let mut force_bisect = false;
    for _ in 0..MAX_REFINE_ITER {
        let width = hi - lo;
        let tol_eff = tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs()));
        if width <= tol_eff {
            return Ok(if flo.abs() <= fhi.abs() { lo } else { hi });
        }
        let mut m = hi - fhi * (hi - lo) / (fhi - flo);
        if force_bisect || !(m > lo && m < hi) {
            m = lo + 0.5 * (hi - lo);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if sign(fm) == sign(flo) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
            fhi = fm;
        }
        force_bisect = hi - lo > 0.5 * width;
    }
    Err(Error::NonConvergence(MAX_REFINE_ITER))
}

/// A refined real root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiple: bool,
}

/// Isolates and refines every real root of `p` in `[lo, hi]`.
pub fn real_roots(p: &RealPolynomial, lo: f64, hi: f64, tol: f64) -> Result<Vec<Root>> {
    isolate_real_roots(p, lo, hi)?
        .into_iter()
        .map(|b| {
            let value = if b.has_sign_change() {
                refine(&b, |x| p.eval(x), tol)?
            } else {
                0.5 * (b.lo + b.hi)
            };
            Ok(Root {
                value,
                multiple: b.multiple,
            })
        })
        .collect()
}
