//! Exact points and intervals on the circle `T = [0, 1)`, the rotation
//! `R(x) = {x + alpha}`, orbit coding, and factor intervals `[w]`.
//!
//! Points are linear forms `a + b*alpha` reduced modulo 1. The two
//! endpoint conventions (`0` in `I_0` or not) are explicit parameters
//! everywhere; there is no default.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::contfrac::{LinearForm, SlopeContext};
use crate::error::{Error, Result};
use crate::language::BinaryWord;

/// Selects which endpoint belongs to which coding interval: either
/// `I_0 = [0, 1-alpha)` and `I_1 = [1-alpha, 1)`, or
/// `I_0 = (0, 1-alpha]` and `I_1 = (1-alpha, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointConvention {
    ZeroInI0,
    ZeroNotInI0,
}

impl EndpointConvention {
    pub const BOTH: [EndpointConvention; 2] =
        [EndpointConvention::ZeroInI0, EndpointConvention::ZeroNotInI0];
}

/// A point of the circle: a linear form reduced to `[0, 1)`.
///
/// Two points are equal iff their reduced forms are equal, so equality
/// is decidable without refinement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPoint {
    form: LinearForm,
}

impl TPoint {
    /// Reduces an arbitrary form modulo 1. The subtracted integer part
    /// is certified through the bracket.
    pub fn reduce(ctx: &SlopeContext, form: &LinearForm) -> Result<TPoint> {
        let n = ctx.floor_of(form)?;
        let reduced = form.sub(&LinearForm::from_rational(BigRational::from_integer(n)));
        Ok(TPoint { form: reduced })
    }

    pub fn zero() -> TPoint {
        TPoint { form: LinearForm::zero() }
    }

    /// The point `{n * alpha}` (negative `n` gives `{-|n| alpha}`).
    pub fn alpha_multiple(ctx: &SlopeContext, n: i64) -> Result<TPoint> {
        TPoint::reduce(ctx, &LinearForm::alpha_multiple(n))
    }

    /// The reduced form; its value lies in `[0, 1)`.
    pub fn value(&self) -> &LinearForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// One rotation step `{x + alpha}`.
    pub fn rotate(&self, ctx: &SlopeContext) -> Result<TPoint> {
        let shifted = self.form.add(&LinearForm::alpha_multiple(1));
        // x + alpha lies in (0, 2); it is irrational, so exactly one of
        // the two unit intervals contains it.
        if ctx.sign_of(&shifted.sub(&LinearForm::one()))? < 0 {
            Ok(TPoint { form: shifted })
        } else {
            Ok(TPoint { form: shifted.sub(&LinearForm::one()) })
        }
    }

    /// Adds a small positive rational; the caller guarantees the result
    /// stays below 1.
    pub(crate) fn nudge(&self, eps: &BigRational) -> TPoint {
        TPoint { form: self.form.add_rational(eps) }
    }
}

/// Certified order of two points by their values in `[0, 1)`.
pub fn compare_points(ctx: &SlopeContext, x: &TPoint, y: &TPoint) -> Result<Ordering> {
    ctx.compare(x.value(), y.value())
}

/// A circular interval with distinct endpoints. Under `ZeroInI0` the
/// interval is `[lo, hi)`; under `ZeroNotInI0` it is `(lo, hi]`. The
/// interval wraps around 0 when `hi < lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TInterval {
    pub lo: TPoint,
    pub hi: TPoint,
    pub convention: EndpointConvention,
}

impl TInterval {
    /// Length `value(hi) - value(lo)` modulo 1, in `(0, 1)`.
    pub fn length(&self, ctx: &SlopeContext) -> Result<LinearForm> {
        let diff = self.hi.value().sub(self.lo.value());
        if ctx.sign_of(&diff)? > 0 {
            Ok(diff)
        } else {
            Ok(diff.add(&LinearForm::one()))
        }
    }

    /// Exact membership test honoring the endpoint convention.
    pub fn contains(&self, ctx: &SlopeContext, p: &TPoint) -> Result<bool> {
        let on_lo = p == &self.lo;
        let on_hi = p == &self.hi;
        if on_lo {
            return Ok(self.convention == EndpointConvention::ZeroInI0);
        }
        if on_hi {
            return Ok(self.convention == EndpointConvention::ZeroNotInI0);
        }
        let lo_cmp = compare_points(ctx, p, &self.lo)?;
        let hi_cmp = compare_points(ctx, p, &self.hi)?;
        let wraps = compare_points(ctx, &self.hi, &self.lo)? == Ordering::Less;
        if wraps {
            Ok(lo_cmp == Ordering::Greater || hi_cmp == Ordering::Less)
        } else {
            Ok(lo_cmp == Ordering::Greater && hi_cmp == Ordering::Less)
        }
    }

    /// An interior point: the closed endpoint nudged by a rational
    /// epsilon smaller than the certified interval width. This avoids
    /// ever needing midpoints (which would put half-integers on
    /// `alpha`'s coefficient).
    pub fn interior_point(&self, ctx: &SlopeContext) -> Result<TPoint> {
        let len = self.length(ctx)?;
        // A positive rational lower bound for the width.
        let mut depth = 1;
        let eps = loop {
            let (lo, _) = ctx.form_bracket(&len, depth)?;
            if lo.is_positive() {
                break lo / BigRational::from_integer(BigInt::from(2));
            }
            depth += 1;
        };
        // lo + eps is interior under either convention; reduce in case
        // the nudge crossed 1 on a wrapping interval.
        let p = self.lo.nudge(&eps);
        if ctx.sign_of(&p.value().sub(&LinearForm::one()))? < 0 {
            Ok(p)
        } else {
            TPoint::reduce(ctx, p.value())
        }
    }
}

/// The letter of a point: 0 on `I_0`, 1 on `I_1`, with the cut points 0
/// and `1 - alpha` assigned by the convention.
pub fn code_point(ctx: &SlopeContext, p: &TPoint, conv: EndpointConvention) -> Result<u8> {
    let cut = LinearForm::one().sub(&LinearForm::alpha_multiple(1)); // 1 - alpha
    match conv {
        EndpointConvention::ZeroInI0 => {
            // I_0 = [0, 1-alpha)
            Ok(if ctx.sign_of(&p.value().sub(&cut))? < 0 { 0 } else { 1 })
        }
        EndpointConvention::ZeroNotInI0 => {
            // I_0 = (0, 1-alpha]; the point 0 is read as 1 on (1-alpha, 1].
            if p.is_zero() {
                return Ok(1);
            }
            Ok(if ctx.sign_of(&p.value().sub(&cut))? <= 0 { 0 } else { 1 })
        }
    }
}

/// The coding `nu(R^n(rho))` for `n = 0 .. len-1`.
pub fn code_orbit(
    ctx: &SlopeContext,
    rho: &TPoint,
    len: usize,
    conv: EndpointConvention,
) -> Result<BinaryWord> {
    let mut letters = Vec::with_capacity(len);
    let mut point = rho.clone();
    for _ in 0..len {
        letters.push(code_point(ctx, &point, conv)?);
        point = point.rotate(ctx)?;
    }
    Ok(BinaryWord::from_letters(letters))
}

/// The cut points `0, {-alpha}, ..., {-n alpha}` sorted by value. They
/// are pairwise distinct and cut the circle into `n + 1` arcs, one per
/// factor of length `n`.
pub fn circle_cuts(ctx: &SlopeContext, n: usize) -> Result<Vec<TPoint>> {
    let mut cuts = Vec::with_capacity(n + 1);
    let mut form = LinearForm::zero();
    for _ in 0..=n {
        cuts.push(TPoint::reduce(ctx, &form)?);
        form = form.sub(&LinearForm::alpha_multiple(1));
    }
    // Certified sort; distinctness holds because i*alpha is never an integer.
    let mut err = None;
    cuts.sort_by(|x, y| match compare_points(ctx, x, y) {
        Ok(ord) => ord,
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(cuts),
    }
}

/// All factor intervals of length `n` with their coded factors, in
/// circle order. Each arc between adjacent cut points is coded through
/// its closed endpoint, which belongs to the arc under the convention.
pub fn factor_intervals(
    ctx: &SlopeContext,
    n: usize,
    conv: EndpointConvention,
) -> Result<Vec<(BinaryWord, TInterval)>> {
    if n == 0 {
        return Err(Error::PreconditionFailed { what: "factor intervals need n >= 1".into() });
    }
    let cuts = circle_cuts(ctx, n)?;
    let count = cuts.len();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let lo = cuts[i].clone();
        let hi = cuts[(i + 1) % count].clone();
        let representative = match conv {
            EndpointConvention::ZeroInI0 => &lo,
            EndpointConvention::ZeroNotInI0 => &hi,
        };
        let word = code_orbit(ctx, representative, n, conv)?;
        out.push((word, TInterval { lo, hi, convention: conv }));
    }
    Ok(out)
}

/// The unique subinterval `[w]` of the circle such that a Sturmian word
/// of slope `alpha` begins with `w` iff its intercept lies in `[w]`.
pub fn factor_interval(
    ctx: &SlopeContext,
    w: &BinaryWord,
    conv: EndpointConvention,
) -> Result<TInterval> {
    if w.is_empty() {
        return Err(Error::PreconditionFailed { what: "factor interval needs a nonempty word".into() });
    }
    for (word, interval) in factor_intervals(ctx, w.len(), conv)? {
        if &word == w {
            return Ok(interval);
        }
    }
    Err(Error::NotAFactor { word: w.to_string() })
}

/// Minimum and maximum arc lengths cut by `0, {-alpha}, ..., {-n alpha}`,
/// as exact linear forms. For `n = 0` the whole circle is one interval
/// of length 1.
pub fn interval_extrema(ctx: &SlopeContext, n: usize) -> Result<(LinearForm, LinearForm)> {
    if n == 0 {
        return Ok((LinearForm::one(), LinearForm::one()));
    }
    let cuts = circle_cuts(ctx, n)?;
    let count = cuts.len();
    let mut min: Option<LinearForm> = None;
    let mut max: Option<LinearForm> = None;
    for i in 0..count {
        let a = &cuts[i];
        let b = &cuts[(i + 1) % count];
        let diff = b.value().sub(a.value());
        let len = if i + 1 == count { diff.add(&LinearForm::one()) } else { diff };
        min = Some(match min {
            None => len.clone(),
            Some(m) => {
                if ctx.compare(&len, &m)? == Ordering::Less {
                    len.clone()
                } else {
                    m
                }
            }
        });
        max = Some(match max {
            None => len,
            Some(m) => {
                if ctx.compare(&len, &m)? == Ordering::Greater {
                    len
                } else {
                    m
                }
            }
        });
    }
    Ok((min.unwrap(), max.unwrap()))
}
