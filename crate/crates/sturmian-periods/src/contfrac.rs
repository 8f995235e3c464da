//! Eventually periodic continued fractions, convergents and
//! semiconvergents, and certified exact arithmetic on linear forms
//! `a + b*alpha`.
//!
//! The slope `alpha` is an irrational in `(0, 1/2)` given by its
//! continued fraction expansion `[0; a1, a2, ...]` with `a1 >= 2`. All
//! real comparisons are routed through rational brackets built from
//! consecutive convergents `p_{2j}/q_{2j} < alpha < p_{2j+1}/q_{2j+1}`,
//! refined until the answer is certain. No floating point anywhere.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Mutex, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of continued-fraction terms materialized for slopes
/// with a periodic tail. Configurable per context; 64 terms give
/// bracket widths far below anything a desk-scale sweep can ask for.
pub const DEFAULT_DEPTH: usize = 64;

/// An eventually periodic continued fraction `[0; a1, ..., ah, (t1, ..., tp)]`.
///
/// The integer part `a0` is fixed to 0. If `tail` is absent the
/// expansion is a finite prefix of an unknown irrational and certified
/// operations may fail with [`Error::InsufficientExpansion`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlopeSpec {
    head: Vec<u64>,
    tail: Option<Vec<u64>>,
}

impl SlopeSpec {
    pub fn new(head: Vec<u64>, tail: Option<Vec<u64>>) -> Result<Self> {
        let spec = Self::new_unnormalized(head, tail)?;
        if spec.quotient(1) == Some(1) {
            return Err(Error::UnnormalizedSlope);
        }
        Ok(spec)
    }

    /// Builds a spec without the `a1 >= 2` normalization check. Used
    /// internally for shifted expansions `[0; a_{t+1}, a_{t+2}, ...]`.
    pub(crate) fn new_unnormalized(head: Vec<u64>, tail: Option<Vec<u64>>) -> Result<Self> {
        if let Some(t) = &tail {
            if t.is_empty() {
                return Err(Error::SlopeParse {
                    position: 0,
                    message: "periodic tail must be nonempty".into(),
                });
            }
        }
        if head.is_empty() && tail.is_none() {
            return Err(Error::SlopeParse {
                position: 0,
                message: "expansion needs at least one partial quotient".into(),
            });
        }
        let spec = SlopeSpec { head, tail };
        if spec.head.contains(&0) || spec.tail.iter().flatten().any(|&a| a == 0) {
            return Err(Error::SlopeParse {
                position: 0,
                message: "partial quotients must be positive".into(),
            });
        }
        Ok(spec)
    }

    /// The partial quotient `a_i` for `i >= 1`, or `None` when a finite
    /// expansion is exhausted.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return Some(0);
        }
        if i <= self.head.len() {
            return Some(self.head[i - 1]);
        }
        let tail = self.tail.as_ref()?;
        Some(tail[(i - self.head.len() - 1) % tail.len()])
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Number of terms available; `None` for eventually periodic specs.
    pub fn term_count(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.head.len()),
        }
    }

    /// The expansion with the first `t` partial quotients dropped,
    /// i.e. `[0; a_{t+1}, a_{t+2}, ...]`. The result is not required to
    /// satisfy the slope normalization.
    pub(crate) fn shifted(&self, t: usize) -> Result<SlopeSpec> {
        if t == 0 {
            return Ok(self.clone());
        }
        if t < self.head.len() {
            return SlopeSpec::new_unnormalized(self.head[t..].to_vec(), self.tail.clone());
        }
        match &self.tail {
            None => Err(Error::InsufficientExpansion { terms: self.head.len() }),
            Some(tail) => {
                let r = (t - self.head.len()) % tail.len();
                let mut rotated = tail[r..].to_vec();
                rotated.extend_from_slice(&tail[..r]);
                SlopeSpec::new_unnormalized(Vec::new(), Some(rotated))
            }
        }
    }
}

/// Text syntax: `0;2,(1)` is `[0; 2, 1, 1, 1, ...]`; parentheses
/// delimit the periodic tail; whitespace is ignored.
impl FromStr for SlopeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |position: usize, message: &str| Error::SlopeParse {
            position,
            message: message.into(),
        };
        // Strip whitespace but remember original positions for errors.
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut i = 0;
        let peek = |i: usize| chars.get(i).map(|&(_, c)| c);
        let pos = |i: usize| chars.get(i).map(|&(p, _)| p).unwrap_or(s.len());

        if peek(i) != Some('0') {
            return Err(parse_err(pos(i), "expected leading '0'"));
        }
        i += 1;
        if peek(i) != Some(';') {
            return Err(parse_err(pos(i), "expected ';' after the integer part"));
        }
        i += 1;

        let read_number = |i: &mut usize| -> Result<u64> {
            let start = *i;
            let mut value: u64 = 0;
            while let Some(c) = peek(*i) {
                if let Some(d) = c.to_digit(10) {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(d)))
                        .ok_or_else(|| parse_err(pos(start), "partial quotient overflows u64"))?;
                    *i += 1;
                } else {
                    break;
                }
            }
            if *i == start {
                return Err(parse_err(pos(start), "expected a partial quotient"));
            }
            if value == 0 {
                return Err(parse_err(pos(start), "partial quotients must be positive"));
            }
            Ok(value)
        };

        let mut head = Vec::new();
        let mut tail: Option<Vec<u64>> = None;
        loop {
            match peek(i) {
                Some('(') => {
                    i += 1;
                    let mut t = Vec::new();
                    loop {
                        t.push(read_number(&mut i)?);
                        match peek(i) {
                            Some(',') => i += 1,
                            Some(')') => {
                                i += 1;
                                break;
                            }
                            _ => return Err(parse_err(pos(i), "expected ',' or ')' in tail")),
                        }
                    }
                    tail = Some(t);
                    if peek(i).is_some() {
                        return Err(parse_err(pos(i), "periodic tail must end the expansion"));
                    }
                    break;
                }
                Some(_) => {
                    head.push(read_number(&mut i)?);
                    match peek(i) {
                        Some(',') => i += 1,
                        None => break,
                        Some(')') => return Err(parse_err(pos(i), "unmatched ')'")),
                        Some(_) => return Err(parse_err(pos(i), "expected ','")),
                    }
                }
                None => return Err(parse_err(pos(i), "expected a partial quotient or '('")),
            }
        }
        SlopeSpec::new(head, tail)
    }
}

impl fmt::Display for SlopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0;")?;
        let mut first = true;
        for a in &self.head {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        if let Some(tail) = &self.tail {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, a) in tail.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The exact value `a + b*alpha` with `a` rational and `b` integer.
///
/// Since `alpha` is irrational, two forms denote the same real number
/// exactly when they are structurally equal, and a form is zero exactly
/// when `a = 0` and `b = 0`. This makes equality decidable without any
/// refinement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    a: BigRational,
    b: BigInt,
}

impl LinearForm {
    pub fn new(a: BigRational, b: BigInt) -> Self {
        LinearForm { a, b }
    }

    pub fn zero() -> Self {
        LinearForm { a: BigRational::zero(), b: BigInt::zero() }
    }

    pub fn one() -> Self {
        LinearForm { a: BigRational::one(), b: BigInt::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        LinearForm { a: BigRational::from_integer(n.into()), b: BigInt::zero() }
    }

    pub fn from_rational(a: BigRational) -> Self {
        LinearForm { a, b: BigInt::zero() }
    }

    /// The form `n * alpha`.
    pub fn alpha_multiple(n: i64) -> Self {
        LinearForm { a: BigRational::zero(), b: n.into() }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn alpha_coefficient(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        LinearForm { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm { a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn scale_int(&self, n: &BigInt) -> LinearForm {
        LinearForm { a: &self.a * BigRational::from_integer(n.clone()), b: &self.b * n }
    }

    pub fn add_rational(&self, r: &BigRational) -> LinearForm {
        LinearForm { a: &self.a + r, b: self.b.clone() }
    }

    /// Rational enclosure of the value given an enclosure of `alpha`.
    fn eval(&self, alpha_lo: &BigRational, alpha_hi: &BigRational) -> (BigRational, BigRational) {
        let b = BigRational::from_integer(self.b.clone());
        let x = &self.a + &b * alpha_lo;
        let y = &self.a + &b * alpha_hi;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}a", self.a, -self.b.clone())
        } else {
            write!(f, "{} + {}a", self.a, self.b)
        }
    }
}

#[derive(Debug, Clone)]
struct Convergent {
    p: BigInt,
    q: BigInt,
}

/// The sets of denominators attached to a slope, all bounded by the
/// requested horizon: convergent denominators `q_k`, these together
/// with semiconvergent denominators `q_{k,l} = l*q_{k-1} + q_{k-2}`
/// (`1 <= l < a_k`, `k >= 2`), and the admitted multiples
/// `t*q_k` (`1 <= t <= a_{k+1}`). `q_{-1} = 0` is excluded throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorSets {
    pub convergents: BTreeSet<u64>,
    pub with_semiconvergents: BTreeSet<u64>,
    pub multiples: BTreeSet<u64>,
}

/// A slope with its growable convergent cache.
///
/// Immutable after construction except for the monotone caches (the
/// convergent list and the characteristic-word prefix), which only grow
/// and are published after being fully computed, so the context can be
/// shared freely across threads.
pub struct SlopeContext {
    spec: SlopeSpec,
    max_terms: usize,
    cache: RwLock<Vec<Convergent>>,
    depth_used: AtomicUsize,
    pub(crate) char_cache: Mutex<crate::language::CharCache>,
}

impl fmt::Debug for SlopeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlopeContext")
            .field("spec", &self.spec)
            .field("max_terms", &self.max_terms)
            .finish()
    }
}

impl SlopeContext {
    pub fn new(spec: SlopeSpec) -> Self {
        Self::with_depth(spec, DEFAULT_DEPTH)
    }

    /// `max_terms` caps how many partial quotients certification may
    /// consume; finite expansions are additionally capped by their own
    /// length.
    pub fn with_depth(spec: SlopeSpec, max_terms: usize) -> Self {
        SlopeContext {
            spec,
            max_terms,
            cache: RwLock::new(Vec::new()),
            depth_used: AtomicUsize::new(0),
            char_cache: Mutex::new(crate::language::CharCache::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(text.parse::<SlopeSpec>()?))
    }

    pub fn spec(&self) -> &SlopeSpec {
        &self.spec
    }

    pub fn max_terms(&self) -> usize {
        match self.spec.term_count() {
            Some(n) => n.min(self.max_terms),
            None => self.max_terms,
        }
    }

    /// High-water mark of partial quotients actually materialized.
    pub fn depth_used(&self) -> usize {
        self.depth_used.load(AtomicOrdering::Relaxed)
    }

    pub fn partial_quotient(&self, i: usize) -> Result<u64> {
        if i >= 1 && i > self.max_terms() {
            return Err(Error::InsufficientExpansion { terms: self.max_terms() });
        }
        self.note_depth(i);
        self.spec
            .quotient(i)
            .ok_or(Error::InsufficientExpansion { terms: self.spec.head.len() })
    }

    fn note_depth(&self, terms: usize) {
        self.depth_used.fetch_max(terms, AtomicOrdering::Relaxed);
    }

    /// Ensures convergents `(p_0, q_0) ... (p_k, q_k)` are cached.
    fn ensure(&self, k: usize) -> Result<()> {
        {
            let cache = self.cache.read().unwrap();
            if cache.len() > k {
                return Ok(());
            }
        }
        let mut cache = self.cache.write().unwrap();
        while cache.len() <= k {
            let next = cache.len();
            let a = self.partial_quotient(next)?;
            let a = BigInt::from(a);
            let (p, q) = match next {
                // p_{-1} = 1, q_{-1} = 0, and a_0 = 0.
                0 => (BigInt::zero(), BigInt::one()),
                1 => (BigInt::one(), a),
                _ => {
                    let c1 = &cache[next - 1];
                    let c2 = &cache[next - 2];
                    (&a * &c1.p + &c2.p, &a * &c1.q + &c2.q)
                }
            };
            cache.push(Convergent { p, q });
        }
        Ok(())
    }

    /// The convergent `(p_k, q_k)`, `k >= 0`.
    pub fn convergent(&self, k: usize) -> Result<(BigInt, BigInt)> {
        self.ensure(k)?;
        let cache = self.cache.read().unwrap();
        Ok((cache[k].p.clone(), cache[k].q.clone()))
    }

    /// `q_k` as a `u64`, for desk-scale indices.
    pub fn q_u64(&self, k: usize) -> Result<u64> {
        let (_, q) = self.convergent(k)?;
        Ok(u64::try_from(&q).expect("denominator exceeds u64 at desk scale"))
    }

    /// `p_k` as a `u64`.
    pub fn p_u64(&self, k: usize) -> Result<u64> {
        let (p, _) = self.convergent(k)?;
        Ok(u64::try_from(&p).expect("numerator exceeds u64 at desk scale"))
    }

    /// All convergent pairs with denominator at most `n`, in increasing
    /// order of the index `k`.
    pub fn convergents_up_to(&self, n: u64) -> Result<Vec<(BigInt, BigInt)>> {
        if n < 1 {
            return Err(Error::PreconditionFailed { what: "convergents_up_to needs n >= 1".into() });
        }
        let bound = BigInt::from(n);
        let mut out = Vec::new();
        let mut k = 0usize;
        loop {
            // Confirming completeness requires seeing the first q_k > n.
            let (p, q) = self.convergent(k)?;
            if q > bound {
                return Ok(out);
            }
            out.push((p, q));
            k += 1;
        }
    }

    /// The largest index `k` with `q_k <= m`.
    pub fn convergent_index_at(&self, m: u64) -> Result<usize> {
        if m < 1 {
            return Err(Error::PreconditionFailed { what: "need m >= 1".into() });
        }
        let bound = BigInt::from(m);
        let mut k = 0usize;
        loop {
            let (_, q) = self.convergent(k + 1)?;
            if q > bound {
                return Ok(k);
            }
            k += 1;
        }
    }

    /// Denominator sets bounded by `n`. See [`DenominatorSets`].
    pub fn denominator_sets(&self, n: u64) -> Result<DenominatorSets> {
        if n < 1 {
            return Err(Error::PreconditionFailed { what: "denominator_sets needs n >= 1".into() });
        }
        let bound = BigInt::from(n);
        let mut qs = BTreeSet::new();
        let mut semis = BTreeSet::new();
        let mut multiples = BTreeSet::new();

        // Convergent denominators and their admitted multiples t*q_k,
        // 1 <= t <= a_{k+1}.
        let mut k = 0usize;
        loop {
            let (_, q) = self.convergent(k)?;
            if q > bound {
                break;
            }
            let qv = u64::try_from(&q).expect("denominator exceeds u64 at desk scale");
            qs.insert(qv);
            let a_next = self.partial_quotient(k + 1)?;
            for t in 1..=a_next {
                match t.checked_mul(qv) {
                    Some(m) if m <= n => {
                        multiples.insert(m);
                    }
                    _ => break,
                }
            }
            k += 1;
        }
        // Semiconvergent denominators l*q_{k-1} + q_{k-2} for k >= 2 and
        // 1 <= l < a_k. Levels up to the first q_{k-1} > n can still
        // contribute, since q_{k,l} < q_k.
        let mut level = 2usize;
        loop {
            let (_, q_prev) = self.convergent(level - 1)?;
            if q_prev > bound {
                break;
            }
            let q1 = u64::try_from(&q_prev).expect("denominator exceeds u64 at desk scale");
            let q2 = self.q_u64(level - 2)?;
            let a = self.partial_quotient(level)?;
            for l in 1..a {
                match l.checked_mul(q1).and_then(|x| x.checked_add(q2)) {
                    Some(d) if d <= n => {
                        semis.insert(d);
                    }
                    _ => break,
                }
            }
            level += 1;
        }
        let mut with_semis = qs.clone();
        with_semis.extend(semis.iter().copied());
        Ok(DenominatorSets { convergents: qs, with_semiconvergents: with_semis, multiples })
    }

    /// The bracket `[p_{2j}/q_{2j}, p_{2j+1}/q_{2j+1}]` containing
    /// `alpha`, of width `1/(q_{2j} q_{2j+1})`.
    pub fn bracket(&self, depth: usize) -> Result<(BigRational, BigRational)> {
        let (pl, ql) = self.convergent(2 * depth)?;
        let (ph, qh) = self.convergent(2 * depth + 1)?;
        Ok((BigRational::new(pl, ql), BigRational::new(ph, qh)))
    }

    /// Open enclosure of `alpha` from the consecutive convergents
    /// `k - 1` and `k`; `alpha` lies strictly between them. Finer
    /// grained than [`Self::bracket`], which lets finite expansions
    /// spend their last term.
    fn enclosure(&self, k: usize) -> Result<(BigRational, BigRational)> {
        debug_assert!(k >= 1);
        let (pl, ql) = self.convergent(k - 1)?;
        let (ph, qh) = self.convergent(k)?;
        let a = BigRational::new(pl, ql);
        let b = BigRational::new(ph, qh);
        Ok(if a < b { (a, b) } else { (b, a) })
    }

    /// Certified sign of `a + b*alpha`.
    ///
    /// Rational forms are decided without refinement. Otherwise the
    /// enclosure is refined until the sign is certain; this terminates
    /// because a nonzero form has a nonzero value (`alpha` is
    /// irrational).
    pub fn sign_of(&self, f: &LinearForm) -> Result<i8> {
        if f.b.is_zero() {
            return Ok(match f.a.cmp(&BigRational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            });
        }
        for k in 1..=self.max_terms() {
            let (lo, hi) = self.enclosure(k)?;
            let (vlo, vhi) = f.eval(&lo, &hi);
            // The enclosure is open and b != 0, so the value is a
            // strictly monotone image of an open interval.
            if !vlo.is_negative() {
                return Ok(1);
            }
            if !vhi.is_positive() {
                return Ok(-1);
            }
        }
        Err(Error::InsufficientExpansion { terms: self.max_terms() })
    }

    /// Certified comparison of two forms; equal only on equal forms.
    pub fn compare(&self, x: &LinearForm, y: &LinearForm) -> Result<Ordering> {
        if x == y {
            return Ok(Ordering::Equal);
        }
        match self.sign_of(&x.sub(y))? {
            -1 => Ok(Ordering::Less),
            1 => Ok(Ordering::Greater),
            _ => Ok(Ordering::Equal),
        }
    }

    /// Certified floor of the value of `f`. For `b != 0` the value is
    /// irrational, so refinement always separates it from the integers.
    pub fn floor_of(&self, f: &LinearForm) -> Result<BigInt> {
        if f.b.is_zero() {
            return Ok(f.a.floor().to_integer());
        }
        for k in 1..=self.max_terms() {
            let (lo, hi) = self.enclosure(k)?;
            let (vlo, vhi) = f.eval(&lo, &hi);
            // Open interval: an integer endpoint is excluded.
            let min_floor = if vlo.is_integer() { vlo.to_integer() } else { vlo.floor().to_integer() };
            let max_floor = if vhi.is_integer() {
                vhi.to_integer() - BigInt::one()
            } else {
                vhi.floor().to_integer()
            };
            if min_floor == max_floor {
                return Ok(min_floor);
            }
        }
        Err(Error::InsufficientExpansion { terms: self.max_terms() })
    }

    /// Certified floor of `num/den` for `den > 0`. Handles the case
    /// where the ratio is exactly an integer (equality of scaled forms)
    /// symbolically, so refinement always terminates.
    pub fn floor_ratio(&self, num: &LinearForm, den: &LinearForm) -> Result<BigInt> {
        for k in 1..=self.max_terms() {
            let (lo, hi) = self.enclosure(k)?;
            let (nlo, nhi) = num.eval(&lo, &hi);
            let (dlo, dhi) = den.eval(&lo, &hi);
            if dlo.is_positive() {
                let flo = (&nlo / &dhi).floor().to_integer();
                let fhi = (&nhi / &dlo).floor().to_integer();
                if flo == fhi {
                    return Ok(flo);
                }
                if &fhi - &flo == BigInt::one() && num.sub(&den.scale_int(&fhi)).is_zero() {
                    // Ratio is exactly the integer fhi.
                    return Ok(fhi);
                }
            }
        }
        Err(Error::InsufficientExpansion { terms: self.max_terms() })
    }

    /// The nearest integer `r` to `n*alpha` together with the linear
    /// form of `||n*alpha|| = |n*alpha - r|`, which is positive.
    ///
    /// For `n = q_k` the returned form is `(-1)^k (q_k alpha - p_k)`
    /// and `r = p_k`.
    pub fn norm_multiple(&self, n: u64) -> Result<(BigInt, LinearForm)> {
        if n < 1 {
            return Err(Error::PreconditionFailed { what: "norm_multiple needs n >= 1".into() });
        }
        let f = LinearForm::new(BigRational::zero(), BigInt::from(n));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // r = floor(n*alpha + 1/2); n*alpha + 1/2 is irrational, so the
        // floor is certifiable.
        let r = self.floor_of(&f.add_rational(&half))?;
        let diff = f.sub(&LinearForm::from_rational(BigRational::from_integer(r.clone())));
        let sign = self.sign_of(&diff)?;
        let theta = if sign >= 0 { diff } else { diff.neg() };
        Ok((r, theta))
    }

    /// The linear form of `||n*alpha||`.
    pub fn norm_form(&self, n: u64) -> Result<LinearForm> {
        Ok(self.norm_multiple(n)?.1)
    }

    /// The maximum exponent of an abelian power of period `m` in the
    /// language of this slope: the certified floor of `1/||m*alpha||`.
    pub fn abelian_exponent(&self, m: u64) -> Result<u64> {
        let (_, theta) = self.norm_multiple(m)?;
        let e = self.floor_ratio(&LinearForm::one(), &theta)?;
        Ok(u64::try_from(&e).expect("abelian exponent exceeds u64 at desk scale"))
    }

    /// Rational enclosure of the tail value
    /// `alpha_t = [a_t; a_{t+1}, ...]` at the given bracket depth.
    pub fn alpha_tail_bracket(&self, t: usize, depth: usize) -> Result<(BigRational, BigRational)> {
        if t < 1 {
            return Err(Error::PreconditionFailed { what: "alpha_t needs t >= 1".into() });
        }
        let a_t = self.partial_quotient(t)?;
        let shifted = self.spec.shifted(t)?;
        let shifted_ctx = SlopeContext::with_depth(shifted, self.max_terms);
        let (lo, hi) = shifted_ctx.bracket(depth)?;
        let a = BigRational::from_integer(BigInt::from(a_t));
        Ok((&a + lo, &a + hi))
    }

    /// Rational enclosure of a linear form at a given depth; used by
    /// the interval-intersection identity checks.
    pub fn form_bracket(&self, f: &LinearForm, depth: usize) -> Result<(BigRational, BigRational)> {
        let (lo, hi) = self.bracket(depth)?;
        Ok(f.eval(&lo, &hi))
    }
}
