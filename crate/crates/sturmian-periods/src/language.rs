//! The language of a slope: factor enumeration, singular factors,
//! light/heavy classes, occurrences, return times, and complete first
//! returns (plain and same-phase).
//!
//! The characteristic word is generated by two independent backends —
//! rotation coding and the standard-word recurrence — which are
//! cross-checked against each other on every extension.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::abelian::{parikh, ParikhVector};
use crate::contfrac::SlopeContext;
use crate::error::{Error, Result};
use crate::rotation::{factor_interval, EndpointConvention, TPoint};

/// A finite word over `{0, 1}`, stored as raw letter values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn from_letters(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&b| b <= 1));
        BinaryWord(letters)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> BinaryWord {
        BinaryWord(self.0[range].to_vec())
    }

    pub fn reversed(&self) -> BinaryWord {
        let mut v = self.0.clone();
        v.reverse();
        BinaryWord(v)
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match c {
                '0' => letters.push(0),
                '1' => letters.push(1),
                _ => return Err(Error::WordParse { position: i }),
            }
        }
        Ok(BinaryWord(letters))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Sorted occurrence positions of a pattern in a scanned window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceList {
    pub positions: Vec<usize>,
    pub pattern_len: usize,
    pub window_len: usize,
}

/// All occurrence positions of `pattern` in `text` (naive windowed
/// comparison; desk scale favors correctness over speed).
pub fn occurrences(pattern: &BinaryWord, text: &[u8]) -> OccurrenceList {
    let p = pattern.letters();
    let mut positions = Vec::new();
    if !p.is_empty() && p.len() <= text.len() {
        for i in 0..=(text.len() - p.len()) {
            if &text[i..i + p.len()] == p {
                positions.push(i);
            }
        }
    }
    OccurrenceList { positions, pattern_len: p.len(), window_len: text.len() }
}

/// Grow-only cache of the characteristic word prefix, stored on the
/// slope context and published only after both backends agree.
#[derive(Debug, Default)]
pub struct CharCache {
    letters: Vec<u8>,
    rotation_point: Option<TPoint>,
}

/// Prefix of the standard word of the slope, from the recurrence
/// `s_{-1} = 1`, `s_0 = 0`, `s_1 = s_0^{a_1 - 1} s_{-1}`,
/// `s_k = s_{k-1}^{a_k} s_{k-2}`.
pub(crate) fn standard_word_prefix(ctx: &SlopeContext, len: usize) -> Result<Vec<u8>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let mut prev: Vec<u8> = vec![1];
    let mut cur: Vec<u8> = vec![0];
    let mut k = 1usize;
    while cur.len() < len {
        let a = ctx.partial_quotient(k)? as usize;
        let reps = if k == 1 { a - 1 } else { a };
        let mut next = Vec::with_capacity(cur.len() * reps + prev.len());
        for _ in 0..reps {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
        k += 1;
    }
    cur.truncate(len);
    Ok(cur)
}

/// The prefix of the characteristic word (intercept `alpha`) of the
/// given length, computed by rotation coding and independently by the
/// standard-word recurrence. The two must agree; a mismatch is a bug
/// sentinel, never expected.
pub fn characteristic_prefix(ctx: &SlopeContext, len: usize) -> Result<BinaryWord> {
    {
        let cache = ctx.char_cache.lock().unwrap();
        if cache.letters.len() >= len {
            return Ok(BinaryWord::from_letters(cache.letters[..len].to_vec()));
        }
    }
    let mut cache = ctx.char_cache.lock().unwrap();
    if cache.letters.len() < len {
        let target = len.max(cache.letters.len() * 2).max(64);
        let standard = standard_word_prefix(ctx, target)?;
        // Rotation backend continues from the cached orbit point. The
        // orbit of the intercept alpha never hits an interval endpoint,
        // so the convention choice is immaterial here.
        let mut point = match &cache.rotation_point {
            Some(p) => p.clone(),
            None => TPoint::alpha_multiple(ctx, 1)?,
        };
        let start = cache.letters.len();
        let mut coded = Vec::with_capacity(target - start);
        for _ in start..target {
            coded.push(crate::rotation::code_point(ctx, &point, EndpointConvention::ZeroInI0)?);
            point = point.rotate(ctx)?;
        }
        for (offset, &b) in coded.iter().enumerate() {
            if standard[start + offset] != b {
                return Err(Error::BackendMismatch { position: start + offset });
            }
        }
        cache.letters = standard;
        cache.rotation_point = Some(point);
    }
    Ok(BinaryWord::from_letters(cache.letters[..len].to_vec()))
}

/// Exactly the `n + 1` distinct factors of length `n`, found by sliding
/// a window over a characteristic prefix whose length doubles until all
/// are seen. The hard cap `64 (n + 1)` turns a shortfall into an error
/// rather than a silent truncation.
pub fn factors_of_length(ctx: &SlopeContext, n: usize) -> Result<BTreeSet<BinaryWord>> {
    if n == 0 {
        return Err(Error::PreconditionFailed { what: "factor enumeration needs n >= 1".into() });
    }
    let expected = n + 1;
    let cap = 64 * expected;
    let mut horizon = (4 * n).max(64).min(cap);
    loop {
        let prefix = characteristic_prefix(ctx, horizon)?;
        let text = prefix.letters();
        let mut seen = BTreeSet::new();
        if text.len() >= n {
            for i in 0..=(text.len() - n) {
                seen.insert(BinaryWord::from_letters(text[i..i + n].to_vec()));
                if seen.len() == expected {
                    return Ok(seen);
                }
            }
        }
        if horizon >= cap {
            return Err(Error::EnumerationCapExceeded { length: n, cap });
        }
        horizon = (horizon * 2).min(cap);
    }
}

/// Membership test for the language.
pub fn is_factor(ctx: &SlopeContext, w: &BinaryWord) -> Result<bool> {
    if w.is_empty() {
        return Ok(true);
    }
    Ok(factors_of_length(ctx, w.len())?.contains(w))
}

/// The unique factor of length `q_k` that is alone in its abelian
/// class, selected as the Parikh singleton among the factors of that
/// length. Its interval has endpoints `0` and `{-q_k alpha}`.
pub fn singular_factor(ctx: &SlopeContext, k: usize) -> Result<BinaryWord> {
    let qk = ctx.q_u64(k)? as usize;
    if qk == 1 {
        // Both length-1 classes are singletons; the singular factor is
        // the one whose interval is the short arc of length ||alpha||,
        // i.e. the rarer letter 1 (alpha < 1/2).
        return Ok(BinaryWord::from_letters(vec![1]));
    }
    let factors = factors_of_length(ctx, qk)?;
    let mut by_parikh: Vec<(ParikhVector, Vec<&BinaryWord>)> = Vec::new();
    for w in &factors {
        let pv = parikh(w);
        match by_parikh.iter_mut().find(|(p, _)| *p == pv) {
            Some((_, group)) => group.push(w),
            None => by_parikh.push((pv, vec![w])),
        }
    }
    let singletons: Vec<&BinaryWord> = by_parikh
        .iter()
        .filter(|(_, group)| group.len() == 1)
        .map(|(_, group)| group[0])
        .collect();
    match singletons.as_slice() {
        [w] => Ok((*w).clone()),
        _ => Err(Error::ClaimViolated {
            what: format!("expected a unique Parikh singleton at length {qk}, found {}", singletons.len()),
        }),
    }
}

/// Abelian class of a factor relative to the factors of its length:
/// light factors have the minimum number of 1s, heavy ones the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Light,
    Heavy,
}

pub fn classify_light_heavy(ctx: &SlopeContext, w: &BinaryWord) -> Result<Weight> {
    if w.is_empty() {
        return Err(Error::PreconditionFailed { what: "classification needs a nonempty word".into() });
    }
    let factors = factors_of_length(ctx, w.len())?;
    if !factors.contains(w) {
        return Err(Error::NotAFactor { word: w.to_string() });
    }
    let ones = parikh(w).ones;
    let min_ones = factors.iter().map(|f| parikh(f).ones).min().unwrap();
    Ok(if ones == min_ones { Weight::Light } else { Weight::Heavy })
}

/// Gaps between consecutive occurrences of `w` in a characteristic
/// prefix of the given length. For a Sturmian factor the set stabilizes
/// to exactly two return times once the horizon is large enough.
pub fn return_structure(ctx: &SlopeContext, w: &BinaryWord, horizon: usize) -> Result<BTreeSet<usize>> {
    if w.is_empty() || horizon < 1 {
        return Err(Error::PreconditionFailed { what: "return structure needs a word and horizon".into() });
    }
    if !is_factor(ctx, w)? {
        return Err(Error::NotAFactor { word: w.to_string() });
    }
    let text = characteristic_prefix(ctx, horizon)?;
    let occ = occurrences(w, text.letters());
    if occ.positions.len() < 3 {
        return Err(Error::HorizonTooSmall { horizon, occurrences: occ.positions.len() });
    }
    Ok(occ.positions.windows(2).map(|pair| pair[1] - pair[0]).collect())
}

/// Whether `u` is a complete first return to `w`, in the plain sense
/// (prefix, suffix, exactly two occurrences) or in the same phase
/// (aligned block length, at least two occurrences, aligned occurrences
/// only at the two ends).
pub fn complete_first_return(w: &BinaryWord, u: &BinaryWord, same_phase: bool) -> bool {
    let (wl, ul) = (w.len(), u.len());
    if wl == 0 || ul < wl {
        return false;
    }
    let starts = u.letters()[..wl] == *w.letters();
    let ends = u.letters()[ul - wl..] == *w.letters();
    if !(starts && ends) {
        return false;
    }
    let occ = occurrences(w, u.letters());
    if same_phase {
        ul % wl == 0
            && occ.positions.len() >= 2
            && occ
                .positions
                .iter()
                .all(|&i| i % wl != 0 || i == 0 || i == ul - wl)
    } else {
        occ.positions.len() == 2
    }
}

/// Outcome of factoring the interior of a same-phase complete first
/// return to the singular factor of length `q_k` into `q_k`-blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnAnalysis {
    /// The return word found in the scan.
    pub witness: BinaryWord,
    /// Number of blocks of the core (an abelian power of period `q_k`).
    pub exponent_of_core: u64,
    /// Leading blocks that end with the singular factor's letter.
    pub leading_matches: u64,
    /// Trailing blocks that begin with the singular factor's letter.
    pub trailing_matches: u64,
    /// `q_{k+1} - p_{k+1} - 1` for odd `k`, `p_{k+1} - 1` for even `k`;
    /// both counts are certified to reach it.
    pub lambda_bound: u64,
}

/// Finds the first same-phase complete first return to `s` (the
/// singular factor of length `q_k`) in `text`, as a window `[i, j + q_k)`.
fn find_same_phase_return(s: &BinaryWord, text: &[u8]) -> Option<(usize, usize)> {
    let occ = occurrences(s, text);
    let qk = s.len();
    for (idx, &i) in occ.positions.iter().enumerate() {
        for &j in &occ.positions[idx + 1..] {
            if (j - i) % qk == 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Locates a same-phase complete first return to the singular factor of
/// length `q_k`, factors its interior into `q_k`-blocks, and certifies
/// the covering-exponent and boundary-letter structure.
///
/// With `sample = None` a characteristic prefix of doubling length is
/// scanned until the return is found.
pub fn same_phase_return_analysis(
    ctx: &SlopeContext,
    k: usize,
    sample: Option<&BinaryWord>,
) -> Result<ReturnAnalysis> {
    let s = singular_factor(ctx, k)?;
    let qk = s.len();
    let exponent = ctx.abelian_exponent(ctx.q_u64(k)?)?;

    let (window, i, j) = match sample {
        Some(word) => {
            let (i, j) = find_same_phase_return(&s, word.letters()).ok_or(Error::HorizonTooSmall {
                horizon: word.len(),
                occurrences: occurrences(&s, word.letters()).positions.len(),
            })?;
            (word.clone(), i, j)
        }
        None => {
            // The return length is about (exponent + 2) q_k; scan a few
            // multiples of that before giving up.
            let mut horizon = ((exponent as usize + 4) * qk).max(64);
            let cap = horizon * 16;
            loop {
                let text = characteristic_prefix(ctx, horizon)?;
                if let Some((i, j)) = find_same_phase_return(&s, text.letters()) {
                    break (text, i, j);
                }
                if horizon >= cap {
                    return Err(Error::HorizonTooSmall { horizon, occurrences: 0 });
                }
                horizon *= 2;
            }
        }
    };

    let witness = window.slice(i..j + qk);
    // Core: strip the leading and trailing occurrence of s.
    let core = window.slice(i + qk..j);
    debug_assert_eq!(core.len() % qk, 0);
    let blocks: Vec<&[u8]> = core.letters().chunks(qk).collect();
    let n = blocks.len() as u64;

    // The core must be an abelian power of period q_k with exponent
    // within one of the formula value.
    if !blocks.is_empty() {
        let p0 = parikh_slice(blocks[0]);
        if !blocks.iter().all(|b| parikh_slice(b) == p0) {
            return Err(Error::ClaimViolated {
                what: format!("core of the return to the singular factor of length {qk} is not an abelian power"),
            });
        }
    }
    if n + 1 != exponent && n != exponent {
        return Err(Error::ClaimViolated {
            what: format!("core exponent {n} is neither {} nor {exponent}", exponent - 1),
        });
    }

    let letter = s.letters()[0];
    debug_assert_eq!(letter, *s.letters().last().unwrap());
    let leading = blocks.iter().take_while(|b| *b.last().unwrap() == letter).count() as u64;
    let trailing = blocks.iter().rev().take_while(|b| b[0] == letter).count() as u64;

    let q_next = ctx.q_u64(k + 1)?;
    let p_next = ctx.p_u64(k + 1)?;
    let lambda_bound = if k % 2 == 1 { q_next - p_next - 1 } else { p_next.saturating_sub(1) };
    if k >= 1 && (leading < lambda_bound || trailing < lambda_bound) {
        return Err(Error::ClaimViolated {
            what: format!(
                "boundary-letter counts ({leading}, {trailing}) fall below the bound {lambda_bound} at k = {k}"
            ),
        });
    }

    Ok(ReturnAnalysis {
        witness,
        exponent_of_core: n,
        leading_matches: leading,
        trailing_matches: trailing,
        lambda_bound,
    })
}

fn parikh_slice(letters: &[u8]) -> (usize, usize) {
    let ones = letters.iter().filter(|&&b| b == 1).count();
    (letters.len() - ones, ones)
}

/// Consistency check used by tests: the singular factor's interval has
/// endpoints `0` and `{-q_k alpha}`.
pub fn singular_interval_check(ctx: &SlopeContext, k: usize) -> Result<bool> {
    let s = singular_factor(ctx, k)?;
    let qk = ctx.q_u64(k)?;
    let iv = factor_interval(ctx, &s, EndpointConvention::ZeroInI0)?;
    let minus_qk = TPoint::alpha_multiple(ctx, -(qk as i64))?;
    let zero = TPoint::zero();
    Ok((iv.lo == zero && iv.hi == minus_qk) || (iv.lo == minus_qk && iv.hi == zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::code_orbit;

    fn fib() -> SlopeContext {
        SlopeContext::parse("0;2,(1)").unwrap()
    }

    #[test]
    fn characteristic_prefix_matches_known_text() {
        let ctx = fib();
        let w = characteristic_prefix(&ctx, 66).unwrap();
        assert_eq!(
            w.to_string(),
            "010010100100101001010010010100100101001010010010100101001001010010"
        );
        assert!(characteristic_prefix(&ctx, 0).unwrap().is_empty());
        // Both backends agree on other slopes too (the call itself is
        // the cross-check).
        let ctx = SlopeContext::parse("0;2,1,2,3,(1)").unwrap();
        let w = characteristic_prefix(&ctx, 10).unwrap();
        assert_eq!(w.len(), 10);
        let via_rotation = code_orbit(
            &ctx,
            &TPoint::alpha_multiple(&ctx, 1).unwrap(),
            10,
            EndpointConvention::ZeroInI0,
        )
        .unwrap();
        assert_eq!(w, via_rotation);
    }

    #[test]
    fn factor_counts_are_length_plus_one() {
        let ctx = fib();
        let f5 = factors_of_length(&ctx, 5).unwrap();
        let expect: BTreeSet<BinaryWord> = ["00100", "00101", "01001", "01010", "10010", "10100"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(f5, expect);
        let f1 = factors_of_length(&ctx, 1).unwrap();
        assert_eq!(f1.len(), 2);
        let f2 = factors_of_length(&ctx, 2).unwrap();
        let expect: BTreeSet<BinaryWord> =
            ["00", "01", "10"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(f2, expect);
    }

    #[test]
    fn singular_factors_of_fibonacci() {
        let ctx = fib();
        assert_eq!(singular_factor(&ctx, 0).unwrap().to_string(), "1");
        assert_eq!(singular_factor(&ctx, 1).unwrap().to_string(), "00");
        assert_eq!(singular_factor(&ctx, 3).unwrap().to_string(), "00100");
        for k in 0..6 {
            assert!(singular_interval_check(&ctx, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn enumeration_cap_is_a_hard_error() {
        // With a huge second quotient the factor 00 first occurs around
        // position 2 a_2, far past the doubling cap for n = 2.
        let ctx = SlopeContext::parse("0;2,(99)").unwrap();
        match factors_of_length(&ctx, 2) {
            Err(Error::EnumerationCapExceeded { length: 2, .. }) => {}
            other => panic!("expected cap breach, got {other:?}"),
        }
    }

    #[test]
    fn light_heavy_classification() {
        let ctx = fib();
        let w: BinaryWord = "00100".parse().unwrap();
        assert_eq!(classify_light_heavy(&ctx, &w).unwrap(), Weight::Light);
        let w: BinaryWord = "1".parse().unwrap();
        assert_eq!(classify_light_heavy(&ctx, &w).unwrap(), Weight::Heavy);
        let w: BinaryWord = "01010".parse().unwrap();
        assert_eq!(classify_light_heavy(&ctx, &w).unwrap(), Weight::Heavy);
        let w: BinaryWord = "11".parse().unwrap();
        assert!(matches!(classify_light_heavy(&ctx, &w), Err(Error::NotAFactor { .. })));
    }

    #[test]
    fn return_times_of_singular_factors() {
        let ctx = fib();
        let s: BinaryWord = "00100".parse().unwrap();
        let returns = return_structure(&ctx, &s, 2000).unwrap();
        assert_eq!(returns, [8, 13].into_iter().collect::<BTreeSet<_>>());
        // The rarer letter 1 is the singular factor of length q_0 = 1.
        let one: BinaryWord = "1".parse().unwrap();
        assert_eq!(return_structure(&ctx, &one, 100).unwrap(), [2, 3].into_iter().collect());
        // The letter 0 has return words of lengths 1 and 2.
        let zero: BinaryWord = "0".parse().unwrap();
        assert_eq!(return_structure(&ctx, &zero, 100).unwrap(), [1, 2].into_iter().collect());
        assert!(matches!(
            return_structure(&ctx, &s, 20),
            Err(Error::HorizonTooSmall { .. })
        ));
    }

    #[test]
    fn complete_first_returns_from_worked_examples() {
        let w: BinaryWord = "01".parse().unwrap();
        let u: BinaryWord = "01001".parse().unwrap();
        assert!(complete_first_return(&w, &u, false));
        assert!(!complete_first_return(&w, &u, true));
        let u: BinaryWord = "01001101".parse().unwrap();
        assert!(!complete_first_return(&w, &u, false));
        assert!(complete_first_return(&w, &u, true));
        let w: BinaryWord = "0".parse().unwrap();
        let u: BinaryWord = "00".parse().unwrap();
        assert!(complete_first_return(&w, &u, false));
    }

    #[test]
    fn same_phase_analysis_fibonacci_k3() {
        let ctx = fib();
        let analysis = same_phase_return_analysis(&ctx, 3, None).unwrap();
        // AE(5) = 11; lambda = q_4 - p_4 - 1 = 8 - 3 - 1 = 4 for odd k.
        assert!(analysis.exponent_of_core == 10 || analysis.exponent_of_core == 11);
        assert_eq!(analysis.lambda_bound, 4);
        assert!(analysis.leading_matches >= 4);
        assert!(analysis.trailing_matches >= 4);
    }

    #[test]
    fn same_phase_analysis_trivial_at_k0() {
        let ctx = fib();
        let analysis = same_phase_return_analysis(&ctx, 0, None).unwrap();
        assert_eq!(analysis.lambda_bound, 0);
        assert!(analysis.exponent_of_core >= 1);
    }
}
