//! Parikh vectors, abelian decompositions and periods, minimum
//! abelian/ordinary periods, period-set sweeps, exponent scans, and the
//! constructive witnesses for admissible periods.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::contfrac::SlopeContext;
use crate::error::{Error, Result};
use crate::language::{self, characteristic_prefix, factors_of_length, BinaryWord};
use crate::rotation::{code_orbit, EndpointConvention, TPoint};

/// Letter counts `(|w|_0, |w|_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    pub zeros: usize,
    pub ones: usize,
}

impl ParikhVector {
    pub fn weight(&self) -> usize {
        self.zeros + self.ones
    }

    /// Componentwise `<=` and not equal.
    pub fn contained_in(&self, other: &ParikhVector) -> bool {
        self.zeros <= other.zeros && self.ones <= other.ones && self != other
    }
}

pub fn parikh(w: &BinaryWord) -> ParikhVector {
    let ones = w.letters().iter().filter(|&&b| b == 1).count();
    ParikhVector { zeros: w.len() - ones, ones }
}

/// A decomposition `w = head . block_1 ... block_c . tail` with all
/// full blocks abelian equivalent and the head and tail Parikh vectors
/// contained in the block's. The block length is an abelian period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub head_len: usize,
    pub block_len: usize,
    pub block_count: usize,
    pub tail_len: usize,
}

/// Prefix counts of the letter 1, for O(1) Parikh queries on windows.
struct OnesPrefix(Vec<u32>);

impl OnesPrefix {
    fn new(letters: &[u8]) -> Self {
        let mut acc = Vec::with_capacity(letters.len() + 1);
        let mut total = 0u32;
        acc.push(0);
        for &b in letters {
            total += u32::from(b);
            acc.push(total);
        }
        OnesPrefix(acc)
    }

    fn ones(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range.end] - self.0[range.start]
    }
}

/// Searches for an abelian decomposition of `w` with block length `m`,
/// trying head lengths `0 <= h < m` and requiring at least one full
/// block. Head and tail are shorter than `m`, so containment reduces to
/// componentwise `<=`.
pub fn abelian_period_witness(w: &BinaryWord, m: usize) -> Option<AbelianDecomposition> {
    let n = w.len();
    if m < 1 || m > n {
        return None;
    }
    let prefix = OnesPrefix::new(w.letters());
    witness_with_prefix(&prefix, n, m)
}

fn witness_with_prefix(prefix: &OnesPrefix, n: usize, m: usize) -> Option<AbelianDecomposition> {
    for h in 0..m.min(n - m + 1) {
        let c = (n - h) / m;
        debug_assert!(c >= 1);
        let block_ones = prefix.ones(h..h + m);
        let mut ok = true;
        for i in 1..c {
            if prefix.ones(h + i * m..h + (i + 1) * m) != block_ones {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let block_zeros = m as u32 - block_ones;
        let head_ones = prefix.ones(0..h);
        if head_ones > block_ones || h as u32 - head_ones > block_zeros {
            continue;
        }
        let t = n - h - c * m;
        let tail_ones = prefix.ones(n - t..n);
        if tail_ones > block_ones || t as u32 - tail_ones > block_zeros {
            continue;
        }
        return Some(AbelianDecomposition { head_len: h, block_len: m, block_count: c, tail_len: t });
    }
    None
}

/// The least abelian period of a nonempty word. `m = |w|` always
/// succeeds with empty head and tail, so the result is at most `|w|`.
pub fn min_abelian_period(w: &BinaryWord) -> usize {
    assert!(!w.is_empty(), "minimum abelian period of the empty word");
    let n = w.len();
    let prefix = OnesPrefix::new(w.letters());
    for m in 1..=n {
        if witness_with_prefix(&prefix, n, m).is_some() {
            return m;
        }
    }
    unreachable!("m = |w| always admits the trivial decomposition")
}

/// The least ordinary period `p` with `w_i = w_{i+p}` for all valid `i`.
pub fn min_period(w: &BinaryWord) -> usize {
    assert!(!w.is_empty(), "minimum period of the empty word");
    let letters = w.letters();
    let n = letters.len();
    'outer: for p in 1..n {
        for i in 0..n - p {
            if letters[i] != letters[i + p] {
                continue 'outer;
            }
        }
        return p;
    }
    n
}

/// Result of a period-set sweep: the set of minimum periods over all
/// nonempty factors up to the horizon, plus the per-length multisets
/// (factors of each length are enumerated once and deduplicated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSweep {
    pub set: BTreeSet<usize>,
    pub by_length: BTreeMap<usize, Vec<usize>>,
}

fn period_sweep<F>(ctx: &SlopeContext, max_len: usize, per_word: F) -> Result<PeriodSweep>
where
    F: Fn(&BinaryWord) -> usize + Sync,
{
    if max_len < 1 {
        return Err(Error::PreconditionFailed { what: "period sweep needs a horizon >= 1".into() });
    }
    // Warm the characteristic cache once so parallel workers share it.
    characteristic_prefix(ctx, (4 * max_len).max(64))?;
    let lengths: Vec<usize> = (1..=max_len).collect();
    let per_length: Vec<(usize, Vec<usize>)> = lengths
        .par_iter()
        .map(|&n| -> Result<(usize, Vec<usize>)> {
            let mut mus: Vec<usize> =
                factors_of_length(ctx, n)?.iter().map(&per_word).collect();
            mus.sort_unstable();
            Ok((n, mus))
        })
        .collect::<Result<_>>()?;
    let mut set = BTreeSet::new();
    let mut by_length = BTreeMap::new();
    for (n, mus) in per_length {
        set.extend(mus.iter().copied());
        by_length.insert(n, mus);
    }
    Ok(PeriodSweep { set, by_length })
}

/// Minimum abelian periods of all nonempty factors of length at most
/// `max_len`.
pub fn abelian_period_set(ctx: &SlopeContext, max_len: usize) -> Result<PeriodSweep> {
    period_sweep(ctx, max_len, min_abelian_period)
}

/// Minimum ordinary periods of all nonempty factors of length at most
/// `max_len`.
pub fn ordinary_period_set(ctx: &SlopeContext, max_len: usize) -> Result<PeriodSweep> {
    period_sweep(ctx, max_len, min_period)
}

/// Maximum exponent of an abelian power of period `m` found by scanning
/// a characteristic prefix, doubling the horizon until the formula
/// value `floor(1/||m alpha||)` is attained. A scan exceeding the
/// formula value is a falsification sentinel.
pub fn abelian_exponent_scan(ctx: &SlopeContext, m: usize, horizon_start: usize) -> Result<u64> {
    if m < 1 {
        return Err(Error::PreconditionFailed { what: "exponent scan needs m >= 1".into() });
    }
    let formula = ctx.abelian_exponent(m as u64)?;
    let mut horizon = horizon_start.max(4 * m).max(64);
    loop {
        let text = characteristic_prefix(ctx, horizon)?;
        let letters = text.letters();
        let prefix = OnesPrefix::new(letters);
        let mut best = 0u64;
        for phase in 0..m.min(letters.len()) {
            let mut run = 0u64;
            let mut prev: Option<u32> = None;
            let mut start = phase;
            while start + m <= letters.len() {
                let ones = prefix.ones(start..start + m);
                run = match prev {
                    Some(p) if p == ones => run + 1,
                    _ => 1,
                };
                prev = Some(ones);
                if run > best {
                    best = run;
                }
                start += m;
            }
        }
        if best > formula {
            return Err(Error::FormulaExceeded { period: m, formula, scanned: best });
        }
        if best == formula {
            return Ok(best);
        }
        horizon *= 2;
    }
}

/// The prefix of the Sturmian word of intercept 0 (endpoint convention
/// chosen by the parity of `k`) of length `AE(q_k) * q_k`. Its minimum
/// abelian period is certified to be `q_k`.
pub fn qk_witness(ctx: &SlopeContext, k: usize) -> Result<BinaryWord> {
    if k == 0 {
        return Ok(BinaryWord::from_letters(vec![0]));
    }
    let qk = ctx.q_u64(k)? as usize;
    let exponent = ctx.abelian_exponent(qk as u64)? as usize;
    let conv = if k.is_multiple_of(2) { EndpointConvention::ZeroInI0 } else { EndpointConvention::ZeroNotInI0 };
    let w = code_orbit(ctx, &TPoint::zero(), exponent * qk, conv)?;
    let mu = min_abelian_period(&w);
    if mu != qk {
        return Err(Error::ClaimViolated {
            what: format!("intercept-0 prefix of length {} has minimum abelian period {mu}, expected {qk}", w.len()),
        });
    }
    Ok(w)
}

/// A factor whose minimum abelian period is `q_k + q_{k-1}` or `2 q_k`:
/// a same-phase complete first return to the singular factor of length
/// `q_k`, with its final letter dropped. Requires `a_{k+1} > 1` (for
/// `a_{k+1} = 1` no such factor exists; both candidate values collapse
/// into the convergent ladder).
pub fn counterexample_witness(ctx: &SlopeContext, k: usize) -> Result<BinaryWord> {
    if k < 1 {
        return Err(Error::PreconditionFailed { what: "counterexample witness needs k >= 1".into() });
    }
    let a_next = ctx.partial_quotient(k + 1)?;
    if a_next <= 1 {
        return Err(Error::PreconditionFailed {
            what: format!("counterexample witness needs a_{} > 1", k + 1),
        });
    }
    let analysis = language::same_phase_return_analysis(ctx, k, None)?;
    let u = analysis.witness;
    let w = u.slice(0..u.len() - 1);
    let mu = min_abelian_period(&w);
    let qk = ctx.q_u64(k)? as usize;
    let qk1 = ctx.q_u64(k - 1)? as usize;
    if mu != qk + qk1 && mu != 2 * qk {
        return Err(Error::ClaimViolated {
            what: format!("witness has minimum abelian period {mu}, expected {} or {}", qk + qk1, 2 * qk),
        });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn parikh_counts() {
        assert_eq!(parikh(&w("00100")), ParikhVector { zeros: 4, ones: 1 });
        assert_eq!(parikh(&BinaryWord::empty()), ParikhVector { zeros: 0, ones: 0 });
        assert_eq!(parikh(&w("01001010")), ParikhVector { zeros: 5, ones: 3 });
    }

    #[test]
    fn decomposition_witnesses_match_worked_example() {
        // abaababa with a -> 0, b -> 1: head a, blocks ba/ab/ab, tail a.
        let word = w("01001010");
        let d = abelian_period_witness(&word, 2).unwrap();
        assert_eq!(d, AbelianDecomposition { head_len: 1, block_len: 2, block_count: 3, tail_len: 1 });
        let d = abelian_period_witness(&word, 3).unwrap();
        assert_eq!(d, AbelianDecomposition { head_len: 0, block_len: 3, block_count: 2, tail_len: 2 });
        assert!(abelian_period_witness(&word, 1).is_none());
    }

    #[test]
    fn minimum_periods_of_worked_words() {
        assert_eq!(min_abelian_period(&w("01001010")), 2);
        assert_eq!(min_abelian_period(&w("0")), 1);
        // The 40-letter factor of slope [0;(2,1)] with minimum abelian
        // period 6.
        let factor = w(&format!(
            "{}{}{}",
            "00101", "001001001010010010010100100100", "10100"
        ));
        assert_eq!(factor.len(), 40);
        assert_eq!(min_abelian_period(&factor), 6);

        // abaab has period 3; abaababa has period 5.
        assert_eq!(min_period(&w("01001")), 3);
        assert_eq!(min_period(&w("01001010")), 5);
        assert_eq!(min_period(&w("0000")), 1);
    }

    #[test]
    fn abelian_period_bounded_by_ordinary() {
        for s in ["0", "01", "0110", "010010100", "00100", "1011010"] {
            let word = w(s);
            let mu = min_abelian_period(&word);
            assert!(mu <= min_period(&word));
            assert!(mu <= word.len());
        }
    }

    #[test]
    fn fibonacci_sweep_stays_in_fibonacci_numbers() {
        let ctx = SlopeContext::parse("0;2,(1)").unwrap();
        let sweep = abelian_period_set(&ctx, 30).unwrap();
        let fib: BTreeSet<usize> = [1, 2, 3, 5, 8, 13, 21].into_iter().collect();
        assert!(sweep.set.is_subset(&fib), "got {:?}", sweep.set);
        assert_eq!(sweep.by_length[&1], vec![1, 1]);
    }

    #[test]
    fn ordinary_sweep_at_length_one() {
        let ctx = SlopeContext::parse("0;2,1,2,3,(1)").unwrap();
        let sweep = ordinary_period_set(&ctx, 1).unwrap();
        assert_eq!(sweep.set, [1].into_iter().collect());
        let sweep = abelian_period_set(&ctx, 1).unwrap();
        assert_eq!(sweep.set, [1].into_iter().collect());
    }

    #[test]
    fn exponent_scan_agrees_with_formula() {
        let ctx = SlopeContext::parse("0;2,(1)").unwrap();
        assert_eq!(abelian_exponent_scan(&ctx, 9, 64).unwrap(), 2);
        assert_eq!(abelian_exponent_scan(&ctx, 5, 64).unwrap(), 11);
        assert_eq!(abelian_exponent_scan(&ctx, 1, 64).unwrap(), 2);
    }

    #[test]
    fn qk_witnesses_on_fibonacci() {
        let ctx = SlopeContext::parse("0;2,(1)").unwrap();
        let w0 = qk_witness(&ctx, 0).unwrap();
        assert_eq!(w0.to_string(), "0");
        // k = 1: AE(2) = 4, so an 8-letter prefix with mu = 2.
        let w1 = qk_witness(&ctx, 1).unwrap();
        assert_eq!(w1.len(), 8);
        assert_eq!(min_abelian_period(&w1), 2);
        // k = 2: AE(3) = 6, an 18-letter prefix with mu = 3.
        let w2 = qk_witness(&ctx, 2).unwrap();
        assert_eq!(w2.len(), 18);
        assert_eq!(min_abelian_period(&w2), 3);
    }

    #[test]
    fn counterexample_witness_needs_a_large_quotient() {
        let ctx = SlopeContext::parse("0;2,(1)").unwrap();
        assert!(matches!(
            counterexample_witness(&ctx, 2),
            Err(Error::PreconditionFailed { .. })
        ));
        let ctx = SlopeContext::parse("0;(2,1)").unwrap();
        let witness = counterexample_witness(&ctx, 2).unwrap();
        let mu = min_abelian_period(&witness);
        assert!(mu == 5 || mu == 6, "mu = {mu}");
        let ctx = SlopeContext::parse("0;2,1,2,3,(1)").unwrap();
        let witness = counterexample_witness(&ctx, 2).unwrap();
        let mu = min_abelian_period(&witness);
        assert!(mu == 5 || mu == 6, "mu = {mu}");
    }
}
