//! Property suites: language-level invariants checked deterministically
//! over the test slopes, plus randomized word-level properties.
//!
//! The randomized suites pit the de Bruijn completability check against
//! exhaustive pad enumeration and confirm that both k-abelian period
//! notions collapse to the abelian period at k = 1.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use sturmian_periods::abelian::{
    abelian_period_witness, min_abelian_period, min_period, parikh,
};
use sturmian_periods::kabelian::{
    self, brute_left_completable, brute_right_completable, k_equivalent, left_completable,
    right_completable, KGramVector,
};
use sturmian_periods::language::{self, characteristic_prefix, factors_of_length, occurrences};
use sturmian_periods::rotation::{self, EndpointConvention};
use sturmian_periods::{BinaryWord, SlopeContext};

fn fib() -> &'static SlopeContext {
    static CTX: OnceLock<SlopeContext> = OnceLock::new();
    CTX.get_or_init(|| SlopeContext::parse("0;2,(1)").unwrap())
}

fn slope_2123() -> &'static SlopeContext {
    static CTX: OnceLock<SlopeContext> = OnceLock::new();
    CTX.get_or_init(|| SlopeContext::parse("0;2,1,2,3,(1)").unwrap())
}

fn slope_232() -> &'static SlopeContext {
    static CTX: OnceLock<SlopeContext> = OnceLock::new();
    CTX.get_or_init(|| SlopeContext::parse("0;2,3,2,(1)").unwrap())
}

fn word(letters: &[u8]) -> BinaryWord {
    BinaryWord::from_letters(letters.to_vec())
}

// ---------------------------------------------------------------------------
// Deterministic language invariants.
// ---------------------------------------------------------------------------

#[test]
fn factor_complexity_is_n_plus_one() {
    for ctx in [fib(), slope_2123(), slope_232()] {
        for n in 1..=60 {
            assert_eq!(factors_of_length(ctx, n).unwrap().len(), n + 1);
        }
    }
}

#[test]
fn exactly_two_parikh_classes_per_length() {
    for ctx in [fib(), slope_2123(), slope_232()] {
        for n in 1..=60 {
            let classes: BTreeSet<(usize, usize)> = factors_of_length(ctx, n)
                .unwrap()
                .iter()
                .map(|w| {
                    let pv = parikh(w);
                    (pv.zeros, pv.ones)
                })
                .collect();
            assert_eq!(classes.len(), 2, "length {n}");
            let mut it = classes.iter();
            let a = it.next().unwrap();
            let b = it.next().unwrap();
            // The two classes differ by one letter swapped: the second
            // (sorted by zero count) has one more 0 and one fewer 1.
            assert_eq!((b.0, b.1 + 1), (a.0 + 1, a.1), "length {n}");
        }
    }
}

#[test]
fn language_is_closed_under_reversal() {
    for ctx in [fib(), slope_2123(), slope_232()] {
        for n in 1..=40 {
            let factors = factors_of_length(ctx, n).unwrap();
            for w in &factors {
                assert!(factors.contains(&w.reversed()), "reversal of {w} missing");
            }
        }
    }
}

#[test]
fn circle_arcs_and_factors_are_in_bijection() {
    for ctx in [fib(), slope_2123()] {
        for conv in EndpointConvention::BOTH {
            for n in 1..=25 {
                let from_intervals: BTreeSet<BinaryWord> = rotation::factor_intervals(ctx, n, conv)
                    .unwrap()
                    .into_iter()
                    .map(|(w, _)| w)
                    .collect();
                assert_eq!(from_intervals, factors_of_length(ctx, n).unwrap(), "n = {n}");
            }
        }
    }
}

#[test]
fn interval_lengths_sum_to_one() {
    use sturmian_periods::LinearForm;
    let ctx = fib();
    for n in [1usize, 2, 5, 9, 13] {
        let mut total = LinearForm::zero();
        for (_, interval) in rotation::factor_intervals(ctx, n, EndpointConvention::ZeroInI0).unwrap()
        {
            total = total.add(&interval.length(ctx).unwrap());
        }
        assert_eq!(total, LinearForm::one(), "n = {n}");
    }
}

#[test]
fn light_factors_sit_inside_the_light_interval() {
    // Light iff [w] lies in the arc from 0 to {-n alpha}.
    let ctx = fib();
    for n in 1..=15 {
        let cut = rotation::TPoint::alpha_multiple(ctx, -(n as i64)).unwrap();
        let arc = rotation::TInterval {
            lo: rotation::TPoint::zero(),
            hi: cut,
            convention: EndpointConvention::ZeroInI0,
        };
        for w in factors_of_length(ctx, n).unwrap() {
            let weight = language::classify_light_heavy(ctx, &w).unwrap();
            let interval = rotation::factor_interval(ctx, &w, EndpointConvention::ZeroInI0).unwrap();
            let inside = arc.contains(ctx, &interval.interior_point(ctx).unwrap()).unwrap();
            assert_eq!(weight == language::Weight::Light, inside, "{w}");
        }
    }
}

// ---------------------------------------------------------------------------
// Abelian-period invariants.
// ---------------------------------------------------------------------------

#[test]
fn period_monotone_under_factors_on_sturmian_windows() {
    // Factors inherit periods: mu_u <= mu_w, and any abelian period of
    // w that still fits inside u is an abelian period of u.
    let ctx = fib();
    let text = characteristic_prefix(ctx, 160).unwrap();
    let letters = text.letters();
    for start in (0..120).step_by(7) {
        for len in [8usize, 13, 21, 34] {
            let w = word(&letters[start..start + len]);
            let mu_w = min_abelian_period(&w);
            for cut in 1..len / 2 {
                let u = word(&letters[start + cut..start + len - cut]);
                if u.is_empty() {
                    continue;
                }
                assert!(min_abelian_period(&u) <= mu_w, "{u} inside {w}");
            }
            for m in 1..=len {
                if abelian_period_witness(&w, m).is_some() {
                    for sub_len in m..len {
                        let u = word(&letters[start..start + sub_len]);
                        assert!(
                            abelian_period_witness(&u, m).is_some(),
                            "period {m} of {w} lost on prefix {u}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn singular_avoidance_forces_many_occurrences() {
    // A factor long enough to hold a full block in every phase either
    // has abelian period q_k or contains the singular factor of length
    // q_k at least q_k times.
    for (ctx, k) in [(fib(), 2usize), (fib(), 3), (slope_2123(), 2)] {
        let qk = ctx.q_u64(k).unwrap() as usize;
        let s = language::singular_factor(ctx, k).unwrap();
        for n in (2 * qk - 1)..=60 {
            for w in factors_of_length(ctx, n).unwrap() {
                if abelian_period_witness(&w, qk).is_none() {
                    let count = occurrences(&s, w.letters()).positions.len();
                    assert!(count >= qk, "{w} avoids period {qk} with {count} occurrences of {s}");
                }
            }
        }
    }
}

#[test]
fn exponent_scan_never_beats_formula_on_test_slopes() {
    for ctx in [fib(), slope_2123(), slope_232()] {
        for m in 1..=40usize {
            let formula = ctx.abelian_exponent(m as u64).unwrap();
            let scanned = sturmian_periods::abelian::abelian_exponent_scan(ctx, m, 64).unwrap();
            assert_eq!(formula, scanned, "m = {m}");
        }
    }
}

proptest! {
    #[test]
    fn abelian_period_is_reversal_invariant(letters in prop::collection::vec(0u8..=1, 1..40)) {
        let w = word(&letters);
        prop_assert_eq!(min_abelian_period(&w), min_abelian_period(&w.reversed()));
    }

    #[test]
    fn abelian_period_bounded_by_ordinary_period(letters in prop::collection::vec(0u8..=1, 1..40)) {
        let w = word(&letters);
        let mu = min_abelian_period(&w);
        prop_assert!(mu <= min_period(&w));
        prop_assert!(mu <= w.len());
    }

    #[test]
    fn decomposition_witnesses_are_valid(
        letters in prop::collection::vec(0u8..=1, 1..40),
        m in 1usize..40,
    ) {
        let w = word(&letters);
        prop_assume!(m <= w.len());
        if let Some(d) = abelian_period_witness(&w, m) {
            prop_assert_eq!(d.block_len, m);
            prop_assert!(d.block_count >= 1);
            prop_assert_eq!(d.head_len + d.block_count * m + d.tail_len, w.len());
            let block = parikh(&w.slice(d.head_len..d.head_len + m));
            for i in 0..d.block_count {
                let start = d.head_len + i * m;
                prop_assert_eq!(parikh(&w.slice(start..start + m)), block);
            }
            let head = parikh(&w.slice(0..d.head_len));
            let tail = parikh(&w.slice(w.len() - d.tail_len..w.len()));
            prop_assert!(d.head_len == 0 || head.contained_in(&block));
            prop_assert!(d.tail_len == 0 || tail.contained_in(&block));
        }
    }
}

// ---------------------------------------------------------------------------
// k-abelian invariants.
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn k_equivalence_refines_downward(
        u in prop::collection::vec(0u8..=1, 0..18),
        v in prop::collection::vec(0u8..=1, 0..18),
        k in 2usize..5,
    ) {
        let u = word(&u);
        let v = word(&v);
        if k_equivalent(&u, &v, k) {
            prop_assert!(k_equivalent(&u, &v, k - 1));
        }
    }

    #[test]
    fn gram_totals_match_window_count(
        letters in prop::collection::vec(0u8..=1, 0..24),
        k in 1usize..6,
    ) {
        let w = word(&letters);
        let grams = KGramVector::of(&w, k);
        prop_assert_eq!(grams.total() as usize, w.len().saturating_sub(k - 1));
    }

    #[test]
    fn both_period_senses_collapse_at_k1(letters in prop::collection::vec(0u8..=1, 1..16)) {
        let w = word(&letters);
        let mu = min_abelian_period(&w);
        prop_assert_eq!(kabelian::sense1_min_period(&w, 1).unwrap(), mu);
        prop_assert_eq!(kabelian::sense2_min_period(&w, 1), mu);
    }

    #[test]
    fn kabelian_periods_dominate_abelian(
        letters in prop::collection::vec(0u8..=1, 1..14),
        k in 1usize..4,
    ) {
        let w = word(&letters);
        let mu = min_abelian_period(&w);
        prop_assert!(kabelian::sense1_min_period(&w, k).unwrap() >= mu);
        prop_assert!(kabelian::sense2_min_period(&w, k) >= mu);
    }

    #[test]
    fn debruijn_completability_matches_brute_force(
        block in prop::collection::vec(0u8..=1, 1..13),
        frag_len in 0usize..13,
        seed in any::<u64>(),
        k in 1usize..5,
    ) {
        // Fragment drawn partly from the block itself (seed picks
        // mutations) so both feasible and infeasible cases appear.
        let m = block.len();
        let frag_len = frag_len.min(m);
        let mut fragment: Vec<u8> = block[m - frag_len..].to_vec();
        let mut bits = seed;
        for slot in fragment.iter_mut() {
            if bits & 3 == 0 {
                *slot ^= 1;
            }
            bits >>= 2;
        }
        let block = word(&block);
        let left_frag = word(&fragment);
        prop_assert_eq!(
            left_completable(&left_frag, &block, k),
            brute_left_completable(&left_frag, &block, k).unwrap(),
            "left: fragment {} block {} k {}", left_frag, block, k
        );
        fragment.reverse();
        let right_frag = word(&fragment);
        prop_assert_eq!(
            right_completable(&right_frag, &block, k),
            brute_right_completable(&right_frag, &block, k).unwrap(),
            "right: fragment {} block {} k {}", right_frag, block, k
        );
    }
}

#[test]
fn k1_collapse_exhaustive_to_length_14() {
    // Every binary word up to length 14: both k-abelian period notions
    // at k = 1 equal the abelian period.
    for len in 1usize..=14 {
        for bits in 0u32..(1 << len) {
            let letters: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
            let w = word(&letters);
            let mu = min_abelian_period(&w);
            assert_eq!(kabelian::sense1_min_period(&w, 1).unwrap(), mu, "sense1 diverges on {w}");
            assert_eq!(kabelian::sense2_min_period(&w, 1), mu, "sense2 diverges on {w}");
        }
    }
}

#[test]
fn debruijn_oracle_exhaustive_on_small_instances() {
    // Every fragment of length <= 3 against every block of length <= 7,
    // k = 2 and 3: the graph decision must equal pad enumeration.
    for k in 2usize..=3 {
        for block_bits in 0u32..(1 << 7) {
            for block_len in 1usize..=7 {
                if block_bits >= 1 << block_len {
                    continue;
                }
                let block: Vec<u8> =
                    (0..block_len).map(|i| ((block_bits >> i) & 1) as u8).collect();
                let block = word(&block);
                for frag_len in 0..=3usize.min(block_len) {
                    for frag_bits in 0u32..(1 << frag_len) {
                        let frag: Vec<u8> =
                            (0..frag_len).map(|i| ((frag_bits >> i) & 1) as u8).collect();
                        let frag = word(&frag);
                        assert_eq!(
                            left_completable(&frag, &block, k),
                            brute_left_completable(&frag, &block, k).unwrap(),
                            "left {frag} {block} k={k}"
                        );
                        assert_eq!(
                            right_completable(&frag, &block, k),
                            brute_right_completable(&frag, &block, k).unwrap(),
                            "right {frag} {block} k={k}"
                        );
                    }
                }
            }
        }
    }
}
