//! Certified lemma predicates on abelian exponents and the main
//! inequality used to pre-filter admissible minimum abelian periods.
//!
//! Every norm comparison is an exact sign test on linear forms; the
//! hypotheses sit near equality in the sharp examples, so floating
//! point would be unsound here.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::contfrac::SlopeContext;
use crate::error::{Error, Result};

/// Where a candidate period `m` sits relative to the convergent ladder:
/// `k` is the largest index with `q_k <= m` and `t` the largest
/// multiplier with `t q_k <= m` and `1 <= t <= a_{k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodLocation {
    pub m: u64,
    pub k: usize,
    pub t: u64,
}

pub fn locate(ctx: &SlopeContext, m: u64) -> Result<PeriodLocation> {
    if m < 1 {
        return Err(Error::PreconditionFailed { what: "locate needs m >= 1".into() });
    }
    let k = ctx.convergent_index_at(m)?;
    let qk = ctx.q_u64(k)?;
    let a_next = ctx.partial_quotient(k + 1)?;
    let t = (m / qk).min(a_next);
    Ok(PeriodLocation { m, k, t })
}

/// Outcome of one lemma: whether its hypothesis holds, and (when it
/// does) whether the certified exponent satisfies its conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub hypothesis: bool,
    pub conclusion: Option<bool>,
}

impl LemmaOutcome {
    fn vacuous() -> Self {
        LemmaOutcome { hypothesis: false, conclusion: None }
    }

    fn checked(conclusion: bool) -> Self {
        LemmaOutcome { hypothesis: true, conclusion: Some(conclusion) }
    }

    /// True unless the hypothesis held and the conclusion failed.
    pub fn consistent(&self) -> bool {
        self.conclusion != Some(false)
    }
}

/// The four exponent lemmas evaluated at `m` (with `k` from
/// [`locate`]):
///
/// * `norm_sum`: `||m a|| >= ||q_{k-1} a|| + ||q_k a||` forces
///   `AE(m) < q_k`;
/// * `norm_sum_strong`: `||m a|| >= ||q_{k-1} a|| + (a_{k+1}+1) ||q_k a||`
///   forces `AE(m) < q_k - 1` (needs `k >= 2`);
/// * `gap`: `a_{k+1} q_k < m < q_{k+1}`, excluding `q_{k+1,a_{k+1}-1}`
///   and, when `a_k = 1`, `(a_{k+1}-1) q_k + 2 q_{k-1}`, forces the
///   strong norm hypothesis above;
/// * `norm_small` / `norm_large`: `||m a|| <= ||q_k a||` forces
///   `AE(m) >= q_{k+1}`, and `||m a|| >= ||q_k a||` forces
///   `AE(m) < q_{k+1} + q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentBounds {
    pub location: PeriodLocation,
    pub exponent: u64,
    pub norm_sum: LemmaOutcome,
    pub norm_sum_strong: LemmaOutcome,
    pub gap: LemmaOutcome,
    pub norm_small: LemmaOutcome,
    pub norm_large: LemmaOutcome,
}

impl ExponentBounds {
    pub fn all_consistent(&self) -> bool {
        self.norm_sum.consistent()
            && self.norm_sum_strong.consistent()
            && self.gap.consistent()
            && self.norm_small.consistent()
            && self.norm_large.consistent()
    }
}

pub fn exponent_bounds(ctx: &SlopeContext, m: u64) -> Result<ExponentBounds> {
    let location = locate(ctx, m)?;
    let k = location.k;
    let exponent = ctx.abelian_exponent(m)?;
    let qk = ctx.q_u64(k)?;
    let norm_m = ctx.norm_form(m)?;
    let norm_k = ctx.norm_form(qk)?;

    let norm_sum = if k >= 1 {
        let norm_k1 = ctx.norm_form(ctx.q_u64(k - 1)?)?;
        let threshold = norm_k1.add(&norm_k);
        if ctx.sign_of(&norm_m.sub(&threshold))? >= 0 {
            LemmaOutcome::checked(exponent < qk)
        } else {
            LemmaOutcome::vacuous()
        }
    } else {
        LemmaOutcome::vacuous()
    };

    let a_next = ctx.partial_quotient(k + 1)?;
    let norm_sum_strong = if k >= 2 {
        let norm_k1 = ctx.norm_form(ctx.q_u64(k - 1)?)?;
        let threshold = norm_k1.add(&norm_k.scale_int(&BigInt::from(a_next + 1)));
        if ctx.sign_of(&norm_m.sub(&threshold))? >= 0 {
            LemmaOutcome::checked(exponent < qk - 1)
        } else {
            LemmaOutcome::vacuous()
        }
    } else {
        LemmaOutcome::vacuous()
    };

    let gap = if k >= 1 {
        let qk1 = ctx.q_u64(k - 1)?;
        let q_next = ctx.q_u64(k + 1)?;
        let in_range = a_next * qk < m && m < q_next;
        let semi_excluded = a_next < 2 || m != (a_next - 1) * qk + qk1;
        let a_k = ctx.partial_quotient(k)?;
        let special_excluded = a_k != 1 || m != (a_next - 1) * qk + 2 * qk1;
        if in_range && semi_excluded && special_excluded {
            // Conclusion: the strong norm hypothesis holds.
            let norm_k1 = ctx.norm_form(qk1)?;
            let threshold = norm_k1.add(&norm_k.scale_int(&BigInt::from(a_next + 1)));
            LemmaOutcome::checked(ctx.sign_of(&norm_m.sub(&threshold))? >= 0)
        } else {
            LemmaOutcome::vacuous()
        }
    } else {
        LemmaOutcome::vacuous()
    };

    let q_next = ctx.q_u64(k + 1)?;
    let diff_sign = ctx.sign_of(&norm_m.sub(&norm_k))?;
    let norm_small = if diff_sign <= 0 {
        LemmaOutcome::checked(exponent >= q_next)
    } else {
        LemmaOutcome::vacuous()
    };
    let norm_large = if diff_sign >= 0 {
        LemmaOutcome::checked(exponent < q_next + qk)
    } else {
        LemmaOutcome::vacuous()
    };

    Ok(ExponentBounds { location, exponent, norm_sum, norm_sum_strong, gap, norm_small, norm_large })
}

/// Both sides of the pre-filter inequality
/// `(q_{k+1} + 2t - 1) q_k - q_{k+1} <= (AE(m) + 2) m - 2`,
/// evaluated exactly. A failing inequality rules `m` out as a minimum
/// abelian period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub location: PeriodLocation,
    pub exponent: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

pub fn main_inequality(ctx: &SlopeContext, m: u64) -> Result<InequalityReport> {
    let location = locate(ctx, m)?;
    let (_, qk) = ctx.convergent(location.k)?;
    let (_, q_next) = ctx.convergent(location.k + 1)?;
    let exponent = ctx.abelian_exponent(m)?;
    let lhs = (&q_next + BigInt::from(2 * location.t - 1)) * &qk - &q_next;
    let rhs = BigInt::from(exponent + 2) * BigInt::from(m) - BigInt::from(2);
    let holds = lhs <= rhs;
    Ok(InequalityReport { location, exponent, lhs, rhs, holds })
}

/// Verdict of the admissibility pre-filter for a candidate period.
/// Convergent denominators and their admitted multiples report `InM`
/// (every `q_k` is `1 * q_k`); semiconvergent denominators outside the
/// multiple set report `InQkl`; everything else is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Admissibility {
    InQkl,
    InM,
    ExcludedByTheorem,
}

/// Classifies every `1 <= m <= n` against `QL(alpha) union M_alpha`.
pub fn admissible_periods(ctx: &SlopeContext, n: u64) -> Result<BTreeMap<u64, Admissibility>> {
    if n < 1 {
        return Err(Error::PreconditionFailed { what: "admissible_periods needs n >= 1".into() });
    }
    let sets = ctx.denominator_sets(n)?;
    let mut out = BTreeMap::new();
    for m in 1..=n {
        let verdict = if sets.multiples.contains(&m) {
            Admissibility::InM
        } else if sets.with_semiconvergents.contains(&m) {
            Admissibility::InQkl
        } else {
            Admissibility::ExcludedByTheorem
        };
        out.insert(m, verdict);
    }
    Ok(out)
}

/// The admissible set itself: `QL(alpha) union M_alpha` up to `n`.
pub fn admissible_set(ctx: &SlopeContext, n: u64) -> Result<std::collections::BTreeSet<u64>> {
    let sets = ctx.denominator_sets(n)?;
    let mut out = sets.with_semiconvergents;
    out.extend(sets.multiples);
    Ok(out)
}

/// The set `{l q_k + q_{k-1}}` of candidate ordinary periods up to `n`
/// (`k >= 0`, `1 <= l <= a_{k+1}`, with `q_{-1} = 0`).
pub fn ordinary_period_formula_set(ctx: &SlopeContext, n: u64) -> Result<std::collections::BTreeSet<u64>> {
    let mut out = std::collections::BTreeSet::new();
    let mut k = 0usize;
    loop {
        let qk = ctx.q_u64(k)?;
        let q_prev = if k == 0 { 0 } else { ctx.q_u64(k - 1)? };
        if qk + q_prev > n {
            break;
        }
        let a_next = ctx.partial_quotient(k + 1)?;
        for l in 1..=a_next {
            match l.checked_mul(qk).and_then(|x| x.checked_add(q_prev)) {
                Some(v) if v <= n => {
                    out.insert(v);
                }
                _ => break,
            }
        }
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> SlopeContext {
        SlopeContext::parse("0;2,(1)").unwrap()
    }

    #[test]
    fn locates_periods_on_the_ladder() {
        let ctx = fib();
        let loc = locate(&ctx, 9).unwrap();
        assert_eq!((loc.k, loc.t), (4, 1));
        let loc = locate(&ctx, 4).unwrap();
        assert_eq!((loc.k, loc.t), (2, 1));
        let loc = locate(&ctx, 1).unwrap();
        assert_eq!((loc.k, loc.t), (0, 1));
    }

    #[test]
    fn inequality_pins_from_worked_examples() {
        let ctx = fib();
        let r = main_inequality(&ctx, 9).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigInt::from(99), BigInt::from(34)));
        assert!(!r.holds);

        let r = main_inequality(&ctx, 4).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigInt::from(13), BigInt::from(14)));
        assert!(r.holds);

        let ctx = SlopeContext::parse("0;2,3,1,6,(1)").unwrap();
        let r = main_inequality(&ctx, 59).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigInt::from(587), BigInt::from(588)));
        assert!(r.holds);
        assert_eq!(r.exponent, 8);
    }

    #[test]
    fn exponent_bounds_on_fibonacci() {
        let ctx = fib();
        // m = 4: the plain norm-sum hypothesis holds at k = 2 and the
        // conclusion is sharp: AE(4) = 2 = q_2 - 1.
        let b = exponent_bounds(&ctx, 4).unwrap();
        assert!(b.norm_sum.hypothesis);
        assert_eq!(b.norm_sum.conclusion, Some(true));
        assert_eq!(b.exponent, 2);
        assert_eq!(ctx.q_u64(b.location.k).unwrap(), 3);

        // m = q_3 = 5: the small-norm branch gives AE(5) = 11 >= q_4 = 8,
        // and the large-norm branch 11 < q_4 + q_3 = 13.
        let b = exponent_bounds(&ctx, 5).unwrap();
        assert!(b.norm_small.hypothesis && b.norm_large.hypothesis);
        assert_eq!(b.norm_small.conclusion, Some(true));
        assert_eq!(b.norm_large.conclusion, Some(true));
        assert_eq!(b.exponent, 11);

        // At m = q_k the gap hypothesis is out of range.
        for k in 1..6 {
            let q = ctx.q_u64(k).unwrap();
            let b = exponent_bounds(&ctx, q).unwrap();
            assert!(!b.gap.hypothesis, "k = {k}");
        }
    }

    #[test]
    fn admissibility_verdicts() {
        let ctx = fib();
        let verdicts = admissible_periods(&ctx, 10).unwrap();
        let excluded: Vec<u64> = verdicts
            .iter()
            .filter(|(_, v)| **v == Admissibility::ExcludedByTheorem)
            .map(|(m, _)| *m)
            .collect();
        assert_eq!(excluded, vec![4, 6, 7, 9, 10]);
        assert_eq!(verdicts[&1], Admissibility::InM);

        let ctx = SlopeContext::parse("0;2,1,2,3,(1)").unwrap();
        let verdicts = admissible_periods(&ctx, 8).unwrap();
        let excluded: Vec<u64> = verdicts
            .iter()
            .filter(|(_, v)| **v == Admissibility::ExcludedByTheorem)
            .map(|(m, _)| *m)
            .collect();
        // 4 = 2 q_1 needs t = 2 > a_2 = 1, so it is excluded too.
        assert_eq!(excluded, vec![4, 7]);
        assert_eq!(verdicts[&5], Admissibility::InQkl);
        assert_eq!(verdicts[&6], Admissibility::InM);
    }

    #[test]
    fn ordinary_formula_set_instantiates() {
        let ctx = SlopeContext::parse("0;2,1,2,3,(1)").unwrap();
        let set = ordinary_period_formula_set(&ctx, 40).unwrap();
        for v in [1u64, 2, 3, 5, 8, 11, 19, 27, 35] {
            assert!(set.contains(&v), "{v} missing from {set:?}");
        }
        assert!(!set.contains(&4));
        assert!(!set.contains(&6));
    }
}
