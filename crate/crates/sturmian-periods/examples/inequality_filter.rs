//! The admissibility pre-filter: where a candidate period sits on the
//! convergent ladder, the certified exponent lemmas, and the main
//! inequality that rules most candidates out.
//!
//! Run with `cargo run --example inequality_filter`.

use sturmian_periods::abelian::abelian_period_set;
use sturmian_periods::bounds::{
    admissible_periods, exponent_bounds, main_inequality, Admissibility,
};
use sturmian_periods::SlopeContext;

fn main() -> sturmian_periods::Result<()> {
    let ctx = SlopeContext::parse("0;2,(1)")?;

    // m = 9 on the golden-ratio slope: the inequality fails by a wide
    // margin, so no factor has minimum abelian period 9.
    for m in [4u64, 9] {
        let r = main_inequality(&ctx, m)?;
        println!(
            "m = {m}: k = {}, t = {}, exponent {}; {} <= {} ? {}",
            r.location.k, r.location.t, r.exponent, r.lhs, r.rhs, r.holds
        );
    }

    println!("\nexponent lemmas at m = 4:");
    let b = exponent_bounds(&ctx, 4)?;
    println!("  norm-sum hypothesis {} -> exponent {} < q_k", b.norm_sum.hypothesis, b.exponent);
    println!("  all lemma conclusions consistent: {}", b.all_consistent());

    println!("\nverdicts up to 12:");
    for (m, verdict) in admissible_periods(&ctx, 12)? {
        println!("  {m:>2}: {verdict:?}");
    }

    // The sweep confirms the filter: every observed minimum abelian
    // period is admissible.
    let sweep = abelian_period_set(&ctx, 60)?;
    let admissible = admissible_periods(&ctx, 60)?;
    println!("\nobserved minimum abelian periods up to length 60: {:?}", sweep.set);
    let excluded_hit: Vec<&usize> = sweep
        .set
        .iter()
        .filter(|&&m| admissible[&(m as u64)] == Admissibility::ExcludedByTheorem)
        .collect();
    println!("observed periods that the filter excludes: {excluded_hit:?} (must be empty)");
    Ok(())
}
