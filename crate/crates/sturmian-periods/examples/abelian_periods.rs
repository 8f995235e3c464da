//! Abelian decompositions, minimum abelian periods, and the two
//! constructive witnesses: one realizing each convergent denominator,
//! one realizing a period off the convergent ladder.
//!
//! Run with `cargo run --example abelian_periods`.

use sturmian_periods::abelian::{
    abelian_period_witness, counterexample_witness, min_abelian_period, min_period, parikh,
    qk_witness,
};
use sturmian_periods::{BinaryWord, SlopeContext};

fn main() -> sturmian_periods::Result<()> {
    let w: BinaryWord = "01001010".parse()?;
    println!("word {w}: Parikh {:?}", parikh(&w));
    println!("  minimum period {}", min_period(&w));
    println!("  minimum abelian period {}", min_abelian_period(&w));
    for m in 1..=3 {
        match abelian_period_witness(&w, m) {
            Some(d) => println!(
                "  abelian period {m}: head {} | {} blocks of {} | tail {}",
                d.head_len, d.block_count, d.block_len, d.tail_len
            ),
            None => println!("  abelian period {m}: none"),
        }
    }

    // Every convergent denominator is the minimum abelian period of
    // some factor: a long enough prefix of the intercept-0 word.
    let ctx = SlopeContext::parse("0;2,(1)")?;
    println!("\nwitnesses on slope {}:", ctx.spec());
    for k in 0..=4 {
        let witness = qk_witness(&ctx, k)?;
        println!(
            "  q_{k} = {}: prefix of length {} has minimum abelian period {}",
            ctx.q_u64(k)?,
            witness.len(),
            min_abelian_period(&witness)
        );
    }

    // When some partial quotient past the first exceeds 1, a factor
    // with minimum abelian period q_k + q_{k-1} or 2 q_k exists; these
    // sit strictly between consecutive convergent denominators.
    let ctx = SlopeContext::parse("0;(2,1)")?;
    let witness = counterexample_witness(&ctx, 2)?;
    println!(
        "\nslope {}: witness of length {} with minimum abelian period {} (q_2 = {}, q_3 = {})",
        ctx.spec(),
        witness.len(),
        min_abelian_period(&witness),
        ctx.q_u64(2)?,
        ctx.q_u64(3)?,
    );
    Ok(())
}
