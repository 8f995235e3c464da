//! k-abelian equivalence and the two k-abelian period notions, the
//! class-count law, and the interval-based exponent estimate.
//!
//! Run with `cargo run --example kabelian_periods`.

use sturmian_periods::abelian::min_abelian_period;
use sturmian_periods::kabelian::{
    count_k_classes, k_equivalent, k_exponent_estimate, left_completable, sense1_min_period,
    sense2_min_period,
};
use sturmian_periods::{BinaryWord, SlopeContext};

fn main() -> sturmian_periods::Result<()> {
    let u: BinaryWord = "0101100".parse()?;
    let v: BinaryWord = "0011010".parse()?;
    println!("{u} ~_2 {v}: {}", k_equivalent(&u, &v, 2));
    println!("{u} ~_3 {v}: {}", k_equivalent(&u, &v, 3));

    // The two period notions can differ from the abelian period and
    // from each other.
    let w: BinaryWord = "0100110".parse()?;
    println!(
        "\nword {w}: abelian period {}, 2-abelian period {} (power cover) / {} (decomposition)",
        min_abelian_period(&w),
        sense1_min_period(&w, 2)?,
        sense2_min_period(&w, 2),
    );

    // Completability questions behind the power-cover sense: can "01"
    // grow to the left into a word 2-abelian equivalent to "0011"?
    let frag: BinaryWord = "01".parse()?;
    let block: BinaryWord = "0011".parse()?;
    println!(
        "\"01\" left-completable to the class of \"0011\" at k = 2: {}",
        left_completable(&frag, &block, 2)
    );

    // A factor of the golden-ratio slope whose 7-abelian period leaves
    // the convergent ladder.
    let w: BinaryWord = "01001001010010010100101".parse()?;
    println!("\n23-letter factor: 7-abelian period {}", sense1_min_period(&w, 7)?);

    // Class counts among factors: n + 1 below 2k, then exactly 2k.
    let ctx = SlopeContext::parse("0;2,(1)")?;
    print!("\n2-abelian classes among factors of length n: ");
    for n in 1..=8 {
        print!("{} ", count_k_classes(&ctx, n, 2)?);
    }
    println!("(law: n + 1 up to 2k - 1, then 2k)");

    // The exponent estimate from the shortest/longest factor interval.
    let (estimate, scanned) = k_exponent_estimate(&ctx, 5, 2)?;
    println!("\n2-abelian exponent of period 5: estimate {estimate}, scan found {scanned}");
    Ok(())
}
