//! The factor language of a slope: enumeration, light and heavy
//! classes, singular factors, return times, and complete first returns.
//!
//! Run with `cargo run --example factor_language`.

use sturmian_periods::language::{
    characteristic_prefix, classify_light_heavy, complete_first_return, factors_of_length,
    return_structure, same_phase_return_analysis, singular_factor,
};
use sturmian_periods::{BinaryWord, SlopeContext};

fn main() -> sturmian_periods::Result<()> {
    let ctx = SlopeContext::parse("0;2,(1)")?;

    println!("characteristic word: {}...", characteristic_prefix(&ctx, 40)?);

    println!("\nfactors by length (always n + 1 of them):");
    for n in 1..=5 {
        let factors = factors_of_length(&ctx, n)?;
        let rendered: Vec<String> = factors
            .iter()
            .map(|w| {
                let weight = classify_light_heavy(&ctx, w).unwrap();
                format!("{w} ({weight:?})")
            })
            .collect();
        println!("  n = {n}: {}", rendered.join(", "));
    }

    println!("\nsingular factors (alone in their abelian class):");
    for k in 0..=5 {
        let s = singular_factor(&ctx, k)?;
        let q = ctx.q_u64(k)?;
        let returns = return_structure(&ctx, &s, 4000)?;
        println!(
            "  k = {k}: q_k = {q}, s = {s} (palindrome: {}), return times {returns:?}",
            s.is_palindrome()
        );
    }

    // Complete first returns, plain and in the same phase.
    let w: BinaryWord = "01".parse()?;
    for u in ["01001", "01001101"] {
        let u: BinaryWord = u.parse()?;
        println!(
            "\n{u} vs {w}: complete first return = {}, in the same phase = {}",
            complete_first_return(&w, &u, false),
            complete_first_return(&w, &u, true),
        );
    }

    // The interior of a same-phase return to a singular factor is an
    // abelian power whose exponent is pinned within one of the formula.
    let analysis = same_phase_return_analysis(&ctx, 3, None)?;
    println!(
        "\nsame-phase return to the singular factor of length q_3 = 5:\n  \
         witness length {}, core exponent {}, boundary-letter counts {}/{} (bound {})",
        analysis.witness.len(),
        analysis.exponent_of_core,
        analysis.leading_matches,
        analysis.trailing_matches,
        analysis.lambda_bound,
    );
    Ok(())
}
