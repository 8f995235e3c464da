//! Certified continued-fraction arithmetic: convergents, denominator
//! sets, exact signs of linear forms, and the abelian exponent formula.
//!
//! Run with `cargo run --example continued_fractions`.

use sturmian_periods::{LinearForm, SlopeContext};

fn main() -> sturmian_periods::Result<()> {
    // The golden-ratio slope 1/phi^2 = [0; 2, 1, 1, 1, ...].
    let ctx = SlopeContext::parse("0;2,(1)")?;
    println!("slope {}", ctx.spec());

    println!("\nconvergents p_k/q_k with q_k <= 50:");
    for (k, (p, q)) in ctx.convergents_up_to(50)?.iter().enumerate() {
        println!("  k = {k}: {p}/{q}");
    }

    let sets = ctx.denominator_sets(50)?;
    println!("\ndenominators:   {:?}", sets.convergents);
    println!("with semiconvergents: {:?}", sets.with_semiconvergents);
    println!("admitted multiples:   {:?}", sets.multiples);

    // Exact sign tests on a + b*alpha never touch floating point.
    let f = LinearForm::from_integer(1).sub(&LinearForm::alpha_multiple(2));
    println!("\nsign(1 - 2a) = {}", ctx.sign_of(&f)?);
    let f = LinearForm::from_integer(2).sub(&LinearForm::alpha_multiple(5));
    println!("sign(2 - 5a) = {} (so ||5a|| = 2 - 5a)", ctx.sign_of(&f)?);

    // ||m alpha|| and the maximum abelian exponent floor(1 / ||m alpha||).
    for m in [1u64, 5, 9] {
        let (nearest, theta) = ctx.norm_multiple(m)?;
        println!(
            "\nm = {m}: nearest integer to m*a is {nearest}; ||m a|| = {theta}; max abelian exponent = {}",
            ctx.abelian_exponent(m)?
        );
    }

    // A slope with semiconvergents.
    let ctx = SlopeContext::parse("0;2,1,2,3,(1)")?;
    let sets = ctx.denominator_sets(30)?;
    println!("\nslope {}:", ctx.spec());
    println!("  denominators {:?}", sets.convergents);
    let semis: Vec<u64> =
        sets.with_semiconvergents.difference(&sets.convergents).copied().collect();
    println!("  semiconvergent denominators {semis:?}");
    Ok(())
}
