//! Period-set sweeps: the abelian period set of the golden-ratio slope
//! stays on the Fibonacci numbers, other slopes pick up extra values,
//! and the named verification scenarios wrap such claims with reports.
//!
//! Run with `cargo run --release --example sweep_period_sets`.

use sturmian_periods::abelian::{abelian_period_set, ordinary_period_set};
use sturmian_periods::harness::{run_scenario, sweep, Overrides, SweepKind};
use sturmian_periods::kabelian::Sense;
use sturmian_periods::SlopeContext;

fn main() -> sturmian_periods::Result<()> {
    let fib = SlopeContext::parse("0;2,(1)")?;
    let sweep_ab = abelian_period_set(&fib, 60)?;
    println!("abelian period set of slope 0;2,(1) up to length 60: {:?}", sweep_ab.set);
    let sweep_ord = ordinary_period_set(&fib, 60)?;
    println!("ordinary period set up to length 60:                {:?}", sweep_ord.set);

    let other = SlopeContext::parse("0;2,3,2,(1)")?;
    let sweep_ab = abelian_period_set(&other, 124)?;
    println!("\nabelian period set of slope 0;2,3,2,(1) up to 124:  {:?}", sweep_ab.set);
    println!("  (14 = 2 q_2 appears; 9, a semiconvergent denominator, does not)");

    // k-abelian sweeps through the report-producing entry point.
    let report = sweep(
        "0;2,(1)",
        60,
        SweepKind::KAbelian { k: 2, sense: Sense::Second },
        Overrides::default(),
    )?;
    println!("\n2-abelian (decomposition sense) period set up to 60: {}", report.observed["period_set"]);

    // Named scenarios bundle a claim, its data, and a verdict.
    for name in ["fib-m9", "slope-2321-no9", "kab-0100110"] {
        let report = run_scenario(name, Overrides::default())?;
        println!(
            "scenario {name}: {:?} ({} ms, certification depth {})",
            report.status, report.ms as u64, report.depth
        );
    }
    Ok(())
}
