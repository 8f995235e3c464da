//! Coding orbits of the irrational rotation, factor intervals, and the
//! bijection between circle arcs and factors.
//!
//! Run with `cargo run --example rotation_coding`.

use sturmian_periods::rotation::{
    code_orbit, compare_points, factor_interval, factor_intervals, interval_extrema,
    EndpointConvention, TPoint,
};
use sturmian_periods::{BinaryWord, SlopeContext};

fn main() -> sturmian_periods::Result<()> {
    let ctx = SlopeContext::parse("0;2,(1)")?;

    // The characteristic word codes the orbit of the intercept alpha.
    let rho = TPoint::alpha_multiple(&ctx, 1)?;
    let prefix = code_orbit(&ctx, &rho, 30, EndpointConvention::ZeroInI0)?;
    println!("orbit coding from alpha: {prefix}");

    // The intercept 0 hits an interval endpoint, so the two endpoint
    // conventions disagree exactly at the first letter.
    for conv in EndpointConvention::BOTH {
        let w = code_orbit(&ctx, &TPoint::zero(), 12, conv)?;
        println!("orbit coding from 0 under {conv:?}: {w}");
    }

    // Points {-n alpha} in circle order.
    let mut points: Vec<(i64, TPoint)> =
        (1..=5).map(|n| Ok((n, TPoint::alpha_multiple(&ctx, -n)?))).collect::<Result<_, _>>()?;
    points.sort_by(|(_, x), (_, y)| compare_points(&ctx, x, y).unwrap());
    println!("\npoints {{-n a}} sorted around the circle:");
    for (n, p) in &points {
        println!("  -{n}a at {}", p.value());
    }

    // Each arc cut by these points is the interval of one factor.
    println!("\nintervals of the factors of length 5:");
    for (word, interval) in factor_intervals(&ctx, 5, EndpointConvention::ZeroInI0)? {
        println!("  [{word}] from {} to {}", interval.lo.value(), interval.hi.value());
    }

    let w: BinaryWord = "00100".parse()?;
    let iv = factor_interval(&ctx, &w, EndpointConvention::ZeroInI0)?;
    println!("\n[00100] has length {} = ||5a||", iv.length(&ctx)?);

    let (min_len, max_len) = interval_extrema(&ctx, 2)?;
    println!("shortest/longest arc among length-2 factor intervals: {min_len} and {max_len}");
    Ok(())
}
