//! The pairwise compatibility relation on first-order jets.
//!
//! Two jets (base point, value, gradient) can sit on a common convex
//! function with M-Lipschitz gradient exactly when each value exceeds the
//! other jet's tangent plane by at least `|grad difference|^2 / (2M)`.
//! This example probes the relation directly, finds the smallest workable
//! bound for a pair, and the tight constant for a whole family.

use convexjet::jet::{pair_min_constant, tight_wells_constant, wells_compatible, Jet, WhitneyField};
use convexjet::DEFAULT_TOL;

fn main() -> convexjet::Result<()> {
    // Two jets of x^2/2 at x = 0 and x = 1.
    let j0 = Jet::one_d(0.0, 0.0, 0.0)?;
    let j1 = Jet::one_d(1.0, 0.5, 1.0)?;

    println!("jets of x^2/2 at 0 and 1:");
    for m in [0.5, 1.0, 4.0] {
        let r = wells_compatible(&j0, &j1, m, DEFAULT_TOL)?;
        println!(
            "  M = {m}: compatible = {}, residuals = ({:.4}, {:.4})",
            r.ok, r.residual_a, r.residual_b
        );
    }

    // The smallest bound at which the pair becomes compatible.  For jets of
    // x^2/2 the answer is the true second derivative.
    match pair_min_constant(&j0, &j1)? {
        Some(m) => println!("  smallest workable bound: {m}"),
        None => println!("  incompatible at every bound"),
    }

    // A steeper gradient costs curvature but stays workable...
    let steep = Jet::one_d(1.0, 0.5, 2.0)?;
    println!();
    println!("gradient 2 instead of 1 at x = 1:");
    match pair_min_constant(&j0, &steep)? {
        Some(m) => println!("  smallest workable bound: {m}"),
        None => println!("  incompatible at every bound"),
    }

    // ...whereas a tangent line passing above the other jet's value rules
    // out every convex interpolant, bounded gradient or not.
    let too_high = Jet::one_d(1.0, 0.5, 0.0)?;
    println!();
    println!("flat jet at (1, 0.5), tangent above the origin jet:");
    match pair_min_constant(&j0, &too_high)? {
        Some(m) => println!("  smallest workable bound: {m}"),
        None => println!("  incompatible at every bound"),
    }

    // For a family, the tight constant is the largest pairwise requirement.
    let field = WhitneyField::new(vec![
        Jet::one_d(-1.0, 0.5, -1.0)?,
        Jet::one_d(0.0, 0.0, 0.0)?,
        Jet::one_d(2.0, 2.0, 2.0)?,
    ])?;
    println!();
    match tight_wells_constant(&field)? {
        Some(m) => println!("three jets of x^2/2: tight constant = {m}"),
        None => println!("three jets of x^2/2: no finite constant"),
    }
    Ok(())
}
