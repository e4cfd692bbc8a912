//! Strongly convex interpolation in one dimension, two ways.
//!
//! Route one works on samples: subtract the quadratic `eta/2 x^2`, rescale,
//! solve a plain convex problem, and add the quadratic back.  Route two
//! works on prescribed jets: tilt them, check compatibility at a reduced
//! bound, extend, and untilt.  Both certify eta-strong convexity on the
//! sample hull with an explicit gradient-Lipschitz bound.

use convexjet::jet::{Jet, SampleSet, WhitneyField};
use convexjet::pw1d::build_extension_tight;
use convexjet::select1d::{select_jets, Selection};
use convexjet::tilt::{oned_sc_reconstruct, oned_sc_reduce, scprop_extend_1d};
use convexjet::DEFAULT_TOL;

fn main() -> convexjet::Result<()> {
    // Route one: samples of x^2 (which is 2-strongly convex), asking for
    // modulus eta = 1 under gradient budget M = 4.
    let s = SampleSet::one_d(&[-1.0, 0.0, 2.0], &[1.0, 0.0, 4.0])?;
    let (eta, m) = (1.0, 4.0);

    let (reduced, scale) = oned_sc_reduce(&s, eta, m)?;
    println!("reduced data (scale {scale}):");
    for (x, g) in reduced.xs().iter().zip(reduced.values()) {
        println!("  x = {x:>2}: value {g:.4}");
    }

    let core = match select_jets(&reduced, m, DEFAULT_TOL)? {
        Selection::Feasible(sel) => build_extension_tight(sel.field(), &reduced, m, DEFAULT_TOL)?,
        Selection::Infeasible(rep) => {
            println!("reduced problem infeasible: {rep}");
            return Ok(());
        }
    };
    let f = oned_sc_reconstruct(core, eta, m)?;
    println!();
    println!(
        "extension: modulus {}, lip_grad {:.4} (bound 2M + 3eta = {})",
        f.strong_modulus(),
        f.lip_grad(),
        2.0 * m + 3.0 * eta
    );
    for &x in &[-1.0, 0.0, 1.0, 2.0] {
        println!("  F({x}) = {:.4} (data is x^2)", f.eval(x));
    }

    // Route two: prescribed jets of x^2/2 (1-strongly convex), with the
    // tilt-split exponent p = 2.  On the sample hull the output is exact.
    println!();
    let field = WhitneyField::new(vec![
        Jet::one_d(0.0, 0.0, 0.0)?,
        Jet::one_d(1.0, 0.5, 1.0)?,
    ])?;
    let samples = SampleSet::one_d(&[0.0, 1.0], &[0.0, 0.5])?;
    let g = scprop_extend_1d(&field, &samples, 1.0, 1.0, 2.0, DEFAULT_TOL)?;
    println!("jet route on x^2/2: modulus {}, lip_grad {:.4}", g.strong_modulus(), g.lip_grad());
    for &x in &[0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  F({x}) = {} (true {})", g.eval(x), 0.5 * x * x);
    }
    Ok(())
}
