//! The smallest gradient-Lipschitz bound under which data stays feasible.
//!
//! Feasibility is monotone in the bound, so a bracketing bisection over M
//! finds the threshold.  The divided differences decide whether any finite
//! bound works at all; kinked data pushes the threshold to infinity.

use convexjet::jet::SampleSet;
use convexjet::select1d::minimal_m;

fn main() -> convexjet::Result<()> {
    let rel_tol = 1e-9;

    // Samples of x^2/2: the threshold recovers the second derivative.
    let parabola = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0])?;
    println!("x^2/2 on {{0, 1, 2}}: minimal M = {:.6}", minimal_m(&parabola, rel_tol)?);

    // Nearly affine data: tiny curvature, tiny threshold.
    let shallow = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.001])?;
    println!("almost affine:      minimal M = {:.6}", minimal_m(&shallow, rel_tol)?);

    // Exactly affine data: every positive bound works, threshold zero.
    let affine = SampleSet::one_d(&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0])?;
    println!("exactly affine:     minimal M = {:.6}", minimal_m(&affine, rel_tol)?);

    // |x| on five points has no convex C^{1,1} interpolant at any bound:
    // the chords force slope -1 before the origin and +1 after it over a
    // gap that shrinks no curvature can bridge.
    let abs5 = SampleSet::one_d(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[2.0, 1.0, 0.0, 1.0, 2.0])?;
    let m = minimal_m(&abs5, rel_tol)?;
    println!("|x| on 5 points:    minimal M = {m}");

    // Yet every four of the five points are fine.
    println!();
    println!("after dropping one point of |x|:");
    for drop in 0..5 {
        let keep: Vec<usize> = (0..5).filter(|&i| i != drop).collect();
        let sub = abs5.subset(&keep)?;
        println!(
            "  drop x = {:+}: minimal M = {:.6}",
            abs5.point(drop).x(),
            minimal_m(&sub, rel_tol)?
        );
    }
    Ok(())
}
