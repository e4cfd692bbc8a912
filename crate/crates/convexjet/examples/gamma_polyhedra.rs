//! Admissible-gradient polyhedra for scattered data in the plane.
//!
//! In dimension n >= 2 slopes become gradients, and the constraint set at a
//! sample is a polyhedron: one halfspace per other sample, shifted by the
//! strong-convexity quadratic.  Emptiness of any polyhedron kills the
//! interpolation problem outright; the decision here is exact (rational
//! arithmetic), with a floating witness and slack report on top.

use convexjet::jet::{Point, SampleSet};
use convexjet::nd::{fm_nonempty, gamma_polyhedron_at, polyhedron_nonempty};

fn main() -> convexjet::Result<()> {
    // Corners of the unit square with values of |x|^2/2, eta = 1: the data
    // comes from a 1-strongly convex function, so every polyhedron is
    // nonempty — but only barely, since eta = 1 uses up all the curvature.
    let square = SampleSet::new(
        vec![
            Point::new(vec![0.0, 0.0])?,
            Point::new(vec![1.0, 0.0])?,
            Point::new(vec![0.0, 1.0])?,
            Point::new(vec![1.0, 1.0])?,
        ],
        vec![0.0, 0.5, 0.5, 1.0],
    )?;
    println!("square corners of |x|^2/2 at eta = 1:");
    for i in 0..square.len() {
        let poly = gamma_polyhedron_at(&square, i, 1.0)?;
        let feas = polyhedron_nonempty(&poly, 1e-8)?;
        println!(
            "  sample {i}: {} rows, nonempty = {}, witness = {:?}, tight = {}",
            poly.rows().len(),
            feas.feasible,
            feas.witness,
            feas.near_degenerate
        );
    }

    // A concave spike: raising the middle value of three collinear points
    // empties its polyhedron, and the exact Fourier-Motzkin eliminator
    // agrees with the simplex decision.
    let spike = SampleSet::new(
        vec![
            Point::new(vec![0.0, 0.0])?,
            Point::new(vec![1.0, 0.0])?,
            Point::new(vec![2.0, 0.0])?,
        ],
        vec![0.0, 1.0, 0.0],
    )?;
    println!();
    println!("concave spike on a line in the plane, eta = 0:");
    for i in 0..spike.len() {
        let poly = gamma_polyhedron_at(&spike, i, 0.0)?;
        let lp = polyhedron_nonempty(&poly, 1e-8)?;
        let fm = fm_nonempty(&poly)?;
        println!(
            "  sample {i}: simplex says {}, elimination says {}",
            lp.feasible, fm
        );
        assert_eq!(lp.feasible, fm);
    }
    Ok(())
}
