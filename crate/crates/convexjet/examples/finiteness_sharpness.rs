//! Why subset tests of fewer than five points cannot certify extendability.
//!
//! A finiteness principle for convex C^{1,1} interpolation would say: if
//! every small subset of the data extends, the whole set does (with a
//! controlled loss in the bound).  The subset size needed is five — and
//! |x| on {-2, -1, 0, 1, 2} is the witness that four is not enough: every
//! four-point subset extends at some finite bound, the full set at none.

use convexjet::jet::SampleSet;
use convexjet::select1d::finiteness_scan_1d;
use convexjet::DEFAULT_TOL;

fn main() -> convexjet::Result<()> {
    let s = SampleSet::one_d(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[2.0, 1.0, 0.0, 1.0, 2.0])?;
    let m = 1e6; // generous: the obstruction survives every bound

    for kmax in 1..=5 {
        let report = finiteness_scan_1d(&s, m, 0.0, kmax, false, DEFAULT_TOL)?;
        let infeasible = report.subsets.iter().filter(|o| !o.feasible).count();
        println!(
            "kmax = {kmax}: {} subsets, {} infeasible => {}",
            report.subsets.len(),
            infeasible,
            if report.all_feasible { "all pass" } else { "obstructed" }
        );
        if let Some(worst) = report.worst {
            let bad = &report.subsets[worst];
            println!(
                "  first failure on samples {:?}: {}",
                bad.indices,
                bad.report.expect("infeasible subsets carry a report")
            );
        }
    }

    println!();
    println!("the jump from kmax = 4 to kmax = 5 is exactly the sharpness of");
    println!("the finiteness constant: five-point tests are unavoidable.");
    Ok(())
}
