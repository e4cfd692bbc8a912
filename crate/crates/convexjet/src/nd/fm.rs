//! Exact Fourier–Motzkin elimination for feasibility of small systems.
//!
//! Deciding whether `{ x : a_i . x <= b_i }` is nonempty by eliminating one
//! variable at a time.  Each elimination pairs every lower bound with every
//! upper bound, so the row count can square per step — fine for the intended
//! role: an independent exact oracle, structurally unrelated to the simplex
//! solver, used to cross-check feasibility verdicts on systems with a handful
//! of variables and rows.

use num_rational::BigRational;
use num_traits::Zero;

/// Decides exactly whether `{ x in R^n : a_i . x <= b_i }` is nonempty.
pub(crate) fn feasible(n: usize, rows: &[(Vec<BigRational>, BigRational)]) -> bool {
    for (a, _) in rows {
        assert_eq!(a.len(), n, "row length mismatch");
    }
    let zero = BigRational::zero();
    let mut current: Vec<(Vec<BigRational>, BigRational)> = rows.to_vec();
    for var in 0..n {
        let mut pos: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut neg: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut next: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for row in current {
            if row.0[var] > zero {
                pos.push(row);
            } else if row.0[var] < zero {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        // Each (upper bound, lower bound) pair yields a row without `var`;
        // rows bounding `var` on one side only impose nothing once it is
        // free to move.
        for p in &pos {
            for q in &neg {
                let cp = -q.0[var].clone();
                let cq = p.0[var].clone();
                let mut a = Vec::with_capacity(n);
                for k in 0..n {
                    a.push(&p.0[k] * &cp + &q.0[k] * &cq);
                }
                debug_assert!(a[var].is_zero());
                let b = &p.1 * &cp + &q.1 * &cq;
                next.push((a, b));
            }
        }
        current = next;
    }
    current.iter().all(|(_, b)| *b >= zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(feasible(2, &[]));
    }

    #[test]
    fn one_dimensional_window() {
        // 1/7 <= x <= 1/3 is nonempty; 1/3 <= x <= 1/7 is not.
        let ok = vec![(vec![int(-1)], rat(-1, 7)), (vec![int(1)], rat(1, 3))];
        assert!(feasible(1, &ok));
        let bad = vec![(vec![int(-1)], rat(-1, 3)), (vec![int(1)], rat(1, 7))];
        assert!(!feasible(1, &bad));
    }

    #[test]
    fn boundary_touching_window_is_feasible() {
        let rows = vec![(vec![int(1)], int(5)), (vec![int(-1)], int(-5))];
        assert!(feasible(1, &rows));
    }

    #[test]
    fn two_dimensional_triangle_and_its_empty_shift() {
        // x >= 0, y >= 0, x + y <= 1: nonempty.
        let tri = vec![
            (vec![int(-1), int(0)], int(0)),
            (vec![int(0), int(-1)], int(0)),
            (vec![int(1), int(1)], int(1)),
        ];
        assert!(feasible(2, &tri));
        // Same cone but x + y <= -1: empty.
        let empty = vec![
            (vec![int(-1), int(0)], int(0)),
            (vec![int(0), int(-1)], int(0)),
            (vec![int(1), int(1)], int(-1)),
        ];
        assert!(!feasible(2, &empty));
    }

    #[test]
    fn redundant_rows_do_not_change_the_verdict() {
        let rows = vec![
            (vec![int(1), int(2)], int(4)),
            (vec![int(2), int(4)], int(8)),
            (vec![int(-1), int(0)], int(3)),
        ];
        assert!(feasible(2, &rows));
    }

    #[test]
    fn constant_contradiction_is_caught() {
        // A row with zero coefficients and negative rhs: 0 <= -1.
        let rows = vec![(vec![int(0), int(0)], int(-1))];
        assert!(!feasible(2, &rows));
    }
}
