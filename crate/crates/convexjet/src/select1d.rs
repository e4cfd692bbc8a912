//! One-dimensional jet selection: the exact feasibility test and constructive
//! gradient choice for convex C^{1,1} interpolation on the line.
//!
//! Given samples `x_1 < ... < x_N` with values `f_i` and a bound `M > 0`, the
//! algorithm decides whether a convex extension with M-Lipschitz derivative
//! exists and, if so, picks one slope per sample so that the resulting jet
//! family is pairwise compatible ([`crate::jet::wells_compatible`]) at `2M`
//! and ready for [`crate::pw1d::build_extension`].
//!
//! The decision runs on the consecutive divided differences
//! `D_i = (f_{i+1} - f_i)/(x_{i+1} - x_i)`:
//!
//! * the data must be in *convex order* (`D` nondecreasing), else no convex
//!   interpolant exists at any bound;
//! * at each interior sample the admissible slope interval is a sandwich
//!   between four envelope gradients — two one-sided chord envelopes
//!   (`left`, `right`) and two reachability bounds (`plus`, `minus`) obtained
//!   by transporting the neighbouring envelopes across one gap at curvature
//!   `M` ([`areflm_jet`] is the same transport for a single jet).  The data is
//!   feasible for `M` exactly when every sandwich is nonempty.
//!
//! Slopes are chosen as sandwich midpoints at interior samples; the endpoint
//! slopes are then forced by requiring the adjacent compatibility inequality
//! to hold with equality on the outward side.  Infeasibility is always pinned
//! to a sample index with the size of the violated gap.

use serde::Serialize;

use crate::jet::{ensure_finite, ensure_tol, wells_compatible, Jet, SampleSet, WhitneyField};
use crate::{Error, Result};

/// Consecutive divided differences of a one-dimensional sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDiffs {
    slopes: Vec<f64>,
}

impl DividedDiffs {
    /// Chord slopes: entry `k` is the slope over `[x_k, x_{k+1}]`.
    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Number of consecutive chords, `N - 1`.
    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    /// Never true: construction requires at least one chord.
    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }
}

/// Computes the consecutive divided differences of sorted 1-D samples.
///
/// # Examples
///
/// ```
/// use convexjet::{select1d::divided_differences, SampleSet};
/// let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
/// assert_eq!(divided_differences(&s).unwrap().slopes(), &[0.5, 1.5]);
/// ```
pub fn divided_differences(s: &SampleSet) -> Result<DividedDiffs> {
    crate::jet::check_dim(1, s.dim())?;
    if s.len() < 2 {
        return Err(Error::TooFew {
            what: "samples",
            need: 2,
            got: s.len(),
        });
    }
    let xs = s.xs();
    let fs = s.values();
    let slopes = (0..xs.len() - 1)
        .map(|i| (fs[i + 1] - fs[i]) / (xs[i + 1] - xs[i]))
        .collect();
    Ok(DividedDiffs { slopes })
}

/// Index of the first convex-order violation: the smallest `k` with
/// `D_{k+1} < D_k - tol`, if any.
pub fn first_order_violation(d: &DividedDiffs, tol: f64) -> Option<usize> {
    d.slopes.windows(2).position(|w| w[1] < w[0] - tol)
}

/// True when the divided differences are nondecreasing within `tol`.
///
/// This is the zeroth-order feasibility test: data out of convex order admits
/// no convex interpolant for any gradient bound.
pub fn convex_order_ok(d: &DividedDiffs, tol: f64) -> bool {
    first_order_violation(d, tol).is_none()
}

/// The reason a one-dimensional selection problem is infeasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InfeasibilityKind {
    /// Divided differences decrease: no convex interpolant at any bound.
    NotConvexOrder,
    /// The slope sandwich at an interior sample is empty at the given bound.
    SymgViolation,
    /// A selected family failed the pairwise compatibility re-check.
    WellsViolation,
}

/// A located infeasibility: its kind, the 1-based index of the sample where
/// it occurs, and the size of the violated gap (in slope units).
///
/// For [`InfeasibilityKind::NotConvexOrder`] the index names the middle
/// sample of the first decreasing chord pair; for the other kinds it names
/// the interior sample whose sandwich (or pair check) fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfeasibilityReport {
    pub kind: InfeasibilityKind,
    pub index: usize,
    pub gap: f64,
}

impl std::fmt::Display for InfeasibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self.kind {
            InfeasibilityKind::NotConvexOrder => "divided differences decrease",
            InfeasibilityKind::SymgViolation => "empty slope sandwich",
            InfeasibilityKind::WellsViolation => "pairwise compatibility fails",
        };
        write!(f, "{} at sample {} (gap {:e})", what, self.index, self.gap)
    }
}

/// The four envelope gradients at one sample, where defined.
///
/// `left` exists at all but the last sample, `right` at all but the first;
/// `plus` and `minus` (the reachability bounds transported across one gap at
/// curvature M) exist at interior samples only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub left: Option<f64>,
    pub right: Option<f64>,
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

/// A successful selection: the jet family, the envelopes that produced it,
/// and the bound it was computed for.
///
/// On success the slopes are nondecreasing (up to tolerance at degenerate
/// feasibility boundaries) and the family passes the pairwise compatibility
/// check at `2M` — that factor of two is the price of fixing slopes from
/// consecutive information only, and it is sharp.
#[derive(Debug, Clone, PartialEq)]
pub struct JetSelection {
    field: WhitneyField,
    envelopes: Vec<Envelope>,
    m: f64,
}

impl JetSelection {
    /// The selected jet family, one jet per sample in sample order.
    pub fn field(&self) -> &WhitneyField {
        &self.field
    }

    /// The envelopes at each sample, parallel to the samples.
    pub fn envelopes(&self) -> &[Envelope] {
        &self.envelopes
    }

    /// The bound the selection was computed for.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// The selected slopes, in sample order.
    pub fn slopes(&self) -> Vec<f64> {
        self.field.slopes()
    }
}

/// Outcome of a selection problem: mathematical infeasibility is a regular
/// answer, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    Feasible(JetSelection),
    Infeasible(InfeasibilityReport),
}

impl Selection {
    /// True for the feasible outcome.
    pub fn is_feasible(&self) -> bool {
        matches!(self, Selection::Feasible(_))
    }

    /// The selection, if feasible.
    pub fn into_feasible(self) -> Option<JetSelection> {
        match self {
            Selection::Feasible(sel) => Some(sel),
            Selection::Infeasible(_) => None,
        }
    }

    /// The infeasibility report, if infeasible.
    pub fn infeasibility(&self) -> Option<&InfeasibilityReport> {
        match self {
            Selection::Feasible(_) => None,
            Selection::Infeasible(r) => Some(r),
        }
    }
}

fn clamped_sqrt(two_m_times_rad: f64) -> f64 {
    two_m_times_rad.max(0.0).sqrt()
}

/// Selects one slope per sample so the jet family extends to a convex
/// function with derivative Lipschitz bound as close to `M` as the data
/// allows, or reports why none exists at `M`.
///
/// Preconditions: one-dimensional samples, `M > 0`.  A single sample gets
/// slope zero; two samples get the affine interpolant.  For `N >= 3` the
/// envelope sandwich test runs at every interior sample and the outcome is
/// exact: `Feasible` if and only if some convex extension with M-Lipschitz
/// derivative interpolates the data (up to `tol` at the feasibility
/// boundary).  The returned family is guaranteed pairwise compatible at `2M`
/// and is re-verified for that before returning; see [`wells_all_pairs`].
///
/// # Examples
///
/// ```
/// use convexjet::{select1d::select_jets, SampleSet};
/// let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
/// let sel = select_jets(&s, 1.0, 1e-9).unwrap().into_feasible().unwrap();
/// assert_eq!(sel.slopes(), vec![0.0, 1.0, 2.0]); // the slopes of x^2/2
/// ```
pub fn select_jets(s: &SampleSet, m: f64, tol: f64) -> Result<Selection> {
    crate::jet::check_dim(1, s.dim())?;
    ensure_finite(m, "bound m")?;
    ensure_tol(tol)?;
    if !(m > 0.0) {
        return Err(Error::BadParameter(format!("m must be > 0, got {m}")));
    }
    let n = s.len();
    let xs = s.xs();
    if n == 1 {
        let field = WhitneyField::for_samples(s, vec![vec![0.0]])?;
        return Ok(Selection::Feasible(JetSelection {
            field,
            envelopes: vec![Envelope {
                left: None,
                right: None,
                plus: None,
                minus: None,
            }],
            m,
        }));
    }
    let d = divided_differences(s)?;
    let dd = d.slopes();
    if let Some(k) = first_order_violation(&d, tol) {
        return Ok(Selection::Infeasible(InfeasibilityReport {
            kind: InfeasibilityKind::NotConvexOrder,
            index: k + 2,
            gap: dd[k] - dd[k + 1],
        }));
    }
    if n == 2 {
        let g = dd[0];
        let field = WhitneyField::for_samples(s, vec![vec![g], vec![g]])?;
        let envelopes = vec![
            Envelope {
                left: Some(g - 0.5 * m * (xs[1] - xs[0])),
                right: None,
                plus: None,
                minus: None,
            },
            Envelope {
                left: None,
                right: Some(g + 0.5 * m * (xs[1] - xs[0])),
                plus: None,
                minus: None,
            },
        ];
        return Ok(Selection::Feasible(JetSelection { field, envelopes, m }));
    }

    // One-sided chord envelopes.  left[i] is defined for i <= n-2, right[i]
    // for i >= 1; entries outside those ranges are unused.
    let mut left = vec![f64::NAN; n];
    let mut right = vec![f64::NAN; n];
    left[0] = dd[0] - 0.5 * m * (xs[1] - xs[0]);
    for i in 1..n - 1 {
        left[i] = dd[i - 1].max(dd[i] - 0.5 * m * (xs[i + 1] - xs[i]));
    }
    right[n - 1] = dd[n - 2] + 0.5 * m * (xs[n - 1] - xs[n - 2]);
    for i in 1..n - 1 {
        right[i] = dd[i].min(dd[i - 1] + 0.5 * m * (xs[i] - xs[i - 1]));
    }

    // Reachability bounds and the sandwich test at interior samples.
    let mut plus = vec![f64::NAN; n];
    let mut minus = vec![f64::NAN; n];
    let mut slopes = vec![0.0f64; n];
    for i in 1..n - 1 {
        let rad_p = (dd[i - 1] - left[i - 1]) * (xs[i] - xs[i - 1]);
        let rad_m = (right[i + 1] - dd[i]) * (xs[i + 1] - xs[i]);
        plus[i] = left[i - 1] + clamped_sqrt(2.0 * m * rad_p);
        minus[i] = right[i + 1] - clamped_sqrt(2.0 * m * rad_m);
        let lo = minus[i].max(dd[i - 1]);
        let hi = plus[i].min(dd[i]);
        if lo > hi + tol {
            return Ok(Selection::Infeasible(InfeasibilityReport {
                kind: InfeasibilityKind::SymgViolation,
                index: i + 1,
                gap: lo - hi,
            }));
        }
        slopes[i] = 0.5 * (lo + hi);
    }
    // Endpoint slopes: compatibility with the nearest interior jet holding
    // with equality on the outward side.
    slopes[0] = slopes[1] - clamped_sqrt(2.0 * m * (slopes[1] - dd[0]) * (xs[1] - xs[0]));
    slopes[n - 1] = slopes[n - 2]
        + clamped_sqrt(2.0 * m * (dd[n - 2] - slopes[n - 2]) * (xs[n - 1] - xs[n - 2]));

    let field = WhitneyField::for_samples(s, slopes.iter().map(|&g| vec![g]).collect())?;
    let check = wells_all_pairs(&field, 2.0 * m, tol)?;
    if !check.ok {
        let (i, _) = check.first_failure.unwrap_or((0, 0));
        return Ok(Selection::Infeasible(InfeasibilityReport {
            kind: InfeasibilityKind::WellsViolation,
            index: i + 1,
            gap: -check.min_residual,
        }));
    }
    let envelopes = (0..n)
        .map(|i| Envelope {
            left: (i <= n - 2).then(|| left[i]),
            right: (i >= 1).then(|| right[i]),
            plus: (i >= 1 && i <= n - 2).then(|| plus[i]),
            minus: (i >= 1 && i <= n - 2).then(|| minus[i]),
        })
        .collect();
    Ok(Selection::Feasible(JetSelection { field, envelopes, m }))
}

/// Transports a jet across one gap at curvature budget `m`, hitting a target
/// value with the compatibility inequality tight on the target side.
///
/// Given a jet at `x` and a target value `fy` at `y != x`, the admissible
/// window for the excess `t = fy - P_x(y)` is `0 <= t <= (m/2)(y - x)^2`:
/// below it the target sits under the tangent line, above it the curvature
/// budget cannot reach the target.  Inside the window the returned jet at `y`
/// has slope `grad P_x ± sqrt(2 m t)` (sign of `y - x`), its side of the
/// compatibility inequality holds with equality, and the other side holds
/// automatically.
///
/// Errors with [`Error::WindowViolation`] naming the violated side; excesses
/// within `tol` are clamped onto the window.
pub fn areflm_jet(jx: &Jet, y: f64, fy: f64, m: f64, tol: f64) -> Result<Jet> {
    crate::jet::check_dim(1, jx.dim())?;
    ensure_finite(y, "target coordinate")?;
    ensure_finite(fy, "target value")?;
    ensure_finite(m, "bound m")?;
    ensure_tol(tol)?;
    if !(m > 0.0) {
        return Err(Error::BadParameter(format!("m must be > 0, got {m}")));
    }
    let x = jx.base().x();
    if y == x {
        return Err(Error::BadParameter(
            "target coincides with the jet base".into(),
        ));
    }
    let gap = y - x;
    let t = fy - jx.eval(&crate::Point::one_d(y)?)?;
    let cap = 0.5 * m * gap * gap;
    if t < -tol {
        return Err(Error::WindowViolation {
            side: "lower",
            excess: -t,
        });
    }
    if t > cap + tol {
        return Err(Error::WindowViolation {
            side: "upper",
            excess: t - cap,
        });
    }
    let t = t.clamp(0.0, cap);
    let slope = jx.slope() + gap.signum() * (2.0 * m * t).sqrt();
    Jet::one_d(y, fy, slope)
}

/// Outcome of the exhaustive pairwise compatibility check over a jet family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairwiseReport {
    /// Every unordered pair is compatible at the bound.
    pub ok: bool,
    /// Every consecutive pair (in storage order) is compatible.  For sorted
    /// one-dimensional families with nondecreasing slopes, adjacent
    /// compatibility already implies `ok`; comparing the two flags exercises
    /// that reduction.
    pub adjacent_ok: bool,
    /// First failing pair (indices into the family), if any.
    pub first_failure: Option<(usize, usize)>,
    /// Smallest residual over all pairs (nonnegative when `ok` with `tol = 0`).
    pub min_residual: f64,
}

/// Checks every pair of the family for compatibility at `m`.
pub fn wells_all_pairs(field: &WhitneyField, m: f64, tol: f64) -> Result<PairwiseReport> {
    let n = field.len();
    let mut ok = true;
    let mut adjacent_ok = true;
    let mut first_failure = None;
    let mut min_residual = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let r = wells_compatible(field.jet(i), field.jet(j), m, tol)?;
            min_residual = min_residual.min(r.min_residual());
            if !r.ok {
                ok = false;
                if j == i + 1 {
                    adjacent_ok = false;
                }
                if first_failure.is_none() {
                    first_failure = Some((i, j));
                }
            }
        }
    }
    if n < 2 {
        min_residual = 0.0;
    }
    Ok(PairwiseReport {
        ok,
        adjacent_ok,
        first_failure,
        min_residual,
    })
}

/// Cap used by [`minimal_m`]: bounds above which the search declares the
/// problem infeasible for every finite budget.
const MINIMAL_M_CAP: f64 = 1.2e18; // 2^60 scale

/// Floor below which [`minimal_m`] reports an infimum of zero.
const MINIMAL_M_FLOOR: f64 = 1e-12;

/// The smallest bound for which [`select_jets`] succeeds, within a relative
/// bisection tolerance.
///
/// Returns `0.0` when every positive bound works (at most two samples, or
/// affine data), `f64::INFINITY` when no finite bound works (data out of
/// convex order, or an unconditionally empty sandwich), and otherwise a
/// certified-feasible bound within a factor `1 + rel_tol` of the infimum.
/// Feasibility is monotone in the bound, so bisection is exact here.
pub fn minimal_m(s: &SampleSet, rel_tol: f64) -> Result<f64> {
    crate::jet::check_dim(1, s.dim())?;
    ensure_finite(rel_tol, "relative tolerance")?;
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::BadParameter(format!(
            "relative tolerance must be in (0, 1), got {rel_tol}"
        )));
    }
    if s.len() <= 2 {
        return Ok(0.0);
    }
    let d = divided_differences(s)?;
    if !convex_order_ok(&d, crate::DEFAULT_TOL) {
        return Ok(f64::INFINITY);
    }
    let feasible = |m: f64| -> Result<bool> {
        Ok(select_jets(s, m, crate::DEFAULT_TOL)?.is_feasible())
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    if !feasible(hi)? {
        loop {
            lo = hi;
            hi *= 2.0;
            if hi > MINIMAL_M_CAP {
                return Ok(f64::INFINITY);
            }
            if feasible(hi)? {
                break;
            }
        }
    }
    while hi > MINIMAL_M_FLOOR && hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(if hi <= MINIMAL_M_FLOOR { 0.0 } else { hi })
}

/// Number of points above which subset scans require an explicit override.
pub const SCAN_GUARD: usize = 30;

/// Feasibility outcome for one subset in a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetOutcome1D {
    /// Ascending sample indices of the subset.
    pub indices: Vec<usize>,
    pub feasible: bool,
    /// Present when infeasible.
    pub report: Option<InfeasibilityReport>,
}

/// Report of a subset feasibility scan over one-dimensional data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport1D {
    pub m: f64,
    pub eta: f64,
    pub kmax: usize,
    /// One outcome per subset, in lexicographic order of the index vectors.
    pub subsets: Vec<SubsetOutcome1D>,
    pub all_feasible: bool,
    /// Position (in `subsets`) of the first infeasible subset, if any.
    pub worst: Option<usize>,
}

/// Enumerates the nonempty subsets of `{0, .., n-1}` of size at most `kmax`
/// in lexicographic order of their ascending index vectors.
pub(crate) fn lex_subsets(n: usize, kmax: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, kmax: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..n {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < kmax {
                rec(i + 1, n, kmax, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, kmax.min(n), &mut Vec::new(), &mut out);
    out
}

/// Total number of subsets a scan would visit, saturating.
pub(crate) fn subset_count(n: usize, kmax: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for k in 1..=kmax.min(n) {
        binom = binom
            .saturating_mul((n - k + 1) as u64)
            .checked_div(k as u64)
            .unwrap_or(u64::MAX);
        total = total.saturating_add(binom);
    }
    total
}

/// Scans every subset of at most `kmax` samples for feasibility at bound `m`
/// and strong-convexity modulus `eta`.
///
/// For `eta > 0` each subset is first reduced by the scaling transform
/// ([`crate::tilt::oned_sc_reduce`]) and then tested with [`select_jets`] at
/// `m`; for `eta = 0` the subset is tested directly.  Subsets are visited in
/// lexicographic order.  Refuses more than [`SCAN_GUARD`] points unless
/// `allow_large` is set.
pub fn finiteness_scan_1d(
    s: &SampleSet,
    m: f64,
    eta: f64,
    kmax: usize,
    allow_large: bool,
    tol: f64,
) -> Result<ScanReport1D> {
    crate::jet::check_dim(1, s.dim())?;
    ensure_tol(tol)?;
    if kmax == 0 {
        return Err(Error::BadParameter("kmax must be at least 1".into()));
    }
    if s.len() > SCAN_GUARD && !allow_large {
        return Err(Error::TooManyPoints {
            n: s.len(),
            limit: SCAN_GUARD,
        });
    }
    if !allow_large && subset_count(s.len(), kmax) > 5_000_000 {
        return Err(Error::BadParameter(format!(
            "scan would visit {} subsets; pass allow_large to proceed",
            subset_count(s.len(), kmax)
        )));
    }
    let mut subsets = Vec::new();
    let mut worst = None;
    for indices in lex_subsets(s.len(), kmax) {
        let sub = s.subset(&indices)?;
        let probe = if eta > 0.0 {
            crate::tilt::oned_sc_reduce(&sub, eta, m)?.0
        } else {
            sub
        };
        let outcome = select_jets(&probe, m, tol)?;
        let feasible = outcome.is_feasible();
        if !feasible && worst.is_none() {
            worst = Some(subsets.len());
        }
        subsets.push(SubsetOutcome1D {
            indices,
            feasible,
            report: outcome.infeasibility().copied(),
        });
    }
    Ok(ScanReport1D {
        m,
        eta,
        kmax,
        all_feasible: worst.is_none(),
        worst,
        subsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parabola() -> SampleSet {
        SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap()
    }

    /// Five equispaced samples of |x|: the sharp example where every subset
    /// of four is feasible for some finite bound but the full set never is.
    fn absval5() -> SampleSet {
        SampleSet::one_d(&[-2.0, -1.0, 0.0, 1.0, 2.0], &[2.0, 1.0, 0.0, 1.0, 2.0]).unwrap()
    }

    #[test]
    fn divided_differences_and_order() {
        let d = divided_differences(&parabola()).unwrap();
        assert_eq!(d.slopes(), &[0.5, 1.5]);
        assert!(convex_order_ok(&d, 0.0));
        let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.5]).unwrap();
        let d = divided_differences(&s).unwrap();
        assert_eq!(first_order_violation(&d, 0.0), Some(0));
        assert!(divided_differences(&SampleSet::one_d(&[0.0], &[0.0]).unwrap()).is_err());
    }

    #[test]
    fn select_recovers_parabola_slopes_exactly() {
        let sel = select_jets(&parabola(), 1.0, 1e-9)
            .unwrap()
            .into_feasible()
            .unwrap();
        assert_eq!(sel.slopes(), vec![0.0, 1.0, 2.0]);
        // At the interior sample all four envelopes pinch to the same slope.
        let env = sel.envelopes()[1];
        assert_eq!(env.left, Some(1.0));
        assert_eq!(env.right, Some(1.0));
        assert_eq!(env.plus, Some(1.0));
        assert_eq!(env.minus, Some(1.0));
        assert_eq!(sel.envelopes()[0].left, Some(0.0));
        assert_eq!(sel.envelopes()[2].right, Some(2.0));
    }

    #[test]
    fn select_reports_tight_sandwich_below_the_minimum() {
        // The parabola samples need m >= 1; at 0.9 the sandwich at the
        // interior sample misses by exactly 0.1.
        let out = select_jets(&parabola(), 0.9, 1e-9).unwrap();
        let r = out.infeasibility().copied().expect("must be infeasible");
        assert_eq!(r.kind, InfeasibilityKind::SymgViolation);
        assert_eq!(r.index, 2);
        assert!((r.gap - 0.1).abs() < 1e-12, "gap {}", r.gap);
    }

    #[test]
    fn select_flags_disorder_at_the_kink() {
        let s = SampleSet::one_d(
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
            &[-2.0, -1.0, 0.0, -1.0, -2.0],
        )
        .unwrap();
        let out = select_jets(&s, 10.0, 1e-9).unwrap();
        let r = out.infeasibility().copied().unwrap();
        assert_eq!(r.kind, InfeasibilityKind::NotConvexOrder);
        assert_eq!(r.index, 3);
    }

    #[test]
    fn absolute_value_five_points_is_infeasible_at_every_bound() {
        for m in [0.5, 1.0, 100.0, 1e6, 1e12] {
            let out = select_jets(&absval5(), m, 1e-9).unwrap();
            let r = out.infeasibility().copied().unwrap();
            assert_eq!(r.kind, InfeasibilityKind::SymgViolation, "m = {m}");
            assert_eq!(r.index, 3, "m = {m}");
            assert!((r.gap - 2.0).abs() < 1e-9, "m = {m}, gap = {}", r.gap);
        }
    }

    #[test]
    fn absolute_value_four_point_subsets_are_feasible() {
        let s = absval5();
        for drop in 0..5 {
            let indices: Vec<usize> = (0..5).filter(|&i| i != drop).collect();
            let sub = s.subset(&indices).unwrap();
            let m = minimal_m(&sub, 1e-6).unwrap();
            assert!(m.is_finite(), "dropping {drop} still infeasible");
            // Hand computation via the envelope formulas.  Dropping an
            // endpoint leaves the kink one gap from a forced chord slope:
            // the sandwich closes first at m = 4.  Dropping a middle point
            // widens that window to two gaps: m = 2.  Dropping the kink
            // itself leaves slopes (-1, 0, 1) over gaps (1, 2, 1); both
            // interior sandwiches close at m = 2/3.
            let expected = match drop {
                0 | 4 => 4.0,
                2 => 2.0 / 3.0,
                _ => 2.0,
            };
            assert!(
                (m - expected).abs() <= 1e-4 * expected,
                "dropping {drop}: minimal m = {m}, expected {expected}"
            );
            assert!(select_jets(&sub, m, 1e-9).unwrap().is_feasible());
        }
    }

    #[test]
    fn minimal_m_frozen_cases() {
        assert!((minimal_m(&parabola(), 1e-6).unwrap() - 1.0).abs() < 1e-4);
        let affine = SampleSet::one_d(&[0.0, 1.0, 2.0, 3.5], &[1.0, 3.0, 5.0, 8.0]).unwrap();
        assert_eq!(minimal_m(&affine, 1e-6).unwrap(), 0.0);
        let two = SampleSet::one_d(&[0.0, 1.0], &[0.0, 7.0]).unwrap();
        assert_eq!(minimal_m(&two, 1e-6).unwrap(), 0.0);
        assert_eq!(minimal_m(&absval5(), 1e-6).unwrap(), f64::INFINITY);
    }

    #[test]
    fn minimal_m_is_minimal() {
        // Just below the returned bound the problem must be infeasible.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let s = random_convex_samples(&mut rng, 6);
            let m = minimal_m(&s, 1e-6).unwrap();
            if !m.is_finite() || m == 0.0 {
                continue;
            }
            assert!(select_jets(&s, m, 1e-9).unwrap().is_feasible());
            assert!(!select_jets(&s, m * (1.0 - 1e-4), 0.0).unwrap().is_feasible());
        }
    }

    #[test]
    fn infeasible_verdicts_agree_with_random_search() {
        // When selection says "no jet family at m", a direct random search
        // over the chord sandwiches must come up empty as well.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let s = parabola();
        let d = divided_differences(&s).unwrap();
        let dd = d.slopes().to_vec();
        let m = 0.9;
        assert!(!select_jets(&s, m, 1e-9).unwrap().is_feasible());
        for _ in 0..2000 {
            // Any valid family has slope i inside [D_{i-1}, D_i] (outermost
            // bounds relaxed by the curvature budget across the gap).
            let g0 = rng.gen_range(dd[0] - m..=dd[0]);
            let g1 = rng.gen_range(dd[0]..=dd[1]);
            let g2 = rng.gen_range(dd[1]..=dd[1] + m);
            let field = WhitneyField::for_samples(
                &s,
                vec![vec![g0], vec![g1], vec![g2]],
            )
            .unwrap();
            assert!(
                !wells_all_pairs(&field, m, 0.0).unwrap().ok,
                "search found a family at m = {m}: {:?}",
                field.slopes()
            );
        }
    }

    #[test]
    fn areflm_reaches_target_with_equality() {
        let jx = Jet::one_d(0.0, 0.0, 0.0).unwrap();
        // Rightward transport at the window's upper edge: slope sqrt(2mt).
        let jy = areflm_jet(&jx, 1.0, 0.05, 0.1, 1e-9).unwrap();
        assert!((jy.slope() - 0.1).abs() < 1e-15);
        let r = wells_compatible(&jx, &jy, 0.1, 1e-9).unwrap();
        assert!(r.ok);
        assert!(r.residual_b.abs() < 1e-15);
        // Leftward transport from the two-point example's right jet.
        let jr = Jet::one_d(1.0, 0.05, 0.2).unwrap();
        let jl = areflm_jet(&jr, 0.0, 0.0, 1.0, 1e-9).unwrap();
        assert!(jl.slope() < jr.slope());
        let r = wells_compatible(&jr, &jl, 1.0, 1e-9).unwrap();
        assert!(r.ok);
        assert!(r.residual_b.abs() < 1e-15);
    }

    #[test]
    fn areflm_rejects_targets_outside_the_window() {
        let jx = Jet::one_d(0.0, 0.0, 0.0).unwrap();
        match areflm_jet(&jx, 1.0, -0.1, 1.0, 1e-9) {
            Err(Error::WindowViolation { side: "lower", excess }) => {
                assert!((excess - 0.1).abs() < 1e-15)
            }
            other => panic!("expected lower violation, got {other:?}"),
        }
        match areflm_jet(&jx, 1.0, 0.2, 0.1, 1e-9) {
            Err(Error::WindowViolation { side: "upper", excess }) => {
                assert!((excess - 0.15).abs() < 1e-15)
            }
            other => panic!("expected upper violation, got {other:?}"),
        }
        assert!(areflm_jet(&jx, 0.0, 0.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn all_pairs_report_shapes() {
        let sel = select_jets(&parabola(), 1.0, 1e-9)
            .unwrap()
            .into_feasible()
            .unwrap();
        let r = wells_all_pairs(sel.field(), 2.0, 1e-9).unwrap();
        assert!(r.ok && r.adjacent_ok);
        assert!(r.min_residual >= 0.0);
        // A decreasing-slope family fails, pinned to the first pair.
        let s = parabola();
        let bad = WhitneyField::for_samples(&s, vec![vec![2.0], vec![1.0], vec![0.0]]).unwrap();
        let r = wells_all_pairs(&bad, 2.0, 1e-9).unwrap();
        assert!(!r.ok && !r.adjacent_ok);
        assert_eq!(r.first_failure, Some((0, 1)));
        assert!(r.min_residual < 0.0);
    }

    #[test]
    fn scan_parabola_all_subsets_feasible() {
        let r = finiteness_scan_1d(&parabola(), 1.0, 0.0, 3, false, 1e-9).unwrap();
        assert_eq!(r.subsets.len(), 7);
        assert!(r.all_feasible);
        assert_eq!(r.worst, None);
        // Lexicographic order of the index vectors.
        assert_eq!(r.subsets[0].indices, vec![0]);
        assert_eq!(r.subsets[1].indices, vec![0, 1]);
        assert_eq!(r.subsets[2].indices, vec![0, 1, 2]);
        assert_eq!(r.subsets[3].indices, vec![0, 2]);
    }

    #[test]
    fn scan_absval_isolates_the_full_set() {
        let r = finiteness_scan_1d(&absval5(), 1000.0, 0.0, 5, false, 1e-9).unwrap();
        assert_eq!(r.subsets.len(), 31);
        let infeasible: Vec<&SubsetOutcome1D> =
            r.subsets.iter().filter(|o| !o.feasible).collect();
        assert_eq!(infeasible.len(), 1);
        assert_eq!(infeasible[0].indices, vec![0, 1, 2, 3, 4]);
        let rep = infeasible[0].report.unwrap();
        assert_eq!(rep.kind, InfeasibilityKind::SymgViolation);
        assert_eq!(rep.index, 3);
    }

    #[test]
    fn scan_guard_refuses_large_inputs() {
        let xs: Vec<f64> = (0..31).map(|i| i as f64).collect();
        let fs: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let s = SampleSet::one_d(&xs, &fs).unwrap();
        assert!(matches!(
            finiteness_scan_1d(&s, 10.0, 0.0, 2, false, 1e-9),
            Err(Error::TooManyPoints { n: 31, limit: 30 })
        ));
        assert!(finiteness_scan_1d(&s, 10.0, 0.0, 1, true, 1e-9).is_ok());
    }

    /// Random convex samples: sorted distinct abscissae and nondecreasing
    /// chord slopes with strictly increasing jitter.
    pub(super) fn random_convex_samples(rng: &mut ChaCha8Rng, n: usize) -> SampleSet {
        loop {
            let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            xs.sort_by(f64::total_cmp);
            if xs.windows(2).any(|w| w[1] - w[0] < 0.05) {
                continue;
            }
            let mut slopes: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
            slopes.sort_by(f64::total_cmp);
            let mut fs = vec![rng.gen_range(-2.0..2.0)];
            for i in 0..n - 1 {
                let f_next = fs[i] + slopes[i] * (xs[i + 1] - xs[i]);
                fs.push(f_next);
            }
            return SampleSet::one_d(&xs, &fs).unwrap();
        }
    }

    #[test]
    fn selected_fields_pass_the_doubled_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(3..9);
            let s = random_convex_samples(&mut rng, n);
            let m = minimal_m(&s, 1e-6).unwrap();
            if !m.is_finite() {
                continue;
            }
            for factor in [1.0, 1.7] {
                let m_run = (m * factor).max(1e-9);
                let out = select_jets(&s, m_run, 1e-9).unwrap();
                let sel = out.into_feasible().expect("feasible above the minimum");
                let slopes = sel.slopes();
                assert!(
                    slopes.windows(2).all(|w| w[1] >= w[0] - 1e-9),
                    "slopes not monotone: {slopes:?}"
                );
                let check = wells_all_pairs(sel.field(), 2.0 * m_run, 1e-9).unwrap();
                assert!(check.ok, "doubled-bound check failed: {check:?}");
            }
        }
    }

    proptest! {
        // Scaling values and bound by a power of two scales the selected
        // slopes bit-for-bit; the algorithm is built from exact-scaling
        // operations.
        #[test]
        fn prop_selection_scales_exactly(
            seed in 0u64..500,
            k in -3i32..4,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_convex_samples(&mut rng, 5);
            let lambda = (2.0f64).powi(k);
            let m = minimal_m(&s, 1e-6).unwrap();
            prop_assume!(m.is_finite() && m > 0.0);
            let scaled_fs: Vec<f64> = s.values().iter().map(|&f| lambda * f).collect();
            let scaled = SampleSet::one_d(&s.xs(), &scaled_fs).unwrap();
            let a = select_jets(&s, 1.5 * m, 1e-12).unwrap().into_feasible().unwrap();
            let b = select_jets(&scaled, lambda * (1.5 * m), 1e-12)
                .unwrap()
                .into_feasible()
                .unwrap();
            let sa: Vec<f64> = a.slopes().iter().map(|&g| lambda * g).collect();
            prop_assert_eq!(sa, b.slopes());
        }

        // Translating integer-grid data leaves the selected slopes unchanged
        // bit-for-bit: only coordinate differences enter the algorithm.
        #[test]
        fn prop_selection_translates_exactly(
            seed in 0u64..500,
            c in -1000i64..1000,
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 5usize;
            let mut xs: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..50)).collect();
            xs.sort_unstable();
            xs.dedup();
            prop_assume!(xs.len() >= 3);
            let mut slopes: Vec<f64> =
                (0..xs.len() - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
            slopes.sort_by(f64::total_cmp);
            let mut fs = vec![0.0f64];
            for i in 0..xs.len() - 1 {
                fs.push(fs[i] + slopes[i] * (xs[i + 1] - xs[i]) as f64);
            }
            let base: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
            let moved: Vec<f64> = xs.iter().map(|&x| (x + c) as f64).collect();
            let s0 = SampleSet::one_d(&base, &fs).unwrap();
            let s1 = SampleSet::one_d(&moved, &fs).unwrap();
            let m = minimal_m(&s0, 1e-6).unwrap();
            prop_assume!(m.is_finite() && m > 0.0);
            let a = select_jets(&s0, 1.5 * m, 1e-12).unwrap().into_feasible().unwrap();
            let b = select_jets(&s1, 1.5 * m, 1e-12).unwrap().into_feasible().unwrap();
            prop_assert_eq!(a.slopes(), b.slopes());
        }
    }
}
