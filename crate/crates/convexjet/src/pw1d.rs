//! Convex piecewise-quadratic functions on the line, and the explicit
//! construction of an interpolating extension from a compatible jet family.
//!
//! A [`ConvexPW1D`] is stored as its gradient profile: a strictly increasing
//! knot sequence with a nondecreasing gradient value at each knot.  Between
//! consecutive knots the gradient interpolates linearly, so the function is
//! quadratic there; beyond the first and last knot the gradient is constant,
//! so the tails are affine.  Function values follow by exact piecewise
//! integration from a single anchor `(x, F(x))`.
//!
//! [`build_extension`] turns a sorted, pairwise-compatible jet family into
//! such a function.  On each gap between consecutive samples the gradient
//! profile is flat at the left slope, climbs with slope exactly `M` over a
//! ramp of width `(g_b - g_a)/M`, and is flat again at the right slope; the
//! ramp offset is the unique choice that reproduces the value increment, and
//! it fits inside the gap precisely because the two compatibility inequalities
//! of the pair hold.  The result interpolates the data, matches the prescribed
//! slopes, and has gradient Lipschitz constant at most `M`.

use crate::jet::{ensure_finite, ensure_tol, wells_compatible, Jet, SampleSet, WhitneyField};
use crate::{Error, Result};

/// A convex, continuously differentiable, piecewise-quadratic function on R
/// with affine tails.
///
/// # Examples
///
/// ```
/// use convexjet::ConvexPW1D;
/// // Gradient profile of x^2/2 on [0, 2]: slope x at the knots 0, 1, 2.
/// let f = ConvexPW1D::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0], (0.0, 0.0)).unwrap();
/// assert_eq!(f.eval(1.5), 1.125);
/// assert_eq!(f.eval_grad(1.5), 1.5);
/// assert_eq!(f.eval(-1.0), 0.0); // flat left tail: gradient stays 0
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPW1D {
    knots: Vec<f64>,
    gvals: Vec<f64>,
    anchor: (f64, f64),
    /// Function values at the knots, integrated once from the anchor.
    vals: Vec<f64>,
}

impl ConvexPW1D {
    /// Creates a function from its gradient profile and one anchored value.
    ///
    /// `knots` must be strictly increasing, `gvals` nondecreasing and of the
    /// same length (at least one knot), and the anchor coordinate and value
    /// finite.  The anchor need not be a knot.
    pub fn new(knots: Vec<f64>, gvals: Vec<f64>, anchor: (f64, f64)) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::TooFew {
                what: "knots",
                need: 1,
                got: 0,
            });
        }
        if knots.len() != gvals.len() {
            return Err(Error::LengthMismatch {
                points: knots.len(),
                values: gvals.len(),
            });
        }
        for &k in &knots {
            ensure_finite(k, "knot")?;
        }
        for &g in &gvals {
            ensure_finite(g, "gradient value")?;
        }
        ensure_finite(anchor.0, "anchor coordinate")?;
        ensure_finite(anchor.1, "anchor value")?;
        for i in 1..knots.len() {
            if !(knots[i] > knots[i - 1]) {
                return Err(Error::BadParameter(format!(
                    "knots must be strictly increasing; knot {} = {} after {}",
                    i,
                    knots[i],
                    knots[i - 1]
                )));
            }
            if gvals[i] < gvals[i - 1] {
                return Err(Error::BadParameter(format!(
                    "gradient values must be nondecreasing; gval {} = {} after {}",
                    i,
                    gvals[i],
                    gvals[i - 1]
                )));
            }
        }
        // Antiderivative of the profile with A(knots[0]) = 0, exact for a
        // piecewise-linear integrand, then shifted so the anchor matches.
        let mut acc = Vec::with_capacity(knots.len());
        acc.push(0.0);
        for i in 1..knots.len() {
            let h = knots[i] - knots[i - 1];
            acc.push(acc[i - 1] + 0.5 * (gvals[i] + gvals[i - 1]) * h);
        }
        let mut f = ConvexPW1D {
            knots,
            gvals,
            anchor,
            vals: acc,
        };
        let at_anchor = f.raw_eval(anchor.0);
        for v in &mut f.vals {
            *v += anchor.1 - at_anchor;
        }
        Ok(f)
    }

    /// Knot coordinates, strictly increasing.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Gradient values at the knots, nondecreasing.
    pub fn gvals(&self) -> &[f64] {
        &self.gvals
    }

    /// The anchor `(x, F(x))` the values were integrated from.
    pub fn anchor(&self) -> (f64, f64) {
        self.anchor
    }

    /// Function values at the knots.
    pub fn knot_values(&self) -> &[f64] {
        &self.vals
    }

    /// Index of the piece containing `x`: the largest `k` with
    /// `knots[k] <= x`, clamped to a valid left endpoint.
    fn piece(&self, x: f64) -> usize {
        let idx = self.knots.partition_point(|&k| k <= x);
        // idx is the first knot beyond x; the piece starts one earlier.
        idx.saturating_sub(1).min(self.knots.len().saturating_sub(2))
    }

    /// Evaluates the function using the current `vals` offsets.
    fn raw_eval(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if n == 1 || x <= self.knots[0] {
            return self.vals[0] + self.gvals[0] * (x - self.knots[0]);
        }
        if x >= self.knots[n - 1] {
            return self.vals[n - 1] + self.gvals[n - 1] * (x - self.knots[n - 1]);
        }
        let k = self.piece(x);
        let h = self.knots[k + 1] - self.knots[k];
        let slope = (self.gvals[k + 1] - self.gvals[k]) / h;
        let dx = x - self.knots[k];
        self.vals[k] + self.gvals[k] * dx + 0.5 * slope * dx * dx
    }

    /// Evaluates `F(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.raw_eval(x)
    }

    /// Evaluates the derivative `F'(x)`: the piecewise-linear gradient
    /// profile, constant beyond the outermost knots.
    pub fn eval_grad(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if n == 1 || x <= self.knots[0] {
            return self.gvals[0];
        }
        if x >= self.knots[n - 1] {
            return self.gvals[n - 1];
        }
        let k = self.piece(x);
        let h = self.knots[k + 1] - self.knots[k];
        let slope = (self.gvals[k + 1] - self.gvals[k]) / h;
        self.gvals[k] + slope * (x - self.knots[k])
    }

    /// The gradient-Lipschitz constant: the steepest slope of the gradient
    /// profile over the knot pieces (zero for a single knot).
    pub fn lip_grad(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..self.knots.len() {
            let h = self.knots[i] - self.knots[i - 1];
            worst = worst.max((self.gvals[i] - self.gvals[i - 1]) / h);
        }
        worst
    }

    /// The first-order jet of the function at `x`.
    pub fn jet_at(&self, x: f64) -> Result<Jet> {
        Jet::one_d(x, self.eval(x), self.eval_grad(x))
    }
}

/// Builds the convex piecewise-quadratic extension of a compatible jet family.
///
/// `field` must be anchored on the one-dimensional `samples` (jet `i` based at
/// sample `i` with the sample value) and pairwise compatible at bound `m`
/// ([`wells_compatible`]); slopes are then automatically nondecreasing.  The
/// returned function interpolates every sample with the prescribed slope and
/// satisfies `lip_grad <= m` (up to tolerance effects at degenerate inputs).
///
/// On the gap `[x_i, x_{i+1}]` the gradient ramps from `g_a` to `g_b` with
/// slope exactly `m` over a window of width `l = (g_b - g_a)/m`, placed at
/// offset `s = (g_b (x_{i+1} - x_i) - (f_{i+1} - f_i) - (g_b - g_a)^2/(2m)) /
/// (g_b - g_a)` from the left end; the offset lies inside the gap exactly
/// because both compatibility residuals of the pair are nonnegative (side (a)
/// gives `s >= 0`, side (b) gives `s <= gap - l`).
pub fn build_extension(
    field: &WhitneyField,
    samples: &SampleSet,
    m: f64,
    tol: f64,
) -> Result<ConvexPW1D> {
    crate::jet::check_dim(1, samples.dim())?;
    ensure_finite(m, "bound m")?;
    ensure_tol(tol)?;
    if !(m > 0.0) {
        return Err(Error::BadParameter(format!("m must be > 0, got {m}")));
    }
    field.check_anchored(samples, tol)?;
    for i in 0..field.len() {
        for j in (i + 1)..field.len() {
            let r = wells_compatible(field.jet(i), field.jet(j), m, tol)?;
            if !r.ok {
                return Err(Error::WellsFailure {
                    i,
                    j,
                    m,
                    residual: r.min_residual(),
                });
            }
        }
    }

    let xs = samples.xs();
    let fs = samples.values();
    let raw = field.slopes();
    // Compatibility forces nondecreasing slopes up to tolerance; snap the
    // tolerance-level inversions so the profile invariant holds exactly.
    let mut slopes = raw.clone();
    for i in 1..slopes.len() {
        if slopes[i] < slopes[i - 1] {
            if slopes[i - 1] - slopes[i] > tol {
                return Err(Error::Inconsistent(format!(
                    "slopes decrease by {:e} between samples {} and {}",
                    slopes[i - 1] - slopes[i],
                    i - 1,
                    i
                )));
            }
            slopes[i] = slopes[i - 1];
        }
    }

    let mut knots = vec![xs[0]];
    let mut gvals = vec![slopes[0]];
    let push = |knots: &mut Vec<f64>, gvals: &mut Vec<f64>, x: f64, g: f64| {
        if x > *knots.last().unwrap() {
            knots.push(x);
            gvals.push(g);
        }
    };
    for i in 0..xs.len() - 1 {
        let (ga, gb) = (slopes[i], slopes[i + 1]);
        let gap = xs[i + 1] - xs[i];
        let df = fs[i + 1] - fs[i];
        let delta = gb - ga;
        if delta > 0.0 {
            let ramp = delta / m;
            // The two pair residuals at m, recomputed in interval form.
            let res_a = gb * gap - df - delta * delta / (2.0 * m);
            let res_b = df - ga * gap - delta * delta / (2.0 * m);
            if res_a < -tol || res_b < -tol {
                return Err(Error::Inconsistent(format!(
                    "interval {i} residuals ({res_a:e}, {res_b:e}) negative despite \
                     pairwise compatibility"
                )));
            }
            let s = (res_a / delta).clamp(0.0, (gap - ramp).max(0.0));
            let t_end = (s + ramp).min(gap);
            push(&mut knots, &mut gvals, xs[i] + s, ga);
            push(&mut knots, &mut gvals, xs[i] + t_end, gb);
        }
        push(&mut knots, &mut gvals, xs[i + 1], slopes[i + 1]);
    }

    let ext = ConvexPW1D::new(knots, gvals, (xs[0], fs[0]))?;
    for (i, &x) in xs.iter().enumerate() {
        let drift = ext.eval(x) - fs[i];
        if drift.abs() > tol.max(1e-12) {
            return Err(Error::Inconsistent(format!(
                "accumulated value at sample {i} drifts from the data by {drift:e}"
            )));
        }
    }
    Ok(ext)
}

/// Builds an extension at the tightest constant the field itself certifies.
///
/// [`build_extension`] uses its budget as the literal ramp slope, so calling
/// it directly at a generous budget produces steeper ramps than the data
/// needs.  This wrapper measures the smallest constant at which every jet
/// pair of `field` is compatible and builds there, falling back to
/// `fallback_m` for affine fields (tight constant zero).  The result has the
/// least gradient-Lipschitz constant this construction can achieve; for a
/// field produced by jet selection at `m` the tight constant never exceeds
/// `2m`.
pub fn build_extension_tight(
    field: &WhitneyField,
    samples: &SampleSet,
    fallback_m: f64,
    tol: f64,
) -> Result<ConvexPW1D> {
    ensure_finite(fallback_m, "fallback budget")?;
    if fallback_m <= 0.0 {
        return Err(Error::BadParameter(format!(
            "fallback budget must be positive, got {fallback_m}"
        )));
    }
    let budget = match crate::jet::tight_wells_constant(field)? {
        Some(t) if t > 0.0 => t,
        Some(_) => fallback_m,
        None => {
            return Err(Error::Inconsistent(
                "field admits no finite compatibility constant".into(),
            ))
        }
    };
    build_extension(field, samples, budget, tol)
}

/// Verification report for a built extension against its data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionReport {
    /// Largest `|F(x_i) - f_i|` over the samples.
    pub max_interp_residual: f64,
    /// The residual is within tolerance.
    pub interp_ok: bool,
    /// The stored gradient profile is nondecreasing (convexity).
    pub grads_nondecreasing: bool,
    /// Measured gradient-Lipschitz constant of the profile.
    pub lip_grad: f64,
    /// `lip_grad <= m + tol`.
    pub lip_ok: bool,
    /// For `eta > 0`: the tilted profile `gvals[k] - eta * knots[k]` is
    /// nondecreasing within tolerance, certifying eta-strong convexity on the
    /// knot hull.  `None` when `eta = 0` was requested.
    pub tilt_ok: Option<bool>,
    /// The jets of F at the sample points are pairwise compatible at `m`.
    pub wells_ok: bool,
    /// Smallest pairwise compatibility residual among the sample jets.
    pub min_wells_residual: f64,
}

impl ExtensionReport {
    /// All checks passed.
    pub fn ok(&self) -> bool {
        self.interp_ok
            && self.grads_nondecreasing
            && self.lip_ok
            && self.tilt_ok.unwrap_or(true)
            && self.wells_ok
    }
}

/// Verifies a piecewise-quadratic extension against sample data and bounds.
///
/// Checks interpolation of the samples, monotonicity of the gradient profile,
/// the gradient-Lipschitz budget `m`, pairwise compatibility of the sample
/// jets at `m`, and — when `eta > 0` — eta-strong convexity on the knot hull
/// via the tilted profile `gvals[k] - eta * knots[k]`.
pub fn verify_extension(
    f: &ConvexPW1D,
    samples: &SampleSet,
    m: f64,
    eta: f64,
    tol: f64,
) -> Result<ExtensionReport> {
    crate::jet::check_dim(1, samples.dim())?;
    ensure_finite(m, "bound m")?;
    ensure_finite(eta, "modulus eta")?;
    ensure_tol(tol)?;
    if !(m > 0.0) || !(eta >= 0.0) {
        return Err(Error::BadParameter(format!(
            "need m > 0 and eta >= 0, got m = {m}, eta = {eta}"
        )));
    }
    let xs = samples.xs();
    let mut max_resid = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        max_resid = max_resid.max((f.eval(x) - samples.value(i)).abs());
    }
    let grads_nondecreasing = f.gvals().windows(2).all(|w| w[1] >= w[0]);
    let lip = f.lip_grad();
    let tilt_ok = if eta > 0.0 {
        let ok = (1..f.knots().len()).all(|k| {
            let before = f.gvals()[k - 1] - eta * f.knots()[k - 1];
            let after = f.gvals()[k] - eta * f.knots()[k];
            after >= before - tol
        });
        Some(ok)
    } else {
        None
    };
    let jets: Vec<Jet> = xs
        .iter()
        .map(|&x| f.jet_at(x))
        .collect::<Result<Vec<_>>>()?;
    let mut wells_ok = true;
    let mut min_resid = f64::INFINITY;
    for i in 0..jets.len() {
        for j in (i + 1)..jets.len() {
            let r = wells_compatible(&jets[i], &jets[j], m, tol)?;
            wells_ok &= r.ok;
            min_resid = min_resid.min(r.min_residual());
        }
    }
    if jets.len() < 2 {
        min_resid = 0.0;
    }
    Ok(ExtensionReport {
        max_interp_residual: max_resid,
        interp_ok: max_resid <= tol.max(1e-12),
        grads_nondecreasing,
        lip_grad: lip,
        lip_ok: lip <= m + tol,
        tilt_ok,
        wells_ok,
        min_wells_residual: min_resid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::WhitneyField;
    use proptest::prelude::*;

    fn half_square() -> ConvexPW1D {
        ConvexPW1D::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0], (0.0, 0.0)).unwrap()
    }

    #[test]
    fn eval_quadratic_pieces_and_tails() {
        let f = half_square();
        assert_eq!(f.knot_values(), &[0.0, 0.5, 2.0]);
        assert_eq!(f.eval(1.5), 1.125);
        assert_eq!(f.eval_grad(1.5), 1.5);
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.eval(2.0), 2.0);
        // Left tail is flat (gradient 0), right tail affine with slope 2.
        assert_eq!(f.eval(-3.0), 0.0);
        assert_eq!(f.eval_grad(-3.0), 0.0);
        assert_eq!(f.eval(3.0), 4.0);
        assert_eq!(f.eval_grad(3.0), 2.0);
        assert_eq!(f.lip_grad(), 1.0);
    }

    #[test]
    fn anchor_off_the_knots() {
        let f = ConvexPW1D::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0], (1.0, 10.0)).unwrap();
        assert!((f.eval(1.0) - 10.0).abs() < 1e-15);
        assert!((f.eval(0.0) - 9.5).abs() < 1e-15);
        // Anchoring in a tail also works.
        let g = ConvexPW1D::new(vec![1.0], vec![2.0], (0.0, 0.0)).unwrap();
        assert_eq!(g.eval(0.0), 0.0);
        assert_eq!(g.eval(3.0), 6.0);
        assert_eq!(g.eval_grad(-5.0), 2.0);
    }

    #[test]
    fn constructor_rejects_bad_profiles() {
        assert!(ConvexPW1D::new(vec![], vec![], (0.0, 0.0)).is_err());
        assert!(ConvexPW1D::new(vec![0.0, 0.0], vec![0.0, 1.0], (0.0, 0.0)).is_err());
        assert!(ConvexPW1D::new(vec![0.0, 1.0], vec![1.0, 0.0], (0.0, 0.0)).is_err());
        assert!(ConvexPW1D::new(vec![0.0, 1.0], vec![0.0], (0.0, 0.0)).is_err());
        assert!(ConvexPW1D::new(vec![0.0], vec![f64::NAN], (0.0, 0.0)).is_err());
    }

    #[test]
    fn jet_at_is_consistent() {
        let f = half_square();
        let j = f.jet_at(1.25).unwrap();
        assert_eq!(j.base().x(), 1.25);
        assert_eq!(j.value(), f.eval(1.25));
        assert_eq!(j.slope(), 1.25);
    }

    #[test]
    fn build_recovers_half_square_exactly() {
        let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
        let field = WhitneyField::for_samples(&s, vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let ext = build_extension(&field, &s, 1.0, 1e-9).unwrap();
        assert_eq!(ext.knots(), &[0.0, 1.0, 2.0]);
        assert_eq!(ext.gvals(), &[0.0, 1.0, 2.0]);
        let mut worst = 0.0f64;
        for k in 0..=1000 {
            let x = 2.0 * k as f64 / 1000.0;
            worst = worst.max((ext.eval(x) - 0.5 * x * x).abs());
        }
        assert!(worst <= 1e-12, "max deviation {worst}");
        let report = verify_extension(&ext, &s, 1.0, 0.0, 1e-9).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.lip_grad, 1.0);
    }

    #[test]
    fn build_places_the_ramp_by_the_value_increment() {
        // Two-point example: slopes 0 and 0.2 at unit distance, df = 0.05.
        // The ramp has width 0.2 and must start at s = 0.65.
        let s = SampleSet::one_d(&[0.0, 1.0], &[0.0, 0.05]).unwrap();
        let field = WhitneyField::for_samples(&s, vec![vec![0.0], vec![0.2]]).unwrap();
        let ext = build_extension(&field, &s, 1.0, 1e-9).unwrap();
        assert_eq!(ext.knots().len(), 4);
        assert!((ext.knots()[1] - 0.65).abs() < 1e-12);
        assert!((ext.knots()[2] - 0.85).abs() < 1e-12);
        assert_eq!(ext.gvals(), &[0.0, 0.0, 0.2, 0.2]);
        assert!((ext.eval(1.0) - 0.05).abs() < 1e-12);
        // The ramp really runs at slope M.
        assert!((ext.lip_grad() - 1.0).abs() < 1e-12);
        assert!((ext.eval_grad(0.75) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn build_handles_affine_data() {
        let s = SampleSet::one_d(&[0.0, 1.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        let field =
            WhitneyField::for_samples(&s, vec![vec![1.0], vec![1.0], vec![1.0]]).unwrap();
        let ext = build_extension(&field, &s, 5.0, 1e-9).unwrap();
        assert_eq!(ext.lip_grad(), 0.0);
        assert_eq!(ext.eval(2.0), 3.0);
        assert_eq!(ext.eval(-1.0), 0.0);
    }

    #[test]
    fn build_rejects_incompatible_budget() {
        let s = SampleSet::one_d(&[0.0, 1.0], &[0.0, 0.05]).unwrap();
        let field = WhitneyField::for_samples(&s, vec![vec![0.0], vec![0.2]]).unwrap();
        // The pair needs M >= 0.4; a budget of 0.3 must be refused.
        match build_extension(&field, &s, 0.3, 1e-9) {
            Err(Error::WellsFailure { i: 0, j: 1, .. }) => {}
            other => panic!("expected WellsFailure, got {other:?}"),
        }
    }

    #[test]
    fn build_rejects_misanchored_field() {
        let s = SampleSet::one_d(&[0.0, 1.0], &[0.0, 0.05]).unwrap();
        let jets = vec![
            Jet::one_d(0.0, 0.5, 0.0).unwrap(),
            Jet::one_d(1.0, 0.05, 0.2).unwrap(),
        ];
        let field = WhitneyField::new(jets).unwrap();
        assert!(matches!(
            build_extension(&field, &s, 1.0, 1e-9),
            Err(Error::AnchorMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn verify_flags_lip_overrun() {
        let f = half_square();
        let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
        let tight = verify_extension(&f, &s, 0.5, 0.0, 1e-9).unwrap();
        assert!(!tight.lip_ok);
        assert!(!tight.ok());
        let loose = verify_extension(&f, &s, 2.0, 0.0, 1e-9).unwrap();
        assert!(loose.ok());
    }

    #[test]
    fn verify_tilt_certificate() {
        // x^2/2 profile is 0.4-strongly convex on the hull but not 2-strongly.
        let f = half_square();
        let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
        let r = verify_extension(&f, &s, 1.0, 0.4, 1e-9).unwrap();
        assert_eq!(r.tilt_ok, Some(true));
        let r = verify_extension(&f, &s, 1.0, 2.0, 1e-9).unwrap();
        assert_eq!(r.tilt_ok, Some(false));
        assert!(!r.ok());
    }

    /// Random admissible gradient profile: sorted distinct knots, sorted gvals.
    fn profile_strategy() -> impl Strategy<Value = ConvexPW1D> {
        (2usize..7).prop_flat_map(|n| {
            (
                proptest::collection::vec(-5.0f64..5.0, n),
                proptest::collection::vec(-5.0f64..5.0, n),
                -5.0f64..5.0,
                -5.0f64..5.0,
            )
                .prop_filter_map("knots too close", |(mut ks, mut gs, ax, av)| {
                    ks.sort_by(f64::total_cmp);
                    gs.sort_by(f64::total_cmp);
                    if ks.windows(2).any(|w| w[1] - w[0] < 1e-3) {
                        return None;
                    }
                    Some(ConvexPW1D::new(ks, gs, (ax, av)).unwrap())
                })
        })
    }

    proptest! {
        // Midpoint convexity, gradient monotonicity, and the Lipschitz bound
        // hold everywhere, tails included.
        #[test]
        fn prop_eval_is_convex_and_lipschitz(
            f in profile_strategy(),
            a in -8.0f64..8.0,
            b in -8.0f64..8.0,
        ) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let mid = 0.5 * (lo + hi);
            prop_assert!(f.eval(mid) <= 0.5 * (f.eval(lo) + f.eval(hi)) + 1e-9);
            prop_assert!(f.eval_grad(lo) <= f.eval_grad(hi) + 1e-12);
            let lip = f.lip_grad();
            prop_assert!(
                (f.eval_grad(hi) - f.eval_grad(lo)).abs() <= lip * (hi - lo) + 1e-9
            );
            // The jet at any probe minorizes the function (convexity again).
            let j = f.jet_at(lo).unwrap();
            prop_assert!(j.eval(&crate::Point::one_d(hi).unwrap()).unwrap() <= f.eval(hi) + 1e-9);
        }
    }
}
