//! Jets, Wells compatibility, and constraint-set membership.
//!
//! A *jet* is a first-order Taylor polynomial anchored at a base point,
//! `P(y) = value + <gradient, y - base>`.  A family of jets, one per sample
//! point, is the unknown of every problem in this crate: the data fixes the
//! values, and the question is whether the gradients can be chosen so that the
//! family comes from a single convex C^{1,1} function.
//!
//! Consistency of a pair of jets is a symmetric two-sided inequality
//! ([`wells_compatible`]): jets P_x, P_y anchored at x, y are compatible for
//! the gradient-Lipschitz bound M > 0 when
//!
//! ```text
//! P_x(x) - P_y(x) >= |grad P_x - grad P_y|^2 / (2M)     (side a)
//! P_y(y) - P_x(y) >= |grad P_x - grad P_y|^2 / (2M)     (side b)
//! ```
//!
//! A finite jet family extends to a convex function with M-Lipschitz gradient
//! exactly when every pair is compatible, so "all pairs compatible" is the
//! certificate that the rest of the crate constructs or refutes.

use crate::{Error, Result};

pub(crate) fn ensure_finite(x: f64, what: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

pub(crate) fn ensure_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::BadParameter(format!(
            "tolerance must be finite and nonnegative, got {tol}"
        )))
    }
}

/// Difference `a - b` of two coordinate slices of equal length.
pub(crate) fn vsub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Euclidean inner product.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared Euclidean norm.
pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

/// A point of R^n, validated finite and nonempty at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Creates a point from its coordinates.
    ///
    /// Errors if the coordinate vector is empty or contains a non-finite
    /// entry.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::TooFew {
                what: "coordinates",
                need: 1,
                got: 0,
            });
        }
        for &c in &coords {
            ensure_finite(c, "coordinate")?;
        }
        Ok(Point { coords })
    }

    /// Creates a one-dimensional point.
    pub fn one_d(x: f64) -> Result<Self> {
        Point::new(vec![x])
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate slice.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The single coordinate of a one-dimensional point.
    ///
    /// # Panics
    ///
    /// Panics if the point is not one-dimensional.
    pub fn x(&self) -> f64 {
        assert_eq!(self.coords.len(), 1, "Point::x on a point of dim != 1");
        self.coords[0]
    }

    /// Euclidean distance to another point of the same dimension.
    pub fn dist(&self, other: &Point) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(norm2(&vsub(&self.coords, &other.coords)).sqrt())
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, got })
    }
}

/// Scattered sample data: distinct points with one value each.
///
/// Invariants established at construction: all points share one dimension and
/// are pairwise distinct (minimum pairwise distance strictly positive), all
/// values are finite, and in dimension one the samples are stored sorted by
/// strictly increasing coordinate (input in any order is sorted jointly with
/// its values).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    dim: usize,
    points: Vec<Point>,
    values: Vec<f64>,
}

impl SampleSet {
    /// Creates a sample set from parallel point and value vectors.
    pub fn new(points: Vec<Point>, values: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFew {
                what: "sample points",
                need: 1,
                got: 0,
            });
        }
        if points.len() != values.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                values: values.len(),
            });
        }
        let dim = points[0].dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        for &v in &values {
            ensure_finite(v, "sample value")?;
        }
        let (points, values) = if dim == 1 {
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_by(|&i, &j| points[i].coords[0].total_cmp(&points[j].coords[0]));
            let sorted_p: Vec<Point> = order.iter().map(|&i| points[i].clone()).collect();
            let sorted_v: Vec<f64> = order.iter().map(|&i| values[i]).collect();
            for k in 1..sorted_p.len() {
                if sorted_p[k].coords[0] <= sorted_p[k - 1].coords[0] {
                    return Err(Error::DuplicatePoint {
                        i: order[k - 1],
                        j: order[k],
                    });
                }
            }
            (sorted_p, sorted_v)
        } else {
            for i in 0..points.len() {
                for j in (i + 1)..points.len() {
                    if points[i].coords == points[j].coords {
                        return Err(Error::DuplicatePoint { i, j });
                    }
                }
            }
            (points, values)
        };
        Ok(SampleSet {
            dim,
            points,
            values,
        })
    }

    /// Creates a one-dimensional sample set from coordinates and values.
    ///
    /// # Examples
    ///
    /// ```
    /// use convexjet::SampleSet;
    /// let s = SampleSet::one_d(&[2.0, 0.0, 1.0], &[2.0, 0.0, 0.5]).unwrap();
    /// assert_eq!(s.xs(), vec![0.0, 1.0, 2.0]); // stored sorted
    /// ```
    pub fn one_d(xs: &[f64], fs: &[f64]) -> Result<Self> {
        let points = xs
            .iter()
            .map(|&x| Point::one_d(x))
            .collect::<Result<Vec<_>>>()?;
        SampleSet::new(points, fs.to_vec())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the set holds no samples (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sample points, sorted by coordinate in dimension one.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Sample values, parallel to [`points`](Self::points).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `i`-th sample point.
    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// The `i`-th sample value.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Coordinates as a plain vector, for one-dimensional sets.
    ///
    /// # Panics
    ///
    /// Panics if the set is not one-dimensional.
    pub fn xs(&self) -> Vec<f64> {
        assert_eq!(self.dim, 1, "SampleSet::xs on a set of dim != 1");
        self.points.iter().map(|p| p.coords[0]).collect()
    }

    /// Index of a point equal (coordinate-wise, exactly) to `p`.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q.coords == p.coords)
    }

    /// The sub-sample-set at the given indices (need not be sorted; must be
    /// distinct and in range).
    pub fn subset(&self, indices: &[usize]) -> Result<SampleSet> {
        for &i in indices {
            if i >= self.len() {
                return Err(Error::BadParameter(format!(
                    "subset index {i} out of range for {} samples",
                    self.len()
                )));
            }
        }
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let values = indices.iter().map(|&i| self.values[i]).collect();
        SampleSet::new(points, values)
    }
}

/// A first-order jet: the affine polynomial `P(y) = value + <gradient, y - base>`.
///
/// # Examples
///
/// ```
/// use convexjet::{Jet, Point};
/// let j = Jet::one_d(0.5, 1.0, 2.0).unwrap();
/// let y = Point::one_d(2.0).unwrap();
/// assert_eq!(j.eval(&y).unwrap(), 4.0); // 1 + 2 * (2 - 0.5)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: Point,
    value: f64,
    gradient: Vec<f64>,
}

impl Jet {
    /// Creates a jet anchored at `base` with the given value and gradient.
    ///
    /// Errors if the gradient dimension differs from the base dimension or if
    /// any entry is non-finite.
    pub fn new(base: Point, value: f64, gradient: Vec<f64>) -> Result<Self> {
        check_dim(base.dim(), gradient.len())?;
        ensure_finite(value, "jet value")?;
        for &g in &gradient {
            ensure_finite(g, "jet gradient entry")?;
        }
        Ok(Jet {
            base,
            value,
            gradient,
        })
    }

    /// Creates a one-dimensional jet from base coordinate, value, and slope.
    pub fn one_d(x: f64, value: f64, slope: f64) -> Result<Self> {
        Jet::new(Point::one_d(x)?, value, vec![slope])
    }

    /// Anchor point.
    pub fn base(&self) -> &Point {
        &self.base
    }

    /// Value at the anchor.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Gradient (constant over space; the jet is affine).
    pub fn gradient(&self) -> &[f64] {
        &self.gradient
    }

    /// Slope of a one-dimensional jet.
    ///
    /// # Panics
    ///
    /// Panics if the jet is not one-dimensional.
    pub fn slope(&self) -> f64 {
        assert_eq!(self.gradient.len(), 1, "Jet::slope on a jet of dim != 1");
        self.gradient[0]
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Evaluates the jet at `x`: `value + <gradient, x - base>`.
    pub fn eval(&self, x: &Point) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.value + dot(&self.gradient, &vsub(x.coords(), self.base.coords())))
    }
}

/// Evaluates the jet `j` at the point `x`.
///
/// Free-function form of [`Jet::eval`].
pub fn eval_jet(j: &Jet, x: &Point) -> Result<f64> {
    j.eval(x)
}

/// A family of jets, one per sample point, all in one dimension `n`.
///
/// The order of the jets is significant: when built for a [`SampleSet`] the
/// `i`-th jet is anchored at the `i`-th sample point (so in dimension one the
/// family is sorted by base coordinate).
#[derive(Debug, Clone, PartialEq)]
pub struct WhitneyField {
    jets: Vec<Jet>,
}

impl WhitneyField {
    /// Creates a field from a nonempty family of same-dimension jets.
    pub fn new(jets: Vec<Jet>) -> Result<Self> {
        if jets.is_empty() {
            return Err(Error::TooFew {
                what: "jets",
                need: 1,
                got: 0,
            });
        }
        let dim = jets[0].dim();
        for j in &jets {
            check_dim(dim, j.dim())?;
        }
        Ok(WhitneyField { jets })
    }

    /// Creates the field with one jet per sample, anchored at the sample
    /// points with the sample values and the given gradients.
    pub fn for_samples(samples: &SampleSet, gradients: Vec<Vec<f64>>) -> Result<Self> {
        if gradients.len() != samples.len() {
            return Err(Error::LengthMismatch {
                points: samples.len(),
                values: gradients.len(),
            });
        }
        let jets = samples
            .points()
            .iter()
            .zip(samples.values())
            .zip(gradients)
            .map(|((p, &v), g)| Jet::new(p.clone(), v, g))
            .collect::<Result<Vec<_>>>()?;
        WhitneyField::new(jets)
    }

    /// The jets of the field.
    pub fn jets(&self) -> &[Jet] {
        &self.jets
    }

    /// The `i`-th jet.
    pub fn jet(&self, i: usize) -> &Jet {
        &self.jets[i]
    }

    /// Number of jets.
    pub fn len(&self) -> usize {
        self.jets.len()
    }

    /// True when the field holds no jets (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.jets[0].dim()
    }

    /// Slopes of a one-dimensional field, in storage order.
    ///
    /// # Panics
    ///
    /// Panics if the field is not one-dimensional.
    pub fn slopes(&self) -> Vec<f64> {
        self.jets.iter().map(|j| j.slope()).collect()
    }

    /// Checks that the field is anchored on `samples`: jet `i` is based at
    /// sample point `i` (exact coordinates) and takes the sample value there
    /// within `tol`.
    pub fn check_anchored(&self, samples: &SampleSet, tol: f64) -> Result<()> {
        ensure_tol(tol)?;
        if self.len() != samples.len() {
            return Err(Error::LengthMismatch {
                points: samples.len(),
                values: self.len(),
            });
        }
        for (i, j) in self.jets.iter().enumerate() {
            if j.base().coords() != samples.point(i).coords() {
                return Err(Error::BaseNotInSamples);
            }
            let residual = j.value() - samples.value(i);
            if residual.abs() > tol {
                return Err(Error::AnchorMismatch { index: i, residual });
            }
        }
        Ok(())
    }
}

/// Bundled problem parameters with their admissibility invariants.
///
/// Holds the gradient-Lipschitz bound `m`, the strong-convexity modulus
/// `eta`, and a conjugate exponent pair `(p, q)` with `1/p + 1/q = 1` used by
/// the jet-tilting transform.  Construction enforces `m > eta >= 0` and
/// `p > 1`; `q` is derived, so the conjugacy identity holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    m: f64,
    eta: f64,
    p: f64,
    q: f64,
}

impl Params {
    /// Creates a parameter bundle, deriving `q = p / (p - 1)`.
    pub fn new(m: f64, eta: f64, p: f64) -> Result<Self> {
        ensure_finite(m, "bound m")?;
        ensure_finite(eta, "modulus eta")?;
        ensure_finite(p, "exponent p")?;
        if !(eta >= 0.0) {
            return Err(Error::BadParameter(format!("eta must be >= 0, got {eta}")));
        }
        if !(m > eta) {
            return Err(Error::BadParameter(format!(
                "need m > eta >= 0, got m = {m}, eta = {eta}"
            )));
        }
        if !(p > 1.0) {
            return Err(Error::BadParameter(format!("p must be > 1, got {p}")));
        }
        let q = p / (p - 1.0);
        Ok(Params { m, eta, p, q })
    }

    /// Gradient-Lipschitz bound.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Strong-convexity modulus.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// First conjugate exponent.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Second conjugate exponent, `q = p / (p - 1)`.
    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Outcome of a pairwise compatibility test.
///
/// `residual_a` and `residual_b` are the left-hand sides minus the right-hand
/// sides of the two defining inequalities, so the pair is compatible exactly
/// when both residuals are nonnegative; `ok` applies the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatReport {
    /// Both residuals are `>= -tol`.
    pub ok: bool,
    /// Slack of side (a): `P_x(x) - P_y(x) - |grad diff|^2/(2M)`.
    pub residual_a: f64,
    /// Slack of side (b): `P_y(y) - P_x(y) - |grad diff|^2/(2M)`.
    pub residual_b: f64,
}

impl CompatReport {
    /// The smaller of the two residuals.
    pub fn min_residual(&self) -> f64 {
        self.residual_a.min(self.residual_b)
    }
}

/// Tests whether two jets are compatible for the gradient-Lipschitz bound `m`.
///
/// Jets `P_x`, `P_y` anchored at `x`, `y` are compatible when
/// `P_x(x) - P_y(x) >= |grad P_x - grad P_y|^2 / (2m)` (side a) and the
/// mirror-image inequality at `y` (side b) both hold.  The relation is
/// symmetric under swapping the jets (the two residuals trade places) and its
/// residuals are nondecreasing in `m`.
///
/// # Examples
///
/// ```
/// use convexjet::{jet::wells_compatible, Jet};
/// // Jets of a 0.1-strongly convex pair at x = 0 and y = 1.
/// let jx = Jet::one_d(0.0, 0.0, 0.0).unwrap();
/// let jy = Jet::one_d(1.0, 0.05, 0.2).unwrap();
/// assert!(wells_compatible(&jx, &jy, 1.0, 1e-9).unwrap().ok);
/// assert!(!wells_compatible(&jx, &jy, 0.1, 1e-9).unwrap().ok);
/// ```
pub fn wells_compatible(jx: &Jet, jy: &Jet, m: f64, tol: f64) -> Result<CompatReport> {
    check_dim(jx.dim(), jy.dim())?;
    ensure_finite(m, "bound m")?;
    ensure_tol(tol)?;
    if !(m > 0.0) {
        return Err(Error::BadParameter(format!("m must be > 0, got {m}")));
    }
    let d2 = norm2(&vsub(jx.gradient(), jy.gradient()));
    let rhs = d2 / (2.0 * m);
    let residual_a = jx.value() - jy.eval(jx.base())? - rhs;
    let residual_b = jy.value() - jx.eval(jy.base())? - rhs;
    Ok(CompatReport {
        ok: residual_a >= -tol && residual_b >= -tol,
        residual_a,
        residual_b,
    })
}

/// Checks the two standard consequences of compatibility at bound `m`.
///
/// Returns `(grad_gap_ok, value_gap_ok)` where the first flag tests
/// `|grad P_x - grad P_y| <= m |x - y|` and the second tests that both value
/// gaps `P_x(x) - P_y(x)` and `P_y(y) - P_x(y)` lie in `[0, m |x - y|^2]`,
/// each within `tol`.  Purely diagnostic: a compatible pair passes both, but
/// the converse fails in general.
pub fn wells_consequences(jx: &Jet, jy: &Jet, m: f64, tol: f64) -> Result<(bool, bool)> {
    check_dim(jx.dim(), jy.dim())?;
    ensure_finite(m, "bound m")?;
    ensure_tol(tol)?;
    let dist = jx.base().dist(jy.base())?;
    let gap = norm2(&vsub(jx.gradient(), jy.gradient())).sqrt();
    let grad_ok = gap <= m * dist + tol;
    let gap_x = jx.value() - jy.eval(jx.base())?;
    let gap_y = jy.value() - jx.eval(jy.base())?;
    let cap = m * dist * dist + tol;
    let value_ok = gap_x >= -tol && gap_x <= cap && gap_y >= -tol && gap_y <= cap;
    Ok((grad_ok, value_ok))
}

/// Tests membership of `j` in the constraint set of admissible jets at its
/// base point, for strong-convexity modulus `eta >= 0`.
///
/// The base of `j` must be one of the sample points (exact coordinates).
/// Membership requires the anchor condition `P(x) = f(x)` (within `tol`) and,
/// for every other sample `y`, the gap condition
/// `P(y) + (eta/2)|y - x|^2 <= f(y)` (within `tol`).  With `eta = 0` this is
/// the admissible set for plain convex interpolation; `eta > 0` shrinks it to
/// the jets consistent with eta-strong convexity.
pub fn gamma_membership(j: &Jet, samples: &SampleSet, eta: f64, tol: f64) -> Result<bool> {
    check_dim(samples.dim(), j.dim())?;
    ensure_finite(eta, "modulus eta")?;
    ensure_tol(tol)?;
    if !(eta >= 0.0) {
        return Err(Error::BadParameter(format!("eta must be >= 0, got {eta}")));
    }
    let i = samples
        .index_of(j.base())
        .ok_or(Error::BaseNotInSamples)?;
    if (j.value() - samples.value(i)).abs() > tol {
        return Ok(false);
    }
    for (k, y) in samples.points().iter().enumerate() {
        if k == i {
            continue;
        }
        let d2 = norm2(&vsub(y.coords(), j.base().coords()));
        if j.eval(y)? + 0.5 * eta * d2 > samples.value(k) + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests the anchor condition alone: `j` is based at a sample point and takes
/// the sample value there within `tol`.
pub fn gamma0_membership(j: &Jet, samples: &SampleSet, tol: f64) -> Result<bool> {
    check_dim(samples.dim(), j.dim())?;
    ensure_tol(tol)?;
    let i = samples
        .index_of(j.base())
        .ok_or(Error::BaseNotInSamples)?;
    Ok((j.value() - samples.value(i)).abs() <= tol)
}

/// The smallest bound at which a single jet pair becomes compatible, if any.
///
/// Returns `Some(0.0)` when the pair is compatible for every positive bound
/// (equal gradients and nonnegative value gaps), `None` when it is compatible
/// for no bound (a value gap is negative), and otherwise the infimum
/// `|grad diff|^2 / (2 * min(gap_a, gap_b))`, at which the slacker side still
/// holds and the tighter side holds with equality.
pub fn pair_min_constant(jx: &Jet, jy: &Jet) -> Result<Option<f64>> {
    check_dim(jx.dim(), jy.dim())?;
    let d2 = norm2(&vsub(jx.gradient(), jy.gradient()));
    let gap_a = jx.value() - jy.eval(jx.base())?;
    let gap_b = jy.value() - jx.eval(jy.base())?;
    let gap = gap_a.min(gap_b);
    if gap < 0.0 {
        return Ok(None);
    }
    if d2 == 0.0 {
        return Ok(Some(0.0));
    }
    if gap == 0.0 {
        return Ok(None);
    }
    Ok(Some(d2 / (2.0 * gap)))
}

/// The smallest bound at which every pair of the field is compatible, if any.
///
/// This is the tightest constant certified by the data itself; pipelines that
/// must build an extension from a verified field use it as the build budget.
pub fn tight_wells_constant(field: &WhitneyField) -> Result<Option<f64>> {
    let mut worst = 0.0f64;
    for i in 0..field.len() {
        for j in (i + 1)..field.len() {
            match pair_min_constant(field.jet(i), field.jet(j))? {
                None => return Ok(None),
                Some(m) => worst = worst.max(m),
            }
        }
    }
    Ok(Some(worst))
}

/// Verifies that the jets of a built one-dimensional extension are pairwise
/// compatible at bound `m` when sampled at the given probe coordinates.
///
/// `m` should dominate the extension's gradient-Lipschitz constant; with that
/// the check holds for every probe family, so it serves as an end-to-end
/// sanity test of a constructed extension.
pub fn verify_jets_on_function(
    f: &crate::pw1d::ConvexPW1D,
    probes: &[f64],
    m: f64,
    tol: f64,
) -> Result<bool> {
    ensure_tol(tol)?;
    if probes.is_empty() {
        return Err(Error::TooFew {
            what: "probe points",
            need: 1,
            got: 0,
        });
    }
    let jets: Vec<Jet> = probes
        .iter()
        .map(|&x| f.jet_at(x))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..jets.len() {
        for j in (i + 1)..jets.len() {
            if !wells_compatible(&jets[i], &jets[j], m, tol)?.ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
