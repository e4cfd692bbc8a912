//! Convex and strongly convex C^{1,1} interpolation of scattered data.
//!
//! Given finitely many points with prescribed values, this crate answers three
//! questions:
//!
//! 1. **Feasibility.** Does the data admit a convex (or eta-strongly convex)
//!    extension of class C^{1,1} whose gradient is Lipschitz with a prescribed
//!    constant M?  In dimension one the answer is exact and constructive; the
//!    obstruction, when there is one, is pinned to a sample index
//!    ([`select1d`]).
//! 2. **Construction.** In dimension one, build the extension explicitly as a
//!    convex piecewise-quadratic function and evaluate it anywhere
//!    ([`pw1d`], [`tilt`]).
//! 3. **Diagnosis.** In any dimension, pose the first-order constraint sets
//!    (one polyhedron of admissible gradients per sample point), decide their
//!    feasibility exactly in rational arithmetic, search for Lipschitz gradient
//!    selections, and scan subsets for the smallest infeasible configuration
//!    ([`nd`]).
//!
//! The unifying object is the *jet*: a first-order Taylor polynomial anchored
//! at a sample point.  Two jets are consistent with a single convex function of
//! gradient-Lipschitz constant M exactly when they satisfy a symmetric pair of
//! inequalities ([`jet::wells_compatible`]); everything else in the crate is
//! machinery for choosing jets so that all pairs are consistent, or for
//! certifying that no such choice exists.
//!
//! # Quick start
//!
//! ```
//! use convexjet::{SampleSet, select1d, pw1d, DEFAULT_TOL};
//!
//! // Samples of x^2/2 at 0, 1, 2.
//! let s = SampleSet::one_d(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0]).unwrap();
//! let sel = select1d::select_jets(&s, 1.0, DEFAULT_TOL).unwrap();
//! let field = sel.into_feasible().expect("data is convex-orderable");
//! let ext = pw1d::build_extension(field.field(), &s, 1.0, DEFAULT_TOL).unwrap();
//! assert!((ext.eval(1.5) - 1.125).abs() < 1e-12); // recovers x^2/2 exactly
//! ```
//!
//! Tolerances are absolute throughout; every inequality predicate takes one
//! explicitly, and [`DEFAULT_TOL`] is the crate-wide default.

pub mod cli;
pub mod jet;
pub mod nd;
pub mod pw1d;
pub mod select1d;
pub mod tilt;

pub use jet::{CompatReport, Jet, Params, Point, SampleSet, WhitneyField};
pub use pw1d::ConvexPW1D;
pub use select1d::{InfeasibilityKind, InfeasibilityReport, JetSelection, Selection};
pub use tilt::TiltedExtension;

/// Default absolute tolerance for every inequality predicate in the crate.
///
/// Chosen well above f64 rounding noise for desk-scale data (coordinates and
/// values of magnitude up to ~1e6) and well below any slack that is
/// mathematically meaningful for such data.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Errors reported by constructors and operations across the crate.
///
/// Mathematical *infeasibility* of an interpolation problem is not an error:
/// it is a regular outcome, reported through [`select1d::Selection`] and the
/// scan report types.  `Error` covers malformed input, violated preconditions,
/// and internal consistency failures.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Operands live in different dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// A coordinate, value, or parameter is NaN or infinite.
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    /// A collection that must be nonempty is empty, or is shorter than the
    /// operation requires.
    #[error("need at least {need} {what}, got {got}")]
    TooFew {
        what: &'static str,
        need: usize,
        got: usize,
    },

    /// Two containers that must be parallel have different lengths.
    #[error("length mismatch: {points} points vs {values} values")]
    LengthMismatch { points: usize, values: usize },

    /// Two sample points coincide (minimum pairwise separation is zero).
    #[error("duplicate sample points at indices {i} and {j}")]
    DuplicatePoint { i: usize, j: usize },

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    BadParameter(String),

    /// A jet's base point is not one of the sample points.
    #[error("jet base point is not a sample point")]
    BaseNotInSamples,

    /// A jet anchored at sample `index` does not take the sample value there.
    #[error("jet value disagrees with sample value at index {index} (residual {residual:e})")]
    AnchorMismatch { index: usize, residual: f64 },

    /// A jet that must lie in the admissible constraint set at its base point
    /// (for the requested strong-convexity modulus) does not.
    #[error("jet {index} is outside the admissible constraint set at its base")]
    GammaFailure { index: usize },

    /// The polyhedron of admissible gradients at sample `index` is empty.
    #[error("the admissible-gradient polyhedron at sample {index} is empty")]
    EmptyGamma { index: usize },

    /// A precondition required pairwise compatibility and the pair `(i, j)`
    /// fails it by `residual` at bound `m`.
    #[error("jets {i} and {j} are not compatible at bound {m} (residual {residual:e})")]
    WellsFailure {
        i: usize,
        j: usize,
        m: f64,
        residual: f64,
    },

    /// The one-sided jet construction was asked to reach a value outside its
    /// admissible window.  `side` is `"lower"` (target value below the tangent
    /// line) or `"upper"` (target above the parabolic cap).
    #[error("target value breaches the {side} side of the reachable window by {excess:e}")]
    WindowViolation { side: &'static str, excess: f64 },

    /// Internal consistency check failed; indicates inconsistent input that
    /// slipped past the preconditions (or a bug).
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    /// A subset scan was requested on more points than the combinatorial
    /// guard allows without an explicit override.
    #[error("{n} points exceed the subset-scan guard of {limit}; pass allow_large to override")]
    TooManyPoints { n: usize, limit: usize },
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
