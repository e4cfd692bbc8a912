//! Quadratic tilting: the bridge between convex and strongly convex
//! interpolation.
//!
//! Subtracting a multiple of `|x|^2 / 2` from an eta-strongly convex function
//! leaves a convex one, and the correspondence acts on jets by an explicit
//! affine map.  This module implements that map in both directions:
//!
//! * [`tilt_samples`] / [`untilt_pw`] move scattered values and finished
//!   profiles between the two worlds;
//! * [`flexsc_transform`] applies the flexible split `eta = eta/p + eta/q'`
//!   to a whole jet field, trading strong-convexity modulus for a smaller
//!   compatibility constant;
//! * [`scprop_extend_1d`] runs the full strongly convex 1-D pipeline:
//!   transform, build a convex interpolant of the transformed jets, and add
//!   the quadratic back;
//! * [`oned_sc_reduce`] / [`oned_sc_reconstruct`] implement the tighter
//!   sample-level reduction available in one dimension, which rescales values
//!   by `1 + eta/M` instead of splitting the modulus.
//!
//! The result type [`TiltedExtension`] evaluates `scale * G(x) + quad/2 * x^2`
//! lazily, so the convex core `G` stays available for inspection.

use crate::jet::{gamma_membership, wells_compatible, Jet, SampleSet, WhitneyField};
use crate::pw1d::{build_extension, ConvexPW1D};
use crate::{Error, Result};

/// A strongly convex extension represented as `F(x) = scale * G(x) +
/// quad/2 * x^2` for a convex piecewise-quadratic core `G`.
///
/// `quad` is the strong-convexity modulus of `F`; the gradient-Lipschitz
/// bound is `scale * lip_grad(G) + quad`.
#[derive(Debug, Clone)]
pub struct TiltedExtension {
    base: ConvexPW1D,
    scale: f64,
    quad: f64,
}

impl TiltedExtension {
    /// Wraps a convex core with a positive scale and a nonnegative quadratic
    /// coefficient.
    pub fn new(base: ConvexPW1D, scale: f64, quad: f64) -> Result<Self> {
        crate::jet::ensure_finite(scale, "scale")?;
        crate::jet::ensure_finite(quad, "quad")?;
        if scale <= 0.0 {
            return Err(Error::BadParameter(format!(
                "scale must be positive, got {scale}"
            )));
        }
        if quad < 0.0 {
            return Err(Error::BadParameter(format!(
                "quadratic coefficient must be nonnegative, got {quad}"
            )));
        }
        Ok(Self { base, scale, quad })
    }

    /// The convex core `G`.
    pub fn core(&self) -> &ConvexPW1D {
        &self.base
    }

    /// Multiplier applied to the core.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Strong-convexity modulus of the evaluated function.
    pub fn strong_modulus(&self) -> f64 {
        self.quad
    }

    /// `F(x) = scale * G(x) + quad/2 * x^2`.
    pub fn eval(&self, x: f64) -> f64 {
        self.scale * self.base.eval(x) + 0.5 * self.quad * x * x
    }

    /// `F'(x) = scale * G'(x) + quad * x`.
    pub fn eval_grad(&self, x: f64) -> f64 {
        self.scale * self.base.eval_grad(x) + self.quad * x
    }

    /// Upper bound on the Lipschitz constant of `F'`.
    pub fn lip_grad(&self) -> f64 {
        self.scale * self.base.lip_grad() + self.quad
    }

    /// First-order jet of `F` at `x`.
    pub fn jet_at(&self, x: f64) -> Result<Jet> {
        Jet::one_d(x, self.eval(x), self.eval_grad(x))
    }

    /// Re-expresses `F` as a single convex profile on the data hull.
    ///
    /// The gradient of `F` is piecewise affine with the same knots as the
    /// core, so on `[knots[0], knots[last]]` the flattened profile evaluates
    /// exactly like [`TiltedExtension::eval`].  Beyond the hull the flattened
    /// profile continues affinely while `F` keeps its quadratic term; callers
    /// that need the tails should evaluate the tilted form directly.
    pub fn flatten(&self) -> Result<ConvexPW1D> {
        let knots = self.base.knots().to_vec();
        let gvals: Vec<f64> = knots
            .iter()
            .zip(self.base.gvals())
            .map(|(&k, &g)| self.scale * g + self.quad * k)
            .collect();
        let anchor_x = knots[0];
        ConvexPW1D::new(knots, gvals, (anchor_x, self.eval(anchor_x)))
    }
}

/// Subtracts `eta/2 * |x|^2` from every sample value.
///
/// Sends samples of an eta-strongly convex function to samples of a convex
/// one; adding the quadratic back recovers the original values exactly.
pub fn tilt_samples(samples: &SampleSet, eta: f64) -> Result<SampleSet> {
    crate::jet::ensure_finite(eta, "eta")?;
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    let values: Vec<f64> = samples
        .points()
        .iter()
        .zip(samples.values())
        .map(|(p, &f)| f - 0.5 * eta * crate::jet::norm2(p.coords()))
        .collect();
    SampleSet::new(samples.points().to_vec(), values)
}

/// Wraps a convex profile as the strongly convex function `G(x) + eta/2 *
/// x^2`.
///
/// The reported gradient-Lipschitz bound is `lip_grad(G) + eta` and the
/// strong-convexity modulus is `eta`.
pub fn untilt_pw(base: ConvexPW1D, eta: f64) -> Result<TiltedExtension> {
    TiltedExtension::new(base, 1.0, eta)
}

/// Applies the flexible strong-convexity split to a jet field.
///
/// Each jet `(x, f, g)` with `g` admissible for modulus `eta` becomes
/// `(x, f - eta/(2p) |x|^2, g - (eta/p) x)`.  If the input jets are pairwise
/// compatible at `m` and each gradient lies in the admissible set at its base
/// for modulus `eta`, the transformed jets are admissible for modulus
/// `eta/p'` (with `1/p + 1/p' = 1` scaled appropriately) and pairwise
/// compatible at `q*m` where `q = p/(p-1)`.  Both hypotheses are checked and
/// reported via [`Error::GammaFailure`] / [`Error::WellsFailure`].
///
/// With `eta = 0` the transform is the identity.
pub fn flexsc_transform(
    field: &WhitneyField,
    samples: &SampleSet,
    eta: f64,
    m: f64,
    p: f64,
    tol: f64,
) -> Result<WhitneyField> {
    crate::jet::ensure_tol(tol)?;
    crate::jet::ensure_finite(eta, "eta")?;
    crate::jet::ensure_finite(m, "m")?;
    crate::jet::ensure_finite(p, "p")?;
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    if m <= 0.0 {
        return Err(Error::BadParameter(format!(
            "compatibility constant must be positive, got {m}"
        )));
    }
    if p <= 1.0 {
        return Err(Error::BadParameter(format!("p must exceed 1, got {p}")));
    }
    field.check_anchored(samples, tol)?;
    let jets = field.jets();
    for (i, jet) in jets.iter().enumerate() {
        if !gamma_membership(jet, samples, eta, tol)? {
            return Err(Error::GammaFailure { index: i });
        }
    }
    for i in 0..jets.len() {
        for j in (i + 1)..jets.len() {
            let rep = wells_compatible(&jets[i], &jets[j], m, tol)?;
            if !rep.ok {
                return Err(Error::WellsFailure {
                    i,
                    j,
                    m,
                    residual: rep.min_residual(),
                });
            }
        }
    }
    let ratio = eta / p;
    let transformed: Vec<Jet> = jets
        .iter()
        .map(|jet| {
            let base = jet.base().clone();
            let value = jet.value() - 0.5 * ratio * crate::jet::norm2(base.coords());
            let gradient: Vec<f64> = jet
                .gradient()
                .iter()
                .zip(base.coords())
                .map(|(&g, &x)| g - ratio * x)
                .collect();
            Jet::new(base, value, gradient)
        })
        .collect::<Result<_>>()?;
    WhitneyField::new(transformed)
}

/// Strongly convex 1-D extension through a compatible jet field.
///
/// Requires `m >= eta > 0` and `p > 1`.  The pipeline transforms the jets via
/// [`flexsc_transform`], verifies the transformed field is pairwise
/// compatible at `q*m` (with `q = p/(p-1)`), builds a convex interpolant of
/// the transformed jets at the tightest constant the transformed field
/// certifies (never more than `q*m` beyond roundoff), and returns
/// `F = G + eta/(2p) x^2`.  The result interpolates the original jets
/// exactly, is `eta/p`-strongly convex, and has gradient-Lipschitz bound at
/// most `q*m + eta/p`.
pub fn scprop_extend_1d(
    field: &WhitneyField,
    samples: &SampleSet,
    eta: f64,
    m: f64,
    p: f64,
    tol: f64,
) -> Result<TiltedExtension> {
    crate::jet::ensure_tol(tol)?;
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::BadParameter(format!(
            "strong-convexity modulus must be positive, got {eta}"
        )));
    }
    if !(m >= eta) || !m.is_finite() {
        return Err(Error::BadParameter(format!(
            "compatibility constant {m} must be at least eta = {eta}"
        )));
    }
    if samples.dim() != 1 {
        return Err(Error::DimMismatch {
            expected: 1,
            got: samples.dim(),
        });
    }
    let q = p / (p - 1.0);
    let transformed = flexsc_transform(field, samples, eta, m, p, tol)?;
    let qm = q * m;
    let jets = transformed.jets();
    for i in 0..jets.len() {
        for j in (i + 1)..jets.len() {
            let rep = wells_compatible(&jets[i], &jets[j], qm, tol)?;
            if !rep.ok {
                return Err(Error::WellsFailure {
                    i,
                    j,
                    m: qm,
                    residual: rep.min_residual(),
                });
            }
        }
    }
    let tilted = tilt_samples(samples, eta / p)?;
    let budget = match crate::jet::tight_wells_constant(&transformed)? {
        Some(t) if t > 0.0 => t,
        Some(_) => qm,
        None => {
            return Err(Error::Inconsistent(
                "transformed field admits no finite compatibility constant".into(),
            ))
        }
    };
    let core = build_extension(&transformed, &tilted, budget, tol)?;
    let out = TiltedExtension::new(core, 1.0, eta / p)?;
    for (i, jet) in field.jets().iter().enumerate() {
        let x = jet.base().x();
        let dv = (out.eval(x) - jet.value()).abs();
        let dg = (out.eval_grad(x) - jet.slope()).abs();
        let allow = tol.max(1e-12);
        if dv > allow || dg > allow {
            return Err(Error::Inconsistent(format!(
                "strongly convex extension drifts from jet {i}: value by {dv:.3e}, slope by {dg:.3e}"
            )));
        }
    }
    Ok(out)
}

/// One-dimensional reduction from eta-strongly convex to convex data.
///
/// Returns `(g_samples, scale)` with `g_i = (f_i - eta/2 x_i^2) / scale` and
/// `scale = 1 + eta/m`.  If `f` admits an eta-strongly convex extension with
/// gradient-Lipschitz bound `m + eta`-ish budgets, `g` admits a plain convex
/// one at `m`, and [`oned_sc_reconstruct`] inverts the reduction.
pub fn oned_sc_reduce(samples: &SampleSet, eta: f64, m: f64) -> Result<(SampleSet, f64)> {
    crate::jet::ensure_finite(eta, "eta")?;
    crate::jet::ensure_finite(m, "m")?;
    if samples.dim() != 1 {
        return Err(Error::DimMismatch {
            expected: 1,
            got: samples.dim(),
        });
    }
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    if m <= 0.0 {
        return Err(Error::BadParameter(format!(
            "budget must be positive, got {m}"
        )));
    }
    let scale = 1.0 + eta / m;
    let tilted = tilt_samples(samples, eta)?;
    let values: Vec<f64> = tilted.values().iter().map(|&v| v / scale).collect();
    let reduced = SampleSet::new(samples.points().to_vec(), values)?;
    Ok((reduced, scale))
}

/// Inverse of [`oned_sc_reduce`]: wraps a convex interpolant `G` of the
/// reduced samples as `F(x) = (1 + eta/m) G(x) + eta/2 x^2`.
///
/// `F` is eta-strongly convex, and if `lip_grad(G) <= 2m` the gradient
/// Lipschitz bound of `F` is at most `2m + 3 eta`.
pub fn oned_sc_reconstruct(core: ConvexPW1D, eta: f64, m: f64) -> Result<TiltedExtension> {
    crate::jet::ensure_finite(eta, "eta")?;
    crate::jet::ensure_finite(m, "m")?;
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    if m <= 0.0 {
        return Err(Error::BadParameter(format!(
            "budget must be positive, got {m}"
        )));
    }
    TiltedExtension::new(core, 1.0 + eta / m, eta)
}
