//! Desk-scale feasibility analysis of jet constraint sets in several
//! variables.
//!
//! In one variable the selection algorithm settles existence outright; in
//! dimension two and up this crate takes the analyst's route instead.  For
//! each sample point the admissible gradients form a polyhedron cut out by
//! one affine row per other sample.  This module builds those polyhedra
//! ([`gamma_polyhedron`]), decides their nonemptiness exactly
//! ([`polyhedron_nonempty`], backed by rational simplex, with
//! [`fm_nonempty`] as a structurally independent cross-check), searches for
//! a small-Lipschitz selection of gradients ([`lipschitz_selection_desk`]),
//! and assembles the full strongly convex certificate chain
//! ([`scthm_certificate`]).  Everything is sized for desk scale: tens of
//! points, dimensions you can sketch.

pub(crate) mod fm;
pub(crate) mod lp;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::jet::{
    dot, ensure_finite, ensure_tol, gamma_membership, norm2, tight_wells_constant, vsub,
    wells_compatible, Jet, Point, SampleSet, WhitneyField,
};
use crate::{Error, Result};

/// The polyhedron of admissible gradients at one sample point.
///
/// A gradient `g` is admissible at `x` (for strong-convexity modulus `eta`)
/// when the jet `(x, f(x), g)` stays below every other sample with the
/// required quadratic gap: one row `<y - x, g> <= f(y) - f(x) - eta/2 |y -
/// x|^2` per other sample `y`.
#[derive(Debug, Clone)]
pub struct GammaPolyhedron {
    base_index: usize,
    base: Point,
    eta: f64,
    rows: Vec<(Vec<f64>, f64)>,
}

impl GammaPolyhedron {
    /// Index of the base point within the sample set.
    pub fn base_index(&self) -> usize {
        self.base_index
    }

    /// The base point.
    pub fn base(&self) -> &Point {
        &self.base
    }

    /// Strong-convexity modulus the rows encode.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// The rows `(normal, offset)` meaning `<normal, g> <= offset`.
    pub fn rows(&self) -> &[(Vec<f64>, f64)] {
        &self.rows
    }

    /// Largest row violation `<normal, g> - offset` at `g`; negative
    /// infinity when there are no rows.
    pub fn max_violation(&self, g: &[f64]) -> Result<f64> {
        crate::jet::check_dim(self.dim(), g.len())?;
        Ok(self
            .rows
            .iter()
            .fold(f64::NEG_INFINITY, |acc, (n, off)| {
                acc.max(dot(n, g) - off)
            }))
    }

    /// Smallest row slack `offset - <normal, g>` at `g`; positive infinity
    /// when there are no rows.
    pub fn min_slack(&self, g: &[f64]) -> Result<f64> {
        Ok(-self.max_violation(g)?)
    }

    fn rational_rows(&self) -> Result<Vec<(Vec<BigRational>, BigRational)>> {
        self.rows
            .iter()
            .map(|(n, off)| {
                let a = n
                    .iter()
                    .map(|&v| {
                        BigRational::from_float(v).ok_or(Error::NonFinite {
                            what: "constraint row",
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let b = BigRational::from_float(*off).ok_or(Error::NonFinite {
                    what: "constraint offset",
                })?;
                Ok((a, b))
            })
            .collect()
    }
}

/// Builds the admissible-gradient polyhedron at sample index `i`.
pub fn gamma_polyhedron_at(s: &SampleSet, i: usize, eta: f64) -> Result<GammaPolyhedron> {
    ensure_finite(eta, "eta")?;
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    if i >= s.len() {
        return Err(Error::BaseNotInSamples);
    }
    let x = s.point(i);
    let fx = s.value(i);
    let mut rows = Vec::with_capacity(s.len().saturating_sub(1));
    for j in 0..s.len() {
        if j == i {
            continue;
        }
        let y = s.point(j);
        let normal = vsub(y.coords(), x.coords());
        let offset = s.value(j) - fx - 0.5 * eta * norm2(&normal);
        rows.push((normal, offset));
    }
    Ok(GammaPolyhedron {
        base_index: i,
        base: x.clone(),
        eta,
        rows,
    })
}

/// Builds the admissible-gradient polyhedron at the sample point `x`, which
/// must be one of the samples.
pub fn gamma_polyhedron(s: &SampleSet, x: &Point, eta: f64) -> Result<GammaPolyhedron> {
    let i = s.index_of(x).ok_or(Error::BaseNotInSamples)?;
    gamma_polyhedron_at(s, i, eta)
}

/// Feasibility verdict for one admissible-gradient polyhedron.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyhedronFeasibility {
    pub feasible: bool,
    /// A least-1-norm feasible gradient when one exists.
    pub witness: Option<Vec<f64>>,
    /// Smallest row slack at the witness; `None` when infeasible or when the
    /// polyhedron has no rows.
    pub min_slack: Option<f64>,
    /// The witness sits within `tol` of some row: the verdict is exact but a
    /// nearby perturbation of the data could flip it.
    pub near_degenerate: bool,
}

/// Decides nonemptiness of a polyhedron exactly and returns a witness.
///
/// The decision is made in exact rational arithmetic (two-phase simplex),
/// so it is free of tolerance artifacts; `tol` only grades the
/// `near_degenerate` flag from the witness slacks.
pub fn polyhedron_nonempty(p: &GammaPolyhedron, tol: f64) -> Result<PolyhedronFeasibility> {
    ensure_tol(tol)?;
    let rows = p.rational_rows()?;
    match lp::solve_min_l1(p.dim(), &rows) {
        lp::LpOutcome::Infeasible => Ok(PolyhedronFeasibility {
            feasible: false,
            witness: None,
            min_slack: None,
            near_degenerate: false,
        }),
        lp::LpOutcome::Optimal(x) => {
            let witness: Vec<f64> = x
                .iter()
                .map(|v| {
                    v.to_f64().ok_or(Error::NonFinite {
                        what: "witness coordinate",
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let slack = p.min_slack(&witness)?;
            let min_slack = slack.is_finite().then_some(slack);
            Ok(PolyhedronFeasibility {
                feasible: true,
                near_degenerate: min_slack.is_some_and(|s| s <= tol),
                witness: Some(witness),
                min_slack,
            })
        }
        lp::LpOutcome::Unbounded => Err(Error::Inconsistent(
            "1-norm objective cannot be unbounded".into(),
        )),
    }
}

/// Decides nonemptiness via exact Fourier–Motzkin elimination.
///
/// Independent of the simplex route in [`polyhedron_nonempty`]; the two must
/// agree on every input, which the test suite exercises.  Practical only for
/// small dimensions and row counts.
pub fn fm_nonempty(p: &GammaPolyhedron) -> Result<bool> {
    let rows = p.rational_rows()?;
    Ok(fm::feasible(p.dim(), &rows))
}

/// Matrix of pairwise compatibility residuals at a common bound.
#[derive(Debug, Clone, Serialize)]
pub struct WellsMatrix {
    m: f64,
    /// Entry `(i, j)` is `f_i - P_j(x_i) - |grad_i - grad_j|^2 / (2m)`; the
    /// diagonal is zero.
    residuals: Vec<Vec<f64>>,
}

impl WellsMatrix {
    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn residuals(&self) -> &[Vec<f64>] {
        &self.residuals
    }

    /// Smallest off-diagonal residual; infinite for a single jet.
    pub fn min_residual(&self) -> f64 {
        let mut min = f64::INFINITY;
        for (i, row) in self.residuals.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if i != j {
                    min = min.min(r);
                }
            }
        }
        min
    }

    /// Every pair is compatible at the bound within `tol`.
    pub fn ok(&self, tol: f64) -> bool {
        self.min_residual() >= -tol
    }
}

/// Computes all ordered pairwise compatibility residuals of a jet field at
/// bound `m`.
pub fn wells_matrix(field: &WhitneyField, m: f64) -> Result<WellsMatrix> {
    ensure_finite(m, "bound m")?;
    if m <= 0.0 {
        return Err(Error::BadParameter(format!(
            "bound must be positive, got {m}"
        )));
    }
    let jets = field.jets();
    let n = jets.len();
    let mut residuals = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d2 = norm2(&vsub(jets[i].gradient(), jets[j].gradient()));
            residuals[i][j] =
                jets[i].value() - jets[j].eval(jets[i].base())? - d2 / (2.0 * m);
        }
    }
    Ok(WellsMatrix { m, residuals })
}

/// Knobs for the iterative gradient-selection search.
#[derive(Debug, Clone, Copy)]
pub struct SelectionConfig {
    /// Constraint-violation target for accepting a configuration.
    pub tol: f64,
    /// Projection-sweep budget per trial level.
    pub max_sweeps: usize,
    /// Relative width at which the bisection over the Lipschitz level stops.
    pub bisect_rel: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_sweeps: 10_000,
            bisect_rel: 1e-3,
        }
    }
}

impl SelectionConfig {
    fn validate(&self) -> Result<()> {
        ensure_tol(self.tol)?;
        ensure_finite(self.bisect_rel, "bisect_rel")?;
        if self.max_sweeps == 0 {
            return Err(Error::BadParameter("max_sweeps must be positive".into()));
        }
        if self.bisect_rel <= 0.0 {
            return Err(Error::BadParameter(format!(
                "bisect_rel must be positive, got {}",
                self.bisect_rel
            )));
        }
        Ok(())
    }
}

/// Result of the desk-scale Lipschitz selection search.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionOutcome {
    /// One admissible gradient per sample.
    pub gradients: Vec<Vec<f64>>,
    /// Smallest verified pairwise-Lipschitz level: `|g_i - g_j| <= l |x_i -
    /// x_j|` for all pairs, within the violation target.
    pub l: f64,
    /// Largest constraint violation of the returned configuration at level
    /// `l`.
    pub max_violation: f64,
    /// False when the sweep budget ran out before the violation target was
    /// met; the outcome then reports the best configuration found.
    pub converged: bool,
}

/// Searches for a gradient selection with small pairwise Lipschitz level.
///
/// Per-point witnesses from [`polyhedron_nonempty`] give an initial
/// configuration and the upper level `L = max |w_i - w_j| / |x_i - x_j|`;
/// bisection over the level with cyclic projections (onto the polyhedron
/// rows and the pairwise distance constraints) then shrinks it.  The result
/// is a verified upper bound on the least selection level, not a proof of
/// optimality — this is a desk tool, not a decision procedure.  Errors with
/// [`Error::EmptyGamma`] when some sample has no admissible gradient at all.
pub fn lipschitz_selection_desk(
    s: &SampleSet,
    eta: f64,
    cfg: &SelectionConfig,
) -> Result<SelectionOutcome> {
    cfg.validate()?;
    if s.is_empty() {
        return Err(Error::TooFew {
            what: "sample points",
            need: 1,
            got: 0,
        });
    }
    let mut polys = Vec::with_capacity(s.len());
    let mut witnesses = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let p = gamma_polyhedron_at(s, i, eta)?;
        let feas = polyhedron_nonempty(&p, cfg.tol)?;
        if !feas.feasible {
            return Err(Error::EmptyGamma { index: i });
        }
        witnesses.push(feas.witness.expect("feasible verdict carries a witness"));
        polys.push(p);
    }
    let points: Vec<&Point> = s.points().iter().collect();
    let poly_refs: Vec<&GammaPolyhedron> = polys.iter().collect();
    selection_core(&points, &poly_refs, witnesses, cfg)
}

/// Bisection-plus-projections search over a fixed family of polyhedra.
fn selection_core(
    points: &[&Point],
    polys: &[&GammaPolyhedron],
    witnesses: Vec<Vec<f64>>,
    cfg: &SelectionConfig,
) -> Result<SelectionOutcome> {
    let n = points.len();
    let mut dists = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = points[i].dist(points[j])?;
            dists[i][j] = d;
            dists[j][i] = d;
        }
    }
    let mut l_hi = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = norm2(&vsub(&witnesses[i], &witnesses[j])).sqrt();
            l_hi = l_hi.max(d / dists[i][j]);
        }
    }
    if n == 1 || l_hi == 0.0 {
        let viol = config_violation(polys, &dists, &witnesses, l_hi).max(0.0);
        return Ok(SelectionOutcome {
            gradients: witnesses,
            l: l_hi,
            max_violation: viol,
            converged: viol <= cfg.tol,
        });
    }
    let (g, viol) = project_towards(polys, &dists, witnesses.clone(), l_hi, cfg);
    if viol > cfg.tol {
        return Ok(SelectionOutcome {
            gradients: g,
            l: l_hi,
            max_violation: viol,
            converged: false,
        });
    }
    let mut best = g;
    let mut lo = 0.0f64;
    let mut hi = l_hi;
    for _ in 0..200 {
        if hi - lo <= cfg.bisect_rel * hi.max(1e-12) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (g, viol) = project_towards(polys, &dists, best.clone(), mid, cfg);
        if viol <= cfg.tol {
            best = g;
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let viol = config_violation(polys, &dists, &best, hi).max(0.0);
    Ok(SelectionOutcome {
        gradients: best,
        l: hi,
        max_violation: viol,
        converged: true,
    })
}

/// Largest violation of the polyhedron rows and pairwise level constraints.
fn config_violation(
    polys: &[&GammaPolyhedron],
    dists: &[Vec<f64>],
    grads: &[Vec<f64>],
    l: f64,
) -> f64 {
    let mut v = f64::NEG_INFINITY;
    for (p, g) in polys.iter().zip(grads) {
        v = v.max(
            p.max_violation(g)
                .expect("dimensions agree by construction"),
        );
    }
    for i in 0..grads.len() {
        for j in (i + 1)..grads.len() {
            let d = norm2(&vsub(&grads[i], &grads[j])).sqrt();
            v = v.max(d - l * dists[i][j]);
        }
    }
    v
}

/// Cyclic projections toward the constraint intersection at level `l`.
///
/// Returns the best configuration seen and its violation; bails out early
/// when 64 consecutive sweeps improve the violation by less than a factor of
/// `1e-3`, which in practice means the intersection is empty and the iterates
/// have settled on a limit cycle.
fn project_towards(
    polys: &[&GammaPolyhedron],
    dists: &[Vec<f64>],
    start: Vec<Vec<f64>>,
    l: f64,
    cfg: &SelectionConfig,
) -> (Vec<Vec<f64>>, f64) {
    let mut g = start;
    let mut best = g.clone();
    let mut best_viol = config_violation(polys, dists, &g, l).max(0.0);
    if best_viol <= cfg.tol {
        return (best, best_viol);
    }
    let mut last_check = best_viol;
    for sweep in 0..cfg.max_sweeps {
        for (p, gi) in polys.iter().zip(g.iter_mut()) {
            for (normal, off) in p.rows() {
                let excess = dot(normal, gi) - off;
                if excess > 0.0 {
                    let n2 = norm2(normal);
                    if n2 > 0.0 {
                        for (gk, nk) in gi.iter_mut().zip(normal) {
                            *gk -= excess * nk / n2;
                        }
                    }
                }
            }
        }
        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                let cap = l * dists[i][j];
                let diff = vsub(&g[i], &g[j]);
                let d = norm2(&diff).sqrt();
                if d > cap && d > 0.0 {
                    let shift = 0.5 * (d - cap) / d;
                    for k in 0..diff.len() {
                        g[i][k] -= shift * diff[k];
                        g[j][k] += shift * diff[k];
                    }
                }
            }
        }
        let viol = config_violation(polys, dists, &g, l).max(0.0);
        if viol < best_viol {
            best_viol = viol;
            best = g.clone();
        }
        if viol <= cfg.tol {
            return (g, viol);
        }
        if sweep % 64 == 63 {
            if viol >= last_check * (1.0 - 1e-3) {
                return (best, best_viol);
            }
            last_check = viol;
        }
    }
    (best, best_viol)
}

/// Necessary pairwise condition for membership in an eta-strongly convex
/// extension class with gradient-Lipschitz cap `mcap`.
///
/// Tilts both jets by `eta/2 |x|^2` and tests plain compatibility at `mcap -
/// eta`.  Requires `mcap > eta`.  Failure rules out any eta-strongly convex
/// extension with gradient-Lipschitz constant at most `mcap`; success is
/// necessary but not sufficient.
pub fn sc_pair_feasible(jx: &Jet, jy: &Jet, eta: f64, mcap: f64, tol: f64) -> Result<bool> {
    ensure_finite(eta, "eta")?;
    ensure_finite(mcap, "mcap")?;
    if eta < 0.0 {
        return Err(Error::BadParameter(format!(
            "eta must be nonnegative, got {eta}"
        )));
    }
    if mcap <= eta {
        return Err(Error::BadParameter(format!(
            "cap {mcap} must exceed eta = {eta}"
        )));
    }
    let tx = tilt_jet(jx, eta)?;
    let ty = tilt_jet(jy, eta)?;
    Ok(wells_compatible(&tx, &ty, mcap - eta, tol)?.ok)
}

fn tilt_jet(j: &Jet, eta: f64) -> Result<Jet> {
    let value = j.value() - 0.5 * eta * norm2(j.base().coords());
    let gradient: Vec<f64> = j
        .gradient()
        .iter()
        .zip(j.base().coords())
        .map(|(&g, &x)| g - eta * x)
        .collect();
    Jet::new(j.base().clone(), value, gradient)
}

/// Measured constants of a verified strongly convex certificate chain.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub eta: f64,
    pub p: f64,
    pub q: f64,
    /// Achieved selection level.
    pub l: f64,
    /// Violation of the selected gradients against their polyhedra.
    pub selection_violation: f64,
    /// Compatibility constant `l^2 / eta` used for the selected field.
    pub wells_constant: f64,
    /// Smallest pairwise residual at `wells_constant`; `None` for a single
    /// sample.
    pub min_wells_residual: Option<f64>,
    /// Tightest constant the selected field certifies on its own.
    pub tight_constant: Option<f64>,
    /// Compatibility constant `q * l^2 / eta` for the transformed field.
    pub transformed_constant: f64,
    /// Smallest pairwise residual of the transformed field; `None` for a
    /// single sample.
    pub min_transformed_residual: Option<f64>,
    /// Cap used for the pairwise necessary-condition summary.
    pub sc_pair_mcap: f64,
    /// All pairs pass the necessary condition at `sc_pair_mcap`.  Informative
    /// only: the certificate chain above does not depend on it.
    pub sc_pair_ok: bool,
    /// First pair failing the necessary condition, if any.
    pub sc_pair_first_failure: Option<[usize; 2]>,
}

/// Runs the full strongly convex certificate chain on scattered data.
///
/// Selection ([`lipschitz_selection_desk`]) produces gradients with level
/// `l`; the chain then verifies admissibility of every selected jet for
/// modulus `eta`, pairwise compatibility at `l^2 / eta`, and — after the
/// flexible transform with exponent `p` — pairwise compatibility at `q l^2 /
/// eta`.  Any stage failure surfaces as a named error
/// ([`Error::EmptyGamma`], [`Error::GammaFailure`], [`Error::WellsFailure`]);
/// an `Ok` report means the chain verified, and carries the measured
/// constants.  The pairwise necessary condition at cap `m` is reported as a
/// summary but does not gate the verdict.  Requires `m > eta > 0`.
///
/// Verification tolerances widen to `10 * max(tol, cfg.tol)` because the
/// selection only enforces its constraints to `cfg.tol`, and that slack
/// propagates linearly into the residuals.
pub fn scthm_certificate(
    s: &SampleSet,
    eta: f64,
    m: f64,
    p: f64,
    cfg: &SelectionConfig,
    tol: f64,
) -> Result<CertificateReport> {
    ensure_tol(tol)?;
    cfg.validate()?;
    ensure_finite(eta, "eta")?;
    ensure_finite(m, "cap m")?;
    ensure_finite(p, "exponent p")?;
    if !(eta > 0.0) {
        return Err(Error::BadParameter(format!(
            "strong-convexity modulus must be positive, got {eta}"
        )));
    }
    if m <= eta {
        return Err(Error::BadParameter(format!(
            "cap {m} must exceed eta = {eta}"
        )));
    }
    if p <= 1.0 {
        return Err(Error::BadParameter(format!("p must exceed 1, got {p}")));
    }
    let q = p / (p - 1.0);
    let sel = lipschitz_selection_desk(s, eta, cfg)?;
    if !sel.converged {
        return Err(Error::Inconsistent(
            "gradient selection did not reach its violation target within the sweep budget".into(),
        ));
    }
    let field = WhitneyField::for_samples(s, sel.gradients.clone())?;
    let ctol = 10.0 * tol.max(cfg.tol);
    for (i, jet) in field.jets().iter().enumerate() {
        if !gamma_membership(jet, s, eta, ctol)? {
            return Err(Error::GammaFailure { index: i });
        }
    }
    let wc = if field.len() >= 2 { sel.l * sel.l / eta } else { eta };
    let wc = wc.max(f64::MIN_POSITIVE);
    let mut min_wells = f64::INFINITY;
    for i in 0..field.len() {
        for j in (i + 1)..field.len() {
            let rep = wells_compatible(field.jet(i), field.jet(j), wc, ctol)?;
            min_wells = min_wells.min(rep.min_residual());
            if !rep.ok {
                return Err(Error::WellsFailure {
                    i,
                    j,
                    m: wc,
                    residual: rep.min_residual(),
                });
            }
        }
    }
    let transformed = crate::tilt::flexsc_transform(&field, s, eta, wc, p, ctol)?;
    let qwc = q * wc;
    let mut min_transformed = f64::INFINITY;
    for i in 0..transformed.len() {
        for j in (i + 1)..transformed.len() {
            let rep = wells_compatible(transformed.jet(i), transformed.jet(j), qwc, ctol)?;
            min_transformed = min_transformed.min(rep.min_residual());
            if !rep.ok {
                return Err(Error::WellsFailure {
                    i,
                    j,
                    m: qwc,
                    residual: rep.min_residual(),
                });
            }
        }
    }
    let mut sc_pair_ok = true;
    let mut sc_pair_first_failure = None;
    for i in 0..field.len() {
        for j in (i + 1)..field.len() {
            if !sc_pair_feasible(field.jet(i), field.jet(j), eta, m, ctol)? {
                sc_pair_ok = false;
                if sc_pair_first_failure.is_none() {
                    sc_pair_first_failure = Some([i, j]);
                }
            }
        }
    }
    Ok(CertificateReport {
        n: s.len(),
        eta,
        p,
        q,
        l: sel.l,
        selection_violation: sel.max_violation,
        wells_constant: wc,
        min_wells_residual: min_wells.is_finite().then_some(min_wells),
        tight_constant: tight_wells_constant(&field)?,
        transformed_constant: qwc,
        min_transformed_residual: min_transformed.is_finite().then_some(min_transformed),
        sc_pair_mcap: m,
        sc_pair_ok,
        sc_pair_first_failure,
    })
}

/// Evaluates the convex lower envelope candidate `max_i P_i(x)` of a jet
/// field at a point.
pub fn lipschitz_convex_eval(field: &WhitneyField, x: &Point) -> Result<f64> {
    if field.is_empty() {
        return Err(Error::TooFew {
            what: "jets",
            need: 1,
            got: 0,
        });
    }
    let mut best = f64::NEG_INFINITY;
    for jet in field.jets() {
        best = best.max(jet.eval(x)?);
    }
    Ok(best)
}

/// Feasibility outcome for one subset in a multi-dimensional scan.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetOutcomeNd {
    /// Ascending sample indices of the subset.
    pub indices: Vec<usize>,
    /// Every member's admissible polyhedron (within the full sample set) is
    /// nonempty.
    pub polys_nonempty: bool,
    /// First member whose polyhedron is empty, when any.
    pub empty_at: Option<usize>,
    /// Achieved selection level when a selection search ran and verified.
    pub l: Option<f64>,
    pub feasible: bool,
}

/// Report of a subset feasibility scan over multi-dimensional data.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReportNd {
    pub eta: f64,
    pub kmax: usize,
    /// One outcome per subset, in lexicographic order of the index vectors.
    pub subsets: Vec<SubsetOutcomeNd>,
    pub all_feasible: bool,
    /// Position (in `subsets`) of the first infeasible subset, if any.
    pub worst: Option<usize>,
}

/// Scans every subset of at most `kmax` samples for feasibility.
///
/// A subset passes when each member's admissible polyhedron — built against
/// the full sample set, not just the subset — is nonempty, and the selection
/// search restricted to the subset reaches its violation target.  Subsets
/// are visited in lexicographic order.  Refuses more than
/// [`crate::select1d::SCAN_GUARD`] points unless `allow_large` is set.
pub fn finiteness_scan_nd(
    s: &SampleSet,
    eta: f64,
    kmax: usize,
    allow_large: bool,
    cfg: &SelectionConfig,
) -> Result<ScanReportNd> {
    cfg.validate()?;
    if kmax == 0 {
        return Err(Error::BadParameter("kmax must be at least 1".into()));
    }
    if s.is_empty() {
        return Err(Error::TooFew {
            what: "sample points",
            need: 1,
            got: 0,
        });
    }
    let guard = crate::select1d::SCAN_GUARD;
    if s.len() > guard && !allow_large {
        return Err(Error::TooManyPoints {
            n: s.len(),
            limit: guard,
        });
    }
    if !allow_large && crate::select1d::subset_count(s.len(), kmax) > 5_000_000 {
        return Err(Error::BadParameter(format!(
            "scan would visit {} subsets; pass allow_large to proceed",
            crate::select1d::subset_count(s.len(), kmax)
        )));
    }
    let mut polys = Vec::with_capacity(s.len());
    let mut witnesses: Vec<Option<Vec<f64>>> = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let p = gamma_polyhedron_at(s, i, eta)?;
        let feas = polyhedron_nonempty(&p, cfg.tol)?;
        witnesses.push(feas.witness);
        polys.push(p);
    }
    let mut subsets = Vec::new();
    let mut worst = None;
    for indices in crate::select1d::lex_subsets(s.len(), kmax) {
        let empty_at = indices.iter().copied().find(|&i| witnesses[i].is_none());
        let outcome = if let Some(bad) = empty_at {
            SubsetOutcomeNd {
                indices,
                polys_nonempty: false,
                empty_at: Some(bad),
                l: None,
                feasible: false,
            }
        } else {
            let points: Vec<&Point> = indices.iter().map(|&i| s.point(i)).collect();
            let poly_refs: Vec<&GammaPolyhedron> = indices.iter().map(|&i| &polys[i]).collect();
            let start: Vec<Vec<f64>> = indices
                .iter()
                .map(|&i| witnesses[i].clone().expect("checked nonempty"))
                .collect();
            let sel = selection_core(&points, &poly_refs, start, cfg)?;
            SubsetOutcomeNd {
                indices,
                polys_nonempty: true,
                empty_at: None,
                l: Some(sel.l),
                feasible: sel.converged,
            }
        };
        if !outcome.feasible && worst.is_none() {
            worst = Some(subsets.len());
        }
        subsets.push(outcome);
    }
    Ok(ScanReportNd {
        eta,
        kmax,
        all_feasible: worst.is_none(),
        worst,
        subsets,
    })
}
