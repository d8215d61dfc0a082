//! Every numeric tolerance and iteration budget used by the crate, in one
//! place. Tests assert against these same constants, so changing one here
//! changes the contract everywhere at once.

/// Residual tolerance for analytic identities (critical-point derivative,
/// extrema antisymmetry, symmetry conjugation).
pub const EPS_DERIV: f64 = 1e-12;

/// Agreement tolerance between the closed-form Schwarzian and the
/// derivative-composition route.
pub const EPS_XCHECK: f64 = 1e-8;

/// `schwarzian` rejects points with |f'(x)| below this.
pub const CRITICAL_GUARD: f64 = 1e-10;

/// Region classification treats |boundary residual| below this as a tie and
/// resolves it toward the simpler region.
pub const BOUNDARY_TIE: f64 = 1e-14;

/// Defining relations of the absorbing-interval boundary curves
/// (f(x_max) = x_min at b1, f(x_min) = x_max at b2).
pub const EPS_GAMMA: f64 = 1e-9;

/// Fixed-point eigenvalue residual on the flip curve: |f'(x*) + 1|.
pub const EPS_FLIP: f64 = 1e-10;

/// Period detection threshold, relative to the orbit tail diameter.
pub const PERIOD_REL_TOL: f64 = 1e-8;

/// Cycle points are polished until |f^p(x) - x| is below this.
pub const CYCLE_RESIDUAL: f64 = 1e-9;

/// Lyapunov exponent above which a bounded aperiodic orbit is called chaotic;
/// estimates in [-CHAOS_LYAP_MIN, CHAOS_LYAP_MIN] with no period found are
/// reported as unresolved rather than guessed.
pub const CHAOS_LYAP_MIN: f64 = 1e-3;

/// Hausdorff distance below which two detected cycles are the same attractor.
pub const MERGE_TOL_CYCLE: f64 = 1e-6;

/// Chaotic attractors merge when at least this fraction of each tail lies
/// inside the other's band set (finite sampling makes a tight Hausdorff
/// criterion unattainable for bands; coverage is scale-free and sharp).
pub const MERGE_COVERAGE: f64 = 0.75;

/// Band inflation used by the coverage test, relative to tail diameter.
pub const MERGE_BAND_INFLATION: f64 = 0.005;

/// Sorted tail values further apart than this fraction of the tail diameter
/// start a new chaotic band.
pub const BAND_GAP_FRACTION: f64 = 0.01;

/// Consistency tolerance for the 2-cycle invariants (B = 2b/k and the
/// reconstruction of k from the cycle points).
pub const EPS_PERIOD2: f64 = 1e-10;

/// Orbits leaving [-ESCAPE_BOUND, ESCAPE_BOUND] are flagged escaped.
pub const ESCAPE_BOUND: f64 = 1e6;

/// Hard cap on total iterations spent on one seed.
pub const ITERATION_CAP: usize = 10_000_000;

/// Largest minimal period the classifier searches for.
pub const P_MAX: usize = 512;

/// Default transient length before sampling an orbit.
pub const N_TRANSIENT_DEFAULT: usize = 100_000;

/// Default number of post-transient samples (2 * P_MAX).
pub const N_SAMPLE_DEFAULT: usize = 1024;

/// Newton residual tolerance for cycle/bifurcation systems.
pub const NEWTON_TOL: f64 = 1e-10;

/// Newton iteration cap.
pub const NEWTON_MAX_ITER: usize = 50;

/// |det| below this is treated as a singular Newton system.
pub const JACOBIAN_SINGULAR: f64 = 1e-14;

/// Residual tolerance for emitted bifurcation-curve points: |f^n(x) - x|.
pub const BIF_CYCLE_TOL: f64 = 1e-10;

/// Residual tolerance for emitted bifurcation-curve points: |(f^n)'(x) -/+ 1|.
pub const BIF_EIGEN_TOL: f64 = 1e-8;

/// Left end of the bracket used when hunting the 2-cycle.
pub const X_BIG: f64 = 1e4;

/// Mesh size for the 2-cycle uniqueness scan.
pub const UNIQUENESS_MESH: usize = 50_000;

/// ODE step-size controller safety factor.
pub const ODE_SAFETY: f64 = 0.9;

/// ODE step clamp.
pub const ODE_H_MIN: f64 = 1e-14;
pub const ODE_H_MAX: f64 = 1.0;

/// Time tolerance for Poincaré event bisection.
pub const EVENT_TIME_TOL: f64 = 1e-10;

/// Components of an ODE state more negative than this are an integrator
/// defect; values in (-OCTANT_SLACK, 0) are zeroed.
pub const OCTANT_SLACK: f64 = 1e-12;
