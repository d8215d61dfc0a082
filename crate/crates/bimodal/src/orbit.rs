//! Orbit iteration, attractor detection and classification from the two
//! critical orbits, Lyapunov exponents, bistability, and the period-2
//! machinery.
//!
//! Because the Schwarzian derivative is negative for `k < -4`, every
//! attractor of the map absorbs a critical orbit; iterating from `x_max`
//! and `x_min` therefore finds every attractor, and there are at most two.

use crate::error::{Error, Result};
use crate::map::{self, MapParams};
use crate::regions;
use crate::tol;

/// A sampled orbit: `n_sample` iterates recorded after a transient.
#[derive(Debug, Clone)]
pub struct OrbitResult {
    pub seed: f64,
    pub tail: Vec<f64>,
    /// Set when some iterate left `[-ESCAPE_BOUND, ESCAPE_BOUND]`; the tail
    /// then holds whatever was collected before the escape.
    pub escaped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttractorKind {
    FixedPoint,
    Cycle,
    Chaotic,
    Divergent,
}

impl AttractorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttractorKind::FixedPoint => "fixed_point",
            AttractorKind::Cycle => "cycle",
            AttractorKind::Chaotic => "chaotic",
            AttractorKind::Divergent => "divergent",
        }
    }
}

/// A classified ω-limit set.
#[derive(Debug, Clone)]
pub struct Attractor {
    pub kind: AttractorKind,
    /// Minimal period; `Some(1)` for a fixed point, `None` for chaotic or
    /// divergent verdicts.
    pub period: Option<usize>,
    /// Sorted support summary: the orbit points for a cycle, the flattened
    /// band endpoints `[lo1, hi1, lo2, hi2, ..]` for a chaotic attractor.
    pub points: Vec<f64>,
    /// `(1/n) Σ ln|f'(x_i)|` over the cycle (exact points) or the tail.
    pub lyapunov: f64,
}

impl Attractor {
    /// Support as a union of closed intervals (degenerate for cycles).
    pub fn bands(&self) -> Vec<(f64, f64)> {
        match self.kind {
            AttractorKind::Chaotic => {
                self.points.chunks(2).map(|c| (c[0], c[1])).collect()
            }
            _ => self.points.iter().map(|&x| (x, x)).collect(),
        }
    }

    /// Distance from `x` to the support.
    pub fn distance_to(&self, x: f64) -> f64 {
        self.bands()
            .iter()
            .map(|&(lo, hi)| {
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// The one or two attractors found from the critical seeds.
#[derive(Debug, Clone)]
pub struct AttractorSet {
    /// Seed order: the `x_max` orbit's attractor first. Length 1 or 2.
    pub attractors: Vec<Attractor>,
    pub bistable: bool,
}

impl AttractorSet {
    pub fn periods(&self) -> Vec<usize> {
        self.attractors.iter().map(|a| a.period.unwrap_or(0)).collect()
    }
}

/// Iteration budgets for attractor detection.
#[derive(Debug, Clone, Copy)]
pub struct AttractorOptions {
    pub n_transient: usize,
    pub n_sample: usize,
    /// On an unresolved verdict, keep iterating (geometrically growing
    /// transient) up to `ITERATION_CAP` before reporting it.
    pub auto_extend: bool,
}

impl Default for AttractorOptions {
    fn default() -> Self {
        Self {
            n_transient: tol::N_TRANSIENT_DEFAULT,
            n_sample: tol::N_SAMPLE_DEFAULT,
            auto_extend: true,
        }
    }
}

/// The unique 2-cycle of the map, with its algebraic invariants.
///
/// Writing `u_i = 1/(1 + e^{x_i})`, a 2-cycle satisfies `u1 + u2 = 2b/k`
/// and `k = 2(x2 - x1)/(u2 - u1)`, which pins the cycle uniquely.
#[derive(Debug, Clone, Copy)]
pub struct Period2Orbit {
    pub x1: f64,
    pub x2: f64,
    pub u1: f64,
    pub u2: f64,
    /// `u1 + u2`, equal to `2b/k`.
    pub big_b: f64,
    /// `2(x2 - x1)/(u2 - u1)`, equal to `k`.
    pub k_reconstructed: f64,
}

/// Apply the map `n_transient` times, then record `n_sample` further
/// iterates. Escape aborts early.
pub fn iterate(p: MapParams, x0: f64, n_transient: usize, n_sample: usize) -> OrbitResult {
    let mut x = x0;
    for _ in 0..n_transient {
        x = map::eval(p, x);
        if x.abs() > tol::ESCAPE_BOUND {
            return OrbitResult { seed: x0, tail: Vec::new(), escaped: true };
        }
    }
    let mut tail = Vec::with_capacity(n_sample);
    for _ in 0..n_sample {
        x = map::eval(p, x);
        if x.abs() > tol::ESCAPE_BOUND {
            return OrbitResult { seed: x0, tail, escaped: true };
        }
        tail.push(x);
    }
    OrbitResult { seed: x0, tail, escaped: false }
}

fn lyapunov_over(points: &[f64], p: MapParams) -> f64 {
    let sum: f64 = points
        .iter()
        .map(|&x| map::derivative(p, x, 1).abs().max(f64::MIN_POSITIVE).ln())
        .sum();
    sum / points.len() as f64
}

/// Smallest period `<= P_MAX` under which the tail is shift-invariant,
/// judged relative to the tail diameter.
fn detect_period(tail: &[f64], diameter: f64) -> Option<usize> {
    let n = tail.len();
    let tol_abs = tol::PERIOD_REL_TOL * diameter;
    for per in 1..=tol::P_MAX.min(n / 2) {
        if tail[..n - per]
            .iter()
            .zip(&tail[per..])
            .all(|(a, b)| (a - b).abs() <= tol_abs)
        {
            return Some(per);
        }
    }
    None
}

/// Newton polish of a cycle point: root of `f^n(x) - x`.
fn polish_cycle_point(p: MapParams, x0: f64, n: usize) -> Option<f64> {
    let mut x = x0;
    for _ in 0..tol::NEWTON_MAX_ITER {
        let mut y = x;
        let mut deriv = 1.0;
        for _ in 0..n {
            deriv *= map::derivative(p, y, 1);
            y = map::eval(p, y);
        }
        let g = y - x;
        let gp = deriv - 1.0;
        if gp.abs() < tol::JACOBIAN_SINGULAR {
            return None;
        }
        let step = g / gp;
        x -= step;
        if g.abs() < 1e-13 {
            return Some(x);
        }
    }
    None
}

/// Split a tail into bands: sorted values further apart than
/// `BAND_GAP_FRACTION` of the diameter start a new band.
fn bands_of(tail: &[f64]) -> Vec<(f64, f64)> {
    let mut s = tail.to_vec();
    s.sort_by(f64::total_cmp);
    let diameter = s[s.len() - 1] - s[0];
    let gap = tol::BAND_GAP_FRACTION * diameter;
    let mut out = Vec::new();
    let mut lo = s[0];
    let mut prev = s[0];
    for &v in &s[1..] {
        if v - prev > gap {
            out.push((lo, prev));
            lo = v;
        }
        prev = v;
    }
    out.push((lo, prev));
    out
}

/// Classify a (bounded, non-escaped) orbit tail.
///
/// Periods are searched first; a detected cycle is Newton-polished, reduced
/// to its minimal period, and must satisfy `|f^p(x) - x| < CYCLE_RESIDUAL`
/// on every point with a negative Lyapunov exponent. Otherwise the orbit is
/// chaotic when the Lyapunov estimate clears `CHAOS_LYAP_MIN`, and
/// unresolved (an error, not a guess) when the estimate sits in the dead
/// band around zero.
pub fn classify_orbit(tail: &[f64], p: MapParams) -> Result<Attractor> {
    assert!(!tail.is_empty(), "classify_orbit needs a nonempty tail");
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in tail {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    let diameter = hi - lo;

    if let Some(per) = detect_period(tail, diameter) {
        if let Some(cycle) = build_cycle(p, tail[tail.len() - 1], per) {
            return Ok(cycle);
        }
    }
    let lyapunov = lyapunov_over(tail, p);
    if lyapunov > tol::CHAOS_LYAP_MIN {
        let points: Vec<f64> = bands_of(tail).into_iter().flat_map(|(a, b)| [a, b]).collect();
        return Ok(Attractor { kind: AttractorKind::Chaotic, period: None, points, lyapunov });
    }
    Err(Error::UnresolvedAttractor { lyapunov, p_max: tol::P_MAX })
}

/// Polish a representative point, reduce to the minimal period, and build
/// the cycle attractor. `None` if polishing fails or the cycle is unstable
/// (which means the period detection was spurious).
fn build_cycle(p: MapParams, representative: f64, per: usize) -> Option<Attractor> {
    let x0 = polish_cycle_point(p, representative, per)?;
    // minimal period: smallest divisor of `per` that already closes the orbit
    let mut period = per;
    for d in 1..=per {
        if per % d == 0 && (map::eval_n(p, x0, d) - x0).abs() < tol::CYCLE_RESIDUAL {
            period = d;
            break;
        }
    }
    let mut points = Vec::with_capacity(period);
    let mut y = x0;
    for _ in 0..period {
        points.push(y);
        y = map::eval(p, y);
    }
    if (y - x0).abs() >= tol::CYCLE_RESIDUAL {
        return None;
    }
    let lyapunov = lyapunov_over(&points, p);
    if lyapunov >= 0.0 {
        return None; // neutral or repelling: not a trustworthy cycle verdict
    }
    points.sort_by(f64::total_cmp);
    let kind = if period == 1 { AttractorKind::FixedPoint } else { AttractorKind::Cycle };
    Some(Attractor { kind, period: Some(period), points, lyapunov })
}

fn divergent(lyapunov: f64) -> Attractor {
    Attractor { kind: AttractorKind::Divergent, period: None, points: Vec::new(), lyapunov }
}

/// Iterate one seed to a classified attractor, extending the transient
/// geometrically (within `ITERATION_CAP`) when the verdict is unresolved.
fn classify_seed(p: MapParams, seed: f64, opt: &AttractorOptions) -> Result<(Attractor, Vec<f64>)> {
    let mut x = seed;
    let mut spent = 0usize;
    let mut transient = opt.n_transient;
    loop {
        for _ in 0..transient {
            x = map::eval(p, x);
            if x.abs() > tol::ESCAPE_BOUND {
                return Ok((divergent(f64::NAN), Vec::new()));
            }
        }
        spent += transient;
        let mut tail = Vec::with_capacity(opt.n_sample);
        for _ in 0..opt.n_sample {
            x = map::eval(p, x);
            if x.abs() > tol::ESCAPE_BOUND {
                return Ok((divergent(f64::NAN), tail));
            }
            tail.push(x);
        }
        spent += opt.n_sample;
        match classify_orbit(&tail, p) {
            Ok(a) => return Ok((a, tail)),
            Err(e @ Error::UnresolvedAttractor { .. }) => {
                if !opt.auto_extend || spent * 4 > tol::ITERATION_CAP {
                    return Err(e);
                }
                transient = spent * 3;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Do two classified orbits describe the same attractor?
///
/// Cycles compare by period and Hausdorff distance of their point sets.
/// Chaotic attractors compare by mutual band coverage: finite sampling puts
/// a floor on how precisely band endpoints can agree, but points of one
/// orbit land inside the other's bands essentially always when the
/// attractor is shared and essentially never when it is not.
fn same_attractor(a: &Attractor, tail_a: &[f64], b: &Attractor, tail_b: &[f64]) -> bool {
    use AttractorKind::*;
    match (a.kind, b.kind) {
        (FixedPoint | Cycle, FixedPoint | Cycle) => {
            a.period == b.period && hausdorff_points(&a.points, &b.points) < tol::MERGE_TOL_CYCLE
        }
        (Chaotic, Chaotic) => {
            let diameter = {
                let all_lo = a.points[0].min(b.points[0]);
                let all_hi = a.points[a.points.len() - 1].max(b.points[b.points.len() - 1]);
                all_hi - all_lo
            };
            let inflation = tol::MERGE_BAND_INFLATION * diameter;
            coverage(tail_a, &b.bands(), inflation) >= tol::MERGE_COVERAGE
                && coverage(tail_b, &a.bands(), inflation) >= tol::MERGE_COVERAGE
        }
        (Divergent, Divergent) => true,
        _ => false,
    }
}

fn coverage(tail: &[f64], bands: &[(f64, f64)], inflation: f64) -> f64 {
    if tail.is_empty() {
        return 0.0;
    }
    let hit = tail
        .iter()
        .filter(|&&x| bands.iter().any(|&(lo, hi)| x >= lo - inflation && x <= hi + inflation))
        .count();
    hit as f64 / tail.len() as f64
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_points(a: &[f64], b: &[f64]) -> f64 {
    fn directed(from: &[f64], to: &[f64]) -> f64 {
        from.iter()
            .map(|&x| to.iter().map(|&y| (x - y).abs()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
    directed(a, b).max(directed(b, a))
}

/// Symmetric Hausdorff distance between two unions of closed intervals.
pub fn band_hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn dist_point(x: f64, to: &[(f64, f64)]) -> f64 {
        to.iter()
            .map(|&(lo, hi)| if x < lo { lo - x } else if x > hi { x - hi } else { 0.0 })
            .fold(f64::INFINITY, f64::min)
    }
    // sup over a union of intervals of the distance to the other union is
    // attained at an interval endpoint or at a gap midpoint of the other set
    fn directed(from: &[(f64, f64)], to: &[(f64, f64)]) -> f64 {
        let mut candidates: Vec<f64> = Vec::new();
        for &(lo, hi) in from {
            candidates.push(lo);
            candidates.push(hi);
            for w in to.windows(2) {
                let mid = 0.5 * (w[0].1 + w[1].0);
                candidates.push(mid.clamp(lo, hi));
            }
        }
        candidates.into_iter().map(|x| dist_point(x, to)).fold(0.0, f64::max)
    }
    directed(a, b).max(directed(b, a))
}

/// Directed check that an orbit tail has converged to an attractor: every
/// tail point within `tolerance` of the support.
///
/// Chaotic supports are known only through sampled band endpoints, which
/// sit slightly inside the true bands, so they get the same
/// diameter-relative inflation the merge criterion uses; cycle supports
/// are exact and keep the sharp tolerance.
pub fn orbit_matches_attractor(tail: &[f64], attractor: &Attractor, tolerance: f64) -> bool {
    if tail.is_empty() || attractor.points.is_empty() {
        return false;
    }
    let slack = match attractor.kind {
        AttractorKind::Chaotic => {
            let diameter = attractor.points[attractor.points.len() - 1] - attractor.points[0];
            tolerance.max(tol::MERGE_BAND_INFLATION * diameter)
        }
        _ => tolerance,
    };
    tail.iter().all(|&x| attractor.distance_to(x) <= slack)
}

/// Attractors of the two critical orbits, merged when they coincide.
pub fn attractor_set(p: MapParams) -> Result<AttractorSet> {
    attractor_set_with(p, &AttractorOptions::default())
}

/// As `attractor_set` with explicit budgets.
pub fn attractor_set_with(p: MapParams, opt: &AttractorOptions) -> Result<AttractorSet> {
    if !p.in_p() || !(p.k < -4.0) {
        return Err(Error::Domain(format!(
            "attractor detection requires (b,k) in P with k < -4 (got b = {}, k = {})",
            p.b, p.k
        )));
    }
    let ext = map::extrema(p.k).expect("k < -4");
    let (a_max, tail_max) = classify_seed(p, ext.x_max, opt)?;
    let (a_min, tail_min) = classify_seed(p, ext.x_min, opt)?;
    if same_attractor(&a_max, &tail_max, &a_min, &tail_min) {
        Ok(AttractorSet { attractors: vec![a_max], bistable: false })
    } else {
        Ok(AttractorSet { attractors: vec![a_max, a_min], bistable: true })
    }
}

/// CSV rows for attractor summaries:
/// `b,k,seed_tag,kind,period,lyapunov,points` (points semicolon-joined,
/// 12 significant digits).
pub fn attractors_to_csv(p: MapParams, set: &AttractorSet) -> String {
    let mut out = String::from("b,k,seed_tag,kind,period,lyapunov,points\n");
    let tags = ["max", "min"];
    for (i, a) in set.attractors.iter().enumerate() {
        let pts: Vec<String> = a.points.iter().map(|x| format!("{x:.11e}")).collect();
        out.push_str(&format!(
            "{:.11e},{:.11e},{},{},{},{:.11e},{}\n",
            p.b,
            p.k,
            tags[i],
            a.kind.as_str(),
            a.period.unwrap_or(0),
            a.lyapunov,
            pts.join(";")
        ));
    }
    out
}

fn require_unstable_fixed_point(p: MapParams) -> Result<f64> {
    if !p.in_p() {
        return Err(Error::NotInRegion(format!("(b,k) = ({}, {}) outside P", p.b, p.k)));
    }
    let x_star = map::fixed_point(p)?;
    let eig = map::derivative(p, x_star, 1);
    if eig >= -1.0 {
        return Err(Error::NotInRegion(format!(
            "fixed point stable (f'(x*) = {eig}); the 2-cycle exists only where f'(x*) < -1"
        )));
    }
    Ok(x_star)
}

/// Locate the unique 2-cycle by bisection on `f^2(x) - x` over
/// `(-X_BIG, x*)`.
///
/// `f^2(x) - x -> 2(b-k) > 0` as `x -> -inf` while `(f^2)'(x*) > 1` makes
/// it negative just left of `x*`, so a sign change is guaranteed; its root
/// is `x1` and the partner is `x2 = f(x1)`.
pub fn find_period2(p: MapParams) -> Result<Period2Orbit> {
    let x_star = require_unstable_fixed_point(p)?;
    let g = |x: f64| map::eval_n(p, x, 2) - x;

    let mut x_hi = None;
    let mut delta = 1.0;
    for _ in 0..60 {
        let cand = x_star - delta;
        if cand > -tol::X_BIG && g(cand) < 0.0 {
            x_hi = Some(cand);
            break;
        }
        delta *= 0.5;
    }
    let mut hi = x_hi.ok_or(Error::Bracket { b: p.b, k: p.k, x_big: tol::X_BIG })?;
    let mut lo = -tol::X_BIG;
    if g(lo) <= 0.0 {
        return Err(Error::Bracket { b: p.b, k: p.k, x_big: tol::X_BIG });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if gm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + hi.abs()) {
            break;
        }
    }
    let x1 = polish_cycle_point(p, 0.5 * (lo + hi), 2).unwrap_or(0.5 * (lo + hi));
    let x2 = map::eval(p, x1);
    let u1 = map::logistic_u(x1);
    let u2 = map::logistic_u(x2);
    Ok(Period2Orbit {
        x1,
        x2,
        u1,
        u2,
        big_b: u1 + u2,
        k_reconstructed: 2.0 * (x2 - x1) / (u2 - u1),
    })
}

/// Count the period-2 roots of `f^2(x) - x` (excluding `x*`) on a dense
/// mesh over the absorbing interval inflated by 20%. The uniqueness lemma
/// says this is always 2.
pub fn period2_uniqueness_check(p: MapParams) -> Result<usize> {
    let x_star = require_unstable_fixed_point(p)?;
    let j = regions::absorbing_interval(p)?;
    let pad = 0.2 * (j.hi - j.lo);
    let (lo, hi) = (j.lo - pad, j.hi + pad);
    let g = |x: f64| map::eval_n(p, x, 2) - x;
    let n = tol::UNIQUENESS_MESH;
    let mut count = 0usize;
    let mut x_prev = lo;
    let mut g_prev = g(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let gx = g(x);
        if g_prev * gx < 0.0 && !(x_prev <= x_star && x_star <= x) {
            count += 1;
        }
        x_prev = x;
        g_prev = gx;
    }
    Ok(count)
}

/// `h(u) = ln(1/u - 1)`, the inverse of `u(x)`.
pub fn h_of_u(u: f64) -> f64 {
    (1.0 / u - 1.0).ln()
}

/// The depth `k` of the 2-cycle with trace parameter `B = 2b/k` and larger
/// logistic coordinate `u`:
/// `k(u) = 2 (h(u) - h(B-u)) / (2u - B)`.
///
/// Strictly decreasing in `u` and bounded above by its limit
/// `8/(B(B-2))` at `u -> B/2` (a negative number).
pub fn k_of_u(big_b: f64, u: f64) -> Result<f64> {
    if !(0.0 < big_b && big_b < 2.0) {
        return Err(Error::Domain(format!("B must lie in (0, 2), got {big_b}")));
    }
    if !(u > big_b / 2.0 && u < big_b.min(1.0)) {
        return Err(Error::Domain(format!(
            "u must lie in (B/2, min(B,1)) = ({}, {}), got {u}",
            big_b / 2.0,
            big_b.min(1.0)
        )));
    }
    Ok(2.0 * (h_of_u(u) - h_of_u(big_b - u)) / (2.0 * u - big_b))
}
