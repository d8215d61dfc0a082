//! Numerical continuation of fold (`(f^n)' = +1`) and flip (`(f^n)' = -1`)
//! bifurcation curves of n-cycles in the `(b, k)` plane, plus scan-based
//! detection of crisis (final-bifurcation) boundaries of attractor
//! families.
//!
//! The defining system for a curve point is
//!
//! ```text
//!     F1(x, b, k) = f^n(x) - x          = 0
//!     F2(x, b, k) = (f^n)'(x) -/+ 1     = 0
//! ```
//!
//! All Jacobians are assembled analytically by chain-rule accumulation
//! along the orbit (`df/db = 1`, `df/dk = -u(x)`); finite differencing the
//! multiplier of a 5- or 7-cycle would lose most of its digits.

use crate::error::{Error, Result};
use crate::map::{self, MapParams};
use crate::orbit::{self, AttractorKind, AttractorOptions};
use crate::tol;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BifurcationKind {
    /// Critical eigenvalue +1: a stable/unstable cycle pair is born.
    Fold,
    /// Critical eigenvalue -1: period doubling.
    Flip,
}

impl BifurcationKind {
    pub fn target_eigenvalue(&self) -> f64 {
        match self {
            BifurcationKind::Fold => 1.0,
            BifurcationKind::Flip => -1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            BifurcationKind::Fold => "fold",
            BifurcationKind::Flip => "flip",
        }
    }
}

/// A point on a bifurcation curve: `(b, k)` plus one point `x` of the
/// n-cycle whose multiplier sits at ±1.
#[derive(Debug, Clone, Copy)]
pub struct BifurcationPoint {
    pub b: f64,
    pub k: f64,
    pub x: f64,
    pub n: usize,
    pub kind: BifurcationKind,
}

impl BifurcationPoint {
    pub fn params(&self) -> MapParams {
        MapParams::new(self.b, self.k)
    }

    /// Residuals of the defining equations, recomputed through plain map
    /// composition: `(|f^n(x) - x|, |(f^n)'(x) - s|)`.
    pub fn residuals(&self) -> (f64, f64) {
        let p = self.params();
        let mut y = self.x;
        let mut lambda = 1.0;
        for _ in 0..self.n {
            lambda *= map::derivative(p, y, 1);
            y = map::eval(p, y);
        }
        ((y - self.x).abs(), (lambda - self.kind.target_eigenvalue()).abs())
    }
}

/// Why a continuation run stopped on one end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Reached the requested k-range boundary.
    RangeExhausted,
    /// The curve left `P`.
    LeftRegionP,
    /// Corrector kept failing after shrinking the step to step/64.
    StepUnderflow,
}

/// A polyline of curve points, ordered along the curve.
#[derive(Debug, Clone)]
pub struct BifurcationCurve {
    pub kind: BifurcationKind,
    pub n: usize,
    pub points: Vec<BifurcationPoint>,
    pub stop_backward: StopReason,
    pub stop_forward: StopReason,
}

impl BifurcationCurve {
    pub fn id(&self) -> String {
        format!("{}_{}", self.kind.as_str(), self.n)
    }
}

/// One sample of a crisis boundary located by scanning.
#[derive(Debug, Clone, Copy)]
pub struct CrisisBoundarySample {
    pub b: f64,
    pub k: f64,
    pub n_family: usize,
}

/// Which parameter a solver treats as free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    B,
    K,
}

/// Value and first-order sensitivities of `f^n` and its multiplier along
/// an orbit.
struct CycleJet {
    x_n: f64,
    lambda: f64,
    dxn_db: f64,
    dxn_dk: f64,
    dlam_dx: f64,
    dlam_db: f64,
    dlam_dk: f64,
}

fn cycle_jet(p: MapParams, x: f64, n: usize) -> CycleJet {
    let mut xs = Vec::with_capacity(n);
    let mut y = x;
    for _ in 0..n {
        xs.push(y);
        y = map::eval(p, y);
    }
    let d1: Vec<f64> = xs.iter().map(|&xi| map::derivative(p, xi, 1)).collect();
    let d2: Vec<f64> = xs.iter().map(|&xi| map::derivative(p, xi, 2)).collect();
    let us: Vec<f64> = xs.iter().map(|&xi| map::logistic_u(xi)).collect();

    // prefix[j] = f'(x_0)..f'(x_{j-1}) = dx_j/dx, suffix[j] = f'(x_{j+1})..f'(x_{n-1})
    let mut prefix = vec![1.0; n];
    for j in 1..n {
        prefix[j] = prefix[j - 1] * d1[j - 1];
    }
    let mut suffix = vec![1.0; n];
    for j in (0..n - 1).rev() {
        suffix[j] = suffix[j + 1] * d1[j + 1];
    }
    let lambda = prefix[n - 1] * d1[n - 1];

    // sensitivities of the orbit points: s_j = dx_j/db, t_j = dx_j/dk
    let mut s = vec![0.0; n + 1];
    let mut t = vec![0.0; n + 1];
    for j in 0..n {
        s[j + 1] = d1[j] * s[j] + 1.0;
        t[j + 1] = d1[j] * t[j] - us[j];
    }

    let mut dlam_dx = 0.0;
    let mut dlam_db = 0.0;
    let mut dlam_dk = 0.0;
    for j in 0..n {
        let rest = prefix[j] * suffix[j]; // product over i != j
        dlam_dx += d2[j] * prefix[j] * rest;
        dlam_db += d2[j] * s[j] * rest;
        // f' depends on k directly as well: d(f')/dk = u(1-u)
        dlam_dk += (d2[j] * t[j] + us[j] * (1.0 - us[j])) * rest;
    }
    CycleJet { x_n: y, lambda, dxn_db: s[n], dxn_dk: t[n], dlam_dx, dlam_db, dlam_dk }
}

/// Newton on the 2-unknown system in `(x, free-parameter)` with the other
/// parameter fixed.
fn newton_bif(
    p0: MapParams,
    x0: f64,
    n: usize,
    kind: BifurcationKind,
    free: Axis,
) -> Result<BifurcationPoint> {
    let target = kind.target_eigenvalue();
    let mut x = x0;
    let mut p = p0;
    let mut r1 = f64::INFINITY;
    let mut r2 = f64::INFINITY;
    for _ in 0..tol::NEWTON_MAX_ITER {
        let jet = cycle_jet(p, x, n);
        r1 = jet.x_n - x;
        r2 = jet.lambda - target;
        if r1.abs() < tol::NEWTON_TOL && r2.abs() < tol::NEWTON_TOL {
            let point = BifurcationPoint { b: p.b, k: p.k, x, n, kind };
            return finish_bif_point(point);
        }
        let (j12, j22) = match free {
            Axis::B => (jet.dxn_db, jet.dlam_db),
            Axis::K => (jet.dxn_dk, jet.dlam_dk),
        };
        let j11 = jet.lambda - 1.0;
        let j21 = jet.dlam_dx;
        let det = j11 * j22 - j12 * j21;
        if det.abs() < tol::JACOBIAN_SINGULAR {
            return Err(Error::SingularJacobian { det_abs: det.abs() });
        }
        let mut dx = (-r1 * j22 + r2 * j12) / det;
        let mut dp = (-j11 * r2 + j21 * r1) / det;
        // damp wild steps so a rough seed cannot fling the iterate away
        let scale = dx.abs().max(dp.abs() / 0.25).max(1.0);
        dx /= scale;
        dp /= scale;
        x += dx;
        match free {
            Axis::B => p.b += dp,
            Axis::K => p.k += dp,
        }
    }
    Err(Error::NoConvergence { iters: tol::NEWTON_MAX_ITER, r1: r1.abs(), r2: r2.abs() })
}

/// Reject converged points whose cycle is not of minimal period n (the
/// fold system of period 2n is also solved by period-n flip points, and
/// the n = 2 fold system by the fixed point's flip locus).
fn finish_bif_point(point: BifurcationPoint) -> Result<BifurcationPoint> {
    let p = point.params();
    for d in 1..point.n {
        if point.n % d == 0 && (map::eval_n(p, point.x, d) - point.x).abs() < tol::CYCLE_RESIDUAL {
            return Err(Error::NoConvergence {
                iters: 0,
                r1: (map::eval_n(p, point.x, d) - point.x).abs(),
                r2: f64::INFINITY,
            });
        }
    }
    Ok(point)
}

/// Locate a fold/flip point of an n-cycle from an approximate solution.
///
/// Newton runs in `(x, b)` at fixed `k` first; if that system is singular
/// or stalls (the curve may run tangent to constant k), it retries in
/// `(x, k)` at fixed `b`.
pub fn locate_cycle_bifurcation(
    p0: MapParams,
    x0: f64,
    n: usize,
    kind: BifurcationKind,
) -> Result<BifurcationPoint> {
    match newton_bif(p0, x0, n, kind, Axis::B) {
        Ok(pt) => Ok(pt),
        Err(_) => newton_bif(p0, x0, n, kind, Axis::K),
    }
}

/// Newton for a point of an n-cycle at fixed parameters, warm-started from
/// `x0`. Returns the cycle point and its multiplier.
pub fn find_cycle(p: MapParams, x0: f64, n: usize) -> Result<(f64, f64)> {
    let mut x = x0;
    for _ in 0..tol::NEWTON_MAX_ITER {
        let jet = cycle_jet(p, x, n);
        let g = jet.x_n - x;
        let gp = jet.lambda - 1.0;
        if gp.abs() < tol::JACOBIAN_SINGULAR {
            return Err(Error::SingularJacobian { det_abs: gp.abs() });
        }
        x -= g / gp;
        if g.abs() < 1e-12 {
            let jet = cycle_jet(p, x, n);
            return Ok((x, jet.lambda));
        }
    }
    let jet = cycle_jet(p, x, n);
    Err(Error::NoConvergence { iters: tol::NEWTON_MAX_ITER, r1: (jet.x_n - x).abs(), r2: 0.0 })
}

/// Walk a cycle along one parameter axis until its multiplier crosses the
/// target eigenvalue, then polish the bifurcation point with the free
/// parameter on that axis.
pub fn track_cycle_to_bifurcation(
    p0: MapParams,
    x0: f64,
    n: usize,
    kind: BifurcationKind,
    axis: Axis,
    step: f64,
    max_steps: usize,
) -> Result<BifurcationPoint> {
    let target = kind.target_eigenvalue();
    let (mut x, lambda0) = find_cycle(p0, x0, n)?;
    let mut p = p0;
    let mut prev_gap = lambda0 - target;
    let mut last_gap = prev_gap;
    for _ in 0..max_steps {
        let mut q = p;
        match axis {
            Axis::B => q.b += step,
            Axis::K => q.k += step,
        }
        match find_cycle(q, x, n) {
            Ok((xq, lq)) => {
                let gap = lq - target;
                if gap * prev_gap <= 0.0 {
                    // crossed between p and q: polish from the near side
                    return newton_bif(q, xq, n, kind, axis);
                }
                p = q;
                x = xq;
                prev_gap = gap;
                last_gap = gap;
            }
            Err(_) => {
                // the 1D cycle Newton degenerates as the multiplier nears
                // +1; the 2D system stays regular there, so try it directly
                return newton_bif(p, x, n, kind, axis);
            }
        }
    }
    Err(Error::NoConvergence { iters: max_steps, r1: last_gap.abs(), r2: 0.0 })
}

fn solve3(a: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = rhs[i];
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < tol::JACOBIAN_SINGULAR {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..3 {
            let fac = m[row][col] / m[col][col];
            for c in col..4 {
                m[row][c] -= fac * m[col][c];
            }
        }
    }
    let mut out = [0.0; 3];
    for i in (0..3).rev() {
        let mut v = m[i][3];
        for j in i + 1..3 {
            v -= m[i][j] * out[j];
        }
        out[i] = v / m[i][i];
    }
    Some(out)
}

/// Gradients of the two defining equations at `(x, b, k)`, plus residual
/// pieces.
fn gradients(p: MapParams, x: f64, n: usize) -> ([f64; 3], [f64; 3], f64, f64) {
    let jet = cycle_jet(p, x, n);
    let g1 = [jet.lambda - 1.0, jet.dxn_db, jet.dxn_dk];
    let g2 = [jet.dlam_dx, jet.dlam_db, jet.dlam_dk];
    (g1, g2, jet.x_n - x, jet.lambda)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// One pseudo-arclength corrector solve: Newton on
/// `{F1 = 0, F2 = 0, tangent · (z - z_pred) = 0}`.
fn correct(
    point: BifurcationPoint,
    tangent: [f64; 3],
    kind: BifurcationKind,
) -> Option<BifurcationPoint> {
    let target = kind.target_eigenvalue();
    let mut z = [point.x, point.b, point.k];
    for _ in 0..tol::NEWTON_MAX_ITER {
        let p = MapParams::new(z[1], z[2]);
        let (g1, g2, r1, lambda) = gradients(p, z[0], point.n);
        let r2 = lambda - target;
        if r1.abs() < tol::NEWTON_TOL && r2.abs() < tol::NEWTON_TOL {
            return Some(BifurcationPoint { x: z[0], b: z[1], k: z[2], n: point.n, kind });
        }
        let a = [g1, g2, tangent];
        let delta = solve3(a, [-r1, -r2, 0.0])?;
        if !delta.iter().all(|d| d.is_finite()) {
            return None;
        }
        for i in 0..3 {
            z[i] += delta[i];
        }
    }
    None
}

fn tangent_at(point: &BifurcationPoint) -> Option<[f64; 3]> {
    let (g1, g2, _, _) = gradients(point.params(), point.x, point.n);
    let t = cross(g1, g2);
    let nrm = norm3(t);
    if nrm < 1e-300 {
        return None;
    }
    Some([t[0] / nrm, t[1] / nrm, t[2] / nrm])
}

/// Pseudo-arclength continuation of the curve through `seed`, spanning
/// `k_range` in both directions.
///
/// Steps adapt between `step` and `step/64`; each direction stops at the
/// range boundary, when the curve leaves `P`, or when the corrector keeps
/// failing at the minimum step (the partial curve is returned with the
/// stop reason recorded).
pub fn continue_curve(
    seed: &BifurcationPoint,
    step: f64,
    k_range: (f64, f64),
) -> Result<BifurcationCurve> {
    let (r1, r2) = seed.residuals();
    if r1 > tol::BIF_CYCLE_TOL || r2 > tol::BIF_EIGEN_TOL {
        return Err(Error::NoConvergence { iters: 0, r1, r2 });
    }
    let t0 = tangent_at(seed).ok_or(Error::SingularJacobian { det_abs: 0.0 })?;

    let run = |dir: f64| -> (Vec<BifurcationPoint>, StopReason) {
        let mut pts = Vec::new();
        let mut current = *seed;
        let mut tangent = [t0[0] * dir, t0[1] * dir, t0[2] * dir];
        let mut h = step;
        let mut failures = 0;
        loop {
            let pred = BifurcationPoint {
                x: current.x + h * tangent[0],
                b: current.b + h * tangent[1],
                k: current.k + h * tangent[2],
                n: current.n,
                kind: current.kind,
            };
            match correct(pred, tangent, current.kind) {
                Some(next) => {
                    if next.k < k_range.0 || next.k > k_range.1 {
                        return (pts, StopReason::RangeExhausted);
                    }
                    if !next.params().in_p() {
                        return (pts, StopReason::LeftRegionP);
                    }
                    let mut t_next = match tangent_at(&next) {
                        Some(t) => t,
                        None => return (pts, StopReason::StepUnderflow),
                    };
                    let dot: f64 = (0..3).map(|i| t_next[i] * tangent[i]).sum();
                    if dot < 0.0 {
                        for v in &mut t_next {
                            *v = -*v;
                        }
                    }
                    pts.push(next);
                    current = next;
                    tangent = t_next;
                    h = (h * 1.3).min(step);
                    failures = 0;
                }
                None => {
                    failures += 1;
                    h *= 0.5;
                    if h < step / 64.0 || failures > 24 {
                        return (pts, StopReason::StepUnderflow);
                    }
                }
            }
        }
    };

    let (back, stop_backward) = run(-1.0);
    let (fwd, stop_forward) = run(1.0);
    let mut points: Vec<BifurcationPoint> = back.into_iter().rev().collect();
    points.push(*seed);
    points.extend(fwd);
    Ok(BifurcationCurve { kind: seed.kind, n: seed.n, points, stop_backward, stop_forward })
}

/// Transversal intersection of two bifurcation curves.
#[derive(Debug, Clone, Copy)]
pub struct CurveIntersection {
    pub b: f64,
    pub k: f64,
    /// Cycle point of the first curve's family at the intersection.
    pub x_a: f64,
    /// Cycle point of the second curve's family at the intersection.
    pub x_b: f64,
    /// Local slopes db/dk of the two curves, for quadrant geometry.
    pub slope_a: f64,
    pub slope_b: f64,
}

impl CurveIntersection {
    pub fn params(&self) -> MapParams {
        MapParams::new(self.b, self.k)
    }

    /// Four probe parameter pairs, one per quadrant cut out by the two
    /// curves, at distance `delta` from the intersection along the
    /// bisector directions of the curve tangents.
    pub fn quadrant_probes(&self, delta: f64) -> [MapParams; 4] {
        let unit = |v: (f64, f64)| {
            let n = (v.0 * v.0 + v.1 * v.1).sqrt();
            (v.0 / n, v.1 / n)
        };
        let ta = unit((self.slope_a, 1.0));
        let tb = unit((self.slope_b, 1.0));
        let sum = unit((ta.0 + tb.0, ta.1 + tb.1));
        let diff = unit((ta.0 - tb.0, ta.1 - tb.1));
        let probe = |d: (f64, f64), sign: f64| {
            MapParams::new(self.b + sign * delta * d.0, self.k + sign * delta * d.1)
        };
        [probe(sum, 1.0), probe(sum, -1.0), probe(diff, 1.0), probe(diff, -1.0)]
    }
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Locate the intersection of two curves: find the crossing pair of
/// polyline segments geometrically, then refine by bisection on the signed
/// gap `b_a(k) - b_b(k)` inside that bracket, re-solving each branch by
/// Newton warm-started from the crossing segments (so the iteration cannot
/// wander onto another branch of the same family).
pub fn intersect_curves(a: &BifurcationCurve, b: &BifurcationCurve) -> Result<CurveIntersection> {
    let at = |p: &BifurcationPoint| (p.b, p.k);
    let mut crossing = None;
    'search: for i in 0..a.points.len().saturating_sub(1) {
        let (p1, p2) = (at(&a.points[i]), at(&a.points[i + 1]));
        for j in 0..b.points.len().saturating_sub(1) {
            let (q1, q2) = (at(&b.points[j]), at(&b.points[j + 1]));
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                crossing = Some((i, j));
                break 'search;
            }
        }
    }
    let (i, j) = crossing.ok_or_else(|| Error::Domain("curve polylines do not cross".into()))?;

    let mut warm_a = a.points[i];
    let mut warm_b = b.points[j];
    let seg_k = [a.points[i].k, a.points[i + 1].k, b.points[j].k, b.points[j + 1].k];
    let mut klo = seg_k.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut khi = seg_k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    // widen a touch so the transversal crossing is strictly interior
    let pad = 0.25 * (khi - klo).max(1e-12);
    klo -= pad;
    khi += pad;

    let mut gap = |warm_a: &mut BifurcationPoint,
                   warm_b: &mut BifurcationPoint,
                   k: f64|
     -> Result<(f64, BifurcationPoint, BifurcationPoint)> {
        let pa = newton_bif(MapParams::new(warm_a.b, k), warm_a.x, a.n, a.kind, Axis::B)?;
        let pb = newton_bif(MapParams::new(warm_b.b, k), warm_b.x, b.n, b.kind, Axis::B)?;
        *warm_a = pa;
        *warm_b = pb;
        Ok((pa.b - pb.b, pa, pb))
    };

    let (mut dlo, _, _) = gap(&mut warm_a, &mut warm_b, klo)?;
    let (dhi, _, _) = gap(&mut warm_a, &mut warm_b, khi)?;
    if dlo * dhi > 0.0 {
        return Err(Error::Domain(
            "segments cross but the branch gap has no sign change in the bracket".into(),
        ));
    }
    let mut last = None;
    for _ in 0..80 {
        let mid = 0.5 * (klo + khi);
        let (d, pa, pb) = gap(&mut warm_a, &mut warm_b, mid)?;
        last = Some((mid, pa, pb));
        if d == 0.0 || (khi - klo) < 1e-14 * mid.abs() {
            break;
        }
        if d * dlo > 0.0 {
            klo = mid;
            dlo = d;
        } else {
            khi = mid;
        }
    }
    let (k, pa, pb) = last.ok_or_else(|| Error::Domain("bisection never evaluated".into()))?;
    // local slopes db/dk by central differences along each branch
    let dk = 1e-5 * k.abs().max(1.0);
    let mut slope = |w: &BifurcationPoint, c: &BifurcationCurve| -> Result<f64> {
        let up = newton_bif(MapParams::new(w.b, k + dk), w.x, c.n, c.kind, Axis::B)?;
        let dn = newton_bif(MapParams::new(w.b, k - dk), w.x, c.n, c.kind, Axis::B)?;
        Ok((up.b - dn.b) / (2.0 * dk))
    };
    Ok(CurveIntersection {
        b: 0.5 * (pa.b + pb.b),
        k,
        x_a: pa.x,
        x_b: pb.x,
        slope_a: slope(&pa, a)?,
        slope_b: slope(&pb, b)?,
    })
}

#[derive(Serialize)]
struct IntersectionRecord {
    curves: [String; 2],
    b: f64,
    k: f64,
}

/// JSON record `{"curves": [id, id], "b": .., "k": ..}`.
pub fn intersection_to_json(
    a: &BifurcationCurve,
    b: &BifurcationCurve,
    at: &CurveIntersection,
) -> String {
    serde_json::to_string_pretty(&IntersectionRecord {
        curves: [a.id(), b.id()],
        b: at.b,
        k: at.k,
    })
    .expect("intersection record serializes")
}

/// CSV dump of curves: `kind,n,b,k,x` with 15 significant digits.
pub fn curves_to_csv(curves: &[&BifurcationCurve]) -> String {
    let mut out = String::from("kind,n,b,k,x\n");
    for c in curves {
        for p in &c.points {
            out.push_str(&format!(
                "{},{},{:.14e},{:.14e},{:.14e}\n",
                c.kind.as_str(),
                c.n,
                p.b,
                p.k,
                p.x
            ));
        }
    }
    out
}

/// Is some attractor of `set` a descendant of the period-n family? Either
/// its period is `n·2^m`, or it is chaotic with bands hugging the family's
/// cycle skeleton (within 0.1).
fn family_present(set: &orbit::AttractorSet, n_family: usize, skeleton: Option<&[f64]>) -> bool {
    set.attractors.iter().any(|a| match a.kind {
        AttractorKind::FixedPoint | AttractorKind::Cycle => {
            let per = a.period.unwrap_or(0);
            per % n_family == 0 && (per / n_family).is_power_of_two()
        }
        AttractorKind::Chaotic => match skeleton {
            Some(sk) => {
                let sk_bands: Vec<(f64, f64)> = sk.iter().map(|&x| (x, x)).collect();
                orbit::band_hausdorff(&a.bands(), &sk_bands) < 0.1
            }
            None => false,
        },
        AttractorKind::Divergent => false,
    })
}

/// Scan grid lines across `window` for the last parameter at which an
/// attractor descended from the period-`n_family` family survives, and
/// refine each boundary bracket by bisection down to `resolution/100`.
///
/// `axis` is the parameter swept along each line (low to high); the other
/// parameter indexes the lines. Lines where the family never appears, or
/// never disappears, contribute no sample. Lines run in parallel under the
/// `parallel` feature.
pub fn crisis_boundary_scan(
    window: (MapParams, MapParams),
    n_family: usize,
    axis: Axis,
    resolution: f64,
) -> Vec<CrisisBoundarySample> {
    let (lo, hi) = window;
    let (sweep_lo, sweep_hi, line_lo, line_hi) = match axis {
        Axis::B => (lo.b, hi.b, lo.k, hi.k),
        Axis::K => (lo.k, hi.k, lo.b, hi.b),
    };
    let n_lines = (((line_hi - line_lo) / resolution).ceil() as usize).max(1);
    let n_steps = (((sweep_hi - sweep_lo) / resolution).ceil() as usize).max(2);
    let opt = AttractorOptions { n_transient: 20_000, n_sample: 1024, auto_extend: false };

    let scan_line = |line_idx: usize| -> Option<CrisisBoundarySample> {
        let line_val = line_lo + (line_hi - line_lo) * (line_idx as f64 + 0.5) / n_lines as f64;
        let at = |sweep_val: f64| match axis {
            Axis::B => MapParams::new(sweep_val, line_val),
            Axis::K => MapParams::new(line_val, sweep_val),
        };
        let mut skeleton: Option<Vec<f64>> = None;
        let mut last_present: Option<f64> = None;
        let mut first_absent: Option<f64> = None;
        for i in 0..=n_steps {
            let sweep_val = sweep_lo + (sweep_hi - sweep_lo) * i as f64 / n_steps as f64;
            let p = at(sweep_val);
            if !p.in_p() || !(p.k < -4.0) {
                continue;
            }
            let Ok(set) = orbit::attractor_set_with(p, &opt) else { continue };
            // keep the family skeleton warm: the n-cycle persists (unstably)
            // through the cascade, so Newton can track it across the line
            if let Some(sk) = skeleton.clone() {
                if let Ok((x, _)) = find_cycle(p, sk[0], n_family) {
                    let mut pts = Vec::with_capacity(n_family);
                    let mut y = x;
                    for _ in 0..n_family {
                        pts.push(y);
                        y = map::eval(p, y);
                    }
                    skeleton = Some(pts);
                }
            } else if let Some(a) = set.attractors.iter().find(|a| a.period == Some(n_family)) {
                skeleton = Some(a.points.clone());
            }
            if family_present(&set, n_family, skeleton.as_deref()) {
                if first_absent.is_none() {
                    last_present = Some(sweep_val);
                }
            } else if last_present.is_some() && first_absent.is_none() {
                first_absent = Some(sweep_val);
            }
        }
        let (mut present, mut absent) = (last_present?, first_absent?);
        while (absent - present).abs() > resolution / 100.0 {
            let mid = 0.5 * (present + absent);
            let here = match orbit::attractor_set_with(at(mid), &opt) {
                Ok(set) => family_present(&set, n_family, skeleton.as_deref()),
                Err(_) => false,
            };
            if here {
                present = mid;
            } else {
                absent = mid;
            }
        }
        let p = at(0.5 * (present + absent));
        Some(CrisisBoundarySample { b: p.b, k: p.k, n_family })
    };

    #[cfg(feature = "parallel")]
    let samples: Vec<Option<CrisisBoundarySample>> = {
        use rayon::prelude::*;
        (0..n_lines).into_par_iter().map(scan_line).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let samples: Vec<Option<CrisisBoundarySample>> = (0..n_lines).map(scan_line).collect();
    samples.into_iter().flatten().collect()
}
