//! Closed-form structure of the `(b, k)` parameter plane: region
//! classification, the fixed-point flip curve, the absorbing-interval
//! boundary curves, and the absorbing interval itself.
//!
//! The plane decomposes inside `P = {k < b < 0}` as follows. The fixed
//! point `x*` is stable (and globally attracting) where `f'(x*) > -1`,
//! which works out to `k(b+2) < b^2`; the boundary is the flip curve
//! `k = b^2/(b+2)`, which meets `P` only on its `b < -2` branch. Where the
//! fixed point is unstable the two curves `b = b1(k)` and `b = b2(k)`
//! (defined by `f(x_max) = x_min` and `f(x_min) = x_max`) split `P` into a
//! left unimodal strip, a right unimodal strip, and a middle band that is
//! either a monotone core (`b2 < b < b1`, shallow `k`) or the bimodal band
//! (`b1 < b < b2`, deep `k`) where both extrema sit inside the trapping
//! region and bistability becomes possible.

use crate::error::{Error, Result};
use crate::map::{self, MapParams};
use crate::tol;
use serde::Serialize;

/// Which part of the parameter plane a pair `(b, k)` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionTag {
    /// Not in `P`: all trajectories diverge or converge trivially.
    OutsideP,
    /// `f'(x*) > -1`: the fixed point is globally attracting.
    FixedPointStable,
    /// Middle band with `b2 < b < b1`: the trapping interval avoids both
    /// extrema, so only a fixed point and a 2-cycle can exist.
    MonotoneCore,
    /// `b < min(b1, b2)`: trapping interval contains `x_max` only.
    UnimodalLeft,
    /// `b > max(b1, b2)`: trapping interval contains `x_min` only.
    UnimodalRight,
    /// `b1 < b < b2`: trapping interval contains both extrema.
    Bimodal,
}

impl RegionTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionTag::OutsideP => "outside_p",
            RegionTag::FixedPointStable => "fixed_point_stable",
            RegionTag::MonotoneCore => "monotone_core",
            RegionTag::UnimodalLeft => "unimodal_left",
            RegionTag::UnimodalRight => "unimodal_right",
            RegionTag::Bimodal => "bimodal",
        }
    }
}

/// Which absorbing interval applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalKind {
    /// `[f^2(x_max), f(x_max)]`, contains `x_max` but not `x_min`.
    Jminus,
    /// `[f(x_min), f^2(x_min)]`, contains `x_min` but not `x_max`.
    Jplus,
    /// `[f(x_min), f(x_max)]`, contains both extrema.
    J0,
    /// `[f(x_min), f(x_max)]`, contains neither extremum; `f` is monotone
    /// (decreasing) on it.
    MonotoneCoreInterval,
}

/// A positively invariant, globally attracting interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorbingInterval {
    pub lo: f64,
    pub hi: f64,
    pub kind: IntervalKind,
}

impl AbsorbingInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Identifier for an analytic boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveId {
    Eta1Flip,
    Gamma1,
    Gamma2,
}

impl CurveId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::Eta1Flip => "eta1_flip",
            CurveId::Gamma1 => "gamma1",
            CurveId::Gamma2 => "gamma2",
        }
    }
}

/// One sampled point of a boundary curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCurveSample {
    pub curve_id: CurveId,
    pub k: f64,
    pub b: f64,
}

/// Classify `(b, k)` into its region.
///
/// Boundary ties (residual within `BOUNDARY_TIE`) resolve toward the
/// simpler region: the stable side at the flip curve, the monotone side at
/// a gamma curve when the middle band is the monotone core, the unimodal
/// side otherwise. This keeps raster scans deterministic.
pub fn classify(p: MapParams) -> RegionTag {
    if !p.in_p() {
        return RegionTag::OutsideP;
    }
    let x_star = map::fixed_point(p).expect("fixed point exists inside P");
    let eig = map::derivative(p, x_star, 1);
    if eig + 1.0 > -tol::BOUNDARY_TIE {
        return RegionTag::FixedPointStable;
    }
    // An unstable fixed point needs k·u(1-u) <= -2, hence k <= -8: the
    // extrema and gamma curves are guaranteed to exist here.
    let (b1, b2) = gamma_boundaries(p.k).expect("k <= -8 when the fixed point is unstable");
    let lo = b1.min(b2);
    let hi = b1.max(b2);
    let middle_is_core = b2 < b1;
    if (p.b - lo).abs() <= tol::BOUNDARY_TIE {
        return if middle_is_core { RegionTag::MonotoneCore } else { RegionTag::UnimodalLeft };
    }
    if (p.b - hi).abs() <= tol::BOUNDARY_TIE {
        return if middle_is_core { RegionTag::MonotoneCore } else { RegionTag::UnimodalRight };
    }
    if p.b < lo {
        RegionTag::UnimodalLeft
    } else if p.b > hi {
        RegionTag::UnimodalRight
    } else if middle_is_core {
        RegionTag::MonotoneCore
    } else {
        RegionTag::Bimodal
    }
}

/// The fixed-point flip curve `k = b^2/(b+2)`.
///
/// The formula is defined for any `b < 0` away from the pole at `b = -2`,
/// but the curve intersects `P` only where `b^2/(b+2) < b`, i.e. on the
/// `b < -2` branch (for `-2 < b < 0` the value is positive and leaves `P`);
/// callers intersect with `P` themselves.
pub fn flip_curve_k(b: f64) -> Result<f64> {
    if b >= 0.0 {
        return Err(Error::Domain(format!("flip curve requires b < 0 (got b = {b})")));
    }
    if b == -2.0 {
        return Err(Error::Domain("flip curve has a pole at b = -2".into()));
    }
    Ok(b * b / (b + 2.0))
}

/// The two flip-curve points at depth `k`, where they exist (`k <= -8`).
///
/// Inverts `k = b^2/(b+2)`: `b = (k ± sqrt(k^2 + 8k))/2`; both roots lie in
/// `-2 > b > k`, hence in `P`.
pub fn flip_curve_b(k: f64) -> Option<(f64, f64)> {
    let disc = k * k + 8.0 * k;
    if !(k < 0.0) || disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((k - s) / 2.0, (k + s) / 2.0))
}

/// The absorbing-interval boundary curves `b1(k)` (where `f(x_max) = x_min`)
/// and `b2(k)` (where `f(x_min) = x_max`), for `k < -4`.
///
/// With `t = e^{x_min}` the identity `(1+t)^2 = -kt` collapses the closed
/// forms to `b1 = 2 x_min - 1 - t` and `b2 = -2 x_min - 1 - 1/t`, which are
/// stable for large |k|. Note `b1 + b2 = k` exactly in real arithmetic (the
/// two curves are images of each other under the parameter symmetry).
pub fn gamma_boundaries(k: f64) -> Result<(f64, f64)> {
    let e = map::extrema(k).ok_or_else(|| {
        Error::Domain(format!("gamma boundaries require k < -4 (got k = {k})"))
    })?;
    let t = e.x_min.exp();
    let b1 = 2.0 * e.x_min - 1.0 - t;
    let b2 = -2.0 * e.x_min - 1.0 - 1.0 / t;
    Ok((b1, b2))
}

/// Intersection of the two gamma curves: the root of `b1(k) = b2(k)`,
/// which by `b1 + b2 = k` lies on the self-conjugate axis `b = k/2`.
/// Returns `(k, b)`.
pub fn gamma_intersection() -> (f64, f64) {
    let g = |k: f64| {
        let (b1, _) = gamma_boundaries(k).unwrap();
        b1 - k / 2.0
    };
    let (mut lo, mut hi) = (-12.0, -8.0);
    let mut glo = g(lo);
    debug_assert!(glo * g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            break;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let k = 0.5 * (lo + hi);
    (k, k / 2.0)
}

/// The globally attracting absorbing interval for `(b, k)`.
///
/// Requires `(b, k)` in `P` with `k < -4` and an unstable fixed point.
/// Positive invariance of the returned interval is verified constructively
/// (endpoint images must land inside).
pub fn absorbing_interval(p: MapParams) -> Result<AbsorbingInterval> {
    if !p.in_p() || !(p.k < -4.0) {
        return Err(Error::Domain(format!(
            "absorbing interval requires (b,k) in P with k < -4 (got b = {}, k = {})",
            p.b, p.k
        )));
    }
    let tag = classify(p);
    let ext = map::extrema(p.k).expect("k < -4");
    let f_xmax = map::eval(p, ext.x_max);
    let f_xmin = map::eval(p, ext.x_min);
    let (lo, hi, kind) = match tag {
        RegionTag::UnimodalLeft => (map::eval(p, f_xmax), f_xmax, IntervalKind::Jminus),
        RegionTag::UnimodalRight => (f_xmin, map::eval(p, f_xmin), IntervalKind::Jplus),
        RegionTag::MonotoneCore => (f_xmin, f_xmax, IntervalKind::MonotoneCoreInterval),
        RegionTag::Bimodal => (f_xmin, f_xmax, IntervalKind::J0),
        RegionTag::FixedPointStable => {
            return Err(Error::Domain(
                "absorbing interval undefined: fixed point is globally attracting".into(),
            ))
        }
        RegionTag::OutsideP => unreachable!("in_p checked above"),
    };
    debug_assert!(lo < hi);
    let slack = tol::EPS_DERIV * (1.0 + lo.abs() + hi.abs());
    for endpoint in [lo, hi] {
        let image = map::eval(p, endpoint);
        if image < lo - slack || image > hi + slack {
            return Err(Error::Domain(format!(
                "interval [{lo}, {hi}] not invariant: f({endpoint}) = {image}"
            )));
        }
    }
    Ok(AbsorbingInterval { lo, hi, kind })
}

/// The four candidate envelope values `f(x_max), f(x_min), f^2(x_max),
/// f^2(x_min)` used as bifurcation-diagram overlays. `None` when `k >= -4`.
pub fn interval_candidates(p: MapParams) -> Option<[f64; 4]> {
    let ext = map::extrema(p.k)?;
    let f_xmax = map::eval(p, ext.x_max);
    let f_xmin = map::eval(p, ext.x_min);
    Some([f_xmax, f_xmin, map::eval(p, f_xmax), map::eval(p, f_xmin)])
}

/// Sample the analytic boundary curves on a uniform k-grid, keeping only
/// points inside `P`.
pub fn sample_boundary_curves(k_min: f64, k_max: f64, n: usize) -> Vec<BoundaryCurveSample> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let k = k_min + (k_max - k_min) * (i as f64 + 0.5) / n as f64;
        if let Some((b_lo, b_hi)) = flip_curve_b(k) {
            for b in [b_lo, b_hi] {
                if MapParams::new(b, k).in_p() {
                    out.push(BoundaryCurveSample { curve_id: CurveId::Eta1Flip, k, b });
                }
            }
        }
        if let Ok((b1, b2)) = gamma_boundaries(k) {
            for (curve_id, b) in [(CurveId::Gamma1, b1), (CurveId::Gamma2, b2)] {
                if MapParams::new(b, k).in_p() {
                    out.push(BoundaryCurveSample { curve_id, k, b });
                }
            }
        }
    }
    out
}

/// CSV dump of curve samples: `curve_id,k,b` with 15 significant digits.
pub fn curves_to_csv(samples: &[BoundaryCurveSample]) -> String {
    let mut s = String::from("curve_id,k,b\n");
    for sm in samples {
        s.push_str(&format!("{},{:.14e},{:.14e}\n", sm.curve_id.as_str(), sm.k, sm.b));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{derivative, eval, extrema, fixed_point, symmetry_conjugate};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classify_reference_points() {
        // shallow k, b > -2: the derivative at x* is 2/3, stable
        assert_eq!(classify(MapParams::new(-1.0, -1.5)), RegionTag::FixedPointStable);
        assert_eq!(classify(MapParams::new(0.5, -1.0)), RegionTag::OutsideP);
        assert_eq!(classify(MapParams::new(-12.0, -30.0)), RegionTag::Bimodal);
    }

    #[test]
    fn classify_agrees_with_eigenvalue_oracle() {
        let p = MapParams::new(-1.0, -1.5);
        let eig = derivative(p, fixed_point(p).unwrap(), 1);
        assert!((eig - 2.0 / 3.0).abs() < 1e-14);
        assert!(eig > -1.0);
    }

    #[test]
    fn classify_bimodal_matches_gamma_oracle() {
        let (b1, b2) = gamma_boundaries(-30.0).unwrap();
        assert!(b1 < -12.0 && -12.0 < b2);
    }

    #[test]
    fn classify_covers_all_four_lemma_cases() {
        // k = -40: b1 ≈ -31.70 < b2 ≈ -8.30, deep regime
        assert_eq!(classify(MapParams::new(-34.0, -40.0)), RegionTag::UnimodalLeft);
        assert_eq!(classify(MapParams::new(-12.0, -40.0)), RegionTag::Bimodal);
        assert_eq!(classify(MapParams::new(-5.0, -40.0)), RegionTag::UnimodalRight);
        // k = -10: b2 < b1, middle band is the monotone core
        let (b1, b2) = gamma_boundaries(-10.0).unwrap();
        assert!(b2 < b1, "expected core ordering at k = -10");
        let mid = MapParams::new(0.5 * (b1 + b2), -10.0);
        if classify(mid) != RegionTag::FixedPointStable {
            assert_eq!(classify(mid), RegionTag::MonotoneCore);
        }
        // deeper shallow point that is certainly unstable: k = -8.8, b = k/2
        let p = MapParams::new(-4.4, -8.8);
        let (b1, b2) = gamma_boundaries(-8.8).unwrap();
        assert!(b2 < -4.4 && -4.4 < b1);
        assert_eq!(classify(p), RegionTag::MonotoneCore);
    }

    #[test]
    fn classify_symmetry_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let k = rng.gen_range(-60.0..-4.5);
            let b = rng.gen_range(k..0.0);
            let p = MapParams::new(b, k);
            let q = symmetry_conjugate(p);
            let (t1, t2) = (classify(p), classify(q));
            let expected = match t1 {
                RegionTag::UnimodalLeft => RegionTag::UnimodalRight,
                RegionTag::UnimodalRight => RegionTag::UnimodalLeft,
                other => other,
            };
            assert_eq!(t2, expected, "asymmetric classification at {p:?}");
        }
    }

    #[test]
    fn classify_stable_under_tiny_perturbation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut tested = 0;
        while tested < 200 {
            let k = rng.gen_range(-60.0..-4.5);
            let b = rng.gen_range(k..0.0);
            let p = MapParams::new(b, k);
            // skip points within 1e-12 of a region boundary
            let x_star = fixed_point(p).unwrap();
            if (derivative(p, x_star, 1) + 1.0).abs() < 1e-12 {
                continue;
            }
            if let Ok((b1, b2)) = gamma_boundaries(k) {
                if (b - b1).abs() < 1e-12 || (b - b2).abs() < 1e-12 {
                    continue;
                }
            }
            let tag = classify(p);
            for db in [-1e-15, 1e-15] {
                let q = MapParams::new(b * (1.0 + db), k * (1.0 - db));
                assert_eq!(classify(q), tag);
            }
            tested += 1;
        }
    }

    #[test]
    fn flip_curve_formula_and_domain() {
        assert!((flip_curve_k(-3.0).unwrap() - (-9.0)).abs() < 1e-14);
        assert!(flip_curve_k(0.5).is_err());
        assert!(flip_curve_k(-2.0).is_err());
        // approaching the pole from b < -2 the curve dives to -infinity
        let mut prev = flip_curve_k(-2.5).unwrap();
        for b in [-2.2, -2.1, -2.05, -2.01] {
            let k = flip_curve_k(b).unwrap();
            assert!(k < prev);
            prev = k;
        }
        // inside (-2, 0) the formula leaves P
        let k = flip_curve_k(-1.0).unwrap();
        assert!((k - 1.0).abs() < 1e-15);
        assert!(!MapParams::new(-1.0, k).in_p());
    }

    #[test]
    fn flip_curve_points_have_eigenvalue_minus_one() {
        // 50 b-values on the branch where b^2/(b+2) < b, i.e. b < -2
        for i in 0..50 {
            let b = -2.05 - 0.5 * i as f64;
            let k = flip_curve_k(b).unwrap();
            assert!(k < b, "curve left P at b = {b}");
            let p = MapParams::new(b, k);
            let eig = derivative(p, fixed_point(p).unwrap(), 1);
            assert!(
                (eig + 1.0).abs() < crate::tol::EPS_FLIP,
                "f'(x*) = {eig} at b = {b}"
            );
        }
    }

    #[test]
    fn flip_curve_b_inverts_formula() {
        for k in [-8.5, -12.0, -30.0] {
            let (lo, hi) = flip_curve_b(k).unwrap();
            for b in [lo, hi] {
                assert!((flip_curve_k(b).unwrap() - k).abs() < 1e-9 * k.abs());
                assert!(MapParams::new(b, k).in_p());
            }
        }
        assert!(flip_curve_b(-7.0).is_none());
    }

    #[test]
    fn gamma_defining_relations() {
        for k in [-8.0, -30.0, -40.0, -55.0] {
            let (b1, b2) = gamma_boundaries(k).unwrap();
            let ext = extrema(k).unwrap();
            let p1 = MapParams::new(b1, k);
            assert!(
                (eval(p1, ext.x_max) - ext.x_min).abs() < crate::tol::EPS_GAMMA,
                "f(x_max) != x_min at k = {k}"
            );
            let p2 = MapParams::new(b2, k);
            assert!(
                (eval(p2, ext.x_min) - ext.x_max).abs() < crate::tol::EPS_GAMMA,
                "f(x_min) != x_max at k = {k}"
            );
            // the curves sum to k
            assert!((b1 + b2 - k).abs() < 1e-12 * k.abs());
        }
    }

    #[test]
    fn gamma_matches_logarithmic_closed_form() {
        // reference form: b1 = 2 ln(-1 - k/2 + sqrt(4k+k^2)/2) + k/2 - sqrt(4k+k^2)/2
        let k = -30.0_f64;
        let (b1, b2) = gamma_boundaries(k).unwrap();
        let disc = (4.0 * k + k * k).sqrt();
        let b1_ref = 2.0 * (-1.0 - 0.5 * k + 0.5 * disc).ln() + 0.5 * k - 0.5 * disc;
        let b2_ref = 2.0 * (-1.0 - 0.5 * k - 0.5 * disc).ln() + 0.5 * k + 0.5 * disc;
        assert!((b1 - b1_ref).abs() < 1e-11);
        assert!((b2 - b2_ref).abs() < 1e-11);
        assert!((b1 - (-22.302386938486437)).abs() < 1e-11);
        assert!((b2 - (-7.697613061513563)).abs() < 1e-11);
    }

    #[test]
    fn gamma_degenerate_limit() {
        // k -> -4: extrema collapse and the two boundaries coincide
        let (b1, b2) = gamma_boundaries(-4.0 - 1e-9).unwrap();
        assert!((b1 - b2).abs() < 1e-3);
        assert!(gamma_boundaries(-4.0).is_err());
        assert!(gamma_boundaries(-3.0).is_err());
    }

    #[test]
    fn gamma_intersection_on_symmetry_axis() {
        let (k, b) = gamma_intersection();
        assert!((-12.0..-8.0).contains(&k));
        let (b1, b2) = gamma_boundaries(k).unwrap();
        assert!((b1 - b2).abs() < 1e-9);
        assert!((b - k / 2.0).abs() < 1e-12);
    }

    #[test]
    fn absorbing_interval_cases() {
        // deep regime, left of both curves
        let jm = absorbing_interval(MapParams::new(-34.0, -40.0)).unwrap();
        assert_eq!(jm.kind, IntervalKind::Jminus);
        let ext = extrema(-40.0).unwrap();
        assert!(jm.contains(ext.x_max) && !jm.contains(ext.x_min));

        let j0 = absorbing_interval(MapParams::new(-12.0, -30.0)).unwrap();
        assert_eq!(j0.kind, IntervalKind::J0);
        let ext = extrema(-30.0).unwrap();
        assert!(j0.contains(ext.x_max) && j0.contains(ext.x_min));

        let jp = absorbing_interval(MapParams::new(-5.0, -40.0)).unwrap();
        assert_eq!(jp.kind, IntervalKind::Jplus);
        let ext = extrema(-40.0).unwrap();
        assert!(!jp.contains(ext.x_max) && jp.contains(ext.x_min));

        let core = absorbing_interval(MapParams::new(-4.4, -8.8)).unwrap();
        assert_eq!(core.kind, IntervalKind::MonotoneCoreInterval);
        let ext = extrema(-8.8).unwrap();
        assert!(!core.contains(ext.x_max) && !core.contains(ext.x_min));
    }

    #[test]
    fn absorbing_interval_rejects_stable_region() {
        assert!(absorbing_interval(MapParams::new(-1.0, -30.0)).is_err());
        assert!(absorbing_interval(MapParams::new(-1.0, -1.5)).is_err());
        assert!(absorbing_interval(MapParams::new(0.5, -1.0)).is_err());
    }

    #[test]
    fn absorbing_interval_symmetric_on_axis() {
        let j = absorbing_interval(MapParams::new(-15.0, -30.0)).unwrap();
        assert!((j.lo + j.hi).abs() < 1e-10, "lo = {}, hi = {}", j.lo, j.hi);
    }

    #[test]
    fn absorbing_interval_invariant_on_mesh() {
        for p in [
            MapParams::new(-12.0, -30.0),
            MapParams::new(-34.0, -40.0),
            MapParams::new(-5.0, -40.0),
            MapParams::new(-4.4, -8.8),
        ] {
            let j = absorbing_interval(p).unwrap();
            let slack = 1e-12 * (1.0 + j.lo.abs() + j.hi.abs());
            for i in 0..10_000 {
                let x = j.lo + (j.hi - j.lo) * i as f64 / 9_999.0;
                let y = eval(p, x);
                assert!(
                    y >= j.lo - slack && y <= j.hi + slack,
                    "f({x}) = {y} escapes [{}, {}] at {p:?}",
                    j.lo,
                    j.hi
                );
            }
        }
    }

    #[test]
    fn absorbing_interval_attracts_sampled_orbits() {
        let p = MapParams::new(-12.0, -30.0);
        let j = absorbing_interval(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let mut x = rng.gen_range(-50.0..50.0);
            let mut entered = false;
            for _ in 0..100_000 {
                if j.contains(x) {
                    entered = true;
                    break;
                }
                x = eval(p, x);
            }
            assert!(entered, "orbit never entered the absorbing interval");
        }
    }

    #[test]
    fn boundary_curve_samples_satisfy_defining_equations() {
        let samples = sample_boundary_curves(-50.0, -5.0, 200);
        assert!(!samples.is_empty());
        for s in &samples {
            let p = MapParams::new(s.b, s.k);
            assert!(p.in_p());
            match s.curve_id {
                CurveId::Eta1Flip => {
                    let eig = derivative(p, fixed_point(p).unwrap(), 1);
                    assert!((eig + 1.0).abs() < 1e-9, "flip residual {eig} at {p:?}");
                }
                CurveId::Gamma1 => {
                    let ext = extrema(s.k).unwrap();
                    assert!((eval(p, ext.x_max) - ext.x_min).abs() < 1e-9);
                }
                CurveId::Gamma2 => {
                    let ext = extrema(s.k).unwrap();
                    assert!((eval(p, ext.x_min) - ext.x_max).abs() < 1e-9);
                }
            }
        }
        let csv = curves_to_csv(&samples);
        assert!(csv.starts_with("curve_id,k,b\n"));
        assert_eq!(csv.lines().count(), samples.len() + 1);
    }
}
