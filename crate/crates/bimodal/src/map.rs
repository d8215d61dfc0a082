//! The map itself: exact evaluation, derivatives through third order,
//! Schwarzian derivative, critical points, fixed point, and the parameter
//! symmetry `(b, k) -> (k - b, k)`.
//!
//! Everything here is a pure function of value inputs and safe to call from
//! any number of threads.

use crate::error::{Error, Result};
use crate::tol;

/// Parameter pair of the map `f(x) = b + x - k/(1 + e^x)`.
///
/// Construction imposes no domain restriction; region membership is a
/// separate query (`regions::classify`). Bounded nontrivial dynamics lives
/// in `P = { (b,k) | k < b < 0 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub b: f64,
    pub k: f64,
}

impl MapParams {
    pub fn new(b: f64, k: f64) -> Self {
        debug_assert!(b.is_finite() && k.is_finite());
        Self { b, k }
    }

    /// Membership in `P = { (b,k) | k < b < 0 }`.
    pub fn in_p(&self) -> bool {
        self.k < self.b && self.b < 0.0
    }
}

/// Local extrema of the map; present exactly when `k < -4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    /// Local maximum point (negative).
    pub x_max: f64,
    /// Local minimum point; always `x_min = -x_max > 0`.
    pub x_min: f64,
}

/// Critical points and fixed point bundled for one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalStructure {
    pub extrema: Option<Extrema>,
    /// The unique fixed point `x* = ln(k/b - 1)`.
    pub x_star: f64,
}

impl CriticalStructure {
    pub fn exists_extrema(&self) -> bool {
        self.extrema.is_some()
    }
}

/// `u(x) = 1/(1 + e^x)`, evaluated without overflow for any finite `x`.
///
/// For `x > 0` the equivalent form `e^{-x}/(e^{-x} + 1)` is used; `e^x`
/// alone would overflow a double near x = 709.
#[inline]
pub fn logistic_u(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// One application of the map: `b + x - k·u(x)`.
#[inline]
pub fn eval(p: MapParams, x: f64) -> f64 {
    p.b + x - p.k * logistic_u(x)
}

/// `f` applied `n` times.
pub fn eval_n(p: MapParams, x: f64, n: usize) -> f64 {
    let mut y = x;
    for _ in 0..n {
        y = eval(p, y);
    }
    y
}

/// Analytic derivative of order 1, 2 or 3.
///
/// With `A = u(1-u)` (so `A = e^x/(1+e^x)^2`):
/// `f'   = 1 + kA`,
/// `f''  = kA(2u - 1)`,
/// `f''' = kA(1 - 6A)`.
#[inline]
pub fn derivative(p: MapParams, x: f64, order: usize) -> f64 {
    let u = logistic_u(x);
    let a = u * (1.0 - u);
    match order {
        1 => 1.0 + p.k * a,
        2 => p.k * a * (2.0 * u - 1.0),
        3 => p.k * a * (1.0 - 6.0 * a),
        _ => panic!("derivative order must be 1, 2 or 3 (got {order})"),
    }
}

/// Schwarzian derivative in closed form,
/// `S f = k e^x (2(e^x-1)^2 - (k+4)e^x) / (2((e^x+1)^2 + k e^x)^2)`,
/// rewritten in terms of `u` so it stays finite for large |x|. Negative
/// everywhere when `k < -4`.
///
/// Rejects points within `CRITICAL_GUARD` of a critical point, where the
/// Schwarzian has a pole.
pub fn schwarzian(p: MapParams, x: f64) -> Result<f64> {
    let fp = derivative(p, x, 1);
    if fp.abs() < tol::CRITICAL_GUARD {
        return Err(Error::CriticalPoint {
            x,
            deriv_abs: fp.abs(),
            limit: tol::CRITICAL_GUARD,
        });
    }
    let u = logistic_u(x);
    let a = u * (1.0 - u);
    let w = 1.0 - 2.0 * u; // (e^x - 1)/(e^x + 1)
    Ok(p.k * a * (2.0 * w * w - (p.k + 4.0) * a) / (2.0 * fp * fp))
}

/// Schwarzian by composing the analytic derivatives:
/// `f'''/f' - (3/2)(f''/f')^2`. Independent floating-point route used to
/// cross-check the closed form.
pub fn schwarzian_composed(p: MapParams, x: f64) -> Result<f64> {
    let f1 = derivative(p, x, 1);
    if f1.abs() < tol::CRITICAL_GUARD {
        return Err(Error::CriticalPoint {
            x,
            deriv_abs: f1.abs(),
            limit: tol::CRITICAL_GUARD,
        });
    }
    let f2 = derivative(p, x, 2);
    let f3 = derivative(p, x, 3);
    let r = f2 / f1;
    Ok(f3 / f1 - 1.5 * r * r)
}

/// Local extrema for depth `k`, or `None` when `k >= -4` (there the map is
/// strictly increasing: `f' = 1 + kA >= 1 + k/4 >= 0`).
///
/// `f'(x) = 0` reduces to `t^2 + (2+k)t + 1 = 0` in `t = e^x`; the two roots
/// multiply to 1, so the extrema are exactly antisymmetric. Only the larger
/// root is formed explicitly (the smaller would cancel catastrophically for
/// large |k|).
pub fn extrema(k: f64) -> Option<Extrema> {
    if !(k < -4.0) {
        return None;
    }
    let disc = (k * k + 4.0 * k).sqrt();
    let t_plus = -1.0 - 0.5 * k + 0.5 * disc; // e^{x_min} > 1
    let x_min = t_plus.ln();
    Some(Extrema { x_max: -x_min, x_min })
}

/// The unique fixed point `x* = ln(k/b - 1)`, defined whenever `k/b - 1 > 0`
/// (always the case inside `P`).
pub fn fixed_point(p: MapParams) -> Result<f64> {
    let ratio = p.k / p.b - 1.0;
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::NoFixedPoint { b: p.b, k: p.k, ratio });
    }
    Ok(ratio.ln())
}

/// Extrema and fixed point together. Fails with `NoFixedPoint` when
/// `k/b - 1 <= 0`; the extrema fields are absent when `k >= -4`.
pub fn critical_points(p: MapParams) -> Result<CriticalStructure> {
    let x_star = fixed_point(p)?;
    Ok(CriticalStructure { extrema: extrema(p.k), x_star })
}

/// The parameter involution `(b, k) -> (k - b, k)`.
///
/// It conjugates the map with `x -> -x`: `f_{b,k}(x) = -f_{k-b,k}(-x)`, so
/// orbits map to negated orbits and the two halves of `P` on either side of
/// `b = k/2` carry mirror-identical bifurcation structure.
pub fn symmetry_conjugate(p: MapParams) -> MapParams {
    MapParams { b: p.k - p.b, k: p.k }
}

/// The four-parameter return-map form `beta + x - (k1 + k2 e^x)/(1 + e^x) · w`,
/// evaluated on its own (overflow-safe) path.
pub fn return_map_eval(beta: f64, w: f64, k1: f64, k2: f64, x: f64) -> f64 {
    let frac = if x >= 0.0 {
        let e = (-x).exp();
        (k1 * e + k2) / (e + 1.0)
    } else {
        let e = x.exp();
        (k1 + k2 * e) / (1.0 + e)
    };
    beta + x - frac * w
}

/// Reduction of the four-parameter form to `(b, k)`.
///
/// `(k1 + k2 e^x)/(1 + e^x) = k2 + (k1 - k2)/(1 + e^x)`, hence
/// `b = beta - k2·w` and `k = (k1 - k2)·w`.
pub fn reduce_return_map(beta: f64, w: f64, k1: f64, k2: f64) -> MapParams {
    MapParams { b: beta - k2 * w, k: (k1 - k2) * w }
}
