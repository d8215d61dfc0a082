//! The source 3D system: two predators `y1, y2` competing for one prey
//! `s`,
//!
//! ```text
//!     dy_i/dt = m_i (s - lambda_i)/(s + a_i) y_i,    i = 1, 2
//!     ds/dt   = (1 - s - y1/(s + a1) - y2/(s + a2)) s
//! ```
//!
//! integrated with an adaptive embedded Runge-Kutta 5(4) pair
//! (Dormand-Prince coefficients, FSAL) carrying a free 4th-order dense
//! interpolant. Poincaré events on the section `s = const`, `ds/dt < 0`
//! are located by bisection on the interpolant; the scalar return-map
//! coordinate is `x = ln(y2/y1)`.

use crate::error::{Error, Result};
use crate::tol;

/// Positive model constants (normalized form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeParams {
    pub m1: f64,
    pub m2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl OdeParams {
    pub fn new(m1: f64, m2: f64, lambda1: f64, lambda2: f64, a1: f64, a2: f64) -> Self {
        debug_assert!(
            m1 > 0.0 && m2 > 0.0 && lambda1 > 0.0 && lambda2 > 0.0 && a1 > 0.0 && a2 > 0.0
        );
        Self { m1, m2, lambda1, lambda2, a1, a2 }
    }

    /// Relabel the two predators (exchange symmetry of the model).
    pub fn swapped(&self) -> Self {
        Self {
            m1: self.m2,
            m2: self.m1,
            lambda1: self.lambda2,
            lambda2: self.lambda1,
            a1: self.a2,
            a2: self.a1,
        }
    }
}

/// Nonnegative state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub y1: f64,
    pub y2: f64,
    pub s: f64,
}

impl OdeState {
    pub fn new(y1: f64, y2: f64, s: f64) -> Self {
        Self { y1, y2, s }
    }

    fn to_array(self) -> [f64; 3] {
        [self.y1, self.y2, self.s]
    }

    fn from_array(v: [f64; 3]) -> Self {
        Self { y1: v[0], y2: v[1], s: v[2] }
    }

    /// Relabel predators along with `OdeParams::swapped`.
    pub fn swapped(&self) -> Self {
        Self { y1: self.y2, y2: self.y1, s: self.s }
    }
}

/// A downward crossing of the section.
#[derive(Debug, Clone, Copy)]
pub struct SectionEvent {
    pub t: f64,
    /// `ln(y2 / y1)` at the crossing.
    pub x: f64,
    pub state: OdeState,
}

/// Integration counters and the octant-invariance watermark.
#[derive(Debug, Clone, Copy, Default)]
pub struct Stats {
    pub n_accepted: usize,
    pub n_rejected: usize,
    pub n_rhs: usize,
    /// Most negative raw component seen before clamping; the vector field
    /// keeps the closed positive octant invariant, so anything below
    /// `-OCTANT_SLACK` would be an integrator defect.
    pub min_component: f64,
}

/// The right-hand side.
pub fn vector_field(p: &OdeParams, st: &OdeState) -> OdeState {
    let OdeState { y1, y2, s } = *st;
    OdeState {
        y1: p.m1 * (s - p.lambda1) / (s + p.a1) * y1,
        y2: p.m2 * (s - p.lambda2) / (s + p.a2) * y2,
        s: (1.0 - s - y1 / (s + p.a1) - y2 / (s + p.a2)) * s,
    }
}

fn rhs(p: &OdeParams, y: [f64; 3]) -> [f64; 3] {
    vector_field(p, &OdeState::from_array(y)).to_array()
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// embedded error coefficients (5th-order weights minus 4th-order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// dense-output weights
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// One accepted step with its dense-output coefficients.
struct Step {
    t0: f64,
    h: f64,
    rcont: [[f64; 3]; 5],
    y1: [f64; 3],
}

impl Step {
    /// Interpolated state at `t0 + theta * h`, `theta` in [0, 1].
    fn eval(&self, theta: f64) -> [f64; 3] {
        let th1 = 1.0 - theta;
        let mut out = [0.0; 3];
        for i in 0..3 {
            let r = &self.rcont;
            out[i] =
                r[0][i] + theta * (r[1][i] + th1 * (r[2][i] + theta * (r[3][i] + th1 * r[4][i])));
        }
        out
    }
}

struct Dopri5<'a> {
    p: &'a OdeParams,
    t: f64,
    y: [f64; 3],
    h: f64,
    tol: f64,
    k1: [f64; 3],
    stats: Stats,
}

impl<'a> Dopri5<'a> {
    fn new(p: &'a OdeParams, t0: f64, y0: [f64; 3], tol: f64) -> Self {
        let k1 = rhs(p, y0);
        let mut stats = Stats { min_component: f64::INFINITY, ..Stats::default() };
        stats.n_rhs = 1;
        Self { p, t: t0, y: y0, h: 1e-4, tol, k1, stats }
    }

    /// Advance one accepted step.
    fn step(&mut self) -> Result<Step> {
        loop {
            let h = self.h;
            let y = self.y;
            let k1 = self.k1;
            let add = |y: &[f64; 3], terms: &[(f64, [f64; 3])]| {
                let mut out = *y;
                for (c, k) in terms {
                    for i in 0..3 {
                        out[i] += h * c * k[i];
                    }
                }
                out
            };
            let k2 = rhs(self.p, add(&y, &[(A21, k1)]));
            let k3 = rhs(self.p, add(&y, &[(A31, k1), (A32, k2)]));
            let k4 = rhs(self.p, add(&y, &[(A41, k1), (A42, k2), (A43, k3)]));
            let k5 = rhs(self.p, add(&y, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)]));
            let k6 =
                rhs(self.p, add(&y, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)]));
            let y_next =
                add(&y, &[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)]);
            let k7 = rhs(self.p, y_next);
            self.stats.n_rhs += 6;

            let mut err_sq = 0.0;
            for i in 0..3 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let scale = self.tol * (1e-2 + y[i].abs().max(y_next[i].abs()));
                err_sq += (e / scale) * (e / scale);
            }
            let err = (err_sq / 3.0).sqrt();

            let factor = (tol::ODE_SAFETY * err.powf(-0.2)).clamp(0.2, 5.0);
            let h_new = (h * factor).clamp(tol::ODE_H_MIN, tol::ODE_H_MAX);

            if err <= 1.0 {
                // dense output coefficients (4th-order interpolant)
                let mut rcont = [[0.0; 3]; 5];
                for i in 0..3 {
                    let ydiff = y_next[i] - y[i];
                    let bspl = h * k1[i] - ydiff;
                    rcont[0][i] = y[i];
                    rcont[1][i] = ydiff;
                    rcont[2][i] = bspl;
                    rcont[3][i] = ydiff - h * k7[i] - bspl;
                    rcont[4][i] = h
                        * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i]
                            + D7 * k7[i]);
                }
                let t0 = self.t;
                let mut y_clamped = y_next;
                for v in &mut y_clamped {
                    self.stats.min_component = self.stats.min_component.min(*v);
                    if *v < 0.0 && *v > -tol::OCTANT_SLACK {
                        *v = 0.0;
                    }
                }
                self.t += h;
                self.y = y_clamped;
                self.k1 = if y_clamped == y_next { k7 } else { rhs(self.p, y_clamped) };
                self.h = h_new;
                self.stats.n_accepted += 1;
                return Ok(Step { t0, h, rcont, y1: y_next });
            }
            self.stats.n_rejected += 1;
            if h_new <= tol::ODE_H_MIN {
                return Err(Error::StepUnderflow { t: self.t, h: h_new });
            }
            self.h = h_new;
        }
    }
}

fn check_tol(tolerance: f64) -> Result<()> {
    if !(1e-12..=1e-4).contains(&tolerance) {
        return Err(Error::Domain(format!(
            "ODE tolerance must lie in [1e-12, 1e-4], got {tolerance:e}"
        )));
    }
    Ok(())
}

/// A stored trajectory: the accepted-step skeleton.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<OdeState>,
    pub stats: Stats,
}

impl Trajectory {
    pub fn last(&self) -> OdeState {
        *self.states.last().expect("trajectory has at least the initial state")
    }
}

/// Integrate to `t_end` with per-step relative error `tolerance`.
pub fn integrate(
    p: &OdeParams,
    st0: &OdeState,
    t_end: f64,
    tolerance: f64,
) -> Result<Trajectory> {
    check_tol(tolerance)?;
    let mut stepper = Dopri5::new(p, 0.0, st0.to_array(), tolerance);
    let mut times = vec![0.0];
    let mut states = vec![*st0];
    while stepper.t < t_end {
        if stepper.t + stepper.h > t_end {
            stepper.h = t_end - stepper.t;
        }
        stepper.step()?;
        times.push(stepper.t);
        states.push(OdeState::from_array(stepper.y));
    }
    Ok(Trajectory { times, states, stats: stepper.stats })
}

/// Collect up to `n_events` downward crossings of `s = s_level`, stopping
/// at `t_max`. Events are located on the dense interpolant by bisection to
/// time tolerance `EVENT_TIME_TOL`; only crossings with `ds/dt < 0` are
/// kept.
pub fn poincare_section(
    p: &OdeParams,
    st0: &OdeState,
    s_level: f64,
    n_events: usize,
    tolerance: f64,
    t_max: f64,
) -> Result<(Vec<SectionEvent>, Stats)> {
    check_tol(tolerance)?;
    if !(s_level > 0.0) {
        return Err(Error::Domain(format!("section level must be positive, got {s_level}")));
    }
    let mut stepper = Dopri5::new(p, 0.0, st0.to_array(), tolerance);
    let mut events = Vec::with_capacity(n_events);
    let mut g_prev = st0.s - s_level;
    while events.len() < n_events && stepper.t < t_max {
        let step = stepper.step()?;
        let g_next = step.y1[2] - s_level;
        if g_prev > 0.0 && g_next <= 0.0 {
            // bisect theta on the interpolant
            let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
            while (hi - lo) * step.h > tol::EVENT_TIME_TOL {
                let mid = 0.5 * (lo + hi);
                if step.eval(mid)[2] - s_level > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let theta = 0.5 * (lo + hi);
            let yev = step.eval(theta);
            let state = OdeState::from_array(yev);
            let rate = vector_field(p, &state).s;
            if rate < 0.0 && state.y1 > 0.0 && state.y2 > 0.0 {
                let x = (state.y2 / state.y1).ln();
                if x.is_finite() {
                    events.push(SectionEvent { t: step.t0 + theta * step.h, x, state });
                }
            }
        }
        g_prev = g_next;
    }
    if events.is_empty() {
        return Err(Error::NoCrossings { s_level });
    }
    Ok((events, stepper.stats))
}

/// Consecutive-event pairs `(x_j, x_{j+1})` of the scalar return map.
pub fn return_map_cloud(
    p: &OdeParams,
    st0: &OdeState,
    s_level: f64,
    n_events: usize,
    tolerance: f64,
    t_max: f64,
) -> Result<Vec<(f64, f64)>> {
    let (events, _) = poincare_section(p, st0, s_level, n_events, tolerance, t_max)?;
    Ok(events.windows(2).map(|w| (w[0].x, w[1].x)).collect())
}

/// How far the cloud is from the graph of a single-valued map: pairs are
/// bucketed by `x` and the largest within-bucket spread of `x_next` is
/// returned (0 for an exactly functional cloud).
pub fn cloud_thickness(pairs: &[(f64, f64)]) -> f64 {
    if pairs.len() < 2 {
        return 0.0;
    }
    let mut sorted: Vec<(f64, f64)> = pairs.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let x_lo = sorted[0].0;
    let x_hi = sorted[sorted.len() - 1].0;
    let width = (x_hi - x_lo).max(f64::MIN_POSITIVE);
    let n_bins = 32usize;
    let mut spread = 0.0_f64;
    let mut bin_start = 0usize;
    for bin in 0..n_bins {
        let edge = x_lo + width * (bin as f64 + 1.0) / n_bins as f64;
        let mut bin_end = bin_start;
        while bin_end < sorted.len() && sorted[bin_end].0 <= edge {
            bin_end += 1;
        }
        if bin_end - bin_start >= 2 {
            let lo = sorted[bin_start..bin_end].iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let hi =
                sorted[bin_start..bin_end].iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            spread = spread.max(hi - lo);
        }
        bin_start = bin_end;
    }
    spread
}

/// CSV event log: `t,x,y1,y2,s`.
pub fn events_to_csv(events: &[SectionEvent]) -> String {
    let mut out = String::from("t,x,y1,y2,s\n");
    for e in events {
        out.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
            e.t, e.x, e.state.y1, e.state.y2, e.state.s
        ));
    }
    out
}
