//! Numerical laboratory for the one-dimensional bimodal map
//!
//! ```text
//!     x_{n+1} = f(x_n) = b + x_n - k / (1 + e^{x_n})
//! ```
//!
//! which arises as the Poincaré return map of a two-predators-one-prey
//! system in the log-ratio coordinate `x = ln(y2/y1)`. The crate computes
//! the map's analytic objects (critical points, fixed point, Schwarzian
//! derivative, parameter-plane region boundaries), detects attractors and
//! bistability from the two critical orbits, traces fold/flip bifurcation
//! curves of n-cycles by pseudo-arclength continuation, rasterizes the
//! `(b,k)` parameter plane, and integrates the source 3D ODE system with
//! Poincaré sectioning.
//!
//! Parameter-plane scans are data-parallel. With the default `parallel`
//! feature they run on a rayon thread pool; building with
//! `--no-default-features` selects a sequential fallback with identical
//! (bit-exact) output.

pub mod config;
pub mod continuation;
pub mod error;
pub mod heatmap;
pub mod map;
pub mod ode;
pub mod orbit;
pub mod regions;
pub mod scan;
pub mod tol;

pub use config::ScanConfig;
pub use continuation::{BifurcationCurve, BifurcationKind, BifurcationPoint, CrisisBoundarySample};
pub use error::{Error, Result};
pub use map::{CriticalStructure, Extrema, MapParams};
pub use orbit::{Attractor, AttractorKind, AttractorOptions, AttractorSet, OrbitResult, Period2Orbit};
pub use regions::{AbsorbingInterval, BoundaryCurveSample, CurveId, IntervalKind, RegionTag};
pub use scan::{CellSummary, ScanGrid, SweepDiagram};
