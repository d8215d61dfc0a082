//! Raster scans of the `(b, k)` plane and one-dimensional parameter
//! sweeps (bifurcation diagrams).
//!
//! Scans are embarrassingly parallel over rows: with the `parallel`
//! feature the rows are distributed on the rayon pool, without it they run
//! sequentially. Cell results are assembled in row order either way, so
//! output is bit-identical across thread counts. `scan_serial` always uses
//! the sequential path (the benchmark suite compares the two).

use crate::config::{ScanConfig, SeedPolicy};
use crate::continuation::Axis;
use crate::map::{self, MapParams};
use crate::orbit::{self, AttractorOptions};
use crate::regions::{self, AbsorbingInterval, RegionTag};

/// Per-cell attractor summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub region: RegionTag,
    /// Periods of the detected attractors (at most two); 0 encodes a
    /// chaotic attractor. Empty for outside-P or unresolved cells.
    pub periods: Vec<usize>,
    pub bistable: bool,
    /// Largest Lyapunov exponent over the detected attractors; NaN when
    /// there is none.
    pub lyapunov_max: f64,
    pub unresolved: bool,
}

/// A rectangular raster of cell summaries, row-major with row index `j`
/// running over `k` and column index `i` over `b`.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub config: ScanConfig,
    pub cells: Vec<CellSummary>,
}

/// Aggregate counts for a finished scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanReport {
    pub n_cells: usize,
    pub n_outside: usize,
    pub n_unresolved: usize,
    pub n_bistable: usize,
}

impl ScanGrid {
    pub fn nb(&self) -> usize {
        self.config.nb
    }

    pub fn nk(&self) -> usize {
        self.config.nk
    }

    /// Cell-center parameters for cell `(i, j)` (affine map from indices).
    pub fn center(&self, i: usize, j: usize) -> MapParams {
        let c = &self.config;
        MapParams::new(
            c.b_min + (c.b_max - c.b_min) * (i as f64 + 0.5) / c.nb as f64,
            c.k_min + (c.k_max - c.k_min) * (j as f64 + 0.5) / c.nk as f64,
        )
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellSummary {
        &self.cells[j * self.config.nb + i]
    }

    pub fn report(&self) -> ScanReport {
        ScanReport {
            n_cells: self.cells.len(),
            n_outside: self.cells.iter().filter(|c| c.region == RegionTag::OutsideP).count(),
            n_unresolved: self.cells.iter().filter(|c| c.unresolved).count(),
            n_bistable: self.cells.iter().filter(|c| c.bistable).count(),
        }
    }
}

/// Tiny deterministic generator for per-cell verification seeds.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi).
    fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * unit
    }
}

/// Summarize one parameter pair.
///
/// Outside `P` nothing is iterated; in the stable-fixed-point region the
/// summary is analytic (period 1, Lyapunov `ln|f'(x*)|`); everywhere else
/// the two critical orbits are classified and merged.
pub fn cell_summary_at(p: MapParams, opt: &AttractorOptions) -> CellSummary {
    let region = regions::classify(p);
    match region {
        RegionTag::OutsideP => CellSummary {
            region,
            periods: Vec::new(),
            bistable: false,
            lyapunov_max: f64::NAN,
            unresolved: false,
        },
        RegionTag::FixedPointStable => {
            let x_star = map::fixed_point(p).expect("fixed point exists inside P");
            let lyapunov = map::derivative(p, x_star, 1).abs().max(f64::MIN_POSITIVE).ln();
            CellSummary {
                region,
                periods: vec![1],
                bistable: false,
                lyapunov_max: lyapunov,
                unresolved: false,
            }
        }
        _ => match orbit::attractor_set_with(p, opt) {
            Ok(set) => CellSummary {
                region,
                periods: set.periods(),
                bistable: set.bistable,
                lyapunov_max: set
                    .attractors
                    .iter()
                    .map(|a| a.lyapunov)
                    .fold(f64::NEG_INFINITY, f64::max),
                unresolved: false,
            },
            Err(_) => CellSummary {
                region,
                periods: Vec::new(),
                bistable: false,
                lyapunov_max: f64::NAN,
                unresolved: true,
            },
        },
    }
}

/// Re-run a bistable cell with extra seeds; true when every extra orbit
/// lands on one of the two detected attractors.
pub fn verify_bistable_cell(
    p: MapParams,
    set: &orbit::AttractorSet,
    n_seeds: usize,
    salt: u64,
) -> bool {
    let j = match regions::absorbing_interval(p) {
        Ok(j) => j,
        Err(_) => return false,
    };
    let mut rng = SplitMix64(salt ^ 0x5bf0_3635_dead_beef);
    for _ in 0..n_seeds {
        let x0 = rng.next_in(j.lo, j.hi);
        let orb = orbit::iterate(p, x0, 200_000, 256);
        if orb.escaped {
            return false;
        }
        if !set
            .attractors
            .iter()
            .any(|a| orbit::orbit_matches_attractor(&orb.tail, a, 1e-5))
        {
            return false;
        }
    }
    true
}

fn scan_row(cfg: &ScanConfig, j: usize) -> Vec<CellSummary> {
    let opt = AttractorOptions {
        n_transient: cfg.n_transient,
        n_sample: cfg.n_sample,
        auto_extend: false,
    };
    let k = cfg.k_min + (cfg.k_max - cfg.k_min) * (j as f64 + 0.5) / cfg.nk as f64;
    (0..cfg.nb)
        .map(|i| {
            let b = cfg.b_min + (cfg.b_max - cfg.b_min) * (i as f64 + 0.5) / cfg.nb as f64;
            let p = MapParams::new(b, k);
            let mut cell = cell_summary_at(p, &opt);
            if cell.bistable {
                if let SeedPolicy::Verify(n) = cfg.seed_policy {
                    // deterministic per-cell salt so output is reproducible
                    let salt = (i as u64) << 32 | j as u64;
                    if let Ok(set) = orbit::attractor_set_with(p, &opt) {
                        if !verify_bistable_cell(p, &set, n, salt) {
                            cell.unresolved = true;
                        }
                    }
                }
            }
            cell
        })
        .collect()
}

fn assemble(cfg: &ScanConfig, rows: Vec<Vec<CellSummary>>) -> ScanGrid {
    let mut cells = Vec::with_capacity(cfg.nb * cfg.nk);
    for row in rows {
        cells.extend(row);
    }
    ScanGrid { config: cfg.clone(), cells }
}

/// Raster scan; parallel over rows when the `parallel` feature is on.
pub fn scan(cfg: &ScanConfig) -> ScanGrid {
    scan_with_progress(cfg, None)
}

/// As `scan`, reporting `(rows_done, rows_total)` after each row.
pub fn scan_with_progress(
    cfg: &ScanConfig,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> ScanGrid {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicUsize, Ordering};
        let done = AtomicUsize::new(0);
        let rows: Vec<Vec<CellSummary>> = (0..cfg.nk)
            .into_par_iter()
            .map(|j| {
                let row = scan_row(cfg, j);
                if let Some(cb) = progress {
                    cb(done.fetch_add(1, Ordering::Relaxed) + 1, cfg.nk);
                }
                row
            })
            .collect();
        assemble(cfg, rows)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut rows = Vec::with_capacity(cfg.nk);
        for j in 0..cfg.nk {
            rows.push(scan_row(cfg, j));
            if let Some(cb) = progress {
                cb(j + 1, cfg.nk);
            }
        }
        assemble(cfg, rows)
    }
}

/// Sequential scan regardless of features (benchmark baseline).
pub fn scan_serial(cfg: &ScanConfig) -> ScanGrid {
    let rows: Vec<Vec<CellSummary>> = (0..cfg.nk).map(|j| scan_row(cfg, j)).collect();
    assemble(cfg, rows)
}

/// CSV dump: a config header comment, a column header, then one row per
/// cell (`period1 = -1` marks unresolved cells, period 0 is chaotic,
/// `period2` is empty for single-attractor cells).
pub fn grid_to_csv(grid: &ScanGrid) -> String {
    let mut out = String::new();
    out.push_str(&grid.config.header_line());
    out.push('\n');
    out.push_str("b,k,region,period1,period2,bistable,lyapunov\n");
    for j in 0..grid.nk() {
        for i in 0..grid.nb() {
            let p = grid.center(i, j);
            let c = grid.cell(i, j);
            let p1 = if c.unresolved {
                "-1".to_string()
            } else {
                c.periods.first().map(|v| v.to_string()).unwrap_or_default()
            };
            let p2 = c.periods.get(1).map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{:.11e},{:.11e},{},{},{},{},{:.11e}\n",
                p.b,
                p.k,
                c.region.as_str(),
                p1,
                p2,
                c.bistable,
                c.lyapunov_max
            ));
        }
    }
    out
}

/// One sample of a parameter sweep.
#[derive(Debug, Clone)]
pub struct SweepSample {
    /// The swept parameter value.
    pub param: f64,
    /// Post-transient orbit points from the `x_max` seed (or `x* + 1` when
    /// the map has no extrema).
    pub tail_from_max: Vec<f64>,
    /// Same from the `x_min` seed (or `x* - 1`).
    pub tail_from_min: Vec<f64>,
    /// The absorbing interval, where defined.
    pub envelope: Option<AbsorbingInterval>,
    /// Overlay values `[f(x_max), f(x_min), f^2(x_max), f^2(x_min)]`.
    pub candidates: Option<[f64; 4]>,
}

/// A bifurcation-diagram sweep along one parameter axis.
#[derive(Debug, Clone)]
pub struct SweepDiagram {
    pub axis: Axis,
    pub fixed_value: f64,
    pub samples: Vec<SweepSample>,
}

/// Sweep specification.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    /// Swept parameter; the other is held at `fixed_value`.
    pub axis: Axis,
    pub fixed_value: f64,
    pub range: (f64, f64),
    pub n_points: usize,
    /// Tail points kept per seed per sample.
    pub n_plot: usize,
    pub n_transient: usize,
}

fn sweep_sample(spec: &SweepSpec, param: f64) -> SweepSample {
    let p = match spec.axis {
        Axis::B => MapParams::new(param, spec.fixed_value),
        Axis::K => MapParams::new(spec.fixed_value, param),
    };
    let empty = SweepSample {
        param,
        tail_from_max: Vec::new(),
        tail_from_min: Vec::new(),
        envelope: None,
        candidates: None,
    };
    if !p.in_p() {
        return empty;
    }
    let seeds = match map::extrema(p.k) {
        Some(e) => (e.x_max, e.x_min),
        None => match map::fixed_point(p) {
            Ok(x_star) => (x_star + 1.0, x_star - 1.0),
            Err(_) => return empty,
        },
    };
    let run = |x0: f64| {
        let orb = orbit::iterate(p, x0, spec.n_transient, spec.n_plot);
        if orb.escaped {
            Vec::new()
        } else {
            orb.tail
        }
    };
    SweepSample {
        param,
        tail_from_max: run(seeds.0),
        tail_from_min: run(seeds.1),
        envelope: regions::absorbing_interval(p).ok(),
        candidates: regions::interval_candidates(p),
    }
}

/// Run a sweep. Samples are placed at cell centers of the range, low to
/// high; rows run in parallel under the `parallel` feature.
pub fn sweep(spec: &SweepSpec) -> SweepDiagram {
    let params: Vec<f64> = (0..spec.n_points)
        .map(|i| {
            spec.range.0 + (spec.range.1 - spec.range.0) * (i as f64 + 0.5) / spec.n_points as f64
        })
        .collect();
    #[cfg(feature = "parallel")]
    let samples: Vec<SweepSample> = {
        use rayon::prelude::*;
        params.par_iter().map(|&v| sweep_sample(spec, v)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let samples: Vec<SweepSample> = params.iter().map(|&v| sweep_sample(spec, v)).collect();
    SweepDiagram { axis: spec.axis, fixed_value: spec.fixed_value, samples }
}

/// CSV dump of a sweep: `param,source,value` rows where `source` is one of
/// `tail_max, tail_min, env_lo, env_hi, f_xmax, f_xmin, f2_xmax, f2_xmin`.
pub fn sweep_to_csv(d: &SweepDiagram) -> String {
    let axis = match d.axis {
        Axis::B => "b",
        Axis::K => "k",
    };
    let mut out = format!("# axis={} fixed_value={}\nparam,source,value\n", axis, d.fixed_value);
    for s in &d.samples {
        for &x in &s.tail_from_max {
            out.push_str(&format!("{:.11e},tail_max,{:.11e}\n", s.param, x));
        }
        for &x in &s.tail_from_min {
            out.push_str(&format!("{:.11e},tail_min,{:.11e}\n", s.param, x));
        }
        if let Some(env) = &s.envelope {
            out.push_str(&format!("{:.11e},env_lo,{:.11e}\n", s.param, env.lo));
            out.push_str(&format!("{:.11e},env_hi,{:.11e}\n", s.param, env.hi));
        }
        if let Some([f_xmax, f_xmin, f2_xmax, f2_xmin]) = s.candidates {
            out.push_str(&format!("{:.11e},f_xmax,{:.11e}\n", s.param, f_xmax));
            out.push_str(&format!("{:.11e},f_xmin,{:.11e}\n", s.param, f_xmin));
            out.push_str(&format!("{:.11e},f2_xmax,{:.11e}\n", s.param, f2_xmax));
            out.push_str(&format!("{:.11e},f2_xmin,{:.11e}\n", s.param, f2_xmin));
        }
    }
    out
}
