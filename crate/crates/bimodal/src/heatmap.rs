//! Binary pixmap (P6) rendering of scan grids, with a JSON legend sidecar.
//!
//! The pixmap is dependency-free and bit-exact across runs; conversion to
//! PNG is left to external tooling (`pnmtopng`, ImageMagick, ...).
//! Image layout: columns follow `b` left to right, rows follow `k` top to
//! bottom with the top row at `k_max`.

use crate::error::Result;
use crate::regions::RegionTag;
use crate::scan::ScanGrid;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Which cell field drives the color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Period palette; chaotic black; bistable cells get the marker color.
    Period,
    /// Bistable cells highlighted on a neutral background.
    Bistable,
    /// Diverging blue-white-red ramp of the largest Lyapunov exponent,
    /// clamped to [-1, 1].
    Lyapunov,
}

impl Channel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Channel::Period => "period",
            Channel::Bistable => "bistable",
            Channel::Lyapunov => "lyapunov",
        }
    }
}

pub const COLOR_OUTSIDE: [u8; 3] = [255, 255, 255];
pub const COLOR_UNRESOLVED: [u8; 3] = [128, 128, 128];
pub const COLOR_CHAOS: [u8; 3] = [0, 0, 0];
pub const COLOR_BISTABLE_MARKER: [u8; 3] = [255, 0, 255];

/// Distinct colors for periods 1..16; higher periods reuse the palette
/// cyclically (`(p - 1) % 16`).
pub const PERIOD_PALETTE: [[u8; 3]; 16] = [
    [230, 57, 70],   // 1
    [46, 134, 193],  // 2
    [244, 162, 97],  // 3
    [42, 157, 143],  // 4
    [231, 111, 81],  // 5
    [38, 70, 83],    // 6
    [233, 196, 106], // 7
    [106, 76, 147],  // 8
    [144, 190, 109], // 9
    [217, 4, 41],    // 10
    [0, 119, 182],   // 11
    [255, 183, 3],   // 12
    [131, 56, 236],  // 13
    [6, 214, 160],   // 14
    [239, 71, 111],  // 15
    [17, 138, 178],  // 16
];

fn period_color(period: usize) -> [u8; 3] {
    if period == 0 {
        COLOR_CHAOS
    } else {
        PERIOD_PALETTE[(period - 1) % 16]
    }
}

fn lyapunov_color(value: f64) -> [u8; 3] {
    if value.is_nan() {
        return COLOR_OUTSIDE;
    }
    let t = (value.clamp(-1.0, 1.0) + 1.0) / 2.0; // 0 = blue, 0.5 = white, 1 = red
    if t < 0.5 {
        let s = t / 0.5;
        [(255.0 * s) as u8, (255.0 * s) as u8, 255]
    } else {
        let s = (t - 0.5) / 0.5;
        [255, (255.0 * (1.0 - s)) as u8, (255.0 * (1.0 - s)) as u8]
    }
}

fn cell_color(grid: &ScanGrid, i: usize, j: usize, channel: Channel) -> [u8; 3] {
    let c = grid.cell(i, j);
    if c.region == RegionTag::OutsideP {
        return COLOR_OUTSIDE;
    }
    if c.unresolved {
        return COLOR_UNRESOLVED;
    }
    match channel {
        Channel::Period => {
            if c.bistable {
                COLOR_BISTABLE_MARKER
            } else {
                match c.periods.first() {
                    Some(&p) => period_color(p),
                    None => COLOR_UNRESOLVED,
                }
            }
        }
        Channel::Bistable => {
            if c.bistable {
                [220, 30, 30]
            } else {
                [235, 235, 235]
            }
        }
        Channel::Lyapunov => lyapunov_color(c.lyapunov_max),
    }
}

#[derive(Serialize)]
struct Legend {
    channel: &'static str,
    width: usize,
    height: usize,
    orientation: &'static str,
    outside_p: [u8; 3],
    unresolved: [u8; 3],
    chaos: [u8; 3],
    bistable_marker: [u8; 3],
    period_palette: Vec<[u8; 3]>,
    lyapunov_range: [f64; 2],
}

/// Render `grid` to a binary P6 pixmap at `path`, with a `.json` legend
/// sidecar next to it.
pub fn render_heatmap(grid: &ScanGrid, channel: Channel, path: &Path) -> Result<()> {
    let (w, h) = (grid.nb(), grid.nk());
    let mut data = Vec::with_capacity(w * h * 3 + 32);
    data.extend_from_slice(format!("P6\n{w} {h}\n255\n").as_bytes());
    for row in 0..h {
        let j = h - 1 - row; // top row = k_max
        for i in 0..w {
            data.extend_from_slice(&cell_color(grid, i, j, channel));
        }
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&data)?;

    let legend = Legend {
        channel: channel.as_str(),
        width: w,
        height: h,
        orientation: "columns: b left->right; rows: k top(k_max)->bottom(k_min)",
        outside_p: COLOR_OUTSIDE,
        unresolved: COLOR_UNRESOLVED,
        chaos: COLOR_CHAOS,
        bistable_marker: COLOR_BISTABLE_MARKER,
        period_palette: PERIOD_PALETTE.to_vec(),
        lyapunov_range: [-1.0, 1.0],
    };
    let legend_path = path.with_extension("json");
    std::fs::write(legend_path, serde_json::to_string_pretty(&legend).expect("legend serializes"))?;
    Ok(())
}
