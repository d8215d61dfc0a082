//! Plain-text `key = value` configuration for scans and sweeps.
//!
//! Recognized keys: `b_min, b_max, k_min, k_max, nb, nk, n_transient,
//! n_sample, seed_policy`. Lines starting with `#` and blank lines are
//! ignored. Unknown keys and malformed values are rejected with the line
//! and field named, so a CLI can exit with a precise diagnostic.

use crate::error::{Error, Result};

/// How scan cells are seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Iterate from the two critical points only (the default; by the
    /// negative-Schwarzian argument this finds every attractor).
    Critical,
    /// As `Critical`, plus re-verify every bistable cell with this many
    /// extra seeds drawn deterministically per cell; cells whose extra
    /// seeds reach a third attractor are demoted to unresolved.
    Verify(usize),
}

impl SeedPolicy {
    pub fn as_string(&self) -> String {
        match self {
            SeedPolicy::Critical => "critical".into(),
            SeedPolicy::Verify(n) => format!("verify:{n}"),
        }
    }
}

/// Raster/sweep configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub b_min: f64,
    pub b_max: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub nb: usize,
    pub nk: usize,
    pub n_transient: usize,
    pub n_sample: usize,
    pub seed_policy: SeedPolicy,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            b_min: -25.0,
            b_max: -0.5,
            k_min: -60.0,
            k_max: -5.0,
            nb: 1000,
            nk: 1000,
            n_transient: crate::tol::N_TRANSIENT_DEFAULT,
            n_sample: crate::tol::N_SAMPLE_DEFAULT,
            seed_policy: SeedPolicy::Critical,
        }
    }
}

fn bad(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Config { line, field: field.into(), message: message.into() }
}

impl ScanConfig {
    /// Set one key from its textual value. `line` is only used for error
    /// reporting (pass 0 for programmatic/env sources).
    pub fn set_key(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let parse_f64 = |v: &str| -> Result<f64> {
            v.trim()
                .parse::<f64>()
                .map_err(|e| bad(line, key, format!("expected a real number, {e}")))
        };
        let parse_usize = |v: &str| -> Result<usize> {
            v.trim()
                .parse::<usize>()
                .map_err(|e| bad(line, key, format!("expected a count, {e}")))
        };
        match key {
            "b_min" => self.b_min = parse_f64(value)?,
            "b_max" => self.b_max = parse_f64(value)?,
            "k_min" => self.k_min = parse_f64(value)?,
            "k_max" => self.k_max = parse_f64(value)?,
            "nb" => self.nb = parse_usize(value)?,
            "nk" => self.nk = parse_usize(value)?,
            "n_transient" => self.n_transient = parse_usize(value)?,
            "n_sample" => self.n_sample = parse_usize(value)?,
            "seed_policy" => {
                let v = value.trim();
                self.seed_policy = if v == "critical" {
                    SeedPolicy::Critical
                } else if let Some(n) = v.strip_prefix("verify:") {
                    SeedPolicy::Verify(
                        n.parse::<usize>()
                            .map_err(|e| bad(line, key, format!("bad verify count, {e}")))?,
                    )
                } else {
                    return Err(bad(line, key, format!("unknown seed policy `{v}`")));
                };
            }
            other => return Err(bad(line, other, "unknown key")),
        }
        Ok(())
    }

    /// Parse a whole config file on top of the defaults.
    pub fn parse(text: &str) -> Result<ScanConfig> {
        let mut cfg = ScanConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(line_no, line, "expected `key = value`"))?;
            cfg.set_key(key.trim(), value, line_no)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply environment-style overrides: for each `(name, value)` whose
    /// name is `prefix` + an uppercased key, set that key.
    pub fn apply_overrides<I>(&mut self, prefix: &str, vars: I) -> Result<()>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        for (name, value) in vars {
            if let Some(rest) = name.strip_prefix(prefix) {
                let key = rest.to_ascii_lowercase();
                if KEYS.contains(&key.as_str()) {
                    self.set_key(&key, &value, 0)?;
                }
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b_min < self.b_max) {
            return Err(bad(0, "b_min", "b_min must be < b_max"));
        }
        if !(self.k_min < self.k_max) {
            return Err(bad(0, "k_min", "k_min must be < k_max"));
        }
        if self.nb == 0 || self.nk == 0 {
            return Err(bad(0, "nb", "grid must have at least one cell per axis"));
        }
        if self.n_sample < 4 {
            return Err(bad(0, "n_sample", "need at least 4 samples"));
        }
        Ok(())
    }

    /// One-line textual form, embedded as the CSV header comment so output
    /// files carry their own provenance.
    pub fn header_line(&self) -> String {
        format!(
            "# b_min={} b_max={} k_min={} k_max={} nb={} nk={} n_transient={} n_sample={} seed_policy={}",
            self.b_min,
            self.b_max,
            self.k_min,
            self.k_max,
            self.nb,
            self.nk,
            self.n_transient,
            self.n_sample,
            self.seed_policy.as_string()
        )
    }
}

const KEYS: [&str; 9] = [
    "b_min", "b_max", "k_min", "k_max", "nb", "nk", "n_transient", "n_sample", "seed_policy",
];
