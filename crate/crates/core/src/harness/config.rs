//! Plain-text run configuration: `key = value` lines, `#` comments and
//! `[section]` headers that prefix the following keys with `section.`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::{AfError, Result};
use crate::limiting::LimiterConfig;
use crate::timestepper::SchemeConfig;

/// Largest cell count per direction accepted without `large = true`.
pub const DESK_SCALE_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    /// Write a field CSV every this many steps; 0 writes only the final field.
    pub every: usize,
    pub checkpoint: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: None,
            every: 0,
            checkpoint: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: String,
    pub nx: usize,
    /// Defaults to the problem's natural aspect ratio.
    pub ny: Option<usize>,
    /// Defaults to the problem's end time.
    pub t_end: Option<f64>,
    pub max_steps: Option<usize>,
    pub scheme: SchemeConfig,
    pub output: OutputConfig,
    pub large: bool,
    /// Checkpoint to resume from instead of the initial data.
    pub resume: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(problem: &str, nx: usize) -> Self {
        Self {
            problem: problem.to_string(),
            nx,
            ny: None,
            t_end: None,
            max_steps: None,
            scheme: SchemeConfig::default(),
            output: OutputConfig::default(),
            large: false,
            resume: None,
        }
    }

    /// Checks the size and time invariants for the resolved grid size.
    pub fn validate(&self, ny: usize, t_end: f64) -> Result<()> {
        if self.nx < 4 || ny < 4 {
            return Err(AfError::Config(format!(
                "grid {}x{ny} too small (need at least 4x4)",
                self.nx
            )));
        }
        if !(t_end > 0.0) {
            return Err(AfError::Config(format!("end time must be positive, got {t_end}")));
        }
        if (self.nx > DESK_SCALE_LIMIT || ny > DESK_SCALE_LIMIT) && !self.large {
            return Err(AfError::Config(format!(
                "grid {}x{ny} exceeds {DESK_SCALE_LIMIT} cells per direction; pass --large",
                self.nx
            )));
        }
        self.scheme.validate()
    }
}

/// `none`, `bound` or `bound+shock`.
pub fn parse_limiter(s: &str) -> Result<LimiterConfig> {
    match s {
        "none" | "off" => Ok(LimiterConfig::off()),
        "bound" => Ok(LimiterConfig::bound()),
        "bound+shock" => Ok(LimiterConfig::bound_and_shock()),
        other => Err(AfError::Config(format!("unknown limiter '{other}'"))),
    }
}

pub fn limiter_name(l: &LimiterConfig) -> &'static str {
    match (l.bound_preserving, l.shock_indicator) {
        (false, false) => "none",
        (true, false) => "bound",
        (true, true) => "bound+shock",
        (false, true) => "shock",
    }
}

/// `on`/`off`, `true`/`false`, `yes`/`no` or `1`/`0`.
pub fn parse_switch(s: &str) -> Result<bool> {
    match s {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        other => Err(AfError::Config(format!("expected on/off, got '{other}'"))),
    }
}

/// Flattens the text into dotted keys. Duplicate keys are an error.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| AfError::Config(format!("line {}: unterminated section", n + 1)))?;
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| AfError::Config(format!("line {}: expected key = value", n + 1)))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(AfError::Config(format!("line {}: empty key", n + 1)));
        }
        let full = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        let value = value.trim().trim_matches('"').to_string();
        if out.insert(full.clone(), value).is_some() {
            return Err(AfError::Config(format!("line {}: duplicate key '{full}'", n + 1)));
        }
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| AfError::Config(format!("{key}: cannot parse '{v}'")))
}

/// Parses a run configuration; unknown keys are rejected.
pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let map = parse_key_values(text)?;
    let problem = map
        .get("problem")
        .ok_or_else(|| AfError::Config("missing key 'problem'".into()))?;
    let nx = num(
        "nx",
        map.get("nx")
            .ok_or_else(|| AfError::Config("missing key 'nx'".into()))?,
    )?;
    let mut cfg = RunConfig::new(problem, nx);
    for (key, v) in &map {
        match key.as_str() {
            "problem" | "nx" => {}
            "ny" => cfg.ny = Some(num(key, v)?),
            "t_end" | "tend" => cfg.t_end = Some(num(key, v)?),
            "max_steps" => cfg.max_steps = Some(num(key, v)?),
            "large" => cfg.large = parse_switch(v)?,
            "resume" => cfg.resume = Some(PathBuf::from(v)),
            "scheme.cfl" => cfg.scheme.cfl = num(key, v)?,
            "scheme.allow_large_cfl" => cfg.scheme.allow_large_cfl = parse_switch(v)?,
            "scheme.strategy" => cfg.scheme.strategy = v.parse()?,
            "scheme.correction" => cfg.scheme.correction = parse_switch(v)?,
            "scheme.transonic_fix" => cfg.scheme.transonic_fix = parse_switch(v)?,
            "scheme.quadrature_order" => cfg.scheme.quadrature_order = num(key, v)?,
            "scheme.clip_averages" => cfg.scheme.clip_averages = parse_switch(v)?,
            "scheme.strict_centers" => cfg.scheme.strict_centers = parse_switch(v)?,
            "scheme.limiter" => {
                let floor = cfg.scheme.limiter.positivity_floor;
                let composition = cfg.scheme.limiter.composition;
                cfg.scheme.limiter = LimiterConfig {
                    positivity_floor: floor,
                    composition,
                    ..parse_limiter(v)?
                };
            }
            "scheme.composition" => cfg.scheme.limiter.composition = v.parse()?,
            "scheme.positivity_floor" => cfg.scheme.limiter.positivity_floor = num(key, v)?,
            "output.dir" => cfg.output.dir = Some(PathBuf::from(v)),
            "output.every" => cfg.output.every = num(key, v)?,
            "output.checkpoint" => cfg.output.checkpoint = parse_switch(v)?,
            other => return Err(AfError::Config(format!("unknown key '{other}'"))),
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limiting::Composition;
    use crate::timestepper::LinearisationStrategy;

    #[test]
    fn parses_sections_and_comments() {
        let text = "problem = vortex  # smooth\nnx = 64\n\n[scheme]\ncfl = 0.25\nstrategy = simplified\nlimiter = bound+shock\ncomposition = bound_then_blend\ncorrection = off\n[output]\ndir = \"out\"\nevery = 10\ncheckpoint = on\n";
        let cfg = parse_run_config(text).unwrap();
        assert_eq!(cfg.problem, "vortex");
        assert_eq!(cfg.nx, 64);
        assert_eq!(cfg.scheme.cfl, 0.25);
        assert_eq!(cfg.scheme.strategy, LinearisationStrategy::Simplified);
        assert!(cfg.scheme.limiter.bound_preserving && cfg.scheme.limiter.shock_indicator);
        assert_eq!(cfg.scheme.limiter.composition, Composition::BoundThenBlend);
        assert!(!cfg.scheme.correction);
        assert_eq!(cfg.output.dir, Some(PathBuf::from("out")));
        assert_eq!(cfg.output.every, 10);
        assert!(cfg.output.checkpoint);
    }

    #[test]
    fn dotted_keys_equal_sections() {
        let a = parse_key_values("[scheme]\ncfl = 0.2").unwrap();
        let b = parse_key_values("scheme.cfl = 0.2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "nx = 4",
            "problem = ex1\nnx = 4\nbogus = 1",
            "problem = ex1\nnx = four",
            "problem = ex1\nnx = 4\nnx = 8",
            "problem = ex1\nnx = 4\n[scheme\n",
            "problem = ex1\nnx = 4\njust words",
            "problem = ex1\nnx = 4\n[scheme]\nlimiter = maybe",
        ] {
            assert!(matches!(parse_run_config(text), Err(AfError::Config(_))), "{text}");
        }
    }

    #[test]
    fn invariants() {
        let cfg = RunConfig::new("ex1", 3);
        assert!(cfg.validate(8, 0.25).is_err());
        let cfg = RunConfig::new("ex1", 1024);
        assert!(cfg.validate(8, 0.25).is_err());
        assert!(RunConfig { large: true, ..cfg }.validate(8, 0.25).is_ok());
        assert!(RunConfig::new("ex1", 32).validate(8, 0.0).is_err());
    }
}
