//! `key = value` configuration files and comma-separated number lists.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ladder::LadderWeight;
use crate::quadrature::{LadderMeasure, StepPolicy};
use crate::verification::VerifyConfig;

/// Report encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn measure_name(m: LadderMeasure) -> &'static str {
    match m {
        LadderMeasure::ZetaSq => "zeta-sq",
        LadderMeasure::Ztilde => "ztilde",
    }
}

pub fn parse_measure(s: &str) -> Result<LadderMeasure> {
    match s {
        "zeta-sq" => Ok(LadderMeasure::ZetaSq),
        "ztilde" => Ok(LadderMeasure::Ztilde),
        _ => Err(Error::Parse(format!(
            "unknown measure '{s}' (expected zeta-sq or ztilde)"
        ))),
    }
}

pub fn weight_name(w: LadderWeight) -> &'static str {
    match w {
        LadderWeight::MeanValue => "mean-value",
        LadderWeight::Logarithmic => "logarithmic",
    }
}

pub fn parse_weight(s: &str) -> Result<LadderWeight> {
    match s {
        "mean-value" => Ok(LadderWeight::MeanValue),
        "logarithmic" => Ok(LadderWeight::Logarithmic),
        _ => Err(Error::Parse(format!(
            "unknown weight '{s}' (expected mean-value or logarithmic)"
        ))),
    }
}

fn parse_format(s: &str) -> Result<Format> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(Error::Parse(format!(
            "unknown format '{s}' (expected csv or json)"
        ))),
    }
}

/// Parse a finite number; scientific notation is accepted.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse(format!("'{s}' is not a finite number"))),
    }
}

/// "1e3, 1e4,1e5" → [1000, 10000, 100000]. The empty string is the empty list.
pub fn parse_number_list(s: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_number).collect()
}

fn parse_positive(key: &str, s: &str) -> Result<f64> {
    let v = parse_number(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Parse(format!("{key} must be positive, got {v}")))
    }
}

/// Overridable run settings; `None` means the built-in default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub bound_c: Option<f64>,
    pub t_min: Option<f64>,
    pub tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_depth: Option<u32>,
    pub max_step: Option<f64>,
    pub samples_per_gap: Option<f64>,
    pub measure: Option<LadderMeasure>,
    pub weight: Option<LadderWeight>,
    pub format: Option<Format>,
}

pub const CONFIG_KEYS: [&str; 10] = [
    "bound_c",
    "t_min",
    "tol",
    "abs_tol",
    "max_depth",
    "max_step",
    "samples_per_gap",
    "measure",
    "weight",
    "format",
];

impl Settings {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "bound_c" => self.bound_c = Some(parse_positive(key, value)?),
            "t_min" => self.t_min = Some(parse_positive(key, value)?),
            "tol" => self.tol = Some(parse_positive(key, value)?),
            "abs_tol" => self.abs_tol = Some(parse_positive(key, value)?),
            "max_depth" => {
                let d: u32 = value.parse().map_err(|_| {
                    Error::Parse(format!(
                        "max_depth must be a positive integer, got '{value}'"
                    ))
                })?;
                if d == 0 {
                    return Err(Error::Parse("max_depth must be at least 1".into()));
                }
                self.max_depth = Some(d);
            }
            "max_step" => self.max_step = Some(parse_positive(key, value)?),
            "samples_per_gap" => self.samples_per_gap = Some(parse_positive(key, value)?),
            "measure" => self.measure = Some(parse_measure(value)?),
            "weight" => self.weight = Some(parse_weight(value)?),
            "format" => self.format = Some(parse_format(value)?),
            _ => return Err(Error::Parse(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: &Settings) -> Settings {
        Settings {
            bound_c: over.bound_c.or(self.bound_c),
            t_min: over.t_min.or(self.t_min),
            tol: over.tol.or(self.tol),
            abs_tol: over.abs_tol.or(self.abs_tol),
            max_depth: over.max_depth.or(self.max_depth),
            max_step: over.max_step.or(self.max_step),
            samples_per_gap: over.samples_per_gap.or(self.samples_per_gap),
            measure: over.measure.or(self.measure),
            weight: over.weight.or(self.weight),
            format: over.format.or(self.format),
        }
    }

    pub fn verify_config(&self) -> VerifyConfig {
        let mut cfg = VerifyConfig::default();
        if let Some(c) = self.bound_c {
            cfg.bound_c = c;
        }
        if let Some(t) = self.t_min {
            cfg.t_min = t;
        }
        if let Some(t) = self.tol {
            cfg.quad.rel_tol = t;
        }
        if let Some(t) = self.abs_tol {
            cfg.quad.abs_tol = t;
        }
        if let Some(d) = self.max_depth {
            cfg.quad.max_depth = d;
        }
        cfg.quad.step = self.step_policy();
        if let Some(m) = self.measure {
            cfg.measure = m;
        }
        if let Some(w) = self.weight {
            cfg.ladder.weight = w;
        }
        cfg
    }

    pub fn step_policy(&self) -> StepPolicy {
        let mut p = StepPolicy::default();
        if let Some(s) = self.max_step {
            p.max_step = s;
        }
        if let Some(s) = self.samples_per_gap {
            p.samples_per_gap = s;
        }
        p
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// Effective values of every key, one `key=value` per line, sorted.
    pub fn canonical(&self) -> String {
        let cfg = self.verify_config();
        let mut map = BTreeMap::new();
        map.insert("abs_tol", format!("{:e}", cfg.quad.abs_tol));
        map.insert("bound_c", format!("{:e}", cfg.bound_c));
        map.insert("max_depth", cfg.quad.max_depth.to_string());
        map.insert("max_step", format!("{:e}", cfg.quad.step.max_step));
        map.insert("measure", measure_name(cfg.measure).to_string());
        map.insert(
            "samples_per_gap",
            format!("{:e}", cfg.quad.step.samples_per_gap),
        );
        map.insert("t_min", format!("{:e}", cfg.t_min));
        map.insert("tol", format!("{:e}", cfg.quad.rel_tol));
        map.insert("weight", weight_name(cfg.ladder.weight).to_string());
        map.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Parse a config file: one `key = value` per line, `#` starts a comment,
/// values may be double-quoted, and each key may appear once.
pub fn parse_config(text: &str) -> Result<Settings> {
    let mut settings = Settings::default();
    let mut seen = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
        let key = key.trim();
        let mut value = value.trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        if seen.contains(&key) {
            return Err(Error::Parse(format!(
                "line {}: duplicate key '{key}'",
                i + 1
            )));
        }
        settings
            .set(key, value)
            .map_err(|e| Error::Parse(format!("line {}: {}", i + 1, strip_prefix(&e))))?;
        seen.push(key);
    }
    Ok(settings)
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Parse(m) | Error::Domain(m) | Error::Range(m) | Error::Convergence(m) => m.clone(),
    }
}
