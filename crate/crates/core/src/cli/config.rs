//! Run configuration: a flat TOML file merged with command-line overrides.
//!
//! ```toml
//! lx = 4.0
//! ly = 2.5
//! lz = 3.0
//! z0 = 0.5
//! power = 1.0
//! ref_gain = 1e-3
//! wavelength = 0.0107
//! nt = 2
//! x_grid_count = 401
//! ```
//!
//! Flags win over file values.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::channel::RadioParams;
use crate::geometry::Room;
use crate::solver::SolverConfig;

pub const DEFAULT_WAVELENGTH: f64 = 0.01;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("missing required field `{0}`")]
    Missing(&'static str),
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl ConfigError {
    pub fn invalid(field: impl Into<String>, reason: impl ToString) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            reason: reason.to_string(),
        }
    }

    /// Field the error refers to, if any.
    pub fn field(&self) -> Option<&str> {
        match self {
            ConfigError::Missing(f) => Some(f),
            ConfigError::Invalid { field, .. } => Some(field),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Every setting is optional at this layer; required fields are checked
/// when the typed room, radio and solver values are requested.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub lx: Option<f64>,
    pub ly: Option<f64>,
    pub lz: Option<f64>,
    pub z0: Option<f64>,
    pub power: Option<f64>,
    pub ref_gain: Option<f64>,
    pub wavelength: Option<f64>,
    pub nt: Option<usize>,
    pub a1: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub x_grid_count: Option<usize>,
    pub a_grid_count: Option<usize>,
    pub refine_iters: Option<usize>,
    pub tol: Option<f64>,
    pub max_qt_iters: Option<usize>,
    pub inner_steps: Option<usize>,
    pub step_scale: Option<f64>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        RunConfig::from_toml_str(&text, path)
    }

    /// Fills every field set in `overrides` into `self`.
    pub fn merge(mut self, overrides: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if overrides.$f.is_some() { self.$f = overrides.$f; } )* };
        }
        take!(
            lx,
            ly,
            lz,
            z0,
            power,
            ref_gain,
            wavelength,
            nt,
            a1,
            out,
            format,
            x_grid_count,
            a_grid_count,
            refine_iters,
            tol,
            max_qt_iters,
            inner_steps,
            step_scale
        );
        self
    }

    pub fn room(&self) -> Result<Room, ConfigError> {
        let lx = self.lx.ok_or(ConfigError::Missing("lx"))?;
        let ly = self.ly.ok_or(ConfigError::Missing("ly"))?;
        let lz = self.lz.ok_or(ConfigError::Missing("lz"))?;
        let z0 = self.z0.unwrap_or(0.0);
        if !(lx.is_finite() && lx > 0.0) {
            return Err(ConfigError::invalid(
                "lx",
                format!("L_x must be > 0, got {lx}"),
            ));
        }
        if !(ly.is_finite() && ly > 0.0) {
            return Err(ConfigError::invalid(
                "ly",
                format!("L_y must be > 0, got {ly}"),
            ));
        }
        if !(lz.is_finite() && lz >= 0.0) {
            return Err(ConfigError::invalid(
                "lz",
                format!("L_z must be >= 0, got {lz}"),
            ));
        }
        Room::new(lx, ly, lz, z0).map_err(|e| ConfigError::invalid("z0", e))
    }

    pub fn radio(&self) -> Result<RadioParams, ConfigError> {
        let wavelength = self.wavelength.unwrap_or(DEFAULT_WAVELENGTH);
        let ref_gain = self.ref_gain.unwrap_or(1.0);
        let power = self.power.unwrap_or(1.0);
        for (field, v) in [
            ("wavelength", wavelength),
            ("ref_gain", ref_gain),
            ("power", power),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::invalid(field, format!("must be > 0, got {v}")));
            }
        }
        RadioParams::new(wavelength, ref_gain, power).map_err(|e| ConfigError::invalid("radio", e))
    }

    pub fn n_t(&self) -> Result<usize, ConfigError> {
        match self.nt.unwrap_or(2) {
            0 => Err(ConfigError::invalid("nt", "need at least one antenna")),
            n => Ok(n),
        }
    }

    pub fn solver(&self) -> Result<SolverConfig, ConfigError> {
        let d = SolverConfig::default();
        let cfg = SolverConfig {
            x_grid_count: self.x_grid_count.unwrap_or(d.x_grid_count),
            a_grid_count: self.a_grid_count.unwrap_or(d.a_grid_count),
            refine_iters: self.refine_iters.unwrap_or(d.refine_iters),
            tol: self.tol.unwrap_or(d.tol),
            max_qt_iters: self.max_qt_iters.unwrap_or(d.max_qt_iters),
            inner_steps: self.inner_steps.unwrap_or(d.inner_steps),
            step_scale: self.step_scale.unwrap_or(d.step_scale),
        };
        cfg.validate()
            .map_err(|e| ConfigError::invalid("solver", e))?;
        Ok(cfg)
    }

    pub fn format(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}
