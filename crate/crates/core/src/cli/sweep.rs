//! Closed-form parameter sweeps over the room aspect ratios.
//!
//! Rows are dimensionless: `a1*/L_x`, `γ*·L_x²/(P·c)` and the gain, as
//! functions of `ry = L_y/L_x` for a list of `rz = L_z'/L_x` series.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{gain, normalized_a1, normalized_objective, Regime};
use crate::geometry::{GeometryError, GeometrySignature};

pub const SWEEP_HEADER: [&str; 7] = [
    "ry",
    "rz",
    "rho",
    "a1_star_over_lx",
    "gamma_star_norm",
    "eta",
    "regime",
];

/// The five height ratios `{0, √5/8, √5/4, 3√5/8, √5/2}` spanning the
/// admissible range up to the three-point transition.
pub fn reference_rz_series() -> Vec<f64> {
    let s5 = 5f64.sqrt();
    vec![0.0, s5 / 8.0, s5 / 4.0, 3.0 * s5 / 8.0, s5 / 2.0]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub ry: f64,
    pub rz: f64,
    pub rho: f64,
    pub a1_star_over_lx: f64,
    pub gamma_star_norm: f64,
    pub eta: f64,
    pub regime: Regime,
}

impl SweepRow {
    pub fn at(sig: GeometrySignature) -> SweepRow {
        SweepRow {
            ry: sig.ry,
            rz: sig.rz,
            rho: sig.rho,
            a1_star_over_lx: normalized_a1(sig.rho),
            gamma_star_norm: normalized_objective(sig.rho),
            eta: gain(sig.rho),
            regime: Regime::classify(sig.rho),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub ry_max: f64,
    /// Number of intervals; the sweep has `ry_steps + 1` points from 0.
    pub ry_steps: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            ry_max: 1.0,
            ry_steps: 400,
        }
    }
}

impl SweepSpec {
    pub fn step(&self) -> f64 {
        self.ry_max / self.ry_steps as f64
    }

    pub fn ry_values(&self) -> Vec<f64> {
        (0..=self.ry_steps)
            .map(|k| self.ry_max * k as f64 / self.ry_steps as f64)
            .collect()
    }
}

impl SweepTable {
    /// One row per `(rz, ry)` pair, sorted by `rz` then `ry`.
    pub fn compute(spec: &SweepSpec, rz_values: &[f64]) -> Result<SweepTable, GeometryError> {
        let mut rz_sorted = rz_values.to_vec();
        rz_sorted.sort_by(f64::total_cmp);
        let ry = spec.ry_values();
        let sigs = rz_sorted
            .iter()
            .flat_map(|&rz| {
                ry.iter()
                    .map(move |&ry| GeometrySignature::from_ratios(ry, rz))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rows = sigs.into_par_iter().map(SweepRow::at).collect();
        Ok(SweepTable { rows })
    }

    /// Rows of one `rz` series, in `ry` order.
    pub fn series(&self, rz: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.rz == rz)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        wr.write_record(SWEEP_HEADER)?;
        for r in &self.rows {
            wr.write_record([
                r.ry.to_string(),
                r.rz.to_string(),
                r.rho.to_string(),
                r.a1_star_over_lx.to_string(),
                r.gamma_star_norm.to_string(),
                r.eta.to_string(),
                r.regime.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_sorted_and_bounded() {
        let spec = SweepSpec {
            ry_max: 1.0,
            ry_steps: 50,
        };
        let t = SweepTable::compute(&spec, &[0.5, 0.0]).unwrap();
        assert_eq!(t.rows.len(), 102);
        assert!(t
            .rows
            .windows(2)
            .all(|w| (w[0].rz, w[0].ry) < (w[1].rz, w[1].ry)));
        for r in &t.rows {
            assert!((0.0..=0.5).contains(&r.a1_star_over_lx));
            assert!((1.0..=3.0).contains(&r.eta));
        }
        // planar room with vanishing depth: both antennas at L_x/(2√3), gain 3
        let first = &t.rows[0];
        assert_eq!((first.ry, first.rz), (0.0, 0.0));
        assert_eq!(first.eta, 3.0);
    }

    #[test]
    fn csv_has_fixed_header() {
        let t = SweepTable::compute(
            &SweepSpec {
                ry_max: 1.0,
                ry_steps: 4,
            },
            &[0.0],
        )
        .unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_HEADER.join(","));
        assert!(lines.all(|l| l.split(',').count() == SWEEP_HEADER.len()));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn rejects_negative_ratios() {
        assert!(SweepTable::compute(&SweepSpec::default(), &[-0.1]).is_err());
    }
}
