//! Received power sampled over a regular room grid.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{received_power, Placement, RadioParams};
use crate::geometry::{ReceiverPoint, Room};

pub const FIELD_HEADER: [&str; 4] = ["x", "y", "z", "gamma_watts"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub gamma_watts: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMap {
    pub samples: Vec<FieldSample>,
    pub minimum: FieldSample,
    /// Grid points skipped because they coincide with an antenna.
    pub skipped: usize,
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![(lo + hi) / 2.0];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

impl FieldMap {
    /// Samples in x-major order. A planar room has a single `z` layer.
    pub fn compute(
        room: &Room,
        placement: &Placement,
        params: &RadioParams,
        grid: [usize; 3],
    ) -> FieldMap {
        let h = room.half_width();
        let xs = axis(-h, h, grid[0].max(1));
        let ys = axis(0.0, room.ly(), grid[1].max(1));
        let zs = if room.is_planar() {
            vec![0.0]
        } else {
            axis(-room.lz() / 2.0, room.lz() / 2.0, grid[2].max(1))
        };
        let per_x: Vec<(Vec<FieldSample>, usize)> = xs
            .par_iter()
            .map(|&x| {
                let mut out = Vec::with_capacity(ys.len() * zs.len());
                let mut skipped = 0;
                for &y in &ys {
                    for &z in &zs {
                        match received_power(
                            placement,
                            room.z0(),
                            &ReceiverPoint::new(x, y, z),
                            params,
                        ) {
                            Ok(g) => out.push(FieldSample {
                                x,
                                y,
                                z,
                                gamma_watts: g,
                            }),
                            Err(_) => skipped += 1,
                        }
                    }
                }
                (out, skipped)
            })
            .collect();
        let skipped = per_x.iter().map(|(_, s)| s).sum();
        let samples: Vec<FieldSample> = per_x.into_iter().flat_map(|(s, _)| s).collect();
        let minimum = samples
            .iter()
            .copied()
            .fold(None::<FieldSample>, |best, s| match best {
                Some(b) if b.gamma_watts <= s.gamma_watts => Some(b),
                _ => Some(s),
            })
            .unwrap_or(FieldSample {
                x: f64::NAN,
                y: f64::NAN,
                z: f64::NAN,
                gamma_watts: f64::NAN,
            });
        FieldMap {
            samples,
            minimum,
            skipped,
        }
    }

    /// Samples within `rel` of the minimum power.
    pub fn near_minimum(&self, rel: f64) -> impl Iterator<Item = &FieldSample> {
        let limit = self.minimum.gamma_watts * (1.0 + rel);
        self.samples.iter().filter(move |s| s.gamma_watts <= limit)
    }

    /// CSV with a trailing `# min ...` comment line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        {
            let mut wr = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut w);
            wr.write_record(FIELD_HEADER)?;
            for s in &self.samples {
                wr.write_record([
                    s.x.to_string(),
                    s.y.to_string(),
                    s.z.to_string(),
                    s.gamma_watts.to_string(),
                ])?;
            }
            wr.flush()?;
        }
        writeln!(w, "{}", self.summary_line())
    }

    pub fn summary_line(&self) -> String {
        let m = &self.minimum;
        format!(
            "# min x={} y={} z={} gamma_watts={} skipped={}",
            m.x, m.y, m.z, m.gamma_watts, self.skipped
        )
    }
}
