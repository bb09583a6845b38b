//! Cuboid room, antenna-line constraint and the critical receiver sets.
//!
//! The room spans `[-L_x/2, L_x/2] × [0, L_y] × [-L_z/2, L_z/2]`. Transmit
//! antennas sit on the line `y = 0, z = z0`. Because the received power is
//! monotone in `y` and `|z - z0|`, the worst receivers always lie on the far
//! edge `y = L_y`, `z = ∓L_z/2`, which collapses the 3-D max-min problem onto
//! a single line parameterised by `x`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_form::Regime;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{field} must be finite, got {value}")]
    NotFinite { field: &'static str, value: f64 },
    #[error("{field} must be > 0, got {value}")]
    NotPositive { field: &'static str, value: f64 },
    #[error("{field} must be >= 0, got {value}")]
    Negative { field: &'static str, value: f64 },
    #[error("z0 = {z0} lies outside [-L_z/2, L_z/2] for L_z = {lz}")]
    AntennaLineOutside { z0: f64, lz: f64 },
}

fn finite(field: &'static str, value: f64) -> Result<f64, GeometryError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(GeometryError::NotFinite { field, value })
    }
}

/// Cuboid room with the antenna line at height `z0`.
///
/// `lz = 0` is accepted only together with `z0 = 0`; it models the planar
/// room used at the `L_z'/L_x = 0` end of parameter sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Room {
    lx: f64,
    ly: f64,
    lz: f64,
    z0: f64,
}

impl Room {
    pub fn new(lx: f64, ly: f64, lz: f64, z0: f64) -> Result<Self, GeometryError> {
        let lx = finite("L_x", lx)?;
        let ly = finite("L_y", ly)?;
        let lz = finite("L_z", lz)?;
        let z0 = finite("z0", z0)?;
        if lx <= 0.0 {
            return Err(GeometryError::NotPositive {
                field: "L_x",
                value: lx,
            });
        }
        if ly <= 0.0 {
            return Err(GeometryError::NotPositive {
                field: "L_y",
                value: ly,
            });
        }
        if lz < 0.0 {
            return Err(GeometryError::Negative {
                field: "L_z",
                value: lz,
            });
        }
        if z0.abs() > lz / 2.0 {
            return Err(GeometryError::AntennaLineOutside { z0, lz });
        }
        Ok(Room { lx, ly, lz, z0 })
    }

    /// Room with the antenna line at mid height.
    pub fn centred(lx: f64, ly: f64, lz: f64) -> Result<Self, GeometryError> {
        Room::new(lx, ly, lz, 0.0)
    }

    pub fn lx(&self) -> f64 {
        self.lx
    }

    pub fn ly(&self) -> f64 {
        self.ly
    }

    pub fn lz(&self) -> f64 {
        self.lz
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn half_width(&self) -> f64 {
        self.lx / 2.0
    }

    /// `L_z' = L_z + 2|z0|`: the height of the equivalent room with the
    /// antenna line at mid height.
    pub fn effective_height(&self) -> f64 {
        self.lz + 2.0 * self.z0.abs()
    }

    /// True for the degenerate `L_z = 0` room.
    pub fn is_planar(&self) -> bool {
        self.lz == 0.0
    }

    pub fn signature(&self) -> GeometrySignature {
        GeometrySignature::new(self.ly / self.lx, self.effective_height() / self.lx)
    }

    /// `L_y² + L_z'²/4`: the squared distance offset seen by every receiver
    /// on the critical line.
    pub fn critical_offset_sq(&self) -> f64 {
        let h = self.effective_height();
        self.ly * self.ly + h * h / 4.0
    }

    /// Same room scaled by `k > 0` in every dimension.
    pub fn scaled(&self, k: f64) -> Result<Self, GeometryError> {
        Room::new(self.lx * k, self.ly * k, self.lz * k, self.z0 * k)
    }

    pub fn contains(&self, p: &ReceiverPoint) -> bool {
        let hx = self.lx / 2.0;
        let hz = self.lz / 2.0;
        (-hx..=hx).contains(&p.x) && (0.0..=self.ly).contains(&p.y) && (-hz..=hz).contains(&p.z)
    }

    /// The `z` coordinate of the critical line: the room edge farthest from
    /// the antenna line. At `z0 = 0` the lower edge is chosen.
    pub fn critical_z(&self) -> f64 {
        if self.z0 >= 0.0 {
            -self.lz / 2.0
        } else {
            self.lz / 2.0
        }
    }

    /// The receiver on the critical line at abscissa `x`.
    pub fn critical_receiver(&self, x: f64) -> ReceiverPoint {
        ReceiverPoint::new(x, self.ly, self.critical_z())
    }
}

/// Dimensionless ratios that decide the optimal architecture.
///
/// `rho = 4·ry² + rz²` with `ry = L_y/L_x` and `rz = L_z'/L_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometrySignature {
    pub ry: f64,
    pub rz: f64,
    pub rho: f64,
}

impl GeometrySignature {
    fn new(ry: f64, rz: f64) -> Self {
        GeometrySignature {
            ry,
            rz,
            rho: 4.0 * ry * ry + rz * rz,
        }
    }

    /// Builds a signature directly from the two ratios, as used by sweeps.
    pub fn from_ratios(ry: f64, rz: f64) -> Result<Self, GeometryError> {
        let ry = finite("ry", ry)?;
        let rz = finite("rz", rz)?;
        if ry < 0.0 {
            return Err(GeometryError::Negative {
                field: "ry",
                value: ry,
            });
        }
        if rz < 0.0 {
            return Err(GeometryError::Negative {
                field: "rz",
                value: rz,
            });
        }
        Ok(GeometrySignature::new(ry, rz))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceiverPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ReceiverPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        ReceiverPoint { x, y, z }
    }
}

/// Receiver locations that attain the worst received power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    /// Sorted ascending.
    pub x_crit: Vec<f64>,
    pub y_crit: f64,
    pub z_crit: f64,
}

impl CriticalSet {
    pub fn receivers(&self) -> impl Iterator<Item = ReceiverPoint> + '_ {
        self.x_crit
            .iter()
            .map(move |&x| ReceiverPoint::new(x, self.y_crit, self.z_crit))
    }
}

/// Critical receivers of the optimal two-antenna placement in `regime`.
pub fn critical_set(room: &Room, regime: Regime) -> CriticalSet {
    let h = room.half_width();
    let x_crit = match regime {
        Regime::ThreePointDas => vec![-h, 0.0, h],
        Regime::BoundaryDas | Regime::Colocated => vec![-h, h],
    };
    CriticalSet {
        x_crit,
        y_crit: room.ly(),
        z_crit: room.critical_z(),
    }
}
