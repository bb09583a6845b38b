//! Analytical max-min placement for two antennas.
//!
//! Everything here depends on the room only through `L_x` and the signature
//! `rho = 4(L_y/L_x)² + (L_z'/L_x)²`:
//!
//! | regime          | rho          | a1*/L_x                      | critical x        |
//! |-----------------|--------------|------------------------------|-------------------|
//! | `ThreePointDas` | `[0, 5/4]`   | `√(rho+1) / (2√3)`           | `-L_x/2, 0, L_x/2` |
//! | `BoundaryDas`   | `[5/4, 3]`   | `½√(2√(rho+1) − (rho+1))`    | `±L_x/2`          |
//! | `Colocated`     | `[3, ∞)`     | `0`                          | `±L_x/2`          |
//!
//! Adjacent branches agree at the shared boundaries, so the tie-break used
//! by [`Regime::classify`] only affects the reported label.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::{near_field_indicator, NearFieldIndicator, Placement, RadioParams};
use crate::geometry::{critical_set, GeometrySignature, Room};

/// Upper `rho` limit of the three-point regime.
pub const THREE_POINT_LIMIT: f64 = 1.25;
/// `rho` at and above which co-located antennas are optimal.
pub const COLOCATED_LIMIT: f64 = 3.0;

/// Slack below zero tolerated in the boundary-branch radicand before it is
/// treated as a genuine domain error.
const RADICAND_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Distributed antennas, worst receivers at both walls and the centre.
    #[serde(rename = "ThreePointDAS")]
    ThreePointDas,
    /// Distributed antennas, worst receivers at both walls.
    #[serde(rename = "BoundaryDAS")]
    BoundaryDas,
    /// Both antennas at the centre of the line.
    Colocated,
}

impl Regime {
    /// Boundary values belong to the lower-`rho` regime.
    pub fn classify(rho: f64) -> Regime {
        if rho <= THREE_POINT_LIMIT {
            Regime::ThreePointDas
        } else if rho <= COLOCATED_LIMIT {
            Regime::BoundaryDas
        } else {
            Regime::Colocated
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::ThreePointDas => "ThreePointDAS",
            Regime::BoundaryDas => "BoundaryDAS",
            Regime::Colocated => "Colocated",
        }
    }

    pub fn is_distributed(&self) -> bool {
        !matches!(self, Regime::Colocated)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(sig: &GeometrySignature) -> Regime {
    Regime::classify(sig.rho)
}

/// Stationary points of `a1 ↦ f_x(a1, -a1)` for a fixed receiver abscissa.
///
/// `None` marks a candidate that is not a real number distinct from the
/// centre point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoints {
    pub primary: Option<f64>,
    /// Always `-primary`.
    pub primary_neg: Option<f64>,
    /// `primary` evaluated at `-x`.
    pub mirrored: Option<f64>,
    /// Always `-mirrored`.
    pub mirrored_neg: Option<f64>,
    /// The centre point, always real.
    pub centre: f64,
}

impl StationaryPoints {
    /// All real candidates.
    pub fn real(&self) -> Vec<f64> {
        [
            self.primary,
            self.primary_neg,
            self.mirrored,
            self.mirrored_neg,
            Some(self.centre),
        ]
        .into_iter()
        .flatten()
        .collect()
    }
}

/// The pair `(e, d)` with `e = 4x√d` and `d = 4x² + 4L_y² + L_z'²`.
pub fn stationary_terms(x: f64, ly: f64, lz_eff: f64) -> (f64, f64) {
    let d = 4.0 * x * x + 4.0 * ly * ly + lz_eff * lz_eff;
    (4.0 * x * d.sqrt(), d)
}

fn half_root_if_positive(v: f64) -> Option<f64> {
    (v > 0.0).then(|| 0.5 * v.sqrt())
}

pub fn stationary_points(x: f64, ly: f64, lz_eff: f64) -> StationaryPoints {
    let (e, d) = stationary_terms(x, ly, lz_eff);
    let primary = half_root_if_positive(e - d);
    // the mirrored pair is the primary pair at -x, where e flips sign
    let (e_m, d_m) = stationary_terms(-x, ly, lz_eff);
    let mirrored = half_root_if_positive(e_m - d_m);
    StationaryPoints {
        primary,
        primary_neg: primary.map(|a| -a),
        mirrored,
        mirrored_neg: mirrored.map(|a| -a),
        centre: 0.0,
    }
}

/// `|x|` above which the primary stationary point is real and nonzero.
pub fn realness_threshold(ly: f64, lz_eff: f64) -> f64 {
    (lz_eff * lz_eff / 12.0 + ly * ly / 3.0).sqrt()
}

/// Per-branch formulas, normalised so that lengths are in units of `L_x`
/// and powers in units of `P·c/L_x²`. Each branch is valid on its own
/// `rho` interval only.
pub mod branch {
    use super::RADICAND_CLAMP;

    pub fn a1_three_point(rho: f64) -> f64 {
        (rho + 1.0).sqrt() / (2.0 * 3f64.sqrt())
    }

    /// NaN once `rho` is clearly past the co-located limit.
    pub fn a1_boundary(rho: f64) -> f64 {
        let s = rho + 1.0;
        let radicand = 2.0 * s.sqrt() - s;
        let radicand = if radicand < 0.0 && radicand > -RADICAND_CLAMP {
            0.0
        } else {
            radicand
        };
        0.5 * radicand.sqrt()
    }

    pub fn objective_three_point(rho: f64) -> f64 {
        24.0 / (4.0 * rho + 1.0)
    }

    pub fn objective_boundary(rho: f64) -> f64 {
        (2.0 * (rho + 1.0).sqrt() + 2.0) / rho
    }

    pub fn objective_colocated(rho: f64) -> f64 {
        8.0 / (rho + 1.0)
    }

    pub fn gain_three_point(rho: f64) -> f64 {
        (3.0 * rho + 3.0) / (4.0 * rho + 1.0)
    }

    pub fn gain_boundary(rho: f64) -> f64 {
        let s = rho + 1.0;
        (s.powf(1.5) + s) / (4.0 * rho)
    }
}

/// `a1*/L_x` for a signature.
pub fn normalized_a1(rho: f64) -> f64 {
    match Regime::classify(rho) {
        Regime::ThreePointDas => branch::a1_three_point(rho),
        Regime::BoundaryDas => branch::a1_boundary(rho),
        Regime::Colocated => 0.0,
    }
}

/// Optimal worst-case objective `γ*·L_x²/(P·c)`.
pub fn normalized_objective(rho: f64) -> f64 {
    match Regime::classify(rho) {
        Regime::ThreePointDas => branch::objective_three_point(rho),
        Regime::BoundaryDas => branch::objective_boundary(rho),
        Regime::Colocated => branch::objective_colocated(rho),
    }
}

/// Gain of the optimal placement over the co-located one.
pub fn gain(rho: f64) -> f64 {
    match Regime::classify(rho) {
        Regime::ThreePointDas => branch::gain_three_point(rho),
        Regime::BoundaryDas => branch::gain_boundary(rho),
        Regime::Colocated => 1.0,
    }
}

/// Optimal offset `a1* = -a2* ∈ [0, L_x/2]`.
pub fn optimal_a1(room: &Room) -> f64 {
    room.lx() * normalized_a1(room.signature().rho)
}

/// Max-min value of the inverse-square sum, `min_x f_x(a1*, -a1*)`.
pub fn worst_case_objective(room: &Room) -> f64 {
    normalized_objective(room.signature().rho) / (room.lx() * room.lx())
}

/// Received power at the worst receiver under the optimal placement.
pub fn worst_case_power(room: &Room, params: &RadioParams) -> f64 {
    params.power_scale() * worst_case_objective(room)
}

/// Worst-case power of the co-located (far-field optimal) placement.
pub fn colocated_power(room: &Room, params: &RadioParams) -> f64 {
    let rho = room.signature().rho;
    params.power_scale() * branch::objective_colocated(rho) / (room.lx() * room.lx())
}

pub fn farfield_gain(room: &Room) -> f64 {
    gain(room.signature().rho)
}

/// Closed-form solution for one room.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub a1_star: f64,
    pub a2_star: f64,
    pub regime: Regime,
    pub x_crit: Vec<f64>,
    pub y_crit: f64,
    pub z_crit: f64,
    pub gamma_star: f64,
    pub eta: f64,
    pub geometry: GeometrySignature,
    pub planar_room: bool,
    pub near_field: NearFieldIndicator,
}

impl SolveReport {
    pub fn placement(&self) -> Placement {
        Placement::from_vec(vec![self.a1_star, self.a2_star])
    }
}

pub fn solve(room: &Room, params: &RadioParams) -> SolveReport {
    let geometry = room.signature();
    let regime = classify(&geometry);
    let a1 = optimal_a1(room).min(room.half_width());
    let crit = critical_set(room, regime);
    let placement = Placement::from_vec(vec![a1, -a1]);
    SolveReport {
        a1_star: a1,
        a2_star: -a1,
        regime,
        x_crit: crit.x_crit,
        y_crit: crit.y_crit,
        z_crit: crit.z_crit,
        gamma_star: worst_case_power(room, params),
        eta: gain(geometry.rho),
        geometry,
        planar_room: room.is_planar(),
        near_field: near_field_indicator(room, &placement, params.wavelength()),
    }
}
