//! Free-space line-of-sight channel with spherical wavefronts, maximum ratio
//! transmission and the received-power objectives.
//!
//! Under MRT the received power reduces to `P·c·Σ 1/D_i²`, so everything the
//! placement optimisation needs is the inverse-square distance sum
//! ([`f_xyz`]) and its restriction to the critical line ([`f_x`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{ReceiverPoint, Room};

/// Distances below this are treated as a receiver sitting on an antenna.
pub const MIN_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("receiver at ({x}, {y}, {z}) coincides with a transmit antenna")]
    ZeroDistance { x: f64, y: f64, z: f64 },
    #[error("channel vector has zero norm")]
    ZeroChannel,
    #[error("{field} must be finite and > 0, got {value}")]
    InvalidParam { field: &'static str, value: f64 },
    #[error("placement needs at least one antenna")]
    EmptyPlacement,
    #[error("antenna position {position} outside [-{half_width}, {half_width}]")]
    OutsideRoom { position: f64, half_width: f64 },
}

/// Wavelength, reference channel gain at 1 m, and total transmit power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    wavelength: f64,
    ref_gain: f64,
    tx_power: f64,
}

impl RadioParams {
    pub fn new(wavelength: f64, ref_gain: f64, tx_power: f64) -> Result<Self, ChannelError> {
        for (field, value) in [
            ("wavelength", wavelength),
            ("ref_gain", ref_gain),
            ("tx_power", tx_power),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ChannelError::InvalidParam { field, value });
            }
        }
        Ok(RadioParams {
            wavelength,
            ref_gain,
            tx_power,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn ref_gain(&self) -> f64 {
        self.ref_gain
    }

    pub fn tx_power(&self) -> f64 {
        self.tx_power
    }

    /// `P·c`, the factor turning an inverse-square sum into watts.
    pub fn power_scale(&self) -> f64 {
        self.tx_power * self.ref_gain
    }
}

/// Antenna abscissae on the line `y = 0, z = z0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Placement(Vec<f64>);

impl Placement {
    /// Checks every position against the room's x-extent.
    pub fn new(room: &Room, positions: Vec<f64>) -> Result<Self, ChannelError> {
        if positions.is_empty() {
            return Err(ChannelError::EmptyPlacement);
        }
        let half_width = room.half_width();
        if let Some(&position) = positions
            .iter()
            .find(|a| !(a.is_finite() && a.abs() <= half_width))
        {
            return Err(ChannelError::OutsideRoom {
                position,
                half_width,
            });
        }
        Ok(Placement(positions))
    }

    /// Unchecked constructor for positions already known to be valid.
    pub(crate) fn from_vec(positions: Vec<f64>) -> Self {
        debug_assert!(!positions.is_empty());
        Placement(positions)
    }

    /// The symmetric pair `[a1, -a1]`.
    pub fn symmetric_pair(room: &Room, a1: f64) -> Result<Self, ChannelError> {
        Placement::new(room, vec![a1, -a1])
    }

    /// Symmetric placement from nonnegative offsets: each offset `u` yields
    /// antennas at `±u`, and `centre` adds one antenna at the origin.
    /// Positions are ordered descending so `a_i = -a_{n+1-i}`.
    pub fn from_offsets(room: &Room, offsets: &[f64], centre: bool) -> Result<Self, ChannelError> {
        Placement::new(room, symmetric_positions(offsets, centre))
    }

    pub fn positions(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distance between the outermost antennas.
    pub fn aperture(&self) -> f64 {
        let (lo, hi) = self
            .0
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| {
                (lo.min(a), hi.max(a))
            });
        hi - lo
    }
}

pub(crate) fn symmetric_positions(offsets: &[f64], centre: bool) -> Vec<f64> {
    let mut sorted: Vec<f64> = offsets.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut positions = sorted.clone();
    if centre {
        positions.push(0.0);
    }
    positions.extend(sorted.iter().rev().map(|u| -u));
    positions
}

/// Per-antenna complex baseband gains.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector(pub Vec<Complex64>);

impl ChannelVector {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|g| g.norm_sqr()).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Euclidean distance between the antenna at `(antenna_x, 0, z0)` and `rx`.
pub fn distance(antenna_x: f64, z0: f64, rx: &ReceiverPoint) -> Result<f64, ChannelError> {
    let d = distance_sq(antenna_x, z0, rx).sqrt();
    if d < MIN_DISTANCE {
        return Err(ChannelError::ZeroDistance {
            x: rx.x,
            y: rx.y,
            z: rx.z,
        });
    }
    Ok(d)
}

fn distance_sq(antenna_x: f64, z0: f64, rx: &ReceiverPoint) -> f64 {
    let dx = rx.x - antenna_x;
    let dz = rx.z - z0;
    dx * dx + rx.y * rx.y + dz * dz
}

/// `g_i = √c / D_i · exp(-j 2π D_i / λ)`.
pub fn channel_vector(
    placement: &Placement,
    z0: f64,
    rx: &ReceiverPoint,
    params: &RadioParams,
) -> Result<ChannelVector, ChannelError> {
    let amplitude = params.ref_gain().sqrt();
    let k = 2.0 * PI / params.wavelength();
    placement
        .positions()
        .iter()
        .map(|&a| {
            let d = distance(a, z0, rx)?;
            Ok(Complex64::from_polar(amplitude / d, -k * d))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(ChannelVector)
}

/// MRT transmit vector `s = √P · g / ‖g‖₂`.
pub fn mrt_beamformer(g: &ChannelVector, tx_power: f64) -> Result<Vec<Complex64>, ChannelError> {
    let norm = g.norm_sqr().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(ChannelError::ZeroChannel);
    }
    let scale = tx_power.sqrt() / norm;
    Ok(g.0.iter().map(|gi| gi * scale).collect())
}

/// `|g^H s|²` for an arbitrary transmit vector.
pub fn beamformed_power(g: &ChannelVector, s: &[Complex64]) -> f64 {
    debug_assert_eq!(g.len(), s.len());
    g.0.iter()
        .zip(s)
        .map(|(gi, si)| gi.conj() * si)
        .sum::<Complex64>()
        .norm_sqr()
}

/// Received power under MRT, `P·c·Σ 1/D_i²`.
pub fn received_power(
    placement: &Placement,
    z0: f64,
    rx: &ReceiverPoint,
    params: &RadioParams,
) -> Result<f64, ChannelError> {
    Ok(params.power_scale() * f_xyz(placement, z0, rx)?)
}

/// Inverse-square distance sum at an arbitrary receiver.
pub fn f_xyz(placement: &Placement, z0: f64, rx: &ReceiverPoint) -> Result<f64, ChannelError> {
    placement.positions().iter().try_fold(0.0, |acc, &a| {
        let d = distance(a, z0, rx)?;
        Ok(acc + 1.0 / (d * d))
    })
}

/// Inverse-square distance sum at abscissa `x` of the critical line
/// `y = L_y`, `|z - z0| = L_z'/2`.
pub fn f_x(placement: &Placement, x: f64, ly: f64, lz_eff: f64) -> Result<f64, ChannelError> {
    let offset_sq = ly * ly + lz_eff * lz_eff / 4.0;
    if offset_sq < MIN_DISTANCE * MIN_DISTANCE
        && placement
            .positions()
            .iter()
            .any(|&a| (x - a).abs() < MIN_DISTANCE)
    {
        return Err(ChannelError::ZeroDistance {
            x,
            y: ly,
            z: lz_eff / 2.0,
        });
    }
    Ok(critical_line_sum(placement.positions(), x, offset_sq))
}

/// `Σ 1/((x - a_i)² + offset_sq)` without validation; the hot loop of every
/// solver.
#[inline]
pub(crate) fn critical_line_sum(positions: &[f64], x: f64, offset_sq: f64) -> f64 {
    positions
        .iter()
        .map(|&a| {
            let dx = x - a;
            1.0 / (dx * dx + offset_sq)
        })
        .sum()
}

/// Informational far-field boundary for a placement.
///
/// Receivers closer than `2·aperture²/λ` see noticeably curved wavefronts.
/// Nothing is enforced; the indicator only lets callers sanity-check whether
/// the room is in the radiating near field of the chosen placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearFieldIndicator {
    pub aperture_m: f64,
    pub fraunhofer_distance_m: f64,
    pub max_receiver_distance_m: f64,
    pub room_within_near_field: bool,
}

pub fn near_field_indicator(
    room: &Room,
    placement: &Placement,
    wavelength: f64,
) -> NearFieldIndicator {
    let aperture = placement.aperture();
    let fraunhofer = 2.0 * aperture * aperture / wavelength;
    // farthest corner from any antenna
    let h = room.half_width();
    let z_far = room.lz() / 2.0 + room.z0().abs();
    let max_dist = placement
        .positions()
        .iter()
        .map(|&a| {
            let dx = h + a.abs();
            (dx * dx + room.ly() * room.ly() + z_far * z_far).sqrt()
        })
        .fold(0.0, f64::max);
    NearFieldIndicator {
        aperture_m: aperture,
        fraunhofer_distance_m: fraunhofer,
        max_receiver_distance_m: max_dist,
        room_within_near_field: max_dist < fraunhofer,
    }
}
