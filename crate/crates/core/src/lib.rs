//! Optimal transmit-antenna placement for near-field wireless power transfer
//! in a cuboid room.
//!
//! The receiver may sit anywhere in the room and the transmitter uses
//! maximum ratio transmission, so the received power is `P·c·Σ 1/D_i²`.
//! Antennas live on a horizontal line along the room's front wall; the
//! crate maximises the power at the worst receiver position.
//!
//! * [`geometry`]: rooms, signatures and critical receiver sets.
//! * [`channel`]: spherical-wavefront channel, MRT and received power.
//! * [`closed_form`]: the analytical two-antenna optimum, its worst-case
//!   power and the gain over co-located antennas.
//! * [`solver`]: a brute-force grid oracle and a quadratic-transform solver
//!   for any number of antennas.
//! * [`cli`]: the `solve | sweep | field | validate` front end and its CSV
//!   and JSON formats.
//!
//! ```
//! use wpt_placement::{closed_form, Room, RadioParams};
//!
//! let room = Room::new(2.0, 2f64.sqrt(), 0.0, 0.0).unwrap();
//! let report = closed_form::solve(&room, &RadioParams::new(0.01, 1.0, 1.0).unwrap());
//! assert!((report.a1_star - 0.681250).abs() < 1e-6);
//! ```

pub mod channel;
pub mod cli;
pub mod closed_form;
pub mod geometry;
pub mod solver;

pub use channel::{Placement, RadioParams};
pub use closed_form::{Regime, SolveReport};
pub use geometry::{GeometrySignature, ReceiverPoint, Room};
pub use solver::{NumericResult, SolverConfig};
