//! Three-way comparison of the closed form, the grid oracle and the
//! quadratic-transform solver over a sweep of room geometries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form;
use crate::geometry::Room;
use crate::solver::{oracle_grid_solve, qt_solve, SolverConfig, SolverError};

use super::sweep::reference_rz_series;

/// `|a1_oracle - a1_closed| / L_x`.
pub const ORACLE_A1_TOL: f64 = 1e-4;
/// Relative gap between the oracle objective and the closed-form optimum.
pub const OBJECTIVE_GAP_TOL: f64 = 1e-8;
/// `|a1_qt - a1_oracle| / L_x`.
pub const QT_A1_TOL: f64 = 1e-3;
/// QT tolerance inside [`FLAT_BAND`], where `a1*` collapses to zero and
/// the objective is nearly flat.
pub const QT_A1_TOL_FLAT: f64 = 5e-3;
pub const FLAT_BAND: (f64, f64) = (2.9, 3.0);

pub fn qt_tolerance(rho: f64) -> f64 {
    if (FLAT_BAND.0..=FLAT_BAND.1).contains(&rho) {
        QT_A1_TOL_FLAT
    } else {
        QT_A1_TOL
    }
}

/// The closed-form quantities under test. Swapping in a different `a1`
/// formula is how negative controls are built.
#[derive(Clone, Copy)]
pub struct ClosedFormModel {
    pub a1: fn(&Room) -> f64,
    pub objective: fn(&Room) -> f64,
}

impl Default for ClosedFormModel {
    fn default() -> Self {
        ClosedFormModel {
            a1: closed_form::optimal_a1,
            objective: closed_form::worst_case_objective,
        }
    }
}

/// At least 200 rooms with `rho ∈ [0.01, 6]`, built on the five reference
/// height ratios plus a dense pass through the flat band `[2.9, 3]`.
/// Every other room raises the antenna line off mid height.
pub fn default_rooms() -> Vec<Room> {
    let mut rooms = Vec::new();
    let mut push = |lx: f64, rho: f64, rz: f64, idx: usize| {
        let ry = ((rho - rz * rz) / 4.0).max(0.0).sqrt();
        let h = rz * lx;
        // L_z' = L_z + 2|z0| with |z0| = 0.1·L_z'
        let (lz, z0) = if idx % 2 == 1 && h > 0.0 {
            (0.8 * h, 0.1 * h)
        } else {
            (h, 0.0)
        };
        if ry > 0.0 {
            rooms.push(Room::new(lx, ry * lx, lz, z0).expect("valid sweep room"));
        }
    };
    let lengths = [1.0, 2.0, 3.5, 5.0, 8.0];
    for (s, &rz) in reference_rz_series().iter().enumerate() {
        let lo = (rz * rz).max(0.01) + 1e-3;
        let n = 40;
        for i in 0..n {
            let rho = lo + (6.0 - lo) * i as f64 / (n - 1) as f64;
            push(lengths[(i + s) % lengths.len()], rho, rz, i);
        }
    }
    for i in 0..=10 {
        let rho = FLAT_BAND.0 + (FLAT_BAND.1 - FLAT_BAND.0) * i as f64 / 10.0;
        push(2.0, rho, 0.5, i);
    }
    for rho in [0.01, 1.25, 3.0] {
        push(2.0, rho, 0.0, 0);
    }
    rooms
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub lx: f64,
    pub ly: f64,
    pub lz: f64,
    pub z0: f64,
    pub rho: f64,
    pub a1_closed: f64,
    pub a1_oracle: f64,
    pub a1_qt: f64,
    pub oracle_da1_over_lx: f64,
    pub qt_da1_over_lx: f64,
    pub objective_gap: f64,
    pub qt_tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub cases: Vec<CaseResult>,
    pub max_oracle_da1_over_lx: f64,
    pub max_objective_gap: f64,
    pub max_qt_da1_over_lx: f64,
    pub max_qt_da1_over_lx_flat_band: f64,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        format!(
            "cases={} max|da1_oracle|/Lx={:.3e} (tol {:.0e}) max objective gap={:.3e} (tol {:.0e}) \
             max|da1_qt|/Lx={:.3e} (tol {:.0e}) flat band={:.3e} (tol {:.0e}) => {}",
            self.cases.len(),
            self.max_oracle_da1_over_lx,
            ORACLE_A1_TOL,
            self.max_objective_gap,
            OBJECTIVE_GAP_TOL,
            self.max_qt_da1_over_lx,
            QT_A1_TOL,
            self.max_qt_da1_over_lx_flat_band,
            QT_A1_TOL_FLAT,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

pub fn check_room(
    room: &Room,
    config: &SolverConfig,
    model: ClosedFormModel,
) -> Result<CaseResult, SolverError> {
    let lx = room.lx();
    let rho = room.signature().rho;
    let a1_closed = (model.a1)(room);
    let oracle = oracle_grid_solve(room, 2, config)?;
    let qt = qt_solve(room, 2, config)?;
    let closed_objective = (model.objective)(room);
    let oracle_da1 = (oracle.a1() - a1_closed).abs() / lx;
    let qt_da1 = (qt.a1() - oracle.a1()).abs() / lx;
    let gap = (oracle.objective - closed_objective).abs() / closed_objective;
    let tol = qt_tolerance(rho);
    Ok(CaseResult {
        lx,
        ly: room.ly(),
        lz: room.lz(),
        z0: room.z0(),
        rho,
        a1_closed,
        a1_oracle: oracle.a1(),
        a1_qt: qt.a1(),
        oracle_da1_over_lx: oracle_da1,
        qt_da1_over_lx: qt_da1,
        objective_gap: gap,
        qt_tolerance: tol,
        passed: oracle_da1 <= ORACLE_A1_TOL && gap <= OBJECTIVE_GAP_TOL && qt_da1 <= tol,
    })
}

pub fn validate(
    rooms: &[Room],
    config: &SolverConfig,
    model: ClosedFormModel,
) -> Result<ValidationReport, SolverError> {
    let cases = rooms
        .par_iter()
        .map(|room| check_room(room, config, model))
        .collect::<Result<Vec<_>, _>>()?;
    let max =
        |f: &dyn Fn(&CaseResult) -> Option<f64>| cases.iter().filter_map(f).fold(0.0, f64::max);
    let in_band = |c: &CaseResult| c.qt_tolerance == QT_A1_TOL_FLAT;
    Ok(ValidationReport {
        max_oracle_da1_over_lx: max(&|c| Some(c.oracle_da1_over_lx)),
        max_objective_gap: max(&|c| Some(c.objective_gap)),
        max_qt_da1_over_lx: max(&|c| (!in_band(c)).then_some(c.qt_da1_over_lx)),
        max_qt_da1_over_lx_flat_band: max(&|c| in_band(c).then_some(c.qt_da1_over_lx)),
        passed: cases.iter().all(|c| c.passed),
        cases,
    })
}
