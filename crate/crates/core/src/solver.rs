//! Numerical max-min solvers used to cross-check the closed form.
//!
//! Both solvers work on the critical line, maximising
//! `min_x Σ_i 1/((x - a_i)² + L_y² + L_z'²/4)` over symmetric placements.
//! The inner minimum runs over a uniform grid of `x_grid_count` abscissae
//! augmented with `{-L_x/2, 0, L_x/2}`, which for two antennas contains the
//! exact critical set.
//!
//! * [`oracle_grid_solve`] scans the single free offset exhaustively and
//!   refines the best cell by golden-section search.
//! * [`qt_solve`] is a quadratic-transform (minorise-maximise) iteration for
//!   the max-min sum of ratios, valid for any number of antennas.
//! * [`worst_receiver_scan`] searches the full 3-D room for the worst
//!   receiver of a given placement.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{critical_line_sum, f_xyz, symmetric_positions, Placement};
use crate::geometry::{ReceiverPoint, Room};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("the grid oracle handles 1 or 2 antennas, got {0}; use qt_solve")]
    InvalidArity(usize),
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
    #[error("quadratic transform did not converge after {} iterations", .0.iterations)]
    NotConverged(Box<NumericResult>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Uniform abscissae on `[-L_x/2, L_x/2]` for the inner minimum.
    pub x_grid_count: usize,
    /// Offsets scanned by the grid oracle.
    pub a_grid_count: usize,
    /// Golden-section iterations after the oracle scan.
    pub refine_iters: usize,
    /// Relative objective change that stops the QT iteration.
    pub tol: f64,
    pub max_qt_iters: usize,
    /// Projected-subgradient steps per QT surrogate.
    pub inner_steps: usize,
    /// Initial subgradient step as a fraction of `L_x`.
    pub step_scale: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            x_grid_count: 201,
            a_grid_count: 1001,
            refine_iters: 100,
            tol: 1e-14,
            max_qt_iters: 4000,
            inner_steps: 200,
            step_scale: 0.1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::InvalidConfig(msg));
        if self.x_grid_count < 3 {
            return bad(format!(
                "x_grid_count must be >= 3, got {}",
                self.x_grid_count
            ));
        }
        if self.a_grid_count < 3 {
            return bad(format!(
                "a_grid_count must be >= 3, got {}",
                self.a_grid_count
            ));
        }
        if self.refine_iters == 0 {
            return bad("refine_iters must be >= 1".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        if self.max_qt_iters == 0 {
            return bad("max_qt_iters must be >= 1".into());
        }
        if self.inner_steps == 0 {
            return bad("inner_steps must be >= 1".into());
        }
        if !(self.step_scale.is_finite() && self.step_scale > 0.0) {
            return bad(format!("step_scale must be > 0, got {}", self.step_scale));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericResult {
    pub positions: Placement,
    /// `min` over the inner grid of `f_x` at `positions`.
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// True objective after each iteration, starting with the initial point.
    pub history: Vec<f64>,
}

impl NumericResult {
    /// Largest antenna abscissa, i.e. `a1` for symmetric placements.
    pub fn a1(&self) -> f64 {
        self.positions.positions()[0]
    }

    pub fn require_converged(self) -> Result<Self, SolverError> {
        if self.converged {
            Ok(self)
        } else {
            Err(SolverError::NotConverged(Box::new(self)))
        }
    }
}

/// The inner-minimum grid: `count` uniform points plus `{-L_x/2, 0, L_x/2}`,
/// sorted and deduplicated.
pub fn critical_line_grid(room: &Room, count: usize) -> Vec<f64> {
    let h = room.half_width();
    let mut xs: Vec<f64> = (0..count)
        .map(|i| -h + room.lx() * i as f64 / (count - 1) as f64)
        .collect();
    xs.extend([-h, 0.0, h]);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// `min_x f_x(positions)` over a prepared grid.
pub fn min_over_grid(positions: &[f64], grid: &[f64], offset_sq: f64) -> f64 {
    grid.iter()
        .map(|&x| critical_line_sum(positions, x, offset_sq))
        .fold(f64::INFINITY, f64::min)
}

/// Worst critical-line objective of the pair `(a1, -a1)`, evaluated at the
/// exact two-antenna critical candidates `{0, L_x/2}`.
pub fn symmetric_pair_objective(room: &Room, a1: f64) -> f64 {
    let k = room.critical_offset_sq();
    let pos = [a1, -a1];
    critical_line_sum(&pos, 0.0, k).min(critical_line_sum(&pos, room.half_width(), k))
}

fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    iters: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Index and value of the maximum; ties go to the lowest index so the
/// parallel reduction is deterministic.
fn argmax_par(values: impl IndexedParallelIterator<Item = f64>) -> (usize, f64) {
    values.enumerate().map(|(i, v)| (i, v)).reduce(
        || (usize::MAX, f64::NEG_INFINITY),
        |a, b| {
            if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                b
            } else {
                a
            }
        },
    )
}

/// Exhaustive max-min oracle for one or two antennas.
///
/// One antenna is scanned over the whole line; two antennas are scanned as
/// the symmetric pair `(a, -a)` with `a ∈ [0, L_x/2]`. The best grid cell is
/// then refined by golden-section search over its two neighbours.
pub fn oracle_grid_solve(
    room: &Room,
    n_t: usize,
    config: &SolverConfig,
) -> Result<NumericResult, SolverError> {
    config.validate()?;
    let (lo, hi): (f64, f64) = match n_t {
        1 => (-room.half_width(), room.half_width()),
        2 => (0.0, room.half_width()),
        n => return Err(SolverError::InvalidArity(n)),
    };
    let grid = critical_line_grid(room, config.x_grid_count);
    let k = room.critical_offset_sq();
    let positions = |a: f64| -> Vec<f64> {
        if n_t == 1 {
            vec![a]
        } else {
            vec![a, -a]
        }
    };
    let objective = |a: f64| min_over_grid(&positions(a), &grid, k);

    let n = config.a_grid_count;
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let (best_i, best_v) = argmax_par((0..n).into_par_iter().map(|i| objective(at(i))));

    let bracket_lo = at(best_i.saturating_sub(1));
    let bracket_hi = at((best_i + 1).min(n - 1));
    let (a_ref, v_ref) = golden_section_max(objective, bracket_lo, bracket_hi, config.refine_iters);
    let (a, v) = if v_ref >= best_v {
        (a_ref, v_ref)
    } else {
        (at(best_i), best_v)
    };
    let a = a.clamp(lo, hi);
    Ok(NumericResult {
        positions: Placement::from_vec(positions(a)),
        objective: v,
        iterations: n + config.refine_iters,
        converged: true,
        history: vec![best_v, v],
    })
}

/// State of one quadratic-transform surrogate: auxiliary weights
/// `w[x][i] = 1/B_{i,x}` frozen at the current placement.
struct Surrogate<'a> {
    grid: &'a [f64],
    offset_sq: f64,
    centre: bool,
    weights: Vec<f64>,
    n_pos: usize,
}

impl<'a> Surrogate<'a> {
    fn new(grid: &'a [f64], offset_sq: f64, centre: bool, offsets: &[f64]) -> Self {
        let pos = symmetric_positions(offsets, centre);
        let n_pos = pos.len();
        let mut weights = Vec::with_capacity(grid.len() * n_pos);
        for &x in grid {
            for &a in &pos {
                let d = x - a;
                weights.push(1.0 / (d * d + offset_sq));
            }
        }
        Surrogate {
            grid,
            offset_sq,
            centre,
            weights,
            n_pos,
        }
    }

    /// `min_x Σ_i (2 w - w² B_{i,x}(v))` and the index of the active `x`.
    fn value(&self, offsets: &[f64]) -> (f64, usize) {
        let pos = symmetric_positions(offsets, self.centre);
        let mut best = (f64::INFINITY, 0);
        for (j, &x) in self.grid.iter().enumerate() {
            let w = &self.weights[j * self.n_pos..(j + 1) * self.n_pos];
            let s: f64 = pos
                .iter()
                .zip(w)
                .map(|(&a, &wi)| {
                    let d = x - a;
                    2.0 * wi - wi * wi * (d * d + self.offset_sq)
                })
                .sum();
            if s < best.0 {
                best = (s, j);
            }
        }
        best
    }

    /// Supergradient of the active surrogate term with respect to the
    /// offsets. Offsets are sorted descending inside `symmetric_positions`,
    /// so the term for `+u` sits at index `r` and `-u` at `n_pos - 1 - r`.
    fn supergradient(&self, offsets: &[f64], active: usize) -> Vec<f64> {
        let x = self.grid[active];
        let w = &self.weights[active * self.n_pos..(active + 1) * self.n_pos];
        let mut order: Vec<usize> = (0..offsets.len()).collect();
        order.sort_by(|&a, &b| offsets[b].total_cmp(&offsets[a]));
        let mut grad = vec![0.0; offsets.len()];
        for (rank, &idx) in order.iter().enumerate() {
            let u = offsets[idx];
            let w_plus = w[rank];
            let w_minus = w[self.n_pos - 1 - rank];
            // d/du of -w²((x-u)² + K) and -w²((x+u)² + K)
            grad[idx] = 2.0 * w_plus * w_plus * (x - u) - 2.0 * w_minus * w_minus * (x + u);
        }
        grad
    }
}

/// Quadratic-transform solver for symmetric placements of `n_t >= 2`
/// antennas.
///
/// Each outer iteration freezes the auxiliary weights `y = 1/B` at the
/// current placement and maximises the concave surrogate
/// `min_x Σ_i (2y - y²B)` by projected supergradient ascent on
/// `[0, L_x/2]^k`, keeping the best iterate. The surrogate touches the true
/// objective from below at the current placement, so the true objective
/// never decreases. The inner step starts at `step_scale · r` and decays as
/// `1/√t`, where the trust radius `r` starts at `L_x` and tracks the size of
/// recent moves; it halves whenever a surrogate yields no improvement.
pub fn qt_solve(
    room: &Room,
    n_t: usize,
    config: &SolverConfig,
) -> Result<NumericResult, SolverError> {
    config.validate()?;
    if n_t < 2 {
        return Err(SolverError::InvalidArity(n_t));
    }
    let h = room.half_width();
    let grid = critical_line_grid(room, config.x_grid_count);
    let k = room.critical_offset_sq();
    let centre = n_t % 2 == 1;

    // evenly spread on [-L_x/4, L_x/4]
    let mut offsets: Vec<f64> = (0..n_t)
        .map(|i| -room.lx() / 4.0 + room.lx() / 2.0 * i as f64 / (n_t - 1) as f64)
        .filter(|&a| a > 1e-15 * room.lx())
        .collect();
    offsets.truncate(n_t / 2);
    debug_assert_eq!(offsets.len(), n_t / 2);

    let true_objective = |u: &[f64]| min_over_grid(&symmetric_positions(u, centre), &grid, k);
    let mut objective = true_objective(&offsets);
    let mut history = vec![objective];
    let mut radius = room.lx();
    let min_radius = 1e-14 * room.lx();
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..config.max_qt_iters {
        iterations += 1;
        let surrogate = Surrogate::new(&grid, k, centre, &offsets);
        let (start_value, _) = surrogate.value(&offsets);
        let mut best = (start_value, offsets.clone());
        let mut current = offsets.clone();
        for t in 1..=config.inner_steps {
            let (_, active) = surrogate.value(&current);
            let grad = surrogate.supergradient(&current, active);
            let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            let step = config.step_scale * radius / (t as f64).sqrt();
            for (u, g) in current.iter_mut().zip(&grad) {
                *u = (*u + step * g / norm).clamp(0.0, h);
            }
            let (v, _) = surrogate.value(&current);
            if v > best.0 {
                best = (v, current.clone());
            }
        }

        let moved = best
            .1
            .iter()
            .zip(&offsets)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let next = if moved > 0.0 {
            true_objective(&best.1)
        } else {
            objective
        };
        // the surrogate bound guarantees next >= objective up to rounding
        let (next, accepted) = if next >= objective {
            (next, true)
        } else {
            (objective, false)
        };
        let mut next = next;
        if accepted && moved > 0.0 {
            let (extrapolated, value) = extrapolate(&offsets, best.1, next, h, &true_objective);
            next = value;
            let moved = extrapolated
                .iter()
                .zip(&offsets)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            offsets = extrapolated;
            radius = (4.0 * moved / config.step_scale).clamp(min_radius, room.lx());
        } else {
            radius = (radius / 2.0).max(min_radius);
        }
        let change = (next - objective).abs();
        objective = next;
        history.push(objective);
        if moved > 0.0 && change <= config.tol * objective {
            converged = true;
            break;
        }
        if radius <= min_radius {
            converged = true;
            break;
        }
    }

    Ok(NumericResult {
        positions: Placement::from_vec(symmetric_positions(&offsets, centre)),
        objective,
        iterations,
        converged,
        history,
    })
}

/// Doubling line search along an accepted QT move `from -> to`, keeping the
/// farthest point whose true objective still strictly improves. Plain QT
/// steps shrink like the local curvature ratio, which stalls where the
/// objective is nearly flat around the optimum.
fn extrapolate(
    from: &[f64],
    to: Vec<f64>,
    to_value: f64,
    half_width: f64,
    objective: &impl Fn(&[f64]) -> f64,
) -> (Vec<f64>, f64) {
    let mut best = (to, to_value);
    let dir: Vec<f64> = best.0.iter().zip(from).map(|(b, a)| b - a).collect();
    let mut scale = 1.0;
    for _ in 0..60 {
        scale *= 2.0;
        let cand: Vec<f64> = from
            .iter()
            .zip(&dir)
            .map(|(a, d)| (a + scale * d).clamp(0.0, half_width))
            .collect();
        let v = objective(&cand);
        if v > best.1 {
            let stuck = cand == best.0;
            best = (cand, v);
            if stuck {
                break;
            }
        } else {
            break;
        }
    }
    best
}

/// Worst receiver of `placement` over a full `nx × ny × nz` room grid.
///
/// Grid points that coincide with an antenna are skipped.
pub fn worst_receiver_scan(
    room: &Room,
    placement: &Placement,
    grid: [usize; 3],
) -> Result<(ReceiverPoint, f64), SolverError> {
    if grid.iter().any(|&n| n < 2) {
        return Err(SolverError::InvalidConfig(format!(
            "receiver grid needs >= 2 points per axis, got {grid:?}"
        )));
    }
    let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    };
    let h = room.half_width();
    let xs = axis(-h, h, grid[0]);
    let ys = axis(0.0, room.ly(), grid[1]);
    let zs = axis(-room.lz() / 2.0, room.lz() / 2.0, grid[2]);

    let best = xs
        .par_iter()
        .map(|&x| {
            let mut best = (ReceiverPoint::new(x, 0.0, 0.0), f64::INFINITY);
            for &y in &ys {
                for &z in &zs {
                    let p = ReceiverPoint::new(x, y, z);
                    if let Ok(v) = f_xyz(placement, room.z0(), &p) {
                        if v < best.1 {
                            best = (p, v);
                        }
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (ReceiverPoint::new(0.0, 0.0, 0.0), f64::INFINITY),
            |a, b| {
                if b.1 < a.1 {
                    b
                } else {
                    a
                }
            },
        );
    Ok(best)
}
