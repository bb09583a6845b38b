//! Quadratic-transform solver for larger symmetric arrays.

use wpt_placement::solver::qt_solve;
use wpt_placement::{Room, SolverConfig};

fn main() {
    let room = Room::new(6.0, 1.0, 2.0, 0.0).expect("room");
    let cfg = SolverConfig::default();
    for n in 2..=6 {
        let r = qt_solve(&room, n, &cfg).expect("qt");
        let pos: Vec<String> = r
            .positions
            .positions()
            .iter()
            .map(|a| format!("{a:+.4}"))
            .collect();
        println!(
            "n_t={n}  objective={:.6}  iterations={:<4} converged={}  [{}]",
            r.objective,
            r.iterations,
            r.converged,
            pos.join(", ")
        );
    }
}
