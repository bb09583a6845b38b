//! Brute-force max-min search next to the closed form.

use wpt_placement::closed_form::{optimal_a1, worst_case_objective};
use wpt_placement::solver::oracle_grid_solve;
use wpt_placement::{Room, SolverConfig};

fn main() {
    let cfg = SolverConfig::default();
    for ly in [0.2, 0.8, 1.2, 1.6, 2.0] {
        let room = Room::new(2.0, ly, 0.5, 0.0).expect("room");
        let oracle = oracle_grid_solve(&room, 2, &cfg).expect("oracle");
        println!(
            "rho={:.3}  a1 closed={:.6} oracle={:.6}  objective closed={:.9} oracle={:.9}",
            room.signature().rho,
            optimal_a1(&room),
            oracle.a1(),
            worst_case_objective(&room),
            oracle.objective
        );
    }
}
