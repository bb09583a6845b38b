//! Received power over a room grid and where the worst receiver sits.

use wpt_placement::cli::field::FieldMap;
use wpt_placement::closed_form::solve;
use wpt_placement::solver::worst_receiver_scan;
use wpt_placement::{Placement, RadioParams, Room};

fn main() {
    let room = Room::new(4.0, 2.0, 2.5, 0.4).expect("room");
    let radio = RadioParams::new(0.0107, 1e-3, 1.0).expect("radio");
    let optimal = solve(&room, &radio).placement();
    let colocated = Placement::symmetric_pair(&room, 0.0).expect("placement");

    for (name, p) in [("optimal", &optimal), ("co-located", &colocated)] {
        let map = FieldMap::compute(&room, p, &radio, [41, 21, 21]);
        let near = map.near_minimum(1e-3).count();
        println!(
            "{name:<10} {}  ({near} samples within 0.1% of it)",
            map.summary_line()
        );
        let (rx, f) = worst_receiver_scan(&room, p, [81, 21, 21]).expect("scan");
        println!(
            "{:<10} worst receiver ({:+.3}, {:.3}, {:+.3}), P*c*f = {:.4e} W",
            "",
            rx.x,
            rx.y,
            rx.z,
            radio.power_scale() * f
        );
    }
}
