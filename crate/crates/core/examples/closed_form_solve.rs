//! Optimal two-antenna placement for a few rooms.
//!
//! `cargo run --example closed_form_solve`

use wpt_placement::closed_form::{colocated_power, solve};
use wpt_placement::{RadioParams, Room};

fn main() {
    let radio = RadioParams::new(0.0107, 1e-3, 1.0).expect("radio");
    let rooms = [
        ("corridor", Room::new(8.0, 1.0, 2.5, 0.0)),
        ("office", Room::new(4.0, 3.0, 2.5, 0.5)),
        ("square hall", Room::new(3.0, 3.0, 3.0, 0.0)),
    ];
    println!(
        "{:<12} {:>6} {:>14} {:>9} {:>12} {:>12} {:>6}",
        "room", "rho", "regime", "a1*", "gamma* W", "colocated W", "eta"
    );
    for (name, room) in rooms {
        let room = room.expect("room");
        let r = solve(&room, &radio);
        println!(
            "{:<12} {:>6.3} {:>14} {:>9.4} {:>12.4e} {:>12.4e} {:>6.3}",
            name,
            r.geometry.rho,
            r.regime.as_str(),
            r.a1_star,
            r.gamma_star,
            colocated_power(&room, &radio),
            r.eta
        );
    }
}
