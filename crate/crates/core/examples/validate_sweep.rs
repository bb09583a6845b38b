//! Three-way check of closed form, grid oracle and QT over many rooms.

use wpt_placement::cli::validate::{default_rooms, validate, ClosedFormModel};
use wpt_placement::SolverConfig;

fn main() {
    let report = validate(
        &default_rooms(),
        &SolverConfig::default(),
        ClosedFormModel::default(),
    )
    .expect("validate");
    println!("{}", report.summary());
    let worst = report
        .cases
        .iter()
        .max_by(|a, b| a.qt_da1_over_lx.total_cmp(&b.qt_da1_over_lx))
        .expect("cases");
    println!(
        "largest QT deviation at rho={:.4}: {:.2e} L_x",
        worst.rho, worst.qt_da1_over_lx
    );
}
