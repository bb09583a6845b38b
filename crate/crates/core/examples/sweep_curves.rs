//! Dimensionless placement and gain curves, written as CSV to stdout.
//!
//! `cargo run --example sweep_curves > sweep.csv`

use wpt_placement::cli::sweep::{reference_rz_series, SweepSpec, SweepTable};

fn main() {
    let spec = SweepSpec {
        ry_max: 1.0,
        ry_steps: 100,
    };
    let table = SweepTable::compute(&spec, &reference_rz_series()).expect("sweep");
    for rz in reference_rz_series() {
        let collapse = table
            .series(rz)
            .find(|r| r.a1_star_over_lx == 0.0)
            .map(|r| r.ry);
        eprintln!("rz={rz:.4}: pair co-locates from ry={collapse:?}");
    }
    table.write_csv(std::io::stdout().lock()).expect("write");
}
