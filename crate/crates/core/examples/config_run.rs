//! Driving the CLI layer from a TOML config with overrides.

use std::path::Path;

use wpt_placement::cli::{run_solve, RunConfig};

const CONFIG: &str = r#"
lx = 5.0
ly = 2.0
lz = 2.8
z0 = 0.3
power = 2.0
ref_gain = 1e-3
wavelength = 0.0107
"#;

fn main() {
    let file = RunConfig::from_toml_str(CONFIG, Path::new("inline.toml")).expect("config");
    println!("{}", wpt_placement::cli::SOLVE_HEADER.join(","));
    for nt in [1, 2, 4] {
        let cfg = file.clone().merge(RunConfig {
            nt: Some(nt),
            ..RunConfig::default()
        });
        let out = run_solve(&cfg, false).expect("solve");
        let mut csv = Vec::new();
        out.write_csv(&mut csv).expect("csv");
        // drop the header row of each single-row table
        let text = String::from_utf8(csv).expect("utf8");
        print!(
            "{}",
            text.split_once('\n')
                .map(|(_, row)| row)
                .unwrap_or_default()
        );
    }
}
