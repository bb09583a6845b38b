use wpt_placement::solver::{oracle_grid_solve, qt_solve};
use wpt_placement::{Room, SolverConfig};

/// Brute-force max-min over the outer offset of `(u, 0, -u)`.
fn scan_three(room: &Room) -> (f64, f64) {
    let h = room.half_width();
    let k = room.ly().powi(2) + room.effective_height().powi(2) / 4.0;
    let xs: Vec<f64> = (0..=2000)
        .map(|i| -h + room.lx() * i as f64 / 2000.0)
        .collect();
    let worst = |u: f64| {
        xs.iter()
            .map(|&x| {
                [u, 0.0, -u]
                    .iter()
                    .map(|a| 1.0 / ((x - a).powi(2) + k))
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    };
    (0..=20_000)
        .map(|i| h * i as f64 / 20_000.0)
        .map(|u| (u, worst(u)))
        .fold(
            (0.0, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 { b } else { a },
        )
}

#[test]
fn three_antennas_match_a_brute_force_scan() {
    let cfg = SolverConfig::default();
    for (ly, lz) in [(0.2, 0.0), (0.5, 0.3), (0.9, 0.0)] {
        let room = Room::new(2.0, ly, lz, 0.0).unwrap();
        let (u_ref, v_ref) = scan_three(&room);
        let qt = qt_solve(&room, 3, &cfg).unwrap();
        let p = qt.positions.positions();
        assert_eq!(p[1], 0.0);
        assert_eq!(p[0], -p[2]);
        assert!(
            (p[0] - u_ref).abs() < 1e-3 * room.lx(),
            "ly={ly}: qt {} scan {u_ref}",
            p[0]
        );
        assert!(qt.objective >= v_ref * (1.0 - 1e-6));
        assert!(qt.objective >= oracle_grid_solve(&room, 2, &cfg).unwrap().objective);
    }
}

#[test]
fn more_antennas_never_hurt() {
    let cfg = SolverConfig::default();
    let room = Room::new(4.0, 0.5, 1.0, 0.2).unwrap();
    let mut last = 0.0;
    for n in 2..=6 {
        let qt = qt_solve(&room, n, &cfg).unwrap();
        assert!(qt.converged);
        assert!(qt.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!(qt.objective >= last, "n={n}");
        last = qt.objective;
    }
}
