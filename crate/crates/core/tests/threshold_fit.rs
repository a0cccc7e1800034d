//! Threshold-location integration: a real coverage sweep at n = 200 fits a
//! logistic crossing within the expected desk-scale band around the
//! analytic threshold.

use gonspan::experiments::{fit_threshold, run_sweep, SweepMode, SweepSpec, DEFAULT_GRID};

#[test]
fn fitted_crossing_lands_near_the_analytic_threshold() {
    let spec = SweepSpec {
        n: 200,
        kappa: 3,
        grid: DEFAULT_GRID.to_vec(),
        trials: 100,
        master_seed: 0xF17,
        mode: SweepMode::Heuristic,
    };
    let res = run_sweep(&spec).unwrap();
    let pts: Vec<(f64, f64)> = res.points.iter().map(|pt| (pt.multiple, pt.pr_q)).collect();
    // Monotone-increasing empirical curve (up to noise at the extremes).
    assert!(pts.first().unwrap().1 < 0.1);
    assert!(pts.last().unwrap().1 > 0.9);
    let (crossing, slope) = fit_threshold(&pts).unwrap();
    assert!(
        (0.75..=1.35).contains(&crossing),
        "fitted crossing {crossing} outside the finite-size band"
    );
    assert!(slope > 0.0);
}
