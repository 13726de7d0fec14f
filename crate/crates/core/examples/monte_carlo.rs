//! Sequence-of-balls estimates against exact values.

use cutvol::estimate::{elliptope_rejection, sob_volume, vpolytope_estimate, EstimateStats, WalkConfig};
use cutvol::graphs::make_complete;
use cutvol::polytope::{cut_vertices, met_hrep};

fn show(label: &str, s: &EstimateStats, exact: f64) {
    println!(
        "{label:>10}: mean {:.4e}  median {:.4e}  [{:.3e}, {:.3e}]  exact {exact:.4e}  ({:+.1}%)",
        s.mean,
        s.median,
        s.min,
        s.max,
        100.0 * (s.mean / exact - 1.0)
    );
}

fn main() -> cutvol::Result<()> {
    for (n, exact) in [(3, 1.0 / 3.0), (4, 2.0 / 45.0), (5, 4.0 / 1701.0)] {
        let h = met_hrep(n)?;
        let mut cfg = WalkConfig::for_dim(h.dim());
        cfg.runs = 10;
        show(&format!("Met_{n}"), &sob_volume(&h, &cfg)?, exact);
    }

    let v = cut_vertices(&make_complete(4)?)?;
    let mut cfg = WalkConfig::for_dim(v.dim());
    cfg.runs = 4;
    show("Cut_4 (V)", &vpolytope_estimate(&v, &cfg)?, 2.0 / 45.0);

    let pi2_16 = std::f64::consts::PI.powi(2) / 16.0;
    show("I_3", &elliptope_rejection(3, 1_000_000, 7)?, pi2_16);
    Ok(())
}
