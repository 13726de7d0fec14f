//! Cut polytopes of suspended stars, paths and cycles, and the André
//! numbers behind them.

use cutvol::exactvol::{andre_numbers, lasserre_volume, suspension_volume};
use cutvol::graphs::SuspensionKind;
use cutvol::polytope::cut_hrep_suspension;

fn main() -> cutvol::Result<()> {
    let a = andre_numbers(15);
    let shown: Vec<String> = (0..=15).map(|k| a.get(k).to_string()).collect();
    println!("A_0..A_15: {}", shown.join(" "));

    for kind in [SuspensionKind::Star, SuspensionKind::Path, SuspensionKind::Cycle] {
        let lo = if kind == SuspensionKind::Cycle { 3 } else { 2 };
        for n in lo..=8 {
            let formula = suspension_volume(kind, n)?;
            // the recursion is quick up to dimension 8
            let check = if 2 * n <= 8 {
                format!("  recursion {}", lasserre_volume(&cut_hrep_suspension(kind, n)?)?)
            } else {
                String::new()
            };
            println!("{kind:?} n = {n}: {formula}{check}");
        }
    }
    Ok(())
}
