//! Exact volumes from the recursive facet decomposition and from the
//! closed forms for sparse graphs.

use std::time::Instant;

use cutvol::exactvol::{formula_volume, lasserre_volume, lasserre_volume_with, rmet_volume, LasserreConfig};
use cutvol::graphs::{classify, make_cactus, make_cycle, make_necklace};
use cutvol::polytope::{cut_hrep_sparse, met_hrep, rmet_hrep};

fn main() -> cutvol::Result<()> {
    for n in 3..=5 {
        let t = Instant::now();
        let (v, stats) = lasserre_volume_with(&met_hrep(n)?, &LasserreConfig::default())?;
        println!(
            "vol(Met_{n}) = {v}  ({} subproblems, {} memo hits, {:.2?})",
            stats.subproblems,
            stats.memo_hits,
            t.elapsed()
        );
    }
    for n in 3..=6 {
        println!("vol(RMet_{n}) = {} = {}", lasserre_volume(&rmet_hrep(n)?)?, rmet_volume(n)?);
    }
    for n in 3..=6 {
        let g = make_cycle(n)?;
        println!(
            "vol(Cut(C_{n})) = {} by recursion, {} by formula",
            lasserre_volume(&cut_hrep_sparse(&g)?)?,
            formula_volume(&classify(&g))?
        );
    }

    let cactus = make_cactus(&[8, 7, 4, 4, 4, 4, 3], 3)?;
    println!("cactus: {}", formula_volume(&classify(&cactus))?);
    let neck = make_necklace(8, &[3; 8])?;
    println!("neck_8: {}", formula_volume(&classify(&neck))?);
    Ok(())
}
