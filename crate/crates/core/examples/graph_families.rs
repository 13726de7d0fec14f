//! Build the graph families and recognize them again.

use cutvol::graphs::{classify, make_cactus, make_complete, make_cycle, make_necklace, make_star, suspension};

fn main() -> cutvol::Result<()> {
    let graphs = [
        ("K5", make_complete(5)?),
        ("C6", make_cycle(6)?),
        ("S4", make_star(4)?),
        ("cactus", make_cactus(&[8, 7, 4, 4, 4, 4, 3], 3)?),
        ("neck_8", make_necklace(8, &[3; 8])?),
        ("wheel", suspension(&make_cycle(5)?)),
    ];
    for (name, g) in &graphs {
        println!("{name:>7}  {g}  {:?}", classify(g));
    }
    Ok(())
}
