//! H- and V-representations in the cdd/lrs text formats.

use cutvol::graphs::{make_complete, make_cycle};
use cutvol::polytope::{cut_hrep_sparse, cut_vertices, met_hrep, read_ine, rmet_hrep, write_ext, write_ine};

fn main() -> cutvol::Result<()> {
    for n in 3..=6 {
        let met = met_hrep(n)?;
        let rmet = rmet_hrep(n)?;
        println!(
            "n = {n}: Met_n has {} facets, RMet_n has {} (dimension {})",
            met.rows().len(),
            rmet.rows().len(),
            met.dim()
        );
    }

    let mut ine = Vec::new();
    write_ine(&met_hrep(4)?, "met_4", &mut ine)?;
    let text = String::from_utf8(ine).expect("ascii");
    assert_eq!(read_ine(&text)?.rows(), met_hrep(4)?.rows());
    println!("\n{text}");

    let c5 = make_cycle(5)?;
    println!("Cut(C5): {} inequalities", cut_hrep_sparse(&c5)?.rows().len());
    let mut ext = Vec::new();
    write_ext(&cut_vertices(&make_complete(4)?)?, "cut_4", &mut ext)?;
    print!("{}", String::from_utf8(ext).expect("ascii"));
    Ok(())
}
