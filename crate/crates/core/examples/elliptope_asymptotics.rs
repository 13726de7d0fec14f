//! Elliptope volumes from Joe's recursion against the large-n expansions
//! and the rooted metric polytope.

use cutvol::elliptope::{
    asymptotic_log_volume, corrected_asymptotic_log_volume, i_log_volume, joe_log_volume, ratio_log_i_over_rmet,
};

fn main() -> cutvol::Result<()> {
    for n in 3..=7 {
        println!("vol(I_{n}) = {}", i_log_volume(n)?.format_sci(3));
    }
    println!();
    println!("{:>5} {:>14} {:>14} {:>14}", "n", "log V_n", "printed - it", "corrected - it");
    for n in [20, 50, 100, 200, 400, 500] {
        let exact = joe_log_volume(n)?.log_value;
        println!(
            "{n:>5} {exact:>14.4} {:>14.4} {:>14.4}",
            asymptotic_log_volume(n)?.log_value - exact,
            corrected_asymptotic_log_volume(n)?.log_value - exact
        );
    }
    println!();
    for n in [3, 5, 6, 10, 50, 200] {
        println!("log vol(I_{n})/vol(RMet_{n}) = {:.4}", ratio_log_i_over_rmet(n)?);
    }
    Ok(())
}
