//! The volume tables, the log-volume parabola and the crossover point.

use cutvol::report::{build_report, crossover_report, met_log_points, quadratic_fit, ReportKind};

fn main() -> cutvol::Result<()> {
    for kind in [ReportKind::Table1, ReportKind::Table2, ReportKind::Table4] {
        println!("{}", build_report(kind)?.to_text());
    }
    let fit = quadratic_fit(&met_log_points()?)?;
    println!(
        "log vol(Met_n) ~ {:.3} n^2 + {:.3} n + {:.3}  (rms {:.3})",
        fit.a2, fit.a1, fit.a0, fit.residual_rms
    );
    println!("the elliptope is smaller from n = {}", crossover_report()?);
    Ok(())
}
