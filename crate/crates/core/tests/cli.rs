use std::process::{Command, Output};

fn cutvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutvol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn success_prints_to_stdout_only() {
    let o = cutvol(&["volume", "--method", "exact", "--body", "rmet", "--graph", "K4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/15");
    assert!(o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2_with_diagnostics_on_stderr() {
    for args in [
        vec!["volume"],
        vec!["construct", "--body", "cut", "--graph", "K5", "--format", "ine"],
        vec!["construct", "--body", "met", "--graph", "C5"],
        vec!["report", "--table", "5"],
        vec!["estimate", "--body", "met", "--n", "4", "--runs", "0"],
    ] {
        let o = cutvol(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_3() {
    let o = cutvol(&["estimate", "--body", "elliptope", "--n", "7", "--samples", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size limit"));
}

#[test]
fn construct_and_report_write_files() {
    let dir = std::env::temp_dir().join(format!("cutvol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ine = dir.join("met4.ine");
    let o = cutvol(&["construct", "--body", "met", "--graph", "K4", "--out", ine.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h = cutvol::polytope::read_ine(&std::fs::read_to_string(&ine).unwrap()).unwrap();
    assert_eq!(h.rows().len(), 16);

    let base = dir.join("table4");
    let o = cutvol(&["report", "--table", "4", "--out", base.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    let txt = std::fs::read_to_string(base.with_extension("txt")).unwrap();
    assert!(csv.starts_with("n,column,value,source\n"));
    assert!(txt.contains("9.08e-150"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seeded_estimates_are_reproducible() {
    let args = ["estimate", "--body", "met", "--graph", "K4", "--runs", "3", "--seed", "42", "--format", "csv"];
    let (a, b) = (cutvol(&args), cutvol(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("runs,min,q1,median,mean,q3,max\n3,"));
}
