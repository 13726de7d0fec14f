use sha2::{Digest, Sha256};

use cutvol::report::{
    agrees_with_printed, build_report, figure5, table1, table3, table4, CellValue, PaperTable, PaperTableId, Report,
    ReportKind, Source,
};
use cutvol::rational::rat;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn bundled_data_is_pinned() {
    let pins = [
        (PaperTableId::Table1, "fa31887f880d26552c47816105f97cbb9bff0a9b471cebdef96617fab24bc750"),
        (PaperTableId::Table3, "396e63d9ae3b25c832ebec7feef685789599b03b4d08f4e3331730923e207819"),
        (PaperTableId::Table4, "99f7ae432db1c8fac226387fb35734ceed1086b2f7ef8017334040a41081c1ca"),
    ];
    for (id, want) in pins {
        assert_eq!(hex(&Sha256::digest(id.bundled_text().as_bytes())), want, "{id:?}");
    }
}

/// Every computed cell with a published counterpart agrees with it to one
/// unit in the last printed digit.
fn check_against(rep: &Report, paper: &PaperTable, pairs: &[(&str, &str)]) -> usize {
    let mut checked = 0;
    for row in &rep.rows {
        let n: usize = row.keys[0].parse().unwrap();
        for (ours, theirs) in pairs {
            let c = rep.columns.iter().position(|c| c.name == *ours).unwrap();
            let cell = &row.cells[c];
            let Some(printed) = paper.raw(n, theirs) else { continue };
            if cell.source != Source::Computed {
                continue;
            }
            assert!(
                agrees_with_printed(printed, cell.value.to_f64()),
                "n = {n} {ours}: computed {:?} vs printed {printed}",
                cell.value
            );
            checked += 1;
        }
    }
    checked
}

#[test]
fn computed_cells_agree_with_published_tables() {
    let t1 = PaperTable::bundled(PaperTableId::Table1).unwrap();
    let same: Vec<(&str, &str)> = t1.columns.iter().map(|c| (c.as_str(), c.as_str())).collect();
    assert!(check_against(&table1().unwrap(), &t1, &same) >= 30);

    let t3 = PaperTable::bundled(PaperTableId::Table3).unwrap();
    let pairs = [("Cut", "Cut"), ("Met", "Met"), ("Met_over_Cut", "Met_over_Cut"), ("I_over_Met", "I_est_over_Met_est")];
    assert!(check_against(&table3().unwrap(), &t3, &pairs) >= 12);

    let t4 = PaperTable::bundled(PaperTableId::Table4).unwrap();
    assert_eq!(check_against(&table4().unwrap(), &t4, &[("I", "I")]), 18);
}

#[test]
fn table1_small_rows() {
    let t = table1().unwrap();
    let exact = |col: &str| t.cell("4", col).unwrap().value.clone();
    assert_eq!(exact("Cut"), CellValue::Exact(rat(2, 45)));
    assert_eq!(exact("Met"), CellValue::Exact(rat(2, 45)));
    assert_eq!(exact("RMet"), CellValue::Exact(rat(1, 15)));
    assert_eq!(t.cell("5", "Cut").unwrap().value, CellValue::Exact(rat(32, 14175)));
    assert_eq!(t.cell("5", "Cut").unwrap().source, Source::Computed);
    assert_eq!(t.cell("6", "Met").unwrap().source, Source::Paper);
    let text = t.to_text();
    let row4 = text.lines().find(|l| l.trim_start().starts_with("4 ")).unwrap();
    assert!(row4.contains("0.183") && row4.contains("2/45") && row4.contains("1/15"), "{row4}");
}

#[test]
fn table3_elliptope_ratio() {
    let v = table3().unwrap().cell("6", "I_over_Met").unwrap().value.to_f64();
    assert!((v - 19.5).abs() < 0.05, "{v}");
}

#[test]
fn figure5_has_three_series_over_3_to_25() {
    let f = figure5().unwrap();
    let names: Vec<&str> = f.columns.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["RMet", "Met", "I"]);
    let ns: Vec<String> = f.rows.iter().map(|r| r.keys[0].clone()).collect();
    assert_eq!(ns, (3..=25).map(|n| n.to_string()).collect::<Vec<_>>());
    // Met_3 = RMet_3 = 1/3
    let r3 = &f.rows[0].cells;
    assert!((r3[0].value.to_f64() - r3[1].value.to_f64()).abs() < 1e-15);
    assert!((r3[0].value.to_f64() + 3f64.ln()).abs() < 1e-15);
}

#[test]
fn reports_are_byte_stable_and_tagged() {
    for kind in [ReportKind::Table1, ReportKind::Table2, ReportKind::Table3, ReportKind::Table4, ReportKind::Figure5] {
        let (a, b) = (build_report(kind).unwrap(), build_report(kind).unwrap());
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_text(), b.to_text());
        for line in a.to_csv().lines().skip(1) {
            let src = line.rsplit(',').next().unwrap();
            assert!(src == "computed" || src == "paper", "{line}");
        }
    }
}
