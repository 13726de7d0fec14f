//! Published volume tables bundled as data, the quadratic fit of
//! `log vol(Met_n)`, the crossover against the elliptope, and rendering of
//! tables and plot series.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::elliptope::i_log_volume;
use crate::error::{Error, Result};
use crate::exactvol::{cut5_volume, formula_volume, lasserre_volume, rmet_volume, suspension_volume};
use crate::graphs::{classify, make_cycle, make_path, make_star, SuspensionKind};
use crate::polytope::met_hrep;
use crate::rational::{ln_rational, parse_rational, to_f64, BigRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaperTableId {
    Table1,
    Table3,
    Table4,
}

impl PaperTableId {
    pub fn schema(self) -> &'static [&'static str] {
        match self {
            PaperTableId::Table1 => &[
                "n", "I", "Cut", "Met", "RMet", "I_over_Cut", "Met_over_Cut", "RMet_over_Cut",
            ],
            PaperTableId::Table3 => &[
                "n",
                "Cut",
                "Cut_est",
                "Met",
                "Met_est",
                "Met_over_Cut",
                "Met_est_over_Cut_est",
                "I_est_over_Met_est",
            ],
            PaperTableId::Table4 => &["n", "Min", "Q1", "Median", "Mean", "Q3", "Max", "I", "I_over_Mean"],
        }
    }

    pub fn bundled_text(self) -> &'static str {
        match self {
            PaperTableId::Table1 => include_str!("../data/table1.csv"),
            PaperTableId::Table3 => include_str!("../data/table3.csv"),
            PaperTableId::Table4 => include_str!("../data/table4.csv"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PaperRow {
    pub n: usize,
    /// Cells as printed, one per non-`n` schema column.
    pub values: Vec<String>,
}

/// One published table, kept as the printed strings so exact fractions
/// and printed precision both survive.
#[derive(Clone, Debug, PartialEq)]
pub struct PaperTable {
    pub id: PaperTableId,
    pub columns: Vec<String>,
    pub rows: Vec<PaperRow>,
}

impl PaperTable {
    pub fn bundled(id: PaperTableId) -> Result<Self> {
        Self::parse(id, id.bundled_text())
    }

    pub fn from_path(id: PaperTableId, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MissingData(format!("{}: {e}", path.display())))?;
        Self::parse(id, &text)
    }

    pub fn parse(id: PaperTableId, text: &str) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header: Vec<String> = rd
            .headers()
            .map_err(|e| Error::parse(1, e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if header != id.schema() {
            return Err(Error::parse(1, format!("expected columns {:?}", id.schema())));
        }
        let mut rows: Vec<PaperRow> = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::parse(line, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let n: usize = rec[0]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad n `{}`", &rec[0])))?;
            if rows.last().is_some_and(|r| r.n >= n) {
                return Err(Error::parse(line, "n must be strictly increasing"));
            }
            let values: Vec<String> = rec.iter().skip(1).map(str::to_string).collect();
            if let Some(bad) = values.iter().find(|v| parse_number(v).is_none()) {
                return Err(Error::parse(line, format!("bad number `{bad}`")));
            }
            rows.push(PaperRow { n, values });
        }
        Ok(PaperTable {
            id,
            columns: header.into_iter().skip(1).collect(),
            rows,
        })
    }

    pub fn raw(&self, n: usize, column: &str) -> Option<&str> {
        let c = self.columns.iter().position(|h| h == column)?;
        let row = self.rows.iter().find(|r| r.n == n)?;
        Some(&row.values[c])
    }

    pub fn number(&self, n: usize, column: &str) -> Option<f64> {
        parse_number(self.raw(n, column)?)
    }

    /// The cell as an exact rational, for cells printed as `p/q` or integers.
    pub fn exact(&self, n: usize, column: &str) -> Option<BigRational> {
        parse_rational(self.raw(n, column)?)
    }

    pub fn ns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.n).collect()
    }
}

fn parse_number(s: &str) -> Option<f64> {
    match parse_rational(s) {
        Some(r) => Some(to_f64(&r)),
        None => s.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}

/// Size of one unit in the last printed digit: `0.01` for `"4.12"`,
/// `1e-6` for `"9.50e-04"`, zero for fractions.
pub fn printed_unit(s: &str) -> Option<f64> {
    if s.contains('/') {
        return Some(0.0);
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    mant.parse::<f64>().ok()?;
    let decimals = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    Some(10f64.powi(exp - decimals))
}

/// Whether `value` agrees with a printed cell to within one unit in its
/// last digit, which covers both rounded and truncated printing.
pub fn agrees_with_printed(printed: &str, value: f64) -> bool {
    let (Some(p), Some(unit)) = (parse_number(printed), printed_unit(printed)) else {
        return false;
    };
    if unit == 0.0 {
        return parse_rational(printed).is_some_and(|r| to_f64(&r) == value);
    }
    (value - p).abs() <= unit * (1.0 + 1e-9)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Computed,
    Paper,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Computed => "computed",
            Source::Paper => "paper",
        }
    }

    fn join(self, other: Source) -> Source {
        if self == Source::Paper || other == Source::Paper {
            Source::Paper
        } else {
            Source::Computed
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellValue {
    Exact(BigRational),
    Float(f64),
}

impl CellValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            CellValue::Exact(r) => to_f64(r),
            CellValue::Float(v) => *v,
        }
    }

    fn machine(&self) -> String {
        match self {
            CellValue::Exact(r) => r.to_string(),
            CellValue::Float(v) => format!("{v:e}"),
        }
    }
}

/// A table cell together with where its value came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub value: CellValue,
    pub source: Source,
}

impl Cell {
    pub fn exact(r: BigRational, source: Source) -> Self {
        Cell { value: CellValue::Exact(r), source }
    }

    pub fn float(v: f64, source: Source) -> Self {
        Cell { value: CellValue::Float(v), source }
    }

    /// `self / other` as a decimal; paper-sourced if either side is.
    pub fn ratio(&self, other: &Cell) -> Cell {
        let v = match (&self.value, &other.value) {
            (CellValue::Exact(a), CellValue::Exact(b)) if !b.is_zero() => to_f64(&(a / b)),
            _ => self.value.to_f64() / other.value.to_f64(),
        };
        Cell::float(v, self.source.join(other.source))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: String,
    /// Render with truncated rather than rounded digits in the text table.
    pub truncate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub keys: Vec<String>,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub title: String,
    pub keys: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    fn new(title: &str, keys: &[&str], columns: &[&str]) -> Self {
        Report {
            title: title.to_string(),
            keys: keys.iter().map(|s| s.to_string()).collect(),
            columns: columns
                .iter()
                .map(|s| Column {
                    name: s.to_string(),
                    truncate: false,
                })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn cell(&self, key: &str, column: &str) -> Option<&Cell> {
        let c = self.columns.iter().position(|h| h.name == column)?;
        let row = self.rows.iter().find(|r| r.keys.join(" ") == key)?;
        Some(&row.cells[c])
    }

    /// Long form, one line per cell: key columns, `column`, `value`,
    /// `source`. Floats are written at full precision.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = self.keys.iter().map(String::as_str).collect();
        header.extend(["column", "value", "source"]);
        w.write_record(&header).expect("write to memory");
        for row in &self.rows {
            for (col, cell) in self.columns.iter().zip(&row.cells) {
                let mut rec = row.keys.clone();
                rec.extend([col.name.clone(), cell.value.machine(), cell.source.as_str().into()]);
                w.write_record(&rec).expect("write to memory");
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
    }

    /// Aligned text at three significant digits. Cells taken from the
    /// published table are marked `[p]`.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut head = self.keys.clone();
        head.extend(self.columns.iter().map(|c| c.name.clone()));
        grid.push(head);
        for row in &self.rows {
            let mut line = row.keys.clone();
            for (col, cell) in self.columns.iter().zip(&row.cells) {
                let mut s = match &cell.value {
                    CellValue::Exact(r) => r.to_string(),
                    CellValue::Float(v) => format_sig(*v, 3, col.truncate),
                };
                if cell.source == Source::Paper {
                    s.push_str(" [p]");
                }
                line.push(s);
            }
            grid.push(line);
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = format!("{}\n", self.title);
        for r in &grid {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        if self.rows.iter().flat_map(|r| &r.cells).any(|c| c.source == Source::Paper) {
            out.push_str("[p] taken from the published table\n");
        }
        out
    }
}

/// `digits` significant digits: fixed notation for magnitudes in
/// `[0.01, 1000)`, otherwise `9.50e-04` style.
pub fn format_sig(v: f64, digits: usize, truncate: bool) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let p = digits.max(1) - 1;
    let mut e = v.abs().log10().floor() as i32;
    let scale = 10f64.powi(p as i32 - e);
    let cut = |x: f64| if truncate { (x + 1e-9 * x.signum()).trunc() } else { x.round() };
    let mut m = cut(v * scale) / scale;
    if m.abs() >= 10f64.powi(e + 1) {
        e += 1;
        m = cut(v * scale / 10.0) * 10.0 / scale;
    }
    if (-2..3).contains(&e) {
        let decimals = (p as i32 - e).max(0) as usize;
        format!("{m:.decimals$}")
    } else {
        let mant = m / 10f64.powi(e);
        let sign = if e < 0 { '-' } else { '+' };
        format!("{mant:.p$}e{sign}{:02}", e.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Table1,
    Table2,
    Table3,
    Table4,
    Figure5,
}

impl FromStr for ReportKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(ReportKind::Table1),
            "2" => Ok(ReportKind::Table2),
            "3" => Ok(ReportKind::Table3),
            "4" => Ok(ReportKind::Table4),
            "figure5" => Ok(ReportKind::Figure5),
            _ => Err(Error::InvalidArgument(format!(
                "unknown table `{s}`, expected 1, 2, 3, 4 or figure5"
            ))),
        }
    }
}

pub fn build_report(kind: ReportKind) -> Result<Report> {
    match kind {
        ReportKind::Table1 => table1(),
        ReportKind::Table2 => table2(8),
        ReportKind::Table3 => table3(),
        ReportKind::Table4 => table4(),
        ReportKind::Figure5 => figure5(),
    }
}

fn paper_exact(t: &PaperTable, n: usize, col: &str) -> Result<Cell> {
    t.exact(n, col)
        .map(|r| Cell::exact(r, Source::Paper))
        .ok_or_else(|| Error::MissingData(format!("{col} for n = {n} in {:?}", t.id)))
}

fn paper_float(t: &PaperTable, n: usize, col: &str) -> Result<Cell> {
    t.number(n, col)
        .map(|v| Cell::float(v, Source::Paper))
        .ok_or_else(|| Error::MissingData(format!("{col} for n = {n} in {:?}", t.id)))
}

fn elliptope_cell(n: usize) -> Result<Cell> {
    if n == 2 {
        return Ok(Cell::exact(BigRational::one(), Source::Computed));
    }
    Ok(Cell::float(i_log_volume(n)?.value(), Source::Computed))
}

fn cached(cell: &OnceLock<BigRational>, f: impl FnOnce() -> Result<BigRational>) -> Result<BigRational> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v).clone())
}

/// Exact `vol(Met_n)` where the recursion is cheap (`n <= 5`), else the
/// published fraction.
fn met_cell(n: usize, t1: &PaperTable) -> Result<Cell> {
    static MET5: OnceLock<BigRational> = OnceLock::new();
    if n == 5 {
        Ok(Cell::exact(cached(&MET5, || lasserre_volume(&met_hrep(5)?))?, Source::Computed))
    } else if n < 5 {
        Ok(Cell::exact(lasserre_volume(&met_hrep(n)?)?, Source::Computed))
    } else {
        paper_exact(t1, n, "Met")
    }
}

fn cut_cell(n: usize, met: &Cell, t1: &PaperTable) -> Result<Cell> {
    static CUT5: OnceLock<BigRational> = OnceLock::new();
    match n {
        0..=4 => Ok(met.clone()),
        5 => Ok(Cell::exact(cached(&CUT5, cut5_volume)?, Source::Computed)),
        _ => paper_exact(t1, n, "Cut"),
    }
}

/// Volumes and ratios for `n = 2..7`.
pub fn table1() -> Result<Report> {
    let t1 = PaperTable::bundled(PaperTableId::Table1)?;
    let mut rep = Report::new(
        "Volumes and ratios for small n",
        &["n"],
        &["I", "Cut", "Met", "RMet", "I_over_Cut", "Met_over_Cut", "RMet_over_Cut"],
    );
    for n in 2..=7 {
        let i = elliptope_cell(n)?;
        let met = met_cell(n, &t1)?;
        let cut = cut_cell(n, &met, &t1)?;
        let rmet = Cell::exact(rmet_volume(n)?, Source::Computed);
        let cells = vec![
            i.ratio(&cut),
            met.ratio(&cut),
            rmet.ratio(&cut),
        ];
        let mut row = vec![i, cut, met, rmet];
        row.extend(cells);
        rep.rows.push(ReportRow {
            keys: vec![n.to_string()],
            cells: row,
        });
    }
    Ok(rep)
}

/// `vol(Cut(G))` and `vol(Cut(suspension of G))` for stars, paths and
/// cycles on `n` vertices.
pub fn table2(max_n: usize) -> Result<Report> {
    let mut rep = Report::new("Volumes of sparse cut polytopes", &["G", "n"], &["Cut_G", "Cut_suspension"]);
    for kind in [SuspensionKind::Star, SuspensionKind::Path, SuspensionKind::Cycle] {
        let (name, lo) = match kind {
            SuspensionKind::Star => ("S", 2),
            SuspensionKind::Path => ("P", 2),
            SuspensionKind::Cycle => ("C", 3),
        };
        for n in lo..=max_n {
            let g = match kind {
                SuspensionKind::Star => make_star(n)?,
                SuspensionKind::Path => make_path(n)?,
                SuspensionKind::Cycle => make_cycle(n)?,
            };
            rep.rows.push(ReportRow {
                keys: vec![format!("{name}{n}"), n.to_string()],
                cells: vec![
                    Cell::exact(formula_volume(&classify(&g))?, Source::Computed),
                    Cell::exact(suspension_volume(kind, n)?, Source::Computed),
                ],
            });
        }
    }
    Ok(rep)
}

/// Exact volumes against the published estimates for `n = 3..7`.
pub fn table3() -> Result<Report> {
    let t1 = PaperTable::bundled(PaperTableId::Table1)?;
    let t3 = PaperTable::bundled(PaperTableId::Table3)?;
    let mut rep = Report::new(
        "Exact volumes vs estimates for small n",
        &["n"],
        &[
            "Cut",
            "Cut_est",
            "Met",
            "Met_est",
            "Met_over_Cut",
            "Met_est_over_Cut_est",
            "I_over_Met",
        ],
    );
    for n in 3..=7 {
        let met = met_cell(n, &t1)?;
        let cut = cut_cell(n, &met, &t1)?;
        let cut_est = paper_float(&t3, n, "Cut_est")?;
        let met_est = paper_float(&t3, n, "Met_est")?;
        let i = elliptope_cell(n)?;
        let cells = vec![
            cut.clone(),
            cut_est.clone(),
            met.clone(),
            met_est.clone(),
            met.ratio(&cut),
            met_est.ratio(&cut_est),
            i.ratio(&met),
        ];
        rep.rows.push(ReportRow {
            keys: vec![n.to_string()],
            cells,
        });
    }
    Ok(rep)
}

/// Published run statistics for `n = 8..25` next to the elliptope volume.
pub fn table4() -> Result<Report> {
    let t4 = PaperTable::bundled(PaperTableId::Table4)?;
    let stats = ["Min", "Q1", "Median", "Mean", "Q3", "Max"];
    let mut cols = stats.to_vec();
    cols.extend(["I", "I_over_Mean"]);
    let mut rep = Report::new("Estimates for vol(Met_n) vs exact vol(I_n)", &["n"], &cols);
    if let Some(c) = rep.columns.iter_mut().find(|c| c.name == "I") {
        c.truncate = true;
    }
    for n in t4.ns() {
        let mut cells = stats
            .iter()
            .map(|c| paper_float(&t4, n, c))
            .collect::<Result<Vec<_>>>()?;
        let i = elliptope_cell(n)?;
        let ratio = i.ratio(&cells[3]);
        cells.extend([i, ratio]);
        rep.rows.push(ReportRow {
            keys: vec![n.to_string()],
            cells,
        });
    }
    Ok(rep)
}

/// Natural-log volume series for `RMet_n`, `Met_n` and `I_n`, `n = 3..25`.
/// `Met_n` is exact up to 7 and the published mean estimate beyond.
pub fn figure5() -> Result<Report> {
    let t1 = PaperTable::bundled(PaperTableId::Table1)?;
    let t4 = PaperTable::bundled(PaperTableId::Table4)?;
    let mut rep = Report::new("Log volumes of RMet_n, Met_n and I_n", &["n"], &["RMet", "Met", "I"]);
    for n in 3..=25 {
        let rmet = Cell::float(ln_rational(&rmet_volume(n)?), Source::Computed);
        let met = if n <= 7 {
            let c = met_cell(n, &t1)?;
            let CellValue::Exact(r) = &c.value else { unreachable!("exact Met") };
            Cell::float(ln_rational(r), c.source)
        } else {
            let c = paper_float(&t4, n, "Mean")?;
            Cell::float(c.value.to_f64().ln(), Source::Paper)
        };
        let i = Cell::float(i_log_volume(n)?.log_value, Source::Computed);
        rep.rows.push(ReportRow {
            keys: vec![n.to_string()],
            cells: vec![rmet, met, i],
        });
    }
    Ok(rep)
}

/// Least-squares parabola `y = a2 n^2 + a1 n + a0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticFit {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub residual_rms: f64,
}

impl QuadraticFit {
    pub fn eval(&self, n: f64) -> f64 {
        (self.a2 * n + self.a1) * n + self.a0
    }
}

/// Solves the 3x3 normal equations with partial pivoting.
pub fn quadratic_fit(points: &[(f64, f64)]) -> Result<QuadraticFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 distinct n, got {}",
            xs.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidArgument("non-finite fit point".into()));
    }
    let mut s = [0.0f64; 5];
    let mut t = [0.0f64; 3];
    for &(x, y) in points {
        let mut p = 1.0;
        for (k, sk) in s.iter_mut().enumerate() {
            *sk += p;
            if k < 3 {
                t[k] += p * y;
            }
            p *= x;
        }
    }
    // unknowns ordered (a0, a1, a2)
    let mut m = [[s[0], s[1], s[2], t[0]], [s[1], s[2], s[3], t[1]], [s[2], s[3], s[4], t[2]]];
    let scale = s[4].abs().max(1.0);
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty");
        if m[piv][col].abs() <= 1e-12 * scale {
            return Err(Error::DegenerateFit("normal equations are singular".into()));
        }
        m.swap(col, piv);
        for r in col + 1..3 {
            let f = m[r][col] / m[col][col];
            for c in col..4 {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut a = [0.0f64; 3];
    for r in (0..3).rev() {
        let tail: f64 = (r + 1..3).map(|c| m[r][c] * a[c]).sum();
        a[r] = (m[r][3] - tail) / m[r][r];
    }
    let mut fit = QuadraticFit {
        a2: a[2],
        a1: a[1],
        a0: a[0],
        residual_rms: 0.0,
    };
    let ss: f64 = points.iter().map(|&(x, y)| (y - fit.eval(x)).powi(2)).sum();
    fit.residual_rms = (ss / points.len() as f64).sqrt();
    Ok(fit)
}

/// `(n, log vol(Met_n))`: exact for `n = 3..7`, the published mean estimate
/// for `n = 8..25`.
pub fn met_log_points() -> Result<Vec<(f64, f64)>> {
    let t1 = PaperTable::bundled(PaperTableId::Table1)?;
    let t4 = PaperTable::bundled(PaperTableId::Table4)?;
    let mut pts = Vec::new();
    for n in 3..=7 {
        let r = t1
            .exact(n, "Met")
            .ok_or_else(|| Error::MissingData(format!("Met_{n} in table 1")))?;
        pts.push((n as f64, ln_rational(&r)));
    }
    for n in t4.ns() {
        let m = t4
            .number(n, "Mean")
            .ok_or_else(|| Error::MissingData(format!("mean for n = {n} in table 4")))?;
        pts.push((n as f64, m.ln()));
    }
    Ok(pts)
}

/// `vol(I_n) / mean(Met_n estimate)` for every row of a Table-4 shaped table.
pub fn crossover_ratios(t4: &PaperTable) -> Result<Vec<(usize, f64)>> {
    if t4.rows.is_empty() {
        return Err(Error::MissingData("table 4 has no rows".into()));
    }
    t4.ns()
        .into_iter()
        .map(|n| {
            let mean = t4
                .number(n, "Mean")
                .ok_or_else(|| Error::MissingData(format!("mean for n = {n}")))?;
            Ok((n, (i_log_volume(n)?.log_value - mean.ln()).exp()))
        })
        .collect()
}

pub fn crossover_from(t4: &PaperTable) -> Result<usize> {
    crossover_ratios(t4)?
        .into_iter()
        .find(|&(_, r)| r < 1.0)
        .map(|(n, _)| n)
        .ok_or_else(|| Error::MissingData("the ratio never drops below 1".into()))
}

/// Smallest `n` in the bundled estimates where the elliptope is smaller
/// than the metric polytope.
pub fn crossover_report() -> Result<usize> {
    crossover_from(&PaperTable::bundled(PaperTableId::Table4)?)
}

/// Text summary used by the CLI `crossover` command.
pub fn crossover_text() -> Result<String> {
    let t4 = PaperTable::bundled(PaperTableId::Table4)?;
    let mut out = String::new();
    for (n, r) in crossover_ratios(&t4)? {
        writeln!(out, "{n:>3}  {}", format_sig(r, 3, false)).expect("write to string");
    }
    writeln!(out, "crossover n = {}", crossover_from(&t4)?).expect("write to string");
    Ok(out)
}
