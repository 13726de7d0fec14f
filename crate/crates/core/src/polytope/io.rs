//! lrs-style `.ine` / `.ext` files.
//!
//! ```text
//! name
//! H-representation
//! begin
//! m d+1 rational
//! b -a_1 ... -a_d
//! end
//! ```
//! An H row means `b - a.x >= 0`. V rows are `1 v_1 ... v_d`.

use std::io::Write;

use num_traits::{One, Zero};

use super::{index_labels, CoordLabel, HPolytope, Row, VPolytope};
use crate::error::{Error, Result};
use crate::rational::{parse_rational_at, BigRational};

pub fn write_ine<W: Write>(h: &HPolytope, name: &str, mut sink: W) -> Result<()> {
    writeln!(sink, "{name}")?;
    writeln!(sink, "H-representation")?;
    writeln!(sink, "begin")?;
    writeln!(sink, "{} {} rational", h.rows().len(), h.dim() + 1)?;
    for r in h.rows() {
        let mut line = r.b.to_string();
        for c in &r.a {
            line.push(' ');
            line.push_str(&(-c).to_string());
        }
        writeln!(sink, "{line}")?;
    }
    writeln!(sink, "end")?;
    Ok(())
}

pub fn write_ext<W: Write>(v: &VPolytope, name: &str, mut sink: W) -> Result<()> {
    writeln!(sink, "{name}")?;
    writeln!(sink, "V-representation")?;
    writeln!(sink, "begin")?;
    writeln!(sink, "{} {} rational", v.vertices().len(), v.dim() + 1)?;
    for p in v.vertices() {
        let mut line = String::from("1");
        for c in p {
            line.push(' ');
            line.push_str(&c.to_string());
        }
        writeln!(sink, "{line}")?;
    }
    writeln!(sink, "end")?;
    Ok(())
}

struct Body {
    rows: Vec<(usize, Vec<BigRational>)>,
    cols: usize,
}

fn parse_body(text: &str, kind: &str) -> Result<Body> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let is_skip = |l: &str| l.is_empty() || l.starts_with('*');

    let mut found = false;
    for (_, l) in lines.by_ref() {
        if l == kind {
            found = true;
            break;
        }
        if l == "H-representation" || l == "V-representation" {
            return Err(Error::parse(0, format!("expected {kind}, found {l}")));
        }
    }
    if !found {
        return Err(Error::parse(0, format!("missing `{kind}` line")));
    }

    let mut next_content = || lines.by_ref().find(|(_, l)| !is_skip(l));
    match next_content() {
        Some((_, "begin")) => {}
        Some((lno, l)) => return Err(Error::parse(lno, format!("expected `begin`, found `{l}`"))),
        None => return Err(Error::parse(0, "missing `begin`")),
    }
    let (hline, header) = next_content().ok_or_else(|| Error::parse(0, "missing size line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || !matches!(toks[2], "rational" | "integer") {
        return Err(Error::parse(hline, "size line must be `m n rational|integer`"));
    }
    let m: usize = toks[0]
        .parse()
        .map_err(|_| Error::parse(hline, "bad row count"))?;
    let cols: usize = toks[1]
        .parse()
        .map_err(|_| Error::parse(hline, "bad column count"))?;
    if cols == 0 {
        return Err(Error::parse(hline, "column count must be positive"));
    }

    let mut rows = Vec::with_capacity(m);
    let mut pending: Vec<BigRational> = Vec::new();
    let mut row_line = 0;
    loop {
        let (lno, l) = next_content().ok_or_else(|| Error::parse(0, "missing `end`"))?;
        if l == "end" {
            if !pending.is_empty() {
                return Err(Error::parse(lno, "incomplete row before `end`"));
            }
            break;
        }
        if pending.is_empty() {
            row_line = lno;
        }
        for tok in l.split_whitespace() {
            pending.push(parse_rational_at(lno, tok)?);
            if pending.len() == cols {
                if rows.len() == m {
                    return Err(Error::parse(lno, format!("more than {m} rows")));
                }
                rows.push((row_line, std::mem::take(&mut pending)));
                row_line = lno;
            }
        }
    }
    if rows.len() != m {
        return Err(Error::parse(hline, format!("declared {m} rows, found {}", rows.len())));
    }
    Ok(Body { rows, cols })
}

/// Reads an H-representation; coordinates are labelled by index.
pub fn read_ine(text: &str) -> Result<HPolytope> {
    let body = parse_body(text, "H-representation")?;
    let dim = body.cols - 1;
    let mut rows = Vec::with_capacity(body.rows.len());
    for (lno, vals) in body.rows {
        let b = vals[0].clone();
        let a: Vec<BigRational> = vals[1..].iter().map(|v| -v).collect();
        let row = Row::from_rational(&a, &b).map_err(|e| Error::parse(lno, e.to_string()))?;
        rows.push(row);
    }
    HPolytope::new(index_labels(dim), rows)
}

/// Reads a V-representation of a polytope (rays are rejected).
pub fn read_ext(text: &str) -> Result<VPolytope> {
    let body = parse_body(text, "V-representation")?;
    let dim = body.cols - 1;
    let mut points = Vec::with_capacity(body.rows.len());
    for (lno, vals) in body.rows {
        if !vals[0].is_one() {
            let what = if vals[0].is_zero() { "rays are not supported" } else { "leading entry must be 1" };
            return Err(Error::parse(lno, what));
        }
        points.push(vals[1..].to_vec());
    }
    VPolytope::new(index_labels(dim), points)
}

/// Relabels a polytope read from a file with known coordinate names.
pub fn relabel_h(h: HPolytope, labels: Vec<CoordLabel>) -> Result<HPolytope> {
    if labels.len() != h.dim() {
        return Err(Error::InvalidArgument("label count mismatch".into()));
    }
    HPolytope::new(labels, h.rows)
}
