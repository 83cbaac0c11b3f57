//! Table emitters (csv, json, markdown, b-file) and the csv re-parser the
//! round-trip tests rely on.

use anyhow::{bail, Context, Result};
use gsn_core::{NumberTable, Rational, Route, Scalar, TableKind};

/// CSV with the fixed schema `p,k,value`, one line per entry, row-major.
pub fn table_to_csv(table: &NumberTable) -> String {
    let mut out = String::from("p,k,value\n");
    for (p, row) in table.rows.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            out.push_str(&format!("{p},{k},{v}\n"));
        }
    }
    out
}

/// Parse a `p,k,value` csv back into rows of scalars (values must parse as
/// exact rationals). Inverse of [`table_to_csv`] for numeric tables.
pub fn table_from_csv(text: &str) -> Result<Vec<Vec<Scalar>>> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut lines = text.lines();
    match lines.next() {
        Some("p,k,value") => {}
        other => bail!("missing csv header, got {other:?}"),
    }
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(3, ',');
        let p: usize = parts
            .next()
            .context("missing p")?
            .parse()
            .context("bad p")?;
        let k: usize = parts
            .next()
            .context("missing k")?
            .parse()
            .context("bad k")?;
        let value: Rational = parts
            .next()
            .context("missing value")?
            .parse()
            .map_err(|e| anyhow::anyhow!("bad value: {e}"))?;
        if p >= rows.len() {
            rows.resize_with(p + 1, Vec::new);
        }
        if k != rows[p].len() {
            bail!("non-contiguous k index {k} in row {p}");
        }
        rows[p].push(Scalar::Rat(value));
    }
    Ok(rows)
}

fn kind_name(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Stirling2 => "stirling2",
        TableKind::Stirling1Unsigned => "stirling1-unsigned",
        TableKind::Eulerian => "eulerian",
        TableKind::Gen => "gen",
        TableKind::Gsn => "gsn",
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Recurrence => "recurrence",
        Route::Explicit => "explicit",
        Route::Conversion => "conversion",
    }
}

/// JSON object `{kind, route, rows}` with entry values as exact strings.
pub fn table_to_json(table: &NumberTable) -> String {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    serde_json::json!({
        "kind": kind_name(table.kind),
        "route": route_name(table.route),
        "rows": rows,
    })
    .to_string()
}

/// Markdown table in the triangle layout: one line per `p`, columns by `k`.
pub fn table_to_markdown(table: &NumberTable) -> String {
    let width = table.rows.iter().map(|r| r.len()).max().unwrap_or(1);
    let mut out = String::new();
    out.push_str("| p\\k |");
    for k in 0..width {
        out.push_str(&format!(" {k} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in 0..width {
        out.push_str("---|");
    }
    out.push('\n');
    for (p, row) in table.rows.iter().enumerate() {
        out.push_str(&format!("| {p} |"));
        for k in 0..width {
            match row.get(k) {
                Some(v) => out.push_str(&format!(" {v} |")),
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}

/// How to flatten a triangle into a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearization {
    /// Row-major over all stored entries.
    Rows,
    /// Fixed column `k` over increasing `p`.
    Column { k: usize },
    /// `k = degree(p) - offset` over increasing `p` (offset 0 walks the
    /// last entry of each row).
    Diagonal { offset: usize },
}

/// OEIS-style b-file lines `index value`, 1-based, `count` entries.
/// Values must be integers.
pub fn table_to_bfile(
    table: &NumberTable,
    linearization: Linearization,
    count: usize,
) -> Result<String> {
    let mut values: Vec<(usize, usize, Scalar)> = Vec::new();
    match linearization {
        Linearization::Rows => {
            'outer: for (p, row) in table.rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if values.len() >= count {
                        break 'outer;
                    }
                    values.push((p, k, v.clone()));
                }
            }
        }
        Linearization::Column { k } => {
            for p in 0..table.rows.len().min(count) {
                values.push((p, k, table.get(p, k as i64)));
            }
        }
        Linearization::Diagonal { offset } => {
            for (p, row) in table.rows.iter().take(count).enumerate() {
                let k = row.len().saturating_sub(1 + offset);
                values.push((p, k, table.get(p, k as i64)));
            }
        }
    }
    let mut out = String::new();
    for (index, (p, k, v)) in values.iter().enumerate() {
        let r = match v {
            Scalar::Rat(r) => r.clone(),
            Scalar::Poly(_) => bail!("symbolic value at (p={p}, k={k}); b-files hold integers"),
        };
        let Some(int) = r.to_bigint() else {
            bail!("non-integer value {r} at (p={p}, k={k}); b-files hold integer sequences");
        };
        out.push_str(&format!("{} {}\n", index + 1, int));
    }
    Ok(out)
}
