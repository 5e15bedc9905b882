//! CSV reports. Every writer is byte-deterministic: UTF-8, LF line endings, no
//! trailing whitespace, rows in ascending AS order unless stated otherwise.

use std::fmt::Write as _;

use pathdiv_core::report::{AdpMatrix, Average, DiversityStats, Histogram};
use pathdiv_core::{AsNumber, Digraph};

use crate::FormatError;

/// Two decimals, rounded half up: 71/44 renders as `1.61`.
pub fn format_avg(avg: Average) -> String {
    let h = avg.hundredths_half_up();
    format!("{}.{:02}", h / 100, h % 100)
}

/// `as,avg,min,max`, one row per entry in the given order.
pub fn write_stats_csv(rows: &[DiversityStats]) -> String {
    let mut out = String::from("as,avg,min,max\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.origin, format_avg(r.avg), r.min, r.max).unwrap();
    }
    out
}

fn write_grid(labels: &[AsNumber], cell: impl Fn(AsNumber, AsNumber) -> String) -> String {
    let mut out = String::new();
    for v in labels {
        write!(out, ",{v}").unwrap();
    }
    out.push('\n');
    for &row in labels {
        write!(out, "{row}").unwrap();
        for &col in labels {
            out.push(',');
            if row != col {
                out.push_str(&cell(row, col));
            }
        }
        out.push('\n');
    }
    out
}

/// Rows are sources, columns are origins; diagonal cells are empty.
pub fn write_matrix_csv(m: &AdpMatrix) -> String {
    write_grid(m.roster(), |s, o| m.get(s, o).map(|c| c.to_string()).unwrap_or_default())
}

/// The adjacency matrix of `g` in the same layout as the path matrix: rows
/// are tails, columns heads, diagonal empty.
pub fn write_adjacency_csv(g: &Digraph) -> String {
    let labels: Vec<AsNumber> = g.vertices().collect();
    write_grid(&labels, |t, h| if g.contains_arc(t, h) { "1" } else { "0" }.to_owned())
}

/// `adp,count` ascending, with zero rows filling gaps between the smallest and
/// largest value.
pub fn write_histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("adp,count\n");
    if let (Some(lo), Some(hi)) = (h.min_value(), h.max_value()) {
        for k in lo..=hi {
            writeln!(out, "{k},{}", h.get(k)).unwrap();
        }
    }
    out
}

struct Grid {
    labels: Vec<AsNumber>,
    // cells[r][c]; None for an empty cell
    cells: Vec<Vec<Option<u64>>>,
}

fn parse_grid(text: &str) -> Result<Grid, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| FormatError::malformed(1, "missing header"))?;
    let mut head = header.split(',');
    if head.next() != Some("") {
        return Err(FormatError::malformed(1, "header must start with an empty cell"));
    }
    let labels = head
        .enumerate()
        .map(|(i, t)| {
            t.parse().map_err(|_| FormatError::BadAsNumber { line: 1, column: i + 2, token: t.into() })
        })
        .collect::<Result<Vec<AsNumber>, _>>()?;

    let mut cells = Vec::with_capacity(labels.len());
    for (i, line) in lines {
        let line_no = i + 1;
        let r = cells.len();
        let mut fields = line.split(',');
        let label = fields.next().unwrap_or_default();
        if labels.get(r).map(|v| v.to_string()).as_deref() != Some(label) {
            return Err(FormatError::malformed(line_no, format!("row label {label:?} out of order")));
        }
        let row = fields
            .enumerate()
            .map(|(c, t)| {
                if t.is_empty() {
                    Ok(None)
                } else {
                    t.parse().map(Some).map_err(|_| {
                        FormatError::malformed(line_no, format!("bad cell {t:?} in column {}", c + 2))
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != labels.len() {
            return Err(FormatError::malformed(
                line_no,
                format!("expected {} cells, found {}", labels.len(), row.len()),
            ));
        }
        cells.push(row);
    }
    if cells.len() != labels.len() {
        return Err(FormatError::malformed(
            cells.len() + 2,
            format!("expected {} rows, found {}", labels.len(), cells.len()),
        ));
    }
    Ok(Grid { labels, cells })
}

/// Reads back the output of [`write_matrix_csv`].
pub fn parse_matrix_csv(text: &str) -> Result<AdpMatrix, FormatError> {
    let grid = parse_grid(text)?;
    let mut entries = std::collections::BTreeMap::new();
    for (r, row) in grid.cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            match (r == c, cell) {
                (true, None) => {}
                (true, Some(_)) => {
                    return Err(FormatError::malformed(r + 2, "diagonal cell must be empty"));
                }
                (false, None) => {
                    return Err(FormatError::malformed(r + 2, format!("empty cell in column {}", c + 2)));
                }
                (false, Some(v)) => {
                    entries.insert((grid.labels[r], grid.labels[c]), *v as usize);
                }
            }
        }
    }
    Ok(AdpMatrix::new(grid.labels, entries)?)
}

/// Reads back the output of [`write_adjacency_csv`]. An explicit `0` on the
/// diagonal is accepted.
pub fn parse_adjacency_csv(text: &str) -> Result<Digraph, FormatError> {
    let grid = parse_grid(text)?;
    let matrix: Vec<Vec<u8>> = grid
        .cells
        .iter()
        .map(|row| row.iter().map(|c| c.map_or(0, |v| v.min(u8::MAX as u64) as u8)).collect())
        .collect();
    Ok(Digraph::from_adjacency_matrix(&grid.labels, &matrix)?)
}
