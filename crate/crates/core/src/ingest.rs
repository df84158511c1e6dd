//! Knot table ingestion from CSV.

use std::path::Path;

use crate::batch::KnotRecord;
use crate::error::{Error, Result};
use crate::grid::MarkerList;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestConfig {
    pub name_column: String,
    pub grid_column: String,
    pub genus_column: String,
    pub fibered_column: String,
    /// Mirror marker rows `i -> n + 1 - i` while reading.
    pub row_flip: bool,
    pub delimiter: u8,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            name_column: "name".into(),
            grid_column: "grid_notation".into(),
            genus_column: "seifert_genus".into(),
            fibered_column: "fibered".into(),
            row_flip: false,
            delimiter: b',',
        }
    }
}

/// A data row that could not be turned into a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectedRow {
    /// 1-based line number in the file.
    pub line: u64,
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    /// Fibered knots, in file order.
    pub records: Vec<KnotRecord>,
    pub not_fibered: usize,
    pub rejected: Vec<RejectedRow>,
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "t" | "yes" | "y" | "1" => Some(true),
        "false" | "f" | "no" | "n" | "0" => Some(false),
        _ => None,
    }
}

fn parse_row(
    name: &str,
    grid: &str,
    genus: &str,
    fibered: &str,
    row_flip: bool,
) -> std::result::Result<KnotRecord, String> {
    let mut markers: MarkerList = grid.parse().map_err(|e: Error| e.to_string())?;
    if row_flip {
        markers = markers.row_flipped();
    }
    markers.to_vertlist().map_err(|e| e.to_string())?;
    let genus: i64 = genus
        .trim()
        .parse()
        .map_err(|_| format!("genus {genus:?} is not an integer"))?;
    if genus < 0 {
        return Err(format!("negative genus {genus}"));
    }
    let fibered = parse_bool(fibered).ok_or_else(|| format!("fibered flag {fibered:?}"))?;
    Ok(KnotRecord {
        name: name.trim().to_string(),
        grid_notation: markers,
        genus,
        fibered,
    })
}

/// Reads a knot table, keeping fibered knots with valid grid notation.
/// Malformed rows are collected in [`Ingested::rejected`].
pub fn ingest_csv(path: &Path, config: &IngestConfig) -> Result<Ingested> {
    for (what, col) in [
        ("name", &config.name_column),
        ("grid", &config.grid_column),
        ("genus", &config.genus_column),
        ("fibered", &config.fibered_column),
    ] {
        if col.is_empty() {
            return Err(Error::Usage(format!("empty {what} column name")));
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(config.delimiter)
        .flexible(true)
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |column: &str| {
        headers
            .iter()
            .position(|h| h.trim() == column)
            .ok_or_else(|| Error::MissingColumn {
                path: path.to_path_buf(),
                column: column.to_string(),
            })
    };
    let name_i = find(&config.name_column)?;
    let grid_i = find(&config.grid_column)?;
    let genus_i = find(&config.genus_column)?;
    let fib_i = find(&config.fibered_column)?;

    let mut out = Ingested::default();
    let mut valid = 0usize;
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(i).unwrap_or("");
        match parse_row(
            field(name_i),
            field(grid_i),
            field(genus_i),
            field(fib_i),
            config.row_flip,
        ) {
            Ok(rec) => {
                valid += 1;
                if rec.fibered {
                    out.records.push(rec);
                } else {
                    out.not_fibered += 1;
                }
            }
            Err(reason) => out.rejected.push(RejectedRow {
                line,
                name: field(name_i).to_string(),
                reason,
            }),
        }
    }
    if valid == 0 {
        return Err(Error::NoValidRows {
            path: path.to_path_buf(),
        });
    }
    Ok(out)
}
