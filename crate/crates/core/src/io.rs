//! Table files: canonical JSON `{"n": .., "table": [[..], ..]}` and a
//! whitespace text format (order on the first line, then the rows).

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::{LoopTable, TableError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed text table: {0}")]
    Text(String),
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("invalid table: {0}")]
    Table(#[from] TableError),
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    n: usize,
    table: Vec<Vec<usize>>,
}

fn checked(n: usize, rows: Vec<Vec<usize>>) -> Result<LoopTable, IoError> {
    if rows.len() != n {
        return Err(IoError::OrderMismatch { declared: n, rows: rows.len() });
    }
    Ok(LoopTable::validate(&rows)?)
}

pub fn to_json(l: &LoopTable) -> String {
    serde_json::to_string(&TableFile { n: l.order(), table: l.rows() }).expect("tables serialize")
}

pub fn from_json(src: &str) -> Result<LoopTable, IoError> {
    let f: TableFile = serde_json::from_str(src)?;
    checked(f.n, f.table)
}

pub fn to_text(l: &LoopTable) -> String {
    let mut out = format!("{}\n", l.order());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(src: &str) -> Result<LoopTable, IoError> {
    let mut nums = src.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| IoError::Text(format!("not a number: {t}"))));
    let n = nums.next().ok_or_else(|| IoError::Text("empty input".into()))??;
    let cells: Vec<usize> = nums.collect::<Result<_, _>>()?;
    if n == 0 || cells.len() != n * n {
        return Err(IoError::Text(format!("expected {} entries after the order, found {}", n * n, cells.len())));
    }
    checked(n, cells.chunks(n).map(<[usize]>::to_vec).collect())
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_table(src: &str) -> Result<LoopTable, IoError> {
    if src.trim_start().starts_with('{') {
        from_json(src)
    } else {
        from_text(src)
    }
}

pub fn read_table(path: &Path) -> Result<LoopTable, IoError> {
    parse_table(&std::fs::read_to_string(path)?)
}

pub fn write_json(path: &Path, l: &LoopTable) -> Result<(), IoError> {
    std::fs::write(path, to_json(l) + "\n")?;
    Ok(())
}
