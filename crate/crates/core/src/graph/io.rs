//! Edge-list and MatrixMarket readers.
//!
//! Both formats carry 1-indexed vertex ids which are shifted to 0-indexed.
//! Lines starting with `%` or `#` are comments. Fields may be separated by
//! whitespace or commas; anything past the second field (edge weights,
//! timestamps) is ignored.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    MatrixMarket,
}

impl GraphFormat {
    /// `.mtx` files are MatrixMarket, everything else an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "matrix-market" | "mtx" => Ok(GraphFormat::MatrixMarket),
            other => Err(Error::Config(format!("unknown graph format '{other}'"))),
        }
    }
}

pub fn parse_graph(path: &Path, format: GraphFormat) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_graph_str(&text, format, path)
}

/// Parses `text` as if read from `origin` (used only in error messages).
pub fn parse_graph_str(text: &str, format: GraphFormat, origin: &Path) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };

    let mut declared: Option<usize> = None;
    let mut expect_size_line = false;
    let mut edges = Vec::new();
    let mut max_id = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("%%MatrixMarket") {
            if format == GraphFormat::MatrixMarket {
                if !line.contains("coordinate") {
                    return Err(err(lineno, "only coordinate MatrixMarket files are supported".into()));
                }
                expect_size_line = true;
            }
            continue;
        }
        if line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|f| !f.is_empty())
            .collect();

        if expect_size_line {
            expect_size_line = false;
            if fields.len() != 3 {
                return Err(err(lineno, format!("expected size line 'rows cols nnz', got '{line}'")));
            }
            let mut dims = [0usize; 3];
            for (d, f) in dims.iter_mut().zip(&fields) {
                *d = f
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid size field '{f}'")))?;
            }
            declared = Some(dims[0].max(dims[1]));
            continue;
        }

        if fields.len() < 2 {
            return Err(err(lineno, format!("expected 'u v', got '{line}'")));
        }
        let mut ends = [0usize; 2];
        for (end, f) in ends.iter_mut().zip(&fields) {
            let id: usize = f
                .parse()
                .map_err(|_| err(lineno, format!("invalid vertex id '{f}'")))?;
            if id == 0 {
                return Err(err(lineno, "vertex ids are 1-indexed; found 0".into()));
            }
            if let Some(n) = declared {
                if id > n {
                    return Err(err(lineno, format!("vertex {id} exceeds declared size {n}")));
                }
            }
            *end = id - 1;
        }
        max_id = max_id.max(ends[0] + 1).max(ends[1] + 1);
        edges.push((ends[0], ends[1]));
    }

    if expect_size_line {
        return Err(err(text.lines().count(), "missing MatrixMarket size line".into()));
    }
    let n = declared.unwrap_or(max_id);
    Graph::from_edges(n, &edges).map_err(|e| err(0, e.to_string()))
}
