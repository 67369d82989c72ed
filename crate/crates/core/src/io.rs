//! File formats: hypergraph JSON, dense incidence CSV and complex JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::duality::{DualityError, SimplicialComplex};
use crate::hypergraph::{DirectedHypergraph, Hyperedge, HypergraphError};
use crate::matrix::IntMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("CSV error at line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("hyperedge {edge}, field `{field}`: unknown vertex {label:?}")]
    UnknownVertex {
        edge: usize,
        field: &'static str,
        label: String,
    },
    #[error("hyperedge {edge}, field `{field}`: vertex {label:?} listed twice")]
    RepeatedVertex {
        edge: usize,
        field: &'static str,
        label: String,
    },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Complex(#[from] DualityError),
    #[error("cannot infer the input format of {0}; pass --format")]
    UnknownFormat(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperedge {
    #[serde(default)]
    sources: Vec<String>,
    #[serde(default)]
    targets: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    vertices: Vec<String>,
    #[serde(default)]
    hyperedges: Vec<RawHyperedge>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    n: usize,
    maximal_faces: Vec<Vec<usize>>,
}

fn resolve(
    h_vertices: &[String],
    edge: usize,
    field: &'static str,
    labels: &[String],
) -> Result<Vec<usize>, IoError> {
    let mut out = Vec::with_capacity(labels.len());
    for l in labels {
        let v = h_vertices
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| IoError::UnknownVertex {
                edge,
                field,
                label: l.clone(),
            })?;
        if out.contains(&v) {
            return Err(IoError::RepeatedVertex {
                edge,
                field,
                label: l.clone(),
            });
        }
        out.push(v);
    }
    Ok(out)
}

pub fn hypergraph_from_json(text: &str) -> Result<DirectedHypergraph, IoError> {
    let raw: RawHypergraph = serde_json::from_str(text)?;
    let mut edges = Vec::with_capacity(raw.hyperedges.len());
    for (k, e) in raw.hyperedges.iter().enumerate() {
        edges.push(Hyperedge::new(
            resolve(&raw.vertices, k, "sources", &e.sources)?,
            resolve(&raw.vertices, k, "targets", &e.targets)?,
        ));
    }
    Ok(DirectedHypergraph::new(raw.vertices, edges)?)
}

fn to_raw(h: &DirectedHypergraph) -> RawHypergraph {
    let label = |v: &usize| h.vertices()[*v].clone();
    RawHypergraph {
        vertices: h.vertices().to_vec(),
        hyperedges: h
            .hyperedges()
            .iter()
            .map(|e| RawHyperedge {
                sources: e.sources.iter().map(label).collect(),
                targets: e.targets.iter().map(label).collect(),
            })
            .collect(),
    }
}

pub fn hypergraph_to_json(h: &DirectedHypergraph) -> String {
    serde_json::to_string_pretty(&to_raw(h)).expect("plain data serialises")
}

/// JSON value form, for embedding in reports.
pub fn hypergraph_to_value(h: &DirectedHypergraph) -> serde_json::Value {
    serde_json::to_value(to_raw(h)).expect("plain data serialises")
}

fn parse_entry(cell: &str) -> Option<i64> {
    cell.trim().parse::<i64>().ok()
}

/// Reads a dense incidence CSV. Rows are vertices; an optional leading
/// label column and an optional header row (`vertex,e1,…`) are recognised.
pub fn hypergraph_from_csv(text: &str) -> Result<DirectedHypergraph, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<(u64, csv::StringRecord)> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| IoError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push((line, rec));
    }
    if rows.is_empty() {
        return Ok(DirectedHypergraph::empty(0));
    }
    // Header: some cell after the first is not an integer, or the first
    // cell is literally "vertex".
    let first = &rows[0].1;
    let is_header = first.get(0).is_some_and(|c| c.eq_ignore_ascii_case("vertex"))
        || first.iter().skip(1).any(|c| parse_entry(c).is_none());
    let data = if is_header { &rows[1..] } else { &rows[..] };
    let labelled = is_header || data.iter().any(|(_, r)| r.get(0).is_some_and(|c| parse_entry(c).is_none()));

    let mut labels = Vec::new();
    let mut values: Vec<Vec<i64>> = Vec::new();
    let mut width: Option<usize> = None;
    for (line, rec) in data {
        let cells: Vec<&str> = rec.iter().collect();
        let (label, entries) = if labelled {
            (Some(cells[0].to_string()), &cells[1..])
        } else {
            (None, &cells[..])
        };
        let mut row = Vec::with_capacity(entries.len());
        for (col, c) in entries.iter().enumerate() {
            let v = parse_entry(c).ok_or_else(|| IoError::Csv {
                line: *line,
                message: format!("column {}: {c:?} is not an integer", col + 1 + labelled as usize),
            })?;
            if !(-1..=1).contains(&v) {
                return Err(IoError::Csv {
                    line: *line,
                    message: format!("column {}: entry {v} is not in {{-1, 0, 1}}", col + 1 + labelled as usize),
                });
            }
            row.push(v);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(IoError::Csv {
                    line: *line,
                    message: format!("expected {w} entries, found {}", row.len()),
                })
            }
            _ => {}
        }
        if let Some(l) = label {
            labels.push(l);
        }
        values.push(row);
    }
    let w = width.unwrap_or(0);
    let m = IntMatrix::from_vec(values.len(), w, values.into_iter().flatten().collect());
    let labels = labelled.then_some(labels);
    Ok(DirectedHypergraph::from_incidence(labels, &m)?)
}

/// Dense incidence CSV with a `vertex,e1,…,em` header and a label column.
pub fn hypergraph_to_csv(h: &DirectedHypergraph) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["vertex".to_string()];
    header.extend((1..=h.edge_count()).map(|k| format!("e{k}")));
    w.write_record(&header).expect("in-memory write");
    let inc = h.incidence();
    for (i, label) in h.vertices().iter().enumerate() {
        let mut rec = vec![label.clone()];
        rec.extend(inc.matrix().row(i).iter().map(|x| x.to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, IoError> {
    let raw: RawComplex = serde_json::from_str(text)?;
    Ok(SimplicialComplex::closure(raw.n, &raw.maximal_faces)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    IncidenceCsv,
    ComplexJson,
}

impl Format {
    /// `.csv` means incidence CSV, `.json` hypergraph JSON.
    pub fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::IncidenceCsv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Input {
    Hypergraph(DirectedHypergraph),
    Complex(SimplicialComplex),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_input(path: &Path, format: Option<Format>) -> Result<Input, IoError> {
    let format = format
        .or_else(|| Format::from_extension(path))
        .ok_or_else(|| IoError::UnknownFormat(path.display().to_string()))?;
    let text = read_text(path)?;
    Ok(match format {
        Format::Json => Input::Hypergraph(hypergraph_from_json(&text)?),
        Format::IncidenceCsv => Input::Hypergraph(hypergraph_from_csv(&text)?),
        Format::ComplexJson => Input::Complex(complex_from_json(&text)?),
    })
}
