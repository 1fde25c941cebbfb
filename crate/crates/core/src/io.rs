//! Text format for MIN-CVCK instances and structured solver output.
//!
//! Instance files are line oriented, fields separated by whitespace:
//!
//! ```text
//! c <comment>
//! p kpvc <n> <m> <k>      first non-comment record, exactly once
//! v <vertex> <part>       once per vertex 1..=n
//! b <part> <budget>       once per part 1..=k
//! e <u> <v>               m times, u != v
//! ```
//!
//! `v`, `b` and `e` records may appear in any order after the `p` line.
//! Serialization is canonical: `p`, then `v` by vertex, `b` by part, `e`
//! ascending with `u < v`, LF-terminated, no comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactResult, ExactStatus};
use crate::graph::{respects_budgets, Budgets, Graph, Instance, KPartition, Vertex, VertexSet, Violation};
use crate::heuristic::{CoverResult, CoverStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: header declares {declared} edges, found {found}")]
    CountMismatch { line: usize, declared: usize, found: usize },
    #[error("line {line}: vertex {vertex} has no part assignment")]
    MissingVertexAssignment { line: usize, vertex: Vertex },
    #[error("line {line}: part {part} has no budget")]
    MissingBudget { line: usize, part: usize },
    #[error("line {line}: edge ({u},{v}) lies inside part {part}")]
    IntraPartEdge { line: usize, u: Vertex, v: Vertex, part: usize },
    #[error("line {line}: duplicate {record} record")]
    DuplicateRecord { line: usize, record: String },
}

impl ParseError {
    /// 1-based line the error refers to. Whole-file errors point at the
    /// `p` line.
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Syntax { line, .. }
            | ParseError::SelfLoop { line, .. }
            | ParseError::CountMismatch { line, .. }
            | ParseError::MissingVertexAssignment { line, .. }
            | ParseError::MissingBudget { line, .. }
            | ParseError::IntraPartEdge { line, .. }
            | ParseError::DuplicateRecord { line, .. } => line,
        }
    }

    /// True for well-formed files that describe an invalid instance.
    pub fn is_invalid_instance(&self) -> bool {
        matches!(
            self,
            ParseError::MissingVertexAssignment { .. }
                | ParseError::MissingBudget { .. }
                | ParseError::IntraPartEdge { .. }
        )
    }
}

#[derive(Debug, Error)]
pub enum SerializeError {
    #[error("invalid instance: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InstanceInvalid(Vec<Violation>),
}

struct Header {
    line: usize,
    n: usize,
    m: usize,
    k: usize,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn int_fields(line: usize, fields: &[&str], expected: usize) -> Result<Vec<usize>, ParseError> {
    if fields.len() != expected {
        return Err(syntax(
            line,
            format!("expected {expected} fields after record tag, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("'{f}' is not a non-negative integer")))
        })
        .collect()
}

fn in_range(line: usize, what: &str, value: usize, max: usize) -> Result<usize, ParseError> {
    if (1..=max).contains(&value) {
        Ok(value)
    } else {
        Err(syntax(line, format!("{what} {value} outside 1..={max}")))
    }
}

/// Parses an instance file. The result always passes validation.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut part_of: Vec<Option<usize>> = Vec::new();
    let mut budgets: Vec<Option<usize>> = Vec::new();
    let mut edges: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(ParseError::DuplicateRecord {
                    line,
                    record: "p".into(),
                });
            }
            if rest.first() != Some(&"kpvc") {
                return Err(syntax(line, "expected 'p kpvc <n> <m> <k>'"));
            }
            let nums = int_fields(line, &rest[1..], 3)?;
            let (n, m, k) = (nums[0], nums[1], nums[2]);
            if n == 0 || k == 0 {
                return Err(syntax(line, "n and k must be positive"));
            }
            part_of = vec![None; n];
            budgets = vec![None; k];
            header = Some(Header { line, n, m, k });
            continue;
        }
        let Some(h) = &header else {
            return Err(syntax(line, format!("'{tag}' record before the p line")));
        };
        match tag {
            "v" => {
                let nums = int_fields(line, rest, 2)?;
                let v = in_range(line, "vertex", nums[0], h.n)?;
                let p = in_range(line, "part", nums[1], h.k)?;
                if part_of[v - 1].replace(p).is_some() {
                    return Err(ParseError::DuplicateRecord {
                        line,
                        record: format!("v {v}"),
                    });
                }
            }
            "b" => {
                let nums = int_fields(line, rest, 2)?;
                let p = in_range(line, "part", nums[0], h.k)?;
                if budgets[p - 1].replace(nums[1]).is_some() {
                    return Err(ParseError::DuplicateRecord {
                        line,
                        record: format!("b {p}"),
                    });
                }
            }
            "e" => {
                let nums = int_fields(line, rest, 2)?;
                let u = in_range(line, "vertex", nums[0], h.n)?;
                let v = in_range(line, "vertex", nums[1], h.n)?;
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                if edges.insert((u.min(v), u.max(v)), line).is_some() {
                    return Err(ParseError::DuplicateRecord {
                        line,
                        record: format!("e {u} {v}"),
                    });
                }
            }
            other => return Err(syntax(line, format!("unknown record tag '{other}'"))),
        }
    }

    let Some(h) = header else {
        return Err(syntax(last_line.max(1), "missing 'p kpvc' line"));
    };
    if edges.len() != h.m {
        return Err(ParseError::CountMismatch {
            line: h.line,
            declared: h.m,
            found: edges.len(),
        });
    }
    let assignment = part_of
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or(ParseError::MissingVertexAssignment {
                line: h.line,
                vertex: i + 1,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let limits = budgets
        .iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(ParseError::MissingBudget { line: h.line, part: i + 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((&(u, v), &line)) = edges
        .iter()
        .filter(|(&(u, v), _)| assignment[u - 1] == assignment[v - 1])
        .min_by_key(|(_, &line)| line)
    {
        return Err(ParseError::IntraPartEdge {
            line,
            u,
            v,
            part: assignment[u - 1],
        });
    }
    let edge_list: Vec<_> = edges.into_keys().collect();
    let graph = Graph::new(h.n, &edge_list).expect("edges checked while parsing");
    Ok(Instance::new(
        graph,
        KPartition::from_assignment(h.k, assignment),
        Budgets::new(limits),
    ))
}

/// Canonical text form of a valid instance.
pub fn serialize_instance(inst: &Instance) -> Result<String, SerializeError> {
    let report = inst.validate();
    if !report.is_ok() {
        return Err(SerializeError::InstanceInvalid(report.violations));
    }
    let g = &inst.graph;
    let mut out = String::with_capacity(16 * (g.n() + g.num_edges() + inst.k() + 1));
    // Writing to a String cannot fail.
    let _ = writeln!(out, "p kpvc {} {} {}", g.n(), g.num_edges(), inst.k());
    for (i, p) in inst.partition.assignment().iter().enumerate() {
        let _ = writeln!(out, "v {} {p}", i + 1);
    }
    for (i, b) in inst.budgets.limits().iter().enumerate() {
        let _ = writeln!(out, "b {} {b}", i + 1);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    Ok(out)
}

/// Solver effort: heuristic operation count or exact search nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Effort {
    OpCount(u64),
    NodesExplored(u64),
}

impl Effort {
    pub fn value(self) -> u64 {
        match self {
            Effort::OpCount(x) | Effort::NodesExplored(x) => x,
        }
    }
}

/// One solver run in reportable form. `cover` is `None` when the run
/// produced no valid cover (infeasible or heuristic failure).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveRecord {
    pub algo: String,
    pub status: String,
    pub cover: Option<VertexSet>,
    pub per_part_usage: Vec<usize>,
    pub effort: Effort,
    pub wall_ms: f64,
}

impl SolveRecord {
    pub fn from_heuristic(result: &CoverResult, wall_ms: f64) -> Self {
        let status = match result.status {
            CoverStatus::Success => "Success",
            CoverStatus::HeuristicFailure => "HeuristicFailure",
        };
        Self {
            algo: "cvck".into(),
            status: status.into(),
            cover: (result.status == CoverStatus::Success).then(|| result.cover.clone()),
            per_part_usage: result.per_part_usage.clone(),
            effort: Effort::OpCount(result.op_count),
            wall_ms,
        }
    }

    pub fn from_exact(result: &ExactResult, wall_ms: f64) -> Self {
        let status = match result.status {
            ExactStatus::Feasible => "Feasible",
            ExactStatus::Infeasible => "Infeasible",
        };
        Self {
            algo: "exact".into(),
            status: status.into(),
            cover: (result.status == ExactStatus::Feasible).then(|| result.cover.clone()),
            per_part_usage: result.per_part_usage.clone(),
            effort: Effort::NodesExplored(result.nodes_explored),
            wall_ms,
        }
    }

    /// The unconstrained baseline always yields a cover; status reports
    /// whether it also fits the instance's budgets. Effort is the number of
    /// edges scanned.
    pub fn from_two_approx(inst: &Instance, cover: &VertexSet, wall_ms: f64) -> Self {
        let status = if respects_budgets(inst, cover) {
            "Success"
        } else {
            "BudgetViolation"
        };
        Self {
            algo: "2approx".into(),
            status: status.into(),
            cover: Some(cover.clone()),
            per_part_usage: inst.partition.usage(cover),
            effort: Effort::OpCount(inst.graph.num_edges() as u64),
            wall_ms,
        }
    }

    pub fn size(&self) -> Option<usize> {
        self.cover.as_ref().map(VertexSet::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Json,
    CsvRow,
}

/// Column names for [`ResultFormat::CsvRow`].
pub const RESULT_CSV_HEADER: [&str; 7] = [
    "algo",
    "status",
    "cover",
    "size",
    "per_part_usage",
    "effort",
    "wall_ms",
];

#[derive(Serialize)]
struct JsonRecord<'a> {
    algo: &'a str,
    status: &'a str,
    cover: Vec<Vertex>,
    size: Option<usize>,
    per_part_usage: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    op_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes_explored: Option<u64>,
    wall_ms: f64,
}

pub(crate) fn join_ids<'a>(ids: impl IntoIterator<Item = &'a usize>) -> String {
    ids.into_iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_fields(record: &SolveRecord) -> [String; 7] {
    [
        record.algo.clone(),
        record.status.clone(),
        record.cover.as_ref().map(join_ids).unwrap_or_default(),
        record.size().map(|s| s.to_string()).unwrap_or_default(),
        join_ids(&record.per_part_usage),
        record.effort.value().to_string(),
        format!("{:.3}", record.wall_ms),
    ]
}

/// Renders one record as a JSON object or a CSV row (no header, no
/// trailing newline).
pub fn emit_result(record: &SolveRecord, format: ResultFormat) -> String {
    match format {
        ResultFormat::Json => {
            let (op_count, nodes_explored) = match record.effort {
                Effort::OpCount(x) => (Some(x), None),
                Effort::NodesExplored(x) => (None, Some(x)),
            };
            let json = JsonRecord {
                algo: &record.algo,
                status: &record.status,
                cover: record.cover.iter().flatten().copied().collect(),
                size: record.size(),
                per_part_usage: &record.per_part_usage,
                op_count,
                nodes_explored,
                wall_ms: record.wall_ms,
            };
            serde_json::to_string(&json).expect("record serializes")
        }
        ResultFormat::CsvRow => {
            let mut writer = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            writer.write_record(csv_fields(record)).expect("in-memory write");
            let bytes = writer.into_inner().expect("in-memory flush");
            String::from_utf8(bytes)
                .expect("csv output is UTF-8")
                .trim_end_matches('\n')
                .to_owned()
        }
    }
}

/// CSV sink that writes [`RESULT_CSV_HEADER`] before the first row.
pub struct ResultCsvWriter<W: io::Write> {
    inner: csv::Writer<W>,
    header_written: bool,
}

impl<W: io::Write> ResultCsvWriter<W> {
    pub fn new(sink: W) -> Self {
        Self {
            inner: csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink),
            header_written: false,
        }
    }

    pub fn write(&mut self, record: &SolveRecord) -> csv::Result<()> {
        if !self.header_written {
            self.inner.write_record(RESULT_CSV_HEADER)?;
            self.header_written = true;
        }
        self.inner.write_record(csv_fields(record))
    }

    pub fn into_inner(self) -> io::Result<W> {
        self.inner
            .into_inner()
            .map_err(|e| io::Error::other(e.to_string()))
    }
}
