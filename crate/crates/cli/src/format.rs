//! Plain-text hypergraph files.
//!
//! One record per line, whitespace separated, `c` lines are comments:
//!
//! ```text
//! t <num_vertices> <num_hyperedges>
//! v <vertex_id> <label>        (one per vertex, ids 0..n-1)
//! e <v_1> ... <v_k>            (one per hyperedge)
//! ```
//!
//! Labels are arbitrary non-space strings, interned into dense ids through a
//! [`LabelDict`] shared between the data graph and its queries.

use std::collections::HashMap;

use hypermatch_core::{GraphError, Hypergraph, LabelId, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range (file declares {declared} vertices)")]
    VertexOutOfRange {
        line: usize,
        vertex: u64,
        declared: usize,
    },
    #[error("missing `t` header line")]
    MissingHeader,
    #[error("declared {declared} {kind} records but found {found}")]
    CountMismatch {
        kind: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

/// String label <-> dense id dictionary. Ids are assigned in order of first
/// appearance and shared across every file parsed with the same dictionary,
/// so query labels align with data labels.
#[derive(Debug, Default, Clone)]
pub struct LabelDict {
    names: Vec<String>,
    ids: HashMap<String, LabelId>,
}

impl LabelDict {
    pub fn intern(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as LabelId;
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id as usize]
    }
}

/// Parses a hypergraph file, interning labels into `dict` and
/// canonicalizing the result (duplicate edges collapse, vertex lists sort).
pub fn parse_hypergraph(text: &str, dict: &mut LabelDict) -> Result<Hypergraph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut labels: Vec<Option<LabelId>> = Vec::new();
    let mut vertex_lines = 0usize;
    let mut edges: Vec<Vec<VertexId>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => continue,
            "t" => {
                if header.is_some() {
                    return Err(malformed(line, "duplicate `t` header"));
                }
                let nv = parse_count(line, fields.next(), "vertex count")?;
                let ne = parse_count(line, fields.next(), "hyperedge count")?;
                header = Some((nv, ne));
                labels = vec![None; nv];
            }
            "v" => {
                let (nv, _) = header.ok_or(FormatError::MissingHeader)?;
                vertex_lines += 1;
                if vertex_lines > nv {
                    return Err(malformed(
                        line,
                        format!("vertex line {vertex_lines} exceeds the declared {nv}"),
                    ));
                }
                let id = parse_count(line, fields.next(), "vertex id")? as u64;
                if id >= nv as u64 {
                    return Err(FormatError::VertexOutOfRange {
                        line,
                        vertex: id,
                        declared: nv,
                    });
                }
                let label = fields
                    .next()
                    .ok_or_else(|| malformed(line, "vertex line is missing a label"))?;
                let slot = &mut labels[id as usize];
                if slot.is_some() {
                    return Err(malformed(line, format!("vertex {id} declared twice")));
                }
                *slot = Some(dict.intern(label));
            }
            "e" => {
                let (nv, ne) = header.ok_or(FormatError::MissingHeader)?;
                if edges.len() == ne {
                    return Err(malformed(
                        line,
                        format!("hyperedge line {} exceeds the declared {ne}", ne + 1),
                    ));
                }
                let mut vs = Vec::new();
                for f in fields {
                    let v: u64 = f
                        .parse()
                        .map_err(|_| malformed(line, format!("bad vertex id `{f}`")))?;
                    if v >= nv as u64 {
                        return Err(FormatError::VertexOutOfRange {
                            line,
                            vertex: v,
                            declared: nv,
                        });
                    }
                    vs.push(v as VertexId);
                }
                if vs.is_empty() {
                    return Err(malformed(line, "hyperedge line has no vertices"));
                }
                edges.push(vs);
            }
            other => return Err(malformed(line, format!("unknown record `{other}`"))),
        }
    }

    let (nv, ne) = header.ok_or(FormatError::MissingHeader)?;
    if vertex_lines != nv {
        return Err(FormatError::CountMismatch {
            kind: "vertex",
            declared: nv,
            found: vertex_lines,
        });
    }
    if edges.len() != ne {
        return Err(FormatError::CountMismatch {
            kind: "hyperedge",
            declared: ne,
            found: edges.len(),
        });
    }
    let labels: Vec<LabelId> = labels.into_iter().map(|l| l.expect("all declared")).collect();
    Ok(Hypergraph::new(labels, edges)?)
}

/// Writes a canonical hypergraph back to the text format; `parse . write`
/// is the identity on canonical graphs.
pub fn write_hypergraph(g: &Hypergraph, dict: &LabelDict) -> String {
    let mut out = String::new();
    out.push_str(&format!("t {} {}\n", g.vertex_count(), g.edge_count()));
    for v in 0..g.vertex_count() as VertexId {
        out.push_str(&format!("v {} {}\n", v, dict.name(g.label(v))));
    }
    for e in g.edges() {
        out.push('e');
        for &v in e.vertices() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

fn parse_count(
    line: usize,
    field: Option<&str>,
    what: &str,
) -> Result<usize, FormatError> {
    field
        .ok_or_else(|| malformed(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| malformed(line, format!("bad {what}")))
}
