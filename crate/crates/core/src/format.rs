//! The plain-text hypergraph format.
//!
//! ```text
//! # comment
//! vertices: a b c d
//! edge: a b c
//! edge: c d
//! apex: d
//! ```
//!
//! Vertex ids are assigned `0, 1, ..` in order of first declaration. The
//! `vertices:` line is optional; without it the vertex set is the union of
//! the edges. With it, edges may only use declared vertices unless
//! `infer_vertices` is set. `apex:` tags join vertices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};

/// Names of vertices, indexed by id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl Labels {
    /// Every vertex named by its decimal id.
    pub fn numeric(h: &Hypergraph) -> Self {
        let mut labels = Labels::default();
        for &v in h.vertices() {
            labels.set(v, v.to_string());
        }
        labels
    }

    fn set(&mut self, id: VertexId, name: String) {
        let i = id as usize;
        if self.names.len() <= i {
            self.names.resize(i + 1, String::new());
        }
        self.ids.insert(name.clone(), id);
        self.names[i] = name;
    }

    fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as VertexId;
        self.set(id, name.to_string());
        id
    }

    pub fn id_of(&self, name: &str) -> Option<VertexId> {
        self.ids.get(name).copied()
    }

    pub fn name_of(&self, id: VertexId) -> String {
        self.names
            .get(id as usize)
            .filter(|s| !s.is_empty())
            .cloned()
            .unwrap_or_else(|| id.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedHypergraph {
    pub hypergraph: Hypergraph,
    pub labels: Labels,
}

fn semantic(line: usize, message: impl Into<String>) -> Error {
    Error::Semantic {
        line,
        message: message.into(),
    }
}

pub fn parse_hypergraph(text: &str, infer_vertices: bool) -> Result<ParsedHypergraph> {
    let mut labels = Labels::default();
    let mut declared = false;
    let mut edges: Vec<(usize, Vec<VertexId>)> = Vec::new();
    let mut apex: Vec<VertexId> = Vec::new();
    let mut apex_lines: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            let column = content.len() - content.trim_start().len() + 1;
            return Err(Error::Syntax {
                line: line_no,
                column,
                message: "expected `vertices:`, `edge:` or `apex:`".into(),
            });
        };
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "vertices" => {
                if declared {
                    return Err(semantic(line_no, "second `vertices:` line"));
                }
                if !edges.is_empty() {
                    return Err(semantic(line_no, "`vertices:` must precede every `edge:`"));
                }
                declared = true;
                for t in tokens {
                    if labels.id_of(t).is_some() {
                        return Err(semantic(line_no, format!("vertex {t:?} declared twice")));
                    }
                    labels.intern(t);
                }
            }
            "edge" => {
                let mut ids = Vec::with_capacity(tokens.len());
                for t in &tokens {
                    let id = match labels.id_of(t) {
                        Some(id) => id,
                        None if !declared || infer_vertices => labels.intern(t),
                        None => return Err(semantic(line_no, format!("unknown vertex {t:?}"))),
                    };
                    if ids.contains(&id) {
                        return Err(semantic(line_no, format!("repeated vertex {t:?} in edge")));
                    }
                    ids.push(id);
                }
                if ids.len() < 2 {
                    return Err(semantic(line_no, "edge needs at least two vertices"));
                }
                let mut sorted = ids.clone();
                sorted.sort_unstable();
                if let Some((first, _)) = edges.iter().find(|(_, e)| {
                    let mut s = e.clone();
                    s.sort_unstable();
                    s == sorted
                }) {
                    return Err(semantic(
                        line_no,
                        format!("duplicate edge (first given on line {first})"),
                    ));
                }
                edges.push((line_no, ids));
            }
            "apex" => apex_lines.push((line_no, tokens.iter().map(|t| t.to_string()).collect())),
            other => {
                let column = content.find(other).unwrap_or(0) + 1;
                return Err(Error::Syntax {
                    line: line_no,
                    column,
                    message: format!("unknown directive {other:?}"),
                });
            }
        }
    }
    for (line_no, names) in apex_lines {
        for name in names {
            let id = labels
                .id_of(&name)
                .ok_or_else(|| semantic(line_no, format!("unknown apex vertex {name:?}")))?;
            apex.push(id);
        }
    }
    let vertices: Vec<VertexId> = (0..labels.names.len() as VertexId).collect();
    let hypergraph = Hypergraph::new(vertices, edges.into_iter().map(|(_, e)| e))?.with_apex(apex);
    Ok(ParsedHypergraph { hypergraph, labels })
}

/// Writes `h` in the text format; labels default to decimal ids.
pub fn write_hypergraph(h: &Hypergraph, labels: Option<&Labels>) -> String {
    let fallback;
    let labels = match labels {
        Some(l) => l,
        None => {
            fallback = Labels::numeric(h);
            &fallback
        }
    };
    let name = |v: VertexId| labels.name_of(v);
    let mut out = String::new();
    let vs: Vec<String> = h.vertices().iter().map(|&v| name(v)).collect();
    out.push_str(&format!("vertices: {}\n", vs.join(" ")));
    for e in h.edges() {
        let vs: Vec<String> = e.iter().map(|&v| name(v)).collect();
        out.push_str(&format!("edge: {}\n", vs.join(" ")));
    }
    if !h.apex_vertices().is_empty() {
        let vs: Vec<String> = h.apex_vertices().iter().map(|&v| name(v)).collect();
        out.push_str(&format!("apex: {}\n", vs.join(" ")));
    }
    out
}
