//! Line-oriented instance files.
//!
//! ```text
//! format interval-instance v1
//! t 2
//! interval a 1 3 2
//!
//! format graph-instance v1
//! vertex a 1
//! edge a b
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, ThresholdedInstance};
use crate::interval::{Interval, IntervalRepresentation};

pub const INTERVAL_HEADER: &str = "format interval-instance v1";
pub const GRAPH_HEADER: &str = "format graph-instance v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRecord {
    pub name: String,
    pub left: i64,
    pub right: i64,
    pub tau: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Interval(Vec<IntervalRecord>),
    Graph {
        vertices: Vec<(String, i64)>,
        edges: Vec<(String, String)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub t: Option<usize>,
    pub body: Body,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

struct LineParser<'a> {
    line: usize,
    end_column: usize,
    toks: Vec<Token<'a>>,
}

impl<'a> LineParser<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn get(&self, k: usize, what: &str) -> Result<&Token<'a>> {
        self.toks
            .get(k)
            .ok_or_else(|| self.error(self.end_column, format!("missing {what}")))
    }

    fn name(&self, k: usize) -> Result<String> {
        let tok = self.get(k, "vertex name")?;
        if tok
            .text
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            Ok(tok.text.to_string())
        } else {
            Err(self.error(tok.column, format!("invalid vertex name `{}`", tok.text)))
        }
    }

    fn int(&self, k: usize, what: &str) -> Result<i64> {
        let tok = self.get(k, what)?;
        let digits = tok.text.strip_prefix('-').unwrap_or(tok.text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error(
                tok.column,
                format!("{what} `{}` is not an integer", tok.text),
            ));
        }
        tok.text
            .parse()
            .map_err(|_| self.error(tok.column, format!("{what} `{}` is out of range", tok.text)))
    }

    fn arity(&self, n: usize) -> Result<()> {
        match self.toks.get(n) {
            Some(extra) => Err(self.error(extra.column, format!("unexpected `{}`", extra.text))),
            None => Ok(()),
        }
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut body: Option<Body> = None;
    let mut t: Option<usize> = None;
    let mut seen: HashSet<String> = HashSet::new();
    let mut edge_seen: HashSet<(String, String)> = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        last_line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let p = LineParser {
            line: idx + 1,
            end_column: content.trim_end().len() + 1,
            toks: tokens(content),
        };
        let Some(first) = p.toks.first() else {
            continue;
        };
        if first.text == "format" {
            if body.is_some() {
                return Err(p.error(first.column, "duplicate format header"));
            }
            let tag: Vec<&str> = p.toks.iter().map(|t| t.text).collect();
            body = Some(match tag.join(" ").as_str() {
                INTERVAL_HEADER => Body::Interval(Vec::new()),
                GRAPH_HEADER => Body::Graph {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                },
                _ => {
                    let col = p.toks.get(1).map_or(p.end_column, |t| t.column);
                    return Err(p.error(col, "unknown format tag"));
                }
            });
            continue;
        }
        let Some(body) = body.as_mut() else {
            return Err(p.error(first.column, "expected a format header"));
        };
        match (first.text, body) {
            ("t", _) => {
                if t.is_some() {
                    return Err(p.error(first.column, "duplicate `t` line"));
                }
                let value = p.int(1, "t")?;
                if value < 0 {
                    return Err(p.error(p.toks[1].column, "t must be non-negative"));
                }
                p.arity(2)?;
                t = Some(value as usize);
            }
            ("interval", Body::Interval(records)) => {
                let name = p.name(1)?;
                let left = p.int(2, "left endpoint")?;
                let right = p.int(3, "right endpoint")?;
                let tau = p.int(4, "tau")?;
                p.arity(5)?;
                if left > right {
                    return Err(p.error(
                        p.toks[3].column,
                        format!("left endpoint {left} exceeds right endpoint {right}"),
                    ));
                }
                if !seen.insert(name.clone()) {
                    return Err(p.error(p.toks[1].column, format!("duplicate vertex `{name}`")));
                }
                records.push(IntervalRecord {
                    name,
                    left,
                    right,
                    tau,
                });
            }
            ("vertex", Body::Graph { vertices, .. }) => {
                let name = p.name(1)?;
                let tau = p.int(2, "tau")?;
                p.arity(3)?;
                if !seen.insert(name.clone()) {
                    return Err(p.error(p.toks[1].column, format!("duplicate vertex `{name}`")));
                }
                vertices.push((name, tau));
            }
            ("edge", Body::Graph { edges, .. }) => {
                let a = p.name(1)?;
                let b = p.name(2)?;
                p.arity(3)?;
                for (k, end) in [(1, &a), (2, &b)] {
                    if !seen.contains(end) {
                        return Err(p.error(
                            p.toks[k].column,
                            format!("edge to undeclared vertex `{end}`"),
                        ));
                    }
                }
                if a == b {
                    return Err(p.error(p.toks[2].column, format!("loop at `{a}`")));
                }
                let key = if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                if !edge_seen.insert(key) {
                    return Err(p.error(first.column, format!("repeated edge `{a} {b}`")));
                }
                edges.push((a, b));
            }
            (other, _) => {
                return Err(p.error(first.column, format!("unknown directive `{other}`")));
            }
        }
    }
    let body = body.ok_or_else(|| Error::Parse {
        line: last_line.max(1),
        column: 1,
        message: "missing format header".into(),
    })?;
    Ok(InstanceFile { t, body })
}

impl InstanceFile {
    /// Canonical text: header, `t` if present, then the records.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let header = match self.body {
            Body::Interval(_) => INTERVAL_HEADER,
            Body::Graph { .. } => GRAPH_HEADER,
        };
        out.push_str(header);
        out.push('\n');
        if let Some(t) = self.t {
            let _ = writeln!(out, "t {t}");
        }
        match &self.body {
            Body::Interval(records) => {
                for r in records {
                    let _ = writeln!(out, "interval {} {} {} {}", r.name, r.left, r.right, r.tau);
                }
            }
            Body::Graph { vertices, edges } => {
                for (name, tau) in vertices {
                    let _ = writeln!(out, "vertex {name} {tau}");
                }
                for (a, b) in edges {
                    let _ = writeln!(out, "edge {a} {b}");
                }
            }
        }
        out
    }

    pub fn is_interval(&self) -> bool {
        matches!(self.body, Body::Interval(_))
    }

    /// The thresholded instance, plus the representation for interval files.
    pub fn to_instance(&self) -> Result<(ThresholdedInstance, Option<IntervalRepresentation>)> {
        match &self.body {
            Body::Interval(records) => {
                let rep = IntervalRepresentation::new(
                    records
                        .iter()
                        .map(|r| Interval {
                            left: r.left,
                            right: r.right,
                        })
                        .collect(),
                )?;
                let graph =
                    rep.intersection_graph(records.iter().map(|r| r.name.clone()).collect())?;
                let tau = records.iter().map(|r| r.tau).collect();
                Ok((ThresholdedInstance::new(graph, tau, self.t)?, Some(rep)))
            }
            Body::Graph { vertices, edges } => {
                let names: Vec<String> = vertices.iter().map(|(n, _)| n.clone()).collect();
                let probe = Graph::new(names.clone(), [])?;
                let ids: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|(a, b)| (probe.id(a).unwrap(), probe.id(b).unwrap()))
                    .collect();
                let graph = Graph::new(names, ids)?;
                let tau = vertices.iter().map(|&(_, tau)| tau).collect();
                Ok((ThresholdedInstance::new(graph, tau, self.t)?, None))
            }
        }
    }

    /// Interval file for `instance` realised by `rep`; `t` is written out.
    pub fn from_interval(
        instance: &ThresholdedInstance,
        rep: &IntervalRepresentation,
    ) -> Result<InstanceFile> {
        if rep.len() != instance.order() {
            return Err(Error::Input(
                "representation and instance sizes differ".into(),
            ));
        }
        let records = rep
            .intervals()
            .iter()
            .enumerate()
            .map(|(v, iv)| IntervalRecord {
                name: instance.graph().name(v).to_string(),
                left: iv.left,
                right: iv.right,
                tau: instance.tau(v),
            })
            .collect();
        Ok(InstanceFile {
            t: Some(instance.bound()),
            body: Body::Interval(records),
        })
    }

    /// Graph file for `instance`; edges as `u < v` in id order.
    pub fn from_graph(instance: &ThresholdedInstance, t: Option<usize>) -> InstanceFile {
        let g = instance.graph();
        InstanceFile {
            t,
            body: Body::Graph {
                vertices: (0..g.order())
                    .map(|v| (g.name(v).to_string(), instance.tau(v)))
                    .collect(),
                edges: g
                    .edges()
                    .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                    .collect(),
            },
        }
    }
}
