// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The edge-list instance format.
//!
//! ```text
//! # x: 0,7,14
//! # y: 6,13,20
//! # d: 2
//! 25 41
//! 0 1
//! ...
//! ```
//!
//! The first non-comment line is `n m`, followed by `m` lines `u v` with
//! 0-based ids. Everything after `#` is a comment. The `x`, `y`, `d` and
//! `label` header comments are optional and only supply defaults.

use twopaths::generators::Instance;
use twopaths::{Graph, Vertex};

use crate::error::{parse_err, CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Headers {
    pub x: Option<Vec<Vertex>>,
    pub y: Option<Vec<Vertex>>,
    pub d: Option<usize>,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub headers: Headers,
}

/// Parses `"0,7,14"`. Empty entries are rejected.
pub fn parse_id_list(text: &str) -> CliResult<Vec<Vertex>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Vertex>().map_err(|_| CliError::Usage(format!("bad vertex id {s:?} in {text:?}")))
        })
        .collect()
}

fn header(headers: &mut Headers, comment: &str, line: usize) -> CliResult<()> {
    let Some((key, value)) = comment.split_once(':') else { return Ok(()) };
    let value = value.trim();
    let ids = |v: &str| parse_id_list(v).map_err(|e| parse_err(line, e.to_string()));
    match key.trim() {
        "x" => headers.x = Some(ids(value)?),
        "y" => headers.y = Some(ids(value)?),
        "d" => headers.d = Some(value.parse().map_err(|_| parse_err(line, format!("bad d {value:?}")))?),
        "label" => headers.label = Some(value.to_string()),
        _ => {}
    }
    Ok(())
}

fn pair(body: &str, line: usize) -> CliResult<(usize, usize)> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> CliResult<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
    };
    let p = (next("first number")?, next("second number")?);
    match it.next() {
        Some(extra) => Err(parse_err(line, format!("unexpected {extra:?}"))),
        None => Ok(p),
    }
}

pub fn parse_graph(text: &str) -> CliResult<GraphFile> {
    let mut headers = Headers::default();
    let mut size = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if body.trim().is_empty() {
                header(&mut headers, c.split('#').next().unwrap_or_default(), line)?;
            }
        }
        if body.trim().is_empty() {
            continue;
        }
        let (u, v) = pair(body, line)?;
        match size {
            None => size = Some((u, v)),
            Some((n, _)) => {
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("vertex id out of range for n = {n}")));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = size.ok_or_else(|| parse_err(last, "missing \"n m\" line"))?;
    if edges.len() != m {
        return Err(parse_err(last, format!("expected {m} edges, found {}", edges.len())));
    }
    let graph = Graph::new(n, edges)?;
    Ok(GraphFile { graph, headers })
}

fn id_list(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn emit_graph(g: &Graph, headers: &Headers) -> String {
    let mut out = String::new();
    if let Some(label) = &headers.label {
        out.push_str(&format!("# label: {label}\n"));
    }
    if let Some(x) = &headers.x {
        out.push_str(&format!("# x: {}\n", id_list(x)));
    }
    if let Some(y) = &headers.y {
        out.push_str(&format!("# y: {}\n", id_list(y)));
    }
    if let Some(d) = headers.d {
        out.push_str(&format!("# d: {d}\n"));
    }
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn emit_instance(inst: &Instance) -> String {
    let headers = Headers {
        x: Some(inst.x.to_vec()),
        y: Some(inst.y.to_vec()),
        d: Some(inst.d),
        label: Some(inst.label.clone()),
    };
    emit_graph(&inst.graph, &headers)
}

/// Builds an instance, taking terminals and `d` from the arguments when
/// given and from the headers otherwise.
pub fn to_instance(
    file: GraphFile,
    x: Option<Vec<Vertex>>,
    y: Option<Vec<Vertex>>,
    d: Option<usize>,
) -> CliResult<Instance> {
    let GraphFile { graph, headers } = file;
    let missing =
        |what: &str| CliError::Usage(format!("no {what} given and the graph file has no \"# {what}:\" header"));
    let x = x.or(headers.x).ok_or_else(|| missing("x"))?;
    let y = y.or(headers.y).ok_or_else(|| missing("y"))?;
    let d = d.or(headers.d).ok_or_else(|| missing("d"))?;
    let label = headers.label.unwrap_or_default();
    Ok(Instance::new(graph, x, y, d, label)?)
}
