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

//! Certificates, their verifiers, and the `d = 1` base case.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_path, trim_to_xy, Distance, Graph, Path, Vertex, VertexSet};

/// The solver's output: one side of the dichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    DistantPaths { p1: Path, p2: Path },
    HittingBall { center: Vertex, radius: usize },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DistantPaths { .. } => "paths",
            Certificate::HittingBall { .. } => "ball",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// `which` is 1 or 2.
    NotAPath {
        which: u8,
        reason: String,
    },
    NotXYPath {
        which: u8,
    },
    SharedVertex(Vertex),
    TooClose {
        distance: Distance,
        required: usize,
    },
    InvalidCenter(Vertex),
    /// An `X`-`Y` path that avoids the ball.
    Escapes(Path),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotAPath { which, reason } => write!(f, "p{which} is not a path: {reason}"),
            Rejection::NotXYPath { which } => write!(f, "p{which} is not an X-Y path"),
            Rejection::SharedVertex(v) => write!(f, "paths share vertex {v}"),
            Rejection::TooClose { distance, required } => {
                write!(f, "paths at distance {distance}, need at least {required}")
            }
            Rejection::InvalidCenter(v) => write!(f, "center {v} is not a vertex"),
            Rejection::Escapes(p) => write!(f, "X-Y path {:?} avoids the ball", p.vertices()),
        }
    }
}

/// Accepts iff both are `X`-`Y` paths of `g`, vertex-disjoint, and at
/// distance at least `d`. The rejection names the first failed clause.
pub fn verify_paths(g: &Graph, x: &VertexSet, y: &VertexSet, d: usize, p1: &Path, p2: &Path) -> Result<(), Rejection> {
    for (which, p) in [(1u8, p1), (2u8, p2)] {
        check_path(g, p.vertices()).map_err(|reason| Rejection::NotAPath { which, reason })?;
        if !p.is_xy_path(x, y) {
            return Err(Rejection::NotXYPath { which });
        }
    }
    let s1 = p1.to_set(g.vertex_count());
    let s2 = p2.to_set(g.vertex_count());
    if let Some(v) = s1.iter().find(|&v| s2.contains(v)) {
        return Err(Rejection::SharedVertex(v));
    }
    let distance = g.subgraph_distance(&s1, &s2).expect("paths are nonempty");
    if !distance.at_least(d) {
        return Err(Rejection::TooClose { distance, required: d });
    }
    Ok(())
}

/// Accepts iff no `X`-`Y` path survives in `g - B(center, radius)`.
pub fn verify_ball(g: &Graph, x: &VertexSet, y: &VertexSet, center: Vertex, radius: usize) -> Result<(), Rejection> {
    let ball = g.ball_around(center, radius).map_err(|_| Rejection::InvalidCenter(center))?;
    let rest = ball.complement();
    match g.shortest_xy_path_within(&x.difference(&ball), &y.difference(&ball), Some(&rest)) {
        Some(p) => Err(Rejection::Escapes(p)),
        None => Ok(()),
    }
}

pub fn verify_certificate(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    d: usize,
    cert: &Certificate,
) -> Result<(), Rejection> {
    match cert {
        Certificate::DistantPaths { p1, p2 } => verify_paths(g, x, y, d, p1, p2),
        Certificate::HittingBall { center, radius } => verify_ball(g, x, y, *center, *radius),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MengerOutcome {
    TwoPaths(Path, Path),
    /// Deleting this vertex leaves no `X`-`Y` path.
    Cut(Vertex),
}

/// Unit vertex capacities via the usual in/out split. Node `2v` is `v_in`,
/// `2v + 1` is `v_out`; the last two nodes are source and sink.
struct SplitNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u8>,
    source: usize,
    sink: usize,
}

impl SplitNetwork {
    const WIDE: u8 = 2;

    fn new(g: &Graph, x: &VertexSet, y: &VertexSet) -> Self {
        let n = g.vertex_count();
        let mut net = SplitNetwork {
            head: vec![Vec::new(); 2 * n + 2],
            to: Vec::new(),
            residual: Vec::new(),
            source: 2 * n,
            sink: 2 * n + 1,
        };
        for v in 0..n {
            net.link(2 * v, 2 * v + 1, 1);
        }
        for &(u, v) in g.edges() {
            net.link(2 * u + 1, 2 * v, Self::WIDE);
            net.link(2 * v + 1, 2 * u, Self::WIDE);
        }
        for v in x.iter() {
            net.link(net.source, 2 * v, Self::WIDE);
        }
        for v in y.iter() {
            net.link(2 * v + 1, net.sink, Self::WIDE);
        }
        net
    }

    fn link(&mut self, u: usize, v: usize, cap: u8) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.residual.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.residual.push(0);
    }

    /// Residual BFS from the source; returns the parent edge of every reached node.
    fn search(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if !seen[v] && self.residual[e] > 0 {
                    seen[v] = true;
                    parent[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    fn augment(&mut self) -> bool {
        let parent = self.search();
        if parent[self.sink].is_none() {
            return false;
        }
        let mut v = self.sink;
        while let Some(e) = parent[v] {
            self.residual[e] -= 1;
            self.residual[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }

    /// Peels one source-sink path off the flow and returns its vertices.
    fn take_path(&mut self) -> Vec<Vertex> {
        let mut nodes = Vec::new();
        let mut u = self.source;
        while u != self.sink {
            // forward edges have even ids; flow on them sits in the reverse residual
            let e = *self.head[u].iter().find(|&&e| e % 2 == 0 && self.residual[e ^ 1] > 0).expect("flow conservation");
            self.residual[e ^ 1] -= 1;
            u = self.to[e];
            nodes.push(u);
        }
        let mut vertices: Vec<Vertex> =
            nodes.iter().filter(|&&v| v < self.source && v % 2 == 0).map(|v| v / 2).collect();
        vertices.dedup();
        vertices
    }
}

/// Two vertex-disjoint `X`-`Y` paths, or a single vertex meeting every `X`-`Y`
/// path (any vertex when there is no `X`-`Y` path at all).
pub fn menger_two_paths(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<MengerOutcome> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    g.check_set(x)?;
    g.check_set(y)?;
    let mut net = SplitNetwork::new(g, x, y);
    let mut flow = 0;
    while flow < 2 && net.augment() {
        flow += 1;
    }
    match flow {
        0 => Ok(MengerOutcome::Cut(0)),
        1 => {
            let parent = net.search();
            let reached = |node: usize| parent[node].is_some();
            let cut = (0..g.vertex_count()).find(|&v| reached(2 * v) && !reached(2 * v + 1));
            cut.map(MengerOutcome::Cut).ok_or_else(|| Error::Internal("unit flow without a unit vertex cut".into()))
        }
        _ => {
            let a = net.take_path();
            let b = net.take_path();
            let trim = |p: Vec<Vertex>| {
                trim_to_xy(&p, x, y)
                    .map(Path::from_vec_unchecked)
                    .ok_or_else(|| Error::Internal("flow path is not an X-Y walk".into()))
            };
            Ok(MengerOutcome::TwoPaths(trim(a)?, trim(b)?))
        }
    }
}
