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

//! Simple undirected graphs and the distance primitives the solver is built on.
//!
//! Every traversal visits sources and neighbours in increasing id order, so
//! all results (shortest paths, component order, tie-breaks) are
//! reproducible.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A graph distance: either a finite edge count or `Infinite` for vertices in
/// different components. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `self >= bound`, with infinity above every bound.
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= bound,
            Distance::Infinite => true,
        }
    }
}

impl From<Option<usize>> for Distance {
    fn from(d: Option<usize>) -> Self {
        d.map_or(Distance::Infinite, Distance::Finite)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A set of vertices of a graph on `universe` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { bits: vec![false; universe], len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { bits: vec![true; universe], len: universe }
    }

    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = VertexSet::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::InvalidVertex { vertex: v, vertex_count: universe });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.get(v).copied().unwrap_or(false)
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Vertex) -> bool {
        let fresh = !self.bits[v];
        if fresh {
            self.bits[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let present = self.contains(v);
        if present {
            self.bits[v] = false;
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.iter().enumerate().filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn first(&self) -> Option<Vertex> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.insert(v);
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for v in other.iter() {
            out.remove(v);
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.universe());
        for v in self.iter().filter(|&v| other.contains(v)) {
            out.insert(v);
        }
        out
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.iter().any(|v| other.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        let bits: Vec<bool> = self.bits.iter().map(|b| !b).collect();
        let len = self.universe() - self.len;
        VertexSet { bits, len }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A path given by its vertex sequence. A single vertex is a path of length 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(Vec<Vertex>);

impl Path {
    /// Checks that `vertices` is a nonempty sequence of distinct vertices of
    /// `g` with consecutive vertices adjacent.
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Path> {
        check_path(g, &vertices).map_err(Error::InvalidPath)?;
        Ok(Path(vertices))
    }

    pub fn single(v: Vertex) -> Path {
        Path(vec![v])
    }

    pub(crate) fn from_vec_unchecked(vertices: Vec<Vertex>) -> Path {
        debug_assert!(!vertices.is_empty());
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn to_set(&self, universe: usize) -> VertexSet {
        let mut s = VertexSet::new(universe);
        for &v in &self.0 {
            s.insert(v);
        }
        s
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// One end in `x`, the other in `y`, no internal vertex in `x ∪ y`.
    /// Either orientation is accepted.
    pub fn is_xy_path(&self, x: &VertexSet, y: &VertexSet) -> bool {
        let inner = if self.0.len() > 2 { &self.0[1..self.0.len() - 1] } else { &[][..] };
        if inner.iter().any(|&v| x.contains(v) || y.contains(v)) {
            return false;
        }
        let (a, b) = (self.first(), self.last());
        (x.contains(a) && y.contains(b)) || (x.contains(b) && y.contains(a))
    }
}

/// Returns a description of the first defect, if any.
pub(crate) fn check_path(g: &Graph, vertices: &[Vertex]) -> std::result::Result<(), String> {
    if vertices.is_empty() {
        return Err("empty vertex sequence".into());
    }
    let mut seen = VertexSet::new(g.vertex_count());
    for (i, &v) in vertices.iter().enumerate() {
        if v >= g.vertex_count() {
            return Err(format!("vertex {v} out of range"));
        }
        if !seen.insert(v) {
            return Err(format!("vertex {v} repeated"));
        }
        if i > 0 && !g.has_edge(vertices[i - 1], v) {
            return Err(format!("{} and {v} are not adjacent", vertices[i - 1]));
        }
    }
    Ok(())
}

/// Removes cycles from a walk: whenever a vertex reappears, everything after
/// its first occurrence is cut back. The result is a path on a subset of the
/// walk's vertices with the same ends.
pub(crate) fn erase_loops(walk: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
    let mut position = std::collections::HashMap::new();
    for &v in walk {
        if let Some(&i) = position.get(&v) {
            for u in out.drain(i + 1..) {
                position.remove(&u);
            }
        } else {
            position.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

/// Cuts an `X`-`Y` path out of a path that starts in `x` and reaches `y`:
/// from the last `x` vertex before the first `y` vertex up to that `y` vertex.
pub(crate) fn trim_to_xy(path: &[Vertex], x: &VertexSet, y: &VertexSet) -> Option<Vec<Vertex>> {
    let end = path.iter().position(|&v| y.contains(v))?;
    let start = path[..=end].iter().rposition(|&v| x.contains(v))?;
    Some(path[start..=end].to_vec())
}

/// Breadth-first search result.
pub(crate) struct Bfs {
    pub dist: Vec<Option<usize>>,
    pub parent: Vec<Option<Vertex>>,
    pub order: Vec<Vertex>,
}

impl Bfs {
    /// Vertex sequence from the source tree root to `v`.
    pub fn path_to(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }
}

/// A finite simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range ids.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ParallelEdge(w[0].0, w[0].1));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { adjacency, edges: list })
    }

    pub fn empty(vertex_count: usize) -> Graph {
        Graph { adjacency: vec![Vec::new(); vertex_count], edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, vertex_count: self.vertex_count() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "vertex set over {} vertices used with a graph on {}",
                s.universe(),
                self.vertex_count()
            )))
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Multi-source BFS restricted to `allowed` (sources outside it are
    /// skipped), stopping at depth `limit` when given.
    pub(crate) fn bfs<I>(&self, sources: I, allowed: Option<&VertexSet>, limit: Option<usize>) -> Bfs
    where
        I: IntoIterator<Item = Vertex>,
    {
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let mut srcs: Vec<Vertex> = sources.into_iter().collect();
        srcs.sort_unstable();
        for s in srcs {
            if dist[s].is_none() && allowed.is_none_or(|a| a.contains(s)) {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let du = dist[u].expect("queued vertices have a distance");
            if limit.is_some_and(|l| du >= l) {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w].is_none() && allowed.is_none_or(|a| a.contains(w)) {
                    dist[w] = Some(du + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        Bfs { dist, parent, order }
    }

    /// Distances from the set `sources` to every vertex.
    pub fn distances_from(&self, sources: &VertexSet) -> Vec<Distance> {
        self.bfs(sources.iter(), None, None).dist.into_iter().map(Distance::from).collect()
    }

    /// Length of a shortest `u`-`v` path.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs([u], None, None).dist[v].into())
    }

    /// All vertices within distance `radius` of some seed.
    pub fn ball(&self, seeds: &VertexSet, radius: usize) -> Result<VertexSet> {
        self.check_set(seeds)?;
        if seeds.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let bfs = self.bfs(seeds.iter(), None, Some(radius));
        let mut out = VertexSet::new(self.vertex_count());
        for v in bfs.order {
            out.insert(v);
        }
        Ok(out)
    }

    /// Ball around a single vertex.
    pub fn ball_around(&self, center: Vertex, radius: usize) -> Result<VertexSet> {
        self.check_vertex(center)?;
        let mut seeds = VertexSet::new(self.vertex_count());
        seeds.insert(center);
        self.ball(&seeds, radius)
    }

    /// Connected components of `G - removed`, ordered by smallest vertex.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let allowed = removed.complement();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if seen.contains(v) {
                continue;
            }
            let bfs = self.bfs([v], Some(&allowed), None);
            let mut comp = VertexSet::new(self.vertex_count());
            for u in bfs.order {
                comp.insert(u);
                seen.insert(u);
            }
            out.push(comp);
        }
        out
    }

    /// Minimum distance between a vertex of `s1` and a vertex of `s2`.
    pub fn subgraph_distance(&self, s1: &VertexSet, s2: &VertexSet) -> Result<Distance> {
        self.check_set(s1)?;
        self.check_set(s2)?;
        if s1.is_empty() || s2.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let bfs = self.bfs(s1.iter(), None, None);
        Ok(s2.iter().filter_map(|v| bfs.dist[v]).min().into())
    }

    /// A shortest `X`-`Y` path, or `None` when there is none (in particular
    /// when `x` or `y` is empty). Every subpath of the result is a shortest
    /// path in `g` between its ends.
    pub fn shortest_xy_path(&self, x: &VertexSet, y: &VertexSet) -> Option<Path> {
        self.shortest_xy_path_within(x, y, None)
    }

    /// As [`Graph::shortest_xy_path`] but only using vertices of `allowed`.
    pub fn shortest_xy_path_within(&self, x: &VertexSet, y: &VertexSet, allowed: Option<&VertexSet>) -> Option<Path> {
        let walk = self.shortest_path_between(x, y, allowed)?;
        let trimmed = trim_to_xy(walk.vertices(), x, y)?;
        Some(Path(trimmed))
    }

    /// A shortest path from some vertex of `sources` to the nearest vertex of
    /// `targets` (lowest id among the nearest), inside `allowed`.
    pub fn shortest_path_between(
        &self,
        sources: &VertexSet,
        targets: &VertexSet,
        allowed: Option<&VertexSet>,
    ) -> Option<Path> {
        if sources.is_empty() || targets.is_empty() {
            return None;
        }
        let bfs = self.bfs(sources.iter(), allowed, None);
        let best = targets.iter().filter_map(|t| bfs.dist[t].map(|d| (d, t))).min()?;
        Some(Path(bfs.path_to(best.1)))
    }

    /// Shortest path between two vertices, inside `allowed` when given.
    pub fn shortest_path(&self, u: Vertex, v: Vertex, allowed: Option<&VertexSet>) -> Option<Path> {
        let bfs = self.bfs([u], allowed, None);
        bfs.dist[v].map(|_| Path(bfs.path_to(v)))
    }

    /// The `d`-th power: same vertices, `u ~ v` iff `1 <= dist(u, v) <= d`.
    pub fn power(&self, d: usize) -> Result<Graph> {
        if d == 0 {
            return Err(Error::InvalidParameter("graph power needs d >= 1".into()));
        }
        let mut edges = Vec::new();
        for u in 0..self.vertex_count() {
            let bfs = self.bfs([u], None, Some(d));
            edges.extend(bfs.order.into_iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        Graph::new(self.vertex_count(), edges)
    }

    /// Replaces every edge by a path with `k` new internal vertices. Original
    /// ids are kept; new ids follow in sorted edge order, then position from
    /// the smaller end.
    pub fn subdivide(&self, k: usize) -> Graph {
        self.subdivide_edges(k, |_| true)
    }

    /// Subdivides only the edges accepted by `select`, `k` times each.
    pub fn subdivide_edges<F>(&self, k: usize, mut select: F) -> Graph
    where
        F: FnMut((Vertex, Vertex)) -> bool,
    {
        let mut next = self.vertex_count();
        let mut edges = Vec::with_capacity(self.edge_count() * (k + 1));
        for &(u, v) in &self.edges {
            if k == 0 || !select((u, v)) {
                edges.push((u, v));
                continue;
            }
            let mut prev = u;
            for _ in 0..k {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Graph::new(next, edges).expect("subdivision of a simple graph is simple")
    }

    /// Turns paths of `self.power(d)` into paths of `self` with the same ends:
    /// every power edge is replaced by a shortest connector of length at most
    /// `d` and the resulting walk has its loops erased. Paths at pairwise
    /// distance at least 3 in the power graph come out at pairwise distance
    /// at least `d`.
    pub fn lift_power_paths(&self, d: usize, paths: &[Path]) -> Result<Vec<Path>> {
        if d == 0 {
            return Err(Error::InvalidParameter("graph power needs d >= 1".into()));
        }
        paths
            .iter()
            .map(|p| {
                let vs = p.vertices();
                let mut seen = VertexSet::new(self.vertex_count());
                for &v in vs {
                    self.check_vertex(v)?;
                    if !seen.insert(v) {
                        return Err(Error::InvalidPath(format!("vertex {v} repeated")));
                    }
                }
                let mut walk = vec![vs[0]];
                for hop in vs.windows(2) {
                    let (u, w) = (hop[0], hop[1]);
                    let bfs = self.bfs([u], None, Some(d));
                    match bfs.dist[w] {
                        Some(l) if l >= 1 => walk.extend_from_slice(&bfs.path_to(w)[1..]),
                        _ => {
                            return Err(Error::InvalidPath(format!("{u} and {w} are not adjacent in the power graph")))
                        }
                    }
                }
                Ok(Path(erase_loops(&walk)))
            })
            .collect()
    }
}
