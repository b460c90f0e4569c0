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

//! Instance families: the lower-bound construction, grids, seeded random
//! graphs, and "rail" graphs that realise prescribed component intervals
//! along a long base path.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dichotomy::Constants;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub x: VertexSet,
    pub y: VertexSet,
    pub d: usize,
    pub label: String,
}

impl Instance {
    pub fn new(graph: Graph, x: Vec<Vertex>, y: Vec<Vertex>, d: usize, label: impl Into<String>) -> Result<Self> {
        let n = graph.vertex_count();
        Ok(Instance {
            x: VertexSet::from_vertices(n, x)?,
            y: VertexSet::from_vertices(n, y)?,
            graph,
            d,
            label: label.into(),
        })
    }
}

/// The 3 x 7 lower-bound graph with every edge subdivided `d - 2` times.
///
/// Grid vertex (row r, column c), both 1-based, gets id `7(r - 1) + c - 1`.
/// The four vertical edges of the end columns carry one extra subdivision
/// vertex each (ids 21..24); without them the ball of radius one around the
/// middle terminal would already contain all three terminals of its side.
pub fn figure1_instance(d: usize) -> Result<Instance> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("figure1 needs d >= 2, got {d}")));
    }
    let id = |row: usize, col: usize| 7 * (row - 1) + (col - 1);
    let mut edges = Vec::new();
    for row in 1..=3 {
        for col in 1..7 {
            edges.push((id(row, col), id(row, col + 1)));
        }
    }
    for col in 1..=7 {
        edges.push((id(1, col), id(2, col)));
        edges.push((id(2, col), id(3, col)));
    }
    for i in 1..=5 {
        edges.push((id(1, i), id(3, i + 2)));
    }
    let base = Graph::new(21, edges)?;
    let end_columns = |(u, v): (Vertex, Vertex)| {
        let vertical = v == u + 7;
        vertical && (u % 7 == 0 || u % 7 == 6)
    };
    let drawn = base.subdivide_edges(1, end_columns);
    let graph = drawn.subdivide(d - 2);
    Instance::new(
        graph,
        vec![id(1, 1), id(2, 1), id(3, 1)],
        vec![id(1, 7), id(2, 7), id(3, 7)],
        d,
        format!("figure1(d={d})"),
    )
}

/// `rows x cols` grid, `X` = left column, `Y` = right column.
pub fn grid_instance(rows: usize, cols: usize, d: usize) -> Result<Instance> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Instance::new(
        Graph::new(rows * cols, edges)?,
        (0..rows).map(|r| id(r, 0)).collect(),
        (0..rows).map(|r| id(r, cols - 1)).collect(),
        d,
        format!("grid({rows}x{cols},d={d})"),
    )
}

/// Erdős–Rényi graph with disjoint random terminal sets, reproducible from `seed`.
pub fn random_instance(
    n: usize,
    edge_probability: f64,
    x_size: usize,
    y_size: usize,
    seed: u64,
    d: usize,
) -> Result<Instance> {
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(Error::InvalidParameter(format!("edge probability {edge_probability} not in [0, 1]")));
    }
    if x_size + y_size > n {
        return Err(Error::InvalidParameter(format!(
            "cannot pick disjoint terminal sets of sizes {x_size} and {y_size} from {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_probability) {
                edges.push((u, v));
            }
        }
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    Instance::new(
        Graph::new(n, edges)?,
        order[..x_size].to_vec(),
        order[x_size..x_size + y_size].to_vec(),
        d,
        format!("random(n={n},p={edge_probability},seed={seed},d={d})"),
    )
}

/// One component placed beside the base path. `start`/`end` are 1-based base
/// path positions of the rungs that attach it; `None` makes that end an `X`
/// (for `start`) or `Y` (for `end`) terminal instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rail {
    pub start: Option<usize>,
    pub end: Option<usize>,
}

/// Extra structure between two rails that keeps them separate components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// A vertex at distance `5d` from base position `at`, adjacent to the
    /// vertices of both rails that project onto `at`. Puts the rails at
    /// distance 2.
    Bridge { rails: (usize, usize), at: usize },
    /// An edge from the top of a rung of rail `from` (the rung at its start
    /// or at its end) to the vertex of rail `to` projecting onto the same
    /// position. The rung top is at distance `5d` from the base path.
    Chord { from: usize, at_end: bool, to: usize },
}

/// A base path `v_1 .. v_n` (ids `0..n`, `v_1 ∈ X`, `v_n ∈ Y`) with rails at
/// distance exactly `5d + 1`. A rail attached at positions `a <= b` projects
/// onto the interval `[a, b]`; rails are long enough that the base path stays
/// a shortest `X`-`Y` path.
pub fn rail_instance(d: usize, n: usize, rails: &[Rail], links: &[Link]) -> Result<Instance> {
    if d == 0 || n < 2 {
        return Err(Error::InvalidParameter("rail instances need d >= 1 and n >= 2".into()));
    }
    let reach = Constants::new(d).d1;
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut next = n;
    let mut fresh = |count: usize| {
        let first = next;
        next += count;
        first..next
    };
    let mut x = vec![0];
    let mut y = vec![n - 1];
    // (first vertex, length, start position) per rail
    let mut layout = Vec::with_capacity(rails.len());
    // (position, top vertex) of the start and end rung of each rail
    let mut rungs = Vec::with_capacity(rails.len());
    for rail in rails {
        for p in [rail.start, rail.end].into_iter().flatten() {
            if p == 0 || p > n {
                return Err(Error::InvalidParameter(format!("rail position {p} outside 1..={n}")));
            }
        }
        let len = match (rail.start, rail.end) {
            (Some(a), Some(b)) if a <= b => b - a,
            (Some(_), Some(_)) => return Err(Error::InvalidParameter("rail start after its end".into())),
            (None, Some(b)) => b + n,
            (Some(_), None) | (None, None) => 2 * n,
        };
        let body: Vec<Vertex> = fresh(len + 1).collect();
        edges.extend(body.windows(2).map(|w| (w[0], w[1])));
        let mut rung = |pos: usize, top: Vertex, edges: &mut Vec<(Vertex, Vertex)>| {
            let mut prev = pos - 1;
            for c in fresh(reach) {
                edges.push((prev, c));
                prev = c;
            }
            edges.push((prev, top));
            (pos, prev)
        };
        let start_rung = match rail.start {
            Some(a) => Some(rung(a, body[0], &mut edges)),
            None => {
                x.push(body[0]);
                None
            }
        };
        let end_rung = match rail.end {
            Some(b) => Some(rung(b, body[len], &mut edges)),
            None => {
                y.push(body[len]);
                None
            }
        };
        rungs.push([start_rung, end_rung]);
        let origin = match (rail.start, rail.end) {
            (Some(a), _) => a as i64,
            (None, Some(b)) => b as i64 - len as i64,
            (None, None) => 0,
        };
        layout.push((body[0], len, origin));
    }
    let above = |r: usize, at: usize| {
        let (first, len, origin): (Vertex, usize, i64) = layout[r];
        first + (at as i64 - origin).clamp(0, len as i64) as usize
    };
    let bad = |link: &Link| Error::InvalidParameter(format!("bad link {link:?}"));
    for link in links {
        match *link {
            Link::Bridge { rails: (i, j), at } => {
                if i >= rails.len() || j >= rails.len() || i == j || at == 0 || at > n {
                    return Err(bad(link));
                }
                let mut prev = at - 1;
                for c in fresh(reach) {
                    edges.push((prev, c));
                    prev = c;
                }
                edges.push((prev, above(i, at)));
                edges.push((prev, above(j, at)));
            }
            Link::Chord { from, at_end, to } => {
                if from >= rails.len() || to >= rails.len() || from == to {
                    return Err(bad(link));
                }
                let (at, top) = rungs[from][usize::from(at_end)].ok_or_else(|| bad(link))?;
                edges.push((top, above(to, at)));
            }
        }
    }
    Instance::new(Graph::new(next, edges)?, x, y, d, format!("rails(d={d},n={n},rails={})", rails.len()))
}

/// Two rails overlapping over most of a base path of length `58d + 50`: one
/// carries an extra `X` terminal, the other an extra `Y` terminal. With
/// `bridged`, a vertex inside the `5d`-ball of the path sits next to both
/// rails, putting them at distance 2.
pub fn two_rails_instance(d: usize, bridged: bool) -> Result<Instance> {
    let n = Constants::new(d).d2 + 50;
    let rails = [Rail { start: None, end: Some(n - 10) }, Rail { start: Some(10), end: None }];
    let links: Vec<Link> = if bridged { vec![Link::Bridge { rails: (0, 1), at: n / 2 }] } else { vec![] };
    let mut inst = rail_instance(d, n, &rails, &links)?;
    inst.label = format!("two-rails(d={d},bridged={bridged})");
    Ok(inst)
}

/// Overlap between consecutive rails of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gap {
    /// Overlap `30d`.
    Wide,
    /// Overlap `10d`, plus a rail spanning the pair by `58d + left` on the
    /// left and `58d + right` on the right. Both extensions stay below `51d`
    /// so the spanning rail contains neither neighbour.
    Close { left: usize, right: usize },
}

/// Rails forming an interlaced chain along the base path: the first carries
/// an `X` terminal, the last a `Y` terminal, and consecutive chain rails
/// overlap as given by `gaps`. Returns the base path length and the rails,
/// chain rails first, then the spanning rails in gap order.
pub fn chain_rails(d: usize, gaps: &[Gap]) -> (usize, Vec<Rail>) {
    let k = Constants::new(d);
    let span = k.d2 + 61 * d;
    let overlap = |g: Gap| if g == Gap::Wide { 30 * d } else { 10 * d };
    let mut ends = vec![(0, k.d2 + 100 * d)];
    for (i, &g) in gaps.iter().enumerate() {
        let a = ends[i].1 - overlap(g);
        ends.push((a, a + span));
    }
    let last = ends.len() - 1;
    let n = ends[last.saturating_sub(1)].1 + 2 * k.d2;
    let mut rails: Vec<Rail> = ends
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Rail { start: (i > 0).then_some(a), end: (i < last).then_some(b) })
        .collect();
    for (i, &g) in gaps.iter().enumerate() {
        if let Gap::Close { left, right } = g {
            let (left, right) = (left.min(51 * d - 1), right.min(51 * d - 1));
            rails.push(Rail { start: Some(ends[i + 1].0 - k.d2 - left), end: Some(ends[i].1 + k.d2 + right) });
        }
    }
    (n, rails)
}

/// [`rail_instance`] over [`chain_rails`].
pub fn chain_instance(d: usize, gaps: &[Gap], links: &[Link]) -> Result<Instance> {
    let (n, rails) = chain_rails(d, gaps);
    let mut inst = rail_instance(d, n, &rails, links)?;
    let pattern: String = gaps.iter().map(|&g| if g == Gap::Wide { 'w' } else { 'c' }).collect();
    inst.label = format!("chain(d={d},gaps={pattern},links={})", links.len());
    Ok(inst)
}
