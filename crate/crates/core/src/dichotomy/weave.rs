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

//! Weaving two `X`-`Y` paths through an orchard.
//!
//! One partial path starts along `P`, the other through the first tree. At
//! each boundary the path that currently sits on `P` at `alpha_i` steps into
//! the next tree and the one sitting at `r_i` leaves its tree towards
//! `beta_i` and runs along `P`, so the two alternate between `P` and the
//! trees. Singleton trees need a lookahead so that the stretches of `P`
//! used by the two paths stay at least `12d` apart.

use std::collections::HashMap;

use super::orchard::Orchard;
use super::profiles::{BridgedSequence, Tag};
use super::{at, Constants};
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{erase_loops, trim_to_xy, Graph, Path, Vertex, VertexSet};

/// Connectors, anchors and through-paths for every tree and boundary.
/// Positions on `P` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeaveState {
    /// `alpha[i]` is the left end of entry `w(i) + 1`; the last one is `n`.
    pub alpha: Vec<usize>,
    /// `beta[i]` is the right end of entry `w(i)`, for `i < t - 1`.
    pub beta: Vec<usize>,
    /// `A_i`: shortest path from `v_{alpha_i}` to tree `i + 1`.
    pub enter: Vec<Path>,
    /// `B_i`: shortest path from `v_{beta_i}` to tree `i`.
    pub leave: Vec<Path>,
    /// `Q_i`: shortest `l_i`-`r_i` path inside tree `i`.
    pub through: Vec<Path>,
    /// Tag of the only member of each singleton tree.
    pub singleton: Vec<Option<Tag>>,
}

impl WeaveState {
    pub fn new(
        g: &Graph,
        seq: &BridgedSequence,
        orchard: &Orchard,
        p: &Path,
        x: &VertexSet,
        y: &VertexSet,
        k: &Constants,
    ) -> Result<Self> {
        let t = orchard.len();
        let n = p.vertices().len();
        ensure_internal!(t > 0 && !seq.is_empty(), "weave needs a nonempty orchard");
        let trees = &orchard.trees;
        let position = |value: i64| -> Result<usize> {
            ensure_internal!(1 <= value && value <= n as i64, "anchor {value} is not on P");
            Ok(value as usize)
        };
        let single = |v: Vertex| VertexSet::from_vertices(g.vertex_count(), [v]);
        let mut state = WeaveState {
            alpha: Vec::with_capacity(t),
            beta: Vec::with_capacity(t),
            enter: Vec::with_capacity(t),
            leave: Vec::with_capacity(t),
            through: Vec::with_capacity(t),
            singleton: trees
                .iter()
                .map(|tree| (tree.index_set.len() == 1).then(|| seq.tag(tree.index_set[0])))
                .collect(),
        };
        for i in 0..t - 1 {
            let w = trees[i].max();
            let (alpha, beta) = (position(seq.a(w + 1))?, position(seq.b(w))?);
            let connector = |from: usize, tree: usize| -> Result<Path> {
                let path = g
                    .shortest_path_between(&single(at(p, from))?, trees[tree].vertices(), None)
                    .ok_or_else(|| Error::Internal(format!("tree {tree} is unreachable from P")))?;
                ensure_internal!(
                    path.len() <= k.d1 + 1,
                    "connector from position {from} to tree {tree} has length {}",
                    path.len()
                );
                Ok(path)
            };
            state.enter.push(connector(alpha, i + 1)?);
            state.leave.push(connector(beta, i)?);
            state.alpha.push(alpha);
            state.beta.push(beta);
        }
        state.alpha.push(n);
        let first_x = x.intersection(seq.component(0)).first();
        let last_y = y.intersection(seq.component(seq.len() - 1)).first();
        let (Some(l0), Some(rt)) = (first_x, last_y) else {
            return Err(Error::Internal("sequence does not start in X and end in Y".into()));
        };
        for (i, tree) in trees.iter().enumerate() {
            let l = if i == 0 { l0 } else { state.enter[i - 1].last() };
            let r = if i + 1 == t { rt } else { state.leave[i].last() };
            let q = g
                .shortest_path(l, r, Some(tree.vertices()))
                .ok_or_else(|| Error::Internal(format!("tree {i} is not connected")))?;
            state.through.push(q);
        }
        Ok(state)
    }

    pub fn tree_count(&self) -> usize {
        self.through.len()
    }
}

/// The four ways of extending the partial paths at boundary `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// The path at `alpha_i` enters tree `i + 1`; the other leaves tree `i`
    /// and runs along `P` to `alpha_{i+1}`. Roles swap.
    Step,
    /// Both paths pass one tree: one through tree `i + 1` to `alpha_{i+2}`,
    /// the other along `P` to `alpha_{i+1}` and into tree `i + 2`.
    Pair,
    /// As `Pair`, but the paths end at `alpha_{i+3}` and in tree `i + 3`.
    Triple,
    /// The path at `alpha_i` runs along `P` to `alpha_{i+1}` and enters tree
    /// `i + 2`; the other leaves tree `i` and runs to `alpha_{i+2}`. Tree
    /// `i + 1` is skipped. Roles swap.
    Skip,
}

/// Which update the weave applied at a boundary, and why.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeaveCase {
    /// The next tree has several members, or is the last tree.
    Step { at: usize },
    /// Singleton bridging entry next, `beta_i` well before `alpha_{i+2}`.
    BridgeNear { at: usize },
    /// Singleton bridging entry next, otherwise; advances three trees.
    BridgeFar { at: usize },
    /// Singleton chain entry next, `beta_i` and `beta_{i+1}` far apart.
    ChainApart { at: usize },
    /// Singleton chain entry next, `beta_i` and `beta_{i+1}` close.
    ChainClose { at: usize },
    /// The rule above would bring the two paths within `12d` along `P`;
    /// this move was used instead.
    Override { at: usize, used: Move },
    /// No weave keeps the paths `12d` apart along `P`. This move was chosen
    /// because its new pieces are at distance at least `d` from the other
    /// path, apart from pairs a merge can resolve.
    Relaxed { at: usize, used: Move },
}

/// The part of a partial path a vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Piece {
    Base,
    Through(usize),
    Enter(usize),
    Leave(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCategory {
    /// Through-paths of two different trees are too close.
    ThroughThrough { trees: (usize, usize) },
    /// A through-path is too close to a connector of another tree.
    ThroughConnector { through: usize, connector_tree: usize },
}

/// Two vertices of the woven paths at distance below `d`, with a path from
/// one tree to another derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub p1: Vertex,
    pub p2: Vertex,
    pub category: ViolationCategory,
    pub witness: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeaveOutcome {
    Paths { p1: Path, p2: Path, cases: Vec<WeaveCase> },
    Violation(Violation),
}

/// One partial path. The footprint lists the stretches of `P` it uses and
/// the positions where its connectors meet `P`.
#[derive(Clone)]
struct Runner {
    walk: Vec<Vertex>,
    labels: HashMap<Vertex, Vec<Piece>>,
    footprint: Vec<(usize, usize)>,
}

impl Runner {
    fn new(piece: Piece, vertices: Vec<Vertex>) -> Self {
        let mut runner = Runner { walk: vec![vertices[0]], labels: HashMap::new(), footprint: Vec::new() };
        runner.push(piece, &vertices).expect("starts at its own first vertex");
        runner
    }

    fn push(&mut self, piece: Piece, vertices: &[Vertex]) -> Result<()> {
        ensure_internal!(self.walk.last() == vertices.first(), "piece {piece:?} does not continue the partial path");
        self.walk.extend_from_slice(&vertices[1..]);
        for &v in vertices {
            let labels = self.labels.entry(v).or_default();
            if !labels.contains(&piece) {
                labels.push(piece);
            }
        }
        Ok(())
    }
}

/// Whether a close pair between these pieces of different paths yields a
/// path between two different trees.
fn resolvable(a: Piece, b: Piece) -> bool {
    let tree_of_connector = |p: Piece| match p {
        Piece::Enter(j) => Some(j + 1),
        Piece::Leave(j) => Some(j),
        _ => None,
    };
    match (a, b) {
        (Piece::Through(i), Piece::Through(j)) => i != j,
        (Piece::Through(i), other) | (other, Piece::Through(i)) => tree_of_connector(other).is_some_and(|j| j != i),
        _ => false,
    }
}

/// `v_from .. v_to` along `P`, in either direction.
fn base_segment(p: &Path, from: usize, to: usize) -> Vec<Vertex> {
    let vs = p.vertices();
    if from <= to {
        vs[from - 1..to].to_vec()
    } else {
        vs[to - 1..from].iter().rev().copied().collect()
    }
}

#[derive(Clone, Copy)]
enum Seg {
    Enter(usize),
    Leave(usize),
    Through(usize),
    Base(usize, usize),
}

/// Segments appended to the path at `alpha_i` and to the other one, the
/// number of trees advanced, and whether the roles swap.
fn plan(mv: Move, i: usize, alpha: &[usize], beta: &[usize]) -> (Vec<Seg>, Vec<Seg>, usize, bool) {
    use Seg::*;
    match mv {
        Move::Step => (vec![Enter(i), Through(i + 1)], vec![Leave(i), Base(beta[i], alpha[i + 1])], 1, true),
        Move::Pair => (
            vec![Enter(i), Through(i + 1), Leave(i + 1), Base(beta[i + 1], alpha[i + 2])],
            vec![Leave(i), Base(beta[i], alpha[i + 1]), Enter(i + 1), Through(i + 2)],
            2,
            false,
        ),
        Move::Triple => (
            vec![Enter(i), Through(i + 1), Leave(i + 1), Base(beta[i + 1], alpha[i + 3])],
            vec![Leave(i), Base(beta[i], alpha[i + 2]), Enter(i + 2), Through(i + 3)],
            3,
            false,
        ),
        Move::Skip => (
            vec![Base(alpha[i], alpha[i + 1]), Enter(i + 1), Through(i + 2)],
            vec![Leave(i), Base(beta[i], alpha[i + 2])],
            2,
            true,
        ),
    }
}

fn advance(mv: Move) -> usize {
    match mv {
        Move::Step => 1,
        Move::Pair | Move::Skip => 2,
        Move::Triple => 3,
    }
}

/// Upper bound on partial weaves explored before giving up.
const SEARCH_LIMIT: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Admission {
    /// Footprints on `P` at least `12d` apart.
    Footprint,
    /// New pieces at distance at least `d` from the other path, except for
    /// pairs a merge resolves.
    Distance,
}

struct Weaver<'a> {
    g: &'a Graph,
    state: &'a WeaveState,
    p: &'a Path,
    gap: usize,
    d: usize,
    admission: Admission,
    explored: usize,
}

impl Weaver<'_> {
    /// The update the case analysis prescribes at boundary `i`.
    fn rule(&self, i: usize) -> (Move, WeaveCase) {
        let (t, alpha, beta) = (self.state.tree_count(), &self.state.alpha, &self.state.beta);
        let far = |u: usize, v: usize| u.abs_diff(v) >= self.gap;
        let tag = if i + 2 == t { None } else { self.state.singleton[i + 1] };
        match tag {
            None => (Move::Step, WeaveCase::Step { at: i }),
            Some(Tag::S) if beta[i] <= alpha[i + 2] && far(beta[i], alpha[i + 2]) => {
                (Move::Pair, WeaveCase::BridgeNear { at: i })
            }
            Some(Tag::S) => (Move::Triple, WeaveCase::BridgeFar { at: i }),
            Some(Tag::M) if far(beta[i], beta[i + 1]) => (Move::Pair, WeaveCase::ChainApart { at: i }),
            Some(Tag::M) => (Move::Skip, WeaveCase::ChainClose { at: i }),
        }
    }

    fn segment(&self, seg: Seg) -> (Piece, Vec<Vertex>, (usize, usize)) {
        let s = self.state;
        match seg {
            Seg::Enter(j) => (Piece::Enter(j), s.enter[j].vertices().to_vec(), (s.alpha[j], s.alpha[j])),
            Seg::Leave(j) => (Piece::Leave(j), s.leave[j].reversed().into_vertices(), (s.beta[j], s.beta[j])),
            Seg::Through(j) => (Piece::Through(j), s.through[j].vertices().to_vec(), (0, 0)),
            Seg::Base(from, to) => (Piece::Base, base_segment(self.p, from, to), (from.min(to), from.max(to))),
        }
    }

    /// Appends `segs` to `runner`, failing when the result is not admissible
    /// against `other`.
    fn extend(&self, runner: &mut Runner, other: &Runner, segs: &[Seg]) -> Result<bool> {
        for &seg in segs {
            let (piece, vertices, spot) = self.segment(seg);
            runner.push(piece, &vertices)?;
            if self.admission == Admission::Distance {
                let bfs = self.g.bfs(vertices.iter().copied(), None, Some(self.d - 1));
                let clash = bfs
                    .order
                    .iter()
                    .any(|v| other.labels.get(v).is_some_and(|theirs| !theirs.iter().any(|&q| resolvable(piece, q))));
                if clash {
                    return Ok(false);
                }
            } else if !matches!(seg, Seg::Through(_)) {
                let apart = other.footprint.iter().all(|&(lo, hi)| {
                    let gap = (lo as i64 - spot.1 as i64).max(spot.0 as i64 - hi as i64);
                    gap >= self.gap as i64
                });
                if !apart {
                    return Ok(false);
                }
                runner.footprint.push(spot);
            }
        }
        Ok(true)
    }

    /// Depth-first over moves, the prescribed one first.
    fn search(
        &mut self,
        i: usize,
        on_p: usize,
        runners: [Runner; 2],
        cases: &mut Vec<WeaveCase>,
    ) -> Result<Option<[Runner; 2]>> {
        let t = self.state.tree_count();
        if i + 1 == t {
            return Ok(Some(runners));
        }
        self.explored += 1;
        if self.explored > SEARCH_LIMIT {
            return Ok(None);
        }
        let (preferred, case) = self.rule(i);
        let moves = [preferred, Move::Step, Move::Pair, Move::Triple, Move::Skip];
        for (k, &mv) in moves.iter().enumerate() {
            if (k > 0 && mv == preferred) || i + advance(mv) >= t {
                continue;
            }
            let (on_alpha, on_r, steps, swap) = plan(mv, i, &self.state.alpha, &self.state.beta);
            let mut next = runners.clone();
            let [first, second] = &mut next;
            let (ar, rr) = if on_p == 0 { (first, second) } else { (second, first) };
            if !self.extend(ar, rr, &on_alpha)? || !self.extend(rr, ar, &on_r)? {
                continue;
            }
            cases.push(match (self.admission, k) {
                (Admission::Distance, _) => WeaveCase::Relaxed { at: i, used: mv },
                (_, 0) => case,
                _ => WeaveCase::Override { at: i, used: mv },
            });
            let role = if swap { 1 - on_p } else { on_p };
            if let Some(done) = self.search(i + steps, role, next, cases)? {
                return Ok(Some(done));
            }
            cases.pop();
        }
        Ok(None)
    }
}

/// Builds the two paths and either returns them or the first pair of
/// vertices closer than `d`, with a witness path joining two trees.
///
/// At each boundary the prescribed update is tried first. An update is
/// admissible when the footprints of the two partial paths on `P` stay at
/// least `12d` apart; if the prescribed one is not, the other updates are
/// tried, backtracking when a partial weave cannot be completed. When no
/// weave is admissible in this sense, the search is repeated accepting any
/// update whose new pieces keep distance `d` from the other path except
/// where a merge applies.
pub fn weave(
    g: &Graph,
    state: &WeaveState,
    p: &Path,
    x: &VertexSet,
    y: &VertexSet,
    k: &Constants,
) -> Result<WeaveOutcome> {
    let alpha0 = state.alpha[0];
    let mut start = Runner::new(Piece::Base, base_segment(p, 1, alpha0));
    start.footprint.push((1, alpha0));
    let runners = [start, Runner::new(Piece::Through(0), state.through[0].vertices().to_vec())];
    let mut weaver = Weaver { g, state, p, gap: k.gap_route, d: k.d, admission: Admission::Footprint, explored: 0 };
    let mut cases = Vec::new();
    let mut found = weaver.search(0, 0, runners.clone(), &mut cases)?;
    if found.is_none() {
        weaver.admission = Admission::Distance;
        weaver.explored = 0;
        cases.clear();
        found = weaver.search(0, 0, runners, &mut cases)?;
    }
    let runners = found.ok_or_else(|| Error::Internal("no weave keeps the paths apart".into()))?;

    let finish = |r: &Runner| -> Result<Path> {
        let path = trim_to_xy(&erase_loops(&r.walk), x, y)
            .ok_or_else(|| Error::Internal("woven walk is not an X-Y walk".into()))?;
        Path::new(g, path).map_err(|e| Error::Internal(format!("woven path is invalid: {e}")))
    };
    let (p1, p2) = (finish(&runners[0])?, finish(&runners[1])?);
    match closest_pair(g, &p1, &p2, k.d) {
        None => Ok(WeaveOutcome::Paths { p1, p2, cases }),
        Some((u, v)) => classify(g, state, &runners, u, v).map(WeaveOutcome::Violation),
    }
}

/// The pair `(u, v)`, `u` on `p1` and `v` on `p2`, at distance below `d`
/// that minimises the distance, then the position of `v` on `p2`.
fn closest_pair(g: &Graph, p1: &Path, p2: &Path, d: usize) -> Option<(Vertex, Vertex)> {
    let bfs = g.bfs(p1.vertices().iter().copied(), None, Some(d - 1));
    let v = p2
        .vertices()
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| bfs.dist[v].filter(|&dv| dv < d).map(|dv| (dv, i, v)))
        .min()?
        .2;
    Some((bfs.path_to(v)[0], v))
}

fn classify(g: &Graph, state: &WeaveState, runners: &[Runner; 2], u: Vertex, v: Vertex) -> Result<Violation> {
    let (lu, lv) = (&runners[0].labels[&u], &runners[1].labels[&v]);
    let shortest = |a: Vertex, b: Vertex| {
        g.shortest_path(a, b, None)
            .map(Path::into_vertices)
            .ok_or_else(|| Error::Internal("close vertices are disconnected".into()))
    };
    for &a in lu {
        for &b in lv {
            if let (Piece::Through(i), Piece::Through(j)) = (a, b) {
                if i != j {
                    return Ok(Violation {
                        p1: u,
                        p2: v,
                        category: ViolationCategory::ThroughThrough { trees: (i, j) },
                        witness: Path::from_vec_unchecked(shortest(u, v)?),
                    });
                }
            }
        }
    }
    let sides = [(lu, lv, u, v), (lv, lu, v, u)];
    for (on_q, on_c, q_vertex, c_vertex) in sides {
        for &a in on_q.iter() {
            let Piece::Through(i) = a else { continue };
            for &b in on_c.iter() {
                let (connector, tree) = match b {
                    Piece::Enter(j) => (&state.enter[j], j + 1),
                    Piece::Leave(j) => (&state.leave[j], j),
                    _ => continue,
                };
                if tree == i {
                    continue;
                }
                let vs = connector.vertices();
                let from = vs.iter().position(|&w| w == c_vertex).expect("labelled vertex lies on its piece");
                let mut walk = shortest(q_vertex, c_vertex)?;
                walk.extend_from_slice(&vs[from + 1..]);
                return Ok(Violation {
                    p1: u,
                    p2: v,
                    category: ViolationCategory::ThroughConnector { through: i, connector_tree: tree },
                    witness: Path::from_vec_unchecked(erase_loops(&walk)),
                });
            }
        }
    }
    Err(Error::Internal(format!("vertices {u} ({lu:?}) and {v} ({lv:?}) are too close in an unexpected way")))
}
