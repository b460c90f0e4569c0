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

//! Exact exponential-time solvers for small instances.
//!
//! Deciding whether two disjoint anti-complete `X`-`Y` paths exist is
//! NP-complete, so these routines are only meant as ground truth on desk-scale
//! graphs. Every search runs under an [`OracleBudget`] and reports running out
//! of it as [`SearchOutcome::BudgetExceeded`] instead of guessing.

use std::time::{Duration, Instant};

use crate::certificates::verify_ball;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub time_budget: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 512, time_budget: Duration::from_secs(60) }
    }
}

impl OracleBudget {
    pub fn with_time(time_budget: Duration) -> Self {
        OracleBudget { time_budget, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was exhausted without a witness.
    ProvenAbsent,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::ProvenAbsent => "absent",
            SearchOutcome::BudgetExceeded => "budget-exceeded",
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    x: &'a VertexSet,
    y: &'a VertexSet,
    d: usize,
    deadline: Instant,
    exhausted: bool,
    nodes: u64,
}

impl Search<'_> {
    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if !self.exhausted && self.nodes.is_multiple_of(64) && Instant::now() >= self.deadline {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn xy_path_in(&self, allowed: &VertexSet) -> Option<Path> {
        self.g.shortest_xy_path_within(&self.x.intersection(allowed), &self.y.intersection(allowed), Some(allowed))
    }

    /// `allowed` minus everything within distance `d - 1` of `vertices` in `g`.
    fn outside_ball(&self, allowed: &VertexSet, vertices: &[Vertex]) -> VertexSet {
        let bfs = self.g.bfs(vertices.iter().copied(), None, Some(self.d - 1));
        let mut rest = allowed.clone();
        for v in bfs.order {
            rest.remove(v);
        }
        rest
    }

    /// `k` pairwise distant `X`-`Y` paths inside `allowed`.
    fn paths(&mut self, allowed: &VertexSet, k: usize) -> Option<Vec<Path>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let first = self.xy_path_in(allowed)?;
        if k == 1 {
            return Some(vec![first]);
        }
        let starts: Vec<Vertex> = self.x.intersection(allowed).to_vec();
        for s in starts {
            let mut on_path = VertexSet::new(self.g.vertex_count());
            on_path.insert(s);
            let mut prefix = vec![s];
            if let Some(found) = self.extend(allowed, k, &mut prefix, &mut on_path) {
                return Some(found);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }

    /// Depth-first extension of the first path; the remaining `k - 1` paths
    /// are searched outside its `(d - 1)`-ball each time it reaches `Y`.
    fn extend(
        &mut self,
        allowed: &VertexSet,
        k: usize,
        prefix: &mut Vec<Vertex>,
        on_path: &mut VertexSet,
    ) -> Option<Vec<Path>> {
        if self.out_of_time() {
            return None;
        }
        let rest = self.outside_ball(allowed, prefix);
        // the ball only grows as the prefix does
        self.xy_path_in(&rest)?;
        let tip = prefix[prefix.len() - 1];
        if self.y.contains(tip) {
            if let Some(mut others) = self.paths(&rest, k - 1) {
                others.insert(0, Path::from_vec_unchecked(prefix.clone()));
                return Some(others);
            }
            if self.exhausted {
                return None;
            }
        }
        let internal_ok = prefix.len() == 1 || !(self.x.contains(tip) || self.y.contains(tip));
        if !internal_ok {
            return None;
        }
        let mut region = allowed.difference(on_path);
        for v in self.x.iter().filter(|&v| !self.y.contains(v)) {
            region.remove(v);
        }
        let to_y = self.g.bfs(self.y.intersection(&region).iter(), Some(&region), None);
        let mut steps: Vec<(usize, Vertex)> =
            self.g.neighbors(tip).iter().filter_map(|&w| to_y.dist[w].map(|dw| (dw, w))).collect();
        steps.sort_unstable();
        for (_, w) in steps {
            prefix.push(w);
            on_path.insert(w);
            let found = self.extend(allowed, k, prefix, on_path);
            prefix.pop();
            on_path.remove(w);
            if found.is_some() || self.exhausted {
                return found;
            }
        }
        None
    }
}

/// Searches for `k` disjoint `X`-`Y` paths at pairwise distance at least `d`.
pub fn exact_distant_paths(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    d: usize,
    k: usize,
    budget: OracleBudget,
) -> Result<SearchOutcome<Vec<Path>>> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidParameter("exact_distant_paths needs d >= 1 and k >= 1".into()));
    }
    g.check_set(x)?;
    g.check_set(y)?;
    if g.vertex_count() > budget.max_vertices {
        return Ok(SearchOutcome::BudgetExceeded);
    }
    let mut search = Search { g, x, y, d, deadline: Instant::now() + budget.time_budget, exhausted: false, nodes: 0 };
    let found = search.paths(&g.all_vertices(), k);
    Ok(match found {
        Some(paths) => SearchOutcome::Found(paths),
        None if search.exhausted => SearchOutcome::BudgetExceeded,
        None => SearchOutcome::ProvenAbsent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinBall {
    NoXYPath,
    Ball {
        center: Vertex,
        radius: usize,
    },
    /// `X`-`Y` paths live in two different components, so no ball meets them all.
    Unhittable,
}

/// The smallest radius of a ball meeting every `X`-`Y` path, with the lowest
/// center attaining it.
pub fn min_hitting_ball(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<MinBall> {
    g.check_set(x)?;
    g.check_set(y)?;
    if g.shortest_xy_path(x, y).is_none() {
        return Ok(MinBall::NoXYPath);
    }
    let n = g.vertex_count();
    let hits = |c: Vertex, r: usize| verify_ball(g, x, y, c, r).is_ok();
    let mut best: Option<(usize, Vertex)> = None;
    for c in 0..n {
        let cap = best.map_or(n, |(r, _)| r.saturating_sub(1));
        if best.is_some_and(|(r, _)| r == 0) || !hits(c, cap) {
            continue;
        }
        let (mut lo, mut hi) = (0, cap);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if hits(c, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        best = Some((lo, c));
    }
    Ok(match best {
        Some((radius, center)) => MinBall::Ball { center, radius },
        None => MinBall::Unhittable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn two_components() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let (x, y) = (set(6, &[0, 3]), set(6, &[2, 5]));
        for d in [1, 2, 50] {
            match exact_distant_paths(&g, &x, &y, d, 2, OracleBudget::default()).unwrap() {
                SearchOutcome::Found(p) => assert_eq!(p.len(), 2),
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(min_hitting_ball(&g, &x, &y).unwrap(), MinBall::Unhittable);
    }

    #[test]
    fn ladder_needs_distance_one() {
        let g = Graph::new(4, [(0, 1), (2, 3), (0, 2)]).unwrap();
        let (x, y) = (set(4, &[0, 2]), set(4, &[1, 3]));
        assert!(matches!(
            exact_distant_paths(&g, &x, &y, 1, 2, OracleBudget::default()).unwrap(),
            SearchOutcome::Found(_)
        ));
        assert_eq!(
            exact_distant_paths(&g, &x, &y, 2, 2, OracleBudget::default()).unwrap(),
            SearchOutcome::ProvenAbsent
        );
    }

    #[test]
    fn hitting_radius_on_a_path() {
        let g = Graph::new(5, (1..5).map(|i| (i - 1, i))).unwrap();
        let (x, y) = (set(5, &[0]), set(5, &[4]));
        assert_eq!(min_hitting_ball(&g, &x, &y).unwrap(), MinBall::Ball { center: 0, radius: 0 });
        assert_eq!(min_hitting_ball(&g, &set(5, &[]), &y).unwrap(), MinBall::NoXYPath);
    }

    #[test]
    fn budget_is_reported() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let tiny = OracleBudget { max_vertices: 2, time_budget: Duration::from_secs(1) };
        assert_eq!(
            exact_distant_paths(&g, &set(3, &[0]), &set(3, &[2]), 1, 2, tiny).unwrap(),
            SearchOutcome::BudgetExceeded
        );
    }
}
