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

//! Component intervals along the base path and the bridged sequence.

use super::{Constants, Path};
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::intervals::{validate_system, IntervalSystem};

/// A component `H` of `G - B(P, d1)` and its interval `[a, b]` of positions
/// on `P` at distance exactly `d1 + 1` from `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub component: VertexSet,
    pub a: i64,
    pub b: i64,
    pub contains_x: bool,
    pub contains_y: bool,
}

impl ComponentProfile {
    /// Smallest vertex id in the component; used to break ties.
    pub fn key(&self) -> usize {
        self.component.first().expect("components are nonempty")
    }

    fn contains(&self, other: &ComponentProfile) -> bool {
        self.a <= other.a && other.b <= self.b
    }
}

/// Profiles of the components of `G - B(p, d1)`. Components with no vertex
/// near `p` are whole components of `G` and are left out.
pub fn component_profiles(
    g: &Graph,
    p: &Path,
    x: &VertexSet,
    y: &VertexSet,
    k: &Constants,
) -> Result<Vec<ComponentProfile>> {
    g.check_set(x)?;
    g.check_set(y)?;
    let removed = g.ball(&p.to_set(g.vertex_count()), k.d1)?;
    profiles_of(g, p, g.components_avoiding(&removed), x, y, k)
}

pub(crate) fn profiles_of(
    g: &Graph,
    p: &Path,
    components: Vec<VertexSet>,
    x: &VertexSet,
    y: &VertexSet,
    k: &Constants,
) -> Result<Vec<ComponentProfile>> {
    let n = p.vertices().len() as i64;
    let (d1, d2) = (k.d1, k.d2 as i64);
    let mut out = Vec::new();
    for component in components {
        let contains_x = component.intersects(x);
        let contains_y = component.intersects(y);
        if contains_x && contains_y {
            return Err(Error::Precondition(format!(
                "component containing vertex {} meets both X and Y",
                component.first().unwrap_or_default()
            )));
        }
        let bfs = g.bfs(component.iter(), None, Some(d1 + 1));
        let near: Vec<i64> =
            p.vertices().iter().zip(1..).filter(|&(&v, _)| bfs.dist[v] == Some(d1 + 1)).map(|(_, j)| j).collect();
        let (Some(&first), Some(&last)) = (near.first(), near.last()) else {
            continue;
        };
        out.push(ComponentProfile {
            a: if contains_x { -d2 } else { first },
            b: if contains_y { n + d2 } else { last },
            component,
            contains_x,
            contains_y,
        });
    }
    Ok(out)
}

/// Keeps the profiles with inclusion-maximal intervals (one per interval,
/// the one with the smallest vertex) as a `(-d2, n + d2, d2)`-system sorted
/// by left end. The second result maps system indices to profile indices.
pub fn project_to_system(
    profiles: &[ComponentProfile],
    n: usize,
    k: &Constants,
) -> Result<(IntervalSystem, Vec<usize>)> {
    let beats = |j: usize, i: usize| {
        let (pj, pi) = (&profiles[j], &profiles[i]);
        pj.contains(pi) && ((pj.a, pj.b) != (pi.a, pi.b) || pj.key() < pi.key())
    };
    let mut kept: Vec<usize> =
        (0..profiles.len()).filter(|&i| !(0..profiles.len()).any(|j| j != i && beats(j, i))).collect();
    kept.sort_by_key(|&i| (profiles[i].a, profiles[i].b));
    let d2 = k.d2 as i64;
    let system =
        IntervalSystem::new(-d2, n as i64 + d2, d2, kept.iter().map(|&i| (profiles[i].a, profiles[i].b)).collect());
    let violations = validate_system(&system);
    ensure_internal!(violations.is_empty(), "projected system is invalid: {violations:?}");
    Ok((system, kept))
}

/// Where an entry of the bridged sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    /// Part of the cleaned interlaced chain.
    M,
    /// A spanning component inserted into a short gap.
    S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEntry {
    pub profile: ComponentProfile,
    pub tag: Tag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgedSequence {
    pub entries: Vec<SequenceEntry>,
    pub m: usize,
    pub s: usize,
}

impl BridgedSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn a(&self, j: usize) -> i64 {
        self.entries[j].profile.a
    }

    pub fn b(&self, j: usize) -> i64 {
        self.entries[j].profile.b
    }

    pub fn component(&self, j: usize) -> &VertexSet {
        &self.entries[j].profile.component
    }

    pub fn tag(&self, j: usize) -> Tag {
        self.entries[j].tag
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bridged {
    Sequence(BridgedSequence),
    /// 1-based position on `P` of the ball center.
    Ball {
        position: usize,
    },
}

/// For every consecutive pair `H_i, H_{i+1}` of the chain whose overlap
/// `b(H_i) - a(H_{i+1})` is at most `24d`, inserts the first profile `C`
/// with `a(C) <= a(H_{i+1}) - d2` and `b(C) >= b(H_i) + d2`. If there is
/// none, the position `a(H_{i+1})` (clamped to `[1, n]`) is a ball center.
pub fn bridge(selected: &[usize], profiles: &[ComponentProfile], n: usize, k: &Constants) -> Bridged {
    let (close, d2) = (k.gap_close as i64, k.d2 as i64);
    let mut entries = Vec::new();
    let mut s = 0;
    for (i, &h) in selected.iter().enumerate() {
        if i > 0 {
            let (prev, next) = (&profiles[selected[i - 1]], &profiles[h]);
            if prev.b - next.a <= close {
                let spanning = profiles.iter().find(|c| c.a <= next.a - d2 && c.b >= prev.b + d2);
                match spanning {
                    Some(c) => {
                        entries.push(SequenceEntry { profile: c.clone(), tag: Tag::S });
                        s += 1;
                    }
                    None => return Bridged::Ball { position: next.a.clamp(1, n as i64) as usize },
                }
            }
        }
        entries.push(SequenceEntry { profile: profiles[h].clone(), tag: Tag::M });
    }
    Bridged::Sequence(BridgedSequence { entries, m: selected.len(), s })
}

/// Consecutive anchors are at least `24d` apart along `P`.
pub(crate) fn check_gaps(seq: &BridgedSequence, k: &Constants) -> Result<()> {
    for j in 0..seq.len().saturating_sub(1) {
        let gap = (seq.b(j) - seq.a(j + 1)).abs();
        ensure_internal!(gap >= k.gap_close as i64, "anchors of entries {j} and {} are only {gap} apart", j + 1);
    }
    Ok(())
}

/// Entries five apart are at distance at least `d2 - 2 d1 - 2 - 24d`, and
/// seven apart at least `d2 - 2 d1 - 2`.
pub(crate) fn check_far_pairs(g: &Graph, seq: &BridgedSequence, k: &Constants) -> Result<()> {
    let near = k.d2 - 2 * k.d1 - 2;
    for p in 0..seq.len() {
        if p + 5 >= seq.len() {
            break;
        }
        let bfs = g.bfs(seq.component(p).iter(), None, Some(near));
        for q in p + 5..seq.len() {
            let bound = if q >= p + 7 { near } else { near - k.gap_close };
            let close = seq.component(q).iter().filter_map(|v| bfs.dist[v]).min();
            if let Some(dist) = close {
                ensure_internal!(dist >= bound, "entries {p} and {q} are at distance {dist} < {bound}");
            }
        }
    }
    Ok(())
}
