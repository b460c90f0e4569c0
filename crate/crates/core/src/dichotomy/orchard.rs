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

//! Fruit trees over the bridged sequence, orchards, and merging two or more
//! trees along a short connecting path.

use std::collections::{BTreeSet, HashMap};

use super::profiles::BridgedSequence;
use super::weave::Violation;
use super::Constants;
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{check_path, Graph, Path, Vertex, VertexSet};

/// Some entries of the bridged sequence joined by composite paths
/// `W_1 .. W_k`. Each `W_i` leaves and re-enters what was built before it
/// and avoids it otherwise; contracting every member component leaves a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FruitTree {
    /// Sorted sequence indices (0-based) of the member components.
    pub index_set: Vec<usize>,
    pub composite_paths: Vec<Path>,
    vertices: VertexSet,
}

impl FruitTree {
    pub fn singleton(seq: &BridgedSequence, j: usize) -> Self {
        FruitTree { index_set: vec![j], composite_paths: Vec::new(), vertices: seq.component(j).clone() }
    }

    /// Builds a tree from its parts without checking the invariants; see
    /// [`FruitTree::validate`].
    pub fn new(seq: &BridgedSequence, mut index_set: Vec<usize>, composite_paths: Vec<Path>) -> Result<Self> {
        index_set.sort_unstable();
        index_set.dedup();
        let universe = seq.entries.first().map_or(0, |e| e.profile.component.universe());
        let mut vertices = VertexSet::new(universe);
        for &j in &index_set {
            if j >= seq.len() {
                return Err(Error::InvalidParameter(format!("sequence index {j} out of range")));
            }
            vertices.union_with(seq.component(j));
        }
        for w in &composite_paths {
            for &v in w.vertices() {
                if v >= universe {
                    return Err(Error::InvalidVertex { vertex: v, vertex_count: universe });
                }
                vertices.insert(v);
            }
        }
        Ok(FruitTree { index_set, composite_paths, vertices })
    }

    pub fn min(&self) -> usize {
        self.index_set[0]
    }

    pub fn max(&self) -> usize {
        self.index_set[self.index_set.len() - 1]
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// Checks the structural invariants and `d`-smallness.
    pub fn validate(&self, g: &Graph, seq: &BridgedSequence, d: usize) -> Result<(), String> {
        if self.index_set.is_empty() {
            return Err("no member components".into());
        }
        let members: BTreeSet<usize> = self.index_set.iter().copied().collect();
        let mut owner: HashMap<Vertex, usize> = HashMap::new();
        for j in 0..seq.len() {
            for v in seq.component(j).iter() {
                owner.insert(v, j);
            }
        }
        let mut built = VertexSet::new(g.vertex_count());
        for &j in &self.index_set {
            built.union_with(seq.component(j));
        }
        for (i, w) in self.composite_paths.iter().enumerate() {
            let vs = w.vertices();
            check_path(g, vs).map_err(|e| format!("composite path {i}: {e}"))?;
            if vs.len() < 2 {
                return Err(format!("composite path {i} has no edge"));
            }
            if !built.contains(vs[0]) || !built.contains(vs[vs.len() - 1]) {
                return Err(format!("composite path {i} does not end in the tree built so far"));
            }
            if let Some(v) = vs[1..vs.len() - 1].iter().find(|&&v| built.contains(v)) {
                return Err(format!("composite path {i} has interior vertex {v} in the tree"));
            }
            if let Some(j) = vs.iter().filter_map(|v| owner.get(v)).find(|j| !members.contains(j)) {
                return Err(format!("composite path {i} touches non-member entry {j}"));
            }
            for &v in vs {
                built.insert(v);
            }
        }
        self.check_contracted_tree(g.vertex_count(), &owner)?;
        self.check_small(d)
    }

    fn check_contracted_tree(&self, universe: usize, owner: &HashMap<Vertex, usize>) -> Result<(), String> {
        // node of a vertex: its component index, or universe + vertex
        let node = |v: Vertex| owner.get(&v).copied().unwrap_or(universe + v);
        let mut uf = UnionFind::default();
        let mut nodes: BTreeSet<usize> = self.index_set.iter().copied().collect();
        for (i, w) in self.composite_paths.iter().enumerate() {
            for e in w.vertices().windows(2) {
                let (a, b) = (node(e[0]), node(e[1]));
                nodes.insert(a);
                nodes.insert(b);
                if !uf.union(a, b) {
                    return Err(format!("composite path {i} closes a cycle"));
                }
            }
        }
        let first = uf.find(self.index_set[0]);
        if nodes.iter().any(|&a| uf.find(a) != first) {
            return Err("contracted tree is disconnected".into());
        }
        Ok(())
    }

    fn check_small(&self, d: usize) -> Result<(), String> {
        let mut uf = UnionFind::default();
        for (i, w) in self.composite_paths.iter().enumerate() {
            let vs = w.vertices();
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for earlier in &self.composite_paths[..i] {
                *counts.entry(uf.find(earlier.first())).or_default() += 1;
            }
            let count = |uf: &mut UnionFind, v: Vertex| {
                if uf.contains(v) {
                    counts.get(&uf.find(v)).copied().unwrap_or(0)
                } else {
                    0
                }
            };
            let ends = (count(&mut uf, vs[0]), count(&mut uf, vs[vs.len() - 1]));
            let bound = (ends.0.max(ends.1) + 2) * d;
            if w.len() > bound {
                return Err(format!("composite path {i} has length {} > {bound}", w.len()));
            }
            for e in vs.windows(2) {
                uf.union(e[0], e[1]);
            }
        }
        Ok(())
    }
}

/// Every connected piece of the union of composite paths consists of at
/// most four paths, and each of its vertices is within `l * d` of `base`
/// along the piece, where `l` is the number of paths in the piece.
pub fn tree_depth_check(tree: &FruitTree, base: &VertexSet, d: usize) -> bool {
    let mut uf = UnionFind::default();
    for w in &tree.composite_paths {
        for e in w.vertices().windows(2) {
            uf.union(e[0], e[1]);
        }
    }
    let mut pieces: HashMap<usize, Vec<&Path>> = HashMap::new();
    for w in &tree.composite_paths {
        pieces.entry(uf.find(w.first())).or_default().push(w);
    }
    pieces.values().all(|paths| {
        let l = paths.len();
        if l > 4 {
            return false;
        }
        let mut adjacency: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for w in paths {
            for e in w.vertices().windows(2) {
                adjacency.entry(e[0]).or_default().push(e[1]);
                adjacency.entry(e[1]).or_default().push(e[0]);
            }
        }
        let mut dist: HashMap<Vertex, usize> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        for &v in adjacency.keys() {
            if base.contains(v) {
                dist.insert(v, 0);
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for &w in &adjacency[&u] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        adjacency.keys().all(|v| dist.get(v).is_some_and(|&dv| dv <= l * d))
    })
}

/// Consecutive fruit trees covering the whole sequence: the first starts
/// at entry 0, the last ends at the last entry, and each tree starts right
/// after the previous one ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orchard {
    pub trees: Vec<FruitTree>,
}

impl Orchard {
    pub fn singletons(seq: &BridgedSequence) -> Self {
        Orchard { trees: (0..seq.len()).map(|j| FruitTree::singleton(seq, j)).collect() }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn validate(&self, g: &Graph, seq: &BridgedSequence, d: usize) -> Result<(), String> {
        let (Some(first), Some(last)) = (self.trees.first(), self.trees.last()) else {
            return Err("empty orchard".into());
        };
        if first.min() != 0 || last.max() + 1 != seq.len() {
            return Err("orchard does not span the sequence".into());
        }
        for (i, pair) in self.trees.windows(2).enumerate() {
            if pair[0].max() + 1 != pair[1].min() {
                return Err(format!("trees {i} and {} are not consecutive", i + 1));
            }
        }
        for (i, tree) in self.trees.iter().enumerate() {
            tree.validate(g, seq, d).map_err(|e| format!("tree {i}: {e}"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Blob {
    Tree(usize),
    Loose(usize),
}

/// Merges the trees joined by the violation's witness path. The witness is
/// cut into segments at every contact with a tree or with a sequence entry
/// outside all trees; each segment becomes a composite path. The trees from
/// the first to the last touched one are replaced by their union, dropping
/// untouched trees in between.
pub fn merge(
    g: &Graph,
    seq: &BridgedSequence,
    orchard: &Orchard,
    violation: &Violation,
    k: &Constants,
) -> Result<Orchard> {
    let trees = &orchard.trees;
    let mut owner: Vec<Option<Blob>> = vec![None; g.vertex_count()];
    let mut in_tree = vec![false; seq.len()];
    for (i, t) in trees.iter().enumerate() {
        for v in t.vertices().iter() {
            owner[v] = Some(Blob::Tree(i));
        }
        for &j in &t.index_set {
            in_tree[j] = true;
        }
    }
    for j in (0..seq.len()).filter(|&j| !in_tree[j]) {
        for v in seq.component(j).iter() {
            owner[v] = Some(Blob::Loose(j));
        }
    }
    let w = violation.witness.vertices();
    let blob_at = |i: usize| owner[w[i]];
    let last_in = |b: Blob| (0..w.len()).rev().find(|&i| blob_at(i) == Some(b)).unwrap_or(0);
    let (Some(start), Some(_)) = (blob_at(0), blob_at(w.len() - 1)) else {
        return Err(Error::Internal("witness does not join two trees".into()));
    };
    let mut touched = vec![start];
    let mut segments = Vec::new();
    let mut s = last_in(start);
    while s + 1 < w.len() {
        let e = (s + 1..w.len())
            .find(|&i| blob_at(i).is_some())
            .ok_or_else(|| Error::Internal("witness ends outside every tree".into()))?;
        let b = blob_at(e).expect("found above");
        ensure_internal!(!touched.contains(&b), "witness re-enters {b:?}");
        segments.push(Path::from_vec_unchecked(w[s..=e].to_vec()));
        touched.push(b);
        s = last_in(b);
    }

    let owner_of = |j: usize| trees.iter().position(|t| t.min() <= j && j <= t.max());
    let mut positions = BTreeSet::new();
    let mut touched_trees = BTreeSet::new();
    let mut loose = Vec::new();
    for b in &touched {
        match *b {
            Blob::Tree(i) => {
                positions.insert(i);
                touched_trees.insert(i);
            }
            Blob::Loose(j) => {
                let i = owner_of(j).ok_or_else(|| Error::Internal(format!("entry {j} has no enclosing tree")))?;
                positions.insert(i);
                loose.push(j);
            }
        }
    }
    ensure_internal!(touched_trees.len() >= 2, "witness touches fewer than two trees");
    let (lo, hi) = (*positions.first().expect("nonempty"), *positions.last().expect("nonempty"));
    let mut index_set = loose;
    let mut composites = Vec::new();
    for &i in &touched_trees {
        index_set.extend_from_slice(&trees[i].index_set);
        composites.extend(trees[i].composite_paths.iter().cloned());
    }
    composites.extend(segments);
    let merged = FruitTree::new(seq, index_set, composites)?;
    ensure_internal!(
        merged.min() == trees[lo].min() && merged.max() == trees[hi].max(),
        "merged tree does not span trees {lo}..={hi}"
    );
    merged.validate(g, seq, k.d).map_err(|e| Error::Internal(format!("merged tree: {e}")))?;
    let mut base = VertexSet::new(g.vertex_count());
    for j in 0..seq.len() {
        base.union_with(seq.component(j));
    }
    ensure_internal!(tree_depth_check(&merged, &base, k.d), "merged tree fails the depth check");

    let mut out = trees[..lo].to_vec();
    out.push(merged);
    out.extend_from_slice(&trees[hi + 1..]);
    Ok(Orchard { trees: out })
}

#[derive(Default)]
struct UnionFind {
    parent: HashMap<usize, usize>,
}

impl UnionFind {
    fn contains(&self, a: usize) -> bool {
        self.parent.contains_key(&a)
    }

    fn find(&mut self, a: usize) -> usize {
        let p = *self.parent.entry(a).or_insert(a);
        if p == a {
            return a;
        }
        let root = self.find(p);
        self.parent.insert(a, root);
        root
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra.max(rb), ra.min(rb));
        true
    }
}
