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

//! The constructive dichotomy: two distant disjoint `X`-`Y` paths or a ball
//! of radius `121 * d` that every `X`-`Y` path meets.
//!
//! Outline for `d >= 2`. Take a shortest `X`-`Y` path `P = v_1 .. v_n` and
//! the components of `G - B(P, 5d)`. Each component projects onto an
//! interval of positions along `P`; either the maximal intervals contain an
//! interlaced chain, or some position is a separator and the ball around it
//! is returned. A chain is cleaned, gaps that are too short are bridged by
//! a spanning component, and the result is grouped into fruit trees. The
//! weave builds two paths alternating between `P` and the trees; any pair
//! of vertices that ends up too close yields a short path between two trees,
//! which are then merged and the weave is retried.

mod orchard;
mod profiles;
mod weave;

pub use orchard::{merge, tree_depth_check, FruitTree, Orchard};
pub use profiles::{
    bridge, component_profiles, project_to_system, Bridged, BridgedSequence, ComponentProfile, SequenceEntry, Tag,
};
pub use weave::{weave, Move, Violation, ViolationCategory, WeaveCase, WeaveOutcome, WeaveState};

use crate::certificates::{menger_two_paths, Certificate, MengerOutcome};
use crate::error::{ensure_internal, Error, Result};
use crate::graph::{Graph, Path, VertexSet};
use crate::intervals::{clean_subsequence, interlaced_or_separator, Dichotomy};

/// Distances derived from `d`. `c * d = 2 * d2 + d1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constants {
    pub d: usize,
    pub d1: usize,
    pub d2: usize,
    pub c: usize,
    pub gap_close: usize,
    pub gap_route: usize,
}

impl Constants {
    pub const C: usize = 121;

    pub fn new(d: usize) -> Self {
        Constants { d, d1: 5 * d, d2: 58 * d, c: Self::C, gap_close: 24 * d, gap_route: 12 * d }
    }

    /// Radius of every returned ball.
    pub fn radius(&self) -> usize {
        self.c * self.d
    }
}

/// Which part of the pipeline produced the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// `d = 1`, decided by a flow computation.
    Menger,
    /// No `X`-`Y` path at all.
    NoPath,
    /// A component far from `P` contains an `X`-`Y` path on its own.
    EarlyExit,
    /// The interval system has a separator at this position of `P`.
    Separator { position: usize },
    /// A short gap in the chain has no spanning component.
    UnbridgedGap { position: usize },
    /// The weave produced the paths.
    Woven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub branch: Branch,
    pub sequence: Option<BridgedSequence>,
    /// Number of trees before each weave attempt; strictly decreasing.
    pub tree_counts: Vec<usize>,
    /// One entry per merge, in order.
    pub violations: Vec<Violation>,
    /// Cases taken by the final weave.
    pub cases: Vec<WeaveCase>,
    pub orchard: Option<Orchard>,
}

impl Trace {
    fn new(branch: Branch) -> Self {
        Trace {
            branch,
            sequence: None,
            tree_counts: Vec::new(),
            violations: Vec::new(),
            cases: Vec::new(),
            orchard: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub certificate: Certificate,
    pub trace: Trace,
}

/// Returns two disjoint `X`-`Y` paths at distance at least `d` or a ball of
/// radius `121 * d` meeting every `X`-`Y` path.
pub fn solve(g: &Graph, x: &VertexSet, y: &VertexSet, d: usize) -> Result<Certificate> {
    solve_traced(g, x, y, d).map(|s| s.certificate)
}

/// As [`solve`], also reporting how the certificate was reached.
pub fn solve_traced(g: &Graph, x: &VertexSet, y: &VertexSet, d: usize) -> Result<Solution> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    g.check_set(x)?;
    g.check_set(y)?;
    if d == 0 {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    let k = Constants::new(d);
    let ball = |center| Certificate::HittingBall { center, radius: k.radius() };
    let done = |certificate, trace| Ok(Solution { certificate, trace });

    if d == 1 {
        let cert = match menger_two_paths(g, x, y)? {
            MengerOutcome::TwoPaths(p1, p2) => Certificate::DistantPaths { p1, p2 },
            MengerOutcome::Cut(v) => ball(v),
        };
        return done(cert, Trace::new(Branch::Menger));
    }
    let Some(p) = g.shortest_xy_path(x, y) else {
        return done(ball(0), Trace::new(Branch::NoPath));
    };
    let n = p.vertices().len();
    let removed = g.ball(&p.to_set(g.vertex_count()), k.d1)?;
    let components = g.components_avoiding(&removed);
    for comp in &components {
        if comp.intersects(x) && comp.intersects(y) {
            let w = g
                .shortest_xy_path_within(x, y, Some(comp))
                .ok_or_else(|| Error::Internal("component with X and Y has no X-Y path".into()))?;
            let cert = Certificate::DistantPaths { p1: p, p2: w };
            return done(cert, Trace::new(Branch::EarlyExit));
        }
    }
    let profiles = profiles::profiles_of(g, &p, components, x, y, &k)?;
    let (system, back) = project_to_system(&profiles, n, &k)?;
    let buffer = k.d2 as i64;
    let chain = match interlaced_or_separator(&system, buffer)? {
        Dichotomy::Separator(w) => {
            let position = clamp_position(w.z, n);
            let cert = ball(p.vertices()[position - 1]);
            return done(cert, Trace::new(Branch::Separator { position }));
        }
        Dichotomy::Interlaced(indices) => indices,
    };
    let kept = clean_subsequence(&system.select(&chain), buffer)?;
    let selected: Vec<usize> = kept.iter().map(|&i| back[chain[i]]).collect();
    let seq = match bridge(&selected, &profiles, n, &k) {
        Bridged::Sequence(seq) => seq,
        Bridged::Ball { position } => {
            let cert = ball(p.vertices()[position - 1]);
            return done(cert, Trace::new(Branch::UnbridgedGap { position }));
        }
    };
    profiles::check_gaps(&seq, &k)?;
    profiles::check_far_pairs(g, &seq, &k)?;

    let mut trace = Trace::new(Branch::Woven);
    let mut orchard = Orchard::singletons(&seq);
    loop {
        trace.tree_counts.push(orchard.len());
        let state = WeaveState::new(g, &seq, &orchard, &p, x, y, &k)?;
        match weave(g, &state, &p, x, y, &k)? {
            WeaveOutcome::Paths { p1, p2, cases } => {
                trace.cases = cases;
                trace.sequence = Some(seq);
                trace.orchard = Some(orchard);
                return done(Certificate::DistantPaths { p1, p2 }, trace);
            }
            WeaveOutcome::Violation(v) => {
                let before = orchard.len();
                orchard = merge(g, &seq, &orchard, &v, &k)?;
                ensure_internal!(orchard.len() < before, "merge did not reduce the number of trees");
                trace.violations.push(v);
            }
        }
    }
}

/// Separator positions may be `0`; `P` is indexed from 1.
fn clamp_position(z: i64, n: usize) -> usize {
    z.clamp(1, n as i64) as usize
}

/// The vertex at 1-based position `i` of `p`.
pub(crate) fn at(p: &Path, i: usize) -> crate::graph::Vertex {
    p.vertices()[i - 1]
}
