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

//! Shared corpora for the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twopaths::generators::{chain_rails, rail_instance, Gap, Instance, Link, Rail};

/// A random interlaced chain of rails with random spanning rails, bridges
/// and chords. `None` when the links happen to be rejected.
pub fn random_chain(seed: u64) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = [2, 3, 4, 6][rng.gen_range(0..4)];
    let len = rng.gen_range(1..7);
    let gaps: Vec<Gap> = (0..len)
        .map(|_| {
            if rng.gen_bool(0.4) {
                Gap::Wide
            } else {
                Gap::Close { left: rng.gen_range(0..51 * d), right: rng.gen_range(0..51 * d) }
            }
        })
        .collect();
    let (n, rails) = chain_rails(d, &gaps);
    let lo = |r: &Rail| r.start.unwrap_or(1);
    let hi = |r: &Rail| r.end.unwrap_or(n);
    let mut links = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..rails.len());
        let j = rng.gen_range(0..rails.len());
        if i == j {
            continue;
        }
        let (l, h) = (lo(&rails[i]).max(lo(&rails[j])), hi(&rails[i]).min(hi(&rails[j])));
        if l > h {
            continue;
        }
        let ends: Vec<usize> = [rails[i].start, rails[i].end, rails[j].start, rails[j].end]
            .into_iter()
            .flatten()
            .filter(|&p| l <= p && p <= h)
            .collect();
        let at = if !ends.is_empty() && rng.gen_bool(0.5) {
            ends[rng.gen_range(0..ends.len())]
        } else {
            rng.gen_range(l..=h)
        };
        links.push(Link::Bridge { rails: (i, j), at });
        if rng.gen_bool(0.5) {
            links.push(Link::Chord { from: i, at_end: rng.gen_bool(0.5), to: j });
        }
    }
    rail_instance(d, n, &rails, &links).ok()
}

/// Trims a walk-free path to its last `X` vertex and the first `Y` vertex
/// after it.
pub fn trim_xy(p: &[usize], x: &twopaths::VertexSet, y: &twopaths::VertexSet) -> Vec<usize> {
    let start = p.iter().rposition(|&v| x.contains(v)).expect("path meets X");
    let end = start + p[start..].iter().position(|&v| y.contains(v)).expect("path meets Y after X");
    p[start..=end].to_vec()
}
