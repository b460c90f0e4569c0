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

//! Integer interval systems and the interlaced-or-separator dichotomy.
//!
//! An `(A, B, r)`-system is a sequence of integer intervals inside `[A, B]`
//! whose endpoints either sit on `A`/`B` or stay at least `r` away from
//! them. A subsystem is *interlaced with buffer `l`* when it starts at `A`,
//! ends at `B`, and consecutive intervals overlap while both endpoints move
//! right by at least `l`. Either such a subsystem exists, or some integer `z`
//! has a window of radius `2l` around it that no interval jumps across.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSystem {
    pub lower: i64,
    pub upper: i64,
    pub margin: i64,
    pub intervals: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemViolation {
    /// `a > b`.
    Reversed { index: usize },
    /// The interval leaves `[A, B]`.
    OutOfRange { index: usize },
    /// `a != A` but `a < A + r`.
    StartTooClose { index: usize },
    /// `b != B` but `b > B - r`.
    EndTooClose { index: usize },
}

impl IntervalSystem {
    pub fn new(lower: i64, upper: i64, margin: i64, intervals: Vec<(i64, i64)>) -> Self {
        IntervalSystem { lower, upper, margin, intervals }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// The same bounds with only the intervals at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> IntervalSystem {
        IntervalSystem { intervals: indices.iter().map(|&i| self.intervals[i]).collect(), ..*self }
    }

    pub fn is_clean(&self) -> bool {
        let iv = &self.intervals;
        (0..iv.len()).all(|i| (i + 2..iv.len()).all(|j| !overlaps(iv[i], iv[j])))
    }
}

fn overlaps(p: (i64, i64), q: (i64, i64)) -> bool {
    p.0.max(q.0) <= p.1.min(q.1)
}

pub fn validate_system(s: &IntervalSystem) -> Vec<SystemViolation> {
    let mut out = Vec::new();
    for (index, &(a, b)) in s.intervals.iter().enumerate() {
        if a > b {
            out.push(SystemViolation::Reversed { index });
        }
        if a < s.lower || b > s.upper {
            out.push(SystemViolation::OutOfRange { index });
        }
        if a != s.lower && a < s.lower + s.margin {
            out.push(SystemViolation::StartTooClose { index });
        }
        if b != s.upper && b > s.upper - s.margin {
            out.push(SystemViolation::EndTooClose { index });
        }
    }
    out
}

/// Whether `j` may follow `i` in an interlaced sequence with this buffer.
fn extends(i: (i64, i64), j: (i64, i64), buffer: i64) -> bool {
    i.0 + buffer <= j.0 && j.0 <= i.1 && i.1 + buffer <= j.1
}

/// Checks the interlacing conditions for the intervals in their given order.
pub fn is_interlaced(s: &IntervalSystem, buffer: i64) -> bool {
    let iv = &s.intervals;
    match (iv.first(), iv.last()) {
        (Some(first), Some(last)) => {
            first.0 == s.lower && last.1 == s.upper && iv.windows(2).all(|w| extends(w[0], w[1], buffer))
        }
        _ => false,
    }
}

/// Greedily deletes everything strictly between two overlapping intervals
/// that are at least two apart until the system is clean. Returns the kept
/// indices; the first and last interval are always kept.
pub fn clean_subsequence(s: &IntervalSystem, buffer: i64) -> Result<Vec<usize>> {
    if buffer < 1 {
        return Err(Error::InvalidParameter(format!("buffer must be positive, got {buffer}")));
    }
    if !is_interlaced(s, buffer) {
        return Err(Error::Precondition("clean_subsequence needs an interlaced system".into()));
    }
    let mut kept: Vec<usize> = (0..s.len()).collect();
    'outer: loop {
        for i in 0..kept.len() {
            let far = (i + 2..kept.len()).rev().find(|&j| overlaps(s.intervals[kept[i]], s.intervals[kept[j]]));
            if let Some(j) = far {
                kept.drain(i + 1..j);
                continue 'outer;
            }
        }
        break;
    }
    Ok(kept)
}

/// An integer `z` together with the window `[z - 2l, z + 2l] ∩ (A, B)`
/// (stored as an inclusive range) that no interval of the source system
/// straddles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparatorWitness {
    pub z: i64,
    pub window: (i64, i64),
}

impl SeparatorWitness {
    pub fn new(s: &IntervalSystem, z: i64, buffer: i64) -> Self {
        let lo = (z - 2 * buffer).max(s.lower + 1);
        let hi = (z + 2 * buffer).min(s.upper - 1);
        SeparatorWitness { z, window: (lo, hi) }
    }

    /// `z ∈ [A + r, B - r]` and no interval meets both `[A, lo)` and `(hi, B]`.
    pub fn separates(&self, s: &IntervalSystem) -> bool {
        let (lo, hi) = self.window;
        s.lower + s.margin <= self.z
            && self.z <= s.upper - s.margin
            && s.intervals.iter().all(|&(a, b)| !(a < lo && b > hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dichotomy {
    /// Indices of an interlaced subsystem, in interlacing order.
    Interlaced(Vec<usize>),
    Separator(SeparatorWitness),
}

/// Either finds an interlaced subsystem with buffer `buffer` or a separator.
///
/// A subsystem is any subset, taken in the order of its left endpoints (the
/// only order in which it can be interlaced); for a system sorted by left
/// endpoint this is an ordinary subsequence. The interlaced side is returned
/// whenever such a subsystem exists. Otherwise `z` is the smallest integer of
/// `[A + r, B - r]` not covered by `[a + l, b - l]` for any interval
/// reachable as the last element of an interlaced prefix.
pub fn interlaced_or_separator(s: &IntervalSystem, buffer: i64) -> Result<Dichotomy> {
    if buffer < 1 || buffer > s.margin {
        return Err(Error::InvalidParameter(format!("buffer must lie in [1, {}], got {buffer}", s.margin)));
    }
    let violations = validate_system(s);
    if !violations.is_empty() {
        return Err(Error::Precondition(format!("not a valid system: {violations:?}")));
    }
    let iv = &s.intervals;
    let t = iv.len();
    let mut pred: Vec<Option<usize>> = vec![None; t];
    let mut reached = vec![false; t];
    let mut queue = std::collections::VecDeque::new();
    for i in (0..t).filter(|&i| iv[i].0 == s.lower) {
        reached[i] = true;
        queue.push_back(i);
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..t {
            if !reached[j] && extends(iv[i], iv[j], buffer) {
                reached[j] = true;
                pred[j] = Some(i);
                queue.push_back(j);
            }
        }
    }

    if let Some(end) = (0..t).find(|&j| reached[j] && iv[j].1 == s.upper) {
        let mut chain = vec![end];
        while let Some(p) = pred[chain[chain.len() - 1]] {
            chain.push(p);
        }
        chain.reverse();
        return Ok(Dichotomy::Interlaced(chain));
    }

    let mut good: Vec<(i64, i64)> =
        (0..t).filter(|&j| reached[j]).map(|j| (iv[j].0 + buffer, iv[j].1 - buffer)).filter(|r| r.0 <= r.1).collect();
    good.sort_unstable();
    let mut z = s.lower + s.margin;
    for &(lo, hi) in &good {
        if lo > z {
            break;
        }
        z = z.max(hi + 1);
    }
    if z > s.upper - s.margin {
        return Err(Error::Precondition(format!(
            "no interlaced subsystem and [A + r, B - r] = [{}, {}] has no free integer",
            s.lower + s.margin,
            s.upper - s.margin
        )));
    }
    Ok(Dichotomy::Separator(SeparatorWitness::new(s, z, buffer)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(a: i64, b: i64, r: i64, iv: &[(i64, i64)]) -> IntervalSystem {
        IntervalSystem::new(a, b, r, iv.to_vec())
    }

    #[test]
    fn validation() {
        assert!(validate_system(&sys(0, 10, 3, &[(0, 10)])).is_empty());
        assert_eq!(validate_system(&sys(0, 10, 3, &[(1, 10)])), vec![SystemViolation::StartTooClose { index: 0 }]);
        assert_eq!(validate_system(&sys(0, 10, 3, &[(0, 8)])), vec![SystemViolation::EndTooClose { index: 0 }]);
        assert_eq!(
            validate_system(&sys(0, 10, 3, &[(5, 4), (-1, 10)])),
            vec![
                SystemViolation::Reversed { index: 0 },
                SystemViolation::OutOfRange { index: 1 },
                SystemViolation::StartTooClose { index: 1 }
            ]
        );
    }

    #[test]
    fn interlacing() {
        // a: 0+5 <= 6 <= 8, 6+5 <= 12 <= 14; b: 8+5 <= 14, 14+5 <= 20
        let s = sys(0, 20, 5, &[(0, 8), (6, 14), (12, 20)]);
        assert!(is_interlaced(&s, 5));
        assert!(is_interlaced(&s, 6));
        assert!(!is_interlaced(&s, 7));
        assert!(is_interlaced(&sys(0, 20, 5, &[(0, 20)]), 5));
        assert!(!is_interlaced(&sys(0, 20, 5, &[(5, 20)]), 1));
        assert!(!is_interlaced(&sys(0, 20, 5, &[]), 1));
    }

    #[test]
    fn cleaning() {
        let clean = sys(0, 20, 5, &[(0, 8), (6, 14), (12, 20)]);
        assert_eq!(clean_subsequence(&clean, 5).unwrap(), vec![0, 1, 2]);
        let s = sys(0, 10, 3, &[(0, 5), (3, 8), (5, 10)]);
        assert!(!is_interlaced(&s, 3));
        let kept = clean_subsequence(&s, 2).unwrap();
        assert_eq!(kept, vec![0, 2]);
        assert!(s.select(&kept).is_clean());
        assert!(clean_subsequence(&sys(0, 10, 3, &[(1, 10)]), 3).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        assert_eq!(interlaced_or_separator(&sys(0, 9, 3, &[(0, 9)]), 2).unwrap(), Dichotomy::Interlaced(vec![0]));
        let s = sys(0, 100, 10, &[(0, 10), (90, 100)]);
        match interlaced_or_separator(&s, 5).unwrap() {
            Dichotomy::Separator(w) => {
                assert_eq!(w.z, 10);
                assert_eq!(w.window, (1, 20));
                assert!(w.separates(&s));
            }
            other => panic!("expected a separator, got {other:?}"),
        }
        let s = sys(0, 20, 5, &[(0, 8), (6, 14), (12, 20)]);
        assert_eq!(interlaced_or_separator(&s, 5).unwrap(), Dichotomy::Interlaced(vec![0, 1, 2]));
    }

    #[test]
    fn dichotomy_errors() {
        let s = sys(0, 20, 5, &[(0, 20)]);
        assert!(interlaced_or_separator(&s, 6).is_err());
        assert!(interlaced_or_separator(&s, 0).is_err());
        assert!(interlaced_or_separator(&sys(0, 20, 5, &[(1, 20)]), 5).is_err());
    }

    #[test]
    fn empty_system_separates_at_first_free_integer() {
        let s = sys(-7, 17, 7, &[]);
        match interlaced_or_separator(&s, 7).unwrap() {
            Dichotomy::Separator(w) => assert_eq!(w.z, 0),
            other => panic!("{other:?}"),
        }
    }
}
