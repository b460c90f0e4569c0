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

use proptest::prelude::*;
use twopaths::generators::random_instance;
use twopaths::intervals::{interlaced_or_separator, is_interlaced, validate_system, Dichotomy, IntervalSystem};
use twopaths::{solve, verify_ball, verify_certificate, Graph, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn all_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| g.distances_from(&VertexSet::from_vertices(n, [u]).unwrap()).into_iter().map(|d| d.finite()).collect())
        .collect()
}

fn system_strategy() -> impl Strategy<Value = (IntervalSystem, i64)> {
    (8i64..60).prop_flat_map(|upper| {
        (1..=upper / 4).prop_flat_map(move |margin| {
            let interval = (any::<bool>(), any::<bool>(), margin..=upper - margin, 0i64..upper).prop_map(
                move |(at_lower, at_upper, a, w)| {
                    let a = if at_lower { 0 } else { a };
                    let b = if at_upper { upper } else { (a.max(margin) + w).min(upper - margin) };
                    (a, b)
                },
            );
            (proptest::collection::vec(interval, 0..10), 1..=margin)
                .prop_map(move |(iv, buffer)| (IntervalSystem::new(0, upper, margin, iv), buffer))
        })
    })
}

proptest! {
    #[test]
    fn distance_is_a_metric(g in graph_strategy(12)) {
        let dist = all_distances(&g);
        let n = g.vertex_count();
        for u in 0..n {
            prop_assert_eq!(dist[u][u], Some(0));
            for v in 0..n {
                prop_assert_eq!(dist[u][v], dist[v][u]);
                for w in 0..n {
                    if let (Some(a), Some(b)) = (dist[u][v], dist[v][w]) {
                        prop_assert!(dist[u][w].is_some_and(|c| c <= a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn power_distances_round_up(g in graph_strategy(12), d in 1usize..5) {
        let base = all_distances(&g);
        let power = all_distances(&g.power(d).unwrap());
        for (row, prow) in base.iter().zip(&power) {
            for (a, b) in row.iter().zip(prow) {
                prop_assert_eq!(a.map(|a| a.div_ceil(d)), *b);
            }
        }
    }

    #[test]
    fn subdivision_scales_distances(g in graph_strategy(10), k in 0usize..4) {
        let n = g.vertex_count();
        let base = all_distances(&g);
        let sub = g.subdivide(k);
        prop_assert_eq!(sub.vertex_count(), n + k * g.edge_count());
        prop_assert_eq!(sub.edge_count(), (k + 1) * g.edge_count());
        let scaled = all_distances(&sub);
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(base[u][v].map(|x| x * (k + 1)), scaled[u][v]);
            }
        }
    }

    #[test]
    fn ball_verification_is_monotone(g in graph_strategy(12), x in 0usize..12, y in 0usize..12, c in 0usize..12) {
        let n = g.vertex_count();
        let (x, y, c) = (x % n, y % n, c % n);
        let (xs, ys) = (VertexSet::from_vertices(n, [x]).unwrap(), VertexSet::from_vertices(n, [y]).unwrap());
        let mut hit = false;
        for r in 0..=n {
            let now = verify_ball(&g, &xs, &ys, c, r).is_ok();
            prop_assert!(!hit || now);
            hit = now;
        }
    }

    #[test]
    fn dichotomy_witnesses_check_out((s, buffer) in system_strategy()) {
        prop_assert!(validate_system(&s).is_empty());
        match interlaced_or_separator(&s, buffer).unwrap() {
            Dichotomy::Interlaced(idx) => {
                let chain = s.select(&idx);
                prop_assert!(is_interlaced(&chain, buffer));
                prop_assert!(chain.intervals.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
            }
            Dichotomy::Separator(w) => prop_assert!(w.separates(&s)),
        }
    }

    #[test]
    fn solver_certificates_verify(seed in any::<u64>(), n in 2usize..60, deg in 1.0f64..4.0, d in 1usize..4) {
        let inst = random_instance(n, (deg / n as f64).min(1.0), 1, 1, seed, d).unwrap();
        let cert = solve(&inst.graph, &inst.x, &inst.y, d).unwrap();
        prop_assert!(verify_certificate(&inst.graph, &inst.x, &inst.y, d, &cert).is_ok());
    }
}
