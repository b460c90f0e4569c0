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

//! Graphviz output for looking at instances and certificates.

use std::fmt::Write;

use twopaths::generators::Instance;
use twopaths::Certificate;

pub fn emit_dot(inst: &Instance, cert: Option<&Certificate>) -> String {
    let g = &inst.graph;
    let mut colour = vec![None; g.vertex_count()];
    let mut on_path = std::collections::HashSet::new();
    match cert {
        Some(Certificate::DistantPaths { p1, p2 }) => {
            for (p, c) in [(p1, "red"), (p2, "blue")] {
                for &v in p.vertices() {
                    colour[v] = Some(c);
                }
                for e in p.vertices().windows(2) {
                    on_path.insert((e[0].min(e[1]), e[0].max(e[1])));
                }
            }
        }
        Some(Certificate::HittingBall { center, radius }) => {
            if let Ok(ball) = g.ball_around(*center, *radius) {
                for v in ball.iter() {
                    colour[v] = Some("grey");
                }
            }
            colour[*center] = Some("black");
        }
        None => {}
    }
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for (v, fill) in colour.iter().enumerate() {
        let shape = if inst.x.contains(v) || inst.y.contains(v) { ",shape=doublecircle" } else { "" };
        let fill = fill.map(|c| format!(",style=filled,fillcolor={c}")).unwrap_or_default();
        let role = match (inst.x.contains(v), inst.y.contains(v)) {
            (true, true) => " xy",
            (true, false) => " x",
            (false, true) => " y",
            _ => "",
        };
        writeln!(out, "  {v} [label=\"{v}{role}\"{shape}{fill}];").unwrap();
    }
    for &(u, v) in g.edges() {
        let bold = if on_path.contains(&(u, v)) { " [penwidth=3]" } else { "" };
        writeln!(out, "  {u} -- {v}{bold};").unwrap();
    }
    out.push_str("}\n");
    out
}
