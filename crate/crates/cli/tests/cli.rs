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

use std::path::PathBuf;
use std::process::{Command, Output};

use twopaths::generators::figure1_instance;
use twopaths::oracle::{min_hitting_ball, MinBall};
use twopaths_cli::document::CertificateDoc;
use twopaths_cli::format::{emit_instance, parse_graph, to_instance};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twopaths"))
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("twopaths-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn path_file(n: usize) -> String {
    let mut s = format!("{} {}\n", n, n - 1);
    for v in 1..n {
        s.push_str(&format!("{} {v}\n", v - 1));
    }
    s
}

#[test]
fn solve_path_gives_ball() {
    let dir = Scratch::new("path");
    let g = dir.file("g.txt", &path_file(10));
    let (code, out, _) = run(bin().arg("solve").arg(&g).args(["--x", "0", "--y", "9", "--d", "2"]));
    assert_eq!(code, 1);
    let doc = CertificateDoc::parse(&out).unwrap();
    assert_eq!((doc.center.is_some(), doc.radius), (true, Some(242)));
}

#[test]
fn solve_two_components_gives_paths() {
    let dir = Scratch::new("twocomp");
    let mut text = String::from("# two disjoint paths\n40 38\n");
    for v in (1..20).chain(21..40) {
        text.push_str(&format!("{} {v}\n", v - 1));
    }
    let g = dir.file("g.txt", &text);
    let cert = dir.0.join("c.json");
    let dot = dir.0.join("c.dot");
    let (code, _, _) = run(bin()
        .arg("solve")
        .arg(&g)
        .args(["--x", "0,20", "--y", "19,39", "--d", "3", "-o"])
        .arg(&cert)
        .arg("--emit-dot")
        .arg(&dot));
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
    let (code, _, _) = run(bin().arg("verify").arg(&g).args(["--x", "0,20", "--y", "19,39", "--d", "3"]).arg(&cert));
    assert_eq!(code, 0);

    let mut doc = CertificateDoc::parse(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc.p1.as_mut().unwrap().pop();
    let bad = dir.file("bad.json", &doc.to_json());
    let (code, _, err) = run(bin().arg("verify").arg(&g).args(["--x", "0,20", "--y", "19,39", "--d", "3"]).arg(&bad));
    assert_eq!(code, 1, "{err}");
}

#[test]
fn bad_input_exits_2() {
    let dir = Scratch::new("bad");
    let g = dir.file("g.txt", "3 2\n0 1\n1 3\n");
    let (code, _, err) = run(bin().arg("solve").arg(&g).args(["--x", "0", "--y", "1", "--d", "1"]));
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let g = dir.file("ok.txt", &path_file(4));
    for args in [["--x", "7", "--y", "1"], ["--x", "0", "--y", "a"]] {
        let (code, _, _) = run(bin().arg("solve").arg(&g).args(args).args(["--d", "1"]));
        assert_eq!(code, 2);
    }
    let (code, _, _) = run(bin().arg("solve").arg(&g).args(["--x", "0", "--y", "3"]));
    assert_eq!(code, 2, "missing d");
    let (code, _, _) = run(bin().arg("frobnicate"));
    assert_eq!(code, 2);
}

#[test]
fn verify_rejects_ball_below_minimum() {
    let dir = Scratch::new("minball");
    let (code, text, _) = run(bin().args(["generate", "figure1", "--d", "2"]));
    assert_eq!(code, 0);
    let g = dir.file("f1.txt", &text);
    let inst = to_instance(parse_graph(&text).unwrap(), None, None, None).unwrap();
    let MinBall::Ball { center, radius } = min_hitting_ball(&inst.graph, &inst.x, &inst.y).unwrap() else { panic!() };
    let cert = twopaths::Certificate::HittingBall { center, radius };
    let mut doc = CertificateDoc::new(&cert, &inst);
    let ok = dir.file("ok.json", &doc.to_json());
    assert_eq!(run(bin().arg("verify").arg(&g).arg(&ok)).0, 0);
    doc.radius = Some(radius - 1);
    let low = dir.file("low.json", &doc.to_json());
    assert_eq!(run(bin().arg("verify").arg(&g).arg(&low)).0, 1);

    let (code, _, _) = run(bin().arg("verify").arg(&g).args(["--d", "3"]).arg(&ok));
    assert_eq!(code, 1, "digest of another instance");
    let junk = dir.file("junk.json", "{\"type\": \"ball\", \"instance\": \"\"}");
    assert_eq!(run(bin().arg("verify").arg(&g).arg(&junk)).0, 2);
}

#[test]
fn generate_figure1_counts() {
    let (code, text, _) = run(bin().args(["generate", "figure1", "--d", "2"]));
    assert_eq!(code, 0);
    let file = parse_graph(&text).unwrap();
    assert_eq!((file.graph.vertex_count(), file.graph.edge_count()), (25, 41));
    assert_eq!(text, emit_instance(&figure1_instance(2).unwrap()));
}

#[test]
fn oracle_on_figure1() {
    let dir = Scratch::new("oracle");
    let (_, text, _) = run(bin().args(["generate", "figure1", "--d", "2"]));
    let g = dir.file("f1.txt", &text);
    let (code, out, _) = run(bin().arg("oracle").arg(&g).args(["--k", "2", "--min-ball"]));
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("absent"));
    assert!(out.contains("radius 2"));
    let (code, _, _) = run(bin().arg("oracle").arg(&g).env("TWOPATHS_ORACLE_BUDGET_SECS", "-1"));
    assert_eq!(code, 2);
}

#[test]
fn terminal_files() {
    let dir = Scratch::new("xfile");
    let g = dir.file("g.txt", &path_file(10));
    let x = dir.file("x.txt", "0\n");
    let y = dir.file("y.txt", "9 ,\n");
    let (code, _, _) =
        run(bin().arg("solve").arg(&g).arg("--x-file").arg(&x).arg("--y-file").arg(&y).args(["--d", "1"]));
    assert_eq!(code, 1);
}

#[test]
fn bench_rows_all_pass() {
    let (code, out, _) = run(bin().args(["bench", "--random", "8", "--seed", "3"]));
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(twopaths_cli::bench::CSV_HEADER));
    let rows: Vec<&str> = lines.clone().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3 + 12 + 8);
    assert!(rows.iter().all(|r| r.contains(",pass,")));
    assert!(out.lines().last().unwrap().starts_with("# max min_radius/d: "));
}
