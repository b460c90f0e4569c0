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

//! Solve-and-verify runs over a generated corpus, reported as CSV.

use std::fmt::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use twopaths::generators::{figure1_instance, grid_instance, random_instance, Instance};
use twopaths::oracle::{exact_distant_paths, min_hitting_ball, MinBall, OracleBudget};
use twopaths::{solve, verify_certificate};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub random: usize,
    pub seed: u64,
    /// The oracles run only on instances with at most this many vertices.
    pub oracle_cap: usize,
    pub budget: OracleBudget,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { random: 50, seed: 0, oracle_cap: 30, budget: OracleBudget::default() }
    }
}

/// Outcome of one corpus instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub id: usize,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub x: usize,
    pub y: usize,
    pub d: usize,
    /// `paths`, `ball` or `error`.
    pub certificate: String,
    /// `pass`, or the rejection / error message.
    pub verification: String,
    pub solve_time: Duration,
    pub oracle: Option<String>,
    pub min_radius: Option<usize>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verification == "pass"
    }

    pub fn radius_over_d(&self) -> Option<f64> {
        self.min_radius.map(|r| r as f64 / self.d as f64)
    }
}

pub fn default_corpus(cfg: &BenchConfig) -> CliResult<Vec<Instance>> {
    let mut out = Vec::new();
    for d in 2..=4 {
        out.push(figure1_instance(d)?);
    }
    for (rows, cols) in [(2, 5), (5, 5), (10, 10), (20, 20)] {
        for d in [1, 2, 3] {
            out.push(grid_instance(rows, cols, d)?);
        }
    }
    for i in 0..cfg.random {
        let seed = cfg.seed.wrapping_add(i as u64);
        let n = 10 + (seed % 191) as usize;
        let d = [1, 2, 3, 5][i % 4];
        out.push(random_instance(n, 2.5 / n as f64, 2, 2, seed, d)?);
    }
    Ok(out)
}

fn run_one(id: usize, inst: &Instance, cfg: &BenchConfig) -> RunReport {
    let start = Instant::now();
    let solved = solve(&inst.graph, &inst.x, &inst.y, inst.d);
    let solve_time = start.elapsed();
    let (certificate, verification) = match &solved {
        Ok(cert) => (
            cert.kind().to_string(),
            match verify_certificate(&inst.graph, &inst.x, &inst.y, inst.d, cert) {
                Ok(()) => "pass".to_string(),
                Err(r) => r.to_string(),
            },
        ),
        Err(e) => ("error".to_string(), e.to_string()),
    };
    let small = inst.graph.vertex_count() <= cfg.oracle_cap;
    let oracle = small.then(|| match exact_distant_paths(&inst.graph, &inst.x, &inst.y, inst.d, 2, cfg.budget) {
        Ok(o) => o.label().to_string(),
        Err(e) => e.to_string(),
    });
    let min_radius = match small.then(|| min_hitting_ball(&inst.graph, &inst.x, &inst.y)) {
        Some(Ok(MinBall::Ball { radius, .. })) => Some(radius),
        _ => None,
    };
    RunReport {
        id,
        label: inst.label.clone(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        x: inst.x.len(),
        y: inst.y.len(),
        d: inst.d,
        certificate,
        verification,
        solve_time,
        oracle,
        min_radius,
    }
}

/// Runs the corpus in parallel; reports come back in corpus order.
pub fn run(corpus: &[Instance], cfg: &BenchConfig) -> Vec<RunReport> {
    corpus.par_iter().enumerate().map(|(id, inst)| run_one(id, inst, cfg)).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "id,label,n,m,x,y,d,certificate,verification,solve_ms,oracle,min_radius,min_radius_over_d";

/// One row per report, then a comment line with the largest observed
/// minimum hitting radius divided by `d`.
pub fn to_csv(reports: &[RunReport]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{:.3},{},{},{}",
            r.id,
            csv_field(&r.label),
            r.n,
            r.m,
            r.x,
            r.y,
            r.d,
            r.certificate,
            csv_field(&r.verification),
            r.solve_time.as_secs_f64() * 1e3,
            r.oracle.as_deref().unwrap_or(""),
            r.min_radius.map(|v| v.to_string()).unwrap_or_default(),
            r.radius_over_d().map(|v| format!("{v:.3}")).unwrap_or_default(),
        )
        .unwrap();
    }
    let max = reports
        .iter()
        .filter_map(RunReport::radius_over_d)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    match max {
        Some(v) => writeln!(out, "# max min_radius/d: {v:.3}").unwrap(),
        None => out.push_str("# max min_radius/d: n/a\n"),
    }
    out
}

/// Reads `TWOPATHS_ORACLE_BUDGET_SECS` (default 60).
pub fn budget_from_env() -> CliResult<OracleBudget> {
    match std::env::var("TWOPATHS_ORACLE_BUDGET_SECS") {
        Ok(v) => {
            let secs: f64 = v.trim().parse().ok().filter(|s: &f64| s.is_finite() && *s > 0.0).ok_or_else(|| {
                CliError::Usage(format!("TWOPATHS_ORACLE_BUDGET_SECS must be a positive number, got {v:?}"))
            })?;
            Ok(OracleBudget::with_time(Duration::from_secs_f64(secs)))
        }
        Err(_) => Ok(OracleBudget::default()),
    }
}
