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

//! Certificate documents: one JSON object per certificate with a fixed key
//! order, tied to its instance by a SHA-256 digest.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use twopaths::generators::Instance;
use twopaths::{Certificate, Path, Vertex};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Paths,
    Ball,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    #[serde(rename = "type")]
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    pub instance: String,
}

/// SHA-256 over the graph's sorted edge list, the sorted terminal sets and
/// `d`. The label does not take part.
pub fn instance_digest(inst: &Instance) -> String {
    let mut h = Sha256::new();
    h.update(format!("{} {}\n", inst.graph.vertex_count(), inst.graph.edge_count()));
    for &(u, v) in inst.graph.edges() {
        h.update(format!("{u} {v}\n"));
    }
    for (name, set) in [("x", &inst.x), ("y", &inst.y)] {
        let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        h.update(format!("{name} {}\n", ids.join(",")));
    }
    h.update(format!("d {}\n", inst.d));
    hex::encode(h.finalize())
}

impl CertificateDoc {
    pub fn new(cert: &Certificate, inst: &Instance) -> Self {
        let instance = instance_digest(inst);
        match cert {
            Certificate::DistantPaths { p1, p2 } => CertificateDoc {
                kind: Kind::Paths,
                p1: Some(p1.vertices().to_vec()),
                p2: Some(p2.vertices().to_vec()),
                center: None,
                radius: None,
                instance,
            },
            Certificate::HittingBall { center, radius } => CertificateDoc {
                kind: Kind::Ball,
                p1: None,
                p2: None,
                center: Some(*center),
                radius: Some(*radius),
                instance,
            },
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: CertificateDoc = serde_json::from_str(text)?;
        let complete = match doc.kind {
            Kind::Paths => doc.p1.is_some() && doc.p2.is_some() && doc.center.is_none() && doc.radius.is_none(),
            Kind::Ball => doc.center.is_some() && doc.radius.is_some() && doc.p1.is_none() && doc.p2.is_none(),
        };
        if !complete {
            return Err(CliError::Usage("certificate fields do not match its type".into()));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate documents always serialize")
    }

    /// The certificate, with paths checked to be paths of `inst`'s graph.
    pub fn certificate(&self, inst: &Instance) -> twopaths::Result<Certificate> {
        Ok(match self.kind {
            Kind::Paths => Certificate::DistantPaths {
                p1: Path::new(&inst.graph, self.p1.clone().unwrap_or_default())?,
                p2: Path::new(&inst.graph, self.p2.clone().unwrap_or_default())?,
            },
            Kind::Ball => Certificate::HittingBall {
                center: self.center.unwrap_or_default(),
                radius: self.radius.unwrap_or_default(),
            },
        })
    }
}
