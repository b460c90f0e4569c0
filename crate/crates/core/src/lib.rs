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

//! Distant disjoint paths between two vertex sets.
//!
//! For a graph `G`, terminal sets `X`, `Y` and a distance `d`, the solver in
//! [`dichotomy`] returns one of two certificates: two disjoint `X`-`Y` paths
//! at distance at least `d` from each other, or a vertex `z` such that the
//! ball of radius `121 * d` around `z` meets every `X`-`Y` path. Both kinds
//! are checked by the verifiers in [`certificates`]. The [`oracle`] module
//! holds exponential exact solvers for small instances and [`generators`]
//! builds the instance families used by the tests and the CLI.

pub mod certificates;
pub mod dichotomy;
pub mod error;
pub mod generators;
pub mod graph;
pub mod intervals;
pub mod oracle;

pub use certificates::{verify_ball, verify_certificate, verify_paths, Certificate};
pub use dichotomy::{solve, Constants};
pub use error::{Error, Result};
pub use graph::{Distance, Graph, Path, Vertex, VertexSet};
