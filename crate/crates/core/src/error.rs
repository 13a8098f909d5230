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

use std::time::Duration;

use crate::topology::Vertex;
use crate::verifier::{VerifyReport, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed vertex: {0}")]
    MalformedVertex(String),

    #[error("dimension {dim} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },

    #[error("vertex {vertex} does not belong to BH_{expected}")]
    WrongDimension { vertex: Vertex, expected: usize },

    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),

    #[error("split dimension {d} is invalid for BH_{n}")]
    InvalidSplit { n: usize, d: usize },

    #[error("endpoints {0} and {1} have the same color")]
    SameColor(Vertex, Vertex),

    #[error("endpoints coincide at {0}")]
    SameVertex(Vertex),

    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(Duration),

    #[error("exhaustive search refused: {0}")]
    SizeCap(String),

    #[error("mirror assignment infeasible: {0}")]
    MirrorInfeasible(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("output rejected by the verifier: {}", join_violations(&.0.violations))]
    Verification(VerifyReport),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("{}: {}", x.kind, x.detail)).collect::<Vec<_>>().join("; ")
}
