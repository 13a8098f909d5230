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

//! Serialized views of the cube: a JSON vertex/edge listing and Graphviz
//! DOT, optionally highlighting a path cover.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::PathCover;
use crate::topology::{BalancedHypercube, ColorClass, Edge, Vertex};

/// Largest cube the exporters will write out.
pub const EXPORT_MAX_DIM: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct TopologyExport {
    pub n: usize,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexEntry {
    pub vertex: Vertex,
    pub color: ColorClass,
}

fn capped(n: usize) -> Result<BalancedHypercube> {
    if n == 0 || n > EXPORT_MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim: n, min: 1, max: EXPORT_MAX_DIM });
    }
    BalancedHypercube::new(n)
}

pub fn topology(n: usize) -> Result<TopologyExport> {
    let cube = capped(n)?;
    Ok(TopologyExport {
        n,
        vertices: cube.vertices().map(|vertex| VertexEntry { vertex, color: vertex.color() }).collect(),
        edges: cube.edges(),
    })
}

pub fn topology_json(n: usize) -> Result<String> {
    Ok(serde_json::to_string_pretty(&topology(n)?)?)
}

/// Undirected DOT graph; V0 filled white, V1 filled black, edges labelled
/// with their dimension. Edges used by `cover` are drawn bold.
pub fn topology_dot(n: usize, cover: Option<&PathCover>) -> Result<String> {
    let cube = capped(n)?;
    let mut used = std::collections::HashSet::new();
    if let Some(c) = cover {
        for p in c.paths() {
            for w in p.windows(2) {
                used.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "graph BH{n} {{").expect("string write");
    writeln!(out, "  node [shape=circle, style=filled, fontsize=10];").expect("string write");
    for v in cube.vertices() {
        let style = match v.color() {
            ColorClass::V0 => "fillcolor=white, fontcolor=black",
            ColorClass::V1 => "fillcolor=black, fontcolor=white",
        };
        writeln!(out, "  \"{v}\" [{style}];").expect("string write");
    }
    for e in cube.edges() {
        let bold = if used.contains(&(e.u, e.v)) { ", penwidth=3" } else { "" };
        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"{bold}];", e.u, e.v, e.dimension)
            .expect("string write");
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_dimension() {
        for (n, v, e) in [(1, 4, 4), (2, 16, 32), (3, 64, 192)] {
            let t = topology(n).unwrap();
            assert_eq!((t.vertices.len(), t.edges.len()), (v, e));
        }
        assert!(topology(5).is_err());
    }

    #[test]
    fn dot_is_well_formed() {
        let dot = topology_dot(1, None).unwrap();
        assert!(dot.starts_with("graph BH1 {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.contains("\"(1)\" [fillcolor=black"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
