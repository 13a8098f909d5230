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

//! Certification of paths and path covers.
//!
//! Everything here is recomputed from the adjacency rule alone; no solver
//! state is consulted. Reports list every violation found, not just the
//! first one.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::solver::{Instance, PathCover};
use crate::topology::{BalancedHypercube, SubcubeView, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    NotAdjacent,
    DuplicateVertex,
    NotDisjoint,
    NotCovering,
    BadEndpoint,
    BadCount,
    BadColor,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::NotAdjacent => "NOT_ADJACENT",
            ViolationKind::DuplicateVertex => "DUPLICATE_VERTEX",
            ViolationKind::NotDisjoint => "NOT_DISJOINT",
            ViolationKind::NotCovering => "NOT_COVERING",
            ViolationKind::BadEndpoint => "BAD_ENDPOINT",
            ViolationKind::BadCount => "BAD_COUNT",
            ViolationKind::BadColor => "BAD_COLOR",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>) -> Violation {
        Violation { kind, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn from_violations(violations: Vec<Violation>) -> VerifyReport {
        VerifyReport { ok: violations.is_empty(), violations }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    /// Distinct kinds present, sorted.
    pub fn kinds(&self) -> Vec<ViolationKind> {
        let mut out: Vec<ViolationKind> = self.violations.iter().map(|v| v.kind).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}

/// Adjacency, distinctness and color alternation of a vertex sequence.
pub fn verify_path(cube: &BalancedHypercube, path: &[Vertex]) -> VerifyReport {
    VerifyReport::from_violations(path_violations(cube, path, ""))
}

/// As [`verify_path`], but adjacency is that of the subcube: every vertex
/// must belong to the view and no step may use a removed edge.
pub fn verify_path_in_view(view: &SubcubeView, path: &[Vertex]) -> VerifyReport {
    let mut out = Vec::new();
    let mut local = Vec::with_capacity(path.len());
    for &v in path {
        match view.to_child(v) {
            Some(w) => local.push(w),
            None => out.push(Violation::new(
                ViolationKind::NotAdjacent,
                format!("{v} is outside subcube {}", view.index()),
            )),
        }
    }
    if out.is_empty() {
        out = path_violations(&view.cube(), &local, "");
        for v in &mut out {
            v.detail.push_str(" (child coordinates)");
        }
    }
    VerifyReport::from_violations(out)
}

fn path_violations(cube: &BalancedHypercube, path: &[Vertex], label: &str) -> Vec<Violation> {
    let mut out = Vec::new();
    if path.is_empty() {
        out.push(Violation::new(ViolationKind::BadCount, format!("{label}empty path")));
        return out;
    }
    for &v in path {
        if cube.check(v).is_err() {
            out.push(Violation::new(
                ViolationKind::NotAdjacent,
                format!("{label}{v} is not a vertex of BH_{}", cube.dim()),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut first_seen: HashMap<Vertex, usize> = HashMap::new();
    for (i, &v) in path.iter().enumerate() {
        if let Some(j) = first_seen.insert(v, i) {
            out.push(Violation::new(
                ViolationKind::DuplicateVertex,
                format!("{label}{v} at positions {j} and {i}"),
            ));
        }
    }
    for (i, w) in path.windows(2).enumerate() {
        if !cube.is_adjacent(w[0], w[1]) {
            out.push(Violation::new(
                ViolationKind::NotAdjacent,
                format!("{label}{} -> {} at step {i}", w[0], w[1]),
            ));
        }
        if w[0].color() == w[1].color() {
            out.push(Violation::new(
                ViolationKind::BadColor,
                format!("{label}{} and {} share color at step {i}", w[0], w[1]),
            ));
        }
    }
    out
}

/// Checks that `cover` is a disjoint path cover of the instance's cube:
/// the right number of paths, each valid, pairwise disjoint, jointly
/// spanning, each running from a source (white end) to a sink (black end),
/// and `pairing` agreeing with the actual endpoints.
pub fn verify_cover(instance: &Instance, cover: &PathCover) -> VerifyReport {
    let cube = instance.cube();
    let k = instance.k();
    let paths = cover.paths();
    let mut out = Vec::new();

    if paths.len() != k {
        out.push(Violation::new(
            ViolationKind::BadCount,
            format!("{} paths for {k} source/sink pairs", paths.len()),
        ));
    }

    let source_index: HashMap<Vertex, usize> =
        instance.sources().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let sink_index: HashMap<Vertex, usize> =
        instance.sinks().iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    // source index -> sink index actually realised
    let mut realised: HashMap<usize, usize> = HashMap::new();
    for (pi, path) in paths.iter().enumerate() {
        let label = format!("path {pi}: ");
        out.extend(path_violations(&cube, path, &label));
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            continue;
        };
        if path.len() < 2 {
            out.push(Violation::new(
                ViolationKind::BadEndpoint,
                format!("{label}single vertex {first} cannot join a source to a sink"),
            ));
        }
        if !first.is_white() || last.is_white() {
            out.push(Violation::new(
                ViolationKind::BadColor,
                format!(
                    "{label}runs {first} ({}) -> {last} ({}), expected V0 -> V1",
                    first.color(),
                    last.color()
                ),
            ));
        }
        let (white_end, black_end) = if first.is_white() { (first, last) } else { (last, first) };
        match source_index.get(&white_end) {
            Some(&si) => {
                if let Some(&ti) = sink_index.get(&black_end) {
                    if realised.insert(si, ti).is_some() {
                        out.push(Violation::new(
                            ViolationKind::BadEndpoint,
                            format!("{label}source {white_end} starts more than one path"),
                        ));
                    }
                }
            }
            None => out.push(Violation::new(
                ViolationKind::BadEndpoint,
                format!("{label}white end {white_end} is not a source"),
            )),
        }
        if !sink_index.contains_key(&black_end) {
            out.push(Violation::new(
                ViolationKind::BadEndpoint,
                format!("{label}black end {black_end} is not a sink"),
            ));
        }
        for &v in path.iter() {
            if cube.check(v).is_err() {
                continue;
            }
            if let Some(&other) = owner.get(&v) {
                if other != pi {
                    out.push(Violation::new(
                        ViolationKind::NotDisjoint,
                        format!("{v} lies on paths {other} and {pi}"),
                    ));
                }
            } else {
                owner.insert(v, pi);
            }
        }
    }

    let missing: Vec<Vertex> = cube.vertices().filter(|v| !owner.contains_key(v)).collect();
    if !missing.is_empty() {
        let shown: Vec<String> = missing.iter().take(8).map(|v| v.to_string()).collect();
        let more = if missing.len() > 8 { format!(" and {} more", missing.len() - 8) } else { String::new() };
        out.push(Violation::new(
            ViolationKind::NotCovering,
            format!("{} uncovered: {}{more}", missing.len(), shown.join(", ")),
        ));
    }

    let pairing = cover.pairing();
    if pairing.len() != k {
        out.push(Violation::new(
            ViolationKind::BadEndpoint,
            format!("pairing has {} entries for {k} sources", pairing.len()),
        ));
    } else {
        let mut hit = vec![false; k];
        for (si, &ti) in pairing.iter().enumerate() {
            if ti >= k || std::mem::replace(&mut hit[ti], true) {
                out.push(Violation::new(
                    ViolationKind::BadEndpoint,
                    format!("pairing is not a permutation at source {si} -> {ti}"),
                ));
                continue;
            }
            if let Some(&actual) = realised.get(&si) {
                if actual != ti {
                    out.push(Violation::new(
                        ViolationKind::BadEndpoint,
                        format!(
                            "pairing sends source {} to sink {} but its path ends at {}",
                            instance.sources()[si],
                            instance.sinks()[ti],
                            instance.sinks()[actual]
                        ),
                    ));
                }
            }
        }
    }

    VerifyReport::from_violations(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    fn bh(n: usize) -> BalancedHypercube {
        BalancedHypercube::new(n).unwrap()
    }

    #[test]
    fn path_examples() {
        let ok = verify_path(&bh(1), &[v(&[0]), v(&[3]), v(&[2]), v(&[1])]);
        assert!(ok.ok, "{ok}");
        let gap = verify_path(&bh(1), &[v(&[0]), v(&[2])]);
        assert!(gap.has(ViolationKind::NotAdjacent));
        let dup = verify_path(&bh(1), &[v(&[0]), v(&[1]), v(&[0])]);
        assert_eq!(dup.kinds(), vec![ViolationKind::DuplicateVertex]);
    }

    #[test]
    fn hamiltonian_path_is_a_one_path_cover() {
        let inst = Instance::with_any_size(1, vec![v(&[0])], vec![v(&[1])]).unwrap();
        let cover = PathCover::new(vec![vec![v(&[0]), v(&[3]), v(&[2]), v(&[1])].into()], vec![0]);
        assert!(verify_cover(&inst, &cover).ok);
    }

    #[test]
    fn report_json_shape() {
        let r = verify_path(&bh(1), &[v(&[0]), v(&[2])]);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["ok"], false);
        assert_eq!(j["violations"][0]["kind"], "NOT_ADJACENT");
    }

    #[test]
    fn view_path_rejects_removed_edges() {
        let split = bh(2).split(1).unwrap();
        let view = split.view(0);
        assert!(verify_path_in_view(&view, &[v(&[0, 0]), v(&[1, 0])]).ok);
        assert!(!verify_path_in_view(&view, &[v(&[0, 0]), v(&[1, 1])]).ok);
    }
}
