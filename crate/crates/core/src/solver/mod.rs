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

//! Construction of unpaired disjoint path covers.
//!
//! The recursion works on canonical coordinates: a sub-problem inside a
//! subcube is mapped through the subcube's isomorphism onto `BH_(n-1)`,
//! solved there, and the paths are mapped back. Sub-problems may ask for
//! any number `1 <= k <= 2m - 2` of paths, so the recursion is written for
//! general `k` even though the public entry point fixes `k = 2n - 2`.

mod base;
mod chain;
mod linkage;
mod mirror;
mod plan;
mod splice;

use std::collections::HashSet;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hampath::{self, Path};
use crate::topology::{BalancedHypercube, Split, Vertex};
use crate::verifier::{verify_cover, Violation, ViolationKind};

pub(crate) use linkage::Linkage;
pub use mirror::{choose_mirror, MirrorAssignment};
pub use plan::{find_anchor, good_split_dimensions, select_split, SplitPlan};
pub use splice::surgery_candidates;
pub(crate) use splice::{ring_splice, thread};

/// Sources (white) and sinks (black) of `BH_n`, in the caller's order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    n: usize,
    sources: Vec<Vertex>,
    sinks: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: usize,
    sources: Vec<Vertex>,
    sinks: Vec<Vertex>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Instance> {
        Instance::with_any_size(raw.n, raw.sources, raw.sinks)
    }
}

impl From<Instance> for RawInstance {
    fn from(i: Instance) -> RawInstance {
        RawInstance { n: i.n, sources: i.sources, sinks: i.sinks }
    }
}

impl Instance {
    /// An instance with exactly `2n - 2` sources and sinks.
    pub fn new(n: usize, sources: Vec<Vertex>, sinks: Vec<Vertex>) -> Result<Instance> {
        let inst = Instance::with_any_size(n, sources, sinks)?;
        inst.require_full()?;
        Ok(inst)
    }

    /// Any `k = |S| = |T| >= 1`; used by the oracle and by sub-problems.
    pub fn with_any_size(n: usize, sources: Vec<Vertex>, sinks: Vec<Vertex>) -> Result<Instance> {
        let cube = BalancedHypercube::new(n)?;
        let mut bad = Vec::new();
        if sources.len() != sinks.len() || sources.is_empty() {
            bad.push(Violation::new(
                ViolationKind::BadCount,
                format!("{} sources and {} sinks", sources.len(), sinks.len()),
            ));
        }
        for (role, set, white) in [("source", &sources, true), ("sink", &sinks, false)] {
            let mut seen = HashSet::new();
            for &v in set.iter() {
                if cube.check(v).is_err() {
                    bad.push(Violation::new(
                        ViolationKind::BadEndpoint,
                        format!("{role} {v} is not a vertex of BH_{n}"),
                    ));
                    continue;
                }
                if v.is_white() != white {
                    bad.push(Violation::new(
                        ViolationKind::BadColor,
                        format!("{role} {v} is in {}", v.color()),
                    ));
                }
                if !seen.insert(v) {
                    bad.push(Violation::new(
                        ViolationKind::DuplicateVertex,
                        format!("{role} {v} listed twice"),
                    ));
                }
            }
        }
        if !bad.is_empty() {
            return Err(Error::InvalidInstance(bad));
        }
        Ok(Instance { n, sources, sinks })
    }

    pub(crate) fn require_full(&self) -> Result<()> {
        let want = 2 * self.n as isize - 2;
        if self.k() as isize != want {
            return Err(Error::InvalidInstance(vec![Violation::new(
                ViolationKind::BadCount,
                format!("BH_{} needs {want} sources and sinks, got {}", self.n, self.k()),
            )]));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sources.len()
    }

    pub fn cube(&self) -> BalancedHypercube {
        BalancedHypercube::new(self.n).expect("validated")
    }

    pub fn sources(&self) -> &[Vertex] {
        &self.sources
    }

    pub fn sinks(&self) -> &[Vertex] {
        &self.sinks
    }
}

/// Disjoint paths plus the source-to-sink assignment they realise.
/// `pairing[i]` is the index in the instance's sink list of the sink that
/// source `i` is joined to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCover {
    paths: Vec<Path>,
    pairing: Vec<usize>,
}

impl PathCover {
    pub fn new(paths: Vec<Path>, pairing: Vec<usize>) -> PathCover {
        PathCover { paths, pairing }
    }

    /// Orders `paths` by source and reads the pairing off the endpoints.
    pub fn from_paths(instance: &Instance, paths: Vec<Path>) -> Result<PathCover> {
        let mut slots: Vec<Option<Path>> = vec![None; instance.k()];
        let mut pairing = vec![usize::MAX; instance.k()];
        for p in paths {
            let (Some(&first), Some(&last)) = (p.first(), p.last()) else {
                return Err(Error::Construction("empty path".into()));
            };
            let si = instance.sources.iter().position(|&s| s == first);
            let ti = instance.sinks.iter().position(|&t| t == last);
            match (si, ti) {
                (Some(si), Some(ti)) if slots[si].is_none() => {
                    slots[si] = Some(p);
                    pairing[si] = ti;
                }
                _ => {
                    return Err(Error::Construction(format!(
                        "path {first} .. {last} does not join a free source to a sink"
                    )))
                }
            }
        }
        let paths = slots
            .into_iter()
            .collect::<Option<Vec<Path>>>()
            .ok_or_else(|| Error::Construction("some source has no path".into()))?;
        Ok(PathCover { paths, pairing })
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn into_parts(self) -> (Vec<Path>, Vec<usize>) {
        (self.paths, self.pairing)
    }
}

/// Which subcubes (by position after anchoring) carried no path before the
/// empty ones were threaded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layout {
    AllOccupied,
    OneEmpty { position: usize },
    TwoAdjacentEmpty { positions: [usize; 2] },
    TwoOppositeEmpty { positions: [usize; 2] },
    ThreeEmpty { occupied: usize },
}

impl Layout {
    pub(crate) fn from_empty(empty: &[usize]) -> Layout {
        match *empty {
            [] => Layout::AllOccupied,
            [p] => Layout::OneEmpty { position: p },
            [a, b] if (b + 4 - a) % 4 == 2 => Layout::TwoOppositeEmpty { positions: [a, b] },
            [a, b] => Layout::TwoAdjacentEmpty { positions: [a, b] },
            [a, b, c] => {
                Layout::ThreeEmpty { occupied: (0..4).find(|p| ![a, b, c].contains(p)).expect("one left") }
            }
            _ => unreachable!("a cover touches at least one subcube"),
        }
    }
}

/// One split level of a solve, recorded in pre-order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub depth: usize,
    pub dim: usize,
    pub k: usize,
    pub split_dimension: usize,
    pub rotation: usize,
    /// Positions with neither sources nor sinks of their own.
    pub input_empty: Vec<usize>,
    /// Positions whose sink side exceeded the sub-problem limit.
    pub oversubscribed: Vec<usize>,
    pub layout: Layout,
    /// Plans abandoned before this one succeeded.
    pub rejected_plans: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub cover: PathCover,
    pub trace: Vec<LevelRecord>,
}

impl Solution {
    pub fn top_level(&self) -> Option<&LevelRecord> {
        self.trace.iter().find(|r| r.depth == 0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { budget: Some(Budget::DEFAULT) }
    }
}

pub fn solve(instance: &Instance) -> Result<PathCover> {
    solve_with(instance, &SolveOptions::default()).map(|s| s.cover)
}

/// Solves, verifies, and returns the cover with its construction trace.
pub fn solve_with(instance: &Instance, options: &SolveOptions) -> Result<Solution> {
    instance.require_full()?;
    solve_any(instance, options)
}

/// Like [`solve_with`] but accepts any `1 <= k <= max(2n - 2, 1)`; BH_1
/// also admits `k = 2`.
pub fn solve_any(instance: &Instance, options: &SolveOptions) -> Result<Solution> {
    let n = instance.n();
    let limit = if n == 1 { 2 } else { 2 * n - 2 };
    if instance.k() > limit {
        return Err(Error::InvalidInstance(vec![Violation::new(
            ViolationKind::BadCount,
            format!("at most {limit} paths are guaranteed in BH_{n}, asked for {}", instance.k()),
        )]));
    }
    let mut cx = Ctx::new(options.budget);
    let raw = cover(n, instance.sources(), instance.sinks(), &mut cx)?;
    let cover = PathCover::from_paths(instance, raw.into_iter().map(Path::from).collect())?;
    let report = verify_cover(instance, &cover);
    if !report.ok {
        return Err(Error::Verification(report));
    }
    Ok(Solution { cover, trace: cx.trace })
}

/// The `n = 2`, `k = 2` case by bounded search.
pub fn solve_base(instance: &Instance) -> Result<PathCover> {
    if instance.n() != 2 || instance.k() != 2 {
        return Err(Error::InvalidInstance(vec![Violation::new(
            ViolationKind::BadCount,
            "the base case is BH_2 with two sources and two sinks",
        )]));
    }
    let mut cx = Ctx::new(Some(Budget::DEFAULT));
    let raw = base::solve_base(instance.sources(), instance.sinks(), &mut cx)?;
    let cover = PathCover::from_paths(instance, raw.into_iter().map(Path::from).collect())?;
    let report = verify_cover(instance, &cover);
    if !report.ok {
        return Err(Error::Verification(report));
    }
    Ok(cover)
}

/// Shared state of one top-level call.
pub(crate) struct Ctx {
    budget: Budget,
    ticks: u32,
    depth: usize,
    pub(crate) trace: Vec<LevelRecord>,
}

impl Ctx {
    pub(crate) fn new(limit: Option<Duration>) -> Ctx {
        Ctx::with_budget(limit.map_or_else(Budget::unlimited, Budget::new))
    }

    pub(crate) fn with_budget(budget: Budget) -> Ctx {
        Ctx { budget, ticks: 0, depth: 0, trace: Vec::new() }
    }

    pub(crate) fn budget_check(&self) -> Result<()> {
        self.budget.check()
    }

    /// Cheap enough for inner loops: the clock is read every 256th call.
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(256) {
            self.budget.check()?;
        }
        Ok(())
    }
}

/// Paths of `BH_m` from each of `sources` (in order) to distinct members of
/// `sinks`, jointly covering the cube. Not verified here.
pub(crate) fn cover(
    m: usize,
    sources: &[Vertex],
    sinks: &[Vertex],
    cx: &mut Ctx,
) -> Result<Vec<Vec<Vertex>>> {
    cx.budget.check()?;
    let k = sources.len();
    debug_assert_eq!(k, sinks.len());
    match (m, k) {
        (_, 0) => Err(Error::Construction("empty sub-problem".into())),
        (_, 1) => Ok(vec![hampath::construct(m, sources[0], sinks[0], cx)?]),
        (1, 2) => {
            // In a 4-cycle every white vertex is adjacent to every black one.
            Ok(vec![vec![sources[0], sinks[0]], vec![sources[1], sinks[1]]])
        }
        (2, 2) => base::solve_base(sources, sinks, cx),
        (m, k) if m >= 3 && k <= 2 * m - 2 => pipeline(m, sources, sinks, cx),
        _ => Err(Error::Construction(format!("no construction for {k} paths in BH_{m}"))),
    }
}

/// [`cover`] inside one subcube, in parent coordinates.
pub(crate) fn cover_in(
    split: &Split,
    index: usize,
    sources: &[Vertex],
    sinks: &[Vertex],
    cx: &mut Ctx,
) -> Result<Vec<Vec<Vertex>>> {
    let s: Vec<Vertex> = sources.iter().map(|&v| split.to_child(v)).collect();
    let t: Vec<Vertex> = sinks.iter().map(|&v| split.to_child(v)).collect();
    let paths = cover(split.child_dim(), &s, &t, cx)?;
    Ok(paths.into_iter().map(|p| p.into_iter().map(|w| split.to_parent(index, w)).collect()).collect())
}

fn pipeline(m: usize, sources: &[Vertex], sinks: &[Vertex], cx: &mut Ctx) -> Result<Vec<Vec<Vertex>>> {
    let mut rejected = 0;
    let mut last_err = None;
    for plan in plan::candidates(m, sources, sinks)? {
        let mark = cx.trace.len();
        cx.depth += 1;
        let attempt = attempt_plan(&plan, sources, sinks, cx);
        cx.depth -= 1;
        match attempt {
            Ok((paths, oversubscribed, empty)) => {
                let record = LevelRecord {
                    depth: cx.depth,
                    dim: m,
                    k: sources.len(),
                    split_dimension: plan.dimension(),
                    rotation: plan.rotation(),
                    input_empty: plan.input_empty(),
                    oversubscribed,
                    layout: Layout::from_empty(&empty),
                    rejected_plans: rejected,
                };
                cx.trace.insert(mark, record);
                return Ok(paths);
            }
            Err(e @ Error::BudgetExceeded(_)) => return Err(e),
            Err(e) => {
                cx.trace.truncate(mark);
                rejected += 1;
                last_err = Some(e);
            }
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Construction(format!("no admissible split for {} paths in BH_{m}", sources.len()))
    }))
}

type Attempt = (Vec<Vec<Vertex>>, Vec<usize>, Vec<usize>);

fn attempt_plan(plan: &SplitPlan, sources: &[Vertex], sinks: &[Vertex], cx: &mut Ctx) -> Result<Attempt> {
    chain::run(plan, cx, &mut |mut link, oversubscribed, cx| {
        let occupied = ring_splice(plan.split(), &mut link, sources, sinks, cx)?;
        let empty: Vec<usize> = (0..4).filter(|&p| !occupied[plan.index_of(p)]).collect();
        let paths = link.decode(sources, sinks, 1 << (2 * plan.split().parent_dim()))?;
        Ok((paths, oversubscribed, empty))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(Instance::new(2, vec![v(&[0, 0]), v(&[0, 1])], vec![v(&[1, 0]), v(&[1, 1])]).is_ok());
        let short = Instance::new(2, vec![v(&[0, 0])], vec![v(&[1, 0])]);
        assert!(
            matches!(short, Err(Error::InvalidInstance(ref vs)) if vs[0].kind == ViolationKind::BadCount)
        );
        let black = Instance::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[3, 0]), v(&[1, 1])]);
        assert!(
            matches!(black, Err(Error::InvalidInstance(ref vs)) if vs.iter().any(|x| x.kind == ViolationKind::BadColor))
        );
        let dup = Instance::new(2, vec![v(&[0, 0]), v(&[0, 0])], vec![v(&[1, 0]), v(&[1, 1])]);
        assert!(
            matches!(dup, Err(Error::InvalidInstance(ref vs)) if vs[0].kind == ViolationKind::DuplicateVertex)
        );
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = Instance::new(2, vec![v(&[0, 0]), v(&[0, 1])], vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        let text = serde_json::to_string(&inst).unwrap();
        assert_eq!(text, r#"{"n":2,"sources":[[0,0],[0,1]],"sinks":[[1,0],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<Instance>(&text).unwrap(), inst);
        assert!(serde_json::from_str::<Instance>(r#"{"n":2,"sources":[[1,0]],"sinks":[[3,0]]}"#).is_err());
    }

    #[test]
    fn small_base_instances() {
        for (s, t) in [
            ([[0, 0], [0, 1]], [[1, 0], [1, 1]]),
            ([[0, 0], [2, 0]], [[1, 0], [3, 0]]),
            ([[0, 0], [2, 1]], [[1, 0], [3, 1]]),
            ([[0, 0], [2, 0]], [[1, 1], [3, 1]]),
        ] {
            let inst =
                Instance::new(2, s.iter().map(|c| v(c)).collect(), t.iter().map(|c| v(c)).collect()).unwrap();
            let cover = solve(&inst).unwrap();
            assert_eq!(cover.paths().len(), 2);
            assert_eq!(cover, solve_base(&inst).unwrap());
        }
    }

    #[test]
    fn layout_classification() {
        assert_eq!(Layout::from_empty(&[]), Layout::AllOccupied);
        assert_eq!(Layout::from_empty(&[1, 3]), Layout::TwoOppositeEmpty { positions: [1, 3] });
        assert_eq!(Layout::from_empty(&[0, 3]), Layout::TwoAdjacentEmpty { positions: [0, 3] });
        assert_eq!(Layout::from_empty(&[0, 1, 3]), Layout::ThreeEmpty { occupied: 2 });
    }
}
