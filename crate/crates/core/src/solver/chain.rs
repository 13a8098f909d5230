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

//! The chained pass over the subcubes.
//!
//! Positions are visited in the order 1, 2, 3, 0. A position with more
//! sinks (its own plus those mirrored in from below) than sources borrows
//! extra white start points `A`; each start point is fed by a cross edge
//! from a black vertex `b` one position up, which becomes an extra sink
//! there. Position 0 must balance exactly.
//!
//! Each position offers a few alternatives (different `A`, sink orders,
//! leftover choices). The pass backtracks through them until `finish`
//! accepts the assembled links.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::solver::mirror::{choose_mirror_from, match_mirrors, MirrorAssignment};
use crate::solver::plan::SplitPlan;
use crate::solver::{cover_in, Ctx, LevelRecord, Linkage};
use crate::topology::{Split, Vertex};

const ORDER: [usize; 4] = [1, 2, 3, 0];

/// Mirror sets tried per position, by greedy start offset.
const MIRROR_VARIANTS: usize = 4;

type Segments = Vec<Vec<Vertex>>;
type Pairs = Vec<(Vertex, Vertex)>;

/// Receives the links and the oversubscribed positions of a complete pass.
pub(crate) type Finish<'a, T> = dyn FnMut(Linkage, Vec<usize>, &mut Ctx) -> Result<T> + 'a;
type Choice = (Segments, Pairs, Vec<LevelRecord>);

/// Solves every occupied position, links the mirror edges and hands the
/// result to `finish` together with the oversubscribed positions. On a
/// rejection the next alternative is tried.
pub(crate) fn run<T>(plan: &SplitPlan, cx: &mut Ctx, finish: &mut Finish<'_, T>) -> Result<T> {
    let m = plan.split().parent_dim();
    step(plan, 0, Linkage::new(m), Vec::new(), Vec::new(), cx, finish)
}

fn step<T>(
    plan: &SplitPlan,
    at: usize,
    link: Linkage,
    incoming: Vec<Vertex>,
    oversubscribed: Vec<usize>,
    cx: &mut Ctx,
    finish: &mut Finish<'_, T>,
) -> Result<T> {
    if at == ORDER.len() {
        debug_assert!(incoming.is_empty());
        return finish(link, oversubscribed, cx);
    }
    let p = ORDER[at];
    let split = plan.split();
    let cap = 2 * split.parent_dim() - 4;
    cx.budget_check()?;
    let idx = plan.index_of(p);
    let sources = plan.sources(p).to_vec();
    let mut sinks = plan.sinks(p).to_vec();
    sinks.extend(&incoming);
    if sources.is_empty() && sinks.is_empty() {
        return step(plan, at + 1, link, Vec::new(), oversubscribed, cx, finish);
    }
    if sinks.len() < sources.len() {
        return Err(Error::Construction(format!(
            "position {p} has {} sources but only {} sinks",
            sources.len(),
            sinks.len()
        )));
    }
    let need = sinks.len() - sources.len();
    if p == 0 && need != 0 {
        return Err(Error::Construction(format!(
            "anchor does not close: {} sinks against {} sources",
            sinks.len(),
            sources.len()
        )));
    }
    let blocked: BTreeSet<Vertex> = plan.sinks(p + 1).iter().copied().collect();
    let over = sinks.len() > cap;
    let mut oversubscribed = oversubscribed;
    if over {
        oversubscribed.push(p);
    }
    let mut last_err = None;
    for (mirror, order) in seeds(split, idx, &sources, &sinks, need, cap, &blocked, over)? {
        let mut starts = sources.clone();
        starts.extend(&mirror.a);
        let expanded = if over {
            relax_oversubscribed(split, idx, &starts, &mirror.a, &order, cap, &blocked, cx)
        } else {
            let mark = cx.trace.len();
            match cover_in(split, idx, &starts, &order, cx) {
                Ok(paths) => vec![(paths, mirror.pairs().collect(), cx.trace.split_off(mark))],
                Err(e @ Error::BudgetExceeded(_)) => return Err(e),
                Err(e) => {
                    cx.trace.truncate(mark);
                    last_err = Some(e);
                    Vec::new()
                }
            }
        };
        for (segments, pairs, records) in expanded {
            let mark = cx.trace.len();
            cx.trace.extend(records);
            let mut next_link = link.clone();
            let mut next_incoming = Vec::with_capacity(pairs.len());
            for path in &segments {
                next_link.add_path(path);
            }
            for (a, b) in pairs {
                next_link.set_next(b, a);
                next_incoming.push(b);
            }
            match step(plan, at + 1, next_link, next_incoming, oversubscribed.clone(), cx, finish) {
                Ok(done) => return Ok(done),
                Err(e @ Error::BudgetExceeded(_)) => return Err(e),
                Err(e) => {
                    cx.trace.truncate(mark);
                    last_err = Some(e);
                }
            }
        }
        cx.budget_check()?;
    }
    Err(last_err
        .unwrap_or_else(|| Error::MirrorInfeasible(format!("no mirror choice works at position {p}"))))
}

/// Mirror sets and sink orders to try at one position, in order.
#[allow(clippy::too_many_arguments)]
fn seeds(
    split: &Split,
    idx: usize,
    sources: &[Vertex],
    sinks: &[Vertex],
    need: usize,
    cap: usize,
    blocked: &BTreeSet<Vertex>,
    over: bool,
) -> Result<Vec<(MirrorAssignment, Vec<Vertex>)>> {
    if over && sources.len() > cap {
        return Err(Error::Construction(format!("{} sources exceed the subcube limit {cap}", sources.len())));
    }
    let own: BTreeSet<Vertex> = sources.iter().copied().collect();
    let count = if over { cap - sources.len() } else { need };
    let mut mirrors: Vec<MirrorAssignment> = Vec::new();
    let mut first_err = None;
    let variants = if count == 0 { 1 } else { MIRROR_VARIANTS };
    for offset in 0..variants {
        match choose_mirror_from(&split.view(idx), &split.view((idx + 1) % 4), count, &own, blocked, offset) {
            Ok(mirror) if !mirrors.contains(&mirror) => mirrors.push(mirror),
            Ok(_) => {}
            Err(e) => first_err = first_err.or(Some(e)),
        }
    }
    if mirrors.is_empty() {
        return Err(first_err.expect("an empty mirror list has a cause"));
    }
    let mut reversed = sinks.to_vec();
    reversed.reverse();
    let orders = if sinks.len() > 1 { vec![sinks.to_vec(), reversed] } else { vec![sinks.to_vec()] };
    Ok(mirrors
        .into_iter()
        .flat_map(|mirror| orders.iter().map(move |o| (mirror.clone(), o.clone())))
        .collect())
}

/// Handles a subcube whose sink side exceeds `cap`. A `cap`-path cover is
/// built from `starts` to all but the leftover sinks; each leftover is then
/// an interior black vertex, and cutting the step after it turns it into a
/// path end and its successor into a new white start that must be mirrored
/// up together with `mirrored`. Leftovers are the canonically last sinks
/// first. Returns every working choice with the trace of its sub-cover.
#[allow(clippy::too_many_arguments)]
pub(crate) fn relax_oversubscribed(
    split: &Split,
    idx: usize,
    starts: &[Vertex],
    mirrored: &[Vertex],
    sinks: &[Vertex],
    cap: usize,
    blocked: &BTreeSet<Vertex>,
    cx: &mut Ctx,
) -> Vec<Choice> {
    if starts.len() != cap {
        return Vec::new();
    }
    let extra = sinks.len() - cap;
    let mut order = sinks.to_vec();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    for pick in combinations(order.len(), extra) {
        let leftovers: Vec<Vertex> = pick.iter().map(|&i| order[i]).collect();
        let kept: Vec<Vertex> = sinks.iter().copied().filter(|t| !leftovers.contains(t)).collect();
        let mark = cx.trace.len();
        let Ok(paths) = cover_in(split, idx, starts, &kept, cx) else {
            cx.trace.truncate(mark);
            continue;
        };
        let records = cx.trace.split_off(mark);
        let Ok((segments, fresh)) = cut_after(paths, &leftovers) else {
            continue;
        };
        let mut whites = mirrored.to_vec();
        whites.extend(&fresh);
        if let Some(bs) = match_mirrors(&whites, |a| split.cross_neighbors(a), blocked) {
            out.push((segments, whites.into_iter().zip(bs).collect(), records));
        }
    }
    out
}

/// Splits each path right after every vertex in `cuts`. Returns the
/// segments and the new start vertices.
fn cut_after(paths: Vec<Vec<Vertex>>, cuts: &[Vertex]) -> Result<(Vec<Vec<Vertex>>, Vec<Vertex>)> {
    let mut segments = Vec::new();
    let mut fresh = Vec::new();
    let mut found = 0;
    for path in paths {
        let mut current = Vec::new();
        for (i, &x) in path.iter().enumerate() {
            current.push(x);
            if cuts.contains(&x) {
                found += 1;
                if i == 0 || i + 1 == path.len() {
                    return Err(Error::Construction(format!("leftover sink {x} is a path end")));
                }
                segments.push(std::mem::take(&mut current));
                fresh.push(path[i + 1]);
            }
        }
        segments.push(current);
    }
    if found != cuts.len() {
        return Err(Error::Construction("a leftover sink is not on any path".into()));
    }
    Ok((segments, fresh))
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::BalancedHypercube;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cutting_one_path_twice() {
        let p = vec![v(&[0]), v(&[1]), v(&[2]), v(&[3])];
        let (segs, fresh) = cut_after(vec![p], &[v(&[1])]).unwrap();
        assert_eq!(segs, vec![vec![v(&[0]), v(&[1])], vec![v(&[2]), v(&[3])]]);
        assert_eq!(fresh, vec![v(&[2])]);
        assert!(cut_after(vec![vec![v(&[0]), v(&[1])]], &[v(&[1])]).is_err());
    }

    #[test]
    fn oversubscribed_subcube_splits_paths() {
        // three sinks in a BH_2 subcube of BH_3, whose limit is two paths
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let sources = [v(&[0, 0, 1])];
        let sinks = vec![v(&[1, 0, 1]), v(&[1, 1, 1]), v(&[1, 2, 1])];
        let mut cx = Ctx::new(None);
        let a = v(&[0, 0, 1]).backup();
        let starts = vec![sources[0], a];
        let options = relax_oversubscribed(&split, 1, &starts, &[a], &sinks, 2, &BTreeSet::new(), &mut cx);
        let (segments, pairs, _) = options.into_iter().next().unwrap();
        assert_eq!(segments.len(), 3);
        assert_eq!(pairs.len(), 2);
        let ends: BTreeSet<Vertex> = segments.iter().map(|s| *s.last().unwrap()).collect();
        assert_eq!(ends, sinks.iter().copied().collect());
        let covered: usize = segments.iter().map(|s| s.len()).sum();
        assert_eq!(covered, 16);
        for (a, b) in pairs {
            assert!(split.cross_neighbors(a).contains(&b));
            assert!(segments.iter().any(|s| s[0] == a));
        }
    }
}
