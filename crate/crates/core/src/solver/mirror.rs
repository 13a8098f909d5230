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

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::topology::{SubcubeView, Vertex};

/// Auxiliary white endpoints `a_j` in one subcube paired with black
/// cross-neighbors `b_j` in the next one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MirrorAssignment {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

impl MirrorAssignment {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.a.iter().copied().zip(self.b.iter().copied())
    }
}

/// Picks `count` white vertices of `view` outside `forbidden_white`, each
/// with a distinct cross-neighbor in `next` outside `forbidden_black`.
/// Canonical order decides among candidates.
pub fn choose_mirror(
    view: &SubcubeView,
    next: &SubcubeView,
    count: usize,
    forbidden_white: &BTreeSet<Vertex>,
    forbidden_black: &BTreeSet<Vertex>,
) -> Result<MirrorAssignment> {
    choose_mirror_from(view, next, count, forbidden_white, forbidden_black, 0)
}

/// [`choose_mirror`] with the greedy scan starting at the `offset`-th white
/// member instead of the first, wrapping around.
pub(crate) fn choose_mirror_from(
    view: &SubcubeView,
    next: &SubcubeView,
    count: usize,
    forbidden_white: &BTreeSet<Vertex>,
    forbidden_black: &BTreeSet<Vertex>,
    offset: usize,
) -> Result<MirrorAssignment> {
    let split = view.split();
    if next.split().dimension() != split.dimension()
        || next.split().parent_dim() != split.parent_dim()
        || next.index() != (view.index() + 1) % 4
    {
        return Err(Error::MirrorInfeasible(format!(
            "subcube {} is not the successor of subcube {}",
            next.index(),
            view.index()
        )));
    }
    let whites = view.cube().vertex_count() / 2;
    let blocked = forbidden_white.iter().filter(|v| view.contains(**v)).count();
    if count > whites - blocked {
        return Err(Error::MirrorInfeasible(format!(
            "{count} mirrors requested but only {} white vertices are free",
            whites - blocked
        )));
    }
    let mut out = MirrorAssignment::default();
    let mut used = BTreeSet::new();
    let members: Vec<Vertex> = view.members().into_iter().filter(|v| v.is_white()).collect();
    let start = offset % members.len();
    for &a in members[start..].iter().chain(&members[..start]) {
        if out.len() == count {
            break;
        }
        if forbidden_white.contains(&a) {
            continue;
        }
        let pick =
            split.cross_neighbors(a).into_iter().find(|b| !forbidden_black.contains(b) && !used.contains(b));
        if let Some(b) = pick {
            used.insert(b);
            out.a.push(a);
            out.b.push(b);
        }
    }
    if out.len() < count {
        return Err(Error::MirrorInfeasible(format!("found {} of {count} mirror pairs", out.len())));
    }
    Ok(out)
}

/// A system of distinct cross-neighbors for `whites`, avoiding `forbidden`.
/// `cross` gives the two candidates of each white vertex.
pub(crate) fn match_mirrors(
    whites: &[Vertex],
    cross: impl Fn(Vertex) -> [Vertex; 2],
    forbidden: &BTreeSet<Vertex>,
) -> Option<Vec<Vertex>> {
    let options: Vec<Vec<Vertex>> =
        whites.iter().map(|&a| cross(a).into_iter().filter(|b| !forbidden.contains(b)).collect()).collect();
    let mut owner: Vec<(Vertex, usize)> = Vec::new();

    fn augment(
        i: usize,
        options: &[Vec<Vertex>],
        owner: &mut Vec<(Vertex, usize)>,
        visited: &mut Vec<Vertex>,
    ) -> bool {
        for &b in &options[i] {
            if visited.contains(&b) {
                continue;
            }
            visited.push(b);
            match owner.iter().position(|&(x, _)| x == b) {
                None => {
                    owner.push((b, i));
                    return true;
                }
                Some(slot) => {
                    let j = owner[slot].1;
                    if augment(j, options, owner, visited) {
                        let slot = owner.iter().position(|&(x, o)| x == b && o == j).expect("held");
                        owner[slot].1 = i;
                        return true;
                    }
                }
            }
        }
        false
    }

    for i in 0..whites.len() {
        if !augment(i, &options, &mut owner, &mut Vec::new()) {
            return None;
        }
    }
    let mut out = vec![whites[0]; whites.len()];
    for (b, i) in owner {
        out[i] = b;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::BalancedHypercube;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn zero_count_is_empty() {
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let m = choose_mirror(&split.view(0), &split.view(1), 0, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn blocked_neighbor_falls_back_to_backup() {
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let first = v(&[0, 0, 0]);
        let [b0, b1] = split.cross_neighbors(first);
        let m = choose_mirror(&split.view(0), &split.view(1), 1, &BTreeSet::new(), &BTreeSet::from([b0]))
            .unwrap();
        assert_eq!(m.a, vec![first]);
        assert_eq!(m.b, vec![b1]);
        assert_eq!(b1, b0.backup());
    }

    #[test]
    fn two_mirrors_in_bh2_view() {
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let m = choose_mirror(&split.view(2), &split.view(3), 2, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert_eq!(m.len(), 2);
        assert_ne!(m.a[0], m.a[1]);
        assert_ne!(m.b[0], m.b[1]);
        for (a, b) in m.pairs() {
            assert!(a.is_white() && !b.is_white());
            assert!(split.cross_neighbors(a).contains(&b));
            assert_eq!(split.subcube_of(b), 3);
        }
    }

    #[test]
    fn matching_resolves_shared_pairs() {
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let a = v(&[0, 0, 0]);
        let got = match_mirrors(&[a, a.backup()], |x| split.cross_neighbors(x), &BTreeSet::new()).unwrap();
        assert_ne!(got[0], got[1]);
        let [b0, _] = split.cross_neighbors(a);
        assert!(
            match_mirrors(&[a, a.backup()], |x| split.cross_neighbors(x), &BTreeSet::from([b0])).is_none()
        );
    }
}
