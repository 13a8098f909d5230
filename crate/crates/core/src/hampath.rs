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

//! Hamiltonian paths between opposite-colored vertices.
//!
//! The cube is split into four subcubes and the route is assembled from
//! Hamiltonian paths of the subcubes, chosen by where the two ends sit
//! relative to each other on the ring:
//!
//! * `v` one step up the ring from `u`: walk down through all four subcubes.
//! * `v` in the same subcube, or two steps away: build the obvious partial
//!   route and thread the untouched subcubes in by exchanging edges.
//! * `v` one step down: cover `v`'s subcube with two paths that leave from a
//!   backup pair, so the route can return to it after a detour through the
//!   other two subcubes.
//!
//! Each result is checked before it is returned. If a split dimension does
//! not work out the next one is tried, and a backtracking search is the
//! last resort.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::solver::{cover_in, ring_splice, thread, Ctx, Linkage};
use crate::topology::{adjacency, BalancedHypercube, Split, SubcubeView, Vertex};
use crate::verifier::{verify_path, verify_path_in_view, VerifyReport, Violation, ViolationKind};

/// A sequence of distinct vertices with consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Path {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.vertices
    }
}

impl From<Vec<Vertex>> for Path {
    fn from(vertices: Vec<Vertex>) -> Path {
        Path { vertices }
    }
}

impl Deref for Path {
    type Target = [Vertex];

    fn deref(&self) -> &[Vertex] {
        &self.vertices
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn hamiltonian_path(cube: &BalancedHypercube, u: Vertex, v: Vertex) -> Result<Path> {
    hamiltonian_path_with(cube, u, v, Budget::default())
}

pub fn hamiltonian_path_with(cube: &BalancedHypercube, u: Vertex, v: Vertex, budget: Budget) -> Result<Path> {
    cube.check(u)?;
    cube.check(v)?;
    check_ends(u, v)?;
    let mut cx = Ctx::with_budget(budget);
    let p = oriented(cube.dim(), u, v, &mut cx)?;
    let mut report = verify_path(cube, &p);
    if p.len() != cube.vertex_count() {
        report = incomplete(report, p.len(), cube.vertex_count());
    }
    if !report.ok {
        return Err(Error::Verification(report));
    }
    Ok(Path::new(p))
}

/// A Hamiltonian path of one subcube, in parent coordinates.
pub fn hamiltonian_path_in_view(view: &SubcubeView, u: Vertex, v: Vertex, budget: Budget) -> Result<Path> {
    let (Some(uc), Some(vc)) = (view.to_child(u), view.to_child(v)) else {
        let outside = if view.contains(u) { v } else { u };
        return Err(Error::Construction(format!("{outside} is not in subcube {}", view.index())));
    };
    check_ends(u, v)?;
    let mut cx = Ctx::with_budget(budget);
    let p: Vec<Vertex> =
        oriented(view.dim(), uc, vc, &mut cx)?.into_iter().map(|w| view.to_parent(w)).collect();
    let want = view.cube().vertex_count();
    let mut report = verify_path_in_view(view, &p);
    if p.len() != want {
        report = incomplete(report, p.len(), want);
    }
    if !report.ok {
        return Err(Error::Verification(report));
    }
    Ok(Path::new(p))
}

fn check_ends(u: Vertex, v: Vertex) -> Result<()> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    if u.color() == v.color() {
        return Err(Error::SameColor(u, v));
    }
    Ok(())
}

fn incomplete(mut report: VerifyReport, got: usize, want: usize) -> VerifyReport {
    report
        .violations
        .push(Violation::new(ViolationKind::NotCovering, format!("path has {got} of {want} vertices")));
    report.ok = false;
    report
}

fn oriented(m: usize, u: Vertex, v: Vertex, cx: &mut Ctx) -> Result<Vec<Vertex>> {
    if u.is_white() {
        construct(m, u, v, cx)
    } else {
        let mut p = construct(m, v, u, cx)?;
        p.reverse();
        Ok(p)
    }
}

/// Hamiltonian path of `BH_m` from white `u` to black `v`.
pub(crate) fn construct(m: usize, u: Vertex, v: Vertex, cx: &mut Ctx) -> Result<Vec<Vertex>> {
    debug_assert!(u.is_white() && !v.is_white());
    cx.tick()?;
    if m == 1 {
        // Walk the 4-cycle away from v.
        let step = (v.inner() + 4 - u.inner()) % 4;
        return Ok((0..4u8)
            .map(|i| Vertex::from_raw(1, ((u.inner() + 4 * 4 - i * step) % 4) as u32))
            .collect());
    }
    let cube = BalancedHypercube::new(m)?;
    let mut last = None;
    for d in (0..m).rev() {
        let split = Split::new(m, d)?;
        match ring_route(&split, u, v, cx) {
            Ok(p) => {
                let sound = p.len() == cube.vertex_count()
                    && p.first() == Some(&u)
                    && p.last() == Some(&v)
                    && verify_path(&cube, &p).ok;
                if sound {
                    return Ok(p);
                }
                last = Some(Error::Construction(format!("route along {d} is not Hamiltonian")));
            }
            Err(e @ Error::BudgetExceeded(_)) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    let allowed = vec![true; cube.vertex_count()];
    match search_path_covering(m, &allowed, u, v, cx)? {
        Some(p) => Ok(p),
        None => {
            Err(last.unwrap_or_else(|| Error::Construction(format!("no Hamiltonian path from {u} to {v}"))))
        }
    }
}

/// [`construct`] inside subcube `index`, in parent coordinates.
pub(crate) fn construct_in(
    split: &Split,
    index: usize,
    u: Vertex,
    v: Vertex,
    cx: &mut Ctx,
) -> Result<Vec<Vertex>> {
    let p = construct(split.child_dim(), split.to_child(u), split.to_child(v), cx)?;
    Ok(p.into_iter().map(|w| split.to_parent(index, w)).collect())
}

pub(crate) fn first_of_color(split: &Split, index: usize, white: bool, skip: Vertex) -> Vertex {
    split
        .view(index)
        .members()
        .into_iter()
        .find(|x| x.is_white() == white && *x != skip)
        .expect("a subcube has at least two vertices of each color")
}

fn ring_route(split: &Split, u: Vertex, v: Vertex, cx: &mut Ctx) -> Result<Vec<Vertex>> {
    let a = split.subcube_of(u);
    let b = split.subcube_of(v);
    let down = |s: usize| (a + 4 - s) % 4;
    let m = split.parent_dim();
    match (b + 4 - a) % 4 {
        0 => {
            let mut link = Linkage::new(m);
            link.add_path(&construct_in(split, a, u, v, cx)?);
            ring_splice(split, &mut link, &[u], &[v], cx)?;
            Ok(link.decode(&[u], &[v], 1 << (2 * m))?.remove(0))
        }
        1 => {
            let ya = first_of_color(split, a, false, v);
            let xb = first_of_color(split, b, true, u);
            let mut p = construct_in(split, a, u, ya, cx)?;
            p.extend(thread(split, ya, &[down(1), down(2)], xb, cx)?);
            p.extend(construct_in(split, b, xb, v, cx)?);
            Ok(p)
        }
        2 => {
            let ya = first_of_color(split, a, false, v);
            let x1 = split.cross_neighbors(ya)[0];
            let y1 = first_of_color(split, down(1), false, v);
            let x2 = split.cross_neighbors(y1)[0];
            let mut p = construct_in(split, a, u, ya, cx)?;
            p.extend(construct_in(split, down(1), x1, y1, cx)?);
            p.extend(construct_in(split, b, x2, v, cx)?);
            let mut link = Linkage::new(m);
            link.add_path(&p);
            ring_splice(split, &mut link, &[u], &[v], cx)?;
            Ok(link.decode(&[u], &[v], 1 << (2 * m))?.remove(0))
        }
        _ => {
            // v sits one step down the ring, in subcube c.
            let c = b;
            let w = first_of_color(split, c, true, u);
            let w2 = w.backup();
            let y2 = first_of_color(split, c, false, v);
            let two = cover_in(split, c, &[w, w2], &[y2, v], cx)?;
            let (p_x1, p_x3) =
                if two[0].last() == Some(&y2) { (&two[0], &two[1]) } else { (&two[1], &two[0]) };
            let x2 = first_of_color(split, a, true, u);
            let [c1, c2] = split.cross_neighbors(w);
            let home = cover_in(split, a, &[u, x2], &[c1, c2], cx)?;
            let mut p = home[0].clone();
            p.extend_from_slice(p_x1);
            p.extend(thread(split, y2, &[down(2), down(3)], x2, cx)?);
            p.extend_from_slice(&home[1]);
            p.extend_from_slice(p_x3);
            Ok(p)
        }
    }
}

/// Backtracking search for a path from `u` to `v` through exactly the
/// vertices marked in `allowed` (indexed by id). Neighbors are tried in
/// canonical order; branches die when an unvisited vertex is left with too
/// few usable neighbors or the unvisited part falls apart.
pub(crate) fn search_path_covering(
    m: usize,
    allowed: &[bool],
    u: Vertex,
    v: Vertex,
    cx: &mut Ctx,
) -> Result<Option<Vec<Vertex>>> {
    let (ui, vi) = (u.id() as usize, v.id() as usize);
    if u == v || !allowed[ui] || !allowed[vi] {
        return Ok(None);
    }
    let whites = (0..allowed.len()).filter(|&i| allowed[i] && i & 1 == 0).count();
    let total = allowed.iter().filter(|&&a| a).count();
    let blacks = total - whites;
    let balanced = match (u.is_white(), v.is_white()) {
        (true, true) => whites == blacks + 1,
        (false, false) => blacks == whites + 1,
        _ => whites == blacks,
    };
    if !balanced {
        return Ok(None);
    }
    let adj = adjacency(m);
    let mut free = allowed.to_vec();
    free[ui] = false;
    let mut path = vec![u.id()];
    let mut scratch = Scratch::new(allowed.len());
    if dfs(&adj, &mut free, &mut path, v.id(), total - 1, cx, &mut scratch)? {
        Ok(Some(path.into_iter().map(|id| Vertex::from_raw(m, id)).collect()))
    } else {
        Ok(None)
    }
}

struct Scratch {
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<u32>,
}

impl Scratch {
    fn new(len: usize) -> Scratch {
        Scratch { mark: vec![0; len], epoch: 0, stack: Vec::new() }
    }
}

fn dfs(
    adj: &crate::topology::Adjacency,
    free: &mut [bool],
    path: &mut Vec<u32>,
    v: u32,
    remaining: usize,
    cx: &mut Ctx,
    scratch: &mut Scratch,
) -> Result<bool> {
    let h = *path.last().expect("nonempty");
    if remaining == 0 {
        return Ok(h == v);
    }
    cx.tick()?;
    for &x in adj.of(h) {
        if !free[x as usize] || (x == v && remaining != 1) {
            continue;
        }
        free[x as usize] = false;
        path.push(x);
        if viable(adj, free, x, v, remaining - 1, scratch)
            && dfs(adj, free, path, v, remaining - 1, cx, scratch)?
        {
            return Ok(true);
        }
        path.pop();
        free[x as usize] = true;
    }
    Ok(false)
}

fn viable(
    adj: &crate::topology::Adjacency,
    free: &[bool],
    head: u32,
    v: u32,
    remaining: usize,
    s: &mut Scratch,
) -> bool {
    if remaining == 0 {
        return true;
    }
    for (w, _) in free.iter().enumerate().filter(|(_, &f)| f) {
        let usable = adj.of(w as u32).iter().filter(|&&y| free[y as usize] || y == head).count();
        if usable < if w as u32 == v { 1 } else { 2 } {
            return false;
        }
    }
    s.epoch += 1;
    let epoch = s.epoch;
    s.stack.clear();
    let mut reached = 0;
    for &y in adj.of(head) {
        if free[y as usize] && s.mark[y as usize] != epoch {
            s.mark[y as usize] = epoch;
            s.stack.push(y);
        }
    }
    while let Some(x) = s.stack.pop() {
        reached += 1;
        for &y in adj.of(x) {
            if free[y as usize] && s.mark[y as usize] != epoch {
                s.mark[y as usize] = epoch;
                s.stack.push(y);
            }
        }
    }
    reached == remaining
}
