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

//! The balanced hypercube `BH_n`.
//!
//! A vertex `(a_0, ..., a_(n-1))` has the `2n` neighbors
//!
//! * `(a_0 ± 1, a_1, ..., a_(n-1))`, and
//! * `(a_0 ± 1, a_1, ..., a_i + (-1)^(a_0), ..., a_(n-1))` for `1 <= i < n`,
//!
//! all arithmetic mod 4. Adjacency is evaluated from these rules on demand;
//! nothing stores an edge list.

mod iso;
mod split;
mod vertex;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

pub use split::{Split, SubcubeView};
pub use vertex::{ColorClass, Vertex, MAX_DIM};

use crate::error::{Error, Result};

/// `BH_n` for a fixed `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BalancedHypercube {
    n: usize,
}

/// An undirected edge `u < v` together with its dimension label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub dimension: usize,
}

impl BalancedHypercube {
    pub fn new(n: usize) -> Result<BalancedHypercube> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange { dim: n, min: 1, max: MAX_DIM });
        }
        Ok(BalancedHypercube { n })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1usize << (2 * self.n)
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let n = self.n;
        (0..self.vertex_count() as u32).map(move |id| Vertex::from_raw(n, id))
    }

    pub fn white_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|v| v.is_white())
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|v| !v.is_white())
    }

    pub fn vertex(&self, coords: &[u8]) -> Result<Vertex> {
        let v = Vertex::new(coords)?;
        self.check(v)?;
        Ok(v)
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v.dim() != self.n {
            return Err(Error::WrongDimension { vertex: v, expected: self.n });
        }
        Ok(())
    }

    /// The neighbor set of `v`, sorted canonically. `BH_1` yields 2 vertices,
    /// every larger cube yields `2n`.
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check(v)?;
        let mut out: Vec<Vertex> =
            raw_neighbors(self.n, v.id()).map(|id| Vertex::from_raw(self.n, id)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        if u.dim() != self.n || v.dim() != self.n {
            return false;
        }
        ids_adjacent(self.n, u.id(), v.id())
    }

    /// `0` for an edge that changes only the inner index, otherwise the
    /// outer coordinate it changes.
    pub fn edge_dimension(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        if !self.is_adjacent(u, v) {
            return Err(Error::NotAdjacent(u, v));
        }
        let outer = (u.id() ^ v.id()) >> 2;
        if outer == 0 {
            return Ok(0);
        }
        Ok(1 + outer.trailing_zeros() as usize / 2)
    }

    /// Every edge once, ordered by `(u, v)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.vertex_count() * self.n);
        for u in self.vertices() {
            for v in self.neighbors(u).expect("own vertex") {
                if u < v {
                    let dimension = self.edge_dimension(u, v).expect("adjacent");
                    out.push(Edge { u, v, dimension });
                }
            }
        }
        out
    }

    /// The two `d`-dimension neighbors of `v`. They are backups of each
    /// other and lie in a single subcube of the split along `d`.
    pub fn cross_neighbors(&self, d: usize, v: Vertex) -> Result<[Vertex; 2]> {
        self.check(v)?;
        if d >= self.n {
            return Err(Error::InvalidSplit { n: self.n, d });
        }
        Ok(cross_pair(v, d))
    }

    /// Deletes every `d`-dimension edge, leaving four copies of `BH_(n-1)`.
    pub fn split(&self, d: usize) -> Result<Split> {
        Split::new(self.n, d)
    }
}

/// Neighbor ids of `id` in `BH_n`, possibly with repeats when `n = 1`.
pub(crate) fn raw_neighbors(n: usize, id: u32) -> impl Iterator<Item = u32> {
    let a0 = id & 3;
    let up = (a0 + 1) & 3;
    let down = (a0 + 3) & 3;
    let base = id & !3;
    let delta = if a0 & 1 == 0 { 1 } else { 3 };
    let inner = [base | up, base | down].into_iter();
    let outer = (1..n).flat_map(move |i| {
        let shift = 2 * i;
        let ai = (base >> shift) & 3;
        let moved = (base & !(3 << shift)) | (((ai + delta) & 3) << shift);
        [moved | up, moved | down]
    });
    inner.chain(outer)
}

pub(crate) fn ids_adjacent(n: usize, u: u32, v: u32) -> bool {
    // Both rules move the inner index by exactly one, i.e. flip its parity.
    if (u ^ v) & 1 == 0 {
        return false;
    }
    let outer = (u ^ v) >> 2;
    if outer == 0 {
        return true;
    }
    let group = outer.trailing_zeros() / 2;
    if outer & !(3 << (2 * group)) != 0 {
        return false;
    }
    let i = 1 + group as usize;
    if i >= n {
        return false;
    }
    let shift = 2 * i;
    let delta = if u & 1 == 0 { 1 } else { 3 };
    ((u >> shift) + delta) & 3 == (v >> shift) & 3
}

/// `(a_0 ± 1, ..., a_d + (-1)^(a_0), ...)`, or just `(a_0 ± 1, ...)` for
/// `d = 0`; returned in canonical order.
pub(crate) fn cross_pair(v: Vertex, d: usize) -> [Vertex; 2] {
    let n = v.dim();
    let a0 = v.inner();
    let mut moved = v;
    if d > 0 {
        let delta = if a0.is_multiple_of(2) { 1 } else { 3 };
        moved = v.with_digit(d, (v.digit(d) + delta) & 3);
    }
    let a = moved.with_digit(0, (a0 + 1) & 3);
    let b = moved.with_digit(0, (a0 + 3) & 3);
    debug_assert_eq!(a.dim(), n);
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Sorted adjacency lists of `BH_m`, built once per dimension and shared.
pub(crate) struct Adjacency {
    lists: Vec<Box<[u32]>>,
}

impl Adjacency {
    #[inline]
    pub(crate) fn of(&self, id: u32) -> &[u32] {
        &self.lists[id as usize]
    }
}

pub(crate) fn adjacency(m: usize) -> Arc<Adjacency> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Adjacency>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("adjacency cache poisoned");
    guard
        .entry(m)
        .or_insert_with(|| {
            let count = 1u32 << (2 * m);
            let lists = (0..count)
                .map(|id| {
                    let mut l: Vec<u32> = raw_neighbors(m, id).collect();
                    l.sort_unstable();
                    l.dedup();
                    l.into_boxed_slice()
                })
                .collect();
            Arc::new(Adjacency { lists })
        })
        .clone()
}
