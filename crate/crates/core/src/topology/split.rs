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

use std::fmt;
use std::sync::Arc;

use super::iso::{zero_split, ZeroSplit};
use super::{cross_pair, ids_adjacent, raw_neighbors, BalancedHypercube, Vertex};
use crate::error::{Error, Result};

/// `BH_n` with every `d`-dimension edge removed: four components, each
/// carrying an isomorphism onto the canonical `BH_(n-1)`.
///
/// Subcubes are indexed so that white vertices of subcube `i` have their
/// `d`-dimension neighbors in subcube `i + 1` and black vertices in `i - 1`
/// (mod 4). For `d >= 1` the index is simply coordinate `d`; for `d = 0`
/// subcube 0 holds the all-zero vertex and the rest follow that ring.
#[derive(Clone)]
pub struct Split {
    n: usize,
    d: usize,
    table: Option<Arc<ZeroSplit>>,
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Split").field("n", &self.n).field("d", &self.d).finish()
    }
}

impl Split {
    pub(crate) fn new(n: usize, d: usize) -> Result<Split> {
        BalancedHypercube::new(n)?;
        if n < 2 || d >= n {
            return Err(Error::InvalidSplit { n, d });
        }
        let table = if d == 0 { Some(zero_split(n)?) } else { None };
        Ok(Split { n, d, table })
    }

    pub fn parent_dim(&self) -> usize {
        self.n
    }

    pub fn child_dim(&self) -> usize {
        self.n - 1
    }

    /// The dimension whose edges were removed.
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn subcube_of(&self, v: Vertex) -> usize {
        debug_assert_eq!(v.dim(), self.n);
        match &self.table {
            Some(t) => t.index_of[v.id() as usize] as usize,
            None => v.digit(self.d) as usize,
        }
    }

    pub fn view(&self, index: usize) -> SubcubeView {
        assert!(index < 4, "subcube index {index} out of range");
        SubcubeView { split: self.clone(), index }
    }

    pub fn views(&self) -> [SubcubeView; 4] {
        [self.view(0), self.view(1), self.view(2), self.view(3)]
    }

    /// The two neighbors of `v` across the removed dimension.
    pub fn cross_neighbors(&self, v: Vertex) -> [Vertex; 2] {
        cross_pair(v, self.d)
    }

    /// Coordinates of `v` inside its own subcube.
    pub fn to_child(&self, v: Vertex) -> Vertex {
        debug_assert_eq!(v.dim(), self.n);
        let m = self.n - 1;
        let id = match &self.table {
            Some(t) => t.to_child[v.id() as usize],
            None if self.d == m => v.id() & ((1u32 << (2 * m)) - 1),
            None => {
                let moved = v.with_digit(self.d, v.digit(m));
                moved.id() & ((1u32 << (2 * m)) - 1)
            }
        };
        Vertex::from_raw(m, id)
    }

    pub fn to_parent(&self, index: usize, w: Vertex) -> Vertex {
        let m = self.n - 1;
        debug_assert_eq!(w.dim(), m);
        let id = match &self.table {
            Some(t) => t.to_parent[index][w.id() as usize],
            None if self.d == m => w.id() | ((index as u32) << (2 * m)),
            None => {
                let lifted = w.id() | ((w.digit(self.d) as u32) << (2 * m));
                Vertex::from_raw(self.n, lifted).with_digit(self.d, index as u8).id()
            }
        };
        Vertex::from_raw(self.n, id)
    }

    /// Exhaustive soundness check: the four views partition the vertex set,
    /// each isomorphism preserves adjacency both ways and colors, and the
    /// ring orientation holds for every cross edge.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.n;
        let m = n - 1;
        let cube = BalancedHypercube { n };
        let mut seen = vec![false; cube.vertex_count()];
        let mut sizes = [0usize; 4];
        for v in cube.vertices() {
            let i = self.subcube_of(v);
            sizes[i] += 1;
            let w = self.to_child(v);
            if w.color() != v.color() {
                return Err(format!("{v} changes color in subcube {i}"));
            }
            if self.to_parent(i, w) != v {
                return Err(format!("iso of subcube {i} does not invert at {v}"));
            }
            let slot = (i << (2 * m)) | w.id() as usize;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(format!("two vertices of subcube {i} share child {w}"));
            }
            for u in raw_neighbors(n, v.id()) {
                let u = Vertex::from_raw(n, u);
                let crosses = cube.edge_dimension(v, u).expect("adjacent") == self.d;
                let j = self.subcube_of(u);
                if crosses {
                    let expected = if v.is_white() { (i + 1) % 4 } else { (i + 3) % 4 };
                    if j != expected {
                        return Err(format!("cross edge {v}-{u} lands in subcube {j}"));
                    }
                } else {
                    if j != i {
                        return Err(format!("edge {v}-{u} leaves subcube {i}"));
                    }
                    if !ids_adjacent(m, w.id(), self.to_child(u).id()) {
                        return Err(format!("edge {v}-{u} is not preserved"));
                    }
                }
            }
        }
        if sizes.iter().any(|&s| s != 1 << (2 * m)) {
            return Err(format!("subcube sizes {sizes:?}"));
        }
        // Edge counts agree, so preserving every edge is enough for the reverse direction.
        Ok(())
    }
}

/// One of the four `BH_(n-1)` components of a [`Split`].
#[derive(Clone, Debug)]
pub struct SubcubeView {
    split: Split,
    index: usize,
}

impl SubcubeView {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    /// Dimension of the subcube itself.
    pub fn dim(&self) -> usize {
        self.split.n - 1
    }

    pub fn cube(&self) -> BalancedHypercube {
        BalancedHypercube { n: self.dim() }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.dim() == self.split.n && self.split.subcube_of(v) == self.index
    }

    pub fn to_child(&self, v: Vertex) -> Option<Vertex> {
        self.contains(v).then(|| self.split.to_child(v))
    }

    pub fn to_parent(&self, w: Vertex) -> Vertex {
        self.split.to_parent(self.index, w)
    }

    /// Member vertices in canonical parent order.
    pub fn members(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.cube().vertices().map(|w| self.to_parent(w)).collect();
        out.sort_unstable();
        out
    }
}
