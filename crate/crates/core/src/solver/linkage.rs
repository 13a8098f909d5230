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

use crate::error::{Error, Result};
use crate::topology::Vertex;

const NONE: u32 = u32::MAX;

/// Directed successor links over all vertices of `BH_m`. Paths are stored
/// oriented from white source to black sink, so stitching and surgery are
/// just link rewrites; [`Linkage::decode`] turns the links back into paths
/// and rejects anything that is not a clean set of source-to-sink paths.
#[derive(Clone, Debug)]
pub(crate) struct Linkage {
    m: usize,
    succ: Vec<u32>,
}

impl Linkage {
    pub(crate) fn new(m: usize) -> Linkage {
        Linkage { m, succ: vec![NONE; 1 << (2 * m)] }
    }

    pub(crate) fn add_path(&mut self, path: &[Vertex]) {
        for w in path.windows(2) {
            self.set_next(w[0], w[1]);
        }
    }

    pub(crate) fn next(&self, v: Vertex) -> Option<Vertex> {
        match self.succ[v.id() as usize] {
            NONE => None,
            id => Some(Vertex::from_raw(self.m, id)),
        }
    }

    pub(crate) fn set_next(&mut self, a: Vertex, b: Vertex) {
        self.succ[a.id() as usize] = b.id();
    }

    /// `pred[id]`, or `u32::MAX` for none.
    pub(crate) fn predecessors(&self) -> Vec<u32> {
        let mut pred = vec![NONE; self.succ.len()];
        for (a, &b) in self.succ.iter().enumerate() {
            if b != NONE {
                pred[b as usize] = a as u32;
            }
        }
        pred
    }

    pub(crate) fn predecessor_of(pred: &[u32], m: usize, v: Vertex) -> Option<Vertex> {
        match pred[v.id() as usize] {
            NONE => None,
            id => Some(Vertex::from_raw(m, id)),
        }
    }

    /// Vertices touched by some link.
    pub(crate) fn covered(&self) -> Vec<bool> {
        let mut out = vec![false; self.succ.len()];
        for (a, &b) in self.succ.iter().enumerate() {
            if b != NONE {
                out[a] = true;
                out[b as usize] = true;
            }
        }
        out
    }

    /// Follows the links from every source. Fails on a revisit, on a walk
    /// that stops outside the sink set, or when the walks see fewer than
    /// `expected` vertices (the rest sit on detached cycles).
    pub(crate) fn decode(
        &self,
        sources: &[Vertex],
        sinks: &[Vertex],
        expected: usize,
    ) -> Result<Vec<Vec<Vertex>>> {
        let mut seen = vec![false; self.succ.len()];
        let mut is_sink = vec![false; self.succ.len()];
        for t in sinks {
            is_sink[t.id() as usize] = true;
        }
        let mut total = 0;
        let mut out = Vec::with_capacity(sources.len());
        for &s in sources {
            let mut path = Vec::new();
            let mut at = s.id();
            loop {
                if std::mem::replace(&mut seen[at as usize], true) {
                    return Err(Error::Construction(format!(
                        "links from {s} revisit {}",
                        Vertex::from_raw(self.m, at)
                    )));
                }
                path.push(Vertex::from_raw(self.m, at));
                match self.succ[at as usize] {
                    NONE => break,
                    next => at = next,
                }
            }
            let end = *path.last().expect("nonempty");
            if !is_sink[end.id() as usize] || path.len() < 2 {
                return Err(Error::Construction(format!("links from {s} stop at {end}")));
            }
            total += path.len();
            out.push(path);
        }
        if total != expected {
            return Err(Error::Construction(format!("paths reach {total} of {expected} vertices")));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn decode_rejects_cycles_and_bad_ends() {
        let mut l = Linkage::new(1);
        l.add_path(&[v(&[0]), v(&[3]), v(&[2]), v(&[1])]);
        assert_eq!(l.decode(&[v(&[0])], &[v(&[1])], 4).unwrap()[0].len(), 4);
        assert!(l.decode(&[v(&[0])], &[v(&[3])], 4).is_err());
        let mut c = Linkage::new(1);
        c.add_path(&[v(&[0]), v(&[1])]);
        c.add_path(&[v(&[2]), v(&[3]), v(&[2])]);
        assert!(c.decode(&[v(&[0])], &[v(&[1])], 4).is_err());
    }
}
