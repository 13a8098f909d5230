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

//! Two paths in `BH_2` by search: enumerate the first path from the first
//! source, and whenever it reaches a sink ask the Hamiltonian backtracker
//! whether the rest can be covered from the second source to the other
//! sink.

use crate::error::{Error, Result};
use crate::hampath::search_path_covering;
use crate::solver::Ctx;
use crate::topology::{adjacency, Adjacency, Vertex};

pub(crate) fn solve_base(sources: &[Vertex], sinks: &[Vertex], cx: &mut Ctx) -> Result<Vec<Vec<Vertex>>> {
    debug_assert_eq!((sources.len(), sinks.len()), (2, 2));
    let adj = adjacency(2);
    let mut free = vec![true; 16];
    free[sources[0].id() as usize] = false;
    let mut path = vec![sources[0].id()];
    let mut search = Search { adj: &adj, s2: sources[1].id(), sinks: [sinks[0].id(), sinks[1].id()] };
    match search.extend(&mut free, &mut path, cx)? {
        Some(rest) => Ok(vec![path.into_iter().map(|id| Vertex::from_raw(2, id)).collect(), rest]),
        None => Err(Error::Construction(format!("no two-path cover from {sources:?} to {sinks:?}"))),
    }
}

struct Search<'a> {
    adj: &'a Adjacency,
    s2: u32,
    sinks: [u32; 2],
}

impl Search<'_> {
    fn extend(
        &mut self,
        free: &mut [bool],
        path: &mut Vec<u32>,
        cx: &mut Ctx,
    ) -> Result<Option<Vec<Vertex>>> {
        cx.tick()?;
        let h = *path.last().expect("nonempty");
        if let Some(i) = self.sinks.iter().position(|&t| t == h) {
            let other = self.sinks[1 - i];
            let rest =
                search_path_covering(2, free, Vertex::from_raw(2, self.s2), Vertex::from_raw(2, other), cx)?;
            return Ok(rest);
        }
        for &x in self.adj.of(h) {
            if !free[x as usize] || x == self.s2 {
                continue;
            }
            free[x as usize] = false;
            path.push(x);
            if self.split_ok(free, x) {
                if let Some(rest) = self.extend(free, path, cx)? {
                    return Ok(Some(rest));
                }
            }
            path.pop();
            free[x as usize] = true;
        }
        Ok(None)
    }

    /// Every free vertex must still be reachable from the second source or
    /// from the head of the first path; anything else is stranded.
    fn split_ok(&self, free: &[bool], head: u32) -> bool {
        let mut seen = vec![false; free.len()];
        let mut stack = vec![self.s2, head];
        seen[self.s2 as usize] = true;
        while let Some(x) = stack.pop() {
            for &y in self.adj.of(x) {
                if free[y as usize] && !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..free.len()).all(|i| !free[i] || seen[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backup_pair_sources() {
        let v = |c: &[u8]| Vertex::new(c).unwrap();
        let mut cx = Ctx::new(None);
        let p = solve_base(&[v(&[0, 0]), v(&[2, 0])], &[v(&[1, 0]), v(&[3, 0])], &mut cx).unwrap();
        assert_eq!(p[0].len() + p[1].len(), 16);
    }
}
