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

//! Exhaustive ground truth for small cubes.
//!
//! A depth-first search builds the paths one at a time in canonical source
//! order. After every step the unvisited vertices are split into connected
//! pieces; a piece that can no longer be finished (wrong number of path
//! ends, a color imbalance, or nothing to enter it from) kills the branch.
//! "No cover" is only reported once the search space is exhausted. This
//! module shares nothing with the constructive solver beyond the neighbor
//! rule.

use std::time::Duration;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hampath::Path;
use crate::solver::{Instance, PathCover};
use crate::topology::{BalancedHypercube, Vertex};
use crate::verifier::verify_cover;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub budget: Option<Duration>,
    /// Permit `n = 3`, which is far beyond exhaustive reach for most
    /// instances; callers must bring a budget.
    pub allow_n3: bool,
}

impl Default for OracleOptions {
    fn default() -> OracleOptions {
        OracleOptions { budget: Some(Duration::from_secs(600)), allow_n3: false }
    }
}

/// Searches for a `k`-path cover with `k = |S|`. `Ok(None)` means the
/// search finished without finding one.
pub fn brute_force_dpc(instance: &Instance, options: &OracleOptions) -> Result<Option<PathCover>> {
    let n = instance.n();
    if n > 3 || (n == 3 && !options.allow_n3) {
        return Err(Error::SizeCap(format!(
            "BH_{n} has {} vertices; exhaustive search is limited to n <= 2{}",
            1usize << (2 * n),
            if n == 3 { " without an explicit override" } else { "" }
        )));
    }
    if n == 3 && options.budget.is_none() {
        return Err(Error::SizeCap("n = 3 needs a time budget".into()));
    }
    let cube = instance.cube();
    let size = cube.vertex_count();
    let adj: Vec<Vec<usize>> = cube
        .vertices()
        .map(|v| cube.neighbors(v).expect("own vertex").into_iter().map(|w| w.id() as usize).collect())
        .collect();
    let mut sources: Vec<usize> = instance.sources().iter().map(|v| v.id() as usize).collect();
    sources.sort_unstable();
    let mut role = vec![Role::Plain; size];
    for &s in &sources {
        role[s] = Role::Source;
    }
    for t in instance.sinks() {
        role[t.id() as usize] = Role::Sink;
    }
    let mut search = Search {
        adj,
        role,
        sources,
        visited: vec![false; size],
        paths: Vec::new(),
        budget: options.budget.map_or_else(Budget::unlimited, Budget::new),
        ticks: 0,
        comp: vec![usize::MAX; size],
        stack: Vec::new(),
    };
    if !search.run(0)? {
        return Ok(None);
    }
    let paths = search
        .paths
        .iter()
        .map(|p| Path::new(p.iter().map(|&id| Vertex::from_raw(n, id as u32)).collect()))
        .collect();
    let cover = PathCover::from_paths(instance, paths)?;
    let report = verify_cover(instance, &cover);
    if !report.ok {
        return Err(Error::Verification(report));
    }
    Ok(Some(cover))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Plain,
    Source,
    Sink,
}

struct Search {
    adj: Vec<Vec<usize>>,
    role: Vec<Role>,
    sources: Vec<usize>,
    visited: Vec<bool>,
    paths: Vec<Vec<usize>>,
    budget: Budget,
    ticks: u64,
    comp: Vec<usize>,
    stack: Vec<usize>,
}

impl Search {
    /// `next` is the index of the next source to start once the current
    /// path (if any) is finished.
    fn run(&mut self, next: usize) -> Result<bool> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(1024) {
            self.budget.check()?;
        }
        let open = self.paths.last().is_some_and(|p| self.role[*p.last().expect("nonempty")] != Role::Sink);
        if !open {
            if next == self.sources.len() {
                return Ok(self.visited.iter().all(|&v| v));
            }
            let s = self.sources[next];
            self.visited[s] = true;
            self.paths.push(vec![s]);
            if self.feasible(Some(s)) && self.run(next + 1)? {
                return Ok(true);
            }
            self.paths.pop();
            self.visited[s] = false;
            return Ok(false);
        }
        let head = *self.paths.last().and_then(|p| p.last()).expect("open path");
        for i in 0..self.adj[head].len() {
            let x = self.adj[head][i];
            if self.visited[x] || self.role[x] == Role::Source {
                continue;
            }
            self.visited[x] = true;
            self.paths.last_mut().expect("open").push(x);
            let head_after = (self.role[x] != Role::Sink).then_some(x);
            if self.feasible(head_after) && self.run(next)? {
                return Ok(true);
            }
            self.paths.last_mut().expect("open").pop();
            self.visited[x] = false;
        }
        Ok(false)
    }

    fn feasible(&mut self, head: Option<usize>) -> bool {
        let size = self.visited.len();
        self.comp.iter_mut().for_each(|c| *c = usize::MAX);
        let mut stats: Vec<[isize; 4]> = Vec::new(); // sources, sinks, whites - blacks, touches head
        for start in 0..size {
            if self.visited[start] || self.comp[start] != usize::MAX {
                continue;
            }
            let id = stats.len();
            let mut st = [0isize; 4];
            self.comp[start] = id;
            self.stack.push(start);
            while let Some(x) = self.stack.pop() {
                match self.role[x] {
                    Role::Source => st[0] += 1,
                    Role::Sink => st[1] += 1,
                    Role::Plain => {}
                }
                st[2] += if x & 1 == 0 { 1 } else { -1 };
                for &y in &self.adj[x] {
                    if Some(y) == head {
                        st[3] = 1;
                    }
                    if !self.visited[y] && self.comp[y] == usize::MAX {
                        self.comp[y] = id;
                        self.stack.push(y);
                    }
                }
            }
            stats.push(st);
        }
        let head_white = head.map(|h| h & 1 == 0);
        let mut entered = 0;
        for st in stats {
            let diff = st[1] - st[0];
            match diff {
                0 => {
                    if st[0] == 0 || st[2] != 0 {
                        return false;
                    }
                }
                1 => {
                    // the open path must finish in here
                    if st[3] == 0 {
                        return false;
                    }
                    let want = if head_white == Some(true) { -1 } else { 0 };
                    if st[2] != want {
                        return false;
                    }
                    entered += 1;
                }
                _ => return false,
            }
        }
        entered == usize::from(head.is_some())
    }
}

/// The instance showing that `2n - 1` paths can fail: a backup pair `u, u'`
/// with all but one of their common neighbors made sinks, and sources kept
/// away from both.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessInstance {
    pub n: usize,
    pub u: Vertex,
    pub u_backup: Vertex,
    pub w: Vec<Vertex>,
    pub sources: Vec<Vertex>,
    pub sinks: Vec<Vertex>,
}

impl WitnessInstance {
    pub fn k(&self) -> usize {
        self.sources.len()
    }

    pub fn instance(&self) -> Instance {
        Instance::with_any_size(self.n, self.sources.clone(), self.sinks.clone())
            .expect("witness is well formed")
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let cube = BalancedHypercube::new(self.n).map_err(|e| e.to_string())?;
        let nu = cube.neighbors(self.u).map_err(|e| e.to_string())?;
        let checks = [
            (self.u_backup == self.u.backup(), "u' is not the backup of u"),
            (self.w.len() == 2 * self.n - 1, "|W| != 2n - 1"),
            (self.w.iter().all(|x| nu.contains(x)), "W is not inside N(u)"),
            (nu == cube.neighbors(self.u_backup).map_err(|e| e.to_string())?, "N(u) != N(u')"),
            (
                !self.sources.contains(&self.u) && !self.sources.contains(&self.u_backup),
                "u or u' is a source",
            ),
            (self.sources.len() == 2 * self.n - 1, "|S| != 2n - 1"),
            (self.w.iter().all(|x| self.sinks.contains(x)), "W is not inside T"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, why)) => Err(why.to_string()),
            None => Ok(()),
        }
    }
}

pub fn tightness_witness(n: usize) -> Result<WitnessInstance> {
    if n < 2 {
        return Err(Error::DimensionOutOfRange { dim: n, min: 2, max: crate::topology::MAX_DIM });
    }
    let cube = BalancedHypercube::new(n)?;
    let u = Vertex::from_id(n, 0)?;
    let u_backup = u.backup();
    let w: Vec<Vertex> = cube.neighbors(u)?.into_iter().take(2 * n - 1).collect();
    let sources: Vec<Vertex> =
        cube.white_vertices().filter(|&x| x != u && x != u_backup).take(2 * n - 1).collect();
    Ok(WitnessInstance { n, u, u_backup, sinks: w.clone(), w, sources })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn bh1_hamiltonian_case() {
        let inst = Instance::with_any_size(1, vec![v(&[0])], vec![v(&[1])]).unwrap();
        let cover = brute_force_dpc(&inst, &OracleOptions::default()).unwrap().unwrap();
        assert_eq!(cover.paths()[0].len(), 4);
    }

    #[test]
    fn finds_bh2_cover() {
        let inst = Instance::new(2, vec![v(&[0, 0]), v(&[0, 1])], vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert!(brute_force_dpc(&inst, &OracleOptions::default()).unwrap().is_some());
    }

    #[test]
    fn bh2_witness_shape() {
        let w = tightness_witness(2).unwrap();
        assert_eq!((w.u, w.u_backup), (v(&[0, 0]), v(&[2, 0])));
        assert_eq!(w.w, vec![v(&[1, 0]), v(&[3, 0]), v(&[1, 1])]);
        assert_eq!(w.sources, vec![v(&[0, 1]), v(&[2, 1]), v(&[0, 2])]);
        w.check().unwrap();
    }

    #[test]
    fn bh2_witness_has_no_cover() {
        let w = tightness_witness(2).unwrap();
        assert!(brute_force_dpc(&w.instance(), &OracleOptions::default()).unwrap().is_none());
    }

    #[test]
    fn refuses_large_cubes() {
        let w = tightness_witness(4).unwrap();
        assert!(matches!(brute_force_dpc(&w.instance(), &OracleOptions::default()), Err(Error::SizeCap(_))));
    }
}
