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

//! Splitting along the inner dimension.
//!
//! Deleting the inner-index edges leaves four components, but unlike the
//! outer dimensions there is no coordinate that names them and no closed-form
//! map onto `BH_(n-1)`. The components are found by traversal and each map is
//! discovered by anchored search: the component's smallest white vertex goes
//! to the all-zero vertex, so colors are preserved, and the rest is extended along a BFS tree, backtracking on
//! conflicts. Backup pairs are twins in both graphs, so a twin of a mapped
//! vertex has exactly one legal image, which keeps the search almost linear.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use super::{adjacency, ids_adjacent, raw_neighbors};
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

pub(crate) struct ZeroSplit {
    pub(crate) index_of: Vec<u8>,
    pub(crate) to_child: Vec<u32>,
    pub(crate) to_parent: [Vec<u32>; 4],
}

pub(crate) fn zero_split(n: usize) -> Result<Arc<ZeroSplit>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ZeroSplit>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("split cache poisoned").get(&n) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build(n)?);
    cache.lock().expect("split cache poisoned").insert(n, built.clone());
    Ok(built)
}

/// Neighbors of `id` that do not use an inner-index edge.
fn outer_neighbors(n: usize, id: u32) -> impl Iterator<Item = u32> {
    raw_neighbors(n, id).skip(2)
}

fn build(n: usize) -> Result<ZeroSplit> {
    let count = 1usize << (2 * n);
    let mut component = vec![u8::MAX; count];
    let mut members: Vec<Vec<u32>> = Vec::new();
    for start in 0..count as u32 {
        if component[start as usize] != u8::MAX {
            continue;
        }
        let label = members.len();
        if label >= 4 {
            return Err(Error::Construction(format!(
                "BH_{n} minus its inner edges has more than four components"
            )));
        }
        let mut list = vec![start];
        component[start as usize] = label as u8;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in outer_neighbors(n, x) {
                if component[y as usize] == u8::MAX {
                    component[y as usize] = label as u8;
                    list.push(y);
                    queue.push_back(y);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }
    if members.len() != 4 {
        return Err(Error::Construction(format!("expected four components, found {}", members.len())));
    }

    // Follow white vertices' inner edges to order the ring.
    let successor = |label: usize| -> Result<usize> {
        let whites = members[label].iter().filter(|&&id| id & 1 == 0);
        let mut target = None;
        for &w in whites {
            for t in [(w & !3) | ((w + 1) & 3), (w & !3) | ((w + 3) & 3)] {
                let c = component[t as usize] as usize;
                match target {
                    None => target = Some(c),
                    Some(prev) if prev != c => {
                        return Err(Error::Construction(
                            "inner edges of one component do not share a target".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        target.ok_or_else(|| Error::Construction("component without white vertices".into()))
    };
    let mut ring = [component[0] as usize; 4];
    for i in 1..4 {
        ring[i] = successor(ring[i - 1])?;
    }
    let mut sorted = ring;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3] || successor(ring[3])? != ring[0] {
        return Err(Error::Construction(format!("inner edges do not form a 4-ring: {ring:?}")));
    }

    let mut index_of = vec![0u8; count];
    let mut to_child = vec![UNSET; count];
    let mut to_parent: [Vec<u32>; 4] = Default::default();
    for (index, &label) in ring.iter().enumerate() {
        let list = &members[label];
        let images = discover(n, list)?;
        let mut back = vec![UNSET; list.len()];
        for (&p, &c) in list.iter().zip(&images) {
            index_of[p as usize] = index as u8;
            to_child[p as usize] = c;
            back[c as usize] = p;
        }
        to_parent[index] = back;
    }
    Ok(ZeroSplit { index_of, to_child, to_parent })
}

/// Finds images in `BH_(n-1)` for the sorted component `members` of
/// `BH_n` (parent ids), with the first white member sent to the zero vertex.
fn discover(n: usize, members: &[u32]) -> Result<Vec<u32>> {
    let m = n - 1;
    let size = members.len();
    if size != 1 << (2 * m) {
        return Err(Error::Construction(format!("component of size {size} cannot be BH_{m}")));
    }
    let local: HashMap<u32, usize> = members.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let local_adj: Vec<Vec<usize>> = members
        .iter()
        .map(|&p| {
            let mut l: Vec<usize> = outer_neighbors(n, p).map(|q| local[&q]).collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let twin: Vec<usize> = members.iter().map(|&p| local[&(p ^ 2)]).collect();
    let root = members
        .iter()
        .position(|&p| p & 1 == 0)
        .ok_or_else(|| Error::Construction("component without white vertices".into()))?;

    // BFS order and tree parents.
    let mut order = Vec::with_capacity(size);
    let mut parent = vec![usize::MAX; size];
    let mut queued = vec![false; size];
    queued[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &local_adj[x] {
            if !queued[y] {
                queued[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if order.len() != size {
        return Err(Error::Construction("component is not connected".into()));
    }

    let target = adjacency(m);
    let mut image = vec![UNSET; size];
    let mut used = vec![false; size];
    image[root] = 0;
    used[0] = true;

    #[allow(clippy::too_many_arguments)]
    fn extend(
        pos: usize,
        m: usize,
        order: &[usize],
        parent: &[usize],
        local_adj: &[Vec<usize>],
        twin: &[usize],
        target: &super::Adjacency,
        image: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let anchor = image[parent[v]];
        let forced = match image[twin[v]] {
            UNSET => None,
            t => Some(t ^ 2),
        };
        for &c in target.of(anchor) {
            if used[c as usize] || forced.is_some_and(|f| f != c) {
                continue;
            }
            let consistent = local_adj[v].iter().all(|&w| image[w] == UNSET || ids_adjacent(m, c, image[w]));
            if !consistent {
                continue;
            }
            image[v] = c;
            used[c as usize] = true;
            if extend(pos + 1, m, order, parent, local_adj, twin, target, image, used) {
                return true;
            }
            image[v] = UNSET;
            used[c as usize] = false;
        }
        false
    }

    if !extend(1, m, &order, &parent, &local_adj, &twin, &target, &mut image, &mut used) {
        return Err(Error::Construction(format!(
            "no isomorphism onto BH_{m} from component at {}",
            members[root]
        )));
    }
    for (v, nbrs) in local_adj.iter().enumerate() {
        for &w in nbrs {
            if !ids_adjacent(m, image[v], image[w]) {
                return Err(Error::Construction("discovered map drops an edge".into()));
            }
        }
    }
    Ok(image)
}
