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
use crate::solver::Instance;
use crate::topology::{Split, SubcubeView, Vertex};

/// A split of `BH_m` with the sources and sinks distributed over the four
/// subcubes. Positions are subcube indices shifted by `rotation`, so that
/// position 0 is the anchor; the ring orientation is unchanged by the shift.
#[derive(Clone, Debug)]
pub struct SplitPlan {
    split: Split,
    rotation: usize,
    sources: [Vec<Vertex>; 4],
    sinks: [Vec<Vertex>; 4],
}

impl SplitPlan {
    fn new(split: Split, rotation: usize, sources: &[Vertex], sinks: &[Vertex]) -> SplitPlan {
        let mut s: [Vec<Vertex>; 4] = Default::default();
        let mut t: [Vec<Vertex>; 4] = Default::default();
        for &v in sources {
            s[(split.subcube_of(v) + 4 - rotation) % 4].push(v);
        }
        for &v in sinks {
            t[(split.subcube_of(v) + 4 - rotation) % 4].push(v);
        }
        SplitPlan { split, rotation, sources: s, sinks: t }
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn dimension(&self) -> usize {
        self.split.dimension()
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    /// Subcube index at `position`.
    pub fn index_of(&self, position: usize) -> usize {
        (position + self.rotation) % 4
    }

    pub fn view(&self, position: usize) -> SubcubeView {
        self.split.view(self.index_of(position))
    }

    pub fn sources(&self, position: usize) -> &[Vertex] {
        &self.sources[position % 4]
    }

    pub fn sinks(&self, position: usize) -> &[Vertex] {
        &self.sinks[position % 4]
    }

    pub fn source_counts(&self) -> [usize; 4] {
        std::array::from_fn(|p| self.sources[p].len())
    }

    pub fn sink_counts(&self) -> [usize; 4] {
        std::array::from_fn(|p| self.sinks[p].len())
    }

    /// `|T_i| - |S_i|` per position.
    pub fn deficits(&self) -> [isize; 4] {
        std::array::from_fn(|p| self.sinks[p].len() as isize - self.sources[p].len() as isize)
    }

    pub fn input_empty(&self) -> Vec<usize> {
        (0..4).filter(|&p| self.sources[p].is_empty() && self.sinks[p].is_empty()).collect()
    }
}

/// Split dimensions, tried from `m - 1` down to 0, that leave at most
/// `2m - 4` sources in every subcube.
pub fn good_split_dimensions(m: usize, sources: &[Vertex]) -> Result<Vec<usize>> {
    if m < 3 {
        return Err(Error::InvalidSplit { n: m, d: 0 });
    }
    let cap = 2 * m - 4;
    let mut out = Vec::new();
    for d in (0..m).rev() {
        let split = Split::new(m, d)?;
        let mut counts = [0usize; 4];
        for &v in sources {
            counts[split.subcube_of(v)] += 1;
        }
        if counts.iter().all(|&c| c <= cap) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Every rotation `i` (in order 0..4) with `|S_i| >= |T_i|`,
/// `|S_(i+1)| <= |T_(i+1)|` and `D_(i+1) + D_(i+2) >= 0`.
pub fn anchors(s: [usize; 4], t: [usize; 4]) -> Vec<usize> {
    let d = |i: usize| t[i % 4] as isize - s[i % 4] as isize;
    (0..4).filter(|&i| s[i] >= t[i] && s[(i + 1) % 4] <= t[(i + 1) % 4] && d(i + 1) + d(i + 2) >= 0).collect()
}

pub fn find_anchor(s: [usize; 4], t: [usize; 4]) -> Option<usize> {
    anchors(s, t).first().copied()
}

/// The first admissible plan: the highest good dimension and its first
/// anchor.
pub fn select_split(instance: &Instance) -> Result<SplitPlan> {
    candidates(instance.n(), instance.sources(), instance.sinks())?.next().ok_or_else(|| {
        Error::Construction(format!(
            "no split dimension bounds every subcube by {} sources",
            2 * instance.n() as isize - 4
        ))
    })
}

/// All admissible plans in preference order.
pub(crate) fn candidates(
    m: usize,
    sources: &[Vertex],
    sinks: &[Vertex],
) -> Result<impl Iterator<Item = SplitPlan>> {
    let mut plans = Vec::new();
    for d in good_split_dimensions(m, sources)? {
        let split = Split::new(m, d)?;
        let probe = SplitPlan::new(split.clone(), 0, sources, sinks);
        for r in anchors(probe.source_counts(), probe.sink_counts()) {
            plans.push((split.clone(), r));
        }
    }
    let sources = sources.to_vec();
    let sinks = sinks.to_vec();
    Ok(plans.into_iter().map(move |(split, r)| SplitPlan::new(split, r, &sources, &sinks)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u8]) -> Vertex {
        Vertex::new(c).unwrap()
    }

    #[test]
    fn anchor_example() {
        assert_eq!(find_anchor([2, 1, 1, 0], [1, 2, 1, 0]), Some(0));
    }

    #[test]
    fn an_anchor_always_exists() {
        // every distribution of up to 6 sources and sinks over four subcubes
        for code in 0..(7u32.pow(8)) {
            let mut c = code;
            let mut digit = || {
                let d = (c % 7) as usize;
                c /= 7;
                d
            };
            let s = [digit(), digit(), digit(), digit()];
            let t = [digit(), digit(), digit(), digit()];
            if s.iter().sum::<usize>() != t.iter().sum::<usize>() {
                continue;
            }
            assert!(find_anchor(s, t).is_some(), "{s:?} {t:?}");
        }
    }

    #[test]
    fn coordinate_split_accepts_spread_sources() {
        let s = vec![v(&[0, 0, 0]), v(&[0, 0, 1]), v(&[0, 0, 2]), v(&[0, 0, 3])];
        let t = vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[1, 2, 0]), v(&[1, 3, 0])];
        let plan = select_split(&Instance::new(3, s, t).unwrap()).unwrap();
        assert_eq!(plan.dimension(), 2);
        let counts = plan.source_counts();
        assert!(counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn corner_case_needs_inner_split() {
        let s = vec![v(&[0, 1, 1]), v(&[2, 1, 1]), v(&[0, 2, 1]), v(&[0, 1, 2])];
        assert_eq!(good_split_dimensions(3, &s).unwrap(), vec![0]);
        let t = vec![v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[1, 2, 0]), v(&[1, 3, 0])];
        let plan = select_split(&Instance::new(3, s, t).unwrap()).unwrap();
        assert_eq!(plan.dimension(), 0);
        assert!(plan.source_counts().iter().all(|&c| c <= 2));
    }
}
