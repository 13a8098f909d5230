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

//! Threading empty subcubes into a partial cover.
//!
//! Every occupied subcube `j` gives up one path edge `y_j -> x_j` (black
//! then white, both inside `j`). Each loose `y_j` is then joined to the
//! loose `x` of the next occupied subcube further down the ring: directly
//! by a cross edge when that subcube is `j - 1`, otherwise through
//! Hamiltonian paths of the empty subcubes in between. Adjacent occupied
//! subcubes constrain each other's choice, so one subcube per run acts as
//! donor and the others follow from it through cross-neighbors.

use crate::error::{Error, Result};
use crate::hampath::{construct_in, first_of_color, Path};
use crate::solver::{Ctx, Linkage};
use crate::topology::{Split, Vertex};

/// Black-to-white steps of `paths`, in path order. These are the edges a
/// splice may cut.
pub fn surgery_candidates(paths: &[Path]) -> Vec<(Vertex, Vertex)> {
    paths.iter().flat_map(|p| p.windows(2).filter(|w| !w[0].is_white()).map(|w| (w[0], w[1]))).collect()
}

/// Route from black `from` down the ring through every subcube in `gap`
/// (each covered by a Hamiltonian path) to just before white `to`.
pub(crate) fn thread(
    split: &Split,
    from: Vertex,
    gap: &[usize],
    to: Vertex,
    cx: &mut Ctx,
) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut prev = from;
    for (k, &j) in gap.iter().enumerate() {
        let entry = split.cross_neighbors(prev)[0];
        let exit = if k + 1 == gap.len() {
            split.cross_neighbors(to)[0]
        } else {
            first_of_color(split, j, false, entry)
        };
        if split.subcube_of(entry) != j || split.subcube_of(exit) != j {
            return Err(Error::Construction(format!(
                "thread from {from} to {to} does not run through subcube {j}"
            )));
        }
        out.extend(construct_in(split, j, entry, exit, cx)?);
        prev = exit;
    }
    Ok(out)
}

/// Fills every uncovered subcube. Returns which subcubes were occupied
/// beforehand. A subcube must be either fully covered or untouched.
pub(crate) fn ring_splice(
    split: &Split,
    link: &mut Linkage,
    sources: &[Vertex],
    sinks: &[Vertex],
    cx: &mut Ctx,
) -> Result<[bool; 4]> {
    let m = split.parent_dim();
    let covered = link.covered();
    let mut occupied = [false; 4];
    let mut full = [true; 4];
    for (id, &c) in covered.iter().enumerate() {
        let j = split.subcube_of(Vertex::from_raw(m, id as u32));
        if c {
            occupied[j] = true;
        } else {
            full[j] = false;
        }
    }
    if (0..4).any(|j| occupied[j] && !full[j]) {
        return Err(Error::Construction("a subcube is only partly covered".into()));
    }
    if occupied.iter().all(|&o| o) {
        return Ok(occupied);
    }
    if !occupied.iter().any(|&o| o) {
        return Err(Error::Construction("nothing to splice into".into()));
    }
    let reach = covered.iter().filter(|&&c| c).count();
    let paths: Vec<Path> = link.decode(sources, sinks, reach)?.into_iter().map(Path::from).collect();
    let pred = link.predecessors();
    let below = |j: usize| (1..=4).map(|s| (j + 4 - s) % 4).find(|&i| occupied[i]).expect("occupied");

    let runs = runs(&occupied);
    let options: Vec<Vec<Vec<(Vertex, Vertex)>>> =
        runs.iter().map(|run| run_candidates(split, link, &pred, &paths, run)).collect();
    if options.iter().any(|o| o.is_empty()) {
        return Err(Error::Construction("no surgery edge in some donor subcube".into()));
    }

    let mut choice = vec![0usize; runs.len()];
    loop {
        cx.tick()?;
        let mut cut: [Option<(Vertex, Vertex)>; 4] = [None; 4];
        for (r, run) in runs.iter().enumerate() {
            for (k, &j) in run.iter().enumerate() {
                cut[j] = Some(options[r][choice[r]][k]);
            }
        }
        let mut trial = link.clone();
        for j in (0..4).filter(|&j| occupied[j]) {
            let (y, _) = cut[j].expect("set");
            let (_, x) = cut[below(j)].expect("set");
            trial.set_next(y, x);
        }
        if trial.decode(sources, sinks, reach).is_ok() {
            for j in (0..4).filter(|&j| occupied[j]) {
                let (y, _) = cut[j].expect("set");
                let (_, x) = cut[below(j)].expect("set");
                let gap: Vec<usize> = (1..4).map(|s| (j + 4 - s) % 4).take_while(|&i| !occupied[i]).collect();
                let mut at = y;
                for w in thread(split, y, &gap, x, cx)? {
                    link.set_next(at, w);
                    at = w;
                }
                link.set_next(at, x);
            }
            return Ok(occupied);
        }
        let mut r = 0;
        loop {
            if r == runs.len() {
                return Err(Error::Construction("every surgery choice closes a cycle".into()));
            }
            choice[r] += 1;
            if choice[r] < options[r].len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
    }
}

/// Maximal runs of occupied subcubes, each listed from the top down.
fn runs(occupied: &[bool; 4]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for top in 0..4 {
        if !occupied[top] || occupied[(top + 1) % 4] {
            continue;
        }
        let mut run = vec![top];
        let mut j = top;
        while occupied[(j + 3) % 4] && (j + 3) % 4 != top {
            j = (j + 3) % 4;
            run.push(j);
        }
        out.push(run);
    }
    out
}

/// Consistent cut edges for one run, one per member, in top-down order.
fn run_candidates(
    split: &Split,
    link: &Linkage,
    pred: &[u32],
    paths: &[Path],
    run: &[usize],
) -> Vec<Vec<(Vertex, Vertex)>> {
    let m = split.parent_dim();
    let donor_at = match run.len() {
        1 => 0,
        // bottom of a pair, middle of a triple
        _ => 1,
    };
    let donor = run[donor_at];
    let mut out = Vec::new();
    for (y, x) in surgery_candidates(paths) {
        if split.subcube_of(y) != donor || split.subcube_of(x) != donor {
            continue;
        }
        let mut partial = vec![vec![None; run.len()]];
        partial[0][donor_at] = Some((y, x));
        // upward: y' in cross(x) whose successor stays in the same subcube
        for k in (0..donor_at).rev() {
            let j = run[k];
            let mut grown = Vec::new();
            for p in &partial {
                let (_, xb) = p[k + 1].expect("set");
                for yu in split.cross_neighbors(xb) {
                    if let Some(xu) = link.next(yu).filter(|&n| split.subcube_of(n) == j) {
                        let mut q = p.clone();
                        q[k] = Some((yu, xu));
                        grown.push(q);
                    }
                }
            }
            partial = grown;
        }
        // downward: x' in cross(y) whose predecessor stays in the same subcube
        for k in donor_at + 1..run.len() {
            let j = run[k];
            let mut grown = Vec::new();
            for p in &partial {
                let (ya, _) = p[k - 1].expect("set");
                for xd in split.cross_neighbors(ya) {
                    if let Some(yd) =
                        Linkage::predecessor_of(pred, m, xd).filter(|&n| split.subcube_of(n) == j)
                    {
                        let mut q = p.clone();
                        q[k] = Some((yd, xd));
                        grown.push(q);
                    }
                }
            }
            partial = grown;
        }
        out.extend(partial.into_iter().map(|p| p.into_iter().map(|e| e.expect("set")).collect::<Vec<_>>()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::BalancedHypercube;

    #[test]
    fn runs_of_occupied_subcubes() {
        assert_eq!(runs(&[true, true, false, true]), vec![vec![1, 0, 3]]);
        assert_eq!(runs(&[true, false, true, false]), vec![vec![0], vec![2]]);
        assert_eq!(runs(&[false, true, true, false]), vec![vec![2, 1]]);
        assert_eq!(runs(&[false, false, true, false]), vec![vec![2]]);
    }

    #[test]
    fn two_path_cover_of_bh2_has_six_candidates() {
        let v = |c: &[u8]| Vertex::new(c).unwrap();
        let inst =
            crate::solver::Instance::new(2, vec![v(&[0, 0]), v(&[0, 1])], vec![v(&[1, 0]), v(&[1, 1])])
                .unwrap();
        let cover = crate::solver::solve(&inst).unwrap();
        assert_eq!(surgery_candidates(cover.paths()).len(), (16 - 2 * 2) / 2);
    }

    #[test]
    fn thread_through_two_subcubes() {
        let split = BalancedHypercube::new(3).unwrap().split(2).unwrap();
        let mut cx = Ctx::new(None);
        let from = first_of_color(&split, 3, false, Vertex::new(&[0, 0, 0]).unwrap());
        let to = first_of_color(&split, 0, true, from);
        let t = thread(&split, from, &[2, 1], to, &mut cx).unwrap();
        assert_eq!(t.len(), 32);
        let cube = BalancedHypercube::new(3).unwrap();
        let mut full = vec![from];
        full.extend(&t);
        full.push(to);
        assert!(crate::verifier::verify_path(&cube, &full).ok);
    }
}
