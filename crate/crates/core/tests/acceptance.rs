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

//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Limits and sample counts are fixed here, not read from the environment.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bh_dpc::solver::{good_split_dimensions, Layout, PathCover};
use bh_dpc::sweep::{base_instances, random_color_set, random_instance, random_pair, seeded};
use bh_dpc::{
    brute_force_dpc, hamiltonian_path, select_split, solve, solve_with, tightness_witness, verify_cover,
    verify_path, BalancedHypercube, Error, Instance, OracleOptions, Path, SolveOptions, Vertex,
    ViolationKind,
};

const BASE_LIMIT: Duration = Duration::from_secs(120);
const WITNESS_LIMIT: Duration = Duration::from_secs(600);
const N4_PER_INSTANCE: Duration = Duration::from_secs(30);
const BH3_PAIRS: usize = 200;
const N3_SAMPLES: usize = 500;
const N4_SAMPLES: usize = 50;
const SPLIT_SAMPLES: usize = 1000;
const SEED: u64 = 2024;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn v(c: &[u8]) -> Vertex {
    Vertex::new(c).unwrap()
}

fn vs(cs: &[&[u8]]) -> Vec<Vertex> {
    cs.iter().map(|c| v(c)).collect()
}

fn certified(inst: &Instance, cover: &PathCover) -> bool {
    verify_cover(inst, cover).ok && cover.paths().len() == inst.k()
}

fn base_totality() -> Outcome {
    let started = Instant::now();
    let all = base_instances();
    let mut bad = Vec::new();
    for inst in &all {
        match solve(inst) {
            Ok(cover) if certified(inst, &cover) => {}
            Ok(_) => bad.push(format!("{inst:?}: uncertified")),
            Err(e) => bad.push(format!("{inst:?}: {e}")),
        }
    }
    let took = started.elapsed();
    let detail =
        format!("{}/{} solved in {took:.2?} (limit {BASE_LIMIT:?})", all.len() - bad.len(), all.len());
    if all.len() == 784 && bad.is_empty() && took < BASE_LIMIT {
        pass(detail)
    } else {
        fail(format!("{detail}; first: {:?}", bad.first()))
    }
}

fn oracle_agreement() -> Outcome {
    let opts = OracleOptions::default();
    let mut found = 0;
    let mut disagreements = 0;
    for inst in base_instances() {
        let oracle = brute_force_dpc(&inst, &opts);
        let solver = solve(&inst);
        match (oracle, solver) {
            (Ok(Some(c)), Ok(_)) if certified(&inst, &c) => found += 1,
            _ => disagreements += 1,
        }
    }
    let detail = format!("oracle covers {found}/784, disagreements {disagreements}");
    if found == 784 && disagreements == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn tightness() -> Outcome {
    let started = Instant::now();
    let witness = match tightness_witness(2) {
        Ok(w) => w,
        Err(e) => return fail(e.to_string()),
    };
    if let Err(why) = witness.check() {
        return fail(format!("witness malformed: {why}"));
    }
    let inst = witness.instance();
    let opts = OracleOptions { budget: Some(WITNESS_LIMIT), allow_n3: false };
    let result = brute_force_dpc(&inst, &opts);
    let took = started.elapsed();
    // the solver must not accept more than 2n - 2 paths either
    let refused = matches!(solve(&inst), Err(Error::InvalidInstance(_)));
    match result {
        Ok(None) if refused && took < WITNESS_LIMIT => {
            pass(format!("k={} exhausted with no cover in {took:.2?}", witness.k()))
        }
        Ok(None) => fail(format!("exhausted, but solver refused={refused}, took {took:.2?}")),
        Ok(Some(_)) => fail("oracle found a cover"),
        Err(e) => fail(format!("search did not finish: {e}")),
    }
}

fn hamiltonian_ok(cube: &BalancedHypercube, u: Vertex, w: Vertex) -> bool {
    match hamiltonian_path(cube, u, w) {
        Ok(p) => {
            verify_path(cube, &p).ok
                && p.len() == cube.vertex_count()
                && p.first() == Some(&u)
                && p.last() == Some(&w)
                && p.iter().collect::<BTreeSet<_>>().len() == p.len()
        }
        Err(_) => false,
    }
}

fn laceability() -> Outcome {
    let bh2 = BalancedHypercube::new(2).unwrap();
    let mut small = 0;
    for u in bh2.white_vertices() {
        for w in bh2.black_vertices() {
            small += usize::from(hamiltonian_ok(&bh2, u, w));
        }
    }
    let bh3 = BalancedHypercube::new(3).unwrap();
    let mut rng = seeded(SEED);
    let mut big = 0;
    for _ in 0..BH3_PAIRS {
        let (u, w) = random_pair(3, &mut rng);
        big += usize::from(hamiltonian_ok(&bh3, u, w));
    }
    let detail = format!("BH_2 {small}/64, BH_3 {big}/{BH3_PAIRS}");
    if small == 64 && big == BH3_PAIRS {
        pass(detail)
    } else {
        fail(detail)
    }
}

/// Instances whose top-level layout exercises each empty-subcube shape,
/// plus one whose sources only balance along dimension 0.
type Targeted = (&'static str, Instance, fn(&bh_dpc::LevelRecord) -> bool);

fn targeted() -> Vec<Targeted> {
    let inst = |s: Vec<Vertex>, t: Vec<Vertex>| Instance::new(3, s, t).unwrap();
    vec![
        (
            "one empty at position 1",
            inst(
                vs(&[&[0, 0, 2], &[2, 0, 2], &[2, 2, 2], &[0, 3, 2]]),
                vs(&[&[3, 0, 2], &[1, 2, 2], &[3, 2, 2], &[1, 3, 2]]),
            ),
            |r| r.input_empty == [1] && r.layout == Layout::OneEmpty { position: 1 },
        ),
        (
            "one empty at position 2",
            inst(
                vs(&[&[2, 1, 0], &[0, 0, 2], &[0, 3, 2], &[2, 3, 2]]),
                vs(&[&[1, 3, 0], &[3, 0, 2], &[3, 1, 2], &[3, 3, 2]]),
            ),
            |r| r.input_empty == [2] && r.layout == Layout::OneEmpty { position: 2 },
        ),
        (
            "adjacent empty pair",
            inst(
                vs(&[&[0, 0, 0], &[0, 3, 0], &[0, 0, 1], &[0, 1, 1]]),
                vs(&[&[3, 1, 0], &[1, 2, 0], &[3, 2, 0], &[1, 3, 1]]),
            ),
            |r| matches!(r.layout, Layout::TwoAdjacentEmpty { .. }) && r.input_empty.len() == 2,
        ),
        (
            "opposite empty pair",
            inst(
                vs(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2], &[0, 3, 2]]),
                vs(&[&[1, 0, 0], &[1, 3, 0], &[1, 0, 2], &[3, 0, 2]]),
            ),
            |r| matches!(r.layout, Layout::TwoOppositeEmpty { .. }) && r.input_empty.len() == 2,
        ),
        (
            "inner-dimension split",
            inst(
                vs(&[&[0, 1, 1], &[2, 1, 1], &[0, 2, 1], &[0, 1, 2]]),
                vs(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[1, 3, 0]]),
            ),
            |r| r.split_dimension == 0,
        ),
    ]
}

fn n3_generalization() -> Outcome {
    let mut rng = seeded(SEED);
    let mut ok = 0;
    let mut first_err = None;
    for _ in 0..N3_SAMPLES {
        let inst = random_instance(3, &mut rng);
        match solve_with(&inst, &SolveOptions::default()) {
            Ok(s) if certified(&inst, &s.cover) => ok += 1,
            Ok(_) => first_err = first_err.or(Some("uncertified".to_string())),
            Err(e) => first_err = first_err.or(Some(e.to_string())),
        }
    }
    let mut hit = Vec::new();
    for (name, inst, expect) in targeted() {
        match solve_with(&inst, &SolveOptions::default()) {
            Ok(s) if certified(&inst, &s.cover) && s.top_level().is_some_and(expect) => hit.push(name),
            Ok(s) => first_err = first_err.or(Some(format!("{name}: trace {:?}", s.top_level()))),
            Err(e) => first_err = first_err.or(Some(format!("{name}: {e}"))),
        }
    }
    let detail = format!("random {ok}/{N3_SAMPLES}, targeted {}/5 ({})", hit.len(), hit.join(", "));
    if ok == N3_SAMPLES && hit.len() == 5 {
        pass(detail)
    } else {
        fail(format!("{detail}; {first_err:?}"))
    }
}

fn n4_smoke() -> Outcome {
    let mut rng = seeded(SEED);
    let mut ok = 0;
    let mut slowest = Duration::ZERO;
    for _ in 0..N4_SAMPLES {
        let inst = random_instance(4, &mut rng);
        let started = Instant::now();
        let solved = solve_with(&inst, &SolveOptions { budget: Some(N4_PER_INSTANCE) });
        let took = started.elapsed();
        slowest = slowest.max(took);
        if matches!(solved, Ok(ref s) if certified(&inst, &s.cover)) && took < N4_PER_INSTANCE {
            ok += 1;
        }
    }
    let detail = format!("{ok}/{N4_SAMPLES}, slowest {slowest:.2?} (limit {N4_PER_INSTANCE:?})");
    if ok == N4_SAMPLES {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn split_selection() -> Outcome {
    let mut rng = seeded(SEED);
    let mut ok = [0usize; 2];
    for (slot, n) in [3usize, 4].into_iter().enumerate() {
        let cap = 2 * n - 4;
        for _ in 0..SPLIT_SAMPLES {
            let s = random_color_set(n, true, 2 * n - 2, &mut rng);
            let t = random_color_set(n, false, 2 * n - 2, &mut rng);
            let cube = BalancedHypercube::new(n).unwrap();
            // count per subcube through the public split, not the selector's own tally
            let balanced = |d: usize| {
                let split = cube.split(d).unwrap();
                let mut c = [0usize; 4];
                for &x in &s {
                    c[split.subcube_of(x)] += 1;
                }
                c.iter().all(|&x| x <= cap)
            };
            let dims = good_split_dimensions(n, &s).unwrap_or_default();
            let plan = select_split(&Instance::new(n, s.clone(), t).unwrap());
            let good = !dims.is_empty()
                && dims.iter().all(|&d| balanced(d))
                && plan.is_ok_and(|p| balanced(p.dimension()) && p.source_counts().iter().all(|&c| c <= cap));
            ok[slot] += usize::from(good);
        }
    }
    let detail = format!("n=3 {}/{SPLIT_SAMPLES}, n=4 {}/{SPLIT_SAMPLES}", ok[0], ok[1]);
    if ok == [SPLIT_SAMPLES; 2] {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn structure() -> Outcome {
    for n in 1..=4 {
        let cube = BalancedHypercube::new(n).unwrap();
        if cube.vertices().count() != 1 << (2 * n) {
            return fail(format!("BH_{n} vertex count"));
        }
        let degree = if n == 1 { 2 } else { 2 * n };
        for x in cube.vertices() {
            let nb = cube.neighbors(x).unwrap();
            if nb.len() != degree {
                return fail(format!("BH_{n}: {x} has degree {}", nb.len()));
            }
            if nb.iter().any(|y| y.color() == x.color()) {
                return fail(format!("BH_{n}: {x} has a same-color neighbor"));
            }
            if cube.neighbors(x.backup()).unwrap() != nb {
                return fail(format!("BH_{n}: {x} and its backup differ"));
            }
        }
        let edges = cube.edges();
        let mut per_dim = vec![0usize; n];
        for e in &edges {
            per_dim[e.dimension] += 1;
        }
        if edges.len() != n << (2 * n) || per_dim.iter().any(|&c| c != 1 << (2 * n)) {
            return fail(format!("BH_{n}: edge dimensions {per_dim:?}"));
        }
        for d in (0..n).filter(|_| n >= 2) {
            if let Err(e) = cube.split(d).unwrap().verify() {
                return fail(format!("BH_{n} split {d}: {e}"));
            }
        }
    }
    pass("n=1..4: counts, degree, bipartition, backups, |E_d| = 4^n, every split sound")
}

fn mutations() -> Outcome {
    let mut rng = seeded(SEED);
    let inst = random_instance(3, &mut rng);
    let cover = match solve(&inst) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let cube = inst.cube();
    let paths: Vec<Vec<Vertex>> = cover.paths().iter().map(|p| p.to_vec()).collect();
    let pairing = cover.pairing().to_vec();
    let rebuild = |ps: &[Vec<Vertex>], pairing: &[usize]| {
        PathCover::new(ps.iter().cloned().map(Path::from).collect(), pairing.to_vec())
    };
    let longest = (0..paths.len()).max_by_key(|&i| paths[i].len()).unwrap();
    let mut results: Vec<(&str, bool)> = vec![("unmutated", verify_cover(&inst, &cover).ok)];

    // drop two interior vertices whose outer neighbors are adjacent
    let dropped = paths.iter().enumerate().find_map(|(i, p)| {
        (1..p.len().saturating_sub(2)).find(|&j| cube.is_adjacent(p[j - 1], p[j + 2])).map(|j| (i, j))
    });
    results.push((
        "drop a vertex",
        dropped.is_some_and(|(i, j)| {
            let mut ps = paths.clone();
            ps[i].drain(j..j + 2);
            verify_cover(&inst, &rebuild(&ps, &pairing)).kinds() == [ViolationKind::NotCovering]
        }),
    ));

    let other = (longest + 1) % paths.len();
    let mut ps = paths.clone();
    ps[longest][1] = paths[other][1];
    results.push((
        "overlap two paths",
        verify_cover(&inst, &rebuild(&ps, &pairing)).has(ViolationKind::NotDisjoint),
    ));

    let mut ps = paths.clone();
    ps[longest].swap(1, 3);
    results.push((
        "break an adjacency",
        verify_cover(&inst, &rebuild(&ps, &pairing)).has(ViolationKind::NotAdjacent),
    ));

    let interior_black = paths[longest][1];
    let mut sinks = inst.sinks().to_vec();
    sinks[0] = interior_black;
    let moved = Instance::new(3, inst.sources().to_vec(), sinks).unwrap();
    results.push(("wrong endpoint", verify_cover(&moved, &cover).kinds() == [ViolationKind::BadEndpoint]));

    let mut ps = paths.clone();
    let cut = (ps[longest].len() / 2) | 1;
    let tail = ps[longest].split_off(cut);
    ps.push(tail);
    let mut longer = pairing.clone();
    longer.push(pairing.len());
    results.push(("wrong count", verify_cover(&inst, &rebuild(&ps, &longer)).has(ViolationKind::BadCount)));

    let mut ps = paths.clone();
    ps[longest].reverse();
    results.push((
        "wrong color",
        verify_cover(&inst, &rebuild(&ps, &pairing)).kinds() == [ViolationKind::BadColor],
    ));

    let failed: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        pass(format!("{} classes rejected with the matching kind, clean cover accepted", results.len() - 1))
    } else {
        fail(format!("mismatched: {}", failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("base-case totality", base_totality),
        ("oracle agreement", oracle_agreement),
        ("tightness witness", tightness),
        ("hamiltonian laceability", laceability),
        ("n=3 generalization", n3_generalization),
        ("n=4 smoke", n4_smoke),
        ("balanced split selection", split_selection),
        ("structural invariants", structure),
        ("verifier mutations", mutations),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let out = run();
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {verdict} ({}) [{:.2?}]", i + 1, out.detail, started.elapsed());
        failures += usize::from(!out.ok);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
