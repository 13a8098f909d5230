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

//! Break a valid cover in each way the verifier knows about.
//!
//!     cargo run --example verifier_mutations

use bh_dpc::sweep::{random_instance, seeded};
use bh_dpc::{solve, verify_cover, Instance, Path, PathCover, Vertex};

fn rebuild(paths: &[Vec<Vertex>], pairing: &[usize]) -> PathCover {
    PathCover::new(paths.iter().cloned().map(Path::from).collect(), pairing.to_vec())
}

fn main() -> bh_dpc::Result<()> {
    let inst = random_instance(3, &mut seeded(3));
    let cover = solve(&inst)?;
    let paths: Vec<Vec<Vertex>> = cover.paths().iter().map(|p| p.to_vec()).collect();
    let pairing = cover.pairing().to_vec();
    println!("clean        -> {}", verify_cover(&inst, &cover));

    let mut p = paths.clone();
    p[0].pop();
    println!("short path   -> {}", verify_cover(&inst, &rebuild(&p, &pairing)));

    let mut p = paths.clone();
    p[0].swap(1, 3);
    println!("swap         -> {}", verify_cover(&inst, &rebuild(&p, &pairing)));

    let mut p = paths.clone();
    p[1][1] = paths[0][1];
    println!("overlap      -> {}", verify_cover(&inst, &rebuild(&p, &pairing)));

    let mut p = paths.clone();
    p[0].reverse();
    println!("reversed     -> {}", verify_cover(&inst, &rebuild(&p, &pairing)));

    println!("two paths    -> {}", verify_cover(&inst, &rebuild(&paths[..2], &pairing[..2])));

    let mut sinks = inst.sinks().to_vec();
    sinks[0] = paths[0][1];
    let moved = Instance::new(3, inst.sources().to_vec(), sinks)?;
    println!("moved sink   -> {}", verify_cover(&moved, &cover));
    Ok(())
}
