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

//! Solve a seeded random instance and show how it was split.
//!
//!     cargo run --release --example solve -- 4 17

use bh_dpc::sweep::{random_instance, seeded};
use bh_dpc::{solve_with, verify_cover, SolveOptions};

fn main() -> bh_dpc::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(3) as usize;
    let seed = args.next().unwrap_or(1);
    let inst = random_instance(n, &mut seeded(seed));
    println!("{}", serde_json::to_string(&inst)?);

    let solution = solve_with(&inst, &SolveOptions::default())?;
    for (i, p) in solution.cover.paths().iter().enumerate() {
        println!("path {i}: {} vertices, {} -> {}", p.len(), p[0], p[p.len() - 1]);
    }
    for r in &solution.trace {
        println!(
            "depth {} BH_{} k={}: split along {}, rotation {}, empty {:?}, layout {:?}, rejected {}",
            r.depth, r.dim, r.k, r.split_dimension, r.rotation, r.input_empty, r.layout, r.rejected_plans
        );
    }
    println!("verifier: {}", verify_cover(&inst, &solution.cover));
    Ok(())
}
