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

//! The instance showing that 2n - 2 paths is the most one can ask for:
//! two twin white vertices whose neighbors are almost all sinks.
//!
//!     cargo run --release --example tightness

use std::time::Instant;

use bh_dpc::{brute_force_dpc, tightness_witness, OracleOptions};

fn main() -> bh_dpc::Result<()> {
    let w = tightness_witness(2)?;
    println!("u = {}, twin = {}", w.u, w.u_backup);
    println!("W = T = {:?}", w.w);
    println!("S = {:?}", w.sources);
    w.check().expect("well formed");

    let started = Instant::now();
    match brute_force_dpc(&w.instance(), &OracleOptions::default())? {
        None => println!("no {}-DPC exists (search exhausted in {:.2?})", w.k(), started.elapsed()),
        Some(c) => println!("unexpected cover: {:?}", c.paths()),
    }
    Ok(())
}
