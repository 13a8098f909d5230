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

//! Neighbors, colors, backups and edge dimensions of a small cube.
//!
//!     cargo run --example topology_tour -- 3

use bh_dpc::BalancedHypercube;

fn main() -> bh_dpc::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let cube = BalancedHypercube::new(n)?;
    println!("BH_{n}: {} vertices, {} edges", cube.vertex_count(), cube.edges().len());

    for x in cube.vertices().take(4) {
        println!("{x} {}  backup {}", x.color(), x.backup());
        for y in cube.neighbors(x)? {
            println!("    {y}  dimension {}", cube.edge_dimension(x, y)?);
        }
    }

    let mut per_dim = vec![0; n];
    for e in cube.edges() {
        per_dim[e.dimension] += 1;
    }
    println!("edges per dimension: {per_dim:?}");
    Ok(())
}
