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

//! A Hamiltonian path between a white and a black vertex.
//!
//!     cargo run --example hamiltonian -- "(0,0,0)" "(1,2,3)"

use bh_dpc::{hamiltonian_path, verify_path, BalancedHypercube, Vertex};

fn main() -> bh_dpc::Result<()> {
    let mut args = std::env::args().skip(1);
    let u: Vertex = args.next().as_deref().unwrap_or("(0,0,0)").parse()?;
    let v: Vertex = args.next().as_deref().unwrap_or("(1,2,3)").parse()?;
    let cube = BalancedHypercube::new(u.dim())?;

    let path = hamiltonian_path(&cube, u, v)?;
    println!("{} vertices from {u} to {v}", path.len());
    for row in path.chunks(8) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  {}", cells.join(" "));
    }
    println!("verifier: {}", verify_path(&cube, &path));

    // same-color endpoints have no such path
    if let Err(e) = hamiltonian_path(&cube, u, u.backup()) {
        println!("{u} to {}: {e}", u.backup());
    }
    Ok(())
}
