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

//! Removing the inner-index edges. The four pieces are not named by any
//! coordinate, so membership and the map onto the smaller cube come from
//! a discovered isomorphism.
//!
//!     cargo run --example inner_split -- 3

use bh_dpc::BalancedHypercube;

fn main() -> bh_dpc::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let cube = BalancedHypercube::new(n)?;
    let split = cube.split(0)?;
    split.verify().expect("split is sound");

    for view in split.views() {
        let members = view.members();
        println!("subcube {} ({} vertices)", view.index(), members.len());
        for x in members.iter().take(8) {
            println!("  {x} -> {}", split.to_child(*x));
        }
    }
    let x = cube.vertices().next().expect("nonempty");
    let [a, b] = split.cross_neighbors(x);
    println!("{x} crosses to {a} and {b} in subcube {}", split.subcube_of(a));
    Ok(())
}
