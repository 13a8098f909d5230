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

//! Graphviz text for BH_2 with a solved cover drawn in bold.
//!
//!     cargo run --example dot_export > bh2.dot && neato -Tsvg bh2.dot > bh2.svg

use bh_dpc::io::topology_dot;
use bh_dpc::{solve, Instance, Vertex};

fn main() -> bh_dpc::Result<()> {
    let v = |c: &[u8]| Vertex::new(c);
    let inst = Instance::new(2, vec![v(&[0, 0])?, v(&[2, 1])?], vec![v(&[1, 0])?, v(&[3, 1])?])?;
    let cover = solve(&inst)?;
    print!("{}", topology_dot(2, Some(&cover))?);
    Ok(())
}
