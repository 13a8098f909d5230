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

//! Cross-check the constructive solver against exhaustive search on BH_2.
//!
//!     cargo run --example oracle_check

use bh_dpc::sweep::base_instances;
use bh_dpc::{brute_force_dpc, solve, OracleOptions};

fn main() -> bh_dpc::Result<()> {
    let opts = OracleOptions::default();
    let mut agree = 0;
    let all = base_instances();
    for inst in &all {
        let built = solve(inst).is_ok();
        let found = brute_force_dpc(inst, &opts)?.is_some();
        if built == found {
            agree += 1;
        } else {
            println!("disagree on {}", serde_json::to_string(inst)?);
        }
    }
    println!("{agree}/{} instances agree", all.len());

    let first = &all[0];
    if let Some(cover) = brute_force_dpc(first, &opts)? {
        println!("oracle cover of {}:", serde_json::to_string(first)?);
        for p in cover.paths() {
            println!("  {p}");
        }
    }
    Ok(())
}
