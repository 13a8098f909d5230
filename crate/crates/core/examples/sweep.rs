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

//! Seeded batch runs, as the CLI's `sweep` subcommand does them.
//!
//!     cargo run --release --example sweep -- random-n4 7

use bh_dpc::sweep::{run_sweep, SweepMode, SweepOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mode: SweepMode = args.next().as_deref().unwrap_or("random-n3").parse()?;
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run_sweep(mode, &SweepOptions { seed, ..SweepOptions::default() })?;
    println!("{report}");
    Ok(())
}
