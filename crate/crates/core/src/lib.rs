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

//! Unpaired many-to-many disjoint path covers of the balanced hypercube.
//!
//! Given `2n - 2` white sources and `2n - 2` black sinks in `BH_n`, [`solve`]
//! builds vertex-disjoint paths that start at the sources, end at the sinks
//! (in any pairing) and together visit every vertex. The construction splits
//! the cube into four copies of `BH_(n-1)`, recurses, and stitches the pieces
//! back together; every result is checked by [`verify_cover`] before it is
//! handed out.
//!
//! ```
//! use bh_dpc::{solve, verify_cover, Instance, Vertex};
//!
//! let v = |c: &[u8]| Vertex::new(c).unwrap();
//! let inst = Instance::new(2, vec![v(&[0, 0]), v(&[0, 1])], vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
//! let cover = solve(&inst).unwrap();
//! assert!(verify_cover(&inst, &cover).ok);
//! ```

pub mod budget;
pub mod error;
pub mod hampath;
pub mod io;
pub mod oracle;
pub mod solver;
pub mod sweep;
pub mod topology;
pub mod verifier;

pub use budget::Budget;
pub use error::{Error, Result};
pub use hampath::{hamiltonian_path, hamiltonian_path_in_view, hamiltonian_path_with, Path};
pub use oracle::{brute_force_dpc, tightness_witness, OracleOptions, WitnessInstance};
pub use solver::{
    choose_mirror, find_anchor, select_split, solve, solve_any, solve_base, solve_with, Instance, Layout,
    LevelRecord, MirrorAssignment, PathCover, Solution, SolveOptions, SplitPlan,
};
pub use topology::{BalancedHypercube, ColorClass, Split, SubcubeView, Vertex};
pub use verifier::{verify_cover, verify_path, VerifyReport, Violation, ViolationKind};
