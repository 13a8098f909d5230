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

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// A wall-clock allowance shared by one top-level call and everything it
/// recurses into.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub const DEFAULT: Duration = Duration::from_secs(60);

    pub fn new(limit: Duration) -> Budget {
        Budget { start: Instant::now(), limit: Some(limit) }
    }

    pub fn from_millis(ms: u64) -> Budget {
        Budget::new(Duration::from_millis(ms))
    }

    pub fn unlimited() -> Budget {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn limit(&self) -> Option<Duration> {
        self.limit
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() > l)
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::BudgetExceeded(l)),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(Budget::DEFAULT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_expires() {
        let b = Budget::new(Duration::ZERO);
        std::thread::sleep(Duration::from_millis(2));
        assert!(matches!(b.check(), Err(Error::BudgetExceeded(_))));
        assert!(Budget::unlimited().check().is_ok());
    }
}
