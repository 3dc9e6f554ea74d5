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

use std::ops::RangeInclusive;

/// A partition of the customers `1..=c` into contiguous blocks of at most
/// `gamma` members. Group `k` (0-based) holds `k*gamma+1 ..= min((k+1)*gamma, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CustomerGrouping {
    c: u32,
    gamma: u32,
}

impl CustomerGrouping {
    pub fn len(&self) -> usize {
        self.c.div_ceil(self.gamma) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.c == 0
    }

    /// Members of group `k` (0-based).
    ///
    /// # Panics
    ///
    /// Panics if `k >= self.len()`.
    pub fn members(&self, k: usize) -> RangeInclusive<u32> {
        assert!(k < self.len(), "group index {k} out of range");
        let first = k as u32 * self.gamma + 1;
        let last = ((k as u32 + 1) * self.gamma).min(self.c);
        first..=last
    }

    pub fn groups(&self) -> impl Iterator<Item = RangeInclusive<u32>> + '_ {
        (0..self.len()).map(|k| self.members(k))
    }

    /// The group (0-based) containing customer `id`.
    pub fn group_of(&self, id: u32) -> Option<usize> {
        (1..=self.c).contains(&id).then(|| ((id - 1) / self.gamma) as usize)
    }
}

/// Splits customers `1..=c` into `⌈c/γ⌉` contiguous groups of at most `gamma`.
///
/// # Panics
///
/// Panics if `gamma` is zero.
pub fn group_customers(c: u32, gamma: u32) -> CustomerGrouping {
    assert!(gamma > 0, "gamma must be positive");
    CustomerGrouping { c, gamma }
}
