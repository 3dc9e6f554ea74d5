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

//! Domain types shared by every other module: problem instances, seatings,
//! dinners and schedules, plus customer grouping, the group-level plan
//! representation used by the constructions, validation and the JSON codec.

mod codec;
mod grouping;
mod plan;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use codec::{decode_schedule, encode_schedule, encode_schedule_pretty, ParseError};
pub use grouping::{group_customers, CustomerGrouping};
pub use plan::{GroupPlan, GroupTable, ScheduleTemplate};
pub use validate::{validate_schedule, Person, ValidationReport, Violation, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("parameter `{name}` must be a positive integer (got {value})")]
    NonPositive { name: &'static str, value: u64 },
}

/// The five parameters of a dinner scheduling problem.
///
/// `t` tables, `s` suppliers, `c` customers, at most `sigma` suppliers and at
/// most `gamma` customers per table. Every field is at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Instance {
    t: u32,
    s: u32,
    c: u32,
    sigma: u32,
    gamma: u32,
}

impl Instance {
    pub fn new(t: u32, s: u32, c: u32, sigma: u32, gamma: u32) -> Result<Self, ModelError> {
        for (name, value) in [("t", t), ("s", s), ("c", c), ("sigma", sigma), ("gamma", gamma)] {
            if value == 0 {
                return Err(ModelError::NonPositive { name, value: 0 });
            }
        }
        Ok(Self { t, s, c, sigma, gamma })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Number of customer groups, `⌈c/γ⌉`.
    pub fn customer_groups(&self) -> u32 {
        self.c.div_ceil(self.gamma)
    }

    pub fn with_tables(self, t: u32) -> Result<Self, ModelError> {
        Self::new(t, self.s, self.c, self.sigma, self.gamma)
    }

    pub fn with_suppliers(self, s: u32) -> Result<Self, ModelError> {
        Self::new(self.t, s, self.c, self.sigma, self.gamma)
    }

    pub fn with_customers(self, c: u32) -> Result<Self, ModelError> {
        Self::new(self.t, self.s, c, self.sigma, self.gamma)
    }

    pub fn with_sigma(self, sigma: u32) -> Result<Self, ModelError> {
        Self::new(self.t, self.s, self.c, sigma, self.gamma)
    }

    pub fn with_gamma(self, gamma: u32) -> Result<Self, ModelError> {
        Self::new(self.t, self.s, self.c, self.sigma, gamma)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={}, s={}, c={}, sigma={}, gamma={})", self.t, self.s, self.c, self.sigma, self.gamma)
    }
}

#[derive(Deserialize)]
struct RawInstance {
    t: u32,
    s: u32,
    c: u32,
    sigma: u32,
    gamma: u32,
}

impl TryFrom<RawInstance> for Instance {
    type Error = ModelError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        Instance::new(raw.t, raw.s, raw.c, raw.sigma, raw.gamma)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawInstance::deserialize(deserializer)?;
        Instance::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// The suppliers and customers seated at one table during one dinner.
/// Ids are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct TableSeating {
    pub suppliers: BTreeSet<u32>,
    pub customers: BTreeSet<u32>,
}

impl TableSeating {
    pub fn new(suppliers: impl IntoIterator<Item = u32>, customers: impl IntoIterator<Item = u32>) -> Self {
        Self { suppliers: suppliers.into_iter().collect(), customers: customers.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.suppliers.is_empty() && self.customers.is_empty()
    }
}

/// One evening: an ordered list of occupied tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Dinner {
    pub tables: Vec<TableSeating>,
}

impl Dinner {
    pub fn new(tables: Vec<TableSeating>) -> Self {
        Self { tables }
    }
}

/// A seating plan for every evening of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Schedule {
    pub instance: Instance,
    pub dinners: Vec<Dinner>,
}

impl Schedule {
    pub fn new(instance: Instance, dinners: Vec<Dinner>) -> Self {
        Self { instance, dinners }
    }

    pub fn dinner_count(&self) -> usize {
        self.dinners.len()
    }

    /// Largest number of suppliers seated at any single table.
    pub fn max_suppliers_per_table(&self) -> usize {
        self.tables().map(|t| t.suppliers.len()).max().unwrap_or(0)
    }

    /// Largest number of tables used in any single dinner.
    pub fn max_tables_per_dinner(&self) -> usize {
        self.dinners.iter().map(|d| d.tables.len()).max().unwrap_or(0)
    }

    pub fn tables(&self) -> impl Iterator<Item = &TableSeating> {
        self.dinners.iter().flat_map(|d| d.tables.iter())
    }

    pub fn is_feasible(&self) -> bool {
        validate_schedule(self).feasible
    }
}

/// The six-dinner example schedule for `(t, s, c, σ, γ) = (2, 5, 6, 2, 3)`.
pub fn six_dinner_schedule() -> Schedule {
    decode_schedule(include_str!("../../fixtures/schedules/six_dinner.json")).expect("embedded fixture is well formed")
}
