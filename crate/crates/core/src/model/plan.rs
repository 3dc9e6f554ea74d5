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

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{group_customers, Dinner, Instance, Schedule, TableSeating};

/// A table in a group-level plan: a set of suppliers sharing the table with
/// one whole customer group (0-based group index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    pub suppliers: BTreeSet<u32>,
    pub group: usize,
}

impl GroupTable {
    pub fn new(suppliers: impl IntoIterator<Item = u32>, group: usize) -> Self {
        Self { suppliers: suppliers.into_iter().collect(), group }
    }
}

/// A schedule expressed over customer groups instead of individual customers.
///
/// Supplier ids may exceed the real supplier count; such fictitious suppliers
/// are stripped by [`GroupPlan::realize`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupPlan {
    pub dinners: Vec<Vec<GroupTable>>,
}

impl GroupPlan {
    pub fn new(dinners: Vec<Vec<GroupTable>>) -> Self {
        Self { dinners }
    }

    pub fn dinner_count(&self) -> usize {
        self.dinners.len()
    }

    pub fn append(&mut self, mut other: GroupPlan) {
        self.dinners.append(&mut other.dinners);
    }

    /// Expands every group into its customers under the contiguous grouping
    /// of `instance`. Suppliers above `instance.s()` and groups beyond
    /// `⌈c/γ⌉` are dropped, then tables without suppliers and dinners
    /// without tables are removed.
    pub fn realize(&self, instance: Instance) -> Schedule {
        let grouping = group_customers(instance.c(), instance.gamma());
        let dinners = self
            .dinners
            .iter()
            .filter_map(|tables| {
                let tables: Vec<TableSeating> = tables
                    .iter()
                    .filter(|table| table.group < grouping.len())
                    .filter_map(|table| {
                        let suppliers: BTreeSet<u32> =
                            table.suppliers.iter().copied().filter(|&x| x <= instance.s()).collect();
                        (!suppliers.is_empty())
                            .then(|| TableSeating { suppliers, customers: grouping.members(table.group).collect() })
                    })
                    .collect();
                (!tables.is_empty()).then(|| Dinner::new(tables))
            })
            .collect();
        Schedule::new(instance, dinners)
    }
}

/// A dinner × customer-group grid of supplier sets, the storage format of the
/// embedded exceptional schedules. Empty cells are empty arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleTemplate {
    pub suppliers: u32,
    pub groups: u32,
    pub grid: Vec<Vec<Vec<u32>>>,
}

impl ScheduleTemplate {
    pub fn dinner_count(&self) -> usize {
        self.grid.len()
    }

    pub fn to_plan(&self) -> GroupPlan {
        GroupPlan::new(
            self.grid
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, cell)| !cell.is_empty())
                        .map(|(group, cell)| GroupTable::new(cell.iter().copied(), group))
                        .collect()
                })
                .collect(),
        )
    }

    /// Largest number of non-empty cells among the rows, after dropping
    /// suppliers above `real_suppliers`.
    pub fn tables_needed(&self, real_suppliers: u32) -> usize {
        self.grid
            .iter()
            .map(|row| row.iter().filter(|cell| cell.iter().any(|&x| x <= real_suppliers)).count())
            .max()
            .unwrap_or(0)
    }
}
