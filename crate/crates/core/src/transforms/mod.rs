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

//! Schedule rewrites that trade one parameter for another, and the generic
//! upper-bound pipelines built from them.

mod pipelines;

use thiserror::Error;

use crate::model::{group_customers, CustomerGrouping, Dinner, Instance, Schedule, TableSeating};

pub use pipelines::{best_feasible, build_eucli, build_ub1, build_ub2, BestFeasible, Source, Ub1Base, Ub1Schedule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{0}")]
    Precondition(String),
    #[error("schedules disagree on {0}")]
    Mismatch(&'static str),
}

/// Splits every dinner into `⌈(tables used)/t1⌉` dinners of at most `t1`
/// tables each, keeping table order.
pub fn split_tables(sched: &Schedule, t1: u32) -> Schedule {
    let instance = sched.instance.with_tables(t1).expect("t1 ≥ 1");
    let dinners = sched
        .dinners
        .iter()
        .flat_map(|dinner| dinner.tables.chunks(t1 as usize).map(|chunk| Dinner::new(chunk.to_vec())))
        .collect();
    Schedule::new(instance, dinners)
}

/// Splits every dinner into `⌈σ2/σ1⌉` copies, σ2 being the schedule's own
/// supplier cap; copy `g` keeps the `g`-th run of at most `σ1` suppliers of
/// every table (in id order). Tables and dinners left empty are dropped.
pub fn split_sigma(sched: &Schedule, sigma1: u32) -> Schedule {
    let instance = sched.instance.with_sigma(sigma1).expect("σ1 ≥ 1");
    let copies = sched.instance.sigma().div_ceil(sigma1) as usize;
    let mut dinners = Vec::new();
    for dinner in &sched.dinners {
        for g in 0..copies {
            let tables: Vec<TableSeating> = dinner
                .tables
                .iter()
                .filter_map(|table| {
                    let chunk: Vec<u32> =
                        table.suppliers.iter().copied().skip(g * sigma1 as usize).take(sigma1 as usize).collect();
                    (!chunk.is_empty()).then(|| TableSeating::new(chunk, table.customers.iter().copied()))
                })
                .collect();
            if !tables.is_empty() {
                dinners.push(Dinner::new(tables));
            }
        }
    }
    Schedule::new(instance, dinners)
}

/// Customers of `original` bundled into super-customers of `γ1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGrouping {
    pub original: Instance,
    /// `(t, s, ⌈c/γ1⌉, σ, ⌊γ2/γ1⌋)`.
    pub derived: Instance,
    pub grouping: CustomerGrouping,
}

impl GammaGrouping {
    /// Replaces every super-customer of a schedule for `derived` by its members.
    pub fn expand(&self, sched: &Schedule) -> Schedule {
        let dinners = sched
            .dinners
            .iter()
            .map(|dinner| {
                Dinner::new(
                    dinner
                        .tables
                        .iter()
                        .map(|table| {
                            let customers = table.customers.iter().flat_map(|&k| self.grouping.members(k as usize - 1));
                            TableSeating::new(table.suppliers.iter().copied(), customers)
                        })
                        .collect(),
                )
            })
            .collect();
        Schedule::new(self.original, dinners)
    }
}

/// Groups customers by `γ1 ≤ γ`. A table of the derived instance takes
/// `⌊γ/γ1⌋` super-customers so that expanding it never exceeds `γ`.
pub fn group_gamma(inst: &Instance, gamma1: u32) -> Result<GammaGrouping, TransformError> {
    if gamma1 == 0 || gamma1 > inst.gamma() {
        return Err(TransformError::Precondition(format!(
            "group size {gamma1} must be between 1 and γ = {}",
            inst.gamma()
        )));
    }
    let grouping = group_customers(inst.c(), gamma1);
    let derived = Instance::new(inst.t(), inst.s(), grouping.len() as u32, inst.sigma(), inst.gamma() / gamma1)
        .expect("all fields positive");
    Ok(GammaGrouping { original: *inst, derived, grouping })
}

/// Runs two schedules with disjoint supplier sets one after the other; the
/// suppliers of `second` are renumbered after those of `first`.
pub fn concat_suppliers(first: &Schedule, second: &Schedule) -> Result<Schedule, TransformError> {
    let (a, b) = (first.instance, second.instance);
    for (name, x, y) in
        [("t", a.t(), b.t()), ("c", a.c(), b.c()), ("sigma", a.sigma(), b.sigma()), ("gamma", a.gamma(), b.gamma())]
    {
        if x != y {
            return Err(TransformError::Mismatch(name));
        }
    }
    let shift = a.s();
    let instance = a.with_suppliers(a.s() + b.s()).expect("positive");
    let shifted = second.dinners.iter().map(|dinner| {
        Dinner::new(
            dinner
                .tables
                .iter()
                .map(|t| TableSeating::new(t.suppliers.iter().map(|x| x + shift), t.customers.iter().copied()))
                .collect(),
        )
    });
    let dinners = first.dinners.iter().cloned().chain(shifted).collect();
    Ok(Schedule::new(instance, dinners))
}
