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

//! Scheduling engine for the business dinner problem: suppliers and
//! customers share tables over a series of dinners so that every
//! supplier meets every customer exactly once while no two suppliers share a
//! table twice.
//!
//! The crate provides closed-form lower and upper bounds ([`bounds`]),
//! constructive schedules for the cases with known optima
//! ([`constructions`]), schedule rewrites and generic upper-bound pipelines
//! ([`transforms`]), a validator and JSON codec ([`model`]) and an exact
//! branch-and-bound solver for small instances ([`solver`]).

pub mod bounds;
pub mod constructions;
pub mod model;
pub mod solver;
pub mod transforms;

pub use bounds::BoundsReport;
pub use constructions::{dispatch_optimal, ConstructionError, Dispatched, SpecialCase};
pub use model::{
    decode_schedule, encode_schedule, group_customers, six_dinner_schedule, validate_schedule, CustomerGrouping,
    Dinner, Instance, ModelError, ParseError, Schedule, TableSeating, ValidationReport, Violation, ViolationKind,
};
pub use solver::{certify_optimal, solve_exact, Certification, SolveError, SolveLimits, SolveResult, SolveStatus};
pub use transforms::{best_feasible, BestFeasible};
