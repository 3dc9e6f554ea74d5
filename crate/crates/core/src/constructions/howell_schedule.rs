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

//! Two suppliers per table with more suppliers than customer groups.
//!
//! Rows of a Howell design become dinners and columns become customer
//! groups. An odd supplier count is padded with one fictitious supplier,
//! which is stripped afterwards.

use super::{generate_howell, ConstructionError, ExceptionalTemplate};
use crate::model::{GroupPlan, GroupTable, Instance, Schedule};

/// Where a σ=2 schedule with `max(cg, ⌈s/2⌉)` dinners on `t` tables comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HowellRoute {
    /// One customer group: pairs of suppliers, one dinner each.
    SingleGroup,
    /// The first `columns` columns of `H(side, symbols)`.
    Design { side: usize, symbols: usize, columns: usize },
    /// An embedded schedule replacing a missing design.
    Template(ExceptionalTemplate),
}

/// The route for `s` suppliers, `cg` customer groups and `t` tables, or
/// `None` when no schedule with `max(cg, ⌈s/2⌉)` dinners can be assembled
/// that way. Assumes `cg ≤ s`.
pub fn howell_route(t: u32, s: u32, cg: u32) -> Option<HowellRoute> {
    if cg == 1 {
        return Some(HowellRoute::SingleGroup);
    }
    let n = s.div_ceil(2);
    if 2 * cg < s {
        // every row of H(n, 2n) is full; keep cg columns
        return (t >= cg).then_some(HowellRoute::Design {
            side: n as usize,
            symbols: 2 * n as usize,
            columns: cg as usize,
        });
    }
    let mut symbols = 2 * n;
    if cg >= symbols {
        // cg = s even: a second pair of fictitious suppliers makes room
        symbols += 2;
    }
    if cg >= symbols {
        return None;
    }
    if let Some(key) = ExceptionalTemplate::for_design(cg, symbols) {
        if symbols != 2 * n || key == ExceptionalTemplate::S4C2 {
            return None;
        }
        let needed = key.template().tables_needed(s);
        return (t as usize >= needed).then_some(HowellRoute::Template(key));
    }
    (t >= symbols / 2).then_some(HowellRoute::Design {
        side: cg as usize,
        symbols: symbols as usize,
        columns: cg as usize,
    })
}

fn in_domain(inst: &Instance) -> bool {
    let cg = inst.customer_groups();
    inst.sigma() == 2
        && u64::from(inst.s()) * u64::from(inst.gamma()) > u64::from(inst.c())
        && inst.t() >= cg.min(inst.s().div_ceil(2))
}

/// Two groups, three or four suppliers: no design exists and three dinners
/// are needed.
fn two_by_four(inst: &Instance) -> bool {
    inst.customer_groups() == 2 && inst.s().div_ceil(2) == 2
}

/// Whether [`build_howell_schedule`] produces an optimal schedule for `inst`.
pub fn howell_applies(inst: &Instance) -> bool {
    in_domain(inst) && (two_by_four(inst) || howell_route(inst.t(), inst.s(), inst.customer_groups()).is_some())
}

/// Dinner count of [`build_howell_schedule`] where it applies.
pub fn howell_dinners(inst: &Instance) -> u64 {
    if two_by_four(inst) {
        3
    } else {
        u64::from(inst.customer_groups().max(inst.s().div_ceil(2)))
    }
}

pub(crate) fn route_plan(route: HowellRoute, s: u32) -> Result<GroupPlan, ConstructionError> {
    Ok(match route {
        HowellRoute::SingleGroup => {
            GroupPlan::new((0..s.div_ceil(2)).map(|i| vec![GroupTable::new([2 * i + 1, 2 * i + 2], 0)]).collect())
        }
        HowellRoute::Design { side, symbols, columns } => generate_howell(side, symbols)?.to_plan(columns),
        HowellRoute::Template(key) => key.template().to_plan(),
    })
}

pub fn build_howell_schedule(inst: &Instance) -> Result<Schedule, ConstructionError> {
    if !in_domain(inst) {
        return Err(ConstructionError::precondition("howell", "needs σ = 2, s·γ > c and t ≥ min(⌈c/γ⌉, ⌈s/2⌉)"));
    }
    let (s, cg) = (inst.s(), inst.customer_groups());
    let plan = match howell_route(inst.t(), s, cg) {
        Some(route) => route_plan(route, s)?,
        None if two_by_four(inst) => ExceptionalTemplate::S4C2.template().to_plan(),
        None => {
            return Err(ConstructionError::precondition(
                "howell",
                format!(
                    "no schedule with {} dinners fits on {} tables for {s} suppliers and {cg} groups",
                    cg.max(s.div_ceil(2)),
                    inst.t()
                ),
            ))
        }
    };
    Ok(plan.realize(*inst))
}
