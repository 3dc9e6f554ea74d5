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

//! Two suppliers per table, `t = ⌈s/2⌉`, at least `3s/2` customer groups.
//!
//! The schedule has a head in which every supplier sits at every dinner
//! (pairs, plus one single supplier per dinner when `s` is odd), followed by
//! a tail of single-supplier tables covering the supplier/group meetings the
//! head left out, packed by an equitable edge coloring.

use super::{equitable_coloring_of, generate_howell, howell_exists, ConstructionError};
use crate::model::{GroupPlan, GroupTable, Instance, Schedule};

const ASSIGNMENT_BUDGET: u64 = 5_000_000;

pub fn cas_par_applies(inst: &Instance) -> bool {
    inst.sigma() == 2
        && inst.t() == inst.s().div_ceil(2)
        && 2 * u64::from(inst.customer_groups()) >= 3 * u64::from(inst.s())
}

/// `2cg − s + 1` for even `s`, `s + ⌈s(cg − s)/t⌉` for odd `s`.
pub fn cas_par_dinners(inst: &Instance) -> u64 {
    let (s, cg, t) = (u64::from(inst.s()), u64::from(inst.customer_groups()), u64::from(inst.t()));
    if s % 2 == 0 {
        2 * cg - s + 1
    } else {
        s + (s * (cg - s)).div_ceil(t)
    }
}

pub fn build_cas_par(inst: &Instance) -> Result<Schedule, ConstructionError> {
    if !cas_par_applies(inst) {
        return Err(ConstructionError::precondition("caspar", "needs σ = 2, t = ⌈s/2⌉ and ⌈c/γ⌉ ≥ 3s/2"));
    }
    let (s, cg, t) = (inst.s(), inst.customer_groups() as usize, inst.t() as usize);
    if s > 64 {
        return Err(ConstructionError::Unsupported("more than 64 suppliers".into()));
    }
    let mut plan = head(s, cg)?;

    let mut met = vec![0u64; cg];
    for table in plan.dinners.iter().flatten() {
        for &x in table.suppliers.iter().filter(|&&x| x <= s) {
            met[table.group] |= 1 << (x - 1);
        }
    }
    let edges: Vec<(usize, usize)> =
        (0..s as usize).flat_map(|x| (0..cg).map(move |g| (x, g))).filter(|&(x, g)| met[g] & (1 << x) == 0).collect();
    let k = edges.len().div_ceil(t);
    let coloring = equitable_coloring_of(s as usize, cg, &edges, k)?;
    plan.append(GroupPlan::new(
        coloring
            .classes()
            .into_iter()
            .map(|class| class.into_iter().map(|(x, g)| GroupTable::new([x as u32 + 1], g)).collect())
            .collect(),
    ));

    let sched = plan.realize(*inst);
    debug_assert_eq!(sched.dinner_count() as u64, cas_par_dinners(inst));
    Ok(sched)
}

/// Even `s`: `s − 1` perfect matchings of the suppliers. Odd `s`: `s`
/// near-perfect matchings. Taken from a Howell design when one exists,
/// otherwise from the round-robin factorization with groups assigned by search.
fn head(s: u32, cg: usize) -> Result<GroupPlan, ConstructionError> {
    let (side, symbols) = if s.is_multiple_of(2) { (s - 1, s) } else { (s, s + 1) };
    if howell_exists(side as usize, symbols as usize) {
        match generate_howell(side as usize, symbols as usize) {
            Ok(design) => return Ok(design.to_plan(side as usize)),
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
    }
    assign_groups(&round_robin(s), cg)
}

/// Rounds of a 1-factorization of `K_s` (even `s`) or a near-1-factorization
/// (odd `s`, one single supplier per round).
fn round_robin(s: u32) -> Vec<Vec<Vec<u32>>> {
    let q = if s.is_multiple_of(2) { s - 1 } else { s };
    (0..q)
        .map(|r| {
            let mut tables = vec![if s.is_multiple_of(2) { vec![r + 1, s] } else { vec![r + 1] }];
            for i in 1..=(q - 1) / 2 {
                tables.push(vec![(r + i) % q + 1, (r + q - i) % q + 1]);
            }
            tables
        })
        .collect()
}

/// Gives every table a group so that groups within a round are distinct and
/// no group meets a supplier twice.
fn assign_groups(rounds: &[Vec<Vec<u32>>], cg: usize) -> Result<GroupPlan, ConstructionError> {
    let slots: Vec<(usize, u64)> = rounds
        .iter()
        .enumerate()
        .flat_map(|(r, tables)| tables.iter().map(move |sup| (r, sup.iter().fold(0u64, |m, &x| m | (1 << (x - 1))))))
        .collect();

    struct State<'a> {
        slots: &'a [(usize, u64)],
        seen: Vec<u64>,
        round_groups: Vec<u64>,
        choice: Vec<usize>,
        nodes: u64,
    }

    fn go(st: &mut State, i: usize) -> Option<bool> {
        if i == st.slots.len() {
            return Some(true);
        }
        st.nodes += 1;
        if st.nodes > ASSIGNMENT_BUDGET {
            return None;
        }
        let (r, mask) = st.slots[i];
        for g in 0..st.seen.len() {
            if st.seen[g] & mask != 0 || st.round_groups[r] & (1 << g) != 0 {
                continue;
            }
            st.seen[g] |= mask;
            st.round_groups[r] |= 1 << g;
            st.choice[i] = g;
            if go(st, i + 1)? {
                return Some(true);
            }
            st.seen[g] &= !mask;
            st.round_groups[r] &= !(1 << g);
        }
        Some(false)
    }

    // more groups than 64 are never needed: each round uses at most s/2 + 1
    let groups = cg.min(64);
    let mut st = State {
        slots: &slots,
        seen: vec![0; groups],
        round_groups: vec![0; rounds.len()],
        choice: vec![0; slots.len()],
        nodes: 0,
    };
    match go(&mut st, 0) {
        Some(true) => {}
        Some(false) => return Err(ConstructionError::Unsupported("no group assignment for the head".into())),
        None => return Err(ConstructionError::AssignmentSearchExhausted { nodes: st.nodes }),
    }
    let mut dinners: Vec<Vec<GroupTable>> = vec![Vec::new(); rounds.len()];
    let mut idx = 0;
    for (r, tables) in rounds.iter().enumerate() {
        for sup in tables {
            dinners[r].push(GroupTable::new(sup.iter().copied(), st.choice[idx]));
            idx += 1;
        }
    }
    Ok(GroupPlan::new(dinners))
}
