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

use super::{equitable_bipartite_coloring, ConstructionError};
use crate::model::{Dinner, GroupPlan, GroupTable, Instance, Schedule, TableSeating};

/// Everyone fits at one table: dinner `d` seats the `d`-th block of σ
/// suppliers with all customers.
pub fn build_trivial(inst: &Instance) -> Result<Schedule, ConstructionError> {
    if inst.c() > inst.gamma() {
        return Err(ConstructionError::precondition("trivial", "needs c ≤ γ"));
    }
    let (s, sigma) = (inst.s(), inst.sigma());
    let dinners = (0..s.div_ceil(sigma))
        .map(|d| {
            let first = d * sigma + 1;
            let last = ((d + 1) * sigma).min(s);
            Dinner::new(vec![TableSeating::new(first..=last, 1..=inst.c())])
        })
        .collect();
    Ok(Schedule::new(*inst, dinners))
}

pub(super) fn sigma1_dinners(inst: &Instance) -> u64 {
    let (s, cg) = (u64::from(inst.s()), u64::from(inst.customer_groups()));
    s.max(cg).max((s * cg).div_ceil(u64::from(inst.t())))
}

/// One supplier per table: an equitable coloring of the supplier × group
/// graph; each color class is one dinner.
pub fn build_sigma1(inst: &Instance) -> Result<Schedule, ConstructionError> {
    if inst.sigma() != 1 {
        return Err(ConstructionError::precondition("sigma1", "needs σ = 1"));
    }
    let k = sigma1_dinners(inst) as usize;
    let coloring = equitable_bipartite_coloring(inst.s() as usize, inst.customer_groups() as usize, k)?;
    let plan = GroupPlan::new(
        coloring
            .classes()
            .into_iter()
            .map(|class| class.into_iter().map(|(x, g)| GroupTable::new([x as u32 + 1], g)).collect())
            .collect(),
    );
    Ok(plan.realize(*inst))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `p` when `s = p²` with `p` prime, `c ≤ p ≤ σ` and `t = γ = 1`.
pub fn prime_root(inst: &Instance) -> Option<u32> {
    let p = inst.s().isqrt();
    (p * p == inst.s() && is_prime(p) && inst.c() <= p && p <= inst.sigma() && inst.t() == 1 && inst.gamma() == 1)
        .then_some(p)
}

/// For each customer `k`, `p` dinners seating the rows of
/// `M⁽ᵏ⁾[i][j] = j + p(kj − j − k + i) mod p²` (residue 0 read as `p²`).
pub fn build_prime(inst: &Instance) -> Result<Schedule, ConstructionError> {
    let p = prime_root(inst).ok_or_else(|| {
        ConstructionError::precondition("prime", "needs s = p² with p prime, c ≤ p ≤ σ and t = γ = 1")
    })?;
    let (p, sq) = (i64::from(p), i64::from(p * p));
    let mut dinners = Vec::new();
    for k in 1..=i64::from(inst.c()) {
        for i in 1..=p {
            let row = (1..=p).map(|j| match (j + p * (k * j - j - k + i)).rem_euclid(sq) {
                0 => sq as u32,
                r => r as u32,
            });
            dinners.push(Dinner::new(vec![TableSeating::new(row, [k as u32])]));
        }
    }
    Ok(Schedule::new(*inst, dinners))
}
