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

//! Exact branch-and-bound search for small instances.
//!
//! For a fixed dinner count `D` the search covers supplier/customer pairs one
//! at a time: it picks an unmet pair and branches over every table containing
//! it (suppliers pairwise new to each other, nobody already met) and every
//! dinner able to host that table. Dinners are interchangeable, so a table
//! may open at most one new dinner, the first empty one. `D` grows from
//! `lb_best` until a schedule is found.
//!
//! Pruning compares what each person still has to meet with the seats left
//! to them, and the meetings and supplier pairs still needed with the free
//! tables. Oracle mode switches these prunes off and starts from one dinner;
//! it keeps the symmetry rules, which only drop relabelled copies.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::lb_best;
use crate::model::{Dinner, Instance, Schedule, TableSeating};
use crate::transforms::best_feasible;

/// Largest supplier and customer counts the solver accepts.
pub const MAX_PEOPLE: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    /// Largest dinner count tried.
    pub max_dinners: u32,
    /// Search nodes over all dinner counts.
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Report the best constructed schedule when the budget runs out.
    pub use_incumbent: bool,
    /// Disable the counting prunes and start from one dinner.
    pub oracle: bool,
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self { max_dinners: 64, node_budget: 10_000_000, time_budget: None, use_incumbent: true, oracle: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// `value` dinners suffice and every smaller count was refuted.
    Optimal,
    /// The budget ran out; `value` is the best constructed schedule.
    FeasibleOnly,
    /// No schedule with at most `max_dinners` dinners exists.
    InfeasibleAtBound,
    /// The budget ran out and no schedule is known.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub value: Option<u32>,
    pub witness: Option<Schedule>,
    pub nodes: u64,
    /// Every dinner count below this one has been refuted (or ruled out by
    /// the lower bounds).
    pub lower_bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the solver handles at most {MAX_PEOPLE} suppliers and {MAX_PEOPLE} customers")]
    TooLarge,
    #[error("the schedule to certify is not feasible")]
    InfeasibleSchedule,
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

struct Search {
    s: usize,
    c: usize,
    t: usize,
    sigma: usize,
    gamma: usize,
    dinners: usize,
    prune: bool,
    /// per supplier: customers not met yet
    unmet_s: Vec<u64>,
    /// per customer: suppliers not met yet
    unmet_c: Vec<u64>,
    /// per supplier: suppliers already shared a table with
    paired: Vec<u64>,
    seat_s: Vec<u64>,
    seat_c: Vec<u64>,
    tables: Vec<Vec<(u64, u64)>>,
    opened: usize,
    remaining: u64,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// Subsets of `pool` with at most `limit` elements, largest first; `ok`
/// filters each candidate element against the subset built so far.
fn subsets(pool: u64, limit: usize, ok: &dyn Fn(u64, usize) -> bool) -> Vec<u64> {
    fn go(pool: u64, limit: usize, cur: u64, ok: &dyn Fn(u64, usize) -> bool, out: &mut Vec<u64>) {
        out.push(cur);
        if limit == 0 {
            return;
        }
        for i in bits(pool) {
            if ok(cur, i) {
                let rest = pool & !mask(i + 1);
                go(rest, limit - 1, cur | (1 << i), ok, out);
            }
        }
    }
    let mut out = Vec::new();
    go(pool, limit, 0, ok, &mut out);
    out.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    out
}

/// Fewest pairs among `items` spread over `parts` groups.
fn balanced_pairs(items: usize, parts: usize) -> usize {
    if parts == 0 {
        return if items == 0 { 0 } else { usize::MAX };
    }
    let (q, r) = (items / parts, items % parts);
    r * (q + 1) * q / 2 + (parts - r) * q * q.saturating_sub(1) / 2
}

/// `sub` is the `|sub|` lowest elements of `pool`.
fn is_prefix(pool: u64, sub: u64) -> bool {
    let n = sub.count_ones() as usize;
    sub == bits(pool).take(n).fold(0, |m, i| m | (1 << i))
}

impl Search {
    fn new(inst: &Instance, dinners: usize, prune: bool, budget: u64, deadline: Option<Instant>) -> Self {
        let (s, c) = (inst.s() as usize, inst.c() as usize);
        Self {
            s,
            c,
            t: inst.t() as usize,
            sigma: inst.sigma() as usize,
            gamma: inst.gamma() as usize,
            dinners,
            prune,
            unmet_s: vec![mask(c); s],
            unmet_c: vec![mask(s); c],
            paired: vec![0; s],
            seat_s: vec![0; dinners],
            seat_c: vec![0; dinners],
            tables: vec![Vec::new(); dinners],
            opened: 0,
            remaining: (s * c) as u64,
            nodes: 0,
            budget,
            deadline,
        }
    }

    fn place(&mut self, d: usize, sup: u64, cus: u64) {
        for y in bits(sup) {
            self.unmet_s[y] &= !cus;
            self.paired[y] |= sup & !(1 << y);
        }
        for j in bits(cus) {
            self.unmet_c[j] &= !sup;
        }
        self.seat_s[d] |= sup;
        self.seat_c[d] |= cus;
        self.tables[d].push((sup, cus));
        self.remaining -= u64::from(sup.count_ones() * cus.count_ones());
        if d == self.opened {
            self.opened += 1;
        }
    }

    fn unplace(&mut self, d: usize, sup: u64, cus: u64) {
        for y in bits(sup) {
            self.unmet_s[y] |= cus;
            self.paired[y] &= !(sup & !(1 << y));
        }
        for j in bits(cus) {
            self.unmet_c[j] |= sup;
        }
        self.seat_s[d] &= !sup;
        self.seat_c[d] &= !cus;
        self.tables[d].pop();
        self.remaining += u64::from(sup.count_ones() * cus.count_ones());
        if self.tables[d].is_empty() && d + 1 == self.opened {
            self.opened -= 1;
        }
    }

    fn open_dinner(&self, d: usize) -> bool {
        self.tables[d].len() < self.t
    }

    /// Meetings a person with partners `unmet` still to meet can make: per
    /// open dinner where the person is free, at most `cap` partners among
    /// those free there. Also returns the number of such dinners.
    fn capacity(&self, unmet: u64, seated: &[u64], partner_seated: &[u64], me: u64, cap: usize) -> (usize, usize) {
        let fresh = self.dinners - self.opened;
        let mut total = fresh * cap.min(unmet.count_ones() as usize);
        let mut usable = fresh;
        for d in 0..self.opened {
            if self.open_dinner(d) && seated[d] & me == 0 {
                let here = cap.min((unmet & !partner_seated[d]).count_ones() as usize);
                total += here;
                usable += usize::from(here > 0);
            }
        }
        (total, usable)
    }

    /// The most constrained unmet pair, or `None` when the state cannot be
    /// completed.
    fn choose(&self) -> Option<(usize, usize)> {
        if !self.prune {
            let x = (0..self.s).find(|&x| self.unmet_s[x] != 0)?;
            return Some((x, self.unmet_s[x].trailing_zeros() as usize));
        }
        let free_tables: usize = (0..self.dinners).map(|d| self.t - self.tables[d].len()).sum();
        if ((free_tables * self.sigma * self.gamma) as u64) < self.remaining {
            return None;
        }
        let used: u32 = self.paired.iter().map(|m| m.count_ones()).sum();
        let free_pairs = (self.s * (self.s - 1) - used as usize) / 2;
        // supplier seats still needed, all of them at tables not placed yet
        let seats: usize = self.unmet_s.iter().map(|m| (m.count_ones() as usize).div_ceil(self.gamma)).sum();
        if seats > free_tables * self.sigma || balanced_pairs(seats, free_tables) > free_pairs {
            return None;
        }
        let tables_needed: usize = self.unmet_c.iter().map(|m| (m.count_ones() as usize).div_ceil(self.sigma)).sum();
        if tables_needed > free_tables * self.gamma {
            return None;
        }
        let mut best: Option<(usize, (usize, usize))> = None;
        for x in 0..self.s {
            let need = self.unmet_s[x].count_ones() as usize;
            if need == 0 {
                continue;
            }
            let (cap, _) = self.capacity(self.unmet_s[x], &self.seat_s, &self.seat_c, 1 << x, self.gamma);
            if cap < need {
                return None;
            }
            if best.is_none_or(|(slack, _)| cap - need < slack) {
                best = Some((cap - need, (x, self.unmet_s[x].trailing_zeros() as usize)));
            }
        }
        // a customer splitting `need` suppliers over `usable` dinners shares
        // at least the balanced split's supplier pairs; one table's pairs
        // serve at most γ customers
        let mut pairs_needed = 0;
        for k in 0..self.c {
            let need = self.unmet_c[k].count_ones() as usize;
            if need == 0 {
                continue;
            }
            let (cap, usable) = self.capacity(self.unmet_c[k], &self.seat_c, &self.seat_s, 1 << k, self.sigma);
            if cap < need {
                return None;
            }
            pairs_needed += balanced_pairs(need, usable);
            if pairs_needed > self.gamma * free_pairs {
                return None;
            }
            if best.is_none_or(|(slack, _)| cap - need < slack) {
                best = Some((cap - need, (self.unmet_c[k].trailing_zeros() as usize, k)));
            }
        }
        best.map(|(_, pair)| pair)
    }

    fn run(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Step::OutOfBudget;
        }
        if self.remaining == 0 {
            return Step::Found;
        }
        let Some((x, k)) = self.choose() else {
            return Step::Dead;
        };
        // nothing placed yet: people of each side are interchangeable, so the
        // first table only needs one member set per size
        let root = self.opened == 0;
        let last = self.dinners.min(self.opened + 1);
        for d in 0..last {
            if !self.open_dinner(d) || self.seat_s[d] & (1 << x) != 0 || self.seat_c[d] & (1 << k) != 0 {
                continue;
            }
            let others = (!self.seat_s[d]) & self.unmet_c[k] & !self.paired[x] & !(1 << x) & mask(self.s);
            let paired = &self.paired;
            let mut sup_sets = subsets(others, self.sigma - 1, &|cur, y| paired[y] & cur == 0);
            if root {
                sup_sets.retain(|&m| is_prefix(others, m));
            }
            for extra in sup_sets {
                let sup = extra | (1 << x);
                let common = bits(sup).fold((!self.seat_c[d]) & mask(self.c) & !(1 << k), |m, y| m & self.unmet_s[y]);
                let mut cus_sets = subsets(common, self.gamma - 1, &|_, _| true);
                if root {
                    cus_sets.retain(|&m| is_prefix(common, m));
                }
                for more in cus_sets {
                    let cus = more | (1 << k);
                    self.place(d, sup, cus);
                    match self.run() {
                        Step::Dead => {}
                        done => return done,
                    }
                    self.unplace(d, sup, cus);
                }
            }
        }
        Step::Dead
    }

    fn schedule(&self, inst: &Instance) -> Schedule {
        let dinners = self
            .tables
            .iter()
            .filter(|tables| !tables.is_empty())
            .map(|tables| {
                let mut seats: Vec<TableSeating> = tables
                    .iter()
                    .map(|&(sup, cus)| {
                        TableSeating::new(bits(sup).map(|y| y as u32 + 1), bits(cus).map(|j| j as u32 + 1))
                    })
                    .collect();
                seats.sort_by_key(|t| t.suppliers.first().copied());
                Dinner::new(seats)
            })
            .collect();
        Schedule::new(*inst, dinners)
    }
}

/// Outcome of searching one dinner count.
enum Attempt {
    Found(Schedule),
    Refuted,
    OutOfBudget,
}

fn attempt(
    inst: &Instance,
    dinners: u32,
    prune: bool,
    budget: u64,
    deadline: Option<Instant>,
    nodes: &mut u64,
) -> Attempt {
    let mut search = Search::new(inst, dinners as usize, prune, budget - *nodes, deadline);
    let step = search.run();
    *nodes += search.nodes.min(budget - *nodes);
    match step {
        Step::Found => Attempt::Found(search.schedule(inst)),
        Step::Dead => Attempt::Refuted,
        Step::OutOfBudget => Attempt::OutOfBudget,
    }
}

/// Smallest dinner count admitting a feasible schedule, by iterative deepening.
pub fn solve_exact(inst: &Instance, limits: &SolveLimits) -> Result<SolveResult, SolveError> {
    if inst.s() > MAX_PEOPLE || inst.c() > MAX_PEOPLE {
        return Err(SolveError::TooLarge);
    }
    let deadline = limits.time_budget.map(|d| Instant::now() + d);
    let start = if limits.oracle { 1 } else { lb_best(inst).max(1) as u32 };
    let mut nodes = 0;
    let mut lower = start;
    for dinners in start..=limits.max_dinners {
        match attempt(inst, dinners, !limits.oracle, limits.node_budget, deadline, &mut nodes) {
            Attempt::Found(witness) => {
                return Ok(SolveResult {
                    status: SolveStatus::Optimal,
                    value: Some(dinners),
                    witness: Some(witness),
                    nodes,
                    lower_bound: dinners,
                })
            }
            Attempt::Refuted => lower = dinners + 1,
            Attempt::OutOfBudget => {
                let incumbent = limits.use_incumbent.then(|| best_feasible(inst));
                return Ok(SolveResult {
                    status: if incumbent.is_some() { SolveStatus::FeasibleOnly } else { SolveStatus::BudgetExhausted },
                    value: incumbent.as_ref().map(|b| b.dinners as u32),
                    witness: incumbent.map(|b| b.schedule),
                    nodes,
                    lower_bound: lower,
                });
            }
        }
    }
    Ok(SolveResult { status: SolveStatus::InfeasibleAtBound, value: None, witness: None, nodes, lower_bound: lower })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Certification {
    /// No schedule with fewer dinners exists.
    Optimal,
    /// A schedule with `dinners` dinners exists.
    NotOptimal { dinners: u32 },
    /// The budget ran out; counts below `refuted_below` were ruled out.
    Inconclusive { refuted_below: u32 },
}

/// Whether no feasible schedule with fewer dinners than `sched` exists.
pub fn certify_optimal(sched: &Schedule, limits: &SolveLimits) -> Result<Certification, SolveError> {
    if !sched.is_feasible() {
        return Err(SolveError::InfeasibleSchedule);
    }
    let count = sched.dinner_count() as u32;
    if count == 0 {
        return Ok(Certification::Optimal);
    }
    let capped = SolveLimits { max_dinners: count - 1, use_incumbent: false, ..*limits };
    let result = solve_exact(&sched.instance, &capped)?;
    Ok(match result.status {
        SolveStatus::Optimal => Certification::NotOptimal { dinners: result.value.unwrap() },
        SolveStatus::InfeasibleAtBound => Certification::Optimal,
        _ => Certification::Inconclusive { refuted_below: result.lower_bound },
    })
}
