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

use serde::Serialize;

use super::{concat_suppliers, split_sigma, split_tables, TransformError};
use crate::bounds::lb_best;
use crate::constructions::{
    build_sigma1, dispatch_optimal, equitable_bipartite_coloring, howell_route, route_plan, ExceptionalTemplate,
    SpecialCase,
};
use crate::model::{GroupPlan, GroupTable, Instance, Schedule};

/// Where the two-per-table base of [`build_ub1`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ub1Base {
    /// A Howell design (or an embedded replacement) on `min(cg, ⌈s/2⌉)` tables.
    HowellImproved,
    /// A Howell design (or an embedded replacement) on `min(cg, s)` tables.
    Howell,
    /// Two groups of three or four suppliers: three dinners instead of two.
    TwoByFour,
    /// One supplier per table, the regular base when `s·γ ≤ c`.
    SigmaOne,
    /// One supplier per table because no Howell base was available; the
    /// result may exceed `ub1`.
    SigmaOneFallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ub1Schedule {
    pub schedule: Schedule,
    pub base: Ub1Base,
    /// Tables used by the base schedule before splitting.
    pub base_tables: u32,
}

/// Two-per-table base schedule on `min(cg, s)` (or fewer) tables, then split
/// down to σ suppliers and `t` tables.
pub fn build_ub1(inst: &Instance) -> Ub1Schedule {
    let (s, cg) = (inst.s(), inst.customer_groups());
    let wide = cg.min(s);
    let narrow = cg.min(s.div_ceil(2));
    let more_suppliers = u64::from(s) * u64::from(inst.gamma()) > u64::from(inst.c());

    let mut base = None;
    if more_suppliers {
        for (tables, kind) in [(narrow, Ub1Base::HowellImproved), (wide, Ub1Base::Howell)] {
            if let Some(route) = howell_route(tables, s, cg) {
                if let Ok(plan) = route_plan(route, s) {
                    base = Some((plan, tables, kind));
                    break;
                }
            }
        }
        if base.is_none() && cg == 2 && s.div_ceil(2) == 2 {
            base = Some((ExceptionalTemplate::S4C2.template().to_plan(), 2, Ub1Base::TwoByFour));
        }
    }
    let (sched, base_tables, kind) = match base {
        Some((plan, tables, kind)) => {
            let base_inst = Instance::new(tables, s, inst.c(), 2, inst.gamma()).expect("positive");
            (plan.realize(base_inst), tables, kind)
        }
        None => {
            let base_inst = Instance::new(wide, s, inst.c(), 1, inst.gamma()).expect("positive");
            let kind = if more_suppliers { Ub1Base::SigmaOneFallback } else { Ub1Base::SigmaOne };
            (build_sigma1(&base_inst).expect("σ = 1"), wide, kind)
        }
    };
    let schedule = split_tables(&split_sigma(&sched, inst.sigma()), inst.t());
    debug_assert_eq!(schedule.instance, *inst);
    Ub1Schedule { schedule, base: kind, base_tables }
}

/// Suppliers in `t′ = ⌈s/σ⌉` blocks of σ. The first `t′` groups meet a
/// whole block on the first evening and then one supplier of every other
/// block per evening; the other groups get one-supplier tables.
pub fn build_ub2(inst: &Instance) -> Result<Schedule, TransformError> {
    let sigma = inst.sigma();
    let blocks = inst.s().div_ceil(sigma);
    let cg = inst.customer_groups();
    if blocks > cg {
        return Err(TransformError::Precondition(format!("needs ⌈s/σ⌉ = {blocks} ≤ ⌈c/γ⌉ = {cg}")));
    }
    let padded = blocks * sigma;
    let supplier = |block: u32, m: u32| block * sigma + m + 1;

    let mut dinners =
        vec![(0..blocks).map(|g| GroupTable::new((0..sigma).map(|m| supplier(g, m)), g as usize)).collect::<Vec<_>>()];
    for d in 1..blocks {
        for m in 0..sigma {
            dinners.push((0..blocks).map(|g| GroupTable::new([supplier((g + d) % blocks, m)], g as usize)).collect());
        }
    }

    let rest = cg - blocks;
    if rest > 0 {
        let (a, b) = (u64::from(padded), u64::from(rest));
        let k = a.max(b).max((a * b).div_ceil(u64::from(blocks)));
        let coloring = equitable_bipartite_coloring(padded as usize, rest as usize, k as usize)
            .expect("k covers the maximum degree");
        dinners.extend(coloring.classes().into_iter().map(|class| {
            class.into_iter().map(|(x, g)| GroupTable::new([x as u32 + 1], blocks as usize + g)).collect()
        }));
    }

    let base = inst.with_tables(blocks).expect("positive");
    Ok(split_tables(&GroupPlan::new(dinners).realize(base), inst.t()))
}

/// Suppliers cut into blocks of `σ·cg` (plus a remainder block), one
/// [`build_ub2`] schedule per block, run one after the other.
pub fn build_eucli(inst: &Instance) -> Schedule {
    let chunk = inst.sigma() * inst.customer_groups();
    let mut parts = Vec::new();
    let mut left = inst.s();
    while left > 0 {
        let size = left.min(chunk);
        parts.push(build_ub2(&inst.with_suppliers(size).expect("positive")).expect("block fits"));
        left -= size;
    }
    parts.into_iter().reduce(|acc, part| concat_suppliers(&acc, &part).expect("same shared parameters")).expect("s ≥ 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "case")]
pub enum Source {
    Optimal(SpecialCase),
    Ub2,
    Ub1,
    Eucli,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Optimal(case) => case.name(),
            Source::Ub2 => "ub2",
            Source::Ub1 => "ub1",
            Source::Eucli => "eucli",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestFeasible {
    pub schedule: Schedule,
    pub dinners: usize,
    pub source: Source,
    /// A special case applied or the count meets the best lower bound.
    pub proven_optimal: bool,
}

/// The schedule with fewest dinners among the special-case construction
/// and the three pipelines; ties go to the earlier one in that order.
pub fn best_feasible(inst: &Instance) -> BestFeasible {
    let mut candidates: Vec<(Schedule, Source, bool)> = Vec::new();
    if let Some(d) = dispatch_optimal(inst) {
        candidates.push((d.schedule, Source::Optimal(d.case), d.proven_optimal));
    }
    if let Ok(sched) = build_ub2(inst) {
        candidates.push((sched, Source::Ub2, false));
    }
    candidates.push((build_ub1(inst).schedule, Source::Ub1, false));
    candidates.push((build_eucli(inst), Source::Eucli, false));

    let (schedule, source, proven) = candidates
        .into_iter()
        .enumerate()
        .min_by_key(|(i, (sched, _, _))| (sched.dinner_count(), *i))
        .map(|(_, c)| c)
        .expect("eucli always builds");
    let dinners = schedule.dinner_count();
    BestFeasible { proven_optimal: proven || dinners as u64 == lb_best(inst), schedule, dinners, source }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{ub1, ub2, ub_eucli};
    use crate::validate_schedule;

    fn inst(t: u32, s: u32, c: u32, sigma: u32, gamma: u32) -> Instance {
        Instance::new(t, s, c, sigma, gamma).unwrap()
    }

    fn feasible(sched: &Schedule) {
        let report = validate_schedule(sched);
        assert!(report.feasible, "{}: {:?}", sched.instance, report.violations);
    }

    #[test]
    fn ub1_examples() {
        for (i, most) in [(inst(3, 6, 3, 2, 1), 3), (inst(2, 5, 6, 2, 3), 3), (inst(3, 6, 9, 2, 1), 18)] {
            let built = build_ub1(&i);
            feasible(&built.schedule);
            assert!(built.schedule.dinner_count() <= most, "{i}");
            assert!(built.schedule.dinner_count() as u64 <= ub1(&i));
        }
        assert_eq!(build_ub1(&inst(2, 4, 2, 2, 1)).base, Ub1Base::TwoByFour);
    }

    #[test]
    fn ub2_examples() {
        for (i, most) in [(inst(3, 6, 3, 2, 1), 11), (inst(3, 6, 9, 2, 1), 17)] {
            let sched = build_ub2(&i).unwrap();
            feasible(&sched);
            assert!(sched.dinner_count() <= most);
        }
        // t′ = 2 blocks: 1 + 2 + 2·max(2, 2) = 7 dinners on two tables,
        // twice that on one
        let sched = build_ub2(&inst(2, 4, 4, 2, 1)).unwrap();
        feasible(&sched);
        assert_eq!(sched.dinner_count(), 7);
        assert_eq!(ub2(&inst(2, 4, 4, 2, 1)), Some(7));
        let sched = build_ub2(&inst(1, 4, 4, 2, 1)).unwrap();
        feasible(&sched);
        assert_eq!(sched.dinner_count(), 14);
        assert_eq!(ub2(&inst(1, 4, 4, 2, 1)), Some(14));
        assert!(build_ub2(&inst(1, 12, 2, 2, 1)).is_err());
    }

    #[test]
    fn ub2_single_supplier_after_first_evening() {
        let sched = build_ub2(&inst(3, 6, 9, 2, 1)).unwrap();
        assert!(sched.dinners[1..].iter().flat_map(|d| &d.tables).all(|t| t.suppliers.len() == 1));
    }

    #[test]
    fn eucli_examples() {
        for (i, most) in [(inst(1, 12, 2, 2, 1), 42), (inst(1, 14, 2, 2, 1), 49)] {
            let sched = build_eucli(&i);
            feasible(&sched);
            assert!(sched.dinner_count() <= most);
            assert_eq!(ub_eucli(&i), most as u64);
        }
        // one block: same as ub2
        let i = inst(3, 6, 9, 2, 1);
        assert_eq!(build_eucli(&i), build_ub2(&i).unwrap());
    }

    #[test]
    fn best_feasible_examples() {
        let best = best_feasible(&inst(2, 5, 6, 2, 3));
        assert_eq!(best.dinners, 3);
        assert!(best.proven_optimal);
        let best = best_feasible(&inst(1, 9, 3, 3, 1));
        assert_eq!(best.dinners, 9);
        assert_eq!(best.source, Source::Optimal(SpecialCase::Prime));
    }
}
