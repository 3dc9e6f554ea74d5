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

use proptest::prelude::*;
use rayon::prelude::*;

use dinnerplan_core::bounds::{lb_best, ub1, ub1_improved, ub1_witnessed, ub2, ub_eucli};
use dinnerplan_core::constructions::{build_prime, generate_howell, howell_exists};
use dinnerplan_core::transforms::{
    build_eucli, build_ub1, build_ub2, concat_suppliers, group_gamma, split_sigma, split_tables, Ub1Base,
};
use dinnerplan_core::{
    best_feasible, decode_schedule, encode_schedule, solve_exact, validate_schedule, Instance, Schedule, SolveLimits,
    SolveStatus,
};

fn inst(t: u32, s: u32, c: u32, sigma: u32, gamma: u32) -> Instance {
    Instance::new(t, s, c, sigma, gamma).unwrap()
}

fn instances(max_sc: u32) -> impl Strategy<Value = Instance> {
    (1u32..=4, 1..=max_sc, 1..=max_sc, 1u32..=4, 1u32..=4).prop_map(|(t, s, c, sg, g)| inst(t, s, c, sg, g))
}

fn feasible(s: &Schedule) -> bool {
    validate_schedule(s).feasible
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn split_tables_keeps_feasibility(i in instances(8), t1 in 1u32..=4) {
        let sched = best_feasible(&i).schedule;
        let split = split_tables(&sched, t1);
        prop_assert!(feasible(&split));
        prop_assert!(split.max_tables_per_dinner() <= t1 as usize);
        prop_assert!(split.dinner_count() <= sched.dinner_count() * (i.t().div_ceil(t1)) as usize);
    }

    #[test]
    fn split_sigma_keeps_feasibility(i in instances(8), sigma1 in 1u32..=4) {
        let sched = build_ub1(&i).schedule;
        let split = split_sigma(&sched, sigma1);
        prop_assert!(feasible(&split));
        prop_assert!(split.max_suppliers_per_table() <= sigma1 as usize);
        prop_assert!(split.dinner_count() <= sched.dinner_count() * (i.sigma().div_ceil(sigma1)) as usize);
    }

    #[test]
    fn grouped_schedules_expand_feasibly(i in instances(8), g in 1u32..=4) {
        let gamma1 = 1 + (g - 1) % i.gamma();
        let grouping = group_gamma(&i, gamma1).unwrap();
        let expanded = grouping.expand(&best_feasible(&grouping.derived).schedule);
        prop_assert_eq!(expanded.instance, i);
        prop_assert!(feasible(&expanded));
    }

    #[test]
    fn concatenation_keeps_feasibility(i in instances(6), extra in 1u32..=6) {
        let second = build_eucli(&i.with_suppliers(extra).unwrap());
        let joined = concat_suppliers(&build_eucli(&i), &second).unwrap();
        prop_assert_eq!(joined.instance.s(), i.s() + extra);
        prop_assert!(feasible(&joined));
    }

    #[test]
    fn codec_round_trip(i in instances(8)) {
        let sched = build_ub1(&i).schedule;
        prop_assert_eq!(decode_schedule(&encode_schedule(&sched)).unwrap(), sched);
    }

    #[test]
    fn best_feasible_sits_between_bounds(i in instances(8)) {
        let best = best_feasible(&i);
        prop_assert!(feasible(&best.schedule));
        prop_assert!(best.dinners as u64 >= lb_best(&i));
        prop_assert!(best.dinners as u64 <= ub_eucli(&i));
    }
}

/// Symbols once per row and column, every pair at most once.
fn howell_axioms_hold(m: usize, symbols: usize) -> bool {
    let h = generate_howell(m, symbols).unwrap();
    let mut pairs = std::collections::HashSet::new();
    (0..m).all(|r| {
        let row: Vec<u32> = (0..m).filter_map(|c| h.cell(r, c)).flat_map(|(a, b)| [a, b]).collect();
        let col: Vec<u32> = (0..m).filter_map(|c| h.cell(c, r)).flat_map(|(a, b)| [a, b]).collect();
        let full = |mut v: Vec<u32>| {
            v.sort_unstable();
            v == (1..=symbols as u32).collect::<Vec<_>>()
        };
        full(row) && full(col)
    }) && (0..m * m).filter_map(|k| h.cell(k / m, k % m)).all(|(a, b)| pairs.insert((a.min(b), a.max(b))))
}

#[test]
fn howell_designs_satisfy_axioms() {
    for symbols in (2..=12).step_by(2) {
        for m in symbols / 2..symbols {
            if howell_exists(m, symbols) {
                assert!(howell_axioms_hold(m, symbols), "H({m},{symbols})");
            }
        }
    }
}

#[test]
fn prime_blocks_partition_suppliers() {
    for p in [2u32, 3, 5, 7] {
        for c in 1..=p {
            let sched = build_prime(&inst(1, p * p, c, p, 1)).unwrap();
            for k in 1..=c {
                let mut seen: Vec<u32> = sched
                    .tables()
                    .filter(|t| t.customers.contains(&k))
                    .inspect(|t| assert_eq!(t.suppliers.len(), p as usize))
                    .flat_map(|t| t.suppliers.iter().copied())
                    .collect();
                seen.sort_unstable();
                assert_eq!(seen, (1..=p * p).collect::<Vec<_>>(), "p={p} customer {k}");
            }
        }
    }
}

fn pipelines_within_bounds(max_sc: u32, max_t: u32) {
    let mut cells = Vec::new();
    for t in 1..=max_t {
        for s in 1..=max_sc {
            for c in 1..=max_sc {
                for sigma in 1..=4 {
                    for gamma in 1..=4 {
                        cells.push(inst(t, s, c, sigma, gamma));
                    }
                }
            }
        }
    }
    cells.par_iter().for_each(|i| {
        let built = build_ub1(i);
        assert!(feasible(&built.schedule), "{i} ub1");
        let count = built.schedule.dinner_count() as u64;
        if built.base == Ub1Base::HowellImproved {
            assert!(count <= ub1_improved(i).unwrap_or(ub1(i)), "{i} ub1_improved");
        }
        if ub1_witnessed(i) && built.base != Ub1Base::SigmaOneFallback {
            assert!(count <= ub1(i), "{i} ub1: {count} > {}", ub1(i));
        }
        if let Some(bound) = ub2(i) {
            let sched = build_ub2(i).unwrap();
            assert!(feasible(&sched), "{i} ub2");
            assert!(sched.dinner_count() as u64 <= bound, "{i} ub2");
        }
        let sched = build_eucli(i);
        assert!(feasible(&sched), "{i} eucli");
        assert!(sched.dinner_count() as u64 <= ub_eucli(i), "{i} eucli");
    });
}

#[test]
fn pipelines_within_bounds_sweep() {
    pipelines_within_bounds(12, 6);
}

#[test]
fn oracle_search_agrees_with_pruned_search() {
    let mut cells = Vec::new();
    for t in 1..=3 {
        for s in 1..=4 {
            for c in 1..=4 {
                for sigma in 1..=3 {
                    for gamma in 1..=3 {
                        cells.push(inst(t, s, c, sigma, gamma));
                    }
                }
            }
        }
    }
    cells.par_iter().for_each(|i| {
        let pruned = solve_exact(i, &SolveLimits::default()).unwrap();
        let oracle = solve_exact(i, &SolveLimits { oracle: true, ..SolveLimits::default() }).unwrap();
        assert_eq!(pruned.status, SolveStatus::Optimal, "{i}");
        assert_eq!(oracle.status, SolveStatus::Optimal, "{i}");
        assert_eq!(pruned.value, oracle.value, "{i}");
    });
}
