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

//! Reproduction of the lower-bound dominance table and the two upper-bound
//! comparisons.

use dinnerplan_core::bounds::{lb1, lb2, lb3, lb4, lb5, ub1, ub2};
use dinnerplan_core::Instance;

use crate::{Failure, Outcome, EXIT_SEMANTIC};

/// (t, s, c, σ, γ)
type Params = (u32, u32, u32, u32, u32);

/// Instance, expected lb1..lb5, index of the dominating bound.
const LOWER: [(Params, [u64; 5], usize); 5] = [
    ((5, 8, 8, 1, 2), [8, 4, 7, 3, 0], 0),
    ((6, 8, 8, 2, 1), [4, 8, 6, 4, 6], 1),
    ((1, 8, 8, 1, 1), [8, 8, 64, 23, 0], 2),
    ((1, 11, 8, 6, 4), [2, 2, 4, 7, 4], 3),
    ((1, 8, 11, 2, 1), [4, 11, 44, 32, 60], 4),
];

/// Instance, expected ub1 and ub2.
const UPPER: [(Params, u64, u64); 2] = [((3, 6, 3, 2, 1), 3, 11), ((3, 6, 9, 2, 1), 18, 17)];

fn inst((t, s, c, sigma, gamma): Params) -> Instance {
    Instance::new(t, s, c, sigma, gamma).expect("table instances are valid")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run() -> Outcome {
    let mut failures = 0;
    out!("lower bounds");
    for (params, expected, star) in LOWER {
        let i = inst(params);
        let got = [lb1(&i), lb2(&i), lb3(&i), lb4(&i).unwrap_or(0), lb5(&i)];
        for (b, (&g, &e)) in got.iter().zip(&expected).enumerate() {
            let ok = g == e;
            failures += usize::from(!ok);
            let mark = if b == star { "*" } else { " " };
            out!("  {i}  lb{}{mark} = {g:<3} expected {e:<3} {}", b + 1, verdict(ok));
        }
        let dominates = got.iter().enumerate().all(|(b, &g)| b == star || g < got[star]);
        failures += usize::from(!dominates);
        out!("  {i}  lb{} strictly dominates {}", star + 1, verdict(dominates));
    }
    out!("upper bounds");
    for (params, e1, e2) in UPPER {
        let i = inst(params);
        let (g1, g2) = (ub1(&i), ub2(&i));
        failures += usize::from(g1 != e1) + usize::from(g2 != Some(e2));
        out!("  {i}  ub1 = {g1:<3} expected {e1:<3} {}", verdict(g1 == e1));
        out!(
            "  {i}  ub2 = {:<3} expected {e2:<3} {}",
            g2.map_or("n/a".into(), |v| v.to_string()),
            verdict(g2 == Some(e2))
        );
    }
    if failures == 0 {
        out!("all cells match");
        Ok(())
    } else {
        Err(Failure::new(EXIT_SEMANTIC, format!("{failures} cells differ")))
    }
}
