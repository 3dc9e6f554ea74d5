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

//! Shared workloads for the benchmarks under `benches/`.

use dinnerplan_core::Instance;

/// Every instance with `t, σ, γ ≤ 3` and `s, c ≤ max`.
pub fn instance_grid(max: u32) -> Vec<Instance> {
    let mut out = Vec::new();
    for t in 1..=3 {
        for s in 1..=max {
            for c in 1..=max {
                for sigma in 1..=3 {
                    for gamma in 1..=3 {
                        out.push(Instance::new(t, s, c, sigma, gamma).expect("positive"));
                    }
                }
            }
        }
    }
    out
}
