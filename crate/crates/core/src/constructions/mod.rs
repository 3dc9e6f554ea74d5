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

//! Schedule builders for the instance families with a known optimum, and the
//! combinatorial tools they use.

mod cas_par;
pub mod coloring;
pub mod howell;
mod howell_schedule;
mod special;
pub mod templates;

use serde::Serialize;
use thiserror::Error;

use crate::model::Instance;
use crate::Schedule;

pub use cas_par::{build_cas_par, cas_par_applies, cas_par_dinners};
pub use coloring::{equitable_bipartite_coloring, equitable_coloring_of, ColoringError, EdgeColoring};
pub use howell::{
    generate_howell, generate_howell_with_budget, howell_exists, search_howell, HowellDesign, HowellSearch,
    DEFAULT_HOWELL_BUDGET,
};
pub(crate) use howell_schedule::route_plan;
pub use howell_schedule::{build_howell_schedule, howell_applies, howell_dinners, howell_route, HowellRoute};
pub use special::{build_prime, build_sigma1, build_trivial, prime_root};
pub use templates::{exceptional_schedule, ExceptionalTemplate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{construction} does not apply: {reason}")]
    Precondition { construction: &'static str, reason: String },
    #[error("no Howell design H({side},{symbols}) exists")]
    NoHowellDesign { side: usize, symbols: usize },
    #[error("search for H({side},{symbols}) stopped after {nodes} nodes")]
    HowellSearchExhausted { side: usize, symbols: usize, nodes: u64 },
    #[error("group assignment search stopped after {nodes} nodes")]
    AssignmentSearchExhausted { nodes: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl ConstructionError {
    /// The failure came from a search running out of budget rather than
    /// from the instance itself.
    pub fn is_budget(&self) -> bool {
        matches!(self, Self::HowellSearchExhausted { .. } | Self::AssignmentSearchExhausted { .. })
    }

    pub(crate) fn precondition(construction: &'static str, reason: impl Into<String>) -> Self {
        Self::Precondition { construction, reason: reason.into() }
    }
}

/// The instance families solved in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// All customers fit at one table.
    Trivial,
    /// One supplier per table.
    SigmaOne,
    /// `s = p²`, single tables and customers.
    Prime,
    /// Two suppliers per table, `t = ⌈s/2⌉` and many customer groups.
    CasPar,
    /// Two suppliers per table and more suppliers than groups.
    Howell,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            Self::Trivial => "trivial",
            Self::SigmaOne => "sigma1",
            Self::Prime => "prime",
            Self::CasPar => "caspar",
            Self::Howell => "howell",
        }
    }
}

/// The special case covering `inst` and its optimal dinner count, checked in
/// the order trivial, σ=1, prime, cas_par, Howell.
pub fn special_case(inst: &Instance) -> Option<(SpecialCase, u64)> {
    if inst.c() <= inst.gamma() {
        return Some((SpecialCase::Trivial, u64::from(inst.s().div_ceil(inst.sigma()))));
    }
    if inst.sigma() == 1 {
        return Some((SpecialCase::SigmaOne, special::sigma1_dinners(inst)));
    }
    if let Some(p) = prime_root(inst) {
        return Some((SpecialCase::Prime, u64::from(p) * u64::from(inst.c())));
    }
    if cas_par_applies(inst) {
        return Some((SpecialCase::CasPar, cas_par_dinners(inst)));
    }
    if howell_applies(inst) {
        return Some((SpecialCase::Howell, howell_dinners(inst)));
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dispatched {
    pub case: SpecialCase,
    pub schedule: Schedule,
    pub proven_optimal: bool,
}

/// Builds the optimal schedule of the special case covering `inst`, if any.
/// A construction that fails (a search running out of budget) yields `None`.
pub fn dispatch_optimal(inst: &Instance) -> Option<Dispatched> {
    let (case, _) = special_case(inst)?;
    build_case(inst, case).ok().map(|schedule| Dispatched { case, schedule, proven_optimal: true })
}

pub fn build_case(inst: &Instance, case: SpecialCase) -> Result<Schedule, ConstructionError> {
    match case {
        SpecialCase::Trivial => build_trivial(inst),
        SpecialCase::SigmaOne => build_sigma1(inst),
        SpecialCase::Prime => build_prime(inst),
        SpecialCase::CasPar => build_cas_par(inst),
        SpecialCase::Howell => build_howell_schedule(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::lb_best;
    use crate::validate_schedule;

    fn inst(t: u32, s: u32, c: u32, sigma: u32, gamma: u32) -> Instance {
        Instance::new(t, s, c, sigma, gamma).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let d = dispatch_optimal(&inst(1, 4, 2, 4, 3)).unwrap();
        assert_eq!(d.case, SpecialCase::Trivial);
        assert_eq!(d.schedule.dinner_count(), 1);
        assert!(d.proven_optimal);

        let d = dispatch_optimal(&inst(2, 5, 6, 2, 3)).unwrap();
        assert_eq!(d.case, SpecialCase::Howell);
        assert_eq!(d.schedule.dinner_count(), 3);

        assert_eq!(dispatch_optimal(&inst(7, 9, 8, 3, 5)), None);
    }

    #[test]
    fn dispatched_schedules_are_feasible_and_match_closed_forms() {
        for t in 1..=4 {
            for s in 1..=8 {
                for c in 1..=8 {
                    for sigma in 1..=3 {
                        for gamma in 1..=3 {
                            let i = inst(t, s, c, sigma, gamma);
                            let Some((case, count)) = special_case(&i) else { continue };
                            let d = dispatch_optimal(&i).unwrap_or_else(|| panic!("{i} {case:?}"));
                            let report = validate_schedule(&d.schedule);
                            assert!(report.feasible, "{i} {case:?}: {:?}", report.violations);
                            assert_eq!(d.schedule.dinner_count() as u64, count, "{i} {case:?}");
                            assert!(count >= lb_best(&i), "{i}");
                        }
                    }
                }
            }
        }
    }
}
