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

//! Hand-made σ=2 schedules for the supplier/group combinations where no
//! Howell design exists.

use crate::model::ScheduleTemplate;

/// Named by supplier count and group count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionalTemplate {
    /// 4 suppliers, 3 groups, 3 dinners.
    S4C3,
    /// 6 suppliers, 5 groups, 5 dinners.
    S6C5,
    /// 8 suppliers, 5 groups, 5 dinners.
    S8C5,
    /// 4 suppliers, 2 groups, 3 dinners (one more than `max(cg, s/2)`).
    S4C2,
}

impl ExceptionalTemplate {
    pub const ALL: [ExceptionalTemplate; 4] = [Self::S4C3, Self::S6C5, Self::S8C5, Self::S4C2];

    /// The template replacing `H(groups, symbols)`, if any.
    pub fn for_design(groups: u32, symbols: u32) -> Option<Self> {
        match (groups, symbols) {
            (3, 4) => Some(Self::S4C3),
            (5, 6) => Some(Self::S6C5),
            (5, 8) => Some(Self::S8C5),
            (2, 4) => Some(Self::S4C2),
            _ => None,
        }
    }

    pub fn template(self) -> ScheduleTemplate {
        let text = match self {
            Self::S4C3 => include_str!("../../fixtures/templates/s4c3.json"),
            Self::S6C5 => include_str!("../../fixtures/templates/s6c5.json"),
            Self::S8C5 => include_str!("../../fixtures/templates/s8c5.json"),
            Self::S4C2 => include_str!("../../fixtures/templates/s4c2.json"),
        };
        serde_json::from_str(text).expect("embedded template parses")
    }
}

pub fn exceptional_schedule(key: ExceptionalTemplate) -> ScheduleTemplate {
    key.template()
}
