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

//! Closed-form lower and upper bounds on the number of dinners.
//!
//! All values are computed with integer arithmetic. Square roots are never
//! evaluated in floating point for a returned value: comparisons against
//! radicals are squared into integer inequalities.

use serde::Serialize;

use crate::constructions::howell_route;
use crate::model::Instance;

fn ceil_div(num: u64, den: u64) -> u64 {
    num.div_ceil(den)
}

/// `⌈num/den⌉` for a signed numerator and positive denominator.
fn ceil_div_signed(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    num.div_euclid(den) + i128::from(num.rem_euclid(den) != 0)
}

/// Smallest `r` with `r*r >= x`.
fn ceil_sqrt(x: u128) -> u128 {
    let r = x.isqrt();
    if r * r < x {
        r + 1
    } else {
        r
    }
}

fn groups(inst: &Instance) -> u64 {
    u64::from(inst.customer_groups())
}

/// `⌈s/σ⌉`: a customer meets at most σ suppliers per dinner.
pub fn lb1(inst: &Instance) -> u64 {
    ceil_div(inst.s().into(), inst.sigma().into())
}

/// `⌈c/γ⌉`: a supplier meets at most γ customers per dinner.
pub fn lb2(inst: &Instance) -> u64 {
    groups(inst)
}

/// `⌈s·⌈c/γ⌉ / (tσ)⌉`.
pub fn lb3(inst: &Instance) -> u64 {
    ceil_div(u64::from(inst.s()) * groups(inst), u64::from(inst.t()) * u64::from(inst.sigma()))
}

/// The counting bound
/// `⌈ (√s/(tγ)) ((c−γ)M + γ/M) ⌉` with `M = max(√(γ/(c−γ)), 1)`.
///
/// Only defined for `γ < c`; returns `None` otherwise.
///
/// With `M = 1` (`2γ ≤ c`) the bracket is `c`, so the bound is the least `k`
/// with `(k·tγ)² ≥ c²s`. Otherwise the bracket collapses to
/// `2√(γ(c−γ))` and the bound is the least `k` with `(k·tγ)² ≥ 4sγ(c−γ)`.
pub fn lb4(inst: &Instance) -> Option<u64> {
    let (s, c, gamma) = (u128::from(inst.s()), u128::from(inst.c()), u128::from(inst.gamma()));
    if gamma >= c {
        return None;
    }
    let squared_target = if 2 * gamma <= c { c * c * s } else { 4 * s * gamma * (c - gamma) };
    let scale = u128::from(inst.t()) * gamma;
    let k = ceil_sqrt(squared_target).div_ceil(scale);
    debug_assert!((k * scale).pow(2) >= squared_target);
    debug_assert!(k == 0 || ((k - 1) * scale).pow(2) < squared_target);
    Some(k as u64)
}

/// Largest `j ≥ 1` with `j ≤ 1/(1 − √((s−1)/(s−1+2cg)))`, i.e. the floor in the
/// maximizer formula for [`lb5`]. Decided through `(j−1)²·b ≤ j²·a` with
/// `a = s−1`, `b = s−1+2cg`.
pub fn j_star(s: u32, cg: u32) -> u64 {
    let a = u128::from(s.saturating_sub(1));
    let b = a + 2 * u128::from(cg);
    if a == 0 {
        return 1;
    }
    let fits = |j: u128| (j - 1) * (j - 1) * b <= j * j * a;
    let ratio = (a as f64 / b as f64).sqrt();
    let mut j = ((1.0 / (1.0 - ratio)).floor() as u128).max(1);
    while j > 1 && !fits(j) {
        j -= 1;
    }
    while fits(j + 1) {
        j += 1;
    }
    j as u64
}

/// `s·(2cg(j−1) − (s−1)) / (t·j(j−1))` as an exact fraction (numerator, denominator).
pub(crate) fn lb5_term(inst: &Instance, j: u64) -> (i128, i128) {
    let (s, t, cg) = (i128::from(inst.s()), i128::from(inst.t()), i128::from(inst.customer_groups()));
    let j = i128::from(j);
    (s * (2 * cg * (j - 1) - (s - 1)), t * j * (j - 1))
}

/// The LP-duality bound
/// `max_{j∈{2..σ}} ⌈(s/t)(2cg/j − (s−1)/(j(j−1)))⌉` together with the
/// `j` attaining it. Returns `(0, None)` when `σ = 1` and clamps negative
/// maxima to zero.
pub fn lb5_with_argmax(inst: &Instance) -> (u64, Option<u64>) {
    let sigma = u64::from(inst.sigma());
    if sigma < 2 {
        return (0, None);
    }
    // the real-valued objective is unimodal in j and strictly decreasing from
    // j*+1 on, so its ceiling cannot exceed the value at j*+1 beyond that point
    let last = sigma.min(j_star(inst.s(), inst.customer_groups()).max(1) + 1);
    let (value, j) = (2..=last.max(2))
        .map(|j| {
            let (num, den) = lb5_term(inst, j);
            (ceil_div_signed(num, den), j)
        })
        .fold((i128::MIN, 0), |best, cur| if cur.0 > best.0 { cur } else { best });
    if value < 0 {
        (0, Some(j))
    } else {
        (value as u64, Some(j))
    }
}

pub fn lb5(inst: &Instance) -> u64 {
    lb5_with_argmax(inst).0
}

/// Largest of the applicable lower bounds.
pub fn lb_best(inst: &Instance) -> u64 {
    [lb1(inst), lb2(inst), lb3(inst), lb4(inst).unwrap_or(0), lb5(inst)].into_iter().max().unwrap_or(0)
}

fn ub1_with(inst: &Instance, width: u64) -> u64 {
    let factor = if inst.sigma() == 1 { 2 } else { 1 };
    let cg = groups(inst);
    let half = ceil_div(inst.s().into(), 2);
    factor * ceil_div(cg.min(width), inst.t().into()) * cg.max(half)
}

/// `⌈2/σ⌉ ⌈min(cg, s)/t⌉ max(cg, ⌈s/2⌉)`.
pub fn ub1(inst: &Instance) -> u64 {
    ub1_with(inst, inst.s().into())
}

/// [`ub1`] with `min(cg, ⌈s/2⌉)` in place of `min(cg, s)`; only defined
/// when `s·γ > c`.
pub fn ub1_improved(inst: &Instance) -> Option<u64> {
    (u64::from(inst.s()) * u64::from(inst.gamma()) > u64::from(inst.c()))
        .then(|| ub1_with(inst, ceil_div(inst.s().into(), 2)))
}

/// `⌈⌈s/σ⌉/t⌉ (1 − σ + σ·max(cg, 2⌈s/σ⌉))`, defined when `⌈s/σ⌉ ≤ cg`.
pub fn ub2(inst: &Instance) -> Option<u64> {
    let blocks = lb1(inst);
    let cg = groups(inst);
    let sigma = u64::from(inst.sigma());
    (blocks <= cg).then(|| ceil_div(blocks, inst.t().into()) * (1 + sigma * (cg.max(2 * blocks) - 1)))
}

/// Euclidean-division bound: with `⌈s/σ⌉ = q·cg + ρ`,
/// `q⌈cg/t⌉(1 − σ + 2σcg) + ⌈ρ/t⌉(1 − σ + 2σ·max(cg, 2ρ))`.
pub fn ub_eucli(inst: &Instance) -> u64 {
    let blocks = lb1(inst);
    let cg = groups(inst);
    let sigma = u64::from(inst.sigma());
    let t = u64::from(inst.t());
    let (q, rho) = (blocks / cg, blocks % cg);
    let full = q * ceil_div(cg, t) * (1 + sigma * (2 * cg - 1));
    let rest = if rho == 0 { 0 } else { ceil_div(rho, t) * (1 + sigma * (2 * cg.max(2 * rho) - 1)) };
    full + rest
}

/// Whether the schedule witnessing [`ub1`] can actually be assembled.
///
/// The witness starts from a σ=2 schedule on `min(cg, s)` tables. When
/// `s > c/γ` that schedule comes from a Howell design; for two customer
/// groups and three or four suppliers no design exists and three dinners
/// are needed where the formula assumes two.
pub fn ub1_witnessed(inst: &Instance) -> bool {
    !has_more_suppliers_than_groups(inst)
        || howell_route(inst.customer_groups().min(inst.s()), inst.s(), inst.customer_groups()).is_some()
}

/// Same as [`ub1_witnessed`] for [`ub1_improved`], whose base schedule only
/// has `min(cg, ⌈s/2⌉)` tables.
pub fn ub1_improved_witnessed(inst: &Instance) -> bool {
    has_more_suppliers_than_groups(inst)
        && howell_route(inst.customer_groups().min(inst.s().div_ceil(2)), inst.s(), inst.customer_groups()).is_some()
}

fn has_more_suppliers_than_groups(inst: &Instance) -> bool {
    u64::from(inst.s()) * u64::from(inst.gamma()) > u64::from(inst.c())
}

/// Every bound for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lb1: u64,
    pub lb2: u64,
    pub lb3: u64,
    /// `None` when `γ ≥ c`.
    pub lb4: Option<u64>,
    pub lb5: u64,
    /// The `j` attaining `lb5`, `None` when `σ = 1`.
    pub lb5_argmax: Option<u64>,
    pub j_star: u64,
    pub lb_best: u64,
    pub ub1: u64,
    pub ub1_improved: Option<u64>,
    pub ub2: Option<u64>,
    pub ub_eucli: u64,
    /// Minimum over the upper bounds whose witness schedule exists.
    pub ub_best: u64,
    /// Upper bounds left out of `ub_best` because their witness construction
    /// does not apply to this instance.
    pub ub_excluded: Vec<&'static str>,
}

impl BoundsReport {
    pub fn compute(inst: &Instance) -> Self {
        let (lb5, lb5_argmax) = lb5_with_argmax(inst);
        let ub1 = ub1(inst);
        let ub1_improved = ub1_improved(inst);
        let ub2 = ub2(inst);
        let ub_eucli = ub_eucli(inst);

        let mut excluded = Vec::new();
        let mut ub_best = ub_eucli;
        if let Some(v) = ub2 {
            ub_best = ub_best.min(v);
        }
        if ub1_witnessed(inst) {
            ub_best = ub_best.min(ub1);
        } else {
            excluded.push("ub1");
        }
        if let Some(v) = ub1_improved {
            if ub1_improved_witnessed(inst) {
                ub_best = ub_best.min(v);
            } else {
                excluded.push("ub1_improved");
            }
        }

        Self {
            lb1: lb1(inst),
            lb2: lb2(inst),
            lb3: lb3(inst),
            lb4: lb4(inst),
            lb5,
            lb5_argmax,
            j_star: j_star(inst.s(), inst.customer_groups()),
            lb_best: lb_best(inst),
            ub1,
            ub1_improved,
            ub2,
            ub_eucli,
            ub_best,
            ub_excluded: excluded,
        }
    }

    /// The five lower bounds in order, `lb4` reported as 0 when not applicable.
    pub fn lower(&self) -> [u64; 5] {
        [self.lb1, self.lb2, self.lb3, self.lb4.unwrap_or(0), self.lb5]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(t: u32, s: u32, c: u32, sigma: u32, gamma: u32) -> Instance {
        Instance::new(t, s, c, sigma, gamma).unwrap()
    }

    #[test]
    fn straightforward_bounds() {
        assert_eq!(lb1(&inst(5, 8, 8, 1, 2)), 8);
        assert_eq!(lb2(&inst(6, 8, 8, 2, 1)), 8);
        assert_eq!(lb1(&inst(3, 7, 2, 7, 1)), 1);
    }

    #[test]
    fn lb3_values() {
        assert_eq!(lb3(&inst(1, 8, 8, 1, 1)), 64);
        assert_eq!(lb3(&inst(5, 8, 8, 1, 2)), 7);
        assert_eq!(lb3(&inst(3, 5, 4, 2, 4)), 1);
    }

    #[test]
    fn lb4_values() {
        assert_eq!(lb4(&inst(1, 11, 8, 6, 4)), Some(7));
        assert_eq!(lb4(&inst(1, 8, 11, 2, 1)), Some(32));
        assert_eq!(lb4(&inst(5, 8, 8, 1, 2)), Some(3));
        assert_eq!(lb4(&inst(1, 8, 8, 1, 1)), Some(23));
        assert_eq!(lb4(&inst(1, 9, 3, 3, 1)), Some(9));
        assert_eq!(lb4(&inst(1, 8, 3, 3, 3)), None);
        assert_eq!(lb4(&inst(1, 8, 3, 3, 4)), None);
    }

    #[test]
    fn lb4_exact_at_perfect_squares() {
        // c·√s/(tγ) = 3·4/2 = 6 exactly: no rounding up
        assert_eq!(lb4(&inst(2, 16, 3, 1, 1)), Some(6));
        // 2√(sγ(c−γ))/(tγ) = 2·√(4·3·3)/3 = 4 exactly
        assert_eq!(lb4(&inst(1, 4, 6, 1, 3)), Some(4));
    }

    #[test]
    fn lb5_values() {
        assert_eq!(lb5(&inst(1, 8, 11, 2, 1)), 60);
        assert_eq!(lb5(&inst(6, 8, 8, 2, 1)), 6);
        assert_eq!(lb5(&inst(5, 8, 8, 1, 2)), 0);
        assert_eq!(lb5(&inst(1, 11, 8, 6, 4)), 4);
        // negative maximum clamps to zero: 2·1/2 − 19/2 < 0
        assert_eq!(lb5(&inst(1, 20, 1, 2, 1)), 0);
    }

    #[test]
    fn j_star_values() {
        assert_eq!(j_star(11, 2), 6);
        assert_eq!(j_star(2, 1), 2);
        assert_eq!(j_star(1, 5), 1);
    }

    #[test]
    fn lb_best_values() {
        assert_eq!(lb_best(&inst(2, 5, 6, 2, 3)), 3);
        assert_eq!(lb_best(&inst(5, 8, 8, 1, 2)), 8);
        assert_eq!(lb_best(&inst(1, 8, 11, 2, 1)), 60);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(ub1(&inst(3, 6, 3, 2, 1)), 3);
        assert_eq!(ub1(&inst(3, 6, 9, 2, 1)), 18);
        assert_eq!(ub1(&inst(2, 5, 6, 2, 3)), 3);
        assert_eq!(ub2(&inst(3, 6, 3, 2, 1)), Some(11));
        assert_eq!(ub2(&inst(3, 6, 9, 2, 1)), Some(17));
        assert_eq!(ub1_improved(&inst(3, 6, 9, 2, 1)), None);
        assert_eq!(ub1_improved(&inst(1, 6, 2, 2, 1)), Some(6));
        assert_eq!(ub1(&inst(1, 4, 3, 2, 1)), 9);
        assert_eq!(ub1_improved(&inst(1, 4, 3, 2, 1)), Some(6));
        assert_eq!(ub2(&inst(1, 12, 2, 2, 1)), None);
    }

    #[test]
    fn ub2_single_supplier_block() {
        // σ ≥ s leaves one block: 1 − σ + σ·max(cg, 2)
        assert_eq!(ub2(&inst(1, 3, 5, 4, 1)), Some(4 * 5 + 1 - 4));
        assert_eq!(ub2(&inst(2, 3, 2, 3, 1)), Some(3 * 2 + 1 - 3));
    }

    #[test]
    fn ub_eucli_values() {
        assert_eq!(ub_eucli(&inst(1, 12, 2, 2, 1)), 42);
        assert_eq!(ub_eucli(&inst(1, 14, 2, 2, 1)), 49);
    }

    #[test]
    fn ub1_witness_fails_for_two_groups_of_four_suppliers() {
        let i = inst(2, 4, 2, 2, 1);
        assert_eq!(ub1(&i), 2);
        assert!(!ub1_witnessed(&i));
        let report = BoundsReport::compute(&i);
        assert_eq!(report.ub_excluded, vec!["ub1", "ub1_improved"]);
        assert!(report.ub_best >= 3);
    }

    #[test]
    fn report_for_six_dinner_instance() {
        let report = BoundsReport::compute(&inst(2, 5, 6, 2, 3));
        assert_eq!(report.lb_best, 3);
        assert_eq!(report.ub_best, 3);
        assert!(report.ub_excluded.is_empty());
    }

    #[test]
    fn report_matches_dominance_row() {
        let report = BoundsReport::compute(&inst(5, 8, 8, 1, 2));
        assert_eq!(report.lower(), [8, 4, 7, 3, 0]);
        assert_eq!(report.lb5_argmax, None);
    }

    #[test]
    fn monotone_in_parameters() {
        for s in 1..30 {
            for sigma in 1..8 {
                let a = inst(2, s, 5, sigma, 2);
                assert!(lb1(&a) <= lb1(&inst(2, s + 1, 5, sigma, 2)));
                assert!(lb1(&a) >= lb1(&inst(2, s, 5, sigma + 1, 2)));
            }
        }
        for c in 1..30 {
            for gamma in 1..8 {
                let a = inst(2, 5, c, 2, gamma);
                assert!(lb2(&a) <= lb2(&inst(2, 5, c + 1, 2, gamma)));
                assert!(lb2(&a) >= lb2(&inst(2, 5, c, 2, gamma + 1)));
            }
        }
        for t in 1..20 {
            for s in 1..15 {
                assert!(lb3(&inst(t, s, 9, 2, 2)) >= lb3(&inst(t + 1, s, 9, 2, 2)));
            }
        }
    }
}
