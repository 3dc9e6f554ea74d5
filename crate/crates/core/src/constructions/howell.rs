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

//! Howell designs `H(m, 2n)`: an `m × m` array whose cells are empty or hold
//! an unordered pair of symbols from `1..=2n`, such that every row and every
//! column holds each symbol exactly once and no pair appears twice.
//!
//! Designs are found by backtracking that always branches on the row or
//! column constraint with the fewest remaining options. Row 1 is fixed to `{1,2},{3,4},...`
//! left-aligned, and symbol 1 of row `r` sits in column `r`; both choices
//! only remove relabelings, so exhausting the search proves non-existence.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::ConstructionError;
use crate::model::{GroupPlan, GroupTable};

/// Node budget used by [`generate_howell`].
pub const DEFAULT_HOWELL_BUDGET: u64 = 5_000_000;

/// Largest supported symbol count (symbols are kept in 64-bit masks).
pub const MAX_HOWELL_SYMBOLS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellDesign {
    side: usize,
    symbols: usize,
    cells: Vec<Option<(u32, u32)>>,
}

impl HowellDesign {
    /// Builds a design from its cells, row-major, without checking it.
    pub fn from_cells(side: usize, symbols: usize, cells: Vec<Option<(u32, u32)>>) -> Self {
        assert_eq!(cells.len(), side * side);
        Self { side, symbols, cells }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    /// The pair in row `r`, column `c` (0-based), smaller symbol first.
    pub fn cell(&self, r: usize, c: usize) -> Option<(u32, u32)> {
        self.cells[r * self.side + c]
    }

    pub fn row(&self, r: usize) -> &[Option<(u32, u32)>] {
        &self.cells[r * self.side..(r + 1) * self.side]
    }

    /// Checks every defining property.
    pub fn is_valid(&self) -> bool {
        let (m, n2) = (self.side, self.symbols);
        if n2 % 2 != 0 || self.cells.len() != m * m {
            return false;
        }
        let mut pairs = std::collections::HashSet::new();
        let mut rows = vec![vec![0u32; n2 + 1]; m];
        let mut cols = vec![vec![0u32; n2 + 1]; m];
        for (r, row_counts) in rows.iter_mut().enumerate() {
            for (c, col_counts) in cols.iter_mut().enumerate() {
                if let Some((a, b)) = self.cell(r, c) {
                    if a == 0 || a >= b || b as usize > n2 || !pairs.insert((a, b)) {
                        return false;
                    }
                    for x in [a, b] {
                        row_counts[x as usize] += 1;
                        col_counts[x as usize] += 1;
                    }
                }
            }
        }
        rows.iter().chain(&cols).all(|counts| counts[1..].iter().all(|&k| k == 1))
    }

    /// Rows become dinners and columns become customer groups; only the
    /// first `columns` columns are kept.
    pub fn to_plan(&self, columns: usize) -> GroupPlan {
        GroupPlan::new(
            (0..self.side)
                .map(|r| {
                    (0..self.side.min(columns))
                        .filter_map(|c| self.cell(r, c).map(|(a, b)| GroupTable::new([a, b], c)))
                        .collect()
                })
                .collect(),
        )
    }
}

/// Existence of `H(m, 2n)`: `n ≤ m ≤ 2n − 1`, except for `H(2,4)`,
/// `H(3,4)`, `H(5,6)` and `H(5,8)`.
pub fn howell_exists(side: usize, symbols: usize) -> bool {
    if symbols == 0 || !symbols.is_multiple_of(2) {
        return false;
    }
    let n = symbols / 2;
    n <= side && side < symbols && !matches!((side, symbols), (2, 4) | (3, 4) | (5, 6) | (5, 8))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HowellSearch {
    Found(HowellDesign),
    /// The search space was exhausted.
    NoneExists,
    BudgetExhausted {
        nodes: u64,
    },
}

struct Search {
    m: usize,
    n2: usize,
    cells: Vec<Option<(u8, u8)>>,
    /// symbols still missing from each row / column
    row_free: Vec<u64>,
    col_free: Vec<u64>,
    /// empty cells of each row, as a column mask
    row_empty: Vec<u64>,
    /// partners each symbol has not been paired with yet
    pair_free: Vec<u64>,
    nodes: u64,
    budget: u64,
}

/// An open constraint: symbol `x` (second field) must still appear in the row
/// or column given by the first field.
#[derive(Clone, Copy)]
enum Item {
    Row(usize, usize),
    Col(usize, usize),
}

enum Step {
    Found,
    Dead,
    OutOfBudget,
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

impl Search {
    fn new(m: usize, n2: usize, budget: u64) -> Self {
        let full = if n2 == 64 { u64::MAX } else { (1u64 << n2) - 1 };
        let all_cols = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut search = Self {
            m,
            n2,
            cells: vec![None; m * m],
            row_free: vec![full; m],
            col_free: vec![full; m],
            row_empty: vec![all_cols; m],
            pair_free: (0..n2).map(|x| full & !(1u64 << x)).collect(),
            nodes: 0,
            budget,
        };
        for i in 0..n2 / 2 {
            search.place(0, i, 2 * i, 2 * i + 1);
        }
        search
    }

    fn place(&mut self, r: usize, c: usize, x: usize, y: usize) {
        self.cells[r * self.m + c] = Some((x.min(y) as u8, x.max(y) as u8));
        let b = (1u64 << x) | (1u64 << y);
        self.row_free[r] &= !b;
        self.col_free[c] &= !b;
        self.row_empty[r] &= !(1u64 << c);
        self.pair_free[x] &= !(1u64 << y);
        self.pair_free[y] &= !(1u64 << x);
    }

    fn unplace(&mut self, r: usize, c: usize, x: usize, y: usize) {
        self.cells[r * self.m + c] = None;
        let b = (1u64 << x) | (1u64 << y);
        self.row_free[r] |= b;
        self.col_free[c] |= b;
        self.row_empty[r] |= 1u64 << c;
        self.pair_free[x] |= 1u64 << y;
        self.pair_free[y] |= 1u64 << x;
    }

    /// Symbol 0 of row `r` is pinned to column `r`.
    fn column_allows(&self, r: usize, c: usize, x: usize) -> bool {
        x != 0 || r == c
    }

    /// Partners `y` of `x` placeable with it in cell `(r, c)`.
    fn partners(&self, r: usize, c: usize, x: usize) -> u64 {
        if self.row_empty[r] & (1u64 << c) == 0
            || self.row_free[r] & (1u64 << x) == 0
            || self.col_free[c] & (1u64 << x) == 0
            || !self.column_allows(r, c, x)
        {
            return 0;
        }
        let mut ys = self.row_free[r] & self.col_free[c] & self.pair_free[x];
        if c != r {
            ys &= !1;
        }
        ys
    }

    fn options(&self, item: Item) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        match item {
            Item::Row(r, x) => {
                for c in bits(self.row_empty[r]) {
                    out.extend(bits(self.partners(r, c, x)).map(|y| (r, c, x, y)));
                }
            }
            Item::Col(c, x) => {
                for r in 0..self.m {
                    out.extend(bits(self.partners(r, c, x)).map(|y| (r, c, x, y)));
                }
            }
        }
        out
    }

    fn count(&self, item: Item) -> u32 {
        match item {
            Item::Row(r, x) => bits(self.row_empty[r]).map(|c| self.partners(r, c, x).count_ones()).sum(),
            Item::Col(c, x) => (0..self.m).map(|r| self.partners(r, c, x).count_ones()).sum(),
        }
    }

    /// The open constraint with the fewest options, `None` when all are met.
    fn pick(&self) -> Option<(Item, u32)> {
        let rows = (0..self.m).flat_map(|r| bits(self.row_free[r]).map(move |x| Item::Row(r, x)));
        let cols = (0..self.m).flat_map(|c| bits(self.col_free[c]).map(move |x| Item::Col(c, x)));
        let mut best: Option<(Item, u32)> = None;
        for item in rows.chain(cols) {
            let k = self.count(item);
            if best.is_none_or(|(_, b)| k < b) {
                best = Some((item, k));
                if k <= 1 {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let Some((item, k)) = self.pick() else {
            return Step::Found;
        };
        if k == 0 {
            return Step::Dead;
        }
        for (r, c, x, y) in self.options(item) {
            self.place(r, c, x, y);
            match self.run() {
                Step::Dead => {}
                done => return done,
            }
            self.unplace(r, c, x, y);
        }
        Step::Dead
    }

    fn design(&self) -> HowellDesign {
        HowellDesign {
            side: self.m,
            symbols: self.n2,
            cells: self.cells.iter().map(|cell| cell.map(|(a, b)| (u32::from(a) + 1, u32::from(b) + 1))).collect(),
        }
    }
}

/// Exhaustive search for `H(side, symbols)` within `budget` nodes, ignoring
/// the known existence results.
pub fn search_howell(side: usize, symbols: usize, budget: u64) -> HowellSearch {
    let n = symbols / 2;
    if symbols == 0 || !symbols.is_multiple_of(2) || symbols > MAX_HOWELL_SYMBOLS || side < n || side > 64 {
        return HowellSearch::NoneExists;
    }
    let mut search = Search::new(side, symbols, budget);
    match search.run() {
        Step::Found => HowellSearch::Found(search.design()),
        Step::Dead => HowellSearch::NoneExists,
        Step::OutOfBudget => HowellSearch::BudgetExhausted { nodes: search.nodes },
    }
}

/// Found designs, and the largest budget each unsuccessful search used.
type Cache = HashMap<(usize, usize), Result<HowellDesign, u64>>;

fn cache() -> &'static Mutex<Cache> {
    static CACHE: OnceLock<Mutex<Cache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A Howell design `H(side, symbols)`, or why none is available.
pub fn generate_howell(side: usize, symbols: usize) -> Result<HowellDesign, ConstructionError> {
    generate_howell_with_budget(side, symbols, DEFAULT_HOWELL_BUDGET)
}

pub fn generate_howell_with_budget(
    side: usize,
    symbols: usize,
    budget: u64,
) -> Result<HowellDesign, ConstructionError> {
    if !howell_exists(side, symbols) {
        return Err(ConstructionError::NoHowellDesign { side, symbols });
    }
    if symbols > MAX_HOWELL_SYMBOLS {
        return Err(ConstructionError::Unsupported(format!(
            "Howell designs on more than {MAX_HOWELL_SYMBOLS} symbols"
        )));
    }
    match cache().lock().unwrap().get(&(side, symbols)) {
        Some(Ok(design)) => return Ok(design.clone()),
        Some(&Err(nodes)) if nodes >= budget => {
            return Err(ConstructionError::HowellSearchExhausted { side, symbols, nodes })
        }
        _ => {}
    }
    let (entry, result) = match search_howell(side, symbols, budget) {
        HowellSearch::Found(design) => (Ok(design.clone()), Ok(design)),
        HowellSearch::BudgetExhausted { nodes } => {
            (Err(budget), Err(ConstructionError::HowellSearchExhausted { side, symbols, nodes }))
        }
        HowellSearch::NoneExists => unreachable!("H({side},{symbols}) exists but the search found none"),
    };
    cache().lock().unwrap().insert((side, symbols), entry);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn existence_table() {
        assert!(howell_exists(1, 2));
        assert!(howell_exists(3, 6));
        assert!(howell_exists(9, 10));
        assert!(!howell_exists(2, 4));
        assert!(!howell_exists(3, 4));
        assert!(!howell_exists(5, 6));
        assert!(!howell_exists(5, 8));
        assert!(!howell_exists(2, 6));
        assert!(!howell_exists(6, 6));
        assert!(!howell_exists(3, 5));
    }

    #[test]
    fn small_designs_are_valid() {
        for (m, n2) in [(1, 2), (3, 6), (4, 6), (4, 8), (6, 8), (7, 8)] {
            let d = generate_howell(m, n2).unwrap();
            assert!(d.is_valid(), "H({m},{n2})");
            assert_eq!(d.cell(0, 0), Some((1, 2)));
        }
    }

    #[test]
    fn exceptions_are_exhausted() {
        for (m, n2) in [(2, 4), (3, 4), (5, 6), (5, 8)] {
            assert_eq!(search_howell(m, n2, 10_000_000), HowellSearch::NoneExists, "H({m},{n2})");
        }
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(search_howell(7, 8, 1), HowellSearch::BudgetExhausted { .. }));
    }

    #[test]
    fn plan_keeps_requested_columns() {
        let d = generate_howell(3, 6).unwrap();
        let plan = d.to_plan(2);
        assert_eq!(plan.dinner_count(), 3);
        assert!(plan.dinners.iter().flatten().all(|t| t.group < 2 && t.suppliers.len() == 2));
    }
}
