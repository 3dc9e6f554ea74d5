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

use std::fmt;

use serde::Serialize;

use super::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "role", content = "id", rename_all = "snake_case")]
pub enum Person {
    Supplier(u32),
    Customer(u32),
}

impl fmt::Display for Person {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Person::Supplier(id) => write!(f, "supplier {id}"),
            Person::Customer(id) => write!(f, "customer {id}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    TableCountExceeded,
    SupplierCapExceeded,
    CustomerCapExceeded,
    PersonAtTwoTables,
    PairMissing,
    PairRepeated,
    SupplierPairRepeated,
    IdOutOfRange,
}

/// One broken constraint. Dinner and table positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    TableCountExceeded { dinner: usize, tables: usize, limit: u32 },
    SupplierCapExceeded { dinner: usize, table: usize, count: usize, limit: u32 },
    CustomerCapExceeded { dinner: usize, table: usize, count: usize, limit: u32 },
    PersonAtTwoTables { dinner: usize, person: Person },
    PairMissing { supplier: u32, customer: u32 },
    PairRepeated { supplier: u32, customer: u32, times: u32 },
    SupplierPairRepeated { first: u32, second: u32, times: u32 },
    IdOutOfRange { dinner: usize, table: usize, person: Person },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::TableCountExceeded { .. } => ViolationKind::TableCountExceeded,
            Violation::SupplierCapExceeded { .. } => ViolationKind::SupplierCapExceeded,
            Violation::CustomerCapExceeded { .. } => ViolationKind::CustomerCapExceeded,
            Violation::PersonAtTwoTables { .. } => ViolationKind::PersonAtTwoTables,
            Violation::PairMissing { .. } => ViolationKind::PairMissing,
            Violation::PairRepeated { .. } => ViolationKind::PairRepeated,
            Violation::SupplierPairRepeated { .. } => ViolationKind::SupplierPairRepeated,
            Violation::IdOutOfRange { .. } => ViolationKind::IdOutOfRange,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TableCountExceeded { dinner, tables, limit } => {
                write!(f, "dinner {dinner}: {tables} tables used, at most {limit} available")
            }
            Violation::SupplierCapExceeded { dinner, table, count, limit } => {
                write!(f, "dinner {dinner}, table {table}: {count} suppliers, at most {limit} allowed")
            }
            Violation::CustomerCapExceeded { dinner, table, count, limit } => {
                write!(f, "dinner {dinner}, table {table}: {count} customers, at most {limit} allowed")
            }
            Violation::PersonAtTwoTables { dinner, person } => {
                write!(f, "dinner {dinner}: {person} sits at more than one table")
            }
            Violation::PairMissing { supplier, customer } => {
                write!(f, "supplier {supplier} never meets customer {customer}")
            }
            Violation::PairRepeated { supplier, customer, times } => {
                write!(f, "supplier {supplier} meets customer {customer} {times} times")
            }
            Violation::SupplierPairRepeated { first, second, times } => {
                write!(f, "suppliers {first} and {second} share a table {times} times")
            }
            Violation::IdOutOfRange { dinner, table, person } => {
                write!(f, "dinner {dinner}, table {table}: {person} is out of range")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind() == kind).count()
    }

    pub fn contains(&self, violation: &Violation) -> bool {
        self.violations.contains(violation)
    }
}

/// Checks a schedule against every constraint of the problem and reports all
/// violations found.
///
/// People may skip dinners; only the table limits, the single-seat rule and
/// the meeting rules are enforced.
pub fn validate_schedule(sched: &Schedule) -> ValidationReport {
    let inst = sched.instance;
    let (s, c) = (inst.s() as usize, inst.c() as usize);
    let mut violations = Vec::new();

    // meets[(x-1)*c + (k-1)]: times supplier x shared a table with customer k
    let mut meets = vec![0u32; s * c];
    // pairs[(x-1)*s + (y-1)], x < y
    let mut pairs = vec![0u32; s * s];

    for (d, dinner) in sched.dinners.iter().enumerate() {
        let dinner_no = d + 1;
        if dinner.tables.len() > inst.t() as usize {
            violations.push(Violation::TableCountExceeded {
                dinner: dinner_no,
                tables: dinner.tables.len(),
                limit: inst.t(),
            });
        }
        let mut supplier_seats = vec![0u32; s + 1];
        let mut customer_seats = vec![0u32; c + 1];

        for (i, table) in dinner.tables.iter().enumerate() {
            let table_no = i + 1;
            if table.suppliers.len() > inst.sigma() as usize {
                violations.push(Violation::SupplierCapExceeded {
                    dinner: dinner_no,
                    table: table_no,
                    count: table.suppliers.len(),
                    limit: inst.sigma(),
                });
            }
            if table.customers.len() > inst.gamma() as usize {
                violations.push(Violation::CustomerCapExceeded {
                    dinner: dinner_no,
                    table: table_no,
                    count: table.customers.len(),
                    limit: inst.gamma(),
                });
            }

            let mut suppliers = Vec::with_capacity(table.suppliers.len());
            for &x in &table.suppliers {
                if x == 0 || x as usize > s {
                    violations.push(Violation::IdOutOfRange {
                        dinner: dinner_no,
                        table: table_no,
                        person: Person::Supplier(x),
                    });
                } else {
                    supplier_seats[x as usize] += 1;
                    suppliers.push(x as usize);
                }
            }
            let mut customers = Vec::with_capacity(table.customers.len());
            for &k in &table.customers {
                if k == 0 || k as usize > c {
                    violations.push(Violation::IdOutOfRange {
                        dinner: dinner_no,
                        table: table_no,
                        person: Person::Customer(k),
                    });
                } else {
                    customer_seats[k as usize] += 1;
                    customers.push(k as usize);
                }
            }

            for &x in &suppliers {
                for &k in &customers {
                    meets[(x - 1) * c + (k - 1)] += 1;
                }
            }
            // suppliers come from a BTreeSet, so they are ascending
            for (a, &x) in suppliers.iter().enumerate() {
                for &y in &suppliers[a + 1..] {
                    pairs[(x - 1) * s + (y - 1)] += 1;
                }
            }
        }

        for (x, &seats) in supplier_seats.iter().enumerate().skip(1) {
            if seats > 1 {
                violations.push(Violation::PersonAtTwoTables { dinner: dinner_no, person: Person::Supplier(x as u32) });
            }
        }
        for (k, &seats) in customer_seats.iter().enumerate().skip(1) {
            if seats > 1 {
                violations.push(Violation::PersonAtTwoTables { dinner: dinner_no, person: Person::Customer(k as u32) });
            }
        }
    }

    for x in 1..=s {
        for k in 1..=c {
            let times = meets[(x - 1) * c + (k - 1)];
            let (supplier, customer) = (x as u32, k as u32);
            match times {
                0 => violations.push(Violation::PairMissing { supplier, customer }),
                1 => {}
                _ => violations.push(Violation::PairRepeated { supplier, customer, times }),
            }
        }
    }
    for x in 1..=s {
        for y in x + 1..=s {
            let times = pairs[(x - 1) * s + (y - 1)];
            if times > 1 {
                violations.push(Violation::SupplierPairRepeated { first: x as u32, second: y as u32, times });
            }
        }
    }

    ValidationReport { feasible: violations.is_empty(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{six_dinner_schedule, Dinner, Instance, TableSeating};

    #[test]
    fn six_dinner_example_is_feasible() {
        let report = validate_schedule(&six_dinner_schedule());
        assert!(report.feasible, "{:?}", report.violations);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn empty_schedule_misses_every_pair() {
        let inst = Instance::new(2, 5, 6, 2, 3).unwrap();
        let report = validate_schedule(&Schedule::new(inst, vec![]));
        assert!(!report.feasible);
        assert_eq!(report.count(ViolationKind::PairMissing), 30);
        assert_eq!(report.violations.len(), 30);
    }

    #[test]
    fn repeated_dinner_repeats_pairs() {
        let mut sched = six_dinner_schedule();
        let second = sched.dinners[1].clone();
        sched.dinners.push(second);
        let report = validate_schedule(&sched);
        assert!(!report.feasible);
        assert!(report.contains(&Violation::PairRepeated { supplier: 3, customer: 2, times: 2 }));
        assert!(report.contains(&Violation::PairRepeated { supplier: 5, customer: 5, times: 2 }));
        assert_eq!(report.count(ViolationKind::PairRepeated), 2);
    }

    #[test]
    fn reports_every_kind() {
        let inst = Instance::new(1, 3, 2, 1, 1).unwrap();
        let sched = Schedule::new(
            inst,
            vec![
                Dinner::new(vec![TableSeating::new([1, 2], [1, 2]), TableSeating::new([2], [7])]),
                Dinner::new(vec![TableSeating::new([1, 2], [1])]),
            ],
        );
        let report = validate_schedule(&sched);
        for kind in [
            ViolationKind::TableCountExceeded,
            ViolationKind::SupplierCapExceeded,
            ViolationKind::CustomerCapExceeded,
            ViolationKind::PersonAtTwoTables,
            ViolationKind::PairMissing,
            ViolationKind::PairRepeated,
            ViolationKind::SupplierPairRepeated,
            ViolationKind::IdOutOfRange,
        ] {
            assert!(report.count(kind) > 0, "missing {kind:?}");
        }
        assert!(report.contains(&Violation::IdOutOfRange { dinner: 1, table: 2, person: Person::Customer(7) }));
        assert!(report.contains(&Violation::SupplierPairRepeated { first: 1, second: 2, times: 2 }));
    }

    #[test]
    fn absences_are_allowed() {
        // supplier 2 skips the first dinner, customer 1 skips the second
        let inst = Instance::new(1, 2, 2, 2, 2).unwrap();
        let sched = Schedule::new(
            inst,
            vec![
                Dinner::new(vec![TableSeating::new([1], [1, 2])]),
                Dinner::new(vec![TableSeating::new([2], [2])]),
                Dinner::new(vec![TableSeating::new([2], [1])]),
            ],
        );
        assert!(validate_schedule(&sched).feasible);
    }
}
