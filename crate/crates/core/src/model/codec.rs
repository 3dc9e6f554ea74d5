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

//! Canonical JSON encoding of schedules.
//!
//! ```json
//! {"instance":{"t":1,"s":1,"c":1,"sigma":1,"gamma":1},
//!  "dinners":[[{"suppliers":[1],"customers":[1]}]]}
//! ```
//!
//! Id arrays are strictly ascending and objects carry no extra keys.

use std::collections::BTreeSet;

use serde_json::{Map, Value};
use thiserror::Error;

use super::{Dinner, Instance, ModelError, Schedule, TableSeating};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("unexpected field `{0}`")]
    UnknownField(String),
    #[error("`{path}` must be {expected}")]
    WrongType { path: String, expected: &'static str },
    #[error("invalid instance: {0}")]
    InvalidInstance(#[from] ModelError),
    #[error("`{path}`: id {id} is out of range 1..={max}")]
    IdOutOfRange { path: String, id: u64, max: u32 },
    #[error("`{path}` must be strictly ascending")]
    NotAscending { path: String },
    #[error("`{path}` seats nobody")]
    EmptyTable { path: String },
}

pub fn encode_schedule(sched: &Schedule) -> String {
    serde_json::to_string(sched).expect("schedules always serialize")
}

pub fn encode_schedule_pretty(sched: &Schedule) -> String {
    serde_json::to_string_pretty(sched).expect("schedules always serialize")
}

pub fn decode_schedule(text: &str) -> Result<Schedule, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Malformed(e.to_string()))?;
    let root = as_object(&value, "$")?;
    check_keys(root, &["instance", "dinners"], "$")?;

    let instance = decode_instance(field(root, "instance", "$")?)?;
    let dinners = as_array(field(root, "dinners", "$")?, "$.dinners")?
        .iter()
        .enumerate()
        .map(|(d, dinner)| decode_dinner(dinner, &format!("$.dinners[{d}]"), &instance))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Schedule::new(instance, dinners))
}

fn decode_instance(value: &Value) -> Result<Instance, ParseError> {
    const KEYS: [&str; 5] = ["t", "s", "c", "sigma", "gamma"];
    let obj = as_object(value, "$.instance")?;
    check_keys(obj, &KEYS, "$.instance")?;
    let mut fields = [0u32; 5];
    for (slot, key) in fields.iter_mut().zip(KEYS) {
        let path = format!("$.instance.{key}");
        let n = field(obj, key, "$.instance")?
            .as_u64()
            .ok_or(ParseError::WrongType { path: path.clone(), expected: "a non-negative integer" })?;
        *slot = u32::try_from(n).map_err(|_| ParseError::WrongType { path, expected: "an integer below 2^32" })?;
    }
    let [t, s, c, sigma, gamma] = fields;
    Ok(Instance::new(t, s, c, sigma, gamma)?)
}

fn decode_dinner(value: &Value, path: &str, inst: &Instance) -> Result<Dinner, ParseError> {
    let tables = as_array(value, path)?
        .iter()
        .enumerate()
        .map(|(i, table)| decode_table(table, &format!("{path}[{i}]"), inst))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dinner::new(tables))
}

fn decode_table(value: &Value, path: &str, inst: &Instance) -> Result<TableSeating, ParseError> {
    let obj = as_object(value, path)?;
    check_keys(obj, &["suppliers", "customers"], path)?;
    let suppliers = decode_ids(field(obj, "suppliers", path)?, &format!("{path}.suppliers"), inst.s())?;
    let customers = decode_ids(field(obj, "customers", path)?, &format!("{path}.customers"), inst.c())?;
    let table = TableSeating { suppliers, customers };
    if table.is_empty() {
        return Err(ParseError::EmptyTable { path: path.to_owned() });
    }
    Ok(table)
}

fn decode_ids(value: &Value, path: &str, max: u32) -> Result<BTreeSet<u32>, ParseError> {
    let mut ids = BTreeSet::new();
    let mut last = 0u64;
    for item in as_array(value, path)? {
        let id =
            item.as_u64().ok_or(ParseError::WrongType { path: path.to_owned(), expected: "an array of integers" })?;
        if id == 0 || id > u64::from(max) {
            return Err(ParseError::IdOutOfRange { path: path.to_owned(), id, max });
        }
        if id <= last {
            return Err(ParseError::NotAscending { path: path.to_owned() });
        }
        last = id;
        ids.insert(id as u32);
    }
    Ok(ids)
}

fn as_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    value.as_object().ok_or(ParseError::WrongType { path: path.to_owned(), expected: "an object" })
}

fn as_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    value.as_array().ok_or(ParseError::WrongType { path: path.to_owned(), expected: "an array" })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| ParseError::MissingField(format!("{path}.{key}")))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), ParseError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(extra) => Err(ParseError::UnknownField(format!("{path}.{extra}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::six_dinner_schedule;
    use proptest::prelude::*;

    const SINGLETON: &str =
        r#"{"instance":{"t":1,"s":1,"c":1,"sigma":1,"gamma":1},"dinners":[[{"suppliers":[1],"customers":[1]}]]}"#;

    #[test]
    fn decodes_minimal_schedule() {
        let sched = decode_schedule(SINGLETON).unwrap();
        assert_eq!(sched.instance, Instance::new(1, 1, 1, 1, 1).unwrap());
        assert_eq!(sched.dinners, vec![Dinner::new(vec![TableSeating::new([1], [1])])]);
        assert!(sched.is_feasible());
        assert_eq!(encode_schedule(&sched), SINGLETON);
    }

    #[test]
    fn six_dinner_example_round_trips() {
        let sched = six_dinner_schedule();
        assert_eq!(decode_schedule(&encode_schedule(&sched)).unwrap(), sched);
        assert_eq!(decode_schedule(&encode_schedule_pretty(&sched)).unwrap(), sched);
    }

    #[test]
    fn supplier_out_of_range() {
        let text =
            r#"{"instance":{"t":2,"s":5,"c":6,"sigma":2,"gamma":3},"dinners":[[{"suppliers":[1,7],"customers":[1]}]]}"#;
        assert_eq!(
            decode_schedule(text),
            Err(ParseError::IdOutOfRange { path: "$.dinners[0][0].suppliers".into(), id: 7, max: 5 })
        );
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(decode_schedule("{\"instance\":"), Err(ParseError::Malformed(_))));
        assert_eq!(
            decode_schedule(r#"{"instance":{"t":1,"s":1,"c":1,"sigma":1,"gamma":1}}"#),
            Err(ParseError::MissingField("$.dinners".into()))
        );
        assert_eq!(
            decode_schedule(r#"{"instance":{"t":1,"s":1,"c":1,"sigma":1},"dinners":[]}"#),
            Err(ParseError::MissingField("$.instance.gamma".into()))
        );
        assert_eq!(
            decode_schedule(r#"{"instance":{"t":1,"s":1,"c":1,"sigma":1,"gamma":1},"dinners":[],"x":1}"#),
            Err(ParseError::UnknownField("$.x".into()))
        );
        assert!(matches!(
            decode_schedule(r#"{"instance":{"t":0,"s":1,"c":1,"sigma":1,"gamma":1},"dinners":[]}"#),
            Err(ParseError::InvalidInstance(_))
        ));
        assert!(matches!(
            decode_schedule(
                r#"{"instance":{"t":1,"s":3,"c":1,"sigma":1,"gamma":1},"dinners":[[{"suppliers":[2,1],"customers":[1]}]]}"#
            ),
            Err(ParseError::NotAscending { .. })
        ));
        assert!(matches!(
            decode_schedule(
                r#"{"instance":{"t":1,"s":3,"c":1,"sigma":1,"gamma":1},"dinners":[[{"suppliers":[],"customers":[]}]]}"#
            ),
            Err(ParseError::EmptyTable { .. })
        ));
        assert!(matches!(
            decode_schedule(
                r#"{"instance":{"t":1,"s":3,"c":1,"sigma":1,"gamma":1},"dinners":[[{"suppliers":"1","customers":[1]}]]}"#
            ),
            Err(ParseError::WrongType { .. })
        ));
    }

    fn arb_schedule() -> impl Strategy<Value = Schedule> {
        (1u32..4, 1u32..7, 1u32..7, 1u32..4, 1u32..4).prop_flat_map(|(t, s, c, sigma, gamma)| {
            let inst = Instance::new(t, s, c, sigma, gamma).unwrap();
            let table = (
                prop::collection::btree_set(1..=s, 0..=s as usize),
                prop::collection::btree_set(1..=c, 1..=c as usize),
            )
                .prop_map(|(suppliers, customers)| TableSeating { suppliers, customers });
            prop::collection::vec(prop::collection::vec(table, 0..4).prop_map(Dinner::new), 0..6)
                .prop_map(move |dinners| Schedule::new(inst, dinners))
        })
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(sched in arb_schedule()) {
            prop_assert_eq!(decode_schedule(&encode_schedule(&sched)).unwrap(), sched);
        }
    }
}
