//! Report objects and tri-state agreement flags.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Match,
    Mismatch,
    NotApplicable,
}

impl Agreement {
    pub fn of(same: bool) -> Agreement {
        if same {
            Agreement::Match
        } else {
            Agreement::Mismatch
        }
    }

    /// `NotApplicable` when either side is missing.
    pub fn compare<T: PartialEq>(a: Option<T>, b: Option<T>) -> Agreement {
        match (a, b) {
            (Some(a), Some(b)) => Agreement::of(a == b),
            _ => Agreement::NotApplicable,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<Value>,
    pub results: BTreeMap<String, Value>,
    pub agreement: BTreeMap<String, Agreement>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: Value) -> Report {
        Report {
            command,
            instance: None,
            results: BTreeMap::new(),
            agreement: BTreeMap::new(),
            timing_ms: 0.0,
        }
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(
            key.to_string(),
            serde_json::to_value(v).expect("serializable"),
        );
    }

    pub fn agree(&mut self, key: &str, a: Agreement) {
        self.agreement.insert(key.to_string(), a);
    }

    pub fn mismatch(&self) -> bool {
        self.agreement.values().any(|a| *a == Agreement::Mismatch)
    }

    pub fn finish(&mut self, start: Instant) {
        self.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_state() {
        assert_eq!(Agreement::compare(Some(1), Some(1)), Agreement::Match);
        assert_eq!(Agreement::compare(Some(1), Some(2)), Agreement::Mismatch);
        assert_eq!(
            Agreement::compare::<u8>(None, Some(2)),
            Agreement::NotApplicable
        );
        let mut r = Report::new(Value::Null);
        r.agree("a", Agreement::NotApplicable);
        assert!(!r.mismatch());
        r.agree("b", Agreement::Mismatch);
        assert!(r.mismatch());
        assert_eq!(
            serde_json::to_value(Agreement::NotApplicable).unwrap(),
            "not_applicable"
        );
    }
}
