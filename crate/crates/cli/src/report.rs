//! Command reports: ordered `key: value` lines, or one JSON object.

use serde_json::{json, Map, Value};

use orthoscalar_core::{ComplexMatrix, WeightVector, C64};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            fields: vec![("command", Value::from(command))],
        }
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.fields.push((key, value.into()));
    }

    #[cfg(test)]
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            let rendered = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {rendered}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("report values serialize");
        s.push('\n');
        s
    }
}

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn weights<T: Clone + Into<Value>>(w: &WeightVector<T>) -> Value {
    Value::Array(
        std::iter::once(&w.head)
            .chain(&w.tail)
            .cloned()
            .map(Into::into)
            .collect(),
    )
}

/// Entries as strings, for exact (rational) weights.
pub fn exact_weights<T: std::fmt::Display>(w: &WeightVector<T>) -> Value {
    Value::Array(
        std::iter::once(&w.head)
            .chain(&w.tail)
            .map(|r| Value::from(r.to_string()))
            .collect(),
    )
}

pub fn matrix(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_forms() {
        let r = Report::new("demo")
            .field("brick", true)
            .field("dimension", json!([2, 1, 1, 1]));
        assert_eq!(r.to_text(), "command: demo\nbrick: true\ndimension: [2,1,1,1]\n");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["brick"], json!(true));
        assert_eq!(r.get("dimension"), Some(&json!([2, 1, 1, 1])));
    }
}
