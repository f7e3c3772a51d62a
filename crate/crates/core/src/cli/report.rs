//! Deterministic reports: a fixed-schema JSON form and a line-oriented text
//! form. Identical inputs produce byte-identical output; all rationals are
//! serialized through the exact canonical printers.

use crate::ratsol::DegreeBounds;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct BoundsEcho {
    pub provenance: String,
    pub poles: BTreeMap<String, u32>,
    pub numerator_degree: u32,
}

impl BoundsEcho {
    pub fn from_bounds(b: &DegreeBounds) -> Self {
        BoundsEcho {
            provenance: b.provenance.to_string(),
            poles: b
                .pole_orders
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            numerator_degree: b.numerator_degree,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub witness: Option<String>,
    pub certificate: Option<String>,
    pub seed: Option<u64>,
    pub bounds: Option<BoundsEcho>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            result: serde_json::Value::Null,
            witness: None,
            certificate: None,
            seed: None,
            bounds: None,
        }
    }

    pub fn input(mut self, name: &str, value: impl ToString) -> Self {
        self.inputs.insert(name.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (name, value) in &self.inputs {
            out.push_str(&format!("input {} = {}\n", name, value));
        }
        render_value(&mut out, "result", &self.result);
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {}\n", w));
        }
        if let Some(c) = &self.certificate {
            out.push_str(&format!("certificate: {}\n", c));
        }
        if let Some(s) = &self.seed {
            out.push_str(&format!("seed: {}\n", s));
        }
        if let Some(b) = &self.bounds {
            let poles: Vec<String> = b
                .poles
                .iter()
                .map(|(k, v)| format!("{}: {}", k, v))
                .collect();
            out.push_str(&format!(
                "bounds: {}; poles: {{{}}}; numerator degree: {}\n",
                b.provenance,
                poles.join(", "),
                b.numerator_degree
            ));
        }
        out
    }
}

fn render_value(out: &mut String, key: &str, v: &serde_json::Value) {
    match v {
        serde_json::Value::Null => {}
        serde_json::Value::Object(map) => {
            for (k, inner) in map {
                render_value(out, &format!("{}.{}", key, k), inner);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                render_value(out, &format!("{}[{}]", key, i), inner);
            }
        }
        serde_json::Value::String(s) => {
            out.push_str(&format!("{}: {}\n", key, s));
        }
        other => {
            out.push_str(&format!("{}: {}\n", key, other));
        }
    }
}
