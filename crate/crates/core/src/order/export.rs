use std::fmt::Display;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{FinPoset, OrderError};

/// Wire form: `{"elements":["a","b"],"lt":[["a","b"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub lt: Vec<[String; 2]>,
}

impl<L: Clone + Eq + Hash + Display> FinPoset<L> {
    pub fn to_json_value(&self) -> PosetJson {
        PosetJson {
            elements: self.labels().iter().map(|l| l.to_string()).collect(),
            lt: self
                .pairs()
                .into_iter()
                .map(|(i, j)| [self.label(i).to_string(), self.label(j).to_string()])
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("poset JSON serializes")
    }

    /// Hasse diagram in DOT, edges drawn upward.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", escape(name));
        for l in self.labels() {
            out.push_str(&format!("  \"{}\";\n", escape(&l.to_string())));
        }
        for (i, j) in self.hasse_edges() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                escape(&self.label(i).to_string()),
                escape(&self.label(j).to_string())
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl FinPoset<String> {
    pub fn from_json_value(value: &PosetJson) -> Result<Self, OrderError> {
        let pairs = value
            .lt
            .iter()
            .map(|[a, b]| (a.clone(), b.clone()))
            .collect::<Vec<_>>();
        FinPoset::new(value.elements.clone(), pairs)
    }

    pub fn from_json(text: &str) -> Result<Self, OrderError> {
        let value: PosetJson =
            serde_json::from_str(text).map_err(|e| OrderError::Json(e.to_string()))?;
        Self::from_json_value(&value)
    }
}
