use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::LcaError;

const BUNDLED_FLOWS: &str = include_str!("../../data/flows.csv");

/// Unit a flow is measured in. Fixed per flow by the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlowUnit {
    #[serde(rename = "kWh")]
    KWh,
    #[serde(rename = "kg")]
    Kg,
    #[serde(rename = "L")]
    Litre,
    #[serde(rename = "tkm")]
    Tkm,
    #[serde(rename = "item")]
    Item,
}

impl FlowUnit {
    pub const ALL: [FlowUnit; 5] = [
        FlowUnit::KWh,
        FlowUnit::Kg,
        FlowUnit::Litre,
        FlowUnit::Tkm,
        FlowUnit::Item,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            FlowUnit::KWh => "kWh",
            FlowUnit::Kg => "kg",
            FlowUnit::Litre => "L",
            FlowUnit::Tkm => "tkm",
            FlowUnit::Item => "item",
        }
    }
}

impl fmt::Display for FlowUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FlowUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FlowUnit::ALL
            .into_iter()
            .find(|u| u.symbol() == s)
            .ok_or_else(|| format!("unknown unit {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowInfo {
    pub flow_id: String,
    pub name: String,
    pub unit: FlowUnit,
}

/// Known elementary and intermediate flows, keyed by id in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowRegistry {
    flows: IndexMap<String, FlowInfo>,
}

impl FlowRegistry {
    /// The registry shipped with the crate (`data/flows.csv`).
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_FLOWS, "bundled flows.csv").expect("bundled flows.csv is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self, LcaError> {
        let text = fs::read_to_string(path).map_err(|source| LcaError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    /// Parses `flow_id,name,unit` rows.
    pub fn from_csv_str(text: &str, source_name: &str) -> Result<Self, LcaError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| LcaError::malformed(source_name, e.to_string()))?;
        if headers.iter().ne(["flow_id", "name", "unit"]) {
            return Err(LcaError::malformed(
                source_name,
                format!("unexpected header {headers:?}"),
            ));
        }
        let mut flows = IndexMap::new();
        for (line, row) in reader.deserialize::<FlowInfo>().enumerate() {
            let info = row.map_err(|e| LcaError::malformed(source_name, format!("row {}: {e}", line + 1)))?;
            if info.flow_id.is_empty() {
                return Err(LcaError::malformed(
                    source_name,
                    format!("row {}: empty flow_id", line + 1),
                ));
            }
            if flows.contains_key(&info.flow_id) {
                return Err(LcaError::malformed(
                    source_name,
                    format!("duplicate flow_id {:?}", info.flow_id),
                ));
            }
            flows.insert(info.flow_id.clone(), info);
        }
        Ok(Self { flows })
    }

    pub fn get(&self, flow_id: &str) -> Option<&FlowInfo> {
        self.flows.get(flow_id)
    }

    pub fn require(&self, flow_id: &str) -> Result<&FlowInfo, LcaError> {
        self.get(flow_id)
            .ok_or_else(|| LcaError::UnknownFlow(flow_id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &FlowInfo> {
        self.flows.values()
    }

    pub fn len(&self) -> usize {
        self.flows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flows.is_empty()
    }

    /// Adds or replaces a flow.
    pub fn insert(&mut self, info: FlowInfo) {
        self.flows.insert(info.flow_id.clone(), info);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_registry() {
        let r = FlowRegistry::bundled();
        assert_eq!(r.len(), 11);
        assert_eq!(r.get("transport_air").unwrap().unit, FlowUnit::Tkm);
        assert_eq!(r.get("cutting_tool").unwrap().unit, FlowUnit::Item);
        assert!(matches!(r.require("diesel"), Err(LcaError::UnknownFlow(_))));
    }

    #[test]
    fn rejects_bad_rows() {
        let dup = "flow_id,name,unit\na,A,kg\na,B,kg\n";
        assert!(FlowRegistry::from_csv_str(dup, "t").is_err());
        let unit = "flow_id,name,unit\na,A,tonnes\n";
        assert!(FlowRegistry::from_csv_str(unit, "t").is_err());
        let header = "id,name,unit\na,A,kg\n";
        assert!(FlowRegistry::from_csv_str(header, "t").is_err());
    }
}
