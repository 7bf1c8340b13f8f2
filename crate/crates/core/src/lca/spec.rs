//! `scenario.json`: a declarative scenario description.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "scenario_id": "faster-cutting",
//!   "case": "machining",
//!   "parameters": {"lifespan_factor": 1.2, "speed_factor": 1.35, "cv_assisted": true},
//!   "overrides": [{"flow_id": "cutting_fluid", "amount": 0.01}]
//! }
//! ```
//!
//! `case` is one of `machining`, `anode`, `named` (`{"name": "anode:eu:reman"}`)
//! or `custom` (`{"functional_unit": {...}, "inventory": [...]}`).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::cases::{anode_scenario_with, machining_scenario_with, NAMED_ANODE, NAMED_MACHINING};
use super::{AnodeParams, Assumption, FlowAmount, FlowRegistry, FunctionalUnit, LcaError, MachiningParams, Scenario};

pub const SCENARIO_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CustomInventory {
    pub functional_unit: FunctionalUnit,
    pub inventory: Vec<FlowAmount>,
    #[serde(default)]
    pub assumptions: Vec<Assumption>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedRef {
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", content = "parameters", rename_all = "snake_case")]
pub enum ScenarioCase {
    Machining(MachiningParams),
    Anode(AnodeParams),
    Named(NamedRef),
    Custom(CustomInventory),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowOverride {
    pub flow_id: String,
    pub amount: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario_id: Option<String>,
    #[serde(flatten)]
    pub case: ScenarioCase,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<FlowOverride>,
}

fn schema_version() -> u32 {
    SCENARIO_SCHEMA_VERSION
}

impl ScenarioSpec {
    pub fn new(case: ScenarioCase) -> Self {
        Self {
            schema_version: SCENARIO_SCHEMA_VERSION,
            scenario_id: None,
            case,
            overrides: Vec::new(),
        }
    }

    pub fn from_json_str(text: &str, source_name: &str) -> Result<Self, LcaError> {
        let spec: ScenarioSpec =
            serde_json::from_str(text).map_err(|e| LcaError::malformed(source_name, e.to_string()))?;
        if spec.schema_version != SCENARIO_SCHEMA_VERSION {
            return Err(LcaError::malformed(
                source_name,
                format!("unsupported schema_version {}", spec.schema_version),
            ));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, LcaError> {
        let text = fs::read_to_string(path).map_err(|source| LcaError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    pub fn build(&self, registry: &FlowRegistry) -> Result<Scenario, LcaError> {
        let mut scenario = match &self.case {
            ScenarioCase::Machining(p) => machining_scenario_with(p, registry)?,
            ScenarioCase::Anode(p) => anode_scenario_with(p, registry)?,
            ScenarioCase::Named(n) => named_scenario(&n.name, registry)?,
            ScenarioCase::Custom(c) => Scenario::from_inventory(
                self.scenario_id.clone().unwrap_or_else(|| "custom".into()),
                FunctionalUnit::new(
                    c.functional_unit.description.clone(),
                    c.functional_unit.quantity,
                    c.functional_unit.unit.clone(),
                )?,
                c.inventory.clone(),
                c.assumptions.clone(),
                registry,
            )?,
        };
        for o in &self.overrides {
            scenario.override_amount(&o.flow_id, o.amount, registry)?;
        }
        if let Some(id) = &self.scenario_id {
            scenario.scenario_id = id.clone();
        }
        Ok(scenario)
    }
}

/// Ids of the registered case-study scenarios, machining first.
pub fn named_scenario_ids() -> Vec<&'static str> {
    NAMED_MACHINING
        .iter()
        .map(|(n, _)| *n)
        .chain(NAMED_ANODE.iter().map(|(n, _)| *n))
        .collect()
}

pub fn named_scenario(name: &str, registry: &FlowRegistry) -> Result<Scenario, LcaError> {
    if let Some((_, p)) = NAMED_MACHINING.iter().find(|(n, _)| *n == name) {
        return machining_scenario_with(p, registry);
    }
    if let Some((_, p)) = NAMED_ANODE.iter().find(|(n, _)| *n == name) {
        return anode_scenario_with(p, registry);
    }
    Err(LcaError::UnknownScenario(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::Market;

    #[test]
    fn registry_names() {
        let ids = named_scenario_ids();
        assert_eq!(ids.len(), 10);
        let r = FlowRegistry::bundled();
        for id in ids {
            assert_eq!(named_scenario(id, &r).unwrap().scenario_id, id);
        }
        assert!(matches!(
            named_scenario("machining:s99", &r),
            Err(LcaError::UnknownScenario(_))
        ));
    }

    #[test]
    fn machining_spec() {
        let text = r#"{"case":"machining","parameters":{"lifespan_factor":1.2,"speed_factor":1.5,"cv_assisted":true}}"#;
        let spec = ScenarioSpec::from_json_str(text, "t").unwrap();
        let s = spec.build(&FlowRegistry::bundled()).unwrap();
        assert_eq!(s.scenario_id, "machining:l20s50");
    }

    #[test]
    fn anode_spec_with_defaults_and_alias() {
        let text = r#"{"case":"anode","parameters":{"market":"non_eu","remanufacture":true}}"#;
        let spec = ScenarioSpec::from_json_str(text, "t").unwrap();
        match &spec.case {
            ScenarioCase::Anode(p) => assert_eq!(*p, AnodeParams::new(Market::NonEu, true)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            spec.build(&FlowRegistry::bundled()).unwrap().scenario_id,
            "anode:noneu:reman"
        );
    }

    #[test]
    fn named_spec_with_override_and_id() {
        let text = r#"{"scenario_id":"mine","case":"named","parameters":{"name":"machining:baseline"},
                       "overrides":[{"flow_id":"cutting_fluid","amount":0.02}]}"#;
        let s = ScenarioSpec::from_json_str(text, "t")
            .unwrap()
            .build(&FlowRegistry::bundled())
            .unwrap();
        assert_eq!(s.scenario_id, "mine");
        assert_eq!(s.amount("cutting_fluid"), 0.02);
        assert!(s.assumption("override.cutting_fluid").is_some());
    }

    #[test]
    fn custom_spec() {
        let text = r#"{"scenario_id":"lamp","case":"custom","parameters":{
            "functional_unit":{"description":"one lamp-hour","quantity":1,"unit":"h"},
            "inventory":[{"flow_id":"electricity_de","amount":0.06,"unit":"kWh"}]}}"#;
        let s = ScenarioSpec::from_json_str(text, "t")
            .unwrap()
            .build(&FlowRegistry::bundled())
            .unwrap();
        assert_eq!(s.scenario_id, "lamp");
        assert_eq!(s.amount("electricity_de"), 0.06);
    }

    #[test]
    fn spec_round_trip_and_errors() {
        let spec = ScenarioSpec::new(ScenarioCase::Machining(MachiningParams::new(1.0, 1.2, true)));
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(ScenarioSpec::from_json_str(&text, "t").unwrap(), spec);
        assert!(ScenarioSpec::from_json_str(r#"{"case":"lathe","parameters":{}}"#, "t").is_err());
        assert!(
            ScenarioSpec::from_json_str(r#"{"schema_version":2,"case":"named","parameters":{"name":"x"}}"#, "t")
                .is_err()
        );
    }
}
