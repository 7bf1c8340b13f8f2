use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{FlowRegistry, FlowUnit, LcaError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalUnit {
    pub description: String,
    pub quantity: f64,
    pub unit: String,
}

impl FunctionalUnit {
    pub fn new(description: impl Into<String>, quantity: f64, unit: impl Into<String>) -> Result<Self, LcaError> {
        if !(quantity > 0.0 && quantity.is_finite()) {
            return Err(LcaError::InvalidFactor {
                name: "functional unit quantity".into(),
                value: quantity,
            });
        }
        Ok(Self {
            description: description.into(),
            quantity,
            unit: unit.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowAmount {
    pub flow_id: String,
    pub amount: f64,
    pub unit: FlowUnit,
    /// Credited flows (avoided burdens) may carry negative amounts.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub credit: bool,
}

impl FlowAmount {
    pub fn new(flow_id: impl Into<String>, amount: f64, unit: FlowUnit) -> Self {
        Self {
            flow_id: flow_id.into(),
            amount,
            unit,
            credit: false,
        }
    }

    /// Amount of a registered flow, in the registry's unit.
    pub fn of(registry: &FlowRegistry, flow_id: &str, amount: f64) -> Result<Self, LcaError> {
        let info = registry.require(flow_id)?;
        Ok(Self::new(flow_id, amount, info.unit))
    }

    pub fn validate(&self, registry: &FlowRegistry) -> Result<(), LcaError> {
        let info = registry.require(&self.flow_id)?;
        if info.unit != self.unit {
            return Err(LcaError::UnitMismatch {
                flow_id: self.flow_id.clone(),
                expected: info.unit.to_string(),
                found: self.unit.to_string(),
            });
        }
        if !self.amount.is_finite() {
            return Err(LcaError::InvalidFactor {
                name: format!("amount of {}", self.flow_id),
                value: self.amount,
            });
        }
        if self.amount < 0.0 && !self.credit {
            return Err(LcaError::NegativeAmount {
                flow_id: self.flow_id.clone(),
                amount: self.amount,
            });
        }
        Ok(())
    }
}

/// A unit process: flows needed for its reference output, already scaled to
/// the functional unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Process {
    pub process_id: String,
    pub name: String,
    pub flows: Vec<FlowAmount>,
}

impl Process {
    pub fn new(
        process_id: impl Into<String>,
        name: impl Into<String>,
        flows: Vec<FlowAmount>,
    ) -> Result<Self, LcaError> {
        let process_id = process_id.into();
        if flows.is_empty() {
            return Err(LcaError::EmptyProcess(process_id));
        }
        let mut seen = HashSet::new();
        for f in &flows {
            if !seen.insert(f.flow_id.as_str()) {
                return Err(LcaError::DuplicateFlow {
                    process_id,
                    flow_id: f.flow_id.clone(),
                });
            }
        }
        Ok(Self {
            process_id,
            name: name.into(),
            flows,
        })
    }
}

/// Where a modelling input comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Case-study inventory data.
    CaseStudy,
    /// Solved so that reference scenarios hit their published results.
    Calibrated,
    /// A modelling choice where the case data is silent.
    Assumed,
    /// Supplied by the caller.
    User,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assumption {
    pub key: String,
    pub value: String,
    pub source: Source,
}

impl Assumption {
    pub fn new(key: impl Into<String>, value: impl ToString, source: Source) -> Self {
        Self {
            key: key.into(),
            value: value.to_string(),
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub scenario_id: String,
    pub functional_unit: FunctionalUnit,
    #[serde(default)]
    pub processes: Vec<Process>,
    /// Process flows merged by flow id, in first-appearance order.
    pub inventory: Vec<FlowAmount>,
    #[serde(default)]
    pub assumptions: Vec<Assumption>,
}

impl Scenario {
    /// Builds a scenario whose inventory is the sum of the process flows.
    pub fn from_processes(
        scenario_id: impl Into<String>,
        functional_unit: FunctionalUnit,
        processes: Vec<Process>,
        assumptions: Vec<Assumption>,
        registry: &FlowRegistry,
    ) -> Result<Self, LcaError> {
        let inventory = merge(processes.iter().flat_map(|p| p.flows.iter()), registry)?;
        Ok(Self {
            scenario_id: scenario_id.into(),
            functional_unit,
            processes,
            inventory,
            assumptions,
        })
    }

    /// Scenario from a plain inventory list; duplicate flow ids are summed.
    pub fn from_inventory(
        scenario_id: impl Into<String>,
        functional_unit: FunctionalUnit,
        inventory: Vec<FlowAmount>,
        assumptions: Vec<Assumption>,
        registry: &FlowRegistry,
    ) -> Result<Self, LcaError> {
        let inventory = merge(inventory.iter(), registry)?;
        Ok(Self {
            scenario_id: scenario_id.into(),
            functional_unit,
            processes: Vec::new(),
            inventory,
            assumptions,
        })
    }

    pub fn amount(&self, flow_id: &str) -> f64 {
        self.inventory
            .iter()
            .find(|f| f.flow_id == flow_id)
            .map_or(0.0, |f| f.amount)
    }

    pub fn assumption(&self, key: &str) -> Option<&Assumption> {
        self.assumptions.iter().find(|a| a.key == key)
    }

    pub fn validate(&self, registry: &FlowRegistry) -> Result<(), LcaError> {
        self.inventory.iter().try_for_each(|f| f.validate(registry))
    }

    /// Sets the amount of one flow, adding it if absent, and records the
    /// override as a user assumption.
    pub fn override_amount(&mut self, flow_id: &str, amount: f64, registry: &FlowRegistry) -> Result<(), LcaError> {
        let flow = FlowAmount::of(registry, flow_id, amount)?;
        flow.validate(registry)?;
        match self.inventory.iter_mut().find(|f| f.flow_id == flow_id) {
            Some(existing) => existing.amount = amount,
            None => self.inventory.push(flow),
        }
        self.assumptions
            .push(Assumption::new(format!("override.{flow_id}"), amount, Source::User));
        Ok(())
    }

    /// Every inventory amount multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Scenario {
        let mut s = self.clone();
        for f in &mut s.inventory {
            f.amount *= k;
        }
        for p in &mut s.processes {
            for f in &mut p.flows {
                f.amount *= k;
            }
        }
        s
    }
}

fn merge<'a>(
    flows: impl Iterator<Item = &'a FlowAmount>,
    registry: &FlowRegistry,
) -> Result<Vec<FlowAmount>, LcaError> {
    let mut merged: IndexMap<String, FlowAmount> = IndexMap::new();
    for f in flows {
        f.validate(registry)?;
        merged
            .entry(f.flow_id.clone())
            .and_modify(|m| {
                m.amount += f.amount;
                m.credit |= f.credit;
            })
            .or_insert_with(|| f.clone());
    }
    Ok(merged.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fu() -> FunctionalUnit {
        FunctionalUnit::new("test", 1.0, "unit").unwrap()
    }

    #[test]
    fn functional_unit_must_be_positive() {
        assert!(FunctionalUnit::new("x", 0.0, "h").is_err());
        assert!(FunctionalUnit::new("x", f64::INFINITY, "h").is_err());
    }

    #[test]
    fn process_rules() {
        let r = FlowRegistry::bundled();
        assert!(matches!(Process::new("p", "P", vec![]), Err(LcaError::EmptyProcess(_))));
        let e = FlowAmount::of(&r, "electricity_de", 1.0).unwrap();
        assert!(matches!(
            Process::new("p", "P", vec![e.clone(), e]),
            Err(LcaError::DuplicateFlow { .. })
        ));
    }

    #[test]
    fn merges_processes_by_flow() {
        let r = FlowRegistry::bundled();
        let a = Process::new("a", "A", vec![FlowAmount::of(&r, "graphite", 1.0).unwrap()]).unwrap();
        let b = Process::new(
            "b",
            "B",
            vec![
                FlowAmount::of(&r, "molybdenum", 2.0).unwrap(),
                FlowAmount::of(&r, "graphite", 0.5).unwrap(),
            ],
        )
        .unwrap();
        let s = Scenario::from_processes("s", fu(), vec![a, b], vec![], &r).unwrap();
        assert_eq!(s.inventory.len(), 2);
        assert_eq!(s.inventory[0].flow_id, "graphite");
        assert_eq!(s.amount("graphite"), 1.5);
    }

    #[test]
    fn amount_checks() {
        let r = FlowRegistry::bundled();
        let wrong_unit = FlowAmount::new("graphite", 1.0, FlowUnit::KWh);
        assert!(matches!(wrong_unit.validate(&r), Err(LcaError::UnitMismatch { .. })));
        let negative = FlowAmount::new("graphite", -1.0, FlowUnit::Kg);
        assert!(matches!(negative.validate(&r), Err(LcaError::NegativeAmount { .. })));
        let credit = FlowAmount {
            credit: true,
            ..negative
        };
        assert!(credit.validate(&r).is_ok());
        assert!(matches!(
            FlowAmount::new("unobtainium", 1.0, FlowUnit::Kg).validate(&r),
            Err(LcaError::UnknownFlow(_))
        ));
    }

    #[test]
    fn overrides_are_recorded() {
        let r = FlowRegistry::bundled();
        let mut s = Scenario::from_inventory(
            "s",
            fu(),
            vec![FlowAmount::of(&r, "graphite", 1.0).unwrap()],
            vec![],
            &r,
        )
        .unwrap();
        s.override_amount("graphite", 3.0, &r).unwrap();
        s.override_amount("transport_air", 2.0, &r).unwrap();
        assert_eq!(s.amount("graphite"), 3.0);
        assert_eq!(s.amount("transport_air"), 2.0);
        assert_eq!(s.assumption("override.graphite").unwrap().source, Source::User);
        assert!(s.override_amount("graphite", -1.0, &r).is_err());
    }
}
