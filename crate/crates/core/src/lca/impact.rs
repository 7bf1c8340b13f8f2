use serde::{Deserialize, Serialize};

use super::{CharacterizationTable, Indicator, LcaError, Scenario};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorImpact {
    pub indicator: Indicator,
    pub unit: String,
    pub value: f64,
}

/// Impacts of one inventory flow, in indicator order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowContribution {
    pub flow_id: String,
    pub amount: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImpactResult {
    pub scenario_id: String,
    pub impacts: Vec<IndicatorImpact>,
    pub contributions: Vec<FlowContribution>,
}

impl ImpactResult {
    pub fn value(&self, indicator: Indicator) -> f64 {
        self.impacts
            .iter()
            .find(|i| i.indicator == indicator)
            .map_or(0.0, |i| i.value)
    }

    pub fn gwp(&self) -> f64 {
        self.value(Indicator::GlobalWarming)
    }

    pub fn values(&self) -> Vec<f64> {
        self.impacts.iter().map(|i| i.value).collect()
    }

    pub fn indicators(&self) -> Vec<Indicator> {
        self.impacts.iter().map(|i| i.indicator).collect()
    }
}

/// Multiplies each inventory amount by its factors and sums per indicator.
/// Totals are the sums of the per-flow contributions in inventory order.
pub fn characterize(scenario: &Scenario, table: &CharacterizationTable) -> Result<ImpactResult, LcaError> {
    scenario.validate(table.registry())?;
    let contributions: Vec<FlowContribution> = scenario
        .inventory
        .iter()
        .map(|f| FlowContribution {
            flow_id: f.flow_id.clone(),
            amount: f.amount,
            values: Indicator::ALL
                .iter()
                .map(|&ind| f.amount * table.factor(&f.flow_id, ind))
                .collect(),
        })
        .collect();
    let impacts = Indicator::ALL
        .iter()
        .map(|&ind| IndicatorImpact {
            indicator: ind,
            unit: ind.unit().to_string(),
            value: contributions.iter().map(|c| c.values[ind.index()]).sum(),
        })
        .collect();
    Ok(ImpactResult {
        scenario_id: scenario.scenario_id.clone(),
        impacts,
        contributions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::{FlowAmount, FlowRegistry, FlowUnit, FunctionalUnit};

    fn scenario(flows: Vec<FlowAmount>) -> Scenario {
        let fu = FunctionalUnit::new("t", 1.0, "u").unwrap();
        Scenario::from_inventory("s", fu, flows, vec![], &FlowRegistry::bundled()).unwrap()
    }

    #[test]
    fn empty_inventory() {
        let r = characterize(&scenario(vec![]), &CharacterizationTable::bundled()).unwrap();
        assert_eq!(r.impacts.len(), 18);
        assert!(r.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_flow_linearity() {
        let mut t = CharacterizationTable::empty(FlowRegistry::bundled());
        t.set("electricity_de", Indicator::GlobalWarming, 0.5, "test").unwrap();
        let r = characterize(
            &scenario(vec![FlowAmount::new("electricity_de", 2.0, FlowUnit::KWh)]),
            &t,
        )
        .unwrap();
        assert_eq!(r.gwp(), 1.0);
        assert_eq!(r.impacts[0].unit, "kg CO2 eq");
        assert_eq!(r.value(Indicator::LandUse), 0.0);
    }

    #[test]
    fn unknown_flow_is_an_error() {
        let mut s = scenario(vec![]);
        s.inventory.push(FlowAmount::new("helium", 1.0, FlowUnit::Kg));
        assert!(matches!(
            characterize(&s, &CharacterizationTable::bundled()),
            Err(LcaError::UnknownFlow(_))
        ));
    }

    #[test]
    fn contributions_sum_to_totals() {
        let s = crate::lca::anode_scenario(crate::lca::Market::NonEu, true).unwrap();
        let r = characterize(&s, &CharacterizationTable::bundled()).unwrap();
        for ind in Indicator::ALL {
            let sum: f64 = r.contributions.iter().map(|c| c.values[ind.index()]).sum();
            assert_eq!(sum, r.value(ind));
        }
    }
}
