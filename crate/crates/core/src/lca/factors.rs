use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{FlowRegistry, Indicator, LcaError};

const BUNDLED_FACTORS: &str = include_str!("../../data/example-factors.csv");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub value: f64,
    pub provenance: String,
}

#[derive(Debug, Deserialize)]
struct FactorRow {
    flow_id: String,
    indicator: String,
    factor: f64,
    unit: String,
    provenance: String,
}

/// (flow, indicator) pairs without a factor; they count as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub missing: Vec<(String, Indicator)>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Characterization factors for the 18 midpoint indicators, with the flow
/// registry they refer to.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterizationTable {
    registry: FlowRegistry,
    factors: IndexMap<(String, Indicator), Factor>,
}

impl CharacterizationTable {
    pub fn empty(registry: FlowRegistry) -> Self {
        Self {
            registry,
            factors: IndexMap::new(),
        }
    }

    /// The example table shipped with the crate (`data/example-factors.csv`)
    /// over the bundled flow registry.
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_FACTORS, "bundled example-factors.csv", FlowRegistry::bundled())
            .expect("bundled example-factors.csv is valid")
    }

    pub fn from_path(path: &Path, registry: FlowRegistry) -> Result<Self, LcaError> {
        let text = fs::read_to_string(path).map_err(|source| LcaError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_str(&text, &path.display().to_string(), registry)
    }

    /// Parses `flow_id,indicator,factor,unit,provenance` rows. The unit must
    /// read `<indicator unit>/<flow unit>`.
    pub fn from_csv_str(text: &str, source_name: &str, registry: FlowRegistry) -> Result<Self, LcaError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| LcaError::malformed(source_name, e.to_string()))?;
        if headers
            .iter()
            .ne(["flow_id", "indicator", "factor", "unit", "provenance"])
        {
            return Err(LcaError::malformed(
                source_name,
                format!("unexpected header {headers:?}"),
            ));
        }
        let mut table = Self::empty(registry);
        for (line, row) in reader.deserialize::<FactorRow>().enumerate() {
            let at = |detail: String| LcaError::malformed(source_name, format!("row {}: {detail}", line + 1));
            let row = row.map_err(|e| at(e.to_string()))?;
            let indicator: Indicator = row.indicator.parse()?;
            let flow = table.registry.require(&row.flow_id)?;
            let expected = format!("{}/{}", indicator.unit(), flow.unit);
            if row.unit != expected {
                return Err(at(format!("unit {:?} should be {expected:?}", row.unit)));
            }
            if table.factors.contains_key(&(row.flow_id.clone(), indicator)) {
                return Err(at(format!("duplicate factor for {} / {indicator}", row.flow_id)));
            }
            table.set(&row.flow_id, indicator, row.factor, row.provenance)?;
        }
        Ok(table)
    }

    pub fn registry(&self) -> &FlowRegistry {
        &self.registry
    }

    pub fn indicators(&self) -> &'static [Indicator; Indicator::COUNT] {
        &Indicator::ALL
    }

    /// Sets one factor; the flow must be registered and the value finite.
    pub fn set(
        &mut self,
        flow_id: &str,
        indicator: Indicator,
        value: f64,
        provenance: impl Into<String>,
    ) -> Result<(), LcaError> {
        self.registry.require(flow_id)?;
        if !value.is_finite() {
            return Err(LcaError::InvalidFactor {
                name: format!("factor {flow_id} / {indicator}"),
                value,
            });
        }
        self.factors.insert(
            (flow_id.to_string(), indicator),
            Factor {
                value,
                provenance: provenance.into(),
            },
        );
        Ok(())
    }

    pub fn get(&self, flow_id: &str, indicator: Indicator) -> Option<&Factor> {
        self.factors.get(&(flow_id.to_string(), indicator))
    }

    /// Factor value, 0 when absent.
    pub fn factor(&self, flow_id: &str, indicator: Indicator) -> f64 {
        self.get(flow_id, indicator).map_or(0.0, |f| f.value)
    }

    /// Multiplies every factor of one indicator by `k`.
    pub fn scale_indicator(&mut self, indicator: Indicator, k: f64) {
        for ((_, ind), f) in self.factors.iter_mut() {
            if *ind == indicator {
                f.value *= k;
            }
        }
    }

    pub fn coverage(&self) -> CoverageReport {
        let mut missing = Vec::new();
        for flow in self.registry.iter() {
            for ind in Indicator::ALL {
                if self.get(&flow.flow_id, ind).is_none() {
                    missing.push((flow.flow_id.clone(), ind));
                }
            }
        }
        CoverageReport { missing }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_is_complete() {
        let t = CharacterizationTable::bundled();
        assert!(t.coverage().is_complete());
        assert_eq!(t.factor("cutting_fluid", Indicator::GlobalWarming), 1.9);
        assert!(!t.get("graphite", Indicator::LandUse).unwrap().provenance.is_empty());
    }

    #[test]
    fn missing_factors_default_to_zero() {
        let text = "flow_id,indicator,factor,unit,provenance\nelectricity_de,global_warming,0.5,kg CO2 eq/kWh,test\n";
        let t = CharacterizationTable::from_csv_str(text, "t", FlowRegistry::bundled()).unwrap();
        assert_eq!(t.factor("electricity_de", Indicator::LandUse), 0.0);
        let cov = t.coverage();
        assert_eq!(cov.missing.len(), 11 * 18 - 1);
        assert!(cov
            .missing
            .contains(&("graphite".to_string(), Indicator::GlobalWarming)));
    }

    #[test]
    fn rejects_wrong_unit_and_unknown_flow() {
        let unit = "flow_id,indicator,factor,unit,provenance\nelectricity_de,global_warming,0.5,kg CO2 eq/kg,x\n";
        assert!(matches!(
            CharacterizationTable::from_csv_str(unit, "t", FlowRegistry::bundled()),
            Err(LcaError::Malformed { .. })
        ));
        let flow = "flow_id,indicator,factor,unit,provenance\ndiesel,global_warming,0.5,kg CO2 eq/kg,x\n";
        assert!(matches!(
            CharacterizationTable::from_csv_str(flow, "t", FlowRegistry::bundled()),
            Err(LcaError::UnknownFlow(_))
        ));
        let dup = "flow_id,indicator,factor,unit,provenance\ngraphite,land_use,1,m2a crop eq/kg,x\ngraphite,land_use,2,m2a crop eq/kg,x\n";
        assert!(CharacterizationTable::from_csv_str(dup, "t", FlowRegistry::bundled()).is_err());
    }
}
