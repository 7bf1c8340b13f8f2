use serde::{Deserialize, Serialize};

use super::{ImpactResult, Indicator, LcaError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scenario_id: String,
    pub values: Vec<f64>,
    pub delta: Vec<f64>,
    /// Percent change against the baseline; `None` where the baseline is 0.
    pub delta_pct: Vec<Option<f64>>,
    /// Indicators that strictly increase against the baseline.
    pub increased: Vec<Indicator>,
    /// Global warming goes down while another indicator goes up.
    pub impact_transfer: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRanking {
    pub indicator: Indicator,
    /// Scenario ids from lowest to highest impact; ties keep input order.
    pub order: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioComparison {
    pub baseline_id: String,
    pub indicators: Vec<Indicator>,
    pub units: Vec<String>,
    /// One row per result, baseline included, in input order.
    pub rows: Vec<ComparisonRow>,
    pub rankings: Vec<IndicatorRanking>,
}

impl ScenarioComparison {
    pub fn row(&self, scenario_id: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.scenario_id == scenario_id)
    }

    pub fn ranking(&self, indicator: Indicator) -> Option<&IndicatorRanking> {
        self.rankings.iter().find(|r| r.indicator == indicator)
    }
}

pub fn compare(results: &[ImpactResult], baseline_id: &str) -> Result<ScenarioComparison, LcaError> {
    if results.len() < 2 {
        return Err(LcaError::NotEnoughResults(results.len()));
    }
    let baseline = results
        .iter()
        .find(|r| r.scenario_id == baseline_id)
        .ok_or_else(|| LcaError::MissingBaseline(baseline_id.to_string()))?;
    let indicators = baseline.indicators();
    if let Some(other) = results.iter().find(|r| r.indicators() != indicators) {
        return Err(LcaError::IndicatorMismatch(format!(
            "{} and {} differ",
            baseline.scenario_id, other.scenario_id
        )));
    }
    let gwp = indicators.iter().position(|&i| i == Indicator::GlobalWarming);
    let base = baseline.values();

    let rows = results
        .iter()
        .map(|r| {
            let values = r.values();
            let delta: Vec<f64> = values.iter().zip(&base).map(|(v, b)| v - b).collect();
            let delta_pct = delta
                .iter()
                .zip(&base)
                .map(|(d, &b)| (b != 0.0).then(|| d / b * 100.0))
                .collect();
            let increased: Vec<Indicator> = indicators
                .iter()
                .zip(values.iter().zip(&base))
                .filter(|(_, (v, b))| v > b)
                .map(|(&i, _)| i)
                .collect();
            let gwp_down = gwp.is_some_and(|g| values[g] < base[g]);
            ComparisonRow {
                scenario_id: r.scenario_id.clone(),
                impact_transfer: gwp_down && !increased.is_empty(),
                values,
                delta,
                delta_pct,
                increased,
            }
        })
        .collect();

    let rankings = indicators
        .iter()
        .enumerate()
        .map(|(k, &indicator)| {
            let mut order: Vec<&ImpactResult> = results.iter().collect();
            order.sort_by(|a, b| a.impacts[k].value.total_cmp(&b.impacts[k].value));
            IndicatorRanking {
                indicator,
                order: order.iter().map(|r| r.scenario_id.clone()).collect(),
            }
        })
        .collect();

    Ok(ScenarioComparison {
        baseline_id: baseline_id.to_string(),
        units: baseline.impacts.iter().map(|i| i.unit.clone()).collect(),
        indicators,
        rows,
        rankings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::IndicatorImpact;

    fn result(id: &str, values: [f64; 18]) -> ImpactResult {
        ImpactResult {
            scenario_id: id.into(),
            impacts: Indicator::ALL
                .iter()
                .zip(values)
                .map(|(&indicator, value)| IndicatorImpact {
                    indicator,
                    unit: indicator.unit().into(),
                    value,
                })
                .collect(),
            contributions: vec![],
        }
    }

    #[test]
    fn identical_results() {
        let c = compare(&[result("a", [1.0; 18]), result("b", [1.0; 18])], "a").unwrap();
        let b = c.row("b").unwrap();
        assert!(b.delta.iter().all(|&d| d == 0.0));
        assert!(!b.impact_transfer);
        assert!(b.increased.is_empty());
        assert_eq!(c.ranking(Indicator::LandUse).unwrap().order, vec!["a", "b"]);
    }

    #[test]
    fn transfer_detected() {
        let mut v = [1.0; 18];
        v[0] = 0.9;
        v[5] = 1.05;
        let c = compare(&[result("base", [1.0; 18]), result("x", v)], "base").unwrap();
        let x = c.row("x").unwrap();
        assert!(x.impact_transfer);
        assert_eq!(x.increased, vec![Indicator::ALL[5]]);
        assert!((x.delta_pct[0].unwrap() + 10.0).abs() < 1e-9);
        assert_eq!(c.ranking(Indicator::GlobalWarming).unwrap().order, vec!["x", "base"]);
    }

    #[test]
    fn increase_without_gwp_drop_is_not_transfer() {
        let mut v = [1.0; 18];
        v[3] = 2.0;
        let c = compare(&[result("base", [1.0; 18]), result("x", v)], "base").unwrap();
        assert!(!c.row("x").unwrap().impact_transfer);
    }

    #[test]
    fn zero_baseline_has_no_percentage() {
        let c = compare(&[result("base", [0.0; 18]), result("x", [1.0; 18])], "base").unwrap();
        assert_eq!(c.row("x").unwrap().delta_pct[0], None);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            compare(&[result("a", [0.0; 18])], "a"),
            Err(LcaError::NotEnoughResults(1))
        ));
        assert!(matches!(
            compare(&[result("a", [0.0; 18]), result("b", [0.0; 18])], "z"),
            Err(LcaError::MissingBaseline(_))
        ));
        let mut short = result("b", [0.0; 18]);
        short.impacts.pop();
        assert!(matches!(
            compare(&[result("a", [0.0; 18]), short], "a"),
            Err(LcaError::IndicatorMismatch(_))
        ));
    }
}
