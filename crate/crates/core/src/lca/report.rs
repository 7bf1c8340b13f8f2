//! Report files: `impacts.csv`, `impacts.json`, `comparison.csv`,
//! `comparison.json` and `chart.json`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ImpactResult, Indicator, IndicatorImpact, LcaError, ScenarioComparison};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LcaError + '_ {
    move |source| LcaError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), LcaError> {
    fs::write(path, text).map_err(io_err(path))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LcaError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| LcaError::malformed(path.display().to_string(), e.to_string()))
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// One row per scenario, one column per indicator.
pub fn impacts_csv_string(results: &[ImpactResult]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["scenario_id".to_string()];
    header.extend(Indicator::ALL.iter().map(|i| i.id().to_string()));
    w.write_record(&header).expect("in-memory write");
    for r in results {
        let mut row = vec![r.scenario_id.clone()];
        row.extend(Indicator::ALL.iter().map(|&i| r.value(i).to_string()));
        w.write_record(&row).expect("in-memory write");
    }
    finish(w)
}

/// Reads `impacts.csv` back into results without flow contributions.
pub fn read_impacts_csv(path: &Path) -> Result<Vec<ImpactResult>, LcaError> {
    let name = path.display().to_string();
    let mut r = csv::Reader::from_path(path).map_err(|e| LcaError::malformed(&name, e.to_string()))?;
    let header = r.headers().map_err(|e| LcaError::malformed(&name, e.to_string()))?;
    let expected: Vec<&str> = std::iter::once("scenario_id")
        .chain(Indicator::ALL.iter().map(|i| i.id()))
        .collect();
    if header.iter().ne(expected.iter().copied()) {
        return Err(LcaError::malformed(&name, "unexpected header"));
    }
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| LcaError::malformed(&name, e.to_string()))?;
        let impacts = Indicator::ALL
            .iter()
            .enumerate()
            .map(|(k, &indicator)| {
                let v = &record[k + 1];
                v.parse::<f64>()
                    .map(|value| IndicatorImpact {
                        indicator,
                        unit: indicator.unit().to_string(),
                        value,
                    })
                    .map_err(|_| LcaError::malformed(&name, format!("bad value {v:?}")))
            })
            .collect::<Result<_, _>>()?;
        out.push(ImpactResult {
            scenario_id: record[0].to_string(),
            impacts,
            contributions: Vec::new(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonCsvRow {
    pub scenario_id: String,
    pub impact_transfer: bool,
    pub delta: Vec<f64>,
    pub delta_pct: Vec<Option<f64>>,
}

/// One row per scenario: transfer flag, then `<indicator>_delta` and
/// `<indicator>_delta_pct` for every indicator. Empty percent cells mean a
/// zero baseline.
pub fn comparison_csv_string(c: &ScenarioComparison) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["scenario_id".to_string(), "impact_transfer".to_string()];
    for i in &c.indicators {
        header.push(format!("{i}_delta"));
        header.push(format!("{i}_delta_pct"));
    }
    w.write_record(&header).expect("in-memory write");
    for row in &c.rows {
        let mut rec = vec![row.scenario_id.clone(), row.impact_transfer.to_string()];
        for (d, p) in row.delta.iter().zip(&row.delta_pct) {
            rec.push(d.to_string());
            rec.push(p.map(|p| p.to_string()).unwrap_or_default());
        }
        w.write_record(&rec).expect("in-memory write");
    }
    finish(w)
}

pub fn read_comparison_csv(path: &Path) -> Result<Vec<ComparisonCsvRow>, LcaError> {
    let name = path.display().to_string();
    let bad = |d: String| LcaError::malformed(&name, d);
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let width = r.headers().map_err(|e| bad(e.to_string()))?.len();
    if width < 2 || width % 2 != 0 {
        return Err(bad(format!("unexpected column count {width}")));
    }
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad number {s:?}")));
        let mut delta = Vec::new();
        let mut delta_pct = Vec::new();
        for k in (2..width).step_by(2) {
            delta.push(num(&record[k])?);
            delta_pct.push(match &record[k + 1] {
                "" => None,
                v => Some(num(v)?),
            });
        }
        out.push(ComparisonCsvRow {
            scenario_id: record[0].to_string(),
            impact_transfer: record[1]
                .parse()
                .map_err(|_| bad(format!("bad flag {:?}", &record[1])))?,
            delta,
            delta_pct,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartSeries {
    pub indicator: Indicator,
    pub unit: String,
    pub values: Vec<f64>,
    /// Each value divided by the largest absolute value of this indicator.
    pub share_of_max: Vec<f64>,
    pub delta_pct: Vec<Option<f64>>,
}

/// Per-indicator bars normalized to the largest scenario, for charting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartData {
    pub baseline_id: String,
    pub scenarios: Vec<String>,
    pub transfer: Vec<bool>,
    pub series: Vec<ChartSeries>,
}

pub fn chart_data(c: &ScenarioComparison) -> ChartData {
    let series = c
        .indicators
        .iter()
        .enumerate()
        .map(|(k, &indicator)| {
            let values: Vec<f64> = c.rows.iter().map(|r| r.values[k]).collect();
            let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            ChartSeries {
                indicator,
                unit: c.units[k].clone(),
                share_of_max: values.iter().map(|v| if max == 0.0 { 0.0 } else { v / max }).collect(),
                delta_pct: c.rows.iter().map(|r| r.delta_pct[k]).collect(),
                values,
            }
        })
        .collect();
    ChartData {
        baseline_id: c.baseline_id.clone(),
        scenarios: c.rows.iter().map(|r| r.scenario_id.clone()).collect(),
        transfer: c.rows.iter().map(|r| r.impact_transfer).collect(),
        series,
    }
}
