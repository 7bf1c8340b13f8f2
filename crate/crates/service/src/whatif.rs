use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::Json;
use serde::Serialize;
use serde_json::{json, Value};
use wearlca_core::lca::{
    characterize, compare, named_scenario, named_scenario_ids, AnodeParams, CharacterizationTable, ImpactResult,
    LcaError, NamedRef, Scenario, ScenarioCase, ScenarioComparison, ScenarioSpec,
};

use crate::{ApiError, AppState};

pub const LIFESPAN_RANGE: (f64, f64) = (1.0, 2.0);
pub const SPEED_RANGE: (f64, f64) = (1.0, 1.5);

#[derive(Debug, thiserror::Error)]
pub enum WhatIfError {
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("custom inventories are not supported here; use the CLI")]
    CustomCase,
    #[error(transparent)]
    Lca(#[from] LcaError),
}

#[derive(Debug, Serialize)]
pub struct WhatIfResponse {
    /// The evaluated scenario with its assumption ledger.
    pub scenario: Scenario,
    pub result: ImpactResult,
    pub baseline: ImpactResult,
    /// Rows are `[baseline, scenario]`.
    pub comparison: ScenarioComparison,
}

fn check_range(name: &'static str, value: f64, (min, max): (f64, f64)) -> Result<(), WhatIfError> {
    if value >= min && value <= max {
        Ok(())
    } else {
        Err(WhatIfError::OutOfRange { name, value, min, max })
    }
}

fn baseline_spec(case: &ScenarioCase) -> Result<ScenarioCase, WhatIfError> {
    let named = |name: &str| ScenarioCase::Named(NamedRef { name: name.into() });
    match case {
        ScenarioCase::Machining(_) => Ok(named("machining:baseline")),
        ScenarioCase::Anode(p) => Ok(ScenarioCase::Anode(AnodeParams {
            remanufacture: false,
            ..*p
        })),
        ScenarioCase::Named(n) => {
            let base = if n.name.starts_with("machining:") {
                "machining:baseline".to_string()
            } else if let Some(market) = n.name.strip_prefix("anode:").and_then(|r| r.split(':').next()) {
                format!("anode:{market}:base")
            } else {
                return Err(LcaError::UnknownScenario(n.name.clone()).into());
            };
            Ok(named(&base))
        }
        ScenarioCase::Custom(_) => Err(WhatIfError::CustomCase),
    }
}

/// Evaluates one scenario and compares it with the baseline of its case.
pub fn evaluate_whatif(spec: &ScenarioSpec, table: &CharacterizationTable) -> Result<WhatIfResponse, WhatIfError> {
    match &spec.case {
        ScenarioCase::Machining(p) => {
            check_range("lifespan_factor", p.lifespan_factor, LIFESPAN_RANGE)?;
            check_range("speed_factor", p.speed_factor, SPEED_RANGE)?;
        }
        ScenarioCase::Anode(p) => {
            check_range("refurbishment_fraction", p.refurbishment_fraction, (0.0, 1.0))?;
            check_range("production_energy_kwh", p.production_energy_kwh, (0.0, f64::MAX))?;
        }
        ScenarioCase::Named(n) => {
            named_scenario(&n.name, table.registry())?;
        }
        ScenarioCase::Custom(_) => return Err(WhatIfError::CustomCase),
    }
    let base_case = baseline_spec(&spec.case)?;
    let scenario = spec.build(table.registry())?;
    let base_scenario = ScenarioSpec::new(base_case).build(table.registry())?;
    let result = characterize(&scenario, table)?;
    let baseline = characterize(&base_scenario, table)?;
    let comparison = compare(&[baseline.clone(), result.clone()], &baseline.scenario_id)?;
    Ok(WhatIfResponse {
        scenario,
        result,
        baseline,
        comparison,
    })
}

pub(crate) async fn post_whatif(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Json<Value>, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.to_string()))?;
    let spec = ScenarioSpec::from_json_str(text, "request body")
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    let response = evaluate_whatif(&spec, state.table())
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    Ok(Json(json!(response)))
}

pub(crate) async fn list_scenarios(State(state): State<Arc<AppState>>) -> Result<Json<Value>, ApiError> {
    let scenarios = named_scenario_ids()
        .into_iter()
        .map(|id| {
            let s = named_scenario(id, state.table().registry()).map_err(ApiError::internal)?;
            Ok(json!({ "scenario_id": id, "assumptions": s.assumptions }))
        })
        .collect::<Result<Vec<_>, ApiError>>()?;
    Ok(Json(json!({
        "scenarios": scenarios,
        "ranges": {
            "lifespan_factor": [LIFESPAN_RANGE.0, LIFESPAN_RANGE.1],
            "speed_factor": [SPEED_RANGE.0, SPEED_RANGE.1],
        }
    })))
}
