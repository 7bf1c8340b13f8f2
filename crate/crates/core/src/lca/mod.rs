//! Life-cycle impact assessment: flow inventories scaled to a functional
//! unit, characterization over 18 midpoint indicators, case-study scenario
//! builders and scenario comparison.

pub mod cases;
mod compare;
mod error;
mod factors;
mod flows;
mod impact;
mod indicator;
pub mod report;
mod scenario;
mod spec;

pub use cases::{
    anode_scenario, anode_scenario_with, machining_scenario, machining_scenario_with, tradeoff, AnodeParams,
    MachiningParams, Market,
};
pub use compare::{compare, ComparisonRow, IndicatorRanking, ScenarioComparison};
pub use error::LcaError;
pub use factors::{CharacterizationTable, CoverageReport, Factor};
pub use flows::{FlowInfo, FlowRegistry, FlowUnit};
pub use impact::{characterize, FlowContribution, ImpactResult, IndicatorImpact};
pub use indicator::Indicator;
pub use scenario::{Assumption, FlowAmount, FunctionalUnit, Process, Scenario, Source};
pub use spec::{
    named_scenario, named_scenario_ids, CustomInventory, FlowOverride, NamedRef, ScenarioCase, ScenarioSpec,
    SCENARIO_SCHEMA_VERSION,
};
