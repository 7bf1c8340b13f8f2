//! Scenario builders for the two case studies: a turning process for
//! 42CrMo4 shafts and a rotating X-ray anode product-service system.

use serde::{Deserialize, Serialize};

use super::{Assumption, FlowAmount, FlowRegistry, FunctionalUnit, LcaError, Process, Scenario, Source};

/// Seconds of cutting per shaft at the baseline speed.
pub const SECONDS_PER_SHAFT: f64 = 30.0;
pub const SHAFTS_PER_HOUR: f64 = 100.0;
/// Tool life at baseline speed, minutes of cutting.
pub const BASE_TOOL_LIFE_MIN: f64 = 30.0;
pub const MACHINE_ENERGY_KWH: f64 = 12.5;
pub const CUTTING_FLUID_L: f64 = 0.0155;
/// Energy of one wear-model training campaign on the machining dataset.
pub const MACHINING_CV_TRAINING_KWH: f64 = 2.395;
/// Shafts produced per trained model.
pub const SHAFTS_PER_MODEL: f64 = 1000.0;

/// Speed factor and the share of tool life that remains at that speed.
pub const TRADEOFF_ANCHORS: [(f64, f64); 3] = [(1.0, 1.0), (1.2, 0.7), (1.5, 0.3)];

/// Remaining tool-life share at `speed_factor`: piecewise linear through
/// [`TRADEOFF_ANCHORS`], extended linearly past either end.
pub fn tradeoff(speed_factor: f64) -> f64 {
    let a = TRADEOFF_ANCHORS;
    let seg = if speed_factor <= a[1].0 {
        (a[0], a[1])
    } else {
        (a[1], a[2])
    };
    let ((x0, y0), (x1, y1)) = seg;
    if speed_factor == x0 {
        return y0;
    }
    if speed_factor == x1 {
        return y1;
    }
    y0 + (y1 - y0) * (speed_factor - x0) / (x1 - x0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MachiningParams {
    pub lifespan_factor: f64,
    pub speed_factor: f64,
    pub cv_assisted: bool,
}

impl MachiningParams {
    pub const fn new(lifespan_factor: f64, speed_factor: f64, cv_assisted: bool) -> Self {
        Self {
            lifespan_factor,
            speed_factor,
            cv_assisted,
        }
    }
}

fn machining_fu() -> FunctionalUnit {
    FunctionalUnit::new(
        "manufacture 100 shafts (42CrMo4, 800 g) per hour",
        SHAFTS_PER_HOUR,
        "shafts/h",
    )
    .expect("positive")
}

pub fn machining_scenario(lifespan_factor: f64, speed_factor: f64, cv_assisted: bool) -> Result<Scenario, LcaError> {
    machining_scenario_with(
        &MachiningParams::new(lifespan_factor, speed_factor, cv_assisted),
        &FlowRegistry::bundled(),
    )
}

pub fn machining_scenario_with(p: &MachiningParams, registry: &FlowRegistry) -> Result<Scenario, LcaError> {
    for (name, value) in [("lifespan_factor", p.lifespan_factor), ("speed_factor", p.speed_factor)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(LcaError::InvalidFactor {
                name: name.into(),
                value,
            });
        }
    }
    let t = tradeoff(p.speed_factor);
    let cutting_min = SHAFTS_PER_HOUR * SECONDS_PER_SHAFT / 60.0 / p.speed_factor;
    let life_min = BASE_TOOL_LIFE_MIN * p.lifespan_factor * t;
    if life_min.is_nan() || life_min <= 0.0 {
        return Err(LcaError::InvalidFactor {
            name: format!("effective tool life at speed factor {}", p.speed_factor),
            value: life_min,
        });
    }
    let base_cutting_min = SHAFTS_PER_HOUR * SECONDS_PER_SHAFT / 60.0;
    let ratio = cutting_min / base_cutting_min;
    let tools = cutting_min / life_min;

    let mut processes = vec![
        Process::new(
            "turning",
            "Turning of shafts",
            vec![
                FlowAmount::of(registry, "electricity_de", MACHINE_ENERGY_KWH * ratio)?,
                FlowAmount::of(registry, "cutting_fluid", CUTTING_FLUID_L * ratio)?,
            ],
        )?,
        Process::new(
            "tooling",
            "Cutting inserts worn per functional unit",
            vec![FlowAmount::of(registry, "cutting_tool", tools)?],
        )?,
    ];
    if p.cv_assisted {
        processes.push(Process::new(
            "cv_training",
            "Wear-model training, share per functional unit",
            vec![FlowAmount::of(
                registry,
                "electricity_cv_training",
                MACHINING_CV_TRAINING_KWH * SHAFTS_PER_HOUR / SHAFTS_PER_MODEL,
            )?],
        )?);
    }

    let assumptions = vec![
        Assumption::new("lifespan_factor", p.lifespan_factor, Source::User),
        Assumption::new("speed_factor", p.speed_factor, Source::User),
        Assumption::new("cv_assisted", p.cv_assisted, Source::User),
        Assumption::new("cutting_time_min", cutting_min, Source::CaseStudy),
        Assumption::new("tradeoff_share", t, Source::CaseStudy),
        Assumption::new("effective_tool_life_min", life_min, Source::Assumed),
        Assumption::new(
            "tool_life_composition",
            "base life x lifespan factor x speed trade-off share",
            Source::Assumed,
        ),
        Assumption::new(
            "tradeoff_between_anchors",
            "piecewise linear through (1.0, 1.0), (1.2, 0.7), (1.5, 0.3)",
            Source::Assumed,
        ),
        Assumption::new("tools_per_fu", "fractional, amortized over the hour", Source::Assumed),
        Assumption::new(
            "energy_and_fluid_scaling",
            "proportional to cutting time per functional unit",
            Source::Assumed,
        ),
        Assumption::new(
            "cv_training_amortization",
            format!("{MACHINING_CV_TRAINING_KWH} kWh per model over {SHAFTS_PER_MODEL} shafts"),
            Source::CaseStudy,
        ),
    ];
    Scenario::from_processes(machining_id(p), machining_fu(), processes, assumptions, registry)
}

fn machining_id(p: &MachiningParams) -> String {
    NAMED_MACHINING
        .iter()
        .find(|(_, q)| q == p)
        .map(|(name, _)| (*name).to_string())
        .unwrap_or_else(|| {
            format!(
                "machining:custom:l{}:s{}:{}",
                p.lifespan_factor,
                p.speed_factor,
                if p.cv_assisted { "cv" } else { "nocv" }
            )
        })
}

pub const NAMED_MACHINING: [(&str, MachiningParams); 6] = [
    ("machining:baseline", MachiningParams::new(1.0, 1.0, false)),
    ("machining:l20", MachiningParams::new(1.2, 1.0, true)),
    ("machining:s20", MachiningParams::new(1.0, 1.2, true)),
    ("machining:s50", MachiningParams::new(1.0, 1.5, true)),
    ("machining:l20s20", MachiningParams::new(1.2, 1.2, true)),
    ("machining:l20s50", MachiningParams::new(1.2, 1.5, true)),
];

/// Where the anodes are shipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Market {
    #[serde(rename = "eu")]
    Eu,
    #[serde(rename = "noneu", alias = "non_eu")]
    NonEu,
}

impl Market {
    pub fn id(self) -> &'static str {
        match self {
            Market::Eu => "eu",
            Market::NonEu => "noneu",
        }
    }

    /// One-way distances per transport mode, km.
    pub fn legs(self) -> &'static [(&'static str, f64)] {
        match self {
            Market::Eu => &[("transport_lorry", 874.0)],
            Market::NonEu => &[("transport_lorry", 124.0), ("transport_air", 8930.5)],
        }
    }
}

pub const ANODE_MASS_KG: f64 = 1.9;
pub const TUNGSTEN_RHENIUM_KG: f64 = 0.2375;
pub const GRAPHITE_KG: f64 = 0.2375;
pub const MOLYBDENUM_KG: f64 = 1.425;
/// Production-step energy per new anode. Calibrated default.
pub const DEFAULT_PRODUCTION_ENERGY_KWH: f64 = 932.0;
/// Refurbishment energy as a share of production energy. Calibrated default.
pub const DEFAULT_REFURBISHMENT_FRACTION: f64 = 0.1052;
/// Energy of the wear assessment (model training) per remanufacturing campaign.
pub const ANODE_CV_TRAINING_KWH: f64 = 2.875;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnodeParams {
    pub market: Market,
    pub remanufacture: bool,
    #[serde(default = "default_energy")]
    pub production_energy_kwh: f64,
    #[serde(default = "default_fraction")]
    pub refurbishment_fraction: f64,
}

fn default_energy() -> f64 {
    DEFAULT_PRODUCTION_ENERGY_KWH
}

fn default_fraction() -> f64 {
    DEFAULT_REFURBISHMENT_FRACTION
}

impl AnodeParams {
    pub const fn new(market: Market, remanufacture: bool) -> Self {
        Self {
            market,
            remanufacture,
            production_energy_kwh: DEFAULT_PRODUCTION_ENERGY_KWH,
            refurbishment_fraction: DEFAULT_REFURBISHMENT_FRACTION,
        }
    }
}

pub const NAMED_ANODE: [(&str, AnodeParams); 4] = [
    ("anode:eu:base", AnodeParams::new(Market::Eu, false)),
    ("anode:eu:reman", AnodeParams::new(Market::Eu, true)),
    ("anode:noneu:base", AnodeParams::new(Market::NonEu, false)),
    ("anode:noneu:reman", AnodeParams::new(Market::NonEu, true)),
];

pub fn anode_scenario(market: Market, remanufacture: bool) -> Result<Scenario, LcaError> {
    anode_scenario_with(&AnodeParams::new(market, remanufacture), &FlowRegistry::bundled())
}

fn new_anode(registry: &FlowRegistry, index: usize, energy_kwh: f64) -> Result<Process, LcaError> {
    Process::new(
        format!("anode_production_{index}"),
        format!("Production of new anode {index}"),
        vec![
            FlowAmount::of(registry, "tungsten_rhenium_alloy", TUNGSTEN_RHENIUM_KG)?,
            FlowAmount::of(registry, "graphite", GRAPHITE_KG)?,
            FlowAmount::of(registry, "molybdenum", MOLYBDENUM_KG)?,
            FlowAmount::of(registry, "anode_production_energy", energy_kwh)?,
        ],
    )
}

fn leg(registry: &FlowRegistry, id: String, name: String, market: Market) -> Result<Process, LcaError> {
    let mass_t = ANODE_MASS_KG / 1000.0;
    let flows = market
        .legs()
        .iter()
        .map(|(flow, km)| FlowAmount::of(registry, flow, mass_t * km))
        .collect::<Result<Vec<_>, _>>()?;
    Process::new(id, name, flows)
}

pub fn anode_scenario_with(p: &AnodeParams, registry: &FlowRegistry) -> Result<Scenario, LcaError> {
    if !(p.production_energy_kwh >= 0.0 && p.production_energy_kwh.is_finite()) {
        return Err(LcaError::InvalidFactor {
            name: "production_energy_kwh".into(),
            value: p.production_energy_kwh,
        });
    }
    if !(p.refurbishment_fraction >= 0.0 && p.refurbishment_fraction.is_finite()) {
        return Err(LcaError::InvalidFactor {
            name: "refurbishment_fraction".into(),
            value: p.refurbishment_fraction,
        });
    }
    let m = p.market;
    let mut processes = vec![
        new_anode(registry, 1, p.production_energy_kwh)?,
        leg(registry, "delivery_1".into(), "Delivery of anode 1".into(), m)?,
    ];
    if p.remanufacture {
        processes.push(leg(
            registry,
            "return_1".into(),
            "Return of anode 1 for refurbishment".into(),
            m,
        )?);
        processes.push(Process::new(
            "refurbishment",
            "Focal-track refurbishment of anode 1",
            vec![FlowAmount::of(
                registry,
                "anode_refurbishment_energy",
                p.refurbishment_fraction * p.production_energy_kwh,
            )?],
        )?);
        processes.push(Process::new(
            "cv_assessment",
            "Wear-model training for the remanufacturing assessment",
            vec![FlowAmount::of(
                registry,
                "electricity_cv_training",
                ANODE_CV_TRAINING_KWH,
            )?],
        )?);
        processes.push(leg(
            registry,
            "redelivery_1".into(),
            "Delivery of refurbished anode 1".into(),
            m,
        )?);
    } else {
        processes.push(new_anode(registry, 2, p.production_energy_kwh)?);
        processes.push(leg(registry, "delivery_2".into(), "Delivery of anode 2".into(), m)?);
    }

    let assumptions = vec![
        Assumption::new("market", m.id(), Source::User),
        Assumption::new("remanufacture", p.remanufacture, Source::User),
        Assumption::new("anode_mass_kg", ANODE_MASS_KG, Source::CaseStudy),
        Assumption::new(
            "one_way_legs_km",
            m.legs()
                .iter()
                .map(|(f, km)| format!("{f}={km}"))
                .collect::<Vec<_>>()
                .join(";"),
            Source::CaseStudy,
        ),
        Assumption::new(
            "production_energy_kwh",
            p.production_energy_kwh,
            if p.production_energy_kwh == DEFAULT_PRODUCTION_ENERGY_KWH {
                Source::Calibrated
            } else {
                Source::User
            },
        ),
        Assumption::new(
            "refurbishment_fraction",
            p.refurbishment_fraction,
            if p.refurbishment_fraction == DEFAULT_REFURBISHMENT_FRACTION {
                Source::Calibrated
            } else {
                Source::User
            },
        ),
        Assumption::new(
            "refurbishment_model",
            "energy only, as a share of production energy; no material inputs",
            Source::Assumed,
        ),
        Assumption::new("cv_assessment_kwh", ANODE_CV_TRAINING_KWH, Source::CaseStudy),
    ];
    let fu = FunctionalUnit::new(
        "provide two rotating X-ray anodes over five years",
        2.0,
        "anodes/5 years",
    )
    .expect("positive");
    let id = NAMED_ANODE
        .iter()
        .find(|(_, q)| q == p)
        .map(|(name, _)| (*name).to_string())
        .unwrap_or_else(|| {
            format!(
                "anode:custom:{}:{}:e{}:r{}",
                m.id(),
                if p.remanufacture { "reman" } else { "base" },
                p.production_energy_kwh,
                p.refurbishment_fraction
            )
        });
    Scenario::from_processes(id, fu, processes, assumptions, registry)
}
