use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LcaError;

/// Midpoint impact categories (ReCiPe 2016, hierarchist), in reporting order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Indicator {
    GlobalWarming,
    StratosphericOzoneDepletion,
    IonizingRadiation,
    OzoneFormationHumanHealth,
    FineParticulateMatterFormation,
    OzoneFormationTerrestrialEcosystems,
    TerrestrialAcidification,
    FreshwaterEutrophication,
    MarineEutrophication,
    TerrestrialEcotoxicity,
    FreshwaterEcotoxicity,
    MarineEcotoxicity,
    HumanCarcinogenicToxicity,
    HumanNonCarcinogenicToxicity,
    LandUse,
    MineralResourceScarcity,
    FossilResourceScarcity,
    WaterConsumption,
}

use Indicator::*;

impl Indicator {
    pub const COUNT: usize = 18;

    pub const ALL: [Indicator; Self::COUNT] = [
        GlobalWarming,
        StratosphericOzoneDepletion,
        IonizingRadiation,
        OzoneFormationHumanHealth,
        FineParticulateMatterFormation,
        OzoneFormationTerrestrialEcosystems,
        TerrestrialAcidification,
        FreshwaterEutrophication,
        MarineEutrophication,
        TerrestrialEcotoxicity,
        FreshwaterEcotoxicity,
        MarineEcotoxicity,
        HumanCarcinogenicToxicity,
        HumanNonCarcinogenicToxicity,
        LandUse,
        MineralResourceScarcity,
        FossilResourceScarcity,
        WaterConsumption,
    ];

    /// Position in [`Indicator::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn id(self) -> &'static str {
        match self {
            GlobalWarming => "global_warming",
            StratosphericOzoneDepletion => "stratospheric_ozone_depletion",
            IonizingRadiation => "ionizing_radiation",
            OzoneFormationHumanHealth => "ozone_formation_human_health",
            FineParticulateMatterFormation => "fine_particulate_matter_formation",
            OzoneFormationTerrestrialEcosystems => "ozone_formation_terrestrial_ecosystems",
            TerrestrialAcidification => "terrestrial_acidification",
            FreshwaterEutrophication => "freshwater_eutrophication",
            MarineEutrophication => "marine_eutrophication",
            TerrestrialEcotoxicity => "terrestrial_ecotoxicity",
            FreshwaterEcotoxicity => "freshwater_ecotoxicity",
            MarineEcotoxicity => "marine_ecotoxicity",
            HumanCarcinogenicToxicity => "human_carcinogenic_toxicity",
            HumanNonCarcinogenicToxicity => "human_non_carcinogenic_toxicity",
            LandUse => "land_use",
            MineralResourceScarcity => "mineral_resource_scarcity",
            FossilResourceScarcity => "fossil_resource_scarcity",
            WaterConsumption => "water_consumption",
        }
    }

    /// Reference unit of the characterized impact.
    pub fn unit(self) -> &'static str {
        match self {
            GlobalWarming => "kg CO2 eq",
            StratosphericOzoneDepletion => "kg CFC11 eq",
            IonizingRadiation => "kBq Co-60 eq",
            OzoneFormationHumanHealth | OzoneFormationTerrestrialEcosystems => "kg NOx eq",
            FineParticulateMatterFormation => "kg PM2.5 eq",
            TerrestrialAcidification => "kg SO2 eq",
            FreshwaterEutrophication => "kg P eq",
            MarineEutrophication => "kg N eq",
            TerrestrialEcotoxicity
            | FreshwaterEcotoxicity
            | MarineEcotoxicity
            | HumanCarcinogenicToxicity
            | HumanNonCarcinogenicToxicity => "kg 1,4-DCB",
            LandUse => "m2a crop eq",
            MineralResourceScarcity => "kg Cu eq",
            FossilResourceScarcity => "kg oil eq",
            WaterConsumption => "m3",
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Indicator {
    type Err = LcaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Indicator::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| LcaError::UnknownIndicator(s.to_string()))
    }
}
