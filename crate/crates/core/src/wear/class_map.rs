use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WearError;

/// Class label stored in a mask pixel. Masks are 8-bit, so ids fit in a byte.
pub type ClassId = u8;

/// Product family whose wear taxonomy a mask follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductFamily {
    MachiningTool,
    RotatingAnode,
}

impl ProductFamily {
    pub const ALL: [ProductFamily; 2] = [ProductFamily::MachiningTool, ProductFamily::RotatingAnode];

    pub fn id(self) -> &'static str {
        match self {
            ProductFamily::MachiningTool => "machining_tool",
            ProductFamily::RotatingAnode => "rotating_anode",
        }
    }

    /// Machining-tool images show a black background around the cutting edge;
    /// focal-track patches are all surface.
    pub fn has_background(self) -> bool {
        matches!(self, ProductFamily::MachiningTool)
    }

    pub fn class_map(self) -> ClassMap {
        ClassMap::for_family(self)
    }

    fn class_names(self) -> &'static [&'static str] {
        match self {
            ProductFamily::MachiningTool => &["background", "flank_wear", "chipping", "built_up_edge"],
            ProductFamily::RotatingAnode => &["normal_surface", "cracks", "molten_area"],
        }
    }

    fn default_colors(self) -> &'static [[u8; 3]] {
        match self {
            ProductFamily::MachiningTool => &[[0, 0, 0], [200, 40, 40], [40, 170, 70], [40, 90, 220]],
            ProductFamily::RotatingAnode => &[[150, 150, 150], [240, 200, 30], [230, 90, 20]],
        }
    }
}

impl fmt::Display for ProductFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ProductFamily {
    type Err = WearError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProductFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| WearError::InvalidClassMap(format!("unknown product family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub id: ClassId,
    pub name: String,
    /// Overlay colour as RGB.
    pub color: [u8; 3],
}

/// Ordered wear-class taxonomy of one product family.
///
/// Ids are contiguous from 0 and the class names are fixed per family; only
/// display colours may differ from the defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClassMap")]
pub struct ClassMap {
    family: ProductFamily,
    classes: Vec<ClassInfo>,
}

#[derive(Deserialize)]
struct RawClassMap {
    family: ProductFamily,
    classes: Vec<ClassInfo>,
}

impl TryFrom<RawClassMap> for ClassMap {
    type Error = WearError;

    fn try_from(raw: RawClassMap) -> Result<Self, Self::Error> {
        ClassMap::new(raw.family, raw.classes)
    }
}

impl ClassMap {
    pub fn new(family: ProductFamily, classes: Vec<ClassInfo>) -> Result<Self, WearError> {
        let names = family.class_names();
        if classes.len() != names.len() {
            return Err(WearError::InvalidClassMap(format!(
                "{family} needs exactly {} classes, got {}",
                names.len(),
                classes.len()
            )));
        }
        for (idx, (class, expected)) in classes.iter().zip(names).enumerate() {
            if usize::from(class.id) != idx {
                return Err(WearError::InvalidClassMap(format!(
                    "class ids must be contiguous from 0, found {} at position {idx}",
                    class.id
                )));
            }
            if class.name != *expected {
                return Err(WearError::InvalidClassMap(format!(
                    "class {idx} of {family} must be named {expected:?}, got {:?}",
                    class.name
                )));
            }
        }
        Ok(Self { family, classes })
    }

    pub fn for_family(family: ProductFamily) -> Self {
        let classes = family
            .class_names()
            .iter()
            .zip(family.default_colors())
            .enumerate()
            .map(|(id, (name, color))| ClassInfo {
                id: id as ClassId,
                name: (*name).to_string(),
                color: *color,
            })
            .collect();
        Self { family, classes }
    }

    pub fn machining_tool() -> Self {
        Self::for_family(ProductFamily::MachiningTool)
    }

    pub fn rotating_anode() -> Self {
        Self::for_family(ProductFamily::RotatingAnode)
    }

    pub fn family(&self) -> ProductFamily {
        self.family
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, id: ClassId) -> bool {
        usize::from(id) < self.classes.len()
    }

    pub fn get(&self, id: ClassId) -> Option<&ClassInfo> {
        self.classes.get(usize::from(id))
    }

    pub fn name(&self, id: ClassId) -> Option<&str> {
        self.get(id).map(|c| c.name.as_str())
    }

    pub fn id_of(&self, name: &str) -> Option<ClassId> {
        self.classes.iter().find(|c| c.name == name).map(|c| c.id)
    }

    pub fn ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.classes.iter().map(|c| c.id)
    }
}
