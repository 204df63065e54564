//! Problem instances on disk: a set function, an optional constraint and an
//! optional noise model, stored as TOML.
//!
//! ```toml
//! [function]
//! kind = "weighted_additive_quadratic"
//! weights = [5.0, 3.0, 8.0]
//! cost = 1.0
//!
//! [constraint]
//! kind = "uniform"
//! rank = 2
//!
//! [noise]
//! distribution = "gaussian"
//! variance = 0.1
//! ```
//!
//! Reals are written in shortest round-trip form, so values survive a save
//! and reload bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::noise::NoiseSpec;
use crate::set::ElementSet;
use crate::setfn::SetFunctionSpec;

/// Serialized form of a [`Matroid`] over the function's ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintSpec {
    Unconstrained,
    Uniform { rank: usize },
    Partition { parts: Vec<Vec<usize>>, capacities: Vec<usize> },
    Contracted { base: Box<ConstraintSpec>, pinned: Vec<usize> },
}

impl ConstraintSpec {
    pub fn build(&self, n: usize) -> Result<Matroid> {
        let ground = crate::set::GroundSet::new(n)?;
        match self {
            Self::Unconstrained => Ok(Matroid::free(ground)),
            Self::Uniform { rank } => Matroid::uniform(ground, *rank),
            Self::Partition { parts, capacities } => {
                Matroid::partition(ground, parts.clone(), capacities.clone())
            }
            Self::Contracted { base, pinned } => {
                base.build(n)?.contract(&ElementSet::from_elements(n, pinned.iter().copied())?)
            }
        }
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        match m {
            Matroid::Uniform { rank, .. } => Self::Uniform { rank: *rank },
            Matroid::Partition { parts, capacities, .. } => Self::Partition {
                parts: parts.iter().map(|p| p.to_vec()).collect(),
                capacities: capacities.clone(),
            },
            Matroid::Contracted { base, pinned } => Self::Contracted {
                base: Box::new(Self::from_matroid(base)),
                pinned: pinned.to_vec(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub function: SetFunctionSpec,
    #[serde(default = "unconstrained")]
    pub constraint: ConstraintSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSpec>,
}

fn unconstrained() -> ConstraintSpec {
    ConstraintSpec::Unconstrained
}

impl Instance {
    pub fn new(function: SetFunctionSpec) -> Self {
        Self { function, constraint: ConstraintSpec::Unconstrained, noise: None }
    }

    pub fn validate(&self) -> Result<()> {
        self.function.validate()?;
        self.matroid()?;
        if let Some(noise) = &self.noise {
            noise.validate()?;
        }
        Ok(())
    }

    pub fn matroid(&self) -> Result<Matroid> {
        self.constraint.build(self.function.len())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let inst: Self = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml_string()?)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }
}
