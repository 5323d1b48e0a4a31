//! Named example surfaces, one or more per class row.
//!
//! The catalog is a versioned JSON document `{"schema": 1, "entries": [...]}`.
//! A copy ships inside the crate ([`Catalog::builtin`]); others can be read
//! from disk with [`Catalog::load`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{blow_down, classes_consistent_with, SurfaceClass};
use crate::classify::LatticeClass;
use crate::lattice::Parity;
use crate::surface::{consistency_report, SurfaceInvariants};

pub const CATALOG_SCHEMA: u32 = 1;

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(String),
    #[error("malformed catalog: {0}")]
    Parse(String),
    #[error("unsupported catalog schema {0}")]
    Schema(u32),
    #[error("duplicate catalog entry {0}")]
    Duplicate(String),
    #[error("catalog entry {name}: {reason}")]
    Invalid { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub invariants: SurfaceInvariants,
    pub class_label: SurfaceClass,
    /// Blow-ups separating the surface from its minimal model.
    pub blowups: u32,
    /// `None` when the form is not determined by what is recorded.
    pub known_lattice: Option<LatticeClass>,
    /// Whether the form is even, when known. Not derivable from invariants.
    pub even_form: Option<bool>,
    pub notes: String,
}

impl CatalogEntry {
    pub fn parity_hint(&self) -> Option<Parity> {
        self.even_form
            .map(|even| if even { Parity::Even } else { Parity::Odd })
    }

    /// Checks that the invariants are consistent and that the blown-down
    /// tuple is accepted by the labeled class row.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let invalid = |reason: String| CatalogError::Invalid {
            name: self.name.clone(),
            reason,
        };
        let report = consistency_report(&self.invariants);
        if !report.is_empty() {
            return Err(invalid(format!("inconsistent invariants: {report:?}")));
        }
        let minimal = blow_down(&self.invariants, self.blowups)
            .ok_or_else(|| invalid("too many blow-ups".into()))?;
        if !classes_consistent_with(&minimal).contains(&self.class_label) {
            return Err(invalid(format!(
                "minimal model is not {}",
                self.class_label
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: u32,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog compiled into the crate.
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("shipped catalog is valid")
    }

    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        Catalog::from_json(&text)
    }

    /// Parses and validates every entry.
    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let catalog: Catalog =
            serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
        if catalog.schema != CATALOG_SCHEMA {
            return Err(CatalogError::Schema(catalog.schema));
        }
        let mut seen = std::collections::BTreeSet::new();
        for entry in &catalog.entries {
            if !seen.insert(entry.name.as_str()) {
                return Err(CatalogError::Duplicate(entry.name.clone()));
            }
            entry.validate()?;
        }
        Ok(catalog)
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}
