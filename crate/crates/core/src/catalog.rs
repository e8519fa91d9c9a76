//! Named rational surfaces, their lines and conics, and the re-embedding table.
//!
//! The catalog is a JSON document (see `data/catalog.json` for the shipped
//! one). Every record is validated when loaded; the first violated invariant
//! aborts the load with a [`CatalogError`] naming the surface and the field.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::RaoKind;
use crate::lattice::{self, Basis, DivisorClass, LatticeError, Polarized};

const BUILTIN: &str = include_str!("../data/catalog.json");
pub const CATALOG_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown surface {id:?}; valid ids: {}", valid.join(", "))]
    UnknownSurface { id: String, valid: Vec<String> },
    #[error("surface {id}: {reason}")]
    Invalid { id: String, reason: String },
    #[error("surface {id}: family dimension is not defined for this model")]
    NoFamilyDimension { id: String },
    #[error("catalog schema version {found} is not supported (expected {CATALOG_SCHEMA_VERSION})")]
    Schema { found: u32 },
    #[error("catalog parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T, E = CatalogError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    P2,
    P3,
    P4,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ambient::P2 => "P2",
            Ambient::P3 => "P3",
            Ambient::P4 => "P4",
        };
        f.write_str(s)
    }
}

/// A special configuration of the blown-up points under which an extra class
/// is represented by a line. Recorded, not derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPosition {
    pub condition: String,
    #[serde(with = "coeff_list")]
    pub line_class: DivisorClass,
}

/// Whether a line class is rigid or moves in a pencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineFamily {
    /// `L² = −1`
    Finite,
    /// `L² = 0`: a ruling
    OneParameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineClass {
    pub class: DivisorClass,
    pub family: LineFamily,
}

/// All line classes of a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineClassSet {
    pub classes: Vec<LineClass>,
}

impl LineClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LineClass> {
        self.classes.iter()
    }

    pub fn contains(&self, class: &DivisorClass) -> bool {
        self.classes.iter().any(|l| &l.class == class)
    }
}

/// A rational surface with its polarization.
#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub id: String,
    pub ambient: Ambient,
    #[serde(rename = "lattice")]
    pub basis: Basis,
    #[serde(with = "coeff_list")]
    pub hyperplane: DivisorClass,
    #[serde(with = "coeff_list")]
    pub canonical: DivisorClass,
    pub degree: i64,
    pub sectional_genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_dim: Option<i64>,
    /// h-vector of a general codimension-two linear section, when the surface
    /// is ACM; determines its Hilbert function.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_h_vector: Option<Vec<i64>>,
    #[serde(default)]
    pub special_position_notes: Vec<SpecialPosition>,
    #[serde(skip)]
    lines: OnceLock<LineClassSet>,
    #[serde(skip)]
    conics: OnceLock<Vec<DivisorClass>>,
}

impl Clone for SurfaceModel {
    fn clone(&self) -> Self {
        Self {
            id: self.id.clone(),
            ambient: self.ambient,
            basis: self.basis,
            hyperplane: self.hyperplane.clone(),
            canonical: self.canonical.clone(),
            degree: self.degree,
            sectional_genus: self.sectional_genus,
            family_dim: self.family_dim,
            section_h_vector: self.section_h_vector.clone(),
            special_position_notes: self.special_position_notes.clone(),
            lines: self.lines.clone(),
            conics: self.conics.clone(),
        }
    }
}

impl PartialEq for SurfaceModel {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.ambient == other.ambient
            && self.basis == other.basis
            && self.hyperplane == other.hyperplane
            && self.canonical == other.canonical
            && self.degree == other.degree
            && self.sectional_genus == other.sectional_genus
            && self.family_dim == other.family_dim
            && self.section_h_vector == other.section_h_vector
            && self.special_position_notes == other.special_position_notes
    }
}

impl Polarized for SurfaceModel {
    fn hyperplane(&self) -> &DivisorClass {
        &self.hyperplane
    }

    fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }
}

impl SurfaceModel {
    /// Number of blown-up points, or `None` on the quadric.
    pub fn blown_points(&self) -> Option<usize> {
        match self.basis {
            Basis::BlownUpPlane(n) => Some(n),
            Basis::Quadric => None,
        }
    }

    /// `H·K`.
    pub fn hk(&self) -> i64 {
        lattice::intersect(&self.hyperplane, &self.canonical).expect("validated at load")
    }

    /// Builds a class on this surface from raw coefficients.
    pub fn class(&self, coeffs: &[i64]) -> Result<DivisorClass> {
        Ok(DivisorClass::new(self.basis, coeffs.to_vec())?)
    }

    /// Classes `L` with `L·H = 1`, `pₐ(L) = 0` and `L² ∈ {−1, 0}`.
    ///
    /// Found by [`lattice::enumerate_classes`], whose Hodge-index box is
    /// exhaustive, so the set is complete. Ordered rigid lines first.
    pub fn lines(&self) -> &LineClassSet {
        self.lines.get_or_init(|| {
            let mut classes = Vec::new();
            // genus 0 with L² = s forces L·K = −2 − s
            for (s, family) in [(-1, LineFamily::Finite), (0, LineFamily::OneParameter)] {
                let found = lattice::enumerate_classes(&self.hyperplane, &self.canonical, 1, s, -2 - s)
                    .expect("line enumeration stays far from overflow");
                classes.extend(found.into_iter().map(|class| LineClass { class, family }));
            }
            LineClassSet { classes }
        })
    }

    /// Classes `Γ` with `Γ·H = 2`, `pₐ(Γ) = 0` and `Γ² ≥ 0`.
    pub fn conics(&self) -> &[DivisorClass] {
        self.conics.get_or_init(|| {
            let hh = self.degree;
            let mut out = Vec::new();
            // Hodge: Γ² ≤ 4/H²
            for s in 0..=(4 / hh) {
                out.extend(
                    lattice::enumerate_classes(&self.hyperplane, &self.canonical, 2, s, -2 - s)
                        .expect("conic enumeration stays far from overflow"),
                );
            }
            out.sort();
            out
        })
    }

    /// Dimension of the family of such surfaces in their ambient space.
    pub fn family_dim(&self) -> Result<i64> {
        self.family_dim
            .ok_or_else(|| CatalogError::NoFamilyDimension { id: self.id.clone() })
    }

    fn validate(&mut self) -> Result<()> {
        let invalid = |reason: String| CatalogError::Invalid {
            id: self.id.clone(),
            reason,
        };
        let basis = self.basis;
        let reattach = |c: &mut DivisorClass| -> Result<()> {
            *c = DivisorClass::new(basis, c.coeffs().to_vec())?;
            Ok(())
        };
        reattach(&mut self.hyperplane)?;
        reattach(&mut self.canonical)?;
        for note in &mut self.special_position_notes {
            reattach(&mut note.line_class)?;
        }
        if self.canonical != self.basis.canonical_class() {
            return Err(invalid(format!(
                "canonical class {} is not {}",
                self.canonical,
                self.basis.canonical_class()
            )));
        }
        let deg = lattice::self_intersection(&self.hyperplane)?;
        if deg != self.degree {
            return Err(invalid(format!("degree {} but H² = {deg}", self.degree)));
        }
        if deg <= 0 {
            return Err(invalid("hyperplane class must have positive square".into()));
        }
        let genus = lattice::arithmetic_genus(&self.hyperplane, self)?;
        if genus != self.sectional_genus {
            return Err(invalid(format!(
                "sectional genus {} but adjunction gives {genus}",
                self.sectional_genus
            )));
        }
        if let Some(h) = &self.section_h_vector {
            if h.first() != Some(&1) || h.iter().any(|&x| x < 0) {
                return Err(invalid(format!("section h-vector {h:?} must start with 1")));
            }
            let sum: i64 = h.iter().sum();
            let g = 1 + h.iter().enumerate().map(|(i, &x)| (i as i64 - 1) * x).sum::<i64>();
            if sum != self.degree || g != self.sectional_genus {
                return Err(invalid(format!("section h-vector {h:?} gives degree {sum}, genus {g}")));
            }
        }
        for note in &self.special_position_notes {
            let c = &note.line_class;
            if c.basis() != self.basis || lattice::degree(c, self)? != 1 || lattice::arithmetic_genus(c, self)? != 0 {
                return Err(invalid(format!("special-position class {c} is not a line class")));
            }
        }
        if self.family_dim.is_none() && self.ambient == Ambient::P4 {
            if let Basis::BlownUpPlane(n) = self.basis {
                self.family_dim = Some(default_family_dim(n));
            }
        }
        if (matches!(self.ambient, Ambient::P2) || matches!(self.basis, Basis::Quadric)) && self.family_dim.is_some() {
            return Err(invalid("family dimension is undefined for this model".into()));
        }
        Ok(())
    }
}

/// Point positions modulo plane automorphisms plus the choice of embedding in
/// P⁴: `2n − 8 + 24`.
pub fn default_family_dim(n: usize) -> i64 {
    2 * n as i64 - 8 + 24
}

/// A curve with the given invariants that may be re-represented as `class` on
/// `surface` during chain search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewitnessEntry {
    pub degree: i64,
    pub genus: i64,
    pub rao: RaoKind,
    pub surface: String,
    #[serde(with = "coeff_list::raw")]
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub surfaces: Vec<SurfaceModel>,
    #[serde(default)]
    pub rewitness: Vec<RewitnessEntry>,
}

impl Catalog {
    /// The catalog shipped with the crate, parsed and validated once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_json_str(BUILTIN).expect("shipped catalog is valid"))
    }

    pub fn from_path(path: &Path) -> Result<Catalog> {
        Catalog::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_json_str(text: &str) -> Result<Catalog> {
        let mut catalog: Catalog = serde_json::from_str(text)?;
        if catalog.schema_version != CATALOG_SCHEMA_VERSION {
            return Err(CatalogError::Schema {
                found: catalog.schema_version,
            });
        }
        let mut seen = BTreeSet::new();
        for s in &mut catalog.surfaces {
            if !seen.insert(s.id.clone()) {
                return Err(CatalogError::Invalid {
                    id: s.id.clone(),
                    reason: "duplicate id".into(),
                });
            }
            s.validate()?;
        }
        for entry in &catalog.rewitness {
            let s = catalog.surface(&entry.surface)?;
            let class = s.class(&entry.class)?;
            let d = lattice::degree(&class, s)?;
            let g = lattice::arithmetic_genus(&class, s)?;
            if (d, g) != (entry.degree, entry.genus) {
                return Err(CatalogError::Invalid {
                    id: entry.surface.clone(),
                    reason: format!(
                        "re-embedding class {class} has (d,g)=({d},{g}), declared ({},{})",
                        entry.degree, entry.genus
                    ),
                });
            }
        }
        Ok(catalog)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    /// Looks a surface up by id.
    pub fn surface(&self, id: &str) -> Result<&SurfaceModel> {
        self.surfaces
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| CatalogError::UnknownSurface {
                id: id.to_string(),
                valid: self.ids(),
            })
    }

    pub fn ids(&self) -> Vec<String> {
        self.surfaces.iter().map(|s| s.id.clone()).collect()
    }
}

/// Looks a surface up in the shipped catalog.
pub fn get_surface(id: &str) -> Result<&'static SurfaceModel> {
    Catalog::builtin().surface(id)
}

/// Line classes of a surface.
pub fn lines_on(s: &SurfaceModel) -> &LineClassSet {
    s.lines()
}

/// Conic classes of a surface.
pub fn conic_classes(s: &SurfaceModel) -> &[DivisorClass] {
    s.conics()
}

pub fn surface_family_dim(s: &SurfaceModel) -> Result<i64> {
    s.family_dim()
}

/// Classes are stored in the catalog as bare coefficient lists; the lattice
/// comes from the enclosing record and is re-attached during validation.
mod coeff_list {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::lattice::DivisorClass;

    pub fn serialize<S: Serializer>(c: &DivisorClass, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(c.coeffs())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DivisorClass, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        // provisional lattice; `SurfaceModel::validate` re-attaches the real one
        Ok(DivisorClass::blown_up(v[0], &v[1..]))
    }

    pub mod raw {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(c: &[i64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(c)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
            Vec::<i64>::deserialize(d)
        }
    }
}
