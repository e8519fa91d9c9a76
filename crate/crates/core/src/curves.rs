//! Curve records and the invariants read off a curve's class on its surface:
//! multisecant lines, pencils cut by planes through conics, Rao bookkeeping,
//! and the numerical shapes of minimal curves.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, LineFamily, SurfaceModel};
use crate::lattice::{self, DivisorClass, LatticeError};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("curve has no divisor-class witness on a surface")]
    MissingWitness,
    #[error("{0} is not a conic class on {1}")]
    NotAConic(String, String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;

/// Shape of a Rao module, tracked symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RaoKind {
    /// ACM: the module vanishes
    Zero,
    /// one-dimensional, concentrated in a single degree
    SimpleK,
    /// `R/(x₀, x₁, x₂, x₃, x₄ᵃ)`
    MA(u32),
    Unknown,
}

/// Rao module up to the bookkeeping that liaison changes: a shift and a
/// duality flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RaoTag {
    pub kind: RaoKind,
    /// degree in which the module starts
    pub shift: i64,
    pub dualized: bool,
}

impl RaoTag {
    pub fn new(kind: RaoKind, shift: i64, dualized: bool) -> Self {
        match kind {
            RaoKind::Zero => Self::zero(),
            _ => Self { kind, shift, dualized },
        }
    }

    pub fn zero() -> Self {
        Self {
            kind: RaoKind::Zero,
            shift: 0,
            dualized: false,
        }
    }

    pub fn unknown() -> Self {
        Self::new(RaoKind::Unknown, 0, false)
    }

    pub fn simple_k(shift: i64) -> Self {
        Self::new(RaoKind::SimpleK, shift, false)
    }

    pub fn m_a(a: u32, shift: i64) -> Self {
        Self::new(RaoKind::MA(a), shift, false)
    }

    /// Dualize and re-anchor at `pivot − shift`. An involution for fixed pivot.
    pub fn linked(self, pivot: i64) -> Self {
        Self::new(self.kind, pivot - self.shift, !self.dualized)
    }
}

impl fmt::Display for RaoTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dual = if self.dualized { "^v" } else { "" };
        match self.kind {
            RaoKind::Zero => f.write_str("0"),
            RaoKind::SimpleK => write!(f, "k{dual} in degree {}", self.shift),
            RaoKind::MA(a) => write!(f, "M_{a}{dual} from degree {}", self.shift),
            RaoKind::Unknown => f.write_str("unknown"),
        }
    }
}

/// Biliaison of height `h` shifts the module by `h`.
pub fn rao_after_biliaison(tag: RaoTag, h: i64) -> RaoTag {
    RaoTag::new(tag.kind, tag.shift + h, tag.dualized)
}

/// A curve as a divisor class on a named catalog surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub surface: String,
    pub class: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveRecord {
    pub degree: i64,
    /// arithmetic genus
    pub genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub rao: RaoTag,
    pub provenance: String,
}

impl CurveRecord {
    /// A curve known only by its numbers.
    pub fn abstract_curve(degree: i64, genus: i64, rao: RaoTag, provenance: impl Into<String>) -> Self {
        Self {
            degree,
            genus,
            witness: None,
            rao,
            provenance: provenance.into(),
        }
    }

    /// A curve given by a class on a surface; degree and genus are computed.
    pub fn on_surface(
        surface: &SurfaceModel,
        class: DivisorClass,
        rao: RaoTag,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let degree = lattice::degree(&class, surface)?;
        let genus = lattice::arithmetic_genus(&class, surface)?;
        Ok(Self {
            degree,
            genus,
            witness: Some(Witness {
                surface: surface.id.clone(),
                class,
            }),
            rao,
            provenance: provenance.into(),
        })
    }

    pub fn line() -> Self {
        Self::abstract_curve(1, 0, RaoTag::zero(), "line")
    }

    /// Plane curve of degree `d ≥ 1`.
    pub fn plane_curve(d: i64) -> Self {
        Self::abstract_curve(
            d,
            (d - 1) * (d - 2) / 2,
            RaoTag::zero(),
            format!("plane curve of degree {d}"),
        )
    }

    pub fn numbers(&self) -> (i64, i64) {
        (self.degree, self.genus)
    }

    pub fn witness(&self) -> Result<&Witness> {
        self.witness.as_ref().ok_or(CurveError::MissingWitness)
    }

    /// The witness class together with its surface.
    pub fn witness_on<'c>(&self, catalog: &'c Catalog) -> Result<(&'c SurfaceModel, &DivisorClass)> {
        let w = self.witness()?;
        Ok((catalog.surface(&w.surface)?, &w.class))
    }
}

/// Intersection numbers of a curve with every line class of its surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantProfile {
    pub entries: Vec<SecantEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantEntry {
    pub line: DivisorClass,
    pub family: LineFamily,
    pub meets: i64,
}

impl SecantProfile {
    /// Value ↦ multiplicity.
    pub fn summary(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.meets).or_insert(0) += 1;
        }
        out
    }

    /// Sorted multiset of values.
    pub fn values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.iter().map(|e| e.meets).collect();
        v.sort_unstable();
        v
    }

    /// Exponent notation, `(1^8,3^8)`.
    pub fn notation(&self) -> String {
        let parts: Vec<String> = self
            .summary()
            .into_iter()
            .map(|(v, m)| if m == 1 { v.to_string() } else { format!("{v}^{m}") })
            .collect();
        format!("({})", parts.join(","))
    }
}

pub fn multisecant_profile(curve: &CurveRecord, catalog: &Catalog) -> Result<SecantProfile> {
    let (surface, class) = curve.witness_on(catalog)?;
    let entries = surface
        .lines()
        .iter()
        .map(|l| {
            Ok(SecantEntry {
                line: l.class.clone(),
                family: l.family,
                meets: lattice::intersect(class, &l.class)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SecantProfile { entries })
}

/// Line classes meeting the curve in exactly `k` points.
///
/// "Exactly" matters: a ruling meeting the curve four times is not counted
/// as a trisecant.
pub fn k_secant_lines(curve: &CurveRecord, k: i64, catalog: &Catalog) -> Result<Vec<(DivisorClass, LineFamily)>> {
    Ok(multisecant_profile(curve, catalog)?
        .entries
        .into_iter()
        .filter(|e| e.meets == k)
        .map(|e| (e.line, e.family))
        .collect())
}

/// Degree of the pencil cut out by hyperplanes through the plane of the
/// conic `conic`: `deg C − C·Γ`. An upper bound for the gonality.
pub fn plane_pencil_bound(curve: &CurveRecord, conic: &DivisorClass, catalog: &Catalog) -> Result<i64> {
    let (surface, class) = curve.witness_on(catalog)?;
    if !surface.conics().contains(conic) {
        return Err(CurveError::NotAConic(conic.notation(), surface.id.clone()));
    }
    Ok(curve.degree - lattice::intersect(class, conic)?)
}

/// Numbers of a disjoint union: degrees add, `g = g₁ + g₂ − 1`.
pub fn disjoint_union(c1: &CurveRecord, c2: &CurveRecord) -> CurveRecord {
    CurveRecord::abstract_curve(
        c1.degree + c2.degree,
        c1.genus + c2.genus - 1,
        RaoTag::unknown(),
        format!("({}) ⊔ ({})", c1.provenance, c2.provenance),
    )
}

/// A line disjoint from a plane curve of degree `d − 1`: Rao module `k` in
/// degree 0.
pub fn minimal_curve_m_k(d: i64) -> Result<CurveRecord> {
    if d < 2 {
        return Err(CurveError::InvalidParameters(format!("degree {d} < 2")));
    }
    let mut c = disjoint_union(&CurveRecord::line(), &CurveRecord::plane_curve(d - 1));
    c.rao = RaoTag::simple_k(0);
    c.provenance = format!("minimal curve for k, degree {d}");
    Ok(c)
}

/// The four shapes of reduced minimal curves for `M_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LesperanceType {
    /// line and a plane curve of degree `a`
    A,
    /// plane curves of degrees `a ≤ b`, the special point on neither
    B { b: i64 },
    /// plane curves of degrees `a` and `b ≥ 1`, the special point on the second
    C { b: i64 },
    /// line and an ACM curve in P³; `a` is the least degree of a surface
    /// containing the ACM curve but not the special point
    D { acm_degree: i64, acm_genus: i64 },
}

pub fn lesperance_curve(kind: LesperanceType, a: i64) -> Result<CurveRecord> {
    if a < 2 {
        return Err(CurveError::InvalidParameters(format!("a = {a} < 2")));
    }
    let bad = |msg: String| Err(CurveError::InvalidParameters(msg));
    let (parts, label) = match kind {
        LesperanceType::A => ((CurveRecord::line(), CurveRecord::plane_curve(a)), "a".to_string()),
        LesperanceType::B { b } => {
            if b < a {
                return bad(format!("type b needs a ≤ b, got a={a}, b={b}"));
            }
            (
                (CurveRecord::plane_curve(a), CurveRecord::plane_curve(b)),
                format!("b, b={b}"),
            )
        }
        LesperanceType::C { b } => {
            if b < 1 {
                return bad(format!("type c needs b ≥ 1, got {b}"));
            }
            (
                (CurveRecord::plane_curve(a), CurveRecord::plane_curve(b)),
                format!("c, b={b}"),
            )
        }
        LesperanceType::D { acm_degree, acm_genus } => {
            // a curve of degree e lies on a cone of degree e missing P
            if acm_degree < a {
                return bad(format!(
                    "type d needs an ACM curve of degree ≥ a = {a}, got {acm_degree}"
                ));
            }
            let acm = CurveRecord::abstract_curve(acm_degree, acm_genus, RaoTag::zero(), "ACM space curve");
            ((CurveRecord::line(), acm), format!("d, ACM ({acm_degree},{acm_genus})"))
        }
    };
    let mut c = disjoint_union(&parts.0, &parts.1);
    c.rao = RaoTag::m_a(a as u32, 0);
    c.provenance = format!("minimal curve for M_{a}, type {label}");
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> &'static Catalog {
        Catalog::builtin()
    }

    fn on(id: &str, coeffs: &[i64]) -> CurveRecord {
        let s = cat().surface(id).unwrap();
        CurveRecord::on_surface(s, s.class(coeffs).unwrap(), RaoTag::unknown(), "test").unwrap()
    }

    #[test]
    fn del_pezzo_profiles() {
        let d1 = on("del_pezzo_4", &[5, 3, 1, 1, 1, 1]);
        let d2 = on("del_pezzo_4", &[4, 1, 1, 1, 1, 0]);
        let p1 = multisecant_profile(&d1, cat()).unwrap();
        assert_eq!(p1.notation(), "(1^8,3^8)");
        let p2 = multisecant_profile(&d2, cat()).unwrap();
        assert_eq!(p2.notation(), "(0,1^4,2^6,3^4,4)");
        let h = on("del_pezzo_4", &[3, 1, 1, 1, 1, 1]);
        assert!(multisecant_profile(&h, cat()).unwrap().values().iter().all(|&v| v == 1));
    }

    #[test]
    fn trisecants_use_exact_counts() {
        let c1 = on("cubic_scroll", &[6, 2]);
        let c2 = on("cubic_scroll", &[7, 4]);
        assert!(k_secant_lines(&c1, 3, cat()).unwrap().is_empty());
        assert_eq!(
            k_secant_lines(&c2, 3, cat()).unwrap(),
            vec![(DivisorClass::blown_up(1, &[1]), LineFamily::OneParameter)]
        );
        let d2 = on("del_pezzo_4", &[4, 1, 1, 1, 1, 0]);
        assert_eq!(
            k_secant_lines(&d2, 4, cat()).unwrap(),
            vec![(DivisorClass::blown_up(2, &[1; 5]), LineFamily::Finite)]
        );
    }

    #[test]
    fn pencil_bounds() {
        let gamma = DivisorClass::blown_up(1, &[0]);
        assert_eq!(
            plane_pencil_bound(&on("cubic_scroll", &[6, 2]), &gamma, cat()).unwrap(),
            4
        );
        assert_eq!(
            plane_pencil_bound(&on("cubic_scroll", &[7, 4]), &gamma, cat()).unwrap(),
            3
        );
        let conic = DivisorClass::blown_up(2, &[0, 1, 1, 1, 1]);
        assert_eq!(
            plane_pencil_bound(&on("del_pezzo_4", &[5, 3, 1, 1, 1, 1]), &conic, cat()).unwrap(),
            2
        );
        let not_conic = DivisorClass::blown_up(0, &[-1]);
        assert!(matches!(
            plane_pencil_bound(&on("cubic_scroll", &[6, 2]), &not_conic, cat()),
            Err(CurveError::NotAConic(..))
        ));
    }

    #[test]
    fn missing_witness() {
        let c = CurveRecord::line();
        assert!(matches!(
            multisecant_profile(&c, cat()),
            Err(CurveError::MissingWitness)
        ));
        assert!(matches!(k_secant_lines(&c, 1, cat()), Err(CurveError::MissingWitness)));
    }

    #[test]
    fn unions_and_minimal_curves() {
        let l = CurveRecord::line();
        assert_eq!(disjoint_union(&l, &l).numbers(), (2, -1));
        assert_eq!(disjoint_union(&l, &CurveRecord::plane_curve(4)).numbers(), (5, 2));
        let conic = CurveRecord::plane_curve(2);
        assert_eq!(disjoint_union(&conic, &conic).numbers(), (4, -1));

        assert_eq!(minimal_curve_m_k(2).unwrap().numbers(), (2, -1));
        assert_eq!(minimal_curve_m_k(3).unwrap().numbers(), (3, -1));
        assert_eq!(minimal_curve_m_k(5).unwrap().numbers(), (5, 2));
        assert_eq!(minimal_curve_m_k(5).unwrap().rao, RaoTag::simple_k(0));
        assert!(minimal_curve_m_k(1).is_err());
    }

    #[test]
    fn lesperance_shapes() {
        let b = lesperance_curve(LesperanceType::B { b: 2 }, 2).unwrap();
        assert_eq!(b.numbers(), (4, -1));
        assert_eq!(b.rao, RaoTag::m_a(2, 0));
        let d = lesperance_curve(
            LesperanceType::D {
                acm_degree: 3,
                acm_genus: 0,
            },
            2,
        )
        .unwrap();
        assert_eq!(d.numbers(), (4, -1));
        assert_eq!(d.rao, RaoTag::m_a(2, 0));
        assert_eq!(lesperance_curve(LesperanceType::A, 2).unwrap().numbers(), (3, -1));
        assert!(lesperance_curve(LesperanceType::A, 1).is_err());
        assert!(lesperance_curve(LesperanceType::B { b: 1 }, 2).is_err());
        assert!(lesperance_curve(LesperanceType::C { b: 0 }, 2).is_err());
    }

    #[test]
    fn rao_shifts() {
        let t = RaoTag::simple_k(0);
        assert_eq!(rao_after_biliaison(t, 1), RaoTag::simple_k(1));
        assert_eq!(rao_after_biliaison(rao_after_biliaison(t, 1), 1), RaoTag::simple_k(2));
        assert_eq!(rao_after_biliaison(RaoTag::zero(), 5), RaoTag::zero());
        assert_eq!(rao_after_biliaison(RaoTag::m_a(2, 3), 0), RaoTag::m_a(2, 3));
        assert_eq!(RaoTag::new(RaoKind::Zero, 4, true), RaoTag::zero());
        let l = t.linked(3);
        assert!(l.dualized);
        assert_eq!(l.linked(3), t);
    }
}
