//! Elementary biliaison and Gorenstein linkage on catalog surfaces, CI
//! linkage numerics in P³, and the dimension counts used to compare families.
//!
//! Gorenstein links on an ACM surface `X` are modelled with the AG divisors
//! `mH − K`: the residual of `C` is `mH − K − C`. This is an assumption of
//! the model, documented in the README, not something proved here.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, SurfaceModel};
use crate::curves::{rao_after_biliaison, CurveError, CurveRecord, RaoTag};
use crate::hilbert::{self, HVector, HilbertError};
use crate::lattice::{self, DivisorClass, LatticeError};

#[derive(Debug, Error)]
pub enum LiaisonError {
    #[error("complete intersection ({f1},{f2}) has degree {} < {d}", f1 * f2)]
    CiTooSmall { f1: i64, f2: i64, d: i64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("chain step {index} does not replay: {reason}")]
    BrokenChain { index: usize, reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

pub type Result<T, E = LiaisonError> = std::result::Result<T, E>;

/// `C ↦ C + hH` on the witness surface.
///
/// Degree and genus of the result are recomputed from the new class; the
/// closed form `d + h·deg X`, `g + h·d + h(h·deg X + H·K)/2` is checked
/// against them.
pub fn elementary_biliaison(curve: &CurveRecord, h: i64, catalog: &Catalog) -> Result<CurveRecord> {
    let (surface, class) = curve.witness_on(catalog)?;
    let new_class = class.plus_multiple(h, &surface.hyperplane)?;
    let out = CurveRecord::on_surface(
        surface,
        new_class,
        rao_after_biliaison(curve.rao, h),
        format!("biliaison h={h} on {}", surface.id),
    )?;
    debug_assert_eq!(
        out.numbers(),
        biliaison_numbers(curve.degree, curve.genus, h, surface.degree, surface.hk())
    );
    Ok(out)
}

/// `(d, g)` after biliaison of height `h` on a surface of degree `deg` with
/// `H·K = hk`.
pub fn biliaison_numbers(d: i64, g: i64, h: i64, deg: i64, hk: i64) -> (i64, i64) {
    (d + h * deg, g + h * d + h * (h * deg + hk) / 2)
}

/// The AG divisor `mH − K` used for links on `surface`.
pub fn ag_divisor(surface: &SurfaceModel, m: i64) -> Result<DivisorClass> {
    Ok(surface.hyperplane.try_scale(m)?.try_sub(&surface.canonical)?)
}

/// Residual of `C` in the AG divisor `mH − K`.
///
/// The Rao tag is dualized and re-anchored at `m − shift`, so two links with
/// twists `m`, `m′` compose to a biliaison of height `m′ − m`.
pub fn g_link_on_surface(curve: &CurveRecord, m: i64, catalog: &Catalog) -> Result<CurveRecord> {
    let (surface, class) = curve.witness_on(catalog)?;
    let d = ag_divisor(surface, m)?;
    let residual = d.try_sub(class)?;
    Ok(CurveRecord::on_surface(
        surface,
        residual,
        curve.rao.linked(m),
        format!("G-link in {m}H-K = {d} on {}", surface.id),
    )?)
}

/// Link by a complete intersection of surfaces of degrees `f1`, `f2` in P³.
pub fn ci_link_p3(curve: &CurveRecord, f1: i64, f2: i64) -> Result<CurveRecord> {
    let d = curve.degree;
    let d2 = f1 * f2 - d;
    if d2 < 0 {
        return Err(LiaisonError::CiTooSmall { f1, f2, d });
    }
    let g2 = curve.genus + (f1 + f2 - 4) * (d2 - d) / 2;
    Ok(CurveRecord::abstract_curve(
        d2,
        g2,
        curve.rao.linked(f1 + f2 - 4),
        format!("CI-link in ({f1},{f2})"),
    ))
}

/// Dimension of the family of curves `|C|` as the surface moves:
/// family dimension of the surface plus `C·(C − K)/2`.
pub fn family_dimension(surface: &SurfaceModel, class: &DivisorClass) -> Result<i64> {
    Ok(surface.family_dim()? + lattice::expected_dim_linear_system(class, surface)?)
}

/// Lower bound `5d + 1 − g` on every component of the Hilbert scheme of
/// smooth curves in P⁴.
pub fn hilbert_dim_lower_bound(d: i64, g: i64) -> i64 {
    5 * d + 1 - g
}

/// Necessary conditions for a class to be effective and reduced enough to be
/// worth expanding: positive degree and nonnegative against every line other
/// than itself.
pub fn passes_effectivity_screen(surface: &SurfaceModel, class: &DivisorClass) -> Result<bool> {
    if lattice::degree(class, surface)? < 1 {
        return Ok(false);
    }
    for l in surface.lines().iter() {
        if &l.class != class && lattice::intersect(class, &l.class)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hilbert function `φ(0..len)` of `C + hH` on an ACM surface, from that of `C`:
/// `φ_X(t) − φ_X(t − h) + φ_C(t − h)`.
pub fn hilbert_function_after_biliaison(phi: &[i64], surface: &SurfaceModel, h: i64) -> Option<Vec<i64>> {
    let sec = surface.section_h_vector.as_ref()?;
    let len = phi.len();
    let phi_x = hilbert::acm_hilbert_function(sec, 2, len + h.unsigned_abs() as usize);
    let at = |v: &[i64], t: i64| if t < 0 { 0 } else { v[t as usize] };
    Some(
        (0..len as i64)
            .map(|t| at(&phi_x, t) - at(&phi_x, t - h) + at(phi, t - h))
            .collect(),
    )
}

/// Hilbert function of a line in P⁴.
pub fn line_hilbert_function(len: usize) -> Vec<i64> {
    (1..=len as i64).collect()
}

/// h-vector of an ACM curve read off its Hilbert function: `Δ²φ`.
pub fn h_vector_from_hilbert_function(phi: &[i64]) -> Result<HVector> {
    let at = |t: i64| if t < 0 { 0 } else { phi[t as usize] };
    let h: Vec<i64> = (0..phi.len() as i64)
        .map(|t| at(t) - 2 * at(t - 1) + at(t - 2))
        .collect();
    Ok(HVector::new(h, 3)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    Biliaison {
        h: i64,
    },
    GLink {
        m: i64,
    },
    CiLink {
        f1: i64,
        f2: i64,
    },
    /// same curve, represented on another surface via the catalog table
    Rewitness,
}

/// One move with the records on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    #[serde(flatten)]
    pub kind: StepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    pub before: CurveRecord,
    pub after: CurveRecord,
}

/// An auditable sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub start: CurveRecord,
    pub steps: Vec<ChainStep>,
    pub ascending_only: bool,
}

impl Chain {
    pub fn new(start: CurveRecord) -> Self {
        Self {
            start,
            steps: Vec::new(),
            ascending_only: true,
        }
    }

    pub fn push(&mut self, step: ChainStep) {
        self.ascending_only &= step_is_ascending(&step.kind);
        self.steps.push(step);
    }

    pub fn end(&self) -> &CurveRecord {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Number of linkage moves, not counting re-embeddings.
    pub fn link_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind != StepKind::Rewitness).count()
    }

    pub fn total_height(&self) -> i64 {
        self.steps
            .iter()
            .map(|s| match s.kind {
                StepKind::Biliaison { h } => h,
                _ => 0,
            })
            .sum()
    }

    /// Replays every step from its `before` record and checks that the
    /// stored `after` record comes out, and that consecutive records agree.
    pub fn validate(&self, catalog: &Catalog) -> Result<()> {
        let mut current = &self.start;
        let mut ascending = true;
        for (index, step) in self.steps.iter().enumerate() {
            let broken = |reason: String| LiaisonError::BrokenChain { index, reason };
            if &step.before != current {
                return Err(broken("record does not continue the previous step".into()));
            }
            let replay = match &step.kind {
                StepKind::Biliaison { h } => elementary_biliaison(&step.before, *h, catalog)?,
                StepKind::GLink { m } => g_link_on_surface(&step.before, *m, catalog)?,
                StepKind::CiLink { f1, f2 } => ci_link_p3(&step.before, *f1, *f2)?,
                StepKind::Rewitness => {
                    let w = step.after.witness()?;
                    let s = catalog.surface(&w.surface)?;
                    let r =
                        CurveRecord::on_surface(s, w.class.clone(), step.before.rao, step.after.provenance.clone())?;
                    if r.numbers() != step.before.numbers() {
                        return Err(broken(format!(
                            "re-embedding changes (d,g) from {:?} to {:?}",
                            step.before.numbers(),
                            r.numbers()
                        )));
                    }
                    r
                }
            };
            if replay.numbers() != step.after.numbers()
                || replay.witness != step.after.witness
                || replay.rao != step.after.rao
            {
                return Err(broken(format!(
                    "replay gives ({},{}) {:?}, stored ({},{}) {:?}",
                    replay.degree,
                    replay.genus,
                    replay.witness,
                    step.after.degree,
                    step.after.genus,
                    step.after.witness
                )));
            }
            ascending &= step_is_ascending(&step.kind);
            current = &step.after;
        }
        if ascending != self.ascending_only {
            return Err(LiaisonError::BrokenChain {
                index: self.steps.len(),
                reason: "ascending flag disagrees with the steps".into(),
            });
        }
        Ok(())
    }
}

fn step_is_ascending(kind: &StepKind) -> bool {
    match kind {
        StepKind::Biliaison { h } => *h >= 0,
        StepKind::Rewitness => true,
        StepKind::GLink { .. } | StepKind::CiLink { .. } => false,
    }
}

/// Applies a move and records it.
pub fn apply_step(chain: &mut Chain, kind: StepKind, catalog: &Catalog) -> Result<()> {
    let before = chain.end().clone();
    let after = match &kind {
        StepKind::Biliaison { h } => elementary_biliaison(&before, *h, catalog)?,
        StepKind::GLink { m } => g_link_on_surface(&before, *m, catalog)?,
        StepKind::CiLink { f1, f2 } => ci_link_p3(&before, *f1, *f2)?,
        StepKind::Rewitness => {
            return Err(LiaisonError::InvalidConfig(
                "use rewitness_step for re-embeddings".into(),
            ))
        }
    };
    let surface = before.witness.as_ref().map(|w| w.surface.clone());
    chain.push(ChainStep {
        kind,
        surface,
        before,
        after,
    });
    Ok(())
}

/// Re-represents the end of the chain as `class` on `surface`; degree and
/// genus must not change.
pub fn rewitness_step(chain: &mut Chain, surface: &SurfaceModel, class: DivisorClass) -> Result<()> {
    let before = chain.end().clone();
    let after = CurveRecord::on_surface(surface, class, before.rao, format!("re-embedded on {}", surface.id))?;
    if after.numbers() != before.numbers() {
        return Err(LiaisonError::InvalidConfig(format!(
            "re-embedding changes (d,g) from {:?} to {:?}",
            before.numbers(),
            after.numbers()
        )));
    }
    chain.push(ChainStep {
        kind: StepKind::Rewitness,
        surface: Some(surface.id.clone()),
        before,
        after,
    });
    Ok(())
}

/// A curve record on a catalog surface, by id and coefficients.
pub fn curve_on(
    catalog: &Catalog,
    surface: &str,
    coeffs: &[i64],
    rao: RaoTag,
    provenance: &str,
) -> Result<CurveRecord> {
    let s = catalog.surface(surface)?;
    Ok(CurveRecord::on_surface(s, s.class(coeffs)?, rao, provenance)?)
}
