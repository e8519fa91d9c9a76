//! Breadth-first search for biliaison chains between curves on catalog
//! surfaces.
//!
//! Levels are synchronous: successors of the whole frontier are generated
//! (in parallel when enabled), then merged sequentially in frontier order and
//! the new frontier is sorted by a canonical key. The result therefore does
//! not depend on how many workers ran.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, SurfaceModel};
use crate::curves::{rao_after_biliaison, CurveRecord, RaoTag};
use crate::lattice::DivisorClass;
use crate::liaison::{self, Chain, ChainStep, LiaisonError, Result, StepKind};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Numbers { degree: i64, genus: i64 },
    Class { surface: String, class: DivisorClass },
}

impl Target {
    pub fn numbers(degree: i64, genus: i64) -> Self {
        Target::Numbers { degree, genus }
    }

    fn degree(&self, catalog: &Catalog) -> Result<i64> {
        Ok(match self {
            Target::Numbers { degree, .. } => *degree,
            Target::Class { surface, class } => {
                let s = catalog.surface(surface)?;
                crate::lattice::degree(class, s)?
            }
        })
    }

    fn matches(&self, rec: &CurveRecord) -> bool {
        match self {
            Target::Numbers { degree, genus } => rec.numbers() == (*degree, *genus),
            Target::Class { surface, class } => rec
                .witness
                .as_ref()
                .is_some_and(|w| &w.surface == surface && &w.class == class),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    /// every line class on every allowed surface
    Lines,
    Curves(Vec<CurveRecord>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// allowed surfaces; their order is the canonical surface order
    pub surfaces: Vec<String>,
    pub ascending_only: bool,
    /// maximum number of linkage moves
    pub max_steps: usize,
    /// largest `|h|` of a single biliaison
    pub max_height: i64,
    /// largest `|m|` of a G-link twist (only when not ascending)
    pub max_link_twist: i64,
    /// bound on every coefficient of an intermediate class
    pub coeff_box: i64,
    /// bound on the degree of intermediate curves; derived from the target
    /// when absent
    pub degree_cap: Option<i64>,
    pub start: Start,
    pub parallelism: Parallelism,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            surfaces: vec![
                "cubic_scroll".into(),
                "del_pezzo_4".into(),
                "castelnuovo_5".into(),
                "bordiga_6".into(),
            ],
            ascending_only: true,
            max_steps: 8,
            max_height: 4,
            max_link_twist: 3,
            coeff_box: 60,
            degree_cap: None,
            start: Start::Lines,
            parallelism: Parallelism::default(),
        }
    }
}

impl SearchConfig {
    pub fn on(surfaces: &[&str]) -> Self {
        Self {
            surfaces: surfaces.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub effectivity: u64,
    pub coeff_box: u64,
    pub degree_cap: u64,
}

/// Everything the search looked at when it did not reach the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionReport {
    pub levels: usize,
    /// frontier size at each level, starting with the start states
    pub frontier_sizes: Vec<usize>,
    pub visited: usize,
    pub pruned: PruneCounts,
    pub max_steps: usize,
    pub max_height: i64,
    pub coeff_box: i64,
    pub degree_cap: i64,
    /// true when the frontier emptied before `max_steps`
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Chain),
    Exhausted(ExhaustionReport),
}

impl SearchOutcome {
    pub fn chain(&self) -> Option<&Chain> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    surface: usize,
    class: DivisorClass,
    rao: RaoTag,
}

struct Node {
    record: CurveRecord,
    key: Key,
    parent: Option<usize>,
    steps: Vec<ChainStep>,
}

#[allow(clippy::large_enum_variant)]
enum Verdict {
    Keep(Key, CurveRecord, Vec<ChainStep>),
    Pruned(PruneReason),
}

#[derive(Clone, Copy)]
enum PruneReason {
    Effectivity,
    CoeffBox,
    DegreeCap,
}

struct Ctx<'a> {
    catalog: &'a Catalog,
    surfaces: Vec<&'a SurfaceModel>,
    config: &'a SearchConfig,
    degree_cap: i64,
}

impl Ctx<'_> {
    fn index_of(&self, id: &str) -> Option<usize> {
        self.surfaces.iter().position(|s| s.id == id)
    }

    fn moves(&self) -> Vec<StepKind> {
        let c = self.config;
        let mut out: Vec<StepKind> = if c.ascending_only {
            (1..=c.max_height).map(|h| StepKind::Biliaison { h }).collect()
        } else {
            (-c.max_height..=c.max_height)
                .filter(|&h| h != 0)
                .map(|h| StepKind::Biliaison { h })
                .collect()
        };
        if !c.ascending_only {
            out.extend((-c.max_link_twist..=c.max_link_twist).map(|m| StepKind::GLink { m }));
        }
        out
    }

    /// The record itself plus its re-embeddings on other allowed surfaces.
    fn embeddings(&self, rec: &CurveRecord) -> Result<Vec<(CurveRecord, Option<ChainStep>)>> {
        let mut out = vec![(rec.clone(), None)];
        let here = rec.witness.as_ref().map(|w| w.surface.as_str());
        for entry in &self.catalog.rewitness {
            if (entry.degree, entry.genus) != rec.numbers()
                || entry.rao != rec.rao.kind
                || Some(entry.surface.as_str()) == here
                || self.index_of(&entry.surface).is_none()
            {
                continue;
            }
            let s = self.catalog.surface(&entry.surface)?;
            let after =
                CurveRecord::on_surface(s, s.class(&entry.class)?, rec.rao, format!("re-embedded on {}", s.id))?;
            let step = ChainStep {
                kind: StepKind::Rewitness,
                surface: Some(s.id.clone()),
                before: rec.clone(),
                after: after.clone(),
            };
            out.push((after, Some(step)));
        }
        Ok(out)
    }

    fn screen(&self, rec: &CurveRecord) -> Result<Option<PruneReason>> {
        let (s, class) = rec.witness_on(self.catalog)?;
        if class.max_abs_coeff() > self.config.coeff_box {
            return Ok(Some(PruneReason::CoeffBox));
        }
        if rec.degree > self.degree_cap {
            return Ok(Some(PruneReason::DegreeCap));
        }
        if !liaison::passes_effectivity_screen(s, class)? {
            log::debug!("pruned {} on {}: fails the effectivity screen", class, s.id);
            return Ok(Some(PruneReason::Effectivity));
        }
        Ok(None)
    }

    fn successors(&self, rec: &CurveRecord) -> Result<Vec<Verdict>> {
        let mut out = Vec::new();
        for (base, hop) in self.embeddings(rec)? {
            let (surface, _) = base.witness_on(self.catalog)?;
            let surface_idx = self.index_of(&surface.id).expect("embedding on an allowed surface");
            for kind in self.moves() {
                let after = match &kind {
                    StepKind::Biliaison { h } => liaison::elementary_biliaison(&base, *h, self.catalog),
                    StepKind::GLink { m } => liaison::g_link_on_surface(&base, *m, self.catalog),
                    _ => unreachable!("search only generates surface moves"),
                };
                let after = match after {
                    Ok(a) => a,
                    Err(LiaisonError::Lattice(_)) => {
                        out.push(Verdict::Pruned(PruneReason::CoeffBox));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if let Some(reason) = self.screen(&after)? {
                    out.push(Verdict::Pruned(reason));
                    continue;
                }
                let key = Key {
                    surface: surface_idx,
                    class: after.witness()?.class.clone(),
                    rao: after.rao,
                };
                let mut steps: Vec<ChainStep> = hop.iter().cloned().collect();
                steps.push(ChainStep {
                    kind: kind.clone(),
                    surface: Some(surface.id.clone()),
                    before: base.clone(),
                    after: after.clone(),
                });
                out.push(Verdict::Keep(key, after, steps));
            }
        }
        Ok(out)
    }
}

/// Shortest chain (in linkage moves) from the configured start curves to
/// `target`, or a report of what was explored.
pub fn ascending_chain_search(target: &Target, config: &SearchConfig, catalog: &Catalog) -> Result<SearchOutcome> {
    if config.max_steps < 1 {
        return Err(LiaisonError::InvalidConfig("max_steps must be at least 1".into()));
    }
    if config.surfaces.is_empty() {
        return Err(LiaisonError::InvalidConfig("no surfaces to search on".into()));
    }
    if config.max_height < 1 {
        return Err(LiaisonError::InvalidConfig("max_height must be at least 1".into()));
    }
    let mut surfaces = Vec::with_capacity(config.surfaces.len());
    for id in &config.surfaces {
        let s = catalog.surface(id)?;
        if !surfaces.iter().any(|t: &&SurfaceModel| t.id == s.id) {
            surfaces.push(s);
        }
    }
    let target_degree = target.degree(catalog)?;
    let degree_cap = config.degree_cap.unwrap_or(if config.ascending_only {
        target_degree
    } else {
        2 * target_degree + 12
    });
    let ctx = Ctx {
        catalog,
        surfaces,
        config,
        degree_cap,
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: HashSet<Key> = HashSet::new();
    let starts: Vec<CurveRecord> = match &config.start {
        Start::Lines => ctx
            .surfaces
            .iter()
            .flat_map(|s| {
                s.lines().iter().map(move |l| {
                    CurveRecord::on_surface(
                        s,
                        l.class.clone(),
                        RaoTag::zero(),
                        format!("line {} on {}", l.class, s.id),
                    )
                })
            })
            .collect::<Result<_, _>>()?,
        Start::Curves(c) => c.clone(),
    };
    for rec in starts {
        let w = rec.witness()?;
        let Some(surface) = ctx.index_of(&w.surface) else {
            return Err(LiaisonError::InvalidConfig(format!(
                "start curve lies on {}, which is not in the surface list",
                w.surface
            )));
        };
        let key = Key {
            surface,
            class: w.class.clone(),
            rao: rec.rao,
        };
        if seen.insert(key.clone()) {
            nodes.push(Node {
                record: rec,
                key,
                parent: None,
                steps: Vec::new(),
            });
        }
    }
    let mut frontier: Vec<usize> = (0..nodes.len()).collect();
    frontier.sort_by(|&a, &b| nodes[a].key.cmp(&nodes[b].key));
    if let Some(&hit) = frontier.iter().find(|&&i| target.matches(&nodes[i].record)) {
        return Ok(SearchOutcome::Found(build_chain(&nodes, hit)));
    }

    let mut pruned = PruneCounts::default();
    let mut frontier_sizes = vec![frontier.len()];
    for level in 1..=config.max_steps {
        let records: Vec<&CurveRecord> = frontier.iter().map(|&i| &nodes[i].record).collect();
        let expanded = par::map_ordered(&records, config.parallelism, |r| ctx.successors(r));
        let mut next = Vec::new();
        for (&parent, succ) in frontier.iter().zip(expanded) {
            for verdict in succ? {
                match verdict {
                    Verdict::Pruned(PruneReason::Effectivity) => pruned.effectivity += 1,
                    Verdict::Pruned(PruneReason::CoeffBox) => pruned.coeff_box += 1,
                    Verdict::Pruned(PruneReason::DegreeCap) => pruned.degree_cap += 1,
                    Verdict::Keep(key, record, steps) => {
                        if seen.insert(key.clone()) {
                            nodes.push(Node {
                                record,
                                key,
                                parent: Some(parent),
                                steps,
                            });
                            next.push(nodes.len() - 1);
                        }
                    }
                }
            }
        }
        next.sort_by(|&a, &b| nodes[a].key.cmp(&nodes[b].key));
        frontier = next;
        frontier_sizes.push(frontier.len());
        log::debug!("level {level}: frontier {}, visited {}", frontier.len(), nodes.len());
        if let Some(&hit) = frontier.iter().find(|&&i| target.matches(&nodes[i].record)) {
            return Ok(SearchOutcome::Found(build_chain(&nodes, hit)));
        }
        if frontier.is_empty() {
            break;
        }
    }
    let levels = frontier_sizes.len() - 1;
    Ok(SearchOutcome::Exhausted(ExhaustionReport {
        levels,
        closed: frontier.is_empty(),
        frontier_sizes,
        visited: nodes.len(),
        pruned,
        max_steps: config.max_steps,
        max_height: config.max_height,
        coeff_box: config.coeff_box,
        degree_cap,
    }))
}

fn build_chain(nodes: &[Node], mut at: usize) -> Chain {
    let mut path = vec![at];
    while let Some(p) = nodes[at].parent {
        path.push(p);
        at = p;
    }
    path.reverse();
    let mut chain = Chain::new(nodes[path[0]].record.clone());
    for &i in &path[1..] {
        for step in &nodes[i].steps {
            chain.push(step.clone());
        }
    }
    chain
}

/// Total Rao shift change predicted by the biliaison steps of a chain.
pub fn telescoped_shift(chain: &Chain) -> Option<i64> {
    let mut tag = chain.start.rao;
    for step in &chain.steps {
        match step.kind {
            StepKind::Biliaison { h } => tag = rao_after_biliaison(tag, h),
            StepKind::Rewitness => {}
            _ => return None,
        }
    }
    Some(tag.shift)
}

/// First class with numbers `(d, g)` on the listed surfaces that passes the
/// effectivity screen.
pub fn screened_witness(
    surfaces: &[&str],
    d: i64,
    g: i64,
    catalog: &Catalog,
) -> Result<Option<(String, DivisorClass)>> {
    for id in surfaces {
        let s = catalog.surface(id)?;
        for c in crate::lattice::enumerate_degree_genus(&s.hyperplane, &s.canonical, d, g)? {
            if liaison::passes_effectivity_screen(s, &c)? {
                return Ok(Some((s.id.clone(), c)));
            }
        }
    }
    Ok(None)
}
