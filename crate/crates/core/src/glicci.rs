//! Gorenstein-linkage chains between h-vectors of point sets.
//!
//! A state is the h-vector of a set of points; a move links it inside an
//! Artinian Gorenstein h-vector `w` that contains it. The search is a
//! bidirectional breadth-first search between the start configuration and a
//! single point, level-synchronous on each side so that its answer does not
//! depend on the number of workers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{self, HVector, HilbertError};
use crate::par::{self, Parallelism};

#[derive(Debug, Error)]
pub enum GlicciError {
    #[error("need at least one point, got {0}")]
    NoPoints(i64),
    #[error("chain step {index}: {reason}")]
    BrokenChain { index: usize, reason: String },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

pub type Result<T, E = GlicciError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointAmbient {
    P2,
    P3,
}

impl PointAmbient {
    pub fn codim(self) -> usize {
        match self {
            PointAmbient::P2 => 2,
            PointAmbient::P3 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlicciMode {
    Full,
    /// every link must lower the number of points
    DescendingOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// intermediate configurations must have the h-vector of general points
    Generic,
    /// any O-sequence is allowed
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlicciConfig {
    pub ambient: PointAmbient,
    pub mode: GlicciMode,
    pub admissibility: Admissibility,
    /// largest number of points in any configuration; `3n` when absent
    pub max_intermediate: Option<i64>,
    pub max_socle: usize,
    /// restrict to points on a fixed surface of this degree
    pub surface_degree: Option<i64>,
    /// bound on the total chain length
    pub max_steps: usize,
    pub parallelism: Parallelism,
}

impl GlicciConfig {
    pub fn new(ambient: PointAmbient) -> Self {
        Self {
            ambient,
            mode: GlicciMode::Full,
            admissibility: Admissibility::Generic,
            max_intermediate: None,
            max_socle: 12,
            surface_degree: None,
            max_steps: 40,
            parallelism: Parallelism::default(),
        }
    }
}

/// `from` linked in `w` is `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointStep {
    pub from: HVector,
    pub w: HVector,
    pub to: HVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointChain {
    pub start: HVector,
    pub steps: Vec<PointStep>,
    pub monotone_descending: bool,
    /// largest number of points in any configuration of the chain
    pub max_intermediate_degree: i64,
}

impl PointChain {
    fn from_states(start: HVector, steps: Vec<PointStep>) -> Self {
        let monotone_descending = steps.iter().all(|s| s.to.mass() < s.from.mass());
        let max_intermediate_degree = steps
            .iter()
            .map(|s| s.to.mass())
            .chain(std::iter::once(start.mass()))
            .max()
            .unwrap_or(0);
        Self {
            start,
            steps,
            monotone_descending,
            max_intermediate_degree,
        }
    }

    pub fn end(&self) -> &HVector {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }

    /// Degrees of the configurations along the chain.
    pub fn degrees(&self) -> Vec<i64> {
        std::iter::once(self.start.mass())
            .chain(self.steps.iter().map(|s| s.to.mass()))
            .collect()
    }

    /// Recomputes every link from scratch.
    pub fn validate(&self) -> Result<()> {
        let mut current = &self.start;
        for (index, step) in self.steps.iter().enumerate() {
            let broken = |reason: String| GlicciError::BrokenChain { index, reason };
            if &step.from != current {
                return Err(broken("does not continue the previous step".into()));
            }
            let res = hilbert::link_h_vector(&step.from, &step.w).map_err(|e| broken(e.to_string()))?;
            if res != step.to {
                return Err(broken(format!("link gives {res}, stored {}", step.to)));
            }
            current = &step.to;
        }
        let fresh = Self::from_states(self.start.clone(), self.steps.clone());
        if fresh.monotone_descending != self.monotone_descending
            || fresh.max_intermediate_degree != self.max_intermediate_degree
        {
            return Err(GlicciError::BrokenChain {
                index: self.steps.len(),
                reason: "summary flags disagree with the steps".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlicciReport {
    pub points: i64,
    pub forward_explored: usize,
    pub backward_explored: usize,
    pub levels: usize,
    pub max_intermediate: i64,
    pub max_socle: usize,
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlicciOutcome {
    Found(PointChain),
    Exhausted(GlicciReport),
}

impl GlicciOutcome {
    pub fn chain(&self) -> Option<&PointChain> {
        match self {
            GlicciOutcome::Found(c) => Some(c),
            GlicciOutcome::Exhausted(_) => None,
        }
    }
}

/// Symmetric Gorenstein h-vectors `w` with `z(i) ≤ w(i)` for all `i`,
/// `Σw ≤ max_mass` and socle degree `≤ max_socle`, in lexicographic order.
/// With `surface_degree`, entries are capped as for points on such a surface.
pub fn ag_candidates_containing(
    z: &HVector,
    max_mass: i64,
    max_socle: usize,
    surface_degree: Option<i64>,
) -> Vec<HVector> {
    let codim = z.codim();
    let mut out = Vec::new();
    let min_socle = z.entries().len().saturating_sub(1);
    for s in min_socle..=max_socle {
        let half = s / 2;
        let mut prefix = vec![1i64];
        fill_half(z, s, half, codim, surface_degree, max_mass, &mut prefix, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Mass of the symmetric vector of socle degree `s` with first half `e`.
fn symmetric_mass(e: &[i64], s: usize) -> i64 {
    let twice: i64 = 2 * e.iter().sum::<i64>();
    if s.is_multiple_of(2) {
        twice - e[e.len() - 1]
    } else {
        twice
    }
}

#[allow(clippy::too_many_arguments)]
fn fill_half(
    z: &HVector,
    s: usize,
    half: usize,
    codim: usize,
    surface_degree: Option<i64>,
    max_mass: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<HVector>,
) {
    let i = prefix.len() - 1;
    // entries i and s − i are both equal to prefix[i]
    if z.get(i) > prefix[i] || z.get(s - i) > prefix[i] {
        return;
    }
    // remaining first-half entries are at least prefix[i], and mass is
    // monotone in every entry
    let mut padded = prefix.clone();
    padded.resize(half + 1, prefix[i]);
    if symmetric_mass(&padded, s) > max_mass {
        return;
    }
    if i == half {
        let mut full = prefix.clone();
        let tail_start = if s.is_multiple_of(2) { half } else { half + 1 };
        for j in (0..tail_start).rev() {
            full.push(prefix[j]);
        }
        if let Ok(w) = HVector::new(full, codim) {
            if hilbert::is_gorenstein_h_vector(&w).unwrap_or(false)
                && (0..z.entries().len()).all(|k| z.get(k) <= w.get(k))
            {
                out.push(w);
            }
        }
        return;
    }
    let cap = hilbert::h_vector_cap(codim, surface_degree, i as i64 + 1);
    for v in prefix[i]..=cap {
        prefix.push(v);
        fill_half(z, s, half, codim, surface_degree, max_mass, prefix, out);
        prefix.pop();
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    /// away from the start configuration
    Forward,
    /// away from the single point
    Backward,
}

struct Side {
    /// state → (distance, parent, linking vector)
    seen: BTreeMap<HVector, (usize, Option<(HVector, HVector)>)>,
    frontier: Vec<HVector>,
    depth: usize,
}

impl Side {
    fn new(root: HVector) -> Self {
        let mut seen = BTreeMap::new();
        seen.insert(root.clone(), (0, None));
        Self {
            seen,
            frontier: vec![root],
            depth: 0,
        }
    }

    /// Path from the root to `state`, as (from, w, to) steps.
    fn path_to(&self, state: &HVector) -> Vec<PointStep> {
        let mut steps = Vec::new();
        let mut at = state.clone();
        while let Some((_, Some((parent, w)))) = self.seen.get(&at) {
            steps.push(PointStep {
                from: parent.clone(),
                w: w.clone(),
                to: at.clone(),
            });
            at = parent.clone();
        }
        steps.reverse();
        steps
    }
}

struct Search<'a> {
    config: &'a GlicciConfig,
    max_intermediate: i64,
}

impl Search<'_> {
    fn admissible(&self, res: &HVector) -> bool {
        match self.config.admissibility {
            Admissibility::Permissive => true,
            Admissibility::Generic => {
                *res == hilbert::generic_points_h_vector_on(res.mass(), res.codim(), self.config.surface_degree)
            }
        }
    }

    fn successors(&self, z: &HVector, dir: Direction) -> Vec<(HVector, HVector)> {
        let budget = z.mass() + self.max_intermediate;
        let mut out = Vec::new();
        for w in ag_candidates_containing(z, budget, self.config.max_socle, self.config.surface_degree) {
            let Ok(res) = hilbert::link_h_vector(z, &w) else {
                continue;
            };
            if res.mass() > self.max_intermediate || !self.admissible(&res) {
                continue;
            }
            if self.config.mode == GlicciMode::DescendingOnly {
                let ok = match dir {
                    Direction::Forward => res.mass() < z.mass(),
                    Direction::Backward => res.mass() > z.mass(),
                };
                if !ok {
                    continue;
                }
            }
            out.push((w, res));
        }
        out
    }

    /// Expands one full level of `side`; returns the best meeting point with
    /// `other` as (total length, state).
    fn expand(&self, side: &mut Side, other: &Side, dir: Direction) -> Option<(usize, HVector)> {
        let expanded = par::map_ordered(&side.frontier, self.config.parallelism, |z| self.successors(z, dir));
        let depth = side.depth + 1;
        let mut next = Vec::new();
        for (z, succ) in side.frontier.iter().zip(expanded) {
            for (w, res) in succ {
                if !side.seen.contains_key(&res) {
                    side.seen.insert(res.clone(), (depth, Some((z.clone(), w))));
                    next.push(res);
                }
            }
        }
        next.sort();
        side.frontier = next;
        side.depth = depth;
        side.frontier
            .iter()
            .filter_map(|s| other.seen.get(s).map(|(d, _)| (depth + d, s.clone())))
            .min()
    }
}

/// Shortest chain of links from `n` general points to a single point.
pub fn glicci_chain(n: i64, config: &GlicciConfig) -> Result<GlicciOutcome> {
    if n < 1 {
        return Err(GlicciError::NoPoints(n));
    }
    let codim = config.ambient.codim();
    let start = hilbert::generic_points_h_vector_on(n, codim, config.surface_degree);
    let goal = HVector::point(codim);
    let max_intermediate = config.max_intermediate.unwrap_or(3 * n).max(n);
    if start == goal {
        return Ok(GlicciOutcome::Found(PointChain::from_states(start, Vec::new())));
    }
    let search = Search {
        config,
        max_intermediate,
    };
    let mut fwd = Side::new(start.clone());
    let mut bwd = Side::new(goal);
    let mut levels = 0;
    while fwd.depth + bwd.depth < config.max_steps && !(fwd.frontier.is_empty() && bwd.frontier.is_empty()) {
        levels += 1;
        let grow_forward =
            !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        let meet = if grow_forward {
            search.expand(&mut fwd, &bwd, Direction::Forward)
        } else {
            search.expand(&mut bwd, &fwd, Direction::Backward)
        };
        log::debug!(
            "glicci n={n}: level {levels}, frontiers {}/{}",
            fwd.frontier.len(),
            bwd.frontier.len()
        );
        if let Some((total, state)) = meet {
            if total > config.max_steps {
                break;
            }
            let mut steps = fwd.path_to(&state);
            for s in bwd.path_to(&state).into_iter().rev() {
                // links are involutions, so each backward step reverses
                steps.push(PointStep {
                    from: s.to,
                    w: s.w,
                    to: s.from,
                });
            }
            let chain = PointChain::from_states(start, steps);
            chain.validate()?;
            return Ok(GlicciOutcome::Found(chain));
        }
    }
    Ok(GlicciOutcome::Exhausted(GlicciReport {
        points: n,
        forward_explored: fwd.seen.len(),
        backward_explored: bwd.seen.len(),
        levels,
        max_intermediate,
        max_socle: config.max_socle,
        max_steps: config.max_steps,
    }))
}

/// Point-set sizes reachable by ascending biliaisons on curves: a step
/// `n ↦ n + h·c` (`h ≥ 1`) uses a curve of degree `c` that can pass through
/// `n + h·c` general points, i.e. `n + h·c ≤ capacity`.
///
/// `curves` lists `(degree, capacity)`. Returns, for every reachable
/// `n ≤ max_n`, one shortest sequence of sizes from `start`.
pub fn ascending_size_chains(start: i64, max_n: i64, curves: &[(i64, i64)]) -> BTreeMap<i64, Vec<i64>> {
    let mut best: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    best.insert(start, vec![start]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &n in &frontier {
            let path = best[&n].clone();
            for &(c, capacity) in curves {
                let mut m = n + c;
                while m <= max_n.min(capacity) {
                    if let std::collections::btree_map::Entry::Vacant(e) = best.entry(m) {
                        let mut p = path.clone();
                        p.push(m);
                        e.insert(p);
                        next.push(m);
                    }
                    m += c;
                }
            }
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    best
}
