//! Named, scripted reproductions. Each experiment computes its values from
//! the library and sets them next to reference values.

use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::curves::{self, CurveError, CurveRecord, LesperanceType, RaoKind, RaoTag};
use crate::glicci::{self, GlicciConfig, GlicciError, PointAmbient};
use crate::hilbert::{self, HilbertError};
use crate::lattice::{self, DivisorClass, LatticeError};
use crate::liaison::{self, curve_on, Chain, LiaisonError, StepKind};
use crate::par::{self, Parallelism};
use crate::report::{Check, ExperimentReport, Provenance, SCHEMA_VERSION};
use crate::search::{self, SearchConfig, Start, Target};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown experiment `{id}`; registered: {}", valid.join(", "))]
    UnknownId { id: String, valid: Vec<String> },
    #[error("invalid invocation: {0}")]
    InvalidInvocation(String),
    #[error(transparent)]
    Liaison(#[from] LiaisonError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Glicci(#[from] GlicciError),
}

impl ExperimentError {
    /// Whether the error comes from bad input rather than a failed computation.
    pub fn is_invocation_error(&self) -> bool {
        matches!(
            self,
            ExperimentError::UnknownId { .. }
                | ExperimentError::InvalidInvocation(_)
                | ExperimentError::Catalog(CatalogError::UnknownSurface { .. })
        )
    }
}

pub type Result<T, E = ExperimentError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// replaces the surface list of experiments that search over surfaces
    pub surfaces: Option<Vec<String>>,
    pub parallelism: Parallelism,
}

struct Cx<'a> {
    catalog: &'a Catalog,
    opts: &'a RunOptions,
}

impl Cx<'_> {
    fn surfaces(&self, default: &[&str]) -> Result<Vec<String>> {
        let list = match &self.opts.surfaces {
            Some(s) => s.clone(),
            None => default.iter().map(|s| s.to_string()).collect(),
        };
        if list.is_empty() {
            return Err(ExperimentError::InvalidInvocation("the surface list is empty".into()));
        }
        for id in &list {
            self.catalog.surface(id)?;
        }
        Ok(list)
    }

    fn search_config(&self, surfaces: Vec<String>) -> SearchConfig {
        SearchConfig {
            surfaces,
            parallelism: self.opts.parallelism,
            ..SearchConfig::default()
        }
    }

    fn glicci_config(&self, ambient: PointAmbient) -> GlicciConfig {
        GlicciConfig {
            parallelism: self.opts.parallelism,
            ..GlicciConfig::new(ambient)
        }
    }
}

type Runner = fn(&Cx) -> Result<Vec<Check>>;

struct Entry {
    id: &'static str,
    anchor: &'static str,
    run: Runner,
}

const REGISTRY: &[Entry] = &[
    Entry {
        id: "prop2.1",
        anchor: "general points in the plane link down to a point",
        run: prop2_1,
    },
    Entry {
        id: "prop2.2",
        anchor: "general points on a smooth quadric, degree-level biliaison replay",
        run: prop2_2,
    },
    Entry {
        id: "prop2.3",
        anchor: "general points on a smooth cubic surface link down to a point",
        run: prop2_3,
    },
    Entry {
        id: "cor2.4",
        anchor: "at most 19 general points in P3 link down to a point",
        run: cor2_4,
    },
    Entry {
        id: "prop3.1",
        anchor: "ACM curves of degree at most 9 in P4 from a line by ascending biliaisons",
        run: prop3_1,
    },
    Entry {
        id: "ex3.2",
        anchor: "two kinds of smooth (10,9) curves on the cubic scroll",
        run: ex3_2,
    },
    Entry {
        id: "ex3.4",
        anchor: "curves L_i + mH on a Bordiga surface with distinct self-intersections",
        run: ex3_4,
    },
    Entry {
        id: "ex3.6",
        anchor: "dimension counts for (20,26) curves and their small analogues",
        run: ex3_6,
    },
    Entry {
        id: "prop4.1",
        anchor: "minimal curves with Rao module k",
        run: prop4_1,
    },
    Entry {
        id: "ex4.2",
        anchor: "(5,0) curves on the cubic scroll from two skew lines",
        run: ex4_2,
    },
    Entry {
        id: "ex4.3",
        anchor: "two kinds of (6,1) curves with Rao module k",
        run: ex4_3,
    },
    Entry {
        id: "ex4.4",
        anchor: "(7,2) curves by two biliaison routes",
        run: ex4_4,
    },
    Entry {
        id: "ex4.5",
        anchor: "(11,7) curves on a Bordiga surface in two biliaison steps",
        run: ex4_5,
    },
    Entry {
        id: "prop4.7",
        anchor: "shapes of minimal curves with Rao module M_a",
        run: prop4_7,
    },
    Entry {
        id: "ex4.8",
        anchor: "two families of degree-4 minimal curves for M_2",
        run: ex4_8,
    },
    Entry {
        id: "ex4.10",
        anchor: "two kinds of (8,3) curves on the quartic del Pezzo surface",
        run: ex4_10,
    },
];

pub fn experiment_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

pub fn run_experiment(id: &str, catalog: &Catalog, opts: &RunOptions) -> Result<ExperimentReport> {
    let entry = REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| ExperimentError::UnknownId {
            id: id.to_string(),
            valid: experiment_ids().iter().map(|s| s.to_string()).collect(),
        })?;
    let t = Instant::now();
    let checks = (entry.run)(&Cx { catalog, opts })?;
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        id: entry.id.to_string(),
        anchor: entry.anchor.to_string(),
        checks,
        runtime_micros: t.elapsed().as_micros() as u64,
    })
}

/// Runs several experiments; with `jobs > 1` they run concurrently on a
/// pool of that size. Results come back in input order.
pub fn run_many(ids: &[String], catalog: &Catalog, opts: &RunOptions, jobs: usize) -> Vec<Result<ExperimentReport>> {
    if jobs <= 1 {
        return ids.iter().map(|id| run_experiment(id, catalog, opts)).collect();
    }
    par::with_threads(jobs, || {
        par::map_ordered(ids, Parallelism::Parallel, |id| run_experiment(id, catalog, opts))
    })
}

fn numbers(c: &CurveRecord) -> [i64; 2] {
    [c.degree, c.genus]
}

fn class_of(c: &CurveRecord) -> Result<&DivisorClass> {
    Ok(&c.witness()?.class)
}

fn notation(c: &CurveRecord) -> Result<String> {
    Ok(class_of(c)?.notation())
}

fn self_int(c: &CurveRecord) -> Result<i64> {
    Ok(lattice::self_intersection(class_of(c)?)?)
}

fn secants_json(lines: &[(DivisorClass, crate::catalog::LineFamily)]) -> serde_json::Value {
    json!(lines
        .iter()
        .map(|(c, f)| json!({"class": c.notation(), "family": f}))
        .collect::<Vec<_>>())
}

fn family_dim(c: &CurveRecord, catalog: &Catalog) -> Result<i64> {
    let (s, class) = c.witness_on(catalog)?;
    Ok(liaison::family_dimension(s, class)?)
}

/// One line per step, for reports.
pub fn chain_summary(chain: &Chain) -> Vec<String> {
    let describe = |c: &CurveRecord| match &c.witness {
        Some(w) => format!("{} on {} ({},{})", w.class, w.surface, c.degree, c.genus),
        None => format!("({},{})", c.degree, c.genus),
    };
    let mut out = vec![format!("start: {}", describe(&chain.start))];
    for s in &chain.steps {
        let what = match &s.kind {
            StepKind::Biliaison { h } => format!("{h:+}H"),
            StepKind::GLink { m } => format!("link in {m}H-K"),
            StepKind::CiLink { f1, f2 } => format!("link in CI({f1},{f2})"),
            StepKind::Rewitness => "re-embed".to_string(),
        };
        out.push(format!("{what}: {}", describe(&s.after)));
    }
    out
}

fn line_hf(len: usize) -> Vec<i64> {
    liaison::line_hilbert_function(len)
}

fn prop2_1(cx: &Cx) -> Result<Vec<Check>> {
    let cfg = cx.glicci_config(PointAmbient::P2);
    let mut missing = Vec::new();
    let mut lengths = Vec::new();
    let mut all_valid = true;
    for n in 1..=30 {
        match glicci::glicci_chain(n, &cfg)?.chain() {
            Some(c) => {
                all_valid &= c.validate().is_ok();
                lengths.push(json!([n, c.steps.len()]));
            }
            None => missing.push(n),
        }
    }
    Ok(vec![
        Check::published("sizes n ≤ 30 without a chain to a point", &missing, Vec::<i64>::new()),
        Check::trivial("every chain replays link by link", all_valid, true),
        Check::info("chain length by n", lengths),
    ])
}

/// ACM curve classes `(a, b)` on the quadric, `|a − b| ≤ 1`, with the number
/// of general points a member passes through: `h⁰(O(a,b)) − 1`.
fn quadric_acm_curves(max_degree: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in [a, a + 1] {
            let c = a + b;
            if c >= 1 && c <= max_degree {
                out.push((c, (a + 1) * (b + 1) - 1));
            }
        }
    }
    out.sort();
    out
}

fn prop2_2(_cx: &Cx) -> Result<Vec<Check>> {
    let curves = quadric_acm_curves(12);
    let from_empty = glicci::ascending_size_chains(0, 30, &curves);
    let from_point = glicci::ascending_size_chains(1, 30, &curves);
    let unreached = |m: &std::collections::BTreeMap<i64, Vec<i64>>| -> Vec<i64> {
        (1..=30).filter(|n| !m.contains_key(n)).collect()
    };
    let sample: Vec<_> = [5, 12, 20, 30]
        .iter()
        .filter_map(|n| from_empty.get(n).map(|p| json!([n, p])))
        .collect();
    Ok(vec![
        Check::derived(
            "sizes n ≤ 30 not reached from the empty set",
            unreached(&from_empty),
            Vec::<i64>::new(),
        ),
        Check::trivial(
            "a single point is one step from the empty set",
            from_empty.get(&1).cloned(),
            vec![0, 1],
        ),
        Check::info(
            "sizes n ≤ 30 not reached from one point (degree-level model)",
            unreached(&from_point),
        ),
        Check::info("sample size sequences", sample),
        Check::info("curve (degree, capacity) pairs used", curves),
    ])
}

fn prop2_3(cx: &Cx) -> Result<Vec<Check>> {
    let cfg = GlicciConfig {
        surface_degree: Some(3),
        ..cx.glicci_config(PointAmbient::P3)
    };
    let mut missing = Vec::new();
    let mut lengths = Vec::new();
    for n in 1..=30 {
        match glicci::glicci_chain(n, &cfg)?.chain() {
            Some(c) => {
                c.validate()?;
                lengths.push(json!([n, c.degrees()]));
            }
            None => missing.push(n),
        }
    }
    Ok(vec![
        Check::published("sizes n ≤ 30 on the cubic without a chain", &missing, Vec::<i64>::new()),
        Check::info("degrees along each chain", lengths),
    ])
}

fn cor2_4(cx: &Cx) -> Result<Vec<Check>> {
    let cfg = cx.glicci_config(PointAmbient::P3);
    let mut missing = Vec::new();
    let mut n18 = None;
    for n in 1..=19 {
        match glicci::glicci_chain(n, &cfg)?.chain() {
            Some(c) => {
                c.validate()?;
                if n == 18 {
                    n18 = Some(c.clone());
                }
            }
            None => missing.push(n),
        }
    }
    let mut checks = vec![Check::published(
        "sizes n ≤ 19 without a chain",
        &missing,
        Vec::<i64>::new(),
    )];
    if let Some(c) = n18 {
        checks.push(Check::info("18 points: degrees along the chain", c.degrees()));
        checks.push(Check::info(
            "18 points: largest configuration",
            c.max_intermediate_degree,
        ));
        checks.push(Check::info(
            "18 points: some configuration exceeds 18",
            c.max_intermediate_degree > 18,
        ));
    }
    checks.push(Check::not_recomputed(
        "18 points: published route passes through configurations of size",
        [20, 28],
        Provenance::Published,
    ));
    let twenty = glicci::glicci_chain(20, &cfg)?;
    checks.push(Check::info(
        "20 points: chain under the h-vector model (model-relative)",
        twenty.chain().map(|c| c.degrees()),
    ));
    Ok(checks)
}

fn prop3_1(cx: &Cx) -> Result<Vec<Check>> {
    let surfaces = cx.surfaces(&["cubic_scroll", "del_pezzo_4", "castelnuovo_5"])?;
    let ids: Vec<&str> = surfaces.iter().map(String::as_str).collect();
    let admitted: Vec<(i64, i64)> = hilbert::acm_curve_numbers(9, 3).into_iter().collect();
    let mut targets = Vec::new();
    for &(d, g) in &admitted {
        if search::screened_witness(&ids, d, g, cx.catalog)?.is_some() {
            targets.push((d, g));
        }
    }
    let cfg = cx.search_config(surfaces.clone());
    let mut unreached = Vec::new();
    let mut routes = Vec::new();
    for &(d, g) in &targets {
        match search::ascending_chain_search(&Target::numbers(d, g), &cfg, cx.catalog)?.chain() {
            Some(chain) => {
                chain.validate(cx.catalog)?;
                routes.push(json!({"target": [d, g], "link_steps": chain.link_steps(), "steps": chain_summary(chain)}));
            }
            None => unreached.push([d, g]),
        }
    }
    let mut with_bordiga = surfaces;
    if !with_bordiga.iter().any(|s| s == "bordiga_6") {
        with_bordiga.push("bordiga_6".into());
    }
    let bordiga = search::ascending_chain_search(&Target::numbers(10, 6), &cx.search_config(with_bordiga), cx.catalog)?;
    let bordiga_route = bordiga.chain().map(|c| {
        let uses = c
            .steps
            .iter()
            .any(|s| s.after.witness.as_ref().is_some_and(|w| w.surface == "bordiga_6"));
        (uses, chain_summary(c))
    });
    Ok(vec![
        Check::derived(
            "ACM (d,g) with d ≤ 9 admitted by h-vectors and Castelnuovo's bound",
            &admitted,
            [(4, 0), (5, 1), (6, 2), (7, 3), (8, 4), (8, 5), (9, 5), (9, 6), (9, 7)],
        ),
        Check::info("of these, (d,g) with a screened class on the surfaces", &targets),
        Check::published(
            "(d,g) without an ascending chain from a line",
            &unreached,
            Vec::<[i64; 2]>::new(),
        ),
        Check::info("routes", routes),
        Check::published(
            "(10,6) reached through the Bordiga surface",
            bordiga_route.as_ref().map(|r| r.0),
            true,
        ),
        Check::info("(10,6) route", bordiga_route.map(|r| r.1)),
    ])
}

fn ex3_2(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let surfaces = cx.surfaces(&["cubic_scroll"])?;
    let scroll = cat.surface("cubic_scroll")?;
    let l1 = curve_on(cat, "cubic_scroll", &[0, -1], RaoTag::zero(), "L1")?;
    let l2 = curve_on(cat, "cubic_scroll", &[1, 1], RaoTag::zero(), "L2")?;
    let c1 = liaison::elementary_biliaison(&l1, 3, cat)?;
    let c2 = liaison::elementary_biliaison(&l2, 3, cat)?;
    let conic = scroll.class(&[1, 0])?;
    let phi1 = liaison::hilbert_function_after_biliaison(&line_hf(12), scroll, 3);
    let phi2 = liaison::hilbert_function_after_biliaison(&line_hf(12), scroll, 3);
    let phi1 =
        phi1.ok_or_else(|| ExperimentError::InvalidInvocation("cubic_scroll lacks a section h-vector".into()))?;
    let h = liaison::h_vector_from_hilbert_function(&phi1)?;
    let gamma = hilbert::postulation_character(&phi1)?;
    let found = search::ascending_chain_search(&Target::numbers(10, 9), &cx.search_config(surfaces), cat)?;
    Ok(vec![
        Check::published("L1 + 3H", notation(&c1)?, "(6;2)"),
        Check::published("L2 + 3H", notation(&c2)?, "(7;4)"),
        Check::published("C1 (d,g)", numbers(&c1), [10, 9]),
        Check::published("C2 (d,g)", numbers(&c2), [10, 9]),
        Check::published("C1 self-intersection", self_int(&c1)?, 32),
        Check::published("C2 self-intersection", self_int(&c2)?, 33),
        Check::published(
            "C1 trisecant lines",
            secants_json(&curves::k_secant_lines(&c1, 3, cat)?),
            json!([]),
        ),
        Check::published(
            "C2 trisecant lines",
            secants_json(&curves::k_secant_lines(&c2, 3, cat)?),
            json!([{"class": "(1;1)", "family": "one_parameter"}]),
        ),
        Check::published(
            "C1 · plane of the conic (1;0)",
            lattice::intersect(class_of(&c1)?, &conic)?,
            6,
        ),
        Check::published(
            "C2 · plane of the conic (1;0)",
            lattice::intersect(class_of(&c2)?, &conic)?,
            7,
        ),
        Check::published("C1 pencil degree", curves::plane_pencil_bound(&c1, &conic, cat)?, 4),
        Check::published("C2 pencil degree", curves::plane_pencil_bound(&c2, &conic, cat)?, 3),
        Check::derived("C1 family dimension", family_dim(&c1, cat)?, 42),
        Check::derived("C2 family dimension", family_dim(&c2, cat)?, 43),
        Check::derived(
            "Hilbert-scheme lower bound 5d+1-g",
            liaison::hilbert_dim_lower_bound(10, 9),
            42,
        ),
        Check::derived("Hilbert function φ(0..8)", &phi1[..8], [1, 5, 12, 22, 32, 42, 52, 62]),
        Check::published(
            "C1 and C2 share their Hilbert function",
            Some(&phi1) == phi2.as_ref(),
            true,
        ),
        Check::derived("h-vector", h.entries(), [1, 3, 3, 3]),
        Check::derived("postulation character", &gamma.values, [-1, -2, 0, 0, 3]),
        Check::trivial("character sums (Σγ, Σnγ)", [gamma.sum(), gamma.weighted_sum()], [0, 10]),
        Check::published(
            "linkage moves in the shortest ascending chain from a line",
            found.chain().map(|c| c.link_steps()),
            1,
        ),
    ])
}

fn ex3_4(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let bordiga = cat.surface("bordiga_6")?;
    let l = [
        vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1],
        vec![1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        vec![2, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0],
    ];
    let m = 3;
    let mut lines = Vec::new();
    let mut cs = Vec::new();
    for (i, coeffs) in l.iter().enumerate() {
        let li = curve_on(cat, "bordiga_6", coeffs, RaoTag::zero(), format!("L{}", i + 1).as_str())?;
        cs.push(liaison::elementary_biliaison(&li, m, cat)?);
        lines.push(li);
    }
    let squares: Vec<i64> = lines.iter().map(self_int).collect::<Result<_>>()?;
    let c_squares: Vec<i64> = cs.iter().map(self_int).collect::<Result<_>>()?;
    let nums: Vec<[i64; 2]> = cs.iter().map(numbers).collect();
    let phi = liaison::hilbert_function_after_biliaison(&line_hf(10), bordiga, m)
        .ok_or_else(|| ExperimentError::InvalidInvocation("bordiga_6 lacks a section h-vector".into()))?;
    let gamma = hilbert::postulation_character(&phi)?;
    let mut distinct = c_squares.clone();
    distinct.dedup();
    let special: Vec<_> = bordiga
        .special_position_notes
        .iter()
        .map(|n| json!({"line": n.line_class.notation(), "when": n.condition}))
        .collect();
    Ok(vec![
        Check::published("L_i^2", &squares, [-1, -2, -3]),
        Check::derived("L_i (d,g)", lines.iter().map(numbers).collect::<Vec<_>>(), [[1, 0]; 3]),
        Check::derived("C_i = L_i + 3H (d,g)", &nums, [[19, 27]; 3]),
        Check::published("the C_i share (d,g)", nums.iter().all(|x| *x == nums[0]), true),
        Check::derived("C_i^2", &c_squares, [59, 58, 57]),
        Check::published("the C_i have distinct self-intersections", distinct.len() == 3, true),
        Check::derived("shared Hilbert function φ(0..6)", &phi[..6], [1, 5, 15, 31, 50, 69]),
        Check::derived("shared postulation character", &gamma.values, [-1, -2, -3, 0, 3, 3]),
        Check::info("special positions that make L2, L3 lines", special),
    ])
}

fn ex3_6(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let c1 = curve_on(cat, "cubic_scroll", &[6, 2], RaoTag::zero(), "scroll analogue")?;
    let b = curve_on(
        cat,
        "bordiga_6",
        &[5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        RaoTag::zero(),
        "Bordiga analogue",
    )?;
    Ok(vec![
        Check::published("5d+1-g for (20,26)", liaison::hilbert_dim_lower_bound(20, 26), 75),
        Check::not_recomputed(
            "dimension bound, determinantal (20,26) family",
            69,
            Provenance::Published,
        ),
        Check::not_recomputed(
            "dimension bound, (20,26) curves on degree-10 surfaces",
            74,
            Provenance::Published,
        ),
        Check::derived("scroll (6;2): family dimension", family_dim(&c1, cat)?, 42),
        Check::derived(
            "scroll (6;2): 5d+1-g",
            liaison::hilbert_dim_lower_bound(c1.degree, c1.genus),
            42,
        ),
        Check::derived("Bordiga (5;1^10): (d,g)", numbers(&b), [10, 6]),
        Check::derived("Bordiga (5;1^10): family dimension", family_dim(&b, cat)?, 46),
        Check::derived(
            "Bordiga (5;1^10): 5d+1-g",
            liaison::hilbert_dim_lower_bound(b.degree, b.genus),
            45,
        ),
    ])
}

fn prop4_1(_cx: &Cx) -> Result<Vec<Check>> {
    let mut got = Vec::new();
    let mut raos = Vec::new();
    for d in 2..=8 {
        let c = curves::minimal_curve_m_k(d)?;
        got.push(numbers(&c));
        raos.push(c.rao);
    }
    let want: Vec<[i64; 2]> = (2..=8).map(|d| [d, (d - 2) * (d - 3) / 2 - 1]).collect();
    Ok(vec![
        Check::derived("(d,g) of line ⊔ plane curve of degree d-1, d = 2..8", got, want),
        Check::published(
            "Rao module k in degree 0 for every d",
            raos.iter().all(|r| *r == RaoTag::simple_k(0)),
            true,
        ),
        Check::trivial(
            "degree 2 is two skew lines",
            numbers(&curves::minimal_curve_m_k(2)?),
            [2, -1],
        ),
    ])
}

fn ex4_2(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let start = curve_on(cat, "cubic_scroll", &[2, 2], RaoTag::simple_k(0), "two skew lines")?;
    let c = liaison::elementary_biliaison(&start, 1, cat)?;
    Ok(vec![
        Check::published(
            "minimal curve of degree 2 (d,g)",
            numbers(&curves::minimal_curve_m_k(2)?),
            [2, -1],
        ),
        Check::derived("(2;2) on the scroll (d,g)", numbers(&start), [2, -1]),
        Check::derived("(2;2) + H", notation(&c)?, "(4;3)"),
        Check::published("(d,g) after one biliaison", numbers(&c), [5, 0]),
        Check::published("Rao module kind", c.rao.kind, RaoKind::SimpleK),
        Check::published("Rao module degree", c.rao.shift, 1),
    ])
}

fn ex4_3(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let skew = curve_on(
        cat,
        "del_pezzo_4",
        &[0, -1, -1, 0, 0, 0],
        RaoTag::simple_k(0),
        "two skew lines",
    )?;
    let c1 = liaison::elementary_biliaison(&skew, 1, cat)?;
    let tri1 = curves::k_secant_lines(&c1, 3, cat)?;
    let m3 = curve_on(cat, "cubic_scroll", &[1, -1], RaoTag::simple_k(0), "conic and line")?;
    let c2 = liaison::elementary_biliaison(&m3, 1, cat)?;
    let tri2 = curves::k_secant_lines(&c2, 3, cat)?;
    Ok(vec![
        Check::derived(
            "del Pezzo start (d,g)",
            numbers(&skew),
            numbers(&curves::minimal_curve_m_k(2)?),
        ),
        Check::derived("del Pezzo: e1 + e2 + H", notation(&c1)?, "(3;0^2,1^3)"),
        Check::published("del Pezzo: (d,g)", numbers(&c1), [6, 1]),
        Check::published("del Pezzo: Rao module degree", c1.rao.shift, 1),
        Check::published("del Pezzo: number of trisecants", tri1.len(), 2),
        Check::derived(
            "del Pezzo: trisecant classes",
            secants_json(&tri1),
            json!([{"class": "(1;1^2,0^3)", "family": "finite"}, {"class": "(2;1^5)", "family": "finite"}]),
        ),
        Check::derived(
            "scroll start (d,g)",
            numbers(&m3),
            numbers(&curves::minimal_curve_m_k(3)?),
        ),
        Check::derived("scroll: (1;-1) + H", notation(&c2)?, "(3;0)"),
        Check::published("scroll: (d,g)", numbers(&c2), [6, 1]),
        Check::published("scroll: Rao module degree", c2.rao.shift, 1),
        Check::published(
            "scroll: trisecants move in a one-parameter family",
            tri2.iter().any(|(_, f)| *f == crate::catalog::LineFamily::OneParameter),
            true,
        ),
    ])
}

fn ex4_4(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let skew = curve_on(
        cat,
        "castelnuovo_5",
        &[0, 0, -1, -1, 0, 0, 0, 0, 0],
        RaoTag::simple_k(0),
        "two skew lines",
    )?;
    let a = liaison::elementary_biliaison(&skew, 1, cat)?;
    let m3 = curve_on(
        cat,
        "del_pezzo_4",
        &[1, 1, -1, 0, 0, 0],
        RaoTag::simple_k(0),
        "conic and line",
    )?;
    let b = liaison::elementary_biliaison(&m3, 1, cat)?;
    Ok(vec![
        Check::derived("Castelnuovo start (d,g)", numbers(&skew), [2, -1]),
        Check::published("Castelnuovo route (d,g)", numbers(&a), [7, 2]),
        Check::published("Castelnuovo route Rao module degree", a.rao.shift, 1),
        Check::derived("del Pezzo start (d,g)", numbers(&m3), [3, -1]),
        Check::published("del Pezzo route (d,g)", numbers(&b), [7, 2]),
        Check::published("del Pezzo route Rao module degree", b.rao.shift, 1),
        Check::info("classes", [notation(&a)?, notation(&b)?]),
    ])
}

fn ex4_5(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let surfaces = cx.surfaces(&["cubic_scroll", "bordiga_6"])?;
    let start = curve_on(cat, "cubic_scroll", &[2, 2], RaoTag::simple_k(0), "two skew lines")?;
    let mut chain = Chain::new(start.clone());
    liaison::apply_step(&mut chain, StepKind::Biliaison { h: 1 }, cat)?;
    let bordiga = cat.surface("bordiga_6")?;
    liaison::rewitness_step(&mut chain, bordiga, bordiga.class(&[2, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0])?)?;
    liaison::apply_step(&mut chain, StepKind::Biliaison { h: 1 }, cat)?;
    let end = chain.end().clone();
    let replays = chain.validate(cat).is_ok();
    let cfg = SearchConfig {
        start: Start::Curves(vec![start]),
        ..cx.search_config(surfaces)
    };
    let found = search::ascending_chain_search(&Target::numbers(11, 7), &cfg, cat)?;
    let fam = family_dim(&end, cat)?;
    let bound = liaison::hilbert_dim_lower_bound(end.degree, end.genus);
    Ok(vec![
        Check::published(
            "intermediate (d,g) on the scroll",
            numbers(&chain.steps[0].after),
            [5, 0],
        ),
        Check::derived("class on the Bordiga surface", notation(&end)?, "(6;2^3,1^7)"),
        Check::published("(d,g)", numbers(&end), [11, 7]),
        Check::published("linkage moves", chain.link_steps(), 2),
        Check::published("Rao module degree", end.rao.shift, 2),
        Check::trivial("chain replays", replays, true),
        Check::derived("family dimension on Bordiga surfaces", fam, 47),
        Check::derived("5d+1-g", bound, 49),
        Check::published("Bordiga family is smaller than every component", fam < bound, true),
        Check::derived(
            "search: linkage moves in the shortest chain",
            found.chain().map(|c| c.link_steps()),
            2,
        ),
        Check::info("search: route", found.chain().map(chain_summary)),
    ])
}

fn prop4_7(_cx: &Cx) -> Result<Vec<Check>> {
    let mut samples = Vec::new();
    let mut min_ok = true;
    let mut c_one_is_a = true;
    for a in 2..=4i64 {
        let kinds = [
            LesperanceType::A,
            LesperanceType::B { b: a },
            LesperanceType::C { b: 1 },
            LesperanceType::C { b: 2 },
            // twisted cubic for a = 2, otherwise a complete intersection of
            // two surfaces of degree a
            if a == 2 {
                LesperanceType::D {
                    acm_degree: 3,
                    acm_genus: 0,
                }
            } else {
                LesperanceType::D {
                    acm_degree: a * a,
                    acm_genus: a * a * (a - 2) + 1,
                }
            },
        ];
        let ta = curves::lesperance_curve(LesperanceType::A, a)?;
        for k in kinds {
            let c = curves::lesperance_curve(k, a)?;
            min_ok &= c.degree > a;
            samples.push(json!({"a": a, "type": k, "d": c.degree, "g": c.genus}));
        }
        c_one_is_a &= numbers(&curves::lesperance_curve(LesperanceType::C { b: 1 }, a)?) == numbers(&ta);
        min_ok &= ta.degree == a + 1;
    }
    Ok(vec![
        Check::published("every sample has degree ≥ a+1, type a attains it", min_ok, true),
        Check::published("type c with b = 1 has the numbers of type a", c_one_is_a, true),
        Check::info("samples", samples),
    ])
}

fn ex4_8(_cx: &Cx) -> Result<Vec<Check>> {
    let b = curves::lesperance_curve(LesperanceType::B { b: 2 }, 2)?;
    let d = curves::lesperance_curve(
        LesperanceType::D {
            acm_degree: 3,
            acm_genus: 0,
        },
        2,
    )?;
    Ok(vec![
        Check::published("two conics: degree", b.degree, 4),
        Check::published("line and twisted cubic: degree", d.degree, 4),
        Check::derived("two conics: (d,g)", numbers(&b), [4, -1]),
        Check::derived("line and twisted cubic: (d,g)", numbers(&d), [4, -1]),
        Check::published("two conics: Rao module", b.rao.kind, RaoKind::MA(2)),
        Check::published("line and twisted cubic: Rao module", d.rao.kind, RaoKind::MA(2)),
    ])
}

fn ex4_10(cx: &Cx) -> Result<Vec<Check>> {
    let cat = cx.catalog;
    let dp = cat.surface("del_pezzo_4")?;
    let c1 = curve_on(
        cat,
        "del_pezzo_4",
        &[2, 2, 0, 0, 0, 0],
        RaoTag::m_a(2, 0),
        "two disjoint conics",
    )?;
    let c2 = curve_on(
        cat,
        "del_pezzo_4",
        &[1, 0, 0, 0, 0, -1],
        RaoTag::m_a(2, 0),
        "twisted cubic and line",
    )?;
    let d1 = liaison::elementary_biliaison(&c1, 1, cat)?;
    let d2 = liaison::elementary_biliaison(&c2, 1, cat)?;
    let conic = dp.class(&[2, 0, 1, 1, 1, 1])?;
    let p1 = curves::multisecant_profile(&d1, cat)?;
    let p2 = curves::multisecant_profile(&d2, cat)?;
    let quad2 = curves::k_secant_lines(&d2, 4, cat)?;
    let fam = family_dim(&d1, cat)?;
    let bound = liaison::hilbert_dim_lower_bound(8, 3);
    Ok(vec![
        Check::published("D1 = C1 + H", notation(&d1)?, "(5;3,1^4)"),
        Check::published("D2 = C2 + H", notation(&d2)?, "(4;1^4,0)"),
        Check::published("D1 (d,g)", numbers(&d1), [8, 3]),
        Check::published("D2 (d,g)", numbers(&d2), [8, 3]),
        Check::published("D1 self-intersection", self_int(&d1)?, 12),
        Check::published("D2 self-intersection", self_int(&d2)?, 12),
        Check::published("D1 line profile", p1.notation(), "(1^8,3^8)"),
        Check::published("D2 line profile", p2.notation(), "(0,1^4,2^6,3^4,4)"),
        Check::published("D1 has trisecants", p1.values().contains(&3), true),
        Check::published("D1 has a quadrisecant", p1.values().contains(&4), false),
        Check::published("D2 has a quadrisecant", !quad2.is_empty(), true),
        Check::derived(
            "D2 quadrisecant classes",
            secants_json(&quad2),
            json!([{"class": "(2;1^5)", "family": "finite"}]),
        ),
        Check::published(
            "D1 · plane of the conic (2;0,1^4)",
            lattice::intersect(class_of(&d1)?, &conic)?,
            6,
        ),
        Check::published(
            "D2 · plane of the conic (2;0,1^4)",
            lattice::intersect(class_of(&d2)?, &conic)?,
            5,
        ),
        Check::published("D1 pencil degree", curves::plane_pencil_bound(&d1, &conic, cat)?, 2),
        Check::published("D2 pencil degree", curves::plane_pencil_bound(&d2, &conic, cat)?, 3),
        Check::derived("D1 family dimension", fam, 36),
        Check::derived("5d+1-g for (8,3)", bound, 38),
        Check::published("D1 family is smaller than every component", fam < bound, true),
        Check::info("D2 family dimension", family_dim(&d2, cat)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_ids_list_the_registry() {
        let err = run_experiment("ex9.9", Catalog::builtin(), &RunOptions::default()).unwrap_err();
        assert!(err.is_invocation_error());
        assert!(err.to_string().contains("ex3.2"));
    }

    #[test]
    fn empty_surface_list_is_an_invocation_error() {
        let opts = RunOptions {
            surfaces: Some(vec![]),
            ..RunOptions::default()
        };
        let err = run_experiment("ex3.2", Catalog::builtin(), &opts).unwrap_err();
        assert!(err.is_invocation_error());
    }

    #[test]
    fn registry_has_sixteen_entries() {
        let ids = experiment_ids();
        assert_eq!(ids.len(), 16);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 16);
    }
}
