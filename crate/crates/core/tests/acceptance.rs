//! Acceptance criteria 1–9. Each criterion recomputes its numbers through the
//! library and, where an experiment covers it, also checks the report. One
//! PASS/FAIL line is printed per criterion; run with `--nocapture` to see them.

use liaison_core::catalog::{Catalog, LineFamily};
use liaison_core::curves::{self, CurveRecord, RaoKind, RaoTag};
use liaison_core::experiments::{self, RunOptions};
use liaison_core::glicci::{self, GlicciConfig, PointAmbient};
use liaison_core::hilbert::{self, HVector};
use liaison_core::lattice::{self, DivisorClass};
use liaison_core::liaison::{self, curve_on};
use liaison_core::par::{with_threads, Parallelism};
use liaison_core::report::{Provenance, Status};
use liaison_core::search::{self, SearchConfig, Target};
use liaison_core::ExperimentReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($left:expr, $right:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($left), l, r));
        }
    }};
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn cat() -> &'static Catalog {
    Catalog::builtin()
}

fn report(id: &str) -> Result<ExperimentReport, String> {
    let r = experiments::run_experiment(id, cat(), &RunOptions::default()).map_err(e)?;
    let bad: Vec<&str> = r.mismatches().map(|c| c.name.as_str()).collect();
    ensure!(bad.is_empty(), "{id} mismatches: {bad:?}");
    Ok(r)
}

fn computed(r: &ExperimentReport, name: &str) -> Result<serde_json::Value, String> {
    r.check(name)
        .and_then(|c| c.computed.clone())
        .ok_or_else(|| format!("{}: no computed value for {name:?}", r.id))
}

fn class(surface: &str, notation: &str) -> Result<DivisorClass, String> {
    let s = cat().surface(surface).map_err(e)?;
    lattice::parse_for_basis(notation, s.basis).map_err(e)
}

fn criterion_1() -> Outcome {
    let scroll = cat().surface("cubic_scroll").map_err(e)?;
    let l1 = curve_on(cat(), "cubic_scroll", &[0, -1], RaoTag::zero(), "L1").map_err(e)?;
    let l2 = curve_on(cat(), "cubic_scroll", &[1, 1], RaoTag::zero(), "L2").map_err(e)?;
    let c1 = liaison::elementary_biliaison(&l1, 3, cat()).map_err(e)?;
    let c2 = liaison::elementary_biliaison(&l2, 3, cat()).map_err(e)?;
    ensure_eq!(c1.witness().map_err(e)?.class.notation(), "(6;2)");
    ensure_eq!(c2.witness().map_err(e)?.class.notation(), "(7;4)");
    ensure_eq!(c1.numbers(), (10, 9));
    ensure_eq!(c2.numbers(), (10, 9));
    let sq = |c: &CurveRecord| lattice::self_intersection(&c.witness().unwrap().class).unwrap();
    ensure_eq!(sq(&c1), 32);
    ensure_eq!(sq(&c2), 33);
    ensure!(
        curves::k_secant_lines(&c1, 3, cat()).map_err(e)?.is_empty(),
        "C1 has a trisecant"
    );
    let tri2 = curves::k_secant_lines(&c2, 3, cat()).map_err(e)?;
    ensure_eq!(tri2, vec![(DivisorClass::blown_up(1, &[1]), LineFamily::OneParameter)]);
    let conic = DivisorClass::blown_up(1, &[0]);
    ensure!(scroll.conics().contains(&conic), "(1;0) is not a conic class");
    let meet = |c: &CurveRecord| lattice::intersect(&c.witness().unwrap().class, &conic).unwrap();
    ensure_eq!((meet(&c1), meet(&c2)), (6, 7));
    let pencil = |c: &CurveRecord| curves::plane_pencil_bound(c, &conic, cat());
    ensure_eq!((pencil(&c1).map_err(e)?, pencil(&c2).map_err(e)?), (4, 3));

    let r = report("ex3.2")?;
    ensure_eq!(computed(&r, "C1 self-intersection")?, json!(32));
    ensure_eq!(computed(&r, "C2 self-intersection")?, json!(33));
    Ok("C1=(6;2), C2=(7;4): (10,9), C²=32/33, trisecants ∅/{ruling}, planes 6/7, pencils 4/3".into())
}

fn criterion_2() -> Outcome {
    let dp4 = cat().surface("del_pezzo_4").map_err(e)?;
    let d1 = CurveRecord::on_surface(dp4, class("del_pezzo_4", "(5;3,1^4)")?, RaoTag::unknown(), "D1").map_err(e)?;
    let d2 = CurveRecord::on_surface(dp4, class("del_pezzo_4", "(4;1^4,0)")?, RaoTag::unknown(), "D2").map_err(e)?;
    ensure_eq!(d1.numbers(), (8, 3));
    ensure_eq!(d2.numbers(), (8, 3));
    let sq = |c: &CurveRecord| lattice::self_intersection(&c.witness().unwrap().class).unwrap();
    ensure_eq!((sq(&d1), sq(&d2)), (12, 12));
    let p1 = curves::multisecant_profile(&d1, cat()).map_err(e)?;
    let p2 = curves::multisecant_profile(&d2, cat()).map_err(e)?;
    ensure_eq!(p1.notation(), "(1^8,3^8)");
    ensure_eq!(p2.notation(), "(0,1^4,2^6,3^4,4)");
    let conic = class("del_pezzo_4", "(2;0,1^4)")?;
    let meet = |c: &CurveRecord| lattice::intersect(&c.witness().unwrap().class, &conic).unwrap();
    ensure_eq!((meet(&d1), meet(&d2)), (6, 5));
    let pencil = |c: &CurveRecord| curves::plane_pencil_bound(c, &conic, cat());
    ensure_eq!((pencil(&d1).map_err(e)?, pencil(&d2).map_err(e)?), (2, 3));
    let fam = liaison::family_dimension(dp4, &d1.witness().unwrap().class).map_err(e)?;
    let bound = liaison::hilbert_dim_lower_bound(8, 3);
    ensure_eq!((fam, bound), (36, 38));
    ensure!(fam < bound, "36 < 38 fails");

    let r = report("ex4.10")?;
    ensure_eq!(computed(&r, "D1 line profile")?, json!("(1^8,3^8)"));
    Ok("(8,3), C²=12, profiles (1^8,3^8)/(0,1^4,2^6,3^4,4), planes 6/5, pencils 2/3, 36 < 38".into())
}

fn criterion_3() -> Outcome {
    let bordiga = cat().surface("bordiga_6").map_err(e)?;
    let ls = ["(0;0^9,-1)", "(1;1^3,0^7)", "(2;1^7,0^3)"];
    let mut squares = Vec::new();
    let mut numbers = Vec::new();
    let mut c_squares = Vec::new();
    for l in ls {
        let lc = class("bordiga_6", l)?;
        ensure_eq!(lattice::degree(&lc, bordiga).map_err(e)?, 1);
        ensure_eq!(lattice::arithmetic_genus(&lc, bordiga).map_err(e)?, 0);
        squares.push(lattice::self_intersection(&lc).map_err(e)?);
        let rec = CurveRecord::on_surface(bordiga, lc, RaoTag::zero(), "L").map_err(e)?;
        let c = liaison::elementary_biliaison(&rec, 3, cat()).map_err(e)?;
        numbers.push(c.numbers());
        c_squares.push(lattice::self_intersection(&c.witness().unwrap().class).map_err(e)?);
    }
    ensure_eq!(squares, vec![-1, -2, -3]);
    ensure!(
        numbers.iter().all(|n| *n == numbers[0]),
        "C_i numbers differ: {numbers:?}"
    );
    ensure!(
        c_squares[0] != c_squares[1] && c_squares[1] != c_squares[2] && c_squares[0] != c_squares[2],
        "C_i^2 not distinct: {c_squares:?}"
    );
    report("ex3.4")?;
    Ok(format!(
        "L_i² = -1,-2,-3; C_i share {:?}; C_i² = {c_squares:?}",
        numbers[0]
    ))
}

fn criterion_4() -> Outcome {
    ensure_eq!(liaison::hilbert_dim_lower_bound(20, 26), 75);
    let r = report("ex3.6")?;
    let consts: Vec<i64> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::NotRecomputed)
        .filter_map(|c| c.reference.as_ref())
        .filter(|r| r.provenance == Provenance::Published && !r.recomputed)
        .filter_map(|r| r.value.as_i64())
        .collect();
    ensure_eq!(consts, vec![69, 74]);
    ensure!(
        r.to_table().contains("not recomputed"),
        "table lacks the not-recomputed marker"
    );
    Ok("5d+1-g = 75; 69 and 74 shown as published, not recomputed".into())
}

fn criterion_5() -> Outcome {
    let m2 = curves::minimal_curve_m_k(2).map_err(e)?;
    ensure_eq!(m2.numbers(), (2, -1));
    let k0 = RaoTag::simple_k(0);
    let step = |surface: &str, coeffs: &[i64]| -> Result<CurveRecord, String> {
        let start = curve_on(cat(), surface, coeffs, k0, "start").map_err(e)?;
        liaison::elementary_biliaison(&start, 1, cat()).map_err(e)
    };
    let check = |c: &CurveRecord, numbers: (i64, i64), shift: i64| -> Result<(), String> {
        ensure_eq!(c.numbers(), numbers);
        ensure_eq!((c.rao.kind, c.rao.shift), (RaoKind::SimpleK, shift));
        Ok(())
    };
    // ex4.2: two skew lines (2;2) on the scroll
    let c42 = step("cubic_scroll", &[2, 2])?;
    check(&c42, (5, 0), 1)?;
    // ex4.3: del Pezzo from degree 2, scroll from degree 3
    check(&step("del_pezzo_4", &[0, -1, -1, 0, 0, 0])?, (6, 1), 1)?;
    check(&step("cubic_scroll", &[1, -1])?, (6, 1), 1)?;
    // ex4.4: Castelnuovo from degree 2, del Pezzo from degree 3
    check(&step("castelnuovo_5", &[0, 0, -1, -1, 0, 0, 0, 0, 0])?, (7, 2), 1)?;
    check(&step("del_pezzo_4", &[1, 1, -1, 0, 0, 0])?, (7, 2), 1)?;
    // ex4.5: on to the Bordiga surface, one more biliaison
    let bordiga = cat().surface("bordiga_6").map_err(e)?;
    let mut chain = liaison::Chain::new(curve_on(cat(), "cubic_scroll", &[2, 2], k0, "start").map_err(e)?);
    liaison::apply_step(&mut chain, liaison::StepKind::Biliaison { h: 1 }, cat()).map_err(e)?;
    liaison::rewitness_step(&mut chain, bordiga, class("bordiga_6", "(2;1^3,0^7)")?).map_err(e)?;
    liaison::apply_step(&mut chain, liaison::StepKind::Biliaison { h: 1 }, cat()).map_err(e)?;
    chain.validate(cat()).map_err(e)?;
    check(chain.end(), (11, 7), 2)?;
    ensure_eq!(chain.link_steps(), 2);

    for id in ["ex4.2", "ex4.3", "ex4.4", "ex4.5"] {
        report(id)?;
    }
    Ok("(2,-1); (5,0) shift 1; (6,1) twice; (7,2) twice; (11,7) in 2 steps, shift 2".into())
}

fn criterion_6() -> Outcome {
    let three = ["cubic_scroll", "del_pezzo_4", "castelnuovo_5"];
    let targets = hilbert::acm_curve_numbers(9, 3);
    ensure!(!targets.is_empty(), "no targets");
    let cfg = SearchConfig::on(&three);
    let mut longest = 0;
    for &(d, g) in &targets {
        ensure!(
            search::screened_witness(&three, d, g, cat()).map_err(e)?.is_some(),
            "({d},{g}) has no screened class"
        );
        let out = search::ascending_chain_search(&Target::numbers(d, g), &cfg, cat()).map_err(e)?;
        let chain = out.chain().ok_or(format!("no chain to ({d},{g})"))?;
        chain.validate(cat()).map_err(e)?;
        ensure_eq!(chain.end().numbers(), (d, g));
        ensure!(chain.ascending_only, "chain to ({d},{g}) is not ascending");
        longest = longest.max(chain.link_steps());
    }
    let cfg = SearchConfig::on(&["cubic_scroll", "del_pezzo_4", "castelnuovo_5", "bordiga_6"]);
    let out = search::ascending_chain_search(&Target::numbers(10, 6), &cfg, cat()).map_err(e)?;
    let chain = out.chain().ok_or("no chain to (10,6)")?;
    chain.validate(cat()).map_err(e)?;
    ensure_eq!(chain.end().witness().map_err(e)?.surface.as_str(), "bordiga_6");
    report("prop3.1")?;
    Ok(format!(
        "{} targets with d ≤ 9 (longest {longest} moves); (10,6) via bordiga_6",
        targets.len()
    ))
}

fn criterion_7() -> Outcome {
    let run = |n: i64, ambient: PointAmbient| -> Result<glicci::PointChain, String> {
        let out = glicci::glicci_chain(n, &GlicciConfig::new(ambient)).map_err(e)?;
        let c = out
            .chain()
            .ok_or(format!("no chain for {n} points in {ambient:?}"))?
            .clone();
        c.validate().map_err(e)?;
        ensure_eq!(c.end(), &HVector::point(ambient.codim()));
        Ok(c)
    };
    for n in 1..=19 {
        run(n, PointAmbient::P3)?;
    }
    for n in 1..=30 {
        run(n, PointAmbient::P2)?;
    }
    let c18 = run(18, PointAmbient::P3)?;
    let r = report("cor2.4")?;
    ensure_eq!(
        computed(&r, "18 points: some configuration exceeds 18")?,
        json!(c18.max_intermediate_degree > 18)
    );
    report("prop2.1")?;
    Ok(format!(
        "P³ n ≤ 19 and P² n ≤ 30 all replay; n=18 degrees {:?}, largest {} (exceeds 18: {})",
        c18.degrees(),
        c18.max_intermediate_degree,
        c18.max_intermediate_degree > 18
    ))
}

const TRIALS: usize = 1000;

fn random_class(rng: &mut ChaCha8Rng, surface: &str) -> Result<DivisorClass, String> {
    let s = cat().surface(surface).map_err(e)?;
    let v: Vec<i64> = (0..s.basis.rank()).map(|_| rng.gen_range(-8..=8)).collect();
    DivisorClass::new(s.basis, v).map_err(e)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ids = cat().ids();
    for _ in 0..TRIALS {
        let id = &ids[rng.gen_range(0..ids.len())];
        let s = cat().surface(id).map_err(e)?;
        let (x, y, z) = (
            random_class(&mut rng, id)?,
            random_class(&mut rng, id)?,
            random_class(&mut rng, id)?,
        );
        let a = rng.gen_range(-5..=5);
        let i = |p: &DivisorClass, q: &DivisorClass| lattice::intersect(p, q).unwrap();
        ensure_eq!(i(&x, &y), i(&y, &x));
        ensure_eq!(i(&x.plus_multiple(a, &y).map_err(e)?, &z), i(&x, &z) + a * i(&y, &z));
        ensure_eq!((i(&x, &x) + i(&x, &s.canonical)).rem_euclid(2), 0);

        let rao = RaoTag::simple_k(rng.gen_range(-3..=3));
        let c = CurveRecord::on_surface(s, x.clone(), rao, "x").map_err(e)?;
        let h = rng.gen_range(-3..=3);
        let b = liaison::elementary_biliaison(&c, h, cat()).map_err(e)?;
        let direct = x.plus_multiple(h, &s.hyperplane).map_err(e)?;
        ensure_eq!(b.genus, lattice::arithmetic_genus(&direct, s).map_err(e)?);
        ensure_eq!(
            b.numbers(),
            liaison::biliaison_numbers(c.degree, c.genus, h, s.degree, s.hk())
        );

        let (m, m2) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let once = liaison::g_link_on_surface(&c, m, cat()).map_err(e)?;
        let back = liaison::g_link_on_surface(&once, m, cat()).map_err(e)?;
        ensure_eq!((back.witness.clone(), back.rao), (c.witness.clone(), c.rao));
        let twice = liaison::g_link_on_surface(&once, m2, cat()).map_err(e)?;
        let bil = liaison::elementary_biliaison(&c, m2 - m, cat()).map_err(e)?;
        ensure_eq!((twice.witness.clone(), twice.rao), (bil.witness.clone(), bil.rao));

        let (f1, f2) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let d = rng.gen_range(1..=f1 * f2);
        let ac = CurveRecord::abstract_curve(d, rng.gen_range(-5..=30), rao, "x");
        let back = liaison::ci_link_p3(&liaison::ci_link_p3(&ac, f1, f2).map_err(e)?, f1, f2).map_err(e)?;
        ensure_eq!((back.numbers(), back.rao), (ac.numbers(), ac.rao));
    }

    let ws = glicci::ag_candidates_containing(&HVector::point(3), 40, 12, None);
    let mut links = 0;
    let mut tries = 0;
    while links < TRIALS {
        tries += 1;
        ensure!(tries < 200 * TRIALS, "too few valid links sampled");
        let w = &ws[rng.gen_range(0..ws.len())];
        let n = rng.gen_range(1..=w.mass());
        let z = hilbert::generic_points_h_vector(n, 3);
        let Ok(res) = hilbert::link_h_vector(&z, w) else {
            continue;
        };
        links += 1;
        ensure_eq!(z.mass() + res.mass(), w.mass());
        ensure_eq!(hilbert::link_h_vector(&res, w).map_err(e)?, z);
    }

    for _ in 0..TRIALS {
        let n = rng.gen_range(1..200);
        let h = hilbert::generic_points_h_vector(n, 2);
        let phi = hilbert::acm_hilbert_function(h.entries(), 1, h.entries().len() + 3);
        let ch = hilbert::postulation_character(&phi).map_err(e)?;
        ensure_eq!((ch.sum(), ch.weighted_sum()), (0, n));
    }
    for id in ["ex3.2", "ex3.4"] {
        let r = report(id)?;
        let ch = r
            .checks
            .iter()
            .find(|c| c.name.contains("postulation character"))
            .and_then(|c| c.computed.clone())
            .ok_or(format!("{id} has no character"))?;
        let gamma: Vec<i64> = serde_json::from_value(ch).map_err(e)?;
        ensure_eq!(gamma.iter().sum::<i64>(), 0);
        ensure!(
            gamma.iter().enumerate().map(|(n, g)| n as i64 * g).sum::<i64>() > 0,
            "{id}: Σnγ is not a degree"
        );
    }

    let target = Target::numbers(10, 6);
    let run = |mode| {
        let cfg = SearchConfig {
            parallelism: mode,
            ..SearchConfig::default()
        };
        serde_json::to_string(&search::ascending_chain_search(&target, &cfg, cat()).unwrap()).unwrap()
    };
    let reference = run(Parallelism::Sequential);
    for threads in [1, 2, 4] {
        ensure!(
            with_threads(threads, || run(Parallelism::Parallel)) == reference,
            "search differs with {threads} threads"
        );
    }
    let g = |mode| {
        let cfg = GlicciConfig {
            parallelism: mode,
            ..GlicciConfig::new(PointAmbient::P3)
        };
        serde_json::to_string(&glicci::glicci_chain(18, &cfg).unwrap()).unwrap()
    };
    let reference = g(Parallelism::Sequential);
    for threads in [1, 2, 4] {
        ensure!(
            with_threads(threads, || g(Parallelism::Parallel)) == reference,
            "glicci differs with {threads} threads"
        );
    }
    Ok(format!("{TRIALS} seeded trials per property; worker counts 1/2/4 agree (full proptest suites in lattice_props, hilbert_props)"))
}

/// Statements the model cannot decide are never asserted: no check carries
/// them, and model-relative outputs are reported, not compared.
fn criterion_9() -> Outcome {
    let excluded = ["irreducib", "smooth", "specializ", "cohomolog"];
    for id in experiments::experiment_ids() {
        let r = report(id)?;
        for c in &r.checks {
            let name = c.name.to_lowercase();
            if excluded.iter().any(|w| name.contains(w)) {
                ensure!(
                    matches!(c.status, Status::Informational | Status::NotRecomputed),
                    "{id}: {:?} is asserted",
                    c.name
                );
            }
        }
    }
    let r = report("cor2.4")?;
    let twenty = r
        .checks
        .iter()
        .find(|c| c.name.starts_with("20 points"))
        .ok_or("cor2.4 lacks the 20-point entry")?;
    ensure_eq!(twenty.status, Status::Informational);
    Ok("excluded statements are not asserted; 20-point outcome is informational only".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("scroll (10,9) battery", criterion_1),
        ("del Pezzo (8,3) battery", criterion_2),
        ("Bordiga lines L_i + 3H", criterion_3),
        ("(20,26) dimension bound", criterion_4),
        ("minimal-curve constructions", criterion_5),
        ("ascending chains d ≤ 9 and (10,6)", criterion_6),
        ("glicci chains", criterion_7),
        ("property suites", criterion_8),
        ("exclusions", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (label, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        match f() {
            Ok(detail) => println!("criterion {n} PASS  {label}: {detail}"),
            Err(why) => {
                println!("criterion {n} FAIL  {label}: {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
