use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liaison_core::catalog::Catalog;
use liaison_core::curves::{self, CurveRecord};
use liaison_core::experiments::{self, ExperimentError, RunOptions};
use liaison_core::glicci::{self, Admissibility, GlicciConfig, GlicciMode, GlicciOutcome, PointAmbient};
use liaison_core::lattice;
use liaison_core::liaison;
use liaison_core::search::{self, SearchConfig, SearchOutcome, Target};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "liaison",
    version,
    about = "Divisor, linkage and h-vector computations for curves and points"
)]
struct Cli {
    /// surface catalog to use instead of the built-in one
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect catalog surfaces
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Evaluate divisor classes
    Divisor {
        #[command(subcommand)]
        command: DivisorCommand,
    },
    /// Search for biliaison chains from a line
    Biliaison {
        #[command(subcommand)]
        command: BiliaisonCommand,
    },
    /// Link n general points down to a single point
    Glicci(GlicciArgs),
    /// Run scripted reproductions
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// List surface ids
    List,
    /// Show a surface with its lines and conics
    Show {
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum DivisorCommand {
    /// Degree, genus, self-intersection and line profile of a class
    Eval {
        surface: String,
        /// `a,b1,...,bn`, `(a;b1,...)` with `v^k` runs, or `a,b` on the quadric
        coeffs: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum BiliaisonCommand {
    /// Shortest chain from a line to a curve with the given degree and genus
    Chain(ChainArgs),
}

#[derive(Args)]
struct ChainArgs {
    /// `d,g`
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    target: (i64, i64),
    /// only biliaisons with h ≥ 1
    #[arg(long)]
    ascending_only: bool,
    #[arg(long, default_value_t = 8)]
    max_steps: usize,
    #[arg(long, default_value_t = 4)]
    max_height: i64,
    /// comma-separated surface ids
    #[arg(long, value_delimiter = ',')]
    surfaces: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct GlicciArgs {
    #[arg(long)]
    points: i64,
    #[arg(long, value_enum, default_value_t = AmbientArg::P3)]
    ambient: AmbientArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    /// largest configuration allowed along the way (default 3n)
    #[arg(long)]
    max_intermediate: Option<i64>,
    /// allow any O-sequence as an intermediate h-vector
    #[arg(long)]
    permissive: bool,
    /// keep the points on a fixed surface of this degree
    #[arg(long)]
    surface_degree: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// List registered experiment ids
    List,
    /// Run one experiment, or `all`
    Run {
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// run independent experiments on this many workers
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// comma-separated surface ids for experiments that search
        #[arg(long, value_delimiter = ',')]
        surfaces: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    P2,
    P3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Descending,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `d,g`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Outcome of a command: what to print and how to exit.
enum Fail {
    /// bad input; exit 2
    Usage(String),
    /// the computation ran but did not succeed; exit 1
    Failed,
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Failed) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    let owned;
    let catalog = match &cli.catalog {
        Some(p) => {
            owned = Catalog::from_path(p)?;
            &owned
        }
        None => Catalog::builtin(),
    };
    match cli.command {
        Command::Surface { command } => surface(command, catalog),
        Command::Divisor {
            command:
                DivisorCommand::Eval {
                    surface,
                    coeffs,
                    format,
                },
        } => divisor_eval(&surface, &coeffs, format, catalog),
        Command::Biliaison {
            command: BiliaisonCommand::Chain(args),
        } => chain(args, catalog),
        Command::Glicci(args) => glicci_cmd(args),
        Command::Experiment { command } => experiment(command, catalog),
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn surface(cmd: SurfaceCommand, catalog: &Catalog) -> Result<(), Fail> {
    match cmd {
        SurfaceCommand::List => {
            for id in catalog.ids() {
                println!("{id}");
            }
        }
        SurfaceCommand::Show { id, format } => {
            let s = catalog.surface(&id)?;
            let lines: Vec<_> = s
                .lines()
                .iter()
                .map(|l| json!({"class": l.class.notation(), "family": l.family}))
                .collect();
            let conics: Vec<String> = s.conics().iter().map(|c| c.notation()).collect();
            let family_dim = s.family_dim().ok();
            if format == Format::Json {
                print_json(&json!({
                    "id": s.id,
                    "ambient": s.ambient,
                    "hyperplane": s.hyperplane.notation(),
                    "canonical": s.canonical.notation(),
                    "degree": s.degree,
                    "sectional_genus": s.sectional_genus,
                    "family_dim": family_dim,
                    "section_h_vector": s.section_h_vector,
                    "lines": lines,
                    "conics": conics,
                    "special_positions": s.special_position_notes.iter()
                        .map(|n| json!({"line": n.line_class.notation(), "when": n.condition}))
                        .collect::<Vec<_>>(),
                }));
            } else {
                println!("{} in {}", s.id, s.ambient);
                println!("  H = {}   K = {}", s.hyperplane, s.canonical);
                println!("  degree {}, sectional genus {}", s.degree, s.sectional_genus);
                match family_dim {
                    Some(d) => println!("  family dimension {d}"),
                    None => println!("  family dimension: not applicable"),
                }
                println!("  {} line classes:", s.lines().len());
                for l in s.lines().iter() {
                    println!("    {} {:?}", l.class, l.family);
                }
                println!("  conic classes: {}", conics.join(" "));
                for n in &s.special_position_notes {
                    println!("  {} is a line when {}", n.line_class, n.condition);
                }
            }
        }
    }
    Ok(())
}

fn divisor_eval(surface: &str, coeffs: &str, format: Format, catalog: &Catalog) -> Result<(), Fail> {
    let s = catalog.surface(surface)?;
    let class = lattice::parse_for_basis(coeffs, s.basis)?;
    let rec = CurveRecord::on_surface(s, class.clone(), liaison_core::RaoTag::unknown(), "cli")?;
    let c2 = lattice::self_intersection(&class)?;
    let dim = lattice::expected_dim_linear_system(&class, s)?;
    let profile = curves::multisecant_profile(&rec, catalog)?;
    let screened = liaison::passes_effectivity_screen(s, &class)?;
    if format == Format::Json {
        print_json(&json!({
            "surface": s.id,
            "class": class.notation(),
            "degree": rec.degree,
            "genus": rec.genus,
            "self_intersection": c2,
            "expected_dim": dim,
            "line_profile": profile.notation(),
            "passes_effectivity_screen": screened,
        }));
    } else {
        println!("{} on {}", class, s.id);
        println!("  d = {}, g = {}, C^2 = {}", rec.degree, rec.genus, c2);
        println!("  dim |C| (expected) = {dim}");
        println!("  line profile {}", profile.notation());
        println!("  passes effectivity screen: {screened}");
    }
    Ok(())
}

fn surface_list(given: Option<Vec<String>>) -> Result<Option<Vec<String>>, Fail> {
    match given {
        None => Ok(None),
        Some(v) => {
            let v: Vec<String> = v
                .into_iter()
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if v.is_empty() {
                return Err(Fail::Usage("--surfaces is empty".into()));
            }
            Ok(Some(v))
        }
    }
}

fn chain(args: ChainArgs, catalog: &Catalog) -> Result<(), Fail> {
    let mut cfg = SearchConfig {
        ascending_only: args.ascending_only,
        max_steps: args.max_steps,
        max_height: args.max_height,
        ..SearchConfig::default()
    };
    if let Some(s) = surface_list(args.surfaces)? {
        cfg.surfaces = s;
    }
    let (d, g) = args.target;
    let out = search::ascending_chain_search(&Target::numbers(d, g), &cfg, catalog)?;
    if args.format == Format::Json {
        print_json(&out);
    } else {
        match &out {
            SearchOutcome::Found(c) => {
                println!("chain to ({d},{g}), {} linkage moves:", c.link_steps());
                for line in experiments::chain_summary(c) {
                    println!("  {line}");
                }
            }
            SearchOutcome::Exhausted(r) => {
                println!("no chain to ({d},{g}) within the bounds");
                println!(
                    "  levels {}, visited {}, frontier sizes {:?}",
                    r.levels, r.visited, r.frontier_sizes
                );
                println!(
                    "  pruned: effectivity {}, coefficient box {}, degree cap {}",
                    r.pruned.effectivity, r.pruned.coeff_box, r.pruned.degree_cap
                );
                println!(
                    "  bounds: max steps {}, max height {}, box {}, degree cap {}",
                    r.max_steps, r.max_height, r.coeff_box, r.degree_cap
                );
            }
        }
    }
    match out {
        SearchOutcome::Found(_) => Ok(()),
        SearchOutcome::Exhausted(_) => Err(Fail::Failed),
    }
}

fn glicci_cmd(args: GlicciArgs) -> Result<(), Fail> {
    let cfg = GlicciConfig {
        mode: match args.mode {
            ModeArg::Full => GlicciMode::Full,
            ModeArg::Descending => GlicciMode::DescendingOnly,
        },
        admissibility: if args.permissive {
            Admissibility::Permissive
        } else {
            Admissibility::Generic
        },
        max_intermediate: args.max_intermediate,
        surface_degree: args.surface_degree,
        ..GlicciConfig::new(match args.ambient {
            AmbientArg::P2 => PointAmbient::P2,
            AmbientArg::P3 => PointAmbient::P3,
        })
    };
    let out = glicci::glicci_chain(args.points, &cfg)?;
    if args.format == Format::Json {
        print_json(&out);
    } else {
        match &out {
            GlicciOutcome::Found(c) => {
                println!(
                    "{} points: {} links, degrees {:?}",
                    args.points,
                    c.steps.len(),
                    c.degrees()
                );
                println!(
                    "  monotone descending: {}, largest configuration: {}",
                    c.monotone_descending, c.max_intermediate_degree
                );
                for s in &c.steps {
                    println!("  {} in {} -> {}", s.from, s.w, s.to);
                }
            }
            GlicciOutcome::Exhausted(r) => {
                println!("no chain for {} points within the bounds", r.points);
                println!(
                    "  explored {} + {} states over {} levels (max configuration {}, max socle degree {}, max steps {})",
                    r.forward_explored, r.backward_explored, r.levels, r.max_intermediate, r.max_socle, r.max_steps
                );
            }
        }
    }
    match out {
        GlicciOutcome::Found(_) => Ok(()),
        GlicciOutcome::Exhausted(_) => Err(Fail::Failed),
    }
}

fn experiment(cmd: ExperimentCommand, catalog: &Catalog) -> Result<(), Fail> {
    match cmd {
        ExperimentCommand::List => {
            for id in experiments::experiment_ids() {
                println!("{id}");
            }
            Ok(())
        }
        ExperimentCommand::Run {
            id,
            format,
            jobs,
            surfaces,
        } => {
            let ids: Vec<String> = if id == "all" {
                experiments::experiment_ids().iter().map(|s| s.to_string()).collect()
            } else {
                vec![id]
            };
            let opts = RunOptions {
                surfaces: surface_list(surfaces)?,
                ..RunOptions::default()
            };
            let results = experiments::run_many(&ids, catalog, &opts, jobs);
            let mut reports = Vec::new();
            let mut usage: Option<String> = None;
            let mut failed = false;
            for r in results {
                match r {
                    Ok(rep) => {
                        failed |= !rep.all_match();
                        reports.push(rep);
                    }
                    Err(e) if e.is_invocation_error() => usage = Some(e.to_string()),
                    Err(ExperimentError::InvalidInvocation(m)) => usage = Some(m),
                    Err(e) => {
                        eprintln!("error: {e}");
                        failed = true;
                    }
                }
            }
            if format == Format::Json {
                if reports.len() == 1 && ids.len() == 1 {
                    println!("{}", reports[0].to_json());
                } else if !reports.is_empty() {
                    print_json(&reports);
                }
            } else {
                for r in &reports {
                    print!("{}", r.to_table());
                }
            }
            if let Some(m) = usage {
                return Err(Fail::Usage(m));
            }
            if failed {
                return Err(Fail::Failed);
            }
            Ok(())
        }
    }
}
