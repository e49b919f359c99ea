use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use latkit::closure::{functor_c, functor_l};
use latkit::error::{Error, Result};
use latkit::format::{write_cspace, write_lattice, write_map, write_ospace, write_umap, Workspace};
use latkit::lattice::{LatticeRef, Limits};
use latkit::maps::{dualize, hom_set, left_adjoint, right_adjoint, HomClass, LatticeMap};
use latkit::ortho::{biortho_lattice, dagger, orthospace_from_lattice};
use latkit::suite::{any_failed, check_workspace, render_text, run_suite, Report, SuiteOptions};
use latkit::transition::{hom_count, incoherent_instance, strictness_witness, unbased_instance, Category};

#[derive(Parser)]
#[command(name = "latkit", version, about = "Finite lattices, adjoints and transition structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Only run propositions matching `prop=ID` (prefix match).
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Largest lattice any construction may build.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate files; check recorded facts.
    Check { paths: Vec<PathBuf> },
    /// Print an adjoint, dagger or dual of a declared map.
    Adjoint {
        map: String,
        #[arg(value_enum)]
        direction: Direction,
        paths: Vec<PathBuf>,
    },
    /// Enumerate maps of a class between two lattices.
    Hom {
        l1: String,
        l2: String,
        #[arg(long, default_value = "join")]
        class: String,
        paths: Vec<PathBuf>,
    },
    /// Count morphisms in PS, BS, TS or FS.
    Count { category: String, l1: String, l2: String, paths: Vec<PathBuf> },
    /// Closed-set lattice of a space, or atom space of an atomistic lattice.
    Closure { object: String, paths: Vec<PathBuf> },
    /// Orthogonality space of an atomistic ortholattice, or biorthogonal lattice of a space.
    Equiv { object: String, paths: Vec<PathBuf> },
    /// Union maps separating the transition categories on a lattice.
    Witness {
        lattice: String,
        #[arg(value_enum, default_value = "strict")]
        kind: WitnessKind,
        /// Element for the `strict` witness; defaults to every nonzero element.
        #[arg(long)]
        at: Option<String>,
        paths: Vec<PathBuf>,
    },
    /// Run the proposition sweep over a corpus directory.
    Suite {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Right,
    Left,
    Dagger,
    Dualize,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Strict,
    Unbased,
    Incoherent,
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::Parse { .. } | Error::Unresolved(_) => 2,
        Error::SizeLimit { .. } => 3,
        _ => 1,
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut lim = Limits::default();
    if let Some(n) = cli.max_size {
        lim.max_lattice = n;
        lim.max_power = lim.max_power.min(n);
    }
    lim
}

fn collect(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "lat"))
                .collect();
            inner.sort();
            out.extend(inner);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn load(paths: &[PathBuf], lim: &Limits) -> Result<Workspace> {
    let files = collect(paths)?;
    let ws = Workspace::from_files(&files, lim)?;
    for l in ws.lattices.values() {
        if l.size() > lim.max_lattice {
            return Err(Error::SizeLimit { what: format!("lattice {}", l.name()), size: l.size() as u128, limit: lim.max_lattice as u128 });
        }
    }
    Ok(ws)
}

fn lattice(ws: &Workspace, name: &str) -> Result<LatticeRef> {
    ws.lattices.get(name).cloned().ok_or_else(|| Error::Unresolved(format!("no lattice named {name}")))
}

fn emit_reports(reports: &[Report], json: bool) -> Result<bool> {
    if json {
        println!("{}", serde_json::to_string_pretty(reports).map_err(|e| Error::Io(e.to_string()))?);
    } else {
        print!("{}", render_text(reports));
    }
    Ok(!any_failed(reports))
}

fn emit(text: String, json: bool) {
    if json {
        println!("{}", serde_json::json!({ "output": text }));
    } else {
        print!("{text}");
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let lim = limits(cli);
    match &cli.command {
        Command::Check { paths } => {
            let ws = load(paths, &lim)?;
            emit_reports(&check_workspace(&ws), cli.json)
        }
        Command::Adjoint { map, direction, paths } => {
            let ws = load(paths, &lim)?;
            let f = ws.maps.get(map).ok_or_else(|| Error::Unresolved(format!("no map named {map}")))?;
            let (g, suffix) = match direction {
                Direction::Right => (right_adjoint(f)?, "right"),
                Direction::Left => (left_adjoint(f)?, "left"),
                Direction::Dualize => (dualize(f)?, "dual"),
                Direction::Dagger => {
                    let ortho = |l: &LatticeRef| ws.ortho.get(l.name()).ok_or_else(|| Error::Unresolved(format!("{} has no orthocomplement", l.name())));
                    (dagger(f, ortho(f.dom())?, ortho(f.cod())?)?, "dagger")
                }
            };
            emit(write_map(&format!("{map}_{suffix}"), &g), cli.json);
            Ok(true)
        }
        Command::Hom { l1, l2, class, paths } => {
            let ws = load(paths, &lim)?;
            let (a, b) = (lattice(&ws, l1)?, lattice(&ws, l2)?);
            let maps = hom_set(&a, &b, class.parse::<HomClass>()?, &lim)?;
            if cli.json {
                let tables: Vec<Vec<&str>> = maps.iter().map(|f| labels(f)).collect();
                println!("{}", serde_json::json!({ "count": maps.len(), "maps": tables }));
            } else {
                for f in &maps {
                    println!("{}", labels(f).join(" "));
                }
                println!("{} maps", maps.len());
            }
            Ok(true)
        }
        Command::Count { category, l1, l2, paths } => {
            let ws = load(paths, &lim)?;
            let cat: Category = category.parse()?;
            let n = hom_count(cat, &lattice(&ws, l1)?, &lattice(&ws, l2)?, &lim)?;
            if cli.json {
                println!("{}", serde_json::json!({ "category": cat.to_string(), "count": n.to_string() }));
            } else {
                println!("{n}");
            }
            Ok(true)
        }
        Command::Closure { object, paths } => {
            let ws = load(paths, &lim)?;
            let text = if let Some(s) = ws.cspaces.get(object) {
                write_lattice(&functor_l(s)?.lattice, None)
            } else {
                write_cspace(&functor_c(&lattice(&ws, object)?)?.space)
            };
            emit(text, cli.json);
            Ok(true)
        }
        Command::Equiv { object, paths } => {
            let ws = load(paths, &lim)?;
            let text = if let Some(s) = ws.ospaces.get(object) {
                let b = biortho_lattice(s)?;
                write_lattice(b.ortho.lattice(), Some(&b.ortho))
            } else {
                let o = ws.ortho.get(object).ok_or_else(|| Error::Unresolved(format!("no ortholattice or orthospace named {object}")))?;
                write_ospace(&orthospace_from_lattice(o)?.space)
            };
            emit(text, cli.json);
            Ok(true)
        }
        Command::Witness { lattice: name, kind, at, paths } => {
            let ws = load(paths, &lim)?;
            let l = lattice(&ws, name)?;
            let mut text = String::new();
            match kind {
                WitnessKind::Strict => {
                    let elems: Vec<usize> = match at {
                        Some(a) => vec![l.index_of(a).ok_or_else(|| Error::Unresolved(format!("no element {a} in {name}")))?],
                        None => l.elements().filter(|&a| a != l.bottom()).collect(),
                    };
                    for a in elems {
                        text.push_str(&write_umap(&format!("witness_{}_{}", name, l.label(a)), &strictness_witness(&l, a, &lim)?));
                    }
                }
                WitnessKind::Unbased => {
                    if let Some(t) = unbased_instance(&l, &l, &lim)? {
                        text.push_str(&write_umap(&format!("unbased_{name}"), &t));
                    }
                }
                WitnessKind::Incoherent => {
                    if let Some(t) = incoherent_instance(&l, &l, &lim)? {
                        text.push_str(&write_umap(&format!("incoherent_{name}"), &t));
                    }
                }
            }
            let found = !text.is_empty();
            if !found {
                text = format!("# no such union map on {name}\n");
            }
            emit(text, cli.json);
            Ok(found)
        }
        Command::Suite { dir } => {
            let ws = load(std::slice::from_ref(dir), &lim)?;
            let filter = cli.filter.as_deref().map(|f| f.strip_prefix("prop=").unwrap_or(f).to_string());
            let opts = SuiteOptions { filter, limits: lim, seed: cli.seed, ..SuiteOptions::default() };
            emit_reports(&run_suite(&ws, &opts), cli.json)
        }
    }
}

fn labels(f: &LatticeMap) -> Vec<&str> {
    f.values().iter().map(|&v| f.cod().label(v)).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
