//! Command-line front end. Exit codes: 0 success / yes / PASS, 1 a decision
//! answered "no", 2 usage, parse or fragment errors, 3 a suite disagreement.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::games::{parse_game, solve_with, GameInstance, SolverConfig};
use crate::logic::{evaluate, parse_formula, Formula, Structure};
use crate::qelim::to_sigma1;
use crate::reductions::{compile, reduce_is_to_ea, reduce_sgg_to_mm, CompileOutcome};
use crate::verify::{reference_solve, run_suite, CheckReport, SuiteStatus, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "posgame", version, about = "Short positional games, model checking and game-to-formula compilers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a sentence on a finite structure; prints true or false.
    Mc { structure: PathBuf, formula: PathBuf },
    /// Eliminate universal quantifiers from a ∀≠ sentence.
    Qelim {
        formula: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether player 1 wins a short game.
    Solve {
        game: PathBuf,
        /// Abort the search after this many nodes.
        #[arg(long)]
        node_limit: Option<u64>,
        /// Disable transposition table, forced moves and relevance pruning.
        #[arg(long)]
        plain: bool,
    },
    /// Compile a game into a structure and a sentence.
    Compile {
        game: PathBuf,
        #[arg(short = 's', long = "structure")]
        structure: PathBuf,
        #[arg(short = 'f', long = "formula")]
        formula: PathBuf,
        /// Provenance file; defaults to the formula path with `.provenance` appended.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Instance reductions.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Run a cross-check suite (or `all`).
    Xcheck {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip formulas whose estimated evaluation cost exceeds this.
        #[arg(long)]
        cost_ceiling: Option<f64>,
        /// Print only the summary table.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Reduce {
    /// Independent Set (graph file, k) → Enforcer-Avoider game.
    Is2ea {
        graph: PathBuf,
        k: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Short generalized geography → Maker-Maker game plus vertex map.
    Sgg2mm {
        sgg: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(short = 'm', long = "map")]
        map: PathBuf,
    },
}

type Out = Result<i32, String>;

/// Runs the command line `args` (including the program name), writing to
/// stdout/stderr, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Mc { structure, formula } => mc(&structure, &formula),
        Command::Qelim { formula, output } => qelim(&formula, output.as_deref()),
        Command::Solve { game, node_limit, plain } => solve(&game, node_limit, plain),
        Command::Compile { game, structure, formula, sidecar } => compile_cmd(&game, &structure, &formula, sidecar),
        Command::Reduce(Reduce::Is2ea { graph, k, output }) => is2ea(&graph, k, &output),
        Command::Reduce(Reduce::Sgg2mm { sgg, output, map }) => sgg2mm(&sgg, &output, &map),
        Command::Xcheck { suite, seed, cost_ceiling, quiet } => xcheck(&suite, seed, cost_ceiling, quiet),
    };
    result.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        EXIT_ERROR
    })
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn located<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn load_structure(path: &Path) -> Result<Structure, String> {
    Structure::parse(&read(path)?).map_err(located(path))
}

fn load_formula(path: &Path) -> Result<Formula, String> {
    parse_formula(&read(path)?).map_err(located(path))
}

fn load_game(path: &Path) -> Result<GameInstance, String> {
    parse_game(&read(path)?).map_err(located(path))
}

fn decision(answer: bool) -> i32 {
    if answer {
        EXIT_OK
    } else {
        EXIT_NO
    }
}

fn mc(structure: &Path, formula: &Path) -> Out {
    let s = load_structure(structure)?;
    let f = load_formula(formula)?;
    let truth = evaluate(&s, &f).map_err(|e| e.to_string())?;
    println!("{truth}");
    Ok(decision(truth))
}

fn qelim(formula: &Path, output: Option<&Path>) -> Out {
    let f = load_formula(formula)?;
    let (g, trace) = to_sigma1(&f).map_err(located(formula))?;
    let summary: String = trace.summary().lines().map(|l| format!("# {l}\n")).collect();
    match output {
        Some(path) => {
            write(path, &g.to_file_text())?;
            print!("{summary}");
        }
        None => print!("{}{summary}", g.to_file_text()),
    }
    Ok(EXIT_OK)
}

fn solve(game: &Path, node_limit: Option<u64>, plain: bool) -> Out {
    let g = load_game(game)?;
    let mut cfg = if plain { SolverConfig::plain() } else { SolverConfig::default() };
    cfg.node_limit = node_limit;
    let v = solve_with(&g, cfg).map_err(located(game))?;
    println!("winner: {}", if v.first_player_wins { "P1" } else { "P2" });
    if let Some(pv) = &v.principal_variation {
        let moves: Vec<String> = pv.iter().map(|m| m.to_string()).collect();
        println!("pv: {}", moves.join(" "));
    }
    println!("nodes: {}", v.nodes);
    Ok(decision(v.first_player_wins))
}

/// A one-element structure and a constant sentence standing for `answer`.
fn constant_check(answer: bool) -> (Structure, Formula) {
    let s = Structure::new(["d"]).expect("non-empty universe");
    let m = if answer { crate::logic::Matrix::truth() } else { crate::logic::Matrix::falsity() };
    (s, Formula::new(Vec::new(), m).expect("closed constant"))
}

fn compile_cmd(game: &Path, structure: &Path, formula: &Path, sidecar: Option<PathBuf>) -> Out {
    let g = load_game(game)?;
    let outcome = compile(&g).map_err(located(game))?;
    let (s, f, meta) = match &outcome {
        CompileOutcome::Formula(c) => (c.structure.clone(), c.formula.clone(), c.sidecar()),
        CompileOutcome::Decided { answer, reason } => {
            let (s, f) = constant_check(*answer);
            (s, f, format!("variant: {}\nbudget: {}\noutcome: decided\nanswer: {answer}\nreason: {reason}\nnegated: false\n", g.variant.name(), g.budget))
        }
        CompileOutcome::BruteForceFallback { reason } => {
            let answer = reference_solve(&g);
            let (s, f) = constant_check(answer);
            (s, f, format!("variant: {}\nbudget: {}\noutcome: brute-force\nanswer: {answer}\nreason: {reason}\nnegated: false\n", g.variant.name(), g.budget))
        }
    };
    let sidecar = sidecar.unwrap_or_else(|| {
        let mut p = formula.as_os_str().to_owned();
        p.push(".provenance");
        PathBuf::from(p)
    });
    write(structure, &s.to_string())?;
    write(formula, &f.to_file_text())?;
    write(&sidecar, &meta)?;
    println!("{outcome}");
    Ok(EXIT_OK)
}

/// Graph files: `vertices a b c …` and one `edge u v` per line, `#` comments.
pub fn parse_graph(text: &str) -> Result<(Vec<String>, Vec<(String, String)>), String> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["vertices", rest @ ..] => {
                for v in rest {
                    if vertices.iter().any(|w| w == v) {
                        return Err(format!("line {}: vertex {v} listed twice", i + 1));
                    }
                    vertices.push(v.to_string());
                }
            }
            ["edge", u, v] => {
                for w in [u, v] {
                    if !vertices.iter().any(|x| x == w) {
                        return Err(format!("line {}: unknown vertex {w}", i + 1));
                    }
                }
                if u == v {
                    return Err(format!("line {}: self-loop on {u}", i + 1));
                }
                edges.push((u.to_string(), v.to_string()));
            }
            _ => return Err(format!("line {}: expected `vertices …` or `edge u v`", i + 1)),
        }
    }
    Ok((vertices, edges))
}

fn is2ea(graph: &Path, k: usize, output: &Path) -> Out {
    let (vertices, edges) = parse_graph(&read(graph)?).map_err(located(graph))?;
    let g = reduce_is_to_ea(&vertices, &edges, k).map_err(|e| e.to_string())?;
    write(output, &g.to_text())?;
    let h = g.hypergraph().expect("EA on a hypergraph");
    println!("vertices: {}\nedges: {}\nbudget: {}", h.vertices().len(), h.edges().len(), g.budget);
    Ok(EXIT_OK)
}

fn sgg2mm(sgg: &Path, output: &Path, map: &Path) -> Out {
    let g = load_game(sgg)?;
    let r = reduce_sgg_to_mm(&g).map_err(located(sgg))?;
    write(output, &r.game.to_text())?;
    write(map, &r.map.to_text())?;
    let h = r.game.hypergraph().expect("MM on a hypergraph");
    println!("vertices: {}\nedges: {}\nbudget: {}", h.vertices().len(), h.edges().len(), r.game.budget);
    Ok(EXIT_OK)
}

fn xcheck(suite: &str, seed: u64, ceiling: Option<f64>, quiet: bool) -> Out {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports: Vec<CheckReport> = Vec::new();
    for name in names {
        let r = run_suite(name, seed, ceiling)
            .ok_or_else(|| format!("unknown suite {name}; expected one of {}, sgg-full or all", SUITES.join(", ")))?;
        if !quiet {
            print!("{}", r.lines());
            for d in r.disagreements() {
                if let Some(text) = &d.detail {
                    println!("# instance {}:", d.id);
                    text.lines().for_each(|l| println!("#   {l}"));
                }
            }
        }
        reports.push(r);
    }
    for r in &reports {
        println!("{}", r.summary());
    }
    for r in &reports {
        println!("# elapsed {}: {:.2}s", r.suite, r.elapsed.as_secs_f64());
    }
    let failed = reports.iter().any(|r| r.status() == SuiteStatus::Fail);
    Ok(if failed { EXIT_DISAGREE } else { EXIT_OK })
}
