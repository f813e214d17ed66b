// Copyright 2026 The bellsym Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `bellsym` command-line interface.

mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bellsym::bell::{
    gbi_classical, gbi_classical_by_integration, gbi_qcr, gbi_quantum, ghz_value_xy, lr_max, makb,
    makb_quoted_settings, makb_symmetric_optimum,
};
use bellsym::dicke::{fit_n0_line, sigma_sum, solve_n0};
use bellsym::monogamy::{build_graph, independence_number, read_pauli_list};
use bellsym::persistency::{
    binary_entropy, dicke_persistency, gamma_crit_tol, ghz_persistency_sweep, Family, Mode, QcrModel,
};
use bellsym::qccr::{
    analytic_success, chsh_game, classical_best, exact_settings_distribution, gbi_game, makb_game,
    marginal_feasibility, quantum_success, simulate, Feasibility, GameSpec, SimOptions, StateModel,
};
use bellsym::BigRational;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use output::{render, write_atomic, Format, Meta, Table};

#[derive(Parser, Debug)]
#[command(name = "bellsym", version, about = "Persistency of Bell correlations: solvers, tables and game simulations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Master seed for randomized commands; recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Bisection stopping width for gamma-crit (0 = full double precision).
    #[arg(long, global = true, default_value_t = 0.0)]
    tolerance: f64,
    /// Include wall time in JSON output (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical fraction γ solving H(γ) = γ log₂ a.
    GammaCrit {
        /// Growth bases: numbers or `sqrt2`, `pi/2`, ...
        #[arg(long = "a", required = true, num_args = 1..)]
        a: Vec<String>,
    },
    /// Dicke-state correlation sums, crossings and persistency.
    #[command(subcommand)]
    Dicke(DickeCmd),
    /// Persistency of GHZ-based mixtures.
    #[command(subcommand)]
    Persistency(PersistencyCmd),
    /// Geometric Bell inequality constants C_N, Q_N and their ratio.
    Gbi {
        /// Party counts, e.g. `2-10`.
        #[arg(long, default_value = "2-10")]
        n: String,
    },
    /// MAKB local bound, quantum value on GHZ and their ratio.
    Makb {
        /// Party counts, e.g. `2-8`.
        #[arg(long, default_value = "2-8")]
        n: String,
    },
    /// Anticommutativity-graph bounds.
    #[command(subcommand)]
    Monogamy(MonogamyCmd),
    /// Communication-complexity games.
    #[command(subcommand)]
    Qccr(QccrCmd),
}

#[derive(Subcommand, Debug)]
enum DickeCmd {
    /// Line fits N_0 ≈ a L + b per zeros-count M.
    Table1 {
        #[arg(long, default_value = "1-4")]
        m: String,
        #[arg(long, default_value = "5-40")]
        l: String,
    },
    /// Σ for the reduction of |D_{N,M}⟩ after tracing L parties.
    Sigma {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        l: String,
    },
    /// Crossing N_0 of Σ_{M,L}(N) = 1.
    N0 {
        #[arg(long)]
        m: String,
        #[arg(long)]
        l: String,
    },
    /// Largest L keeping Σ > 1.
    Persistency {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Makb,
    Gbi,
    Custom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Asymptotic,
}

#[derive(Subcommand, Debug)]
enum PersistencyCmd {
    /// Largest number of traced parties keeping C(N,M)^-1 QCR(M) > 1.
    Ghz {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Total parties, e.g. `7` or `2-200`.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Growth base for the custom family.
        #[arg(long)]
        a: Option<String>,
        /// Prefactor for the custom family.
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum MonogamyCmd {
    /// Independence number of the anticommutativity graph of a Pauli-string list.
    Bound {
        /// One Pauli string per line; `#` starts a comment.
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GameKind {
    Chsh,
    Makb,
    Gbi,
}

#[derive(Subcommand, Debug)]
enum QccrCmd {
    /// Monte Carlo success rate for a game spec.
    Simulate {
        #[arg(long)]
        game: PathBuf,
        /// Players' party indices, e.g. `0,1,2,3` (default: the first ones).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Leave this player's y bit out of the broadcast.
        #[arg(long)]
        omit_y: Option<usize>,
    },
    /// Classical optimum and quantum success probability.
    Analytic {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Whether the game's settings distribution is every marginal of an exchangeable N-party one.
    Feasibility {
        #[arg(long)]
        game: PathBuf,
        /// Total parties, e.g. `4` or `3-8`.
        #[arg(long)]
        n: String,
    },
    /// Writes a ready-made game spec as JSON.
    Example {
        #[arg(long, value_enum)]
        kind: GameKind,
        /// Players (ignored for CHSH).
        #[arg(long, default_value_t = 2)]
        players: usize,
        /// Parties in the shared GHZ-based mixture (default: players).
        #[arg(long)]
        parties: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<bellsym::Error> for Failure {
    fn from(e: bellsym::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Out = Result<Table, Failure>;

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn f(v: f64) -> Value {
    json!(v)
}

fn ratio(r: &BigRational) -> Value {
    json!(r.to_string())
}

fn cmd_gamma_crit(specs: &[String], tol: f64) -> Out {
    let mut t = Table::new(&["a_spec", "a", "gamma_crit", "residual"]);
    for spec in specs {
        let a = usage(parse::real(spec))?;
        if a <= 1.0 {
            return Err(Failure::Usage(format!("base a must exceed 1, got {spec}")));
        }
        let g = gamma_crit_tol(a, tol)?;
        let residual = binary_entropy(g)? - g * a.log2();
        t.push(vec![json!(spec), f(a), f(g), f(residual)]);
    }
    Ok(t)
}

fn cmd_dicke(cmd: &DickeCmd) -> Out {
    match cmd {
        DickeCmd::Table1 { m, l } => {
            let (ms, ls) = (usage(parse::usize_list(m))?, usage(parse::usize_list(l))?);
            let mut t = Table::new(&["M", "a", "b", "rms", "inverse_a"]);
            for m in ms {
                let fit = fit_n0_line(m, &ls)?;
                t.push(vec![json!(m), f(fit.slope), f(fit.intercept), f(fit.residual), f(1.0 / fit.slope)]);
            }
            Ok(t)
        }
        DickeCmd::Sigma { n, m, l } => {
            let (ns, ms, ls) =
                (usage(parse::usize_list(n))?, usage(parse::usize_list(m))?, usage(parse::usize_list(l))?);
            let mut t = Table::new(&["N", "M", "L", "sigma_exact", "sigma", "exceeds_one"]);
            for &n in &ns {
                for &m in &ms {
                    for &l in &ls {
                        let exact: BigRational = sigma_sum(n, m, l)?;
                        let approx: f64 = sigma_sum(n, m, l)?;
                        let one = BigRational::from_integer(1.into());
                        t.push(vec![json!(n), json!(m), json!(l), ratio(&exact), f(approx), json!(exact > one)]);
                    }
                }
            }
            Ok(t)
        }
        DickeCmd::N0 { m, l } => {
            let (ms, ls) = (usage(parse::usize_list(m))?, usage(parse::usize_list(l))?);
            let mut t = Table::new(&["M", "L", "n0", "below", "sigma_below", "sigma_above"]);
            for &m in &ms {
                for &l in &ls {
                    let c = solve_n0(m, l)?;
                    t.push(vec![json!(m), json!(l), f(c.n0), json!(c.below), f(c.sigma_below), f(c.sigma_above)]);
                }
            }
            Ok(t)
        }
        DickeCmd::Persistency { n, m } => {
            let (ns, ms) = (usage(parse::usize_list(n))?, usage(parse::usize_list(m))?);
            let mut t = Table::new(&["N", "M", "max_traced", "witness_m", "sigma", "persistency_at_least"]);
            for &n in &ns {
                for &m in &ms {
                    let r = dicke_persistency(n, m)?;
                    t.push(vec![
                        json!(n),
                        json!(m),
                        json!(r.max_traced),
                        json!(r.witness_m),
                        f(r.margin),
                        json!(r.persistency_lower_bound()),
                    ]);
                }
            }
            Ok(t)
        }
    }
}

fn cmd_persistency(cmd: &PersistencyCmd) -> Out {
    let PersistencyCmd::Ghz { family, n, mode, a, b } = cmd;
    let ns = usage(parse::usize_list(n))?;
    let model = match family {
        FamilyArg::Makb => QcrModel::makb(),
        FamilyArg::Gbi => QcrModel::gbi(),
        FamilyArg::Custom => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure::Usage("the custom family needs --a and --b".into()));
            };
            usage(QcrModel::custom(usage(parse::real(a))?, usage(parse::real(b))?).map_err(|e| e.to_string()))?
        }
    };
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Asymptotic => Mode::Asymptotic,
    };
    let family = match model.family {
        Family::Makb => "makb",
        Family::Gbi => "gbi",
        Family::Custom => "custom",
    };
    let mut t = Table::new(&["N", "family", "mode", "max_traced", "witness_m", "margin", "persistency_at_least"]);
    for r in ghz_persistency_sweep(model, &ns, mode)? {
        let mode = if mode == Mode::Exact { "exact" } else { "asymptotic" };
        t.push(vec![
            json!(r.n),
            json!(family),
            json!(mode),
            json!(r.max_traced),
            json!(r.witness_m),
            f(r.margin),
            json!(r.persistency_lower_bound()),
        ]);
    }
    Ok(t)
}

fn cmd_gbi(n: &str) -> Out {
    let mut t = Table::new(&["n", "classical", "classical_f64", "quantum", "qcr", "integration_agrees"]);
    for n in usage(parse::usize_list(n))? {
        let c = gbi_classical(n)?;
        let check = if n <= 14 { json!(gbi_classical_by_integration(n)? == c) } else { Value::Null };
        let qcr: f64 = gbi_qcr(n)?;
        let q: f64 = gbi_quantum(n)?;
        t.push(vec![json!(n), ratio(&c), f(c.to_f64().unwrap_or(f64::NAN)), f(q), f(qcr), check]);
    }
    Ok(t)
}

fn cmd_makb(n: &str) -> Out {
    let mut t = Table::new(&["n", "lr_max", "quantum", "qcr", "alpha", "alpha_prime", "quoted_settings_value"]);
    for n in usage(parse::usize_list(n))? {
        let func = makb::<f64>(n)?;
        let lr = lr_max(&func)?.value;
        let s = makb_symmetric_optimum::<f64>(n)?;
        let (a, ap) = makb_quoted_settings::<f64>(n);
        let quoted = ghz_value_xy(&func, &vec![vec![a, ap]; n])?;
        t.push(vec![json!(n), f(lr), f(s.ghz_value), f(s.ghz_value / lr), f(s.a_turns), f(s.a_prime_turns), f(quoted)]);
    }
    Ok(t)
}

fn cmd_monogamy(cmd: &MonogamyCmd) -> Out {
    let MonogamyCmd::Bound { file } = cmd;
    let reader = std::fs::File::open(file)
        .map(std::io::BufReader::new)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let ops = usage(read_pauli_list(reader).map_err(|e| e.to_string()))?;
    let g = build_graph(&ops)?;
    let bound = independence_number(&g)?;
    let mut t = Table::new(&["operators", "qubits", "edges", "bound"]);
    t.push(vec![json!(ops.len()), json!(ops.first().map_or(0, |o| o.len())), json!(g.edge_count()), json!(bound)]);
    Ok(t)
}

fn load_game(path: &PathBuf) -> Result<(String, GameSpec), Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let game: GameSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid game spec {}: {e}", path.display())))?;
    usage(game.validate().map_err(|e| e.to_string()))?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((id, game))
}

fn subset_of(game: &GameSpec, subset: &Option<String>) -> Result<Vec<usize>, Failure> {
    match subset {
        Some(s) => usage(parse::usize_list(s)),
        None => Ok((0..game.functional.n_parties()).collect()),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// A command's result: a table to render, or a document emitted verbatim.
enum Output {
    Table(Table),
    Raw(String),
}

fn cmd_qccr(cmd: &QccrCmd, seed: u64, jobs: Option<usize>) -> Result<Output, Failure> {
    Ok(Output::Table(match cmd {
        QccrCmd::Simulate { game, subset, trials, omit_y } => {
            let (id, game) = load_game(game)?;
            let subset = subset_of(&game, subset)?;
            if *trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let opts = SimOptions { trials: *trials, seed, omit_y: *omit_y, jobs };
            let rep = simulate(&game, &subset, &opts)?;
            let analytic = if omit_y.is_some() { 0.5 } else { analytic_success(&game, &subset)? };
            let mut t = Table::new(&["game", "subset", "trials", "seed", "success", "stderr", "analytic"]);
            t.push(vec![
                json!(id),
                json!(join(&subset)),
                json!(rep.trials),
                json!(rep.seed),
                f(rep.success_rate),
                f(rep.stderr),
                f(analytic),
            ]);
            t
        }
        QccrCmd::Analytic { game, subset } => {
            let (id, game) = load_game(game)?;
            let subset = subset_of(&game, subset)?;
            let mut t = Table::new(&["game", "subset", "classical_best", "quantum_success", "play_success"]);
            t.push(vec![
                json!(id),
                json!(join(&subset)),
                f(classical_best(&game)?),
                f(quantum_success(&game, &subset)?),
                f(analytic_success(&game, &subset)?),
            ]);
            t
        }
        QccrCmd::Feasibility { game, n } => {
            let (id, game) = load_game(game)?;
            let dist = exact_settings_distribution(&game.functional)?;
            let k = game.functional.n_parties();
            let mut t = Table::new(&["game", "k", "N", "result", "type_weights"]);
            for n in usage(parse::usize_list(n))? {
                if n < k {
                    return Err(Failure::Usage(format!("N = {n} is smaller than the {k} players")));
                }
                let res = marginal_feasibility(&dist, n)?;
                let (label, weights) = match &res {
                    Feasibility::Feasible { .. } => (
                        "feasible",
                        res.type_weights().unwrap().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "),
                    ),
                    Feasibility::NotExchangeable => ("not_exchangeable", String::new()),
                    Feasibility::Infeasible => ("infeasible", String::new()),
                };
                t.push(vec![json!(id), json!(k), json!(n), json!(label), json!(weights)]);
            }
            t
        }
        QccrCmd::Example { kind, players, parties } => {
            let n = *players;
            let state = StateModel::GhzMixture { parties: parties.unwrap_or(n), block: n };
            let game = match kind {
                GameKind::Chsh => chsh_game(),
                GameKind::Makb => makb_game(n, state)?,
                GameKind::Gbi => gbi_game(n, state)?,
            };
            let mut s = serde_json::to_string_pretty(&game).map_err(|e| Failure::Compute(e.to_string()))?;
            s.push('\n');
            return Ok(Output::Raw(s));
        }
    }))
}

fn run(cli: &Cli, args: &[String]) -> Result<String, Failure> {
    let g = &cli.global;
    if let Some(j) = g.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        // Ignored if a pool already exists; only the first call in a process matters.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    if g.tolerance.is_nan() || g.tolerance < 0.0 {
        return Err(Failure::Usage("--tolerance must be non-negative".into()));
    }
    let start = Instant::now();
    let (name, table) = match &cli.command {
        Command::GammaCrit { a } => ("gamma-crit", cmd_gamma_crit(a, g.tolerance)?),
        Command::Dicke(c) => ("dicke", cmd_dicke(c)?),
        Command::Persistency(c) => ("persistency", cmd_persistency(c)?),
        Command::Gbi { n } => ("gbi", cmd_gbi(n)?),
        Command::Makb { n } => ("makb", cmd_makb(n)?),
        Command::Monogamy(c) => ("monogamy", cmd_monogamy(c)?),
        Command::Qccr(c) => match cmd_qccr(c, g.seed, g.jobs)? {
            Output::Table(t) => ("qccr", t),
            Output::Raw(raw) => return Ok(raw),
        },
    };
    let meta = Meta { command: name, args, seed: g.seed, wall_time: g.timing.then(|| start.elapsed().as_secs_f64()) };
    Ok(render(&table, g.format, &meta))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = match run(&cli, &args) {
        Ok(t) => t,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
