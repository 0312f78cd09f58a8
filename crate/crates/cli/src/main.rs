//! Command-line front end for the misère games engine.
//!
//! Results go to stdout, diagnostics to stderr. Diagnostics carry a prefix
//! naming their class — `parse error`, `infeasible`, `precondition`,
//! `check failed`, `io error` — and each class maps to a fixed exit code so
//! scripts can tell them apart.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use misere_core::{
    bounded_quotient, census_to_json, check_component_isomorphisms, check_generation,
    count_antichains, day3_bound, poset_to_dot, quotient_to_json, Arena, BooleanLattice,
    Census, CensusError, ComponentCheck, Day2Partition, GameId, ParseError, Poset,
    SimplificationStep, SimplificationTrace, TooLargeError, Witness, WindowTooLargeError,
};

#[derive(Parser)]
#[command(name = "misere", version, about = "Exact calculator for finite partizan games under misère play")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the outcome class (L, R, P, or N) of a game.
    Outcome {
        /// Game expression, e.g. "{0,*|~1}+1".
        expr: String,
        /// Use normal play (a player with no move loses) instead of misère.
        #[arg(long)]
        normal: bool,
    },
    /// Compare two games: prints ">", "<", "=", or "||" (incomparable).
    Compare {
        left: String,
        right: String,
        /// Compare under normal play instead of misère.
        #[arg(long)]
        normal: bool,
    },
    /// Print the canonical form of a game.
    Canonize {
        expr: String,
        /// Also print every simplification step that was applied.
        #[arg(long)]
        trace: bool,
    },
    /// Print the adjoint of a game.
    Adjoint { expr: String },
    /// Print verified contexts separating two games.
    ///
    /// Fails if the first game is at least the second, since no context
    /// can then separate them in this direction.
    Witness { left: String, right: String },
    /// Count canonical forms born by each day up to a limit.
    Census {
        #[arg(long)]
        day: u32,
        /// Write the full census (node table, days, order) as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Build the order over all canonical forms born by a day.
    Poset {
        #[arg(long)]
        day: u32,
        /// Write the Hasse diagram in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Verify the component structure of the day-2 order.
        #[arg(long)]
        check_structure: bool,
    },
    /// Count the antichains of a reference poset.
    Antichains {
        /// The lattice of subsets of a 4-element set.
        #[arg(long)]
        b4: bool,
        /// A one-sided end component of the day-2 order.
        #[arg(long, value_enum)]
        component: Option<Component>,
    },
    /// Print the day-3 census bound.
    Bound {
        /// The bound on canonical forms born by day 3.
        #[arg(long)]
        day3: bool,
    },
    /// Outcome-distinguishability classes of bounded sums of generators.
    Quotient {
        /// Generator games, comma- or space-separated.
        #[arg(long, required = true, num_args = 1..)]
        generators: Vec<String>,
        /// Largest multiplicity of each generator in the window.
        #[arg(long)]
        bound: u32,
        /// Write the presentation as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Component {
    Plus,
    Minus,
}

enum AppError {
    Parse(ParseError),
    Infeasible(String),
    Precondition(String),
    CheckFailed(String),
    Io(std::io::Error),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Parse(_) => 2,
            AppError::Infeasible(_) => 3,
            AppError::Precondition(_) => 4,
            AppError::CheckFailed(_) | AppError::Io(_) => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Parse(e) => write!(f, "{e}"),
            AppError::Infeasible(m) => write!(f, "infeasible: {m}"),
            AppError::Precondition(m) => write!(f, "precondition: {m}"),
            AppError::CheckFailed(m) => write!(f, "check failed: {m}"),
            AppError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> AppError {
        AppError::Parse(e)
    }
}

impl From<CensusError> for AppError {
    fn from(e: CensusError) -> AppError {
        AppError::Infeasible(e.to_string())
    }
}

impl From<TooLargeError> for AppError {
    fn from(e: TooLargeError) -> AppError {
        AppError::Infeasible(e.to_string())
    }
}

impl From<WindowTooLargeError> for AppError {
    fn from(e: WindowTooLargeError) -> AppError {
        AppError::Infeasible(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> AppError {
        AppError::Io(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let mut arena = Arena::new();
    match cli.command {
        Command::Outcome { expr, normal } => {
            let g = arena.parse(&expr)?;
            let outcome = if normal {
                arena.normal_outcome(g)
            } else {
                arena.misere_outcome(g)
            };
            println!("{outcome}");
        }
        Command::Compare { left, right, normal } => {
            let g = arena.parse(&left)?;
            let h = arena.parse(&right)?;
            let (forward, backward) = if normal {
                (arena.ge_normal(g, h), arena.ge_normal(h, g))
            } else {
                (arena.ge_misere(g, h), arena.ge_misere(h, g))
            };
            let symbol = match (forward, backward) {
                (true, true) => "=",
                (true, false) => ">",
                (false, true) => "<",
                (false, false) => "||",
            };
            println!("{symbol}");
        }
        Command::Canonize { expr, trace } => {
            let g = arena.parse(&expr)?;
            let (canon, record) = arena.canonicalize_with_trace(g);
            println!("{}", arena.print_game(canon));
            if trace {
                print_trace(&arena, &record);
            }
        }
        Command::Adjoint { expr } => {
            let g = arena.parse(&expr)?;
            let mate = arena.adjoint(g);
            println!("{}", arena.print_game(mate));
        }
        Command::Witness { left, right } => {
            let g = arena.parse(&left)?;
            let h = arena.parse(&right)?;
            let form_a = arena.witness_a(g, h).map_err(|e| {
                AppError::Precondition(format!(
                    "no separating context exists: {} >= {} under misère comparison",
                    arena.print_game(e.g),
                    arena.print_game(e.h)
                ))
            })?;
            let form_b = arena
                .witness_b(g, h)
                .expect("both witness forms exist whenever the comparison fails");
            print_witness(&mut arena, "form_a", &form_a);
            print_witness(&mut arena, "form_b", &form_b);
        }
        Command::Census { day, json } => {
            let census = Census::games_born_by(&mut arena, day)?;
            for (d, games) in census.days().iter().enumerate() {
                println!("day {d}: {} games", games.len());
            }
            if let Some(path) = json {
                let table = census_to_json(&mut arena, &census);
                write_json(&path, &serde_json::to_string_pretty(&table))?;
            }
        }
        Command::Poset { day, dot, check_structure } => {
            let census = Census::games_born_by(&mut arena, day)?;
            let poset = Poset::build(&mut arena, census.born_by(day).to_vec());
            let size = poset.elements().len();
            let pairs = (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .filter(|&(i, j)| poset.relation().get(i, j))
                .count();
            println!("games: {size}");
            println!("comparable ordered pairs: {pairs}");
            if check_structure {
                if day != 2 {
                    return Err(AppError::Precondition(
                        "structure reports are defined for --day 2".to_string(),
                    ));
                }
                report_structure(&mut arena, &census, &poset)?;
            }
            if let Some(path) = dot {
                fs::write(&path, poset_to_dot(&arena, &poset))?;
            }
        }
        Command::Antichains { b4, component } => {
            let count = match (b4, component) {
                (true, None) => count_antichains(&BooleanLattice { dimension: 4 }.order_matrix())?,
                (false, Some(which)) => {
                    let census = Census::games_born_by(&mut arena, 2)?;
                    let partition = Day2Partition::classify(&arena, &census)?;
                    let poset = Poset::build(&mut arena, census.born_by(2).to_vec());
                    let keep = match which {
                        Component::Plus => &partition.plus,
                        Component::Minus => &partition.minus,
                    };
                    count_antichains(poset.restrict(keep).relation())?
                }
                _ => {
                    return Err(AppError::Precondition(
                        "choose exactly one of --b4 or --component".to_string(),
                    ))
                }
            };
            println!("{count} antichains");
        }
        Command::Bound { day3 } => {
            if !day3 {
                return Err(AppError::Precondition(
                    "only the --day3 bound is available".to_string(),
                ));
            }
            let bound = day3_bound();
            println!("M = {}", bound.antichain_bound);
            println!("M^2 = {}", bound.tree_bound);
            println!("floor(log2(M^2)) = {}", bound.log2_floor);
        }
        Command::Quotient { generators, bound, json } => {
            let mut games: Vec<GameId> = Vec::new();
            for value in &generators {
                for piece in split_top_level(value) {
                    games.push(arena.parse(&piece)?);
                }
            }
            let quotient = bounded_quotient(&mut arena, &games, bound)?;
            let names: Vec<String> = quotient
                .generators
                .iter()
                .map(|&g| arena.print_game(g))
                .collect();
            println!("generators: {}", names.join(", "));
            println!("window: {} elements", quotient.elements.len());
            println!("classes: {}", quotient.class_count());
            for (class, &rep) in quotient.class_representatives.iter().enumerate() {
                let mults = &quotient.elements[rep].multiplicities;
                println!(
                    "class {class}: multiplicities {mults:?}, outcome {}",
                    quotient.class_outcomes[class]
                );
            }
            if let Some(path) = json {
                let table = quotient_to_json(&arena, &quotient);
                write_json(&path, &serde_json::to_string_pretty(&table))?;
            }
        }
    }
    Ok(())
}

fn print_trace(arena: &Arena, trace: &SimplificationTrace) {
    if trace.is_empty() {
        println!("already canonical");
        return;
    }
    for &(from, to) in &trace.option_rewrites {
        println!(
            "option {} simplifies to {}",
            arena.print_game(from),
            arena.print_game(to)
        );
    }
    for &step in &trace.steps {
        let line = match step {
            SimplificationStep::RemovedDominatedLeft { target, via } => format!(
                "removed dominated Left option {} (covered by {})",
                arena.print_game(target),
                arena.print_game(via)
            ),
            SimplificationStep::RemovedDominatedRight { target, via } => format!(
                "removed dominated Right option {} (covered by {})",
                arena.print_game(target),
                arena.print_game(via)
            ),
            SimplificationStep::BypassedLeft { target, via } => format!(
                "bypassed Left option {} through {}",
                arena.print_game(target),
                arena.print_game(via)
            ),
            SimplificationStep::BypassedRight { target, via } => format!(
                "bypassed Right option {} through {}",
                arena.print_game(target),
                arena.print_game(via)
            ),
        };
        println!("{line}");
    }
}

fn print_witness(arena: &mut Arena, name: &str, witness: &Witness) {
    println!("{name} context: {}", arena.print_game(witness.context));
    for &(game, bound) in &witness.certified {
        let outcome = arena.sum_outcome(game, witness.context);
        println!(
            "  {} + {} = {outcome} (needs {bound})",
            arena.print_game(game),
            arena.print_game(witness.context)
        );
    }
}

fn report_structure(
    arena: &mut Arena,
    census: &Census,
    poset: &Poset,
) -> Result<(), AppError> {
    let partition = Day2Partition::classify(arena, census)?;
    let iso = check_component_isomorphisms(arena, &partition, poset);
    let mut all_ok = true;
    for (check, order) in [
        (&iso.plus, "the subset order on Right option sets"),
        (&iso.minus, "the superset order on Left option sets"),
        (&iso.zero_part, "the product of both option-set orders"),
    ] {
        all_ok &= print_component_line(check, order);
    }
    let generation = check_generation(arena, &partition, poset);
    let verdict = if generation.passed() { "yes" } else { "NO" };
    all_ok &= generation.passed();
    println!("generators span the order: {verdict}");
    if all_ok {
        Ok(())
    } else {
        Err(AppError::CheckFailed(
            "the day-2 order does not match its expected structure".to_string(),
        ))
    }
}

fn print_component_line(check: &ComponentCheck, order: &str) -> bool {
    let ok = check.passed();
    let verdict = if ok { "yes" } else { "NO" };
    println!(
        "{} component: {} games, matches {order}: {verdict}",
        check.label, check.size
    );
    ok
}

/// Split a generator list on commas that sit outside braces and parentheses,
/// so `"{0,*|1},~1"` yields the two expressions `{0,*|1}` and `~1`.
fn split_top_level(value: &str) -> Vec<String> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in value.chars() {
        match c {
            '{' | '(' => {
                depth += 1;
                current.push(c);
            }
            '}' | ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            ',' if depth == 0 => pieces.push(std::mem::take(&mut current)),
            _ => current.push(c),
        }
    }
    pieces.push(current);
    pieces
}

fn write_json(
    path: &Path,
    rendered: &Result<String, serde_json::Error>,
) -> Result<(), std::io::Error> {
    let text = rendered.as_ref().expect("export tables are serializable");
    fs::write(path, format!("{text}\n"))
}
