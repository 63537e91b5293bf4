//! `normgraph` command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use normgraph::algebra::CodeSubgroup;
use normgraph::analysis::{constraint_reports, controllability_test, obs_ctrl, state_trim_status};
use normgraph::decode::{decode_exact, decode_iterative, normalize, IterOptions, Marginals, Schedule};
use normgraph::duality::{dual_fragment_check, dualize, verify_duality};
use normgraph::format::{
    parse_priors_exact, parse_priors_float, parse_realization, write_marginals_exact, write_marginals_float,
    write_realization,
};
use normgraph::graphcore::{cyclomatic_number, is_cut_edge, second_canonical_decomposition, to_dot, two_core};
use normgraph::minimize::minimize_cycle_free;
use normgraph::realization::{behavior_bundle, cut, validate, Realization};
use normgraph::Error;
use num::BigRational;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
enum Failure {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Property(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Property(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Input(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ValidationFailed(_) => Failure::Validation(e.to_string()),
            Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

#[derive(Parser)]
#[command(name = "normgraph", version, about = "Normal graph realizations of linear and group codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Flooding,
    Serial,
}

#[derive(Subcommand)]
enum Command {
    /// Check degrees, alphabets, edge maps and fragment connectivity.
    Validate { file: PathBuf },
    /// Print the canonical generator matrix of the behavior.
    Behavior {
        file: PathBuf,
        /// Print the external behavior (the code) instead.
        #[arg(long)]
        external_only: bool,
    },
    /// Write the dual realization.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that the dual realization realizes the orthogonal code.
    CheckDuality { file: PathBuf },
    /// Trim/proper status, observability, controllability and state-trimness.
    Analyze {
        file: PathBuf,
        /// Comma-separated edges to cut; each resulting fragment is analyzed.
        #[arg(long, value_delimiter = ',')]
        fragment: Option<Vec<String>>,
    },
    /// Minimize a cycle-free realization by local reductions.
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Split off the leaf fragments and report the 2-core.
    TwoCore {
        file: PathBuf,
        /// Write the 2-core fragment here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write a Graphviz rendering of the realization here.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Sum-product decoding.
    Decode {
        file: PathBuf,
        #[arg(long)]
        priors: PathBuf,
        /// Exact rational two-pass decoding (cycle-free input only).
        #[arg(long, conflicts_with_all = ["iters", "schedule", "damping", "tol"])]
        exact: bool,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, value_enum, default_value = "flooding")]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 0.0)]
        damping: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Realization, Failure> {
    parse_realization(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> std::result::Result<Realization, Failure> {
    let r = load(path)?;
    let report = validate(&r);
    if !report.is_valid() {
        return Err(Failure::Validation(report.to_string().trim_end().to_string()));
    }
    Ok(r)
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn matrix(c: &CodeSubgroup) -> String {
    let mut out = format!("ambient {}\norder {}\n", c.ambient(), c.order());
    for g in c.generators() {
        out.push_str(&g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_validate(file: &Path) -> Outcome {
    let r = load(file)?;
    let report = validate(&r);
    print!("{report}");
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("{} violation(s)", report.violations.len())))
    }
}

fn run_behavior(file: &Path, external_only: bool) -> Outcome {
    let r = load_valid(file)?;
    let b = behavior_bundle(&r)?;
    print!("{}", matrix(if external_only { &b.code } else { &b.behavior }));
    Ok(())
}

fn run_check_duality(file: &Path) -> Outcome {
    let r = load_valid(file)?;
    if r.is_fragment() {
        let rep = dual_fragment_check(&r)?;
        if rep.passed {
            println!("C° = C⊥ verified, |C|={}, |C⊥|={}", rep.order, rep.dual_order);
            return Ok(());
        }
        return Err(Failure::Property(format!("C° ≠ C⊥ (|C|={}, |C⊥|={})", rep.order, rep.dual_order)));
    }
    let rep = verify_duality(&r)?;
    if rep.passed() {
        println!("C° = C⊥ verified, |C|={}, |C⊥|={}", rep.code_order, rep.dual_order);
        Ok(())
    } else {
        Err(Failure::Property(format!(
            "duality check failed: dual realization {}, check space {} (|C|={}, |C⊥|={})",
            if rep.direct { "agrees" } else { "differs" },
            if rep.check_space { "agrees" } else { "differs" },
            rep.code_order,
            rep.dual_order
        )))
    }
}

fn obs_ctrl_text(f: &Realization) -> std::result::Result<String, Failure> {
    let o = obs_ctrl(f)?;
    let mut s = String::new();
    s.push_str(&format!("  externally observable: {} (|U| = {})\n", yes(o.externally_observable), o.external_unobservable.order()));
    s.push_str(&format!("  internally observable: {} (|S^u| = {})\n", yes(o.internally_observable), o.internal_unobservable.order()));
    s.push_str(&format!("  totally observable: {} (|U_tot| = {})\n", yes(o.totally_observable), o.total_unobservable.order()));
    s.push_str(&format!(
        "  internally controllable: {} (|S^c| = {} of {})\n",
        yes(o.internally_controllable),
        o.internal_controllable.order(),
        o.state_order
    ));
    s.push_str(&format!("  externally controllable: {}\n", yes(o.externally_controllable)));
    s.push_str(&format!("  independent checks: {}\n", yes(o.checks_independent)));
    Ok(s)
}

fn run_analyze(file: &Path, fragment: Option<Vec<String>>) -> Outcome {
    let r = load_valid(file)?;
    if let Some(edges) = fragment {
        for (i, f) in cut(&r, &edges)?.iter().enumerate() {
            let names: Vec<&String> = f.constraints.keys().collect();
            println!("fragment {i}: constraints {names:?}, boundary {:?}", f.boundary_vars());
            print!("{}", obs_ctrl_text(f)?);
        }
        return Ok(());
    }
    println!("trim/proper:");
    for cid in r.constraints.keys() {
        for t in constraint_reports(&r, cid)? {
            println!(
                "  {cid}.{}: trim {}, proper {}, effective order {}",
                t.variable,
                yes(t.trim),
                yes(t.proper),
                t.effective_order
            );
        }
    }
    println!("observability and controllability:");
    print!("{}", obs_ctrl_text(&r)?);
    let c = controllability_test(&r)?;
    print!(
        "controllability test: |U| = {}, |B̄| = {}, |S| = {}, |S^c| = {}, controllable {}",
        c.universe,
        c.extended,
        c.states,
        c.controllable_states,
        yes(c.controllable)
    );
    match c.dims {
        Some([u, e, s, sc]) => println!(", dims (U, B̄, S, S^c) = ({u}, {e}, {s}, {sc})"),
        None => println!(),
    }
    let mut edges = r.internal_states();
    edges.sort();
    println!("state-trimness at non-cut edges:");
    for e in edges {
        if is_cut_edge(&r, &e)? {
            continue;
        }
        let t = state_trim_status(&r, &e)?;
        println!(
            "  {e}: state-trim {}, dual state-trim {}, observable {}, controllable {}, |U| = {}",
            yes(t.state_trim),
            yes(t.dual_state_trim),
            yes(t.observable),
            yes(t.controllable),
            t.unobservable_transitions.order()
        );
    }
    Ok(())
}

fn orders(r: &Realization) -> String {
    format!("{:?}", r.state_orders())
}

fn run_minimize(file: &Path, output: Option<&Path>) -> Outcome {
    let r = load_valid(file)?;
    let m = match minimize_cycle_free(&r) {
        Err(Error::NotCycleFree) => {
            return Err(Failure::Precondition(format!(
                "realization has cyclomatic number {}; minimization needs a cycle-free realization (see `normgraph two-core`)",
                cyclomatic_number(&r)
            )))
        }
        other => other?,
    };
    println!("state orders before: {}", orders(&r));
    println!("state orders after: {}", orders(&m.realization));
    println!("reductions: {}", m.steps.len());
    if let Some(out) = output {
        write(out, &write_realization(&m.realization))?;
    }
    Ok(())
}

fn run_two_core(file: &Path, output: Option<&Path>, emit_graph: Option<&Path>) -> Outcome {
    let r = load_valid(file)?;
    let tc = two_core(&r)?;
    println!("cyclomatic number: {}", cyclomatic_number(&r));
    match &tc.core {
        None => println!("2-core: empty (cycle-free)"),
        Some(core) => {
            let names: Vec<&String> = core.constraints.keys().collect();
            println!("2-core constraints: {names:?}");
        }
    }
    for leaf in tc.leaves.iter().filter(|l| l.attachment.is_some()) {
        let names: Vec<&String> = leaf.fragment.constraints.keys().collect();
        println!("leaf at {}: constraints {names:?}", leaf.attachment.as_ref().unwrap());
    }
    if let Ok(d) = second_canonical_decomposition(&r) {
        println!("second decomposition:");
        for l in &d.leaves {
            println!(
                "  leaf at {}: |S| = {}, |Ã| = {}, isomorphic {}",
                l.attachment,
                l.state_order,
                l.map.order(),
                yes(l.isomorphic())
            );
        }
    }
    if let Some(out) = output {
        match &tc.core {
            Some(core) => write(out, &write_realization(core))?,
            None => return Err(Failure::Precondition("the 2-core is empty; nothing to write".into())),
        }
    }
    if let Some(g) = emit_graph {
        write(g, &to_dot(&r))?;
    }
    Ok(())
}

fn exact_text(m: &Marginals<BigRational>, keep: &[String]) -> (String, bool) {
    let mut out = Marginals::new();
    let mut contradiction = false;
    for k in keep {
        let w = &m[k];
        out.insert(k.clone(), normalize(w).unwrap_or_else(|| {
            contradiction = true;
            w.clone()
        }));
    }
    (write_marginals_exact(&out), contradiction)
}

#[allow(clippy::too_many_arguments)]
fn run_decode(
    file: &Path,
    priors: &Path,
    exact: bool,
    iters: usize,
    schedule: ScheduleArg,
    damping: f64,
    tol: f64,
    output: Option<&Path>,
) -> Outcome {
    let r = load_valid(file)?;
    let text = read(priors)?;
    let keep = r.external_labels();
    if exact {
        let p = parse_priors_exact(&text, &r).map_err(|e| Failure::Input(format!("{}: {e}", priors.display())))?;
        let m = decode_exact(&r, &p)?;
        let (out, contradiction) = exact_text(&m, &keep);
        if contradiction {
            eprintln!("contradiction: no configuration has positive weight");
        }
        return emit(output, &out);
    }
    let p = parse_priors_float(&text, &r).map_err(|e| Failure::Input(format!("{}: {e}", priors.display())))?;
    let schedule = match schedule {
        ScheduleArg::Flooding => Schedule::Flooding,
        ScheduleArg::Serial => Schedule::Serial,
    };
    let opts = IterOptions { max_iters: iters, schedule, damping, tol };
    let res = decode_iterative(&r, &p, &opts).map_err(|e| match e {
        Error::Parse(m) => Failure::Input(m),
        e => e.into(),
    })?;
    eprintln!(
        "iterations: {}, converged: {}, last delta: {:e}{}",
        res.iterations,
        yes(res.converged),
        res.deltas.last().copied().unwrap_or(0.0),
        if res.contradiction { ", contradiction" } else { "" }
    );
    let m: Marginals<f64> = res.marginals.into_iter().filter(|(k, _)| keep.contains(k)).collect();
    emit(output, &write_marginals_float(&m))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => run_validate(&file),
        Command::Behavior { file, external_only } => run_behavior(&file, external_only),
        Command::Dual { file, output } => {
            let r = load_valid(&file)?;
            emit(output.as_deref(), &write_realization(&dualize(&r)?))
        }
        Command::CheckDuality { file } => run_check_duality(&file),
        Command::Analyze { file, fragment } => run_analyze(&file, fragment),
        Command::Minimize { file, output } => run_minimize(&file, output.as_deref()),
        Command::TwoCore { file, output, emit_graph } => run_two_core(&file, output.as_deref(), emit_graph.as_deref()),
        Command::Decode { file, priors, exact, iters, schedule, damping, tol, output } => {
            run_decode(&file, &priors, exact, iters, schedule, damping, tol, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
