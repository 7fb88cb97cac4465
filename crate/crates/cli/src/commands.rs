//! Command-line front end. Every subcommand is a thin wrapper around one
//! library call; the `*_report` functions return exactly what gets printed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ctt_core::adversary::{pumping_counterexample, trick_below3, trick_level3, TrickReport};
use ctt_core::catalog;
use ctt_core::dialogue::{run_session, write_transcript, Contestant, Interrogator, TranscriptDocument};
use ctt_core::identify::{learn_bounded, IdentifyOutcome, Probe, RoundProbe};
use ctt_core::machines::{
    load_machine_file, write_machine, LoadedMachine, MachineError, MealyTransducer, PushdownContestant,
    TransducerContestant, TuringContestant,
};
use ctt_core::tape::{
    backend_equivalence, decide_halting_bounded, CascadeTape, Execution, HaltingDecision, RunOutcome, DEFAULT_CELL_CAPACITY,
};

use crate::service::{ServiceConfig, DATA_DIR_ENV, DEFAULT_DATA_DIR};
use crate::store::atomic_write;

pub const DEFAULT_MAX_ROUNDS: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "ctt", version, about = "Interrogate machines of every Chomsky level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrickMode {
    Level3,
    Below3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one session and write its transcript file.
    Run {
        #[arg(long)]
        interrogator: String,
        /// Catalog id or machine-spec file.
        #[arg(long)]
        contestant: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        /// Transcript file; defaults to `<interrogator>-vs-<contestant>.transcript`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build two contestants the interrogator cannot tell apart.
    Trick {
        #[arg(long)]
        interrogator: String,
        #[arg(long, value_enum)]
        mode: TrickMode,
        /// Seed contestant: a transducer (id or mealy file) for level3, any
        /// contestant below level 3 for below3. Defaults: echo, bracket.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Learn a contestant under a state bound.
    Identify {
        /// Catalog id or machine-spec file.
        #[arg(long)]
        contestant: String,
        #[arg(long)]
        k: usize,
        /// Where to write the hypothesis when identified.
        #[arg(long, default_value = "hypothesis.json")]
        out: PathBuf,
    },
    /// Run a Turing machine on a flat tape and a cascade in lockstep.
    Cascade {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CELL_CAPACITY)]
        capacity: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value = "")]
        input: String,
        /// Write the cascade message trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print a word the acceptor misjudges as a bracket word.
    Pump {
        #[arg(long)]
        acceptor: PathBuf,
        /// Defaults to the file's brackets, else the first alphabet symbol.
        #[arg(long)]
        open: Option<char>,
        /// Defaults to the file's brackets, else the second alphabet symbol.
        #[arg(long)]
        close: Option<char>,
    },
    /// Decide halting inside a fixed number of tape cells.
    Halting {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Start the session service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
        /// Overrides the data directory environment variable.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown {kind} {id:?}")]
    UnknownId { kind: &'static str, id: String },
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn interrogator(id: &str) -> Result<Box<dyn Interrogator>, CliError> {
    catalog::interrogator(id).ok_or_else(|| CliError::UnknownId {
        kind: "interrogator",
        id: id.into(),
    })
}

/// A catalog contestant, or one built from a machine-spec file.
pub fn contestant(id: &str) -> Result<Box<dyn Contestant>, CliError> {
    if let Some(c) = catalog::contestant(id) {
        return Ok(c);
    }
    if !Path::new(id).exists() {
        return Err(CliError::UnknownId {
            kind: "contestant",
            id: id.into(),
        });
    }
    Ok(match load_machine_file(id)? {
        LoadedMachine::Mealy(m) => Box::new(TransducerContestant::new(id, m)),
        LoadedMachine::Pushdown(p) => Box::new(PushdownContestant::new(id, p)),
        LoadedMachine::DialogueTuring(d) => Box::new(TuringContestant::new(id, d)),
        other => {
            return Err(MachineError::WrongKind {
                expected: "mealy, pushdown or dialogue-turing",
                found: other.kind(),
            }
            .into())
        }
    })
}

fn transducer(id: &str) -> Result<MealyTransducer, CliError> {
    if let Some(t) = catalog::transducer(id) {
        return Ok(t);
    }
    if !Path::new(id).exists() {
        return Err(CliError::UnknownId {
            kind: "transducer",
            id: id.into(),
        });
    }
    Ok(load_machine_file(id)?.into_mealy()?)
}

fn probe(id: &str) -> Result<Box<dyn Probe>, CliError> {
    if let Some(p) = catalog::probe(id) {
        return Ok(p);
    }
    if Path::new(id).exists() {
        if let LoadedMachine::Pushdown(p) = load_machine_file(id)? {
            return Ok(Box::new(PushdownContestant::new(id, p)));
        }
    }
    Ok(Box::new(RoundProbe(contestant(id)?)))
}

pub fn run_report(interrogator_id: &str, contestant_id: &str, max_rounds: usize) -> Result<(Value, String), CliError> {
    let i = interrogator(interrogator_id)?;
    let mut c = contestant(contestant_id)?;
    let outcome = run_session(i.as_ref(), c.as_mut(), max_rounds).map_err(failed)?;
    let file = write_transcript(&TranscriptDocument {
        alphabet: c.alphabet().clone(),
        transcript: outcome.transcript.clone(),
    });
    let report = json!({
        "interrogator": interrogator_id,
        "contestant": c.describe().name,
        "level": c.level(),
        "result": outcome.result,
        "rounds": outcome.transcript.len(),
    });
    Ok((report, file))
}

pub fn trick_report(
    interrogator_id: &str,
    mode: TrickMode,
    seed: Option<&str>,
    max_rounds: usize,
) -> Result<TrickReport, CliError> {
    let i = interrogator(interrogator_id)?;
    let (witness, alphabet) = match mode {
        TrickMode::Level3 => {
            let t = transducer(seed.unwrap_or("echo"))?;
            (trick_level3(i.as_ref(), &t, max_rounds), t.alphabet().clone())
        }
        TrickMode::Below3 => {
            let mut c = contestant(seed.unwrap_or("bracket"))?;
            (trick_below3(i.as_ref(), c.as_mut(), max_rounds), c.alphabet().clone())
        }
    };
    Ok(TrickReport::new(&witness.map_err(failed)?, &alphabet))
}

/// The report, plus the hypothesis document when identified.
pub fn identify_report(contestant_id: &str, k: usize) -> Result<(Value, Option<String>), CliError> {
    let mut p = probe(contestant_id)?;
    let alphabet = p.alphabet().clone();
    let r = learn_bounded(p.as_mut(), k, &alphabet).map_err(failed)?;
    let hypothesis = match &r.outcome {
        IdentifyOutcome::Identified { hypothesis, .. } => Some(write_machine(&LoadedMachine::Mealy(hypothesis.clone()))),
        IdentifyOutcome::ExceedsBound { .. } => None,
    };
    let report = json!({
        "contestant": contestant_id,
        "k": k,
        "result": r.outcome,
        "queries_used": r.queries_used,
        "symbols_used": r.symbols_used,
    });
    Ok((report, hypothesis))
}

fn outcome_json(o: &RunOutcome) -> Value {
    match o {
        RunOutcome::Halted { state, steps, window } => json!({
            "halted": true, "state": state, "steps": steps,
            "window": { "start": window.start, "content": window.content },
        }),
        RunOutcome::Running { steps } => json!({ "halted": false, "steps": steps }),
    }
}

pub fn cascade_report(machine: &Path, capacity: usize, steps: u64, input: &str) -> Result<(Value, String), CliError> {
    let spec = load_machine_file(machine)?.into_turing()?;
    let equivalent = backend_equivalence(&spec, input, steps, capacity).map_err(failed)?;
    let tape = CascadeTape::new(capacity, spec.blank()).map_err(failed)?;
    let mut run = Execution::start(&spec, tape, input).map_err(failed)?;
    let outcome = run.run(steps);
    let tape = run.into_tape();
    let report = json!({
        "equivalent": equivalent,
        "capacity": capacity,
        "outcome": outcome_json(&outcome),
        "chain_len": tape.chain_len(),
        "messages": tape.log().len(),
    });
    Ok((report, tape.trace()))
}

pub fn pump_word(acceptor: &Path, open: Option<char>, close: Option<char>) -> Result<String, CliError> {
    let (a, brackets) = load_machine_file(acceptor)?.into_acceptor()?;
    let symbols = a.alphabet().symbols();
    let default = brackets.unwrap_or([symbols[0], *symbols.get(1).unwrap_or(&symbols[0])]);
    Ok(pumping_counterexample(&a, open.unwrap_or(default[0]), close.unwrap_or(default[1]))?)
}

pub fn halting_report(machine: &Path, m: usize, input: &str) -> Result<Value, CliError> {
    let spec = load_machine_file(machine)?.into_turing()?;
    Ok(match decide_halting_bounded(&spec, m, input).map_err(failed)? {
        HaltingDecision::Halts(steps) => json!({ "decision": "halts", "steps": steps }),
        HaltingDecision::Loops { first, second } => json!({ "decision": "loops", "first": first, "second": second }),
    })
}

fn print_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            interrogator,
            contestant,
            max_rounds,
            out: path,
        } => {
            let (report, file) = run_report(&interrogator, &contestant, max_rounds)?;
            let path = path.unwrap_or_else(|| {
                let name = Path::new(&contestant).file_stem().map_or(contestant.clone(), |s| s.to_string_lossy().into());
                PathBuf::from(format!("{interrogator}-vs-{name}.transcript"))
            });
            atomic_write(&path, file.as_bytes()).map_err(failed)?;
            print_json(out, &report)?;
        }
        Command::Trick {
            interrogator,
            mode,
            seed,
            max_rounds,
        } => {
            write!(out, "{}", trick_report(&interrogator, mode, seed.as_deref(), max_rounds)?.to_json())?;
        }
        Command::Identify { contestant, k, out: path } => {
            let (report, hypothesis) = identify_report(&contestant, k)?;
            if let Some(doc) = hypothesis {
                atomic_write(&path, doc.as_bytes()).map_err(failed)?;
            }
            print_json(out, &report)?;
        }
        Command::Cascade {
            machine,
            capacity,
            steps,
            input,
            trace,
        } => {
            let (report, log) = cascade_report(&machine, capacity, steps, &input)?;
            if let Some(path) = trace {
                atomic_write(&path, log.as_bytes()).map_err(failed)?;
            }
            print_json(out, &report)?;
        }
        Command::Pump { acceptor, open, close } => writeln!(out, "{}", pump_word(&acceptor, open, close)?)?,
        Command::Halting { machine, m, input } => print_json(out, &halting_report(&machine, m, &input)?)?,
        Command::Serve { bind, data_dir } => {
            let data_dir = data_dir
                .or_else(|| std::env::var_os(DATA_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR));
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(crate::service::serve(&bind, ServiceConfig { data_dir, seed: None }))?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and executes. Returns the exit status.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "ctt: {e}");
            1
        }
    }
}
