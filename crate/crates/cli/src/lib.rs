//! Command implementations behind the `bellkit` binary.
//!
//! Every command returns a [`CmdOutput`] instead of printing, so the binary is
//! a thin wrapper and the commands can be tested byte-for-byte.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use bellkit::algebra::{apply2, bell_operator, lift_a, SingleQubitOperator, TwoQubitOperator, TwoQubitState};
use bellkit::bell::{bell_state, classify, separability_defect, BellClass, BellDescriptor, Sign};
use bellkit::circuit::{self, CircuitProgram, Preparation, Step};
use bellkit::engine::{self, relative_bit, RelativeReading, ShotStatistics};
use bellkit::{selfcheck, Particle, EPS_NORM};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_PROGRAM: i32 = 2;
pub const EXIT_SELF_TEST: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn usage(msg: impl Into<String>) -> Self {
        CmdOutput {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Phi,
    Psi,
}

impl From<ClassArg> for BellClass {
    fn from(c: ClassArg) -> BellClass {
        match c {
            ClassArg::Phi => BellClass::Phi,
            ClassArg::Psi => BellClass::Psi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub format: OutputFormat,
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub class: BellClass,
    pub points: usize,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(name = "bellkit", version, about = "Two-qubit Bell-state circuits: run, demo, sweep, check")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, validate and run a circuit program (.bk)
    Run {
        input: PathBuf,
        /// Number of shots, overriding the program's `shots`
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: Option<u64>,
        /// Base seed, overriding the program's `seed`
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Include per-shot measurement records
        #[arg(long)]
        trace: bool,
    },
    /// Walk |00> through B, a flip of A, and B again, checking each stage
    Demo,
    /// Sample the generalized Bell family over evenly spaced s0 in [0, 1]
    Sweep {
        #[arg(long, value_enum, default_value_t = ClassArg::Phi)]
        class: ClassArg,
        #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u64).range(2..))]
        points: u64,
        #[arg(long, default_value_t = circuit::DEFAULT_SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = circuit::DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the built-in invariant suite
    Check,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I) -> CmdOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CmdOutput::usage(text)
            } else {
                CmdOutput {
                    status: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match cli.command {
        Command::Run {
            input,
            shots,
            seed,
            format,
            trace,
        } => cmd_run(&RunConfig {
            input,
            shots,
            seed,
            format,
            trace,
        }),
        Command::Demo => cmd_demo(),
        Command::Sweep {
            class,
            points,
            shots,
            seed,
        } => cmd_sweep(&SweepConfig {
            class: class.into(),
            points: points as usize,
            shots,
            seed,
        }),
        Command::Check => cmd_check(),
    }
}

fn relative_label(s: &TwoQubitState) -> String {
    match relative_bit(s) {
        RelativeReading::Definite(b) => b.to_string(),
        RelativeReading::Indeterminate { p_same } => format!("indeterminate (p_same={p_same:.6})"),
    }
}

fn render_text(path: &str, program: &CircuitProgram, stats: &ShotStatistics) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "program: {path}");
    let _ = writeln!(out, "shots: {}  seed: {}", stats.shots, stats.seed);
    let width = stats.counts.keys().map(String::len).max().unwrap_or(0).max(7);
    let _ = writeln!(out, "{:<width$}  {:>10}  {:>9}", "outcome", "count", "frequency");
    for (key, n) in &stats.counts {
        let _ = writeln!(out, "{key:<width$}  {n:>10}  {:>9.6}", *n as f64 / stats.shots as f64);
    }
    let first = engine::run_shot(program, &mut engine::shot_rng(stats.seed, 0));
    let _ = writeln!(
        out,
        "final state (shot 0): {}  [{}; relative bit {}]",
        first.final_state,
        classify(&first.final_state),
        relative_label(&first.final_state)
    );
    if let Some(trace) = &stats.trace {
        let _ = writeln!(out, "trace:");
        for (i, shot) in trace.iter().enumerate() {
            let _ = writeln!(out, "shot {i}: {}", shot.outcome_key());
            for r in &shot.records {
                let _ = writeln!(
                    out,
                    "  step {} {}  p={:.6}  post: {}",
                    r.step,
                    r.outcome.label(),
                    r.probability,
                    r.post_state
                );
            }
        }
    }
    out
}

/// `bellkit run`: exit 0 on success, 1 on usage or I/O errors, 2 when the
/// program does not parse or validate.
pub fn cmd_run(config: &RunConfig) -> CmdOutput {
    if config.shots == Some(0) {
        return CmdOutput::usage("error: --shots must be at least 1\n");
    }
    let path = config.input.display().to_string();
    let source = match std::fs::read_to_string(&config.input) {
        Ok(s) => s,
        Err(e) => return CmdOutput::usage(format!("error: cannot read {path}: {e}\n")),
    };
    let (program, warnings) = match circuit::load(&source) {
        Ok(ok) => ok,
        Err(diags) => {
            let stderr = diags.iter().map(|d| format!("{path}:{d}\n")).collect();
            return CmdOutput {
                status: EXIT_INVALID_PROGRAM,
                stdout: String::new(),
                stderr,
            };
        }
    };
    let stderr: String = warnings.iter().map(|d| format!("{path}:{d}\n")).collect();
    let shots = config.shots.unwrap_or(program.shots);
    let seed = config.seed.unwrap_or(program.seed);
    let stats = if config.trace {
        engine::run_traced(&program, shots, seed)
    } else {
        engine::run(&program, shots, seed)
    };
    let stdout = match config.format {
        OutputFormat::Json => stats.to_json() + "\n",
        OutputFormat::Text => render_text(&path, &program, &stats),
    };
    CmdOutput {
        status: EXIT_OK,
        stdout,
        stderr,
    }
}

/// `bellkit demo`: exit 0 when every stage matches its expected state, 3
/// otherwise.
pub fn cmd_demo() -> CmdOutput {
    demo_with(&bell_operator())
}

fn demo_with(b: &TwoQubitOperator) -> CmdOutput {
    let flip = lift_a(&SingleQubitOperator::flip());
    let x = apply2(b, &TwoQubitState::basis(0));
    let y = apply2(&flip, &x);
    let z = apply2(b, &y);
    let stages = [
        ("X", "B |00>", x, bell_state(&BellDescriptor::PHI_PLUS)),
        ("Y", "F_A X", y, bell_state(&BellDescriptor::PSI_PLUS)),
        ("Z", "B Y", z, TwoQubitState::basis(1)),
    ];
    let mut out = String::from("start    |00>\n");
    let mut all_ok = true;
    for (name, how, state, expected) in stages {
        let ok = state.approx_eq(&expected, EPS_NORM);
        all_ok &= ok;
        let _ = writeln!(
            out,
            "stage {name}  {how:<7}  {state}  {:<6}  relative bit: {:<9}  {}",
            classify(&state).to_string(),
            relative_label(&state),
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(out, "{}", if all_ok { "demo: all stages match" } else { "demo: FAILED" });
    CmdOutput {
        status: if all_ok { EXIT_OK } else { EXIT_SELF_TEST },
        stdout: out,
        stderr: String::new(),
    }
}

/// Probability of measuring particle A as 0 on the family member.
fn p0_analytic(class: BellClass, s0: f64) -> f64 {
    match class {
        BellClass::Phi => s0 * s0,
        BellClass::Psi => 1.0 - s0 * s0,
    }
}

/// One CSV row; every row of a sweep uses the same seed.
pub fn sweep_row(class: BellClass, s0: f64, shots: u64, seed: u64) -> String {
    let d = BellDescriptor::new(class, Sign::Plus, s0).expect("s0 in [0, 1]");
    let program = CircuitProgram::new(Preparation::Bell(d)).with_steps([Step::MeasureValue(Particle::A)]);
    let stats = engine::run(&program, shots, seed);
    format!(
        "{s0},{},{},{}",
        separability_defect(&bell_state(&d)),
        p0_analytic(class, s0),
        stats.marginal_frequency("A=0")
    )
}

/// `bellkit sweep`: CSV with header `s0,defect,p0_analytic,p0_empirical`.
pub fn cmd_sweep(config: &SweepConfig) -> CmdOutput {
    if config.points < 2 {
        return CmdOutput::usage("error: --points must be at least 2\n");
    }
    if config.shots == 0 {
        return CmdOutput::usage("error: --shots must be at least 1\n");
    }
    let mut out = String::from("s0,defect,p0_analytic,p0_empirical\n");
    let last = (config.points - 1) as f64;
    for k in 0..config.points {
        let s0 = k as f64 / last;
        out.push_str(&sweep_row(config.class, s0, config.shots, config.seed));
        out.push('\n');
    }
    CmdOutput {
        status: EXIT_OK,
        stdout: out,
        stderr: String::new(),
    }
}

/// `bellkit check`: exit 0 iff every invariant group passes, 3 otherwise.
pub fn cmd_check() -> CmdOutput {
    render_check(&selfcheck::run_all())
}

fn render_check(results: &[selfcheck::GroupResult]) -> CmdOutput {
    let mut out = String::new();
    for g in results {
        if g.passed {
            let _ = writeln!(out, "PASS  {}", g.name);
        } else {
            let _ = writeln!(out, "FAIL  {}: {}", g.name, g.detail);
        }
    }
    let passed = results.iter().filter(|g| g.passed).count();
    let _ = writeln!(out, "{passed}/{} groups passed", results.len());
    CmdOutput {
        status: if passed == results.len() { EXIT_OK } else { EXIT_SELF_TEST },
        stdout: out,
        stderr: String::new(),
    }
}
