//! Circuit programs and their line-oriented text form (`.bk` files).
//!
//! ```text
//! # comment to end of line
//! prepare basis <00|01|10|11>
//! prepare bell <phi|psi> <+|-> [s0=<real>]
//! prepare bell-random-sign <phi|psi> [s0=<real>]
//! prepare raw <re im re im re im re im>
//! apply <identity|flip|t_plus|t_minus> <A|B>
//! apply bellop
//! apply raw <A|B> <re im re im re im re im>     # row-major 2x2
//! measure relative
//! measure value <A|B>
//! shots <integer>
//! seed <integer>
//! ```
//!
//! One statement per line, whitespace-separated tokens, lowercase keywords.
//! `s0` defaults to `1/sqrt(2)`, `shots` to 1024 and `seed` to 0. Parsing is
//! all-or-nothing: any error yields diagnostics and no program.

use std::fmt;

use crate::algebra::{format_real, Amplitude, NamedOperator, Particle, SingleQubitOperator, TwoQubitState};
use crate::bell::{BellClass, BellDescriptor, Sign, STANDARD_S0};
use crate::EPS_NORM;

pub const DEFAULT_SHOTS: u64 = 1024;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preparation {
    /// Computational basis state by index `2a + b`.
    Basis(usize),
    Bell(BellDescriptor),
    /// A Bell-family state whose sign is drawn uniformly at the start of
    /// every shot.
    BellRandomSign { class: BellClass, s0: f64 },
    /// Explicit amplitudes; must be normalized to pass validation.
    Raw(TwoQubitState),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    ApplyNamed(NamedOperator, Particle),
    ApplyBellOperator,
    /// Explicit 2x2 operator; must be unitary to pass validation.
    ApplyRaw(SingleQubitOperator, Particle),
    MeasureRelative,
    MeasureValue(Particle),
}

impl Step {
    pub fn is_measurement(&self) -> bool {
        matches!(self, Step::MeasureRelative | Step::MeasureValue(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitProgram {
    pub preparation: Preparation,
    pub steps: Vec<Step>,
    pub shots: u64,
    pub seed: u64,
}

impl CircuitProgram {
    pub fn new(preparation: Preparation) -> Self {
        CircuitProgram {
            preparation,
            steps: Vec::new(),
            shots: DEFAULT_SHOTS,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_steps(mut self, steps: impl IntoIterator<Item = Step>) -> Self {
        self.steps.extend(steps);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

/// A message tied to a 1-based line and column of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            line: pos.line,
            column: pos.column,
            severity: Severity::Error,
            message: message.into(),
        }
    }

    fn warning(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(pos, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    const START: Pos = Pos { line: 1, column: 1 };
}

/// Where each part of a parsed program came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceMap {
    pub preparation: Pos,
    pub steps: Vec<Pos>,
    pub shots: Option<Pos>,
}

impl SourceMap {
    /// Positions in the text produced by [`format`].
    pub fn canonical(p: &CircuitProgram) -> SourceMap {
        let line = |i: usize| Pos { line: i, column: 1 };
        SourceMap {
            preparation: line(1),
            steps: (0..p.steps.len()).map(|i| line(i + 2)).collect(),
            shots: (p.shots != DEFAULT_SHOTS).then(|| line(p.steps.len() + 2)),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    pos: Pos,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in code.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, col)) = start.take() {
                tokens.push(Token {
                    text: &code[b..byte],
                    pos: Pos { line: line_no, column: col },
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, col)) = start {
        tokens.push(Token {
            text: &code[b..],
            pos: Pos { line: line_no, column: col },
        });
    }
    tokens
}

fn parse_real(t: &Token<'_>) -> Result<f64, Diagnostic> {
    match t.text.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Diagnostic::error(t.pos, format!("malformed number `{}`", t.text))),
    }
}

fn parse_integer(t: &Token<'_>) -> Result<u64, Diagnostic> {
    t.text
        .parse::<u64>()
        .map_err(|_| Diagnostic::error(t.pos, format!("malformed integer `{}`", t.text)))
}

fn parse_particle(t: &Token<'_>) -> Result<Particle, Diagnostic> {
    t.text
        .parse()
        .map_err(|_| Diagnostic::error(t.pos, format!("expected particle A or B, found `{}`", t.text)))
}

fn parse_class(t: &Token<'_>) -> Result<BellClass, Diagnostic> {
    t.text
        .parse()
        .map_err(|_| Diagnostic::error(t.pos, format!("expected phi or psi, found `{}`", t.text)))
}

fn parse_s0(t: Option<&Token<'_>>) -> Result<f64, Diagnostic> {
    let Some(t) = t else {
        return Ok(STANDARD_S0);
    };
    let Some(value) = t.text.strip_prefix("s0=") else {
        return Err(Diagnostic::error(t.pos, format!("expected s0=<real>, found `{}`", t.text)));
    };
    let value_pos = Pos {
        column: t.pos.column + 3,
        ..t.pos
    };
    let s0 = parse_real(&Token { text: value, pos: value_pos })?;
    if !(0.0..=1.0).contains(&s0) {
        return Err(Diagnostic::error(value_pos, format!("s0 = {s0} is outside [0, 1]")));
    }
    Ok(s0)
}

fn parse_amplitudes<const N: usize>(tokens: &[Token<'_>]) -> Result<[Amplitude; N], Diagnostic> {
    let mut out = [Amplitude::new(0.0, 0.0); N];
    for (i, a) in out.iter_mut().enumerate() {
        *a = Amplitude::new(parse_real(&tokens[2 * i])?, parse_real(&tokens[2 * i + 1])?);
    }
    Ok(out)
}

fn arity(tokens: &[Token<'_>], allowed: &[usize], usage: &str) -> Result<(), Diagnostic> {
    if allowed.contains(&tokens.len()) {
        Ok(())
    } else {
        // point at the first surplus token, or at the statement when short
        let max = allowed.iter().copied().max().unwrap_or(0);
        let pos = tokens.get(max).unwrap_or(&tokens[0]).pos;
        Err(Diagnostic::error(pos, format!("wrong number of arguments; usage: {usage}")))
    }
}

fn parse_preparation(tokens: &[Token<'_>]) -> Result<Preparation, Diagnostic> {
    let Some(kind) = tokens.get(1) else {
        return Err(Diagnostic::error(
            tokens[0].pos,
            "wrong number of arguments; usage: prepare <basis|bell|bell-random-sign|raw> ...",
        ));
    };
    match kind.text {
        "basis" => {
            arity(tokens, &[3], "prepare basis <00|01|10|11>")?;
            let t = &tokens[2];
            let index = match t.text {
                "00" => 0,
                "01" => 1,
                "10" => 2,
                "11" => 3,
                _ => {
                    return Err(Diagnostic::error(
                        t.pos,
                        format!("expected 00, 01, 10 or 11, found `{}`", t.text),
                    ))
                }
            };
            Ok(Preparation::Basis(index))
        }
        "bell" => {
            arity(tokens, &[4, 5], "prepare bell <phi|psi> <+|-> [s0=<real>]")?;
            let class = parse_class(&tokens[2])?;
            let sign: Sign = tokens[3].text.parse().map_err(|_| {
                Diagnostic::error(tokens[3].pos, format!("expected + or -, found `{}`", tokens[3].text))
            })?;
            let s0 = parse_s0(tokens.get(4))?;
            let d = BellDescriptor::new(class, sign, s0).expect("range checked");
            Ok(Preparation::Bell(d))
        }
        "bell-random-sign" => {
            arity(tokens, &[3, 4], "prepare bell-random-sign <phi|psi> [s0=<real>]")?;
            let class = parse_class(&tokens[2])?;
            let s0 = parse_s0(tokens.get(3))?;
            Ok(Preparation::BellRandomSign { class, s0 })
        }
        "raw" => {
            arity(tokens, &[10], "prepare raw <8 reals>")?;
            let amps = parse_amplitudes::<4>(&tokens[2..])?;
            Ok(Preparation::Raw(TwoQubitState::from_amplitudes(amps).expect("finite")))
        }
        other => Err(Diagnostic::error(
            kind.pos,
            format!("unknown preparation `{other}`"),
        )),
    }
}

fn parse_step(tokens: &[Token<'_>]) -> Result<Step, Diagnostic> {
    let keyword = tokens[0].text;
    let Some(what) = tokens.get(1) else {
        let usage = if keyword == "apply" {
            "apply <operator> <A|B> | apply bellop | apply raw <A|B> <8 reals>"
        } else {
            "measure relative | measure value <A|B>"
        };
        return Err(Diagnostic::error(
            tokens[0].pos,
            format!("wrong number of arguments; usage: {usage}"),
        ));
    };
    match (keyword, what.text) {
        ("apply", "bellop") => {
            arity(tokens, &[2], "apply bellop")?;
            Ok(Step::ApplyBellOperator)
        }
        ("apply", "raw") => {
            arity(tokens, &[11], "apply raw <A|B> <8 reals>")?;
            let particle = parse_particle(&tokens[2])?;
            let a = parse_amplitudes::<4>(&tokens[3..])?;
            let op = SingleQubitOperator::new([[a[0], a[1]], [a[2], a[3]]]).expect("finite");
            Ok(Step::ApplyRaw(op, particle))
        }
        ("apply", name) => {
            let op: NamedOperator = name
                .parse()
                .map_err(|_| Diagnostic::error(what.pos, format!("unknown operator `{name}`")))?;
            arity(tokens, &[3], "apply <operator> <A|B>")?;
            Ok(Step::ApplyNamed(op, parse_particle(&tokens[2])?))
        }
        ("measure", "relative") => {
            arity(tokens, &[2], "measure relative")?;
            Ok(Step::MeasureRelative)
        }
        ("measure", "value") => {
            arity(tokens, &[3], "measure value <A|B>")?;
            Ok(Step::MeasureValue(parse_particle(&tokens[2])?))
        }
        (_, other) => Err(Diagnostic::error(
            what.pos,
            format!("unknown measurement `{other}`"),
        )),
    }
}

pub fn parse(source: &str) -> Result<CircuitProgram, Vec<Diagnostic>> {
    parse_with_map(source).map(|(p, _)| p)
}

/// Parses a program and records the source position of each statement.
pub fn parse_with_map(source: &str) -> Result<(CircuitProgram, SourceMap), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut preparation: Option<(Preparation, Pos)> = None;
    let mut saw_prepare = false;
    let mut steps = Vec::new();
    let mut step_pos = Vec::new();
    let mut shots: Option<(u64, Pos)> = None;
    let mut seed: Option<u64> = None;
    let mut seed_seen = false;

    for (i, raw_line) in source.split('\n').enumerate() {
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let tokens = tokenize(line, i + 1);
        let Some(head) = tokens.first() else {
            continue;
        };
        let result: Result<(), Diagnostic> = match head.text {
            "prepare" => {
                let duplicate = saw_prepare;
                saw_prepare = true;
                if duplicate {
                    Err(Diagnostic::error(head.pos, "duplicate `prepare`"))
                } else {
                    parse_preparation(&tokens).map(|p| preparation = Some((p, head.pos)))
                }
            }
            "apply" | "measure" => {
                if !saw_prepare {
                    Err(Diagnostic::error(
                        head.pos,
                        format!("`{}` before `prepare`", head.text),
                    ))
                } else {
                    parse_step(&tokens).map(|s| {
                        steps.push(s);
                        step_pos.push(head.pos);
                    })
                }
            }
            "shots" => {
                if shots.is_some() {
                    Err(Diagnostic::error(head.pos, "duplicate `shots`"))
                } else {
                    arity(&tokens, &[2], "shots <integer>")
                        .and_then(|_| parse_integer(&tokens[1]))
                        .map(|n| shots = Some((n, head.pos)))
                }
            }
            "seed" => {
                if seed_seen {
                    Err(Diagnostic::error(head.pos, "duplicate `seed`"))
                } else {
                    seed_seen = true;
                    arity(&tokens, &[2], "seed <integer>")
                        .and_then(|_| parse_integer(&tokens[1]))
                        .map(|n| seed = Some(n))
                }
            }
            other => Err(Diagnostic::error(head.pos, format!("unknown keyword `{other}`"))),
        };
        if let Err(d) = result {
            diags.push(d);
        }
    }

    if !saw_prepare {
        diags.push(Diagnostic::error(Pos::START, "missing `prepare` statement"));
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let (preparation, prep_pos) = preparation.expect("prepare parsed without errors");
    let program = CircuitProgram {
        preparation,
        steps,
        shots: shots.map_or(DEFAULT_SHOTS, |(n, _)| n),
        seed: seed.unwrap_or(DEFAULT_SEED),
    };
    let map = SourceMap {
        preparation: prep_pos,
        steps: step_pos,
        shots: shots.map(|(_, p)| p),
    };
    Ok((program, map))
}

/// Semantic checks, with positions referring to the canonical layout of
/// [`format`].
pub fn validate(p: &CircuitProgram) -> Vec<Diagnostic> {
    validate_with_map(p, &SourceMap::canonical(p))
}

/// Semantic checks: raw states normalized, raw operators unitary, `s0` in
/// range, at least one shot. Warns about programs without measurements and
/// about steps after both particles have been value-measured.
pub fn validate_with_map(p: &CircuitProgram, map: &SourceMap) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    match p.preparation {
        Preparation::Raw(s) if (s.norm() - 1.0).abs() > EPS_NORM => diags.push(Diagnostic::error(
            map.preparation,
            format!("raw state is not normalized (norm {})", s.norm()),
        )),
        Preparation::BellRandomSign { s0, .. } if !(0.0..=1.0).contains(&s0) => diags.push(
            Diagnostic::error(map.preparation, format!("s0 = {s0} is outside [0, 1]")),
        ),
        _ => {}
    }
    if p.shots == 0 {
        diags.push(Diagnostic::error(
            map.shots.unwrap_or(map.preparation),
            "shots must be at least 1",
        ));
    }

    let mut measured_a = false;
    let mut measured_b = false;
    for (i, step) in p.steps.iter().enumerate() {
        let pos = map.steps.get(i).copied().unwrap_or(map.preparation);
        if measured_a && measured_b {
            diags.push(Diagnostic::warning(
                pos,
                "step after both particles were value-measured; the state is already fully determined",
            ));
        }
        match step {
            Step::ApplyRaw(op, _) if !op.is_unitary() => {
                diags.push(Diagnostic::error(pos, "non-unitary raw operator"))
            }
            Step::MeasureValue(Particle::A) => measured_a = true,
            Step::MeasureValue(Particle::B) => measured_b = true,
            _ => {}
        }
    }
    if !p.steps.iter().any(Step::is_measurement) {
        diags.push(Diagnostic::warning(map.preparation, "program has no measurements"));
    }
    diags
}

/// Parses and validates. On success returns the program and any warnings.
pub fn load(source: &str) -> Result<(CircuitProgram, Vec<Diagnostic>), Vec<Diagnostic>> {
    let (program, map) = parse_with_map(source)?;
    let diags = validate_with_map(&program, &map);
    if diags.iter().any(Diagnostic::is_error) {
        Err(diags)
    } else {
        Ok((program, diags))
    }
}

fn reals(amps: &[Amplitude]) -> String {
    amps.iter()
        .flat_map(|a| [format_real(a.re), format_real(a.im)])
        .collect::<Vec<_>>()
        .join(" ")
}

fn s0_suffix(s0: f64) -> String {
    if s0 == STANDARD_S0 {
        String::new()
    } else {
        format!(" s0={}", format_real(s0))
    }
}

/// Canonical source text: one statement per line, reals with 17 significant
/// digits, default `s0`, `shots` and `seed` omitted. `parse(format(p)) == p`.
pub fn format(p: &CircuitProgram) -> String {
    let mut out = String::new();
    let prep = match p.preparation {
        Preparation::Basis(i) => format!("prepare basis {}{}", i >> 1, i & 1),
        Preparation::Bell(d) => format!(
            "prepare bell {} {}{}",
            d.class(),
            d.sign(),
            s0_suffix(d.s0())
        ),
        Preparation::BellRandomSign { class, s0 } => {
            format!("prepare bell-random-sign {class}{}", s0_suffix(s0))
        }
        Preparation::Raw(s) => format!("prepare raw {}", reals(&s.amplitudes())),
    };
    out.push_str(&prep);
    out.push('\n');
    for step in &p.steps {
        let line = match step {
            Step::ApplyNamed(op, particle) => format!("apply {op} {particle}"),
            Step::ApplyBellOperator => "apply bellop".to_string(),
            Step::ApplyRaw(op, particle) => {
                let m = op.entries();
                format!("apply raw {particle} {}", reals(&[m[0][0], m[0][1], m[1][0], m[1][1]]))
            }
            Step::MeasureRelative => "measure relative".to_string(),
            Step::MeasureValue(particle) => format!("measure value {particle}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    if p.shots != DEFAULT_SHOTS {
        out.push_str(&format!("shots {}\n", p.shots));
    }
    if p.seed != DEFAULT_SEED {
        out.push_str(&format!("seed {}\n", p.seed));
    }
    out
}

impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}
