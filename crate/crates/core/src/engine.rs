//! Measurement semantics and seeded shot sampling.
//!
//! Two kinds of measurement are modelled:
//!
//! - a *relative* measurement asks only whether the two particles carry the
//!   same value. It projects onto `span{|00>, |11>}` or `span{|01>, |10>}` and
//!   leaves a Bell-family state untouched.
//! - a *value* measurement projects one particle onto `|0>` or `|1>`. On an
//!   entangled state the result is a product state.
//!
//! Outcomes whose probability is within tolerance of 0 or 1 are taken
//! deterministically and consume no random draw, so adding a deterministic
//! measurement to a program never shifts later sampled outcomes.
//!
//! # Random streams
//!
//! Every shot gets its own ChaCha8 stream: the generator is seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` and the stream number is set to the shot
//! index (see [`shot_rng`]). A draw is one `f64` in `[0, 1)` from
//! `rand::Rng::gen`; outcome 0 / `Same` / `+` is chosen when the draw is below
//! its probability. Results are therefore identical across machines and
//! independent of how shots are scheduled over threads.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{apply2, bell_operator, lift, projector, Bit, Particle, TwoQubitState};
use crate::bell::{bell_state, separability_defect, BellDescriptor, Sign};
use crate::circuit::{CircuitProgram, Preparation, Step};
use crate::{EPS_DET, EPS_SEP, EPS_ZERO};

/// Whether the two particles carry the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelativeBit {
    Same,
    Different,
}

impl RelativeBit {
    pub fn toggled(self) -> RelativeBit {
        match self {
            RelativeBit::Same => RelativeBit::Different,
            RelativeBit::Different => RelativeBit::Same,
        }
    }

    /// Basis indices spanning this outcome's subspace.
    fn support(self) -> [usize; 2] {
        match self {
            RelativeBit::Same => [0, 3],
            RelativeBit::Different => [1, 2],
        }
    }
}

impl fmt::Display for RelativeBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelativeBit::Same => "Same",
            RelativeBit::Different => "Different",
        })
    }
}

/// Result of reading the relative bit without sampling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeReading {
    /// The bit has a definite value (probability 1).
    Definite(RelativeBit),
    Indeterminate { p_same: f64 },
}

impl RelativeReading {
    pub fn bit(&self) -> Option<RelativeBit> {
        match self {
            RelativeReading::Definite(b) => Some(*b),
            RelativeReading::Indeterminate { .. } => None,
        }
    }

    pub fn probability(&self) -> f64 {
        match self {
            RelativeReading::Definite(_) => 1.0,
            RelativeReading::Indeterminate { p_same } => *p_same,
        }
    }
}

fn p_same(s: &TwoQubitState) -> f64 {
    let g = s.amplitudes();
    g[0].norm_sqr() + g[3].norm_sqr()
}

pub fn relative_bit(s: &TwoQubitState) -> RelativeReading {
    let p = p_same(s);
    if p >= 1.0 - EPS_DET {
        RelativeReading::Definite(RelativeBit::Same)
    } else if p <= EPS_DET {
        RelativeReading::Definite(RelativeBit::Different)
    } else {
        RelativeReading::Indeterminate { p_same: p }
    }
}

/// A sub-normalized vector produced by a projection, before renormalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub vector: TwoQubitState,
    /// Squared norm of `vector`: the Born probability of the outcome.
    pub probability: f64,
}

impl Projection {
    fn new(vector: TwoQubitState) -> Self {
        Projection {
            probability: vector.norm_sqr(),
            vector,
        }
    }
}

/// Zeroes the amplitudes outside the subspace of `bit`.
pub fn project_relative(s: &TwoQubitState, bit: RelativeBit) -> Projection {
    let mut amps = s.amplitudes();
    for (i, a) in amps.iter_mut().enumerate() {
        if !bit.support().contains(&i) {
            *a = 0.0.into();
        }
    }
    Projection::new(TwoQubitState::from_amplitudes(amps).expect("finite"))
}

pub fn project_value(s: &TwoQubitState, particle: Particle, value: Bit) -> Projection {
    Projection::new(apply2(&projector(particle, value), s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasurementKind {
    Relative,
    Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Relative(RelativeBit),
    Value(Particle, Bit),
}

impl Outcome {
    pub fn kind(&self) -> MeasurementKind {
        match self {
            Outcome::Relative(_) => MeasurementKind::Relative,
            Outcome::Value(..) => MeasurementKind::Value,
        }
    }

    /// `rel=Same`, `rel=Different`, `A=0`, `B=1`, ...
    pub fn label(&self) -> String {
        match self {
            Outcome::Relative(b) => format!("rel={b}"),
            Outcome::Value(p, v) => format!("{p}={v}"),
        }
    }
}

/// One measurement taken during a shot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementRecord {
    /// Index of the measuring step in the program.
    pub step: usize,
    pub outcome: Outcome,
    /// Probability of the observed outcome; exactly 1 on deterministic branches.
    pub probability: f64,
    /// The projected state before renormalization.
    pub projected: TwoQubitState,
    pub post_state: TwoQubitState,
}

impl MeasurementRecord {
    pub fn kind(&self) -> MeasurementKind {
        self.outcome.kind()
    }

    pub fn particle(&self) -> Option<Particle> {
        match self.outcome {
            Outcome::Value(p, _) => Some(p),
            Outcome::Relative(_) => None,
        }
    }

    pub fn projected_norm(&self) -> f64 {
        self.projected.norm()
    }

    fn to_json(self) -> Value {
        let (kind, particle, outcome) = match self.outcome {
            Outcome::Relative(b) => ("relative", Value::Null, b.to_string()),
            Outcome::Value(p, v) => ("value", Value::from(p.to_string()), v.to_string()),
        };
        json!({
            "step": self.step,
            "kind": kind,
            "particle": particle,
            "outcome": outcome,
            "probability": self.probability,
            "post_state": state_json(&self.post_state),
        })
    }
}

fn state_json(s: &TwoQubitState) -> Value {
    Value::Array(
        s.amplitudes()
            .iter()
            .map(|a| json!([a.re, a.im]))
            .collect(),
    )
}

/// Picks the first of two outcomes with probability `p_first`. Returns the
/// choice and whether a draw was taken.
fn sample<R: Rng + ?Sized>(p_first: f64, p_second: f64, eps: f64, rng: &mut R) -> (bool, bool) {
    if p_second <= eps {
        (true, false)
    } else if p_first <= eps {
        (false, false)
    } else {
        (rng.gen::<f64>() < p_first, true)
    }
}

fn record(outcome: Outcome, projection: Projection, drew: bool) -> MeasurementRecord {
    let post_state = projection
        .vector
        .normalize()
        .expect("sampled outcomes have non-zero probability");
    MeasurementRecord {
        step: 0,
        outcome,
        probability: if drew { projection.probability } else { 1.0 },
        projected: projection.vector,
        post_state,
    }
}

/// Samples the relative bit and collapses onto the matching subspace.
pub fn measure_relative<R: Rng + ?Sized>(s: &TwoQubitState, rng: &mut R) -> MeasurementRecord {
    let p = p_same(s);
    let (same, drew) = sample(p, 1.0 - p, EPS_DET, rng);
    let bit = if same {
        RelativeBit::Same
    } else {
        RelativeBit::Different
    };
    record(Outcome::Relative(bit), project_relative(s, bit), drew)
}

/// Samples the value of one particle (Born rule) and collapses the state.
pub fn measure_value<R: Rng + ?Sized>(
    s: &TwoQubitState,
    particle: Particle,
    rng: &mut R,
) -> MeasurementRecord {
    let zero = project_value(s, particle, Bit::Zero);
    let one = project_value(s, particle, Bit::One);
    let (first, drew) = sample(zero.probability, one.probability, EPS_ZERO, rng);
    if first {
        record(Outcome::Value(particle, Bit::Zero), zero, drew)
    } else {
        record(Outcome::Value(particle, Bit::One), one, drew)
    }
}

/// Everything that happened during one execution of a program.
#[derive(Clone, Debug, PartialEq)]
pub struct ShotResult {
    pub prepared: TwoQubitState,
    pub records: Vec<MeasurementRecord>,
    pub final_state: TwoQubitState,
}

impl ShotResult {
    /// Comma-joined outcome labels, e.g. `A=0,B=0`; `none` without measurements.
    pub fn outcome_key(&self) -> String {
        if self.records.is_empty() {
            return "none".to_string();
        }
        self.records
            .iter()
            .map(|r| r.outcome.label())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn to_json(&self, shot: u64) -> Value {
        json!({
            "shot": shot,
            "prepared": state_json(&self.prepared),
            "records": self.records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "final_state": state_json(&self.final_state),
        })
    }
}

/// The random stream of shot `index` under `seed`.
pub fn shot_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn prepare<R: Rng + ?Sized>(prep: &Preparation, rng: &mut R) -> TwoQubitState {
    match *prep {
        Preparation::Basis(i) => TwoQubitState::basis(i),
        Preparation::Bell(d) => bell_state(&d),
        Preparation::BellRandomSign { class, s0 } => {
            let sign = if rng.gen::<f64>() < 0.5 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let d = BellDescriptor::new(class, sign, s0).expect("validated s0");
            bell_state(&d)
        }
        Preparation::Raw(s) => s,
    }
}

/// Executes a validated program once.
pub fn run_shot<R: Rng + ?Sized>(program: &CircuitProgram, rng: &mut R) -> ShotResult {
    let prepared = prepare(&program.preparation, rng);
    let mut state = prepared;
    let mut records = Vec::new();
    for (i, step) in program.steps.iter().enumerate() {
        match step {
            Step::ApplyNamed(op, p) => state = apply2(&lift(&op.matrix(), *p), &state),
            Step::ApplyRaw(op, p) => state = apply2(&lift(op, *p), &state),
            Step::ApplyBellOperator => state = apply2(&bell_operator(), &state),
            Step::MeasureRelative => {
                let mut r = measure_relative(&state, rng);
                r.step = i;
                state = r.post_state;
                records.push(r);
            }
            Step::MeasureValue(p) => {
                let mut r = measure_value(&state, *p, rng);
                r.step = i;
                state = r.post_state;
                debug_assert!(separability_defect(&state) <= EPS_SEP);
                records.push(r);
            }
        }
    }
    ShotResult {
        prepared,
        records,
        final_state: state,
    }
}

/// Aggregated outcome counts of a multi-shot run.
#[derive(Clone, Debug, PartialEq)]
pub struct ShotStatistics {
    pub shots: u64,
    pub seed: u64,
    /// Outcome key (see [`ShotResult::outcome_key`]) to number of shots.
    pub counts: BTreeMap<String, u64>,
    /// Per-shot results in shot order, when requested.
    pub trace: Option<Vec<ShotResult>>,
}

impl ShotStatistics {
    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn frequency(&self, key: &str) -> f64 {
        self.count(key) as f64 / self.shots as f64
    }

    pub fn frequencies(&self) -> BTreeMap<String, f64> {
        self.counts
            .iter()
            .map(|(k, &n)| (k.clone(), n as f64 / self.shots as f64))
            .collect()
    }

    /// Marginal frequency of one outcome label (e.g. `A=0`) over all keys.
    pub fn marginal_frequency(&self, label: &str) -> f64 {
        let n: u64 = self
            .counts
            .iter()
            .filter(|(k, _)| k.split(',').any(|part| part == label))
            .map(|(_, n)| n)
            .sum();
        n as f64 / self.shots as f64
    }

    /// `{"counts": {...}, "seed": s, "shots": n}` with lexicographically
    /// sorted keys, plus `"trace"` when per-shot results were kept.
    pub fn to_json_value(&self) -> Value {
        let mut obj = json!({
            "shots": self.shots,
            "seed": self.seed,
            "counts": self.counts,
        });
        if let Some(trace) = &self.trace {
            obj["trace"] = Value::Array(
                trace
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.to_json(i as u64))
                    .collect(),
            );
        }
        obj
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

fn merge(mut a: BTreeMap<String, u64>, b: BTreeMap<String, u64>) -> BTreeMap<String, u64> {
    for (k, n) in b {
        *a.entry(k).or_insert(0) += n;
    }
    a
}

/// Runs `shots` shots in parallel; shot `i` uses [`shot_rng`]`(seed, i)`.
///
/// # Panics
///
/// Panics if `shots == 0`.
pub fn run(program: &CircuitProgram, shots: u64, seed: u64) -> ShotStatistics {
    assert!(shots >= 1, "at least one shot is required");
    let counts = (0..shots)
        .into_par_iter()
        .map(|i| run_shot(program, &mut shot_rng(seed, i)).outcome_key())
        .fold(BTreeMap::new, |mut acc, key| {
            *acc.entry(key).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, merge);
    ShotStatistics {
        shots,
        seed,
        counts,
        trace: None,
    }
}

/// Like [`run`], keeping every shot's records and final state.
pub fn run_traced(program: &CircuitProgram, shots: u64, seed: u64) -> ShotStatistics {
    assert!(shots >= 1, "at least one shot is required");
    let trace: Vec<ShotResult> = (0..shots)
        .into_par_iter()
        .map(|i| run_shot(program, &mut shot_rng(seed, i)))
        .collect();
    let mut counts = BTreeMap::new();
    for s in &trace {
        *counts.entry(s.outcome_key()).or_insert(0) += 1;
    }
    ShotStatistics {
        shots,
        seed,
        counts,
        trace: Some(trace),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lift_a, SingleQubitOperator};
    use crate::bell::{classify, BellClass, StateKind};
    use crate::circuit::parse;
    use rand::rngs::mock::StepRng;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    /// Every draw is 0.0, forcing the first outcome.
    fn force_first() -> StepRng {
        StepRng::new(0, 0)
    }

    /// Every draw is just below 1.0, forcing the second outcome.
    fn force_second() -> StepRng {
        StepRng::new(u64::MAX, 0)
    }

    fn st(amps: [f64; 4]) -> TwoQubitState {
        TwoQubitState::from_real(amps).unwrap()
    }

    fn phi_plus() -> TwoQubitState {
        bell_state(&BellDescriptor::PHI_PLUS)
    }

    /// Counts how many values the rng has handed out.
    struct Counting(u64);
    impl rand::RngCore for Counting {
        fn next_u32(&mut self) -> u32 {
            self.0 += 1;
            0
        }
        fn next_u64(&mut self) -> u64 {
            self.0 += 1;
            0
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            self.0 += 1;
            dest.fill(0);
        }
        fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
            self.fill_bytes(dest);
            Ok(())
        }
    }

    #[test]
    fn relative_bit_examples() {
        assert_eq!(
            relative_bit(&bell_state(&BellDescriptor::PHI_MINUS)),
            RelativeReading::Definite(RelativeBit::Same)
        );
        assert_eq!(
            relative_bit(&bell_state(&BellDescriptor::PSI_PLUS)),
            RelativeReading::Definite(RelativeBit::Different)
        );
        let r = relative_bit(&st([0.5; 4]));
        assert_eq!(r, RelativeReading::Indeterminate { p_same: 0.5 });
        assert_eq!(r.bit(), None);
    }

    #[test]
    fn measure_relative_on_bell_states_is_deterministic() {
        let mut rng = Counting(0);
        let r = measure_relative(&phi_plus(), &mut rng);
        assert_eq!(r.outcome, Outcome::Relative(RelativeBit::Same));
        assert_eq!(r.probability, 1.0);
        assert!(r.post_state.approx_eq(&phi_plus(), 1e-15));

        let psi_minus = bell_state(&BellDescriptor::PSI_MINUS);
        let r = measure_relative(&psi_minus, &mut rng);
        assert_eq!(r.outcome, Outcome::Relative(RelativeBit::Different));
        assert!(r.post_state.approx_eq(&psi_minus, 1e-15));
        assert_eq!(rng.0, 0);
    }

    #[test]
    fn measure_relative_collapses_superposition() {
        let r = measure_relative(&st([0.5; 4]), &mut force_first());
        assert_eq!(r.outcome, Outcome::Relative(RelativeBit::Same));
        assert!((r.probability - 0.5).abs() < 1e-15);
        assert!(r.post_state.approx_eq(&phi_plus(), 1e-15));

        let r = measure_relative(&st([0.5; 4]), &mut force_second());
        assert_eq!(r.outcome, Outcome::Relative(RelativeBit::Different));
        assert!(r.post_state.approx_eq(&st([0.0, H, H, 0.0]), 1e-15));
    }

    #[test]
    fn measure_value_on_phi_plus() {
        let r = measure_value(&phi_plus(), Particle::A, &mut force_first());
        assert_eq!(r.outcome, Outcome::Value(Particle::A, Bit::Zero));
        assert!((r.probability - 0.5).abs() < 1e-15);
        assert!(r.projected.approx_eq(&st([H, 0.0, 0.0, 0.0]), 1e-15));
        assert!((r.projected_norm() - H).abs() < 1e-15);
        assert_eq!(r.post_state, TwoQubitState::basis(0));

        let r = measure_value(&phi_plus(), Particle::A, &mut force_second());
        assert_eq!(r.outcome, Outcome::Value(Particle::A, Bit::One));
        assert!(r.post_state.approx_eq(&TwoQubitState::basis(3), 1e-15));
    }

    #[test]
    fn measure_value_eigenstate_consumes_no_draw() {
        let mut rng = Counting(0);
        let r = measure_value(&TwoQubitState::basis(1), Particle::B, &mut rng);
        assert_eq!(r.outcome, Outcome::Value(Particle::B, Bit::One));
        assert_eq!(r.probability, 1.0);
        assert_eq!(r.post_state, TwoQubitState::basis(1));
        assert_eq!(r.kind(), MeasurementKind::Value);
        assert_eq!(r.particle(), Some(Particle::B));
        assert_eq!(rng.0, 0);
    }

    #[test]
    fn measure_value_generalized_weight() {
        let d = BellDescriptor::new(BellClass::Phi, Sign::Plus, 0.6).unwrap();
        let r = measure_value(&bell_state(&d), Particle::A, &mut force_first());
        assert!((r.probability - 0.36).abs() < 1e-15);
    }

    #[test]
    fn value_measurement_leaves_product_state() {
        for d in BellDescriptor::STANDARD {
            for p in [Particle::A, Particle::B] {
                for rng in [&mut force_first(), &mut force_second()] {
                    let r = measure_value(&bell_state(&d), p, rng);
                    assert!(separability_defect(&r.post_state) <= EPS_SEP);
                }
            }
        }
    }

    #[test]
    fn run_shot_bell_pipeline() {
        let p = parse("prepare basis 00\napply bellop\napply flip A\napply bellop").unwrap();
        let shot = run_shot(&p, &mut shot_rng(0, 0));
        assert!(shot.final_state.approx_eq(&TwoQubitState::basis(1), 1e-15));
        assert!(shot.records.is_empty());
        assert_eq!(shot.outcome_key(), "none");
    }

    #[test]
    fn run_shot_relative_on_phi() {
        let p = parse("prepare bell phi +\nmeasure relative").unwrap();
        let shot = run_shot(&p, &mut shot_rng(3, 9));
        assert_eq!(shot.records.len(), 1);
        assert_eq!(shot.records[0].outcome, Outcome::Relative(RelativeBit::Same));
        assert_eq!(shot.records[0].probability, 1.0);
        assert_eq!(shot.records[0].step, 0);
    }

    #[test]
    fn run_shot_phi_values_always_agree() {
        let p = parse("prepare bell phi +\nmeasure value A\nmeasure value B").unwrap();
        for rng in [&mut force_first() as &mut dyn rand::RngCore, &mut force_second()] {
            let shot = run_shot(&p, rng);
            let key = shot.outcome_key();
            assert!(key == "A=0,B=0" || key == "A=1,B=1", "{key}");
            assert_eq!(shot.records[1].probability, 1.0);
        }
    }

    #[test]
    fn random_sign_preparation_draws_sign_from_stream() {
        let p = parse("prepare bell-random-sign phi").unwrap();
        let plus = run_shot(&p, &mut force_first());
        assert_eq!(classify(&plus.final_state).kind, StateKind::Bell(BellDescriptor::PHI_PLUS));
        let minus = run_shot(&p, &mut force_second());
        assert_eq!(classify(&minus.final_state).kind, StateKind::Bell(BellDescriptor::PHI_MINUS));
    }

    #[test]
    fn run_matches_sequential_shots() {
        let p = parse("prepare raw 0.5 0 0.5 0 0.5 0 0.5 0\nmeasure relative\nmeasure value B").unwrap();
        let stats = run(&p, 500, 42);
        let mut counts = BTreeMap::new();
        for i in 0..500 {
            *counts
                .entry(run_shot(&p, &mut shot_rng(42, i)).outcome_key())
                .or_insert(0u64) += 1;
        }
        assert_eq!(stats.counts, counts);
        assert_eq!(stats.counts.values().sum::<u64>(), 500);
        assert!((stats.frequencies().values().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(run_traced(&p, 500, 42).counts, counts);
    }

    #[test]
    fn deterministic_measurement_does_not_shift_samples() {
        let base = parse("prepare bell phi +\nmeasure value A").unwrap();
        let extra = parse("prepare bell phi +\nmeasure relative\nmeasure value A").unwrap();
        for i in 0..50 {
            let a = run_shot(&base, &mut shot_rng(5, i));
            let b = run_shot(&extra, &mut shot_rng(5, i));
            assert_eq!(a.records[0].outcome, b.records[1].outcome);
        }
    }

    #[test]
    fn flip_toggles_relative_bit_in_run() {
        let p = parse("prepare bell psi -\napply flip A\nmeasure relative").unwrap();
        let stats = run(&p, 64, 1);
        assert_eq!(stats.count("rel=Same"), 64);
        let twice = lift_a(&SingleQubitOperator::flip());
        let s = apply2(&twice, &apply2(&twice, &phi_plus()));
        assert_eq!(relative_bit(&s).bit(), Some(RelativeBit::Same));
    }

    #[test]
    fn json_schema_and_ordering() {
        let p = parse("prepare bell phi +\nmeasure value A\nmeasure value B").unwrap();
        let stats = run(&p, 10, 7);
        let text = stats.to_json();
        assert!(text.starts_with("{\"counts\":{"));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["shots"], 10);
        assert_eq!(v["seed"], 7);
        let total: u64 = v["counts"].as_object().unwrap().values().map(|n| n.as_u64().unwrap()).sum();
        assert_eq!(total, 10);
        assert!(v.get("trace").is_none());

        let traced = run_traced(&p, 3, 7).to_json_value();
        let trace = traced["trace"].as_array().unwrap();
        assert_eq!(trace.len(), 3);
        assert_eq!(trace[0]["records"][0]["kind"], "value");
        assert_eq!(trace[0]["records"][0]["particle"], "A");
    }

    #[test]
    fn marginals() {
        let mut counts = BTreeMap::new();
        counts.insert("A=0,B=0".to_string(), 3);
        counts.insert("A=1,B=0".to_string(), 1);
        let stats = ShotStatistics { shots: 4, seed: 0, counts, trace: None };
        assert_eq!(stats.marginal_frequency("A=0"), 0.75);
        assert_eq!(stats.marginal_frequency("B=0"), 1.0);
        assert_eq!(stats.frequency("A=1,B=1"), 0.0);
    }
}
