//! Invariant suite run by `bellkit check`.
//!
//! Each group exercises one algebraic or statistical law with fixed seeds and
//! reports pass/fail. The core-algebra groups take their primitives from a
//! [`Subject`], so a deliberately broken primitive can be plugged in to make
//! sure the suite notices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    self, Amplitude, Bit, Particle, SingleQubitOperator, SingleQubitState, TwoQubitOperator,
    TwoQubitState,
};
use crate::bell::{
    bell_state, classify, factorize, separability_defect, BellClass, BellDescriptor, Sign,
    StateKind,
};
use crate::circuit::parse;
use crate::engine::{measure_value, relative_bit, run, run_traced, RelativeBit};
use crate::{EPS_CLASS, EPS_NORM, EPS_OP, EPS_SEP};

/// Random inputs for property checks.
pub mod sample {
    use super::*;

    fn amplitude<R: Rng + ?Sized>(rng: &mut R) -> Amplitude {
        Amplitude::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    pub fn single_state<R: Rng + ?Sized>(rng: &mut R) -> SingleQubitState {
        loop {
            let s = SingleQubitState::from_amplitudes(amplitude(rng), amplitude(rng)).unwrap();
            if s.norm() > 1e-3 {
                return s.normalize().unwrap();
            }
        }
    }

    pub fn two_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
        loop {
            let s = TwoQubitState::from_amplitudes([(); 4].map(|_| amplitude(rng))).unwrap();
            if s.norm() > 1e-3 {
                return s.normalize().unwrap();
            }
        }
    }

    /// Arbitrary (generally non-unitary) 2x2 complex matrix.
    pub fn operator<R: Rng + ?Sized>(rng: &mut R) -> SingleQubitOperator {
        SingleQubitOperator::new([[amplitude(rng), amplitude(rng)], [amplitude(rng), amplitude(rng)]])
            .unwrap()
    }

    /// `e^{iφ} [[a, b], [-b*, a*]]` with `|a|² + |b|² = 1`.
    pub fn unitary<R: Rng + ?Sized>(rng: &mut R) -> SingleQubitOperator {
        let v = single_state(rng);
        let (a, b) = (v.amp0(), v.amp1());
        let phase = Amplitude::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        SingleQubitOperator::new([[phase * a, phase * b], [-phase * b.conj(), phase * a.conj()]])
            .unwrap()
    }

    pub fn bell_descriptor<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> BellDescriptor {
        let class = if rng.gen() { BellClass::Phi } else { BellClass::Psi };
        let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
        BellDescriptor::new(class, sign, rng.gen_range(margin..1.0 - margin)).unwrap()
    }
}

/// The primitives checked by the core-algebra groups.
#[derive(Clone, Copy)]
pub struct Subject {
    pub tensor: fn(&SingleQubitState, &SingleQubitState) -> TwoQubitState,
    pub apply1: fn(&SingleQubitOperator, &SingleQubitState) -> SingleQubitState,
    pub apply2: fn(&TwoQubitOperator, &TwoQubitState) -> TwoQubitState,
    pub lift_a: fn(&SingleQubitOperator) -> TwoQubitOperator,
    pub lift_b: fn(&SingleQubitOperator) -> TwoQubitOperator,
    pub compose: fn(&TwoQubitOperator, &TwoQubitOperator) -> TwoQubitOperator,
    pub bell_operator: fn() -> TwoQubitOperator,
    pub projector: fn(Particle, Bit) -> TwoQubitOperator,
}

impl Subject {
    pub fn reference() -> Subject {
        Subject {
            tensor: algebra::tensor,
            apply1: algebra::apply1,
            apply2: algebra::apply2,
            lift_a: algebra::lift_a,
            lift_b: algebra::lift_b,
            compose: algebra::compose,
            bell_operator: algebra::bell_operator,
            projector: algebra::projector,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    /// First failing case, empty on success.
    pub detail: String,
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn lifting_consistency(s: &Subject) -> Check {
    let mut r = rng(1);
    for i in 0..1000 {
        let op = sample::unitary(&mut r);
        let a = sample::single_state(&mut r);
        let b = sample::single_state(&mut r);
        let ab = (s.tensor)(&a, &b);
        let via_a = (s.apply2)(&(s.lift_a)(&op), &ab);
        let want_a = (s.tensor)(&(s.apply1)(&op, &a), &b);
        ensure(via_a.approx_eq(&want_a, EPS_OP), || format!("lift_a case {i}"))?;
        let via_b = (s.apply2)(&(s.lift_b)(&op), &ab);
        let want_b = (s.tensor)(&a, &(s.apply1)(&op, &b));
        ensure(via_b.approx_eq(&want_b, EPS_OP), || format!("lift_b case {i}"))?;
        // the product must also agree with the fixed basis order 2a + b
        for (j, got) in ab.amplitudes().iter().enumerate() {
            let want = [a.amp0(), a.amp1()][j >> 1] * [b.amp0(), b.amp1()][j & 1];
            ensure((got - want).norm() <= EPS_OP, || format!("tensor order case {i}"))?;
        }
    }
    Ok(())
}

fn lifting_homomorphism(s: &Subject) -> Check {
    let mut r = rng(2);
    for i in 0..500 {
        let x = sample::operator(&mut r);
        let y = sample::operator(&mut r);
        let xy = x.matmul(&y);
        for lift in [s.lift_a, s.lift_b] {
            let lhs = lift(&xy);
            let rhs = (s.compose)(&lift(&x), &lift(&y));
            ensure(lhs.approx_eq(&rhs, EPS_OP), || format!("case {i}"))?;
        }
    }
    Ok(())
}

fn lift_commutation(s: &Subject) -> Check {
    let mut r = rng(3);
    for i in 0..500 {
        let x = (s.lift_a)(&sample::operator(&mut r));
        let y = (s.lift_b)(&sample::operator(&mut r));
        ensure(
            (s.compose)(&x, &y).approx_eq(&(s.compose)(&y, &x), EPS_OP),
            || format!("case {i}"),
        )?;
    }
    Ok(())
}

fn unitarity_preservation(s: &Subject) -> Check {
    let mut r = rng(4);
    for i in 0..500 {
        let u = sample::unitary(&mut r);
        ensure(u.is_unitary(), || format!("sampled operator {i} not unitary"))?;
        ensure((s.lift_a)(&u).is_unitary(), || format!("lift_a case {i}"))?;
        ensure((s.lift_b)(&u).is_unitary(), || format!("lift_b case {i}"))?;
    }
    Ok(())
}

fn bell_operator_involution(s: &Subject) -> Check {
    let b = (s.bell_operator)();
    ensure(
        (s.compose)(&b, &b).approx_eq(&TwoQubitOperator::identity(), EPS_OP),
        || "B·B != I".into(),
    )?;
    ensure(b.is_unitary(), || "B not unitary".into())?;
    ensure(b.is_hermitian(), || "B not self-adjoint".into())?;
    let real = b.entries().iter().flatten().all(|e| e.im == 0.0);
    ensure(real, || "B not real".into())
}

fn projector_completeness(s: &Subject) -> Check {
    for p in [Particle::A, Particle::B] {
        let zero = (s.projector)(p, Bit::Zero);
        let one = (s.projector)(p, Bit::One);
        ensure(
            zero.add(&one).approx_eq(&TwoQubitOperator::identity(), EPS_OP),
            || format!("P0 + P1 != I for {p}"),
        )?;
        for proj in [zero, one] {
            ensure(
                (s.compose)(&proj, &proj).approx_eq(&proj, EPS_OP) && proj.is_hermitian(),
                || format!("not a projector for {p}"),
            )?;
        }
    }
    Ok(())
}

fn norm_preservation(s: &Subject) -> Check {
    let mut r = rng(5);
    for i in 0..500 {
        let mut op = TwoQubitOperator::identity();
        for _ in 0..4 {
            let next = match r.gen_range(0..3) {
                0 => (s.lift_a)(&sample::unitary(&mut r)),
                1 => (s.lift_b)(&sample::unitary(&mut r)),
                _ => (s.bell_operator)(),
            };
            op = (s.compose)(&next, &op);
        }
        let out = (s.apply2)(&op, &sample::two_state(&mut r));
        ensure((out.norm() - 1.0).abs() <= EPS_NORM, || format!("case {i}"))?;
    }
    Ok(())
}

fn bell_round_trip() -> Check {
    let mut r = rng(6);
    for i in 0..1000 {
        let d = sample::bell_descriptor(&mut r, 1e-6);
        let c = classify(&bell_state(&d));
        ensure(c.kind == StateKind::Bell(d), || format!("case {i}: {d:?} -> {:?}", c.kind))?;
    }
    Ok(())
}

fn factorize_round_trip() -> Check {
    let mut r = rng(7);
    for i in 0..1000 {
        let a = sample::single_state(&mut r);
        let b = sample::single_state(&mut r);
        let s = algebra::tensor(&a, &b);
        let (fa, fb) = factorize(&s).ok_or_else(|| format!("case {i} not factorized"))?;
        ensure(
            algebra::tensor(&fa, &fb).eq_up_to_phase(&s, EPS_CLASS),
            || format!("case {i} re-tensor mismatch"),
        )?;
    }
    Ok(())
}

fn bell_basis_orthonormality() -> Check {
    let states = BellDescriptor::STANDARD.map(|d| bell_state(&d));
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            ensure(
                (x.inner(y) - Amplitude::new(want, 0.0)).norm() <= EPS_NORM,
                || format!("<{i}|{j}>"),
            )?;
        }
        ensure(
            (separability_defect(x) - 0.5).abs() <= 1e-12 && factorize(x).is_none(),
            || format!("Bell state {i} looks separable"),
        )?;
    }
    Ok(())
}

fn degenerate_endpoints() -> Check {
    let cases = [
        (Sign::Plus, 1.0, 0),
        (Sign::Minus, 1.0, 0),
        (Sign::Plus, 0.0, 3),
    ];
    for (sign, s0, index) in cases {
        let d = BellDescriptor::new(BellClass::Phi, sign, s0).unwrap();
        let s = bell_state(&d);
        ensure(s == TwoQubitState::basis(index), || format!("{d:?} state"))?;
        ensure(
            classify(&s).kind == StateKind::ComputationalBasis(index),
            || format!("{d:?} classified as {:?}", classify(&s).kind),
        )?;
    }
    Ok(())
}

fn flip_class_toggle() -> Check {
    let flip = algebra::lift_a(&SingleQubitOperator::flip());
    let mut r = rng(8);
    let randoms: Vec<BellDescriptor> = (0..100).map(|_| sample::bell_descriptor(&mut r, 0.0)).collect();
    for d in BellDescriptor::STANDARD.iter().chain(&randoms) {
        let got = algebra::apply2(&flip, &bell_state(d));
        let target = bell_state(&d.toggled());
        ensure(got.eq_up_to_phase(&target, EPS_OP), || format!("{d:?} up to phase"))?;
        let signed = target.scale(Amplitude::new(d.sign().factor(), 0.0));
        ensure(got.approx_eq(&signed, EPS_OP), || format!("{d:?} signed"))?;
    }
    Ok(())
}

fn relative_bit_toggle() -> Check {
    let flip = algebra::lift_a(&SingleQubitOperator::flip());
    let mut r = rng(9);
    for i in 0..200 {
        let d = sample::bell_descriptor(&mut r, 0.0);
        let s = bell_state(&d);
        let before = relative_bit(&s).bit().ok_or_else(|| format!("case {i} indeterminate"))?;
        let once = algebra::apply2(&flip, &s);
        let twice = algebra::apply2(&flip, &once);
        ensure(relative_bit(&once).bit() == Some(before.toggled()), || format!("case {i} once"))?;
        ensure(relative_bit(&twice).bit() == Some(before), || format!("case {i} twice"))?;
        let expected = match d.class() {
            BellClass::Phi => RelativeBit::Same,
            BellClass::Psi => RelativeBit::Different,
        };
        ensure(before == expected, || format!("case {i} class"))?;
    }
    Ok(())
}

/// Forces the outcome of a single draw: 0 picks the first branch, `u64::MAX`
/// the second.
fn forced(first: bool) -> rand::rngs::mock::StepRng {
    rand::rngs::mock::StepRng::new(if first { 0 } else { u64::MAX }, 0)
}

fn value_measurement_disentangles() -> Check {
    for d in BellDescriptor::STANDARD {
        for p in [Particle::A, Particle::B] {
            for first in [true, false] {
                let rec = measure_value(&bell_state(&d), p, &mut forced(first));
                ensure(
                    separability_defect(&rec.post_state) <= EPS_SEP,
                    || format!("{d:?} measured on {p}"),
                )?;
            }
        }
    }
    Ok(())
}

fn correlation_law() -> Check {
    for d in BellDescriptor::STANDARD {
        for first in [true, false] {
            let a = measure_value(&bell_state(&d), Particle::A, &mut forced(first));
            let b = measure_value(&a.post_state, Particle::B, &mut forced(true));
            let (crate::engine::Outcome::Value(_, va), crate::engine::Outcome::Value(_, vb)) =
                (a.outcome, b.outcome)
            else {
                return Err("unexpected outcome kind".into());
            };
            let agree = va == vb;
            ensure(
                agree == (d.class() == BellClass::Phi) && b.probability == 1.0,
                || format!("{d:?}: A={va} B={vb}"),
            )?;
        }
    }
    Ok(())
}

fn statistics_and_reproducibility() -> Check {
    let p = parse("prepare bell phi + s0=0.6\nmeasure value A\nmeasure value B").unwrap();
    let shots = 20_000;
    let first = run(&p, shots, 11);
    let f = first.marginal_frequency("A=0");
    let tol = 4.0 * (0.36f64 * 0.64 / shots as f64).sqrt();
    ensure((f - 0.36).abs() <= tol, || format!("freq(A=0) = {f}"))?;
    ensure(
        first.count("A=0,B=1") + first.count("A=1,B=0") == 0,
        || "mixed outcomes on a Phi state".into(),
    )?;
    ensure(run(&p, shots, 11) == first, || "counts differ between runs".into())?;
    let t1 = run_traced(&p, 200, 3);
    ensure(run_traced(&p, 200, 3) == t1, || "traces differ between runs".into())
}

fn group(name: &'static str, check: Check) -> GroupResult {
    let (passed, detail) = match check {
        Ok(()) => (true, String::new()),
        Err(e) => (false, e),
    };
    GroupResult { name, passed, detail }
}

/// Runs every group against the crate's own primitives.
pub fn run_all() -> Vec<GroupResult> {
    run_with(&Subject::reference())
}

pub fn run_with(s: &Subject) -> Vec<GroupResult> {
    vec![
        group("lifting-consistency", lifting_consistency(s)),
        group("lifting-homomorphism", lifting_homomorphism(s)),
        group("lift-commutation", lift_commutation(s)),
        group("unitarity-preservation", unitarity_preservation(s)),
        group("bell-operator-involution", bell_operator_involution(s)),
        group("projector-completeness", projector_completeness(s)),
        group("norm-preservation", norm_preservation(s)),
        group("bell-round-trip", bell_round_trip()),
        group("factorize-round-trip", factorize_round_trip()),
        group("bell-basis-orthonormality", bell_basis_orthonormality()),
        group("degenerate-endpoints", degenerate_endpoints()),
        group("flip-class-toggle", flip_class_toggle()),
        group("relative-bit-toggle", relative_bit_toggle()),
        group("value-measurement-disentangles", value_measurement_disentangles()),
        group("correlation-law", correlation_law()),
        group("statistics-and-reproducibility", statistics_and_reproducibility()),
    ]
}
