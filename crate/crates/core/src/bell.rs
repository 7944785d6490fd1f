//! The one-parameter Bell family, separability and classification of
//! two-qubit states.
//!
//! A Bell-family state is described by a class (`Phi`: the two particles carry
//! the same value, `Psi`: different values), a sign and a weight `s0 ∈ [0, 1]`:
//!
//! ```text
//! Phi± = s0 |00> ± sqrt(1 - s0²) |11>
//! Psi± = sqrt(1 - s0²) |01> ± s0 |10>
//! ```
//!
//! `s0 = 1/sqrt(2)` gives the four standard (maximally entangled) Bell states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{tensor, Amplitude, SingleQubitState, TwoQubitState};
use crate::{Error, EPS_CLASS, EPS_SEP, EPS_ZERO};

/// Weight of the standard Bell states.
pub const STANDARD_S0: f64 = FRAC_1_SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellClass {
    /// Support on `|00>` and `|11>`.
    Phi,
    /// Support on `|01>` and `|10>`.
    Psi,
}

impl BellClass {
    pub fn toggled(self) -> BellClass {
        match self {
            BellClass::Phi => BellClass::Psi,
            BellClass::Psi => BellClass::Phi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellClass::Phi => "phi",
            BellClass::Psi => "psi",
        }
    }
}

impl fmt::Display for BellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(BellClass::Phi),
            "psi" => Ok(BellClass::Psi),
            _ => Err(Error::Malformed(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Malformed(s.to_string())),
        }
    }
}

/// Class, sign and weight of a Bell-family state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDescriptor {
    class: BellClass,
    sign: Sign,
    s0: f64,
}

impl BellDescriptor {
    pub const PHI_PLUS: BellDescriptor = Self::standard(BellClass::Phi, Sign::Plus);
    pub const PHI_MINUS: BellDescriptor = Self::standard(BellClass::Phi, Sign::Minus);
    pub const PSI_PLUS: BellDescriptor = Self::standard(BellClass::Psi, Sign::Plus);
    pub const PSI_MINUS: BellDescriptor = Self::standard(BellClass::Psi, Sign::Minus);

    /// The four standard Bell states in the order Φ+, Φ-, Ψ+, Ψ-.
    pub const STANDARD: [BellDescriptor; 4] = [
        Self::PHI_PLUS,
        Self::PHI_MINUS,
        Self::PSI_PLUS,
        Self::PSI_MINUS,
    ];

    pub fn new(class: BellClass, sign: Sign, s0: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&s0) {
            return Err(Error::S0OutOfRange(s0));
        }
        Ok(BellDescriptor { class, sign, s0 })
    }

    pub const fn standard(class: BellClass, sign: Sign) -> Self {
        BellDescriptor {
            class,
            sign,
            s0: STANDARD_S0,
        }
    }

    pub fn class(&self) -> BellClass {
        self.class
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    /// Same sign and weight, opposite class: the image under a flip of
    /// particle A, up to a global sign for the minus states.
    pub fn toggled(&self) -> BellDescriptor {
        BellDescriptor {
            class: self.class.toggled(),
            ..*self
        }
    }
}

impl fmt::Display for BellDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.class {
            BellClass::Phi => "Phi",
            BellClass::Psi => "Psi",
        };
        write!(f, "{name}{}", self.sign)?;
        if self.s0 != STANDARD_S0 {
            write!(f, "(s0={})", self.s0)?;
        }
        Ok(())
    }
}

/// Builds the Bell-family state for `d`.
pub fn bell_state(d: &BellDescriptor) -> TwoQubitState {
    let s0 = d.s0;
    let rest = (1.0 - s0 * s0).max(0.0).sqrt();
    let sign = d.sign.factor();
    let amps = match d.class {
        BellClass::Phi => [s0, 0.0, 0.0, sign * rest],
        BellClass::Psi => [0.0, rest, sign * s0, 0.0],
    };
    TwoQubitState::from_real(amps).expect("finite amplitudes")
}

/// `|g00 g11 - g01 g10|`: zero exactly for product states, 1/2 for the
/// standard Bell states.
pub fn separability_defect(s: &TwoQubitState) -> f64 {
    let g = s.amplitudes();
    (g[0] * g[3] - g[1] * g[2]).norm()
}

/// Splits a separable state into its two one-particle factors.
///
/// Returns `None` when the separability defect exceeds [`EPS_SEP`]. On
/// success `tensor(a, b)` reproduces `s`, phase included, up to rounding.
pub fn factorize(s: &TwoQubitState) -> Option<(SingleQubitState, SingleQubitState)> {
    if separability_defect(s) > EPS_SEP {
        return None;
    }
    let g = s.amplitudes();
    let rows = [[g[0], g[1]], [g[2], g[3]]];
    let row_norm = |r: &[Amplitude; 2]| (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
    let dominant = if row_norm(&rows[0]) >= row_norm(&rows[1]) {
        &rows[0]
    } else {
        &rows[1]
    };
    let b = SingleQubitState::from_amplitudes(dominant[0], dominant[1])
        .ok()?
        .normalize()
        .ok()?;
    let coeff = |r: &[Amplitude; 2]| b.amp0().conj() * r[0] + b.amp1().conj() * r[1];
    let a = SingleQubitState::from_amplitudes(coeff(&rows[0]), coeff(&rows[1]))
        .ok()?
        .normalize()
        .ok()?;
    Some((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateKind {
    /// `|00>, |01>, |10>, |11>` by index `2a + b`.
    ComputationalBasis(usize),
    Bell(BellDescriptor),
    /// Factors with their leading amplitude made real and positive.
    Product(SingleQubitState, SingleQubitState),
    General,
}

/// What a state is, plus the global phase that was factored out.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateClassification {
    pub kind: StateKind,
    /// Unit-modulus global phase; `None` for [`StateKind::General`].
    pub phase: Option<Amplitude>,
}

impl StateClassification {
    /// Rebuilds the classified state; `None` for general states.
    pub fn reconstruct(&self) -> Option<TwoQubitState> {
        let phase = self.phase?;
        let base = match self.kind {
            StateKind::ComputationalBasis(i) => TwoQubitState::basis(i),
            StateKind::Bell(d) => bell_state(&d),
            StateKind::Product(a, b) => tensor(&a, &b),
            StateKind::General => return None,
        };
        Some(base.scale(phase))
    }
}

impl fmt::Display for StateClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phase = match self.phase {
            Some(p) if (p - Amplitude::new(1.0, 0.0)).norm() <= EPS_CLASS => String::new(),
            Some(p) if (p + Amplitude::new(1.0, 0.0)).norm() <= EPS_CLASS => "-".to_string(),
            Some(p) => format!("({:.6}{:+.6}i)·", p.re, p.im),
            None => String::new(),
        };
        match self.kind {
            StateKind::ComputationalBasis(i) => write!(f, "{phase}|{}{}>", i >> 1, i & 1),
            StateKind::Bell(d) => write!(f, "{phase}{d}"),
            StateKind::Product(..) => write!(f, "{phase}product"),
            StateKind::General => f.write_str("entangled (general)"),
        }
    }
}

fn unit_phase(a: Amplitude) -> Amplitude {
    a / a.norm()
}

fn largest(amps: [Amplitude; 2]) -> Amplitude {
    if amps[0].norm() >= amps[1].norm() {
        amps[0]
    } else {
        amps[1]
    }
}

fn classify_bell(s: &TwoQubitState, support: &[usize]) -> Option<StateClassification> {
    let g = s.amplitudes();
    let (class, lead, other, s0) = match support {
        [0, 3] => (BellClass::Phi, g[0], g[3], g[0].norm()),
        [1, 2] => (BellClass::Psi, g[1], g[2], g[2].norm()),
        _ => return None,
    };
    let phase = unit_phase(lead);
    let relative = unit_phase(other) / phase;
    let sign = if (relative - 1.0).norm() <= EPS_CLASS {
        Sign::Plus
    } else if (relative + 1.0).norm() <= EPS_CLASS {
        Sign::Minus
    } else {
        return None;
    };
    let d = BellDescriptor::new(class, sign, s0.min(1.0)).ok()?;
    Some(StateClassification {
        kind: StateKind::Bell(d),
        phase: Some(phase),
    })
}

/// Classifies a normalized state, checking in order: computational basis,
/// Bell family (real relative sign only), product, general.
///
/// Bell-family endpoints `s0 ∈ {0, 1}` are basis states and classify as such.
pub fn classify(s: &TwoQubitState) -> StateClassification {
    let g = s.amplitudes();
    let support: Vec<usize> = (0..4).filter(|&i| g[i].norm() > EPS_ZERO).collect();

    if let [i] = support[..] {
        return StateClassification {
            kind: StateKind::ComputationalBasis(i),
            phase: Some(unit_phase(g[i])),
        };
    }
    if let Some(c) = classify_bell(s, &support) {
        return c;
    }
    if let Some((a, b)) = factorize(s) {
        let pa = unit_phase(largest(a.amplitudes()));
        let pb = unit_phase(largest(b.amplitudes()));
        return StateClassification {
            kind: StateKind::Product(a.scale(pa.conj()), b.scale(pb.conj())),
            phase: Some(pa * pb),
        };
    }
    StateClassification {
        kind: StateKind::General,
        phase: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply2, lift_a, SingleQubitOperator};
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn st(amps: [f64; 4]) -> TwoQubitState {
        TwoQubitState::from_real(amps).unwrap()
    }

    #[test]
    fn bell_state_examples() {
        assert!(bell_state(&BellDescriptor::PHI_PLUS).approx_eq(&st([H, 0.0, 0.0, H]), 1e-15));
        assert!(bell_state(&BellDescriptor::PSI_MINUS).approx_eq(&st([0.0, H, -H, 0.0]), 1e-15));
        let d = BellDescriptor::new(BellClass::Phi, Sign::Plus, 1.0).unwrap();
        assert_eq!(bell_state(&d), TwoQubitState::basis(0));
        let d = BellDescriptor::new(BellClass::Phi, Sign::Plus, 0.0).unwrap();
        assert_eq!(bell_state(&d), TwoQubitState::basis(3));
    }

    #[test]
    fn descriptor_rejects_out_of_range_s0() {
        for bad in [-0.1, 1.0000001, f64::NAN, f64::INFINITY] {
            assert!(BellDescriptor::new(BellClass::Psi, Sign::Plus, bad).is_err());
        }
    }

    #[test]
    fn generalized_states_are_normalized() {
        for k in 0..=20 {
            let s0 = k as f64 / 20.0;
            for class in [BellClass::Phi, BellClass::Psi] {
                let d = BellDescriptor::new(class, Sign::Minus, s0).unwrap();
                assert!((bell_state(&d).norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn defect_examples() {
        assert!((separability_defect(&bell_state(&BellDescriptor::PHI_PLUS)) - 0.5).abs() < 1e-15);
        let d = BellDescriptor::new(BellClass::Phi, Sign::Plus, 0.6).unwrap();
        assert!((separability_defect(&bell_state(&d)) - 0.48).abs() < 1e-15);
        let a = SingleQubitState::normalized_real(0.3, -0.9).unwrap();
        let b = SingleQubitState::normalized_real(1.0, 2.0).unwrap();
        assert!(separability_defect(&tensor(&a, &b)) < 1e-16);
    }

    #[test]
    fn factorize_examples() {
        let (a, b) = factorize(&TwoQubitState::basis(1)).unwrap();
        assert_eq!(a, SingleQubitState::ZERO);
        assert_eq!(b, SingleQubitState::ONE);

        assert!(factorize(&bell_state(&BellDescriptor::PHI_PLUS)).is_none());

        let s = st([0.0, H, 0.0, H]);
        let (a, b) = factorize(&s).unwrap();
        let uniform = SingleQubitState::normalized_real(1.0, 1.0).unwrap();
        assert!(a.approx_eq(&uniform, 1e-15));
        assert!(b.approx_eq(&SingleQubitState::ONE, 1e-15));
        assert!(tensor(&a, &b).approx_eq(&s, 1e-15));
    }

    #[test]
    fn factorize_keeps_relative_phase_between_rows() {
        let i = Amplitude::new(0.0, 1.0);
        let a = SingleQubitState::new(Amplitude::new(0.6, 0.0), i * 0.8).unwrap();
        let b = SingleQubitState::normalized_real(1.0, -1.0).unwrap();
        let s = tensor(&a, &b);
        let (fa, fb) = factorize(&s).unwrap();
        assert!(tensor(&fa, &fb).approx_eq(&s, 1e-14));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&st([H, 0.0, 0.0, -H]));
        assert_eq!(c.kind, StateKind::Bell(BellDescriptor::PHI_MINUS));
        assert_eq!(c.phase, Some(Amplitude::new(1.0, 0.0)));

        let c = classify(&TwoQubitState::basis(2));
        assert_eq!(c.kind, StateKind::ComputationalBasis(2));

        let s = TwoQubitState::new([
            Amplitude::new(0.6, 0.0),
            Amplitude::new(0.0, 0.0),
            Amplitude::new(0.0, 0.0),
            Amplitude::new(0.0, 0.8),
        ])
        .unwrap();
        let c = classify(&s);
        assert_eq!(c.kind, StateKind::General);
        assert_eq!(c.phase, None);
    }

    #[test]
    fn classify_extracts_global_minus_sign() {
        let flipped = apply2(
            &lift_a(&SingleQubitOperator::flip()),
            &bell_state(&BellDescriptor::PHI_MINUS),
        );
        let c = classify(&flipped);
        assert_eq!(c.kind, StateKind::Bell(BellDescriptor::PSI_MINUS));
        assert_eq!(c.phase, Some(Amplitude::new(-1.0, 0.0)));
        assert_eq!(c.to_string(), "-Psi-");
    }

    #[test]
    fn classify_endpoints_as_basis() {
        for (sign, s0, idx) in [(Sign::Plus, 1.0, 0), (Sign::Minus, 1.0, 0), (Sign::Plus, 0.0, 3)] {
            let d = BellDescriptor::new(BellClass::Phi, sign, s0).unwrap();
            assert_eq!(classify(&bell_state(&d)).kind, StateKind::ComputationalBasis(idx));
        }
    }

    #[test]
    fn classify_product_and_reconstruct() {
        let a = SingleQubitState::normalized_real(0.3, -0.9).unwrap();
        let b = SingleQubitState::new(Amplitude::new(0.0, 0.6), Amplitude::new(0.8, 0.0)).unwrap();
        let s = tensor(&a, &b).scale(Amplitude::from_polar(1.0, 0.7));
        let c = classify(&s);
        assert!(matches!(c.kind, StateKind::Product(..)));
        assert!(c.reconstruct().unwrap().approx_eq(&s, EPS_CLASS));
    }

    #[test]
    fn display_forms() {
        assert_eq!(BellDescriptor::PHI_PLUS.to_string(), "Phi+");
        let d = BellDescriptor::new(BellClass::Psi, Sign::Minus, 0.6).unwrap();
        assert_eq!(d.to_string(), "Psi-(s0=0.6)");
        assert_eq!(classify(&TwoQubitState::basis(1)).to_string(), "|01>");
    }
}
