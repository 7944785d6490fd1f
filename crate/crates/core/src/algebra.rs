//! Dense complex linear algebra on one- and two-qubit spaces.
//!
//! Two-qubit vectors and matrices use the basis order `|00>, |01>, |10>, |11>`,
//! i.e. index `2 * a + b` where `a` is the value of particle A and `b` the value
//! of particle B. Every parser, printer and matrix in the crate relies on this.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, EPS_NORM, EPS_OP, EPS_ZERO};

/// A complex probability amplitude or matrix entry.
pub type Amplitude = Complex64;

const ZERO: Amplitude = Amplitude::new(0.0, 0.0);
const ONE: Amplitude = Amplitude::new(1.0, 0.0);

fn c(re: f64) -> Amplitude {
    Amplitude::new(re, 0.0)
}

fn all_finite(amps: &[Amplitude]) -> bool {
    amps.iter().all(|a| a.re.is_finite() && a.im.is_finite())
}

/// One of the two particles of a two-qubit system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Particle {
    A,
    B,
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Particle::A => "A",
            Particle::B => "B",
        })
    }
}

impl FromStr for Particle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Particle::A),
            "B" => Ok(Particle::B),
            _ => Err(Error::UnknownParticle(s.to_string())),
        }
    }
}

/// The value of a single particle in the computational basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn index(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Bit {
        if i == 0 {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn flipped(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Formats a real with 17 significant digits, the canonical text form used in
/// golden files and circuit sources.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_human(a: Amplitude) -> String {
    format!("{:.6}{:+.6}i", a.re, a.im)
}

/// State of a single two-level particle, `amp0 |0> + amp1 |1>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitState {
    amps: [Amplitude; 2],
}

impl SingleQubitState {
    pub const ZERO: SingleQubitState = SingleQubitState { amps: [ONE, ZERO] };
    pub const ONE: SingleQubitState = SingleQubitState { amps: [ZERO, ONE] };

    /// Builds a normalized state, rejecting non-finite or non-normalized input.
    pub fn new(amp0: Amplitude, amp1: Amplitude) -> Result<Self, Error> {
        let s = Self::from_amplitudes(amp0, amp1)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    /// Builds a state without a normalization check.
    pub fn from_amplitudes(amp0: Amplitude, amp1: Amplitude) -> Result<Self, Error> {
        if !all_finite(&[amp0, amp1]) {
            return Err(Error::NonFinite);
        }
        Ok(SingleQubitState { amps: [amp0, amp1] })
    }

    /// Real-coefficient state, normalized to unit length.
    pub fn normalized_real(amp0: f64, amp1: f64) -> Result<Self, Error> {
        Self::from_amplitudes(c(amp0), c(amp1))?.normalize()
    }

    pub fn basis(bit: Bit) -> Self {
        match bit {
            Bit::Zero => Self::ZERO,
            Bit::One => Self::ONE,
        }
    }

    pub fn amp0(&self) -> Amplitude {
        self.amps[0]
    }

    pub fn amp1(&self) -> Amplitude {
        self.amps[1]
    }

    pub fn amplitudes(&self) -> [Amplitude; 2] {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n <= EPS_ZERO {
            return Err(Error::ZeroNorm);
        }
        Ok(SingleQubitState {
            amps: [self.amps[0] / n, self.amps[1] / n],
        })
    }

    pub fn inner(&self, other: &SingleQubitState) -> Amplitude {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    pub fn scale(&self, factor: Amplitude) -> Self {
        SingleQubitState {
            amps: [self.amps[0] * factor, self.amps[1] * factor],
        }
    }

    pub fn approx_eq(&self, other: &SingleQubitState, eps: f64) -> bool {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .all(|(x, y)| (x - y).norm() <= eps)
    }
}

/// State of a two-particle system, `g00 |00> + g01 |01> + g10 |10> + g11 |11>`.
///
/// The type admits unnormalized vectors so that raw projections and raw
/// circuit inputs can be represented; [`TwoQubitState::is_normalized`] tells
/// them apart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState {
    amps: [Amplitude; 4],
}

impl TwoQubitState {
    /// Builds a normalized state, rejecting non-finite or non-normalized input.
    pub fn new(amps: [Amplitude; 4]) -> Result<Self, Error> {
        let s = Self::from_amplitudes(amps)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    /// Builds a vector without a normalization check.
    pub fn from_amplitudes(amps: [Amplitude; 4]) -> Result<Self, Error> {
        if !all_finite(&amps) {
            return Err(Error::NonFinite);
        }
        Ok(TwoQubitState { amps })
    }

    /// Real-coefficient vector, without normalization.
    pub fn from_real(amps: [f64; 4]) -> Result<Self, Error> {
        Self::from_amplitudes(amps.map(c))
    }

    /// Computational basis state `|ab>` with `index = 2a + b`.
    ///
    /// # Panics
    ///
    /// Panics if `index > 3`.
    pub fn basis(index: usize) -> Self {
        assert!(index < 4, "basis index {index} out of range");
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        TwoQubitState { amps }
    }

    pub fn basis_bits(a: Bit, b: Bit) -> Self {
        Self::basis(2 * a.index() + b.index())
    }

    pub fn amplitudes(&self) -> [Amplitude; 4] {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= EPS_NORM
    }

    pub fn normalize(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n <= EPS_ZERO {
            return Err(Error::ZeroNorm);
        }
        Ok(TwoQubitState {
            amps: self.amps.map(|a| a / n),
        })
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &TwoQubitState) -> Amplitude {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    pub fn scale(&self, factor: Amplitude) -> Self {
        TwoQubitState {
            amps: self.amps.map(|a| a * factor),
        }
    }

    /// Largest component-wise distance to `other`.
    pub fn max_distance(&self, other: &TwoQubitState) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Component-wise equality within `eps`, phase included.
    pub fn approx_eq(&self, other: &TwoQubitState, eps: f64) -> bool {
        self.max_distance(other) <= eps
    }

    /// Equality up to a global phase: `|<self|other>| = 1` within `eps`.
    ///
    /// Only meaningful for normalized states.
    pub fn eq_up_to_phase(&self, other: &TwoQubitState, eps: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= eps
    }

    /// Canonical golden-file rendering: `re im` for `g00 g01 g10 g11`, 17
    /// significant digits each, single spaces.
    pub fn to_canonical_string(&self) -> String {
        self.amps
            .iter()
            .flat_map(|a| [format_real(a.re), format_real(a.im)])
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`TwoQubitState::to_canonical_string`].
    pub fn from_canonical_str(s: &str) -> Result<Self, Error> {
        let reals = s
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Malformed(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if reals.len() != 8 {
            return Err(Error::Malformed(s.to_string()));
        }
        let mut amps = [ZERO; 4];
        for (i, a) in amps.iter_mut().enumerate() {
            *a = Amplitude::new(reals[2 * i], reals[2 * i + 1]);
        }
        Self::from_amplitudes(amps)
    }
}

/// Human-readable form with six decimals per part, e.g. `0.707107+0.000000i`.
impl fmt::Display for TwoQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.amps.iter().map(|a| format_human(*a)).collect();
        f.write_str(&parts.join("  "))
    }
}

/// Row-major 2x2 complex matrix acting on one particle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitOperator {
    m: [[Amplitude; 2]; 2],
}

impl SingleQubitOperator {
    pub fn new(m: [[Amplitude; 2]; 2]) -> Result<Self, Error> {
        if !all_finite(&[m[0][0], m[0][1], m[1][0], m[1][1]]) {
            return Err(Error::NonFinite);
        }
        Ok(SingleQubitOperator { m })
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Result<Self, Error> {
        Self::new(m.map(|row| row.map(c)))
    }

    pub fn identity() -> Self {
        SingleQubitOperator {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// The flip `|0><1| + |1><0|`.
    pub fn flip() -> Self {
        SingleQubitOperator {
            m: [[ZERO, ONE], [ONE, ZERO]],
        }
    }

    /// `diag(1, +1)`; equal to the identity but kept as a named operator.
    pub fn t_plus() -> Self {
        Self::identity()
    }

    /// `diag(1, -1)`.
    pub fn t_minus() -> Self {
        SingleQubitOperator {
            m: [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// `|v><v|` for a single particle.
    pub fn projector(value: Bit) -> Self {
        let mut m = [[ZERO; 2]; 2];
        m[value.index()][value.index()] = ONE;
        SingleQubitOperator { m }
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.m[row][col]
    }

    pub fn entries(&self) -> [[Amplitude; 2]; 2] {
        self.m
    }

    pub fn matmul(&self, rhs: &SingleQubitOperator) -> SingleQubitOperator {
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..2).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        SingleQubitOperator { m }
    }

    pub fn adjoint(&self) -> SingleQubitOperator {
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i].conj();
            }
        }
        SingleQubitOperator { m }
    }

    pub fn max_distance(&self, other: &SingleQubitOperator) -> f64 {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (self.m[i][j] - other.m[i][j]).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &SingleQubitOperator, eps: f64) -> bool {
        self.max_distance(other) <= eps
    }

    /// `T^dagger T = I` within [`EPS_OP`].
    pub fn is_unitary(&self) -> bool {
        self.adjoint()
            .matmul(self)
            .approx_eq(&Self::identity(), EPS_OP)
    }
}

/// Row-major 4x4 complex matrix acting on the two-particle space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitOperator {
    m: [[Amplitude; 4]; 4],
}

impl TwoQubitOperator {
    pub fn new(m: [[Amplitude; 4]; 4]) -> Result<Self, Error> {
        if !m.iter().all(|row| all_finite(row)) {
            return Err(Error::NonFinite);
        }
        Ok(TwoQubitOperator { m })
    }

    pub fn from_real(m: [[f64; 4]; 4]) -> Result<Self, Error> {
        Self::new(m.map(|row| row.map(c)))
    }

    pub fn identity() -> Self {
        Self::diagonal([1.0; 4])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, x) in d.iter().enumerate() {
            m[i][i] = c(*x);
        }
        TwoQubitOperator { m }
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.m[row][col]
    }

    pub fn entries(&self) -> [[Amplitude; 4]; 4] {
        self.m
    }

    pub fn adjoint(&self) -> TwoQubitOperator {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i].conj();
            }
        }
        TwoQubitOperator { m }
    }

    pub fn add(&self, rhs: &TwoQubitOperator) -> TwoQubitOperator {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e += rhs.m[i][j];
            }
        }
        TwoQubitOperator { m }
    }

    pub fn max_distance(&self, other: &TwoQubitOperator) -> f64 {
        (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (self.m[i][j] - other.m[i][j]).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &TwoQubitOperator, eps: f64) -> bool {
        self.max_distance(other) <= eps
    }

    pub fn is_unitary(&self) -> bool {
        compose(&self.adjoint(), self).approx_eq(&Self::identity(), EPS_OP)
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint().approx_eq(self, EPS_OP)
    }

    /// `P^2 = P` and `P^dagger = P`, within [`EPS_OP`].
    pub fn is_projector(&self) -> bool {
        self.is_hermitian() && compose(self, self).approx_eq(self, EPS_OP)
    }
}

/// The single-particle operators that have names in circuit programs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedOperator {
    Identity,
    Flip,
    TPlus,
    TMinus,
}

impl NamedOperator {
    pub const ALL: [NamedOperator; 4] = [
        NamedOperator::Identity,
        NamedOperator::Flip,
        NamedOperator::TPlus,
        NamedOperator::TMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedOperator::Identity => "identity",
            NamedOperator::Flip => "flip",
            NamedOperator::TPlus => "t_plus",
            NamedOperator::TMinus => "t_minus",
        }
    }

    pub fn matrix(self) -> SingleQubitOperator {
        match self {
            NamedOperator::Identity => SingleQubitOperator::identity(),
            NamedOperator::Flip => SingleQubitOperator::flip(),
            NamedOperator::TPlus => SingleQubitOperator::t_plus(),
            NamedOperator::TMinus => SingleQubitOperator::t_minus(),
        }
    }
}

impl fmt::Display for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedOperator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

/// Looks up a named single-particle operator: `identity`, `flip`, `t_plus`
/// or `t_minus`.
pub fn named_operator(name: &str) -> Result<SingleQubitOperator, Error> {
    name.parse::<NamedOperator>().map(NamedOperator::matrix)
}

/// `|a> (x) |b>`, with A as the first factor.
pub fn tensor(a: &SingleQubitState, b: &SingleQubitState) -> TwoQubitState {
    let mut amps = [ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            amps[2 * i + j] = a.amps[i] * b.amps[j];
        }
    }
    TwoQubitState { amps }
}

pub fn apply1(op: &SingleQubitOperator, s: &SingleQubitState) -> SingleQubitState {
    let m = &op.m;
    SingleQubitState {
        amps: [
            m[0][0] * s.amps[0] + m[0][1] * s.amps[1],
            m[1][0] * s.amps[0] + m[1][1] * s.amps[1],
        ],
    }
}

pub fn apply2(op: &TwoQubitOperator, s: &TwoQubitState) -> TwoQubitState {
    let mut amps = [ZERO; 4];
    for (i, out) in amps.iter_mut().enumerate() {
        *out = (0..4).map(|j| op.m[i][j] * s.amps[j]).sum();
    }
    TwoQubitState { amps }
}

/// The two-particle operator acting as `op` on particle A and as the identity
/// on particle B: entry `(2i + k, 2j + k) = op(i, j)`.
pub fn lift_a(op: &SingleQubitOperator) -> TwoQubitOperator {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                m[2 * i + k][2 * j + k] = op.m[i][j];
            }
        }
    }
    TwoQubitOperator { m }
}

/// The two-particle operator acting as `op` on particle B: two copies of `op`
/// on the block diagonal.
pub fn lift_b(op: &SingleQubitOperator) -> TwoQubitOperator {
    let mut m = [[ZERO; 4]; 4];
    for block in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                m[2 * block + i][2 * block + j] = op.m[i][j];
            }
        }
    }
    TwoQubitOperator { m }
}

pub fn lift(op: &SingleQubitOperator, particle: Particle) -> TwoQubitOperator {
    match particle {
        Particle::A => lift_a(op),
        Particle::B => lift_b(op),
    }
}

/// Matrix product `f * g`: applying the result equals applying `g`, then `f`.
pub fn compose(f: &TwoQubitOperator, g: &TwoQubitOperator) -> TwoQubitOperator {
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = (0..4).map(|k| f.m[i][k] * g.m[k][j]).sum();
        }
    }
    TwoQubitOperator { m }
}

/// The Bell operator, mapping the computational basis onto the Bell basis:
///
/// ```text
///            | 1  0  0  1 |
/// 1/sqrt(2)  | 0  1  1  0 |
///            | 0  1 -1  0 |
///            | 1  0  0 -1 |
/// ```
///
/// It is real, symmetric and its own inverse.
pub fn bell_operator() -> TwoQubitOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    TwoQubitOperator::from_real([
        [h, 0.0, 0.0, h],
        [0.0, h, h, 0.0],
        [0.0, h, -h, 0.0],
        [h, 0.0, 0.0, -h],
    ])
    .expect("finite constants")
}

/// Projector onto `value` for one particle, identity on the other.
pub fn projector(particle: Particle, value: Bit) -> TwoQubitOperator {
    lift(&SingleQubitOperator::projector(value), particle)
}

pub fn inner(s: &TwoQubitState, t: &TwoQubitState) -> Amplitude {
    s.inner(t)
}

pub fn norm(s: &TwoQubitState) -> f64 {
    s.norm()
}

pub fn normalize(s: &TwoQubitState) -> Result<TwoQubitState, Error> {
    s.normalize()
}
