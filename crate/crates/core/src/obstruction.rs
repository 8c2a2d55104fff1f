//! Expectation values of X on qubit 0 for T-depth-1 circuits, computed by
//! pushing the observable backwards through the circuit as a sum of Pauli
//! strings, and the irrationality test built on them.
//!
//! For a T-depth-1 circuit U = post · T-layer · pre (pre applied first),
//! U†XU is obtained by conjugating X through `post` (last gate first), then
//! through the T-layer, then through `pre`. Each X or Y letter hitting a T
//! gate splits into two terms, and every term carries the same factor
//! (1/√2)^k. So both ⟨0|U†XU|0⟩ and ⟨+|U†XU|+⟩ are integers times that
//! factor, and their ratio is rational whenever defined. A circuit whose
//! ratio is irrational has no T-depth-1 Clifford+T implementation.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::ring::{ratio_is_rational, Dyadic, RealValue, RingError, RingScalar};
use crate::sim::{ExactMatrix, ExactState, SimConfig, SimError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("gate `{gate}` at position {position} breaks the Clifford, T-stage, Clifford shape")]
    NotTDepthOneShape { gate: Gate, position: usize },
    #[error("gate `{0}` is not a Clifford gate")]
    NotClifford(Gate),
    #[error("expected one main qubit, found {0}")]
    NotSingleQubit(usize),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("expectation value is not real: {0}")]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn matrix(self) -> ExactMatrix {
        let o = RingScalar::zero;
        let l = RingScalar::one;
        let i = RingScalar::i;
        match self {
            Pauli::I => ExactMatrix::identity(2),
            Pauli::X => ExactMatrix::from_rows(&[&[o(), l()], &[l(), o()]]),
            Pauli::Y => ExactMatrix::from_rows(&[&[o(), -i()], &[i(), o()]]),
            Pauli::Z => ExactMatrix::from_diagonal(vec![l(), -l()]),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(c)
    }
}

/// ±(P₀ ⊗ P₁ ⊗ …), one letter per qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub negative: bool,
    pub letters: Vec<Pauli>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            negative: false,
            letters: vec![Pauli::I; n],
        }
    }

    /// The single letter `p` on qubit `q` of `n`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.letters[q] = p;
        s
    }

    pub fn new(negative: bool, letters: Vec<Pauli>) -> Self {
        PauliString { negative, letters }
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::identity(1);
        for p in &self.letters {
            m = m.kron(&p.matrix());
        }
        if self.negative {
            m = m.scale(&-RingScalar::one());
        }
        m
    }

    fn x(&self, q: usize) -> bool {
        self.letters[q].bits().0
    }

    fn z(&self, q: usize) -> bool {
        self.letters[q].bits().1
    }

    fn set(&mut self, q: usize, x: bool, z: bool) {
        self.letters[q] = Pauli::from_bits(x, z);
    }

    // Tableau rules computing g P g†.
    fn fwd_h(&mut self, q: usize) {
        let (x, z) = (self.x(q), self.z(q));
        self.negative ^= x && z;
        self.set(q, z, x);
    }

    fn fwd_s(&mut self, q: usize) {
        let (x, z) = (self.x(q), self.z(q));
        self.negative ^= x && z;
        self.set(q, x, z ^ x);
    }

    fn fwd_cx(&mut self, a: usize, b: usize) {
        let (xa, za, xb, zb) = (self.x(a), self.z(a), self.x(b), self.z(b));
        self.negative ^= xa && zb && !(xb ^ za);
        self.set(b, xb ^ xa, zb);
        self.set(a, xa, za ^ zb);
    }

    fn flip_if_anticommutes(&mut self, q: usize, p: Pauli) {
        let l = self.letters[q];
        if l != Pauli::I && l != p {
            self.negative ^= true;
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for p in &self.letters {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// (1/√2)^k · Σ terms. Duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliSum {
    pub k: u32,
    pub terms: Vec<PauliString>,
}

impl PauliSum {
    pub fn single(p: PauliString) -> Self {
        PauliSum {
            k: 0,
            terms: vec![p],
        }
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let mut it = self.terms.iter().map(PauliString::to_matrix);
        let first = it.next().expect("sums are nonempty");
        it.fold(first, |acc, m| acc.add(&m))
            .scale(&RingScalar::inv_sqrt2_pow(self.k))
    }
}

/// g† p g for a Clifford gate g.
pub fn conjugate_clifford(p: &PauliString, g: &Gate) -> Result<PauliString, ObstructionError> {
    use GateKind::*;
    let q = g.qubits();
    let mut out = p.clone();
    match g.kind() {
        X => out.flip_if_anticommutes(q[0], Pauli::X),
        Y => out.flip_if_anticommutes(q[0], Pauli::Y),
        Z => out.flip_if_anticommutes(q[0], Pauli::Z),
        H => out.fwd_h(q[0]),
        // S† P S = S³ P S⁻³
        S => {
            for _ in 0..3 {
                out.fwd_s(q[0]);
            }
        }
        Sdg => out.fwd_s(q[0]),
        Cx => out.fwd_cx(q[0], q[1]),
        Cz => {
            out.fwd_h(q[1]);
            out.fwd_cx(q[0], q[1]);
            out.fwd_h(q[1]);
        }
        Swap => out.letters.swap(q[0], q[1]),
        _ => return Err(ObstructionError::NotClifford(g.clone())),
    }
    Ok(out)
}

/// Conjugates every term by a T-stage: T†XT = (X−Y)/√2, T†YT = (X+Y)/√2,
/// TXT† = (X+Y)/√2, TYT† = (Y−X)/√2; I and Z are fixed.
///
/// Panics if the terms disagree on whether a layer qubit carries X or Y,
/// since they could then not share one factor.
pub fn conjugate_tlayer(sum: &PauliSum, layer: &[(usize, GateKind)]) -> PauliSum {
    let mut k = sum.k;
    let mut terms = sum.terms.clone();
    for &(q, kind) in layer {
        let dagger = kind == GateKind::Tdg;
        // Terms only differ on layer qubits already expanded, so they agree on q.
        let hits = terms
            .iter()
            .filter(|t| matches!(t.letters[q], Pauli::X | Pauli::Y))
            .count();
        if hits == 0 {
            continue;
        }
        assert_eq!(
            hits,
            terms.len(),
            "terms differ in X/Y support on a T qubit"
        );
        k += 1;
        let mut next = Vec::with_capacity(terms.len() * 2);
        for t in terms {
            // (a, b): coefficients of X and Y.
            let (cx, cy) = match (t.letters[q], dagger) {
                (Pauli::X, false) => (1, -1),
                (Pauli::Y, false) => (1, 1),
                (Pauli::X, true) => (1, 1),
                (Pauli::Y, true) => (-1, 1),
                _ => unreachable!(),
            };
            for (letter, c) in [(Pauli::X, cx), (Pauli::Y, cy)] {
                let mut n = t.clone();
                n.letters[q] = letter;
                n.negative ^= c < 0;
                next.push(n);
            }
        }
        terms = next;
    }
    PauliSum { k, terms }
}

/// A circuit cut into Clifford gates, one T-stage, and Clifford gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCircuit {
    /// Applied first.
    pub pre_clifford: Circuit,
    pub t_layer: Vec<(usize, GateKind)>,
    /// Applied last.
    pub post_clifford: Circuit,
}

impl SplitCircuit {
    pub fn width(&self) -> usize {
        self.pre_clifford.width()
    }

    pub fn to_circuit(&self) -> Circuit {
        let mut c = self.pre_clifford.clone();
        for &(q, k) in &self.t_layer {
            c.push(k, &[q]).expect("valid layer");
        }
        c.append(&self.post_clifford).expect("same width");
        c
    }
}

/// Splits a gate list of the literal shape Clifford*, T-stage, Clifford*.
pub fn split_tdepth1(c: &Circuit) -> Result<SplitCircuit, ObstructionError> {
    let mut pre = Circuit::new(c.n_main(), c.n_anc());
    let mut post = Circuit::new(c.n_main(), c.n_anc());
    let mut layer: Vec<(usize, GateKind)> = Vec::new();
    // 0: before the stage, 1: inside it, 2: after it.
    let mut phase = 0;
    for (position, g) in c.gates().iter().enumerate() {
        let bad = || ObstructionError::NotTDepthOneShape {
            gate: g.clone(),
            position,
        };
        if g.kind().is_t() {
            let q = g.qubits()[0];
            if phase == 2 || layer.iter().any(|&(l, _)| l == q) {
                return Err(bad());
            }
            phase = 1;
            layer.push((q, g.kind()));
        } else if g.kind().is_clifford() {
            let target = if phase == 0 { &mut pre } else { &mut post };
            phase = if phase == 0 { 0 } else { 2 };
            target.push_gate(g.clone()).expect("same width");
        } else {
            return Err(bad());
        }
    }
    Ok(SplitCircuit {
        pre_clifford: pre,
        t_layer: layer,
        post_clifford: post,
    })
}

/// Input state of qubit 0; all other qubits start in |0⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phi {
    Zero,
    Plus,
}

/// U†X₀U for a split circuit U.
pub fn conjugated_observable(s: &SplitCircuit) -> Result<PauliSum, ObstructionError> {
    let mut p = PauliString::single(s.width(), 0, Pauli::X);
    for g in s.post_clifford.gates().iter().rev() {
        p = conjugate_clifford(&p, g)?;
    }
    let mut sum = conjugate_tlayer(&PauliSum::single(p), &s.t_layer);
    for g in s.pre_clifford.gates().iter().rev() {
        sum.terms = sum
            .terms
            .iter()
            .map(|t| conjugate_clifford(t, g))
            .collect::<Result<_, _>>()?;
    }
    Ok(sum)
}

fn factor(p: Pauli, phi: Phi) -> i64 {
    match (phi, p) {
        (Phi::Zero, Pauli::I | Pauli::Z) | (Phi::Plus, Pauli::I | Pauli::X) => 1,
        _ => 0,
    }
}

/// (1/√2)^k · n as an exact real.
fn scaled(n: i64, k: u32) -> RealValue {
    let n = BigInt::from(n);
    if k.is_multiple_of(2) {
        RealValue::new(Dyadic::new(n, k / 2), Dyadic::from_int(0))
    } else {
        RealValue::new(Dyadic::from_int(0), Dyadic::new(n, k / 2 + 1))
    }
}

/// ⟨φ,0…0| U†X₀U |φ,0…0⟩ summed over Pauli paths.
pub fn expectation_pauli_path(s: &SplitCircuit, phi: Phi) -> Result<RealValue, ObstructionError> {
    let sum = conjugated_observable(s)?;
    let total: i64 = sum
        .terms
        .iter()
        .map(|t| {
            let rest: i64 = t.letters[1..]
                .iter()
                .map(|&p| factor(p, Phi::Zero))
                .product();
            t.sign() as i64 * factor(t.letters[0], phi) * rest
        })
        .sum();
    Ok(scaled(total, sum.k))
}

/// ⟨ψ|X₀|ψ⟩ with |ψ⟩ = U|φ,0…0⟩, by state simulation.
pub fn expectation_direct(
    c: &Circuit,
    phi: Phi,
    cfg: &SimConfig,
) -> Result<RealValue, ObstructionError> {
    let n = c.width();
    if n > cfg.max_state_qubits {
        return Err(SimError::TooWide {
            what: "state",
            width: n,
            cap: cfg.max_state_qubits,
        }
        .into());
    }
    let mut state = ExactState::basis(n, 0);
    if phi == Phi::Plus {
        state.apply_gate(&Gate::new(GateKind::H, &[0]).expect("valid"));
    }
    state.apply_circuit(c)?;
    let bit0 = 1usize << (n - 1);
    let e: RingScalar = state
        .nonzero()
        .map(|(x, a)| &state.amplitude(x ^ bit0).conj() * a)
        .sum();
    Ok(e.to_real()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// The ratio is irrational: no T-depth-1 implementation exists.
    NoTdepth1Possible,
    /// The ratio is rational; the test says nothing.
    Inconclusive,
    /// ⟨+|U†XU|+⟩ = 0, so there is no ratio.
    InapplicableEPlusZero,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NoTdepth1Possible => "no-tdepth1-possible",
            Conclusion::Inconclusive => "inconclusive",
            Conclusion::InapplicableEPlusZero => "inapplicable-e-plus-zero",
        })
    }
}

fn as_string<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(serialize_with = "as_string")]
    pub e_zero: RealValue,
    #[serde(serialize_with = "as_string")]
    pub e_plus: RealValue,
    /// `None` when `e_plus` is zero.
    pub ratio_rational: Option<bool>,
    pub conclusion: Conclusion,
}

/// Runs the irrationality test on a circuit with one main qubit.
pub fn obstruction_verdict(c: &Circuit, cfg: &SimConfig) -> Result<Verdict, ObstructionError> {
    if c.n_main() != 1 {
        return Err(ObstructionError::NotSingleQubit(c.n_main()));
    }
    let e_zero = expectation_direct(c, Phi::Zero, cfg)?;
    let e_plus = expectation_direct(c, Phi::Plus, cfg)?;
    let (ratio_rational, conclusion) = if e_plus.is_zero() {
        (None, Conclusion::InapplicableEPlusZero)
    } else {
        let r = ratio_is_rational(&e_zero, &e_plus)?;
        let c = if r {
            Conclusion::Inconclusive
        } else {
            Conclusion::NoTdepth1Possible
        };
        (Some(r), c)
    };
    Ok(Verdict {
        e_zero,
        e_plus,
        ratio_rational,
        conclusion,
    })
}

/// T · H · T on one qubit.
pub fn tht() -> Circuit {
    let mut c = Circuit::new(1, 0);
    for k in [GateKind::T, GateKind::H, GateKind::T] {
        c.push(k, &[0]).expect("valid");
    }
    c
}
