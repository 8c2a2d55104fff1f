//! Exact simulation over [`RingScalar`].
//!
//! Qubit 0 is the most significant bit of a basis index, so basis state
//! `|q0 q1 … q(n-1)⟩` has index `q0·2^(n-1) + … + q(n-1)`. Ancillas sit after
//! the main wires and therefore occupy the low-order bits.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::ring::RingScalar;

pub const DEFAULT_MAX_STATE_QUBITS: usize = 16;
pub const DEFAULT_MAX_UNITARY_QUBITS: usize = 10;
/// Environment variable that overrides both width caps.
pub const MAX_QUBITS_ENV: &str = "TDO_MAX_QUBITS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("state has {state} qubits but circuit has width {circuit}")]
    WidthMismatch { state: usize, circuit: usize },
    #[error("{what} on {width} qubits exceeds the cap of {cap}")]
    TooWide {
        what: &'static str,
        width: usize,
        cap: usize,
    },
    #[error("ancillas not restored to |0> for main-register basis input {input:#b} ({input})")]
    AncillaContractViolated { input: usize },
    #[error("circuits act on {left} and {right} main qubits")]
    MainWidthMismatch { left: usize, right: usize },
}

/// Width limits for simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    /// Largest total width (main + ancilla) for state simulation.
    pub max_state_qubits: usize,
    /// Largest width for which a full unitary is materialized.
    pub max_unitary_qubits: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            max_state_qubits: DEFAULT_MAX_STATE_QUBITS,
            max_unitary_qubits: DEFAULT_MAX_UNITARY_QUBITS,
        }
    }
}

impl SimConfig {
    /// Defaults, with both caps replaced by `TDO_MAX_QUBITS` when it is set
    /// to a valid number.
    pub fn from_env() -> Self {
        let mut cfg = SimConfig::default();
        if let Some(n) = std::env::var(MAX_QUBITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            cfg.max_state_qubits = n;
            cfg.max_unitary_qubits = n;
        }
        cfg
    }

    fn check_state(&self, width: usize) -> Result<(), SimError> {
        if width > self.max_state_qubits {
            return Err(SimError::TooWide {
                what: "state simulation",
                width,
                cap: self.max_state_qubits,
            });
        }
        Ok(())
    }

    fn check_unitary(&self, width: usize) -> Result<(), SimError> {
        if width > self.max_unitary_qubits {
            return Err(SimError::TooWide {
                what: "unitary extraction",
                width,
                cap: self.max_unitary_qubits,
            });
        }
        Ok(())
    }
}

/// Dense square matrix with exact entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<RingScalar>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![RingScalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, RingScalar::one());
        }
        m
    }

    pub fn from_diagonal(diag: Vec<RingScalar>) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a square matrix from its rows.
    pub fn from_rows(rows: &[&[RingScalar]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &RingScalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: RingScalar) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim);
        ExactMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &RingScalar) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let n = self.dim * rhs.dim;
        let mut out = Self::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.dim {
                    for l in 0..rhs.dim {
                        out.set(i * rhs.dim + k, j * rhs.dim + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()) == Self::identity(self.dim)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<RingScalar> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// True iff every column and every row holds exactly one nonzero entry,
/// i.e. the matrix is a permutation times a diagonal.
pub fn is_almost_classical(m: &ExactMatrix) -> bool {
    let n = m.dim();
    let mut row_hits = vec![0usize; n];
    for c in 0..n {
        let mut hits = 0;
        for (r, rh) in row_hits.iter_mut().enumerate() {
            if !m.get(r, c).is_zero() {
                hits += 1;
                *rh += 1;
            }
        }
        if hits != 1 {
            return false;
        }
    }
    row_hits.iter().all(|&h| h == 1)
}

/// The defining matrix of each gate kind, written out entry by entry.
/// Controls are the leading (more significant) qubits.
pub fn gate_matrix(kind: GateKind) -> ExactMatrix {
    use GateKind::*;
    let z = RingScalar::zero;
    let o = RingScalar::one;
    let w = RingScalar::omega_pow;
    let h = RingScalar::inv_sqrt2;
    let diag = |d: Vec<RingScalar>| ExactMatrix::from_diagonal(d);
    match kind {
        X => ExactMatrix::from_rows(&[&[z(), o()], &[o(), z()]]),
        Y => ExactMatrix::from_rows(&[&[z(), -RingScalar::i()], &[RingScalar::i(), z()]]),
        Z => diag(vec![o(), w(4)]),
        H => ExactMatrix::from_rows(&[&[h(), h()], &[h(), -h()]]),
        S => diag(vec![o(), w(2)]),
        Sdg => diag(vec![o(), w(6)]),
        T => diag(vec![o(), w(1)]),
        Tdg => diag(vec![o(), w(7)]),
        Cx => ExactMatrix::from_rows(&[
            &[o(), z(), z(), z()],
            &[z(), o(), z(), z()],
            &[z(), z(), z(), o()],
            &[z(), z(), o(), z()],
        ]),
        Cz => diag(vec![o(), o(), o(), w(4)]),
        Cs => diag(vec![o(), o(), o(), w(2)]),
        Csdg => diag(vec![o(), o(), o(), w(6)]),
        Swap => ExactMatrix::from_rows(&[
            &[o(), z(), z(), z()],
            &[z(), z(), o(), z()],
            &[z(), o(), z(), z()],
            &[z(), z(), z(), o()],
        ]),
        Ccx => {
            let mut m = ExactMatrix::identity(8);
            m.set(6, 6, z());
            m.set(7, 7, z());
            m.set(6, 7, o());
            m.set(7, 6, o());
            m
        }
        Ccz => {
            let mut d = vec![o(); 8];
            d[7] = w(4);
            diag(d)
        }
    }
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Where a non-Hadamard gate sends basis index `idx`, and the ω-exponent of
/// the phase it picks up.
fn monomial_action(gate: &Gate, n: usize, idx: usize) -> (usize, i64) {
    use GateKind::*;
    let q = gate.qubits();
    let set = |i: usize| idx & bit(n, q[i]) != 0;
    match gate.kind() {
        X => (idx ^ bit(n, q[0]), 0),
        Y => (idx ^ bit(n, q[0]), if set(0) { 6 } else { 2 }),
        Z => (idx, if set(0) { 4 } else { 0 }),
        S => (idx, if set(0) { 2 } else { 0 }),
        Sdg => (idx, if set(0) { 6 } else { 0 }),
        T => (idx, if set(0) { 1 } else { 0 }),
        Tdg => (idx, if set(0) { 7 } else { 0 }),
        Cx => (if set(0) { idx ^ bit(n, q[1]) } else { idx }, 0),
        Cz => (idx, if set(0) && set(1) { 4 } else { 0 }),
        Cs => (idx, if set(0) && set(1) { 2 } else { 0 }),
        Csdg => (idx, if set(0) && set(1) { 6 } else { 0 }),
        Swap => {
            if set(0) != set(1) {
                (idx ^ bit(n, q[0]) ^ bit(n, q[1]), 0)
            } else {
                (idx, 0)
            }
        }
        Ccx => (
            if set(0) && set(1) {
                idx ^ bit(n, q[2])
            } else {
                idx
            },
            0,
        ),
        Ccz => (idx, if set(0) && set(1) && set(2) { 4 } else { 0 }),
        H => unreachable!("Hadamard is not monomial"),
    }
}

/// A state vector with exact amplitudes. Only nonzero amplitudes are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactState {
    n: usize,
    amps: BTreeMap<usize, RingScalar>,
}

impl ExactState {
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(index < 1usize << n, "basis index out of range");
        let mut amps = BTreeMap::new();
        amps.insert(index, RingScalar::one());
        ExactState { n, amps }
    }

    pub fn from_amplitudes(n: usize, amplitudes: Vec<RingScalar>) -> Self {
        assert_eq!(amplitudes.len(), 1usize << n);
        let amps = amplitudes
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .collect();
        ExactState { n, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitude(&self, index: usize) -> RingScalar {
        self.amps.get(&index).cloned().unwrap_or_default()
    }

    /// Nonzero amplitudes in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &RingScalar)> {
        self.amps.iter().map(|(i, a)| (*i, a))
    }

    pub fn to_dense(&self) -> Vec<RingScalar> {
        (0..1usize << self.n).map(|i| self.amplitude(i)).collect()
    }

    /// ⟨ψ|ψ⟩.
    pub fn norm_sqr(&self) -> RingScalar {
        self.amps.values().map(|a| a * &a.conj()).sum()
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        let n = self.n;
        let old = std::mem::take(&mut self.amps);
        if gate.kind() == GateKind::H {
            let b = bit(n, gate.qubits()[0]);
            for &idx in old.keys() {
                let lo = idx & !b;
                if idx != lo && old.contains_key(&lo) {
                    continue; // pair already handled from its low index
                }
                let zero = RingScalar::zero();
                let a0 = old.get(&lo).unwrap_or(&zero);
                let a1 = old.get(&(lo | b)).unwrap_or(&zero);
                let plus = (a0 + a1).div_sqrt2();
                let minus = (a0 - a1).div_sqrt2();
                if !plus.is_zero() {
                    self.amps.insert(lo, plus);
                }
                if !minus.is_zero() {
                    self.amps.insert(lo | b, minus);
                }
            }
        } else {
            for (idx, a) in old {
                let (to, e) = monomial_action(gate, n, idx);
                let v = if e == 0 { a } else { a.mul_omega_pow(e) };
                self.amps.insert(to, v);
            }
        }
    }

    /// Applies the gates of `c` in list order.
    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<(), SimError> {
        if c.width() != self.n {
            return Err(SimError::WidthMismatch {
                state: self.n,
                circuit: c.width(),
            });
        }
        for g in c.gates() {
            self.apply_gate(g);
        }
        Ok(())
    }
}

/// Applies `c` to `state` and returns the result.
pub fn apply_circuit(state: &ExactState, c: &Circuit) -> Result<ExactState, SimError> {
    let mut s = state.clone();
    s.apply_circuit(c)?;
    Ok(s)
}

/// Full unitary of `c` over all its wires, ancillas included.
pub fn unitary_of(c: &Circuit, cfg: &SimConfig) -> Result<ExactMatrix, SimError> {
    let n = c.width();
    cfg.check_unitary(n)?;
    let dim = 1usize << n;
    let columns: Vec<ExactState> = (0..dim)
        .into_par_iter()
        .map(|col| {
            let mut s = ExactState::basis(n, col);
            s.apply_circuit(c).map(|_| s)
        })
        .collect::<Result<_, _>>()?;
    let mut m = ExactMatrix::zeros(dim);
    for (col, s) in columns.into_iter().enumerate() {
        for (row, a) in s.amps {
            m.set(row, col, a);
        }
    }
    Ok(m)
}

/// The operator `c` implements on its main register.
///
/// Each main basis input `|x⟩⊗|0…0⟩` is simulated; every output must have
/// the form `|φ_x⟩⊗|0…0⟩`, and `φ_x` becomes column `x`.
pub fn induced_unitary(c: &Circuit, cfg: &SimConfig) -> Result<ExactMatrix, SimError> {
    cfg.check_state(c.width())?;
    cfg.check_unitary(c.n_main())?;
    let n = c.width();
    let shift = c.n_anc();
    let anc_mask = (1usize << shift) - 1;
    let dim = 1usize << c.n_main();
    let columns: Vec<Result<ExactState, SimError>> = (0..dim)
        .into_par_iter()
        .map(|col| {
            let mut s = ExactState::basis(n, col << shift);
            s.apply_circuit(c)?;
            if s.amps.keys().any(|&i| i & anc_mask != 0) {
                return Err(SimError::AncillaContractViolated { input: col });
            }
            Ok(s)
        })
        .collect();
    let mut m = ExactMatrix::zeros(dim);
    for (col, s) in columns.into_iter().enumerate() {
        for (row, a) in s?.amps {
            m.set(row >> shift, col, a);
        }
    }
    Ok(m)
}

/// `Some(j)` iff the induced unitaries satisfy `U1 = ω^j · U2`.
pub fn equivalence_phase(
    c1: &Circuit,
    c2: &Circuit,
    cfg: &SimConfig,
) -> Result<Option<u8>, SimError> {
    if c1.n_main() != c2.n_main() {
        return Err(SimError::MainWidthMismatch {
            left: c1.n_main(),
            right: c2.n_main(),
        });
    }
    let u1 = induced_unitary(c1, cfg)?;
    let u2 = induced_unitary(c2, cfg)?;
    Ok(phase_between(&u1, &u2))
}

/// `Some(j)` iff `a = ω^j · b`.
pub fn phase_between(a: &ExactMatrix, b: &ExactMatrix) -> Option<u8> {
    if a.dim() != b.dim() {
        return None;
    }
    (0u8..8).find(|&j| {
        a.entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| *x == y.mul_omega_pow(j as i64))
    })
}

/// Exact equality of induced unitaries, optionally up to a factor ω^j.
pub fn equivalent(
    c1: &Circuit,
    c2: &Circuit,
    up_to_global_phase: bool,
    cfg: &SimConfig,
) -> Result<bool, SimError> {
    Ok(match equivalence_phase(c1, c2, cfg)? {
        Some(0) => true,
        Some(_) => up_to_global_phase,
        None => false,
    })
}

/// A diagonal unitary `diag(ω^{Σ sign·parity(mask, x)})` given by its phase
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpec {
    pub n: usize,
    /// Each term: the qubits whose XOR it reads, and +1 (T) or −1 (T†).
    pub terms: Vec<(Vec<usize>, i8)>,
}

impl PhaseSpec {
    pub fn new(n: usize, terms: Vec<(Vec<usize>, i8)>) -> Self {
        for (mask, sign) in &terms {
            assert!(
                !mask.is_empty() && mask.iter().all(|&q| q < n),
                "bad mask {mask:?}"
            );
            assert!(*sign == 1 || *sign == -1);
        }
        PhaseSpec { n, terms }
    }

    /// ω-exponent (mod 8) at basis index `x`.
    pub fn exponent(&self, x: usize) -> i64 {
        self.terms
            .iter()
            .map(|(mask, sign)| {
                let parity = mask.iter().filter(|&&q| x & bit(self.n, q) != 0).count() % 2;
                *sign as i64 * parity as i64
            })
            .sum::<i64>()
            .rem_euclid(8)
    }
}

pub fn phase_diagonal(spec: &PhaseSpec) -> ExactMatrix {
    ExactMatrix::from_diagonal(
        (0..1usize << spec.n)
            .map(|x| RingScalar::omega_pow(spec.exponent(x)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use GateKind::*;

    fn circ(n: usize, gates: &[(GateKind, &[usize])]) -> Circuit {
        let mut c = Circuit::new(n, 0);
        for (k, q) in gates {
            c.push(*k, q).unwrap();
        }
        c
    }

    fn cfg() -> SimConfig {
        SimConfig::default()
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for k in GateKind::ALL {
            assert!(gate_matrix(k).is_unitary(), "{k}");
        }
    }

    #[test]
    fn gate_matrix_examples() {
        assert_eq!(
            gate_matrix(T),
            ExactMatrix::from_diagonal(vec![RingScalar::one(), RingScalar::omega()])
        );
        let h = gate_matrix(H);
        assert_eq!(h.mul(&h), ExactMatrix::identity(2));
        assert_eq!(gate_matrix(T).mul(&gate_matrix(T)), gate_matrix(S));
    }

    #[test]
    fn simulation_matches_gate_matrices() {
        // Route 1: literal matrices. Route 2: index-based state updates.
        for k in GateKind::ALL {
            let q: Vec<usize> = (0..k.arity()).collect();
            let c = circ(k.arity(), &[(k, &q)]);
            assert_eq!(unitary_of(&c, &cfg()).unwrap(), gate_matrix(k), "{k}");
        }
    }

    #[test]
    fn embedding_respects_msb_ordering() {
        // X on qubit 1 of 2 is I ⊗ X.
        let c = circ(2, &[(X, &[1])]);
        let expect = ExactMatrix::identity(2).kron(&gate_matrix(X));
        assert_eq!(unitary_of(&c, &cfg()).unwrap(), expect);
        // CX with control 1, target 0 differs from CX 0 1.
        let c10 = circ(2, &[(Cx, &[1, 0])]);
        assert_ne!(unitary_of(&c10, &cfg()).unwrap(), gate_matrix(Cx));
    }

    #[test]
    fn apply_examples() {
        let c = circ(1, &[(X, &[0])]);
        assert_eq!(
            apply_circuit(&ExactState::basis(1, 0), &c).unwrap(),
            ExactState::basis(1, 1)
        );
        let t = circ(1, &[(T, &[0])]);
        assert_eq!(
            apply_circuit(&ExactState::basis(1, 0), &t).unwrap(),
            ExactState::basis(1, 0)
        );
        let one = apply_circuit(&ExactState::basis(1, 1), &t).unwrap();
        assert_eq!(one.amplitude(1), RingScalar::omega());
        assert!(matches!(
            apply_circuit(&ExactState::basis(2, 0), &t),
            Err(SimError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn unitary_examples() {
        assert_eq!(
            unitary_of(&Circuit::new(1, 0), &cfg()).unwrap(),
            ExactMatrix::identity(2)
        );
        let hzh = circ(3, &[(H, &[2]), (Ccz, &[0, 1, 2]), (H, &[2])]);
        assert_eq!(unitary_of(&hzh, &cfg()).unwrap(), gate_matrix(Ccx));
        let tt = circ(1, &[(T, &[0]), (T, &[0])]);
        assert_eq!(unitary_of(&tt, &cfg()).unwrap(), gate_matrix(S));
        let wide = Circuit::new(11, 0);
        assert!(matches!(
            unitary_of(&wide, &cfg()),
            Err(SimError::TooWide { .. })
        ));
    }

    #[test]
    fn ancilla_contract() {
        let mut c = Circuit::new(1, 1);
        c.push(Cx, &[0, 1]).unwrap();
        assert_eq!(
            induced_unitary(&c, &cfg()),
            Err(SimError::AncillaContractViolated { input: 1 })
        );
        c.push(Cx, &[0, 1]).unwrap();
        assert_eq!(
            induced_unitary(&c, &cfg()).unwrap(),
            ExactMatrix::identity(2)
        );
    }

    #[test]
    fn induced_equals_unitary_without_ancillas() {
        let c = circ(2, &[(H, &[0]), (T, &[1]), (Cx, &[0, 1]), (Sdg, &[0])]);
        assert_eq!(
            induced_unitary(&c, &cfg()).unwrap(),
            unitary_of(&c, &cfg()).unwrap()
        );
    }

    #[test]
    fn equivalence() {
        let t = circ(1, &[(T, &[0])]);
        let tdg = circ(1, &[(Tdg, &[0])]);
        assert!(!equivalent(&t, &tdg, false, &cfg()).unwrap());
        assert!(!equivalent(&t, &tdg, true, &cfg()).unwrap());
        // XZXZ = −I: equal to the identity only up to phase ω⁴.
        let xzxz = circ(1, &[(X, &[0]), (Z, &[0]), (X, &[0]), (Z, &[0])]);
        let id = Circuit::new(1, 0);
        assert_eq!(equivalence_phase(&xzxz, &id, &cfg()).unwrap(), Some(4));
        assert!(!equivalent(&xzxz, &id, false, &cfg()).unwrap());
        assert!(equivalent(&xzxz, &id, true, &cfg()).unwrap());
    }

    #[test]
    fn almost_classical_examples() {
        assert!(is_almost_classical(&gate_matrix(S)));
        assert!(is_almost_classical(&gate_matrix(X)));
        assert!(!is_almost_classical(&gate_matrix(H)));
        for k in [Ccx, Ccz, Cs] {
            assert!(is_almost_classical(&gate_matrix(k)));
        }
    }

    #[test]
    fn phase_diagonal_examples() {
        // x, y, z are qubits 0, 1, 2.
        let ccz = PhaseSpec::new(
            3,
            vec![
                (vec![0], 1),
                (vec![1], 1),
                (vec![2], 1),
                (vec![0, 1], -1),
                (vec![1, 2], -1),
                (vec![0, 2], -1),
                (vec![0, 1, 2], 1),
            ],
        );
        assert_eq!(phase_diagonal(&ccz), gate_matrix(Ccz));
        let csdg = PhaseSpec::new(2, vec![(vec![0], -1), (vec![1], -1), (vec![0, 1], 1)]);
        assert_eq!(phase_diagonal(&csdg), gate_matrix(Csdg));
        let cc_minus_iz = PhaseSpec::new(
            3,
            vec![
                (vec![2], 1),
                (vec![1, 2], -1),
                (vec![0, 2], -1),
                (vec![0, 1, 2], 1),
            ],
        );
        let expect = unitary_of(&circ(3, &[(Ccz, &[0, 1, 2]), (Csdg, &[0, 1])]), &cfg()).unwrap();
        assert_eq!(phase_diagonal(&cc_minus_iz), expect);
    }

    #[test]
    fn inclusion_exclusion_identity() {
        for x in 0..2i32 {
            for y in 0..2i32 {
                for z in 0..2i32 {
                    assert_eq!(
                        4 * x * y * z,
                        x + y + z - (x ^ y) - (y ^ z) - (x ^ z) + (x ^ y ^ z)
                    );
                }
            }
        }
    }
}
