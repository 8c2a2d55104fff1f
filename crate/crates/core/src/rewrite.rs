//! Rewriting almost-classical + T circuits to T-depth 1.
//!
//! Every T (or T†) gate on wire w is replaced by a CNOT copying w onto a
//! fresh ancilla. The copy network L, the T-stage M on the ancillas, and L†
//! together form a diagonal operator; the remaining almost-classical gates
//! A₂ follow it. The output is L · M · L† · A₂.

use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::sim::{gate_matrix, is_almost_classical};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("gate `{gate}` at position {position} is not almost classical")]
    NotAlmostClassical { gate: Gate, position: usize },
    #[error("stage count must be at least 1")]
    ZeroStages,
}

/// Positions of the non-T gates whose matrices are not monomial.
pub fn validate_gateset(c: &Circuit) -> Vec<usize> {
    c.gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.kind().is_t() && !is_almost_classical(&gate_matrix(g.kind())))
        .map(|(i, _)| i)
        .collect()
}

fn check(c: &Circuit) -> Result<(), RewriteError> {
    match validate_gateset(c).first() {
        Some(&position) => Err(RewriteError::NotAlmostClassical {
            gate: c.gates()[position].clone(),
            position,
        }),
        None => Ok(()),
    }
}

/// The pair (A₁ = L·M·L†, A₂) built one gate at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteState {
    /// Compute prefix, in time order.
    pub l: Vec<Gate>,
    /// The single T-stage: (ancilla, T or T†), ancillas distinct.
    pub m: Vec<(usize, GateKind)>,
    /// T-free suffix.
    pub a2: Vec<Gate>,
    /// Next fresh wire.
    pub next_ancilla: usize,
}

impl RewriteState {
    pub fn new(first_ancilla: usize) -> Self {
        RewriteState {
            l: Vec::new(),
            m: Vec::new(),
            a2: Vec::new(),
            next_ancilla: first_ancilla,
        }
    }

    /// Absorbs one gate. Almost-classical gates go into both L and A₂; a T
    /// or T† becomes a copy onto a fresh ancilla plus an entry of M.
    pub fn step(&mut self, gate: &Gate) {
        if gate.kind().is_t() {
            let a = self.next_ancilla;
            self.next_ancilla += 1;
            self.l
                .push(Gate::new(GateKind::Cx, &[gate.qubits()[0], a]).expect("distinct wires"));
            self.m.push((a, gate.kind()));
        } else {
            self.l.push(gate.clone());
            self.a2.push(gate.clone());
        }
    }

    /// L · M · L† as a gate list.
    pub fn diagonal_part(&self) -> Vec<Gate> {
        let mut out = self.l.clone();
        out.extend(
            self.m
                .iter()
                .map(|&(q, k)| Gate::new(k, &[q]).expect("single wire")),
        );
        out.extend(self.l.iter().rev().map(Gate::inverse));
        out
    }

    /// L · M · L† · A₂.
    pub fn into_gates(self) -> Vec<Gate> {
        let mut out = self.diagonal_part();
        out.extend(self.a2);
        out
    }
}

/// Rewrites `c` to scheduled T-depth at most 1 with one fresh ancilla per
/// T gate. `c`'s own ancillas are treated as ordinary wires; the fresh
/// ancillas follow them.
pub fn rewrite_tdepth1(c: &Circuit) -> Result<Circuit, RewriteError> {
    check(c)?;
    let mut state = RewriteState::new(c.width());
    for g in c.gates() {
        state.step(g);
    }
    let gates = state.into_gates();
    Ok(Circuit::with_gates(c.n_main(), c.n_anc() + c.t_count(), gates).expect("wires in range"))
}

/// Rewrites `c` into `stages` consecutive T-depth-1 blocks sharing a pool of
/// ⌈t/stages⌉ ancillas, where t is the T-count.
pub fn rewrite_budgeted(c: &Circuit, stages: usize) -> Result<Circuit, RewriteError> {
    if stages == 0 {
        return Err(RewriteError::ZeroStages);
    }
    check(c)?;
    let chunk = c.t_count().div_ceil(stages);
    if chunk == 0 {
        return Ok(c.clone());
    }

    // Cut after every `chunk`-th T gate; T-free tails join the last segment.
    let mut segments: Vec<&[Gate]> = Vec::new();
    let mut start = 0;
    let mut seen = 0;
    for (i, g) in c.gates().iter().enumerate() {
        if g.kind().is_t() {
            seen += 1;
            if seen % chunk == 0 && seen < c.t_count() {
                segments.push(&c.gates()[start..=i]);
                start = i + 1;
            }
        }
    }
    segments.push(&c.gates()[start..]);

    let pool = c.width();
    let parts: Vec<Vec<Gate>> = segments
        .par_iter()
        .map(|seg| {
            let mut state = RewriteState::new(pool);
            for g in seg.iter() {
                state.step(g);
            }
            state.into_gates()
        })
        .collect();
    let gates = parts.into_iter().flatten();
    Ok(Circuit::with_gates(c.n_main(), c.n_anc() + chunk, gates).expect("wires in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{toffoli_ammr, toffoli_nc_core};
    use crate::sim::{induced_unitary, unitary_of, ExactMatrix, SimConfig};
    use GateKind::*;

    fn cfg() -> SimConfig {
        SimConfig::default()
    }

    #[test]
    fn validate_examples() {
        let mut c = Circuit::new(3, 0);
        for (k, q) in [
            (S, &[0][..]),
            (X, &[1]),
            (Cx, &[0, 1]),
            (Ccx, &[0, 1, 2]),
            (Ccz, &[0, 1, 2]),
            (T, &[0]),
            (Tdg, &[2]),
        ] {
            c.push(k, q).unwrap();
        }
        assert!(validate_gateset(&c).is_empty());
        let mut h = Circuit::new(1, 0);
        h.push(H, &[0]).unwrap();
        assert_eq!(validate_gateset(&h), vec![0]);
        let ammr = toffoli_ammr();
        assert_eq!(validate_gateset(&ammr), vec![0, 15]);
        assert_eq!(
            rewrite_tdepth1(&h),
            Err(RewriteError::NotAlmostClassical {
                gate: h.gates()[0].clone(),
                position: 0
            })
        );
    }

    #[test]
    fn toffoli_core_rewrite() {
        let core = toffoli_nc_core();
        let out = rewrite_tdepth1(&core).unwrap();
        assert_eq!(out.n_anc(), 7);
        assert_eq!(out.t_depth_scheduled(), 1);
        assert_eq!(
            induced_unitary(&out, &cfg()).unwrap(),
            unitary_of(&core, &cfg()).unwrap()
        );
    }

    #[test]
    fn diagonal_part_is_diagonal() {
        let core = toffoli_nc_core();
        let mut state = RewriteState::new(3);
        for g in core.gates() {
            state.step(g);
            let a1 = Circuit::with_gates(3, state.next_ancilla - 3, state.diagonal_part()).unwrap();
            assert!(induced_unitary(&a1, &cfg()).unwrap().is_diagonal());
        }
    }

    #[test]
    fn no_t_gates_is_identity_rewrite() {
        let mut c = Circuit::new(2, 0);
        c.push(Cx, &[0, 1]).unwrap();
        c.push(S, &[1]).unwrap();
        let out = rewrite_tdepth1(&c).unwrap();
        assert_eq!(out.n_anc(), 0);
        assert_eq!(
            unitary_of(&out, &cfg()).unwrap(),
            unitary_of(&c, &cfg()).unwrap()
        );
    }

    #[test]
    fn budgeted() {
        let core = toffoli_nc_core();
        let u = unitary_of(&core, &cfg()).unwrap();
        for (stages, pool) in [(1, 7), (2, 4), (3, 3), (7, 1), (20, 1)] {
            let out = rewrite_budgeted(&core, stages).unwrap();
            assert_eq!(out.n_anc(), pool, "stages {stages}");
            assert!(out.t_depth_scheduled() <= stages);
            let got: ExactMatrix = induced_unitary(&out, &cfg()).unwrap();
            assert_eq!(got, u);
        }
        assert_eq!(
            rewrite_budgeted(&core, 1).unwrap(),
            rewrite_tdepth1(&core).unwrap()
        );
        assert_eq!(rewrite_budgeted(&core, 0), Err(RewriteError::ZeroStages));
    }
}
