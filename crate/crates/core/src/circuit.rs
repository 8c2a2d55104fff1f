//! Gate and circuit data model, plus the scheduling metrics.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cx,
    Cz,
    Cs,
    Csdg,
    Swap,
    Ccx,
    Ccz,
}

impl GateKind {
    pub const ALL: [GateKind; 15] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Cs,
        GateKind::Csdg,
        GateKind::Swap,
        GateKind::Ccx,
        GateKind::Ccz,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Cs => "cs",
            GateKind::Csdg => "csdg",
            GateKind::Swap => "swap",
            GateKind::Ccx => "ccx",
            GateKind::Ccz => "ccz",
        }
    }

    pub fn arity(self) -> usize {
        use GateKind::*;
        match self {
            X | Y | Z | H | S | Sdg | T | Tdg => 1,
            Cx | Cz | Cs | Csdg | Swap => 2,
            Ccx | Ccz => 3,
        }
    }

    pub fn inverse(self) -> GateKind {
        use GateKind::*;
        match self {
            S => Sdg,
            Sdg => S,
            T => Tdg,
            Tdg => T,
            Cs => Csdg,
            Csdg => Cs,
            k => k,
        }
    }

    /// T or T†; the only gates that count toward T-count and T-depth.
    pub fn is_t(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Kinds in the Clifford group (Pauli conjugation is defined for these).
    pub fn is_clifford(self) -> bool {
        use GateKind::*;
        matches!(self, X | Y | Z | H | S | Sdg | Cx | Cz | Swap)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown gate mnemonic `{0}`")]
pub struct UnknownMnemonic(pub String);

impl FromStr for GateKind {
    type Err = UnknownMnemonic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.mnemonic() == s)
            .ok_or_else(|| UnknownMnemonic(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("`{kind}` takes {expected} qubit(s), got {got}")]
    ArityMismatch {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("qubit {qubit} appears twice in one gate")]
    RepeatedQubit { qubit: usize },
    #[error("qubit index {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("circuit widths differ: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
}

/// One gate application. For controlled kinds the controls come first and
/// the target last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::ArityMismatch {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(CircuitError::RepeatedQubit { qubit: *q });
            }
        }
        Ok(Gate {
            kind,
            qubits: qubits.to_vec(),
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            qubits: self.qubits.clone(),
        }
    }

    /// The same gate with every wire relabelled through `map`.
    pub fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map[q]).collect(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// A gate list over `n_main` main wires followed by `n_anc` ancillas.
///
/// Ancillas start in |0⟩ and must be returned to |0⟩; they occupy indices
/// `n_main .. n_main + n_anc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n_main: usize,
    n_anc: usize,
    gates: Vec<Gate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub t_count: usize,
    pub t_depth_as_written: usize,
    pub t_depth_scheduled: usize,
    pub depth: usize,
    pub gate_count: usize,
    pub n_main: usize,
    pub n_anc: usize,
}

impl Circuit {
    pub fn new(n_main: usize, n_anc: usize) -> Self {
        Circuit {
            n_main,
            n_anc,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(
        n_main: usize,
        n_anc: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(n_main, n_anc);
        for g in gates {
            c.push_gate(g)?;
        }
        Ok(c)
    }

    pub fn n_main(&self) -> usize {
        self.n_main
    }

    pub fn n_anc(&self) -> usize {
        self.n_anc
    }

    pub fn width(&self) -> usize {
        self.n_main + self.n_anc
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push_gate(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.width()) {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q,
                width: self.width(),
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `kind` on `qubits`.
    pub fn push(&mut self, kind: GateKind, qubits: &[usize]) -> Result<(), CircuitError> {
        self.push_gate(Gate::new(kind, qubits)?)
    }

    /// Appends every gate of `other`, relabelling its wire `i` to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<(), CircuitError> {
        if map.len() != other.width() {
            return Err(CircuitError::WidthMismatch {
                left: map.len(),
                right: other.width(),
            });
        }
        for g in &other.gates {
            self.push_gate(g.remapped(map))?;
        }
        Ok(())
    }

    /// Appends `other`, which must have the same width.
    pub fn append(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        let map: Vec<usize> = (0..other.width()).collect();
        if other.width() != self.width() {
            return Err(CircuitError::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        self.append_mapped(other, &map)
    }

    /// Same gates on a circuit with `extra` more ancillas.
    pub fn with_extra_ancillas(&self, extra: usize) -> Circuit {
        Circuit {
            n_main: self.n_main,
            n_anc: self.n_anc + extra,
            gates: self.gates.clone(),
        }
    }

    /// The inverse circuit: reversed order, each gate inverted.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            n_main: self.n_main,
            n_anc: self.n_anc,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_t()).count()
    }

    /// T-stages in the literal gate order.
    ///
    /// A T/T† gate joins the open stage iff its wire is not already in the
    /// stage and no other gate has touched that wire since the stage opened.
    pub fn t_depth_as_written(&self) -> usize {
        let w = self.width();
        let mut in_stage = vec![false; w];
        let mut blocked = vec![false; w];
        let mut stages = 0;
        for g in &self.gates {
            if g.kind.is_t() {
                let q = g.qubits[0];
                if stages == 0 || in_stage[q] || blocked[q] {
                    stages += 1;
                    in_stage.iter_mut().for_each(|b| *b = false);
                    blocked.iter_mut().for_each(|b| *b = false);
                }
                in_stage[q] = true;
            } else if stages > 0 {
                for &q in &g.qubits {
                    blocked[q] = true;
                }
            }
        }
        stages
    }

    /// T-depth over the wire-sharing dependency order.
    ///
    /// Every gate gets a T-level equal to the largest T-level among the
    /// gates it depends on, plus one if it is itself a T/T† gate. The result
    /// is the largest T-level: the number of T-stages left when each T gate
    /// joins the earliest stage its predecessors allow. No commutation beyond
    /// disjoint wires is used.
    pub fn t_depth_scheduled(&self) -> usize {
        let mut level = vec![0usize; self.width()];
        for g in &self.gates {
            let l =
                g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + usize::from(g.kind.is_t());
            for &q in &g.qubits {
                level[q] = l;
            }
        }
        level.into_iter().max().unwrap_or(0)
    }

    /// ASAP layer (1-based) of every gate in list order.
    pub fn asap_layers(&self) -> Vec<usize> {
        let mut wire = vec![0usize; self.width()];
        self.gates
            .iter()
            .map(|g| {
                let l = 1 + g.qubits.iter().map(|&q| wire[q]).max().unwrap_or(0);
                for &q in &g.qubits {
                    wire[q] = l;
                }
                l
            })
            .collect()
    }

    /// Number of layers in the ASAP schedule.
    pub fn depth(&self) -> usize {
        self.asap_layers().into_iter().max().unwrap_or(0)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            t_count: self.t_count(),
            t_depth_as_written: self.t_depth_as_written(),
            t_depth_scheduled: self.t_depth_scheduled(),
            depth: self.depth(),
            gate_count: self.gate_count(),
            n_main: self.n_main,
            n_anc: self.n_anc,
        }
    }
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

    #[test]
    fn gate_validation() {
        assert!(matches!(
            Gate::new(Cx, &[0]),
            Err(CircuitError::ArityMismatch {
                expected: 2,
                got: 1,
                ..
            })
        ));
        assert_eq!(
            Gate::new(Ccx, &[0, 1, 0]),
            Err(CircuitError::RepeatedQubit { qubit: 0 })
        );
        let mut c = Circuit::new(1, 1);
        assert!(c.push(Cx, &[0, 1]).is_ok());
        assert_eq!(
            c.push(T, &[2]),
            Err(CircuitError::QubitOutOfRange { qubit: 2, width: 2 })
        );
    }

    #[test]
    fn parallel_t_is_one_stage() {
        let c = circ(3, &[(T, &[0]), (T, &[1]), (T, &[2])]);
        assert_eq!(c.t_depth_as_written(), 1);
        assert_eq!(c.t_depth_scheduled(), 1);
        assert_eq!(c.depth(), 1);
    }

    #[test]
    fn empty_metrics() {
        let m = Circuit::new(2, 1).metrics();
        assert_eq!(
            m,
            Metrics {
                t_count: 0,
                t_depth_as_written: 0,
                t_depth_scheduled: 0,
                depth: 0,
                gate_count: 0,
                n_main: 2,
                n_anc: 1
            }
        );
    }

    #[test]
    fn as_written_stage_breaks() {
        // T on a wire touched after the stage opened starts a new stage.
        let c = circ(2, &[(T, &[0]), (H, &[1]), (T, &[1])]);
        assert_eq!(c.t_depth_as_written(), 2);
        // Gates before the stage opened do not matter.
        let c = circ(2, &[(H, &[1]), (H, &[1]), (T, &[0]), (T, &[1])]);
        assert_eq!(c.t_depth_as_written(), 1);
        assert_eq!(c.t_depth_scheduled(), 1);
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn ccx_family_is_free_for_t_metrics() {
        let c = circ(3, &[(Ccx, &[0, 1, 2]), (Cs, &[0, 1]), (Ccz, &[0, 1, 2])]);
        assert_eq!(c.t_count(), 0);
        assert_eq!(c.t_depth_scheduled(), 0);
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn dagger_examples() {
        let c = circ(1, &[(T, &[0])]);
        assert_eq!(c.dagger(), circ(1, &[(Tdg, &[0])]));
        let c = circ(2, &[(H, &[0]), (Cx, &[0, 1])]);
        assert_eq!(c.dagger(), circ(2, &[(Cx, &[0, 1]), (H, &[0])]));
        let c = circ(2, &[(S, &[0]), (Cs, &[0, 1]), (Tdg, &[1])]);
        assert_eq!(c.dagger().dagger(), c);
    }

    #[test]
    fn mnemonic_roundtrip() {
        for k in GateKind::ALL {
            assert_eq!(k.mnemonic().parse::<GateKind>().unwrap(), k);
        }
        assert!("ccy".parse::<GateKind>().is_err());
    }
}
