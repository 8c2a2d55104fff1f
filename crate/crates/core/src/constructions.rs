//! Builders for the low-T-depth circuits: Toffoli decompositions, the
//! doubly-controlled (−iZ)/(−iX) gates, control addition, multiply-controlled
//! X and controlled-T.
//!
//! Wire convention: for Toffoli-like gates the controls are qubits 0 and 1
//! and the target is qubit 2.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, GateKind};
use crate::sim::{induced_unitary, SimConfig, SimError};

use GateKind::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("qubit 0 of the circuit is not a control")]
    NotAControlledCircuit,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

fn from_list(n_main: usize, n_anc: usize, gates: &[(GateKind, &[usize])]) -> Circuit {
    let mut c = Circuit::new(n_main, n_anc);
    for (k, q) in gates {
        c.push(*k, q).expect("builder gate lists are well formed");
    }
    c
}

/// The textbook Toffoli decomposition: T-count 7, T-depth 6 as written.
pub fn toffoli_nc() -> Circuit {
    from_list(
        3,
        0,
        &[
            (H, &[2]),
            (Cx, &[1, 2]),
            (Tdg, &[2]),
            (Cx, &[0, 2]),
            (T, &[2]),
            (Cx, &[1, 2]),
            (Tdg, &[2]),
            (Cx, &[0, 2]),
            (T, &[2]),
            (Tdg, &[1]),
            (H, &[2]),
            (Cx, &[0, 1]),
            (Tdg, &[1]),
            (Cx, &[0, 1]),
            (S, &[1]),
            (T, &[0]),
        ],
    )
}

/// [`toffoli_nc`] without its two Hadamards: a doubly-controlled Z built
/// only from almost-classical gates and T/T†.
pub fn toffoli_nc_core() -> Circuit {
    let full = toffoli_nc();
    let gates = full.gates().iter().filter(|g| g.kind() != H).cloned();
    Circuit::with_gates(3, 0, gates).expect("subset of a valid circuit")
}

/// The textbook decomposition after trivial commutations: T-depth 4.
pub fn toffoli_nc4() -> Circuit {
    from_list(
        3,
        0,
        &[
            (H, &[2]),
            (Cx, &[1, 2]),
            (Tdg, &[2]),
            (Cx, &[0, 2]),
            (T, &[2]),
            (Cx, &[1, 2]),
            (Tdg, &[2]),
            (Tdg, &[1]),
            (Cx, &[0, 2]),
            (Cx, &[0, 1]),
            (T, &[2]),
            (Tdg, &[1]),
            (T, &[0]),
            (Cx, &[0, 1]),
            (H, &[2]),
            (S, &[1]),
        ],
    )
}

/// The ancilla-free Toffoli with T-depth 3.
pub fn toffoli_ammr() -> Circuit {
    from_list(
        3,
        0,
        &[
            (H, &[2]),
            (T, &[2]),
            (T, &[1]),
            (Tdg, &[0]),
            (Cx, &[0, 1]),
            (Cx, &[2, 0]),
            (Tdg, &[0]),
            (Cx, &[1, 2]),
            (Cx, &[1, 0]),
            (T, &[2]),
            (Tdg, &[1]),
            (Tdg, &[0]),
            (Cx, &[2, 0]),
            (Cx, &[1, 2]),
            (S, &[0]),
            (H, &[2]),
            (Cx, &[0, 1]),
        ],
    )
}

/// CNOT network loading the four parities x⊕y⊕z, x⊕y, y⊕z, x⊕z of the main
/// wires x, y, z (qubits 0–2) onto ancillas 3–6, in three layers.
pub fn parity_network() -> Circuit {
    from_list(
        3,
        4,
        &[
            // layer 1
            (Cx, &[0, 3]),
            (Cx, &[1, 4]),
            (Cx, &[2, 5]),
            // layer 2
            (Cx, &[3, 6]),
            (Cx, &[0, 4]),
            (Cx, &[1, 5]),
            // layer 3
            (Cx, &[2, 6]),
            (Cx, &[5, 3]),
        ],
    )
}

/// Doubly-controlled Z with T-depth 1: compute all seven parities, apply the
/// seven T/T† gates in one stage, uncompute. Four ancillas, depth 7.
pub fn ccz_tdepth1() -> Circuit {
    let net = parity_network();
    let mut c = net.clone();
    // Odd-weight parities get T, even-weight ones T†.
    for (k, q) in [(T, 0), (T, 1), (T, 2), (T, 3), (Tdg, 4), (Tdg, 5), (Tdg, 6)] {
        c.push(k, &[q]).expect("valid");
    }
    c.append(&net.dagger()).expect("same width");
    c
}

/// Toffoli with T-depth 1 and depth 7.
///
/// The parity network differs from [`parity_network`]: the target wire stays
/// idle in the first layer so that the Hadamards share layers 1 and 7 with
/// the CNOTs. After three layers the seven wires hold x⊕y⊕z, y⊕z, z, x⊕z, y,
/// x, x⊕y.
pub fn toffoli_tdepth1() -> Circuit {
    let net = from_list(
        3,
        4,
        &[
            (Cx, &[0, 3]),
            (Cx, &[1, 4]),
            (Cx, &[2, 1]),
            (Cx, &[3, 5]),
            (Cx, &[4, 6]),
            (Cx, &[1, 0]),
            (Cx, &[2, 3]),
            (Cx, &[5, 6]),
        ],
    );
    let mut c = Circuit::new(3, 4);
    c.push(H, &[2]).expect("valid");
    c.append(&net).expect("same width");
    for (k, q) in [(T, 0), (Tdg, 1), (T, 2), (Tdg, 3), (T, 4), (T, 5), (Tdg, 6)] {
        c.push(k, &[q]).expect("valid");
    }
    c.append(&net.dagger()).expect("same width");
    c.push(H, &[2]).expect("valid");
    c
}

/// Doubly-controlled (−iZ) on controls 0, 1 and target 2.
///
/// With an ancilla (qubit 3): T-count 4, T-depth 1, depth 5, 12 gates.
/// Without: T-count 4, T-depth 2, depth 7, 9 gates.
pub fn cc_minus_iz(use_ancilla: bool) -> Circuit {
    cc_minus_iz_inner(use_ancilla, false)
}

/// `carry` leaves the ancilla holding x instead of resetting it.
fn cc_minus_iz_inner(use_ancilla: bool, carry: bool) -> Circuit {
    if use_ancilla {
        let mut gates: Vec<(GateKind, &[usize])> = vec![
            (Cx, &[2, 1]),
            (Cx, &[0, 3]),
            (Cx, &[2, 0]),
            (Cx, &[1, 3]),
            // wires now hold x⊕z, y⊕z, z, x⊕y⊕z
            (Tdg, &[0]),
            (Tdg, &[1]),
            (T, &[2]),
            (T, &[3]),
            (Cx, &[1, 3]),
            (Cx, &[2, 0]),
            (Cx, &[0, 3]),
            (Cx, &[2, 1]),
        ];
        if carry {
            gates.remove(10);
        }
        from_list(3, 1, &gates)
    } else {
        from_list(
            3,
            0,
            &[
                (Cx, &[2, 1]),
                (Cx, &[1, 0]),
                // x⊕y⊕z, y⊕z, z
                (T, &[0]),
                (Tdg, &[1]),
                (T, &[2]),
                (Cx, &[2, 1]),
                (Cx, &[1, 0]),
                // x⊕z
                (Tdg, &[0]),
                (Cx, &[2, 0]),
            ],
        )
    }
}

/// Doubly-controlled (−iX): [`cc_minus_iz`] conjugated by H on the target.
/// Equals CCX followed by CS† on the controls.
pub fn cc_minus_ix(use_ancilla: bool) -> Circuit {
    cc_minus_ix_inner(use_ancilla, false)
}

fn cc_minus_ix_inner(use_ancilla: bool, carry: bool) -> Circuit {
    let inner = cc_minus_iz_inner(use_ancilla, carry);
    let mut c = Circuit::new(3, inner.n_anc());
    c.push(H, &[2]).expect("valid");
    c.append(&inner).expect("same width");
    c.push(H, &[2]).expect("valid");
    c
}

/// Options for [`add_control`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddControlOptions {
    /// Use the ancilla form of the doubly-controlled (−iX) gate.
    pub use_ancilla: bool,
    /// Keep that gate's ancilla in |x⟩ while the inner circuit runs, saving
    /// two CNOTs. Only meaningful with `use_ancilla`.
    pub carry_ancilla: bool,
}

impl Default for AddControlOptions {
    fn default() -> Self {
        AddControlOptions {
            use_ancilla: true,
            carry_ancilla: false,
        }
    }
}

/// Adds one more control to a controlled circuit.
///
/// `g`'s qubit 0 must be a control: its induced unitary must be the identity
/// whenever qubit 0 is |0⟩ and must not mix the two values of qubit 0. The
/// result has a new control at qubit 0 (g's main wires shift up by one);
/// g's ancillas come first in the ancilla block, then the wire that holds
/// the conjunction of the two controls, then the (−iX) gate's own ancilla.
pub fn add_control(
    g: &Circuit,
    opts: AddControlOptions,
    cfg: &SimConfig,
) -> Result<Circuit, ConstructionError> {
    if g.n_main() == 0 {
        return Err(ConstructionError::BadParams(
            "circuit has no main qubits".into(),
        ));
    }
    check_controlled(g, cfg)?;
    let n_main = g.n_main() + 1;
    let conj = n_main + g.n_anc();
    let inner_anc = opts.use_ancilla as usize;
    let mut out = Circuit::new(n_main, g.n_anc() + 1 + inner_anc);

    let compute = cc_minus_ix_inner(opts.use_ancilla, opts.use_ancilla && opts.carry_ancilla);
    let mut cc_map = vec![0, 1, conj];
    if opts.use_ancilla {
        cc_map.push(conj + 1);
    }
    out.append_mapped(&compute, &cc_map)?;

    // g's main wires and ancillas all shift up by one, except its control.
    let g_map: Vec<usize> = (0..g.width())
        .map(|q| if q == 0 { conj } else { q + 1 })
        .collect();
    out.append_mapped(g, &g_map)?;
    out.append_mapped(&compute.dagger(), &cc_map)?;
    Ok(out)
}

fn check_controlled(g: &Circuit, cfg: &SimConfig) -> Result<(), ConstructionError> {
    let u = induced_unitary(g, cfg)?;
    let half = u.dim() / 2;
    for r in 0..u.dim() {
        for c in 0..u.dim() {
            let v = u.get(r, c);
            let ok = match (r < half, c < half) {
                (true, true) => {
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                }
                (false, false) => true,
                _ => v.is_zero(),
            };
            if !ok {
                return Err(ConstructionError::NotAControlledCircuit);
            }
        }
    }
    Ok(())
}

/// X controlled by `k` qubits (0..k), target qubit `k`.
///
/// k = 1 is a plain CNOT and k = 2 is [`toffoli_tdepth1`]. For larger k the
/// controls are split into two halves; each half is merged into a single
/// wire by a balanced tree of doubly-controlled (−iX) gates, the two merged
/// wires drive a T-depth-1 Toffoli, and the trees are then undone. Each
/// added control costs 8 T gates, and each tree level two T-stages.
pub fn multi_controlled_x(k: usize) -> Result<Circuit, ConstructionError> {
    match k {
        0 => Err(ConstructionError::BadParams(
            "control count must be at least 1".into(),
        )),
        1 => Ok(from_list(2, 0, &[(Cx, &[0, 1])])),
        2 => Ok(toffoli_tdepth1()),
        _ => Ok(multi_controlled_x_tree(k)),
    }
}

fn multi_controlled_x_tree(k: usize) -> Circuit {
    let n_main = k + 1;
    let target = k;
    let merges = k - 2;
    let merged_base = n_main;
    let pool_base = n_main + merges;

    let left: Vec<usize> = (0..k.div_ceil(2)).collect();
    let right: Vec<usize> = (k.div_ceil(2)..k).collect();

    // Plan the merge trees level by level: (control a, control b, output wire).
    let mut levels: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut next_merged = merged_base;
    let mut groups = [left, right];
    while groups.iter().any(|g| g.len() > 1) {
        let mut level = Vec::new();
        for group in groups.iter_mut() {
            let mut next = Vec::new();
            for pair in group.chunks(2) {
                if let [a, b] = *pair {
                    level.push((a, b, next_merged));
                    next.push(next_merged);
                    next_merged += 1;
                } else {
                    next.push(pair[0]);
                }
            }
            *group = next;
        }
        levels.push(level);
    }
    debug_assert_eq!(next_merged, pool_base);

    let widest_level = levels.iter().map(Vec::len).max().unwrap_or(0);
    let pool = widest_level.max(4);
    let n_anc = merges + pool;

    let cc = cc_minus_ix(true);
    let mut compute = Circuit::new(n_main, n_anc);
    for level in &levels {
        for (slot, &(a, b, out)) in level.iter().enumerate() {
            compute
                .append_mapped(&cc, &[a, b, out, pool_base + slot])
                .expect("wires in range");
        }
    }

    let mut c = compute.clone();
    let toffoli = toffoli_tdepth1();
    let mut map = vec![groups[0][0], groups[1][0], target];
    map.extend((0..4).map(|i| pool_base + i));
    c.append_mapped(&toffoli, &map).expect("wires in range");
    c.append(&compute.dagger()).expect("same width");
    c
}

/// Controlled-T on control 0 and target 1, i.e. diag(1, 1, 1, ω).
///
/// The phase is applied by a T gate on an ancilla holding the AND of the two
/// wires, computed with a doubly-controlled (−iX) and undone with its
/// inverse.
pub fn controlled_t(use_ancilla: bool) -> Circuit {
    let cc = cc_minus_ix(use_ancilla);
    let mut c = Circuit::new(2, 1 + cc.n_anc());
    let map: Vec<usize> = (0..cc.width()).collect(); // wires 0, 1, 2[, 3]
    c.append_mapped(&cc, &map).expect("wires in range");
    c.push(T, &[2]).expect("valid");
    c.append_mapped(&cc.dagger(), &map).expect("wires in range");
    c
}

/// Named constructions, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionName {
    ToffoliNc,
    ToffoliNc4,
    ToffoliAmmr,
    CczTdepth1,
    ToffoliTdepth1,
    CcMinusIz,
    CcMinusIzNoanc,
    CcMinusIx,
    AddControl,
    MultiControlledX,
    ControlledT,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 11] = [
        ConstructionName::ToffoliNc,
        ConstructionName::ToffoliNc4,
        ConstructionName::ToffoliAmmr,
        ConstructionName::CczTdepth1,
        ConstructionName::ToffoliTdepth1,
        ConstructionName::CcMinusIz,
        ConstructionName::CcMinusIzNoanc,
        ConstructionName::CcMinusIx,
        ConstructionName::AddControl,
        ConstructionName::MultiControlledX,
        ConstructionName::ControlledT,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionName::ToffoliNc => "toffoli-nc",
            ConstructionName::ToffoliNc4 => "toffoli-nc4",
            ConstructionName::ToffoliAmmr => "toffoli-ammr",
            ConstructionName::CczTdepth1 => "ccz-tdepth1",
            ConstructionName::ToffoliTdepth1 => "toffoli-tdepth1",
            ConstructionName::CcMinusIz => "cc-minus-iz",
            ConstructionName::CcMinusIzNoanc => "cc-minus-iz-noanc",
            ConstructionName::CcMinusIx => "cc-minus-ix",
            ConstructionName::AddControl => "add-control",
            ConstructionName::MultiControlledX => "multi-controlled-x",
            ConstructionName::ControlledT => "controlled-t",
        }
    }

    /// Whether the construction takes a control count.
    pub fn is_parameterized(self) -> bool {
        self == ConstructionName::MultiControlledX
    }

    /// Whether the construction has an ancilla-free variant.
    pub fn has_ancilla_option(self) -> bool {
        matches!(
            self,
            ConstructionName::CcMinusIz
                | ConstructionName::CcMinusIx
                | ConstructionName::AddControl
                | ConstructionName::ControlledT
        )
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionName {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ConstructionError::UnknownConstruction(s.to_string()))
    }
}

/// A construction name plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstructionId {
    pub name: ConstructionName,
    /// Control count; present exactly for parameterized constructions.
    pub controls: Option<usize>,
    pub use_ancilla: bool,
}

impl ConstructionId {
    pub fn new(name: ConstructionName) -> Self {
        ConstructionId {
            name,
            controls: None,
            use_ancilla: true,
        }
    }

    pub fn with_controls(mut self, k: usize) -> Self {
        self.controls = Some(k);
        self
    }

    pub fn without_ancilla(mut self) -> Self {
        self.use_ancilla = false;
        self
    }
}

/// Builds a named construction. `add-control` adds a control to a CNOT,
/// giving a Toffoli.
pub fn build(id: &ConstructionId) -> Result<Circuit, ConstructionError> {
    use ConstructionName as N;
    match (id.name.is_parameterized(), id.controls) {
        (true, None) => {
            return Err(ConstructionError::BadParams(format!(
                "`{}` needs a control count",
                id.name
            )))
        }
        (false, Some(_)) => {
            return Err(ConstructionError::BadParams(format!(
                "`{}` takes no control count",
                id.name
            )))
        }
        _ => {}
    }
    if !id.use_ancilla && !id.name.has_ancilla_option() {
        return Err(ConstructionError::BadParams(format!(
            "`{}` has no ancilla-free form",
            id.name
        )));
    }
    Ok(match id.name {
        N::ToffoliNc => toffoli_nc(),
        N::ToffoliNc4 => toffoli_nc4(),
        N::ToffoliAmmr => toffoli_ammr(),
        N::CczTdepth1 => ccz_tdepth1(),
        N::ToffoliTdepth1 => toffoli_tdepth1(),
        N::CcMinusIz => cc_minus_iz(id.use_ancilla),
        N::CcMinusIzNoanc => cc_minus_iz(false),
        N::CcMinusIx => cc_minus_ix(id.use_ancilla),
        N::AddControl => {
            let cx = from_list(2, 0, &[(Cx, &[0, 1])]);
            let opts = AddControlOptions {
                use_ancilla: id.use_ancilla,
                carry_ancilla: false,
            };
            add_control(&cx, opts, &SimConfig::default())?
        }
        N::MultiControlledX => multi_controlled_x(id.controls.expect("checked above"))?,
        N::ControlledT => controlled_t(id.use_ancilla),
    })
}
