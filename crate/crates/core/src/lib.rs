//! Exact Clifford+T circuit toolkit.
//!
//! * [`ring`]: exact scalars in Z[1/√2, ω].
//! * [`circuit`]: gate/circuit model, T-count, T-depth and depth metrics.
//! * [`text`]: the line-oriented circuit format.
//! * [`sim`]: exact state-vector simulation, unitary extraction and
//!   equivalence checking.
//! * [`constructions`]: low-T-depth circuits for Toffoli and related gates.
//! * [`rewrite`]: ancilla-based rewriting of almost-classical+T circuits to
//!   T-depth 1.
//! * [`obstruction`]: the expectation-value certificate that rules out any
//!   T-depth-1 implementation.

pub mod circuit;
pub mod constructions;
pub mod obstruction;
pub mod rewrite;
pub mod ring;
pub mod sim;
pub mod text;

pub use circuit::{Circuit, CircuitError, Gate, GateKind, Metrics};
pub use constructions::{build, ConstructionError, ConstructionId, ConstructionName};
pub use obstruction::{obstruction_verdict, Conclusion, ObstructionError, Verdict};
pub use rewrite::{rewrite_budgeted, rewrite_tdepth1, validate_gateset, RewriteError};
pub use ring::{ratio_is_rational, Dyadic, RealValue, RingError, RingScalar};
pub use sim::{ExactMatrix, ExactState, SimConfig, SimError};
pub use text::{emit, parse, SourceError};
