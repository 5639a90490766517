//! Synthesis of Clifford unitaries as two layers of commuting joint Pauli
//! measurements, with an optimal A* synthesizer and simulation oracles.

pub mod astar;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod involution;
pub mod oracle;
pub mod pauli;
pub mod schedule;
pub mod synthesis;
pub mod tableau;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use pauli::PauliObservable;
pub use synthesis::{synthesize, Gate, GateSequence, SynthesisResult};
pub use tableau::CliffordTableau;
