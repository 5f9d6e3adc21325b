//! Exact simulation of orthogonal-state quantum key distribution.
//!
//! Alice sends one of four orthogonal two-qubit states, one qubit at a time,
//! so an eavesdropper never holds both qubits at once. This crate simulates
//! that protocol exactly (dense state vectors, at most four qubits), runs
//! the double-CNOT attack against it, and audits the no-cloning criterion
//! for orthogonal entangled pairs.
//!
//! ```
//! use orthoqkd::{double_cnot_attack, eve_mutual_information, StateEnsemble};
//!
//! let bits = eve_mutual_information(&StateEnsemble::cabello(), &double_cnot_attack()).unwrap();
//! assert!((bits - 1.5).abs() < 1e-12);
//! ```

pub mod channel;
pub mod density;
pub mod eavesdrop;
pub mod error;
pub mod harness;
pub mod info;
pub mod mor;
pub mod protocol;
pub mod qubit;
pub mod random;
pub mod state;

pub use channel::{ChannelPhase, ChannelView};
pub use density::DensityMatrix;
pub use eavesdrop::{
    attack_by_name, double_cnot_attack, double_cnot_unitary_part, eve_mutual_information,
    intercept_resend_attack, knowledge_distribution, no_attack, AttackStrategy, DoubleCnot,
    EveKnowledge, InterceptResend, NoAttack, SymbolSet, ATTACK_NAMES,
};
pub use error::{Error, Result};
pub use mor::{make_nonmax_pair, mor_check, mor_check_all, MorReport, MorWitnesses};
pub use protocol::{
    bob_decode, check_nonmax_domain, decode_distribution, efficiency, encode, enumerate_round,
    run_round, EnsembleKind, KeySymbol, RoundTranscript, StateEnsemble,
};
pub use qubit::QubitId;
pub use random::{enumerate_branches, BranchCursor, OutcomeSource, RandomStream};
pub use state::{Amplitude, MeasurementOutcome, StateVector};
