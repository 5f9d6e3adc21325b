//! Orthogonal-state key distribution rounds.
//!
//! Alice encodes a symbol into one of a set of orthogonal two-qubit states
//! and sends the two qubits one after the other. Bob performs an ideal
//! projective measurement onto the ensemble basis. There is no classical
//! channel.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use serde::Serialize;

use crate::channel::{ChannelPhase, ChannelView};
use crate::density::DensityMatrix;
use crate::eavesdrop::{AttackStrategy, EveKnowledge};
use crate::error::{Error, Result};
use crate::qubit::QubitId::{self, Qubit1, Qubit2};
use crate::random::{enumerate_branches, OutcomeSource};
use crate::state::{check_orthonormal, StateVector, ORTHONORMAL_TOLERANCE};

/// Slack applied to every strict inequality of the two-state parameter domain.
pub const DOMAIN_SLACK: f64 = 1e-9;

const SIGNAL_QUBITS: [QubitId; 2] = [Qubit1, Qubit2];

/// Index `i` of the transmitted state `|psi_i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KeySymbol(u8);

impl KeySymbol {
    pub const MAX: u8 = 3;

    pub fn new(value: u8) -> Result<Self> {
        if value > Self::MAX {
            return Err(Error::SymbolOutOfRange {
                symbol: value,
                size: usize::from(Self::MAX) + 1,
            });
        }
        Ok(KeySymbol(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }
}

impl fmt::Display for KeySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleKind {
    Cabello,
    #[serde(rename = "nonmax")]
    NonMax {
        alpha: f64,
        beta: f64,
    },
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleKind::Cabello => f.write_str("cabello"),
            EnsembleKind::NonMax { .. } => f.write_str("nonmax"),
        }
    }
}

/// Rejects parameters outside `0 < alpha, beta < pi/2`, `alpha != beta`,
/// `alpha, beta != pi/4`, each with [`DOMAIN_SLACK`].
pub fn check_nonmax_domain(alpha: f64, beta: f64) -> Result<()> {
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if !x.is_finite() {
            return Err(Error::Domain(format!("{name} must be finite")));
        }
        if x <= DOMAIN_SLACK {
            return Err(Error::Domain(format!("{name} > 0 violated ({name} = {x})")));
        }
        if x >= FRAC_PI_2 - DOMAIN_SLACK {
            return Err(Error::Domain(format!(
                "{name} < pi/2 violated ({name} = {x})"
            )));
        }
        if (x - FRAC_PI_4).abs() <= DOMAIN_SLACK {
            return Err(Error::Domain(format!(
                "{name} != pi/4 violated ({name} = {x})"
            )));
        }
    }
    if (alpha - beta).abs() <= DOMAIN_SLACK {
        return Err(Error::Domain(format!(
            "alpha != beta violated (alpha = {alpha}, beta = {beta})"
        )));
    }
    Ok(())
}

/// `psi(alpha) = cos(alpha)|01> + sin(alpha)|10>`, no domain check.
pub(crate) fn nonmax_psi(alpha: f64) -> StateVector {
    StateVector::from_real(
        SIGNAL_QUBITS.to_vec(),
        &[0.0, alpha.cos(), alpha.sin(), 0.0],
    )
    .expect("cos/sin amplitudes are normalized")
}

/// `phi(beta) = cos(beta)|00> + sin(beta)|11>`, no domain check.
pub(crate) fn nonmax_phi(beta: f64) -> StateVector {
    StateVector::from_real(SIGNAL_QUBITS.to_vec(), &[beta.cos(), 0.0, 0.0, beta.sin()])
        .expect("cos/sin amplitudes are normalized")
}

/// The alphabet of orthogonal two-qubit states Alice encodes into.
#[derive(Debug, Clone, PartialEq)]
pub struct StateEnsemble {
    kind: EnsembleKind,
    states: Vec<StateVector>,
}

impl StateEnsemble {
    /// `|00>`, `(|10>+|01>)/sqrt2`, `(|10>-|01>)/sqrt2`, `|11>`.
    pub fn cabello() -> Self {
        let h = FRAC_1_SQRT_2;
        let q = SIGNAL_QUBITS.to_vec();
        let states = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, h, h, 0.0],
            [0.0, -h, h, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
        .iter()
        .map(|a| StateVector::from_real(q.clone(), a).expect("normalized"))
        .collect();
        Self {
            kind: EnsembleKind::Cabello,
            states,
        }
    }

    /// The two non-maximally entangled states `psi(alpha)`, `phi(beta)`.
    pub fn nonmax(alpha: f64, beta: f64) -> Result<Self> {
        check_nonmax_domain(alpha, beta)?;
        Ok(Self {
            kind: EnsembleKind::NonMax { alpha, beta },
            states: vec![nonmax_psi(alpha), nonmax_phi(beta)],
        })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    /// Classical bits carried by one uniformly drawn symbol.
    pub fn bits_per_symbol(&self) -> f64 {
        (self.size() as f64).log2()
    }

    /// A symbol checked against this ensemble's alphabet.
    pub fn symbol(&self, value: u8) -> Result<KeySymbol> {
        if usize::from(value) >= self.size() {
            return Err(Error::SymbolOutOfRange {
                symbol: value,
                size: self.size(),
            });
        }
        KeySymbol::new(value)
    }

    pub fn symbols(&self) -> impl Iterator<Item = KeySymbol> + '_ {
        (0..self.size() as u8).map(KeySymbol)
    }
}

pub fn encode(ensemble: &StateEnsemble, symbol: KeySymbol) -> Result<StateVector> {
    ensemble
        .states
        .get(symbol.index())
        .cloned()
        .ok_or(Error::SymbolOutOfRange {
            symbol: symbol.value(),
            size: ensemble.size(),
        })
}

/// Outcome distribution of Bob's ensemble-basis measurement on a possibly
/// mixed two-qubit state.
pub fn decode_distribution(received: &DensityMatrix, ensemble: &StateEnsemble) -> Result<Vec<f64>> {
    check_orthonormal(&ensemble.states)?;
    let probs: Vec<f64> = ensemble
        .states
        .iter()
        .map(|b| received.fidelity_to(b))
        .collect::<Result<_>>()?;
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > ORTHONORMAL_TOLERANCE {
        return Err(Error::InvalidSubsystem(format!(
            "received state leaves the ensemble span (captured probability {total})"
        )));
    }
    Ok(probs)
}

/// Bob's projective measurement onto the ensemble basis.
pub fn bob_decode(
    received: &StateVector,
    ensemble: &StateEnsemble,
    rng: &mut dyn OutcomeSource,
) -> Result<KeySymbol> {
    if received.qubit_order() != SIGNAL_QUBITS {
        return Err(Error::InvalidSubsystem(format!(
            "Bob decodes (qubit1, qubit2), got {:?}",
            received.qubit_order()
        )));
    }
    let probs = received.project_onto_basis(&ensemble.states)?;
    KeySymbol::new(rng.choose(&probs) as u8)
}

fn bob_decode_mixed(
    received: &DensityMatrix,
    ensemble: &StateEnsemble,
    rng: &mut dyn OutcomeSource,
) -> Result<KeySymbol> {
    let probs = decode_distribution(received, ensemble)?;
    KeySymbol::new(rng.choose(&probs) as u8)
}

/// Everything observable about one round.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTranscript {
    pub alice_symbol: KeySymbol,
    pub bob_symbol: KeySymbol,
    pub eve_knowledge: EveKnowledge,
    pub bob_fidelity: f64,
    pub qubits_used: u64,
    pub classical_bits_used: u64,
}

/// One round: encode, qubit-1 hook, deliver qubit 1, qubit-2 hook, deliver
/// qubit 2, then Bob measures.
pub fn run_round(
    ensemble: &StateEnsemble,
    attack: &dyn AttackStrategy,
    symbol: KeySymbol,
    rng: &mut dyn OutcomeSource,
) -> Result<RoundTranscript> {
    let encoded = encode(ensemble, symbol)?;
    let ancilla = attack.prepare();
    let eve_qubits = ancilla.qubit_order().to_vec();
    if let Some(&q) = eve_qubits.iter().find(|q| SIGNAL_QUBITS.contains(q)) {
        return Err(Error::Invariant(format!(
            "attack {} prepared signal qubit {q} as its own",
            attack.name()
        )));
    }
    let mut global = encoded.tensor_product(&ancilla)?;

    let mut phase = ChannelPhase::Qubit1InFlight;
    attack.on_qubit1(&mut ChannelView::new(phase, &eve_qubits, &mut global), rng)?;
    phase = phase.advance()?;
    phase = phase.advance()?;
    let eve_knowledge = attack.on_qubit2(
        &mut ChannelView::new(phase, &eve_qubits, &mut global),
        &ensemble.kind(),
        rng,
    )?;
    phase.advance()?;
    eve_knowledge.validate(ensemble)?;

    let delivered = global.reduced_density(&SIGNAL_QUBITS)?;
    let bob_fidelity = delivered.fidelity_to(&encoded)?;
    let bob_symbol = bob_decode_mixed(&delivered, ensemble, rng)?;

    Ok(RoundTranscript {
        alice_symbol: symbol,
        bob_symbol,
        eve_knowledge,
        bob_fidelity,
        qubits_used: SIGNAL_QUBITS.len() as u64,
        classical_bits_used: 0,
    })
}

/// Every possible outcome of a round for a fixed symbol, with its exact
/// probability.
pub fn enumerate_round(
    ensemble: &StateEnsemble,
    attack: &dyn AttackStrategy,
    symbol: KeySymbol,
) -> Result<Vec<(f64, RoundTranscript)>> {
    enumerate_branches(|cursor| run_round(ensemble, attack, symbol, cursor))
}

/// `E = b_s / (q_t + b_t)`: secret bits over qubits plus classical bits spent.
pub fn efficiency(secret_bits: u64, qubits: u64, classical_bits: u64) -> Result<f64> {
    let denom = qubits
        .checked_add(classical_bits)
        .ok_or_else(|| Error::Config("qubit and classical bit counts overflow".into()))?;
    if denom == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(secret_bits as f64 / denom as f64)
}
