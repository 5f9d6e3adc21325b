//! Eavesdropping strategies.
//!
//! An [`AttackStrategy`] brings her own qubits (prepared fresh every round)
//! and gets two hooks, one per channel phase. Each hook sees a
//! [`ChannelView`] that only admits operations on the qubit currently in
//! flight and on Eve's own qubits.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::channel::ChannelView;
use crate::error::{Error, Result};
use crate::info::mutual_information_bits;
use crate::protocol::{enumerate_round, EnsembleKind, KeySymbol, StateEnsemble};
use crate::qubit::QubitId::{EveAncilla, Qubit1, Qubit2};
use crate::random::OutcomeSource;
use crate::state::StateVector;

/// Set of key symbols, stored as a bitmask over `0..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymbolSet(u8);

impl SymbolSet {
    pub fn from_symbols(symbols: impl IntoIterator<Item = KeySymbol>) -> Self {
        SymbolSet(symbols.into_iter().fold(0, |m, s| m | 1 << s.value()))
    }

    pub fn contains(self, s: KeySymbol) -> bool {
        self.0 >> s.value() & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = KeySymbol> {
        (0..=KeySymbol::MAX)
            .filter(move |b| self.0 >> b & 1 == 1)
            .map(|b| KeySymbol::new(b).expect("in range"))
    }
}

/// What Eve has learned about Alice's symbol at the end of a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EveKnowledge {
    None,
    /// The symbol lies in this set.
    Partition(SymbolSet),
    Exact(KeySymbol),
}

impl EveKnowledge {
    pub fn is_exact(self) -> bool {
        matches!(self, EveKnowledge::Exact(_))
    }

    pub fn is_partition(self) -> bool {
        matches!(self, EveKnowledge::Partition(_))
    }

    /// Whether the claim is true of `symbol`. `None` claims nothing.
    pub fn is_consistent_with(self, symbol: KeySymbol) -> bool {
        match self {
            EveKnowledge::None => true,
            EveKnowledge::Partition(set) => set.contains(symbol),
            EveKnowledge::Exact(s) => s == symbol,
        }
    }

    /// Partitions must be strict subsets with at least two members; exact
    /// symbols must belong to the ensemble.
    pub fn validate(self, ensemble: &StateEnsemble) -> Result<()> {
        match self {
            EveKnowledge::None => Ok(()),
            EveKnowledge::Exact(s) => ensemble.symbol(s.value()).map(|_| ()),
            EveKnowledge::Partition(set) => {
                let in_range = set.iter().all(|s| s.index() < ensemble.size());
                if set.len() < 2 || set.len() >= ensemble.size() || !in_range {
                    Err(Error::Invariant(format!(
                        "malformed partition knowledge {self}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for EveKnowledge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EveKnowledge::None => f.write_str("none"),
            EveKnowledge::Exact(s) => write!(f, "exact({s})"),
            EveKnowledge::Partition(set) => {
                let items: Vec<String> = set.iter().map(|s| s.to_string()).collect();
                write!(f, "partition{{{}}}", items.join(","))
            }
        }
    }
}

impl Serialize for EveKnowledge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub trait AttackStrategy: Send + Sync {
    /// Name accepted on the command line.
    fn name(&self) -> &'static str;

    /// Eve's private qubits for one round.
    fn prepare(&self) -> StateVector {
        StateVector::zero(EveAncilla)
    }

    /// Called while qubit 1 is in flight.
    fn on_qubit1(&self, view: &mut ChannelView<'_>, rng: &mut dyn OutcomeSource) -> Result<()>;

    /// Called while qubit 2 is in flight; returns what Eve now knows.
    fn on_qubit2(
        &self,
        view: &mut ChannelView<'_>,
        ensemble: &EnsembleKind,
        rng: &mut dyn OutcomeSource,
    ) -> Result<EveKnowledge>;

    fn supports(&self, _ensemble: &EnsembleKind) -> bool {
        true
    }
}

fn sym(v: u8) -> KeySymbol {
    KeySymbol::new(v).expect("literal symbol")
}

/// Control condition: Eve does nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoAttack;

pub fn no_attack() -> NoAttack {
    NoAttack
}

impl AttackStrategy for NoAttack {
    fn name(&self) -> &'static str {
        "none"
    }

    fn on_qubit1(&self, _: &mut ChannelView<'_>, _: &mut dyn OutcomeSource) -> Result<()> {
        Ok(())
    }

    fn on_qubit2(
        &self,
        _: &mut ChannelView<'_>,
        _: &EnsembleKind,
        _: &mut dyn OutcomeSource,
    ) -> Result<EveKnowledge> {
        Ok(EveKnowledge::None)
    }
}

/// CNOT each signal qubit onto a `|0>` ancilla as it passes. The ancilla
/// ends up holding the parity of the two signal bits without disturbing
/// either qubit, and Eve reads it out.
///
/// On the four-state ensemble parity 1 means `{1, 2}`. Parity 0 means
/// `|00>` or `|11>`, which a computational-basis measurement of qubit 2
/// separates without disturbance. On the two-state ensemble parity alone
/// identifies the symbol: `psi(alpha)` has odd parity, `phi(beta)` even.
#[derive(Debug, Clone, Copy, Default)]
pub struct DoubleCnot;

pub fn double_cnot_attack() -> DoubleCnot {
    DoubleCnot
}

impl AttackStrategy for DoubleCnot {
    fn name(&self) -> &'static str {
        "double-cnot"
    }

    fn on_qubit1(&self, view: &mut ChannelView<'_>, _: &mut dyn OutcomeSource) -> Result<()> {
        view.apply_cnot(Qubit1, EveAncilla)
    }

    fn on_qubit2(
        &self,
        view: &mut ChannelView<'_>,
        ensemble: &EnsembleKind,
        rng: &mut dyn OutcomeSource,
    ) -> Result<EveKnowledge> {
        view.apply_cnot(Qubit2, EveAncilla)?;
        let parity = view.measure(EveAncilla, rng)?;
        Ok(match (ensemble, parity) {
            (EnsembleKind::Cabello, 1) => {
                EveKnowledge::Partition(SymbolSet::from_symbols([sym(1), sym(2)]))
            }
            (EnsembleKind::Cabello, _) => match view.measure(Qubit2, rng)? {
                0 => EveKnowledge::Exact(sym(0)),
                _ => EveKnowledge::Exact(sym(3)),
            },
            (EnsembleKind::NonMax { .. }, 1) => EveKnowledge::Exact(sym(0)),
            (EnsembleKind::NonMax { .. }, _) => EveKnowledge::Exact(sym(1)),
        })
    }
}

/// Measure each signal qubit in the computational basis and resend it.
/// The bit read from qubit 1 is kept by copying it onto Eve's ancilla.
#[derive(Debug, Clone, Copy, Default)]
pub struct InterceptResend;

pub fn intercept_resend_attack() -> InterceptResend {
    InterceptResend
}

impl AttackStrategy for InterceptResend {
    fn name(&self) -> &'static str {
        "intercept-resend"
    }

    fn on_qubit1(&self, view: &mut ChannelView<'_>, rng: &mut dyn OutcomeSource) -> Result<()> {
        view.measure(Qubit1, rng)?;
        view.apply_cnot(Qubit1, EveAncilla)
    }

    fn on_qubit2(
        &self,
        view: &mut ChannelView<'_>,
        _: &EnsembleKind,
        rng: &mut dyn OutcomeSource,
    ) -> Result<EveKnowledge> {
        let b1 = view.measure(EveAncilla, rng)?;
        let b2 = view.measure(Qubit2, rng)?;
        let guess = match (b1, b2) {
            (0, 0) => sym(0),
            (1, 1) => sym(3),
            _ => sym(1 + rng.choose(&[0.5, 0.5]) as u8),
        };
        Ok(EveKnowledge::Exact(guess))
    }

    fn supports(&self, ensemble: &EnsembleKind) -> bool {
        matches!(ensemble, EnsembleKind::Cabello)
    }
}

pub const ATTACK_NAMES: [&str; 3] = ["none", "double-cnot", "intercept-resend"];

pub fn attack_by_name(name: &str) -> Result<Box<dyn AttackStrategy>> {
    match name {
        "none" => Ok(Box::new(NoAttack)),
        "double-cnot" => Ok(Box::new(DoubleCnot)),
        "intercept-resend" => Ok(Box::new(InterceptResend)),
        other => Err(Error::Config(format!(
            "unknown attack {other:?}; expected one of {}",
            ATTACK_NAMES.join(", ")
        ))),
    }
}

/// Exact joint distribution of (Alice's symbol, Eve's knowledge) under a
/// uniform symbol prior, by enumerating every measurement branch.
pub fn knowledge_distribution(
    ensemble: &StateEnsemble,
    attack: &dyn AttackStrategy,
) -> Result<BTreeMap<(KeySymbol, EveKnowledge), f64>> {
    let prior = 1.0 / ensemble.size() as f64;
    let mut joint = BTreeMap::new();
    for symbol in ensemble.symbols() {
        for (p, t) in enumerate_round(ensemble, attack, symbol)? {
            *joint.entry((symbol, t.eve_knowledge)).or_insert(0.0) += prior * p;
        }
    }
    Ok(joint)
}

/// `I(Alice; Eve)` in bits, computed exactly.
pub fn eve_mutual_information(
    ensemble: &StateEnsemble,
    attack: &dyn AttackStrategy,
) -> Result<f64> {
    Ok(mutual_information_bits(&knowledge_distribution(
        ensemble, attack,
    )?))
}

/// Applies only the two CNOTs to `|s>|0>_e`, without any readout.
pub fn double_cnot_unitary_part(encoded: &StateVector) -> Result<StateVector> {
    encoded
        .tensor_product(&StateVector::zero(EveAncilla))?
        .apply_cnot(Qubit1, EveAncilla)?
        .apply_cnot(Qubit2, EveAncilla)
}
