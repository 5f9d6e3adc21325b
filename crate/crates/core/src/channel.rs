//! Two-phase channel timing: qubit 1 travels first, and qubit 2 only leaves
//! Alice once qubit 1 has reached Bob. An eavesdropper's hooks receive a
//! [`ChannelView`] that exposes gates and measurements on the qubits in
//! flight plus her own, and nothing else.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubit::QubitId;
use crate::random::OutcomeSource;
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ChannelPhase {
    Qubit1InFlight,
    Qubit1Delivered,
    Qubit2InFlight,
    BothDelivered,
}

impl ChannelPhase {
    /// The next phase; `BothDelivered` is terminal.
    pub fn advance(self) -> Result<ChannelPhase> {
        use ChannelPhase::*;
        match self {
            Qubit1InFlight => Ok(Qubit1Delivered),
            Qubit1Delivered => Ok(Qubit2InFlight),
            Qubit2InFlight => Ok(BothDelivered),
            BothDelivered => Err(Error::Invariant(
                "channel already delivered both qubits".into(),
            )),
        }
    }

    /// The signal qubit an eavesdropper may touch in this phase.
    pub fn in_flight(self) -> Option<QubitId> {
        match self {
            ChannelPhase::Qubit1InFlight => Some(QubitId::Qubit1),
            ChannelPhase::Qubit2InFlight => Some(QubitId::Qubit2),
            _ => None,
        }
    }
}

impl fmt::Display for ChannelPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelPhase::Qubit1InFlight => "qubit-1-in-flight",
            ChannelPhase::Qubit1Delivered => "qubit-1-delivered",
            ChannelPhase::Qubit2InFlight => "qubit-2-in-flight",
            ChannelPhase::BothDelivered => "both-delivered",
        };
        f.write_str(s)
    }
}

/// Restricted handle on the global state during one channel phase.
pub struct ChannelView<'a> {
    phase: ChannelPhase,
    accessible: Vec<QubitId>,
    state: &'a mut StateVector,
}

impl<'a> ChannelView<'a> {
    pub(crate) fn new(
        phase: ChannelPhase,
        eve_qubits: &[QubitId],
        state: &'a mut StateVector,
    ) -> Self {
        let mut accessible = eve_qubits.to_vec();
        accessible.extend(phase.in_flight());
        Self {
            phase,
            accessible,
            state,
        }
    }

    pub fn phase(&self) -> ChannelPhase {
        self.phase
    }

    pub fn accessible(&self) -> &[QubitId] {
        &self.accessible
    }

    fn check(&self, q: QubitId) -> Result<()> {
        if self.accessible.contains(&q) {
            Ok(())
        } else {
            Err(Error::PhaseViolation {
                phase: self.phase,
                qubit: q,
            })
        }
    }

    pub fn apply_cnot(&mut self, control: QubitId, target: QubitId) -> Result<()> {
        self.check(control)?;
        self.check(target)?;
        *self.state = self.state.apply_cnot(control, target)?;
        Ok(())
    }

    /// Computational-basis measurement; the collapsed state stays in the channel.
    pub fn measure(&mut self, q: QubitId, rng: &mut dyn OutcomeSource) -> Result<u8> {
        self.check(q)?;
        let out = self.state.measure_qubit(q, rng)?;
        *self.state = out.post_state;
        Ok(out.result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::RandomStream;
    use QubitId::*;

    #[test]
    fn phases_progress_monotonically() {
        let mut p = ChannelPhase::Qubit1InFlight;
        let mut seen = vec![p];
        while let Ok(next) = p.advance() {
            assert!(next > p);
            p = next;
            seen.push(p);
        }
        assert_eq!(seen.len(), 4);
        assert_eq!(p, ChannelPhase::BothDelivered);
    }

    #[test]
    fn view_rejects_qubit2_while_qubit1_in_flight() {
        let mut s = StateVector::basis(vec![Qubit1, Qubit2, EveAncilla], 0).unwrap();
        let mut v = ChannelView::new(ChannelPhase::Qubit1InFlight, &[EveAncilla], &mut s);
        assert!(v.apply_cnot(Qubit1, EveAncilla).is_ok());
        match v.apply_cnot(Qubit2, EveAncilla) {
            Err(Error::PhaseViolation { phase, qubit }) => {
                assert_eq!(phase, ChannelPhase::Qubit1InFlight);
                assert_eq!(qubit, Qubit2);
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut rng = RandomStream::from_seed(0);
        assert!(v.measure(Qubit2, &mut rng).is_err());
    }

    #[test]
    fn view_rejects_qubit1_after_delivery() {
        let mut s = StateVector::basis(vec![Qubit1, Qubit2, EveAncilla], 0).unwrap();
        let mut v = ChannelView::new(ChannelPhase::Qubit2InFlight, &[EveAncilla], &mut s);
        assert!(matches!(
            v.apply_cnot(Qubit1, EveAncilla),
            Err(Error::PhaseViolation { .. })
        ));
        assert_eq!(v.accessible(), &[EveAncilla, Qubit2]);
    }
}
