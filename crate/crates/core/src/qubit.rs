use std::fmt;

use serde::Serialize;

/// Label of one tensor factor in a [`StateVector`](crate::StateVector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QubitId {
    Qubit1,
    Qubit2,
    EveAncilla,
    Aux,
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QubitId::Qubit1 => "qubit1",
            QubitId::Qubit2 => "qubit2",
            QubitId::EveAncilla => "eve-ancilla",
            QubitId::Aux => "aux",
        };
        f.write_str(s)
    }
}
