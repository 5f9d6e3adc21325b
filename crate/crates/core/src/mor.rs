//! Auditor for the no-cloning criterion for orthogonal bipartite states.
//!
//! Two orthogonal states are claimed unclonable under sequential access when
//! the first subsystem's reduced states are neither orthogonal nor
//! identical and the second subsystem's reduced states are not orthogonal.
//! The auditor computes those reduced states and reports each sub-test with
//! the number it was decided from.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocol::{check_nonmax_domain, nonmax_phi, nonmax_psi};
use crate::qubit::QubitId::{Qubit1, Qubit2};
use crate::state::{StateVector, ORTHONORMAL_TOLERANCE};

/// Threshold separating orthogonal from non-orthogonal, and identical from
/// non-identical.
pub const MOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorWitnesses {
    pub tr_rho1_product: f64,
    pub rho1_distance: f64,
    pub tr_rho2_product: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorReport {
    pub rho1_orthogonal: bool,
    pub rho1_identical: bool,
    pub rho2_orthogonal: bool,
    pub criterion_satisfied: bool,
    pub witnesses: MorWitnesses,
}

impl MorReport {
    fn from_witnesses(w: MorWitnesses) -> Self {
        let rho1_orthogonal = w.tr_rho1_product <= MOR_TOLERANCE;
        let rho1_identical = w.rho1_distance <= MOR_TOLERANCE;
        let rho2_orthogonal = w.tr_rho2_product <= MOR_TOLERANCE;
        MorReport {
            rho1_orthogonal,
            rho1_identical,
            rho2_orthogonal,
            criterion_satisfied: !rho1_orthogonal && !rho1_identical && !rho2_orthogonal,
            witnesses: w,
        }
    }
}

/// Evaluates the criterion for two orthogonal states over (qubit1, qubit2).
pub fn mor_check(a: &StateVector, b: &StateVector) -> Result<MorReport> {
    for s in [a, b] {
        if s.qubit_order() != [Qubit1, Qubit2] {
            return Err(Error::InvalidSubsystem(format!(
                "expected a state over (qubit1, qubit2), got {:?}",
                s.qubit_order()
            )));
        }
    }
    let overlap = a.inner(b)?.norm();
    if overlap > ORTHONORMAL_TOLERANCE {
        return Err(Error::NotOrthogonal(overlap));
    }
    let (a1, b1) = (a.reduced_density(&[Qubit1])?, b.reduced_density(&[Qubit1])?);
    let (a2, b2) = (a.reduced_density(&[Qubit2])?, b.reduced_density(&[Qubit2])?);
    Ok(MorReport::from_witnesses(MorWitnesses {
        tr_rho1_product: a1.trace_product(&b1)?,
        rho1_distance: a1.max_abs_difference(&b1)?,
        tr_rho2_product: a2.trace_product(&b2)?,
    }))
}

/// Per-pair reports keyed by the two state indices.
pub type PairReports = Vec<((usize, usize), MorReport)>;

/// Checks every pair of an ensemble; the criterion holds for the ensemble
/// when it holds for all pairs.
pub fn mor_check_all(states: &[StateVector]) -> Result<(bool, PairReports)> {
    let mut reports = Vec::new();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            reports.push(((i, j), mor_check(&states[i], &states[j])?));
        }
    }
    let all = reports.iter().all(|(_, r)| r.criterion_satisfied);
    Ok((all, reports))
}

/// `psi = cos(alpha)|01> + sin(alpha)|10>` and
/// `phi = cos(beta)|00> + sin(beta)|11>`.
pub fn make_nonmax_pair(alpha: f64, beta: f64) -> Result<(StateVector, StateVector)> {
    check_nonmax_domain(alpha, beta)?;
    Ok((nonmax_psi(alpha), nonmax_phi(beta)))
}
