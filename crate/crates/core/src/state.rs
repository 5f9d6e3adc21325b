//! Dense state vectors over up to four labeled qubits.
//!
//! Amplitudes are indexed big-endian: the first qubit in the order is the
//! most significant bit of the basis index, so `|q1 q2 e>` sits at
//! `4*q1 + 2*q2 + e`.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::qubit::QubitId;
use crate::random::OutcomeSource;

pub type Amplitude = Complex64;

pub const MAX_QUBITS: usize = 4;

/// Tolerance on the squared norm of an admitted state.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Tolerance on pairwise overlaps of a measurement basis.
pub const ORTHONORMAL_TOLERANCE: f64 = 1e-10;

/// Branches below this probability cannot be selected by a valid measurement.
const DEGENERATE_BRANCH: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    order: Vec<QubitId>,
    amps: Vec<Amplitude>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    pub result: u8,
    pub post_state: StateVector,
}

fn check_order(order: &[QubitId]) -> Result<()> {
    if order.is_empty() {
        return Err(Error::InvalidSubsystem("empty qubit order".into()));
    }
    if order.len() > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            max: MAX_QUBITS,
            got: order.len(),
        });
    }
    let mut seen = HashSet::new();
    for &q in order {
        if !seen.insert(q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

impl StateVector {
    /// Validated constructor: labels distinct, length `2^n`, finite entries,
    /// unit norm within [`NORM_TOLERANCE`].
    pub fn new(order: Vec<QubitId>, amps: Vec<Amplitude>) -> Result<Self> {
        check_order(&order)?;
        let expected = 1usize << order.len();
        if amps.len() != expected {
            return Err(Error::BadLength {
                expected,
                got: amps.len(),
            });
        }
        if let Some(i) = amps
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite(i));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { order, amps })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(order: Vec<QubitId>, amps: &[f64]) -> Result<Self> {
        Self::new(
            order,
            amps.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        )
    }

    /// Computational basis state `|index>`.
    pub fn basis(order: Vec<QubitId>, index: usize) -> Result<Self> {
        check_order(&order)?;
        let dim = 1usize << order.len();
        if index >= dim {
            return Err(Error::BadLength {
                expected: dim,
                got: index,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { order, amps })
    }

    /// Single qubit in `|0>`.
    pub fn zero(q: QubitId) -> Self {
        Self {
            order: vec![q],
            amps: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    pub fn qubit_order(&self) -> &[QubitId] {
        &self.order
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.order.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn contains(&self, q: QubitId) -> bool {
        self.order.contains(&q)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn mask_of(&self, q: QubitId) -> Result<usize> {
        let pos = self
            .order
            .iter()
            .position(|&x| x == q)
            .ok_or(Error::UnknownQubit(q))?;
        Ok(1 << (self.order.len() - 1 - pos))
    }

    /// `self ⊗ other`, with `other`'s qubits appended after `self`'s.
    pub fn tensor_product(&self, other: &StateVector) -> Result<StateVector> {
        if let Some(&dup) = other.order.iter().find(|q| self.order.contains(q)) {
            return Err(Error::DuplicateQubit(dup));
        }
        let mut order = self.order.clone();
        order.extend_from_slice(&other.order);
        if order.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                max: MAX_QUBITS,
                got: order.len(),
            });
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|&a| other.amps.iter().map(move |&b| a * b))
            .collect();
        Ok(StateVector { order, amps })
    }

    /// Flips `target` on every basis index whose `control` bit is set.
    pub fn apply_cnot(&self, control: QubitId, target: QubitId) -> Result<StateVector> {
        if control == target {
            return Err(Error::SameControlTarget(control));
        }
        let c = self.mask_of(control)?;
        let t = self.mask_of(target)?;
        let amps = (0..self.dim())
            .map(|i| {
                let src = if i & c != 0 { i ^ t } else { i };
                self.amps[src]
            })
            .collect();
        Ok(StateVector {
            order: self.order.clone(),
            amps,
        })
    }

    /// Born probabilities `[Pr(0), Pr(1)]` for a computational-basis
    /// measurement of `q`.
    pub fn outcome_probabilities(&self, q: QubitId) -> Result<[f64; 2]> {
        let m = self.mask_of(q)?;
        let mut p = [0.0; 2];
        for (i, a) in self.amps.iter().enumerate() {
            p[usize::from(i & m != 0)] += a.norm_sqr();
        }
        Ok(p)
    }

    /// Computational-basis measurement of `q`.
    ///
    /// The surviving branch is divided by the square root of its
    /// probability, computed before the collapse.
    pub fn measure_qubit(
        &self,
        q: QubitId,
        rng: &mut dyn OutcomeSource,
    ) -> Result<MeasurementOutcome> {
        let probs = self.outcome_probabilities(q)?;
        if ((probs[0] + probs[1]) - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(probs[0] + probs[1]));
        }
        let result = rng.choose(&probs);
        let p = probs[result];
        if p < DEGENERATE_BRANCH {
            return Err(Error::Invariant(format!(
                "measurement of {q} selected outcome {result} with probability {p}"
            )));
        }
        let m = self.mask_of(q)?;
        let scale = 1.0 / p.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if usize::from(i & m != 0) == result {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(MeasurementOutcome {
            result: result as u8,
            post_state: StateVector {
                order: self.order.clone(),
                amps,
            },
        })
    }

    /// `<self|other>`; both states must share the same qubit order.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.order != other.order {
            return Err(Error::InvalidSubsystem(format!(
                "qubit orders differ: {:?} vs {:?}",
                self.order, other.order
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probabilities `|<basis_i|self>|^2` of a projective measurement onto
    /// an orthonormal basis.
    pub fn project_onto_basis(&self, basis: &[StateVector]) -> Result<Vec<f64>> {
        check_orthonormal(basis)?;
        for (i, b) in basis.iter().enumerate() {
            if b.order != self.order {
                return Err(Error::BasisOrderMismatch(i));
            }
        }
        let probs: Vec<f64> = basis
            .iter()
            .map(|b| b.inner(self).map(|c| c.norm_sqr()))
            .collect::<Result<_>>()?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > ORTHONORMAL_TOLERANCE {
            return Err(Error::InvalidSubsystem(format!(
                "basis does not span the state (captured probability {total})"
            )));
        }
        Ok(probs)
    }

    /// `|<reference|self>|^2`.
    pub fn fidelity_to(&self, reference: &StateVector) -> Result<f64> {
        Ok(reference.inner(self)?.norm_sqr().min(1.0))
    }

    /// Partial trace onto `keep`; the result follows this state's qubit order.
    pub fn reduced_density(&self, keep: &[QubitId]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidSubsystem("nothing to keep".into()));
        }
        let mut keep_mask = 0usize;
        for &q in keep {
            let m = self.mask_of(q)?;
            if keep_mask & m != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            keep_mask |= m;
        }
        if keep.len() == self.num_qubits() {
            return Err(Error::InvalidSubsystem(
                "keep set equals the full system".into(),
            ));
        }
        let kept: Vec<QubitId> = self
            .order
            .iter()
            .copied()
            .filter(|q| keep.contains(q))
            .collect();
        let k = kept.len();
        let dim = 1usize << k;
        let traced_mask = (self.dim() - 1) & !keep_mask;
        let compress = |i: usize| -> usize {
            // gather kept bits, most significant first
            let n = self.num_qubits();
            let mut out = 0;
            for bit in (0..n).rev() {
                let m = 1 << bit;
                if keep_mask & m != 0 {
                    out = (out << 1) | usize::from(i & m != 0);
                }
            }
            out
        };
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i & traced_mask == j & traced_mask {
                    entries[compress(i) * dim + compress(j)] += self.amps[i] * self.amps[j].conj();
                }
            }
        }
        DensityMatrix::new(kept, entries)
    }
}

/// Rejects a basis whose Gram matrix differs from the identity by more than
/// [`ORTHONORMAL_TOLERANCE`], naming the first offending pair.
pub fn check_orthonormal(basis: &[StateVector]) -> Result<()> {
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let g = basis[i].inner(&basis[j])?;
            let expected = if i == j { 1.0 } else { 0.0 };
            let dev = (g - Complex64::new(expected, 0.0)).norm();
            if dev > ORTHONORMAL_TOLERANCE {
                return Err(Error::NonOrthonormalBasis {
                    i,
                    j,
                    overlap: g.norm(),
                });
            }
        }
    }
    Ok(())
}

/// Ket label like `|10>` for basis `index` over `n` qubits.
pub fn ket_label(index: usize, n: usize) -> String {
    let bits: String = (0..n)
        .rev()
        .map(|b| if index >> b & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("|{bits}>")
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() <= 1e-24 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if a.im == 0.0 {
                write!(f, "{}{}", a.re, ket_label(i, self.num_qubits()))?;
            } else {
                write!(
                    f,
                    "({}{:+}i){}",
                    a.re,
                    a.im,
                    ket_label(i, self.num_qubits())
                )?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
