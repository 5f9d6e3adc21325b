//! Density matrices for reduced subsystem states.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::QubitId;
use crate::state::StateVector;

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// Hermitian, unit-trace, positive-semidefinite matrix over labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    order: Vec<QubitId>,
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// `entries` is row-major, `2^k x 2^k` for `k = order.len()`.
    pub fn new(order: Vec<QubitId>, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << order.len();
        if entries.len() != dim * dim {
            return Err(Error::BadLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let m = DMatrix::from_row_slice(dim, dim, &entries);
        for i in 0..dim {
            for j in 0..dim {
                let d = (m[(i, j)] - m[(j, i)].conj()).norm();
                if d > HERMITIAN_TOLERANCE {
                    return Err(Error::Invariant(format!(
                        "density matrix not Hermitian at ({i},{j}): deviation {d}"
                    )));
                }
            }
        }
        let rho = Self { order, m };
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::Invariant(format!("density matrix trace {tr}")));
        }
        if let Some(&low) = rho.eigenvalues().iter().find(|&&l| l < -EIGEN_TOLERANCE) {
            return Err(Error::Invariant(format!(
                "density matrix has eigenvalue {low}"
            )));
        }
        Ok(rho)
    }

    /// `|s><s|`.
    pub fn from_pure(s: &StateVector) -> Self {
        let a = s.amplitudes();
        let dim = a.len();
        let m = DMatrix::from_fn(dim, dim, |i, j| a[i] * a[j].conj());
        Self {
            order: s.qubit_order().to_vec(),
            m,
        }
    }

    pub fn qubit_order(&self) -> &[QubitId] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }

    /// `tr(self * other)`; zero exactly when the two states are orthogonal.
    pub fn trace_product(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let t = (&self.m * &other.m).trace();
        if t.im.abs() > HERMITIAN_TOLERANCE {
            return Err(Error::Invariant(format!(
                "trace product has imaginary part {}",
                t.im
            )));
        }
        Ok(t.re)
    }

    /// Largest entry-wise absolute difference.
    pub fn max_abs_difference(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `<reference|rho|reference>`, the fidelity of this (possibly mixed)
    /// state to a pure reference over the same qubits.
    pub fn fidelity_to(&self, reference: &StateVector) -> Result<f64> {
        if reference.qubit_order() != self.order.as_slice() {
            return Err(Error::InvalidSubsystem(format!(
                "reference is over {:?}, density matrix over {:?}",
                reference.qubit_order(),
                self.order
            )));
        }
        let a = reference.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += a[i].conj() * self.m[(i, j)] * a[j];
            }
        }
        Ok(acc.re.clamp(0.0, 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use QubitId::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn diag(order: Vec<QubitId>, d: &[f64]) -> DensityMatrix {
        let n = d.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &x) in d.iter().enumerate() {
            e[i * n + i] = Complex64::new(x, 0.0);
        }
        DensityMatrix::new(order, e).unwrap()
    }

    #[test]
    fn product_state_reduces_to_projector() {
        let s = StateVector::basis(vec![Qubit1, Qubit2], 0).unwrap();
        let rho = s.reduced_density(&[Qubit1]).unwrap();
        assert_eq!(rho, diag(vec![Qubit1], &[1.0, 0.0]));
        assert!((rho.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn entangled_pair_reduces_to_half_identity() {
        // |psi_1> = (|10>+|01>)/sqrt2. Block sums by hand: rho2[0][0] = |a_10|^2 = 1/2,
        // rho2[1][1] = |a_01|^2 = 1/2, off-diagonal a_00 a_01* + a_10 a_11* = 0.
        let s = StateVector::from_real(vec![Qubit1, Qubit2], &[0.0, H, H, 0.0]).unwrap();
        for keep in [Qubit1, Qubit2] {
            let rho = s.reduced_density(&[keep]).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let e = if i == j { 0.5 } else { 0.0 };
                    assert!((rho.entry(i, j) - Complex64::new(e, 0.0)).norm() < 1e-12);
                }
            }
            assert!((rho.purity() - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn nonmax_first_subsystem_closed_form() {
        let a = std::f64::consts::PI / 6.0;
        let s =
            StateVector::from_real(vec![Qubit1, Qubit2], &[0.0, a.cos(), a.sin(), 0.0]).unwrap();
        let rho = s.reduced_density(&[Qubit1]).unwrap();
        assert!((rho.entry(0, 0).re - a.cos().powi(2)).abs() < 1e-12);
        assert!((rho.entry(1, 1).re - a.sin().powi(2)).abs() < 1e-12);
        assert!(rho.entry(0, 1).norm() < 1e-12);
    }

    #[test]
    fn trace_products() {
        let p0 = diag(vec![Qubit1], &[1.0, 0.0]);
        let p1 = diag(vec![Qubit1], &[0.0, 1.0]);
        assert_eq!(p0.trace_product(&p1).unwrap(), 0.0);
        assert!((p0.trace_product(&p0).unwrap() - 1.0).abs() < 1e-12);

        let (a, b) = (std::f64::consts::PI / 6.0, std::f64::consts::PI / 3.0);
        let ra = diag(vec![Qubit1], &[a.cos().powi(2), a.sin().powi(2)]);
        let rb = diag(vec![Qubit1], &[b.cos().powi(2), b.sin().powi(2)]);
        assert!((ra.trace_product(&rb).unwrap() - 0.375).abs() < 1e-12);

        let big = diag(vec![Qubit1, Qubit2], &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            p0.trace_product(&big),
            Err(Error::DimensionMismatch(2, 4))
        ));
    }

    #[test]
    fn rejects_invalid_matrices() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(DensityMatrix::new(vec![Qubit1], vec![c(0.5), c(0.0), c(0.0), c(0.6)]).is_err());
        assert!(DensityMatrix::new(vec![Qubit1], vec![c(0.5), c(0.2), c(0.0), c(0.5)]).is_err());
        assert!(DensityMatrix::new(vec![Qubit1], vec![c(1.5), c(0.0), c(0.0), c(-0.5)]).is_err());
    }

    #[test]
    fn mixed_fidelity() {
        let rho = diag(vec![Qubit1], &[0.25, 0.75]);
        let one = StateVector::basis(vec![Qubit1], 1).unwrap();
        assert!((rho.fidelity_to(&one).unwrap() - 0.75).abs() < 1e-12);
        let pure = DensityMatrix::from_pure(&one);
        assert!((pure.fidelity_to(&one).unwrap() - 1.0).abs() < 1e-12);
    }
}
