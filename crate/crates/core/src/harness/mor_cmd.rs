//! `mor-check`: the criterion audit plus the double-CNOT attack on the same pair.

use std::fmt::Write as _;

use serde::Serialize;

use super::format::{json_real, real17, OutputFormat};
use crate::eavesdrop::{double_cnot_attack, eve_mutual_information, EveKnowledge};
use crate::error::{Error, Result};
use crate::mor::{make_nonmax_pair, mor_check};
use crate::protocol::{enumerate_round, StateEnsemble};

/// Certainty threshold for "the attack identifies the symbol on every branch".
const CERTAINTY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorCheckOutput {
    #[serde(serialize_with = "json_real")]
    pub alpha: f64,
    #[serde(serialize_with = "json_real")]
    pub beta: f64,
    pub rho1_orthogonal: bool,
    pub rho1_identical: bool,
    pub rho2_orthogonal: bool,
    pub criterion_satisfied: bool,
    #[serde(serialize_with = "json_real")]
    pub tr_rho1_product: f64,
    #[serde(serialize_with = "json_real")]
    pub rho1_distance: f64,
    #[serde(serialize_with = "json_real")]
    pub tr_rho2_product: f64,
    /// Eve names the correct symbol with probability 1 for both states.
    pub attack_distinguishes: bool,
    /// Smallest fidelity of Bob's delivered state over all branches.
    #[serde(serialize_with = "json_real")]
    pub attack_min_fidelity: f64,
    #[serde(serialize_with = "json_real")]
    pub eve_mutual_information_bits: f64,
}

/// Audits the pair `psi(alpha)`, `phi(beta)` and runs the double-CNOT
/// attack on it exhaustively.
pub fn mor_check_pair(alpha: f64, beta: f64) -> Result<MorCheckOutput> {
    let (psi, phi) = make_nonmax_pair(alpha, beta)?;
    let report = mor_check(&psi, &phi)?;
    let ensemble = StateEnsemble::nonmax(alpha, beta)?;
    let attack = double_cnot_attack();
    let mut distinguishes = true;
    let mut min_fidelity = 1.0f64;
    for symbol in ensemble.symbols() {
        let mut correct = 0.0;
        for (p, t) in enumerate_round(&ensemble, &attack, symbol)? {
            if t.eve_knowledge == EveKnowledge::Exact(symbol) {
                correct += p;
            }
            min_fidelity = min_fidelity.min(t.bob_fidelity);
        }
        distinguishes &= (correct - 1.0).abs() <= CERTAINTY_TOLERANCE;
    }
    Ok(MorCheckOutput {
        alpha,
        beta,
        rho1_orthogonal: report.rho1_orthogonal,
        rho1_identical: report.rho1_identical,
        rho2_orthogonal: report.rho2_orthogonal,
        criterion_satisfied: report.criterion_satisfied,
        tr_rho1_product: report.witnesses.tr_rho1_product,
        rho1_distance: report.witnesses.rho1_distance,
        tr_rho2_product: report.witnesses.tr_rho2_product,
        attack_distinguishes: distinguishes,
        attack_min_fidelity: min_fidelity,
        eve_mutual_information_bits: eve_mutual_information(&ensemble, &attack)?,
    })
}

impl MorCheckOutput {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Invariant(e.to_string())),
            OutputFormat::Csv => {
                let header = [
                    "alpha",
                    "beta",
                    "rho1_orthogonal",
                    "rho1_identical",
                    "rho2_orthogonal",
                    "criterion_satisfied",
                    "tr_rho1_product",
                    "rho1_distance",
                    "tr_rho2_product",
                    "attack_distinguishes",
                    "attack_min_fidelity",
                    "eve_mutual_information_bits",
                ];
                let record = [
                    real17(self.alpha),
                    real17(self.beta),
                    self.rho1_orthogonal.to_string(),
                    self.rho1_identical.to_string(),
                    self.rho2_orthogonal.to_string(),
                    self.criterion_satisfied.to_string(),
                    real17(self.tr_rho1_product),
                    real17(self.rho1_distance),
                    real17(self.tr_rho2_product),
                    self.attack_distinguishes.to_string(),
                    real17(self.attack_min_fidelity),
                    real17(self.eve_mutual_information_bits),
                ];
                Ok(format!("{}\n{}\n", header.join(","), record.join(",")))
            }
            OutputFormat::Text => {
                let mut s = String::new();
                let yn = |b: bool| if b { "yes" } else { "no" };
                let _ = writeln!(
                    s,
                    "alpha = {}, beta = {}",
                    real17(self.alpha),
                    real17(self.beta)
                );
                let _ = writeln!(
                    s,
                    "rho1 orthogonal      {:<4} tr(rho1_a rho1_b) = {}",
                    yn(self.rho1_orthogonal),
                    real17(self.tr_rho1_product)
                );
                let _ = writeln!(
                    s,
                    "rho1 identical       {:<4} max |rho1_a - rho1_b| = {}",
                    yn(self.rho1_identical),
                    real17(self.rho1_distance)
                );
                let _ = writeln!(
                    s,
                    "rho2 orthogonal      {:<4} tr(rho2_a rho2_b) = {}",
                    yn(self.rho2_orthogonal),
                    real17(self.tr_rho2_product)
                );
                let _ = writeln!(s, "criterion satisfied  {}", yn(self.criterion_satisfied));
                let _ = writeln!(
                    s,
                    "double-cnot attack   distinguishes: {}, min Bob fidelity {}, I(A;E) = {} bits",
                    yn(self.attack_distinguishes),
                    real17(self.attack_min_fidelity),
                    real17(self.eve_mutual_information_bits)
                );
                Ok(s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn example_point() {
        let out = mor_check_pair(PI / 6.0, PI / 3.0).unwrap();
        assert!(out.criterion_satisfied && out.attack_distinguishes);
        assert!((out.tr_rho1_product - 0.375).abs() < 1e-10);
        assert!((out.tr_rho2_product - 0.625).abs() < 1e-10);
        assert!((out.attack_min_fidelity - 1.0).abs() < 1e-12);
        let json: serde_json::Value =
            serde_json::from_str(&out.render(OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(json["criterion_satisfied"], true);
        assert_eq!(json["attack_distinguishes"], true);
    }

    #[test]
    fn domain_errors() {
        assert!(mor_check_pair(PI / 4.0, 1.0).is_err());
        assert!(mor_check_pair(0.3, 0.3).is_err());
    }
}
