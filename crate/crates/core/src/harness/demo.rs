//! `attack-demo`: the double-CNOT attack on one four-state symbol, step by step.

use std::fmt::Write as _;

use serde::Serialize;

use super::format::{json_real, real17, OutputFormat};
use crate::eavesdrop::{EveKnowledge, SymbolSet};
use crate::error::{Error, Result};
use crate::protocol::{encode, KeySymbol, StateEnsemble};
use crate::qubit::QubitId::{EveAncilla, Qubit1, Qubit2};
use crate::random::RandomStream;
use crate::state::{ket_label, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub basis: String,
    #[serde(serialize_with = "json_real")]
    pub re: f64,
    #[serde(serialize_with = "json_real")]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoStep {
    pub step: String,
    pub outcome: Option<u8>,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackTrace {
    pub symbol: KeySymbol,
    pub qubit_order: Vec<String>,
    pub steps: Vec<DemoStep>,
    pub eve_knowledge: EveKnowledge,
}

fn snapshot(step: &str, outcome: Option<u8>, s: &StateVector) -> DemoStep {
    DemoStep {
        step: step.to_owned(),
        outcome,
        amplitudes: s
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| AmplitudeEntry {
                basis: ket_label(i, s.num_qubits()),
                re: a.re,
                im: a.im,
            })
            .collect(),
    }
}

/// Global state of (qubit1, qubit2, eve-ancilla) after each attack step.
pub fn attack_demo(symbol: u8, seed: u64) -> Result<AttackTrace> {
    let ensemble = StateEnsemble::cabello();
    let symbol = ensemble.symbol(symbol)?;
    let mut rng = RandomStream::from_seed(seed);
    let mut steps = Vec::new();

    let mut s = encode(&ensemble, symbol)?.tensor_product(&StateVector::zero(EveAncilla))?;
    steps.push(snapshot("encode", None, &s));
    s = s.apply_cnot(Qubit1, EveAncilla)?;
    steps.push(snapshot("cnot qubit1 -> eve-ancilla", None, &s));
    s = s.apply_cnot(Qubit2, EveAncilla)?;
    steps.push(snapshot("cnot qubit2 -> eve-ancilla", None, &s));
    let m = s.measure_qubit(EveAncilla, &mut rng)?;
    s = m.post_state;
    steps.push(snapshot("measure eve-ancilla", Some(m.result), &s));

    let sym = |v| KeySymbol::new(v).expect("literal");
    let eve_knowledge = if m.result == 1 {
        EveKnowledge::Partition(SymbolSet::from_symbols([sym(1), sym(2)]))
    } else {
        let q2 = s.measure_qubit(Qubit2, &mut rng)?;
        s = q2.post_state;
        steps.push(snapshot("measure qubit2", Some(q2.result), &s));
        EveKnowledge::Exact(if q2.result == 0 { sym(0) } else { sym(3) })
    };

    Ok(AttackTrace {
        symbol,
        qubit_order: s.qubit_order().iter().map(|q| q.to_string()).collect(),
        steps,
        eve_knowledge,
    })
}

impl AttackTrace {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Invariant(e.to_string())),
            OutputFormat::Csv => {
                let mut s = String::from("step,outcome,basis,re,im\n");
                for st in &self.steps {
                    let outcome = st.outcome.map(|o| o.to_string()).unwrap_or_default();
                    for a in &st.amplitudes {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            st.step,
                            outcome,
                            a.basis,
                            real17(a.re),
                            real17(a.im)
                        );
                    }
                }
                let _ = writeln!(s, "knowledge,,,{},", self.eve_knowledge);
                Ok(s)
            }
            OutputFormat::Text => {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "symbol {}  order ({})",
                    self.symbol,
                    self.qubit_order.join(", ")
                );
                for st in &self.steps {
                    let terms: Vec<String> = st
                        .amplitudes
                        .iter()
                        .filter(|a| a.re != 0.0 || a.im != 0.0)
                        .map(|a| {
                            if a.im == 0.0 {
                                format!("{}{}", real17(a.re), a.basis)
                            } else {
                                format!("({}{:+}i){}", real17(a.re), a.im, a.basis)
                            }
                        })
                        .collect();
                    let outcome = st.outcome.map(|o| format!(" -> {o}")).unwrap_or_default();
                    let _ = writeln!(s, "{:<28}{:<6}{}", st.step, outcome, terms.join(" + "));
                }
                let _ = writeln!(s, "eve knows {}", self.eve_knowledge);
                Ok(s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_zero_trace() {
        let t = attack_demo(0, 1).unwrap();
        assert_eq!(t.steps.len(), 5);
        assert_eq!(t.steps[3].outcome, Some(0));
        assert_eq!(t.steps[4].outcome, Some(0));
        assert_eq!(t.eve_knowledge.to_string(), "exact(0)");
    }

    #[test]
    fn symbol_one_concentrates_ancilla_on_one() {
        let t = attack_demo(1, 1).unwrap();
        let after = &t.steps[2];
        for a in &after.amplitudes {
            if a.re != 0.0 {
                assert!(a.basis.ends_with("1>"), "{}", a.basis);
            }
        }
        assert_eq!(t.steps.len(), 4);
        assert_eq!(t.eve_knowledge.to_string(), "partition{1,2}");
    }

    #[test]
    fn symbol_three_and_range() {
        assert_eq!(
            attack_demo(3, 0).unwrap().eve_knowledge.to_string(),
            "exact(3)"
        );
        assert!(attack_demo(4, 0).is_err());
    }

    #[test]
    fn renders_all_formats() {
        let t = attack_demo(2, 0).unwrap();
        for f in [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text] {
            assert!(t.render(f).unwrap().contains("partition{1,2}"));
        }
    }
}
