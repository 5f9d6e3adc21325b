//! Seeded Monte-Carlo runs over many rounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::format::{json_opt_real, json_real, real17, OutputFormat};
use crate::eavesdrop::{attack_by_name, eve_mutual_information, AttackStrategy, EveKnowledge};
use crate::error::{Error, Result};
use crate::info::mutual_information_bits;
use crate::protocol::{efficiency, run_round, EnsembleKind, KeySymbol, StateEnsemble};
use crate::random::{RandomStream, STREAM_SPLIT};

/// Rounds per work item. Each chunk is tallied sequentially and chunks are
/// merged in index order, so the result does not depend on thread count.
const CHUNK_ROUNDS: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub rounds: u64,
    pub seed: u64,
    pub attack_name: String,
    pub ensemble: EnsembleKind,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            rounds: 10_000,
            seed: 0,
            attack_name: "double-cnot".into(),
            ensemble: EnsembleKind::Cabello,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }
}

impl SimulationConfig {
    /// Checks the configuration and builds the ensemble and attack it names.
    pub fn resolve(&self) -> Result<(StateEnsemble, Box<dyn AttackStrategy>)> {
        if self.rounds == 0 {
            return Err(Error::Config("rounds must be at least 1".into()));
        }
        let ensemble = match self.ensemble {
            EnsembleKind::Cabello => StateEnsemble::cabello(),
            EnsembleKind::NonMax { alpha, beta } => StateEnsemble::nonmax(alpha, beta)?,
        };
        let attack = attack_by_name(&self.attack_name)?;
        if !attack.supports(&ensemble.kind()) {
            return Err(Error::Config(format!(
                "attack {} requires the cabello ensemble",
                attack.name()
            )));
        }
        Ok((ensemble, attack))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub rounds: u64,
    pub seed: u64,
    pub attack: String,
    pub ensemble: String,
    #[serde(serialize_with = "json_opt_real")]
    pub alpha: Option<f64>,
    #[serde(serialize_with = "json_opt_real")]
    pub beta: Option<f64>,
    pub stream_split: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub config: ConfigEcho,
    pub per_symbol_counts: Vec<u64>,
    #[serde(serialize_with = "json_real")]
    pub bob_error_rate: f64,
    #[serde(serialize_with = "json_real")]
    pub mean_bob_fidelity: f64,
    #[serde(serialize_with = "json_real")]
    pub eve_exact_fraction: f64,
    #[serde(serialize_with = "json_real")]
    pub eve_partition_fraction: f64,
    /// Rounds where Eve's declared knowledge excludes Alice's actual symbol.
    pub knowledge_soundness_violations: u64,
    #[serde(serialize_with = "json_real")]
    pub empirical_mutual_information_bits: f64,
    #[serde(serialize_with = "json_real")]
    pub analytic_mutual_information_bits: f64,
    #[serde(serialize_with = "json_real")]
    pub efficiency: f64,
    #[serde(serialize_with = "json_real")]
    pub elapsed_ms: f64,
}

#[derive(Debug, Default)]
struct Tally {
    per_symbol: Vec<u64>,
    bob_errors: u64,
    fidelity_sum: f64,
    exact: u64,
    partition: u64,
    violations: u64,
    qubits: u64,
    classical_bits: u64,
    joint: BTreeMap<(KeySymbol, EveKnowledge), u64>,
}

impl Tally {
    fn new(alphabet: usize) -> Self {
        Self {
            per_symbol: vec![0; alphabet],
            ..Self::default()
        }
    }

    fn merge(&mut self, other: Tally) {
        for (a, b) in self.per_symbol.iter_mut().zip(other.per_symbol) {
            *a += b;
        }
        self.bob_errors += other.bob_errors;
        self.fidelity_sum += other.fidelity_sum;
        self.exact += other.exact;
        self.partition += other.partition;
        self.violations += other.violations;
        self.qubits += other.qubits;
        self.classical_bits += other.classical_bits;
        for (k, v) in other.joint {
            *self.joint.entry(k).or_default() += v;
        }
    }
}

fn tally_chunk(
    config: &SimulationConfig,
    ensemble: &StateEnsemble,
    attack: &dyn AttackStrategy,
    rounds: std::ops::Range<u64>,
) -> Result<Tally> {
    let mut t = Tally::new(ensemble.size());
    for r in rounds {
        let mut rng = RandomStream::for_round(config.seed, r);
        let symbol = ensemble.symbol(rng.uniform_below(ensemble.size()) as u8)?;
        let tr = run_round(ensemble, attack, symbol, &mut rng)?;
        t.per_symbol[symbol.index()] += 1;
        t.bob_errors += u64::from(tr.bob_symbol != symbol);
        t.fidelity_sum += tr.bob_fidelity;
        t.exact += u64::from(tr.eve_knowledge.is_exact());
        t.partition += u64::from(tr.eve_knowledge.is_partition());
        t.violations += u64::from(!tr.eve_knowledge.is_consistent_with(symbol));
        t.qubits += tr.qubits_used;
        t.classical_bits += tr.classical_bits_used;
        *t.joint.entry((symbol, tr.eve_knowledge)).or_default() += 1;
    }
    Ok(t)
}

/// Runs `config.rounds` independent rounds. Round `r` draws its symbol and
/// every measurement outcome from the stream for `(seed, r)`.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationReport> {
    let start = Instant::now();
    let (ensemble, attack) = config.resolve()?;
    let chunks = config.rounds.div_ceil(CHUNK_ROUNDS);
    let partials = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK_ROUNDS;
            let hi = (lo + CHUNK_ROUNDS).min(config.rounds);
            tally_chunk(config, &ensemble, attack.as_ref(), lo..hi)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = Tally::new(ensemble.size());
    for p in partials {
        total.merge(p);
    }

    let n = config.rounds as f64;
    let joint: BTreeMap<(KeySymbol, EveKnowledge), f64> =
        total.joint.iter().map(|(&k, &v)| (k, v as f64)).collect();
    // every round carries a full symbol's worth of key
    let secret_bits = (ensemble.bits_per_symbol() * n).round() as u64;
    let (alpha, beta) = match ensemble.kind() {
        EnsembleKind::Cabello => (None, None),
        EnsembleKind::NonMax { alpha, beta } => (Some(alpha), Some(beta)),
    };
    let report = SimulationReport {
        config: ConfigEcho {
            rounds: config.rounds,
            seed: config.seed,
            attack: attack.name().to_owned(),
            ensemble: ensemble.kind().to_string(),
            alpha,
            beta,
            stream_split: STREAM_SPLIT.to_owned(),
        },
        per_symbol_counts: total.per_symbol,
        bob_error_rate: total.bob_errors as f64 / n,
        mean_bob_fidelity: total.fidelity_sum / n,
        eve_exact_fraction: total.exact as f64 / n,
        eve_partition_fraction: total.partition as f64 / n,
        knowledge_soundness_violations: total.violations,
        empirical_mutual_information_bits: mutual_information_bits(&joint),
        analytic_mutual_information_bits: eve_mutual_information(&ensemble, attack.as_ref())?,
        efficiency: efficiency(secret_bits, total.qubits, total.classical_bits)?,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(report)
}

const CSV_HEADER: [&str; 17] = [
    "rounds",
    "seed",
    "attack",
    "ensemble",
    "alpha",
    "beta",
    "stream_split",
    "per_symbol_counts",
    "bob_error_rate",
    "mean_bob_fidelity",
    "eve_exact_fraction",
    "eve_partition_fraction",
    "knowledge_soundness_violations",
    "empirical_mutual_information_bits",
    "analytic_mutual_information_bits",
    "efficiency",
    "elapsed_ms",
];

impl SimulationReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Invariant(format!("report serialization failed: {e}")))
    }

    /// One header row and one record. Counts are `;`-separated.
    pub fn to_csv(&self) -> Result<String> {
        let opt = |x: Option<f64>| x.map(real17).unwrap_or_default();
        let counts: Vec<String> = self.per_symbol_counts.iter().map(u64::to_string).collect();
        let record = [
            self.config.rounds.to_string(),
            self.config.seed.to_string(),
            self.config.attack.clone(),
            self.config.ensemble.clone(),
            opt(self.config.alpha),
            opt(self.config.beta),
            self.config.stream_split.clone(),
            counts.join(";"),
            real17(self.bob_error_rate),
            real17(self.mean_bob_fidelity),
            real17(self.eve_exact_fraction),
            real17(self.eve_partition_fraction),
            self.knowledge_soundness_violations.to_string(),
            real17(self.empirical_mutual_information_bits),
            real17(self.analytic_mutual_information_bits),
            real17(self.efficiency),
            real17(self.elapsed_ms),
        ];
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)
            .and_then(|_| w.write_record(&record))
            .map_err(|e| Error::Invariant(format!("csv encoding failed: {e}")))?;
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(format!("csv encoding failed: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(s, "rounds                 {}", c.rounds);
        let _ = writeln!(s, "seed                   {}", c.seed);
        let _ = writeln!(s, "attack                 {}", c.attack);
        let _ = write!(s, "ensemble               {}", c.ensemble);
        if let (Some(a), Some(b)) = (c.alpha, c.beta) {
            let _ = write!(s, " (alpha {}, beta {})", real17(a), real17(b));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "stream split           {}", c.stream_split);
        let counts: Vec<String> = self.per_symbol_counts.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "symbol counts          {}", counts.join(" "));
        let _ = writeln!(s, "bob error rate         {}", real17(self.bob_error_rate));
        let _ = writeln!(
            s,
            "mean bob fidelity      {}",
            real17(self.mean_bob_fidelity)
        );
        let _ = writeln!(
            s,
            "eve exact fraction     {}",
            real17(self.eve_exact_fraction)
        );
        let _ = writeln!(
            s,
            "eve partition fraction {}",
            real17(self.eve_partition_fraction)
        );
        let _ = writeln!(
            s,
            "soundness violations   {}",
            self.knowledge_soundness_violations
        );
        let _ = writeln!(
            s,
            "I(A;E) empirical       {} bits",
            real17(self.empirical_mutual_information_bits)
        );
        let _ = writeln!(
            s,
            "I(A;E) analytic        {} bits",
            real17(self.analytic_mutual_information_bits)
        );
        let _ = writeln!(s, "efficiency             {}", real17(self.efficiency));
        let _ = writeln!(s, "elapsed                {} ms", real17(self.elapsed_ms));
        s
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json().map(|mut s| {
                s.push('\n');
                s
            }),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => Ok(self.to_text()),
        }
    }
}
