//! Sources of measurement outcomes.
//!
//! Every probabilistic step in a round (Born-rule measurement, Bob's
//! projective decode, a tie-breaking guess) asks an [`OutcomeSource`] to pick
//! an index from a probability vector. [`RandomStream`] samples; a
//! [`BranchCursor`] walks the outcome tree so that every branch can be
//! enumerated with its exact probability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probabilities at or below this are treated as impossible outcomes.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// Human-readable description of how per-round streams derive from the master seed.
pub const STREAM_SPLIT: &str = "chacha8: seed_from_u64(seed), set_stream(round)";

pub trait OutcomeSource {
    /// Picks an index of `probs`. Entries at or below
    /// [`NEGLIGIBLE_PROBABILITY`] are never picked.
    fn choose(&mut self, probs: &[f64]) -> usize;
}

fn first_possible(probs: &[f64]) -> usize {
    probs
        .iter()
        .position(|&p| p > NEGLIGIBLE_PROBABILITY)
        .unwrap_or(0)
}

/// Seeded pseudo-random stream.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for round `round` of a run seeded with `seed`.
    /// Depends only on `(seed, round)`, never on scheduling.
    pub fn for_round(seed: u64, round: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(round);
        Self { rng }
    }

    /// Uniform integer in `0..n`.
    pub fn uniform_below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

impl OutcomeSource for RandomStream {
    fn choose(&mut self, probs: &[f64]) -> usize {
        let total: f64 = probs.iter().filter(|&&p| p > NEGLIGIBLE_PROBABILITY).sum();
        let u = self.rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut last = first_possible(probs);
        for (i, &p) in probs.iter().enumerate() {
            if p <= NEGLIGIBLE_PROBABILITY {
                continue;
            }
            acc += p;
            last = i;
            if u < acc {
                return i;
            }
        }
        last
    }
}

/// Replays a fixed prefix of choices, then takes the first possible outcome
/// at every later step, recording the alternatives it skipped.
#[derive(Debug, Clone, Default)]
pub struct BranchCursor {
    prefix: Vec<usize>,
    path: Vec<usize>,
    alternatives: Vec<Vec<usize>>,
    probability: f64,
}

impl BranchCursor {
    fn with_prefix(prefix: Vec<usize>) -> Self {
        Self {
            prefix,
            path: Vec::new(),
            alternatives: Vec::new(),
            probability: 1.0,
        }
    }

    /// Product of the probabilities of every choice taken so far.
    pub fn probability(&self) -> f64 {
        self.probability
    }
}

impl OutcomeSource for BranchCursor {
    fn choose(&mut self, probs: &[f64]) -> usize {
        let step = self.path.len();
        let chosen = match self.prefix.get(step) {
            Some(&c) => c,
            None => first_possible(probs),
        };
        let skipped = if step >= self.prefix.len() {
            (chosen + 1..probs.len())
                .filter(|&i| probs[i] > NEGLIGIBLE_PROBABILITY)
                .collect()
        } else {
            Vec::new()
        };
        self.path.push(chosen);
        self.alternatives.push(skipped);
        self.probability *= probs[chosen];
        chosen
    }
}

/// Runs `run` once per leaf of its outcome tree and returns every leaf
/// result with its exact branch probability.
///
/// `run` must be deterministic given the choices it receives.
pub fn enumerate_branches<T, E>(
    mut run: impl FnMut(&mut BranchCursor) -> Result<T, E>,
) -> Result<Vec<(f64, T)>, E> {
    let mut pending = vec![Vec::new()];
    let mut leaves = Vec::new();
    while let Some(prefix) = pending.pop() {
        let mut cursor = BranchCursor::with_prefix(prefix);
        let out = run(&mut cursor)?;
        for (step, alts) in cursor.alternatives.iter().enumerate() {
            for &alt in alts {
                let mut next = cursor.path[..step].to_vec();
                next.push(alt);
                pending.push(next);
            }
        }
        leaves.push((cursor.probability, out));
    }
    Ok(leaves)
}
