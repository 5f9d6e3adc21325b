//! Plug-in mutual information over a discrete joint distribution.

use std::collections::BTreeMap;

/// `I(A;B)` in bits from joint weights (probabilities or counts; they are
/// normalized here). Zero-weight cells contribute nothing.
pub fn mutual_information_bits<A: Ord + Copy, B: Ord + Copy>(joint: &BTreeMap<(A, B), f64>) -> f64 {
    let total: f64 = joint.values().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let mut pa: BTreeMap<A, f64> = BTreeMap::new();
    let mut pb: BTreeMap<B, f64> = BTreeMap::new();
    for (&(a, b), &w) in joint {
        *pa.entry(a).or_default() += w / total;
        *pb.entry(b).or_default() += w / total;
    }
    let mi: f64 = joint
        .iter()
        .filter(|(_, &w)| w > 0.0)
        .map(|(&(a, b), &w)| {
            let p = w / total;
            p * (p / (pa[&a] * pb[&b])).log2()
        })
        .sum();
    mi.max(0.0)
}
