use std::{collections::BTreeMap, fmt};

use serde::{Deserialize, Serialize};

/// Hamming weight distribution `{w: A_w}` of a linear code, `A_0 = 1`
/// included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: u64,
    pub k: u32,
    pub q: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new(n: u64, k: u32, q: u64, counts: BTreeMap<u64, u64>) -> Self {
        WeightDistribution { n, k, q, counts }
    }

    /// `A_w`, zero for absent weights.
    pub fn get(&self, w: u64) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Nonzero weights that occur, ascending.
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.nonzero_weights().last().copied()
    }

    /// Number of distinct nonzero weights.
    pub fn weight_count(&self) -> usize {
        self.nonzero_weights().len()
    }

    /// `[n, k, d]`.
    pub fn parameters(&self) -> String {
        format!(
            "[{}, {}, {}]",
            self.n,
            self.k,
            self.min_distance().unwrap_or(0)
        )
    }

    /// The weight enumerator, e.g. `1 + 2z^4 + z^6`.
    pub fn enumerator(&self) -> String {
        format_enumerator(self.counts.iter().map(|(&w, &a)| (w, a)))
    }
}

pub(crate) fn format_enumerator(terms: impl Iterator<Item = (u64, u64)>) -> String {
    let parts: Vec<String> = terms
        .filter(|&(_, a)| a > 0)
        .map(|(w, a)| match (w, a) {
            (0, a) => a.to_string(),
            (w, 1) => format!("z^{w}"),
            (w, a) => format!("{a}z^{w}"),
        })
        .collect();
    parts.join(" + ")
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator())
    }
}

/// Parses `1 + 2z^4 + z^6` back into `{0: 1, 4: 2, 6: 1}`.
pub fn parse_enumerator(s: &str) -> Option<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    for term in s.split('+') {
        let term = term.trim();
        let (a, w) = match term.split_once('z') {
            None => (term.parse().ok()?, 0),
            Some((coef, exp)) => {
                let a = if coef.is_empty() {
                    1
                } else {
                    coef.parse().ok()?
                };
                let w = match exp.strip_prefix('^') {
                    Some(e) => e.parse().ok()?,
                    None if exp.is_empty() => 1,
                    None => return None,
                };
                (a, w)
            }
        };
        *out.entry(w).or_insert(0) += a;
    }
    Some(out)
}
