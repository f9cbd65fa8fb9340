use std::{collections::BTreeMap, fmt};

use serde::{Deserialize, Serialize};

/// Multiset of exact integer values, kept sorted by value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValueDistribution {
    counts: BTreeMap<i64, u64>,
}

impl ValueDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: i64, times: u64) {
        if times > 0 {
            *self.counts.entry(value).or_insert(0) += times;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, value: i64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }
}

impl FromIterator<i64> for ValueDistribution {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut d = ValueDistribution::new();
        for v in iter {
            d.add(v, 1);
        }
        d
    }
}

impl fmt::Display for ValueDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {c}")?;
        }
        write!(f, "}}")
    }
}
