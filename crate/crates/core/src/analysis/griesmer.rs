use serde::{Deserialize, Serialize};

/// Griesmer bound check for an `[n, k, d]_q` code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriesmerReport {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub q: u64,
    /// `sum_{i<k} ceil(d / q^i)`.
    pub bound: u64,
    /// No `[n, k, d+1]_q` code satisfies the bound.
    pub optimal: bool,
    /// Least `d' > d` with `bound(d') > n`.
    pub first_excluded_distance: u64,
}

/// `sum_{i<k} ceil(d / q^i)`, saturating on overflow.
pub fn griesmer_sum(k: u32, d: u64, q: u64) -> u64 {
    let mut total = 0u64;
    let mut qi = 1u64;
    for _ in 0..k {
        total = total.saturating_add(d.div_ceil(qi));
        qi = qi.saturating_mul(q);
    }
    total
}

pub fn griesmer_bound(n: u64, k: u32, d: u64, q: u64) -> GriesmerReport {
    let bound = griesmer_sum(k, d, q);
    let mut excluded = d + 1;
    while griesmer_sum(k, excluded, q) <= n {
        excluded += 1;
    }
    GriesmerReport {
        n,
        k,
        d,
        q,
        bound,
        optimal: excluded == d + 1,
        first_excluded_distance: excluded,
    }
}
