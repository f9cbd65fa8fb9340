//! Codes from trace-of-norm defining sets: construction, exact weight
//! distributions, and closed-form predictions.

mod defining_set;
mod linear;
mod predicted;
mod weights;

pub use defining_set::{defining_set, defining_set_general_a, norm_preimage, shorten, DefiningSet};
pub use linear::{codeword, weight_distribution, LinearCode};
pub use predicted::{
    predicted_enumerator, trace_one_length, trace_zero_length, weight_from_sum_value,
    weight_via_sums, CaseLabel, PredictedEnumerator,
};
pub use weights::{parse_enumerator, WeightDistribution};
