use serde::{Deserialize, Serialize};

use crate::{code::WeightDistribution, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub w_min: u64,
    pub w_max: u64,
    /// `w_min / w_max > (q - 1)/q`, which makes every nonzero codeword minimal.
    pub ratio_exceeds: bool,
}

pub fn minimality_check(wd: &WeightDistribution) -> Result<MinimalityReport> {
    let (Some(w_min), Some(w_max)) = (wd.min_distance(), wd.max_weight()) else {
        return Err(Error::InvalidParameter(
            "distribution has no nonzero weight".into(),
        ));
    };
    let q = wd.q as u128;
    Ok(MinimalityReport {
        w_min,
        w_max,
        ratio_exceeds: w_min as u128 * q > w_max as u128 * (q - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_comparison_is_strict() {
        let wd = WeightDistribution::new(252, 2, 3, [(0, 1), (168, 4), (210, 4)].into());
        assert!(minimality_check(&wd).unwrap().ratio_exceeds);
        // 2/3 exactly is not enough
        let wd = WeightDistribution::new(9, 2, 3, [(0, 1), (4, 4), (6, 4)].into());
        assert!(!minimality_check(&wd).unwrap().ratio_exceeds);
        let wd = WeightDistribution::new(3, 1, 2, [(0, 1)].into());
        assert!(minimality_check(&wd).is_err());
    }
}
