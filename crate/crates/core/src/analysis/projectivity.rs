use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{
    code::{LinearCode, WeightDistribution},
    Error, Result,
};

/// `(B_1, B_2)`: numbers of dual codewords of weight 1 and 2, from the
/// first three power moments of the weight distribution.
///
/// ```text
/// sum A_w         = q^k
/// sum w A_w       = q^(k-1) (n(q-1) - B_1)
/// sum w^2 A_w     = q^(k-2) (n(q-1)(n(q-1)+1) - B_1 (q + 2(n-1)(q-1)) + 2 B_2)
/// ```
pub fn power_moments(wd: &WeightDistribution) -> Result<(u64, u64)> {
    let (n, q, k) = (wd.n as i128, wd.q as i128, wd.k as i32);
    let s1: i128 = wd.counts.iter().map(|(&w, &a)| w as i128 * a as i128).sum();
    let s2: i128 = wd
        .counts
        .iter()
        .map(|(&w, &a)| (w as i128).pow(2) * a as i128)
        .sum();
    let qpow = |e: i32| {
        if e >= 0 {
            Ratio::from_integer(q.pow(e as u32))
        } else {
            Ratio::new(1, q.pow((-e) as u32))
        }
    };
    let nq = Ratio::from_integer(n * (q - 1));
    let b1 = nq - Ratio::from_integer(s1) / qpow(k - 1);
    let b2 = (Ratio::from_integer(s2) / qpow(k - 2) - nq * (nq + 1)
        + b1 * Ratio::from_integer(q + 2 * (n - 1) * (q - 1)))
        / 2;
    let check = |x: Ratio<i128>, name: &str| {
        if x.is_integer() && *x.numer() >= 0 {
            Ok(x.to_integer() as u64)
        } else {
            Err(Error::NonIntegralSolution(format!("{name} = {x}")))
        }
    };
    Ok((check(b1, "B1")?, check(b2, "B2")?))
}

/// Column-level view of projectivity with the power-moment solution
/// alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivityReport {
    pub b1: u64,
    pub b2: u64,
    pub column_zero: bool,
    /// Pairs `i < j` with `u_i / u_j` in `F_q^*`.
    pub column_proportional_pairs: u64,
    /// 3 when projective, otherwise the exact dual distance (1 or 2).
    pub dual_distance_lower_bound: u32,
    /// `B_1 = 0` iff no zero column, and `B_2 = (q-1) * pairs`.
    pub methods_agree: bool,
}

impl ProjectivityReport {
    pub fn is_projective(&self) -> bool {
        self.dual_distance_lower_bound >= 3
    }
}

/// Zero columns and proportional column pairs of `code`.
///
/// Columns are `alpha_1^(r_i)`; two are proportional over `F_q` exactly
/// when `r_i = r_j (mod (q^m1 - 1)/(q - 1))`.
pub fn column_analysis(code: &LinearCode<'_>) -> (bool, u64) {
    let field = code.field();
    let n1 = field.q_pow_minus_one(field.spec().m1());
    let classes = n1 / (field.q() - 1);
    let mut counts = vec![0u64; classes as usize];
    for &r in code.column_exponents() {
        counts[(r % classes) as usize] += 1;
    }
    // norms of nonzero elements are nonzero
    let column_zero = false;
    let pairs = counts.iter().map(|&c| c * c.saturating_sub(1) / 2).sum();
    (column_zero, pairs)
}

pub fn projectivity(code: &LinearCode<'_>) -> Result<ProjectivityReport> {
    let (column_zero, pairs) = column_analysis(code);
    let (b1, b2) = power_moments(&code.weight_distribution())?;
    let q = code.field().q();
    let dual_distance_lower_bound = if column_zero {
        1
    } else if pairs > 0 {
        2
    } else {
        3
    };
    Ok(ProjectivityReport {
        b1,
        b2,
        column_zero,
        column_proportional_pairs: pairs,
        dual_distance_lower_bound,
        methods_agree: (b1 == 0) == !column_zero && b2 == (q - 1) * pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn moments_of_a_projective_code() {
        // [10, 4] binary two-weight code with weights 4 and 6
        let counts: BTreeMap<u64, u64> = [(0, 1), (4, 5), (6, 10)].into();
        let wd = WeightDistribution::new(10, 4, 2, counts);
        assert_eq!(power_moments(&wd), Ok((0, 0)));
    }

    #[test]
    fn inconsistent_distribution_is_rejected() {
        let counts: BTreeMap<u64, u64> = [(0, 1), (4, 5), (5, 10)].into();
        let wd = WeightDistribution::new(10, 4, 2, counts);
        assert!(matches!(
            power_moments(&wd),
            Err(Error::NonIntegralSolution(_))
        ));
    }
}
