//! Closed-form weight distributions and the weight identity linking
//! codeword weights to the exponential sums.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{
    arith::pow_i128,
    char_sums::{delta_direct, omega_direct, CharacterContext},
    code::weights::format_enumerator,
    Error, FieldElement, Result, TowerSpec,
};

type Q = Ratio<i128>;

/// Which closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// `a = 0`, `e = 2`, `(m1, m2) != (2, 2)`.
    TraceZeroEvenGcd,
    /// `a = 1`, `e = 2`, `l = 1`.
    TraceOneEvenGcd,
    /// `a = 1`, `e = 1`, `l = 2`.
    TraceOneQuadratic,
    /// Shortened `a = 0` set, `e = 2`, `(m1, m2) != (2, 2)`.
    ShortenedEvenGcd,
    /// `e = 1` (and `l = 1` for `a = 1`): a single nonzero weight.
    OneWeight,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::TraceZeroEvenGcd => "trace_zero_even_gcd",
            CaseLabel::TraceOneEvenGcd => "trace_one_even_gcd",
            CaseLabel::TraceOneQuadratic => "trace_one_quadratic",
            CaseLabel::ShortenedEvenGcd => "shortened_even_gcd",
            CaseLabel::OneWeight => "one_weight",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Predicted nonzero weights with the number of nonzero `b` producing each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedEnumerator {
    pub case: CaseLabel,
    pub n: u64,
    pub k: u32,
    /// `(weight, frequency)`, ascending by weight.
    pub weights: Vec<(u64, u64)>,
}

impl PredictedEnumerator {
    pub fn enumerator(&self) -> String {
        format_enumerator(std::iter::once((0, 1)).chain(self.weights.iter().copied()))
    }

    pub fn min_distance(&self) -> u64 {
        self.weights[0].0
    }
}

fn int(x: i128) -> Q {
    Q::from_integer(x)
}

/// `q^k` for a possibly negative `k`.
fn qpow(q: u64, k: i64) -> Q {
    if k >= 0 {
        int(pow_i128(q, k as u32))
    } else {
        Q::new(1, pow_i128(q, (-k) as u32))
    }
}

fn sgn(k: u32) -> i128 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn exact(x: Q, what: &str) -> Result<u64> {
    if !x.is_integer() || *x.numer() < 0 {
        return Err(Error::NonIntegralSolution(format!(
            "{what} = {x} is not a nonnegative integer"
        )));
    }
    Ok(x.to_integer() as u64)
}

/// `|D(0)| = (q^m - 1)(q^(m2-1) - 1)/(q^m2 - 1)`.
pub fn trace_zero_length(spec: &TowerSpec) -> u64 {
    let q = spec.q();
    ((pow_i128(q, spec.m()) - 1) * (pow_i128(q, spec.m2() - 1) - 1) / (pow_i128(q, spec.m2()) - 1))
        as u64
}

/// `|D(1)| = q^(m2-1) (q^m - 1)/(q^m2 - 1)`.
pub fn trace_one_length(spec: &TowerSpec) -> u64 {
    let q = spec.q();
    (pow_i128(q, spec.m2() - 1) * (pow_i128(q, spec.m()) - 1) / (pow_i128(q, spec.m2()) - 1)) as u64
}

/// The closed-form weight distribution for the code built from `D(a)`,
/// optionally shortened.
pub fn predicted_enumerator(
    spec: &TowerSpec,
    a: u32,
    shortened: bool,
) -> Result<PredictedEnumerator> {
    let (m1, m2, e, l) = (spec.m1(), spec.m2(), spec.e(), spec.l());
    let q = spec.q();
    let qi = q as i128;
    let q1 = pow_i128(q, m1) - 1;
    let q2 = pow_i128(q, m2) - 1;
    let qm = pow_i128(q, spec.m()) - 1;
    let h = (m1 + m2) / 2;

    if a > 1 {
        return Err(Error::InvalidParameter(format!(
            "offset a must be 0 or 1, got {a}"
        )));
    }
    if shortened && a != 0 {
        return Err(Error::HypothesisMismatch(
            "shortening applies to a = 0 only".into(),
        ));
    }
    if a == 0 && m2 == 1 {
        return Err(Error::EmptyDefiningSet);
    }

    let denom = int(q1 * q2);
    let (case, n, pairs): (CaseLabel, u64, Vec<(Q, i128)>) = match (a, shortened, e, l) {
        (0, _, 1, _) => {
            let w = int(pow_i128(q, m1 - 1) * (qi - 1) * qm * (pow_i128(q, m2 - 1) - 1)) / denom;
            let (w, n) = if shortened {
                (w / int(qi - 1), trace_zero_length(spec) / (q - 1))
            } else {
                (w, trace_zero_length(spec))
            };
            (CaseLabel::OneWeight, n, vec![(w, q1)])
        }
        (0, _, 2, _) => {
            if (m1, m2) == (2, 2) {
                return Err(Error::DegenerateCase(
                    "(m1, m2) = (2, 2) with a = 0 has a nontrivial kernel".into(),
                ));
            }
            let half = (m2 as i64 - m1 as i64) / 2;
            let base = |corr: Q| {
                int(pow_i128(q, m1 - 1) * qm) * (int(pow_i128(q, m2 - 1) - 1) - corr) / denom
            };
            let w1 = base(int(sgn(h) * (qi - 1)) * qpow(q, half));
            let w2 = base(int(sgn(h + 1) * (qi - 1)) * qpow(q, half - 1));
            let f1 = q1 / (qi + 1);
            if shortened {
                (
                    CaseLabel::ShortenedEvenGcd,
                    trace_zero_length(spec) / (q - 1),
                    vec![(w1, f1), (w2, qi * f1)],
                )
            } else {
                let k = int(qi - 1);
                (
                    CaseLabel::TraceZeroEvenGcd,
                    trace_zero_length(spec),
                    vec![(w1 * k, f1), (w2 * k, qi * f1)],
                )
            }
        }
        (1, false, 1, 1) => {
            let w = int((qi - 1) * qm * pow_i128(q, m1 + m2 - 2)) / denom;
            (CaseLabel::OneWeight, trace_one_length(spec), vec![(w, q1)])
        }
        (1, false, 2, 1) => {
            let d = denom * int(qi * qi);
            let c = int((qi - 1) * qm);
            let top = int(pow_i128(q, m1 + m2));
            let w1 = c * (top + int(sgn(h) * pow_i128(q, h + 1))) / d;
            let w2 = c * (top + int(sgn(h + 1) * pow_i128(q, h))) / d;
            let f1 = q1 / (qi + 1);
            (
                CaseLabel::TraceOneEvenGcd,
                trace_one_length(spec),
                vec![(w1, f1), (w2, qi * f1)],
            )
        }
        (1, false, 1, 2) => {
            let d = denom * int(qi * qi);
            let c = int((qi - 1) * qm);
            let top = int(pow_i128(q, m1 + m2));
            let g = int(pow_i128(q, (m1 + m2).div_ceil(2)));
            (
                CaseLabel::TraceOneQuadratic,
                trace_one_length(spec),
                vec![(c * (top - g) / d, q1 / 2), (c * (top + g) / d, q1 / 2)],
            )
        }
        _ => {
            return Err(Error::HypothesisMismatch(format!(
                "no closed form for a={a}, shortened={shortened}, e={e}, l={l}"
            )))
        }
    };

    let mut weights = Vec::with_capacity(pairs.len());
    for (w, f) in pairs {
        weights.push((exact(w, "weight")?, f as u64));
    }
    weights.sort_unstable();
    // merge coincident weights
    weights.dedup_by(|next, prev| {
        if next.0 == prev.0 {
            prev.1 += next.1;
            true
        } else {
            false
        }
    });
    Ok(PredictedEnumerator {
        case,
        n,
        k: m1,
        weights,
    })
}

/// `w_H(c(b))` from `Delta(b)` (`a = 0`) or `Omega(b)` (`a = 1`):
///
/// ```text
/// a = 0: (q-1)(q^m-1)(q^(m1+m2) - q^(m1+1) + q - 1) / (q^2 (q^m1-1)(q^m2-1)) - Delta(b)/q^2
/// a = 1: (q-1)(q^m-1)(q^(m1+m2) - 1)                / (q^2 (q^m1-1)(q^m2-1)) - Omega(b)/q^2
/// ```
pub fn weight_via_sums(ctx: &CharacterContext<'_>, b: FieldElement, a: u32) -> Result<u64> {
    let sum = match a {
        0 => delta_direct(ctx, b)?,
        1 => omega_direct(ctx, b)?,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "offset a must be 0 or 1, got {a}"
            )))
        }
    };
    weight_from_sum_value(ctx.field().spec(), a, sum)
}

/// The same identity with a precomputed sum value.
pub fn weight_from_sum_value(spec: &TowerSpec, a: u32, sum: i64) -> Result<u64> {
    let q = spec.q();
    let qi = q as i128;
    let top = match a {
        0 => pow_i128(q, spec.m1() + spec.m2()) - pow_i128(q, spec.m1() + 1) + qi - 1,
        1 => pow_i128(q, spec.m1() + spec.m2()) - 1,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "offset a must be 0 or 1, got {a}"
            )))
        }
    };
    let q1 = pow_i128(q, spec.m1()) - 1;
    let q2 = pow_i128(q, spec.m2()) - 1;
    let qm = pow_i128(q, spec.m()) - 1;
    let w = Q::new((qi - 1) * qm * top, qi * qi * q1 * q2) - Q::new(sum as i128, qi * qi);
    exact(w, "weight")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> TowerSpec {
        TowerSpec::new(p, t, m1, m2, m).unwrap()
    }

    #[test]
    fn small_tables() {
        let e = predicted_enumerator(&spec(2, 1, 2, 4, 4), 0, false).unwrap();
        assert_eq!(
            (e.case, e.n, e.enumerator().as_str()),
            (CaseLabel::TraceZeroEvenGcd, 7, "1 + 2z^4 + z^6")
        );
        let e = predicted_enumerator(&spec(3, 1, 2, 4, 4), 1, false).unwrap();
        assert_eq!((e.n, e.min_distance()), (27, 18));
        let e = predicted_enumerator(&spec(3, 1, 2, 4, 4), 0, true).unwrap();
        assert_eq!(e.enumerator(), "1 + 6z^9 + 2z^12");
        let e = predicted_enumerator(&spec(3, 1, 2, 3, 6), 1, false).unwrap();
        assert_eq!(
            (e.case, e.enumerator().as_str()),
            (CaseLabel::TraceOneQuadratic, "1 + 4z^168 + 4z^210")
        );
    }

    #[test]
    fn hypothesis_failures() {
        assert!(matches!(
            predicted_enumerator(&spec(2, 1, 2, 2, 4), 0, false),
            Err(Error::DegenerateCase(_))
        ));
        assert!(matches!(
            predicted_enumerator(&spec(2, 1, 3, 3, 3), 1, false),
            Err(Error::HypothesisMismatch(_))
        ));
        assert!(matches!(
            predicted_enumerator(&spec(2, 1, 2, 4, 4), 1, true),
            Err(Error::HypothesisMismatch(_))
        ));
    }

    #[test]
    fn weight_identity_small() {
        let s = spec(2, 1, 2, 4, 4);
        assert_eq!(weight_from_sum_value(&s, 1, 5), Ok(4));
        assert_eq!(weight_from_sum_value(&s, 1, -3), Ok(6));
        assert_eq!(weight_from_sum_value(&s, 0, 3), Ok(4));
        assert_eq!(weight_from_sum_value(&s, 0, -5), Ok(6));
        assert!(weight_from_sum_value(&s, 0, 4).is_err());
    }
}
