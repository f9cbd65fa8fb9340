//! Strongly regular graphs from projective two-weight codes.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{
    analysis::projectivity::column_analysis,
    arith::{gcd, pow_i128, prime_power},
    code::LinearCode,
    Error, FieldElement, Result, TowerSpec,
};

/// `(N, K, lambda, mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub lambda: i64,
    pub mu: i64,
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Parameters of the graph attached to a projective two-weight `[n, k]_q`
/// code with weights `w1`, `w2`:
/// `N = q^k`, `K = n(q-1)`,
/// `lambda = K^2 + 3K - q(w1+w2) - Kq(w1+w2) + q^2 w1 w2`,
/// `mu = q^2 w1 w2 / q^k`.
pub fn srg_params_from_code(n: u64, k: u32, w1: u64, w2: u64, q: u64) -> Result<SrgParams> {
    let qi = q as i128;
    let big_k = n as i128 * (qi - 1);
    let (w1, w2) = (w1 as i128, w2 as i128);
    let lambda =
        big_k * big_k + 3 * big_k - qi * (w1 + w2) - big_k * qi * (w1 + w2) + qi * qi * w1 * w2;
    let qk = pow_i128(q, k);
    let mu = Ratio::new(qi * qi * w1 * w2, qk);
    if !mu.is_integer() {
        return Err(Error::NonIntegralMu(format!("mu = {mu}")));
    }
    Ok(SrgParams {
        n: qk as u64,
        k: big_k as u64,
        lambda: lambda as i64,
        mu: mu.to_integer() as i64,
    })
}

/// The two graph families with closed-form parameters in `q` and `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SrgFamily {
    /// From the `a = 1` code with `m1 = m`, `m2 = 2`;
    /// needs `2 | m` and `gcd(m/2, q-1) = 1`.
    TraceOne,
    /// From the shortened `a = 0` code with `m1 = m`, `m2 = 2`;
    /// needs `2 | m` and `m >= 4`.
    ShortenedTraceZero,
}

impl SrgFamily {
    pub fn hypotheses(&self, q: u64, m: u32) -> Result<()> {
        if !m.is_multiple_of(2) {
            return Err(Error::HypothesisMismatch(format!("m = {m} must be even")));
        }
        match self {
            SrgFamily::TraceOne if gcd(m as u64 / 2, q - 1) != 1 => Err(Error::HypothesisMismatch(
                format!("gcd(m/2, q-1) = {} must be 1", gcd(m as u64 / 2, q - 1)),
            )),
            SrgFamily::ShortenedTraceZero if m < 4 => Err(Error::HypothesisMismatch(format!(
                "m = {m} must be at least 4"
            ))),
            _ => Ok(()),
        }
    }

    /// Closed-form parameters; only evenness of `m` is enforced here.
    pub fn closed_form(&self, q: u64, m: u32) -> Result<SrgParams> {
        if !m.is_multiple_of(2) || m == 0 {
            return Err(Error::HypothesisMismatch(format!(
                "m = {m} must be even and positive"
            )));
        }
        let qi = q as i128;
        let qm = pow_i128(q, m);
        let half = pow_i128(q, m / 2);
        let s: i128 = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
        let sq = (qi + 1) * (qi + 1);
        let (k, lambda, mu) = match self {
            SrgFamily::TraceOne => (
                Ratio::new(qi * (qm - 1), qi + 1),
                Ratio::new(
                    qm * qi * qi - 2 * qi * qi - 3 * qi - s * half * (1 - qi),
                    sq,
                ),
                Ratio::new(qi * (half - s) * (half * qi + s), sq),
            ),
            SrgFamily::ShortenedTraceZero => (
                Ratio::new(qm - 1, qi + 1),
                Ratio::new(qm - 3 * qi - 2 - s * half * qi * (qi - 1), sq),
                Ratio::new(qi * (half - s) * (half / qi + s), sq),
            ),
        };
        for (name, v) in [("K", k), ("lambda", lambda), ("mu", mu)] {
            if !v.is_integer() {
                return Err(Error::NonIntegralSolution(format!("{name} = {v}")));
            }
        }
        Ok(SrgParams {
            n: qm as u64,
            k: k.to_integer() as u64,
            lambda: lambda.to_integer() as i64,
            mu: mu.to_integer() as i64,
        })
    }

    /// Closed form after checking the family's hypotheses.
    pub fn checked_closed_form(&self, q: u64, m: u32) -> Result<SrgParams> {
        self.hypotheses(q, m)?;
        self.closed_form(q, m)
    }

    /// The code behind the family: tower `(m1, m2, m) = (m, 2, m)`, the
    /// offset `a`, and whether the defining set is shortened.
    pub fn code_spec(&self, q: u64, m: u32) -> Result<(TowerSpec, u32, bool)> {
        let (p, t) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let spec = TowerSpec::new(p as u32, t, m, 2, m)?;
        Ok(match self {
            SrgFamily::TraceOne => (spec, 1, false),
            SrgFamily::ShortenedTraceZero => (spec, 0, true),
        })
    }
}

/// How the graph parameters were confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingMethod {
    /// Common neighbours counted for every vertex pair.
    Pairwise,
    /// Common neighbours of `0` and each `x`; exact for Cayley graphs since
    /// translations are automorphisms.
    Translation,
    /// Graph too large; parameters from the code only.
    ParametersOnly,
}

/// Vertex-count limits for the two counting methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingLimits {
    pub pairwise: u64,
    pub translation: u64,
}

impl Default for CountingLimits {
    fn default() -> Self {
        CountingLimits {
            pairwise: 1 << 12,
            translation: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgWitness {
    /// Parameters derived from the code's weights.
    pub params: SrgParams,
    /// Parameters read off the graph, when it was counted.
    pub observed: Option<SrgParams>,
    pub method: CountingMethod,
    pub verified: bool,
    #[serde(skip)]
    pub connection_set: Vec<FieldElement>,
}

/// `{y u_i : y in F_q^*}` with `u_i = N_(q^m/q^m1)(d_i)`, as exponents of
/// the primitive element.
fn connection_exponents(code: &LinearCode<'_>) -> BTreeSet<u64> {
    let field = code.field();
    let step1 = field
        .subfield_step(field.spec().m1())
        .expect("m1 divides m");
    let step_q = field.subfield_step(1).expect("1 divides m");
    let order = field.order();
    let mut out = BTreeSet::new();
    for &r in code.column_exponents() {
        for j in 0..field.q() - 1 {
            out.insert((r * step1 + j * step_q) % order);
        }
    }
    out
}

/// Builds the Cayley graph on `(F_(q^m1), +)` whose connection set is the
/// `F_q^*`-closure of the code's columns, and counts it.
pub fn srg_build_and_verify(code: &LinearCode<'_>) -> Result<SrgWitness> {
    srg_build_and_verify_with(code, CountingLimits::default())
}

pub fn srg_build_and_verify_with(
    code: &LinearCode<'_>,
    limits: CountingLimits,
) -> Result<SrgWitness> {
    let field = code.field();
    let m1 = field.spec().m1();
    let (_, pairs) = column_analysis(code);
    if pairs > 0 {
        return Err(Error::NotProjective(format!(
            "{pairs} proportional column pairs"
        )));
    }
    let wd = code.weight_distribution();
    if wd.k != m1 {
        return Err(Error::ParameterMismatch(format!(
            "dimension {} is below m1 = {m1}",
            wd.k
        )));
    }
    let weights = wd.nonzero_weights();
    if weights.len() != 2 {
        return Err(Error::ParameterMismatch(format!(
            "{} nonzero weights, expected 2",
            weights.len()
        )));
    }
    let params = srg_params_from_code(wd.n, wd.k, weights[0], weights[1], wd.q)?;

    let omega = connection_exponents(code);
    let connection_set: Vec<FieldElement> = omega.iter().map(|&e| field.from_exponent(e)).collect();
    if connection_set.len() as u64 != params.k {
        return Err(Error::ParameterMismatch(format!(
            "connection set has {} elements, expected K = {}",
            connection_set.len(),
            params.k
        )));
    }

    let (method, observed) = count_graph(code, &connection_set, limits)?;
    if let Some(obs) = observed {
        if obs != params {
            return Err(Error::ParameterMismatch(format!(
                "graph counts {obs}, code predicts {params}"
            )));
        }
    }
    Ok(SrgWitness {
        params,
        observed,
        method,
        verified: observed.is_some(),
        connection_set,
    })
}

/// Counts the Cayley graph of a projective code without requiring full
/// dimension or two weights. Returns `None` above `limits.translation`.
pub fn count_cayley_graph(
    code: &LinearCode<'_>,
    limits: CountingLimits,
) -> Result<(CountingMethod, Option<SrgParams>)> {
    let (_, pairs) = column_analysis(code);
    if pairs > 0 {
        return Err(Error::NotProjective(format!(
            "{pairs} proportional column pairs"
        )));
    }
    let field = code.field();
    let connection_set: Vec<FieldElement> = connection_exponents(code)
        .iter()
        .map(|&e| field.from_exponent(e))
        .collect();
    count_graph(code, &connection_set, limits)
}

fn count_graph(
    code: &LinearCode<'_>,
    connection_set: &[FieldElement],
    limits: CountingLimits,
) -> Result<(CountingMethod, Option<SrgParams>)> {
    let graph = CayleyGraph::new(code, connection_set);
    let v = graph.vertices.len() as u64;
    Ok(if v <= limits.pairwise {
        (CountingMethod::Pairwise, Some(graph.count_pairwise()?))
    } else if v <= limits.translation {
        (
            CountingMethod::Translation,
            Some(graph.count_translation()?),
        )
    } else {
        (CountingMethod::ParametersOnly, None)
    })
}

struct CayleyGraph<'a, 'f> {
    code: &'a LinearCode<'f>,
    /// Coordinates of the vertices: zero, then `alpha_1^s`.
    vertices: Vec<u32>,
    /// Big-field coordinates to vertex index.
    index: Vec<u32>,
    connection: Vec<u32>,
    in_connection: Vec<bool>,
}

impl<'a, 'f> CayleyGraph<'a, 'f> {
    fn new(code: &'a LinearCode<'f>, connection_set: &[FieldElement]) -> Self {
        let field = code.field();
        let step1 = field
            .subfield_step(field.spec().m1())
            .expect("m1 divides m");
        let n1 = field.q_pow_minus_one(field.spec().m1());
        let mut vertices = vec![0u32];
        vertices.extend((0..n1).map(|s| field.from_exponent(s * step1).coords()));
        let mut index = vec![u32::MAX; field.size() as usize];
        for (i, &c) in vertices.iter().enumerate() {
            index[c as usize] = i as u32;
        }
        let connection: Vec<u32> = connection_set.iter().map(|x| x.coords()).collect();
        let mut in_connection = vec![false; field.size() as usize];
        for &c in &connection {
            in_connection[c as usize] = true;
        }
        CayleyGraph {
            code,
            vertices,
            index,
            connection,
            in_connection,
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.code.field().add_coords(a, b)
    }

    fn neg(&self, a: u32) -> u32 {
        let field = self.code.field();
        field
            .neg(field.from_coords(a).expect("valid coordinates"))
            .coords()
    }

    fn summarize(
        degrees_ok: bool,
        lambdas: BTreeSet<i64>,
        mus: BTreeSet<i64>,
        n: u64,
        k: u64,
    ) -> Result<SrgParams> {
        if !degrees_ok {
            return Err(Error::ParameterMismatch("graph is not regular".into()));
        }
        let single = |s: &BTreeSet<i64>, name: &str| match s.len() {
            0 => Ok(0),
            1 => Ok(*s.iter().next().unwrap()),
            _ => Err(Error::ParameterMismatch(format!(
                "{name} takes values {s:?}"
            ))),
        };
        Ok(SrgParams {
            n,
            k,
            lambda: single(&lambdas, "lambda")?,
            mu: single(&mus, "mu")?,
        })
    }

    fn count_pairwise(&self) -> Result<SrgParams> {
        let n = self.vertices.len();
        let words = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = self
            .vertices
            .par_iter()
            .map(|&v| {
                let mut row = vec![0u64; words];
                for &w in &self.connection {
                    let u = self.index[self.add(v, w) as usize] as usize;
                    row[u / 64] |= 1 << (u % 64);
                }
                row
            })
            .collect();
        let k = self.connection.len() as u64;
        let degrees_ok = rows
            .iter()
            .all(|r| r.iter().map(|w| w.count_ones() as u64).sum::<u64>() == k);
        let (lambdas, mus) = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut lam = BTreeSet::new();
                let mut mu = BTreeSet::new();
                for v in u + 1..n {
                    let common: u32 = rows[u]
                        .iter()
                        .zip(&rows[v])
                        .map(|(a, b)| (a & b).count_ones())
                        .sum();
                    if rows[u][v / 64] >> (v % 64) & 1 == 1 {
                        lam.insert(common as i64);
                    } else {
                        mu.insert(common as i64);
                    }
                }
                (lam, mu)
            })
            .reduce(
                || (BTreeSet::new(), BTreeSet::new()),
                |mut a, b| {
                    a.0.extend(b.0);
                    a.1.extend(b.1);
                    a
                },
            );
        Self::summarize(degrees_ok, lambdas, mus, n as u64, k)
    }

    fn count_translation(&self) -> Result<SrgParams> {
        let k = self.connection.len() as u64;
        let (lambdas, mus) = self.vertices[1..]
            .par_iter()
            .map(|&x| {
                let minus_x = self.neg(x);
                let common = self
                    .connection
                    .iter()
                    .filter(|&&w| self.in_connection[self.add(w, minus_x) as usize])
                    .count() as i64;
                (x, common)
            })
            .fold(
                || (BTreeSet::new(), BTreeSet::new()),
                |mut acc, (x, c)| {
                    if self.in_connection[x as usize] {
                        acc.0.insert(c);
                    } else {
                        acc.1.insert(c);
                    }
                    acc
                },
            )
            .reduce(
                || (BTreeSet::new(), BTreeSet::new()),
                |mut a, b| {
                    a.0.extend(b.0);
                    a.1.extend(b.1);
                    a
                },
            );
        // closure under negation makes the graph undirected and K-regular
        let symmetric = self
            .connection
            .iter()
            .all(|&w| self.in_connection[self.neg(w) as usize]);
        Self::summarize(symmetric, lambdas, mus, self.vertices.len() as u64, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_from_weights() {
        assert_eq!(
            srg_params_from_code(10, 4, 4, 6, 2).unwrap(),
            SrgParams {
                n: 16,
                k: 10,
                lambda: 6,
                mu: 6
            }
        );
        assert_eq!(
            srg_params_from_code(5, 4, 2, 4, 2).unwrap(),
            SrgParams {
                n: 16,
                k: 5,
                lambda: 0,
                mu: 2
            }
        );
        assert!(matches!(
            srg_params_from_code(10, 4, 3, 5, 2),
            Err(Error::NonIntegralMu(_))
        ));
    }

    #[test]
    fn closed_forms() {
        let p = SrgFamily::TraceOne.checked_closed_form(2, 4).unwrap();
        assert_eq!(
            p,
            SrgParams {
                n: 16,
                k: 10,
                lambda: 6,
                mu: 6
            }
        );
        let p = SrgFamily::ShortenedTraceZero
            .checked_closed_form(2, 4)
            .unwrap();
        assert_eq!(
            p,
            SrgParams {
                n: 16,
                k: 5,
                lambda: 0,
                mu: 2
            }
        );
        let p = SrgFamily::TraceOne.checked_closed_form(3, 2).unwrap();
        assert_eq!(
            p,
            SrgParams {
                n: 9,
                k: 6,
                lambda: 3,
                mu: 6
            }
        );
        assert!(SrgFamily::ShortenedTraceZero
            .checked_closed_form(3, 2)
            .is_err());
        assert_eq!(
            SrgFamily::ShortenedTraceZero.closed_form(3, 2).unwrap(),
            SrgParams {
                n: 9,
                k: 2,
                lambda: 1,
                mu: 0
            }
        );
        // gcd(2, 2) = 2 for q = 3, m = 4
        assert!(matches!(
            SrgFamily::TraceOne.checked_closed_form(3, 4),
            Err(Error::HypothesisMismatch(_))
        ));
    }
}
