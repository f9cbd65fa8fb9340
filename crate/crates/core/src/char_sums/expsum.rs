//! The exponential sums governing codeword weights.
//!
//! For `b` in `F_(q^m1)^*`:
//!
//! ```text
//! Omega(b) = sum_{x in F_(q^m)^*} sum_{y,z in F_q^*} chi_1(y b N_1(x)) chi_2(z N_2(x)) chi(z)
//! Delta(b) = the same sum without the chi(z) factor
//! ```
//!
//! with `N_i(x) = x^((q^m-1)/(q^mi-1))`. Three independent evaluation routes
//! live here: the literal sum, the Gauss-sum expansion over a restricted set
//! of characters, and the closed-form value distributions.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{
    arith::{gcd, lcm, pow_i128},
    char_sums::{CharacterContext, Complex64, ValueDistribution},
    Error, FieldElement, Result, TowerSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpSumKind {
    /// With the `chi(z)` factor; governs the `a = 1` codes.
    Omega,
    /// Without it; governs the `a = 0` codes.
    Delta,
}

impl std::fmt::Display for ExpSumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExpSumKind::Omega => "omega",
            ExpSumKind::Delta => "delta",
        })
    }
}

/// How [`direct_distribution`] evaluates the sum for every `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// One pass over all `x` in `F_(q^m)^*` per `b`.
    PerElement,
    /// Groups `x` by the residues of its exponent modulo `q^m1 - 1` and
    /// `q^m2 - 1`; exact regrouping of the same finite sum.
    ResidueClasses,
    /// `PerElement` while `(q^m1 - 1)(q^m - 1)` stays under [`PER_ELEMENT_BUDGET`].
    Auto,
}

pub const PER_ELEMENT_BUDGET: u64 = 1 << 28;

struct Shape {
    s: u64,
    n1: u64,
    n2: u64,
    nq: u64,
}

fn shape(ctx: &CharacterContext<'_>, b: FieldElement) -> Result<Shape> {
    let field = ctx.field();
    let spec = field.spec();
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let s = field.subfield_log(b, spec.m1())?;
    Ok(Shape {
        s,
        n1: field.q_pow_minus_one(spec.m1()),
        n2: field.q_pow_minus_one(spec.m2()),
        nq: field.q() - 1,
    })
}

/// The literal triple sum, every character evaluated separately.
pub fn direct_value(
    ctx: &CharacterContext<'_>,
    kind: ExpSumKind,
    b: FieldElement,
) -> Result<Complex64> {
    let field = ctx.field();
    let spec = field.spec();
    let Shape { s, n1, n2, nq } = shape(ctx, b)?;
    let tr1 = ctx.prime_traces(spec.m1())?;
    let tr2 = ctx.prime_traces(spec.m2())?;
    let tr0 = ctx.prime_traces(1)?;
    let zeta = ctx.additive_roots();
    let (step1, step2) = (n1 / nq, n2 / nq);

    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..field.order() {
        let (a1, a2) = (i % n1, i % n2);
        for u in 0..nq {
            // y = beta^u, so y * b * N_1(x) = alpha_1^(u*step1 + s + i)
            let chi1 = zeta.get_u(tr1[((u * step1 + s + a1) % n1) as usize] as u64);
            for v in 0..nq {
                let chi2 = zeta.get_u(tr2[((v * step2 + a2) % n2) as usize] as u64);
                let term = chi1 * chi2;
                acc += match kind {
                    ExpSumKind::Omega => term * zeta.get_u(tr0[v as usize] as u64),
                    ExpSumKind::Delta => term,
                };
            }
        }
    }
    Ok(acc)
}

pub fn omega_direct(ctx: &CharacterContext<'_>, b: FieldElement) -> Result<i64> {
    ctx.tolerance()
        .round_integral(direct_value(ctx, ExpSumKind::Omega, b)?)
}

pub fn delta_direct(ctx: &CharacterContext<'_>, b: FieldElement) -> Result<i64> {
    ctx.tolerance()
        .round_integral(direct_value(ctx, ExpSumKind::Delta, b)?)
}

/// The sum with the `y` and `z` sums folded into per-residue tables:
/// `inner1[k] = sum_y chi_1(y alpha_1^k)` and
/// `inner2[k] = sum_z chi_2(z alpha_2^k) [chi(z)]`.
pub struct ExpSumTable {
    kind: ExpSumKind,
    order: u64,
    inner1: Vec<Complex64>,
    inner2: Vec<Complex64>,
}

impl ExpSumTable {
    pub fn new(ctx: &CharacterContext<'_>, kind: ExpSumKind) -> Result<Self> {
        let field = ctx.field();
        let spec = field.spec();
        let n1 = field.q_pow_minus_one(spec.m1());
        let n2 = field.q_pow_minus_one(spec.m2());
        let nq = field.q() - 1;
        let tr1 = ctx.prime_traces(spec.m1())?;
        let tr2 = ctx.prime_traces(spec.m2())?;
        let tr0 = ctx.prime_traces(1)?;
        let zeta = ctx.additive_roots();

        let inner1 = (0..n1)
            .map(|k| {
                (0..nq)
                    .map(|u| zeta.get_u(tr1[((u * (n1 / nq) + k) % n1) as usize] as u64))
                    .sum()
            })
            .collect();
        let inner2 = (0..n2)
            .map(|k| {
                (0..nq)
                    .map(|v| {
                        let chi2 = zeta.get_u(tr2[((v * (n2 / nq) + k) % n2) as usize] as u64);
                        match kind {
                            ExpSumKind::Omega => chi2 * zeta.get_u(tr0[v as usize] as u64),
                            ExpSumKind::Delta => chi2,
                        }
                    })
                    .sum()
            })
            .collect();
        Ok(ExpSumTable {
            kind,
            order: field.order(),
            inner1,
            inner2,
        })
    }

    pub fn kind(&self) -> ExpSumKind {
        self.kind
    }

    fn n1(&self) -> u64 {
        self.inner1.len() as u64
    }

    /// Value at `b = alpha_1^s`, one term per `x = alpha^i`.
    pub fn value_per_element(&self, s: u64) -> Complex64 {
        let (n1, n2) = (self.n1(), self.inner2.len() as u64);
        let mut acc = Complex64::new(0.0, 0.0);
        let (mut a1, mut a2) = (s % n1, 0u64);
        for _ in 0..self.order {
            acc += self.inner1[a1 as usize] * self.inner2[a2 as usize];
            a1 += 1;
            if a1 == n1 {
                a1 = 0;
            }
            a2 += 1;
            if a2 == n2 {
                a2 = 0;
            }
        }
        acc
    }

    fn residue_tables(&self) -> (Vec<Complex64>, Vec<Complex64>, f64) {
        let (n1, n2) = (self.n1(), self.inner2.len() as u64);
        let g = gcd(n1, n2) as usize;
        let mut h1 = vec![Complex64::new(0.0, 0.0); g];
        let mut h2 = vec![Complex64::new(0.0, 0.0); g];
        for (a, v) in self.inner1.iter().enumerate() {
            h1[a % g] += v;
        }
        for (c, v) in self.inner2.iter().enumerate() {
            h2[c % g] += v;
        }
        let mult = (self.order / lcm(n1, n2)) as f64;
        (h1, h2, mult)
    }

    fn value_from_residues(h1: &[Complex64], h2: &[Complex64], mult: f64, s: u64) -> Complex64 {
        let g = h1.len() as u64;
        let acc: Complex64 = (0..g)
            .map(|r| h1[((s + r) % g) as usize] * h2[r as usize])
            .sum();
        acc * mult
    }

    /// Value at `b = alpha_1^s`: exponents `i` of `x` are grouped by
    /// `(i mod q^m1-1, i mod q^m2-1)`, which are congruent modulo
    /// `gcd = q^e - 1`.
    pub fn value_by_residues(&self, s: u64) -> Complex64 {
        let (h1, h2, mult) = self.residue_tables();
        Self::value_from_residues(&h1, &h2, mult, s)
    }

    /// Exact integer values for every `b = alpha_1^s`, `s` in `0..q^m1-1`.
    pub fn values(&self, strategy: Strategy, tol: crate::char_sums::Tolerance) -> Result<Vec<i64>> {
        let n1 = self.n1();
        let per_element = match strategy {
            Strategy::PerElement => true,
            Strategy::ResidueClasses => false,
            Strategy::Auto => n1.saturating_mul(self.order) <= PER_ELEMENT_BUDGET,
        };
        if per_element {
            (0..n1)
                .into_par_iter()
                .map(|s| tol.round_integral(self.value_per_element(s)))
                .collect()
        } else {
            let (h1, h2, mult) = self.residue_tables();
            (0..n1)
                .into_par_iter()
                .map(|s| tol.round_integral(Self::value_from_residues(&h1, &h2, mult, s)))
                .collect()
        }
    }
}

/// Value distribution of the sum over all `b` in `F_(q^m1)^*`, by direct
/// evaluation.
pub fn direct_distribution(
    ctx: &CharacterContext<'_>,
    kind: ExpSumKind,
    strategy: Strategy,
) -> Result<ValueDistribution> {
    let table = ExpSumTable::new(ctx, kind)?;
    Ok(table
        .values(strategy, ctx.tolerance())?
        .into_iter()
        .collect())
}

/// Expansion of the sum as a combination of Gauss sums over the few
/// character pairs that survive orthogonality.
///
/// With `t_i = (q^mi - 1)/(q^e - 1)`:
///
/// ```text
/// Omega(b) = C   * sum_{s in S}  G(lambda_1^(-t1 s)) G(lambda_2^(t2 s)) lambda_1^(t1 s)(b) G(lambda^(-(m2/e) s))
/// Delta(b) = C*(q-1) * sum_{s in S'} G(lambda_1^(-t1 s)) G(lambda_2^(t2 s)) lambda_1^(t1 s)(b)
/// ```
///
/// where `C = (q^m-1)(q-1)/((q^m1-1)(q^m2-1))`,
/// `S = {(q-1)/l * j : 0 <= j < l (q^e-1)/(q-1)}` and
/// `S' = {(q-1) j : 0 <= j < (q^e-1)/(q-1)}`.
pub struct GaussExpansion {
    kind: ExpSumKind,
    coefficient: f64,
    /// `(t1 * s, product of the Gauss sums for s)`
    terms: Vec<(i64, Complex64)>,
}

impl GaussExpansion {
    pub fn new(ctx: &CharacterContext<'_>, kind: ExpSumKind) -> Result<Self> {
        let field = ctx.field();
        let spec = field.spec();
        let (m1, m2, e, l) = (spec.m1(), spec.m2(), spec.e(), spec.l() as u64);
        let q = field.q();
        let qe1 = spec.q_pow(e).expect("fits") - 1;
        let t1 = (field.q_pow_minus_one(m1) / qe1) as i64;
        let t2 = (field.q_pow_minus_one(m2) / qe1) as i64;
        let shifts: Vec<i64> = match kind {
            ExpSumKind::Omega => (0..l * qe1 / (q - 1))
                .map(|j| ((q - 1) / l * j) as i64)
                .collect(),
            ExpSumKind::Delta => (0..qe1 / (q - 1)).map(|j| ((q - 1) * j) as i64).collect(),
        };
        let mut terms = Vec::with_capacity(shifts.len());
        for s in shifts {
            let mut g = ctx.gauss_sum_direct(m1, -t1 * s)? * ctx.gauss_sum_direct(m2, t2 * s)?;
            if kind == ExpSumKind::Omega {
                g *= ctx.gauss_sum_direct(1, -((m2 / e) as i64) * s)?;
            }
            terms.push((t1 * s, g));
        }
        let base = base_ratio(spec);
        let base = match kind {
            ExpSumKind::Omega => base,
            ExpSumKind::Delta => base * Ratio::from_integer(q as i128 - 1),
        };
        Ok(GaussExpansion {
            kind,
            coefficient: *base.numer() as f64 / *base.denom() as f64,
            terms,
        })
    }

    pub fn kind(&self) -> ExpSumKind {
        self.kind
    }

    pub fn value(&self, ctx: &CharacterContext<'_>, b: FieldElement) -> Result<Complex64> {
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        let m1 = ctx.field().spec().m1();
        let k = ctx.field().subfield_log(b, m1)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, g) in &self.terms {
            acc += g * ctx.mult_at(m1, u, k)?;
        }
        Ok(acc * self.coefficient)
    }
}

/// `(q^m - 1)(q - 1) / ((q^m1 - 1)(q^m2 - 1))`, exactly.
fn base_ratio(spec: &TowerSpec) -> Ratio<i128> {
    let q = spec.q();
    let qm = pow_i128(q, spec.m()) - 1;
    let q1 = pow_i128(q, spec.m1()) - 1;
    let q2 = pow_i128(q, spec.m2()) - 1;
    Ratio::new(qm * (q as i128 - 1), q1 * q2)
}

fn to_integer(r: Ratio<i128>) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NotIntegral {
            re: *r.numer() as f64 / *r.denom() as f64,
            im: 0.0,
        });
    }
    Ok(r.to_integer() as i64)
}

fn sign(k: u32) -> i128 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Two-valued distribution shared by the `e = 2` cases:
/// `c (1 + (-1)^h q^(h+1))` on `(q^m1-1)/(q+1)` points and
/// `c (1 + (-1)^(h+1) q^h)` on `q (q^m1-1)/(q+1)` points, `h = (m1+m2)/2`.
fn even_gcd_distribution(spec: &TowerSpec, c: Ratio<i128>) -> Result<ValueDistribution> {
    let q = spec.q();
    let h = (spec.m1() + spec.m2()) / 2;
    let q1 = pow_i128(q, spec.m1()) - 1;
    let one = Ratio::from_integer(1);
    let v1 = c * (one + Ratio::from_integer(sign(h) * pow_i128(q, h + 1)));
    let v2 = c * (one + Ratio::from_integer(sign(h + 1) * pow_i128(q, h)));
    let f1 = q1 / (q as i128 + 1);
    let mut d = ValueDistribution::new();
    d.add(to_integer(v1)?, f1 as u64);
    d.add(to_integer(v2)?, (q as i128 * f1) as u64);
    Ok(d)
}

/// Closed-form distribution of `Omega(b)` over `b` in `F_(q^m1)^*`, for
/// `(e, l)` in `{(1, 1), (2, 1), (1, 2)}`.
pub fn omega_closed_distribution(spec: &TowerSpec) -> Result<ValueDistribution> {
    let q = spec.q();
    let c = base_ratio(spec);
    let q1 = pow_i128(q, spec.m1()) - 1;
    match (spec.e(), spec.l()) {
        (1, 1) => {
            let mut d = ValueDistribution::new();
            d.add(to_integer(-c)?, q1 as u64);
            Ok(d)
        }
        (2, 1) => even_gcd_distribution(spec, -c),
        (1, 2) => {
            let g = Ratio::from_integer(pow_i128(q, (spec.m1() + spec.m2()).div_ceil(2)));
            let one = Ratio::from_integer(1);
            let mut d = ValueDistribution::new();
            d.add(to_integer(c * (-one - g))?, (q1 / 2) as u64);
            d.add(to_integer(c * (-one + g))?, (q1 / 2) as u64);
            Ok(d)
        }
        (e, l) => Err(Error::UnsupportedCase(format!(
            "no closed form for Omega with e={e}, l={l}"
        ))),
    }
}

/// Closed-form distribution of `Delta(b)` over `b` in `F_(q^m1)^*`, for
/// `e` in `{1, 2}`.
pub fn delta_closed_distribution(spec: &TowerSpec) -> Result<ValueDistribution> {
    let q = spec.q();
    let c = base_ratio(spec) * Ratio::from_integer(q as i128 - 1);
    let q1 = pow_i128(q, spec.m1()) - 1;
    match spec.e() {
        1 => {
            let mut d = ValueDistribution::new();
            d.add(to_integer(c)?, q1 as u64);
            Ok(d)
        }
        2 => even_gcd_distribution(spec, c),
        e => Err(Error::UnsupportedCase(format!(
            "no closed form for Delta with e={e}"
        ))),
    }
}

pub fn closed_distribution(spec: &TowerSpec, kind: ExpSumKind) -> Result<ValueDistribution> {
    match kind {
        ExpSumKind::Omega => omega_closed_distribution(spec),
        ExpSumKind::Delta => delta_closed_distribution(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigField;

    fn field(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> BigField {
        BigField::new(TowerSpec::new(p, t, m1, m2, m).unwrap()).unwrap()
    }

    fn all_b(f: &BigField) -> Vec<FieldElement> {
        let step = f.subfield_step(f.spec().m1()).unwrap();
        (0..f.q_pow_minus_one(f.spec().m1()))
            .map(|s| f.from_exponent(s * step))
            .collect()
    }

    #[test]
    fn omega_constant_when_gcd_one() {
        let f = field(2, 1, 2, 3, 6);
        let ctx = CharacterContext::new(&f);
        for b in all_b(&f) {
            assert_eq!(omega_direct(&ctx, b).unwrap(), -3);
            assert_eq!(delta_direct(&ctx, b).unwrap(), 3);
        }
    }

    #[test]
    fn two_valued_sums_over_f16() {
        let f = field(2, 1, 2, 4, 4);
        let ctx = CharacterContext::new(&f);
        let omega: ValueDistribution = all_b(&f)
            .into_iter()
            .map(|b| omega_direct(&ctx, b).unwrap())
            .collect();
        assert_eq!(omega.to_string(), "{-3: 2, 5: 1}");
        let delta: ValueDistribution = all_b(&f)
            .into_iter()
            .map(|b| delta_direct(&ctx, b).unwrap())
            .collect();
        assert_eq!(delta.to_string(), "{-5: 1, 3: 2}");
    }

    #[test]
    fn rejects_zero_and_foreign_b() {
        let f = field(2, 1, 2, 4, 4);
        let ctx = CharacterContext::new(&f);
        assert_eq!(omega_direct(&ctx, f.zero()), Err(Error::ZeroB));
        assert!(matches!(
            delta_direct(&ctx, f.primitive_element()),
            Err(Error::NotInSubfield { .. })
        ));
    }

    #[test]
    fn closed_forms_small_cases() {
        let s = TowerSpec::new(2, 1, 2, 3, 6).unwrap();
        assert_eq!(
            omega_closed_distribution(&s).unwrap().to_string(),
            "{-3: 3}"
        );
        assert_eq!(delta_closed_distribution(&s).unwrap().to_string(), "{3: 3}");
        let s = TowerSpec::new(2, 1, 2, 4, 4).unwrap();
        assert_eq!(
            omega_closed_distribution(&s).unwrap().to_string(),
            "{-3: 2, 5: 1}"
        );
        assert_eq!(
            delta_closed_distribution(&s).unwrap().to_string(),
            "{-5: 1, 3: 2}"
        );
        let s = TowerSpec::new(3, 1, 2, 3, 6).unwrap();
        assert_eq!(
            omega_closed_distribution(&s).unwrap().to_string(),
            "{-196: 4, 182: 4}"
        );
    }

    #[test]
    fn unsupported_closed_forms() {
        // e = l = 2
        let s = TowerSpec::new(3, 1, 4, 2, 4).unwrap();
        assert!(matches!(
            omega_closed_distribution(&s),
            Err(Error::UnsupportedCase(_))
        ));
        // e = 3
        let s = TowerSpec::new(2, 1, 3, 3, 3).unwrap();
        assert!(matches!(
            delta_closed_distribution(&s),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn strategies_agree() {
        for (p, t, m1, m2, m) in [
            (2, 1, 2, 4, 4),
            (3, 1, 2, 3, 6),
            (3, 1, 4, 2, 4),
            (2, 2, 2, 3, 6),
        ] {
            let f = field(p, t, m1, m2, m);
            let ctx = CharacterContext::new(&f);
            for kind in [ExpSumKind::Omega, ExpSumKind::Delta] {
                let table = ExpSumTable::new(&ctx, kind).unwrap();
                let a = table.values(Strategy::PerElement, ctx.tolerance()).unwrap();
                let b = table
                    .values(Strategy::ResidueClasses, ctx.tolerance())
                    .unwrap();
                assert_eq!(a, b);
                for (s, bb) in all_b(&f).into_iter().enumerate().step_by(5) {
                    let lit = ctx
                        .tolerance()
                        .round_integral(direct_value(&ctx, kind, bb).unwrap())
                        .unwrap();
                    assert_eq!(lit, a[s]);
                }
            }
        }
    }

    #[test]
    fn gauss_expansion_matches_direct() {
        for (p, t, m1, m2, m) in [
            (2, 1, 2, 4, 4),
            (3, 1, 2, 3, 6),
            (3, 1, 4, 2, 4),
            (2, 2, 1, 2, 2),
            (5, 1, 2, 2, 2),
        ] {
            let f = field(p, t, m1, m2, m);
            let ctx = CharacterContext::new(&f);
            let tol = ctx.tolerance();
            for kind in [ExpSumKind::Omega, ExpSumKind::Delta] {
                let exp = GaussExpansion::new(&ctx, kind).unwrap();
                let table = ExpSumTable::new(&ctx, kind).unwrap();
                for (s, b) in all_b(&f).into_iter().enumerate() {
                    let via = exp.value(&ctx, b).unwrap();
                    let direct = table.value_per_element(s as u64);
                    assert!(
                        tol.approx_eq(via, direct),
                        "{kind} {p},{t},{m1},{m2},{m} s={s}: {via} vs {direct}"
                    );
                }
            }
        }
    }
}
