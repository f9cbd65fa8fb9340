//! Parameter sweeps and reference cases shared by the command-line tool,
//! the acceptance target and the integration tests.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{
    analysis::{
        griesmer_bound, minimality_check, projectivity, MinimalityReport, ProjectivityReport,
    },
    arith::{pow_u64, prime_power},
    char_sums::{
        closed_distribution, direct_distribution, gauss_quadratic, gauss_sum_semiprimitive,
        CharacterContext, Complex64, ExpSumKind, Strategy, ValueDistribution,
    },
    code::{
        defining_set, predicted_enumerator, shorten, LinearCode, PredictedEnumerator,
        WeightDistribution,
    },
    BigField, Error, Result, TowerSpec,
};

/// Every tower `(p, t, m1, m2, m)` with `q` in `qs`, `m1 | m`, `m2 | m` and
/// `q^m <= max_size`, ordered by `(q, m, m1, m2)`.
pub fn sweep_towers(qs: &[u64], max_size: u64) -> Result<Vec<TowerSpec>> {
    let mut out = Vec::new();
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    for q in qs {
        let (p, t) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let mut m = 1u32;
        while pow_u64(q, m).is_some_and(|s| s <= max_size) {
            for m1 in (1..=m).filter(|d| m.is_multiple_of(*d)) {
                for m2 in (1..=m).filter(|d| m.is_multiple_of(*d)) {
                    out.push(TowerSpec::new(p as u32, t, m1, m2, m)?);
                }
            }
            m += 1;
        }
    }
    Ok(out)
}

/// One code of the family: a tower, the offset `a` and shortening.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCase {
    pub spec: TowerSpec,
    pub a: u32,
    pub shortened: bool,
}

impl std::fmt::Display for CodeCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = &self.spec;
        write!(
            f,
            "q={} m1={} m2={} m={} a={}",
            s.q(),
            s.m1(),
            s.m2(),
            s.m(),
            self.a
        )?;
        if self.shortened {
            f.write_str(" shortened")?;
        }
        Ok(())
    }
}

impl CodeCase {
    pub fn new(spec: TowerSpec, a: u32, shortened: bool) -> Self {
        CodeCase { spec, a, shortened }
    }

    pub fn defining_set(&self, field: &BigField) -> Result<crate::code::DefiningSet> {
        let set = defining_set(field, self.a)?;
        if self.shortened {
            shorten(field, &set)
        } else {
            Ok(set)
        }
    }

    pub fn predicted(&self) -> Result<PredictedEnumerator> {
        predicted_enumerator(&self.spec, self.a, self.shortened)
    }
}

/// The cases of a sweep for which a closed-form distribution exists.
/// `two_weight_only` drops the one-weight cases.
pub fn sweep_code_cases(qs: &[u64], max_size: u64, two_weight_only: bool) -> Result<Vec<CodeCase>> {
    let mut out = Vec::new();
    for spec in sweep_towers(qs, max_size)? {
        for (a, shortened) in [(0, false), (0, true), (1, false)] {
            let case = CodeCase::new(spec, a, shortened);
            if let Ok(pred) = case.predicted() {
                if !two_weight_only || pred.weights.len() == 2 {
                    out.push(case);
                }
            }
        }
    }
    Ok(out)
}

/// Everything computed for one code.
#[derive(Clone, Debug, Serialize)]
pub struct CodeCheck {
    pub case: CodeCase,
    pub predicted: Option<PredictedEnumerator>,
    pub actual: WeightDistribution,
    pub projectivity: ProjectivityReport,
    pub minimality: MinimalityReport,
    /// Actual distribution equals the prediction (vacuously true without one).
    pub matches_prediction: bool,
}

/// Whether an enumerated distribution equals a prediction exactly.
pub fn distribution_matches(pred: &PredictedEnumerator, actual: &WeightDistribution) -> bool {
    let expected: BTreeMap<u64, u64> = std::iter::once((0, 1))
        .chain(pred.weights.iter().copied())
        .collect();
    pred.n == actual.n && pred.k == actual.k && expected == actual.counts
}

pub fn check_code(case: &CodeCase) -> Result<CodeCheck> {
    check_code_in(&BigField::new(case.spec)?, case)
}

/// [`check_code`] over an already built field for `case.spec`.
pub fn check_code_in(field: &BigField, case: &CodeCase) -> Result<CodeCheck> {
    if *field.spec() != case.spec {
        return Err(Error::InvalidParameter(format!(
            "field does not match {case}"
        )));
    }
    let code = LinearCode::new(field, case.defining_set(field)?)?;
    let actual = code.weight_distribution();
    let predicted = case.predicted().ok();
    let matches_prediction = predicted
        .as_ref()
        .is_none_or(|p| distribution_matches(p, &actual));
    Ok(CodeCheck {
        case: *case,
        projectivity: projectivity(&code)?,
        minimality: minimality_check(&actual)?,
        predicted,
        actual,
        matches_prediction,
    })
}

/// Direct versus closed-form distribution of one exponential sum.
#[derive(Clone, Debug, Serialize)]
pub struct ExpSumCheck {
    pub spec: TowerSpec,
    pub kind: ExpSumKind,
    pub direct: ValueDistribution,
    pub closed: ValueDistribution,
    pub passed: bool,
}

/// Towers whose `Omega` (or `Delta`) distribution has a closed form.
pub fn has_closed_form(spec: &TowerSpec, kind: ExpSumKind) -> bool {
    match kind {
        ExpSumKind::Omega => matches!((spec.e(), spec.l()), (1, 1) | (2, 1) | (1, 2)),
        ExpSumKind::Delta => matches!(spec.e(), 1 | 2),
    }
}

pub fn check_expsum(spec: &TowerSpec, kind: ExpSumKind) -> Result<ExpSumCheck> {
    check_expsum_in(&BigField::new(*spec)?, kind)
}

pub fn check_expsum_in(field: &BigField, kind: ExpSumKind) -> Result<ExpSumCheck> {
    let spec = field.spec();
    let ctx = CharacterContext::new(field);
    let direct = direct_distribution(&ctx, kind, Strategy::Auto)?;
    let closed = closed_distribution(spec, kind)?;
    Ok(ExpSumCheck {
        spec: *spec,
        kind,
        passed: direct == closed,
        direct,
        closed,
    })
}

/// Result of one named property check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        PropertyCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Character-level identities on the full field `F_(q^m)` of `field`:
/// additive and multiplicative orthogonality, Gauss-sum magnitudes, the
/// Fourier expansion of `chi` in multiplicative characters, and the closed
/// forms in the semi-primitive and quadratic cases.
pub fn character_checks(field: &BigField) -> Result<Vec<PropertyCheck>> {
    let ctx = CharacterContext::new(field);
    let tol = ctx.tolerance();
    let d = field.spec().m();
    let n = field.order();
    let r = field.size();
    let traces = ctx.prime_traces(d)?;
    let zeta = ctx.additive_roots();
    let mut out = Vec::new();

    // sum_x chi(a x) = 0 for a != 0; x = 0 contributes 1
    let worst_add = (0..n)
        .into_par_iter()
        .map(|a| {
            let s: Complex64 = (0..n)
                .map(|i| zeta.get_u(traces[((a + i) % n) as usize] as u64))
                .sum::<Complex64>()
                + 1.0;
            s.norm()
        })
        .reduce(|| 0.0, f64::max);
    out.push(PropertyCheck::new(
        "additive orthogonality",
        worst_add <= tol.abs + tol.rel * r as f64,
        format!("max |sum chi(ax)| = {worst_add:.3e} over a != 0"),
    ));

    let roots = ctx.mult_roots(d)?;
    let worst_mult = (1..n)
        .into_par_iter()
        .map(|j| {
            (0..n)
                .map(|k| roots.get_u(j * k % n))
                .sum::<Complex64>()
                .norm()
        })
        .reduce(|| 0.0, f64::max);
    out.push(PropertyCheck::new(
        "multiplicative orthogonality",
        worst_mult <= tol.abs + tol.rel * r as f64,
        format!("max |sum psi(x)| = {worst_mult:.3e} over psi != psi_0"),
    ));

    let gauss: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| ctx.gauss_sum_direct(d, j as i64))
        .collect::<Result<_>>()?;
    let trivial_ok = tol.approx_eq(gauss[0], Complex64::new(-1.0, 0.0));
    out.push(PropertyCheck::new(
        "trivial Gauss sum",
        trivial_ok,
        format!("G(psi_0) = {:.6}", gauss[0]),
    ));
    let sqrt_r = (r as f64).sqrt();
    let worst_mag = gauss[1..]
        .iter()
        .map(|g| (g.norm() - sqrt_r).abs())
        .fold(0.0, f64::max);
    out.push(PropertyCheck::new(
        "Gauss sum magnitude",
        worst_mag <= tol.abs + tol.rel * sqrt_r,
        format!("max ||G| - sqrt(r)| = {worst_mag:.3e}"),
    ));

    // chi(x) = 1/(r-1) sum_j G(psi^-j) psi^j(x), with psi^j(alpha^k) = zeta^(jk)
    let worst_fourier = (0..n)
        .into_par_iter()
        .map(|k| {
            let s: Complex64 = (0..n)
                .map(|j| gauss[((n - j) % n) as usize] * roots.get_u(j * k % n))
                .sum();
            (s / n as f64 - zeta.get_u(traces[k as usize] as u64)).norm()
        })
        .reduce(|| 0.0, f64::max);
    out.push(PropertyCheck::new(
        "Fourier expansion of chi",
        worst_fourier <= tol.abs + tol.rel,
        format!("max residual = {worst_fourier:.3e}"),
    ));

    // semi-primitive closed forms for every admissible order N | r - 1
    let p = field.p() as u64;
    let (mut tried, mut failed) = (0u32, Vec::new());
    for order in (3..=n).filter(|o| n.is_multiple_of(*o)) {
        let Ok(_) = crate::char_sums::semiprimitive_parameters(order, p, r) else {
            continue;
        };
        for s in 1..order {
            let closed = gauss_sum_semiprimitive(order, s, p, r)?;
            let direct = gauss[(n / order * s) as usize];
            tried += 1;
            if !tol.approx_eq(closed, direct) {
                failed.push(format!(
                    "N={order} s={s}: closed {closed:.4} direct {direct:.4}"
                ));
            }
        }
    }
    out.push(PropertyCheck::new(
        "semi-primitive Gauss sums",
        failed.is_empty(),
        if failed.is_empty() {
            format!("{tried} sums agree")
        } else {
            failed.join("; ")
        },
    ));

    if p % 2 == 1 {
        let closed = gauss_quadratic(p, field.prime_degree())?;
        let direct = gauss[(n / 2) as usize];
        out.push(PropertyCheck::new(
            "quadratic Gauss sum",
            tol.approx_eq(closed, direct),
            format!("closed {closed:.6}, direct {direct:.6}"),
        ));
    }
    Ok(out)
}

/// Whether the minimality inequality is expected for a sweep code: the
/// even-gcd families when `m1 + m2 = 0, 2 (mod 4)`, the quadratic family
/// when `m1 + m2 > 3`.
pub fn minimality_expected(case: &CodeCase) -> bool {
    use crate::code::CaseLabel::*;
    let s = case.spec.m1() + case.spec.m2();
    match case.predicted().map(|p| p.case) {
        Ok(TraceZeroEvenGcd | TraceOneEvenGcd) => s.is_multiple_of(4) || s % 4 == 2,
        Ok(TraceOneQuadratic) => s > 3,
        _ => false,
    }
}

/// A code with published parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCase {
    pub label: String,
    pub p: u32,
    pub t: u32,
    pub m1: u32,
    pub m2: u32,
    pub m: u32,
    pub a: u32,
    pub shortened: bool,
    pub n: u64,
    pub k: u32,
    pub d: u64,
    /// `{weight: count}` including `0: 1`.
    pub distribution: BTreeMap<u64, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub griesmer_optimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_distance: Option<u32>,
}

impl ReferenceCase {
    pub fn code_case(&self) -> Result<CodeCase> {
        Ok(CodeCase::new(
            TowerSpec::new(self.p, self.t, self.m1, self.m2, self.m)?,
            self.a,
            self.shortened,
        ))
    }
}

#[allow(clippy::too_many_arguments)]
fn reference(
    (p, t, m1, m2, m): (u32, u32, u32, u32, u32),
    a: u32,
    shortened: bool,
    (n, k, d): (u64, u32, u64),
    dist: &[(u64, u64)],
    griesmer_optimal: Option<bool>,
    dual_distance: Option<u32>,
) -> ReferenceCase {
    let q = (p as u64).pow(t);
    let mut label = format!("q={q} m1={m1} m2={m2} m={m} a={a}");
    if shortened {
        label.push_str(" shortened");
    }
    ReferenceCase {
        label,
        p,
        t,
        m1,
        m2,
        m,
        a,
        shortened,
        n,
        k,
        d,
        distribution: dist.iter().copied().collect(),
        griesmer_optimal,
        dual_distance,
    }
}

/// The published worked examples, with their stated parameters.
pub fn reference_cases() -> Vec<ReferenceCase> {
    vec![
        reference(
            (2, 1, 2, 4, 4),
            0,
            false,
            (7, 2, 4),
            &[(0, 1), (4, 2), (6, 1)],
            Some(true),
            None,
        ),
        reference(
            (3, 1, 2, 4, 4),
            0,
            false,
            (26, 2, 18),
            &[(0, 1), (18, 6), (24, 2)],
            None,
            None,
        ),
        reference(
            (2, 1, 4, 6, 12),
            0,
            false,
            (2015, 4, 1040),
            &[(0, 1), (1040, 10), (1144, 5)],
            None,
            None,
        ),
        reference(
            (2, 1, 2, 4, 4),
            1,
            false,
            (8, 2, 4),
            &[(0, 1), (4, 1), (6, 2)],
            Some(false),
            None,
        ),
        reference(
            (3, 1, 2, 4, 4),
            1,
            false,
            (27, 2, 18),
            &[],
            Some(false),
            None,
        ),
        reference(
            (2, 1, 4, 6, 12),
            1,
            false,
            (2080, 4, 1040),
            &[(0, 1), (1040, 5), (1144, 10)],
            None,
            None,
        ),
        reference(
            (3, 1, 2, 3, 6),
            1,
            false,
            (252, 2, 168),
            &[(0, 1), (168, 4), (210, 4)],
            None,
            Some(2),
        ),
        reference(
            (3, 1, 2, 4, 4),
            0,
            true,
            (13, 2, 9),
            &[(0, 1), (9, 6), (12, 2)],
            Some(true),
            None,
        ),
    ]
}

/// Comparison of one reference case with computation.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceCheck {
    pub label: String,
    pub expected: ReferenceCase,
    pub actual: WeightDistribution,
    pub griesmer_optimal: bool,
    pub dual_distance_lower_bound: u32,
    pub mismatches: Vec<String>,
}

impl ReferenceCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds the code of `case` and lists every disagreement with it. An empty
/// expected distribution means only `[n, k, d]` is known.
pub fn check_reference(case: &ReferenceCase) -> Result<ReferenceCheck> {
    check_reference_in(&BigField::new(case.code_case()?.spec)?, case)
}

pub fn check_reference_in(field: &BigField, case: &ReferenceCase) -> Result<ReferenceCheck> {
    let cc = case.code_case()?;
    if *field.spec() != cc.spec {
        return Err(Error::InvalidParameter(format!(
            "field does not match {}",
            case.label
        )));
    }
    let code = LinearCode::new(field, cc.defining_set(field)?)?;
    let actual = code.weight_distribution();
    let d = actual.min_distance().unwrap_or(0);
    let griesmer = griesmer_bound(actual.n, actual.k, d, actual.q);
    let proj = projectivity(&code)?;

    let mut mismatches = Vec::new();
    let mut expect = |what: &str, want: String, got: String| {
        if want != got {
            mismatches.push(format!("{what}: expected {want}, got {got}"));
        }
    };
    expect("n", case.n.to_string(), actual.n.to_string());
    expect("k", case.k.to_string(), actual.k.to_string());
    expect("d", case.d.to_string(), d.to_string());
    if !case.distribution.is_empty() {
        expect(
            "distribution",
            format!("{:?}", case.distribution),
            format!("{:?}", actual.counts),
        );
    }
    if let Some(opt) = case.griesmer_optimal {
        expect(
            "griesmer optimal",
            opt.to_string(),
            griesmer.optimal.to_string(),
        );
    }
    if let Some(dd) = case.dual_distance {
        expect(
            "dual distance",
            dd.to_string(),
            proj.dual_distance_lower_bound.to_string(),
        );
    }
    Ok(ReferenceCheck {
        label: case.label.clone(),
        expected: case.clone(),
        griesmer_optimal: griesmer.optimal,
        dual_distance_lower_bound: proj.dual_distance_lower_bound,
        actual,
        mismatches,
    })
}

/// Regenerates reference data from computation alone.
pub fn derive_reference(case: &ReferenceCase) -> Result<ReferenceCase> {
    let check = check_reference(case)?;
    Ok(ReferenceCase {
        n: check.actual.n,
        k: check.actual.k,
        d: check.actual.min_distance().unwrap_or(0),
        distribution: check.actual.counts.clone(),
        griesmer_optimal: case.griesmer_optimal.map(|_| check.griesmer_optimal),
        dual_distance: case.dual_distance.map(|_| check.dual_distance_lower_bound),
        ..case.clone()
    })
}

/// Fixture file layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema_version: u32,
    pub provenance: String,
    pub cases: Vec<ReferenceCase>,
}

pub const FIXTURE_SCHEMA_VERSION: u32 = 1;
