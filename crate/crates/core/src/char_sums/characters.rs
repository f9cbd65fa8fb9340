use std::sync::OnceLock;

use crate::{
    char_sums::{Complex64, RootTable, Tolerance},
    BigField, Error, FieldElement, Result,
};

/// Evaluation context for the canonical additive characters `chi_d` of
/// `F_(q^d)` and the multiplicative characters `lambda_d^j`, where
/// `lambda_d(alpha_d) = zeta_(q^d - 1)`.
///
/// Root-of-unity and trace tables are built lazily per degree and cached.
pub struct CharacterContext<'f> {
    field: &'f BigField,
    additive_roots: RootTable,
    mult_roots: Vec<OnceLock<RootTable>>,
    prime_traces: Vec<OnceLock<Vec<u32>>>,
    tolerance: Tolerance,
}

impl<'f> CharacterContext<'f> {
    pub fn new(field: &'f BigField) -> Self {
        Self::with_tolerance(field, Tolerance::default())
    }

    pub fn with_tolerance(field: &'f BigField, tolerance: Tolerance) -> Self {
        let m = field.spec().m() as usize;
        CharacterContext {
            field,
            additive_roots: RootTable::new(field.p() as u64),
            mult_roots: (0..=m).map(|_| OnceLock::new()).collect(),
            prime_traces: (0..=m).map(|_| OnceLock::new()).collect(),
            tolerance,
        }
    }

    pub fn field(&self) -> &'f BigField {
        self.field
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        self.field.subfield_step(d).map(|_| ())
    }

    /// `Tr_(q^d/p)(alpha_d^k)` for every `k`.
    pub fn prime_traces(&self, d: u32) -> Result<&[u32]> {
        self.check_degree(d)?;
        let cell = &self.prime_traces[d as usize];
        if let Some(t) = cell.get() {
            return Ok(t);
        }
        let table = self.field.prime_trace_table(d)?;
        Ok(cell.get_or_init(|| table))
    }

    /// Roots of unity of order `q^d - 1`.
    pub fn mult_roots(&self, d: u32) -> Result<&RootTable> {
        self.check_degree(d)?;
        let n = self.field.q_pow_minus_one(d);
        Ok(self.mult_roots[d as usize].get_or_init(|| RootTable::new(n)))
    }

    pub fn additive_roots(&self) -> &RootTable {
        &self.additive_roots
    }

    /// `chi_d(x) = zeta_p^(Tr_(q^d/p)(x))`.
    pub fn eval_additive(&self, d: u32, x: FieldElement) -> Result<Complex64> {
        let k = self.field.trace_to_prime(x, d)?;
        Ok(self.additive_roots.get_u(k as u64))
    }

    /// `chi_d(alpha_d^k)`, without membership checks.
    pub fn additive_at(&self, d: u32, k: u64) -> Result<Complex64> {
        let traces = self.prime_traces(d)?;
        let tr = traces[(k % traces.len() as u64) as usize];
        Ok(self.additive_roots.get_u(tr as u64))
    }

    /// `lambda_d^j(x) = zeta_(q^d-1)^(j * log_(alpha_d) x)`; `j` may be
    /// negative, which gives the conjugate character.
    pub fn eval_mult(&self, d: u32, j: i64, x: FieldElement) -> Result<Complex64> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let k = self.field.subfield_log(x, d)?;
        self.mult_at(d, j, k)
    }

    /// `lambda_d^j(alpha_d^k)`.
    pub fn mult_at(&self, d: u32, j: i64, k: u64) -> Result<Complex64> {
        let roots = self.mult_roots(d)?;
        let n = roots.modulus() as i128;
        let e = (j as i128 * k as i128).rem_euclid(n);
        Ok(roots.get_u(e as u64))
    }

    /// `G(lambda_d^j) = sum over x in F_(q^d)^* of lambda_d^j(x) chi_d(x)`,
    /// accumulated in ascending exponent order.
    pub fn gauss_sum_direct(&self, d: u32, j: i64) -> Result<Complex64> {
        let traces = self.prime_traces(d)?;
        let roots = self.mult_roots(d)?;
        let n = roots.modulus() as i128;
        let jr = (j as i128).rem_euclid(n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &tr) in traces.iter().enumerate() {
            let e = (jr * k as i128 % n) as u64;
            acc += roots.get_u(e) * self.additive_roots.get_u(tr as u64);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TowerSpec;

    fn field(p: u32, t: u32, m: u32) -> BigField {
        BigField::new(TowerSpec::new(p, t, 1, 1, m).unwrap()).unwrap()
    }

    #[test]
    fn additive_character_basics() {
        let f = field(2, 1, 4);
        let ctx = CharacterContext::new(&f);
        assert_eq!(
            ctx.eval_additive(4, f.zero()).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        for x in f.elements() {
            let v = ctx.eval_additive(4, x).unwrap();
            assert!(v == Complex64::new(1.0, 0.0) || (v + 1.0).norm() < 1e-12);
        }
        assert!(matches!(
            ctx.eval_additive(1, f.primitive_element()),
            Err(Error::NotInSubfield { .. })
        ));
    }

    #[test]
    fn multiplicative_character_basics() {
        let f = field(3, 1, 2);
        let ctx = CharacterContext::new(&f);
        for x in f.elements().skip(1) {
            assert_eq!(ctx.eval_mult(2, 0, x).unwrap(), Complex64::new(1.0, 0.0));
        }
        let a = f.primitive_element();
        let z = RootTable::new(8).get(3);
        assert!((ctx.eval_mult(2, 3, a).unwrap() - z).norm() < 1e-12);
        assert_eq!(ctx.eval_mult(2, 1, f.zero()), Err(Error::ZeroArgument));
    }

    #[test]
    fn trivial_gauss_sum_is_minus_one() {
        let f = field(5, 1, 2);
        let ctx = CharacterContext::new(&f);
        for d in [1, 2] {
            let g = ctx.gauss_sum_direct(d, 0).unwrap();
            assert!((g + 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn quadratic_gauss_sum_over_f3() {
        let f = field(3, 1, 1);
        let ctx = CharacterContext::new(&f);
        let g = ctx.gauss_sum_direct(1, 1).unwrap();
        assert!((g - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
    }
}
