use std::fmt;

use crate::{
    arith::prime_factors,
    gf::{poly, TowerSpec, DEFAULT_TABLE_CAP},
    Error, Result,
};

const ZERO_LOG: u32 = u32::MAX;

/// An element of `F_(q^m)`, carried in both representations at once: the
/// coordinate vector over `F_p` packed as a base-`p` integer, and the discrete
/// logarithm to the base of the primitive element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coords: u32,
    log: u32,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement {
        coords: 0,
        log: ZERO_LOG,
    };

    pub fn is_zero(&self) -> bool {
        self.log == ZERO_LOG
    }

    /// Exponent `i` with `self = alpha^i`, or `None` for zero.
    pub fn exponent(&self) -> Option<u32> {
        (!self.is_zero()).then_some(self.log)
    }

    /// Coordinates over `F_p` packed as `sum c_i p^i`.
    pub fn coords(&self) -> u32 {
        self.coords
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            None => write!(f, "0"),
            Some(i) => write!(f, "a^{i}"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `F_(q^m)` with full log/antilog tables. Every subfield of the tower lives
/// inside it: `x` is in `F_(q^d)` iff `x = 0` or `(q^m-1)/(q^d-1)` divides
/// its exponent.
///
/// Immutable after construction, so it can be shared freely between threads.
pub struct BigField {
    spec: TowerSpec,
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    alpha: FieldElement,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
}

impl fmt::Debug for BigField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BigField")
            .field("spec", &self.spec)
            .field("modulus", &self.modulus)
            .field("alpha_coords", &self.alpha.coords)
            .finish()
    }
}

impl BigField {
    pub fn new(spec: TowerSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_TABLE_CAP)
    }

    /// Builds the field, refusing anything with more than `cap` elements.
    ///
    /// The modulus is the first monic irreducible polynomial of degree `t*m`
    /// in ascending coefficient order; the primitive element is the first
    /// generator in ascending coordinate order. Both choices are fixed so the
    /// output is reproducible.
    pub fn with_cap(spec: TowerSpec, cap: u64) -> Result<Self> {
        let size = spec.field_size();
        if size > cap as u128 || size > u32::MAX as u128 {
            return Err(Error::FieldTooLarge { size, cap });
        }
        let p = spec.p();
        let degree = spec.prime_degree();
        let size = size as u32;
        let order = size - 1;
        let modulus = poly::first_irreducible(p, degree);

        let factors = prime_factors(order as u64);
        let alpha_coords = (1..size)
            .find(|&c| {
                let a = unpack(c, p, degree);
                factors
                    .iter()
                    .all(|&r| poly::pow_mod(&a, order as u64 / r, &modulus, p) != vec![1])
            })
            .expect("a finite field has a primitive element");

        let alpha_poly = unpack(alpha_coords, p, degree);
        let mut exp_table = vec![0u32; order as usize];
        let mut log_table = vec![ZERO_LOG; size as usize];
        let mut cur = vec![0u32; degree as usize];
        cur[0] = 1;
        for i in 0..order {
            let c = pack(&cur, p);
            assert_eq!(
                log_table[c as usize], ZERO_LOG,
                "primitive element repeated a power before its order"
            );
            exp_table[i as usize] = c;
            log_table[c as usize] = i;
            cur = mul_reduce(&cur, &alpha_poly, &modulus, p);
        }

        Ok(BigField {
            spec,
            p,
            degree,
            order,
            modulus,
            alpha: FieldElement {
                coords: alpha_coords,
                log: 1 % order.max(1),
            },
            exp_table,
            log_table,
        })
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    /// Degree over `F_p`.
    pub fn prime_degree(&self) -> u32 {
        self.degree
    }

    /// `q^m - 1`, the order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn size(&self) -> u64 {
        self.order as u64 + 1
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.alpha
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.from_exponent(0)
    }

    pub fn from_exponent(&self, i: u64) -> FieldElement {
        let i = (i % self.order as u64) as u32;
        FieldElement {
            coords: self.exp_table[i as usize],
            log: i,
        }
    }

    pub fn from_coords(&self, coords: u32) -> Result<FieldElement> {
        if coords as u64 >= self.size() {
            return Err(Error::InvalidParameter(format!(
                "coordinate index {coords} out of range for a field of {} elements",
                self.size()
            )));
        }
        Ok(self.elem(coords))
    }

    /// The prime-field constant `c mod p`.
    pub fn prime_scalar(&self, c: u32) -> FieldElement {
        self.elem(c % self.p)
    }

    fn elem(&self, coords: u32) -> FieldElement {
        FieldElement {
            coords,
            log: self.log_table[coords as usize],
        }
    }

    pub fn coordinates(&self, x: FieldElement) -> Vec<u32> {
        unpack(x.coords, self.p, self.degree)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.elem(self.add_coords(x.coords, y.coords))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x;
        }
        let (p, mut c, mut out, mut pw) = (self.p, x.coords, 0u32, 1u32);
        for _ in 0..self.degree {
            let d = c % p;
            out += ((p - d) % p) * pw;
            c /= p;
            pw = pw.wrapping_mul(p);
        }
        self.elem(out)
    }

    pub(crate) fn add_coords(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b, mut out, mut pw) = (a, b, 0u32, 1u32);
        for _ in 0..self.degree {
            let s = a % p + b % p;
            let d = if s >= p { s - p } else { s };
            out += d * pw;
            a /= p;
            b /= p;
            pw = pw.wrapping_mul(p);
        }
        out
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let s = x.log as u64 + y.log as u64;
        self.from_exponent(s)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let i = x.exponent().ok_or(Error::DivisionByZero)?;
        Ok(self.from_exponent((self.order - i) as u64))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k`, with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        match x.exponent() {
            None if k == 0 => self.one(),
            None => FieldElement::ZERO,
            Some(i) => {
                let e = (i as u128 * k as u128) % self.order as u128;
                self.from_exponent(e as u64)
            }
        }
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: FieldElement, k: u32) -> FieldElement {
        let pk = crate::arith::mod_pow(self.p as u64, k as u64, self.order as u64);
        self.pow(x, pk)
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        let m = self.spec.m();
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::DegreeNotDividing { from: m, to: d, m });
        }
        Ok(())
    }

    /// `(q^m - 1)/(q^d - 1)`: exponent step of the subfield `F_(q^d)`.
    pub fn subfield_step(&self, d: u32) -> Result<u64> {
        self.check_degree(d)?;
        Ok(self.order as u64 / self.q_pow_minus_one(d))
    }

    /// `q^d - 1` for a degree dividing `m`.
    pub fn q_pow_minus_one(&self, d: u32) -> u64 {
        self.spec.q_pow(d).expect("q^d <= q^m fits") - 1
    }

    pub fn in_subfield(&self, x: FieldElement, d: u32) -> bool {
        match (x.exponent(), self.subfield_step(d)) {
            (None, Ok(_)) => true,
            (Some(i), Ok(step)) => (i as u64).is_multiple_of(step),
            (_, Err(_)) => false,
        }
    }

    /// `alpha_d = alpha^((q^m-1)/(q^d-1))`, a generator of `F_(q^d)^*`.
    pub fn subfield_generator(&self, d: u32) -> Result<FieldElement> {
        Ok(self.from_exponent(self.subfield_step(d)?))
    }

    /// `log_(alpha_d)(x)` for nonzero `x` in `F_(q^d)`.
    pub fn subfield_log(&self, x: FieldElement, d: u32) -> Result<u64> {
        let step = self.subfield_step(d)?;
        let i = x.exponent().ok_or(Error::ZeroArgument)? as u64;
        if !i.is_multiple_of(step) {
            return Err(Error::NotInSubfield { degree: d });
        }
        Ok(i / step)
    }

    /// `Tr_(q^from / q^to)(x) = sum_j x^((q^to)^j)` for `j < from/to`.
    pub fn trace(&self, x: FieldElement, from_deg: u32, to_deg: u32) -> Result<FieldElement> {
        let m = self.spec.m();
        if from_deg == 0
            || to_deg == 0
            || !from_deg.is_multiple_of(to_deg)
            || !m.is_multiple_of(from_deg)
        {
            return Err(Error::DegreeNotDividing {
                from: from_deg,
                to: to_deg,
                m,
            });
        }
        if !self.in_subfield(x, from_deg) {
            return Err(Error::NotInSubfield { degree: from_deg });
        }
        let Some(i) = x.exponent() else {
            return Ok(FieldElement::ZERO);
        };
        let qt = self.spec.q_pow(to_deg).expect("fits") as u128;
        let ord = self.order as u128;
        let mut e = i as u128;
        let mut acc = 0u32;
        for _ in 0..from_deg / to_deg {
            acc = self.add_coords(acc, self.exp_table[e as usize]);
            e = e * qt % ord;
        }
        Ok(self.elem(acc))
    }

    /// `Tr_(q^d / p)(x)` as an integer in `0..p`.
    pub fn trace_to_prime(&self, x: FieldElement, d: u32) -> Result<u32> {
        self.check_degree(d)?;
        if !self.in_subfield(x, d) {
            return Err(Error::NotInSubfield { degree: d });
        }
        let Some(i) = x.exponent() else {
            return Ok(0);
        };
        Ok(self.prime_trace_of_exponent(i as u64, self.spec.t() * d))
    }

    fn prime_trace_of_exponent(&self, i: u64, terms: u32) -> u32 {
        let ord = self.order as u128;
        let p = self.p as u128;
        let mut e = i as u128 % ord;
        let mut acc = 0u32;
        for _ in 0..terms {
            acc = self.add_coords(acc, self.exp_table[e as usize]);
            e = e * p % ord;
        }
        debug_assert!(acc < self.p, "trace to F_p must be a constant");
        acc
    }

    /// `N_(q^m / q^d)(x) = x^((q^m-1)/(q^d-1))`.
    pub fn norm(&self, x: FieldElement, to_deg: u32) -> Result<FieldElement> {
        let step = self.subfield_step(to_deg)?;
        Ok(self.pow(x, step))
    }

    /// All elements: zero first, then `alpha^0, alpha^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO)
            .chain((0..self.order as u64).map(|i| self.from_exponent(i)))
    }

    /// `Tr_(q^d / q)(alpha_d^k)` for `k` in `0..q^d-1`.
    pub fn subfield_trace_table(&self, d: u32) -> Result<Vec<FieldElement>> {
        let step = self.subfield_step(d)?;
        let n = self.q_pow_minus_one(d);
        (0..n)
            .map(|k| self.trace(self.from_exponent(k * step), d, 1))
            .collect()
    }

    /// `Tr_(q^d / p)(alpha_d^k)` for `k` in `0..q^d-1`, as integers mod `p`.
    pub fn prime_trace_table(&self, d: u32) -> Result<Vec<u32>> {
        let step = self.subfield_step(d)?;
        let n = self.q_pow_minus_one(d);
        let terms = self.spec.t() * d;
        Ok((0..n)
            .map(|k| self.prime_trace_of_exponent(k * step, terms))
            .collect())
    }

    /// Renders an `F_q` scalar: an integer for prime `q`, otherwise `0` or
    /// `g^k` with `g` the generator `alpha^((q^m-1)/(q-1))` of `F_q^*`.
    pub fn render_scalar(&self, x: FieldElement) -> Result<String> {
        if !self.in_subfield(x, 1) {
            return Err(Error::NotInSubfield { degree: 1 });
        }
        if self.spec.t() == 1 {
            return Ok(x.coords.to_string());
        }
        Ok(match x.exponent() {
            None => "0".to_string(),
            Some(_) => format!("g^{}", self.subfield_log(x, 1)?),
        })
    }
}

fn unpack(mut c: u32, p: u32, degree: u32) -> Vec<u32> {
    (0..degree)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// `a * b mod f` for `a, b` of length `deg f`, without allocation churn in
/// the table-building loop.
fn mul_reduce(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let n = f.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    for v in prod.iter_mut() {
        *v %= p64;
    }
    // f is monic: x^n = -(f_0 + ... + f_(n-1) x^(n-1))
    for k in (n..2 * n).rev() {
        let c = prod[k] % p64;
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &fi) in f[..n].iter().enumerate() {
            let idx = k - n + i;
            prod[idx] = (prod[idx] + (p64 - c) * fi as u64) % p64;
        }
    }
    prod[..n].iter().map(|&v| v as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> BigField {
        BigField::new(TowerSpec::new(p, t, m1, m2, m).unwrap()).unwrap()
    }

    #[test]
    fn builds_small_fields() {
        let f = field(2, 1, 2, 4, 4);
        assert_eq!(f.size(), 16);
        assert_eq!((f.spec().e(), f.spec().l()), (2, 1));
        let f = field(3, 1, 2, 3, 6);
        assert_eq!(f.size(), 729);
        assert_eq!((f.spec().e(), f.spec().l()), (1, 2));
    }

    #[test]
    fn rejects_oversized_field() {
        let spec = TowerSpec::new(2, 1, 1, 1, 21).unwrap();
        assert!(matches!(
            BigField::new(spec),
            Err(Error::FieldTooLarge { .. })
        ));
        let spec = TowerSpec::new(2, 1, 1, 1, 8).unwrap();
        assert!(matches!(
            BigField::with_cap(spec, 255),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn primitive_element_has_full_order() {
        for (p, t, m) in [(2, 1, 4), (3, 1, 6), (2, 2, 3), (5, 1, 4), (7, 1, 1)] {
            let f = field(p, t, 1, 1, m);
            let a = f.primitive_element();
            for r in prime_factors(f.order()) {
                assert_ne!(f.pow(a, f.order() / r), f.one());
            }
            assert_eq!(f.pow(a, f.order()), f.one());
        }
    }

    #[test]
    fn exponent_arithmetic() {
        let f = field(2, 1, 2, 4, 4);
        let a = f.primitive_element();
        assert_eq!(f.mul(f.pow(a, 3), f.pow(a, 5)), f.pow(a, 8));
        assert_eq!(f.pow(a, f.order()), f.one());
        for x in f.elements() {
            assert_eq!(f.add(x, f.neg(x)), f.zero());
        }
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn odd_characteristic_negation_and_subtraction() {
        let f = field(5, 1, 1, 2, 2);
        for x in f.elements() {
            for y in f.elements().step_by(3) {
                assert_eq!(f.add(f.sub(x, y), y), x);
            }
        }
    }

    #[test]
    fn trace_and_norm_edge_cases() {
        let f = field(2, 1, 2, 4, 4);
        assert_eq!(f.trace(f.zero(), 4, 1).unwrap(), f.zero());
        assert_eq!(f.norm(f.one(), 4).unwrap(), f.one());
        let a = f.primitive_element();
        assert_eq!(f.norm(a, 2).unwrap(), f.pow(a, 5));
        assert!(matches!(
            f.trace(a, 3, 1),
            Err(Error::DegreeNotDividing { .. })
        ));
        assert!(matches!(f.trace(a, 2, 1), Err(Error::NotInSubfield { .. })));
        assert!(matches!(f.norm(a, 3), Err(Error::DegreeNotDividing { .. })));
    }

    #[test]
    fn trace_kernel_in_f16_has_seven_nonzero_elements() {
        let f = field(2, 1, 2, 4, 4);
        let zeros = f
            .elements()
            .skip(1)
            .filter(|&x| f.trace(x, 4, 1).unwrap().is_zero())
            .count();
        assert_eq!(zeros, 7);
    }

    #[test]
    fn scalar_rendering() {
        let f = field(3, 1, 1, 1, 2);
        assert_eq!(f.render_scalar(f.prime_scalar(2)).unwrap(), "2");
        let f = field(2, 2, 1, 1, 2);
        let g = f.subfield_generator(1).unwrap();
        assert_eq!(f.render_scalar(g).unwrap(), "g^1");
        assert_eq!(f.render_scalar(f.zero()).unwrap(), "0");
        assert!(f.render_scalar(f.primitive_element()).is_err());
    }
}
