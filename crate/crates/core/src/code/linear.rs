use std::{collections::BTreeMap, sync::OnceLock};

use rayon::prelude::*;

use crate::{
    arith::exact_log,
    code::{DefiningSet, WeightDistribution},
    BigField, Error, FieldElement, Result,
};

/// The code `C_D = {c(b) : b in F_(q^m1)}` with
/// `c(b) = (Tr_(q^m1/q)(b N_(q^m/q^m1)(d_i)))_i`.
///
/// Coordinates follow the order of the defining set. Column `i` is stored
/// as `r_i = log_(alpha_1) N_(q^m/q^m1)(d_i)`, which for `d_i = alpha^j` is
/// `j mod (q^m1 - 1)`.
pub struct LinearCode<'f> {
    field: &'f BigField,
    set: DefiningSet,
    columns: Vec<u64>,
    weights: OnceLock<Vec<u64>>,
}

impl<'f> LinearCode<'f> {
    pub fn new(field: &'f BigField, set: DefiningSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyDefiningSet);
        }
        let n1 = field.q_pow_minus_one(field.spec().m1());
        let columns = set
            .elements()
            .iter()
            .map(|x| x.exponent().expect("defining sets exclude zero") as u64 % n1)
            .collect();
        Ok(LinearCode {
            field,
            set,
            columns,
            weights: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &'f BigField {
        self.field
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.set
    }

    pub fn length(&self) -> u64 {
        self.columns.len() as u64
    }

    /// `log_(alpha_1)` of each column `N_(q^m/q^m1)(d_i)`.
    pub fn column_exponents(&self) -> &[u64] {
        &self.columns
    }

    /// The column `N_(q^m/q^m1)(d_i)` as field elements.
    pub fn columns(&self) -> Vec<FieldElement> {
        let step = self
            .field
            .subfield_step(self.field.spec().m1())
            .expect("m1 divides m");
        self.columns
            .iter()
            .map(|&r| self.field.from_exponent(r * step))
            .collect()
    }

    /// The codeword `c(b)`, computed coordinate by coordinate.
    pub fn codeword(&self, b: FieldElement) -> Result<Vec<FieldElement>> {
        codeword(self.field, b, &self.set)
    }

    /// Weights of `c(alpha_1^s)` for `s` in `0..q^m1-1`.
    pub fn weights_by_exponent(&self) -> &[u64] {
        self.weights.get_or_init(|| self.compute_weights())
    }

    pub fn weight_of(&self, b: FieldElement) -> Result<u64> {
        if b.is_zero() {
            return Ok(0);
        }
        let s = self
            .field
            .subfield_log(b, self.field.spec().m1())
            .map_err(|_| Error::WrongSubfield)?;
        Ok(self.weights_by_exponent()[s as usize])
    }

    /// `k`, from the size `q^(m1-k)` of the kernel of `b -> c(b)`.
    pub fn dimension(&self) -> u32 {
        let zeros = 1 + self
            .weights_by_exponent()
            .iter()
            .filter(|&&w| w == 0)
            .count() as u64;
        let defect = exact_log(self.field.q(), zeros).expect("kernel is an F_q-subspace");
        self.field.spec().m1() - defect
    }

    /// Exact distribution over all `q^m1` messages, normalised by the kernel
    /// size so that counts refer to distinct codewords.
    pub fn weight_distribution(&self) -> WeightDistribution {
        self.distribution_from(self.weights_by_exponent().iter().copied())
    }

    /// The same distribution, with every codeword built from the field
    /// arithmetic directly. Slow; intended as a cross-check.
    pub fn weight_distribution_naive(&self) -> Result<WeightDistribution> {
        let step = self.field.subfield_step(self.field.spec().m1())?;
        let n1 = self.field.q_pow_minus_one(self.field.spec().m1());
        let weights = (0..n1)
            .into_par_iter()
            .map(|s| {
                let c = self.codeword(self.field.from_exponent(s * step))?;
                Ok(c.iter().filter(|x| !x.is_zero()).count() as u64)
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(self.distribution_from(weights.into_iter()))
    }

    fn distribution_from(&self, weights: impl Iterator<Item = u64>) -> WeightDistribution {
        let mut raw: BTreeMap<u64, u64> = BTreeMap::new();
        raw.insert(0, 1);
        for w in weights {
            *raw.entry(w).or_insert(0) += 1;
        }
        let zeros = raw[&0];
        let q = self.field.q();
        let defect = exact_log(q, zeros).expect("kernel is an F_q-subspace");
        let counts = raw.into_iter().map(|(w, a)| (w, a / zeros)).collect();
        WeightDistribution::new(self.length(), self.field.spec().m1() - defect, q, counts)
    }

    /// `weight(s) = #{i : Tr(alpha_1^(s + r_i)) != 0}`, evaluated as a
    /// cyclic correlation of the trace-support bitmap with the column
    /// multiset, both packed in 64-bit words.
    fn compute_weights(&self) -> Vec<u64> {
        let m1 = self.field.spec().m1();
        let traces = self.field.subfield_trace_table(m1).expect("m1 divides m");
        let n1 = traces.len();
        let words = n1.div_ceil(64);

        // support of the trace, written twice so any window of length n1 is contiguous
        let mut doubled = vec![0u64; (2 * n1).div_ceil(64) + 2];
        for j in 0..2 * n1 {
            if !traces[j % n1].is_zero() {
                doubled[j / 64] |= 1 << (j % 64);
            }
        }

        let mut multiplicity = vec![0u32; n1];
        for &r in &self.columns {
            multiplicity[r as usize] += 1;
        }
        let depth = multiplicity.iter().copied().max().unwrap_or(0) as usize;
        let mut layers = vec![vec![0u64; words]; depth];
        for (r, &c) in multiplicity.iter().enumerate() {
            for layer in layers.iter_mut().take(c as usize) {
                layer[r / 64] |= 1 << (r % 64);
            }
        }

        (0..n1)
            .into_par_iter()
            .map(|s| {
                let (base, shift) = (s / 64, s % 64);
                let mut window = vec![0u64; words];
                for (j, w) in window.iter_mut().enumerate() {
                    let lo = doubled[base + j] >> shift;
                    let hi = if shift == 0 {
                        0
                    } else {
                        doubled[base + j + 1] << (64 - shift)
                    };
                    *w = lo | hi;
                }
                layers
                    .iter()
                    .map(|layer| {
                        layer
                            .iter()
                            .zip(&window)
                            .map(|(a, b)| (a & b).count_ones() as u64)
                            .sum::<u64>()
                    })
                    .sum()
            })
            .collect()
    }
}

/// `c(b)` for `b` in `F_(q^m1)`, one `F_q` scalar per element of `set`.
pub fn codeword(field: &BigField, b: FieldElement, set: &DefiningSet) -> Result<Vec<FieldElement>> {
    let m1 = field.spec().m1();
    if !field.in_subfield(b, m1) {
        return Err(Error::WrongSubfield);
    }
    set.elements()
        .iter()
        .map(|&d| field.trace(field.mul(b, field.norm(d, m1)?), m1, 1))
        .collect()
}

/// Weight distribution of the code defined by `set`.
pub fn weight_distribution(field: &BigField, set: &DefiningSet) -> Result<WeightDistribution> {
    Ok(LinearCode::new(field, set.clone())?.weight_distribution())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{code::defining_set, TowerSpec};

    fn field(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> BigField {
        BigField::new(TowerSpec::new(p, t, m1, m2, m).unwrap()).unwrap()
    }

    #[test]
    fn smallest_examples() {
        let f = field(2, 1, 2, 4, 4);
        let c = LinearCode::new(&f, defining_set(&f, 0).unwrap()).unwrap();
        assert_eq!(c.weight_distribution().enumerator(), "1 + 2z^4 + z^6");
        let c = LinearCode::new(&f, defining_set(&f, 1).unwrap()).unwrap();
        assert_eq!(c.weight_distribution().enumerator(), "1 + z^4 + 2z^6");
    }

    #[test]
    fn degenerate_kernel_is_normalised() {
        // (m1, m2) = (2, 2) with a = 0 has a nontrivial kernel
        let f = field(2, 1, 2, 2, 4);
        let c = LinearCode::new(&f, defining_set(&f, 0).unwrap()).unwrap();
        let d = c.weight_distribution();
        assert_eq!(d.total(), 2u64.pow(d.k));
        assert!(d.k < 2);
        assert_eq!(d, c.weight_distribution_naive().unwrap());
    }

    #[test]
    fn codeword_checks_subfield() {
        let f = field(2, 1, 2, 4, 4);
        let d = defining_set(&f, 0).unwrap();
        assert_eq!(
            codeword(&f, f.primitive_element(), &d),
            Err(Error::WrongSubfield)
        );
        assert!(codeword(&f, f.zero(), &d)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
    }

    #[test]
    fn bitset_matches_naive_across_word_boundaries() {
        for (p, t, m1, m2, m) in [
            (2, 1, 8, 2, 8),
            (3, 1, 4, 2, 4),
            (2, 2, 3, 2, 6),
            (2, 1, 7, 1, 7),
        ] {
            let f = field(p, t, m1, m2, m);
            let c = LinearCode::new(&f, defining_set(&f, 1).unwrap()).unwrap();
            assert_eq!(
                c.weight_distribution(),
                c.weight_distribution_naive().unwrap()
            );
        }
    }
}
