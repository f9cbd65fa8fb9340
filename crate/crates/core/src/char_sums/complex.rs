use std::f64::consts::TAU;

pub use num_complex::Complex64;

use crate::{Error, Result};

/// Comparison tolerance for floating character sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-6,
            abs: 1e-9,
        }
    }
}

impl Tolerance {
    /// Nearest integer to `z`, provided `|z - k| < rel * (1 + |z|)`.
    pub fn round_integral(&self, z: Complex64) -> Result<i64> {
        let k = z.re.round();
        let residual = Complex64::new(z.re - k, z.im).norm();
        if residual < self.rel * (1.0 + z.norm()) {
            Ok(k as i64)
        } else {
            Err(Error::NotIntegral { re: z.re, im: z.im })
        }
    }

    pub fn approx_eq(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }
}

/// `zeta_n^k = exp(2 pi i k / n)` for `k` in `0..n`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: u64,
    values: Vec<Complex64>,
}

impl RootTable {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let values = (0..n)
            .map(|k| {
                let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        RootTable { n, values }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.values[k.rem_euclid(self.n as i64) as usize]
    }

    pub fn get_u(&self, k: u64) -> Complex64 {
        self.values[(k % self.n) as usize]
    }
}
