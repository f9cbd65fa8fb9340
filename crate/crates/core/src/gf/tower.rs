use serde::{Deserialize, Serialize};

use crate::{
    arith::{gcd, is_prime, pow_u64},
    Error, Result,
};

/// Default cap on the number of elements of the big field `F_(q^m)`.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 20;

/// Parameters of the tower `F_p ⊆ F_q ⊆ F_(q^m1), F_(q^m2) ⊆ F_(q^m)`.
///
/// `e = gcd(m1, m2)` and `l = gcd(m1/e, q - 1)` are always derived here; a
/// caller can never supply them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTowerSpec", into = "RawTowerSpec")]
pub struct TowerSpec {
    p: u32,
    t: u32,
    m1: u32,
    m2: u32,
    m: u32,
    q: u64,
    e: u32,
    l: u32,
}

#[derive(Serialize, Deserialize)]
struct RawTowerSpec {
    p: u32,
    t: u32,
    m1: u32,
    m2: u32,
    m: u32,
}

impl TryFrom<RawTowerSpec> for TowerSpec {
    type Error = Error;

    fn try_from(raw: RawTowerSpec) -> Result<Self> {
        TowerSpec::new(raw.p, raw.t, raw.m1, raw.m2, raw.m)
    }
}

impl From<TowerSpec> for RawTowerSpec {
    fn from(s: TowerSpec) -> Self {
        RawTowerSpec {
            p: s.p,
            t: s.t,
            m1: s.m1,
            m2: s.m2,
            m: s.m,
        }
    }
}

impl TowerSpec {
    pub fn new(p: u32, t: u32, m1: u32, m2: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if t == 0 || m1 == 0 || m2 == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!(
                "t, m1, m2, m must be positive (got t={t}, m1={m1}, m2={m2}, m={m})"
            )));
        }
        if !m.is_multiple_of(m1) || !m.is_multiple_of(m2) {
            return Err(Error::InvalidDivisibility(format!(
                "m1={m1} and m2={m2} must both divide m={m}"
            )));
        }
        let q = pow_u64(p as u64, t).ok_or(Error::FieldTooLarge {
            size: (p as u128).saturating_pow(t),
            cap: DEFAULT_TABLE_CAP,
        })?;
        let e = gcd(m1 as u64, m2 as u64) as u32;
        let l = gcd((m1 / e) as u64, q - 1) as u32;
        Ok(TowerSpec {
            p,
            t,
            m1,
            m2,
            m,
            q,
            e,
            l,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Degree of `F_(q^m)` over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.t * self.m
    }

    /// `q^d`, or `None` on overflow.
    pub fn q_pow(&self, d: u32) -> Option<u64> {
        pow_u64(self.q, d)
    }

    /// Number of elements of `F_(q^m)`.
    pub fn field_size(&self) -> u128 {
        (self.p as u128).saturating_pow(self.t * self.m)
    }
}

impl std::fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "p={} t={} q={} m1={} m2={} m={} (e={}, l={})",
            self.p, self.t, self.q, self.m1, self.m2, self.m, self.e, self.l
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derives_e_and_l() {
        let s = TowerSpec::new(2, 1, 2, 4, 4).unwrap();
        assert_eq!((s.q(), s.e(), s.l()), (2, 2, 1));
        let s = TowerSpec::new(3, 1, 2, 3, 6).unwrap();
        assert_eq!((s.q(), s.e(), s.l()), (3, 1, 2));
        let s = TowerSpec::new(3, 1, 4, 2, 4).unwrap();
        assert_eq!((s.e(), s.l()), (2, 2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(TowerSpec::new(4, 1, 1, 1, 1), Err(Error::NotPrime(4)));
        assert!(matches!(
            TowerSpec::new(2, 1, 3, 4, 4),
            Err(Error::InvalidDivisibility(_))
        ));
        assert!(matches!(
            TowerSpec::new(2, 0, 1, 1, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn display_lists_derived_fields() {
        let s = TowerSpec::new(5, 1, 2, 4, 4).unwrap();
        assert_eq!(s.to_string(), "p=5 t=1 q=5 m1=2 m2=4 m=4 (e=2, l=1)");
    }
}
