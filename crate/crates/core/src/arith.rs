//! Small integer helpers shared by the field, character and code layers.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^t` into `(p, t)`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = *prime_factors(q).first()?;
    let mut t = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        t += 1;
    }
    (r == 1).then_some((p, t))
}

pub fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn pow_i128(base: u64, exp: u32) -> i128 {
    (base as i128).pow(exp)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Exact `log_base(value)` when `value` is a power of `base`.
pub fn exact_log(base: u64, value: u64) -> Option<u32> {
    if base < 2 || value == 0 {
        return None;
    }
    let mut k = 0;
    let mut v = value;
    while v.is_multiple_of(base) {
        v /= base;
        k += 1;
    }
    (v == 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(4095), vec![3, 5, 7, 13]);
        assert_eq!(prime_factors(65535), vec![3, 5, 17, 257]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn modular_power_and_logs() {
        assert_eq!(mod_pow(2, 10, 1000), 24);
        assert_eq!(mod_pow(3, 0, 7), 1);
        assert_eq!(exact_log(3, 729), Some(6));
        assert_eq!(exact_log(3, 730), None);
    }
}
