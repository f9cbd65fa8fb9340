//! Dense polynomials over a prime field `F_p`, little-endian coefficients.
//!
//! Only what field construction needs: reduction, multiplication modulo a
//! monic modulus, gcd, and Rabin's irreducibility test.

use crate::arith::{mod_pow, prime_factors};

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `a` modulo `f` (any nonzero `f`).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(*f.last().unwrap(), p) as u64;
    let mut r = trim(a.to_vec());
    let p64 = p as u64;
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = (*r.last().unwrap() as u64 * lead_inv) % p64;
        for (i, &fi) in f.iter().enumerate() {
            let sub = (c * fi as u64) % p64;
            let v = &mut r[shift + i];
            *v = ((*v as u64 + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    rem(&acc, f, p)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test for a monic `f` of degree `n >= 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    let x: Poly = vec![0, 1];
    // x^(p^k) mod f, for k = 0..=n
    let mut frob = Vec::with_capacity(n + 1);
    let mut cur = rem(&x, f, p);
    frob.push(cur.clone());
    for _ in 0..n {
        cur = pow_mod(&cur, p as u64, f, p);
        frob.push(cur.clone());
    }
    if sub(&frob[n], &rem(&x, f, p), p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        let h = sub(&frob[k], &x, p);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `n` over `F_p`, scanning the
/// lower coefficients in ascending base-`p` integer order.
pub(crate) fn first_irreducible(p: u32, n: u32) -> Poly {
    let n = n as usize;
    let mut lower = vec![0u32; n];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment base-p counter
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < n, "an irreducible polynomial of every degree exists");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_irreducibles_over_f2() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn irreducibility_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_p
        fn count(p: u32, n: u32) -> usize {
            let total = (p as usize).pow(n);
            (0..total)
                .filter(|&c| {
                    let mut f: Poly = (0..n)
                        .map(|i| (c / (p as usize).pow(i)) as u32 % p)
                        .collect();
                    f.push(1);
                    is_irreducible(&f, p)
                })
                .count()
        }
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(2, 6), 9);
        assert_eq!(count(3, 2), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(5, 2), 10);
    }

    #[test]
    fn gcd_of_coprime_and_shared_factors() {
        // (x+1)(x+2) and (x+1) over F_3
        let a = mul(&[1, 1], &[2, 1], 3);
        assert_eq!(gcd(&a, &[1, 1], 3), vec![1, 1]);
        assert_eq!(gcd(&[1, 1], &[2, 1], 3).len(), 1);
    }
}
