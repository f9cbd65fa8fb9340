//! Closed-form Gauss sums: the semi-primitive case and the quadratic case.

use crate::{
    arith::{exact_log, is_prime, mod_pow},
    char_sums::Complex64,
    Error, Result,
};

/// Parameters `(j, gamma)` of a semi-primitive Gauss sum of order `order`
/// over `F_r`: `j` is least with `p^j = -1 (mod order)` and `r = p^(2 j gamma)`.
pub fn semiprimitive_parameters(order: u64, p: u64, r: u64) -> Result<(u32, u32)> {
    if order == 2 {
        return Err(Error::OrderTwo);
    }
    if order < 2 {
        return Err(Error::InvalidParameter(format!(
            "character order {order} must be at least 3"
        )));
    }
    let not_semi = Error::NotSemiprimitive { order, p };
    let j = (1..=order)
        .find(|&j| mod_pow(p, j, order) == order - 1)
        .ok_or(not_semi.clone())? as u32;
    let k = exact_log(p, r).ok_or(not_semi.clone())?;
    if k == 0 || k % (2 * j) != 0 {
        return Err(not_semi);
    }
    Ok((j, k / (2 * j)))
}

/// `G(phi^s)` for a character `phi` of order `order` over `F_r` in the
/// semi-primitive case, `1 <= s <= order - 1`.
pub fn gauss_sum_semiprimitive(order: u64, s: u64, p: u64, r: u64) -> Result<Complex64> {
    let (j, gamma) = semiprimitive_parameters(order, p, r)?;
    if s == 0 || s >= order {
        return Err(Error::InvalidParameter(format!(
            "power {s} must lie in 1..{order}"
        )));
    }
    let pj = (p as u128).pow(j);
    let sqrt_r = (pj as f64).powi(gamma as i32);
    let cofactor_odd = ((pj + 1) / order as u128) % 2 == 1;
    let sign_s = order.is_multiple_of(2) && p % 2 == 1 && gamma % 2 == 1 && cofactor_odd;
    let negative = if sign_s {
        s % 2 == 1
    } else {
        (gamma - 1) % 2 == 1
    };
    Ok(Complex64::new(if negative { -sqrt_r } else { sqrt_r }, 0.0))
}

/// `G(eta)` for the quadratic character `eta` of `F_q`, `q = p^t`, `p` odd.
pub fn gauss_quadratic(p: u64, t: u32) -> Result<Complex64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    let sqrt_q = (p as f64).powf(t as f64 / 2.0);
    let sign = if (t - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let base = Complex64::new(sign * sqrt_q, 0.0);
    if p % 4 == 1 {
        return Ok(base);
    }
    // (sqrt(-1))^t
    let i_pow = match t % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok(base * i_pow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semiprimitive_even_characteristic() {
        assert_eq!(semiprimitive_parameters(3, 2, 4), Ok((1, 1)));
        assert_eq!(
            gauss_sum_semiprimitive(3, 1, 2, 4).unwrap(),
            Complex64::new(2.0, 0.0)
        );
        assert_eq!(semiprimitive_parameters(5, 2, 16), Ok((2, 1)));
        assert_eq!(
            gauss_sum_semiprimitive(5, 1, 2, 16).unwrap(),
            Complex64::new(4.0, 0.0)
        );
        // gamma = 2 flips the sign
        assert_eq!(
            gauss_sum_semiprimitive(3, 2, 2, 16).unwrap(),
            Complex64::new(-4.0, 0.0)
        );
    }

    #[test]
    fn semiprimitive_rejections() {
        assert_eq!(gauss_sum_semiprimitive(2, 1, 3, 9), Err(Error::OrderTwo));
        // 2 has order 3 mod 7 and never reaches -1
        assert!(matches!(
            gauss_sum_semiprimitive(7, 1, 2, 64),
            Err(Error::NotSemiprimitive { .. })
        ));
        // r not of the form p^(2j gamma)
        assert!(matches!(
            gauss_sum_semiprimitive(3, 1, 2, 8),
            Err(Error::NotSemiprimitive { .. })
        ));
    }

    #[test]
    fn quadratic_branches() {
        let g = gauss_quadratic(3, 1).unwrap();
        assert!((g - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert!((gauss_quadratic(3, 2).unwrap() - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert!((gauss_quadratic(5, 1).unwrap() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(gauss_quadratic(2, 3), Err(Error::EvenCharacteristic));
    }
}
