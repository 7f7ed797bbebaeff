//! Residue arithmetic helpers on arbitrary-precision integers.

use crate::Int;
use num_integer::Integer;
use num_traits::{One, Signed};

/// `a mod m` normalised into `[0, m)`; `m` must be positive.
pub fn reduce(a: &Int, m: &Int) -> Int {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Modular inverse of `a` modulo `m > 1`, if `gcd(a, m) = 1`.
pub fn modinv(a: &Int, m: &Int) -> Option<Int> {
    let a = reduce(a, m);
    let ext = Int::extended_gcd(&a, m);
    if ext.gcd.is_one() {
        Some(reduce(&ext.x, m))
    } else {
        None
    }
}

/// Reduce the exact rational `num/den` modulo `m`, if `den` is invertible.
pub fn reduce_rat(num: &Int, den: &Int, m: &Int) -> Option<Int> {
    if den.is_one() {
        return Some(reduce(num, m));
    }
    let inv = modinv(den, m)?;
    Some(reduce(&(reduce(num, m) * inv), m))
}

/// `base^exp mod m` for `exp >= 0`.
pub fn modpow(base: &Int, exp: u64, m: &Int) -> Int {
    reduce(base, m).modpow(&Int::from(exp), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn inverse_roundtrip() {
        let m = Int::from(3125);
        for a in [1i64, 2, 7, 32, -11, 3124] {
            let a = Int::from(a);
            let inv = modinv(&a, &m).unwrap();
            assert!(reduce(&(a * inv), &m).is_one());
        }
        assert!(modinv(&Int::from(25), &m).is_none());
    }

    #[test]
    fn reduce_negative() {
        assert_eq!(reduce(&Int::from(-1), &Int::from(7)), Int::from(6));
    }

    #[test]
    fn rational_reduction() {
        // 27/64 mod 27 = 0
        let r = reduce_rat(&Int::from(27), &Int::from(64), &Int::from(27)).unwrap();
        assert!(r.is_zero());
        // non-invertible denominator
        assert!(reduce_rat(&Int::from(1), &Int::from(5), &Int::from(25)).is_none());
    }
}
