//! Legendre symbol via Euler's criterion.

use crate::error::Error;
use crate::modular::{modpow, reduce};
use crate::primes::is_prime;
use crate::Int;
use num_traits::{One, Zero};

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &Int, p: u64) -> Result<i8, Error> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::domain(format!("modulus {p} is not an odd prime")));
    }
    let pm = Int::from(p);
    let r = reduce(a, &pm);
    if r.is_zero() {
        return Ok(0);
    }
    let e = modpow(&r, (p - 1) / 2, &pm);
    if e.is_one() {
        Ok(1)
    } else {
        Ok(-1)
    }
}

pub fn legendre_i64(a: i64, p: u64) -> Result<i8, Error> {
    legendre(&Int::from(a), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_upto;

    #[test]
    fn examples() {
        assert_eq!(legendre_i64(-1, 5).unwrap(), 1);
        assert_eq!(legendre_i64(2, 7).unwrap(), 1); // 3^2 = 9 = 2 mod 7
        assert_eq!(legendre_i64(3, 7).unwrap(), -1);
        assert_eq!(legendre_i64(21, 7).unwrap(), 0);
        assert!(legendre_i64(3, 9).is_err());
        assert!(legendre_i64(3, 2).is_err());
    }

    #[test]
    fn matches_square_enumeration() {
        for p in sieve_upto(60) {
            if p < 3 {
                continue;
            }
            let squares: std::collections::HashSet<u64> =
                (1..p).map(|x| x * x % p).collect();
            for a in 0..p {
                let expect = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_i64(a as i64, p).unwrap(), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn multiplicative_and_reciprocal() {
        let primes: Vec<u64> = sieve_upto(200).into_iter().filter(|&p| p > 2).collect();
        let mut checked = 0;
        for (i, &p) in primes.iter().enumerate() {
            for a in [-7i64, -2, -1, 2, 3, 5, 11, 15] {
                for b in [-3i64, 2, 7, 10] {
                    let ab = legendre_i64(a * b, p).unwrap();
                    let sep = legendre_i64(a, p).unwrap() * legendre_i64(b, p).unwrap();
                    assert_eq!(ab, sep, "({a}*{b}/{p})");
                    checked += 1;
                }
            }
            // quadratic reciprocity against the next prime
            if let Some(&q) = primes.get(i + 1) {
                let lhs = legendre_i64(p as i64, q).unwrap() * legendre_i64(q as i64, p).unwrap();
                let sign = if p % 4 == 3 && q % 4 == 3 { -1 } else { 1 };
                assert_eq!(lhs, sign, "reciprocity {p},{q}");
            }
        }
        assert!(checked >= 1000);
    }
}
