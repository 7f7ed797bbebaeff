//! High-precision numeric backend: pi, square roots of rationals, and
//! decimal rendering. Everything works on scaled integers; floating point
//! never enters a computation.

use crate::{Int, Rat};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

pub fn pow10(k: u32) -> Int {
    Int::from(10u32).pow(k)
}

/// floor(pi * 10^digits), by the Machin formula
/// pi = 16 atan(1/5) - 4 atan(1/239) with 15 guard digits.
pub fn pi_scaled(digits: u32) -> Int {
    static CACHE: Lazy<Mutex<(u32, Int)>> = Lazy::new(|| Mutex::new((0, Int::zero())));
    let mut cache = CACHE.lock();
    if cache.0 >= digits && cache.0 > 0 {
        return &cache.1 / pow10(cache.0 - digits);
    }
    let guard = 15;
    let scale = pow10(digits + guard);
    let pi = Int::from(16) * atan_inv(5, &scale) - Int::from(4) * atan_inv(239, &scale);
    let out = &pi / pow10(guard);
    *cache = (digits, out.clone());
    out
}

/// floor-ish atan(1/x) * scale; off by at most a few ulps of the scale.
fn atan_inv(x: u64, scale: &Int) -> Int {
    let x2 = Int::from(x) * Int::from(x);
    let mut power = scale / Int::from(x);
    let mut acc = Int::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / Int::from(2 * k + 1);
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
        power = &power / &x2;
        k += 1;
    }
    acc
}

/// pi as a rational with |error| < 10^-(digits-1).
pub fn pi_rat(digits: u32) -> Rat {
    Rat::new(pi_scaled(digits), pow10(digits))
}

/// floor(sqrt(v * 10^(2*digits))) for v >= 0.
pub fn sqrt_scaled(v: &Int, digits: u32) -> Int {
    (v * pow10(2 * digits)).sqrt()
}

/// sqrt of a nonnegative rational with |error| < 10^-(digits-1).
pub fn sqrt_rat(r: &Rat, digits: u32) -> Rat {
    assert!(!r.is_negative(), "radicand must be nonnegative");
    let num = r.numer() * r.denom() * pow10(2 * digits);
    Rat::new(num.sqrt(), r.denom() * pow10(digits))
}

/// 10^(-digits) as an exact rational.
pub fn tol(digits: u32) -> Rat {
    Rat::new(Int::from(1), pow10(digits))
}

/// Decimal expansion with `sig` significant digits, truncated toward zero.
pub fn decimal_sig(r: &Rat, sig: u32) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let pow_e = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from(pow10(e as u32))
        } else {
            Rat::new(Int::from(1), pow10((-e) as u32))
        }
    };
    while a < pow_e(e) {
        e -= 1;
    }
    while a >= pow_e(e + 1) {
        e += 1;
    }
    // mantissa digits: floor(a * 10^(sig-1-e))
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow_e(shift);
    let mantissa = (scaled.numer() / scaled.denom()).to_string();
    debug_assert_eq!(mantissa.len(), sig as usize);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < sig as usize {
        let point = e as usize + 1;
        out.push_str(&mantissa[..point]);
        if point < mantissa.len() {
            out.push('.');
            out.push_str(&mantissa[point..]);
        }
    } else if e < 0 && e >= -4 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(&mantissa);
    } else {
        out.push_str(&mantissa[..1]);
        if mantissa.len() > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push_str(&format!("e{e}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // 60 digits of pi, an external constant
    const PI60: &str = "314159265358979323846264338327950288419716939937510582097494";

    #[test]
    fn pi_matches_known_digits() {
        let got = pi_scaled(59).to_string();
        assert_eq!(got, PI60[..60].to_string());
        // monotone refinement: more digits extend the same expansion
        let d200 = pi_scaled(200).to_string();
        assert!(d200.starts_with(&PI60[..55]));
    }

    #[test]
    fn sqrt_scaled_squares_back() {
        for d in [2u64, 3, 5, 7, 10, 252] {
            let s = sqrt_scaled(&Int::from(d), 50);
            let lo = &s * &s;
            let hi = (&s + 1) * (&s + 1);
            let target = Int::from(d) * pow10(100);
            assert!(lo <= target && target < hi, "d={d}");
        }
    }

    #[test]
    fn decimal_rendering() {
        let four_over_pi = Rat::new(Int::from(4) * pow10(40), pi_scaled(40));
        assert_eq!(decimal_sig(&four_over_pi, 10), "1.273239544");
        let two_over_pi = Rat::new(Int::from(2) * pow10(40), pi_scaled(40));
        assert_eq!(decimal_sig(&two_over_pi, 1), "0.6");
        let tiny = Rat::new(Int::from(-3), pow10(31));
        assert_eq!(decimal_sig(&tiny, 2), "-3.0e-31");
        assert_eq!(decimal_sig(&Rat::from(Int::from(1230)), 3), "1.23e3");
        assert_eq!(decimal_sig(&Rat::from(Int::from(12)), 2), "12");
        assert_eq!(decimal_sig(&Rat::new(Int::from(1), Int::from(100)), 2), "0.010");
    }
}
