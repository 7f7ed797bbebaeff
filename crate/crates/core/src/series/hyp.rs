//! Gauss hypergeometric partial sums and the two closed-form checks built on
//! binomial series.

use super::numeric::{decimal_sig, pi_scaled, pow10, sqrt_rat, tol};
use super::RATIO_WINDOW;
use crate::context::Context;
use crate::error::Error;
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

fn is_nonpositive_integer(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_positive()
}

/// Exact partial sum of 2F1(a, b; c; z) through term N.
///
/// Requires c not a nonpositive integer and |z| < 1.
pub fn eval_2f1(a: &Rat, b: &Rat, c: &Rat, z: &Rat, n_terms: u32) -> Result<Rat, Error> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain("2F1 parameter c must not be a nonpositive integer"));
    }
    if z.abs() >= Rat::one() {
        return Err(Error::domain("2F1 argument must satisfy |z| < 1"));
    }
    let mut term = Rat::one();
    let mut acc = Rat::one();
    for n in 0..n_terms {
        let nn = Rat::from(Int::from(n));
        let one = Rat::one();
        term *= (a + &nn) * (b + &nn) * z / ((&nn + &one) * (c + &nn));
        if term.is_zero() {
            break;
        }
        acc += &term;
    }
    Ok(acc)
}

/// Sum a term stream until the geometric tail bound drops below `tolerance`.
/// Returns (partial sum, last index, tail bound). The same window rule as
/// series certification: q = min(1.05 * max window ratio, 0.99).
fn certified_sum(
    mut term: impl FnMut(u32) -> Rat,
    tolerance: &Rat,
    max_terms: u32,
) -> Result<(Rat, u32, Rat), Error> {
    let cap = Rat::new(Int::from(99), Int::from(100));
    let margin = Rat::new(Int::from(21), Int::from(20));
    let mut acc = Rat::zero();
    let mut abs_terms: Vec<Rat> = Vec::new();
    for n in 0..=max_terms {
        let t = term(n);
        acc += &t;
        abs_terms.push(t.abs());
        if n as usize >= RATIO_WINDOW {
            let w = &abs_terms[n as usize - RATIO_WINDOW..=n as usize];
            if w.iter().all(|x| !x.is_zero()) {
                let mut maxr = Rat::zero();
                for i in 0..RATIO_WINDOW {
                    let r = &w[i + 1] / &w[i];
                    if r > maxr {
                        maxr = r;
                    }
                }
                if maxr <= cap {
                    let q = (&maxr * &margin).min(cap.clone());
                    let tail = &abs_terms[n as usize] / (Rat::one() - &q);
                    if &tail < tolerance {
                        return Ok((acc, n, tail));
                    }
                }
            }
        }
    }
    Err(Error::domain("term budget exhausted before certification"))
}

#[derive(Clone, Debug, Serialize)]
pub struct OneTenReport {
    pub pass: bool,
    pub digits: u32,
    /// residual of F1^2 - (1/4) F1 F2 against 4/(sqrt(3) pi)
    pub residual: String,
    /// terms used for the two hypergeometric values
    pub n_f1: u32,
    pub n_f2: u32,
    /// termwise agreement of 2F1(1/3,2/3;1;-1/8) with the binomial series
    pub f1_termwise_ok: bool,
    /// termwise agreement of 2F1(4/3,5/3;2;-1/8) with the weighted series
    pub f2_termwise_ok: bool,
}

/// Certify F1^2 - (1/4) F1 F2 = 4/(sqrt(3) pi) with
/// F1 = 2F1(1/3,2/3;1;-1/8) and F2 = 2F1(4/3,5/3;2;-1/8), cross-checking both
/// values against their binomial-sum representations.
pub fn check_1_10(ctx: &Context, digits: u32) -> Result<OneTenReport, Error> {
    let third = Rat::new(Int::from(1), Int::from(3));
    let two_thirds = Rat::new(Int::from(2), Int::from(3));
    let four_thirds = Rat::new(Int::from(4), Int::from(3));
    let five_thirds = Rat::new(Int::from(5), Int::from(3));
    let one = Rat::one();
    let two = Rat::from(Int::from(2));
    let z = Rat::new(Int::from(-1), Int::from(8));

    let fine = tol(digits + 8);
    let f1_term = hyp_term_stream(third.clone(), two_thirds.clone(), one.clone(), z.clone());
    let (f1, n_f1, tail1) = certified_sum(f1_term, &fine, 4 * digits + 200)?;
    let f2_term = hyp_term_stream(four_thirds, five_thirds, two, z);
    let (f2, n_f2, tail2) = certified_sum(f2_term, &fine, 4 * digits + 200)?;

    // termwise cross-checks against the binomial sums
    let m216 = Int::from(-216);
    let mut f1_termwise_ok = true;
    let mut t = Rat::one();
    let mut binom_partial = Rat::zero();
    let mut hyp_partial = Rat::zero();
    for k in 0..=40u32 {
        if k > 0 {
            let kk = Rat::from(Int::from(k - 1));
            t *= (&third + &kk) * (&two_thirds + &kk) * Rat::new(Int::from(-1), Int::from(8))
                / ((&kk + Rat::one()) * (&one + &kk));
        }
        hyp_partial += &t;
        binom_partial += Rat::new(
            ctx.central_binom(k) * ctx.binom_ladder(3, 1, k),
            m216.pow(k),
        );
        if hyp_partial != binom_partial {
            f1_termwise_ok = false;
            break;
        }
    }
    // F2 partial through N equals -36 * sum_{k=1}^{N+1} k C(2k,k) C(3k,k) / (-216)^k
    let mut f2_termwise_ok = true;
    for upto in [0u32, 1, 5, 20, 40] {
        let lhs = eval_2f1(
            &Rat::new(Int::from(4), Int::from(3)),
            &Rat::new(Int::from(5), Int::from(3)),
            &Rat::from(Int::from(2)),
            &Rat::new(Int::from(-1), Int::from(8)),
            upto,
        )?;
        let mut rhs = Rat::zero();
        for k in 1..=upto + 1 {
            rhs += Rat::new(
                Int::from(k) * ctx.central_binom(k) * ctx.binom_ladder(3, 1, k),
                m216.pow(k),
            );
        }
        if lhs != rhs * Rat::from(Int::from(-36)) {
            f2_termwise_ok = false;
            break;
        }
    }

    let combo = &f1 * &f1 - Rat::new(Int::from(1), Int::from(4)) * &f1 * &f2;
    // 4/(sqrt(3) pi) = (4/3) sqrt(3)/pi
    let g = digits + 8;
    let target = Rat::new(Int::from(4), Int::from(3))
        * sqrt_rat(&Rat::from(Int::from(3)), g)
        * Rat::new(pow10(g), pi_scaled(g));
    let residual = (&combo - &target).abs();
    // |F| <= 2 here, so the certified per-factor tails propagate with a
    // small constant into the product combination
    let prop = (tail1 + tail2) * Rat::from(Int::from(8)) + tol(digits + 4);
    let pass =
        f1_termwise_ok && f2_termwise_ok && &residual + &prop < tol(digits);
    Ok(OneTenReport {
        pass,
        digits,
        residual: decimal_sig(&residual, 3),
        n_f1,
        n_f2,
        f1_termwise_ok,
        f2_termwise_ok,
    })
}

fn hyp_term_stream(a: Rat, b: Rat, c: Rat, z: Rat) -> impl FnMut(u32) -> Rat {
    let mut term = Rat::one();
    move |n| {
        if n == 0 {
            return term.clone();
        }
        let k = Rat::from(Int::from(n - 1));
        term *= (&a + &k) * (&b + &k) * &z / ((&k + Rat::one()) * (&c + &k));
        term.clone()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma32Report {
    pub m: String,
    pub digits: u32,
    pub pass_plain: bool,
    pub pass_weighted: bool,
    pub residual_plain: String,
    pub residual_weighted: String,
}

/// Certify sum_k C(2k,k)/m^k = sqrt(m/(m-4)) and
/// sum_k k C(2k,k)/m^k = (2/(m-4)) sqrt(m/(m-4)).
///
/// Accepted bases: integer m with m > 4 or m < -5.
pub fn check_lemma_3_2(ctx: &Context, m: &Int, digits: u32) -> Result<Lemma32Report, Error> {
    let four = Int::from(4);
    let neg5 = Int::from(-5);
    if !(m > &four || m < &neg5) {
        return Err(Error::domain(format!("base {m} outside the accepted domain (m > 4 or m < -5)")));
    }
    let g = digits + 8;
    let ratio = Rat::new(m.clone(), m - &four);
    let t1 = sqrt_rat(&ratio, g);
    let t2 = Rat::new(Int::from(2), m - &four) * &t1;

    let fine = tol(digits + 6);
    let (s1, _, tail1) = certified_sum(
        |k| Rat::new(ctx.central_binom(k), m.pow(k)),
        &fine,
        40 * digits + 400,
    )?;
    let (s2, _, tail2) = certified_sum(
        |k| Rat::new(Int::from(k) * ctx.central_binom(k), m.pow(k)),
        &fine,
        40 * digits + 400,
    )?;

    let r1 = (&s1 - &t1).abs();
    let r2 = (&s2 - &t2).abs();
    let sqrt_err = tol(digits + 4);
    let pass_plain = &r1 + &tail1 + &sqrt_err < tol(digits);
    let pass_weighted = &r2 + &tail2 + &sqrt_err < tol(digits);
    Ok(Lemma32Report {
        m: m.to_string(),
        digits,
        pass_plain,
        pass_weighted,
        residual_plain: decimal_sig(&r1, 3),
        residual_weighted: decimal_sig(&r2, 3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn twof1_basics() {
        // z = 0 gives 1 for any parameters
        let one = eval_2f1(&rat(7, 2), &rat(-3, 5), &rat(9, 4), &rat(0, 1), 25).unwrap();
        assert_eq!(one, Rat::one());
        // single-term expansion: 1 + (1/3)(2/3)/1 * (-1/8) = 35/36
        let v = eval_2f1(&rat(1, 3), &rat(2, 3), &rat(1, 1), &rat(-1, 8), 1).unwrap();
        assert_eq!(v, rat(35, 36));
        // empty tail
        let v = eval_2f1(&rat(4, 3), &rat(5, 3), &rat(2, 1), &rat(-1, 8), 0).unwrap();
        assert_eq!(v, Rat::one());
        // domain errors
        assert!(eval_2f1(&rat(1, 2), &rat(1, 2), &rat(-2, 1), &rat(1, 4), 5).is_err());
        assert!(eval_2f1(&rat(1, 2), &rat(1, 2), &rat(1, 2), &rat(9, 8), 5).is_err());
    }

    #[test]
    fn twof1_polynomial_termination() {
        // nonpositive-integer numerator parameter truncates the series
        let a = rat(-3, 1);
        let deep = eval_2f1(&a, &rat(5, 7), &rat(3, 2), &rat(1, 3), 200).unwrap();
        let exact = eval_2f1(&a, &rat(5, 7), &rat(3, 2), &rat(1, 3), 3).unwrap();
        assert_eq!(deep, exact);
    }

    #[test]
    fn lemma_3_2_domains() {
        let ctx = Context::new();
        assert!(check_lemma_3_2(&ctx, &Int::from(4), 10).is_err());
        assert!(check_lemma_3_2(&ctx, &Int::from(-4), 10).is_err());
        assert!(check_lemma_3_2(&ctx, &Int::from(-5), 10).is_err());
        assert!(check_lemma_3_2(&ctx, &Int::from(0), 10).is_err());
    }

    #[test]
    fn lemma_3_2_small_digit_checks() {
        let ctx = Context::new();
        for m in [256i64, 16, -8] {
            let rep = check_lemma_3_2(&ctx, &Int::from(m), 12).unwrap();
            assert!(rep.pass_plain && rep.pass_weighted, "m={m}: {rep:?}");
        }
    }
}
