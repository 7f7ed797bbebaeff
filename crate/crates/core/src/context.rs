//! Shared memoisation context for the exact kernel.
//!
//! A [`Context`] owns every per-run cache: factorials, binomial ladders,
//! integer sequence tables, Euler numbers. All entries are pure functions of
//! their arguments, so the caches only ever deduplicate work; results are
//! identical under any thread interleaving.

use crate::sequences::SequenceId;
use crate::{Int, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use parking_lot::RwLock;
use std::collections::HashMap;

#[derive(Default)]
pub struct Context {
    factorials: RwLock<Vec<Int>>,
    /// binom(a*k, b*k) ladders keyed by (a, b).
    ladders: RwLock<HashMap<(u32, u32), Vec<Int>>>,
    /// Integer sequence tables keyed by id; entry i holds term i.
    seqs: RwLock<HashMap<SequenceId, Vec<Int>>>,
    /// Even-index Euler numbers E_0, E_2, E_4, ...
    euler_evens: RwLock<Vec<Int>>,
    /// Rows of generalized binomials binom(base, 0..), keyed by base.
    rat_rows: RwLock<HashMap<(Int, Int), Vec<Rat>>>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn factorial(&self, n: u32) -> Int {
        let n = n as usize;
        {
            let f = self.factorials.read();
            if n < f.len() {
                return f[n].clone();
            }
        }
        let mut f = self.factorials.write();
        if f.is_empty() {
            f.push(Int::one());
        }
        while f.len() <= n {
            let next = f.last().unwrap() * Int::from(f.len());
            f.push(next);
        }
        f[n].clone()
    }

    /// binom(n, k) for nonnegative integer arguments; zero when k > n.
    pub fn binom(&self, n: u32, k: u32) -> Int {
        if k > n {
            return Int::zero();
        }
        let k = k.min(n - k);
        if k == 0 {
            return Int::one();
        }
        self.factorial(n) / (self.factorial(k) * self.factorial(n - k))
    }

    /// binom(a*k, b*k) with the per-shape ladder cache; requires a >= b.
    pub fn binom_ladder(&self, a: u32, b: u32, k: u32) -> Int {
        debug_assert!(a > b && b > 0);
        let idx = k as usize;
        {
            let map = self.ladders.read();
            if let Some(v) = map.get(&(a, b)) {
                if idx < v.len() {
                    return v[idx].clone();
                }
            }
        }
        let mut map = self.ladders.write();
        let v = map.entry((a, b)).or_insert_with(|| vec![Int::one()]);
        while v.len() <= idx {
            let k0 = (v.len() - 1) as u64;
            // binom(a(k+1), b(k+1)) = binom(ak, bk) * prod(ak+1..=ak+a) /
            //   (prod(bk+1..=bk+b) * prod((a-b)k+1..=(a-b)(k+1)))
            let mut num = 1u128;
            for j in a as u64 * k0 + 1..=a as u64 * (k0 + 1) {
                num *= j as u128;
            }
            let mut den = 1u128;
            for j in b as u64 * k0 + 1..=b as u64 * (k0 + 1) {
                den *= j as u128;
            }
            let c = a - b;
            for j in c as u64 * k0 + 1..=c as u64 * (k0 + 1) {
                den *= j as u128;
            }
            let next = v.last().unwrap() * Int::from(num) / Int::from(den);
            v.push(next);
        }
        v[idx].clone()
    }

    /// Central binomial coefficient binom(2n, n).
    pub fn central_binom(&self, n: u32) -> Int {
        self.binom_ladder(2, 1, n)
    }

    /// Generalized binomial binom(base, k) by the falling-factorial product.
    pub fn binom_rat(&self, base: &Rat, k: u32) -> Rat {
        let key = (base.numer().clone(), base.denom().clone());
        let idx = k as usize;
        {
            let map = self.rat_rows.read();
            if let Some(v) = map.get(&key) {
                if idx < v.len() {
                    return v[idx].clone();
                }
            }
        }
        let mut map = self.rat_rows.write();
        let v = map.entry(key).or_insert_with(|| vec![Rat::one()]);
        while v.len() <= idx {
            let j = (v.len() - 1) as i64;
            let step = (base - Rat::from(Int::from(j))) / Rat::from(Int::from(j + 1));
            let next = v.last().unwrap() * step;
            v.push(next);
        }
        v[idx].clone()
    }

    /// Euler number E_n (secant numbers; zero at odd index).
    pub fn euler(&self, n: u32) -> Int {
        if n % 2 == 1 {
            return Int::zero();
        }
        let m = (n / 2) as usize;
        {
            let e = self.euler_evens.read();
            if m < e.len() {
                return e[m].clone();
            }
        }
        let mut e = self.euler_evens.write();
        if e.is_empty() {
            e.push(Int::one());
        }
        while e.len() <= m {
            let mm = e.len() as u32;
            let mut acc = Int::zero();
            for k in 0..mm as usize {
                acc += self.binom(2 * mm, 2 * k as u32) * &e[k];
            }
            e.push(-acc);
        }
        e[m].clone()
    }

    /// E_n mod p via the same recurrence run over residues mod p.
    /// Requires an odd prime p with n < p so the binomials need no p-adic care.
    pub fn euler_mod_p(&self, n: u32, p: u64) -> u64 {
        if n % 2 == 1 {
            return 0;
        }
        debug_assert!((n as u64) < p);
        let m = (n / 2) as usize;
        let pi = p as i128;
        // factorials and inverse factorials mod p up to n
        let mut fact = vec![1i128; n as usize + 1];
        for i in 1..=n as usize {
            fact[i] = fact[i - 1] * i as i128 % pi;
        }
        let mut inv_fact = vec![1i128; n as usize + 1];
        inv_fact[n as usize] = mod_inv_i128(fact[n as usize], pi);
        for i in (1..=n as usize).rev() {
            inv_fact[i - 1] = inv_fact[i] * i as i128 % pi;
        }
        let binom_p = |top: usize, bot: usize| fact[top] * inv_fact[bot] % pi * inv_fact[top - bot] % pi;
        let mut e = vec![0i128; m + 1];
        e[0] = 1;
        for mm in 1..=m {
            let mut acc = 0i128;
            for k in 0..mm {
                acc = (acc + binom_p(2 * mm, 2 * k) * e[k]) % pi;
            }
            e[mm] = (pi - acc) % pi;
        }
        e[m] as u64
    }

    /// Grow the table for an integer-valued sequence up to index `n_max`.
    pub fn prewarm(&self, id: &SequenceId, n_max: u32) {
        if id.is_table_backed() {
            let _ = self.seq_int(id, n_max);
        }
    }

    /// Table-backed integer sequence term. Panics on ids that are not
    /// integer-table sequences (SeqS, EulerNum); use `sequences::term`.
    pub(crate) fn seq_int(&self, id: &SequenceId, n: u32) -> Int {
        let idx = n as usize;
        {
            let map = self.seqs.read();
            if let Some(v) = map.get(id) {
                if idx < v.len() {
                    return v[idx].clone();
                }
            }
        }
        // compute missing terms outside the write lock; a concurrent extension
        // computes identical values, so clobber-free appends suffice
        let cur_len = self.seqs.read().get(id).map_or(0, |v| v.len());
        let fresh: Vec<Int> = (cur_len..=idx)
            .map(|i| id.compute_int_term(self, i as u32))
            .collect();
        let mut map = self.seqs.write();
        let v = map.entry(id.clone()).or_default();
        for (off, t) in fresh.into_iter().enumerate() {
            if cur_len + off == v.len() {
                v.push(t);
            }
        }
        while v.len() <= idx {
            let t = id.compute_int_term(self, v.len() as u32);
            v.push(t);
        }
        v[idx].clone()
    }

    /// Seed a sequence table entry from an external cache. The value is
    /// trusted only after an arity/shape check by the caller; out-of-order
    /// seeds are ignored (tables are dense prefixes).
    pub fn seed_seq_value(&self, id: &SequenceId, n: u32, value: Int) {
        if !id.is_table_backed() {
            return;
        }
        let mut map = self.seqs.write();
        let v = map.entry(id.clone()).or_default();
        if (n as usize) == v.len() {
            v.push(value);
        }
    }

    /// Snapshot of all cached sequence table entries, for cache persistence.
    pub fn dump_seq_tables(&self) -> Vec<(SequenceId, Vec<Int>)> {
        let map = self.seqs.read();
        let mut out: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        out.sort_by_key(|(k, _)| format!("{k:?}"));
        out
    }
}

fn mod_inv_i128(a: i128, m: i128) -> i128 {
    // extended euclid; m prime in our uses
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

/// Convert a rational to `f64` for display diagnostics only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let digits_n = r.numer().abs().to_string().len() as i32;
    let digits_d = r.denom().to_string().len() as i32;
    let shift = (digits_n - digits_d).clamp(-280, 280);
    let scaled = if shift >= 0 {
        Rat::new(r.numer().clone(), r.denom() * Int::from(10u32).pow(shift as u32))
    } else {
        Rat::new(r.numer() * Int::from(10u32).pow((-shift) as u32), r.denom().clone())
    };
    let v = scaled.numer().to_f64().unwrap_or(f64::NAN) / scaled.denom().to_f64().unwrap_or(f64::NAN);
    v * 10f64.powi(shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn binomials() {
        let ctx = Context::new();
        assert_eq!(ctx.binom(2, 1), Int::from(2));
        assert_eq!(ctx.binom(8, 4), Int::from(70));
        assert_eq!(ctx.binom(0, 0), Int::from(1));
        assert_eq!(ctx.binom(3, 5), Int::from(0));
        assert_eq!(ctx.central_binom(3), Int::from(20));
        for k in 0..40 {
            assert_eq!(ctx.binom_ladder(2, 1, k), ctx.binom(2 * k, k));
            assert_eq!(ctx.binom_ladder(3, 1, k), ctx.binom(3 * k, k));
            assert_eq!(ctx.binom_ladder(4, 2, k), ctx.binom(4 * k, 2 * k));
            assert_eq!(ctx.binom_ladder(6, 3, k), ctx.binom(6 * k, 3 * k));
        }
    }

    #[test]
    fn rational_binomials() {
        let ctx = Context::new();
        let neg_half = Rat::new(Int::from(-1), Int::from(2));
        // binom(-1/2, 3) = -5/16
        assert_eq!(ctx.binom_rat(&neg_half, 3), Rat::new(Int::from(-5), Int::from(16)));
        // binom(-1/2, k) * (-4)^k = binom(2k, k)
        for k in 0..30u32 {
            let lhs = ctx.binom_rat(&neg_half, k) * Rat::from(Int::from(-4).pow(k));
            assert_eq!(lhs, Rat::from(ctx.binom(2 * k, k)));
        }
        // binom(-1/4, 2) = 5/32
        let neg_quarter = Rat::new(Int::from(-1), Int::from(4));
        assert_eq!(ctx.binom_rat(&neg_quarter, 2), Rat::new(Int::from(5), Int::from(32)));
    }

    #[test]
    fn euler_numbers() {
        let ctx = Context::new();
        let expect = [1i64, -1, 5, -61, 1385, -50521, 2702765];
        for (m, &e) in expect.iter().enumerate() {
            assert_eq!(ctx.euler(2 * m as u32), Int::from(e));
        }
        assert_eq!(ctx.euler(3), Int::zero());
        assert_eq!(ctx.euler(7), Int::zero());
        // signs alternate
        for m in 0..12u32 {
            let e = ctx.euler(2 * m);
            assert_eq!(e.is_negative(), m % 2 == 1, "E_{}", 2 * m);
        }
        // |E_2m| grows strictly from m = 2 on
        let mut prev = ctx.euler(4).abs();
        for m in 3..20u32 {
            let e = ctx.euler(2 * m).abs();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn euler_mod_matches_exact() {
        let ctx = Context::new();
        for p in [5u64, 7, 11, 13, 97, 101] {
            for n in (0..40u32).step_by(2) {
                if (n as u64) < p {
                    let exact = crate::modular::reduce(&ctx.euler(n), &Int::from(p));
                    assert_eq!(Int::from(ctx.euler_mod_p(n, p)), exact, "E_{n} mod {p}");
                }
            }
        }
        // E_2 = -1 == 6 mod 7
        assert_eq!(ctx.euler_mod_p(2, 7), 6);
    }

    #[test]
    fn factorial_growth() {
        let ctx = Context::new();
        assert_eq!(ctx.factorial(0), Int::one());
        assert_eq!(ctx.factorial(10), Int::from(3628800u64));
        assert_eq!(
            ctx.factorial(25),
            Int::from_str("15511210043330985984000000").unwrap()
        );
    }
}
