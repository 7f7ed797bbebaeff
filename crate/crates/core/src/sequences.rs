//! The integer and rational sequences every engine is built on.

use crate::context::Context;
use crate::error::Error;
use crate::modular::{reduce, reduce_rat};
use crate::{Int, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Names one of the registered sequences together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceId {
    /// binom(2n, n)
    CentralBinom,
    /// Coefficient of x^n in (x^2 + b x + c)^n.
    TrinomialT { b: i64, c: i64 },
    /// P_n(x) = sum_k binom(2k,k)^2 binom(2(n-k), n-k) x^(n-k)
    PolyP { x: i64 },
    /// P_n^+(x) = sum_k binom(n,k)^2 binom(2k,n) x^(2k-n)
    PolyPPlus { x: i64 },
    /// sum_k binom(2k,k)^2 binom(2(n-k), n-k)^2
    ConvSq,
    /// sum_k binom(2k,k) binom(3k,k) binom(2(n-k), n-k) binom(3(n-k), n-k)
    Conv23,
    /// sum_k binom(4k,2k) binom(2k,k) binom(4(n-k), 2(n-k)) binom(2(n-k), n-k)
    Conv42,
    /// sum_k binom(6k,3k) binom(3k,k) binom(6(n-k), 3(n-k)) binom(3(n-k), n-k)
    Conv63,
    /// sum_k binom(n,k)^2 binom(2k,k)
    DombLike,
    /// s_n = Conv63(n) / ((2n-1) binom(3n,n))
    SeqS,
    /// Euler (secant) numbers E_n; zero at odd index.
    EulerNum,
}

impl SequenceId {
    /// Integer-valued sequences backed by a dense memo table.
    pub fn is_table_backed(&self) -> bool {
        !matches!(self, SequenceId::SeqS | SequenceId::EulerNum)
    }

    /// Stable short name used by the CLI and the file cache.
    pub fn name(&self) -> String {
        match self {
            SequenceId::CentralBinom => "central".into(),
            SequenceId::TrinomialT { b, c } => format!("T({b},{c})"),
            SequenceId::PolyP { x } => format!("P({x})"),
            SequenceId::PolyPPlus { x } => format!("P+({x})"),
            SequenceId::ConvSq => "conv-sq".into(),
            SequenceId::Conv23 => "conv-23".into(),
            SequenceId::Conv42 => "conv-42".into(),
            SequenceId::Conv63 => "conv-63".into(),
            SequenceId::DombLike => "domb".into(),
            SequenceId::SeqS => "s".into(),
            SequenceId::EulerNum => "euler".into(),
        }
    }

    /// Inverse of [`SequenceId::name`].
    pub fn from_name(s: &str) -> Option<SequenceId> {
        let parse_params = |s: &str, prefix: &str| -> Option<Vec<i64>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|t| t.trim().parse::<i64>().ok()).collect()
        };
        match s {
            "central" => Some(SequenceId::CentralBinom),
            "conv-sq" => Some(SequenceId::ConvSq),
            "conv-23" => Some(SequenceId::Conv23),
            "conv-42" => Some(SequenceId::Conv42),
            "conv-63" => Some(SequenceId::Conv63),
            "domb" => Some(SequenceId::DombLike),
            "s" => Some(SequenceId::SeqS),
            "euler" => Some(SequenceId::EulerNum),
            _ if s.starts_with("T(") => {
                let p = parse_params(s, "T")?;
                (p.len() == 2).then(|| SequenceId::TrinomialT { b: p[0], c: p[1] })
            }
            _ if s.starts_with("P+(") => {
                let p = parse_params(s, "P+")?;
                (p.len() == 1).then(|| SequenceId::PolyPPlus { x: p[0] })
            }
            _ if s.starts_with("P(") => {
                let p = parse_params(s, "P")?;
                (p.len() == 1).then(|| SequenceId::PolyP { x: p[0] })
            }
            _ => None,
        }
    }

    pub(crate) fn compute_int_term(&self, ctx: &Context, n: u32) -> Int {
        match *self {
            SequenceId::CentralBinom => ctx.central_binom(n),
            SequenceId::TrinomialT { b, c } => {
                let (bi, ci) = (Int::from(b), Int::from(c));
                let mut acc = Int::zero();
                for k in 0..=n / 2 {
                    let mut t = ctx.binom(n, 2 * k) * ctx.central_binom(k);
                    t *= bi.pow(n - 2 * k);
                    t *= ci.pow(k);
                    acc += t;
                }
                acc
            }
            SequenceId::PolyP { x } => {
                let xb = Int::from(x);
                let mut acc = Int::zero();
                for k in 0..=n {
                    let t = ctx.central_binom(k).pow(2) * ctx.central_binom(n - k) * xb.pow(n - k);
                    acc += t;
                }
                acc
            }
            SequenceId::PolyPPlus { x } => {
                let xb = Int::from(x);
                let mut acc = Int::zero();
                for k in 0..=n {
                    if 2 * k < n {
                        continue;
                    }
                    let b = ctx.binom(2 * k, n);
                    if b.is_zero() {
                        continue;
                    }
                    acc += ctx.binom(n, k).pow(2) * b * xb.pow(2 * k - n);
                }
                acc
            }
            SequenceId::ConvSq => convolve(ctx, n, |ctx, k| ctx.central_binom(k).pow(2)),
            SequenceId::Conv23 => {
                convolve(ctx, n, |ctx, k| ctx.central_binom(k) * ctx.binom_ladder(3, 1, k))
            }
            SequenceId::Conv42 => {
                convolve(ctx, n, |ctx, k| ctx.binom_ladder(4, 2, k) * ctx.central_binom(k))
            }
            SequenceId::Conv63 => {
                convolve(ctx, n, |ctx, k| ctx.binom_ladder(6, 3, k) * ctx.binom_ladder(3, 1, k))
            }
            SequenceId::DombLike => {
                let mut acc = Int::zero();
                for k in 0..=n {
                    acc += ctx.binom(n, k).pow(2) * ctx.central_binom(k);
                }
                acc
            }
            SequenceId::SeqS | SequenceId::EulerNum => {
                unreachable!("not a table-backed integer sequence")
            }
        }
    }
}

fn convolve(ctx: &Context, n: u32, half: impl Fn(&Context, u32) -> Int) -> Int {
    let parts: Vec<Int> = (0..=n).map(|k| half(ctx, k)).collect();
    let mut acc = Int::zero();
    for k in 0..=n as usize {
        acc += &parts[k] * &parts[n as usize - k];
    }
    acc
}

/// Exact sequence term, computed from the defining sum.
pub fn term(ctx: &Context, id: &SequenceId, n: u32) -> Rat {
    match id {
        SequenceId::SeqS => {
            // numerator convolution first, then a checked division
            let num = ctx.seq_int(&SequenceId::Conv63, n);
            let den = Int::from(2 * n as i64 - 1) * ctx.binom(3 * n, n);
            Rat::new(num, den)
        }
        SequenceId::EulerNum => Rat::from(ctx.euler(n)),
        _ => Rat::from(ctx.seq_int(id, n)),
    }
}

/// Whether s_n divides out to an integer, together with its exact value.
pub fn seq_s_checked(ctx: &Context, n: u32) -> (Rat, bool) {
    let v = term(ctx, &SequenceId::SeqS, n);
    let is_int = v.denom().is_one();
    (v, is_int)
}

/// Sequence term reduced modulo `modulus >= 2`.
///
/// Returns `Ok(None)` ("excluded") when the term's reduced denominator is not
/// invertible; never a wrong residue.
pub fn term_mod(ctx: &Context, id: &SequenceId, n: u32, modulus: &Int) -> Result<Option<Int>, Error> {
    if modulus < &Int::from(2) {
        return Err(Error::domain("modulus must be >= 2"));
    }
    let v = term(ctx, id, n);
    Ok(reduce_rat(v.numer(), v.denom(), modulus))
}

/// A product of raw binomial ladders and sequence terms, as appears in series
/// and congruence summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Product {
        /// (a, b, pow): binom(a*n, b*n)^pow
        binoms: Vec<(u32, u32, u32)>,
        seqs: Vec<(SequenceId, u32)>,
    },
    /// sum_k binom(-1/4, k)^2 binom(-3/4, n-k)^2 (rational-valued)
    QuarterConv,
}

impl Factor {
    pub fn product(binoms: &[(u32, u32, u32)], seqs: &[(SequenceId, u32)]) -> Self {
        Factor::Product { binoms: binoms.to_vec(), seqs: seqs.to_vec() }
    }

    pub fn one_seq(id: SequenceId) -> Self {
        Factor::product(&[], &[(id, 1)])
    }

    /// Exact value at index n.
    pub fn value(&self, ctx: &Context, n: u32) -> Rat {
        match self {
            Factor::Product { binoms, seqs } => {
                let mut acc = Int::one();
                for &(a, b, pw) in binoms {
                    acc *= ctx.binom_ladder(a, b, n).pow(pw);
                }
                let mut rat = Rat::from(acc);
                for (id, pw) in seqs {
                    let t = term(ctx, id, n);
                    for _ in 0..*pw {
                        rat *= &t;
                    }
                }
                rat
            }
            Factor::QuarterConv => quarter_conv(ctx, n),
        }
    }

    /// Value reduced mod `modulus`; `None` when a denominator is not invertible.
    pub fn value_mod(&self, ctx: &Context, n: u32, modulus: &Int) -> Option<Int> {
        match self {
            Factor::Product { binoms, seqs } => {
                let mut acc = Int::one();
                for &(a, b, pw) in binoms {
                    let v = reduce(&ctx.binom_ladder(a, b, n), modulus);
                    for _ in 0..pw {
                        acc = reduce(&(acc * &v), modulus);
                    }
                }
                for (id, pw) in seqs {
                    let v = term(ctx, id, n);
                    let r = reduce_rat(v.numer(), v.denom(), modulus)?;
                    for _ in 0..*pw {
                        acc = reduce(&(acc * &r), modulus);
                    }
                }
                Some(acc)
            }
            Factor::QuarterConv => {
                let v = quarter_conv(ctx, n);
                reduce_rat(v.numer(), v.denom(), modulus)
            }
        }
    }

    /// Grow any backing tables up to `n_max`.
    pub fn prewarm(&self, ctx: &Context, n_max: u32) {
        if let Factor::Product { binoms, seqs } = self {
            for &(a, b, _) in binoms {
                let _ = ctx.binom_ladder(a, b, n_max);
            }
            for (id, _) in seqs {
                ctx.prewarm(id, n_max);
            }
        }
    }
}

/// sum_k binom(-1/4, k)^2 binom(-3/4, n-k)^2, exactly.
pub fn quarter_conv(ctx: &Context, n: u32) -> Rat {
    let q1 = Rat::new(Int::from(-1), Int::from(4));
    let q3 = Rat::new(Int::from(-3), Int::from(4));
    let mut acc = Rat::zero();
    for k in 0..=n {
        let a = ctx.binom_rat(&q1, k);
        let b = ctx.binom_rat(&q3, n - k);
        acc += &a * &a * &b * &b;
    }
    acc
}
