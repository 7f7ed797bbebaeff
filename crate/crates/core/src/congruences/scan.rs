//! Diagnostic scan of the trailing (b, c, m; d) list: residues tabulated next
//! to the symbol (-d/p) and the representation p = x^2 + d y^2, with no
//! pass/fail semantics since no closed form is asserted.

use super::{legendre_i64, lhs_sum_mod, quadform_rep, SumSpec};
use crate::context::Context;
use crate::error::Error;
use crate::primes::odd_primes_in;
use crate::sequences::{Factor, SequenceId};
use crate::Int;
use serde::Serialize;

/// (b, c, m, d): sum C(2k,k) T_k(b,c)^2 / m^k mod p^2 scanned against
/// p = x^2 + d y^2.
pub const SCAN_TUPLES: [(i64, i64, i64, u64); 7] = [
    (5, 4, 4, 10),
    (6, 1, 192, 6),
    (3, -4, 36, 13),
    (5, 4, 196, 30),
    (7, 1, 196, 30),
    (7, 28, 196, 21),
    (11, 49, 484, 42),
];

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub tuple: String,
    pub prime: u64,
    /// None when p divides the base m
    pub residue: Option<Int>,
    pub symbol: i8,
    pub rep_found: bool,
    pub rep_x: u64,
    pub rep_y: u64,
}

/// One row per (tuple, odd prime <= p_max), ordered by tuple then prime.
pub fn scan_5_9(ctx: &Context, p_max: u64) -> Result<Vec<ScanRow>, Error> {
    if p_max < 5 {
        return Err(Error::domain("scan needs p_max >= 5"));
    }
    let mut rows = Vec::new();
    for (b, c, m, d) in SCAN_TUPLES {
        let sum = SumSpec {
            weight: (0, 1),
            factor: Factor::product(&[(2, 1, 1)], &[(SequenceId::TrinomialT { b, c }, 2)]),
            base: Int::from(m),
        };
        for p in odd_primes_in(3, p_max) {
            let residue = lhs_sum_mod(ctx, &sum, p, 2);
            let symbol = legendre_i64(-(d as i64), p)?;
            let rep = quadform_rep(&Int::from(p), d);
            rows.push(ScanRow {
                tuple: format!("({b},{c},{m};{d})"),
                prime: p,
                residue,
                symbol,
                rep_found: rep.found,
                rep_x: rep.x,
                rep_y: rep.y,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_cover_tuples_and_primes() {
        let ctx = Context::new();
        let rows = scan_5_9(&ctx, 20).unwrap();
        let primes = crate::primes::odd_primes_in(3, 20).len();
        assert_eq!(rows.len(), SCAN_TUPLES.len() * primes);
        // (11,49,484;42) at p=11: excluded since 11 | 484
        let r = rows
            .iter()
            .find(|r| r.tuple == "(11,49,484;42)" && r.prime == 11)
            .unwrap();
        assert!(r.residue.is_none());
        // (5,4,4;10) at p=3 has a residue and a symbol
        let r = rows.iter().find(|r| r.tuple == "(5,4,4;10)" && r.prime == 3).unwrap();
        assert!(r.residue.is_some());
        assert_ne!(r.symbol, 0);
    }
}
