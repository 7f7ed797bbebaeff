//! Serde-facing schema shared by the registry data files.

use crate::congruences::Sym;
use crate::error::Error;
use crate::sequences::{Factor, SequenceId};
use crate::{Int, Rat};
use serde::Deserialize;
use std::str::FromStr;

#[derive(Deserialize)]
pub(crate) struct RawSeq {
    pub seq: String,
    #[serde(default)]
    pub params: Vec<i64>,
    pub pow: u32,
}

#[derive(Deserialize, Default)]
pub(crate) struct RawFactor {
    #[serde(default)]
    pub binoms: Vec<(u32, u32, u32)>,
    #[serde(default)]
    pub seqs: Vec<RawSeq>,
    #[serde(default)]
    pub quarter_conv: bool,
}

pub(crate) fn parse_sequence(name: &str, params: &[i64]) -> Result<SequenceId, Error> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Registry(format!(
                "sequence {name} expects {n} params, got {}",
                params.len()
            )))
        }
    };
    Ok(match name {
        "central" => {
            arity(0)?;
            SequenceId::CentralBinom
        }
        "T" => {
            arity(2)?;
            SequenceId::TrinomialT { b: params[0], c: params[1] }
        }
        "P" => {
            arity(1)?;
            SequenceId::PolyP { x: params[0] }
        }
        "P+" => {
            arity(1)?;
            SequenceId::PolyPPlus { x: params[0] }
        }
        "conv-sq" => {
            arity(0)?;
            SequenceId::ConvSq
        }
        "conv-23" => {
            arity(0)?;
            SequenceId::Conv23
        }
        "conv-42" => {
            arity(0)?;
            SequenceId::Conv42
        }
        "conv-63" => {
            arity(0)?;
            SequenceId::Conv63
        }
        "domb" => {
            arity(0)?;
            SequenceId::DombLike
        }
        "s" => {
            arity(0)?;
            SequenceId::SeqS
        }
        "euler" => {
            arity(0)?;
            SequenceId::EulerNum
        }
        other => return Err(Error::Registry(format!("unknown sequence name {other}"))),
    })
}

pub(crate) fn parse_factor(raw: &RawFactor) -> Result<Factor, Error> {
    if raw.quarter_conv {
        if !raw.binoms.is_empty() || !raw.seqs.is_empty() {
            return Err(Error::Registry("quarter_conv factor must stand alone".into()));
        }
        return Ok(Factor::QuarterConv);
    }
    let mut seqs = Vec::new();
    for s in &raw.seqs {
        seqs.push((parse_sequence(&s.seq, &s.params)?, s.pow));
    }
    Ok(Factor::Product { binoms: raw.binoms.clone(), seqs })
}

pub(crate) fn parse_int(s: &str) -> Result<Int, Error> {
    Int::from_str(s).map_err(|e| Error::Registry(format!("bad integer {s}: {e}")))
}

/// "3", "-19", "1/2", "-19/7"
pub(crate) fn parse_rat(s: &str) -> Result<Rat, Error> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    Ok(Rat::new(parse_int(n)?, parse_int(d)?))
}

/// "a/p" with the running prime below, or "p/q" with a fixed odd prime q.
pub(crate) fn parse_sym(s: &str) -> Result<Sym, Error> {
    if let Some(a) = s.strip_suffix("/p") {
        let a = a
            .parse::<i64>()
            .map_err(|e| Error::Registry(format!("bad symbol {s}: {e}")))?;
        return Ok(Sym::OverP(a));
    }
    if let Some(q) = s.strip_prefix("p/") {
        let q = q
            .parse::<u64>()
            .map_err(|e| Error::Registry(format!("bad symbol {s}: {e}")))?;
        return Ok(Sym::OfP(q));
    }
    Err(Error::Registry(format!("unparseable symbol {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(parse_sym("-1/p").unwrap(), Sym::OverP(-1));
        assert_eq!(parse_sym("-21/p").unwrap(), Sym::OverP(-21));
        assert_eq!(parse_sym("p/7").unwrap(), Sym::OfP(7));
        assert!(parse_sym("x/y").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("4/3").unwrap(), Rat::new(Int::from(4), Int::from(3)));
        assert_eq!(parse_rat("-2").unwrap(), Rat::from(Int::from(-2)));
    }

    #[test]
    fn arity_enforced() {
        assert!(parse_sequence("T", &[3]).is_err());
        assert!(parse_sequence("P", &[4]).is_ok());
        assert!(parse_sequence("conv-sq", &[1]).is_err());
        assert!(parse_sequence("nope", &[]).is_err());
    }
}
