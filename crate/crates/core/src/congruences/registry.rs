//! The congruence case registry, loaded from the versioned data file.

use super::{Branch, BranchValue, CongruenceCase, RhsRule, RhsTerm, SumSpec};
use crate::error::Error;
use crate::rawspec::{parse_factor, parse_int, parse_rat, parse_sym, RawFactor};
use crate::report::Status;
use once_cell::sync::Lazy;
use serde::Deserialize;

const DATA: &str = include_str!("../../registry/congruences.json");

#[derive(Deserialize)]
struct RawFile {
    version: u32,
    cases: Vec<RawCase>,
}

#[derive(Deserialize)]
struct RawCase {
    id: String,
    status: String,
    mod_exp: u32,
    #[serde(default)]
    excluded: Vec<u64>,
    lhs: RawSum,
    rhs: RawRhs,
    formula: String,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct RawSum {
    weight: (i64, i64),
    base: String,
    factor: RawFactor,
}

#[derive(Deserialize)]
struct RawRhs {
    kind: String,
    #[serde(default)]
    scale: Option<String>,
    #[serde(default)]
    terms: Vec<RawTerm>,
    #[serde(default)]
    branches: Vec<RawBranch>,
    #[serde(default)]
    syms: Vec<String>,
    #[serde(default)]
    right: Option<RawSum>,
}

#[derive(Deserialize)]
struct RawTerm {
    coef: String,
    p_pow: u32,
    #[serde(default)]
    euler: bool,
    #[serde(default)]
    syms: Vec<String>,
}

#[derive(Deserialize)]
struct RawBranch {
    cond: Vec<RawCond>,
    value: RawBranchValue,
}

#[derive(Deserialize)]
struct RawCond {
    syms: Vec<String>,
    sign: i8,
}

#[derive(Deserialize)]
struct RawBranchValue {
    kind: String,
    #[serde(default)]
    mod_p_only_at: Vec<u64>,
    #[serde(default)]
    lead: u64,
    #[serde(default)]
    d: u64,
    #[serde(default)]
    double: bool,
    #[serde(default)]
    x2: i64,
    #[serde(default)]
    p: i64,
    #[serde(default)]
    syms: Vec<String>,
}

fn parse_sum(raw: &RawSum) -> Result<SumSpec, Error> {
    Ok(SumSpec {
        weight: raw.weight,
        factor: parse_factor(&raw.factor)?,
        base: parse_int(&raw.base)?,
    })
}

fn parse_case(raw: RawCase) -> Result<CongruenceCase, Error> {
    let status = match raw.status.as_str() {
        "proved" => Status::Proved,
        "conjecture" => Status::Conjecture,
        other => return Err(Error::Registry(format!("bad status {other}"))),
    };
    let rhs = match raw.rhs.kind.as_str() {
        "zero" => RhsRule::Zero,
        "formula" => {
            let scale = parse_rat(raw.rhs.scale.as_deref().unwrap_or("1"))?;
            let mut terms = Vec::new();
            for t in &raw.rhs.terms {
                terms.push(RhsTerm {
                    coef: parse_rat(&t.coef)?,
                    p_pow: t.p_pow,
                    euler: t.euler,
                    syms: t.syms.iter().map(|s| parse_sym(s)).collect::<Result<_, _>>()?,
                });
            }
            RhsRule::Formula { scale, terms }
        }
        "branches" => {
            let mut branches = Vec::new();
            for b in &raw.rhs.branches {
                let cond = b
                    .cond
                    .iter()
                    .map(|c| {
                        Ok((
                            c.syms.iter().map(|s| parse_sym(s)).collect::<Result<Vec<_>, Error>>()?,
                            c.sign,
                        ))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                let value = match b.value.kind.as_str() {
                    "zero" => BranchValue::Zero { mod_p_only_at: b.value.mod_p_only_at.clone() },
                    "form" => BranchValue::Form {
                        lead: b.value.lead,
                        d: b.value.d,
                        double: b.value.double,
                        x2_coef: b.value.x2,
                        p_coef: b.value.p,
                        syms: b.value.syms.iter().map(|s| parse_sym(s)).collect::<Result<_, _>>()?,
                    },
                    other => return Err(Error::Registry(format!("bad branch value kind {other}"))),
                };
                branches.push(Branch { cond, value });
            }
            RhsRule::Branches(branches)
        }
        "pair" => {
            let right = raw
                .rhs
                .right
                .as_ref()
                .ok_or_else(|| Error::Registry(format!("{}: pair needs a right sum", raw.id)))?;
            RhsRule::PairSum {
                right: parse_sum(right)?,
                syms: raw.rhs.syms.iter().map(|s| parse_sym(s)).collect::<Result<_, _>>()?,
            }
        }
        other => return Err(Error::Registry(format!("bad rhs kind {other}"))),
    };
    Ok(CongruenceCase {
        id: raw.id,
        status,
        mod_exp: raw.mod_exp,
        excluded: raw.excluded,
        lhs: parse_sum(&raw.lhs)?,
        rhs,
        formula: raw.formula,
        note: raw.note,
    })
}

fn load() -> Result<Vec<CongruenceCase>, Error> {
    let raw: RawFile =
        serde_json::from_str(DATA).map_err(|e| Error::Registry(format!("congruences.json: {e}")))?;
    if raw.version != 1 {
        return Err(Error::Registry(format!("unsupported registry version {}", raw.version)));
    }
    raw.cases.into_iter().map(parse_case).collect()
}

/// All registered congruence cases, in file order.
pub fn congruence_registry() -> &'static [CongruenceCase] {
    static REG: Lazy<Vec<CongruenceCase>> = Lazy::new(|| load().expect("embedded registry parses"));
    &REG
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn loads_and_counts() {
        let reg = congruence_registry();
        assert_eq!(reg.iter().filter(|c| c.status == Status::Proved).count(), 4);
        assert_eq!(reg.len(), 34);
        // ids unique
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn exclusions_mirror_hypotheses() {
        let reg = congruence_registry();
        let get = |id: &str| reg.iter().find(|c| c.id == id).unwrap();
        assert_eq!(get("1.6").excluded, vec![3]);
        assert_eq!(get("1.8").excluded, vec![3]);
        assert_eq!(get("C4.4b").excluded, vec![7]);
        assert_eq!(get("C5.4a").excluded, vec![5]);
        assert_eq!(get("C5.5b").excluded, vec![3, 29]);
        assert_eq!(get("C5.8a").excluded, vec![7, 11]);
        assert_eq!(get("C5.8b").excluded, vec![7, 11]);
        assert_eq!(get("C5.9a").excluded, vec![7]);
        assert_eq!(get("C5.6b").excluded, vec![3, 7, 11, 17, 31]);
    }

    #[test]
    fn mod_exponents() {
        let reg = congruence_registry();
        for c in reg {
            let e = c.mod_exp;
            match c.id.as_str() {
                "1.5" => assert_eq!(e, 3),
                id if id.starts_with("C4.1") => assert_eq!(e, 4),
                "1.6" | "1.7" | "1.8" => assert_eq!(e, 2),
                _ => assert_eq!(e, 2, "{}", c.id),
            }
        }
    }
}
