//! The series registry, loaded from the versioned data file. Adding a series
//! is a data change; the engine stays untouched.

use super::{SeriesSpec, Target};
use crate::error::Error;
use crate::rawspec::{parse_factor, parse_int, parse_rat, RawFactor};
use crate::report::Status;
use once_cell::sync::Lazy;
use serde::Deserialize;

const DATA: &str = include_str!("../../registry/series.json");

#[derive(Deserialize)]
struct RawFile {
    version: u32,
    series: Vec<RawSeries>,
}

#[derive(Deserialize)]
struct RawSeries {
    id: String,
    status: String,
    weight: (i64, i64),
    base: String,
    factor: RawFactor,
    target: RawTarget,
    formula: String,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct RawTarget {
    #[serde(default)]
    r: Option<String>,
    #[serde(default)]
    d: Option<u64>,
    #[serde(default)]
    scale: Option<String>,
    #[serde(default)]
    parts: Option<Vec<(String, u64)>>,
}

fn squarefree(d: u64) -> bool {
    let mut q = 2;
    while q * q <= d {
        if d % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

fn parse_target(raw: &RawTarget, id: &str) -> Result<Target, Error> {
    match (&raw.r, &raw.scale) {
        (Some(r), None) => {
            let d = raw.d.ok_or_else(|| Error::Registry(format!("{id}: missing radicand")))?;
            if !squarefree(d) {
                return Err(Error::Registry(format!("{id}: radicand {d} not squarefree")));
            }
            Ok(Target::RadOverPi { r: parse_rat(r)?, d })
        }
        (None, Some(scale)) => {
            let parts = raw
                .parts
                .as_ref()
                .ok_or_else(|| Error::Registry(format!("{id}: missing radical parts")))?;
            if parts.len() != 2 {
                return Err(Error::Registry(format!("{id}: two-radical target needs 2 parts")));
            }
            for (_, d) in parts {
                if !squarefree(*d) {
                    return Err(Error::Registry(format!("{id}: radicand {d} not squarefree")));
                }
            }
            Ok(Target::TwoRadOverPi {
                scale: parse_rat(scale)?,
                parts: [
                    (parse_int(&parts[0].0)?, parts[0].1),
                    (parse_int(&parts[1].0)?, parts[1].1),
                ],
            })
        }
        _ => Err(Error::Registry(format!("{id}: target must be r*sqrt(d)/pi or a two-radical form"))),
    }
}

fn load() -> Result<Vec<SeriesSpec>, Error> {
    let raw: RawFile =
        serde_json::from_str(DATA).map_err(|e| Error::Registry(format!("series.json: {e}")))?;
    if raw.version != 1 {
        return Err(Error::Registry(format!("unsupported registry version {}", raw.version)));
    }
    raw.series
        .into_iter()
        .map(|s| {
            let status = match s.status.as_str() {
                "proved" => Status::Proved,
                "conjecture" => Status::Conjecture,
                other => return Err(Error::Registry(format!("bad status {other}"))),
            };
            Ok(SeriesSpec {
                target: parse_target(&s.target, &s.id)?,
                factor: parse_factor(&s.factor)?,
                id: s.id,
                status,
                weight: s.weight,
                base: parse_int(&s.base)?,
                formula: s.formula,
                note: s.note,
            })
        })
        .collect()
}

/// All registered series, in file order.
pub fn series_registry() -> &'static [SeriesSpec] {
    static REG: Lazy<Vec<SeriesSpec>> = Lazy::new(|| load().expect("embedded registry parses"));
    &REG
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let reg = series_registry();
        assert_eq!(reg.len(), 42);
        let proved: Vec<&str> = reg
            .iter()
            .filter(|s| s.status == Status::Proved)
            .map(|s| s.id.as_str())
            .collect();
        assert_eq!(
            proved,
            vec![
                "R1", "R2", "R3", "R4", "R5", "R6", "1.1", "1.2", "1.3", "1.4", "1.9", "1.11",
                "1.12", "1.13", "1.15", "1.16", "1.17"
            ]
        );
        let mut ids: Vec<&str> = reg.iter().map(|s| s.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn radicands_squarefree() {
        for s in series_registry() {
            match &s.target {
                Target::RadOverPi { d, .. } => assert!(squarefree(*d), "{}", s.id),
                Target::TwoRadOverPi { parts, .. } => {
                    for (_, d) in parts {
                        assert!(squarefree(*d), "{}", s.id);
                    }
                }
            }
        }
    }
}
