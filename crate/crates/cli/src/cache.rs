//! Append-only sequence value cache.
//!
//! Line format: a `{"version":1}` header, then one JSON record per line,
//! `{"seq": "<name>", "n": <index>, "value": "<decimal>"}`. Records must form
//! dense prefixes per sequence to be trusted; anything corrupt or out of
//! order is skipped with a warning. A cached value can change timings only,
//! never a verdict.

use anyhow::{Context as _, Result};
use piforge_core::{Context, Int, SequenceId};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

#[derive(Serialize, Deserialize)]
struct Header {
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct Record {
    seq: String,
    n: u32,
    value: String,
}

/// Seed the context from a cache file. Returns how many entries per sequence
/// were loaded, so `append_new` can extend the file without rewriting it.
pub fn load(path: &Path, ctx: &Context) -> Result<HashMap<String, u32>> {
    let mut counts: HashMap<String, u32> = HashMap::new();
    if !path.exists() {
        return Ok(counts);
    }
    let file = std::fs::File::open(path).with_context(|| format!("open {}", path.display()))?;
    let mut lines = std::io::BufReader::new(file).lines();
    match lines.next() {
        Some(Ok(h)) => {
            let header: Header = serde_json::from_str(&h).context("cache header")?;
            if header.version != 1 {
                anyhow::bail!("unsupported cache version {}", header.version);
            }
        }
        _ => anyhow::bail!("missing cache header"),
    }
    let mut records: Vec<Record> = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Record>(&line) {
            Ok(r) => records.push(r),
            Err(e) => {
                eprintln!("piforge: warning: skipping corrupt cache line: {e}");
            }
        }
    }
    records.sort_by(|a, b| (&a.seq, a.n).cmp(&(&b.seq, b.n)));
    for r in records {
        let Some(id) = SequenceId::from_name(&r.seq) else {
            eprintln!("piforge: warning: unknown cached sequence {}", r.seq);
            continue;
        };
        let Ok(value) = Int::from_str(&r.value) else {
            eprintln!("piforge: warning: bad cached value for {}[{}]", r.seq, r.n);
            continue;
        };
        ctx.seed_seq_value(&id, r.n, value);
        *counts.entry(r.seq).or_default() += 1;
    }
    Ok(counts)
}

/// Append entries the run computed beyond what the file already held.
pub fn append_new(path: &Path, ctx: &Context, loaded: &HashMap<String, u32>) -> Result<()> {
    let fresh = ctx.dump_seq_tables();
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("open {} for append", path.display()))?;
    if path.metadata()?.len() == 0 {
        writeln!(file, "{}", serde_json::to_string(&Header { version: 1 })?)?;
    }
    for (id, values) in fresh {
        let name = id.name();
        let start = loaded.get(&name).copied().unwrap_or(0);
        for (n, v) in values.iter().enumerate().skip(start as usize) {
            let rec = Record { seq: name.clone(), n: n as u32, value: v.to_string() };
            writeln!(file, "{}", serde_json::to_string(&rec)?)?;
        }
    }
    Ok(())
}
