//! Command implementations: resolve selectors, drive the engines, assemble
//! report items in deterministic order.

use crate::{CongruencesArgs, IdentitiesArgs, SeqArgs, SeriesArgs};
use anyhow::{anyhow, bail, Result};
use num_traits::{Signed, ToPrimitive};
use piforge_core::sequences::{seq_s_checked, term};
use piforge_core::{
    check_1_10, check_case, check_convergence, check_lemma_3_2, congruences, scan_5_9,
    series_registry, verify_identity, verify_recurrence, verify_s_properties, CheckResult,
    Context, IdentityId, Int, Item, ItemKind, PrecisionBudget, Rat, RecurrenceId, RecurrenceSide,
    Report, SequenceId, Status, Verdict,
};
use serde_json::{json, Value};

fn config_echo(command: &str, fields: Value) -> Value {
    let mut obj = json!({ "command": command });
    if let (Some(a), Some(b)) = (obj.as_object_mut(), fields.as_object()) {
        for (k, v) in b {
            a.insert(k.clone(), v.clone());
        }
    }
    obj
}

pub fn run_identities(ctx: &Context, args: &IdentitiesArgs) -> Result<Report> {
    let mut ids = args.id.clone();
    if args.all || ids.is_empty() {
        ids = IdentityId::ALL.iter().map(|i| i.name().to_string()).collect();
        ids.extend(RecurrenceId::ALL.iter().map(|r| r.name().to_string()));
        ids.push("s-props".into());
    }
    // resolve before any computation
    for id in &ids {
        let known = IdentityId::from_name(id).is_some()
            || RecurrenceId::from_name(id).is_some()
            || id == "s-props";
        if !known {
            bail!("unknown identity id: {id}");
        }
    }
    let mut items = Vec::new();
    for id in &ids {
        if let Some(ident) = IdentityId::from_name(id) {
            for v in verify_identity(ctx, ident, args.n_max) {
                let result = if v.equal { CheckResult::Pass } else { CheckResult::Fail };
                let mut detail = json!({ "n": v.n });
                if !v.equal {
                    detail["lhs"] = json!(rat_str(&v.lhs));
                    detail["rhs"] = json!(rat_str(&v.rhs));
                }
                items.push(
                    Item::new(id.clone(), ItemKind::Identity, ident.provenance(), result)
                        .with_detail(detail),
                );
            }
        } else if let Some(rec) = RecurrenceId::from_name(id) {
            for side in [RecurrenceSide::Lhs, RecurrenceSide::Rhs] {
                let side_name = match side {
                    RecurrenceSide::Lhs => "lhs",
                    RecurrenceSide::Rhs => "rhs",
                };
                for v in verify_recurrence(ctx, rec, side, args.n_max.max(2)) {
                    let result = if v.holds { CheckResult::Pass } else { CheckResult::Fail };
                    let mut detail = json!({ "n": v.n, "side": side_name });
                    if !v.holds {
                        detail["residual"] = json!(rat_str(&v.residual));
                    }
                    items.push(
                        Item::new(id.clone(), ItemKind::Recurrence, Status::Proved, result)
                            .with_detail(detail),
                    );
                }
            }
        } else {
            let rep = verify_s_properties(ctx, args.n_max.max(1), args.pmax.max(3));
            let result = if rep.all_pass() { CheckResult::Pass } else { CheckResult::Fail };
            items.push(
                Item::new("s-props", ItemKind::Sequence, Status::Proved, result).with_detail(json!({
                    "n_max": rep.n_max,
                    "p_max": rep.p_max,
                    "s0_is_minus_one": rep.s0_is_minus_one,
                    "non_integral": rep.non_integral,
                    "not_div8": rep.not_div8,
                    "bad_primes": rep.bad_primes,
                })),
            );
        }
    }
    let config = config_echo("identities", json!({ "ids": ids, "n_max": args.n_max, "p_max": args.pmax }));
    Ok(Report::new(config, items))
}

pub fn run_series(ctx: &Context, args: &SeriesArgs, ceiling: u32) -> Result<Report> {
    let registry = series_registry();
    let mut selected: Vec<String> = args.id.clone();
    if let Some(suite) = &args.suite {
        if !matches!(suite.as_str(), "proved" | "conjecture" | "all") {
            bail!("unknown suite: {suite} (expected proved, conjecture, or all)");
        }
        selected.extend(
            registry
                .iter()
                .filter(|s| match suite.as_str() {
                    "proved" => s.status == Status::Proved,
                    "conjecture" => s.status == Status::Conjecture,
                    _ => true,
                })
                .map(|s| s.id.clone()),
        );
    }
    if selected.is_empty() && args.lemma32.is_none() {
        bail!("select series with --id, --suite, or --lemma32");
    }
    for id in &selected {
        if id != "1.10" && !registry.iter().any(|s| &s.id == id) {
            bail!("unknown series id: {id}");
        }
    }
    let budget = PrecisionBudget::new(args.digits, args.max_terms, ceiling)
        .map_err(|e| anyhow!("{e}"))?;
    let mut items = Vec::new();
    for id in &selected {
        if id == "1.10" {
            let rep = check_1_10(ctx, args.digits)?;
            let result = if rep.pass { CheckResult::Pass } else { CheckResult::Fail };
            items.push(
                Item::new("1.10", ItemKind::Series, Status::Proved, result)
                    .with_detail(serde_json::to_value(&rep)?),
            );
            continue;
        }
        let spec = registry.iter().find(|s| &s.id == id).expect("resolved above");
        let rep = check_convergence(ctx, spec, budget);
        items.push(
            Item::new(id.clone(), ItemKind::Series, spec.status, rep.outcome)
                .with_detail(serde_json::to_value(&rep)?),
        );
    }
    if let Some(m) = args.lemma32 {
        let rep = check_lemma_3_2(ctx, &Int::from(m), args.digits).map_err(|e| anyhow!("{e}"))?;
        let ok = rep.pass_plain && rep.pass_weighted;
        items.push(
            Item::new(
                format!("L3.2({m})"),
                ItemKind::Series,
                Status::Proved,
                if ok { CheckResult::Pass } else { CheckResult::Fail },
            )
            .with_detail(serde_json::to_value(&rep)?),
        );
    }
    let config = config_echo(
        "series",
        json!({
            "ids": selected,
            "suite": args.suite,
            "digits": args.digits,
            "max_terms": args.max_terms,
            "lemma32": args.lemma32,
        }),
    );
    Ok(Report::new(config, items))
}

pub fn run_congruences(ctx: &Context, args: &CongruencesArgs, pmax_ceiling: u64) -> Result<Report> {
    if args.pmin < 3 || args.pmin > args.pmax {
        bail!("prime range must satisfy 3 <= pmin <= pmax");
    }
    if args.pmax > pmax_ceiling {
        bail!("pmax {} exceeds the ceiling {pmax_ceiling}", args.pmax);
    }
    let registry = congruences::congruence_registry();
    let mut scan = false;
    let mut case_ids: Vec<String> = Vec::new();
    for id in &args.id {
        if id == "scan5.9" {
            scan = true;
        } else if registry.iter().any(|c| &c.id == id) {
            case_ids.push(id.clone());
        } else {
            bail!("unknown congruence id: {id}");
        }
    }
    if let Some(suite) = &args.suite {
        if !matches!(suite.as_str(), "proved" | "conjecture" | "all") {
            bail!("unknown suite: {suite} (expected proved, conjecture, or all)");
        }
        case_ids.extend(
            congruences::suite_filter(registry, suite)
                .iter()
                .map(|c| c.id.clone()),
        );
    }
    if case_ids.is_empty() && !scan {
        bail!("select cases with --id or --suite");
    }
    case_ids.sort();
    case_ids.dedup();

    let cases: Vec<&piforge_core::CongruenceCase> = case_ids
        .iter()
        .map(|id| registry.iter().find(|c| &c.id == id).expect("resolved above"))
        .collect();
    let verdicts = congruences::run_suite(ctx, &cases, args.pmin, args.pmax)
        .map_err(|e| anyhow!("{e}"))?;
    let mut items: Vec<Item> = Vec::new();
    for v in &verdicts {
        let case = cases.iter().find(|c| c.id == v.case_id).expect("known case");
        items.push(verdict_item(v, case.status));
    }
    if scan {
        let rows = scan_5_9(ctx, args.pmax).map_err(|e| anyhow!("{e}"))?;
        for r in rows {
            let result = if r.residue.is_some() { CheckResult::Pass } else { CheckResult::Excluded };
            items.push(
                Item::new("scan5.9", ItemKind::Diagnostic, Status::Diagnostic, result).with_detail(
                    json!({
                        "tuple": r.tuple,
                        "p": r.prime,
                        "residue": r.residue.map(|x| x.to_string()),
                        "symbol": r.symbol,
                        "rep_found": r.rep_found,
                        "x": r.rep_x,
                        "y": r.rep_y,
                    }),
                ),
            );
        }
    }
    let config = config_echo(
        "congruences",
        json!({
            "ids": case_ids,
            "scan": scan,
            "suite": args.suite,
            "p_min": args.pmin,
            "p_max": args.pmax,
        }),
    );
    Ok(Report::new(config, items))
}

fn verdict_item(v: &Verdict, status: Status) -> Item {
    let mut detail = json!({ "p": v.prime });
    if let Some(b) = &v.branch {
        detail["branch"] = json!(b);
    }
    if let Some(l) = &v.lhs {
        detail["lhs"] = json!(l.to_string());
    }
    if let Some(r) = &v.rhs {
        detail["rhs"] = json!(r.to_string());
    }
    if let Some(d) = &v.detail {
        detail["note"] = json!(d);
    }
    if v.result == CheckResult::Fail && status == Status::Conjecture {
        detail["finding"] = json!(true);
    }
    Item::new(v.case_id.clone(), ItemKind::Congruence, status, v.result).with_detail(detail)
}

pub fn run_seq(ctx: &Context, args: &SeqArgs) -> Result<Report> {
    let id = resolve_seq(args)?;
    let ns: Vec<u32> = match (args.n, args.n_max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => bail!("pass --n or --n-max"),
        (Some(_), Some(_)) => bail!("--n and --n-max are mutually exclusive"),
    };
    let mut items = Vec::new();
    for &n in &ns {
        let v = term(ctx, &id, n);
        let mut detail = json!({ "n": n, "value": rat_str(&v) });
        let mut result = CheckResult::Pass;
        if id == SequenceId::SeqS {
            let (_, is_int) = seq_s_checked(ctx, n);
            if !is_int {
                result = CheckResult::Fail;
                detail["note"] = json!("not an integer");
            } else if n >= 1 {
                // diagnostic trace toward the conjectured limit of s_n^(1/n)
                let root = v.numer().abs().nth_root(n);
                detail["nth_root_floor"] = json!(root.to_string());
                detail["nth_root_approx"] = json!(nth_root_approx(v.numer(), n));
            }
        }
        items.push(
            Item::new(id.name(), ItemKind::Sequence, Status::Diagnostic, result).with_detail(detail),
        );
    }
    let config = config_echo("seq", json!({ "id": id.name(), "ns": ns }));
    Ok(Report::new(config, items))
}

fn resolve_seq(args: &SeqArgs) -> Result<SequenceId> {
    let need = |opt: Option<i64>, flag: &str| {
        opt.ok_or_else(|| anyhow!("sequence {} requires --{flag}", args.id))
    };
    let refuse = |opt: Option<i64>, flag: &str| -> Result<()> {
        if opt.is_some() {
            bail!("sequence {} does not take --{flag}", args.id);
        }
        Ok(())
    };
    let id = match args.id.as_str() {
        "T" => SequenceId::TrinomialT { b: need(args.b, "b")?, c: need(args.c, "c")? },
        "P" => {
            refuse(args.b, "b")?;
            refuse(args.c, "c")?;
            SequenceId::PolyP { x: need(args.x, "x")? }
        }
        "P+" => SequenceId::PolyPPlus { x: need(args.x, "x")? },
        other => {
            refuse(args.b, "b")?;
            refuse(args.c, "c")?;
            refuse(args.x, "x")?;
            SequenceId::from_name(other).ok_or_else(|| anyhow!("unknown sequence id: {other}"))?
        }
    };
    Ok(id)
}

fn rat_str(r: &Rat) -> String {
    if num_traits::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// f64 estimate of |v|^(1/n) for the diagnostic trace only.
fn nth_root_approx(v: &Int, n: u32) -> f64 {
    let s = v.abs().to_string();
    let digits = s.len() as f64;
    let lead: f64 = s[..s.len().min(15)].parse::<f64>().unwrap_or(1.0);
    let log10 = lead.log10() + (digits - s.len().min(15) as f64);
    10f64.powf(log10 / n as f64)
}
