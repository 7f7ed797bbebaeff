//! Report rendering: JSON (full precision), CSV (fixed column order), and
//! human text (big integers truncated past 60 digits).

use piforge_core::report::truncate_digits;
use piforge_core::{CheckResult, Report};
use serde_json::Value;

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn enum_name<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|x| x.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Columns: id,kind,status,result,index,prime,branch,lhs,rhs,detail
pub fn to_csv(report: &Report) -> String {
    let mut out = String::from("id,kind,status,result,index,prime,branch,lhs,rhs,detail\n");
    for item in &report.items {
        let d = &item.detail;
        let get = |k: &str| match d.get(k) {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Null) | None => String::new(),
            Some(v) => v.to_string(),
        };
        let mut rest: Vec<String> = Vec::new();
        if let Some(obj) = d.as_object() {
            for (k, v) in obj {
                if !matches!(k.as_str(), "n" | "p" | "branch" | "lhs" | "rhs") {
                    rest.push(format!("{k}={v}"));
                }
            }
        }
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            csv_quote(&item.id),
            enum_name(&item.kind),
            enum_name(&item.status),
            enum_name(&item.result),
            get("n"),
            get("p"),
            csv_quote(&get("branch")),
            csv_quote(&get("lhs")),
            csv_quote(&get("rhs")),
            csv_quote(&rest.join("; ")),
        ));
    }
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "piforge {} | {}\n",
        report.version,
        serde_json::to_string(&report.config).unwrap_or_default()
    ));
    for item in &report.items {
        let mut line = format!(
            "{:<12} {:<11} {:<10} {:<12}",
            item.id,
            enum_name(&item.kind),
            enum_name(&item.status),
            enum_name(&item.result)
        );
        if let Some(obj) = item.detail.as_object() {
            for (k, v) in obj {
                let vs = match v {
                    Value::String(s) => truncate_digits(s, 60),
                    other => truncate_digits(&other.to_string(), 60),
                };
                line.push_str(&format!(" {k}={vs}"));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    let (pf, cf) = report.fail_counts();
    let fails = report
        .items
        .iter()
        .filter(|i| i.result == CheckResult::Fail)
        .count();
    out.push_str(&format!(
        "summary: {} items, {} fail ({} proved, {} conjecture), wall {} ms\n",
        report.items.len(),
        fails,
        pf,
        cf,
        report.timings.wall_ms
    ));
    out
}
