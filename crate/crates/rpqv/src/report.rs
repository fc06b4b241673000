//! Report assembly and serialization: JSON ({config, summary, records[]})
//! and CSV with the fixed header
//! `check,delta,n,m,k,degree,residual,status,reason`. Residuals are always
//! exact rational strings; nothing is ever rounded to decimal.

use crate::catalog::{Record, Status};
use crate::config::RawConfig;
use serde::Serialize;

#[derive(Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub recorded: usize,
    pub skipped: usize,
    pub error: usize,
    pub total: usize,
    pub version: &'static str,
    pub timestamp: String,
}

#[derive(Serialize)]
pub struct Report {
    pub config: RawConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

pub fn summarize(records: &[Record]) -> Summary {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    Summary {
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        recorded: count(Status::Recorded),
        skipped: count(Status::Skipped),
        error: count(Status::Error),
        total: records.len(),
        version: env!("CARGO_PKG_VERSION"),
        timestamp: timestamp(),
    }
}

fn timestamp() -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{now}")
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

pub fn to_csv(records: &[Record]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "delta", "n", "m", "k", "degree", "residual", "status", "reason"])
        .expect("csv header");
    let opt_i = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Recorded => "recorded",
            Status::Skipped => "skipped",
            Status::Error => "error",
        };
        w.write_record([
            r.check.clone(),
            r.delta.clone().unwrap_or_default(),
            opt_i(r.n),
            opt_i(r.m),
            opt_i(r.k),
            opt_i(r.degree),
            r.residual.clone(),
            status.to_string(),
            r.reason.clone(),
        ])
        .expect("csv record");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}
