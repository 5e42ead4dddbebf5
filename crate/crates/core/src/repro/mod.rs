//! Named reproduction tasks. Each task is a list of exact checks with the
//! expected and the computed value side by side.

mod geometry;
mod lattices;
mod properties;

use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) type TaskResult = Result<Vec<Check>, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(description: impl Into<String>, expected: impl Display, computed: impl Display, pass: bool) -> Self {
        Check { description: description.into(), expected: expected.to_string(), computed: computed.to_string(), pass }
    }

    /// Passes when both sides print the same.
    pub fn eq(description: impl Into<String>, expected: impl Display, computed: impl Display) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        Check { description: description.into(), expected: e, computed: c, pass }
    }

    pub fn holds(description: impl Into<String>, ok: bool) -> Self {
        Self::eq(description, true, ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproReport {
    pub task: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub timing_ms: u64,
}

impl ReproReport {
    fn from_checks(task: &str, checks: Vec<Check>, timing_ms: u64) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        ReproReport { task: task.to_string(), checks, pass, timing_ms }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReproError {
    #[error("unknown repro tag {0:?}")]
    UnknownTag(String),
}

type Task = fn() -> TaskResult;

fn task(tag: &str) -> Option<Task> {
    let f: Task = match tag {
        "ns-gen" => lattices::ns_gen,
        "slh" => lattices::slh,
        "clebsch" => lattices::clebsch,
        "a4-embedding" => lattices::a4_embedding,
        "eckardt-1" => || lattices::eckardt("1"),
        "eckardt-2" => || lattices::eckardt("2"),
        "eckardt-2p" => || lattices::eckardt("2p"),
        "eckardt-3" => || lattices::eckardt("3"),
        "eckardt-4" => || lattices::eckardt("4"),
        "eckardt-6" => || lattices::eckardt("6"),
        "cayley" => lattices::cayley,
        "nodal-1" => || lattices::nodal(1),
        "nodal-2" => || lattices::nodal(2),
        "nodal-3" => || lattices::nodal(3),
        "nodal-4" => || lattices::nodal(4),
        "x1n6" => lattices::x1n6,
        "x1n4" => lattices::x1n4,
        "x3n4" => lattices::x3n4,
        "ns1" => lattices::ns1,
        "ns2" => lattices::ns2,
        "hessian" => geometry::hessian,
        "disc32-identity" => geometry::disc32_identity,
        "moduli-maps" => geometry::moduli_maps,
        "limits" => geometry::limits,
        "tritangent" => geometry::tritangent,
        "singular-locus" => geometry::singular_locus,
        "catalog" => geometry::catalog,
        "properties" => properties::properties,
        _ => return None,
    };
    Some(f)
}

/// Tasks run by `all`, in report order. The nodal cases are part of
/// `cayley`.
pub const ALL_TASKS: [&str; 24] = [
    "ns-gen",
    "slh",
    "clebsch",
    "a4-embedding",
    "eckardt-1",
    "eckardt-2",
    "eckardt-2p",
    "eckardt-3",
    "eckardt-4",
    "eckardt-6",
    "cayley",
    "x1n6",
    "x1n4",
    "x3n4",
    "ns1",
    "ns2",
    "hessian",
    "disc32-identity",
    "moduli-maps",
    "limits",
    "tritangent",
    "singular-locus",
    "catalog",
    "properties",
];

fn group(tag: &str) -> Option<&'static [&'static str]> {
    Some(match tag {
        "eckardt" => &["eckardt-1", "eckardt-2", "eckardt-2p", "eckardt-3", "eckardt-4", "eckardt-6"],
        "mixed" => &["x1n6", "x1n4", "x3n4"],
        "non-sylvester" => &["ns1", "ns2"],
        _ => return None,
    })
}

/// Every accepted tag.
pub fn tags() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = ALL_TASKS.to_vec();
    v.extend(["nodal-1", "nodal-2", "nodal-3", "nodal-4", "eckardt", "mixed", "non-sylvester", "all"]);
    v
}

fn run_single(tag: &str, f: Task) -> ReproReport {
    let start = Instant::now();
    let checks = match f() {
        Ok(c) => c,
        Err(e) => vec![Check::new("task ran to completion", "ok", format!("error: {e}"), false)],
    };
    ReproReport::from_checks(tag, checks, start.elapsed().as_millis() as u64)
}

fn run_many(tags: &[&str]) -> Vec<ReproReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = tags
            .iter()
            .map(|&t| {
                let f = task(t).expect("known task");
                s.spawn(move || run_single(t, f))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("task thread panicked")).collect()
    })
}

/// Runs a tag. `all` yields one report per task; every other tag yields a
/// single report.
pub fn run(tag: &str) -> Result<Vec<ReproReport>, ReproError> {
    if tag == "all" {
        return Ok(run_many(&ALL_TASKS));
    }
    if let Some(parts) = group(tag) {
        let start = Instant::now();
        let mut checks = Vec::new();
        for r in run_many(parts) {
            checks.extend(r.checks.into_iter().map(|mut c| {
                c.description = format!("[{}] {}", r.task, c.description);
                c
            }));
        }
        return Ok(vec![ReproReport::from_checks(tag, checks, start.elapsed().as_millis() as u64)]);
    }
    let f = task(tag).ok_or_else(|| ReproError::UnknownTag(tag.to_string()))?;
    Ok(vec![run_single(tag, f)])
}

/// Plain-text rendering of a report.
pub fn render(r: &ReproReport) -> String {
    let mut s = format!("{} [{}] ({} ms)\n", r.task, if r.pass { "PASS" } else { "FAIL" }, r.timing_ms);
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        s.push_str(&format!("  {mark} {}: expected {}, computed {}\n", c.description, c.expected, c.computed));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_tag_resolves() {
        for t in tags() {
            assert!(t == "all" || task(t).is_some() || group(t).is_some(), "{t}");
        }
        assert!(matches!(run("nope"), Err(ReproError::UnknownTag(_))));
    }

    #[test]
    fn report_status_follows_checks() {
        let ok = ReproReport::from_checks("t", vec![Check::eq("a", 1, 1)], 0);
        assert!(ok.pass);
        let bad = ReproReport::from_checks("t", vec![Check::eq("a", 1, 1), Check::eq("b", 1, 2)], 0);
        assert!(!bad.pass);
        assert_eq!(bad.failures().count(), 1);
        assert!(!ReproReport::from_checks("t", vec![], 0).pass);
    }
}
