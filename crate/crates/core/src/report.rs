//! Pass/fail diagnostics shared by the structure, axiom, field and
//! isomorphism checkers.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Witnesses kept per check unless a caller asks for more.
pub const DEFAULT_WITNESSES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing to check, e.g. a four-object axiom on a three-object table.
    Vacuous,
    /// Not run because an earlier layer failed.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Vacuous => "vacuous",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl CheckOutcome {
    pub fn skipped(name: &str, reason: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            status: Status::Skipped,
            checked: 0,
            failures: 0,
            witnesses: vec![reason.to_string()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: vec![],
        }
    }

    /// No check failed. Vacuous and skipped checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<20} {:<8} checked={} failures={}",
                c.name, c.status, c.checked, c.failures
            );
            for w in &c.witnesses {
                let _ = writeln!(out, "      {w}");
            }
        }
        let _ = writeln!(
            out,
            "  result: {}",
            if self.passed() { "pass" } else { "FAIL" }
        );
        out
    }
}

/// Running count for one check.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
    cap: usize,
}

impl Tally {
    pub fn new(cap: usize) -> Self {
        Tally {
            checked: 0,
            failures: 0,
            witnesses: vec![],
            cap,
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < self.cap {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        let room = self.cap.saturating_sub(self.witnesses.len());
        self.witnesses
            .extend(other.witnesses.into_iter().take(room));
        self
    }

    pub fn into_outcome(self, name: &str) -> CheckOutcome {
        let status = if self.checked == 0 {
            Status::Vacuous
        } else if self.failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckOutcome {
            name: name.to_string(),
            status,
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
        }
    }
}

/// Runs `body` over `0..n` in parallel and merges the partial tallies in
/// index order, so the result does not depend on the thread count.
pub(crate) fn sweep<G>(n: usize, cap: usize, body: G) -> Tally
where
    G: Fn(usize, &mut Tally) + Sync + Send,
{
    let parts: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new(cap);
            body(i, &mut t);
            t
        })
        .collect();
    parts.into_iter().fold(Tally::new(cap), Tally::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_order_stable() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let run = || {
            sweep(100, 3, |i, t| {
                for j in 0..10 {
                    t.record((i * 10 + j) % 7 != 0, || format!("{i}/{j}"));
                }
            })
        };
        let a = pool.install(run);
        let b = run();
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(a.witnesses, ["0/0", "0/7", "1/4"]);
        assert_eq!(a.checked, 1000);
        assert_eq!(a.failures, 143);
    }

    #[test]
    fn outcome_status() {
        assert_eq!(Tally::new(1).into_outcome("x").status, Status::Vacuous);
        let mut t = Tally::new(1);
        t.record(true, String::new);
        assert_eq!(t.clone().into_outcome("x").status, Status::Pass);
        t.record(false, || "w".into());
        let o = t.into_outcome("x");
        assert_eq!(o.status, Status::Fail);
        let mut r = Report::new("r");
        r.checks.push(o);
        assert!(!r.passed());
        assert!(r.render_text().contains("FAIL"));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), r);
    }
}
