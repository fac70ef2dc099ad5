use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

/// Which independent route a check takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Method {
    /// Rational closed forms expanded and compared.
    A,
    /// Members and irreducibles enumerated word by word.
    B,
    /// Weighted composition sums.
    C,
    /// Member and irreducible counts by automaton dynamic programming.
    D,
    /// Reference sequences and side conditions.
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

/// One coefficientwise comparison over `from..=to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub check: String,
    pub status: Status,
    pub from: usize,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MethodResult {
    /// Compares `lhs(n)` against `rhs(n)` for `from <= n <= to`.
    pub fn compare(
        method: Method,
        check: impl Into<String>,
        from: usize,
        to: usize,
        lhs: impl Fn(usize) -> BigInt,
        rhs: impl Fn(usize) -> BigInt,
    ) -> Self {
        let discrepancy = (from..=to).find_map(|n| {
            let (l, r) = (lhs(n), rhs(n));
            (l != r).then(|| Discrepancy {
                index: n,
                lhs: l.to_string(),
                rhs: r.to_string(),
            })
        });
        MethodResult {
            method,
            check: check.into(),
            status: if discrepancy.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            from,
            to,
            discrepancy,
            note: None,
        }
    }

    pub fn skipped(method: Method, check: impl Into<String>, note: impl Into<String>) -> Self {
        MethodResult {
            method,
            check: check.into(),
            status: Status::Skipped,
            from: 0,
            to: 0,
            discrepancy: None,
            note: Some(note.into()),
        }
    }

    pub fn failed(method: Method, check: impl Into<String>, note: impl Into<String>) -> Self {
        MethodResult {
            status: Status::Fail,
            ..MethodResult::skipped(method, check, note)
        }
    }
}

/// Outcome of checking one identity instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub id: String,
    pub params: String,
    pub order: usize,
    pub passed: bool,
    pub methods: Vec<MethodResult>,
}

impl Report {
    pub fn new(id: &str, params: String, order: usize, methods: Vec<MethodResult>) -> Self {
        let passed = methods.iter().all(|m| m.status != Status::Fail);
        Report {
            id: id.to_string(),
            params,
            order,
            passed,
            methods,
        }
    }

    /// `id[params]`, or just `id` without parameters.
    pub fn name(&self) -> String {
        if self.params.is_empty() {
            self.id.clone()
        } else {
            format!("{}[{}]", self.id, self.params)
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} N={} {}",
            self.name(),
            self.order,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for m in &self.methods {
            let status = match m.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "  {:?} {:<28} {status}", m.method, m.check)?;
            if m.status != Status::Skipped {
                write!(f, " n={}..{}", m.from, m.to)?;
            }
            if let Some(d) = &m.discrepancy {
                write!(
                    f,
                    " first difference at n={}: {} != {}",
                    d.index, d.lhs, d.rhs
                )?;
            }
            if let Some(note) = &m.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
