//! Plain-text reports: a header echoing the command, one `[check]` block
//! per check followed by its `[witness]` blocks, optional `[table]` blocks
//! and a final `[summary]`. Every line is `key = value`.

use std::fmt::Write;

use conformal_core::algebra::{overall_status, CheckReport, Status};

pub const SCHEMA: &str = "conformal-kernel-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
            Outcome::Error => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub name: String,
    pub rows: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub manifest: String,
    /// Effective settings, echoed in the header.
    pub settings: Vec<(String, String)>,
    pub checks: Vec<CheckReport>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    /// Failures to run a pipeline at all (missing sections, bad values).
    pub errors: Vec<String>,
}

fn one_line(s: &str) -> String {
    s.replace('\n', " ")
}

impl Report {
    pub fn new(command: &str, manifest: &str) -> Self {
        Report { command: command.into(), manifest: manifest.into(), ..Default::default() }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.settings.push((key.into(), value.to_string()));
    }

    pub fn outcome(&self) -> Outcome {
        if !self.errors.is_empty() {
            return Outcome::Error;
        }
        match overall_status(&self.checks) {
            Status::Pass => Outcome::Pass,
            Status::Fail => Outcome::Fail,
            Status::Inconclusive => Outcome::Inconclusive,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schema = {}", SCHEMA);
        let _ = writeln!(s, "command = {}", self.command);
        let _ = writeln!(s, "manifest = {}", self.manifest);
        for (k, v) in &self.settings {
            let _ = writeln!(s, "{} = {}", k, v);
        }
        for n in &self.notes {
            let _ = writeln!(s, "note = {}", one_line(n));
        }
        for e in &self.errors {
            let _ = writeln!(s, "error = {}", one_line(e));
        }
        for c in &self.checks {
            let _ = writeln!(s, "\n[check]");
            let _ = writeln!(s, "name = {}", c.name);
            let _ = writeln!(s, "status = {}", c.status.as_str());
            let _ = writeln!(s, "checked = {}", c.checked);
            let _ = writeln!(s, "failed = {}", c.failures);
            let _ = writeln!(s, "inconclusive = {}", c.inconclusive);
            if let Some(n) = &c.note {
                let _ = writeln!(s, "note = {}", one_line(n));
            }
            for e in &c.errors {
                let _ = writeln!(s, "error = {}", one_line(&e.to_string()));
            }
            for w in &c.witnesses {
                let _ = writeln!(s, "\n[witness]");
                let _ = writeln!(s, "check = {}", c.name);
                if let Some(l) = &w.label {
                    let _ = writeln!(s, "label = {}", l);
                }
                let tuple: Vec<String> = w.tuple.iter().map(|g| g.to_string()).collect();
                let _ = writeln!(s, "tuple = {}", tuple.join(" "));
                let names: Vec<&str> = w.vars.iter().map(|v| v.as_str()).collect();
                let _ = writeln!(s, "residual = {}", w.residual.render(&names));
            }
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n[table]");
            let _ = writeln!(s, "name = {}", t.name);
            for r in &t.rows {
                let _ = writeln!(s, "entry = {}", r);
            }
        }
        let count = |st: Status| self.checks.iter().filter(|c| c.status == st).count();
        let _ = writeln!(s, "\n[summary]");
        let _ = writeln!(s, "checks = {}", self.checks.len());
        let _ = writeln!(s, "pass = {}", count(Status::Pass));
        let _ = writeln!(s, "fail = {}", count(Status::Fail));
        let _ = writeln!(s, "inconclusive = {}", count(Status::Inconclusive));
        let _ = writeln!(s, "errors = {}", self.errors.len());
        let _ = writeln!(s, "status = {}", self.outcome().as_str());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conformal_core::symcore::{GenIndex, LambdaPoly};

    #[test]
    fn layout_and_outcome() {
        let mut r = Report::new("check", "a.alg");
        r.setting("window", 2);
        let mut c = CheckReport::new("jacobi");
        let g = GenIndex::new("x", &[1]);
        c.record(&[g.clone()], Ok(LambdaPoly::generator(g, 1)), &["L".into()], Some("order 1".into()));
        r.checks.push(c);
        r.checks.push(CheckReport::new("skew-symmetry"));
        let text = r.render();
        assert!(text.starts_with("schema = conformal-kernel-report/1\ncommand = check\nmanifest = a.alg\nwindow = 2\n"));
        assert!(text.contains("[witness]\ncheck = jacobi\nlabel = order 1\ntuple = x[1]\nresidual = x[1]\n"));
        assert!(text.ends_with("[summary]\nchecks = 2\npass = 1\nfail = 1\ninconclusive = 0\nerrors = 0\nstatus = fail\n"));
        assert_eq!(r.outcome().exit_code(), 1);
        r.errors.push("boom".into());
        assert_eq!(r.outcome().exit_code(), 3);
    }
}
