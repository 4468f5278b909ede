//! Deterministic check reports.

use std::fmt;

use crate::functionals::AssumptionLog;

/// Report sections, in the fixed order they are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Section {
    Validate,
    Cocycle,
    Cotriangular,
    CoproductHom,
    PrimitivePairing,
    Associativity,
    LeadingTerm,
    LemmaFormula,
    OreTower,
    Presentation,
    LieClosure,
    Quotient,
    Weyl,
    Bracket,
    Smash,
    DoubleCoset,
    Invariance,
    Lie,
}

impl Section {
    pub fn header(self) -> &'static str {
        match self {
            Section::Validate => "VALIDATE",
            Section::Cocycle => "COCYCLE",
            Section::Cotriangular => "COTRIANGULAR",
            Section::CoproductHom => "COPRODUCT-HOM",
            Section::PrimitivePairing => "PRIMITIVE-PAIRING",
            Section::Associativity => "ASSOCIATIVITY",
            Section::LeadingTerm => "LEADING-TERM",
            Section::LemmaFormula => "LEMMA-FORMULA",
            Section::OreTower => "ORE-TOWER",
            Section::Presentation => "PRESENTATION",
            Section::LieClosure => "LIE-CLOSURE",
            Section::Quotient => "QUOTIENT",
            Section::Weyl => "WEYL",
            Section::Bracket => "BRACKET",
            Section::Smash => "SMASH",
            Section::DoubleCoset => "DOUBLE-COSET",
            Section::Invariance => "INVARIANCE",
            Section::Lie => "LIE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Failure,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Warn(usize),
    Fail(usize),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Warn(n) => write!(f, "WARN n={n}"),
            Status::Fail(n) => write!(f, "FAIL n={n}"),
        }
    }
}

/// Only this many findings of each severity are kept verbatim; the counts
/// stay exact.
pub const MAX_LISTED_FINDINGS: usize = 25;

/// Outcome of one check: facts (computed values worth printing), findings
/// (violations), and the table-twist assumptions the check relied on.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub section: Section,
    pub title: String,
    pub facts: Vec<String>,
    pub findings: Vec<Finding>,
    pub failures: usize,
    pub warnings: usize,
    pub assumed: AssumptionLog,
}

impl CheckReport {
    pub fn new(section: Section, title: impl Into<String>) -> Self {
        CheckReport {
            section,
            title: title.into(),
            facts: Vec::new(),
            findings: Vec::new(),
            failures: 0,
            warnings: 0,
            assumed: AssumptionLog::default(),
        }
    }

    pub fn fact(&mut self, line: impl Into<String>) {
        self.facts.push(line.into());
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.push(Severity::Failure, message.into());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.push(Severity::Warning, message.into());
    }

    fn push(&mut self, severity: Severity, message: String) {
        let count = match severity {
            Severity::Failure => &mut self.failures,
            Severity::Warning => &mut self.warnings,
        };
        *count += 1;
        if *count <= MAX_LISTED_FINDINGS {
            self.findings.push(Finding { severity, message });
        }
    }

    pub fn status(&self) -> Status {
        if self.failures > 0 {
            Status::Fail(self.failures)
        } else if self.warnings > 0 {
            Status::Warn(self.warnings)
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Folds another report's findings, facts and assumptions into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        let listed_f = other.listed(Severity::Failure);
        let listed_w = other.listed(Severity::Warning);
        self.facts.extend(other.facts);
        for f in other.findings {
            self.push(f.severity, f.message);
        }
        self.failures += other.failures - listed_f;
        self.warnings += other.warnings - listed_w;
        self.assumed.merge(&other.assumed);
    }

    fn listed(&self, severity: Severity) -> usize {
        self.findings.iter().filter(|f| f.severity == severity).count()
    }

    /// Text rendering: title line, facts, findings, summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.title));
        for fact in &self.facts {
            out.push_str(fact);
            out.push('\n');
        }
        for f in &self.findings {
            let tag = match f.severity {
                Severity::Failure => "failure",
                Severity::Warning => "warning",
            };
            out.push_str(&format!("{tag}: {}\n", f.message));
        }
        let hidden_f = self.failures - self.listed(Severity::Failure);
        let hidden_w = self.warnings - self.listed(Severity::Warning);
        if hidden_f + hidden_w > 0 {
            out.push_str(&format!(
                "({hidden_f} more failures, {hidden_w} more warnings not listed)\n"
            ));
        }
        out.push_str(&format!("{}\n", self.status()));
        out
    }
}
