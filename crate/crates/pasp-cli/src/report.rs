//! Report types and their text/JSON rendering.
//!
//! The JSON schema is stable and contains nothing volatile (no timings,
//! no absolute paths beyond what the caller passed), so re-running a
//! command on the same input yields byte-identical machine output.

use std::time::Duration;

use pasp::{CertaintyScale, Valuation};
use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AtomWeight {
    pub atom: String,
    pub weight: String,
}

pub fn valuation_entries(valuation: &Valuation) -> Vec<AtomWeight> {
    valuation
        .iter()
        .map(|(atom, weight)| AtomWeight {
            atom: atom.to_string(),
            weight: weight.to_string(),
        })
        .collect()
}

pub fn grid_entries(grid: &CertaintyScale) -> Vec<String> {
    grid.iter().map(|w| w.to_string()).collect()
}

fn entries_line(entries: &[AtomWeight]) -> String {
    if entries.is_empty() {
        return "{}".to_string();
    }
    let items: Vec<String> = entries
        .iter()
        .map(|e| format!("{}={}", e.atom, e.weight))
        .collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub command: &'static str,
    pub method: &'static str,
    pub grid: Vec<String>,
    pub answer_sets: Vec<Vec<AtomWeight>>,
    pub count: usize,
    pub truncated: bool,
    pub notices: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method: {}\n", self.method));
        out.push_str(&format!("grid: {}\n", self.grid.join(", ")));
        for (i, set) in self.answer_sets.iter().enumerate() {
            out.push_str(&format!("answer set {}: {}\n", i + 1, entries_line(set)));
        }
        for notice in &self.notices {
            out.push_str(&format!("note: {notice}\n"));
        }
        let shown = self.answer_sets.len();
        let suffix = if self.truncated {
            format!(" ({shown} shown)")
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{} answer set{}{} in {:.1} ms\n",
            self.count,
            if self.count == 1 { "" } else { "s" },
            suffix,
            self.elapsed.as_secs_f64() * 1e3
        ));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub valuation: Vec<AtomWeight>,
    pub reduct: Vec<String>,
    pub fixpoint: Vec<AtomWeight>,
    pub is_answer_set: bool,
}

impl CheckReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("valuation: {}\n", entries_line(&self.valuation)));
        out.push_str("reduct:\n");
        for rule in &self.reduct {
            out.push_str(&format!("  {rule}\n"));
        }
        out.push_str(&format!("fixpoint: {}\n", entries_line(&self.fixpoint)));
        out.push_str(&format!(
            "answer set: {}\n",
            if self.is_answer_set { "yes" } else { "no" }
        ));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CompileReport {
    pub command: &'static str,
    pub scale: Vec<String>,
    pub rules: usize,
    pub scaled_atoms: usize,
    pub program: Vec<String>,
    pub map: Vec<String>,
    pub output_path: Option<String>,
    pub map_path: Option<String>,
}

impl CompileReport {
    pub fn render_text(&self) -> String {
        match &self.output_path {
            Some(path) => format!(
                "compiled {} rules over scale {{{}}} to {} (mapping: {})\n",
                self.rules,
                self.scale.join(", "),
                path,
                self.map_path.as_deref().unwrap_or("-")
            ),
            None => self
                .program
                .iter()
                .map(|line| format!("{line}\n"))
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MethodOutcome {
    /// `None` when the method was skipped (resource guard).
    pub answer_sets: Option<Vec<Vec<AtomWeight>>>,
    pub notice: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct MethodDiff {
    pub method: &'static str,
    /// Answer sets of `direct` this method misses.
    pub missing: Vec<Vec<AtomWeight>>,
    /// Answer sets this method has beyond `direct`.
    pub extra: Vec<Vec<AtomWeight>>,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub command: &'static str,
    pub grid: Vec<String>,
    pub direct: MethodOutcome,
    pub translate: MethodOutcome,
    pub semantic: MethodOutcome,
    pub baseline: MethodOutcome,
    /// direct == translate, and == semantic when semantic ran.
    pub methods_agree: bool,
    pub baseline_differs: bool,
    pub diff: Vec<MethodDiff>,
}

impl CompareReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("grid: {}\n", self.grid.join(", ")));
        for (name, outcome) in [
            ("direct", &self.direct),
            ("translate", &self.translate),
            ("semantic", &self.semantic),
            ("baseline", &self.baseline),
        ] {
            match &outcome.answer_sets {
                Some(sets) if sets.is_empty() => {
                    out.push_str(&format!("{name}: no answer sets\n"));
                }
                Some(sets) => {
                    let rendered: Vec<String> =
                        sets.iter().map(|s| entries_line(s)).collect();
                    out.push_str(&format!("{name}: {}\n", rendered.join("  ")));
                }
                None => {
                    let why = outcome.notice.as_deref().unwrap_or("skipped");
                    out.push_str(&format!("{name}: skipped ({why})\n"));
                }
            }
        }
        for diff in &self.diff {
            if !diff.missing.is_empty() || !diff.extra.is_empty() {
                out.push_str(&format!(
                    "diff {}: missing {} / extra {}\n",
                    diff.method,
                    diff.missing.iter().map(|s| entries_line(s)).collect::<Vec<_>>().join(", "),
                    diff.extra.iter().map(|s| entries_line(s)).collect::<Vec<_>>().join(", "),
                ));
            }
        }
        out.push_str(&format!(
            "methods agree: {}\n",
            if self.methods_agree { "yes" } else { "no" }
        ));
        out.push_str(&format!(
            "baseline differs: {}\n",
            if self.baseline_differs { "yes" } else { "no" }
        ));
        out
    }
}

pub fn to_json(report: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}
