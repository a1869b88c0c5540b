//! Report model shared by every subcommand, with JSON and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use partreg::analyzer::{DerivationStep, Verdict};
use partreg::pattern::{factored_display, Pattern};
use partreg::search::{BlockReport, SolutionTuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub derivation: Vec<Step>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shift: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub colourings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<Search>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub citation: String,
    pub detail: String,
}

impl From<&DerivationStep> for Step {
    fn from(s: &DerivationStep) -> Self {
        Step {
            rule: s.rule.id().to_string(),
            citation: s.rule.citation().to_string(),
            detail: s.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tuple {
    pub x: u64,
    pub y: u64,
    pub values: Vec<u64>,
}

impl From<&SolutionTuple> for Tuple {
    fn from(t: &SolutionTuple) -> Self {
        Tuple {
            x: t.x,
            y: t.y,
            values: t.values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub colouring: String,
    pub count_half: u64,
    pub count_full: u64,
    pub uncoverable: u64,
    pub passes: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub exceptional: Vec<Tuple>,
}

impl Check {
    pub fn new(r: &BlockReport, cap: usize) -> Self {
        Check {
            colouring: r.colouring.to_string(),
            count_half: r.count_half,
            count_full: r.count_full,
            uncoverable: r.uncoverable,
            passes: r.passes(),
            exceptional: r.exceptional.iter().take(cap).map(Tuple::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Search {
    Block {
        #[serde(rename = "N")]
        n: u64,
        auto: bool,
        checks: Vec<Check>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        certificate: Option<String>,
        note: String,
    },
    Witness {
        #[serde(rename = "N")]
        n: u64,
        r: u32,
        budget: u64,
        result: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        nodes: Option<u64>,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        table: Vec<u32>,
        note: String,
    },
    Solutions {
        #[serde(rename = "N")]
        n: u64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        colouring: Option<String>,
        mono: bool,
        count: u64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        uncoverable: Option<u64>,
        tuples: Vec<Tuple>,
    },
    Fs {
        colouring: String,
        len: usize,
        bound: u64,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        xs: Vec<u64>,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        sums: Vec<u64>,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        ratios: Vec<u64>,
    },
}

impl Report {
    pub fn for_pattern(pattern: &Pattern) -> Self {
        Report {
            pattern: Some(pattern.source().to_string()),
            normal_form: Some(pattern.to_string()),
            ..Report::default()
        }
    }

    pub fn with_verdict(mut self, v: &Verdict) -> Self {
        self.verdict = Some(v.status.as_str().to_string());
        self.derivation = v.derivation.iter().map(Step::from).collect();
        self.canonical = v.canonical.as_ref().map(factored_display);
        self.t = v.t.as_ref().map(ToString::to_string);
        self.case = v.case.map(|c| c.to_string());
        self.shift = v.shift.as_ref().map(ToString::to_string);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: &str| {
            let _ = writeln!(out, "{:<12} {value}", format!("{key}:"));
        };
        if let Some(p) = &self.pattern {
            line("pattern", p);
        }
        if let Some(n) = &self.normal_form {
            line("normal form", n);
        }
        if let Some(v) = &self.verdict {
            line("verdict", v);
        }
        if let Some(c) = &self.canonical {
            line("canonical", c);
        }
        if let Some(t) = &self.t {
            line("t", t);
        }
        if let Some(c) = &self.case {
            line("case", c);
        }
        if let Some(s) = &self.shift {
            line("shift", s);
        }
        if !self.derivation.is_empty() {
            out.push_str("derivation:\n");
            for (i, s) in self.derivation.iter().enumerate() {
                let _ = writeln!(out, "  {}. {} [{}]", i + 1, s.rule, s.citation);
                if !s.detail.is_empty() {
                    let _ = writeln!(out, "     {}", s.detail);
                }
            }
        }
        if !self.colourings.is_empty() {
            const SHOWN: usize = 8;
            let mut list = self.colourings[..self.colourings.len().min(SHOWN)].join(", ");
            if self.colourings.len() > SHOWN {
                let _ = write!(list, ", ... ({} more)", self.colourings.len() - SHOWN);
            }
            let _ = writeln!(out, "{:<12} {list}", "colourings:");
        }
        if let Some(s) = &self.search {
            search_text(&mut out, s);
        }
        out
    }
}

fn tuple_text(t: &Tuple) -> String {
    let values: Vec<_> = t.values.iter().map(ToString::to_string).collect();
    format!("({}, {}) -> {}", t.x, t.y, values.join(", "))
}

fn search_text(out: &mut String, s: &Search) {
    match s {
        Search::Block {
            n,
            auto,
            checks,
            certificate,
            note,
        } => {
            let mode = if *auto { "auto" } else { "given colouring" };
            let _ = writeln!(out, "blocking check at N = {n} ({mode}):");
            for c in checks {
                let status = if c.passes { "pass" } else { "fail" };
                let _ = writeln!(
                    out,
                    "  {:<32} counts ({}, {}) {status}",
                    c.colouring, c.count_half, c.count_full
                );
                if c.uncoverable > 0 {
                    let _ = writeln!(out, "    {} tuples leave the colouring's domain", c.uncoverable);
                }
                for t in &c.exceptional {
                    let _ = writeln!(out, "    {}", tuple_text(t));
                }
            }
            match certificate {
                Some(c) => {
                    let _ = writeln!(out, "certificate: {c}");
                }
                None => out.push_str("no colouring passes\n"),
            }
            let _ = writeln!(out, "note: {note}");
        }
        Search::Witness {
            n,
            r,
            result,
            nodes,
            table,
            note,
            ..
        } => {
            let _ = writeln!(out, "witness search, {r} colours on 1..={n}: {result}");
            if let Some(nodes) = nodes {
                let _ = writeln!(out, "  nodes explored: {nodes}");
            }
            if !table.is_empty() {
                let cells: Vec<_> = table.iter().map(ToString::to_string).collect();
                for chunk in cells.chunks(32) {
                    let _ = writeln!(out, "  {}", chunk.join(" "));
                }
            }
            let _ = writeln!(out, "note: {note}");
        }
        Search::Solutions {
            n,
            colouring,
            mono,
            count,
            uncoverable,
            tuples,
        } => {
            let what = if *mono { "monochromatic solutions" } else { "solutions" };
            let under = colouring.as_ref().map(|c| format!(" under {c}")).unwrap_or_default();
            let _ = writeln!(out, "{what}{under} with x, y <= {n}: {count}");
            if let Some(u) = uncoverable.filter(|&u| u > 0) {
                let _ = writeln!(out, "  {u} tuples leave the colouring's domain");
            }
            for t in tuples {
                let _ = writeln!(out, "  {}", tuple_text(t));
            }
        }
        Search::Fs {
            colouring,
            len,
            bound,
            xs,
            sums,
            ratios,
        } => {
            if xs.is_empty() {
                let _ = writeln!(out, "no sequence of length {len} up to {bound} under {colouring}");
            } else {
                let join = |v: &[u64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                let _ = writeln!(out, "sequence under {colouring}: ({})", join(xs));
                let _ = writeln!(out, "  finite sums: {}", join(sums));
                let _ = writeln!(out, "  ratios:      {}", join(ratios));
            }
        }
    }
}
