//! Trace rendering: a human-readable text listing and a versioned,
//! machine-readable structured document.
//!
//! The structured format is deterministic: identical inputs, flags and seed
//! produce byte-identical documents. Wall time is therefore reported only in
//! the text rendering, never in the structured one.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use areamethod::prover::{ProofTrace, TraceStep, Verdict};

pub const TRACE_SCHEMA: &str = "area-method-trace/1";

/// The structured trace document.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema: String,
    pub theorem: String,
    pub verdict: Verdict,
    pub used_area_coords: bool,
    pub steps: Vec<TraceStep>,
}

impl TraceDocument {
    pub fn new(theorem: impl Into<String>, verdict: &Verdict, trace: &ProofTrace) -> Self {
        TraceDocument {
            schema: TRACE_SCHEMA.to_string(),
            theorem: theorem.into(),
            verdict: verdict.clone(),
            used_area_coords: trace.used_area_coords,
            steps: trace.steps.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Human-readable proof listing.
pub fn render_text(theorem: &str, verdict: &Verdict, trace: &ProofTrace) -> String {
    let mut out = String::new();
    writeln!(out, "theorem: {}", theorem).unwrap();
    writeln!(out, "verdict: {}", verdict).unwrap();
    writeln!(
        out,
        "area coordinates: {}",
        if trace.used_area_coords { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(out, "wall time: {} ms", trace.wall_ms).unwrap();

    let ndgs: Vec<&TraceStep> = trace
        .steps
        .iter()
        .filter(|s| matches!(s, TraceStep::NdgCheck { .. }))
        .collect();
    if !ndgs.is_empty() {
        writeln!(out, "non-degeneracy checks:").unwrap();
        for step in ndgs {
            if let TraceStep::NdgCheck {
                point,
                description,
                negation,
                provable,
            } = step
            {
                writeln!(
                    out,
                    "  [{}] {}: {} (refute {})",
                    if *provable { "violated" } else { "ok" },
                    point,
                    description,
                    negation
                )
                .unwrap();
            }
        }
    }

    for step in &trace.steps {
        match step {
            TraceStep::ClauseStart {
                index,
                statement,
                label,
                ..
            } => {
                write!(out, "clause {}: {}", index + 1, statement).unwrap();
                if let Some(l) = label {
                    write!(out, " ({})", l).unwrap();
                }
                writeln!(out).unwrap();
            }
            TraceStep::Uniformized { expr } => {
                writeln!(out, "  uniformized: {}", expr).unwrap();
            }
            TraceStep::Eliminate {
                lemma,
                point,
                branch,
                atom,
                replacement,
            } => {
                let branch_txt = match branch {
                    Some(b) => format!(" ({})", b),
                    None => String::new(),
                };
                writeln!(
                    out,
                    "  eliminate {} via {}{}: {} ⟶ {}",
                    point, lemma, branch_txt, atom, replacement
                )
                .unwrap();
            }
            TraceStep::RoundComplete { point, expr } => {
                writeln!(out, "  after eliminating {}: {}", point, expr).unwrap();
            }
            TraceStep::PythagorasExpanded { expr } => {
                writeln!(out, "  expand Pythagorean differences: {}", expr).unwrap();
            }
            TraceStep::FrameInstalled { frame } => {
                writeln!(
                    out,
                    "  install orthonormal frame O={}, X={}, Y={}",
                    frame.o, frame.x, frame.y
                )
                .unwrap();
            }
            TraceStep::AreaCoordinates { expr } => {
                writeln!(out, "  rewrite into area coordinates: {}", expr).unwrap();
            }
            TraceStep::ZeroTest { zero } => {
                writeln!(
                    out,
                    "  zero test: numerator {} the zero polynomial",
                    if *zero { "is" } else { "is not" }
                )
                .unwrap();
            }
            TraceStep::InequalityNote { text } => {
                writeln!(out, "  {}", text).unwrap();
            }
            TraceStep::CounterexampleFound { model } => {
                writeln!(out, "  counterexample: {}", model).unwrap();
            }
            TraceStep::NdgCheck { .. } => {}
        }
    }
    out
}
