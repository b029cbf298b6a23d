//! The bundled theorem corpus and its runner.

use std::time::Instant;

use areamethod::prover::{ProveOptions, Prover, Verdict};

use crate::parser::{parse, SourceFile};
use crate::render::TraceDocument;

pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    /// Whether the proof is expected to need area coordinates.
    pub area_coords_expected: bool,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "ceva",
        source: include_str!("../corpus/ceva.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "desargues",
        source: include_str!("../corpus/desargues.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "euler_line",
        source: include_str!("../corpus/euler_line.geo"),
        area_coords_expected: true,
    },
    CorpusEntry {
        name: "gauss_newton",
        source: include_str!("../corpus/gauss_newton.geo"),
        area_coords_expected: true,
    },
    CorpusEntry {
        name: "heron",
        source: include_str!("../corpus/heron.geo"),
        area_coords_expected: true,
    },
    CorpusEntry {
        name: "intercept",
        source: include_str!("../corpus/intercept.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "midpoint",
        source: include_str!("../corpus/midpoint.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "menelaus",
        source: include_str!("../corpus/menelaus.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "pappus",
        source: include_str!("../corpus/pappus.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "pythagoras",
        source: include_str!("../corpus/pythagoras.geo"),
        area_coords_expected: false,
    },
    CorpusEntry {
        name: "triangle_inequality",
        source: include_str!("../corpus/triangle_inequality.geo"),
        area_coords_expected: true,
    },
];

pub struct CorpusResult {
    pub name: &'static str,
    pub verdict: Verdict,
    pub used_area_coords: bool,
    pub area_coords_expected: bool,
    pub wall_ms: u128,
    pub document: TraceDocument,
}

pub fn parse_entry(entry: &CorpusEntry) -> SourceFile {
    parse(entry.source).unwrap_or_else(|e| panic!("bundled theorem `{}`: {}", entry.name, e))
}

/// Run (a filtered subset of) the corpus sequentially with one prover
/// session per theorem.
pub fn run(filter: Option<&str>, opts: &ProveOptions) -> areamethod::Result<Vec<CorpusResult>> {
    let mut results = Vec::new();
    for entry in CORPUS {
        if let Some(f) = filter {
            if !entry.name.contains(f) {
                continue;
            }
        }
        let file = parse_entry(entry);
        let prover = Prover::new(opts.clone());
        let start = Instant::now();
        let (verdict, trace) = prover.prove(&file.construction, &file.goal)?;
        let wall_ms = start.elapsed().as_millis();
        results.push(CorpusResult {
            name: entry.name,
            used_area_coords: trace.used_area_coords,
            area_coords_expected: entry.area_coords_expected,
            wall_ms,
            document: TraceDocument::new(entry.name, &verdict, &trace),
            verdict,
        });
    }
    Ok(results)
}

/// The report table printed by `corpus run`.
pub fn report_table(results: &[CorpusResult]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<20} {:>12} {:>10}  {}\n",
        "theorem", "area coords", "time (ms)", "verdict"
    ));
    for r in results {
        let verdict = match &r.verdict {
            Verdict::Proved => "Proved".to_string(),
            Verdict::Disproved { .. } => "Disproved".to_string(),
            Verdict::NotReduced { .. } => "NotReduced".to_string(),
            Verdict::Unknown { .. } => "Unknown".to_string(),
        };
        out.push_str(&format!(
            "{:<20} {:>12} {:>10}  {}\n",
            r.name,
            if r.used_area_coords { "yes" } else { "no" },
            r.wall_ms,
            verdict
        ));
    }
    out
}
