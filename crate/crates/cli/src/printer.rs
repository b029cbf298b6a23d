//! Printer for parsed source files; `parse(print(f))` reproduces `f`.

use std::fmt::Write;

use areamethod::algebra::ExprTree;
use areamethod::conjecture::ConjectureOrigin;
use areamethod::construction::StepKind;

use crate::parser::SourceFile;

pub fn print_source(file: &SourceFile) -> String {
    let mut out = String::new();
    for p in file.construction.params() {
        writeln!(out, "param {}", p).unwrap();
    }
    let mut free_run: Vec<&str> = Vec::new();
    let flush = |out: &mut String, run: &mut Vec<&str>| {
        if !run.is_empty() {
            writeln!(out, "points {}", run.join(" ")).unwrap();
            run.clear();
        }
    };
    for step in file.construction.steps() {
        match &step.kind {
            StepKind::Free => free_run.push(&step.point),
            other => {
                flush(&mut out, &mut free_run);
                writeln!(out, "{} := {}", step.point, kind_to_source(other)).unwrap();
            }
        }
    }
    flush(&mut out, &mut free_run);

    match &file.goal.origin {
        ConjectureOrigin::Predicate { name, groups } => {
            let body = groups
                .iter()
                .map(|g| g.join(", "))
                .collect::<Vec<_>>()
                .join("; ");
            writeln!(out, "prove {}({})", name, body).unwrap();
        }
        ConjectureOrigin::RawEquation => {
            let clause = &file.goal.clauses[0];
            writeln!(
                out,
                "prove {} {} {}",
                expr_to_source(&clause.lhs),
                clause.rel.as_str(),
                expr_to_source(&clause.rhs)
            )
            .unwrap();
        }
    }
    out
}

fn kind_to_source(kind: &StepKind) -> String {
    match kind {
        StepKind::Free => unreachable!("free points print as a `points` line"),
        StepKind::Intersect { u, v, p, q } => format!("intersect({}, {}; {}, {})", u, v, p, q),
        StepKind::Foot { p, u, v } => format!("foot({}; {}, {})", p, u, v),
        StepKind::OnParallel { w, u, v, r } => {
            format!("on_parallel({}; {}, {}; {})", w, u, v, expr_to_source(r))
        }
        StepKind::OnPerp { u, v, r } => format!("on_perp({}, {}; {})", u, v, expr_to_source(r)),
    }
}

/// Expressions print in the surface grammar; the kernel's `Display` for
/// trees already is that grammar.
pub fn expr_to_source(e: &ExprTree) -> String {
    e.to_string()
}
