//! Proof traces: the ordered record of everything the pipeline did.
//!
//! Traces carry machine-usable data (atoms and replacement expressions), so
//! replaying the recorded substitutions from the uniformized statement must
//! reproduce every intermediate expression bit for bit.

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, RationalExpr};
use crate::area_coords::{to_area_coordinates, Frame};
use crate::conjecture::Rel;
use crate::eliminate::{Branch, LemmaId};
use crate::error::Result;
use crate::oracle::NumericModel;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum TraceStep {
    /// Start of one clause of the conjecture.
    ClauseStart {
        index: usize,
        relation: Rel,
        statement: String,
        label: Option<String>,
    },
    /// Outcome of one non-degeneracy check.
    NdgCheck {
        point: String,
        description: String,
        negation: String,
        provable: bool,
    },
    /// The clause lowered to canonical form, as the difference lhs - rhs.
    Uniformized { expr: RationalExpr },
    /// One elimination-lemma application.
    Eliminate {
        lemma: LemmaId,
        point: String,
        branch: Option<Branch>,
        atom: Atom,
        replacement: RationalExpr,
    },
    /// The expression after one full elimination round.
    RoundComplete { point: String, expr: RationalExpr },
    /// The expression after expanding Pythagorean differences.
    PythagorasExpanded { expr: RationalExpr },
    /// The orthonormal frame installed for area coordinates.
    FrameInstalled { frame: Frame },
    /// The expression rewritten into area coordinates.
    AreaCoordinates { expr: RationalExpr },
    /// The final algebraic zero test of the clause.
    ZeroTest { zero: bool },
    /// A free-form note from the inequality engine.
    InequalityNote { text: String },
    /// A numeric counterexample attached to a disproof.
    CounterexampleFound { model: NumericModel },
}

#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<TraceStep>,
    pub used_area_coords: bool,
    /// Wall time is informational only; it is reported by the CLI but not
    /// part of the deterministic structured document.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl ProofTrace {
    /// Re-apply every recorded substitution from each clause's uniformized
    /// statement and check that all recorded intermediate expressions are
    /// reproduced exactly. Eliminations are grouped per round, exactly as
    /// the eliminator applies them.
    pub fn replay_consistent(&self) -> Result<bool> {
        let mut current: Option<RationalExpr> = None;
        let mut frame: Option<Frame> = None;
        let mut round: std::collections::BTreeMap<Atom, RationalExpr> =
            std::collections::BTreeMap::new();
        for step in &self.steps {
            match step {
                TraceStep::ClauseStart { .. } => {
                    current = None;
                    frame = None;
                    round.clear();
                }
                TraceStep::Uniformized { expr } => current = Some(expr.clone()),
                TraceStep::Eliminate {
                    atom, replacement, ..
                } => {
                    round.insert(atom.clone(), replacement.clone());
                }
                TraceStep::RoundComplete { expr, .. } => {
                    if let Some(e) = current.take() {
                        let next = e.substitute_round(&round)?;
                        if &next != expr {
                            return Ok(false);
                        }
                        current = Some(next);
                    }
                    round.clear();
                }
                TraceStep::PythagorasExpanded { expr } => {
                    if let Some(e) = &current {
                        let expanded = e.expand_pythagoras();
                        if &expanded != expr {
                            return Ok(false);
                        }
                        current = Some(expanded);
                    }
                }
                TraceStep::FrameInstalled { frame: f } => frame = Some(f.clone()),
                TraceStep::AreaCoordinates { expr } => {
                    if let (Some(e), Some(f)) = (&current, &frame) {
                        let rewritten = to_area_coordinates(e, f)?;
                        if &rewritten != expr {
                            return Ok(false);
                        }
                        current = Some(rewritten);
                    }
                }
                _ => {}
            }
        }
        Ok(true)
    }
}
