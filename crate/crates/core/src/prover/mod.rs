//! The end-to-end proving pipeline.
//!
//! For each clause of a conjecture: lower to canonical form, verify the
//! construction's non-degeneracy conditions, eliminate constructed points in
//! reverse order, test the cross-multiplied difference for zero, expand
//! Pythagorean differences and retest, and finally rewrite into independent
//! area coordinates where proving or disproving becomes decidable.
//! Inequalities go through the bounded square-root elimination engine.
//!
//! Side conditions and non-degeneracy negations are decided by recursive
//! prover calls over strict prefix constructions with ndg checks skipped, so
//! the recursion is bounded by the construction length.

pub mod ineq;
pub mod trace;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::RationalExpr;
use crate::area_coords::{coordinate_zero, install_frame, to_area_coordinates, Frame};
use crate::conjecture::{Clause, Conjecture, Rel};
use crate::construction::{validate, Construction, NdgReport, SideConditionProver};
use crate::eliminate::{eliminate_point, find_target_point, reduce};
use crate::error::{Error, Result};
use crate::oracle::{find_counterexample, realize, NumericModel};

pub use trace::{ProofTrace, TraceStep};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub enum AreaCoordsMode {
    /// Apply area coordinates only when the plain algebraic test fails.
    #[default]
    Auto,
    Never,
    Always,
}

#[derive(Clone, Debug)]
pub struct ProveOptions {
    pub area_coords: AreaCoordsMode,
    /// Samples for post-hoc soundness checks and counterexample search.
    pub oracle_samples: u32,
    pub seed: u64,
    /// Skip ndg validation (used by recursive internal calls).
    pub skip_ndg: bool,
    /// Soft wall-clock limit for one prove session.
    pub max_ms: Option<u64>,
    /// Search for a numeric witness when a statement is generically false.
    /// Internal recursive calls turn this off; they only need Proved-or-not.
    pub witness_search: bool,
    /// Depth of recursive sub-proofs (side conditions, ndg negations); the
    /// structure already bounds it by the construction length, this is a
    /// hard backstop.
    pub depth: u32,
    pub max_depth: u32,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            area_coords: AreaCoordsMode::Auto,
            oracle_samples: 100,
            seed: 42,
            skip_ndg: false,
            max_ms: None,
            witness_search: true,
            depth: 0,
            max_depth: 64,
        }
    }
}

/// Outcome of a proof attempt.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    Proved,
    Disproved { counterexample: NumericModel },
    NotReduced { residual: RationalExpr },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved => write!(f, "Proved"),
            Verdict::Disproved { counterexample } => {
                write!(f, "Disproved (counterexample: {})", counterexample)
            }
            Verdict::NotReduced { residual } => write!(f, "NotReduced (residual: {})", residual),
            Verdict::Unknown { reason } => write!(f, "Unknown ({})", reason),
        }
    }
}

pub struct Prover {
    pub opts: ProveOptions,
}

/// Reason prefix for statements shown generically false by the coordinate
/// reduction; the disequality path keys off it.
const GENERICALLY_FALSE: &str = "nonzero over independent area coordinates";

/// Internal prover used for side conditions and ndg negations: same options
/// but ndg checks skipped and witness search disabled.
struct InternalProver {
    opts: ProveOptions,
}

impl SideConditionProver for InternalProver {
    fn provable(&self, c: &Construction, conj: &Conjecture) -> Result<bool> {
        let prover = Prover {
            opts: self.opts.clone(),
        };
        let (verdict, _) = prover.prove(c, conj)?;
        Ok(verdict.is_proved())
    }
}

struct Ctx {
    trace: Vec<TraceStep>,
    used_coords: bool,
    deadline: Option<Instant>,
    frame: Option<(Construction, Frame)>,
}

impl Ctx {
    fn out_of_time(&self) -> bool {
        self.deadline.map(|d| Instant::now() >= d).unwrap_or(false)
    }
}

enum ClauseOutcome {
    Proved,
    Disproved(NumericModel),
    NotReduced(RationalExpr),
    Unknown(String),
}

impl Prover {
    pub fn new(opts: ProveOptions) -> Self {
        Prover { opts }
    }

    fn internal(&self) -> InternalProver {
        InternalProver {
            opts: ProveOptions {
                skip_ndg: true,
                witness_search: false,
                max_ms: None,
                depth: self.opts.depth + 1,
                ..self.opts.clone()
            },
        }
    }

    /// Validate the construction and prove the conjecture.
    pub fn prove(&self, c: &Construction, conj: &Conjecture) -> Result<(Verdict, ProofTrace)> {
        if self.opts.depth > self.opts.max_depth {
            return Err(Error::RecursionLimit);
        }
        let start = Instant::now();
        let mut ctx = Ctx {
            trace: Vec::new(),
            used_coords: false,
            deadline: self
                .opts
                .max_ms
                .map(|ms| start + std::time::Duration::from_millis(ms)),
            frame: None,
        };

        if !self.opts.skip_ndg {
            let reports = self.validate_construction(c)?;
            for r in &reports {
                ctx.trace.push(TraceStep::NdgCheck {
                    point: r.point.clone(),
                    description: r.condition.description.clone(),
                    negation: r.condition.negation.to_string(),
                    provable: !r.consistent,
                });
            }
        } else {
            c.check_structure()?;
        }

        let mut outcomes = Vec::new();
        for (idx, clause) in conj.clauses.iter().enumerate() {
            ctx.trace.push(TraceStep::ClauseStart {
                index: idx,
                relation: clause.rel,
                statement: clause.to_string(),
                label: clause.label.clone(),
            });
            let outcome = self.clause_verdict(&mut ctx, c, clause)?;
            outcomes.push(outcome);
        }

        let verdict = combine(outcomes);
        let trace = ProofTrace {
            steps: ctx.trace,
            used_area_coords: ctx.used_coords,
            wall_ms: start.elapsed().as_millis(),
        };
        Ok((verdict, trace))
    }

    /// Run the ndg checks of every step, failing on the first provable
    /// negation.
    pub fn validate_construction(&self, c: &Construction) -> Result<Vec<NdgReport>> {
        validate(c, &self.internal())
    }

    /// Whether the negation of an ndg (or any statement) fails to be
    /// provable: the condition for assuming the construction consistent.
    pub fn negation_unprovable(&self, c: &Construction, negation: &Conjecture) -> Result<bool> {
        Ok(!self.internal().provable(c, negation)?)
    }

    fn clause_verdict(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
    ) -> Result<ClauseOutcome> {
        match clause.rel {
            Rel::Eq => self.prove_equality(ctx, c, clause),
            Rel::Ne => self.prove_disequality(ctx, c, clause),
            Rel::Ge | Rel::Gt | Rel::Le | Rel::Lt => self.prove_inequality(ctx, c, clause),
        }
    }

    // --- equalities ---

    fn prove_equality(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
    ) -> Result<ClauseOutcome> {
        let diff = if clause.lhs.contains_sqrt() || clause.rhs.contains_sqrt() {
            // cancel radicals structurally; if any survive the statement is
            // out of scope for the algebraic pipeline
            let sum = ineq::RadicalSum::from_expr(&clause.lhs)?
                .sub(&ineq::RadicalSum::from_expr(&clause.rhs)?);
            let reduced = sum.map_exprs(&mut |e| {
                let (r, _) = reduce(e, c, &self.internal())?;
                Ok(r)
            })?;
            match reduced.as_rational() {
                Some(g) => g,
                None => {
                    return Ok(ClauseOutcome::Unknown(
                        "equality with unresolved square roots".to_string(),
                    ))
                }
            }
        } else {
            clause.lhs.lower()?.sub(&clause.rhs.lower()?)
        };
        ctx.trace
            .push(TraceStep::Uniformized { expr: diff.clone() });
        self.decide_zero(ctx, c, clause, diff)
    }

    /// The elimination loop plus the layered zero tests.
    fn decide_zero(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
        mut diff: RationalExpr,
    ) -> Result<ClauseOutcome> {
        let internal = self.internal();
        while let Some(y) = find_target_point(&diff, c) {
            if ctx.out_of_time() {
                return Ok(ClauseOutcome::Unknown("time limit exceeded".to_string()));
            }
            let (next, apps) = match eliminate_point(&diff, &y, c, &internal) {
                Ok(v) => v,
                Err(Error::UnsupportedShape(_)) => {
                    return Ok(ClauseOutcome::NotReduced(diff));
                }
                Err(e) => return Err(e),
            };
            for app in apps {
                ctx.trace.push(TraceStep::Eliminate {
                    lemma: app.lemma,
                    point: app.point,
                    branch: app.branch,
                    atom: app.atom,
                    replacement: app.replacement,
                });
            }
            ctx.trace.push(TraceStep::RoundComplete {
                point: y.name().to_string(),
                expr: next.clone(),
            });
            diff = next;
        }

        let force_coords = self.opts.area_coords == AreaCoordsMode::Always;
        if diff.is_zero() && !force_coords {
            ctx.trace.push(TraceStep::ZeroTest { zero: true });
            return Ok(ClauseOutcome::Proved);
        }

        let expanded = diff.expand_pythagoras();
        if expanded != diff {
            ctx.trace.push(TraceStep::PythagorasExpanded {
                expr: expanded.clone(),
            });
        }
        if expanded.is_zero() && !force_coords {
            ctx.trace.push(TraceStep::ZeroTest { zero: true });
            return Ok(ClauseOutcome::Proved);
        }

        if self.opts.area_coords == AreaCoordsMode::Never {
            ctx.trace.push(TraceStep::ZeroTest { zero: false });
            return Ok(ClauseOutcome::Unknown(
                "not algebraically verifiable without area coordinates".to_string(),
            ));
        }

        // area coordinates
        let (framed, frame) = match self.frame_for(ctx, c) {
            Ok(v) => v,
            Err(Error::TooFewFreePoints) => {
                ctx.trace.push(TraceStep::ZeroTest { zero: false });
                return Ok(ClauseOutcome::Unknown(
                    "too few free points for area coordinates".to_string(),
                ));
            }
            Err(e) => return Err(e),
        };
        let _ = framed;
        let coords = match to_area_coordinates(&expanded, &frame) {
            Ok(e) => e,
            Err(Error::UnsupportedAtom(_)) => {
                ctx.trace.push(TraceStep::ZeroTest { zero: false });
                return Ok(ClauseOutcome::NotReduced(expanded));
            }
            Err(Error::ResidualOddPower) => {
                // the reduced statement depends on the frame orientation, so
                // it cannot be proved without guessing a sign; a concrete
                // counterexample is still decisive
                ctx.trace.push(TraceStep::ZeroTest { zero: false });
                let refuted = self.refute(
                    ctx,
                    c,
                    clause,
                    "orientation-dependent statement (odd power of the frame area)",
                )?;
                return Ok(match refuted {
                    ClauseOutcome::Disproved(m) => ClauseOutcome::Disproved(m),
                    _ => ClauseOutcome::Unknown(
                        "orientation-dependent statement (odd power of the frame area)".to_string(),
                    ),
                });
            }
            Err(e) => return Err(e),
        };
        ctx.used_coords = true;
        ctx.trace.push(TraceStep::AreaCoordinates {
            expr: coords.clone(),
        });

        if coordinate_zero(&coords, &frame) {
            ctx.trace.push(TraceStep::ZeroTest { zero: true });
            return Ok(ClauseOutcome::Proved);
        }
        ctx.trace.push(TraceStep::ZeroTest { zero: false });

        // nonzero over independent coordinates: generically false
        self.refute(ctx, c, clause, GENERICALLY_FALSE)
    }

    /// Find a numeric witness for a generically false clause.
    fn refute(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
        why: &str,
    ) -> Result<ClauseOutcome> {
        if !self.opts.witness_search {
            return Ok(ClauseOutcome::Unknown(format!(
                "{} (witness search disabled)",
                why
            )));
        }
        let conj = Conjecture::single(clause.clone());
        let attempts = self.opts.oracle_samples.max(64);
        match find_counterexample(c, &conj, self.opts.seed, attempts)? {
            Some(model) => {
                ctx.trace.push(TraceStep::CounterexampleFound {
                    model: model.clone(),
                });
                Ok(ClauseOutcome::Disproved(model))
            }
            None => Ok(ClauseOutcome::Unknown(format!(
                "{}, but no numeric counterexample was found",
                why
            ))),
        }
    }

    // --- disequalities ---

    /// `lhs != rhs` holds generically iff the equality is generically false.
    fn prove_disequality(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
    ) -> Result<ClauseOutcome> {
        let eq_clause = Clause {
            rel: Rel::Eq,
            ..clause.clone()
        };
        match self.prove_equality(ctx, c, &eq_clause)? {
            ClauseOutcome::Proved => {
                // the equality always holds, so the disequality fails
                // everywhere: any valid realization is a counterexample
                if !self.opts.witness_search {
                    return Ok(ClauseOutcome::Unknown(
                        "disequality is identically false (witness search disabled)".to_string(),
                    ));
                }
                let model = realize(c, self.opts.seed, None)?;
                ctx.trace.push(TraceStep::CounterexampleFound {
                    model: model.clone(),
                });
                Ok(ClauseOutcome::Disproved(model))
            }
            ClauseOutcome::Disproved(_) => Ok(ClauseOutcome::Proved),
            ClauseOutcome::Unknown(r) => {
                // internal calls skip witness search; a generically false
                // equality still proves the disequality
                if r.starts_with(GENERICALLY_FALSE) {
                    Ok(ClauseOutcome::Proved)
                } else {
                    Ok(ClauseOutcome::Unknown(r))
                }
            }
            other => Ok(other),
        }
    }

    // --- inequalities ---

    fn prove_inequality(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        clause: &Clause,
    ) -> Result<ClauseOutcome> {
        use crate::algebra::ExprTree;
        // normalize to F >= 0 / F > 0
        let (f, strict) = match clause.rel {
            Rel::Ge => (ExprTree::sub(clause.lhs.clone(), clause.rhs.clone()), false),
            Rel::Gt => (ExprTree::sub(clause.lhs.clone(), clause.rhs.clone()), true),
            Rel::Le => (ExprTree::sub(clause.rhs.clone(), clause.lhs.clone()), false),
            Rel::Lt => (ExprTree::sub(clause.rhs.clone(), clause.lhs.clone()), true),
            _ => unreachable!("inequality relations only"),
        };
        let internal = self.internal();
        let sum = ineq::RadicalSum::from_expr(&f)?;
        let sum = sum.map_exprs(&mut |e| {
            let (r, _) = reduce(e, c, &internal)?;
            Ok(r)
        })?;

        // reject square roots of provably negative radicands
        for (key, _) in sum.terms() {
            for radicand in key {
                if self.rexpr_nonneg(ctx, c, &radicand.neg(), true)? {
                    return Err(Error::SqrtOfNegative(radicand.to_string()));
                }
            }
        }

        let mut notes = Vec::new();
        let proved = {
            let mut nonneg =
                |g: &RationalExpr, strict: bool| self.rexpr_nonneg_cells(ctx, c, g, strict);
            ineq::prove_nonneg(&sum, strict, 2, &mut nonneg, &mut notes)?
        };
        for n in notes {
            ctx.trace.push(TraceStep::InequalityNote { text: n });
        }
        if proved {
            ctx.trace.push(TraceStep::InequalityNote {
                text: "nonnegativity certified".to_string(),
            });
            return Ok(ClauseOutcome::Proved);
        }
        self.refute(ctx, c, clause, "inequality not provable by the engine")
    }

    /// `g >= 0` (or `> 0`) for a square-root-free rational expression:
    /// certify `num*den` syntactically, after Pythagorean expansion, and
    /// finally over area coordinates.
    fn rexpr_nonneg(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        g: &RationalExpr,
        strict: bool,
    ) -> Result<bool> {
        let prod = g.num().mul(g.den());
        if prod.is_zero() {
            return Ok(!strict);
        }
        if ineq::sos_certificate(&prod) {
            return Ok(true);
        }
        let expanded = RationalExpr::from_polynomial(prod).expand_pythagoras();
        let prod = expanded.num().clone();
        if ineq::sos_certificate(&prod) {
            return Ok(true);
        }
        if self.opts.area_coords == AreaCoordsMode::Never {
            return Ok(false);
        }
        let frame = match self.frame_for(ctx, c) {
            Ok((_, f)) => f,
            Err(Error::TooFewFreePoints) => return Ok(false),
            Err(e) => return Err(e),
        };
        let coords = match to_area_coordinates(&RationalExpr::from_polynomial(prod), &frame) {
            Ok(e) => e,
            Err(Error::UnsupportedAtom(_)) | Err(Error::ResidualOddPower) => return Ok(false),
            Err(e) => return Err(e),
        };
        let final_prod = coords.num().mul(coords.den());
        if ineq::sos_certificate(&final_prod) {
            ctx.used_coords = true;
            return Ok(true);
        }
        Ok(false)
    }

    // Thin wrapper so the closure passed to the inequality engine can
    // borrow ctx mutably while self stays shared.
    fn rexpr_nonneg_cells(
        &self,
        ctx: &mut Ctx,
        c: &Construction,
        g: &RationalExpr,
        strict: bool,
    ) -> Result<bool> {
        self.rexpr_nonneg(ctx, c, g, strict)
    }

    fn frame_for(&self, ctx: &mut Ctx, c: &Construction) -> Result<(Construction, Frame)> {
        if let Some((fc, f)) = &ctx.frame {
            return Ok((fc.clone(), f.clone()));
        }
        let (framed, frame) = install_frame(c)?;
        ctx.trace.push(TraceStep::FrameInstalled {
            frame: frame.clone(),
        });
        ctx.frame = Some((framed.clone(), frame.clone()));
        Ok((framed, frame))
    }
}

fn combine(outcomes: Vec<ClauseOutcome>) -> Verdict {
    let mut not_reduced: Option<RationalExpr> = None;
    let mut unknown: Option<String> = None;
    for o in outcomes {
        match o {
            ClauseOutcome::Proved => {}
            ClauseOutcome::Disproved(m) => {
                return Verdict::Disproved { counterexample: m };
            }
            ClauseOutcome::NotReduced(r) => {
                not_reduced.get_or_insert(r);
            }
            ClauseOutcome::Unknown(r) => {
                unknown.get_or_insert(r);
            }
        }
    }
    if let Some(residual) = not_reduced {
        Verdict::NotReduced { residual }
    } else if let Some(reason) = unknown {
        Verdict::Unknown { reason }
    } else {
        Verdict::Proved
    }
}

/// Confirm a proved conjecture on `samples` independent random realizations.
pub fn oracle_confirms(
    c: &Construction,
    conj: &Conjecture,
    seed: u64,
    samples: u32,
) -> Result<bool> {
    let mut done = 0u32;
    let mut offset = 0u64;
    while done < samples {
        if offset > samples as u64 * 20 {
            return Err(Error::DegenerateAfterRetries(offset as u32));
        }
        let model = match realize(c, seed.wrapping_add(offset), None) {
            Ok(m) => m,
            Err(Error::DegenerateAfterRetries(_)) => {
                offset += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        offset += 1;
        match crate::oracle::check(conj, &model) {
            Ok(true) => done += 1,
            Ok(false) => return Ok(false),
            // a statement quantity degenerated in this sample (e.g. a ratio
            // segment collapsed); generic truth ignores measure-zero draws
            Err(Error::DegenerateDenominator(_)) | Err(Error::NonParallelRatio(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}
