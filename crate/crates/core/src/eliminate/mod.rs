//! Point elimination: remove the highest-order constructed point from an
//! expression by rewriting every quantity containing it through the
//! elimination lemma selected by the step kind and quantity shape.
//!
//! Side conditions and lemma-denominator checks recurse into the prover over
//! strict prefix constructions, so the recursion depth is bounded by the
//! construction length.

pub mod lemmas;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, ExprTree, PointRef, RationalExpr};
use crate::conjecture::{Clause, Conjecture};
use crate::construction::{Construction, SideConditionProver, StepKind};
use crate::error::{Error, Result};

pub use lemmas::{Branch, LemmaId};

/// The shape of a quantity containing the point to eliminate (always in its
/// kernel-canonical position: last slot of a pair, last or middle slot of a
/// ternary quantity, since the point has maximal order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuantityPattern {
    /// `ratio(a,y;c,y)` - the point in both distances.
    RatioYy { a: PointRef, c: PointRef },
    /// `ratio(a,y;c,d)` - the point in the first distance only.
    RatioYd {
        a: PointRef,
        c: PointRef,
        d: PointRef,
    },
    /// `ratio(a,b;c,y)` - the point in the denominator distance only;
    /// handled as the reciprocal of the `RatioYd` shape.
    RatioDy {
        a: PointRef,
        b: PointRef,
        c: PointRef,
    },
    /// `S[a,b,y]`.
    LinearS { a: PointRef, b: PointRef },
    /// `P[a,b,y]`.
    LinearP { a: PointRef, b: PointRef },
    /// `P[a,y,b]`.
    QuadraticP { a: PointRef, b: PointRef },
}

/// Classify a canonical atom containing `y`.
pub fn classify(atom: &Atom, y: &PointRef) -> Result<QuantityPattern> {
    let is_y = |p: &PointRef| p.name == y.name;
    match atom {
        Atom::Area(a, b, c) if is_y(c) => Ok(QuantityPattern::LinearS {
            a: a.clone(),
            b: b.clone(),
        }),
        Atom::Pyth(a, b, c) if is_y(c) => Ok(QuantityPattern::LinearP {
            a: a.clone(),
            b: b.clone(),
        }),
        Atom::Pyth(a, b, c) if is_y(b) => Ok(QuantityPattern::QuadraticP {
            a: a.clone(),
            b: c.clone(),
        }),
        Atom::Ratio(a, b, c, d) if is_y(b) && is_y(d) => Ok(QuantityPattern::RatioYy {
            a: a.clone(),
            c: c.clone(),
        }),
        Atom::Ratio(a, b, c, d) if is_y(b) => Ok(QuantityPattern::RatioYd {
            a: a.clone(),
            c: c.clone(),
            d: d.clone(),
        }),
        Atom::Ratio(a, b, c, d) if is_y(d) => Ok(QuantityPattern::RatioDy {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        }),
        _ => Err(Error::UnsupportedShape(format!("{} w.r.t. {}", atom, y))),
    }
}

/// One lemma application, for traces and replay.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LemmaApplication {
    pub lemma: LemmaId,
    pub point: String,
    pub branch: Option<Branch>,
    pub atom: Atom,
    pub replacement: RationalExpr,
}

/// The constructed point of maximal order occurring in `e`, if any.
pub fn find_target_point(e: &RationalExpr, c: &Construction) -> Option<PointRef> {
    let mut best: Option<PointRef> = None;
    for atom in e.atoms() {
        for p in atom.points() {
            if c.is_constructed(p.name()) {
                match &best {
                    Some(b) if b.order >= p.order => {}
                    _ => best = Some(p.clone()),
                }
            }
        }
    }
    best
}

/// Decide a side condition over the given prefix construction.
fn side_condition(
    prover: &dyn SideConditionProver,
    prefix: &Construction,
    lhs: ExprTree,
    rhs: ExprTree,
) -> Result<bool> {
    let conj = Conjecture::single(Clause::eq(lhs, rhs));
    prover.provable(prefix, &conj)
}

struct StepData<'a> {
    kind: &'a StepKind,
    prefix: Construction,
}

impl StepData<'_> {
    fn pr(&self, name: &str) -> Result<PointRef> {
        self.prefix.point_ref(name)
    }

    /// The step's scalar parameter lowered over the prefix construction.
    fn param(&self, r: &ExprTree) -> Result<RationalExpr> {
        r.lower()
    }

    /// Is `a` on the line that carries the constructed point together with
    /// its defining anchor? (line UV for ECS2/ECS3, the parallel through W
    /// for ECS4, the perpendicular at U for ECS5.)
    fn on_line(&self, prover: &dyn SideConditionProver, a: &PointRef) -> Result<bool> {
        match self.kind {
            StepKind::Intersect { u, v, .. } | StepKind::Foot { u, v, .. } => {
                let (u, v) = (self.pr(u)?, self.pr(v)?);
                side_condition(
                    prover,
                    &self.prefix,
                    ExprTree::atom(Atom::Area(a.clone(), u, v)),
                    ExprTree::int(0),
                )
            }
            StepKind::OnParallel { w, u, v, .. } => {
                let (w, u, v) = (self.pr(w)?, self.pr(u)?, self.pr(v)?);
                side_condition(
                    prover,
                    &self.prefix,
                    ExprTree::atom(Atom::Area(a.clone(), u.clone(), v.clone())),
                    ExprTree::atom(Atom::Area(w, u, v)),
                )
            }
            StepKind::OnPerp { u, v, .. } => {
                let (u, v) = (self.pr(u)?, self.pr(v)?);
                side_condition(
                    prover,
                    &self.prefix,
                    ExprTree::atom(Atom::Pyth(a.clone(), u, v)),
                    ExprTree::int(0),
                )
            }
            StepKind::Free => Err(Error::UnsupportedShape(
                "free points have no elimination lemma".to_string(),
            )),
        }
    }
}

/// Build the replacement for one atom containing `y`, returning the lemma
/// identifier and branch taken.
fn replacement_for(
    atom: &Atom,
    y: &PointRef,
    step: &StepData,
    prover: &dyn SideConditionProver,
) -> Result<(LemmaId, Option<Branch>, RationalExpr)> {
    use lemmas::*;
    let pattern = classify(atom, y)?;

    // reciprocal shape: flip the ratio, eliminate, invert
    if let QuantityPattern::RatioDy { a, b, c } = &pattern {
        let flipped = Atom::Ratio(c.clone(), y.clone(), a.clone(), b.clone());
        let (lemma, branch, rep) = replacement_for(&flipped, y, step, prover)?;
        if rep.is_zero() {
            return Err(Error::DegenerateDenominator(format!(
                "reciprocal of an identically zero ratio while eliminating {}",
                y
            )));
        }
        return Ok((lemma, branch, rep.recip()?));
    }

    let branchful = |on: bool| {
        Some(if on {
            Branch::OnLine
        } else {
            Branch::Otherwise
        })
    };
    match step.kind {
        StepKind::Intersect { u, v, p, q } => {
            let (u, v, p, q) = (step.pr(u)?, step.pr(v)?, step.pr(p)?, step.pr(q)?);
            match pattern {
                QuantityPattern::RatioYy { a, c } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL1,
                        branchful(on),
                        el1_ratio_yy(on, &a, &c, &u, &v, &p, &q)?,
                    ))
                }
                QuantityPattern::RatioYd { a, c, d } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL1,
                        branchful(on),
                        el1_ratio_yd(on, &a, &c, &d, &u, &v, &p, &q)?,
                    ))
                }
                QuantityPattern::LinearS { a, b } => Ok((
                    LemmaId::EL5,
                    None,
                    el5_linear(LinearKind::Area, &a, &b, &u, &v, &p, &q)?,
                )),
                QuantityPattern::LinearP { a, b } => Ok((
                    LemmaId::EL5,
                    None,
                    el5_linear(LinearKind::Pyth, &a, &b, &u, &v, &p, &q)?,
                )),
                QuantityPattern::QuadraticP { a, b } => {
                    Ok((LemmaId::EL10, None, el10_quadratic(&a, &b, &u, &v, &p, &q)?))
                }
                QuantityPattern::RatioDy { .. } => unreachable!("handled above"),
            }
        }
        StepKind::Foot { p, u, v } => {
            let (p, u, v) = (step.pr(p)?, step.pr(u)?, step.pr(v)?);
            match pattern {
                QuantityPattern::RatioYy { a, c } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL2,
                        branchful(on),
                        el2_ratio_yy(on, &a, &c, &p, &u, &v)?,
                    ))
                }
                QuantityPattern::RatioYd { a, c, d } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL2,
                        branchful(on),
                        el2_ratio_yd(on, &a, &c, &d, &p, &u, &v)?,
                    ))
                }
                QuantityPattern::LinearS { a, b } => Ok((
                    LemmaId::EL6,
                    None,
                    el6_linear(LinearKind::Area, &a, &b, &p, &u, &v)?,
                )),
                QuantityPattern::LinearP { a, b } => Ok((
                    LemmaId::EL6,
                    None,
                    el6_linear(LinearKind::Pyth, &a, &b, &p, &u, &v)?,
                )),
                QuantityPattern::QuadraticP { a, b } => {
                    Ok((LemmaId::EL11, None, el11_quadratic(&a, &b, &p, &u, &v)?))
                }
                QuantityPattern::RatioDy { .. } => unreachable!("handled above"),
            }
        }
        StepKind::OnParallel { w, u, v, r } => {
            let (w, u, v) = (step.pr(w)?, step.pr(u)?, step.pr(v)?);
            let r = step.param(r)?;
            match pattern {
                QuantityPattern::RatioYy { a, c } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL3,
                        branchful(on),
                        el3_ratio_yy(on, &a, &c, &w, &u, &v, &r)?,
                    ))
                }
                QuantityPattern::RatioYd { a, c, d } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL3,
                        branchful(on),
                        el3_ratio_yd(on, &a, &c, &d, &w, &u, &v, &r)?,
                    ))
                }
                QuantityPattern::LinearS { a, b } => Ok((
                    LemmaId::EL7,
                    None,
                    el7_linear(LinearKind::Area, &a, &b, &w, &u, &v, &r)?,
                )),
                QuantityPattern::LinearP { a, b } => Ok((
                    LemmaId::EL7,
                    None,
                    el7_linear(LinearKind::Pyth, &a, &b, &w, &u, &v, &r)?,
                )),
                QuantityPattern::QuadraticP { a, b } => {
                    Ok((LemmaId::EL12, None, el12_quadratic(&a, &b, &w, &u, &v, &r)?))
                }
                QuantityPattern::RatioDy { .. } => unreachable!("handled above"),
            }
        }
        StepKind::OnPerp { u, v, r } => {
            let (u, v) = (step.pr(u)?, step.pr(v)?);
            let r = step.param(r)?;
            match pattern {
                QuantityPattern::RatioYy { a, c } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL4,
                        branchful(on),
                        el4_ratio_yy(on, &a, &c, &u, &v, &r)?,
                    ))
                }
                QuantityPattern::RatioYd { a, c, d } => {
                    let on = step.on_line(prover, &a)?;
                    Ok((
                        LemmaId::EL4,
                        branchful(on),
                        el4_ratio_yd(on, &a, &c, &d, &u, &v, &r)?,
                    ))
                }
                QuantityPattern::LinearS { a, b } => {
                    Ok((LemmaId::EL8, None, el8_area(&a, &b, &u, &v, &r)?))
                }
                QuantityPattern::LinearP { a, b } => {
                    Ok((LemmaId::EL9, None, el9_pyth(&a, &b, &u, &v, &r)?))
                }
                QuantityPattern::QuadraticP { a, b } => {
                    Ok((LemmaId::EL13, None, el13_quadratic(&a, &b, &u, &v, &r)?))
                }
                QuantityPattern::RatioDy { .. } => unreachable!("handled above"),
            }
        }
        StepKind::Free => Err(Error::UnsupportedShape(format!("{} is a free point", y))),
    }
}

/// Eliminate every occurrence of the constructed point `y` from `e`.
///
/// Before a replacement is substituted its denominator is itself reduced
/// over the prefix construction and rejected if identically zero, mirroring
/// the division-by-zero discipline rather than silently producing 0/0.
pub fn eliminate_point(
    e: &RationalExpr,
    y: &PointRef,
    c: &Construction,
    prover: &dyn SideConditionProver,
) -> Result<(RationalExpr, Vec<LemmaApplication>)> {
    let step_info = c
        .step_of(y.name())
        .ok_or_else(|| Error::UnknownPoint(y.name().to_string()))?;
    if step_info.kind.is_free() {
        return Err(Error::UnsupportedShape(format!(
            "cannot eliminate the free point {}",
            y
        )));
    }
    let step = StepData {
        kind: &step_info.kind,
        prefix: c.prefix(step_info.order - 1)?,
    };

    let targets: BTreeSet<Atom> = e
        .atoms()
        .into_iter()
        .filter(|a| a.mentions(y.name()))
        .collect();

    // Numeric models of the prefix for the fast nonzero test below; one
    // nonzero evaluation is an exact proof that a denominator is not
    // identically zero, so the symbolic reduction runs only when every
    // sample vanishes.
    let witness_models: Vec<crate::oracle::NumericModel> = (0..3)
        .filter_map(|i| crate::oracle::realize(&step.prefix, 0x9d5f + i, None).ok())
        .collect();

    let mut replacements: std::collections::BTreeMap<Atom, RationalExpr> =
        std::collections::BTreeMap::new();
    let mut applications = Vec::new();
    for atom in targets {
        let (lemma, branch, rep) = replacement_for(&atom, y, &step, prover)?;
        debug_assert!(
            !rep.mentions_point(y.name()),
            "replacement must not contain the eliminated point"
        );
        // denominator sanity, mirroring the division-by-zero discipline: a
        // nonzero witness evaluation proves the denominator is not
        // identically zero; failing that, ask the prover whether its
        // vanishing is a theorem of the prefix construction
        let witnessed_nonzero = witness_models
            .iter()
            .any(|m| matches!(crate::oracle::eval_polynomial(rep.den(), m), Ok(v) if !v.is_zero()));
        if !witnessed_nonzero {
            let den_zero = Conjecture::single(Clause::eq(
                ExprTree::from_polynomial(rep.den()),
                ExprTree::int(0),
            ));
            if prover.provable(&step.prefix, &den_zero)? {
                return Err(Error::DegenerateDenominator(format!(
                    "denominator of {} for {} is identically zero",
                    lemma, atom
                )));
            }
        }
        applications.push(LemmaApplication {
            lemma,
            point: y.name().to_string(),
            branch,
            atom: atom.clone(),
            replacement: rep.clone(),
        });
        replacements.insert(atom, rep);
    }
    let current = e.substitute_round(&replacements)?;
    debug_assert!(!current.mentions_point(y.name()));
    Ok((current, applications))
}

/// The elimination loop: repeatedly remove the last constructed point until
/// only free points (or nothing) remain.
pub fn reduce(
    e: &RationalExpr,
    c: &Construction,
    prover: &dyn SideConditionProver,
) -> Result<(RationalExpr, Vec<LemmaApplication>)> {
    let mut current = e.clone();
    let mut all = Vec::new();
    while let Some(y) = find_target_point(&current, c) {
        let (next, apps) = eliminate_point(&current, &y, c, prover)?;
        // each round strictly lowers the maximal constructed order present
        debug_assert!(find_target_point(&next, c)
            .map(|p| p.order < y.order)
            .unwrap_or(true));
        current = next;
        all.extend(apps);
    }
    Ok((current, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    /// A stub that proves only statements which lower to literal zero
    /// equalities (degenerate quantities); enough for classify-level tests.
    struct SyntacticProver;

    impl SideConditionProver for SyntacticProver {
        fn provable(&self, _c: &Construction, conj: &Conjecture) -> Result<bool> {
            let clause = &conj.clauses[0];
            let diff = clause.lhs.lower()?.sub(&clause.rhs.lower()?);
            Ok(diff.is_zero())
        }
    }

    fn intercept() -> Construction {
        let mut c = Construction::new();
        c.declare_param("r").unwrap();
        c.append_free(&["A", "B", "C"])
            .unwrap()
            .append_step(
                "D",
                StepKind::OnParallel {
                    w: "B".into(),
                    u: "A".into(),
                    v: "C".into(),
                    r: ExprTree::param("r"),
                },
            )
            .unwrap()
            .append_step(
                "S",
                StepKind::Intersect {
                    u: "A".into(),
                    v: "B".into(),
                    p: "C".into(),
                    q: "D".into(),
                },
            )
            .unwrap()
    }

    #[test]
    fn target_point_is_the_latest_constructed() {
        let c = intercept();
        let s = c.point_ref("S").unwrap();
        let a = c.point_ref("A").unwrap();
        let b = c.point_ref("B").unwrap();
        let d = c.point_ref("D").unwrap();
        let e = RationalExpr::from_polynomial(
            Polynomial::area(a.clone(), b.clone(), s.clone()).add(&Polynomial::area(
                a.clone(),
                b.clone(),
                d.clone(),
            )),
        );
        assert_eq!(find_target_point(&e, &c).unwrap().name(), "S");
        let e2 = RationalExpr::from_polynomial(Polynomial::area(a.clone(), b.clone(), d));
        assert_eq!(find_target_point(&e2, &c).unwrap().name(), "D");
        let e3 = RationalExpr::from_polynomial(Polynomial::area(a, b, c.point_ref("C").unwrap()));
        assert!(find_target_point(&e3, &c).is_none());
    }

    #[test]
    fn classify_canonical_shapes() {
        let c = intercept();
        let a = c.point_ref("A").unwrap();
        let b = c.point_ref("B").unwrap();
        let s = c.point_ref("S").unwrap();
        assert!(matches!(
            classify(&Atom::Area(a.clone(), b.clone(), s.clone()), &s).unwrap(),
            QuantityPattern::LinearS { .. }
        ));
        assert!(matches!(
            classify(&Atom::Pyth(a.clone(), s.clone(), b.clone()), &s).unwrap(),
            QuantityPattern::QuadraticP { .. }
        ));
        assert!(matches!(
            classify(&Atom::Ratio(a.clone(), s.clone(), a.clone(), b.clone()), &s).unwrap(),
            QuantityPattern::RatioYd { .. }
        ));
        assert!(matches!(
            classify(&Atom::Ratio(a.clone(), b.clone(), a.clone(), s.clone()), &s).unwrap(),
            QuantityPattern::RatioDy { .. }
        ));
    }

    #[test]
    fn el7_drops_the_parallel_point() {
        // S[A,B,D] with D = ECS4(D,B,A,C,r) becomes r*S[A,B,C]
        let c = intercept();
        let a = c.point_ref("A").unwrap();
        let b = c.point_ref("B").unwrap();
        let d = c.point_ref("D").unwrap();
        let e = RationalExpr::from_polynomial(Polynomial::area(a.clone(), b.clone(), d.clone()));
        let (out, apps) = eliminate_point(&e, &d, &c, &SyntacticProver).unwrap();
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].lemma, LemmaId::EL7);
        let r = RationalExpr::from_polynomial(Polynomial::param("r"));
        let expected = r.mul(&RationalExpr::from_polynomial(Polynomial::area(
            a,
            b,
            c.point_ref("C").unwrap(),
        )));
        assert!(out.equals(&expected));
    }

    #[test]
    fn el7_sign_flip_case() {
        // S[A,C,D] with the same step becomes -S[A,B,C]
        let c = intercept();
        let a = c.point_ref("A").unwrap();
        let cc = c.point_ref("C").unwrap();
        let d = c.point_ref("D").unwrap();
        let e = RationalExpr::from_polynomial(Polynomial::area(a.clone(), cc.clone(), d.clone()));
        let (out, _) = eliminate_point(&e, &d, &c, &SyntacticProver).unwrap();
        let expected =
            RationalExpr::from_polynomial(Polynomial::area(a, c.point_ref("B").unwrap(), cc).neg());
        assert!(out.equals(&expected));
    }
}
