//! The intercept theorem, step by step: eliminating the intersection point
//! reproduces the known intermediate form, eliminating the parallel point
//! reduces the statement to a triviality, and fixing the parameter to 1
//! breaks the construction at its parallelism check.

use areamethod::algebra::{Atom, ExprTree, PointRef, Polynomial, RationalExpr};
use areamethod::conjecture::{Clause, Conjecture};
use areamethod::construction::{Construction, StepKind};
use areamethod::eliminate::eliminate_point;
use areamethod::error::Error;
use areamethod::prover::{oracle_confirms, ProveOptions, Prover};

fn intercept_with(r: ExprTree) -> Construction {
    let mut c = Construction::new();
    if r == ExprTree::param("r") {
        c.declare_param("r").unwrap();
    }
    c.append_free(&["A", "B", "C"])
        .unwrap()
        .append_step(
            "D",
            StepKind::OnParallel {
                w: "B".into(),
                u: "A".into(),
                v: "C".into(),
                r,
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

fn intercept() -> Construction {
    intercept_with(ExprTree::param("r"))
}

fn pt(c: &Construction, n: &str) -> PointRef {
    c.point_ref(n).unwrap()
}

/// The conjecture: SA/AB = SC/CD.
fn goal(c: &Construction) -> Conjecture {
    let (a, b, cc, d, s) = (pt(c, "A"), pt(c, "B"), pt(c, "C"), pt(c, "D"), pt(c, "S"));
    Conjecture::single(Clause::eq(
        ExprTree::atom(Atom::Ratio(s.clone(), a.clone(), a.clone(), b)),
        ExprTree::atom(Atom::Ratio(s, cc.clone(), cc, d)),
    ))
}

// reuse the prover's own internal side-condition semantics
struct IntoInternal<'a>(&'a Prover);

impl areamethod::construction::SideConditionProver for IntoInternal<'_> {
    fn provable(&self, c: &Construction, conj: &Conjecture) -> areamethod::error::Result<bool> {
        self.0.negation_unprovable(c, conj).map(|u| !u)
    }
}

#[test]
fn eliminating_s_reproduces_the_known_reduction() {
    let c = intercept();
    let conj = goal(&c);
    let clause = &conj.clauses[0];
    let prover = Prover::new(ProveOptions::default());
    let side = IntoInternal(&prover);
    let s = pt(&c, "S");

    let lhs = clause.lhs.lower().unwrap();
    let rhs = clause.rhs.lower().unwrap();
    let (lhs_red, _) = eliminate_point(&lhs, &s, &c, &side).unwrap();
    let (rhs_red, _) = eliminate_point(&rhs, &s, &c, &side).unwrap();

    let (a, b, cc, d) = (pt(&c, "A"), pt(&c, "B"), pt(&c, "C"), pt(&c, "D"));
    // SA/AB = S[A,C,D] / (S[A,B,C] - S[A,B,D])
    let expected_lhs = RationalExpr::new(
        Polynomial::area(a.clone(), cc.clone(), d.clone()),
        Polynomial::area(a.clone(), b.clone(), cc.clone()).sub(&Polynomial::area(
            a.clone(),
            b.clone(),
            d.clone(),
        )),
    )
    .unwrap();
    // SC/CD = S[A,B,C] / (S[A,C,D] - S[B,C,D])
    let expected_rhs = RationalExpr::new(
        Polynomial::area(a.clone(), b.clone(), cc.clone()),
        Polynomial::area(a, cc.clone(), d.clone()).sub(&Polynomial::area(b, cc, d)),
    )
    .unwrap();

    assert!(lhs_red.equals(&expected_lhs), "lhs reduced to {}", lhs_red);
    assert!(rhs_red.equals(&expected_rhs), "rhs reduced to {}", rhs_red);

    // eliminating D from the difference yields the zero polynomial
    let diff = lhs_red.sub(&rhs_red);
    let dpt = pt(&c, "D");
    let (final_diff, _) = eliminate_point(&diff, &dpt, &c, &side).unwrap();
    assert!(final_diff.is_zero(), "residual {}", final_diff);
}

#[test]
fn full_pipeline_proves_the_intercept_theorem() {
    let c = intercept();
    let conj = goal(&c);
    let prover = Prover::new(ProveOptions::default());
    let (verdict, trace) = prover.prove(&c, &conj).unwrap();
    assert!(verdict.is_proved(), "got {}", verdict);
    assert!(!trace.used_area_coords);
    assert!(trace.replay_consistent().unwrap());
    assert!(oracle_confirms(&c, &conj, 123, 100).unwrap());
}

#[test]
fn validation_performs_exactly_the_two_known_checks() {
    let c = intercept();
    let prover = Prover::new(ProveOptions::default());
    let reports = prover.validate_construction(&c).unwrap();
    let rendered: Vec<String> = reports.iter().map(|r| r.condition.to_string()).collect();
    assert_eq!(
        rendered,
        vec![
            "refute P[A,C,A] = 0".to_string(),
            "refute S[C,A,B] = S[D,A,B]".to_string(),
        ]
    );
    assert!(reports.iter().all(|r| r.consistent));
}

#[test]
fn fixing_the_parameter_to_one_breaks_the_parallelism_check() {
    let c = intercept_with(ExprTree::int(1));
    let prover = Prover::new(ProveOptions::default());
    let err = prover.validate_construction(&c).unwrap_err();
    match err {
        Error::ConstructionInconsistent { point, ndg } => {
            assert_eq!(point, "S");
            assert!(ndg.contains("S[C,A,B] = S[D,A,B]"), "ndg was {}", ndg);
        }
        other => panic!("expected ConstructionInconsistent, got {}", other),
    }
    // proving also refuses the construction
    let conj = goal(&c);
    assert!(matches!(
        prover.prove(&c, &conj),
        Err(Error::ConstructionInconsistent { .. })
    ));
}

#[test]
fn prefix_monotonicity_of_validation() {
    let c = intercept_with(ExprTree::int(1));
    let prover = Prover::new(ProveOptions::default());
    // the bad step is S (order 5): every prefix through order 4 validates
    for k in 1..=4 {
        let p = c.prefix(k).unwrap();
        assert!(prover.validate_construction(&p).is_ok(), "prefix {}", k);
    }
    assert!(prover.validate_construction(&c.prefix(5).unwrap()).is_err());
}

#[test]
fn degenerate_quantities_prove_their_own_vanishing() {
    // S[A,A,B] = 0 is provable, so any ndg demanding its failure is violated
    let c = Construction::new().append_free(&["A", "B"]).unwrap();
    let a = pt(&c, "A");
    let b = pt(&c, "B");
    let conj = Conjecture::single(Clause::eq(
        ExprTree::atom(Atom::Area(a.clone(), a, b)),
        ExprTree::int(0),
    ));
    let prover = Prover::new(ProveOptions::default());
    assert!(!prover.negation_unprovable(&c, &conj).unwrap());
}
