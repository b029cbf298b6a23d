//! Shared harness for the elimination-lemma differential tests: for every lemma and every
//! side-condition branch, randomized constructions are realized with exact
//! rational coordinates and the value of the target quantity is compared
//! before and after elimination. The two values must agree exactly; no
//! failures are tolerated.
//!
//! Each family fixes a construction template in which the side condition is
//! decided the intended way (points placed on the defining line by
//! construction for the on-line branches, generic points otherwise) and in
//! which ratio quantities are geometrically well-defined in every model.

use areamethod::algebra::{Atom, ExprTree, PointRef, RationalExpr, Scalar};
use areamethod::conjecture::Conjecture;
use areamethod::construction::{Construction, SideConditionProver, StepKind};
use areamethod::eliminate::{eliminate_point, Branch, LemmaId};
use areamethod::error::{Error, Result};
use areamethod::oracle::{eval_atom, eval_rexpr, realize, Rng};
use areamethod::prover::{ProveOptions, Prover};

pub const INSTANCES_PER_FAMILY: u32 = 200;

struct Internal(Prover);

impl SideConditionProver for Internal {
    fn provable(&self, c: &Construction, conj: &Conjecture) -> Result<bool> {
        Ok(!self.0.negation_unprovable(c, conj)?)
    }
}

fn internal() -> Internal {
    Internal(Prover::new(ProveOptions::default()))
}

/// Distinct nonzero rational constants for step parameters.
fn distinct_constants(rng: &mut Rng, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let q = rng.nonzero_rational();
        if out.iter().all(|x| *x != q) && !q.is_one() {
            out.push(q);
        }
    }
    out
}

fn con(q: Scalar) -> ExprTree {
    ExprTree::constant(q)
}

fn free(names: &[&str]) -> Construction {
    Construction::new().append_free(names).unwrap()
}

fn on_parallel(c: Construction, y: &str, w: &str, u: &str, v: &str, r: ExprTree) -> Construction {
    c.append_step(
        y,
        StepKind::OnParallel {
            w: w.into(),
            u: u.into(),
            v: v.into(),
            r,
        },
    )
    .unwrap()
}

fn on_perp(c: Construction, y: &str, u: &str, v: &str, r: ExprTree) -> Construction {
    c.append_step(
        y,
        StepKind::OnPerp {
            u: u.into(),
            v: v.into(),
            r,
        },
    )
    .unwrap()
}

fn intersect(c: Construction, y: &str, u: &str, v: &str, p: &str, q: &str) -> Construction {
    c.append_step(
        y,
        StepKind::Intersect {
            u: u.into(),
            v: v.into(),
            p: p.into(),
            q: q.into(),
        },
    )
    .unwrap()
}

fn foot(c: Construction, y: &str, p: &str, u: &str, v: &str) -> Construction {
    c.append_step(
        y,
        StepKind::Foot {
            p: p.into(),
            u: u.into(),
            v: v.into(),
        },
    )
    .unwrap()
}

fn pt(c: &Construction, n: &str) -> PointRef {
    c.point_ref(n).unwrap()
}

fn ratio_yy(c: &Construction) -> Atom {
    Atom::Ratio(pt(c, "A"), pt(c, "Y"), pt(c, "C"), pt(c, "Y"))
}

fn ratio_yd(c: &Construction) -> Atom {
    Atom::Ratio(pt(c, "A"), pt(c, "Y"), pt(c, "C"), pt(c, "D"))
}

fn area_aby(c: &Construction) -> Atom {
    Atom::Area(pt(c, "A"), pt(c, "B"), pt(c, "Y"))
}

fn pyth_aby(c: &Construction) -> Atom {
    Atom::Pyth(pt(c, "A"), pt(c, "B"), pt(c, "Y"))
}

fn pyth_ayb(c: &Construction) -> Atom {
    Atom::Pyth(pt(c, "A"), pt(c, "Y"), pt(c, "B"))
}

/// The expression that places Y on line AC for a parallel step through R
/// with direction PQ: r = S[R,A,C] / (S[P,A,C] - S[Q,A,C]).
fn parallel_onto_line_ac(c: &Construction) -> ExprTree {
    let (a, cc, r, p, q) = (pt(c, "A"), pt(c, "C"), pt(c, "R"), pt(c, "P"), pt(c, "Q"));
    ExprTree::div(
        ExprTree::atom(Atom::Area(r, a.clone(), cc.clone())),
        ExprTree::sub(
            ExprTree::atom(Atom::Area(p, a.clone(), cc.clone())),
            ExprTree::atom(Atom::Area(q, a, cc)),
        ),
    )
}

/// The expression that places Y on line AC for a perpendicular step at P
/// with direction PQ: r = 4 S[A,C,P] / (P[P,A,C] - P[Q,A,C]).
fn perp_onto_line_ac(c: &Construction) -> ExprTree {
    let (a, cc, p, q) = (pt(c, "A"), pt(c, "C"), pt(c, "P"), pt(c, "Q"));
    ExprTree::div(
        ExprTree::mul(
            ExprTree::int(4),
            ExprTree::atom(Atom::Area(a.clone(), cc.clone(), p.clone())),
        ),
        ExprTree::sub(
            ExprTree::atom(Atom::Pyth(p, a.clone(), cc.clone())),
            ExprTree::atom(Atom::Pyth(q, a, cc)),
        ),
    )
}

pub type Family = (
    &'static str,
    LemmaId,
    Option<Branch>,
    fn(&mut Rng) -> (Construction, Atom),
);

pub fn families() -> Vec<Family> {
    vec![
        // --- EL1: Y = intersection of UV and PQ ---
        ("el1_yy_on", LemmaId::EL1, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 2);
            let c = free(&["U", "V", "P", "Q"]);
            let c = on_parallel(c, "A", "U", "U", "V", con(t[0].clone()));
            let c = on_parallel(c, "C", "U", "U", "V", con(t[1].clone()));
            let c = intersect(c, "Y", "U", "V", "P", "Q");
            let atom = ratio_yy(&c);
            (c, atom)
        }),
        (
            "el1_yy_otherwise",
            LemmaId::EL1,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 2);
                let c = free(&["U", "V", "P", "Q"]);
                let c = on_parallel(c, "A", "P", "P", "Q", con(t[0].clone()));
                let c = on_parallel(c, "C", "P", "P", "Q", con(t[1].clone()));
                let c = intersect(c, "Y", "U", "V", "P", "Q");
                let atom = ratio_yy(&c);
                (c, atom)
            },
        ),
        ("el1_yd_on", LemmaId::EL1, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 3);
            let c = free(&["U", "V", "P", "Q", "W"]);
            let c = on_parallel(c, "A", "U", "U", "V", con(t[0].clone()));
            let c = on_parallel(c, "C", "W", "U", "V", con(t[1].clone()));
            let c = on_parallel(c, "D", "W", "U", "V", con(t[2].clone()));
            let c = intersect(c, "Y", "U", "V", "P", "Q");
            let atom = ratio_yd(&c);
            (c, atom)
        }),
        (
            "el1_yd_otherwise",
            LemmaId::EL1,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 3);
                let c = free(&["U", "V", "P", "Q", "W"]);
                let c = on_parallel(c, "A", "P", "P", "Q", con(t[0].clone()));
                let c = on_parallel(c, "C", "W", "P", "Q", con(t[1].clone()));
                let c = on_parallel(c, "D", "W", "P", "Q", con(t[2].clone()));
                let c = intersect(c, "Y", "U", "V", "P", "Q");
                let atom = ratio_yd(&c);
                (c, atom)
            },
        ),
        // --- EL2: Y = foot of the perpendicular from P to UV ---
        ("el2_yy_on", LemmaId::EL2, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 2);
            let c = free(&["U", "V", "P"]);
            let c = on_parallel(c, "A", "U", "U", "V", con(t[0].clone()));
            let c = on_parallel(c, "C", "U", "U", "V", con(t[1].clone()));
            let c = foot(c, "Y", "P", "U", "V");
            let atom = ratio_yy(&c);
            (c, atom)
        }),
        (
            "el2_yy_otherwise",
            LemmaId::EL2,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 2);
                let c = free(&["U", "V", "P"]);
                let c = on_parallel(c, "V2", "P", "U", "V", ExprTree::int(1));
                let c = on_perp(c, "A", "P", "V2", con(t[0].clone()));
                let c = on_perp(c, "C", "P", "V2", con(t[1].clone()));
                let c = foot(c, "Y", "P", "U", "V");
                let atom = ratio_yy(&c);
                (c, atom)
            },
        ),
        ("el2_yd_on", LemmaId::EL2, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 3);
            let c = free(&["U", "V", "P", "W"]);
            let c = on_parallel(c, "A", "U", "U", "V", con(t[0].clone()));
            let c = on_parallel(c, "C", "W", "U", "V", con(t[1].clone()));
            let c = on_parallel(c, "D", "W", "U", "V", con(t[2].clone()));
            let c = foot(c, "Y", "P", "U", "V");
            let atom = ratio_yd(&c);
            (c, atom)
        }),
        (
            "el2_yd_otherwise",
            LemmaId::EL2,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 3);
                let c = free(&["U", "V", "P", "W"]);
                let c = on_parallel(c, "V2", "P", "U", "V", ExprTree::int(1));
                let c = on_perp(c, "A", "P", "V2", con(t[0].clone()));
                let c = on_parallel(c, "W2", "W", "U", "V", ExprTree::int(1));
                let c = on_perp(c, "C", "W", "W2", con(t[1].clone()));
                let c = on_perp(c, "D", "W", "W2", con(t[2].clone()));
                let c = foot(c, "Y", "P", "U", "V");
                let atom = ratio_yd(&c);
                (c, atom)
            },
        ),
        // --- EL3: Y on the parallel to PQ through R ---
        ("el3_yy_on", LemmaId::EL3, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 3);
            let c = free(&["R", "P", "Q"]);
            let c = on_parallel(c, "A", "R", "P", "Q", con(t[0].clone()));
            let c = on_parallel(c, "C", "R", "P", "Q", con(t[1].clone()));
            let c = on_parallel(c, "Y", "R", "P", "Q", con(t[2].clone()));
            let atom = ratio_yy(&c);
            (c, atom)
        }),
        (
            "el3_yy_otherwise",
            LemmaId::EL3,
            Some(Branch::Otherwise),
            |_| {
                let c = free(&["A", "C", "R", "P", "Q"]);
                let r = parallel_onto_line_ac(&c);
                let c = on_parallel(c, "Y", "R", "P", "Q", r);
                let atom = ratio_yy(&c);
                (c, atom)
            },
        ),
        ("el3_yd_on", LemmaId::EL3, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 4);
            let c = free(&["R", "P", "Q", "W"]);
            let c = on_parallel(c, "A", "R", "P", "Q", con(t[0].clone()));
            let c = on_parallel(c, "C", "W", "P", "Q", con(t[1].clone()));
            let c = on_parallel(c, "D", "W", "P", "Q", con(t[2].clone()));
            let c = on_parallel(c, "Y", "R", "P", "Q", con(t[3].clone()));
            let atom = ratio_yd(&c);
            (c, atom)
        }),
        (
            "el3_yd_otherwise",
            LemmaId::EL3,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 1);
                let c = free(&["A", "C", "R", "P", "Q"]);
                let c = on_parallel(c, "D", "A", "A", "C", con(t[0].clone()));
                let r = parallel_onto_line_ac(&c);
                let c = on_parallel(c, "Y", "R", "P", "Q", r);
                let atom = ratio_yd(&c);
                (c, atom)
            },
        ),
        // --- EL4: Y on the perpendicular to UV at U ---
        ("el4_yy_on", LemmaId::EL4, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 3);
            let c = free(&["P", "Q"]);
            let c = on_perp(c, "A", "P", "Q", con(t[0].clone()));
            let c = on_perp(c, "C", "P", "Q", con(t[1].clone()));
            let c = on_perp(c, "Y", "P", "Q", con(t[2].clone()));
            let atom = ratio_yy(&c);
            (c, atom)
        }),
        (
            "el4_yy_otherwise",
            LemmaId::EL4,
            Some(Branch::Otherwise),
            |_| {
                let c = free(&["A", "C", "P", "Q"]);
                let r = perp_onto_line_ac(&c);
                let c = on_perp(c, "Y", "P", "Q", r);
                let atom = ratio_yy(&c);
                (c, atom)
            },
        ),
        ("el4_yd_on", LemmaId::EL4, Some(Branch::OnLine), |rng| {
            let t = distinct_constants(rng, 3);
            let c = free(&["P", "Q", "W"]);
            let c = on_perp(c, "A", "P", "Q", con(t[0].clone()));
            let c = on_parallel(c, "W2", "W", "P", "Q", ExprTree::int(1));
            let c = on_perp(c, "C", "W", "W2", con(t[1].clone()));
            let c = on_perp(c, "D", "W", "W2", con(t[2].clone()));
            let c = on_perp(c, "Y", "P", "Q", con(rng.nonzero_rational()));
            let atom = ratio_yd(&c);
            (c, atom)
        }),
        (
            "el4_yd_otherwise",
            LemmaId::EL4,
            Some(Branch::Otherwise),
            |rng| {
                let t = distinct_constants(rng, 1);
                let c = free(&["A", "C", "P", "Q"]);
                let c = on_parallel(c, "D", "A", "A", "C", con(t[0].clone()));
                let r = perp_onto_line_ac(&c);
                let c = on_perp(c, "Y", "P", "Q", r);
                let atom = ratio_yd(&c);
                (c, atom)
            },
        ),
        // --- linear quantities ---
        ("el5_area", LemmaId::EL5, None, |_| {
            let c = free(&["U", "V", "P", "Q", "A", "B"]);
            let c = intersect(c, "Y", "U", "V", "P", "Q");
            let atom = area_aby(&c);
            (c, atom)
        }),
        ("el5_pyth", LemmaId::EL5, None, |_| {
            let c = free(&["U", "V", "P", "Q", "A", "B"]);
            let c = intersect(c, "Y", "U", "V", "P", "Q");
            let atom = pyth_aby(&c);
            (c, atom)
        }),
        ("el6_area", LemmaId::EL6, None, |_| {
            let c = free(&["U", "V", "P", "A", "B"]);
            let c = foot(c, "Y", "P", "U", "V");
            let atom = area_aby(&c);
            (c, atom)
        }),
        ("el6_pyth", LemmaId::EL6, None, |_| {
            let c = free(&["U", "V", "P", "A", "B"]);
            let c = foot(c, "Y", "P", "U", "V");
            let atom = pyth_aby(&c);
            (c, atom)
        }),
        ("el7_area", LemmaId::EL7, None, |rng| {
            let c = free(&["W", "U", "V", "A", "B"]);
            let c = on_parallel(c, "Y", "W", "U", "V", con(rng.nonzero_rational()));
            let atom = area_aby(&c);
            (c, atom)
        }),
        ("el7_pyth", LemmaId::EL7, None, |rng| {
            let c = free(&["W", "U", "V", "A", "B"]);
            let c = on_parallel(c, "Y", "W", "U", "V", con(rng.nonzero_rational()));
            let atom = pyth_aby(&c);
            (c, atom)
        }),
        ("el8", LemmaId::EL8, None, |rng| {
            let c = free(&["P", "Q", "A", "B"]);
            let c = on_perp(c, "Y", "P", "Q", con(rng.nonzero_rational()));
            let atom = area_aby(&c);
            (c, atom)
        }),
        ("el9", LemmaId::EL9, None, |rng| {
            let c = free(&["P", "Q", "A", "B"]);
            let c = on_perp(c, "Y", "P", "Q", con(rng.nonzero_rational()));
            let atom = pyth_aby(&c);
            (c, atom)
        }),
        // --- quadratic Pythagorean differences ---
        ("el10", LemmaId::EL10, None, |_| {
            let c = free(&["U", "V", "P", "Q", "A", "B"]);
            let c = intersect(c, "Y", "U", "V", "P", "Q");
            let atom = pyth_ayb(&c);
            (c, atom)
        }),
        ("el11", LemmaId::EL11, None, |_| {
            let c = free(&["U", "V", "P", "A", "B"]);
            let c = foot(c, "Y", "P", "U", "V");
            let atom = pyth_ayb(&c);
            (c, atom)
        }),
        ("el12", LemmaId::EL12, None, |rng| {
            let c = free(&["W", "U", "V", "A", "B"]);
            let c = on_parallel(c, "Y", "W", "U", "V", con(rng.nonzero_rational()));
            let atom = pyth_ayb(&c);
            (c, atom)
        }),
        ("el13", LemmaId::EL13, None, |rng| {
            let c = free(&["P", "Q", "A", "B"]);
            let c = on_perp(c, "Y", "P", "Q", con(rng.nonzero_rational()));
            let atom = pyth_ayb(&c);
            (c, atom)
        }),
        // --- reciprocal shape: the point only in the denominator segment ---
        (
            "el1_reciprocal",
            LemmaId::EL1,
            Some(Branch::OnLine),
            |rng| {
                // A, C and Y all on UV: AC/UY flips into UY/AC for elimination
                let t = distinct_constants(rng, 2);
                let c = free(&["U", "V", "P", "Q"]);
                let c = on_parallel(c, "A", "U", "U", "V", con(t[0].clone()));
                let c = on_parallel(c, "C", "U", "U", "V", con(t[1].clone()));
                let c = intersect(c, "Y", "U", "V", "P", "Q");
                let atom = Atom::Ratio(pt(&c, "A"), pt(&c, "C"), pt(&c, "U"), pt(&c, "Y"));
                (c, atom)
            },
        ),
        (
            "el4_reciprocal",
            LemmaId::EL4,
            Some(Branch::OnLine),
            |rng| {
                // A, C and Y on the perpendicular at P: AC/PY flips likewise
                let t = distinct_constants(rng, 3);
                let c = free(&["P", "Q"]);
                let c = on_perp(c, "A", "P", "Q", con(t[0].clone()));
                let c = on_perp(c, "C", "P", "Q", con(t[1].clone()));
                let c = on_perp(c, "Y", "P", "Q", con(t[2].clone()));
                let atom = Atom::Ratio(pt(&c, "A"), pt(&c, "C"), pt(&c, "P"), pt(&c, "Y"));
                (c, atom)
            },
        ),
    ]
}

/// Run one family to `INSTANCES_PER_FAMILY` successfully evaluated random
/// instances with exact before/after agreement.
pub fn run_family(
    name: &str,
    lemma: LemmaId,
    branch: Option<Branch>,
    build: fn(&mut Rng) -> (Construction, Atom),
) {
    let side = internal();
    let mut rng = Rng::new(0x5eed ^ name.len() as u64);
    let mut done = 0u32;
    let mut attempts = 0u32;
    while done < INSTANCES_PER_FAMILY {
        attempts += 1;
        assert!(
            attempts < INSTANCES_PER_FAMILY * 20,
            "{}: too many degenerate draws",
            name
        );
        let (c, atom) = build(&mut rng);
        let y = c.point_ref("Y").unwrap();
        let before = RationalExpr::from_atom(atom.clone()).unwrap();
        let (after, apps) = eliminate_point(&before, &y, &c, &side)
            .unwrap_or_else(|e| panic!("{}: elimination failed: {}", name, e));
        assert_eq!(apps.len(), 1, "{}: expected one application", name);
        assert_eq!(apps[0].lemma, lemma, "{}: wrong lemma", name);
        assert_eq!(apps[0].branch, branch, "{}: wrong branch", name);
        assert!(
            !after.mentions_point(y.name()),
            "{}: eliminated point survives in {}",
            name,
            after
        );

        let model = match realize(&c, rng.next_u64(), None) {
            Ok(m) => m,
            Err(Error::DegenerateAfterRetries(_)) => continue,
            Err(e) => panic!("{}: realize failed: {}", name, e),
        };
        let lhs = match eval_atom(&atom, &model) {
            Ok(v) => v,
            // a collinear draw can still degenerate (zero denominator
            // segment); resample rather than weaken the comparison
            Err(Error::DegenerateDenominator(_)) => continue,
            Err(e) => panic!("{}: atom evaluation failed: {}", name, e),
        };
        let rhs = match eval_rexpr(&after, &model) {
            Ok(v) => v,
            Err(Error::DegenerateDenominator(_)) | Err(Error::NonParallelRatio(_)) => continue,
            Err(e) => panic!("{}: replacement evaluation failed: {}", name, e),
        };
        assert_eq!(lhs, rhs, "{}: value changed under elimination", name);
        done += 1;
    }
}
