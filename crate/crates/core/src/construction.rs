//! Geometric constructions: ordered sequences of elementary construction
//! steps, their non-degeneracy conditions, and consistency validation.
//!
//! A construction introduces one point per step; every point a step uses must
//! already be present, so dependencies strictly decrease in order. Validation
//! submits the negation of each step's non-degeneracy condition to a prover:
//! the construction is consistent exactly when none of those negations is
//! provable.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, ExprTree, PointRef};
use crate::conjecture::{Clause, Conjecture, Rel};
use crate::error::{Error, Result};

/// The defining data of one construction step.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum StepKind {
    /// An unconstrained point.
    Free,
    /// Intersection of line(u,v) and line(p,q).
    Intersect {
        u: String,
        v: String,
        p: String,
        q: String,
    },
    /// Foot of the perpendicular from p onto line(u,v).
    Foot { p: String, u: String, v: String },
    /// The point y on the parallel to line(u,v) through w with wy/uv = r.
    OnParallel {
        w: String,
        u: String,
        v: String,
        r: ExprTree,
    },
    /// The point y on the perpendicular to line(u,v) at u with `4*S[u,v,y] = r*P[u,v,u]`.
    OnPerp { u: String, v: String, r: ExprTree },
}

impl StepKind {
    pub fn ecs_number(&self) -> u8 {
        match self {
            StepKind::Free => 1,
            StepKind::Intersect { .. } => 2,
            StepKind::Foot { .. } => 3,
            StepKind::OnParallel { .. } => 4,
            StepKind::OnPerp { .. } => 5,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, StepKind::Free)
    }

    pub fn dependencies(&self) -> Vec<&str> {
        match self {
            StepKind::Free => vec![],
            StepKind::Intersect { u, v, p, q } => vec![u, v, p, q],
            StepKind::Foot { p, u, v } => vec![p, u, v],
            StepKind::OnParallel { w, u, v, .. } => vec![w, u, v],
            StepKind::OnPerp { u, v, .. } => vec![u, v],
        }
    }

    fn parameter_expr(&self) -> Option<&ExprTree> {
        match self {
            StepKind::OnParallel { r, .. } => Some(r),
            StepKind::OnPerp { r, .. } => Some(r),
            _ => None,
        }
    }
}

/// One construction step: the point it introduces, its order, and its kind.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Step {
    pub point: String,
    pub order: u32,
    pub kind: StepKind,
}

impl Step {
    pub fn point_ref(&self) -> PointRef {
        PointRef::new(&self.point, self.order)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StepKind::Free => write!(f, "ECS1({})", self.point),
            StepKind::Intersect { u, v, p, q } => {
                write!(f, "ECS2({},{},{},{},{})", self.point, u, v, p, q)
            }
            StepKind::Foot { p, u, v } => write!(f, "ECS3({},{},{},{})", self.point, p, u, v),
            StepKind::OnParallel { w, u, v, r } => {
                write!(f, "ECS4({},{},{},{},{})", self.point, w, u, v, r)
            }
            StepKind::OnPerp { u, v, r } => write!(f, "ECS5({},{},{},{})", self.point, u, v, r),
        }
    }
}

/// An ordered geometric construction plus its declared parameters.
#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct Construction {
    steps: Vec<Step>,
    #[serde(skip)]
    index: BTreeMap<String, usize>,
    params: Vec<String>,
}

impl Construction {
    pub fn new() -> Self {
        Construction::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> u32 {
        self.steps.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn declare_param(&mut self, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicatePoint(name));
        }
        if self.params.contains(&name) {
            return Err(Error::InvalidConstruction(format!(
                "parameter `{}` declared twice",
                name
            )));
        }
        self.params.push(name);
        Ok(())
    }

    pub fn has_param(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name)
    }

    pub fn step_of(&self, point: &str) -> Option<&Step> {
        self.index.get(point).map(|&i| &self.steps[i])
    }

    pub fn contains_point(&self, point: &str) -> bool {
        self.index.contains_key(point)
    }

    /// Resolve a name to a point reference with its construction order.
    pub fn point_ref(&self, name: &str) -> Result<PointRef> {
        self.step_of(name)
            .map(|s| s.point_ref())
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn free_points(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.kind.is_free())
    }

    pub fn is_constructed(&self, name: &str) -> bool {
        self.step_of(name)
            .map(|s| !s.kind.is_free())
            .unwrap_or(false)
    }

    fn check_dependencies(&self, kind: &StepKind) -> Result<()> {
        for dep in kind.dependencies() {
            if !self.index.contains_key(dep) {
                return Err(Error::UnknownPoint(dep.to_string()));
            }
        }
        if let Some(r) = kind.parameter_expr() {
            for atom in r.raw_atoms() {
                match atom {
                    Atom::Param(p) => {
                        if !self.has_param(p) {
                            return Err(Error::UnknownParameter(p.to_string()));
                        }
                    }
                    other => {
                        for pt in other.points() {
                            if !self.index.contains_key(pt.name()) {
                                return Err(Error::UnknownPoint(pt.name().to_string()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Append one step, assigning the next order. Free steps with several
    /// names should be appended one name at a time (orders stay consecutive).
    pub fn append_step(&self, point: impl Into<String>, kind: StepKind) -> Result<Construction> {
        let point = point.into();
        if self.index.contains_key(&point) {
            return Err(Error::DuplicatePoint(point));
        }
        if self.params.contains(&point) {
            return Err(Error::DuplicatePoint(point));
        }
        if !kind.is_free() && self.steps.is_empty() {
            return Err(Error::UnknownPoint(
                kind.dependencies().first().unwrap_or(&"?").to_string(),
            ));
        }
        self.check_dependencies(&kind)?;
        let mut out = self.clone();
        let order = out.steps.len() as u32 + 1;
        out.index.insert(point.clone(), out.steps.len());
        out.steps.push(Step { point, order, kind });
        Ok(out)
    }

    /// Append several free points at once.
    pub fn append_free(&self, names: &[impl AsRef<str>]) -> Result<Construction> {
        let mut c = self.clone();
        for n in names {
            c = c.append_step(n.as_ref(), StepKind::Free)?;
        }
        Ok(c)
    }

    /// The sub-construction of all steps with order at most `k`.
    pub fn prefix(&self, k: u32) -> Result<Construction> {
        if k < 1 || k > self.len() {
            return Err(Error::PrefixOutOfRange { k, max: self.len() });
        }
        let steps: Vec<Step> = self.steps[..k as usize].to_vec();
        let index = steps
            .iter()
            .enumerate()
            .map(|(i, s)| (s.point.clone(), i))
            .collect();
        Ok(Construction {
            steps,
            index,
            params: self.params.clone(),
        })
    }

    /// Structural sanity: non-empty, starts with a free point, orders
    /// contiguous, dependencies strictly earlier.
    pub fn check_structure(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::InvalidConstruction(
                "a construction needs at least one free point".to_string(),
            ));
        }
        if !self.steps[0].kind.is_free() {
            return Err(Error::InvalidConstruction(
                "the first step must introduce a free point".to_string(),
            ));
        }
        for (i, step) in self.steps.iter().enumerate() {
            if step.order != i as u32 + 1 {
                return Err(Error::InvalidConstruction(format!(
                    "orders are not contiguous at `{}`",
                    step.point
                )));
            }
            for dep in step.kind.dependencies() {
                let dep_step = self
                    .step_of(dep)
                    .ok_or_else(|| Error::UnknownPoint(dep.to_string()))?;
                if dep_step.order >= step.order {
                    return Err(Error::InvalidConstruction(format!(
                        "`{}` depends on `{}` which is not earlier",
                        step.point, dep
                    )));
                }
            }
        }
        Ok(())
    }
}

// `index` is skipped by serde; rebuild it after deserializing.
impl Construction {
    pub fn rebuild_index(&mut self) {
        self.index = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| (s.point.clone(), i))
            .collect();
    }
}

/// A degeneracy statement that must be *refuted* for the step to be
/// well-defined, plus a description for traces.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct NdgCondition {
    /// The degenerate case, as a conjecture whose negation we need.
    pub negation: Conjecture,
    pub description: String,
}

impl fmt::Display for NdgCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "refute {}", self.negation)
    }
}

fn distinctness(a: &PointRef, b: &PointRef) -> NdgCondition {
    let lhs = ExprTree::atom(Atom::Pyth(a.clone(), b.clone(), a.clone()));
    NdgCondition {
        negation: Conjecture::single(Clause::eq(lhs, ExprTree::int(0))),
        description: format!("points {} and {} are distinct", a, b),
    }
}

/// The non-degeneracy conditions of a step, judged over the construction
/// `c` that contains it.
///
/// For an intersection the single non-parallelism condition subsumes the
/// degeneracy of either defining line: if u = v or p = q the parallelism
/// negation becomes trivially provable.
pub fn ndg_conditions(c: &Construction, step: &Step) -> Result<Vec<NdgCondition>> {
    let pr = |name: &str| c.point_ref(name);
    Ok(match &step.kind {
        StepKind::Free => vec![],
        StepKind::Intersect { u, v, p, q } => {
            let (u, v, p, q) = (pr(u)?, pr(v)?, pr(p)?, pr(q)?);
            let lhs = ExprTree::atom(Atom::Area(p.clone(), u.clone(), v.clone()));
            let rhs = ExprTree::atom(Atom::Area(q.clone(), u.clone(), v.clone()));
            vec![NdgCondition {
                negation: Conjecture::single(Clause::new(Rel::Eq, lhs, rhs)),
                description: format!("line {}{} not parallel to line {}{}", u, v, p, q),
            }]
        }
        StepKind::Foot { u, v, .. } => vec![distinctness(&pr(u)?, &pr(v)?)],
        StepKind::OnParallel { u, v, .. } => vec![distinctness(&pr(u)?, &pr(v)?)],
        StepKind::OnPerp { u, v, .. } => vec![distinctness(&pr(u)?, &pr(v)?)],
    })
}

/// Decides conjectures on (prefixes of) constructions; implemented by the
/// prover and injected here to avoid a module cycle.
pub trait SideConditionProver {
    /// Whether `conj` is provable over `c`.
    fn provable(&self, c: &Construction, conj: &Conjecture) -> Result<bool>;
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct NdgReport {
    pub point: String,
    pub order: u32,
    pub condition: NdgCondition,
    pub consistent: bool,
}

/// Check every step's non-degeneracy conditions in order. Each negation is
/// judged over the strict prefix preceding the step; the first provable
/// negation makes the construction inconsistent.
pub fn validate(c: &Construction, prover: &dyn SideConditionProver) -> Result<Vec<NdgReport>> {
    c.check_structure()?;
    let mut reports = Vec::new();
    for step in c.steps() {
        let conds = ndg_conditions(c, step)?;
        if conds.is_empty() {
            continue;
        }
        // judge within the construction as known just before this step
        let prefix = c.prefix(step.order - 1)?;
        for cond in conds {
            let provable = prover.provable(&prefix, &cond.negation)?;
            reports.push(NdgReport {
                point: step.point.clone(),
                order: step.order,
                condition: cond.clone(),
                consistent: !provable,
            });
            if provable {
                return Err(Error::ConstructionInconsistent {
                    point: step.point.clone(),
                    ndg: cond.to_string(),
                });
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intercept() -> Construction {
        let c = Construction::new();
        let mut c = {
            let mut c = c;
            c.declare_param("r").unwrap();
            c
        };
        c = c.append_free(&["A", "B", "C"]).unwrap();
        c = c
            .append_step(
                "D",
                StepKind::OnParallel {
                    w: "B".into(),
                    u: "A".into(),
                    v: "C".into(),
                    r: ExprTree::param("r"),
                },
            )
            .unwrap();
        c.append_step(
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
    fn orders_are_assigned_in_sequence() {
        let c = intercept();
        assert_eq!(c.point_ref("A").unwrap().order, 1);
        assert_eq!(c.point_ref("D").unwrap().order, 4);
        assert_eq!(c.point_ref("S").unwrap().order, 5);
        c.check_structure().unwrap();
    }

    #[test]
    fn missing_dependency_is_unknown_point() {
        let c = Construction::new();
        let err = c
            .append_step(
                "S",
                StepKind::Intersect {
                    u: "A".into(),
                    v: "B".into(),
                    p: "C".into(),
                    q: "D".into(),
                },
            )
            .unwrap_err();
        assert!(matches!(err, Error::UnknownPoint(_)));
    }

    #[test]
    fn duplicate_point_rejected() {
        let c = Construction::new().append_free(&["A"]).unwrap();
        assert!(matches!(
            c.append_free(&["A"]),
            Err(Error::DuplicatePoint(_))
        ));
    }

    #[test]
    fn prefix_selects_early_steps() {
        let c = intercept();
        let p3 = c.prefix(3).unwrap();
        assert_eq!(p3.len(), 3);
        assert!(p3.steps().iter().all(|s| s.kind.is_free()));
        let p4 = c.prefix(4).unwrap();
        assert!(p4.contains_point("D"));
        assert!(!p4.contains_point("S"));
        assert_eq!(c.prefix(5).unwrap(), c);
        assert!(c.prefix(6).is_err());
        assert!(c.prefix(0).is_err());
    }

    #[test]
    fn ndg_conditions_match_the_step_kinds() {
        let c = intercept();
        let d = c.step_of("D").unwrap();
        let conds = ndg_conditions(&c, d).unwrap();
        assert_eq!(conds.len(), 1);
        assert_eq!(conds[0].to_string(), "refute P[A,C,A] = 0");
        let s = c.step_of("S").unwrap();
        let conds = ndg_conditions(&c, s).unwrap();
        assert_eq!(conds.len(), 1);
        assert_eq!(conds[0].to_string(), "refute S[C,A,B] = S[D,A,B]");
        let a = c.step_of("A").unwrap();
        assert!(ndg_conditions(&c, a).unwrap().is_empty());
    }

    #[test]
    fn ndg_conditions_never_mention_the_new_point() {
        let c = intercept();
        for step in c.steps() {
            for cond in ndg_conditions(&c, step).unwrap() {
                for clause in &cond.negation.clauses {
                    for atom in clause
                        .lhs
                        .raw_atoms()
                        .into_iter()
                        .chain(clause.rhs.raw_atoms())
                    {
                        assert!(!atom.mentions(&step.point));
                    }
                }
            }
        }
    }
}
