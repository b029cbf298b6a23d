//! Exact rational coordinate semantics for constructions and conjectures.
//!
//! A numeric model assigns exact rational coordinates to every point of a
//! construction and exact rational values to its parameters. Free points are
//! sampled from a seeded generator (or fixed by explicit assignments);
//! constructed points are computed from their defining constraints. Models
//! drive counterexamples, side-condition refutations and the differential
//! tests of the elimination lemmas. There is no floating point anywhere.

pub mod radical;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, ExprTree, Scalar};
use crate::conjecture::{Clause, Conjecture, Rel};
use crate::construction::{ndg_conditions, Construction, StepKind};
use crate::error::{Error, Result};

pub use radical::RadValue;

/// Deterministic splittable generator (splitmix64); independent of any
/// external crate so seeded runs stay byte-stable.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn next_range(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// A small exact rational: numerator in `[-10,10]`, denominator in `[1,10]`,
    /// rescaled by a power of two in [2^-3, 2^3].
    pub fn small_rational(&mut self) -> Scalar {
        let num = self.next_range(21) as i64 - 10;
        let den = self.next_range(10) as i64 + 1;
        let shift = self.next_range(7) as i64 - 3;
        let base = Scalar::ratio(num, den);
        let scale = if shift >= 0 {
            Scalar::from_int(1 << shift)
        } else {
            Scalar::ratio(1, 1 << (-shift))
        };
        base * scale
    }

    /// A small rational guaranteed to be nonzero.
    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let q = self.small_rational();
            if !q.is_zero() {
                return q;
            }
        }
    }
}

/// Exact rational coordinates for every point plus parameter values.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct NumericModel {
    pub points: BTreeMap<String, (Scalar, Scalar)>,
    pub params: BTreeMap<String, Scalar>,
    pub seed: u64,
}

impl NumericModel {
    pub fn coords(&self, name: &str) -> Result<(&Scalar, &Scalar)> {
        self.points
            .get(name)
            .map(|(x, y)| (x, y))
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }
}

impl fmt::Display for NumericModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, (x, y)) in &self.points {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{} = ({}, {})", name, x, y)?;
        }
        for (name, v) in &self.params {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{} = {}", name, v)?;
        }
        Ok(())
    }
}

/// Explicit choices a caller can pin before sampling.
#[derive(Clone, Debug, Default)]
pub struct Assignments {
    pub points: BTreeMap<String, (Scalar, Scalar)>,
    pub params: BTreeMap<String, Scalar>,
}

const RESAMPLE_BOUND: u32 = 32;

/// Realize a construction: sample free points and parameters, then compute
/// every constructed point exactly. Degenerate draws (parallel lines, zero
/// segments) are redrawn up to a bound; exhausting it signals a genuinely
/// inconsistent construction.
pub fn realize(c: &Construction, seed: u64, fixed: Option<&Assignments>) -> Result<NumericModel> {
    let mut rng = Rng::new(seed);
    'attempt: for attempt in 0..RESAMPLE_BOUND {
        let mut model = NumericModel {
            points: BTreeMap::new(),
            params: BTreeMap::new(),
            seed,
        };
        for p in c.params() {
            let v = fixed
                .and_then(|f| f.params.get(p).cloned())
                .unwrap_or_else(|| rng.small_rational());
            model.params.insert(p.clone(), v);
        }
        for step in c.steps() {
            let ok = place_point(&mut model, &step.point, &step.kind, &mut rng, fixed)?;
            if !ok {
                if attempt + 1 == RESAMPLE_BOUND {
                    break 'attempt;
                }
                continue 'attempt;
            }
        }
        return Ok(model);
    }
    Err(Error::DegenerateAfterRetries(RESAMPLE_BOUND))
}

/// Returns Ok(false) when the step degenerates under the current draw and
/// the whole model should be resampled.
fn place_point(
    model: &mut NumericModel,
    name: &str,
    kind: &StepKind,
    rng: &mut Rng,
    fixed: Option<&Assignments>,
) -> Result<bool> {
    let get = |m: &NumericModel, p: &str| -> Result<(Scalar, Scalar)> {
        m.coords(p).map(|(x, y)| (x.clone(), y.clone()))
    };
    let coords = match kind {
        StepKind::Free => fixed
            .and_then(|f| f.points.get(name).cloned())
            .unwrap_or_else(|| (rng.small_rational(), rng.small_rational())),
        StepKind::Intersect { u, v, p, q } => {
            let (ux, uy) = get(model, u)?;
            let (vx, vy) = get(model, v)?;
            let (px, py) = get(model, p)?;
            let (qx, qy) = get(model, q)?;
            // direction vectors
            let d1 = (&vx - &ux, &vy - &uy);
            let d2 = (&qx - &px, &qy - &py);
            let det = &d1.0 * &d2.1 - &d1.1 * &d2.0;
            if det.is_zero() {
                return Ok(false); // parallel or degenerate lines
            }
            // solve U + s*d1 = P + t*d2
            let rx = &px - &ux;
            let ry = &py - &uy;
            let s = (&rx * &d2.1 - &ry * &d2.0) / det;
            (ux + &s * &d1.0, uy + s * d1.1)
        }
        StepKind::Foot { p, u, v } => {
            let (px, py) = get(model, p)?;
            let (ux, uy) = get(model, u)?;
            let (vx, vy) = get(model, v)?;
            let dx = &vx - &ux;
            let dy = &vy - &uy;
            let len2 = &dx * &dx + &dy * &dy;
            if len2.is_zero() {
                return Ok(false); // u = v
            }
            let t = (&(&px - &ux) * &dx + &(&py - &uy) * &dy) / len2;
            (ux + &t * &dx, uy + t * dy)
        }
        StepKind::OnParallel { w, u, v, r } => {
            let (wx, wy) = get(model, w)?;
            let (ux, uy) = get(model, u)?;
            let (vx, vy) = get(model, v)?;
            if ux == vx && uy == vy {
                return Ok(false);
            }
            let rv = match eval_step_param(r, model)? {
                Some(q) => q,
                None => return Ok(false), // degenerate draw; resample
            };
            (wx + &rv * &(&vx - &ux), wy + rv * (vy - uy))
        }
        StepKind::OnPerp { u, v, r } => {
            let (ux, uy) = get(model, u)?;
            let (vx, vy) = get(model, v)?;
            if ux == vx && uy == vy {
                return Ok(false);
            }
            let rv = match eval_step_param(r, model)? {
                Some(q) => q,
                None => return Ok(false), // degenerate draw; resample
            };
            // y = u + r * rot90(v - u): satisfies 4*S[u,v,y] = r*P[u,v,u]
            let dx = &vx - &ux;
            let dy = &vy - &uy;
            (ux - &rv * &dy, uy + rv * dx)
        }
    };
    model.points.insert(name.to_string(), coords);
    Ok(true)
}

/// Evaluate a step parameter; `Ok(None)` means the draw degenerated (a zero
/// denominator or a non-parallel ratio under the sampled coordinates) and
/// the model should be resampled. Square roots in parameters are rejected.
fn eval_step_param(r: &ExprTree, model: &NumericModel) -> Result<Option<Scalar>> {
    match eval_expr(r, model) {
        Ok(v) => match v.as_rational() {
            Some(q) => Ok(Some(q)),
            None => Err(Error::SqrtUnsupported(
                "construction parameters must be sqrt-free".to_string(),
            )),
        },
        Err(Error::DegenerateDenominator(_)) | Err(Error::NonParallelRatio(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Signed area of the triangle abc from coordinates.
fn signed_area(a: (&Scalar, &Scalar), b: (&Scalar, &Scalar), c: (&Scalar, &Scalar)) -> Scalar {
    let abx = b.0 - a.0;
    let aby = b.1 - a.1;
    let acx = c.0 - a.0;
    let acy = c.1 - a.1;
    (&abx * &acy - &aby * &acx) * Scalar::ratio(1, 2)
}

fn dist2(a: (&Scalar, &Scalar), b: (&Scalar, &Scalar)) -> Scalar {
    let dx = b.0 - a.0;
    let dy = b.1 - a.1;
    &dx * &dx + &dy * &dy
}

/// Evaluate an atom exactly in a model.
pub fn eval_atom(atom: &Atom, model: &NumericModel) -> Result<Scalar> {
    match atom {
        Atom::Area(a, b, c) => {
            let a = model.coords(a.name())?;
            let b = model.coords(b.name())?;
            let c = model.coords(c.name())?;
            Ok(signed_area(a, b, c))
        }
        Atom::Pyth(a, b, c) => {
            let pa = model.coords(a.name())?;
            let pb = model.coords(b.name())?;
            let pc = model.coords(c.name())?;
            Ok(dist2(pa, pb) + dist2(pb, pc) - dist2(pa, pc))
        }
        Atom::Dist2(a, b) => {
            let pa = model.coords(a.name())?;
            let pb = model.coords(b.name())?;
            Ok(dist2(pa, pb))
        }
        Atom::Ratio(a, b, c, d) => {
            let pa = model.coords(a.name())?;
            let pb = model.coords(b.name())?;
            let pc = model.coords(c.name())?;
            let pd = model.coords(d.name())?;
            let ab = (pb.0 - pa.0, pb.1 - pa.1);
            let cd = (pd.0 - pc.0, pd.1 - pc.1);
            let len2 = &cd.0 * &cd.0 + &cd.1 * &cd.1;
            if len2.is_zero() {
                return Err(Error::DegenerateDenominator(format!(
                    "zero segment in {}",
                    atom
                )));
            }
            let cross = &ab.0 * &cd.1 - &ab.1 * &cd.0;
            if !cross.is_zero() {
                return Err(Error::NonParallelRatio(atom.to_string()));
            }
            Ok((&ab.0 * &cd.0 + &ab.1 * &cd.1) / len2)
        }
        Atom::Param(p) => model
            .params
            .get(p.as_ref())
            .cloned()
            .ok_or_else(|| Error::UnknownParameter(p.to_string())),
    }
}

/// Evaluate a polynomial exactly in a model.
pub fn eval_polynomial(p: &crate::algebra::Polynomial, model: &NumericModel) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (mono, coeff) in p.terms() {
        let mut v = coeff.clone();
        for (atom, exp) in mono.factors() {
            let av = eval_atom(atom, model)?;
            for _ in 0..*exp {
                v *= &av;
            }
        }
        acc += &v;
    }
    Ok(acc)
}

/// Evaluate a rational expression exactly in a model.
pub fn eval_rexpr(e: &crate::algebra::RationalExpr, model: &NumericModel) -> Result<Scalar> {
    let num = eval_polynomial(e.num(), model)?;
    let den = eval_polynomial(e.den(), model)?;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator(
            "denominator vanishes in the numeric model".to_string(),
        ));
    }
    Ok(num / den)
}

/// Evaluate an expression tree exactly; square roots yield radical values.
pub fn eval_expr(e: &ExprTree, model: &NumericModel) -> Result<RadValue> {
    match e {
        ExprTree::Const(c) => Ok(RadValue::rational(c.clone())),
        ExprTree::Atom(a) => Ok(RadValue::rational(eval_atom(a, model)?)),
        ExprTree::Add(a, b) => Ok(eval_expr(a, model)?.add(&eval_expr(b, model)?)),
        ExprTree::Sub(a, b) => Ok(eval_expr(a, model)?.sub(&eval_expr(b, model)?)),
        ExprTree::Mul(a, b) => Ok(eval_expr(a, model)?.mul(&eval_expr(b, model)?)),
        ExprTree::Div(a, b) => eval_expr(a, model)?.div(&eval_expr(b, model)?),
        ExprTree::Neg(a) => Ok(eval_expr(a, model)?.neg()),
        ExprTree::Pow(a, k) => {
            let base = eval_expr(a, model)?;
            let mut out = RadValue::rational(Scalar::one());
            for _ in 0..k.unsigned_abs() {
                out = out.mul(&base);
            }
            if *k < 0 {
                RadValue::rational(Scalar::one()).div(&out)
            } else {
                Ok(out)
            }
        }
        ExprTree::Sqrt(a) => {
            let v = eval_expr(a, model)?;
            let q = v.as_rational().ok_or(Error::RadicalDepthExceeded)?;
            RadValue::sqrt_of_rational(&q)
        }
    }
}

/// Evaluate one clause exactly.
pub fn check_clause(clause: &Clause, model: &NumericModel) -> Result<bool> {
    let diff = eval_expr(&clause.lhs, model)?.sub(&eval_expr(&clause.rhs, model)?);
    let sign = diff.sign()?;
    Ok(match clause.rel {
        Rel::Eq => sign == 0,
        Rel::Ne => sign != 0,
        Rel::Le => sign <= 0,
        Rel::Lt => sign < 0,
        Rel::Ge => sign >= 0,
        Rel::Gt => sign > 0,
    })
}

/// Whether the whole conjecture (a conjunction) holds in the model.
pub fn check(conj: &Conjecture, model: &NumericModel) -> Result<bool> {
    for clause in &conj.clauses {
        if !check_clause(clause, model)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every non-degeneracy condition of the construction is satisfied
/// (i.e. every recorded degenerate case is false) in the model.
pub fn ndgs_hold(c: &Construction, model: &NumericModel) -> Result<bool> {
    for step in c.steps() {
        for cond in ndg_conditions(c, step)? {
            if check(&cond.negation, model)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Search for a model of `c` that violates `conj` while satisfying every
/// non-degeneracy condition.
pub fn find_counterexample(
    c: &Construction,
    conj: &Conjecture,
    seed: u64,
    attempts: u32,
) -> Result<Option<NumericModel>> {
    for i in 0..attempts {
        let model = match realize(c, seed.wrapping_add(i as u64), None) {
            Ok(m) => m,
            Err(Error::DegenerateAfterRetries(_)) => continue,
            Err(e) => return Err(e),
        };
        let violated = match check(conj, &model) {
            Ok(holds) => !holds,
            // a degenerate evaluation (e.g. non-parallel ratio) is not a
            // counterexample; try another sample
            Err(Error::NonParallelRatio(_)) | Err(Error::DegenerateDenominator(_)) => continue,
            Err(e) => return Err(e),
        };
        if violated && ndgs_hold(c, &model)? {
            return Ok(Some(model));
        }
    }
    Ok(None)
}
