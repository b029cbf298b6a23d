//! Expression trees for conjectures and construction parameters.
//!
//! Trees hold raw (possibly uncanonical) atoms; lowering to a
//! [`RationalExpr`] canonicalizes every quantity. Square roots cannot be
//! lowered; the inequality engine consumes them separately.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::atom::Atom;
use super::point::PointRef;
use super::rexpr::RationalExpr;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ExprTree {
    Const(Scalar),
    Atom(Atom),
    Add(Box<ExprTree>, Box<ExprTree>),
    Sub(Box<ExprTree>, Box<ExprTree>),
    Mul(Box<ExprTree>, Box<ExprTree>),
    Div(Box<ExprTree>, Box<ExprTree>),
    Pow(Box<ExprTree>, i32),
    Neg(Box<ExprTree>),
    Sqrt(Box<ExprTree>),
}

impl ExprTree {
    pub fn constant(c: Scalar) -> Self {
        ExprTree::Const(c)
    }

    pub fn int(n: i64) -> Self {
        ExprTree::Const(Scalar::from_int(n))
    }

    pub fn atom(a: Atom) -> Self {
        ExprTree::Atom(a)
    }

    pub fn param(name: impl AsRef<str>) -> Self {
        ExprTree::Atom(Atom::param(name))
    }

    pub fn add(lhs: ExprTree, rhs: ExprTree) -> Self {
        ExprTree::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn sub(lhs: ExprTree, rhs: ExprTree) -> Self {
        ExprTree::Sub(Box::new(lhs), Box::new(rhs))
    }

    pub fn mul(lhs: ExprTree, rhs: ExprTree) -> Self {
        ExprTree::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn div(lhs: ExprTree, rhs: ExprTree) -> Self {
        ExprTree::Div(Box::new(lhs), Box::new(rhs))
    }

    pub fn pow(base: ExprTree, exp: i32) -> Self {
        ExprTree::Pow(Box::new(base), exp)
    }

    pub fn neg(e: ExprTree) -> Self {
        ExprTree::Neg(Box::new(e))
    }

    pub fn sqrt(e: ExprTree) -> Self {
        ExprTree::Sqrt(Box::new(e))
    }

    /// A polynomial as an explicit sum-of-products tree.
    pub fn from_polynomial(p: &super::poly::Polynomial) -> Self {
        let mut acc: Option<ExprTree> = None;
        for (mono, coeff) in p.terms() {
            let mut term = ExprTree::constant(coeff.clone());
            for (atom, exp) in mono.factors() {
                let factor = if *exp == 1 {
                    ExprTree::atom(atom.clone())
                } else {
                    ExprTree::pow(ExprTree::atom(atom.clone()), *exp as i32)
                };
                term = ExprTree::mul(term, factor);
            }
            acc = Some(match acc {
                None => term,
                Some(sum) => ExprTree::add(sum, term),
            });
        }
        acc.unwrap_or_else(|| ExprTree::int(0))
    }

    /// `d2(a,b)` surface syntax: squared distances are carried as
    /// `P[a,b,a]/2` until Pythagorean expansion, so elimination lemmas apply.
    pub fn dist2(a: PointRef, b: PointRef) -> Self {
        ExprTree::mul(
            ExprTree::constant(Scalar::ratio(1, 2)),
            ExprTree::atom(Atom::Pyth(a.clone(), b, a)),
        )
    }

    /// `dist(a,b) = sqrt(d2(a,b))`.
    pub fn dist(a: PointRef, b: PointRef) -> Self {
        ExprTree::sqrt(ExprTree::dist2(a, b))
    }

    pub fn contains_sqrt(&self) -> bool {
        match self {
            ExprTree::Sqrt(_) => true,
            ExprTree::Const(_) | ExprTree::Atom(_) => false,
            ExprTree::Add(a, b)
            | ExprTree::Sub(a, b)
            | ExprTree::Mul(a, b)
            | ExprTree::Div(a, b) => a.contains_sqrt() || b.contains_sqrt(),
            ExprTree::Pow(a, _) | ExprTree::Neg(a) => a.contains_sqrt(),
        }
    }

    /// Every atom in the tree, uncanonicalized, in syntactic order.
    pub fn raw_atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            ExprTree::Const(_) => {}
            ExprTree::Atom(a) => out.push(a),
            ExprTree::Add(a, b)
            | ExprTree::Sub(a, b)
            | ExprTree::Mul(a, b)
            | ExprTree::Div(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            ExprTree::Pow(a, _) | ExprTree::Neg(a) => a.collect_atoms(out),
            ExprTree::Sqrt(a) => a.collect_atoms(out),
        }
    }

    /// Lower to an exact rational expression. Fails on square roots and on
    /// division by an identically zero subexpression.
    pub fn lower(&self) -> Result<RationalExpr> {
        match self {
            ExprTree::Const(c) => Ok(RationalExpr::constant(c.clone())),
            ExprTree::Atom(a) => RationalExpr::from_atom(a.clone()),
            ExprTree::Add(a, b) => Ok(a.lower()?.add(&b.lower()?)),
            ExprTree::Sub(a, b) => Ok(a.lower()?.sub(&b.lower()?)),
            ExprTree::Mul(a, b) => Ok(a.lower()?.mul(&b.lower()?)),
            ExprTree::Div(a, b) => a.lower()?.div(&b.lower()?),
            ExprTree::Pow(a, e) => a.lower()?.pow(*e),
            ExprTree::Neg(a) => Ok(a.lower()?.neg()),
            ExprTree::Sqrt(_) => Err(Error::SqrtUnsupported(self.to_string())),
        }
    }

    /// Rebind every point reference to the orders of `resolve`, e.g. when an
    /// expression written against one construction is judged in another.
    pub fn map_points(&self, resolve: &impl Fn(&PointRef) -> PointRef) -> ExprTree {
        let map_atom = |a: &Atom| -> Atom {
            match a {
                Atom::Area(x, y, z) => Atom::Area(resolve(x), resolve(y), resolve(z)),
                Atom::Pyth(x, y, z) => Atom::Pyth(resolve(x), resolve(y), resolve(z)),
                Atom::Dist2(x, y) => Atom::Dist2(resolve(x), resolve(y)),
                Atom::Ratio(x, y, z, w) => {
                    Atom::Ratio(resolve(x), resolve(y), resolve(z), resolve(w))
                }
                Atom::Param(p) => Atom::Param(p.clone()),
            }
        };
        match self {
            ExprTree::Const(c) => ExprTree::Const(c.clone()),
            ExprTree::Atom(a) => ExprTree::Atom(map_atom(a)),
            ExprTree::Add(a, b) => ExprTree::add(a.map_points(resolve), b.map_points(resolve)),
            ExprTree::Sub(a, b) => ExprTree::sub(a.map_points(resolve), b.map_points(resolve)),
            ExprTree::Mul(a, b) => ExprTree::mul(a.map_points(resolve), b.map_points(resolve)),
            ExprTree::Div(a, b) => ExprTree::div(a.map_points(resolve), b.map_points(resolve)),
            ExprTree::Pow(a, e) => ExprTree::pow(a.map_points(resolve), *e),
            ExprTree::Neg(a) => ExprTree::neg(a.map_points(resolve)),
            ExprTree::Sqrt(a) => ExprTree::sqrt(a.map_points(resolve)),
        }
    }
}

/// Expand a quaternary signed area or Pythagorean difference into its
/// ternary definition; ternary argument lists are returned unchanged.
///
/// `S[w,x,y,z] = S[w,x,y] + S[w,y,z]` and `P[w,x,y,z] = P[w,x,z] - P[y,x,z]`.
pub fn expand_quaternary(kind: QuantityKind, points: &[PointRef]) -> Result<ExprTree> {
    match (kind, points) {
        (QuantityKind::Area, [a, b, c]) => {
            Ok(ExprTree::atom(Atom::Area(a.clone(), b.clone(), c.clone())))
        }
        (QuantityKind::Pyth, [a, b, c]) => {
            Ok(ExprTree::atom(Atom::Pyth(a.clone(), b.clone(), c.clone())))
        }
        (QuantityKind::Area, [w, x, y, z]) => Ok(ExprTree::add(
            ExprTree::atom(Atom::Area(w.clone(), x.clone(), y.clone())),
            ExprTree::atom(Atom::Area(w.clone(), y.clone(), z.clone())),
        )),
        (QuantityKind::Pyth, [w, x, y, z]) => Ok(ExprTree::sub(
            ExprTree::atom(Atom::Pyth(w.clone(), x.clone(), z.clone())),
            ExprTree::atom(Atom::Pyth(y.clone(), x.clone(), z.clone())),
        )),
        _ => Err(Error::InvalidConstruction(format!(
            "{:?} takes 3 or 4 points, got {}",
            kind,
            points.len()
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuantityKind {
    Area,
    Pyth,
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprTree::Const(c) => {
                if c.is_negative() || (!c.is_integer()) {
                    write!(f, "({})", c)
                } else {
                    write!(f, "{}", c)
                }
            }
            ExprTree::Atom(a) => write!(f, "{}", a),
            ExprTree::Add(a, b) => write!(f, "({} + {})", a, b),
            ExprTree::Sub(a, b) => write!(f, "({} - {})", a, b),
            ExprTree::Mul(a, b) => write!(f, "({} * {})", a, b),
            ExprTree::Div(a, b) => write!(f, "({} / {})", a, b),
            ExprTree::Pow(a, e) => match a.as_ref() {
                // composite bases need their own parentheses for re-parsing
                ExprTree::Atom(_) | ExprTree::Const(_) => write!(f, "{}^{}", a, e),
                _ => write!(f, "({})^{}", a, e),
            },
            ExprTree::Neg(a) => write!(f, "(-{})", a),
            ExprTree::Sqrt(a) => write!(f, "sqrt({})", a),
        }
    }
}
