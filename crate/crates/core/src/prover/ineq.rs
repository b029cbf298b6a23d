//! The inequality engine: sound but deliberately incomplete.
//!
//! An inequality is normalized to `F >= 0` (or `> 0`), where `F` is a sum of
//! rational-expression coefficients times square roots of rational-expression
//! radicands. Square roots are removed by a bounded move-and-square loop: the
//! provably nonnegative part `X` is split from the rest `Y`, and
//! `X >= 0 and X^2 - Y^2 >= 0` implies `X - Y >= 0`. Square-root-free facts
//! are certified syntactically: even terms with positive coefficients,
//! perfect squares (up to positive content), and exact square completion on
//! quadratics. Anything else is left to oracle refutation or reported
//! unknown.

use std::collections::BTreeMap;

use crate::algebra::{ExprTree, Polynomial, RationalExpr, Scalar};
use crate::error::{Error, Result};

/// A multiset of primitive radicands; the term's value is
/// `coeff * sqrt(product of the radicands)`.
pub type RadKey = Vec<RationalExpr>;

/// An exact sum of radical terms with rational-expression coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct RadicalSum {
    terms: BTreeMap<RadKey, RationalExpr>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn rational(e: RationalExpr) -> Self {
        let mut s = RadicalSum::zero();
        s.insert(Vec::new(), e);
        s
    }

    fn insert(&mut self, key: RadKey, coeff: RationalExpr) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadKey, &RationalExpr)> {
        self.terms.iter()
    }

    /// The sum as a plain rational expression, when no radical term remains.
    pub fn as_rational(&self) -> Option<RationalExpr> {
        match self.terms.len() {
            0 => Some(RationalExpr::zero()),
            1 => {
                let (key, coeff) = self.terms.iter().next().unwrap();
                key.is_empty().then(|| coeff.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out.consolidate()
    }

    pub fn neg(&self) -> RadicalSum {
        RadicalSum {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RadicalSum) -> RadicalSum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let (key, extra) = merge_keys(ka, kb);
                out.insert(key, ca.mul(cb).mul(&extra));
            }
        }
        out.consolidate()
    }

    pub fn div(&self, other: &RadicalSum) -> Result<RadicalSum> {
        if other.terms.is_empty() {
            return Err(Error::DegenerateDenominator(
                "division by an identically zero expression".to_string(),
            ));
        }
        if let Some(g) = other.as_rational() {
            let mut out = RadicalSum::zero();
            for (k, c) in &self.terms {
                out.insert(k.clone(), c.div(&g)?);
            }
            return Ok(out);
        }
        // rationalize by conjugates, bounded
        let mut num = self.clone();
        let mut den = other.clone();
        for _ in 0..6 {
            if let Some(g) = den.as_rational() {
                let mut out = RadicalSum::zero();
                for (k, c) in &num.terms {
                    out.insert(k.clone(), c.div(&g)?);
                }
                return Ok(out);
            }
            let (key, coeff) = {
                let (k, c) = den.terms.iter().next_back().unwrap();
                (k.clone(), c.clone())
            };
            let mut conj = den.clone();
            conj.terms.remove(&key);
            let mut flipped = RadicalSum::zero();
            flipped.insert(key.clone(), coeff.neg());
            let conj = conj.add(&flipped);
            if conj.terms.is_empty() {
                // single radical term: 1/(c*sqrt(K)) = sqrt(K)/(c*prod(K))
                let mut prod = RationalExpr::one();
                for s in &key {
                    prod = prod.mul(s);
                }
                let mut root = RadicalSum::zero();
                root.insert(key, RationalExpr::one().div(&coeff.mul(&prod))?);
                return Ok(num.mul(&root));
            }
            num = num.mul(&conj);
            den = den.mul(&conj);
        }
        Err(Error::RadicalDepthExceeded)
    }

    /// Merge terms whose keys are structurally different but value-equal.
    fn consolidate(mut self) -> RadicalSum {
        let keys: Vec<RadKey> = self.terms.keys().cloned().collect();
        for i in 0..keys.len() {
            for j in (i + 1)..keys.len() {
                if !self.terms.contains_key(&keys[i]) || !self.terms.contains_key(&keys[j]) {
                    continue;
                }
                if keys[i].len() == keys[j].len()
                    && keys[i].iter().zip(keys[j].iter()).all(|(a, b)| a.equals(b))
                {
                    let c = self.terms.remove(&keys[j]).unwrap();
                    self.insert(keys[i].clone(), c);
                }
            }
        }
        self
    }

    /// Apply a value-preserving map to every coefficient and radicand.
    pub fn map_exprs(
        &self,
        f: &mut impl FnMut(&RationalExpr) -> Result<RationalExpr>,
    ) -> Result<RadicalSum> {
        let mut out = RadicalSum::zero();
        for (key, coeff) in &self.terms {
            let new_key: RadKey = key.iter().map(&mut *f).collect::<Result<_>>()?;
            out.insert(new_key, f(coeff)?);
        }
        Ok(out.consolidate())
    }

    /// Build from an expression tree; nested radicals are rejected.
    pub fn from_expr(e: &ExprTree) -> Result<RadicalSum> {
        Ok(match e {
            ExprTree::Const(c) => RadicalSum::rational(RationalExpr::constant(c.clone())),
            ExprTree::Atom(a) => RadicalSum::rational(RationalExpr::from_atom(a.clone())?),
            ExprTree::Add(a, b) => Self::from_expr(a)?.add(&Self::from_expr(b)?),
            ExprTree::Sub(a, b) => Self::from_expr(a)?.sub(&Self::from_expr(b)?),
            ExprTree::Mul(a, b) => Self::from_expr(a)?.mul(&Self::from_expr(b)?),
            ExprTree::Div(a, b) => Self::from_expr(a)?.div(&Self::from_expr(b)?)?,
            ExprTree::Neg(a) => Self::from_expr(a)?.neg(),
            ExprTree::Pow(a, k) => {
                let base = Self::from_expr(a)?;
                let mut out = RadicalSum::rational(RationalExpr::one());
                for _ in 0..k.unsigned_abs() {
                    out = out.mul(&base);
                }
                if *k < 0 {
                    RadicalSum::rational(RationalExpr::one()).div(&out)?
                } else {
                    out
                }
            }
            ExprTree::Sqrt(child) => {
                let inner = Self::from_expr(child)?;
                let g = inner.as_rational().ok_or(Error::RadicalDepthExceeded)?;
                if g.is_zero() {
                    return Ok(RadicalSum::zero());
                }
                if let Some(q) = g.as_constant() {
                    if q.is_negative() {
                        return Err(Error::SqrtOfNegative(q.to_string()));
                    }
                    if let Some(root) = q.sqrt_exact() {
                        return Ok(RadicalSum::rational(RationalExpr::constant(root)));
                    }
                }
                let mut s = RadicalSum::zero();
                s.insert(vec![g], RationalExpr::one());
                s
            }
        })
    }
}

/// Multiply two radicand multisets, cancelling shared primitives pairwise
/// into the returned rational factor.
fn merge_keys(a: &RadKey, b: &RadKey) -> (RadKey, RationalExpr) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut factor = RationalExpr::one();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                factor = factor.mul(&a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (out, factor)
}

/// Syntactic nonnegativity certificate for a polynomial: even terms with
/// positive coefficients, a perfect square up to positive content, or an
/// exact square completion when the polynomial is quadratic.
pub fn sos_certificate(p: &Polynomial) -> bool {
    if p.is_zero() {
        return true;
    }
    if even_positive(p) {
        return true;
    }
    let c = p.content();
    if !c.is_zero() {
        let monic = p.div_scalar(&c);
        if monic.try_sqrt().is_some() {
            // content is nonnegative by construction, so c * square >= 0
            return true;
        }
    }
    p.total_degree() <= 2 && quadratic_sos(p)
}

fn even_positive(p: &Polynomial) -> bool {
    p.terms()
        .all(|(m, c)| c.is_positive() && m.factors().iter().all(|(_, e)| e % 2 == 0))
}

/// Exact square completion (Lagrange reduction) for polynomials of total
/// degree at most 2 in their atoms.
fn quadratic_sos(p: &Polynomial) -> bool {
    if p.is_zero() {
        return true;
    }
    if let Some(c) = p.as_constant() {
        return !c.is_negative();
    }
    let atom = match p.atoms().next() {
        Some(a) => a.clone(),
        None => return false,
    };
    let mut square = Scalar::zero();
    let mut linear = Polynomial::zero();
    let mut rest = Polynomial::zero();
    for (m, coeff) in p.terms() {
        match m.exponent_of(&atom) {
            0 => rest.insert_term(m.clone(), coeff.clone()),
            1 => linear.insert_term(m.without(&atom), coeff.clone()),
            2 => square += coeff,
            _ => return false,
        }
    }
    if square.is_zero() {
        // the atom occurs only linearly: unbounded below unless absent
        return linear.is_zero() && quadratic_sos(&rest);
    }
    if square.is_negative() {
        return false;
    }
    // p = square*(x + linear/(2 square))^2 + rest - linear^2/(4 square)
    let correction = linear
        .mul(&linear)
        .div_scalar(&(Scalar::from_int(4) * square));
    quadratic_sos(&rest.sub(&correction))
}

/// Decide `sum >= 0` (or `> 0`): the bounded move-and-square loop.
///
/// `nonneg` decides `g >= 0` / `g > 0` for square-root-free rational
/// expressions; `notes` receives a short description of each step.
pub fn prove_nonneg(
    sum: &RadicalSum,
    strict: bool,
    budget: u32,
    nonneg: &mut impl FnMut(&RationalExpr, bool) -> Result<bool>,
    notes: &mut Vec<String>,
) -> Result<bool> {
    if let Some(g) = sum.as_rational() {
        return nonneg(&g, strict);
    }
    // split into a provably nonnegative part X and the remainder Y
    let mut x = RadicalSum::zero();
    let mut y = RadicalSum::zero();
    for (key, coeff) in sum.terms() {
        if nonneg(coeff, false)? {
            x.insert(key.clone(), coeff.clone());
        } else {
            y.insert(key.clone(), coeff.neg());
        }
    }
    if y.is_empty() {
        // every term is a nonnegative multiple of a square root
        notes.push("all radical terms have nonnegative coefficients".to_string());
        return Ok(true);
    }
    if x.is_empty() {
        notes.push("no provably nonnegative part to square against".to_string());
        return Ok(false);
    }
    if budget == 0 {
        notes.push("squaring budget exhausted".to_string());
        return Ok(false);
    }
    notes.push(format!(
        "square both sides: {} radical term(s) against {}",
        x.terms.len(),
        y.terms.len()
    ));
    let squared = x.mul(&x).sub(&y.mul(&y));
    prove_nonneg(&squared, strict, budget - 1, nonneg, notes)
}
