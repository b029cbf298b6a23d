//! Rational expressions: quotients of atom polynomials.
//!
//! Equality is decided by cross-multiplication and expansion; no multivariate
//! gcd is attempted. Normalization strips shared scalar content and shared
//! monomial factors and keeps the denominator's leading coefficient positive,
//! which bounds growth without changing the represented value.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::atom::Atom;
use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct RationalExpr {
    num: Polynomial,
    den: Polynomial,
}

impl RationalExpr {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateDenominator(
                "rational expression with identically zero denominator".to_string(),
            ));
        }
        let mut e = RationalExpr { num, den };
        e.normalize();
        Ok(e)
    }

    pub fn zero() -> Self {
        RationalExpr {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalExpr::from_polynomial(Polynomial::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RationalExpr::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalExpr {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_atom(raw: Atom) -> Result<Self> {
        Ok(RationalExpr::from_polynomial(Polynomial::from_atom(raw)?))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// The value as a constant, when both sides are constants.
    pub fn as_constant(&self) -> Option<Scalar> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        // shared monomial factor
        let g = self.num.monomial_gcd().gcd(&self.den.monomial_gcd());
        if !g.is_unit() {
            self.num = self.num.div_monomial(&g);
            self.den = self.den.div_monomial(&g);
        }
        // shared scalar content
        let c = self.num.content().gcd(&self.den.content());
        if !c.is_zero() && !c.is_one() {
            self.num = self.num.div_scalar(&c);
            self.den = self.den.div_scalar(&c);
        }
        // positive leading coefficient in the denominator
        if let Some((_, lc)) = self.den.leading() {
            if lc.is_negative() {
                self.num = self.num.neg();
                self.den = self.den.neg();
            }
        }
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        let mut e = RationalExpr { num, den };
        e.normalize();
        e
    }

    pub fn sub(&self, other: &RationalExpr) -> RationalExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        let mut e = RationalExpr {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        e.normalize();
        e
    }

    pub fn scale(&self, c: &Scalar) -> RationalExpr {
        let mut e = RationalExpr {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        e.normalize();
        e
    }

    pub fn div(&self, other: &RationalExpr) -> Result<RationalExpr> {
        if other.num.is_zero() {
            return Err(Error::DegenerateDenominator(
                "division by an identically zero expression".to_string(),
            ));
        }
        let mut e = RationalExpr {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        };
        e.normalize();
        Ok(e)
    }

    pub fn recip(&self) -> Result<RationalExpr> {
        RationalExpr::one().div(self)
    }

    pub fn pow(&self, exp: i32) -> Result<RationalExpr> {
        if exp >= 0 {
            let mut e = RationalExpr {
                num: self.num.pow(exp as u32),
                den: self.den.pow(exp as u32),
            };
            e.normalize();
            Ok(e)
        } else {
            self.pow(-exp)?.recip()
        }
    }

    /// Structural equality of values, by cross-multiplication.
    pub fn equals(&self, other: &RationalExpr) -> bool {
        self.num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den))
            .is_zero()
    }

    /// Replace every occurrence of `target` (at any power) by `replacement`.
    pub fn substitute(&self, target: &Atom, replacement: &RationalExpr) -> Result<RationalExpr> {
        let (n_num, n_den) = self
            .num
            .substitute_atom(target, &replacement.num, &replacement.den);
        let (d_num, d_den) = self
            .den
            .substitute_atom(target, &replacement.num, &replacement.den);
        if d_num.is_zero() {
            return Err(Error::DegenerateDenominator(format!(
                "substituting {} = {} makes a denominator identically zero",
                target, replacement
            )));
        }
        // (n_num/n_den) / (d_num/d_den)
        let mut e = RationalExpr {
            num: n_num.mul(&d_den),
            den: n_den.mul(&d_num),
        };
        e.normalize();
        Ok(e)
    }

    /// Replace a whole round of atoms simultaneously. Common lemma
    /// denominators are kept factored and cancelled structurally between
    /// the numerator's and the denominator's substitutions, which keeps the
    /// expression from growing by repeated denominator powers.
    pub fn substitute_round(
        &self,
        reps: &std::collections::BTreeMap<Atom, RationalExpr>,
    ) -> Result<RationalExpr> {
        let (n_poly, mut n_factors) = self.num.substitute_simultaneous(reps);
        let (d_poly, mut d_factors) = self.den.substitute_simultaneous(reps);
        if d_poly.is_zero() {
            return Err(Error::DegenerateDenominator(
                "round substitution makes a denominator identically zero".to_string(),
            ));
        }
        // value = (n_poly / prod n_factors) / (d_poly / prod d_factors)
        //       = n_poly * prod d_factors / (d_poly * prod n_factors)
        // cancel factors the two products share
        for (nf, ne) in n_factors.iter_mut() {
            for (df, de) in d_factors.iter_mut() {
                if nf == df {
                    let k = (*ne).min(*de);
                    *ne -= k;
                    *de -= k;
                }
            }
        }
        let mut num = n_poly;
        for (f, e) in d_factors {
            if e > 0 {
                num = num.mul(&f.pow(e));
            }
        }
        let mut den = d_poly;
        for (f, e) in n_factors {
            if e > 0 {
                den = den.mul(&f.pow(e));
            }
        }
        RationalExpr::new(num, den)
    }

    /// Every distinct atom in numerator or denominator.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = Vec::new();
        for a in self.num.atoms().chain(self.den.atoms()) {
            if !out.contains(a) {
                out.push(a.clone());
            }
        }
        out
    }

    pub fn mentions_point(&self, name: &str) -> bool {
        self.num.atoms().any(|a| a.mentions(name)) || self.den.atoms().any(|a| a.mentions(name))
    }

    /// Expand every Pythagorean difference `P[a,b,c]` into squared distances
    /// `ab^2 + bc^2 - ac^2`. Called only after elimination has finished.
    pub fn expand_pythagoras(&self) -> RationalExpr {
        let mut e = self.clone();
        loop {
            let target = e.atoms().into_iter().find_map(|a| match a {
                Atom::Pyth(..) => Some(a),
                _ => None,
            });
            let Some(atom) = target else {
                return e;
            };
            let Atom::Pyth(a, b, c) = &atom else {
                unreachable!()
            };
            let expansion = Polynomial::dist2(a.clone(), b.clone())
                .add(&Polynomial::dist2(b.clone(), c.clone()))
                .sub(&Polynomial::dist2(a.clone(), c.clone()));
            e = e
                .substitute(&atom, &RationalExpr::from_polynomial(expansion))
                .expect("polynomial replacement cannot introduce a zero denominator");
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
