//! Geometric-quantity atoms and their canonical forms.
//!
//! An atom is one of: a signed area `S[a,b,c]`, a Pythagorean difference
//! `P[a,b,c]`, a squared distance `d2(a,b)` (appears only after Pythagorean
//! expansion), a ratio of signed distances along parallel segments
//! `ratio(a,b;c,d)`, or a symbolic parameter.
//!
//! Canonicalization sorts arguments by construction order (name order when
//! unbound), tracks the sign flips implied by `S[a,b,c] = S[c,a,b] = -S[a,c,b]`
//! and `P[a,b,c] = P[c,b,a]`, and collapses degenerate shapes (repeated
//! points) to constants on creation. Stored atoms are always canonical.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::point::PointRef;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Atom {
    /// Signed area of the triangle `abc`.
    Area(PointRef, PointRef, PointRef),
    /// Pythagorean difference `ab^2 + bc^2 - ac^2`; zero iff `ab` ⟂ `bc`.
    Pyth(PointRef, PointRef, PointRef),
    /// Squared distance `ab^2`.
    Dist2(PointRef, PointRef),
    /// Ratio of signed distances `ab/cd` along parallel segments.
    Ratio(PointRef, PointRef, PointRef, PointRef),
    /// A symbolic parameter.
    Param(Arc<str>),
}

/// Result of canonicalizing a raw atom: a sign/constant multiplier and the
/// canonical atom, or a bare constant when the shape degenerates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalAtom {
    pub coeff: Scalar,
    pub atom: Option<Atom>,
}

impl CanonicalAtom {
    fn constant(c: Scalar) -> Self {
        CanonicalAtom {
            coeff: c,
            atom: None,
        }
    }

    fn scaled(coeff: Scalar, atom: Atom) -> Self {
        CanonicalAtom {
            coeff,
            atom: Some(atom),
        }
    }
}

fn same_point(a: &PointRef, b: &PointRef) -> bool {
    a.name == b.name
}

/// Sort three points, returning the parity of the permutation applied.
fn sort3(a: PointRef, b: PointRef, c: PointRef) -> (PointRef, PointRef, PointRef, bool) {
    let mut v = [a, b, c];
    let mut odd = false;
    // three-element bubble sort, counting swaps
    for i in 0..2 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    let [x, y, z] = v;
    (x, y, z, odd)
}

/// Canonicalize a raw atom. Degenerate shapes collapse to constants; a ratio
/// with identical denominator points is a division by zero.
pub fn canonicalize(raw: Atom) -> Result<CanonicalAtom> {
    match raw {
        Atom::Area(a, b, c) => {
            if same_point(&a, &b) || same_point(&b, &c) || same_point(&a, &c) {
                return Ok(CanonicalAtom::constant(Scalar::zero()));
            }
            let (x, y, z, odd) = sort3(a, b, c);
            let sign = if odd { -Scalar::one() } else { Scalar::one() };
            Ok(CanonicalAtom::scaled(sign, Atom::Area(x, y, z)))
        }
        Atom::Pyth(a, b, c) => {
            if same_point(&a, &b) || same_point(&b, &c) {
                return Ok(CanonicalAtom::constant(Scalar::zero()));
            }
            if same_point(&a, &c) {
                // P[x,y,x] = 2*xy^2 is symmetric in its two points.
                let (lo, hi) = if b < a { (b, a) } else { (a, b) };
                return Ok(CanonicalAtom::scaled(
                    Scalar::one(),
                    Atom::Pyth(lo.clone(), hi, lo),
                ));
            }
            // P[a,b,c] = P[c,b,a]; orient with the smaller end first.
            if c < a {
                Ok(CanonicalAtom::scaled(Scalar::one(), Atom::Pyth(c, b, a)))
            } else {
                Ok(CanonicalAtom::scaled(Scalar::one(), Atom::Pyth(a, b, c)))
            }
        }
        Atom::Dist2(a, b) => {
            if same_point(&a, &b) {
                return Ok(CanonicalAtom::constant(Scalar::zero()));
            }
            let (lo, hi) = if b < a { (b, a) } else { (a, b) };
            Ok(CanonicalAtom::scaled(Scalar::one(), Atom::Dist2(lo, hi)))
        }
        Atom::Ratio(a, b, c, d) => {
            if same_point(&c, &d) {
                return Err(Error::DegenerateDenominator(format!(
                    "ratio({},{};{},{}) divides by the zero segment {}{}",
                    a, b, c, d, c, d
                )));
            }
            if same_point(&a, &b) {
                return Ok(CanonicalAtom::constant(Scalar::zero()));
            }
            let mut sign = Scalar::one();
            let (a, b) = if b < a {
                sign = -sign;
                (b, a)
            } else {
                (a, b)
            };
            let (c, d) = if d < c {
                sign = -sign;
                (d, c)
            } else {
                (c, d)
            };
            if same_point(&a, &c) && same_point(&b, &d) {
                return Ok(CanonicalAtom::constant(sign));
            }
            Ok(CanonicalAtom::scaled(sign, Atom::Ratio(a, b, c, d)))
        }
        Atom::Param(_) => Ok(CanonicalAtom::scaled(Scalar::one(), raw)),
    }
}

impl Atom {
    pub fn param(name: impl AsRef<str>) -> Atom {
        Atom::Param(Arc::from(name.as_ref()))
    }

    pub fn points(&self) -> impl Iterator<Item = &PointRef> {
        let slice: Vec<&PointRef> = match self {
            Atom::Area(a, b, c) | Atom::Pyth(a, b, c) => vec![a, b, c],
            Atom::Dist2(a, b) => vec![a, b],
            Atom::Ratio(a, b, c, d) => vec![a, b, c, d],
            Atom::Param(_) => vec![],
        };
        slice.into_iter()
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.points().any(|p| p.name() == name)
    }

    /// Highest construction order among the atom's points, if any.
    pub fn max_order(&self) -> Option<u32> {
        self.points().map(|p| p.order).max()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Area(a, b, c) => write!(f, "S[{},{},{}]", a, b, c),
            Atom::Pyth(a, b, c) => write!(f, "P[{},{},{}]", a, b, c),
            Atom::Dist2(a, b) => write!(f, "d2({},{})", a, b),
            Atom::Ratio(a, b, c, d) => write!(f, "ratio({},{};{},{})", a, b, c, d),
            Atom::Param(p) => write!(f, "{}", p),
        }
    }
}
