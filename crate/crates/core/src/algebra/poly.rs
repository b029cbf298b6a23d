//! Multivariate polynomials over geometric-quantity atoms.
//!
//! Monomials are sorted atom/exponent vectors compared graded-lexicographically,
//! so iteration over a polynomial's terms is deterministic and traces are
//! reproducible. Coefficients are exact rationals and zero coefficients are
//! never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::atom::{canonicalize, Atom};
use super::point::PointRef;
use super::scalar::Scalar;
use crate::error::Result;

/// A product of canonical atoms with positive integer exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn exponent_of(&self, atom: &Atom) -> u32 {
        self.0
            .iter()
            .find(|(a, _)| a == atom)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.exponent_of(atom) > 0
    }

    /// The monomial with every occurrence of `atom` removed.
    pub fn without(&self, atom: &Atom) -> Monomial {
        Monomial(self.0.iter().filter(|(a, _)| a != atom).cloned().collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: Vec<(Atom, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    merged.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    merged.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        Monomial(merged)
    }

    /// Divide by `other` if every exponent of `other` is covered.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (a, e) in &self.0 {
            let mut rem = *e;
            if j < other.0.len() && other.0[j].0 < *a {
                return None; // divisor has an atom we lack
            }
            if j < other.0.len() && other.0[j].0 == *a {
                if other.0[j].1 > rem {
                    return None;
                }
                rem -= other.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((a.clone(), rem));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter().map(|(a, _)| a)
    }

    fn from_factors(mut factors: Vec<(Atom, u32)>) -> Monomial {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Monomial(factors)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic with priority on smaller atoms. The order is
        // multiplicative (m1 < m2 implies m1*n < m2*n), which the polynomial
        // square root relies on.
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((a1, e1)), Some((a2, e2))) => match a1.cmp(a2) {
                        // owning the smaller atom at positive power wins
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match e1.cmp(e2) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (a, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", a)?;
            } else {
                write!(f, "{}^{}", a, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial: a finite map from monomials to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

// Serialized as an ordered term list: JSON object keys must be strings, so
// the monomial-keyed map cannot serialize directly.
impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<(Monomial, Scalar)>::deserialize(deserializer)?;
        Ok(Polynomial {
            terms: terms.into_iter().collect(),
        })
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Polynomial { terms }
    }

    /// A polynomial from a raw atom; canonicalization happens here, so
    /// degenerate atoms collapse to constants and never get stored.
    pub fn from_atom(raw: Atom) -> Result<Self> {
        let canon = canonicalize(raw)?;
        Ok(match canon.atom {
            None => Polynomial::constant(canon.coeff),
            Some(atom) => {
                let mut terms = BTreeMap::new();
                if !canon.coeff.is_zero() {
                    terms.insert(Monomial::atom(atom), canon.coeff);
                }
                Polynomial { terms }
            }
        })
    }

    /// Signed area `S[a,b,c]` as a polynomial (degenerate shapes collapse).
    pub fn area(a: PointRef, b: PointRef, c: PointRef) -> Self {
        Polynomial::from_atom(Atom::Area(a, b, c)).expect("area atoms cannot fail")
    }

    /// Pythagorean difference `P[a,b,c]` as a polynomial.
    pub fn pyth(a: PointRef, b: PointRef, c: PointRef) -> Self {
        Polynomial::from_atom(Atom::Pyth(a, b, c)).expect("pyth atoms cannot fail")
    }

    pub fn dist2(a: PointRef, b: PointRef) -> Self {
        Polynomial::from_atom(Atom::Dist2(a, b)).expect("dist2 atoms cannot fail")
    }

    pub fn ratio(a: PointRef, b: PointRef, c: PointRef, d: PointRef) -> Result<Self> {
        Polynomial::from_atom(Atom::Ratio(a, b, c, d))
    }

    pub fn param(name: impl AsRef<str>) -> Self {
        Polynomial::from_atom(Atom::param(name)).expect("params cannot fail")
    }

    /// Quaternary signed area `S[w,x,y,z] = S[w,x,y] + S[w,y,z]`.
    pub fn area4(w: PointRef, x: PointRef, y: PointRef, z: PointRef) -> Self {
        Polynomial::area(w.clone(), x, y.clone()).add(&Polynomial::area(w, y, z))
    }

    /// Quaternary Pythagorean difference `P[w,x,y,z] = P[w,x,z] - P[y,x,z]`.
    pub fn pyth4(w: PointRef, x: PointRef, y: PointRef, z: PointRef) -> Self {
        Polynomial::pyth(w, x.clone(), z.clone()).sub(&Polynomial::pyth(y, x, z))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn insert_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.terms.values() {
            acc = acc.gcd(c);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Componentwise-minimum monomial dividing every term.
    pub fn monomial_gcd(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::unit();
        };
        let mut acc = first.clone();
        for m in iter {
            acc = acc.gcd(m);
            if acc.is_unit() {
                break;
            }
        }
        acc
    }

    /// Divide every term by `c`.
    pub fn div_scalar(&self, c: &Scalar) -> Polynomial {
        assert!(!c.is_zero());
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v / c)).collect(),
        }
    }

    /// Divide every term by a monomial known to divide them all.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.div(m).expect("monomial must divide"), v.clone()))
                .collect(),
        }
    }

    /// Every distinct atom occurring in the polynomial.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.terms.keys().flat_map(|m| m.atoms())
    }

    /// Highest power of `atom` in any term.
    pub fn max_power_of(&self, atom: &Atom) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent_of(atom))
            .max()
            .unwrap_or(0)
    }

    /// Replace `atom` by the polynomial fraction `num/den`. For a maximal
    /// power k of the atom, the exact result is `(out, den^k)` with
    /// `self = out / den^k` after the replacement.
    pub fn substitute_atom(
        &self,
        atom: &Atom,
        num: &Polynomial,
        den: &Polynomial,
    ) -> (Polynomial, Polynomial) {
        let max_k = self.max_power_of(atom);
        if max_k == 0 {
            return (self.clone(), Polynomial::one());
        }
        let mut num_pows = Vec::with_capacity(max_k as usize + 1);
        let mut den_pows = Vec::with_capacity(max_k as usize + 1);
        num_pows.push(Polynomial::one());
        den_pows.push(Polynomial::one());
        for i in 1..=max_k as usize {
            num_pows.push(num_pows[i - 1].mul(num));
            den_pows.push(den_pows[i - 1].mul(den));
        }
        let mut out = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let k = mono.exponent_of(atom) as usize;
            let rest = mono.without(atom);
            let mut term = Polynomial {
                terms: BTreeMap::from([(rest, coeff.clone())]),
            };
            if k > 0 {
                term = term.mul(&num_pows[k]);
            }
            if k < max_k as usize {
                term = term.mul(&den_pows[max_k as usize - k]);
            }
            out = out.add(&term);
        }
        (out, den_pows[max_k as usize].clone())
    }

    /// Replace several atoms at once, keeping one common denominator per
    /// distinct replacement denominator. Returns the numerator and the
    /// denominator in factored form `[(factor, power)]`; the value is
    /// `self = num / prod(factor^power)`.
    ///
    /// Substituting a round's atoms simultaneously (instead of one at a
    /// time) keeps repeated lemma denominators from piling up power by
    /// power in the numerator.
    pub fn substitute_simultaneous(
        &self,
        reps: &BTreeMap<Atom, super::rexpr::RationalExpr>,
    ) -> (Polynomial, Vec<(Polynomial, u32)>) {
        let targets: Vec<(&Atom, &super::rexpr::RationalExpr)> = reps
            .iter()
            .filter(|(a, _)| self.max_power_of(a) > 0)
            .collect();
        if targets.is_empty() {
            return (self.clone(), Vec::new());
        }
        // group targets by structurally identical non-trivial denominator
        let one = Polynomial::one();
        let mut groups: BTreeMap<&Polynomial, Vec<&Atom>> = BTreeMap::new();
        for (a, r) in &targets {
            if *r.den() != one {
                groups.entry(r.den()).or_default().push(a);
            }
        }
        // per-group maximum of the summed exponents over the monomials
        let mut group_max: BTreeMap<&Polynomial, u32> = BTreeMap::new();
        for (mono, _) in self.terms() {
            for (den, atoms) in &groups {
                let total: u32 = atoms.iter().map(|a| mono.exponent_of(a)).sum();
                let entry = group_max.entry(den).or_insert(0);
                *entry = (*entry).max(total);
            }
        }
        // numerator powers per atom
        let mut num_pows: BTreeMap<&Atom, Vec<Polynomial>> = BTreeMap::new();
        for (a, r) in &targets {
            let max_k = self.max_power_of(a) as usize;
            let mut pows = Vec::with_capacity(max_k + 1);
            pows.push(Polynomial::one());
            for i in 1..=max_k {
                pows.push(pows[i - 1].mul(r.num()));
            }
            num_pows.insert(a, pows);
        }
        // denominator powers per group
        let mut den_pows: BTreeMap<&Polynomial, Vec<Polynomial>> = BTreeMap::new();
        for (den, e) in &group_max {
            let mut pows = Vec::with_capacity(*e as usize + 1);
            pows.push(Polynomial::one());
            for i in 1..=*e as usize {
                pows.push(pows[i - 1].mul(den));
            }
            den_pows.insert(den, pows);
        }
        let mut out = Polynomial::zero();
        for (mono, coeff) in self.terms() {
            let mut rest = mono.clone();
            let mut term = Polynomial::constant(coeff.clone());
            for (a, _) in &targets {
                let k = mono.exponent_of(a) as usize;
                if k > 0 {
                    rest = rest.without(a);
                    term = term.mul(&num_pows[*a][k]);
                }
            }
            for (den, atoms) in &groups {
                let used: u32 = atoms.iter().map(|a| mono.exponent_of(a)).sum();
                let deficit = group_max[den] - used;
                if deficit > 0 {
                    term = term.mul(&den_pows[den][deficit as usize]);
                }
            }
            term = term.mul(&Polynomial {
                terms: BTreeMap::from([(rest, Scalar::one())]),
            });
            out = out.add(&term);
        }
        let factors = group_max
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(den, e)| (den.clone(), e))
            .collect();
        (out, factors)
    }

    /// Exact polynomial square root, if one exists.
    pub fn try_sqrt(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (lead_m, lead_c) = self.leading()?;
        let root_c = lead_c.sqrt_exact()?;
        let root_m = Monomial::from_factors(
            lead_m
                .factors()
                .iter()
                .map(|(a, e)| {
                    if e % 2 == 0 {
                        Some((a.clone(), e / 2))
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<_>>>()?,
        );
        let mut root = Polynomial {
            terms: BTreeMap::from([(root_m.clone(), root_c.clone())]),
        };
        let two_lead = Scalar::from_int(2) * root_c;
        // long division against the fixed leading term of the root
        let max_iters = self.terms.len() * 2 + 4;
        for _ in 0..max_iters {
            let rem = self.sub(&root.mul(&root));
            if rem.is_zero() {
                return Some(root);
            }
            let (rm, rc) = rem.leading()?;
            let qm = rm.div(&root_m)?;
            let qc = rc / &two_lead;
            let mut next = Polynomial::zero();
            next.insert_term(qm, qc);
            root = root.add(&next);
        }
        None
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // print leading terms first
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}
