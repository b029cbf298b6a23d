//! Exact arithmetic with sums of rational multiples of square roots.
//!
//! A value is `sum_i q_i * sqrt(s_1 * s_2 * ...)` where every `s_j` is a
//! positive rational "primitive" radicand. Radicand keys are multisets of
//! primitives with pairs cancelled, so `sqrt(s)*sqrt(s) = s` holds
//! structurally. Signs are decided exactly by splitting into positive and
//! negative parts and squaring, which needs no rounding.

use std::collections::BTreeMap;

use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// A multiset of primitive radicands, pairwise cancelled and sorted.
type Radicand = Vec<Scalar>;

/// An exact value of the form `sum of q * sqrt(product of primitives)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RadValue {
    terms: BTreeMap<Radicand, Scalar>,
}

impl RadValue {
    pub fn zero() -> Self {
        RadValue::default()
    }

    pub fn rational(q: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        RadValue { terms }
    }

    /// `sqrt(s)` for a nonnegative rational `s`.
    pub fn sqrt_of_rational(s: &Scalar) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::SqrtOfNegative(s.to_string()));
        }
        if s.is_zero() {
            return Ok(RadValue::zero());
        }
        if let Some(root) = s.sqrt_exact() {
            return Ok(RadValue::rational(root));
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![s.clone()], Scalar::one());
        Ok(RadValue { terms })
    }

    pub fn as_rational(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (rad, q) = self.terms.iter().next().unwrap();
                rad.is_empty().then(|| q.clone())
            }
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn insert(&mut self, rad: Radicand, q: Scalar) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(rad) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &RadValue) -> RadValue {
        let mut out = self.clone();
        for (rad, q) in &other.terms {
            out.insert(rad.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &RadValue) -> RadValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RadValue {
        RadValue {
            terms: self.terms.iter().map(|(r, q)| (r.clone(), -q)).collect(),
        }
    }

    pub fn mul(&self, other: &RadValue) -> RadValue {
        let mut out = RadValue::zero();
        for (ra, qa) in &self.terms {
            for (rb, qb) in &other.terms {
                let (rad, extra) = merge_radicands(ra, rb);
                out.insert(rad, qa * qb * extra);
            }
        }
        out
    }

    /// Division, rationalizing by conjugates; supported for divisors with at
    /// most a handful of radical terms.
    pub fn div(&self, other: &RadValue) -> Result<RadValue> {
        if other.terms.is_empty() {
            return Err(Error::DegenerateDenominator(
                "numeric division by zero".to_string(),
            ));
        }
        if let Some(q) = other.as_rational() {
            let inv = q.recip().ok_or_else(|| {
                Error::DegenerateDenominator("numeric division by zero".to_string())
            })?;
            return Ok(RadValue {
                terms: self
                    .terms
                    .iter()
                    .map(|(r, c)| (r.clone(), c * &inv))
                    .collect(),
            });
        }
        // multiply numerator and denominator by a conjugate that removes the
        // largest radical term; bounded to keep this terminating
        let mut num = self.clone();
        let mut den = other.clone();
        for _ in 0..8 {
            if let Some(q) = den.as_rational() {
                let inv = q.recip().ok_or_else(|| {
                    Error::DegenerateDenominator("numeric division by zero".to_string())
                })?;
                return Ok(RadValue {
                    terms: num
                        .terms
                        .iter()
                        .map(|(r, c)| (r.clone(), c * &inv))
                        .collect(),
                });
            }
            // conjugate: flip the sign of the last (largest-key) radical term
            let (rad, q) = {
                let (r, c) = den.terms.iter().next_back().unwrap();
                (r.clone(), c.clone())
            };
            let mut conj = den.clone();
            conj.terms.remove(&rad);
            let mut flipped = RadValue::zero();
            flipped.insert(rad.clone(), -&q);
            let conj = conj.add(&flipped);
            if conj.terms.is_empty() {
                // den was a single radical term q*sqrt(R): invert directly
                let mut prod = Scalar::one();
                for s in &rad {
                    prod *= s;
                }
                // 1/(q*sqrt(R)) = sqrt(R)/(q*R)
                let scale = (q * prod).recip().ok_or_else(|| {
                    Error::DegenerateDenominator("numeric division by zero".to_string())
                })?;
                let mut root = RadValue::zero();
                root.insert(rad, scale);
                return Ok(num.mul(&root));
            }
            num = num.mul(&conj);
            den = den.mul(&conj);
        }
        Err(Error::RadicalDepthExceeded)
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> Result<i8> {
        self.sign_depth(12)
    }

    fn sign_depth(&self, depth: u32) -> Result<i8> {
        if self.terms.is_empty() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_negative() { -1 } else { 1 });
        }
        let all_pos = self.terms.values().all(|q| q.is_positive());
        if all_pos {
            return Ok(1);
        }
        let all_neg = self.terms.values().all(|q| q.is_negative());
        if all_neg {
            return Ok(-1);
        }
        if depth == 0 {
            return Err(Error::RadicalDepthExceeded);
        }
        // split into positive and negative parts and compare squares:
        // P, N >= 0 and sign(P - N) = sign(P^2 - N^2)
        let mut pos = RadValue::zero();
        let mut neg = RadValue::zero();
        for (rad, q) in &self.terms {
            if q.is_positive() {
                pos.insert(rad.clone(), q.clone());
            } else {
                neg.insert(rad.clone(), -q);
            }
        }
        let diff = pos.mul(&pos).sub(&neg.mul(&neg));
        diff.sign_depth(depth - 1)
    }

    pub fn is_zero_value(&self) -> Result<bool> {
        Ok(self.sign()? == 0)
    }
}

/// Multiply two radicand multisets: shared primitives cancel pairwise into
/// the rational factor returned alongside the merged multiset.
fn merge_radicands(a: &Radicand, b: &Radicand) -> (Radicand, Scalar) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut factor = Scalar::one();
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
                factor *= &a[i];
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (out, factor)
}
