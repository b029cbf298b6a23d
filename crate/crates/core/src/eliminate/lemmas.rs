//! The thirteen elimination lemmas.
//!
//! Each lemma rewrites one geometric quantity containing a constructed point
//! `Y` into a rational expression over earlier points only. Which lemma fires
//! is determined by the step kind that introduced `Y` crossed with the shape
//! of the quantity; ratio shapes additionally branch on a side condition
//! ("is A on the defining line?") that the caller decides with the prover.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{PointRef, Polynomial, RationalExpr};
use crate::error::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LemmaId {
    EL1,
    EL2,
    EL3,
    EL4,
    EL5,
    EL6,
    EL7,
    EL8,
    EL9,
    EL10,
    EL11,
    EL12,
    EL13,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Side-condition branch taken by a ratio lemma.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Branch {
    /// The ratio's first point lies on the step's defining line.
    OnLine,
    Otherwise,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::OnLine => write!(f, "on-line"),
            Branch::Otherwise => write!(f, "otherwise"),
        }
    }
}

fn s(a: &PointRef, b: &PointRef, c: &PointRef) -> Polynomial {
    Polynomial::area(a.clone(), b.clone(), c.clone())
}

fn s4(w: &PointRef, x: &PointRef, y: &PointRef, z: &PointRef) -> Polynomial {
    Polynomial::area4(w.clone(), x.clone(), y.clone(), z.clone())
}

fn p(a: &PointRef, b: &PointRef, c: &PointRef) -> Polynomial {
    Polynomial::pyth(a.clone(), b.clone(), c.clone())
}

fn p4(w: &PointRef, x: &PointRef, y: &PointRef, z: &PointRef) -> Polynomial {
    Polynomial::pyth4(w.clone(), x.clone(), y.clone(), z.clone())
}

fn rx(p: Polynomial) -> RationalExpr {
    RationalExpr::from_polynomial(p)
}

fn frac(num: Polynomial, den: Polynomial) -> Result<RationalExpr> {
    RationalExpr::new(num, den)
}

/// A linear quantity `G(.)`: either `S[a,b,.]` or `P[a,b,.]`.
#[derive(Clone, Copy)]
pub enum LinearKind {
    Area,
    Pyth,
}

fn g(kind: LinearKind, a: &PointRef, b: &PointRef, x: &PointRef) -> Polynomial {
    match kind {
        LinearKind::Area => s(a, b, x),
        LinearKind::Pyth => p(a, b, x),
    }
}

// --- Y introduced by an intersection (line UV with line PQ) ---

/// EL1, `AY/CY`.
pub fn el1_ratio_yy(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    u: &PointRef,
    v: &PointRef,
    pp: &PointRef,
    q: &PointRef,
) -> Result<RationalExpr> {
    if on_line {
        frac(s(a, pp, q), s(c, pp, q))
    } else {
        frac(s(a, u, v), s(c, u, v))
    }
}

/// EL1, `AY/CD`.
#[allow(clippy::too_many_arguments)]
pub fn el1_ratio_yd(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    d: &PointRef,
    u: &PointRef,
    v: &PointRef,
    pp: &PointRef,
    q: &PointRef,
) -> Result<RationalExpr> {
    if on_line {
        frac(s(a, pp, q), s4(c, pp, d, q))
    } else {
        frac(s(a, u, v), s4(c, u, d, v))
    }
}

/// EL5, `G(Y) = (S[U,P,Q] G(V) - S[V,P,Q] G(U)) / S[U,P,V,Q]`.
#[allow(clippy::too_many_arguments)]
pub fn el5_linear(
    kind: LinearKind,
    a: &PointRef,
    b: &PointRef,
    u: &PointRef,
    v: &PointRef,
    pp: &PointRef,
    q: &PointRef,
) -> Result<RationalExpr> {
    let num = s(u, pp, q)
        .mul(&g(kind, a, b, v))
        .sub(&s(v, pp, q).mul(&g(kind, a, b, u)));
    frac(num, s4(u, pp, v, q))
}

/// EL10, `P[A,Y,B]` for an intersection point.
///
/// The intersection is the affine combination `Y = alpha*V + beta*U` with
/// `alpha = S[U,P,Q]/S[U,P,V,Q]`, `beta = -S[V,P,Q]/S[U,P,V,Q]` (the EL5
/// coefficients), and for any affine combination with `alpha + beta = 1`
/// `P[A,Y,B] = alpha P[A,V,B] + beta P[A,U,B] - alpha beta P[U,V,U]`.
pub fn el10_quadratic(
    a: &PointRef,
    b: &PointRef,
    u: &PointRef,
    v: &PointRef,
    pp: &PointRef,
    q: &PointRef,
) -> Result<RationalExpr> {
    let supq = s(u, pp, q);
    let svpq = s(v, pp, q);
    let den = s4(u, pp, v, q);
    let first = frac(
        supq.mul(&p(a, v, b)).sub(&svpq.mul(&p(a, u, b))),
        den.clone(),
    )?;
    let second = frac(supq.mul(&svpq).mul(&p(u, v, u)), den.mul(&den))?;
    Ok(first.add(&second))
}

// --- Y introduced as the foot of the perpendicular from P to UV ---

/// EL2, `AY/CY`.
pub fn el2_ratio_yy(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    pp: &PointRef,
    u: &PointRef,
    v: &PointRef,
) -> Result<RationalExpr> {
    if on_line {
        let puv = p(pp, u, v);
        let pvu = p(pp, v, u);
        let num = puv.mul(&p4(pp, c, a, v)).add(&pvu.mul(&p4(pp, c, a, u)));
        let den = puv
            .mul(&p(c, v, c))
            .add(&pvu.mul(&p(c, u, c)))
            .sub(&puv.mul(&pvu));
        frac(num, den)
    } else {
        frac(s(a, u, v), s(c, u, v))
    }
}

/// EL2, `AY/CD`.
#[allow(clippy::too_many_arguments)]
pub fn el2_ratio_yd(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    d: &PointRef,
    pp: &PointRef,
    u: &PointRef,
    v: &PointRef,
) -> Result<RationalExpr> {
    if on_line {
        frac(p4(pp, c, a, d), p(c, d, c))
    } else {
        frac(s(a, u, v), s4(c, u, d, v))
    }
}

/// EL6, `G(Y) = (P[P,U,V] G(V) + P[P,V,U] G(U)) / P[U,V,U]`.
pub fn el6_linear(
    kind: LinearKind,
    a: &PointRef,
    b: &PointRef,
    pp: &PointRef,
    u: &PointRef,
    v: &PointRef,
) -> Result<RationalExpr> {
    let num = p(pp, u, v)
        .mul(&g(kind, a, b, v))
        .add(&p(pp, v, u).mul(&g(kind, a, b, u)));
    frac(num, p(u, v, u))
}

/// EL11, `P[A,Y,B]` for a foot, with `G(.) = P[A,.,B]`.
pub fn el11_quadratic(
    a: &PointRef,
    b: &PointRef,
    pp: &PointRef,
    u: &PointRef,
    v: &PointRef,
) -> Result<RationalExpr> {
    let puv = p(pp, u, v);
    let pvu = p(pp, v, u);
    let num = puv
        .mul(&p(a, v, b))
        .add(&pvu.mul(&p(a, u, b)))
        .sub(&puv.mul(&pvu));
    frac(num, p(u, v, u))
}

// --- Y introduced on the parallel to UV through W, WY/UV = r ---

/// EL3, `AY/CY`; the nested `ratio(x,w;u,v)` quantities are lemma-internal.
#[allow(clippy::too_many_arguments)]
pub fn el3_ratio_yy(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    w: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    if on_line {
        // (AW/UV + r) / (CW/UV + r)
        let num = rx(Polynomial::ratio(
            a.clone(),
            w.clone(),
            u.clone(),
            v.clone(),
        )?)
        .add(r);
        let den = rx(Polynomial::ratio(
            c.clone(),
            w.clone(),
            u.clone(),
            v.clone(),
        )?)
        .add(r);
        num.div(&den)
    } else {
        frac(s4(a, u, w, v), s4(c, u, w, v))
    }
}

/// EL3, `AY/CD`.
#[allow(clippy::too_many_arguments)]
pub fn el3_ratio_yd(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    d: &PointRef,
    w: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    if on_line {
        // (AW/UV + r) / (CD/UV)
        let num = rx(Polynomial::ratio(
            a.clone(),
            w.clone(),
            u.clone(),
            v.clone(),
        )?)
        .add(r);
        let den = rx(Polynomial::ratio(
            c.clone(),
            d.clone(),
            u.clone(),
            v.clone(),
        )?);
        num.div(&den)
    } else {
        frac(s4(a, u, w, v), s4(c, u, d, v))
    }
}

/// EL7, `G(Y) = G(W) + r (G(V) - G(U))`.
#[allow(clippy::too_many_arguments)]
pub fn el7_linear(
    kind: LinearKind,
    a: &PointRef,
    b: &PointRef,
    w: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let gw = rx(g(kind, a, b, w));
    let gv = rx(g(kind, a, b, v));
    let gu = rx(g(kind, a, b, u));
    Ok(gw.add(&r.mul(&gv.sub(&gu))))
}

/// EL12, `P[A,Y,B] = P[A,W,B] + r(P[A,V,B] - P[A,U,B] + 2 P[W,U,V]) - r(1-r) P[U,V,U]`.
#[allow(clippy::too_many_arguments)]
pub fn el12_quadratic(
    a: &PointRef,
    b: &PointRef,
    w: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let linear = p(a, v, b)
        .sub(&p(a, u, b))
        .add(&p(w, u, v).scale(&crate::algebra::Scalar::from_int(2)));
    let one_minus_r = RationalExpr::one().sub(r);
    Ok(rx(p(a, w, b))
        .add(&r.mul(&rx(linear)))
        .sub(&r.mul(&one_minus_r).mul(&rx(p(u, v, u)))))
}

// --- Y introduced on the perpendicular to UV at U, 4 S[U,V,Y] = r P[U,V,U] ---

/// EL4, `AY/CY`.
#[allow(clippy::too_many_arguments)]
pub fn el4_ratio_yy(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let quarter_r = r.scale(&crate::algebra::Scalar::ratio(1, 4));
    if on_line {
        let num = rx(s(a, u, v)).sub(&quarter_r.mul(&rx(p(u, v, u))));
        let den = rx(s(c, u, v)).sub(&quarter_r.mul(&rx(p(u, v, u))));
        num.div(&den)
    } else {
        frac(p(a, u, v), p(c, u, v))
    }
}

/// EL4, `AY/CD`.
#[allow(clippy::too_many_arguments)]
pub fn el4_ratio_yd(
    on_line: bool,
    a: &PointRef,
    c: &PointRef,
    d: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    if on_line {
        let quarter_r = r.scale(&crate::algebra::Scalar::ratio(1, 4));
        let num = rx(s(a, u, v)).sub(&quarter_r.mul(&rx(p(u, v, u))));
        num.div(&rx(s4(c, u, d, v)))
    } else {
        frac(p(a, u, v), p4(c, u, d, v))
    }
}

/// EL8, `S[A,B,Y] = S[A,B,P] - (r/4) P[P,A,Q,B]`.
pub fn el8_area(
    a: &PointRef,
    b: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let quarter_r = r.scale(&crate::algebra::Scalar::ratio(1, 4));
    Ok(rx(s(a, b, u)).sub(&quarter_r.mul(&rx(p4(u, a, v, b)))))
}

/// EL9, `P[A,B,Y] = P[A,B,P] - 4r S[P,A,Q,B]`.
pub fn el9_pyth(
    a: &PointRef,
    b: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let four_r = r.scale(&crate::algebra::Scalar::from_int(4));
    Ok(rx(p(a, b, u)).sub(&four_r.mul(&rx(s4(u, a, v, b)))))
}

/// EL13, `P[A,Y,B] = P[A,P,B] + r^2 P[P,Q,P] - 4r (S[A,P,Q] + S[B,P,Q])`.
pub fn el13_quadratic(
    a: &PointRef,
    b: &PointRef,
    u: &PointRef,
    v: &PointRef,
    r: &RationalExpr,
) -> Result<RationalExpr> {
    let r2 = r.mul(r);
    let four_r = r.scale(&crate::algebra::Scalar::from_int(4));
    Ok(rx(p(a, u, b))
        .add(&r2.mul(&rx(p(u, v, u))))
        .sub(&four_r.mul(&rx(s(a, u, v).add(&s(b, u, v))))))
}
