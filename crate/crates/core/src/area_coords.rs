//! Area coordinates: the final reduction for conjectures over free points.
//!
//! An orthonormal frame is installed by designating the first two free
//! points `O` and `X` and adding a frame point `Y` on the perpendicular at
//! `O` with `4*S[O,X,Y] = P[O,X,O]`. Signed areas then rewrite to the
//! coordinate quantities `S[O,X,A]`, `S[O,Y,A]` and squared distances to
//! squares of coordinate differences; those coordinates are independent, so
//! the rewritten conjecture is decidable. Only even powers of the frame area
//! `S[O,X,Y]` are reduced (to powers of 1/4); a surviving odd power means
//! the statement is orientation-dependent and is refused rather than given
//! a guessed sign.

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, ExprTree, PointRef, Polynomial, RationalExpr, Scalar};
use crate::construction::{Construction, StepKind};
use crate::error::{Error, Result};

/// An installed orthonormal frame.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Frame {
    pub o: PointRef,
    pub x: PointRef,
    pub y: PointRef,
}

impl Frame {
    /// The frame area atom `S[O,X,Y]` in canonical form.
    fn frame_atom(&self) -> Atom {
        let p = Polynomial::area(self.o.clone(), self.x.clone(), self.y.clone());
        let (m, c) = p.leading().expect("frame points are distinct");
        debug_assert!(c.is_one());
        m.factors()[0].0.clone()
    }

    /// Whether an atom is already a coordinate (or the frame area itself):
    /// an area quantity mentioning `O` together with `X` or `Y`.
    fn is_coordinate(&self, atom: &Atom) -> bool {
        match atom {
            Atom::Area(a, b, c) => {
                let names: Vec<&str> = vec![a.name(), b.name(), c.name()];
                let has = |p: &PointRef| names.contains(&p.name());
                has(&self.o) && (has(&self.x) || has(&self.y))
            }
            _ => false,
        }
    }
}

/// Designate the first two free points as the frame origin and x-axis and
/// append the frame point via a perpendicular step with parameter 1.
/// Idempotent: re-installing on an already framed construction returns the
/// existing frame.
pub fn install_frame(c: &Construction) -> Result<(Construction, Frame)> {
    let mut free = c.free_points();
    let o = free.next().ok_or(Error::TooFewFreePoints)?.point_ref();
    let x = free.next().ok_or(Error::TooFewFreePoints)?.point_ref();

    // already framed? the last step is exactly ECS5(y, o, x, 1)
    if let Some(last) = c.steps().last() {
        if let StepKind::OnPerp { u, v, r } = &last.kind {
            if u == o.name() && v == x.name() && *r == ExprTree::int(1) {
                return Ok((
                    c.clone(),
                    Frame {
                        o,
                        x,
                        y: last.point_ref(),
                    },
                ));
            }
        }
    }

    let mut name = String::from("Y");
    let mut k = 0u32;
    while c.contains_point(&name) || c.has_param(&name) {
        k += 1;
        name = format!("Y{}", k);
    }
    let extended = c.append_step(
        name,
        StepKind::OnPerp {
            u: o.name().to_string(),
            v: x.name().to_string(),
            r: ExprTree::int(1),
        },
    )?;
    let y = extended.steps().last().unwrap().point_ref();
    Ok((extended, Frame { o, x, y }))
}

/// ACL1: `S[A,B,C]` over free points in terms of coordinates, divided by the
/// frame area.
fn acl1(frame: &Frame, a: &PointRef, b: &PointRef, c: &PointRef) -> (Polynomial, u32) {
    let o = &frame.o;
    let x = &frame.x;
    let y = &frame.y;
    let soy = |p: &PointRef| Polynomial::area(o.clone(), y.clone(), p.clone());
    let sox = |p: &PointRef| Polynomial::area(o.clone(), x.clone(), p.clone());
    let num = soy(b)
        .sub(&soy(c))
        .mul(&sox(a))
        .add(&soy(c).sub(&soy(a)).mul(&sox(b)))
        .add(&soy(a).sub(&soy(b)).mul(&sox(c)));
    (num, 1)
}

/// ACL2 with an orthonormal frame: `AB^2` in terms of coordinates, divided
/// by the squared frame area.
fn acl2(frame: &Frame, a: &PointRef, b: &PointRef) -> (Polynomial, u32) {
    let o = &frame.o;
    let x = &frame.x;
    let y = &frame.y;
    let soy = |p: &PointRef| Polynomial::area(o.clone(), y.clone(), p.clone());
    let sox = |p: &PointRef| Polynomial::area(o.clone(), x.clone(), p.clone());
    let dy = soy(a).sub(&soy(b));
    let dx = sox(a).sub(&sox(b));
    (dy.mul(&dy).add(&dx.mul(&dx)), 2)
}

/// Split a polynomial by the parity of the frame-area power and reduce even
/// powers via ACL3 (`S[O,X,Y]^2 = 1/4`): returns `(even, odd)` with
/// `poly = even + S[O,X,Y] * odd` and both parts free of the frame atom.
fn split_frame_parity(poly: &Polynomial, frame_atom: &Atom) -> (Polynomial, Polynomial) {
    let quarter = Scalar::ratio(1, 4);
    let mut even = Polynomial::zero();
    let mut odd = Polynomial::zero();
    for (mono, coeff) in poly.terms() {
        let k = mono.exponent_of(frame_atom);
        let rest = mono.without(frame_atom);
        let scaled = coeff * &quarter.pow((k / 2) as i32);
        if k % 2 == 0 {
            even.insert_term(rest, scaled);
        } else {
            odd.insert_term(rest, scaled);
        }
    }
    (even, odd)
}

/// Rewrite an expression over free points into area coordinates.
///
/// The result is value-preserving for any model of the framed construction:
/// coordinate atoms stay put, other signed areas go through ACL1, squared
/// distances through ACL2, even frame-area powers collapse to 1/4 per ACL3,
/// and a residual denominator of the form `c * S[O,X,Y]^k` is rationalized
/// away. An odd frame-area power surviving in the numerator is an error
/// (orientation-dependent statement); a ratio atom has no rewrite at all.
pub fn to_area_coordinates(e: &RationalExpr, frame: &Frame) -> Result<RationalExpr> {
    let frame_atom = frame.frame_atom();
    let rewrite_poly = |poly: &Polynomial| -> Result<(Polynomial, u32)> {
        // returns (numerator, frame-power of the denominator)
        let mut num = Polynomial::zero();
        let mut den_pow = 0u32;
        // first pass: find the highest denominator power needed
        let mut monos: Vec<(Polynomial, u32)> = Vec::new();
        for (mono, coeff) in poly.terms() {
            let mut term_num = Polynomial::constant(coeff.clone());
            let mut term_pow = 0u32;
            for (atom, exp) in mono.factors() {
                let (base, pow): (Polynomial, u32) = if *atom == frame_atom
                    || frame.is_coordinate(atom)
                    || matches!(atom, Atom::Param(_))
                {
                    (
                        {
                            let mut p = Polynomial::zero();
                            p.insert_term(
                                crate::algebra::Monomial::atom(atom.clone()),
                                Scalar::one(),
                            );
                            p
                        },
                        0,
                    )
                } else {
                    match atom {
                        Atom::Area(a, b, c) => acl1(frame, a, b, c),
                        Atom::Dist2(a, b) => acl2(frame, a, b),
                        other => {
                            return Err(Error::UnsupportedAtom(other.to_string()));
                        }
                    }
                };
                term_num = term_num.mul(&base.pow(*exp));
                term_pow += pow * exp;
            }
            monos.push((term_num, term_pow));
            den_pow = den_pow.max(term_pow);
        }
        // second pass: put every term over the common denominator S^den_pow,
        // multiplying by S^2 = 1/4 pairs where possible
        for (term_num, term_pow) in monos.drain(..) {
            let deficit = den_pow - term_pow;
            let mut t = term_num;
            // S^deficit: even part becomes a scalar, odd part keeps one S
            let quarter_pairs = deficit / 2;
            if quarter_pairs > 0 {
                t = t.scale(
                    &Scalar::ratio(4, 1)
                        .pow(quarter_pairs as i32)
                        .recip()
                        .unwrap(),
                );
            }
            if deficit % 2 == 1 {
                let mut s = Polynomial::zero();
                s.insert_term(
                    crate::algebra::Monomial::atom(frame_atom.clone()),
                    Scalar::one(),
                );
                t = t.mul(&s);
            }
            num = num.add(&t);
        }
        Ok((num, den_pow))
    };

    let (mut num, num_pow) = rewrite_poly(e.num())?;
    let (mut den, den_pow) = rewrite_poly(e.den())?;
    // equalize the frame powers: value = (num / S^a) / (den / S^b)
    //                                  = num * S^(b-a adjustments) / den ...
    // multiply the side with the smaller power by S^(diff), using S^2 = 1/4.
    let diff = num_pow.abs_diff(den_pow);
    let bump = |p: &mut Polynomial, by: u32| {
        let quarter_pairs = by / 2;
        if quarter_pairs > 0 {
            *p = p.scale(
                &Scalar::ratio(4, 1)
                    .pow(quarter_pairs as i32)
                    .recip()
                    .unwrap(),
            );
        }
        if by % 2 == 1 {
            let mut s = Polynomial::zero();
            s.insert_term(
                crate::algebra::Monomial::atom(frame_atom.clone()),
                Scalar::one(),
            );
            *p = p.mul(&s);
        }
    };
    if num_pow < den_pow {
        bump(&mut num, diff);
    } else if den_pow < num_pow {
        bump(&mut den, diff);
    }

    // reduce even frame powers everywhere
    let (num_even, num_odd) = split_frame_parity(&num, &frame_atom);
    let (den_even, den_odd) = split_frame_parity(&den, &frame_atom);

    // rationalize the denominator: multiply both sides by (den_even - S*den_odd)
    // so the denominator becomes den_even^2 - (1/4) den_odd^2, frame-free.
    let (final_num_even, final_num_odd, final_den) = if den_odd.is_zero() {
        (num_even, num_odd, den_even)
    } else {
        let new_den = den_even
            .mul(&den_even)
            .sub(&den_odd.mul(&den_odd).scale(&Scalar::ratio(1, 4)));
        let ne = num_even
            .mul(&den_even)
            .sub(&num_odd.mul(&den_odd).scale(&Scalar::ratio(1, 4)));
        let no = num_odd.mul(&den_even).sub(&num_even.mul(&den_odd));
        (ne, no, new_den)
    };

    if final_den.is_zero() {
        return Err(Error::DegenerateDenominator(
            "area-coordinate denominator is identically zero".to_string(),
        ));
    }
    if !final_num_odd.is_zero() {
        if final_num_even.is_zero() {
            // numerator = S * odd with S nonzero: value-equivalent to odd up
            // to the invertible frame factor, but only for zero tests; keep
            // the explicit frame factor so evaluation stays faithful.
            let mut s = Polynomial::zero();
            s.insert_term(
                crate::algebra::Monomial::atom(frame_atom.clone()),
                Scalar::one(),
            );
            return RationalExpr::new(s.mul(&final_num_odd), final_den);
        }
        return Err(Error::ResidualOddPower);
    }
    RationalExpr::new(final_num_even, final_den)
}

/// Zero test for a coordinate-rewritten expression: the numerator may carry
/// one explicit frame factor, which never vanishes.
pub fn coordinate_zero(e: &RationalExpr, frame: &Frame) -> bool {
    let frame_atom = frame.frame_atom();
    let (even, odd) = split_frame_parity(e.num(), &frame_atom);
    even.is_zero() && odd.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{realize, Assignments};

    fn three_free() -> Construction {
        Construction::new().append_free(&["A", "B", "C"]).unwrap()
    }

    fn concrete_frame_model(
        c: &Construction,
        seed: u64,
    ) -> (crate::oracle::NumericModel, Frame, Construction) {
        let (framed, frame) = install_frame(c).unwrap();
        let mut fixed = Assignments::default();
        fixed.points.insert(
            frame.o.name().to_string(),
            (Scalar::from_int(0), Scalar::from_int(0)),
        );
        fixed.points.insert(
            frame.x.name().to_string(),
            (Scalar::from_int(1), Scalar::from_int(0)),
        );
        let model = realize(&framed, seed, Some(&fixed)).unwrap();
        (model, frame, framed)
    }

    #[test]
    fn frame_point_lands_at_unit_y() {
        let (model, frame, _) = concrete_frame_model(&three_free(), 5);
        assert_eq!(
            model.points[frame.y.name()],
            (Scalar::from_int(0), Scalar::from_int(1))
        );
    }

    #[test]
    fn install_is_idempotent() {
        let c = three_free();
        let (framed, frame) = install_frame(&c).unwrap();
        let (again, frame2) = install_frame(&framed).unwrap();
        assert_eq!(framed, again);
        assert_eq!(frame, frame2);
    }

    #[test]
    fn too_few_free_points() {
        let c = Construction::new().append_free(&["A"]).unwrap();
        assert!(matches!(install_frame(&c), Err(Error::TooFewFreePoints)));
    }

    #[test]
    fn frame_area_square_reduces_to_a_quarter() {
        let c = three_free();
        let (framed, frame) = install_frame(&c).unwrap();
        let s_oxy = Polynomial::area(
            framed.point_ref("A").unwrap(),
            framed.point_ref("B").unwrap(),
            frame.y.clone(),
        );
        let e = RationalExpr::from_polynomial(s_oxy.mul(&s_oxy));
        let out = to_area_coordinates(&e, &frame).unwrap();
        assert!(out.equals(&RationalExpr::constant(Scalar::ratio(1, 4))));
    }

    #[test]
    fn coordinate_atom_is_fixed() {
        let c = three_free();
        let (framed, frame) = install_frame(&c).unwrap();
        let s_oxa = RationalExpr::from_polynomial(Polynomial::area(
            frame.o.clone(),
            frame.x.clone(),
            framed.point_ref("C").unwrap(),
        ));
        let out = to_area_coordinates(&s_oxa, &frame).unwrap();
        assert!(out.equals(&s_oxa));
    }

    #[test]
    fn rewrite_is_complete() {
        // nothing but coordinate atoms (and the frame area) survives
        let c = Construction::new()
            .append_free(&["O", "X", "A", "B", "C"])
            .unwrap();
        let (framed, frame) = install_frame(&c).unwrap();
        let a = framed.point_ref("A").unwrap();
        let b = framed.point_ref("B").unwrap();
        let cc = framed.point_ref("C").unwrap();
        let e = RationalExpr::from_polynomial(
            Polynomial::area(a.clone(), b.clone(), cc.clone())
                .mul(&Polynomial::area(a.clone(), b.clone(), cc.clone()))
                .add(&Polynomial::dist2(a.clone(), b.clone()).mul(&Polynomial::dist2(b, cc))),
        );
        let out = to_area_coordinates(&e, &frame).unwrap();
        for atom in out.atoms() {
            match &atom {
                Atom::Area(..) => {
                    assert!(
                        frame.is_coordinate(&atom) || atom == frame.frame_atom(),
                        "non-coordinate area survived: {}",
                        atom
                    );
                }
                Atom::Param(_) => {}
                other => panic!("unexpected atom kind after rewrite: {}", other),
            }
        }
        // a surviving ratio atom has no rewrite
        let ratio = RationalExpr::from_polynomial(
            Polynomial::ratio(
                framed.point_ref("A").unwrap(),
                framed.point_ref("B").unwrap(),
                framed.point_ref("A").unwrap(),
                framed.point_ref("C").unwrap(),
            )
            .unwrap(),
        );
        assert!(matches!(
            to_area_coordinates(&ratio, &frame),
            Err(Error::UnsupportedAtom(_))
        ));
    }

    #[test]
    fn squared_distance_rewrite_matches_numerically() {
        let c = three_free();
        let (model, frame, framed) = concrete_frame_model(&c, 11);
        let a = framed.point_ref("A").unwrap();
        let cpt = framed.point_ref("C").unwrap();
        let e = RationalExpr::from_polynomial(Polynomial::dist2(a.clone(), cpt.clone()));
        let out = to_area_coordinates(&e, &frame).unwrap();
        assert_eq!(
            crate::oracle::eval_rexpr(&e, &model).unwrap(),
            crate::oracle::eval_rexpr(&out, &model).unwrap()
        );
    }
}
