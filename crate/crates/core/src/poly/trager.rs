//! Factorization over a number field by the norm method: shift until the norm
//! is squarefree, factor the norm over Q and pull factors back with gcds.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{factor_over_q, Factorization, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::numfield::{NFElement, NumberField};

/// Upper bound on the shifts tried; only finitely many shifts can fail.
const MAX_SHIFT: i64 = 64;

/// `N(X) = Res_y(f(y), g(X, y)) = N_{L/Q}(g(X))`, computed by evaluating the
/// norm at `deg N + 1` rational points and interpolating.
pub fn norm_polynomial(field: &NumberField, g: &Poly<NFElement>) -> Poly<BigRational> {
    let ring = field.poly_ring();
    let d = field.degree() * g.degree().unwrap_or(0);
    let points: Vec<BigRational> = (0..=d as i64).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
    let values: Vec<BigRational> = points
        .iter()
        .map(|c| field.norm(&ring.eval(g, &field.from_rational(c.clone()))))
        .collect();
    interpolate(&points, &values)
}

/// Newton interpolation through `(points[i], values[i])`.
fn interpolate(points: &[BigRational], values: &[BigRational]) -> Poly<BigRational> {
    let qr = PolyRing::new(Rationals);
    let n = points.len();
    let mut coef = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i] - &points[i - j]);
        }
    }
    let mut out = qr.zero();
    for i in (0..n).rev() {
        out = qr.add(&qr.mul(&out, &qr.linear(&points[i])), &qr.constant(coef[i].clone()));
    }
    out
}

/// `g(X + c)` for `c` in `L`.
fn shift(ring: &PolyRing<NumberField>, g: &Poly<NFElement>, c: &NFElement) -> Poly<NFElement> {
    let x_plus_c = ring.from_coeffs(vec![c.clone(), ring.base.one()]);
    ring.compose(g, &x_plus_c)
}

/// Complete factorization of a squarefree polynomial over `L` into monic irreducibles.
pub fn factor_over_number_field(field: &NumberField, f: &Poly<NFElement>) -> Result<Factorization<NFElement>> {
    let ring = field.poly_ring();
    let unit = f
        .leading()
        .cloned()
        .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?;
    let g = ring.monic(f);
    if g.degree() == Some(0) {
        return Ok(Factorization { unit, factors: Vec::new() });
    }
    if !ring.is_separable(&g) {
        return Err(Error::SquarefreeRequired);
    }
    if g.degree() == Some(1) {
        return Ok(Factorization { unit, factors: vec![(g, 1)] });
    }
    let x = field.generator();
    let qr = PolyRing::new(Rationals);
    for s in 0..=MAX_SHIFT {
        // g_s(X) = g(X - s x)
        let sx = field.mul(&field.from_int(s), &x);
        let gs = shift(&ring, &g, &field.neg(&sx));
        let norm = norm_polynomial(field, &gs);
        if !qr.is_separable(&norm) {
            continue;
        }
        let mut factors = Vec::new();
        for (ni, _) in factor_over_q(&norm)?.factors {
            let h = ring.gcd(&gs, &field.lift_poly(&ni))?;
            if h.degree().unwrap_or(0) > 0 {
                factors.push((ring.monic(&shift(&ring, &h, &sx)), 1));
            }
        }
        ring.sort_factors(&mut factors);
        let out = Factorization { unit, factors };
        if &ring.expand(&out) != f {
            return Err(Error::Consistency("number-field factorization does not re-multiply".into()));
        }
        return Ok(out);
    }
    Err(Error::Consistency("no shift with squarefree norm found".into()))
}
