//! Roots of polynomials inside the session field.
//!
//! Rational roots are found by divisor enumeration. Over a quadratic field
//! the remaining irreducible quadratic factors are split when their
//! discriminant becomes a square. Everything else raises `ExtensionNeeded`.

use std::sync::Arc;

use super::poly::QPoly;
use super::rational::Rational;
use super::{lift_poly, rational_poly, FieldElem, NumberField, SPoly, Scalar};
use crate::{Error, Result};

/// `s` with `s^2 = disc(minpoly)` for a quadratic field.
fn quadratic_sqrt_disc(field: &Arc<NumberField>) -> Option<(Rational, Scalar)> {
    if field.degree() != 2 {
        return None;
    }
    let m = field.minpoly();
    let (b, c) = (m.coeff(1), m.coeff(0));
    let d = &(&b * &b) - &(&Rational::from_int(4) * &c);
    let s = field.generator().mul(&Scalar::int(2)).add(&Scalar::Rat(b));
    Some((d, s))
}

/// A square root of `x` inside `field`, if one exists.
pub fn sqrt_in_field(x: &Scalar, field: &Arc<NumberField>) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    if let Some(r) = x.as_rational() {
        if let Some(q) = r.sqrt_exact() {
            return Some(Scalar::Rat(q));
        }
        let (d, s) = quadratic_sqrt_disc(field)?;
        let q = (r / &d).sqrt_exact()?;
        return Some(s.mul(&Scalar::Rat(q)));
    }
    // x = u + v s with s^2 = d; look for (a + b s)^2 = x with a, b rational.
    let (d, s) = quadratic_sqrt_disc(field)?;
    let c = x.coeffs_in(field);
    // x = c0 + c1 t and t = (s - b)/2
    let bm = field.minpoly().coeff(1);
    let v = &c[1] / &Rational::from_int(2);
    let u = &c[0] - &(&v * &bm);
    let n = (&(&u * &u) - &(&(&v * &v) * &d)).sqrt_exact()?;
    for sign in [1i64, -1] {
        let a2 = &(&u + &(&n * &Rational::from_int(sign))) / &Rational::from_int(2);
        if let Some(a) = a2.sqrt_exact() {
            if a.is_zero() {
                continue;
            }
            let b = &v / &(&a * &Rational::from_int(2));
            let cand = Scalar::Rat(a).add(&s.mul(&Scalar::Rat(b)));
            if cand.mul(&cand) == *x {
                return Some(cand);
            }
        }
    }
    None
}

fn quadratic_roots(p: &SPoly, field: &Arc<NumberField>) -> Result<Vec<Scalar>> {
    let p = p.monic();
    let (b, c) = (p.coeff(1), p.coeff(0));
    let disc = b.mul(&b).sub(&c.mul(&Scalar::int(4)));
    let Some(r) = sqrt_in_field(&disc, field) else {
        return Err(Error::extension(&p, format!("discriminant {disc} is not a square in the session field")));
    };
    let half = Scalar::frac(1, 2);
    let r1 = b.neg().add(&r).mul(&half);
    let r2 = b.neg().sub(&r).mul(&half);
    Ok(if r1 == r2 { vec![r1] } else { vec![r1, r2] })
}

/// Distinct roots of `p`, requiring that `p` splits into linear factors over
/// `field`. Sorted canonically.
pub fn split_roots(p: &SPoly, field: &Arc<NumberField>) -> Result<Vec<Scalar>> {
    let p = p.squarefree_part().monic();
    let mut roots = Vec::new();
    match p.degree() {
        None | Some(0) => return Ok(roots),
        Some(1) => {
            roots.push(p.coeff(0).neg());
            return Ok(roots);
        }
        _ => {}
    }
    if let Some(q) = rational_poly(&p) {
        let rr = q.rational_roots();
        let mut rest = q.clone();
        for r in &rr {
            rest = rest.divrem(&QPoly::linear_root(r)).0;
            roots.push(Scalar::Rat(r.clone()));
        }
        let mut pending = vec![rest];
        while let Some(f) = pending.pop() {
            match f.degree() {
                None | Some(0) => {}
                Some(1) => roots.push(Scalar::Rat(f.monic().coeff(0).neg())),
                Some(2) => roots.extend(quadratic_roots(&lift_poly(&f), field)?),
                Some(_) => {
                    if field.degree() == 2 {
                        if let Some(g) = f.find_factor_of_degree(2)? {
                            pending.push(f.divrem(&g).0);
                            pending.push(g);
                            continue;
                        }
                    }
                    return Err(Error::extension(&f, "no linear factors over the session field"));
                }
            }
        }
    } else {
        match p.degree() {
            Some(2) => roots.extend(quadratic_roots(&p, field)?),
            _ => return Err(Error::extension(&p, "polynomial with irrational coefficients of degree > 2")),
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_and_quadratic() {
        let q = NumberField::rationals();
        let p = lift_poly(&QPoly::from_ints(&[-6, 11, -6, 1]));
        assert_eq!(split_roots(&p, &q).unwrap(), vec![Scalar::int(1), Scalar::int(2), Scalar::int(3)]);
        let p = lift_poly(&QPoly::from_ints(&[-2, 0, 1]));
        assert!(matches!(split_roots(&p, &q), Err(Error::ExtensionNeeded { .. })));
        let k = NumberField::new(QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let r = split_roots(&lift_poly(&QPoly::from_ints(&[-8, 0, 1])), &k).unwrap();
        assert_eq!(r.len(), 2);
        for x in r {
            assert_eq!(x.mul(&x), Scalar::int(8));
        }
    }

    #[test]
    fn sqrt_of_extension_element() {
        let k = NumberField::new(QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let t = k.generator();
        // (1 + t)^2 = 3 + 2t
        let x = Scalar::int(3).add(&t.mul(&Scalar::int(2)));
        let r = sqrt_in_field(&x, &k).unwrap();
        assert_eq!(r.mul(&r), x);
    }
}
