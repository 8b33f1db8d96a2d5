//! Dense univariate polynomials over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::FieldElem;

/// Coefficients low to high, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<Rational>;

impl<T: FieldElem> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    /// `t - r`
    pub fn linear_root(r: &T) -> Self {
        Poly { coeffs: vec![r.neg(), T::one()] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lead().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&T::from_rational(Rational::from_int(i as i64))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// True iff `gcd(p, p') = 1` (characteristic zero).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }
}

impl<T: FieldElem + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| Rational::from_int(v)).collect())
    }

    /// Primitive integer multiple (positive leading coefficient).
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let l = super::rational::lcm_denominators(self.coeffs.iter());
        let mut v: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
        if v.last().is_some_and(|c| c.is_negative()) {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
        v
    }

    /// Distinct rational roots.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.is_zero() {
            return roots;
        }
        if p.coeff(0).is_zero() {
            roots.push(Rational::ZERO);
            while !p.is_zero() && p.coeff(0).is_zero() {
                p = Poly::new(p.coeffs[1..].to_vec());
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.to_primitive_integer();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let (Some(d0), Some(dn)) = (divisors(&a0), divisors(&an)) else {
            return roots;
        };
        let mut cands: Vec<Rational> = Vec::new();
        for num in &d0 {
            for den in &dn {
                for s in [1i64, -1] {
                    let r = Rational::from_bigints(BigInt::from(*num) * s, BigInt::from(*den));
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        for r in cands {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Irreducibility over Q via rational roots and Kronecker's method.
    pub fn is_irreducible(&self) -> Result<bool, crate::Error> {
        let Some(n) = self.degree() else {
            return Ok(false);
        };
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        if !self.rational_roots().is_empty() {
            return Ok(false);
        }
        for d in 2..=n / 2 {
            if self.find_factor_of_degree(d)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some monic rational factor of exact degree `d`, via Kronecker interpolation.
    pub fn find_factor_of_degree(&self, d: usize) -> Result<Option<QPoly>, crate::Error> {
        let f = QPoly::new(self.to_primitive_integer().into_iter().map(Rational::from).collect());
        let mut pts: Vec<i64> = Vec::new();
        let mut vals: Vec<Vec<i64>> = Vec::new();
        let mut x = 0i64;
        while pts.len() <= d {
            let v = f.eval(&Rational::from_int(x));
            if !v.is_zero() {
                let Some(ds) = divisors(&v.numer().abs()) else {
                    return Err(crate::Error::Unsupported(format!(
                        "coefficients of {f} too large for factor search"
                    )));
                };
                let mut signed = Vec::new();
                for q in ds {
                    signed.push(q);
                    signed.push(-q);
                }
                pts.push(x);
                vals.push(signed);
            }
            x = if x <= 0 { 1 - x } else { -x };
        }
        let total: f64 = vals.iter().map(|v| v.len() as f64).product();
        if total > 5.0e6 {
            return Err(crate::Error::Unsupported(format!(
                "factor search for {f} exceeds budget"
            )));
        }
        let mut idx = vec![0usize; d + 1];
        loop {
            let ys: Vec<Rational> = idx.iter().zip(&vals).map(|(&i, v)| Rational::from_int(v[i])).collect();
            let xs: Vec<Rational> = pts.iter().map(|&p| Rational::from_int(p)).collect();
            let g = lagrange(&xs, &ys);
            if g.degree() == Some(d) && g.coeffs.iter().all(|c| c.is_integer()) {
                let (_, r) = f.divrem(&g);
                if r.is_zero() {
                    return Ok(Some(g.monic()));
                }
            }
            let mut k = 0;
            loop {
                if k > d {
                    return Ok(None);
                }
                idx[k] += 1;
                if idx[k] < vals[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> QPoly {
    let mut acc = QPoly::zero();
    for i in 0..xs.len() {
        let mut term = QPoly::constant(ys[i].clone());
        for j in 0..xs.len() {
            if i != j {
                let den = &xs[i] - &xs[j];
                term = term.mul(&QPoly::linear_root(&xs[j])).scale(&den.inv());
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Positive divisors by trial division; `None` when the number is too large.
fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.to_u64()?;
    if n == 0 {
        return Some(vec![1]);
    }
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i as i64);
            if i * i != n {
                large.push((n / i) as i64);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// `true` when `BigInt` is one.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, QPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&QPoly::from_ints(&[1, 1])), QPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn roots_and_irreducibility() {
        let p = QPoly::from_ints(&[6, -5, 1]);
        assert_eq!(p.rational_roots(), vec![Rational::from_int(2), Rational::from_int(3)]);
        assert!(QPoly::from_ints(&[-2, 0, 1]).is_irreducible().unwrap());
        // (t^2+1)(t^2+2) has no rational roots but factors.
        assert!(!QPoly::from_ints(&[2, 0, 3, 0, 1]).is_irreducible().unwrap());
        assert!(QPoly::from_ints(&[1, 1, 1, 1, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn squarefree() {
        assert!(!QPoly::from_ints(&[0, 0, 1]).is_squarefree());
        assert!(QPoly::from_ints(&[2, -3, 1]).is_squarefree());
    }
}
