//! Number fields `Q[t]/(m)` and their elements.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::poly::QPoly;
use super::rational::Rational;
use super::FieldElem;
use crate::Error;

/// A simple algebraic extension of the rationals given by a monic irreducible
/// minimal polynomial. Degree 1 means plain rationals.
#[derive(Debug)]
pub struct NumberField {
    minpoly: QPoly,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}
impl Eq for NumberField {}

impl NumberField {
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField { minpoly: QPoly::from_ints(&[0, 1]) })
    }

    /// Checks monicity and irreducibility.
    pub fn new(minpoly: QPoly) -> Result<Arc<NumberField>, Error> {
        let d = minpoly.degree().ok_or_else(|| Error::InvalidField("zero polynomial".into()))?;
        if d == 0 {
            return Err(Error::InvalidField("constant minimal polynomial".into()));
        }
        let m = minpoly.monic();
        if !m.is_irreducible()? {
            return Err(Error::InvalidField(format!("{m} is reducible over Q")));
        }
        Ok(Arc::new(NumberField { minpoly: m }))
    }

    /// Coefficients low to high.
    pub fn from_coeffs(c: &[Rational]) -> Result<Arc<NumberField>, Error> {
        NumberField::new(QPoly::new(c.to_vec()))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// The generator `t` as a scalar (for degree 1 this is the root of the linear minpoly).
    pub fn generator(self: &Arc<Self>) -> Scalar {
        if self.is_rational() {
            return Scalar::Rat(self.minpoly.coeff(0).neg());
        }
        Scalar::from_coeffs(self, vec![Rational::ZERO, Rational::ONE])
    }

    fn reduce(&self, p: &QPoly) -> Vec<Rational> {
        let r = p.rem(&self.minpoly);
        let mut c: Vec<Rational> = r.coeffs().to_vec();
        c.resize(self.degree(), Rational::ZERO);
        c
    }
}

/// An element of a number field. Elements with only a constant term are
/// always stored as `Rat`, so the representation is canonical.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rational),
    Ext(Arc<NumberField>, Box<[Rational]>),
}

impl Scalar {
    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::Rat(Rational::new(n, d))
    }

    pub fn from_coeffs(field: &Arc<NumberField>, mut c: Vec<Rational>) -> Scalar {
        let d = field.degree();
        if c.len() > d {
            c = field.reduce(&QPoly::new(c));
        }
        c.resize(d, Rational::ZERO);
        if c[1..].iter().all(|x| x.is_zero()) {
            return Scalar::Rat(c.swap_remove(0));
        }
        Scalar::Ext(field.clone(), c.into_boxed_slice())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Ext(..) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Ext(f, _) => Some(f),
        }
    }

    /// Power-basis coordinates, padded to the field degree.
    pub fn coeffs_in(&self, field: &NumberField) -> Vec<Rational> {
        let d = field.degree();
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![Rational::ZERO; d];
                v[0] = r.clone();
                v
            }
            Scalar::Ext(_, c) => c.to_vec(),
        }
    }

    fn poly(&self) -> QPoly {
        match self {
            Scalar::Rat(r) => QPoly::constant(r.clone()),
            Scalar::Ext(_, c) => QPoly::new(c.to_vec()),
        }
    }

    fn common_field<'a>(a: &'a Scalar, b: &'a Scalar) -> Option<&'a Arc<NumberField>> {
        match (a.field(), b.field()) {
            (Some(f), Some(g)) => {
                assert!(Arc::ptr_eq(f, g) || f == g, "mixing scalars from different number fields");
                Some(f)
            }
            (Some(f), None) | (None, Some(f)) => Some(f),
            (None, None) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    /// Norm from `field` down to Q.
    pub fn norm(&self, field: &Arc<NumberField>) -> Rational {
        let d = field.degree();
        if let Scalar::Rat(r) = self {
            return r.pow(d as u32);
        }
        // determinant of multiplication-by-self
        let mut m = super::matrix::Matrix::zeros(d, d);
        for j in 0..d {
            let mut basis = vec![Rational::ZERO; d];
            basis[j] = Rational::ONE;
            let prod = self.mul(&Scalar::from_coeffs(field, basis)).coeffs_in(field);
            for (i, c) in prod.into_iter().enumerate() {
                m.set(i, j, Scalar::Rat(c));
            }
        }
        m.determinant().as_rational().cloned().expect("norm is rational")
    }

    /// JSON form: a list of `"num/den"` strings in the power basis.
    pub fn to_json_strings(&self, degree: usize) -> Vec<String> {
        let mut v: Vec<String> = match self {
            Scalar::Rat(r) => vec![frac_string(r)],
            Scalar::Ext(_, c) => c.iter().map(frac_string).collect(),
        };
        while v.len() < degree {
            v.push("0/1".into());
        }
        v
    }
}

pub fn frac_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) => (Arc::ptr_eq(f, g) || f == g) && a == b,
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(r) => r.hash(state),
            Scalar::Ext(_, c) => c.hash(state),
        }
    }
}

/// Canonical total order: rationals by value first, then extension elements
/// by their coefficient vectors.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Ext(..)) => Ordering::Less,
            (Scalar::Ext(..), Scalar::Rat(_)) => Ordering::Greater,
            (Scalar::Ext(_, a), Scalar::Ext(_, b)) => a.cmp(b),
        }
    }
}
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Rat(Rational::ZERO)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}
impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Ext(_, c) => {
                let mut first = true;
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{x}")?,
                        1 => write!(f, "({x})t")?,
                        _ => write!(f, "({x})t^{i}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FieldElem for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::ZERO)
    }
    fn one() -> Self {
        Scalar::Rat(Rational::ONE)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let f = Scalar::common_field(self, o).unwrap().clone();
                let d = f.degree();
                let a = self.coeffs_in(&f);
                let b = o.coeffs_in(&f);
                Scalar::from_coeffs(&f, (0..d).map(|i| &a[i] + &b[i]).collect())
            }
        }
    }
    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self.add(&o.neg()),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Ext(f, c)) | (Scalar::Ext(f, c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::from_coeffs(f, c.iter().map(|x| x * a).collect())
            }
            (Scalar::Ext(..), Scalar::Ext(..)) => {
                let f = Scalar::common_field(self, o).unwrap().clone();
                let p = self.poly().mul(&o.poly());
                let c = f.reduce(&p);
                Scalar::from_coeffs(&f, c)
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
    fn inv(&self) -> Self {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.inv()),
            Scalar::Ext(f, _) => {
                let (g, s, _) = self.poly().xgcd(f.minpoly());
                assert_eq!(g.degree(), Some(0), "inverting zero in a number field");
                Scalar::from_coeffs(f, s.coeffs().to_vec())
            }
        }
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl FieldElem for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Rational::inv(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

macro_rules! scalar_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                FieldElem::$m(self, rhs)
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                FieldElem::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                FieldElem::$m(&self, rhs)
            }
        }
    };
}
scalar_ops!(Add, add);
scalar_ops!(Sub, sub);
scalar_ops!(Mul, mul);

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }
}
impl std::ops::Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        FieldElem::mul(&self, &rhs.inv())
    }
}
impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        FieldElem::neg(self)
    }
}
impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        FieldElem::neg(&self)
    }
}

/// Parse `"p/q"` or a list of such strings (power-basis coordinates).
pub fn parse_scalar(v: &serde_json::Value, field: &Arc<NumberField>) -> Result<Scalar, Error> {
    match v {
        serde_json::Value::String(s) => {
            let r: Rational = s.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
            Ok(Scalar::Rat(r))
        }
        serde_json::Value::Number(n) => {
            let r: Rational =
                n.to_string().parse().map_err(|_| Error::Parse(format!("bad scalar {n}")))?;
            Ok(Scalar::Rat(r))
        }
        serde_json::Value::Array(a) => {
            let mut c = Vec::with_capacity(a.len());
            for x in a {
                match parse_scalar(x, field)? {
                    Scalar::Rat(r) => c.push(r),
                    _ => return Err(Error::Parse("nested scalar".into())),
                }
            }
            if c.len() > field.degree() {
                return Err(Error::Parse(format!(
                    "scalar has {} coordinates, field degree is {}",
                    c.len(),
                    field.degree()
                )));
            }
            if c.is_empty() {
                return Ok(Scalar::zero());
            }
            Ok(Scalar::from_coeffs(field, c))
        }
        _ => Err(Error::Parse(format!("bad scalar {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(QPoly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn extension_arithmetic() {
        let f = sqrt2();
        let t = f.generator();
        let t2 = t.mul(&t);
        assert_eq!(t2, Scalar::int(2));
        let a = t.add(&Scalar::int(1));
        let inv = a.inv();
        assert_eq!(a.mul(&inv), Scalar::one());
        assert_eq!(a.norm(&f), Rational::from_int(-1));
        assert_eq!(Scalar::int(3).norm(&f), Rational::from_int(9));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(NumberField::new(QPoly::from_ints(&[-1, 0, 1])).is_err());
    }
}
