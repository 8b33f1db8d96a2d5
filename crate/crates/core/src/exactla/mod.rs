//! Exact scalars and linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod sparse;

use std::fmt::Debug;

pub use field::{NumberField, Scalar};
pub use matrix::Matrix;
pub use poly::{Poly, QPoly};
pub use rational::Rational;
pub use sparse::{Echelon, SparseVec};

/// Exact field arithmetic shared by `Rational` and `Scalar`.
pub trait FieldElem: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
}

pub type SPoly = Poly<Scalar>;

/// Lift a rational polynomial to scalar coefficients.
pub fn lift_poly(p: &QPoly) -> SPoly {
    Poly::new(p.coeffs().iter().cloned().map(Scalar::Rat).collect())
}

/// Rational coefficients if every coefficient is rational.
pub fn rational_poly(p: &SPoly) -> Option<QPoly> {
    let c: Option<Vec<Rational>> = p.coeffs().iter().map(|s| s.as_rational().cloned()).collect();
    c.map(Poly::new)
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> crate::Result<Option<Vec<Scalar>>> {
    m.solve(rhs)
}

pub fn minimal_polynomial(m: &Matrix) -> (SPoly, bool) {
    let p = m.minimal_polynomial();
    let sf = p.is_squarefree();
    (p, sf)
}
