//! Dense matrices over a number field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::sparse::{Echelon, SparseVec};
use super::{FieldElem, SPoly, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// `rows` empty rows of width `cols` are allowed.
    pub fn from_rows_width(rows: Vec<Vec<Scalar>>, cols: usize) -> Matrix {
        let r = rows.len();
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(d: &[Scalar]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Matrix {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add(v);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(self.row(i))
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        SparseVec::from_sorted(
            (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).map(|i| (i, self.get(i, j).clone())).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|x| x.is_rational())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for i in 0..self.rows {
            let r = self.row(i);
            let mut acc = Scalar::zero();
            for (j, x) in v.entries() {
                if !r[*j].is_zero() {
                    acc = acc.add(&r[*j].mul(x));
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        SparseVec::from_sorted(out)
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Sub-block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.is_rational() {
            self.rref_bareiss()
        } else {
            self.rref_gauss()
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row: Vec<&Rational> = self.row(i).iter().map(|x| x.as_rational().unwrap()).collect();
                let l = super::rational::lcm_denominators(row.iter().copied());
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free forward elimination. Returns the integer echelon form,
    /// the pivot columns and the sign of the row permutation.
    fn bareiss_forward(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, i32) {
        let mut a = self.integer_rows();
        let (n, m) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut sign = 1;
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
            if p != r {
                a.swap(p, r);
                sign = -sign;
            }
            let (top, rest) = a.split_at_mut(r + 1);
            let pr = &top[r];
            for row in rest.iter_mut() {
                if row[c].is_zero() {
                    for x in row[c + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &pr[c];
                            *x = x.div_floor(&prev);
                        }
                    }
                } else {
                    for j in c + 1..m {
                        let v = &pr[c] * &row[j] - &row[c] * &pr[j];
                        debug_assert!((&v % &prev).is_zero());
                        row[j] = v / &prev;
                    }
                    row[c] = BigInt::zero();
                }
            }
            prev = pr[c].clone();
            pivots.push(c);
            r += 1;
        }
        (a, pivots, sign)
    }

    fn rref_bareiss(&self) -> (Matrix, Vec<usize>) {
        let (a, pivots, _) = self.bareiss_forward();
        let r = pivots.len();
        // Normalize each pivot row, then back-substitute over the rationals.
        let mut rows: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let p = &a[i][pivots[i]];
                a[i].iter().map(|x| Rational::from_bigints(x.clone(), p.clone())).collect()
            })
            .collect();
        for i in (0..r).rev() {
            let pc = pivots[i];
            let (upper, lower) = rows.split_at_mut(i);
            let ri = &lower[0];
            for rk in upper.iter_mut() {
                let f = rk[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    if !ri[j].is_zero() {
                        rk[j] = &rk[j] - &(&f * &ri[j]);
                    }
                }
            }
        }
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out.data[i * self.cols + j] = Scalar::Rat(x);
            }
        }
        (out, pivots)
    }

    fn rref_gauss(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let (n, m) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a.get(i, c).is_zero()) else { continue };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv();
            for j in c..m {
                let v = a.get(r, j).mul(&inv);
                a.set(r, j, v);
            }
            for i in 0..n {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m {
                    let v = a.get(i, j).sub(&f.mul(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.is_rational() {
            self.bareiss_forward().1.len()
        } else {
            self.rref_gauss().1.len()
        }
    }

    /// Right null space, one vector per free column with a one there.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, f).neg();
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self * x = rhs` with all free variables zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        if self.is_rational() {
            // Bareiss: the last pivot is the determinant of the row-scaled matrix.
            let (a, pivots, sign) = self.bareiss_forward();
            if pivots.len() < n {
                return Scalar::zero();
            }
            let mut scale = Rational::ONE;
            for i in 0..n {
                let row: Vec<&Rational> = self.row(i).iter().map(|x| x.as_rational().unwrap()).collect();
                let l = super::rational::lcm_denominators(row.iter().copied());
                scale = &scale * &Rational::from(l);
            }
            let d = Rational::from(a[n - 1][n - 1].clone());
            let d = if sign < 0 { -&d } else { d };
            return Scalar::Rat(&d / &scale);
        }
        let mut a = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else { return Scalar::zero() };
            if p != c {
                a.swap_rows(p, c);
                det = det.neg();
            }
            let piv = a.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv();
            for i in c + 1..n {
                let f = a.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    /// Monic minimal polynomial, as the lcm of the local minimal polynomials
    /// of the standard basis vectors.
    pub fn minimal_polynomial(&self) -> SPoly {
        assert!(self.is_square(), "minimal polynomial of a non-square matrix");
        let n = self.rows;
        let mut acc = SPoly::one();
        let mut covered = Echelon::new(n);
        for i in 0..n {
            let e = SparseVec::unit(i);
            if covered.contains(&e) {
                // The cyclic subspace of e is already annihilated by acc.
                continue;
            }
            let mut krylov = Echelon::tracked(n);
            let mut v = e;
            let mut powers = Vec::new();
            let local = loop {
                if let Some(c) = krylov.express(&v) {
                    // v = A^k e = sum c_j A^j e
                    let k = powers.len();
                    let mut coeffs = vec![Scalar::zero(); k + 1];
                    for (j, x) in c.entries() {
                        coeffs[*j] = x.neg();
                    }
                    coeffs[k] = Scalar::one();
                    break SPoly::new(coeffs);
                }
                krylov.insert(&v);
                covered.insert(&v);
                powers.push(v.clone());
                v = self.mul_sparse(&v);
            };
            let g = acc.gcd(&local);
            acc = acc.mul(&local).divrem(&g).0.monic();
        }
        acc
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Integer vector scaling of a rational vector: multiply by the lcm of the
/// denominators and divide by the gcd of the numerators (sign preserved).
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = super::rational::lcm_denominators(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        let z = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(z.len(), 3);
        assert_eq!(z[1], vec![Scalar::zero(), Scalar::one(), Scalar::zero()]);
        let k = Matrix::from_ints(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k, vec![vec![Scalar::int(-1), Scalar::int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let e1 = vec![Scalar::one(), Scalar::zero(), Scalar::zero()];
        assert_eq!(Matrix::identity(3).solve(&e1).unwrap(), Some(e1.clone()));
        let m = Matrix::from_ints(&[&[1, 1]]);
        assert_eq!(m.solve(&[Scalar::zero()]).unwrap(), Some(vec![Scalar::zero(), Scalar::zero()]));
        let m = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[Scalar::zero(), Scalar::one()]).unwrap(), None);
        assert!(m.solve(&[Scalar::zero()]).is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let (p, sf) = super::super::minimal_polynomial(&Matrix::identity(3));
        assert_eq!(p, SPoly::new(vec![Scalar::int(-1), Scalar::one()]));
        assert!(sf);
        let (p, sf) = super::super::minimal_polynomial(&Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(p, SPoly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]));
        assert!(!sf);
        let (p, sf) = super::super::minimal_polynomial(&Matrix::from_ints(&[&[1, 0], &[0, 2]]));
        assert_eq!(p, SPoly::new(vec![Scalar::int(2), Scalar::int(-3), Scalar::one()]));
        assert!(sf);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), Scalar::int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let h = Matrix::from_rows(vec![
            vec![Scalar::frac(1, 2), Scalar::frac(1, 3)],
            vec![Scalar::frac(1, 3), Scalar::frac(1, 4)],
        ]);
        assert_eq!(h.determinant(), Scalar::frac(1, 72));
    }

    #[test]
    fn bareiss_matches_gauss() {
        let m = Matrix::from_ints(&[&[0, 2, 4, 1], &[1, 1, 1, 1], &[2, 4, 6, 3], &[1, 3, 5, 2]]);
        assert_eq!(m.rref_bareiss(), m.rref_gauss());
    }
}
