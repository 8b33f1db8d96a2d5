//! Matrix families inside `gl(m|n)`.

use std::sync::Arc;

use crate::exactla::{FieldElem, Matrix, NumberField, Scalar, SparseVec};
use crate::liealg::{quotient, supercommutator, Realization, SuperLieAlgebra, SuperSpace, Subspace};
use crate::{Error, Result};

pub(crate) fn unit(k: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(k, k);
    m.set(i, j, Scalar::one());
    m
}

/// Row-major vectorization.
pub(crate) fn vectorize(m: &Matrix) -> SparseVec {
    let k = m.ncols();
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..k {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.push((i * k + j, c.clone()));
            }
        }
    }
    SparseVec::from_sorted(out)
}

pub(crate) fn unvectorize(v: &SparseVec, k: usize) -> Matrix {
    let mut m = Matrix::zeros(k, k);
    for (idx, c) in v.entries() {
        m.set(idx / k, idx % k, c.clone());
    }
    m
}

/// Span of square matrices, with coordinates in its RREF basis.
pub(crate) struct MatrixSpan {
    pub k: usize,
    pub sub: Subspace,
    pub mats: Vec<Matrix>,
}

impl MatrixSpan {
    pub fn new(k: usize, gens: &[Matrix]) -> MatrixSpan {
        let vs: Vec<SparseVec> = gens.iter().map(vectorize).collect();
        let sub = Subspace::span(k * k, &vs);
        let mats = sub.basis().iter().map(|v| unvectorize(v, k)).collect();
        MatrixSpan { k, sub, mats }
    }

    pub fn coords(&self, m: &Matrix) -> Option<SparseVec> {
        let v = vectorize(m);
        self.sub.contains(&v).then(|| self.sub.coords(&v))
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }
}

fn block_parity(m: usize, x: &Matrix) -> Option<u8> {
    let k = x.nrows();
    let (mut e, mut o) = (false, false);
    for i in 0..k {
        for j in 0..k {
            if !x.get(i, j).is_zero() {
                if (i < m) == (j < m) {
                    e = true;
                } else {
                    o = true;
                }
            }
        }
    }
    match (e, o) {
        (_, false) => Some(0),
        (false, true) => Some(1),
        _ => None,
    }
}

/// The subalgebra of `gl(m|n)` spanned by homogeneous generators that are
/// already closed under the supercommutator. Basis: RREF in matrix-unit
/// coordinates per parity; diagonal basis elements form the Cartan.
pub(crate) fn matrix_family(name: &str, field: &Arc<NumberField>, m: usize, n: usize, gens: &[Matrix]) -> Result<SuperLieAlgebra> {
    let k = m + n;
    let mut by_par: [Vec<Matrix>; 2] = [Vec::new(), Vec::new()];
    for g in gens {
        let p = block_parity(m, g).ok_or_else(|| Error::InvalidSpec("inhomogeneous generator".into()))?;
        by_par[p as usize].push(g.clone());
    }
    let spans = [MatrixSpan::new(k, &by_par[0]), MatrixSpan::new(k, &by_par[1])];
    let ne = spans[0].dim();
    let mut mats = spans[0].mats.clone();
    mats.extend(spans[1].mats.iter().cloned());
    let mut labels = Vec::new();
    let mut pars = Vec::new();
    for (p, s) in spans.iter().enumerate() {
        for v in s.sub.basis() {
            let (idx, _) = v.leading().unwrap();
            let (i, j) = (idx / k + 1, idx % k + 1);
            labels.push(if v.nnz() == 1 { format!("E{i}_{j}") } else { format!("X{i}_{j}") });
            pars.push(p as u8);
        }
    }
    let space = SuperSpace::new(labels, pars.clone())?;
    let d = mats.len();
    let mut table = std::collections::HashMap::new();
    for i in 0..d {
        for j in i..d {
            if i == j && pars[i] == 0 {
                continue;
            }
            let c = supercommutator(&mats[i], pars[i], &mats[j], pars[j]);
            let p = (pars[i] ^ pars[j]) as usize;
            let v = spans[p]
                .coords(&c)
                .ok_or_else(|| Error::Validation(format!("{name}: generators not closed under bracket")))?;
            table.insert((i, j), if p == 1 { v.shift(ne) } else { v });
        }
    }
    let alg = SuperLieAlgebra::from_half(name, field.clone(), space, |i, j| table.get(&(i, j)).cloned().unwrap_or_default())?;
    let cartan: Vec<SparseVec> = (0..ne)
        .filter(|&i| (0..k).all(|a| (0..k).all(|b| a == b || mats[i].get(a, b).is_zero())))
        .map(SparseVec::unit)
        .collect();
    Ok(alg.with_cartan(cartan).with_realization(Realization { m, n, mats, exact: true }))
}

fn gl_gens(m: usize, n: usize) -> Vec<Matrix> {
    let k = m + n;
    let mut g = Vec::new();
    for i in 0..k {
        for j in 0..k {
            g.push(unit(k, i, j));
        }
    }
    g
}

/// Off-diagonal units plus supertrace-free diagonals.
fn sl_gens(m: usize, n: usize) -> Vec<Matrix> {
    let k = m + n;
    let mut g = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                g.push(unit(k, i, j));
            }
        }
    }
    for i in 0..k.saturating_sub(1) {
        let mut d = unit(k, i, i);
        // str(E_ii -/+ E_{i+1,i+1}) = 0
        let s = if (i < m) == (i + 1 < m) { -1 } else { 1 };
        d.set(i + 1, i + 1, Scalar::int(s));
        g.push(d);
    }
    g
}

pub fn gl(m: usize, n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if m + n == 0 {
        return Err(Error::InvalidSpec("gl(0,0)".into()));
    }
    matrix_family(&format!("gl({m},{n})"), f, m, n, &gl_gens(m, n))
}

pub fn sl(m: usize, n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if m + n < 2 {
        return Err(Error::InvalidSpec("sl needs m + n >= 2".into()));
    }
    matrix_family(&format!("sl({m},{n})"), f, m, n, &sl_gens(m, n))
}

fn identity_coords(g: &SuperLieAlgebra) -> Result<SparseVec> {
    let r = g.realization().unwrap();
    let k = r.m + r.n;
    let span = MatrixSpan::new(k, &r.mats[..g.n_even()]);
    span.coords(&Matrix::identity(k)).ok_or_else(|| Error::InvalidSpec("identity not in the algebra".into()))
}

fn mod_identity(g: &SuperLieAlgebra, name: &str) -> Result<SuperLieAlgebra> {
    let z = identity_coords(g)?;
    let q = quotient(g, &Subspace::span(g.dim(), &[z]))?;
    Ok(q.algebra.with_name(name))
}

pub fn psl(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidSpec("psl(n,n) needs n >= 1".into()));
    }
    mod_identity(&sl(n, n, f)?, &format!("psl({n},{n})"))
}

pub fn pgl(m: usize, n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    mod_identity(&gl(m, n, f)?, &format!("pgl({m},{n})"))
}

/// Antidiagonal split symmetric form on the even part and skew form on the
/// odd part of `F^{m|2n}`.
pub(crate) fn osp_gram(m: usize, n2: usize) -> Matrix {
    let k = m + n2;
    let mut g = Matrix::zeros(k, k);
    for i in 0..m {
        g.set(i, m - 1 - i, Scalar::one());
    }
    let h = n2 / 2;
    for i in 0..n2 {
        let j = n2 - 1 - i;
        g.set(m + i, m + j, Scalar::int(if i < h { 1 } else { -1 }));
    }
    g
}

/// Homogeneous `X` with `B(Xv, w) + (-1)^{p(X)p(v)} B(v, Xw) = 0`.
pub(crate) fn form_preserving(m: usize, n: usize, gram: &Matrix) -> Vec<Matrix> {
    let k = m + n;
    let par = |i: usize| u8::from(i >= m);
    let mut out = Vec::new();
    for px in [0u8, 1] {
        let vars: Vec<(usize, usize)> =
            (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| (par(i) ^ par(j)) == px).collect();
        let pos: std::collections::HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut eqs = Vec::new();
        for v in 0..k {
            for w in 0..k {
                // sum_a X_{a v} G_{a w} + s * sum_a G_{v a} X_{a w}
                let s = crate::liealg::ksign(px, par(v));
                let mut pairs = Vec::new();
                for a in 0..k {
                    if let Some(&x) = pos.get(&(a, v)) {
                        let gc = gram.get(a, w);
                        if !gc.is_zero() {
                            pairs.push((x, gc.clone()));
                        }
                    }
                    if let Some(&x) = pos.get(&(a, w)) {
                        let gc = gram.get(v, a);
                        if !gc.is_zero() {
                            pairs.push((x, gc.mul(&Scalar::int(s))));
                        }
                    }
                }
                let e = SparseVec::from_pairs(pairs);
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
        for sol in crate::exactla::sparse::sparse_kernel(&eqs, vars.len()) {
            let mut x = Matrix::zeros(k, k);
            for (idx, c) in sol.entries() {
                let (i, j) = vars[*idx];
                x.set(i, j, c.clone());
            }
            out.push(x);
        }
    }
    out
}

/// `osp(m, 2n)`; the second parameter is the (even) odd dimension.
pub fn osp(m: usize, n2: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n2 % 2 == 1 {
        return Err(Error::InvalidSpec(format!("osp({m},{n2}): odd dimension must be even")));
    }
    if m + n2 == 0 {
        return Err(Error::InvalidSpec("osp(0,0)".into()));
    }
    let gens = form_preserving(m, n2, &osp_gram(m, n2));
    matrix_family(&format!("osp({m},{n2})"), f, m, n2, &gens)
}

fn q_gens(n: usize, odd_trace_free: bool) -> Vec<Matrix> {
    let k = 2 * n;
    let mut g = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut a = unit(k, i, j);
            a.set(n + i, n + j, Scalar::one());
            g.push(a);
            if odd_trace_free && i == j {
                continue;
            }
            let mut b = unit(k, i, n + j);
            b.set(n + i, j, Scalar::one());
            g.push(b);
        }
    }
    if odd_trace_free {
        for i in 0..n.saturating_sub(1) {
            let mut b = Matrix::zeros(k, k);
            b.set(i, n + i, Scalar::one());
            b.set(n + i, i, Scalar::one());
            b.set(i + 1, n + i + 1, Scalar::int(-1));
            b.set(n + i + 1, i + 1, Scalar::int(-1));
            g.push(b);
        }
    }
    g
}

pub fn q(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidSpec("q(n) needs n >= 1".into()));
    }
    matrix_family(&format!("q({n})"), f, n, n, &q_gens(n, false))
}

pub fn sq(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidSpec("sq(n) needs n >= 1".into()));
    }
    matrix_family(&format!("sq({n})"), f, n, n, &q_gens(n, true))
}

pub fn pq(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    mod_identity(&q(n, f)?, &format!("pq({n})"))
}

pub fn psq(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    mod_identity(&sq(n, f)?, &format!("psq({n})"))
}

/// Block shape `(A, B; C, -A^t)` with `B` symmetric and `C` skew.
fn p_gens(n: usize, traceless: bool) -> Vec<Matrix> {
    let k = 2 * n;
    let mut g = Vec::new();
    let a_elem = |i: usize, j: usize| {
        let mut a = unit(k, i, j);
        let prev = a.get(n + j, n + i).clone();
        a.set(n + j, n + i, prev.sub(&Scalar::one()));
        a
    };
    for i in 0..n {
        for j in 0..n {
            if traceless && i == j {
                continue;
            }
            g.push(a_elem(i, j));
        }
    }
    if traceless {
        for i in 0..n.saturating_sub(1) {
            g.push(a_elem(i, i).sub(&a_elem(i + 1, i + 1)));
        }
    } else {
        for i in 0..n {
            g.push(a_elem(i, i));
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut b = unit(k, i, n + j);
            b.set(j, n + i, Scalar::one());
            g.push(b);
            if i < j {
                let mut c = unit(k, n + i, j);
                c.set(n + j, i, Scalar::int(-1));
                g.push(c);
            }
        }
    }
    g
}

pub fn p(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidSpec("p(n) needs n >= 1".into()));
    }
    matrix_family(&format!("p({n})"), f, n, n, &p_gens(n, false))
}

/// `sp(n) = [p(n), p(n)] = p(n) ∩ sl(n|n)`.
pub fn sp(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidSpec("sp(n) needs n >= 2".into()));
    }
    matrix_family(&format!("sp({n})"), f, n, n, &p_gens(n, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::validate;

    fn qf() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(gl(2, 1, &qf()).unwrap().dims(), (5, 4));
        assert_eq!(sl(2, 2, &qf()).unwrap().dims(), (7, 8));
        assert_eq!(psl(2, &qf()).unwrap().dims(), (6, 8));
        assert_eq!(osp(1, 2, &qf()).unwrap().dims(), (3, 2));
        assert_eq!(osp(3, 2, &qf()).unwrap().dims(), (6, 6));
        assert_eq!(q(3, &qf()).unwrap().dims(), (9, 9));
        assert_eq!(sq(3, &qf()).unwrap().dims(), (9, 8));
        assert_eq!(pq(3, &qf()).unwrap().dims(), (8, 9));
        assert_eq!(psq(3, &qf()).unwrap().dims(), (8, 8));
        assert_eq!(p(3, &qf()).unwrap().dims(), (9, 9));
        assert_eq!(sp(3, &qf()).unwrap().dims(), (8, 9));
    }

    #[test]
    fn matrix_families_validate() {
        for g in [gl(2, 1, &qf()), sl(2, 2, &qf()), psl(2, &qf()), osp(3, 2, &qf()), q(2, &qf()), p(3, &qf())] {
            let g = g.unwrap();
            assert!(validate(&g).is_empty(), "{}", g.name());
            assert!(g.basis_weights().is_some(), "{} basis is not a weight basis", g.name());
        }
    }

    #[test]
    fn osp_even_part() {
        // so(m) + sp(2n)
        for (m, n2) in [(1, 2), (2, 2), (3, 2), (1, 4), (4, 2)] {
            let g = osp(m, n2, &qf()).unwrap();
            let n = n2 / 2;
            assert_eq!(g.dims(), (m * (m - 1) / 2 + n * (2 * n + 1), m * n2));
        }
    }
}
