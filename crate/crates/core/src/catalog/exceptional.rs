//! `D(2,1;a)`, `G(1,2)` and `F(1,3)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::matrix::MatrixSpan;
use crate::exactla::sparse::sparse_kernel;
use crate::exactla::{FieldElem, Matrix, NumberField, Rational, Scalar, SparseVec};
use crate::liealg::{ksign, validate, SuperLieAlgebra, SuperSpace};
use crate::{Error, Result};

pub(crate) fn sl2_bracket(i: usize, j: usize) -> SparseVec {
    match (i, j) {
        (0, 1) => SparseVec::from_pairs([(0, Scalar::int(-2))]),
        (0, 2) => SparseVec::unit(1),
        (1, 2) => SparseVec::from_pairs([(2, Scalar::int(-2))]),
        (1, 0) => SparseVec::from_pairs([(0, Scalar::int(2))]),
        (2, 0) => SparseVec::from_pairs([(1, Scalar::int(-1))]),
        (2, 1) => SparseVec::from_pairs([(2, Scalar::int(2))]),
        _ => SparseVec::new(),
    }
}

/// Invariant skew form on `V_1` with `omega(x+, x-) = 1`.
fn omega(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// `rho: S^2 V_1 -> sl(2)` with `rho(v, v) w = omega(v, w) v`, in (e, h, f)
/// coordinates.
fn rho(a: usize, b: usize) -> SparseVec {
    match (a.min(b), a.max(b)) {
        (0, 0) => SparseVec::unit(0),
        (1, 1) => SparseVec::from_pairs([(2, Scalar::int(-1))]),
        _ => SparseVec::from_pairs([(1, Scalar::frac(-1, 2))]),
    }
}

/// `x+` / `x-` action of sl(2) basis element `k` on `V_1` basis vector `a`.
fn sl2_act(k: usize, a: usize) -> Option<(usize, i64)> {
    match (k, a) {
        (0, 1) => Some((0, 1)),
        (1, 0) => Some((0, 1)),
        (1, 1) => Some((1, -1)),
        (2, 0) => Some((1, 1)),
        _ => None,
    }
}

fn pm(a: usize) -> char {
    if a == 0 {
        '+'
    } else {
        '-'
    }
}

/// `D(2,1;a)` from an arbitrary triple; no check on the sum.
pub fn d21_raw(alpha: &Scalar, beta: &Scalar, gamma: &Scalar, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let mut labels = Vec::new();
    for c in 1..=3 {
        for n in ["e", "h", "f"] {
            labels.push(format!("{n}{c}"));
        }
    }
    let bits = |o: usize| [(o >> 2) & 1, (o >> 1) & 1, o & 1];
    for o in 0..8 {
        let b = bits(o);
        labels.push(format!("x{}{}{}", pm(b[0]), pm(b[1]), pm(b[2])));
    }
    let mut par = vec![0u8; 9];
    par.extend([1u8; 8]);
    let space = SuperSpace::new(labels, par)?;
    let coef = [gamma.clone(), beta.clone(), alpha.clone()];
    let name = if beta.is_zero() {
        "D(2,1;inf)".to_string()
    } else {
        format!("D(2,1;{})", alpha.clone() / beta.clone())
    };
    let g = SuperLieAlgebra::from_half(name, f.clone(), space, |i, j| {
        if j < 9 {
            let (ci, cj) = (i / 3, j / 3);
            return if ci == cj { sl2_bracket(i % 3, j % 3).shift(3 * ci) } else { SparseVec::new() };
        }
        let w = bits(j - 9);
        if i < 9 {
            let (c, k) = (i / 3, i % 3);
            return match sl2_act(k, w[c]) {
                Some((a, s)) => {
                    let mut v = w;
                    v[c] = a;
                    SparseVec::from_pairs([(9 + (v[0] << 2 | v[1] << 1 | v[2]), Scalar::int(s))])
                }
                None => SparseVec::new(),
            };
        }
        let v = bits(i - 9);
        let mut out = SparseVec::new();
        for c in 0..3 {
            let mut s = 1;
            for d in 0..3 {
                if d != c {
                    s *= omega(v[d], w[d]);
                }
            }
            if s != 0 && !coef[c].is_zero() {
                out = out.add_scaled(&coef[c].mul(&Scalar::int(s)), &rho(v[c], w[c]).shift(3 * c));
            }
        }
        out
    })?;
    Ok(g.with_cartan((0..3).map(|c| SparseVec::unit(3 * c + 1)).collect()))
}

/// `D(2,1;a)` with the triple `(a, 1, -1-a)`.
pub fn d21(a: &Rational, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let a = Scalar::Rat(a.clone());
    let gamma = a.neg().sub(&Scalar::one());
    d21_raw(&a, &Scalar::one(), &gamma, f)
}

/// `D(2,1)` from a triple, refusing triples that do not sum to zero.
pub fn d21_triple(t: [&Rational; 3], f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let s = t[0] + &(t[1] + t[2]);
    if !s.is_zero() {
        return Err(Error::InvalidSpec(format!("D(2,1): alpha + beta + gamma = {s} is not zero")));
    }
    if t.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidSpec("D(2,1): zero triple".into()));
    }
    d21_raw(&Scalar::Rat(t[0].clone()), &Scalar::Rat(t[1].clone()), &Scalar::Rat(t[2].clone()), f)
}

/// A simple Lie algebra realised by matrices acting on `V`.
pub(crate) struct MatrixLie {
    pub span: MatrixSpan,
    pub labels: Vec<String>,
}

impl MatrixLie {
    pub fn new(k: usize, gens: &[Matrix], prefix: &str) -> MatrixLie {
        let span = MatrixSpan::new(k, gens);
        let labels = span
            .sub
            .basis()
            .iter()
            .map(|v| {
                let (idx, _) = v.leading().unwrap();
                format!("{prefix}{}_{}", idx / k + 1, idx % k + 1)
            })
            .collect();
        MatrixLie { span, labels }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.span.mats
    }

    pub fn bracket(&self, i: usize, j: usize) -> SparseVec {
        let (a, b) = (&self.span.mats[i], &self.span.mats[j]);
        self.span.coords(&a.mul(b).sub(&b.mul(a))).expect("matrix Lie algebra not closed")
    }

    /// Indices of diagonal basis elements.
    pub fn diagonal(&self) -> Vec<usize> {
        let k = self.span.k;
        (0..self.dim()).filter(|&i| (0..k).all(|a| (0..k).all(|b| a == b || self.span.mats[i].get(a, b).is_zero()))).collect()
    }
}

/// Symmetric forms `B` with `X^t B + B X = 0` for every generator `X`.
pub(crate) fn invariant_symmetric_forms(mats: &[Matrix], k: usize) -> Vec<Matrix> {
    let vars: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let pos: HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let var = |a: usize, b: usize| pos[&(a.min(b), a.max(b))];
    let mut eqs = Vec::new();
    for x in mats {
        for v in 0..k {
            for w in 0..k {
                // sum_a X_{a v} B_{a w} + B_{v a} X_{a w}
                let mut pairs = Vec::new();
                for a in 0..k {
                    if !x.get(a, v).is_zero() {
                        pairs.push((var(a, w), x.get(a, v).clone()));
                    }
                    if !x.get(a, w).is_zero() {
                        pairs.push((var(v, a), x.get(a, w).clone()));
                    }
                }
                let e = SparseVec::from_pairs(pairs);
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    sparse_kernel(&eqs, vars.len())
        .into_iter()
        .map(|sol| {
            let mut b = Matrix::zeros(k, k);
            for (idx, c) in sol.entries() {
                let (i, j) = vars[*idx];
                b.set(i, j, c.clone());
                b.set(j, i, c.clone());
            }
            b
        })
        .collect()
}

/// `sl(2) + s` with odd part `V_1 (x) V` and bracket
/// `c omega(v,v') s(w,w') + b(w,w') rho(v,v')` on odd pairs.
fn sl2_s_algebra(name: &str, s: &MatrixLie, c: &Scalar, field: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let k = s.span.k;
    let ds = s.dim();
    let forms = invariant_symmetric_forms(s.mats(), k);
    if forms.len() != 1 {
        return Err(Error::Validation(format!("{name}: expected one invariant symmetric form, found {}", forms.len())));
    }
    let b = &forms[0];
    // trace form on V and its inverse
    let t = Matrix::from_fn(ds, ds, |i, j| s.mats()[i].mul(&s.mats()[j]).trace());
    let tinv = t.inverse().ok_or_else(|| Error::Validation(format!("{name}: degenerate trace form")))?;
    // b(S_j w_k, w_l) = (S_j^t b)_{k l}
    let sb: Vec<Matrix> = s.mats().iter().map(|m| m.transpose().mul(b)).collect();
    let ne = 3 + ds;
    let mut labels: Vec<String> = ["e", "h", "f"].iter().map(|x| x.to_string()).collect();
    labels.extend(s.labels.iter().cloned());
    for a in 0..2 {
        for w in 0..k {
            labels.push(format!("x{}w{}", pm(a), w + 1));
        }
    }
    let mut par = vec![0u8; ne];
    par.extend(vec![1u8; 2 * k]);
    let space = SuperSpace::new(labels, par)?;
    let g = SuperLieAlgebra::from_half(name, field.clone(), space, |i, j| {
        if j < ne {
            return match (i < 3, j < 3) {
                (true, true) => sl2_bracket(i, j),
                (false, false) => s.bracket(i - 3, j - 3).shift(3),
                _ => SparseVec::new(),
            };
        }
        let (a2, w2) = ((j - ne) / k, (j - ne) % k);
        if i < 3 {
            return match sl2_act(i, a2) {
                Some((a, sg)) => SparseVec::from_pairs([(ne + a * k + w2, Scalar::int(sg))]),
                None => SparseVec::new(),
            };
        }
        if i < ne {
            let m = &s.mats()[i - 3];
            return SparseVec::from_pairs((0..k).map(|r| (ne + a2 * k + r, m.get(r, w2).clone())));
        }
        let (a1, w1) = ((i - ne) / k, (i - ne) % k);
        let mut out = rho(a1, a2).scale(b.get(w1, w2));
        let om = omega(a1, a2);
        if om != 0 && !c.is_zero() {
            let scale = c.mul(&Scalar::int(om));
            let coeffs: Vec<Scalar> = (0..ds).map(|j| sb[j].get(w1, w2).clone()).collect();
            let pairs = (0..ds).map(|i2| {
                let mut acc = Scalar::zero();
                for (j, cj) in coeffs.iter().enumerate() {
                    if !cj.is_zero() {
                        acc = acc.add(&tinv.get(i2, j).mul(cj));
                    }
                }
                (3 + i2, acc.mul(&scale))
            });
            out = out.add(&SparseVec::from_pairs(pairs));
        }
        out
    })?;
    let mut h = vec![SparseVec::unit(1)];
    h.extend(s.diagonal().into_iter().map(|d| SparseVec::unit(3 + d)));
    Ok(g.with_cartan(h))
}

pub(crate) fn jacobi_residual(g: &SuperLieAlgebra, a: usize, b: usize, c: usize) -> SparseVec {
    let (x, y, z) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(c));
    let lhs = g.bracket(&x, &g.bracket(&y, &z));
    let r1 = g.bracket(&g.bracket(&x, &y), &z);
    let r2 = g.bracket(&y, &g.bracket(&x, &z)).scale(&Scalar::int(ksign(g.parity(a), g.parity(b))));
    lhs.sub(&r1).sub(&r2)
}

/// Solves for the relative scale `c` from the first odd triple on which the
/// `c = 0` algebra fails Jacobi, then certifies the result.
fn normalized_sl2_s(name: &str, s: &MatrixLie, field: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let g0 = sl2_s_algebra(name, s, &Scalar::zero(), field)?;
    let g1 = sl2_s_algebra(name, s, &Scalar::one(), field)?;
    let odd = g0.odd_range();
    let mut c = None;
    'search: for a in odd.clone() {
        for b in odd.clone() {
            for d in odd.clone() {
                let r0 = jacobi_residual(&g0, a, b, d);
                if r0.is_zero() {
                    continue;
                }
                let r1 = jacobi_residual(&g1, a, b, d);
                let diff = r1.sub(&r0);
                for (k, v) in r0.entries() {
                    let dk = diff.get(*k);
                    if !dk.is_zero() {
                        c = Some(v.neg().mul(&dk.inv()));
                        break 'search;
                    }
                }
                return Err(Error::Validation(format!("{name}: Jacobi residual independent of the scale")));
            }
        }
    }
    let c = c.unwrap_or_else(Scalar::zero);
    let g = sl2_s_algebra(name, s, &c, field)?;
    let rep = validate(&g);
    if !rep.is_empty() {
        return Err(Error::Validation(format!("{name}: solved normalization fails {} axiom checks", rep.total())));
    }
    Ok(g)
}

/// Split octonions in Zorn vector-matrix form, coordinates
/// `(a, u1, u2, u3, v1, v2, v3, b)`, with sign `eps` on the cross terms.
fn zorn_product(eps: i64, x: &[i64; 8], y: &[i64; 8]) -> [i64; 8] {
    let (a, u, v, b) = (x[0], [x[1], x[2], x[3]], [x[4], x[5], x[6]], x[7]);
    let (a2, u2, v2, b2) = (y[0], [y[1], y[2], y[3]], [y[4], y[5], y[6]], y[7]);
    let dot = |p: [i64; 3], q: [i64; 3]| p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    let cross = |p: [i64; 3], q: [i64; 3]| [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    let vv = cross(v, v2);
    let uu = cross(u, u2);
    let mut out = [0i64; 8];
    out[0] = a * a2 + dot(u, v2);
    for i in 0..3 {
        out[1 + i] = a * u2[i] + b2 * u[i] - eps * vv[i];
        out[4 + i] = a2 * v[i] + b * v2[i] + eps * uu[i];
    }
    out[7] = b * b2 + dot(v, u2);
    out
}

fn basis8(i: usize) -> [i64; 8] {
    let mut e = [0i64; 8];
    e[i] = 1;
    e
}

fn is_alternative(eps: i64) -> bool {
    let m = |x: &[i64; 8], y: &[i64; 8]| zorn_product(eps, x, y);
    let add = |x: [i64; 8], y: [i64; 8]| {
        let mut o = x;
        for i in 0..8 {
            o[i] += y[i];
        }
        o
    };
    for i in 0..8 {
        for j in 0..8 {
            let x = add(basis8(i), basis8(j));
            for k in 0..8 {
                let y = basis8(k);
                if m(&x, &m(&x, &y)) != m(&m(&x, &x), &y) || m(&m(&y, &x), &x) != m(&y, &m(&x, &x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `G_2` as derivations of the split octonions, acting on the trace-free
/// part with basis `(u1, u2, u3, v1, v2, v3, a - b)`.
pub(crate) fn g2() -> Result<MatrixLie> {
    let eps = [1i64, -1].into_iter().find(|&e| is_alternative(e)).ok_or_else(|| Error::Validation("no alternative sign".into()))?;
    // unknowns D_{r c}: D e_c = sum_r D_{rc} e_r
    let var = |r: usize, c: usize| r * 8 + c;
    let mut eqs = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let p = zorn_product(eps, &basis8(i), &basis8(j));
            for r in 0..8 {
                // D(e_i e_j) - D(e_i) e_j - e_i D(e_j) at coordinate r
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (c, &pc) in p.iter().enumerate() {
                    if pc != 0 {
                        *acc.entry(var(r, c)).or_default() += pc;
                    }
                }
                for s in 0..8 {
                    let q1 = zorn_product(eps, &basis8(s), &basis8(j))[r];
                    if q1 != 0 {
                        *acc.entry(var(s, i)).or_default() -= q1;
                    }
                    let q2 = zorn_product(eps, &basis8(i), &basis8(s))[r];
                    if q2 != 0 {
                        *acc.entry(var(s, j)).or_default() -= q2;
                    }
                }
                let e = SparseVec::from_pairs(acc.into_iter().filter(|&(_, v)| v != 0).map(|(k, v)| (k, Scalar::int(v))));
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    let ker = sparse_kernel(&eqs, 64);
    if ker.len() != 14 {
        return Err(Error::Validation(format!("octonion derivations have dimension {}", ker.len())));
    }
    // change of basis to V = (u, v, a - b)
    let mut p = Matrix::zeros(8, 7);
    for i in 0..6 {
        p.set(1 + i, i, Scalar::one());
    }
    p.set(0, 6, Scalar::one());
    p.set(7, 6, Scalar::int(-1));
    // left inverse on the image
    let mut pl = Matrix::zeros(7, 8);
    for i in 0..6 {
        pl.set(i, 1 + i, Scalar::one());
    }
    pl.set(6, 0, Scalar::frac(1, 2));
    pl.set(6, 7, Scalar::frac(-1, 2));
    let gens: Vec<Matrix> = ker
        .iter()
        .map(|v| {
            let mut d = Matrix::zeros(8, 8);
            for (idx, c) in v.entries() {
                d.set(idx / 8, idx % 8, c.clone());
            }
            pl.mul(&d).mul(&p)
        })
        .collect();
    let s = MatrixLie::new(7, &gens, "G");
    if s.dim() != 14 {
        return Err(Error::Validation("G2 restriction is not faithful".into()));
    }
    Ok(s)
}

/// Spinor action on `Lambda(f1, f2, f3)`: wedge, contraction and the
/// parity operator.
fn clifford_generators() -> Vec<Matrix> {
    let n = 3;
    let dim = 1 << n;
    let sign = |mask: usize, i: usize| if (mask & ((1 << i) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::new();
    for i in 0..n {
        let mut w = Matrix::zeros(dim, dim);
        let mut c = Matrix::zeros(dim, dim);
        for mask in 0..dim {
            if mask & (1 << i) == 0 {
                w.set(mask | (1 << i), mask, Scalar::int(sign(mask, i)));
            } else {
                c.set(mask & !(1 << i), mask, Scalar::int(sign(mask, i)));
            }
        }
        out.push(w);
        out.push(c);
    }
    let mut e0 = Matrix::zeros(dim, dim);
    for mask in 0..dim {
        e0.set(mask, mask, Scalar::int(if mask.count_ones() % 2 == 0 { 1 } else { -1 }));
    }
    out.push(e0);
    out
}

/// `so(7)` acting on its 8-dimensional spinor module.
pub(crate) fn spin7() -> Result<MatrixLie> {
    let gam = clifford_generators();
    let mut gens = Vec::new();
    for a in 0..gam.len() {
        for b in a + 1..gam.len() {
            gens.push(gam[a].mul(&gam[b]).sub(&gam[b].mul(&gam[a])));
        }
    }
    let s = MatrixLie::new(8, &gens, "S");
    if s.dim() != 21 {
        return Err(Error::Validation(format!("spin(7) has dimension {}", s.dim())));
    }
    Ok(s)
}

pub fn g12(f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    normalized_sl2_s("G(1,2)", &g2()?, f)
}

pub fn f13(f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    normalized_sl2_s("F(1,3)", &spin7()?, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn d21_sum_zero_iff_jacobi() {
        let g = d21_raw(&Scalar::int(1), &Scalar::int(1), &Scalar::int(-2), &qf()).unwrap();
        assert_eq!(g.dims(), (9, 8));
        assert!(validate(&g).is_empty());
        let bad = d21_raw(&Scalar::int(1), &Scalar::int(1), &Scalar::int(1), &qf()).unwrap();
        assert!(!validate(&bad).jacobi.is_empty());
        assert!(d21_triple([&Rational::ONE, &Rational::ONE, &Rational::ONE], &qf()).is_err());
        for a in [2, -3, 0] {
            assert!(validate(&d21(&Rational::from_int(a), &qf()).unwrap()).is_empty());
        }
    }

    #[test]
    fn g2_and_spin7() {
        let g = g2().unwrap();
        assert_eq!(g.diagonal().len(), 2);
        let s = spin7().unwrap();
        assert_eq!(s.diagonal().len(), 3);
        assert_eq!(invariant_symmetric_forms(s.mats(), 8).len(), 1);
        assert_eq!(invariant_symmetric_forms(g.mats(), 7).len(), 1);
    }

    #[test]
    fn exceptional_dims() {
        let g = g12(&qf()).unwrap();
        assert_eq!(g.dims(), (17, 14));
        assert!(g.basis_weights().is_some());
        let f = f13(&qf()).unwrap();
        assert_eq!(f.dims(), (24, 16));
        assert!(f.basis_weights().is_some());
    }
}
