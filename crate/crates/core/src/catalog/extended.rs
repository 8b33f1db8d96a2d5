//! Quasireductive algebras built from smaller pieces: doubles `k^d` and
//! their extensions, `hat q(n)`, and the Clifford-type families
//! `co(m,n)`, `csp(2m,n)`, `a(s,p,q)`.

use std::sync::Arc;

use super::exceptional::MatrixLie;
use super::matrix::{form_preserving, osp_gram, q};
use crate::exactla::{FieldElem, Matrix, NumberField, Scalar, SparseVec};
use crate::liealg::{SuperLieAlgebra, SuperSpace};
use crate::{Error, Result};

/// `sl(n)` as a matrix Lie algebra on `F^n`.
pub(crate) fn sl_matrix(n: usize) -> Result<MatrixLie> {
    if n < 2 {
        return Err(Error::InvalidSpec("sl(n) needs n >= 2".into()));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(super::matrix::unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        let mut d = super::matrix::unit(n, i, i);
        d.set(i + 1, i + 1, Scalar::int(-1));
        gens.push(d);
    }
    Ok(MatrixLie::new(n, &gens, "E"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleKind {
    Plain,
    Hat,
    Tilde,
}

/// `k^d = k (x) F(theta)` for `k = sl(n)`, optionally extended.
///
/// Hat: odd `tau` and central `z1, z2` with `[tau, tau] = z2`,
/// `[tau, y theta] = y`, `[y theta, y' theta] = K(y, y') z1`.
/// Tilde: `W(0,1)` spanned by odd `D = d/dtheta` and even `E = theta d/dtheta`.
pub fn double(n: usize, kind: DoubleKind, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let k = sl_matrix(n)?;
    let d = k.dim();
    let (extra_even, extra_odd): (Vec<&str>, Vec<&str>) = match kind {
        DoubleKind::Plain => (vec![], vec![]),
        DoubleKind::Hat => (vec!["z1", "z2"], vec!["tau"]),
        DoubleKind::Tilde => (vec!["E"], vec!["D"]),
    };
    let ne = d + extra_even.len();
    let th0 = ne + extra_odd.len();
    let mut labels = k.labels.clone();
    labels.extend(extra_even.iter().map(|s| s.to_string()));
    labels.extend(extra_odd.iter().map(|s| s.to_string()));
    labels.extend(k.labels.iter().map(|l| format!("{l}.t")));
    let mut par = vec![0u8; ne];
    par.extend(vec![1u8; extra_odd.len() + d]);
    let space = SuperSpace::new(labels, par)?;
    // Killing form of sl(n): 2n tr(xy)
    let kill = |i: usize, j: usize| k.mats()[i].mul(&k.mats()[j]).trace().mul(&Scalar::int(2 * n as i64));
    let name = match kind {
        DoubleKind::Plain => format!("kd(sl{n})"),
        DoubleKind::Hat => format!("hat-kd(sl{n})"),
        DoubleKind::Tilde => format!("tilde-kd(sl{n})"),
    };
    let g = SuperLieAlgebra::from_half(name, f.clone(), space, |i, j| {
        let is_k = |x: usize| x < d;
        let is_th = |x: usize| x >= th0;
        match kind {
            _ if is_k(i) && is_k(j) => k.bracket(i, j),
            _ if is_k(i) && is_th(j) => k.bracket(i, j - th0).shift(th0),
            DoubleKind::Hat => {
                let tau = ne;
                if is_th(i) && is_th(j) {
                    SparseVec::from_pairs([(d, kill(i - th0, j - th0))])
                } else if i == tau && j == tau {
                    SparseVec::unit(d + 1)
                } else if i == tau && is_th(j) {
                    SparseVec::unit(j - th0)
                } else {
                    SparseVec::new()
                }
            }
            DoubleKind::Tilde => {
                let (e, dd) = (d, ne);
                if i == e && j == dd {
                    SparseVec::from_pairs([(dd, Scalar::int(-1))])
                } else if i == e && is_th(j) {
                    SparseVec::unit(j)
                } else if i == dd && is_th(j) {
                    SparseVec::unit(j - th0)
                } else {
                    SparseVec::new()
                }
            }
            DoubleKind::Plain => SparseVec::new(),
        }
    })?;
    let mut h: Vec<SparseVec> = k.diagonal().into_iter().map(SparseVec::unit).collect();
    h.extend((d..ne).map(SparseVec::unit));
    Ok(g.with_cartan(h))
}

/// `q(n) + Fz` with `[x, y] + otr(x) otr(y) z` on odd pairs.
pub fn hat_q(n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    let base = q(n, f)?;
    let r = base.realization().unwrap().clone();
    let ne = base.n_even();
    let otr: Vec<Scalar> = (0..base.dim()).map(|i| r.odd_trace(&r.mats[i])).collect();
    let mut labels: Vec<String> = base.space().labels()[..ne].to_vec();
    labels.push("z".into());
    labels.extend(base.space().labels()[ne..].iter().cloned());
    let mut par = vec![0u8; ne + 1];
    par.extend(vec![1u8; base.dim() - ne]);
    let space = SuperSpace::new(labels, par)?;
    let old = |x: usize| if x < ne { Some(x) } else if x == ne { None } else { Some(x - 1) };
    let lift = |v: &SparseVec| v.remap(|k| Some(if k < ne { k } else { k + 1 }));
    let g = SuperLieAlgebra::from_half(format!("hat-q({n})"), f.clone(), space, |i, j| {
        let (Some(a), Some(b)) = (old(i), old(j)) else {
            return SparseVec::new();
        };
        let mut v = lift(base.bracket_basis(a, b));
        if base.parity(a) == 1 && base.parity(b) == 1 {
            let c = otr[a].mul(&otr[b]);
            if !c.is_zero() {
                v = v.add(&SparseVec::from_pairs([(ne, c)]));
            }
        }
        v
    })?;
    let mut h: Vec<SparseVec> = base.cartan().unwrap().iter().map(lift).collect();
    h.push(SparseVec::unit(ne));
    Ok(g.with_cartan(h))
}

/// Shared shape of `co` and `csp`: a matrix Lie algebra `L` on `E`, central
/// even part `C`, odd part `E (x) V`, odd bracket `form(e_a, e_b) pair(i, j)`.
fn clifford_type(
    name: String,
    l: &MatrixLie,
    form: &Matrix,
    nv: usize,
    central: Vec<(usize, usize)>,
    pair: impl Fn(usize, usize) -> Option<(usize, i64)>,
    f: &Arc<NumberField>,
) -> Result<SuperLieAlgebra> {
    let m = l.span.k;
    let dl = l.dim();
    let ne = dl + central.len();
    let mut labels = l.labels.clone();
    labels.extend(central.iter().map(|(i, j)| format!("v{}v{}", i + 1, j + 1)));
    for a in 0..m {
        for i in 0..nv {
            labels.push(format!("e{}v{}", a + 1, i + 1));
        }
    }
    let mut par = vec![0u8; ne];
    par.extend(vec![1u8; m * nv]);
    let space = SuperSpace::new(labels, par)?;
    let g = SuperLieAlgebra::from_half(name, f.clone(), space, |i, j| {
        if j < dl {
            return l.bracket(i, j);
        }
        if j < ne || i >= dl && i < ne {
            return SparseVec::new();
        }
        let (b, vj) = ((j - ne) / nv, (j - ne) % nv);
        if i < dl {
            let x = &l.mats()[i];
            return SparseVec::from_pairs((0..m).map(|r| (ne + r * nv + vj, x.get(r, b).clone())));
        }
        let (a, vi) = ((i - ne) / nv, (i - ne) % nv);
        let c = form.get(a, b);
        match pair(vi, vj) {
            Some((idx, s)) if !c.is_zero() => SparseVec::from_pairs([(dl + idx, c.mul(&Scalar::int(s)))]),
            _ => SparseVec::new(),
        }
    })?;
    let mut h: Vec<SparseVec> = l.diagonal().into_iter().map(SparseVec::unit).collect();
    h.extend((dl..ne).map(SparseVec::unit));
    Ok(g.with_cartan(h))
}

/// Pairs `(i, j)` with `i <= j` (or `i < j` when `strict`).
fn pairs(n: usize, strict: bool) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (if strict { i + 1 } else { i }..n).map(move |j| (i, j))).collect()
}

/// `co(m,n)`: `so(m) + S^2 V` with odd part `E (x) V`.
pub fn co(m: usize, n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidSpec("co(m,n) needs m, n >= 1".into()));
    }
    let gram = osp_gram(m, 0);
    let so = MatrixLie::new(m, &form_preserving(m, 0, &gram), "A");
    let pr = pairs(n, false);
    let idx = |i: usize, j: usize| pr.iter().position(|&p| p == (i.min(j), i.max(j))).map(|p| (p, 1));
    clifford_type(format!("co({m},{n})"), &so, &gram, n, pr.clone(), idx, f)
}

/// `csp(2m,n)`: `sp(2m) + Lambda^2 V` with odd part `E (x) V`.
pub fn csp(m2: usize, n: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if m2 < 2 || m2 % 2 == 1 || n < 1 {
        return Err(Error::InvalidSpec("csp(2m,n) needs an even 2m >= 2 and n >= 1".into()));
    }
    let gram = osp_gram(0, m2);
    let spm = MatrixLie::new(m2, &form_preserving(0, m2, &gram), "A");
    let pr = pairs(n, true);
    let idx = |i: usize, j: usize| {
        if i == j {
            return None;
        }
        let p = pr.iter().position(|&p| p == (i.min(j), i.max(j)))?;
        Some((p, if i < j { 1 } else { -1 }))
    };
    clifford_type(format!("csp({m2},{n})"), &spm, &gram, n, pr.clone(), idx, f)
}

/// `a(s,p,q)`: `gl(s) + X (x) Y` with odd part `E (x) X + E* (x) Y`.
pub fn a_spq(s: usize, p: usize, qd: usize, f: &Arc<NumberField>) -> Result<SuperLieAlgebra> {
    if s < 1 || p < 1 || qd < 1 {
        return Err(Error::InvalidSpec("a(s,p,q) needs s, p, q >= 1".into()));
    }
    let gens: Vec<Matrix> = (0..s).flat_map(|i| (0..s).map(move |j| super::matrix::unit(s, i, j))).collect();
    let gl = MatrixLie::new(s, &gens, "A");
    let dl = gl.dim();
    let ne = dl + p * qd;
    let ox = ne;
    let oy = ne + s * p;
    let mut labels = gl.labels.clone();
    for i in 0..p {
        for j in 0..qd {
            labels.push(format!("x{}y{}", i + 1, j + 1));
        }
    }
    for a in 0..s {
        for i in 0..p {
            labels.push(format!("e{}x{}", a + 1, i + 1));
        }
    }
    for a in 0..s {
        for j in 0..qd {
            labels.push(format!("f{}y{}", a + 1, j + 1));
        }
    }
    let mut par = vec![0u8; ne];
    par.extend(vec![1u8; s * (p + qd)]);
    let space = SuperSpace::new(labels, par)?;
    let g = SuperLieAlgebra::from_half(format!("a({s},{p},{qd})"), f.clone(), space, |i, j| {
        if j < dl {
            return gl.bracket(i, j);
        }
        if j < ne || (dl..ne).contains(&i) {
            return SparseVec::new();
        }
        if i < dl {
            let x = &gl.mats()[i];
            return if j < oy {
                let (b, xi) = ((j - ox) / p, (j - ox) % p);
                SparseVec::from_pairs((0..s).map(|r| (ox + r * p + xi, x.get(r, b).clone())))
            } else {
                // E* carries -A^t
                let (b, yj) = ((j - oy) / qd, (j - oy) % qd);
                SparseVec::from_pairs((0..s).map(|r| (oy + r * qd + yj, x.get(b, r).neg())))
            };
        }
        if i < oy && j >= oy {
            let (a, xi) = ((i - ox) / p, (i - ox) % p);
            let (b, yj) = ((j - oy) / qd, (j - oy) % qd);
            if a == b {
                return SparseVec::unit(dl + xi * qd + yj);
            }
        }
        SparseVec::new()
    })?;
    let mut h: Vec<SparseVec> = gl.diagonal().into_iter().map(SparseVec::unit).collect();
    h.extend((dl..ne).map(SparseVec::unit));
    Ok(g.with_cartan(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::validate;

    fn qf() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn doubles() {
        let kd = double(2, DoubleKind::Plain, &qf()).unwrap();
        assert_eq!(kd.dims(), (3, 3));
        for i in kd.odd_range() {
            for j in kd.odd_range() {
                assert!(kd.bracket_basis(i, j).is_zero());
            }
        }
        let hat = double(2, DoubleKind::Hat, &qf()).unwrap();
        assert_eq!(hat.dims(), (5, 4));
        let tilde = double(2, DoubleKind::Tilde, &qf()).unwrap();
        assert_eq!(tilde.dims(), (4, 4));
        for g in [kd, hat, tilde] {
            assert!(validate(&g).is_empty(), "{}", g.name());
            assert!(g.basis_weights().is_some());
        }
    }

    #[test]
    fn hat_q_matches_hat_double_dims() {
        let g = hat_q(2, &qf()).unwrap();
        assert_eq!(g.dims(), (5, 4));
        assert!(validate(&g).is_empty());
    }

    #[test]
    fn clifford_families() {
        let c = co(3, 2, &qf()).unwrap();
        assert_eq!(c.dims(), (6, 6));
        let s = csp(2, 2, &qf()).unwrap();
        assert_eq!(s.dims(), (4, 4));
        let a = a_spq(2, 1, 1, &qf()).unwrap();
        assert_eq!(a.dims(), (5, 4));
        for g in [c, s, a] {
            assert!(validate(&g).is_empty(), "{}", g.name());
            assert!(g.basis_weights().is_some(), "{}", g.name());
        }
    }
}
