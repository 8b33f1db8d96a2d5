use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::hom::{generating_set, hom_space, HomSpace};
use super::{apply, Op, SuperModule};
use crate::exactla::sparse::{sparse_kernel, SparseAcc};
use crate::exactla::{FieldElem, Scalar, SparseVec};
use crate::liealg::{subalgebra, SuperLieAlgebra, SuperSpace, Subspace};
use crate::{Error, Result};

/// Modules larger than this are not built by the direct split test.
const SPLIT_BUDGET: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Induced,
    Coinduced,
}

/// `U(g) (x)_{U(k)} M0` on the basis `y_S (x) m` (ordered monomials in the odd
/// complement), or the dual of such a module for coinduction.
#[derive(Clone, Debug)]
pub struct Induced {
    pub direction: Direction,
    pub module: SuperModule,
    /// The `k`-module that was induced (for coinduction, the dual of the
    /// argument).
    pub base: SuperModule,
    pub sub: Subspace,
    pub sub_algebra: SuperLieAlgebra,
    /// Basis indices of `g` spanning the complement of `k`.
    pub complement: Vec<usize>,
}

struct Straightener<'a> {
    g: &'a SuperLieAlgebra,
    sub: &'a Subspace,
    base: &'a SuperModule,
    ys: &'a [usize],
    ypos: HashMap<usize, usize>,
    d0: usize,
    f_memo: HashMap<(usize, u64), Arc<Vec<SparseVec>>>,
    g_memo: HashMap<(usize, u64), Arc<Vec<SparseVec>>>,
}

impl<'a> Straightener<'a> {
    fn idx(&self, mask: u64, m: usize) -> usize {
        mask as usize * self.d0 + m
    }

    /// `y_j . v` for an induced vector `v`.
    fn apply_y(&mut self, j: usize, v: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (idx, c) in v.entries() {
            let (mask, m) = ((idx / self.d0) as u64, idx % self.d0);
            let fam = self.gy(j, mask);
            acc.add_vec(c, &fam[m]);
        }
        acc.finish()
    }

    /// Action of an arbitrary algebra vector on `y_mask (x) e_m`, all `m`.
    fn f_vec(&mut self, x: &SparseVec, mask: u64) -> Vec<SparseVec> {
        let mut cols = vec![SparseAcc::new(); self.d0];
        for (i, c) in x.entries() {
            let f = self.f(*i, mask);
            for (m, col) in f.iter().enumerate() {
                cols[m].add_vec(c, col);
            }
        }
        cols.into_iter().map(|a| a.finish()).collect()
    }

    /// `e_i . (y_mask (x) e_m)`.
    fn f(&mut self, i: usize, mask: u64) -> Arc<Vec<SparseVec>> {
        if let Some(v) = self.f_memo.get(&(i, mask)) {
            return v.clone();
        }
        let out = if let Some(&j) = self.ypos.get(&i) {
            self.gy(j, mask).as_ref().clone()
        } else if mask == 0 {
            let e = SparseVec::unit(i);
            let ypart = self.sub.reduce(&e);
            let coords = self.sub.coords(&e.sub(&ypart));
            let mut op = self.base.element_op(&coords);
            for (c, x) in ypart.entries() {
                let j = self.ypos[c];
                for (m, col) in op.iter_mut().enumerate() {
                    *col = col.add_scaled(x, &SparseVec::unit(self.idx(1 << j, m)));
                }
            }
            op
        } else {
            let s1 = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let sign = Scalar::int(if self.g.parity(i) == 1 { -1 } else { 1 });
            let inner = self.f(i, rest);
            let br = self.g.bracket_basis(i, self.ys[s1]).clone();
            let extra = self.f_vec(&br, rest);
            (0..self.d0)
                .map(|m| {
                    let a = self.apply_y(s1, &inner[m]);
                    a.scale(&sign).add(&extra[m])
                })
                .collect()
        };
        let out = Arc::new(out);
        self.f_memo.insert((i, mask), out.clone());
        out
    }

    /// `y_j . (y_mask (x) e_m)`.
    fn gy(&mut self, j: usize, mask: u64) -> Arc<Vec<SparseVec>> {
        if let Some(v) = self.g_memo.get(&(j, mask)) {
            return v.clone();
        }
        let out: Vec<SparseVec> = if mask == 0 || (j as u32) < mask.trailing_zeros() {
            let nm = mask | (1u64 << j);
            (0..self.d0).map(|m| SparseVec::unit(self.idx(nm, m))).collect()
        } else {
            let s1 = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let yj = self.ys[j];
            if j == s1 {
                let br = self.g.bracket_basis(yj, yj).scale(&Scalar::frac(1, 2));
                self.f_vec(&br, rest)
            } else {
                let inner = self.gy(j, rest);
                let br = self.g.bracket_basis(yj, self.ys[s1]).clone();
                let extra = self.f_vec(&br, rest);
                (0..self.d0)
                    .map(|m| {
                        let a = self.apply_y(s1, &inner[m]);
                        extra[m].sub(&a)
                    })
                    .collect()
            }
        };
        let out = Arc::new(out);
        self.g_memo.insert((j, mask), out.clone());
        out
    }
}

/// Induction from the subalgebra `sub` (which must have a purely odd
/// complement spanned by basis vectors not among its pivots).
pub fn induce(g: &SuperLieAlgebra, sub: &Subspace, m0: &SuperModule) -> Result<Induced> {
    if m0.algebra().dim() != sub.dim() {
        return Err(Error::DimensionMismatch("module is not over the given subalgebra".into()));
    }
    let ys = sub.complement_columns();
    if ys.iter().any(|&i| g.parity(i) == 0) {
        return Err(Error::Precondition("the complement of the subalgebra must be odd".into()));
    }
    if ys.len() > 20 {
        return Err(Error::Budget(format!("induction over a complement of dimension {}", ys.len())));
    }
    let d0 = m0.dim();
    let r = ys.len();
    let total = (1usize << r) * d0;
    let mut st = Straightener {
        g,
        sub,
        base: m0,
        ys: &ys,
        ypos: ys.iter().enumerate().map(|(k, &i)| (i, k)).collect(),
        d0,
        f_memo: HashMap::new(),
        g_memo: HashMap::new(),
    };
    let mut ops: Vec<Op> = Vec::with_capacity(g.dim());
    for i in 0..g.dim() {
        let mut cols = Vec::with_capacity(total);
        for mask in 0..(1u64 << r) {
            cols.extend(st.f(i, mask).iter().cloned());
        }
        ops.push(cols);
    }
    let mut labels = Vec::with_capacity(total);
    let mut pars = Vec::with_capacity(total);
    for mask in 0..(1u64 << r) {
        for m in 0..d0 {
            labels.push(format!("{mask:0w$b}.{}", m0.space().label(m), w = r.max(1)));
            pars.push((mask.count_ones() as u8 + m0.parity(m)) % 2);
        }
    }
    let module = SuperModule::new(g, SuperSpace::new(labels, pars)?, ops)?;
    Ok(Induced {
        direction: Direction::Induced,
        module,
        base: m0.clone(),
        sub: sub.clone(),
        sub_algebra: m0.algebra().clone(),
        complement: ys,
    })
}

/// Coinduction, realized as the dual of the module induced from the dual.
pub fn coinduce(g: &SuperLieAlgebra, sub: &Subspace, m0: &SuperModule) -> Result<Induced> {
    let ind = induce(g, sub, &m0.dual())?;
    Ok(Induced { direction: Direction::Coinduced, module: ind.module.dual(), ..ind })
}

impl Induced {
    /// `2^{odd codim} dim M0`.
    pub fn expected_dim(&self) -> usize {
        (1usize << self.complement.len()) * self.base.dim()
    }

    /// Module maps out of an induced module, from the subalgebra maps
    /// `M0 -> N|k` (Frobenius reciprocity). Only for `Direction::Induced`.
    pub fn homs_to(&self, n: &SuperModule) -> Result<HomSpace> {
        if self.direction != Direction::Induced {
            return Err(Error::Precondition("reciprocity maps need an induced module".into()));
        }
        let g = self.module.algebra();
        let res = n.restrict(&self.sub_algebra, self.sub.basis())?;
        let h0 = hom_space(&self.base, &res, 0);
        let d0 = self.base.dim();
        let r = self.complement.len();
        let mut basis = Vec::with_capacity(h0.dim());
        for psi in &h0.basis {
            let mut cols = Vec::with_capacity(self.module.dim());
            for mask in 0..(1u64 << r) {
                for m in 0..d0 {
                    let mut v = psi[m].clone();
                    for j in (0..r).rev() {
                        if mask & (1 << j) != 0 {
                            v = apply(n.op(self.complement[j]), &v);
                        }
                    }
                    cols.push(v);
                }
            }
            let gens = generating_set(g, false);
            let ok = gens.iter().all(|&x| {
                (0..cols.len()).all(|a| apply(&cols, &self.module.op(x)[a]) == apply(n.op(x), &cols[a]))
            });
            if !ok {
                return Err(Error::Validation("extended map is not a module map".into()));
            }
            basis.push(cols);
        }
        Ok(HomSpace { parity: 0, rows: n.dim(), basis })
    }
}

/// One-dimensional `k`-module `Lambda^top(g/k)`: even `x` acts by the trace
/// of `ad x` on `g/k`, with parity `dim(g/k) mod 2`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub module: SuperModule,
    pub values: Vec<Scalar>,
    pub nontrivial: bool,
}

pub fn twist_module(g: &SuperLieAlgebra, sub: &Subspace) -> Result<Twist> {
    let k = subalgebra(g, sub, "k");
    let ys = sub.complement_columns();
    let mut values = Vec::with_capacity(k.dim());
    for (a, row) in sub.basis().iter().enumerate() {
        if k.parity(a) == 1 {
            values.push(Scalar::zero());
            continue;
        }
        let mut tr = Scalar::zero();
        for &y in &ys {
            let img = sub.reduce(&g.bracket(row, &SparseVec::unit(y)));
            tr = tr.add(&img.get(y));
        }
        values.push(tr);
    }
    let nontrivial = values.iter().any(|v| !v.is_zero());
    let module = SuperModule::one_dim(&k, &values, (ys.len() % 2) as u8)?;
    Ok(Twist { module, values, nontrivial })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitKind {
    Projective,
    Injective,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SplitOutcome {
    pub splits: bool,
    pub method: &'static str,
    /// Dimension of the module through which the test factors.
    pub test_dim: usize,
}

fn even_subspace(g: &SuperLieAlgebra) -> Subspace {
    Subspace::span(g.dim(), &g.even_range().map(SparseVec::unit).collect::<Vec<_>>())
}

/// Whether the natural map `Ind(M|g0) -> M` has a module section
/// (projective), or dually for injectivity (`M` injective iff `M*`
/// projective).
pub fn split_test(m: &SuperModule, kind: SplitKind) -> Result<SplitOutcome> {
    let m = match kind {
        SplitKind::Projective => m.clone(),
        SplitKind::Injective => m.dual(),
    };
    let g = m.algebra();
    let g0 = even_subspace(g);
    let total = (1usize << g.odd_range().len()) * m.dim();
    if total > SPLIT_BUDGET {
        return Err(Error::Budget(format!("split test would need a module of dimension {total}")));
    }
    let k = subalgebra(g, &g0, "g0");
    let res = m.restrict(&k, g0.basis())?;
    let ind = induce(g, &g0, &res)?;
    let d = m.dim();
    let r = ind.complement.len();
    // pi(y_S (x) v) = y_{s1} ... y_{sk} v
    let mut pi: Op = Vec::with_capacity(ind.module.dim());
    for mask in 0..(1u64 << r) {
        for v in 0..d {
            let mut x = SparseVec::unit(v);
            for j in (0..r).rev() {
                if mask & (1 << j) != 0 {
                    x = apply(m.op(ind.complement[j]), &x);
                }
            }
            pi.push(x);
        }
    }
    let homs = hom_space(&m, &ind.module, 0);
    // columns: vec(pi sigma_k), last column -vec(id)
    let mut rows: HashMap<usize, SparseAcc> = HashMap::new();
    for (kk, sigma) in homs.basis.iter().enumerate() {
        for (a, col) in sigma.iter().enumerate() {
            for (i, c) in apply(&pi, col).entries() {
                rows.entry(a * d + i).or_default().add(kk, c);
            }
        }
    }
    let last = homs.dim();
    for a in 0..d {
        rows.entry(a * d + a).or_default().add(last, &Scalar::int(-1));
    }
    let eqs: Vec<SparseVec> = rows.into_values().map(|a| a.finish()).collect();
    let ker = sparse_kernel(&eqs, last + 1);
    let splits = ker.iter().any(|v| !v.get(last).is_zero());
    Ok(SplitOutcome { splits, method: "section", test_dim: ind.module.dim() })
}

/// Split test for a module known to be induced from `g0`: the section is
/// determined on the generating copy of `M0` (Frobenius reciprocity), so it
/// suffices that `M0 -> Ind(M0)|g0` is a `g0`-map whose image generates.
pub fn split_test_induced(ind: &Induced, kind: SplitKind) -> Result<SplitOutcome> {
    let g = ind.module.algebra();
    if ind.sub.dim() != g.n_even() || ind.sub != even_subspace(g) {
        return Err(Error::Precondition("reciprocity test needs induction from the even part".into()));
    }
    let want = match (kind, ind.direction) {
        (SplitKind::Projective, Direction::Induced) | (SplitKind::Injective, Direction::Coinduced) => true,
        _ => return Err(Error::Precondition("projective needs an induced module, injective a coinduced one".into())),
    };
    // For coinduction the module is the dual of an induced one; work on the latter.
    let induced = match ind.direction {
        Direction::Induced => ind.module.clone(),
        Direction::Coinduced => ind.module.dual(),
    };
    let d0 = ind.base.dim();
    let mut ok = true;
    for (a, row) in ind.sub.basis().iter().enumerate() {
        let opx = induced.element_op(row);
        for m in 0..d0 {
            if opx[m] != ind.base.op(a)[m] {
                ok = false;
            }
        }
    }
    let gens: Vec<SparseVec> = (0..d0).map(SparseVec::unit).collect();
    let generated = super::spin(&induced, &gens).dim() == induced.dim();
    Ok(SplitOutcome { splits: want && ok && generated, method: "reciprocity", test_dim: induced.dim() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct_str, gl, osp};
    use crate::exactla::NumberField;

    fn g0_trivial(g: &SuperLieAlgebra) -> (Subspace, SuperModule) {
        let g0 = even_subspace(g);
        let k = subalgebra(g, &g0, "g0");
        (g0, SuperModule::trivial(&k))
    }

    #[test]
    fn induced_modules_are_modules() {
        let f = NumberField::rationals();
        for g in [gl(1, 1, &f).unwrap(), osp(1, 2, &f).unwrap(), construct_str("q(2)", &f).unwrap()] {
            let (g0, t) = g0_trivial(&g);
            let ind = induce(&g, &g0, &t).unwrap();
            assert_eq!(ind.module.dim(), ind.expected_dim());
            assert!(ind.module.check().is_empty(), "{}", g.name());
            let co = coinduce(&g, &g0, &t).unwrap();
            assert!(co.module.check().is_empty());
        }
    }

    #[test]
    fn trivial_module_projectivity() {
        let f = NumberField::rationals();
        let g = gl(1, 1, &f).unwrap();
        assert!(!split_test(&SuperModule::trivial(&g), SplitKind::Projective).unwrap().splits);
        let h = osp(1, 2, &f).unwrap();
        assert!(split_test(&SuperModule::trivial(&h), SplitKind::Projective).unwrap().splits);
        let (g0, t) = g0_trivial(&g);
        let ind = induce(&g, &g0, &t).unwrap();
        assert!(split_test(&ind.module, SplitKind::Projective).unwrap().splits);
        assert!(split_test_induced(&ind, SplitKind::Projective).unwrap().splits);
    }

    #[test]
    fn twist_for_gl11_is_trivial() {
        let g = gl(1, 1, &NumberField::rationals()).unwrap();
        let t = twist_module(&g, &even_subspace(&g)).unwrap();
        assert!(!t.nontrivial);
        assert_eq!(t.module.parity(0), 0);
    }
}
