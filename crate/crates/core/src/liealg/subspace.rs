use std::collections::VecDeque;

use super::{Realization, SuperLieAlgebra, SuperSpace};
use crate::exactla::sparse::{sparse_kernel, span_rref};
use crate::exactla::{Echelon, FieldElem, Matrix, Scalar, SparseVec};
use crate::{Error, Result};

/// A subspace of `F^n` stored by its reduced row echelon basis, so equality
/// of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { ambient: n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { ambient: n, rows: (0..n).map(SparseVec::unit).collect(), pivots: (0..n).collect() }
    }

    pub fn span(n: usize, vs: &[SparseVec]) -> Subspace {
        let rows = span_rref(vs, n);
        let pivots = rows.iter().map(|r| r.leading().unwrap().0).collect();
        Subspace { ambient: n, rows, pivots }
    }

    /// Span of the homogeneous components of `vs`.
    pub fn graded_span(space: &SuperSpace, vs: &[SparseVec]) -> Subspace {
        let parts: Vec<SparseVec> = vs.iter().flat_map(|v| [space.even_part(v), space.odd_part(v)]).collect();
        Subspace::span(space.dim(), &parts)
    }

    pub fn from_dense(n: usize, vs: &[Vec<Scalar>]) -> Subspace {
        let s: Vec<SparseVec> = vs.iter().map(|v| SparseVec::from_dense(v)).collect();
        Subspace::span(n, &s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Graded dimensions, counted by pivot parity (meaningful for graded subspaces).
    pub fn dims(&self, space: &SuperSpace) -> (usize, usize) {
        let odd = self.pivots.iter().filter(|&&p| space.parity(p) == 1).count();
        (self.dim() - odd, odd)
    }

    pub fn is_graded(&self, space: &SuperSpace) -> bool {
        self.rows.iter().all(|r| space.vector_parity(r).is_some())
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p);
            if !c.is_zero() {
                out = out.add_scaled(&c.neg(), r);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the RREF basis.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.pivots.iter().enumerate().filter_map(|(k, &p)| {
                let c = v.get(p);
                (!c.is_zero()).then_some((k, c))
            }).collect(),
        )
    }

    /// Vector of the ambient space from RREF coordinates.
    pub fn from_coords(&self, c: &SparseVec) -> SparseVec {
        let mut acc = crate::exactla::sparse::SparseAcc::new();
        for (k, x) in c.entries() {
            acc.add_vec(x, &self.rows[*k]);
        }
        acc.finish()
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(o.rows.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, &sparse_kernel(&self.rows, self.ambient))
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        let mut eqs = self.annihilator().rows;
        eqs.extend(o.annihilator().rows);
        Subspace::span(self.ambient, &sparse_kernel(&eqs, self.ambient))
    }

    /// Columns that are not pivots: their unit vectors span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_p[i]).collect()
    }

    /// Basis vectors as dense columns.
    pub fn dense_basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(self.ambient)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    Subalgebra,
    Ideal,
}

/// Smallest graded subalgebra (or ideal) containing the seed, together with
/// the induced algebra on its RREF basis.
pub fn subspace_closure(g: &SuperLieAlgebra, seed: &[SparseVec], mode: ClosureMode) -> (Subspace, SuperLieAlgebra) {
    let s = closure_subspace(g, seed, mode);
    let sub = subalgebra(g, &s, &format!("{}-closure", g.name()));
    (s, sub)
}

pub fn closure_subspace(g: &SuperLieAlgebra, seed: &[SparseVec], mode: ClosureMode) -> Subspace {
    let n = g.dim();
    let sp = g.space();
    let mut e = Echelon::new(n);
    let mut accepted: Vec<SparseVec> = Vec::new();
    let mut queue = VecDeque::new();
    for v in seed {
        for part in [sp.even_part(v), sp.odd_part(v)] {
            if !part.is_zero() && e.insert(&part).is_some() {
                accepted.push(part.clone());
                queue.push_back(part);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        if e.rank() == n {
            break;
        }
        let partners: Vec<SparseVec> = match mode {
            ClosureMode::Subalgebra => accepted.clone(),
            ClosureMode::Ideal => (0..n).map(SparseVec::unit).collect(),
        };
        for w in partners {
            let b = g.bracket(&w, &v);
            if b.is_zero() {
                continue;
            }
            if e.insert(&b).is_some() {
                accepted.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Subspace::span(n, &accepted)
}

fn unique_labels(cands: Vec<String>, prefix: &str) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let ok = cands.iter().all(|c| seen.insert(c.clone()));
    if ok {
        cands
    } else {
        (0..cands.len()).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// The algebra induced on a bracket-closed graded subspace, in its RREF basis.
/// Panics if the subspace is not closed (callers check first).
pub fn subalgebra(g: &SuperLieAlgebra, s: &Subspace, name: &str) -> SuperLieAlgebra {
    let sp = g.space();
    let par: Vec<u8> = s.basis().iter().map(|r| sp.vector_parity(r).expect("graded subspace")).collect();
    let labels = unique_labels(
        s.basis()
            .iter()
            .enumerate()
            .map(|(k, r)| if r.nnz() == 1 && r.entries()[0].1.is_one() { sp.label(r.entries()[0].0).to_string() } else { format!("s{k}") })
            .collect(),
        "s",
    );
    let space = SuperSpace::new(labels, par).unwrap();
    let rows = s.basis();
    let out = SuperLieAlgebra::from_half(name, g.field().clone(), space, |i, j| {
        let b = g.bracket(&rows[i], &rows[j]);
        debug_assert!(s.contains(&b), "subspace not closed under bracket");
        s.coords(&b)
    })
    .expect("graded RREF basis is canonically ordered");
    let mut out = out;
    if let Some(h) = g.cartan() {
        let hs = Subspace::span(g.dim(), h).intersection(s);
        out = out.with_cartan(hs.basis().iter().map(|v| s.coords(v)).collect());
    }
    if let Some(r) = g.realization() {
        let mats = rows.iter().map(|v| r.element(v)).collect();
        out = out.with_realization(Realization { m: r.m, n: r.n, mats, exact: r.exact });
    }
    out
}

/// `g / I` on the complement spanned by the non-pivot unit vectors of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: SuperLieAlgebra,
    pub ideal: Subspace,
    /// Basis vector `k` of the quotient is the image of `e_{complement[k]}`.
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.ideal.reduce(v);
        let pos: std::collections::HashMap<usize, usize> =
            self.complement.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        r.remap(|i| pos.get(&i).copied())
    }

    /// The section sending quotient basis vector `k` to `e_{complement[k]}`.
    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        v.remap(|k| Some(self.complement[k]))
    }
}

pub fn is_ideal(g: &SuperLieAlgebra, s: &Subspace) -> bool {
    s.is_graded(g.space())
        && (0..g.dim()).all(|i| s.basis().iter().all(|r| s.contains(&g.bracket_left(i, r))))
}

pub fn quotient(g: &SuperLieAlgebra, ideal: &Subspace) -> Result<Quotient> {
    if ideal.ambient() != g.dim() {
        return Err(Error::DimensionMismatch("ideal lives in a different space".into()));
    }
    if !ideal.is_graded(g.space()) {
        return Err(Error::NotAnIdeal("subspace is not graded".into()));
    }
    for i in 0..g.dim() {
        for r in ideal.basis() {
            if !ideal.contains(&g.bracket_left(i, r)) {
                return Err(Error::NotAnIdeal(format!("[{}, v] leaves the subspace", g.label(i))));
            }
        }
    }
    let comp = ideal.complement_columns();
    let pos: std::collections::HashMap<usize, usize> = comp.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let sp = g.space();
    let space = SuperSpace::new(
        comp.iter().map(|&c| sp.label(c).to_string()).collect(),
        comp.iter().map(|&c| sp.parity(c)).collect(),
    )?;
    let name = format!("{}/I", g.name());
    let alg = SuperLieAlgebra::from_half(name, g.field().clone(), space, |i, j| {
        let b = g.bracket_basis(comp[i], comp[j]);
        ideal.reduce(b).remap(|c| pos.get(&c).copied())
    })?;
    let mut q = Quotient { algebra: alg, ideal: ideal.clone(), complement: comp };
    if let Some(h) = g.cartan() {
        let imgs: Vec<SparseVec> = h.iter().map(|v| q.project(v)).collect();
        let hs = Subspace::span(q.complement.len(), &imgs);
        q.algebra = q.algebra.clone().with_cartan(hs.basis().to_vec());
    }
    if let Some(r) = g.realization() {
        let mats = q.complement.iter().map(|&c| r.mats[c].clone()).collect();
        q.algebra = q.algebra.clone().with_realization(Realization { m: r.m, n: r.n, mats, exact: ideal.is_zero() && r.exact });
    }
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub algebra: SuperLieAlgebra,
    /// `embeddings[c][k]` is the index of basis vector `k` of component `c`.
    pub embeddings: Vec<Vec<usize>>,
}

pub fn direct_sum(gs: &[SuperLieAlgebra]) -> Result<DirectSum> {
    let field = gs.first().map(|g| g.field().clone()).unwrap_or_else(crate::exactla::NumberField::rationals);
    if gs.iter().any(|g| g.field() != &field) {
        return Err(Error::InvalidField("summands over different fields".into()));
    }
    let total_even: usize = gs.iter().map(|g| g.n_even()).sum();
    let mut emb = Vec::new();
    let (mut e, mut o) = (0, total_even);
    let mut labels = vec![String::new(); gs.iter().map(|g| g.dim()).sum()];
    let mut par = vec![0u8; labels.len()];
    for (c, g) in gs.iter().enumerate() {
        let mut m = Vec::with_capacity(g.dim());
        for k in 0..g.dim() {
            let idx = if g.parity(k) == 0 {
                e += 1;
                e - 1
            } else {
                o += 1;
                o - 1
            };
            labels[idx] = format!("{}#{}", g.label(k), c);
            par[idx] = g.parity(k);
            m.push(idx);
        }
        emb.push(m);
    }
    let space = SuperSpace::new(labels, par)?;
    let mut owner = vec![(0usize, 0usize); space.dim()];
    for (c, m) in emb.iter().enumerate() {
        for (k, &i) in m.iter().enumerate() {
            owner[i] = (c, k);
        }
    }
    let name = gs.iter().map(|g| g.name().to_string()).collect::<Vec<_>>().join(" + ");
    let embc = emb.clone();
    let alg = SuperLieAlgebra::from_half(name, field, space, |i, j| {
        let (ci, ki) = owner[i];
        let (cj, kj) = owner[j];
        if ci != cj {
            return SparseVec::new();
        }
        gs[ci].bracket_basis(ki, kj).remap(|k| Some(embc[ci][k]))
    })?;
    let mut alg = alg;
    if gs.iter().all(|g| g.cartan().is_some()) {
        let mut h = Vec::new();
        for (c, g) in gs.iter().enumerate() {
            for v in g.cartan().unwrap() {
                h.push(v.remap(|k| Some(emb[c][k])));
            }
        }
        alg = alg.with_cartan(h);
    }
    Ok(DirectSum { algebra: alg, embeddings: emb })
}

/// Basis of the image of `ad` restricted to a list of vectors, as a subspace.
pub fn bracket_span(g: &SuperLieAlgebra, xs: &[SparseVec], ys: &[SparseVec]) -> Subspace {
    let mut vs = Vec::new();
    for x in xs {
        for y in ys {
            let b = g.bracket(x, y);
            if !b.is_zero() {
                vs.push(b);
            }
        }
    }
    Subspace::span(g.dim(), &vs)
}

/// Matrix with the given subspace basis as columns.
pub fn basis_matrix(s: &Subspace) -> Matrix {
    Matrix::from_columns(&s.dense_basis(), s.ambient())
}
