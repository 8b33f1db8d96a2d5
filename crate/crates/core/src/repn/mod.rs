//! Finite-dimensional graded modules.

mod hom;
mod hw;
mod induce;
mod simple;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::exactla::sparse::SparseAcc;
use crate::exactla::{FieldElem, Matrix, Scalar, SparseVec};
use crate::liealg::{ksign, scalar_json, SuperLieAlgebra, SuperSpace, Subspace};
use crate::{Error, Result};

pub use hom::{generating_set, hom_space, is_isomorphic, is_module_map, weight_blocks, HomSpace};
pub use hw::{
    cartan_module, cartan_subalgebra, gl_simple_module, highest_weight, kac_module_p, maximal_weights, CartanModule,
    HighestWeight, KacModule, KacSign,
};
pub use induce::{
    coinduce, induce, split_test, split_test_induced, twist_module, Direction, Induced, SplitKind, SplitOutcome, Twist,
};
pub use simple::{
    composition_factors, decompose_summands, envelope_dim, is_simple, loewy_data, radical, simple_types, socle, spin,
    LoewyData, Simplicity,
};

/// A linear operator stored by its columns.
pub type Op = Vec<SparseVec>;

pub fn apply(op: &Op, v: &SparseVec) -> SparseVec {
    let mut acc = SparseAcc::new();
    for (j, c) in v.entries() {
        acc.add_vec(c, &op[*j]);
    }
    acc.finish()
}

pub fn op_from_matrix(m: &Matrix) -> Op {
    (0..m.ncols()).map(|j| m.sparse_column(j)).collect()
}

pub fn op_to_matrix(op: &Op, rows: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, op.len());
    for (j, c) in op.iter().enumerate() {
        for (i, x) in c.entries() {
            m.set(*i, j, x.clone());
        }
    }
    m
}

/// `a . b` as operators.
pub fn compose(a: &Op, b: &Op) -> Op {
    b.iter().map(|c| apply(a, c)).collect()
}

pub fn transpose(op: &Op, rows: usize) -> Op {
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
    for (j, c) in op.iter().enumerate() {
        for (i, x) in c.entries() {
            cols[*i].push((j, x.clone()));
        }
    }
    cols.into_iter().map(SparseVec::from_sorted).collect()
}

/// Module over a Lie superalgebra: one operator per basis element of the
/// algebra, on a graded space.
#[derive(Clone, Debug)]
pub struct SuperModule {
    algebra: SuperLieAlgebra,
    space: SuperSpace,
    ops: Arc<Vec<Op>>,
    weights: Option<Arc<Vec<Vec<Scalar>>>>,
}

impl SuperModule {
    /// Builds a module from operators; weights are read off when every basis
    /// vector is an eigenvector of the designated Cartan.
    pub fn new(algebra: &SuperLieAlgebra, space: SuperSpace, ops: Vec<Op>) -> Result<SuperModule> {
        if ops.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!("{} operators for an algebra of dimension {}", ops.len(), algebra.dim())));
        }
        let d = space.dim();
        if ops.iter().any(|o| o.len() != d || o.iter().any(|c| c.max_index().is_some_and(|k| k >= d))) {
            return Err(Error::DimensionMismatch("operator size does not match the module".into()));
        }
        let mut m = SuperModule { algebra: algebra.clone(), space, ops: Arc::new(ops), weights: None };
        m.weights = m.compute_weights().map(Arc::new);
        Ok(m)
    }

    fn compute_weights(&self) -> Option<Vec<Vec<Scalar>>> {
        let h = self.algebra.cartan()?;
        let d = self.dim();
        let mut out = vec![Vec::with_capacity(h.len()); d];
        for hk in h {
            let op = self.element_op(hk);
            for (j, w) in out.iter_mut().enumerate() {
                let c = &op[j];
                match c.nnz() {
                    0 => w.push(Scalar::zero()),
                    1 if c.entries()[0].0 == j => w.push(c.entries()[0].1.clone()),
                    _ => return None,
                }
            }
        }
        Some(out)
    }

    pub fn algebra(&self) -> &SuperLieAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.space.dims()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.space.parity(i)
    }

    pub fn op(&self, i: usize) -> &Op {
        &self.ops[i]
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Weight of each basis vector, in coordinates dual to the designated Cartan.
    pub fn weights(&self) -> Option<&[Vec<Scalar>]> {
        self.weights.as_deref().map(|v| v.as_slice())
    }

    /// Operator of an arbitrary algebra element.
    pub fn element_op(&self, x: &SparseVec) -> Op {
        let d = self.dim();
        let mut cols = vec![SparseAcc::new(); d];
        for (i, c) in x.entries() {
            for (j, col) in self.ops[*i].iter().enumerate() {
                cols[j].add_vec(c, col);
            }
        }
        cols.into_iter().map(|a| a.finish()).collect()
    }

    pub fn act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (i, c) in x.entries() {
            let w = apply(&self.ops[*i], v);
            acc.add_vec(c, &w);
        }
        acc.finish()
    }

    pub fn matrix(&self, i: usize) -> Matrix {
        op_to_matrix(&self.ops[i], self.dim())
    }

    /// Adjoint module.
    pub fn adjoint(g: &SuperLieAlgebra) -> SuperModule {
        let n = g.dim();
        let ops = (0..n).map(|i| (0..n).map(|j| g.bracket_basis(i, j).clone()).collect()).collect();
        SuperModule::new(g, g.space().clone(), ops).expect("adjoint operators have the right size")
    }

    /// One-dimensional module of the given parity on which even basis vectors
    /// act by `values` and odd ones by zero.
    pub fn one_dim(g: &SuperLieAlgebra, values: &[Scalar], parity: u8) -> Result<SuperModule> {
        if values.len() != g.dim() {
            return Err(Error::DimensionMismatch("character length".into()));
        }
        let ops = (0..g.dim())
            .map(|i| {
                let c = if g.parity(i) == 0 { values[i].clone() } else { Scalar::zero() };
                vec![SparseVec::from_pairs([(0, c)])]
            })
            .collect();
        SuperModule::new(g, SuperSpace::anonymous("v", vec![parity]), ops)
    }

    pub fn trivial(g: &SuperLieAlgebra) -> SuperModule {
        SuperModule::one_dim(g, &vec![Scalar::zero(); g.dim()], 0).unwrap()
    }

    /// Defining module of a matrix realization.
    pub fn standard(g: &SuperLieAlgebra) -> Result<SuperModule> {
        let r = g.realization().ok_or_else(|| Error::Precondition(format!("{} has no matrix realization", g.name())))?;
        if !r.exact {
            return Err(Error::Precondition(format!("{}: realization is not a representation", g.name())));
        }
        let k = r.m + r.n;
        let pars: Vec<u8> = (0..k).map(|i| u8::from(i >= r.m)).collect();
        let ops = r.mats.iter().map(op_from_matrix).collect();
        SuperModule::new(g, SuperSpace::anonymous("v", pars), ops)
    }

    /// Same operators, parities flipped.
    pub fn parity_shift(&self) -> SuperModule {
        let labels = self.space.labels().iter().map(|l| format!("P{l}")).collect();
        let pars = self.space.parities().iter().map(|p| 1 - p).collect();
        SuperModule { algebra: self.algebra.clone(), space: SuperSpace::new(labels, pars).unwrap(), ops: self.ops.clone(), weights: self.weights.clone() }
    }

    /// `(x f)(v) = -(-1)^{p(x)p(f)} f(x v)`.
    pub fn dual(&self) -> SuperModule {
        let d = self.dim();
        let ops = (0..self.algebra.dim())
            .map(|i| {
                let px = self.algebra.parity(i);
                let t = transpose(&self.ops[i], d);
                t.into_iter()
                    .enumerate()
                    .map(|(b, col)| col.scale(&Scalar::int(-ksign(px, self.parity(b)))))
                    .collect()
            })
            .collect();
        let labels = self.space.labels().iter().map(|l| format!("{l}*")).collect();
        SuperModule::new(&self.algebra, SuperSpace::new(labels, self.space.parities().to_vec()).unwrap(), ops).unwrap()
    }

    /// `x (u (x) v) = xu (x) v + (-1)^{p(x)p(u)} u (x) xv`, basis `i * dim(n) + j`.
    pub fn tensor(&self, n: &SuperModule) -> Result<SuperModule> {
        if self.algebra.dim() != n.algebra.dim() {
            return Err(Error::DimensionMismatch("modules over different algebras".into()));
        }
        let (dm, dn) = (self.dim(), n.dim());
        let mut labels = Vec::with_capacity(dm * dn);
        let mut pars = Vec::with_capacity(dm * dn);
        for i in 0..dm {
            for j in 0..dn {
                labels.push(format!("{}.{}", self.space.label(i), n.space.label(j)));
                pars.push(self.parity(i) ^ n.parity(j));
            }
        }
        let ops = (0..self.algebra.dim())
            .map(|x| {
                let px = self.algebra.parity(x);
                let mut cols = Vec::with_capacity(dm * dn);
                for i in 0..dm {
                    let s = Scalar::int(ksign(px, self.parity(i)));
                    for j in 0..dn {
                        let mut acc = SparseAcc::new();
                        for (k, c) in self.ops[x][i].entries() {
                            acc.add(k * dn + j, c);
                        }
                        for (k, c) in n.ops[x][j].entries() {
                            acc.add(i * dn + k, &c.mul(&s));
                        }
                        cols.push(acc.finish());
                    }
                }
                cols
            })
            .collect();
        SuperModule::new(&self.algebra, SuperSpace::new(labels, pars)?, ops)
    }

    pub fn direct_sum(ms: &[SuperModule]) -> Result<SuperModule> {
        let g = &ms.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?.algebra;
        let mut labels = Vec::new();
        let mut pars = Vec::new();
        let mut offs = Vec::new();
        for (c, m) in ms.iter().enumerate() {
            offs.push(labels.len());
            for i in 0..m.dim() {
                labels.push(format!("{}#{c}", m.space.label(i)));
                pars.push(m.parity(i));
            }
        }
        let ops = (0..g.dim())
            .map(|x| {
                let mut cols = Vec::new();
                for (c, m) in ms.iter().enumerate() {
                    for col in &m.ops[x] {
                        cols.push(col.shift(offs[c]));
                    }
                }
                cols
            })
            .collect();
        SuperModule::new(g, SuperSpace::new(labels, pars)?, ops)
    }

    /// Restriction along an embedding: `emb[k]` is sub basis vector `k` in
    /// coordinates of this module's algebra.
    pub fn restrict(&self, sub: &SuperLieAlgebra, emb: &[SparseVec]) -> Result<SuperModule> {
        if emb.len() != sub.dim() {
            return Err(Error::DimensionMismatch("embedding length".into()));
        }
        let ops = emb.iter().map(|x| self.element_op(x)).collect();
        SuperModule::new(sub, self.space.clone(), ops)
    }

    /// The submodule on the RREF basis of `s` (checked for stability).
    pub fn submodule(&self, s: &Subspace) -> Result<SuperModule> {
        let rows = s.basis();
        let mut pars = Vec::with_capacity(rows.len());
        for r in rows {
            pars.push(self.space.vector_parity(r).ok_or_else(|| Error::Precondition("submodule is not graded".into()))?);
        }
        let mut ops = Vec::with_capacity(self.algebra.dim());
        for op in self.ops.iter() {
            let mut cols = Vec::with_capacity(rows.len());
            for r in rows {
                let img = apply(op, r);
                if !s.contains(&img) {
                    return Err(Error::Precondition("subspace is not a submodule".into()));
                }
                cols.push(s.coords(&img));
            }
            ops.push(cols);
        }
        let labels = (0..rows.len()).map(|i| format!("s{i}")).collect();
        SuperModule::new(&self.algebra, SuperSpace::new(labels, pars)?, ops)
    }

    /// `M / S` on the non-pivot unit vectors of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<(SuperModule, Vec<usize>)> {
        let comp = s.complement_columns();
        let pos: std::collections::HashMap<usize, usize> = comp.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut ops = Vec::with_capacity(self.algebra.dim());
        for op in self.ops.iter() {
            ops.push(comp.iter().map(|&c| s.reduce(&op[c]).remap(|k| pos.get(&k).copied())).collect());
        }
        let labels = comp.iter().map(|&c| self.space.label(c).to_string()).collect();
        let pars = comp.iter().map(|&c| self.parity(c)).collect();
        Ok((SuperModule::new(&self.algebra, SuperSpace::new(labels, pars)?, ops)?, comp))
    }

    /// Violations of parity compatibility and of
    /// `rho([x,y]) = rho(x)rho(y) - (-1)^{p(x)p(y)} rho(y)rho(x)`.
    pub fn check(&self) -> Vec<(usize, usize)> {
        let g = &self.algebra;
        let n = g.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for (j, col) in self.ops[i].iter().enumerate() {
                if col.entries().iter().any(|(k, _)| self.parity(*k) != self.parity(j) ^ g.parity(i)) {
                    bad.push((i, i));
                    break;
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let res = crate::parallel::par_map(&pairs, |&(i, j)| {
            let lhs = self.element_op(g.bracket_basis(i, j));
            let s = Scalar::int(ksign(g.parity(i), g.parity(j)));
            let ok = (0..self.dim()).all(|c| {
                let a = apply(&self.ops[i], &self.ops[j][c]);
                let b = apply(&self.ops[j], &self.ops[i][c]);
                lhs[c] == a.add_scaled(&s.neg(), &b)
            });
            (!ok).then_some((i, j))
        });
        bad.extend(res.into_iter().flatten());
        bad
    }

    /// Weight character: weight to graded dimension.
    pub fn character(&self) -> Result<Character> {
        let w = self.weights().ok_or_else(|| Error::Precondition("module has no weight basis".into()))?;
        let mut map: BTreeMap<Vec<Scalar>, (usize, usize)> = BTreeMap::new();
        for (i, wt) in w.iter().enumerate() {
            let e = map.entry(wt.clone()).or_default();
            if self.parity(i) == 0 {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        Ok(Character(map))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<SuperModule> {
        self.space = SuperSpace::new(labels, self.space.parities().to_vec())?;
        Ok(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        let deg = self.algebra.field().degree();
        let basis: Vec<serde_json::Value> = (0..d)
            .map(|i| serde_json::json!({"label": self.space.label(i), "parity": crate::liealg::parity_name(self.parity(i))}))
            .collect();
        let action: Vec<serde_json::Value> = self
            .ops
            .iter()
            .map(|op| {
                let mut ents = Vec::new();
                for (j, c) in op.iter().enumerate() {
                    for (i, x) in c.entries() {
                        ents.push(serde_json::json!([i, j, scalar_json(x, deg)]));
                    }
                }
                serde_json::Value::Array(ents)
            })
            .collect();
        serde_json::json!({"algebra": self.algebra.name(), "basis": basis, "action": action})
    }
}

/// Weight multiplicities `a + eps b` with `eps^2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character(pub BTreeMap<Vec<Scalar>, (usize, usize)>);

impl Character {
    /// Product of characters (weights add, `eps^2 = 1`).
    pub fn mul(&self, o: &Character) -> Character {
        let mut map: BTreeMap<Vec<Scalar>, (usize, usize)> = BTreeMap::new();
        for (w1, (a1, b1)) in &self.0 {
            for (w2, (a2, b2)) in &o.0 {
                let w: Vec<Scalar> = w1.iter().zip(w2).map(|(x, y)| x.add(y)).collect();
                let e = map.entry(w).or_default();
                e.0 += a1 * a2 + b1 * b2;
                e.1 += a1 * b2 + b1 * a2;
            }
        }
        Character(map)
    }

    /// Multiplication by `eps`.
    pub fn eps(&self) -> Character {
        Character(self.0.iter().map(|(w, &(a, b))| (w.clone(), (b, a))).collect())
    }

    pub fn total(&self) -> (usize, usize) {
        self.0.values().fold((0, 0), |(x, y), &(a, b)| (x + a, y + b))
    }

    pub fn to_json(&self, degree: usize) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(w, &(a, b))| serde_json::json!({"weight": w.iter().map(|x| scalar_json(x, degree)).collect::<Vec<_>>(), "dim": [a, b]}))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub dims: (usize, usize),
    pub simple: Option<bool>,
    pub loewy_length: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct_str, gl};
    use crate::exactla::NumberField;

    #[test]
    fn standard_and_adjoint_are_modules() {
        let g = gl(2, 1, &NumberField::rationals()).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        assert!(v.check().is_empty());
        assert!(SuperModule::adjoint(&g).check().is_empty());
        assert!(v.dual().check().is_empty());
        let t = v.tensor(&v.dual()).unwrap();
        assert!(t.check().is_empty());
        assert_eq!(t.dim(), 9);
    }

    #[test]
    fn characters_multiply() {
        let g = construct_str("q(2)", &NumberField::rationals()).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        let w = v.dual();
        let ct = v.tensor(&w).unwrap().character().unwrap();
        assert_eq!(ct, v.character().unwrap().mul(&w.character().unwrap()));
        assert_eq!(v.parity_shift().character().unwrap(), v.character().unwrap().eps());
    }

    #[test]
    fn gl11_standard_character() {
        let g = gl(1, 1, &NumberField::rationals()).unwrap();
        let ch = SuperModule::standard(&g).unwrap().character().unwrap();
        assert_eq!(ch.total(), (1, 1));
        assert_eq!(ch.0.len(), 2);
    }
}
