use std::collections::{BTreeMap, HashMap};


use serde::Serialize;

use crate::exactla::sparse::{sparse_kernel, SparseAcc};
use crate::exactla::{Echelon, FieldElem, Scalar, SparseVec};
use crate::liealg::{ksign, quotient, subalgebra, Quotient, SuperLieAlgebra, SuperSpace, Subspace};
use crate::parallel::par_map;
use crate::repn::{apply, compose, Op, SuperModule};
use crate::structure::{center, even_basis, module_complement};
use crate::{Error, Result};

/// `Der(g)` with its inner part and the quotient `D(g) = Der(g) / ad g`.
#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    /// Derivations as operators on `g`, even ones first.
    pub basis: Vec<Op>,
    pub algebra: SuperLieAlgebra,
    /// `ad g` in the coordinates of `basis`.
    pub inner: Subspace,
    pub outer: Quotient,
    pub dims: DerivationDims,
    pub witness: Option<SemidirectWitness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DerivationDims {
    pub der: (usize, usize),
    pub inner: (usize, usize),
    pub outer: (usize, usize),
}

/// A `g0`-stable complement to `ad g` in `Der(g)`.
#[derive(Clone, Debug)]
pub struct SemidirectWitness {
    pub complement: Subspace,
    pub closed: bool,
}

pub(crate) fn flatten(op: &Op, n: usize) -> SparseVec {
    SparseVec::from_pairs(op.iter().enumerate().flat_map(|(j, c)| c.entries().iter().map(move |(i, x)| (j * n + i, x.clone()))))
}

/// `[a, b] = ab - (-1)^{pq} ba`.
pub(crate) fn supercommutator(a: &Op, p: u8, b: &Op, q: u8) -> Op {
    let ab = compose(a, b);
    let ba = compose(b, a);
    let s = Scalar::int(-ksign(p, q));
    ab.iter().zip(&ba).map(|(x, y)| x.add_scaled(&s, y)).collect()
}

/// `d [x, y] = [d x, y] + (-1)^{p(d) p(x)} [x, d y]` on all basis pairs.
pub fn is_derivation(g: &SuperLieAlgebra, d: &Op, p: u8) -> bool {
    let n = g.dim();
    (0..n).all(|i| {
        (i..n).all(|j| {
            let lhs = apply(d, g.bracket_basis(i, j));
            let a = g.bracket(&d[i], &SparseVec::unit(j));
            let b = g.bracket(&SparseVec::unit(i), &d[j]).scale(&Scalar::int(ksign(p, g.parity(i))));
            lhs.sub(&a).sub(&b).is_zero()
        })
    })
}

#[cfg(test)]
pub(crate) fn parity_of(g: &SuperLieAlgebra, d: &Op) -> Option<u8> {
    let mut p = None;
    for (j, c) in d.iter().enumerate() {
        for (i, _) in c.entries() {
            let q = g.parity(*i) ^ g.parity(j);
            if p.is_some_and(|x| x != q) {
                return None;
            }
            p = Some(q);
        }
    }
    Some(p.unwrap_or(0))
}

/// Solves the Leibniz system. Unknowns `D_{k,i}` are grouped by parity and
/// by weight shift `wt(e_k) - wt(e_i)` when the basis consists of weight
/// vectors; each group is an independent linear system.
fn derivation_basis(g: &SuperLieAlgebra) -> Vec<(u8, Op)> {
    let n = g.dim();
    let w = g.basis_weights();
    let key = |k: usize, i: usize| -> (u8, Vec<Scalar>) {
        let p = g.parity(k) ^ g.parity(i);
        let mu = w.map(|w| w[k].iter().zip(&w[i]).map(|(a, b)| a.sub(b)).collect()).unwrap_or_default();
        (p, mu)
    };
    let mut blocks: BTreeMap<(u8, Vec<Scalar>), Vec<(usize, usize)>> = BTreeMap::new();
    for k in 0..n {
        for i in 0..n {
            blocks.entry(key(k, i)).or_default().push((k, i));
        }
    }
    // (a, b) with a <= b, and coefficient, for each k appearing in [e_a, e_b].
    let mut occurs: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a..n {
            for (k, c) in g.bracket_basis(a, b).entries() {
                occurs[*k].push((a, b, c.clone()));
            }
        }
    }
    let blocks: Vec<((u8, Vec<Scalar>), Vec<(usize, usize)>)> = blocks.into_iter().collect();
    let solved = par_map(&blocks, |((p, _), unknowns)| {
        let p = *p;
        let mut eqs: HashMap<(usize, usize, usize), SparseAcc> = HashMap::new();
        for (u, &(k, i)) in unknowns.iter().enumerate() {
            // D_{k,i} e_k from D[e_a, e_b], row k of the output.
            for (a, b, c) in &occurs[i] {
                eqs.entry((*a, *b, k)).or_default().add(u, c);
            }
            // -[D e_a, e_b] with a = i.
            for b in i..n {
                for (r, c) in g.bracket_basis(k, b).entries() {
                    eqs.entry((i, b, *r)).or_default().add(u, &c.neg());
                }
            }
            // -(-1)^{p p(a)} [e_a, D e_b] with b = i.
            for a in 0..=i {
                let s = Scalar::int(-ksign(p, g.parity(a)));
                for (r, c) in g.bracket_basis(a, k).entries() {
                    eqs.entry((a, i, *r)).or_default().add(u, &c.mul(&s));
                }
            }
        }
        let rows: Vec<SparseVec> = eqs.into_values().map(|a| a.finish()).filter(|r| !r.is_zero()).collect();
        sparse_kernel(&rows, unknowns.len())
            .into_iter()
            .map(|v| {
                let mut cols = vec![SparseAcc::new(); n];
                for (u, x) in v.entries() {
                    let (k, i) = unknowns[*u];
                    cols[i].add(k, x);
                }
                (p, cols.into_iter().map(|a| a.finish()).collect::<Op>())
            })
            .collect::<Vec<_>>()
    });
    let mut out: Vec<(u8, Op)> = solved.into_iter().flatten().collect();
    out.sort_by_key(|(p, _)| *p);
    out
}

pub fn derivations(g: &SuperLieAlgebra) -> Result<DerivationAlgebra> {
    let n = g.dim();
    let basis = derivation_basis(g);
    let mut ech = Echelon::tracked(n * n);
    for (_, d) in &basis {
        ech.insert(&flatten(d, n));
    }
    let coords = |d: &Op| ech.express(&flatten(d, n));
    let labels: Vec<String> = (0..basis.len()).map(|k| format!("D{k}")).collect();
    let space = SuperSpace::new(labels, basis.iter().map(|(p, _)| *p).collect())?;
    let ops: Vec<Op> = basis.iter().map(|(_, d)| d.clone()).collect();
    let pars: Vec<u8> = basis.iter().map(|(p, _)| *p).collect();
    let m = ops.len();
    let mut table = vec![SparseVec::new(); m * m];
    for i in 0..m {
        for j in i..m {
            table[i * m + j] = coords(&supercommutator(&ops[i], pars[i], &ops[j], pars[j]))
                .ok_or_else(|| Error::Validation("derivations are not closed under the bracket".into()))?;
        }
    }
    let algebra =
        SuperLieAlgebra::from_half(format!("Der({})", g.name()), g.field().clone(), space, |i, j| table[i * m + j].clone())?;
    let mut inner_vecs = Vec::new();
    for i in 0..n {
        let ad: Op = (0..n).map(|j| g.bracket_basis(i, j).clone()).collect();
        inner_vecs.push(coords(&ad).ok_or_else(|| Error::Validation("ad x is not in the derivation span".into()))?);
    }
    let inner = Subspace::span(ops.len(), &inner_vecs);
    let outer = quotient(&algebra, &inner)?;
    let z = center(g).dims(g.space());
    let der = algebra.dims();
    let inner_dims = inner.dims(algebra.space());
    if inner_dims != (g.n_even() - z.0, g.dim() - g.n_even() - z.1) {
        return Err(Error::Validation("dim ad g disagrees with dim g - dim Z(g)".into()));
    }
    let dims = DerivationDims { der, inner: inner_dims, outer: (der.0 - inner_dims.0, der.1 - inner_dims.1) };
    let witness = semidirect_witness(g, &algebra, &ops, &inner, &coords).ok();
    Ok(DerivationAlgebra { basis: ops, algebra, inner, outer, dims, witness })
}

/// `Der(g)` as a `g0`-module under `x . D = [ad x, D]`; a complement to
/// `ad g` stable under that action, and whether it closes under bracket.
fn semidirect_witness(
    g: &SuperLieAlgebra,
    der: &SuperLieAlgebra,
    ops: &[Op],
    inner: &Subspace,
    coords: &dyn Fn(&Op) -> Option<SparseVec>,
) -> Result<SemidirectWitness> {
    let n = g.dim();
    let g0s = Subspace::span(n, &even_basis(g));
    let g0 = subalgebra(g, &g0s, "g0");
    let mut mops = Vec::new();
    for x in g0s.basis() {
        let adx: Op = (0..n).map(|j| g.bracket(x, &SparseVec::unit(j))).collect();
        let mut cols = Vec::new();
        for (k, d) in ops.iter().enumerate() {
            let c = coords(&supercommutator(&adx, 0, d, der.parity(k)))
                .ok_or_else(|| Error::Validation("[ad x, D] left the derivations".into()))?;
            cols.push(c);
        }
        mops.push(cols);
    }
    let m = SuperModule::new(&g0, der.space().clone(), mops)?;
    let comp = module_complement(&m, inner)?;
    let b = comp.basis();
    let closed = b.iter().all(|x| b.iter().all(|y| comp.contains(&der.bracket(x, y))));
    Ok(SemidirectWitness { complement: comp, closed })
}

/// Action of a derivation on 2-cochains:
/// `(d.c)(x, y) = -c(dx, y) - (-1)^{p(d)p(x)} c(x, dy)`.
pub(crate) fn act_on_cochain(g: &SuperLieAlgebra, cs: &super::Cochains, c: &SparseVec, d: &Op, p: u8) -> SparseVec {
    SparseVec::from_pairs(cs.pairs.iter().enumerate().map(|(k, &(i, j))| {
        let a = cs.eval(c, &d[i], &SparseVec::unit(j));
        let b = cs.eval(c, &SparseVec::unit(i), &d[j]).mul(&Scalar::int(ksign(p, g.parity(i))));
        (k, a.add(&b).neg())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct_str;
    use crate::exactla::NumberField;

    fn der(s: &str) -> DerivationAlgebra {
        derivations(&construct_str(s, &NumberField::rationals()).unwrap()).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let d = der("psl(2,2)");
        assert_eq!(d.dims.der, (9, 8));
        assert_eq!(d.dims.outer, (3, 0));
        assert!(!d.outer.algebra.is_abelian());
        let d = der("kd(sl2)");
        assert_eq!(d.dims.outer, (1, 1));
        let d = der("osp(1,2)");
        assert_eq!(d.dims.outer, (0, 0));
        let d = der("gl(1,1)");
        for (k, op) in d.basis.iter().enumerate() {
            assert!(is_derivation(&construct_str("gl(1,1)", &NumberField::rationals()).unwrap(), op, d.algebra.parity(k)));
        }
    }

    #[test]
    fn leibniz_holds_and_parities_match() {
        let g = construct_str("psl(2,2)", &NumberField::rationals()).unwrap();
        let d = derivations(&g).unwrap();
        for (k, op) in d.basis.iter().enumerate() {
            assert!(is_derivation(&g, op, d.algebra.parity(k)));
            assert_eq!(parity_of(&g, op), Some(d.algebra.parity(k)));
        }
        assert!(d.witness.as_ref().is_some_and(|w| w.closed));
    }
}
