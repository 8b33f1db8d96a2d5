use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hom::{generating_set, hom_space, is_isomorphic, weight_blocks};
use super::{apply, compose, transpose, Op, SuperModule};
use crate::exactla::{Echelon, FieldElem, Matrix, SPoly, Scalar, SparseVec};
use crate::exactla::poly::Poly;
use crate::liealg::Subspace;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero graded submodule.
    Reducible(Subspace),
    Unknown(String),
}

impl Simplicity {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Simplicity::Simple => Some(true),
            Simplicity::Reducible(_) => Some(false),
            Simplicity::Unknown(_) => None,
        }
    }
}

fn gen_ops(m: &SuperModule) -> Vec<Op> {
    generating_set(m.algebra(), false).into_iter().map(|i| m.op(i).clone()).collect()
}

fn spin_with(ops: &[Op], parities: &[u8], seeds: &[SparseVec]) -> Subspace {
    let d = parities.len();
    let mut e = Echelon::new(d);
    let mut acc = Vec::new();
    let mut queue = VecDeque::new();
    let split = |v: &SparseVec| -> [SparseVec; 2] {
        let mut parts = [Vec::new(), Vec::new()];
        for (i, c) in v.entries() {
            parts[parities[*i] as usize].push((*i, c.clone()));
        }
        parts.map(SparseVec::from_sorted)
    };
    for v in seeds {
        for p in split(v) {
            if !p.is_zero() && e.insert(&p).is_some() {
                acc.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        if e.rank() == d {
            break;
        }
        for op in ops {
            let w = apply(op, &v);
            if !w.is_zero() && e.insert(&w).is_some() {
                acc.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    Subspace::span(d, &acc)
}

/// Smallest graded submodule containing `seeds`.
pub fn spin(m: &SuperModule, seeds: &[SparseVec]) -> Subspace {
    spin_with(&gen_ops(m), m.space().parities(), seeds)
}

/// Associative algebra generated by the action and the parity operator.
pub fn envelope_dim(m: &SuperModule) -> usize {
    let d = m.dim();
    let par: Op = (0..d).map(|i| SparseVec::from_pairs([(i, Scalar::int(if m.parity(i) == 0 { 1 } else { -1 }))])).collect();
    let mut gens = gen_ops(m);
    gens.push(par);
    envelope_of(&gens, d)
}

fn vectorize(op: &Op, d: usize) -> SparseVec {
    SparseVec::from_sorted(op.iter().enumerate().flat_map(|(j, c)| c.entries().iter().map(move |(i, x)| (j * d + i, x.clone()))).collect())
}

fn envelope_of(gens: &[Op], d: usize) -> usize {
    let full = d * d;
    let id: Op = (0..d).map(SparseVec::unit).collect();
    let mut e = Echelon::new(full);
    e.insert(&vectorize(&id, d));
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        if e.rank() == full {
            break;
        }
        for gop in gens {
            let y = compose(gop, &x);
            if e.insert(&vectorize(&y, d)).is_some() {
                queue.push_back(y);
            }
        }
    }
    e.rank()
}

/// Operators preserving the weight space `idx` that are built from degree-zero
/// words of length at most two, restricted to that space.
fn weight_space_algebra(m: &SuperModule, idx: &[usize]) -> Option<Vec<Op>> {
    let g = m.algebra();
    let gw = g.basis_weights()?;
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let restrict = |f: &dyn Fn(&SparseVec) -> SparseVec| -> Op {
        idx.iter().map(|&i| f(&SparseVec::unit(i)).remap(|r| pos.get(&r).copied())).collect()
    };
    let zero: Vec<Scalar> = vec![Scalar::zero(); gw.first().map_or(0, |w| w.len())];
    let mut out = vec![restrict(&|v: &SparseVec| {
        SparseVec::from_sorted(v.entries().iter().map(|(i, c)| (*i, if m.parity(*i) == 0 { c.clone() } else { c.neg() })).collect())
    })];
    let n = g.dim();
    for x in 0..n {
        if gw[x] == zero {
            out.push(restrict(&|v: &SparseVec| apply(m.op(x), v)));
        }
        for y in 0..n {
            let s: Vec<Scalar> = gw[x].iter().zip(&gw[y]).map(|(a, b)| a.add(b)).collect();
            if s == zero && gw[x] != zero {
                out.push(restrict(&|v: &SparseVec| apply(m.op(x), &apply(m.op(y), v))));
            }
        }
    }
    Some(out)
}

/// Simplicity by a Norton-type criterion on a weight space of minimal
/// dimension; falls back to exhaustive spinning.
pub fn is_simple(m: &SuperModule, seed: u64) -> Simplicity {
    let d = m.dim();
    if d == 0 {
        return Simplicity::Reducible(Subspace::zero(0));
    }
    if d == 1 {
        return Simplicity::Simple;
    }
    let ops = gen_ops(m);
    let tops: Vec<Op> = ops.iter().map(|o| transpose(o, d)).collect();
    let pars = m.space().parities();
    let check_vec = |i: usize| -> Option<Simplicity> {
        let s = spin_with(&ops, pars, &[SparseVec::unit(i)]);
        (s.dim() < d).then_some(Simplicity::Reducible(s))
    };
    let check_fun = |i: usize| -> Option<Simplicity> {
        let t = spin_with(&tops, pars, &[SparseVec::unit(i)]);
        (t.dim() < d).then(|| Simplicity::Reducible(t.annihilator()))
    };
    if let Some(w) = m.weights() {
        let mut spaces: BTreeMap<&[Scalar], Vec<usize>> = BTreeMap::new();
        for (i, wt) in w.iter().enumerate() {
            spaces.entry(wt.as_slice()).or_default().push(i);
        }
        let mut order: Vec<&Vec<usize>> = spaces.values().collect();
        order.sort_by_key(|v| v.len());
        for idx in order.iter().take(3) {
            if let Some(r) = check_vec(idx[0]) {
                return r;
            }
            if let Some(r) = check_fun(idx[0]) {
                return r;
            }
            let certified = idx.len() == 1
                || weight_space_algebra(m, idx).is_some_and(|b| envelope_of(&b, idx.len()) == idx.len() * idx.len());
            if certified {
                return Simplicity::Simple;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..d).collect();
    for k in (1..d).rev() {
        order.swap(k, rng.gen_range(0..=k));
    }
    for &i in &order {
        if let Some(r) = check_vec(i).or_else(|| check_fun(i)) {
            return r;
        }
    }
    if d <= 24 {
        let mut gens = ops.clone();
        gens.push((0..d).map(|i| SparseVec::from_pairs([(i, Scalar::int(if pars[i] == 0 { 1 } else { -1 }))])).collect());
        if envelope_of(&gens, d) == d * d {
            return Simplicity::Simple;
        }
    }
    Simplicity::Unknown(format!("no certificate for a module of dimension {d}"))
}

/// Composition factors (with multiplicity) by repeated splitting.
pub fn composition_factors(m: &SuperModule, seed: u64) -> Result<Vec<SuperModule>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match is_simple(&x, seed) {
            Simplicity::Simple => out.push(x),
            Simplicity::Reducible(s) => {
                stack.push(x.submodule(&s)?);
                stack.push(x.quotient(&s)?.0);
            }
            Simplicity::Unknown(why) => return Err(Error::Budget(why)),
        }
    }
    Ok(out)
}

/// Isomorphism types among the factors, closed under parity shift.
pub fn simple_types(factors: &[SuperModule], seed: u64) -> Vec<SuperModule> {
    let mut types: Vec<SuperModule> = Vec::new();
    for f in factors {
        for cand in [f.clone(), f.parity_shift()] {
            if !types.iter().any(|t| is_isomorphic(t, &cand, seed)) {
                types.push(cand);
            }
        }
    }
    types
}

/// Sum of all simple submodules, given the simple types that can occur.
pub fn socle(m: &SuperModule, types: &[SuperModule]) -> Subspace {
    let mut vs = Vec::new();
    for t in types {
        for phi in hom_space(t, m, 0).basis {
            vs.extend(phi.into_iter().filter(|c| !c.is_zero()));
        }
    }
    Subspace::span(m.dim(), &vs)
}

/// Intersection of the kernels of all maps onto simple modules.
pub fn radical(m: &SuperModule, types: &[SuperModule]) -> Subspace {
    let mut rows = Vec::new();
    for t in types {
        for phi in hom_space(m, t, 0).basis {
            rows.extend(transpose(&phi, t.dim()).into_iter().filter(|r| !r.is_zero()));
        }
    }
    Subspace::span(m.dim(), &rows).annihilator()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LoewyData {
    /// Graded dimensions of successive socle layers.
    pub socle_layers: Vec<(usize, usize)>,
    /// Graded dimensions of successive radical layers (top first).
    pub radical_layers: Vec<(usize, usize)>,
    pub length: usize,
    pub composition_length: usize,
}

fn lift(q: &[usize], v: &SparseVec) -> SparseVec {
    v.remap(|k| Some(q[k]))
}

/// Socle and radical series; their lengths agree for finite-dimensional modules.
pub fn loewy_data(m: &SuperModule, seed: u64) -> Result<LoewyData> {
    let factors = composition_factors(m, seed)?;
    let types = simple_types(&factors, seed);
    let d = m.dim();
    let space = m.space();
    let mut socle_layers = Vec::new();
    let mut cur = Subspace::zero(d);
    while cur.dim() < d {
        let (q, cols) = m.quotient(&cur)?;
        let s = socle(&q, &types);
        if s.is_zero() {
            return Err(Error::Validation("empty socle in a nonzero module".into()));
        }
        let lifted: Vec<SparseVec> = s.basis().iter().map(|v| lift(&cols, v)).collect();
        let next = cur.sum(&Subspace::span(d, &lifted));
        let (a, b) = next.dims(space);
        let (c, e) = cur.dims(space);
        socle_layers.push((a - c, b - e));
        cur = next;
    }
    let mut radical_layers = Vec::new();
    let mut sub = m.clone();
    while sub.dim() > 0 {
        let r = radical(&sub, &types);
        let (a, b) = sub.dims();
        let (c, e) = r.dims(sub.space());
        if r.dim() == sub.dim() {
            return Err(Error::Validation("radical equals the module".into()));
        }
        radical_layers.push((a - c, b - e));
        sub = sub.submodule(&r)?;
    }
    if socle_layers.len() != radical_layers.len() {
        return Err(Error::Validation(format!(
            "socle series has {} layers but radical series has {}",
            socle_layers.len(),
            radical_layers.len()
        )));
    }
    Ok(LoewyData { length: socle_layers.len(), socle_layers, radical_layers, composition_length: factors.len() })
}

fn poly_of_matrix(p: &SPoly, a: &Matrix) -> Matrix {
    let n = a.nrows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(a).add(&Matrix::identity(n).scale(c));
    }
    acc
}

fn multiplicity(p: &SPoly, f: &SPoly) -> (usize, SPoly) {
    let mut k = 0;
    let mut q = p.clone();
    loop {
        let (d, r) = q.divrem(f);
        if !r.is_zero() {
            return (k, q);
        }
        q = d;
        k += 1;
    }
}

/// Two coprime nonconstant factors `(a, b)` with `p = a b`, if they can be
/// found over the rationals.
fn coprime_split(p: &SPoly) -> Result<Option<(SPoly, SPoly)>> {
    let Some(q) = crate::exactla::rational_poly(p) else {
        return Ok(None);
    };
    let lift = crate::exactla::lift_poly;
    for r in q.rational_roots() {
        let f = lift(&Poly::linear_root(&r));
        let (k, rest) = multiplicity(p, &f);
        if rest.degree().unwrap_or(0) >= 1 {
            return Ok(Some((f.pow(k), rest)));
        }
    }
    let s = q.squarefree_part();
    let n = s.degree().unwrap_or(0);
    for deg in 2..=n / 2 {
        if let Some(f) = s.find_factor_of_degree(deg)? {
            let f = lift(&f);
            let (k, rest) = multiplicity(p, &f);
            if rest.degree().unwrap_or(0) >= 1 {
                return Ok(Some((f.pow(k), rest)));
            }
        }
    }
    Ok(None)
}

/// Blocks on which every even endomorphism acts (weight and parity classes).
fn blocks_of(m: &SuperModule) -> Vec<Vec<usize>> {
    match weight_blocks(m) {
        Some(b) => b.into_values().collect(),
        None => {
            let mut b = vec![Vec::new(), Vec::new()];
            for i in 0..m.dim() {
                b[m.parity(i) as usize].push(i);
            }
            b.into_iter().filter(|v| !v.is_empty()).collect()
        }
    }
}

fn block_matrix(op: &Op, idx: &[usize]) -> Matrix {
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut a = Matrix::zeros(idx.len(), idx.len());
    for (k, &j) in idx.iter().enumerate() {
        for (i, c) in op[j].entries() {
            a.set(pos[i], k, c.clone());
        }
    }
    a
}

fn poly_lcm(a: &SPoly, b: &SPoly) -> SPoly {
    let g = a.gcd(b);
    a.mul(b).divrem(&g).0.monic()
}

fn kernel_of_poly(op: &Op, p: &SPoly, blocks: &[Vec<usize>], d: usize) -> Subspace {
    let mut vs = Vec::new();
    for idx in blocks {
        let a = poly_of_matrix(p, &block_matrix(op, idx));
        for k in a.kernel_basis() {
            vs.push(SparseVec::from_pairs(k.into_iter().enumerate().map(|(t, c)| (idx[t], c))));
        }
    }
    Subspace::span(d, &vs)
}

/// Splits `m` into two nonzero submodules if an endomorphism with coprime
/// factors in its minimal polynomial is found.
fn try_split(m: &SuperModule, seed: u64) -> Result<Option<(Subspace, Subspace)>> {
    let end = hom_space(m, m, 0);
    if end.dim() <= 1 {
        return Ok(None);
    }
    let d = m.dim();
    let blocks = blocks_of(m);
    let mut cands: Vec<Op> = end.basis.clone();
    let k = end.dim().min(6);
    for i in 0..k {
        for j in 0..k {
            cands.push(compose(&end.basis[i], &end.basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let c: Vec<Scalar> = (0..end.dim()).map(|_| Scalar::int(rng.gen_range(-9..=9))).collect();
        cands.push(end.combine(&c));
    }
    for op in &cands {
        let mut p = SPoly::one();
        for idx in &blocks {
            p = poly_lcm(&p, &block_matrix(op, idx).minimal_polynomial());
        }
        if let Some((a, b)) = coprime_split(&p)? {
            let ka = kernel_of_poly(op, &a, &blocks, d);
            let kb = kernel_of_poly(op, &b, &blocks, d);
            if !ka.is_zero() && !kb.is_zero() && ka.dim() + kb.dim() == d {
                return Ok(Some((ka, kb)));
            }
        }
    }
    Ok(None)
}

/// Indecomposable summands (as subspaces), by recursive Fitting splitting.
pub fn decompose_summands(m: &SuperModule, seed: u64) -> Result<Vec<Subspace>> {
    let d = m.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    match try_split(m, seed)? {
        None => Ok(vec![Subspace::full(d)]),
        Some((a, b)) => {
            let mut out = Vec::new();
            for s in [a, b] {
                let sub = m.submodule(&s)?;
                for t in decompose_summands(&sub, seed)? {
                    let vs: Vec<SparseVec> = t.basis().iter().map(|v| s.from_coords(v)).collect();
                    out.push(Subspace::span(d, &vs));
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct_str, gl, osp};
    use crate::exactla::NumberField;

    #[test]
    fn standard_modules_are_simple() {
        let f = NumberField::rationals();
        for g in [gl(2, 1, &f).unwrap(), osp(1, 2, &f).unwrap(), construct_str("q(2)", &f).unwrap()] {
            let v = SuperModule::standard(&g).unwrap();
            assert_eq!(is_simple(&v, 1).as_bool(), Some(true), "{}", g.name());
        }
    }

    #[test]
    fn adjoint_of_gl22_has_three_layers() {
        let g = gl(2, 2, &NumberField::rationals()).unwrap();
        let ad = SuperModule::adjoint(&g);
        let l = loewy_data(&ad, 3).unwrap();
        assert_eq!(l.length, 3);
        assert_eq!(l.composition_length, 3);
    }

    #[test]
    fn tensor_square_splits() {
        let g = gl(2, 1, &NumberField::rationals()).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        let t = v.tensor(&v).unwrap();
        let parts = decompose_summands(&t, 5).unwrap();
        assert_eq!(parts.iter().map(|s| s.dim()).sum::<usize>(), 9);
        assert!(parts.len() >= 2);
    }

    #[test]
    fn envelope_of_simple_module_is_full() {
        let g = osp(1, 2, &NumberField::rationals()).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        assert_eq!(envelope_dim(&v), 9);
        let t = SuperModule::trivial(&g);
        assert_eq!(envelope_dim(&SuperModule::direct_sum(&[v, t]).unwrap()) < 16, true);
    }
}
