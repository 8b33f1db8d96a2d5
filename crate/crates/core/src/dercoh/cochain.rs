use std::collections::HashMap;

use serde::Serialize;

use crate::exactla::sparse::{sparse_kernel, SparseAcc};
use crate::exactla::{Echelon, FieldElem, Scalar, SparseVec};
use crate::liealg::{bracket_span, ksign, validate, SuperLieAlgebra, SuperSpace, Subspace};
use crate::parallel::par_range;
use crate::structure::{center, derived, even_basis, even_center, is_quasireductive, odd_basis};
use crate::{Error, Result};

/// Coordinates on a space of graded alternating 2-forms of fixed parity:
/// one coordinate per canonical pair `i < j`, or `i == j` with `e_i` odd.
#[derive(Clone, Debug)]
pub struct Cochains {
    parities: Vec<u8>,
    pub parity: u8,
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Cochains {
    pub fn new(space: &SuperSpace, parity: u8, keep: impl Fn(usize, usize) -> bool) -> Cochains {
        let n = space.dim();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                let (pi, pj) = (space.parity(i), space.parity(j));
                if (i == j && pi == 0) || pi ^ pj != parity || !keep(i, j) {
                    continue;
                }
                pairs.push((i, j));
            }
        }
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Cochains { parities: space.parities().to_vec(), parity, pairs, index }
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Coordinate and sign with `c(e_i, e_j) = sign * x[coord]`.
    pub fn coord(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        if i <= j {
            self.index.get(&(i, j)).map(|&k| (k, 1))
        } else {
            self.index.get(&(j, i)).map(|&k| (k, -ksign(self.parities[i], self.parities[j])))
        }
    }

    pub fn value(&self, x: &SparseVec, i: usize, j: usize) -> Scalar {
        match self.coord(i, j) {
            Some((k, s)) => x.get(k).mul(&Scalar::int(s)),
            None => Scalar::zero(),
        }
    }

    /// `c(u, v)` for arbitrary vectors.
    pub fn eval(&self, x: &SparseVec, u: &SparseVec, v: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in u.entries() {
            for (j, b) in v.entries() {
                let c = self.value(x, *i, *j);
                if !c.is_zero() {
                    acc = acc.add(&a.mul(b).mul(&c));
                }
            }
        }
        acc
    }

    /// Adds `coef * c(e_i, w)` to a row, as a linear form in the coordinates.
    fn push(&self, acc: &mut SparseAcc, coef: &Scalar, i: usize, w: &SparseVec, left: bool) {
        for (k, b) in w.entries() {
            let (a, bb) = if left { (i, *k) } else { (*k, i) };
            if let Some((pos, s)) = self.coord(a, bb) {
                acc.add(pos, &coef.mul(b).mul(&Scalar::int(s)));
            }
        }
    }

    /// `c_f(x, y) = f([x, y])`.
    pub fn coboundary(&self, g: &SuperLieAlgebra, f: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(self.pairs.iter().enumerate().map(|(k, &(i, j))| (k, g.bracket_basis(i, j).dot(f))))
    }
}

/// Rows of the cocycle identity
/// `c([x,y],z) - c(x,[y,z]) + (-1)^{p(x)p(y)} c(y,[x,z]) = 0`
/// over basis triples accepted by `keep`.
pub fn cocycle_equations(g: &SuperLieAlgebra, cs: &Cochains, keep: &(dyn Fn(usize, usize, usize) -> bool + Sync)) -> Vec<SparseVec> {
    let n = g.dim();
    let rows: Vec<Vec<SparseVec>> = par_range(n, |x| {
        let mut out = Vec::new();
        for y in 0..n {
            for z in 0..n {
                if g.parity(x) ^ g.parity(y) ^ g.parity(z) != cs.parity || !keep(x, y, z) {
                    continue;
                }
                let mut acc = SparseAcc::new();
                let one = Scalar::one();
                // c([x,y], z)
                for (k, b) in g.bracket_basis(x, y).entries() {
                    if let Some((pos, s)) = cs.coord(*k, z) {
                        acc.add(pos, &b.mul(&Scalar::int(s)));
                    }
                }
                cs.push(&mut acc, &one.neg(), x, g.bracket_basis(y, z), true);
                cs.push(&mut acc, &Scalar::int(ksign(g.parity(x), g.parity(y))), y, g.bracket_basis(x, z), true);
                let r = acc.finish();
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
        out
    });
    rows.into_iter().flatten().collect()
}

pub fn is_cocycle(g: &SuperLieAlgebra, cs: &Cochains, x: &SparseVec) -> bool {
    cocycle_equations(g, cs, &|_, _, _| true).iter().all(|r| r.dot(x).is_zero())
}

/// A 2-cocycle with its coordinate system.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub cochains: Cochains,
    pub coords: SparseVec,
}

impl Cocycle {
    pub fn parity(&self) -> u8 {
        self.cochains.parity
    }

    pub fn value(&self, i: usize, j: usize) -> Scalar {
        self.cochains.value(&self.coords, i, j)
    }

    /// Coefficient matrix `c(e_i, e_j)` over the given indices.
    pub fn matrix(&self, idx: &[usize]) -> Vec<Vec<Scalar>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.value(i, j)).collect()).collect()
    }
}

/// Cocycles, coboundaries and chosen representatives of the quotient.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub cochains: Cochains,
    pub cocycles: Vec<SparseVec>,
    pub coboundaries: Subspace,
    pub representatives: Vec<SparseVec>,
}

impl CocycleSpace {
    fn build(cochains: Cochains, cocycles: Vec<SparseVec>, cob: Vec<SparseVec>) -> CocycleSpace {
        let d = cochains.dim();
        let coboundaries = Subspace::span(d, &cob);
        let mut ech = Echelon::new(d);
        for b in coboundaries.basis() {
            ech.insert(b);
        }
        let representatives = cocycles.iter().filter(|c| ech.insert(c).is_some()).cloned().collect();
        CocycleSpace { cochains, cocycles, coboundaries, representatives }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative_cocycles(&self) -> Vec<Cocycle> {
        self.representatives.iter().map(|c| Cocycle { cochains: self.cochains.clone(), coords: c.clone() }).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct H2Restricted {
    pub dim: usize,
    /// `dim (S^2 g1*)^{g0}`, from the invariance equations.
    pub invariant_forms: usize,
    /// `dim (Z(g0) cap [g1, g1])`.
    pub center_part: usize,
    pub formula_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
}

fn weight_zero(g: &SuperLieAlgebra) -> Option<Vec<bool>> {
    g.basis_weights().map(|w| w.iter().map(|x| x.iter().all(|c| c.is_zero())).collect())
}

fn weight_sum_zero(g: &SuperLieAlgebra, idx: &[usize]) -> bool {
    match g.basis_weights() {
        None => true,
        Some(w) => (0..w[0].len()).all(|k| idx.iter().fold(Scalar::zero(), |a, &i| a.add(&w[i][k])).is_zero()),
    }
}

/// Restricted 2-cohomology: even forms vanishing on `(g0, g)`, computed from
/// the cocycle identity on weight-zero cochains and, independently, as
/// `dim (S^2 g1*)^{g0} - dim (Z(g0) cap [g1, g1])`.
pub fn h2_restricted(g: &SuperLieAlgebra) -> Result<(H2Restricted, CocycleSpace)> {
    if !is_quasireductive(g).quasireductive {
        return Err(Error::Precondition(format!("{} is not quasireductive", g.name())));
    }
    let space = g.space();
    let cs = Cochains::new(space, 0, |i, j| space.parity(i) == 1 && space.parity(j) == 1 && weight_sum_zero(g, &[i, j]));
    let eqs = cocycle_equations(g, &cs, &|x, y, z| weight_sum_zero(g, &[x, y, z]));
    let cocycles = sparse_kernel(&eqs, cs.dim());
    let ev = even_basis(g);
    let d0 = bracket_span(g, &ev, &ev);
    let wz = weight_zero(g);
    let fs: Vec<SparseVec> = d0
        .annihilator()
        .basis()
        .iter()
        .filter(|f| f.entries().iter().all(|(k, _)| g.parity(*k) == 0 && wz.as_ref().is_none_or(|w| w[*k])))
        .cloned()
        .collect();
    let fs = Subspace::span(g.dim(), &fs);
    let cob: Vec<SparseVec> = fs.basis().iter().map(|f| cs.coboundary(g, f)).collect();
    let space_out = CocycleSpace::build(cs, cocycles, cob);

    // Independent count over all odd pairs.
    let all = Cochains::new(space, 0, |i, j| space.parity(i) == 1 && space.parity(j) == 1);
    let mut inv = Vec::new();
    for x in g.even_range() {
        for y in g.odd_range() {
            for z in g.odd_range() {
                if z < y {
                    continue;
                }
                // B([x,y],z) + B(y,[x,z]) = 0
                let mut acc = SparseAcc::new();
                all.push(&mut acc, &Scalar::one(), z, g.bracket_basis(x, y), false);
                all.push(&mut acc, &Scalar::one(), y, g.bracket_basis(x, z), true);
                let r = acc.finish();
                if !r.is_zero() {
                    inv.push(r);
                }
            }
        }
    }
    let invariant_forms = sparse_kernel(&inv, all.dim()).len();
    let od = odd_basis(g);
    let center_part = even_center(g).intersection(&bracket_span(g, &od, &od)).dim();
    let formula_dim = invariant_forms - center_part;
    let rep = H2Restricted {
        dim: space_out.dim(),
        invariant_forms,
        center_part,
        formula_dim,
        cocycle_dim: space_out.cocycles.len(),
        coboundary_dim: space_out.coboundaries.dim(),
    };
    if rep.dim != formula_dim {
        return Err(Error::Validation(format!("restricted H^2: cocycle count {} but formula gives {formula_dim}", rep.dim)));
    }
    Ok((rep, space_out))
}

/// `H^2(g, F)` with trivial coefficients, one cocycle space per parity.
pub fn h2_trivial(g: &SuperLieAlgebra) -> [CocycleSpace; 2] {
    let wz = weight_zero(g);
    [0u8, 1].map(|q| {
        let cs = Cochains::new(g.space(), q, |i, j| weight_sum_zero(g, &[i, j]));
        let eqs = cocycle_equations(g, &cs, &|x, y, z| weight_sum_zero(g, &[x, y, z]));
        let cocycles = sparse_kernel(&eqs, cs.dim());
        let cob: Vec<SparseVec> = (0..g.dim())
            .filter(|&k| g.parity(k) == q && wz.as_ref().is_none_or(|w| w[k]))
            .map(|k| cs.coboundary(g, &SparseVec::unit(k)))
            .collect();
        CocycleSpace::build(cs, cocycles, cob)
    })
}

pub fn h2_trivial_dims(g: &SuperLieAlgebra) -> (usize, usize) {
    let [a, b] = h2_trivial(g);
    (a.dim(), b.dim())
}

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub algebra: SuperLieAlgebra,
    /// `embedding[i]` is the index of `e_i` in the extension.
    pub embedding: Vec<usize>,
    /// Indices of the new central vectors, one per cocycle.
    pub central: Vec<usize>,
    pub reduced: bool,
}

/// `g + Z*` with `[x, y]' = [x, y] + sum_k c_k(x, y) z_k`.
pub fn central_extension(g: &SuperLieAlgebra, cocycles: &[Cocycle]) -> Result<CentralExtension> {
    for (k, c) in cocycles.iter().enumerate() {
        if c.cochains.parities != g.space().parities() {
            return Err(Error::DimensionMismatch(format!("cocycle {k} lives on a different space")));
        }
        if !is_cocycle(g, &c.cochains, &c.coords) {
            return Err(Error::Validation(format!("form {k} fails the cocycle identity")));
        }
    }
    let ext = extend(g, cocycles)?;
    let rep = validate(&ext.algebra);
    if !rep.is_empty() {
        return Err(Error::Validation(format!("extension violates {} axioms", rep.total())));
    }
    Ok(ext)
}

/// The bracket of the extension, without checking the forms.
pub(crate) fn extend(g: &SuperLieAlgebra, cocycles: &[Cocycle]) -> Result<CentralExtension> {
    let n = g.dim();
    let ne = g.n_even();
    let ze: Vec<usize> = (0..cocycles.len()).filter(|&k| cocycles[k].parity() == 0).collect();
    let zo: Vec<usize> = (0..cocycles.len()).filter(|&k| cocycles[k].parity() == 1).collect();
    let mut embedding = vec![0; n];
    let mut central = vec![0; cocycles.len()];
    let mut labels = Vec::new();
    let mut par = Vec::new();
    for i in 0..ne {
        embedding[i] = labels.len();
        labels.push(g.label(i).to_string());
        par.push(0);
    }
    for &k in &ze {
        central[k] = labels.len();
        labels.push(format!("z{}", k + 1));
        par.push(0);
    }
    for i in ne..n {
        embedding[i] = labels.len();
        labels.push(g.label(i).to_string());
        par.push(1);
    }
    for &k in &zo {
        central[k] = labels.len();
        labels.push(format!("z{}", k + 1));
        par.push(1);
    }
    let total = labels.len();
    let mut back = vec![None; total];
    for (i, &e) in embedding.iter().enumerate() {
        back[e] = Some(i);
    }
    let space = SuperSpace::new(labels, par)?;
    let emb = embedding.clone();
    let alg = SuperLieAlgebra::from_half(format!("{}^", g.name()), g.field().clone(), space, |a, b| {
        let (Some(i), Some(j)) = (back[a], back[b]) else { return SparseVec::new() };
        let mut acc = SparseAcc::new();
        for (k, c) in g.bracket_basis(i, j).entries() {
            acc.add(emb[*k], c);
        }
        for (k, c) in cocycles.iter().enumerate() {
            let v = c.value(i, j);
            if !v.is_zero() {
                acc.add(central[k], &v);
            }
        }
        acc.finish()
    })?;
    let mut alg = alg;
    if let Some(h) = g.cartan() {
        alg = alg.with_cartan(h.iter().map(|v| v.remap(|k| Some(embedding[k]))).collect());
    }
    let reduced = derived(&alg).contains_subspace(&center(&alg));
    Ok(CentralExtension { algebra: alg, embedding, central, reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct_str;
    use crate::exactla::NumberField;

    fn alg(s: &str) -> SuperLieAlgebra {
        construct_str(s, &NumberField::rationals()).unwrap()
    }

    #[test]
    fn restricted_h2_examples() {
        for (s, d) in [("psl(2,2)", 3), ("osp(3,2)", 0), ("kd(sl2)", 1), ("sp(4)", 1), ("gl(2,1)", 0)] {
            let (r, _) = h2_restricted(&alg(s)).unwrap();
            assert_eq!(r.dim, d, "{s}");
            assert_eq!(r.formula_dim, d, "{s}");
        }
    }

    #[test]
    fn trivial_h2_examples() {
        let sl2 = crate::catalog::sl(2, 0, &NumberField::rationals()).unwrap();
        assert_eq!(h2_trivial_dims(&sl2), (0, 0));
        assert_eq!(h2_trivial_dims(&alg("psl(2,2)")), (3, 0));
        assert_eq!(h2_trivial_dims(&alg("osp(1,2)")), (0, 0));
    }

    #[test]
    fn extensions_are_jacobi_clean() {
        let g = alg("psl(2,2)");
        let (_, cs) = h2_restricted(&g).unwrap();
        let ext = central_extension(&g, &cs.representative_cocycles()).unwrap();
        assert_eq!(ext.algebra.dims(), (9, 8));
        assert!(ext.reduced);
        let zero = Cocycle { cochains: cs.cochains.clone(), coords: SparseVec::new() };
        let triv = central_extension(&g, &[zero]).unwrap();
        assert!(!triv.reduced);
        assert_eq!(center(&triv.algebra).dim(), 1);
    }

    // A form that breaks the identity must also break Jacobi of the extension.
    #[test]
    fn cocycle_identity_matches_jacobi() {
        let g = alg("gl(1,1)");
        for q in [0u8, 1] {
            let cs = Cochains::new(g.space(), q, |_, _| true);
            for k in 0..cs.dim() {
                let x = SparseVec::unit(k);
                let c = Cocycle { cochains: cs.clone(), coords: x.clone() };
                let ok = is_cocycle(&g, &cs, &x);
                let ext = extend(&g, std::slice::from_ref(&c)).unwrap();
                assert_eq!(ok, validate(&ext.algebra).is_empty(), "parity {q} pair {:?}", cs.pairs[k]);
            }
        }
    }
}
