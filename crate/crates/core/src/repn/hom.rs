use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply, Op, SuperModule};
use crate::exactla::sparse::{sparse_kernel, SparseAcc};
use crate::exactla::{Echelon, FieldElem, Scalar, SparseVec};
use crate::liealg::{closure_subspace, ksign, ClosureMode, SuperLieAlgebra};

/// Basis indices grouped by (weight, parity).
pub fn weight_blocks(m: &SuperModule) -> Option<BTreeMap<(Vec<Scalar>, u8), Vec<usize>>> {
    let w = m.weights()?;
    let mut out: BTreeMap<(Vec<Scalar>, u8), Vec<usize>> = BTreeMap::new();
    for (i, wt) in w.iter().enumerate() {
        out.entry((wt.clone(), m.parity(i))).or_default().push(i);
    }
    Some(out)
}

/// Basis indices that, together with the designated Cartan (when
/// `with_cartan`), generate the algebra.
pub fn generating_set(g: &SuperLieAlgebra, with_cartan: bool) -> Vec<usize> {
    let n = g.dim();
    let mut seed: Vec<SparseVec> = Vec::new();
    if with_cartan {
        if let Some(h) = g.cartan() {
            seed.extend(h.iter().cloned());
        }
    }
    let mut chosen = Vec::new();
    let mut cur = closure_subspace(g, &seed, ClosureMode::Subalgebra);
    let order: Vec<usize> = g.odd_range().chain(g.even_range()).collect();
    for i in order {
        if cur.dim() == n {
            break;
        }
        let e = SparseVec::unit(i);
        if cur.contains(&e) {
            continue;
        }
        seed.push(e);
        chosen.push(i);
        cur = closure_subspace(g, &seed, ClosureMode::Subalgebra);
    }
    chosen
}

/// Homogeneous module maps `M -> N` of the given parity, each stored by columns.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub parity: u8,
    pub rows: usize,
    pub basis: Vec<Op>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Op {
        let cols = self.basis.first().map_or(0, |b| b.len());
        (0..cols)
            .map(|j| {
                let mut acc = SparseAcc::new();
                for (b, c) in self.basis.iter().zip(coeffs) {
                    acc.add_vec(c, &b[j]);
                }
                acc.finish()
            })
            .collect()
    }

    /// A random combination that is invertible, if one is found.
    pub fn find_invertible(&self, seed: u64, tries: usize) -> Option<Op> {
        let cols = self.basis.first()?.len();
        if cols != self.rows {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..tries {
            let coeffs: Vec<Scalar> = (0..self.dim())
                .map(|k| if t == 0 && self.dim() == 1 { Scalar::one() } else { Scalar::int(rng.gen_range(-50..=50) + i64::from(k == 0)) })
                .collect();
            let op = self.combine(&coeffs);
            if op_rank(&op, self.rows) == self.rows {
                return Some(op);
            }
        }
        None
    }
}

pub(crate) fn op_rank(op: &Op, rows: usize) -> usize {
    let mut e = Echelon::new(rows);
    for c in op {
        e.insert(c);
    }
    e.rank()
}

/// `Hom_g(M, N)` in parity `p`: maps with `phi(x v) = (-1)^{p p(x)} x phi(v)`.
/// Uses a generating set of the algebra and, when both modules carry
/// weights, only weight-preserving unknowns.
pub fn hom_space(m: &SuperModule, n: &SuperModule, p: u8) -> HomSpace {
    let g = m.algebra();
    let (dm, dn) = (m.dim(), n.dim());
    let weighted = m.weights().is_some() && n.weights().is_some();
    let mut vars: HashMap<(usize, usize), usize> = HashMap::new();
    let mut by_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dm];
    {
        let mut groups: HashMap<(Option<&[Scalar]>, u8), Vec<usize>> = HashMap::new();
        for b in 0..dn {
            let w = if weighted { Some(n.weights().unwrap()[b].as_slice()) } else { None };
            groups.entry((w, n.parity(b))).or_default().push(b);
        }
        for (a, col) in by_col.iter_mut().enumerate() {
            let w = if weighted { Some(m.weights().unwrap()[a].as_slice()) } else { None };
            if let Some(bs) = groups.get(&(w, m.parity(a) ^ p)) {
                for &b in bs {
                    let id = vars.len();
                    vars.insert((b, a), id);
                    col.push((b, id));
                }
            }
        }
    }
    let nv = vars.len();
    if nv == 0 {
        return HomSpace { parity: p, rows: dn, basis: Vec::new() };
    }
    let gens = generating_set(g, weighted);
    let tasks: Vec<(usize, usize)> = gens.iter().flat_map(|&x| (0..dm).map(move |a| (x, a))).collect();
    let eqs: Vec<Vec<SparseVec>> = crate::parallel::par_map(&tasks, |&(x, a)| {
        let s = Scalar::int(-ksign(p, g.parity(x)));
        let mut rows: BTreeMap<usize, SparseAcc> = BTreeMap::new();
        for (c, val) in m.op(x)[a].entries() {
            for &(b, id) in &by_col[*c] {
                rows.entry(b).or_default().add(id, val);
            }
        }
        for &(b, id) in &by_col[a] {
            for (r, val) in n.op(x)[b].entries() {
                rows.entry(*r).or_default().add(id, &val.mul(&s));
            }
        }
        rows.into_values().map(|a| a.finish()).filter(|v| !v.is_zero()).collect()
    });
    let eqs: Vec<SparseVec> = eqs.into_iter().flatten().collect();
    let ker = sparse_kernel(&eqs, nv);
    let mut inv: Vec<(usize, usize)> = vec![(0, 0); nv];
    for (&(b, a), &id) in &vars {
        inv[id] = (b, a);
    }
    let basis = ker
        .iter()
        .map(|v| {
            let mut cols = vec![Vec::new(); dm];
            for (id, c) in v.entries() {
                let (b, a) = inv[*id];
                cols[a].push((b, c.clone()));
            }
            cols.into_iter().map(SparseVec::from_pairs).collect()
        })
        .collect();
    HomSpace { parity: p, rows: dn, basis }
}

/// Whether `phi` intertwines the two actions (checked on all basis elements).
pub fn is_module_map(m: &SuperModule, n: &SuperModule, phi: &Op, p: u8) -> bool {
    let g = m.algebra();
    (0..g.dim()).all(|x| {
        let s = Scalar::int(ksign(p, g.parity(x)));
        (0..m.dim()).all(|a| apply(phi, &m.op(x)[a]) == apply(n.op(x), &phi[a]).scale(&s))
    })
}

/// Even isomorphism test. Conclusive when both modules are simple; otherwise
/// a `false` may come from unlucky random combinations.
pub fn is_isomorphic(m: &SuperModule, n: &SuperModule, seed: u64) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if let (Ok(a), Ok(b)) = (m.character(), n.character()) {
        if a != b {
            return false;
        }
    }
    let h = hom_space(m, n, 0);
    h.find_invertible(seed, 8).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gl, osp};
    use crate::exactla::NumberField;

    #[test]
    fn endomorphisms_of_simple_modules() {
        let f = NumberField::rationals();
        let g = gl(2, 1, &f).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        assert_eq!(hom_space(&v, &v, 0).dim(), 1);
        assert_eq!(hom_space(&v, &v.parity_shift(), 0).dim(), 0);
        assert!(is_isomorphic(&v, &v, 1));
        let h = osp(1, 2, &f).unwrap();
        let ad = SuperModule::adjoint(&h);
        let e = hom_space(&ad, &ad, 0);
        assert_eq!(e.dim(), 1);
        assert!(is_module_map(&ad, &ad, &e.basis[0], 0));
    }

    #[test]
    fn generating_sets_generate() {
        let g = gl(2, 2, &NumberField::rationals()).unwrap();
        let s = generating_set(&g, false);
        let seed: Vec<SparseVec> = s.iter().map(|&i| SparseVec::unit(i)).collect();
        assert_eq!(closure_subspace(&g, &seed, ClosureMode::Subalgebra).dim(), g.dim());
        assert!(s.len() < g.dim());
    }
}
