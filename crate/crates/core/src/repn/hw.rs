use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::hom::hom_space;
use super::induce::induce;
use super::simple::is_simple;
use super::SuperModule;
use crate::exactla::roots::sqrt_in_field;
use crate::exactla::sparse::sparse_kernel;
use crate::exactla::{Echelon, FieldElem, NumberField, Rational, Scalar, SparseVec};
use crate::liealg::{subalgebra, SuperLieAlgebra, Subspace};
use crate::rootsys::{self, format_weight, gamma_value, RootDatum, TriangularDecomposition, Weight};
use crate::{Error, Result};

/// `h = Z_g(h0)` as a subspace of `g` and as an algebra.
pub fn cartan_subalgebra(g: &SuperLieAlgebra) -> Result<(Subspace, SuperLieAlgebra)> {
    let c = rootsys::cartan(g)?;
    let h = subalgebra(g, &c.h, "h");
    Ok((c.h, h))
}

/// Values of a weight (given on the designated Cartan) on vectors of its span.
struct WeightEval {
    ech: Echelon,
    lambda: Vec<Scalar>,
}

impl WeightEval {
    fn new(g: &SuperLieAlgebra, lambda: &[Scalar]) -> Result<WeightEval> {
        let h0 = g.cartan().ok_or_else(|| Error::Precondition("algebra has no designated Cartan".into()))?;
        if h0.len() != lambda.len() {
            return Err(Error::DimensionMismatch(format!("weight has {} entries for a Cartan of rank {}", lambda.len(), h0.len())));
        }
        let mut ech = Echelon::tracked(g.dim());
        for h in h0 {
            ech.insert(h);
        }
        Ok(WeightEval { ech, lambda: lambda.to_vec() })
    }

    fn eval(&self, v: &SparseVec) -> Result<Scalar> {
        let c = self.ech.express(v).ok_or_else(|| Error::Precondition("vector outside the Cartan".into()))?;
        Ok(c.entries().iter().fold(Scalar::zero(), |acc, (k, x)| acc.add(&x.mul(&self.lambda[*k]))))
    }
}

#[derive(Clone, Debug)]
pub struct CartanModule {
    pub h: SuperLieAlgebra,
    pub module: SuperModule,
    pub h1_dim: usize,
    pub u1_dim: usize,
    pub simple: Option<bool>,
    /// Rank of `omega_lambda` on `h1`.
    pub form_rank: usize,
    /// `C ~ Pi C`, decided by an even hom `C -> Pi C`.
    pub pi_iso: bool,
    /// Clifford count: `C ~ Pi C` iff the rank of `omega_lambda` is odd.
    pub predicted_pi_iso: bool,
}

fn form(gram: &[Vec<Scalar>], a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() && !gram[i][j].is_zero() {
                acc = acc.add(&x.mul(y).mul(&gram[i][j]));
            }
        }
    }
    acc
}

fn axpy(a: &Scalar, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    y.iter().zip(x).map(|(b, c)| b.add(&a.mul(c))).collect()
}

/// A maximal isotropic subspace of a symmetric form, containing its kernel.
pub(crate) fn maximal_isotropic(gram: &[Vec<Scalar>], field: &std::sync::Arc<NumberField>) -> Result<Vec<Vec<Scalar>>> {
    let r = gram.len();
    let rows: Vec<SparseVec> = gram.iter().map(|row| SparseVec::from_dense(row)).collect();
    let ker: Vec<Vec<Scalar>> = sparse_kernel(&rows, r).iter().map(|v| v.to_dense(r)).collect();
    let ksub = Subspace::span(r, &ker.iter().map(|v| SparseVec::from_dense(v)).collect::<Vec<_>>());
    let mut rest: Vec<Vec<Scalar>> = ksub
        .complement_columns()
        .into_iter()
        .map(|c| (0..r).map(|i| if i == c { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    let mut iso = ker;
    let q = |v: &[Scalar]| form(gram, v, v);
    while rest.len() >= 2 {
        let mut found: Option<Vec<Scalar>> = rest.iter().find(|v| q(v).is_zero()).cloned();
        if found.is_none() {
            let r1 = rest[0].clone();
            let q1 = q(&r1);
            let orth: Vec<Vec<Scalar>> =
                rest[1..].iter().map(|v| axpy(&form(gram, v, &r1).mul(&q1.inv()).neg(), &r1, v)).collect();
            let mut obstruction = None;
            for v in &orth {
                let qv = q(v);
                if qv.is_zero() {
                    found = Some(v.clone());
                    break;
                }
                let t = qv.mul(&q1.inv()).neg();
                match sqrt_in_field(&t, field) {
                    Some(s) => {
                        found = Some(axpy(&s, &r1, v));
                        break;
                    }
                    None => obstruction = obstruction.or(Some(t)),
                }
            }
            if found.is_none() {
                let t = obstruction.unwrap_or_else(Scalar::zero);
                return Err(Error::extension(format!("t^2 - ({t})"), "no isotropic vector for the Cartan form"));
            }
        }
        let v = found.unwrap();
        let w = rest.iter().find(|w| !form(gram, &v, w).is_zero()).cloned().expect("form is nondegenerate on the complement");
        let a = form(gram, &v, &w);
        let w = axpy(&q(&w).mul(&a.inv()).mul(&Scalar::frac(-1, 2)), &v, &w);
        let mut proj = Echelon::new(r);
        let mut next = Vec::new();
        for x in &rest {
            let p = axpy(&form(gram, x, &w).mul(&a.inv()).neg(), &v, x);
            let p = axpy(&form(gram, x, &v).mul(&a.inv()).neg(), &w, &p);
            if proj.insert(&SparseVec::from_dense(&p)).is_some() {
                next.push(p);
            }
        }
        iso.push(v);
        rest = next;
    }
    Ok(iso)
}

/// `C_lambda = U(h) (x)_{U(u)} F_lambda` with `u = h0 + u1`, `u1` maximal
/// isotropic for `omega(x, y) = lambda([x, y])` on `h1`.
pub fn cartan_module(g: &SuperLieAlgebra, lambda: &[Scalar], seed: u64) -> Result<CartanModule> {
    let (hsub, h) = cartan_subalgebra(g)?;
    let ev = WeightEval::new(g, lambda)?;
    let rows = hsub.basis();
    let odd: Vec<usize> = h.odd_range().collect();
    let mut gram = vec![vec![Scalar::zero(); odd.len()]; odd.len()];
    for (a, &i) in odd.iter().enumerate() {
        for (b, &j) in odd.iter().enumerate() {
            gram[a][b] = ev.eval(&g.bracket(&rows[i], &rows[j]))?;
        }
    }
    let iso = maximal_isotropic(&gram, g.field())?;
    for a in &iso {
        for b in &iso {
            if !form(&gram, a, b).is_zero() {
                return Err(Error::Validation("isotropic subspace check failed".into()));
            }
        }
    }
    let mut gens: Vec<SparseVec> = h.even_range().map(SparseVec::unit).collect();
    for v in &iso {
        gens.push(SparseVec::from_pairs(v.iter().enumerate().map(|(k, c)| (odd[k], c.clone()))));
    }
    let u = Subspace::span(h.dim(), &gens);
    let u_alg = subalgebra(&h, &u, "u");
    let mut values = Vec::with_capacity(u.dim());
    for (k, r) in u.basis().iter().enumerate() {
        values.push(if u_alg.parity(k) == 0 { ev.eval(&hsub.from_coords(r))? } else { Scalar::zero() });
    }
    let f = SuperModule::one_dim(&u_alg, &values, 0)?;
    let ind = induce(&h, &u, &f)?;
    let module = ind.module;
    if !module.check().is_empty() {
        return Err(Error::Validation("Cartan module fails the representation identity".into()));
    }
    let simple = is_simple(&module, seed).as_bool();
    let pi_iso = hom_space(&module, &module.parity_shift(), 0).dim() > 0;
    let h1_dim = odd.len();
    let u1_dim = iso.len();
    let form_rank = if gram.is_empty() { 0 } else { crate::exactla::Matrix::from_rows(gram.clone()).rank() };
    Ok(CartanModule { h, module, h1_dim, u1_dim, simple, form_rank, pi_iso, predicted_pi_iso: form_rank % 2 == 1 })
}

/// The simple `gl(n)`-module of highest weight `lambda`, cut out of tensor
/// powers of the defining module `v` (basis ordered so that raising
/// operators are upper triangular) twisted by a power of the determinant.
pub fn gl_simple_module(g0: &SuperLieAlgebra, v: &SuperModule, lambda: &[i64]) -> Result<SuperModule> {
    let n = v.dim();
    if lambda.len() != n {
        return Err(Error::DimensionMismatch("weight length".into()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!("weight {lambda:?} is not dominant")));
    }
    let vw = v.weights().ok_or_else(|| Error::Precondition("defining module has no weights".into()))?;
    let c = lambda[n - 1];
    let k: i64 = lambda.iter().map(|a| a - c).sum();
    let det_vals: Vec<Scalar> = (0..g0.dim())
        .map(|x| {
            let tr = (0..n).fold(Scalar::zero(), |acc, i| acc.add(&v.op(x)[i].get(i)));
            tr.mul(&Scalar::int(c))
        })
        .collect();
    let det = SuperModule::one_dim(g0, &det_vals, 0)?;
    if k == 0 {
        return Ok(det);
    }
    let mut w = v.clone();
    for _ in 1..k {
        w = w.tensor(v)?;
    }
    let w = w.tensor(&det)?;
    let mut target: Weight = vec![Scalar::zero(); vw[0].len()];
    for (i, &a) in lambda.iter().enumerate() {
        for (t, x) in target.iter_mut().zip(&vw[i]) {
            *t = t.add(&x.mul(&Scalar::int(a)));
        }
    }
    let ww = w.weights().ok_or_else(|| Error::Precondition("tensor power has no weights".into()))?;
    let idx: Vec<usize> = (0..w.dim()).filter(|&i| ww[i] == target).collect();
    if idx.is_empty() {
        return Err(Error::Validation("highest weight does not occur".into()));
    }
    let raising: Vec<usize> = (0..g0.dim())
        .filter(|&x| {
            let op = v.op(x);
            op.iter().any(|c| !c.is_zero()) && op.iter().enumerate().all(|(j, c)| c.entries().iter().all(|(i, _)| *i < j))
        })
        .collect();
    let mut eqs: std::collections::BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = Default::default();
    for &x in &raising {
        for (a, &i) in idx.iter().enumerate() {
            for (r, c) in w.op(x)[i].entries() {
                eqs.entry((x, *r)).or_default().push((a, c.clone()));
            }
        }
    }
    let eqs: Vec<SparseVec> = eqs.into_values().map(SparseVec::from_pairs).collect();
    let ker = sparse_kernel(&eqs, idx.len());
    let hv = ker.first().ok_or_else(|| Error::Validation("no highest weight vector".into()))?;
    let hv = hv.remap(|a| Some(idx[a]));
    let s = super::spin(&w, &[hv]);
    w.submodule(&s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KacSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct KacModule {
    pub sign: KacSign,
    pub lambda: Vec<i64>,
    pub l0_dim: usize,
    /// Which graded piece supplies the exterior factor: `"g^-1"` or `"g^1"`.
    pub exterior_piece: &'static str,
    pub module: SuperModule,
    pub simple: Option<bool>,
    /// A proper nonzero submodule when one was found.
    pub submodule: Option<Subspace>,
    /// `prod_{i<j} (a_i - a_j) != 0`.
    pub product_criterion: bool,
}

/// `K+-(lambda) = U(g) (x)_{U(g0 + g^{+-1})} L0(lambda)` for `p(n)`, with
/// `g^1` the symmetric block.
pub fn kac_module_p(n: usize, lambda: &[i64], sign: KacSign, field: &std::sync::Arc<NumberField>, seed: u64) -> Result<KacModule> {
    let g = crate::catalog::p(n, field)?;
    let r = g.realization().ok_or_else(|| Error::Precondition("p(n) without realization".into()))?;
    let upper = |i: usize| {
        let m = &r.mats[i];
        (0..n).any(|a| (n..2 * n).any(|b| !m.get(a, b).is_zero()))
    };
    let g0: Vec<SparseVec> = g.even_range().map(SparseVec::unit).collect();
    let g0s = Subspace::span(g.dim(), &g0);
    let g0_alg = subalgebra(&g, &g0s, "g0");
    let std = SuperModule::standard(&g)?.restrict(&g0_alg, g0s.basis())?;
    let even_part = Subspace::span(2 * n, &(0..n).map(SparseVec::unit).collect::<Vec<_>>());
    let v = std.submodule(&even_part)?;
    let l0 = gl_simple_module(&g0_alg, &v, lambda)?;
    let keep_plus = sign == KacSign::Plus;
    let mut gens = g0.clone();
    for i in g.odd_range() {
        if upper(i) == keep_plus {
            gens.push(SparseVec::unit(i));
        }
    }
    let psub = Subspace::span(g.dim(), &gens);
    let p_alg = subalgebra(&g, &psub, "p");
    let ops = (0..p_alg.dim())
        .map(|k| {
            if p_alg.parity(k) == 0 {
                l0.element_op(&g0s.coords(&psub.basis()[k]))
            } else {
                vec![SparseVec::new(); l0.dim()]
            }
        })
        .collect();
    let inflated = SuperModule::new(&p_alg, l0.space().clone(), ops)?;
    if !inflated.check().is_empty() {
        return Err(Error::Validation("inflated module fails the representation identity".into()));
    }
    let module = induce(&g, &psub, &inflated)?.module;
    let verdict = is_simple(&module, seed);
    let simple = verdict.as_bool();
    let submodule = match verdict {
        super::Simplicity::Reducible(s) => Some(s),
        _ => None,
    };
    let mut prod = true;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            prod &= lambda[i] != lambda[j];
        }
    }
    Ok(KacModule {
        sign,
        lambda: lambda.to_vec(),
        l0_dim: l0.dim(),
        exterior_piece: if keep_plus { "g^-1" } else { "g^1" },
        module,
        simple,
        submodule,
        product_criterion: prod,
    })
}

fn add(a: &[Scalar], b: &[Scalar]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Weights reachable from `start` by adding positive roots, up to `gamma <= bound`.
fn upward_closure(start: &Weight, pos: &[Weight], gamma: &[Rational], bound: &Rational) -> HashSet<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(w) = queue.pop_front() {
        for a in pos {
            let nw = add(&w, a);
            if gamma_value(gamma, &nw).is_some_and(|v| &v <= bound) && seen.insert(nw.clone()) {
                queue.push_back(nw);
            }
        }
    }
    seen
}

/// The weights of `m` that are maximal for `mu <= lambda` iff
/// `lambda - mu` is a nonnegative integer combination of positive roots.
pub fn maximal_weights(m: &SuperModule, tri: &TriangularDecomposition) -> Result<Vec<Weight>> {
    let w = m.weights().ok_or_else(|| Error::Precondition("module has no weight basis".into()))?;
    let set: BTreeSet<Weight> = w.iter().cloned().collect();
    let bound = set
        .iter()
        .filter_map(|x| gamma_value(&tri.gamma, x))
        .max()
        .ok_or_else(|| Error::Unsupported("weights must be rational".into()))?;
    let mut out = Vec::new();
    for lam in &set {
        let up = upward_closure(lam, &tri.delta_plus, &tri.gamma, &bound);
        if !set.iter().any(|mu| mu != lam && up.contains(mu)) {
            out.push(lam.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HighestWeight {
    pub maximal: Vec<String>,
    pub unique: bool,
    pub weight: Option<Vec<String>>,
    pub top_dims: (usize, usize),
    /// `n+` kills the top weight space.
    pub killed_by_n_plus: bool,
    /// The top weight space is a simple `h`-module.
    pub top_h_simple: Option<bool>,
    /// Every weight lies below the maximal one.
    pub dominates_all: bool,
}

pub fn highest_weight(m: &SuperModule, rd: &RootDatum, tri: &TriangularDecomposition, seed: u64) -> Result<HighestWeight> {
    let g = m.algebra();
    let maxes = maximal_weights(m, tri)?;
    let unique = maxes.len() == 1;
    let w = m.weights().unwrap();
    let mut out = HighestWeight {
        maximal: maxes.iter().map(|x| format_weight(x)).collect(),
        unique,
        weight: None,
        top_dims: (0, 0),
        killed_by_n_plus: false,
        top_h_simple: None,
        dominates_all: false,
    };
    if !unique {
        return Ok(out);
    }
    let lam = &maxes[0];
    out.weight = Some(lam.iter().map(|x| x.to_string()).collect());
    let idx: Vec<usize> = (0..m.dim()).filter(|&i| &w[i] == lam).collect();
    out.top_dims = (idx.iter().filter(|&&i| m.parity(i) == 0).count(), idx.iter().filter(|&&i| m.parity(i) == 1).count());
    out.killed_by_n_plus = tri.n_plus.basis().iter().all(|x| idx.iter().all(|&i| m.act(x, &SparseVec::unit(i)).is_zero()));
    let lam_g = gamma_value(&tri.gamma, lam).unwrap();
    let set: BTreeSet<&Weight> = w.iter().collect();
    out.dominates_all = set.iter().all(|mu| *mu == lam || upward_closure(mu, &tri.delta_plus, &tri.gamma, &lam_g).contains(lam));
    let hres = m.restrict(&subalgebra(g, &rd.cartan.h, "h"), rd.cartan.h.basis())?;
    let top = hres.submodule(&Subspace::span(m.dim(), &idx.iter().map(|&i| SparseVec::unit(i)).collect::<Vec<_>>()))?;
    out.top_h_simple = is_simple(&top, seed).as_bool();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct_str, gl};

    #[test]
    fn q2_cartan_module() {
        let f = NumberField::rationals();
        let g = construct_str("q(2)", &f).unwrap();
        let c = cartan_module(&g, &[Scalar::int(1), Scalar::int(-1)], 1).unwrap();
        assert_eq!(c.module.dim(), 2);
        assert_eq!(c.simple, Some(true));
        assert_eq!((c.h1_dim, c.u1_dim, c.form_rank), (2, 1, 2));
        assert!(!c.pi_iso);
        assert_eq!(c.pi_iso, c.predicted_pi_iso);
        let z = cartan_module(&g, &[Scalar::zero(), Scalar::zero()], 1).unwrap();
        assert_eq!(z.module.dim(), 1);
    }

    #[test]
    fn gl3_simple_dimensions() {
        let f = NumberField::rationals();
        let g = crate::catalog::p(3, &f).unwrap();
        let g0 = Subspace::span(g.dim(), &g.even_range().map(SparseVec::unit).collect::<Vec<_>>());
        let a = subalgebra(&g, &g0, "g0");
        let v = SuperModule::standard(&g).unwrap().restrict(&a, g0.basis()).unwrap();
        let v = v.submodule(&Subspace::span(6, &(0..3).map(SparseVec::unit).collect::<Vec<_>>())).unwrap();
        for (l, d) in [(vec![0, 0, 0], 1), (vec![1, 0, 0], 3), (vec![2, 1, 0], 8), (vec![1, 0, -1], 8), (vec![2, 0, 0], 6)] {
            let m = gl_simple_module(&a, &v, &l).unwrap();
            assert_eq!(m.dim(), d, "{l:?}");
            assert!(m.check().is_empty());
        }
    }

    #[test]
    fn kac_module_dimensions() {
        let f = NumberField::rationals();
        let k = kac_module_p(3, &[0, 0, 0], KacSign::Plus, &f, 1).unwrap();
        assert_eq!(k.module.dim(), 8);
        let k = kac_module_p(3, &[0, 0, 0], KacSign::Minus, &f, 1).unwrap();
        assert_eq!(k.module.dim(), 64);
        assert_eq!(k.simple, Some(false));
    }

    #[test]
    fn standard_gl21_highest_weight() {
        let g = gl(2, 1, &NumberField::rationals()).unwrap();
        let rd = rootsys::root_decomposition(&g).unwrap();
        let tri = rootsys::triangular(&g, &rd, &[Rational::from_int(2), Rational::from_int(1), Rational::from_int(0)]).unwrap();
        let v = SuperModule::standard(&g).unwrap();
        let hw = highest_weight(&v, &rd, &tri, 1).unwrap();
        assert!(hw.unique && hw.killed_by_n_plus && hw.dominates_all);
        assert_eq!(hw.weight.unwrap(), vec!["1", "0", "0"]);
        assert_eq!(hw.top_h_simple, Some(true));
    }
}
