use serde::Serialize;

use super::{ksign, SuperLieAlgebra};
use crate::exactla::{Echelon, FieldElem, Matrix, Scalar, SparseVec};
use crate::parallel::par_range;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    SupertraceOfRep,
    Otr,
    Killing,
    DetectAll,
}

/// A supersymmetric bilinear form given by its Gram matrix on the basis.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub gram: Matrix,
    pub parity: u8,
    pub invariant: bool,
    pub nondegenerate: bool,
}

impl BilinearForm {
    fn new(g: &SuperLieAlgebra, gram: Matrix, parity: u8) -> BilinearForm {
        let invariant = is_invariant(g, &gram);
        let nondegenerate = gram.rank() == g.dim();
        BilinearForm { gram, parity, invariant, nondegenerate }
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let c = self.gram.get(*i, *j);
                if !c.is_zero() {
                    acc = acc.add(&a.mul(b).mul(c));
                }
            }
        }
        acc
    }
}

fn gram_entry(gram: &Matrix, u: &SparseVec, v: &SparseVec) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, a) in u.entries() {
        for (j, b) in v.entries() {
            let c = gram.get(*i, *j);
            if !c.is_zero() {
                acc = acc.add(&a.mul(b).mul(c));
            }
        }
    }
    acc
}

/// `B([x,y],z) + (-1)^{p(x)p(y)} B(y,[x,z]) = 0` on all basis triples.
pub fn is_invariant(g: &SuperLieAlgebra, gram: &Matrix) -> bool {
    let n = g.dim();
    par_range(n, |x| {
        for y in 0..n {
            let s = Scalar::int(ksign(g.parity(x), g.parity(y)));
            let xy = g.bracket_basis(x, y);
            for z in 0..n {
                let a = gram_entry(gram, xy, &SparseVec::unit(z));
                let b = gram_entry(gram, &SparseVec::unit(y), g.bracket_basis(x, z));
                if !a.add(&s.mul(&b)).is_zero() {
                    return false;
                }
            }
        }
        true
    })
    .into_iter()
    .all(|b| b)
}

pub(super) fn killing_gram(g: &SuperLieAlgebra) -> Matrix {
    let n = g.dim();
    let rows = par_range(n, |i| {
        let mut row = vec![Scalar::zero(); n];
        for (j, slot) in row.iter_mut().enumerate() {
            if g.parity(i) != g.parity(j) {
                continue;
            }
            // sum over l, k of (-1)^{p_k} [e_i,e_l]_k [e_j,e_k]_l
            let mut acc = Scalar::zero();
            for l in 0..n {
                for (k, a) in g.bracket_basis(i, l).entries() {
                    let b = g.bracket_basis(j, *k).get(l);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(&b);
                    acc = if g.parity(*k) == 1 { acc.sub(&t) } else { acc.add(&t) };
                }
            }
            *slot = acc;
        }
        row
    });
    Matrix::from_rows_width(rows, n)
}

fn realization_gram(g: &SuperLieAlgebra, f: impl Fn(&Matrix) -> Scalar, parity: u8) -> Matrix {
    let r = g.realization().unwrap();
    let n = g.dim();
    Matrix::from_fn(n, n, |i, j| {
        if (g.parity(i) ^ g.parity(j)) != parity {
            return Scalar::zero();
        }
        f(&r.mats[i].mul(&r.mats[j]))
    })
}

/// All invariant supersymmetric forms of the given parity (a basis).
pub fn detect_forms(g: &SuperLieAlgebra, parity: u8) -> Vec<Matrix> {
    let n = g.dim();
    // unknowns B_ab, a <= b, with p(a) + p(b) = parity
    let mut idx = std::collections::HashMap::new();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a..n {
            if (g.parity(a) ^ g.parity(b)) == parity {
                idx.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let m = pairs.len();
    // B(e_k, e_l) as a sparse combination of unknowns
    let var = |k: usize, l: usize| -> Option<(usize, i64)> {
        if k <= l {
            idx.get(&(k, l)).map(|&v| (v, 1))
        } else {
            idx.get(&(l, k)).map(|&v| (v, ksign(g.parity(k), g.parity(l))))
        }
    };
    let eq_rows = par_range(n, |x| {
        let mut out = Vec::new();
        for y in 0..n {
            let s = ksign(g.parity(x), g.parity(y));
            let xy = g.bracket_basis(x, y);
            for z in 0..n {
                let mut acc = crate::exactla::sparse::SparseAcc::new();
                for (k, c) in xy.entries() {
                    if let Some((v, sg)) = var(*k, z) {
                        acc.add(v, &c.mul(&Scalar::int(sg)));
                    }
                }
                for (k, c) in g.bracket_basis(x, z).entries() {
                    if let Some((v, sg)) = var(y, *k) {
                        acc.add(v, &c.mul(&Scalar::int(sg * s)));
                    }
                }
                let row = acc.finish();
                if !row.is_zero() {
                    out.push(row);
                }
            }
        }
        out
    });
    let mut e = Echelon::new(m);
    'outer: for rows in eq_rows {
        for r in rows {
            e.insert(&r);
            if e.rank() == m {
                break 'outer;
            }
        }
    }
    e.kernel()
        .into_iter()
        .map(|sol| {
            let mut gram = Matrix::zeros(n, n);
            for (v, c) in sol.entries() {
                let (a, b) = pairs[*v];
                gram.set(a, b, c.clone());
                if a != b {
                    gram.set(b, a, c.mul(&Scalar::int(ksign(g.parity(a), g.parity(b)))));
                }
            }
            gram
        })
        .collect()
}

pub fn invariant_form(g: &SuperLieAlgebra, kind: FormKind) -> Result<Vec<BilinearForm>> {
    match kind {
        FormKind::SupertraceOfRep => {
            let r = g.realization().ok_or_else(|| Error::Precondition("no matrix realization".into()))?;
            let gram = realization_gram(g, |x| r.supertrace(x), 0);
            Ok(vec![BilinearForm::new(g, gram, 0)])
        }
        FormKind::Otr => {
            let r = g.realization().ok_or_else(|| Error::Precondition("no matrix realization".into()))?;
            if r.m != r.n {
                return Err(Error::Precondition("odd trace needs square blocks".into()));
            }
            let gram = realization_gram(g, |x| r.odd_trace(x), 1);
            Ok(vec![BilinearForm::new(g, gram, 1)])
        }
        FormKind::Killing => Ok(vec![BilinearForm::new(g, killing_gram(g), 0)]),
        FormKind::DetectAll => {
            let mut out = Vec::new();
            for p in [0u8, 1] {
                for gram in detect_forms(g, p) {
                    out.push(BilinearForm::new(g, gram, p));
                }
            }
            Ok(out)
        }
    }
}
