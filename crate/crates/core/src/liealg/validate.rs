use serde::Serialize;

use super::{ksign, SuperLieAlgebra};
use crate::exactla::{FieldElem, Scalar};
use crate::parallel::par_range;

/// Violated axioms, by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(i, j, k)`: `[e_i, e_j]` has a component on `e_k` of the wrong parity.
    pub parity: Vec<(usize, usize, usize)>,
    pub antisymmetry: Vec<(usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.parity.is_empty() && self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parity.len() + self.antisymmetry.len() + self.jacobi.len()
    }
}

pub fn validate(g: &SuperLieAlgebra) -> ValidationReport {
    let n = g.dim();
    let mut rep = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            let v = g.bracket_basis(i, j);
            for (k, _) in v.entries() {
                if g.parity(*k) != (g.parity(i) ^ g.parity(j)) {
                    rep.parity.push((i, j, *k));
                }
            }
            if i <= j {
                let w = g.bracket_basis(j, i);
                let s = Scalar::int(ksign(g.parity(i), g.parity(j)));
                if v.add_scaled(&s, w).is_zero() {
                    continue;
                }
                rep.antisymmetry.push((i, j));
            }
        }
    }
    // [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
    let rows = par_range(n, |a| {
        let mut bad = Vec::new();
        for b in 0..n {
            let ab = g.bracket_basis(a, b);
            let s = Scalar::int(ksign(g.parity(a), g.parity(b)));
            for c in 0..n {
                let lhs = g.bracket_left(a, g.bracket_basis(b, c));
                let mut r = lhs.clone();
                if !ab.is_zero() {
                    r = r.sub(&g.bracket(ab, &crate::exactla::SparseVec::unit(c)));
                }
                r = r.add_scaled(&s.neg(), &g.bracket_left(b, g.bracket_basis(a, c)));
                if !r.is_zero() {
                    bad.push((a, b, c));
                }
            }
        }
        bad
    });
    rep.jacobi = rows.into_iter().flatten().collect();
    rep
}
