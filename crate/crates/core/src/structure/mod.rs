//! Centers, reductivity tests, minimal ideals and the canonical filtration.

mod filtration;
mod ideals;

use serde::Serialize;

use crate::exactla::sparse::sparse_kernel;
use crate::exactla::SparseVec;
use crate::liealg::{bracket_span, subalgebra, SuperLieAlgebra, Subspace};

pub(crate) use filtration::module_complement;
pub use filtration::{adjoint_loewy, canonical_filtration, CanonicalFiltration, FiltrationChecks, FiltrationDims};
pub use ideals::{classify_ideal, minimal_ideals, socle_ideals, IdealKind, IdealRecord};

/// `{x in span(domain) : [x, y] = 0 for all y in ys}`.
pub fn centralizer_in(g: &SuperLieAlgebra, domain: &[usize], ys: &[SparseVec]) -> Subspace {
    let n = g.dim();
    let mut rows: std::collections::BTreeMap<(usize, usize), Vec<(usize, crate::exactla::Scalar)>> = Default::default();
    for (a, &i) in domain.iter().enumerate() {
        for (b, y) in ys.iter().enumerate() {
            for (k, c) in g.bracket_left(i, y).entries() {
                rows.entry((b, *k)).or_default().push((a, c.clone()));
            }
        }
    }
    let eqs: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
    let ker = sparse_kernel(&eqs, domain.len());
    let vs: Vec<SparseVec> = ker.iter().map(|v| v.remap(|a| Some(domain[a]))).collect();
    Subspace::span(n, &vs)
}

/// Centralizer `Z_g(h)`; the center when `h` is `None`.
pub fn center_and_centralizer(g: &SuperLieAlgebra, h: Option<&Subspace>) -> Subspace {
    let all: Vec<usize> = (0..g.dim()).collect();
    match h {
        Some(h) => centralizer_in(g, &all, h.basis()),
        None => centralizer_in(g, &all, &all.iter().map(|&i| SparseVec::unit(i)).collect::<Vec<_>>()),
    }
}

pub fn center(g: &SuperLieAlgebra) -> Subspace {
    center_and_centralizer(g, None)
}

/// `[g, g]`.
pub fn derived(g: &SuperLieAlgebra) -> Subspace {
    let b: Vec<SparseVec> = (0..g.dim()).map(SparseVec::unit).collect();
    bracket_span(g, &b, &b)
}

pub fn even_basis(g: &SuperLieAlgebra) -> Vec<SparseVec> {
    g.even_range().map(SparseVec::unit).collect()
}

pub fn odd_basis(g: &SuperLieAlgebra) -> Vec<SparseVec> {
    g.odd_range().map(SparseVec::unit).collect()
}

/// `Z(g_0)`, inside `g`.
pub fn even_center(g: &SuperLieAlgebra) -> Subspace {
    let ev: Vec<usize> = g.even_range().collect();
    centralizer_in(g, &ev, &even_basis(g))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuasiReport {
    pub g0_reductive: bool,
    pub action_semisimple: bool,
    pub quasireductive: bool,
    pub reduced: bool,
    pub center_even_dim: usize,
    pub derived_even_dim: usize,
}

/// Reductive even part: `g0 = Z(g0) + [g0, g0]` with nondegenerate Killing
/// form on `[g0, g0]`. Semisimple action: `ad z` has squarefree minimal
/// polynomial for `z` in a basis of `Z(g0)`. Reduced: `Z(g)` inside `[g, g]`.
pub fn is_quasireductive(g: &SuperLieAlgebra) -> QuasiReport {
    let ev = even_basis(g);
    let z0 = even_center(g);
    let d0 = bracket_span(g, &ev, &ev);
    let mut reductive = z0.intersection(&d0).is_zero() && z0.dim() + d0.dim() == g.n_even();
    if reductive && !d0.is_zero() {
        let s = subalgebra(g, &d0, "[g0,g0]");
        reductive = s.killing_gram().rank() == s.dim();
    }
    let action = z0.basis().iter().all(|z| crate::exactla::minimal_polynomial(&g.ad(z)).1);
    let zc = center(g);
    let reduced = derived(g).contains_subspace(&zc);
    QuasiReport {
        g0_reductive: reductive,
        action_semisimple: action,
        quasireductive: reductive && action,
        reduced,
        center_even_dim: z0.dim(),
        derived_even_dim: d0.dim(),
    }
}

/// Whether `g` has no graded ideals other than `0` and `g` (and is not a
/// one-dimensional abelian algebra).
pub fn is_simple_algebra(g: &SuperLieAlgebra, seed: u64) -> crate::repn::Simplicity {
    if g.dim() == 0 || g.is_abelian() {
        return crate::repn::Simplicity::Reducible(Subspace::zero(g.dim()));
    }
    crate::repn::is_simple(&crate::repn::SuperModule::adjoint(g), seed)
}
