//! Graded spaces, Lie superalgebras given by structure constants, and the
//! subobject machinery built on top of them.

mod forms;
mod json;
mod subspace;
mod validate;

use std::sync::{Arc, OnceLock};

use crate::exactla::{FieldElem, Matrix, NumberField, Scalar, SparseVec};
use crate::{Error, Result};

pub use forms::{detect_forms, invariant_form, is_invariant, BilinearForm, FormKind};
pub use json::{algebra_from_json, algebra_to_json, field_from_json, field_json, scalar_json, sparse_from_json, sparse_json};
pub use subspace::{
    basis_matrix, bracket_span, closure_subspace, direct_sum, is_ideal, quotient, subalgebra, subspace_closure, ClosureMode,
    DirectSum, Quotient, Subspace,
};
pub use validate::{validate, ValidationReport};

/// Koszul sign `(-1)^{pq}`.
#[inline]
pub fn ksign(p: u8, q: u8) -> i64 {
    if p & q & 1 == 1 {
        -1
    } else {
        1
    }
}

pub fn parity_name(p: u8) -> &'static str {
    if p == 0 {
        "even"
    } else {
        "odd"
    }
}

/// Labelled basis with a parity per vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    labels: Vec<String>,
    parities: Vec<u8>,
}

impl SuperSpace {
    pub fn new(labels: Vec<String>, parities: Vec<u8>) -> Result<SuperSpace> {
        if labels.len() != parities.len() {
            return Err(Error::DimensionMismatch("labels and parities differ in length".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(SuperSpace { labels, parities })
    }

    /// Labels `prefix0, prefix1, ...` for the given parities.
    pub fn anonymous(prefix: &str, parities: Vec<u8>) -> SuperSpace {
        SuperSpace { labels: (0..parities.len()).map(|i| format!("{prefix}{i}")).collect(), parities }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|&&p| p == 1).count();
        (self.dim() - odd, odd)
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parities[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Even vectors come before odd ones.
    pub fn is_canonical(&self) -> bool {
        self.parities.windows(2).all(|w| w[0] <= w[1])
    }

    /// Parity of a vector, if homogeneous and nonzero.
    pub fn vector_parity(&self, v: &SparseVec) -> Option<u8> {
        let mut it = v.entries().iter().map(|(i, _)| self.parities[*i]);
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    pub fn even_part(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(v.entries().iter().filter(|(i, _)| self.parities[*i] == 0).cloned().collect())
    }

    pub fn odd_part(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(v.entries().iter().filter(|(i, _)| self.parities[*i] == 1).cloned().collect())
    }
}

/// A matrix realization inside `gl(m|n)`: each basis element as an
/// `(m+n) x (m+n)` block matrix. When `exact` is false the matrices are only
/// representatives modulo an ideal (quotient families), and the bracket agrees
/// with the supercommutator up to that ideal.
#[derive(Clone, Debug)]
pub struct Realization {
    pub m: usize,
    pub n: usize,
    pub mats: Vec<Matrix>,
    pub exact: bool,
}

impl Realization {
    pub fn supertrace(&self, x: &Matrix) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.m {
            t = t.add(x.get(i, i));
        }
        for i in self.m..self.m + self.n {
            t = t.sub(x.get(i, i));
        }
        t
    }

    /// Trace of the upper-right block (square blocks only).
    pub fn odd_trace(&self, x: &Matrix) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.m.min(self.n) {
            t = t.add(x.get(i, self.m + i));
        }
        t
    }

    pub fn element(&self, v: &SparseVec) -> Matrix {
        let k = self.m + self.n;
        let mut out = Matrix::zeros(k, k);
        for (i, c) in v.entries() {
            out = out.add(&self.mats[*i].scale(c));
        }
        out
    }

    pub fn matrix_parity(&self, x: &Matrix) -> Option<u8> {
        let k = self.m + self.n;
        let mut even = false;
        let mut odd = false;
        for i in 0..k {
            for j in 0..k {
                if !x.get(i, j).is_zero() {
                    if (i < self.m) == (j < self.m) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (true, false) => Some(0),
            (false, true) => Some(1),
            (false, false) => Some(0),
            _ => None,
        }
    }
}

/// Supercommutator of homogeneous block matrices.
pub fn supercommutator(x: &Matrix, px: u8, y: &Matrix, py: u8) -> Matrix {
    let xy = x.mul(y);
    let yx = y.mul(x);
    if ksign(px, py) < 0 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

#[derive(Debug)]
struct Table {
    n: usize,
    entries: Vec<SparseVec>,
}

/// A finite-dimensional Lie superalgebra given by structure constants in a
/// basis whose even vectors come first.
#[derive(Clone, Debug)]
pub struct SuperLieAlgebra {
    name: String,
    field: Arc<NumberField>,
    space: SuperSpace,
    table: Arc<Table>,
    cartan: Option<Vec<SparseVec>>,
    realization: Option<Arc<Realization>>,
    weights: Arc<OnceLock<Option<Vec<Vec<Scalar>>>>>,
}

impl SuperLieAlgebra {
    /// Builds the algebra from the brackets of canonical pairs: `i < j`, or
    /// `i == j` with `e_i` odd. Other pairs follow from super-antisymmetry.
    pub fn from_half(
        name: impl Into<String>,
        field: Arc<NumberField>,
        space: SuperSpace,
        half: impl Fn(usize, usize) -> SparseVec,
    ) -> Result<SuperLieAlgebra> {
        if !space.is_canonical() {
            return Err(Error::InvalidSpec("even basis vectors must precede odd ones".into()));
        }
        let n = space.dim();
        let mut entries = vec![SparseVec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                if i == j && space.parity(i) == 0 {
                    continue;
                }
                let v = half(i, j);
                if v.max_index().is_some_and(|k| k >= n) {
                    return Err(Error::DimensionMismatch(format!("bracket [{i},{j}] leaves the algebra")));
                }
                if i != j {
                    let s = ksign(space.parity(i), space.parity(j));
                    entries[j * n + i] = v.scale(&Scalar::int(-s));
                }
                entries[i * n + j] = v;
            }
        }
        Ok(SuperLieAlgebra {
            name: name.into(),
            field,
            space,
            table: Arc::new(Table { n, entries }),
            cartan: None,
            realization: None,
            weights: Arc::new(OnceLock::new()),
        })
    }

    /// Full `n x n` table, taken as is (used by readers that must report
    /// inconsistent input rather than repair it).
    pub(crate) fn from_table(
        name: impl Into<String>,
        field: Arc<NumberField>,
        space: SuperSpace,
        entries: Vec<SparseVec>,
    ) -> Result<SuperLieAlgebra> {
        if !space.is_canonical() {
            return Err(Error::InvalidSpec("even basis vectors must precede odd ones".into()));
        }
        let n = space.dim();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch("bracket table has the wrong size".into()));
        }
        Ok(SuperLieAlgebra {
            name: name.into(),
            field,
            space,
            table: Arc::new(Table { n, entries }),
            cartan: None,
            realization: None,
            weights: Arc::new(OnceLock::new()),
        })
    }

    /// Builds the algebra from explicit `(i, j, [e_i, e_j])` triples on
    /// canonical pairs; missing pairs bracket to zero.
    pub fn from_entries(
        name: impl Into<String>,
        field: Arc<NumberField>,
        space: SuperSpace,
        entries: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<SuperLieAlgebra> {
        let n = space.dim();
        let mut map = std::collections::HashMap::new();
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch(format!("bracket index ({i},{j}) out of range")));
            }
            let (a, b, v) = if i <= j {
                (i, j, v)
            } else {
                (j, i, v.scale(&Scalar::int(-ksign(space.parity(i), space.parity(j)))))
            };
            map.insert((a, b), v);
        }
        SuperLieAlgebra::from_half(name, field, space, |i, j| map.get(&(i, j)).cloned().unwrap_or_default())
    }

    /// Abelian algebra with the given dimensions.
    pub fn abelian(name: &str, field: Arc<NumberField>, even: usize, odd: usize) -> SuperLieAlgebra {
        let par: Vec<u8> = std::iter::repeat_n(0, even).chain(std::iter::repeat_n(1, odd)).collect();
        SuperLieAlgebra::from_half(name, field, SuperSpace::anonymous("a", par), |_, _| SparseVec::new()).unwrap()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_cartan(mut self, cartan: Vec<SparseVec>) -> Self {
        self.cartan = Some(cartan);
        self.weights = Arc::new(OnceLock::new());
        self
    }

    pub fn with_realization(mut self, r: Realization) -> Self {
        self.realization = Some(Arc::new(r));
        self
    }

    pub fn without_realization(mut self) -> Self {
        self.realization = None;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.table.n
    }

    pub fn dims(&self) -> (usize, usize) {
        self.space.dims()
    }

    pub fn n_even(&self) -> usize {
        self.dims().0
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.space.parity(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn even_range(&self) -> std::ops::Range<usize> {
        0..self.n_even()
    }

    pub fn odd_range(&self) -> std::ops::Range<usize> {
        self.n_even()..self.dim()
    }

    pub fn cartan(&self) -> Option<&[SparseVec]> {
        self.cartan.as_deref()
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_deref()
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table.entries[i * self.table.n + j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = crate::exactla::sparse::SparseAcc::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let v = self.bracket_basis(*i, *j);
                if v.is_zero() {
                    continue;
                }
                acc.add_vec(&a.mul(b), v);
            }
        }
        acc.finish()
    }

    /// `[e_i, y]`
    pub fn bracket_left(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = crate::exactla::sparse::SparseAcc::new();
        for (j, b) in y.entries() {
            acc.add_vec(b, self.bracket_basis(i, *j));
        }
        acc.finish()
    }

    /// Matrix of `ad(e_i)` (columns are images of basis vectors).
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j).entries() {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn ad(&self, x: &SparseVec) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &SparseVec::unit(j));
            for (k, c) in col.entries() {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.table.entries.iter().all(|v| v.is_zero())
    }

    /// Killing form `str(ad x ad y)` on basis vectors.
    pub fn killing_gram(&self) -> Matrix {
        forms::killing_gram(self)
    }

    /// Values `alpha(h_k)` for each basis vector that is a simultaneous
    /// eigenvector of the designated Cartan; `None` if some basis vector is
    /// not a weight vector or no Cartan is designated.
    pub fn basis_weights(&self) -> Option<&Vec<Vec<Scalar>>> {
        self.weights
            .get_or_init(|| {
                let h = self.cartan.as_ref()?;
                let n = self.dim();
                let mut out = vec![Vec::with_capacity(h.len()); n];
                for hk in h {
                    for (j, w) in out.iter_mut().enumerate() {
                        let img = self.bracket(hk, &SparseVec::unit(j));
                        let c = img.get(j);
                        if img.nnz() > 1 || (img.nnz() == 1 && img.entries()[0].0 != j) {
                            return None;
                        }
                        w.push(c);
                    }
                }
                Some(out)
            })
            .as_ref()
    }

    /// Nonzero brackets on canonical pairs.
    pub fn structure_entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        let n = self.dim();
        (0..n).flat_map(move |i| (i..n).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let v = self.bracket_basis(i, j);
            (!v.is_zero() && (i < j || self.parity(i) == 1)).then_some((i, j, v))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The two-dimensional nonabelian Lie algebra [x, y] = y.
    pub(crate) fn aff1() -> SuperLieAlgebra {
        let sp = SuperSpace::new(vec!["x".into(), "y".into()], vec![0, 0]).unwrap();
        SuperLieAlgebra::from_entries("aff1", NumberField::rationals(), sp, vec![(0, 1, SparseVec::unit(1))]).unwrap()
    }

    #[test]
    fn antisymmetry_by_construction() {
        let g = aff1();
        assert_eq!(g.bracket_basis(1, 0), &SparseVec::unit(1).neg());
        assert!(validate(&g).is_empty());
    }

    #[test]
    fn rejects_noncanonical_order() {
        let sp = SuperSpace::new(vec!["a".into(), "b".into()], vec![1, 0]).unwrap();
        assert!(SuperLieAlgebra::from_half("x", NumberField::rationals(), sp, |_, _| SparseVec::new()).is_err());
    }
}
