//! Cartan subalgebras, root decompositions and triangular decompositions.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::roots::split_roots;
use crate::exactla::{Echelon, FieldElem, Matrix, Rational, Scalar, SparseVec};
use crate::liealg::{SuperLieAlgebra, Subspace};
use crate::structure::centralizer_in;
use crate::{Error, Result};

pub type Weight = Vec<Scalar>;

#[derive(Clone, Debug)]
pub struct CartanData {
    pub h0: Vec<SparseVec>,
    pub h: Subspace,
    pub h0_dims: (usize, usize),
    pub h_dims: (usize, usize),
    /// Whether the Cartan was designated by the constructor.
    pub designated: bool,
}

/// Designated `h0` when present, else a centralizer of a random regular
/// semisimple even element; `h = Z_g(h0)`.
pub fn cartan(g: &SuperLieAlgebra) -> Result<CartanData> {
    let (h0, designated) = match g.cartan() {
        Some(h) => (h.to_vec(), true),
        None => (generic_cartan(g, 0x5eed)?, false),
    };
    let all: Vec<usize> = (0..g.dim()).collect();
    let h = centralizer_in(g, &all, &h0);
    Ok(CartanData { h0_dims: (h0.len(), 0), h_dims: h.dims(g.space()), h0, h, designated })
}

fn generic_cartan(g: &SuperLieAlgebra, seed: u64) -> Result<Vec<SparseVec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ev: Vec<usize> = g.even_range().collect();
    let mut best: Option<Subspace> = None;
    for _ in 0..12 {
        let x = SparseVec::from_pairs(ev.iter().map(|&i| (i, Scalar::int(rng.gen_range(-7..=7)))));
        if x.is_zero() || !crate::exactla::minimal_polynomial(&g.ad(&x)).1 {
            continue;
        }
        let z = centralizer_in(g, &ev, &[x]);
        if best.as_ref().is_none_or(|b| z.dim() < b.dim()) {
            best = Some(z);
        }
    }
    let z = best.ok_or_else(|| Error::Budget("no regular semisimple even element found".into()))?;
    let abelian = z.basis().iter().all(|a| z.basis().iter().all(|b| g.bracket(a, b).is_zero()));
    if !abelian {
        return Err(Error::Budget("centralizer of the sampled element is not abelian".into()));
    }
    Ok(z.basis().to_vec())
}

#[derive(Clone, Debug)]
pub struct RootSpace {
    pub weight: Weight,
    pub basis: Vec<SparseVec>,
    pub dims: (usize, usize),
}

/// Simultaneous eigenspace decomposition of `ad h0`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan: CartanData,
    /// Nonzero weights, sorted.
    pub roots: Vec<RootSpace>,
    /// Roots whose space is not `(1|0)`, `(1|1)` or `(0|n)`.
    pub profile_violations: Vec<Weight>,
}

fn weights_of(g: &SuperLieAlgebra, h0: &[SparseVec], v: &SparseVec) -> Option<Weight> {
    let lead = v.leading()?;
    let mut w = Vec::with_capacity(h0.len());
    for h in h0 {
        let img = g.bracket(h, v);
        let c = img.get(lead.0).mul(&lead.1.inv());
        if img != v.scale(&c) {
            return None;
        }
        w.push(c);
    }
    Some(w)
}

fn eigen_decomposition(g: &SuperLieAlgebra, h0: &[SparseVec]) -> Result<Vec<(Weight, Vec<SparseVec>)>> {
    let n = g.dim();
    if let (Some(w), Some(c)) = (g.basis_weights(), g.cartan()) {
        if c == h0 {
            let mut map: BTreeMap<Weight, Vec<SparseVec>> = BTreeMap::new();
            for (i, wt) in w.iter().enumerate() {
                map.entry(wt.clone()).or_default().push(SparseVec::unit(i));
            }
            return Ok(map.into_iter().collect());
        }
    }
    // Split by each Cartan element in turn, per parity.
    let mut pieces: Vec<Vec<SparseVec>> = vec![
        g.even_range().map(SparseVec::unit).collect(),
        g.odd_range().map(SparseVec::unit).collect(),
    ];
    pieces.retain(|p| !p.is_empty());
    for h in h0 {
        let ad = g.ad(h);
        let mut next = Vec::new();
        for p in pieces {
            let sub = Subspace::span(n, &p);
            let k = p.len();
            let mut m = Matrix::zeros(k, k);
            for (j, v) in sub.basis().iter().enumerate() {
                let img = ad.mul_sparse(v);
                for (i, c) in sub.coords(&img).entries() {
                    m.set(*i, j, c.clone());
                }
            }
            let mp = m.minimal_polynomial();
            if !mp.is_squarefree() {
                return Err(Error::Precondition("ad h0 is not semisimple".into()));
            }
            for r in split_roots(&mp, g.field())? {
                let shifted = m.sub(&Matrix::identity(k).scale(&r));
                let vs: Vec<SparseVec> = shifted
                    .kernel_basis()
                    .into_iter()
                    .map(|c| sub.from_coords(&SparseVec::from_dense(&c)))
                    .collect();
                next.push(vs);
            }
        }
        pieces = next;
    }
    let mut map: BTreeMap<Weight, Vec<SparseVec>> = BTreeMap::new();
    for p in pieces {
        let w = weights_of(g, h0, &p[0]).ok_or_else(|| Error::Validation("eigenvector check failed".into()))?;
        map.entry(w).or_default().extend(p);
    }
    Ok(map.into_iter().collect())
}

pub fn root_decomposition(g: &SuperLieAlgebra) -> Result<RootDatum> {
    let c = cartan(g)?;
    let parts = eigen_decomposition(g, &c.h0)?;
    let mut roots = Vec::new();
    let mut total = 0;
    for (w, vs) in parts {
        total += vs.len();
        if w.iter().all(|x| x.is_zero()) {
            let z = Subspace::span(g.dim(), &vs);
            if z != c.h {
                return Err(Error::Validation("zero weight space differs from the centralizer of h0".into()));
            }
            continue;
        }
        let s = Subspace::span(g.dim(), &vs);
        let dims = s.dims(g.space());
        roots.push(RootSpace { weight: w, basis: vs, dims });
    }
    if total != g.dim() {
        return Err(Error::Validation("weight spaces do not fill the algebra".into()));
    }
    let profile_violations = roots
        .iter()
        .filter(|r| !matches!(r.dims, (1, 0) | (1, 1) | (0, _)))
        .map(|r| r.weight.clone())
        .collect();
    Ok(RootDatum { cartan: c, roots, profile_violations })
}

impl RootDatum {
    pub fn root(&self, w: &[Scalar]) -> Option<&RootSpace> {
        self.roots.iter().find(|r| r.weight == w)
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.roots.iter().map(|r| r.weight.clone()).collect()
    }

    /// Pairs of root spaces whose bracket leaves `g_{a+b}` (with `g_0 = h`).
    pub fn additivity_violations(&self, g: &SuperLieAlgebra) -> usize {
        let h = &self.cartan.h;
        let mut bad = 0;
        for a in &self.roots {
            for b in &self.roots {
                let s: Weight = a.weight.iter().zip(&b.weight).map(|(x, y)| x.add(y)).collect();
                let target = if s.iter().all(|x| x.is_zero()) {
                    Some(h.clone())
                } else {
                    self.root(&s).map(|r| Subspace::span(g.dim(), &r.basis))
                };
                for x in &a.basis {
                    for y in &b.basis {
                        let z = g.bracket(x, y);
                        let ok = match &target {
                            Some(t) => t.contains(&z),
                            None => z.is_zero(),
                        };
                        if !ok {
                            bad += 1;
                        }
                    }
                }
            }
        }
        bad
    }

    /// Closed under negation.
    pub fn symmetric(&self) -> bool {
        self.roots.iter().all(|r| self.root(&r.weight.iter().map(|x| x.neg()).collect::<Vec<_>>()).is_some_and(|s| s.dims == r.dims))
    }

    /// Integer lattice rank versus span dimension of the roots.
    pub fn lattice_check(&self, g: &SuperLieAlgebra) -> LatticeCheck {
        let f = g.field();
        let rows: Vec<Vec<Scalar>> = self.roots.iter().map(|r| r.weight.clone()).collect();
        let span = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
        let qrows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|w| w.iter().flat_map(|x| x.coeffs_in(f)).map(Scalar::Rat).collect())
            .collect();
        let rank_z = if qrows.is_empty() { 0 } else { Matrix::from_rows(qrows).rank() };
        LatticeCheck { rank_z, dim_span: span, is_algebraic: rank_z == span }
    }

    /// Coroot `h_a` of an even root with `a(h_a) = 2`, as values `mu(h_a)`
    /// are computed through its coordinates in the `h0` basis.
    fn coroot(&self, g: &SuperLieAlgebra, a: &RootSpace) -> Option<Vec<Scalar>> {
        let neg: Weight = a.weight.iter().map(|x| x.neg()).collect();
        let b = self.root(&neg)?;
        let e = a.basis.iter().find(|v| g.space().vector_parity(v) == Some(0))?;
        let f = b.basis.iter().find(|v| g.space().vector_parity(v) == Some(0))?;
        let hv = g.bracket(e, f);
        let mut ech = Echelon::tracked(g.dim());
        for h in &self.cartan.h0 {
            ech.insert(h);
        }
        let c = ech.express(&hv)?;
        let coords: Vec<Scalar> = (0..self.cartan.h0.len()).map(|k| c.get(k)).collect();
        let val = pair(&a.weight, &coords);
        if val.is_zero() {
            return None;
        }
        let s = Scalar::int(2).mul(&val.inv());
        Some(coords.iter().map(|x| x.mul(&s)).collect())
    }

    /// Simple reflections of the even root system (simple with respect to
    /// `gamma`), each checked to permute the roots preserving root-space
    /// dimensions. Returns the number of reflections and failures.
    pub fn weyl_check(&self, g: &SuperLieAlgebra, gamma: &[Rational]) -> Result<(usize, usize)> {
        let even: Vec<&RootSpace> = self.roots.iter().filter(|r| r.dims.0 > 0).collect();
        let pos: Vec<&RootSpace> = even.iter().copied().filter(|r| gamma_value(gamma, &r.weight).is_some_and(|v| v.signum() > 0)).collect();
        let sum_of_two = |w: &Weight| {
            pos.iter().any(|a| pos.iter().any(|b| a.weight.iter().zip(&b.weight).map(|(x, y)| x.add(y)).collect::<Vec<_>>() == *w))
        };
        let simple: Vec<&RootSpace> = pos.iter().copied().filter(|r| !sum_of_two(&r.weight)).collect();
        let mut fails = 0;
        for a in &simple {
            let Some(h) = self.coroot(g, a) else {
                fails += 1;
                continue;
            };
            for r in &self.roots {
                let c = pair(&r.weight, &h);
                let img: Weight = r.weight.iter().zip(&a.weight).map(|(x, y)| x.sub(&c.mul(y))).collect();
                if self.root(&img).map(|s| s.dims) != Some(r.dims) {
                    fails += 1;
                }
            }
        }
        Ok((simple.len(), fails))
    }
}

fn pair(w: &[Scalar], coords: &[Scalar]) -> Scalar {
    w.iter().zip(coords).fold(Scalar::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `gamma(w)`, when the weight is rational.
pub fn gamma_value(gamma: &[Rational], w: &[Scalar]) -> Option<Rational> {
    let mut acc = Rational::from_int(0);
    for (g, x) in gamma.iter().zip(w) {
        acc = &acc + &(g * x.as_rational()?);
    }
    Some(acc)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LatticeCheck {
    pub rank_z: usize,
    pub dim_span: usize,
    pub is_algebraic: bool,
}

#[derive(Clone, Debug)]
pub struct TriangularDecomposition {
    pub gamma: Vec<Rational>,
    pub delta_plus: Vec<Weight>,
    pub delta_minus: Vec<Weight>,
    pub n_plus: Subspace,
    pub n_minus: Subspace,
    pub borel: Subspace,
}

pub fn triangular(g: &SuperLieAlgebra, rd: &RootDatum, gamma: &[Rational]) -> Result<TriangularDecomposition> {
    if gamma.len() != rd.cartan.h0.len() {
        return Err(Error::DimensionMismatch(format!("gamma has {} entries for a Cartan of rank {}", gamma.len(), rd.cartan.h0.len())));
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut zero = Vec::new();
    let (mut np, mut nm) = (Vec::new(), Vec::new());
    for r in &rd.roots {
        let v = gamma_value(gamma, &r.weight)
            .ok_or_else(|| Error::Unsupported("gamma needs rational root coordinates".into()))?;
        match v.signum() {
            1 => {
                plus.push(r.weight.clone());
                np.extend(r.basis.iter().cloned());
            }
            -1 => {
                minus.push(r.weight.clone());
                nm.extend(r.basis.iter().cloned());
            }
            _ => zero.push(format_weight(&r.weight)),
        }
    }
    if !zero.is_empty() {
        return Err(Error::Precondition(format!("gamma vanishes on the roots {}", zero.join(", "))));
    }
    let n = g.dim();
    let n_plus = Subspace::span(n, &np);
    let n_minus = Subspace::span(n, &nm);
    for s in [&n_plus, &n_minus] {
        for x in s.basis() {
            for y in s.basis() {
                if !s.contains(&g.bracket(x, y)) {
                    return Err(Error::Validation("nilpotent part is not closed under bracket".into()));
                }
            }
        }
    }
    let borel = rd.cartan.h.sum(&n_plus);
    Ok(TriangularDecomposition { gamma: gamma.to_vec(), delta_plus: plus, delta_minus: minus, n_plus, n_minus, borel })
}

/// First `gamma` from a fixed-seed sequence that vanishes on no root.
pub fn default_gamma(rd: &RootDatum, seed: u64) -> Result<Vec<Rational>> {
    let k = rd.cartan.h0.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let g: Vec<Rational> = (0..k).map(|_| Rational::from_int(rng.gen_range(-97..=97))).collect();
        if rd.roots.iter().all(|r| gamma_value(&g, &r.weight).is_some_and(|v| !v.is_zero())) {
            return Ok(g);
        }
    }
    Err(Error::Budget("no regular gamma found".into()))
}

pub fn format_weight(w: &[Scalar]) -> String {
    format!("({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Root coordinates scaled to integers (per root, by the lcm of denominators).
pub fn integer_key(w: &[Scalar]) -> Option<Vec<i64>> {
    let q: Option<Vec<Rational>> = w.iter().map(|x| x.as_rational().cloned()).collect();
    let q = q?;
    let l = crate::exactla::rational::lcm_denominators(q.iter());
    q.iter()
        .map(|x| {
            let v = &x.to_big() * num_rational::BigRational::from_integer(l.clone());
            i64::try_from(v.to_integer()).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{construct_str, gl};
    use crate::exactla::NumberField;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn cartan_dims() {
        let f = NumberField::rationals();
        for (s, d) in [("q(3)", (3, 3)), ("gl(2,1)", (3, 0)), ("p(3)", (3, 0))] {
            let g = construct_str(s, &f).unwrap();
            assert_eq!(cartan(&g).unwrap().h_dims, d, "{s}");
        }
    }

    #[test]
    fn gl21_roots() {
        let g = gl(2, 1, &NumberField::rationals()).unwrap();
        let rd = root_decomposition(&g).unwrap();
        assert_eq!(rd.roots.len(), 6);
        assert!(rd.profile_violations.is_empty());
        assert_eq!(rd.additivity_violations(&g), 0);
        assert!(rd.symmetric());
        let t = triangular(&g, &rd, &q(&[2, 1, 0])).unwrap();
        assert_eq!(t.delta_plus.len(), 3);
        let err = triangular(&g, &rd, &q(&[0, 0, 0])).unwrap_err().to_string();
        assert_eq!(err.matches("(").count(), 6);
        assert_eq!(rd.lattice_check(&g), LatticeCheck { rank_z: 2, dim_span: 2, is_algebraic: true });
    }

    #[test]
    fn q3_root_spaces_are_1_1() {
        let g = construct_str("q(3)", &NumberField::rationals()).unwrap();
        let rd = root_decomposition(&g).unwrap();
        assert!(rd.roots.iter().all(|r| r.dims == (1, 1)));
        let gamma = default_gamma(&rd, 1).unwrap();
        let (s, fails) = rd.weyl_check(&g, &gamma).unwrap();
        assert_eq!((s, fails), (2, 0));
    }

    #[test]
    fn d21_lattice() {
        let g = construct_str("D(2,1;1)", &NumberField::rationals()).unwrap();
        let rd = root_decomposition(&g).unwrap();
        assert_eq!(rd.lattice_check(&g).rank_z, 3);
        assert!(rd.profile_violations.is_empty());
    }
}
