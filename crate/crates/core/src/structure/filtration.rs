use serde::Serialize;

use super::ideals::{minimal_ideals, IdealRecord};
use super::{center, even_basis, is_quasireductive, odd_basis};
use crate::exactla::{FieldElem, Matrix, Scalar, SparseVec};
use crate::liealg::{bracket_span, quotient, subalgebra, Quotient, SuperLieAlgebra, Subspace};
use crate::repn::{hom_space, loewy_data, LoewyData, SuperModule};
use crate::{Error, Result};

/// `Z(g) <= C <= g` with `C/Z` the sum of the minimal ideals of
/// `g' = g/Z(g)`, and a subalgebra `R` of `g'` complementing `C/Z`.
#[derive(Clone, Debug)]
pub struct CanonicalFiltration {
    pub z: Subspace,
    /// Preimage of `C(g)` in `g`.
    pub c: Subspace,
    pub quotient: Quotient,
    /// `C(g)` inside `g'`.
    pub c_prime: Subspace,
    /// `R(g)` inside `g'`.
    pub r: Subspace,
    pub ideals: Vec<IdealRecord>,
    pub checks: FiltrationChecks,
    pub dims: FiltrationDims,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiltrationDims {
    pub z: (usize, usize),
    pub c: (usize, usize),
    pub c_prime: (usize, usize),
    pub r: (usize, usize),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiltrationChecks {
    pub r_closed: bool,
    pub r1_abelian: bool,
    pub r0_reductive: bool,
    /// `[R0, R0]` acts trivially on `R1`.
    pub r1_trivial_action: bool,
    /// `Z(g')_0 = 0`.
    pub quotient_center_even_zero: bool,
}

/// A `g0`-equivariant complement to a `g0`-stable subspace `c` of `g`.
fn equivariant_complement(g: &SuperLieAlgebra, c: &Subspace) -> Result<Subspace> {
    if c.dim() == g.dim() {
        return Ok(Subspace::zero(g.dim()));
    }
    let g0s = Subspace::span(g.dim(), &even_basis(g));
    let g0 = subalgebra(g, &g0s, "g0");
    let ad0 = SuperModule::adjoint(g).restrict(&g0, g0s.basis())?;
    module_complement(&ad0, c)
}

/// A complementary submodule to `s`: the kernel of a module map `m -> s`
/// restricting to the identity on `s`.
pub(crate) fn module_complement(m: &SuperModule, s: &Subspace) -> Result<Subspace> {
    if s.dim() == m.dim() {
        return Ok(Subspace::zero(m.dim()));
    }
    let s_mod = m.submodule(s)?;
    let homs = hom_space(m, &s_mod, 0);
    let d = s.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (j, v) in s.basis().iter().enumerate() {
        let imgs: Vec<SparseVec> = homs.basis.iter().map(|phi| crate::repn::apply(phi, v)).collect();
        for i in 0..d {
            rows.push(imgs.iter().map(|w| w.get(i)).collect::<Vec<Scalar>>());
            rhs.push(if i == j { Scalar::one() } else { Scalar::zero() });
        }
    }
    let mat = Matrix::from_rows_width(rows, homs.dim());
    let sol = mat
        .solve(&rhs)?
        .ok_or_else(|| Error::Precondition("no equivariant projection; the action is not semisimple".into()))?;
    let pr = homs.combine(&sol);
    let rows: Vec<SparseVec> = crate::repn::transpose(&pr, d);
    Ok(Subspace::span(m.dim(), &rows).annihilator())
}

pub fn canonical_filtration(g: &SuperLieAlgebra, seed: u64) -> Result<CanonicalFiltration> {
    let qr = is_quasireductive(g);
    if !qr.quasireductive {
        return Err(Error::Precondition(format!("{} is not quasireductive", g.name())));
    }
    let z = center(g);
    let q = quotient(g, &z)?;
    let gp = &q.algebra;
    let zp = center(gp);
    let ideals = minimal_ideals(gp, seed)?;
    let mut cp = Subspace::zero(gp.dim());
    for r in &ideals {
        cp = cp.sum(&r.subspace);
    }
    let lifted: Vec<SparseVec> = cp.basis().iter().map(|v| q.lift(v)).collect();
    let c = z.sum(&Subspace::span(g.dim(), &lifted));
    let r = equivariant_complement(gp, &cp)?;
    let rb = r.basis();
    let r_closed = rb.iter().all(|x| rb.iter().all(|y| r.contains(&gp.bracket(x, y))));
    let sp = gp.space();
    let r1: Vec<SparseVec> = rb.iter().filter(|v| sp.vector_parity(v) == Some(1)).cloned().collect();
    let r1_abelian = r1.iter().all(|x| r1.iter().all(|y| gp.bracket(x, y).is_zero()));
    let (r0_reductive, r1_trivial_action) = if r_closed && !r.is_zero() {
        let ra = subalgebra(gp, &r, "R");
        let rep = is_quasireductive(&ra);
        let r0a: Vec<SparseVec> = even_basis(&ra);
        let d0 = bracket_span(&ra, &r0a, &r0a);
        let trivial = d0.basis().iter().all(|x| odd_basis(&ra).iter().all(|y| ra.bracket(x, y).is_zero()));
        (rep.g0_reductive, trivial)
    } else {
        (r.is_zero(), true)
    };
    let checks = FiltrationChecks {
        r_closed,
        r1_abelian,
        r0_reductive,
        r1_trivial_action,
        quotient_center_even_zero: zp.dims(sp).0 == 0,
    };
    let dims = FiltrationDims { z: z.dims(g.space()), c: c.dims(g.space()), c_prime: cp.dims(sp), r: r.dims(sp) };
    Ok(CanonicalFiltration { z, c, quotient: q, c_prime: cp, r, ideals, checks, dims })
}

/// Socle filtration of the adjoint module.
pub fn adjoint_loewy(g: &SuperLieAlgebra, seed: u64) -> Result<LoewyData> {
    if !is_quasireductive(g).quasireductive {
        return Err(Error::Precondition(format!("{} is not quasireductive", g.name())));
    }
    loewy_data(&SuperModule::adjoint(g), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::construct_str;
    use crate::exactla::NumberField;

    fn filt(spec: &str) -> CanonicalFiltration {
        canonical_filtration(&construct_str(spec, &NumberField::rationals()).unwrap(), 3).unwrap()
    }

    #[test]
    fn gl22_filtration() {
        let f = filt("gl(2,2)");
        assert_eq!(f.dims.z, (1, 0));
        assert_eq!(f.dims.c_prime, (6, 8));
        assert_eq!(f.dims.c, (7, 8));
        assert_eq!(f.dims.r, (1, 0));
        assert!(f.checks.r_closed && f.checks.r1_abelian && f.checks.quotient_center_even_zero);
    }

    #[test]
    fn simple_and_doubled() {
        let f = filt("osp(1,2)");
        assert!(f.z.is_zero() && f.r.is_zero());
        let f = filt("tilde-kd(sl2)");
        assert_eq!(f.dims.c_prime, (3, 3));
        assert_eq!(f.dims.r, (1, 1));
        assert!(f.checks.r_closed && f.checks.r1_abelian);
    }

    #[test]
    fn adjoint_loewy_lengths() {
        let f = NumberField::rationals();
        let l = |s: &str| adjoint_loewy(&construct_str(s, &f).unwrap(), 5).unwrap().length;
        assert_eq!(l("osp(1,2)"), 1);
        assert_eq!(l("kd(sl2)"), 2);
        assert!(l("gl(2,2)") <= 3);
    }
}
