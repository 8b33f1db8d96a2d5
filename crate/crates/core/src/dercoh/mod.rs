//! Derivations, 2-cohomology with trivial coefficients, central extensions,
//! and the maximality tests built on them.

mod cochain;
mod der;

use serde::Serialize;

pub use cochain::{
    central_extension, cocycle_equations, h2_restricted, h2_trivial, h2_trivial_dims, is_cocycle, CentralExtension,
    Cochains, Cocycle, CocycleSpace, H2Restricted,
};
pub use der::{derivations, is_derivation, DerivationAlgebra, DerivationDims, SemidirectWitness};

use crate::catalog::{Family, FamilySpec};
use crate::exactla::sparse::sparse_kernel;
use crate::exactla::SparseVec;
use crate::liealg::{subalgebra, SuperLieAlgebra, Subspace};
use crate::repn::{composition_factors, hom_space, is_isomorphic, SuperModule};
use crate::structure::{canonical_filtration, center, derived, is_quasireductive, is_simple_algebra};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MaximalityWitness {
    pub center_dim: usize,
    pub h2_restricted_dim: usize,
    pub r0_dim: usize,
    /// Even outer derivations of `C(g)` fixing the classes of `Z` (mod inner).
    pub annihilator_dim: usize,
    pub center_condition: bool,
    pub annihilator_condition: bool,
    pub maximal: bool,
}

/// Compares `Z(g)` with `H^2_r(g')` and `R(g)_0` with the annihilator in
/// `D(C(g))_0` of the classes of `Z(g)` restricted to `C(g)`.
pub fn is_maximal(g: &SuperLieAlgebra, seed: u64) -> Result<MaximalityWitness> {
    let qr = is_quasireductive(g);
    if !qr.quasireductive || !qr.reduced {
        return Err(Error::Precondition(format!("{} must be quasireductive and reduced", g.name())));
    }
    let filt = canonical_filtration(g, seed)?;
    let gp = &filt.quotient.algebra;
    let (h2, _) = h2_restricted(gp)?;
    let center_dim = filt.z.dim();

    let c = subalgebra(gp, &filt.c_prime, "C");
    let cs = Cochains::new(c.space(), 0, |_, _| true);
    // Classes of Z on C: the Z-components of brackets of lifted basis vectors.
    let lifts: Vec<SparseVec> = filt.c_prime.basis().iter().map(|v| filt.quotient.lift(v)).collect();
    let mut zforms: Vec<SparseVec> = vec![SparseVec::new(); center_dim];
    let mut entries: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); center_dim];
    for (k, &(i, j)) in cs.pairs.iter().enumerate() {
        let b = g.bracket(&lifts[i], &lifts[j]);
        let zpart = b.sub(&filt.quotient.lift(&filt.quotient.project(&b)));
        for (t, x) in filt.z.coords(&zpart).entries() {
            entries[*t].push((k, x.clone()));
        }
    }
    for (t, e) in entries.into_iter().enumerate() {
        zforms[t] = SparseVec::from_pairs(e);
    }
    let cob: Vec<SparseVec> = c.even_range().map(|k| cs.coboundary(&c, &SparseVec::unit(k))).collect();
    let cob = Subspace::span(cs.dim(), &cob);
    let der = derivations(&c)?;
    let even: Vec<usize> = (0..der.basis.len()).filter(|&k| der.algebra.parity(k) == 0).collect();
    let mut eqs: std::collections::BTreeMap<(usize, usize), Vec<(usize, crate::exactla::Scalar)>> = Default::default();
    for (a, &k) in even.iter().enumerate() {
        for (t, z) in zforms.iter().enumerate() {
            let moved = cob.reduce(&der::act_on_cochain(&c, &cs, z, &der.basis[k], 0));
            for (r, x) in moved.entries() {
                eqs.entry((t, *r)).or_default().push((a, x.clone()));
            }
        }
    }
    let eqs: Vec<SparseVec> = eqs.into_values().map(SparseVec::from_pairs).collect();
    let fixing = sparse_kernel(&eqs, even.len()).len();
    let annihilator_dim = fixing - der.dims.inner.0;
    let r0_dim = filt.dims.r.0;
    let center_condition = center_dim == h2.dim;
    let annihilator_condition = r0_dim == annihilator_dim;
    Ok(MaximalityWitness {
        center_dim,
        h2_restricted_dim: h2.dim,
        r0_dim,
        annihilator_dim,
        center_condition,
        annihilator_condition,
        maximal: center_condition && annihilator_condition,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Rigidity {
    pub h2: (usize, usize),
    pub outer: (usize, usize),
    pub rigid: bool,
}

/// `H^2(g) = 0` and `D(g) = 0` for a simple `g`.
pub fn is_rigid(g: &SuperLieAlgebra, seed: u64) -> Result<Rigidity> {
    if is_simple_algebra(g, seed).as_bool() != Some(true) {
        return Err(Error::Precondition(format!("{} is not certified simple", g.name())));
    }
    let h2 = h2_trivial_dims(g);
    let outer = derivations(g)?.dims.outer;
    Ok(Rigidity { h2, outer, rigid: h2 == (0, 0) && outer == (0, 0) })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum FormType {
    Symmetric,
    Skew,
    DualPair,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeFactor {
    pub form: FormType,
    pub component_dim: usize,
    pub multiplicities: (usize, usize),
    pub spec: FamilySpec,
}

/// Splits `C(g)` into isotypic components over `R(g)_0` and reads off the
/// dominating `co`, `csp` and `a` summands.
pub fn pseudoabelian_envelope(g: &SuperLieAlgebra, seed: u64) -> Result<Vec<EnvelopeFactor>> {
    let filt = canonical_filtration(g, seed)?;
    let gp = &filt.quotient.algebra;
    let m = &filt.c_prime;
    let mb = m.basis();
    if mb.iter().any(|x| mb.iter().any(|y| !gp.bracket(x, y).is_zero())) {
        return Err(Error::Precondition(format!("C({}) is not abelian", g.name())));
    }
    if m.dims(gp.space()).0 > 0 {
        return Err(Error::Precondition("C(g) has an even part".into()));
    }
    let r0 = Subspace::span(
        gp.dim(),
        &filt.r.basis().iter().filter(|v| gp.space().vector_parity(v) == Some(0)).cloned().collect::<Vec<_>>(),
    );
    let r0_alg = subalgebra(gp, &r0, "R0");
    let ad = SuperModule::adjoint(gp).restrict(&r0_alg, r0.basis())?;
    let mm = ad.submodule(m)?;
    let factors = composition_factors(&mm, seed)?;
    let mut types: Vec<(SuperModule, usize)> = Vec::new();
    for f in factors {
        match types.iter_mut().find(|(t, _)| is_isomorphic(t, &f, seed)) {
            Some((_, k)) => *k += 1,
            None => types.push((f, 1)),
        }
    }
    for (t, _) in &types {
        if hom_space(t, t, 0).dim() != 1 {
            return Err(Error::Unsupported("component with a noncommutative endomorphism algebra".into()));
        }
    }
    let mut used = vec![false; types.len()];
    let mut out = Vec::new();
    for i in 0..types.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (t, mult) = &types[i];
        let dual = t.dual();
        let s = t.dim();
        if is_isomorphic(t, &dual, seed) {
            let phi = &hom_space(t, &dual, 0).basis[0];
            // B(v, w) = phi(v)(w)
            let sym = (0..s).all(|a| (0..s).all(|b| phi[a].get(b) == phi[b].get(a)));
            let (form, spec) = if sym {
                (FormType::Symmetric, FamilySpec::new(Family::Co, &[s, *mult]))
            } else {
                (FormType::Skew, FamilySpec::new(Family::Csp, &[s, *mult]))
            };
            out.push(EnvelopeFactor { form, component_dim: s, multiplicities: (*mult, 0), spec });
        } else {
            let j = (0..types.len()).find(|&j| !used[j] && is_isomorphic(&types[j].0, &dual, seed));
            let q = match j {
                Some(j) => {
                    used[j] = true;
                    types[j].1
                }
                None => 0,
            };
            if q == 0 {
                return Err(Error::Unsupported("component without its dual; no a(s,p,0) family".into()));
            }
            out.push(EnvelopeFactor {
                form: FormType::DualPair,
                component_dim: s,
                multiplicities: (*mult, q),
                spec: FamilySpec::new(Family::ASpq, &[s, *mult, q]),
            });
        }
    }
    Ok(out)
}

/// The central extension of `g` by all of `H^2_r(g)`.
pub fn universal_restricted_extension(g: &SuperLieAlgebra) -> Result<SuperLieAlgebra> {
    let (_, cs) = h2_restricted(g)?;
    Ok(central_extension(g, &cs.representative_cocycles())?.algebra)
}

/// `Z(g) <= [g, g]`.
pub fn is_reduced(g: &SuperLieAlgebra) -> bool {
    derived(g).contains_subspace(&center(g))
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
    fn maximality_examples() {
        for (s, want) in [("gl(2,2)", true), ("D(2,1;1)", true), ("psl(2,2)", false), ("hat-psl(2,2)", true)] {
            let w = is_maximal(&alg(s), 1).unwrap();
            assert_eq!(w.maximal, want, "{s}: {w:?}");
        }
    }

    #[test]
    fn rigidity_examples() {
        assert!(is_rigid(&alg("osp(3,2)"), 1).unwrap().rigid);
        assert!(!is_rigid(&alg("psl(2,2)"), 1).unwrap().rigid);
    }

    #[test]
    fn envelopes_of_clifford_families() {
        let e = pseudoabelian_envelope(&alg("co(3,2)"), 1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].spec.to_string(), "co(3,2)");
        let e = pseudoabelian_envelope(&alg("a(2,1,1)"), 1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].spec.to_string(), "a(2,1,1)");
        let e = pseudoabelian_envelope(&alg("csp(2,2)"), 1).unwrap();
        assert_eq!(e[0].form, FormType::Skew);
    }
}
