use serde::Serialize;
use serde_json::Value;
use superq::dercoh::{derivations, h2_restricted, h2_trivial_dims, is_derivation, is_maximal, is_rigid, MaximalityWitness, Rigidity};
use superq::exactla::{FieldElem, Scalar, SparseVec};
use superq::liealg::{field_json, scalar_json, subalgebra, validate, SuperLieAlgebra, Subspace};
use superq::repn::{induce, is_simple, twist_module, LoewyData, SuperModule};
use superq::rootsys::{root_decomposition, LatticeCheck};
use superq::structure::{
    adjoint_loewy, canonical_filtration, center, derived, is_quasireductive, is_simple_algebra, FiltrationChecks,
    FiltrationDims, IdealRecord, QuasiReport,
};

use crate::session::Source;
use crate::verify::invertible_intertwiner;

/// Induced-module probes are skipped above this many odd basis vectors.
const MAX_PROBE_ODD: usize = 10;

/// Result of one computation inside a report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome<T> {
    Value(T),
    NotApplicable(String),
    ExtensionNeeded { polynomial: String, reason: String },
    Failed(String),
}

impl<T> Outcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Default)]
struct Status {
    failed: bool,
    extension: Option<String>,
}

impl Status {
    fn take<T>(&mut self, r: superq::Result<T>) -> Outcome<T> {
        use superq::Error::*;
        match r {
            Ok(v) => Outcome::Value(v),
            Err(Precondition(s) | Unsupported(s) | Budget(s)) => Outcome::NotApplicable(s),
            Err(ExtensionNeeded { polynomial, reason }) => {
                self.extension.get_or_insert_with(|| polynomial.clone());
                Outcome::ExtensionNeeded { polynomial, reason }
            }
            Err(e) => {
                self.failed = true;
                Outcome::Failed(e.to_string())
            }
        }
    }

    fn check(&mut self, ok: bool) -> bool {
        self.failed |= !ok;
        ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub source: Source,
    pub dims: (usize, usize),
    pub field: Value,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationSummary {
    pub ok: bool,
    pub parity: Vec<(usize, usize, usize)>,
    pub antisymmetry: Vec<(usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreSummary {
    pub dims: (usize, usize),
    pub h2_restricted: Outcome<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationSummary {
    pub dims: FiltrationDims,
    pub checks: FiltrationChecks,
    pub ideals: Vec<IdealRecord>,
    /// `C(g)` as an algebra.
    pub core: CoreSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSection {
    pub quasireductive: QuasiReport,
    pub center: (usize, usize),
    pub derived: (usize, usize),
    pub simple: Option<bool>,
    pub filtration: Outcome<FiltrationSummary>,
    pub adjoint_loewy: Outcome<LoewyData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationSummary {
    pub der: (usize, usize),
    pub inner: (usize, usize),
    pub outer: (usize, usize),
    pub leibniz_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct H2Summary {
    pub dim: usize,
    pub formula_dim: usize,
    pub invariant_forms: usize,
    pub center_part: usize,
    pub odd_basis: Vec<String>,
    /// `c(e_i, e_j)` over the odd basis, one matrix per class.
    pub cocycles: Vec<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DercohSection {
    pub derivations: Outcome<DerivationSummary>,
    pub h2_restricted: Outcome<H2Summary>,
    pub h2: (usize, usize),
    pub rigid: Outcome<Rigidity>,
    pub maximal: Outcome<MaximalityWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub weight: Vec<Value>,
    pub dims: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSummary {
    pub h0_dim: usize,
    pub h_dims: (usize, usize),
    pub designated_cartan: bool,
    pub roots: Vec<RootEntry>,
    pub profile_violations: Vec<Vec<Value>>,
    /// `dim h + sum dim g_alpha = dim g`.
    pub bookkeeping: bool,
    pub lattice: LatticeCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterEntry {
    pub weight: Vec<Value>,
    pub dim: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedProbe {
    pub dim: usize,
    pub expected_dim: usize,
    pub representation_ok: bool,
    pub reciprocity_iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardProbe {
    pub dims: (usize, usize),
    pub simple: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepnSection {
    /// Character of the twist module of `g0`.
    pub twist: Outcome<Vec<CharacterEntry>>,
    pub induced_trivial: Outcome<InducedProbe>,
    pub standard: Outcome<StandardProbe>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub algebra: AlgebraSummary,
    pub seed: u64,
    pub validation: ValidationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dercoh: Option<DercohSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rootsys: Option<Outcome<RootSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repn: Option<RepnSection>,
    pub ok: bool,
    /// First extension polynomial requested by any section.
    pub extension_needed: Option<String>,
}

impl StructureReport {
    /// 0 when every internal check passed, 1 on a failed check, 3 when only
    /// a field extension is missing.
    pub fn exit_code(&self) -> i32 {
        if !self.ok {
            1
        } else if self.extension_needed.is_some() {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Skip {
    pub structure: bool,
    pub dercoh: bool,
    pub rootsys: bool,
    pub repn: bool,
}

impl Skip {
    pub fn parse(list: &str) -> Result<Skip, String> {
        let mut s = Skip::default();
        for t in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match t {
                "structure" => s.structure = true,
                "dercoh" => s.dercoh = true,
                "rootsys" => s.rootsys = true,
                "repn" => s.repn = true,
                other => return Err(format!("unknown section {other:?} (structure, dercoh, rootsys, repn)")),
            }
        }
        Ok(s)
    }
}

fn weight_json(w: &[Scalar], degree: usize) -> Vec<Value> {
    w.iter().map(|x| scalar_json(x, degree)).collect()
}

pub fn report(g: &SuperLieAlgebra, source: Source, skip: Skip, seed: u64) -> StructureReport {
    let mut st = Status::default();
    let v = validate(g);
    let valid = v.is_empty();
    st.check(valid);
    let algebra = AlgebraSummary {
        name: g.name().to_string(),
        source,
        dims: g.dims(),
        field: field_json(g.field()),
        labels: g.space().labels().to_vec(),
    };
    let validation = ValidationSummary { ok: valid, parity: v.parity, antisymmetry: v.antisymmetry, jacobi: v.jacobi };
    let mut rep = StructureReport {
        algebra,
        seed,
        validation,
        structure: None,
        dercoh: None,
        rootsys: None,
        repn: None,
        ok: false,
        extension_needed: None,
    };
    if valid {
        if !skip.structure {
            rep.structure = Some(structure_section(g, seed, &mut st));
        }
        if !skip.dercoh {
            rep.dercoh = Some(dercoh_section(g, seed, &mut st));
        }
        if !skip.rootsys {
            let r = roots_section(g, &mut st);
            rep.rootsys = Some(st.take(r));
        }
        if !skip.repn {
            rep.repn = Some(repn_section(g, seed, &mut st));
        }
    }
    rep.ok = !st.failed;
    rep.extension_needed = st.extension;
    rep
}

fn structure_section(g: &SuperLieAlgebra, seed: u64, st: &mut Status) -> StructureSection {
    let qr = is_quasireductive(g);
    let sp = g.space();
    let filtration = if qr.quasireductive {
        let r = canonical_filtration(g, seed).map(|f| {
            let c = subalgebra(&f.quotient.algebra, &f.c_prime, "C");
            let core_h2 = st.take(h2_restricted(&c).map(|(h, _)| h.dim));
            let ch = &f.checks;
            st.check(ch.r_closed && ch.r1_abelian && ch.r0_reductive && ch.r1_trivial_action && ch.quotient_center_even_zero);
            FiltrationSummary {
                dims: f.dims.clone(),
                checks: f.checks.clone(),
                ideals: f.ideals.clone(),
                core: CoreSummary { dims: c.dims(), h2_restricted: core_h2 },
            }
        });
        st.take(r)
    } else {
        Outcome::NotApplicable("not quasireductive".into())
    };
    let adjoint_loewy = st.take(adjoint_loewy(g, seed));
    StructureSection {
        center: center(g).dims(sp),
        derived: derived(g).dims(sp),
        simple: is_simple_algebra(g, seed).as_bool(),
        quasireductive: qr,
        filtration,
        adjoint_loewy,
    }
}

fn dercoh_section(g: &SuperLieAlgebra, seed: u64, st: &mut Status) -> DercohSection {
    let der = derivations(g).map(|d| {
        let ok = d.basis.iter().enumerate().all(|(k, op)| is_derivation(g, op, d.algebra.parity(k)));
        st.check(ok);
        DerivationSummary { der: d.dims.der, inner: d.dims.inner, outer: d.dims.outer, leibniz_verified: ok }
    });
    let degree = g.field().degree();
    let odd: Vec<usize> = g.odd_range().collect();
    let h2r = h2_restricted(g).map(|(h, cs)| H2Summary {
        dim: h.dim,
        formula_dim: h.formula_dim,
        invariant_forms: h.invariant_forms,
        center_part: h.center_part,
        odd_basis: odd.iter().map(|&i| g.label(i).to_string()).collect(),
        cocycles: cs
            .representative_cocycles()
            .iter()
            .map(|c| c.matrix(&odd).iter().map(|row| row.iter().map(|x| scalar_json(x, degree)).collect()).collect())
            .collect(),
    });
    DercohSection {
        derivations: st.take(der),
        h2_restricted: st.take(h2r),
        h2: h2_trivial_dims(g),
        rigid: st.take(is_rigid(g, seed)),
        maximal: st.take(is_maximal(g, seed)),
    }
}

fn roots_section(g: &SuperLieAlgebra, st: &mut Status) -> superq::Result<RootSummary> {
    let rd = root_decomposition(g)?;
    let d = g.field().degree();
    let total = rd.roots.iter().fold(rd.cartan.h_dims, |(a, b), r| (a + r.dims.0, b + r.dims.1));
    let bookkeeping = st.check(total == g.dims());
    Ok(RootSummary {
        h0_dim: rd.cartan.h0.len(),
        h_dims: rd.cartan.h_dims,
        designated_cartan: rd.cartan.designated,
        roots: rd.roots.iter().map(|r| RootEntry { weight: weight_json(&r.weight, d), dims: r.dims }).collect(),
        profile_violations: rd.profile_violations.iter().map(|w| weight_json(w, d)).collect(),
        bookkeeping,
        lattice: rd.lattice_check(g),
    })
}

pub(crate) fn even_part(g: &SuperLieAlgebra) -> (Subspace, SuperLieAlgebra) {
    let s = Subspace::span(g.dim(), &g.even_range().map(SparseVec::unit).collect::<Vec<_>>());
    let k = subalgebra(g, &s, "g0");
    (s, k)
}

fn repn_section(g: &SuperLieAlgebra, seed: u64, st: &mut Status) -> RepnSection {
    let (g0s, g0) = even_part(g);
    let d = g.field().degree();
    let twist = twist_module(g, &g0s).and_then(|t| {
        let h0 = g.cartan().ok_or_else(|| superq::Error::Precondition("no designated Cartan".into()))?;
        let weight: Vec<Scalar> = h0
            .iter()
            .map(|h| h.entries().iter().fold(Scalar::zero(), |acc, (i, c)| acc.add(&c.mul(&t.values[*i]))))
            .collect();
        let p = t.module.parity(0) as usize;
        Ok(vec![CharacterEntry { weight: weight_json(&weight, d), dim: (1 - p, p) }])
    });
    let odd = g.odd_range().len();
    let induced = if odd > MAX_PROBE_ODD {
        Err(superq::Error::Budget(format!("{odd} odd basis vectors")))
    } else {
        let triv = SuperModule::trivial(&g0);
        twist_module(g, &g0s).and_then(|t| {
            let ind = induce(g, &g0s, &triv)?;
            let co = superq::repn::coinduce(g, &g0s, &triv.tensor(&t.module)?)?;
            let homs = ind.homs_to(&co.module)?;
            let ok = ind.module.check().is_empty();
            st.check(ok);
            Ok(InducedProbe {
                dim: ind.module.dim(),
                expected_dim: ind.expected_dim(),
                representation_ok: ok,
                reciprocity_iso: invertible_intertwiner(&homs, ind.module.dim(), seed).is_some(),
            })
        })
    };
    let standard = if g.realization().is_some_and(|r| r.exact) {
        SuperModule::standard(g).map(|m| StandardProbe { dims: m.dims(), simple: is_simple(&m, seed).as_bool() })
    } else {
        Err(superq::Error::Precondition("no exact matrix realization".into()))
    };
    RepnSection { twist: st.take(twist), induced_trivial: st.take(induced), standard: st.take(standard) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superq::catalog::construct_str;
    use superq::exactla::NumberField;

    fn rep(s: &str) -> StructureReport {
        let g = construct_str(s, &NumberField::rationals()).unwrap();
        report(&g, Source::Spec(s.into()), Skip::default(), 0)
    }

    #[test]
    fn gl22_report() {
        let r = rep("gl(2,2)");
        assert!(r.ok, "{}", r.to_json());
        let s = r.structure.as_ref().unwrap();
        assert_eq!(s.center, (1, 0));
        let f = s.filtration.value().unwrap();
        assert_eq!(f.core.dims, (6, 8));
        assert_eq!(f.core.h2_restricted.value(), Some(&3));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn rigid_in_report() {
        let r = rep("osp(3,2)");
        assert!(r.dercoh.unwrap().rigid.value().unwrap().rigid);
    }

    #[test]
    fn cocycle_matrices_are_symmetric() {
        let r = rep("psl(2,2)");
        let h = r.dercoh.unwrap().h2_restricted.value().cloned().unwrap();
        assert_eq!(h.cocycles.len(), 3);
        for m in &h.cocycles {
            for i in 0..m.len() {
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
        }
    }

    #[test]
    fn skip_parsing() {
        let s = Skip::parse("rootsys, repn").unwrap();
        assert!(s.rootsys && s.repn && !s.dercoh);
        assert!(Skip::parse("roots").is_err());
    }
}
