use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use superq::catalog::{construct_over, d21_raw, Family, FamilySpec};
use superq::dercoh::{central_extension, derivations, h2_restricted, h2_trivial_dims, is_derivation};
use superq::exactla::{FieldElem, NumberField, Rational, Scalar, SparseVec};
use superq::liealg::{validate, SuperLieAlgebra, Subspace};
use superq::parallel::par_map;
use superq::repn::{
    cartan_module, coinduce, composition_factors, decompose_summands, highest_weight, induce, is_simple, kac_module_p,
    split_test, split_test_induced, twist_module, HomSpace, KacSign, Op, SplitKind, SuperModule,
};
use superq::rootsys::{default_gamma, format_weight, root_decomposition, triangular};
use superq::structure::{adjoint_loewy, canonical_filtration, derived, is_simple_algebra};

use crate::report::even_part;
use crate::{CliError, CliResult};

/// Modules up to this dimension get the direct split test.
const DIRECT_SPLIT_MAX: usize = 64;

pub const DEFAULT_BATTERY: &[&str] = &[
    "gl(2,1)",
    "gl(2,2)",
    "sl(2,2)",
    "psl(2,2)",
    "psl(3,3)",
    "osp(1,2)",
    "osp(3,2)",
    "q(2)",
    "q(3)",
    "psq(3)",
    "p(3)",
    "sp(4)",
    "hat-sp(4)",
    "D(2,1;a=1)",
    "D(2,1;a=2)",
    "D(2,1;a=-3)",
    "G(1,2)",
    "F(1,3)",
    "kd(sl2)",
    "hat-kd(sl2)",
    "tilde-kd(sl2)",
    "co(3,2)",
    "csp(2,2)",
    "a(2,1,1)",
];

pub const REP_BATTERY: &[&str] = &["gl(1,1)", "q(2)", "osp(1,2)", "p(3)"];

#[derive(Clone, Debug, Serialize)]
pub struct InstanceVerdict {
    pub instance: String,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSuite {
    pub check: String,
    pub description: String,
    pub seed: u64,
    pub instances: Vec<InstanceVerdict>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationSuite {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceVerdict> {
        self.instances.iter().filter(|v| !v.pass)
    }
}

struct Ctx {
    field: Arc<NumberField>,
    seed: u64,
}

type Body = fn(&Ctx, &str) -> superq::Result<(bool, Value)>;

pub struct Check {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    defaults: fn() -> Vec<String>,
    body: Body,
}

fn battery() -> Vec<String> {
    let mut v: Vec<String> = DEFAULT_BATTERY.iter().map(|s| s.to_string()).collect();
    v.push("!D(2,1;1,1,1)".into());
    v
}

fn battery_only() -> Vec<String> {
    DEFAULT_BATTERY.iter().map(|s| s.to_string()).collect()
}

fn reps() -> Vec<String> {
    REP_BATTERY.iter().map(|s| s.to_string()).collect()
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "jacobi",
        aliases: &[],
        description: "super-antisymmetry and super-Jacobi on all basis triples; `!SPEC` must be rejected",
        defaults: battery,
        body: check_jacobi,
    },
    Check {
        id: "derived",
        aliases: &[],
        description: "[g, g] equals the trace-zero matrix subalgebra (sl for gl, sq for q, str = 0 for p)",
        defaults: || vec!["q(3)".into(), "p(3)".into(), "gl(2,1)".into()],
        body: check_derived,
    },
    Check {
        id: "derivations",
        aliases: &[],
        description: "Der(g) basis satisfies Leibniz; Der = ad g + D(g)",
        defaults: battery_only,
        body: check_derivations,
    },
    Check {
        id: "cohomology",
        aliases: &["h2"],
        description: "restricted H^2: explicit basis agrees with forms minus center; simple g has H^2 = H^2_r, odd part 0",
        defaults: battery_only,
        body: check_cohomology,
    },
    Check {
        id: "extension",
        aliases: &[],
        description: "central extension by H^2_r representatives satisfies Jacobi and is reduced",
        defaults: battery_only,
        body: check_extension,
    },
    Check {
        id: "filtration",
        aliases: &[],
        description: "Z <= C <= g with R closed, R1 abelian, R0 reductive acting trivially on R1, Z(g')_0 = 0",
        defaults: battery_only,
        body: check_filtration,
    },
    Check {
        id: "loewy",
        aliases: &["filt"],
        description: "adjoint Loewy length at most 3",
        defaults: battery_only,
        body: check_loewy,
    },
    Check {
        id: "rootspace",
        aliases: &["roots"],
        description: "root spaces have dims (1|0), (1|1) or (0|n); h + sum g_alpha = g",
        defaults: battery_only,
        body: check_rootspace,
    },
    Check {
        id: "reciprocity",
        aliases: &[],
        description: "Ind(S) has dim 2^{dim g1} dim S and is isomorphic to Coind(S (x) T)",
        defaults: reps,
        body: check_reciprocity,
    },
    Check {
        id: "injective",
        aliases: &["projective"],
        description: "Ind(S) passes the projectivity split test, Coind(S) the injectivity test",
        defaults: reps,
        body: check_injective,
    },
    Check {
        id: "duality",
        aliases: &[],
        description: "summand dimensions of Ind(S) and Coind(S (x) T) agree",
        defaults: reps,
        body: check_duality,
    },
    Check {
        id: "highest-weight",
        aliases: &["hw"],
        description: "simple modules have a unique maximal weight with h-simple weight space dominating all weights",
        defaults: || ["gl(1,1)", "q(2)", "osp(1,2)", "p(3)", "gl(2,1)", "osp(3,2)"].iter().map(|s| s.to_string()).collect(),
        body: check_highest_weight,
    },
    Check {
        id: "cartan",
        aliases: &[],
        description: "C_lambda is a simple h-module; C ~ Pi C iff rank of omega_lambda is odd",
        defaults: || {
            ["q(2) @ 0,0", "q(2) @ 1,0", "q(2) @ 1,-1", "q(3) @ 1,0,0", "q(3) @ 1,-1,2", "q(3) @ 2,-2,0", "gl(2,1) @ 1,0,0"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        },
        body: check_cartan,
    },
    Check {
        id: "kac",
        aliases: &[],
        description: "p(n): K-(lambda) has a proper submodule; K+(lambda) simplicity against prod_{i<j}(a_i - a_j) != 0",
        defaults: || {
            ["0,0,0", "1,0,0", "1,1,0", "2,0,0", "0,0,-1", "2,1,0", "1,0,-1", "3,1,0"]
                .iter()
                .map(|s| format!("p(3) @ {s}"))
                .collect()
        },
        body: check_kac,
    },
];

pub fn find_check(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id || c.aliases.contains(&id))
}

/// Runs a check over its default instances, or over `instances` when given.
pub fn verify(id: &str, instances: Option<Vec<String>>, field: &Arc<NumberField>, seed: u64) -> CliResult<VerificationSuite> {
    let check = find_check(id).ok_or_else(|| CliError::UnknownCheck(id.to_string()))?;
    let list = instances.unwrap_or_else(check.defaults);
    let ctx = Ctx { field: field.clone(), seed };
    let instances = par_map(&list, |inst| {
        let (pass, witness) = match (check.body)(&ctx, inst) {
            Ok(r) => r,
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        InstanceVerdict { instance: inst.clone(), pass, witness }
    });
    let passed = instances.iter().filter(|v| v.pass).count();
    Ok(VerificationSuite {
        check: check.id.to_string(),
        description: check.description.to_string(),
        seed,
        failed: instances.len() - passed,
        passed,
        instances,
    })
}

fn build(ctx: &Ctx, spec: &str) -> superq::Result<SuperLieAlgebra> {
    construct_over(&FamilySpec::parse(spec)?, &ctx.field)
}

/// `"SPEC @ 1,-1"` into the spec and the integer weight.
fn split_weight(inst: &str) -> superq::Result<(&str, Option<Vec<i64>>)> {
    match inst.split_once('@') {
        None => Ok((inst.trim(), None)),
        Some((s, w)) => {
            let w = w
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| superq::Error::Parse(format!("bad weight entry {x:?}"))))
                .collect::<superq::Result<Vec<_>>>()?;
            Ok((s.trim(), Some(w)))
        }
    }
}

fn check_jacobi(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    if let Some(bad) = inst.strip_prefix('!') {
        let rejected = match FamilySpec::parse(bad) {
            Ok(s) => construct_over(&s, &ctx.field).is_err(),
            Err(_) => true,
        };
        let mut witness = json!({ "rejected": rejected });
        if let Some(t) = raw_triple(bad) {
            let g = d21_raw(&t[0], &t[1], &t[2], &ctx.field)?;
            let v = validate(&g);
            witness["jacobi_violations"] = json!(v.jacobi.len());
            witness["example"] = json!(v.jacobi.first());
        }
        return Ok((rejected, witness));
    }
    let g = build(ctx, inst)?;
    let v = validate(&g);
    let w = json!({
        "dims": g.dims(),
        "parity": v.parity.len(),
        "antisymmetry": v.antisymmetry.len(),
        "jacobi": v.jacobi.iter().take(10).collect::<Vec<_>>(),
    });
    Ok((v.is_empty(), w))
}

/// `D(2,1;x,y,z)` into the raw triple.
fn raw_triple(s: &str) -> Option<[Scalar; 3]> {
    let inner = s.trim().strip_prefix("D(2,1;")?.strip_suffix(')')?;
    let parts: Vec<Rational> = inner.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    (parts.len() == 3).then(|| [Scalar::Rat(parts[0].clone()), Scalar::Rat(parts[1].clone()), Scalar::Rat(parts[2].clone())])
}

fn flatten_matrices(g: &SuperLieAlgebra, vs: &[SparseVec]) -> superq::Result<(usize, Vec<SparseVec>)> {
    let r = g.realization().filter(|r| r.exact).ok_or_else(|| superq::Error::Precondition("no exact matrix realization".into()))?;
    let n = r.m + r.n;
    let out = vs
        .iter()
        .map(|v| {
            let m = r.element(v);
            SparseVec::from_pairs((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter_map(|(i, j)| {
                let x = m.get(i, j);
                (!x.is_zero()).then(|| (i * n + j, x.clone()))
            }))
        })
        .collect();
    Ok((n * n, out))
}

fn check_derived(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let spec = FamilySpec::parse(inst)?;
    let g = construct_over(&spec, &ctx.field)?;
    let d = derived(&g);
    let (n2, dm) = flatten_matrices(&g, d.basis())?;
    let (target, name) = match spec.family {
        Family::Gl => {
            let s = construct_over(&FamilySpec::new(Family::Sl, &spec.params), &ctx.field)?;
            let all: Vec<SparseVec> = (0..s.dim()).map(SparseVec::unit).collect();
            (flatten_matrices(&s, &all)?.1, "sl")
        }
        Family::Q => {
            let s = construct_over(&FamilySpec::new(Family::Sq, &spec.params), &ctx.field)?;
            let all: Vec<SparseVec> = (0..s.dim()).map(SparseVec::unit).collect();
            (flatten_matrices(&s, &all)?.1, "sq")
        }
        Family::P => {
            let r = g.realization().expect("p(n) is realized");
            let functional: SparseVec =
                SparseVec::from_pairs((0..g.dim()).map(|i| (i, r.supertrace(&r.mats[i]))).filter(|(_, x)| !x.is_zero()));
            let ker = Subspace::span(g.dim(), &[functional]).annihilator();
            (flatten_matrices(&g, ker.basis())?.1, "p ∩ sl")
        }
        _ => return Err(superq::Error::Unsupported(format!("no reference identity for {}", spec))),
    };
    let a = Subspace::span(n2, &dm);
    let b = Subspace::span(n2, &target);
    let equal = a == b;
    Ok((equal, json!({ "derived_dims": d.dims(g.space()), "reference": name, "reference_dim": b.dim(), "equal": equal })))
}

fn check_derivations(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let d = derivations(&g)?;
    let leibniz = d.basis.iter().enumerate().all(|(k, op)| is_derivation(&g, op, d.algebra.parity(k)));
    let dd = &d.dims;
    let sum = dd.der.0 == dd.inner.0 + dd.outer.0 && dd.der.1 == dd.inner.1 + dd.outer.1;
    Ok((leibniz && sum, json!({ "der": dd.der, "inner": dd.inner, "outer": dd.outer, "leibniz": leibniz })))
}

fn check_cohomology(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let (h, _) = h2_restricted(&g)?;
    let simple = is_simple_algebra(&g, ctx.seed).as_bool();
    let h2 = h2_trivial_dims(&g);
    let agree = h.dim == h.formula_dim;
    let simple_ok = simple != Some(true) || h2 == (h.dim, 0);
    Ok((
        agree && simple_ok,
        json!({ "h2_restricted": h.dim, "formula": h.formula_dim, "invariant_forms": h.invariant_forms,
                "center_part": h.center_part, "h2": h2, "simple": simple }),
    ))
}

fn check_extension(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let (h, cs) = h2_restricted(&g)?;
    if h.dim == 0 {
        return Ok((true, json!({ "h2_restricted": 0 })));
    }
    let ext = central_extension(&g, &cs.representative_cocycles())?;
    let (e, o) = g.dims();
    let jacobi = validate(&ext.algebra).is_empty();
    let dims_ok = ext.algebra.dims() == (e + h.dim, o);
    Ok((jacobi && dims_ok && ext.reduced, json!({ "dims": ext.algebra.dims(), "jacobi": jacobi, "reduced": ext.reduced })))
}

fn check_filtration(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let f = canonical_filtration(&g, ctx.seed)?;
    let c = &f.checks;
    let ok = c.r_closed && c.r1_abelian && c.r0_reductive && c.r1_trivial_action && c.quotient_center_even_zero;
    Ok((ok, json!({ "dims": f.dims, "checks": f.checks, "ideals": f.ideals })))
}

fn check_loewy(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let l = adjoint_loewy(&g, ctx.seed)?;
    Ok((l.length <= 3, serde_json::to_value(&l).expect("serializes")))
}

fn check_rootspace(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let rd = root_decomposition(&g)?;
    let total = rd.roots.iter().fold(rd.cartan.h_dims, |(a, b), r| (a + r.dims.0, b + r.dims.1));
    let bookkeeping = total == g.dims();
    let bad: Vec<Value> = rd
        .profile_violations
        .iter()
        .map(|w| json!({ "root": format_weight(w), "dims": rd.root(w).map(|r| r.dims) }))
        .collect();
    let mut profiles: Vec<(usize, usize)> = rd.roots.iter().map(|r| r.dims).collect();
    profiles.sort();
    profiles.dedup();
    Ok((
        bad.is_empty() && bookkeeping,
        json!({ "h": rd.cartan.h_dims, "roots": rd.roots.len(), "profiles": profiles, "violations": bad, "bookkeeping": bookkeeping }),
    ))
}

/// The `g0`-simples used as inducing modules: the trivial module and the
/// composition factors of the standard module restricted to `g0`.
fn g0_simples(g: &SuperLieAlgebra, seed: u64) -> superq::Result<Vec<(String, SuperModule)>> {
    let (g0s, g0) = even_part(g);
    let mut out = vec![("trivial".to_string(), SuperModule::trivial(&g0))];
    if g.realization().is_some_and(|r| r.exact) {
        let v = SuperModule::standard(g)?.restrict(&g0, g0s.basis())?;
        for f in composition_factors(&v, seed)? {
            if out.iter().any(|(_, m)| superq::repn::is_isomorphic(m, &f, seed)) {
                continue;
            }
            out.push((format!("V{}", out.len()), f));
            if out.len() == 3 {
                break;
            }
        }
    }
    Ok(out)
}

/// An invertible element of a space of maps between spaces of equal dimension.
pub fn invertible_intertwiner(homs: &HomSpace, n: usize, seed: u64) -> Option<Op> {
    if homs.rows != n {
        return None;
    }
    let full = |op: &Op| op.len() == n && Subspace::span(n, op).dim() == n;
    if let Some(op) = homs.basis.iter().find(|op| full(op)) {
        return Some(op.clone());
    }
    for t in 0..4u64 {
        let c: Vec<Scalar> = (0..homs.dim()).map(|i| Scalar::int((((i as u64 + 1) * (seed + t + 3)) % 7) as i64 - 3)).collect();
        let op = homs.combine(&c);
        if full(&op) {
            return Some(op);
        }
    }
    None
}

fn check_reciprocity(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let (g0s, _) = even_part(&g);
    let t = twist_module(&g, &g0s)?;
    let odd = g.odd_range().len();
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, s) in g0_simples(&g, ctx.seed)? {
        let ind = induce(&g, &g0s, &s)?;
        let co = coinduce(&g, &g0s, &s.tensor(&t.module)?)?;
        let dim_ok = ind.module.dim() == (1usize << odd) * s.dim() && co.module.dim() == ind.module.dim();
        let homs = ind.homs_to(&co.module)?;
        let iso = invertible_intertwiner(&homs, ind.module.dim(), ctx.seed).is_some();
        pass &= dim_ok && iso;
        rows.push(json!({ "module": name, "dim": s.dims(), "ind_dim": ind.module.dim(), "hom_dim": homs.dim(), "invertible": iso }));
    }
    Ok((pass, json!({ "twist_parity": t.module.parity(0), "twist_nontrivial": t.nontrivial, "modules": rows })))
}

fn split(m: &superq::repn::Induced, kind: SplitKind) -> superq::Result<superq::repn::SplitOutcome> {
    if m.module.dim() <= DIRECT_SPLIT_MAX {
        split_test(&m.module, kind)
    } else {
        split_test_induced(m, kind)
    }
}

fn check_injective(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let (g0s, _) = even_part(&g);
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, s) in g0_simples(&g, ctx.seed)? {
        let ind = induce(&g, &g0s, &s)?;
        let co = coinduce(&g, &g0s, &s)?;
        let p = split(&ind, SplitKind::Projective)?;
        let i = split(&co, SplitKind::Injective)?;
        pass &= p.splits && i.splits;
        rows.push(json!({ "module": name, "projective": p, "injective": i }));
    }
    Ok((pass, json!({ "modules": rows })))
}

fn summand_dims(m: &SuperModule, seed: u64) -> superq::Result<Vec<usize>> {
    let mut d: Vec<usize> = decompose_summands(m, seed)?.iter().map(|s| s.dim()).collect();
    d.sort_unstable();
    Ok(d)
}

fn check_duality(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let (g0s, _) = even_part(&g);
    let t = twist_module(&g, &g0s)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, s) in g0_simples(&g, ctx.seed)? {
        let a = summand_dims(&induce(&g, &g0s, &s)?.module, ctx.seed)?;
        let b = summand_dims(&coinduce(&g, &g0s, &s.tensor(&t.module)?)?.module, ctx.seed)?;
        pass &= a == b;
        rows.push(json!({ "module": name, "ind": a, "coind": b }));
    }
    Ok((pass, json!({ "modules": rows })))
}

/// Highest-weight data for a simple module, or `None` if it is not simple.
fn hw_record(g: &SuperLieAlgebra, m: &SuperModule, name: &str, seed: u64) -> superq::Result<(bool, Value)> {
    match is_simple(m, seed).as_bool() {
        Some(true) => {}
        other => return Ok((true, json!({ "module": name, "simple": other }))),
    }
    let rd = root_decomposition(g)?;
    let gamma = default_gamma(&rd, seed)?;
    let tri = triangular(g, &rd, &gamma)?;
    let hw = highest_weight(m, &rd, &tri, seed)?;
    let ok = hw.unique && hw.killed_by_n_plus && hw.dominates_all && hw.top_h_simple == Some(true);
    Ok((ok, json!({ "module": name, "dims": m.dims(), "simple": true, "highest_weight": hw })))
}

fn check_highest_weight(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let g = build(ctx, inst)?;
    let mut mods = vec![("trivial".to_string(), SuperModule::trivial(&g))];
    if g.realization().is_some_and(|r| r.exact) {
        let v = SuperModule::standard(&g)?;
        mods.push(("dual standard".into(), v.dual()));
        mods.push(("standard".into(), v));
    }
    if is_simple_algebra(&g, ctx.seed).as_bool() == Some(true) {
        mods.push(("adjoint".into(), SuperModule::adjoint(&g)));
    }
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, m) in &mods {
        let (ok, w) = hw_record(&g, m, name, ctx.seed)?;
        pass &= ok;
        rows.push(w);
    }
    Ok((pass, json!({ "modules": rows })))
}

fn check_cartan(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let (spec, w) = split_weight(inst)?;
    let g = build(ctx, spec)?;
    let rank = g.cartan().map_or(0, |h| h.len());
    let w = w.unwrap_or_else(|| (0..rank as i64).map(|i| if i % 2 == 0 { i / 2 + 1 } else { -(i / 2 + 1) }).collect());
    let lambda: Vec<Scalar> = w.iter().map(|&x| Scalar::int(x)).collect();
    let c = cartan_module(&g, &lambda, ctx.seed)?;
    let ok = c.simple == Some(true) && c.pi_iso == c.predicted_pi_iso;
    Ok((
        ok,
        json!({ "lambda": w, "h1": c.h1_dim, "u1": c.u1_dim, "form_rank": c.form_rank, "dims": c.module.dims(),
                "simple": c.simple, "pi_iso": c.pi_iso, "predicted_pi_iso": c.predicted_pi_iso }),
    ))
}

fn check_kac(ctx: &Ctx, inst: &str) -> superq::Result<(bool, Value)> {
    let (spec, w) = split_weight(inst)?;
    let fs = FamilySpec::parse(spec)?;
    if fs.family != Family::P {
        return Err(superq::Error::Unsupported("Kac modules are built for p(n) only".into()));
    }
    let n = fs.params[0];
    let lam = w.unwrap_or_else(|| (0..n as i64).rev().collect());
    let minus = kac_module_p(n, &lam, KacSign::Minus, &ctx.field, ctx.seed)?;
    let witness_ok = match &minus.submodule {
        Some(s) => !s.is_zero() && s.dim() < minus.module.dim() && minus.module.submodule(s).is_ok(),
        None => false,
    };
    let plus = kac_module_p(n, &lam, KacSign::Plus, &ctx.field, ctx.seed)?;
    let mut hw = Value::Null;
    let mut hw_ok = true;
    if plus.simple == Some(true) {
        let g = superq::catalog::p(n, &ctx.field)?;
        let (ok, v) = hw_record(&g, &plus.module, "K+", ctx.seed)?;
        hw_ok = ok;
        hw = v;
    }
    let agrees = plus.simple == Some(plus.product_criterion);
    let pass = minus.simple == Some(false) && witness_ok && plus.simple.is_some() && hw_ok;
    Ok((
        pass,
        json!({
            "lambda": lam,
            "minus": { "dims": minus.module.dims(), "simple": minus.simple, "exterior": minus.exterior_piece,
                       "submodule_dim": minus.submodule.as_ref().map(|s| s.dim()), "witness_verified": witness_ok },
            "plus": { "dims": plus.module.dims(), "simple": plus.simple, "exterior": plus.exterior_piece },
            "product_i_lt_j": plus.product_criterion,
            "agrees_with_product": agrees,
            "plus_highest_weight": hw,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, inst: &[&str]) -> VerificationSuite {
        verify(id, Some(inst.iter().map(|s| s.to_string()).collect()), &NumberField::rationals(), 0).unwrap()
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(matches!(verify("nope", None, &NumberField::rationals(), 0), Err(CliError::UnknownCheck(_))));
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(find_check("filt").unwrap().id, "loewy");
    }

    #[test]
    fn bad_triple_is_rejected_and_violates_jacobi() {
        let s = run("jacobi", &["!D(2,1;1,1,1)", "osp(1,2)"]);
        assert!(s.all_pass());
        assert!(s.instances[0].witness["jacobi_violations"].as_u64().unwrap() > 0);
    }

    #[test]
    fn derived_identities() {
        assert!(run("derived", &["q(2)", "p(2)", "gl(1,1)"]).all_pass());
    }

    #[test]
    fn small_rep_checks() {
        for id in ["reciprocity", "injective", "duality", "highest-weight"] {
            let s = run(id, &["gl(1,1)", "osp(1,2)"]);
            assert!(s.all_pass(), "{id}: {:?}", s.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn weight_syntax() {
        assert_eq!(split_weight("q(2) @ 1,-1").unwrap(), ("q(2)", Some(vec![1, -1])));
        assert_eq!(split_weight("q(2)").unwrap(), ("q(2)", None));
        assert!(split_weight("q(2) @ x").is_err());
    }
}
