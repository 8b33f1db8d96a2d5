//! One line per acceptance criterion. Runs as a plain binary so the lines are
//! never swallowed by output capture.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use superq::catalog::{construct_str, d21_raw, FamilySpec};
use superq::dercoh::{central_extension, derivations, h2_restricted};
use superq::exactla::{Echelon, NumberField, Scalar, SparseVec};
use superq::liealg::{validate, SuperLieAlgebra, Subspace};
use superq::structure::{canonical_filtration, center};
use superq_cli::verify::{verify, VerificationSuite, DEFAULT_BATTERY, REP_BATTERY};

/// Criteria whose failure is established and pinned: the rootspace profile is
/// violated by `co(3,2)`, where the `so(3)` root vector and the weight space
/// `E_alpha (x) V` share the root `alpha`, giving `(1|2)`.
const KNOWN_FAILING: &[usize] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a known failure: it fails exactly as analyzed.
    pinned: bool,
}

fn q() -> std::sync::Arc<NumberField> {
    NumberField::rationals()
}

fn alg(s: &str) -> SuperLieAlgebra {
    construct_str(s, &q()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn suite(id: &str, inst: Option<&[&str]>) -> VerificationSuite {
    verify(id, inst.map(|v| v.iter().map(|s| s.to_string()).collect()), &q(), 0).unwrap()
}

fn failures(s: &VerificationSuite) -> String {
    s.failures().map(|v| format!("{} {}", v.instance, v.witness)).collect::<Vec<_>>().join("; ")
}

fn c1() -> Outcome {
    let s = suite("jacobi", None);
    let raw = d21_raw(&Scalar::int(1), &Scalar::int(1), &Scalar::int(1), &q()).unwrap();
    let violated = !validate(&raw).jacobi.is_empty();
    let rejected = FamilySpec::parse("D(2,1;1,1,1)").is_err() || construct_str("D(2,1;1,1,1)", &q()).is_err();
    Outcome {
        pass: s.all_pass() && violated && rejected,
        pinned: false, detail: format!("{} algebras valid, bad triple rejected: {rejected}, raw bracket violates Jacobi: {violated} {}", s.passed, failures(&s)),
    }
}

/// Graded dimensions counted from the definitions.
fn counted(s: &str) -> (usize, usize) {
    let sl2 = 3;
    match s {
        "gl(2,1)" => (2 * 2 + 1, 2 * 2 * 1),
        "osp(1,2)" => (0 + 1 * 3, 1 * 2),
        "p(3)" => (3 * 3, 3 * 4 / 2 + 3 * 2 / 2),
        "sp(3)" => (3 * 3 - 1, 3 * 3),
        "D(2,1;a=2)" => (3 * sl2, 2 * 2 * 2),
        "G(1,2)" => (14 + sl2, 7 * 2),
        "F(1,3)" => (7 * 6 / 2 + sl2, 8 * 2),
        "kd(sl2)" => (sl2, sl2),
        _ => unreachable!(),
    }
}

fn c2() -> Outcome {
    let names = ["gl(2,1)", "osp(1,2)", "p(3)", "sp(3)", "D(2,1;a=2)", "G(1,2)", "F(1,3)", "kd(sl2)"];
    let bad: Vec<String> = names
        .iter()
        .filter_map(|s| {
            let d = alg(s).dims();
            (d != counted(s)).then(|| format!("{s} {d:?} != {:?}", counted(s)))
        })
        .collect();
    Outcome { pass: bad.is_empty(), pinned: false, detail: format!("{} dimensions checked {}", names.len(), bad.join("; ")) }
}

fn c3() -> Outcome {
    let s = suite("derived", Some(&["q(3)", "p(3)"]));
    let dims: Vec<String> = s.instances.iter().map(|v| format!("{} {}", v.instance, v.witness["derived_dims"])).collect();
    Outcome { pass: s.all_pass(), pinned: false, detail: format!("span equality: {} {}", dims.join(", "), failures(&s)) }
}

fn c4() -> Outcome {
    let want = [("psl(3,3)", Some((17, 18)), (1, 0)), ("psq(3)", None, (0, 1)), ("psl(2,2)", None, (3, 0)), ("kd(sl2)", None, (1, 1))];
    let mut bad = Vec::new();
    for (s, der, outer) in want {
        let d = derivations(&alg(s)).unwrap();
        if der.is_some_and(|x| x != d.dims.der) || d.dims.outer != outer {
            bad.push(format!("{s}: {:?}", d.dims));
        }
    }
    let leib = suite("derivations", Some(&["psl(3,3)", "psq(3)", "psl(2,2)", "kd(sl2)"]));
    Outcome { pass: bad.is_empty() && leib.all_pass(), pinned: false, detail: format!("Der/D dims and Leibniz {} {}", bad.join("; "), failures(&leib)) }
}

fn c5() -> Outcome {
    let want = [
        ("psl(2,2)", 3),
        ("psl(3,3)", 1),
        ("psq(3)", 1),
        ("sp(4)", 1),
        ("kd(sl2)", 1),
        ("osp(3,2)", 0),
        ("sl(2,1)", 0),
        ("D(2,1;a=1)", 0),
        ("G(1,2)", 0),
        ("F(1,3)", 0),
    ];
    let mut bad = Vec::new();
    for (s, d) in want {
        match h2_restricted(&alg(s)) {
            Ok((h, _)) if h.dim == d => {}
            Ok((h, _)) => bad.push(format!("{s}: {} != {d}", h.dim)),
            Err(e) => bad.push(format!("{s}: {e}")),
        }
    }
    let mut all: Vec<&str> = DEFAULT_BATTERY.to_vec();
    all.push("sl(2,1)");
    let s = suite("cohomology", Some(&all));
    Outcome {
        pass: bad.is_empty() && s.all_pass(),
        pinned: false, detail: format!("table of {} values; formula = explicit and H^2 = H^2_r on {} algebras {} {}", want.len(), s.passed, bad.join("; "), failures(&s)),
    }
}

/// `sl(2,2) -> C(gl(2,2))` through the matrix realizations; checks that it is
/// a surjective bracket map whose kernel is the center of `sl(2,2)`.
fn core_is_psl22(g: &SuperLieAlgebra, f: &superq::structure::CanonicalFiltration) -> Result<(), String> {
    let s = alg("sl(2,2)");
    let (rg, rs) = (g.realization().unwrap(), s.realization().unwrap());
    let n = rg.m + rg.n;
    let flat = |m: &superq::exactla::Matrix| {
        SparseVec::from_pairs((0..n * n).map(|k| (k, m.get(k / n, k % n).clone())).filter(|(_, x)| !superq::exactla::FieldElem::is_zero(x)))
    };
    let mut ech = Echelon::tracked(n * n);
    for m in &rg.mats {
        ech.insert(&flat(m));
    }
    let mut phi = Vec::new();
    for m in &rs.mats {
        let x = ech.express(&flat(m)).ok_or("sl(2,2) matrix outside gl(2,2)")?;
        let y = f.quotient.project(&x);
        if !f.c_prime.contains(&y) {
            return Err("image leaves C".into());
        }
        phi.push(y);
    }
    let gp = &f.quotient.algebra;
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let lhs: SparseVec = s.bracket_basis(i, j).entries().iter().fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(c, &phi[*k]));
            if lhs != gp.bracket(&phi[i], &phi[j]) {
                return Err(format!("not a bracket map on ({i},{j})"));
            }
        }
    }
    let image = Subspace::span(gp.dim(), &phi);
    if image != f.c_prime {
        return Err("not onto C".into());
    }
    let rows: Vec<SparseVec> = (0..gp.dim())
        .map(|r| SparseVec::from_pairs(phi.iter().enumerate().map(|(k, v)| (k, v.get(r))).filter(|(_, x)| !superq::exactla::FieldElem::is_zero(x))))
        .collect();
    let kernel = Subspace::span(s.dim(), &superq::exactla::sparse::sparse_kernel(&rows, s.dim()));
    if kernel != center(&s) || kernel.dim() != 1 {
        return Err(format!("kernel of dim {} is not the center", kernel.dim()));
    }
    if alg("psl(2,2)").dims() != f.dims.c_prime {
        return Err("dims differ from psl(2,2)".into());
    }
    Ok(())
}

fn c6() -> Outcome {
    let p = alg("psl(3,3)");
    let (_, cs) = h2_restricted(&p).unwrap();
    let ext = central_extension(&p, &cs.representative_cocycles()).unwrap();
    let ext_ok = ext.algebra.dims() == (17, 18) && validate(&ext.algebra).is_empty();
    let g = alg("gl(2,2)");
    let f = canonical_filtration(&g, 0).unwrap();
    let dims_ok = f.dims.z == (1, 0) && f.dims.r == (1, 0) && f.checks.r_closed;
    let iso = core_is_psl22(&g, &f);
    Outcome {
        pass: ext_ok && dims_ok && iso.is_ok(),
        pinned: false, detail: format!(
            "extension {:?} Jacobi {}; gl(2,2): Z {:?} C' {:?} R {:?} closed {}; C ~ psl(2,2): {}",
            ext.algebra.dims(),
            ext_ok,
            f.dims.z,
            f.dims.c_prime,
            f.dims.r,
            f.checks.r_closed,
            iso.map(|_| "explicit map".to_string()).unwrap_or_else(|e| e)
        ),
    }
}

fn c7() -> Outcome {
    let s = suite("loewy", None);
    let mut pattern = [0usize; 4];
    for v in &s.instances {
        if let Some(l) = v.witness["length"].as_u64() {
            pattern[(l as usize).min(3)] += 1;
        }
    }
    Outcome { pass: s.all_pass(), pinned: false, detail: format!("lengths 1/2/3: {}/{}/{} {}", pattern[1], pattern[2], pattern[3], failures(&s)) }
}

fn c8() -> Outcome {
    let s = suite("rootspace", None);
    let book = s.instances.iter().all(|v| v.witness["bookkeeping"] == true);
    let only_co32 = s.failures().map(|v| v.instance.as_str()).collect::<Vec<_>>() == ["co(3,2)"]
        && s.failures().all(|v| v.witness["violations"].as_array().is_some_and(|a| a.len() == 2 && a.iter().all(|x| x["dims"] == serde_json::json!([1, 2]))));
    Outcome {
        pass: s.all_pass(),
        pinned: only_co32 && book,
        detail: format!("{} of {} profiles in (1|0),(1|1),(0|n), bookkeeping exact: {book}; violations: {}", s.passed, s.instances.len(), failures(&s)),
    }
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ["reciprocity", "injective", "duality"] {
        let s = suite(id, None);
        pass &= s.all_pass();
        parts.push(format!("{id} {}/{} {}", s.passed, s.instances.len(), failures(&s)));
    }
    Outcome { pass, pinned: false, detail: format!("{} over {}", parts.join(", "), REP_BATTERY.join(" ")) }
}

fn c10() -> Outcome {
    let hw = suite("highest-weight", None);
    let c = suite("cartan", None);
    let simple: usize = hw
        .instances
        .iter()
        .map(|v| v.witness["modules"].as_array().map_or(0, |a| a.iter().filter(|m| m["simple"] == true).count()))
        .sum();
    Outcome {
        pass: hw.all_pass() && c.all_pass(),
        pinned: false, detail: format!("{simple} simple modules with unique h-simple top; {} Cartan modules simple with Pi criterion {} {}", c.passed, failures(&hw), failures(&c)),
    }
}

fn c11() -> Outcome {
    let s = suite("kac", None);
    let disagree: Vec<String> = s
        .instances
        .iter()
        .filter(|v| v.witness["agrees_with_product"] == false)
        .map(|v| format!("{} (K+ simple {}, product {})", v.instance, v.witness["plus"]["simple"], v.witness["product_i_lt_j"]))
        .collect();
    let simple_plus = s.instances.iter().filter(|v| v.witness["plus"]["simple"] == true).count();
    Outcome {
        pass: s.all_pass(),
        pinned: false, detail: format!(
            "K- reducible with verified submodule for {} weights; K+ simple for {simple_plus}; product over i<j disagrees on: {} {}",
            s.passed,
            if disagree.is_empty() { "none".to_string() } else { disagree.join(", ") },
            failures(&s)
        ),
    }
}

fn c12() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_superq");
    let run = || Command::new(bin).args(["report", "gl(2,1)", "--seed", "3"]).env_remove("SUPERQ_FIELD").output().unwrap();
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    Outcome { pass: same && a.status.success(), pinned: false, detail: format!("{} bytes, identical: {same}", a.stdout.len()) }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("construction soundness", c1, 10),
        ("dimension table", c2, 1),
        ("derived subalgebras", c3, 5),
        ("derivations", c4, 60),
        ("cohomology", c5, 120),
        ("extension and filtration", c6, 60),
        ("Loewy bound", c7, 120),
        ("root profiles", c8, 30),
        ("induction suite", c9, 300),
        ("highest weights", c10, 60),
        ("Kac modules", c11, 300),
        ("determinism", c12, 5),
    ];
    let mut out = std::io::stdout().lock();
    let mut unexpected = Vec::new();
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let n = k + 1;
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        let in_time = el <= Duration::from_secs(*budget);
        let pass = o.pass && in_time;
        writeln!(
            out,
            "criterion {n:>2} {} {name} ({:.2}s of {budget}s) {}",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            o.detail.trim_end()
        )
        .unwrap();
        let ok = if KNOWN_FAILING.contains(&n) { !o.pass && o.pinned && in_time } else { pass };
        if !ok {
            unexpected.push(n);
        }
    }
    if !KNOWN_FAILING.is_empty() {
        writeln!(out, "known failing: {KNOWN_FAILING:?}, co(3,2) has root spaces of dims (1|2)").unwrap();
    }
    if !unexpected.is_empty() {
        writeln!(out, "unexpected outcome for criteria {unexpected:?}").unwrap();
        std::process::exit(1);
    }
}
