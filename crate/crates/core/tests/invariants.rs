use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

use superq::catalog::construct_str;
use superq::dercoh::{central_extension, derivations, h2_restricted, is_cocycle, is_derivation, Cochains, Cocycle};
use superq::exactla::{FieldElem, Matrix, NumberField, Rational, Scalar, SparseVec};
use superq::liealg::{algebra_from_json, algebra_to_json, ksign, subalgebra, validate, Subspace, SuperLieAlgebra};
use superq::repn::{apply, coinduce, induce, SuperModule};

const SMALL: &[&str] = &["gl(1,1)", "sl(2,1)", "osp(1,2)", "q(2)", "p(2)", "psl(2,2)", "osp(3,2)", "kd(sl2)"];

fn q() -> Arc<NumberField> {
    NumberField::rationals()
}

fn small() -> &'static [SuperLieAlgebra] {
    static ALGS: OnceLock<Vec<SuperLieAlgebra>> = OnceLock::new();
    ALGS.get_or_init(|| SMALL.iter().map(|s| construct_str(s, &q()).unwrap()).collect())
}

/// A homogeneous element with small integer coefficients.
fn element(g: &SuperLieAlgebra, p: u8, coeffs: &[i64]) -> SparseVec {
    let range = if p == 0 { g.even_range() } else { g.odd_range() };
    SparseVec::from_pairs(range.zip(coeffs.iter().cycle()).map(|(i, &c)| (i, Scalar::int(c))))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..12)
}

fn int_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| Matrix::from_ints(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_is_annihilated(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), m.ncols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..5).prop_flat_map(|n| (int_matrix(n, n), int_matrix(n, n)))) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant().mul(&b.determinant()));
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.mul(&inv), Matrix::identity(a.nrows())),
            None => prop_assert!(a.determinant().is_zero()),
        }
    }

    #[test]
    fn cubic_field_arithmetic(xs in prop::collection::vec(-5i64..=5, 9)) {
        let f = NumberField::from_coeffs(&[Rational::from_int(-2), Rational::from_int(0), Rational::from_int(0), Rational::from_int(1)]).unwrap();
        let el = |k: usize| Scalar::from_coeffs(&f, xs[3 * k..3 * k + 3].iter().map(|&x| Rational::from_int(x)).collect());
        let (a, b, c) = (el(0), el(1), el(2));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
            prop_assert_eq!(a.mul(&b).norm(&f), &a.norm(&f) * &b.norm(&f));
        }
    }

    #[test]
    fn super_jacobi_and_antisymmetry(k in 0..SMALL.len(), ps in prop::collection::vec(0u8..2, 3), cx in coeffs(), cy in coeffs(), cz in coeffs()) {
        let g = &small()[k];
        let (x, y, z) = (element(g, ps[0], &cx), element(g, ps[1], &cy), element(g, ps[2], &cz));
        let s = Scalar::int(ksign(ps[0], ps[1]));
        prop_assert_eq!(g.bracket(&x, &y), g.bracket(&y, &x).scale(&s).neg());
        let lhs = g.bracket(&x, &g.bracket(&y, &z));
        let rhs = g.bracket(&g.bracket(&x, &y), &z).add(&g.bracket(&y, &g.bracket(&x, &z)).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip(k in 0..SMALL.len()) {
        let g = &small()[k];
        let h = algebra_from_json(&algebra_to_json(g)).unwrap();
        prop_assert_eq!(h.dims(), g.dims());
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                prop_assert_eq!(h.bracket_basis(i, j), g.bracket_basis(i, j));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivation_combinations_satisfy_leibniz(k in 0..SMALL.len(), p in 0u8..2, cs in coeffs()) {
        let g = &small()[k];
        let d = derivations(g).unwrap();
        let (e, o) = d.dims.der;
        let idx: Vec<usize> = if p == 0 { (0..e).collect() } else { (e..e + o).collect() };
        prop_assume!(!idx.is_empty());
        let n = g.dim();
        let op: Vec<SparseVec> = (0..n)
            .map(|col| idx.iter().zip(cs.iter().cycle()).fold(SparseVec::new(), |acc, (&b, &c)| acc.add_scaled(&Scalar::int(c), &d.basis[b][col])))
            .collect();
        prop_assert!(is_derivation(g, &op, p));
        // Independent check on basis triples.
        for i in 0..n {
            for j in 0..n {
                let lhs = apply(&op, g.bracket_basis(i, j));
                let sign = Scalar::int(ksign(p, g.parity(i)));
                let rhs = g.bracket(&op[i], &SparseVec::unit(j)).add(&g.bracket(&SparseVec::unit(i), &op[j]).scale(&sign));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cocycle_test_matches_the_identity(k in 0..SMALL.len(), cs in coeffs(), perturb in prop::option::of((0usize..64, 1i64..3))) {
        let g = &small()[k];
        let (_, space) = h2_restricted(g).unwrap();
        let cochains = Cochains::new(g.space(), 0, |_, _| true);
        let mut x = SparseVec::new();
        for (v, &c) in space.cocycles.iter().zip(cs.iter().cycle()) {
            // cocycles live on the weight-0 cochains; move them into the full space
            let full: SparseVec = SparseVec::from_pairs(v.entries().iter().map(|(k, c)| {
                let (i, j) = space.cochains.pairs[*k];
                (cochains.coord(i, j).unwrap().0, c.clone())
            }));
            x = x.add_scaled(&Scalar::int(c), &full);
        }
        if let Some((at, c)) = perturb {
            x = x.add(&SparseVec::from_pairs([(at % cochains.dim().max(1), Scalar::int(c))]));
        }
        let n = g.dim();
        let u = SparseVec::unit;
        let mut holds = true;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let a = cochains.eval(&x, g.bracket_basis(i, j), &u(l));
                    let b = cochains.eval(&x, &u(i), g.bracket_basis(j, l));
                    let c = cochains.eval(&x, &u(j), g.bracket_basis(i, l)).mul(&Scalar::int(ksign(g.parity(i), g.parity(j))));
                    holds &= a == b.sub(&c);
                }
            }
        }
        prop_assert_eq!(is_cocycle(g, &cochains, &x), holds);
        if perturb.is_none() {
            prop_assert!(holds);
        }
        let ext = central_extension(g, &[Cocycle { cochains, coords: x }]);
        prop_assert_eq!(ext.is_ok(), holds);
        if let Ok(e) = ext {
            prop_assert!(validate(&e.algebra).is_empty());
        }
    }

    #[test]
    fn induction_from_the_even_part(lam in prop::collection::vec(-4i64..=4, 2), parity in 0u8..2) {
        let g = &small()[0];
        let even = Subspace::span(g.dim(), &g.even_range().map(SparseVec::unit).collect::<Vec<_>>());
        let g0 = subalgebra(g, &even, "g0");
        let m0 = SuperModule::one_dim(&g0, &lam.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>(), parity).unwrap();
        for ind in [induce(g, &even, &m0).unwrap(), coinduce(g, &even, &m0).unwrap()] {
            prop_assert_eq!(ind.module.dim(), ind.expected_dim());
            prop_assert_eq!(ind.module.dims(), (2, 2));
            prop_assert!(ind.module.check().is_empty());
        }
    }

    #[test]
    fn module_constructions_stay_modules(k in 0..SMALL.len()) {
        let g = &small()[k];
        let ad = SuperModule::adjoint(g);
        prop_assert!(ad.check().is_empty());
        // M** is identified with M through the parity operator.
        let dd = ad.dual().dual();
        prop_assert_eq!(dd.dims(), ad.dims());
        for i in 0..g.dim() {
            let sign = Scalar::int(ksign(g.parity(i), 1));
            let twisted: Vec<SparseVec> = ad.op(i).iter().map(|c| c.scale(&sign)).collect();
            prop_assert_eq!(dd.op(i), &twisted);
        }
        if let Ok(v) = SuperModule::standard(g) {
            let t = v.tensor(&v.dual()).unwrap();
            prop_assert_eq!(t.dim(), v.dim() * v.dim());
            prop_assert!(t.check().is_empty());
        }
    }
}

