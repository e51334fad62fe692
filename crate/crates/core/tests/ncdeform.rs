use std::sync::Arc;

use eql_core::moduli::{enumerate_representations, hom_dimension, hom_space, is_nilpotent, EnumerationOrder};
use eql_core::ncdeform::{
    build_tower, check_equivalence, counit, ext_dimension_by_resolution, ext_space, extension_module, functor_phi,
    functor_psi, hull_compare, module_homs, nilpotent_modules, phi_morphism, projective_resolution, psi_morphism, unit, universal_extension,
    QuotientAlgebra, RModule,
};
use eql_core::fixtures::{cy3_exterior, minimal_model, three_cycle_cy3};
use eql_core::potential::{build_potential, jacobian_relations, CyclicPairing, ExtQuiverPresentation, Provenance, Relation, RelationSet};
use eql_core::quiver::{DimVector, PathSeries, PathWord, Quiver, Representation};
use eql_core::{Error, Field, Matrix, Rational, F2, F3};
use proptest::prelude::*;

type Q = Rational;

fn mat<F: Field>(rows: &[&[i64]]) -> Matrix<F> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
}

fn a2<F: Field>() -> QuotientAlgebra<F> {
    QuotientAlgebra::path_algebra(Arc::new(Quiver::a2()), 3).unwrap()
}

/// `k[e]/e^{p}` presented by the relation `e^p`, truncated at `n`.
fn loop_mod_power<F: Field>(p: usize, n: usize) -> QuotientAlgebra<F> {
    let q = Arc::new(Quiver::loops(1));
    let w = PathWord::from_edges(&q, &vec![0; p]).unwrap();
    let s = PathSeries::from_terms(q.clone(), p, Some((0, 0)), vec![(w, F::one())]).unwrap();
    let reln = RelationSet::new(q, vec![Relation { label: format!("e^{p}"), edge: None, series: s }], Provenance::Products).unwrap();
    QuotientAlgebra::new(reln, n).unwrap()
}

/// Three loops with all commutators `[e_i, e_j]`.
fn commutators<F: Field>() -> RelationSet<F> {
    let q = Arc::new(Quiver::loops(3));
    let w = |a: usize, b: usize| PathWord::from_edges(&q, &[a, b]).unwrap();
    let rels = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(a, b)| {
            let s = PathSeries::from_terms(q.clone(), 2, Some((0, 0)), vec![(w(a, b), F::one()), (w(b, a), -F::one())]).unwrap();
            Relation { label: format!("[e{},e{}]", a + 1, b + 1), edge: None, series: s }
        })
        .collect();
    RelationSet::new(q, rels, Provenance::Products).unwrap()
}

fn simple<F: Field>(a: &QuotientAlgebra<F>, i: usize) -> Representation<F> {
    Representation::vertex_simple(a.quiver().clone(), i)
}

#[test]
fn quotient_algebra_dimensions() {
    let a = a2::<Q>();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.graded_dims(), vec![2, 1, 0, 0]);
    a.check().unwrap();
    // Normal words modulo commutators: monomials in three commuting variables.
    let c = QuotientAlgebra::new(commutators::<Q>(), 2).unwrap();
    assert_eq!(c.graded_dims(), vec![1, 3, 6]);
    c.check().unwrap();
    let c3 = QuotientAlgebra::new(commutators::<Q>(), 3).unwrap();
    assert_eq!(c3.graded_dims(), vec![1, 3, 6, 10]);
    let l = loop_mod_power::<Q>(3, 5);
    assert_eq!(l.graded_dims(), vec![1, 1, 1, 0, 0, 0]);
    l.check().unwrap();
}

#[test]
fn commutator_algebra_is_commutative() {
    let c = QuotientAlgebra::new(commutators::<Q>(), 3).unwrap();
    let t = c.table();
    for i in 0..c.dim() {
        for j in 0..c.dim() {
            assert_eq!(t.basis_product(i, j), t.basis_product(j, i));
        }
    }
}

#[test]
fn ext_counts_arrows() {
    // dim Ext¹(S_i, S_j) = #arrows i → j for path algebras.
    let q = Arc::new(Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "3", "3")]).unwrap());
    let a = QuotientAlgebra::<Q>::path_algebra(q.clone(), 3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let arrows = q.edges().iter().filter(|e| e.source == i && e.target == j).count();
            let e = ext_space(&a, &simple(&a, i), &simple(&a, j)).unwrap();
            assert_eq!(e.dim(), arrows, "Ext¹(S{}, S{})", i + 1, j + 1);
            assert_eq!(ext_dimension_by_resolution(&a, &simple(&a, i), &simple(&a, j), 1).unwrap(), arrows);
        }
    }
    let a = a2::<Q>();
    assert_eq!(ext_space(&a, &simple(&a, 0), &simple(&a, 1)).unwrap().dim(), 1);
    assert_eq!(ext_space(&a, &simple(&a, 1), &simple(&a, 0)).unwrap().dim(), 0);
    let c = QuotientAlgebra::new(commutators::<Q>(), 3).unwrap();
    assert_eq!(ext_space(&c, &simple(&c, 0), &simple(&c, 0)).unwrap().dim(), 3);
    // Ext² counts minimal relations: three commutators plus the fifteen
    // degree-four monomials killed by the truncation.
    let c3 = QuotientAlgebra::new(commutators::<F3>(), 3).unwrap();
    assert_eq!(ext_dimension_by_resolution(&c3, &simple(&c3, 0), &simple(&c3, 0), 2).unwrap(), 3 + 15);
    let c2 = QuotientAlgebra::new(commutators::<Q>(), 2).unwrap();
    assert_eq!(ext_dimension_by_resolution(&c2, &simple(&c2, 0), &simple(&c2, 0), 2).unwrap(), 3 + 10);
}

#[test]
fn projectives_have_no_extensions() {
    for a in [a2::<Q>(), loop_mod_power::<Q>(3, 3), QuotientAlgebra::new(commutators::<Q>(), 2).unwrap()] {
        for i in 0..a.quiver().vertex_count() {
            let p = a.projective(i);
            let res = projective_resolution(&a, &p, 2).unwrap();
            assert_eq!(res.len(), 1);
            assert_eq!(res.terms[0].summands, vec![i]);
            for j in 0..a.quiver().vertex_count() {
                assert_eq!(ext_space(&a, &p, &simple(&a, j)).unwrap().dim(), 0);
            }
        }
    }
}

#[test]
fn resolution_examples() {
    let a = a2::<Q>();
    let res = projective_resolution(&a, &simple(&a, 0), 3).unwrap();
    assert_eq!(res.len(), 2);
    assert_eq!(res.terms[0].summands, vec![0]);
    assert_eq!(res.terms[1].summands, vec![1]);
    assert!(res.is_exact(&simple(&a, 0)));

    // k[e]/e²: 0 → S → A → S → 0 repeats forever.
    let l = loop_mod_power::<Q>(2, 1);
    let s = simple(&l, 0);
    let res = projective_resolution(&l, &s, 4).unwrap();
    assert_eq!(res.len(), 5);
    assert!(res.terms.iter().all(|t| t.summands == vec![0] && t.module.total_dim() == 2));
    assert!(res.is_exact(&s));
    assert!(matches!(projective_resolution(&l, &s, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn ext_agrees_with_resolution_on_all_small_modules() {
    let l = loop_mod_power::<F2>(3, 3);
    let quiver = Arc::new(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap());
    let cyc = QuotientAlgebra::<F2>::path_algebra(quiver.clone(), 2).unwrap();
    let mut checked = 0;
    for (alg, dims_list) in [(&l, vec![vec![1], vec![2], vec![3]]), (&cyc, vec![vec![1, 1], vec![2, 1], vec![1, 2]])] {
        for dims in dims_list {
            let reps = enumerate_representations::<F2>(alg.quiver().clone(), &DimVector(dims), EnumerationOrder::Lexicographic, 1 << 12).unwrap();
            for (_, m) in reps {
                if !alg.admits(&m).unwrap() {
                    continue;
                }
                for j in 0..alg.quiver().vertex_count() {
                    let s = simple(alg, j);
                    let by_cocycles = ext_space(alg, &m, &s).unwrap().dim();
                    let by_resolution = ext_dimension_by_resolution(alg, &m, &s, 1).unwrap();
                    assert_eq!(by_cocycles, by_resolution);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn ext_cocycles_define_modules() {
    let c = QuotientAlgebra::new(commutators::<F3>(), 2).unwrap();
    let m = c.projective(0);
    let truncated = QuotientAlgebra::new(commutators::<F3>(), 1).unwrap();
    let top = simple(&truncated, 0);
    let ext = ext_space(&c, &top, &top).unwrap();
    for coc in &ext.cocycles {
        let e = extension_module(&top, &top, coc).unwrap();
        assert!(c.admits(&e).unwrap());
        assert!(is_nilpotent(&e));
    }
    assert_eq!(ext_space(&c, &m, &top).unwrap().dim(), 0);
}

#[test]
fn universal_extension_examples() {
    let a = a2::<Q>();
    let u = universal_extension(&a, &simple(&a, 0), &[0, 1]).unwrap();
    assert_eq!(u.module.dims(), &DimVector(vec![1, 1]));
    assert_eq!(u.module.map(0), &mat(&[&[1]]));
    let u2 = universal_extension(&a, &simple(&a, 1), &[0, 1]).unwrap();
    assert!(u2.is_trivial());
    assert_eq!(u2.module, simple(&a, 1));

    // k[e]/e³: S → k[e]/e² → k[e]/e³ → stays.
    let l = loop_mod_power::<Q>(3, 4);
    let e1 = universal_extension(&l, &simple(&l, 0), &[0]).unwrap().module;
    assert_eq!(e1.total_dim(), 2);
    let e2 = universal_extension(&l, &e1, &[0]).unwrap().module;
    assert_eq!(e2.total_dim(), 3);
    assert!(!e2.map(0).mul(e2.map(0)).is_zero());
    let e3 = universal_extension(&l, &e2, &[0]).unwrap();
    assert!(e3.is_trivial());
}

fn semisimple<F: Field>(k: usize) -> QuotientAlgebra<F> {
    let names: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    QuotientAlgebra::path_algebra(Arc::new(Quiver::from_names(&refs, &[]).unwrap()), 2).unwrap()
}

#[test]
fn module_homs_match_linear_system() {
    let a = loop_mod_power::<F2>(3, 3);
    let reps = enumerate_representations::<F2>(a.quiver().clone(), &DimVector(vec![3]), EnumerationOrder::Lexicographic, 1 << 12).unwrap();
    let modules: Vec<_> = reps.into_iter().map(|(_, m)| m).filter(|m| a.admits(m).unwrap()).collect();
    for m in modules.iter().step_by(7) {
        for u in modules.iter().step_by(11) {
            let fast = module_homs(&a, m, u).unwrap();
            assert_eq!(fast.dim(), hom_dimension(m, u).unwrap());
            for phi in fast.basis() {
                assert_eq!(u.map(0).mul(&phi[0]), phi[0].mul(m.map(0)));
            }
        }
    }
}

#[test]
fn a2_tower_stabilizes_at_one() {
    let t = build_tower(&a2::<Q>(), 3).unwrap();
    assert_eq!(t.stabilized_at(), Some(1));
    assert_eq!(t.endo_dims(), vec![2, 3, 3, 3]);
    let l1 = t.level(1);
    assert_eq!(l1.summands[0].dims(), &DimVector(vec![1, 1]));
    assert_eq!(l1.summands[1], simple(&t.algebra, 1));
    assert_eq!(l1.ext_dims, vec![vec![0, 0], vec![0, 0]]);
    assert_eq!(t.level(0).ext_dims, vec![vec![0, 1], vec![0, 0]]);
    // Stabilization: once Ext vanishes the summands stop changing.
    assert_eq!(t.level(2).summands, l1.summands);
    assert_eq!(t.level(3).summands, l1.summands);
}

#[test]
fn semisimple_tower_is_constant() {
    let t = build_tower(&semisimple::<Q>(3), 2).unwrap();
    assert_eq!(t.endo_dims(), vec![3, 3, 3]);
    assert_eq!(t.stabilized_at(), Some(0));
    let r = &t.level(2).endo;
    // k³: every product of distinct idempotents vanishes.
    for i in 0..3 {
        assert_eq!(r.table().mul(r.idempotent(i), r.idempotent(i)), r.idempotent(i).to_vec());
    }
    assert!(hull_compare(&t).unwrap().passed());
}

#[test]
fn truncated_loop_tower() {
    let a = loop_mod_power::<Q>(3, 3);
    let t = build_tower(&a, 4).unwrap();
    assert_eq!(t.endo_dims(), vec![1, 2, 3, 3, 3]);
    assert_eq!(t.stabilized_at(), Some(2));
    let report = hull_compare(&t).unwrap();
    assert!(report.passed(), "{:?}", report.first_failure());
    // R⁽ⁿ⁾ = k[e]/e^{min(n,2)+1}: the radical generator has that nilpotency.
    for (n, level) in t.levels.iter().enumerate() {
        let r = &level.endo;
        let unit = r.unit();
        let rad = (0..r.dim())
            .map(|b| {
                let mut v = vec![Q::from_i64(0); r.dim()];
                v[b] = Q::from_i64(1);
                v
            })
            .find(|v| *v != unit && r.table().mul(v, v) != *v)
            .unwrap_or_else(|| unit.iter().map(|_| Q::from_i64(0)).collect());
        let expected = n.min(2) + 1;
        let mut pow = unit.clone();
        for _ in 0..expected {
            pow = r.table().mul(&pow, &rad);
        }
        assert!(pow.iter().all(Field::is_zero), "level {n}");
    }
}

#[test]
fn hull_matches_examples() {
    let t = build_tower(&a2::<Q>(), 2).unwrap();
    let report = hull_compare(&t).unwrap();
    assert!(report.passed(), "{:?}", report.first_failure());
    assert_eq!(report.levels[1].algebra_dim, 3);
    assert_eq!(report.levels[1].graded_dims, vec![2, 1]);

    let c = QuotientAlgebra::new(commutators::<Q>(), 2).unwrap();
    let t = build_tower(&c, 2).unwrap();
    assert_eq!(t.endo_dims(), vec![1, 4, 10]);
    let report = hull_compare(&t).unwrap();
    assert!(report.passed(), "{:?}", report.first_failure());
    assert_eq!(report.levels[2].graded_dims, vec![1, 3, 6]);
}

#[test]
fn hull_detects_wrong_algebra() {
    // Towers over the free algebra compared against the commutative quotient.
    let free = QuotientAlgebra::<Q>::path_algebra(Arc::new(Quiver::loops(2)), 2).unwrap();
    let mut t = build_tower(&free, 2).unwrap();
    let q = Arc::new(Quiver::loops(2));
    let w = |a: usize, b: usize| PathWord::from_edges(&q, &[a, b]).unwrap();
    let s = PathSeries::from_terms(q.clone(), 2, Some((0, 0)), vec![(w(0, 1), Q::from_i64(1)), (w(1, 0), Q::from_i64(-1))]).unwrap();
    let reln = RelationSet::new(q, vec![Relation { label: "[x,y]".into(), edge: None, series: s }], Provenance::Products).unwrap();
    t.algebra = QuotientAlgebra::new(reln, 3).unwrap();
    let report = hull_compare(&t).unwrap();
    assert!(!report.passed());
    let fail = report.first_failure().unwrap();
    assert_eq!(fail.level, 2);
    assert!(fail.witness.as_deref().unwrap().contains("dimension mismatch"));
}

#[test]
fn restriction_maps_are_surjective() {
    let t = build_tower(&QuotientAlgebra::new(commutators::<F3>(), 3).unwrap(), 3).unwrap();
    assert_eq!(t.endo_dims(), vec![1, 4, 10, 20]);
    for n in 1..=3 {
        let res = t.level(n).restriction.as_ref().unwrap();
        assert_eq!(res.rank(), t.level(n - 1).endo.dim());
    }
    assert!(hull_compare(&t).unwrap().passed());
}

#[test]
fn hom_from_tower_to_simples_is_diagonal() {
    for a in [a2::<F2>(), loop_mod_power::<F2>(3, 3), QuotientAlgebra::new(commutators::<F2>(), 2).unwrap()] {
        let t = build_tower(&a, 2).unwrap();
        for level in &t.levels {
            for (i, e) in level.summands.iter().enumerate() {
                for j in 0..a.quiver().vertex_count() {
                    let d = module_homs(&t.algebra, e, &simple(&t.algebra, j)).unwrap().dim();
                    assert_eq!(d, usize::from(i == j));
                }
            }
        }
    }
}

#[test]
fn hull_of_jacobian_algebra_from_cy3_potential() {
    // The three-cycle potential abc kills every path of length two.
    for (dga, expected) in [(cy3_exterior::<Q>(), vec![1, 4, 10]), (three_cycle_cy3::<Q>(), vec![3, 6, 6])] {
        let ainf = minimal_model(dga, 3);
        let pairing = CyclicPairing::from_top_class(&ainf, 3).unwrap();
        let pres = ExtQuiverPresentation::new(ainf.basis(), None, None).unwrap();
        let w = build_potential(&ainf, &pairing, &pres, 3).unwrap();
        let reln = jacobian_relations(&w).unwrap();
        let a = QuotientAlgebra::new(reln, 3).unwrap();
        let t = build_tower(&a, 2).unwrap();
        assert_eq!(t.endo_dims(), expected);
        let report = hull_compare(&t).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }
}

#[test]
fn phi_examples() {
    let t = build_tower(&a2::<Q>(), 1).unwrap();
    let top = t.top();
    for i in 0..2 {
        let s = RModule::simple(top, i);
        s.validate(&top.endo).unwrap();
        let phi = functor_phi(top, &s).unwrap();
        assert_eq!(phi.module, simple(&t.algebra, i));
        assert_eq!(phi.jh.0, if i == 0 { vec![1, 0] } else { vec![0, 1] });
    }
    let regular = RModule::regular(&top.endo);
    regular.validate(&top.endo).unwrap();
    let phi = functor_phi(top, &regular).unwrap();
    assert_eq!(phi.module.dims(), top.module.dims());
    assert_eq!(phi.jh, DimVector(vec![1, 2]));

    // The 2-dimensional indecomposable π₁R maps to E₁⁽¹⁾.
    let e1 = &top.summands[0];
    let psi = functor_psi(&t.algebra, top, e1).unwrap();
    assert_eq!(psi.module.dim(), 2);
    psi.module.validate(&top.endo).unwrap();
    let phi = functor_phi(top, &psi.module).unwrap();
    assert_eq!(phi.module.dims(), e1.dims());
    assert!(!phi.module.map(0).is_zero());
    let eps = counit(&psi, &phi, e1).unwrap();
    assert!(eps.iter().all(Matrix::is_invertible));
}

#[test]
fn r_module_validation_rejects_bad_actions() {
    let t = build_tower(&a2::<Q>(), 1).unwrap();
    let r = &t.top().endo;
    let bogus = vec![Matrix::<Q>::identity(1); r.dim()];
    assert!(RModule::new(r, 1, bogus).is_err());
    assert!(RModule::new(r, 1, vec![Matrix::identity(1)]).is_err());
}

#[test]
fn psi_and_phi_morphisms_are_functorial() {
    let t = build_tower(&loop_mod_power::<Q>(3, 3), 2).unwrap();
    let top = t.top();
    let u = top.module.clone();
    // Multiplication by the loop is an endomorphism of E.
    let beta = vec![u.map(0).clone()];
    let pu = functor_psi(&t.algebra, top, &u).unwrap();
    let b = psi_morphism(&pu, &pu, &beta);
    assert!(pu.module.is_morphism(&pu.module, &b));
    let b2 = psi_morphism(&pu, &pu, &[beta[0].mul(&beta[0])]);
    assert_eq!(b.mul(&b), b2);
    let fu = functor_phi(top, &pu.module).unwrap();
    let fb = phi_morphism(&fu, &fu, top, &b);
    let fb2 = phi_morphism(&fu, &fu, top, &b2);
    assert_eq!(fb[0].mul(&fb[0]), fb2[0]);
    let eta = unit(top, &pu.module, &fu, &functor_psi(&t.algebra, top, &fu.module).unwrap());
    assert!(eta.is_invertible());
}

#[test]
fn equivalence_on_small_algebras() {
    for (name, a, depth) in [
        ("A2", a2::<F2>(), 2),
        ("loop mod e³", loop_mod_power::<F2>(3, 3), 2),
        ("semisimple", semisimple::<F2>(2), 1),
    ] {
        let t = build_tower(&a, depth).unwrap();
        let report = check_equivalence(&t, 3, 1 << 20).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.witness);
        assert!(report.modules_tested > 0 && report.sequences_tested > 0, "{name}");
    }
}

#[test]
fn shallow_tower_fails_hom_termination() {
    let t = build_tower(&loop_mod_power::<F2>(3, 3), 1).unwrap();
    let report = check_equivalence(&t, 3, 1 << 20).unwrap();
    assert!(!report.hom_terminates);
    assert!(report.witness.unwrap().contains("Hom"));
}

#[test]
fn equivalence_requires_finite_field() {
    let t = build_tower(&a2::<Q>(), 1).unwrap();
    assert!(matches!(check_equivalence(&t, 2, 1 << 20), Err(Error::Unsupported(_))));
}

fn isomorphic_f2(m: &Representation<F2>, n: &Representation<F2>) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    let basis = hom_space(m, n).unwrap();
    let d = basis.len();
    (0..1u64 << d).any(|mask| {
        let mut phi: Vec<Matrix<F2>> = (0..m.dims().0.len()).map(|v| Matrix::zeros(n.dim(v), m.dim(v))).collect();
        for (b, f) in basis.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for (p, x) in phi.iter_mut().zip(f) {
                    p.add_assign(x);
                }
            }
        }
        phi.iter().all(Matrix::is_invertible)
    })
}

#[test]
fn triangular_enumeration_covers_every_isomorphism_class() {
    let cyc = QuotientAlgebra::<F2>::path_algebra(
        Arc::new(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap()),
        3,
    )
    .unwrap();
    for a in [a2::<F2>(), loop_mod_power::<F2>(3, 3), cyc] {
        let listed = nilpotent_modules(&a, 3, 1 << 20).unwrap();
        let k = a.quiver().vertex_count();
        let mut dims = vec![0usize; k];
        let mut checked = 0;
        loop {
            let total: usize = dims.iter().sum();
            if (1..=3).contains(&total) {
                let all = enumerate_representations::<F2>(a.quiver().clone(), &DimVector(dims.clone()), EnumerationOrder::Lexicographic, 1 << 20).unwrap();
                for (_, m) in all {
                    if is_nilpotent(&m) && a.admits(&m).unwrap() {
                        assert!(listed.iter().any(|n| isomorphic_f2(&m, n)), "missing {:?}", m);
                        checked += 1;
                    }
                }
            }
            let mut v = 0;
            while v < k {
                dims[v] += 1;
                if dims[v] <= 3 {
                    break;
                }
                dims[v] = 0;
                v += 1;
            }
            if v == k {
                break;
            }
        }
        assert!(checked > 0);
        assert!(listed.iter().all(|n| is_nilpotent(n) && a.admits(n).unwrap()));
    }
}

#[test]
fn nilpotent_enumeration_is_bounded() {
    let c = QuotientAlgebra::new(commutators::<F2>(), 3).unwrap();
    assert!(matches!(nilpotent_modules(&c, 3, 100), Err(Error::Infeasible { .. })));
    let listed = nilpotent_modules(&c, 3, 1 << 20).unwrap();
    assert!(listed.iter().all(is_nilpotent));
}

#[test]
fn equivalence_on_commutator_algebra() {
    let t = build_tower(&QuotientAlgebra::new(commutators::<F2>(), 3).unwrap(), 2).unwrap();
    let report = check_equivalence(&t, 3, 1 << 20).unwrap();
    assert!(report.passed(), "{:?}", report.witness);
}

fn random_quiver(vertices: usize, edges: &[(usize, usize)]) -> Arc<Quiver> {
    let names: Vec<String> = (1..=vertices).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let edge_names: Vec<String> = (0..edges.len()).map(|e| format!("a{e}")).collect();
    let spec: Vec<(&str, &str, &str)> = edges
        .iter()
        .zip(&edge_names)
        .map(|(&(s, t), n)| (n.as_str(), refs[s % vertices], refs[t % vertices]))
        .collect();
    Arc::new(Quiver::from_names(&refs, &spec).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tower_invariants_on_random_quivers(
        vertices in 1usize..=3,
        edges in prop::collection::vec((0usize..3, 0usize..3), 0..=2),
    ) {
        let q = random_quiver(vertices, &edges);
        let a = QuotientAlgebra::<F3>::path_algebra(q.clone(), 3).unwrap();
        let t = build_tower(&a, 2).unwrap();
        let report = hull_compare(&t).unwrap();
        prop_assert!(report.passed(), "{:?}", report.first_failure());
        for (n, level) in t.levels.iter().enumerate() {
            for (i, e) in level.summands.iter().enumerate() {
                for j in 0..vertices {
                    let d = module_homs(&t.algebra, e, &simple(&t.algebra, j)).unwrap().dim();
                    prop_assert_eq!(d, usize::from(i == j));
                }
            }
            if level.is_stable() && n + 1 < t.levels.len() {
                prop_assert_eq!(&t.levels[n + 1].summands, &level.summands);
            }
        }
        // The top summands are the indecomposable projectives of A⁽²⁾.
        let truncated = a.with_truncation(2).unwrap();
        for i in 0..vertices {
            let p = truncated.projective(i);
            prop_assert_eq!(t.top().summands[i].dims(), p.dims());
            prop_assert_eq!(ext_space(&truncated, &p, &simple(&truncated, 0)).unwrap().dim(), 0);
        }
    }
}
