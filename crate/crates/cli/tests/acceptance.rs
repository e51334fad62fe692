//! Acceptance suite: one line per criterion, tolerances and time budgets
//! pinned below. Runs without the libtest harness so the report is always
//! printed; exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use eql::{execute, Command as Pipeline, FieldSpec, PipelineConfig};
use eql_core::dg::{check_morphism, check_stasheff, compute_hodge, enumerate_trees, transfer, DgAlgebra};
use eql_core::fixtures::{cy3_exterior, cy3_with_cubic_term, exterior_algebra, massey_dga, minimal_model, random_exterior_dga, three_cycle_cy3};
use eql_core::moduli::{is_nilpotent, is_semistable, jh_filtration, satisfies_relations, semisimplify, StabilityParameter};
use eql_core::ncdeform::{build_tower, check_equivalence, hull_compare, QuotientAlgebra};
use eql_core::potential::{
    build_potential, check_cyclic, crit_equals_mc, cyclic_derivative, finite_difference_gradient, jacobian_relations, mc_defect,
    relations_from_products, trace_gradient, trace_potential, verify_jacobian_identity, CyclicPairing, DualBasis,
    ExtQuiverPresentation, Provenance, Relation, RelationSet,
};
use eql_core::quiver::{random_gauge, random_representation, DimVector, PathSeries, PathWord, Quiver, Representation};
use eql_core::{Field, GaussianRational, Matrix, Rational, F2, F3};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Q = Rational;

/// Largest tree arity checked against the closed formula.
const TREE_ARITY: usize = 10;
/// Stasheff identities are checked through this arity.
const STASHEFF_ARITY: usize = 6;
/// A∞-morphism identities are checked through this arity.
const MORPHISM_ARITY: usize = 5;
/// Representations sampled per fixture for the critical-locus comparison.
const CRIT_SAMPLES: usize = 100;
/// Largest dimension at a vertex for sampled representations.
const CRIT_MAX_DIM: usize = 3;
/// Finite-difference step is `2^-FD_STEP_BITS`.
const FD_STEP_BITS: u32 = 10;
const FD_POINTS: usize = 20;
/// Central differences must agree with the gradient to `FD_CONSTANT · step²`.
const FD_CONSTANT: i64 = 64;
const GAUGE_TRANSFORMS: usize = 50;
/// Total dimension bound for the exhaustive nilpotency check over 𝔽₂.
const NILPOTENT_TOTAL_DIM: usize = 4;
const TOWER_DEPTH: usize = 3;
const EQUIVALENCE_DIM_BOUND: usize = 3;
const ENUMERATION_LIMIT: u128 = 1 << 20;

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn tree_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=TREE_ARITY {
        let count = BigUint::from(enumerate_trees(n).map_err(|e| e.to_string())?.len());
        let formula = factorial(2 * n - 2) / (factorial(n - 1) * factorial(n));
        ensure(count == formula, || format!("n = {n}: {count} trees, formula gives {formula}"))?;
        ensure(n == 1 || count < BigUint::from(4u8).pow(n as u32 - 1), || format!("n = {n}: {count} ≥ 4^(n-1)"))?;
        counts.push(count.to_string());
    }
    Ok(format!("|O(n)| = {} for n = 1..{TREE_ARITY}", counts.join(", ")))
}

fn transfer_sound(name: &str, a: DgAlgebra<Q>) -> Outcome {
    let start = Instant::now();
    a.check().map_err(|e| format!("{name}: {e:?}"))?;
    let h = compute_hodge(Arc::new(a));
    ensure(h.check().is_retract(), || format!("{name}: not a retract"))?;
    let t = transfer(&h, STASHEFF_ARITY).map_err(|e| e.to_string())?;
    let stasheff = check_stasheff(&t.minimal, STASHEFF_ARITY);
    ensure(stasheff.passed(), || format!("{name}: Stasheff failure {:?}", stasheff.failure))?;
    ensure(stasheff.arities_checked.iter().max() >= Some(&STASHEFF_ARITY), || format!("{name}: arities {:?}", stasheff.arities_checked))?;
    let morph = check_morphism(&h, &t, MORPHISM_ARITY);
    ensure(morph.passed(), || format!("{name}: morphism failure {:?}", morph.failure))?;
    ensure(morph.arities_checked.iter().max() >= Some(&MORPHISM_ARITY), || format!("{name}: arities {:?}", morph.arities_checked))?;
    let elapsed = start.elapsed();
    ensure(elapsed < MINUTE, || format!("{name}: took {elapsed:?}"))?;
    Ok(format!("{name} (dim {}, {elapsed:.1?})", h.algebra().dim()))
}

fn transfer_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = vec![
        transfer_sound("exterior", cy3_exterior())?,
        transfer_sound("massey", massey_dga())?,
    ];
    for k in 0..3 {
        let a = random_exterior_dga::<Q, _>(&mut rng);
        ensure(a.dim() == 8, || format!("random fixture has dimension {}", a.dim()))?;
        done.push(transfer_sound(&format!("random#{k}"), a)?);
    }
    Ok(format!("m_n through arity {STASHEFF_ARITY}, I_n through {MORPHISM_ARITY}: {}", done.join(", ")))
}

fn formality() -> Outcome {
    let algebras: Vec<(&str, DgAlgebra<Q>)> = vec![
        ("Λ(x1,x2,x3)", cy3_exterior()),
        ("Λ(x,y)", exterior_algebra(&["x", "y"], &[]).map_err(|e| e.to_string())?),
        ("three-cycle", three_cycle_cy3()),
    ];
    for (name, a) in &algebras {
        let h = compute_hodge(Arc::new(a.clone()));
        ensure(h.dim() == a.dim(), || format!("{name}: cohomology is not the whole algebra"))?;
        let t = transfer(&h, STASHEFF_ARITY).map_err(|e| e.to_string())?;
        let m2 = t.minimal.m(2).ok_or("no m2")?;
        // Cohomology basis element k is the algebra basis element at[k].
        let at: Vec<usize> = h
            .names()
            .iter()
            .map(|n| a.names().iter().position(|m| m == n).ok_or_else(|| format!("{name}: class {n} is not a basis element")))
            .collect::<Result<_, _>>()?;
        for x in 0..h.dim() {
            for y in 0..h.dim() {
                let product = a.basis_product(at[x], at[y]);
                let expected: Vec<Q> = at.iter().map(|&i| product[i].clone()).collect();
                ensure(m2.value(&[x, y]) == expected, || format!("{name}: m2 differs from the product"))?;
            }
        }
        for n in 3..=STASHEFF_ARITY {
            ensure(t.minimal.m(n).is_some_and(|m| m.is_zero()), || format!("{name}: m_{n} ≠ 0"))?;
        }
        for n in 2..=STASHEFF_ARITY {
            ensure(t.morphism.component(n).is_some_and(|m| m.is_zero()), || format!("{name}: I_{n} ≠ 0"))?;
        }
    }
    Ok(format!("{} formal algebras: m2 = product, m3..m{STASHEFF_ARITY} = 0, I2..I{STASHEFF_ARITY} = 0", algebras.len()))
}

fn cy3_chain() -> Outcome {
    let ainf = minimal_model(cy3_exterior::<Q>(), 4);
    let pairing = CyclicPairing::from_top_class(&ainf, 3).map_err(|e| e.to_string())?;
    let pres = ExtQuiverPresentation::new(ainf.basis(), None, None).map_err(|e| e.to_string())?;
    let cyclic = check_cyclic(&ainf, &pairing, 4);
    ensure(cyclic.passed(), || format!("cyclicity fails at {:?}", cyclic.failure))?;
    let w = build_potential(&ainf, &pairing, &pres, 4).map_err(|e| e.to_string())?;
    let terms = w.series().terms();
    ensure(!terms.is_empty() && terms.keys().all(|k| k.len() == 3), || format!("W is not purely cubic: {w:?}"))?;
    let quiver = pres.quiver();
    ensure(quiver.edge_count() == 3, || "expected three loops".into())?;
    for e in 0..3 {
        let d = cyclic_derivative(&w, e).map_err(|e| e.to_string())?;
        let (b, c) = ((e + 1) % 3, (e + 2) % 3);
        let bc = PathWord::from_edges(quiver, &[b, c]).map_err(|e| e.to_string())?;
        let cb = PathWord::from_edges(quiver, &[c, b]).map_err(|e| e.to_string())?;
        let t = d.terms();
        let commutator = t.len() == 2 && t.get(&bc).is_some_and(|x| !x.is_zero()) && t.get(&cb) == t.get(&bc).map(|x| -x.clone()).as_ref();
        ensure(commutator, || format!("∂_{} W is not a commutator: {t:?}", e + 1))?;
    }
    let jac = verify_jacobian_identity(&ainf, &pairing, &pres, 3).map_err(|e| e.to_string())?;
    ensure(jac.passed(), || format!("relation/∂W mismatch {:?}", jac.mismatch))?;
    Ok(format!("cyclic through arity 4, W has {} cubic words, ∂W = commutators, relations = ∂W to order 3", terms.len()))
}

fn random_matrix<R: Rng>(rng: &mut R, r: usize, c: usize) -> Matrix<Q> {
    Matrix::from_rows((0..r).map(|_| (0..c).map(|_| Q::sample(rng, 3)).collect()).collect())
}

/// Scalar multiples of one square-zero matrix: all products vanish.
fn square_zero_point<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, dims: &DimVector) -> Representation<Q> {
    let maps = quiver
        .edges()
        .iter()
        .map(|e| {
            let (r, c) = (dims.get(e.target), dims.get(e.source));
            let mut m = Matrix::zeros(r, c);
            if e.source == e.target && r > 1 {
                m[(0, r - 1)] = Q::sample(rng, 3);
            }
            m
        })
        .collect();
    Representation::new(quiver.clone(), dims.clone(), maps).expect("shapes from dims")
}

struct CritFixture {
    name: &'static str,
    ainf: eql_core::dg::AInfinityStructure<Q>,
    order: usize,
}

fn crit_equals_mc_sampled() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fixtures = [
        CritFixture { name: "Λ(x1,x2,x3)", ainf: minimal_model(cy3_exterior::<Q>(), 4), order: 4 },
        CritFixture { name: "Λ(x1,x2,x3)+m3", ainf: cy3_with_cubic_term(Q::from_i64(2), 4), order: 4 },
        CritFixture { name: "three-cycle", ainf: minimal_model(three_cycle_cy3::<Q>(), 3), order: 3 },
    ];
    let mut summary = Vec::new();
    for f in &fixtures {
        let pairing = CyclicPairing::from_top_class(&f.ainf, 3).map_err(|e| e.to_string())?;
        let pres = ExtQuiverPresentation::new(f.ainf.basis(), None, None).map_err(|e| e.to_string())?;
        let quiver = pres.quiver().clone();
        let w = build_potential(&f.ainf, &pairing, &pres, f.order).map_err(|e| e.to_string())?;
        let reln = relations_from_products(&f.ainf, &pres, DualBasis::Pairing(&pairing), f.order - 1).map_err(|e| e.to_string())?;
        let mut critical = 0;
        for k in 0..CRIT_SAMPLES {
            let dims = DimVector((0..quiver.vertex_count()).map(|_| rng.gen_range(1..=CRIT_MAX_DIM)).collect());
            let r = if k % 4 == 3 {
                square_zero_point(&mut rng, &quiver, &dims)
            } else {
                let maps = quiver.edges().iter().map(|e| random_matrix(&mut rng, dims.get(e.target), dims.get(e.source))).collect();
                Representation::new(quiver.clone(), dims.clone(), maps).map_err(|e| e.to_string())?
            };
            let report = crit_equals_mc(&w, &reln, &r).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("{}: gradient and relations disagree: {report:?}", f.name))?;
            let kappa = mc_defect(&f.ainf, &pres, &r, f.order - 1).map_err(|e| e.to_string())?;
            ensure(kappa.is_zero() == report.gradient_vanishes && kappa.is_zero() == report.relations_vanish, || {
                format!("{}: κ(u) = 0 is {}, gradient vanishes is {}", f.name, kappa.is_zero(), report.gradient_vanishes)
            })?;
            critical += usize::from(report.gradient_vanishes);
        }
        ensure(critical > 0 && critical < CRIT_SAMPLES, || format!("{}: {critical} critical points, both outcomes needed", f.name))?;
        summary.push(format!("{} {critical}/{CRIT_SAMPLES} critical", f.name));
    }

    // Finite differences: with W of degree ≤ 4 the central difference error is
    // exactly h²/6 · f''' plus nothing, so halving h divides it by 4.
    let ainf = cy3_with_cubic_term(Q::from_i64(2), 4);
    let pairing = CyclicPairing::from_top_class(&ainf, 3).map_err(|e| e.to_string())?;
    let pres = ExtQuiverPresentation::new(ainf.basis(), None, None).map_err(|e| e.to_string())?;
    let quiver = pres.quiver().clone();
    let w = build_potential(&ainf, &pairing, &pres, 4).map_err(|e| e.to_string())?;
    let h = Q::from_i64(1 << FD_STEP_BITS).inv().expect("nonzero");
    let half = h.clone() * &Q::from_i64(2).inv().expect("nonzero");
    let tol = Q::from_i64(FD_CONSTANT) * &h * &h;
    let abs = |x: Q| if x < Q::from_i64(0) { -x } else { x };
    let mut worst = Q::from_i64(0);
    for k in 0..FD_POINTS {
        let n = 2 + k % 2;
        let r = Representation::new(quiver.clone(), DimVector(vec![n]), (0..3).map(|_| random_matrix(&mut rng, n, n)).collect())
            .map_err(|e| e.to_string())?;
        let exact = trace_gradient(&w, &r).map_err(|e| e.to_string())?;
        let coarse = finite_difference_gradient(&w, &r, &h).map_err(|e| e.to_string())?;
        let fine = finite_difference_gradient(&w, &r, &half).map_err(|e| e.to_string())?;
        for ((g, a), b) in exact.iter().zip(&coarse).zip(&fine) {
            for ((x, y), z) in g.entries().zip(a.entries()).zip(b.entries()) {
                let err = abs(y.clone() - x.clone());
                ensure(err <= tol, || format!("finite difference off by {err} > {tol}"))?;
                let err_fine = abs(z.clone() - x.clone());
                ensure(err == err_fine.clone() * &Q::from_i64(4), || format!("error {err} at h, {err_fine} at h/2: not quadratic"))?;
                if err > worst {
                    worst = err;
                }
            }
        }
    }
    let ratio = worst * &(h.clone() * &h).inv().expect("nonzero");
    summary.push(format!("finite differences at {FD_POINTS} points: max err/step² = {ratio} ≤ {FD_CONSTANT}"));
    Ok(summary.join("; "))
}

fn gc(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn relation<F: Field>(q: &Arc<Quiver>, label: &str, ends: (usize, usize), terms: &[(&[usize], i64)]) -> Relation<F> {
    let order = terms.iter().map(|(w, _)| w.len()).max().unwrap_or(1);
    let series = PathSeries::from_terms(
        q.clone(),
        order,
        Some(ends),
        terms.iter().map(|(w, c)| (PathWord::from_edges(q, w).expect("valid word"), F::from_i64(*c))),
    )
    .expect("valid series");
    Relation { label: label.into(), edge: None, series }
}

fn gauge_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut transforms = 0;

    // CY3 point over Q: trace of W, Jacobian relations, nilpotency.
    let ainf = cy3_with_cubic_term(Q::from_i64(3), 4);
    let pairing = CyclicPairing::from_top_class(&ainf, 3).map_err(|e| e.to_string())?;
    let pres = ExtQuiverPresentation::new(ainf.basis(), None, None).map_err(|e| e.to_string())?;
    let quiver = pres.quiver().clone();
    let w = build_potential(&ainf, &pairing, &pres, 4).map_err(|e| e.to_string())?;
    let reln = jacobian_relations(&w).map_err(|e| e.to_string())?;
    let points: Vec<Representation<Q>> = (0..4)
        .map(|k| {
            let dims = DimVector(vec![2 + k % 2]);
            if k < 2 {
                square_zero_point(&mut rng, &quiver, &dims)
            } else {
                random_representation(quiver.clone(), dims, &mut rng, 3)
            }
        })
        .collect();
    for r in &points {
        let (t, sat, nil) = (trace_potential(&w, r), satisfies_relations(r, &reln), is_nilpotent(r));
        for _ in 0..GAUGE_TRANSFORMS {
            let g = random_gauge::<Q, _>(r.dims(), &mut rng, 3);
            let moved = r.gauge_act(&g).map_err(|e| e.to_string())?;
            ensure(trace_potential(&w, &moved) == t, || "tr W changed under gauge".into())?;
            ensure(satisfies_relations(&moved, &reln) == sat, || "relation verdict changed under gauge".into())?;
            ensure(is_nilpotent(&moved) == nil, || "nilpotency changed under gauge".into())?;
            transforms += 1;
        }
    }

    // Two-cycle over 𝔽₃ with the relation ab: semistability, relations, nilpotency.
    let two_cycle = Arc::new(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).map_err(|e| e.to_string())?);
    let ab = RelationSet::new(two_cycle.clone(), vec![relation::<F3>(&two_cycle, "ab", (0, 0), &[(&[0, 1], 1)])], Provenance::Explicit)
        .map_err(|e| e.to_string())?;
    let params = [
        StabilityParameter::new(vec![gc(1, 1), gc(0, 2)]).map_err(|e| e.to_string())?,
        StabilityParameter::new(vec![gc(-1, 1), gc(1, 1)]).map_err(|e| e.to_string())?,
    ];
    for k in 0..6 {
        let dims = DimVector(vec![1 + k % 2, 2]);
        let r = random_representation::<F3, _>(two_cycle.clone(), dims, &mut rng, 1);
        let verdicts = |r: &Representation<F3>| -> Result<(Vec<bool>, bool, bool), String> {
            let ss = params.iter().map(|p| is_semistable(p, r).map(|v| v.holds)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            Ok((ss, satisfies_relations(r, &ab).map_err(|e| e.to_string())?, is_nilpotent(r)))
        };
        let before = verdicts(&r)?;
        for _ in 0..GAUGE_TRANSFORMS {
            let g = random_gauge::<F3, _>(r.dims(), &mut rng, 1);
            let moved = r.gauge_act(&g).map_err(|e| e.to_string())?;
            ensure(verdicts(&moved)? == before, || format!("verdicts changed under gauge for dims {}", r.dims()))?;
            transforms += 1;
        }
    }
    Ok(format!("{transforms} gauge transforms: tr W, relations, nilpotency, semistability unchanged"))
}

/// Every representation of `quiver` over 𝔽₂ of dimension `dims`.
fn all_reps(quiver: &Arc<Quiver>, dims: &DimVector) -> Vec<Representation<F2>> {
    let shapes: Vec<(usize, usize)> = quiver.edges().iter().map(|e| (dims.get(e.target), dims.get(e.source))).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    (0..1u64 << entries)
        .map(|bits| {
            let mut k = 0;
            let maps = shapes
                .iter()
                .map(|&(r, c)| {
                    let mut m = Matrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m[(i, j)] = F2::from_i64(((bits >> k) & 1) as i64);
                            k += 1;
                        }
                    }
                    m
                })
                .collect();
            Representation::new(quiver.clone(), dims.clone(), maps).expect("shapes from dims")
        })
        .collect()
}

fn dim_vectors(k: usize, total: usize) -> Vec<DimVector> {
    if k == 0 {
        return if total == 0 { vec![DimVector(vec![])] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            dim_vectors(k - 1, total - first).into_iter().map(move |mut rest| {
                rest.0.insert(0, first);
                rest
            })
        })
        .collect()
}

fn nilpotent_structure() -> Outcome {
    let quivers = [
        ("one loop", Arc::new(Quiver::loops(1))),
        ("two loops", Arc::new(Quiver::loops(2))),
        ("two-cycle", Arc::new(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).map_err(|e| e.to_string())?)),
        ("A2", Arc::new(Quiver::a2())),
    ];
    let (mut tested, mut nilpotent) = (0usize, 0usize);
    for (name, q) in &quivers {
        let k = q.vertex_count();
        let param = StabilityParameter::equal(k);
        for total in 1..=NILPOTENT_TOTAL_DIM {
            for dims in dim_vectors(k, total) {
                let entries: usize = q.edges().iter().map(|e| dims.get(e.source) * dims.get(e.target)).sum();
                // Two loops past dimension 2: too many to sweep.
                if entries > 16 {
                    continue;
                }
                for r in all_reps(q, &dims) {
                    tested += 1;
                    let nil = is_nilpotent(&r);
                    nilpotent += usize::from(nil);
                    let jh = jh_filtration(&param, &r).map_err(|e| e.to_string())?;
                    let mut counts = vec![0; k];
                    let mut all_vertex_simple = true;
                    for f in &jh.factors {
                        match (0..k).find(|&i| *f == Representation::vertex_simple(q.clone(), i)) {
                            Some(i) => counts[i] += 1,
                            None => all_vertex_simple = false,
                        }
                    }
                    let jh_vertex = all_vertex_simple && counts == dims.0;
                    ensure(nil == jh_vertex, || format!("{name} dims {dims}: nilpotent {nil}, JH = vertex simples {jh_vertex}"))?;
                    if nil {
                        let ss = semisimplify(&r).map_err(|e| e.to_string())?;
                        let expected: Vec<(Representation<F2>, usize)> = (0..k)
                            .filter(|&i| dims.get(i) > 0)
                            .map(|i| (Representation::vertex_simple(q.clone(), i), dims.get(i)))
                            .collect();
                        ensure(ss == expected, || format!("{name} dims {dims}: semisimplification {ss:?}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{tested} representations over F2 (total dim ≤ {NILPOTENT_TOTAL_DIM}), {nilpotent} nilpotent"))
}

fn config(command: Pipeline, input: &str, order: usize, field: FieldSpec, seed: u64) -> PipelineConfig {
    PipelineConfig { command, input: fixture(input), order, arity: None, field, out: PathBuf::new(), seed }
}

fn wall_crossing() -> Outcome {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut done = Vec::new();
    for (input, p) in [("a2_wall", 2), ("a2_wall", 3), ("a2_wall_other", 2), ("a2_wall_other", 3)] {
        let report = execute(&config(Pipeline::Moduli, &format!("{input}.json"), 2, FieldSpec::Prime(p), 0)).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("{input} over F{p}: a verdict failed"))?;
        let golden_path = golden_dir.join(format!("{input}_f{p}.json"));
        let golden: Value = serde_json::from_str(&std::fs::read_to_string(&golden_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for section in ["sigma_classes", "sigma_plus_classes", "wall_crossing"] {
            ensure(report.json[section] == golden[section], || format!("{input} over F{p}: {section} differs from {}", golden_path.display()))?;
        }
        done.push(format!("{input}/F{p} fibers {}", report.json["wall_crossing"]["fibers"]));
    }
    Ok(done.join(", "))
}

fn commutators<F: Field>() -> RelationSet<F> {
    let q = Arc::new(Quiver::loops(3));
    let rels = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(a, b)| relation(&q, &format!("[e{},e{}]", a + 1, b + 1), (0, 0), &[(&[a, b], 1), (&[b, a], -1)]))
        .collect();
    RelationSet::new(q, rels, Provenance::Explicit).expect("valid relations")
}

fn truncated_loop<F: Field>() -> RelationSet<F> {
    let q = Arc::new(Quiver::loops(1));
    RelationSet::new(q.clone(), vec![relation(&q, "e^3", (0, 0), &[(&[0, 0, 0], 1)])], Provenance::Explicit).expect("valid relations")
}

fn nc_tower() -> Outcome {
    let truncation = TOWER_DEPTH + 1;
    let algebras: Vec<(&str, QuotientAlgebra<F2>)> = vec![
        ("A2", QuotientAlgebra::path_algebra(Arc::new(Quiver::a2()), truncation).map_err(|e| e.to_string())?),
        ("k[e]/e³", QuotientAlgebra::new(truncated_loop(), truncation).map_err(|e| e.to_string())?),
        ("commutators", QuotientAlgebra::new(commutators(), truncation).map_err(|e| e.to_string())?),
    ];
    let mut done = Vec::new();
    for (name, a) in &algebras {
        let tower = build_tower(a, TOWER_DEPTH).map_err(|e| e.to_string())?;
        let hull = hull_compare(&tower).map_err(|e| e.to_string())?;
        ensure(hull.passed(), || format!("{name}: hull fails {:?}", hull.first_failure()))?;
        let eq = check_equivalence(&tower, EQUIVALENCE_DIM_BOUND, ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
        ensure(eq.passed(), || format!("{name}: equivalence fails: {:?}", eq.witness))?;
        ensure(eq.hom_delta && eq.ext_maps_vanish, || format!("{name}: Hom/Ext statements fail"))?;
        done.push(format!("{name} dims {:?} ({} modules, {} sequences)", tower.endo_dims(), eq.modules_tested, eq.sequences_tested));
    }
    // The same hulls in characteristic zero.
    for (name, a) in [
        ("A2/Q", QuotientAlgebra::<Q>::path_algebra(Arc::new(Quiver::a2()), truncation)),
        ("k[e]/e³/Q", QuotientAlgebra::new(truncated_loop(), truncation)),
        ("commutators/Q", QuotientAlgebra::new(commutators(), truncation)),
    ] {
        let tower = build_tower(&a.map_err(|e| e.to_string())?, TOWER_DEPTH).map_err(|e| e.to_string())?;
        let hull = hull_compare(&tower).map_err(|e| e.to_string())?;
        ensure(hull.passed(), || format!("{name}: hull fails {:?}", hull.first_failure()))?;
    }
    Ok(format!("n ≤ {TOWER_DEPTH}, dim_bound {EQUIVALENCE_DIM_BOUND} over F2: {}; hulls also over Q", done.join(", ")))
}

fn run_binary(args: &[&str], out: &Path) -> Result<(i32, Vec<u8>), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_eql"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?
        .status;
    let bytes = std::fs::read(out).map_err(|e| format!("{}: {e}", out.display()))?;
    Ok((status.code().unwrap_or(-1), bytes))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("eql-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let runs: [(&str, &str, &str, &str, &str); 6] = [
        ("transfer", "random_exterior.json", "6", "rationals", "7"),
        ("transfer", "massey.json", "5", "f5", "0"),
        ("potential", "cy3_exterior.json", "3", "rationals", "0"),
        ("moduli", "cy3_loops.json", "3", "rationals", "11"),
        ("moduli", "a2_wall.json", "2", "f3", "0"),
        ("ncdef", "truncated_loop.json", "3", "f2", "0"),
    ];
    for (i, (cmd, input, order, field, seed)) in runs.iter().enumerate() {
        let input = fixture(input);
        let args = [*cmd, "--input", input.to_str().expect("utf-8 path"), "--order", order, "--field", field, "--seed", seed];
        let first = run_binary(&args, &dir.join(format!("{i}a.json")))?;
        let second = run_binary(&args, &dir.join(format!("{i}b.json")))?;
        ensure(first.0 == 0, || format!("{cmd} {}: exit code {}", input.display(), first.0))?;
        ensure(first == second, || format!("{cmd} {}: reports differ between runs", input.display()))?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} CLI runs byte-identical across two invocations", runs.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("tree combinatorics", SECOND, tree_counts),
        ("transfer soundness", 5 * MINUTE, transfer_soundness),
        ("formality degeneration", MINUTE, formality),
        ("CY3 chain", MINUTE, cy3_chain),
        ("crit = MC", MINUTE, crit_equals_mc_sampled),
        ("gauge invariance", MINUTE, gauge_invariance),
        ("nilpotent structure", MINUTE, nilpotent_structure),
        ("wall-crossing", MINUTE, wall_crossing),
        ("NC tower", 2 * MINUTE, nc_tower),
        ("determinism", 2 * MINUTE, determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!("criterion {:>2} {:<24} {} [{:.2?}] {detail}", i + 1, name, if ok { "PASS" } else { "FAIL" }, elapsed);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
