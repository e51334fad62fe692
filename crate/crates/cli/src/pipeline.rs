use std::sync::Arc;

use eql_core::dg::{check_morphism, check_stasheff, compute_hodge, transfer};
use eql_core::io::{
    graded_basis_json, multilinear_json, parse_fixture, representation_json, series_json, verdict, AlgebraFixture, Fixture,
    QuiverFixture, SCHEMA_VERSION,
};
use eql_core::moduli::{s_equivalence_classes, wallcross_compare, EnumerationOrder, SEquivalenceReport};
use eql_core::ncdeform::{build_tower, check_equivalence, hull_compare, QuotientAlgebra};
use eql_core::potential::{
    build_potential, check_cyclic, crit_equals_mc, jacobian_relations, verify_jacobian_identity, ExtQuiverPresentation,
};
use eql_core::quiver::{random_representation, Quiver, Representation};
use eql_core::{Error, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::{CliError, Command, PipelineConfig, Report};

/// Entry bound for sampled representations.
const SAMPLE_BOUND: i64 = 3;

fn invalid(e: impl ToString) -> CliError {
    CliError::Validation(e.to_string())
}

/// Run `config.command` over `F` on the fixture `text`.
pub fn execute_with<F: Field>(config: &PipelineConfig, name: &str, text: &str) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fixture = parse_fixture::<F, _>(text, &mut rng).map_err(|e| invalid(format!("{name}: {e}")))?;
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(config.command.name()));
    out.insert("field".into(), json!(F::name()));
    out.insert("order".into(), json!(config.order));
    out.insert("seed".into(), json!(config.seed));
    let mut input = json!({ "file": name, "kind": fixture.kind() });
    if let Some(d) = fixture.description() {
        input["description"] = json!(d);
    }
    out.insert("input".into(), input);
    let mut verdicts = Vec::new();
    let result = match (config.command, &fixture) {
        (Command::Transfer, Fixture::Algebra(a)) => cmd_transfer(config, a, &mut out, &mut verdicts),
        (Command::Potential, Fixture::Algebra(a)) => cmd_potential(config, a, &mut out, &mut verdicts),
        (Command::Moduli, Fixture::Quiver(q)) => cmd_moduli(config, q, &mut rng, &mut out, &mut verdicts),
        (Command::Ncdef, Fixture::Quiver(q)) => cmd_ncdef(config, q, &mut out, &mut verdicts),
        (c, f) => Err(invalid(format!("`{}` cannot run on a `{}` fixture", c.name(), f.kind()))),
    };
    let finish = |mut out: Map<String, Value>, verdicts: Vec<Value>| {
        let passed = verdicts.iter().all(|v| v["passed"] == json!(true));
        out.insert("verdicts".into(), Value::Array(verdicts));
        Report { json: Value::Object(out), passed }
    };
    match result {
        Ok(()) => Ok(finish(out, verdicts)),
        Err(CliError::Infeasible { estimate, limit, .. }) => {
            out.insert("infeasible".into(), json!({ "estimate": estimate.to_string(), "limit": limit.to_string() }));
            verdicts.push(verdict("feasible", false, format!("{estimate} candidates exceed the limit of {limit}")));
            let report = finish(out, verdicts).json;
            Err(CliError::Infeasible { estimate, limit, report })
        }
        Err(e) => Err(e),
    }
}

fn algebra_json<F: Field>(a: &AlgebraFixture<F>) -> Value {
    let alg = &a.algebra;
    json!({
        "dim": alg.dim(),
        "vertices": alg.vertex_count(),
        "basis": alg.names(),
        "degrees": alg.degrees(),
    })
}

fn betti_json(degrees: &[i32]) -> Value {
    let mut counts = std::collections::BTreeMap::<i32, usize>::new();
    for &d in degrees {
        *counts.entry(d).or_default() += 1;
    }
    Value::Object(counts.into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect())
}

fn cmd_transfer<F: Field>(
    config: &PipelineConfig,
    fixture: &AlgebraFixture<F>,
    out: &mut Map<String, Value>,
    verdicts: &mut Vec<Value>,
) -> Result<(), CliError> {
    let arity = config.arity.unwrap_or(config.order);
    if arity < 2 {
        return Err(invalid("the arity cap must be at least 2"));
    }
    let hodge = compute_hodge(Arc::new(fixture.algebra.clone()));
    let check = hodge.check();
    let t = transfer(&hodge, arity)?;
    let h = t.minimal.basis();
    out.insert("algebra".into(), algebra_json(fixture));
    out.insert("arity".into(), json!(arity));
    out.insert("cohomology".into(), json!({ "basis": graded_basis_json(h), "dims_by_degree": betti_json(&h.degrees) }));
    let products: Vec<Value> =
        (2..=arity).filter_map(|n| t.minimal.m(n)).map(|m| multilinear_json(m, h, &h.names)).collect();
    out.insert("products".into(), Value::Array(products));
    let morphism: Vec<Value> = (1..=arity)
        .filter_map(|n| t.morphism.component(n))
        .map(|m| multilinear_json(m, h, fixture.algebra.names()))
        .collect();
    out.insert("morphism".into(), Value::Array(morphism));
    let higher_vanish = (3..=arity).all(|n| t.minimal.m(n).is_none_or(|m| m.is_zero()));
    out.insert("higher_products_vanish".into(), json!(higher_vanish));

    verdicts.push(verdict(
        "retract",
        check.is_retract() && check.side_conditions(),
        "p i = 1, i p − 1 = d h + h d, and h² = h i = p h = 0",
    ));
    let stasheff = check_stasheff(&t.minimal, arity);
    let mut witness = Map::new();
    if let Some(f) = &stasheff.failure {
        let inputs: Vec<&str> = f.inputs.iter().map(|&j| h.names[j].as_str()).collect();
        witness.insert(
            "stasheff".into(),
            json!({ "arity": f.arity, "inputs": inputs, "value": eql_core::io::sparse_json(&h.names, &f.value) }),
        );
    }
    verdicts.push(verdict("stasheff", stasheff.passed(), format!("arities {:?}", stasheff.arities_checked)));
    let morph = check_morphism(&hodge, &t, arity);
    if let Some((n, tuple)) = &morph.failure {
        let inputs: Vec<&str> = tuple.iter().map(|&j| h.names[j].as_str()).collect();
        witness.insert("morphism".into(), json!({ "arity": n, "inputs": inputs }));
    }
    verdicts.push(verdict("morphism", morph.passed(), format!("arities {:?}", morph.arities_checked)));
    if !witness.is_empty() {
        out.insert("witness".into(), Value::Object(witness));
    }
    Ok(())
}

fn quiver_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .edges()
        .iter()
        .map(|e| json!({ "name": e.name, "source": q.vertex_name(e.source), "target": q.vertex_name(e.target) }))
        .collect();
    json!({ "vertices": q.vertices(), "arrows": arrows })
}

fn cmd_potential<F: Field>(
    config: &PipelineConfig,
    fixture: &AlgebraFixture<F>,
    out: &mut Map<String, Value>,
    verdicts: &mut Vec<Value>,
) -> Result<(), CliError> {
    let n = config.order;
    if n < 2 {
        return Err(invalid("potential needs --order at least 2"));
    }
    if F::characteristic() != 0 {
        return Err(invalid(Error::PositiveCharacteristic(F::characteristic())));
    }
    let spec = fixture.pairing.as_ref().ok_or_else(|| invalid("the fixture has no `pairing`"))?;
    let hodge = compute_hodge(Arc::new(fixture.algebra.clone()));
    let ainf = transfer(&hodge, n)?.minimal;
    let pairing = spec.resolve(&ainf).map_err(invalid)?;
    let pres = ExtQuiverPresentation::new(ainf.basis(), fixture.edge_names.clone(), fixture.vertex_names.clone())
        .map_err(invalid)?;
    let q = pres.quiver();
    out.insert("algebra".into(), algebra_json(fixture));
    out.insert("cohomology".into(), json!({ "basis": graded_basis_json(ainf.basis()) }));
    out.insert("ext_quiver".into(), quiver_json(q));
    out.insert("pairing".into(), json!({ "degree": pairing.degree(), "gram": eql_core::io::matrix_json(pairing.gram()) }));

    verdicts.push(verdict(
        "pairing_nondegenerate",
        pairing.is_nondegenerate(ainf.basis()),
        "the Gram matrix is invertible on every block",
    ));
    let cyclic = check_cyclic(&ainf, &pairing, n);
    let mut witness = Map::new();
    if let Some((arity, tuple)) = &cyclic.failure {
        let inputs: Vec<&str> = tuple.iter().map(|&j| ainf.basis().names[j].as_str()).collect();
        witness.insert("cyclic".into(), json!({ "arity": arity, "inputs": inputs }));
    }
    verdicts.push(verdict("cyclic", cyclic.passed(), format!("arities {:?}", cyclic.arities_checked)));
    if cyclic.passed() {
        let w = build_potential(&ainf, &pairing, &pres, n + 1)?;
        let derivatives: Vec<Value> = jacobian_relations(&w)?
            .relations()
            .iter()
            .map(|r| {
                let edge = r.edge.map(|e| q.edge(e).name.clone());
                json!({ "label": r.label, "edge": edge, "series": series_json(&r.series) })
            })
            .collect();
        out.insert("potential".into(), json!({ "order": w.order(), "series": series_json(w.series()) }));
        out.insert("cyclic_derivatives".into(), Value::Array(derivatives));
    }
    let jac = verify_jacobian_identity(&ainf, &pairing, &pres, n)?;
    if let Some(m) = &jac.mismatch {
        witness.insert(
            "jacobian".into(),
            json!({
                "edge": m.edge,
                "word": m.word,
                "from_products": m.from_products.to_json(),
                "from_potential": m.from_potential.to_json(),
            }),
        );
    }
    verdicts.push(verdict(
        "jacobian_identity",
        jac.passed(),
        format!("relations from products equal ∂W word by word up to length {n}"),
    ));
    if !witness.is_empty() {
        out.insert("witness".into(), Value::Object(witness));
    }
    Ok(())
}

fn class_table<F: Field>(r: &SEquivalenceReport<F>) -> Value {
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            let factors: Vec<Value> = c
                .factors
                .iter()
                .map(|(rep, m)| json!({ "representation": representation_json(rep), "multiplicity": m }))
                .collect();
            json!({ "factors": factors, "members": c.members })
        })
        .collect();
    json!({
        "total": r.total,
        "satisfying_relations": r.satisfying,
        "semistable": r.semistable,
        "all_semistable": r.semistable == r.satisfying,
        "classes": classes,
    })
}

fn charges_json(p: &eql_core::moduli::StabilityParameter) -> Value {
    Value::Array(p.charges().iter().map(Field::to_json).collect())
}

fn cmd_moduli<F: Field>(
    config: &PipelineConfig,
    fixture: &QuiverFixture<F>,
    rng: &mut ChaCha8Rng,
    out: &mut Map<String, Value>,
    verdicts: &mut Vec<Value>,
) -> Result<(), CliError> {
    let spec = fixture.moduli.as_ref().ok_or_else(|| invalid("the fixture has no `moduli` block"))?;
    let q = fixture.quiver.clone();
    let reln = fixture.relation_set(config.order)?;
    out.insert("quiver".into(), quiver_json(&q));
    if let Some(r) = &reln {
        let rels: Vec<Value> = r
            .relations()
            .iter()
            .map(|x| json!({ "label": x.label, "series": series_json(&x.series) }))
            .collect();
        out.insert("relations".into(), Value::Array(rels));
    }

    if let (Some(w), Some(rel)) = (fixture.superpotential(config.order)?, &reln) {
        if spec.samples > 0 {
            let mut agree = 0;
            let mut critical = 0;
            let mut mismatch = None;
            let zero = Representation::zero(q.clone(), spec.sample_dims.clone());
            let samples = std::iter::once(zero)
                .chain((0..spec.samples).map(|_| random_representation(q.clone(), spec.sample_dims.clone(), rng, SAMPLE_BOUND)));
            for (i, rep) in samples.enumerate() {
                let c = crit_equals_mc(&w, rel, &rep)?;
                if c.passed() {
                    agree += 1;
                } else if mismatch.is_none() {
                    mismatch = Some(json!({ "sample": i, "representation": representation_json(&rep) }));
                }
                if c.gradient_vanishes {
                    critical += 1;
                }
            }
            let tested = spec.samples + 1;
            out.insert(
                "critical_locus".into(),
                json!({
                    "potential": series_json(w.series()),
                    "dims": spec.sample_dims.0,
                    "samples": tested,
                    "agreeing": agree,
                    "critical": critical,
                }),
            );
            if let Some(m) = mismatch {
                out.insert("witness".into(), json!({ "crit_equals_mc": m }));
            }
            verdicts.push(verdict(
                "crit_equals_mc",
                agree == tested,
                format!("grad tr W and the cyclic derivatives vanish together on {tested} representations"),
            ));
        }
    }

    if F::elements().is_none() {
        out.insert(
            "stability".into(),
            json!({ "skipped": format!("exhaustive enumeration needs a finite field, not {}", F::name()) }),
        );
        return Ok(());
    }
    let mut stability = json!({ "dims": spec.dims.0, "sigma": charges_json(&spec.sigma), "limit": spec.limit.to_string() });
    match &spec.sigma_plus {
        Some(plus) => {
            stability["sigma_plus"] = charges_json(plus);
            out.insert("stability".into(), stability);
            match wallcross_compare::<F>(q, reln.as_ref(), &spec.dims, &spec.sigma, plus, spec.limit) {
                Ok(r) => {
                    out.insert("sigma_classes".into(), class_table(&r.sigma));
                    out.insert("sigma_plus_classes".into(), class_table(&r.sigma_plus));
                    out.insert(
                        "wall_crossing".into(),
                        json!({
                            "fibers": r.fibers,
                            "inclusion_holds": r.inclusion_holds,
                            "violations": r.violations,
                            "well_defined": r.well_defined,
                            "identity": r.is_identity(),
                        }),
                    );
                    verdicts.push(verdict("no_wall", true, "σ and σ⁺ destabilize the same points"));
                    verdicts.push(verdict("inclusion", r.inclusion_holds, "σ⁺-semistable points are σ-semistable"));
                    verdicts.push(verdict("fibering", r.well_defined, "each σ⁺-class lies over one σ-class"));
                }
                Err(Error::WallDetected(eq)) => {
                    out.insert("witness".into(), json!({ "wall": eq }));
                    verdicts.push(verdict("no_wall", false, "a wall separates σ and σ⁺"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        None => {
            out.insert("stability".into(), stability);
            let r = s_equivalence_classes::<F>(q, reln.as_ref(), &spec.dims, &spec.sigma, EnumerationOrder::Lexicographic, spec.limit)?;
            out.insert("sigma_classes".into(), class_table(&r));
        }
    }
    Ok(())
}

fn cmd_ncdef<F: Field>(
    config: &PipelineConfig,
    fixture: &QuiverFixture<F>,
    out: &mut Map<String, Value>,
    verdicts: &mut Vec<Value>,
) -> Result<(), CliError> {
    let n_max = config.order;
    let truncation = n_max + 1;
    let algebra = match fixture.relation_set(truncation)? {
        Some(r) => QuotientAlgebra::new(r, truncation)?,
        None => QuotientAlgebra::path_algebra(fixture.quiver.clone(), truncation)?,
    };
    let tower = build_tower(&algebra, n_max)?;
    let hull = hull_compare(&tower)?;
    out.insert("quiver".into(), quiver_json(&fixture.quiver));
    let levels: Vec<Value> = tower
        .levels
        .iter()
        .zip(&hull.levels)
        .map(|(l, h)| {
            let summands: Vec<Value> = l.summands.iter().map(|s| json!(s.dims().0)).collect();
            json!({
                "level": h.level,
                "endo_dim": h.endo_dim,
                "algebra_dim": h.algebra_dim,
                "graded_dims": h.graded_dims,
                "summand_dims": summands,
                "ext_dims": l.ext_dims,
                "stable": l.is_stable(),
                "hull": {
                    "isomorphic": h.isomorphic,
                    "surjection": h.surjection,
                    "base_change": h.base_change,
                },
            })
        })
        .collect();
    out.insert("levels".into(), Value::Array(levels));
    out.insert("stabilized_at".into(), json!(tower.stabilized_at()));
    let mut witness = Map::new();
    if let Some(w) = hull.first_failure().and_then(|l| l.witness.clone()) {
        witness.insert("hull".into(), json!(w));
    }
    verdicts.push(verdict("hull", hull.passed(), format!("R⁽ⁿ⁾ ≅ A/m^(n+1) for n ≤ {n_max}")));

    let spec = &fixture.ncdef;
    if F::elements().is_some() {
        let r = check_equivalence(&tower, spec.dim_bound, spec.limit)?;
        out.insert(
            "equivalence".into(),
            json!({
                "dim_bound": spec.dim_bound,
                "modules_tested": r.modules_tested,
                "sequences_tested": r.sequences_tested,
                "exact": r.exact,
                "counit_isos": r.counit_isos,
                "unit_isos": r.unit_isos,
                "phi_base_cases": r.phi_base_cases,
                "ext_maps_vanish": r.ext_maps_vanish,
                "hom_table": r.hom_table,
                "hom_delta": r.hom_delta,
                "hom_terminates": r.hom_terminates,
            }),
        );
        if let Some(w) = &r.witness {
            witness.insert("equivalence".into(), json!(w));
        }
        verdicts.push(verdict(
            "equivalence",
            r.passed(),
            format!("Φ and Ψ on nilpotent modules of dimension ≤ {}", spec.dim_bound),
        ));
    } else {
        out.insert("equivalence".into(), json!({ "skipped": format!("exhaustive enumeration needs a finite field, not {}", F::name()) }));
    }
    if !witness.is_empty() {
        out.insert("witness".into(), Value::Object(witness));
    }
    Ok(())
}
