//! JSON fixtures and the building blocks of JSON reports.
//!
//! Every document carries `"schema_version"`; fixtures are tagged by
//! `"kind"`. Scalars go through [`Field::to_json`] and [`Field::from_json`],
//! so fractions are `"p/q"` strings and Gaussian rationals are
//! `{"re": "p/q", "im": "p/q"}`. JSON objects keep their keys sorted, which
//! makes serialized reports byte-reproducible.
//!
//! Fixture kinds:
//!
//! * `dga`: explicit sparse dg-algebra (`basis`, `differential`, `products`,
//!   `unit`, optional `vertices`).
//! * `exterior`: exterior algebra on degree-one `generators` with the
//!   differential given on generators, e.g. `{"z": {"xy": 1}}`.
//! * `random_exterior`: a random differential on `Λ(x, y, z)` followed by a
//!   random change of basis, drawn from the caller's generator.
//! * `quiver`: a quiver with optional `relations` or `potential`, plus the
//!   `moduli` and `ncdef` parameter blocks.
//!
//! The three algebra kinds accept an optional `pairing` (`degree`, and
//! either nothing, for the top-class pairing, or an explicit `gram` matrix on
//! the cohomology basis; `scale_rows` rescales named rows afterwards) and
//! optional `edge_names` / `vertex_names` for the Ext-quiver.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::dg::{AInfinityStructure, DgAlgebra, DgaBuilder, GradedBasis, MultilinearMap};
use crate::error::{Error, Result};
use crate::field::{Field, GaussianRational};
use crate::fixtures::{exterior_algebra, random_exterior_dga};
use crate::matrix::Matrix;
use crate::moduli::StabilityParameter;
use crate::potential::{CyclicPairing, Provenance, Relation, RelationSet, SuperPotential};
use crate::quiver::{DimVector, Edge, PathSeries, PathWord, Quiver, Representation};

pub const SCHEMA_VERSION: u64 = 1;

/// Enumeration budget used when a fixture does not set `limit`.
pub const DEFAULT_LIMIT: u128 = 1 << 20;

/// A fixture that could not be read, with the place where reading stopped:
/// `line:column` for syntax errors, a JSON path otherwise.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct FixtureError {
    pub location: String,
    pub message: String,
}

impl FixtureError {
    fn at(location: impl Into<String>, message: impl ToString) -> Self {
        Self { location: location.into(), message: message.to_string() }
    }
}

type Parsed<T> = std::result::Result<T, FixtureError>;

#[derive(Clone, Debug)]
pub enum Fixture<F> {
    Algebra(AlgebraFixture<F>),
    Quiver(QuiverFixture<F>),
}

impl<F> Fixture<F> {
    pub fn kind(&self) -> &str {
        match self {
            Fixture::Algebra(a) => &a.kind,
            Fixture::Quiver(_) => "quiver",
        }
    }

    pub fn description(&self) -> Option<&str> {
        match self {
            Fixture::Algebra(a) => a.description.as_deref(),
            Fixture::Quiver(q) => q.description.as_deref(),
        }
    }
}

/// A dg-algebra together with the data needed to read off a potential.
#[derive(Clone, Debug)]
pub struct AlgebraFixture<F> {
    pub kind: String,
    pub description: Option<String>,
    pub algebra: DgAlgebra<F>,
    pub pairing: Option<PairingSpec<F>>,
    pub edge_names: Option<Vec<String>>,
    pub vertex_names: Option<Vec<String>>,
}

/// A pairing on the cohomology, resolved once the cohomology basis is known.
#[derive(Clone, Debug)]
pub struct PairingSpec<F> {
    pub degree: i32,
    pub gram: Option<Vec<Vec<F>>>,
    pub scale_rows: Vec<(String, F)>,
}

impl<F: Field> PairingSpec<F> {
    pub fn resolve(&self, ainf: &AInfinityStructure<F>) -> Result<CyclicPairing<F>> {
        let mut pairing = match &self.gram {
            None => CyclicPairing::from_top_class(ainf, self.degree)?,
            Some(rows) => {
                let n = ainf.dim();
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::ShapeMismatch(format!("pairing must be {n}x{n} on the cohomology basis")));
                }
                CyclicPairing::new(Matrix::from_rows(rows.clone()), self.degree)?
            }
        };
        for (name, c) in &self.scale_rows {
            let row = ainf
                .basis()
                .index(name)
                .ok_or_else(|| Error::InvalidArgument(format!("no cohomology class named `{name}`")))?;
            pairing = pairing.with_row_scaled(row, c);
        }
        Ok(pairing)
    }
}

/// A quiver with optional relations or potential and pipeline parameters.
#[derive(Clone, Debug)]
pub struct QuiverFixture<F> {
    pub description: Option<String>,
    pub quiver: Arc<Quiver>,
    pub relations: Vec<RelationSpec<F>>,
    pub potential: Option<Vec<(PathWord, F)>>,
    pub moduli: Option<ModuliSpec>,
    pub ncdef: NcdefSpec,
}

#[derive(Clone, Debug)]
pub struct RelationSpec<F> {
    pub label: String,
    pub terms: Vec<(PathWord, F)>,
}

#[derive(Clone, Debug)]
pub struct ModuliSpec {
    pub dims: DimVector,
    pub sigma: StabilityParameter,
    pub sigma_plus: Option<StabilityParameter>,
    pub samples: usize,
    pub sample_dims: DimVector,
    pub limit: u128,
}

#[derive(Clone, Debug)]
pub struct NcdefSpec {
    pub dim_bound: usize,
    pub limit: u128,
}

impl<F: Field> QuiverFixture<F> {
    /// The potential truncated to cycles of length at most `order`.
    pub fn superpotential(&self, order: usize) -> Result<Option<SuperPotential<F>>> {
        self.potential
            .as_ref()
            .map(|terms| SuperPotential::from_terms(self.quiver.clone(), order, terms.iter().cloned()))
            .transpose()
    }

    /// Explicit relations, or the cyclic derivatives of the potential, with
    /// words of length at most `order`.
    pub fn relation_set(&self, order: usize) -> Result<Option<RelationSet<F>>> {
        if let Some(w) = self.superpotential(order + 1)? {
            return crate::potential::jacobian_relations(&w).map(Some);
        }
        if self.relations.is_empty() {
            return Ok(None);
        }
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let series = PathSeries::from_terms(self.quiver.clone(), order, None, r.terms.iter().cloned())?;
                Ok(Relation { label: r.label.clone(), edge: None, series })
            })
            .collect::<Result<Vec<_>>>()?;
        RelationSet::new(self.quiver.clone(), relations, Provenance::Explicit).map(Some)
    }

    /// Longest word in the relations or the potential.
    pub fn max_word_length(&self) -> usize {
        let rel = self.relations.iter().flat_map(|r| r.terms.iter());
        let pot = self.potential.iter().flatten();
        rel.chain(pot).map(|(w, _)| w.len()).max().unwrap_or(0)
    }
}

#[derive(Deserialize)]
struct Header {
    schema_version: Option<u64>,
    kind: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairing {
    degree: i32,
    #[serde(default)]
    gram: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    scale_rows: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    name: String,
    degree: i32,
    #[serde(default)]
    block: (usize, usize),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiff {
    source: String,
    target: String,
    coeff: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    left: String,
    right: String,
    target: String,
    coeff: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUnit {
    name: String,
    coeff: Value,
}

fn one() -> usize {
    1
}

fn three() -> usize {
    3
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDga {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    description: Option<String>,
    #[serde(default = "one")]
    vertices: usize,
    basis: Vec<RawBasis>,
    #[serde(default)]
    differential: Vec<RawDiff>,
    #[serde(default)]
    products: Vec<RawProduct>,
    #[serde(default)]
    unit: Vec<RawUnit>,
    #[serde(default)]
    pairing: Option<RawPairing>,
    #[serde(default)]
    edge_names: Option<Vec<String>>,
    #[serde(default)]
    vertex_names: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExterior {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    description: Option<String>,
    generators: Vec<String>,
    #[serde(default)]
    differential: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default)]
    pairing: Option<RawPairing>,
    #[serde(default)]
    edge_names: Option<Vec<String>>,
    #[serde(default)]
    vertex_names: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRandomExterior {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    pairing: Option<RawPairing>,
    #[serde(default)]
    edge_names: Option<Vec<String>>,
    #[serde(default)]
    vertex_names: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    source: String,
    target: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default)]
    word: Vec<String>,
    #[serde(default)]
    vertex: Option<String>,
    coeff: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    label: String,
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModuli {
    dims: Vec<usize>,
    #[serde(default)]
    sigma: Option<Vec<Value>>,
    #[serde(default)]
    sigma_plus: Option<Vec<Value>>,
    #[serde(default)]
    samples: usize,
    #[serde(default)]
    sample_dims: Option<Vec<usize>>,
    #[serde(default)]
    limit: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNcdef {
    #[serde(default = "three")]
    dim_bound: usize,
    #[serde(default)]
    limit: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiverFixture {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    description: Option<String>,
    quiver: RawQuiver,
    #[serde(default)]
    relations: Vec<RawRelation>,
    #[serde(default)]
    potential: Option<Vec<RawTerm>>,
    #[serde(default)]
    moduli: Option<RawModuli>,
    #[serde(default)]
    ncdef: Option<RawNcdef>,
}

fn typed<T: DeserializeOwned>(v: Value) -> Parsed<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        FixtureError::at(if path == "." { "$".to_string() } else { format!("$.{path}") }, e.into_inner())
    })
}

fn scalar<F: Field>(v: &Value, location: impl Fn() -> String) -> Parsed<F> {
    F::from_json(v).map_err(|e| FixtureError::at(location(), e))
}

fn pairing<F: Field>(raw: Option<RawPairing>) -> Parsed<Option<PairingSpec<F>>> {
    let Some(p) = raw else { return Ok(None) };
    let gram = p
        .gram
        .map(|rows| {
            rows.iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, x)| scalar(x, || format!("$.pairing.gram[{r}][{c}]")))
                        .collect::<Parsed<Vec<F>>>()
                })
                .collect::<Parsed<Vec<_>>>()
        })
        .transpose()?;
    let scale_rows = p
        .scale_rows
        .iter()
        .map(|(k, v)| Ok((k.clone(), scalar(v, || format!("$.pairing.scale_rows.{k}"))?)))
        .collect::<Parsed<Vec<_>>>()?;
    Ok(Some(PairingSpec { degree: p.degree, gram, scale_rows }))
}

fn checked_algebra<F: Field>(a: Result<DgAlgebra<F>>) -> Parsed<DgAlgebra<F>> {
    let a = a.map_err(|e| FixtureError::at("$", e))?;
    a.check().map_err(|v| FixtureError::at("$", format!("not a dg-algebra: {v:?}")))?;
    Ok(a)
}

fn dga<F: Field>(raw: RawDga) -> Parsed<AlgebraFixture<F>> {
    let mut b = DgaBuilder::<F>::new().vertices(raw.vertices);
    for x in &raw.basis {
        b = b.basis_in_block(&x.name, x.degree, x.block);
    }
    for (i, t) in raw.differential.iter().enumerate() {
        b = b.d(&t.source, &t.target, scalar(&t.coeff, || format!("$.differential[{i}].coeff"))?);
    }
    for (i, t) in raw.products.iter().enumerate() {
        b = b.product(&t.left, &t.right, &t.target, scalar(&t.coeff, || format!("$.products[{i}].coeff"))?);
    }
    if !raw.unit.is_empty() {
        let unit = raw
            .unit
            .iter()
            .enumerate()
            .map(|(i, u)| Ok((u.name.as_str(), scalar(&u.coeff, || format!("$.unit[{i}].coeff"))?)))
            .collect::<Parsed<Vec<_>>>()?;
        b = b.unit(&unit);
    }
    Ok(AlgebraFixture {
        kind: "dga".into(),
        description: raw.description,
        algebra: checked_algebra(b.build())?,
        pairing: pairing(raw.pairing)?,
        edge_names: raw.edge_names,
        vertex_names: raw.vertex_names,
    })
}

fn exterior<F: Field>(raw: RawExterior) -> Parsed<AlgebraFixture<F>> {
    let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
    let terms: Vec<(&str, Vec<(&str, i64)>)> = raw
        .differential
        .iter()
        .map(|(g, t)| (g.as_str(), t.iter().map(|(n, &c)| (n.as_str(), c)).collect()))
        .collect();
    let d: Vec<(&str, &[(&str, i64)])> = terms.iter().map(|(g, t)| (*g, t.as_slice())).collect();
    Ok(AlgebraFixture {
        kind: "exterior".into(),
        description: raw.description,
        algebra: checked_algebra(exterior_algebra(&gens, &d))?,
        pairing: pairing(raw.pairing)?,
        edge_names: raw.edge_names,
        vertex_names: raw.vertex_names,
    })
}

fn word(q: &Quiver, t: &RawTerm, location: &str) -> Parsed<PathWord> {
    if t.word.is_empty() {
        let v = t
            .vertex
            .as_deref()
            .ok_or_else(|| FixtureError::at(location, "an empty word needs a `vertex`"))?;
        let v = q.vertex_index(v).map_err(|e| FixtureError::at(location, e))?;
        return Ok(PathWord::trivial(v));
    }
    let names: Vec<&str> = t.word.iter().map(String::as_str).collect();
    PathWord::from_names(q, &names, None).map_err(|e| FixtureError::at(location, e))
}

fn terms<F: Field>(q: &Quiver, raw: &[RawTerm], prefix: &str) -> Parsed<Vec<(PathWord, F)>> {
    raw.iter()
        .enumerate()
        .map(|(i, t)| {
            let at = format!("{prefix}[{i}]");
            Ok((word(q, t, &at)?, scalar(&t.coeff, || format!("{at}.coeff"))?))
        })
        .collect()
}

fn charges(raw: &[Value], k: usize, location: &str) -> Parsed<StabilityParameter> {
    if raw.len() != k {
        return Err(FixtureError::at(location, format!("expected {k} central charges, found {}", raw.len())));
    }
    let z = raw
        .iter()
        .enumerate()
        .map(|(i, v)| scalar::<GaussianRational>(v, || format!("{location}[{i}]")))
        .collect::<Parsed<Vec<_>>>()?;
    StabilityParameter::new(z).map_err(|e| FixtureError::at(location, e))
}

fn dims(q: &Quiver, raw: Vec<usize>, location: &str) -> Parsed<DimVector> {
    DimVector::new(q, raw).map_err(|e| FixtureError::at(location, e))
}

fn quiver_fixture<F: Field>(raw: RawQuiverFixture) -> Parsed<QuiverFixture<F>> {
    let vertices = raw.quiver.vertices.clone();
    let index = |name: &str, at: String| {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| FixtureError::at(at, format!("unknown vertex `{name}`")))
    };
    let edges = raw
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            Ok(Edge {
                name: a.name.clone(),
                source: index(&a.source, format!("$.quiver.arrows[{i}].source"))?,
                target: index(&a.target, format!("$.quiver.arrows[{i}].target"))?,
            })
        })
        .collect::<Parsed<Vec<_>>>()?;
    let quiver = Arc::new(Quiver::new(vertices.clone(), edges).map_err(|e| FixtureError::at("$.quiver", e))?);
    let relations = raw
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(RelationSpec { label: r.label.clone(), terms: terms(&quiver, &r.terms, &format!("$.relations[{i}].terms"))? })
        })
        .collect::<Parsed<Vec<_>>>()?;
    if !relations.is_empty() && raw.potential.is_some() {
        return Err(FixtureError::at("$", "give either `relations` or `potential`, not both"));
    }
    let potential = raw.potential.as_ref().map(|p| terms::<F>(&quiver, p, "$.potential")).transpose()?;
    if let Some(p) = &potential {
        for (i, (w, _)) in p.iter().enumerate() {
            if !w.is_cycle() || w.is_trivial() {
                return Err(FixtureError::at(format!("$.potential[{i}]"), "potential terms must be nontrivial cycles"));
            }
        }
    }
    let k = quiver.vertex_count();
    let moduli = raw
        .moduli
        .map(|m| {
            let d = dims(&quiver, m.dims, "$.moduli.dims")?;
            let sigma = match &m.sigma {
                Some(z) => charges(z, k, "$.moduli.sigma")?,
                None => StabilityParameter::equal(k),
            };
            let sigma_plus = m.sigma_plus.as_deref().map(|z| charges(z, k, "$.moduli.sigma_plus")).transpose()?;
            let sample_dims = match m.sample_dims {
                Some(s) => dims(&quiver, s, "$.moduli.sample_dims")?,
                None => d.clone(),
            };
            let limit = m.limit.map_or(DEFAULT_LIMIT, u128::from);
            Ok(ModuliSpec { dims: d, sigma, sigma_plus, samples: m.samples, sample_dims, limit })
        })
        .transpose()?;
    let ncdef = match raw.ncdef {
        Some(n) => NcdefSpec { dim_bound: n.dim_bound, limit: n.limit.map_or(DEFAULT_LIMIT, u128::from) },
        None => NcdefSpec { dim_bound: 3, limit: DEFAULT_LIMIT },
    };
    Ok(QuiverFixture { description: raw.description, quiver, relations, potential, moduli, ncdef })
}

/// Parse a fixture. `rng` is only consulted by randomised kinds.
pub fn parse_fixture<F: Field, R: Rng + ?Sized>(text: &str, rng: &mut R) -> Parsed<Fixture<F>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.as_str(), |(m, _)| m).to_string();
        FixtureError::at(format!("line {} column {}", e.line(), e.column()), message)
    })?;
    let header: Header = typed(value.clone())?;
    match header.schema_version {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(FixtureError::at("$.schema_version", format!("unsupported schema version {v}"))),
        None => return Err(FixtureError::at("$", "missing field `schema_version`")),
    }
    let kind = header.kind.ok_or_else(|| FixtureError::at("$", "missing field `kind`"))?;
    match kind.as_str() {
        "dga" => Ok(Fixture::Algebra(dga(typed(value)?)?)),
        "exterior" => Ok(Fixture::Algebra(exterior(typed(value)?)?)),
        "random_exterior" => {
            let raw: RawRandomExterior = typed(value)?;
            Ok(Fixture::Algebra(AlgebraFixture {
                kind,
                description: raw.description,
                algebra: random_exterior_dga(rng),
                pairing: pairing(raw.pairing)?,
                edge_names: raw.edge_names,
                vertex_names: raw.vertex_names,
            }))
        }
        "quiver" => Ok(Fixture::Quiver(quiver_fixture(typed(value)?)?)),
        other => Err(FixtureError::at("$.kind", format!("unknown fixture kind `{other}`"))),
    }
}

pub fn vector_json<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(F::to_json).collect())
}

/// Rows of scalars.
pub fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(&m.row(r))).collect())
}

/// Nonzero coordinates keyed by basis name.
pub fn sparse_json<F: Field>(names: &[String], v: &[F]) -> Value {
    let map: Map<String, Value> =
        names.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(n, x)| (n.clone(), x.to_json())).collect();
    Value::Object(map)
}

pub fn representation_json<F: Field>(rep: &Representation<F>) -> Value {
    let q = rep.quiver();
    let maps: Map<String, Value> =
        q.edges().iter().zip(rep.maps()).map(|(e, m)| (e.name.clone(), matrix_json(m))).collect();
    json!({ "dims": rep.dims().0, "maps": maps })
}

/// Terms in word order, each with its arrow names.
pub fn series_json<F: Field>(s: &PathSeries<F>) -> Value {
    let q = s.quiver();
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(w, c)| {
            let mut t = json!({ "word": w.edge_names(q), "coeff": c.to_json() });
            if w.is_trivial() {
                t["vertex"] = json!(q.vertex_name(w.start()));
            }
            t
        })
        .collect();
    json!({ "display": s.display(), "terms": terms })
}

/// Nonzero values on basis tuples, inputs and outputs by name.
pub fn multilinear_json<F: Field>(m: &MultilinearMap<F>, source: &GradedBasis, target: &[String]) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
        .map(|(tuple, v)| {
            let inputs: Vec<&str> = tuple.iter().map(|&j| source.names[j].as_str()).collect();
            json!({ "inputs": inputs, "value": sparse_json(target, v) })
        })
        .collect();
    json!({ "arity": m.arity(), "degree": m.degree(), "entries": entries })
}

pub fn graded_basis_json(b: &GradedBasis) -> Value {
    let items: Vec<Value> = (0..b.dim())
        .map(|j| json!({ "name": b.names[j], "degree": b.degrees[j], "block": [b.blocks[j].0, b.blocks[j].1] }))
        .collect();
    Value::Array(items)
}

/// One entry of a report's `"verdicts"` array.
pub fn verdict(name: &str, passed: bool, detail: impl Into<String>) -> Value {
    json!({ "name": name, "passed": passed, "detail": detail.into() })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
