use std::sync::Arc;

use crate::dg::AInfinityStructure;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{PathSeries, PathWord, Quiver};

use super::presentation::{CyclicPairing, ExtQuiverPresentation};

/// Where a relation set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Contractions of the A∞-products against a basis of `(H²)ᵛ`.
    Products,
    /// Cyclic derivatives of a superpotential.
    PotentialDerivative,
    /// Supplied directly, e.g. read from a fixture file.
    Explicit,
}

/// One relation: a label, the arrow it is dual to (if any) and its series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub label: String,
    pub edge: Option<usize>,
    pub series: PathSeries<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet<F> {
    quiver: Arc<Quiver>,
    relations: Vec<Relation<F>>,
    provenance: Provenance,
}

impl<F: Field> RelationSet<F> {
    pub fn new(quiver: Arc<Quiver>, relations: Vec<Relation<F>>, provenance: Provenance) -> Result<Self> {
        for r in &relations {
            if r.series.terms().keys().any(|w| w.len() < 2) {
                return Err(Error::InvalidArgument(format!("relation {} has words shorter than two", r.label)));
            }
        }
        Ok(Self { quiver, relations, provenance })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn for_edge(&self, e: usize) -> Option<&Relation<F>> {
        self.relations.iter().find(|r| r.edge == Some(e))
    }

    /// Drop relations whose series is identically zero.
    pub fn nonzero(&self) -> Self {
        Self {
            quiver: self.quiver.clone(),
            relations: self.relations.iter().filter(|r| !r.series.is_zero()).cloned().collect(),
            provenance: self.provenance,
        }
    }
}

/// Basis of `(H²)ᵛ` used to read off relations.
#[derive(Clone, Copy, Debug)]
pub enum DualBasis<'a, F> {
    /// `o_e(x) = (x, eᵛ)`, one functional per arrow.
    Pairing(&'a CyclicPairing<F>),
    /// Coordinate functionals of the `H`-basis of degree two.
    Coordinates,
}

/// The relations `f_o = Σ_{n≥2} Σ_w ⟨o, m_n(e₁ᵛ, …, e_nᵛ)⟩ · e₁⋯e_n`, for words
/// of length at most `order`.
pub fn relations_from_products<F: Field>(
    ainf: &AInfinityStructure<F>,
    pres: &ExtQuiverPresentation,
    dual: DualBasis<'_, F>,
    order: usize,
) -> Result<RelationSet<F>> {
    if order > ainf.max_arity() {
        return Err(Error::InvalidArgument(format!(
            "relations to order {order} need products up to arity {order}, have {}",
            ainf.max_arity()
        )));
    }
    let q = pres.quiver().clone();
    let basis = ainf.basis();
    // (label, edge, functional as a vector on H, endpoints)
    let functionals: Vec<(String, Option<usize>, Vec<F>, (usize, usize))> = match dual {
        DualBasis::Pairing(p) => (0..q.edge_count())
            .map(|e| {
                let ev = pres.dual(e);
                let f: Vec<F> = (0..basis.dim()).map(|x| p.gram()[(x, ev)].clone()).collect();
                (format!("∂{}", q.edge(e).name), Some(e), f, (q.target(e), q.source(e)))
            })
            .collect(),
        DualBasis::Coordinates => basis
            .of_degree(2)
            .into_iter()
            .map(|z| {
                let mut f = vec![F::zero(); basis.dim()];
                f[z] = F::one();
                (basis.names[z].clone(), None, f, basis.blocks[z])
            })
            .collect(),
    };
    let mut series: Vec<PathSeries<F>> =
        functionals.iter().map(|(_, _, _, ends)| PathSeries::zero(q.clone(), order, Some(*ends))).collect();
    for n in 2..=order {
        let m = ainf.m(n).expect("arity within range");
        for (tuple, value) in m.entries() {
            let Some(edges) = pres.edges_of_tuple(tuple) else { continue };
            let word = PathWord::from_edges(&q, &edges)?;
            for ((_, _, f, _), s) in functionals.iter().zip(series.iter_mut()) {
                let mut c = F::zero();
                for (x, y) in value.iter().zip(f) {
                    if !x.is_zero() && !y.is_zero() {
                        c += &(x.clone() * y);
                    }
                }
                if !c.is_zero() {
                    s.add_term(word.clone(), c)?;
                }
            }
        }
    }
    let relations = functionals
        .into_iter()
        .zip(series)
        .map(|((label, edge, _, _), series)| Relation { label, edge, series })
        .collect();
    RelationSet::new(q, relations, Provenance::Products)
}
