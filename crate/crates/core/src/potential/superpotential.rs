use std::sync::Arc;

use crate::dg::{for_each_tuple, AInfinityStructure};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{PathSeries, PathWord, Quiver};

use super::presentation::{CyclicPairing, ExtQuiverPresentation};
use super::relations::{relations_from_products, DualBasis, Provenance, Relation, RelationSet};

/// A linear combination of cycles modulo rotation, stored on the
/// lexicographically minimal rotation of each cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPotential<F> {
    series: PathSeries<F>,
}

impl<F: Field> SuperPotential<F> {
    pub fn zero(quiver: Arc<Quiver>, order: usize) -> Self {
        Self { series: PathSeries::zero(quiver, order, None) }
    }

    /// Collect arbitrary cycles, moving each coefficient to the canonical
    /// rotation of its word.
    pub fn from_terms(quiver: Arc<Quiver>, order: usize, terms: impl IntoIterator<Item = (PathWord, F)>) -> Result<Self> {
        let mut w = Self::zero(quiver, order);
        for (word, c) in terms {
            w.add_cycle(word, c)?;
        }
        Ok(w)
    }

    pub fn add_cycle(&mut self, word: PathWord, c: F) -> Result<()> {
        if !word.is_cycle() || word.is_trivial() {
            return Err(Error::InvalidArgument(format!(
                "{} is not a nontrivial cycle",
                word.display(self.series.quiver())
            )));
        }
        let canon = word.canonical_rotation(self.series.quiver());
        self.series.add_term(canon, c)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.series.quiver()
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &PathSeries<F> {
        &self.series
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn coefficient(&self, word: &PathWord) -> F {
        self.series.coefficient(&word.canonical_rotation(self.quiver()))
    }

    pub fn display(&self) -> String {
        self.series.display()
    }
}

/// Outcome of the cyclic-symmetry check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReport {
    pub arities_checked: Vec<usize>,
    pub failure: Option<(usize, Vec<usize>)>,
}

impl CyclicReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verify `(m_{n−1}(a₁, …, a_{n−1}), a_n) = (m_{n−1}(a₂, …, a_n), a₁)` on all
/// tuples of degree-one basis elements, for `2 ≤ n − 1 ≤ max_arity`.
pub fn check_cyclic<F: Field>(ainf: &AInfinityStructure<F>, pairing: &CyclicPairing<F>, max_arity: usize) -> CyclicReport {
    let basis = ainf.basis();
    let ones = basis.of_degree(1);
    let top = max_arity.min(ainf.max_arity());
    let mut report = CyclicReport { arities_checked: vec![], failure: None };
    let sub_degrees = vec![0; ones.len()];
    for k in 2..=top {
        report.arities_checked.push(k);
        let m = ainf.m(k).expect("arity within range");
        let mut failure = None;
        for_each_tuple(&sub_degrees, k + 1, &|_| true, &mut |local| {
            let t: Vec<usize> = local.iter().map(|&i| ones[i]).collect();
            let lhs = pairing.pair_with_basis(&m.value(&t[..k]), t[k]);
            let rhs = pairing.pair_with_basis(&m.value(&t[1..]), t[0]);
            if lhs == rhs {
                true
            } else {
                failure = Some((k, t));
                false
            }
        });
        if failure.is_some() {
            report.failure = failure;
            break;
        }
    }
    report
}

/// `W = Σ_{n≥3} Σ a_{e₁…e_n} e₁⋯e_n` with
/// `a = (1/n)(m_{n−1}(e₁ᵛ, …, e_{n−1}ᵛ), e_nᵛ)`, for cycles of length at most
/// `order` (so products up to arity `order − 1` are used).
pub fn build_potential<F: Field>(
    ainf: &AInfinityStructure<F>,
    pairing: &CyclicPairing<F>,
    pres: &ExtQuiverPresentation,
    order: usize,
) -> Result<SuperPotential<F>> {
    let p = F::characteristic();
    if p != 0 {
        return Err(Error::PositiveCharacteristic(p));
    }
    if order < 3 {
        return Ok(SuperPotential::zero(pres.quiver().clone(), order));
    }
    if order - 1 > ainf.max_arity() {
        return Err(Error::InvalidArgument(format!(
            "a potential of order {order} needs products up to arity {}",
            order - 1
        )));
    }
    let report = check_cyclic(ainf, pairing, order - 1);
    if let Some((k, tuple)) = report.failure {
        let names: Vec<&str> = tuple.iter().map(|&h| ainf.basis().names[h].as_str()).collect();
        return Err(Error::NotCyclic(format!("arity {k} on ({})", names.join(", "))));
    }
    potential_terms(ainf, pairing, pres, order)
}

/// The coefficient formula without the cyclicity precondition.
fn potential_terms<F: Field>(
    ainf: &AInfinityStructure<F>,
    pairing: &CyclicPairing<F>,
    pres: &ExtQuiverPresentation,
    order: usize,
) -> Result<SuperPotential<F>> {
    let q = pres.quiver().clone();
    let mut w = SuperPotential::zero(q.clone(), order);
    for n in 3..=order {
        let m = ainf.m(n - 1).expect("arity within range");
        let inv_n = F::from_i64(n as i64).inv().expect("characteristic zero");
        for (tuple, value) in m.entries() {
            let Some(mut edges) = pres.edges_of_tuple(tuple) else { continue };
            for last in 0..q.edge_count() {
                let c = pairing.pair_with_basis(value, pres.dual(last));
                if c.is_zero() {
                    continue;
                }
                edges.push(last);
                let word = PathWord::from_edges(&q, &edges)?;
                edges.pop();
                if !word.is_cycle() {
                    return Err(Error::NotCyclic(format!("{} pairs nontrivially but is not a cycle", word.display(&q))));
                }
                w.add_cycle(word, c * &inv_n)?;
            }
        }
    }
    Ok(w)
}

/// `∂_{eᵛ} W = Σ_a eᵛ(e_a) e_{a+1}⋯e_n e₁⋯e_{a−1}`, a series from `t(e)` to `s(e)`.
pub fn cyclic_derivative<F: Field>(w: &SuperPotential<F>, e: usize) -> Result<PathSeries<F>> {
    let q = w.quiver().clone();
    if e >= q.edge_count() {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    let order = w.order().saturating_sub(1);
    let mut out = PathSeries::zero(q.clone(), order, Some((q.target(e), q.source(e))));
    for (word, c) in w.series().terms() {
        let n = word.len();
        for a in 0..n {
            if word.edges()[a] != e {
                continue;
            }
            let rest: Vec<usize> = (1..n).map(|k| word.edges()[(a + k) % n]).collect();
            let piece = if rest.is_empty() { PathWord::trivial(q.target(e)) } else { PathWord::from_edges(&q, &rest)? };
            out.add_term(piece, c.clone())?;
        }
    }
    Ok(out)
}

/// All cyclic derivatives as a relation set.
pub fn jacobian_relations<F: Field>(w: &SuperPotential<F>) -> Result<RelationSet<F>> {
    let q = w.quiver().clone();
    let relations = (0..q.edge_count())
        .map(|e| {
            Ok(Relation { label: format!("∂{}", q.edge(e).name), edge: Some(e), series: cyclic_derivative(w, e)? })
        })
        .collect::<Result<Vec<_>>>()?;
    RelationSet::new(q, relations, Provenance::PotentialDerivative)
}

/// First disagreement between the two relation sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMismatch<F> {
    pub edge: String,
    pub word: String,
    pub from_products: F,
    pub from_potential: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianReport<F> {
    pub order: usize,
    pub cyclic: bool,
    pub mismatch: Option<JacobianMismatch<F>>,
}

impl<F> JacobianReport<F> {
    pub fn passed(&self) -> bool {
        self.cyclic && self.mismatch.is_none()
    }
}

/// Compare the product relations read off with the pairing-dual basis
/// against `∂W`, word by word up to length `order`. The potential is formed
/// even when cyclicity fails so that the offending coefficients can be shown.
pub fn verify_jacobian_identity<F: Field>(
    ainf: &AInfinityStructure<F>,
    pairing: &CyclicPairing<F>,
    pres: &ExtQuiverPresentation,
    order: usize,
) -> Result<JacobianReport<F>> {
    let rel = relations_from_products(ainf, pres, DualBasis::Pairing(pairing), order)?;
    let p = F::characteristic();
    if p != 0 {
        return Err(Error::PositiveCharacteristic(p));
    }
    let cyclic = check_cyclic(ainf, pairing, order).passed();
    let w = if order + 1 < 3 {
        SuperPotential::zero(pres.quiver().clone(), order + 1)
    } else {
        potential_terms(ainf, pairing, pres, order + 1)?
    };
    let jac = jacobian_relations(&w)?;
    let q = pres.quiver();
    for e in 0..q.edge_count() {
        let a = &rel.for_edge(e).expect("one relation per arrow").series;
        let b = &jac.for_edge(e).expect("one relation per arrow").series;
        let mut words: Vec<&PathWord> = a.terms().keys().chain(b.terms().keys()).collect();
        words.sort();
        words.dedup();
        for word in words {
            let (x, y) = (a.coefficient(word), b.coefficient(word));
            if x != y {
                return Ok(JacobianReport {
                    order,
                    cyclic,
                    mismatch: Some(JacobianMismatch {
                        edge: q.edge(e).name.clone(),
                        word: word.display(q),
                        from_products: x,
                        from_potential: y,
                    }),
                });
            }
        }
    }
    Ok(JacobianReport { order, cyclic, mismatch: None })
}
