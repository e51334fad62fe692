use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::quiver::Representation;

use super::locus::{hom_dimension, is_nilpotent};
use super::stability::StabilityParameter;
use super::subrep::{candidate_subreps, enumerate_subreps, SubRepresentation, DEFAULT_SEARCH_LIMIT};

/// Random vectors per vertex whose closures are tried over infinite fields.
const SAMPLES: usize = 8;

/// Result of a destabilizer search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DestabilizerSearch<F> {
    pub destabilizer: Option<SubRepresentation<F>>,
    /// True when the absence of a destabilizer is proven.
    pub complete: bool,
    pub examined: usize,
}

/// Answer to a (semi)stability question with its evidence: either a
/// subrepresentation violating the inequality or a completeness attestation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict<F> {
    pub holds: bool,
    pub complete: bool,
    pub witness: Option<SubRepresentation<F>>,
}

impl<F> StabilityVerdict<F> {
    /// The answer is a theorem rather than a semi-decision.
    pub fn decided(&self) -> bool {
        self.complete || self.witness.is_some()
    }
}

fn pool<F: Field>(rep: &Representation<F>, limit: u128) -> Result<(Vec<SubRepresentation<F>>, bool)> {
    if F::elements().is_some() {
        Ok((enumerate_subreps(rep, limit)?, true))
    } else {
        Ok((candidate_subreps(rep, SAMPLES, 0), false))
    }
}

fn check_nonzero<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<()> {
    if rep.total_dim() == 0 {
        return Err(Error::InvalidArgument("stability is undefined for the zero representation".into()));
    }
    if param.vertex_count() != rep.quiver().vertex_count() {
        return Err(Error::ShapeMismatch("one charge per vertex required".into()));
    }
    Ok(())
}

/// Over an infinite field the candidate pool contains every subrepresentation
/// whose dimension vector is `0` or full at each vertex; the search is complete
/// when only such dimension vectors could violate the inequality.
fn only_forced_patterns<F: Field>(param: &StabilityParameter, rep: &Representation<F>, bad: &dyn Fn(Ordering) -> bool) -> Result<bool> {
    let d = rep.dims();
    for sub in d.sub_vectors() {
        if sub.is_zero() || sub == *d {
            continue;
        }
        let forced = sub.0.iter().zip(&d.0).all(|(&a, &m)| a == 0 || a == m);
        if !forced && bad(param.compare(&sub, d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn search<F: Field>(
    param: &StabilityParameter,
    rep: &Representation<F>,
    bad: &dyn Fn(Ordering) -> bool,
    limit: u128,
) -> Result<DestabilizerSearch<F>> {
    check_nonzero(param, rep)?;
    let (subs, exhaustive) = pool(rep, limit)?;
    let d = rep.dims();
    let mut best: Option<(Rational, SubRepresentation<F>)> = None;
    let mut examined = 0;
    for s in subs {
        if s.is_zero() || s.is_whole(rep) {
            continue;
        }
        examined += 1;
        if !bad(param.compare(s.dims(), d)?) {
            continue;
        }
        let mu = param.slope(s.dims())?;
        let better = match &best {
            None => true,
            Some((m, b)) => mu > *m || (mu == *m && s.dims().total() < b.dims().total()),
        };
        if better {
            best = Some((mu, s));
        }
    }
    let complete = exhaustive || only_forced_patterns(param, rep, bad)?;
    Ok(DestabilizerSearch { destabilizer: best.map(|(_, s)| s), complete, examined })
}

/// A proper nonzero subrepresentation of strictly larger slope, preferring
/// maximal slope, then minimal total dimension, then enumeration order.
pub fn find_destabilizer<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<DestabilizerSearch<F>> {
    find_destabilizer_with_limit(param, rep, DEFAULT_SEARCH_LIMIT)
}

pub fn find_destabilizer_with_limit<F: Field>(
    param: &StabilityParameter,
    rep: &Representation<F>,
    limit: u128,
) -> Result<DestabilizerSearch<F>> {
    search(param, rep, &|o| o == Ordering::Greater, limit)
}

pub fn is_semistable<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<StabilityVerdict<F>> {
    let s = find_destabilizer(param, rep)?;
    Ok(verdict(s))
}

/// No proper nonzero subrepresentation of slope `≥ μ(V)`.
pub fn is_stable<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<StabilityVerdict<F>> {
    let s = search(param, rep, &|o| o != Ordering::Less, DEFAULT_SEARCH_LIMIT)?;
    Ok(verdict(s))
}

fn verdict<F>(s: DestabilizerSearch<F>) -> StabilityVerdict<F> {
    StabilityVerdict { holds: s.destabilizer.is_none(), complete: s.complete, witness: s.destabilizer }
}

/// `0 = F₀ ⊂ F₁ ⊂ ⋯ ⊂ F_k = V` with stable quotients of slope `μ(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JHFiltration<F> {
    pub steps: Vec<SubRepresentation<F>>,
    pub factors: Vec<Representation<F>>,
}

impl<F: Field> JHFiltration<F> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Build a Jordan–Hölder filtration of a semistable representation over a
/// finite field: at each step take the smallest nonzero subrepresentation of
/// the current quotient with the same slope (which is then stable) and pull
/// it back.
pub fn jh_filtration<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<JHFiltration<F>> {
    jh_filtration_with_limit(param, rep, DEFAULT_SEARCH_LIMIT)
}

pub fn jh_filtration_with_limit<F: Field>(
    param: &StabilityParameter,
    rep: &Representation<F>,
    limit: u128,
) -> Result<JHFiltration<F>> {
    check_nonzero(param, rep)?;
    if F::elements().is_none() {
        return Err(Error::Unsupported(format!("Jordan–Hölder filtrations over {}", F::name())));
    }
    if find_destabilizer_with_limit(param, rep, limit)?.destabilizer.is_some() {
        return Err(Error::InvalidArgument("representation is not semistable".into()));
    }
    let d = rep.dims().clone();
    let mut current = SubRepresentation::zero(rep);
    let mut steps = vec![current.clone()];
    let mut factors = Vec::new();
    while !current.is_whole(rep) {
        let quotient = current.quotient(rep);
        let subs = enumerate_subreps(&quotient.representation, limit)?;
        let mut pick: Option<SubRepresentation<F>> = None;
        for s in subs {
            if s.is_zero() || param.compare(s.dims(), &d)? != Ordering::Equal {
                continue;
            }
            if pick.as_ref().map_or(true, |p| s.dims().total() < p.dims().total()) {
                pick = Some(s);
            }
        }
        let s = pick.expect("the quotient itself has the same slope");
        factors.push(s.restrict(&quotient.representation));
        current = current.lift(&quotient, &s);
        steps.push(current.clone());
    }
    Ok(JHFiltration { steps, factors })
}

/// Group representations into isomorphism classes, assuming any two with the
/// same dimension vector and a nonzero morphism are isomorphic (true for
/// simples, and for stables of a common slope).
pub fn group_isomorphic<F: Field>(reps: Vec<Representation<F>>) -> Result<Vec<(Representation<F>, usize)>> {
    let mut out: Vec<(Representation<F>, usize)> = Vec::new();
    'next: for r in reps {
        for (s, m) in out.iter_mut() {
            if s.dims() == r.dims() && hom_dimension(s, &r)? > 0 {
                *m += 1;
                continue 'next;
            }
        }
        out.push((r, 1));
    }
    Ok(out)
}

/// Same multiset of simple (or stable) factors up to isomorphism.
pub fn same_factors<F: Field>(a: &[(Representation<F>, usize)], b: &[(Representation<F>, usize)]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (r, m) in a {
        let mut found = false;
        for (s, n) in b {
            if r.dims() == s.dims() && hom_dimension(r, s)? > 0 {
                found = m == n;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `gr(V)`: the Jordan–Hölder factors with multiplicity.
pub fn graded_factors<F: Field>(param: &StabilityParameter, rep: &Representation<F>) -> Result<Vec<(Representation<F>, usize)>> {
    group_isomorphic(jh_filtration(param, rep)?.factors)
}

/// Composition factors with multiplicity. Nilpotent representations give the
/// vertex simples `S_i^{m_i}` over any field; otherwise a composition series is
/// built by exhaustive search, which needs a finite field.
pub fn semisimplify<F: Field>(rep: &Representation<F>) -> Result<Vec<(Representation<F>, usize)>> {
    semisimplify_with_limit(rep, DEFAULT_SEARCH_LIMIT)
}

pub fn semisimplify_with_limit<F: Field>(rep: &Representation<F>, limit: u128) -> Result<Vec<(Representation<F>, usize)>> {
    if is_nilpotent(rep) {
        let q = rep.quiver();
        return Ok((0..q.vertex_count())
            .filter(|&i| rep.dim(i) > 0)
            .map(|i| (Representation::vertex_simple(q.clone(), i), rep.dim(i)))
            .collect());
    }
    if F::elements().is_none() {
        return Err(Error::Unsupported(format!("semisimplification of a non-nilpotent representation over {}", F::name())));
    }
    let mut current = SubRepresentation::zero(rep);
    let mut factors = Vec::new();
    while !current.is_whole(rep) {
        let quotient = current.quotient(rep);
        let s = enumerate_subreps(&quotient.representation, limit)?
            .into_iter()
            .filter(|s| !s.is_zero())
            .min_by_key(|s| s.dims().total())
            .expect("nonzero quotient");
        factors.push(s.restrict(&quotient.representation));
        current = current.lift(&quotient, &s);
    }
    group_isomorphic(factors)
}
