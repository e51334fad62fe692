//! Truncated elements of the formal path algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, NormedField, Rational};
use crate::matrix::Matrix;
use crate::quiver::{PathWord, Quiver, Representation};

/// Bits of precision used when bracketing n-th roots in [`PathSeries::growth_diagnostic`].
pub const GROWTH_ROOT_BITS: u32 = 16;

/// `f = Σ a_w · w` over words of length at most `order`.
///
/// `endpoints` is `Some((a, b))` when every word runs from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSeries<F> {
    quiver: Arc<Quiver>,
    order: usize,
    endpoints: Option<(usize, usize)>,
    terms: BTreeMap<PathWord, F>,
}

impl<F: Field> PathSeries<F> {
    pub fn zero(quiver: Arc<Quiver>, order: usize, endpoints: Option<(usize, usize)>) -> Self {
        Self { quiver, order, endpoints, terms: BTreeMap::new() }
    }

    /// Build from `(word, coefficient)` pairs; words longer than `order` are
    /// dropped and repeated words are summed.
    pub fn from_terms(
        quiver: Arc<Quiver>,
        order: usize,
        endpoints: Option<(usize, usize)>,
        terms: impl IntoIterator<Item = (PathWord, F)>,
    ) -> Result<Self> {
        let mut s = Self::zero(quiver, order, endpoints);
        for (w, c) in terms {
            s.add_term(w, c)?;
        }
        Ok(s)
    }

    /// A single word with coefficient one.
    pub fn word(quiver: Arc<Quiver>, order: usize, w: PathWord) -> Self {
        let ends = Some((w.start(), w.end()));
        let mut s = Self::zero(quiver, order, ends);
        s.add_term(w, F::one()).expect("endpoints match");
        s
    }

    pub fn add_term(&mut self, w: PathWord, c: F) -> Result<()> {
        if let Some((a, b)) = self.endpoints {
            if w.start() != a || w.end() != b {
                return Err(Error::InvalidArgument(format!(
                    "word {} does not run between the declared endpoints",
                    w.display(&self.quiver)
                )));
            }
        }
        if w.len() > self.order || c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(w).or_insert_with(F::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.endpoints
    }

    pub fn terms(&self) -> &BTreeMap<PathWord, F> {
        &self.terms
    }

    pub fn coefficient(&self, w: &PathWord) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_trivial_terms(&self) -> bool {
        self.terms.keys().any(PathWord::is_trivial)
    }

    pub fn min_word_length(&self) -> Option<usize> {
        self.terms.keys().map(PathWord::len).min()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            quiver: self.quiver.clone(),
            order,
            endpoints: self.endpoints,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= order).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.quiver.clone(), self.order, self.endpoints);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c)).collect();
        }
        out
    }

    fn check_same_quiver(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// Sum, truncated to the smaller order. Endpoints survive only if equal.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let order = self.order.min(other.order);
        let endpoints = if self.endpoints == other.endpoints { self.endpoints } else { None };
        let mut out = Self::zero(self.quiver.clone(), order, endpoints);
        for (w, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    /// Product by concatenation: the coefficient of `w` is the sum over
    /// splittings `w = w₁w₂` of `f(w₁)·g(w₂)`. Truncated to the smaller order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let order = self.order.min(other.order);
        let endpoints = match (self.endpoints, other.endpoints) {
            (Some((a, b)), Some((c, d))) if b == c => Some((a, d)),
            _ => None,
        };
        let mut out = Self::zero(self.quiver.clone(), order, endpoints);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() > order {
                    continue;
                }
                if let Some(w) = w1.concat(w2) {
                    out.add_term(w, c1.clone() * c2)?;
                }
            }
        }
        Ok(out)
    }

    /// `Σ a_w · u_{eₙ}⋯u_{e₁}` over the words from `a` to `b`, an
    /// `m_b × m_a` matrix. The trivial path contributes `a_ε · Id`.
    pub fn evaluate(&self, rep: &Representation<F>, a: usize, b: usize) -> Result<Matrix<F>> {
        rep.same_quiver(&self.quiver).map_err(|_| Error::ShapeMismatch("series and representation quivers differ".into()))?;
        self.quiver.check_vertex(a)?;
        self.quiver.check_vertex(b)?;
        let mut acc = Matrix::zeros(rep.dim(b), rep.dim(a));
        for (w, c) in &self.terms {
            if w.start() == a && w.end() == b {
                acc.add_scaled(c, &rep.word_matrix(w));
            }
        }
        Ok(acc)
    }

    /// Evaluate on the declared endpoints, or on every vertex pair if mixed.
    pub fn evaluate_all(&self, rep: &Representation<F>) -> Result<Vec<((usize, usize), Matrix<F>)>> {
        let pairs: Vec<(usize, usize)> = match self.endpoints {
            Some(p) => vec![p],
            None => {
                let mut ps: Vec<(usize, usize)> = self.terms.keys().map(|w| (w.start(), w.end())).collect();
                ps.sort();
                ps.dedup();
                ps
            }
        };
        pairs.into_iter().map(|(a, b)| Ok(((a, b), self.evaluate(rep, a, b)?))).collect()
    }

    /// Decompose into pieces with fixed endpoints.
    pub fn split_by_endpoints(&self) -> Vec<Self> {
        let mut groups: BTreeMap<(usize, usize), Vec<(PathWord, F)>> = BTreeMap::new();
        for (w, c) in &self.terms {
            groups.entry((w.start(), w.end())).or_default().push((w.clone(), c.clone()));
        }
        groups
            .into_iter()
            .map(|(ends, ts)| {
                Self::from_terms(self.quiver.clone(), self.order, Some(ends), ts).expect("grouped by endpoints")
            })
            .collect()
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({c})·{}", w.display(&self.quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<F: NormedField> PathSeries<F> {
    /// Heuristic growth rate of the coefficients:
    /// `max_{n ≥ 1} (max_{|w| = n} |a_w|)^{1/n}`, returned as a rational upper
    /// bound with [`GROWTH_ROOT_BITS`] bits after the binary point.
    ///
    /// A truncation cannot certify membership in the convergent subalgebra;
    /// this number only flags suspicious growth.
    pub fn growth_diagnostic(&self) -> Rational {
        let mut by_len: BTreeMap<usize, Rational> = BTreeMap::new();
        for (w, c) in &self.terms {
            if w.is_trivial() {
                continue;
            }
            let a2 = c.abs_squared();
            let slot = by_len.entry(w.len()).or_insert_with(<Rational as Field>::zero);
            if a2 > *slot {
                *slot = a2;
            }
        }
        by_len
            .into_iter()
            .map(|(n, a2)| root_upper_bound(&a2, 2 * n as u32))
            .max()
            .unwrap_or_else(<Rational as Field>::zero)
    }
}

/// Smallest `t / 2^GROWTH_ROOT_BITS` with `(t / 2^bits)^k ≥ x`.
pub fn root_upper_bound(x: &Rational, k: u32) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let scale = BigInt::from(1u8) << GROWTH_ROOT_BITS;
    let target = x * Rational::from_integer(num_traits::pow(scale.clone(), k as usize));
    let ok = |t: &BigInt| Rational::from_integer(num_traits::pow(t.clone(), k as usize)) >= target;
    let mut lo = BigInt::from(0u8);
    let mut hi = scale.clone();
    while !ok(&hi) {
        hi <<= 1;
    }
    // invariant: !ok(lo) (x > 0), ok(hi)
    while &hi - &lo > BigInt::from(1u8) {
        let mid: BigInt = (&lo + &hi) >> 1;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Rational::new(hi, scale)
}
