use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vec_add_scaled, vec_is_zero};

/// Names, degrees and vertex blocks of a graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    pub blocks: Vec<(usize, usize)>,
    pub vertex_count: usize,
}

impl GradedBasis {
    pub fn new(names: Vec<String>, degrees: Vec<i32>, blocks: Vec<(usize, usize)>, vertex_count: usize) -> Result<Self> {
        if names.len() != degrees.len() || names.len() != blocks.len() {
            return Err(Error::ShapeMismatch("graded basis label lengths differ".into()));
        }
        Ok(Self { names, degrees, blocks, vertex_count })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn degree_sum(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&j| self.degrees[j]).sum()
    }

    pub fn has_degree(&self, k: i32) -> bool {
        self.degrees.contains(&k)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn of_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.degrees[j] == k).collect()
    }
}

/// `(-1)^k` as a field element.
pub(crate) fn sign<F: Field>(k: i64) -> F {
    if k.rem_euclid(2) == 0 {
        F::one()
    } else {
        -F::one()
    }
}

/// A multilinear map `V^{⊗n} → W` stored by its values on basis tuples.
/// Tuples absent from the table map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap<F> {
    arity: usize,
    degree: i32,
    target_dim: usize,
    entries: BTreeMap<Vec<usize>, Vec<F>>,
}

impl<F: Field> MultilinearMap<F> {
    pub fn zero(arity: usize, degree: i32, target_dim: usize) -> Self {
        Self { arity, degree, target_dim, entries: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Vec<F>> {
        self.entries.get(tuple)
    }

    /// Value on a basis tuple, zero vector when absent.
    pub fn value(&self, tuple: &[usize]) -> Vec<F> {
        self.entries.get(tuple).cloned().unwrap_or_else(|| vec![F::zero(); self.target_dim])
    }

    pub fn set(&mut self, tuple: Vec<usize>, value: Vec<F>) {
        assert_eq!(tuple.len(), self.arity);
        assert_eq!(value.len(), self.target_dim);
        if vec_is_zero(&value) {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, value);
        }
    }

    pub fn add_to(&mut self, tuple: Vec<usize>, c: &F, value: &[F]) {
        let slot = self.entries.entry(tuple.clone()).or_insert_with(|| vec![F::zero(); self.target_dim]);
        vec_add_scaled(slot, c, value);
        if vec_is_zero(slot) {
            self.entries.remove(&tuple);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<F>)> {
        self.entries.iter()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Evaluate on arbitrary input vectors by multilinear expansion.
    pub fn apply(&self, inputs: &[&[F]]) -> Vec<F> {
        assert_eq!(inputs.len(), self.arity);
        let mut out = vec![F::zero(); self.target_dim];
        for (tuple, value) in &self.entries {
            let mut c = F::one();
            for (slot, &j) in tuple.iter().enumerate() {
                let x = &inputs[slot][j];
                if x.is_zero() {
                    c = F::zero();
                    break;
                }
                c = c * x;
            }
            vec_add_scaled(&mut out, &c, value);
        }
        out
    }

    /// Evaluate with all slots basis elements except slot `pos`, which is a vector.
    pub fn apply_with_vector(&self, tuple: &mut Vec<usize>, pos: usize, v: &[F], out: &mut [F], scale: &F) {
        let saved = tuple[pos];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            tuple[pos] = j;
            if let Some(val) = self.entries.get(tuple.as_slice()) {
                let c = scale.clone() * x;
                vec_add_scaled(out, &c, val);
            }
        }
        tuple[pos] = saved;
    }
}

/// A minimal A∞-structure on a graded space: products `m_n` of degree
/// `2 − n` for `2 ≤ n ≤ max_arity`, with `m_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityStructure<F> {
    basis: GradedBasis,
    products: BTreeMap<usize, MultilinearMap<F>>,
    max_arity: usize,
}

impl<F: Field> AInfinityStructure<F> {
    pub fn new(basis: GradedBasis, max_arity: usize) -> Self {
        let dim = basis.dim();
        let products = (2..=max_arity).map(|n| (n, MultilinearMap::zero(n, 2 - n as i32, dim))).collect();
        Self { basis, products, max_arity }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Highest arity for which `m_n` is known.
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn m(&self, n: usize) -> Option<&MultilinearMap<F>> {
        self.products.get(&n)
    }

    pub fn m_mut(&mut self, n: usize) -> Option<&mut MultilinearMap<F>> {
        self.products.get_mut(&n)
    }

    pub fn set_product(&mut self, map: MultilinearMap<F>) -> Result<()> {
        let n = map.arity();
        if n < 2 || n > self.max_arity || map.target_dim() != self.dim() {
            return Err(Error::InvalidArgument(format!("cannot install a product of arity {n}")));
        }
        self.products.insert(n, map);
        Ok(())
    }

    /// `m_n` on basis elements; `None` when `n` exceeds the known range.
    pub fn eval_basis(&self, tuple: &[usize]) -> Option<Vec<F>> {
        match tuple.len() {
            0 => None,
            1 => Some(vec![F::zero(); self.dim()]),
            n => self.products.get(&n).map(|m| m.value(tuple)),
        }
    }

    pub fn eval(&self, inputs: &[&[F]]) -> Option<Vec<F>> {
        match inputs.len() {
            0 => None,
            1 => Some(vec![F::zero(); self.dim()]),
            n => self.products.get(&n).map(|m| m.apply(inputs)),
        }
    }
}

/// Outcome of the Stasheff check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StasheffReport<F> {
    pub arities_checked: Vec<usize>,
    pub failure: Option<StasheffFailure<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StasheffFailure<F> {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub value: Vec<F>,
}

impl<F> StasheffReport<F> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Visit every basis tuple of length `n` whose degree sum satisfies `keep`.
pub(crate) fn for_each_tuple(
    degrees: &[i32],
    n: usize,
    keep: &dyn Fn(i32) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        degrees: &[i32],
        n: usize,
        tuple: &mut Vec<usize>,
        sum: i32,
        keep: &dyn Fn(i32) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if tuple.len() == n {
            return if keep(sum) { visit(tuple) } else { true };
        }
        for j in 0..degrees.len() {
            tuple.push(j);
            let go = rec(degrees, n, tuple, sum + degrees[j], keep, visit);
            tuple.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(degrees, n, &mut Vec::with_capacity(n), 0, keep, visit)
}

/// Evaluate the Stasheff expression
/// `Σ (−1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)` on one basis tuple, with
/// Koszul signs from passing `m_s` over the first `r` inputs.
pub fn stasheff_value<F: Field>(ainf: &AInfinityStructure<F>, tuple: &[usize]) -> Option<Vec<F>> {
    let n = tuple.len();
    let dim = ainf.dim();
    let deg = &ainf.basis().degrees;
    let mut out = vec![F::zero(); dim];
    for s in 2..n {
        let inner_map = ainf.m(s)?;
        let outer_map = ainf.m(n - s + 1)?;
        for r in 0..=(n - s) {
            let t = n - r - s;
            let Some(inner) = inner_map.get(&tuple[r..r + s]) else { continue };
            let koszul: i64 = tuple[..r].iter().map(|&j| deg[j] as i64).sum::<i64>() * s as i64;
            let c: F = sign((r + s * t) as i64 + koszul);
            let mut outer: Vec<usize> = Vec::with_capacity(n - s + 1);
            outer.extend_from_slice(&tuple[..r]);
            outer.push(0);
            outer.extend_from_slice(&tuple[r + s..]);
            outer_map.apply_with_vector(&mut outer, r, inner, &mut out, &c);
        }
    }
    Some(out)
}

/// Check the Stasheff identities in arities `3..=max_arity + 1` (the identity
/// of arity `n` only involves `m_k` with `k < n`). Arity `max_arity + 1`
/// is checked only if all products up to `max_arity` are present.
pub fn check_stasheff<F: Field>(ainf: &AInfinityStructure<F>, max_arity: usize) -> StasheffReport<F> {
    let top = (max_arity.min(ainf.max_arity())) + 1;
    let deg = ainf.basis().degrees.clone();
    let mut report = StasheffReport { arities_checked: vec![], failure: None };
    for n in 3..=top {
        report.arities_checked.push(n);
        let target_degree_ok = |sum: i32| ainf.basis().has_degree(sum + 3 - n as i32);
        let mut failure = None;
        for_each_tuple(&deg, n, &target_degree_ok, &mut |tuple| {
            let v = stasheff_value(ainf, tuple).expect("products present");
            if vec_is_zero(&v) {
                true
            } else {
                failure = Some(StasheffFailure { arity: n, inputs: tuple.to_vec(), value: v });
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
