use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vec_add_scaled, vec_is_zero};

use super::ainf::{for_each_tuple, sign, AInfinityStructure, GradedBasis, MultilinearMap};
use super::hodge::HodgeData;
use super::tree::BinaryTree;

/// Components `I_n : H^{⊗n} → A` (degree `1 − n`) of the A∞-quasi-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityMorphism<F> {
    components: Vec<MultilinearMap<F>>,
}

impl<F: Field> AInfinityMorphism<F> {
    /// `I_n` for `1 ≤ n ≤ max_arity`.
    pub fn component(&self, n: usize) -> Option<&MultilinearMap<F>> {
        n.checked_sub(1).and_then(|k| self.components.get(k))
    }

    pub fn max_arity(&self) -> usize {
        self.components.len()
    }
}

/// The transferred minimal model together with the quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct Transfer<F> {
    pub minimal: AInfinityStructure<F>,
    pub morphism: AInfinityMorphism<F>,
}

/// The graded basis of `H` recorded by the retract data.
pub fn cohomology_basis<F: Field>(hodge: &HodgeData<F>) -> GradedBasis {
    GradedBasis {
        names: hodge.names().to_vec(),
        degrees: hodge.degrees().to_vec(),
        blocks: hodge.blocks().to_vec(),
        vertex_count: hodge.algebra().vertex_count(),
    }
}

/// Run the homological perturbation recursion up to `max_arity`:
/// `λ_n = Σ_{k+l=n} (−1)^{k−1} μ(f_k ⊗ f_l)` with Koszul signs,
/// `f_1 = i`, `f_n = h λ_n`, `m_n = p λ_n`.
///
/// Summing `λ_n` by the split at the root enumerates every planar binary
/// tree exactly once, so this is the tree sum with shared subtrees.
pub fn transfer<F: Field>(hodge: &HodgeData<F>, max_arity: usize) -> Result<Transfer<F>> {
    if max_arity < 2 {
        return Err(Error::InvalidArgument("transfer needs max_arity ≥ 2".into()));
    }
    let a = hodge.algebra();
    let dim_a = a.dim();
    let basis = cohomology_basis(hodge);
    let hdeg = basis.degrees.clone();
    let (i, p, h) = (hodge.inclusion(), hodge.projection(), hodge.homotopy());

    // f[k] holds the nonzero values of f_k keyed by input tuple, with the
    // input degree sum cached.
    let mut f: Vec<HashMap<Vec<usize>, (i32, Vec<F>)>> = vec![HashMap::new()];
    let mut first = HashMap::new();
    for x in 0..basis.dim() {
        let col = i.column(x);
        if !vec_is_zero(&col) {
            first.insert(vec![x], (hdeg[x], col));
        }
    }
    f.push(first);

    let mut minimal = AInfinityStructure::new(basis.clone(), max_arity);
    let mut components = vec![{
        let mut m = MultilinearMap::zero(1, 0, dim_a);
        for (k, (_, v)) in &f[1] {
            m.set(k.clone(), v.clone());
        }
        m
    }];

    for n in 2..=max_arity {
        let mut lambda: HashMap<Vec<usize>, Vec<F>> = HashMap::new();
        for k in 1..n {
            let l = n - k;
            for (px, (pd, fv)) in &f[k] {
                for (sx, (sd, gv)) in &f[l] {
                    if !a.has_degree(pd + sd + 2 - n as i32) {
                        continue;
                    }
                    let prod = a.mul(fv, gv);
                    if vec_is_zero(&prod) {
                        continue;
                    }
                    let c: F = sign((k as i64 - 1) + (1 - l as i64) * *pd as i64);
                    let mut key = px.clone();
                    key.extend_from_slice(sx);
                    let slot = lambda.entry(key).or_insert_with(|| vec![F::zero(); dim_a]);
                    vec_add_scaled(slot, &c, &prod);
                }
            }
        }
        let mut m_n = MultilinearMap::zero(n, 2 - n as i32, basis.dim());
        let mut f_n_map = MultilinearMap::zero(n, 1 - n as i32, dim_a);
        let mut f_n = HashMap::new();
        for (key, lam) in lambda {
            if vec_is_zero(&lam) {
                continue;
            }
            let mv = p.mul_vec(&lam);
            if !vec_is_zero(&mv) {
                m_n.set(key.clone(), mv);
            }
            let fv = h.mul_vec(&lam);
            if !vec_is_zero(&fv) {
                let d: i32 = key.iter().map(|&x| hdeg[x]).sum();
                f_n_map.set(key.clone(), fv.clone());
                f_n.insert(key, (d, fv));
            }
        }
        minimal.set_product(m_n)?;
        components.push(f_n_map);
        f.push(f_n);
    }
    Ok(Transfer { minimal, morphism: AInfinityMorphism { components } })
}

/// The transferred product `m_n`.
pub fn transfer_m<F: Field>(hodge: &HodgeData<F>, n: usize) -> Result<MultilinearMap<F>> {
    let t = transfer(hodge, n.max(2))?;
    match n {
        0 | 1 => Err(Error::InvalidArgument("m_n is only transferred for n ≥ 2".into())),
        _ => Ok(t.minimal.m(n).expect("computed").clone()),
    }
}

/// The morphism component `I_n`.
pub fn transfer_i<F: Field>(hodge: &HodgeData<F>, n: usize) -> Result<MultilinearMap<F>> {
    if n == 0 {
        return Err(Error::InvalidArgument("I_n needs n ≥ 1".into()));
    }
    let t = transfer(hodge, n.max(2))?;
    Ok(t.morphism.component(n).expect("computed").clone())
}

/// Operation applied at the root of a tree term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeRoot {
    Projection,
    Homotopy,
}

/// Value of a single tree: leaves are `i(x)`, internal edges carry `h`, each
/// vertex multiplies with sign `(−1)^{k−1+(1−l)·(|x_1|+…+|x_k|)}` where `k`
/// and `l` are the leaf counts of its subtrees, and the root applies `p` or `h`.
pub fn tree_term<F: Field>(hodge: &HodgeData<F>, tree: &BinaryTree, root: TreeRoot, inputs: &[usize]) -> Vec<F> {
    assert_eq!(tree.leaves(), inputs.len());
    let v = tree_value(hodge, tree, inputs);
    match root {
        TreeRoot::Projection => hodge.projection().mul_vec(&v),
        TreeRoot::Homotopy => hodge.homotopy().mul_vec(&v),
    }
}

fn tree_value<F: Field>(hodge: &HodgeData<F>, tree: &BinaryTree, inputs: &[usize]) -> Vec<F> {
    match tree {
        BinaryTree::Leaf => hodge.inclusion().column(inputs[0]),
        BinaryTree::Node(left, right) => {
            let k = left.leaves();
            let l = right.leaves();
            let hat = |t: &BinaryTree, xs: &[usize]| match t {
                BinaryTree::Leaf => hodge.inclusion().column(xs[0]),
                _ => hodge.homotopy().mul_vec(&tree_value(hodge, t, xs)),
            };
            let lv = hat(left, &inputs[..k]);
            let rv = hat(right, &inputs[k..]);
            let dl: i64 = inputs[..k].iter().map(|&x| hodge.degrees()[x] as i64).sum();
            let c: F = sign((k as i64 - 1) + (1 - l as i64) * dl);
            let mut out = hodge.algebra().mul(&lv, &rv);
            for x in out.iter_mut() {
                *x = x.clone() * &c;
            }
            out
        }
    }
}

/// Outcome of the A∞-morphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub arities_checked: Vec<usize>,
    pub failure: Option<(usize, Vec<usize>)>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check the A∞-morphism equations
/// `Σ (−1)^{r+st} I(1^r ⊗ m_s ⊗ 1^t) = d I_n + Σ_{a+b=n} (−1)^{a−1} μ(I_a ⊗ I_b)`
/// for `1 ≤ n ≤ max_arity`.
pub fn check_morphism<F: Field>(hodge: &HodgeData<F>, t: &Transfer<F>, max_arity: usize) -> MorphismReport {
    let a = hodge.algebra();
    let dim_a = a.dim();
    let deg = hodge.degrees().to_vec();
    let top = max_arity.min(t.morphism.max_arity()).min(t.minimal.max_arity());
    let mut report = MorphismReport { arities_checked: vec![], failure: None };
    for n in 1..=top {
        report.arities_checked.push(n);
        let keep = |sum: i32| a.has_degree(sum + 2 - n as i32);
        let mut failure = None;
        for_each_tuple(&deg, n, &keep, &mut |tuple| {
            let mut lhs = vec![F::zero(); dim_a];
            for s in 2..=n {
                let m_s = t.minimal.m(s).expect("product present");
                let outer = t.morphism.component(n - s + 1).expect("component present");
                for r in 0..=(n - s) {
                    let tt = n - r - s;
                    let Some(inner) = m_s.get(&tuple[r..r + s]) else { continue };
                    let koszul: i64 = tuple[..r].iter().map(|&j| deg[j] as i64).sum::<i64>() * s as i64;
                    let c: F = sign((r + s * tt) as i64 + koszul);
                    let mut key: Vec<usize> = tuple[..r].to_vec();
                    key.push(0);
                    key.extend_from_slice(&tuple[r + s..]);
                    outer.apply_with_vector(&mut key, r, inner, &mut lhs, &c);
                }
            }
            let fn_ = t.morphism.component(n).expect("component present").value(tuple);
            let mut rhs = a.d(&fn_);
            for k in 1..n {
                let l = n - k;
                let fk = t.morphism.component(k).expect("component").value(&tuple[..k]);
                let fl = t.morphism.component(l).expect("component").value(&tuple[k..]);
                let dk: i64 = tuple[..k].iter().map(|&j| deg[j] as i64).sum();
                let c: F = sign((k as i64 - 1) + (1 - l as i64) * dk);
                vec_add_scaled(&mut rhs, &c, &a.mul(&fk, &fl));
            }
            if lhs == rhs {
                true
            } else {
                failure = Some((n, tuple.to_vec()));
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

/// `m_n` assembled by summing [`tree_term`] over all planar binary trees.
pub fn transfer_m_by_trees<F: Field>(hodge: &HodgeData<F>, n: usize) -> Result<MultilinearMap<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument("m_n is only transferred for n ≥ 2".into()));
    }
    let trees = super::tree::enumerate_trees(n)?;
    let mut out = MultilinearMap::zero(n, 2 - n as i32, hodge.dim());
    let keep = |sum: i32| hodge.degrees().contains(&(sum + 2 - n as i32));
    for_each_tuple(hodge.degrees(), n, &keep, &mut |tuple| {
        let mut acc = vec![F::zero(); hodge.dim()];
        for t in &trees {
            vec_add_scaled(&mut acc, &F::one(), &tree_term(hodge, t, TreeRoot::Projection, tuple));
        }
        out.set(tuple.to_vec(), acc);
        true
    });
    Ok(out)
}
