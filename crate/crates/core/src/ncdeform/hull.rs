use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;

use super::algebra::QuotientAlgebra;
use super::tower::{NcTower, TowerLevel};

/// Outcome of comparing `R⁽ⁿ⁾` with `A⁽ⁿ⁾` at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullLevelReport {
    pub level: usize,
    pub algebra_dim: usize,
    pub endo_dim: usize,
    /// Normal words of `A⁽ⁿ⁾` by length.
    pub graded_dims: Vec<usize>,
    /// An explicit pointed-algebra isomorphism `A⁽ⁿ⁾ → R⁽ⁿ⁾` was certified.
    pub isomorphic: bool,
    /// `R⁽ⁿ⁾ → R⁽ⁿ⁻¹⁾` is a surjective algebra map; `None` at level zero.
    pub surjection: Option<bool>,
    /// `R⁽ⁿ⁻¹⁾ ⊗_{R⁽ⁿ⁾} E⁽ⁿ⁾ ≅ E⁽ⁿ⁻¹⁾`; `None` at level zero.
    pub base_change: Option<bool>,
    pub witness: Option<String>,
}

impl HullLevelReport {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.surjection != Some(false) && self.base_change != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReport {
    pub levels: Vec<HullLevelReport>,
}

impl HullReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(HullLevelReport::passed)
    }

    pub fn first_failure(&self) -> Option<&HullLevelReport> {
        self.levels.iter().find(|l| !l.passed())
    }
}

/// `Θ_i : e_i A → E_i`, `p ↦ g_i · p`, as per-vertex matrices.
fn theta<F: Field>(a: &QuotientAlgebra<F>, level: &TowerLevel<F>, i: usize) -> Vec<Matrix<F>> {
    let e = &level.summands[i];
    (0..a.quiver().vertex_count())
        .map(|v| {
            let cols: Vec<Vec<F>> = a.words_between(i, v).into_iter().map(|w| a.act_vec(e, w, &level.generators[i])).collect();
            Matrix::from_columns(e.dim(v), &cols)
        })
        .collect()
}

/// The endomorphism of `E` induced by left multiplication with the word
/// `x ∈ e_i A e_j`, transported along `Θ`.
fn transported<F: Field>(
    a: &QuotientAlgebra<F>,
    level: &TowerLevel<F>,
    thetas: &[Vec<Matrix<F>>],
    theta_inv: &[Vec<Matrix<F>>],
    x: usize,
) -> Vec<Matrix<F>> {
    let word = &a.words()[x];
    let (i, j) = (word.start(), word.end());
    let k = a.quiver().vertex_count();
    (0..k)
        .map(|v| {
            let source = a.words_between(j, v);
            let target = a.words_between(i, v);
            let mut lambda = Matrix::zeros(target.len(), source.len());
            for (c, &y) in source.iter().enumerate() {
                let prod = a.table().basis_product(x, y);
                for (r, &z) in target.iter().enumerate() {
                    lambda[(r, c)] = prod[z].clone();
                }
            }
            let block = thetas[i][v].mul(&lambda).mul(&theta_inv[j][v]);
            let n = level.module.dim(v);
            let mut full = Matrix::zeros(n, n);
            full.set_block(level.offsets[i][v], level.offsets[j][v], &block);
            full
        })
        .collect()
}

fn is_module_map<F: Field>(level: &TowerLevel<F>, phi: &[Matrix<F>]) -> bool {
    let q = level.module.quiver();
    (0..q.edge_count()).all(|e| level.module.map(e).mul(&phi[q.source(e)]) == phi[q.target(e)].mul(level.module.map(e)))
}

fn compare_level<F: Field>(a: &QuotientAlgebra<F>, level: &TowerLevel<F>) -> std::result::Result<(), String> {
    let r = &level.endo;
    if a.dim() != r.dim() {
        return Err(format!("dimension mismatch: dim A = {}, dim R = {}", a.dim(), r.dim()));
    }
    let k = a.quiver().vertex_count();
    let thetas: Vec<Vec<Matrix<F>>> = (0..k).map(|i| theta(a, level, i)).collect();
    let mut theta_inv = Vec::with_capacity(k);
    for (i, t) in thetas.iter().enumerate() {
        let mut inv = Vec::with_capacity(k);
        for (v, m) in t.iter().enumerate() {
            match m.inverse() {
                Some(x) => inv.push(x),
                None => return Err(format!("g_{} · A is not all of E_{} at vertex {}", i + 1, i + 1, v + 1)),
            }
        }
        theta_inv.push(inv);
    }
    let quiver = a.quiver();
    let name = |x: usize| a.words()[x].display(quiver);
    let mut coords = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        let phi = transported(a, level, &thetas, &theta_inv, x);
        if !is_module_map(level, &phi) {
            return Err(format!("left multiplication by {} is not a module map", name(x)));
        }
        match r.coordinates(&phi) {
            Some(c) => coords.push(c),
            None => return Err(format!("image of {} is not an endomorphism", name(x))),
        }
    }
    let f = Matrix::from_columns(r.dim(), &coords);
    if !f.is_invertible() {
        return Err("the induced map A → R is not bijective".into());
    }
    for i in 0..k {
        if coords[a.idempotent(i)] != r.idempotent(i) {
            return Err(format!("e_{} does not map to the projection onto E_{}", i + 1, i + 1));
        }
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs = r.table().mul(&coords[x], &coords[y]);
            let rhs = f.mul_vec(a.table().basis_product(x, y));
            if lhs != rhs {
                return Err(format!("f({})·f({}) ≠ f({} {})", name(x), name(y), name(x), name(y)));
            }
        }
    }
    Ok(())
}

/// Restriction `R⁽ⁿ⁾ → R⁽ⁿ⁻¹⁾` is a surjective unital algebra map.
fn check_surjection<F: Field>(upper: &TowerLevel<F>, lower: &TowerLevel<F>) -> std::result::Result<(), String> {
    let Some(res) = &upper.restriction else {
        return Err("an endomorphism does not preserve the kernel of E⁽ⁿ⁾ → E⁽ⁿ⁻¹⁾".into());
    };
    if res.rank() != lower.endo.dim() {
        return Err("restriction is not surjective".into());
    }
    if res.mul_vec(&upper.endo.unit()) != lower.endo.unit() {
        return Err("restriction is not unital".into());
    }
    let d = upper.endo.dim();
    for x in 0..d {
        for y in 0..d {
            let lhs = res.mul_vec(upper.endo.table().basis_product(x, y));
            let rhs = lower.endo.table().mul(&res.column(x), &res.column(y));
            if lhs != rhs {
                return Err(format!("restriction is not multiplicative on basis pair ({x}, {y})"));
            }
        }
    }
    Ok(())
}

/// With `J = ker(R⁽ⁿ⁾ → R⁽ⁿ⁻¹⁾)`, `R⁽ⁿ⁻¹⁾ ⊗ E⁽ⁿ⁾ = E⁽ⁿ⁾ / J·E⁽ⁿ⁾`, so the
/// base change is `E⁽ⁿ⁻¹⁾` exactly when `J·E⁽ⁿ⁾` is the kernel of the
/// projection.
fn check_base_change<F: Field>(upper: &TowerLevel<F>) -> std::result::Result<(), String> {
    let (Some(res), Some(p)) = (&upper.restriction, &upper.to_previous) else {
        return Err("no restriction map".into());
    };
    let ideal = res.kernel();
    for (v, pv) in p.iter().enumerate() {
        let n = upper.module.dim(v);
        let mut span = Matrix::zeros(n, 0);
        for c in 0..ideal.cols() {
            let phi = upper.endo.element(&ideal.column(c));
            span = span.hstack(&phi[v]);
        }
        let kernel_dim = n - pv.rank();
        if !pv.mul(&span).is_zero() || span.rank() != kernel_dim {
            return Err(format!("J·E differs from the kernel of E⁽ⁿ⁾ → E⁽ⁿ⁻¹⁾ at vertex {}", v + 1));
        }
    }
    Ok(())
}

/// Certify `R⁽ⁿ⁾ ≅ A⁽ⁿ⁾` at every level by transporting left multiplication
/// along `e_i A⁽ⁿ⁾ ≅ E_i⁽ⁿ⁾, p ↦ g_i·p`, and check the surjections and base
/// change between consecutive levels.
pub fn hull_compare<F: Field>(tower: &NcTower<F>) -> Result<HullReport> {
    let mut levels = Vec::with_capacity(tower.levels.len());
    for (n, level) in tower.levels.iter().enumerate() {
        let a = tower.algebra.with_truncation(n)?;
        let mut witness = None;
        let iso = compare_level(&a, level);
        if let Err(w) = &iso {
            witness = Some(format!("level {n}: {w}"));
        }
        let (surjection, base_change) = if n == 0 {
            (None, None)
        } else {
            let s = check_surjection(level, &tower.levels[n - 1]);
            let b = check_base_change(level);
            for r in [&s, &b] {
                if let (Err(w), None) = (r, &witness) {
                    witness = Some(format!("level {n}: {w}"));
                }
            }
            (Some(s.is_ok()), Some(b.is_ok()))
        };
        levels.push(HullLevelReport {
            level: n,
            algebra_dim: a.dim(),
            endo_dim: level.endo.dim(),
            graded_dims: a.graded_dims(),
            isomorphic: iso.is_ok(),
            surjection,
            base_change,
            witness,
        });
    }
    Ok(HullReport { levels })
}
