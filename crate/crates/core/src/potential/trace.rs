use std::collections::BTreeMap;

use crate::dg::AInfinityStructure;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, PathWord, Representation};

use super::presentation::ExtQuiverPresentation;
use super::relations::RelationSet;
use super::superpotential::SuperPotential;

/// `κ(u) = Σ_{n≥2} Σ m_n(e₁ᵛ, …, e_nᵛ) ⊗ u_{e_n}⋯u_{e₁}`, one block per
/// degree-two basis element of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McDefect<F> {
    pub blocks: Vec<McBlock<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McBlock<F> {
    pub class: String,
    pub endpoints: (usize, usize),
    pub matrix: Matrix<F>,
}

impl<F: Field> McDefect<F> {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.matrix.is_zero())
    }

    pub fn block(&self, class: &str) -> Option<&Matrix<F>> {
        self.blocks.iter().find(|b| b.class == class).map(|b| &b.matrix)
    }
}

pub fn mc_defect<F: Field>(
    ainf: &AInfinityStructure<F>,
    pres: &ExtQuiverPresentation,
    rep: &Representation<F>,
    max_arity: usize,
) -> Result<McDefect<F>> {
    rep.same_quiver(pres.quiver())?;
    let basis = ainf.basis();
    let q = pres.quiver();
    let classes = basis.of_degree(2);
    let mut blocks: Vec<McBlock<F>> = classes
        .iter()
        .map(|&z| {
            let (a, b) = basis.blocks[z];
            McBlock { class: basis.names[z].clone(), endpoints: (a, b), matrix: Matrix::zeros(rep.dim(b), rep.dim(a)) }
        })
        .collect();
    for n in 2..=max_arity.min(ainf.max_arity()) {
        let m = ainf.m(n).expect("arity within range");
        for (tuple, value) in m.entries() {
            let Some(edges) = pres.edges_of_tuple(tuple) else { continue };
            let word = PathWord::from_edges(q, &edges)?;
            let mut mat: Option<Matrix<F>> = None;
            for (block, &z) in blocks.iter_mut().zip(&classes) {
                if value[z].is_zero() {
                    continue;
                }
                let wm = mat.get_or_insert_with(|| rep.word_matrix(&word));
                if wm.shape() != block.matrix.shape() {
                    return Err(Error::ShapeMismatch(format!("word {} lands outside block {}", word.display(q), block.class)));
                }
                block.matrix.add_scaled(&value[z], wm);
            }
        }
    }
    Ok(McDefect { blocks })
}

/// `tr W(u) = Σ a_w · tr(u_{e_n}⋯u_{e₁})`.
pub fn trace_potential<F: Field>(w: &SuperPotential<F>, rep: &Representation<F>) -> Result<F> {
    rep.same_quiver(w.quiver())?;
    let mut s = F::zero();
    for (word, c) in w.series().terms() {
        s += &(c.clone() * &rep.word_matrix(word).trace());
    }
    Ok(s)
}

/// Matrix-entry variable `(u_e)_{row, col}`.
pub type Var = (usize, usize, usize);

/// Commutative polynomial in matrix entries; monomials are sorted variable lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial<F> {
    terms: BTreeMap<Vec<Var>, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn add_monomial(&mut self, mut vars: Vec<Var>, c: F) {
        if c.is_zero() {
            return;
        }
        vars.sort();
        let slot = self.terms.entry(vars.clone()).or_insert_with(F::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&vars);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Var>, F> {
        &self.terms
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (mono, c) in &self.terms {
            let k = mono.iter().filter(|&&x| x == v).count();
            if k == 0 {
                continue;
            }
            let mut rest = mono.clone();
            let pos = rest.iter().position(|&x| x == v).expect("present");
            rest.remove(pos);
            out.add_monomial(rest, c.clone() * &F::from_i64(k as i64));
        }
        out
    }

    pub fn evaluate(&self, rep: &Representation<F>) -> F {
        let mut s = F::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for &(e, r, col) in mono {
                t = t * &rep.map(e)[(r, col)];
            }
            s += &t;
        }
        s
    }
}

/// Expand `tr W` as a polynomial in the entries of matrices of the given
/// dimension vector: `tr(u_{e_n}⋯u_{e₁}) = Σ Π_k (u_{e_k})_{i_k, i_{k−1}}` with `i_n = i_0`.
pub fn trace_polynomial<F: Field>(w: &SuperPotential<F>, dims: &DimVector) -> Polynomial<F> {
    let q = w.quiver();
    let mut poly = Polynomial::zero();
    for (word, c) in w.series().terms() {
        let edges = word.edges();
        let start_dim = dims.get(q.source(edges[0]));
        for i0 in 0..start_dim {
            let mut stack: Vec<(usize, usize, Vec<Var>)> = vec![(0, i0, vec![])];
            while let Some((k, prev, vars)) = stack.pop() {
                if k == edges.len() {
                    if prev == i0 {
                        poly.add_monomial(vars, c.clone());
                    }
                    continue;
                }
                let e = edges[k];
                let rows = dims.get(q.target(e));
                for r in 0..rows {
                    if k + 1 == edges.len() && r != i0 {
                        continue;
                    }
                    let mut v = vars.clone();
                    v.push((e, r, prev));
                    stack.push((k + 1, r, v));
                }
            }
        }
    }
    poly
}

/// Exact gradient of `tr W` at `rep`, one matrix per arrow shaped like `u_e`.
pub fn trace_gradient<F: Field>(w: &SuperPotential<F>, rep: &Representation<F>) -> Result<Vec<Matrix<F>>> {
    rep.same_quiver(w.quiver())?;
    let poly = trace_polynomial(w, rep.dims());
    Ok((0..w.quiver().edge_count())
        .map(|e| {
            let (r, c) = rep.map(e).shape();
            let mut g = Matrix::zeros(r, c);
            for p in 0..r {
                for qq in 0..c {
                    g[(p, qq)] = poly.derivative((e, p, qq)).evaluate(rep);
                }
            }
            g
        })
        .collect())
}

/// Central difference `(tr W(u + h·E) − tr W(u − h·E)) / 2h` for every entry.
pub fn finite_difference_gradient<F: Field>(w: &SuperPotential<F>, rep: &Representation<F>, h: &F) -> Result<Vec<Matrix<F>>> {
    let two_h_inv = (h.clone() + h).inv().ok_or_else(|| Error::InvalidArgument("step must be nonzero".into()))?;
    let mut out = Vec::new();
    for e in 0..w.quiver().edge_count() {
        let (r, c) = rep.map(e).shape();
        let mut g = Matrix::zeros(r, c);
        for p in 0..r {
            for qq in 0..c {
                let shifted = |delta: &F| -> Result<F> {
                    let mut maps = rep.maps().to_vec();
                    maps[e][(p, qq)] += delta;
                    let moved = Representation::new(rep.quiver().clone(), rep.dims().clone(), maps)?;
                    trace_potential(w, &moved)
                };
                let plus = shifted(h)?;
                let minus = shifted(&-h.clone())?;
                g[(p, qq)] = (plus - minus) * &two_h_inv;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Entrywise comparison of the gradient of `tr W` with the evaluated relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritReport {
    pub entries_checked: usize,
    pub first_mismatch: Option<(String, usize, usize)>,
    pub gradient_vanishes: bool,
    pub relations_vanish: bool,
}

impl CritReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none() && self.gradient_vanishes == self.relations_vanish
    }
}

/// Check `∂ tr W / ∂(u_e)_{pq} = [∂_{eᵛ}W (u)]_{qp}` for every arrow and entry,
/// using the relation of `reln` attached to each arrow. Relations are
/// compared up to word length `order − 1` of `W`.
pub fn crit_equals_mc<F: Field>(w: &SuperPotential<F>, reln: &RelationSet<F>, rep: &Representation<F>) -> Result<CritReport> {
    rep.same_quiver(w.quiver())?;
    if reln.quiver().as_ref() != w.quiver().as_ref() {
        return Err(Error::QuiverMismatch);
    }
    let q = w.quiver();
    let grad = trace_gradient(w, rep)?;
    let common = w.order().saturating_sub(1);
    let mut report = CritReport { entries_checked: 0, first_mismatch: None, gradient_vanishes: true, relations_vanish: true };
    for e in 0..q.edge_count() {
        let rel = reln
            .for_edge(e)
            .ok_or_else(|| Error::InvalidArgument(format!("no relation for arrow {}", q.edge(e).name)))?;
        let value = rel.series.truncate(common).evaluate(rep, q.target(e), q.source(e))?;
        if !value.is_zero() {
            report.relations_vanish = false;
        }
        let g = &grad[e];
        if !g.is_zero() {
            report.gradient_vanishes = false;
        }
        for p in 0..g.rows() {
            for qq in 0..g.cols() {
                report.entries_checked += 1;
                if g[(p, qq)] != value[(qq, p)] && report.first_mismatch.is_none() {
                    report.first_mismatch = Some((q.edge(e).name.clone(), p, qq));
                }
            }
        }
    }
    Ok(report)
}
