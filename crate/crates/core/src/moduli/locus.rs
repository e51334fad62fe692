use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::potential::RelationSet;
use crate::quiver::Representation;

/// Every relation evaluates to the zero matrix on `rep`.
pub fn satisfies_relations<F: Field>(rep: &Representation<F>, reln: &RelationSet<F>) -> Result<bool> {
    rep.same_quiver(reln.quiver())?;
    for r in reln.relations() {
        for (_, m) in r.series.evaluate_all(rep)? {
            if !m.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Iterate `W ↦ Σ_e u_e(W)` from `W = V`; after `k` steps `W` is spanned by
/// the images of all paths of length `k`, and it stabilizes within `Σ m_i` steps.
pub fn is_nilpotent<F: Field>(rep: &Representation<F>) -> bool {
    nilpotency_index(rep).is_some()
}

/// Least `k` with every path of length `k` acting by zero, if any.
pub fn nilpotency_index<F: Field>(rep: &Representation<F>) -> Option<usize> {
    let q = rep.quiver();
    let mut w: Vec<Matrix<F>> = rep.dims().0.iter().map(|&m| Matrix::identity(m)).collect();
    let mut k = 0;
    loop {
        if w.iter().all(|b| b.cols() == 0) {
            return Some(k);
        }
        let mut next: Vec<Matrix<F>> = rep.dims().0.iter().map(|&m| Matrix::zeros(m, 0)).collect();
        for e in 0..q.edge_count() {
            let (s, t) = (q.source(e), q.target(e));
            next[t] = next[t].hstack(&rep.map(e).mul(&w[s]));
        }
        let next: Vec<Matrix<F>> = next.iter().map(|m| m.column_basis()).collect();
        if next.iter().zip(&w).all(|(a, b)| a.cols() == b.cols()) {
            return None;
        }
        w = next;
        k += 1;
    }
}

/// `dim Hom(a, b)`: solutions of `φ_t u_e = u'_e φ_s` for all arrows.
pub fn hom_dimension<F: Field>(a: &Representation<F>, b: &Representation<F>) -> Result<usize> {
    let (system, unknowns) = hom_system(a, b)?;
    Ok(match system {
        Some(m) => unknowns - m.rank(),
        None => unknowns,
    })
}

/// A basis of `Hom(a, b)`, each morphism given by one `b_v × a_v` matrix per vertex.
pub fn hom_space<F: Field>(a: &Representation<F>, b: &Representation<F>) -> Result<Vec<Vec<Matrix<F>>>> {
    let (system, unknowns) = hom_system(a, b)?;
    let kernel = match system {
        Some(m) => m.kernel(),
        None => Matrix::identity(unknowns),
    };
    let k = a.quiver().vertex_count();
    Ok((0..kernel.cols())
        .map(|c| {
            let mut at = 0;
            (0..k)
                .map(|v| {
                    let (r, cc) = (b.dim(v), a.dim(v));
                    let mut m = Matrix::zeros(r, cc);
                    for i in 0..r {
                        for j in 0..cc {
                            m[(i, j)] = kernel[(at, c)].clone();
                            at += 1;
                        }
                    }
                    m
                })
                .collect()
        })
        .collect())
}

/// Linear system for `Hom(a, b)`; unknown `φ_v[r][c]` sits at
/// `offset_v + r · a_v + c`. `None` when there are no equations.
fn hom_system<F: Field>(a: &Representation<F>, b: &Representation<F>) -> Result<(Option<Matrix<F>>, usize)> {
    a.same_quiver(b.quiver())?;
    let q = a.quiver();
    let k = q.vertex_count();
    let mut offsets = Vec::with_capacity(k);
    let mut unknowns = 0;
    for v in 0..k {
        offsets.push(unknowns);
        unknowns += a.dim(v) * b.dim(v);
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * a.dim(v) + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for e in 0..q.edge_count() {
        let (s, t) = (q.source(e), q.target(e));
        let (ua, ub) = (a.map(e), b.map(e));
        for r in 0..b.dim(t) {
            for c in 0..a.dim(s) {
                let mut row = vec![F::zero(); unknowns];
                for j in 0..a.dim(t) {
                    row[var(t, r, j)] += &ua[(j, c)];
                }
                for j in 0..b.dim(s) {
                    row[var(s, j, c)] -= &ub[(r, j)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() || unknowns == 0 {
        return Ok((None, unknowns));
    }
    Ok((Some(Matrix::from_rows(rows)), unknowns))
}
