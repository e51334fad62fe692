use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{extend_basis, Matrix};
use crate::moduli::SubRepresentation;
use crate::quiver::{DimVector, Representation};

use super::algebra::QuotientAlgebra;

/// `P = ⊕_g e_{v_g} A`. Coordinates at vertex `j` are labelled by
/// `(summand, word)` with words from [`QuotientAlgebra::words_between`].
#[derive(Clone, Debug)]
pub struct ProjectiveTerm<F> {
    pub summands: Vec<usize>,
    pub module: Representation<F>,
    pub labels: Vec<Vec<(usize, usize)>>,
}

impl<F: Field> ProjectiveTerm<F> {
    fn new(a: &QuotientAlgebra<F>, summands: Vec<usize>) -> Self {
        let q = a.quiver();
        let k = q.vertex_count();
        let mut labels = vec![Vec::new(); k];
        let projectives: Vec<Representation<F>> = (0..k).map(|v| a.projective(v)).collect();
        for (g, &v) in summands.iter().enumerate() {
            for (j, slot) in labels.iter_mut().enumerate() {
                slot.extend(a.words_between(v, j).into_iter().map(|w| (g, w)));
            }
        }
        let dims = DimVector(labels.iter().map(Vec::len).collect());
        let mut offsets = vec![0usize; k];
        let mut maps: Vec<Matrix<F>> =
            q.edges().iter().map(|e| Matrix::zeros(dims.0[e.target], dims.0[e.source])).collect();
        for &v in &summands {
            let p = &projectives[v];
            for (e, m) in maps.iter_mut().enumerate() {
                m.set_block(offsets[q.target(e)], offsets[q.source(e)], p.map(e));
            }
            for (j, off) in offsets.iter_mut().enumerate() {
                *off += p.dim(j);
            }
        }
        let module = Representation::new(q.clone(), dims, maps).expect("block-diagonal maps have matching shapes");
        Self { summands, module, labels }
    }

    /// Coordinate of the generator `e_{v_g}` of summand `g`.
    pub fn generator(&self, a: &QuotientAlgebra<F>, g: usize) -> usize {
        let v = self.summands[g];
        let e = a.idempotent(v);
        self.labels[v].iter().position(|&(h, w)| h == g && w == e).expect("generator present")
    }
}

/// `⋯ → P₁ → P₀ → M → 0`. `differentials[k]` maps `P_{k+1} → P_k` per
/// vertex; `augmentation` maps `P₀ → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution<F> {
    pub terms: Vec<ProjectiveTerm<F>>,
    pub differentials: Vec<Vec<Matrix<F>>>,
    pub augmentation: Vec<Matrix<F>>,
}

impl<F: Field> ProjectiveResolution<F> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Composites vanish and ranks add up at every spot; `M` is the target of
    /// the augmentation.
    pub fn is_exact(&self, m: &Representation<F>) -> bool {
        let k = m.quiver().vertex_count();
        for v in 0..k {
            let mut maps: Vec<&Matrix<F>> = vec![&self.augmentation[v]];
            maps.extend(self.differentials.iter().map(|d| &d[v]));
            if self.augmentation[v].rank() != m.dim(v) {
                return false;
            }
            for pair in maps.windows(2) {
                let (outer, inner) = (pair[0], pair[1]);
                if !outer.mul(inner).is_zero() {
                    return false;
                }
                if inner.rank() + outer.rank() != outer.cols() {
                    return false;
                }
            }
        }
        true
    }
}

/// Top generators of a representation: a complement of `Σ_a im u_a` at
/// every vertex.
pub(crate) fn top_generators<F: Field>(m: &Representation<F>) -> Vec<(usize, Vec<F>)> {
    let q = m.quiver();
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        let mut rad = Matrix::zeros(m.dim(v), 0);
        for e in 0..q.edge_count() {
            if q.target(e) == v {
                rad = rad.hstack(m.map(e));
            }
        }
        let rad = rad.column_basis();
        let id = Matrix::identity(m.dim(v));
        for c in extend_basis(&rad, &id) {
            out.push((v, id.column(c)));
        }
    }
    out
}

/// Projective cover `P → M` sending the generator of each summand to a top
/// generator of `M`.
pub(crate) fn cover<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>) -> (ProjectiveTerm<F>, Vec<Matrix<F>>) {
    let gens = top_generators(m);
    let term = ProjectiveTerm::new(a, gens.iter().map(|(v, _)| *v).collect());
    let k = a.quiver().vertex_count();
    let maps = (0..k)
        .map(|j| {
            let cols: Vec<Vec<F>> = term.labels[j]
                .iter()
                .map(|&(g, w)| a.act_vec(m, w, &gens[g].1))
                .collect();
            Matrix::from_columns(m.dim(j), &cols)
        })
        .collect();
    (term, maps)
}

/// Resolve `m` by iterated projective covers of kernels, `length` steps
/// beyond `P₀` (trailing zero terms are dropped).
pub fn projective_resolution<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>, length: usize) -> Result<ProjectiveResolution<F>> {
    if length == 0 {
        return Err(Error::InvalidArgument("resolution length must be at least one".into()));
    }
    if !a.admits(m)? {
        return Err(Error::InvalidArgument("argument is not a module over the algebra".into()));
    }
    let k = a.quiver().vertex_count();
    let (p0, aug) = cover(a, m);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let mut last_map = aug.clone();
    for _ in 0..length {
        let prev = terms.last().expect("nonempty");
        let kernels: Vec<Matrix<F>> = last_map.iter().map(Matrix::kernel).collect();
        if kernels.iter().all(|b| b.cols() == 0) {
            break;
        }
        let sub = SubRepresentation::new(&prev.module, kernels)?;
        let kernel_rep = sub.restrict(&prev.module);
        let (next, to_kernel) = cover(a, &kernel_rep);
        let d: Vec<Matrix<F>> = (0..k).map(|v| sub.basis(v).mul(&to_kernel[v])).collect();
        terms.push(next);
        last_map = d.clone();
        differentials.push(d);
    }
    Ok(ProjectiveResolution { terms, differentials, augmentation: aug })
}

/// `dim Ext^k(M, N)` as the cohomology of `Hom(P_•, N)`, using
/// `Hom(e_v A, N) = N_v`.
pub fn ext_dimension_by_resolution<F: Field>(
    a: &QuotientAlgebra<F>,
    m: &Representation<F>,
    n: &Representation<F>,
    degree: usize,
) -> Result<usize> {
    if !a.admits(n)? {
        return Err(Error::InvalidArgument("argument is not a module over the algebra".into()));
    }
    let res = projective_resolution(a, m, degree + 1)?;
    let hom_dim = |t: usize| res.terms.get(t).map_or(0, |p| p.summands.iter().map(|&v| n.dim(v)).sum::<usize>());
    // δ_t : Hom(P_{t}, N) → Hom(P_{t+1}, N).
    let rank = |t: usize| -> usize {
        let (Some(src), Some(dst)) = (res.terms.get(t), res.terms.get(t + 1)) else { return 0 };
        let d = &res.differentials[t];
        let mut src_off = vec![0usize];
        for &v in &src.summands {
            src_off.push(src_off.last().unwrap() + n.dim(v));
        }
        let mut rows = Vec::new();
        for (g, &v) in dst.summands.iter().enumerate() {
            let col = d[v].column(dst.generator(a, g));
            // Value of φ∘d on generator g: Σ_{(h, w)} coeff · (φ_h acted on by w).
            let mut block = Matrix::zeros(n.dim(v), *src_off.last().unwrap());
            for (x, &(h, w)) in src.labels[v].iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                let act = a.act(n, w).scale(&col[x]);
                let piece = block.block(0, src_off[h], n.dim(v), n.dim(src.summands[h])).add(&act);
                block.set_block(0, src_off[h], &piece);
            }
            rows.push(block);
        }
        let stacked = rows.into_iter().fold(Matrix::zeros(0, *src_off.last().unwrap()), |acc, b| acc.vstack(&b));
        stacked.rank()
    };
    let kernel = hom_dim(degree) - rank(degree);
    let image = if degree == 0 { 0 } else { rank(degree - 1) };
    Ok(kernel - image)
}
