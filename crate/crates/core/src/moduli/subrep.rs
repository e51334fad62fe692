use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{extend_basis, Matrix};
use crate::quiver::{DimVector, Representation};

/// Default cap on the number of candidate subspace families visited by an
/// exhaustive search.
pub const DEFAULT_SEARCH_LIMIT: u128 = 2_000_000;

/// An arrow-invariant family `W_i ⊆ V_i`, each `W_i` given by the columns of
/// a reduced basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRepresentation<F> {
    dims: DimVector,
    bases: Vec<Matrix<F>>,
}

impl<F: Field> SubRepresentation<F> {
    /// Build from spanning sets; fails if the family is not arrow-invariant.
    pub fn new(rep: &Representation<F>, spans: Vec<Matrix<F>>) -> Result<Self> {
        let sub = Self::from_spans(rep, spans)?;
        if !sub.is_invariant(rep) {
            return Err(Error::InvalidArgument("subspace family is not arrow-invariant".into()));
        }
        Ok(sub)
    }

    fn from_spans(rep: &Representation<F>, spans: Vec<Matrix<F>>) -> Result<Self> {
        if spans.len() != rep.quiver().vertex_count() {
            return Err(Error::ShapeMismatch("one subspace per vertex required".into()));
        }
        let mut bases = Vec::with_capacity(spans.len());
        for (i, s) in spans.iter().enumerate() {
            if s.rows() != rep.dim(i) {
                return Err(Error::ShapeMismatch(format!("subspace at vertex {i} lives in the wrong space")));
            }
            bases.push(canonical_span(s));
        }
        let dims = DimVector(bases.iter().map(Matrix::cols).collect());
        Ok(Self { dims, bases })
    }

    pub fn zero(rep: &Representation<F>) -> Self {
        let bases: Vec<Matrix<F>> = rep.dims().0.iter().map(|&m| Matrix::zeros(m, 0)).collect();
        Self { dims: DimVector::zero(bases.len()), bases }
    }

    pub fn whole(rep: &Representation<F>) -> Self {
        let bases: Vec<Matrix<F>> = rep.dims().0.iter().map(|&m| Matrix::identity(m)).collect();
        Self { dims: rep.dims().clone(), bases }
    }

    /// The smallest subrepresentation containing the given vectors.
    pub fn generated_by(rep: &Representation<F>, seeds: Vec<Matrix<F>>) -> Result<Self> {
        let mut cur = Self::from_spans(rep, seeds)?;
        let q = rep.quiver().clone();
        loop {
            let mut spans = cur.bases.clone();
            for e in 0..q.edge_count() {
                let (s, t) = (q.source(e), q.target(e));
                let image = rep.map(e).mul(&cur.bases[s]);
                spans[t] = spans[t].hstack(&image);
            }
            let next = Self::from_spans(rep, spans)?;
            if next.dims == cur.dims {
                return Ok(next);
            }
            cur = next;
        }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn basis(&self, v: usize) -> &Matrix<F> {
        &self.bases[v]
    }

    pub fn bases(&self) -> &[Matrix<F>] {
        &self.bases
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn is_whole(&self, rep: &Representation<F>) -> bool {
        self.dims == *rep.dims()
    }

    /// `u_e(W_{s(e)}) ⊆ W_{t(e)}` for every arrow.
    pub fn is_invariant(&self, rep: &Representation<F>) -> bool {
        let q = rep.quiver();
        (0..q.edge_count()).all(|e| {
            let (s, t) = (q.source(e), q.target(e));
            contains(&self.bases[t], &rep.map(e).mul(&self.bases[s]))
        })
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.bases.iter().zip(&other.bases).all(|(a, b)| contains(a, b))
    }

    /// The representation on `W`, in the coordinates of the stored bases.
    pub fn restrict(&self, rep: &Representation<F>) -> Representation<F> {
        let q = rep.quiver();
        let maps = (0..q.edge_count())
            .map(|e| {
                let (s, t) = (q.source(e), q.target(e));
                let image = rep.map(e).mul(&self.bases[s]);
                self.bases[t].solve_matrix(&image).expect("invariant subspace")
            })
            .collect();
        Representation::new(rep.quiver().clone(), self.dims.clone(), maps).expect("shapes follow dims")
    }

    /// `V/W` with the data needed to move between the two.
    pub fn quotient(&self, rep: &Representation<F>) -> Quotient<F> {
        let q = rep.quiver();
        let mut sections = Vec::new();
        let mut projections = Vec::new();
        for (v, b) in self.bases.iter().enumerate() {
            let m = rep.dim(v);
            let extra = extend_basis(b, &Matrix::identity(m));
            let c = Matrix::identity(m).select_columns(&extra);
            let full = b.hstack(&c).inverse().expect("completed basis");
            projections.push(full.block(b.cols(), 0, c.cols(), m));
            sections.push(c);
        }
        let maps = (0..q.edge_count())
            .map(|e| {
                let (s, t) = (q.source(e), q.target(e));
                projections[t].mul(rep.map(e)).mul(&sections[s])
            })
            .collect();
        let dims = DimVector(sections.iter().map(Matrix::cols).collect());
        let representation = Representation::new(rep.quiver().clone(), dims, maps).expect("shapes follow dims");
        Quotient { representation, sections, projections }
    }

    /// Preimage in `V` of a subrepresentation of `V/W`.
    pub fn lift(&self, quotient: &Quotient<F>, sub: &SubRepresentation<F>) -> Self {
        let bases = self
            .bases
            .iter()
            .zip(&quotient.sections)
            .zip(&sub.bases)
            .map(|((b, c), s)| canonical_span(&b.hstack(&c.mul(s))))
            .collect::<Vec<_>>();
        let dims = DimVector(bases.iter().map(Matrix::cols).collect());
        Self { dims, bases }
    }
}

/// `V/W` together with a section `V/W → V` and the projection `V → V/W`
/// at every vertex.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub representation: Representation<F>,
    pub sections: Vec<Matrix<F>>,
    pub projections: Vec<Matrix<F>>,
}

/// Column space of `m` as a reduced basis (transpose of the reduced row
/// echelon form of `mᵀ`), so equal subspaces get equal matrices.
pub fn canonical_span<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    if m.cols() == 0 {
        return Matrix::zeros(m.rows(), 0);
    }
    let e = m.transpose().echelon();
    let r = e.pivots.len();
    e.matrix.block(0, 0, r, m.rows()).transpose()
}

fn contains<F: Field>(basis: &Matrix<F>, vectors: &Matrix<F>) -> bool {
    if vectors.cols() == 0 || vectors.is_zero() {
        return true;
    }
    basis.hstack(vectors).rank() == basis.cols()
}

/// All `k`-dimensional subspaces of `F^m` over a finite field, as reduced
/// bases, ordered by pivot pattern and then by free entries.
pub fn subspaces<F: Field>(m: usize, k: usize) -> Result<Vec<Matrix<F>>> {
    let elems = F::elements().ok_or_else(|| Error::Unsupported(format!("subspace enumeration over {}", F::name())))?;
    let mut out = Vec::new();
    for pivots in combinations(m, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut counter = vec![0usize; free.len()];
        loop {
            let mut rows = Matrix::zeros(k, m);
            for (r, &p) in pivots.iter().enumerate() {
                rows[(r, p)] = F::one();
            }
            for (&(r, c), &x) in free.iter().zip(&counter) {
                rows[(r, c)] = elems[x].clone();
            }
            out.push(rows.transpose());
            if !advance(&mut counter, elems.len()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Number of subspaces of `F_q^m` of every dimension (Gaussian binomials).
pub fn subspace_count(q: u128, m: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=m {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num = num.saturating_mul(q.saturating_pow((m - i) as u32).saturating_sub(1));
            den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
        }
        total = total.saturating_add(if den == 0 { 1 } else { num / den });
    }
    total
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Odometer step in base `radix`; false once it wraps around.
pub(crate) fn advance(counter: &mut [usize], radix: usize) -> bool {
    for c in counter.iter_mut() {
        *c += 1;
        if *c < radix {
            return true;
        }
        *c = 0;
    }
    false
}

/// Every subrepresentation of `rep` over a finite field: subspaces are chosen
/// vertex by vertex, pruning as soon as an arrow between chosen vertices fails.
/// The order is by vertex, then by subspace dimension, then by
/// [`subspaces`] order.
pub fn enumerate_subreps<F: Field>(rep: &Representation<F>, limit: u128) -> Result<Vec<SubRepresentation<F>>> {
    let q_size = F::elements()
        .ok_or_else(|| Error::Unsupported(format!("exhaustive subrepresentation search over {}", F::name())))?
        .len() as u128;
    let estimate = rep.dims().0.iter().fold(1u128, |acc, &m| acc.saturating_mul(subspace_count(q_size, m)));
    if estimate > limit {
        return Err(Error::Infeasible { estimate, limit });
    }
    let per_vertex: Vec<Vec<Matrix<F>>> = rep
        .dims()
        .0
        .iter()
        .map(|&m| Ok((0..=m).map(|k| subspaces::<F>(m, k)).collect::<Result<Vec<_>>>()?.concat()))
        .collect::<Result<_>>()?;
    let quiver = rep.quiver().clone();
    let mut out = Vec::new();
    let mut chosen: Vec<Matrix<F>> = Vec::new();
    fn go<F: Field>(
        rep: &Representation<F>,
        quiver: &crate::quiver::Quiver,
        per_vertex: &[Vec<Matrix<F>>],
        chosen: &mut Vec<Matrix<F>>,
        out: &mut Vec<SubRepresentation<F>>,
    ) {
        let v = chosen.len();
        if v == per_vertex.len() {
            let dims = DimVector(chosen.iter().map(Matrix::cols).collect());
            out.push(SubRepresentation { dims, bases: chosen.clone() });
            return;
        }
        for w in &per_vertex[v] {
            chosen.push(w.clone());
            let ok = (0..quiver.edge_count()).all(|e| {
                let (s, t) = (quiver.source(e), quiver.target(e));
                if s.max(t) != v {
                    return true;
                }
                contains(&chosen[t], &rep.map(e).mul(&chosen[s]))
            });
            if ok {
                go(rep, quiver, per_vertex, chosen, out);
            }
            chosen.pop();
        }
    }
    go(rep, &quiver, &per_vertex, &mut chosen, &mut out);
    Ok(out)
}

/// Subrepresentations reachable without enumerating a Grassmannian: the
/// vertex-support patterns `W_i ∈ {0, V_i}`, joint kernels, arrow images,
/// closures of coordinate vectors and closures of sampled vectors.
/// Always valid subrepresentations; complete only when the caller can argue
/// no other dimension vector matters.
pub fn candidate_subreps<F: Field>(rep: &Representation<F>, samples: usize, seed: u64) -> Vec<SubRepresentation<F>> {
    use rand::SeedableRng;
    let q = rep.quiver().clone();
    let k = q.vertex_count();
    let mut out: Vec<SubRepresentation<F>> = Vec::new();
    let push = |s: SubRepresentation<F>, out: &mut Vec<SubRepresentation<F>>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    for mask in 0..(1u64 << k) {
        let spans = (0..k)
            .map(|v| if mask >> v & 1 == 1 { Matrix::identity(rep.dim(v)) } else { Matrix::zeros(rep.dim(v), 0) })
            .collect();
        if let Ok(s) = SubRepresentation::new(rep, spans) {
            push(s, &mut out);
        }
    }
    let kernels: Vec<Matrix<F>> = (0..k)
        .map(|v| {
            let outs = q.out_edges(v);
            if outs.is_empty() {
                return Matrix::identity(rep.dim(v));
            }
            let stacked = outs.iter().skip(1).fold(rep.map(outs[0]).clone(), |acc, &e| acc.vstack(rep.map(e)));
            stacked.kernel()
        })
        .collect();
    if let Ok(s) = SubRepresentation::new(rep, kernels) {
        push(s, &mut out);
    }
    for e in 0..q.edge_count() {
        let mut seeds: Vec<Matrix<F>> = (0..k).map(|v| Matrix::zeros(rep.dim(v), 0)).collect();
        seeds[q.target(e)] = rep.map(e).clone();
        if let Ok(s) = SubRepresentation::generated_by(rep, seeds) {
            push(s, &mut out);
        }
    }
    let mut seed_vectors: Vec<(usize, Vec<F>)> = Vec::new();
    for v in 0..k {
        for j in 0..rep.dim(v) {
            let mut x = vec![F::zero(); rep.dim(v)];
            x[j] = F::one();
            seed_vectors.push((v, x));
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        for v in 0..k {
            if rep.dim(v) > 0 {
                seed_vectors.push((v, (0..rep.dim(v)).map(|_| F::sample(&mut rng, 3)).collect()));
            }
        }
    }
    for (v, x) in seed_vectors {
        let mut seeds: Vec<Matrix<F>> = (0..k).map(|u| Matrix::zeros(rep.dim(u), 0)).collect();
        seeds[v] = Matrix::from_columns(rep.dim(v), &[x]);
        if let Ok(s) = SubRepresentation::generated_by(rep, seeds) {
            push(s, &mut out);
        }
    }
    out.sort_by_key(|s| s.dims.total());
    out
}
