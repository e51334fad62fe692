use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{paths_of_length, DimVector, PathWord, Representation};

use super::algebra::QuotientAlgebra;

/// `Ext¹(M, N)` with explicit cocycles. A cocycle is one matrix
/// `c_a : M_{s(a)} → N_{t(a)}` per arrow; it defines the extension
/// `E = N ⊕ M` with arrows `[[u^N_a, c_a], [0, u^M_a]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtData<F> {
    pub cocycles: Vec<Vec<Matrix<F>>>,
    pub cocycle_space_dim: usize,
    pub coboundary_dim: usize,
}

impl<F: Field> ExtData<F> {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }
}

/// Coordinates for cochains: the entry `(r, c)` of `c_a` sits at
/// `offsets[a] + r · m_{s(a)} + c`.
struct Cochains {
    offsets: Vec<usize>,
    len: usize,
}

impl Cochains {
    fn new<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Self {
        let q = m.quiver();
        let mut offsets = Vec::new();
        let mut len = 0;
        for e in 0..q.edge_count() {
            offsets.push(len);
            len += n.dim(q.target(e)) * m.dim(q.source(e));
        }
        Self { offsets, len }
    }

    fn index(&self, m: &Representation<impl Field>, e: usize, r: usize, c: usize) -> usize {
        self.offsets[e] + r * m.dim(m.quiver().source(e)) + c
    }

    fn unpack<F: Field>(&self, m: &Representation<F>, n: &Representation<F>, v: &[F]) -> Vec<Matrix<F>> {
        let q = m.quiver();
        (0..q.edge_count())
            .map(|e| {
                let (rows, cols) = (n.dim(q.target(e)), m.dim(q.source(e)));
                let mut out = Matrix::zeros(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        out[(r, c)] = v[self.index(m, e, r, c)].clone();
                    }
                }
                out
            })
            .collect()
    }

    fn pack<F: Field>(&self, m: &Representation<F>, c: &[Matrix<F>]) -> Vec<F> {
        let mut v = vec![F::zero(); self.len];
        for (e, ce) in c.iter().enumerate() {
            for r in 0..ce.rows() {
                for col in 0..ce.cols() {
                    v[self.index(m, e, r, col)] = ce[(r, col)].clone();
                }
            }
        }
        v
    }
}

/// Linear conditions on cochains making `E` an `A`-module: the corner of every
/// relation and of every path of length `n + 1` must vanish. On a word
/// `a₁⋯a_k` the corner is `Σ_m u^N(a_{m+1}⋯a_k) c_{a_m} u^M(a₁⋯a_{m−1})`.
fn cocycle_conditions<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>, n: &Representation<F>, ch: &Cochains) -> Vec<Vec<F>> {
    let q = a.quiver();
    let mut generators: Vec<Vec<(PathWord, F)>> = Vec::new();
    for rel in a.relations().relations() {
        for piece in rel.series.truncate(a.truncation()).split_by_endpoints() {
            generators.push(piece.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect());
        }
    }
    for w in paths_of_length(q, a.truncation() + 1) {
        generators.push(vec![(w, F::one())]);
    }
    let mut rows = Vec::new();
    for g in generators {
        let Some((first, _)) = g.first() else { continue };
        let (start, end) = (first.start(), first.end());
        let (nr, mc) = (n.dim(end), m.dim(start));
        let mut block: Vec<Vec<F>> = vec![vec![F::zero(); ch.len]; nr * mc];
        for (w, lambda) in &g {
            let edges = w.edges();
            for (pos, &e) in edges.iter().enumerate() {
                let pre = prefix(m, w, pos);
                let suf = suffix(n, w, pos + 1, q);
                for r in 0..nr {
                    for x in 0..suf.cols() {
                        let sx = &suf[(r, x)];
                        if sx.is_zero() {
                            continue;
                        }
                        for s in 0..mc {
                            for y in 0..pre.rows() {
                                let py = &pre[(y, s)];
                                if py.is_zero() {
                                    continue;
                                }
                                block[r * mc + s][ch.index(m, e, x, y)] += &(lambda.clone() * sx * py);
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())));
    }
    rows
}

/// `u(a₁⋯a_{pos})` on `m`, starting from `w.start()`.
fn prefix<F: Field>(m: &Representation<F>, w: &PathWord, pos: usize) -> Matrix<F> {
    let mut acc = Matrix::identity(m.dim(w.start()));
    for &e in &w.edges()[..pos] {
        acc = m.map(e).mul(&acc);
    }
    acc
}

/// `u(a_{from+1}⋯a_k)` on `n`, starting at the target of `a_from`.
fn suffix<F: Field>(n: &Representation<F>, w: &PathWord, from: usize, q: &crate::quiver::Quiver) -> Matrix<F> {
    let start = q.target(w.edges()[from - 1]);
    let mut acc = Matrix::identity(n.dim(start));
    for &e in &w.edges()[from..] {
        acc = n.map(e).mul(&acc);
    }
    acc
}

/// Columns spanning the coboundaries `c_a = u^N_a φ_{s(a)} − φ_{t(a)} u^M_a`.
fn coboundaries<F: Field>(m: &Representation<F>, n: &Representation<F>, ch: &Cochains) -> Vec<Vec<F>> {
    let q = m.quiver();
    let mut cols = Vec::new();
    for v in 0..q.vertex_count() {
        for i in 0..n.dim(v) {
            for j in 0..m.dim(v) {
                let mut phi: Vec<Matrix<F>> = (0..q.vertex_count()).map(|w| Matrix::zeros(n.dim(w), m.dim(w))).collect();
                phi[v][(i, j)] = F::one();
                let c: Vec<Matrix<F>> = (0..q.edge_count())
                    .map(|e| {
                        let (s, t) = (q.source(e), q.target(e));
                        n.map(e).mul(&phi[s]).sub(&phi[t].mul(m.map(e)))
                    })
                    .collect();
                let packed = ch.pack(m, &c);
                if packed.iter().any(|x| !x.is_zero()) {
                    cols.push(packed);
                }
            }
        }
    }
    cols
}

fn check_modules<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>, n: &Representation<F>) -> Result<()> {
    for r in [m, n] {
        if !a.admits(r)? {
            return Err(Error::InvalidArgument("argument is not a module over the algebra".into()));
        }
    }
    Ok(())
}

/// `Ext¹_A(M, N)`: cocycles modulo coboundaries. Representatives are reduced
/// against the coboundary echelon form and then put in reduced echelon form,
/// so the basis is canonical.
pub fn ext_space<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>, n: &Representation<F>) -> Result<ExtData<F>> {
    check_modules(a, m, n)?;
    let ch = Cochains::new(m, n);
    if ch.len == 0 {
        return Ok(ExtData { cocycles: vec![], cocycle_space_dim: 0, coboundary_dim: 0 });
    }
    let cond = cocycle_conditions(a, m, n, &ch);
    let z = if cond.is_empty() { Matrix::identity(ch.len) } else { Matrix::from_rows(cond).kernel() };
    let b = coboundaries(m, n, &ch);
    let (b_rows, b_pivots) = if b.is_empty() {
        (Matrix::zeros(0, ch.len), vec![])
    } else {
        let e = Matrix::from_rows(b).echelon();
        let r = e.pivots.len();
        (e.matrix.block(0, 0, r, ch.len), e.pivots)
    };
    let mut reduced = Vec::new();
    for c in 0..z.cols() {
        let mut v = z.column(c);
        for (r, &p) in b_pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (k, x) in v.iter_mut().enumerate() {
                    let y = &b_rows[(r, k)];
                    if !y.is_zero() {
                        *x -= &(f.clone() * y);
                    }
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            reduced.push(v);
        }
    }
    let cocycles = if reduced.is_empty() {
        vec![]
    } else {
        let e = Matrix::from_rows(reduced).echelon();
        (0..e.pivots.len()).map(|r| ch.unpack(m, n, &e.matrix.row(r))).collect()
    };
    let result = ExtData { cocycles, cocycle_space_dim: z.cols(), coboundary_dim: b_pivots.len() };
    debug_assert_eq!(result.dim(), result.cocycle_space_dim - result.coboundary_dim);
    Ok(result)
}

/// The extension `E = N ⊕ M` defined by a cochain.
pub fn extension_module<F: Field>(m: &Representation<F>, n: &Representation<F>, cocycle: &[Matrix<F>]) -> Result<Representation<F>> {
    let q = m.quiver();
    let maps = (0..q.edge_count())
        .map(|e| {
            let (s, t) = (q.source(e), q.target(e));
            let mut u = Matrix::zeros(n.dim(t) + m.dim(t), n.dim(s) + m.dim(s));
            u.set_block(0, 0, n.map(e));
            u.set_block(0, n.dim(s), &cocycle[e]);
            u.set_block(n.dim(t), n.dim(s), m.map(e));
            u
        })
        .collect();
    Representation::new(q.clone(), n.dims().add(m.dims()), maps)
}

/// The cochain is a coboundary.
pub fn is_coboundary<F: Field>(m: &Representation<F>, n: &Representation<F>, cocycle: &[Matrix<F>]) -> bool {
    let ch = Cochains::new(m, n);
    let v = ch.pack(m, cocycle);
    if v.iter().all(F::is_zero) {
        return true;
    }
    let b = coboundaries(m, n, &ch);
    if b.is_empty() {
        return false;
    }
    let bm = Matrix::from_columns(ch.len, &b);
    bm.solve(&v).is_some()
}

/// `c ↦ c ∘ p` for a module map `p : M' → M` given per vertex.
pub fn pullback<F: Field>(m_prime: &Representation<F>, p: &[Matrix<F>], cocycle: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let q = m_prime.quiver();
    (0..q.edge_count()).map(|e| cocycle[e].mul(&p[q.source(e)])).collect()
}

/// `0 → ⊕_j Ext¹(M, S_j)ᵛ ⊗ S_j → E → M → 0`, the extension whose class is
/// the identity. The kernel occupies the first coordinates at every vertex.
#[derive(Clone, Debug)]
pub struct UniversalExtension<F> {
    pub module: Representation<F>,
    pub kernel_dims: DimVector,
    /// `dim Ext¹(M, S_j)` for each requested `j`.
    pub ext_dims: Vec<(usize, usize)>,
    /// The surjection `E → M`, per vertex.
    pub projection: Vec<Matrix<F>>,
    /// The inclusion of the kernel, per vertex.
    pub inclusion: Vec<Matrix<F>>,
}

impl<F> UniversalExtension<F> {
    pub fn is_trivial(&self) -> bool {
        self.kernel_dims.is_zero()
    }
}

pub fn universal_extension<F: Field>(
    a: &QuotientAlgebra<F>,
    m: &Representation<F>,
    simples: &[usize],
) -> Result<UniversalExtension<F>> {
    let q = a.quiver().clone();
    let k = q.vertex_count();
    for &j in simples {
        q.check_vertex(j)?;
    }
    // (vertex, cocycle) for each copy of S_j.
    let mut copies: Vec<(usize, Vec<Matrix<F>>)> = Vec::new();
    let mut ext_dims = Vec::new();
    for &j in simples {
        let s = Representation::vertex_simple(q.clone(), j);
        let ext = ext_space(a, m, &s)?;
        ext_dims.push((j, ext.dim()));
        copies.extend(ext.cocycles.into_iter().map(|c| (j, c)));
    }
    let mut kernel = vec![0usize; k];
    let mut slot = Vec::with_capacity(copies.len());
    for (j, _) in &copies {
        slot.push(kernel[*j]);
        kernel[*j] += 1;
    }
    let kernel_dims = DimVector(kernel);
    let n = Representation::zero(q.clone(), kernel_dims.clone());
    let cocycle: Vec<Matrix<F>> = (0..q.edge_count())
        .map(|e| {
            let (s, t) = (q.source(e), q.target(e));
            let mut c = Matrix::zeros(kernel_dims.get(t), m.dim(s));
            for ((j, coc), &row) in copies.iter().zip(&slot) {
                if *j == t {
                    for col in 0..m.dim(s) {
                        c[(row, col)] = coc[e][(0, col)].clone();
                    }
                }
            }
            c
        })
        .collect();
    let module = extension_module(m, &n, &cocycle)?;
    let projection = (0..k)
        .map(|v| {
            let mut p = Matrix::zeros(m.dim(v), module.dim(v));
            p.set_block(0, kernel_dims.get(v), &Matrix::identity(m.dim(v)));
            p
        })
        .collect();
    let inclusion = (0..k)
        .map(|v| {
            let mut i = Matrix::zeros(module.dim(v), kernel_dims.get(v));
            i.set_block(0, 0, &Matrix::identity(kernel_dims.get(v)));
            i
        })
        .collect();
    Ok(UniversalExtension { module, kernel_dims, ext_dims, projection, inclusion })
}
