use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vec_add_scaled, Matrix};
use crate::potential::RelationSet;
use crate::quiver::{all_paths, paths_of_length, DimVector, PathWord, Quiver, Representation};

/// Finite-dimensional algebra given by structure constants:
/// `b_i · b_j = Σ_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable<F> {
    dim: usize,
    table: Vec<Vec<Vec<F>>>,
}

impl<F: Field> StructureTable<F> {
    pub fn new(table: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let dim = table.len();
        if table.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::ShapeMismatch("structure constants must be dim × dim × dim".into()));
        }
        Ok(Self { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                vec_add_scaled(&mut out, &(x.clone() * y), &self.table[i][j]);
            }
        }
        out
    }

    /// First basis triple violating associativity.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let unit = |k: usize| {
            let mut v = vec![F::zero(); self.dim];
            v[k] = F::one();
            v
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&unit(i), &unit(j));
                for k in 0..self.dim {
                    let left = self.mul(&ij, &unit(k));
                    let right = self.mul(&unit(i), &self.mul(&unit(j), &unit(k)));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// `A⁽ⁿ⁾ = kQ / (I + J^{n+1})` with a basis of normal words: paths of length
/// at most `n` that are not leading (shortest-first) words of the ideal.
/// Right modules over it are representations of `Q` in which `I` and all
/// paths of length `n + 1` act by zero; paths compose left to right.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F> {
    quiver: Arc<Quiver>,
    relations: RelationSet<F>,
    truncation: usize,
    words: Vec<PathWord>,
    /// Normal form of every path of length `≤ n`, in basis coordinates.
    normal: BTreeMap<PathWord, Vec<F>>,
    table: StructureTable<F>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn new(relations: RelationSet<F>, truncation: usize) -> Result<Self> {
        let quiver = relations.quiver().clone();
        let paths = all_paths(&quiver, truncation);
        let index: BTreeMap<&PathWord, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        // Span of p · ρ · q truncated at length n.
        let mut spanning: Vec<Vec<F>> = Vec::new();
        for rel in relations.relations() {
            for piece in rel.series.split_by_endpoints() {
                let Some(min) = piece.min_word_length() else { continue };
                if min > truncation {
                    continue;
                }
                let Some((a, b)) = piece.endpoints().or_else(|| piece.terms().keys().next().map(|w| (w.start(), w.end())))
                else {
                    continue;
                };
                let room = truncation - min;
                let lefts: Vec<&PathWord> = paths.iter().filter(|p| p.end() == a && p.len() <= room).collect();
                let rights: Vec<&PathWord> = paths.iter().filter(|p| p.start() == b && p.len() <= room).collect();
                for p in &lefts {
                    for q in rights.iter().filter(|q| p.len() + q.len() <= room) {
                        let mut v = vec![F::zero(); paths.len()];
                        for (w, c) in piece.terms() {
                            let full = p.concat(w).and_then(|x| x.concat(q)).expect("endpoints match");
                            if let Some(&k) = index.get(&full) {
                                v[k] += c;
                            }
                        }
                        if v.iter().any(|x| !x.is_zero()) {
                            spanning.push(v);
                        }
                    }
                }
            }
        }
        let (pivot_rows, pivots) = if spanning.is_empty() {
            (Matrix::zeros(0, paths.len()), vec![])
        } else {
            let e = Matrix::from_rows(spanning).echelon();
            let r = e.pivots.len();
            (e.matrix.block(0, 0, r, paths.len()), e.pivots)
        };
        let normal_idx: Vec<usize> = (0..paths.len()).filter(|c| !pivots.contains(c)).collect();
        let position: BTreeMap<usize, usize> = normal_idx.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let words: Vec<PathWord> = normal_idx.iter().map(|&c| paths[c].clone()).collect();
        let mut normal = BTreeMap::new();
        for (c, p) in paths.iter().enumerate() {
            let mut v = vec![F::zero(); words.len()];
            if let Some(&k) = position.get(&c) {
                v[k] = F::one();
            } else {
                let r = pivots.iter().position(|&x| x == c).expect("pivot column");
                for (&col, &k) in &position {
                    let x = &pivot_rows[(r, col)];
                    if !x.is_zero() {
                        v[k] = -x.clone();
                    }
                }
            }
            normal.insert(p.clone(), v);
        }
        let table = (0..words.len())
            .map(|i| {
                (0..words.len())
                    .map(|j| match words[i].concat(&words[j]) {
                        Some(w) => normal.get(&w).cloned().unwrap_or_else(|| vec![F::zero(); words.len()]),
                        None => vec![F::zero(); words.len()],
                    })
                    .collect()
            })
            .collect();
        let table = StructureTable::new(table)?;
        Ok(Self { quiver, relations, truncation, words, normal, table })
    }

    /// The free path algebra truncated at `n`.
    pub fn path_algebra(quiver: Arc<Quiver>, truncation: usize) -> Result<Self> {
        let empty = RelationSet::new(quiver, vec![], crate::potential::Provenance::Products)?;
        Self::new(empty, truncation)
    }

    pub fn with_truncation(&self, n: usize) -> Result<Self> {
        Self::new(self.relations.clone(), n)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet<F> {
        &self.relations
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[PathWord] {
        &self.words
    }

    pub fn table(&self) -> &StructureTable<F> {
        &self.table
    }

    pub fn word_index(&self, w: &PathWord) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }

    /// Coordinates of a path; zero beyond the truncation.
    pub fn normal_form(&self, w: &PathWord) -> Vec<F> {
        self.normal.get(w).cloned().unwrap_or_else(|| vec![F::zero(); self.dim()])
    }

    pub fn idempotent(&self, i: usize) -> usize {
        self.word_index(&PathWord::trivial(i)).expect("trivial paths are normal")
    }

    /// Number of normal words of each length.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.truncation + 1];
        for w in &self.words {
            out[w.len()] += 1;
        }
        out
    }

    /// Words of `e_i A e_j`.
    pub fn words_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.words[k].start() == i && self.words[k].end() == j).collect()
    }

    /// Idempotents are orthogonal and sum to one, the table is associative
    /// and the arrow ideal is nilpotent.
    pub fn check(&self) -> Result<()> {
        if let Some(t) = self.table.associativity_failure() {
            return Err(Error::InvalidArgument(format!("multiplication is not associative on {t:?}")));
        }
        let k = self.quiver.vertex_count();
        let mut one = vec![F::zero(); self.dim()];
        for i in 0..k {
            let ei = self.idempotent(i);
            one[ei] = F::one();
            for j in 0..k {
                let ej = self.idempotent(j);
                let p = self.table.basis_product(ei, ej);
                let expect_one = i == j;
                if p.iter().enumerate().any(|(x, c)| if expect_one && x == ei { !c.is_one() } else { !c.is_zero() }) {
                    return Err(Error::InvalidArgument(format!("idempotents e{i}, e{j} are not orthogonal")));
                }
            }
        }
        for b in 0..self.dim() {
            let mut e = vec![F::zero(); self.dim()];
            e[b] = F::one();
            if self.table.mul(&one, &e) != e || self.table.mul(&e, &one) != e {
                return Err(Error::InvalidArgument("idempotents do not sum to the unit".into()));
            }
        }
        // Products of n + 1 radical words vanish because each has length ≥ 1.
        if self.words.iter().any(|w| w.len() > self.truncation) {
            return Err(Error::InvalidArgument("normal word beyond the truncation".into()));
        }
        Ok(())
    }

    /// `rep` is a right `A⁽ⁿ⁾`-module: the relations and all paths of length
    /// `n + 1` act by zero.
    pub fn admits(&self, rep: &Representation<F>) -> Result<bool> {
        rep.same_quiver(&self.quiver)?;
        for rel in self.relations.relations() {
            for (_, m) in rel.series.truncate(self.truncation).evaluate_all(rep)? {
                if !m.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(paths_of_length(&self.quiver, self.truncation + 1).iter().all(|w| rep.word_matrix(w).is_zero()))
    }

    /// Action of a basis element on a module: `U_{start} → U_{end}`.
    pub fn act(&self, rep: &Representation<F>, basis: usize) -> Matrix<F> {
        rep.word_matrix(&self.words[basis])
    }

    /// `x · w` for a single vector, applying one arrow at a time.
    pub fn act_vec(&self, rep: &Representation<F>, basis: usize, x: &[F]) -> Vec<F> {
        self.words[basis].edges().iter().fold(x.to_vec(), |v, &e| rep.map(e).mul_vec(&v))
    }

    /// The indecomposable projective `e_i A⁽ⁿ⁾` as a representation; the
    /// basis at vertex `j` is [`Self::words_between`]`(i, j)`.
    pub fn projective(&self, i: usize) -> Representation<F> {
        let q = &self.quiver;
        let k = q.vertex_count();
        let blocks: Vec<Vec<usize>> = (0..k).map(|j| self.words_between(i, j)).collect();
        let dims = DimVector(blocks.iter().map(Vec::len).collect());
        let maps = (0..q.edge_count())
            .map(|e| {
                let (s, t) = (q.source(e), q.target(e));
                let arrow = PathWord::edge(q, e);
                let mut m = Matrix::zeros(blocks[t].len(), blocks[s].len());
                for (c, &w) in blocks[s].iter().enumerate() {
                    let prod = self.words[w].concat(&arrow).map(|p| self.normal_form(&p)).unwrap_or_default();
                    for (r, &x) in blocks[t].iter().enumerate() {
                        if let Some(v) = prod.get(x) {
                            m[(r, c)] = v.clone();
                        }
                    }
                }
                m
            })
            .collect();
        Representation::new(q.clone(), dims, maps).expect("shapes follow word blocks")
    }

    /// `A⁽ⁿ⁾` as a right module over itself: `⊕_i e_i A⁽ⁿ⁾`.
    pub fn regular_module(&self) -> Representation<F> {
        let k = self.quiver.vertex_count();
        let mut m = self.projective(0);
        for i in 1..k {
            m = m.direct_sum(&self.projective(i)).expect("same quiver");
        }
        m
    }
}

/// A right module over a quotient algebra, stored as the representation of
/// its arrow actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule<F> {
    rep: Representation<F>,
}

impl<F: Field> FdModule<F> {
    pub fn new(algebra: &QuotientAlgebra<F>, rep: Representation<F>) -> Result<Self> {
        if !algebra.admits(&rep)? {
            return Err(Error::InvalidArgument("relations do not act by zero".into()));
        }
        Ok(Self { rep })
    }

    pub fn simple(algebra: &QuotientAlgebra<F>, i: usize) -> Self {
        Self { rep: Representation::vertex_simple(algebra.quiver().clone(), i) }
    }

    pub fn rep(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn into_rep(self) -> Representation<F> {
        self.rep
    }

    pub fn dims(&self) -> &DimVector {
        self.rep.dims()
    }
}
