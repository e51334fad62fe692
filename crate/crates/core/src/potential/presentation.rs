use std::sync::Arc;

use crate::dg::{AInfinityStructure, GradedBasis};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{Edge, Quiver};

/// The Ext-quiver of a multi-object graded space: one vertex per object and
/// one arrow `i → j` per basis element of the degree-one block `H¹(i, j)`.
/// The dual basis element `eᵛ` of arrow `e` is the `H`-basis element
/// `dual[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtQuiverPresentation {
    quiver: Arc<Quiver>,
    basis: GradedBasis,
    dual: Vec<usize>,
    edge_of: Vec<Option<usize>>,
}

impl ExtQuiverPresentation {
    /// Arrows follow the degree-one basis elements in basis order. Arrow names
    /// default to `e1, e2, …` and vertex names to `1, …, k`.
    pub fn new(basis: &GradedBasis, edge_names: Option<Vec<String>>, vertex_names: Option<Vec<String>>) -> Result<Self> {
        let k = basis.vertex_count;
        let vertices = match vertex_names {
            Some(v) if v.len() == k => v,
            Some(_) => return Err(Error::InvalidQuiver("vertex name count differs from the block count".into())),
            None => (1..=k).map(|i| i.to_string()).collect(),
        };
        let dual = basis.of_degree(1);
        let names = match edge_names {
            Some(n) if n.len() == dual.len() => n,
            Some(_) => return Err(Error::InvalidQuiver("edge name count differs from dim H¹".into())),
            None => (1..=dual.len()).map(|i| format!("e{i}")).collect(),
        };
        let edges = dual
            .iter()
            .zip(names)
            .map(|(&h, name)| {
                let (s, t) = basis.blocks[h];
                Edge { name, source: s, target: t }
            })
            .collect();
        let quiver = Arc::new(Quiver::new(vertices, edges)?);
        let mut edge_of = vec![None; basis.dim()];
        for (e, &h) in dual.iter().enumerate() {
            edge_of[h] = Some(e);
        }
        Ok(Self { quiver, basis: basis.clone(), dual, edge_of })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    /// `H`-basis index of `eᵛ`.
    pub fn dual(&self, e: usize) -> usize {
        self.dual[e]
    }

    /// The arrow whose dual is `H`-basis element `h`, if `h` has degree one.
    pub fn edge_of(&self, h: usize) -> Option<usize> {
        self.edge_of[h]
    }

    /// Translate an `H`-tuple of degree-one elements into an arrow sequence.
    pub fn edges_of_tuple(&self, tuple: &[usize]) -> Option<Vec<usize>> {
        tuple.iter().map(|&h| self.edge_of[h]).collect()
    }

    /// Evaluate `eᵛ(e') = δ`: the dual element of each arrow pairs to one with
    /// its own coordinate and zero elsewhere.
    pub fn dual_pairing_is_identity(&self) -> bool {
        self.dual.iter().enumerate().all(|(e, &h)| self.edge_of[h] == Some(e))
    }
}

/// A bilinear form on `H` of degree `−d`, stored as its Gram matrix on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing<F> {
    gram: Matrix<F>,
    degree: i32,
}

impl<F: Field> CyclicPairing<F> {
    pub fn new(gram: Matrix<F>, degree: i32) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch("pairing matrix must be square".into()));
        }
        Ok(Self { gram, degree })
    }

    /// `(a, b) = λ(m₂(a, b))` where `λ` sums the coordinates on the basis
    /// elements of degree `d`.
    pub fn from_top_class(ainf: &AInfinityStructure<F>, degree: i32) -> Result<Self> {
        let basis = ainf.basis();
        let n = basis.dim();
        let top = basis.of_degree(degree);
        if top.is_empty() {
            return Err(Error::InvalidArgument(format!("no basis element of degree {degree}")));
        }
        let m2 = ainf.m(2).ok_or_else(|| Error::InvalidArgument("m₂ is missing".into()))?;
        let mut gram = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = m2.get(&[a, b]) {
                    let mut s = F::zero();
                    for &t in &top {
                        s += &v[t];
                    }
                    gram[(a, b)] = s;
                }
            }
        }
        Self::new(gram, degree)
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn pair(&self, a: &[F], b: &[F]) -> F {
        let gb = self.gram.mul_vec(b);
        let mut s = F::zero();
        for (x, y) in a.iter().zip(&gb) {
            if !x.is_zero() {
                s += &(x.clone() * y);
            }
        }
        s
    }

    /// `(v, b_j)` for a vector `v` and a basis element `j`.
    pub fn pair_with_basis(&self, v: &[F], j: usize) -> F {
        let mut s = F::zero();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                s += &(x.clone() * &self.gram[(i, j)]);
            }
        }
        s
    }

    pub fn scaled(&self, c: &F) -> Self {
        Self { gram: self.gram.scale(c), degree: self.degree }
    }

    /// Rescale the row of basis element `row`, breaking any normalization.
    pub fn with_row_scaled(&self, row: usize, c: &F) -> Self {
        let mut gram = self.gram.clone();
        for j in 0..gram.cols() {
            gram[(row, j)] = gram[(row, j)].clone() * c;
        }
        Self { gram, degree: self.degree }
    }

    /// Nonzero only between degrees summing to `d`, and a perfect pairing
    /// between each degree `j` and `d − j`.
    pub fn is_nondegenerate(&self, basis: &GradedBasis) -> bool {
        let n = basis.dim();
        if self.gram.rows() != n {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if !self.gram[(a, b)].is_zero() && basis.degrees[a] + basis.degrees[b] != self.degree {
                    return false;
                }
            }
        }
        let mut degs: Vec<i32> = basis.degrees.clone();
        degs.sort();
        degs.dedup();
        degs.iter().all(|&j| {
            let rows = basis.of_degree(j);
            let cols = basis.of_degree(self.degree - j);
            rows.len() == cols.len() && self.gram.submatrix(&rows, &cols).is_invertible()
        })
    }

    /// `(a, b) = (−1)^{|a||b|} (b, a)` on basis elements.
    pub fn is_graded_symmetric(&self, basis: &GradedBasis) -> bool {
        let n = basis.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let s = if (basis.degrees[a] * basis.degrees[b]).rem_euclid(2) == 0 { F::one() } else { -F::one() };
                self.gram[(a, b)] == s * &self.gram[(b, a)]
            })
        })
    }
}
