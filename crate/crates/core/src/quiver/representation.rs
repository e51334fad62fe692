use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, PathWord, Quiver};

/// A point of `Rep_Q(m⃗)`: one matrix `u_e : V_{s(e)} → V_{t(e)}` per edge,
/// stored as `m_{t(e)} × m_{s(e)}` (columns index the source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F> {
    quiver: Arc<Quiver>,
    dims: DimVector,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(quiver: Arc<Quiver>, dims: DimVector, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::ShapeMismatch("dimension vector length".into()));
        }
        if maps.len() != quiver.edge_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} edges",
                maps.len(),
                quiver.edge_count()
            )));
        }
        for (e, m) in maps.iter().enumerate() {
            let want = (dims.get(quiver.target(e)), dims.get(quiver.source(e)));
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "edge `{}` has a {}x{} matrix, expected {}x{}",
                    quiver.edge(e).name,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, dims: DimVector) -> Self {
        let maps = quiver
            .edges()
            .iter()
            .map(|e| Matrix::zeros(dims.get(e.target), dims.get(e.source)))
            .collect();
        Self { quiver, dims, maps }
    }

    /// The one-dimensional simple `S_i` (all arrows act by zero).
    pub fn vertex_simple(quiver: Arc<Quiver>, i: usize) -> Self {
        let k = quiver.vertex_count();
        Self::zero(quiver, DimVector::unit(k, i))
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims.get(v)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn map(&self, e: usize) -> &Matrix<F> {
        &self.maps[e]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// `u_w = u_{eₙ} ∘ ⋯ ∘ u_{e₁}`; the identity for a trivial path.
    pub fn word_matrix(&self, w: &PathWord) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dim(w.start()));
        for &e in w.edges() {
            acc = self.maps[e].mul(&acc);
        }
        acc
    }

    pub fn same_quiver(&self, other: &Quiver) -> Result<()> {
        if *self.quiver == *other {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// `u'_e = g_{t(e)}⁻¹ · u_e · g_{s(e)}`.
    pub fn gauge_act(&self, g: &[Matrix<F>]) -> Result<Self> {
        if g.len() != self.quiver.vertex_count() {
            return Err(Error::ShapeMismatch("one gauge matrix per vertex required".into()));
        }
        let mut inverses = Vec::with_capacity(g.len());
        for (v, gv) in g.iter().enumerate() {
            if gv.shape() != (self.dim(v), self.dim(v)) {
                return Err(Error::ShapeMismatch(format!("gauge matrix at vertex {v}")));
            }
            inverses.push(gv.inverse().ok_or(Error::SingularGauge(v))?);
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(e, u)| {
                let (s, t) = (self.quiver.source(e), self.quiver.target(e));
                inverses[t].mul(u).mul(&g[s])
            })
            .collect();
        Ok(Self { quiver: self.quiver.clone(), dims: self.dims.clone(), maps })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_quiver(&other.quiver)?;
        let dims = self.dims.add(&other.dims);
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        Ok(Self { quiver: self.quiver.clone(), dims, maps })
    }

    /// Block-diagonal matrix of the total space `⊕ V_i` for per-vertex maps.
    pub fn total_offsets(&self) -> Vec<usize> {
        self.dims.offsets()
    }
}

/// Random invertible gauge element, used by invariance checks.
pub fn random_gauge<F: Field, R: rand::Rng + ?Sized>(dims: &DimVector, rng: &mut R, bound: i64) -> Vec<Matrix<F>> {
    dims.0
        .iter()
        .map(|&m| loop {
            let rows = (0..m).map(|_| (0..m).map(|_| F::sample(rng, bound)).collect()).collect();
            let g = if m == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
            if g.is_invertible() {
                break g;
            }
        })
        .collect()
}

/// Random representation with entries bounded by `bound`.
pub fn random_representation<F: Field, R: rand::Rng + ?Sized>(
    quiver: Arc<Quiver>,
    dims: DimVector,
    rng: &mut R,
    bound: i64,
) -> Representation<F> {
    let maps = quiver
        .edges()
        .iter()
        .map(|e| {
            let (r, c) = (dims.get(e.target), dims.get(e.source));
            let mut m = Matrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m[(i, j)] = F::sample(rng, bound);
                }
            }
            m
        })
        .collect();
    Representation::new(quiver, dims, maps).expect("shapes built from dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn shape_validation() {
        let q = Arc::new(Quiver::a2());
        let bad = Representation::<Q>::new(q.clone(), DimVector(vec![1, 2]), vec![Matrix::zeros(1, 2)]);
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
        assert!(Representation::<Q>::new(q, DimVector(vec![1, 2]), vec![Matrix::zeros(2, 1)]).is_ok());
    }

    #[test]
    fn gauge_on_a2() {
        let q = Arc::new(Quiver::a2());
        let rep = Representation::new(q, DimVector(vec![1, 1]), vec![Matrix::<Q>::from_i64_rows(&[&[1]])]).unwrap();
        let g = vec![Matrix::from_i64_rows(&[&[2]]), Matrix::from_i64_rows(&[&[3]])];
        let moved = rep.gauge_act(&g).unwrap();
        assert_eq!(moved.map(0)[(0, 0)], Q::from_ratio(2, 3).unwrap());
    }

    #[test]
    fn gauge_identity_and_scalars() {
        let q = Arc::new(Quiver::loops(1));
        let u = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let rep = Representation::new(q, DimVector(vec![2]), vec![u]).unwrap();
        assert_eq!(rep.gauge_act(&[Matrix::identity(2)]).unwrap(), rep);
        assert_eq!(rep.gauge_act(&[Matrix::scalar(2, Q::from_i64(5))]).unwrap(), rep);
    }

    #[test]
    fn singular_gauge_rejected() {
        let q = Arc::new(Quiver::loops(1));
        let rep = Representation::<Q>::zero(q, DimVector(vec![2]));
        let g = vec![Matrix::from_i64_rows(&[&[1, 1], &[1, 1]])];
        assert_eq!(rep.gauge_act(&g), Err(Error::SingularGauge(0)));
    }
}
