use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Representation;

use super::algebra::QuotientAlgebra;
use super::resolution::{cover, top_generators};

/// `Hom_A(M, U)`, parametrized by the images of a fixed set of top
/// generators of `M`.
#[derive(Clone, Debug)]
pub struct HomSpace<F> {
    basis: Vec<Vec<Matrix<F>>>,
    generators: Vec<(usize, Vec<F>)>,
    /// Column `c` holds basis element `c` evaluated on all generators.
    values: Matrix<F>,
    shapes: Vec<(usize, usize)>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Per-vertex matrices `U_v × M_v` of each basis map.
    pub fn basis(&self) -> &[Vec<Matrix<F>>] {
        &self.basis
    }

    pub fn generators(&self) -> &[(usize, Vec<F>)] {
        &self.generators
    }

    /// Stacked values of `φ` on the generators.
    pub fn evaluate(&self, phi: &[Matrix<F>]) -> Vec<F> {
        self.generators.iter().flat_map(|(v, g)| phi[*v].mul_vec(g)).collect()
    }

    /// Coordinates of `φ` in [`Self::basis`]; `None` if `φ` is not in the span.
    /// Only the values on generators are consulted, so `φ` must already be a
    /// module map.
    pub fn coordinates(&self, phi: &[Matrix<F>]) -> Option<Vec<F>> {
        self.solve_values(&self.evaluate(phi))
    }

    /// Coordinates of the map taking the prescribed values on generators.
    pub fn solve_values(&self, values: &[F]) -> Option<Vec<F>> {
        self.values.solve(values)
    }

    pub fn element(&self, coords: &[F]) -> Vec<Matrix<F>> {
        let mut out: Vec<Matrix<F>> = self.shapes.iter().map(|&(r, c)| Matrix::zeros(r, c)).collect();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(b) {
                o.add_scaled(c, m);
            }
        }
        out
    }
}

/// `Hom_A(M, U)` via the projective cover `P₀ → M`: a map is a choice of
/// images of the top generators that kills the kernel of the cover.
pub fn module_homs<F: Field>(a: &QuotientAlgebra<F>, m: &Representation<F>, u: &Representation<F>) -> Result<HomSpace<F>> {
    if m.quiver().as_ref() != u.quiver().as_ref() {
        return Err(Error::InvalidArgument("modules live on different quivers".into()));
    }
    let k = a.quiver().vertex_count();
    let gens = top_generators(m);
    let (p0, aug) = cover(a, m);
    let mut x_off = vec![0usize];
    for (v, _) in &gens {
        x_off.push(x_off.last().unwrap() + u.dim(*v));
    }
    let unknowns = *x_off.last().unwrap();
    // Φ_j : x ↦ values of the induced map P₀ → U on the labels at vertex j.
    let lift: Vec<Matrix<F>> = (0..k)
        .map(|j| {
            let mut phi = Matrix::zeros(u.dim(j) * p0.labels[j].len(), unknowns);
            for (l, &(g, w)) in p0.labels[j].iter().enumerate() {
                phi.set_block(l * u.dim(j), x_off[g], &a.act(u, w));
            }
            phi
        })
        .collect();
    let mut conditions = Matrix::zeros(0, unknowns);
    for j in 0..k {
        let kernel = aug[j].kernel();
        for c in 0..kernel.cols() {
            let kv = kernel.column(c);
            let mut row = Matrix::zeros(u.dim(j), unknowns);
            for (l, coeff) in kv.iter().enumerate() {
                if !coeff.is_zero() {
                    row.add_scaled(coeff, &lift[j].block(l * u.dim(j), 0, u.dim(j), unknowns));
                }
            }
            conditions = conditions.vstack(&row);
        }
    }
    let values = conditions.kernel();
    let sections: Vec<Matrix<F>> = (0..k)
        .map(|j| aug[j].solve_matrix(&Matrix::identity(m.dim(j))).expect("cover is surjective"))
        .collect();
    let basis = (0..values.cols())
        .map(|c| {
            let x = values.column(c);
            (0..k)
                .map(|j| {
                    let cols: Vec<Vec<F>> = p0.labels[j].iter().map(|&(g, w)| a.act_vec(u, w, &x[x_off[g]..x_off[g + 1]])).collect();
                    Matrix::from_columns(u.dim(j), &cols).mul(&sections[j])
                })
                .collect()
        })
        .collect();
    let shapes = (0..k).map(|j| (u.dim(j), m.dim(j))).collect();
    Ok(HomSpace { basis, generators: gens, values, shapes })
}
