use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Representation};

use super::algebra::{QuotientAlgebra, StructureTable};
use super::ext::universal_extension;
use super::hom::{module_homs, HomSpace};

/// `End_A(E)` for `E = ⊕_i E_i`, with product `φψ = φ ∘ ψ`.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F> {
    homs: HomSpace<F>,
    table: StructureTable<F>,
    idempotents: Vec<Vec<F>>,
}

impl<F: Field> EndAlgebra<F> {
    /// Endomorphisms of `module`, whose `i`-th summand occupies the
    /// coordinates `offsets[i][v]..offsets[i + 1][v]` at vertex `v`.
    pub fn new(a: &QuotientAlgebra<F>, module: &Representation<F>, offsets: &[Vec<usize>]) -> Result<Self> {
        let homs = module_homs(a, module, module)?;
        let d = homs.dim();
        let compose = |phi: &[Matrix<F>], psi: &[Matrix<F>]| -> Vec<F> {
            let vals: Vec<F> = homs.generators().iter().flat_map(|(v, g)| phi[*v].mul_vec(&psi[*v].mul_vec(g))).collect();
            homs.solve_values(&vals).expect("endomorphisms are closed under composition")
        };
        let table = (0..d)
            .map(|i| (0..d).map(|j| compose(&homs.basis()[i], &homs.basis()[j])).collect())
            .collect();
        let table = StructureTable::new(table)?;
        let k = module.quiver().vertex_count();
        let idempotents = (0..offsets.len().saturating_sub(1))
            .map(|i| {
                let pi: Vec<Matrix<F>> = (0..k)
                    .map(|v| {
                        let mut m = Matrix::zeros(module.dim(v), module.dim(v));
                        let (lo, hi) = (offsets[i][v], offsets[i + 1][v]);
                        m.set_block(lo, lo, &Matrix::identity(hi - lo));
                        m
                    })
                    .collect();
                homs.coordinates(&pi).ok_or_else(|| Error::InvalidArgument("summand projection is not a module map".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { homs, table, idempotents })
    }

    pub fn dim(&self) -> usize {
        self.homs.dim()
    }

    pub fn basis(&self) -> &[Vec<Matrix<F>>] {
        self.homs.basis()
    }

    pub fn table(&self) -> &StructureTable<F> {
        &self.table
    }

    pub fn homs(&self) -> &HomSpace<F> {
        &self.homs
    }

    /// Coordinates of the projection onto summand `i`.
    pub fn idempotent(&self, i: usize) -> &[F] {
        &self.idempotents[i]
    }

    pub fn unit(&self) -> Vec<F> {
        let mut u = vec![F::zero(); self.dim()];
        for e in &self.idempotents {
            crate::matrix::vec_add_scaled(&mut u, &F::one(), e);
        }
        u
    }

    pub fn coordinates(&self, phi: &[Matrix<F>]) -> Option<Vec<F>> {
        self.homs.coordinates(phi)
    }

    pub fn element(&self, coords: &[F]) -> Vec<Matrix<F>> {
        self.homs.element(coords)
    }
}

/// One level `n` of the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel<F> {
    pub summands: Vec<Representation<F>>,
    /// Top generator of each summand, at its own vertex.
    pub generators: Vec<Vec<F>>,
    pub module: Representation<F>,
    /// `offsets[i][v]`: first coordinate of summand `i` at vertex `v`; one
    /// extra row holds the totals.
    pub offsets: Vec<Vec<usize>>,
    pub endo: EndAlgebra<F>,
    /// `ext_dims[i][j] = dim Ext¹(E_i, S_j)`.
    pub ext_dims: Vec<Vec<usize>>,
    /// `E⁽ⁿ⁾ → E⁽ⁿ⁻¹⁾` per vertex; absent at level zero.
    pub to_previous: Option<Vec<Matrix<F>>>,
    /// `R⁽ⁿ⁾ → R⁽ⁿ⁻¹⁾` in endomorphism coordinates (columns are images of
    /// basis elements), or `None` at level zero or if some endomorphism fails
    /// to preserve the kernel.
    pub restriction: Option<Matrix<F>>,
}

impl<F: Field> TowerLevel<F> {
    pub fn is_stable(&self) -> bool {
        self.ext_dims.iter().flatten().all(|&d| d == 0)
    }

    /// Embedding `E_i → E` per vertex.
    pub fn summand_inclusion(&self, i: usize) -> Vec<Matrix<F>> {
        (0..self.module.quiver().vertex_count())
            .map(|v| {
                let mut m = Matrix::zeros(self.module.dim(v), self.summands[i].dim(v));
                m.set_block(self.offsets[i][v], 0, &Matrix::identity(self.summands[i].dim(v)));
                m
            })
            .collect()
    }

    /// The top generator of summand `i` as a vector of `E` at vertex `i`.
    pub fn generator_in_module(&self, i: usize) -> Vec<F> {
        let mut g = vec![F::zero(); self.module.dim(i)];
        for (x, c) in self.generators[i].iter().enumerate() {
            g[self.offsets[i][i] + x] = c.clone();
        }
        g
    }
}

/// `E⁽⁰⁾ = ⊕ S_i`, and `E_i⁽ⁿ⁺¹⁾` the universal extension of `E_i⁽ⁿ⁾` by
/// the vertex simples, with `R⁽ⁿ⁾ = End(E⁽ⁿ⁾)`.
#[derive(Clone, Debug)]
pub struct NcTower<F> {
    pub algebra: QuotientAlgebra<F>,
    pub levels: Vec<TowerLevel<F>>,
}

impl<F: Field> NcTower<F> {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &TowerLevel<F> {
        &self.levels[n]
    }

    pub fn top(&self) -> &TowerLevel<F> {
        self.levels.last().expect("tower has a base level")
    }

    /// `dim R⁽ⁿ⁾` for every level.
    pub fn endo_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.endo.dim()).collect()
    }

    /// First level with no further extensions.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.levels.iter().position(TowerLevel::is_stable)
    }
}

fn offsets_of<F: Field>(summands: &[Representation<F>], k: usize) -> Vec<Vec<usize>> {
    let mut offsets = vec![vec![0usize; k]];
    for s in summands {
        let last = offsets.last().unwrap();
        let next = (0..k).map(|v| last[v] + s.dim(v)).collect();
        offsets.push(next);
    }
    offsets
}

fn direct_sum<F: Field>(a: &QuotientAlgebra<F>, summands: &[Representation<F>]) -> Representation<F> {
    let k = a.quiver().vertex_count();
    summands
        .iter()
        .fold(Representation::zero(a.quiver().clone(), DimVector::zero(k)), |acc, s| acc.direct_sum(s).expect("same quiver"))
}

fn block_diagonal<F: Field>(blocks: &[&Matrix<F>]) -> Matrix<F> {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    m
}

/// `R⁽ⁿ⁾ → R⁽ⁿ⁻¹⁾` induced by the surjection `p : E⁽ⁿ⁾ → E⁽ⁿ⁻¹⁾`, whose
/// kernel is spanned by the leading coordinates of each summand.
fn restriction<F: Field>(upper: &TowerLevel<F>, lower: &TowerLevel<F>, p: &[Matrix<F>]) -> Option<Matrix<F>> {
    let k = p.len();
    let sections: Vec<Matrix<F>> = p.iter().map(Matrix::transpose).collect();
    let kernels: Vec<Matrix<F>> = p.iter().map(Matrix::kernel).collect();
    let mut cols = Vec::with_capacity(upper.endo.dim());
    for phi in upper.endo.basis() {
        if (0..k).any(|v| !p[v].mul(&phi[v]).mul(&kernels[v]).is_zero()) {
            return None;
        }
        let bar: Vec<Matrix<F>> = (0..k).map(|v| p[v].mul(&phi[v]).mul(&sections[v])).collect();
        cols.push(lower.endo.coordinates(&bar)?);
    }
    Some(Matrix::from_columns(lower.endo.dim(), &cols))
}

/// Build `E⁽ⁿ⁾` and `R⁽ⁿ⁾` for `n = 0..=n_max`. Extensions are computed over
/// `A` truncated at `n_max + 1` (or deeper if `a` already is), so the Ext
/// dimensions of the top level are meaningful.
pub fn build_tower<F: Field>(a: &QuotientAlgebra<F>, n_max: usize) -> Result<NcTower<F>> {
    let algebra = if a.truncation() > n_max { a.clone() } else { a.with_truncation(n_max + 1)? };
    let q = algebra.quiver().clone();
    let k = q.vertex_count();
    let simples: Vec<usize> = (0..k).collect();
    let mut summands: Vec<Representation<F>> = (0..k).map(|i| Representation::vertex_simple(q.clone(), i)).collect();
    let mut generators: Vec<Vec<F>> = vec![vec![F::one()]; k];
    let mut to_previous: Option<Vec<Matrix<F>>> = None;
    let mut levels: Vec<TowerLevel<F>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let offsets = offsets_of(&summands, k);
        let module = direct_sum(&algebra, &summands);
        let endo = EndAlgebra::new(&algebra, &module, &offsets)?;
        let extensions = summands
            .iter()
            .map(|s| universal_extension(&algebra, s, &simples))
            .collect::<Result<Vec<_>>>()?;
        let ext_dims = extensions.iter().map(|u| u.ext_dims.iter().map(|&(_, d)| d).collect()).collect();
        let mut level = TowerLevel {
            summands: summands.clone(),
            generators: generators.clone(),
            module,
            offsets,
            endo,
            ext_dims,
            to_previous: to_previous.take(),
            restriction: None,
        };
        if let (Some(prev), Some(p)) = (levels.last(), level.to_previous.as_ref()) {
            level.restriction = restriction(&level, prev, p);
        }
        levels.push(level);
        if n == n_max {
            break;
        }
        to_previous = Some(
            (0..k)
                .map(|v| block_diagonal(&extensions.iter().map(|u| &u.projection[v]).collect::<Vec<_>>()))
                .collect(),
        );
        generators = extensions
            .iter()
            .zip(&generators)
            .enumerate()
            .map(|(i, (u, g))| {
                let mut lifted = vec![F::zero(); u.kernel_dims.get(i)];
                lifted.extend(g.iter().cloned());
                lifted
            })
            .collect();
        summands = extensions.into_iter().map(|u| u.module).collect();
    }
    Ok(NcTower { algebra, levels })
}
