use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{extend_basis, Matrix};

use super::algebra::DgAlgebra;

/// Strong deformation retract data `(i, p, h)` from a dg-algebra onto its
/// cohomology `H`, with `H` carrying the graded basis described by
/// `names`, `degrees` and `blocks`.
#[derive(Clone, Debug)]
pub struct HodgeData<F> {
    algebra: Arc<DgAlgebra<F>>,
    inclusion: Matrix<F>,
    projection: Matrix<F>,
    homotopy: Matrix<F>,
    names: Vec<String>,
    degrees: Vec<i32>,
    blocks: Vec<(usize, usize)>,
}

/// Which of the retract identities hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeCheck {
    pub retract: bool,
    pub homotopy_relation: bool,
    pub chain_maps: bool,
    pub degrees: bool,
    pub h_squared_zero: bool,
    pub h_after_i_zero: bool,
    pub p_after_h_zero: bool,
}

impl HodgeCheck {
    /// The deformation-retract identities without the side conditions.
    pub fn is_retract(&self) -> bool {
        self.retract && self.homotopy_relation && self.chain_maps && self.degrees
    }

    pub fn side_conditions(&self) -> bool {
        self.h_squared_zero && self.h_after_i_zero && self.p_after_h_zero
    }
}

impl<F: Field> HodgeData<F> {
    /// Wrap user-supplied retract data; every identity is checked.
    pub fn from_parts(
        algebra: Arc<DgAlgebra<F>>,
        inclusion: Matrix<F>,
        projection: Matrix<F>,
        homotopy: Matrix<F>,
        names: Vec<String>,
        degrees: Vec<i32>,
        blocks: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let m = names.len();
        if inclusion.shape() != (n, m) || projection.shape() != (m, n) || homotopy.shape() != (n, n) {
            return Err(Error::ShapeMismatch("retract maps do not match the algebra and H".into()));
        }
        if degrees.len() != m || blocks.len() != m {
            return Err(Error::ShapeMismatch("H degree/block labels".into()));
        }
        let data = Self { algebra, inclusion, projection, homotopy, names, degrees, blocks };
        let check = data.check();
        if !check.is_retract() {
            return Err(Error::InvalidDga(format!("retract identities fail: {check:?}")));
        }
        Ok(data)
    }

    pub fn algebra(&self) -> &DgAlgebra<F> {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<DgAlgebra<F>> {
        self.algebra.clone()
    }

    /// `i : H → A`, a `dim A × dim H` matrix.
    pub fn inclusion(&self) -> &Matrix<F> {
        &self.inclusion
    }

    /// `p : A → H`.
    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }

    /// `h : A → A` of degree −1.
    pub fn homotopy(&self) -> &Matrix<F> {
        &self.homotopy
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn betti(&self, k: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == k).count()
    }

    pub fn check(&self) -> HodgeCheck {
        let a = &*self.algebra;
        let n = a.dim();
        let m = self.dim();
        let (i, p, h) = (&self.inclusion, &self.projection, &self.homotopy);
        let d = a.differential();
        let retract = p.mul(i) == Matrix::identity(m);
        let rhs = Matrix::identity(n).add(&d.mul(h)).add(&h.mul(d));
        let homotopy_relation = i.mul(p) == rhs;
        let chain_maps = d.mul(i).is_zero() && p.mul(d).is_zero();
        let mut degrees = true;
        for r in 0..n {
            for c in 0..m {
                if !i[(r, c)].is_zero() && (a.degree(r) != self.degrees[c] || a.blocks()[r] != self.blocks[c]) {
                    degrees = false;
                }
                if !p[(c, r)].is_zero() && (a.degree(r) != self.degrees[c] || a.blocks()[r] != self.blocks[c]) {
                    degrees = false;
                }
            }
            for c in 0..n {
                if !h[(r, c)].is_zero() && a.degree(r) + 1 != a.degree(c) {
                    degrees = false;
                }
            }
        }
        HodgeCheck {
            retract,
            homotopy_relation,
            chain_maps,
            degrees,
            h_squared_zero: h.mul(h).is_zero(),
            h_after_i_zero: h.mul(i).is_zero(),
            p_after_h_zero: p.mul(h).is_zero(),
        }
    }
}

/// Split every `(degree, block)` sector as `B ⊕ H ⊕ C` with `B = d(C[-1])`,
/// `H` a complement of `B` in the cocycles and `C` a complement of the
/// cocycles, then set `h(d c) = −c` and `h = 0` on `H ⊕ C`. The resulting
/// data satisfies all side conditions.
pub fn compute_hodge<F: Field>(algebra: Arc<DgAlgebra<F>>) -> HodgeData<F> {
    let a = &*algebra;
    let n = a.dim();
    let d = a.differential();
    let block_set: BTreeSet<(usize, usize)> = a.blocks().iter().copied().collect();
    let Some((lo, hi)) = a.degree_range() else {
        return HodgeData {
            algebra: algebra.clone(),
            inclusion: Matrix::zeros(0, 0),
            projection: Matrix::zeros(0, 0),
            homotopy: Matrix::zeros(0, 0),
            names: vec![],
            degrees: vec![],
            blocks: vec![],
        };
    };

    // Per sector: indices, and columns of B, H, C in full coordinates.
    struct Sector<F> {
        b: Vec<Vec<F>>,
        h: Vec<Vec<F>>,
        c: Vec<Vec<F>>,
        degree: i32,
        block: (usize, usize),
    }
    let mut sectors: Vec<Sector<F>> = Vec::new();
    let mut homotopy = Matrix::zeros(n, n);

    for &block in &block_set {
        let mut prev_c: Vec<Vec<F>> = Vec::new();
        for k in lo..=hi {
            let idx: Vec<usize> = (0..n).filter(|&j| a.degree(j) == k && a.blocks()[j] == block).collect();
            let next: Vec<usize> = (0..n).filter(|&j| a.degree(j) == k + 1 && a.blocks()[j] == block).collect();
            let local_d = d.submatrix(&next, &idx);
            let z = local_d.kernel();
            let embed = |local: &[F]| {
                let mut v = vec![F::zero(); n];
                for (t, &j) in idx.iter().enumerate() {
                    v[j] = local[t].clone();
                }
                v
            };
            let restrict = |full: &[F]| idx.iter().map(|&j| full[j].clone()).collect::<Vec<F>>();

            let b_full: Vec<Vec<F>> = prev_c.iter().map(|c| a.d(c)).collect();
            let b_local: Vec<Vec<F>> = b_full.iter().map(|v| restrict(v)).collect();
            let b_mat = Matrix::from_columns(idx.len(), &b_local);
            let h_cols = extend_basis(&b_mat, &z);
            let h_local: Vec<Vec<F>> = h_cols.iter().map(|&c| z.column(c)).collect();
            let bh = b_mat.hstack(&Matrix::from_columns(idx.len(), &h_local));
            let c_idx = extend_basis(&bh, &Matrix::identity(idx.len()));
            let c_local: Vec<Vec<F>> = c_idx
                .iter()
                .map(|&t| {
                    let mut v = vec![F::zero(); idx.len()];
                    v[t] = F::one();
                    v
                })
                .collect();

            // h on this sector: in the local basis [B | H | C], h maps B_j ↦ −c_j
            // (the previous degree's C) and everything else to zero.
            if !b_local.is_empty() || !h_local.is_empty() || !c_local.is_empty() {
                let mut cols = b_local.clone();
                cols.extend(h_local.iter().cloned());
                cols.extend(c_local.iter().cloned());
                let t = Matrix::from_columns(idx.len(), &cols);
                let tinv = t.inverse().expect("B ⊕ H ⊕ C spans the sector");
                for (r, &src) in idx.iter().enumerate() {
                    // Image of basis vector `src` under h: −Σ_j tinv[j, r] c_prev_j.
                    for (j, c_prev) in prev_c.iter().enumerate() {
                        let coeff = tinv[(j, r)].clone();
                        if coeff.is_zero() {
                            continue;
                        }
                        for (tgt, x) in c_prev.iter().enumerate() {
                            if !x.is_zero() {
                                let v = coeff.clone() * x;
                                homotopy[(tgt, src)] -= &v;
                            }
                        }
                    }
                }
            }

            let c_full: Vec<Vec<F>> = c_local.iter().map(|v| embed(v)).collect();
            sectors.push(Sector {
                b: b_full,
                h: h_local.iter().map(|v| embed(v)).collect(),
                c: c_full.clone(),
                degree: k,
                block,
            });
            prev_c = c_full;
        }
    }

    sectors.sort_by_key(|s| (s.degree, s.block));
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut blocks = Vec::new();
    let mut h_cols: Vec<Vec<F>> = Vec::new();
    for s in &sectors {
        for v in &s.h {
            let support: Vec<usize> = (0..n).filter(|&j| !v[j].is_zero()).collect();
            let name = if support.len() == 1 && v[support[0]].is_one() {
                a.names()[support[0]].clone()
            } else {
                format!("h{}", names.len() + 1)
            };
            names.push(name);
            degrees.push(s.degree);
            blocks.push(s.block);
            h_cols.push(v.clone());
        }
    }
    let inclusion = Matrix::from_columns(n, &h_cols);

    // p reads off H-coordinates in the global basis B ∪ H ∪ C.
    let mut all_cols: Vec<Vec<F>> = Vec::new();
    let mut order = Vec::with_capacity(h_cols.len());
    for s in &sectors {
        all_cols.extend(s.b.iter().cloned());
        for v in &s.h {
            order.push(all_cols.len());
            all_cols.push(v.clone());
        }
        all_cols.extend(s.c.iter().cloned());
    }
    let tinv = Matrix::from_columns(n, &all_cols).inverse().expect("sector decomposition is a basis");
    let projection = tinv.select_rows(&order);

    HodgeData { algebra, inclusion, projection, homotopy, names, degrees, blocks }
}
