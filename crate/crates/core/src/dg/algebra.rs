use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vec_add_scaled, Matrix};

/// A finite-dimensional dg-algebra given by structure constants.
///
/// Basis element `j` has integer degree `degrees[j]` and lives in the
/// vertex block `blocks[j] = (a, b)`; one-object algebras use `(0, 0)`
/// throughout. Column `j` of `differential` is `d(b_j)`, and
/// `product[i * dim + j]` is the coordinate vector of `b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra<F> {
    names: Vec<String>,
    degrees: Vec<i32>,
    blocks: Vec<(usize, usize)>,
    vertex_count: usize,
    differential: Matrix<F>,
    product: Vec<Vec<F>>,
    unit: Option<Vec<F>>,
}

/// First failure found by [`DgAlgebra::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgaViolation {
    DifferentialDegree { source: String, target: String },
    ProductDegree { left: String, right: String, target: String },
    BlockMismatch { detail: String },
    DSquared { element: String },
    Leibniz { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    Unit { element: String },
}

impl fmt::Display for DgaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DifferentialDegree { source, target } => {
                write!(f, "d({source}) has a component on {target} of the wrong degree")
            }
            Self::ProductDegree { left, right, target } => {
                write!(f, "{left}·{right} has a component on {target} of the wrong degree")
            }
            Self::BlockMismatch { detail } => write!(f, "vertex blocks not respected: {detail}"),
            Self::DSquared { element } => write!(f, "d(d({element})) ≠ 0"),
            Self::Leibniz { left, right } => write!(f, "Leibniz rule fails on ({left}, {right})"),
            Self::Associativity { a, b, c } => write!(f, "associativity fails on ({a}, {b}, {c})"),
            Self::Unit { element } => write!(f, "unit does not act trivially on {element}"),
        }
    }
}

impl<F: Field> DgAlgebra<F> {
    /// Assemble an algebra. Only shapes are validated here; the algebraic
    /// identities are checked by [`DgAlgebra::check`].
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i32>,
        differential: Matrix<F>,
        product: Vec<Vec<F>>,
        unit: Option<Vec<F>>,
    ) -> Result<Self> {
        let n = names.len();
        let blocks = vec![(0, 0); n];
        Self::with_blocks(names, degrees, blocks, 1, differential, product, unit)
    }

    pub fn with_blocks(
        names: Vec<String>,
        degrees: Vec<i32>,
        blocks: Vec<(usize, usize)>,
        vertex_count: usize,
        differential: Matrix<F>,
        product: Vec<Vec<F>>,
        unit: Option<Vec<F>>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || blocks.len() != n {
            return Err(Error::InvalidDga("degree/block list length differs from basis size".into()));
        }
        if differential.shape() != (n, n) {
            return Err(Error::InvalidDga("differential must be square on the basis".into()));
        }
        if product.len() != n * n || product.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidDga("product table must have dim² entries of length dim".into()));
        }
        if let Some(u) = &unit {
            if u.len() != n {
                return Err(Error::InvalidDga("unit vector has the wrong length".into()));
            }
        }
        if blocks.iter().any(|&(a, b)| a >= vertex_count || b >= vertex_count) {
            return Err(Error::InvalidDga("block label out of range".into()));
        }
        Ok(Self { names, degrees, blocks, vertex_count, differential, product, unit })
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

    pub fn degree(&self, j: usize) -> i32 {
        self.degrees[j]
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn differential(&self) -> &Matrix<F> {
        &self.differential
    }

    pub fn unit(&self) -> Option<&Vec<F>> {
        self.unit.as_ref()
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        &self.product[i * self.dim() + j]
    }

    pub fn basis_vector(&self, j: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[j] = F::one();
        v
    }

    pub fn d(&self, v: &[F]) -> Vec<F> {
        self.differential.mul_vec(v)
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.clone() * y;
                vec_add_scaled(&mut out, &c, &self.product[i * n + j]);
            }
        }
        out
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn has_degree(&self, k: i32) -> bool {
        self.degrees.contains(&k)
    }

    /// Basis indices of the given degree, in basis order.
    pub fn basis_of_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.degrees[j] == k).collect()
    }

    /// Verify degree bookkeeping, block compatibility, `d² = 0`, the graded
    /// Leibniz rule, associativity and the unit on all basis tuples.
    pub fn check(&self) -> std::result::Result<(), DgaViolation> {
        let n = self.dim();
        let name = |j: usize| self.names[j].clone();
        for s in 0..n {
            for t in 0..n {
                if !self.differential[(t, s)].is_zero() {
                    if self.degrees[t] != self.degrees[s] + 1 {
                        return Err(DgaViolation::DifferentialDegree { source: name(s), target: name(t) });
                    }
                    if self.blocks[t] != self.blocks[s] {
                        return Err(DgaViolation::BlockMismatch {
                            detail: format!("d({}) reaches {}", name(s), name(t)),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product[i * n + j].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return Err(DgaViolation::ProductDegree { left: name(i), right: name(j), target: name(k) });
                    }
                    let (a, b) = self.blocks[i];
                    let (b2, c2) = self.blocks[j];
                    if b != b2 || self.blocks[k] != (a, c2) {
                        return Err(DgaViolation::BlockMismatch {
                            detail: format!("{}·{} reaches {}", name(i), name(j), name(k)),
                        });
                    }
                }
            }
        }
        if !self.differential.mul(&self.differential).is_zero() {
            let dd = self.differential.mul(&self.differential);
            let bad = (0..n).find(|&j| dd.column(j).iter().any(|x| !x.is_zero())).unwrap_or(0);
            return Err(DgaViolation::DSquared { element: name(bad) });
        }
        let basis: Vec<Vec<F>> = (0..n).map(|j| self.basis_vector(j)).collect();
        let dbasis: Vec<Vec<F>> = (0..n).map(|j| self.differential.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.d(self.basis_product(i, j));
                let mut rhs = self.mul(&dbasis[i], &basis[j]);
                let sign = if self.degrees[i].rem_euclid(2) == 1 { -F::one() } else { F::one() };
                vec_add_scaled(&mut rhs, &sign, &self.mul(&basis[i], &dbasis[j]));
                if lhs != rhs {
                    return Err(DgaViolation::Leibniz { left: name(i), right: name(j) });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.mul(ij, &basis[k]);
                    let rhs = self.mul(&basis[i], self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(DgaViolation::Associativity { a: name(i), b: name(j), c: name(k) });
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for j in 0..n {
                if self.mul(u, &basis[j]) != basis[j] || self.mul(&basis[j], u) != basis[j] {
                    return Err(DgaViolation::Unit { element: name(j) });
                }
            }
        }
        Ok(())
    }

    /// Transport the structure along an invertible change of basis `g`
    /// (new basis vector `j` is column `j` of `g` in old coordinates).
    /// `g` must preserve degrees and blocks.
    pub fn change_basis(&self, g: &Matrix<F>) -> Result<Self> {
        let n = self.dim();
        let ginv = g.inverse().ok_or_else(|| Error::InvalidArgument("basis change is singular".into()))?;
        for r in 0..n {
            for c in 0..n {
                if !g[(r, c)].is_zero() && (self.degrees[r] != self.degrees[c] || self.blocks[r] != self.blocks[c]) {
                    return Err(Error::InvalidArgument("basis change mixes degrees or blocks".into()));
                }
            }
        }
        let differential = ginv.mul(&self.differential).mul(g);
        let cols = g.columns();
        let mut product = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                product.push(ginv.mul_vec(&self.mul(&cols[i], &cols[j])));
            }
        }
        let unit = self.unit.as_ref().map(|u| ginv.mul_vec(u));
        let names = (0..n).map(|j| format!("{}'", self.names[j])).collect();
        Self::with_blocks(names, self.degrees.clone(), self.blocks.clone(), self.vertex_count, differential, product, unit)
    }
}

/// Build an algebra from sparse name-based data: differential entries
/// `(source, target, coeff)` meaning `d(source) ∋ coeff·target`, and product
/// entries `(left, right, target, coeff)` meaning `left·right ∋ coeff·target`.
pub struct DgaBuilder<F> {
    names: Vec<String>,
    degrees: Vec<i32>,
    blocks: Vec<(usize, usize)>,
    vertex_count: usize,
    diff: Vec<(String, String, F)>,
    prod: Vec<(String, String, String, F)>,
    unit: Option<Vec<(String, F)>>,
}

impl<F: Field> DgaBuilder<F> {
    pub fn new() -> Self {
        Self { names: vec![], degrees: vec![], blocks: vec![], vertex_count: 1, diff: vec![], prod: vec![], unit: None }
    }

    pub fn vertices(mut self, k: usize) -> Self {
        self.vertex_count = k;
        self
    }

    pub fn basis(mut self, name: &str, degree: i32) -> Self {
        self.names.push(name.into());
        self.degrees.push(degree);
        self.blocks.push((0, 0));
        self
    }

    pub fn basis_in_block(mut self, name: &str, degree: i32, block: (usize, usize)) -> Self {
        self.names.push(name.into());
        self.degrees.push(degree);
        self.blocks.push(block);
        self
    }

    pub fn d(mut self, source: &str, target: &str, c: F) -> Self {
        self.diff.push((source.into(), target.into(), c));
        self
    }

    pub fn product(mut self, left: &str, right: &str, target: &str, c: F) -> Self {
        self.prod.push((left.into(), right.into(), target.into(), c));
        self
    }

    pub fn unit(mut self, terms: &[(&str, F)]) -> Self {
        self.unit = Some(terms.iter().map(|(n, c)| (n.to_string(), c.clone())).collect());
        self
    }

    pub fn build(self) -> Result<DgAlgebra<F>> {
        let n = self.names.len();
        let idx = |s: &str| {
            self.names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::InvalidDga(format!("unknown basis element `{s}`")))
        };
        let mut differential = Matrix::zeros(n, n);
        for (s, t, c) in &self.diff {
            let (s, t) = (idx(s)?, idx(t)?);
            differential[(t, s)] += c;
        }
        let mut product = vec![vec![F::zero(); n]; n * n];
        for (l, r, t, c) in &self.prod {
            let (l, r, t) = (idx(l)?, idx(r)?, idx(t)?);
            product[l * n + r][t] += c;
        }
        let unit = match &self.unit {
            Some(terms) => {
                let mut u = vec![F::zero(); n];
                for (name, c) in terms {
                    u[idx(name)?] += c;
                }
                Some(u)
            }
            None => None,
        };
        DgAlgebra::with_blocks(
            self.names.clone(),
            self.degrees.clone(),
            self.blocks.clone(),
            self.vertex_count,
            differential,
            product,
            unit,
        )
    }
}

impl<F: Field> Default for DgaBuilder<F> {
    fn default() -> Self {
        Self::new()
    }
}
