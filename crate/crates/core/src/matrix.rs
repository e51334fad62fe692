//! Dense matrices over an exact field with the handful of reductions the rest
//! of the crate needs (row echelon form, kernels, column spaces, solving).

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self[(r, c)])).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a.clone() * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a.clone() * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(c.clone() * b);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut acc = F::zero();
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// Side-by-side concatenation of `blocks`, each with `rows` rows.
    pub fn hstack_all(rows: usize, blocks: &[Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                assert_eq!(b.rows, rows);
                data.extend_from_slice(&b.data[r * b.cols..(r + 1) * b.cols]);
            }
        }
        Self { rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Write `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m[(row, c)].clone() * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        if !m[(row, c)].is_zero() {
                            let v = f.clone() * &m[(row, c)];
                            m[(r, c)] -= &v;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                k[(p, j)] = -e.matrix[(r, f)].clone();
            }
        }
        k
    }

    /// The linearly independent columns of `self` chosen greedily from the left.
    pub fn column_basis(&self) -> Self {
        let e = self.echelon();
        self.select_columns(&e.pivots)
    }

    /// Solve `self * x = b` for a single right-hand side.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Self::from_columns(self.rows, &[b.to_vec()]));
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Solve `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &p) in e.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = e.matrix[(r, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let e = self.hstack(&Self::identity(n)).echelon();
        if e.pivots.len() < n || (n > 0 && e.pivots[n - 1] != n - 1) {
            return None;
        }
        Some(e.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a.clone() * &other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Row-major flattening, matching the Kronecker identity
    /// `vec(A X B) = (A ⊗ Bᵀ) vec(X)`.
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }
}

/// Extend the columns of `basis` (assumed independent) by columns of `pool` to
/// a basis of their joint span. Returns the indices into `pool` that were added.
pub fn extend_basis<F: Field>(basis: &Matrix<F>, pool: &Matrix<F>) -> Vec<usize> {
    let joint = basis.hstack(pool);
    let e = joint.echelon();
    e.pivots.iter().filter(|&&p| p >= basis.cols()).map(|&p| p - basis.cols()).collect()
}

pub fn vec_is_zero<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

pub fn vec_add_scaled<F: Field>(acc: &mut [F], c: &F, v: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c.clone() * x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, F2};

    type M = Matrix<Rational>;

    #[test]
    fn kernel_and_rank() {
        let a = M::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let a = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), M::identity(2));
        let x = a.solve(&[Rational::from_i64(3), Rational::from_i64(2)]).unwrap();
        assert_eq!(x, vec![Rational::from_i64(1), Rational::from_i64(1)]);
        let singular = M::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[Rational::from_i64(1), Rational::from_i64(0)]).is_none());
    }

    #[test]
    fn finite_field_elimination() {
        let a = Matrix::<F2>::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.rank(), 1);
        let b = Matrix::<F2>::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()), Matrix::identity(2));
    }

    #[test]
    fn kron_vectorisation_identity() {
        let a = M::from_i64_rows(&[&[1, 2], &[0, 1], &[3, -1]]);
        let x = M::from_i64_rows(&[&[1, -1, 2], &[0, 4, 1]]);
        let b = M::from_i64_rows(&[&[2, 0], &[1, 1], &[0, 5]]);
        let lhs = a.mul(&x).mul(&b).flatten();
        let rhs = a.kron(&b.transpose()).mul_vec(&x.flatten());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extend_basis_picks_new_directions() {
        let basis = M::from_i64_rows(&[&[1], &[1], &[0]]);
        let added = extend_basis(&basis, &M::identity(3));
        assert_eq!(added, vec![0, 2]);
    }
}
