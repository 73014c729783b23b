//! Dense exact linear algebra over `F_p`: row reduction, rank, kernels and
//! subspaces kept in reduced row echelon form.

use crate::arith::Prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors of equal length.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().map(|&x| x % p.get()));
        }
        Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let idx = i * self.cols + j;
        self.data[idx] = self.p.add(self.data[idx], v % self.p.get());
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        Matrix {
            data: self.data.iter().map(|&x| p.mul(x, c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| p.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p;
        let q = p.get() as u64;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % q;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * out.cols + j] = v as u32;
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pivot != row {
                for j in 0..self.cols {
                    self.data.swap(pivot * self.cols + j, row * self.cols + j);
                }
            }
            let inv = p.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let idx = row * self.cols + j;
                self.data[idx] = p.mul(self.data[idx], inv);
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let f = self.get(i, col);
                if f == 0 {
                    continue;
                }
                let nf = p.neg(f);
                for j in col..self.cols {
                    let src = self.data[row * self.cols + j];
                    if src != 0 {
                        let idx = i * self.cols + j;
                        p.mul_add_assign(&mut self.data[idx], nf, src);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Outcome of solving `sum_k x_k * columns[k] = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// The columns are independent and the solution is unique.
    Unique(Vec<u32>),
    /// A solution exists but the columns are dependent; free variables are 0.
    Particular(Vec<u32>),
    Inconsistent,
}

pub fn solve_columns(p: Prime, columns: &[Vec<u32>], rhs: &[u32]) -> Solution {
    let n = columns.len();
    let len = rhs.len();
    for c in columns {
        assert_eq!(c.len(), len, "column length mismatch");
    }
    let mut aug = Matrix::zeros(p, len, n + 1);
    for (k, c) in columns.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            aug.set(i, k, v);
        }
    }
    for (i, &v) in rhs.iter().enumerate() {
        aug.set(i, n, v);
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    let mut x = vec![0u32; n];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(i, n);
    }
    if pivots.len() == n {
        Solution::Unique(x)
    } else {
        Solution::Particular(x)
    }
}

/// A subspace of `F_p^n`, stored as the nonzero rows of its reduced row
/// echelon form (which makes equality structural).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn span<'a, I>(p: Prime, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<u32>>,
    {
        let rows: Vec<Vec<u32>> = vectors.into_iter().cloned().collect();
        if rows.is_empty() {
            return Subspace::zero(p, ambient);
        }
        let mut m = Matrix::from_rows(p, ambient, &rows);
        let rank = m.rref_in_place().len();
        let rows = (0..rank).map(|i| m.row(i).to_vec()).collect();
        Subspace { p, ambient, rows }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(p: Prime, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<u32>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![0u32; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span(p, ambient, &vectors)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Subspace::span(self.p, self.ambient, &rows).dim() == self.dim()
    }

    pub fn is_within(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.p, self.ambient, self.rows.iter().chain(&other.rows))
    }
}
