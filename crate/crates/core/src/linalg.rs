//! Dense linear algebra over F_p.
//!
//! Row reduction always pivots on the first row (from the top of the unreduced
//! block) that has a nonzero entry in the current column, so results are
//! reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % self.p as u64
            })
            .map(|x| x as u32)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let p = self.p;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = *x * c % p;
        }
    }

    /// row[target] -= c * row[source]
    fn eliminate(&mut self, target: usize, source: usize, c: u32) {
        let p = self.p;
        let neg = (p - c % p) % p;
        if neg == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j];
            if s != 0 {
                let t = &mut self.data[target * self.cols + j];
                *t = (*t + neg * s) % p;
            }
        }
    }

    /// Reduce in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = inverse_mod(self.get(r, c), self.p);
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        self.eliminate(i, r, f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::NotInvertible(format!(
                "rank {} < {n}",
                pivots.iter().filter(|&&c| c < n).count()
            )));
        }
        let mut inv = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Basis of {x : self * x = 0}.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = (self.p - m.get(r, f)) % self.p;
                }
                v
            })
            .collect()
    }
}

pub fn inverse_mod(a: u32, p: u32) -> u32 {
    let a = a % p;
    assert!(a != 0, "zero is not invertible");
    let mut acc = 1u64;
    let mut base = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A subspace of F_p^n held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::span(
            p,
            ambient,
            (0..ambient).map(|i| unit_vector(ambient, i)).collect::<Vec<_>>(),
        )
    }

    pub fn span(p: u32, ambient: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let rows: Vec<Vec<u32>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(p, ambient);
        }
        let mut m = Matrix::from_rows(p, ambient, &rows);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot columns; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut r = v.iter().map(|x| x % p).collect::<Vec<_>>();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = r[c];
            if f != 0 {
                for (x, &b) in r.iter_mut().zip(row) {
                    *x = (*x + (p - f) * b) % p;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.p,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned().collect::<Vec<_>>(),
        )
    }

    /// Standard basis vectors on the non-pivot coordinates; together with the
    /// subspace they span the ambient space.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(5, 2, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 0]);
        let s = Matrix::from_rows(2, 2, &[vec![1, 1], vec![1, 1]]);
        assert!(s.inverse().is_err());
        assert_eq!(s.solve(&[1, 0]), None);
        assert_eq!(s.kernel(), vec![vec![1, 1]]);
    }

    #[test]
    fn subspaces() {
        let a = Subspace::span(3, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 2, 1]));
        assert!(!a.contains(&[1, 0, 0]));
        let b = Subspace::span(3, 3, vec![vec![1, 2, 1], vec![2, 2, 0]]);
        assert!(a.equals(&b));
        assert_eq!(a.complement_coordinates().len(), 1);
        assert_eq!(Subspace::full(3, 3).dim(), 3);
    }
}
