//! Dense exact linear algebra over `Q(ζ)`.
//!
//! Everything that needs row reduction goes through [`Echelon`] or
//! [`Matrix::rref`], so the elimination strategy can be swapped in one place.

use num_traits::{One, Zero};

use crate::scalar::Cyc3;

pub type Vector = Vec<Cyc3>;

/// `y += c * x`, skipping zero entries.
pub fn axpy(y: &mut [Cyc3], c: &Cyc3, x: &[Cyc3]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn is_zero_vec(v: &[Cyc3]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyc3>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Cyc3::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyc3::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyc3 {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyc3) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Cyc3) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Cyc3] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Cyc3]) -> Vector {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Cyc3::zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            axpy(&mut out, coeff, self.row(r));
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let rows = (0..self.rows).map(|r| other.left_apply(self.row(r))).collect();
        Matrix::from_rows(rows, other.cols)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Reduced row echelon form in place, columns scanned left to right.
    /// Returns the pivot columns; rows past the rank are zero.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, lead);
            let inv = self.get(lead, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(lead, c) * &inv;
                self.set(lead, c, v);
            }
            let pivot_row = self.row(lead)[col..].to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = -f;
                let row = &mut self.data[r * self.cols + col..(r + 1) * self.cols];
                axpy(row, &f, &pivot_row);
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
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
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn right_kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Cyc3::zero(); self.cols];
            v[free] = Cyc3::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{v : v M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        self.transpose().right_kernel()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace held as fully reduced rows with unit pivots, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Cyc3]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    /// Coordinates of `v` in the stored row basis, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Cyc3]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Unit vectors completing the span to the whole space, in increasing column order.
    pub fn complement(&self) -> Vec<Vector> {
        let mut used = vec![false; self.dim];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.dim)
            .filter(|&c| !used[c])
            .map(|c| {
                let mut v = vec![Cyc3::zero(); self.dim];
                v[c] = Cyc3::one();
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::zeta_pow;

    fn int_rows(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyc3::from(x)).collect()).collect(), cols)
    }

    #[test]
    fn rref_and_kernels() {
        let m = int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.right_kernel();
        assert_eq!(k.len(), 1);
        for r in 0..3 {
            let dot = m.row(r).iter().zip(&k[0]).fold(Cyc3::zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
        let lk = m.left_kernel();
        assert_eq!(lk.len(), 1);
        assert!(is_zero_vec(&m.left_apply(&lk[0])));
    }

    #[test]
    fn cyclotomic_dependency() {
        // rows (1, ζ) and (ζ², 1) are proportional since ζ²·ζ = 1
        let m = Matrix::from_rows(vec![vec![Cyc3::one(), zeta_pow(1)], vec![zeta_pow(2), Cyc3::one()]], 2);
        assert_eq!(m.rank(), 1);
        assert!(!m.is_invertible());
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![1.into(), 1.into(), 0.into()]));
        assert!(e.insert(vec![0.into(), 1.into(), 1.into()]));
        assert!(!e.insert(vec![1.into(), 2.into(), 1.into()]));
        let v: Vector = vec![2.into(), 5.into(), 3.into()];
        let c = e.coords(&v).unwrap();
        let mut back = vec![Cyc3::zero(); 3];
        for (coef, row) in c.iter().zip(e.rows()) {
            axpy(&mut back, coef, row);
        }
        assert_eq!(back, v);
        assert!(e.coords(&[1.into(), 0.into(), 0.into()]).is_none());
        assert_eq!(e.complement().len(), 1);
    }
}
