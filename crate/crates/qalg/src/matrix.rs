//! Dense exact matrices over a [`Field`].
//!
//! Convention used across the crate: modules are right modules, vectors are
//! rows, and a linear map V -> W is a (dim V) x (dim W) matrix acting by
//! right multiplication, `v |-> v * M`. Composition of maps is therefore
//! plain left-to-right matrix multiplication: the matrix of `f` then `g` is
//! `M_f * M_g`.

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    params: F::Params,
    data: Vec<F>,
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of full Gauss-Jordan elimination.
pub struct Echelon<F: Field> {
    /// Reduced row echelon form of the input.
    pub rref: Matrix<F>,
    /// Invertible transform with `transform * input = rref`.
    pub transform: Matrix<F>,
    /// `(row, col)` of each pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize, params: F::Params) -> Self {
        Matrix { rows, cols, params, data: vec![F::zero(params); rows * cols] }
    }

    pub fn identity(n: usize, params: F::Params) -> Self {
        let mut m = Matrix::zero(n, n, params);
        for i in 0..n {
            m.set(i, i, F::one(params));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, params: F::Params) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        Matrix { rows: r, cols, params, data }
    }

    pub fn from_fn(rows: usize, cols: usize, params: F::Params, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, params, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> F::Params {
        self.params
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<F> {
        self.row(i).to_vec()
    }

    pub fn push_row(&mut self, row: Vec<F>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, self.params, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, params: self.params, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, params: self.params, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, params: self.params, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, params: self.params, data }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out: Matrix<F> = Matrix::zero(self.rows, rhs.cols, self.params);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply a row vector on the left: returns `v * self`.
    pub fn apply_row(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(self.params); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = self.at(k, j);
                if !b.is_zero() {
                    out[j] = out[j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.rows, self.cols + rhs.cols, self.params, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { rhs.at(i, j - self.cols).clone() }
        })
    }

    /// Vertical concatenation `[self; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { rows: self.rows + rhs.rows, cols: self.cols, params: self.params, data }
    }

    pub fn block_diag(blocks: &[&Matrix<F>], params: F::Params) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(rows, cols, params);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Full Gauss-Jordan elimination with transform tracking.
    pub fn echelon(&self) -> Echelon<F> {
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows, self.params);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.at(i, c).is_zero()) else { continue };
            a.swap_rows(r, p);
            t.swap_rows(r, p);
            let inv = a.at(r, c).inv().expect("pivot is nonzero");
            a.scale_row(r, &inv);
            t.scale_row(r, &inv);
            for i in 0..a.rows {
                if i != r && !a.at(i, c).is_zero() {
                    let f = a.at(i, c).neg();
                    a.add_scaled_row(i, r, &f);
                    t.add_scaled_row(i, r, &f);
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        Echelon { rref: a, transform: t, pivots }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &F) {
        for c in 0..self.cols {
            let v = self.at(i, c).mul(f);
            self.set(i, c, v);
        }
    }

    /// row_i += f * row_j
    fn add_scaled_row(&mut self, i: usize, j: usize, f: &F) {
        for c in 0..self.cols {
            let v = self.at(i, c).add(&self.at(j, c).mul(f));
            self.set(i, c, v);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis (as matrix rows) of `{ v : v * self = 0 }`.
    pub fn left_kernel(&self) -> Matrix<F> {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let rows: Vec<Vec<F>> = (rank..self.rows).map(|i| ech.transform.row_vec(i)).collect();
        Matrix::from_rows(rows, self.rows, self.params)
    }

    /// Basis of the row space, in reduced echelon form.
    pub fn row_basis(&self) -> Matrix<F> {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let rows: Vec<Vec<F>> = (0..rank).map(|i| ech.rref.row_vec(i)).collect();
        Matrix::from_rows(rows, self.cols, self.params)
    }

    /// Solve `X * self = rhs` row-wise; `None` if some row of `rhs` is not in
    /// the row space of `self`.
    pub fn solve_left(&self, rhs: &Self) -> Option<Matrix<F>> {
        assert_eq!(self.cols, rhs.cols);
        let ech = self.echelon();
        let mut out = Matrix::zero(rhs.rows, self.rows, self.params);
        for i in 0..rhs.rows {
            let mut residue = rhs.row_vec(i);
            let mut combo = vec![F::zero(self.params); self.rows];
            for &(pr, pc) in &ech.pivots {
                let c = residue[pc].clone();
                if c.is_zero() {
                    continue;
                }
                // residue -= c * rref[pr], combo += c * transform[pr]
                for j in 0..self.cols {
                    residue[j] = residue[j].sub(&c.mul(ech.rref.at(pr, j)));
                }
                for j in 0..self.rows {
                    combo[j] = combo[j].add(&c.mul(ech.transform.at(pr, j)));
                }
            }
            if residue.iter().any(|x| !x.is_zero()) {
                return None;
            }
            for (j, v) in combo.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Does the row space of `self` contain every row of `rhs`?
    pub fn row_space_contains(&self, rhs: &Self) -> bool {
        self.solve_left(rhs).is_some()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let ech = self.echelon();
        if ech.pivots.len() == self.rows {
            Some(ech.transform)
        } else {
            None
        }
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut t = F::zero(self.params);
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    /// Rows of `self` describe a subspace of k^cols. Returns `(complement,
    /// projection, section)` where `complement` rows extend the subspace to
    /// all of k^cols, `projection` is cols x q with `v * projection` the
    /// coordinates of `v` modulo the subspace, and `section` is the q x cols
    /// matrix of complement representatives (`section * projection = id`).
    pub fn quotient_data(&self) -> (Matrix<F>, Matrix<F>, Matrix<F>) {
        let basis = self.row_basis();
        let pivot_cols: Vec<usize> = basis.echelon().pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let q = free_cols.len();
        let mut complement = Matrix::zero(q, self.cols, self.params);
        for (i, &c) in free_cols.iter().enumerate() {
            complement.set(i, c, F::one(self.params));
        }
        // full = [basis; complement] is invertible; projection reads off the
        // complement coordinates.
        let full = basis.vstack(&complement);
        let inv = full.inverse().expect("basis + complement spans");
        let mut projection = Matrix::zero(self.cols, q, self.params);
        for i in 0..self.cols {
            for (k, _) in free_cols.iter().enumerate() {
                projection.set(i, k, inv.at(i, basis.rows() + k).clone());
            }
        }
        (complement.clone(), projection, complement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_rational::BigRational;

    fn qm(rows: Vec<Vec<i64>>, cols: usize) -> Matrix<BigRational> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| <BigRational as Field>::from_int(x, ())).collect())
            .collect();
        Matrix::from_rows(rows, cols, ())
    }

    #[test]
    fn rank_and_kernel_over_q() {
        let a = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3);
        assert_eq!(a.rank(), 2);
        let k = a.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero(), "kernel rows must annihilate the matrix");
    }

    #[test]
    fn rank_over_f2_differs_from_q() {
        // Over F2 this matrix loses rank; literal integers must not be
        // interpreted through a characteristic-zero lens.
        let rows = vec![vec![Fp::new(1, 2), Fp::new(1, 2)], vec![Fp::new(1, 2), Fp::new(1, 2)]];
        let a = Matrix::from_rows(rows, 2, 2);
        assert_eq!(a.rank(), 1);
        let b = qm(vec![vec![1, 1], vec![1, 1]], 2);
        assert_eq!(b.rank(), 1);
        let c = qm(vec![vec![1, 1], vec![1, -1]], 2);
        assert_eq!(c.rank(), 2);
        let rows = vec![vec![Fp::new(1, 2), Fp::new(1, 2)], vec![Fp::new(1, 2), Fp::new(-1, 2)]];
        let d = Matrix::from_rows(rows, 2, 2);
        assert_eq!(d.rank(), 1, "1 = -1 mod 2");
    }

    #[test]
    fn solve_and_inverse() {
        let a = qm(vec![vec![2, 0, 1], vec![0, 1, 0], vec![1, 0, 1]], 3);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv), Matrix::identity(3, ()));
        assert_eq!(inv.mul(&a), Matrix::identity(3, ()));

        let b = qm(vec![vec![3, 1, 2]], 3);
        let x = a.solve_left(&b).expect("consistent system");
        assert_eq!(x.mul(&a), b);

        let sing = qm(vec![vec![1, 2], vec![2, 4]], 2);
        assert!(sing.inverse().is_none());
        let off = qm(vec![vec![0, 1]], 2);
        assert!(sing.solve_left(&off).is_none(), "row not in row space");
    }

    #[test]
    fn echelon_transform_property() {
        let a = qm(vec![vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 5]], 3);
        let e = a.echelon();
        assert_eq!(e.transform.mul(&a), e.rref);
        assert_eq!(e.pivots.len(), 2);
    }

    #[test]
    fn quotient_data_roundtrip() {
        let sub = qm(vec![vec![1, 1, 0], vec![0, 0, 1]], 3);
        let (complement, projection, section) = sub.quotient_data();
        assert_eq!(complement.rows(), 1);
        assert_eq!(section.mul(&projection), Matrix::identity(1, ()));
        // Subspace rows project to zero.
        assert!(sub.mul(&projection).is_zero());
    }
}
