//! Minimal exact linear algebra over arbitrary commutative rings and fields.
//!
//! Matrices here are small (tensor products of low-dimensional modules), so
//! the sparse type favors simplicity: column-major lists of `(row, value)`
//! pairs, sorted by row. Dense elimination is used for the handful of exact
//! solves (Gram coordinates, quasi-R-matrix blocks, invariant pairings).

/// Commutative ring scalar, passed by reference to avoid needless clones.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Ring with exact inverses for nonzero elements.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self) -> Option<Self>;
}

/// Sparse matrix, column-major. Entries within a column are sorted by row
/// index and never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SpMat<T> {
    nrows: usize,
    cols: Vec<Vec<(usize, T)>>,
}

impl<T: Ring> SpMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SpMat { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.cols[j].push((j, T::one()));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn col(&self, j: usize) -> &[(usize, T)] {
        &self.cols[j]
    }

    /// Builds from an unsorted triplet list, summing duplicates.
    pub fn from_triplets(nrows: usize, ncols: usize, trip: Vec<(usize, usize, T)>) -> Self {
        let mut m = Self::zero(nrows, ncols);
        let mut buckets: Vec<Vec<(usize, T)>> = vec![Vec::new(); ncols];
        for (r, c, v) in trip {
            assert!(r < nrows && c < ncols, "triplet out of range");
            buckets[c].push((r, v));
        }
        for (j, mut b) in buckets.into_iter().enumerate() {
            b.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, T)> = Vec::with_capacity(b.len());
            for (r, v) in b {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 = last.1.add(&v),
                    _ => out.push((r, v)),
                }
            }
            out.retain(|e| !e.1.is_zero());
            m.cols[j] = out;
        }
        m
    }

    pub fn entry(&self, r: usize, c: usize) -> T {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut trip = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                trip.push((j, *r, v.clone()));
            }
        }
        Self::from_triplets(self.ncols(), self.nrows, trip)
    }

    /// Matrix product `self * rhs`.
    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch in mul");
        let mut cols = Vec::with_capacity(rhs.ncols());
        for j in 0..rhs.ncols() {
            let mut acc: std::collections::BTreeMap<usize, T> = Default::default();
            for (k, v) in rhs.col(j) {
                for (r, w) in self.col(*k) {
                    let prod = w.mul(v);
                    match acc.get_mut(r) {
                        Some(cur) => *cur = cur.add(&prod),
                        None => {
                            acc.insert(*r, prod);
                        }
                    }
                }
            }
            cols.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SpMat { nrows: self.nrows, cols }
    }

    pub fn add_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.nrows, rhs.nrows);
        assert_eq!(self.ncols(), rhs.ncols());
        let mut trip = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                trip.push((*r, j, v.clone()));
            }
        }
        for (j, col) in rhs.cols.iter().enumerate() {
            for (r, v) in col {
                trip.push((*r, j, v.clone()));
            }
        }
        Self::from_triplets(self.nrows, self.ncols(), trip)
    }

    pub fn sub_mat(&self, rhs: &Self) -> Self {
        self.add_mat(&rhs.scale(&T::one().neg()))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.nrows, self.ncols());
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(r, v)| (*r, v.mul(s)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SpMat { nrows: self.nrows, cols }
    }

    pub fn is_zero_mat(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols()
            && self.cols.iter().enumerate().all(|(j, c)| {
                c.len() == 1 && c[0].0 == j && c[0].1 == T::one()
            })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SpMat<U> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(r, v)| (*r, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SpMat { nrows: self.nrows, cols }
    }

    /// Attempts an entrywise conversion, failing fast on the first `None`.
    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Option<U>) -> Option<SpMat<U>> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for c in &self.cols {
            let mut out = Vec::with_capacity(c.len());
            for (r, v) in c {
                let w = f(v)?;
                if !w.is_zero() {
                    out.push((*r, w));
                }
            }
            cols.push(out);
        }
        Some(SpMat { nrows: self.nrows, cols })
    }

    pub fn to_dense(&self) -> DMat<T> {
        let mut rows = vec![vec![T::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r][j] = v.clone();
            }
        }
        DMat { rows }
    }

    pub fn from_dense(d: &DMat<T>) -> Self {
        let nrows = d.nrows();
        let ncols = d.ncols();
        let mut trip = Vec::new();
        for r in 0..nrows {
            for c in 0..ncols {
                if !d.rows[r][c].is_zero() {
                    trip.push((r, c, d.rows[r][c].clone()));
                }
            }
        }
        Self::from_triplets(nrows, ncols, trip)
    }

    /// Applies `op` to the middle tensor factor of a state matrix whose rows
    /// factor as `left x op.ncols x right`, without materializing
    /// `id (x) op (x) id`. Returns `op_placed * state`.
    pub fn apply_block(op: &SpMat<T>, state: &SpMat<T>, left: usize, right: usize) -> SpMat<T> {
        assert_eq!(state.nrows, left * op.ncols() * right, "state rows do not factor");
        let new_rows = left * op.nrows() * right;
        let mut cols: Vec<Vec<(usize, T)>> = Vec::with_capacity(state.ncols());
        for j in 0..state.ncols() {
            let mut acc: std::collections::BTreeMap<usize, T> = Default::default();
            for (r, v) in state.col(j) {
                let rt = r % right;
                let mid = (r / right) % op.ncols();
                let lf = r / (right * op.ncols());
                for (r2, w) in op.col(mid) {
                    let out = (lf * op.nrows() + r2) * right + rt;
                    let prod = w.mul(v);
                    match acc.get_mut(&out) {
                        Some(cur) => *cur = cur.add(&prod),
                        None => {
                            acc.insert(out, prod);
                        }
                    }
                }
            }
            cols.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SpMat { nrows: new_rows, cols }
    }

    /// Kronecker product (first factor indexes the slow axis).
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut trip = Vec::with_capacity(self.nnz() * rhs.nnz());
        for (j1, c1) in self.cols.iter().enumerate() {
            for (r1, v1) in c1 {
                for (j2, c2) in rhs.cols.iter().enumerate() {
                    for (r2, v2) in c2 {
                        trip.push((r1 * rhs.nrows + r2, j1 * rhs.ncols() + j2, v1.mul(v2)));
                    }
                }
            }
        }
        Self::from_triplets(self.nrows * rhs.nrows, self.ncols() * rhs.ncols(), trip)
    }
}

/// Dense matrix for exact elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct DMat<T> {
    pub rows: Vec<Vec<T>>,
}

impl<T: Ring> DMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        DMat { rows: vec![vec![T::zero(); ncols]; nrows] }
    }

    /// Builds from rows with an explicit column count; an empty row list
    /// becomes a single zero row so the width is never lost.
    pub fn from_rows(rows: Vec<Vec<T>>, ncols: usize) -> Self {
        if rows.is_empty() {
            return Self::zero(1, ncols);
        }
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        DMat { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }
}

impl<T: Field> DMat<T> {
    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let nrows = self.nrows();
        let ncols = self.ncols();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            if row == nrows {
                break;
            }
            let Some(p) = (row..nrows).find(|&r| !self.rows[r][col].is_zero()) else {
                continue;
            };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].inv().expect("nonzero pivot");
            for c in col..ncols {
                self.rows[row][c] = self.rows[row][c].mul(&inv);
            }
            for r in 0..nrows {
                if r != row && !self.rows[r][col].is_zero() {
                    let f = self.rows[r][col].clone();
                    for c in col..ncols {
                        let t = self.rows[row][c].mul(&f);
                        self.rows[r][c] = self.rows[r][c].sub(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Solves `self * X = B` when a solution exists and is unique
    /// (i.e. the matrix has full column rank).
    pub fn solve(&self, b: &DMat<T>) -> Option<DMat<T>> {
        assert_eq!(self.nrows(), b.nrows());
        let n = self.ncols();
        let k = b.ncols();
        let mut aug = DMat::zero(self.nrows(), n + k);
        for r in 0..self.nrows() {
            for c in 0..n {
                aug.rows[r][c] = self.rows[r][c].clone();
            }
            for c in 0..k {
                aug.rows[r][n + c] = b.rows[r][c].clone();
            }
        }
        let pivots = aug.rref();
        // Full column rank of the coefficient block, no pivot in the RHS block.
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        // Consistency: rows past the rank must be entirely zero.
        for r in n..self.nrows() {
            if aug.rows.get(r).is_some_and(|row| row.iter().any(|v| !v.is_zero())) {
                return None;
            }
        }
        let mut x = DMat::zero(n, k);
        for (i, &_p) in pivots.iter().enumerate() {
            for c in 0..k {
                x.rows[i][c] = aug.rows[i][n + c].clone();
            }
        }
        Some(x)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let n = self.ncols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![T::zero(); n];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m.rows[i][f].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; `None` when singular.
    pub fn invert(&self) -> Option<DMat<T>> {
        let n = self.nrows();
        if n != self.ncols() {
            return None;
        }
        self.solve(&DMat::identity(n))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    impl Ring for i64 {
        fn zero() -> Self {
            0
        }
        fn one() -> Self {
            1
        }
        fn is_zero(&self) -> bool {
            *self == 0
        }
        fn add(&self, other: &Self) -> Self {
            self + other
        }
        fn sub(&self, other: &Self) -> Self {
            self - other
        }
        fn mul(&self, other: &Self) -> Self {
            self * other
        }
        fn neg(&self) -> Self {
            -self
        }
    }

    #[test]
    fn sparse_mul_matches_dense() {
        let a = SpMat::from_triplets(2, 3, vec![(0, 0, 1i64), (0, 2, 2), (1, 1, -3)]);
        let b = SpMat::from_triplets(3, 2, vec![(0, 0, 4i64), (1, 0, 5), (2, 1, 6)]);
        let c = a.mul_mat(&b);
        assert_eq!(c.entry(0, 0), 4);
        assert_eq!(c.entry(0, 1), 12);
        assert_eq!(c.entry(1, 0), -15);
        assert_eq!(c.entry(1, 1), 0);
    }

    #[test]
    fn apply_block_is_kron_placement() {
        // op on the middle factor of a 2 x 2 x 2 state space.
        let op = SpMat::from_triplets(2, 2, vec![(0, 1, 1i64), (1, 0, 1)]);
        let state = SpMat::identity(8);
        let placed = SpMat::apply_block(&op, &state, 2, 2);
        let full = SpMat::identity(2).kron(&op).kron(&SpMat::identity(2));
        assert_eq!(placed, full);
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = SpMat::from_triplets(1, 1, vec![(0, 0, 2i64), (0, 0, -2)]);
        assert!(m.is_zero_mat());
    }
}
