//! Dense exact matrices and the linear-system solvers the whole engine
//! rests on: rank, kernel, image, quotient and factorization with exact
//! certificates.
//!
//! Everything here is plain Gaussian elimination over a field. No pivoting
//! heuristics are needed because arithmetic is exact.

use crate::scalar::Scalar;

/// A dense `rows x cols` matrix, row major.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: std::fmt::Debug> std::fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", &self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows of integers; test and fixture convenience.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| R::from_i64(rows[i][j]))
    }

    /// Matrix of the linear map `e_j -> sign(j) * e_{dest(j)}`.
    pub fn signed_permutation(n: usize, dest: &[usize], sign: &[i64]) -> Self {
        assert_eq!(dest.len(), n);
        assert_eq!(sign.len(), n);
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            *m.at_mut(dest[j], j) = R::from_i64(sign[j]);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() + other.at(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() - other.at(i, j).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Kronecker product: `(A kron B)(i*p+k, j*q+l) = A(i,j) * B(k,l)`.
    ///
    /// This is the matrix of `a (x) b -> A a (x) B b` in the lexicographic
    /// basis `e_i (x) e_k` with the left factor index major.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            *out.at_mut(i * other.rows + k, j * other.cols + l) = a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    pub fn paste(&mut self, row0: usize, col0: usize, block: &Self) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                *self.at_mut(row0 + i, col0 + j) = block.at(i, j).clone();
            }
        }
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self.at(row0 + i, col0 + j).clone())
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for b in blocks {
            out.paste(0, c, b);
            c += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r = 0;
        for b in blocks {
            out.paste(r, 0, b);
            r += b.rows;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Reduced row echelon form, returning the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).inv();
            for j in c..m.cols {
                let v = m.at(r, j).clone() * inv.clone();
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let sub = factor.clone() * m.at(r, j).clone();
                        *m.at_mut(i, j) -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as columns of an `n x k` matrix.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = R::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = -r.at(pi, fc).clone();
            }
        }
        out
    }

    /// Basis of the column space as columns of an `m x r` matrix.
    pub fn column_space_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        let mut out = Self::zeros(self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                *out.at_mut(i, k) = self.at(i, c).clone();
            }
        }
        out
    }

    /// Solves `self * X = rhs` exactly. Returns `None` if inconsistent.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = Self::hstack(&[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                *x.at_mut(pc, j) = r.at(pi, self.cols + j).clone();
            }
        }
        debug_assert!(self.mul(&x).sub(rhs).is_zero());
        Some(x)
    }

    /// Solves `X * self = rhs` exactly.
    pub fn solve_left(&self, rhs: &Self) -> Option<Self> {
        self.transpose().solve(&rhs.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Self::identity(self.rows))?;
        if x.mul(self).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// For a full-column-rank `self`, a left inverse `L` with `L * self = I`.
    pub fn left_inverse(&self) -> Option<Self> {
        let (_, pivots) = self.transpose().rref();
        // pivots of the transpose are the pivot rows of self
        if pivots.len() != self.cols {
            return None;
        }
        let sel = Self::from_fn(self.cols, self.rows, |i, j| {
            if pivots[i] == j {
                R::one()
            } else {
                R::zero()
            }
        });
        let square = sel.mul(self);
        let inv = square.inverse()?;
        Some(inv.mul(&sel))
    }

    pub fn trace(&self) -> R {
        assert_eq!(self.rows, self.cols);
        let mut t = R::zero();
        for i in 0..self.rows {
            t += self.at(i, i).clone();
        }
        t
    }

    /// Flattens column-by-column into a single column vector (rows*cols x 1).
    pub fn vectorize(&self) -> Self {
        let mut out = Self::zeros(self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                *out.at_mut(j * self.rows + i, 0) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn unvectorize(v: &Self, rows: usize, cols: usize) -> Self {
        assert_eq!(v.rows, rows * cols);
        assert_eq!(v.cols, 1);
        Self::from_fn(rows, cols, |i, j| v.at(j * rows + i, 0).clone())
    }
}

/// A quotient `k^m -> k^m / V` presented by a projection with a chosen
/// section: `proj * sect = id` and `ker(proj) = V`.
#[derive(Clone, Debug)]
pub struct Quotient<R> {
    pub proj: Matrix<R>,
    pub sect: Matrix<R>,
}

impl<R: Scalar> Quotient<R> {
    /// Quotient of `k^m` by the column span of `span`.
    pub fn by_span(m: usize, span: &Matrix<R>) -> Self {
        assert_eq!(span.rows(), m, "span lives in the wrong space");
        // Column-reduce the span to find pivot rows; the complementary
        // standard basis vectors give the section.
        let (r, pivots) = span.transpose().rref();
        let basis = r
            .block(0, 0, pivots.len(), m)
            .transpose();
        let rank = pivots.len();
        let q = m - rank;
        let pivot_rows: Vec<usize> = pivots.clone();
        let free_rows: Vec<usize> = (0..m).filter(|i| !pivot_rows.contains(i)).collect();
        let mut full = Matrix::zeros(m, m);
        full.paste(0, 0, &basis);
        for (k, &fr) in free_rows.iter().enumerate() {
            *full.at_mut(fr, rank + k) = R::one();
        }
        let inv = full.inverse().expect("completed basis must be invertible");
        let proj = inv.block(rank, 0, q, m);
        let sect = full.block(0, rank, m, q);
        debug_assert!(proj.mul(&sect).is_identity());
        debug_assert!(proj.mul(span).is_zero());
        Quotient { proj, sect }
    }

    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    /// Factors a map `h` that kills the quotiented span: finds `hbar` with
    /// `hbar * proj = h`, certifying exactness. Uniqueness is automatic
    /// because `proj` is surjective.
    pub fn factor(&self, h: &Matrix<R>) -> Option<Matrix<R>> {
        let hbar = h.mul(&self.sect);
        if hbar.mul(&self.proj) == *h {
            Some(hbar)
        } else {
            None
        }
    }

    /// Induced endomorphism on the quotient of a map preserving the span.
    pub fn induced(&self, f: &Matrix<R>) -> Option<Matrix<R>> {
        self.factor(&self.proj.mul(f))
    }
}

/// A subspace `W <= k^m` presented by an inclusion with a chosen
/// retraction: `retr * incl = id` and `im(incl) = W`.
#[derive(Clone, Debug)]
pub struct Subspace<R> {
    pub incl: Matrix<R>,
    pub retr: Matrix<R>,
}

impl<R: Scalar> Subspace<R> {
    /// The joint kernel of a list of maps out of `k^m`.
    pub fn joint_kernel(m: usize, maps: &[Matrix<R>]) -> Self {
        let incl = if maps.is_empty() {
            Matrix::identity(m)
        } else {
            let refs: Vec<&Matrix<R>> = maps.iter().collect();
            for f in &refs {
                assert_eq!(f.cols(), m);
            }
            Matrix::vstack(&refs).kernel_basis()
        };
        Self::from_inclusion(incl)
    }

    pub fn from_inclusion(incl: Matrix<R>) -> Self {
        let retr = incl
            .left_inverse()
            .expect("kernel basis has full column rank");
        Subspace { incl, retr }
    }

    pub fn dim(&self) -> usize {
        self.incl.cols()
    }

    /// Factors a map `h` landing in the subspace: finds `htilde` with
    /// `incl * htilde = h`, certifying exactness.
    pub fn factor(&self, h: &Matrix<R>) -> Option<Matrix<R>> {
        let ht = self.retr.mul(h);
        if self.incl.mul(&ht) == *h {
            Some(ht)
        } else {
            None
        }
    }

    /// Induced endomorphism on the subspace of a map preserving it.
    pub fn induced(&self, f: &Matrix<R>) -> Option<Matrix<R>> {
        self.factor(&f.mul(&self.incl))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    type M = Matrix<Q>;

    #[test]
    fn rref_rank_kernel() {
        let a = M::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = M::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = M::from_int_rows(&[vec![1], vec![0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        // inconsistent system
        let s = M::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        let bad = M::from_int_rows(&[vec![1], vec![0]]);
        assert!(s.solve(&bad).is_none());
    }

    #[test]
    fn quotient_by_difference_span() {
        // k^2 modulo span{e1 - e2} is one dimensional
        let span = M::from_int_rows(&[vec![1], vec![-1]]);
        let q = Quotient::by_span(2, &span);
        assert_eq!(q.dim(), 1);
        let h = M::from_int_rows(&[vec![3, 3]]);
        let hbar = q.factor(&h).unwrap();
        assert_eq!(hbar.mul(&q.proj), h);
        let not_factoring = M::from_int_rows(&[vec![1, 0]]);
        assert!(q.factor(&not_factoring).is_none());
    }

    #[test]
    fn subspace_retraction() {
        let f = M::from_int_rows(&[vec![1, -1]]);
        let s = Subspace::joint_kernel(2, &[f]);
        assert_eq!(s.dim(), 1);
        assert!(s.retr.mul(&s.incl).is_identity());
    }

    #[test]
    fn left_inverse_of_injection() {
        let j = M::from_int_rows(&[vec![0, 0], vec![1, 0], vec![2, 1]]);
        let l = j.left_inverse().unwrap();
        assert!(l.mul(&j).is_identity());
    }

    #[test]
    fn kronecker_shape_and_values() {
        let a = M::from_int_rows(&[vec![1, 2]]);
        let b = M::from_int_rows(&[vec![3], vec![5]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(*k.at(0, 0), Q::from_i64(3));
        assert_eq!(*k.at(1, 1), Q::from_i64(10));
    }
}
