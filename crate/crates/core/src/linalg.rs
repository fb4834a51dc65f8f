//! Dense exact linear algebra over `Rat`.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::rational::Rat;

pub type Vector = Vec<Rat>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rat::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_cols(rows: usize, cols: &[Vector]) -> Matrix {
        Matrix::from_rows(rows, cols).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
            .collect();
        Matrix::from_rows(cols, &v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Rat] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    /// `vᵀ M`
    pub fn vec_mul(&self, v: &[Rat]) -> Vector {
        assert_eq!(self.rows, v.len(), "dimension mismatch in product");
        let mut out = vec![Rat::ZERO; self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let m = &self[(r, c)];
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `[A, B] = AB − BA`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Row-major entries as a flat vector.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vector) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            for j in c..cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            let nz: Vec<usize> = (c..cols).filter(|&j| !self[(r, j)].is_zero()).collect();
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for &j in &nz {
                    let t = &f * &self[(r, j)];
                    self[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        rank_fraction_free(self.to_rows(), self.cols)
    }

    /// Basis of the right null space, one vector per free column; each
    /// vector has a 1 in its free column and zeros in the other free columns.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::ZERO; self.cols];
            v[f] = Rat::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Solves `self · X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.rows))?;
        // solve_matrix only guarantees consistency; square and full rank is
        // required for an inverse.
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn determinant(&self) -> Rat {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::ZERO;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        det
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Positive definiteness of a symmetric matrix via symmetric Gaussian
    /// elimination (all pivots must be positive).
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut m = self.clone();
        for c in 0..n {
            let piv = m[(c, c)].clone();
            if !piv.is_positive() {
                return false;
            }
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= t;
                }
            }
        }
        true
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn axpy(y: &mut [Rat], a: &Rat, x: &[Rat]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn scaled(a: &Rat, x: &[Rat]) -> Vector {
    x.iter().map(|v| a * v).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

/// Rank by fraction-free elimination: every row is scaled to primitive
/// integer entries and kept that way, so intermediate entries stay small.
pub fn rank_fraction_free(rows: Vec<Vector>, cols: usize) -> usize {
    let mut rows: Vec<Vector> = rows
        .into_iter()
        .map(primitive)
        .filter(|r| !is_zero_vec(r))
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rows.is_empty() {
            break;
        }
        // Prefer the pivot with the smallest magnitude to limit growth.
        let Some(p) = (0..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        let pv = pivot[c].clone();
        let mut next = Vec::with_capacity(rows.len());
        for r in rows.into_iter() {
            if r[c].is_zero() {
                next.push(r);
                continue;
            }
            let f = r[c].clone();
            let combined: Vector = r
                .iter()
                .zip(&pivot)
                .map(|(x, y)| {
                    if y.is_zero() {
                        x * &pv
                    } else {
                        &(x * &pv) - &(&f * y)
                    }
                })
                .collect();
            let combined = primitive(combined);
            if !is_zero_vec(&combined) {
                next.push(combined);
            }
        }
        rows = next;
        rank += 1;
    }
    rank
}

/// Scales a rational vector to coprime integers (sign of the first
/// nonzero entry preserved).
pub fn primitive(v: Vector) -> Vector {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let mut lcm = num_bigint::BigInt::one();
    let mut g = num_bigint::BigInt::zero();
    for x in &v {
        if !x.is_zero() {
            lcm = lcm.lcm(&x.denom());
        }
    }
    let ints: Vec<Rat> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                Rat::ZERO
            } else {
                x * &Rat::from_bigint(lcm.clone())
            }
        })
        .collect();
    for x in &ints {
        if !x.is_zero() {
            g = g.gcd(&x.numer());
        }
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    let gr = Rat::from_bigint(g);
    ints.iter().map(|x| x / &gr).collect()
}

/// A linear subspace of `Rat^n`, stored as a reduced row echelon basis.
/// Two subspaces are equal iff their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, &Matrix::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(ambient, vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v ∉ self`.
    pub fn coords(&self, v: &[Rat]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut r, &-ci, b);
        }
        if is_zero_vec(&r) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // x·A = y·B  <=>  (x, -y) in the left kernel of [A; B].
        let stacked = Matrix::from_rows(self.ambient, &self.basis)
            .vstack(&Matrix::from_rows(self.ambient, &other.basis));
        let ker = stacked.transpose().kernel();
        let vs: Vec<Vector> = ker
            .iter()
            .map(|k| {
                let mut out = vec![Rat::ZERO; self.ambient];
                for (i, b) in self.basis.iter().enumerate() {
                    axpy(&mut out, &k[i], b);
                }
                out
            })
            .collect();
        Subspace::span(self.ambient, &vs)
    }

    /// Vectors completing `self` to a basis of `super_space` (taken from
    /// the super space's basis in order).
    pub fn complement_in(&self, super_space: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &super_space.basis {
            if !acc.contains(v) {
                out.push(v.clone());
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(v)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_i64(&[&[2, -1], &[-1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, Matrix::from_fn(2, 2, |r, c| if r == c { q(2, 3) } else { q(1, 3) }));
        assert_eq!(a.determinant(), Rat::int(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let a = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&a.mul_vec(v)));
        }
        assert!(a.solve(&[Rat::int(1), Rat::int(3)]).is_none());
        let x = a.solve(&[Rat::int(1), Rat::int(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Rat::int(1), Rat::int(2)]);
    }

    #[test]
    fn positive_definite() {
        assert!(Matrix::from_i64(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!Matrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!Matrix::from_i64(&[&[0, 0], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn subspace_ops() {
        let e = |i: usize| -> Vector { (0..3).map(|j| Rat::from((i == j) as i64)).collect() };
        let xy = Subspace::span(3, &[e(0), e(1)]);
        let yz = Subspace::span(3, &[e(1), e(2)]);
        assert_eq!(xy.intersect(&yz), Subspace::span(3, &[e(1)]));
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert_eq!(xy.coords(&[Rat::int(2), Rat::int(5), Rat::ZERO]).unwrap(), vec![Rat::int(2), Rat::int(5)]);
        assert!(!xy.contains(&e(2)));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_flat(r, c, v.into_iter().map(Rat::int).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let (_, piv) = m.rref();
            prop_assert_eq!(m.rank(), piv.len());
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn inverse_roundtrip(m in small_matrix()) {
            if m.is_square() {
                match m.inverse() {
                    Some(inv) => prop_assert_eq!(m.mul(&inv), Matrix::identity(m.rows())),
                    None => prop_assert!(m.determinant().is_zero()),
                }
            }
        }
    }
}
