use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Result of [`smith_normal_form`]: `s = u · m · v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row in IntegerMatrix::from_rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn diagonal_matrix<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in IntegerMatrix::mul"
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Main diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor · row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor · col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form with unimodular transforms.
///
/// Returns `(s, u, v)` with `s = u · m · v`, `u` and `v` of determinant ±1,
/// and `s` diagonal with non-negative entries `d₁ | d₂ | …`. Pivots are
/// always the entry of least absolute value in the active block.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&s, t) else {
                return SmithDecomposition { s, u, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut residue = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(s[(i, t)].div_floor(&pivot));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                residue |= !s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(s[(t, j)].div_floor(&pivot));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                residue |= !s[(t, j)].is_zero();
            }
            if residue {
                continue;
            }

            // Row and column are clear; enforce the divisibility chain.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { s, u, v }
}

fn min_abs_entry(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let a = s[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Determinantal divisors: d_k = gcd of all k×k minors. The invariant
    /// factors are d_k / d_{k-1}. Brute force over minors, 2×2 only.
    fn invariant_factors_2x2(m: [[i64; 2]; 2]) -> (i64, i64) {
        let g1 = [m[0][0], m[0][1], m[1][0], m[1][1]]
            .iter()
            .fold(0i64, |g, &x| g.gcd(&x));
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
        if g1 == 0 {
            (0, 0)
        } else {
            (g1, det / g1)
        }
    }

    #[test]
    fn diag_two_three() {
        let m = IntegerMatrix::diagonal_matrix(&[2, 3]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s.diagonal(), big(&[1, 6]));
        assert_eq!(invariant_factors_2x2([[2, 0], [0, 3]]), (1, 6));
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntegerMatrix::identity(3);
        assert_eq!(smith_normal_form(&m).s, m);
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        let (d1, d2) = invariant_factors_2x2([[2, 4], [6, 8]]);
        assert_eq!((d1, d2), (2, 4));
        assert_eq!(snf.s.diagonal(), big(&[2, 4]));
        assert!(snf.s.is_diagonal());
    }

    #[test]
    fn empty_and_zero_matrices() {
        let empty = IntegerMatrix::zeros(0, 0);
        let snf = smith_normal_form(&empty);
        assert_eq!(snf.s.rows(), 0);
        let zero = IntegerMatrix::zeros(2, 3);
        let snf = smith_normal_form(&zero);
        assert_eq!(snf.s, zero);
        assert_eq!(snf.u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows(3, &[vec![2, 0, 0], vec![-1, 2, 0], vec![-1, 0, 4]]);
        assert_eq!(m.determinant(), BigInt::from(16));
        let m = IntegerMatrix::from_rows(3, &[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-50i64..=50, r * c).prop_map(move |v| {
                IntegerMatrix::from_rows(
                    c,
                    &v.chunks(c.max(1))
                        .take(r)
                        .map(|ch| ch.to_vec())
                        .collect::<Vec<_>>(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn snf_contract(m in matrix_strategy()) {
            let SmithDecomposition { s, u, v } = smith_normal_form(&m);
            prop_assert_eq!(&u.mul(&m).mul(&v), &s);
            prop_assert_eq!(u.determinant().abs(), BigInt::one());
            prop_assert_eq!(v.determinant().abs(), BigInt::one());
            prop_assert!(s.is_diagonal());
            let d = s.diagonal();
            prop_assert!(d.iter().all(|x| !x.is_negative()));
            for w in d.windows(2) {
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
        }
    }
}
