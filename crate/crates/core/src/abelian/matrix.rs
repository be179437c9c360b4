use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// The operations Smith normal form needs from an integer type.
pub trait Scalar: Integer + Signed + Clone + fmt::Display + fmt::Debug {}

impl<T: Integer + Signed + Clone + fmt::Display + fmt::Debug> Scalar for T {}

/// A dense rectangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(entries: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(i) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::Malformed(format!("row {i} has {} entries, expected {cols}", entries[i].len())));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// An `rows × cols` matrix, for when `rows` may be zero.
    pub fn with_shape(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Result<Matrix<T>> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Malformed(format!("entries do not form a {rows}×{cols} matrix")));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix<T> {
        Matrix { rows, cols, entries: vec![vec![T::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Malformed(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] =
                        out.entries[i][j].clone() + self.entries[i][k].clone() * other.entries[k][j].clone();
                }
            }
        }
        Ok(out)
    }

    /// Fraction-free (Bareiss) elimination; `None` for non-square input.
    pub fn determinant(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(T::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        Some(if n == 0 { T::one() } else { sign * a[n - 1][n - 1].clone() })
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.entries {
            r.swap(a, b);
        }
    }

    /// `row[dst] += q · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.cols {
            let v = self.entries[src][j].clone() * q.clone();
            self.entries[dst][j] = self.entries[dst][j].clone() + v;
        }
    }

    /// `col[dst] += q · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &T) {
        for r in &mut self.entries {
            let v = r[src].clone() * q.clone();
            r[dst] = r[dst].clone() + v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.entries[i] {
            *v = -v.clone();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in &mut self.entries {
            r[j] = -r[j].clone();
        }
    }

    /// The diagonal entries `S[i][i]`, `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.entries[i][i].clone()).collect()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `U · M · V = S`, with the inverses of `U` and `V` tracked alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

/// Row and column operations applied to `S` and mirrored on `U`, `V` and
/// their inverses.
struct Reducer<T> {
    snf: Snf<T>,
}

impl<T: Scalar> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.snf.s.swap_rows(a, b);
        self.snf.u.swap_rows(a, b);
        self.snf.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.snf.s.swap_cols(a, b);
        self.snf.v.swap_cols(a, b);
        self.snf.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &T) {
        self.snf.s.add_row(dst, src, q);
        self.snf.u.add_row(dst, src, q);
        self.snf.u_inv.add_col(src, dst, &-q.clone());
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &T) {
        self.snf.s.add_col(dst, src, q);
        self.snf.v.add_col(dst, src, q);
        self.snf.v_inv.add_row(src, dst, &-q.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.snf.s.negate_row(i);
        self.snf.u.negate_row(i);
        self.snf.u_inv.negate_col(i);
    }

    /// Least `|S[i][j]| ≠ 0` with `i, j ≥ t`, ties broken by `(i, j)`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let s = &self.snf.s;
        let mut best: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                let v = &s.entries[i][j];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < s.entries[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form by repeated least-absolute-value pivoting.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Snf<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut r = Reducer {
        snf: Snf {
            u: Matrix::identity(rows),
            s: m.clone(),
            v: Matrix::identity(cols),
            u_inv: Matrix::identity(rows),
            v_inv: Matrix::identity(cols),
        },
    };
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = r.pivot(t) else {
                return finish(r);
            };
            if pi != t {
                r.swap_rows(pi, t);
            }
            if pj != t {
                r.swap_cols(pj, t);
            }
            let p = r.snf.s.entries[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = r.snf.s.entries[i][t].clone() / p.clone();
                if !q.is_zero() {
                    r.add_row(i, t, &-q);
                }
                clean &= r.snf.s.entries[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = r.snf.s.entries[t][j].clone() / p.clone();
                if !q.is_zero() {
                    r.add_col(j, t, &-q);
                }
                clean &= r.snf.s.entries[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide everything left
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !r.snf.s.entries[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => r.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if r.snf.s.entries[t][t].is_negative() {
            r.negate_row(t);
        }
    }
    finish(r)
}

fn finish<T: Scalar>(r: Reducer<T>) -> Snf<T> {
    debug_assert!(r.snf.u.mul(&r.snf.u_inv).is_ok_and(|p| p == Matrix::identity(r.snf.u.rows)));
    r.snf
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    fn check(a: &Matrix<BigInt>) -> Snf<BigInt> {
        let f = smith_normal_form(a);
        assert_eq!(f.u.mul(a).unwrap().mul(&f.v).unwrap(), f.s);
        assert_eq!(f.u_inv.mul(&f.s).unwrap().mul(&f.v_inv).unwrap(), *a);
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        f
    }

    #[test]
    fn examples() {
        assert_eq!(check(&m(&[&[1, 0], &[0, 1]])).s, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(check(&m(&[&[2, -2]])).s, m(&[&[2, 0]]));
        assert_eq!(check(&m(&[&[2, 4], &[6, 8]])).s, m(&[&[2, 0], &[0, 4]]));
        assert_eq!(check(&m(&[&[0, 0], &[0, 0], &[0, 0]])).s, Matrix::zeros(3, 2));
    }

    #[test]
    fn divisibility_needs_a_row_merge() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])).s, m(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn works_over_machine_integers() {
        let a = Matrix::new(vec![vec![4i64, 6], vec![6, 9]]).unwrap();
        assert_eq!(smith_normal_form(&a).s.diagonal(), vec![1, 0]);
        assert_eq!(a.determinant(), Some(0));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(Matrix::new(vec![vec![BigInt::from(1)], vec![]]).is_err());
    }
}
