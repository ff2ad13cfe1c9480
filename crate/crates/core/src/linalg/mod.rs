//! Dense exact linear algebra over a [`Field`].

mod echelon;
mod porder;

pub use echelon::{Echelon, TaggedEchelon};
pub use porder::{
    is_semisimple, min_poly, p_min_poly, p_min_poly_literal, p_order, p_order_report, semisimple_exponent,
    split_eigenvalues, fp_span_dim, fp_span_elements, POrderReport, PPolynomial,
};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("eigenvalue cross-check unavailable: {0}")]
    EigenvalueCrossCheckUnavailable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|x| x.0).collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<Vec<u32>> = self.row(r).iter().map(|&x| self.field.coeffs(x)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn diagonal(field: &Field, d: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(field, d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(field: &Field, nrows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Rows given as small integers reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let v: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, &v).expect("rectangular literal")
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(poly: &crate::field::Poly) -> Matrix {
        let f = poly.field();
        let n = poly.degree().unwrap_or(0);
        let mut m = Matrix::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, Fe::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(poly.coeff(i)));
        }
        m
    }

    /// Jordan block with the given eigenvalue.
    pub fn jordan(field: &Field, n: usize, lambda: Fe) -> Matrix {
        let mut m = Matrix::diagonal(field, &vec![lambda; n]);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, Fe::ONE);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = f.mul_add(*o, a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Polynomial evaluation `f(self)` by Horner's rule.
    pub fn eval_poly(&self, poly: &crate::field::Poly) -> Matrix {
        let n = self.rows;
        let f = &self.field;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i);
                acc.set(i, i, f.add(v, c));
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns (leftmost column, topmost row).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let v = f.mul_add(self.data[i * cols + j], nf, self.data[r * cols + j]);
                    self.data[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Fe]) -> Result<Option<Vec<Fe>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!("rhs {} vs {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<Fe, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(Fe::ZERO) };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..n {
                    let v = f.mul_add(m.get(i, j), nf, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by row reduction of `[A | I]`; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Some(self.clone()));
        }
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(&self.field, n, n, |i, j| aug.get(i, n + j))))
    }

    /// Entrywise image under a ring map of fields.
    pub fn map_field(&self, target: &Field, table: &[Fe]) -> Matrix {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| table[x.0 as usize]).collect(),
        }
    }
}

/// Rank of a list of vectors.
pub fn rank_of(field: &Field, vectors: &[Vec<Fe>]) -> usize {
    let mut e = Echelon::new(field, vectors.first().map_or(0, |v| v.len()));
    vectors.iter().filter(|v| e.insert(v)).count()
}

pub fn rref_rank(m: &Matrix) -> (Matrix, usize) {
    let (r, p) = m.rref();
    (r, p.len())
}

/// `y += c * x`
#[inline]
pub fn axpy(field: &Field, y: &mut [Fe], c: Fe, x: &[Fe]) {
    if c.is_zero() {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        *a = field.mul_add(*a, c, b);
    }
}

pub fn is_zero_vec(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn scale_vec(field: &Field, v: &[Fe], c: Fe) -> Vec<Fe> {
    v.iter().map(|&x| field.mul(x, c)).collect()
}

pub fn add_vec(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn sub_vec(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5, 1).unwrap()
    }

    #[test]
    fn ranks() {
        let f = f5();
        assert_eq!(rref_rank(&Matrix::identity(&f, 3)).1, 3);
        assert_eq!(rref_rank(&Matrix::zeros(&f, 3, 4)).1, 0);
        let vdm = Matrix::from_fn(&f, 3, 3, |i, j| f.pow(Fe(i as u32 + 1), j as u64));
        assert_eq!(vdm.rank(), 3);
        assert_eq!(vdm.det().unwrap(), f.from_int((2 - 1) * (3 - 1) * (3 - 2)));
    }

    #[test]
    fn rref_is_canonical() {
        let f = f5();
        let m = Matrix::from_ints(&f, &[&[0, 2, 4, 2], &[0, 1, 2, 3], &[1, 1, 1, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1, 3]);
        assert_eq!(r, Matrix::from_ints(&f, &[&[1, 0, 4, 0], &[0, 1, 2, 0], &[0, 0, 0, 1]]));
        assert_eq!(m.rref().0, r);
    }

    #[test]
    fn kernel_and_solve() {
        let f = Field::new(7, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 5]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&ker[0])));
        let b = m.mul_vec(&[Fe(1), Fe(2), Fe(3)]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[Fe(1), Fe(0), Fe(0)]).unwrap().is_none());
    }

    #[test]
    fn det_matches_elimination_sign() {
        let f = f5();
        let m = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), f.from_int(-1));
        let a = Matrix::from_ints(&f, &[&[1, 2, 0], &[3, 1, 4], &[2, 2, 1]]);
        let b = Matrix::from_ints(&f, &[&[2, 0, 1], &[1, 1, 0], &[4, 3, 1]]);
        assert_eq!(a.mul(&b).det().unwrap(), f.mul(a.det().unwrap(), b.det().unwrap()));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let a = Matrix::from_ints(&f, &[&[1, 2, 0], &[3, 1, 4], &[2, 2, 1]]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&f, 3));
        let singular = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().unwrap().is_none());
    }
}
