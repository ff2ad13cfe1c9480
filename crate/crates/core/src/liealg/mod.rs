//! Lie algebras given by sparse structure constants.

mod closure;
mod io;
mod structure;
mod validate;

pub use closure::{
    derived_algebra, derived_of_generated, derived_series_last, generated_subalgebra, ideal_closure, naive_closure,
    GeneratedSubalgebra,
};
pub use io::{AlgebraFile, IoError};
pub use structure::{center, center_and_quotient, direct_sum, quotient, weight_decomposition, Quotient, WeightDecomposition};
pub use validate::{validate, validate_with, ValidationReport};

use std::fmt;

use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::linalg::{Echelon, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ad is not diagonalizable on the given space over {0}")]
    NotDiagonalizable(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("structure constants do not lie in {0}")]
    NotDefinedOver(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A sparse vector `sum c_k b_k`, sorted by index.
pub type Sparse = Vec<(u32, Fe)>;

/// Finite-dimensional algebra with bracket `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    offsets: Vec<u32>,
    entries: Vec<(u32, Fe)>,
    grading: Option<Vec<i32>>,
    labels: Option<Vec<String>>,
    name: String,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {} over {})", self.name, self.dim, self.field)
    }
}

fn to_sparse(dense: &[Fe]) -> Sparse {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, &c)| (k as u32, c))
        .collect()
}

impl LieAlgebra {
    /// Builds the table from every ordered pair; antisymmetry is not imposed.
    pub fn from_table(
        field: &Field,
        dim: usize,
        name: impl Into<String>,
        mut bracket: impl FnMut(usize, usize) -> Vec<(usize, Fe)>,
    ) -> LieAlgebra {
        let mut offsets = Vec::with_capacity(dim * dim + 1);
        let mut entries = vec![];
        let mut scratch = vec![Fe::ZERO; dim];
        offsets.push(0);
        for i in 0..dim {
            for j in 0..dim {
                let terms = bracket(i, j);
                if !terms.is_empty() {
                    let mut touched = vec![];
                    for (k, c) in terms {
                        if scratch[k].is_zero() {
                            touched.push(k);
                        }
                        scratch[k] = field.add(scratch[k], c);
                    }
                    touched.sort_unstable();
                    touched.dedup();
                    for k in touched {
                        if !scratch[k].is_zero() {
                            entries.push((k as u32, scratch[k]));
                        }
                        scratch[k] = Fe::ZERO;
                    }
                }
                offsets.push(entries.len() as u32);
            }
        }
        LieAlgebra { field: field.clone(), dim, offsets, entries, grading: None, labels: None, name: name.into() }
    }

    /// Builds an alternating table from the brackets with `i < j`.
    pub fn from_upper(
        field: &Field,
        dim: usize,
        name: impl Into<String>,
        mut upper: impl FnMut(usize, usize) -> Vec<(usize, Fe)>,
    ) -> LieAlgebra {
        let mut table: Vec<Vec<(usize, Fe)>> = vec![vec![]; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = upper(i, j);
                table[j * dim + i] = v.iter().map(|&(k, c)| (k, field.neg(c))).collect();
                table[i * dim + j] = v;
            }
        }
        LieAlgebra::from_table(field, dim, name, |i, j| std::mem::take(&mut table[i * dim + j]))
    }

    pub fn with_grading(mut self, grading: Vec<i32>) -> LieAlgebra {
        assert_eq!(grading.len(), self.dim);
        self.grading = Some(grading);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> LieAlgebra {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("b{i}"),
        }
    }
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// `[b_i, b_j]` as a sparse vector.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, Fe)] {
        let idx = i * self.dim + j;
        &self.entries[self.offsets[idx] as usize..self.offsets[idx + 1] as usize]
    }

    /// Number of stored nonzero structure constants.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn zero_vec(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Fe> {
        let mut v = self.zero_vec();
        v[i] = Fe::ONE;
        v
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let f = &self.field;
        let mut out = self.zero_vec();
        let ynz: Vec<usize> = (0..self.dim).filter(|&j| !y[j].is_zero()).collect();
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ynz {
                let terms = self.bracket_basis(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = f.mul(xi, y[j]);
                for &(k, s) in terms {
                    out[k as usize] = f.mul_add(out[k as usize], c, s);
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        Ok(self.bracket(x, y))
    }

    /// `[b_i, v]`
    pub fn bracket_basis_vec(&self, i: usize, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (j, &vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for &(k, s) in self.bracket_basis(i, j) {
                out[k as usize] = f.mul_add(out[k as usize], vj, s);
            }
        }
        out
    }

    /// Sparse operator `ad x`.
    pub fn ad(&self, x: &[Fe]) -> AdOp {
        let f = &self.field;
        let mut scratch = self.zero_vec();
        let xnz: Vec<usize> = (0..self.dim).filter(|&i| !x[i].is_zero()).collect();
        let cols = (0..self.dim)
            .map(|j| {
                let mut touched = vec![];
                for &i in &xnz {
                    for &(k, s) in self.bracket_basis(i, j) {
                        let k = k as usize;
                        if scratch[k].is_zero() {
                            touched.push(k);
                        }
                        scratch[k] = f.mul_add(scratch[k], x[i], s);
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col: Sparse = touched
                    .iter()
                    .filter(|&&k| !scratch[k].is_zero())
                    .map(|&k| (k as u32, scratch[k]))
                    .collect();
                for k in touched {
                    scratch[k] = Fe::ZERO;
                }
                col
            })
            .collect();
        AdOp { field: f.clone(), dim: self.dim, cols }
    }

    /// Dense matrix of `ad x` (column `j` is `[x, b_j]`).
    pub fn ad_matrix(&self, x: &[Fe]) -> Matrix {
        self.ad(x).to_matrix()
    }

    /// Same algebra over an extension containing the field of its constants.
    pub fn retarget(&self, target: &Field) -> Result<LieAlgebra, LieError> {
        if target == &self.field {
            return Ok(self.clone());
        }
        let table = self
            .field
            .embedding_into(target)
            .map_err(|_| LieError::NotDefinedOver(target.to_string()))?;
        let mut out = self.clone();
        out.field = target.clone();
        for e in &mut out.entries {
            e.1 = table[e.1 .0 as usize];
        }
        Ok(out)
    }

    /// Same algebra over a subfield, if every constant lies in it.
    pub fn restrict(&self, target: &Field) -> Result<LieAlgebra, LieError> {
        let table = target
            .embedding_into(&self.field)
            .map_err(|_| LieError::NotDefinedOver(target.to_string()))?;
        let inverse: std::collections::HashMap<Fe, Fe> =
            table.iter().enumerate().map(|(i, &v)| (v, Fe(i as u32))).collect();
        let mut out = self.clone();
        out.field = target.clone();
        for e in &mut out.entries {
            e.1 = *inverse.get(&e.1).ok_or_else(|| LieError::NotDefinedOver(target.to_string()))?;
        }
        Ok(out)
    }

    /// Whether every structure constant lies in the prime field.
    pub fn constants_in_prime_field(&self) -> bool {
        self.entries.iter().all(|e| self.field.in_prime_subfield(e.1))
    }

    pub fn degree_of(&self, i: usize) -> Option<i32> {
        self.grading.as_ref().map(|g| g[i])
    }

    /// Basis indices of the homogeneous component of degree `d`.
    pub fn component(&self, d: i32) -> Vec<usize> {
        match &self.grading {
            Some(g) => (0..self.dim).filter(|&i| g[i] == d).collect(),
            None => vec![],
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.grading.as_ref()?.iter().copied().min()
    }
    pub fn max_degree(&self) -> Option<i32> {
        self.grading.as_ref()?.iter().copied().max()
    }

    /// Degrees in which `v` has a nonzero coordinate, ascending.
    pub fn degree_support(&self, v: &[Fe]) -> Vec<i32> {
        let g = self.grading.as_ref().expect("graded algebra");
        let mut d: Vec<i32> = (0..self.dim).filter(|&i| !v[i].is_zero()).map(|i| g[i]).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Lowest degree of a nonzero component (`None` for `v = 0`).
    pub fn lowest_degree(&self, v: &[Fe]) -> Option<i32> {
        self.degree_support(v).first().copied()
    }

    /// Component of `v` in degree `d`.
    pub fn homogeneous_part(&self, v: &[Fe], d: i32) -> Vec<Fe> {
        let g = self.grading.as_ref().expect("graded algebra");
        (0..self.dim).map(|i| if g[i] == d { v[i] } else { Fe::ZERO }).collect()
    }

    /// The subspace spanned by the given basis indices.
    pub fn coordinate_subspace(&self, idx: &[usize]) -> SubalgebraBasis {
        let vs: Vec<Vec<Fe>> = idx.iter().map(|&i| self.basis_vec(i)).collect();
        SubalgebraBasis::from_vectors(&self.field, self.dim, &vs)
    }

    pub fn full_space(&self) -> SubalgebraBasis {
        self.coordinate_subspace(&(0..self.dim).collect::<Vec<_>>())
    }

    pub fn sparse(&self, v: &[Fe]) -> Sparse {
        to_sparse(v)
    }
}

/// Column-sparse `ad x`.
#[derive(Clone, Debug)]
pub struct AdOp {
    field: Field,
    dim: usize,
    cols: Vec<Sparse>,
}

impl AdOp {
    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim];
        for (j, &vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for &(k, c) in &self.cols[j] {
                out[k as usize] = f.mul_add(out[k as usize], vj, c);
            }
        }
        out
    }

    pub fn apply_pow(&self, v: &[Fe], e: usize) -> Vec<Fe> {
        (0..e).fold(v.to_vec(), |acc, _| self.apply(&acc))
    }

    pub fn column(&self, j: usize) -> &[(u32, Fe)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for &(k, c) in col {
                m.set(k as usize, j, c);
            }
        }
        m
    }
}

/// Canonical (reduced row echelon) basis of a subspace of an algebra's coordinate space.
///
/// The ambient algebra is not referenced; callers pass it where needed.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    echelon: Echelon,
    rows: Vec<Vec<Fe>>,
}

impl PartialEq for SubalgebraBasis {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.echelon.dim() == other.echelon.dim()
    }
}

impl SubalgebraBasis {
    pub fn from_echelon(echelon: Echelon) -> SubalgebraBasis {
        let rows = echelon.rref_basis();
        SubalgebraBasis { echelon, rows }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vs: &[Vec<Fe>]) -> SubalgebraBasis {
        SubalgebraBasis::from_echelon(Echelon::from_vectors(field, ambient, vs))
    }

    pub fn zero(field: &Field, ambient: usize) -> SubalgebraBasis {
        SubalgebraBasis::from_echelon(Echelon::new(field, ambient))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.echelon.dim()
    }
    pub fn is_full(&self) -> bool {
        self.echelon.is_full()
    }
    /// Reduced row echelon rows.
    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.echelon.pivots().to_vec();
        p.sort_unstable();
        p
    }
    pub fn contains(&self, v: &[Fe]) -> bool {
        self.echelon.contains(v)
    }
    pub fn contains_subspace(&self, other: &SubalgebraBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }
    /// Coordinates of `v` in terms of [`Self::rows`].
    pub fn coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        self.echelon.rref_coordinates(v)
    }
    pub fn sum(&self, other: &SubalgebraBasis) -> SubalgebraBasis {
        let mut e = self.echelon.clone();
        for r in &other.rows {
            e.insert(r);
        }
        SubalgebraBasis::from_echelon(e)
    }

    /// Whether the span is closed under the bracket (checked on basis pairs).
    pub fn is_subalgebra(&self, l: &LieAlgebra) -> bool {
        (0..self.rows.len())
            .all(|i| (i + 1..self.rows.len()).all(|j| self.contains(&l.bracket(&self.rows[i], &self.rows[j]))))
    }

    /// Whether `[L, S] ⊆ S`.
    pub fn is_ideal(&self, l: &LieAlgebra) -> bool {
        self.rows.iter().all(|r| (0..l.dim()).all(|j| self.contains(&l.bracket_basis_vec(j, r))))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn sl2_brackets() {
        let f = Field::new(5, 1).unwrap();
        let l = sl2(&f);
        let (e, h, fv) = (l.basis_vec(0), l.basis_vec(1), l.basis_vec(2));
        assert_eq!(l.bracket(&e, &fv), h);
        assert_eq!(l.bracket(&e, &e), l.zero_vec());
        assert_eq!(l.bracket(&fv, &e), vec![Fe(0), Fe(4), Fe(0)]);
        assert_eq!(l.ad_matrix(&h).get(0, 0), Fe(2));
        assert!(l.try_bracket(&e, &[Fe::ONE]).is_err());
    }

    #[test]
    fn ad_operator_matches_bracket() {
        let f = Field::new(7, 1).unwrap();
        let l = sl2(&f);
        let x = vec![Fe(3), Fe(1), Fe(5)];
        let v = vec![Fe(2), Fe(6), Fe(1)];
        assert_eq!(l.ad(&x).apply(&v), l.bracket(&x, &v));
        assert_eq!(l.ad_matrix(&x).mul_vec(&v), l.bracket(&x, &v));
    }

    #[test]
    fn retarget_and_restrict_roundtrip() {
        let f5 = Field::new(5, 1).unwrap();
        let f25 = Field::new(5, 2).unwrap();
        let l = sl2(&f5);
        let big = l.retarget(&f25).unwrap();
        assert!(big.constants_in_prime_field());
        let back = big.restrict(&f5).unwrap();
        assert_eq!(back.entries, l.entries);
    }
}
