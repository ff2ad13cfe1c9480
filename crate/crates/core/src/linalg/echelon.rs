use crate::field::{Fe, Field};

use super::axpy;

/// Incrementally maintained echelon basis of a subspace of `F^dim`.
///
/// Stored rows have pivot entry 1 and vanish at every earlier row's pivot, so
/// reduction is a single pass in insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Echelon {
        Echelon { field: field.clone(), dim, rows: vec![], pivots: vec![] }
    }

    pub fn from_vectors(field: &Field, dim: usize, vs: &[Vec<Fe>]) -> Echelon {
        let mut e = Echelon::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    /// Rows in insertion order (echelon, not fully reduced).
    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &mut [Fe]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(f, &mut v[p..], f.neg(c), &row[p..]);
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        if self.is_full() {
            return true;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns the new normalized row if `v` was outside the span.
    pub fn insert_reduced(&mut self, v: &[Fe]) -> Option<&[Fe]> {
        assert_eq!(v.len(), self.dim, "vector length");
        if self.is_full() {
            return None;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = self.field.inv(w[p]).unwrap();
        for x in &mut w[p..] {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        self.rows.last().map(|r| r.as_slice())
    }

    pub fn insert(&mut self, v: &[Fe]) -> bool {
        self.insert_reduced(v).is_some()
    }

    /// The canonical reduced row echelon basis, sorted by pivot column.
    pub fn rref_basis(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<Fe>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let ri = &tail[0];
            let p = pivots[i];
            for r in head.iter_mut() {
                let c = r[p];
                if !c.is_zero() {
                    axpy(f, &mut r[p..], f.neg(c), &ri[p..]);
                }
            }
        }
        rows
    }

    /// Coordinates of `v` against [`Self::rref_basis`]: the entries at the sorted pivots.
    pub fn rref_coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        if !self.contains(v) {
            return None;
        }
        let mut piv = self.pivots.clone();
        piv.sort_unstable();
        Some(piv.iter().map(|&p| v[p]).collect())
    }
}

/// Echelon basis that records how each row combines the inserted vectors,
/// so the first linear dependence comes with its coefficients.
#[derive(Clone, Debug)]
pub struct TaggedEchelon {
    field: Field,
    rows: Vec<Vec<Fe>>,
    tags: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    count: usize,
}

impl TaggedEchelon {
    pub fn new(field: &Field) -> TaggedEchelon {
        TaggedEchelon { field: field.clone(), rows: vec![], tags: vec![], pivots: vec![], count: 0 }
    }

    /// Inserts the next vector `v_n`. On dependence returns `c` with
    /// `sum c_i v_i = 0` and `c_n = 1`.
    pub fn push(&mut self, v: &[Fe]) -> Option<Vec<Fe>> {
        let f = self.field.clone();
        let n = self.count;
        self.count += 1;
        let mut w = v.to_vec();
        let mut tag = vec![Fe::ZERO; n + 1];
        tag[n] = Fe::ONE;
        for ((row, t), &p) in self.rows.iter().zip(&self.tags).zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                let nc = f.neg(c);
                axpy(&f, &mut w[p..], nc, &row[p..]);
                axpy(&f, &mut tag[..t.len()], nc, t);
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => Some(tag),
            Some(p) => {
                let inv = f.inv(w[p]).unwrap();
                for x in &mut w[p..] {
                    *x = f.mul(*x, inv);
                }
                for x in &mut tag {
                    *x = f.mul(*x, inv);
                }
                self.rows.push(w);
                self.tags.push(tag);
                self.pivots.push(p);
                None
            }
        }
    }
}
