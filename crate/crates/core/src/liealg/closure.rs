use crate::field::Fe;
use crate::linalg::Echelon;

use super::{AdOp, LieAlgebra, SubalgebraBasis};

/// `F<x, y>` together with the dimensions of the chain `X^(1) ⊆ X^(2) ⊆ ...`.
#[derive(Clone, Debug)]
pub struct GeneratedSubalgebra {
    pub basis: SubalgebraBasis,
    pub chain: Vec<usize>,
}

impl GeneratedSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Inserts the `ad y`-cyclic spans of `seeds`; returns the new reduced rows.
fn krylov_insert(e: &mut Echelon, seeds: Vec<Vec<Fe>>, ad_y: &AdOp) -> Vec<Vec<Fe>> {
    let mut frontier = vec![];
    for s in seeds {
        let mut v = s;
        while !e.is_full() {
            let Some(r) = e.insert_reduced(&v) else { break };
            let r = r.to_vec();
            v = ad_y.apply(&r);
            frontier.push(r);
        }
    }
    frontier
}

/// Subalgebra generated by `x` and `y`, built as `F y + X^(n)` where
/// `X_1 = F[ad y] x` and `X_{k+1} = F[ad y] [x, X_k]`.
pub fn generated_subalgebra(l: &LieAlgebra, x: &[Fe], y: &[Fe]) -> GeneratedSubalgebra {
    let ad_x = l.ad(x);
    let ad_y = l.ad(y);
    let mut e = Echelon::new(l.field(), l.dim());
    let mut frontier = krylov_insert(&mut e, vec![x.to_vec()], &ad_y);
    let mut chain = vec![e.len()];
    while !frontier.is_empty() && !e.is_full() {
        let seeds = frontier.iter().map(|v| ad_x.apply(v)).collect();
        frontier = krylov_insert(&mut e, seeds, &ad_y);
        if !frontier.is_empty() {
            chain.push(e.len());
        }
    }
    e.insert(y);
    GeneratedSubalgebra { basis: SubalgebraBasis::from_echelon(e), chain }
}

/// Least subalgebra containing `s`, by bracketing every pair of spanning
/// vectors until nothing new appears.
pub fn naive_closure(l: &LieAlgebra, s: &[Vec<Fe>]) -> SubalgebraBasis {
    let mut e = Echelon::new(l.field(), l.dim());
    let mut all: Vec<Vec<Fe>> = vec![];
    for v in s {
        if let Some(r) = e.insert_reduced(v) {
            all.push(r.to_vec());
        }
    }
    let mut i = 0;
    while i < all.len() && !e.is_full() {
        for j in 0..i {
            let b = l.bracket(&all[i], &all[j]);
            if let Some(r) = e.insert_reduced(&b) {
                all.push(r.to_vec());
                if e.is_full() {
                    break;
                }
            }
        }
        i += 1;
    }
    SubalgebraBasis::from_echelon(e)
}

/// Ideal of `l` generated by `seeds`.
pub fn ideal_closure(l: &LieAlgebra, seeds: &[Vec<Fe>]) -> SubalgebraBasis {
    let mut e = Echelon::new(l.field(), l.dim());
    let mut queue: Vec<Vec<Fe>> = vec![];
    for v in seeds {
        if let Some(r) = e.insert_reduced(v) {
            queue.push(r.to_vec());
        }
    }
    while let Some(v) = queue.pop() {
        if e.is_full() {
            break;
        }
        for j in 0..l.dim() {
            let b = l.bracket_basis_vec(j, &v);
            if let Some(r) = e.insert_reduced(&b) {
                queue.push(r.to_vec());
            }
        }
    }
    SubalgebraBasis::from_echelon(e)
}

/// `[S, S]`, spanned by brackets of basis pairs.
pub fn derived_algebra(l: &LieAlgebra, s: &SubalgebraBasis) -> SubalgebraBasis {
    let rows = s.rows();
    let mut e = Echelon::new(l.field(), l.dim());
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            e.insert(&l.bracket(&rows[i], &rows[j]));
        }
    }
    SubalgebraBasis::from_echelon(e)
}

/// Last term `S^(∞)` of the derived series.
pub fn derived_series_last(l: &LieAlgebra, s: &SubalgebraBasis) -> SubalgebraBasis {
    let mut cur = s.clone();
    loop {
        let next = derived_algebra(l, &cur);
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// `[L, L]` for `L = F<x, y>`: the smallest `ad x`, `ad y`-stable subspace containing `[x, y]`.
pub fn derived_of_generated(l: &LieAlgebra, x: &[Fe], y: &[Fe]) -> SubalgebraBasis {
    let ops = [l.ad(x), l.ad(y)];
    let mut e = Echelon::new(l.field(), l.dim());
    let mut queue = vec![];
    if let Some(r) = e.insert_reduced(&l.bracket(x, y)) {
        queue.push(r.to_vec());
    }
    while let Some(v) = queue.pop() {
        for op in &ops {
            if let Some(r) = e.insert_reduced(&op.apply(&v)) {
                queue.push(r.to_vec());
            }
        }
    }
    SubalgebraBasis::from_echelon(e)
}
