//! Restricted structure: p-powers, toral spans, filtration orders, and the
//! invariants `δ_j`, `k`, `f`, `g` of an element of `W(m, 1)`.

mod filtration;
mod witt;

pub use filtration::{ord_compare, FiltrationView, OrdComparison};
pub use witt::{
    ad_power_degrees, delta_element, dependence_data, structure_check, AdPowerDegrees, Branch, DeltaWitness,
    DependenceData, KernelCase, ModuleCase, PPowerData, StructureCheck,
};

use thiserror::Error;

use crate::cartan_w::WittAlgebra;
use crate::field::Fe;
use crate::linalg::{Echelon, Matrix};
use crate::liealg::{LieAlgebra, SubalgebraBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PStructError {
    #[error("operator is not ad of any element: {0}")]
    NotInAdImage(String),
    #[error("center has dimension {0}; p-powers are not unique")]
    NontrivialCenter(usize),
    #[error("element has filtration degree {} < 0", .0.nu)]
    ElementBelowFiltrationZero(OrdComparison),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Solver for `ad z = A`, built from `dim L` independent coordinate equations.
#[derive(Clone, Debug)]
pub struct PMap {
    l: LieAlgebra,
    /// Equation `(j, k)`: coordinate `k` of `[z, b_j]`.
    equations: Vec<(usize, usize)>,
    inverse: Matrix,
}

impl PMap {
    pub fn new(l: &LieAlgebra) -> Result<PMap, PStructError> {
        let f = l.field();
        let n = l.dim();
        let mut order: Vec<usize> = (0..n).collect();
        if let (Some(lo), Some(hi)) = (l.min_degree(), l.max_degree()) {
            // extreme components separate most elements
            let rank = |j: usize| {
                let d = l.degree_of(j).unwrap_or(0);
                if d == lo {
                    0
                } else if d == hi {
                    1
                } else {
                    2
                }
            };
            order.sort_by_key(|&j| (rank(j), j));
        }
        let mut ech = Echelon::new(f, n);
        let mut equations = vec![];
        let mut rows = vec![];
        'outer: for &j in &order {
            let mut block = vec![vec![Fe::ZERO; n]; n];
            for i in 0..n {
                for &(k, c) in l.bracket_basis(i, j) {
                    block[k as usize][i] = c;
                }
            }
            for (k, row) in block.into_iter().enumerate() {
                if ech.insert(&row) {
                    equations.push((j, k));
                    rows.push(row);
                    if ech.is_full() {
                        break 'outer;
                    }
                }
            }
        }
        if !ech.is_full() && n > 0 {
            return Err(PStructError::NontrivialCenter(n - ech.len()));
        }
        let a = Matrix::from_rows(f, &rows).expect("square system");
        let inverse = if n == 0 { a } else { a.inverse().expect("square").expect("independent equations") };
        Ok(PMap { l: l.clone(), equations, inverse })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.l
    }

    /// The unique `z` with `[z, b_j] = cols[j]` for all `j`.
    pub fn solve_ad(&self, cols: &[Vec<Fe>]) -> Result<Vec<Fe>, PStructError> {
        let rhs: Vec<Fe> = self.equations.iter().map(|&(j, k)| cols[j][k]).collect();
        let z = self.inverse.mul_vec(&rhs);
        let ad_z = self.l.ad(&z);
        for (j, col) in cols.iter().enumerate() {
            if ad_z.apply(&self.l.basis_vec(j)) != *col {
                return Err(PStructError::NotInAdImage(format!("column {} ({})", j, self.l.label(j))));
            }
        }
        Ok(z)
    }

    /// `y^[p]`, characterized by `ad(y^[p]) = (ad y)^p`.
    pub fn p_power(&self, y: &[Fe]) -> Result<Vec<Fe>, PStructError> {
        let p = self.l.field().p() as usize;
        let ad_y = self.l.ad(y);
        let cols: Vec<Vec<Fe>> = (0..self.l.dim()).map(|j| ad_y.apply_pow(&self.l.basis_vec(j), p)).collect();
        self.solve_ad(&cols)
    }

    /// `y, y^[p], ..., y^[p^{count-1}]`.
    pub fn p_power_sequence(&self, y: &[Fe], count: usize) -> Result<Vec<Vec<Fe>>, PStructError> {
        let mut out = vec![y.to_vec()];
        while out.len() < count {
            let next = self.p_power(out.last().unwrap())?;
            out.push(next);
        }
        out.truncate(count);
        Ok(out)
    }
}

pub fn p_power(l: &LieAlgebra, y: &[Fe]) -> Result<Vec<Fe>, PStructError> {
    PMap::new(l)?.p_power(y)
}

/// `D^p` computed by composing operators on `O(m, 1)`.
pub fn p_power_by_operators(w: &WittAlgebra, y: &[Fe]) -> Result<Vec<Fe>, PStructError> {
    let op = w.operator(y).pow(w.field().p() as u64);
    w.from_operator(&op).ok_or_else(|| PStructError::NotInAdImage("D^p is not a special derivation".into()))
}

/// Span of `y^[p^j]`, `j ≥ j0`, grown until the next power is dependent.
pub fn toral_span(pm: &PMap, y: &[Fe], j0: usize) -> Result<SubalgebraBasis, PStructError> {
    let l = pm.algebra();
    let mut z = y.to_vec();
    for _ in 0..j0 {
        z = pm.p_power(&z)?;
    }
    let mut ech = Echelon::new(l.field(), l.dim());
    while ech.insert(&z) {
        z = pm.p_power(&z)?;
    }
    Ok(SubalgebraBasis::from_echelon(ech))
}

/// Base-p digits (least significant first) and their sum `|a|_p`.
pub fn p_ary(a: u64, p: u32) -> (Vec<u32>, u32) {
    let mut digits = vec![];
    let mut r = a;
    while r > 0 {
        digits.push((r % p as u64) as u32);
        r /= p as u64;
    }
    let len = digits.iter().sum();
    (digits, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_w::{build_witt, DEFAULT_CAP};
    use crate::classical::{build_classical, ClassicalKind};
    use crate::field::Field;
    use crate::linalg::p_order;
    use crate::rng::{random_vector, stream_rng};

    #[test]
    fn p_ary_examples() {
        assert_eq!(p_ary(0, 5), (vec![], 0));
        assert_eq!(p_ary(24, 5), (vec![4, 4], 8));
        assert_eq!(p_ary(7, 5), (vec![2, 1], 3));
        for j in 0..6u32 {
            assert_eq!(p_ary(5u64.pow(j) - 1, 5).1, j * 4);
        }
    }

    #[test]
    fn witt_p_powers() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let pm = PMap::new(&w.base).unwrap();
        let e = |i: usize| w.base.basis_vec(i);
        assert_eq!(pm.p_power(&w.base.zero_vec()).unwrap(), w.base.zero_vec());
        assert_eq!(pm.p_power(&e(1)).unwrap(), e(1));
        assert_eq!(pm.p_power(&e(0)).unwrap(), w.base.zero_vec());
        let mut rng = stream_rng(2, 0);
        for (m, seed) in [(1usize, 0u64), (2, 1)] {
            let w = build_witt(m, &vec![1; m], &f, DEFAULT_CAP).unwrap();
            let pm = PMap::new(&w.base).unwrap();
            for _ in 0..5 {
                let y = random_vector(&f, w.dim(), &mut rng);
                let z = pm.p_power(&y).unwrap();
                assert_eq!(z, p_power_by_operators(&w, &y).unwrap(), "seed {}", seed);
                assert_eq!(w.base.ad_matrix(&z), w.base.ad_matrix(&y).pow(5));
            }
        }
    }

    #[test]
    fn non_restricted_witt() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[2], &f, DEFAULT_CAP).unwrap();
        let pm = PMap::new(&w.base).unwrap();
        assert!(matches!(pm.p_power(&w.partial(0)), Err(PStructError::NotInAdImage(_))));
        assert!(p_power_by_operators(&w, &w.partial(0)).is_err());
    }

    #[test]
    fn classical_p_powers_and_center() {
        let f = Field::prime(5).unwrap();
        let g = build_classical(&"B2".parse::<ClassicalKind>().unwrap(), &f).unwrap();
        let pm = PMap::new(&g.base).unwrap();
        let mut rng = stream_rng(9, 0);
        for _ in 0..5 {
            let y = random_vector(&f, g.dim(), &mut rng);
            let z = pm.p_power(&y).unwrap();
            assert_eq!(g.base.ad_matrix(&z), g.base.ad_matrix(&y).pow(5));
        }
        let gl = build_classical(&"gl:2".parse::<ClassicalKind>().unwrap(), &f).unwrap();
        assert_eq!(PMap::new(&gl.base).unwrap_err(), PStructError::NontrivialCenter(1));
    }

    #[test]
    fn toral_spans() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let pm = PMap::new(&w.base).unwrap();
        assert_eq!(toral_span(&pm, &w.partial(0), 1).unwrap().dim(), 0);
        let t = toral_span(&pm, &w.torus[0], 0).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.contains(&w.torus[0]));

        let g = build_classical(&"A1+A1".parse::<ClassicalKind>().unwrap(), &f).unwrap();
        let pm = PMap::new(&g.base).unwrap();
        let (h1, h2) = (g.cartan.rows()[0].clone(), g.cartan.rows()[1].clone());
        let y = crate::linalg::add_vec(&f, &h1, &crate::linalg::scale_vec(&f, &h2, Fe(2)));
        let t = toral_span(&pm, &y, 0).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.dim(), p_order(&g.base.ad_matrix(&y)));

        let f25 = Field::new(5, 2).unwrap();
        let g = g.retarget(&f25).unwrap();
        let pm = PMap::new(&g.base).unwrap();
        let lam = f25.generator();
        let (h1, h2) = (g.cartan.rows()[0].clone(), g.cartan.rows()[1].clone());
        let y = crate::linalg::add_vec(&f25, &h1, &crate::linalg::scale_vec(&f25, &h2, lam));
        let t = toral_span(&pm, &y, 0).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.dim(), p_order(&g.base.ad_matrix(&y)));
    }
}
