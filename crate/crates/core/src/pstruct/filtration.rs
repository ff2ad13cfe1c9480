use serde::Serialize;

use crate::field::Fe;
use crate::linalg::p_order;
use crate::liealg::{LieAlgebra, SubalgebraBasis};

use super::PStructError;

/// Descending filtration `L_(k) = ⊕_{j ≥ k} L_j` induced by a grading.
#[derive(Clone, Copy, Debug)]
pub struct FiltrationView<'a> {
    l: &'a LieAlgebra,
}

impl<'a> FiltrationView<'a> {
    pub fn new(l: &'a LieAlgebra) -> Result<FiltrationView<'a>, PStructError> {
        if l.grading().is_none() {
            return Err(PStructError::Precondition("filtration needs a graded algebra".into()));
        }
        Ok(FiltrationView { l })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.l
    }

    pub fn level(&self, k: i32) -> SubalgebraBasis {
        let idx: Vec<usize> = (0..self.l.dim()).filter(|&i| self.l.degree_of(i).unwrap() >= k).collect();
        self.l.coordinate_subspace(&idx)
    }

    /// `ν(x)`: largest `k` with `x ∈ L_(k)`; `None` for `x = 0`.
    pub fn nu(&self, x: &[Fe]) -> Option<i32> {
        self.l.lowest_degree(x)
    }

    /// `gr(x)`, realized as the lowest homogeneous component of `x`.
    pub fn gr(&self, x: &[Fe]) -> Vec<Fe> {
        match self.nu(x) {
            Some(k) => self.l.homogeneous_part(x, k),
            None => self.l.zero_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdComparison {
    pub nu: i32,
    pub ord_h: usize,
    pub ord_gr: usize,
    pub equal: bool,
}

/// `ord(h)` against `ord(gr h)`. With `ν(h) < 0` both are still computed and
/// returned inside the error.
pub fn ord_compare(view: &FiltrationView, h: &[Fe]) -> Result<OrdComparison, PStructError> {
    let l = view.algebra();
    let nu = view.nu(h).unwrap_or(i32::MAX);
    let ord_h = p_order(&l.ad_matrix(h));
    let ord_gr = p_order(&l.ad_matrix(&view.gr(h)));
    let cmp = OrdComparison { nu, ord_h, ord_gr, equal: ord_h == ord_gr };
    if nu < 0 {
        Err(PStructError::ElementBelowFiltrationZero(cmp))
    } else {
        Ok(cmp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_w::{build_witt, DEFAULT_CAP};
    use crate::field::Field;
    use crate::linalg::add_vec;

    #[test]
    fn remark_and_examples() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let view = FiltrationView::new(&w.base).unwrap();
        let e = |i: usize| w.base.basis_vec(i);
        let h = add_vec(&f, &e(1), &e(2));
        assert_eq!(ord_compare(&view, &h).unwrap(), OrdComparison { nu: 0, ord_h: 1, ord_gr: 1, equal: true });
        let n = add_vec(&f, &e(2), &e(3));
        assert_eq!(ord_compare(&view, &n).unwrap(), OrdComparison { nu: 1, ord_h: 0, ord_gr: 0, equal: true });
        let bad = add_vec(&f, &e(0), &e(1));
        match ord_compare(&view, &bad) {
            Err(PStructError::ElementBelowFiltrationZero(c)) => {
                assert_eq!((c.nu, c.ord_h, c.ord_gr, c.equal), (-1, 1, 0, false))
            }
            other => panic!("{:?}", other),
        }
        assert_eq!(view.level(1).dim(), 3);
        assert_eq!(view.gr(&bad), e(0));
    }
}
