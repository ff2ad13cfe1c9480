use serde::Serialize;

use crate::field::Fe;
use crate::linalg::Matrix;

use super::{build_witt, CartanError, MultiIndex, WittAlgebra};

#[derive(Clone, Debug, Serialize)]
pub struct IotaReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub o_isomorphism: bool,
    pub transport_consistent: bool,
    pub injective: bool,
    pub bracket_pairs_checked: usize,
    pub bracket_preserving: bool,
    pub top_to_top: bool,
}

impl IotaReport {
    pub fn pass(&self) -> bool {
        self.o_isomorphism && self.transport_consistent && self.injective && self.bracket_preserving && self.top_to_top
    }
}

#[derive(Clone, Debug)]
pub struct IotaEmbedding {
    pub target: WittAlgebra,
    /// Columns are the images of the source basis.
    pub matrix: Matrix,
    pub report: IotaReport,
}

impl IotaEmbedding {
    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.matrix.mul_vec(v)
    }
}

/// `x^(α)` in `O(m, n)` goes to the monomial of base-p digits of `α` in `O(|n|, 1)`;
/// variable `(i, j)` carries digit `j` of `α_i`.
fn digit_index(p: u32, n: &[u32], alpha: &MultiIndex) -> MultiIndex {
    let mut out = vec![];
    for (i, &ni) in n.iter().enumerate() {
        let mut a = alpha.0[i];
        for _ in 0..ni {
            out.push(a % p);
            a /= p;
        }
    }
    MultiIndex(out)
}

/// Transports `W(m, n)` into `W(|n|, 1)` through the isomorphism `O(m, n) ≅ O(|n|, 1)`.
pub fn iota_embed(src: &WittAlgebra, cap: usize) -> Result<IotaEmbedding, CartanError> {
    let f = src.field();
    let p = f.p();
    let n = src.n().to_vec();
    let total = n.iter().sum::<u32>() as usize;
    let target = build_witt(total, &vec![1; total], f, cap)?;
    let (so, to) = (&src.o, &target.o);

    let phi: Vec<usize> =
        (0..so.dim()).map(|a| to.index_of(&digit_index(p, &n, so.monomial(a))).expect("digits below p")).collect();
    let phi_vec = |g: &[Fe]| -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; to.dim()];
        for (a, &c) in g.iter().enumerate() {
            out[phi[a]] = c;
        }
        out
    };

    let mut bijective = vec![false; to.dim()];
    phi.iter().for_each(|&b| bijective[b] = true);
    let mut o_isomorphism = bijective.iter().all(|&b| b);
    'mul: for a in 0..so.dim() {
        for b in a..so.dim() {
            let lhs = phi_vec(&so.mul(&so.basis_vec(a), &so.basis_vec(b)));
            let rhs = to.mul(&to.basis_vec(phi[a]), &to.basis_vec(phi[b]));
            if lhs != rhs {
                o_isomorphism = false;
                break 'mul;
            }
        }
    }

    // generator y_(i,j) of O(|n|, 1) corresponds to x^(p^j ε_i)
    let mut gens = vec![];
    for (i, &ni) in n.iter().enumerate() {
        for j in 0..ni {
            let mut alpha = MultiIndex::zero(src.m());
            alpha.0[i] = p.pow(j);
            gens.push(so.index_of(&alpha).expect("within τ"));
        }
    }

    let tm = target.m();
    let mut cols = Vec::with_capacity(src.dim());
    let mut transport_consistent = true;
    for u in 0..src.dim() {
        let w = src.base.basis_vec(u);
        let mut img = vec![Fe::ZERO; target.dim()];
        for (k, &g) in gens.iter().enumerate() {
            let val = phi_vec(&src.apply(&w, &so.basis_vec(g)));
            for (b, c) in val.into_iter().enumerate() {
                img[b * tm + k] = c;
            }
        }
        if transport_consistent {
            transport_consistent = (0..so.dim())
                .all(|a| phi_vec(&src.apply(&w, &so.basis_vec(a))) == target.apply(&img, &to.basis_vec(phi[a])));
        }
        cols.push(img);
    }
    let matrix = Matrix::from_cols(f, target.dim(), &cols);
    let injective = matrix.rank() == src.dim();

    let mut bracket_preserving = true;
    let mut pairs = 0;
    'br: for a in 0..src.dim() {
        for b in a + 1..src.dim() {
            pairs += 1;
            let lhs = matrix.mul_vec(&src.base.bracket(&src.base.basis_vec(a), &src.base.basis_vec(b)));
            let rhs = target.base.bracket(&cols[a], &cols[b]);
            if lhs != rhs {
                bracket_preserving = false;
                break 'br;
            }
        }
    }

    let top_to_top = src
        .component(src.s)
        .iter()
        .all(|&u| target.base.degree_support(&cols[u]).iter().all(|&d| d == target.s));

    let report = IotaReport {
        source_dim: src.dim(),
        target_dim: target.dim(),
        o_isomorphism,
        transport_consistent,
        injective,
        bracket_pairs_checked: pairs,
        bracket_preserving,
        top_to_top,
    };
    Ok(IotaEmbedding { target, matrix, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_w::{build_zassenhaus, DEFAULT_CAP};
    use crate::field::Field;
    use crate::linalg::Matrix;

    #[test]
    fn identity_on_restricted() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let e = iota_embed(&w, DEFAULT_CAP).unwrap();
        assert!(e.report.pass());
        assert_eq!(e.matrix, Matrix::identity(&f, 5));
    }

    #[test]
    fn w12_into_w21() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[2], &f, DEFAULT_CAP).unwrap();
        let e = iota_embed(&w, DEFAULT_CAP).unwrap();
        assert!(e.report.pass(), "{:?}", e.report);
        assert_eq!(e.target.dim(), 50);
        assert_eq!(e.target.s, 7);
        for &u in &w.component(23) {
            assert!(e.target.base.degree_support(&e.apply(&w.base.basis_vec(u))).iter().all(|&d| d == 7));
        }
        let z = build_zassenhaus(2, &f, DEFAULT_CAP).unwrap();
        assert!(iota_embed(&z, DEFAULT_CAP).unwrap().report.pass());
    }

    #[test]
    fn mixed_multi_index() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        let e = iota_embed(&w, DEFAULT_CAP).unwrap();
        assert!(e.report.pass());
        assert_eq!(e.matrix, Matrix::identity(&f, 50));
    }
}
