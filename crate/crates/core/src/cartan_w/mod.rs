//! Divided power algebras `O(m, n)` and the Witt algebras `W(m, n)`.
//!
//! `W(m, n)` has basis `x^(α) D_j` with `0 ≤ α ≤ τ(n)`, graded by `|α| - 1`.
//! Index of `x^(α) D_j` is `o_index(α) * m + j`.

mod divided;
mod embed;

pub use divided::{binomial_mod_p, DividedPowerAlgebra, MultiIndex};
pub use embed::{iota_embed, IotaEmbedding, IotaReport};

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::linalg::{rank_of, Matrix};
use crate::liealg::{ideal_closure, validate, weight_decomposition, LieAlgebra, LieError, SubalgebraBasis};

pub const DEFAULT_CAP: usize = 250;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Clone, Debug)]
pub struct WittAlgebra {
    pub base: LieAlgebra,
    pub o: DividedPowerAlgebra,
    /// Top degree `|τ| - 1`.
    pub s: i32,
    /// `x^(ε_i) D_i`, `i = 1..m`.
    pub torus: Vec<Vec<Fe>>,
    pub zassenhaus: bool,
}

fn check_cap(dim: usize, cap: usize) -> Result<(), CartanError> {
    if dim > cap {
        Err(CartanError::DimensionCapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

fn check_field(field: &Field) -> Result<(), CartanError> {
    if field.p() <= 3 {
        return Err(CartanError::Precondition(format!("characteristic {} must exceed 3", field.p())));
    }
    Ok(())
}

fn predicted_dim(p: u32, m: usize, n: &[u32]) -> Option<usize> {
    let total: u32 = n.iter().sum();
    (p as usize).checked_pow(total).and_then(|d| d.checked_mul(m))
}

fn witt_label(o: &DividedPowerAlgebra, a: usize, j: usize) -> String {
    format!("{}D_{}", o.label(a), j + 1)
}

pub fn build_witt(m: usize, n: &[u32], field: &Field, cap: usize) -> Result<WittAlgebra, CartanError> {
    check_field(field)?;
    if m == 0 || n.len() != m || n.iter().any(|&ni| ni == 0) {
        return Err(CartanError::Precondition(format!("need m >= 1 and {} entries n_i >= 1", m)));
    }
    let dim = predicted_dim(field.p(), m, n).unwrap_or(usize::MAX);
    check_cap(dim, cap)?;
    let o = DividedPowerAlgebra::new(field, n);
    let units: Vec<MultiIndex> = (0..m).map(|i| MultiIndex::unit(m, i)).collect();
    // x^(α) D_i (x^(β)) = x^(α) x^(β - ε_i)
    let act = |a: usize, i: usize, b: usize| -> Option<(Fe, usize)> {
        let lower = o.monomial(b).checked_sub(&units[i])?;
        o.dp_multiply(o.monomial(a), &lower)
    };
    let base = LieAlgebra::from_upper(field, dim, format!("W({},{:?})", m, n), |u, v| {
        let (a, i) = (u / m, u % m);
        let (b, j) = (v / m, v % m);
        let mut out = vec![];
        if let Some((c, k)) = act(a, i, b) {
            out.push((k * m + j, c));
        }
        if let Some((c, k)) = act(b, j, a) {
            out.push((k * m + i, field.neg(c)));
        }
        out
    });
    let grading = (0..dim).map(|u| o.degree(u / m) as i32 - 1).collect();
    let labels = (0..dim).map(|u| witt_label(&o, u / m, u % m)).collect();
    let base = base.with_grading(grading).with_labels(labels);
    finish(base, o, false)
}

/// `W(1, n)` on `e_{-1}, ..., e_s`, `s = p^n - 2`, with
/// `[e_i, e_j] = (binom(i+j+1, j) - binom(i+j+1, i)) e_{i+j}`.
pub fn build_zassenhaus(n: u32, field: &Field, cap: usize) -> Result<WittAlgebra, CartanError> {
    check_field(field)?;
    if n == 0 {
        return Err(CartanError::Precondition("n must be positive".into()));
    }
    let dim = (field.p() as usize).checked_pow(n).unwrap_or(usize::MAX);
    check_cap(dim, cap)?;
    let p = field.p();
    let s = dim as i64 - 2;
    let binom = |a: i64, b: i64| if b < 0 || b > a { 0 } else { binomial_mod_p(a as u64, b as u64, p) };
    let base = LieAlgebra::from_upper(field, dim, format!("Zass({})", n), |u, v| {
        let (i, j) = (u as i64 - 1, v as i64 - 1);
        let k = i + j;
        if k < -1 || k > s {
            return vec![];
        }
        let c = field.sub(Fe(binom(k + 1, j)), Fe(binom(k + 1, i)));
        if c.is_zero() {
            vec![]
        } else {
            vec![((k + 1) as usize, c)]
        }
    });
    let grading = (0..dim).map(|u| u as i32 - 1).collect();
    let labels = (0..dim).map(|u| format!("e_{}", u as i64 - 1)).collect();
    let base = base.with_grading(grading).with_labels(labels);
    finish(base, DividedPowerAlgebra::new(field, &[n]), true)
}

fn finish(base: LieAlgebra, o: DividedPowerAlgebra, zassenhaus: bool) -> Result<WittAlgebra, CartanError> {
    let m = o.m();
    let report = validate(&base);
    if !report.pass() {
        return Err(CartanError::Validation(report.failures().join("; ")));
    }
    let torus = (0..m)
        .map(|i| {
            let a = o.index_of(&MultiIndex::unit(m, i)).expect("unit monomial");
            base.basis_vec(a * m + i)
        })
        .collect();
    let w = WittAlgebra { s: o.tau().length() as i32 - 1, base, o, torus, zassenhaus };
    if !w.torus_is_diagonal() {
        return Err(CartanError::Validation("standard torus does not act diagonally".into()));
    }
    Ok(w)
}

impl WittAlgebra {
    pub fn field(&self) -> &Field {
        self.base.field()
    }
    pub fn m(&self) -> usize {
        self.o.m()
    }
    pub fn n(&self) -> &[u32] {
        self.o.n()
    }
    pub fn dim(&self) -> usize {
        self.base.dim()
    }
    pub fn is_restricted_type(&self) -> bool {
        self.n().iter().all(|&ni| ni == 1)
    }

    /// Same algebra over a field of the same characteristic.
    pub fn retarget(&self, field: &Field) -> Result<WittAlgebra, CartanError> {
        let base = self.base.retarget(field)?;
        let table = self.field().embedding_into(field).map_err(LieError::from)?;
        Ok(WittAlgebra {
            base,
            o: DividedPowerAlgebra::new(field, self.n()),
            s: self.s,
            torus: self.torus.iter().map(|t| t.iter().map(|c| table[c.0 as usize]).collect()).collect(),
            zassenhaus: self.zassenhaus,
        })
    }

    pub fn index(&self, alpha: &MultiIndex, j: usize) -> Option<usize> {
        self.o.index_of(alpha).map(|a| a * self.m() + j)
    }

    /// `(α, j)` of basis element `u`.
    pub fn split(&self, u: usize) -> (&MultiIndex, usize) {
        (self.o.monomial(u / self.m()), u % self.m())
    }

    pub fn element(&self, alpha: &MultiIndex, j: usize) -> Vec<Fe> {
        self.base.basis_vec(self.index(alpha, j).expect("multi-index within τ"))
    }

    /// `D_j`.
    pub fn partial(&self, j: usize) -> Vec<Fe> {
        self.element(&MultiIndex::zero(self.m()), j)
    }

    pub fn component(&self, k: i32) -> Vec<usize> {
        self.base.component(k)
    }

    pub fn component_space(&self, k: i32) -> SubalgebraBasis {
        self.base.coordinate_subspace(&self.component(k))
    }

    /// Action of `w = Σ f_j D_j` on `g ∈ O`.
    pub fn apply(&self, w: &[Fe], g: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let m = self.m();
        let mut out = vec![Fe::ZERO; self.o.dim()];
        for j in 0..m {
            let coeff: Vec<Fe> = (0..self.o.dim()).map(|a| w[a * m + j]).collect();
            if coeff.iter().all(|c| c.is_zero()) {
                continue;
            }
            let prod = self.o.mul(&coeff, &self.o.partial(j, g));
            for (o, v) in out.iter_mut().zip(prod) {
                *o = f.add(*o, v);
            }
        }
        out
    }

    /// Matrix of `w` acting on `O`.
    pub fn operator(&self, w: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.o.dim()).map(|b| self.apply(w, &self.o.basis_vec(b))).collect();
        Matrix::from_cols(self.field(), self.o.dim(), &cols)
    }

    /// Module structure `b · (Σ f_j D_j) = Σ (b f_j) D_j`.
    pub fn module_action(&self, b: &[Fe], w: &[Fe]) -> Vec<Fe> {
        let m = self.m();
        let mut out = vec![Fe::ZERO; self.dim()];
        for j in 0..m {
            let coeff: Vec<Fe> = (0..self.o.dim()).map(|a| w[a * m + j]).collect();
            let prod = self.o.mul(b, &coeff);
            for (a, v) in prod.into_iter().enumerate() {
                out[a * m + j] = v;
            }
        }
        out
    }

    /// The derivation `Σ op(x_j) D_j`, if it reproduces `op` on all of `O`.
    pub fn from_operator(&self, op: &Matrix) -> Option<Vec<Fe>> {
        let m = self.m();
        let mut w = vec![Fe::ZERO; self.dim()];
        for j in 0..m {
            let xj = self.o.index_of(&MultiIndex::unit(m, j))?;
            for (a, v) in op.col(xj).into_iter().enumerate() {
                w[a * m + j] = v;
            }
        }
        (self.operator(&w) == *op).then_some(w)
    }

    fn torus_is_diagonal(&self) -> bool {
        self.torus.iter().all(|t| {
            let ad = self.base.ad(t);
            (0..self.dim()).all(|u| ad.column(u).iter().all(|&(k, _)| k as usize == u))
        })
    }

    /// Weight of `x^(α) D_j`: `α - ε_j` mod p.
    pub fn basis_weight(&self, u: usize) -> Vec<u32> {
        let p = self.field().p();
        let (alpha, j) = self.split(u);
        alpha
            .0
            .iter()
            .enumerate()
            .map(|(i, &a)| ((a % p) + p - (i == j) as u32) % p)
            .collect()
    }

    /// Ideal generated by `v` contains all of `W`.
    pub fn spot_check_simple(&self, rng: &mut impl Rng) -> bool {
        let v = crate::rng::random_nonzero_vector(self.field(), self.dim(), rng);
        ideal_closure(&self.base, &[v]).is_full()
    }

    /// `L_i = [L_{-1}, L_{i+1}]` for `-1 ≤ i < s`.
    pub fn descends_from_above(&self) -> bool {
        let f = self.field();
        let bottom = self.component(-1);
        (-1..self.s).all(|i| {
            let target = self.component_space(i);
            let up = self.component(i + 1);
            let vs: Vec<Vec<Fe>> = bottom
                .iter()
                .flat_map(|&a| up.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.base.bracket(&self.base.basis_vec(a), &self.base.basis_vec(b)))
                .collect();
            let span = SubalgebraBasis::from_vectors(f, self.dim(), &vs);
            span == target
        })
    }
}

/// `Γ_k`: weights of the standard torus on `W_k`, as residues mod p.
pub fn torus_weights(w: &WittAlgebra, k: i32) -> Result<Vec<Vec<u32>>, CartanError> {
    let f = w.field();
    let space = w.component_space(k);
    let dec = weight_decomposition(&w.base, &w.torus, &space)?;
    let mut out: Vec<Vec<u32>> = dec
        .weights
        .iter()
        .map(|wt| wt.iter().map(|&c| f.to_prime_int(c).expect("integral weight")).collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Explicit `Γ_{-1} = {-ε_i}`, `Γ_0 = {ε_i - ε_j}`, `Γ_s = {τ - ε_i}` mod p.
pub fn torus_weights_formula(w: &WittAlgebra, k: i32) -> Option<Vec<Vec<u32>>> {
    let p = w.field().p();
    let m = w.m();
    let eps = |i: usize| -> Vec<i64> { (0..m).map(|t| (t == i) as i64).collect() };
    let modp = |v: Vec<i64>| -> Vec<u32> { v.into_iter().map(|x| x.rem_euclid(p as i64) as u32).collect() };
    let mut out: Vec<Vec<u32>> = if k == -1 {
        (0..m).map(|i| modp(eps(i).iter().map(|x| -x).collect())).collect()
    } else if k == 0 {
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| modp(eps(i).iter().zip(eps(j)).map(|(a, b)| a - b).collect()))
            .collect()
    } else if k == w.s {
        let tau: Vec<i64> = w.o.tau().0.iter().map(|&t| t as i64).collect();
        (0..m).map(|i| modp(tau.iter().zip(eps(i)).map(|(a, b)| a - b).collect())).collect()
    } else {
        return None;
    };
    out.sort();
    out.dedup();
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLemma {
    pub product_is_zero: bool,
    pub rank: usize,
    pub count: usize,
}

impl ProductLemma {
    pub fn dependent(&self) -> bool {
        self.rank < self.count
    }
    /// Product vanishes exactly when the family is dependent.
    pub fn agrees(&self) -> bool {
        self.product_is_zero == self.dependent()
    }
}

/// `ξ_1^{p-1} ⋯ ξ_k^{p-1}` for degree-one `ξ_i ∈ O(m, 1)`.
pub fn product_lemma_o(o: &DividedPowerAlgebra, xis: &[Vec<Fe>]) -> Result<ProductLemma, CartanError> {
    if o.n().iter().any(|&ni| ni != 1) {
        return Err(CartanError::Precondition("product lemma needs O(m, 1)".into()));
    }
    for xi in xis {
        if xi.len() != o.dim() || xi.iter().enumerate().any(|(i, c)| !c.is_zero() && o.degree(i) != 1) {
            return Err(CartanError::Precondition("elements must be homogeneous of degree 1".into()));
        }
    }
    let p = o.field().p();
    let prod = xis.iter().fold(o.one(), |acc, xi| o.mul(&acc, &o.pow(xi, p - 1)));
    Ok(ProductLemma {
        product_is_zero: prod.iter().all(|c| c.is_zero()),
        rank: rank_of(o.field(), xis),
        count: xis.len(),
    })
}

/// `∂_1^{p-1} ⋯ ∂_k^{p-1}(x^(τ))` for degree `-1` derivations of `W(m, 1)`.
pub fn product_lemma_w(w: &WittAlgebra, ds: &[Vec<Fe>]) -> Result<ProductLemma, CartanError> {
    if !w.is_restricted_type() {
        return Err(CartanError::Precondition("product lemma needs W(m, 1)".into()));
    }
    for d in ds {
        if d.len() != w.dim() || w.base.degree_support(d).iter().any(|&k| k != -1) {
            return Err(CartanError::Precondition("derivations must be homogeneous of degree -1".into()));
        }
    }
    let p = w.field().p();
    let mut v = w.o.basis_vec(w.o.tau_index());
    for d in ds.iter().rev() {
        for _ in 0..p - 1 {
            v = w.apply(d, &v);
        }
    }
    Ok(ProductLemma { product_is_zero: v.iter().all(|c| c.is_zero()), rank: rank_of(w.field(), ds), count: ds.len() })
}

#[derive(Clone, Debug)]
pub struct TopStructures {
    pub x_tau: MultiIndex,
    /// Minimal ideal of `O`, spanned by `x^(τ)`.
    pub j0: SubalgebraBasis,
    pub top: SubalgebraBasis,
    pub j0_w: SubalgebraBasis,
}

impl TopStructures {
    pub fn top_equals_j0_w(&self) -> bool {
        self.top == self.j0_w
    }
}

pub fn top_and_min_structures(w: &WittAlgebra) -> TopStructures {
    let f = w.field();
    let x_tau = w.o.tau().clone();
    let top_vec = w.o.basis_vec(w.o.tau_index());
    let j0 = w.o.ideal_generated(&top_vec);
    let products: Vec<Vec<Fe>> = j0
        .rows()
        .iter()
        .flat_map(|b| (0..w.dim()).map(move |u| (b, u)))
        .map(|(b, u)| w.module_action(b, &w.base.basis_vec(u)))
        .collect();
    TopStructures {
        x_tau,
        j0,
        top: w.component_space(w.s),
        j0_w: SubalgebraBasis::from_vectors(f, w.dim(), &products),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_vector, stream_rng};

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn dimensions_and_top_degree() {
        let f = f5();
        for (m, n, dim, s) in [(1, vec![1], 5, 3), (2, vec![1, 1], 50, 7), (1, vec![2], 25, 23), (2, vec![1, 2], 250, 27)] {
            let w = build_witt(m, &n, &f, DEFAULT_CAP).unwrap();
            assert_eq!(w.dim(), dim);
            assert_eq!(w.o.dim() * m, dim);
            assert_eq!(w.s, s);
            assert_eq!(w.component(-1).len(), m);
            assert_eq!(w.component(w.s).len(), m);
        }
        assert_eq!(build_witt(1, &[1], &Field::prime(7).unwrap(), DEFAULT_CAP).unwrap().s, 5);
    }

    #[test]
    fn cap_and_preconditions() {
        let f = f5();
        assert_eq!(
            build_witt(3, &[1, 1, 1], &f, DEFAULT_CAP).unwrap_err(),
            CartanError::DimensionCapExceeded { dim: 375, cap: 250 }
        );
        assert!(build_zassenhaus(4, &f, DEFAULT_CAP).is_err());
        assert!(matches!(build_witt(2, &[1], &f, 250), Err(CartanError::Precondition(_))));
    }

    #[test]
    fn labels_and_grading() {
        let w = build_witt(2, &[1, 1], &f5(), DEFAULT_CAP).unwrap();
        let u = w.index(&MultiIndex(vec![2, 0]), 0).unwrap();
        assert_eq!(w.base.label(u), "x^(2,0)D_1");
        assert_eq!(w.base.degree_of(u), Some(1));
        let g = w.base.grading().unwrap();
        for a in 0..w.dim() {
            for b in 0..w.dim() {
                for &(k, _) in w.base.bracket_basis(a, b) {
                    assert_eq!(g[k as usize], g[a] + g[b]);
                }
            }
        }
    }

    #[test]
    fn witt_bracket_examples() {
        let f = f5();
        let w = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let e = |a: u32| w.element(&MultiIndex(vec![a]), 0);
        // [D, x^(a) D] = x^(a-1) D
        assert_eq!(w.base.bracket(&e(0), &e(3)), e(2));
        // [x D, x^(a) D] = (a - 1) x^(a) D
        assert_eq!(w.base.bracket(&e(1), &e(4)), crate::linalg::scale_vec(&f, &e(4), Fe(3)));
        // [x^(2) D, x^(3) D] = (binom(4,2) - binom(4,3)) x^(4) D = 2 x^(4) D
        assert_eq!(w.base.bracket(&e(2), &e(3)), crate::linalg::scale_vec(&f, &e(4), Fe(2)));
    }

    #[test]
    fn bracket_is_commutator_of_operators() {
        let f = f5();
        let w = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        let mut rng = stream_rng(11, 0);
        for _ in 0..5 {
            let a = random_vector(&f, w.dim(), &mut rng);
            let b = random_vector(&f, w.dim(), &mut rng);
            let (oa, ob) = (w.operator(&a), w.operator(&b));
            let comm = oa.mul(&ob).sub(&ob.mul(&oa));
            assert_eq!(w.operator(&w.base.bracket(&a, &b)), comm);
            assert_eq!(w.from_operator(&comm), Some(w.base.bracket(&a, &b)));
        }
    }

    #[test]
    fn zassenhaus_matches_witt() {
        let f = f5();
        for n in 1..=2 {
            let z = build_zassenhaus(n, &f, DEFAULT_CAP).unwrap();
            let w = build_witt(1, &[n], &f, DEFAULT_CAP).unwrap();
            assert_eq!(z.dim(), w.dim());
            for a in 0..z.dim() {
                for b in 0..z.dim() {
                    assert_eq!(z.base.bracket_basis(a, b), w.base.bracket_basis(a, b));
                }
            }
        }
        let z = build_zassenhaus(2, &f, DEFAULT_CAP).unwrap();
        let e = |i: i32| z.base.basis_vec((i + 1) as usize);
        assert_eq!(z.s, 23);
        assert_eq!(z.base.label(0), "e_-1");
        for k in 0..=z.s {
            assert_eq!(z.base.bracket(&e(-1), &e(k)), e(k - 1));
        }
        assert_eq!(z.base.bracket(&e(0), &e(23)), crate::linalg::scale_vec(&f, &e(23), f.from_int(-2)));
        assert!(z.base.bracket(&e(1), &e(23)).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn weights() {
        let f = f5();
        let w2 = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        assert_eq!(torus_weights(&w2, -1).unwrap(), vec![vec![0, 4], vec![4, 0]]);
        for k in [-1, 0, w2.s] {
            assert_eq!(torus_weights(&w2, k).unwrap(), torus_weights_formula(&w2, k).unwrap());
        }
        let g0 = torus_weights(&w2, 0).unwrap();
        assert!(torus_weights(&w2, w2.s).unwrap().iter().all(|g| !g0.contains(g)));
        assert!(torus_weights(&w2, -1).unwrap().iter().all(|g| !g0.contains(g)));
        let w1 = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        assert_eq!(torus_weights(&w1, 3).unwrap(), vec![vec![3]]);
        for u in 0..w2.dim() {
            let wt = w2.basis_weight(u);
            for (i, t) in w2.torus.iter().enumerate() {
                let img = w2.base.bracket(t, &w2.base.basis_vec(u));
                assert_eq!(img, crate::linalg::scale_vec(&f, &w2.base.basis_vec(u), Fe(wt[i])));
            }
        }
    }

    #[test]
    fn descent_and_simplicity() {
        let f = f5();
        let mut rng = stream_rng(3, 0);
        for (m, n) in [(1, vec![1]), (2, vec![1, 1]), (1, vec![2])] {
            let w = build_witt(m, &n, &f, DEFAULT_CAP).unwrap();
            assert!(w.descends_from_above());
            assert!(w.spot_check_simple(&mut rng));
        }
        assert!(build_zassenhaus(1, &Field::prime(7).unwrap(), DEFAULT_CAP).unwrap().descends_from_above());
    }

    #[test]
    fn product_lemmas() {
        let f = f5();
        let w = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        let (d1, d2) = (w.partial(0), w.partial(1));
        let res = product_lemma_w(&w, &[d1.clone(), d2.clone()]).unwrap();
        assert!(!res.product_is_zero && res.agrees());
        let mut v = w.o.basis_vec(w.o.tau_index());
        for _ in 0..4 {
            v = w.apply(&d2, &v);
        }
        for _ in 0..4 {
            v = w.apply(&d1, &v);
        }
        assert_eq!(v, w.o.one());
        let sum = crate::linalg::add_vec(&f, &d1, &d2);
        let res = product_lemma_w(&w, &[d1.clone(), d2.clone(), sum]).unwrap();
        assert!(res.product_is_zero && res.dependent() && res.agrees());

        let x1 = w.o.basis_vec(w.o.index_of(&MultiIndex::unit(2, 0)).unwrap());
        let res = product_lemma_o(&w.o, &[x1.clone(), x1.clone()]).unwrap();
        assert!(res.product_is_zero && res.agrees());
        let x2 = w.o.basis_vec(w.o.index_of(&MultiIndex::unit(2, 1)).unwrap());
        let res = product_lemma_o(&w.o, &[x1.clone(), x2]).unwrap();
        assert!(!res.product_is_zero && res.agrees());
        assert!(product_lemma_o(&w.o, &[w.o.one()]).is_err());
        assert!(product_lemma_w(&w, &[w.torus[0].clone()]).is_err());
    }

    #[test]
    fn top_structures() {
        let f = f5();
        let w1 = build_witt(1, &[1], &f, DEFAULT_CAP).unwrap();
        let t = top_and_min_structures(&w1);
        assert_eq!(t.j0.dim(), 1);
        assert_eq!(t.x_tau, MultiIndex(vec![4]));
        let w2 = build_witt(2, &[1, 1], &f, DEFAULT_CAP).unwrap();
        assert_eq!(top_and_min_structures(&w2).top.dim(), 2);
        let w12 = build_witt(1, &[2], &f, DEFAULT_CAP).unwrap();
        assert!(top_and_min_structures(&w12).top_equals_j0_w());
        assert!(top_and_min_structures(&w2).top_equals_j0_w());
    }
}
