use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{Fe, FieldElement};
use crate::liealg::{center, generated_subalgebra, LieAlgebra};
use crate::linalg::{axpy, is_zero_vec, Matrix};
use crate::rng::{random_element, random_nonzero_element};

use super::{ClassicalAlgebra, ClassicalError};

/// Random draws allowed before a search falls back or gives up.
pub const SEARCH_BUDGET: usize = 200;
const EXHAUSTIVE_LIMIT: u64 = 10_000;
const REGULAR_DRAWS: usize = 20_000;

/// Applies `exp(t ad e_α)` to `v`.
fn exp_ad_apply(g: &ClassicalAlgebra, a: usize, t: Fe, v: &[Fe]) -> Result<Vec<Fe>, ClassicalError> {
    let f = g.field();
    let ad = g.base.ad(&g.root_vector(a));
    let p = f.p() as u64;
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut k = 0u64;
    loop {
        term = ad.apply(&term);
        k += 1;
        if is_zero_vec(&term) {
            return Ok(out);
        }
        if k >= p {
            return Err(ClassicalError::NilpotencyIndexTooLarge(g.root_label(a)));
        }
        let c = f.div(f.pow(t, k), f.from_int(factorial(k) as i64))?;
        axpy(f, &mut out, c, &term);
    }
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// Matrix of `exp(t ad e_α) = Σ_{k<p} t^k (ad e_α)^k / k!`.
pub fn exp_ad_automorphism(g: &ClassicalAlgebra, a: usize, t: &FieldElement) -> Result<Matrix, ClassicalError> {
    g.field().check_same(t.field())?;
    let cols: Vec<Vec<Fe>> = (0..g.dim())
        .map(|j| exp_ad_apply(g, a, t.value(), &g.base.basis_vec(j)))
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_cols(g.field(), g.dim(), &cols))
}

/// Whether `σ[b_i, b_j] = [σ b_i, σ b_j]` for all basis pairs.
pub fn is_automorphism(l: &LieAlgebra, sigma: &Matrix) -> bool {
    let cols: Vec<Vec<Fe>> = (0..l.dim()).map(|j| sigma.col(j)).collect();
    (0..l.dim()).all(|i| {
        (i + 1..l.dim()).all(|j| {
            let lhs = sigma.mul_vec(&l.bracket(&l.basis_vec(i), &l.basis_vec(j)));
            lhs == l.bracket(&cols[i], &cols[j])
        })
    })
}

/// A product of root-group elements `exp(t ad e_α)`, applied left to right.
#[derive(Clone, Debug, Default)]
pub struct Automorphism {
    pub factors: Vec<(usize, Fe)>,
}

impl Automorphism {
    pub fn identity() -> Automorphism {
        Automorphism::default()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn apply(&self, g: &ClassicalAlgebra, v: &[Fe]) -> Result<Vec<Fe>, ClassicalError> {
        self.factors.iter().try_fold(v.to_vec(), |acc, &(a, t)| exp_ad_apply(g, a, t, &acc))
    }

    pub fn apply_inverse(&self, g: &ClassicalAlgebra, v: &[Fe]) -> Result<Vec<Fe>, ClassicalError> {
        let f = g.field();
        self.factors.iter().rev().try_fold(v.to_vec(), |acc, &(a, t)| exp_ad_apply(g, a, f.neg(t), &acc))
    }

    pub fn matrix(&self, g: &ClassicalAlgebra) -> Result<Matrix, ClassicalError> {
        let cols: Vec<Vec<Fe>> = (0..g.dim()).map(|j| self.apply(g, &g.base.basis_vec(j))).collect::<Result<_, _>>()?;
        Ok(Matrix::from_cols(g.field(), g.dim(), &cols))
    }
}

/// `y ∈ h` with pairwise distinct root values: random draws, then an
/// exhaustive scan of `h` when it has at most 10^4 points.
pub fn regular_cartan_element(g: &ClassicalAlgebra, rng: &mut impl Rng) -> Result<Vec<Fe>, ClassicalError> {
    let f = g.field();
    let r = g.rank();
    let embed = |c: &[Fe]| {
        let mut y = g.base.zero_vec();
        for (&h, &ci) in g.cartan_index.iter().zip(c) {
            y[h] = ci;
        }
        y
    };
    if g.num_roots() as u64 > f.size() as u64 {
        return Err(ClassicalError::FieldTooSmall(format!("{} roots but {} has {} elements", g.num_roots(), f, f.size())));
    }
    for _ in 0..REGULAR_DRAWS {
        let c: Vec<Fe> = (0..r).map(|_| random_element(f, rng)).collect();
        let y = embed(&c);
        if g.is_regular(&y) {
            return Ok(y);
        }
    }
    let points = (f.size() as u64).checked_pow(r as u32).filter(|&n| n <= EXHAUSTIVE_LIMIT);
    if let Some(n) = points {
        let q = f.size() as u64;
        for code in 0..n {
            let mut c = vec![Fe::ZERO; r];
            let mut rest = code;
            for ci in c.iter_mut() {
                *ci = Fe((rest % q) as u32);
                rest /= q;
            }
            let y = embed(&c);
            if g.is_regular(&y) {
                return Ok(y);
            }
        }
    }
    Err(ClassicalError::FieldTooSmall(format!("no regular element of h found over {}", f)))
}

/// `σ(x)` with every root component nonzero, `σ` a product of root-group elements.
pub fn densify_components(
    g: &ClassicalAlgebra,
    x: &[Fe],
    rng: &mut impl Rng,
) -> Result<(Vec<Fe>, Automorphism), ClassicalError> {
    if is_zero_vec(x) {
        return Err(ClassicalError::Precondition("x = 0".into()));
    }
    if g.is_dense(x) {
        return Ok((x.to_vec(), Automorphism::identity()));
    }
    let f = g.field();
    let mut order: Vec<usize> = (0..g.num_roots()).collect();
    for _ in 0..SEARCH_BUDGET {
        let mut sigma = Automorphism::identity();
        let mut v = x.to_vec();
        for _pass in 0..3 {
            order.shuffle(rng);
            for &a in &order {
                let t = random_nonzero_element(f, rng);
                v = exp_ad_apply(g, a, t, &v)?;
                sigma.factors.push((a, t));
                if g.is_dense(&v) {
                    return Ok((v, sigma));
                }
            }
        }
    }
    Err(ClassicalError::SearchBudgetExhausted(format!("densifying in {} over {}", g.base.name(), f)))
}

/// A certified partner for `x` built from a dense conjugate and a regular Cartan element.
#[derive(Clone, Debug)]
pub struct PartnerWitness {
    /// Partner of the original `x`: `σ^{-1}(y_regular)`.
    pub y: Vec<Fe>,
    pub x_dense: Vec<Fe>,
    pub y_regular: Vec<Fe>,
    pub sigma: Automorphism,
    pub closure_dim: usize,
}

pub fn theorem_b_partner(g: &ClassicalAlgebra, x: &[Fe], rng: &mut impl Rng) -> Result<PartnerWitness, ClassicalError> {
    if is_zero_vec(x) {
        return Err(ClassicalError::Precondition("x = 0".into()));
    }
    let n = g.dim();
    let mut y_reg = regular_cartan_element(g, rng)?;
    for attempt in 0..SEARCH_BUDGET / 10 {
        let (xd, sigma) = densify_components(g, x, rng)?;
        if generated_subalgebra(&g.base, &xd, &y_reg).dim() == n {
            let y = sigma.apply_inverse(g, &y_reg)?;
            let closure_dim = generated_subalgebra(&g.base, x, &y).dim();
            if closure_dim == n {
                return Ok(PartnerWitness { y, x_dense: xd, y_regular: y_reg, sigma, closure_dim });
            }
        }
        if attempt % 2 == 1 {
            y_reg = regular_cartan_element(g, rng)?;
        }
    }
    Err(ClassicalError::SearchBudgetExhausted(format!("no certified partner in {} over {}", g.base.name(), g.field())))
}

#[derive(Clone, Debug)]
pub struct CentralWitness {
    pub y: Vec<Fe>,
    pub y0: Vec<Fe>,
    pub z: Vec<Fe>,
    pub alpha: Fe,
    pub closure_dim: usize,
}

/// Partner in a central extension with 1-dimensional center: lift a partner
/// `ȳ` of `x̄` from `g/z` and scan `y0 + a z`.
pub fn central_extension_partner(
    g: &ClassicalAlgebra,
    x: &[Fe],
    rng: &mut impl Rng,
) -> Result<CentralWitness, ClassicalError> {
    let z = center(&g.base);
    if z.dim() != 1 {
        return Err(ClassicalError::Precondition(format!("center has dimension {}", z.dim())));
    }
    if z.contains(x) {
        return Err(ClassicalError::Precondition("x is central".into()));
    }
    let (qg, q) = g.quotient_by_center()?;
    let w = theorem_b_partner(&qg, &q.project(x), rng)?;
    let y0 = q.lift(&w.y);
    let zv = z.rows()[0].clone();
    let f = g.field();
    for alpha in f.elements() {
        let mut y = y0.clone();
        axpy(f, &mut y, alpha, &zv);
        let d = generated_subalgebra(&g.base, x, &y).dim();
        if d == g.dim() {
            return Ok(CentralWitness { y, y0, z: zv, alpha, closure_dim: d });
        }
    }
    Err(ClassicalError::NoPartnerInField(f.to_string()))
}

impl ClassicalAlgebra {
    pub fn root_label(&self, a: usize) -> String {
        self.base.label(self.root_index[a])
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_classical;
    use super::*;
    use crate::field::Field;
    use crate::linalg::rank_of;
    use crate::rng::{random_nonzero_vector, stream_rng};

    fn build(s: &str, p: u32, k: u32) -> ClassicalAlgebra {
        build_classical(&s.parse().unwrap(), &Field::new(p, k).unwrap()).unwrap()
    }

    fn idx(g: &ClassicalAlgebra, label: &str) -> usize {
        g.base.index_of_label(label).unwrap()
    }

    #[test]
    fn regular_elements() {
        let g = build("A1", 5, 1);
        let h = g.base.basis_vec(idx(&g, "h1"));
        let e = g.root_index.iter().position(|&i| i == idx(&g, "e(1)")).unwrap();
        assert_eq!(g.root_values_at(&h)[e], Fe(2));
        assert!(g.is_regular(&h));
        assert!(!g.is_regular(&g.base.zero_vec()));
        let mut rng = stream_rng(1, 0);
        let y = regular_cartan_element(&g, &mut rng).unwrap();
        assert!(g.is_regular(&y));
        let a2 = build("A2", 5, 1);
        assert!(matches!(regular_cartan_element(&a2, &mut rng), Err(ClassicalError::FieldTooSmall(_))));
        let a2 = build("A2", 5, 2);
        assert!(a2.is_regular(&regular_cartan_element(&a2, &mut rng).unwrap()));
    }

    #[test]
    fn root_group_elements() {
        let g = build("A1", 5, 1);
        let f = g.field().clone();
        let e = g.root_index.iter().position(|&i| i == idx(&g, "e(1)")).unwrap();
        let t = f.element(Fe(3));
        let m = exp_ad_automorphism(&g, e, &t).unwrap();
        assert!(is_automorphism(&g.base, &m));
        // exp(t ad e) f = f + t h - t^2 e
        let img = m.mul_vec(&g.base.basis_vec(idx(&g, "e(-1)")));
        let mut want = g.base.basis_vec(idx(&g, "e(-1)"));
        want[idx(&g, "h1")] = Fe(3);
        want[idx(&g, "e(1)")] = f.neg(f.mul(Fe(3), Fe(3)));
        assert_eq!(img, want);
        let id = exp_ad_automorphism(&g, e, &f.element(Fe::ZERO)).unwrap();
        assert_eq!(id, Matrix::identity(&f, 3));
        let back = exp_ad_automorphism(&g, e, &f.element(f.neg(Fe(3)))).unwrap();
        assert_eq!(m.mul(&back), Matrix::identity(&f, 3));
        let g2 = build("G2", 7, 1);
        let f7 = g2.field().clone();
        for a in 0..g2.num_roots() {
            assert!(is_automorphism(&g2.base, &exp_ad_automorphism(&g2, a, &f7.element(Fe(2))).unwrap()));
        }
    }

    #[test]
    fn densify_and_vandermonde() {
        let g = build("A2", 5, 2);
        let mut rng = stream_rng(3, 0);
        let x = g.root_vector(0);
        let (xd, sigma) = densify_components(&g, &x, &mut rng).unwrap();
        assert!(g.is_dense(&xd));
        assert_eq!(sigma.apply(&g, &x).unwrap(), xd);
        assert_eq!(sigma.apply_inverse(&g, &xd).unwrap(), x);
        assert!(is_automorphism(&g.base, &sigma.matrix(&g).unwrap()));
        let (same, id) = densify_components(&g, &xd, &mut rng).unwrap();
        assert!(id.is_identity() && same == xd);
        assert!(densify_components(&g, &g.base.zero_vec(), &mut rng).is_err());
        // the Krylov vectors of a dense x under a regular y see every component
        let y = regular_cartan_element(&g, &mut rng).unwrap();
        let ad = g.base.ad(&y);
        let krylov: Vec<Vec<Fe>> = (0..=g.num_roots()).map(|k| ad.apply_pow(&xd, k)).collect();
        let expect = g.num_roots() + usize::from(!is_zero_vec(&g.cartan_part(&xd)));
        assert_eq!(rank_of(g.field(), &krylov), expect);
    }

    #[test]
    fn theorem_b_examples() {
        let g = build("A1", 5, 1);
        let mut rng = stream_rng(5, 0);
        let mut x = g.base.zero_vec();
        x[idx(&g, "e(1)")] = Fe::ONE;
        x[idx(&g, "e(-1)")] = Fe::ONE;
        let h = g.base.basis_vec(idx(&g, "h1"));
        assert_eq!(generated_subalgebra(&g.base, &x, &h).dim(), 3);
        let w = theorem_b_partner(&g, &x, &mut rng).unwrap();
        assert_eq!(w.closure_dim, 3);
        assert!(theorem_b_partner(&g, &g.base.zero_vec(), &mut rng).is_err());
        let psl = build("psl:5", 5, 2);
        let f5 = Field::prime(5).unwrap();
        for i in 0..3 {
            let x: Vec<Fe> = crate::rng::random_prime_vector(&f5, psl.dim(), &mut stream_rng(9, i));
            if is_zero_vec(&x) {
                continue;
            }
            let w = theorem_b_partner(&psl, &x, &mut rng).unwrap();
            assert_eq!(generated_subalgebra(&psl.base, &x, &w.y).dim(), 23);
        }
    }

    #[test]
    fn sums_of_two_copies() {
        let g = build("A1+A1", 5, 1);
        let mut rng = stream_rng(8, 0);
        for _ in 0..10 {
            let x = random_nonzero_vector(g.field(), 6, &mut rng);
            if is_zero_vec(&x[..3]) || is_zero_vec(&x[3..]) {
                continue;
            }
            let w = theorem_b_partner(&g, &x, &mut rng).unwrap();
            assert_eq!(w.closure_dim, 6);
        }
    }

    #[test]
    fn central_extension() {
        let g = build("gl:2", 5, 1);
        let mut rng = stream_rng(2, 0);
        let e = g.base.basis_vec(idx(&g, "E1,2"));
        let w = central_extension_partner(&g, &e, &mut rng).unwrap();
        assert_eq!(w.closure_dim, 4);
        assert_eq!(generated_subalgebra(&g.base, &e, &w.y).dim(), 4);
        let id: Vec<Fe> = g.base.labels().unwrap().iter().map(|l| if l == "E1,1" || l == "E2,2" { Fe::ONE } else { Fe::ZERO }).collect();
        assert!(central_extension_partner(&g, &id, &mut rng).is_err());
        // scanning the central direction: at most one critical value fails
        let f = g.field();
        let failures = f
            .elements()
            .filter(|&a| {
                let mut y = w.y0.clone();
                axpy(f, &mut y, a, &w.z);
                generated_subalgebra(&g.base, &e, &y).dim() < 4
            })
            .count();
        assert!(failures <= 1);
    }
}
