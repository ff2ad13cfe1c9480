use crate::cartan_w::WittAlgebra;
use crate::field::{Fe, Poly};
use crate::linalg::{axpy, is_zero_vec, p_min_poly, Matrix, PPolynomial, TaggedEchelon};
use crate::liealg::{generated_subalgebra, SubalgebraBasis};

use super::{p_ary, PMap, PStructError};

/// `y^[p^j]` and its degree `-1` components `δ_j`.
#[derive(Clone, Debug)]
pub struct PPowerData {
    pub y: Vec<Fe>,
    pub powers: Vec<Vec<Fe>>,
    pub deltas: Vec<Vec<Fe>>,
}

#[derive(Clone, Debug)]
pub struct DependenceData {
    pub powers: PPowerData,
    /// Least `k` with `δ_0, ..., δ_k` dependent.
    pub k: usize,
    /// `Σ α_j δ_j = 0`, `α_k = 1`.
    pub alpha: Vec<Fe>,
    pub f: PPolynomial,
    /// `f(t) = t g(t)`.
    pub g: Poly,
    pub f_y: Vec<Fe>,
    /// Degree `0` component of `f(y)`.
    pub h: Vec<Fe>,
}

fn check_witt(w: &WittAlgebra, pm: &PMap) -> Result<(), PStructError> {
    if !w.is_restricted_type() {
        return Err(PStructError::Precondition("needs W(m, 1)".into()));
    }
    if pm.algebra().dim() != w.dim() {
        return Err(PStructError::Precondition("solver built for a different algebra".into()));
    }
    Ok(())
}

pub fn dependence_data(w: &WittAlgebra, pm: &PMap, y: &[Fe]) -> Result<DependenceData, PStructError> {
    check_witt(w, pm)?;
    let f = w.field();
    let m = w.m();
    let mut chain = TaggedEchelon::new(f);
    let mut powers = vec![];
    let mut deltas = vec![];
    let mut found = None;
    let mut z = y.to_vec();
    for j in 0..=m {
        if j > 0 {
            z = pm.p_power(&z)?;
        }
        let d = w.base.homogeneous_part(&z, -1);
        powers.push(z.clone());
        deltas.push(d.clone());
        if let Some(rel) = chain.push(&d) {
            found = Some((j, rel));
            break;
        }
    }
    let (k, alpha) = found.expect("W_{-1} has dimension m, so m + 1 components are dependent");
    let p = f.p() as usize;
    let f_poly = PPolynomial::new(f, alpha.clone());
    let mut g_coeffs = vec![Fe::ZERO; p.pow(k as u32)];
    for (j, &a) in alpha.iter().enumerate() {
        g_coeffs[p.pow(j as u32) - 1] = a;
    }
    let mut f_y = w.base.zero_vec();
    for (a, z) in alpha.iter().zip(&powers) {
        axpy(f, &mut f_y, *a, z);
    }
    let h = w.base.homogeneous_part(&f_y, 0);
    Ok(DependenceData {
        powers: PPowerData { y: y.to_vec(), powers, deltas },
        k,
        alpha,
        f: f_poly,
        g: Poly::new(f, g_coeffs),
        f_y,
        h,
    })
}

/// Degree claims for `(ad y)^a (x)`, `0 ≤ a ≤ p^m`, `x ∈ W_s`.
#[derive(Clone, Debug)]
pub struct AdPowerDegrees {
    /// `(a, lowest degree of (ad y)^a x)`.
    pub lowest: Vec<(u64, Option<i32>)>,
    /// `(ad y)^a x ∈ W_{≥ s - |a|_p}` for every `a`.
    pub lower_bound: bool,
    /// Equality for every `a < p^k`.
    pub exact_below_pk: bool,
}

pub fn ad_power_degrees(w: &WittAlgebra, dd: &DependenceData, x: &[Fe]) -> AdPowerDegrees {
    let p = w.field().p();
    let top = (p as u64).pow(w.m() as u32);
    let pk = (p as u64).pow(dd.k as u32);
    let ad_y = w.base.ad(&dd.powers.y);
    let mut v = x.to_vec();
    let mut lowest = vec![];
    let (mut lower_bound, mut exact_below_pk) = (true, true);
    for a in 0..=top {
        if a > 0 {
            v = ad_y.apply(&v);
        }
        let target = w.s - p_ary(a, p).1 as i32;
        let lo = w.base.lowest_degree(&v);
        if lo.is_some_and(|d| d < target) {
            lower_bound = false;
        }
        if a < pk && lo != Some(target) {
            exact_below_pk = false;
        }
        lowest.push((a, lo));
    }
    AdPowerDegrees { lowest, lower_bound, exact_below_pk }
}

/// `δ = g(ad y)(x)` with a witness `b ∈ O` of `b · δ = x`.
#[derive(Clone, Debug)]
pub struct DeltaWitness {
    pub delta: Vec<Fe>,
    pub lowest_degree: Option<i32>,
    pub expected_degree: i32,
    pub b: Option<Vec<Fe>>,
}

impl DeltaWitness {
    pub fn holds(&self) -> bool {
        self.lowest_degree == Some(self.expected_degree) && self.b.is_some()
    }
}

fn module_span(w: &WittAlgebra, delta: &[Fe]) -> Vec<Vec<Fe>> {
    (0..w.o.dim()).map(|i| w.module_action(&w.o.basis_vec(i), delta)).collect()
}

pub fn delta_element(w: &WittAlgebra, dd: &DependenceData, x: &[Fe]) -> Result<DeltaWitness, PStructError> {
    let f = w.field();
    if is_zero_vec(x) || w.base.degree_support(x).iter().any(|&d| d != w.s) {
        return Err(PStructError::Precondition("x must be a nonzero element of the top component".into()));
    }
    let ad_y = w.base.ad(&dd.powers.y);
    let mut delta = w.base.zero_vec();
    let mut v = x.to_vec();
    for (e, &c) in dd.g.coeffs().iter().enumerate() {
        if e > 0 {
            v = ad_y.apply(&v);
        }
        axpy(f, &mut delta, c, &v);
    }
    let cols = module_span(w, &delta);
    let b = Matrix::from_cols(f, w.dim(), &cols).solve(x).expect("shapes agree");
    Ok(DeltaWitness {
        lowest_degree: w.base.lowest_degree(&delta),
        expected_degree: w.s - (dd.k as i32) * (f.p() as i32 - 1),
        delta,
        b,
    })
}

/// `k = m`: `[y, δ] = 0` and `F<x, y> ⊆ B δ + F y`.
#[derive(Clone, Debug)]
pub struct KernelCase {
    pub y_commutes_with_delta: bool,
    pub x_in_b_delta: bool,
    pub closure_inside: bool,
}

/// `k < m`: `[x, H] = 0` and `F<x, y> = H + F y`, `H = F[ad y] x`.
#[derive(Clone, Debug)]
pub struct ModuleCase {
    pub h_dim: usize,
    pub x_centralizes_h: bool,
    pub closure_equals: bool,
}

#[derive(Clone, Debug)]
pub enum Branch {
    Kernel(KernelCase),
    Module(ModuleCase),
}

#[derive(Clone, Debug)]
pub struct StructureCheck {
    pub k: usize,
    pub m: usize,
    pub closure_dim: usize,
    pub derived_dim: usize,
    pub degrees: AdPowerDegrees,
    pub delta: DeltaWitness,
    pub branch: Branch,
    /// `p_min_poly(ad y)` has p-degree at most `m`.
    pub premet_bound: bool,
}

impl StructureCheck {
    pub fn pass(&self) -> bool {
        let branch = match &self.branch {
            Branch::Kernel(c) => self.k == self.m && c.y_commutes_with_delta && c.x_in_b_delta && c.closure_inside,
            Branch::Module(c) => self.k < self.m && c.x_centralizes_h && c.closure_equals,
        };
        branch && self.degrees.lower_bound && self.degrees.exact_below_pk && self.delta.holds() && self.premet_bound
    }
}

/// Runs the degree claims, the `δ` witness, and the branch matching `k`.
pub fn structure_check(w: &WittAlgebra, pm: &PMap, x: &[Fe], y: &[Fe]) -> Result<StructureCheck, PStructError> {
    let f = w.field();
    let dd = dependence_data(w, pm, y)?;
    let degrees = ad_power_degrees(w, &dd, x);
    let delta = delta_element(w, &dd, x)?;
    let closure = generated_subalgebra(&w.base, x, y);
    let derived = crate::liealg::derived_algebra(&w.base, &closure.basis);
    let m = w.m();
    let branch = if dd.k == m {
        let mut vs = module_span(w, &delta.delta);
        vs.push(y.to_vec());
        let envelope = SubalgebraBasis::from_vectors(f, w.dim(), &vs);
        Branch::Kernel(KernelCase {
            y_commutes_with_delta: is_zero_vec(&w.base.bracket(y, &delta.delta)),
            x_in_b_delta: delta.b.is_some(),
            closure_inside: envelope.contains_subspace(&closure.basis),
        })
    } else {
        let ad_y = w.base.ad(y);
        let mut ech = crate::linalg::Echelon::new(f, w.dim());
        let mut v = x.to_vec();
        while ech.insert(&v) {
            v = ad_y.apply(&v);
        }
        let h = SubalgebraBasis::from_echelon(ech);
        let centralizes = h.rows().iter().all(|r| is_zero_vec(&w.base.bracket(x, r)));
        let hy = h.sum(&SubalgebraBasis::from_vectors(f, w.dim(), &[y.to_vec()]));
        Branch::Module(ModuleCase { h_dim: h.dim(), x_centralizes_h: centralizes, closure_equals: hy == closure.basis })
    };
    let premet_bound = p_min_poly(&w.base.ad_matrix(y)).p_degree().is_some_and(|d| d <= m);
    Ok(StructureCheck {
        k: dd.k,
        m,
        closure_dim: closure.dim(),
        derived_dim: derived.dim(),
        degrees,
        delta,
        branch,
        premet_bound,
    })
}
