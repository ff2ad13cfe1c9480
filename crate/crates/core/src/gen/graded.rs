use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::cartan_w::{torus_weights, WittAlgebra};
use crate::classical::{central_extension_partner, ClassicalAlgebra, ClassicalKind};
use crate::field::{Fe, Field};
use crate::linalg::{add_vec, axpy, rank_of, Echelon};
use crate::liealg::{generated_subalgebra, LieAlgebra};
use crate::rng::random_element;

use super::{GenError, GenerationCertificate, Method};

/// Intermediate data of the graded recipe, for logging and inspection.
#[derive(Clone, Debug, Serialize)]
pub struct GradedRecipeLog {
    pub lambdas: Vec<Vec<u32>>,
    /// `dim <y0, x0>` inside `L_0`.
    pub l0_closure_dim: usize,
    pub x_minus: String,
    pub x_top: String,
    pub gamma0: Vec<Vec<u32>>,
    pub alpha_minus: Vec<u32>,
    pub alpha_top: Vec<u32>,
    pub weights_disjoint: bool,
    pub separating_t: Vec<Vec<u32>>,
    pub vandermonde_ok: bool,
    pub toral_dim: usize,
    pub toral_semilinear: bool,
    pub closure_dim: usize,
}

impl GradedRecipeLog {
    pub fn pass(&self, dim: usize) -> bool {
        self.weights_disjoint && self.vandermonde_ok && self.toral_dim == self.lambdas.len() && self.toral_semilinear
            && self.closure_dim == dim
    }
}

const DRAWS: usize = 1000;

fn step(step: &'static str, detail: impl Into<String>) -> GenError {
    GenError::RecipeStepFailed { step, detail: detail.into() }
}

/// `W(m, n)` over `F_{p^k}`, `k ≥ m`: `y = Σ λ_i x_i D_i` with `λ` independent
/// over `F_p`, `x = D_1 + x_0 + x^(τ) D_j` with `L_0 = <y, x_0>`.
pub fn graded_recipe_pair(
    w: &WittAlgebra,
    rng: &mut impl Rng,
) -> Result<(GenerationCertificate, GradedRecipeLog), GenError> {
    let f = w.field();
    let m = w.m();
    let p = f.p();
    if (f.k() as usize) < m {
        return Err(GenError::FieldTooSmall(format!("{} cannot hold {} independent scalars over F_{}", f, m, p)));
    }
    let lambdas = (0..DRAWS)
        .map(|_| (0..m).map(|_| random_element(f, rng)).collect::<Vec<Fe>>())
        .find(|ls| {
            let rows: Vec<Vec<Fe>> = ls.iter().map(|&l| f.coeffs(l).into_iter().map(Fe).collect()).collect();
            rank_of(&Field::prime(p).expect("prime field"), &rows) == m
        })
        .ok_or_else(|| step("lambdas", "no F_p-independent draw"))?;
    let mut y0 = w.base.zero_vec();
    for (h, &l) in w.torus.iter().zip(&lambdas) {
        axpy(f, &mut y0, l, h);
    }

    let (x0, l0_closure_dim) = zero_component_partner(w, &y0, rng)?;

    let x_minus = w.partial(0);
    let u_minus = w.component(-1)[0];
    let alpha_minus = w.basis_weight(u_minus);
    let top = w.component(w.s);
    let u_top = *top
        .iter()
        .find(|&&u| w.basis_weight(u) != alpha_minus)
        .ok_or_else(|| step("weights", "every top weight equals the weight of D_1"))?;
    let alpha_top = w.basis_weight(u_top);
    let gamma0 = torus_weights(w, 0)?;
    let weights_disjoint = !gamma0.contains(&alpha_minus) && !gamma0.contains(&alpha_top) && alpha_minus != alpha_top;

    let x = add_vec(f, &add_vec(f, &x_minus, &x0), &w.base.basis_vec(u_top));

    let mut phi: Vec<Vec<u32>> = gamma0.clone();
    phi.push(alpha_minus.clone());
    phi.push(alpha_top.clone());
    phi.sort();
    phi.dedup();
    let t = separating_element(f, &phi, rng).ok_or_else(|| step("separate", "no t with distinct values on the weights"))?;
    let vandermonde_ok = krylov_recovers_components(w, &x, &t, &phi);

    let (toral_dim, toral_semilinear) = toral_check(w, &lambdas);

    let cert = GenerationCertificate::certify(&w.base, x, y0, Method::GradedRecipe, None, None);
    let log = GradedRecipeLog {
        lambdas: lambdas.iter().map(|&l| f.coeffs(l)).collect(),
        l0_closure_dim,
        x_minus: w.base.label(u_minus),
        x_top: w.base.label(u_top),
        gamma0,
        alpha_minus,
        alpha_top,
        weights_disjoint,
        separating_t: t.iter().map(|&c| f.coeffs(c)).collect(),
        vandermonde_ok,
        toral_dim,
        toral_semilinear,
        closure_dim: cert.closure_dim,
    };
    if cert.closure_dim != w.dim() {
        return Err(step("closure", format!("closure {} < {}", cert.closure_dim, w.dim())));
    }
    Ok((cert, log))
}

/// `x_0 ∈ L_0 ≅ gl_m` with `<y0, x_0> = L_0`, from the central-extension recipe.
fn zero_component_partner(w: &WittAlgebra, y0: &[Fe], rng: &mut impl Rng) -> Result<(Vec<Fe>, usize), GenError> {
    let f = w.field();
    let m = w.m();
    let comp = w.component(0);
    if m == 1 {
        return Ok((w.base.zero_vec(), 1));
    }
    let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let l0 = LieAlgebra::from_upper(f, comp.len(), format!("gl:{}", m), |a, b| {
        w.base
            .bracket_basis(comp[a], comp[b])
            .iter()
            .map(|&(k, c)| (pos[&(k as usize)], c))
            .collect()
    })
    .with_labels(comp.iter().map(|&u| w.base.label(u)).collect());
    let mut cartan_index = vec![];
    let mut root_index = vec![];
    let mut root_coords = vec![];
    for (local, &u) in comp.iter().enumerate() {
        let (alpha, j) = w.split(u);
        let i = alpha.0.iter().position(|&a| a == 1).expect("degree-one monomial");
        if i == j {
            cartan_index.push(local);
        } else {
            root_index.push(local);
            root_coords.push((0..m).map(|t| (t == i) as i32 - (t == j) as i32).collect());
        }
    }
    let gl = ClassicalAlgebra::from_adapted(l0, ClassicalKind::Gl(m), cartan_index, root_index, root_coords)?;
    let y_local: Vec<Fe> = comp.iter().map(|&u| y0[u]).collect();
    let wit = central_extension_partner(&gl, &y_local, rng)?;
    let d = generated_subalgebra(&gl.base, &y_local, &wit.y).dim();
    if d != gl.dim() {
        return Err(step("x0-partner", format!("<y0, x0> has dimension {} in L_0", d)));
    }
    let mut x0 = w.base.zero_vec();
    for (&u, &c) in comp.iter().zip(&wit.y) {
        x0[u] = c;
    }
    Ok((x0, d))
}

fn weight_value(f: &Field, phi: &[u32], t: &[Fe]) -> Fe {
    f.sum(phi.iter().zip(t).map(|(&a, &c)| f.mul(f.from_int(a as i64), c)))
}

/// `t ∈ T` (torus coordinates) with pairwise distinct values `φ(t)` on `phi`.
fn separating_element(f: &Field, phi: &[Vec<u32>], rng: &mut impl Rng) -> Option<Vec<Fe>> {
    let m = phi.first().map_or(0, |v| v.len());
    (0..DRAWS).map(|_| (0..m).map(|_| random_element(f, rng)).collect::<Vec<Fe>>()).find(|t| {
        let mut vals: Vec<Fe> = phi.iter().map(|a| weight_value(f, a, t)).collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    })
}

/// Every weight component of `x` lies in `span{(ad t)^j x : j < |phi|}`.
fn krylov_recovers_components(w: &WittAlgebra, x: &[Fe], t: &[Fe], phi: &[Vec<u32>]) -> bool {
    let f = w.field();
    let mut tv = w.base.zero_vec();
    for (h, &c) in w.torus.iter().zip(t) {
        axpy(f, &mut tv, c, h);
    }
    let ad = w.base.ad(&tv);
    let mut ech = Echelon::new(f, w.dim());
    let mut cur = x.to_vec();
    for _ in 0..phi.len() {
        ech.insert(&cur);
        cur = ad.apply(&cur);
    }
    let mut parts: BTreeMap<Vec<u32>, Vec<Fe>> = BTreeMap::new();
    for (u, &c) in x.iter().enumerate() {
        if !c.is_zero() {
            parts.entry(w.basis_weight(u)).or_insert_with(|| w.base.zero_vec())[u] = c;
        }
    }
    parts.keys().all(|k| phi.contains(k)) && parts.values().all(|v| ech.contains(v))
}

/// `dim span{Σ λ_i^{p^j} h_i : j < m}` and `ad(Σ λ_i^{p^j} h_i) = (ad y0)^{p^j}`.
fn toral_check(w: &WittAlgebra, lambdas: &[Fe]) -> (usize, bool) {
    let f = w.field();
    let m = w.m();
    let p = f.p() as u64;
    let d0: Vec<Fe> = (0..w.dim())
        .map(|u| {
            let wt = w.basis_weight(u);
            f.sum(lambdas.iter().zip(&wt).map(|(&l, &a)| f.mul(l, f.from_int(a as i64))))
        })
        .collect();
    let mut zs = vec![];
    let mut ok = true;
    for j in 0..m as u32 {
        let e = p.pow(j);
        let lj: Vec<Fe> = lambdas.iter().map(|&l| f.pow(l, e)).collect();
        let mut z = w.base.zero_vec();
        for (h, &c) in w.torus.iter().zip(&lj) {
            axpy(f, &mut z, c, h);
        }
        let ad = w.base.ad(&z);
        for (u, &d) in d0.iter().enumerate() {
            let col = ad.column(u);
            let got = match col {
                [] => Fe::ZERO,
                [(k, c)] if *k as usize == u => *c,
                _ => {
                    ok = false;
                    Fe::ZERO
                }
            };
            ok &= got == f.pow(d, e);
        }
        zs.push(z);
    }
    (rank_of(f, &zs), ok)
}
