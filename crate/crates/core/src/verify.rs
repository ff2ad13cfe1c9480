//! Assertion suites: structural axioms of every construction, and the lemma
//! checks on Witt algebras, divided powers and p-orders.

use rand::Rng;
use thiserror::Error;

use crate::cartan_w::{
    iota_embed, product_lemma_o, product_lemma_w, top_and_min_structures, torus_weights, torus_weights_formula,
    CartanError, DividedPowerAlgebra, WittAlgebra,
};
use crate::descriptor::{Built, Descriptor, DescriptorError};
use crate::field::{Fe, Field, FieldError, Poly};
use crate::gen::{GenError, ZassenhausSearcher};
use crate::linalg::{
    fp_span_elements, is_semisimple, p_min_poly, p_order, semisimple_exponent, split_eigenvalues, Matrix,
};
use crate::liealg::validate;
use crate::pstruct::{ord_compare, structure_check, FiltrationView, PMap, PStructError};
use crate::report::Report;
use crate::rng::{random_element, random_nonzero_element, random_nonzero_vector, random_vector, stream_rng};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown lemma {0:?}; known: {1}")]
    UnknownLemma(String, String),
    #[error("lemma {0} does not apply to {1}")]
    NotApplicable(&'static str, String),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    PStruct(#[from] PStructError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    PaperLemmas,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "paper-lemmas" => Ok(Suite::PaperLemmas),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {:?}", s)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scope {
    pub algebra: Option<Descriptor>,
    pub p: u32,
    pub ext: u32,
    pub lemma: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub cap: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope { algebra: None, p: 5, ext: 1, lemma: None, samples: 50, seed: 0, cap: crate::cartan_w::DEFAULT_CAP }
    }
}

/// `(id, what it checks)`.
pub const LEMMAS: &[(&str, &str)] = &[
    ("torus-weights", "weights of the standard torus on W_{-1}, W_0, W_s; Gamma_0 disjoint from Gamma_{-1} and Gamma_s"),
    ("ord-filtration", "ord(h) = ord(gr h) for random h in the degree-zero filtration piece"),
    ("ord-filtration-remark", "h = e_{-1} + e_0 in W(1,1): ord(h) = 1, ord(gr h) = 0"),
    ("p-order", "ord(u^p) = ord(u), p_min_poly(u) = f_u^{p^k}, f_u = prod over Lambda(u) when split"),
    ("divided-powers", "O(m,n) commutative, associative, f^p = f(0)^p, product of (p-1)-th powers"),
    ("degree-minus-one-product", "D_1^{p-1}...D_k^{p-1} x^(tau) vanishes iff the D_i are dependent"),
    ("descent", "L_i = [L_{-1}, L_{i+1}] for -1 <= i < s"),
    ("top-structure", "top component equals J_0 W"),
    ("simplicity", "ideal generated by a random nonzero element is everything"),
    ("embedding", "iota: W(m,n) -> W(|n|,1) injective, bracket-preserving, top to top"),
    ("ad-power-degrees", "degree claims, delta witness and both k-branches for x in W_s"),
    ("zassenhaus-partner", "det M_alpha degree and leading term; certified partner"),
];

fn known_lemmas() -> String {
    LEMMAS.iter().map(|(id, _)| *id).collect::<Vec<_>>().join(", ")
}

/// Algebras of the default axiom sweep, with a per-entry dimension cap.
pub fn default_axiom_targets() -> Vec<(&'static str, u32, usize)> {
    let big = 375;
    let mut out: Vec<(&str, u32, usize)> = [
        "A1", "A2", "B2", "C3", "D4", "G2", "sl:4", "sl:5", "psl:5", "gl:3", "pgl:3", "W:1:1", "W:1:2", "W:2:1,1",
        "W:2:1,2", "Zass:1", "Zass:2",
    ]
    .iter()
    .map(|&s| (s, 5, 250))
    .collect();
    out.push(("W:3:1,1,1", 5, big));
    out.extend(["A1", "A2", "W:1:1", "W:2:1,1"].iter().map(|&s| (s, 7, 250)));
    out
}

pub fn run_suite(suite: Suite, scope: &Scope) -> Result<Report, VerifyError> {
    let field = Field::new(scope.p, scope.ext)?;
    let name = scope.algebra.as_ref().map_or("default".to_string(), |d| d.to_string());
    let label = match suite {
        Suite::Axioms => "verify:axioms",
        Suite::PaperLemmas => "verify:paper-lemmas",
        Suite::All => "verify:all",
    };
    let mut report = Report::new(name, Some(field.spec().clone()), label);
    report.param("samples", scope.samples);
    report.param("seed", scope.seed);
    report.param("cap", scope.cap);
    if let Some(l) = &scope.lemma {
        report.param("lemma", l);
    }
    if matches!(suite, Suite::Axioms | Suite::All) {
        match &scope.algebra {
            Some(d) => axioms(d, &field, scope.cap, &mut report)?,
            None => {
                for (s, p, cap) in default_axiom_targets() {
                    let d: Descriptor = s.parse()?;
                    axioms(&d, &Field::prime(p)?, cap, &mut report)?;
                }
            }
        }
    }
    if matches!(suite, Suite::PaperLemmas | Suite::All) {
        let ids: Vec<&str> = match &scope.lemma {
            Some(id) => vec![id.as_str()],
            None => LEMMAS.iter().map(|(id, _)| *id).collect(),
        };
        for id in ids {
            run_lemma(id, scope, &mut report)?;
        }
    }
    Ok(report)
}

/// Antisymmetry, Jacobi, grading (Lie algebras) or the commutative algebra laws (`O`).
pub fn axioms(d: &Descriptor, field: &Field, cap: usize, report: &mut Report) -> Result<(), VerifyError> {
    let built = d.build(field, cap)?;
    let name = format!("axioms:{}@{}", d, field);
    match &built {
        Built::DividedPower(o) => {
            let (ok, detail) = divided_power_laws(o);
            report.assert(name, ok, detail);
        }
        _ => {
            let v = validate(built.lie().expect("Lie algebra"));
            report.assert(name, v.pass(), format!("dim {}; {}", built.dim(), v.failures().join("; ")));
        }
    }
    Ok(())
}

fn divided_power_laws(o: &DividedPowerAlgebra) -> (bool, String) {
    let n = o.dim();
    let e = |i: usize| o.basis_vec(i);
    let mut bad = vec![];
    for i in 0..n {
        for j in 0..n {
            if o.mul(&e(i), &e(j)) != o.mul(&e(j), &e(i)) {
                bad.push(format!("commutativity {} {}", o.label(i), o.label(j)));
            }
            let eij = o.mul(&e(i), &e(j));
            for k in 0..n {
                if o.mul(&eij, &e(k)) != o.mul(&e(i), &o.mul(&e(j), &e(k))) {
                    bad.push(format!("associativity {} {} {}", o.label(i), o.label(j), o.label(k)));
                }
            }
        }
    }
    if o.mul(&o.one(), &e(n - 1)) != e(n - 1) {
        bad.push("unit".into());
    }
    bad.truncate(5);
    (bad.is_empty(), format!("dim {}; {}", n, bad.join("; ")))
}

fn witt_targets(scope: &Scope, defaults: &[&str]) -> Result<Vec<WittAlgebra>, VerifyError> {
    let field = Field::new(scope.p, scope.ext)?;
    let ds: Vec<Descriptor> = match &scope.algebra {
        Some(d) => vec![d.clone()],
        None => defaults.iter().map(|s| s.parse()).collect::<Result<_, _>>()?,
    };
    ds.iter()
        .map(|d| match d.build(&field, scope.cap)? {
            Built::Witt(w) => Ok(w),
            _ => Err(VerifyError::NotApplicable("witt", d.to_string())),
        })
        .collect()
}

pub fn run_lemma(id: &str, scope: &Scope, report: &mut Report) -> Result<(), VerifyError> {
    let mut rng = stream_rng(scope.seed, 0);
    match id {
        "torus-weights" => {
            for w in witt_targets(scope, &["W:2:1,1"])? {
                let g0 = torus_weights(&w, 0)?;
                let gm = torus_weights(&w, -1)?;
                let gs = torus_weights(&w, w.s)?;
                let formula = [-1, 0, w.s].iter().all(|&k| torus_weights_formula(&w, k) == torus_weights(&w, k).ok());
                let disjoint = g0.iter().all(|a| !gm.contains(a) && !gs.contains(a));
                report.assert(format!("torus-weights:formula:{}", w.base.name()), formula, format!("{:?} {:?} {:?}", gm, g0, gs));
                report.assert(format!("torus-weights:disjoint:{}", w.base.name()), disjoint, format!("|Gamma_0| = {}", g0.len()));
            }
        }
        "ord-filtration" => {
            for w in witt_targets(scope, &["W:1:1", "W:2:1,1"])? {
                let view = FiltrationView::new(&w.base)?;
                let nonneg: Vec<usize> = (0..w.dim()).filter(|&u| w.base.degree_of(u).unwrap() >= 0).collect();
                let mut bad = 0;
                for _ in 0..scope.samples {
                    let mut h = w.base.zero_vec();
                    for &u in &nonneg {
                        h[u] = random_element(w.field(), &mut rng);
                    }
                    if h.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    if !ord_compare(&view, &h)?.equal {
                        bad += 1;
                    }
                }
                report.assert(format!("ord-filtration:{}", w.base.name()), bad == 0, format!("{} violations in {}", bad, scope.samples));
            }
        }
        "ord-filtration-remark" => {
            let f = Field::prime(scope.p)?;
            let w = crate::cartan_w::build_witt(1, &[1], &f, scope.cap)?;
            let view = FiltrationView::new(&w.base)?;
            let mut h = w.base.basis_vec(0);
            h[1] = Fe::ONE;
            let (ok, detail) = match ord_compare(&view, &h) {
                Err(PStructError::ElementBelowFiltrationZero(c)) => {
                    ((c.ord_h, c.ord_gr, c.equal) == (1, 0, false), format!("ord(h) = {}, ord(gr h) = {}", c.ord_h, c.ord_gr))
                }
                other => (false, format!("{:?}", other)),
            };
            report.assert("ord-filtration-remark", ok, detail);
        }
        "p-order" => {
            for k in [scope.ext, 2 * scope.ext] {
                let f = Field::new(scope.p, k)?;
                let (bad, split) = p_order_suite(&f, scope.samples, &mut rng);
                report.assert(format!("p-order@{}", f), bad.is_empty(), format!("{} split cases; {}", split, bad.join("; ")));
            }
        }
        "divided-powers" => {
            let f = Field::new(scope.p, scope.ext)?;
            let ds: Vec<Descriptor> = match &scope.algebra {
                Some(d @ Descriptor::DividedPower { .. }) => vec![d.clone()],
                _ => vec!["O:1:2".parse()?, "O:2:1,1".parse()?],
            };
            for d in ds {
                let Built::DividedPower(o) = d.build(&f, scope.cap)? else { unreachable!() };
                let (laws, detail) = divided_power_laws(&o);
                report.assert(format!("divided-powers:laws:{}", d), laws, detail);
                let p = f.p();
                let mut bad = 0;
                for _ in 0..scope.samples {
                    let g = random_vector(&f, o.dim(), &mut rng);
                    if o.pow(&g, p) != scale_one(&f, &o, f.pow(g[0], p as u64)) {
                        bad += 1;
                    }
                }
                report.assert(format!("divided-powers:p-th-powers:{}", d), bad == 0, format!("{} violations", bad));
                if o.n().iter().all(|&n| n == 1) {
                    let deg1: Vec<usize> = (0..o.dim()).filter(|&i| o.degree(i) == 1).collect();
                    let mut bad = 0;
                    for c in 0..scope.samples {
                        let count = 1 + c % o.m();
                        let xis: Vec<Vec<Fe>> = (0..count)
                            .map(|t| {
                                let mut v = o.basis_vec(0);
                                v[0] = Fe::ZERO;
                                for &i in &deg1 {
                                    v[i] = if c % 3 == 0 && t > 0 { Fe::ZERO } else { random_element(&f, &mut rng) };
                                }
                                v
                            })
                            .collect();
                        if !product_lemma_o(&o, &xis)?.agrees() {
                            bad += 1;
                        }
                    }
                    report.assert(format!("divided-powers:product:{}", d), bad == 0, format!("{} violations", bad));
                }
            }
        }
        "degree-minus-one-product" => {
            for w in witt_targets(scope, &["W:2:1,1"])? {
                let bottom = w.component(-1);
                let mut bad = 0;
                for c in 0..scope.samples {
                    let count = 1 + c % w.m();
                    let ds: Vec<Vec<Fe>> = (0..count)
                        .map(|t| {
                            let mut v = w.base.zero_vec();
                            if !(c % 3 == 0 && t > 0) {
                                for &u in &bottom {
                                    v[u] = random_element(w.field(), &mut rng);
                                }
                            }
                            v
                        })
                        .collect();
                    if !product_lemma_w(&w, &ds)?.agrees() {
                        bad += 1;
                    }
                }
                report.assert(format!("degree-minus-one-product:{}", w.base.name()), bad == 0, format!("{} violations", bad));
            }
        }
        "descent" => {
            for w in witt_targets(scope, &["W:1:2", "W:2:1,1"])? {
                report.assert(format!("descent:{}", w.base.name()), w.descends_from_above(), "");
            }
        }
        "top-structure" => {
            for w in witt_targets(scope, &["W:2:1,1", "W:2:1,2"])? {
                let t = top_and_min_structures(&w);
                report.assert(format!("top-structure:{}", w.base.name()), t.top_equals_j0_w(), format!("dim top {}", t.top.dim()));
            }
        }
        "simplicity" => {
            for w in witt_targets(scope, &["W:1:1", "W:2:1,1", "Zass:2"])? {
                let ok = (0..3).all(|_| w.spot_check_simple(&mut rng));
                report.assert(format!("simplicity:{}", w.base.name()), ok, "");
            }
        }
        "embedding" => {
            for w in witt_targets(scope, &["W:1:2"])? {
                let e = iota_embed(&w, scope.cap.max(375))?;
                report.assert(
                    format!("embedding:{}", w.base.name()),
                    e.report.pass(),
                    serde_json::to_string(&e.report).expect("serializable"),
                );
            }
        }
        "ad-power-degrees" => {
            for w in witt_targets(scope, &["W:1:1", "W:2:1,1"])? {
                if !w.is_restricted_type() {
                    return Err(VerifyError::NotApplicable("ad-power-degrees", w.base.name().to_string()));
                }
                let (bad, kernel, module) = structure_suite(&w, scope.samples, &mut rng)?;
                report.assert(
                    format!("ad-power-degrees:{}", w.base.name()),
                    bad == 0,
                    format!("{} violations; {} k = m cases, {} k < m cases", bad, kernel, module),
                );
            }
        }
        "zassenhaus-partner" => {
            for w in witt_targets(scope, &["Zass:1", "Zass:2"])? {
                let zs = ZassenhausSearcher::new(&w, 4)?;
                let mut bad = vec![];
                for _ in 0..scope.samples {
                    let x = random_nonzero_vector(w.field(), w.dim(), &mut rng);
                    match zs.partner(&x) {
                        Ok(wit) if wit.claims_hold() => {}
                        Ok(wit) => bad.push(format!("degree {:?} vs {:?}", wit.det_degree, wit.predicted_degree)),
                        Err(e) => bad.push(e.to_string()),
                    }
                }
                let top = zs.partner(&w.base.basis_vec(w.dim() - 1))?;
                let top_ok = top.certificate.y == w.base.basis_vec(0) && top.certificate.generates(&w.base);
                report.assert(format!("zassenhaus-partner:{}", w.base.name()), bad.is_empty(), bad.join("; "));
                report.assert(format!("zassenhaus-partner:top:{}", w.base.name()), top_ok, "x = e_s, y = e_-1");
            }
        }
        other => return Err(VerifyError::UnknownLemma(other.to_string(), known_lemmas())),
    }
    Ok(())
}

fn scale_one(f: &Field, o: &DividedPowerAlgebra, c: Fe) -> Vec<Fe> {
    o.one().iter().map(|&a| f.mul(a, c)).collect()
}

fn random_matrix(f: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let vals: Vec<Fe> = (0..n * n).map(|_| random_element(f, rng)).collect();
    Matrix::from_fn(f, n, n, |i, j| vals[i * n + j])
}

/// A random `n × n` matrix, half of the time conjugate to Jordan blocks so
/// that nontrivial semisimple exponents occur.
pub fn random_test_matrix(f: &Field, rng: &mut impl Rng) -> Matrix {
    let n = rng.gen_range(1..=6);
    if rng.gen_bool(0.5) {
        return random_matrix(f, n, rng);
    }
    let mut d = Matrix::zeros(f, n, n);
    let mut i = 0;
    while i < n {
        let size = rng.gen_range(1..=(n - i));
        let lambda = if rng.gen_bool(0.3) { Fe::ZERO } else { random_element(f, rng) };
        for t in 0..size {
            d.set(i + t, i + t, lambda);
            if t + 1 < size {
                d.set(i + t, i + t + 1, Fe::ONE);
            }
        }
        i += size;
    }
    loop {
        let pm = random_matrix(f, n, rng);
        if let Ok(Some(inv)) = pm.inverse() {
            return pm.mul(&d).mul(&inv);
        }
    }
}

/// Violations of the p-order identities over `samples` matrices, and the
/// number of split semisimple cases checked against `Π (t - λ)`.
pub fn p_order_suite(f: &Field, samples: usize, rng: &mut impl Rng) -> (Vec<String>, usize) {
    let p = f.p() as u64;
    let mut bad = vec![];
    let mut split = 0;
    for s in 0..samples {
        let u = random_test_matrix(f, rng);
        let ord = p_order(&u);
        if p_order(&u.pow(p)) != ord {
            bad.push(format!("#{}: ord(u^p) != ord(u)", s));
        }
        let k = semisimple_exponent(&u);
        let ss = u.pow(p.pow(k as u32));
        let g = p_min_poly(&ss);
        let f_u = g.frobenius_inv_coeffs(k);
        if f_u.pow_p(k) != p_min_poly(&u) {
            bad.push(format!("#{}: p_min_poly(u) != f_u^(p^{})", s, k));
        }
        if f_u.p_degree() != Some(ord) {
            bad.push(format!("#{}: deg f_u != p^ord", s));
        }
        if is_semisimple(&u) {
            if let Ok(ev) = split_eigenvalues(&u) {
                let lambda = fp_span_elements(f, &ev);
                if lambda.len() <= 1 << 12 {
                    split += 1;
                    if p_min_poly(&u).to_poly() != Poly::from_roots(f, &lambda) {
                        bad.push(format!("#{}: f_u != prod (t - lambda)", s));
                    }
                }
            }
        }
    }
    bad.truncate(5);
    (bad, split)
}

/// Random `(x ∈ W_s, y)` pairs through the restricted structure check.
/// Returns `(violations, kernel-branch count, module-branch count)`.
pub fn structure_suite(w: &WittAlgebra, samples: usize, rng: &mut impl Rng) -> Result<(usize, usize, usize), VerifyError> {
    let pm = PMap::new(&w.base)?;
    let top = w.component(w.s);
    let f = w.field();
    let (mut bad, mut kernel, mut module) = (0, 0, 0);
    for _ in 0..samples {
        let mut x = w.base.zero_vec();
        for &u in &top {
            x[u] = random_element(f, rng);
        }
        if x.iter().all(|c| c.is_zero()) {
            x[top[0]] = random_nonzero_element(f, rng);
        }
        let y = random_nonzero_vector(f, w.dim(), rng);
        let c = structure_check(w, &pm, &x, &y)?;
        match c.branch {
            crate::pstruct::Branch::Kernel(_) => kernel += 1,
            crate::pstruct::Branch::Module(_) => module += 1,
        }
        if !c.pass() {
            bad += 1;
        }
    }
    Ok((bad, kernel, module))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_lemma_runs_and_passes() {
        let scope = Scope { samples: 10, ..Scope::default() };
        let r = run_suite(Suite::PaperLemmas, &scope).unwrap();
        let failed: Vec<_> = r.failures();
        assert!(failed.is_empty(), "{:?}", failed);
        assert!(r.assertions.len() >= LEMMAS.len());
    }

    #[test]
    fn scoped_axioms_and_unknown_lemma() {
        let scope = Scope { algebra: Some("W:2:1,1".parse().unwrap()), ..Scope::default() };
        let r = run_suite(Suite::Axioms, &scope).unwrap();
        assert_eq!(r.assertions.len(), 1);
        assert!(r.all_pass());
        let scope = Scope { algebra: Some("O:2:1,1".parse().unwrap()), ..Scope::default() };
        assert!(run_suite(Suite::Axioms, &scope).unwrap().all_pass());
        let scope = Scope { lemma: Some("nope".into()), ..Scope::default() };
        assert!(matches!(run_suite(Suite::PaperLemmas, &scope), Err(VerifyError::UnknownLemma(..))));
    }

    #[test]
    fn remark_lemma_alone() {
        let scope = Scope { lemma: Some("ord-filtration-remark".into()), ..Scope::default() };
        let r = run_suite(Suite::PaperLemmas, &scope).unwrap();
        assert_eq!(r.assertions.len(), 1);
        assert!(r.all_pass(), "{:?}", r.assertions);
        assert!(r.assertions[0].detail.contains("ord(h) = 1, ord(gr h) = 0"));
    }
}
