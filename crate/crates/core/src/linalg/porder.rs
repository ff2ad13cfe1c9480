//! Minimal polynomials, minimal p-polynomials and the p-order of an endomorphism.

use serde::Serialize;

use super::echelon::{Echelon, TaggedEchelon};
use super::{LinalgError, Matrix};
use crate::field::{find_roots, Fe, Field, Poly, DEFAULT_ENUMERATION_BOUND};

/// `sum_j a_j t^{p^j}`, stored as `(a_0, ..., a_n)` with `a_n != 0` unless zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Serialize for PPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c: Vec<Vec<u32>> = self.coeffs.iter().map(|&a| self.field.coeffs(a)).collect();
        c.serialize(s)
    }
}

impl PPolynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> PPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PPolynomial { field: field.clone(), coeffs }
    }

    /// The p-polynomial `t`.
    pub fn t(field: &Field) -> PPolynomial {
        PPolynomial::new(field, vec![Fe::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// `n` such that the degree is `p^n`.
    pub fn p_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn degree(&self) -> Option<u64> {
        self.p_degree().map(|n| (self.field.p() as u64).pow(n as u32))
    }

    pub fn monic(&self) -> PPolynomial {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = self.field.inv(l).unwrap();
                PPolynomial::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, inv)).collect())
            }
        }
    }

    /// `self(t^{p^k})`
    pub fn compose_frobenius(&self, k: usize) -> PPolynomial {
        let mut c = vec![Fe::ZERO; k];
        c.extend_from_slice(&self.coeffs);
        PPolynomial::new(&self.field, c)
    }

    /// `self(t)^{p^k}`: coefficients raised to `p^k`, exponents shifted by `k`.
    pub fn pow_p(&self, k: usize) -> PPolynomial {
        let f = &self.field;
        let mut c = vec![Fe::ZERO; k];
        c.extend(self.coeffs.iter().map(|&a| (0..k).fold(a, |x, _| f.frobenius(x))));
        PPolynomial::new(f, c)
    }

    /// Coefficients replaced by their `p^k`-th roots.
    pub fn frobenius_inv_coeffs(&self, k: usize) -> PPolynomial {
        let f = &self.field;
        PPolynomial::new(f, self.coeffs.iter().map(|&a| (0..k).fold(a, |x, _| f.frobenius_inv(x))).collect())
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        let mut pw = x;
        for &a in &self.coeffs {
            acc = f.mul_add(acc, a, pw);
            pw = f.frobenius(pw);
        }
        acc
    }

    /// `sum_j a_j u^{p^j}`
    pub fn eval_matrix(&self, u: &Matrix) -> Matrix {
        let f = &self.field;
        let n = u.rows();
        let p = f.p() as u64;
        let mut acc = Matrix::zeros(f, n, n);
        let mut pw = u.clone();
        for (j, &a) in self.coeffs.iter().enumerate() {
            acc = acc.add(&pw.scale(a));
            if j + 1 < self.coeffs.len() {
                pw = pw.pow(p);
            }
        }
        acc
    }

    /// Dense expansion; only sensible for small `p^n`.
    pub fn to_poly(&self) -> Poly {
        let f = &self.field;
        let Some(deg) = self.degree() else { return Poly::zero(f) };
        assert!(deg <= 1 << 20, "p-polynomial too large to expand");
        let mut c = vec![Fe::ZERO; deg as usize + 1];
        let mut e = 1usize;
        for &a in &self.coeffs {
            c[e] = f.add(c[e], a);
            e *= f.p() as usize;
        }
        Poly::new(f, c)
    }
}

fn unit(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = Fe::ONE;
    v
}

/// Monic minimal polynomial, as the lcm of local (Krylov) minimal polynomials.
pub fn min_poly(u: &Matrix) -> Poly {
    assert!(u.is_square(), "min_poly needs a square matrix");
    let f = u.field();
    let n = u.rows();
    let mut span = Echelon::new(f, n);
    let mut result = Poly::one(f);
    for i in 0..n {
        if span.is_full() {
            break;
        }
        let e = unit(n, i);
        if span.contains(&e) {
            continue;
        }
        let mut chain = TaggedEchelon::new(f);
        let mut v = e;
        let local = loop {
            span.insert(&v);
            if let Some(rel) = chain.push(&v) {
                break Poly::new(f, rel);
            }
            v = u.mul_vec(&v);
        };
        result = result.lcm(&local);
    }
    result
}

pub fn is_semisimple(u: &Matrix) -> bool {
    min_poly(u).is_squarefree()
}

/// First linear dependence among `u, u^p, u^{p^2}, ...` in matrix space.
pub fn p_min_poly_literal(u: &Matrix) -> PPolynomial {
    assert!(u.is_square());
    let f = u.field();
    let p = f.p() as u64;
    let mut chain = TaggedEchelon::new(f);
    let mut w = u.clone();
    loop {
        if let Some(rel) = chain.push(w.data()) {
            return PPolynomial::new(f, rel);
        }
        w = w.pow(p);
    }
}

/// Minimal p-polynomial via residues `t^{p^j} mod min_poly(u)`; agrees with
/// [`p_min_poly_literal`] since `F(u) = 0` iff the minimal polynomial divides `F`.
pub fn p_min_poly(u: &Matrix) -> PPolynomial {
    assert!(u.is_square());
    let f = u.field();
    let mu = min_poly(u);
    let d = mu.degree().unwrap_or(0);
    if d == 0 {
        return PPolynomial::t(f);
    }
    let p = f.p() as u64;
    let mut chain = TaggedEchelon::new(f);
    let mut r = Poly::t(f).rem(&mu).unwrap();
    loop {
        let mut v: Vec<Fe> = r.coeffs().to_vec();
        v.resize(d, Fe::ZERO);
        if let Some(rel) = chain.push(&v) {
            return PPolynomial::new(f, rel);
        }
        r = r.pow_mod(p, &mu).unwrap();
    }
}

/// Least `k` with `u^{p^k}` semisimple.
pub fn semisimple_exponent(u: &Matrix) -> usize {
    let p = u.field().p() as u64;
    let mut w = u.clone();
    let mut k = 0;
    while !is_semisimple(&w) {
        w = w.pow(p);
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct POrderReport {
    pub order: usize,
    pub p_degree: usize,
    pub semisimple_exponent: usize,
    /// `dim_{F_p}` of the span of the eigenvalues, when they all lie in the working field.
    pub eigen_span: Result<usize, LinalgError>,
}

/// Eigenvalues of `u` if the minimal polynomial splits over the working field.
pub fn split_eigenvalues(u: &Matrix) -> Result<Vec<Fe>, LinalgError> {
    let f = u.field();
    if f.size() as u64 > DEFAULT_ENUMERATION_BOUND {
        return Err(LinalgError::EigenvalueCrossCheckUnavailable("field not enumerable".into()));
    }
    let mu = min_poly(u);
    let roots = find_roots(&mu)?;
    let mut rest = mu.clone();
    for &r in &roots {
        let lin = Poly::new(f, vec![f.neg(r), Fe::ONE]);
        while lin.divides(&rest) {
            rest = rest.divrem(&lin).unwrap().0;
        }
    }
    if rest.degree() == Some(0) {
        Ok(roots)
    } else {
        Err(LinalgError::EigenvalueCrossCheckUnavailable("minimal polynomial does not split".into()))
    }
}

/// `dim_{F_p}` of the additive group generated by the given field elements.
pub fn fp_span_dim(field: &Field, values: &[Fe]) -> usize {
    let prime = Field::prime(field.p()).expect("prime field");
    let vs: Vec<Vec<Fe>> = values.iter().map(|&v| field.coeffs(v).into_iter().map(Fe).collect()).collect();
    super::rank_of(&prime, &vs)
}

/// All elements of the `F_p`-span of `values`.
pub fn fp_span_elements(field: &Field, values: &[Fe]) -> Vec<Fe> {
    let mut elems = vec![Fe::ZERO];
    for &v in values {
        if elems.contains(&v) {
            continue;
        }
        let mut next = Vec::with_capacity(elems.len() * field.p() as usize);
        for c in 0..field.p() {
            let cv = field.mul(Fe(c), v);
            next.extend(elems.iter().map(|&e| field.add(e, cv)));
        }
        elems = next;
    }
    elems.sort();
    elems
}

pub fn p_order_report(u: &Matrix) -> POrderReport {
    let pdeg = p_min_poly(u).p_degree().expect("nonzero");
    let ss = semisimple_exponent(u);
    let order = pdeg.checked_sub(ss).expect("p-degree at least the semisimple exponent");
    let eigen_span = split_eigenvalues(u).map(|ev| fp_span_dim(u.field(), &ev));
    POrderReport { order, p_degree: pdeg, semisimple_exponent: ss, eigen_span }
}

/// `ord(u) = dim_{F_p} Lambda(u)`, from `deg p_min_poly(u) = p^{ord(u) + k}`.
pub fn p_order(u: &Matrix) -> usize {
    p_order_report(u).order
}
