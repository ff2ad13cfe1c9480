use crate::cartan_w::WittAlgebra;
use crate::field::{Fe, Field, Poly};
use crate::linalg::{axpy, Matrix};

use super::{pullback, GenError, GenerationCertificate, Ladder, Method};

/// Partners `y_α = e_{-1} + α e_s` for `W(1, n)`, searched over `K0, ..., K0^(max)`.
#[derive(Clone, Debug)]
pub struct ZassenhausSearcher {
    pub w: WittAlgebra,
    rungs: Vec<(u32, WittAlgebra, Vec<Fe>)>,
    /// Smallest extension with at least `s + 3` points, for interpolating `det M_α`.
    interp: (WittAlgebra, Vec<Fe>),
}

#[derive(Clone, Debug)]
pub struct ZassenhausWitness {
    /// Lowest degree present in `x`.
    pub k: i32,
    /// Coefficients of `α ↦ det M_α` over the base field; absent when `x ∈ W_s`.
    pub det_poly: Option<Vec<Fe>>,
    pub det_degree: Option<usize>,
    /// `s + 1` for `k = -1`, else `s - k`.
    pub predicted_degree: Option<usize>,
    /// Leading coefficient equals `±λ_k^{s+1}`.
    pub leading_ok: bool,
    /// Extension degree over the base field of the rung that produced `y`.
    pub extension: u32,
    pub alpha: Option<Fe>,
    pub certificate: GenerationCertificate,
}

impl ZassenhausWitness {
    pub fn claims_hold(&self) -> bool {
        self.det_poly.is_none() || (self.det_degree == self.predicted_degree && self.leading_ok)
    }
}

impl ZassenhausSearcher {
    pub fn new(w: &WittAlgebra, max_ext: u32) -> Result<ZassenhausSearcher, GenError> {
        if w.m() != 1 {
            return Err(GenError::Precondition(format!("{} is not in one variable", w.base.name())));
        }
        let f = w.field();
        let ladder = Ladder::new(f, max_ext.max(1))?;
        let mut rungs = vec![];
        for (j, kf, table) in ladder.rungs {
            let wj = if j == 1 { w.clone() } else { w.retarget(&kf)? };
            rungs.push((j, wj, table));
        }
        let need = w.s as u64 + 3;
        let mut j = 1u32;
        while (f.size() as u64).pow(j) < need {
            j += 1;
        }
        let interp = match rungs.iter().find(|r| r.0 == j) {
            Some((_, wj, t)) => (wj.clone(), t.clone()),
            None => {
                let kf = f.extension(j)?;
                (w.retarget(&kf)?, f.embedding_into(&kf)?)
            }
        };
        Ok(ZassenhausSearcher { w: w.clone(), rungs, interp })
    }

    pub fn max_ext(&self) -> u32 {
        self.rungs.len() as u32
    }

    pub fn rung(&self, j: u32) -> Option<&WittAlgebra> {
        self.rungs.iter().find(|r| r.0 == j).map(|r| &r.1)
    }

    /// `M_α = [y_α, x, ad y_α x, ..., (ad y_α)^s x]`.
    pub fn m_alpha(w: &WittAlgebra, x: &[Fe], alpha: Fe) -> Matrix {
        let f = w.field();
        let n = w.dim();
        let mut y = w.base.basis_vec(0);
        axpy(f, &mut y, alpha, &w.base.basis_vec(n - 1));
        let ad = w.base.ad(&y);
        let mut cols = vec![y, x.to_vec()];
        let mut cur = x.to_vec();
        for _ in 0..w.s {
            cur = ad.apply(&cur);
            cols.push(cur.clone());
        }
        Matrix::from_cols(f, n, &cols)
    }

    fn det(w: &WittAlgebra, x: &[Fe], alpha: Fe) -> Fe {
        Self::m_alpha(w, x, alpha).det().expect("square")
    }

    /// `det M_α` as a polynomial in `α`, by interpolation over the interpolation field.
    pub fn det_poly(&self, x: &[Fe]) -> Result<Poly, GenError> {
        let (wk, table) = &self.interp;
        let kf = wk.field();
        let xe = Ladder::embed(table, x);
        let npts = self.w.s as usize + 2;
        let pts: Vec<Fe> = kf.elements().take(npts + 1).collect();
        let vals: Vec<Fe> = pts.iter().map(|&a| Self::det(wk, &xe, a)).collect();
        let p = interpolate(kf, &pts[..npts], &vals[..npts]);
        if p.eval(pts[npts]) != vals[npts] {
            return Err(GenError::RecipeStepFailed { step: "interpolate", detail: "degree exceeds s + 1".into() });
        }
        let back = pullback(table);
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| back.get(c).copied())
            .collect::<Option<Vec<Fe>>>()
            .ok_or_else(|| GenError::RecipeStepFailed {
                step: "interpolate",
                detail: "coefficients outside the base field".into(),
            })?;
        Ok(Poly::new(self.w.field(), coeffs))
    }

    pub fn partner(&self, x: &[Fe]) -> Result<ZassenhausWitness, GenError> {
        let w = &self.w;
        let f = w.field();
        let k = w
            .base
            .lowest_degree(x)
            .ok_or_else(|| GenError::Precondition("x = 0".into()))?;
        if k == w.s {
            let cert = GenerationCertificate::certify(&w.base, x.to_vec(), w.base.basis_vec(0), Method::Zassenhaus, None, None);
            return self.finish(k, x[(k + 1) as usize], None, 1, None, cert);
        }
        let poly = self.det_poly(x)?;
        if poly.is_zero() {
            return Err(GenError::NoAlphaInSearchedExtensions(format!("det M_alpha vanishes identically over {}", f)));
        }
        for (j, wj, table) in &self.rungs {
            let pj = poly.map(wj.field(), table);
            let xe = Ladder::embed(table, x);
            for alpha in wj.field().elements() {
                if pj.eval(alpha).is_zero() {
                    continue;
                }
                if Self::det(wj, &xe, alpha).is_zero() {
                    return Err(GenError::RecipeStepFailed {
                        step: "evaluate",
                        detail: "interpolated det disagrees with direct det".into(),
                    });
                }
                let n = wj.dim();
                let mut y = wj.base.basis_vec(0);
                axpy(wj.field(), &mut y, alpha, &wj.base.basis_vec(n - 1));
                let cert = GenerationCertificate::certify(&wj.base, xe, y, Method::Zassenhaus, None, None);
                return self.finish(k, x[(k + 1) as usize], Some(poly), *j, Some(alpha), cert);
            }
        }
        Err(GenError::NoAlphaInSearchedExtensions(format!("{} through degree {}", f, self.max_ext())))
    }

    fn finish(
        &self,
        k: i32,
        lambda_k: Fe,
        poly: Option<Poly>,
        extension: u32,
        alpha: Option<Fe>,
        certificate: GenerationCertificate,
    ) -> Result<ZassenhausWitness, GenError> {
        if certificate.closure_dim != self.w.dim() {
            return Err(GenError::RecipeStepFailed {
                step: "certify",
                detail: format!("closure {} < {}", certificate.closure_dim, self.w.dim()),
            });
        }
        let f = self.w.field();
        let s = self.w.s;
        let predicted_degree = poly.as_ref().map(|_| if k == -1 { s as usize + 1 } else { (s - k) as usize });
        let leading_ok = match &poly {
            None => true,
            Some(p) => {
                let lam = f.pow(lambda_k, s as u64 + 1);
                let lead = p.leading();
                lead == lam || lead == f.neg(lam)
            }
        };
        Ok(ZassenhausWitness {
            k,
            det_degree: poly.as_ref().and_then(|p| p.degree()),
            det_poly: poly.map(|p| p.coeffs().to_vec()),
            predicted_degree,
            leading_ok,
            extension,
            alpha,
            certificate,
        })
    }
}

/// Lagrange interpolation through `(pts[i], vals[i])`.
pub fn interpolate(f: &Field, pts: &[Fe], vals: &[Fe]) -> Poly {
    let all = Poly::from_roots(f, pts);
    let mut out = Poly::zero(f);
    for (i, (&a, &v)) in pts.iter().zip(vals).enumerate() {
        if v.is_zero() {
            continue;
        }
        let lin = Poly::from_roots(f, &[a]);
        let (num, _) = all.divrem(&lin).expect("nonzero divisor");
        let denom = num.eval(a);
        debug_assert!(!denom.is_zero(), "repeated point {}", i);
        out = out.add(&num.scale(f.div(v, denom).expect("distinct points")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_w::{build_witt, build_zassenhaus, DEFAULT_CAP};
    use crate::rng::{random_nonzero_vector, stream_rng};

    #[test]
    fn interpolation_round_trip() {
        let f = Field::prime(7).unwrap();
        let p = Poly::new(&f, vec![Fe(3), Fe(0), Fe(5), Fe(1)]);
        let pts: Vec<Fe> = f.elements().take(4).collect();
        let vals: Vec<Fe> = pts.iter().map(|&a| p.eval(a)).collect();
        assert_eq!(interpolate(&f, &pts, &vals), p);
    }

    #[test]
    fn basis_elements_of_zass1() {
        let f = Field::prime(5).unwrap();
        let w = build_zassenhaus(1, &f, DEFAULT_CAP).unwrap();
        let zs = ZassenhausSearcher::new(&w, 4).unwrap();
        for u in 0..w.dim() {
            let wit = zs.partner(&w.base.basis_vec(u)).unwrap();
            assert!(wit.certificate.generates(&w.base), "e_{}", u as i32 - 1);
            assert!(wit.claims_hold(), "e_{}: {:?}", u as i32 - 1, wit.det_degree);
            assert_eq!(wit.extension, 1);
        }
    }

    #[test]
    fn random_elements_of_w12() {
        let f = Field::prime(5).unwrap();
        let w = build_witt(1, &[2], &f, DEFAULT_CAP).unwrap();
        let zs = ZassenhausSearcher::new(&w, 4).unwrap();
        let mut rng = stream_rng(7, 0);
        for _ in 0..5 {
            let x = random_nonzero_vector(&f, w.dim(), &mut rng);
            let wit = zs.partner(&x).unwrap();
            let wj = zs.rung(wit.extension).unwrap();
            assert!(wit.certificate.replay(&wj.base));
            assert!(wit.certificate.generates(&wj.base));
            assert!(wit.claims_hold());
        }
    }
}
