use crate::field::{find_roots, Fe};
use crate::linalg::{min_poly, Matrix};

use super::{LieAlgebra, LieError, SubalgebraBasis};

/// `z(L) = {z : [z, b_j] = 0 for all j}`, cut down one basis vector at a time.
pub fn center(l: &LieAlgebra) -> SubalgebraBasis {
    let f = l.field();
    let n = l.dim();
    let mut kernel: Vec<Vec<Fe>> = (0..n).map(|i| l.basis_vec(i)).collect();
    for j in 0..n {
        if kernel.is_empty() {
            break;
        }
        let images: Vec<Vec<Fe>> = kernel
            .iter()
            .map(|k| {
                let mut out = l.zero_vec();
                for (i, &ki) in k.iter().enumerate() {
                    if ki.is_zero() {
                        continue;
                    }
                    for &(t, c) in l.bracket_basis(i, j) {
                        out[t as usize] = f.mul_add(out[t as usize], ki, c);
                    }
                }
                out
            })
            .collect();
        if images.iter().all(|v| v.iter().all(|x| x.is_zero())) {
            continue;
        }
        let m = Matrix::from_cols(f, n, &images);
        kernel = m
            .kernel()
            .into_iter()
            .map(|c| {
                let mut v = l.zero_vec();
                for (a, &ca) in c.iter().enumerate() {
                    crate::linalg::axpy(f, &mut v, ca, &kernel[a]);
                }
                v
            })
            .collect();
    }
    SubalgebraBasis::from_vectors(f, n, &kernel)
}

/// `L / I` realized on the coordinates outside the pivots of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub ideal: SubalgebraBasis,
    pub complement: Vec<usize>,
}

impl Quotient {
    fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let f = self.algebra.field();
        let mut w = v.to_vec();
        for (row, p) in self.ideal.rows().iter().zip(self.ideal.pivots()) {
            let c = w[p];
            if !c.is_zero() {
                crate::linalg::axpy(f, &mut w, f.neg(c), row);
            }
        }
        w
    }

    /// Image of `v` in the quotient.
    pub fn project(&self, v: &[Fe]) -> Vec<Fe> {
        let w = self.reduce(v);
        self.complement.iter().map(|&c| w[c]).collect()
    }

    /// Canonical preimage supported on the complement coordinates.
    pub fn lift(&self, w: &[Fe]) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.ideal.ambient_dim()];
        for (&c, &x) in self.complement.iter().zip(w) {
            v[c] = x;
        }
        v
    }
}

pub fn quotient(l: &LieAlgebra, ideal: &SubalgebraBasis) -> Result<Quotient, LieError> {
    if !ideal.is_ideal(l) {
        return Err(LieError::NotAnIdeal(format!("{}-dimensional subspace of {}", ideal.dim(), l.name())));
    }
    let pivots = ideal.pivots();
    let complement: Vec<usize> = (0..l.dim()).filter(|i| !pivots.contains(i)).collect();
    let mut q = Quotient { algebra: l.clone(), ideal: ideal.clone(), complement: complement.clone() };
    let f = l.field().clone();
    let m = complement.len();
    let qalg = LieAlgebra::from_upper(&f, m, format!("{}/I", l.name()), |a, b| {
        let br = l.bracket(&l.basis_vec(complement[a]), &l.basis_vec(complement[b]));
        q.project(&br).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    });
    let qalg = match l.labels() {
        Some(lab) => qalg.with_labels(complement.iter().map(|&c| lab[c].clone()).collect()),
        None => qalg,
    };
    let homogeneous = l.grading().is_some()
        && ideal.rows().iter().all(|r| l.degree_support(r).len() <= 1);
    let qalg = match (l.grading(), homogeneous) {
        (Some(g), true) => qalg.with_grading(complement.iter().map(|&c| g[c]).collect()),
        _ => qalg,
    };
    q.algebra = qalg;
    Ok(q)
}

pub fn center_and_quotient(l: &LieAlgebra) -> (SubalgebraBasis, Quotient) {
    let z = center(l);
    let q = quotient(l, &z).expect("the center is an ideal");
    (z, q)
}

/// `A ⊕ B` with the basis of `A` first.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    a.field().check_same(b.field())?;
    let (da, db) = (a.dim(), b.dim());
    let sum = LieAlgebra::from_table(a.field(), da + db, format!("{}+{}", a.name(), b.name()), |i, j| {
        if i < da && j < da {
            a.bracket_basis(i, j).iter().map(|&(k, c)| (k as usize, c)).collect()
        } else if i >= da && j >= da {
            b.bracket_basis(i - da, j - da).iter().map(|&(k, c)| (k as usize + da, c)).collect()
        } else {
            vec![]
        }
    });
    let sum = if let (Some(ga), Some(gb)) = (a.grading(), b.grading()) {
        sum.with_grading(ga.iter().chain(gb).copied().collect())
    } else {
        sum
    };
    let labels: Vec<String> = (0..da)
        .map(|i| format!("{}.1", a.label(i)))
        .chain((0..db).map(|i| format!("{}.2", b.label(i))))
        .collect();
    Ok(sum.with_labels(labels))
}

/// Simultaneous eigenspaces of `ad t`, `t` in the torus, on an invariant subspace.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub torus: Vec<Vec<Fe>>,
    pub weights: Vec<Vec<Fe>>,
    pub spaces: Vec<SubalgebraBasis>,
}

impl WeightDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }
    pub fn space_of(&self, weight: &[Fe]) -> Option<&SubalgebraBasis> {
        self.weights.iter().position(|w| w.as_slice() == weight).map(|i| &self.spaces[i])
    }
    /// Weight of a vector lying in a single weight space.
    pub fn weight_of(&self, v: &[Fe]) -> Option<&[Fe]> {
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        self.spaces.iter().position(|s| s.contains(v)).map(|i| self.weights[i].as_slice())
    }
}

pub fn weight_decomposition(
    l: &LieAlgebra,
    torus: &[Vec<Fe>],
    space: &SubalgebraBasis,
) -> Result<WeightDecomposition, LieError> {
    let f = l.field();
    let n = l.dim();
    let mut pieces: Vec<(Vec<Fe>, SubalgebraBasis)> = vec![(vec![], space.clone())];
    for t in torus {
        let ad_t = l.ad(t);
        let mut next = vec![];
        for (w, sub) in pieces {
            let rows = sub.rows();
            let d = rows.len();
            if d == 0 {
                continue;
            }
            let mut cols = Vec::with_capacity(d);
            for r in rows {
                let img = ad_t.apply(r);
                cols.push(
                    sub.coordinates(&img)
                        .ok_or_else(|| LieError::NotDiagonalizable("subspace is not invariant".into()))?,
                );
            }
            let a = Matrix::from_cols(f, d, &cols);
            let mu = min_poly(&a);
            if !mu.is_squarefree() {
                return Err(LieError::NotDiagonalizable(f.to_string()));
            }
            let roots = find_roots(&mu)?;
            if roots.len() != mu.degree().unwrap_or(0) {
                return Err(LieError::NotDiagonalizable(f.to_string()));
            }
            for lambda in roots {
                let mut shifted = a.clone();
                for i in 0..d {
                    let v = shifted.get(i, i);
                    shifted.set(i, i, f.sub(v, lambda));
                }
                let vecs: Vec<Vec<Fe>> = shifted
                    .kernel()
                    .into_iter()
                    .map(|c| {
                        let mut v = vec![Fe::ZERO; n];
                        for (k, &ck) in c.iter().enumerate() {
                            crate::linalg::axpy(f, &mut v, ck, &rows[k]);
                        }
                        v
                    })
                    .collect();
                let mut wl = w.clone();
                wl.push(lambda);
                next.push((wl, SubalgebraBasis::from_vectors(f, n, &vecs)));
            }
        }
        pieces = next;
    }
    let (weights, spaces) = pieces.into_iter().unzip();
    Ok(WeightDecomposition { torus: torus.to_vec(), weights, spaces })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::sl2;
    use super::*;
    use crate::field::Field;

    #[test]
    fn sl2_weights_and_center() {
        let f = Field::new(5, 1).unwrap();
        let l = sl2(&f);
        assert_eq!(center(&l).dim(), 0);
        let wd = weight_decomposition(&l, &[l.basis_vec(1)], &l.full_space()).unwrap();
        let mut ws: Vec<Fe> = wd.weights.iter().map(|w| w[0]).collect();
        ws.sort();
        assert_eq!(ws, vec![f.from_int(0), f.from_int(2), f.from_int(-2)]);
        assert_eq!(wd.dims(), vec![1, 1, 1]);
        let trivial = weight_decomposition(&l, &[], &l.full_space()).unwrap();
        assert_eq!(trivial.dims(), vec![3]);
        // ad e is nilpotent, not diagonalizable
        assert!(weight_decomposition(&l, &[l.basis_vec(0)], &l.full_space()).is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let f = Field::new(5, 1).unwrap();
        let s = direct_sum(&sl2(&f), &sl2(&f)).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(center(&s).dim(), 0);
        assert_eq!(s.bracket(&s.basis_vec(0), &s.basis_vec(5)), s.zero_vec());
        assert!(direct_sum(&sl2(&f), &sl2(&Field::new(7, 1).unwrap())).is_err());
    }

    #[test]
    fn quotient_by_center_of_a_sum_with_abelian() {
        let f = Field::new(5, 1).unwrap();
        let ab = LieAlgebra::from_upper(&f, 1, "F", |_, _| vec![]);
        let s = direct_sum(&sl2(&f), &ab).unwrap();
        let (z, q) = center_and_quotient(&s);
        assert_eq!(z.dim(), 1);
        assert_eq!(q.algebra.dim(), 3);
        assert_eq!(q.complement, vec![0, 1, 2]);
        let e = q.project(&s.basis_vec(0));
        let fv = q.project(&s.basis_vec(2));
        assert_eq!(q.algebra.bracket(&e, &fv), q.project(&s.basis_vec(1)));
        assert!(quotient(&s, &s.coordinate_subspace(&[0])).is_err());
    }
}
