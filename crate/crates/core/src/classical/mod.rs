//! Classical Lie algebras from Chevalley bases and matrix presentations,
//! with the generating-pair recipes that go with them.

mod recipes;
mod roots;

pub use recipes::{
    central_extension_partner, densify_components, exp_ad_automorphism, is_automorphism, regular_cartan_element,
    theorem_b_partner, Automorphism, CentralWitness, PartnerWitness, SEARCH_BUDGET,
};
pub use roots::{Root, RootSystem, RootType};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::liealg::{
    center, direct_sum, quotient, weight_decomposition, LieAlgebra, LieError, Quotient, SubalgebraBasis,
    WeightDecomposition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("unsupported type {0}")]
    UnsupportedType(String),
    #[error("cannot parse classical descriptor {0:?}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("search budget exhausted: {0}; retry over an extension")]
    SearchBudgetExhausted(String),
    #[error("ad e_alpha has nilpotency index above p for root {0}")]
    NilpotencyIndexTooLarge(String),
    #[error("no partner y0 + a z in {0}; retry over an extension")]
    NoPartnerInField(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassicalKind {
    Chevalley(RootType, usize),
    Sl(usize),
    Psl(usize),
    Gl(usize),
    Pgl(usize),
    Sum(Vec<ClassicalKind>),
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalKind::Chevalley(RootType::G, 2) => write!(f, "G2"),
            ClassicalKind::Chevalley(t, n) => write!(f, "{}{}", t, n),
            ClassicalKind::Sl(n) => write!(f, "sl:{}", n),
            ClassicalKind::Psl(n) => write!(f, "psl:{}", n),
            ClassicalKind::Gl(n) => write!(f, "gl:{}", n),
            ClassicalKind::Pgl(n) => write!(f, "pgl:{}", n),
            ClassicalKind::Sum(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

impl FromStr for ClassicalKind {
    type Err = ClassicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClassicalError::Parse(s.to_string());
        if s.contains('+') {
            return s.split('+').map(str::parse).collect::<Result<Vec<_>, _>>().map(ClassicalKind::Sum);
        }
        if let Some((head, n)) = s.split_once(':') {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return match head {
                "sl" => Ok(ClassicalKind::Sl(n)),
                "psl" => Ok(ClassicalKind::Psl(n)),
                "gl" => Ok(ClassicalKind::Gl(n)),
                "pgl" => Ok(ClassicalKind::Pgl(n)),
                _ => Err(bad()),
            };
        }
        let mut chars = s.chars();
        let t = match chars.next().ok_or_else(bad)? {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return Err(bad()),
        };
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        Ok(ClassicalKind::Chevalley(t, n))
    }
}

/// A classical algebra on a basis adapted to `g = h ⊕ ⊕ g_α`.
#[derive(Clone, Debug)]
pub struct ClassicalAlgebra {
    pub base: LieAlgebra,
    pub kind: ClassicalKind,
    pub cartan: SubalgebraBasis,
    /// Basis indices spanning `h`.
    pub cartan_index: Vec<usize>,
    /// Basis index of `e_α` for each root.
    pub root_index: Vec<usize>,
    /// Root coordinates (simple-root basis for Chevalley types, `ε`-basis for matrices).
    pub root_coords: Vec<Root>,
    /// `root_values[a][i] = α_a(h_i)` on the Cartan basis.
    pub root_values: Vec<Vec<Fe>>,
    pub roots: WeightDecomposition,
    neg: Vec<usize>,
}

impl ClassicalAlgebra {
    /// Derives root data from an adapted basis, checking that `h` acts diagonally on it.
    pub fn from_adapted(
        base: LieAlgebra,
        kind: ClassicalKind,
        cartan_index: Vec<usize>,
        root_index: Vec<usize>,
        root_coords: Vec<Root>,
    ) -> Result<ClassicalAlgebra, ClassicalError> {
        let mut root_values = vec![];
        for &r in &root_index {
            let mut vals = vec![];
            for &h in &cartan_index {
                let br = base.bracket_basis(h, r);
                let v = match br {
                    [] => Fe::ZERO,
                    [(k, c)] if *k as usize == r => *c,
                    _ => {
                        return Err(ClassicalError::Precondition(format!(
                            "{} is not a weight vector for {}",
                            base.label(r),
                            base.label(h)
                        )))
                    }
                };
                vals.push(v);
            }
            root_values.push(vals);
        }
        let lookup: HashMap<&Root, usize> = root_coords.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let neg = root_coords
            .iter()
            .map(|r| {
                let m: Root = r.iter().map(|x| -x).collect();
                lookup.get(&m).copied().ok_or_else(|| ClassicalError::Precondition(format!("{:?} has no negative", r)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let torus: Vec<Vec<Fe>> = cartan_index.iter().map(|&h| base.basis_vec(h)).collect();
        let roots = weight_decomposition(&base, &torus, &base.full_space())?;
        Ok(ClassicalAlgebra {
            cartan: base.coordinate_subspace(&cartan_index),
            base,
            kind,
            cartan_index,
            root_index,
            root_coords,
            root_values,
            roots,
            neg,
        })
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn rank(&self) -> usize {
        self.cartan_index.len()
    }

    pub fn num_roots(&self) -> usize {
        self.root_index.len()
    }

    /// Index of `-α` for the root with index `a`.
    pub fn negative_of(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn root_vector(&self, a: usize) -> Vec<Fe> {
        self.base.basis_vec(self.root_index[a])
    }

    /// Root components `x_α` as coordinates.
    pub fn root_components(&self, x: &[Fe]) -> Vec<Fe> {
        self.root_index.iter().map(|&i| x[i]).collect()
    }

    pub fn cartan_part(&self, x: &[Fe]) -> Vec<Fe> {
        let mut v = self.base.zero_vec();
        for &i in &self.cartan_index {
            v[i] = x[i];
        }
        v
    }

    /// Whether every root component of `x` is nonzero.
    pub fn is_dense(&self, x: &[Fe]) -> bool {
        self.root_components(x).iter().all(|c| !c.is_zero())
    }

    /// `α(y)` for `y ∈ h`, one value per root.
    pub fn root_values_at(&self, y: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        self.root_values
            .iter()
            .map(|vals| {
                let mut s = Fe::ZERO;
                for (&h, &v) in self.cartan_index.iter().zip(vals) {
                    s = f.mul_add(s, y[h], v);
                }
                s
            })
            .collect()
    }

    /// Whether `y ∈ h` takes pairwise distinct values on the roots.
    pub fn is_regular(&self, y: &[Fe]) -> bool {
        if !self.cartan.contains(y) {
            return false;
        }
        let mut vals = self.root_values_at(y);
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    pub fn retarget(&self, field: &Field) -> Result<ClassicalAlgebra, ClassicalError> {
        ClassicalAlgebra::from_adapted(
            self.base.retarget(field)?,
            self.kind.clone(),
            self.cartan_index.clone(),
            self.root_index.clone(),
            self.root_coords.clone(),
        )
    }

    /// `g / z(g)` with the root data carried across.
    pub fn quotient_by_center(&self) -> Result<(ClassicalAlgebra, Quotient), ClassicalError> {
        let z = center(&self.base);
        let q = quotient(&self.base, &z)?;
        let pos: HashMap<usize, usize> = q.complement.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let root_index = self
            .root_index
            .iter()
            .map(|r| pos.get(r).copied().ok_or_else(|| ClassicalError::Precondition("center meets a root space".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let cartan_index = self.cartan_index.iter().filter_map(|h| pos.get(h).copied()).collect();
        let kind = match &self.kind {
            ClassicalKind::Sl(n) | ClassicalKind::Psl(n) => ClassicalKind::Psl(*n),
            ClassicalKind::Gl(n) | ClassicalKind::Pgl(n) => ClassicalKind::Pgl(*n),
            k => k.clone(),
        };
        let alg = q.algebra.clone().with_name(kind.to_string());
        let g = ClassicalAlgebra::from_adapted(alg, kind, cartan_index, root_index, self.root_coords.clone())?;
        Ok((g, q))
    }

    /// `g_1 ⊕ g_2`; roots of the second summand are padded after those of the first.
    pub fn direct_sum(a: &ClassicalAlgebra, b: &ClassicalAlgebra) -> Result<ClassicalAlgebra, ClassicalError> {
        let base = direct_sum(&a.base, &b.base)?;
        let da = a.dim();
        let (la, lb) = (a.root_coords.first().map_or(0, |r| r.len()), b.root_coords.first().map_or(0, |r| r.len()));
        let coords = a
            .root_coords
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat(0).take(lb)).collect())
            .chain(b.root_coords.iter().map(|r| std::iter::repeat(0).take(la).chain(r.iter().copied()).collect()))
            .collect();
        let mut parts = match &a.kind {
            ClassicalKind::Sum(ks) => ks.clone(),
            k => vec![k.clone()],
        };
        parts.push(b.kind.clone());
        let kind = ClassicalKind::Sum(parts);
        let base = base.with_name(kind.to_string());
        ClassicalAlgebra::from_adapted(
            base,
            kind,
            a.cartan_index.iter().copied().chain(b.cartan_index.iter().map(|h| h + da)).collect(),
            a.root_index.iter().copied().chain(b.root_index.iter().map(|r| r + da)).collect(),
            coords,
        )
    }
}

/// Chevalley algebra of a root system, basis `e_{-α}` (by decreasing height), `h_i`, `e_α`.
pub fn chevalley_algebra(rs: &RootSystem, field: &Field) -> Result<ClassicalAlgebra, ClassicalError> {
    let np = rs.num_positive();
    let l = rs.rank;
    let neg: Vec<Root> = rs.positive.iter().rev().map(|r| r.iter().map(|x| -x).collect()).collect();
    let mut basis_roots: Vec<Option<Root>> = neg.iter().cloned().map(Some).collect();
    basis_roots.extend((0..l).map(|_| None));
    basis_roots.extend(rs.positive.iter().cloned().map(Some));
    let dim = basis_roots.len();
    let index: HashMap<Root, usize> =
        basis_roots.iter().enumerate().filter_map(|(i, r)| r.clone().map(|r| (r, i))).collect();
    let h0 = np;
    let bracket = |i: usize, j: usize| -> Vec<(usize, Fe)> {
        match (&basis_roots[i], &basis_roots[j]) {
            (None, None) => vec![],
            (None, Some(b)) => {
                let c = rs.pairing(b, &rs.positive[i - h0]);
                vec![(j, field.from_int(c as i64))]
            }
            (Some(a), None) => {
                let c = rs.pairing(a, &rs.positive[j - h0]);
                vec![(i, field.from_int(-c as i64))]
            }
            (Some(a), Some(b)) => {
                let s: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if s.iter().all(|&x| x == 0) {
                    let (sign, pos) = if a.iter().all(|&x| x >= 0) { (1, a) } else { (-1, b) };
                    rs.coroot(pos)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(k, c)| (h0 + k, field.from_int((sign * c) as i64)))
                        .collect()
                } else if let Some(&k) = index.get(&s) {
                    vec![(k, field.from_int(rs.structure_constant(a, b) as i64))]
                } else {
                    vec![]
                }
            }
        }
    };
    let kind = ClassicalKind::Chevalley(rs.root_type, l);
    let label = |r: &Root| {
        let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        format!("e({})", parts.join(","))
    };
    let labels: Vec<String> = basis_roots
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Some(r) => label(r),
            None => format!("h{}", i - h0 + 1),
        })
        .collect();
    let grading: Vec<i32> = basis_roots.iter().map(|r| r.as_ref().map_or(0, |r| r.iter().sum())).collect();
    let base = LieAlgebra::from_table(field, dim, kind.to_string(), bracket).with_labels(labels).with_grading(grading);
    let root_index: Vec<usize> = (0..dim).filter(|&i| basis_roots[i].is_some()).collect();
    let root_coords = root_index.iter().map(|&i| basis_roots[i].clone().unwrap()).collect();
    ClassicalAlgebra::from_adapted(base, kind, (h0..h0 + l).collect(), root_index, root_coords)
}

/// `sl_n` or `gl_n` on matrix units; `E_ij` (i ≠ j) plus `E_ii - E_{i+1,i+1}` or `E_ii`.
fn matrix_algebra(n: usize, gl: bool, field: &Field) -> Result<ClassicalAlgebra, ClassicalError> {
    #[derive(Clone)]
    enum B {
        Unit(usize, usize),
        Diag(usize),
    }
    let mut off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    off.sort_by_key(|&(i, j)| (j as i64 - i as i64, i));
    let (neg, pos): (Vec<_>, Vec<_>) = off.into_iter().partition(|&(i, j)| j < i);
    let ndiag = if gl { n } else { n - 1 };
    let mut basis: Vec<B> = neg.iter().map(|&(i, j)| B::Unit(i, j)).collect();
    let h0 = basis.len();
    basis.extend((0..ndiag).map(B::Diag));
    basis.extend(pos.iter().map(|&(i, j)| B::Unit(i, j)));
    let dim = basis.len();
    let unit_index: HashMap<(usize, usize), usize> = basis
        .iter()
        .enumerate()
        .filter_map(|(k, b)| match b {
            B::Unit(i, j) => Some(((*i, *j), k)),
            _ => None,
        })
        .collect();
    let entries = |b: &B| -> Vec<(usize, usize, i64)> {
        match *b {
            B::Unit(i, j) => vec![(i, j, 1)],
            B::Diag(i) if gl => vec![(i, i, 1)],
            B::Diag(i) => vec![(i, i, 1), (i + 1, i + 1, -1)],
        }
    };
    let bracket = |a: usize, b: usize| -> Vec<(usize, Fe)> {
        let mut m: HashMap<(usize, usize), i64> = HashMap::new();
        for &(i, j, c) in &entries(&basis[a]) {
            for &(k, l, d) in &entries(&basis[b]) {
                if j == k {
                    *m.entry((i, l)).or_default() += c * d;
                }
                if l == i {
                    *m.entry((k, j)).or_default() -= c * d;
                }
            }
        }
        let mut out = vec![];
        let mut diag = vec![0i64; n];
        for (&(i, j), &c) in &m {
            if c == 0 {
                continue;
            }
            if i == j {
                diag[i] += c;
            } else {
                out.push((unit_index[&(i, j)], field.from_int(c)));
            }
        }
        if gl {
            out.extend((0..n).filter(|&i| diag[i] != 0).map(|i| (h0 + i, field.from_int(diag[i]))));
        } else {
            let mut acc = 0;
            for (i, d) in diag.iter().enumerate().take(n - 1) {
                acc += d;
                if acc != 0 {
                    out.push((h0 + i, field.from_int(acc)));
                }
            }
        }
        out
    };
    let labels: Vec<String> = basis
        .iter()
        .map(|b| match *b {
            B::Unit(i, j) => format!("E{},{}", i + 1, j + 1),
            B::Diag(i) if gl => format!("E{},{}", i + 1, i + 1),
            B::Diag(i) => format!("H{}", i + 1),
        })
        .collect();
    let grading: Vec<i32> = basis
        .iter()
        .map(|b| match *b {
            B::Unit(i, j) => j as i32 - i as i32,
            B::Diag(_) => 0,
        })
        .collect();
    let kind = if gl { ClassicalKind::Gl(n) } else { ClassicalKind::Sl(n) };
    let base = LieAlgebra::from_table(field, dim, kind.to_string(), bracket).with_labels(labels).with_grading(grading);
    let root_index: Vec<usize> = (0..dim).filter(|&k| matches!(basis[k], B::Unit(..))).collect();
    let root_coords = root_index
        .iter()
        .map(|&k| match basis[k] {
            B::Unit(i, j) => {
                let mut r = vec![0; n];
                r[i] = 1;
                r[j] = -1;
                r
            }
            B::Diag(_) => unreachable!(),
        })
        .collect();
    ClassicalAlgebra::from_adapted(base, kind, (h0..h0 + ndiag).collect(), root_index, root_coords)
}

pub fn build_classical(kind: &ClassicalKind, field: &Field) -> Result<ClassicalAlgebra, ClassicalError> {
    if field.p() <= 3 {
        return Err(ClassicalError::Precondition(format!("characteristic {} must exceed 3", field.p())));
    }
    match kind {
        ClassicalKind::Chevalley(t, n) => chevalley_algebra(&RootSystem::new(*t, *n)?, field),
        ClassicalKind::Sl(n) => matrix_algebra(*n, false, field),
        ClassicalKind::Gl(n) => matrix_algebra(*n, true, field),
        ClassicalKind::Psl(n) => {
            let sl = matrix_algebra(*n, false, field)?;
            if *n as u32 % field.p() == 0 {
                Ok(sl.quotient_by_center()?.0)
            } else {
                let base = sl.base.clone().with_name(kind.to_string());
                ClassicalAlgebra::from_adapted(base, kind.clone(), sl.cartan_index, sl.root_index, sl.root_coords)
            }
        }
        ClassicalKind::Pgl(n) => Ok(matrix_algebra(*n, true, field)?.quotient_by_center()?.0),
        ClassicalKind::Sum(ks) => {
            let mut it = ks.iter();
            let first = it.next().ok_or_else(|| ClassicalError::Parse("empty sum".into()))?;
            let mut acc = build_classical(first, field)?;
            for k in it {
                acc = ClassicalAlgebra::direct_sum(&acc, &build_classical(k, field)?)?;
            }
            Ok(acc)
        }
    }
}
