use serde::Serialize;

use crate::exec::{map_range, Strategy};
use crate::field::Fe;

use super::LieAlgebra;

/// Outcome of the structural checks; each failure names its first counterexample.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry: Result<(), String>,
    pub jacobi: Result<(), String>,
    pub grading: Result<(), String>,
    pub triples_checked: u64,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry.is_ok() && self.jacobi.is_ok() && self.grading.is_ok()
    }

    pub fn failures(&self) -> Vec<String> {
        [&self.antisymmetry, &self.jacobi, &self.grading]
            .into_iter()
            .filter_map(|r| r.clone().err())
            .collect()
    }
}

fn check_antisymmetry(l: &LieAlgebra) -> Result<(), String> {
    let f = l.field();
    for i in 0..l.dim() {
        if !l.bracket_basis(i, i).is_empty() {
            return Err(format!("[{0}, {0}] != 0", l.label(i)));
        }
        for j in i + 1..l.dim() {
            let a = l.bracket_basis(i, j);
            let b = l.bracket_basis(j, i);
            let ok = a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && f.add(x.1, y.1).is_zero());
            if !ok {
                return Err(format!("[{0}, {1}] != -[{1}, {0}]", l.label(i), l.label(j)));
            }
        }
    }
    Ok(())
}

/// First Jacobi violation among triples `(i, j, k)`, `j < k`, for fixed `i < j`.
fn jacobi_row(l: &LieAlgebra, i: usize) -> Option<(usize, usize)> {
    let f = l.field();
    let n = l.dim();
    let mut acc = vec![Fe::ZERO; n];
    let mut touched: Vec<usize> = vec![];
    let add_nested = |a: usize, b: usize, c: usize, acc: &mut Vec<Fe>, touched: &mut Vec<usize>| {
        for &(m, s) in l.bracket_basis(b, c) {
            for &(t, u) in l.bracket_basis(a, m as usize) {
                let t = t as usize;
                acc[t] = f.mul_add(acc[t], s, u);
                touched.push(t);
            }
        }
    };
    for j in i + 1..n {
        for k in j + 1..n {
            add_nested(i, j, k, &mut acc, &mut touched);
            add_nested(j, k, i, &mut acc, &mut touched);
            add_nested(k, i, j, &mut acc, &mut touched);
            let mut bad = false;
            for &t in &touched {
                if !acc[t].is_zero() {
                    bad = true;
                }
                acc[t] = Fe::ZERO;
            }
            touched.clear();
            if bad {
                return Some((j, k));
            }
        }
    }
    None
}

fn check_grading(l: &LieAlgebra) -> Result<(), String> {
    let Some(g) = l.grading() else { return Ok(()) };
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            for &(k, _) in l.bracket_basis(i, j) {
                if g[k as usize] != g[i] + g[j] {
                    return Err(format!(
                        "[{}, {}] has a component on {} of degree {} != {} + {}",
                        l.label(i),
                        l.label(j),
                        l.label(k as usize),
                        g[k as usize],
                        g[i],
                        g[j]
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn validate(l: &LieAlgebra) -> ValidationReport {
    validate_with(l, Strategy::default())
}

pub fn validate_with(l: &LieAlgebra, strategy: Strategy) -> ValidationReport {
    let n = l.dim() as u64;
    let antisymmetry = check_antisymmetry(l);
    let rows = map_range(strategy, l.dim(), |i| jacobi_row(l, i));
    let jacobi = match rows.iter().enumerate().find_map(|(i, r)| r.map(|(j, k)| (i, j, k))) {
        None => Ok(()),
        Some((i, j, k)) => Err(format!("Jacobi fails on ({}, {}, {})", l.label(i), l.label(j), l.label(k))),
    };
    ValidationReport {
        antisymmetry,
        jacobi,
        grading: check_grading(l),
        triples_checked: n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::sl2;
    use super::*;
    use crate::field::Field;

    #[test]
    fn accepts_sl2() {
        let f = Field::new(5, 1).unwrap();
        let r = validate(&sl2(&f));
        assert!(r.pass(), "{:?}", r);
        assert_eq!(r.triples_checked, 1);
    }

    #[test]
    fn reports_antisymmetry_failure() {
        let f = Field::new(5, 1).unwrap();
        let bad = LieAlgebra::from_table(&f, 3, "bad", |i, j| if (i, j) == (1, 2) { vec![(0, Fe::ONE)] } else { vec![] });
        let r = validate(&bad);
        assert_eq!(r.antisymmetry, Err("[b1, b2] != -[b2, b1]".into()));
    }

    #[test]
    fn reports_jacobi_failure() {
        let f = Field::new(5, 1).unwrap();
        // [b0,b1] = b1, [b0,b2] = b2, [b1,b2] = b0 violates Jacobi
        let bad = LieAlgebra::from_upper(&f, 3, "bad", |i, j| match (i, j) {
            (0, 1) => vec![(1, Fe::ONE)],
            (0, 2) => vec![(2, Fe::ONE)],
            (1, 2) => vec![(0, Fe::ONE)],
            _ => vec![],
        });
        let r = validate(&bad);
        assert!(r.antisymmetry.is_ok());
        assert!(r.jacobi.is_err());
        let bad_grading = sl2(&f).with_grading(vec![1, 1, -1]);
        assert!(validate(&bad_grading).grading.is_err());
    }
}
