use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{Fe, Field};
use crate::liealg::SubalgebraBasis;

/// `binom(n, k) mod p`, digit by digit (Lucas).
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc: u64 = 1;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, kd, p64) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inverse(den, p) % p
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(m: usize) -> MultiIndex {
        MultiIndex(vec![0; m])
    }

    /// `ε_k`, zero-based.
    pub fn unit(m: usize, k: usize) -> MultiIndex {
        let mut v = vec![0; m];
        v[k] = 1;
        MultiIndex(v)
    }

    pub fn ones(m: usize) -> MultiIndex {
        MultiIndex(vec![1; m])
    }

    /// `τ(n) = (p^{n_1} - 1, ..., p^{n_m} - 1)`.
    pub fn tau(p: u32, n: &[u32]) -> MultiIndex {
        MultiIndex(n.iter().map(|&ni| p.pow(ni) - 1).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `|α| = Σ α_i`.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// `binom(α, β) = Π binom(α_i, β_i) mod p`.
    pub fn binomial(&self, beta: &MultiIndex, p: u32) -> u32 {
        self.0
            .iter()
            .zip(&beta.0)
            .fold(1u64, |acc, (&a, &b)| acc * binomial_mod_p(a as u64, b as u64, p) as u64 % p as u64) as u32
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `O(m, n)`: basis `x^(α)`, `0 ≤ α ≤ τ`, ordered by degree then lexicographically.
#[derive(Clone, Debug)]
pub struct DividedPowerAlgebra {
    field: Field,
    n: Vec<u32>,
    tau: MultiIndex,
    basis: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl DividedPowerAlgebra {
    pub fn new(field: &Field, n: &[u32]) -> DividedPowerAlgebra {
        assert!(!n.is_empty() && n.iter().all(|&ni| ni >= 1));
        let tau = MultiIndex::tau(field.p(), n);
        let mut basis = vec![vec![]];
        for &t in &tau.0 {
            basis = basis
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=t).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        let mut basis: Vec<MultiIndex> = basis.into_iter().map(MultiIndex).collect();
        basis.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        let index = basis.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        DividedPowerAlgebra { field: field.clone(), n: n.to_vec(), tau, basis, index }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn m(&self) -> usize {
        self.n.len()
    }
    pub fn n(&self) -> &[u32] {
        &self.n
    }
    pub fn tau(&self) -> &MultiIndex {
        &self.tau
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }
    pub fn monomial(&self, i: usize) -> &MultiIndex {
        &self.basis[i]
    }
    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index.get(alpha).copied()
    }
    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].length()
    }
    pub fn basis_vec(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.dim()];
        v[i] = Fe::ONE;
        v
    }
    pub fn one(&self) -> Vec<Fe> {
        self.basis_vec(0)
    }
    pub fn tau_index(&self) -> usize {
        self.dim() - 1
    }

    /// `x^(α) x^(β) = binom(α+β, α) x^(α+β)`, truncated outside `α + β ≤ τ`.
    pub fn dp_multiply(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Option<(Fe, usize)> {
        let sum = alpha.add(beta);
        if !sum.le(&self.tau) {
            return None;
        }
        let c = sum.binomial(alpha, self.field.p());
        if c == 0 {
            return None;
        }
        Some((Fe(c), self.index[&sum]))
    }

    pub fn mul(&self, f: &[Fe], g: &[Fe]) -> Vec<Fe> {
        let fl = &self.field;
        let mut out = vec![Fe::ZERO; self.dim()];
        for (i, &a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some((c, k)) = self.dp_multiply(&self.basis[i], &self.basis[j]) {
                    out[k] = fl.add(out[k], fl.mul(c, fl.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &[Fe], e: u32) -> Vec<Fe> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// `D_k x^(α) = x^(α - ε_k)`.
    pub fn partial(&self, k: usize, f: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.dim()];
        let e = MultiIndex::unit(self.m(), k);
        for (i, &a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if let Some(lower) = self.basis[i].checked_sub(&e) {
                out[self.index[&lower]] = a;
            }
        }
        out
    }

    /// Membership in the maximal ideal spanned by positive-degree monomials.
    pub fn in_maximal_ideal(&self, f: &[Fe]) -> bool {
        f[0].is_zero()
    }

    /// Span of `{x^(β) f}`.
    pub fn ideal_generated(&self, f: &[Fe]) -> SubalgebraBasis {
        let vs: Vec<Vec<Fe>> = (0..self.dim()).map(|i| self.mul(&self.basis_vec(i), f)).collect();
        SubalgebraBasis::from_vectors(&self.field, self.dim(), &vs)
    }

    /// Label `x^(a,b,...)`.
    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.basis[i].0.iter().map(|a| a.to_string()).collect();
        format!("x^({})", parts.join(","))
    }
}
