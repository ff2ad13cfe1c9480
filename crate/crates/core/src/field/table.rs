//! Fixed modulus table shared by every run.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{check_characteristic, primepoly, FieldError};

const BUILTIN: &str = include_str!("../../data/moduli.json");

/// Environment variable naming an alternative modulus table.
pub const DATA_ENV: &str = "MODLIE_DATA";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusEntry {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

type Table = HashMap<(u32, u32), Vec<u32>>;

fn parse(text: &str) -> Result<Table, FieldError> {
    let entries: Vec<ModulusEntry> =
        serde_json::from_str(text).map_err(|e| FieldError::Table(e.to_string()))?;
    Ok(entries.into_iter().map(|e| ((e.p, e.k), e.modulus)).collect())
}

fn load(path: Option<PathBuf>) -> Result<Table, FieldError> {
    static LOADED: OnceLock<Mutex<HashMap<Option<PathBuf>, Table>>> = OnceLock::new();
    let loaded = LOADED.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = loaded.lock().unwrap().get(&path) {
        return Ok(t.clone());
    }
    let table = match &path {
        None => parse(BUILTIN)?,
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| FieldError::Table(format!("{}: {e}", p.display())))?;
            parse(&text)?
        }
    };
    loaded.lock().unwrap().insert(path, table.clone());
    Ok(table)
}

/// Entries of the active table, sorted by `(p, k)`.
pub fn entries() -> Result<Vec<ModulusEntry>, FieldError> {
    let path = std::env::var_os(DATA_ENV).map(PathBuf::from);
    let mut out: Vec<ModulusEntry> = load(path)?
        .into_iter()
        .map(|((p, k), modulus)| ModulusEntry { p, k, modulus })
        .collect();
    out.sort_by_key(|e| (e.p, e.k));
    Ok(out)
}

/// Modulus for `F_{p^k}`: the table entry, else the lexicographically first
/// primitive polynomial.
pub fn modulus_for(p: u32, k: u32) -> Result<Vec<u32>, FieldError> {
    check_characteristic(p, k)?;
    let path = std::env::var_os(DATA_ENV).map(PathBuf::from);
    if let Some(m) = load(path)?.get(&(p, k)) {
        return Ok(m.clone());
    }
    Ok(first_primitive(p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn x_pow_mod(e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut base = primepoly::rem(&[0, 1], f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = primepoly::mulmod(&acc, &base, f, p);
        }
        base = primepoly::mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Whether the class of `x` generates the multiplicative group of `F_p[x]/(f)`.
pub(crate) fn is_primitive(f: &[u32], p: u32) -> bool {
    if !primepoly::is_irreducible(f, p) {
        return false;
    }
    let k = (f.len() - 1) as u32;
    let n = (p as u64).pow(k) - 1;
    prime_factors(n)
        .into_iter()
        .all(|r| x_pow_mod(n / r, f, p) != vec![1])
}

fn first_primitive(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut r = idx;
        for _ in 0..k {
            f.push((r % p as u64) as u32);
            r /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fe, Field, Poly};

    #[test]
    fn every_entry_is_primitive() {
        for e in entries().unwrap() {
            assert_eq!(e.modulus.len() as u32, e.k + 1);
            assert!(is_primitive(&e.modulus, e.p), "{:?}", e);
        }
    }

    #[test]
    fn entries_are_compatible_along_subfields() {
        // x^{(p^k-1)/(p^d-1)} must be a root of the degree-d entry for every d | k
        for e in entries().unwrap() {
            let big = Field::new(e.p, e.k).unwrap();
            for d in (1..e.k).filter(|d| e.k % d == 0) {
                let small = modulus_for(e.p, d).unwrap();
                let ratio = (big.size() as u64 - 1) / ((e.p as u64).pow(d) - 1);
                let r = big.pow(big.x(), ratio);
                let poly = Poly::new(&big, small.iter().map(|&c| Fe(c)).collect());
                assert!(poly.eval(r).is_zero(), "p={} k={} d={}", e.p, e.k, d);
            }
        }
    }

    #[test]
    fn fallback_search_is_primitive() {
        let f = first_primitive(5, 5);
        assert!(is_primitive(&f, 5));
        assert_eq!(modulus_for(17, 2).unwrap(), first_primitive(17, 2));
    }

    #[test]
    fn degree_five_irreducibility_needs_small_subfields_only() {
        // (x^2 + 2)(x^3 + x + 1) over F_5 has no roots but is reducible
        let a = [2u32, 0, 1];
        let b = [1u32, 1, 0, 1];
        let mut prod = vec![0u32; 6];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % 5;
            }
        }
        assert!(!primepoly::is_irreducible(&prod, 5));
        assert!((0..5u32).all(|t| {
            let v = prod.iter().rev().fold(0u32, |acc, &c| (acc * t + c) % 5);
            v != 0
        }));
    }
}
