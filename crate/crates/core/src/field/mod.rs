//! Exact arithmetic in prime fields `F_p` and their extensions `F_{p^k}`.
//!
//! Elements are small integer handles ([`Fe`]) interpreted relative to a
//! [`Field`] context. The handle of an element is the base-`p` encoding of its
//! coefficient vector in the polynomial basis `1, x, ..., x^{k-1}` where `x` is
//! a root of the field modulus, so the prime subfield occupies handles
//! `0..p` in every extension of the same characteristic.
//!
//! Small fields (`q <= 1024`) use full addition and multiplication tables;
//! larger ones use Zech logarithms. Either way every operation is a handful of
//! table lookups.

mod poly;
mod table;

pub use poly::Poly;
pub use table::{entries as modulus_table, modulus_for, ModulusEntry, DATA_ENV};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field that `find_roots` and other exhaustive scans will enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 100_000;

const FULL_TABLE_LIMIT: u32 = 1024;
const MAX_FIELD_SIZE: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is not supported (need p > 3)")]
    CharacteristicTooSmall(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("invalid modulus {0:?}: {1}")]
    InvalidModulus(Vec<u32>, String),
    #[error("field of size {0} exceeds the enumeration bound {1}")]
    FieldTooLargeForEnumeration(u64, u64),
    #[error("field of size {0} is too large to tabulate")]
    FieldTooLarge(u64),
    #[error("{0:?} is not an element of F_{1}^{2}")]
    BadElement(Vec<u32>, u32, u32),
    #[error("F_{0}^{1} does not embed into F_{0}^{2}")]
    NoEmbedding(u32, u32, u32),
    #[error("root search on the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus table: {0}")]
    Table(String),
}

/// Handle of a field element; meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters pinning down a concrete model of `F_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus, coefficients from the constant term upwards (`k + 1` entries).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

enum Arith {
    Full { add: Vec<u16>, mul: Vec<u16> },
    Zech { zech: Vec<u32> },
}

const NO_LOG: u32 = u32::MAX;

struct Inner {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    frob: Vec<u32>,
    arith: Arith,
}

/// Shared, immutable model of a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

fn cache() -> &'static Mutex<HashMap<FieldSpec, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldSpec, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The field `F_{p^k}` with the modulus from the shipped table (or the
    /// table named by `MODLIE_DATA`), falling back to the first primitive
    /// polynomial in lexicographic order when the table has no entry.
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        check_characteristic(p, k)?;
        let modulus = modulus_for(p, k)?;
        Field::with_spec(FieldSpec { p, k, modulus })
    }

    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1)
    }

    /// Builds (or fetches from the process-wide cache) the field for an explicit spec.
    pub fn with_spec(spec: FieldSpec) -> Result<Field, FieldError> {
        if let Some(f) = cache().lock().unwrap().get(&spec) {
            return Ok(f.clone());
        }
        let field = Field(Arc::new(Inner::build(spec.clone())?));
        cache().lock().unwrap().insert(spec, field.clone());
        Ok(field)
    }

    /// Extension of the same characteristic with `k` multiplied by `factor`.
    pub fn extension(&self, factor: u32) -> Result<Field, FieldError> {
        Field::new(self.p(), self.k() * factor)
    }

    #[inline]
    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.0.spec.p
    }
    #[inline]
    pub fn k(&self) -> u32 {
        self.0.spec.k
    }
    #[inline]
    pub fn size(&self) -> u32 {
        self.0.q
    }
    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.spec.k == 1
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.p() as i64;
        Fe(n.rem_euclid(p) as u32)
    }

    /// Integer value of a prime-subfield element, `None` otherwise.
    pub fn to_prime_int(&self, a: Fe) -> Option<u32> {
        (a.0 < self.p()).then_some(a.0)
    }

    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, FieldError> {
        let (p, k) = (self.p(), self.k());
        if coeffs.len() != k as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::BadElement(coeffs.to_vec(), p, k));
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * p + c;
        }
        Ok(Fe(idx))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.p(), self.k())
    }

    /// The class of `x` (the root of the modulus); a primitive element for table moduli.
    pub fn x(&self) -> Fe {
        if self.k() == 1 {
            // modulus is x + c
            self.neg(Fe(self.0.spec.modulus[0]))
        } else {
            Fe(self.p())
        }
    }

    /// The multiplicative generator used for the log tables.
    pub fn generator(&self) -> Fe {
        Fe(self.0.exp[1])
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        match &inner.arith {
            Arith::Full { add, .. } => Fe(add[(a.0 * inner.q + b.0) as usize] as u32),
            Arith::Zech { zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let n = inner.q - 1;
                let la = inner.log[a.0 as usize];
                let lb = inner.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    Fe::ZERO
                } else {
                    Fe(inner.exp[(la + z) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        match &inner.arith {
            Arith::Full { mul, .. } => Fe(mul[(a.0 * inner.q + b.0) as usize] as u32),
            Arith::Zech { .. } => {
                if a.0 == 0 || b.0 == 0 {
                    return Fe::ZERO;
                }
                Fe(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
            }
        }
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(Fe(self.0.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Fe(self.0.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Fe) -> Fe {
        Fe(self.0.frob[a.0 as usize])
    }

    /// Inverse Frobenius `a^{p^{k-1}}`.
    pub fn frobenius_inv(&self, a: Fe) -> Fe {
        let mut r = a;
        for _ in 1..self.k() {
            r = self.frobenius(r);
        }
        r
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn check_same(&self, other: &Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch(self.to_string(), other.to_string()))
        }
    }

    /// Ring embedding of `self` into `target` as a table indexed by handle.
    ///
    /// The image of `x` is `w^{(|target|-1)/(|self|-1)}` for the target's `x`
    /// when that is a root of our modulus (always the case for compatible
    /// table moduli) and otherwise the smallest root found by enumeration.
    pub fn embedding_into(&self, target: &Field) -> Result<Vec<Fe>, FieldError> {
        if self.p() != target.p() || target.k() % self.k() != 0 {
            return Err(FieldError::NoEmbedding(self.p(), self.k(), target.k()));
        }
        if self == target {
            return Ok(self.elements().collect());
        }
        let modulus: Vec<Fe> = self.0.spec.modulus.iter().map(|&c| Fe(c)).collect();
        let mpoly = Poly::new(target, modulus);
        let ratio = (target.size() as u64 - 1) / (self.size() as u64 - 1);
        let cand = target.pow(target.generator(), ratio);
        let root = if mpoly.eval(cand).is_zero() {
            cand
        } else {
            *find_roots(&mpoly)?
                .first()
                .ok_or(FieldError::NoEmbedding(self.p(), self.k(), target.k()))?
        };
        let mut powers = vec![Fe::ONE];
        for i in 1..self.k() as usize {
            powers.push(target.mul(powers[i - 1], root));
        }
        Ok(self
            .elements()
            .map(|a| {
                let c = self.coeffs(a);
                let mut acc = Fe::ZERO;
                for (ci, pw) in c.iter().zip(&powers) {
                    acc = target.add(acc, target.mul(Fe(*ci), *pw));
                }
                acc
            })
            .collect())
    }

    /// Checked element wrapper.
    pub fn element(&self, a: Fe) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }

    pub fn parse_element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        Ok(self.element(self.from_coeffs(coeffs)?))
    }
}

fn check_characteristic(p: u32, k: u32) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p <= 3 {
        return Err(FieldError::CharacteristicTooSmall(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    if q > MAX_FIELD_SIZE {
        return Err(FieldError::FieldTooLarge(q));
    }
    Ok(())
}

fn digits(mut idx: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the monic modulus, on raw coefficient vectors.
fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let t = (c * m as u64) % p as u64;
            prod[d - k + i] = (prod[d - k + i] + p as u64 - t) % p as u64;
        }
    }
    prod[..k].iter().map(|&c| c as u32).collect()
}

pub(crate) mod primepoly {
    //! Raw polynomial helpers over `F_p` used to vet moduli.

    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let li = inv(m[dm], p);
        while a.len() > dm {
            let d = a.len() - 1;
            let c = (a[d] as u64 * li as u64 % p as u64) as u32;
            for i in 0..=dm {
                let t = (c as u64 * m[i] as u64 % p as u64) as u32;
                a[d - dm + i] = (a[d - dm + i] + p - t) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&prod, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Irreducibility via `gcd(x^{p^j} - x, f) = 1` for `1 <= j <= deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let n = f.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        let mut xp = vec![0, 1];
        for _ in 1..=n / 2 {
            let mut acc = vec![1u32];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &f, p);
                }
                base = mulmod(&base, &base, &f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &trim(diff), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Inner {
    fn build(spec: FieldSpec) -> Result<Inner, FieldError> {
        let (p, k) = (spec.p, spec.k);
        check_characteristic(p, k)?;
        let m = &spec.modulus;
        if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidModulus(m.clone(), "must be monic of degree k with entries < p".into()));
        }
        if !primepoly::is_irreducible(m, p) {
            return Err(FieldError::InvalidModulus(m.clone(), "reducible".into()));
        }
        let q = p.pow(k);
        let n = q - 1;

        // digitwise addition and negation
        let digit_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, k), digits(b, p, k));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, p)
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, k).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        // multiplicative generator: the class of x first, then a scan
        let x_idx = if k == 1 { (p - m[0]) % p } else { p };
        let mut candidates = vec![x_idx];
        candidates.extend((2..q).filter(|&c| c != x_idx));
        let mut exp_tab = None;
        for g in candidates {
            if g == 0 {
                continue;
            }
            let gd = digits(g, p, k);
            let mut cur = vec![0u32; k as usize];
            cur[0] = 1;
            let mut tab = Vec::with_capacity(n as usize);
            let mut ok = true;
            for i in 0..n {
                let idx = undigits(&cur, p);
                if i > 0 && idx == 1 {
                    ok = false;
                    break;
                }
                tab.push(idx);
                cur = slow_mul(&cur, &gd, m, p);
            }
            if ok {
                exp_tab = Some(tab);
                break;
            }
        }
        let base = exp_tab.ok_or_else(|| FieldError::InvalidModulus(m.clone(), "no primitive element".into()))?;
        let mut log = vec![NO_LOG; q as usize];
        for (i, &e) in base.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut exp = base.clone();
        exp.extend_from_slice(&base);

        let mul_idx = |a: u32, b: u32| -> u32 {
            if a == 0 || b == 0 {
                0
            } else {
                exp[(log[a as usize] + log[b as usize]) as usize]
            }
        };

        let arith = if q <= FULL_TABLE_LIMIT {
            let mut add = vec![0u16; (q * q) as usize];
            let mut mul = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = digit_add(a, b) as u16;
                    mul[(a * q + b) as usize] = mul_idx(a, b) as u16;
                }
            }
            Arith::Full { add, mul }
        } else {
            let zech = (0..n)
                .map(|d| {
                    let s = digit_add(1, exp[d as usize]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect();
            Arith::Zech { zech }
        };

        let frob = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[((log[a as usize] as u64 * p as u64) % n as u64) as usize]
                }
            })
            .collect();

        Ok(Inner { spec, q, exp, log, neg, frob, arith })
    }
}

/// Exhaustive root search: every `x` in the field of `f` with `f(x) = 0`.
pub fn find_roots(f: &Poly) -> Result<Vec<Fe>, FieldError> {
    find_roots_bounded(f, DEFAULT_ENUMERATION_BOUND)
}

pub fn find_roots_bounded(f: &Poly, bound: u64) -> Result<Vec<Fe>, FieldError> {
    if f.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let field = f.field();
    let q = field.size() as u64;
    if q > bound {
        return Err(FieldError::FieldTooLargeForEnumeration(q, bound));
    }
    Ok(field.elements().filter(|&x| f.eval(x).is_zero()).collect())
}

/// A field element bundled with its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.field.coeffs(self.value), self.field)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn value(&self) -> Fe {
        self.value
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn binary(&self, other: &FieldElement, op: impl Fn(&Field, Fe, Fe) -> Fe) -> Result<FieldElement, FieldError> {
        self.field.check_same(&other.field)?;
        Ok(self.field.element(op(&self.field, self.value, other.value)))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.binary(other, Field::add)
    }
    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.binary(other, Field::sub)
    }
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.binary(other, Field::mul)
    }
    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.field.check_same(&other.field)?;
        Ok(self.field.element(self.field.div(self.value, other.value)?))
    }
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }
    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.pow(self.value, e))
    }
    pub fn frobenius(&self) -> FieldElement {
        self.field.element(self.field.frobenius(self.value))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    #[test]
    fn small_products() {
        let f5 = f(5, 1);
        assert_eq!(f5.mul(Fe(2), Fe(3)), Fe(1));
        assert_eq!(f5.inv(Fe(1)).unwrap(), Fe(1));
        assert_eq!(f(7, 3).inv(Fe::ONE).unwrap(), Fe::ONE);
        assert_eq!(f5.inv(Fe(0)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn generator_of_f25_has_order_24() {
        let f25 = f(5, 2);
        let g = f25.generator();
        let square = |a: Fe| f25.mul(a, a);
        let g8 = square(square(square(g)));
        let g4 = square(square(g));
        assert_eq!(f25.mul(g8, square(g8)), Fe::ONE);
        assert_ne!(g8, Fe::ONE);
        assert_ne!(f25.mul(g8, g4), Fe::ONE);
        assert_eq!(f25.pow(g, 24), Fe::ONE);
    }

    #[test]
    fn frobenius_basics() {
        let f5 = f(5, 1);
        assert_eq!(f5.frobenius(Fe(0)), Fe(0));
        assert_eq!(f5.frobenius(Fe(2)), Fe(2));
        let f25 = f(5, 2);
        for a in f25.elements() {
            assert_eq!(f25.frobenius(f25.frobenius(a)), a);
            assert_eq!(f25.frobenius_inv(f25.frobenius(a)), a);
        }
        for a in f25.elements().take(5) {
            assert_eq!(f25.frobenius(a), a);
        }
    }

    #[test]
    fn exhaustive_axioms_up_to_125() {
        for (p, k) in [(5, 1), (7, 1), (5, 2), (11, 1), (5, 3)] {
            let fld = f(p, k);
            let q = fld.size();
            assert!(q <= 125);
            for a in fld.elements() {
                assert_eq!(fld.add(a, fld.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(fld.mul(a, fld.inv(a).unwrap()), Fe::ONE);
                }
                for b in fld.elements() {
                    assert_eq!(fld.add(a, b), fld.add(b, a));
                    assert_eq!(fld.mul(a, b), fld.mul(b, a));
                    // Frobenius is a ring homomorphism
                    assert_eq!(fld.frobenius(fld.add(a, b)), fld.add(fld.frobenius(a), fld.frobenius(b)));
                    assert_eq!(fld.frobenius(fld.mul(a, b)), fld.mul(fld.frobenius(a), fld.frobenius(b)));
                    if q <= 25 {
                        for c in fld.elements() {
                            assert_eq!(fld.add(fld.add(a, b), c), fld.add(a, fld.add(b, c)));
                            assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
                            assert_eq!(fld.mul(a, fld.add(b, c)), fld.add(fld.mul(a, b), fld.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn triples_in_f125() {
        let fld = f(5, 3);
        let sample: Vec<Fe> = fld.elements().step_by(3).collect();
        for &a in &sample {
            for &b in &sample {
                for &c in &sample {
                    assert_eq!(fld.mul(a, fld.add(b, c)), fld.add(fld.mul(a, b), fld.mul(a, c)));
                    assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn zech_fields_agree_with_slow_multiplication() {
        let fld = f(13, 3);
        assert!(fld.size() > FULL_TABLE_LIMIT);
        let m = fld.spec().modulus.clone();
        for a in (0..fld.size()).step_by(37) {
            for b in (0..fld.size()).step_by(41) {
                let (da, db) = (fld.coeffs(Fe(a)), fld.coeffs(Fe(b)));
                let prod = slow_mul(&da, &db, &m, 13);
                assert_eq!(fld.coeffs(fld.mul(Fe(a), Fe(b))), prod);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 13).collect();
                assert_eq!(fld.coeffs(fld.add(Fe(a), Fe(b))), sum);
            }
        }
    }

    #[test]
    fn prime_subfield_is_stable_across_extensions() {
        let f5 = f(5, 1);
        let f125 = f(5, 3);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f5.mul(Fe(a), Fe(b)), f125.mul(Fe(a), Fe(b)));
                assert_eq!(f5.add(Fe(a), Fe(b)), f125.add(Fe(a), Fe(b)));
            }
        }
    }

    #[test]
    fn embeddings_are_ring_maps() {
        for (p, a, b) in [(5, 1, 2), (5, 2, 4), (7, 1, 3), (5, 1, 3)] {
            let small = f(p, a);
            let big = f(p, b);
            let e = small.embedding_into(&big).unwrap();
            for x in small.elements() {
                for y in small.elements() {
                    assert_eq!(e[small.add(x, y).0 as usize], big.add(e[x.0 as usize], e[y.0 as usize]));
                    assert_eq!(e[small.mul(x, y).0 as usize], big.mul(e[x.0 as usize], e[y.0 as usize]));
                }
            }
        }
        assert!(f(5, 2).embedding_into(&f(5, 3)).is_err());
    }

    #[test]
    fn root_finding() {
        let f5 = f(5, 1);
        // t^5 - t
        let mut c = vec![Fe::ZERO; 6];
        c[1] = f5.from_int(-1);
        c[5] = Fe::ONE;
        assert_eq!(find_roots(&Poly::new(&f5, c)).unwrap().len(), 5);
        let t2p1 = Poly::new(&f5, vec![Fe(1), Fe(0), Fe(1)]);
        assert_eq!(find_roots(&t2p1).unwrap(), vec![Fe(2), Fe(3)]);
        let tp1 = Poly::new(&f5, vec![Fe(1), Fe(1)]);
        assert_eq!(find_roots(&tp1).unwrap(), vec![Fe(4)]);
        assert_eq!(find_roots(&Poly::zero(&f5)), Err(FieldError::ZeroPolynomial));
        let big = Poly::new(&f(13, 3), vec![Fe(1), Fe(1)]);
        assert!(matches!(
            find_roots_bounded(&big, 1000),
            Err(FieldError::FieldTooLargeForEnumeration(2197, 1000))
        ));
    }

    #[test]
    fn p_polynomial_roots_form_subgroup() {
        let f25 = f(5, 2);
        // t^25 - t (all of F_25), t^5 - a t for a with a root group, and random p-polynomials
        let mut samples = vec![];
        for a0 in [1u32, 3, 7, 12] {
            for a1 in [0u32, 1, 2, 9] {
                let mut c = vec![Fe::ZERO; 26];
                c[1] = Fe(a0);
                c[5] = Fe(a1);
                c[25] = Fe::ONE;
                samples.push(Poly::new(&f25, c));
            }
        }
        for fpoly in samples {
            let roots = find_roots(&fpoly).unwrap();
            let set: std::collections::HashSet<Fe> = roots.iter().copied().collect();
            assert!(set.contains(&Fe::ZERO));
            for &a in &roots {
                for &b in &roots {
                    assert!(set.contains(&f25.add(a, b)));
                }
            }
        }
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let a = f(5, 1).element(Fe(2));
        let b = f(7, 1).element(Fe(2));
        assert!(matches!(a.add(&b), Err(FieldError::SpecMismatch(..))));
        let c = f(5, 1).element(Fe(3));
        assert_eq!(a.mul(&c).unwrap().value(), Fe(1));
        assert!(a.div(&f(5, 1).element(Fe(0))).is_err());
        assert_eq!(serde_json::to_string(&f(5, 2).element(Fe(7))).unwrap(), "[2,1]");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(3, 1).unwrap_err(), FieldError::CharacteristicTooSmall(3));
        assert_eq!(Field::new(9, 1).unwrap_err(), FieldError::NotPrime(9));
        let err = Field::with_spec(FieldSpec { p: 5, k: 2, modulus: vec![1, 0, 1] }).unwrap_err();
        assert!(matches!(err, FieldError::InvalidModulus(..)));
    }
}
