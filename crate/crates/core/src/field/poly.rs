use std::fmt;

use super::{Fe, Field, FieldError};

/// Dense univariate polynomial, coefficients from the constant term upwards,
/// with leading zeros trimmed (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{:?}*t^{}", self.field.coeffs(*c), i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * t^d`
    pub fn monomial(field: &Field, c: Fe, d: usize) -> Poly {
        let mut v = vec![Fe::ZERO; d + 1];
        v[d] = c;
        Poly::new(field, v)
    }

    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, Fe::ONE, 1)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(field: &Field, roots: &[Fe]) -> Poly {
        roots.iter().fold(Poly::one(field), |acc, &r| {
            acc.mul(&Poly::new(field, vec![field.neg(r), Fe::ONE]))
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(f, out)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), FieldError> {
        let f = &self.field;
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let li = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], li);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, dc));
            }
        }
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, FieldError> {
        Ok(self.divrem(d)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        self.mul(other).divrem(&g).expect("nonzero gcd").0.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.mul_add(c, acc, x))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly, FieldError> {
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Squarefree test via `gcd(f, f') = 1`; a vanishing derivative means `f` is a `p`-th power.
    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return !self.is_zero();
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == Some(0)
    }

    /// Coefficientwise image under a ring map of fields.
    pub fn map(&self, target: &Field, table: &[Fe]) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|c| table[c.0 as usize]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = Field::new(7, 1).unwrap();
        let a = Poly::new(&f, [3, 0, 5, 1, 6].map(Fe).to_vec());
        let b = Poly::new(&f, [1, 2, 1].map(Fe).to_vec());
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert!(Poly::zero(&f).divrem(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn gcd_and_lcm() {
        let f = Field::new(5, 1).unwrap();
        let a = Poly::from_roots(&f, &[Fe(1), Fe(2), Fe(2)]);
        let b = Poly::from_roots(&f, &[Fe(2), Fe(3)]);
        assert_eq!(a.gcd(&b), Poly::from_roots(&f, &[Fe(2)]));
        assert_eq!(a.lcm(&b), Poly::from_roots(&f, &[Fe(1), Fe(2), Fe(2), Fe(3)]));
        assert!(!a.is_squarefree());
        assert!(b.is_squarefree());
        // t^5 - 1 = (t - 1)^5 has zero derivative
        let t5 = Poly::monomial(&f, Fe::ONE, 5).sub(&Poly::one(&f));
        assert!(t5.derivative().is_zero());
        assert!(!t5.is_squarefree());
    }

    #[test]
    fn powers_and_eval() {
        let f = Field::new(5, 2).unwrap();
        let p = Poly::new(&f, vec![Fe(7), Fe(1)]);
        let cube = p.pow(3);
        assert_eq!(cube, p.mul(&p).mul(&p));
        for x in f.elements().step_by(4) {
            assert_eq!(cube.eval(x), f.pow(p.eval(x), 3));
        }
        let m = Poly::from_roots(&f, &[Fe(1), Fe(9), Fe(13)]);
        assert_eq!(p.pow_mod(11, &m).unwrap(), p.pow(11).rem(&m).unwrap());
    }
}
