//! Algebra descriptors: `A2`, `sl:4`, `W:2:1,1`, `Zass:2`, `O:2:1,1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cartan_w::{build_witt, build_zassenhaus, CartanError, DividedPowerAlgebra, WittAlgebra};
use crate::classical::{build_classical, ClassicalAlgebra, ClassicalError, ClassicalKind};
use crate::field::{Field, FieldSpec};
use crate::liealg::{AlgebraFile, LieAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("cannot parse algebra descriptor {0:?}")]
    Parse(String),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Classical(ClassicalKind),
    Witt { m: usize, n: Vec<u32> },
    Zassenhaus(u32),
    DividedPower { m: usize, n: Vec<u32> },
}

fn parse_mn(rest: &str, s: &str) -> Result<(usize, Vec<u32>), DescriptorError> {
    let bad = || DescriptorError::Parse(s.to_string());
    let (m, n) = rest.split_once(':').ok_or_else(bad)?;
    let m: usize = m.parse().map_err(|_| bad())?;
    let n: Vec<u32> = n.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    if m == 0 || n.len() != m || n.contains(&0) {
        return Err(bad());
    }
    Ok((m, n))
}

impl FromStr for Descriptor {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("W:") {
            let (m, n) = parse_mn(rest, s)?;
            return Ok(Descriptor::Witt { m, n });
        }
        if let Some(rest) = s.strip_prefix("O:") {
            let (m, n) = parse_mn(rest, s)?;
            return Ok(Descriptor::DividedPower { m, n });
        }
        if let Some(rest) = s.strip_prefix("Zass:") {
            let n: u32 = rest.parse().map_err(|_| DescriptorError::Parse(s.to_string()))?;
            if n == 0 {
                return Err(DescriptorError::Parse(s.to_string()));
            }
            return Ok(Descriptor::Zassenhaus(n));
        }
        s.parse::<ClassicalKind>().map(Descriptor::Classical).map_err(|_| DescriptorError::Parse(s.to_string()))
    }
}

fn join(n: &[u32]) -> String {
    n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Classical(k) => write!(f, "{}", k),
            Descriptor::Witt { m, n } => write!(f, "W:{}:{}", m, join(n)),
            Descriptor::Zassenhaus(n) => write!(f, "Zass:{}", n),
            Descriptor::DividedPower { m, n } => write!(f, "O:{}:{}", m, join(n)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Built {
    Classical(ClassicalAlgebra),
    Witt(WittAlgebra),
    DividedPower(DividedPowerAlgebra),
}

impl Built {
    pub fn lie(&self) -> Option<&LieAlgebra> {
        match self {
            Built::Classical(g) => Some(&g.base),
            Built::Witt(w) => Some(&w.base),
            Built::DividedPower(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Built::Classical(g) => g.dim(),
            Built::Witt(w) => w.dim(),
            Built::DividedPower(o) => o.dim(),
        }
    }

    /// Lie algebras in the structure-constant format; `O(m, n)` as a
    /// commutative multiplication table.
    pub fn to_json(&self) -> String {
        match self {
            Built::DividedPower(o) => serde_json::to_string_pretty(&DividedPowerFile::from_algebra(o)).expect("serializable"),
            _ => AlgebraFile::from_algebra(self.lie().expect("Lie algebra")).to_json(),
        }
    }
}

impl Descriptor {
    pub fn build(&self, field: &Field, cap: usize) -> Result<Built, DescriptorError> {
        Ok(match self {
            Descriptor::Classical(k) => {
                let g = build_classical(k, field)?;
                if g.dim() > cap {
                    return Err(CartanError::DimensionCapExceeded { dim: g.dim(), cap }.into());
                }
                Built::Classical(g)
            }
            Descriptor::Witt { m, n } => Built::Witt(build_witt(*m, n, field, cap)?),
            Descriptor::Zassenhaus(n) => Built::Witt(build_zassenhaus(*n, field, cap)?),
            Descriptor::DividedPower { n, .. } => {
                let dim = (field.p() as usize).checked_pow(n.iter().sum()).unwrap_or(usize::MAX);
                if dim > cap {
                    return Err(CartanError::DimensionCapExceeded { dim, cap }.into());
                }
                Built::DividedPower(DividedPowerAlgebra::new(field, n))
            }
        })
    }
}

/// `x^(α) x^(β) = c x^(α+β)`, listed for `i ≤ j` with `c ≠ 0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DividedPowerFile {
    pub kind: String,
    pub spec: FieldSpec,
    pub m: usize,
    pub n: Vec<u32>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub products: Vec<(usize, usize, usize, u32)>,
}

impl DividedPowerFile {
    pub fn from_algebra(o: &DividedPowerAlgebra) -> DividedPowerFile {
        let f = o.field();
        let mut products = vec![];
        for i in 0..o.dim() {
            for j in i..o.dim() {
                if let Some((c, k)) = o.dp_multiply(o.monomial(i), o.monomial(j)) {
                    products.push((i, j, k, f.to_prime_int(c).expect("binomials lie in F_p")));
                }
            }
        }
        DividedPowerFile {
            kind: "divided-power".into(),
            spec: f.spec().clone(),
            m: o.m(),
            n: o.n().to_vec(),
            dim: o.dim(),
            labels: (0..o.dim()).map(|i| o.label(i)).collect(),
            degrees: (0..o.dim()).map(|i| o.degree(i)).collect(),
            products,
        }
    }
}
