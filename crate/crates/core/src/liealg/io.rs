//! JSON exchange format for structure constants (`i < j` entries only).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Fe, Field, FieldError, FieldSpec};

use super::{validate, LieAlgebra};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed algebra file: {0}")]
    Parse(String),
    #[error("validation failed: {0:?}")]
    ValidationFailure(Vec<String>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A coefficient written either as a prime-field integer or as a coefficient vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Elem(Vec<u32>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub spec: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i32>>,
    pub sc: Vec<(usize, usize, Vec<(usize, Coeff)>)>,
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> AlgebraFile {
        let f = l.field();
        let mut sc = vec![];
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let terms = l.bracket_basis(i, j);
                if !terms.is_empty() {
                    sc.push((i, j, terms.iter().map(|&(k, c)| (k as usize, Coeff::Elem(f.coeffs(c)))).collect()));
                }
            }
        }
        AlgebraFile {
            spec: f.spec().clone(),
            dim: l.dim(),
            name: Some(l.name().to_string()),
            labels: l.labels().map(|x| x.to_vec()),
            grading: l.grading().map(|x| x.to_vec()),
            sc,
        }
    }

    /// Rebuilds the alternating table and runs the validator.
    pub fn to_algebra(&self) -> Result<LieAlgebra, IoError> {
        let f = Field::with_spec(self.spec.clone())?;
        let n = self.dim;
        let mut upper: Vec<Vec<(usize, Fe)>> = vec![vec![]; n * n];
        for (i, j, terms) in &self.sc {
            if i >= j || *j >= n {
                return Err(IoError::Parse(format!("entry ({i}, {j}) must satisfy i < j < dim")));
            }
            for (k, c) in terms {
                if *k >= n {
                    return Err(IoError::Parse(format!("index {k} out of range")));
                }
                let v = match c {
                    Coeff::Int(x) => f.from_int(*x),
                    Coeff::Elem(v) => f.from_coeffs(v)?,
                };
                upper[i * n + j].push((*k, v));
            }
        }
        for (what, len) in [("labels", self.labels.as_ref().map(|v| v.len())), ("grading", self.grading.as_ref().map(|v| v.len()))] {
            if len.is_some_and(|l| l != n) {
                return Err(IoError::Parse(format!("{what} length differs from dim")));
            }
        }
        let mut l = LieAlgebra::from_upper(&f, n, self.name.clone().unwrap_or_else(|| "loaded".into()), |i, j| {
            std::mem::take(&mut upper[i * n + j])
        });
        if let Some(g) = &self.grading {
            l = l.with_grading(g.clone());
        }
        if let Some(lab) = &self.labels {
            l = l.with_labels(lab.clone());
        }
        let report = validate(&l);
        if !report.pass() {
            return Err(IoError::ValidationFailure(report.failures()));
        }
        Ok(l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<AlgebraFile, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))
    }
}

impl LieAlgebra {
    pub fn to_json(&self) -> String {
        AlgebraFile::from_algebra(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<LieAlgebra, IoError> {
        AlgebraFile::from_json(text)?.to_algebra()
    }
}
