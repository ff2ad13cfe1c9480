//! Generation experiments: strata census, certified generating pairs, and the
//! obstruction for Witt algebras in several variables.

mod census;
mod graded;
mod obstruction;
mod search;
mod zassenhaus;

pub use census::{pair_count, strata_census, SamplingPlan, StrataCensus};
pub use graded::{graded_recipe_pair, GradedRecipeLog};
pub use obstruction::{obstruction_report, obstruction_trial, ObstructionReport, ObstructionTrial};
pub use search::{one_and_half_search, ClassicalLadder, SearchOutcome, SearchStrategy, Target};
pub use zassenhaus::{ZassenhausSearcher, ZassenhausWitness};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan_w::CartanError;
use crate::classical::ClassicalError;
use crate::field::{Fe, Field, FieldError, FieldSpec};
use crate::liealg::{generated_subalgebra, LieAlgebra, LieError};
use crate::pstruct::PStructError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("recipe step {step} failed: {detail}")]
    RecipeStepFailed { step: &'static str, detail: String },
    #[error("no alpha with det(M_alpha) != 0 in {0}")]
    NoAlphaInSearchedExtensions(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    PStruct(#[from] PStructError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TheoremB,
    CentralExtension,
    GradedRecipe,
    Zassenhaus,
    Search,
}

/// A pair `(x, y)` together with the dimension of `F<x, y>` it was certified with.
#[derive(Clone, Debug)]
pub struct GenerationCertificate {
    pub algebra: String,
    pub field: Field,
    pub x: Vec<Fe>,
    pub y: Vec<Fe>,
    pub closure_dim: usize,
    pub method: Method,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

impl GenerationCertificate {
    pub fn certify(
        l: &LieAlgebra,
        x: Vec<Fe>,
        y: Vec<Fe>,
        method: Method,
        seed: Option<u64>,
        stream: Option<u64>,
    ) -> GenerationCertificate {
        let closure_dim = generated_subalgebra(l, &x, &y).dim();
        GenerationCertificate {
            algebra: l.name().to_string(),
            field: l.field().clone(),
            x,
            y,
            closure_dim,
            method,
            seed,
            stream,
        }
    }

    pub fn generates(&self, l: &LieAlgebra) -> bool {
        self.closure_dim == l.dim()
    }

    /// Recomputes the closure and compares dimensions.
    pub fn replay(&self, l: &LieAlgebra) -> bool {
        l.field() == &self.field && generated_subalgebra(l, &self.x, &self.y).dim() == self.closure_dim
    }

    pub fn record(&self) -> CertificateRecord {
        CertificateRecord {
            algebra: self.algebra.clone(),
            field: self.field.spec().clone(),
            method: self.method,
            closure_dim: self.closure_dim,
            x: sparse_coords(&self.field, &self.x),
            y: sparse_coords(&self.field, &self.y),
            seed: self.seed,
            stream: self.stream,
        }
    }
}

/// Serializable form: nonzero coordinates as `(index, coefficients over F_p)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateRecord {
    pub algebra: String,
    pub field: FieldSpec,
    pub method: Method,
    pub closure_dim: usize,
    pub x: Vec<(usize, Vec<u32>)>,
    pub y: Vec<(usize, Vec<u32>)>,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

pub fn sparse_coords(field: &Field, v: &[Fe]) -> Vec<(usize, Vec<u32>)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, field.coeffs(c))).collect()
}

pub fn dense_coords(field: &Field, v: &[Fe]) -> Vec<Vec<u32>> {
    v.iter().map(|&c| field.coeffs(c)).collect()
}

/// Prime-field scalars as integers, others as coefficient lists.
pub fn scalar_label(field: &Field, c: Fe) -> String {
    match field.to_prime_int(c) {
        Some(v) => v.to_string(),
        None => format!("{:?}", field.coeffs(c)),
    }
}

/// `F_{q^j}` for `j = 1..=max` over a base field `F_q`, with embedding tables.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub base: Field,
    pub rungs: Vec<(u32, Field, Vec<Fe>)>,
}

impl Ladder {
    pub fn new(base: &Field, max: u32) -> Result<Ladder, GenError> {
        let mut rungs = vec![];
        for j in 1..=max {
            let f = base.extension(j)?;
            let table = base.embedding_into(&f)?;
            rungs.push((j, f, table));
        }
        Ok(Ladder { base: base.clone(), rungs })
    }

    pub fn embed(table: &[Fe], v: &[Fe]) -> Vec<Fe> {
        v.iter().map(|c| table[c.0 as usize]).collect()
    }
}

/// Inverse of an embedding table.
pub(crate) fn pullback(table: &[Fe]) -> HashMap<Fe, Fe> {
    table.iter().enumerate().map(|(i, &v)| (v, Fe(i as u32))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::fixtures;

    #[test]
    fn certificate_replay_and_record() {
        let f = Field::prime(5).unwrap();
        let l = fixtures::sl2(&f);
        let x = l.basis_vec(0);
        let y = l.basis_vec(2);
        let c = GenerationCertificate::certify(&l, x, y, Method::Search, Some(1), None);
        assert!(c.generates(&l));
        assert!(c.replay(&l));
        let r = c.record();
        assert_eq!(r.x, vec![(0, vec![1])]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"method\":\"search\""));
        let ladder = Ladder::new(&f, 2).unwrap();
        assert_eq!(ladder.rungs[1].1.size(), 25);
    }
}
